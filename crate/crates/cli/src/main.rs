use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use cy_doubling::catalog::{family_json, Catalog};
use cy_doubling::export::{self, record_json, Format};
use cy_doubling::{equivalence_search, invariant_record, Error, InvariantRecord, Verdict, DEFAULT_BOUND};
use serde_json::json;

#[derive(Parser)]
#[command(name = "cydouble", version, about = "Invariants of doubling Calabi-Yau threefolds from Picard-rank-one Fano threefolds")]
struct Cli {
    /// Catalog file; defaults to the bundled catalog.
    #[arg(long, global = true, env = "CY_CATALOG")]
    catalog: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog ids and descriptions, optionally restricted to IDS.
    List {
        ids: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Show one catalog row.
    Show {
        id: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Compute the invariant record of one family.
    Invariants {
        id: String,
        /// Allow rows without published invariants.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Invariant table for every row with published invariants.
    Table {
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Recompute every published number and compare.
    Verify {
        /// Fail on any mismatch, including documented ones.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Decide or search for an isomorphism between two invariant pairs.
    Compare {
        a: String,
        b: String,
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: u32,
        /// Search workers; 0 uses every core. Never changes the result.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Allow rows without published invariants.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Output,
    },
    /// Write the invariant table to a file (json, csv or md).
    Export {
        #[arg(long)]
        format: String,
        #[arg(long)]
        out: PathBuf,
        /// Include rows without published invariants.
        #[arg(long)]
        all: bool,
        /// Also write OUT.meta.json with generation time and tool version.
        #[arg(long)]
        meta: bool,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn load(cli: &Cli) -> Result<Catalog, Failure> {
    match &cli.catalog {
        Some(path) => Ok(Catalog::load(path)?),
        None => Ok(Catalog::bundled()),
    }
}

fn record_for(catalog: &Catalog, id: &str, force: bool) -> Result<InvariantRecord, Failure> {
    let family = catalog.require(id)?;
    if !family.has_published_invariants() && !force {
        return Err(Failure::usage(format!("{id} has no published invariants; pass --force to compute from the catalog tensor")));
    }
    Ok(invariant_record(family)?)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let catalog = load(&cli)?;
    match cli.command {
        Command::List { ids, format } => {
            for id in &ids {
                catalog.require(id)?;
            }
            let rows: Vec<_> = catalog.families.iter().filter(|f| ids.is_empty() || ids.contains(&f.id)).collect();
            match format {
                Output::Text => {
                    for f in rows {
                        println!("{:<6} {}", f.id, f.description);
                    }
                }
                Output::Json => print_json(&json!(rows
                    .iter()
                    .map(|f| json!({"id": f.id, "description": f.description}))
                    .collect::<Vec<_>>())),
            }
        }
        Command::Show { id, format } => {
            let f = catalog.require(&id)?;
            match format {
                Output::Json => print_json(&family_json(f)),
                Output::Text => {
                    let t = &f.tensor;
                    println!("id            {}", f.id);
                    println!("description   {}", f.description);
                    println!("index r       {}", f.index_r);
                    println!("k             {}", f.k);
                    println!("H^3 (geom)    {}", f.h3_geom);
                    println!("-K^3          {}", f.minus_k3);
                    println!("h^(1,2)(V)    {}", f.h12);
                    println!("genus         {}", f.genus_fano);
                    println!("tensor        ({},{},{},{}) [{:?}]", t.t30, t.t21, t.t12, t.t03, f.tensor_provenance);
                    println!("c2(Y)         {} H^2 - {} HE", f.c2_p, f.c2_q);
                    println!("hodge (pub)   ({},{})", f.published.hodge.0, f.published.hodge.1);
                }
            }
        }
        Command::Invariants { id, force, format } => {
            let r = record_for(&catalog, &id, force)?;
            match format {
                Output::Json => print_json(&record_json(&r)),
                Output::Text => {
                    let c = &r.cubic;
                    println!("id      {}", r.id);
                    println!("hodge   ({},{})", r.hodge.0, r.hodge.1);
                    println!("cubic   ({},{},{},{})", c.c30, c.c21, c.c12, c.c03);
                    println!("c2      ({},{})", r.chern.l1, r.chern.l2);
                    println!("kernel  ({},{})", r.kernel.0, r.kernel.1);
                    println!("lambda  {}", r.lambda);
                }
            }
        }
        Command::Table { format } => {
            let records = published_records(&catalog, false)?;
            match format {
                Output::Json => print!("{}", export::render(&records, Format::Json)),
                Output::Text => print!("{}", export::render(&records, Format::Md)),
            }
        }
        Command::Verify { strict, format } => {
            let report = cy_doubling::verify(&catalog);
            match format {
                Output::Json => print_json(&report.to_json()),
                Output::Text => print!("{}", report.render_text()),
            }
            return Ok(report.exit_code(strict) as u8);
        }
        Command::Compare { a, b, bound, jobs, force, format } => {
            let ra = record_for(&catalog, &a, force)?;
            let rb = record_for(&catalog, &b, force)?;
            let verdict = equivalence_search(&ra, &rb, bound, jobs)?;
            match format {
                Output::Text => {
                    println!("{a} vs {b}: {verdict}");
                    match &verdict {
                        Verdict::DistinctByLambda(la, lb) => {
                            println!("lambda({a}) = {la}, lambda({b}) = {lb}: the invariant pairs are not isomorphic")
                        }
                        Verdict::EquivalentWitness(p) => {
                            println!("basis change {p} carries the pair of {b} onto the pair of {a}")
                        }
                        Verdict::InconclusiveAtBound(n) => {
                            println!("equal lambda; no isomorphism with entries in [-{n}, {n}]")
                        }
                    }
                }
                Output::Json => {
                    let v = match &verdict {
                        Verdict::DistinctByLambda(la, lb) => json!({
                            "verdict": "DistinctByLambda",
                            "lambda_a": la.to_string(),
                            "lambda_b": lb.to_string(),
                        }),
                        Verdict::EquivalentWitness(p) => json!({
                            "verdict": "EquivalentWitness",
                            "matrix": [[p.m11.to_string(), p.m12.to_string()], [p.m21.to_string(), p.m22.to_string()]],
                        }),
                        Verdict::InconclusiveAtBound(n) => json!({"verdict": "InconclusiveAtBound", "bound": n}),
                    };
                    print_json(&json!({"a": a, "b": b, "result": v}));
                }
            }
        }
        Command::Export { format, out, all, meta } => {
            let format: Format = format.parse().map_err(Failure::usage)?;
            let records = published_records(&catalog, all)?;
            std::fs::write(&out, export::render(&records, format))
                .map_err(|e| Failure::usage(format!("{}: {e}", out.display())))?;
            if meta {
                let generated = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
                let meta_path = PathBuf::from(format!("{}.meta.json", out.display()));
                let body = json!({
                    "generated_unix": generated,
                    "tool_version": env!("CARGO_PKG_VERSION"),
                    "catalog_schema_version": catalog.schema_version,
                    "rows": records.len(),
                });
                std::fs::write(&meta_path, format!("{}\n", serde_json::to_string_pretty(&body).expect("serializes")))
                    .map_err(|e| Failure::usage(format!("{}: {e}", meta_path.display())))?;
            }
        }
    }
    Ok(0)
}

fn published_records(catalog: &Catalog, all: bool) -> Result<Vec<InvariantRecord>, Failure> {
    catalog
        .families
        .iter()
        .filter(|f| all || f.has_published_invariants())
        .map(|f| invariant_record(f).map_err(Failure::from))
        .collect()
}
