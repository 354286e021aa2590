//! The catalog of the seventeen Picard-rank-one Fano threefold families.
//!
//! The catalog is a versioned JSON file (`data/catalog.json` ships inside the
//! crate). Every row is validated on load; see [`Catalog::from_json_str`].

use std::collections::HashSet;
use std::path::Path;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Number, Value};

use crate::error::{Error, Result};
use crate::intersection::{Rational, TripleTensor};
use crate::invariants::{geometric_tensor, invert_tensor, CubicForm};
use crate::json;
use crate::verify::CheckName;

pub const SCHEMA_VERSION: u32 = 1;

const BUNDLED: &str = include_str!("../data/catalog.json");

/// Rows whose stored `H^3` is `-K^3` rather than the geometric degree of `H`.
pub const EFFECTIVE_DEGREE_ROWS: [&str; 2] = ["1-12", "1-14"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TensorProvenance {
    /// Triple products written out in the worked computations.
    PaperStated,
    /// Solved from the published cubic form.
    InvertedFromCubic,
    /// Computed from the standard blow-up rules; rows without published invariants.
    Geometric,
}

impl TensorProvenance {
    fn as_str(self) -> &'static str {
        match self {
            Self::PaperStated => "paper",
            Self::InvertedFromCubic => "inverted",
            Self::Geometric => "geometric",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PublishedRow {
    pub hodge: (u64, u64),
    pub cubic: Option<CubicForm>,
    pub lambda: Option<BigInt>,
    pub kernel_generator: Option<(BigInt, BigInt)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanoFamily {
    pub id: String,
    pub description: String,
    pub index_r: u32,
    /// Proper transform of `D` is `kH - E`.
    pub k: u32,
    pub h3_geom: u32,
    pub minus_k3: u64,
    pub h12: u64,
    pub genus_fano: u64,
    pub genus_center: Option<u32>,
    pub deg_center: Option<u32>,
    pub tau: Option<i64>,
    pub tensor: TripleTensor,
    pub c2_p: Rational,
    pub c2_q: u32,
    pub tensor_provenance: TensorProvenance,
    pub published: PublishedRow,
}

impl FanoFamily {
    /// Rows that carry published cubic forms and lambda values.
    pub fn has_published_invariants(&self) -> bool {
        self.published.cubic.is_some()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnownDiscrepancy {
    pub id: String,
    pub check: CheckName,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    pub schema_version: u32,
    pub families: Vec<FanoFamily>,
    pub known_discrepancies: Vec<KnownDiscrepancy>,
}

impl Catalog {
    pub fn bundled() -> Self {
        Self::from_json_str(BUNDLED).expect("bundled catalog is valid")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawCatalog = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let catalog = raw.into_catalog()?;
        catalog.validate()?;
        Ok(catalog)
    }

    pub fn to_json_string(&self) -> String {
        let mut out = serde_json::to_string_pretty(&RawCatalog::from_catalog(self)).expect("catalog serializes");
        out.push('\n');
        out
    }

    pub fn get(&self, id: &str) -> Option<&FanoFamily> {
        self.families.iter().find(|f| f.id == id)
    }

    pub fn require(&self, id: &str) -> Result<&FanoFamily> {
        self.get(id).ok_or_else(|| Error::UnknownId(id.to_string()))
    }

    pub fn is_known_discrepancy(&self, id: &str, check: CheckName) -> bool {
        self.known_discrepancies.iter().any(|d| d.id == id && d.check == check)
    }

    fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::Parse(format!("unsupported schema_version {}", self.schema_version)));
        }
        let mut seen = HashSet::new();
        for f in &self.families {
            if !seen.insert(f.id.as_str()) {
                return Err(invalid(&f.id, "duplicate id"));
            }
            validate_family(f)?;
        }
        for d in &self.known_discrepancies {
            if !seen.contains(d.id.as_str()) {
                return Err(invalid(&d.id, "known discrepancy names a row that is not in the catalog"));
            }
        }
        Ok(())
    }
}

/// Reads and validates a catalog file, returning its rows.
pub fn load_catalog(path: impl AsRef<Path>) -> Result<Vec<FanoFamily>> {
    Catalog::load(path).map(|c| c.families)
}

fn invalid(id: &str, check: impl Into<String>) -> Error {
    Error::Validation { id: id.to_string(), check: check.into() }
}

fn validate_family(f: &FanoFamily) -> Result<()> {
    let id = f.id.as_str();
    if f.index_r == 0 || f.h3_geom == 0 || f.k == 0 {
        return Err(invalid(id, "index_r, k and h3_geom must be positive"));
    }
    if f.k != f.index_r {
        return Err(invalid(id, format!("k = {} differs from index_r = {}", f.k, f.index_r)));
    }
    let r = u64::from(f.index_r);
    if f.minus_k3 != r * r * r * u64::from(f.h3_geom) {
        return Err(invalid(id, format!("-K^3 = {} is not r^3 * H^3 = {}", f.minus_k3, r * r * r * u64::from(f.h3_geom))));
    }
    let expected_t30 = if EFFECTIVE_DEGREE_ROWS.contains(&id) { BigInt::from(f.minus_k3) } else { BigInt::from(f.h3_geom) };
    if f.tensor.t30 != expected_t30 {
        return Err(invalid(id, format!("tensor H^3 = {} but expected {expected_t30}", f.tensor.t30)));
    }
    if !f.tensor.t21.is_zero() {
        return Err(invalid(id, format!("tensor H^2 E = {} but must vanish", f.tensor.t21)));
    }
    match fano_genus(f.minus_k3) {
        Ok(g) if g == f.genus_fano => {}
        Ok(g) => return Err(invalid(id, format!("genus_fano = {} but -K^3/2 + 1 = {g}", f.genus_fano))),
        Err(_) => return Err(invalid(id, "-K^3 is odd")),
    }
    let (p, q) = derive_c2_coeffs(f.index_r, f.h3_geom, f.k);
    if p != f.c2_p || q != BigInt::from(f.c2_q) {
        return Err(invalid(id, format!("c2 coefficients ({}, {}) differ from the derived ({p}, {q})", f.c2_p, f.c2_q)));
    }
    let published = &f.published;
    if published.cubic.is_some() != published.lambda.is_some() {
        return Err(invalid(id, "published cubic and lambda must be present together"));
    }
    if published.kernel_generator.is_some() && published.cubic.is_none() {
        return Err(invalid(id, "published kernel generator without a published cubic"));
    }
    match f.tensor_provenance {
        TensorProvenance::PaperStated => {}
        TensorProvenance::InvertedFromCubic => {
            let cubic = published.cubic.as_ref().ok_or_else(|| invalid(id, "inverted tensor requires a published cubic"))?;
            let tensor = invert_tensor(cubic, f.k).map_err(|e| invalid(id, e.to_string()))?;
            if tensor != f.tensor {
                return Err(invalid(id, "stored tensor does not match the inversion of the published cubic"));
            }
        }
        TensorProvenance::Geometric => {
            let tensor = geometric_tensor(f).map_err(|e| invalid(id, e.to_string()))?;
            if tensor != f.tensor {
                return Err(invalid(id, "stored tensor does not match the blow-up rules"));
            }
        }
    }
    Ok(())
}

/// `(c2_p, c2_q)` for `c2(Y) = c2_p H^2 - c2_q H E`.
///
/// `c2(V) = a H^2` is fixed by `(1/24) c1 c2 = chi(O_V) = 1` with
/// `c1 = r H`; the blow-up adds the center class `k^2 H^2` and subtracts
/// `c1 · E`.
pub fn derive_c2_coeffs(index_r: u32, h3_geom: u32, k: u32) -> (Rational, BigInt) {
    let a = Rational::new(BigInt::from(24), BigInt::from(index_r) * BigInt::from(h3_geom));
    let k = BigInt::from(k);
    (a + Rational::from_integer(&k * &k), BigInt::from(index_r))
}

/// `(c1, c2)` coefficients of a complete intersection of the given degrees
/// in `P^n`, read off `(1 + H)^(n+1) / prod (1 + d_i H)` modulo `H^3`.
pub fn chern_series_ci(ambient_dim: u32, degrees: &[u32]) -> (BigInt, Rational) {
    // truncated power series [1, H, H^2]
    let mul = |x: [BigInt; 3], y: [BigInt; 3]| -> [BigInt; 3] {
        [&x[0] * &y[0], &x[0] * &y[1] + &x[1] * &y[0], &x[0] * &y[2] + &x[1] * &y[1] + &x[2] * &y[0]]
    };
    let n1 = BigInt::from(ambient_dim) + 1;
    let binom2 = &n1 * (&n1 - 1) / 2;
    let mut series = [BigInt::one(), n1, binom2];
    for &d in degrees {
        let d = BigInt::from(d);
        series = mul(series, [BigInt::one(), -&d, &d * &d]);
    }
    let [_, c1, c2] = series;
    (c1, Rational::from_integer(c2))
}

/// Ambient dimension and degrees for the rows that are complete
/// intersections in ordinary projective space.
pub fn complete_intersection(id: &str) -> Option<(u32, &'static [u32])> {
    match id {
        "1-2" => Some((4, &[4])),
        "1-3" => Some((5, &[2, 3])),
        "1-4" => Some((6, &[2, 2, 2])),
        "1-13" => Some((4, &[3])),
        "1-14" => Some((5, &[2, 2])),
        "1-16" => Some((4, &[2])),
        "1-17" => Some((3, &[])),
        _ => None,
    }
}

/// `(h^{1,1}(M), h^{2,1}(M))` of the doubling.
pub fn hodge_numbers(family: &FanoFamily) -> (u64, u64) {
    (2, 2 * family.h12 + family.minus_k3 + 22)
}

pub fn fano_genus(minus_k3: u64) -> Result<u64> {
    if minus_k3 % 2 == 1 {
        return Err(Error::OddDegree(minus_k3));
    }
    Ok(minus_k3 / 2 + 1)
}

/// Numeric order of `major-minor` ids, so `1-2` sorts before `1-10`.
pub fn id_sort_key(id: &str) -> (u64, u64, String) {
    let mut parts = id.splitn(2, '-');
    let major = parts.next().and_then(|p| p.parse().ok()).unwrap_or(u64::MAX);
    let minor = parts.next().and_then(|p| p.parse().ok()).unwrap_or(u64::MAX);
    (major, minor, id.to_string())
}

// ---- wire format ----

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCatalog {
    schema_version: u32,
    families: Vec<RawFamily>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    known_discrepancies: Vec<RawDiscrepancy>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDiscrepancy {
    id: String,
    check: String,
    #[serde(default)]
    note: String,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFamily {
    id: String,
    description: String,
    index_r: u32,
    k: u32,
    h3_geom: u32,
    minus_k3: u64,
    h12: u64,
    genus_fano: u64,
    genus_center: Option<u32>,
    deg_center: Option<u32>,
    tau: Option<i64>,
    tensor: [Number; 4],
    c2_p: [Number; 2],
    c2_q: u32,
    tensor_provenance: String,
    published: RawPublished,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPublished {
    hodge: [u64; 2],
    cubic: Option<[Number; 4]>,
    lambda: Option<Number>,
    kernel_generator: Option<[Number; 2]>,
}

fn ints<const N: usize>(id: &str, field: &str, raw: &[Number; N]) -> Result<[BigInt; N]> {
    let mut out = Vec::with_capacity(N);
    for n in raw {
        out.push(json::to_bigint(n).map_err(|e| Error::Parse(format!("{id}.{field}: {e}")))?);
    }
    Ok(out.try_into().expect("length preserved"))
}

fn num(n: &BigInt) -> Number {
    match json::number(n) {
        Value::Number(n) => n,
        _ => unreachable!(),
    }
}

fn nums<const N: usize>(v: [BigInt; N]) -> [Number; N] {
    v.map(|n| num(&n))
}

impl RawCatalog {
    fn into_catalog(self) -> Result<Catalog> {
        let mut families = self.families.into_iter().map(RawFamily::into_family).collect::<Result<Vec<_>>>()?;
        families.sort_by_key(|f| id_sort_key(&f.id));
        let known_discrepancies = self
            .known_discrepancies
            .into_iter()
            .map(|d| {
                let check = CheckName::parse(&d.check)
                    .ok_or_else(|| Error::Parse(format!("unknown check name {:?} in known_discrepancies", d.check)))?;
                Ok(KnownDiscrepancy { id: d.id, check, note: d.note })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { schema_version: self.schema_version, families, known_discrepancies })
    }

    fn from_catalog(c: &Catalog) -> Self {
        RawCatalog {
            schema_version: c.schema_version,
            families: c.families.iter().map(RawFamily::from_family).collect(),
            known_discrepancies: c
                .known_discrepancies
                .iter()
                .map(|d| RawDiscrepancy { id: d.id.clone(), check: d.check.as_str().to_string(), note: d.note.clone() })
                .collect(),
        }
    }
}

impl RawFamily {
    fn into_family(self) -> Result<FanoFamily> {
        let id = self.id;
        let [t30, t21, t12, t03] = ints(&id, "tensor", &self.tensor)?;
        let [p_num, p_den] = ints(&id, "c2_p", &self.c2_p)?;
        if !p_den.is_positive() || !p_num.gcd(&p_den).is_one() {
            return Err(invalid(&id, format!("c2_p = [{p_num}, {p_den}] is not a reduced fraction with positive denominator")));
        }
        let tensor_provenance = match self.tensor_provenance.as_str() {
            "paper" => TensorProvenance::PaperStated,
            "inverted" => TensorProvenance::InvertedFromCubic,
            "geometric" => TensorProvenance::Geometric,
            other => return Err(Error::Parse(format!("{id}: unknown tensor_provenance {other:?}"))),
        };
        let cubic = match &self.published.cubic {
            Some(c) => {
                let [c30, c21, c12, c03] = ints(&id, "published.cubic", c)?;
                Some(CubicForm { c30, c21, c12, c03 })
            }
            None => None,
        };
        let lambda = match &self.published.lambda {
            Some(n) => {
                let v = json::to_bigint(n).map_err(|e| Error::Parse(format!("{id}.published.lambda: {e}")))?;
                if v.is_negative() {
                    return Err(invalid(&id, "published lambda is negative"));
                }
                Some(v)
            }
            None => None,
        };
        let kernel_generator = match &self.published.kernel_generator {
            Some(k) => {
                let [a, b] = ints(&id, "published.kernel_generator", k)?;
                Some((a, b))
            }
            None => None,
        };
        Ok(FanoFamily {
            description: self.description,
            index_r: self.index_r,
            k: self.k,
            h3_geom: self.h3_geom,
            minus_k3: self.minus_k3,
            h12: self.h12,
            genus_fano: self.genus_fano,
            genus_center: self.genus_center,
            deg_center: self.deg_center,
            tau: self.tau,
            tensor: TripleTensor { t30, t21, t12, t03 },
            c2_p: Rational::new_raw(p_num, p_den),
            c2_q: self.c2_q,
            tensor_provenance,
            published: PublishedRow {
                hodge: (self.published.hodge[0], self.published.hodge[1]),
                cubic,
                lambda,
                kernel_generator,
            },
            id,
        })
    }

    fn from_family(f: &FanoFamily) -> Self {
        RawFamily {
            id: f.id.clone(),
            description: f.description.clone(),
            index_r: f.index_r,
            k: f.k,
            h3_geom: f.h3_geom,
            minus_k3: f.minus_k3,
            h12: f.h12,
            genus_fano: f.genus_fano,
            genus_center: f.genus_center,
            deg_center: f.deg_center,
            tau: f.tau,
            tensor: nums(f.tensor.to_array()),
            c2_p: nums([f.c2_p.numer().clone(), f.c2_p.denom().clone()]),
            c2_q: f.c2_q,
            tensor_provenance: f.tensor_provenance.as_str().to_string(),
            published: RawPublished {
                hodge: [f.published.hodge.0, f.published.hodge.1],
                cubic: f.published.cubic.as_ref().map(|c| nums(c.to_array())),
                lambda: f.published.lambda.as_ref().map(num),
                kernel_generator: f.published.kernel_generator.as_ref().map(|(a, b)| nums([a.clone(), b.clone()])),
            },
        }
    }
}

/// The catalog row as a JSON object, for `show`.
pub fn family_json(f: &FanoFamily) -> Value {
    let raw = RawFamily::from_family(f);
    let mut v = serde_json::to_value(raw).expect("family serializes");
    v["hodge_computed"] = json!([hodge_numbers(f).0, hodge_numbers(f).1]);
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn bundled_has_seventeen_rows_in_order() {
        let c = Catalog::bundled();
        assert_eq!(c.families.len(), 17);
        let ids: Vec<_> = c.families.iter().map(|f| f.id.clone()).collect();
        let expected: Vec<_> = (1..=17).map(|i| format!("1-{i}")).collect();
        assert_eq!(ids, expected);
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(matches!(Catalog::from_json_str(""), Err(Error::Parse(_))));
    }

    #[test]
    fn duplicate_id_is_rejected() {
        let mut v: Value = serde_json::from_str(BUNDLED).unwrap();
        let row = v["families"].as_array().unwrap().iter().find(|f| f["id"] == "1-8").unwrap().clone();
        v["families"].as_array_mut().unwrap().push(row);
        let err = Catalog::from_json_str(&v.to_string()).unwrap_err();
        assert_eq!(err, Error::Validation { id: "1-8".into(), check: "duplicate id".into() });
    }

    #[test]
    fn unknown_field_is_rejected() {
        let mut v: Value = serde_json::from_str(BUNDLED).unwrap();
        v["families"][0]["colour"] = json!("blue");
        assert!(matches!(Catalog::from_json_str(&v.to_string()), Err(Error::Parse(_))));
    }

    #[test]
    fn corrupted_rows_name_the_row() {
        let cases: Vec<(&str, &str, Value)> = vec![
            ("1-8", "k", json!(2)),
            ("1-9", "genus_fano", json!(11)),
            ("1-4", "c2_p", json!([9, 2])),
            ("1-10", "tensor", json!([22, 0, -484, -70])),
            ("1-3", "tensor", json!([6, 0, -6, -13])),
            ("1-2", "c2_p", json!([14, 2])),
            ("1-17", "minus_k3", json!(66)),
        ];
        for (id, field, value) in cases {
            let mut v: Value = serde_json::from_str(BUNDLED).unwrap();
            let row = v["families"].as_array_mut().unwrap().iter_mut().find(|f| f["id"] == id).unwrap();
            row[field] = value;
            match Catalog::from_json_str(&v.to_string()) {
                Err(Error::Validation { id: got, .. }) => assert_eq!(got, id, "{field}"),
                other => panic!("{id}.{field}: expected validation error, got {other:?}"),
            }
        }
    }

    #[test]
    fn serialization_round_trips() {
        let c = Catalog::bundled();
        let text = c.to_json_string();
        assert_eq!(Catalog::from_json_str(&text).unwrap(), c);
        assert_eq!(Catalog::from_json_str(&text).unwrap().to_json_string(), text);
    }

    #[test]
    fn derive_c2_examples() {
        assert_eq!(derive_c2_coeffs(1, 16, 1), (rat(5, 2), BigInt::from(1)));
        assert_eq!(derive_c2_coeffs(4, 1, 4), (rat(22, 1), BigInt::from(4)));
        assert_eq!(derive_c2_coeffs(1, 22, 1), (rat(23, 11), BigInt::from(1)));
    }

    #[test]
    fn chern_series_examples() {
        assert_eq!(chern_series_ci(4, &[4]), (BigInt::from(1), rat(6, 1)));
        assert_eq!(chern_series_ci(6, &[2, 2, 2]), (BigInt::from(1), rat(3, 1)));
        // (1+H)^6 (1 - 2H + 4H^2)^2 = (1 + 6H + 15H^2)(1 - 4H + 12H^2) = 1 + 2H + 3H^2
        assert_eq!(chern_series_ci(5, &[2, 2]), (BigInt::from(2), rat(3, 1)));
        assert_eq!(chern_series_ci(3, &[]), (BigInt::from(4), rat(6, 1)));
    }

    #[test]
    fn chern_series_agrees_with_riemann_roch_on_complete_intersections() {
        let c = Catalog::bundled();
        for f in &c.families {
            let Some((n, degrees)) = complete_intersection(&f.id) else { continue };
            let (c1, c2) = chern_series_ci(n, degrees);
            assert_eq!(c1, BigInt::from(f.index_r), "{}", f.id);
            let (p, _) = derive_c2_coeffs(f.index_r, f.h3_geom, f.k);
            let k = BigInt::from(f.k);
            assert_eq!(c2, p - Rational::from_integer(&k * &k), "{}", f.id);
        }
    }

    #[test]
    fn hodge_examples() {
        let c = Catalog::bundled();
        assert_eq!(hodge_numbers(c.get("1-1").unwrap()), (2, 128));
        assert_eq!(hodge_numbers(c.get("1-10").unwrap()), (2, 44));
        assert_eq!(hodge_numbers(c.get("1-16").unwrap()), (2, 76));
    }

    #[test]
    fn genus_examples() {
        assert_eq!(fano_genus(4), Ok(3));
        assert_eq!(fano_genus(8), Ok(5));
        assert_eq!(fano_genus(2), Ok(2));
        assert_eq!(fano_genus(5), Err(Error::OddDegree(5)));
    }

    #[test]
    fn id_order_is_numeric() {
        let mut ids = vec!["1-10", "1-2", "1-17", "1-1"];
        ids.sort_by_key(|i| id_sort_key(i));
        assert_eq!(ids, ["1-1", "1-2", "1-10", "1-17"]);
    }
}
