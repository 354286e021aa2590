use cy_doubling::{
    cubic_form, derive_c2_coeffs, invariant_record, invert_tensor, Catalog, CubicForm, Rational, TensorProvenance, TripleTensor,
};
use num_bigint::BigInt;
use num_traits::Signed;

const TABLE_TWO: [&str; 8] = ["1-2", "1-17", "1-8", "1-9", "1-10", "1-4", "1-12", "1-14"];

#[test]
fn published_invariants_exactly_on_table_two_rows() {
    let cat = Catalog::bundled();
    let mut with: Vec<_> = cat.families.iter().filter(|f| f.has_published_invariants()).map(|f| f.id.as_str()).collect();
    let mut expected = TABLE_TWO.to_vec();
    with.sort();
    expected.sort();
    assert_eq!(with, expected);
    for f in &cat.families {
        assert_eq!(f.published.lambda.is_some(), f.published.cubic.is_some());
        assert_eq!(f.published.kernel_generator.is_some(), f.published.cubic.is_some());
    }
}

#[test]
fn stated_tensors() {
    let cat = Catalog::bundled();
    let stated = [
        ("1-17", TripleTensor::new(1, 0, -16, -128)),
        ("1-2", TripleTensor::new(4, 0, -4, -8)),
        ("1-4", TripleTensor::new(8, 0, -64, -20)),
        ("1-8", TripleTensor::new(16, 0, -256, -44)),
        ("1-9", TripleTensor::new(18, 0, -324, -50)),
    ];
    for (id, t) in stated {
        let f = cat.get(id).unwrap();
        assert_eq!(f.tensor_provenance, TensorProvenance::PaperStated, "{id}");
        assert_eq!(f.tensor, t, "{id}");
    }
}

#[test]
fn inverted_tensors_reinvert() {
    let cat = Catalog::bundled();
    for id in ["1-10", "1-12", "1-14"] {
        let f = cat.get(id).unwrap();
        assert_eq!(f.tensor_provenance, TensorProvenance::InvertedFromCubic, "{id}");
        let cubic = f.published.cubic.as_ref().unwrap();
        assert_eq!(&invert_tensor(cubic, f.k).unwrap(), &f.tensor, "{id}");
    }
    assert_eq!(cat.get("1-14").unwrap().tensor, TripleTensor::new(32, 0, -1024, -92));
}

#[test]
fn round_trip_on_every_row() {
    for f in &Catalog::bundled().families {
        assert_eq!(invert_tensor(&cubic_form(f), f.k).unwrap(), f.tensor, "{}", f.id);
    }
}

#[test]
fn c2_coefficients_of_the_eight_rows() {
    // c2(Y) = p H^2 - q H E as written in the worked computations
    let stated: [(&str, (i64, i64), i64); 8] = [
        ("1-17", (22, 1), 4),
        ("1-2", (7, 1), 1),
        ("1-4", (4, 1), 1),
        ("1-8", (5, 2), 1),
        ("1-9", (7, 3), 1),
        ("1-10", (23, 11), 1),
        ("1-12", (10, 1), 2),
        ("1-14", (7, 1), 2),
    ];
    let cat = Catalog::bundled();
    for (id, (n, d), q) in stated {
        let f = cat.get(id).unwrap();
        let (p, q_derived) = derive_c2_coeffs(f.index_r, f.h3_geom, f.k);
        assert_eq!(p, Rational::new(n.into(), d.into()), "{id}");
        assert_eq!(q_derived, BigInt::from(q), "{id}");
        assert_eq!(f.c2_p, p, "{id}");
    }
}

#[test]
fn seven_rows_reproduce_published_lambda_and_kernel() {
    let cat = Catalog::bundled();
    for id in TABLE_TWO {
        let f = cat.get(id).unwrap();
        let r = invariant_record(f).unwrap();
        assert_eq!(Some(&r.cubic), f.published.cubic.as_ref(), "{id}");
        let (a, b) = f.published.kernel_generator.clone().unwrap();
        assert!(r.kernel == (a.clone(), b.clone()) || r.kernel == (-a, -b), "{id}");
        if id != "1-10" {
            assert_eq!(Some(&r.lambda), f.published.lambda.as_ref(), "{id}");
        }
    }
}

#[test]
fn row_1_10_published_lambda_matches_the_1_9_top_coefficient() {
    let cat = Catalog::bundled();
    let f = cat.get("1-10").unwrap();
    let r = invariant_record(f).unwrap();
    let swapped = CubicForm { c03: BigInt::from(-904), ..r.cubic.clone() };
    assert_eq!(Some(swapped.cube(&r.kernel.0, &r.kernel.1).abs()), f.published.lambda);
}
