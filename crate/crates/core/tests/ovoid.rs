use std::sync::Arc;

use frobcode::code::{build_code, two_weight_profile, DEFAULT_ENUM_CAP};
use frobcode::graph::{build_gamma, measure_srg, predicted_srg};
use frobcode::{build_ring, WeightTable};

// The ten points of the elliptic quadric x0 x1 + x2^2 + x3^2 = 0 in PG(3,3).
// Its projective code has Hamming weights 6 and 9. Joining words at the
// larger distance gives the known SRG(q^4, (q^2+1)(q-1), q-2, q^2-q), here
// (81,20,1,6); the coset graph joins at the smaller weight, so it is the
// complement.
fn complement((n, k, l, m): (i64, i64, i64, i64)) -> (i64, i64, i64, i64) {
    (n, n - k - 1, n - 2 * k + m - 2, n - 2 * k + l)
}

#[test]
fn elliptic_quadric_gives_complement_of_srg_81_20_1_6() {
    let ring = Arc::new(build_ring(&"GF(3)".parse().unwrap()).unwrap());
    let wt = Arc::new(WeightTable::new(ring).unwrap());
    let rows = vec![
        vec![0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
        vec![1, 0, 1, 1, 1, 1, 2, 2, 2, 2],
        vec![0, 0, 1, 1, 2, 2, 0, 0, 1, 2],
        vec![0, 0, 1, 2, 1, 2, 1, 2, 0, 0],
    ];
    let code = build_code(&wt, &rows, DEFAULT_ENUM_CAP).unwrap();
    let p = two_weight_profile(&code).unwrap().unwrap();
    assert_eq!((p.w1.to_string(), p.w2.to_string()), ("9".to_string(), "27/2".to_string()));
    let measured = measure_srg(&build_gamma(&code).unwrap().graph).unwrap();
    let expect = complement((81, 20, 1, 6));
    assert_eq!(measured.tuple(), expect);
    assert_eq!(predicted_srg(&p).unwrap().tuple(), expect);
}
