use flatklein::klein::canonicalize;
use flatklein::oracle::{brute_distance, brute_geodesic_count, certify_vertices, CertifyFailure};
use flatklein::polytope::{census, halfspaces, vertices};
use flatklein::rat::frac;
use flatklein::{Error, KleinPoint, LiftPoint};

fn kp(v: &[(i64, i64)]) -> KleinPoint {
    canonicalize(&LiftPoint::from_fracs(v).unwrap()).0
}

#[test]
fn hexagon_geodesic_counts() {
    let y = kp(&[(1, 4), (0, 1)]);
    assert_eq!(
        brute_geodesic_count(&y, &kp(&[(1, 4), (5, 8)]), 3).unwrap(),
        3
    );
    assert_eq!(
        brute_geodesic_count(&y, &kp(&[(3, 4), (0, 1)]), 3).unwrap(),
        2
    );
    assert_eq!(
        brute_geodesic_count(&y, &kp(&[(1, 3), (1, 5)]), 3).unwrap(),
        1
    );
    assert_eq!(
        brute_distance(&y, &kp(&[(1, 4), (5, 8)]), 3).unwrap(),
        frac(25, 64)
    );
}

#[test]
fn small_window_is_rejected() {
    let y = kp(&[(1, 4), (0, 1)]);
    assert!(matches!(
        brute_distance(&y, &y, 2),
        Err(Error::WindowTooSmall { .. })
    ));
}

#[test]
fn deleted_vertex_is_reported_missing() {
    let p = LiftPoint::from_fracs(&[(3, 10), (3, 10), (3, 10), (3, 10), (3, 10), (0, 1)]).unwrap();
    let mut pts: Vec<LiftPoint> = vertices(&p)
        .unwrap()
        .into_iter()
        .map(|v| v.coords)
        .collect();
    let gone = pts.remove(17);
    let report = certify_vertices(&pts, &halfspaces(&p).unwrap()).unwrap();
    match report.failure {
        Some(CertifyFailure::Missing { found, .. }) => assert_eq!(found, gone),
        other => panic!("expected a missing vertex, got {other:?}"),
    }
}

#[test]
fn n7_type_f_witness_certifies() {
    let p =
        LiftPoint::from_fracs(&[(3, 8), (1, 4), (1, 4), (1, 4), (1, 4), (1, 4), (1, 2)]).unwrap();
    let vs = vertices(&p).unwrap();
    assert_eq!(census(&vs), (1260, 480, 60));
    let pts: Vec<LiftPoint> = vs.into_iter().map(|v| v.coords).collect();
    let report = certify_vertices(&pts, &halfspaces(&p).unwrap()).unwrap();
    assert!(report.ok(), "{:?}", report.failure);
}
