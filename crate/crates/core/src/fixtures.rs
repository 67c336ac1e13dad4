//! Named test instances used across the suite.

use crate::geometry::SimplexPoint;
use crate::model::Instance;
use crate::oracle::instance_from_rns_points;
use crate::rational::rat;

/// Near-diagonal instance: each player values "their" item at 0.8.
/// The equitable optimum is the integer allocation (I, II, III) worth 4/5.
pub fn e1() -> Instance {
    Instance::new(
        [
            vec![rat(8, 10), rat(1, 10), rat(1, 10)],
            vec![rat(1, 10), rat(8, 10), rat(1, 10)],
            vec![rat(1, 10), rat(1, 10), rat(8, 10)],
        ],
        false,
    )
    .expect("valid fixture")
}

/// Two-item instance whose optimum splits both items; value 42/107.
pub fn e5() -> Instance {
    Instance::new(
        [
            vec![rat(7, 10), rat(3, 10)],
            vec![rat(4, 10), rat(6, 10)],
            vec![rat(5, 10), rat(5, 10)],
        ],
        false,
    )
    .expect("valid fixture")
}

/// Symmetric instance whose three supporting segments concur at the center,
/// producing a single hexagonal face there; value 2/5.
pub fn e3f() -> Instance {
    Instance::new(
        [
            vec![rat(1, 5), rat(2, 5), rat(2, 5)],
            vec![rat(2, 5), rat(1, 5), rat(2, 5)],
            vec![rat(2, 5), rat(2, 5), rat(1, 5)],
        ],
        false,
    )
    .expect("valid fixture")
}

/// Single item which normalization forces everyone to value at 1.
pub fn single_item() -> Instance {
    Instance::new([vec![rat(1, 1)], vec![rat(1, 1)], vec![rat(1, 1)]], false)
        .expect("valid fixture")
}

/// Item points realizing a pentagon-class vertex: both e5 item points, their
/// crossing (hosting an item of its own), and a balancing point on the other
/// side of the e5 chord.
///
/// The balancing point is necessary: every two-item instance places the
/// simplex center on the chord between its item points, so the three-point
/// system pins the crossing's mass to exactly zero and no positive-mass
/// instance exists for the first three points alone.
pub fn f5_points() -> Vec<SimplexPoint> {
    let pt = |a, b, c| SimplexPoint::new([a, b, c]).expect("on the simplex");
    vec![
        pt(rat(7, 16), rat(4, 16), rat(5, 16)),
        pt(rat(3, 14), rat(6, 14), rat(5, 14)),
        pt(rat(7, 18), rat(6, 18), rat(5, 18)),
        pt(rat(5, 18), rat(6, 18), rat(7, 18)),
    ]
}

/// Instance realized from [`f5_points`]; its graph has a pentagon-class
/// vertex at (7/18, 6/18, 5/18).
pub fn f5_fixture() -> Instance {
    instance_from_rns_points(&f5_points()).expect("positive masses exist")
}

/// Both items sit on the median toward player I, the second between the first
/// and the corner, so the outer item point is a trapezoid-class vertex.
pub fn median_pair() -> Instance {
    Instance::new(
        [
            vec![rat(4, 7), rat(3, 7)],
            vec![rat(6, 7), rat(1, 7)],
            vec![rat(6, 7), rat(1, 7)],
        ],
        true,
    )
    .expect("valid fixture")
}
