//! Exact geometry on the 2-simplex.
//!
//! Points carry barycentric coordinates as exact rationals. The simplex hosts
//! both item evaluation points and hyperplane coefficient vectors; `rd_map`
//! translates between the two. All predicates are tolerance-free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::model::{Instance, Player};
use crate::rational::format_rational;

/// Barycentric triple summing to exactly 1 with nonnegative coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplexPoint {
    coords: [BigRational; 3],
}

impl SimplexPoint {
    pub fn new(coords: [BigRational; 3]) -> Result<SimplexPoint> {
        let sum: BigRational = coords.iter().sum();
        if !sum.is_one() {
            return Err(Error::ParseInstance(format!(
                "barycentric coordinates sum to {}",
                format_rational(&sum)
            )));
        }
        if coords.iter().any(|c| c.is_negative()) {
            return Err(Error::ParseInstance("negative barycentric coordinate".into()));
        }
        Ok(SimplexPoint { coords })
    }

    /// The vertex of the simplex owned by `p`.
    pub fn corner(p: Player) -> SimplexPoint {
        let mut coords = [BigRational::zero(), BigRational::zero(), BigRational::zero()];
        coords[p.index()] = BigRational::one();
        SimplexPoint { coords }
    }

    pub fn center() -> SimplexPoint {
        let third = BigRational::new(1.into(), 3.into());
        SimplexPoint { coords: [third.clone(), third.clone(), third] }
    }

    pub fn coords(&self) -> &[BigRational; 3] {
        &self.coords
    }

    pub fn coord(&self, p: Player) -> &BigRational {
        &self.coords[p.index()]
    }

    /// True when every coordinate is strictly positive.
    pub fn is_interior(&self) -> bool {
        self.coords.iter().all(|c| c.is_positive())
    }

    /// Squared Euclidean distance between the coordinate triples.
    pub fn distance_squared(&self, other: &SimplexPoint) -> BigRational {
        self.coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .sum()
    }
}

impl std::fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "({}, {}, {})",
            format_rational(&self.coords[0]),
            format_rational(&self.coords[1]),
            format_rational(&self.coords[2])
        )
    }
}

/// N(x): rescales a nonnegative triple with positive sum onto the simplex.
pub fn normalize_point(x: [BigRational; 3]) -> Result<SimplexPoint> {
    let sum: BigRational = x.iter().sum();
    if sum.is_zero() {
        return Err(Error::ZeroSum);
    }
    let coords = x.map(|c| c / sum.clone());
    SimplexPoint::new(coords)
}

/// RD(x) = N(1/x1, 1/x2, 1/x3): the involution pairing hyperplane coefficient
/// vectors with the simplex points they support.
pub fn rd_map(x: &SimplexPoint) -> Result<SimplexPoint> {
    if !x.is_interior() {
        return Err(Error::BoundaryPoint);
    }
    let inverted = [
        x.coords[0].recip(),
        x.coords[1].recip(),
        x.coords[2].recip(),
    ];
    normalize_point(inverted)
}

/// The normalized evaluation column of item `j` plotted on the simplex.
/// Interior by mutual absolute continuity.
pub fn item_point(inst: &Instance, j: usize) -> SimplexPoint {
    let col = inst.column(j);
    normalize_point([col[0].clone(), col[1].clone(), col[2].clone()])
        .expect("positive column has positive sum")
}

/// Closed segment from an item's simplex point to one corner. The corner
/// endpoint never enters intersection bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSegment {
    pub item: usize,
    pub toward: Player,
    pub start: SimplexPoint,
}

impl SupportSegment {
    pub fn new(inst: &Instance, item: usize, toward: Player) -> SupportSegment {
        SupportSegment { item, toward, start: item_point(inst, item) }
    }

    pub fn corner(&self) -> SimplexPoint {
        SimplexPoint::corner(self.toward)
    }

    /// Interpolation parameter of `x` along the segment, with 0 at the item
    /// point and 1 at the corner. Returns `None` when `x` is off the segment
    /// or sits exactly at the corner.
    pub fn param_of(&self, x: &SimplexPoint) -> Option<BigRational> {
        let (px, py) = xy(&self.start);
        let (cx, cy) = xy(&self.corner());
        let (qx, qy) = xy(x);
        let dx = &cx - &px;
        let dy = &cy - &py;
        let wx = &qx - &px;
        let wy = &qy - &py;
        if &wx * &dy != &wy * &dx {
            return None;
        }
        // Segments never degenerate: the start is interior, the corner is not.
        let t = if !dx.is_zero() { wx / dx } else { wy / dy };
        if t >= BigRational::zero() && t < BigRational::one() {
            Some(t)
        } else {
            None
        }
    }

    /// Point at parameter `t` (exact linear interpolation).
    pub fn at(&self, t: &BigRational) -> SimplexPoint {
        let corner = self.corner();
        let coords = [
            &self.start.coords[0] + t * (&corner.coords[0] - &self.start.coords[0]),
            &self.start.coords[1] + t * (&corner.coords[1] - &self.start.coords[1]),
            &self.start.coords[2] + t * (&corner.coords[2] - &self.start.coords[2]),
        ];
        SimplexPoint::new(coords).expect("interpolation stays on the simplex")
    }
}

/// Projective integer triple standing for the simplex point reached by
/// dividing by the coordinate sum. Kept gcd-reduced with a positive sum, so
/// equal points have identical representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct HomoPoint([BigInt; 3]);

impl HomoPoint {
    pub(crate) fn from_simplex(p: &SimplexPoint) -> HomoPoint {
        let [a, b, c] = p.coords();
        HomoPoint::reduced([
            a.numer() * b.denom() * c.denom(),
            b.numer() * a.denom() * c.denom(),
            c.numer() * a.denom() * b.denom(),
        ])
    }

    pub(crate) fn to_simplex(&self) -> SimplexPoint {
        let sum: BigInt = self.0.iter().sum();
        SimplexPoint::new([
            BigRational::new(self.0[0].clone(), sum.clone()),
            BigRational::new(self.0[1].clone(), sum.clone()),
            BigRational::new(self.0[2].clone(), sum),
        ])
        .expect("homogeneous triple normalizes onto the simplex")
    }

    /// Divides out the gcd; the caller guarantees a positive sum.
    fn reduced(raw: [BigInt; 3]) -> HomoPoint {
        let g = raw[0].gcd(&raw[1]).gcd(&raw[2]);
        debug_assert!(!g.is_zero());
        HomoPoint([&raw[0] / &g, &raw[1] / &g, &raw[2] / &g])
    }

    pub(crate) fn coords(&self) -> &[BigInt; 3] {
        &self.0
    }
}

/// Covector of the line through `p` and the corner of `t` (point-corner
/// cross product; the corner's basis vector makes it sparse).
fn line_toward(p: &HomoPoint, t: Player) -> [BigInt; 3] {
    let [x, y, z] = &p.0;
    match t {
        Player::I => [BigInt::zero(), z.clone(), -y.clone()],
        Player::II => [-z.clone(), BigInt::zero(), x.clone()],
        Player::III => [y.clone(), -x.clone(), BigInt::zero()],
    }
}

fn cross3(a: &[BigInt; 3], b: &[BigInt; 3]) -> [BigInt; 3] {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub(crate) enum HomoMeet {
    Cross(HomoPoint),
    Overlap,
    Disjoint,
}

/// `x` lies on the segment from `p` (inclusive) to the corner of `t`
/// (exclusive), both already known to be on the same line. Along that line
/// the coordinate owned by either other player shrinks linearly to zero at
/// the corner, so one ratio comparison decides.
fn on_segment_toward(x: &[BigInt; 3], x_sum: &BigInt, p: &HomoPoint, t: Player) -> bool {
    let a = t.others()[0].index();
    let p_sum: BigInt = p.0.iter().sum();
    x[a].is_positive() && &x[a] * &p_sum <= &p.0[a] * x_sum
}

/// Exact meet of two supporting segments in homogeneous integer arithmetic.
pub(crate) fn meet_segments(p: &HomoPoint, tp: Player, q: &HomoPoint, tq: Player) -> HomoMeet {
    let lp = line_toward(p, tp);
    let lq = line_toward(q, tq);
    let mut x = cross3(&lp, &lq);
    if x.iter().all(BigInt::is_zero) {
        // Identical lines; supporting segments on one line share a corner and
        // therefore a whole subsegment.
        return HomoMeet::Overlap;
    }
    let mut sum: BigInt = x.iter().sum();
    if sum.is_zero() {
        return HomoMeet::Disjoint; // lines meet at infinity
    }
    if sum.is_negative() {
        for v in &mut x {
            *v = -std::mem::take(v);
        }
        sum = -sum;
    }
    if on_segment_toward(&x, &sum, p, tp) && on_segment_toward(&x, &sum, q, tq) {
        HomoMeet::Cross(HomoPoint::reduced(x))
    } else {
        HomoMeet::Disjoint
    }
}

/// Outcome of intersecting two supporting segments.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentMeet {
    /// Unique proper intersection, never a simplex corner.
    Cross(SimplexPoint),
    /// Collinear segments sharing infinitely many points.
    Overlap,
    Disjoint,
}

/// Intersects two supporting segments of distinct items exactly.
///
/// The item endpoints are included, corners are excluded, and collinear
/// overlaps are reported separately so they contribute no vertices.
pub fn segment_intersection(s: &SupportSegment, t: &SupportSegment) -> SegmentMeet {
    let p = HomoPoint::from_simplex(&s.start);
    let q = HomoPoint::from_simplex(&t.start);
    match meet_segments(&p, s.toward, &q, t.toward) {
        HomoMeet::Cross(x) => SegmentMeet::Cross(x.to_simplex()),
        HomoMeet::Overlap => SegmentMeet::Overlap,
        HomoMeet::Disjoint => SegmentMeet::Disjoint,
    }
}

/// True when `x` lies on the closed supporting segment.
pub fn point_on_support_segment(x: &SimplexPoint, seg: &SupportSegment) -> bool {
    seg.param_of(x).is_some() || *x == seg.corner()
}

/// Neither item's point lies on any supporting segment of the other.
pub fn s_independent(inst: &Instance, j: usize, k: usize) -> bool {
    debug_assert_ne!(j, k);
    let pj = item_point(inst, j);
    let pk = item_point(inst, k);
    for toward in Player::ALL {
        if point_on_support_segment(&pk, &SupportSegment { item: j, toward, start: pj.clone() }) {
            return false;
        }
        if point_on_support_segment(&pj, &SupportSegment { item: k, toward, start: pk.clone() }) {
            return false;
        }
    }
    true
}

/// A contested item together with the players entitled to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisputeRecord {
    pub item: usize,
    /// Two players for an item on a disputing segment, three when the item
    /// point coincides with the hyperplane point itself.
    pub disputants: Vec<Player>,
}

/// How one item relates to a hyperplane point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ItemClaim {
    Unique(Player),
    Disputed(DisputeRecord),
}

/// Who may receive item `j` under the allocation rule at `beta`, computed
/// algebraically as the argmax of the weighted evaluations.
pub fn disputants_at(inst: &Instance, beta: &SimplexPoint, j: usize) -> Result<ItemClaim> {
    let gamma = rd_map(beta)?;
    Ok(claim_from_weights(inst, &gamma, j))
}

/// Argmax of γ_i a_{ij} over players, with ties reported as disputes.
pub fn claim_from_weights(inst: &Instance, gamma: &SimplexPoint, j: usize) -> ItemClaim {
    let weights: Vec<BigRational> = Player::ALL
        .iter()
        .map(|p| gamma.coord(*p) * inst.value(*p, j))
        .collect();
    let best = weights.iter().max().expect("three weights").clone();
    let winners: Vec<Player> = Player::ALL
        .into_iter()
        .filter(|p| weights[p.index()] == best)
        .collect();
    if winners.len() == 1 {
        ItemClaim::Unique(winners[0])
    } else {
        ItemClaim::Disputed(DisputeRecord { item: j, disputants: winners })
    }
}

/// Position of a point relative to the disputing segments of `beta`,
/// decided purely by orientation predicates. This is the geometric route
/// that must agree with [`claim_from_weights`] through the duality map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RegionClass {
    /// The point coincides with `beta`.
    AtBeta,
    /// On the open disputing segment pointing away from this corner.
    OnDisputeSegment(Player),
    /// Strictly inside the neighborhood of this corner.
    InNeighborhood(Player),
}

pub fn classify_region(beta: &SimplexPoint, x: &SimplexPoint) -> Result<RegionClass> {
    if !beta.is_interior() {
        return Err(Error::BoundaryPoint);
    }
    if x == beta {
        return Ok(RegionClass::AtBeta);
    }
    let b = xy(beta);
    let w = sub(&xy(x), &b);
    // Directions of the three disputing half-lines: away from each corner.
    let away: [(BigRational, BigRational); 3] = [
        sub(&b, &xy(&SimplexPoint::corner(Player::I))),
        sub(&b, &xy(&SimplexPoint::corner(Player::II))),
        sub(&b, &xy(&SimplexPoint::corner(Player::III))),
    ];
    for corner in Player::ALL {
        let u = &away[corner.index()];
        if cross(u, &w).is_zero() && same_ray(u, &w) {
            return Ok(RegionClass::OnDisputeSegment(corner));
        }
    }
    for home in Player::ALL {
        let toward = sub(&xy(&SimplexPoint::corner(home)), &b);
        let mut inside = true;
        for other in home.others() {
            let u = &away[other.index()];
            if cross(u, &w).signum() != cross(u, &toward).signum() {
                inside = false;
                break;
            }
        }
        if inside {
            return Ok(RegionClass::InNeighborhood(home));
        }
    }
    unreachable!("interior point must fall in a neighborhood or on a disputing segment")
}

/// Geometric counterpart of [`disputants_at`].
pub fn geometric_claim(inst: &Instance, beta: &SimplexPoint, j: usize) -> Result<ItemClaim> {
    let x = item_point(inst, j);
    Ok(match classify_region(beta, &x)? {
        RegionClass::AtBeta => ItemClaim::Disputed(DisputeRecord {
            item: j,
            disputants: Player::ALL.to_vec(),
        }),
        RegionClass::OnDisputeSegment(corner) => ItemClaim::Disputed(DisputeRecord {
            item: j,
            disputants: corner.others().to_vec(),
        }),
        RegionClass::InNeighborhood(p) => ItemClaim::Unique(p),
    })
}

type Vec2 = (BigRational, BigRational);

fn xy(p: &SimplexPoint) -> Vec2 {
    (p.coords[0].clone(), p.coords[1].clone())
}

fn sub(a: &Vec2, b: &Vec2) -> Vec2 {
    (&a.0 - &b.0, &a.1 - &b.1)
}

fn cross(a: &Vec2, b: &Vec2) -> BigRational {
    &a.0 * &b.1 - &a.1 * &b.0
}

/// `w` is a positive multiple of `u` (both nonzero, already collinear).
fn same_ray(u: &Vec2, w: &Vec2) -> bool {
    if !u.0.is_zero() {
        (&w.0 / &u.0).is_positive()
    } else {
        (&w.1 / &u.1).is_positive()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::rational::rat;

    fn pt(a: BigRational, b: BigRational, c: BigRational) -> SimplexPoint {
        SimplexPoint::new([a, b, c]).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let p = normalize_point([rat(2, 1), rat(1, 1), rat(1, 1)]).unwrap();
        assert_eq!(p, pt(rat(1, 2), rat(1, 4), rat(1, 4)));
        let q = normalize_point([rat(1, 3), rat(1, 3), rat(1, 3)]).unwrap();
        assert_eq!(q, SimplexPoint::center());
        assert_eq!(
            normalize_point([rat(0, 1), rat(0, 1), rat(0, 1)]),
            Err(Error::ZeroSum)
        );
    }

    #[test]
    fn rd_examples_and_involution() {
        assert_eq!(rd_map(&SimplexPoint::center()).unwrap(), SimplexPoint::center());
        let p = pt(rat(1, 2), rat(1, 4), rat(1, 4));
        assert_eq!(rd_map(&p).unwrap(), pt(rat(1, 5), rat(2, 5), rat(2, 5)));
        let q = pt(rat(6, 10), rat(3, 10), rat(1, 10));
        assert_eq!(rd_map(&rd_map(&q).unwrap()).unwrap(), q);
        assert_eq!(rd_map(&SimplexPoint::corner(Player::I)), Err(Error::BoundaryPoint));
    }

    #[test]
    fn item_points() {
        let e1 = fixtures::e1();
        assert_eq!(item_point(&e1, 0), pt(rat(8, 10), rat(1, 10), rat(1, 10)));
        let e5 = fixtures::e5();
        assert_eq!(item_point(&e5, 0), pt(rat(7, 16), rat(4, 16), rat(5, 16)));
        assert_eq!(item_point(&e5, 1), pt(rat(3, 14), rat(6, 14), rat(5, 14)));
    }

    #[test]
    fn crossing_examples() {
        let e1 = fixtures::e1();
        let s = SupportSegment::new(&e1, 0, Player::II);
        let t = SupportSegment::new(&e1, 1, Player::I);
        assert_eq!(
            segment_intersection(&s, &t),
            SegmentMeet::Cross(pt(rat(8, 17), rat(8, 17), rat(1, 17)))
        );

        let e5 = fixtures::e5();
        let s = SupportSegment::new(&e5, 0, Player::II);
        let t = SupportSegment::new(&e5, 1, Player::I);
        assert_eq!(
            segment_intersection(&s, &t),
            SegmentMeet::Cross(pt(rat(7, 18), rat(6, 18), rat(5, 18)))
        );

        let e3f = fixtures::e3f();
        let s = SupportSegment::new(&e3f, 0, Player::I);
        let t = SupportSegment::new(&e3f, 1, Player::II);
        assert_eq!(
            segment_intersection(&s, &t),
            SegmentMeet::Cross(SimplexPoint::center())
        );
    }

    #[test]
    fn shared_corner_is_not_a_crossing() {
        let e1 = fixtures::e1();
        let s = SupportSegment::new(&e1, 0, Player::I);
        let t = SupportSegment::new(&e1, 1, Player::I);
        // Different lines through the same corner meet only at the corner,
        // which is excluded.
        assert_eq!(segment_intersection(&s, &t), SegmentMeet::Disjoint);
    }

    #[test]
    fn collinear_segments_overlap() {
        // Items at (1/2,1/4,1/4) and (1/4,3/8,3/8) share the line toward I.
        let inst = Instance::new(
            [
                vec![rat(1, 2), rat(1, 2)],
                vec![rat(1, 4), rat(3, 4)],
                vec![rat(1, 4), rat(3, 4)],
            ],
            true,
        )
        .unwrap();
        let p0 = item_point(&inst, 0);
        let p1 = item_point(&inst, 1);
        assert_eq!(p0, pt(rat(1, 2), rat(1, 4), rat(1, 4)));
        assert_eq!(p1, pt(rat(1, 4), rat(3, 8), rat(3, 8)));
        let s = SupportSegment::new(&inst, 0, Player::I);
        let t = SupportSegment::new(&inst, 1, Player::I);
        assert_eq!(segment_intersection(&s, &t), SegmentMeet::Overlap);
        // The outer point (larger first coordinate) lies on the inner item's
        // segment toward corner I.
        assert!(point_on_support_segment(&p0, &SupportSegment {
            item: 1,
            toward: Player::I,
            start: p1.clone(),
        }));
        assert!(!point_on_support_segment(&p1, &SupportSegment {
            item: 0,
            toward: Player::I,
            start: p0,
        }));
        assert!(!s_independent(&inst, 0, 1));
    }

    #[test]
    fn independence_examples() {
        let e1 = fixtures::e1();
        assert!(s_independent(&e1, 0, 1));
        assert!(s_independent(&e1, 1, 2));

        // Identical columns up to scale coincide on the simplex.
        let coincident = Instance::new(
            [
                vec![rat(1, 1), rat(2, 1)],
                vec![rat(1, 1), rat(2, 1)],
                vec![rat(2, 1), rat(4, 1)],
            ],
            true,
        )
        .unwrap();
        assert_eq!(item_point(&coincident, 0), item_point(&coincident, 1));
        assert!(!s_independent(&coincident, 0, 1));
    }

    #[test]
    fn dispute_examples() {
        let e5 = fixtures::e5();
        let q = pt(rat(7, 18), rat(6, 18), rat(5, 18));
        assert_eq!(
            disputants_at(&e5, &q, 0).unwrap(),
            ItemClaim::Disputed(DisputeRecord { item: 0, disputants: vec![Player::I, Player::III] })
        );
        assert_eq!(
            disputants_at(&e5, &q, 1).unwrap(),
            ItemClaim::Disputed(DisputeRecord {
                item: 1,
                disputants: vec![Player::II, Player::III]
            })
        );

        let e1 = fixtures::e1();
        let beta = pt(rat(8, 10), rat(1, 10), rat(1, 10));
        assert_eq!(
            disputants_at(&e1, &beta, 0).unwrap(),
            ItemClaim::Disputed(DisputeRecord { item: 0, disputants: Player::ALL.to_vec() })
        );
    }

    #[test]
    fn geometric_and_algebraic_claims_agree_on_fixtures() {
        for inst in [fixtures::e1(), fixtures::e5(), fixtures::e3f()] {
            for beta in [
                SimplexPoint::center(),
                pt(rat(7, 18), rat(6, 18), rat(5, 18)),
                pt(rat(8, 10), rat(1, 10), rat(1, 10)),
                pt(rat(2, 10), rat(3, 10), rat(5, 10)),
            ] {
                for j in 0..inst.item_count() {
                    assert_eq!(
                        disputants_at(&inst, &beta, j).unwrap(),
                        geometric_claim(&inst, &beta, j).unwrap(),
                        "item {j} at beta {beta}"
                    );
                }
            }
        }
    }

    #[test]
    fn segment_param_roundtrip() {
        let e5 = fixtures::e5();
        let seg = SupportSegment::new(&e5, 0, Player::II);
        let q = pt(rat(7, 18), rat(6, 18), rat(5, 18));
        let t = seg.param_of(&q).unwrap();
        assert!(t > rat(0, 1) && t < rat(1, 1));
        assert_eq!(seg.at(&t), q);
        assert_eq!(seg.param_of(&seg.start).unwrap(), rat(0, 1));
        assert_eq!(seg.param_of(&seg.corner()), None);
    }
}
