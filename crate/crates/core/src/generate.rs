//! Seeded random instances, optionally retried into exact general position.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    item_point, s_independent, segment_intersection, SegmentMeet, SimplexPoint, SupportSegment,
};
use crate::model::{Instance, Player};

/// Numerators are drawn uniformly over this denominator grid.
const DENOMINATOR: i64 = 1000;

/// Deterministic random instance: positive rational entries, rows normalized
/// exactly. The same (m, seed) always yields the same instance.
pub fn generate_instance(m: usize, seed: u64) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    draw(m, &mut rng)
}

fn draw(m: usize, rng: &mut ChaCha8Rng) -> Result<Instance> {
    if m == 0 {
        return Err(Error::EmptyInstance);
    }
    let mut rows: [Vec<BigRational>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for row in &mut rows {
        for _ in 0..m {
            let numerator: i64 = rng.random_range(1..=DENOMINATOR);
            row.push(BigRational::new(numerator.into(), DENOMINATOR.into()));
        }
    }
    Instance::new(rows, true)
}

/// Retries `generate_instance` draws from one seeded stream until the result
/// is in exact general position.
pub fn generate_general_position(m: usize, seed: u64, max_retries: usize) -> Result<Instance> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_retries.max(1) {
        let inst = draw(m, &mut rng)?;
        if is_general_position(&inst) {
            return Ok(inst);
        }
    }
    Err(Error::RetriesExhausted { attempts: max_retries.max(1) })
}

/// Exact general position: all pairs s-independent, every pair's supporting
/// segments cross exactly once, no crossing lands on an item point, and no
/// two crossings coincide.
pub fn is_general_position(inst: &Instance) -> bool {
    let m = inst.item_count();
    let points: Vec<SimplexPoint> = (0..m).map(|j| item_point(inst, j)).collect();
    let mut crossings: Vec<SimplexPoint> = Vec::new();
    for j in 0..m {
        for k in (j + 1)..m {
            if !s_independent(inst, j, k) {
                return false;
            }
            let mut found: Option<SimplexPoint> = None;
            for tj in Player::ALL {
                for tk in Player::ALL {
                    let sj = SupportSegment { item: j, toward: tj, start: points[j].clone() };
                    let sk = SupportSegment { item: k, toward: tk, start: points[k].clone() };
                    match segment_intersection(&sj, &sk) {
                        SegmentMeet::Cross(x) => {
                            if found.replace(x).is_some() {
                                return false;
                            }
                        }
                        SegmentMeet::Overlap => return false,
                        SegmentMeet::Disjoint => {}
                    }
                }
            }
            // The crossing must exist, not be verified by assumption.
            let Some(x) = found else { return false };
            if points.contains(&x) || crossings.contains(&x) {
                return false;
            }
            crossings.push(x);
        }
    }
    true
}
