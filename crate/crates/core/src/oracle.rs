//! Independent verification paths for the geometric solver: an exact maxmin
//! LP, a grid sweep of the objective, brute-force support checks, and a
//! fixture builder that realizes prescribed item points.

use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lp::{solve_two_phase, LpFailure, StandardLp};
use crate::model::{
    allocation_value, enumerate_integer_allocations_with_cap, AllocationMatrix, Instance, Player,
    DEFAULT_ENUMERATION_CAP,
};
use crate::geometry::SimplexPoint;
use crate::solver::g_value;

/// Exact solution of the maxmin program.
#[derive(Debug, Clone)]
pub struct LpSolution {
    /// Optimal maxmin value; under mutual absolute continuity this equals the
    /// common equitable value.
    pub value: BigRational,
    pub allocation: AllocationMatrix,
    /// Names of the variables in the final basis.
    pub basis: Vec<String>,
}

/// Solves max t s.t. Σ_j a_{ij} x_{ij} ≥ t, column sums 1, x ≥ 0 by exact
/// dense simplex pivoting with Bland's rule.
pub fn maxmin_lp(inst: &Instance) -> LpSolution {
    let m = inst.item_count();
    // Variables: x_{ij} (player-major), then t, then three surpluses.
    let x = |p: Player, j: usize| p.index() * m + j;
    let t_col = 3 * m;
    let s_col = |p: Player| 3 * m + 1 + p.index();
    let cols = 3 * m + 4;
    let zero = BigRational::zero();
    let one = BigRational::one();

    let mut a = Vec::with_capacity(m + 3);
    let mut b = Vec::with_capacity(m + 3);
    for j in 0..m {
        let mut row = vec![zero.clone(); cols];
        for p in Player::ALL {
            row[x(p, j)] = one.clone();
        }
        a.push(row);
        b.push(one.clone());
    }
    for p in Player::ALL {
        let mut row = vec![zero.clone(); cols];
        for j in 0..m {
            row[x(p, j)] = inst.value(p, j).clone();
        }
        row[t_col] = -one.clone();
        row[s_col(p)] = -one.clone();
        a.push(row);
        b.push(zero.clone());
    }
    let mut c = vec![zero.clone(); cols];
    c[t_col] = one.clone();

    let out = solve_two_phase(&StandardLp { a, b, c })
        .expect("maxmin program is always feasible and bounded");

    let mut shares = AllocationMatrix::zeros(m);
    for p in Player::ALL {
        for j in 0..m {
            shares[p.index()][j] = out.solution[x(p, j)].clone();
        }
    }
    let allocation = AllocationMatrix::new(shares).expect("LP respects the column constraints");
    let value = out.objective;
    debug_assert_eq!(
        allocation_value(inst, &allocation).expect("dimensions match").min(),
        &value
    );
    let name = |col: usize| -> String {
        if col < 3 * m {
            format!("x[{},{}]", Player::from_index(col / m).label(), col % m + 1)
        } else if col == t_col {
            "t".to_string()
        } else if col < cols {
            format!("s[{}]", Player::from_index(col - 3 * m - 1).label())
        } else {
            format!("a[{}]", col - cols + 1)
        }
    };
    LpSolution { value, allocation, basis: out.basis.iter().map(|&c| name(c)).collect() }
}

/// Minimizes g over the interior grid points (i/n, j/n, k/n), i+j+k = n,
/// i,j,k ≥ 1. The sweep runs in floating point; near-minimal candidates are
/// re-evaluated exactly and the exact winner returned.
pub fn grid_min_g(inst: &Instance, n: usize) -> (SimplexPoint, BigRational) {
    assert!(n >= 3, "grid resolution must be at least 3");
    let m = inst.item_count();
    let af: Vec<[f64; 3]> = (0..m)
        .map(|j| {
            let col = inst.column(j);
            [
                col[0].to_f64().expect("finite"),
                col[1].to_f64().expect("finite"),
                col[2].to_f64().expect("finite"),
            ]
        })
        .collect();
    let mut best = f64::INFINITY;
    let mut candidates: Vec<(usize, usize, usize)> = Vec::new();
    for i in 1..=(n - 2) {
        for j in 1..=(n - 1 - i) {
            let k = n - i - j;
            let (wi, wj, wk) = (i as f64, j as f64, k as f64);
            let mut v = 0.0;
            for col in &af {
                v += (wi * col[0]).max(wj * col[1]).max(wk * col[2]);
            }
            let tol = 1e-9 * (best.abs() + 1.0);
            if v < best - tol {
                best = v;
                candidates.clear();
                candidates.push((i, j, k));
            } else if v <= best + tol {
                candidates.push((i, j, k));
            }
        }
    }
    let denom = BigRational::from_integer(n.into());
    let mut winner: Option<(SimplexPoint, BigRational)> = None;
    for (i, j, k) in candidates {
        let gamma = SimplexPoint::new([
            BigRational::from_integer(i.into()) / denom.clone(),
            BigRational::from_integer(j.into()) / denom.clone(),
            BigRational::from_integer(k.into()) / denom.clone(),
        ])
        .expect("grid point is on the simplex");
        let value = g_value(inst, &gamma);
        if winner.as_ref().is_none_or(|(_, best)| value < *best) {
            winner = Some((gamma, value));
        }
    }
    winner.expect("grid with n >= 3 has interior points")
}

/// Brute-force max of Σ_i γ_i a_i(X̂) over all 3^m integer allocations.
/// Must equal `g_value` exactly — the per-item max and the allocation-wise
/// max commute.
pub fn hyperplane_support_check(inst: &Instance, gamma: &SimplexPoint) -> Result<BigRational> {
    hyperplane_support_check_with_cap(inst, gamma, DEFAULT_ENUMERATION_CAP)
}

pub fn hyperplane_support_check_with_cap(
    inst: &Instance,
    gamma: &SimplexPoint,
    cap: usize,
) -> Result<BigRational> {
    let m = inst.item_count();
    let mut best: Option<BigRational> = None;
    for alloc in enumerate_integer_allocations_with_cap(m, cap)? {
        let mut total = BigRational::zero();
        for (j, p) in alloc.owners().iter().enumerate() {
            total += gamma.coord(*p) * inst.value(*p, j);
        }
        if best.as_ref().is_none_or(|b| total > *b) {
            best = Some(total);
        }
    }
    Ok(best.expect("at least one allocation"))
}

/// Builds an instance whose item points are exactly `points` by solving for
/// positive column masses w with Σ_j w_j p_j = (1,1,1). The masses come from
/// an exact LP maximizing the smallest one; failure means no positive choice
/// exists.
pub fn instance_from_rns_points(points: &[SimplexPoint]) -> Result<Instance> {
    let m = points.len();
    if m < 3 {
        return Err(Error::Infeasible(format!("need at least 3 points, got {m}")));
    }
    if let Some(p) = points.iter().find(|p| !p.is_interior()) {
        return Err(Error::Infeasible(format!("point {p} lies on the boundary")));
    }
    // Variables: w_1..w_m, t, u_1..u_m with w_j − t − u_j = 0 and the three
    // row-sum equalities; maximize t.
    let t_col = m;
    let u_col = |j: usize| m + 1 + j;
    let cols = 2 * m + 1;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut a = Vec::with_capacity(3 + m);
    let mut b = Vec::with_capacity(3 + m);
    for p in Player::ALL {
        let mut row = vec![zero.clone(); cols];
        for (j, point) in points.iter().enumerate() {
            row[j] = point.coord(p).clone();
        }
        a.push(row);
        b.push(one.clone());
    }
    for j in 0..m {
        let mut row = vec![zero.clone(); cols];
        row[j] = one.clone();
        row[t_col] = -one.clone();
        row[u_col(j)] = -one.clone();
        a.push(row);
        b.push(zero.clone());
    }
    let mut c = vec![zero.clone(); cols];
    c[t_col] = one.clone();

    let out = solve_two_phase(&StandardLp { a, b, c }).map_err(|e| match e {
        LpFailure::Infeasible => Error::Infeasible("no masses realize the points".into()),
        LpFailure::Unbounded => unreachable!("mass program is bounded"),
    })?;
    if !out.objective.is_positive() {
        return Err(Error::Infeasible(
            "every mass vector for these points has a nonpositive entry".into(),
        ));
    }
    let mut rows: [Vec<BigRational>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for (j, point) in points.iter().enumerate() {
        let w = &out.solution[j];
        for p in Player::ALL {
            rows[p.index()].push(w * point.coord(p));
        }
    }
    Instance::new(rows, false)
}
