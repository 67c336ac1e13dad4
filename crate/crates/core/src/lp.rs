//! Dense exact-rational simplex, deliberately separate from the geometric
//! solver so the two share no code paths.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// maximize c·x subject to A x = b, x ≥ 0.
pub(crate) struct StandardLp {
    pub a: Vec<Vec<BigRational>>,
    pub b: Vec<BigRational>,
    pub c: Vec<BigRational>,
}

pub(crate) struct LpOutcome {
    pub objective: BigRational,
    pub solution: Vec<BigRational>,
    /// Column indices of the final basis, one per row.
    pub basis: Vec<usize>,
}

#[derive(Debug, PartialEq, Eq)]
pub(crate) enum LpFailure {
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// rows × (cols + 1); last column is the right-hand side.
    t: Vec<Vec<BigRational>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, row: usize, col: usize) {
        let factor = self.t[row][col].clone();
        for v in self.t[row].iter_mut() {
            *v /= factor.clone();
        }
        for r in 0..self.rows {
            if r == row || self.t[r][col].is_zero() {
                continue;
            }
            let scale = self.t[r][col].clone();
            for j in 0..=self.cols {
                let delta = &scale * &self.t[row][j];
                self.t[r][j] -= delta;
            }
        }
        self.basis[row] = col;
    }

    /// Primal simplex with Bland's rule on the objective `c` (maximization).
    /// Assumes the current basis is feasible (rhs ≥ 0). Only columns below
    /// `entering_limit` may enter the basis.
    fn optimize(&mut self, c: &[BigRational], entering_limit: usize) -> Result<(), LpFailure> {
        loop {
            // Reduced costs z_j = c_j − c_B · B⁻¹ A_j, recomputed exactly.
            let mut entering = None;
            for j in 0..entering_limit {
                if self.basis.contains(&j) {
                    continue;
                }
                let mut z = c[j].clone();
                for r in 0..self.rows {
                    let cb = &c[self.basis[r]];
                    if !cb.is_zero() && !self.t[r][j].is_zero() {
                        z -= cb * &self.t[r][j];
                    }
                }
                if z.is_positive() {
                    entering = Some(j);
                    break; // lowest index, Bland's rule
                }
            }
            let Some(col) = entering else { return Ok(()) };
            let mut leaving: Option<(BigRational, usize)> = None;
            for r in 0..self.rows {
                if self.t[r][col].is_positive() {
                    let ratio = &self.t[r][self.cols] / &self.t[r][col];
                    let better = match &leaving {
                        None => true,
                        Some((best, row)) => {
                            ratio < *best || (ratio == *best && self.basis[r] < self.basis[*row])
                        }
                    };
                    if better {
                        leaving = Some((ratio, r));
                    }
                }
            }
            let Some((_, row)) = leaving else { return Err(LpFailure::Unbounded) };
            self.pivot(row, col);
        }
    }

    fn objective_of(&self, c: &[BigRational]) -> BigRational {
        let mut total = BigRational::zero();
        for r in 0..self.rows {
            total += &c[self.basis[r]] * &self.t[r][self.cols];
        }
        total
    }

    fn solution(&self, cols: usize) -> Vec<BigRational> {
        let mut x = vec![BigRational::zero(); cols];
        for r in 0..self.rows {
            if self.basis[r] < cols {
                x[self.basis[r]] = self.t[r][self.cols].clone();
            }
        }
        x
    }
}

/// Two-phase solve: artificial variables carry phase one, then the real
/// objective runs on the feasible basis.
pub(crate) fn solve_two_phase(lp: &StandardLp) -> Result<LpOutcome, LpFailure> {
    let rows = lp.b.len();
    let cols = lp.c.len();
    let total = cols + rows; // artificials appended
    let mut t: Vec<Vec<BigRational>> = Vec::with_capacity(rows);
    for r in 0..rows {
        let mut row = Vec::with_capacity(total + 1);
        let flip = lp.b[r].is_negative();
        for j in 0..cols {
            row.push(if flip { -lp.a[r][j].clone() } else { lp.a[r][j].clone() });
        }
        for k in 0..rows {
            row.push(if k == r { BigRational::one() } else { BigRational::zero() });
        }
        row.push(if flip { -lp.b[r].clone() } else { lp.b[r].clone() });
        t.push(row);
    }
    let mut tab = Tableau { rows, cols: total, t, basis: (cols..total).collect() };

    let mut phase1 = vec![BigRational::zero(); total];
    for j in cols..total {
        phase1[j] = -BigRational::one();
    }
    tab.optimize(&phase1, total).map_err(|_| LpFailure::Infeasible)?;
    if !tab.objective_of(&phase1).is_zero() {
        return Err(LpFailure::Infeasible);
    }
    // Push any lingering zero-valued artificials out of the basis; a row with
    // no structural pivot left is redundant and its artificial stays basic at
    // zero. Phase two bars artificial columns from entering.
    for r in 0..rows {
        if tab.basis[r] >= cols {
            if let Some(col) = (0..cols).find(|&j| !tab.t[r][j].is_zero()) {
                tab.pivot(r, col);
            }
        }
    }
    let mut phase2 = lp.c.clone();
    phase2.extend(std::iter::repeat_n(BigRational::zero(), rows));
    tab.optimize(&phase2, cols)?;
    Ok(LpOutcome {
        objective: tab.objective_of(&phase2),
        solution: tab.solution(cols),
        basis: tab.basis.clone(),
    })
}
