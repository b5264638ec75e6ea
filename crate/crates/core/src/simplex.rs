//! Dense two-phase simplex over exact rationals.
//!
//! Solves `maximize c·x` subject to linear constraints and `x ≥ 0`. Pivoting
//! follows Bland's rule (lowest eligible column enters, lowest basic index
//! leaves on ratio ties), so the method terminates on degenerate problems.

use alloc::vec;
use alloc::vec::Vec;

use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub sense: Sense,
    pub rhs: Rational,
}

/// `maximize objective·x` over `x ≥ 0` subject to `constraints`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearProgram {
    pub vars: usize,
    pub constraints: Vec<Constraint>,
    pub objective: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpOutcome {
    Infeasible,
    Unbounded,
    Optimal {
        value: Rational,
        point: Vec<Rational>,
    },
}

struct Tableau {
    /// `rows[i][cols]` holds the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize, objective: &mut [Rational]) {
        let inv = self.rows[r][col]
            .recip()
            .expect("pivot element is non-zero");
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v = &*v * &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let eliminate = |row: &mut [Rational]| {
            let factor = row[col].clone();
            if factor.is_zero() {
                return;
            }
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &(&factor * p);
                }
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(objective);
        self.basis[r] = col;
    }

    /// Reduced-cost row for maximizing `cost·x` (a column may enter while its
    /// entry is negative); the last entry is the current objective value.
    fn objective_row(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut obj: Vec<Rational> = cost.iter().map(|c| -c).collect();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, v) in obj.iter_mut().zip(row) {
                if !v.is_zero() {
                    *o += &(cb * v);
                }
            }
        }
        obj
    }

    /// Runs primal simplex iterations; `false` means unbounded.
    fn optimize(&mut self, cost: &[Rational], allowed: &[bool]) -> (bool, Rational) {
        let mut obj = self.objective_row(cost);
        loop {
            let entering = (0..self.cols).find(|&j| allowed[j] && obj[j].is_negative());
            let Some(col) = entering else {
                return (true, obj[self.cols].clone());
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[col].is_positive() {
                    continue;
                }
                let ratio = &row[self.cols] / &row[col];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            let Some((r, _)) = best else {
                return (false, obj[self.cols].clone());
            };
            self.pivot(r, col, &mut obj);
        }
    }
}

impl LinearProgram {
    pub fn maximize(&self) -> LpOutcome {
        let n = self.vars;
        let m = self.constraints.len();
        // normalize to non-negative right-hand sides
        let normalized: Vec<(Vec<Rational>, Sense, Rational)> = self
            .constraints
            .iter()
            .map(|c| {
                debug_assert_eq!(c.coeffs.len(), n);
                if c.rhs.is_negative() {
                    let sense = match c.sense {
                        Sense::Le => Sense::Ge,
                        Sense::Ge => Sense::Le,
                        Sense::Eq => Sense::Eq,
                    };
                    (c.coeffs.iter().map(|v| -v).collect(), sense, -&c.rhs)
                } else {
                    (c.coeffs.clone(), c.sense, c.rhs.clone())
                }
            })
            .collect();
        let slack_count = normalized.iter().filter(|c| c.1 != Sense::Eq).count();
        let artificial_count = normalized.iter().filter(|c| c.1 != Sense::Le).count();
        let cols = n + slack_count + artificial_count;
        let first_artificial = n + slack_count;

        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut next_slack, mut next_art) = (n, first_artificial);
        for (coeffs, sense, rhs) in normalized {
            let mut row = coeffs;
            row.resize(cols + 1, Rational::zero());
            row[cols] = rhs;
            match sense {
                Sense::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Sense::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
                Sense::Eq => {
                    row[next_art] = Rational::one();
                    basis.push(next_art);
                    next_art += 1;
                }
            }
            rows.push(row);
        }
        let mut t = Tableau { rows, basis, cols };

        if artificial_count > 0 {
            let mut cost = vec![Rational::zero(); cols];
            for c in cost.iter_mut().skip(first_artificial) {
                *c = -Rational::one();
            }
            let allowed = vec![true; cols];
            let (_, value) = t.optimize(&cost, &allowed);
            if !value.is_zero() {
                return LpOutcome::Infeasible;
            }
            // drive artificial variables out of the basis
            let mut i = 0;
            while i < t.rows.len() {
                if t.basis[i] >= first_artificial {
                    match (0..first_artificial).find(|&j| !t.rows[i][j].is_zero()) {
                        Some(j) => {
                            let mut scratch = vec![Rational::zero(); cols + 1];
                            t.pivot(i, j, &mut scratch);
                        }
                        None => {
                            // redundant row
                            t.rows.swap_remove(i);
                            t.basis.swap_remove(i);
                            continue;
                        }
                    }
                }
                i += 1;
            }
        }

        let mut cost = vec![Rational::zero(); cols];
        cost[..n].clone_from_slice(&self.objective);
        let allowed: Vec<bool> = (0..cols).map(|j| j < first_artificial).collect();
        let (bounded, value) = t.optimize(&cost, &allowed);
        if !bounded {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rational::zero(); n];
        for (row, &b) in t.rows.iter().zip(&t.basis) {
            if b < n {
                point[b] = row[cols].clone();
            }
        }
        LpOutcome::Optimal { value, point }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn c(coeffs: &[i64], sense: Sense, rhs: i64) -> Constraint {
        Constraint {
            coeffs: coeffs.iter().map(|&v| Rational::from_integer(v)).collect(),
            sense,
            rhs: Rational::from_integer(rhs),
        }
    }

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18 → 36 at (2, 6)
        let lp = LinearProgram {
            vars: 2,
            constraints: vec![
                c(&[1, 0], Sense::Le, 4),
                c(&[0, 2], Sense::Le, 12),
                c(&[3, 2], Sense::Le, 18),
            ],
            objective: vec![q(3, 1), q(5, 1)],
        };
        assert_eq!(
            lp.maximize(),
            LpOutcome::Optimal {
                value: q(36, 1),
                point: vec![q(2, 1), q(6, 1)]
            }
        );
    }

    #[test]
    fn equality_and_ge_rows() {
        // max y, x + y = 1, x - y ≥ 0 → y = 1/2
        let lp = LinearProgram {
            vars: 2,
            constraints: vec![c(&[1, 1], Sense::Eq, 1), c(&[1, -1], Sense::Ge, 0)],
            objective: vec![q(0, 1), q(1, 1)],
        };
        match lp.maximize() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, q(1, 2)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let lp = LinearProgram {
            vars: 1,
            constraints: vec![c(&[1], Sense::Ge, 2), c(&[1], Sense::Le, 1)],
            objective: vec![q(1, 1)],
        };
        assert_eq!(lp.maximize(), LpOutcome::Infeasible);
        let lp = LinearProgram {
            vars: 1,
            constraints: vec![c(&[1], Sense::Ge, 2)],
            objective: vec![q(1, 1)],
        };
        assert_eq!(lp.maximize(), LpOutcome::Unbounded);
    }

    #[test]
    fn negative_rhs_and_redundant_rows() {
        // -x ≤ -1 is x ≥ 1; duplicated equality is redundant
        let lp = LinearProgram {
            vars: 2,
            constraints: vec![
                c(&[-1, 0], Sense::Le, -1),
                c(&[1, 1], Sense::Eq, 3),
                c(&[2, 2], Sense::Eq, 6),
            ],
            objective: vec![q(-1, 1), q(0, 1)],
        };
        match lp.maximize() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, q(-1, 1));
                assert_eq!(point, vec![q(1, 1), q(2, 1)]);
            }
            other => panic!("{other:?}"),
        }
    }
}
