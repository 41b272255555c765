//! Small dense two-phase simplex over exact rationals (Bland's rule), used for
//! feasibility and affine-hull computations on strata.

use num_traits::{Signed, Zero};

use crate::rat::Rat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

#[derive(Debug, Clone)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub relation: Relation,
    pub rhs: Rat,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> Self {
        Self {
            coeffs,
            relation,
            rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { value: Rat, point: Vec<Rat> },
    Infeasible,
    Unbounded,
}

/// `maximize objective · x` subject to the constraints and `x >= 0`.
#[derive(Debug, Clone)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rat>,
    pub constraints: Vec<Constraint>,
}

struct Tableau {
    rows: Vec<Vec<Rat>>,
    basis: Vec<usize>,
    width: usize,
}

impl Tableau {
    fn pivot(&mut self, obj: &mut [Rat], r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        let prow = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for (x, y) in obj.iter_mut().zip(&prow) {
                *x -= &f * y;
            }
        }
        self.basis[r] = c;
    }

    /// Runs the simplex on reduced-cost row `obj` restricted to `allowed` columns.
    /// Returns false when unbounded.
    fn optimize(&mut self, obj: &mut [Rat], allowed: &dyn Fn(usize) -> bool) -> bool {
        let rhs = self.width;
        loop {
            let Some(c) = (0..self.width).find(|&j| allowed(j) && obj[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rat)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if row[c].is_positive() {
                    let ratio = &row[rhs] / &row[c];
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
            }
            let Some((r, _)) = best else {
                return false;
            };
            self.pivot(obj, r, c);
        }
    }
}

impl LinearProgram {
    pub fn new(num_vars: usize, objective: Vec<Rat>) -> Self {
        assert_eq!(objective.len(), num_vars);
        Self {
            num_vars,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, coeffs: Vec<Rat>, relation: Relation, rhs: Rat) -> &mut Self {
        assert_eq!(coeffs.len(), self.num_vars);
        self.constraints
            .push(Constraint::new(coeffs, relation, rhs));
        self
    }

    pub fn solve(&self) -> LpOutcome {
        let n = self.num_vars;
        let m = self.constraints.len();
        // normalize rhs >= 0
        let normalized: Vec<(Vec<Rat>, Relation, Rat)> = self
            .constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.coeffs.iter().map(|x| -x).collect(), rel, -c.rhs.clone())
                } else {
                    (c.coeffs.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let n_slack = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Eq)
            .count();
        let n_art = normalized
            .iter()
            .filter(|(_, r, _)| *r != Relation::Le)
            .count();
        let width = n + n_slack + n_art;
        let art_start = n + n_slack;
        let mut rows = Vec::with_capacity(m);
        let mut basis = Vec::with_capacity(m);
        let (mut s, mut a) = (n, art_start);
        for (coeffs, rel, rhs) in &normalized {
            let mut row = vec![Rat::zero(); width + 1];
            row[..n].clone_from_slice(coeffs);
            row[width] = rhs.clone();
            match rel {
                Relation::Le => {
                    row[s] = Rat::from_integer(1.into());
                    basis.push(s);
                    s += 1;
                }
                Relation::Ge => {
                    row[s] = Rat::from_integer((-1).into());
                    s += 1;
                    row[a] = Rat::from_integer(1.into());
                    basis.push(a);
                    a += 1;
                }
                Relation::Eq => {
                    row[a] = Rat::from_integer(1.into());
                    basis.push(a);
                    a += 1;
                }
            }
            rows.push(row);
        }
        let mut tab = Tableau { rows, basis, width };

        // phase 1: maximize -(sum of artificials)
        if n_art > 0 {
            let mut obj = vec![Rat::zero(); width + 1];
            for x in obj.iter_mut().take(width).skip(art_start) {
                *x = Rat::from_integer((-1).into());
            }
            for i in 0..m {
                if tab.basis[i] >= art_start {
                    for (x, y) in obj.iter_mut().zip(&tab.rows[i]) {
                        *x += y;
                    }
                }
            }
            tab.optimize(&mut obj, &|_| true);
            // obj[width] holds the current sum of artificials
            if obj[width].is_positive() {
                return LpOutcome::Infeasible;
            }
            // drive remaining artificials out of the basis
            let mut i = 0;
            while i < tab.rows.len() {
                if tab.basis[i] >= art_start {
                    if let Some(c) = (0..art_start).find(|&j| !tab.rows[i][j].is_zero()) {
                        tab.pivot(&mut obj, i, c);
                        i += 1;
                    } else {
                        tab.rows.remove(i);
                        tab.basis.remove(i);
                    }
                } else {
                    i += 1;
                }
            }
        }

        // phase 2
        let mut obj = vec![Rat::zero(); width + 1];
        obj[..n].clone_from_slice(&self.objective);
        for i in 0..tab.rows.len() {
            let b = tab.basis[i];
            if !obj[b].is_zero() {
                let f = obj[b].clone();
                for (x, y) in obj.iter_mut().zip(&tab.rows[i]) {
                    *x -= &f * y;
                }
            }
        }
        if !tab.optimize(&mut obj, &|j| j < art_start) {
            return LpOutcome::Unbounded;
        }
        let mut point = vec![Rat::zero(); n];
        for (i, &b) in tab.basis.iter().enumerate() {
            if b < n {
                point[b] = tab.rows[i][width].clone();
            }
        }
        let value = crate::rat::dot(&self.objective, &point);
        LpOutcome::Optimal { value, point }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{frac, int};

    #[test]
    fn textbook_maximum() {
        // max 3x + 5y, x <= 4, 2y <= 12, 3x + 2y <= 18 -> 36 at (2, 6)
        let mut lp = LinearProgram::new(2, vec![int(3), int(5)]);
        lp.add(vec![int(1), int(0)], Relation::Le, int(4))
            .add(vec![int(0), int(2)], Relation::Le, int(12))
            .add(vec![int(3), int(2)], Relation::Le, int(18));
        match lp.solve() {
            LpOutcome::Optimal { value, point } => {
                assert_eq!(value, int(36));
                assert_eq!(point, vec![int(2), int(6)]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn equality_and_infeasibility() {
        let mut lp = LinearProgram::new(2, vec![int(1), int(0)]);
        lp.add(vec![int(1), int(1)], Relation::Eq, int(1)).add(
            vec![int(0), int(1)],
            Relation::Ge,
            frac(1, 3),
        );
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        let mut bad = LinearProgram::new(1, vec![int(1)]);
        bad.add(vec![int(1)], Relation::Le, int(-1));
        assert_eq!(bad.solve(), LpOutcome::Infeasible);
    }

    #[test]
    fn unbounded_detected() {
        let mut lp = LinearProgram::new(2, vec![int(1), int(1)]);
        lp.add(vec![int(1), int(-1)], Relation::Le, int(1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities() {
        let mut lp = LinearProgram::new(2, vec![int(0), int(1)]);
        lp.add(vec![int(1), int(1)], Relation::Eq, int(2))
            .add(vec![int(2), int(2)], Relation::Eq, int(4))
            .add(vec![int(1), int(0)], Relation::Ge, frac(1, 2));
        match lp.solve() {
            LpOutcome::Optimal { value, .. } => assert_eq!(value, frac(3, 2)),
            other => panic!("unexpected {other:?}"),
        }
    }
}
