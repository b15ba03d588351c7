//! Exact two-phase simplex over the rationals with Bland's rule.
//!
//! Problems are `min c·x` subject to linear equalities and inequalities with
//! `x ≥ 0`. Bland's rule (least index entering, least basic index among tied
//! ratios) rules out cycling, so every solve terminates.

use num_traits::{Signed, Zero};

use crate::number::Rational;

pub type Row = Vec<(usize, Rational)>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Le,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub row: Row,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct LinearProgram {
    pub num_vars: usize,
    pub objective: Vec<Rational>,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: Rational, x: Vec<Rational> },
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize, objective: Vec<Rational>) -> Self {
        assert_eq!(objective.len(), num_vars);
        LinearProgram {
            num_vars,
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn add(&mut self, row: Row, relation: Relation, rhs: Rational) {
        self.constraints.push(Constraint { row, relation, rhs });
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(self).run(self)
    }
}

struct Tableau {
    /// Constraint rows followed by the objective row; last column is the rhs.
    t: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    cols: usize,
    first_artificial: usize,
}

impl Tableau {
    fn build(lp: &LinearProgram) -> Tableau {
        let n = lp.num_vars;
        let slacks = lp
            .constraints
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .count();
        let m = lp.constraints.len();
        let first_artificial = n + slacks;
        let cols = first_artificial + m;
        let mut t = Vec::with_capacity(m + 1);
        let mut basis = Vec::with_capacity(m);
        let mut slack = n;
        for (i, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); cols + 1];
            for (j, a) in &c.row {
                row[*j] += a;
            }
            match c.relation {
                Relation::Eq => {}
                Relation::Le => {
                    row[slack] = Rational::from_integer(1.into());
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = Rational::from_integer((-1).into());
                    slack += 1;
                }
            }
            row[cols] = c.rhs.clone();
            if row[cols].is_negative() {
                for x in row.iter_mut() {
                    *x = -x.clone();
                }
            }
            row[first_artificial + i] = Rational::from_integer(1.into());
            basis.push(first_artificial + i);
            t.push(row);
        }
        // Phase-one objective: the sum of artificials, priced out against the basis.
        let mut obj = vec![Rational::zero(); cols + 1];
        for row in &t {
            for (j, x) in row.iter().enumerate() {
                if j < first_artificial || j == cols {
                    obj[j] -= x;
                }
            }
        }
        t.push(obj);
        Tableau {
            t,
            basis,
            cols,
            first_artificial,
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c].clone();
        for x in self.t[r].iter_mut() {
            if !x.is_zero() {
                *x /= &p;
            }
        }
        let pivot_row = self.t[r].clone();
        let nz: Vec<usize> = (0..pivot_row.len())
            .filter(|&j| !pivot_row[j].is_zero())
            .collect();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let factor = row[c].clone();
            for &j in &nz {
                let delta = &factor * &pivot_row[j];
                row[j] -= delta;
            }
        }
        self.basis[r] = c;
    }

    /// Runs simplex iterations on the current objective row over columns `< limit`.
    /// Returns false if the objective is unbounded below.
    fn iterate(&mut self, limit: usize) -> bool {
        loop {
            let obj = self.t.len() - 1;
            let entering = (0..limit).find(|&j| self.t[obj][j].is_negative());
            let Some(c) = entering else { return true };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..obj {
                let a = &self.t[i][c];
                if a.is_positive() {
                    let ratio = &self.t[i][self.cols] / a;
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
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn run(mut self, lp: &LinearProgram) -> LpOutcome {
        let cols = self.cols;
        self.iterate(self.first_artificial);
        let obj = self.t.len() - 1;
        if !self.t[obj][cols].is_zero() {
            return LpOutcome::Infeasible;
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are redundant and are dropped.
        let mut i = 0;
        while i < self.basis.len() {
            if self.basis[i] >= self.first_artificial {
                match (0..self.first_artificial).find(|&j| !self.t[i][j].is_zero()) {
                    Some(j) => {
                        self.pivot(i, j);
                        i += 1;
                    }
                    None => {
                        self.t.remove(i);
                        self.basis.remove(i);
                    }
                }
            } else {
                i += 1;
            }
        }
        // Phase two objective row, priced out against the current basis.
        let obj = self.t.len() - 1;
        let mut row = vec![Rational::zero(); cols + 1];
        for (j, c) in lp.objective.iter().enumerate() {
            row[j] = c.clone();
        }
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = if b < lp.num_vars {
                lp.objective[b].clone()
            } else {
                Rational::zero()
            };
            if cb.is_zero() {
                continue;
            }
            for (j, x) in self.t[i].iter().enumerate() {
                if !x.is_zero() {
                    row[j] -= &cb * x;
                }
            }
        }
        self.t[obj] = row;
        if !self.iterate(self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); lp.num_vars];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < lp.num_vars {
                x[b] = self.t[i][cols].clone();
            }
        }
        let value = -self.t[obj][cols].clone();
        LpOutcome::Optimal { value, x }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, rat};

    #[test]
    fn one_variable_half() {
        // min p + n s.t. 2p - 2n = 1
        let mut lp = LinearProgram::new(2, vec![int(1), int(1)]);
        lp.add(vec![(0, int(2)), (1, int(-2))], Relation::Eq, int(1));
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, rat(1, 2));
                assert_eq!(x, vec![rat(1, 2), int(0)]);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1, vec![int(1)]);
        lp.add(vec![(0, int(1))], Relation::Eq, int(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);
        let mut lp = LinearProgram::new(2, vec![int(-1), int(0)]);
        lp.add(vec![(0, int(1)), (1, int(-1))], Relation::Eq, int(0));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_rows_and_inequalities() {
        // min x + y s.t. x + y = 2, 2x + 2y = 4, x >= 1/2, y <= 1
        let mut lp = LinearProgram::new(2, vec![int(1), int(1)]);
        lp.add(vec![(0, int(1)), (1, int(1))], Relation::Eq, int(2));
        lp.add(vec![(0, int(2)), (1, int(2))], Relation::Eq, int(4));
        lp.add(vec![(0, int(1))], Relation::Ge, rat(1, 2));
        lp.add(vec![(1, int(1))], Relation::Le, int(1));
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                assert_eq!(value, int(2));
                assert!(x[0] >= rat(1, 2) && x[1] <= int(1));
                assert_eq!(&x[0] + &x[1], int(2));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn matches_vertex_enumeration_on_random_small_programs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            // min c·x s.t. A x <= b, x >= 0 with b >= 0 and c > 0 (bounded; optimum 0 at x = 0)
            // plus a >= row that forces work.
            let n = 3;
            let mut lp = LinearProgram::new(n, (0..n).map(|_| int(rng.gen_range(1..4))).collect());
            let row: Row = (0..n).map(|j| (j, int(rng.gen_range(0..3)))).collect();
            let rhs = int(rng.gen_range(1..5));
            lp.add(row.clone(), Relation::Ge, rhs.clone());
            let LpOutcome::Optimal { value, .. } = lp.solve() else {
                if row.iter().all(|(_, a)| a.is_zero()) {
                    continue;
                }
                panic!("bounded feasible program");
            };
            // One-constraint optimum: cheapest ratio c_j / a_j times rhs.
            let best = row
                .iter()
                .filter(|(_, a)| a.is_positive())
                .map(|(j, a)| &lp.objective[*j] / a * &rhs)
                .min()
                .unwrap();
            assert_eq!(value, best);
        }
    }
}
