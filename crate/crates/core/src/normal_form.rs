//! Smith normal form over ℤ with unimodular transforms.
//!
//! For an integer matrix `A` (m × n) this computes unimodular `U` (m × m) and
//! `V` (n × n) with `U·A·V = D`, where `D` is diagonal with positive entries
//! `d_1 | d_2 | … | d_r` followed by zeros. Integral and rational solvability of
//! `A·x = b`, particular solutions and a lattice basis of `ker A` all read off
//! from the decomposition.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::number::Rational;

#[derive(Clone, Debug)]
pub struct SmithForm {
    rows: usize,
    cols: usize,
    diag: Vec<BigInt>,
    u: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect()
}

// row_dst -= q * row_src
fn row_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in d.iter_mut().zip(s.iter()) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn col_axpy(m: &mut [Vec<BigInt>], dst: usize, src: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        if !row[src].is_zero() {
            let delta = q * &row[src];
            row[dst] -= delta;
        }
    }
}

fn col_swap(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

impl SmithForm {
    pub fn compute(a: &[Vec<i64>], cols: usize) -> SmithForm {
        let rows = a.len();
        let mut m: Vec<Vec<BigInt>> = a
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        let mut u = identity(rows);
        let mut v = identity(cols);
        let mut diag = Vec::new();

        let mut t = 0;
        while t < rows.min(cols) {
            // The smallest nonzero entry of the remaining block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, x) in row.iter().enumerate().skip(t) {
                    if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else { break };
            m.swap(t, pi);
            u.swap(t, pi);
            col_swap(&mut m, t, pj);
            col_swap(&mut v, t, pj);

            loop {
                let mut pivot = m[t][t].clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    if m[i][t].is_zero() {
                        continue;
                    }
                    let q = m[i][t].div_floor(&pivot);
                    row_axpy(&mut m, i, t, &q);
                    row_axpy(&mut u, i, t, &q);
                    if !m[i][t].is_zero() {
                        m.swap(t, i);
                        u.swap(t, i);
                        pivot = m[t][t].clone();
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    if m[t][j].is_zero() {
                        continue;
                    }
                    let q = m[t][j].div_floor(&pivot);
                    col_axpy(&mut m, j, t, &q);
                    col_axpy(&mut v, j, t, &q);
                    if !m[t][j].is_zero() {
                        col_swap(&mut m, t, j);
                        col_swap(&mut v, t, j);
                        pivot = m[t][t].clone();
                        dirty = true;
                    }
                }
                if dirty {
                    continue;
                }
                if (t + 1..rows).any(|i| !m[i][t].is_zero())
                    || (t + 1..cols).any(|j| !m[t][j].is_zero())
                {
                    continue;
                }
                // Divisibility: fold an offending row into the pivot row and retry.
                let offending =
                    (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !m[i][j].is_multiple_of(&pivot)));
                match offending {
                    Some(i) => {
                        let minus_one = -BigInt::one();
                        row_axpy(&mut m, t, i, &minus_one);
                        row_axpy(&mut u, t, i, &minus_one);
                    }
                    None => break,
                }
            }
            if m[t][t].is_negative() {
                for x in m[t].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[t].iter_mut() {
                    *x = -x.clone();
                }
            }
            diag.push(m[t][t].clone());
            t += 1;
        }

        SmithForm {
            rows,
            cols,
            diag,
            u,
            v,
        }
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// Nonzero diagonal entries, each dividing the next.
    pub fn diagonal(&self) -> &[BigInt] {
        &self.diag
    }

    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diag.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    fn transformed_rhs(&self, b: &[BigInt]) -> Vec<BigInt> {
        self.u
            .iter()
            .map(|row| {
                row.iter()
                    .zip(b)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .map(|(x, y)| x * y)
                    .sum()
            })
            .collect()
    }

    /// An integral solution of `A·x = b`, or `None` if there is none.
    pub fn solve_integral(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows);
        let c = self.transformed_rhs(b);
        let r = self.rank();
        if c[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut y = vec![BigInt::zero(); self.cols];
        for i in 0..r {
            let (q, rem) = c[i].div_rem(&self.diag[i]);
            if !rem.is_zero() {
                return None;
            }
            y[i] = q;
        }
        Some(self.apply_v(&y))
    }

    /// A rational solution of `A·x = b`, or `None` if `b` is outside the column space.
    pub fn solve_rational(&self, b: &[BigInt]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let c = self.transformed_rhs(b);
        let r = self.rank();
        if c[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let y: Vec<Rational> = (0..self.cols)
            .map(|i| {
                if i < r {
                    Rational::new(c[i].clone(), self.diag[i].clone())
                } else {
                    Rational::zero()
                }
            })
            .collect();
        Some(
            self.v
                .iter()
                .map(|row| {
                    row.iter()
                        .zip(&y)
                        .filter(|(x, _)| !x.is_zero())
                        .map(|(x, y)| y * x)
                        .fold(Rational::zero(), |a, b| a + b)
                })
                .collect(),
        )
    }

    fn apply_v(&self, y: &[BigInt]) -> Vec<BigInt> {
        self.v
            .iter()
            .map(|row| {
                row.iter()
                    .zip(y)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .map(|(x, y)| x * y)
                    .sum()
            })
            .collect()
    }

    /// A ℤ-basis of `ker A`, one vector per column of `V` past the rank.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank()..self.cols)
            .map(|j| self.v.iter().map(|row| row[j].clone()).collect())
            .collect()
    }
}
