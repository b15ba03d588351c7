//! Filling norms `‖γ‖_∂` over ℤ and ℚ and the homological Dehn function.
//!
//! Over ℚ the norm is the optimum of
//!
//! ```text
//! min Σ_f (p_f + n_f)   subject to   ∂_2 (p − n) = γ,   p, n ≥ 0
//! ```
//!
//! solved exactly by simplex. Over ℤ, solvability of `∂_2 μ = γ` is decided
//! first from the Smith form of `∂_2`; when a solution exists its norm seeds a
//! branch-and-bound search whose nodes are the same program with extra bounds
//! on single face coefficients.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::chain::{Chain, Ring};
use crate::complex::{boundary, l1_norm, Sign, TwoComplex};
use crate::cycles::{
    enumerate_circuits, generate_cycles, is_cycle, signed_circuit_cycles, sparse_to_chain, Circuit,
    SparseCycle,
};
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::normal_form::SmithForm;
use crate::number::{format_rational, int, Extended, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Certificate {
    FeasibleOptimal,
    /// Solvable over ℚ but not over ℤ.
    IntegrallyInfeasible,
    /// `γ` is not a boundary even over ℚ.
    RationallyInfeasible,
    /// `γ ≠ 0` and the complex has no 2-cells.
    NoFaces,
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certificate::FeasibleOptimal => "FEASIBLE_OPTIMAL",
            Certificate::IntegrallyInfeasible => "INTEGRALLY_INFEASIBLE",
            Certificate::RationallyInfeasible => "RATIONALLY_INFEASIBLE",
            Certificate::NoFaces => "NO_FACES",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingResult {
    pub value: Extended,
    /// A 2-chain `μ` with `∂μ = γ` and `‖μ‖_1 = value`; present iff the value is finite.
    pub witness: Option<Chain>,
    pub ring: Ring,
    pub certificate: Certificate,
}

impl FillingResult {
    fn infinite(ring: Ring, certificate: Certificate) -> Self {
        FillingResult {
            value: Extended::Infinite,
            witness: None,
            ring,
            certificate,
        }
    }

    fn optimal(ring: Ring, witness: Chain) -> Self {
        FillingResult {
            value: Extended::Finite(l1_norm(&witness)),
            witness: Some(witness.with_ring(ring)),
            ring,
            certificate: Certificate::FeasibleOptimal,
        }
    }

    fn negated(&self) -> Self {
        FillingResult {
            witness: self.witness.as_ref().map(|w| w.neg()),
            ..self.clone()
        }
    }
}

/// Per-complex filling oracle. Holds the Smith form of `∂_2`, a row basis for
/// the linear programs and a cache of solved cycles.
pub struct FillingSolver<'a> {
    complex: &'a TwoComplex,
    smith: SmithForm,
    matrix: Vec<Vec<i64>>,
    lp_rows: Vec<usize>,
    kernel: Vec<Vec<BigInt>>,
    cache: Mutex<HashMap<(Ring, SparseCycle), FillingResult>>,
}

fn independent_rows(m: &[Vec<i64>], cols: usize) -> Vec<usize> {
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (i, row) in m.iter().enumerate() {
        let mut v: Vec<Rational> = row.iter().map(|&x| int(x)).collect();
        for (b, &p) in basis.iter().zip(&pivots) {
            if !v[p].is_zero() {
                let factor = &v[p] / &b[p];
                for j in 0..cols {
                    if !b[j].is_zero() {
                        v[j] -= &factor * &b[j];
                    }
                }
            }
        }
        if let Some(p) = (0..cols).find(|&j| !v[j].is_zero()) {
            basis.push(v);
            pivots.push(p);
            chosen.push(i);
        }
    }
    chosen
}

impl<'a> FillingSolver<'a> {
    pub fn new(complex: &'a TwoComplex) -> Self {
        let matrix = complex.boundary2_matrix();
        let faces = complex.num_faces();
        let smith = SmithForm::compute(&matrix, faces);
        let lp_rows = independent_rows(&matrix, faces);
        let kernel = smith.kernel_basis();
        FillingSolver {
            complex,
            smith,
            matrix,
            lp_rows,
            kernel,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn complex(&self) -> &TwoComplex {
        self.complex
    }

    /// Rank of the integral lattice of 2-cycles, i.e. the freedom in a filling.
    pub fn kernel_rank(&self) -> usize {
        self.complex.num_faces() - self.smith.rank()
    }

    pub fn filling_norm(&self, gamma: &Chain, ring: Ring) -> Result<FillingResult> {
        if gamma.dim() != 1 || !gamma.is_integral() || !is_cycle(self.complex, gamma) {
            return Err(Error::NotACycle);
        }
        let sparse = gamma.to_ints().ok_or(Error::NotACycle)?;
        Ok(self.fill_sparse(&sparse, ring))
    }

    pub(crate) fn fill_sparse(&self, gamma: &SparseCycle, ring: Ring) -> FillingResult {
        let key = (ring, gamma.clone());
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return hit.clone();
        }
        let neg: SparseCycle = gamma.iter().map(|&(e, c)| (e, -c)).collect();
        if let Some(hit) = self.cache.lock().unwrap().get(&(ring, neg.clone())) {
            return hit.negated();
        }
        let result = self.compute(gamma, ring, true);
        let mut cache = self.cache.lock().unwrap();
        cache.insert((ring, neg), result.negated());
        cache.insert(key, result.clone());
        result
    }

    fn compute(&self, gamma: &SparseCycle, ring: Ring, fast: bool) -> FillingResult {
        if gamma.is_empty() {
            return FillingResult::optimal(ring, Chain::zero(2, ring));
        }
        let faces = self.complex.num_faces();
        if faces == 0 {
            return FillingResult::infinite(ring, Certificate::NoFaces);
        }
        let mut b = vec![BigInt::zero(); self.complex.num_edges()];
        for &(e, c) in gamma {
            b[e] = BigInt::from(c);
        }
        match ring {
            Ring::Rat => {
                let Some(x0) = self.smith.solve_rational(&b) else {
                    return FillingResult::infinite(ring, Certificate::RationallyInfeasible);
                };
                if self.kernel_rank() == 0 {
                    return FillingResult::optimal(ring, dense_to_chain(&x0));
                }
                if fast && self.kernel_rank() == 1 {
                    return FillingResult::optimal(
                        ring,
                        dense_to_chain(&self.line_search(&x0, false)),
                    );
                }
                let (_, x) = self
                    .solve_relaxation(&b, &[], None)
                    .expect("feasible over Q");
                FillingResult::optimal(ring, dense_to_chain(&x))
            }
            Ring::Int => {
                let Some(x0) = self.smith.solve_integral(&b) else {
                    let cert = if self.smith.solve_rational(&b).is_some() {
                        Certificate::IntegrallyInfeasible
                    } else {
                        Certificate::RationallyInfeasible
                    };
                    return FillingResult::infinite(ring, cert);
                };
                let x0: Vec<Rational> = x0.into_iter().map(Rational::from_integer).collect();
                if self.kernel_rank() == 0 {
                    return FillingResult::optimal(ring, dense_to_chain(&x0));
                }
                if fast && self.kernel_rank() == 1 {
                    return FillingResult::optimal(
                        ring,
                        dense_to_chain(&self.line_search(&x0, true)),
                    );
                }
                let x = self.branch_and_bound(&b, x0);
                FillingResult::optimal(ring, dense_to_chain(&x))
            }
        }
    }

    /// With a single kernel generator `z` every solution is `x0 + t·z`, and
    /// `Σ_f |x0_f + t·z_f|` is convex and piecewise linear in `t` with kinks at
    /// `t = −x0_f / z_f`. The rational optimum sits at a kink; the integral one
    /// at the floor or ceiling of one, since `z` spans the integral kernel.
    fn line_search(&self, x0: &[Rational], integral: bool) -> Vec<Rational> {
        let z: Vec<Rational> = self.kernel[0]
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect();
        let cost = |t: &Rational| {
            x0.iter()
                .zip(&z)
                .map(|(a, b)| (a + t * b).abs())
                .fold(Rational::zero(), |acc, c| acc + c)
        };
        let mut candidates: Vec<Rational> = x0
            .iter()
            .zip(&z)
            .filter(|(_, b)| !b.is_zero())
            .flat_map(|(a, b)| {
                let t = -(a / b);
                if integral {
                    vec![t.floor(), t.ceil()]
                } else {
                    vec![t]
                }
            })
            .collect();
        candidates.sort();
        candidates.dedup();
        let mut best: Option<(Rational, Rational)> = None;
        for t in candidates {
            let c = cost(&t);
            if best.as_ref().is_none_or(|(bc, _)| c < *bc) {
                best = Some((c, t));
            }
        }
        let t = best.map(|(_, t)| t).unwrap_or_else(Rational::zero);
        x0.iter().zip(&z).map(|(a, b)| a + &t * b).collect()
    }

    /// Solves the split-variable program with the given face bounds and an
    /// optional cap on the objective. Returns the optimum and `x = p − n`.
    fn solve_relaxation(
        &self,
        b: &[BigInt],
        bounds: &[FaceBound],
        cap: Option<&Rational>,
    ) -> Option<(Rational, Vec<Rational>)> {
        let faces = self.complex.num_faces();
        let mut lp = LinearProgram::new(2 * faces, vec![int(1); 2 * faces]);
        for &e in &self.lp_rows {
            let row: Vec<(usize, Rational)> = self.matrix[e]
                .iter()
                .enumerate()
                .filter(|(_, &a)| a != 0)
                .flat_map(|(f, &a)| [(2 * f, int(a)), (2 * f + 1, int(-a))])
                .collect();
            lp.add(row, Relation::Eq, Rational::from_integer(b[e].clone()));
        }
        for bound in bounds {
            let row = vec![(2 * bound.face, int(1)), (2 * bound.face + 1, int(-1))];
            let rel = if bound.upper {
                Relation::Le
            } else {
                Relation::Ge
            };
            lp.add(row, rel, Rational::from_integer(bound.value.clone()));
        }
        if let Some(cap) = cap {
            lp.add(
                (0..2 * faces).map(|j| (j, int(1))).collect(),
                Relation::Le,
                cap.clone(),
            );
        }
        match lp.solve() {
            LpOutcome::Optimal { value, x } => {
                let diff = (0..faces).map(|f| &x[2 * f] - &x[2 * f + 1]).collect();
                Some((value, diff))
            }
            LpOutcome::Infeasible => None,
            LpOutcome::Unbounded => unreachable!("the objective is bounded below by zero"),
        }
    }

    fn branch_and_bound(&self, b: &[BigInt], start: Vec<Rational>) -> Vec<Rational> {
        let norm = |x: &[Rational]| {
            x.iter()
                .map(|c| c.abs())
                .fold(Rational::zero(), |a, c| a + c)
        };
        let mut best_value = norm(&start);
        let mut best = start;
        let mut stack: Vec<Vec<FaceBound>> = vec![Vec::new()];
        while let Some(bounds) = stack.pop() {
            // Only strictly better integral points are of interest, and the
            // objective is integral on them.
            let cap = &best_value - int(1);
            if cap.is_negative() {
                break;
            }
            let Some((value, x)) = self.solve_relaxation(b, &bounds, Some(&cap)) else {
                continue;
            };
            if value.ceil() >= best_value {
                continue;
            }
            let branch = x
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_integer())
                .map(|(f, c)| (f, c - c.floor()))
                .fold(None::<(usize, Rational)>, |acc, (f, frac)| match acc {
                    Some((_, ref best)) if *best >= frac => acc,
                    _ => Some((f, frac)),
                });
            match branch {
                None => {
                    best_value = value;
                    best = x;
                }
                Some((f, _)) => {
                    let c = &x[f];
                    let mut up = bounds.clone();
                    up.push(FaceBound {
                        face: f,
                        upper: false,
                        value: c.ceil().to_integer(),
                    });
                    let mut down = bounds;
                    down.push(FaceBound {
                        face: f,
                        upper: true,
                        value: c.floor().to_integer(),
                    });
                    stack.push(up);
                    stack.push(down);
                }
            }
        }
        best
    }
}

#[derive(Clone, Debug)]
struct FaceBound {
    face: usize,
    upper: bool,
    value: BigInt,
}

fn dense_to_chain(x: &[Rational]) -> Chain {
    let mut c = Chain::zero(2, Ring::Rat);
    for (f, v) in x.iter().enumerate() {
        c.add_term(f, v.clone());
    }
    c
}

/// `‖γ‖_{∂,K}`: least ℓ1 norm of a 2-chain over `ring` with boundary `γ`.
pub fn filling_norm(complex: &TwoComplex, gamma: &Chain, ring: Ring) -> Result<FillingResult> {
    FillingSolver::new(complex).filling_norm(gamma, ring)
}

/// Re-checks a result against its cycle: witness boundary and norm.
pub fn verify_filling(complex: &TwoComplex, gamma: &Chain, result: &FillingResult) -> bool {
    match (&result.value, &result.witness) {
        (Extended::Finite(v), Some(w)) => {
            boundary(complex, w).is_ok_and(|b| b == gamma.clone().with_ring(b.ring()))
                && l1_norm(w) == *v
                && (result.ring == Ring::Rat || w.is_integral())
        }
        (Extended::Infinite, None) => true,
        _ => false,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FvEntry {
    pub k: usize,
    pub value: Extended,
    /// A cycle of norm at most `k` attaining the supremum.
    pub witness: Chain,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FvTable {
    pub ring: Ring,
    pub entries: Vec<FvEntry>,
}

impl FvTable {
    pub fn value(&self, k: usize) -> &Extended {
        &self.entries[k].value
    }

    pub fn values(&self) -> Vec<Extended> {
        self.entries.iter().map(|e| e.value.clone()).collect()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("k\tvalue\n");
        for e in &self.entries {
            out.push_str(&format!("{}\t{}\n", e.k, e.value));
        }
        out
    }
}

/// `FV_{X,K}(k)` for `k = 0 … k_max`.
///
/// Cycles are generated from circuit sums. A cycle's own decomposition gives
/// the upper bound `Σ ‖α_i‖_∂`; cycles whose bound is below the running
/// maximum cannot change the entry and are not solved. The witness of each
/// entry is the first attaining cycle in (norm, coefficients) order.
pub fn fv(complex: &TwoComplex, k_max: usize, ring: Ring) -> FvTable {
    fv_with(&FillingSolver::new(complex), k_max, ring)
}

pub fn fv_with(solver: &FillingSolver<'_>, k_max: usize, ring: Ring) -> FvTable {
    let complex = solver.complex();
    let circuits = enumerate_circuits(complex, None, k_max).expect("no anchor");
    let signed = signed_circuit_cycles(&circuits);
    let circuit_values: Vec<Extended> = signed
        .par_iter()
        .map(|c| solver.fill_sparse(c, ring).value)
        .collect();
    let generated = generate_cycles(&signed, k_max);

    let mut entries = vec![FvEntry {
        k: 0,
        value: Extended::zero(),
        witness: Chain::zero(1, Ring::Int),
    }];
    let mut best_value = Extended::zero();
    let mut best_cycle: SparseCycle = Vec::new();
    let mut start = 1; // generated[0] is the zero cycle
    for k in 1..=k_max {
        let end = start
            + generated[start..]
                .iter()
                .take_while(|g| crate::cycles::sparse_norm(&g.cycle) == k)
                .count();
        if !best_value.is_infinite() {
            let class = &generated[start..end];
            let threshold = best_value.clone();
            let values: Vec<Option<Extended>> = class
                .par_iter()
                .map(|g| {
                    let bound = g
                        .parts
                        .iter()
                        .fold(Extended::zero(), |acc, &i| &acc + &circuit_values[i]);
                    if bound < threshold {
                        None
                    } else if g.parts.len() == 1 {
                        Some(circuit_values[g.parts[0]].clone())
                    } else {
                        Some(solver.fill_sparse(&g.cycle, ring).value)
                    }
                })
                .collect();
            for (g, v) in class.iter().zip(values) {
                if let Some(v) = v {
                    if v > best_value {
                        best_value = v;
                        best_cycle = g.cycle.clone();
                    }
                }
            }
        }
        start = end;
        entries.push(FvEntry {
            k,
            value: best_value.clone(),
            witness: sparse_to_chain(&best_cycle),
        });
    }
    FvTable { ring, entries }
}

/// Least superadditive majorant of `f(1), …, f(n)` (given as `values[0..n]`).
pub fn superadditive_closure(values: &[Extended]) -> Vec<Extended> {
    let mut closure: Vec<Extended> = Vec::with_capacity(values.len());
    for n in 1..=values.len() {
        let mut best = values[n - 1].clone();
        for j in 1..n {
            let split = &closure[j - 1] + &closure[n - j - 1];
            if split > best {
                best = split;
            }
        }
        closure.push(best);
    }
    closure
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakAreaResult {
    pub n: usize,
    pub value: Extended,
    /// Signed circuits of length ≤ N whose induced cycles sum to `γ`.
    pub expression: Vec<(Sign, Circuit)>,
}

/// Least number of signed circuits of length ≤ `n` summing to the circuit `γ`.
///
/// In a graph `H_1` is the cycle group, so this is the integral filling norm of
/// `γ` in `Ω_n(Γ)`, whose faces are exactly those circuits.
pub fn weak_area(graph: &TwoComplex, gamma: &Chain, n: usize) -> Result<WeakAreaResult> {
    if !graph.is_graph() {
        return Err(Error::HasFaces);
    }
    if Circuit::from_cycle(graph, gamma).is_none()
        || !gamma.terms().values().all(|c| c.abs() == int(1))
    {
        return Err(Error::NotACircuit);
    }
    let omega = crate::constructions::omega_n(graph, n)?;
    let result = filling_norm(&omega, gamma, Ring::Int)?;
    let mut expression = Vec::new();
    if let Some(w) = &result.witness {
        for (&f, c) in w.terms() {
            let circuit = Circuit::from_walk(&omega.face(f).walk);
            let sign = if c.is_positive() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            let copies = c.abs().to_integer().to_usize().unwrap_or(0);
            for _ in 0..copies {
                expression.push((sign, circuit.clone()));
            }
        }
    }
    Ok(WeakAreaResult {
        n,
        value: result.value,
        expression,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearityRow {
    pub k: usize,
    pub fv_int: Extended,
    pub fv_rat: Extended,
    /// `FV_ℤ(k) / FV_ℚ(k)` when both are finite and the denominator is nonzero.
    pub ratio: Option<Rational>,
}

/// Integral and rational Dehn functions side by side.
pub fn linearity_report(complex: &TwoComplex, k_max: usize) -> Vec<LinearityRow> {
    let solver = FillingSolver::new(complex);
    let z = fv_with(&solver, k_max, Ring::Int);
    let q = fv_with(&solver, k_max, Ring::Rat);
    (1..=k_max)
        .map(|k| LinearityRow {
            k,
            fv_int: z.value(k).clone(),
            fv_rat: q.value(k).clone(),
            ratio: z.value(k).ratio(q.value(k)),
        })
        .collect()
}

pub fn linearity_tsv(rows: &[LinearityRow]) -> String {
    let mut out = String::from("k\tfv_z\tfv_q\tratio\n");
    for r in rows {
        let ratio = r
            .ratio
            .as_ref()
            .map(format_rational)
            .unwrap_or_else(|| "undefined".into());
        out.push_str(&format!("{}\t{}\t{}\t{}\n", r.k, r.fv_int, r.fv_rat, ratio));
    }
    out
}

/// Parses `k<TAB>value` lines (a non-numeric header line is skipped) into
/// `f(1..n)`; keys must run 1, 2, …, n.
pub fn parse_values_tsv(text: &str) -> Result<Vec<Extended>> {
    let mut values = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != 2 {
            return Err(Error::parse(i + 1, "expected `k<TAB>value`"));
        }
        let Ok(k) = fields[0].parse::<usize>() else {
            if values.is_empty() && i == 0 {
                continue;
            }
            return Err(Error::parse(i + 1, "bad key"));
        };
        if k == 0 {
            continue;
        }
        if k != values.len() + 1 {
            return Err(Error::parse(i + 1, "keys must be consecutive from 1"));
        }
        let v = Extended::parse(fields[1])
            .filter(|v| v.is_nonnegative())
            .ok_or_else(|| Error::parse(i + 1, "values must be nonnegative rationals or inf"))?;
        values.push(v);
    }
    Ok(values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::number::rat;

    /// All integral 2-chains with ‖μ‖_1 ≤ bound, by brute force.
    fn integral_chains(faces: usize, bound: i64) -> Vec<Vec<i64>> {
        fn rec(i: usize, faces: usize, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if i == faces {
                out.push(cur.clone());
                return;
            }
            for c in -left..=left {
                cur.push(c);
                rec(i + 1, faces, left - c.abs(), cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(0, faces, bound, &mut Vec::new(), &mut out);
        out
    }

    fn exhaustive_int_filling(x: &TwoComplex, gamma: &Chain, bound: i64) -> Option<i64> {
        let m = x.boundary2_matrix();
        let target: Vec<i64> = (0..x.num_edges())
            .map(|e| gamma.coefficient(e).to_integer().to_i64().unwrap())
            .collect();
        integral_chains(x.num_faces(), bound)
            .into_iter()
            .filter(|mu| {
                (0..x.num_edges())
                    .all(|e| (0..x.num_faces()).map(|f| m[e][f] * mu[f]).sum::<i64>() == target[e])
            })
            .map(|mu| mu.iter().map(|c| c.abs()).sum())
            .min()
    }

    #[test]
    fn single_face_polygon() {
        for n in [3, 5, 8] {
            let x = families::polygon_disk(n);
            let gamma = Chain::from_ints(1, (0..n).map(|e| (e, 1)));
            let r = filling_norm(&x, &gamma, Ring::Int).unwrap();
            assert_eq!(r.value, Extended::from_int(1));
            assert_eq!(r.witness, Some(Chain::basis(2, Ring::Int, 0)));
        }
    }

    #[test]
    fn double_traversal_separates_rings() {
        let x = families::double_traversal();
        let e = Chain::from_ints(1, [(0, 1)]);
        let q = filling_norm(&x, &e, Ring::Rat).unwrap();
        assert_eq!(q.value, Extended::Finite(rat(1, 2)));
        assert_eq!(q.witness.as_ref().unwrap().coefficient(0), rat(1, 2));
        assert!(verify_filling(&x, &e, &q));
        let z = filling_norm(&x, &e, Ring::Int).unwrap();
        assert_eq!(z.value, Extended::Infinite);
        assert_eq!(z.certificate, Certificate::IntegrallyInfeasible);
        let two = Chain::from_ints(1, [(0, 2)]);
        assert_eq!(
            filling_norm(&x, &two, Ring::Int).unwrap().value,
            Extended::from_int(1)
        );
    }

    #[test]
    fn tetrahedron_triangle_against_exhaustive_oracle() {
        let x = families::tetrahedron();
        let solver = FillingSolver::new(&x);
        assert_eq!(solver.kernel_rank(), 1);
        for c in enumerate_circuits(&x, None, 4).unwrap() {
            let gamma = c.to_chain();
            let r = solver.filling_norm(&gamma, Ring::Int).unwrap();
            assert!(verify_filling(&x, &gamma, &r));
            let oracle = exhaustive_int_filling(&x, &gamma, 4).unwrap();
            assert_eq!(r.value, Extended::from_int(oracle));
        }
        let tri = enumerate_circuits(&x, None, 3).unwrap()[0].to_chain();
        assert_eq!(
            solver.filling_norm(&tri, Ring::Int).unwrap().value,
            Extended::from_int(1)
        );
    }

    #[test]
    fn branch_and_bound_matches_brute_force_on_small_complexes() {
        for (name, x) in families::named_complexes() {
            if x.num_faces() == 0 || x.num_faces() > 6 {
                continue;
            }
            let solver = FillingSolver::new(&x);
            for gamma in crate::cycles::enumerate_cycles(&x, 5) {
                let r = solver.filling_norm(&gamma, Ring::Int).unwrap();
                assert!(verify_filling(&x, &gamma, &r), "{name}");
                let oracle = exhaustive_int_filling(&x, &gamma, 5);
                match (&r.value, oracle) {
                    (Extended::Finite(v), Some(o)) if v <= &int(5) => assert_eq!(*v, int(o)),
                    (Extended::Finite(v), None) => assert!(v > &int(5), "{name}"),
                    (Extended::Infinite, None) => {}
                    (v, o) => panic!("{name}: solver {v}, oracle {o:?}"),
                }
                let q = solver.filling_norm(&gamma, Ring::Rat).unwrap();
                assert!(verify_filling(&x, &gamma, &q));
                assert!(q.value <= r.value, "{name}");
            }
        }
    }

    fn tetrahedron_with_doubled_face() -> TwoComplex {
        let mut raw = families::tetrahedron().to_raw();
        let walk = raw.faces[0].1.clone();
        raw.face_signed("f123b", walk);
        crate::complex::validate(&raw).unwrap()
    }

    #[test]
    fn line_search_agrees_with_the_general_solver() {
        for (name, x) in families::named_complexes()
            .into_iter()
            .chain([("octahedron", families::octahedron())])
        {
            let solver = FillingSolver::new(&x);
            if solver.kernel_rank() != 1 {
                continue;
            }
            for gamma in crate::cycles::enumerate_cycles(&x, 6) {
                let sparse = gamma.to_ints().unwrap();
                for ring in [Ring::Int, Ring::Rat] {
                    let fast = solver.compute(&sparse, ring, true);
                    let general = solver.compute(&sparse, ring, false);
                    assert_eq!(fast.value, general.value, "{name} {ring:?}");
                    assert!(verify_filling(&x, &gamma, &general));
                }
            }
        }
    }

    #[test]
    fn rank_two_kernel_against_exhaustive_oracle() {
        let x = tetrahedron_with_doubled_face();
        let solver = FillingSolver::new(&x);
        assert_eq!(solver.kernel_rank(), 2);
        for gamma in crate::cycles::enumerate_cycles(&x, 6) {
            let r = solver.filling_norm(&gamma, Ring::Int).unwrap();
            assert!(verify_filling(&x, &gamma, &r));
            let oracle = exhaustive_int_filling(&x, &gamma, 4).unwrap();
            assert_eq!(r.value, Extended::from_int(oracle));
        }
    }

    #[test]
    fn rational_filling_is_homogeneous() {
        let x = families::tetrahedron();
        let solver = FillingSolver::new(&x);
        for c in enumerate_circuits(&x, None, 4).unwrap() {
            let g = c.to_chain();
            let base = solver.filling_norm(&g, Ring::Rat).unwrap().value;
            for m in [-3i64, -1, 2, 5] {
                let scaled = solver
                    .filling_norm(&g.scale(&int(m)), Ring::Rat)
                    .unwrap()
                    .value;
                assert_eq!(scaled, base.mul_int(m.unsigned_abs() as usize));
            }
        }
    }

    #[test]
    fn tetrahedron_fv_table() {
        let x = families::tetrahedron();
        let z = fv(&x, 6, Ring::Int);
        // A 4-circuit needs the two triangles on either side of a diagonal.
        let expected = [0, 0, 0, 1, 2, 2, 2];
        for (k, &v) in expected.iter().enumerate() {
            assert_eq!(z.value(k), &Extended::from_int(v), "k = {k}");
        }
        let q = fv(&x, 6, Ring::Rat);
        for k in 0..=6 {
            assert!(q.value(k) <= z.value(k));
        }
        assert!(z.to_tsv().ends_with("6\t2\n"));
    }

    #[test]
    fn double_traversal_fv() {
        let x = families::double_traversal();
        assert_eq!(fv(&x, 1, Ring::Int).value(1), &Extended::Infinite);
        assert_eq!(fv(&x, 1, Ring::Rat).value(1), &Extended::Finite(rat(1, 2)));
        assert_eq!(fv(&x, 0, Ring::Int).value(0), &Extended::zero());
    }

    #[test]
    fn fv_witnesses_attain_their_entries() {
        for (name, x) in families::named_complexes() {
            let solver = FillingSolver::new(&x);
            for ring in [Ring::Int, Ring::Rat] {
                let t = fv_with(&solver, 5, ring);
                for w in t.entries.windows(2) {
                    assert!(w[0].value <= w[1].value, "{name}");
                }
                for e in &t.entries {
                    let v = solver.filling_norm(&e.witness, ring).unwrap().value;
                    assert_eq!(v, e.value, "{name} k={}", e.k);
                    assert!(l1_norm(&e.witness) <= int(e.k as i64));
                }
            }
        }
    }

    #[test]
    fn superadditive_examples() {
        let five: Vec<Extended> = (1..=10).map(|n| Extended::from_int(5 * n)).collect();
        assert_eq!(superadditive_closure(&five), five);
        let f: Vec<Extended> = [1, 1, 3].iter().map(|&v| Extended::from_int(v)).collect();
        let expected: Vec<Extended> = [1, 2, 3].iter().map(|&v| Extended::from_int(v)).collect();
        assert_eq!(superadditive_closure(&f), expected);
        let zeros = vec![Extended::zero(); 3];
        assert_eq!(superadditive_closure(&zeros), zeros);
    }

    #[test]
    fn weak_area_examples() {
        let tri = families::cycle_graph(3);
        let g = Chain::from_ints(1, [(0, 1), (1, 1), (2, 1)]);
        assert_eq!(weak_area(&tri, &g, 3).unwrap().value, Extended::from_int(1));

        let hex = families::hexagon_with_chord();
        let gamma = Chain::from_ints(1, (0..6).map(|e| (e, 1)));
        let r = weak_area(&hex, &gamma, 4).unwrap();
        assert_eq!(r.value, Extended::from_int(2));
        assert_eq!(r.expression.len(), 2);
        assert!(r.expression.iter().all(|(_, c)| c.len() == 4));
        let total = r
            .expression
            .iter()
            .fold(Chain::zero(1, Ring::Int), |acc, (s, c)| {
                acc.add(&c.to_chain().scale(&int(s.as_i64())))
            });
        assert_eq!(total, gamma);

        let plain = families::cycle_graph(6);
        assert_eq!(
            weak_area(&plain, &gamma, 5).unwrap().value,
            Extended::Infinite
        );
        assert!(matches!(
            weak_area(&families::triangle_disk(), &g, 3),
            Err(Error::HasFaces)
        ));
        assert!(matches!(
            weak_area(&tri, &g.scale(&int(2)), 3),
            Err(Error::NotACircuit)
        ));
    }

    #[test]
    fn linearity_examples() {
        let rows = linearity_report(&families::tetrahedron(), 3);
        let last = rows.last().unwrap();
        assert_eq!(
            (last.k, &last.fv_int, &last.fv_rat, &last.ratio),
            (
                3,
                &Extended::from_int(1),
                &Extended::from_int(1),
                &Some(int(1))
            )
        );
        let rows = linearity_report(&families::double_traversal(), 1);
        assert_eq!(rows[0].fv_int, Extended::Infinite);
        assert_eq!(rows[0].fv_rat, Extended::Finite(rat(1, 2)));
        assert_eq!(rows[0].ratio, None);
        let rows = linearity_report(&families::cycle_graph(4), 4);
        assert_eq!(rows[3].fv_int, Extended::Infinite);
        assert_eq!(rows[3].fv_rat, Extended::Infinite);
        assert!(linearity_tsv(&rows).contains("4\tinf\tinf\tundefined"));
    }

    #[test]
    fn values_tsv_parsing() {
        let v = parse_values_tsv("k\tvalue\n1\t1\n2\t1/2\n3\tinf\n").unwrap();
        assert_eq!(
            v,
            vec![
                Extended::from_int(1),
                Extended::Finite(rat(1, 2)),
                Extended::Infinite
            ]
        );
        assert!(parse_values_tsv("1\t1\n3\t2\n").is_err());
        assert!(parse_values_tsv("1\t-1\n").is_err());
    }
}
