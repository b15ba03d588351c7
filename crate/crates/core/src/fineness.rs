//! Special 2-chains and bounded-scale fineness certificates.
//!
//! A special 2-chain based at `e` is `μ = Σ ε_i f_i` with `‖μ‖_1 = n`, `∂f_1`
//! meeting `e`, and each `∂f_{k+1}` meeting the boundary of the previous
//! partial sum. Faces may repeat with the same sign; opposite signs would
//! cancel and break `‖μ‖_1 = n`.
//!
//! Whether `f` may be appended depends only on the chain built so far, not on
//! the order it was built in, so the search runs level by level over chains.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::chain::{is_disjoint, Chain, Ring};
use crate::complex::{EdgeId, FaceId, Sign, TwoComplex};
use crate::cycles::{enumerate_circuits, is_circuit_chain, Circuit};
use crate::error::{Error, Result};
use crate::filling::{fv, FillingSolver};
use crate::number::{int, Extended};

pub const DEFAULT_BUDGET: usize = 10_000_000;

/// A special chain with one ordering that witnesses it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialChainState {
    pub base: EdgeId,
    pub ordering: Vec<(FaceId, Sign)>,
    pub chain: Chain,
    pub boundary: Chain,
}

impl SpecialChainState {
    pub fn norm(&self) -> usize {
        self.ordering.len()
    }

    /// `∂(Σ_{i≤k} ε_i f_i)` for `k = 1 … n`.
    pub fn running_boundaries(&self, complex: &TwoComplex) -> Vec<Chain> {
        prefix_boundaries(complex, &self.ordering)
    }
}

fn face_chain(complex: &TwoComplex, f: FaceId, s: Sign) -> Chain {
    Chain::from_ints(
        1,
        complex
            .face_boundary(f)
            .iter()
            .map(|&(e, c)| (e, c * s.as_i64())),
    )
}

fn prefix_boundaries(complex: &TwoComplex, ordering: &[(FaceId, Sign)]) -> Vec<Chain> {
    let mut acc = Chain::zero(1, Ring::Int);
    ordering
        .iter()
        .map(|&(f, s)| {
            acc = acc.add(&face_chain(complex, f, s));
            acc.clone()
        })
        .collect()
}

/// Checks the three clauses of the definition for an explicit ordering.
pub fn is_special_ordering(
    complex: &TwoComplex,
    base: EdgeId,
    ordering: &[(FaceId, Sign)],
) -> bool {
    let Some(&(f1, _)) = ordering.first() else {
        return false;
    };
    let mut chain = Chain::zero(2, Ring::Int);
    for &(f, s) in ordering {
        chain.add_term(f, int(s.as_i64()));
    }
    if crate::complex::l1_norm(&chain) != int(ordering.len() as i64) {
        return false;
    }
    let e = Chain::basis(1, Ring::Int, base);
    if is_disjoint(&e, &face_chain(complex, f1, Sign::Plus)) {
        return false;
    }
    let prefixes = prefix_boundaries(complex, ordering);
    ordering[1..]
        .iter()
        .zip(&prefixes)
        .all(|(&(f, _), prev)| !is_disjoint(prev, &face_chain(complex, f, Sign::Plus)))
}

/// Every special 2-chain based at `e` with norm at most `n`, one per chain,
/// sorted by norm and then by chain. Fails with `BudgetExceeded` once more
/// than `budget` chains have been generated.
pub fn enumerate_special_chains(
    complex: &TwoComplex,
    e: EdgeId,
    n: usize,
    budget: usize,
) -> Result<Vec<SpecialChainState>> {
    if e >= complex.num_edges() {
        return Err(Error::UnknownEdge(e.to_string()));
    }
    let mut out: Vec<SpecialChainState> = Vec::new();
    let mut level: Vec<SpecialChainState> = Vec::new();
    for &f in complex.faces_meeting_edge(e) {
        for s in [Sign::Plus, Sign::Minus] {
            level.push(SpecialChainState {
                base: e,
                ordering: vec![(f, s)],
                chain: Chain::from_ints(2, [(f, s.as_i64())]),
                boundary: face_chain(complex, f, s),
            });
        }
    }
    level.sort_by(|a, b| a.chain.cmp(&b.chain));
    level.dedup_by(|a, b| a.chain == b.chain);
    let mut generated = level.len();
    for depth in 1..=n {
        if level.is_empty() {
            break;
        }
        if generated > budget {
            return Err(Error::BudgetExceeded { budget });
        }
        if depth == n {
            out.append(&mut level);
            break;
        }
        let children: Vec<Vec<SpecialChainState>> = level
            .par_iter()
            .map(|state| extensions(complex, state))
            .collect();
        out.append(&mut level);
        let mut next: BTreeMap<Chain, SpecialChainState> = BTreeMap::new();
        for list in children {
            for child in list {
                generated += 1;
                next.entry(child.chain.clone()).or_insert(child);
            }
            if generated > budget {
                return Err(Error::BudgetExceeded { budget });
            }
        }
        level = next.into_values().collect();
    }
    Ok(out)
}

fn extensions(complex: &TwoComplex, state: &SpecialChainState) -> Vec<SpecialChainState> {
    let mut faces: Vec<FaceId> = state
        .boundary
        .support()
        .flat_map(|edge| complex.faces_meeting_edge(edge).iter().copied())
        .collect();
    faces.sort_unstable();
    faces.dedup();
    let mut out = Vec::new();
    for f in faces {
        let current = state.chain.coefficient(f);
        for s in [Sign::Plus, Sign::Minus] {
            if !current.is_zero() && current.is_positive() != (s == Sign::Plus) {
                continue;
            }
            let mut chain = state.chain.clone();
            chain.add_term(f, int(s.as_i64()));
            let mut ordering = state.ordering.clone();
            ordering.push((f, s));
            out.push(SpecialChainState {
                base: state.base,
                ordering,
                chain,
                boundary: state.boundary.add(&face_chain(complex, f, s)),
            });
        }
    }
    out
}

/// The circuits through `e` of length at most `l` that arise as boundaries of
/// special chains of norm at most `FV_ℤ(l)`.
pub fn circuits_via_fillings(
    complex: &TwoComplex,
    e: EdgeId,
    l: usize,
    budget: usize,
) -> Result<Vec<Circuit>> {
    if e >= complex.num_edges() {
        return Err(Error::UnknownEdge(e.to_string()));
    }
    let table = fv(complex, l, Ring::Int);
    let bound = match table.value(l) {
        Extended::Infinite => return Err(Error::FvInfinite(l)),
        Extended::Finite(v) => v.to_integer().to_usize().expect("small bound"),
    };
    circuits_from_special_chains(complex, e, l, bound, budget)
}

pub(crate) fn circuits_from_special_chains(
    complex: &TwoComplex,
    e: EdgeId,
    l: usize,
    bound: usize,
    budget: usize,
) -> Result<Vec<Circuit>> {
    let mut found = std::collections::BTreeSet::new();
    if bound > 0 {
        for state in enumerate_special_chains(complex, e, bound, budget)? {
            let b = &state.boundary;
            if b.support_len() <= l && !b.coefficient(e).is_zero() && is_circuit_chain(complex, b) {
                found.insert(
                    Circuit::from_cycle(complex, b)
                        .expect("circuit")
                        .canonical_form(),
                );
            }
        }
    }
    let mut list: Vec<Circuit> = found.into_iter().collect();
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(list)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    GraphSearch,
    SpecialChain,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::GraphSearch => "GRAPH_SEARCH",
            Method::SpecialChain => "SPECIAL_CHAIN",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeRecord {
    pub edge: EdgeId,
    pub count: usize,
    pub circuits: Vec<Circuit>,
    /// False when the special-chain search ran out of budget for this edge.
    pub complete: bool,
    /// For special-chain records: whether the list equals direct graph search.
    pub agrees_with_graph_search: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinenessCertificate {
    pub scale: usize,
    pub method: Method,
    pub records: Vec<EdgeRecord>,
    pub exact: bool,
}

impl FinenessCertificate {
    pub fn to_tsv(&self, complex: &TwoComplex) -> String {
        let mut out = String::from("edge\tmethod\tL\tcount\tstatus\n");
        for r in &self.records {
            let status = if r.complete { "COMPLETE" } else { "INCOMPLETE" };
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                complex.edge(r.edge).id,
                self.method,
                self.scale,
                r.count,
                status
            ));
            for c in &r.circuits {
                out.push_str(&format!("circuit\t{}\n", c.display(complex)));
            }
        }
        out
    }
}

pub fn fineness_certificate(
    complex: &TwoComplex,
    l: usize,
    method: Method,
    budget: usize,
) -> Result<FinenessCertificate> {
    let graph_lists: Vec<Vec<Circuit>> = (0..complex.num_edges())
        .map(|e| enumerate_circuits(complex, Some(e), l))
        .collect::<Result<_>>()?;
    let records = match method {
        Method::GraphSearch => graph_lists
            .into_iter()
            .enumerate()
            .map(|(edge, circuits)| EdgeRecord {
                edge,
                count: circuits.len(),
                circuits,
                complete: true,
                agrees_with_graph_search: None,
            })
            .collect(),
        Method::SpecialChain => {
            let bound = match fv(complex, l, Ring::Int).value(l) {
                Extended::Infinite => return Err(Error::FvInfinite(l)),
                Extended::Finite(v) => v.to_integer().to_usize().expect("small bound"),
            };
            let mut records = Vec::new();
            for (edge, direct) in graph_lists.into_iter().enumerate() {
                match circuits_from_special_chains(complex, edge, l, bound, budget) {
                    Ok(circuits) => records.push(EdgeRecord {
                        edge,
                        count: circuits.len(),
                        agrees_with_graph_search: Some(circuits == direct),
                        circuits,
                        complete: true,
                    }),
                    Err(Error::BudgetExceeded { .. }) => records.push(EdgeRecord {
                        edge,
                        count: 0,
                        circuits: Vec::new(),
                        complete: false,
                        agrees_with_graph_search: None,
                    }),
                    Err(other) => return Err(other),
                }
            }
            records
        }
    };
    let exact = records.iter().all(|r: &EdgeRecord| r.complete);
    Ok(FinenessCertificate {
        scale: l,
        method,
        records,
        exact,
    })
}

/// All integral 2-chains `μ` with `∂μ = γ` and `‖μ‖_1 = norm`, sorted.
pub fn integral_fillings_of_norm(complex: &TwoComplex, gamma: &Chain, norm: usize) -> Vec<Chain> {
    let faces = complex.num_faces();
    let edges = complex.num_edges();
    // Edges whose residual is final once all faces up to an index are fixed.
    let mut closes_at: Vec<Vec<EdgeId>> = vec![Vec::new(); faces + 1];
    for e in 0..edges {
        let last = complex
            .faces_meeting_edge(e)
            .iter()
            .max()
            .map_or(0, |&f| f + 1);
        closes_at[last].push(e);
    }
    let mut residual: Vec<i64> = (0..edges)
        .map(|e| {
            gamma
                .coefficient(e)
                .to_integer()
                .to_i64()
                .expect("small coefficients")
        })
        .collect();
    if closes_at[0].iter().any(|&e| residual[e] != 0) {
        return Vec::new();
    }
    let max_walk = complex
        .faces()
        .iter()
        .map(|f| f.walk.len() as i64)
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    let mut coeffs = vec![0i64; faces];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        complex: &TwoComplex,
        f: usize,
        left: i64,
        max_walk: i64,
        closes_at: &[Vec<EdgeId>],
        residual: &mut Vec<i64>,
        coeffs: &mut Vec<i64>,
        out: &mut Vec<Chain>,
    ) {
        let faces = coeffs.len();
        let r_norm: i64 = residual.iter().map(|c| c.abs()).sum();
        if r_norm > left * max_walk {
            return;
        }
        if f == faces {
            if left == 0 && r_norm == 0 {
                out.push(Chain::from_ints(2, coeffs.iter().copied().enumerate()));
            }
            return;
        }
        for c in -left..=left {
            for &(e, a) in complex.face_boundary(f) {
                residual[e] -= a * c;
            }
            if closes_at[f + 1].iter().all(|&e| residual[e] == 0) {
                coeffs[f] = c;
                rec(
                    complex,
                    f + 1,
                    left - c.abs(),
                    max_walk,
                    closes_at,
                    residual,
                    coeffs,
                    out,
                );
                coeffs[f] = 0;
            }
            for &(e, a) in complex.face_boundary(f) {
                residual[e] += a * c;
            }
        }
    }
    rec(
        complex,
        0,
        norm as i64,
        max_walk,
        &closes_at,
        &mut residual,
        &mut coeffs,
        &mut out,
    );
    out.sort();
    out
}

/// Searches for a special ordering of an integral 2-chain based at `e`.
pub fn special_ordering(complex: &TwoComplex, e: EdgeId, mu: &Chain) -> Option<FaceOrdering> {
    let mut remaining: Vec<(FaceId, Sign, i64)> = mu
        .terms()
        .iter()
        .map(|(&f, c)| {
            let sign = if c.is_positive() {
                Sign::Plus
            } else {
                Sign::Minus
            };
            (
                f,
                sign,
                c.abs().to_integer().to_i64().expect("small coefficients"),
            )
        })
        .collect();
    let total: i64 = remaining.iter().map(|r| r.2).sum();
    let mut ordering = Vec::new();

    fn rec(
        complex: &TwoComplex,
        e: EdgeId,
        total: usize,
        current: &Chain,
        remaining: &mut Vec<(FaceId, Sign, i64)>,
        ordering: &mut Vec<(FaceId, Sign)>,
    ) -> bool {
        if ordering.len() == total {
            return true;
        }
        for i in 0..remaining.len() {
            let (f, s, count) = remaining[i];
            if count == 0 {
                continue;
            }
            let meets = if ordering.is_empty() {
                complex.face_boundary(f).iter().any(|&(x, _)| x == e)
            } else {
                complex
                    .face_boundary(f)
                    .iter()
                    .any(|&(x, _)| !current.coefficient(x).is_zero())
            };
            if !meets {
                continue;
            }
            remaining[i].2 -= 1;
            ordering.push((f, s));
            let next = current.add(&face_chain(complex, f, s));
            if rec(complex, e, total, &next, remaining, ordering) {
                return true;
            }
            ordering.pop();
            remaining[i].2 += 1;
        }
        false
    }
    let ok = rec(
        complex,
        e,
        total as usize,
        &Chain::zero(1, Ring::Int),
        &mut remaining,
        &mut ordering,
    );
    ok.then_some(ordering)
}

/// Signed faces in the order they are added.
pub type FaceOrdering = Vec<(FaceId, Sign)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialFillingCheck {
    pub holds: bool,
    /// Every minimal integral filling with the ordering found for it, if any.
    pub fillings: Vec<(Chain, Option<FaceOrdering>)>,
}

impl SpecialFillingCheck {
    pub fn counterexample(&self) -> Option<&Chain> {
        self.fillings
            .iter()
            .find(|(_, o)| o.is_none())
            .map(|(c, _)| c)
    }
}

/// Enumerates every minimal integral filling of the circuit `γ` and looks for
/// a special ordering based at `e` for each.
pub fn check_minimal_fillings_special(
    complex: &TwoComplex,
    gamma: &Chain,
    e: EdgeId,
) -> Result<SpecialFillingCheck> {
    if !is_circuit_chain(complex, gamma) {
        return Err(Error::NotACircuit);
    }
    if gamma.coefficient(e).is_zero() {
        return Err(Error::UnknownEdge(complex.edge(e).id.clone()));
    }
    let solver = FillingSolver::new(complex);
    let value = solver.filling_norm(gamma, Ring::Int)?.value;
    let Extended::Finite(v) = value else {
        return Err(Error::FillingInfinite);
    };
    let norm = v.to_integer().to_usize().expect("small norm");
    let fillings: Vec<(Chain, Option<FaceOrdering>)> =
        integral_fillings_of_norm(complex, gamma, norm)
            .into_iter()
            .map(|mu| {
                let ordering = special_ordering(complex, e, &mu);
                if let Some(o) = &ordering {
                    assert!(is_special_ordering(complex, e, o));
                }
                (mu, ordering)
            })
            .collect();
    let holds = !fillings.is_empty() && fillings.iter().all(|(_, o)| o.is_some());
    Ok(SpecialFillingCheck { holds, fillings })
}

/// `(2F_e)·(2F_adj)^{n−1}`: faces meeting `e`, and the maximum number of faces
/// meeting any single edge.
pub fn naive_special_chain_bound(complex: &TwoComplex, e: EdgeId, n: usize) -> BigInt {
    let f_e = complex.faces_meeting_edge(e).len();
    let f_adj = (0..complex.num_edges())
        .map(|x| complex.faces_meeting_edge(x).len())
        .max()
        .unwrap_or(0);
    BigInt::from(2 * f_e) * BigInt::from(2 * f_adj).pow(n.saturating_sub(1) as u32)
}

/// A bound that holds for the search as run: a chain of norm `k` has at most
/// `k·W` boundary edges (`W` the longest walk), each meeting at most `F_adj`
/// faces, and each face can be added with two signs.
pub fn special_chain_bound(complex: &TwoComplex, e: EdgeId, n: usize) -> BigInt {
    let f_e = complex.faces_meeting_edge(e).len();
    let f_adj = (0..complex.num_edges())
        .map(|x| complex.faces_meeting_edge(x).len())
        .max()
        .unwrap_or(0);
    let w = complex
        .faces()
        .iter()
        .map(|f| f.walk.len())
        .max()
        .unwrap_or(0);
    let mut bound = BigInt::from(2 * f_e);
    for k in 1..n {
        bound *= BigInt::from(2 * f_adj * k * w);
    }
    bound
}

/// Counts chains of each norm `1..=n` in an enumeration.
pub fn counts_by_norm(states: &[SpecialChainState], n: usize) -> Vec<usize> {
    let mut counts = vec![0; n + 1];
    for s in states {
        counts[s.norm()] += 1;
    }
    counts
}

#[cfg(test)]
fn boundary_of(complex: &TwoComplex, chain: &Chain) -> Chain {
    crate::complex::boundary(complex, chain).expect("cells of the complex")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::homology::homology_h1;

    #[test]
    fn single_triangle_chains() {
        let x = families::triangle_disk();
        let chains = enumerate_special_chains(&x, 0, 1, DEFAULT_BUDGET).unwrap();
        let keys: Vec<Chain> = chains.iter().map(|s| s.chain.clone()).collect();
        assert_eq!(
            keys,
            vec![
                Chain::from_ints(2, [(0, -1)]),
                Chain::from_ints(2, [(0, 1)])
            ]
        );
    }

    #[test]
    fn tetrahedron_norm_one() {
        let x = families::tetrahedron();
        for e in 0..x.num_edges() {
            let chains = enumerate_special_chains(&x, e, 1, DEFAULT_BUDGET).unwrap();
            assert_eq!(chains.len(), 4);
        }
    }

    #[test]
    fn unreachable_face_never_appears() {
        // Two triangles joined by a path: faces of the far triangle are never
        // special at the near triangle's edges.
        let mut raw = crate::complex::RawComplex::new();
        for v in ["a", "b", "c", "d", "x", "y"] {
            raw.vertex(v);
        }
        raw.edge("e1", "a", "b")
            .edge("e2", "b", "c")
            .edge("e3", "c", "a");
        raw.edge("p", "c", "d");
        raw.edge("g1", "d", "x")
            .edge("g2", "x", "y")
            .edge("g3", "y", "d");
        raw.face("f", &["+e1", "+e2", "+e3"]);
        raw.face("g", &["+g1", "+g2", "+g3"]);
        let x = crate::complex::validate(&raw).unwrap();
        let chains = enumerate_special_chains(&x, 0, 5, DEFAULT_BUDGET).unwrap();
        assert!(!chains.is_empty());
        assert!(chains.iter().all(|s| s.chain.coefficient(1).is_zero()));
    }

    #[test]
    fn emitted_orderings_are_special_with_special_prefixes() {
        for (name, x) in families::named_complexes() {
            for e in 0..x.num_edges() {
                for s in enumerate_special_chains(&x, e, 3, DEFAULT_BUDGET).unwrap() {
                    for k in 1..=s.ordering.len() {
                        assert!(is_special_ordering(&x, e, &s.ordering[..k]), "{name}");
                    }
                    assert_eq!(boundary_of(&x, &s.chain), s.boundary);
                    assert!(special_chain_bound(&x, e, 3) >= BigInt::from(1));
                }
            }
        }
    }

    #[test]
    fn budget_is_reported() {
        let x = families::tetrahedron();
        assert!(matches!(
            enumerate_special_chains(&x, 0, 4, 10),
            Err(Error::BudgetExceeded { budget: 10 })
        ));
    }

    #[test]
    fn tetrahedron_circuits_via_fillings() {
        let x = families::tetrahedron();
        for e in 0..x.num_edges() {
            let via = circuits_via_fillings(&x, e, 3, DEFAULT_BUDGET).unwrap();
            assert_eq!(via.len(), 2);
            assert_eq!(via, enumerate_circuits(&x, Some(e), 3).unwrap());
        }
        let t = families::triangle_disk();
        assert_eq!(
            circuits_via_fillings(&t, 0, 3, DEFAULT_BUDGET)
                .unwrap()
                .len(),
            1
        );
        let d = families::double_traversal();
        assert!(matches!(
            circuits_via_fillings(&d, 0, 1, DEFAULT_BUDGET),
            Err(Error::FvInfinite(1))
        ));
    }

    #[test]
    fn certificates() {
        let x = families::tetrahedron();
        for m in [Method::GraphSearch, Method::SpecialChain] {
            let c = fineness_certificate(&x, 3, m, DEFAULT_BUDGET).unwrap();
            assert!(c.exact);
            assert!(c.records.iter().all(|r| r.count == 2));
        }
        let k4 = families::complete_graph(4);
        let c = fineness_certificate(&k4, 3, Method::GraphSearch, DEFAULT_BUDGET).unwrap();
        assert!(c.records.iter().all(|r| r.count == 2));
        let tsv = c.to_tsv(&k4);
        assert!(tsv.starts_with("edge\tmethod\tL\tcount\tstatus\n"));
        let tree = families::path_graph(6);
        let c = fineness_certificate(&tree, 7, Method::GraphSearch, DEFAULT_BUDGET).unwrap();
        assert!(c.records.iter().all(|r| r.count == 0));
    }

    #[test]
    fn minimal_fillings_are_special() {
        let t = families::triangle_disk();
        let g = Chain::from_ints(1, [(0, 1), (1, 1), (2, 1)]);
        let r = check_minimal_fillings_special(&t, &g, 0).unwrap();
        assert!(r.holds);
        assert_eq!(r.fillings.len(), 1);

        let x = families::tetrahedron();
        assert!(homology_h1(&x).is_trivial());
        let tri = enumerate_circuits(&x, Some(0), 3).unwrap()[0].to_chain();
        let r = check_minimal_fillings_special(&x, &tri, 0).unwrap();
        assert!(r.holds);
        assert_eq!(r.fillings.len(), 1);
        // Norm 3 fillings: the complement of the face.
        assert_eq!(integral_fillings_of_norm(&x, &tri, 3).len(), 1);

        let d = families::double_traversal();
        assert!(matches!(
            check_minimal_fillings_special(&d, &Chain::from_ints(1, [(0, 1)]), 0),
            Err(Error::FillingInfinite)
        ));
    }
}
