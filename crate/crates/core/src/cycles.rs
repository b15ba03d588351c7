//! Cycles, circuits and their enumeration.
//!
//! A circuit is a closed edge path whose vertices are pairwise distinct apart
//! from the closing return. Circuits are identified up to starting point and
//! direction through [`Circuit::key`]; integral 1-cycles of bounded norm are
//! generated as sums of circuits with no cancellation, which reaches every
//! cycle because each one splits into circuits whose norms add up.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;

use crate::chain::{Chain, Ring};
use crate::complex::{boundary, EdgeId, SignedEdge, TwoComplex, VertexId};
use crate::error::{Error, Result};
use crate::number::int;

/// Sparse integral 1-chain sorted by edge.
pub(crate) type SparseCycle = Vec<(EdgeId, i64)>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Circuit {
    walk: Vec<SignedEdge>,
}

fn least_rotation(seq: &[SignedEdge]) -> Vec<SignedEdge> {
    let n = seq.len();
    (0..n)
        .map(|r| {
            seq[r..]
                .iter()
                .chain(&seq[..r])
                .copied()
                .collect::<Vec<_>>()
        })
        .min()
        .unwrap_or_default()
}

fn reversed_walk(seq: &[SignedEdge]) -> Vec<SignedEdge> {
    seq.iter().rev().map(|s| s.reversed()).collect()
}

/// Least rotation over both traversal directions of a closed walk.
pub fn canonical_walk(seq: &[SignedEdge]) -> Vec<SignedEdge> {
    least_rotation(seq).min(least_rotation(&reversed_walk(seq)))
}

impl Circuit {
    /// Oriented circuit from a closed walk, normalized by rotation only.
    pub fn from_walk(walk: &[SignedEdge]) -> Circuit {
        Circuit {
            walk: least_rotation(walk),
        }
    }

    fn canonical(walk: &[SignedEdge]) -> Circuit {
        Circuit {
            walk: canonical_walk(walk),
        }
    }

    pub fn walk(&self) -> &[SignedEdge] {
        &self.walk
    }

    pub fn len(&self) -> usize {
        self.walk.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walk.is_empty()
    }

    /// The representative of this circuit that enumeration reports.
    pub fn canonical_form(&self) -> Circuit {
        Circuit::canonical(&self.walk)
    }

    /// Identity up to rotation and reversal.
    pub fn key(&self) -> Vec<SignedEdge> {
        canonical_walk(&self.walk)
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        self.walk.iter().any(|s| s.edge == e)
    }

    /// The 1-cycle induced by the circuit in its stored direction.
    pub fn to_chain(&self) -> Chain {
        Chain::from_ints(1, self.walk.iter().map(|s| (s.edge, s.sign.as_i64())))
    }

    pub fn reversed(&self) -> Circuit {
        Circuit::from_walk(&reversed_walk(&self.walk))
    }

    /// Recovers the circuit inducing `chain`, if there is one.
    pub fn from_cycle(complex: &TwoComplex, chain: &Chain) -> Option<Circuit> {
        if chain.is_zero() || !chain.is_integral() || !is_cycle(complex, chain) {
            return None;
        }
        let parts = decompose_into_circuits(complex, chain).ok()?;
        if parts.len() != 1 {
            return None;
        }
        let walk = trace_circuit_walk(complex, &parts[0])?;
        Some(Circuit::from_walk(&walk))
    }

    pub fn display(&self, complex: &TwoComplex) -> String {
        self.walk
            .iter()
            .map(|s| format!("{}{}", s.sign.symbol(), complex.edge(s.edge).id))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Vertices in traversal order, without the closing repeat.
    pub fn vertices(&self, complex: &TwoComplex) -> Vec<VertexId> {
        self.walk.iter().map(|&s| complex.endpoints(s).0).collect()
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.walk.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// True iff `∂γ = 0`.
pub fn is_cycle(complex: &TwoComplex, chain: &Chain) -> bool {
    chain.dim() == 1 && boundary(complex, chain).is_ok_and(|b| b.is_zero())
}

/// Circuits of length at most `max_len`, each once, sorted by length then key.
/// With an anchor only circuits through that edge are produced.
pub fn enumerate_circuits(
    complex: &TwoComplex,
    anchor: Option<EdgeId>,
    max_len: usize,
) -> Result<Vec<Circuit>> {
    if let Some(e) = anchor {
        if e >= complex.num_edges() {
            return Err(Error::UnknownEdge(format!("#{e}")));
        }
    }
    if max_len == 0 {
        return Ok(Vec::new());
    }
    let adj = complex.adjacency();
    let mut found = BTreeSet::new();
    match anchor {
        Some(e) => {
            let edge = complex.edge(e);
            if edge.is_loop() {
                found.insert(Circuit::canonical(&[SignedEdge::plus(e)]));
            } else {
                let mut on_path = vec![false; complex.num_vertices()];
                on_path[edge.tail] = true;
                on_path[edge.head] = true;
                let mut path = vec![SignedEdge::plus(e)];
                anchored_search(
                    &adj,
                    edge.tail,
                    edge.head,
                    max_len,
                    &mut path,
                    &mut on_path,
                    &mut found,
                );
            }
        }
        None => {
            let per_start: Vec<BTreeSet<Circuit>> = (0..complex.num_vertices())
                .into_par_iter()
                .map(|s| {
                    let mut local = BTreeSet::new();
                    let mut on_path = vec![false; complex.num_vertices()];
                    on_path[s] = true;
                    let mut path = Vec::new();
                    rooted_search(&adj, s, s, max_len, &mut path, &mut on_path, &mut local);
                    local
                })
                .collect();
            for set in per_start {
                found.extend(set);
            }
        }
    }
    let mut out: Vec<Circuit> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.walk.cmp(&b.walk)));
    Ok(out)
}

// Circuits whose least vertex is `root`, found by extending simple paths
// through vertices larger than the root.
fn rooted_search(
    adj: &[Vec<(VertexId, SignedEdge)>],
    root: VertexId,
    at: VertexId,
    max_len: usize,
    path: &mut Vec<SignedEdge>,
    on_path: &mut [bool],
    found: &mut BTreeSet<Circuit>,
) {
    for &(w, s) in &adj[at] {
        if path.iter().any(|p| p.edge == s.edge) {
            continue;
        }
        if w == root {
            path.push(s);
            found.insert(Circuit::canonical(path));
            path.pop();
        } else if w > root && !on_path[w] && path.len() + 1 < max_len {
            on_path[w] = true;
            path.push(s);
            rooted_search(adj, root, w, max_len, path, on_path, found);
            path.pop();
            on_path[w] = false;
        }
    }
}

fn anchored_search(
    adj: &[Vec<(VertexId, SignedEdge)>],
    target: VertexId,
    at: VertexId,
    max_len: usize,
    path: &mut Vec<SignedEdge>,
    on_path: &mut [bool],
    found: &mut BTreeSet<Circuit>,
) {
    if path.len() >= max_len {
        return;
    }
    for &(w, s) in &adj[at] {
        if path.iter().any(|p| p.edge == s.edge) {
            continue;
        }
        if w == target {
            path.push(s);
            found.insert(Circuit::canonical(path));
            path.pop();
        } else if !on_path[w] && path.len() + 1 < max_len {
            on_path[w] = true;
            path.push(s);
            anchored_search(adj, target, w, max_len, path, on_path, found);
            path.pop();
            on_path[w] = false;
        }
    }
}

// Follows the arcs of a circuit-induced cycle in order.
fn trace_circuit_walk(complex: &TwoComplex, chain: &Chain) -> Option<Vec<SignedEdge>> {
    let arcs: Vec<SignedEdge> = chain
        .to_ints()?
        .into_iter()
        .map(|(e, c)| {
            if c > 0 {
                SignedEdge::plus(e)
            } else {
                SignedEdge::minus(e)
            }
        })
        .collect();
    let mut walk = vec![arcs[0]];
    let start = complex.endpoints(arcs[0]).0;
    let mut at = complex.endpoints(arcs[0]).1;
    while at != start {
        let next = arcs
            .iter()
            .find(|a| complex.endpoints(**a).0 == at && !walk.contains(a))?;
        walk.push(*next);
        at = complex.endpoints(*next).1;
    }
    (walk.len() == arcs.len()).then_some(walk)
}

/// Splits an integral 1-cycle into circuit-induced cycles whose norms add up
/// to the norm of the input.
///
/// Walks are traced along the arcs of the cycle (edge `e` with coefficient `c`
/// contributes `|c|` arcs in the direction of the sign of `c`); the first
/// repeated vertex closes a circuit, which is peeled off before tracing again.
pub fn decompose_into_circuits(complex: &TwoComplex, gamma: &Chain) -> Result<Vec<Chain>> {
    if !gamma.is_integral() || !is_cycle(complex, gamma) {
        return Err(Error::NotACycle);
    }
    let mut remaining: Vec<i64> = vec![0; complex.num_edges()];
    for (e, c) in gamma.to_ints().ok_or(Error::NotACycle)? {
        remaining[e] = c;
    }
    // Outgoing arcs per vertex: edges whose traversal in the coefficient's
    // direction leaves that vertex.
    let mut out_arcs: Vec<Vec<EdgeId>> = vec![Vec::new(); complex.num_vertices()];
    for (e, edge) in complex.edges().iter().enumerate() {
        out_arcs[edge.tail].push(e);
        if !edge.is_loop() {
            out_arcs[edge.head].push(e);
        }
    }
    let arc_from = |v: VertexId, e: EdgeId, remaining: &[i64]| -> Option<SignedEdge> {
        let edge = complex.edge(e);
        let c = remaining[e];
        if c > 0 && edge.tail == v {
            Some(SignedEdge::plus(e))
        } else if c < 0 && edge.head == v {
            Some(SignedEdge::minus(e))
        } else {
            None
        }
    };

    let mut pieces = Vec::new();
    while let Some(first) = remaining.iter().position(|&c| c != 0) {
        let start_arc = if remaining[first] > 0 {
            SignedEdge::plus(first)
        } else {
            SignedEdge::minus(first)
        };
        let start = complex.endpoints(start_arc).0;
        let mut visited_at: Vec<Option<usize>> = vec![None; complex.num_vertices()];
        let mut vertices = vec![start];
        let mut arcs: Vec<SignedEdge> = Vec::new();
        visited_at[start] = Some(0);
        let mut at = start;
        let mut next_arc = Some(start_arc);
        loop {
            let arc = match next_arc.take() {
                Some(a) => a,
                None => out_arcs[at]
                    .iter()
                    .find_map(|&e| arc_from(at, e, &remaining))
                    .ok_or_else(|| Error::Invariant("cycle walk got stuck".into()))?,
            };
            arcs.push(arc);
            at = complex.endpoints(arc).1;
            if let Some(pos) = visited_at[at] {
                let circuit = &arcs[pos..];
                let piece = Chain::from_ints(1, circuit.iter().map(|s| (s.edge, s.sign.as_i64())));
                for s in circuit {
                    remaining[s.edge] -= s.sign.as_i64();
                }
                pieces.push(piece);
                break;
            }
            visited_at[at] = Some(vertices.len());
            vertices.push(at);
        }
    }
    Ok(pieces)
}

fn chain_to_sparse(chain: &Chain) -> SparseCycle {
    chain.to_ints().expect("integral chain")
}

pub(crate) fn sparse_to_chain(v: &SparseCycle) -> Chain {
    Chain::from_ints(1, v.iter().copied())
}

pub(crate) fn sparse_norm(v: &SparseCycle) -> usize {
    v.iter().map(|&(_, c)| c.unsigned_abs() as usize).sum()
}

// Adds `b` into `a` when no edge changes sign; otherwise the norms would not add.
fn add_without_cancellation(a: &SparseCycle, b: &SparseCycle) -> Option<SparseCycle> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(&(ea, ca)), Some(&(eb, cb))) if ea == eb => {
                if (ca > 0) != (cb > 0) {
                    return None;
                }
                out.push((ea, ca + cb));
                i += 1;
                j += 1;
            }
            (Some(&(ea, ca)), Some(&(eb, _))) if ea < eb => {
                out.push((ea, ca));
                i += 1;
            }
            (Some(_), Some(&(eb, cb))) => {
                out.push((eb, cb));
                j += 1;
            }
            (Some(&(ea, ca)), None) => {
                out.push((ea, ca));
                i += 1;
            }
            (None, Some(&(eb, cb))) => {
                out.push((eb, cb));
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    Some(out)
}

/// A bounded-norm cycle together with one norm-additive circuit decomposition,
/// given as indices into the signed circuit list it was built from.
#[derive(Clone, Debug)]
pub(crate) struct GeneratedCycle {
    pub cycle: SparseCycle,
    pub parts: Vec<usize>,
}

/// Signed circuit cycles: each circuit in its canonical direction, then reversed.
pub(crate) fn signed_circuit_cycles(circuits: &[Circuit]) -> Vec<SparseCycle> {
    circuits
        .iter()
        .flat_map(|c| {
            let v = chain_to_sparse(&c.to_chain());
            let neg: SparseCycle = v.iter().map(|&(e, k)| (e, -k)).collect();
            [v, neg]
        })
        .collect()
}

/// All integral cycles of norm at most `k`, each with the first decomposition
/// that produced it. Sorted by norm, then by coefficients.
pub(crate) fn generate_cycles(signed: &[SparseCycle], k: usize) -> Vec<GeneratedCycle> {
    let lens: Vec<usize> = signed.iter().map(sparse_norm).collect();
    let mut found: std::collections::BTreeMap<SparseCycle, Vec<usize>> =
        std::collections::BTreeMap::new();
    found.insert(Vec::new(), Vec::new());
    let mut parts = Vec::new();
    fn extend(
        signed: &[SparseCycle],
        lens: &[usize],
        from: usize,
        budget: usize,
        acc: &SparseCycle,
        parts: &mut Vec<usize>,
        found: &mut std::collections::BTreeMap<SparseCycle, Vec<usize>>,
    ) {
        for i in from..signed.len() {
            if lens[i] > budget {
                continue;
            }
            if let Some(sum) = add_without_cancellation(acc, &signed[i]) {
                parts.push(i);
                found.entry(sum.clone()).or_insert_with(|| parts.clone());
                extend(signed, lens, i, budget - lens[i], &sum, parts, found);
                parts.pop();
            }
        }
    }
    extend(signed, &lens, 0, k, &Vec::new(), &mut parts, &mut found);
    let mut out: Vec<GeneratedCycle> = found
        .into_iter()
        .map(|(cycle, parts)| GeneratedCycle { cycle, parts })
        .collect();
    out.sort_by(|a, b| {
        sparse_norm(&a.cycle)
            .cmp(&sparse_norm(&b.cycle))
            .then_with(|| a.cycle.cmp(&b.cycle))
    });
    out
}

/// Every integral 1-cycle of norm at most `k`, including `0`, exactly once.
pub fn enumerate_cycles(complex: &TwoComplex, k: usize) -> Vec<Chain> {
    let circuits = enumerate_circuits(complex, None, k).expect("no anchor");
    generate_cycles(&signed_circuit_cycles(&circuits), k)
        .iter()
        .map(|g| sparse_to_chain(&g.cycle))
        .collect()
}

/// Searches for a split of a circuit cycle into two nonzero disjoint cycles.
/// Every bipartition of the support is tried; the result should always be `None`.
pub fn disjoint_cycle_split(complex: &TwoComplex, gamma: &Chain) -> Option<(Chain, Chain)> {
    let support: Vec<(usize, i64)> = gamma.to_ints()?;
    let n = support.len();
    assert!(n < 31, "exhaustive split check needs a small support");
    for mask in 1u32..(1u32 << n) - 1 {
        let alpha = Chain::from_ints(
            1,
            (0..n).filter(|i| mask & (1 << i) != 0).map(|i| support[i]),
        );
        let beta = gamma.sub(&alpha);
        if is_cycle(complex, &alpha) && is_cycle(complex, &beta) {
            return Some((alpha, beta));
        }
    }
    None
}

/// A random integral cycle: a random signed sum of up to `max_terms` circuits
/// with multiplicities up to `max_mult`.
pub fn random_cycle<R: rand::Rng>(
    circuits: &[Circuit],
    rng: &mut R,
    max_terms: usize,
    max_mult: i64,
) -> Chain {
    let mut gamma = Chain::zero(1, Ring::Int);
    if circuits.is_empty() {
        return gamma;
    }
    let terms = rng.gen_range(1..=max_terms);
    for _ in 0..terms {
        let c = &circuits[rng.gen_range(0..circuits.len())];
        let m = rng.gen_range(-max_mult..=max_mult);
        gamma = gamma.add(&c.to_chain().scale(&int(m)));
    }
    gamma
}

/// True iff the chain is induced by a circuit.
pub(crate) fn is_circuit_chain(complex: &TwoComplex, chain: &Chain) -> bool {
    chain.terms().values().all(|c| c.abs() == int(1))
        && Circuit::from_cycle(complex, chain).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::l1_norm;
    use crate::families;
    use rand::SeedableRng;

    #[test]
    fn basic_cycle_predicates() {
        let t = families::cycle_graph(3);
        assert!(is_cycle(&t, &Chain::from_ints(1, [(0, 1), (1, 1), (2, 1)])));
        assert!(!is_cycle(&t, &Chain::from_ints(1, [(0, 1)])));
        let x = families::double_traversal();
        assert!(is_cycle(&x, &Chain::from_ints(1, [(0, 1)])));
    }

    #[test]
    fn canonical_key_ignores_rotation_and_direction() {
        let w = [
            SignedEdge::plus(2),
            SignedEdge::plus(0),
            SignedEdge::minus(1),
        ];
        let c = Circuit::from_walk(&w);
        let r = c.reversed();
        assert_eq!(c.key(), r.key());
        assert_eq!(c.walk()[0], SignedEdge::plus(0));
    }

    #[test]
    fn k4_circuit_counts() {
        let k4 = families::complete_graph(4);
        assert_eq!(enumerate_circuits(&k4, None, 3).unwrap().len(), 4);
        for e in 0..6 {
            assert_eq!(enumerate_circuits(&k4, Some(e), 3).unwrap().len(), 2);
        }
        // 4 triangles and 3 squares.
        assert_eq!(enumerate_circuits(&k4, None, 4).unwrap().len(), 7);
    }

    #[test]
    fn trees_have_no_circuits() {
        let t = families::path_graph(5);
        assert!(enumerate_circuits(&t, None, 10).unwrap().is_empty());
    }

    #[test]
    fn short_circuits_are_admitted() {
        let x = families::double_traversal();
        let cs = enumerate_circuits(&x, None, 3).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 1);
        let bigon = families::bigon_graph();
        let cs = enumerate_circuits(&bigon, None, 2).unwrap();
        assert_eq!(cs.len(), 1);
        assert_eq!(cs[0].len(), 2);
    }

    #[test]
    fn anchored_enumeration_matches_filtering() {
        for (name, x) in families::named_complexes() {
            let all = enumerate_circuits(&x, None, 6).unwrap();
            for e in 0..x.num_edges() {
                let anchored = enumerate_circuits(&x, Some(e), 6).unwrap();
                let filtered: Vec<_> = all.iter().filter(|c| c.contains_edge(e)).cloned().collect();
                assert_eq!(anchored, filtered, "{name} edge {e}");
            }
        }
        let k4 = families::complete_graph(4);
        assert!(matches!(
            enumerate_circuits(&k4, Some(99), 3),
            Err(Error::UnknownEdge(_))
        ));
    }

    #[test]
    fn figure_eight_decomposes_into_two_triangles() {
        let g = families::figure_eight();
        let gamma = Chain::from_ints(1, (0..6).map(|e| (e, 1)));
        assert!(is_cycle(&g, &gamma));
        let parts = decompose_into_circuits(&g, &gamma).unwrap();
        assert_eq!(parts.len(), 2);
        assert!(parts.iter().all(|p| l1_norm(p) == int(3)));
    }

    #[test]
    fn doubled_triangle_decomposes_into_two_copies() {
        let t = families::cycle_graph(3);
        let tri = Chain::from_ints(1, [(0, 1), (1, 1), (2, 1)]);
        let parts = decompose_into_circuits(&t, &tri.scale(&int(2))).unwrap();
        assert_eq!(parts, vec![tri.clone(), tri.clone()]);
        assert_eq!(decompose_into_circuits(&t, &tri).unwrap(), vec![tri]);
        assert!(decompose_into_circuits(&t, &Chain::zero(1, Ring::Int))
            .unwrap()
            .is_empty());
        assert!(matches!(
            decompose_into_circuits(&t, &Chain::from_ints(1, [(0, 1)])),
            Err(Error::NotACycle)
        ));
    }

    #[test]
    fn cycle_counts() {
        let t = families::cycle_graph(3);
        assert_eq!(enumerate_cycles(&t, 2).len(), 1);
        assert_eq!(enumerate_cycles(&t, 3).len(), 3);
        assert_eq!(enumerate_cycles(&families::complete_graph(4), 3).len(), 9);
    }

    #[test]
    fn circuits_never_split_disjointly() {
        for (name, x) in families::named_complexes() {
            for c in enumerate_circuits(&x, None, 8).unwrap() {
                assert!(disjoint_cycle_split(&x, &c.to_chain()).is_none(), "{name}");
            }
        }
    }

    #[test]
    fn random_cycles_decompose_additively() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for (name, x) in families::named_complexes() {
            let circuits = enumerate_circuits(&x, None, 6).unwrap();
            for _ in 0..50 {
                let gamma = random_cycle(&circuits, &mut rng, 4, 2);
                let parts = decompose_into_circuits(&x, &gamma).unwrap();
                let total = parts
                    .iter()
                    .fold(Chain::zero(1, Ring::Int), |a, p| a.add(p));
                assert_eq!(total, gamma, "{name}");
                let norms: crate::number::Rational = parts.iter().map(l1_norm).sum();
                assert_eq!(norms, l1_norm(&gamma));
                assert!(parts.iter().all(|p| is_circuit_chain(&x, p)));
            }
        }
    }
}
