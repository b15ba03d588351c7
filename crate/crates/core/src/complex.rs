//! Finite combinatorial 2-complexes with fixed orientations.
//!
//! Every edge is oriented tail to head and every face by its stored attaching
//! walk. Validation is the only way to obtain a [`TwoComplex`], and a validated
//! complex is never mutated afterwards, so the orientation data is fixed for
//! the lifetime of the value.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_traits::{Signed, Zero};

use crate::chain::{Chain, Ring};
use crate::error::{Error, Result, Violation};
use crate::number::{int, Rational};

pub type VertexId = usize;
pub type EdgeId = usize;
pub type FaceId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// An edge traversed in its own direction (`Plus`) or against it (`Minus`).
///
/// Ordered by edge index first, `Plus` before `Minus`; circuit keys rely on this.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedEdge {
    pub edge: EdgeId,
    pub sign: Sign,
}

impl SignedEdge {
    pub fn plus(edge: EdgeId) -> Self {
        SignedEdge {
            edge,
            sign: Sign::Plus,
        }
    }

    pub fn minus(edge: EdgeId) -> Self {
        SignedEdge {
            edge,
            sign: Sign::Minus,
        }
    }

    pub fn reversed(self) -> Self {
        SignedEdge {
            edge: self.edge,
            sign: self.sign.flip(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: VertexId,
    pub head: VertexId,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub id: String,
    pub walk: Vec<SignedEdge>,
}

/// Unvalidated complex description, as read from a file or assembled by a
/// construction. Cells refer to each other by their string ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawComplex {
    pub vertices: Vec<String>,
    pub edges: Vec<(String, String, String)>,
    pub faces: Vec<(String, Vec<(Sign, String)>)>,
    /// Free-form comment lines carried into the serialized form.
    pub comments: Vec<String>,
}

impl RawComplex {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, id: impl Into<String>) -> &mut Self {
        self.vertices.push(id.into());
        self
    }

    pub fn edge(
        &mut self,
        id: impl Into<String>,
        tail: impl Into<String>,
        head: impl Into<String>,
    ) -> &mut Self {
        self.edges.push((id.into(), tail.into(), head.into()));
        self
    }

    /// Adds a face from a walk written as `["+e1", "-e2", ...]`.
    pub fn face(&mut self, id: impl Into<String>, walk: &[&str]) -> &mut Self {
        let walk = walk
            .iter()
            .map(|tok| parse_signed_token(tok).unwrap_or((Sign::Plus, tok.to_string())))
            .collect();
        self.faces.push((id.into(), walk));
        self
    }

    pub fn face_signed(&mut self, id: impl Into<String>, walk: Vec<(Sign, String)>) -> &mut Self {
        self.faces.push((id.into(), walk));
        self
    }
}

pub(crate) fn parse_signed_token(tok: &str) -> Option<(Sign, String)> {
    let (sign, rest) = if let Some(r) = tok.strip_prefix('+') {
        (Sign::Plus, r)
    } else {
        let r = tok.strip_prefix('-')?;
        (Sign::Minus, r)
    };
    if rest.is_empty() {
        None
    } else {
        Some((sign, rest.to_string()))
    }
}

/// A validated finite 2-complex. Graphs are complexes without faces.
#[derive(Clone, Debug)]
pub struct TwoComplex {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    comments: Vec<String>,
    vertex_index: HashMap<String, VertexId>,
    edge_index: HashMap<String, EdgeId>,
    face_index: HashMap<String, FaceId>,
    /// Sparse boundary of each face, sorted by edge, zero entries dropped.
    face_boundaries: Vec<Vec<(EdgeId, i64)>>,
    /// Faces whose boundary has nonzero coefficient on each edge.
    edge_faces: Vec<Vec<FaceId>>,
}

impl PartialEq for TwoComplex {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.edges == other.edges && self.faces == other.faces
    }
}

impl Eq for TwoComplex {}

/// Checks a raw description and produces an immutable complex, or every
/// violation found.
pub fn validate(raw: &RawComplex) -> Result<TwoComplex> {
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    let mut check_dup = |id: &str, violations: &mut Vec<Violation>| {
        if !seen.insert(id.to_string()) {
            violations.push(Violation::DuplicateId { id: id.to_string() });
        }
    };

    let mut vertex_index = HashMap::new();
    for v in &raw.vertices {
        check_dup(v, &mut violations);
        let next = vertex_index.len();
        vertex_index.entry(v.clone()).or_insert(next);
    }
    let vertices: Vec<String> = {
        let mut vs = vec![String::new(); vertex_index.len()];
        for (name, &i) in &vertex_index {
            vs[i] = name.clone();
        }
        vs
    };

    let mut edges = Vec::new();
    let mut edge_index = HashMap::new();
    for (id, tail, head) in &raw.edges {
        check_dup(id, &mut violations);
        let t = vertex_index.get(tail).copied();
        let h = vertex_index.get(head).copied();
        for (name, found) in [(tail, t), (head, h)] {
            if found.is_none() {
                violations.push(Violation::DanglingReference {
                    context: format!("edge `{id}`"),
                    id: name.clone(),
                });
            }
        }
        if let (Some(tail), Some(head)) = (t, h) {
            if !edge_index.contains_key(id) {
                edge_index.insert(id.clone(), edges.len());
                edges.push(Edge {
                    id: id.clone(),
                    tail,
                    head,
                });
            }
        }
    }

    let mut faces = Vec::new();
    let mut face_index = HashMap::new();
    for (id, walk) in &raw.faces {
        check_dup(id, &mut violations);
        if walk.is_empty() {
            violations.push(Violation::EmptyWalk { face: id.clone() });
            continue;
        }
        let mut resolved = Vec::with_capacity(walk.len());
        let mut dangling = false;
        for (sign, e) in walk {
            match edge_index.get(e) {
                Some(&edge) => resolved.push(SignedEdge { edge, sign: *sign }),
                None => {
                    dangling = true;
                    violations.push(Violation::DanglingReference {
                        context: format!("face `{id}`"),
                        id: e.clone(),
                    });
                }
            }
        }
        if dangling {
            continue;
        }
        let ends = |s: &SignedEdge| {
            let e = &edges[s.edge];
            match s.sign {
                Sign::Plus => (e.tail, e.head),
                Sign::Minus => (e.head, e.tail),
            }
        };
        let mut ok = true;
        for i in 0..resolved.len() - 1 {
            if ends(&resolved[i]).1 != ends(&resolved[i + 1]).0 {
                violations.push(Violation::WalkDiscontinuous {
                    face: id.clone(),
                    position: i + 1,
                });
                ok = false;
                break;
            }
        }
        if ok && ends(resolved.last().unwrap()).1 != ends(&resolved[0]).0 {
            violations.push(Violation::WalkNotClosed { face: id.clone() });
            ok = false;
        }
        if ok && !face_index.contains_key(id) {
            face_index.insert(id.clone(), faces.len());
            faces.push(Face {
                id: id.clone(),
                walk: resolved,
            });
        }
    }

    if !violations.is_empty() {
        return Err(Error::Validation(violations));
    }

    let face_boundaries: Vec<Vec<(EdgeId, i64)>> = faces
        .iter()
        .map(|f| {
            let mut acc: BTreeMap<EdgeId, i64> = BTreeMap::new();
            for s in &f.walk {
                *acc.entry(s.edge).or_insert(0) += s.sign.as_i64();
            }
            acc.into_iter().filter(|&(_, c)| c != 0).collect()
        })
        .collect();
    let mut edge_faces = vec![Vec::new(); edges.len()];
    for (fi, b) in face_boundaries.iter().enumerate() {
        for &(e, _) in b {
            edge_faces[e].push(fi);
        }
    }

    Ok(TwoComplex {
        vertices,
        edges,
        faces,
        comments: raw.comments.clone(),
        vertex_index,
        edge_index,
        face_index,
        face_boundaries,
        edge_faces,
    })
}

impl TwoComplex {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn is_graph(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn comments(&self) -> &[String] {
        &self.comments
    }

    pub fn vertex_by_name(&self, id: &str) -> Option<VertexId> {
        self.vertex_index.get(id).copied()
    }

    pub fn edge_by_name(&self, id: &str) -> Option<EdgeId> {
        self.edge_index.get(id).copied()
    }

    pub fn face_by_name(&self, id: &str) -> Option<FaceId> {
        self.face_index.get(id).copied()
    }

    /// Start and end vertex of a signed edge.
    pub fn endpoints(&self, s: SignedEdge) -> (VertexId, VertexId) {
        let e = &self.edges[s.edge];
        match s.sign {
            Sign::Plus => (e.tail, e.head),
            Sign::Minus => (e.head, e.tail),
        }
    }

    /// Sparse integral boundary of a face: signed multiplicity along its walk.
    pub fn face_boundary(&self, f: FaceId) -> &[(EdgeId, i64)] {
        &self.face_boundaries[f]
    }

    /// Faces whose boundary involves `e` with nonzero coefficient.
    pub fn faces_meeting_edge(&self, e: EdgeId) -> &[FaceId] {
        &self.edge_faces[e]
    }

    /// Dense `∂_2` with rows indexed by edges and columns by faces.
    pub fn boundary2_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.faces.len()]; self.edges.len()];
        for (f, b) in self.face_boundaries.iter().enumerate() {
            for &(e, c) in b {
                m[e][f] = c;
            }
        }
        m
    }

    /// Dense `∂_1` with rows indexed by vertices and columns by edges.
    pub fn boundary1_matrix(&self) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; self.edges.len()]; self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            if !e.is_loop() {
                m[e.head][i] += 1;
                m[e.tail][i] -= 1;
            }
        }
        m
    }

    /// The faceless complex with the same vertices and edges.
    pub fn one_skeleton(&self) -> TwoComplex {
        let mut g = self.clone();
        g.faces.clear();
        g.face_index.clear();
        g.face_boundaries.clear();
        g.edge_faces = vec![Vec::new(); g.edges.len()];
        g
    }

    /// Back to a raw description; `validate(&c.to_raw())` reproduces `c`.
    pub fn to_raw(&self) -> RawComplex {
        RawComplex {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| {
                    (
                        e.id.clone(),
                        self.vertices[e.tail].clone(),
                        self.vertices[e.head].clone(),
                    )
                })
                .collect(),
            faces: self
                .faces
                .iter()
                .map(|f| {
                    (
                        f.id.clone(),
                        f.walk
                            .iter()
                            .map(|s| (s.sign, self.edges[s.edge].id.clone()))
                            .collect(),
                    )
                })
                .collect(),
            comments: self.comments.clone(),
        }
    }

    /// Neighbour lists of the 1-skeleton as `(neighbour, signed edge)` pairs.
    /// Loops appear once per direction.
    pub fn adjacency(&self) -> Vec<Vec<(VertexId, SignedEdge)>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            adj[e.tail].push((e.head, SignedEdge::plus(i)));
            adj[e.head].push((e.tail, SignedEdge::minus(i)));
        }
        for list in &mut adj {
            list.sort_by_key(|&(_, s)| s);
        }
        adj
    }

    pub fn is_connected(&self) -> bool {
        if self.vertices.is_empty() {
            return true;
        }
        let adj = self.adjacency();
        let mut seen = vec![false; self.vertices.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(w, _) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Resolves a chain given by cell names.
    pub fn chain_from_names(
        &self,
        dim: u8,
        ring: Ring,
        terms: &[(Rational, &str)],
    ) -> Result<Chain> {
        let mut chain = Chain::zero(dim, ring);
        for (c, name) in terms {
            let idx = match dim {
                0 => self.vertex_by_name(name),
                1 => self.edge_by_name(name),
                _ => self.face_by_name(name),
            }
            .ok_or_else(|| Error::UnknownCell(name.to_string()))?;
            chain.add_term(idx, c.clone());
        }
        Ok(chain)
    }

    pub fn cell_name(&self, dim: u8, idx: usize) -> &str {
        match dim {
            0 => &self.vertices[idx],
            1 => &self.edges[idx].id,
            _ => &self.faces[idx].id,
        }
    }

    fn cell_count(&self, dim: u8) -> usize {
        match dim {
            0 => self.vertices.len(),
            1 => self.edges.len(),
            _ => self.faces.len(),
        }
    }
}

/// Cellular boundary of a 1- or 2-chain.
pub fn boundary(complex: &TwoComplex, chain: &Chain) -> Result<Chain> {
    let dim = chain.dim();
    if dim == 0 {
        return Err(Error::Invariant("0-chains have no boundary".into()));
    }
    let limit = complex.cell_count(dim);
    let mut out = Chain::zero(dim - 1, chain.ring());
    for (&cell, c) in chain.terms() {
        if cell >= limit {
            return Err(Error::UnknownCell(format!("{dim}-cell #{cell}")));
        }
        if dim == 1 {
            let e = complex.edge(cell);
            if !e.is_loop() {
                out.add_term(e.head, c.clone());
                out.add_term(e.tail, -c.clone());
            }
        } else {
            for &(e, m) in complex.face_boundary(cell) {
                out.add_term(e, c * int(m));
            }
        }
    }
    Ok(out)
}

/// Sum of absolute values of the coefficients.
pub fn l1_norm(chain: &Chain) -> Rational {
    chain
        .terms()
        .values()
        .fold(Rational::zero(), |acc, c| acc + c.abs())
}

impl fmt::Display for SignedEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}#{}", self.sign.symbol(), self.edge)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn triangle_graph_is_valid() {
        let g = families::cycle_graph(3);
        assert_eq!(g.num_vertices(), 3);
        assert_eq!(g.num_edges(), 3);
        assert_eq!(g.num_faces(), 0);
    }

    #[test]
    fn open_walk_is_rejected() {
        let mut raw = RawComplex::new();
        raw.vertex("a").vertex("b").vertex("c");
        raw.edge("e1", "a", "b").edge("e2", "b", "c");
        raw.face("f", &["+e1", "+e2"]);
        match validate(&raw) {
            Err(Error::Validation(v)) => {
                assert_eq!(v, vec![Violation::WalkNotClosed { face: "f".into() }])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn discontinuous_walk_dangling_and_duplicates_are_reported() {
        let mut raw = RawComplex::new();
        raw.vertex("a").vertex("b").vertex("c").vertex("a");
        raw.edge("e1", "a", "b")
            .edge("e2", "c", "a")
            .edge("e3", "a", "zz");
        raw.face("f", &["+e1", "+e2"]);
        raw.face("g", &["+e9"]);
        let Err(Error::Validation(v)) = validate(&raw) else {
            panic!("expected violations")
        };
        assert!(v.contains(&Violation::DuplicateId { id: "a".into() }));
        assert!(v.contains(&Violation::DanglingReference {
            context: "edge `e3`".into(),
            id: "zz".into()
        }));
        assert!(v.contains(&Violation::WalkDiscontinuous {
            face: "f".into(),
            position: 1
        }));
        assert!(v.contains(&Violation::DanglingReference {
            context: "face `g`".into(),
            id: "e9".into()
        }));
    }

    #[test]
    fn double_traversal_is_valid() {
        let x = families::double_traversal();
        assert_eq!(x.face_boundary(0), &[(0, 2)]);
    }

    #[test]
    fn boundaries() {
        let disk = families::triangle_disk();
        let f = Chain::basis(2, Ring::Int, 0);
        let bf = boundary(&disk, &f).unwrap();
        let expected = disk
            .chain_from_names(
                1,
                Ring::Int,
                &[(int(1), "e1"), (int(1), "e2"), (int(1), "e3")],
            )
            .unwrap();
        assert_eq!(bf, expected);
        assert!(boundary(&disk, &bf).unwrap().is_zero());

        let x = families::double_traversal();
        let bf = boundary(&x, &Chain::basis(2, Ring::Int, 0)).unwrap();
        assert_eq!(bf.coefficient(0), int(2));

        let bogus = Chain::basis(2, Ring::Int, 7);
        assert!(matches!(
            boundary(&disk, &bogus),
            Err(Error::UnknownCell(_))
        ));
    }

    #[test]
    fn loop_has_zero_boundary() {
        let x = families::double_traversal();
        assert!(boundary(&x, &Chain::basis(1, Ring::Int, 0))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn norms() {
        use crate::number::rat;
        assert_eq!(l1_norm(&Chain::zero(1, Ring::Int)), int(0));
        let mut c = Chain::zero(1, Ring::Int);
        c.add_term(0, int(2));
        c.add_term(1, int(-3));
        assert_eq!(l1_norm(&c), int(5));
        let mut h = Chain::zero(2, Ring::Rat);
        h.add_term(0, rat(1, 2));
        assert_eq!(l1_norm(&h), rat(1, 2));
    }

    #[test]
    fn boundary_squares_to_zero_on_every_family() {
        for x in families::named_complexes() {
            for f in 0..x.1.num_faces() {
                let bf = boundary(&x.1, &Chain::basis(2, Ring::Int, f)).unwrap();
                assert!(boundary(&x.1, &bf).unwrap().is_zero(), "{}", x.0);
            }
        }
    }
}
