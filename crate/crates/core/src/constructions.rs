//! Derived complexes: `Ω_n(Γ)` and coned-off Cayley graphs and complexes of
//! finite permutation groups.
//!
//! Permutations act on the right, so `x^(gh) = (x^g)^h` and the Cayley edge
//! labelled `s` runs from `g` to `gs`.
//!
//! Census for S3 = ⟨a = (1 2), b = (1 2 3)⟩ with letters `a, b, B`, relators
//! `a a`, `b b b`, `a b a b` and the subgroup ⟨a⟩ coned off: 9 vertices (6
//! elements, 3 cone points), 15 edges (9 Cayley, 6 cone), 8 faces (2 from
//! `b b b`, 3 from `a b a b`, 3 triangles; `a a` is freely trivial), and
//! `betti1 = 0`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::complex::{validate, RawComplex, Sign, SignedEdge, TwoComplex};
use crate::cycles::{canonical_walk, enumerate_circuits};
use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 20_000;

/// `Ω_n(Γ)`: the graph with one face glued along each circuit of length ≤ `n`.
pub fn omega_n(graph: &TwoComplex, n: usize) -> Result<TwoComplex> {
    if !graph.is_graph() {
        return Err(Error::HasFaces);
    }
    let mut raw = graph.to_raw();
    for (i, c) in enumerate_circuits(graph, None, n)?.iter().enumerate() {
        let walk = c
            .walk()
            .iter()
            .map(|s| (s.sign, graph.edge(s.edge).id.clone()))
            .collect();
        raw.face_signed(format!("w{i}"), walk);
    }
    validate(&raw)
}

/// A permutation of `{0, …, d−1}` as its image list.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(d: usize) -> Perm {
        Perm((0..d).collect())
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (x, &y) in self.0.iter().enumerate() {
            inv[y] = x;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// Parses cycle notation over `1..=d`, e.g. `(1 2)(3 4 5)` or `()`.
    pub fn parse_cycles(text: &str, d: usize) -> std::result::Result<Perm, String> {
        let mut images: Vec<usize> = (0..d).collect();
        let mut seen = BTreeSet::new();
        let mut rest = text.trim();
        while !rest.is_empty() {
            let inner = rest
                .strip_prefix('(')
                .and_then(|r| r.split_once(')'))
                .ok_or_else(|| format!("bad cycle notation `{text}`"))?;
            let points: Vec<usize> = inner
                .0
                .split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| t.parse::<usize>().map_err(|_| format!("bad point `{t}`")))
                .collect::<std::result::Result<_, _>>()?;
            for &p in &points {
                if p == 0 || p > d {
                    return Err(format!("point {p} outside 1..={d}"));
                }
                if !seen.insert(p) {
                    return Err(format!("point {p} repeated"));
                }
            }
            for (i, &p) in points.iter().enumerate() {
                images[p - 1] = points[(i + 1) % points.len()] - 1;
            }
            rest = inner.1.trim_start();
        }
        Ok(Perm(images))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut done = vec![false; self.0.len()];
        let mut any = false;
        for start in 0..self.0.len() {
            if done[start] || self.0[start] == start {
                continue;
            }
            any = true;
            let mut cycle = vec![start + 1];
            done[start] = true;
            let mut x = self.0[start];
            while x != start {
                cycle.push(x + 1);
                done[x] = true;
                x = self.0[x];
            }
            let body: Vec<String> = cycle.iter().map(|p| p.to_string()).collect();
            write!(f, "({})", body.join(" "))?;
        }
        if !any {
            f.write_str("()")?;
        }
        Ok(())
    }
}

/// A letter of the symmetric generating set `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Letter {
    pub name: String,
    pub perm: Perm,
    /// Index of the inverse letter in [`FiniteGroupPresentation::letters`].
    pub inverse: usize,
    /// Index of the `{s, s⁻¹}` pair this letter belongs to.
    pub pair: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    pub name: String,
    /// Indices into the letters.
    pub generators: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupPresentation {
    pub degree: usize,
    pub generators: Vec<(String, Perm)>,
    pub letters: Vec<Letter>,
    pub subgroups: Vec<Subgroup>,
    /// Words over the letters.
    pub relators: Vec<Vec<usize>>,
}

impl FiniteGroupPresentation {
    pub fn letter_by_name(&self, name: &str) -> Option<usize> {
        self.letters.iter().position(|l| l.name == name)
    }

    pub fn word_string(&self, word: &[usize]) -> String {
        let names: Vec<&str> = word
            .iter()
            .map(|&i| self.letters[i].name.as_str())
            .collect();
        names.join(" ")
    }

    /// True iff the word reduces to the empty word by cancelling `s s⁻¹`;
    /// such relators bound no face.
    pub fn freely_trivial(&self, word: &[usize]) -> bool {
        let mut stack: Vec<usize> = Vec::new();
        for &l in word {
            if stack.last() == Some(&self.letters[l].inverse) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        // Cyclic reduction of what is left.
        while stack.len() >= 2 && self.letters[stack[0]].inverse == *stack.last().unwrap() {
            stack.remove(0);
            stack.pop();
        }
        stack.is_empty()
    }
}

/// Parses the line-based `group v1` format.
pub fn parse_group(text: &str) -> Result<FiniteGroupPresentation> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, crate::io::strip_comment(l).0.trim()))
        .filter(|(_, l)| !l.is_empty());
    match lines.next() {
        Some((_, "group v1")) => {}
        Some((n, _)) => return Err(Error::parse(n, "expected header `group v1`")),
        None => return Err(Error::parse(1, "empty input")),
    }
    let mut degree: Option<usize> = None;
    let mut generators: Vec<(String, Perm)> = Vec::new();
    let mut letters: Vec<Letter> = Vec::new();
    let mut pairs = 0;
    let mut subgroup_lines: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut relator_lines: Vec<(usize, Vec<String>)> = Vec::new();

    for (n, line) in lines {
        let (keyword, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        match keyword {
            "degree" => {
                let d = rest
                    .parse::<usize>()
                    .map_err(|_| Error::parse(n, "degree must be a nonnegative integer"))?;
                degree = Some(d);
            }
            "gen" => {
                let d = degree.ok_or_else(|| Error::parse(n, "`degree` must precede `gen`"))?;
                let (name, cycles) = rest.split_once(char::is_whitespace).unwrap_or((rest, "()"));
                if name.is_empty() || generators.iter().any(|(g, _)| g == name) {
                    return Err(Error::parse(
                        n,
                        format!("bad or repeated generator `{name}`"),
                    ));
                }
                let perm = Perm::parse_cycles(cycles, d).map_err(|m| Error::parse(n, m))?;
                generators.push((name.to_string(), perm));
            }
            "sgen" => {
                let [name, inv] = tokens[..] else {
                    return Err(Error::parse(n, "expected `sgen <name> <inverse-name>`"));
                };
                let perm = generators
                    .iter()
                    .find(|(g, _)| g == name)
                    .map(|(_, p)| p.clone())
                    .ok_or_else(|| Error::parse(n, format!("`{name}` is not a generator")))?;
                let inv_perm = perm.inverse();
                if let Some((_, p)) = generators.iter().find(|(g, _)| g == inv) {
                    if *p != inv_perm {
                        return Err(Error::parse(
                            n,
                            format!("`{inv}` is not the inverse of `{name}`"),
                        ));
                    }
                }
                if name == inv && !perm.then(&perm).is_identity() {
                    return Err(Error::parse(n, format!("`{name}` is not an involution")));
                }
                if letters.iter().any(|l| l.name == name || l.name == inv) {
                    return Err(Error::parse(n, "letter declared twice"));
                }
                let i = letters.len();
                if name == inv {
                    letters.push(Letter {
                        name: name.to_string(),
                        perm,
                        inverse: i,
                        pair: pairs,
                    });
                } else {
                    letters.push(Letter {
                        name: name.to_string(),
                        perm,
                        inverse: i + 1,
                        pair: pairs,
                    });
                    letters.push(Letter {
                        name: inv.to_string(),
                        perm: inv_perm,
                        inverse: i,
                        pair: pairs,
                    });
                }
                pairs += 1;
            }
            "subgroup" => {
                let Some((&name, gens)) = tokens.split_first() else {
                    return Err(Error::parse(n, "expected `subgroup <name> <gen> ...`"));
                };
                subgroup_lines.push((
                    n,
                    name.to_string(),
                    gens.iter().map(|s| s.to_string()).collect(),
                ));
            }
            "relator" => {
                relator_lines.push((n, tokens.iter().map(|s| s.to_string()).collect()));
            }
            other => return Err(Error::parse(n, format!("unknown keyword `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| Error::parse(1, "missing `degree`"))?;
    let lookup = |n: usize, name: &str| {
        letters
            .iter()
            .position(|l| l.name == name)
            .ok_or_else(|| Error::parse(n, format!("`{name}` is not a letter of S")))
    };
    let mut subgroups = Vec::new();
    for (n, name, gens) in subgroup_lines {
        if subgroups.iter().any(|s: &Subgroup| s.name == name) {
            return Err(Error::parse(n, format!("subgroup `{name}` declared twice")));
        }
        let generators = gens.iter().map(|g| lookup(n, g)).collect::<Result<_>>()?;
        subgroups.push(Subgroup { name, generators });
    }
    let relators = relator_lines
        .into_iter()
        .map(|(n, word)| {
            word.iter()
                .map(|w| lookup(n, w))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(FiniteGroupPresentation {
        degree,
        generators,
        letters,
        subgroups,
        relators,
    })
}

pub fn write_group(p: &FiniteGroupPresentation) -> String {
    let mut out = format!("group v1\ndegree {}\n", p.degree);
    for (name, perm) in &p.generators {
        out.push_str(&format!("gen {name} {perm}\n"));
    }
    let mut done = BTreeSet::new();
    for l in &p.letters {
        if done.insert(l.pair) {
            out.push_str(&format!("sgen {} {}\n", l.name, p.letters[l.inverse].name));
        }
    }
    for s in &p.subgroups {
        out.push_str(&format!("subgroup {}", s.name));
        for &g in &s.generators {
            out.push_str(&format!(" {}", p.letters[g].name));
        }
        out.push('\n');
    }
    for r in &p.relators {
        out.push_str(&format!("relator {}\n", p.word_string(r)));
    }
    out
}

/// The elements of `G`, numbered in breadth-first order from the identity.
#[derive(Clone, Debug)]
pub struct GroupTable {
    pub elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    /// `right[g][l]` is the id of `g · letter l`.
    right: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn id_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn step(&self, g: usize, letter: usize) -> usize {
        self.right[g][letter]
    }

    pub fn multiply(&self, g: usize, h: usize) -> usize {
        self.index[&self.elements[g].then(&self.elements[h])]
    }
}

/// Closes the generators under multiplication and checks every relator.
pub fn group_closure(p: &FiniteGroupPresentation, cap: usize) -> Result<GroupTable> {
    let id = Perm::identity(p.degree);
    let mut elements = vec![id.clone()];
    let mut index = HashMap::from([(id, 0)]);
    let mut queue = VecDeque::from([0]);
    while let Some(g) = queue.pop_front() {
        for (_, s) in &p.generators {
            let h = elements[g].then(s);
            if !index.contains_key(&h) {
                if elements.len() == cap {
                    return Err(Error::CapExceeded {
                        what: "group order",
                        cap,
                    });
                }
                index.insert(h.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(h);
            }
        }
    }
    let right = elements
        .iter()
        .map(|g| p.letters.iter().map(|l| index[&g.then(&l.perm)]).collect())
        .collect();
    for r in &p.relators {
        let value = r.iter().fold(Perm::identity(p.degree), |acc, &l| {
            acc.then(&p.letters[l].perm)
        });
        if !value.is_identity() {
            return Err(Error::RelatorFails(p.word_string(r)));
        }
    }
    Ok(GroupTable {
        elements,
        index,
        right,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeVertex {
    pub subgroup: usize,
    /// Least element id in the coset `gP`; also the coset's id.
    pub coset: usize,
    pub members: Vec<usize>,
    pub vertex: usize,
}

#[derive(Clone, Debug)]
pub struct ConedOffComplex {
    pub complex: TwoComplex,
    pub group: GroupTable,
    /// Vertex of each group element, by element id.
    pub element_vertices: Vec<usize>,
    pub cone_vertices: Vec<ConeVertex>,
    pub cayley_edges: Vec<usize>,
    pub cone_edges: Vec<usize>,
    pub relator_faces: Vec<usize>,
    pub triangle_faces: Vec<usize>,
}

fn element_name(g: usize) -> String {
    format!("g{g}")
}

/// Left cosets `gP` as orbits of right multiplication by the generators of `P`,
/// each sorted, ordered by least member.
fn left_cosets(table: &GroupTable, gens: &[usize]) -> Vec<Vec<usize>> {
    let mut coset_of = vec![usize::MAX; table.order()];
    let mut cosets = Vec::new();
    for start in 0..table.order() {
        if coset_of[start] != usize::MAX {
            continue;
        }
        let id = cosets.len();
        let mut members = vec![start];
        coset_of[start] = id;
        let mut i = 0;
        while i < members.len() {
            let g = members[i];
            for &l in gens {
                let h = table.step(g, l);
                if coset_of[h] == usize::MAX {
                    coset_of[h] = id;
                    members.push(h);
                }
            }
            i += 1;
        }
        members.sort_unstable();
        cosets.push(members);
    }
    cosets
}

struct Builder {
    raw: RawComplex,
    cayley_edges: Vec<usize>,
    cone_edges: Vec<usize>,
    /// (pair, from, to) → signed Cayley edge.
    cayley: HashMap<(usize, usize, usize), (Sign, usize)>,
    /// (subgroup, element) → cone edge from the element to its cone vertex.
    cone: HashMap<(usize, usize), usize>,
    cone_vertices: Vec<ConeVertex>,
}

fn build_graph(p: &FiniteGroupPresentation, table: &GroupTable) -> Builder {
    let mut raw = RawComplex::new();
    for (g, perm) in table.elements.iter().enumerate() {
        raw.vertex(element_name(g));
        raw.comments
            .push(format!("element {} {perm}", element_name(g)));
    }
    let mut b = Builder {
        raw,
        cayley_edges: Vec::new(),
        cone_edges: Vec::new(),
        cayley: HashMap::new(),
        cone: HashMap::new(),
        cone_vertices: Vec::new(),
    };
    // One undirected edge per {g, gs} for each pair {s, s⁻¹}, oriented g → gs
    // along the first-declared letter of the pair.
    let mut seen_pair = BTreeSet::new();
    for (li, l) in p.letters.iter().enumerate() {
        if !seen_pair.insert(l.pair) {
            continue;
        }
        for g in 0..table.order() {
            let h = table.step(g, li);
            if b.cayley.contains_key(&(l.pair, g, h)) {
                continue;
            }
            let e = b.raw.edges.len();
            b.raw.edge(
                format!("{}:{}", l.name, element_name(g)),
                element_name(g),
                element_name(h),
            );
            b.cayley_edges.push(e);
            b.cayley.insert((l.pair, g, h), (Sign::Plus, e));
            b.cayley.entry((l.pair, h, g)).or_insert((Sign::Minus, e));
        }
    }
    for (si, s) in p.subgroups.iter().enumerate() {
        for members in left_cosets(table, &s.generators) {
            let coset = members[0];
            let name = format!("v[{}:{}]", s.name, element_name(coset));
            let vertex = b.raw.vertices.len();
            b.raw.vertex(name.clone());
            let list: Vec<String> = members.iter().map(|&g| element_name(g)).collect();
            b.raw
                .comments
                .push(format!("cone {name} {}", list.join(" ")));
            for &g in &members {
                let e = b.raw.edges.len();
                b.raw.edge(
                    format!("c:{}:{}", s.name, element_name(g)),
                    element_name(g),
                    name.clone(),
                );
                b.cone_edges.push(e);
                b.cone.insert((si, g), e);
            }
            b.cone_vertices.push(ConeVertex {
                subgroup: si,
                coset,
                members,
                vertex,
            });
        }
    }
    b
}

fn finish(
    b: Builder,
    table: GroupTable,
    relator_faces: Vec<usize>,
    triangle_faces: Vec<usize>,
) -> Result<ConedOffComplex> {
    let complex = validate(&b.raw)?;
    Ok(ConedOffComplex {
        complex,
        group: table,
        element_vertices: (0..b.raw.vertices.len() - b.cone_vertices.len()).collect(),
        cone_vertices: b.cone_vertices,
        cayley_edges: b.cayley_edges,
        cone_edges: b.cone_edges,
        relator_faces,
        triangle_faces,
    })
}

/// `Γ̂(G, 𝒫, S)` without faces.
pub fn coned_off_cayley_graph(p: &FiniteGroupPresentation, cap: usize) -> Result<ConedOffComplex> {
    let table = group_closure(p, cap)?;
    let b = build_graph(p, &table);
    finish(b, table, Vec::new(), Vec::new())
}

/// The coned-off Cayley complex: relator faces traced from every element and
/// a triangle `(g, gs, v(gP))` for every `s ∈ S ∩ P`, each identified once by
/// canonical cyclic walk.
pub fn coned_off_cayley_complex(
    p: &FiniteGroupPresentation,
    cap: usize,
) -> Result<ConedOffComplex> {
    let table = group_closure(p, cap)?;
    let mut b = build_graph(p, &table);
    let mut seen: BTreeMap<Vec<SignedEdge>, usize> = BTreeMap::new();
    let mut relator_faces = Vec::new();
    let mut triangle_faces = Vec::new();

    let mut add_face = |b: &mut Builder, name: String, walk: Vec<(Sign, usize)>, tag: &str| {
        let signed: Vec<SignedEdge> = walk
            .iter()
            .map(|&(s, e)| {
                if s == Sign::Plus {
                    SignedEdge::plus(e)
                } else {
                    SignedEdge::minus(e)
                }
            })
            .collect();
        let key = canonical_walk(&signed);
        if seen.contains_key(&key) {
            return None;
        }
        let f = b.raw.faces.len();
        seen.insert(key, f);
        let named = walk
            .iter()
            .map(|&(s, e)| (s, b.raw.edges[e].0.clone()))
            .collect();
        b.raw.comments.push(format!("{tag} {name}"));
        b.raw.face_signed(name, named);
        Some(f)
    };

    for (ri, word) in p.relators.iter().enumerate() {
        if word.is_empty() || p.freely_trivial(word) {
            continue;
        }
        for g in 0..table.order() {
            let mut x = g;
            let mut walk = Vec::with_capacity(word.len());
            for &l in word {
                let y = table.step(x, l);
                walk.push(b.cayley[&(p.letters[l].pair, x, y)]);
                x = y;
            }
            debug_assert_eq!(x, g);
            if let Some(f) = add_face(
                &mut b,
                format!("r{ri}:{}", element_name(g)),
                walk,
                "relator",
            ) {
                relator_faces.push(f);
            }
        }
    }
    for (si, s) in p.subgroups.iter().enumerate() {
        let members: BTreeSet<usize> = left_cosets(&table, &s.generators)
            .into_iter()
            .find(|c| c[0] == 0)
            .unwrap_or_default()
            .into_iter()
            .collect();
        // S ∩ P by membership, not just the declared generators.
        let in_p: Vec<usize> = (0..p.letters.len())
            .filter(|&l| members.contains(&table.step(0, l)))
            .collect();
        for g in 0..table.order() {
            for &l in &in_p {
                let h = table.step(g, l);
                if h == g {
                    continue;
                }
                let walk = vec![
                    b.cayley[&(p.letters[l].pair, g, h)],
                    (Sign::Plus, b.cone[&(si, h)]),
                    (Sign::Minus, b.cone[&(si, g)]),
                ];
                let name = format!("t:{}:{}:{}", s.name, p.letters[l].name, element_name(g));
                if let Some(f) = add_face(&mut b, name, walk, "triangle") {
                    triangle_faces.push(f);
                }
            }
        }
    }
    finish(b, table, relator_faces, triangle_faces)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::homology::homology_h1;

    pub(crate) const S3: &str = "group v1
degree 3
gen a (1 2)
gen b (1 2 3)
sgen a a
sgen b B
subgroup P a
relator a a
relator b b b
relator a b a b
";

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega_n(&families::cycle_graph(3), 3).unwrap().num_faces(),
            1
        );
        assert_eq!(
            omega_n(&families::complete_graph(4), 3)
                .unwrap()
                .num_faces(),
            4
        );
        assert_eq!(omega_n(&families::path_graph(5), 5).unwrap().num_faces(), 0);
        assert!(matches!(
            omega_n(&families::triangle_disk(), 3),
            Err(Error::HasFaces)
        ));
    }

    #[test]
    fn omega_at_vertex_count_kills_homology() {
        for g in [
            families::complete_graph(4),
            families::petersen_graph(),
            families::cube_graph(),
            families::theta_graph(2, 3, 4),
            families::bigon_graph(),
        ] {
            let n = g.num_vertices();
            assert!(homology_h1(&omega_n(&g, n).unwrap()).is_trivial());
        }
    }

    #[test]
    fn cycle_notation() {
        let p = Perm::parse_cycles("(1 2 3)", 4).unwrap();
        assert_eq!(p.to_string(), "(1 2 3)");
        assert_eq!(p.then(&p).then(&p), Perm::identity(4));
        assert_eq!(Perm::parse_cycles("()", 2).unwrap(), Perm::identity(2));
        assert!(Perm::parse_cycles("(1 5)", 4).is_err());
        assert!(Perm::parse_cycles("(1 2)(2 3)", 4).is_err());
        // Right action: (1 2) then (1 2 3) sends 1 -> 2 -> 3.
        let a = Perm::parse_cycles("(1 2)", 3).unwrap();
        let b = Perm::parse_cycles("(1 2 3)", 3).unwrap();
        assert_eq!(a.then(&b).image(0), 2);
    }

    #[test]
    fn closures() {
        let p = parse_group(S3).unwrap();
        assert_eq!(group_closure(&p, DEFAULT_GROUP_CAP).unwrap().order(), 6);
        let trivial = parse_group("group v1\ndegree 1\n").unwrap();
        assert_eq!(
            group_closure(&trivial, DEFAULT_GROUP_CAP).unwrap().order(),
            1
        );
        let z4 = parse_group("group v1\ndegree 4\ngen a (1 2 3 4)\nsgen a A\nrelator a a a a\n")
            .unwrap();
        assert_eq!(group_closure(&z4, DEFAULT_GROUP_CAP).unwrap().order(), 4);
        assert!(matches!(
            group_closure(&z4, 3),
            Err(Error::CapExceeded { .. })
        ));
        let bad =
            parse_group("group v1\ndegree 4\ngen a (1 2 3 4)\nsgen a A\nrelator a a\n").unwrap();
        assert!(matches!(
            group_closure(&bad, 100),
            Err(Error::RelatorFails(_))
        ));
    }

    #[test]
    fn group_format_round_trip() {
        let p = parse_group(S3).unwrap();
        assert_eq!(parse_group(&write_group(&p)).unwrap(), p);
        assert!(parse_group("group v1\ndegree 3\ngen a (1 2 3)\nsgen a a\n").is_err());
        assert!(parse_group("group v1\ndegree 3\ngen a (1 2)\nsgen b b\n").is_err());
    }

    #[test]
    fn s3_coned_off_graph() {
        let p = parse_group(S3).unwrap();
        let c = coned_off_cayley_graph(&p, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(c.complex.num_vertices(), 9);
        assert_eq!(c.cone_vertices.len(), 3);
        assert!(c.cone_vertices.iter().all(|v| v.members.len() == 2));
        assert_eq!(c.cayley_edges.len(), 9);
        assert_eq!(c.cone_edges.len(), 6);
    }

    #[test]
    fn z4_relator_face_is_identified_once() {
        let z4 = parse_group("group v1\ndegree 4\ngen a (1 2 3 4)\nsgen a A\nrelator a a a a\n")
            .unwrap();
        let c = coned_off_cayley_complex(&z4, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(c.complex.num_vertices(), 4);
        assert_eq!(c.complex.num_edges(), 4);
        assert_eq!(c.complex.num_faces(), 1);
    }

    #[test]
    fn s3_coned_off_complex() {
        let p = parse_group(S3).unwrap();
        let c = coned_off_cayley_complex(&p, DEFAULT_GROUP_CAP).unwrap();
        assert_eq!(c.triangle_faces.len(), 3);
        assert_eq!(c.relator_faces.len(), 5);
        let x = &c.complex;
        assert_eq!((x.num_vertices(), x.num_edges(), x.num_faces()), (9, 15, 8));
        assert_eq!(homology_h1(x).betti1, 0);
    }

    #[test]
    fn freely_trivial_words() {
        let p = parse_group(S3).unwrap();
        let a = p.letter_by_name("a").unwrap();
        let b = p.letter_by_name("b").unwrap();
        let bi = p.letter_by_name("B").unwrap();
        assert!(p.freely_trivial(&[a, a]));
        assert!(p.freely_trivial(&[b, a, a, bi]));
        assert!(!p.freely_trivial(&[b, b, b]));
    }
}
