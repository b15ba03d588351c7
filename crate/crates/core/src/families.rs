//! Small standard complexes and graphs.

use rand::Rng;

use crate::complex::{validate, RawComplex, TwoComplex};

fn build(raw: &RawComplex) -> TwoComplex {
    validate(raw).expect("family constructions are valid")
}

fn graph_from_pairs(n: usize, pairs: &[(usize, usize)]) -> TwoComplex {
    let mut raw = RawComplex::new();
    for v in 0..n {
        raw.vertex(format!("v{v}"));
    }
    for (i, &(a, b)) in pairs.iter().enumerate() {
        raw.edge(format!("e{}", i + 1), format!("v{a}"), format!("v{b}"));
    }
    build(&raw)
}

/// The cycle graph `C_n` with edges `e1: v0→v1, …, en: v(n-1)→v0`.
pub fn cycle_graph(n: usize) -> TwoComplex {
    let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    graph_from_pairs(n, &pairs)
}

pub fn path_graph(n: usize) -> TwoComplex {
    let pairs: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    graph_from_pairs(n, &pairs)
}

pub fn complete_graph(n: usize) -> TwoComplex {
    let mut pairs = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            pairs.push((a, b));
        }
    }
    graph_from_pairs(n, &pairs)
}

pub fn complete_bipartite(m: usize, n: usize) -> TwoComplex {
    let mut pairs = Vec::new();
    for a in 0..m {
        for b in 0..n {
            pairs.push((a, m + b));
        }
    }
    graph_from_pairs(m + n, &pairs)
}

/// Hub `v0` joined to a rim cycle `v1 … vn`.
pub fn wheel_graph(n: usize) -> TwoComplex {
    let mut pairs: Vec<_> = (1..=n).map(|i| (i, i % n + 1)).collect();
    pairs.extend((1..=n).map(|i| (0, i)));
    graph_from_pairs(n + 1, &pairs)
}

pub fn grid_graph(rows: usize, cols: usize) -> TwoComplex {
    let id = |r: usize, c: usize| r * cols + c;
    let mut pairs = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                pairs.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                pairs.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    graph_from_pairs(rows * cols, &pairs)
}

pub fn cube_graph() -> TwoComplex {
    let mut pairs = Vec::new();
    for v in 0..8usize {
        for bit in [1, 2, 4] {
            if v & bit == 0 {
                pairs.push((v, v | bit));
            }
        }
    }
    graph_from_pairs(8, &pairs)
}

pub fn petersen_graph() -> TwoComplex {
    let mut pairs = Vec::new();
    for i in 0..5 {
        pairs.push((i, (i + 1) % 5));
        pairs.push((i, i + 5));
        pairs.push((i + 5, (i + 2) % 5 + 5));
    }
    graph_from_pairs(10, &pairs)
}

/// Two cycles `C_a`, `C_b` sharing the vertex `v0`.
pub fn bouquet_of_cycles(a: usize, b: usize) -> TwoComplex {
    let mut pairs: Vec<_> = (0..a).map(|i| (i, (i + 1) % a)).collect();
    let n = a + b - 1;
    let second: Vec<usize> = std::iter::once(0).chain(a..n).collect();
    for i in 0..b {
        pairs.push((second[i], second[(i + 1) % b]));
    }
    graph_from_pairs(n, &pairs)
}

/// Two triangles sharing a vertex.
pub fn figure_eight() -> TwoComplex {
    bouquet_of_cycles(3, 3)
}

/// The hexagon `C_6` with the long chord `v0 – v3`, splitting it into two squares.
pub fn hexagon_with_chord() -> TwoComplex {
    let mut pairs: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
    pairs.push((0, 3));
    graph_from_pairs(6, &pairs)
}

/// Two poles joined by three internally disjoint paths of lengths `a`, `b`, `c`.
pub fn theta_graph(a: usize, b: usize, c: usize) -> TwoComplex {
    let mut pairs = Vec::new();
    let mut next = 2;
    for len in [a, b, c] {
        let mut prev = 0;
        for _ in 1..len {
            pairs.push((prev, next));
            prev = next;
            next += 1;
        }
        pairs.push((prev, 1));
    }
    graph_from_pairs(next, &pairs)
}

/// Two parallel edges between two vertices.
pub fn bigon_graph() -> TwoComplex {
    graph_from_pairs(2, &[(0, 1), (0, 1)])
}

/// A uniformly random labelled tree via a random parent for each vertex.
pub fn random_tree<R: Rng>(n: usize, rng: &mut R) -> TwoComplex {
    let pairs: Vec<_> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    graph_from_pairs(n, &pairs)
}

/// A single triangle `e1 e2 e3` bounding one face `f`.
pub fn triangle_disk() -> TwoComplex {
    let mut raw = RawComplex::new();
    raw.vertex("v0").vertex("v1").vertex("v2");
    raw.edge("e1", "v0", "v1")
        .edge("e2", "v1", "v2")
        .edge("e3", "v2", "v0");
    raw.face("f", &["+e1", "+e2", "+e3"]);
    build(&raw)
}

/// An `n`-gon bounding one face.
pub fn polygon_disk(n: usize) -> TwoComplex {
    let mut raw = cycle_graph(n).to_raw();
    let walk: Vec<String> = (1..=n).map(|i| format!("+e{i}")).collect();
    let walk: Vec<&str> = walk.iter().map(|s| s.as_str()).collect();
    raw.face("f", &walk);
    build(&raw)
}

/// A square `v0 v1 v2 v3` cut by the diagonal `d: v0→v2` into two triangles.
pub fn square_disk() -> TwoComplex {
    let mut raw = cycle_graph(4).to_raw();
    raw.edge("d", "v0", "v2");
    raw.face("t1", &["+e1", "+e2", "-d"]);
    raw.face("t2", &["+d", "+e3", "+e4"]);
    build(&raw)
}

/// Boundary of the 3-simplex: 4 vertices, 6 edges, 4 triangles.
pub fn tetrahedron() -> TwoComplex {
    let mut raw = RawComplex::new();
    for v in 0..4 {
        raw.vertex(format!("v{v}"));
    }
    for a in 0..4 {
        for b in a + 1..4 {
            raw.edge(format!("e{a}{b}"), format!("v{a}"), format!("v{b}"));
        }
    }
    for (name, (a, b, c)) in [
        ("f123", (1, 2, 3)),
        ("f023", (0, 2, 3)),
        ("f013", (0, 1, 3)),
        ("f012", (0, 1, 2)),
    ] {
        let walk = [
            format!("+e{a}{b}"),
            format!("+e{b}{c}"),
            format!("-e{a}{c}"),
        ];
        let walk: Vec<&str> = walk.iter().map(|s| s.as_str()).collect();
        raw.face(name, &walk);
    }
    build(&raw)
}

/// Boundary of the octahedron: 6 vertices, 12 edges, 8 triangles.
pub fn octahedron() -> TwoComplex {
    // Poles n, s; equator q0..q3.
    let mut raw = RawComplex::new();
    for v in ["n", "s", "q0", "q1", "q2", "q3"] {
        raw.vertex(v);
    }
    for i in 0..4 {
        raw.edge(
            format!("a{i}"),
            format!("q{i}"),
            format!("q{}", (i + 1) % 4),
        );
        raw.edge(format!("n{i}"), "n", format!("q{i}"));
        raw.edge(format!("s{i}"), "s", format!("q{i}"));
    }
    for i in 0..4 {
        let j = (i + 1) % 4;
        let up = [format!("+n{i}"), format!("+a{i}"), format!("-n{j}")];
        let down = [format!("+s{j}"), format!("-a{i}"), format!("-s{i}")];
        let up: Vec<&str> = up.iter().map(|s| s.as_str()).collect();
        let down: Vec<&str> = down.iter().map(|s| s.as_str()).collect();
        raw.face(format!("u{i}"), &up);
        raw.face(format!("d{i}"), &down);
    }
    build(&raw)
}

/// One vertex, one loop `e`, one face `f` attached along `e·e`: `∂f = 2e`.
pub fn double_traversal() -> TwoComplex {
    let mut raw = RawComplex::new();
    raw.vertex("v");
    raw.edge("e", "v", "v");
    raw.face("f", &["+e", "+e"]);
    build(&raw)
}

/// The one-vertex torus `a b a⁻¹ b⁻¹`.
pub fn torus() -> TwoComplex {
    let mut raw = RawComplex::new();
    raw.vertex("v");
    raw.edge("a", "v", "v").edge("b", "v", "v");
    raw.face("f", &["+a", "+b", "-a", "-b"]);
    build(&raw)
}

/// A triangulated annulus: inner and outer triangles joined by six triangles.
pub fn annulus() -> TwoComplex {
    let mut raw = RawComplex::new();
    for v in ["i0", "i1", "i2", "o0", "o1", "o2"] {
        raw.vertex(v);
    }
    for k in 0..3 {
        let l = (k + 1) % 3;
        raw.edge(format!("i{k}{l}"), format!("i{k}"), format!("i{l}"));
        raw.edge(format!("o{k}{l}"), format!("o{k}"), format!("o{l}"));
        raw.edge(format!("r{k}"), format!("i{k}"), format!("o{k}"));
        raw.edge(format!("s{k}"), format!("i{k}"), format!("o{l}"));
    }
    for k in 0..3 {
        let l = (k + 1) % 3;
        let a = [format!("+r{k}"), format!("+o{k}{l}"), format!("-s{k}")];
        let b = [format!("+i{k}{l}"), format!("+r{l}"), format!("-s{k}")];
        let a: Vec<&str> = a.iter().map(|s| s.as_str()).collect();
        let b: Vec<&str> = b.iter().map(|s| s.as_str()).collect();
        raw.face(format!("a{k}"), &a);
        raw.face(format!("b{k}"), &b);
    }
    build(&raw)
}

/// A cone over the cycle `C_n`: apex `c` joined to every rim vertex, one triangle per rim edge.
pub fn cone_disk(n: usize) -> TwoComplex {
    let mut raw = cycle_graph(n).to_raw();
    raw.vertex("c");
    for i in 0..n {
        raw.edge(format!("s{i}"), "c", format!("v{i}"));
    }
    for i in 0..n {
        let j = (i + 1) % n;
        let w = [format!("+s{i}"), format!("+e{}", i + 1), format!("-s{j}")];
        let w: Vec<&str> = w.iter().map(|s| s.as_str()).collect();
        raw.face(format!("t{i}"), &w);
    }
    build(&raw)
}

/// Named complexes used throughout the tests and the shipped corpus.
pub fn named_complexes() -> Vec<(&'static str, TwoComplex)> {
    vec![
        ("triangle_graph", cycle_graph(3)),
        ("k4_graph", complete_graph(4)),
        ("path5", path_graph(5)),
        ("figure_eight", figure_eight()),
        ("hexagon_chord", hexagon_with_chord()),
        ("triangle_disk", triangle_disk()),
        ("square_disk", square_disk()),
        ("pentagon_disk", polygon_disk(5)),
        ("cone4", cone_disk(4)),
        ("tetrahedron", tetrahedron()),
        ("double_traversal", double_traversal()),
        ("torus", torus()),
        ("annulus", annulus()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn censuses() {
        assert_eq!(tetrahedron().num_edges(), 6);
        assert_eq!(octahedron().num_faces(), 8);
        assert_eq!(petersen_graph().num_edges(), 15);
        assert_eq!(cube_graph().num_edges(), 12);
        assert_eq!(theta_graph(2, 2, 3).num_vertices(), 6);
        assert_eq!(wheel_graph(5).num_edges(), 10);
        assert_eq!(annulus().num_faces(), 6);
        assert_eq!(bouquet_of_cycles(3, 4).num_vertices(), 6);
    }
}
