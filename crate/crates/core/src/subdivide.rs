//! Midpoint and barycentric subdivision with cell provenance.

use crate::chain::Chain;
use crate::complex::{validate, RawComplex, Sign, SignedEdge, TwoComplex};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubdivisionMode {
    /// Insert a vertex at the midpoint of every edge.
    Midpoint,
    /// Midpoints plus a barycenter per face, coned to every corner and midpoint of its walk.
    Barycentric,
}

/// A cell of the original complex, by dimension and index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellRef {
    pub dim: u8,
    pub index: usize,
}

#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: TwoComplex,
    pub vertex_origin: Vec<CellRef>,
    pub edge_origin: Vec<CellRef>,
    pub face_origin: Vec<CellRef>,
    /// For each original edge, its two halves (tail half, head half).
    halves: Vec<(usize, usize)>,
}

impl Subdivision {
    /// Image of a 1-chain under the subdivision chain map `e ↦ e_tail + e_head`.
    pub fn map_1chain(&self, chain: &Chain) -> Chain {
        let mut out = Chain::zero(1, chain.ring());
        for (&e, c) in chain.terms() {
            let (a, b) = self.halves[e];
            out.add_term(a, c.clone());
            out.add_term(b, c.clone());
        }
        out
    }
}

pub fn subdivide(complex: &TwoComplex, mode: SubdivisionMode) -> Result<Subdivision> {
    let mut raw = RawComplex::new();
    let mut vertex_origin = Vec::new();
    let mut edge_origin = Vec::new();
    let mut face_origin = Vec::new();

    for (i, v) in complex.vertex_names().iter().enumerate() {
        raw.vertex(v.clone());
        vertex_origin.push(CellRef { dim: 0, index: i });
    }
    let edge_name = |e: usize| complex.edge(e).id.clone();
    let mut halves = Vec::new();
    for (i, e) in complex.edges().iter().enumerate() {
        let mid = format!("m[{}]", e.id);
        raw.vertex(mid.clone());
        vertex_origin.push(CellRef { dim: 1, index: i });
        raw.edge(
            format!("{}/0", e.id),
            complex.vertex_name(e.tail).to_string(),
            mid.clone(),
        );
        raw.edge(
            format!("{}/1", e.id),
            mid,
            complex.vertex_name(e.head).to_string(),
        );
        edge_origin.push(CellRef { dim: 1, index: i });
        edge_origin.push(CellRef { dim: 1, index: i });
        halves.push((2 * i, 2 * i + 1));
    }
    // Halves of a signed edge in traversal order.
    let split = |s: SignedEdge| -> [(Sign, String); 2] {
        let id = edge_name(s.edge);
        match s.sign {
            Sign::Plus => [
                (Sign::Plus, format!("{id}/0")),
                (Sign::Plus, format!("{id}/1")),
            ],
            Sign::Minus => [
                (Sign::Minus, format!("{id}/1")),
                (Sign::Minus, format!("{id}/0")),
            ],
        }
    };

    match mode {
        SubdivisionMode::Midpoint => {
            for (i, f) in complex.faces().iter().enumerate() {
                let walk = f.walk.iter().flat_map(|&s| split(s)).collect();
                raw.face_signed(f.id.clone(), walk);
                face_origin.push(CellRef { dim: 2, index: i });
            }
        }
        SubdivisionMode::Barycentric => {
            for (fi, f) in complex.faces().iter().enumerate() {
                let bary = format!("b[{}]", f.id);
                raw.vertex(bary.clone());
                vertex_origin.push(CellRef { dim: 2, index: fi });
                let len = f.walk.len();
                for (i, &s) in f.walk.iter().enumerate() {
                    let corner = complex.endpoints(s).0;
                    raw.edge(
                        format!("{}/c{i}", f.id),
                        bary.clone(),
                        complex.vertex_name(corner).to_string(),
                    );
                    raw.edge(
                        format!("{}/m{i}", f.id),
                        bary.clone(),
                        format!("m[{}]", edge_name(s.edge)),
                    );
                    edge_origin.push(CellRef { dim: 2, index: fi });
                    edge_origin.push(CellRef { dim: 2, index: fi });
                }
                for (i, &s) in f.walk.iter().enumerate() {
                    let [first, second] = split(s);
                    let next = (i + 1) % len;
                    raw.face_signed(
                        format!("{}/t{i}a", f.id),
                        vec![
                            first,
                            (Sign::Minus, format!("{}/m{i}", f.id)),
                            (Sign::Plus, format!("{}/c{i}", f.id)),
                        ],
                    );
                    raw.face_signed(
                        format!("{}/t{i}b", f.id),
                        vec![
                            second,
                            (Sign::Minus, format!("{}/c{next}", f.id)),
                            (Sign::Plus, format!("{}/m{i}", f.id)),
                        ],
                    );
                    face_origin.push(CellRef { dim: 2, index: fi });
                    face_origin.push(CellRef { dim: 2, index: fi });
                }
            }
        }
    }

    let sub = validate(&raw)?;
    // validate keeps declaration order, so the provenance vectors line up.
    debug_assert_eq!(sub.num_vertices(), vertex_origin.len());
    debug_assert_eq!(sub.num_edges(), edge_origin.len());
    debug_assert_eq!(sub.num_faces(), face_origin.len());
    Ok(Subdivision {
        complex: sub,
        vertex_origin,
        edge_origin,
        face_origin,
        halves,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Ring;
    use crate::complex::{boundary, l1_norm};
    use crate::families;
    use crate::homology::homology_h1;
    use crate::number::int;

    #[test]
    fn midpoint_of_triangle_graph() {
        let s = subdivide(&families::cycle_graph(3), SubdivisionMode::Midpoint).unwrap();
        assert_eq!(s.complex.num_vertices(), 6);
        assert_eq!(s.complex.num_edges(), 6);
    }

    #[test]
    fn barycentric_triangle_gives_six_triangles() {
        let s = subdivide(&families::triangle_disk(), SubdivisionMode::Barycentric).unwrap();
        assert_eq!(s.complex.num_faces(), 6);
        assert!(s.complex.faces().iter().all(|f| f.walk.len() == 3));
        assert_eq!(s.face_origin, vec![CellRef { dim: 2, index: 0 }; 6]);
    }

    #[test]
    fn barycentric_double_traversal_keeps_torsion() {
        let x = families::double_traversal();
        let s = subdivide(&x, SubdivisionMode::Barycentric).unwrap();
        assert_eq!(s.complex.num_faces(), 4);
        assert_eq!(homology_h1(&s.complex), homology_h1(&x));
    }

    #[test]
    fn subdivided_face_sum_bounds_the_subdivided_walk() {
        for (name, x) in families::named_complexes() {
            let s = subdivide(&x, SubdivisionMode::Barycentric).unwrap();
            for f in 0..x.num_faces() {
                let mut total = Chain::zero(2, Ring::Int);
                for (g, origin) in s.face_origin.iter().enumerate() {
                    if origin.index == f {
                        total.add_term(g, int(1));
                    }
                }
                let lhs = boundary(&s.complex, &total).unwrap();
                let rhs = s.map_1chain(&boundary(&x, &Chain::basis(2, Ring::Int, f)).unwrap());
                assert_eq!(lhs, rhs, "{name} face {f}");
            }
        }
    }

    #[test]
    fn homology_is_preserved_and_midpoint_doubles_norms() {
        for (name, x) in families::named_complexes() {
            let h = homology_h1(&x);
            for mode in [SubdivisionMode::Midpoint, SubdivisionMode::Barycentric] {
                let s = subdivide(&x, mode).unwrap();
                assert_eq!(homology_h1(&s.complex), h, "{name} {mode:?}");
            }
            let s = subdivide(&x, SubdivisionMode::Midpoint).unwrap();
            for c in crate::cycles::enumerate_circuits(&x, None, 4).unwrap() {
                let gamma = c.to_chain();
                let image = s.map_1chain(&gamma);
                assert_eq!(l1_norm(&image), l1_norm(&gamma) * int(2));
                assert!(crate::cycles::is_cycle(&s.complex, &image));
            }
        }
    }
}
