use std::fmt;

use num_bigint::BigInt;

use crate::complex::TwoComplex;
use crate::normal_form::SmithForm;

/// First integral homology: free rank plus invariant factors of the torsion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub betti1: usize,
    pub torsion: Vec<BigInt>,
}

impl H1Report {
    pub fn is_trivial(&self) -> bool {
        self.betti1 == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for H1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let torsion = if self.torsion.is_empty() {
            "-".to_string()
        } else {
            self.torsion
                .iter()
                .map(|t| t.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        writeln!(f, "betti1\t{}", self.betti1)?;
        write!(f, "torsion\t{torsion}")
    }
}

/// `H_1(X; ℤ) = ker ∂_1 / im ∂_2`, read off from Smith forms of both maps.
pub fn homology_h1(complex: &TwoComplex) -> H1Report {
    let e = complex.num_edges();
    let rank1 = SmithForm::compute(&complex.boundary1_matrix(), e).rank();
    let d2 = SmithForm::compute(&complex.boundary2_matrix(), complex.num_faces());
    H1Report {
        betti1: e - rank1 - d2.rank(),
        torsion: d2.torsion(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn tetrahedron_is_acyclic() {
        let h = homology_h1(&families::tetrahedron());
        assert!(h.is_trivial());
    }

    #[test]
    fn triangle_graph_has_one_loop() {
        let h = homology_h1(&families::cycle_graph(3));
        assert_eq!(h.betti1, 1);
        assert!(h.torsion.is_empty());
    }

    #[test]
    fn double_traversal_has_order_two_torsion() {
        let h = homology_h1(&families::double_traversal());
        assert_eq!(h.betti1, 0);
        assert_eq!(h.torsion, vec![BigInt::from(2)]);
    }

    #[test]
    fn torus_has_rank_two() {
        let h = homology_h1(&families::torus());
        assert_eq!(h.betti1, 2);
        assert!(h.torsion.is_empty());
    }
}
