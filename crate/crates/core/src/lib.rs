//! Exact filling norms, homological Dehn functions and circuit censuses for
//! finite combinatorial 2-complexes.
//!
//! All arithmetic is over arbitrary-precision integers and rationals. The
//! main entry points:
//!
//! * [`io::parse_complex`] and [`complex::validate`] build a [`complex::TwoComplex`];
//! * [`filling::filling_norm`] and [`filling::fv`] fill cycles over ℤ or ℚ;
//! * [`fineness::fineness_certificate`] counts circuits per edge two ways;
//! * [`constructions`] builds `Ω_n(Γ)` and coned-off Cayley complexes;
//! * [`hyperbolicity::hyperbolicity_delta`] computes the four-point constant.
//!
//! ```
//! use finefill::chain::{Chain, Ring};
//! use finefill::families;
//! use finefill::filling::filling_norm;
//!
//! let x = families::triangle_disk();
//! let boundary = Chain::from_ints(1, [(0, 1), (1, 1), (2, 1)]);
//! let r = filling_norm(&x, &boundary, Ring::Int).unwrap();
//! assert_eq!(r.value.to_string(), "1");
//! ```

pub mod chain;
pub mod cli;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod cycles;
pub mod error;
pub mod families;
pub mod filling;
pub mod fineness;
pub mod homology;
pub mod hyperbolicity;
pub mod io;
pub mod lp;
pub mod normal_form;
pub mod number;
pub mod subdivide;

// The guide's code blocks run as doc-tests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/complexes.md")]
    pub struct Complexes;
    #[doc = include_str!("../../../book/src/cycles.md")]
    pub struct Cycles;
    #[doc = include_str!("../../../book/src/fillings.md")]
    pub struct Fillings;
    #[doc = include_str!("../../../book/src/fineness.md")]
    pub struct Fineness;
    #[doc = include_str!("../../../book/src/constructions.md")]
    pub struct Constructions;
    #[doc = include_str!("../../../book/src/hyperbolicity.md")]
    pub struct Hyperbolicity;
    #[doc = include_str!("../../../book/src/cli.md")]
    pub struct Cli;
}
