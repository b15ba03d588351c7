use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::number::{format_rational, Rational};

/// Coefficient ring of a chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Ring {
    Int,
    Rat,
}

impl Ring {
    pub fn tag(self) -> &'static str {
        match self {
            Ring::Int => "INT",
            Ring::Rat => "RAT",
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A finite formal sum of cells of one dimension. Zero coefficients are never
/// stored, so two chains are equal exactly when they are equal as sums.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    dim: u8,
    ring: Ring,
    terms: BTreeMap<usize, Rational>,
}

impl Chain {
    pub fn zero(dim: u8, ring: Ring) -> Self {
        Chain {
            dim,
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(dim: u8, ring: Ring, cell: usize) -> Self {
        let mut c = Chain::zero(dim, ring);
        c.add_term(cell, Rational::from_integer(1.into()));
        c
    }

    /// Builds an integral chain from `(cell, coefficient)` pairs.
    pub fn from_ints(dim: u8, pairs: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut c = Chain::zero(dim, Ring::Int);
        for (cell, k) in pairs {
            c.add_term(cell, Rational::from_integer(k.into()));
        }
        c
    }

    pub fn dim(&self) -> u8 {
        self.dim
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn with_ring(mut self, ring: Ring) -> Self {
        self.ring = ring;
        self
    }

    pub fn terms(&self) -> &BTreeMap<usize, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, cell: usize) -> Rational {
        self.terms
            .get(&cell)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.terms.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, cell: usize, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(cell).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&cell);
        }
    }

    pub fn add(&self, other: &Chain) -> Chain {
        let mut out = self.clone();
        for (&cell, c) in &other.terms {
            out.add_term(cell, c.clone());
        }
        if other.ring == Ring::Rat {
            out.ring = Ring::Rat;
        }
        out
    }

    pub fn sub(&self, other: &Chain) -> Chain {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, r: &Rational) -> Chain {
        let mut out = Chain::zero(self.dim, self.ring);
        if r.is_zero() {
            return out;
        }
        for (&cell, c) in &self.terms {
            out.terms.insert(cell, c * r);
        }
        if !r.is_integer() {
            out.ring = Ring::Rat;
        }
        out
    }

    pub fn neg(&self) -> Chain {
        self.scale(&-Rational::from_integer(1.into()))
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Integer coefficients, if every coefficient is integral and fits `i64`.
    pub fn to_ints(&self) -> Option<Vec<(usize, i64)>> {
        use num_traits::ToPrimitive;
        self.terms
            .iter()
            .map(|(&cell, c)| {
                if c.is_integer() {
                    c.numer().to_i64().map(|k| (cell, k))
                } else {
                    None
                }
            })
            .collect()
    }

    /// Canonical serialization, used as a deduplication key.
    pub fn key(&self) -> String {
        let mut s = String::new();
        for (cell, c) in &self.terms {
            s.push_str(&format!("{cell}:{};", format_rational(c)));
        }
        s
    }

    pub fn max_abs_coefficient(&self) -> Rational {
        self.terms
            .values()
            .map(|c| c.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }
}

/// True iff no cell carries a nonzero coefficient in both chains.
pub fn is_disjoint(a: &Chain, b: &Chain) -> bool {
    let (small, large) = if a.support_len() <= b.support_len() {
        (a, b)
    } else {
        (b, a)
    };
    small.support().all(|c| !large.terms.contains_key(&c))
}
