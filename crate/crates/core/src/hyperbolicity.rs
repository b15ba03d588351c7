//! Gromov's four-point constant of a finite connected graph.
//!
//! For a quadruple `x, y, z, w` form the three pair sums
//! `d(x,y)+d(z,w)`, `d(x,z)+d(y,w)`, `d(x,w)+d(y,z)`; the quadruple's value is
//! half the gap between the two largest. `δ` is the maximum over quadruples.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::complex::{TwoComplex, VertexId};
use crate::error::{Error, Result};
use crate::number::{format_rational, rat, Rational};

pub const DEFAULT_VERTEX_CAP: usize = 400;

/// Unit-length distances between all vertex pairs, by breadth-first search.
pub fn all_pairs_distances(graph: &TwoComplex) -> Result<Vec<Vec<u32>>> {
    let n = graph.num_vertices();
    let adj = graph.adjacency();
    let rows: Vec<Option<Vec<u32>>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let mut dist = vec![u32::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &adj[v] {
                    if dist[w] == u32::MAX {
                        dist[w] = dist[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
            dist.iter().all(|&d| d != u32::MAX).then_some(dist)
        })
        .collect();
    rows.into_iter()
        .collect::<Option<_>>()
        .ok_or(Error::Disconnected)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaReport {
    pub delta: Rational,
    /// Lexicographically least quadruple `x ≤ y ≤ z ≤ w` attaining `delta`.
    pub witness: [VertexId; 4],
    pub vertices: usize,
    pub diameter: u32,
}

impl DeltaReport {
    pub fn to_tsv(&self, graph: &TwoComplex) -> String {
        let names: Vec<&str> = self.witness.iter().map(|&v| graph.vertex_name(v)).collect();
        format!(
            "delta\t{}\t{}\n",
            format_rational(&self.delta),
            names.join(",")
        )
    }
}

/// Twice the four-point value of one quadruple.
pub fn quadruple_gap(d: &[Vec<u32>], x: usize, y: usize, z: usize, w: usize) -> u32 {
    let mut s = [d[x][y] + d[z][w], d[x][z] + d[y][w], d[x][w] + d[y][z]];
    s.sort_unstable();
    s[2] - s[1]
}

pub fn hyperbolicity_delta(graph: &TwoComplex) -> Result<DeltaReport> {
    hyperbolicity_delta_capped(graph, DEFAULT_VERTEX_CAP)
}

pub fn hyperbolicity_delta_capped(graph: &TwoComplex, cap: usize) -> Result<DeltaReport> {
    let n = graph.num_vertices();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "vertex count for the quadruple scan",
            cap,
        });
    }
    if n == 0 {
        return Err(Error::Disconnected);
    }
    let d = all_pairs_distances(graph)?;
    let diameter = d.iter().flatten().copied().max().unwrap_or(0);
    // Per first vertex: best gap and the first quadruple reaching it.
    let best = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut best = (0u32, [x, x, x, x]);
            for y in x..n {
                for z in y..n {
                    for w in z..n {
                        let g = quadruple_gap(&d, x, y, z, w);
                        if g > best.0 {
                            best = (g, [x, y, z, w]);
                        }
                    }
                }
            }
            best
        })
        .collect::<Vec<_>>()
        .into_iter()
        .fold(
            (0u32, [0, 0, 0, 0]),
            |acc, b| if b.0 > acc.0 { b } else { acc },
        );
    Ok(DeltaReport {
        delta: rat(best.0 as i64, 2),
        witness: best.1,
        vertices: n,
        diameter,
    })
}
