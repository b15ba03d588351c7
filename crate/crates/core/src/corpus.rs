//! Property checks over a directory of `.cx`, `.grp` and `.cy` files.
//!
//! Cycle files are matched to complexes by stem: `foo.bar.cy` is read against
//! `foo.cx`.

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::chain::{Chain, Ring};
use crate::complex::{boundary, l1_norm, TwoComplex};
use crate::constructions::{coned_off_cayley_complex, parse_group, write_group, DEFAULT_GROUP_CAP};
use crate::cycles::{
    decompose_into_circuits, disjoint_cycle_split, enumerate_circuits, is_cycle, random_cycle,
};
use crate::error::Result;
use crate::filling::{fv_with, verify_filling, FillingSolver};
use crate::fineness::check_minimal_fillings_special;
use crate::homology::homology_h1;
use crate::hyperbolicity::all_pairs_distances;
use crate::io::{parse_chain, parse_complex, write_complex};
use crate::subdivide::{subdivide, SubdivisionMode};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckLine {
    pub passed: bool,
    pub file: String,
    pub check: String,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CorpusReport {
    pub lines: Vec<CheckLine>,
}

impl CorpusReport {
    fn record(&mut self, file: &str, check: &str, outcome: std::result::Result<String, String>) {
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        self.lines.push(CheckLine {
            passed,
            file: file.to_string(),
            check: check.to_string(),
            detail,
        });
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.passed).count()
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        for l in &self.lines {
            let tag = if l.passed { "PASS" } else { "FAIL" };
            out.push_str(&format!("{tag}\t{}\t{}\t{}\n", l.file, l.check, l.detail));
        }
        out.push_str(&format!(
            "summary\tpassed\t{}\tfailed\t{}\n",
            self.lines.len() - self.failures(),
            self.failures()
        ));
        out
    }
}

pub const CORPUS_KMAX: usize = 4;

fn ensure(
    cond: bool,
    ok: impl Into<String>,
    err: impl Into<String>,
) -> std::result::Result<String, String> {
    if cond {
        Ok(ok.into())
    } else {
        Err(err.into())
    }
}

/// Runs every check on every file of `dir`, in file-name order.
pub fn run_corpus(dir: &Path, seed: u64) -> Result<CorpusReport> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file())
        .collect();
    paths.sort();
    let mut report = CorpusReport::default();
    for path in &paths {
        let name = path.file_name().unwrap().to_string_lossy().to_string();
        let text = fs::read_to_string(path)?;
        match path.extension().and_then(|e| e.to_str()) {
            Some("cx") => match parse_complex(&text) {
                Ok(x) => check_complex(&mut report, &name, &x, seed),
                Err(e) => report.record(&name, "parse", Err(e.to_string())),
            },
            Some("grp") => check_group(&mut report, &name, &text),
            Some("cy") => check_cycle_file(&mut report, dir, &name, &text),
            _ => {}
        }
    }
    Ok(report)
}

fn check_complex(report: &mut CorpusReport, name: &str, x: &TwoComplex, seed: u64) {
    report.record(
        name,
        "round_trip",
        ensure(
            parse_complex(&write_complex(x)).ok().as_ref() == Some(x),
            "",
            "re-read differs",
        ),
    );

    let dd = (0..x.num_faces()).all(|f| {
        let b = boundary(x, &Chain::basis(2, Ring::Int, f)).unwrap();
        boundary(x, &b).unwrap().is_zero()
    });
    report.record(name, "boundary_squared_zero", ensure(dd, "", "nonzero"));

    let h = homology_h1(x);
    for mode in [SubdivisionMode::Midpoint, SubdivisionMode::Barycentric] {
        let outcome = subdivide(x, mode).map_err(|e| e.to_string()).and_then(|s| {
            ensure(
                homology_h1(&s.complex) == h,
                format!("{h}").replace('\n', " "),
                "H1 changed",
            )
        });
        report.record(
            name,
            &format!("h1_invariant_{mode:?}").to_lowercase(),
            outcome,
        );
    }

    let solver = FillingSolver::new(x);
    let z = fv_with(&solver, CORPUS_KMAX, Ring::Int);
    let q = fv_with(&solver, CORPUS_KMAX, Ring::Rat);
    let monotone = z.entries.windows(2).all(|w| w[0].value <= w[1].value)
        && q.entries.windows(2).all(|w| w[0].value <= w[1].value)
        && z.entries[0]
            .value
            .finite()
            .is_some_and(|v| v == &crate::number::int(0));
    report.record(name, "fv_monotone", ensure(monotone, "", "table decreases"));
    let dominated = (0..=CORPUS_KMAX).all(|k| q.value(k) <= z.value(k));
    let values: Vec<String> = z.values().iter().map(|v| v.to_string()).collect();
    report.record(
        name,
        "fv_rational_below_integral",
        ensure(dominated, values.join(","), "FV_Q exceeds FV_Z"),
    );
    let witnesses = z
        .entries
        .iter()
        .chain(&q.entries)
        .all(|e| solver.filling_norm(&e.witness, z.ring).is_ok());
    report.record(
        name,
        "fv_witnesses_are_cycles",
        ensure(witnesses, "", "bad witness"),
    );

    let circuits = enumerate_circuits(x, None, x.num_edges().min(8)).unwrap_or_default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut decomposition_ok = true;
    let mut triangle_ok = true;
    for _ in 0..200 {
        let gamma = random_cycle(&circuits, &mut rng, 4, 2);
        let Ok(parts) = decompose_into_circuits(x, &gamma) else {
            decomposition_ok = false;
            break;
        };
        let sum = parts
            .iter()
            .fold(Chain::zero(1, Ring::Int), |acc, p| acc.add(p));
        let norms: crate::number::Rational = parts.iter().map(l1_norm).sum();
        decomposition_ok &= sum == gamma && norms == l1_norm(&gamma);
        if l1_norm(&gamma) <= crate::number::int(8) {
            for ring in [Ring::Int, Ring::Rat] {
                let whole = solver.fill_sparse(&gamma.to_ints().unwrap(), ring);
                triangle_ok &= verify_filling(x, &gamma, &whole);
                let total = parts
                    .iter()
                    .fold(crate::number::Extended::zero(), |acc, p| {
                        &acc + &solver.fill_sparse(&p.to_ints().unwrap(), ring).value
                    });
                triangle_ok &= whole.value <= total;
            }
        }
    }
    report.record(
        name,
        "circuit_decomposition",
        ensure(decomposition_ok, "200 cycles", "failed"),
    );
    report.record(
        name,
        "filling_triangle_inequality",
        ensure(triangle_ok, "", "violated"),
    );

    if x.num_edges() <= 12 {
        let split = circuits
            .iter()
            .find_map(|c| disjoint_cycle_split(x, &c.to_chain()));
        report.record(
            name,
            "circuits_have_no_disjoint_split",
            ensure(
                split.is_none(),
                format!("{} circuits", circuits.len()),
                "split found",
            ),
        );
    }

    if h.is_trivial() && x.num_faces() <= 6 && x.num_faces() > 0 {
        let mut ok = true;
        let mut checked = 0;
        for c in enumerate_circuits(x, None, x.num_edges()).unwrap_or_default() {
            let gamma = c.to_chain();
            for e in gamma.support().collect::<Vec<_>>() {
                match check_minimal_fillings_special(x, &gamma, e) {
                    Ok(r) => {
                        ok &= r.holds;
                        checked += r.fillings.len();
                    }
                    Err(_) => ok = false,
                }
            }
        }
        report.record(
            name,
            "minimal_fillings_special",
            ensure(
                ok,
                format!("{checked} fillings"),
                "a minimal filling has no special ordering",
            ),
        );
    }
}

fn check_group(report: &mut CorpusReport, name: &str, text: &str) {
    let p = match parse_group(text) {
        Ok(p) => p,
        Err(e) => return report.record(name, "parse", Err(e.to_string())),
    };
    report.record(
        name,
        "round_trip",
        ensure(
            parse_group(&write_group(&p)).ok().as_ref() == Some(&p),
            "",
            "re-read differs",
        ),
    );
    let c = match coned_off_cayley_complex(&p, DEFAULT_GROUP_CAP) {
        Ok(c) => c,
        Err(e) => return report.record(name, "construct", Err(e.to_string())),
    };
    let x = &c.complex;
    let cone_edges: BTreeSet<usize> = c.cone_edges.iter().copied().collect();
    let degree_ok = c.element_vertices.iter().all(|&v| {
        x.adjacency()[v]
            .iter()
            .filter(|(_, s)| cone_edges.contains(&s.edge))
            .count()
            == p.subgroups.len()
    });
    report.record(
        name,
        "cone_degree",
        ensure(degree_ok, "", "wrong cone degree"),
    );
    let cayley_ok = c.cayley_edges.len() + c.cone_edges.len() == x.num_edges()
        && c.cayley_edges.iter().all(|&e| {
            let edge = x.edge(e);
            edge.tail < c.group.order() && edge.head < c.group.order()
        });
    report.record(
        name,
        "cayley_graph_recovered",
        ensure(cayley_ok, "", "stray edge"),
    );
    let coset_ok = match all_pairs_distances(x) {
        Ok(d) => c.cone_vertices.iter().all(|cv| {
            cv.members
                .iter()
                .all(|&g| cv.members.iter().all(|&h| d[g][h] <= 2))
        }),
        Err(_) => false,
    };
    report.record(
        name,
        "same_coset_distance",
        ensure(coset_ok, "", "coset pair farther than 2"),
    );
    let h = homology_h1(x);
    report.record(
        name,
        "census",
        Ok(format!(
            "order {} vertices {} edges {} faces {} betti1 {}",
            c.group.order(),
            x.num_vertices(),
            x.num_edges(),
            x.num_faces(),
            h.betti1
        )),
    );
}

fn check_cycle_file(report: &mut CorpusReport, dir: &Path, name: &str, text: &str) {
    let stem = name.split('.').next().unwrap_or(name);
    let cx = dir.join(format!("{stem}.cx"));
    let outcome = (|| -> std::result::Result<String, String> {
        let x = parse_complex(&fs::read_to_string(&cx).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let chain = parse_chain(text)
            .and_then(|c| c.resolve(&x))
            .map_err(|e| e.to_string())?;
        if !is_cycle(&x, &chain) {
            return Err("not a cycle".into());
        }
        let solver = FillingSolver::new(&x);
        let z = solver
            .filling_norm(&chain, Ring::Int)
            .map_err(|e| e.to_string())?;
        let q = solver
            .filling_norm(&chain, Ring::Rat)
            .map_err(|e| e.to_string())?;
        ensure(
            verify_filling(&x, &chain, &z) && verify_filling(&x, &chain, &q) && q.value <= z.value,
            format!("Z {} Q {}", z.value, q.value),
            "filling check failed",
        )
    })();
    report.record(name, "fill", outcome);
}
