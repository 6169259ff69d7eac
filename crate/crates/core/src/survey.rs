//! Isomorph-free enumeration at desk scale and the per-class census.
//!
//! Enumeration works by labeled exhaustion plus canonical dedup: every
//! labeled digraph is reduced to the lexicographically minimal row-major
//! adjacency bitstring over all vertex relabelings. That is factorial in
//! the order, which is exactly why the built-in generator stops at order
//! 5; larger orders are read from externally generated digraph6 streams.
//!
//! The census classifies one representative per isomorphism class. With
//! complement pairing enabled, a representative is processed only when
//! its canonical code is no larger than its complement's, and the
//! complement's class is inferred equal — classes are closed under
//! complement — which halves the classification work.

use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::io::{from_digraph6, to_digraph6};
use crate::range::{classify, ClassLabel};

/// Canonical isomorphism-class code: the order together with the
/// minimal row-major adjacency bitstring over all relabelings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode {
    order: usize,
    bits: u64,
}

impl CanonicalCode {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// Materializes the representative digraph of this code.
    pub fn to_digraph(&self) -> Digraph {
        digraph_from_bits(self.order, self.bits)
    }
}

fn digraph_from_bits(n: usize, bits: u64) -> Digraph {
    let mut g = Digraph::new(n).expect("canonical codes exist only for order <= 8");
    let total = n * n;
    for i in 0..n {
        for j in 0..n {
            if i != j && (bits >> (total - 1 - (i * n + j))) & 1 == 1 {
                g.add_edge(i, j).expect("in-range, loop-free");
            }
        }
    }
    g
}

/// Heap's algorithm; calls `f` with each of the `n!` orderings.
fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut arr: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&arr);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                arr.swap(0, i);
            } else {
                arr.swap(c[i], i);
            }
            f(&arr);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

fn code_under_ordering(rows: &[u64], ord: &[usize]) -> u64 {
    let mut code = 0u64;
    for &oi in ord {
        let row = rows[oi];
        for &oj in ord {
            code = (code << 1) | ((row >> oj) & 1);
        }
    }
    code
}

fn canonical_bits(rows: &[u64]) -> u64 {
    let n = rows.len();
    let mut best = u64::MAX;
    for_each_permutation(n, |ord| {
        let code = code_under_ordering(rows, ord);
        if code < best {
            best = code;
        }
    });
    if n == 0 {
        0
    } else {
        best
    }
}

/// Canonical code of `g`; the factorial sweep caps the order at 8.
pub fn canonical_form(g: &Digraph) -> Result<CanonicalCode> {
    let n = g.order();
    if n > 8 {
        return Err(Error::Unsupported(format!(
            "canonical form is limited to order <= 8, got {n}"
        )));
    }
    let rows: Vec<u64> = (0..n)
        .map(|u| (0..n).fold(0u64, |r, v| r | (u64::from(g.has_edge(u, v)) << v)))
        .collect();
    Ok(CanonicalCode { order: n, bits: canonical_bits(&rows) })
}

/// One representative per isomorphism class of digraphs of order `n`,
/// sorted by canonical code. Built-in generation stops at order 5
/// (1,048,576 labeled digraphs, 120 relabelings each); use a digraph6
/// stream for anything larger.
pub fn enumerate_digraphs(n: usize) -> Result<Vec<Digraph>> {
    if n > 5 {
        return Err(Error::Unsupported(format!(
            "built-in enumeration is limited to order <= 5, got {n}; \
             classify a digraph6 stream instead"
        )));
    }
    if n <= 1 {
        return Ok(vec![Digraph::new(n)?]);
    }
    let bits = n * (n - 1);
    let pair_positions: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();

    let mut codes: Vec<u64> = (0u64..1 << bits)
        .into_par_iter()
        .fold(
            Vec::new,
            |mut acc: Vec<u64>, mask| {
                let mut rows = vec![0u64; n];
                for (b, &(u, v)) in pair_positions.iter().enumerate() {
                    if mask & (1 << b) != 0 {
                        rows[u] |= 1 << v;
                    }
                }
                acc.push(canonical_bits(&rows));
                acc
            },
        )
        .map(|mut acc| {
            acc.sort_unstable();
            acc.dedup();
            acc
        })
        .reduce(Vec::new, |mut a, b| {
            a.extend(b);
            a.sort_unstable();
            a.dedup();
            a
        });
    codes.sort_unstable();
    codes.dedup();
    Ok(codes.into_iter().map(|bits| digraph_from_bits(n, bits)).collect())
}

/// Where the census takes its digraphs from.
#[derive(Clone, Debug)]
pub enum CensusSource {
    /// Built-in isomorph-free enumeration, order <= 5.
    Builtin,
    /// digraph6 stream, one digraph per line, trusted to be isomorph-free.
    Stream(std::path::PathBuf),
}

#[derive(Clone, Debug)]
pub struct CensusOptions {
    /// Supporting-line slack; `None` picks the per-order default.
    pub eps: Option<f64>,
    /// Worker threads; 0 uses the global pool.
    pub jobs: usize,
    /// Process a representative only when its canonical code is minimal
    /// over the complement pair, inferring the complement's label.
    /// Automatically disabled beyond order 8, where canonical codes are
    /// unavailable.
    pub complement_pairing: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        Self { eps: None, jobs: 0, complement_pairing: true }
    }
}

/// Per-order census counts.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SurveyReport {
    pub order: usize,
    pub normal: u64,
    pub restricted_normal: u64,
    pub pseudo_normal: u64,
    pub polygonal_total: u64,
    pub digraphs_total: u64,
    pub elapsed_seconds: f64,
    pub source: String,
    /// digraph6 lines of every pseudo-normal digraph encountered
    /// (including inferred complements), sorted. Not part of the JSON
    /// report.
    #[serde(skip)]
    pub pseudo_normal_witnesses: Vec<String>,
}

impl SurveyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Aligned one-row table in the census column order.
    pub fn to_table(&self) -> String {
        let header = format!(
            "{:>2} | {:>15} | {:>26} | {:>22}",
            "n", "Normal Digraphs", "Restricted-Normal Digraphs", "Pseudo-Normal Digraphs"
        );
        let row = format!(
            "{:>2} | {:>15} | {:>26} | {:>22}",
            self.order, self.normal, self.restricted_normal, self.pseudo_normal
        );
        format!("{header}\n{row}\n")
    }

    /// Count equality, ignoring timing and source.
    pub fn class_counts_equal(&self, other: &SurveyReport) -> bool {
        self.normal == other.normal
            && self.restricted_normal == other.restricted_normal
            && self.pseudo_normal == other.pseudo_normal
            && self.digraphs_total == other.digraphs_total
    }
}

#[derive(Default)]
struct Tally {
    normal: u64,
    restricted_normal: u64,
    pseudo_normal: u64,
    witnesses: Vec<String>,
    quarantined: Vec<String>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.normal += other.normal;
        self.restricted_normal += other.restricted_normal;
        self.pseudo_normal += other.pseudo_normal;
        self.witnesses.extend(other.witnesses);
        self.quarantined.extend(other.quarantined);
        self
    }

    fn record(&mut self, label: ClassLabel, copies: u64, witness: impl Fn() -> Vec<String>) {
        match label {
            ClassLabel::Normal => self.normal += copies,
            ClassLabel::RestrictedNormal => self.restricted_normal += copies,
            ClassLabel::PseudoNormal => {
                self.pseudo_normal += copies;
                self.witnesses.extend(witness());
            }
            ClassLabel::NonPolygonal => {}
        }
    }
}

fn classify_chunk(chunk: &[Digraph], eps: Option<f64>, pairing: bool) -> Tally {
    let mut tally = Tally::default();
    for g in chunk {
        if pairing {
            let code = canonical_form(g).expect("pairing implies order <= 8");
            let complement = g.complement();
            let code_c = canonical_form(&complement).expect("pairing implies order <= 8");
            if code > code_c {
                continue; // counted when the complement is processed
            }
            match classify(g, eps) {
                Ok(label) => {
                    let copies = if code == code_c { 1 } else { 2 };
                    tally.record(label, copies, || {
                        let mut w = vec![to_digraph6(g)];
                        if copies == 2 {
                            w.push(to_digraph6(&complement));
                        }
                        w
                    });
                }
                Err(_) => tally.quarantined.push(to_digraph6(g)),
            }
        } else {
            match classify(g, eps) {
                Ok(label) => tally.record(label, 1, || vec![to_digraph6(g)]),
                Err(_) => tally.quarantined.push(to_digraph6(g)),
            }
        }
    }
    tally
}

const CENSUS_CHUNK: usize = 1024;

fn run_census(
    order: usize,
    graphs: Vec<Digraph>,
    source: &str,
    opts: &CensusOptions,
    started: Instant,
) -> Result<SurveyReport> {
    let pairing = opts.complement_pairing && order <= 8;
    let eps = opts.eps;
    let work = || {
        graphs
            .par_chunks(CENSUS_CHUNK)
            .map(|chunk| classify_chunk(chunk, eps, pairing))
            .reduce(Tally::default, Tally::merge)
    };
    let mut tally = if opts.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.jobs)
            .build()
            .map_err(|e| Error::InvalidInput(format!("worker pool: {e}")))?;
        pool.install(work)
    } else {
        work()
    };
    if !tally.quarantined.is_empty() {
        tally.quarantined.sort();
        return Err(Error::Quarantine(tally.quarantined));
    }
    tally.witnesses.sort();
    Ok(SurveyReport {
        order,
        normal: tally.normal,
        restricted_normal: tally.restricted_normal,
        pseudo_normal: tally.pseudo_normal,
        polygonal_total: tally.normal + tally.restricted_normal + tally.pseudo_normal,
        digraphs_total: graphs.len() as u64,
        elapsed_seconds: started.elapsed().as_secs_f64(),
        source: source.to_string(),
        pseudo_normal_witnesses: tally.witnesses,
    })
}

/// Census over the built-in enumeration; `2 <= order <= 5`.
pub fn census_builtin(order: usize, opts: &CensusOptions) -> Result<SurveyReport> {
    if order < 2 {
        return Err(Error::InvalidInput(format!(
            "census needs order >= 2, got {order}"
        )));
    }
    let started = Instant::now();
    let graphs = enumerate_digraphs(order)?;
    run_census(order, graphs, "builtin", opts, started)
}

/// Census over a digraph6 stream; every line must carry the same order.
pub fn census_stream(path: &Path, opts: &CensusOptions) -> Result<SurveyReport> {
    let started = Instant::now();
    let reader = BufReader::new(File::open(path)?);
    let mut graphs = Vec::new();
    let mut order: Option<usize> = None;
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let g = from_digraph6(&line, idx + 1)?;
        match order {
            None => {
                if g.order() < 2 {
                    return Err(Error::InvalidInput(format!(
                        "census needs order >= 2, stream starts at {}",
                        g.order()
                    )));
                }
                order = Some(g.order());
            }
            Some(n) if n != g.order() => {
                return Err(Error::Parse {
                    format: "digraph6",
                    line: idx + 1,
                    msg: format!("order {} differs from stream order {n}", g.order()),
                });
            }
            _ => {}
        }
        graphs.push(g);
    }
    let order = order.ok_or_else(|| Error::InvalidInput("empty digraph6 stream".into()))?;
    run_census(order, graphs, "stream", opts, started)
}
