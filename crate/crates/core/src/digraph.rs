//! Simple unweighted digraphs with packed adjacency rows, plus the
//! degree, connectivity and decomposition queries the range machinery
//! is built on.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::linalg::RealMatrix;

/// Loop-free digraph on vertices `0..n`, `n <= 62`.
///
/// Row `i` of the adjacency relation is one machine word; bit `j` is set
/// iff the edge `(i, j)` exists. Order zero (the null digraph) is legal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    rows: Vec<u64>,
}

/// Out-degrees, in-degrees and their differences per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeProfile {
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
    /// `imbalances[i] = out_degrees[i] - in_degrees[i]`; sums to zero.
    pub imbalances: Vec<i64>,
}

/// Partition of the vertices into strongly connected classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SccDecomposition {
    pub components: Vec<Vec<usize>>,
    /// `terminal[c]` is true iff no edge leaves `components[c]`.
    pub terminal: Vec<bool>,
}

impl SccDecomposition {
    pub fn terminal_count(&self) -> usize {
        self.terminal.iter().filter(|&&t| t).count()
    }
}

/// A digraph split as `head -> tail` (all head-to-tail edges present,
/// none back), with both parts balanced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub head: Digraph,
    pub tail: Digraph,
    /// Original indices of the head vertices, ascending.
    pub head_vertices: Vec<usize>,
}

impl Digraph {
    pub const MAX_ORDER: usize = 62;

    /// The edgeless digraph on `n` vertices.
    pub fn new(n: usize) -> Result<Self> {
        if n > Self::MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        Ok(Self { n, rows: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::InvalidInput(format!(
                "edge ({u}, {v}) out of range for order {}",
                self.n
            )));
        }
        if u == v {
            return Err(Error::InvalidInput(format!("loop ({u}, {u}) rejected")));
        }
        self.rows[u] |= 1 << v;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.rows[u] & (1 << v) != 0
    }

    pub fn adjacency(&self, u: usize, v: usize) -> i64 {
        i64::from(self.has_edge(u, v))
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn out_neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&v| self.has_edge(u, v))
    }

    // ---- generators ------------------------------------------------

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Self::new(n)?;
        for u in 0..n {
            for v in 0..n {
                if u != v {
                    g.rows[u] |= 1 << v;
                }
            }
        }
        Ok(g)
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    ///
    /// Requires `n >= 3`: a 2-cycle is the bidirectional pair, not a
    /// dicycle.
    pub fn dicycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidInput(format!(
                "dicycle needs order >= 3, got {n}"
            )));
        }
        let mut g = Self::new(n)?;
        for u in 0..n {
            g.rows[u] |= 1 << ((u + 1) % n);
        }
        Ok(g)
    }

    /// The k-imploding star: the directed join of the empty digraph on
    /// `n - k` vertices onto the complete digraph on `k` vertices.
    pub fn imploding_star(n: usize, k: usize) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidInput(format!(
                "imploding star needs k <= n, got k = {k}, n = {n}"
            )));
        }
        Self::empty(n - k)?.directed_join(&Self::complete(k)?)
    }

    /// Rotational regular tournament: `i` points at the next `(n-1)/2`
    /// vertices mod `n`. Requires odd `n >= 3`.
    pub fn regular_tournament(n: usize) -> Result<Self> {
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidInput(format!(
                "regular tournament needs odd order >= 3, got {n}"
            )));
        }
        let mut g = Self::new(n)?;
        for u in 0..n {
            for s in 1..=(n - 1) / 2 {
                g.rows[u] |= 1 << ((u + s) % n);
            }
        }
        Ok(g)
    }

    // ---- unary operations -------------------------------------------

    /// Complement digraph: every off-diagonal adjacency bit flipped.
    pub fn complement(&self) -> Self {
        let mut g = Self { n: self.n, rows: vec![0; self.n] };
        let full = if self.n == 64 { u64::MAX } else { (1u64 << self.n) - 1 };
        for u in 0..self.n {
            g.rows[u] = (!self.rows[u] & full) & !(1 << u);
        }
        g
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let out_degrees: Vec<usize> = self.rows.iter().map(|r| r.count_ones() as usize).collect();
        let in_degrees: Vec<usize> = (0..self.n)
            .map(|v| self.rows.iter().filter(|r| *r & (1 << v) != 0).count())
            .collect();
        let imbalances = out_degrees
            .iter()
            .zip(&in_degrees)
            .map(|(&o, &i)| o as i64 - i as i64)
            .collect();
        DegreeProfile { out_degrees, in_degrees, imbalances }
    }

    /// True iff every vertex has equal in- and out-degree.
    pub fn is_balanced(&self) -> bool {
        self.degree_profile().imbalances.iter().all(|&x| x == 0)
    }

    /// True iff every edge is paired with its reverse.
    pub fn is_bidirectional(&self) -> bool {
        (0..self.n).all(|u| (0..self.n).all(|v| self.has_edge(u, v) == self.has_edge(v, u)))
    }

    /// Laplacian matrix: out-degrees on the diagonal, `-a_ij` off it.
    /// Every row sums to zero.
    pub fn laplacian(&self) -> RealMatrix {
        let ints = self.laplacian_integer();
        RealMatrix::from_fn(self.n, self.n, |i, j| ints[i][j] as f64)
    }

    /// Laplacian with exact integer entries, for the integer-arithmetic
    /// classification identities.
    pub fn laplacian_integer(&self) -> Vec<Vec<i64>> {
        let prof = self.degree_profile();
        (0..self.n)
            .map(|i| {
                (0..self.n)
                    .map(|j| {
                        if i == j {
                            prof.out_degrees[i] as i64
                        } else {
                            -self.adjacency(i, j)
                        }
                    })
                    .collect()
            })
            .collect()
    }

    /// Tarjan strong components with per-class terminal flags.
    pub fn scc_decomposition(&self) -> SccDecomposition {
        struct State<'a> {
            g: &'a Digraph,
            index: usize,
            idx: Vec<Option<usize>>,
            low: Vec<usize>,
            stack: Vec<usize>,
            on_stack: Vec<bool>,
            comps: Vec<Vec<usize>>,
        }
        fn strongconnect(v: usize, st: &mut State) {
            st.idx[v] = Some(st.index);
            st.low[v] = st.index;
            st.index += 1;
            st.stack.push(v);
            st.on_stack[v] = true;
            for w in st.g.out_neighbors(v).collect::<Vec<_>>() {
                if st.idx[w].is_none() {
                    strongconnect(w, st);
                    st.low[v] = st.low[v].min(st.low[w]);
                } else if st.on_stack[w] {
                    st.low[v] = st.low[v].min(st.idx[w].unwrap());
                }
            }
            if st.low[v] == st.idx[v].unwrap() {
                let mut comp = Vec::new();
                loop {
                    let w = st.stack.pop().expect("tarjan stack underflow");
                    st.on_stack[w] = false;
                    comp.push(w);
                    if w == v {
                        break;
                    }
                }
                comp.sort_unstable();
                st.comps.push(comp);
            }
        }

        let mut st = State {
            g: self,
            index: 0,
            idx: vec![None; self.n],
            low: vec![0; self.n],
            stack: Vec::new(),
            on_stack: vec![false; self.n],
            comps: Vec::new(),
        };
        for v in 0..self.n {
            if st.idx[v].is_none() {
                strongconnect(v, &mut st);
            }
        }
        let comps = st.comps;

        let mut class_of = vec![0usize; self.n];
        for (c, comp) in comps.iter().enumerate() {
            for &v in comp {
                class_of[v] = c;
            }
        }
        let terminal = comps
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                comp.iter()
                    .all(|&v| self.out_neighbors(v).all(|w| class_of[w] == c))
            })
            .collect();
        SccDecomposition { components: comps, terminal }
    }

    // ---- binary operations ------------------------------------------
    //
    // Combined vertex order is always: first operand's vertices, then
    // the second's, so tests can assert exact matrices.

    /// Disjoint copies plus all edges from `self`'s vertices to
    /// `other`'s. Either operand may be the null digraph.
    pub fn directed_join(&self, other: &Self) -> Result<Self> {
        let mut g = self.disjoint_union(other)?;
        for u in 0..self.n {
            for v in 0..other.n {
                g.rows[u] |= 1 << (self.n + v);
            }
        }
        Ok(g)
    }

    pub fn bidirectional_join(&self, other: &Self) -> Result<Self> {
        let mut g = self.directed_join(other)?;
        for v in 0..other.n {
            for u in 0..self.n {
                g.rows[self.n + v] |= 1 << u;
            }
        }
        Ok(g)
    }

    pub fn disjoint_union(&self, other: &Self) -> Result<Self> {
        let n = self.n + other.n;
        let mut g = Self::new(n)?;
        g.rows[..self.n].copy_from_slice(&self.rows);
        for v in 0..other.n {
            g.rows[self.n + v] = other.rows[v] << self.n;
        }
        Ok(g)
    }

    /// Adds a non-adjacent twin for each listed vertex: the copy has
    /// exactly the in- and out-neighborhood of the original (including
    /// other copies). Copies are appended after the original vertices,
    /// in ascending order of the vertices they duplicate.
    pub fn twin_split(&self, vertices: &[usize]) -> Result<Self> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != vertices.len() {
            return Err(Error::InvalidInput("twin_split vertices must be distinct".into()));
        }
        if vs.iter().any(|&v| v >= self.n) {
            return Err(Error::InvalidInput("twin_split vertex out of range".into()));
        }
        let total = self.n + vs.len();
        let mut g = Self::new(total)?;
        let original = |x: usize| if x < self.n { x } else { vs[x - self.n] };
        for x in 0..total {
            for y in 0..total {
                let (ox, oy) = (original(x), original(y));
                if ox != oy && self.has_edge(ox, oy) {
                    g.rows[x] |= 1 << y;
                }
            }
        }
        Ok(g)
    }

    /// Replaces every vertex by `k` pairwise non-adjacent copies; copy
    /// `j` of `i` sits at index `i*k + j`, and copies of `i` point at all
    /// copies of `i'` exactly when `i` points at `i'`.
    pub fn inflate(&self, k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidInput("inflation factor must be >= 1".into()));
        }
        let mut g = Self::new(self.n * k)?;
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_edge(u, v) {
                    for ju in 0..k {
                        for jv in 0..k {
                            g.rows[u * k + ju] |= 1 << (v * k + jv);
                        }
                    }
                }
            }
        }
        Ok(g)
    }

    /// Subdigraph induced by `vertices`, which keep their relative order.
    pub fn induced(&self, vertices: &[usize]) -> Self {
        let m = vertices.len();
        let mut g = Self { n: m, rows: vec![0; m] };
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    g.rows[a] |= 1 << b;
                }
            }
        }
        g
    }

    /// Relabels vertices: `perm[old] = new`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut g = Self { n: self.n, rows: vec![0; self.n] };
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_edge(u, v) {
                    g.rows[perm[u]] |= 1 << perm[v];
                }
            }
        }
        g
    }
}

/// Splits a non-balanced digraph as a directed join of two balanced
/// parts, if its vertex imbalances permit one: the split exists exactly
/// when every pairwise imbalance difference is divisible by the order.
/// Balanced digraphs have no such split by convention.
///
/// On success, the head holds exactly the positive-imbalance vertices
/// and recomposing `head -> tail` reproduces the input up to the
/// recorded vertex order.
pub fn decompose_directed_join(g: &Digraph) -> Option<JoinDecomposition> {
    let n = g.order() as i64;
    let imb = g.degree_profile().imbalances;
    if imb.iter().all(|&x| x == 0) {
        return None;
    }
    for i in 0..imb.len() {
        for j in i + 1..imb.len() {
            if (imb[i] - imb[j]) % n != 0 {
                return None;
            }
        }
    }
    let head_vertices: Vec<usize> = (0..g.order()).filter(|&v| imb[v] > 0).collect();
    let tail_vertices: Vec<usize> = (0..g.order()).filter(|&v| imb[v] <= 0).collect();
    let head = g.induced(&head_vertices);
    let tail = g.induced(&tail_vertices);
    debug_assert!(head.is_balanced() && tail.is_balanced());
    debug_assert_eq!(
        head.directed_join(&tail).ok()?,
        g.induced(&[head_vertices.clone(), tail_vertices].concat())
    );
    Some(JoinDecomposition { head, tail, head_vertices })
}

/// Twin-splits every other vertex of an even dicycle, then restores
/// normality with an apex.
///
/// Returns `(split, restored)`: `split` has order `3n/2` and is balanced
/// but not normal; `restored` adds one vertex bidirectionally joined to
/// all `n` twin vertices and is normal.
pub fn twin_split_cycle_pair(n: usize) -> Result<(Digraph, Digraph)> {
    if n < 4 || !n.is_multiple_of(2) {
        return Err(Error::InvalidInput(format!(
            "twin-split cycle family needs even order >= 4, got {n}"
        )));
    }
    let base = Digraph::dicycle(n)?;
    let split_vertices: Vec<usize> = (0..n).step_by(2).collect();
    let split = base.twin_split(&split_vertices)?;

    let twins: Vec<usize> = split_vertices
        .iter()
        .copied()
        .chain(n..n + split_vertices.len())
        .collect();
    let apex = split.order();
    let mut restored = Digraph::new(apex + 1)?;
    for (u, v) in split.edges() {
        restored.add_edge(u, v)?;
    }
    for &t in &twins {
        restored.add_edge(apex, t)?;
        restored.add_edge(t, apex)?;
    }
    Ok((split, restored))
}

/// Restricted-normal digraph of order `n^2` that is not a directed join,
/// for `n >= 3` (orders up to 49 fit the global cap).
///
/// Block structure of the adjacency matrix: the first block-row holds
/// `n - 1` identity blocks, the first block-column below the diagonal
/// holds `J - I` blocks, everything else is zero.
pub fn nonjoin_witness(n: usize) -> Result<Digraph> {
    if n < 3 {
        return Err(Error::InvalidInput(format!(
            "non-join construction needs n >= 3, got {n}"
        )));
    }
    let mut g = Digraph::new(n * n)?;
    for c in 1..n {
        for t in 0..n {
            g.add_edge(t, c * n + t)?;
        }
    }
    for r in 1..n {
        for s in 0..n {
            for t in 0..n {
                if s != t {
                    g.add_edge(r * n + s, t)?;
                }
            }
        }
    }
    Ok(g)
}

/// True when `g` is restricted-normal yet admits no directed-join split.
pub fn is_nonjoin_witness(g: &Digraph) -> bool {
    crate::range::is_restricted_normal_exact(g) && decompose_directed_join(g).is_none()
}

/// Best-effort seeded random search for a restricted-normal digraph of
/// order `n` that is not a directed join. Candidates are filtered by the
/// necessary imbalance condition (the order divides every squared
/// imbalance difference) before the exact tests run. Exhausting the
/// budget without a witness is a normal outcome; for orders that are
/// square-free or twice a square-free number no witness exists at all.
pub fn search_nonjoin_witness(n: usize, budget: u64, seed: u64) -> Result<Option<Digraph>> {
    if n > Digraph::MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    if n < 2 {
        return Ok(None);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ni = n as i64;
    for _ in 0..budget {
        let density: f64 = rng.random_range(0.15..0.85);
        let mut g = Digraph::new(n)?;
        for u in 0..n {
            for v in 0..n {
                if u != v && rng.random_bool(density) {
                    g.rows[u] |= 1 << v;
                }
            }
        }
        let imb = g.degree_profile().imbalances;
        if imb.iter().all(|&x| x == 0) {
            continue;
        }
        let feasible = (0..n).all(|i| {
            (i + 1..n).all(|j| {
                let d = imb[i] - imb[j];
                (d * d) % ni == 0
            })
        });
        if feasible && is_nonjoin_witness(&g) {
            return Ok(Some(g));
        }
    }
    Ok(None)
}
