//! Finite simple undirected graphs.
//!
//! Vertices are `0..n` internally; the text format is 1-based. Adjacency is a
//! dense bit matrix, one row of `u64` words per vertex, so the exhaustive
//! routines elsewhere in the crate can intersect neighbourhoods word by word.

use std::fmt;

use rand::Rng;

use crate::error::{input, Error, Result};

/// A growable set of small integers backed by `u64` words.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(capacity: usize) -> Self {
        BitSet { words: vec![0; words_for(capacity)] }
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        let mut s = BitSet::new(n);
        for w in 0..n / 64 {
            s.words[w] = u64::MAX;
        }
        if n % 64 != 0 {
            s.words[n / 64] = (1u64 << (n % 64)) - 1;
        }
        s
    }

    pub fn from_indices(capacity: usize, items: &[usize]) -> Self {
        let mut s = BitSet::new(capacity);
        for &i in items {
            s.insert(i);
        }
        s
    }

    fn grow(&mut self, i: usize) {
        let need = i / 64 + 1;
        if self.words.len() < need {
            self.words.resize(need, 0);
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.grow(i);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if let Some(w) = self.words.get_mut(i / 64) {
            *w &= !(1 << (i % 64));
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words.get(i / 64).is_some_and(|w| w >> (i % 64) & 1 == 1)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }
}

impl fmt::Debug for BitSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

/// A finite simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "GraphRepr", into = "GraphRepr")]
pub struct Graph {
    n: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Graph {
    /// The edgeless graph on `n` vertices (co-K_n).
    pub fn empty(n: usize) -> Self {
        let stride = words_for(n);
        Graph { n, stride, bits: vec![0; n * stride] }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.set_edge(u, v, true);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for v in 0..n {
                g.set_edge(v, (v + 1) % n, true);
            }
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.set_edge(v - 1, v, true);
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return input(format!("edge ({u},{v}) out of range for n={n}"));
            }
            if u == v {
                return input(format!("self-loop at vertex {u}"));
            }
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Erdős–Rényi sample `G(n, p)`.
    pub fn random<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.stride + v / 64] >> (v % 64) & 1 == 1
    }

    /// Adds or removes the edge `{u, v}`. Panics on a self-loop.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        assert!(u != v, "self-loop at vertex {u}");
        for (a, b) in [(u, v), (v, u)] {
            let w = &mut self.bits[a * self.stride + b / 64];
            if present {
                *w |= 1 << (b % 64);
            } else {
                *w &= !(1 << (b % 64));
            }
        }
    }

    /// The neighbourhood of `v` as a word slice.
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.stride..(v + 1) * self.stride]
    }

    /// The neighbourhood of `v` as a single word. Only valid for `n <= 64`.
    pub fn row_mask(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v * self.stride]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.neighbors(u).filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Appends a vertex adjacent to `back` and returns its index.
    pub fn push_vertex(&mut self, back: &[usize]) -> Result<usize> {
        let v = self.n;
        if let Some(&bad) = back.iter().find(|&&u| u >= v) {
            return input(format!("back-edge to vertex {bad} which is not yet present (n={v})"));
        }
        let stride = words_for(v + 1);
        if stride != self.stride {
            let mut bits = vec![0; (v + 1) * stride];
            for u in 0..v {
                bits[u * stride..u * stride + self.stride].copy_from_slice(self.row(u));
            }
            self.bits = bits;
            self.stride = stride;
        } else {
            self.bits.resize((v + 1) * stride, 0);
        }
        self.n = v + 1;
        for &u in back {
            self.set_edge(u, v, true);
        }
        Ok(v)
    }

    /// The subgraph induced by `s`, reindexed in increasing vertex order.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<Graph> {
        let mut verts = s.to_vec();
        verts.sort_unstable();
        verts.dedup();
        if let Some(&bad) = verts.iter().find(|&&v| v >= self.n) {
            return input(format!("vertex {bad} out of range for n={}", self.n));
        }
        let mut g = Graph::empty(verts.len());
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// Induced subgraph on a mask, for `n <= 64`.
    pub fn induced_by_mask(&self, mask: u64) -> Graph {
        let verts: Vec<usize> = mask_iter(mask).collect();
        self.induced_subgraph(&verts).expect("mask within range")
    }

    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n);
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.has_edge(u, v) {
                    g.set_edge(u, v, true);
                }
            }
        }
        g
    }

    /// Relabels vertices so that new vertex `i` is old vertex `order[i]`.
    pub fn permuted(&self, order: &[usize]) -> Result<Graph> {
        let mut seen = BitSet::new(self.n);
        if order.len() != self.n {
            return input(format!("order has {} entries, graph has {} vertices", order.len(), self.n));
        }
        for &v in order {
            if v >= self.n || seen.contains(v) {
                return input("order is not a permutation of the vertex set");
            }
            seen.insert(v);
        }
        let mut g = Graph::empty(self.n);
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(order[i], order[j]) {
                    g.set_edge(i, j, true);
                }
            }
        }
        Ok(g)
    }

    /// Neighbours of `v` that come before it.
    pub fn back_neighbors(&self, v: usize) -> Vec<usize> {
        self.neighbors(v).take_while(|&u| u < v).collect()
    }

    /// Serializes in the revelation-order text format: the vertex count,
    /// then one line per vertex listing its earlier neighbours (1-based).
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n);
        for v in 0..self.n {
            let line: Vec<String> = self.back_neighbors(v).iter().map(|u| (u + 1).to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Graph> {
        let (g, _) = parse_text(text, false)?;
        Ok(g)
    }
}

/// Serialized form: vertex count plus edge list (0-based).
#[derive(serde::Serialize, serde::Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl From<Graph> for GraphRepr {
    fn from(g: Graph) -> Self {
        GraphRepr { n: g.n, edges: g.edges().collect() }
    }
}

impl TryFrom<GraphRepr> for Graph {
    type Error = Error;

    fn try_from(r: GraphRepr) -> Result<Self> {
        Graph::from_edges(r.n, &r.edges)
    }
}

/// Parses the text format. With `allow_header`, a leading `blind` line is accepted
/// and reported.
pub(crate) fn parse_text(text: &str, allow_header: bool) -> Result<(Graph, bool)> {
    let mut lines = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim_start().starts_with('#'))
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .peekable();
    // leading blank lines before the header carry no meaning
    while lines.peek().is_some_and(|(_, l)| l.is_empty()) {
        lines.next();
    }
    let mut blind = false;
    let (mut lineno, mut first) = lines.next().ok_or(Error::Parse { line: 1, msg: "missing vertex count".into() })?;
    if allow_header && first == "blind" {
        blind = true;
        (lineno, first) = lines.next().ok_or(Error::Parse { line: lineno + 1, msg: "missing vertex count".into() })?;
    }
    let n: usize = first
        .parse()
        .map_err(|_| Error::Parse { line: lineno, msg: format!("expected vertex count, found {first:?}") })?;
    let mut g = Graph::empty(0);
    for i in 0..n {
        let (line, body) = lines.next().unwrap_or((lineno + i + 1, ""));
        let mut back = Vec::new();
        for tok in body.split_whitespace() {
            let j: usize = tok
                .parse()
                .map_err(|_| Error::Parse { line, msg: format!("expected neighbour index, found {tok:?}") })?;
            if j == 0 || j > i {
                return Err(Error::Parse { line, msg: format!("vertex {} may only list earlier neighbours 1..{}, found {j}", i + 1, i) });
            }
            back.push(j - 1);
        }
        g.push_vertex(&back).expect("validated above");
    }
    if let Some((line, body)) = lines.find(|(_, l)| !l.is_empty()) {
        return Err(Error::Parse { line, msg: format!("trailing content {body:?} after {n} vertex lines") });
    }
    Ok((g, blind))
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

/// Iterates the set bits of a mask.
pub fn mask_iter(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(b)
    })
}

pub fn mask_of(items: &[usize]) -> u64 {
    items.iter().fold(0, |m, &i| m | 1 << i)
}

/// Calls `f` on every `k`-subset of the bits of `universe`, in colex order,
/// stopping early when `f` returns `false`. Returns whether the walk completed.
pub fn for_each_k_subset(universe: u64, k: usize, mut f: impl FnMut(u64) -> bool) -> bool {
    let items: Vec<usize> = mask_iter(universe).collect();
    if k > items.len() {
        return true;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let mask = idx.iter().fold(0u64, |m, &i| m | 1 << items[i]);
        if !f(mask) {
            return false;
        }
        // advance the combination
        let mut pos = k;
        loop {
            if pos == 0 {
                return true;
            }
            pos -= 1;
            if idx[pos] < items.len() - (k - pos) {
                idx[pos] += 1;
                for later in pos + 1..k {
                    idx[later] = idx[later - 1] + 1;
                }
                break;
            }
        }
    }
}
