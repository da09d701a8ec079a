//! Induced-subgraph search by backtracking over partial injective maps.
//!
//! Pattern vertices are placed in descending-degree order (ties by index).
//! Each placement intersects the host rows (or their complements) of every
//! vertex already placed, so both edges and non-edges are preserved, and
//! host vertices whose degree inside the search region is too small or too
//! large are filtered out up front.

use crate::graph::{words_for, BitSet, Graph};

/// Whether some vertex subset of `g` induces a graph isomorphic to `h`.
pub fn contains_induced(g: &Graph, h: &Graph) -> bool {
    find_induced(g, h, &BitSet::full(g.n()), None).is_some()
}

/// Searches for an induced copy of `h` inside `g[within]`. If `anchor` is
/// given, the copy must use that vertex. Returns the image of each pattern
/// vertex.
pub fn find_induced(g: &Graph, h: &Graph, within: &BitSet, anchor: Option<usize>) -> Option<Vec<usize>> {
    let k = h.n();
    if k == 0 {
        return anchor.is_none().then(Vec::new);
    }
    if let Some(a) = anchor {
        if !within.contains(a) {
            return None;
        }
    }
    let stride = words_for(g.n());
    let mut region = vec![0u64; stride];
    for (i, w) in within.words().iter().take(stride).enumerate() {
        region[i] = *w;
    }
    if g.n() % 64 != 0 {
        region[stride - 1] &= (1u64 << (g.n() % 64)) - 1;
    }
    let region_size: usize = region.iter().map(|w| w.count_ones() as usize).sum();
    if region_size < k {
        return None;
    }

    // degrees inside the region
    let mut deg_in = vec![0usize; g.n()];
    for v in iter_words(&region) {
        deg_in[v] = g.row(v).iter().zip(&region).map(|(a, b)| (a & b).count_ones() as usize).sum();
    }

    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&p| (std::cmp::Reverse(h.degree(p)), p));

    let mut search = Search {
        g,
        h,
        region: &region,
        region_size,
        deg_in: &deg_in,
        stride,
        order,
        image: vec![usize::MAX; k],
        used: vec![0u64; stride],
    };

    match anchor {
        None => search.extend(0).then(|| search.image.clone()),
        Some(a) => {
            let pattern = search.order.clone();
            for &p in &pattern {
                if !search.degree_ok(a, p) {
                    continue;
                }
                let rest: Vec<usize> = pattern.iter().copied().filter(|&q| q != p).collect();
                let mut order = vec![p];
                order.extend(rest);
                search.order = order;
                search.image.iter_mut().for_each(|x| *x = usize::MAX);
                search.used.iter_mut().for_each(|w| *w = 0);
                search.image[p] = a;
                search.used[a / 64] |= 1 << (a % 64);
                if search.extend(1) {
                    return Some(search.image.clone());
                }
            }
            None
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    h: &'a Graph,
    region: &'a [u64],
    region_size: usize,
    deg_in: &'a [usize],
    stride: usize,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<u64>,
}

impl Search<'_> {
    fn degree_ok(&self, t: usize, p: usize) -> bool {
        let dp = self.h.degree(p);
        let non_p = self.h.n() - 1 - dp;
        let dt = self.deg_in[t];
        let non_t = self.region_size - 1 - dt;
        dt >= dp && non_t >= non_p
    }

    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let p = self.order[depth];
        let mut cand: Vec<u64> = self.region.iter().zip(&self.used).map(|(r, u)| r & !u).collect();
        for &q in &self.order[..depth] {
            let t = self.image[q];
            let row = self.g.row(t);
            if self.h.has_edge(p, q) {
                cand.iter_mut().zip(row).for_each(|(c, r)| *c &= r);
            } else {
                cand.iter_mut().zip(row).for_each(|(c, r)| *c &= !r);
            }
        }
        let targets: Vec<usize> = iter_words(&cand).collect();
        for t in targets {
            if !self.degree_ok(t, p) {
                continue;
            }
            self.image[p] = t;
            self.used[t / 64] |= 1 << (t % 64);
            if self.extend(depth + 1) {
                return true;
            }
            self.used[t / 64] &= !(1 << (t % 64));
            self.image[p] = usize::MAX;
        }
        debug_assert!(self.stride == self.used.len());
        false
    }
}

fn iter_words(words: &[u64]) -> impl Iterator<Item = usize> + '_ {
    words.iter().enumerate().flat_map(|(wi, &w)| {
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

/// Isomorphism test for graphs of equal order.
pub fn isomorphic(a: &Graph, b: &Graph) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && contains_induced(a, b)
}
