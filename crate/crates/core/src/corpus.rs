//! Named graphs and exhaustive enumeration of small graphs.

use std::collections::BTreeSet;

use crate::graph::Multigraph;

fn simple(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Multigraph {
    let mut g = Multigraph::new(n);
    for (i, j) in edges {
        g.add_edge(i, j, 1).expect("valid edge");
    }
    g
}

pub fn path(n: usize) -> Multigraph {
    simple(n, (1..n).map(|i| (i - 1, i)))
}

pub fn cycle(n: usize) -> Multigraph {
    assert!(n >= 3, "cycles need three vertices");
    simple(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Multigraph {
    simple(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn complete_bipartite(a: usize, b: usize) -> Multigraph {
    simple(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
}

/// Outer 5-cycle on 0..5, inner pentagram on 5..10, spokes `i -- i+5`.
pub fn petersen() -> Multigraph {
    simple(10, (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]))
}

/// Every multigraph on `n` vertices with multiplicities in `0..=max_mult`,
/// as labelled graphs (no isomorphism reduction). Grows as
/// `(max_mult + 1)^(n(n-1)/2)`.
pub fn all_multigraphs(n: usize, max_mult: u32) -> impl Iterator<Item = Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let base = max_mult as u64 + 1;
    let total = base.pow(pairs.len() as u32);
    (0..total).map(move |mut code| {
        let mut g = Multigraph::new(n);
        for &(i, j) in &pairs {
            let m = (code % base) as u32;
            code /= base;
            if m > 0 {
                g.add_edge(i, j, m).expect("valid edge");
            }
        }
        g
    })
}

/// Canonical adjacency bitstring of a simple graph: the lexicographically
/// largest upper-triangle code over relabellings that sort vertices by
/// degree. Equal codes iff isomorphic.
fn canonical_code(g: &Multigraph) -> Vec<bool> {
    let n = g.n();
    let deg = g.degrees();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for v in by_degree {
        match blocks.last_mut() {
            Some(b) if deg[b[0]] == deg[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    let mut best: Option<Vec<bool>> = None;
    let mut order = Vec::with_capacity(n);
    permute_blocks(g, &blocks, 0, &mut order, &mut best);
    best.unwrap_or_default()
}

fn permute_blocks(
    g: &Multigraph,
    blocks: &[Vec<usize>],
    k: usize,
    order: &mut Vec<usize>,
    best: &mut Option<Vec<bool>>,
) {
    if k == blocks.len() {
        let n = order.len();
        let code: Vec<bool> =
            (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).map(|(a, b)| g.mu(order[a], order[b]) > 0).collect();
        if best.as_ref().is_none_or(|b| code > *b) {
            *best = Some(code);
        }
        return;
    }
    let mut block = blocks[k].clone();
    heap_permutations(&mut block, &mut |perm| {
        let len = order.len();
        order.extend_from_slice(perm);
        permute_blocks(g, blocks, k + 1, order, best);
        order.truncate(len);
    });
}

fn heap_permutations(items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
    fn go(k: usize, items: &mut [usize], f: &mut dyn FnMut(&[usize])) {
        if k <= 1 {
            f(items);
            return;
        }
        for i in 0..k - 1 {
            go(k - 1, items, f);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
        go(k - 1, items, f);
    }
    let k = items.len();
    go(k, items, f);
}

/// One representative per isomorphism class of simple graphs on `n`
/// vertices, built by vertex extension from the classes on `n - 1`.
pub fn simple_graphs_up_to_iso(n: usize) -> Vec<Multigraph> {
    let mut level: Vec<Multigraph> = vec![Multigraph::new(0)];
    for k in 1..=n {
        let mut seen: BTreeSet<Vec<bool>> = BTreeSet::new();
        let mut next = Vec::new();
        for g in &level {
            for mask in 0u64..(1u64 << (k - 1)) {
                let mut h = Multigraph::new(k);
                for (i, j, m) in g.edges() {
                    h.add_edge(i, j, m).expect("valid edge");
                }
                for v in 0..k - 1 {
                    if mask >> v & 1 == 1 {
                        h.add_edge(v, k - 1, 1).expect("valid edge");
                    }
                }
                if seen.insert(canonical_code(&h)) {
                    next.push(h);
                }
            }
        }
        level = next;
    }
    level
}

pub fn connected_simple_graphs(n: usize) -> Vec<Multigraph> {
    simple_graphs_up_to_iso(n).into_iter().filter(|g| crate::graph::graph_metrics(g).connected).collect()
}
