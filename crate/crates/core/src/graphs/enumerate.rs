//! Isomorphism classes of small regular graphs.

use std::collections::BTreeSet;

use rayon::prelude::*;

use super::canon::canonical_form;
use super::graph::Graph;

/// One representative per isomorphism class of `k`-regular graphs on `n` vertices,
/// disconnected ones included, in canonical-form order.
pub fn enumerate_regular_graphs(n: usize, k: usize) -> Vec<Graph> {
    if n <= 1 {
        return if k == 0 { vec![Graph::empty(n)] } else { vec![] };
    }
    if k >= n || (n * k) % 2 == 1 {
        return vec![];
    }
    if 2 * k > n - 1 {
        let mut out: Vec<Graph> =
            enumerate_regular_graphs(n, n - 1 - k).iter().map(|g| canonical_form(&g.complement())).collect();
        out.sort();
        return out;
    }
    // vertex 0 is adjacent to 1..=k without loss of generality; branch on vertex 1 in parallel
    let mut seed = Graph::empty(n);
    for v in 1..=k {
        seed.add_edge(0, v);
    }
    let first = choices(&seed, 1, k);
    let found: Vec<BTreeSet<Graph>> = first
        .into_par_iter()
        .map(|g| {
            let mut acc = BTreeSet::new();
            extend(g, 2, k, &mut acc);
            acc
        })
        .collect();
    found.into_iter().flatten().collect::<BTreeSet<_>>().into_iter().collect()
}

fn extend(g: Graph, v: usize, k: usize, acc: &mut BTreeSet<Graph>) {
    if v == g.order() {
        acc.insert(canonical_form(&g));
        return;
    }
    for h in choices(&g, v, k) {
        extend(h, v + 1, k, acc);
    }
}

/// Completions of vertex `v` to degree `k` using later vertices. Later vertices with the
/// same adjacency to `0..v` are interchangeable, so each class is filled from its front.
fn choices(g: &Graph, v: usize, k: usize) -> Vec<Graph> {
    let n = g.order();
    let need = k as isize - g.degree(v) as isize;
    if need < 0 {
        return vec![];
    }
    let mut classes: Vec<(u64, Vec<usize>)> = Vec::new();
    let earlier = (1u64 << v) - 1;
    for u in v + 1..n {
        if g.degree(u) >= k {
            continue;
        }
        let key = g.neighbour_mask(u) & earlier;
        match classes.iter_mut().find(|(m, _)| *m == key) {
            Some((_, members)) => members.push(u),
            None => classes.push((key, vec![u])),
        }
    }
    let mut out = Vec::new();
    let mut counts = vec![0; classes.len()];
    pick(g, v, k, need as usize, &classes, 0, &mut counts, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn pick(
    g: &Graph,
    v: usize,
    k: usize,
    need: usize,
    classes: &[(u64, Vec<usize>)],
    idx: usize,
    counts: &mut Vec<usize>,
    out: &mut Vec<Graph>,
) {
    if idx == classes.len() {
        if need != 0 {
            return;
        }
        let mut h = g.clone();
        for (c, (_, members)) in counts.iter().zip(classes) {
            for &u in &members[..*c] {
                h.add_edge(v, u);
            }
        }
        if deficits_feasible(&h, v, k) {
            out.push(h);
        }
        return;
    }
    let max = classes[idx].1.len().min(need);
    for c in 0..=max {
        counts[idx] = c;
        pick(g, v, k, need - c, classes, idx + 1, counts, out);
    }
    counts[idx] = 0;
}

/// Remaining degree deficits among vertices after `v` must be graphical (Erdős–Gallai).
fn deficits_feasible(g: &Graph, v: usize, k: usize) -> bool {
    let mut d: Vec<usize> = (v + 1..g.order()).map(|u| k - g.degree(u)).collect();
    if d.iter().sum::<usize>() % 2 == 1 {
        return false;
    }
    d.sort_unstable_by(|a, b| b.cmp(a));
    let mut left = 0;
    for r in 1..=d.len() {
        left += d[r - 1];
        let right = r * (r - 1) + d[r..].iter().map(|&x| x.min(r)).sum::<usize>();
        if left > right {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(enumerate_regular_graphs(5, 2).len(), 1);
        assert_eq!(enumerate_regular_graphs(6, 2).len(), 2);
        assert_eq!(enumerate_regular_graphs(4, 0).len(), 1);
        assert_eq!(enumerate_regular_graphs(5, 1).len(), 0);
        assert_eq!(enumerate_regular_graphs(6, 3).len(), 2);
        assert_eq!(enumerate_regular_graphs(8, 3).len(), 6);
    }
}
