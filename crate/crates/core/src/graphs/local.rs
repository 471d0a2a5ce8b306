//! Locally-H graphs: recognition and bounded exhaustive extension.

use std::collections::{BTreeSet, HashSet};

use super::canon::{canonical_form, is_isomorphic};
use super::graph::{bits, Graph, MAX_VERTICES};
use super::GraphError;

/// Default node budget for [`extend_locally`].
pub const DEFAULT_LOCAL_BUDGET: u64 = 2_000_000;

/// Whether every vertex neighbourhood of `g` induces a graph isomorphic to `h`.
pub fn is_locally(g: &Graph, h: &Graph) -> bool {
    (0..g.order()).all(|v| g.degree(v) == h.order() && is_isomorphic(&g.local_graph(v), h))
}

/// Completed bounded search for locally-`h` graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalExtension {
    /// Canonical forms, sorted by order and then canonically.
    pub graphs: Vec<Graph>,
    /// Largest order examined; uniqueness claims hold only up to this bound.
    pub n_max: usize,
    pub nodes: u64,
}

/// All connected locally-`h` graphs on at most `n_max` vertices, up to isomorphism.
pub fn extend_locally(h: &Graph, n_max: usize) -> Result<LocalExtension, GraphError> {
    extend_locally_with_budget(h, n_max, DEFAULT_LOCAL_BUDGET)
}

pub fn extend_locally_with_budget(h: &Graph, n_max: usize, budget: u64) -> Result<LocalExtension, GraphError> {
    let m = h.order();
    if n_max < m + 1 {
        return Err(GraphError::Precondition(format!("n_max must be at least {}", m + 1)));
    }
    if n_max > MAX_VERTICES {
        return Err(GraphError::TooLarge(n_max));
    }
    let mut search = LocalSearch { h, n_max, budget, nodes: 0, found: BTreeSet::new() };
    let root = State { n: 1, adj: vec![0; n_max], decided: vec![0; n_max], closed: 0 };
    search.run(root)?;
    let mut graphs: Vec<Graph> = search.found.into_iter().collect();
    graphs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    Ok(LocalExtension { graphs, n_max, nodes: search.nodes })
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct State {
    n: usize,
    adj: Vec<u64>,
    /// Pairs whose adjacency can no longer change.
    decided: Vec<u64>,
    closed: u64,
}

impl State {
    fn set_pair(&mut self, x: usize, y: usize, edge: bool) {
        self.decided[x] |= 1 << y;
        self.decided[y] |= 1 << x;
        if edge {
            self.adj[x] |= 1 << y;
            self.adj[y] |= 1 << x;
        }
    }

    fn is_decided(&self, x: usize, y: usize) -> bool {
        self.decided[x] >> y & 1 == 1 || (self.closed >> x | self.closed >> y) & 1 == 1
    }

    fn has_edge(&self, x: usize, y: usize) -> bool {
        self.adj[x] >> y & 1 == 1
    }

    fn graph(&self) -> Graph {
        Graph::from_rows_unchecked(self.n, self.adj[..self.n].to_vec())
    }
}

struct LocalSearch<'a> {
    h: &'a Graph,
    n_max: usize,
    budget: u64,
    nodes: u64,
    found: BTreeSet<Graph>,
}

impl LocalSearch<'_> {
    fn run(&mut self, st: State) -> Result<(), GraphError> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(GraphError::BudgetExceeded { budget: self.budget, found: self.found.len() });
        }
        let open = !st.closed & super::graph::full_mask(st.n);
        if open == 0 {
            let g = st.graph();
            debug_assert!(is_locally(&g, self.h));
            self.found.insert(canonical_form(&g));
            return Ok(());
        }
        let v = open.trailing_zeros() as usize;
        for child in self.close_vertex(&st, v) {
            self.run(child)?;
        }
        Ok(())
    }

    /// Every way of completing the neighbourhood of `v` to a copy of `h`.
    fn close_vertex(&self, st: &State, v: usize) -> Vec<State> {
        let h = self.h;
        let m = h.order();
        let s0: Vec<usize> = bits(st.adj[v]).collect();
        let candidates: Vec<usize> = (0..st.n)
            .filter(|&u| u != v && st.closed >> u & 1 == 0 && !st.is_decided(v, u))
            .collect();
        let mut children = Vec::new();
        let mut seen = HashSet::new();
        for psi in embeddings(h, &s0, st) {
            let used: u64 = psi.iter().fold(0, |acc, &r| acc | 1 << r);
            let rest: Vec<usize> = (0..m).filter(|r| used >> r & 1 == 0).collect();
            let mut assign = vec![None; rest.len()];
            self.assign_rest(st, v, &s0, &psi, &rest, &candidates, 0, 0, &mut assign, &mut |child| {
                let key = child_key(&child, st.n);
                if seen.insert(key) {
                    children.push(child);
                }
            });
        }
        children
    }

    #[allow(clippy::too_many_arguments)]
    fn assign_rest(
        &self,
        st: &State,
        v: usize,
        s0: &[usize],
        psi: &[usize],
        rest: &[usize],
        candidates: &[usize],
        idx: usize,
        used: u64,
        assign: &mut Vec<Option<usize>>,
        emit: &mut dyn FnMut(State),
    ) {
        if idx == rest.len() {
            if let Some(child) = self.build(st, v, s0, psi, rest, assign) {
                emit(child);
            }
            return;
        }
        assign[idx] = None;
        self.assign_rest(st, v, s0, psi, rest, candidates, idx + 1, used, assign, emit);
        for &u in candidates {
            if used >> u & 1 == 0 {
                assign[idx] = Some(u);
                self.assign_rest(st, v, s0, psi, rest, candidates, idx + 1, used | 1 << u, assign, emit);
            }
        }
        assign[idx] = None;
    }

    fn build(
        &self,
        st: &State,
        v: usize,
        s0: &[usize],
        psi: &[usize],
        rest: &[usize],
        assign: &[Option<usize>],
    ) -> Option<State> {
        let h = self.h;
        let m = h.order();
        let fresh = assign.iter().filter(|a| a.is_none()).count();
        if st.n + fresh > self.n_max {
            return None;
        }
        let mut next = st.clone();
        let mut at = vec![0; m];
        for (&x, &r) in s0.iter().zip(psi) {
            at[r] = x;
        }
        for (&r, a) in rest.iter().zip(assign) {
            at[r] = a.unwrap_or_else(|| {
                next.n += 1;
                next.n - 1
            });
        }
        for r in 0..m {
            for s in r + 1..m {
                let (x, y) = (at[r], at[s]);
                let want = h.has_edge(r, s);
                if next.is_decided(x, y) {
                    if next.has_edge(x, y) != want {
                        return None;
                    }
                } else {
                    next.set_pair(x, y, want);
                }
            }
        }
        for &x in &at {
            next.adj[v] |= 1 << x;
            next.adj[x] |= 1 << v;
        }
        for u in 0..next.n {
            if u != v {
                next.set_pair(v, u, next.has_edge(v, u));
            }
        }
        next.closed |= 1 << v;
        let changed: u64 = at.iter().fold(0, |acc, &x| acc | 1 << x);
        for u in bits(changed & !next.closed) {
            if next.adj[u].count_ones() as usize > m {
                return None;
            }
            let nb: Vec<usize> = bits(next.adj[u]).collect();
            if embeddings_exist(h, &nb, &next) {
                continue;
            }
            return None;
        }
        Some(next)
    }
}

/// Injective maps `s → V(h)` agreeing with every decided pair inside `s`.
fn embeddings(h: &Graph, s: &[usize], st: &State) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut img = Vec::with_capacity(s.len());
    embed_rec(h, s, st, &mut img, 0, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

fn embeddings_exist(h: &Graph, s: &[usize], st: &State) -> bool {
    let mut found = false;
    let mut img = Vec::with_capacity(s.len());
    embed_rec(h, s, st, &mut img, 0, &mut |_| {
        found = true;
        false
    });
    found
}

/// Returns false once `visit` asks to stop.
fn embed_rec(
    h: &Graph,
    s: &[usize],
    st: &State,
    img: &mut Vec<usize>,
    used: u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let i = img.len();
    if i == s.len() {
        return visit(img);
    }
    for r in 0..h.order() {
        if used >> r & 1 == 1 {
            continue;
        }
        let ok = (0..i).all(|j| !st.is_decided(s[i], s[j]) || st.has_edge(s[i], s[j]) == h.has_edge(r, img[j]));
        if ok {
            img.push(r);
            let go = embed_rec(h, s, st, img, used | 1 << r, visit);
            img.pop();
            if !go {
                return false;
            }
        }
    }
    true
}

/// Key identifying a child state up to relabelling of the vertices created in this step.
fn child_key(st: &State, old: usize) -> Vec<u64> {
    let fresh: Vec<usize> = (old..st.n).collect();
    let old_mask = super::graph::full_mask(old);
    let mut order = fresh.clone();
    order.sort_by_key(|&x| (st.adj[x] & old_mask, st.decided[x] & old_mask));
    // vertices with equal attachments are permuted to find the least encoding
    let mut best: Option<Vec<u64>> = None;
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &x in &order {
        let key = (st.adj[x] & old_mask, st.decided[x] & old_mask);
        match groups.last_mut() {
            Some(g) if (st.adj[g[0]] & old_mask, st.decided[g[0]] & old_mask) == key => g.push(x),
            _ => groups.push(vec![x]),
        }
    }
    let total: usize = groups.iter().map(|g| (1..=g.len()).product::<usize>()).product();
    let mut visit = |perm: &[usize]| {
        let mut relabel = (0..st.n).collect::<Vec<_>>();
        for (k, &x) in perm.iter().enumerate() {
            relabel[x] = old + k;
        }
        let code = encode(st, &relabel);
        if best.as_ref().is_none_or(|b| code < *b) {
            best = Some(code);
        }
    };
    if total <= 720 {
        permute_groups(&groups, 0, &mut Vec::new(), &mut visit);
    } else {
        visit(&order);
    }
    best.unwrap()
}

fn permute_groups(groups: &[Vec<usize>], gi: usize, acc: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if gi == groups.len() {
        visit(acc);
        return;
    }
    let mut g = groups[gi].clone();
    heap_permutations(&mut g, groups[gi].len(), &mut |p| {
        let len = acc.len();
        acc.extend_from_slice(p);
        permute_groups(groups, gi + 1, acc, visit);
        acc.truncate(len);
    });
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        f(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, f);
        if k.is_multiple_of(2) {
            items.swap(i, k - 1);
        } else {
            items.swap(0, k - 1);
        }
    }
}

fn encode(st: &State, relabel: &[usize]) -> Vec<u64> {
    let mut inv = vec![0; st.n];
    for (x, &y) in relabel.iter().enumerate().take(st.n) {
        inv[y] = x;
    }
    let map_row = |row: u64| bits(row).fold(0u64, |acc, x| acc | 1 << relabel[x]);
    let mut code = vec![st.n as u64, st.closed];
    for &x in &inv {
        code.push(map_row(st.adj[x]));
        code.push(map_row(st.decided[x]));
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::named_graph;

    #[test]
    fn hexagon_is_locally_two_points() {
        assert!(is_locally(&Graph::cycle(6), &Graph::empty(2)));
        assert!(!is_locally(&Graph::path(3), &Graph::empty(2)));
    }

    #[test]
    fn locally_triangle_is_k4() {
        let ext = extend_locally(&Graph::complete(3), 10).unwrap();
        assert_eq!(ext.graphs, vec![canonical_form(&Graph::complete(4))]);
    }

    #[test]
    fn locally_square_is_octahedron() {
        let ext = extend_locally(&Graph::cycle(4), 12).unwrap();
        assert_eq!(ext.graphs, vec![canonical_form(&named_graph("octahedron").unwrap())]);
    }

    #[test]
    fn locally_two_points_gives_cycles() {
        let ext = extend_locally(&Graph::empty(2), 7).unwrap();
        let orders: Vec<usize> = ext.graphs.iter().map(Graph::order).collect();
        assert_eq!(orders, vec![4, 5, 6, 7]);
    }

    #[test]
    fn budget_is_reported() {
        let err = extend_locally_with_budget(&Graph::empty(2), 20, 5).unwrap_err();
        assert!(matches!(err, GraphError::BudgetExceeded { budget: 5, .. }));
    }
}
