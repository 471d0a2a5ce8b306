//! Canonical labelling by equitable refinement and individualization.

use super::graph::Graph;

type Partition = Vec<Vec<usize>>;

/// Permutation `lab` such that `g.relabel(&lab)` is the canonical form of `g`.
pub fn canonical_labeling(g: &Graph) -> Vec<usize> {
    canonical_labeling_colored(g, &vec![0; g.order()])
}

/// Canonical labelling respecting a vertex colouring; colours are ordered by value.
pub fn canonical_labeling_colored(g: &Graph, colors: &[u32]) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return vec![];
    }
    let mut palette: Vec<u32> = colors.to_vec();
    palette.sort_unstable();
    palette.dedup();
    let start: Partition =
        palette.iter().map(|&c| (0..n).filter(|&v| colors[v] == c).collect()).collect();
    let mut search = Search { g, best: None };
    search.descend(refine(g, start), &mut Vec::new());
    search.best.unwrap().1
}

pub fn canonical_form(g: &Graph) -> Graph {
    g.relabel(&canonical_labeling(g))
}

pub fn is_isomorphic(a: &Graph, b: &Graph) -> bool {
    a.order() == b.order()
        && a.edge_count() == b.edge_count()
        && degree_sequence(a) == degree_sequence(b)
        && canonical_form(a) == canonical_form(b)
}

fn degree_sequence(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<(Vec<u64>, Vec<usize>, Vec<usize>)>,
}

enum Outcome {
    Done,
    AbortTo(usize),
}

impl Search<'_> {
    fn descend(&mut self, part: Partition, path: &mut Vec<usize>) -> Outcome {
        let Some(target) = part.iter().position(|c| c.len() > 1) else {
            return self.leaf(&part, path);
        };
        let level = path.len();
        let mut choices = part[target].clone();
        choices.sort_unstable();
        for v in choices {
            let mut child = part.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&u| u != v).collect();
            child.splice(target..=target, [vec![v], rest]);
            path.push(v);
            let out = self.descend(refine(self.g, child), path);
            path.pop();
            if let Outcome::AbortTo(l) = out {
                if l < level {
                    return out;
                }
            }
        }
        Outcome::Done
    }

    fn leaf(&mut self, part: &Partition, path: &[usize]) -> Outcome {
        let lab: Vec<usize> = part.iter().map(|c| c[0]).collect();
        let code = code_of(self.g, &lab);
        match &self.best {
            Some((best, _, best_path)) if *best == code => {
                // automorphism: the subtree at the divergence point is already covered
                let div = path.iter().zip(best_path).take_while(|(a, b)| a == b).count();
                Outcome::AbortTo(div)
            }
            Some((best, _, _)) if *best <= code => Outcome::Done,
            _ => {
                self.best = Some((code, lab, path.to_vec()));
                Outcome::Done
            }
        }
    }
}

fn code_of(g: &Graph, lab: &[usize]) -> Vec<u64> {
    lab.iter()
        .map(|&u| lab.iter().enumerate().fold(0u64, |row, (j, &v)| row | (g.has_edge(u, v) as u64) << j))
        .collect()
}

/// Coarsest equitable refinement of `part`, splitting cells in a labelling-invariant order.
fn refine(g: &Graph, mut part: Partition) -> Partition {
    let mut s = 0;
    while s < part.len() {
        let splitter: u64 = part[s].iter().fold(0, |m, &v| m | 1 << v);
        let mut split_any = false;
        let mut c = 0;
        while c < part.len() {
            if part[c].len() > 1 {
                let mut keyed: Vec<(u32, usize)> =
                    part[c].iter().map(|&v| ((g.neighbour_mask(v) & splitter).count_ones(), v)).collect();
                keyed.sort_unstable();
                if keyed[0].0 != keyed[keyed.len() - 1].0 {
                    let mut pieces: Vec<Vec<usize>> = Vec::new();
                    let mut last = None;
                    for (k, v) in keyed {
                        if last != Some(k) {
                            pieces.push(Vec::new());
                            last = Some(k);
                        }
                        pieces.last_mut().unwrap().push(v);
                    }
                    let np = pieces.len();
                    part.splice(c..=c, pieces);
                    c += np;
                    split_any = true;
                    continue;
                }
            }
            c += 1;
        }
        s = if split_any { 0 } else { s + 1 };
    }
    part
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabelled_cycles_agree() {
        let c6 = Graph::cycle(6);
        let shuffled = c6.relabel(&[3, 0, 5, 1, 4, 2]);
        assert!(is_isomorphic(&c6, &shuffled));
        let two_triangles = Graph::cycle(3).disjoint_union(&Graph::cycle(3));
        assert!(!is_isomorphic(&c6, &two_triangles));
    }

    #[test]
    fn complete_graph_is_fast() {
        let k = Graph::complete(40);
        assert_eq!(canonical_form(&k), k);
    }

    #[test]
    fn colours_are_respected() {
        let p = Graph::path(3);
        let a = canonical_labeling_colored(&p, &[1, 0, 0]);
        assert_eq!(a[2], 0);
    }
}
