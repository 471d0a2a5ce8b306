//! Constructors for graphs referred to by name.

use super::graph::Graph;
use super::GraphError;

/// Names accepted by [`named_graph`], as shown to users.
pub const SUPPORTED_NAMES: &[&str] = &[
    "K<n>", "N<n>", "C<n>", "P<n>", "Q<n>", "K<a>,<b>[,...]", "K<a>xK<b>", "<m>K<n>", "J(<n>,<k>)",
    "crown", "24-cell", "16-cell", "icosahedron", "octahedron", "tesseract", "petersen", "prism",
    "pentagon",
];

/// Builds a graph from a name such as `J(5,2)`, `K3xK3`, `K2,2,2,2` or `24-cell`.
pub fn named_graph(name: &str) -> Result<Graph, GraphError> {
    let unknown = || GraphError::UnknownName(name.to_string());
    let s: String = name.trim().chars().filter(|c| !c.is_whitespace()).collect();
    let lower = s.to_ascii_lowercase();
    let g = match lower.as_str() {
        "crown" => Graph::complete(2).cartesian(&Graph::complete(5)).complement(),
        "24-cell" | "24cell" => twenty_four_cell(),
        "16-cell" | "16cell" | "hyperoctahedron" => complete_multipartite(&[2, 2, 2, 2]),
        "icosahedron" => icosahedron(),
        "octahedron" => complete_multipartite(&[2, 2, 2]),
        "tesseract" => hypercube(4),
        "petersen" => johnson(5, 2).complement(),
        "prism" | "3-prism" => Graph::complete(3).cartesian(&Graph::complete(2)),
        "pentagon" => Graph::cycle(5),
        _ => return parse_family(&s).ok_or_else(unknown)?,
    };
    Ok(g)
}

fn parse_family(s: &str) -> Option<Result<Graph, GraphError>> {
    let num = |t: &str| t.parse::<usize>().ok();
    let check = |n: usize, g: fn(usize) -> Graph| {
        Some(if n > super::MAX_VERTICES { Err(GraphError::TooLarge(n)) } else { Ok(g(n)) })
    };
    if let Some(rest) = s.strip_prefix("J(").and_then(|r| r.strip_suffix(')')) {
        let (a, b) = rest.split_once(',')?;
        let (n, k) = (num(a)?, num(b)?);
        if k > n || binomial(n, k) > super::MAX_VERTICES {
            return Some(Err(GraphError::TooLarge(binomial(n, k))));
        }
        return Some(Ok(johnson(n, k)));
    }
    if let Some((a, b)) = s.split_once(['x', '□']) {
        let (ga, gb) = (parse_family(a)?.ok()?, parse_family(b)?.ok()?);
        if ga.order() * gb.order() > super::MAX_VERTICES {
            return Some(Err(GraphError::TooLarge(ga.order() * gb.order())));
        }
        return Some(Ok(ga.cartesian(&gb)));
    }
    let (kind, rest) = s.split_at(s.find(|c: char| c.is_ascii_digit())?);
    match kind {
        "K" if rest.contains(',') => {
            let parts: Option<Vec<usize>> = rest.split(',').map(num).collect();
            let parts = parts?;
            let n: usize = parts.iter().sum();
            Some(if n > super::MAX_VERTICES { Err(GraphError::TooLarge(n)) } else { Ok(complete_multipartite(&parts)) })
        }
        "K" => check(num(rest)?, Graph::complete),
        "N" => check(num(rest)?, Graph::empty),
        "C" if num(rest)? >= 3 => check(num(rest)?, Graph::cycle),
        "P" => check(num(rest)?, Graph::path),
        "Q" if num(rest)? <= 6 => Some(Ok(hypercube(num(rest)?))),
        "" => {
            let (m, inner) = rest.split_at(rest.find(|c: char| !c.is_ascii_digit())?);
            let copies = num(m)?;
            let g = parse_family(inner)?.ok()?;
            if copies * g.order() > super::MAX_VERTICES {
                return Some(Err(GraphError::TooLarge(copies * g.order())));
            }
            Some(Ok((1..copies).fold(g.clone(), |acc, _| acc.disjoint_union(&g))))
        }
        _ => None,
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k.min(n)).fold(1usize, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn subsets(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

/// Johnson graph `J(n, k)`: `k`-subsets adjacent when they share `k − 1` points.
pub fn johnson(n: usize, k: usize) -> Graph {
    let vs = subsets(n, k);
    let mut g = Graph::empty(vs.len());
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if (vs[i] & vs[j]).count_ones() as usize + 1 == k {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn hypercube(d: usize) -> Graph {
    let n = 1 << d;
    let mut g = Graph::empty(n);
    for u in 0..n {
        for b in 0..d {
            let v = u ^ (1 << b);
            if u < v {
                g.add_edge(u, v);
            }
        }
    }
    g
}

pub fn complete_multipartite(parts: &[usize]) -> Graph {
    let part_of: Vec<usize> = parts.iter().enumerate().flat_map(|(i, &s)| std::iter::repeat_n(i, s)).collect();
    let mut g = Graph::empty(part_of.len());
    for u in 0..part_of.len() {
        for v in u + 1..part_of.len() {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v);
            }
        }
    }
    g
}

fn twenty_four_cell() -> Graph {
    let mut pts: Vec<[i32; 4]> = Vec::new();
    for axis in 0..4 {
        for s in [2, -2] {
            let mut p = [0; 4];
            p[axis] = s;
            pts.push(p);
        }
    }
    for signs in 0..16 {
        pts.push(std::array::from_fn(|i| if signs >> i & 1 == 1 { -1 } else { 1 }));
    }
    let mut g = Graph::empty(pts.len());
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let dot: i32 = (0..4).map(|t| pts[i][t] * pts[j][t]).sum();
            if dot == 2 {
                g.add_edge(i, j);
            }
        }
    }
    g
}

fn icosahedron() -> Graph {
    // 0 top, 1..=5 upper ring, 6..=10 lower ring, 11 bottom
    let mut g = Graph::empty(12);
    for i in 0..5 {
        let (a, a1) = (1 + i, 1 + (i + 1) % 5);
        let (b, b1) = (6 + i, 6 + (i + 1) % 5);
        g.add_edge(0, a);
        g.add_edge(a, a1);
        g.add_edge(a, b);
        g.add_edge(a, b1);
        g.add_edge(b, b1);
        g.add_edge(11, b);
    }
    g
}
