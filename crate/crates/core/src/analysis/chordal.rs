use serde::{Deserialize, Serialize};

use crate::simplicial::{Graph, SimplicialComplex, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChordalityReport {
    pub chordal: bool,
    /// A shortest induced cycle of length at least 4, present iff not chordal.
    pub witness: Option<Vec<Vertex>>,
}

/// Chordality of the 1-skeleton, with a shortest chordless-cycle witness.
pub fn chordality(k: &SimplicialComplex) -> ChordalityReport {
    let g = k.one_skeleton();
    if is_chordal(&g) {
        return ChordalityReport {
            chordal: true,
            witness: None,
        };
    }
    let cycle = shortest_chordless_cycle(&g).expect("non-chordal graph has a chordless cycle");
    ChordalityReport {
        chordal: false,
        witness: Some(cycle.into_iter().map(|u| g.vertices()[u]).collect()),
    }
}

/// Maximum cardinality search followed by a perfect-elimination check.
pub fn is_chordal(g: &Graph) -> bool {
    let n = g.len();
    let mut weight = vec![0u32; n];
    let mut visited = 0u64;
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| visited >> v & 1 == 0)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        order.push(v);
        visited |= 1 << v;
        let mut nb = g.neighbors(v) & !visited;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            weight[u] += 1;
        }
    }
    // the earlier-visited neighbors of each vertex must form a clique; it is
    // enough that they are all adjacent to the latest of them
    let mut before = 0u64;
    for &v in &order {
        let earlier = g.neighbors(v) & before;
        if let Some(&u) = order.iter().rev().find(|&&u| earlier >> u & 1 == 1) {
            let rest = earlier & !(1 << u);
            if rest & !g.neighbors(u) != 0 {
                return false;
            }
        }
        before |= 1 << v;
    }
    true
}

fn bfs_path(g: &Graph, from: usize, to: usize, allowed: u64) -> Option<Vec<usize>> {
    let n = g.len();
    let mut prev = vec![usize::MAX; n];
    let mut seen = 1u64 << from;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while x != from {
                x = prev[x];
                path.push(x);
            }
            path.reverse();
            return Some(path);
        }
        let mut nb = g.neighbors(u) & allowed & !seen;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            seen |= 1 << w;
            prev[w] = u;
            queue.push_back(w);
        }
    }
    None
}

/// Shortest induced cycle of length ≥ 4, as vertex positions in cycle order.
///
/// Every such cycle contains an induced path `a - b - c`; a shortest `a`-`c`
/// path avoiding the other neighbors of `b` closes it without chords.
pub fn shortest_chordless_cycle(g: &Graph) -> Option<Vec<usize>> {
    let n = g.len();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut best: Option<Vec<usize>> = None;
    for b in 0..n {
        let nb: Vec<usize> = (0..n).filter(|&u| g.has_edge(b, u)).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &c in &nb[i + 1..] {
                if g.has_edge(a, c) {
                    continue;
                }
                let blocked = (g.neighbors(b) | 1 << b) & !(1 << a | 1 << c);
                if let Some(path) = bfs_path(g, a, c, all & !blocked) {
                    if best.as_ref().map_or(true, |cyc| path.len() + 1 < cyc.len()) {
                        let mut cyc = path;
                        cyc.push(b);
                        best = Some(cyc);
                    }
                }
            }
        }
    }
    best
}

/// All induced cycles of length ≥ 4, each reported once up to rotation and
/// reflection, as vertex positions.
pub fn induced_cycles(g: &Graph) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, path: &mut Vec<usize>, inner: u64, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        let mut cand = g.neighbors(last) & !((1u64 << (s + 1)) - 1);
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            if path.contains(&v) || g.neighbors(v) & inner != 0 {
                continue;
            }
            if g.has_edge(v, s) {
                // closing edge; reflections are removed by requiring path[1] < v
                if path.len() >= 3 && path[1] < v {
                    let mut cyc = path.clone();
                    cyc.push(v);
                    out.push(cyc);
                }
                continue;
            }
            let new_inner = if path.len() >= 2 { inner | 1 << last } else { inner };
            path.push(v);
            extend(g, path, new_inner, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..g.len() {
        let mut nb = g.neighbors(s) & !((1u64 << (s + 1)) - 1);
        while nb != 0 {
            let v = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            let mut path = vec![s, v];
            extend(g, &mut path, 0, &mut out);
        }
    }
    out
}

/// Length of the longest chordless cycle (≥ 4) in the 1-skeleton, or `None`
/// when the complex is chordal.
pub fn chordless_cycle_bound(k: &SimplicialComplex) -> Option<usize> {
    induced_cycles(&k.one_skeleton()).iter().map(Vec::len).max()
}
