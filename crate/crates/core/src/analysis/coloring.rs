use crate::error::{Error, Result};
use crate::simplicial::Graph;

/// Largest graph accepted by [`chromatic_number`].
pub const MAX_COLORING_VERTICES: usize = 24;

fn greedy_clique(g: &Graph) -> usize {
    let n = g.len();
    (0..n)
        .map(|start| {
            let mut clique = 1u64 << start;
            let mut cand = g.neighbors(start);
            while cand != 0 {
                // keep the candidate with most neighbors among the remaining candidates
                let mut best = cand.trailing_zeros() as usize;
                let mut best_deg = 0;
                let mut c = cand;
                while c != 0 {
                    let v = c.trailing_zeros() as usize;
                    c &= c - 1;
                    let d = (g.neighbors(v) & cand).count_ones();
                    if d > best_deg {
                        best = v;
                        best_deg = d;
                    }
                }
                clique |= 1 << best;
                cand &= g.neighbors(best);
            }
            clique.count_ones() as usize
        })
        .max()
        .unwrap_or(0)
}

/// DSATUR heuristic coloring; returns the number of colors used.
fn dsatur_upper(g: &Graph) -> usize {
    let n = g.len();
    let mut color = vec![usize::MAX; n];
    let mut used = 0;
    for _ in 0..n {
        let sat = |v: usize, color: &[usize]| -> u64 {
            (0..n)
                .filter(|&u| g.has_edge(u, v) && color[u] != usize::MAX)
                .fold(0u64, |m, u| m | 1 << color[u])
        };
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (sat(v, &color).count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .unwrap();
        let c = (!sat(v, &color)).trailing_zeros() as usize;
        color[v] = c;
        used = used.max(c + 1);
    }
    used
}

fn colorable(g: &Graph, k: usize, color: &mut [usize], colored: usize) -> bool {
    let n = g.len();
    if colored == n {
        return true;
    }
    let forbidden = |v: usize, color: &[usize]| -> u64 {
        let mut nb = g.neighbors(v);
        let mut m = 0u64;
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if color[u] != usize::MAX {
                m |= 1 << color[u];
            }
        }
        m
    };
    let v = (0..n)
        .filter(|&v| color[v] == usize::MAX)
        .max_by_key(|&v| (forbidden(v, color).count_ones(), g.degree(v)))
        .unwrap();
    let taken = forbidden(v, color);
    // colors beyond the largest one in use are interchangeable
    let max_used = color.iter().filter(|&&c| c != usize::MAX).max().map_or(0, |&c| c + 1);
    for c in 0..k.min(max_used + 1) {
        if taken >> c & 1 == 0 {
            color[v] = c;
            if colorable(g, k, color, colored + 1) {
                return true;
            }
            color[v] = usize::MAX;
        }
    }
    false
}

/// Exact chromatic number by branch and bound between a greedy clique bound
/// and a DSATUR coloring.
pub fn chromatic_number(g: &Graph) -> Result<usize> {
    if g.len() > MAX_COLORING_VERTICES {
        return Err(Error::TooLarge {
            what: "graph for chromatic number",
            size: g.len() as u64,
            cap: MAX_COLORING_VERTICES as u64,
        });
    }
    if g.is_empty() {
        return Ok(0);
    }
    let lower = greedy_clique(g).max(1);
    let upper = dsatur_upper(g);
    for k in lower..upper {
        let mut color = vec![usize::MAX; g.len()];
        if colorable(g, k, &mut color, 0) {
            return Ok(k);
        }
    }
    Ok(upper)
}
