use crate::error::{Error, Result};
use crate::simplicial::SimplicialComplex;

/// Largest facet count for the shelling search.
pub const MAX_SHELLING_FACETS: usize = 30;
const NODE_BUDGET: u64 = 2_000_000;

/// `f` meets the union of `prior` in a nonempty pure codimension-one complex.
fn attaches(f: u64, prior: &[u64]) -> bool {
    let size = f.count_ones();
    let ridges: Vec<u64> = prior
        .iter()
        .map(|&g| g & f)
        .filter(|r| r.count_ones() + 1 == size)
        .collect();
    !ridges.is_empty()
        && prior
            .iter()
            .all(|&g| ridges.iter().any(|&r| (g & f) & !r == 0))
}

struct Shelling<'a> {
    facets: &'a [u64],
    order: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
}

impl Shelling<'_> {
    fn run(&mut self) -> Option<bool> {
        if self.order.len() == self.facets.len() {
            return Some(true);
        }
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return None;
        }
        let prior: Vec<u64> = self.order.iter().map(|&i| self.facets[i]).collect();
        for i in 0..self.facets.len() {
            if self.used[i] || !attaches(self.facets[i], &prior) {
                continue;
            }
            self.used[i] = true;
            self.order.push(i);
            match self.run() {
                Some(true) => return Some(true),
                None => return None,
                Some(false) => {}
            }
            self.order.pop();
            self.used[i] = false;
        }
        Some(false)
    }
}

/// A shelling order of a pure complex, as indices into `k.facets()`.
///
/// Returns `Ok(None)` when no shelling exists and `Error::TooLarge` when the
/// facet cap or the search budget is exceeded.
pub fn shellability_witness(k: &SimplicialComplex) -> Result<Option<Vec<usize>>> {
    let facets = k.facet_masks();
    if facets.len() > MAX_SHELLING_FACETS {
        return Err(Error::TooLarge {
            what: "facet count for shelling search",
            size: facets.len() as u64,
            cap: MAX_SHELLING_FACETS as u64,
        });
    }
    if facets.is_empty() || !k.is_pure() {
        return Ok(None);
    }
    // for a pure complex the first facet may be fixed among those of any
    // connected component; try each start in turn
    for start in 0..facets.len() {
        let mut s = Shelling {
            facets,
            order: vec![start],
            used: vec![false; facets.len()],
            nodes: 0,
        };
        s.used[start] = true;
        match s.run() {
            Some(true) => return Ok(Some(s.order)),
            Some(false) => {}
            None => {
                return Err(Error::TooLarge {
                    what: "shelling search nodes",
                    size: NODE_BUDGET + 1,
                    cap: NODE_BUDGET,
                })
            }
        }
    }
    Ok(None)
}

/// Checks that `order` is a shelling of `k`.
pub fn is_shelling(k: &SimplicialComplex, order: &[usize]) -> bool {
    let facets = k.facet_masks();
    let mut seen = vec![false; facets.len()];
    if order.len() != facets.len() {
        return false;
    }
    for (j, &i) in order.iter().enumerate() {
        if i >= facets.len() || seen[i] {
            return false;
        }
        seen[i] = true;
        let prior: Vec<u64> = order[..j].iter().map(|&p| facets[p]).collect();
        if j > 0 && !attaches(facets[i], &prior) {
            return false;
        }
    }
    true
}
