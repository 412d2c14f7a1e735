//! Finite simplicial complexes on labeled vertices.
//!
//! Faces are bitmasks over positions in the vertex universe, so a universe
//! holds at most 64 vertices. Vertices of the universe that lie in no facet
//! are ghost vertices: they are kept for labeling but do not count towards
//! `f_0`, graphs or isomorphism.

mod faces;
mod graph;
mod iso;

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use faces::FaceTable;
pub use faces::MAX_TABLE_VERTICES;
pub use graph::Graph;
pub(crate) use iso::invariant_hash;
pub use iso::{is_isomorphic, Isomorphism, DEFAULT_MAX_ISO_VERTICES};

/// The vertex `x̃_i^{(j)}`: axis `i` (1-based) and level `j`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Vertex {
    pub axis: u16,
    pub level: u16,
}

impl Vertex {
    pub const fn new(axis: u16, level: u16) -> Self {
        Self { axis, level }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.axis, self.level)
    }
}

impl fmt::Debug for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.axis, self.level)
    }
}

impl FromStr for Vertex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let (a, l) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("vertex {s:?} is not of the form i:j")))?;
        let axis = a
            .parse()
            .map_err(|_| Error::Parse(format!("bad axis in vertex {s:?}")))?;
        let level = l
            .parse()
            .map_err(|_| Error::Parse(format!("bad level in vertex {s:?}")))?;
        Ok(Vertex { axis, level })
    }
}

impl From<Vertex> for String {
    fn from(v: Vertex) -> String {
        v.to_string()
    }
}

impl TryFrom<String> for Vertex {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Outcome of the dimension-dependent sphere recognition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SphereCheck {
    /// Complete decision (dimension ≤ 2).
    Complete(bool),
    /// Dimension ≥ 3: pseudomanifold and Euler characteristic only.
    Partial { necessary_conditions: bool },
}

impl SphereCheck {
    pub fn is_refuted(&self) -> bool {
        matches!(
            self,
            SphereCheck::Complete(false)
                | SphereCheck::Partial {
                    necessary_conditions: false
                }
        )
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    universe: Vec<Vertex>,
    /// sorted, inclusion-antichain
    facets: Vec<u64>,
}

impl fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SimplicialComplex[{}]", self.to_text())
    }
}

fn reduce_antichain(mut masks: Vec<u64>) -> Vec<u64> {
    masks.sort_unstable();
    masks.dedup();
    // larger sets first so a dominated set meets its dominator before being kept
    masks.sort_unstable_by_key(|m| std::cmp::Reverse(m.count_ones()));
    let mut keep: Vec<u64> = Vec::with_capacity(masks.len());
    for m in masks {
        if !keep.iter().any(|&k| m & !k == 0) {
            keep.push(m);
        }
    }
    keep.sort_unstable();
    keep
}

fn mask_bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let t = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(t)
        }
    })
}

impl SimplicialComplex {
    /// Keeps the inclusion-maximal members of `facets`.
    pub fn from_facets(universe: Vec<Vertex>, facets: &[Vec<Vertex>]) -> Result<Self> {
        let pos = Self::positions(&universe)?;
        let mut masks = Vec::with_capacity(facets.len());
        for f in facets {
            let mut m = 0u64;
            for v in f {
                let p = pos.get(v).ok_or(Error::InvalidFacet(*v))?;
                m |= 1 << p;
            }
            masks.push(m);
        }
        Ok(Self::from_masks(universe, masks))
    }

    fn positions(universe: &[Vertex]) -> Result<HashMap<Vertex, usize>> {
        if universe.len() > 64 {
            return Err(Error::TooLarge {
                what: "vertex universe",
                size: universe.len() as u64,
                cap: 64,
            });
        }
        let pos: HashMap<Vertex, usize> =
            universe.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        if pos.len() != universe.len() {
            return Err(Error::InvalidArgument("repeated vertex in universe".into()));
        }
        Ok(pos)
    }

    pub(crate) fn from_masks(universe: Vec<Vertex>, masks: Vec<u64>) -> Self {
        debug_assert!(universe.len() <= 64);
        Self {
            universe,
            facets: reduce_antichain(masks),
        }
    }

    /// Facet masks that are already a sorted antichain.
    pub(crate) fn from_sorted_antichain(universe: Vec<Vertex>, facets: Vec<u64>) -> Self {
        Self { universe, facets }
    }

    /// The complex whose faces are the subsets of `universe` containing no
    /// member of `non_faces`.
    pub fn from_minimal_non_faces(universe: Vec<Vertex>, non_faces: &[Vec<Vertex>]) -> Result<Self> {
        let pos = Self::positions(&universe)?;
        let masks = non_faces
            .iter()
            .map(|nf| {
                nf.iter().try_fold(0u64, |m, v| {
                    pos.get(v).map(|p| m | 1 << p).ok_or(Error::InvalidFacet(*v))
                })
            })
            .collect::<Result<Vec<u64>>>()?;
        Self::from_non_face_masks(universe, &masks)
    }

    pub(crate) fn from_non_face_masks(universe: Vec<Vertex>, non_faces: &[u64]) -> Result<Self> {
        let n = universe.len();
        if n > MAX_TABLE_VERTICES {
            return Err(Error::TooLarge {
                what: "vertex universe for non-face construction",
                size: n as u64,
                cap: MAX_TABLE_VERTICES as u64,
            });
        }
        let mut table = FaceTable::new(n);
        for &m in non_faces {
            table.insert(m);
        }
        table.close_up();
        let faces = table.complement();
        let facets: Vec<u64> = faces.maximal().iter().collect();
        Ok(Self::from_sorted_antichain(universe, facets))
    }

    /// `∂Δ_S`: all `(|S|-1)`-subsets of `S`.
    pub fn boundary_simplex(vertices: &[Vertex]) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidArgument(
                "boundary of a simplex needs at least 2 vertices".into(),
            ));
        }
        Self::positions(vertices)?;
        let n = vertices.len();
        let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let masks = (0..n).map(|i| full & !(1 << i)).collect();
        Ok(Self::from_masks(vertices.to_vec(), masks))
    }

    /// `∂Δ^n` on vertices `1:0 … 1:n`.
    pub fn boundary_of_simplex_dim(n: usize) -> Result<Self> {
        let vs: Vec<Vertex> = (0..=n as u16).map(|j| Vertex::new(1, j)).collect();
        Self::boundary_simplex(&vs)
    }

    /// The `p`-cycle `Z_p` on vertices `1:0 … 1:(p-1)`.
    pub fn cycle_complex(p: usize) -> Result<Self> {
        if !(3..=64).contains(&p) {
            return Err(Error::InvalidArgument(format!("cycle length {p} outside 3..=64")));
        }
        let vs: Vec<Vertex> = (0..p as u16).map(|j| Vertex::new(1, j)).collect();
        let masks = (0..p).map(|i| (1u64 << i) | (1u64 << ((i + 1) % p))).collect();
        Ok(Self::from_masks(vs, masks))
    }

    /// `K ∗ L`; the universes must be disjoint.
    pub fn join(&self, other: &SimplicialComplex) -> Result<Self> {
        let mine: HashSet<Vertex> = self.universe.iter().copied().collect();
        if other.universe.iter().any(|v| mine.contains(v)) {
            return Err(Error::OverlappingUniverses);
        }
        let mut universe = self.universe.clone();
        universe.extend_from_slice(&other.universe);
        Self::positions(&universe)?;
        let shift = self.universe.len();
        let mut masks = Vec::with_capacity(self.facets.len() * other.facets.len());
        for &f in &self.facets {
            for &g in &other.facets {
                masks.push(f | (g << shift));
            }
        }
        Ok(Self::from_masks(universe, masks))
    }

    /// Cone with a fresh apex on a new axis after the largest one in use.
    pub fn cone(&self) -> Result<Self> {
        let axis = self.universe.iter().map(|v| v.axis).max().unwrap_or(0) + 1;
        let apex = Vertex::new(axis, 0);
        let apex_complex = Self::from_masks(vec![apex], vec![1]);
        self.join(&apex_complex)
    }

    /// Moves every vertex to axis `axis + offset`.
    pub fn shift_axes(&self, offset: u16) -> Self {
        Self {
            universe: self
                .universe
                .iter()
                .map(|v| Vertex::new(v.axis + offset, v.level))
                .collect(),
            facets: self.facets.clone(),
        }
    }

    /// Renames vertices; `rename` must be injective on the universe.
    pub fn relabel(&self, rename: impl Fn(Vertex) -> Vertex) -> Result<Self> {
        let universe: Vec<Vertex> = self.universe.iter().map(|&v| rename(v)).collect();
        Self::positions(&universe)?;
        Ok(Self {
            universe,
            facets: self.facets.clone(),
        })
    }

    pub fn universe(&self) -> &[Vertex] {
        &self.universe
    }

    pub(crate) fn facet_masks(&self) -> &[u64] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub(crate) fn vertices_of(&self, mask: u64) -> Vec<Vertex> {
        mask_bits(mask).map(|i| self.universe[i]).collect()
    }

    pub(crate) fn mask_of(&self, vertices: &[Vertex]) -> Option<u64> {
        vertices.iter().try_fold(0u64, |m, v| {
            self.universe.iter().position(|w| w == v).map(|p| m | 1 << p)
        })
    }

    /// Facets as vertex lists (universe order inside each facet).
    pub fn facets(&self) -> Vec<Vec<Vertex>> {
        self.facets.iter().map(|&f| self.vertices_of(f)).collect()
    }

    /// Facets as sorted vertex lists, sorted; comparable across universes.
    pub fn facet_set(&self) -> Vec<Vec<Vertex>> {
        let mut out: Vec<Vec<Vertex>> = self
            .facets()
            .into_iter()
            .map(|mut f| {
                f.sort();
                f
            })
            .collect();
        out.sort();
        out
    }

    pub(crate) fn real_mask(&self) -> u64 {
        self.facets.iter().fold(0, |a, f| a | f)
    }

    pub fn real_vertices(&self) -> Vec<Vertex> {
        self.vertices_of(self.real_mask())
    }

    pub fn ghost_vertices(&self) -> Vec<Vertex> {
        let all = if self.universe.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.universe.len()) - 1
        };
        self.vertices_of(all & !self.real_mask())
    }

    pub fn f0(&self) -> usize {
        self.real_mask().count_ones() as usize
    }

    /// Maximal facet size minus one; `-1` for `{∅}` and for the void complex.
    pub fn dimension(&self) -> i32 {
        self.facets
            .iter()
            .map(|f| f.count_ones() as i32)
            .max()
            .unwrap_or(0)
            - 1
    }

    pub fn is_pure(&self) -> bool {
        let d = self.dimension() + 1;
        self.facets.iter().all(|f| f.count_ones() as i32 == d)
    }

    pub(crate) fn contains_mask(&self, face: u64) -> bool {
        self.facets.iter().any(|&f| face & !f == 0)
    }

    pub fn is_face(&self, vertices: &[Vertex]) -> bool {
        self.mask_of(vertices)
            .map(|m| self.contains_mask(m))
            .unwrap_or(false)
    }

    /// Real vertex positions and facets re-encoded over them.
    pub(crate) fn compressed(&self) -> (Vec<usize>, Vec<u64>) {
        let real: Vec<usize> = mask_bits(self.real_mask()).collect();
        let mut to_new = [0u8; 64];
        for (i, &p) in real.iter().enumerate() {
            to_new[p] = i as u8;
        }
        let facets = self
            .facets
            .iter()
            .map(|&f| mask_bits(f).fold(0u64, |m, p| m | 1 << to_new[p]))
            .collect();
        (real, facets)
    }

    /// Face table over the real vertices, or `None` when there are too many.
    pub(crate) fn face_table(&self) -> Option<(Vec<usize>, FaceTable)> {
        let (real, facets) = self.compressed();
        if real.len() > MAX_TABLE_VERTICES {
            return None;
        }
        let mut t = FaceTable::new(real.len());
        for f in facets {
            t.insert(f);
        }
        t.close_down();
        Some((real, t))
    }

    /// `(f_0, …, f_dim)`; the empty face is not counted.
    pub fn f_vector(&self) -> Vec<u64> {
        let dim = self.dimension();
        if dim < 0 {
            return Vec::new();
        }
        let mut counts = if let Some((_, table)) = self.face_table() {
            table.counts_by_size()
        } else {
            let mut seen: HashSet<u64> = HashSet::new();
            for &f in &self.facets {
                // enumerate all submasks of f
                let mut s = f;
                loop {
                    seen.insert(s);
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & f;
                }
            }
            let mut counts = vec![0u64; dim as usize + 2];
            for s in seen {
                counts[s.count_ones() as usize] += 1;
            }
            counts
        };
        counts.remove(0);
        counts.truncate(dim as usize + 1);
        counts
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &f)| if k % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Pure, every ridge in exactly two facets, and connected through ridges.
    pub fn is_pseudomanifold(&self) -> bool {
        if self.facets.is_empty() || !self.is_pure() {
            return false;
        }
        // {∅}, the (-1)-sphere
        if self.dimension() < 0 {
            return true;
        }
        let n = self.facets.len();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                parent[x as usize] = parent[parent[x as usize] as usize];
                x = parent[x as usize];
            }
            x
        }
        if self.universe.len() <= 16 {
            // direct-addressed ridge table: facet index, or PAIRED after a second hit
            const UNSEEN: u32 = u32::MAX;
            const PAIRED: u32 = u32::MAX - 1;
            thread_local! {
                static SEEN: std::cell::RefCell<Vec<u32>> = std::cell::RefCell::new(vec![UNSEEN; 1 << 16]);
            }
            return SEEN.with(|cell| {
                let mut seen = cell.borrow_mut();
                let mut scan = || {
                    for (fi, &f) in self.facets.iter().enumerate() {
                        for v in mask_bits(f) {
                            let r = (f & !(1 << v)) as usize;
                            match seen[r] {
                                UNSEEN => seen[r] = fi as u32,
                                PAIRED => return false,
                                a => {
                                    let (a, b) = (find(&mut parent, a), find(&mut parent, fi as u32));
                                    parent[a as usize] = b;
                                    seen[r] = PAIRED;
                                }
                            }
                        }
                    }
                    self.facets
                        .iter()
                        .all(|&f| mask_bits(f).all(|v| seen[(f & !(1 << v)) as usize] == PAIRED))
                };
                let all_paired = scan();
                // the table is shared across calls: put back every slot touched
                for &f in &self.facets {
                    for v in mask_bits(f) {
                        seen[(f & !(1 << v)) as usize] = UNSEEN;
                    }
                }
                if !all_paired {
                    return false;
                }
                let root = find(&mut parent, 0);
                (0..n as u32).all(|x| find(&mut parent, x) == root)
            });
        }
        // pack (ridge, facet index) into one word when they fit
        let shift = usize::BITS - n.leading_zeros();
        let packed = 64 - self.universe.len() as u32 >= shift;
        let width = self.facets.first().map_or(0, |f| f.count_ones() as usize);
        let mut keys: Vec<u64> = Vec::new();
        let mut pairs: Vec<(u64, u32)> = Vec::new();
        if packed {
            keys.reserve(n * width);
        } else {
            pairs.reserve(n * width);
        }
        for (fi, &f) in self.facets.iter().enumerate() {
            for v in mask_bits(f) {
                let r = f & !(1 << v);
                if packed {
                    keys.push(r << shift | fi as u64);
                } else {
                    pairs.push((r, fi as u32));
                }
            }
        }
        let low = (1u64 << shift) - 1;
        if packed {
            keys.sort_unstable();
        } else {
            pairs.sort_unstable();
        }
        let pair = |i: usize| if packed { (keys[i] >> shift, (keys[i] & low) as u32) } else { pairs[i] };
        let len = n * width;
        let mut i = 0;
        while i < len {
            let (ridge, a) = pair(i);
            let mut j = i + 1;
            while j < len && pair(j).0 == ridge {
                j += 1;
            }
            if j - i != 2 {
                return false;
            }
            let (a, b) = (find(&mut parent, a), find(&mut parent, pair(i + 1).1));
            parent[a as usize] = b;
            i = j;
        }
        let root = find(&mut parent, 0);
        (0..self.facets.len() as u32).all(|x| find(&mut parent, x) == root)
    }

    /// Minimal non-faces as masks over the universe; each ghost vertex is a singleton.
    pub(crate) fn minimal_non_face_masks(&self) -> Result<Vec<u64>> {
        let (real, table) = self.face_table().ok_or(Error::TooLarge {
            what: "real vertex count for minimal non-faces",
            size: self.f0() as u64,
            cap: MAX_TABLE_VERTICES as u64,
        })?;
        let mut out: Vec<u64> = table
            .complement()
            .minimal()
            .iter()
            .map(|s| mask_bits(s).fold(0u64, |m, i| m | 1 << real[i]))
            .collect();
        let ghosts = {
            let all = if self.universe.len() == 64 {
                u64::MAX
            } else {
                (1u64 << self.universe.len()) - 1
            };
            all & !self.real_mask()
        };
        out.extend(mask_bits(ghosts).map(|g| 1u64 << g));
        out.sort_unstable_by_key(|m| (m.count_ones(), *m));
        Ok(out)
    }

    /// All inclusion-minimal non-faces, ghost singletons included.
    pub fn minimal_non_faces(&self) -> Result<Vec<Vec<Vertex>>> {
        Ok(self
            .minimal_non_face_masks()?
            .into_iter()
            .map(|m| self.vertices_of(m))
            .collect())
    }

    /// Every minimal non-face among real vertices has exactly two elements.
    pub fn is_flag(&self) -> Result<bool> {
        let real = self.real_mask();
        Ok(self
            .minimal_non_face_masks()?
            .into_iter()
            .filter(|m| m & !real == 0)
            .all(|m| m.count_ones() == 2))
    }

    /// `lk(v)`: facets through `v` with `v` removed, on the same universe.
    pub fn link(&self, v: Vertex) -> Option<SimplicialComplex> {
        let p = self.universe.iter().position(|&w| w == v)?;
        let masks: Vec<u64> = self
            .facets
            .iter()
            .filter(|f| *f >> p & 1 == 1)
            .map(|f| f & !(1 << p))
            .collect();
        if masks.is_empty() {
            return None;
        }
        Some(Self::from_masks(self.universe.clone(), masks))
    }

    pub fn one_skeleton(&self) -> Graph {
        let (real, facets) = self.compressed();
        let mut g = Graph::new(real.iter().map(|&p| self.universe[p]).collect());
        for f in facets {
            let vs: Vec<usize> = mask_bits(f).collect();
            for (i, &u) in vs.iter().enumerate() {
                for &w in &vs[i + 1..] {
                    g.add_edge(u, w);
                }
            }
        }
        g
    }

    fn is_cycle_graph(&self) -> bool {
        if !self.is_pure() || self.dimension() != 1 {
            return false;
        }
        let g = self.one_skeleton();
        if g.len() < 3 || (0..g.len()).any(|u| g.degree(u) != 2) {
            return false;
        }
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for u in mask_bits(frontier) {
                next |= g.neighbors(u);
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen.count_ones() as usize == g.len()
    }

    /// Sphere recognition: complete in dimension ≤ 2, necessary conditions above.
    pub fn sphere_check(&self) -> SphereCheck {
        match self.dimension() {
            d if d < 0 => SphereCheck::Complete(self.facets == [0]),
            0 => SphereCheck::Complete(self.facets.len() == 2),
            1 => SphereCheck::Complete(self.is_cycle_graph()),
            2 => {
                let ok = self.is_pseudomanifold()
                    && self.euler_characteristic() == 2
                    && self
                        .real_vertices()
                        .into_iter()
                        .all(|v| self.link(v).is_some_and(|l| l.is_cycle_graph()));
                SphereCheck::Complete(ok)
            }
            d => SphereCheck::Partial {
                necessary_conditions: self.is_pseudomanifold()
                    && self.euler_characteristic() == 1 + if d % 2 == 0 { 1 } else { -1 },
            },
        }
    }

    /// Facet text format: `1:0,2:1|1:1,2:0`.
    pub fn to_text(&self) -> String {
        let facets: Vec<String> = self
            .facet_set()
            .iter()
            .map(|f| {
                let vs: Vec<String> = f.iter().map(|v| v.to_string()).collect();
                vs.join(",")
            })
            .collect();
        facets.join("|")
    }

    /// Parses the facet text format; the universe is the set of named vertices.
    pub fn parse_facets(s: &str) -> Result<Self> {
        let facets = s
            .split('|')
            .map(|f| {
                f.split(',')
                    .map(str::trim)
                    .filter(|t| !t.is_empty())
                    .map(str::parse)
                    .collect::<Result<Vec<Vertex>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let mut universe: Vec<Vertex> = facets.iter().flatten().copied().collect();
        universe.sort();
        universe.dedup();
        Self::from_facets(universe, &facets)
    }
}
