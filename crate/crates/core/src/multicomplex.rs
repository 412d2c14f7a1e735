//! c-monomials, c-multicomplexes and their Alexander duality.
//!
//! A multicomplex is stored as a membership bit table over the grid of all
//! c-monomials. A monomial `x^a` lives at the mixed-radix index
//! `Σ a_i · Π_{j<i} (c_j + 1)`, so the first axis varies fastest. Under this
//! encoding the complement `x^{c-a}` of the cell `idx` is `cells - 1 - idx`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of grid cells `Π (c_i + 1)`.
pub const DEFAULT_MAX_GRID: u64 = 1 << 24;

/// The vector `c = (c_1, …, c_m)` with all entries positive.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct CompositionVector {
    entries: Vec<u32>,
    strides: Vec<u64>,
    cells: u64,
}

impl CompositionVector {
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidComposition("c must have at least one entry".into()));
        }
        if let Some(pos) = entries.iter().position(|&e| e == 0) {
            return Err(Error::InvalidComposition(format!(
                "entry c_{} is zero; entries must be positive",
                pos + 1
            )));
        }
        let mut strides = Vec::with_capacity(entries.len());
        let mut cells: u64 = 1;
        for &e in &entries {
            strides.push(cells);
            cells = cells.saturating_mul(u64::from(e) + 1);
        }
        Ok(Self {
            entries,
            strides,
            cells,
        })
    }

    /// `(1, …, 1)` of length `m`, the classical Bier case.
    pub fn ones(m: usize) -> Result<Self> {
        Self::new(vec![1; m])
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    /// `|c| = Σ c_i`.
    pub fn total(&self) -> u32 {
        self.entries.iter().sum()
    }

    /// `c̄ = (c_1 + 1, …, c_m + 1)`.
    pub fn bar_entries(&self) -> Vec<u32> {
        self.entries.iter().map(|e| e + 1).collect()
    }

    /// Number of c-monomials, saturating at `u64::MAX`.
    pub fn cells(&self) -> u64 {
        self.cells
    }

    /// Size `|c| + m` of the vertex universe X̃.
    pub fn vertex_count(&self) -> usize {
        self.total() as usize + self.m()
    }

    /// Position of the vertex `(axis, 0)` in X̃; `axis` is 0-based.
    pub fn vertex_offset(&self, axis: usize) -> usize {
        self.entries[..axis].iter().map(|&e| e as usize + 1).sum()
    }

    pub(crate) fn stride(&self, axis: usize) -> usize {
        self.strides[axis] as usize
    }

    pub(crate) fn index_of(&self, exps: &[u32]) -> usize {
        exps.iter()
            .zip(&self.strides)
            .map(|(&a, &s)| a as usize * s as usize)
            .sum()
    }

    pub(crate) fn digit(&self, idx: usize, axis: usize) -> u32 {
        ((idx / self.strides[axis] as usize) % (self.entries[axis] as usize + 1)) as u32
    }

    pub(crate) fn exponents_of(&self, idx: usize) -> Vec<u32> {
        (0..self.m()).map(|i| self.digit(idx, i)).collect()
    }

    /// The top monomial `x^c`.
    pub fn top(&self) -> Monomial {
        Monomial::new(self.entries.clone())
    }

    fn check_grid(&self, cap: u64) -> Result<()> {
        if self.cells > cap {
            return Err(Error::CensusTooLarge {
                cells: self.cells,
                cap,
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for CompositionVector {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<CompositionVector> for Vec<u32> {
    fn from(c: CompositionVector) -> Self {
        c.entries
    }
}

impl fmt::Debug for CompositionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{:?}", self.entries)
    }
}

impl fmt::Display for CompositionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Parses `"2,1,1"`.
impl FromStr for CompositionVector {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad composition entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

/// A monomial `x^a`, stored as its exponent vector. Serializes as `"2 0"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Self { exps }
    }

    pub fn unit(m: usize) -> Self {
        Self { exps: vec![0; m] }
    }

    /// The pure power `x_i^j` in `m` variables; `axis` is 0-based.
    pub fn pure_power(m: usize, axis: usize, j: u32) -> Self {
        let mut exps = vec![0; m];
        exps[axis] = j;
        Self { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() == other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn is_c_monomial(&self, c: &CompositionVector) -> bool {
        self.exps.len() == c.m() && self.exps.iter().zip(c.entries()).all(|(a, ci)| a <= ci)
    }

    pub(crate) fn check(&self, c: &CompositionVector) -> Result<()> {
        if self.is_c_monomial(c) {
            Ok(())
        } else {
            Err(Error::InvalidMonomial {
                exponents: self.exps.clone(),
                c: c.entries().to_vec(),
            })
        }
    }

    /// `(x^a)^c = x^{c-a}`.
    pub fn complement(&self, c: &CompositionVector) -> Result<Monomial> {
        self.check(c)?;
        Ok(Monomial::new(
            c.entries().iter().zip(&self.exps).map(|(ci, a)| ci - a).collect(),
        ))
    }

    /// `x^a ⋄ x_i^j`: replace the exponent on `axis` by `j`.
    pub fn diamond(&self, axis: usize, j: u32) -> Monomial {
        let mut exps = self.exps.clone();
        exps[axis] = j;
        Monomial::new(exps)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

impl FromStr for Monomial {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let exps = s
            .split_whitespace()
            .map(|t| {
                t.parse::<u32>()
                    .map_err(|_| Error::Parse(format!("bad exponent {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        if exps.is_empty() {
            return Err(Error::Parse("empty monomial".into()));
        }
        Ok(Monomial::new(exps))
    }
}

impl From<Monomial> for String {
    fn from(m: Monomial) -> String {
        m.to_string()
    }
}

impl TryFrom<String> for Monomial {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

/// Free-function form of [`Monomial::complement`].
pub fn complement(a: &Monomial, c: &CompositionVector) -> Result<Monomial> {
    a.complement(c)
}

/// Parses the generator text format `"2 0; 1 1"`.
pub fn parse_monomials(s: &str) -> Result<Vec<Monomial>> {
    s.split(';')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(str::parse)
        .collect()
}

/// Formats monomials in the generator text format.
pub fn format_monomials(gens: &[Monomial]) -> String {
    let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    parts.join("; ")
}

/// Minimal generating set `G(I)` of a monomial ideal, an antichain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialIdealGens {
    pub c: CompositionVector,
    pub gens: Vec<Monomial>,
}

impl MonomialIdealGens {
    /// Reduces `gens` to its divisibility-minimal elements.
    pub fn minimal(c: CompositionVector, mut gens: Vec<Monomial>) -> Self {
        gens.sort();
        gens.dedup();
        let keep: Vec<Monomial> = gens
            .iter()
            .filter(|g| !gens.iter().any(|h| h != *g && h.divides(g)))
            .cloned()
            .collect();
        Self { c, gens: keep }
    }

    pub fn is_antichain(&self) -> bool {
        self.gens.iter().enumerate().all(|(i, g)| {
            self.gens
                .iter()
                .enumerate()
                .all(|(j, h)| i == j || !g.divides(h))
        })
    }
}

/// A nonempty divisibility-closed set of c-monomials.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multicomplex {
    c: CompositionVector,
    bits: Vec<u64>,
    len: usize,
    generators: Vec<u32>,
    min_non: Vec<u32>,
}

impl fmt::Debug for Multicomplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}<{}>", self.c, format_monomials(&self.generators()))
    }
}

fn bit(bits: &[u64], i: usize) -> bool {
    bits[i >> 6] >> (i & 63) & 1 == 1
}

impl Multicomplex {
    /// Downward closure of `gens`. Redundant generators are dropped.
    pub fn from_generators(c: &CompositionVector, gens: &[Monomial]) -> Result<Self> {
        c.check_grid(DEFAULT_MAX_GRID)?;
        if gens.is_empty() {
            return Err(Error::InvalidArgument(
                "a multicomplex needs at least one generator".into(),
            ));
        }
        let n = c.cells() as usize;
        let mut bits = vec![0u64; n.div_ceil(64)];
        for g in gens {
            g.check(c)?;
            let i = c.index_of(g.exponents());
            bits[i >> 6] |= 1 << (i & 63);
        }
        // predecessors have smaller indices, so one descending sweep closes the set
        for idx in (0..n).rev() {
            if !bit(&bits, idx) {
                continue;
            }
            for axis in 0..c.m() {
                if c.digit(idx, axis) > 0 {
                    let j = idx - c.stride(axis);
                    bits[j >> 6] |= 1 << (j & 63);
                }
            }
        }
        Ok(Self::from_bits_unchecked(c.clone(), bits))
    }

    /// Builds a multicomplex from an explicit member list, validating closure.
    pub fn from_members(c: &CompositionVector, members: &[Monomial]) -> Result<Self> {
        c.check_grid(DEFAULT_MAX_GRID)?;
        let n = c.cells() as usize;
        let mut bits = vec![0u64; n.div_ceil(64)];
        for a in members {
            a.check(c)?;
            let i = c.index_of(a.exponents());
            bits[i >> 6] |= 1 << (i & 63);
        }
        Self::from_bits(c.clone(), bits)
    }

    pub(crate) fn from_bits(c: CompositionVector, bits: Vec<u64>) -> Result<Self> {
        let n = c.cells() as usize;
        if n == 0 || !bit(&bits, 0) {
            return Err(Error::InvalidArgument(
                "multicomplex must contain the unit monomial".into(),
            ));
        }
        for idx in 0..n {
            if !bit(&bits, idx) {
                continue;
            }
            for axis in 0..c.m() {
                if c.digit(idx, axis) > 0 && !bit(&bits, idx - c.stride(axis)) {
                    return Err(Error::InvalidArgument(format!(
                        "member {:?} has a divisor outside the set",
                        c.exponents_of(idx)
                    )));
                }
            }
        }
        Ok(Self::from_bits_unchecked(c, bits))
    }

    pub(crate) fn from_bits_unchecked(c: CompositionVector, bits: Vec<u64>) -> Self {
        let n = c.cells() as usize;
        let m = c.m();
        let strides: Vec<usize> = (0..m).map(|axis| c.stride(axis)).collect();
        let mut generators = Vec::new();
        let mut min_non = Vec::new();
        let mut len = 0;
        // exponent digits of idx, advanced as an odometer
        let mut digits = vec![0u32; m];
        for idx in 0..n {
            let inside = bit(&bits, idx);
            if inside {
                len += 1;
                let maximal = (0..m).all(|axis| digits[axis] == c.entries()[axis] || !bit(&bits, idx + strides[axis]));
                if maximal {
                    generators.push(idx as u32);
                }
            } else {
                let minimal = (0..m).all(|axis| digits[axis] == 0 || bit(&bits, idx - strides[axis]));
                if minimal {
                    min_non.push(idx as u32);
                }
            }
            for axis in 0..m {
                if digits[axis] < c.entries()[axis] {
                    digits[axis] += 1;
                    break;
                }
                digits[axis] = 0;
            }
        }
        Self {
            c,
            bits,
            len,
            generators,
            min_non,
        }
    }

    pub fn c(&self) -> &CompositionVector {
        &self.c
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_proper(&self) -> bool {
        (self.len as u64) < self.c.cells()
    }

    pub fn contains(&self, a: &Monomial) -> bool {
        a.is_c_monomial(&self.c) && bit(&self.bits, self.c.index_of(a.exponents()))
    }

    pub(crate) fn contains_index(&self, idx: usize) -> bool {
        bit(&self.bits, idx)
    }

    pub(crate) fn member_indices(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.c.cells() as usize).filter(move |&i| bit(&self.bits, i))
    }

    pub(crate) fn generator_indices(&self) -> &[u32] {
        &self.generators
    }

    /// Members sorted lexicographically by exponent vector.
    pub fn members(&self) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .member_indices()
            .map(|i| Monomial::new(self.c.exponents_of(i)))
            .collect();
        out.sort();
        out
    }

    fn monomials_at(&self, idx: &[u32]) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = idx
            .iter()
            .map(|&i| Monomial::new(self.c.exponents_of(i as usize)))
            .collect();
        out.sort();
        out
    }

    /// `max(M)`, sorted lexicographically.
    pub fn generators(&self) -> Vec<Monomial> {
        self.monomials_at(&self.generators)
    }

    /// `min(M)`, sorted lexicographically.
    pub fn min_non_elements(&self) -> Vec<Monomial> {
        self.monomials_at(&self.min_non)
    }

    /// `M^∨ = { x^{c-a} : x^a ∉ M }`.
    pub fn alexander_dual(&self) -> Result<Multicomplex> {
        if !self.is_proper() {
            return Err(Error::NotProper);
        }
        let n = self.c.cells() as usize;
        let mut bits = vec![0u64; self.bits.len()];
        for idx in 0..n {
            if !bit(&self.bits, idx) {
                let j = n - 1 - idx;
                bits[j >> 6] |= 1 << (j & 63);
            }
        }
        Ok(Self::from_bits_unchecked(self.c.clone(), bits))
    }

    /// `G(I_c(M)) = min(M)`.
    pub fn ideal_generators(&self) -> Result<MonomialIdealGens> {
        if !self.is_proper() {
            return Err(Error::NotProper);
        }
        Ok(MonomialIdealGens {
            c: self.c.clone(),
            gens: self.min_non_elements(),
        })
    }

    /// Membership bit string in lexicographic monomial order; defines census order.
    pub fn lex_key(&self) -> Vec<bool> {
        lex_order(&self.c)
            .into_iter()
            .map(|i| bit(&self.bits, i))
            .collect()
    }
}

/// Grid indices sorted lexicographically by exponent vector (first axis most significant).
fn lex_order(c: &CompositionVector) -> Vec<usize> {
    let n = c.cells() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| c.exponents_of(i));
    order
}

/// Streams every proper c-multicomplex once, ordered lexicographically by
/// the membership bit string read in lexicographic monomial order.
pub fn enumerate_proper(c: &CompositionVector, max_grid: u64) -> Result<ProperMulticomplexes> {
    c.check_grid(max_grid)?;
    Ok(ProperMulticomplexes::new(c.clone()))
}

pub struct ProperMulticomplexes {
    c: CompositionVector,
    order: Vec<usize>,
    /// positions (in `order`) of the immediate divisors of each cell
    preds: Vec<Vec<usize>>,
    assign: Vec<bool>,
    started: bool,
    done: bool,
}

impl ProperMulticomplexes {
    fn new(c: CompositionVector) -> Self {
        let order = lex_order(&c);
        let mut pos = vec![0; order.len()];
        for (p, &idx) in order.iter().enumerate() {
            pos[idx] = p;
        }
        let preds = order
            .iter()
            .map(|&idx| {
                (0..c.m())
                    .filter(|&axis| c.digit(idx, axis) > 0)
                    .map(|axis| pos[idx - c.stride(axis)])
                    .collect()
            })
            .collect();
        let mut assign = vec![false; order.len()];
        assign[0] = true;
        Self {
            c,
            order,
            preds,
            assign,
            started: false,
            done: false,
        }
    }

    fn advance(&mut self) -> bool {
        for p in (1..self.assign.len()).rev() {
            if self.assign[p] {
                self.assign[p] = false;
            } else if self.preds[p].iter().all(|&q| self.assign[q]) {
                self.assign[p] = true;
                return true;
            }
        }
        false
    }

    fn current(&self) -> Multicomplex {
        let n = self.order.len();
        let mut bits = vec![0u64; n.div_ceil(64)];
        for (p, &idx) in self.order.iter().enumerate() {
            if self.assign[p] {
                bits[idx >> 6] |= 1 << (idx & 63);
            }
        }
        Multicomplex::from_bits_unchecked(self.c.clone(), bits)
    }
}

impl Iterator for ProperMulticomplexes {
    type Item = Multicomplex;

    fn next(&mut self) -> Option<Multicomplex> {
        if self.done {
            return None;
        }
        if self.started && !self.advance() {
            self.done = true;
            return None;
        }
        self.started = true;
        // the full multicomplex is the lexicographically last downset
        if self.assign.iter().all(|&b| b) {
            self.done = true;
            return None;
        }
        Some(self.current())
    }
}
