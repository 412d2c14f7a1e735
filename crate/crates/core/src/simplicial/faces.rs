//! Bit table over all subsets of a small vertex set.
//!
//! Bit `s` of the table stands for the vertex subset with bitmask `s`. The
//! closure and extremal-element operations act on 64 subsets per word: for a
//! vertex `v < 6` the partner of `s` lives in the same word, otherwise in the
//! word whose index differs in bit `v - 6`.

/// Largest vertex count a face table accepts (2^24 bits = 2 MiB).
pub const MAX_TABLE_VERTICES: usize = 24;

/// Positions `t` in a 64-bit word whose 6-bit index has bit `v` set.
const HAS_BIT: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Positions `t` in a 64-bit word whose 6-bit index has `w` bits set.
const LOW_WEIGHT: [u64; 7] = {
    let mut out = [0u64; 7];
    let mut t = 0;
    while t < 64 {
        out[(t as u32).count_ones() as usize] |= 1 << t;
        t += 1;
    }
    out
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct FaceTable {
    n: usize,
    words: Vec<u64>,
}

impl FaceTable {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_TABLE_VERTICES, "face table over {n} vertices");
        let words = if n >= 6 { 1 << (n - 6) } else { 1 };
        Self {
            n,
            words: vec![0; words],
        }
    }

    fn valid_mask(&self) -> u64 {
        if self.n >= 6 {
            u64::MAX
        } else {
            (1u64 << (1 << self.n)) - 1
        }
    }

    pub fn insert(&mut self, s: u64) {
        self.words[(s >> 6) as usize] |= 1 << (s & 63);
    }

    /// Adds every subset of every member.
    pub fn close_down(&mut self) {
        for v in 0..self.n {
            if v < 6 {
                let shift = 1 << v;
                for w in &mut self.words {
                    *w |= (*w & HAS_BIT[v]) >> shift;
                }
            } else {
                let stride = 1 << (v - 6);
                for i in 0..self.words.len() {
                    if i & stride != 0 {
                        self.words[i ^ stride] |= self.words[i];
                    }
                }
            }
        }
    }

    /// Adds every superset (within the vertex set) of every member.
    pub fn close_up(&mut self) {
        let valid = self.valid_mask();
        for v in 0..self.n {
            if v < 6 {
                let shift = 1 << v;
                for w in &mut self.words {
                    *w |= ((*w & !HAS_BIT[v]) << shift) & valid;
                }
            } else {
                let stride = 1 << (v - 6);
                for i in 0..self.words.len() {
                    if i & stride == 0 {
                        self.words[i | stride] |= self.words[i];
                    }
                }
            }
        }
    }

    pub fn complement(&self) -> Self {
        let valid = self.valid_mask();
        Self {
            n: self.n,
            words: self.words.iter().map(|w| !w & valid).collect(),
        }
    }

    /// Members with no member strictly above them.
    pub fn maximal(&self) -> Self {
        let mut out = self.words.clone();
        for v in 0..self.n {
            if v < 6 {
                let shift = 1 << v;
                for (o, w) in out.iter_mut().zip(&self.words) {
                    *o &= !((w & HAS_BIT[v]) >> shift);
                }
            } else {
                let stride = 1 << (v - 6);
                for i in 0..out.len() {
                    if i & stride == 0 {
                        out[i] &= !self.words[i | stride];
                    }
                }
            }
        }
        Self { n: self.n, words: out }
    }

    /// Members with no member strictly below them.
    pub fn minimal(&self) -> Self {
        let valid = self.valid_mask();
        let mut out = self.words.clone();
        for v in 0..self.n {
            if v < 6 {
                let shift = 1 << v;
                for (o, w) in out.iter_mut().zip(&self.words) {
                    *o &= !(((w & !HAS_BIT[v]) << shift) & valid);
                }
            } else {
                let stride = 1 << (v - 6);
                for i in 0..out.len() {
                    if i & stride != 0 {
                        out[i] &= !self.words[i ^ stride];
                    }
                }
            }
        }
        Self { n: self.n, words: out }
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as u64;
                    w &= w - 1;
                    Some(((i as u64) << 6) | t)
                }
            })
        })
    }

    /// Number of members of each cardinality `0..=n`.
    pub fn counts_by_size(&self) -> Vec<u64> {
        let mut counts = vec![0u64; self.n + 1];
        for (i, &w) in self.words.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let high = i.count_ones() as usize;
            for (low, mask) in LOW_WEIGHT.iter().enumerate() {
                let c = (w & mask).count_ones() as u64;
                if c > 0 {
                    counts[high + low] += c;
                }
            }
        }
        counts
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_down(n: usize, gens: &[u64]) -> Vec<u64> {
        (0..1u64 << n)
            .filter(|s| gens.iter().any(|g| s & !g == 0))
            .collect()
    }

    fn naive_up(n: usize, gens: &[u64]) -> Vec<u64> {
        (0..1u64 << n)
            .filter(|s| gens.iter().any(|g| g & !s == 0))
            .collect()
    }

    #[test]
    fn closures_match_naive() {
        let cases: &[(usize, &[u64])] = &[
            (3, &[0b011, 0b100]),
            (5, &[0b10101, 0b01110]),
            (7, &[0b1010101, 0b0111000, 0b1000000]),
            (9, &[0b1_0000_0001, 0b0_1111_0000, 0b0_0000_1110]),
        ];
        for &(n, gens) in cases {
            let mut t = FaceTable::new(n);
            gens.iter().for_each(|&g| t.insert(g));
            let mut down = t.clone();
            down.close_down();
            assert_eq!(down.iter().collect::<Vec<_>>(), naive_down(n, gens));
            let mut up = t.clone();
            up.close_up();
            assert_eq!(up.iter().collect::<Vec<_>>(), naive_up(n, gens));

            let mut max: Vec<u64> = down.maximal().iter().collect();
            let mut expect: Vec<u64> = gens
                .iter()
                .copied()
                .filter(|&g| !gens.iter().any(|&h| h != g && g & !h == 0))
                .collect();
            max.sort();
            expect.sort();
            assert_eq!(max, expect);
            let min: Vec<u64> = up.minimal().iter().collect();
            let mut expect_min: Vec<u64> = gens
                .iter()
                .copied()
                .filter(|&g| !gens.iter().any(|&h| h != g && h & !g == 0))
                .collect();
            expect_min.sort();
            assert_eq!(min, expect_min);
            assert_eq!(
                down.complement().iter().count() + down.iter().count(),
                1 << n
            );
        }
    }

    #[test]
    fn counts_of_full_cube() {
        let mut t = FaceTable::new(4);
        t.insert(0b1111);
        t.close_down();
        assert_eq!(t.counts_by_size(), vec![1, 4, 6, 4, 1]);
    }
}
