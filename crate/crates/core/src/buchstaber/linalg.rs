//! Exact integer and mod-p linear algebra on small dense matrices.

use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};

fn mul<T: PrimInt>(a: T, b: T) -> Result<T> {
    a.checked_mul(&b).ok_or(Error::Overflow)
}

fn sub<T: PrimInt>(a: T, b: T) -> Result<T> {
    a.checked_sub(&b).ok_or(Error::Overflow)
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant<T: PrimInt + Signed>(matrix: &[Vec<T>]) -> Result<T> {
    let n = matrix.len();
    if matrix.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("determinant of a non-square matrix".into()));
    }
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = matrix.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(T::zero());
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = sub(mul(a[i][j], a[k][k])?, mul(a[i][k], a[k][j])?)?;
                a[i][j] = num / prev;
            }
        }
        prev = a[k][k];
    }
    mul(sign, a[n - 1][n - 1])
}

fn gcd<T: PrimInt + Signed>(a: T, b: T) -> T {
    let (mut a, mut b) = (a.abs(), b.abs());
    while !b.is_zero() {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// gcd of all maximal minors of a `k × d` matrix with `k ≤ d`; zero when the
/// rows are dependent.
pub fn gcd_of_maximal_minors<T: PrimInt + Signed>(rows: &[Vec<T>]) -> Result<T> {
    let k = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    if k > d {
        return Ok(T::zero());
    }
    let mut cols: Vec<usize> = (0..k).collect();
    let mut g = T::zero();
    loop {
        let minor: Vec<Vec<T>> = rows.iter().map(|r| cols.iter().map(|&c| r[c]).collect()).collect();
        g = gcd(g, bareiss_determinant(&minor)?);
        if g.is_one() {
            return Ok(g);
        }
        // next k-subset of 0..d in lexicographic order
        let Some(i) = (0..k).rev().find(|&i| cols[i] < d - k + i) else {
            return Ok(g);
        };
        cols[i] += 1;
        for j in i + 1..k {
            cols[j] = cols[j - 1] + 1;
        }
    }
}

/// Whether the rows are part of a basis of `ℤ^d`.
pub fn extends_to_basis<T: PrimInt + Signed>(rows: &[Vec<T>]) -> Result<bool> {
    let k = rows.len();
    let d = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidArgument("rows of unequal length".into()));
    }
    let mut flat: Vec<T> = rows.concat();
    extends_in_place(&mut flat, k, d)
}

/// [`extends_to_basis`] on a row-major `k × d` buffer, which is clobbered.
///
/// Unimodular column operations bring the matrix to lower-triangular form;
/// the rows extend to a basis exactly when every pivot is a unit.
pub(crate) fn extends_in_place<T: PrimInt + Signed>(a: &mut [T], k: usize, d: usize) -> Result<bool> {
    if k > d {
        return Ok(false);
    }
    for r in 0..k {
        loop {
            let row = &a[r * d..(r + 1) * d];
            let pivot = (r..d)
                .find(|&j| row[j].abs().is_one())
                .or_else(|| (r..d).filter(|&j| !row[j].is_zero()).min_by_key(|&j| row[j].abs()));
            let Some(p) = pivot else {
                return Ok(false);
            };
            if p != r {
                for i in r..k {
                    a.swap(i * d + r, i * d + p);
                }
            }
            let piv = a[r * d + r];
            let mut done = true;
            for j in r + 1..d {
                if a[r * d + j].is_zero() {
                    continue;
                }
                let q = a[r * d + j] / piv;
                if !q.is_zero() {
                    for i in r..k {
                        a[i * d + j] = sub(a[i * d + j], mul(q, a[i * d + r])?)?;
                    }
                }
                done &= a[r * d + j].is_zero();
            }
            if done {
                break;
            }
        }
        if !a[r * d + r].abs().is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank over `𝔽_p` of integer rows reduced mod `p`.
pub fn rank_mod_p(rows: &[Vec<i64>], p: u64) -> usize {
    let p = p as i64;
    let mut a: Vec<Vec<i64>> = rows.iter().map(|r| r.iter().map(|x| x.rem_euclid(p)).collect()).collect();
    let d = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..d {
        let Some(piv) = (rank..a.len()).find(|&i| a[i][col] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = inverse_mod(a[rank][col], p);
        for x in a[rank].iter_mut() {
            *x = *x * inv % p;
        }
        for i in 0..a.len() {
            if i != rank && a[i][col] != 0 {
                let f = a[i][col];
                for j in 0..d {
                    a[i][j] = (a[i][j] - f * a[rank][j]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inverse_mod(a: i64, p: i64) -> i64 {
    let (mut t, mut new_t, mut r, mut new_r) = (0i64, 1i64, p, a.rem_euclid(p));
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    t.rem_euclid(p)
}

/// Vectors over `𝔽_2` packed as bitmasks are linearly independent.
pub fn independent_gf2(vectors: &[u64]) -> bool {
    let mut basis = [0u64; 64];
    for &v in vectors {
        let mut x = v;
        while x != 0 {
            let top = 63 - x.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = x;
                break;
            }
            x ^= basis[top];
        }
        if x == 0 {
            return false;
        }
    }
    true
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|i| i * i <= p).all(|i| p % i != 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_det(m: &[Vec<i64>]) -> i64 {
        let n = m.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &x)| x).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * naive_det(&minor)
            })
            .sum()
    }

    fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, cols), rows)
    }

    proptest! {
        #[test]
        fn bareiss_matches_cofactor_expansion(n in 1usize..6, seed in matrix(5, 5)) {
            let m: Vec<Vec<i64>> = seed[..n].iter().map(|r| r[..n].to_vec()).collect();
            prop_assert_eq!(bareiss_determinant(&m).unwrap(), naive_det(&m));
            let m128: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
            prop_assert_eq!(bareiss_determinant(&m128).unwrap(), naive_det(&m) as i128);
        }

        #[test]
        fn basis_test_matches_minor_gcd(k in 1usize..4, d in 1usize..5, seed in matrix(4, 4)) {
            prop_assume!(k <= d);
            let rows: Vec<Vec<i64>> = seed[..k].iter().map(|r| r[..d].to_vec()).collect();
            let g = gcd_of_maximal_minors(&rows).unwrap();
            prop_assert_eq!(extends_to_basis(&rows).unwrap(), g == 1);
        }

        #[test]
        fn gf2_independence_matches_rank(seed in matrix(4, 4)) {
            let rows: Vec<Vec<i64>> = seed.iter().map(|r| r.iter().map(|x| x.rem_euclid(2)).collect()).collect();
            let masks: Vec<u64> = rows.iter().map(|r| r.iter().enumerate().fold(0, |m, (i, &x)| m | (x as u64) << i)).collect();
            prop_assert_eq!(independent_gf2(&masks), rank_mod_p(&rows, 2) == rows.len());
        }
    }

    #[test]
    fn small_cases() {
        assert!(extends_to_basis(&[vec![2i64, 3]]).unwrap());
        assert!(!extends_to_basis(&[vec![2i64, 4]]).unwrap());
        assert!(!extends_to_basis(&[vec![1i64, 1], vec![1, -1]]).unwrap());
        assert_eq!(gcd_of_maximal_minors(&[vec![1i64, 1], vec![1, -1]]).unwrap(), 2);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, -1]], 2), 1);
        assert_eq!(rank_mod_p(&[vec![1, 1], vec![1, -1]], 3), 2);
        assert_eq!(inverse_mod(3, 7), 5);
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
        let big = vec![vec![i64::MAX, 2], vec![2, i64::MAX]];
        assert!(matches!(bareiss_determinant(&big), Err(Error::Overflow)));
    }
}
