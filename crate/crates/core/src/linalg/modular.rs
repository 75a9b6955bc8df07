//! Rank modulo a word-sized prime, used as a fast path for rank queries.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::Rng;

use std::collections::BTreeMap;

use super::{ExactMatrix, IntRow};

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly drawn prime in `[2^61, 2^62)`.
pub fn random_prime_62<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 61)..(1u64 << 62)) | 1;
        if is_prime(candidate) {
            return candidate;
        }
    }
}

fn reduce(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits in u64")
}

/// Rank of `m` over `F_p`, or `None` when some denominator vanishes modulo `p`.
pub fn rank_mod(m: &ExactMatrix, p: u64) -> Option<usize> {
    assert!(p >= 2, "modulus must be at least 2");
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for r in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for v in m.row(r) {
            if v.is_zero() {
                row.push(0);
                continue;
            }
            let den = reduce(v.denom(), p);
            if den == 0 {
                return None;
            }
            let inv = pow_mod(den, p - 2, p);
            row.push(mul_mod(reduce(v.numer(), p), inv, p));
        }
        rows.push(row);
    }
    let mut rank = 0;
    for col in 0..m.cols() {
        let Some(pos) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pos);
        let inv = pow_mod(rows[rank][col], p - 2, p);
        let pivot: Vec<u64> = rows[rank].iter().map(|&x| mul_mod(x, inv, p)).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            let f = row[col];
            if f == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot).skip(col) {
                *x = (*x + p - mul_mod(f, y, p)) % p;
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    Some(rank)
}

/// Rank over `F_p` of sparse integer rows, by the same bucketed elimination as the exact path.
pub(crate) fn sparse_rank_mod(rows: &[IntRow], p: u64) -> usize {
    let mut buckets: BTreeMap<usize, Vec<Vec<(usize, u64)>>> = BTreeMap::new();
    for r in rows {
        let row: Vec<(usize, u64)> = r
            .0
            .iter()
            .map(|(c, v)| (*c, reduce(v, p)))
            .filter(|(_, v)| *v != 0)
            .collect();
        if let Some(&(c, _)) = row.first() {
            buckets.entry(c).or_default().push(row);
        }
    }
    let mut rank = 0;
    while let Some((_, mut bucket)) = buckets.pop_first() {
        let best = (0..bucket.len())
            .min_by_key(|&i| bucket[i].len())
            .expect("nonempty bucket");
        let pivot = bucket.swap_remove(best);
        let inv = pow_mod(pivot[0].1, p - 2, p);
        for row in bucket {
            let f = mul_mod(row[0].1, inv, p);
            let mut out = Vec::with_capacity(row.len() + pivot.len());
            let (mut i, mut j) = (1, 1);
            while i < row.len() || j < pivot.len() {
                let ci = row.get(i).map_or(usize::MAX, |e| e.0);
                let cj = pivot.get(j).map_or(usize::MAX, |e| e.0);
                if ci < cj {
                    out.push(row[i]);
                    i += 1;
                } else {
                    let sub = mul_mod(f, pivot[j].1, p);
                    let v = if ci == cj {
                        i += 1;
                        (row[i - 1].1 + p - sub) % p
                    } else {
                        (p - sub) % p
                    };
                    if v != 0 {
                        out.push((cj, v));
                    }
                    j += 1;
                }
            }
            if let Some(&(c, _)) = out.first() {
                buckets.entry(c).or_default().push(out);
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn primality() {
        let primes = [2u64, 3, 5, 61, 1_000_000_007, 2_305_843_009_213_693_951];
        for p in primes {
            assert!(is_prime(p), "{p}");
        }
        let composites = [0u64, 1, 4, 561, 1_000_000_007 * 3, 3_215_031_751, u64::MAX];
        for c in composites {
            assert!(!is_prime(c), "{c}");
        }
    }

    #[test]
    fn random_prime_in_range() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let p = random_prime_62(&mut rng);
        assert!(is_prime(p));
        assert_eq!(64 - p.leading_zeros(), 62);
    }

    #[test]
    fn denominators_divisible_by_p() {
        let m = ExactMatrix::from_rows(vec![vec![num_rational::BigRational::new(
            1.into(),
            5.into(),
        )]])
        .unwrap();
        assert_eq!(rank_mod(&m, 5), None);
        assert_eq!(rank_mod(&m, 7), Some(1));
    }

    #[test]
    fn sparse_rank_matches_dense() {
        let m = ExactMatrix::from_i64_rows(&[&[1, 2, 0, 3], &[2, 4, 0, 6], &[0, 5, 5, 0], &[1, 7, 5, 3]]);
        assert_eq!(sparse_rank_mod(&m.int_rows(), 101), 2);
        assert_eq!(rank_mod(&m, 101), Some(2));
        // determinant 5: primitive rows, but dependent modulo 5
        let m = ExactMatrix::from_i64_rows(&[&[5, 1], &[0, 1]]);
        assert_eq!(sparse_rank_mod(&m.int_rows(), 5), 1);
        assert_eq!(sparse_rank_mod(&m.int_rows(), 7), 2);
    }
}
