//! The partition function p(n), generalized pentagonal numbers G_j, and the
//! coefficients of (q;q)_inf = prod_{n>=1} (1 - q^n).
//!
//! The two coefficient sequences are mutual convolution inverses:
//!
//!   sum_{j=0..n} e(j) * p(n-j) = [n = 0],
//!
//! where e(n) = [q^n](q;q)_inf is -1, 0 or +1 and is nonzero exactly when n
//! is a generalized pentagonal number.

use num_traits::{One, Zero};

use crate::rat::Int;

/// Generalized pentagonal number G_j = ceil(j/2) * ceil((3j+1)/2) / 2.
///
/// The sequence runs 0, 1, 2, 5, 7, 12, 15, 22, 26, ... and is strictly
/// increasing for j >= 1.
pub fn pentagonal(j: u32) -> u64 {
    let j = j as u64;
    let a = j.div_ceil(2);
    let b = (3 * j + 1).div_ceil(2);
    a * b / 2
}

/// [q^n](q;q)_inf: (-1)^ceil(j/2) when n = G_j, otherwise 0. Zero for n < 0.
pub fn qpochhammer_coeff(n: i64) -> i64 {
    if n < 0 {
        return 0;
    }
    let n = n as u64;
    let mut j = 0u32;
    loop {
        let g = pentagonal(j);
        if g > n {
            return 0;
        }
        if g == n {
            return if j.div_ceil(2).is_multiple_of(2) {
                1
            } else {
                -1
            };
        }
        j += 1;
    }
}

/// p(n) by the pentagonal-number recurrence; p(n) = 0 for n < 0, p(0) = 1.
///
/// Convenience wrapper that builds a one-shot cache; bulk callers should hold
/// a [`PartitionCache`].
pub fn partition(n: i64) -> Int {
    if n < 0 {
        return Int::zero();
    }
    PartitionCache::new(n as usize).p(n)
}

/// Memoized p(0..=N) and e(0..=N), immutable after construction and safe to
/// share across threads.
#[derive(Debug, Clone)]
pub struct PartitionCache {
    p: Vec<Int>,
    e: Vec<i64>,
}

impl PartitionCache {
    /// Warms the tables up to and including `horizon`.
    pub fn new(horizon: usize) -> Self {
        let mut e = Vec::with_capacity(horizon + 1);
        for n in 0..=horizon {
            e.push(qpochhammer_coeff(n as i64));
        }
        let mut p: Vec<Int> = Vec::with_capacity(horizon + 1);
        p.push(Int::one());
        for n in 1..=horizon {
            // p(n) = -sum_{j>=1, G_j <= n} (-1)^ceil(j/2) p(n - G_j)
            let mut acc = Int::zero();
            let mut j = 1u32;
            loop {
                let g = pentagonal(j) as usize;
                if g > n {
                    break;
                }
                let sign = if j.div_ceil(2).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                acc -= sign * &p[n - g];
                j += 1;
            }
            p.push(acc);
        }
        PartitionCache { p, e }
    }

    pub fn horizon(&self) -> usize {
        self.p.len() - 1
    }

    /// p(n); zero for n < 0. Panics past the warmed horizon.
    pub fn p(&self, n: i64) -> Int {
        if n < 0 {
            return Int::zero();
        }
        self.p[n as usize].clone()
    }

    /// e(n) = [q^n](q;q)_inf; zero for n < 0. Panics past the warmed horizon.
    pub fn e(&self, n: i64) -> i64 {
        if n < 0 {
            return 0;
        }
        self.e[n as usize]
    }
}
