//! Independent brute-force reference implementations.
//!
//! Everything here is deliberately naive and loop-based: coprime filters,
//! divisor double loops, exhaustive partition enumeration, dense Gauss-Jordan
//! elimination, literal exponential sums. These paths share nothing with the
//! production formulas except the big-number primitives, so agreement between
//! the two is meaningful evidence.
//!
//! Arguments are capped at desk scale; anything larger is rejected rather
//! than silently ground through.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::ArithmeticFunction;
use crate::error::{Error, Result};
use crate::matrix::TriangularMatrix;
use crate::rat::{Int, Rat};

/// Upper bound for most oracle arguments.
pub const DESK_LIMIT: u64 = 128;
/// Upper bound for exhaustive partition enumeration.
pub const PARTITION_LIMIT: u64 = 60;

fn check_size(argument: &'static str, value: u64, limit: u64) -> Result<()> {
    if value > limit {
        Err(Error::OracleSize {
            argument,
            value,
            limit,
        })
    } else {
        Ok(())
    }
}

// Local gcd so the oracle does not lean on the production helpers.
fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// T_f(x) by a literal coprime-filtered loop.
pub fn brute_type1(f: &ArithmeticFunction, x: u64) -> Result<Rat> {
    check_size("x", x, DESK_LIMIT)?;
    if x < 1 {
        return Err(Error::InvalidArgument("brute_type1 needs x >= 1".into()));
    }
    let mut acc = Rat::zero();
    for d in 1..=x {
        if gcd(d, x) == 1 {
            acc += f.eval(d)?;
        }
    }
    Ok(acc)
}

/// L_{f,g,k}(n) = sum over d dividing both k and n of f(d) g(n/d), by a full
/// scan of candidate divisors. k = 0 is read as gcd(0, n) = n.
pub fn brute_type2(f: &ArithmeticFunction, g: &ArithmeticFunction, k: u64, n: u64) -> Result<Rat> {
    check_size("k", k, DESK_LIMIT)?;
    check_size("n", n, DESK_LIMIT)?;
    if n < 1 {
        return Err(Error::InvalidArgument("brute_type2 needs n >= 1".into()));
    }
    let mut acc = Rat::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) && (k == 0 || k.is_multiple_of(d)) {
            acc += f.eval(d)? * g.eval(n / d)?;
        }
    }
    Ok(acc)
}

/// p(n) by exhaustive enumeration of partitions with parts bounded above.
pub fn brute_partition(n: u64) -> Result<Int> {
    check_size("n", n, PARTITION_LIMIT)?;
    fn count(n: u64, max_part: u64) -> Int {
        if n == 0 {
            return Int::one();
        }
        let mut total = Int::zero();
        let mut part = max_part.min(n);
        while part >= 1 {
            total += count(n - part, part);
            part -= 1;
        }
        total
    }
    Ok(count(n, n.max(1)))
}

/// [q^n] of the truncated product (1-q)(1-q^2)...(1-q^depth), expanded term
/// by term. Needs depth >= n to agree with the infinite product.
pub fn brute_qpoch(n: u64, depth: u64) -> Result<Int> {
    check_size("n", n, DESK_LIMIT)?;
    check_size("depth", depth, DESK_LIMIT)?;
    let n = n as usize;
    let mut coeffs = vec![Int::zero(); n + 1];
    coeffs[0] = Int::one();
    for i in 1..=(depth as usize) {
        // multiply by (1 - q^i)
        if i > n {
            break;
        }
        for pos in (i..=n).rev() {
            let sub = coeffs[pos - i].clone();
            coeffs[pos] -= sub;
        }
    }
    Ok(coeffs[n].clone())
}

/// Dense Gauss-Jordan inversion of a lower-triangular matrix, run on the full
/// square array with no triangular shortcuts.
pub fn brute_matrix_inverse(m: &TriangularMatrix<Rat>) -> Result<TriangularMatrix<Rat>> {
    let n = m.dim();
    check_size("dim", n as u64, DESK_LIMIT)?;
    // Augmented [M | I], dense.
    let mut a = vec![vec![Rat::zero(); 2 * n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate().take(n) {
            *cell = m.entry(i + 1, j + 1);
        }
        row[n + i] = Rat::one();
    }
    for col in 0..n {
        // Find a pivot at or below the diagonal.
        let pivot_row = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or(Error::SingularMatrix { row: col + 1 })?;
        a.swap(col, pivot_row);
        let pivot = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &pivot;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                // Row r and row col alias within `a`; index to keep the
                // borrows disjoint per element.
                #[allow(clippy::needless_range_loop)]
                for c in 0..2 * n {
                    let sub = &factor * &a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Ok(TriangularMatrix::from_fn(n, |i, j| {
        a[i - 1][n + j - 1].clone()
    }))
}

/// phi(n) by counting residues coprime to n.
pub fn brute_totient(n: u64) -> Result<u64> {
    check_size("n", n, DESK_LIMIT)?;
    if n < 1 {
        return Err(Error::InvalidArgument("brute_totient needs n >= 1".into()));
    }
    Ok((1..=n).filter(|&d| gcd(d, n) == 1).count() as u64)
}

/// mu(n) by trial factorization with an explicit square check.
pub fn brute_mobius(n: u64) -> Result<i64> {
    check_size("n", n, DESK_LIMIT)?;
    if n < 1 {
        return Err(Error::InvalidArgument("brute_mobius needs n >= 1".into()));
    }
    let mut m = n;
    let mut factors = 0;
    let mut p = 2;
    while p <= m {
        if m.is_multiple_of(p) {
            m /= p;
            factors += 1;
            if m.is_multiple_of(p) {
                return Ok(0);
            }
        } else {
            p += 1;
        }
    }
    Ok(if factors % 2 == 0 { 1 } else { -1 })
}

/// sigma_a(n) for a >= 0 by divisor enumeration.
pub fn brute_sigma(n: u64, a: u32) -> Result<Int> {
    check_size("n", n, DESK_LIMIT)?;
    if n < 1 {
        return Err(Error::InvalidArgument("brute_sigma needs n >= 1".into()));
    }
    let mut acc = Int::zero();
    for d in 1..=n {
        if n.is_multiple_of(d) {
            acc += Int::from(d).pow(a);
        }
    }
    Ok(acc)
}

/// M(x) as a literal partial sum of mu.
pub fn brute_mertens(x: u64) -> Result<i64> {
    check_size("x", x, DESK_LIMIT)?;
    let mut acc = 0;
    for n in 1..=x {
        acc += brute_mobius(n)?;
    }
    Ok(acc)
}

/// Ramanujan's sum c_q(n) as the literal exponential sum over residues
/// coprime to q.
pub fn brute_ramanujan_exp(q: u64, n: u64) -> Result<Complex64> {
    check_size("q", q, DESK_LIMIT)?;
    let mut acc = Complex64::zero();
    for a in 1..=q {
        if gcd(a, q) == 1 {
            let angle = 2.0 * std::f64::consts::PI * (a as f64) * (n as f64) / (q as f64);
            acc += Complex64::new(angle.cos(), angle.sin());
        }
    }
    Ok(acc)
}
