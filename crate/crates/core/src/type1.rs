//! Sums over integers coprime to n and their matrix factorization.
//!
//! The central objects are
//!
//!   T_f(x) = sum_{1 <= d <= x, gcd(d,x) = 1} f(d),
//!
//! the inversion pair mu_{n,k} / mu^(-1)_{n,k} with
//! mu^(-1)_{n,k} = [gcd(n+1, k) = 1] for k <= n, and the factorization
//! matrices t_{n,k} and t^(-1)_{n,k} that express T_f through partition
//! numbers:
//!
//!   T_f(n) = sum_{j=1..n} sum_{k<j} p(n-j) t_{j-1,k} f(k) + f(1)[n = 1].
//!
//! The ground truth for t is the convolution form
//!
//!   t_{n,k} = sum_{j=k..n} e(n-j) [gcd(j+1, k) = 1],
//!
//! with e(m) = [q^m](q;q)_inf, pinned by exact agreement with the reference
//! tables; the inverse satisfies t^(-1)_{n,k} = sum_d p(d-k) mu_{n,d}.

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{
    dirichlet_convolve, divisors, gcd, mobius, principal_char, totient, ArithmeticFunction, Builtin,
};
use crate::dft::e_unit;
use crate::error::{Error, Result};
use crate::matrix::TriangularMatrix;
use crate::partition::{pentagonal, PartitionCache};
use crate::rat::{int_pow, rat_i, rat_to_f64, rat_to_string, rat_u, Rat};

/// T_f(x): sum of f over 1 <= d <= x coprime to x.
pub fn type1_sum(f: &ArithmeticFunction, x: u64) -> Result<Rat> {
    if x < 1 {
        return Err(Error::InvalidArgument("type1_sum needs x >= 1".into()));
    }
    let mut acc = Rat::zero();
    for d in 1..=x {
        if gcd(d, x) == 1 {
            acc += f.eval(d)?;
        }
    }
    Ok(acc)
}

/// Complex-valued T_f(x) for exponential-sum instances such as
/// mu(n) = sum_{(d,n)=1} e(d/n).
pub fn type1_sum_complex(x: u64, f: impl Fn(u64) -> Complex64) -> Complex64 {
    (1..=x).filter(|&d| gcd(d, x) == 1).map(f).sum()
}

/// mu^(-1)_{n,k} = [gcd(n+1, k) = 1] on the lower triangle.
pub fn mu_inverse_matrix(n: usize) -> TriangularMatrix<Rat> {
    TriangularMatrix::from_fn(n, |i, j| rat_u(principal_char(j as u64, i as i64 + 1)))
}

/// The inversion coefficients mu_{n,k}: the exact triangular inverse of
/// [`mu_inverse_matrix`]. No closed form is known; this is the defining
/// construction.
pub fn mu_matrix(n: usize) -> TriangularMatrix<Rat> {
    mu_inverse_matrix(n)
        .invert()
        .expect("mu^(-1) has unit diagonal")
}

/// t_{n,k} by the pinned convolution form
/// t_{n,k} = sum_{j=k..n} e(n-j) [gcd(j+1, k) = 1].
pub fn t_matrix(n: usize) -> TriangularMatrix<Rat> {
    let cache = PartitionCache::new(n);
    TriangularMatrix::from_fn(n, |i, j| {
        let mut acc = 0i64;
        for m in j..=i {
            if principal_char(j as u64, m as i64 + 1) == 1 {
                acc += cache.e((i - m) as i64);
            }
        }
        rat_i(acc)
    })
}

/// t^(-1)_{n,k} = sum_{d=1..n} p(d-k) mu_{n,d}; equals the exact triangular
/// inverse of [`t_matrix`].
pub fn t_inverse_matrix(n: usize) -> TriangularMatrix<Rat> {
    let mu = mu_matrix(n);
    let cache = PartitionCache::new(n);
    TriangularMatrix::from_fn(n, |i, j| {
        let mut acc = Rat::zero();
        for d in 1..=i {
            let p = cache.p(d as i64 - j as i64);
            if !p.is_zero() {
                acc += Rat::from_integer(p) * mu.entry(i, d);
            }
        }
        acc
    })
}

/// s_{n,k} = [q^n] (q;q)_inf q^k / (1-q^k) = sum_{i >= 1, ik <= n} e(n - ik).
pub fn lambert_snk(n: usize) -> TriangularMatrix<Rat> {
    let cache = PartitionCache::new(n);
    TriangularMatrix::from_fn(n, |i, j| {
        let mut acc = 0i64;
        let mut m = j;
        while m <= i {
            acc += cache.e((i - m) as i64);
            m += j;
        }
        rat_i(acc)
    })
}

/// Rebuilds t from the Lambert-series triangle:
/// t_{n,k} = s_{n,k} for k = 1 and sum_{d|k} s_{n+1-k+d,d} mu(d) for k > 1.
/// Must equal [`t_matrix`] entrywise.
pub fn t_from_snk(n: usize) -> TriangularMatrix<Rat> {
    // The shifted row index n+1-k+d reaches n+1, so build s one row larger.
    let s = lambert_snk(n + 1);
    TriangularMatrix::from_fn(n, |i, j| {
        if j == 1 {
            s.entry(i, 1)
        } else {
            let mut acc = Rat::zero();
            for d in divisors(j as u64) {
                let row = i + 1 - j + d as usize;
                acc += rat_i(mobius(d)) * s.entry(row, d as usize);
            }
            acc
        }
    })
}

/// Coefficientwise check of the Lambert-series identity
/// sum_{n >= k} [gcd(n,k) = 1] q^n = sum_{d|k} mu(d) q^k / (1 - q^d),
/// for k <= n <= horizon. Returns the first failing n, if any.
pub fn lambert_series_check(k: u64, horizon: u64) -> Option<u64> {
    for n in k..=horizon {
        // [q^n] of q^k/(1-q^d) is [d | n-k].
        let mut rhs = 0i64;
        for d in divisors(k) {
            if (n - k).is_multiple_of(d) {
                rhs += mobius(d);
            }
        }
        let lhs = if gcd(n, k) == 1 { 1 } else { 0 };
        if lhs != rhs {
            return Some(n);
        }
    }
    None
}

/// Convolution identity pinning t against the principal character:
/// sum_{j=1..n} t_{j,k} p(n-j) = [gcd(n+1, k) = 1] for 1 <= k <= n <= n_max.
/// Returns the first failing (n, k), if any.
pub fn convolution_lemma_check(n_max: usize) -> Option<(usize, usize)> {
    let t = t_matrix(n_max);
    let cache = PartitionCache::new(n_max);
    for n in 1..=n_max {
        for k in 1..=n {
            let mut acc = Rat::zero();
            for j in 1..=n {
                acc += t.entry(j, k) * Rat::from_integer(cache.p((n - j) as i64));
            }
            let expect = rat_u(principal_char(k as u64, n as i64 + 1));
            if acc != expect {
                return Some((n, k));
            }
        }
    }
    None
}

/// Side-by-side tables for a verified type I identity.
#[derive(Debug, Clone)]
pub struct Type1Report {
    pub horizon: u64,
    pub function: String,
    /// lhs[i] and rhs[i] hold the two sides at n = i + 1.
    pub lhs: Vec<Rat>,
    pub rhs: Vec<Rat>,
    pub first_mismatch: Option<u64>,
}

impl Type1Report {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }

    fn from_tables(horizon: u64, function: String, lhs: Vec<Rat>, rhs: Vec<Rat>) -> Self {
        let first_mismatch = lhs
            .iter()
            .zip(&rhs)
            .position(|(a, b)| a != b)
            .map(|i| i as u64 + 1);
        Type1Report {
            horizon,
            function,
            lhs,
            rhs,
            first_mismatch,
        }
    }
}

/// Checks the factorization identity
/// T_f(n) = sum_{j=1..n} sum_{k<j} p(n-j) t_{j-1,k} f(k) + f(1)[n = 1]
/// exactly for every 1 <= n <= horizon.
pub fn verify_type1_factorization(f: &ArithmeticFunction, horizon: u64) -> Result<Type1Report> {
    let n_max = horizon as usize;
    let t = t_matrix(n_max.saturating_sub(1).max(1));
    let cache = PartitionCache::new(n_max);
    let f1 = f.eval(1)?;

    let mut lhs = Vec::with_capacity(n_max);
    let mut rhs = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        lhs.push(type1_sum(f, n as u64)?);
        let mut acc = Rat::zero();
        for j in 2..=n {
            let p = Rat::from_integer(cache.p((n - j) as i64));
            if p.is_zero() {
                continue;
            }
            let mut inner = Rat::zero();
            for k in 1..j {
                let tjk = t.entry(j - 1, k);
                if !tjk.is_zero() {
                    inner += tjk * f.eval(k as u64)?;
                }
            }
            acc += p * inner;
        }
        if n == 1 {
            acc += &f1;
        }
        rhs.push(acc);
    }
    Ok(Type1Report::from_tables(
        horizon,
        f.name().to_string(),
        lhs,
        rhs,
    ))
}

/// Recovers f from its type I sums via the inverted factorization
/// f(n) = sum_k t^(-1)_{n,k} ( sum_{j : k+1-G_j >= 1} (-1)^ceil(j/2)
///        T_f(k+1-G_j) - e(k) f(1) ).
///
/// `tf[i]` must hold T_f(i+1) for 0 <= i <= horizon (so T_f up to
/// horizon + 1). The recovered table is validated by round-tripping
/// [`type1_sum`]; an unrealizable input is reported with the first n where it
/// contradicts itself.
pub fn recover_f_type1(tf: &[Rat], horizon: u64) -> Result<ArithmeticFunction> {
    let n_max = horizon as usize;
    if tf.len() < n_max + 1 {
        return Err(Error::InvalidArgument(format!(
            "recover_f_type1 needs T_f up to {} but got {} values",
            n_max + 1,
            tf.len()
        )));
    }
    let tinv = t_inverse_matrix(n_max);
    let cache = PartitionCache::new(n_max + 1);
    let f1 = tf[0].clone();

    let mut values = Vec::with_capacity(n_max);
    values.push(f1.clone());
    for n in 2..=n_max {
        let mut acc = Rat::zero();
        for k in 1..=n {
            let coeff = tinv.entry(n, k);
            if coeff.is_zero() {
                continue;
            }
            let mut inner = Rat::zero();
            let mut j = 0u32;
            loop {
                let g = pentagonal(j) as i64;
                let arg = k as i64 + 1 - g;
                if arg < 1 {
                    break;
                }
                let sign = if j.div_ceil(2).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                inner += rat_i(sign) * &tf[(arg - 1) as usize];
                j += 1;
            }
            inner -= rat_i(cache.e(k as i64)) * &f1;
            acc += coeff * inner;
        }
        values.push(acc);
    }

    let f = ArithmeticFunction::from_values("recovered", values);
    for n in 1..=n_max as u64 {
        let got = type1_sum(&f, n)?;
        if got != tf[(n - 1) as usize] {
            return Err(Error::InconsistentTable {
                n,
                expected: rat_to_string(&tf[(n - 1) as usize]),
                got: rat_to_string(&got),
            });
        }
    }
    Ok(f)
}

/// Mertens function M(x) through the type I expansion of
/// mu(n) = sum_{(d,n)=1} e(d/n):
///
///   M(x) = 1 + sum_{2 <= n <= x} sum_{1 <= k < j <= n} p(n-j) t_{j-1,k} e(k/n),
///
/// with the leading 1 the n = 1 correction term of the factorization. The
/// result is complex; compare against the exact partial sum of mu.
pub fn mertens_via_type1(x: u64) -> Complex64 {
    let x = x as usize;
    let mut acc = Complex64::new(1.0, 0.0);
    if x < 2 {
        return acc;
    }
    let t = t_matrix(x - 1);
    let cache = PartitionCache::new(x);
    for n in 2..=x {
        for j in 2..=n {
            let p = rat_to_f64(&Rat::from_integer(cache.p((n - j) as i64)));
            if p == 0.0 {
                continue;
            }
            for k in 1..j {
                let tjk = t.entry(j - 1, k);
                if tjk.is_zero() {
                    continue;
                }
                acc += p * rat_to_f64(&tjk) * e_unit(k as f64 / n as f64);
            }
        }
    }
    acc
}

/// Exact partial sum of the Moebius function, the production-side oracle for
/// the Mertens expansions.
pub fn mertens_direct(x: u64) -> i64 {
    (1..=x).map(mobius).sum()
}

/// Both sides of an application identity, with the expansion path alongside.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub name: String,
    /// Closed-form side.
    pub lhs: Rat,
    /// Direct-sum side.
    pub rhs: Rat,
    /// The same quantity through the p / t-matrix expansion, where the
    /// identity has one.
    pub expansion: Option<Rat>,
}

impl IdentityReport {
    pub fn pass(&self) -> bool {
        self.lhs == self.rhs
            && self
                .expansion
                .as_ref()
                .map(|e| *e == self.rhs)
                .unwrap_or(true)
    }
}

/// Menon's identity phi(n) d(n) = sum_{(k,n)=1} gcd(k-1, n), checked directly
/// and through the partition/character expansion of the right-hand side.
pub fn menon_check(n: u64) -> IdentityReport {
    let phi_d = rat_u(totient(n)) * rat_u(divisors(n).len() as u64);
    let mut direct = Rat::zero();
    for k in 1..=n {
        if gcd(k, n) == 1 {
            direct += rat_u(gcd(k.wrapping_sub(1), n));
        }
    }

    // Expansion: T_F(n) with F(k) = gcd(k-1, n), F(1) = gcd(0, n) = n.
    let n_us = n as usize;
    let cache = PartitionCache::new(n_us);
    let t = t_matrix(n_us.saturating_sub(1).max(1));
    let mut expansion = Rat::zero();
    for j in 2..=n_us {
        let p = Rat::from_integer(cache.p((n_us - j) as i64));
        if p.is_zero() {
            continue;
        }
        let mut inner = Rat::zero();
        for k in 1..j {
            let tjk = t.entry(j - 1, k);
            if !tjk.is_zero() {
                inner += tjk * rat_u(gcd(k as u64 - 1, n));
            }
        }
        expansion += p * inner;
    }
    if n == 1 {
        expansion += rat_u(n); // F(1)[n = 1]
    }

    IdentityReport {
        name: "menon".into(),
        lhs: phi_d,
        rhs: direct,
        expansion: Some(expansion),
    }
}

/// Toth's identity
/// sum_{(k,n)=1} f(gcd(k-1, n)) = phi(n) sum_{d|n} (mu * f)(d) / phi(d),
/// both sides exact.
pub fn toth_check(f: &ArithmeticFunction, n: u64) -> Result<IdentityReport> {
    let mut lhs = Rat::zero();
    for k in 1..=n {
        if gcd(k, n) == 1 {
            // gcd(0, n) = n covers the k = 1 term.
            lhs += f.eval(gcd(k - 1, n))?;
        }
    }
    let mu_f = dirichlet_convolve(&ArithmeticFunction::builtin(Builtin::Mobius, n), f, n)?;
    let mut rhs = Rat::zero();
    for d in divisors(n) {
        rhs += mu_f.eval(d)? / rat_u(totient(d));
    }
    rhs *= rat_u(totient(n));
    Ok(IdentityReport {
        name: "toth".into(),
        lhs,
        rhs,
        expansion: None,
    })
}

/// Result of the sigma_alpha expansion check at one n.
#[derive(Debug, Clone)]
pub struct SigmaAlphaReport {
    pub alpha: u32,
    pub horizon: u64,
    /// True when alpha = 0, where the identity is asserted; for alpha > 0 the
    /// phi_alpha = T_{Id_alpha} reading is a candidate and the outcome is
    /// reported without being asserted.
    pub asserted: bool,
    pub first_mismatch: Option<u64>,
}

impl SigmaAlphaReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// The inner terms of the sigma_alpha expansion: for each d up to the
/// horizon, sum_{k<=d} t^(-1)_{d,k} ( sum_{j : k+1-G_j >= 1}
/// (-1)^ceil(j/2) phi_alpha(k+1-G_j) - e(k) ), with phi_alpha read as the
/// type I sum of Id_alpha.
fn sigma_alpha_recovered_table(alpha: u32, horizon: u64) -> Result<Vec<Rat>> {
    let n_max = horizon as usize;
    let id_a = ArithmeticFunction::builtin(Builtin::IdPow(alpha as i32), horizon + 1);
    // phi_alpha(m) = T_{Id_alpha}(m), needed up to horizon + 1.
    let mut phi_a = Vec::with_capacity(n_max + 1);
    for m in 1..=horizon + 1 {
        phi_a.push(type1_sum(&id_a, m)?);
    }
    let tinv = t_inverse_matrix(n_max);
    let cache = PartitionCache::new(n_max + 1);

    let mut recovered = Vec::with_capacity(n_max);
    for d in 1..=n_max {
        let mut acc = Rat::zero();
        for k in 1..=d {
            let coeff = tinv.entry(d, k);
            if coeff.is_zero() {
                continue;
            }
            let mut inner = Rat::zero();
            let mut j = 0u32;
            loop {
                let g = pentagonal(j) as i64;
                let arg = k as i64 + 1 - g;
                if arg < 1 {
                    break;
                }
                let sign = if j.div_ceil(2).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                inner += rat_i(sign) * &phi_a[(arg - 1) as usize];
                j += 1;
            }
            inner -= rat_i(cache.e(k as i64));
            acc += coeff * inner;
        }
        recovered.push(acc);
    }
    Ok(recovered)
}

/// sigma_alpha(n) through the expansion: the recovered terms summed over the
/// divisors of n.
pub fn sigma_alpha_expansion(alpha: u32, n: u64) -> Result<Rat> {
    let recovered = sigma_alpha_recovered_table(alpha, n)?;
    Ok(divisors(n)
        .into_iter()
        .map(|d| recovered[(d - 1) as usize].clone())
        .sum())
}

/// Checks sigma_alpha(n) = sum over d | n of the recovered expansion terms
/// for all n <= horizon.
pub fn sigma_alpha_identity_check(alpha: u32, horizon: u64) -> Result<SigmaAlphaReport> {
    let recovered = sigma_alpha_recovered_table(alpha, horizon)?;
    let mut first_mismatch = None;
    for n in 1..=horizon {
        let expansion: Rat = divisors(n)
            .into_iter()
            .map(|d| recovered[(d - 1) as usize].clone())
            .sum();
        let direct: Rat = divisors(n)
            .into_iter()
            .map(|d| int_pow(d, alpha as i32))
            .sum();
        if expansion != direct {
            first_mismatch = Some(n);
            break;
        }
    }
    Ok(SigmaAlphaReport {
        alpha,
        horizon,
        asserted: alpha == 0,
        first_mismatch,
    })
}
