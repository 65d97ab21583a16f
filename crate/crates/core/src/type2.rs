//! Anderson-Apostol sums and their partition-matrix factorization.
//!
//! The sums are L_{f,g,k}(n) = sum over d | gcd(k, n) of f(d) g(n/d), with k
//! the (periodic) subscript and n the argument. Their generating-function
//! factorization runs through the w-polynomial matrices
//!
//!   u^(-1)_{n,k}(f, w) = sum_{m=1..n} ( sum_{d|(m,n)} f(d) p(n/d - k) ) w^m,
//!
//! whose triangular inverses u_{n,k}(f, w) are rational functions of w. The
//! indeterminate is handled two ways: exact polynomials wherever the object
//! is a polynomial, and a fixed rational evaluation point w0 (not 0, 1 or -1)
//! wherever the twisted function
//!
//!   fhat(n) = w^n / (w^n - 1) * f(n)
//!
//! introduces denominators. The simplified matrices
//! uhat_{n,k} = (w^k - 1) u_{n,k} admit three independent routes: the
//! definition (route A, ground truth), the multiple-convolution formula
//! through D_f (route B), and the Dirichlet inverse of fhat (route C).
//! Divergence between routes is reported, never reconciled silently.

use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::arith::{
    big_omega, dirichlet_inverse, divisors, gcd, mobius, ArithmeticFunction, Builtin,
};
use crate::error::{Error, Result};
use crate::matrix::TriangularMatrix;
use crate::oracle;
use crate::partition::{pentagonal, PartitionCache};
use crate::poly::Polynomial;
use crate::rat::{rat_i, rat_to_string, rat_u, Rat};

/// A validated evaluation point for the indeterminate w.
///
/// Excluding 0, 1 and -1 guarantees w0^n != 0 and w0^n != 1 for every n >= 1,
/// so no fhat or diagonal denominator can vanish.
#[derive(Debug, Clone, PartialEq)]
pub struct WPoint(Rat);

impl WPoint {
    pub fn new(w: Rat) -> Result<Self> {
        if w.is_zero() || w == rat_i(1) || w == rat_i(-1) {
            return Err(Error::InvalidWPoint {
                value: rat_to_string(&w),
            });
        }
        Ok(WPoint(w))
    }

    pub fn parse(s: &str) -> Result<Self> {
        WPoint::new(crate::rat::parse_rat(s)?)
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }
}

/// The twisted table fhat(n) = w^n / (w^n - 1) * f(n), materialized at a
/// fixed evaluation point and immutable afterwards.
#[derive(Debug, Clone)]
pub struct FHat {
    table: ArithmeticFunction,
    w: Rat,
}

impl FHat {
    pub fn new(f: &ArithmeticFunction, w: &WPoint) -> Self {
        let w0 = w.value();
        let mut values = Vec::with_capacity(f.horizon() as usize);
        let mut wn = Rat::one();
        for n in 1..=f.horizon() {
            wn *= w0;
            let factor = &wn / (&wn - Rat::one());
            values.push(factor * f.eval(n).expect("within horizon"));
        }
        FHat {
            table: ArithmeticFunction::from_values(format!("{}^", f.name()), values),
            w: w0.clone(),
        }
    }

    pub fn eval(&self, n: u64) -> Result<Rat> {
        self.table.eval(n)
    }

    /// fhat(1); nonzero exactly when f(1) != 0.
    pub fn at1(&self) -> Rat {
        self.table.eval(1).expect("horizon >= 1")
    }

    pub fn horizon(&self) -> u64 {
        self.table.horizon()
    }

    pub fn w(&self) -> &Rat {
        &self.w
    }

    pub fn as_function(&self) -> &ArithmeticFunction {
        &self.table
    }
}

/// L_{f,g,k}(n) = sum over d | gcd(k, n) of f(d) g(n/d).
///
/// The subscript k may be 0, read through gcd(0, n) = n; the argument n must
/// be >= 1. This is the convention the periodic tables use: one period of the
/// sum at modulus k is {L_{f,g,r}(k)}_{r=0..k-1}.
pub fn anderson_apostol(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    k: u64,
    n: u64,
) -> Result<Rat> {
    if n < 1 {
        return Err(Error::InvalidArgument(
            "anderson_apostol needs argument n >= 1".into(),
        ));
    }
    let mut acc = Rat::zero();
    for d in divisors(gcd(k, n)) {
        acc += f.eval(d)? * g.eval(n / d)?;
    }
    Ok(acc)
}

/// Lhat_{f,g}(n; w) = sum_{m=1..n} L_{f,g,m}(n) w^m, built coefficient by
/// coefficient.
pub fn lhat_poly(f: &ArithmeticFunction, g: &ArithmeticFunction, n: u64) -> Result<Polynomial> {
    let mut coeffs = vec![Rat::zero(); n as usize + 1];
    for m in 1..=n {
        coeffs[m as usize] = anderson_apostol(f, g, m, n)?;
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// The same polynomial as a twisted divisor sum,
/// sum_{d|n} f(d) g(n/d) (w^d + w^{2d} + ... + w^n); must agree with
/// [`lhat_poly`] as an exact polynomial.
pub fn lhat_poly_divisor_form(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    n: u64,
) -> Result<Polynomial> {
    let mut coeffs = vec![Rat::zero(); n as usize + 1];
    for d in divisors(n) {
        let weight = f.eval(d)? * g.eval(n / d)?;
        if weight.is_zero() {
            continue;
        }
        let mut e = d;
        while e <= n {
            coeffs[e as usize] += &weight;
            e += d;
        }
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// The inverse matrix u^(-1)(f, w) as exact w-polynomials:
/// entry(n, k) = sum_{m=1..n} ( sum_{d|(m,n)} f(d) p(n/d - k) ) w^m.
pub fn u_inverse_matrix(f: &ArithmeticFunction, n: usize) -> Result<TriangularMatrix<Polynomial>> {
    if f.horizon() < n as u64 {
        return Err(Error::HorizonExceeded {
            name: f.name().to_string(),
            requested: n as u64,
            horizon: f.horizon(),
        });
    }
    let cache = PartitionCache::new(n);
    let mut rows = Vec::with_capacity(n);
    for i in 1..=n as u64 {
        let mut row = Vec::with_capacity(i as usize);
        for k in 1..=i {
            let mut coeffs = vec![Rat::zero(); i as usize + 1];
            for m in 1..=i {
                let mut c = Rat::zero();
                for d in divisors(gcd(m, i)) {
                    let p = cache.p((i / d) as i64 - k as i64);
                    if !p.is_zero() {
                        c += f.eval(d)? * Rat::from_integer(p);
                    }
                }
                coeffs[m as usize] = c;
            }
            row.push(Polynomial::from_coeffs(coeffs));
        }
        rows.push(row);
    }
    Ok(TriangularMatrix::from_fn(n, |i, j| {
        rows[i - 1][j - 1].clone()
    }))
}

/// Closed form for the diagonal: u_{n,n}(f, w) = (1 - w) / (w (1 - w^n) f(1)).
pub fn u_diagonal_closed_form(f: &ArithmeticFunction, n: u64, w: &WPoint) -> Result<Rat> {
    f.require_invertible()?;
    let w0 = w.value();
    let wn = crate::rat::rat_pow(w0, n as i64);
    Ok((Rat::one() - w0) / (w0 * (Rat::one() - wn) * f.eval(1)?))
}

/// The ordinary matrix u(f, w0): exact triangular inverse of
/// [`u_inverse_matrix`] evaluated at w0.
pub fn u_matrix_at(f: &ArithmeticFunction, n: usize, w: &WPoint) -> Result<TriangularMatrix<Rat>> {
    f.require_invertible()?;
    let uinv = u_inverse_matrix(f, n)?.eval_at(w.value());
    uinv.invert()
}

/// The ordinary matrix by the nested-product inversion formula, evaluated
/// independently of back-substitution. Chains grow combinatorially, so this
/// is a cross-check for small n only (the callers cap it at 6).
pub fn u_matrix_nested_product(
    f: &ArithmeticFunction,
    n: usize,
    w: &WPoint,
) -> Result<TriangularMatrix<Rat>> {
    f.require_invertible()?;
    let a = u_inverse_matrix(f, n)?.eval_at(w.value());
    // a^(-1)(n,k) = [k=n]/a(n,n) + [k<n]/a(n,n) * sum over strict chains
    // k < i_1 < ... < i_m < n of (-1)^{m+1} prod a(step) / (a(k,k) prod a(i,i)).
    Ok(TriangularMatrix::from_fn(n, |i, j| {
        let diag = a.entry(i, i);
        if i == j {
            return Rat::one() / diag;
        }
        let interior: Vec<usize> = (j + 1..i).collect();
        let mut total = Rat::zero();
        for mask in 0u32..(1 << interior.len()) {
            let mut chain = vec![j];
            for (bit, &idx) in interior.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    chain.push(idx);
                }
            }
            chain.push(i);
            let m = chain.len() - 2;
            let mut num = Rat::one();
            for t in 0..chain.len() - 1 {
                num *= a.entry(chain[t + 1], chain[t]);
            }
            let mut den = a.entry(j, j);
            for &idx in &chain[1..chain.len() - 1] {
                den *= a.entry(idx, idx);
            }
            let sign = if (m + 1) % 2 == 0 {
                rat_i(1)
            } else {
                rat_i(-1)
            };
            total += sign * num / den;
        }
        total / diag
    }))
}

/// ds_j(f; n): the nested j-fold convolution of fhat,
/// ds_1(f; n) = (-1)^[n=1] fhat(n) and
/// ds_j(f; n) = sum_{d|n, d>1} fhat(d) ds_{j-1}(f; n/d) for j >= 2.
pub fn ds_conv(fhat: &FHat, j: u32, n: u64) -> Result<Rat> {
    if j == 1 {
        let v = fhat.eval(n)?;
        return Ok(if n == 1 { -v } else { v });
    }
    let mut acc = Rat::zero();
    for d in divisors(n) {
        if d > 1 {
            acc += fhat.eval(d)? * ds_conv(fhat, j - 1, n / d)?;
        }
    }
    Ok(acc)
}

/// The multiple-convolution function
/// D_f(n) = sum_{j>=1} ds_{2j}(f; n) / fhat(1)^{2j+1}.
///
/// ds_j(f; n) vanishes once j > Omega(n) + 1 (each convolution level past the
/// first consumes a prime factor), so the sum is truncated there without
/// changing the value. D_f(1) = 0 falls out of the same recursion.
pub fn d_conv(fhat: &FHat, n: u64) -> Result<Rat> {
    let f1 = fhat.at1();
    if f1.is_zero() {
        return Err(Error::NotInvertible {
            name: "fhat".into(),
        });
    }
    let omega = big_omega(n);
    let mut acc = Rat::zero();
    let mut j = 1u32;
    while 2 * j <= omega + 1 {
        let mut denom = Rat::one();
        for _ in 0..(2 * j + 1) {
            denom *= &f1;
        }
        acc += ds_conv(fhat, 2 * j, n)? / denom;
        j += 1;
    }
    Ok(acc)
}

/// The simplified matrix uhat(f, w0) by its definition (route A):
/// uhat_{n,k} = (w0^k - 1) u_{n,k}.
pub fn uhat_matrix(f: &ArithmeticFunction, n: usize, w: &WPoint) -> Result<TriangularMatrix<Rat>> {
    let u = u_matrix_at(f, n, w)?;
    let w0 = w.value();
    let mut wk = Vec::with_capacity(n + 1);
    wk.push(Rat::one());
    for k in 1..=n {
        let prev = wk[k - 1].clone();
        wk.push(prev * w0);
    }
    Ok(TriangularMatrix::from_fn(n, |i, j| {
        (&wk[j] - Rat::one()) * u.entry(i, j)
    }))
}

/// uhat by the multiple-convolution formula (route B):
/// uhat_{n,k} = sum_{j : n-G_j >= 1} (-1)^ceil(j/2)
///   ( D_f((n-G_j)/k) [k | n-G_j] + [n-G_j = k] / fhat(1) ).
pub fn uhat_matrix_dconv(
    f: &ArithmeticFunction,
    n: usize,
    w: &WPoint,
) -> Result<TriangularMatrix<Rat>> {
    f.require_invertible()?;
    let fhat = FHat::new(f, w);
    let f1 = fhat.at1();
    // D_f values at every argument up to n, shared across entries.
    let mut dvals = Vec::with_capacity(n + 1);
    dvals.push(Rat::zero()); // unused slot for argument 0
    for m in 1..=n as u64 {
        dvals.push(d_conv(&fhat, m)?);
    }
    Ok(TriangularMatrix::from_fn(n, |i, j| {
        let mut acc = Rat::zero();
        let mut jj = 0u32;
        loop {
            let g = pentagonal(jj) as i64;
            let m = i as i64 - g;
            if m < 1 {
                break;
            }
            let sign = if jj.div_ceil(2).is_multiple_of(2) {
                1
            } else {
                -1
            };
            let mut term = Rat::zero();
            if (m as usize).is_multiple_of(j) {
                term += &dvals[m as usize / j];
            }
            if m as usize == j {
                term += Rat::one() / &f1;
            }
            acc += rat_i(sign) * term;
            jj += 1;
        }
        acc
    }))
}

/// uhat by the Dirichlet inverse of fhat (route C):
/// uhat_{n,k} = sum_{j : n-G_j >= 1, k | n-G_j} (-1)^ceil(j/2)
///   fhat^(-1)((n-G_j)/k).
pub fn uhat_matrix_fhat_inverse(
    f: &ArithmeticFunction,
    n: usize,
    w: &WPoint,
) -> Result<TriangularMatrix<Rat>> {
    f.require_invertible()?;
    let fhat = FHat::new(f, w);
    let inv = dirichlet_inverse(fhat.as_function(), n as u64)?;
    Ok(TriangularMatrix::from_fn(n, |i, j| {
        let mut acc = Rat::zero();
        let mut jj = 0u32;
        loop {
            let g = pentagonal(jj) as i64;
            let m = i as i64 - g;
            if m < 1 {
                break;
            }
            if (m as usize).is_multiple_of(j) {
                let sign = if jj.div_ceil(2).is_multiple_of(2) {
                    1
                } else {
                    -1
                };
                acc += rat_i(sign) * inv.eval(m as u64 / j as u64).expect("within horizon");
            }
            jj += 1;
        }
        acc
    }))
}

/// All three uhat routes side by side; route A is ground truth.
#[derive(Debug, Clone)]
pub struct UhatRoutes {
    pub definition: TriangularMatrix<Rat>,
    pub d_formula: TriangularMatrix<Rat>,
    pub fhat_inverse: TriangularMatrix<Rat>,
}

/// First entry where two routes disagree; a cross-route inconsistency that
/// callers surface loudly instead of reconciling.
#[derive(Debug, Clone)]
pub struct RouteDiff {
    pub n: usize,
    pub k: usize,
    pub definition: String,
    pub d_formula: String,
    pub fhat_inverse: String,
}

impl UhatRoutes {
    pub fn compute(f: &ArithmeticFunction, n: usize, w: &WPoint) -> Result<Self> {
        Ok(UhatRoutes {
            definition: uhat_matrix(f, n, w)?,
            d_formula: uhat_matrix_dconv(f, n, w)?,
            fhat_inverse: uhat_matrix_fhat_inverse(f, n, w)?,
        })
    }

    pub fn first_divergence(&self) -> Option<RouteDiff> {
        for i in 1..=self.definition.dim() {
            for j in 1..=i {
                let a = self.definition.entry(i, j);
                let b = self.d_formula.entry(i, j);
                let c = self.fhat_inverse.entry(i, j);
                if a != b || a != c {
                    return Some(RouteDiff {
                        n: i,
                        k: j,
                        definition: rat_to_string(&a),
                        d_formula: rat_to_string(&b),
                        fhat_inverse: rat_to_string(&c),
                    });
                }
            }
        }
        None
    }
}

/// Failure site of the partition recurrence for uhat.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PnrecFailure {
    pub n: usize,
    pub k: usize,
    pub lhs: String,
    pub rhs: String,
}

/// Checks sum_{i=0..n-1} p(i) uhat_{n-i,k} = D_f(n/k) [k | n] + [n = k]/fhat(1)
/// exactly for all 1 <= k <= n <= horizon. Returns the first failing (n, k).
pub fn pnrec_check(
    f: &ArithmeticFunction,
    horizon: usize,
    w: &WPoint,
) -> Result<Option<PnrecFailure>> {
    let uhat = uhat_matrix(f, horizon, w)?;
    let fhat = FHat::new(f, w);
    let f1 = fhat.at1();
    let cache = PartitionCache::new(horizon);
    for n in 1..=horizon {
        for k in 1..=n {
            let mut lhs = Rat::zero();
            for i in 0..n {
                if n - i >= k {
                    lhs += Rat::from_integer(cache.p(i as i64)) * uhat.entry(n - i, k);
                }
            }
            let mut rhs = Rat::zero();
            if n % k == 0 {
                rhs += d_conv(&fhat, (n / k) as u64)?;
            }
            if n == k {
                rhs += Rat::one() / &f1;
            }
            if lhs != rhs {
                return Ok(Some(PnrecFailure {
                    n,
                    k,
                    lhs: rat_to_string(&lhs),
                    rhs: rat_to_string(&rhs),
                }));
            }
        }
    }
    Ok(None)
}

/// L_{f,g,m}(n) through the partition-weighted double sum
/// sum_{k=1..n} sum_{d|(m,n)} f(d) p(n/d - k)
///   sum_{j : k > G_j} (-1)^ceil(j/2) g(k - G_j);
/// must equal [`anderson_apostol`] (f, g, m, n).
pub fn lfgm_expansion(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    m: u64,
    n: u64,
) -> Result<Rat> {
    let cache = PartitionCache::new(n as usize);
    // E(k) = sum_{j : G_j < k} (-1)^ceil(j/2) g(k - G_j), independent of d.
    let mut e_table = Vec::with_capacity(n as usize + 1);
    e_table.push(Rat::zero());
    for k in 1..=n {
        let mut acc = Rat::zero();
        let mut j = 0u32;
        loop {
            let gp = pentagonal(j);
            if gp >= k {
                break;
            }
            let sign = if j.div_ceil(2).is_multiple_of(2) {
                1
            } else {
                -1
            };
            acc += rat_i(sign) * g.eval(k - gp)?;
            j += 1;
        }
        e_table.push(acc);
    }
    let mut total = Rat::zero();
    for k in 1..=n {
        if e_table[k as usize].is_zero() {
            continue;
        }
        let mut weight = Rat::zero();
        for d in divisors(gcd(m, n)) {
            let p = cache.p((n / d) as i64 - k as i64);
            if !p.is_zero() {
                weight += f.eval(d)? * Rat::from_integer(p);
            }
        }
        total += weight * &e_table[k as usize];
    }
    Ok(total)
}

/// Ramanujan's sum c_x(m) three ways: the partition formula, the divisor
/// form, and the literal exponential sum.
#[derive(Debug, Clone)]
pub struct RamanujanValues {
    pub partition_formula: Rat,
    pub divisor_formula: Rat,
    pub exponential: Complex64,
}

/// c_x(m) = sum_{k=1..x} sum_{d|(m,x)} d p(x/d - k)
///   sum_{j : k > G_j} (-1)^ceil(j/2) mu(k - G_j).
pub fn ramanujan_partition_formula(x: u64, m: u64) -> Rat {
    let id = ArithmeticFunction::builtin(Builtin::IdPow(1), x.max(1));
    let mu = ArithmeticFunction::builtin(Builtin::Mobius, x.max(1));
    lfgm_expansion(&id, &mu, m, x).expect("builtins cover the horizon")
}

/// c_x(m) = sum_{d | gcd(x, m)} d mu(x/d).
pub fn ramanujan_divisor_formula(x: u64, m: u64) -> Rat {
    let mut acc = Rat::zero();
    for d in divisors(gcd(x, m)) {
        acc += rat_u(d) * rat_i(mobius(x / d));
    }
    acc
}

/// All three routes; the two exact forms must agree exactly, the exponential
/// form within tolerance.
pub fn ramanujan_three_way(x: u64, m: u64) -> RamanujanValues {
    RamanujanValues {
        partition_formula: ramanujan_partition_formula(x, m),
        divisor_formula: ramanujan_divisor_formula(x, m),
        exponential: oracle::brute_ramanujan_exp(x, m).expect("desk scale"),
    }
}

/// P_j(w0; t) = sum_{i=1..j} ( sum_{d|j} fhat(d) p(j/d - i) ) t^i, as an
/// exact polynomial in t.
pub fn p_polynomial(fhat: &FHat, j: u64) -> Result<Polynomial> {
    let cache = PartitionCache::new(j as usize);
    let mut coeffs = vec![Rat::zero(); j as usize + 1];
    for i in 1..=j {
        let mut c = Rat::zero();
        for d in divisors(j) {
            let p = cache.p((j / d) as i64 - i as i64);
            if !p.is_zero() {
                c += fhat.eval(d)? * Rat::from_integer(p);
            }
        }
        coeffs[i as usize] = c;
    }
    Ok(Polynomial::from_coeffs(coeffs))
}

/// Checks sum_{k=1..n} uhat_{n,k}(f, w0) P_k(w0; t) = t^n as exact
/// polynomials for every n <= horizon; returns the first n with a nonzero
/// residual.
pub fn p_identity_check(f: &ArithmeticFunction, horizon: usize, w: &WPoint) -> Result<Option<u64>> {
    let uhat = uhat_matrix(f, horizon, w)?;
    let fhat = FHat::new(f, w);
    let polys: Vec<Polynomial> = (1..=horizon as u64)
        .map(|j| p_polynomial(&fhat, j))
        .collect::<Result<_>>()?;
    for n in 1..=horizon {
        let mut acc = Polynomial::zero();
        for k in 1..=n {
            let c = uhat.entry(n, k);
            if !c.is_zero() {
                acc = acc + polys[k - 1].scale(&c);
            }
        }
        let residual = acc - Polynomial::monomial(n, Rat::one());
        if !residual.is_zero() {
            return Ok(Some(n as u64));
        }
    }
    Ok(None)
}

/// The simplified factorization of the pentagonal-shifted g values:
/// sum_{j : n-G_j >= 1} (-1)^ceil(j/2) g(n-G_j)
///   = sum_{k=1..n} uhat_{n,k} sum_{d|k} fhat(d) g(k/d),
/// with the inner sum read as g(k/d). Returns the first failing n.
pub fn simplified_factorization_check(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    horizon: usize,
    w: &WPoint,
) -> Result<Option<u64>> {
    let uhat = uhat_matrix(f, horizon, w)?;
    let fhat = FHat::new(f, w);
    // S(k) = (fhat * g)(k), Dirichlet.
    let mut s = Vec::with_capacity(horizon + 1);
    s.push(Rat::zero());
    for k in 1..=horizon as u64 {
        let mut acc = Rat::zero();
        for d in divisors(k) {
            acc += fhat.eval(d)? * g.eval(k / d)?;
        }
        s.push(acc);
    }
    for n in 1..=horizon {
        let mut lhs = Rat::zero();
        let mut j = 0u32;
        loop {
            let gp = pentagonal(j) as i64;
            let m = n as i64 - gp;
            if m < 1 {
                break;
            }
            let sign = if j.div_ceil(2).is_multiple_of(2) {
                1
            } else {
                -1
            };
            lhs += rat_i(sign) * g.eval(m as u64)?;
            j += 1;
        }
        let mut rhs = Rat::zero();
        for (k, sk) in s.iter().enumerate().take(n + 1).skip(1) {
            let c = uhat.entry(n, k);
            if !c.is_zero() {
                rhs += c * sk;
            }
        }
        if lhs != rhs {
            return Ok(Some(n as u64));
        }
    }
    Ok(None)
}
