//! Periodic divisor sums as finite Fourier series, and the DFT of functions
//! of the greatest common divisor.
//!
//! One period of the Anderson-Apostol sum at modulus k is the table
//! {L_{f,g,r}(k)}_{r=0..k-1}; its Fourier coefficients admit the exact
//! divisor form
//!
//!   a_k(f, g; m) = sum_{d|(m,k)} g(d) f(k/d) d/k,
//!
//! and the main exponential-sum identity reads
//!
//!   sum_{d|k} sum_{r<k} d L_{f,g,r}(k) e(-rd/k) mu(k/d)
//!     = sum_{d|k} phi(d) f(d) (k/d)^2 g(k/d).
//!
//! Every identity that touches complex exponentials carries a parallel exact
//! path in which the exponential sum is replaced by its divisor-form Fourier
//! coefficient; the exact path asserts with zero tolerance, the complex path
//! is a tolerance-checked mirror.

use num_complex::Complex64;
use num_traits::Zero;

use crate::arith::{
    dirichlet_inverse, divisors, gcd, mobius, totient, ArithmeticFunction, Builtin,
};
use crate::error::{Error, Result};
use crate::rat::{rat_to_f64, rat_u, Rat};
use crate::type2::{anderson_apostol, ramanujan_divisor_formula};

/// Absolute tolerance for period-table round trips and coefficient checks.
pub const TOL_TABLE: f64 = 1e-10;
/// Absolute tolerance for gcd-DFT exponential mirrors.
pub const TOL_GCD: f64 = 1e-9;
/// Absolute tolerance for the main theorem's complex path.
pub const TOL_MAIN: f64 = 1e-8;
/// Absolute tolerance for the Mertens expansions' complex paths.
pub const TOL_MERTENS: f64 = 1e-7;

/// e(x) = exp(2 pi i x).
pub fn e_unit(x: f64) -> Complex64 {
    let angle = 2.0 * std::f64::consts::PI * x;
    Complex64::new(angle.cos(), angle.sin())
}

/// Direct O(N^2) DFT: F[k] = sum_n f[n] e(-kn/N).
pub fn dft(seq: &[Complex64]) -> Vec<Complex64> {
    let n = seq.len();
    assert!(n > 0, "dft needs a nonempty sequence");
    (0..n)
        .map(|k| {
            seq.iter()
                .enumerate()
                .map(|(i, v)| v * e_unit(-((k * i) as f64) / n as f64))
                .sum()
        })
        .collect()
}

/// Inverse DFT: f[k] = (1/N) sum_n F[n] e(kn/N).
pub fn idft(seq: &[Complex64]) -> Vec<Complex64> {
    let n = seq.len();
    assert!(n > 0, "idft needs a nonempty sequence");
    (0..n)
        .map(|k| {
            seq.iter()
                .enumerate()
                .map(|(i, v)| v * e_unit((k * i) as f64 / n as f64))
                .sum::<Complex64>()
                / n as f64
        })
        .collect()
}

/// The exact Fourier coefficient a_k(f, g; m) = sum_{d|(m,k)} g(d) f(k/d) d/k,
/// with m = 0 read through gcd(0, k) = k.
pub fn fourier_coeff(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    k: u64,
    m: u64,
) -> Result<Rat> {
    if k < 1 {
        return Err(Error::InvalidArgument("fourier_coeff needs k >= 1".into()));
    }
    let mut acc = Rat::zero();
    for d in divisors(gcd(m, k)) {
        acc += g.eval(d)? * f.eval(k / d)? * Rat::new(d.into(), k.into());
    }
    Ok(acc)
}

/// One period of L_{f,g,.}(k) together with its DFT coefficients.
#[derive(Debug, Clone)]
pub struct PeriodicSumTable {
    pub k: u64,
    /// values[r] = L_{f,g,r}(k) for r = 0..k-1, exact.
    pub values: Vec<Rat>,
    /// coeffs[l] = sum_r values[r] e(-lr/k), the un-normalized DFT.
    pub coeffs: Vec<Complex64>,
}

impl PeriodicSumTable {
    pub fn new(f: &ArithmeticFunction, g: &ArithmeticFunction, k: u64) -> Result<Self> {
        let values: Vec<Rat> = (0..k)
            .map(|r| anderson_apostol(f, g, r, k))
            .collect::<Result<_>>()?;
        let complex: Vec<Complex64> = values
            .iter()
            .map(|v| Complex64::new(rat_to_f64(v), 0.0))
            .collect();
        let coeffs = dft(&complex);
        Ok(PeriodicSumTable { k, values, coeffs })
    }

    /// Max deviation of idft(coeffs) from the stored values.
    pub fn roundtrip_dev(&self) -> f64 {
        let back = idft(&self.coeffs);
        back.iter()
            .zip(&self.values)
            .map(|(c, v)| (c - Complex64::new(rat_to_f64(v), 0.0)).norm())
            .fold(0.0, f64::max)
    }

    /// Max deviation of the DFT coefficients from the exact divisor formula
    /// k * a_k(f, g; l).
    pub fn divisor_formula_dev(
        &self,
        f: &ArithmeticFunction,
        g: &ArithmeticFunction,
    ) -> Result<f64> {
        let mut max = 0.0f64;
        for (l, c) in self.coeffs.iter().enumerate() {
            let exact = fourier_coeff(f, g, self.k, l as u64)? * rat_u(self.k);
            let dev = (c - Complex64::new(rat_to_f64(&exact), 0.0)).norm();
            max = max.max(dev);
        }
        Ok(max)
    }
}

/// Max deviation of the Fourier synthesis
/// sum_{m=1..k} a_k(f, g; m) e(mn/k) from the period values, over 0 <= n < k.
pub fn fourier_synthesis_dev(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    k: u64,
) -> Result<f64> {
    let coeffs: Vec<f64> = (1..=k)
        .map(|m| fourier_coeff(f, g, k, m).map(|r| rat_to_f64(&r)))
        .collect::<Result<_>>()?;
    let mut max = 0.0f64;
    for n in 0..k {
        let synth: Complex64 = coeffs
            .iter()
            .enumerate()
            .map(|(i, &a)| a * e_unit(((i + 1) as u64 * n) as f64 / k as f64))
            .sum();
        let direct = rat_to_f64(&anderson_apostol(f, g, n, k)?);
        max = max.max((synth - Complex64::new(direct, 0.0)).norm());
    }
    Ok(max)
}

/// DFT of h at gcd arguments, exact form:
/// hhat[a](n) = (h * c_-(a))(n) = sum_{d|n} h(n/d) c_d(a),
/// with the Ramanujan sums by their divisor form.
pub fn gcd_dft_exact(h: &ArithmeticFunction, a: u64, n: u64) -> Result<Rat> {
    let mut acc = Rat::zero();
    for d in divisors(n) {
        acc += h.eval(n / d)? * ramanujan_divisor_formula(d, a);
    }
    Ok(acc)
}

/// The same transform as the literal exponential sum
/// sum_{k=1..n} h(gcd(k, n)) e(ka/n).
pub fn gcd_dft_complex(h: &ArithmeticFunction, a: u64, n: u64) -> Result<Complex64> {
    let mut acc = Complex64::zero();
    for k in 1..=n {
        acc += rat_to_f64(&h.eval(gcd(k, n))?) * e_unit((k * a) as f64 / n as f64);
    }
    Ok(acc)
}

/// Both sides of the main theorem at modulus k, with the left-hand side
/// computed twice: the literal complex double sum and the exact proof path
/// sum_{d|k} d a_{k,d} mu(k/d) with divisor-form coefficients.
#[derive(Debug, Clone)]
pub struct MainTheoremReport {
    pub k: u64,
    pub lhs_exact: Rat,
    pub rhs: Rat,
    pub lhs_complex: Complex64,
    /// |lhs_complex - rhs|.
    pub complex_dev: f64,
}

impl MainTheoremReport {
    pub fn exact_pass(&self) -> bool {
        self.lhs_exact == self.rhs
    }
}

/// Checks sum_{d|k} sum_{r<k} d L_{f,g,r}(k) e(-rd/k) mu(k/d)
/// = sum_{d|k} phi(d) f(d) (k/d)^2 g(k/d).
pub fn main_theorem_check(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    k: u64,
) -> Result<MainTheoremReport> {
    let table = PeriodicSumTable::new(f, g, k)?;

    let mut lhs_complex = Complex64::zero();
    for d in divisors(k) {
        let mu_term = mobius(k / d) as f64;
        if mu_term == 0.0 {
            continue;
        }
        for (r, v) in table.values.iter().enumerate() {
            lhs_complex +=
                d as f64 * rat_to_f64(v) * e_unit(-((r as u64 * d) as f64) / k as f64) * mu_term;
        }
    }

    let mut lhs_exact = Rat::zero();
    for d in divisors(k) {
        let mu_term = mobius(k / d);
        if mu_term == 0 {
            continue;
        }
        // a_{k,d} = k * a_k(f, g; d) = sum_{r|(k,d)} r g(r) f(k/r).
        let akd = fourier_coeff(f, g, k, d)? * rat_u(k);
        lhs_exact += rat_u(d) * akd * crate::rat::rat_i(mu_term);
    }

    let mut rhs = Rat::zero();
    for d in divisors(k) {
        rhs += rat_u(totient(d)) * f.eval(d)? * rat_u((k / d) * (k / d)) * g.eval(k / d)?;
    }

    let complex_dev = (lhs_complex - Complex64::new(rat_to_f64(&rhs), 0.0)).norm();
    Ok(MainTheoremReport {
        k,
        lhs_exact,
        rhs,
        lhs_complex,
        complex_dev,
    })
}

/// y_f = Dirichlet inverse of n -> phi(n) f(n) / n^2; defined when f(1) != 0.
pub fn y_function(f: &ArithmeticFunction, horizon: u64) -> Result<ArithmeticFunction> {
    f.require_invertible()?;
    let base: Vec<Rat> = (1..=horizon)
        .map(|m| Ok(rat_u(totient(m)) * f.eval(m)? / rat_u(m * m)))
        .collect::<Result<_>>()?;
    dirichlet_inverse(
        &ArithmeticFunction::from_values(format!("phi*{}*Id_-2", f.name()), base),
        horizon,
    )
}

/// g(n) recovered from the period tables of its Anderson-Apostol sums.
#[derive(Debug, Clone)]
pub struct GRecovery {
    pub n: u64,
    /// Exact path: Fourier coefficients by the divisor formula.
    pub exact: Rat,
    /// Exponential path: coefficients extracted from the tables by DFT.
    pub complex: Complex64,
}

/// One period of L_{f,g,.}(d) for every divisor d of n, the input the
/// exponential recovery path consumes.
pub fn l_tables(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    n: u64,
) -> Result<Vec<(u64, Vec<Rat>)>> {
    divisors(n)
        .into_iter()
        .map(|d| Ok((d, PeriodicSumTable::new(f, g, d)?.values)))
        .collect()
}

/// Recovers g(n) from supplied period tables alone:
/// g(n) = sum_{d|n} sum_{j|d} sum_{r<d} (j L_{f,g,r}(d) / d^2) e(-rj/d)
///        mu(d/j) y_f(n/d).
///
/// `tables` must hold, for every divisor d of n, the pair (d, one period of
/// the sums at modulus d). Only f enters beyond the tables, through y_f.
pub fn recover_g_from_tables(
    f: &ArithmeticFunction,
    tables: &[(u64, Vec<Rat>)],
    n: u64,
) -> Result<Complex64> {
    let y = y_function(f, n)?;
    let mut complex = Complex64::zero();
    for d in divisors(n) {
        let values = tables
            .iter()
            .find(|(m, _)| *m == d)
            .map(|(_, v)| v)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("missing period table for divisor {d} of {n}"))
            })?;
        if values.len() != d as usize {
            return Err(Error::InvalidArgument(format!(
                "period table for modulus {d} has {} entries",
                values.len()
            )));
        }
        let yv = rat_to_f64(&y.eval(n / d)?);
        let mut inner = Complex64::zero();
        for j in divisors(d) {
            let mu_term = mobius(d / j);
            if mu_term == 0 {
                continue;
            }
            // The DFT of the table at index j.
            let mut dft_j = Complex64::zero();
            for (r, v) in values.iter().enumerate() {
                dft_j += rat_to_f64(v) * e_unit(-((r as u64 * j) as f64) / d as f64);
            }
            inner += (j as f64 / (d * d) as f64) * dft_j * mu_term as f64;
        }
        complex += inner * yv;
    }
    Ok(complex)
}

/// Recovers g(n) both ways: the exact path swaps the table DFTs for their
/// divisor-form coefficients; the complex path runs on the generated tables
/// through [`recover_g_from_tables`].
pub fn recover_g(f: &ArithmeticFunction, g: &ArithmeticFunction, n: u64) -> Result<GRecovery> {
    let y = y_function(f, n)?;
    let mut exact = Rat::zero();
    for d in divisors(n) {
        let yv = y.eval(n / d)?;
        let mut inner_exact = Rat::zero();
        for j in divisors(d) {
            let mu_term = mobius(d / j);
            if mu_term == 0 {
                continue;
            }
            // a_{d,j} = d * a_d(f, g; j).
            let adj = fourier_coeff(f, g, d, j)? * rat_u(d);
            inner_exact += rat_u(j) * adj * crate::rat::rat_i(mu_term) / rat_u(d * d);
        }
        exact += inner_exact * yv;
    }
    let complex = recover_g_from_tables(f, &l_tables(f, g, n)?, n)?;
    Ok(GRecovery { n, exact, complex })
}

/// Mertens function through the Ramanujan-sum expansion.
#[derive(Debug, Clone)]
pub struct MertensDftReport {
    pub x: u64,
    /// Exact path: the exponential sums replaced by their divisor forms.
    pub exact: Rat,
    /// The literal triple sum of the corollary.
    pub complex: Complex64,
}

/// M(x) = sum_{d<=x} sum_{n<=x/d} sum_{r<d}
///   ( sum_{j|d} (j/d) e(-rj/d) mu(d/j) ) (c_d(r)/d) y(n),
/// with y the Dirichlet inverse of phi(n)/n.
pub fn mertens_dft(x: u64) -> Result<MertensDftReport> {
    let id = ArithmeticFunction::builtin(Builtin::IdPow(1), x.max(1));
    let y = y_function(&id, x)?;
    // Partial sums Y(m) = sum_{n<=m} y(n).
    let mut y_partial = vec![Rat::zero(); x as usize + 1];
    for m in 1..=x {
        y_partial[m as usize] = &y_partial[(m - 1) as usize] + y.eval(m)?;
    }

    // Exact: sum_d h(d) Y(floor(x/d)) with h(d) = sum_{r|d} (phi(r)/r) mu(d/r),
    // the divisor-form collapse of the r-sum.
    let mut exact = Rat::zero();
    for d in 1..=x {
        let mut h = Rat::zero();
        for r in divisors(d) {
            let mu_term = mobius(d / r);
            if mu_term != 0 {
                h += Rat::new(totient(r).into(), r.into()) * crate::rat::rat_i(mu_term);
            }
        }
        exact += h * &y_partial[(x / d) as usize];
    }

    // Complex: the corollary verbatim, with c_d(r) by its exact divisor form.
    let mut complex = Complex64::zero();
    for d in 1..=x {
        let y_part = rat_to_f64(&y_partial[(x / d) as usize]);
        if y_part == 0.0 {
            continue;
        }
        let mut over_r = Complex64::zero();
        for r in 0..d {
            let c_dr = rat_to_f64(&ramanujan_divisor_formula(d, r));
            if c_dr == 0.0 {
                continue;
            }
            let mut over_j = Complex64::zero();
            for j in divisors(d) {
                let mu_term = mobius(d / j);
                if mu_term != 0 {
                    over_j += (j as f64 / d as f64)
                        * e_unit(-((r * j) as f64) / d as f64)
                        * mu_term as f64;
                }
            }
            over_r += over_j * (c_dr / d as f64);
        }
        complex += over_r * y_part;
    }

    Ok(MertensDftReport { x, exact, complex })
}

/// Euler's totient through the same machinery.
#[derive(Debug, Clone)]
pub struct TotientDftReport {
    pub n: u64,
    pub exact: Rat,
    pub complex: Complex64,
}

/// phi(n) = n sum_{d|n} sum_{j|d} sum_{r<d} (j/d^2) c_d(r) e(-rj/d) mu(d/j);
/// the exact path swaps the r-sum for d * a_d(Id, mu; j).
pub fn totient_dft(n: u64) -> Result<TotientDftReport> {
    let id = ArithmeticFunction::builtin(Builtin::IdPow(1), n.max(1));
    let mu_f = ArithmeticFunction::builtin(Builtin::Mobius, n.max(1));

    let mut exact = Rat::zero();
    let mut complex = Complex64::zero();
    for d in divisors(n) {
        for j in divisors(d) {
            let mu_term = mobius(d / j);
            if mu_term == 0 {
                continue;
            }
            // Exact replacement: sum_r c_d(r) e(-rj/d) = d * a_d(Id, mu; j).
            let a = fourier_coeff(&id, &mu_f, d, j)?;
            exact += Rat::new(j.into(), d.into()) * a * crate::rat::rat_i(mu_term);
            // Literal complex sum.
            let mut over_r = Complex64::zero();
            for r in 0..d {
                let c_dr = rat_to_f64(&ramanujan_divisor_formula(d, r));
                if c_dr != 0.0 {
                    over_r += c_dr * e_unit(-((r * j) as f64) / d as f64);
                }
            }
            complex += (j as f64 / (d * d) as f64) * over_r * mu_term as f64;
        }
    }
    Ok(TotientDftReport {
        n,
        exact: exact * rat_u(n),
        complex: complex * n as f64,
    })
}

/// Average order of phi: both sides of
/// sum_{2<=n<=x} phi(n) = sum_{d<=x} sum_{r<d} (c_d(r)/(2d))
///   floor(x/d)(floor(x/d)-1) sum_{j|d} j e(-rj/d) mu(d/j).
#[derive(Debug, Clone)]
pub struct TotientAverageReport {
    pub x: u64,
    pub direct: Rat,
    pub exact: Rat,
    pub complex: Complex64,
}

pub fn totient_average_order(x: u64) -> TotientAverageReport {
    let mut direct = Rat::zero();
    for n in 2..=x.max(1) {
        direct += rat_u(totient(n));
    }

    let mut exact = Rat::zero();
    let mut complex = Complex64::zero();
    for d in 1..=x {
        let m = x / d;
        let count = Rat::new((m * m.saturating_sub(1)).into(), 2.into());
        if count.is_zero() {
            continue;
        }
        // Exact collapse: sum_r c_d(r) e(-rj/d) = d[gcd(j,d) = 1], leaving
        // only j = 1, i.e. mu(d)/2 * m(m-1).
        exact += crate::rat::rat_i(mobius(d)) * &count;

        let count_f64 = rat_to_f64(&count);
        for r in 0..d {
            let c_dr = rat_to_f64(&ramanujan_divisor_formula(d, r));
            if c_dr == 0.0 {
                continue;
            }
            let mut over_j = Complex64::zero();
            for j in divisors(d) {
                let mu_term = mobius(d / j);
                if mu_term != 0 {
                    over_j += j as f64 * e_unit(-((r * j) as f64) / d as f64) * mu_term as f64;
                }
            }
            // m(m-1) is twice the stored count.
            complex += (c_dr / (2.0 * d as f64)) * (2.0 * count_f64) * over_j;
        }
    }
    TotientAverageReport {
        x,
        direct,
        exact,
        complex,
    }
}

/// Both sides of the nested-divisor-sum interchange
/// sum_{k<=n} sum_{d|k} h(d) u(k/d) v(k)
///   = sum_{d<=n} h(d) sum_{k<=n/d} u(k) v(dk).
pub fn interchange_check(
    h: &ArithmeticFunction,
    u: &ArithmeticFunction,
    v: &ArithmeticFunction,
    n: u64,
) -> Result<(Rat, Rat)> {
    let mut lhs = Rat::zero();
    for k in 1..=n {
        for d in divisors(k) {
            lhs += h.eval(d)? * u.eval(k / d)? * v.eval(k)?;
        }
    }
    let mut rhs = Rat::zero();
    for d in 1..=n {
        let mut inner = Rat::zero();
        for k in 1..=n / d {
            inner += u.eval(k)? * v.eval(d * k)?;
        }
        rhs += h.eval(d)? * inner;
    }
    Ok((lhs, rhs))
}

/// Both sides of the Anderson-Apostol interchange
/// sum_{d<=x} f(d) sum_{r|(d,x)} g(r) h(d/r)
///   = sum_{r|x} g(r) sum_{d<=x/r} h(d) f(gcd(x,r) d).
pub fn footnote_interchange_check(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    h: &ArithmeticFunction,
    x: u64,
) -> Result<(Rat, Rat)> {
    let mut lhs = Rat::zero();
    for d in 1..=x {
        let mut inner = Rat::zero();
        for r in divisors(gcd(d, x)) {
            inner += g.eval(r)? * h.eval(d / r)?;
        }
        lhs += f.eval(d)? * inner;
    }
    let mut rhs = Rat::zero();
    for r in divisors(x) {
        let mut inner = Rat::zero();
        for d in 1..=x / r {
            inner += h.eval(d)? * f.eval(gcd(x, r) * d)?;
        }
        rhs += g.eval(r)? * inner;
    }
    Ok((lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_i;
    use crate::type1::mertens_direct;

    #[test]
    fn dft_basics() {
        // Constant sequence -> (Nc, 0, ..., 0).
        let n = 8;
        let c = Complex64::new(3.0, 0.0);
        let out = dft(&vec![c; n]);
        assert!((out[0] - Complex64::new(3.0 * n as f64, 0.0)).norm() < 1e-12);
        for v in &out[1..] {
            assert!(v.norm() < 1e-12);
        }
        // Delta at index 0 -> all ones.
        let mut delta = vec![Complex64::zero(); n];
        delta[0] = Complex64::new(1.0, 0.0);
        for v in dft(&delta) {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn dft_round_trip() {
        // Deterministic pseudo-random input, N up to 64.
        for n in [1usize, 2, 5, 16, 64] {
            let seq: Vec<Complex64> = (0..n)
                .map(|i| {
                    let a = ((i * 2654435761) % 1000) as f64 / 500.0 - 1.0;
                    let b = ((i * 40503 + 7) % 1000) as f64 / 500.0 - 1.0;
                    Complex64::new(a, b)
                })
                .collect();
            let back = idft(&dft(&seq));
            for (x, y) in seq.iter().zip(&back) {
                assert!((x - y).norm() < 1e-12, "N = {n}");
            }
        }
    }

    #[test]
    fn fourier_coeff_cases() {
        let id = ArithmeticFunction::builtin(Builtin::IdPow(1), 12);
        let mu = ArithmeticFunction::builtin(Builtin::Mobius, 12);
        // k = 1: a_1 = f(1) g(1).
        assert_eq!(fourier_coeff(&id, &mu, 1, 1).unwrap(), rat_i(1));
        // k = 6, m = 6: direct divisor enumeration.
        let mut expect = Rat::zero();
        for d in divisors(6) {
            expect += mu.eval(d).unwrap() * id.eval(6 / d).unwrap() * Rat::new(d.into(), 6.into());
        }
        assert_eq!(fourier_coeff(&id, &mu, 6, 6).unwrap(), expect);
        // Synthesis at k = 12 reproduces the Ramanujan values pointwise.
        assert!(fourier_synthesis_dev(&id, &mu, 12).unwrap() < 1e-9);
        for n in 0..12 {
            assert_eq!(
                anderson_apostol(&id, &mu, n, 12).unwrap(),
                ramanujan_divisor_formula(12, n)
            );
        }
    }

    #[test]
    fn periodic_table_invariants() {
        for (f, g) in [
            (
                ArithmeticFunction::seeded_random(61, 48),
                ArithmeticFunction::seeded_random(62, 48),
            ),
            (
                ArithmeticFunction::builtin(Builtin::IdPow(1), 48),
                ArithmeticFunction::builtin(Builtin::Mobius, 48),
            ),
        ] {
            for k in 1..=48 {
                let table = PeriodicSumTable::new(&f, &g, k).unwrap();
                assert!(table.roundtrip_dev() < TOL_TABLE, "k = {k}");
                assert!(
                    table.divisor_formula_dev(&f, &g).unwrap() < TOL_TABLE,
                    "k = {k}"
                );
                // The period values themselves against the brute divisor scan.
                for (r, v) in table.values.iter().enumerate() {
                    assert_eq!(
                        *v,
                        crate::oracle::brute_type2(&f, &g, r as u64, k).unwrap(),
                        "k = {k}, r = {r}"
                    );
                }
            }
        }
    }

    #[test]
    fn gcd_dft_cases() {
        let n = 12;
        let eps = ArithmeticFunction::builtin(Builtin::Epsilon, n);
        let one = ArithmeticFunction::builtin(Builtin::Unit, n);
        let id = ArithmeticFunction::builtin(Builtin::IdPow(1), n);
        // h = eps: the transform is c_n(a) itself.
        for a in 0..n {
            assert_eq!(
                gcd_dft_exact(&eps, a, n).unwrap(),
                ramanujan_divisor_formula(n, a)
            );
        }
        // h = 1, a = 0: sum_{d|n} phi(d) = n.
        assert_eq!(gcd_dft_exact(&one, 0, n).unwrap(), rat_u(n));
        // h = Id, n = 6, a = 1: divisor enumeration.
        let mut expect = Rat::zero();
        for d in divisors(6) {
            expect += rat_u(6 / d) * ramanujan_divisor_formula(d, 1);
        }
        assert_eq!(gcd_dft_exact(&id, 1, 6).unwrap(), expect);
    }

    #[test]
    fn gcd_dft_exponential_mirror() {
        let grid = [
            ArithmeticFunction::builtin(Builtin::Unit, 48),
            ArithmeticFunction::builtin(Builtin::IdPow(1), 48),
            ArithmeticFunction::builtin(Builtin::Mobius, 48),
            ArithmeticFunction::builtin(Builtin::Totient, 48),
        ];
        for h in &grid {
            for n in 1..=48u64 {
                for a in 0..n {
                    let exact = rat_to_f64(&gcd_dft_exact(h, a, n).unwrap());
                    let complex = gcd_dft_complex(h, a, n).unwrap();
                    let dev = (complex - Complex64::new(exact, 0.0)).norm();
                    assert!(dev < TOL_GCD, "h = {}, n = {n}, a = {a}: {dev}", h.name());
                }
            }
        }
    }

    #[test]
    fn main_theorem_exact_and_complex() {
        let id = ArithmeticFunction::builtin(Builtin::IdPow(1), 48);
        let mu = ArithmeticFunction::builtin(Builtin::Mobius, 48);
        // k = 1: both sides f(1) g(1).
        let r = main_theorem_check(&id, &mu, 1).unwrap();
        assert_eq!(r.lhs_exact, rat_i(1));
        assert_eq!(r.rhs, rat_i(1));
        // k = 12 worked example.
        let r = main_theorem_check(&id, &mu, 12).unwrap();
        let mut expect = Rat::zero();
        for d in divisors(12) {
            expect +=
                rat_u(totient(d)) * rat_u(d) * rat_u((12 / d) * (12 / d)) * rat_i(mobius(12 / d));
        }
        assert_eq!(r.rhs, expect);
        assert!(r.exact_pass());
        assert!(r.complex_dev < TOL_MAIN);
        // Random pairs across the modulus range.
        for seed in 0..4 {
            let f = ArithmeticFunction::seeded_random(100 + seed, 48);
            let g = ArithmeticFunction::seeded_random(200 + seed, 48);
            for k in 1..=48 {
                let r = main_theorem_check(&f, &g, k).unwrap();
                assert!(r.exact_pass(), "seed {seed}, k = {k}");
                assert!(r.complex_dev < TOL_MAIN, "seed {seed}, k = {k}");
            }
        }
    }

    #[test]
    fn recover_from_tables_alone() {
        let id = ArithmeticFunction::builtin(Builtin::IdPow(1), 36);
        let mu = ArithmeticFunction::builtin(Builtin::Mobius, 36);
        for n in 1..=36 {
            let tables = l_tables(&id, &mu, n).unwrap();
            let got = recover_g_from_tables(&id, &tables, n).unwrap();
            let expect = rat_to_f64(&mu.eval(n).unwrap());
            assert!(
                (got - Complex64::new(expect, 0.0)).norm() < TOL_MAIN,
                "n = {n}"
            );
        }
        // A missing divisor table is an input error, not a wrong answer.
        let partial = l_tables(&id, &mu, 12)
            .unwrap()
            .into_iter()
            .filter(|(d, _)| *d != 6)
            .collect::<Vec<_>>();
        assert!(recover_g_from_tables(&id, &partial, 12).is_err());
    }

    #[test]
    fn recover_g_round_trip() {
        let id = ArithmeticFunction::builtin(Builtin::IdPow(1), 36);
        let mu = ArithmeticFunction::builtin(Builtin::Mobius, 36);
        for n in 1..=36 {
            let rec = recover_g(&id, &mu, n).unwrap();
            assert_eq!(rec.exact, mu.eval(n).unwrap(), "n = {n}");
            let dev = (rec.complex - Complex64::new(rat_to_f64(&rec.exact), 0.0)).norm();
            assert!(dev < TOL_MAIN, "n = {n}: {dev}");
        }
        let f = ArithmeticFunction::seeded_random(71, 24);
        let g = ArithmeticFunction::seeded_random(72, 24);
        for n in 1..=24 {
            let rec = recover_g(&f, &g, n).unwrap();
            assert_eq!(rec.exact, g.eval(n).unwrap(), "random at n = {n}");
        }
    }

    #[test]
    fn mertens_and_totient_expansions() {
        let r = mertens_dft(1).unwrap();
        assert_eq!(r.exact, rat_i(1));
        let r = mertens_dft(20).unwrap();
        assert_eq!(r.exact, rat_i(-3));
        for x in 1..=48 {
            let r = mertens_dft(x).unwrap();
            let direct = mertens_direct(x);
            assert_eq!(r.exact, rat_i(direct), "x = {x}");
            let dev = (r.complex - Complex64::new(direct as f64, 0.0)).norm();
            assert!(dev < TOL_MERTENS, "x = {x}: {dev}");
        }
        for n in 1..=48 {
            let r = totient_dft(n).unwrap();
            assert_eq!(r.exact, rat_u(totient(n)), "n = {n}");
            let dev = (r.complex - Complex64::new(totient(n) as f64, 0.0)).norm();
            assert!(dev < TOL_GCD, "n = {n}: {dev}");
        }
        assert_eq!(totient_dft(12).unwrap().exact, rat_u(4));
    }

    #[test]
    fn totient_average_order_display() {
        for x in 2..=40 {
            let r = totient_average_order(x);
            assert_eq!(r.exact, r.direct, "x = {x}");
            let dev = (r.complex - Complex64::new(rat_to_f64(&r.direct), 0.0)).norm();
            assert!(dev < TOL_MERTENS, "x = {x}: {dev}");
        }
    }

    #[test]
    fn interchange_identities() {
        let h = ArithmeticFunction::seeded_random(81, 40);
        let u = ArithmeticFunction::seeded_random(82, 40);
        let v = ArithmeticFunction::seeded_random(83, 40);
        let (lhs, rhs) = interchange_check(&h, &u, &v, 1).unwrap();
        assert_eq!(
            lhs,
            h.eval(1).unwrap() * u.eval(1).unwrap() * v.eval(1).unwrap()
        );
        assert_eq!(lhs, rhs);
        for n in 1..=40 {
            let (lhs, rhs) = interchange_check(&h, &u, &v, n).unwrap();
            assert_eq!(lhs, rhs, "interchange at n = {n}");
        }
        for x in 1..=40 {
            let (lhs, rhs) = footnote_interchange_check(&h, &u, &v, x).unwrap();
            assert_eq!(lhs, rhs, "footnote interchange at x = {x}");
        }
    }
}
