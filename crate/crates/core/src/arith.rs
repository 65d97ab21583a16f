//! Arithmetic functions, classical multiplicative functions, and the
//! Dirichlet convolution algebra.
//!
//! An [`ArithmeticFunction`] is a named, 1-indexed table of exact rationals up
//! to a declared horizon. Evaluation past the horizon is an error, never a
//! silent extension. Factorization is trial division throughout; everything
//! here runs at desk scale.

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::rat::{int_pow, parse_rat, rat_i, rat_u, Rat};

/// gcd for u64, with gcd(0, n) = gcd(n, 0) = n.
pub fn gcd(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

/// Prime factorization by trial division, as (prime, exponent) pairs.
pub fn factorize(n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize needs n >= 1");
    let mut n = n;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors needs n >= 1");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Number of prime factors of n counted with multiplicity.
pub fn big_omega(n: u64) -> u32 {
    factorize(n).iter().map(|&(_, e)| e).sum()
}

pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius needs n >= 1");
    let factors = factorize(n);
    if factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if factors.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient needs n >= 1");
    let mut phi = n;
    for (p, _) in factorize(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

/// sigma_a(n) = sum over d | n of d^a, exact for any integer a.
pub fn sigma(n: u64, a: i32) -> Rat {
    assert!(n >= 1, "sigma needs n >= 1");
    divisors(n).into_iter().map(|d| int_pow(d, a)).sum()
}

/// lambda(n) = (-1)^Omega(n).
pub fn liouville(n: u64) -> i64 {
    if big_omega(n).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Principal Dirichlet character mod k: 1 when n >= 1 and gcd(n, k) = 1,
/// else 0. Arguments n <= 0 return 0 so that guarded pentagonal shifts can be
/// evaluated without a separate bounds check.
pub fn principal_char(k: u64, n: i64) -> u64 {
    assert!(k >= 1, "principal_char needs k >= 1");
    if n < 1 {
        0
    } else if gcd(n as u64, k) == 1 {
        1
    } else {
        0
    }
}

/// Named members of the builtin catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    /// 1 for every n.
    Unit,
    /// Indicator of n = 1, the Dirichlet identity.
    Epsilon,
    /// n^a for a fixed integer a.
    IdPow(i32),
    Mobius,
    Totient,
    /// sigma_a for a fixed integer a.
    Sigma(i32),
    Liouville,
}

impl Builtin {
    fn name(self) -> String {
        match self {
            Builtin::Unit => "unit".into(),
            Builtin::Epsilon => "epsilon".into(),
            Builtin::IdPow(1) => "id".into(),
            Builtin::IdPow(a) => format!("id_{a}"),
            Builtin::Mobius => "mobius".into(),
            Builtin::Totient => "totient".into(),
            Builtin::Sigma(a) => format!("sigma_{a}"),
            Builtin::Liouville => "liouville".into(),
        }
    }

    fn value(self, n: u64) -> Rat {
        match self {
            Builtin::Unit => Rat::one(),
            Builtin::Epsilon => {
                if n == 1 {
                    Rat::one()
                } else {
                    Rat::zero()
                }
            }
            Builtin::IdPow(a) => int_pow(n, a),
            Builtin::Mobius => rat_i(mobius(n)),
            Builtin::Totient => rat_u(totient(n)),
            Builtin::Sigma(a) => sigma(n, a),
            Builtin::Liouville => rat_i(liouville(n)),
        }
    }
}

/// A named map from {1, ..., N} to exact rationals.
#[derive(Debug, Clone, PartialEq)]
pub struct ArithmeticFunction {
    name: String,
    values: Vec<Rat>,
}

impl ArithmeticFunction {
    /// Wraps an explicit 1-indexed value table: `values[i]` holds f(i + 1).
    pub fn from_values(name: impl Into<String>, values: Vec<Rat>) -> Self {
        ArithmeticFunction {
            name: name.into(),
            values,
        }
    }

    /// Materializes a builtin up to `horizon`.
    pub fn builtin(kind: Builtin, horizon: u64) -> Self {
        let values = (1..=horizon).map(|n| kind.value(n)).collect();
        ArithmeticFunction {
            name: kind.name(),
            values,
        }
    }

    /// Parses the custom-function file format: a JSON array of rational
    /// strings, 1-indexed, e.g. `["1","-1","0","1/2"]`.
    pub fn from_json(name: impl Into<String>, text: &str) -> Result<Self> {
        let strings: Vec<String> = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("custom function file: {e}")))?;
        let values = strings
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        Ok(ArithmeticFunction {
            name: name.into(),
            values,
        })
    }

    /// Seeded random rational table with f(1) != 0, for the randomized
    /// verification suites. Deterministic in (seed, horizon).
    pub fn seeded_random(seed: u64, horizon: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let values = (1..=horizon)
            .map(|n| {
                let mut num: i64 = rng.gen_range(-9..=9);
                if n == 1 && num == 0 {
                    num = 1;
                }
                let den: i64 = rng.gen_range(1..=9);
                crate::rat::rat(num, den)
            })
            .collect();
        ArithmeticFunction {
            name: format!("random_{seed}"),
            values,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn horizon(&self) -> u64 {
        self.values.len() as u64
    }

    /// f(n) for 1 <= n <= horizon; anything else is an error.
    pub fn eval(&self, n: u64) -> Result<Rat> {
        if n == 0 || n > self.horizon() {
            return Err(Error::HorizonExceeded {
                name: self.name.clone(),
                requested: n,
                horizon: self.horizon(),
            });
        }
        Ok(self.values[(n - 1) as usize].clone())
    }

    /// Checks f(1) != 0 eagerly, for operations that need Dirichlet
    /// invertibility.
    pub fn require_invertible(&self) -> Result<()> {
        match self.values.first() {
            Some(v) if !v.is_zero() => Ok(()),
            _ => Err(Error::NotInvertible {
                name: self.name.clone(),
            }),
        }
    }

    fn require_horizon(&self, n: u64) -> Result<()> {
        if self.horizon() < n {
            Err(Error::HorizonExceeded {
                name: self.name.clone(),
                requested: n,
                horizon: self.horizon(),
            })
        } else {
            Ok(())
        }
    }
}

/// (f * g)(n) = sum over d | n of f(d) g(n/d), for 1 <= n <= horizon.
pub fn dirichlet_convolve(
    f: &ArithmeticFunction,
    g: &ArithmeticFunction,
    horizon: u64,
) -> Result<ArithmeticFunction> {
    f.require_horizon(horizon)?;
    g.require_horizon(horizon)?;
    let mut values = Vec::with_capacity(horizon as usize);
    for n in 1..=horizon {
        let mut acc = Rat::zero();
        for d in divisors(n) {
            acc += f.eval(d)? * g.eval(n / d)?;
        }
        values.push(acc);
    }
    Ok(ArithmeticFunction::from_values(
        format!("({} * {})", f.name, g.name),
        values,
    ))
}

/// Dirichlet inverse up to `horizon`, by the standard recursion
/// f^-1(n) = -1/f(1) * sum_{d | n, d > 1} f(d) f^-1(n/d), f^-1(1) = 1/f(1).
pub fn dirichlet_inverse(f: &ArithmeticFunction, horizon: u64) -> Result<ArithmeticFunction> {
    f.require_invertible()?;
    f.require_horizon(horizon)?;
    let f1 = f.eval(1)?;
    let mut values: Vec<Rat> = Vec::with_capacity(horizon as usize);
    values.push(Rat::one() / &f1);
    for n in 2..=horizon {
        let mut acc = Rat::zero();
        for d in divisors(n) {
            if d > 1 {
                acc += f.eval(d)? * &values[(n / d - 1) as usize];
            }
        }
        values.push(-acc / &f1);
    }
    Ok(ArithmeticFunction::from_values(
        format!("{}^-1", f.name),
        values,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle;
    use crate::rat::rat;

    #[test]
    fn classical_functions_match_oracles() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(12), 0);
        assert_eq!(mobius(30), -1);
        assert_eq!(totient(12), 4);
        assert_eq!(sigma(6, 1), rat_i(12));
        for n in 1..=128 {
            assert_eq!(mobius(n), oracle::brute_mobius(n).unwrap());
            assert_eq!(totient(n), oracle::brute_totient(n).unwrap());
            assert_eq!(
                sigma(n, 1),
                Rat::from_integer(oracle::brute_sigma(n, 1).unwrap())
            );
        }
    }

    #[test]
    fn principal_char_cases() {
        assert_eq!(principal_char(12, 5), 1);
        assert_eq!(principal_char(12, 8), 0);
        assert_eq!(principal_char(7, -2), 0);
        assert_eq!(principal_char(7, 0), 0);
        assert_eq!(principal_char(1, 3), 1);
    }

    #[test]
    fn convolution_cases() {
        let n = 24;
        let mu = ArithmeticFunction::builtin(Builtin::Mobius, n);
        let one = ArithmeticFunction::builtin(Builtin::Unit, n);
        let id = ArithmeticFunction::builtin(Builtin::IdPow(1), n);
        let eps = ArithmeticFunction::builtin(Builtin::Epsilon, n);

        // mu * 1 = epsilon.
        let conv = dirichlet_convolve(&mu, &one, n).unwrap();
        for m in 1..=n {
            assert_eq!(conv.eval(m).unwrap(), eps.eval(m).unwrap());
        }
        // 1 * 1 = d(n), checked against divisor enumeration.
        let conv = dirichlet_convolve(&one, &one, n).unwrap();
        let expect = [1u64, 2, 2, 3, 2, 4];
        for m in 1..=6 {
            assert_eq!(conv.eval(m).unwrap(), rat_u(expect[(m - 1) as usize]));
        }
        for m in 1..=n {
            assert_eq!(conv.eval(m).unwrap(), rat_u(divisors(m).len() as u64));
        }
        // Id * mu = phi, checked against the coprime-count oracle.
        let conv = dirichlet_convolve(&id, &mu, n).unwrap();
        for m in 1..=n {
            assert_eq!(
                conv.eval(m).unwrap(),
                rat_u(oracle::brute_totient(m).unwrap())
            );
        }
    }

    #[test]
    fn inverse_cases() {
        let n = 24;
        let eps = ArithmeticFunction::builtin(Builtin::Epsilon, n);
        let one = ArithmeticFunction::builtin(Builtin::Unit, n);
        let mu = ArithmeticFunction::builtin(Builtin::Mobius, n);

        let inv = dirichlet_inverse(&eps, n).unwrap();
        for m in 1..=n {
            assert_eq!(inv.eval(m).unwrap(), eps.eval(m).unwrap());
        }
        let inv = dirichlet_inverse(&one, n).unwrap();
        for m in 1..=n {
            assert_eq!(inv.eval(m).unwrap(), mu.eval(m).unwrap());
        }
        let inv = dirichlet_inverse(&mu, n).unwrap();
        for m in 1..=n {
            assert_eq!(inv.eval(m).unwrap(), one.eval(m).unwrap());
        }

        let zero_at_one = ArithmeticFunction::from_values("z", vec![Rat::zero(), Rat::one()]);
        assert!(matches!(
            dirichlet_inverse(&zero_at_one, 2),
            Err(Error::NotInvertible { .. })
        ));
    }

    #[test]
    fn horizon_is_enforced() {
        let f = ArithmeticFunction::builtin(Builtin::Unit, 4);
        assert!(f.eval(4).is_ok());
        assert!(matches!(
            f.eval(5),
            Err(Error::HorizonExceeded { requested: 5, .. })
        ));
        assert!(f.eval(0).is_err());
        let g = ArithmeticFunction::builtin(Builtin::Unit, 8);
        assert!(dirichlet_convolve(&f, &g, 8).is_err());
    }

    #[test]
    fn custom_file_format() {
        let f = ArithmeticFunction::from_json("custom", r#"["1","-1","0","1/2"]"#).unwrap();
        assert_eq!(f.horizon(), 4);
        assert_eq!(f.eval(4).unwrap(), rat(1, 2));
        assert!(ArithmeticFunction::from_json("bad", r#"["1/0"]"#).is_err());
        assert!(ArithmeticFunction::from_json("bad", "not json").is_err());
    }

    #[test]
    fn seeded_random_is_deterministic_and_invertible() {
        let f = ArithmeticFunction::seeded_random(7, 32);
        let g = ArithmeticFunction::seeded_random(7, 32);
        assert_eq!(f, g);
        f.require_invertible().unwrap();
        let h = ArithmeticFunction::seeded_random(8, 32);
        assert_ne!(f, h);
    }
}
