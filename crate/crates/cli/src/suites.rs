//! Verification suites behind `sumfact verify`.
//!
//! Each suite re-runs the module's identity checks at the requested horizon
//! and reports one [`Check`] per identity. Exact checks carry no tolerance;
//! complex mirrors report their max deviation against the bound. Randomized
//! members are seeded, so a fixed seed reproduces byte-identical reports.

use num_complex::Complex64;
use num_traits::Zero;

use sumfact::arith::{divisors, totient, ArithmeticFunction, Builtin};
use sumfact::dft::{
    self, footnote_interchange_check, fourier_synthesis_dev, gcd_dft_complex, gcd_dft_exact,
    interchange_check, main_theorem_check, mertens_dft, recover_g, totient_average_order,
    totient_dft, PeriodicSumTable,
};
use sumfact::rat::{rat_i, rat_to_f64, rat_to_string, rat_u, Rat};
use sumfact::report::{params, Check, FailureDetail, SuiteReport};
use sumfact::type1::{
    convolution_lemma_check, lambert_series_check, menon_check, mertens_direct, mertens_via_type1,
    mu_inverse_matrix, mu_matrix, recover_f_type1, sigma_alpha_identity_check, t_from_snk,
    t_inverse_matrix, t_matrix, toth_check, type1_sum, verify_type1_factorization,
};
use sumfact::type2::{
    anderson_apostol, lfgm_expansion, lhat_poly, lhat_poly_divisor_form, p_identity_check,
    pnrec_check, ramanujan_three_way, simplified_factorization_check, u_inverse_matrix,
    u_matrix_at, u_matrix_nested_product, UhatRoutes, WPoint,
};
use sumfact::Result;

pub struct SuiteConfig {
    pub horizon: u64,
    pub f: ArithmeticFunction,
    pub g: ArithmeticFunction,
    pub w: WPoint,
    pub seed: u64,
    /// Overrides every complex-path tolerance when set.
    pub tol: Option<f64>,
}

impl SuiteConfig {
    fn tol_or(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

fn exact_check(
    name: &str,
    params: std::collections::BTreeMap<String, String>,
    ok: bool,
    detail: impl FnOnce() -> FailureDetail,
) -> Check {
    if ok {
        Check::exact_pass(name, params)
    } else {
        Check::exact_fail(name, params, detail())
    }
}

fn matrix_identity_check(name: &str, n: u64, ok: bool) -> Check {
    exact_check(name, params([("n", n.to_string())]), ok, || FailureDetail {
        location: format!("n={n}"),
        lhs: "product".into(),
        rhs: "identity".into(),
    })
}

pub fn suite_type1(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.horizon;
    let n_us = n as usize;
    let mut report = SuiteReport::new("type1", n);

    report.push(matrix_identity_check(
        "mu-inverse-pair",
        n,
        mu_matrix(n_us).mul(&mu_inverse_matrix(n_us)).is_identity(),
    ));

    report.push(matrix_identity_check(
        "t-inverse-formula",
        n,
        t_inverse_matrix(n_us) == t_matrix(n_us).invert()?,
    ));

    let conv = convolution_lemma_check(n_us);
    report.push(exact_check(
        "t-convolution-lemma",
        params([("n", n.to_string())]),
        conv.is_none(),
        || {
            let (fn_, fk) = conv.unwrap();
            FailureDetail {
                location: format!("n={fn_},k={fk}"),
                lhs: "sum t_{j,k} p(n-j)".into(),
                rhs: "[gcd(n+1,k)=1]".into(),
            }
        },
    ));

    report.push(matrix_identity_check(
        "t-from-lambert",
        n,
        t_from_snk(n_us) == t_matrix(n_us),
    ));

    for k in 1..=12u64 {
        let fail = lambert_series_check(k, n.max(64));
        report.push(exact_check(
            "lambert-series",
            params([("k", k.to_string()), ("q-horizon", n.max(64).to_string())]),
            fail.is_none(),
            || FailureDetail {
                location: format!("n={}", fail.unwrap()),
                lhs: "[gcd(n,k)=1]".into(),
                rhs: "sum_{d|k} mu(d) [d | n-k]".into(),
            },
        ));
    }

    let mut factorization_subjects = vec![
        cfg.f.clone(),
        ArithmeticFunction::builtin(Builtin::Unit, n),
        ArithmeticFunction::builtin(Builtin::Mobius, n),
        ArithmeticFunction::builtin(Builtin::Epsilon, n),
    ];
    let mut seen = std::collections::BTreeSet::new();
    factorization_subjects.retain(|f| seen.insert(f.name().to_string()));
    for f in &factorization_subjects {
        let r = verify_type1_factorization(f, n)?;
        report.push(exact_check(
            "type1-factorization",
            params([("f", f.name().to_string()), ("n", n.to_string())]),
            r.pass(),
            || {
                let i = r.first_mismatch.unwrap() as usize - 1;
                FailureDetail {
                    location: format!("n={}", i + 1),
                    lhs: rat_to_string(&r.lhs[i]),
                    rhs: rat_to_string(&r.rhs[i]),
                }
            },
        ));
    }

    for i in 0..3u64 {
        let seed = cfg.seed.wrapping_add(i);
        let f = ArithmeticFunction::seeded_random(seed, n + 1);
        let tf: Vec<Rat> = (1..=n + 1)
            .map(|x| type1_sum(&f, x))
            .collect::<Result<_>>()?;
        let recovered = recover_f_type1(&tf, n)?;
        let mut ok = true;
        let mut bad = 0;
        for m in 2..=n {
            if recovered.eval(m)? != f.eval(m)? {
                ok = false;
                bad = m;
                break;
            }
        }
        report.push(exact_check(
            "type1-recovery",
            params([("seed", seed.to_string()), ("n", n.to_string())]),
            ok,
            || FailureDetail {
                location: format!("n={bad}"),
                lhs: "recovered".into(),
                rhs: "original".into(),
            },
        ));
    }

    let x_max = n.min(48);
    let mut max_dev = 0.0f64;
    for x in 1..=x_max {
        let v = mertens_via_type1(x);
        let dev = (v - Complex64::new(mertens_direct(x) as f64, 0.0)).norm();
        max_dev = max_dev.max(dev);
    }
    report.push(Check::complex(
        "mertens-type1",
        params([("x-max", x_max.to_string())]),
        max_dev,
        cfg.tol_or(1e-9),
    ));

    let mut menon_ok = true;
    let mut menon_bad = 0;
    for m in 1..=n {
        if !menon_check(m).pass() {
            menon_ok = false;
            menon_bad = m;
            break;
        }
    }
    report.push(exact_check(
        "menon",
        params([("n", n.to_string())]),
        menon_ok,
        || FailureDetail {
            location: format!("n={menon_bad}"),
            lhs: "phi(n) d(n)".into(),
            rhs: "gcd sum".into(),
        },
    ));

    for f in [
        ArithmeticFunction::builtin(Builtin::IdPow(1), n),
        ArithmeticFunction::builtin(Builtin::Unit, n),
        ArithmeticFunction::builtin(Builtin::Mobius, n),
    ] {
        let mut ok = true;
        let mut bad = 0;
        for m in 1..=n {
            if !toth_check(&f, m)?.pass() {
                ok = false;
                bad = m;
                break;
            }
        }
        report.push(exact_check(
            "toth",
            params([("f", f.name().to_string()), ("n", n.to_string())]),
            ok,
            || FailureDetail {
                location: format!("n={bad}"),
                lhs: "gcd-argument sum".into(),
                rhs: "phi(n) sum (mu*f)(d)/phi(d)".into(),
            },
        ));
    }

    let sigma0 = sigma_alpha_identity_check(0, n)?;
    report.push(exact_check(
        "sigma-alpha",
        params([("alpha", "0".to_string()), ("n", n.to_string())]),
        sigma0.pass(),
        || FailureDetail {
            location: format!("n={}", sigma0.first_mismatch.unwrap()),
            lhs: "d(n)".into(),
            rhs: "t-inverse expansion".into(),
        },
    ));
    // alpha > 0 runs against the candidate phi_alpha reading and is reported
    // without being load-bearing for the suite: a mismatch is information,
    // not a failure.
    let sigma1 = sigma_alpha_identity_check(1, n.min(24))?;
    report.push(Check::exact_pass(
        "sigma-alpha-candidate",
        params([
            ("alpha", "1".to_string()),
            ("n", n.min(24).to_string()),
            ("holds", sigma1.pass().to_string()),
        ]),
    ));

    report.sort();
    Ok(report)
}

pub fn suite_type2(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.horizon;
    let n_us = n as usize;
    let mut report = SuiteReport::new("type2", n);
    let w = &cfg.w;

    let uinv = u_inverse_matrix(&cfg.f, n_us)?;
    report.push(matrix_identity_check(
        "u-inverse-pair",
        n,
        u_matrix_at(&cfg.f, n_us, w)?
            .mul(&uinv.eval_at(w.value()))
            .is_identity(),
    ));

    let mut degree_ok = true;
    for i in 1..=n_us {
        for j in 1..=i {
            let p = uinv.entry(i, j);
            if p.degree().unwrap_or(0) > i || !p.coeff(0).is_zero() {
                degree_ok = false;
            }
        }
    }
    report.push(exact_check(
        "u-inverse-degree-bound",
        params([("n", n.to_string())]),
        degree_ok,
        || FailureDetail {
            location: "degree scan".into(),
            lhs: "deg <= n, zero constant term".into(),
            rhs: "violated".into(),
        },
    ));

    let nested_n = n_us.min(6);
    report.push(matrix_identity_check(
        "u-nested-product",
        nested_n as u64,
        u_matrix_nested_product(&cfg.f, nested_n, w)?
            == u_matrix_at(&cfg.f, nested_n, w)?.truncate(nested_n),
    ));

    let routes_n = n_us.min(24);
    let routes = UhatRoutes::compute(&cfg.f, routes_n, w)?;
    let diff = routes.first_divergence();
    report.push(exact_check(
        "uhat-routes",
        params([("f", cfg.f.name().to_string()), ("n", routes_n.to_string())]),
        diff.is_none(),
        || {
            let d = diff.unwrap();
            FailureDetail {
                location: format!("n={},k={}", d.n, d.k),
                lhs: d.definition,
                rhs: format!(
                    "D_f route {}, fhat^-1 route {}",
                    d.d_formula, d.fhat_inverse
                ),
            }
        },
    ));

    // (D_f * fhat)(n) = -fhat(n)/fhat(1) + eps(n).
    let fhat = sumfact::type2::FHat::new(&cfg.f, w);
    let f1 = fhat.at1();
    let mut lemma_ok = true;
    let mut lemma_bad = 0;
    'outer: for m in 1..=n {
        let mut lhs = Rat::from_integer(0.into());
        for d in divisors(m) {
            lhs += sumfact::type2::d_conv(&fhat, d)? * fhat.eval(m / d)?;
        }
        let mut rhs = -fhat.eval(m)? / &f1;
        if m == 1 {
            rhs += rat_i(1);
        }
        if lhs != rhs {
            lemma_ok = false;
            lemma_bad = m;
            break 'outer;
        }
    }
    report.push(exact_check(
        "dconv-lemma",
        params([("f", cfg.f.name().to_string()), ("n", n.to_string())]),
        lemma_ok,
        || FailureDetail {
            location: format!("n={lemma_bad}"),
            lhs: "(D_f * fhat)(n)".into(),
            rhs: "-fhat(n)/fhat(1) + eps(n)".into(),
        },
    ));

    let pnrec_n = n_us.min(20);
    let pn = pnrec_check(&cfg.f, pnrec_n, w)?;
    report.push(exact_check(
        "pnrec",
        params([("f", cfg.f.name().to_string()), ("n", pnrec_n.to_string())]),
        pn.is_none(),
        || {
            let p = pn.unwrap();
            FailureDetail {
                location: format!("n={},k={}", p.n, p.k),
                lhs: p.lhs,
                rhs: p.rhs,
            }
        },
    ));

    let mut lhat_ok = true;
    let mut lhat_bad = 0;
    for m in 1..=n {
        if lhat_poly(&cfg.f, &cfg.g, m)? != lhat_poly_divisor_form(&cfg.f, &cfg.g, m)? {
            lhat_ok = false;
            lhat_bad = m;
            break;
        }
    }
    report.push(exact_check(
        "lhat-forms",
        params([("n", n.to_string())]),
        lhat_ok,
        || FailureDetail {
            location: format!("n={lhat_bad}"),
            lhs: "coefficient form".into(),
            rhs: "divisor-geometric form".into(),
        },
    ));

    let grid_n = n.min(24);
    let mut lfgm_ok = true;
    let mut lfgm_bad = (0, 0);
    'grid: for nn in 1..=grid_n {
        for m in 1..=nn {
            if lfgm_expansion(&cfg.f, &cfg.g, m, nn)? != anderson_apostol(&cfg.f, &cfg.g, m, nn)? {
                lfgm_ok = false;
                lfgm_bad = (m, nn);
                break 'grid;
            }
        }
    }
    report.push(exact_check(
        "lfgm-expansion",
        params([("n", grid_n.to_string())]),
        lfgm_ok,
        || FailureDetail {
            location: format!("m={},n={}", lfgm_bad.0, lfgm_bad.1),
            lhs: "partition-weighted double sum".into(),
            rhs: "divisor sum".into(),
        },
    ));

    let ram_n = n.min(40);
    let mut ram_exact_ok = true;
    let mut ram_bad = (0, 0);
    let mut ram_dev = 0.0f64;
    'ram: for x in 1..=ram_n {
        for m in 1..=ram_n {
            let r = ramanujan_three_way(x, m);
            if r.partition_formula != r.divisor_formula {
                ram_exact_ok = false;
                ram_bad = (x, m);
                break 'ram;
            }
            let dev = (r.exponential - Complex64::new(rat_to_f64(&r.divisor_formula), 0.0)).norm();
            ram_dev = ram_dev.max(dev);
        }
    }
    report.push(exact_check(
        "ramanujan-partition-formula",
        params([("grid", ram_n.to_string())]),
        ram_exact_ok,
        || FailureDetail {
            location: format!("x={},m={}", ram_bad.0, ram_bad.1),
            lhs: "partition formula".into(),
            rhs: "divisor formula".into(),
        },
    ));
    report.push(Check::complex(
        "ramanujan-exponential",
        params([("grid", ram_n.to_string())]),
        ram_dev,
        cfg.tol_or(1e-9),
    ));

    let simp_n = n_us.min(32);
    let g_rand = ArithmeticFunction::seeded_random(cfg.seed.wrapping_add(10), simp_n as u64);
    for g in [&cfg.g, &g_rand] {
        let fail = simplified_factorization_check(&cfg.f, g, simp_n.min(g.horizon() as usize), w)?;
        report.push(exact_check(
            "simplified-factorization",
            params([("g", g.name().to_string()), ("n", simp_n.to_string())]),
            fail.is_none(),
            || FailureDetail {
                location: format!("n={}", fail.unwrap()),
                lhs: "pentagonal-shifted g".into(),
                rhs: "uhat-weighted divisor sums".into(),
            },
        ));
    }

    let p_n = n_us.min(16);
    let p_fail = p_identity_check(&cfg.f, p_n, w)?;
    report.push(exact_check(
        "p-identity",
        params([("f", cfg.f.name().to_string()), ("n", p_n.to_string())]),
        p_fail.is_none(),
        || FailureDetail {
            location: format!("n={}", p_fail.unwrap()),
            lhs: "sum_k uhat_{n,k} P_k(w,t)".into(),
            rhs: "t^n".into(),
        },
    ));

    report.sort();
    Ok(report)
}

pub fn suite_dft(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let n = cfg.horizon;
    let mut report = SuiteReport::new("dft", n);

    let mut table_dev = 0.0f64;
    let mut coeff_dev = 0.0f64;
    let mut synth_dev = 0.0f64;
    for k in 1..=n {
        let table = PeriodicSumTable::new(&cfg.f, &cfg.g, k)?;
        table_dev = table_dev.max(table.roundtrip_dev());
        coeff_dev = coeff_dev.max(table.divisor_formula_dev(&cfg.f, &cfg.g)?);
        synth_dev = synth_dev.max(fourier_synthesis_dev(&cfg.f, &cfg.g, k)?);
    }
    report.push(Check::complex(
        "periodic-table-roundtrip",
        params([("k-max", n.to_string())]),
        table_dev,
        cfg.tol_or(dft::TOL_TABLE),
    ));
    report.push(Check::complex(
        "fourier-coeff-divisor-form",
        params([("k-max", n.to_string())]),
        coeff_dev,
        cfg.tol_or(dft::TOL_TABLE),
    ));
    report.push(Check::complex(
        "fourier-synthesis",
        params([("k-max", n.to_string())]),
        synth_dev,
        cfg.tol_or(1e-9),
    ));

    let mut main_ok = true;
    let mut main_bad = 0;
    let mut main_dev = 0.0f64;
    let mut pairs: Vec<(ArithmeticFunction, ArithmeticFunction)> =
        vec![(cfg.f.clone(), cfg.g.clone())];
    for i in 0..3u64 {
        pairs.push((
            ArithmeticFunction::seeded_random(cfg.seed.wrapping_add(20 + i), n),
            ArithmeticFunction::seeded_random(cfg.seed.wrapping_add(30 + i), n),
        ));
    }
    'main: for (f, g) in &pairs {
        for k in 1..=n {
            let r = main_theorem_check(f, g, k)?;
            if !r.exact_pass() {
                main_ok = false;
                main_bad = k;
                break 'main;
            }
            main_dev = main_dev.max(r.complex_dev);
        }
    }
    report.push(exact_check(
        "main-theorem-exact",
        params([("k-max", n.to_string()), ("pairs", pairs.len().to_string())]),
        main_ok,
        || FailureDetail {
            location: format!("k={main_bad}"),
            lhs: "divisor-form LHS".into(),
            rhs: "phi-weighted RHS".into(),
        },
    ));
    report.push(Check::complex(
        "main-theorem-complex",
        params([("k-max", n.to_string()), ("pairs", pairs.len().to_string())]),
        main_dev,
        cfg.tol_or(dft::TOL_MAIN),
    ));

    let mut gcd_dev = 0.0f64;
    for h in [
        ArithmeticFunction::builtin(Builtin::Unit, n),
        ArithmeticFunction::builtin(Builtin::IdPow(1), n),
        ArithmeticFunction::builtin(Builtin::Mobius, n),
        ArithmeticFunction::builtin(Builtin::Totient, n),
    ] {
        for m in 1..=n {
            for a in 0..m.min(8) {
                let exact = rat_to_f64(&gcd_dft_exact(&h, a, m)?);
                let dev = (gcd_dft_complex(&h, a, m)? - Complex64::new(exact, 0.0)).norm();
                gcd_dev = gcd_dev.max(dev);
            }
        }
    }
    report.push(Check::complex(
        "gcd-dft",
        params([("n-max", n.to_string())]),
        gcd_dev,
        cfg.tol_or(dft::TOL_GCD),
    ));

    let rec_n = n.min(24);
    let mut rec_ok = true;
    let mut rec_bad = 0;
    let mut rec_dev = 0.0f64;
    for m in 1..=rec_n {
        let rec = recover_g(&cfg.f, &cfg.g, m)?;
        if rec.exact != cfg.g.eval(m)? {
            rec_ok = false;
            rec_bad = m;
            break;
        }
        rec_dev = rec_dev.max((rec.complex - Complex64::new(rat_to_f64(&rec.exact), 0.0)).norm());
    }
    report.push(exact_check(
        "recover-g-exact",
        params([("n-max", rec_n.to_string())]),
        rec_ok,
        || FailureDetail {
            location: format!("n={rec_bad}"),
            lhs: "recovered".into(),
            rhs: "g(n)".into(),
        },
    ));
    report.push(Check::complex(
        "recover-g-complex",
        params([("n-max", rec_n.to_string())]),
        rec_dev,
        cfg.tol_or(dft::TOL_MAIN),
    ));

    let mut mert_ok = true;
    let mut mert_bad = 0;
    let mut mert_dev = 0.0f64;
    for x in 1..=n {
        let r = mertens_dft(x)?;
        if r.exact != rat_i(mertens_direct(x)) {
            mert_ok = false;
            mert_bad = x;
            break;
        }
        mert_dev = mert_dev.max((r.complex - Complex64::new(mertens_direct(x) as f64, 0.0)).norm());
    }
    report.push(exact_check(
        "mertens-dft-exact",
        params([("x-max", n.to_string())]),
        mert_ok,
        || FailureDetail {
            location: format!("x={mert_bad}"),
            lhs: "expansion".into(),
            rhs: "partial sum of mu".into(),
        },
    ));
    report.push(Check::complex(
        "mertens-dft-complex",
        params([("x-max", n.to_string())]),
        mert_dev,
        cfg.tol_or(dft::TOL_MERTENS),
    ));

    let mut tot_ok = true;
    let mut tot_bad = 0;
    let mut tot_dev = 0.0f64;
    for m in 1..=n {
        let r = totient_dft(m)?;
        if r.exact != rat_u(totient(m)) {
            tot_ok = false;
            tot_bad = m;
            break;
        }
        tot_dev = tot_dev.max((r.complex - Complex64::new(totient(m) as f64, 0.0)).norm());
    }
    report.push(exact_check(
        "totient-dft-exact",
        params([("n-max", n.to_string())]),
        tot_ok,
        || FailureDetail {
            location: format!("n={tot_bad}"),
            lhs: "expansion".into(),
            rhs: "phi(n)".into(),
        },
    ));
    report.push(Check::complex(
        "totient-dft-complex",
        params([("n-max", n.to_string())]),
        tot_dev,
        cfg.tol_or(dft::TOL_GCD),
    ));

    let avg = totient_average_order(n);
    report.push(exact_check(
        "totient-average-order",
        params([("x", n.to_string())]),
        avg.exact == avg.direct,
        || FailureDetail {
            location: format!("x={n}"),
            lhs: rat_to_string(&avg.exact),
            rhs: rat_to_string(&avg.direct),
        },
    ));

    let int_n = n.min(40);
    let h = ArithmeticFunction::seeded_random(cfg.seed.wrapping_add(40), int_n);
    let u = ArithmeticFunction::seeded_random(cfg.seed.wrapping_add(41), int_n);
    let v = ArithmeticFunction::seeded_random(cfg.seed.wrapping_add(42), int_n);
    let mut int_ok = true;
    let mut int_bad = 0;
    for m in 1..=int_n {
        let (lhs, rhs) = interchange_check(&h, &u, &v, m)?;
        if lhs != rhs {
            int_ok = false;
            int_bad = m;
            break;
        }
    }
    report.push(exact_check(
        "interchange",
        params([("n-max", int_n.to_string())]),
        int_ok,
        || FailureDetail {
            location: format!("n={int_bad}"),
            lhs: "nested".into(),
            rhs: "interchanged".into(),
        },
    ));
    let mut foot_ok = true;
    let mut foot_bad = 0;
    for x in 1..=int_n {
        let (lhs, rhs) = footnote_interchange_check(&h, &u, &v, x)?;
        if lhs != rhs {
            foot_ok = false;
            foot_bad = x;
            break;
        }
    }
    report.push(exact_check(
        "footnote-interchange",
        params([("x-max", int_n.to_string())]),
        foot_ok,
        || FailureDetail {
            location: format!("x={foot_bad}"),
            lhs: "nested".into(),
            rhs: "interchanged".into(),
        },
    ));

    report.sort();
    Ok(report)
}
