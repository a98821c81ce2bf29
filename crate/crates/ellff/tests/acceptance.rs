//! Acceptance sweep: every headline result the library must reproduce, one
//! test per criterion, each printing a single `ACCEPTANCE <n> <name>:
//! PASS|FAIL` line (run with `--nocapture` to see the lines as they pass).
//!
//! The heavyweight family sweeps run once, with the extra verification level
//! on, and are shared across criteria. All numeric comparisons against the
//! reference tables are exact integer arithmetic at the stated tolerance:
//! average ranks to +/- 0.0005, rank distributions to +/- 0.000001.

use ellff::tables::{build_direct, derive_pullback, derive_twist};
use ellff::{
    analytic_rank, compute_l, enumerate_family, named_curve, poly_from_str, run_family,
    sign_stats, versal_curve, CacheStore, ComputeOpts, CurveId, FamilyOpts, FamilySpec,
    LPolynomial, Poly, RankReport, RationalFn, TableStrategy, TABLE_FORMAT,
};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::HashMap;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;
use std::sync::{Mutex, OnceLock};
use std::time::{Duration, Instant};

const X_CURVES: [CurveId; 4] = [CurveId::X222, CurveId::X211, CurveId::X321, CurveId::X431];

/// Run one criterion body and print exactly one PASS/FAIL line for it.
fn criterion<F: FnOnce()>(n: u32, name: &str, body: F) {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed().as_secs_f64();
    match result {
        Ok(()) => println!("ACCEPTANCE {n:>2} {name}: PASS ({elapsed:.1}s)"),
        Err(e) => {
            println!("ACCEPTANCE {n:>2} {name}: FAIL ({elapsed:.1}s)");
            resume_unwind(e);
        }
    }
}

/// Shared on-disk table cache, stable across runs so reruns start warm.
fn store() -> &'static CacheStore {
    static STORE: OnceLock<CacheStore> = OnceLock::new();
    STORE.get_or_init(|| {
        let slug = TABLE_FORMAT.replace(' ', "-").to_lowercase();
        CacheStore::new(std::env::temp_dir().join(format!("ellff-acceptance-{slug}")))
    })
}

type ReportMap = Mutex<HashMap<(&'static str, u64, usize), &'static RankReport>>;

/// Family sweeps shared across criteria, each computed once with verify on.
fn family_report(id: CurveId, q: u64, d_max: usize) -> &'static RankReport {
    static REPORTS: OnceLock<ReportMap> = OnceLock::new();
    let map = REPORTS.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = map.lock().unwrap();
    guard.entry((id.name(), q, d_max)).or_insert_with(|| {
        let spec = FamilySpec::new(named_curve(id, q).unwrap(), d_max).unwrap();
        let report = run_family(&spec, store(), &FamilyOpts { verify: true }).unwrap();
        Box::leak(Box::new(report))
    })
}

/// Exact tolerance check: |num/den - target/10^scale| <= tol/10^scale.
fn close(num: u64, den: u64, target: i128, scale: u32, tol: i128) -> bool {
    let lhs = num as i128 * 10i128.pow(scale);
    let rhs = target * den as i128;
    (lhs - rhs).abs() <= tol * den as i128
}

/// Run the installed binary against the shared cache and return its stdout.
fn ffell(args: &[&str]) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_ffell"))
        .args(args)
        .args(["--cache-dir", store().root().to_str().unwrap()])
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "ffell {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn qpow(q: u64, k: usize) -> BigInt {
    let mut p = BigInt::one();
    for _ in 0..k {
        p *= q;
    }
    p
}

#[test]
fn criterion_01_trivial_l_functions() {
    criterion(1, "trivial_l_functions", || {
        let opts = ComputeOpts {
            verify: true,
            strategy: TableStrategy::Direct,
        };
        for id in X_CURVES {
            for q in [5u64, 7] {
                let t0 = Instant::now();
                let curve = named_curve(id, q).unwrap();
                let l = compute_l(&curve, store(), &opts).unwrap();
                assert_eq!(l.degree(), 0, "{} over F_{q}", id.name());
                assert_eq!(l.to_string(), "1", "{} over F_{q}", id.name());
                assert_eq!(l.sign(), 1, "{} over F_{q}", id.name());
                assert_eq!(l.rank(), 0, "{} over F_{q}", id.name());
                assert!(
                    t0.elapsed() < Duration::from_secs(1),
                    "{} over F_{q} took {:?}",
                    id.name(),
                    t0.elapsed()
                );
            }
        }
        let out = ffell(&["lfun", "--q", "5", "--curve", "X222"]);
        assert!(out.contains("L = 1, sign = +1, rank = 0"), "stdout: {out}");
    });
}

#[test]
fn criterion_02_versal_curve() {
    criterion(2, "versal_curve", || {
        let opts = ComputeOpts {
            verify: true,
            strategy: TableStrategy::Direct,
        };
        for q in [5u64, 7, 11] {
            let t0 = Instant::now();
            let l = compute_l(&versal_curve(q).unwrap(), store(), &opts).unwrap();
            assert_eq!(l.to_string(), format!("1 - {q}*T"));
            assert_eq!(l.sign(), -1, "over F_{q}");
            assert_eq!(l.rank(), 1, "over F_{q}");
            assert!(t0.elapsed() < Duration::from_secs(1));
        }
        // Independent level-1 count over F_5: the table's flat sum is b_1,
        // and log L = -5T + O(T^2) forces b_1 = -5.
        let table = build_direct(&versal_curve(5).unwrap(), 1).unwrap();
        assert_eq!(table.flat_sum(), -5);
        let out = ffell(&["lfun", "--q", "5", "--curve", "VERSAL"]);
        assert!(
            out.contains("L = 1 - 5*T, sign = -1, rank = 1"),
            "stdout: {out}"
        );
    });
}

#[test]
fn criterion_03_family_counts() {
    criterion(3, "family_counts", || {
        let t0 = Instant::now();
        let spec5 = FamilySpec::new(named_curve(CurveId::X222, 5).unwrap(), 5).unwrap();
        for (d, want) in [(1, 3), (2, 13), (3, 71), (4, 345), (5, 1739)] {
            assert_eq!(enumerate_family(&spec5, d).unwrap().len(), want, "q=5 d={d}");
        }
        let spec7 = FamilySpec::new(named_curve(CurveId::X222, 7).unwrap(), 3).unwrap();
        for (d, want) in [(1, 5), (2, 31), (3, 227)] {
            assert_eq!(enumerate_family(&spec7, d).unwrap().len(), want, "q=7 d={d}");
        }
        assert!(t0.elapsed() < Duration::from_secs(10));
    });
}

#[test]
fn criterion_04_average_ranks_q5() {
    criterion(4, "average_ranks_q5", || {
        let t0 = Instant::now();
        // Reference mu(E, D) in thousandths, D = 1..5; matched to +/- 0.0005
        // exactly (several reference entries sit on the rounding boundary,
        // e.g. X321 at D = 2 is 9/16 = 0.5625).
        let expected: [(CurveId, [i128; 5]); 4] = [
            (CurveId::X222, [1000, 688, 644, 653, 666]),
            (CurveId::X211, [333, 688, 598, 662, 586]),
            (CurveId::X321, [333, 562, 690, 625, 618]),
            (CurveId::X431, [333, 562, 621, 616, 592]),
        ];
        for (id, mus) in expected {
            let report = family_report(id, 5, 5);
            for (i, &milli) in mus.iter().enumerate() {
                let (sum, count) = report.mu_rational(i + 1);
                assert!(
                    close(sum, count, milli * 10, 4, 5),
                    "{} D={}: mu = {sum}/{count}, reference 0.{milli:03}",
                    id.name(),
                    i + 1
                );
            }
        }
        assert!(t0.elapsed() < Duration::from_secs(900));
    });
}

#[test]
fn criterion_05_rank_distributions_q5() {
    criterion(5, "rank_distributions_q5", || {
        // Reference per-degree rank distributions in millionths, matched to
        // +/- 0.000001; ranks beyond each row must not occur at all.
        let check = |id: CurveId, d: usize, target_micro: &[i128]| {
            let stats = &family_report(id, 5, 5).per_degree()[d - 1];
            assert_eq!(stats.d, d);
            let rows = stats.histogram.len().max(target_micro.len());
            for r in 0..rows {
                let h = stats.histogram.get(r).copied().unwrap_or(0);
                let want = target_micro.get(r).copied().unwrap_or(0);
                assert!(
                    close(h, stats.count as u64, want, 6, 1),
                    "{} F_{d} rank {r}: {h}/{} vs 0.{want:06}",
                    id.name(),
                    stats.count
                );
            }
        };
        check(CurveId::X222, 1, &[333333, 333333, 333333]);
        check(CurveId::X222, 2, &[384615, 615385]);
        check(CurveId::X222, 3, &[422535, 521127, 56338]);
        check(CurveId::X222, 4, &[417391, 510145, 72464]);
        check(CurveId::X211, 1, &[666667, 333333]);
        check(CurveId::X211, 2, &[307692, 615385, 76923]);
        check(CurveId::X211, 3, &[450704, 521127, 28169]);
        check(CurveId::X211, 4, &[405797, 510145, 84058]);
        check(CurveId::X321, 1, &[666667, 333333]);
        check(CurveId::X321, 2, &[384615, 615385]);
        check(CurveId::X321, 3, &[380282, 521127, 98592]);
        check(CurveId::X321, 4, &[446377, 504348, 43478, 5797]);
        check(CurveId::X431, 1, &[666667, 333333]);
        check(CurveId::X431, 2, &[384615, 615385]);
        check(CurveId::X431, 3, &[422535, 521127, 56338]);
        check(CurveId::X431, 4, &[449275, 498551, 40580, 11594]);
    });
}

#[test]
fn criterion_06_q7_spot_checks() {
    criterion(6, "q7_spot_checks", || {
        let t0 = Instant::now();
        let report = family_report(CurveId::X222, 7, 3);
        for (d, milli) in [(1, 400), (2, 667), (3, 669)] {
            let (sum, count) = report.mu_rational(d);
            assert!(
                close(sum, count, milli * 10, 4, 5),
                "X222/F_7 D={d}: mu = {sum}/{count}, reference 0.{milli:03}"
            );
        }
        assert!(t0.elapsed() < Duration::from_secs(120));
    });
}

#[test]
fn criterion_07_derivation_oracles() {
    criterion(7, "derivation_oracles", || {
        // Twisted tables must equal the direct count of the twisted model,
        // entry for entry, across curves, factors, and levels.
        let mut twist_triples = 0;
        for id in X_CURVES {
            let base = named_curve(id, 5).unwrap();
            let spec = FamilySpec::new(base.clone(), 2).unwrap();
            let mut fs = enumerate_family(&spec, 1).unwrap();
            fs.extend(enumerate_family(&spec, 2).unwrap().into_iter().take(2));
            for n in 1..=3u32 {
                let base_table = build_direct(&base, n).unwrap();
                for f in &fs {
                    let derived = derive_twist(&base_table, &base, f).unwrap();
                    let direct = build_direct(&base.make_twist(f).unwrap(), n).unwrap();
                    assert_eq!(derived, direct, "{} twist {f} level {n}", id.name());
                    twist_triples += 1;
                }
            }
        }
        assert!(twist_triples >= 50, "only {twist_triples} twist triples");

        // Same for pullback tables along maps of degree up to three,
        // polynomial and properly rational alike.
        let p = |s: &str| poly_from_str(5, s).unwrap();
        let thetas = [
            RationalFn::from_poly(p("t^2+2")),
            RationalFn::from_poly(p("t^2+t")),
            RationalFn::from_poly(p("t^3+t+1")),
            RationalFn::new(p("t^2+1"), p("t+3")).unwrap(),
            RationalFn::new(p("t^3+2"), p("t^2+4*t+1")).unwrap(),
        ];
        let versal = versal_curve(5).unwrap();
        let mut pullback_triples = 0;
        for theta in &thetas {
            let pullback = versal.make_pullback(theta).unwrap();
            for n in 1..=3u32 {
                let base_table = build_direct(&versal, n).unwrap();
                let derived =
                    derive_pullback(&base_table, &versal, theta, &pullback, n).unwrap();
                let direct = build_direct(&pullback, n).unwrap();
                assert_eq!(derived, direct, "pullback along {theta} level {n}");
                pullback_triples += 1;
            }
        }
        assert!(pullback_triples >= 10, "only {pullback_triples} pullback triples");
    });
}

#[test]
fn criterion_08_consistency_suite() {
    criterion(8, "consistency_suite", || {
        // Construction already enforces the rest of the suite on every one of
        // these curves: the logarithmic recursion's exact divisibility, the
        // Hasse bound on every table entry, and (verify being on in all the
        // shared sweeps) the independently counted level-(h+1) coefficient
        // against the value the functional equation predicts. What remains
        // checkable from the finished polynomials is checked here.
        fn check(l: &LPolynomial, label: &str) {
            let n_deg = l.degree();
            let eps = BigInt::from(l.sign());
            for n in 0..=n_deg / 2 {
                let want = &eps * qpow(l.q(), n_deg - 2 * n) * l.coeff(n);
                assert_eq!(
                    *l.coeff(n_deg - n),
                    want,
                    "{label}: functional equation at n = {n}"
                );
            }
            let parity = if l.rank().is_multiple_of(2) { 1 } else { -1 };
            assert_eq!(parity, i32::from(l.sign()), "{label}: rank parity");
            assert_eq!(analytic_rank(l), l.rank(), "{label}: rank recount");
        }

        let opts = ComputeOpts {
            verify: true,
            strategy: TableStrategy::Direct,
        };
        let mut curves = 0u64;
        for id in X_CURVES {
            for q in [5u64, 7] {
                let l = compute_l(&named_curve(id, q).unwrap(), store(), &opts).unwrap();
                check(&l, &format!("{}/F_{q}", id.name()));
                curves += 1;
            }
        }
        for q in [5u64, 7, 11] {
            let l = compute_l(&versal_curve(q).unwrap(), store(), &opts).unwrap();
            check(&l, &format!("versal/F_{q}"));
            curves += 1;
        }
        for id in X_CURVES {
            for rec in family_report(id, 5, 5).records() {
                check(&rec.l, &format!("{}/F_5 twist {}", id.name(), rec.f));
                curves += 1;
            }
        }
        for rec in family_report(CurveId::X222, 7, 3).records() {
            check(&rec.l, &format!("X222/F_7 twist {}", rec.f));
            curves += 1;
        }
        // 4 x 2171 sweep members at q = 5, 263 at q = 7, and the 11 singles.
        assert_eq!(curves, 4 * 2171 + 263 + 11);
    });
}

#[test]
fn criterion_09_character_sums() {
    criterion(9, "character_sums", || {
        for id in X_CURVES {
            for q in [5u64, 7] {
                let spec = FamilySpec::new(named_curve(id, q).unwrap(), 4).unwrap();
                assert_eq!(
                    *spec.n_mult(),
                    poly_from_str(q, "t-1").unwrap(),
                    "{} over F_{q}: multiplicative conductor",
                    id.name()
                );
                let r = sign_stats(&spec, 4).unwrap();
                let es: Vec<usize> = r.b_values.iter().map(|&(e, _)| e).collect();
                assert_eq!(es, vec![1, 2, 3, 4], "{} over F_{q}", id.name());
                for &(e, b) in &r.b_values {
                    assert_eq!(b, 0, "{} over F_{q}: B_{e}", id.name());
                }
            }
        }
    });
}

#[test]
fn criterion_10_sign_twist_law() {
    criterion(10, "sign_twist_law", || {
        for id in X_CURVES {
            let spec = FamilySpec::new(named_curve(id, 5).unwrap(), 4).unwrap();
            let eps_base = i64::from(spec.base().global_sign(spec.info()).unwrap());
            for d in 1..=4 {
                let r = sign_stats(&spec, d).unwrap();
                assert!(r.constancy, "{} d={d}: eps_d not constant", id.name());
                assert_eq!(
                    r.sum_sign,
                    i64::from(r.eps_d) * eps_base * r.sum_jacobi,
                    "{} d={d}: exact mean sign identity",
                    id.name()
                );
            }
        }
    });
}

#[test]
#[ignore = "slow: builds trace tables up to level 7 (run with --ignored)"]
fn criterion_11_rank_five_twist() {
    criterion(11, "rank_five_twist", || {
        let base = named_curve(CurveId::X222, 5).unwrap();
        let f = Poly::from_signed(5, &[1, 2, 1, 4, 4, 1, 2, 1]);
        let twisted = base.make_twist(&f).unwrap();
        let opts = ComputeOpts {
            verify: false,
            strategy: TableStrategy::TwistOf { base: &base, f: &f },
        };
        let l = compute_l(&twisted, store(), &opts).unwrap();
        assert_eq!(l.degree(), 15);
        assert_eq!(l.sign(), -1);
        assert_eq!(l.rank(), 5);
    });
}
