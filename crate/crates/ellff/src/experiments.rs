//! Quadratic-twist family sweeps: rank statistics and sign statistics.
//!
//! For a base curve E over F_q(t) with finite discriminant radical R, the
//! twist family of degree d is
//!
//!   F_d = { f monic, deg f = d, f squarefree, gcd(f, R) = 1 },
//!
//! and F*_D is the union of the F_d with d <= D. Every E_f has its trace
//! tables derived from the base tables in one cheap pass, so a sweep over
//! thousands of twists costs a handful of base table builds plus a small
//! multiple of q^n work per twist.
//!
//! Reported statistics:
//!
//! * the average analytic rank mu(E, D) = sum_{f in F*_D} rank(E_f) / #F*_D,
//!   kept as an exact rational and rendered to three decimals;
//! * rank histograms per degree d;
//! * sign statistics: with N the product of the finite multiplicative places
//!   of E, the twist signs obey eps(E_f) = eps_d * eps(E) * (f/N) for a
//!   constant eps_d depending only on d. We infer eps_d from the first member
//!   of F_d, verify constancy over the whole family, and check the complete
//!   character sums B_e = sum_{f monic, deg f = e} (f/N), which vanish for
//!   every e >= deg N — the cancellation that drives average twist signs, and
//!   with them the rank parities, toward equidistribution.

use crate::curve::{CurveModel, ReductionInfo};
use crate::error::{Error, Result};
use crate::lfunction::{compute_l_with, LPolynomial};
use crate::poly::{enumerate_monic, jacobi_symbol, Poly, RationalFn};
use crate::tables::{cache_get_or_build, derive_twist_with_model, CacheStore, TableStrategy};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

/// The built-in curves: four with trivial L-function whose twist families the
/// experiments sweep, plus the versal curve with j-invariant t.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CurveId {
    X222,
    X211,
    X321,
    X431,
    Versal,
}

impl CurveId {
    pub const ALL: [CurveId; 5] = [
        CurveId::X222,
        CurveId::X211,
        CurveId::X321,
        CurveId::X431,
        CurveId::Versal,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CurveId::X222 => "X222",
            CurveId::X211 => "X211",
            CurveId::X321 => "X321",
            CurveId::X431 => "X431",
            CurveId::Versal => "VERSAL",
        }
    }

    pub fn parse(s: &str) -> Option<CurveId> {
        match s.to_ascii_uppercase().as_str() {
            "X222" => Some(CurveId::X222),
            "X211" => Some(CurveId::X211),
            "X321" => Some(CurveId::X321),
            "X431" => Some(CurveId::X431),
            "VERSAL" => Some(CurveId::Versal),
            _ => None,
        }
    }
}

/// One of the named models over F_q. The X-curves all have discriminant
/// supported on {t, t-1, infinity} with trivial L-function; the digits of the
/// name give the degrees at t, t-1 (both times two for the additive place)
/// ... more precisely they label the Kodaira data the models were chosen for:
/// X_222 has I_2* at t and I_2 at t-1 and infinity, X_211 has II* at t and
/// I_1 at t-1 and infinity, X_321 has III* at t, I_2 at infinity and I_1 at
/// t-1, and X_431 has IV* at t, I_3 at infinity and I_1 at t-1.
pub fn named_curve(id: CurveId, q: u64) -> Result<CurveModel> {
    let (a, b) = match id {
        // y^2 = x^3 - 27 t^2 (t^2 - t + 1) x + 27 t^3 (2t^3 - 3t^2 - 3t + 2)
        CurveId::X222 => (
            vec![0, 0, -27, 27, -27],
            vec![0, 0, 0, 54, -81, -81, 54],
        ),
        // y^2 = x^3 - 27 t^4 x + 54 t^5 (t - 2)
        CurveId::X211 => (vec![0, 0, 0, 0, -27], vec![0, 0, 0, 0, 0, -108, 54]),
        // y^2 = x^3 + 108 t^3 (3 - 4t) x + 432 t^5 (8t - 9)
        CurveId::X321 => (
            vec![0, 0, 0, 324, -432],
            vec![0, 0, 0, 0, 0, -3888, 3456],
        ),
        // y^2 = x^3 + 3 t^3 (8 - 9t) x + 2 t^4 (27t^2 - 36t + 8)
        CurveId::X431 => (vec![0, 0, 0, 24, -27], vec![0, 0, 0, 0, 16, -72, 54]),
        CurveId::Versal => return crate::curve::versal_curve(q),
    };
    crate::curve::make_curve(
        RationalFn::from_poly(Poly::from_signed(q, &a)),
        RationalFn::from_poly(Poly::from_signed(q, &b)),
    )
}

/// A twist family: the base curve, its reduction data, the finite radical R
/// the twists must avoid, the multiplicative conductor N driving the sign
/// identity, and the sweep bound d_max.
pub struct FamilySpec {
    base: CurveModel,
    info: ReductionInfo,
    radical: Poly,
    n_mult: Poly,
    n_mult_factors: Vec<(Poly, usize)>,
    support: Vec<Poly>,
    d_max: usize,
}

impl FamilySpec {
    pub fn new(base: CurveModel, d_max: usize) -> Result<FamilySpec> {
        let info = base.reduction_info()?;
        let radical = info.finite_radical();
        let n_mult = info.multiplicative_conductor();
        let n_mult_factors = n_mult.factor()?;
        // The radical is already squarefree, so its factors are the support.
        let support: Vec<Poly> = radical.factor()?.into_iter().map(|(pi, _)| pi).collect();
        Ok(FamilySpec {
            base,
            info,
            radical,
            n_mult,
            n_mult_factors,
            support,
            d_max,
        })
    }

    pub fn base(&self) -> &CurveModel {
        &self.base
    }
    pub fn info(&self) -> &ReductionInfo {
        &self.info
    }
    /// Monic squarefree product of the finite bad places.
    pub fn radical(&self) -> &Poly {
        &self.radical
    }
    /// Product N of the finite multiplicative places.
    pub fn n_mult(&self) -> &Poly {
        &self.n_mult
    }
    pub fn d_max(&self) -> usize {
        self.d_max
    }

    /// Support of the twisted curve's discriminant: the base support plus the
    /// irreducible factors of f.
    fn twist_support(&self, f: &Poly) -> Result<Vec<Poly>> {
        let mut support = self.support.clone();
        for (pi, _) in f.factor()? {
            support.push(pi);
        }
        Ok(support)
    }

    /// Twisted model, its reduction data, and its sign, without any tables.
    fn prepare_twist(&self, f: &Poly) -> Result<(CurveModel, ReductionInfo)> {
        let model = self.base.make_twist(f)?;
        let info = model.reduction_info_with_support(&self.twist_support(f)?)?;
        Ok((model, info))
    }
}

/// All of F_d in enumeration order: monic squarefree degree-d polynomials
/// prime to the family radical.
pub fn enumerate_family(spec: &FamilySpec, d: usize) -> Result<Vec<Poly>> {
    let mut out = vec![];
    for f in enumerate_monic(spec.base.q(), d)? {
        if f.gcd(&spec.radical).is_constant() && f.is_squarefree()? {
            out.push(f);
        }
    }
    Ok(out)
}

/// Options for `run_family`.
#[derive(Clone, Copy, Debug, Default)]
pub struct FamilyOpts {
    /// Run the extra-level functional-equation verification on every twist.
    pub verify: bool,
}

/// One computed twist: the polynomial f and the L-function of E_f.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistRecord {
    pub d: usize,
    pub f: Poly,
    pub l: LPolynomial,
}

/// Per-degree tallies of one sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeStats {
    pub d: usize,
    /// #F_d.
    pub count: usize,
    /// histogram[r] = number of f in F_d with rank(E_f) = r.
    pub histogram: Vec<u64>,
    /// Sum of rank(E_f) over F_d.
    pub sum_rank: u64,
}

/// The results of a family sweep: per-degree statistics plus every twist's
/// L-function, in enumeration order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankReport {
    per_d: Vec<DegreeStats>,
    records: Vec<TwistRecord>,
}

impl RankReport {
    pub fn per_degree(&self) -> &[DegreeStats] {
        &self.per_d
    }

    pub fn records(&self) -> &[TwistRecord] {
        &self.records
    }

    /// (#F*_D, sum of ranks over F*_D).
    pub fn cumulative(&self, d_upto: usize) -> (u64, u64) {
        self.per_d
            .iter()
            .filter(|s| s.d <= d_upto)
            .fold((0, 0), |(c, r), s| (c + s.count as u64, r + s.sum_rank))
    }

    /// mu(E, D) as the exact rational (rank sum, family size).
    pub fn mu_rational(&self, d_upto: usize) -> (u64, u64) {
        let (count, sum) = self.cumulative(d_upto);
        (sum, count)
    }

    /// mu(E, D) to three decimals, rounding half away from zero.
    pub fn mu_string(&self, d_upto: usize) -> String {
        let (sum, count) = self.mu_rational(d_upto);
        decimal_ratio(sum as i64, count, 3)
    }

    /// Cumulative rank histogram over F*_D, ranks 5 and above bucketed last.
    pub fn cumulative_histogram(&self, d_upto: usize) -> [u64; 6] {
        let mut out = [0u64; 6];
        for s in self.per_d.iter().filter(|s| s.d <= d_upto) {
            for (r, &n) in s.histogram.iter().enumerate() {
                out[r.min(5)] += n;
            }
        }
        out
    }
}

/// Sweep the whole family F_1..F_{d_max}: every twist's L-function via the
/// derived-table fast path, tallied into per-degree and cumulative rank
/// statistics. Any single consistency failure aborts the sweep.
pub fn run_family(spec: &FamilySpec, store: &CacheStore, opts: &FamilyOpts) -> Result<RankReport> {
    let mut base_tables = Vec::new();
    let mut per_d = Vec::with_capacity(spec.d_max);
    let mut records = Vec::new();
    for d in 1..=spec.d_max {
        let family = enumerate_family(spec, d)?;
        let mut stats = DegreeStats {
            d,
            count: family.len(),
            histogram: vec![],
            sum_rank: 0,
        };
        if family.is_empty() {
            per_d.push(stats);
            continue;
        }
        let prepared: Vec<(Poly, CurveModel, ReductionInfo)> = family
            .into_par_iter()
            .map(|f| {
                let (model, info) = spec.prepare_twist(&f)?;
                Ok((f, model, info))
            })
            .collect::<Result<_>>()?;
        // Within one degree every twist has the same L-degree (the finite bad
        // locus grows by exactly the roots of f, and the behavior at infinity
        // depends only on the parity of d), so one member fixes the levels.
        let n_deg = prepared[0].2.l_degree()?;
        let levels = n_deg / 2 + usize::from(opts.verify);
        while base_tables.len() < levels {
            let n = base_tables.len() as u32 + 1;
            base_tables.push(cache_get_or_build(
                store,
                &spec.base,
                n,
                &TableStrategy::Direct,
            )?);
        }
        let computed: Vec<TwistRecord> = prepared
            .into_par_iter()
            .map(|(f, model, info)| {
                let l = compute_l_with(&model, &info, opts.verify, |n| {
                    let base = base_tables.get(n as usize - 1).ok_or_else(|| {
                        Error::Consistency(format!(
                            "degree-{d} twist needs level {n}, which was not prebuilt"
                        ))
                    })?;
                    derive_twist_with_model(base, &spec.base, &f, &model)
                })?;
                Ok(TwistRecord { d, f, l })
            })
            .collect::<Result<_>>()?;
        for r in &computed {
            let rank = r.l.rank() as usize;
            if stats.histogram.len() <= rank {
                stats.histogram.resize(rank + 1, 0);
            }
            stats.histogram[rank] += 1;
            stats.sum_rank += rank as u64;
        }
        records.extend(computed);
        per_d.push(stats);
    }
    Ok(RankReport { per_d, records })
}

/// Sign statistics of one F_d, no L-functions involved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignReport {
    pub d: usize,
    /// #F_d.
    pub count: usize,
    /// Sum of eps(E_f) over F_d.
    pub sum_sign: i64,
    /// Sum of (f/N) over F_d.
    pub sum_jacobi: i64,
    /// The degree-d sign constant inferred from the first family member.
    pub eps_d: i8,
    /// Whether eps(E_f) = eps_d * eps(E) * (f/N) held for every f in F_d.
    pub constancy: bool,
    /// Complete character sums (e, B_e) for e = deg N ..= d.
    pub b_values: Vec<(usize, i64)>,
}

impl SignReport {
    /// All complete character sums vanished, as the theory demands.
    pub fn b_checks_pass(&self) -> bool {
        self.b_values.iter().all(|&(_, v)| v == 0)
    }
}

/// Twist signs over F_d: eps(E_f) for every member via the root-number
/// product, the inferred eps_d with its constancy check, the family average
/// of the Jacobi symbol (f/N), and the complete character sums B_e.
pub fn sign_stats(spec: &FamilySpec, d: usize) -> Result<SignReport> {
    let eps_base = spec.base.global_sign(&spec.info)?;
    let family = enumerate_family(spec, d)?;
    let signs: Vec<(i8, i8)> = family
        .par_iter()
        .map(|f| {
            let (model, info) = spec.prepare_twist(f)?;
            let sign = model.global_sign(&info)?;
            let jac = jacobi_symbol(f, &spec.n_mult_factors)?;
            Ok((sign, jac))
        })
        .collect::<Result<_>>()?;
    let (eps_d, constancy) = match signs.first() {
        Some(&(s0, j0)) => {
            let eps_d = s0 * eps_base * j0;
            let ok = signs.iter().all(|&(s, j)| s == eps_d * eps_base * j);
            (eps_d, ok)
        }
        None => (1, true),
    };
    let deg_n = spec.n_mult.deg().unwrap_or(0);
    let mut b_values = vec![];
    if deg_n >= 1 {
        for e in deg_n..=d {
            let mut sum = 0i64;
            for f in enumerate_monic(spec.base.q(), e)? {
                sum += jacobi_symbol(&f, &spec.n_mult_factors)? as i64;
            }
            b_values.push((e, sum));
        }
    }
    Ok(SignReport {
        d,
        count: signs.len(),
        sum_sign: signs.iter().map(|&(s, _)| s as i64).sum(),
        sum_jacobi: signs.iter().map(|&(_, j)| j as i64).sum(),
        eps_d,
        constancy,
        b_values,
    })
}

/// num/den to `places` decimals, rounding half away from zero. den = 0
/// renders as zero (empty families).
fn decimal_ratio(num: i64, den: u64, places: u32) -> String {
    let width = places as usize;
    if den == 0 {
        return format!("0.{:0width$}", 0);
    }
    let scale = 10i128.pow(places);
    let den = den as i128;
    let scaled = ((num as i128).abs() * scale + den / 2) / den;
    let sign = if num < 0 && scaled != 0 { "-" } else { "" };
    format!("{sign}{}.{:0width$}", scaled / scale, scaled % scale)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|source| Error::IoPath {
        path: path.to_path_buf(),
        source,
    })
}

fn ensure_dir(path: &Path) -> Result<()> {
    fs::create_dir_all(path).map_err(|source| Error::IoPath {
        path: path.to_path_buf(),
        source,
    })
}

/// Write `twists.csv` (one row per twist) and `summary.csv` (one cumulative
/// row per D) under out_dir; identical reports re-emit byte-identical files.
pub fn emit(report: &RankReport, out_dir: &Path) -> Result<Vec<PathBuf>> {
    ensure_dir(out_dir)?;
    let twists_path = out_dir.join("twists.csv");
    let mut text = String::from("d,f,degL,sign,rank,coeffs\n");
    for r in report.records() {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{}",
            r.d,
            r.f,
            r.l.degree(),
            r.l.sign(),
            r.l.rank(),
            r.l.coeff_list_string()
        );
    }
    write_file(&twists_path, &text)?;

    let summary_path = out_dir.join("summary.csv");
    let mut text = String::from(
        "D,count_cum,sum_rank_cum,mu,frac_r0,frac_r1,frac_r2,frac_r3,frac_r4,frac_r5plus\n",
    );
    for s in report.per_degree() {
        let (count, sum) = report.cumulative(s.d);
        let hist = report.cumulative_histogram(s.d);
        let _ = write!(text, "{},{count},{sum},{}", s.d, report.mu_string(s.d));
        for h in hist {
            let _ = write!(text, ",{}", decimal_ratio(h as i64, count, 6));
        }
        text.push('\n');
    }
    write_file(&summary_path, &text)?;
    Ok(vec![twists_path, summary_path])
}

/// Write `signs.csv`, one row per report.
pub fn emit_signs(reports: &[SignReport], out_dir: &Path) -> Result<PathBuf> {
    ensure_dir(out_dir)?;
    let path = out_dir.join("signs.csv");
    let mut text = String::from("d,count,avg_sign,avg_jacobi,eps_d,constancy,B_checks_pass\n");
    for r in reports {
        let _ = writeln!(
            text,
            "{},{},{},{},{},{},{}",
            r.d,
            r.count,
            decimal_ratio(r.sum_sign, r.count as u64, 6),
            decimal_ratio(r.sum_jacobi, r.count as u64, 6),
            r.eps_d,
            r.constancy,
            r.b_checks_pass()
        );
    }
    write_file(&path, &text)?;
    Ok(path)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{KodairaType, Place, ReductionType};
    use crate::lfunction::{compute_l, ComputeOpts};
    use crate::poly::poly_from_str;

    fn finite(q: u64, s: &str) -> Place {
        Place::Finite(poly_from_str(q, s).unwrap())
    }

    #[test]
    fn named_curve_reduction_shapes() {
        // X_222/F_5: I_2* at t, I_2 at t-1 and at infinity, both split.
        let c = named_curve(CurveId::X222, 5).unwrap();
        let info = c.reduction_info().unwrap();
        assert_eq!(
            info.type_at(&finite(5, "t")),
            ReductionType::Additive(KodairaType::IStar(2))
        );
        assert_eq!(
            info.type_at(&finite(5, "t+4")),
            ReductionType::Multiplicative { split: true, n: 2 }
        );
        assert_eq!(
            info.type_at(&Place::Infinity),
            ReductionType::Multiplicative { split: true, n: 2 }
        );
        // X_211: II* at t, I_1 at t-1 and infinity.
        let c = named_curve(CurveId::X211, 5).unwrap();
        let info = c.reduction_info().unwrap();
        assert_eq!(
            info.type_at(&finite(5, "t")),
            ReductionType::Additive(KodairaType::IIStar)
        );
        assert!(matches!(
            info.type_at(&Place::Infinity),
            ReductionType::Multiplicative { n: 1, .. }
        ));
        // X_321: III* at t, I_2 at infinity. X_431: IV* at t, I_3 at infinity.
        let c = named_curve(CurveId::X321, 5).unwrap();
        let info = c.reduction_info().unwrap();
        assert_eq!(
            info.type_at(&finite(5, "t")),
            ReductionType::Additive(KodairaType::IIIStar)
        );
        assert!(matches!(
            info.type_at(&Place::Infinity),
            ReductionType::Multiplicative { n: 2, split: true }
        ));
        let c = named_curve(CurveId::X431, 5).unwrap();
        let info = c.reduction_info().unwrap();
        assert_eq!(
            info.type_at(&finite(5, "t")),
            ReductionType::Additive(KodairaType::IVStar)
        );
        assert!(matches!(
            info.type_at(&Place::Infinity),
            ReductionType::Multiplicative { n: 3, split: true }
        ));
    }

    #[test]
    fn named_curves_have_trivial_l() {
        let dir = tempfile::tempdir().unwrap();
        let store = CacheStore::new(dir.path());
        for q in [5, 7] {
            for id in [CurveId::X222, CurveId::X211, CurveId::X321, CurveId::X431] {
                let c = named_curve(id, q).unwrap();
                let l = compute_l(&c, &store, &ComputeOpts::default()).unwrap();
                assert_eq!(l.to_string(), "1", "{} over F_{q}", id.name());
                assert_eq!(l.sign(), 1);
                assert_eq!(l.rank(), 0);
            }
        }
    }

    #[test]
    fn family_enumeration_counts() {
        let spec = FamilySpec::new(named_curve(CurveId::X222, 5).unwrap(), 2).unwrap();
        let f1 = enumerate_family(&spec, 1).unwrap();
        let names: Vec<String> = f1.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, ["t+1", "t+2", "t+3"]);
        assert_eq!(enumerate_family(&spec, 2).unwrap().len(), 13);
        // Same radical t(t-1) for every X curve, hence the same families.
        let spec211 = FamilySpec::new(named_curve(CurveId::X211, 5).unwrap(), 2).unwrap();
        assert_eq!(spec211.radical(), spec.radical());
        // q = 7 counts.
        let spec7 = FamilySpec::new(named_curve(CurveId::X222, 7).unwrap(), 2).unwrap();
        assert_eq!(enumerate_family(&spec7, 1).unwrap().len(), 5);
        assert_eq!(enumerate_family(&spec7, 2).unwrap().len(), 31);
    }

    #[test]
    fn x222_family_sweep_degree_two() {
        let dir = tempfile::tempdir().unwrap();
        let store = CacheStore::new(dir.path());
        let spec = FamilySpec::new(named_curve(CurveId::X222, 5).unwrap(), 2).unwrap();
        let report = run_family(&spec, &store, &FamilyOpts::default()).unwrap();
        let d1 = &report.per_degree()[0];
        assert_eq!((d1.count, d1.sum_rank), (3, 3));
        assert_eq!(d1.histogram, [1, 1, 1]);
        let d2 = &report.per_degree()[1];
        assert_eq!((d2.count, d2.sum_rank), (13, 8));
        assert_eq!(d2.histogram, [5, 8]);
        assert_eq!(report.mu_string(1), "1.000");
        assert_eq!(report.mu_string(2), "0.688");
        assert_eq!(report.cumulative_histogram(2), [6, 9, 1, 0, 0, 0]);
        assert_eq!(report.records().len(), 16);
        // Verification changes nothing but the work done.
        let verified = run_family(&spec, &store, &FamilyOpts { verify: true }).unwrap();
        assert_eq!(verified, report);
    }

    #[test]
    fn sign_statistics_obey_the_product_rule() {
        let spec = FamilySpec::new(named_curve(CurveId::X222, 5).unwrap(), 3).unwrap();
        assert_eq!(spec.n_mult().to_string(), "t+4");
        for d in 1..=3 {
            let s = sign_stats(&spec, d).unwrap();
            assert!(s.constancy, "eps_d not constant at d = {d}");
            assert!(s.b_checks_pass(), "B_e nonzero at d = {d}: {:?}", s.b_values);
            // Averages: sum eps(E_f) = eps_d * eps(E) * sum (f/N), exactly,
            // and eps(E) = +1 for this base curve.
            assert_eq!(s.sum_sign, s.eps_d as i64 * s.sum_jacobi, "d = {d}");
            assert_eq!(s.b_values.len(), d);
        }
    }

    #[test]
    fn complete_character_sums_vanish() {
        // B_e for N = t - 1 over F_5 and F_7: each value of f(1) appears
        // q^{e-1} times across the monic degree-e polynomials, so the sum
        // collapses to q^{e-1} * sum_{alpha} chi(alpha) = 0.
        for q in [5u64, 7] {
            let spec = FamilySpec::new(named_curve(CurveId::X222, q).unwrap(), 4).unwrap();
            let s = sign_stats(&spec, 4).unwrap();
            assert_eq!(s.b_values.iter().map(|&(e, _)| e).collect::<Vec<_>>(), [1, 2, 3, 4]);
            assert!(s.b_checks_pass());
        }
    }

    #[test]
    fn csv_emission_is_deterministic() {
        let dir = tempfile::tempdir().unwrap();
        let store = CacheStore::new(dir.path().join("cache"));
        let out = dir.path().join("out");
        let spec = FamilySpec::new(named_curve(CurveId::X222, 5).unwrap(), 2).unwrap();
        let report = run_family(&spec, &store, &FamilyOpts::default()).unwrap();
        let files = emit(&report, &out).unwrap();
        assert_eq!(files.len(), 2);
        let twists = fs::read_to_string(&files[0]).unwrap();
        let summary = fs::read_to_string(&files[1]).unwrap();
        // 16 twists plus header; 2 summary rows plus header.
        assert_eq!(twists.lines().count(), 17);
        assert_eq!(summary.lines().count(), 3);
        assert!(twists.starts_with("d,f,degL,sign,rank,coeffs\n1,t+1,3,"));
        let d2_row = summary.lines().nth(2).unwrap();
        assert!(d2_row.starts_with("2,16,11,0.688,"), "row was {d2_row}");
        let signs = [sign_stats(&spec, 1).unwrap(), sign_stats(&spec, 2).unwrap()];
        let signs_path = emit_signs(&signs, &out).unwrap();
        let signs_text = fs::read_to_string(&signs_path).unwrap();
        assert_eq!(signs_text.lines().count(), 3);
        // Re-emission is byte-identical.
        let again = emit(&report, &out).unwrap();
        assert_eq!(fs::read_to_string(&again[0]).unwrap(), twists);
        assert_eq!(fs::read_to_string(&again[1]).unwrap(), summary);
    }

    #[test]
    fn alternative_nodal_model_matches_x222() {
        // y^2 = x(x + t)(x + t^2) = x^3 + (t + t^2) x^2 + t^3 x. Completing
        // the cube with x -> x - (t + t^2)/3 leaves a = c_1 - c_2^2/3 and
        // b = 2 c_2^3/27 - c_1 c_2/3, which minimizes to a unit-isomorphic
        // copy of the X_222 model.
        let q = 5;
        let c2 = Poly::from_signed(q, &[0, 1, 1]);
        let c1 = Poly::from_signed(q, &[0, 0, 0, 1]);
        let inv3 = 2; // 3 * 2 = 6 = 1 mod 5
        let inv27 = 3; // 27 = 2, 2 * 3 = 6 = 1 mod 5
        let a = c1.sub(&c2.pow(2).mul_scalar(inv3));
        let b = c2
            .pow(3)
            .mul_scalar(2 * inv27 % q)
            .sub(&c1.mul(&c2).mul_scalar(inv3));
        let alt = crate::curve::make_curve(RationalFn::from_poly(a), RationalFn::from_poly(b))
            .unwrap();
        let x222 = named_curve(CurveId::X222, q).unwrap();
        assert!(x222.is_isomorphic(&alt));
        // Same reduction data either way.
        let info = alt.reduction_info().unwrap();
        assert_eq!(info.l_degree().unwrap(), 0);
        assert_eq!(
            info.type_at(&finite(5, "t")),
            ReductionType::Additive(KodairaType::IStar(2))
        );
    }

    #[test]
    fn decimal_rendering_rounds_half_away() {
        assert_eq!(decimal_ratio(11, 16, 3), "0.688");
        assert_eq!(decimal_ratio(3, 3, 3), "1.000");
        assert_eq!(decimal_ratio(1, 2, 3), "0.500");
        assert_eq!(decimal_ratio(1, 800, 3), "0.001"); // 0.00125
        assert_eq!(decimal_ratio(-1, 2, 3), "-0.500");
        assert_eq!(decimal_ratio(-5, 4, 2), "-1.25");
        assert_eq!(decimal_ratio(1, 16, 2), "0.06"); // 0.0625
        assert_eq!(decimal_ratio(3, 16, 2), "0.19"); // 0.1875
        assert_eq!(decimal_ratio(0, 0, 3), "0.000");
        assert_eq!(decimal_ratio(30, 71, 6), "0.422535");
        assert_eq!(decimal_ratio(37, 71, 6), "0.521127");
        assert_eq!(decimal_ratio(4, 71, 6), "0.056338");
    }
}
