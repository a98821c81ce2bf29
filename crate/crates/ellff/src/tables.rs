//! Per-level trace tables: the pointwise Euler-factor data of a curve.
//!
//! The table at level n records, for every t0 in P^1(F_{q^n}), the local
//! contribution a_{t0} of the fiber of the minimal model over t0:
//!
//! * good fiber: the Frobenius trace q^n + 1 - #E_{t0}(F_{q^n}), counted as
//!   -sum_x chi(x^3 + a(t0) x + b(t0)) over the quadratic character chi of
//!   F_{q^n};
//! * nodal fiber: +1 when the node is split over F_{q^n}, -1 when nonsplit
//!   (equivalently chi(6 b(t0)));
//! * cuspidal fiber: 0.
//!
//! Summing a level's entries gives the power-sum b_n of the L-function's
//! logarithmic derivative, so tables are the only expensive input to the
//! whole pipeline. Building one directly costs about q^{2n} character
//! evaluations; the twist and pullback derivations below replace that with a
//! single pass over the base curve's table, which is what makes large
//! quadratic-twist sweeps tractable.
//!
//! Tables persist in a content-keyed on-disk cache (one text file per curve
//! and level, written atomically) so repeated runs and derived-curve
//! computations share work.

use crate::curve::{chi_q, CurveModel};
use crate::error::{Error, Result};
use crate::finite_field::{make_field, FieldCtx};
use crate::poly::{Poly, RationalFn};
use rayon::prelude::*;
use sha2::{Digest, Sha256};
use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex, OnceLock};

/// Header line of the table file format.
pub const TABLE_FORMAT: &str = "ELLFF-TABLE v1";

/// Largest polynomial degree served by the precomputed power rows; higher
/// degrees fall back to per-point Horner evaluation.
const MAX_POW_ROW: usize = 12;

/// Reduction status of one table entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryStatus {
    Good,
    Mult,
    Add,
}

impl EntryStatus {
    fn as_char(self) -> char {
        match self {
            EntryStatus::Good => 'G',
            EntryStatus::Mult => 'M',
            EntryStatus::Add => 'A',
        }
    }

    fn from_str(s: &str) -> Option<EntryStatus> {
        match s {
            "G" => Some(EntryStatus::Good),
            "M" => Some(EntryStatus::Mult),
            "A" => Some(EntryStatus::Add),
            _ => None,
        }
    }
}

/// The level-n contribution table of one curve: q^n finite entries in field
/// enumeration order plus the entry at infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceTable {
    q: u64,
    n: u32,
    curve_key: String,
    modulus: Vec<u64>,
    statuses: Vec<EntryStatus>,
    values: Vec<i64>,
}

impl TraceTable {
    pub fn q(&self) -> u64 {
        self.q
    }
    pub fn n(&self) -> u32 {
        self.n
    }
    pub fn curve_key(&self) -> &str {
        &self.curve_key
    }
    /// Number of entries, q^n + 1.
    pub fn len(&self) -> usize {
        self.values.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn status(&self, i: usize) -> EntryStatus {
        self.statuses[i]
    }
    pub fn value(&self, i: usize) -> i64 {
        self.values[i]
    }
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// The flat sum of all entries: the power sum b_n.
    pub fn flat_sum(&self) -> i64 {
        self.values.iter().sum()
    }

    /// Well-formedness: entry count, Hasse bound on good entries, value
    /// ranges per status.
    fn validate(&self) -> Result<()> {
        let order = checked_order(self.q, self.n)?;
        if self.values.len() != order + 1 || self.statuses.len() != order + 1 {
            return Err(Error::Consistency(format!(
                "table q={} n={} has {} entries, expected {}",
                self.q,
                self.n,
                self.values.len(),
                order + 1
            )));
        }
        let hasse = 4 * (order as i128);
        for (i, (&s, &v)) in self.statuses.iter().zip(&self.values).enumerate() {
            let ok = match s {
                EntryStatus::Good => (v as i128) * (v as i128) <= hasse,
                EntryStatus::Mult => v == 1 || v == -1,
                EntryStatus::Add => v == 0,
            };
            if !ok {
                return Err(Error::Consistency(format!(
                    "table q={} n={} entry {} = ({}, {}) out of range",
                    self.q,
                    self.n,
                    i,
                    s.as_char(),
                    v
                )));
            }
        }
        Ok(())
    }

    /// Render as the v1 text format.
    pub fn serialize(&self) -> String {
        let mut out = String::with_capacity(16 * self.values.len() + 128);
        let _ = writeln!(out, "{TABLE_FORMAT}");
        let _ = writeln!(out, "q {}", self.q);
        let _ = writeln!(out, "n {}", self.n);
        let mods: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(out, "modulus {}", mods.join(" "));
        let _ = writeln!(out, "curve {}", self.curve_key);
        let _ = writeln!(out, "entries {}", self.values.len());
        for (i, (&s, &v)) in self.statuses.iter().zip(&self.values).enumerate() {
            let _ = writeln!(out, "{} {} {}", i, s.as_char(), v);
        }
        out.push_str("END\n");
        out
    }

    /// Parse the v1 text format. A recognizable header with a different
    /// version is a version mismatch; anything else malformed is corruption.
    pub fn parse(text: &str) -> Result<TraceTable> {
        let corrupt = |reason: &str| Error::CacheCorrupt {
            reason: reason.to_string(),
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| corrupt("empty file"))?;
        if header != TABLE_FORMAT {
            if header.starts_with("ELLFF-TABLE ") {
                return Err(Error::CacheVersionMismatch {
                    found: header.trim_start_matches("ELLFF-TABLE ").to_string(),
                });
            }
            return Err(corrupt("missing ELLFF-TABLE header"));
        }
        let mut field = |name: &str| -> Result<String> {
            let line = lines
                .next()
                .ok_or_else(|| corrupt(&format!("missing {name} line")))?;
            line.strip_prefix(name)
                .and_then(|rest| rest.strip_prefix(' '))
                .map(str::to_string)
                .ok_or_else(|| corrupt(&format!("bad {name} line")))
        };
        let q: u64 = field("q")?.parse().map_err(|_| corrupt("bad q"))?;
        let n: u32 = field("n")?.parse().map_err(|_| corrupt("bad n"))?;
        let modulus: Vec<u64> = field("modulus")?
            .split_whitespace()
            .map(|c| c.parse().map_err(|_| corrupt("bad modulus")))
            .collect::<Result<_>>()?;
        let curve_key = field("curve")?;
        let count: usize = field("entries")?.parse().map_err(|_| corrupt("bad entries"))?;
        let mut statuses = Vec::with_capacity(count);
        let mut values = Vec::with_capacity(count);
        for i in 0..count {
            let line = lines
                .next()
                .ok_or_else(|| corrupt(&format!("truncated at entry {i}")))?;
            let mut parts = line.split_whitespace();
            let idx: usize = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| corrupt(&format!("bad index at entry {i}")))?;
            if idx != i {
                return Err(corrupt(&format!("entry index {idx}, expected {i}")));
            }
            let status = parts
                .next()
                .and_then(EntryStatus::from_str)
                .ok_or_else(|| corrupt(&format!("bad status at entry {i}")))?;
            let value: i64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| corrupt(&format!("bad value at entry {i}")))?;
            if parts.next().is_some() {
                return Err(corrupt(&format!("trailing junk at entry {i}")));
            }
            statuses.push(status);
            values.push(value);
        }
        if lines.next() != Some("END") {
            return Err(corrupt("missing END line"));
        }
        let table = TraceTable {
            q,
            n,
            curve_key,
            modulus,
            statuses,
            values,
        };
        table
            .validate()
            .map_err(|e| corrupt(&format!("invalid entries: {e}")))?;
        Ok(table)
    }
}

fn checked_order(q: u64, n: u32) -> Result<usize> {
    let mut order: usize = 1;
    for _ in 0..n {
        order = order
            .checked_mul(q as usize)
            .ok_or_else(|| Error::FieldTooLarge(format!("q^n overflows at q={q}, n={n}")))?;
    }
    Ok(order)
}

// ---------------------------------------------------------------------------
// Level context: shared per-(q, n) lookup tables.
// ---------------------------------------------------------------------------

/// Precomputed data for one level: the extension field, the quadratic
/// character of every element, and flat coordinate rows of x^k for fast
/// polynomial evaluation at every point at once.
pub(crate) struct LevelCtx {
    pub field: FieldCtx,
    pub order: usize,
    nn: usize,
    p: u64,
    chi: Vec<i8>,
    rows: Vec<OnceLock<Vec<u64>>>,
}

impl LevelCtx {
    fn new(q: u64, n: u32) -> Result<LevelCtx> {
        let order = checked_order(q, n)?;
        let field = make_field(q, n as usize)?;
        let nn = field.degree();
        if order.checked_mul(nn).is_none_or(|c| c > 200_000_000) {
            return Err(Error::FieldTooLarge(format!(
                "level {n} over F_{q} needs more table memory than supported"
            )));
        }
        let p = field.p();
        // Digits row: coords of element i are the base-p digits of i.
        let mut digits = vec![0u64; order * nn];
        for i in 0..order {
            let mut k = i as u64;
            for j in 0..nn {
                digits[i * nn + j] = k % p;
                k /= p;
            }
        }
        // Quadratic character by marking squares: chi(y^2) = 1 for y != 0.
        let mut chi = vec![-1i8; order];
        chi[0] = 0;
        let mut sq = vec![0u64; nn];
        let mut tmp = vec![0u64; 2 * nn];
        for i in 1..order {
            let y = &digits[i * nn..(i + 1) * nn];
            field.mul_slices(y, y, &mut sq, &mut tmp);
            chi[field.index_of_slice(&sq) as usize] = 1;
        }
        let mut rows: Vec<OnceLock<Vec<u64>>> = Vec::with_capacity(MAX_POW_ROW + 1);
        for _ in 0..=MAX_POW_ROW {
            rows.push(OnceLock::new());
        }
        let mut ones = vec![0u64; order * nn];
        for i in 0..order {
            ones[i * nn] = 1;
        }
        rows[0].set(ones).unwrap();
        rows[1].set(digits).unwrap();
        Ok(LevelCtx {
            field,
            order,
            nn,
            p,
            chi,
            rows,
        })
    }

    /// Flat coordinates of x^k for every element x, built on first use.
    fn row(&self, k: usize) -> &[u64] {
        debug_assert!(k <= MAX_POW_ROW);
        self.rows[k].get_or_init(|| {
            let prev = self.row(k - 1);
            let digits = self.rows[1].get().unwrap();
            let mut out = vec![0u64; self.order * self.nn];
            let mut tmp = vec![0u64; 2 * self.nn];
            for i in 0..self.order {
                let lo = i * self.nn;
                let hi = lo + self.nn;
                self.field
                    .mul_slices(&prev[lo..hi], &digits[lo..hi], &mut out[lo..hi], &mut tmp);
            }
            out
        })
    }

    /// Evaluate a base-field polynomial at the element of the given index,
    /// writing the coordinates into `out`.
    pub fn eval_poly(&self, f: &Poly, index: usize, out: &mut [u64]) {
        let deg = match f.deg() {
            None => {
                out.fill(0);
                return;
            }
            Some(d) => d,
        };
        if deg > MAX_POW_ROW {
            let v = f.eval_embedded(&self.field, &self.field.elem_at(index as u64));
            out.copy_from_slice(v.coords());
            return;
        }
        // out[j] = sum_k f_k * (x^k)_j; terms stay far below u64 overflow.
        out.fill(0);
        for (k, &c) in f.coeffs().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let row = &self.row(k)[index * self.nn..(index + 1) * self.nn];
            for j in 0..self.nn {
                out[j] += c * row[j];
            }
        }
        for v in out.iter_mut() {
            *v %= self.p;
        }
    }

    /// Frobenius trace of y^2 = x^3 + a x + b over F_{q^n}:
    /// -sum_x chi(x^3 + a x + b).
    pub fn fiber_trace(&self, a: &[u64], b: &[u64]) -> i64 {
        let nn = self.nn;
        let p = self.p;
        let cubes = self.row(3);
        let digits = self.rows[1].get().unwrap();
        // a * x decomposes over the digit basis: a * x = sum_j d_j (a * t^j),
        // so precompute the n products a * t^j once per fiber.
        let mut basis = vec![0u64; nn * nn];
        basis[..nn].copy_from_slice(a);
        if nn > 1 {
            let mut t_coords = vec![0u64; nn];
            t_coords[1] = 1;
            let mut tmp = vec![0u64; 2 * nn];
            for j in 1..nn {
                let (prev, rest) = basis.split_at_mut(j * nn);
                self.field.mul_slices(
                    &prev[(j - 1) * nn..],
                    &t_coords,
                    &mut rest[..nn],
                    &mut tmp,
                );
            }
        }
        let mut sum = 0i64;
        let mut w = vec![0u64; nn];
        for i in 0..self.order {
            let base = i * nn;
            for j in 0..nn {
                w[j] = cubes[base + j] + b[j];
            }
            for (j, &d) in digits[base..base + nn].iter().enumerate() {
                if d != 0 {
                    let row = &basis[j * nn..(j + 1) * nn];
                    for k in 0..nn {
                        w[k] += d * row[k];
                    }
                }
            }
            // Coordinates are bounded by 2(p-1) + n(p-1)^2, far below u64.
            let mut idx = 0usize;
            for k in (0..nn).rev() {
                idx = idx * p as usize + (w[k] % p) as usize;
            }
            sum += self.chi[idx] as i64;
        }
        -sum
    }

    /// chi over F_{q^n} of a field element given by coordinates.
    pub fn chi_of(&self, coords: &[u64]) -> i8 {
        self.chi[self.field.index_of_slice(coords) as usize]
    }
}

/// Process-wide pool of level contexts, shared across curves.
type LevelPool = Mutex<HashMap<(u64, u32), Arc<LevelCtx>>>;

fn level_ctx(q: u64, n: u32) -> Result<Arc<LevelCtx>> {
    static POOL: OnceLock<LevelPool> = OnceLock::new();
    let pool = POOL.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(ctx) = pool.lock().unwrap().get(&(q, n)) {
        return Ok(ctx.clone());
    }
    // Build outside the lock: construction can take a moment at high levels.
    let ctx = Arc::new(LevelCtx::new(q, n)?);
    let mut guard = pool.lock().unwrap();
    Ok(guard.entry((q, n)).or_insert(ctx).clone())
}

// ---------------------------------------------------------------------------
// Direct build.
// ---------------------------------------------------------------------------

/// The entry of one finite point, classified from the minimal model.
fn finite_entry(ctx: &LevelCtx, curve: &CurveModel, index: usize) -> (EntryStatus, i64) {
    let nn = ctx.nn;
    let mut d = vec![0u64; nn];
    ctx.eval_poly(curve.delta(), index, &mut d);
    let mut b = vec![0u64; nn];
    ctx.eval_poly(curve.b(), index, &mut b);
    if d.iter().any(|&c| c != 0) {
        let mut a = vec![0u64; nn];
        ctx.eval_poly(curve.a(), index, &mut a);
        (EntryStatus::Good, ctx.fiber_trace(&a, &b))
    } else if b.iter().any(|&c| c != 0) {
        let mut six_b = b;
        for c in six_b.iter_mut() {
            *c = *c * 6 % ctx.p;
        }
        (EntryStatus::Mult, ctx.chi_of(&six_b) as i64)
    } else {
        (EntryStatus::Add, 0)
    }
}

/// The entry at infinity, read off the u-chart at u = 0.
fn infinity_entry(ctx: &LevelCtx, curve: &CurveModel) -> (EntryStatus, i64) {
    let q = curve.q();
    let n = ctx.field.degree() as u32;
    if curve.delta_inf().coeff(0) != 0 {
        let a = ctx.field.from_u64(curve.a_inf().coeff(0));
        let b = ctx.field.from_u64(curve.b_inf().coeff(0));
        (EntryStatus::Good, ctx.fiber_trace(a.coords(), b.coords()))
    } else if curve.b_inf().coeff(0) != 0 {
        let six_b = 6 * curve.b_inf().coeff(0) % q;
        // chi of a base-field unit in the extension: chi_q(c)^n.
        let chi = if n.is_multiple_of(2) { 1 } else { chi_q(q, six_b) };
        (EntryStatus::Mult, chi as i64)
    } else {
        (EntryStatus::Add, 0)
    }
}

/// Build the level-n table by direct point counting over P^1(F_{q^n}).
pub fn build_direct(curve: &CurveModel, n: u32) -> Result<TraceTable> {
    if n < 1 {
        return Err(Error::InvalidInput("table level must be >= 1".into()));
    }
    let ctx = level_ctx(curve.q(), n)?;
    let mut entries: Vec<(EntryStatus, i64)> = (0..ctx.order)
        .into_par_iter()
        .map(|i| finite_entry(&ctx, curve, i))
        .collect();
    entries.push(infinity_entry(&ctx, curve));
    let (statuses, values) = entries.into_iter().unzip();
    let table = TraceTable {
        q: curve.q(),
        n,
        curve_key: curve.curve_key(),
        modulus: ctx.field.modulus().to_vec(),
        statuses,
        values,
    };
    table.validate()?;
    Ok(table)
}

// ---------------------------------------------------------------------------
// Twist derivation.
// ---------------------------------------------------------------------------

fn check_base_table(base: &TraceTable, base_curve: &CurveModel) -> Result<()> {
    if base.q != base_curve.q() || base.curve_key != base_curve.curve_key() {
        return Err(Error::LevelMismatch {
            expected_q: base_curve.q(),
            expected_n: base.n,
        });
    }
    Ok(())
}

/// Derive the table of the quadratic twist by f from the base curve's table
/// at the same level: finite good/nodal entries pick up the factor
/// chi(f(t0)), points over roots of f become cuspidal, and the entry at
/// infinity is copied (even deg f) or recomputed from the twisted model's own
/// u-chart (odd deg f).
pub fn derive_twist(base: &TraceTable, base_curve: &CurveModel, f: &Poly) -> Result<TraceTable> {
    let twisted = base_curve.make_twist(f)?;
    derive_twist_with_model(base, base_curve, f, &twisted)
}

/// `derive_twist` with the twisted minimal model already in hand (family
/// sweeps construct it once and reuse it).
pub(crate) fn derive_twist_with_model(
    base: &TraceTable,
    base_curve: &CurveModel,
    f: &Poly,
    twisted: &CurveModel,
) -> Result<TraceTable> {
    check_base_table(base, base_curve)?;
    let unsupported = |why: &str| Error::TwistDerivationUnsupported(why.to_string());
    if f.is_zero() {
        return Err(Error::ZeroTwist);
    }
    if f.lc() != 1 {
        return Err(unsupported("twist factor must be monic"));
    }
    let deg_f = f.deg().unwrap_or(0);
    if deg_f > 0 {
        if !f.is_squarefree()? {
            return Err(unsupported("twist factor must be squarefree"));
        }
        if !f.gcd(base_curve.delta()).is_constant() {
            return Err(unsupported("twist factor shares a bad place with the base"));
        }
    }
    let ctx = level_ctx(base.q, base.n)?;
    let nn = ctx.nn;
    let mut statuses = Vec::with_capacity(base.values.len());
    let mut values = Vec::with_capacity(base.values.len());
    let mut fv = vec![0u64; nn];
    for i in 0..ctx.order {
        ctx.eval_poly(f, i, &mut fv);
        if fv.iter().all(|&c| c == 0) {
            statuses.push(EntryStatus::Add);
            values.push(0);
            continue;
        }
        match base.statuses[i] {
            EntryStatus::Add => {
                statuses.push(EntryStatus::Add);
                values.push(0);
            }
            s => {
                statuses.push(s);
                values.push(ctx.chi_of(&fv) as i64 * base.values[i]);
            }
        }
    }
    if deg_f.is_multiple_of(2) {
        statuses.push(base.statuses[ctx.order]);
        values.push(base.values[ctx.order]);
    } else {
        let (s, v) = infinity_entry(&ctx, twisted);
        statuses.push(s);
        values.push(v);
    }
    let table = TraceTable {
        q: base.q,
        n: base.n,
        curve_key: twisted.curve_key(),
        modulus: base.modulus.clone(),
        statuses,
        values,
    };
    table.validate()?;
    Ok(table)
}

// ---------------------------------------------------------------------------
// Pullback derivation.
// ---------------------------------------------------------------------------

/// Derive the pullback curve's table from the base table at the same level by
/// evaluating theta on P^1(F_{q^n}): fibers over good/nodal base points are
/// the base fibers, entries over additive base points are recounted from the
/// pullback's own minimal model.
pub fn derive_pullback(
    base: &TraceTable,
    base_curve: &CurveModel,
    theta: &RationalFn,
    pullback_curve: &CurveModel,
    n: u32,
) -> Result<TraceTable> {
    check_base_table(base, base_curve)?;
    if base.n != n {
        return Err(Error::LevelMismatch {
            expected_q: base.q,
            expected_n: n,
        });
    }
    // The (curve, theta) pairing is caller-supplied; re-derive the model and
    // compare, since a mismatch would silently poison every copied entry.
    if base_curve.make_pullback(theta)? != *pullback_curve {
        return Err(Error::InvalidInput(
            "pullback curve does not match make_pullback(base, theta)".into(),
        ));
    }
    let ctx = level_ctx(base.q, n)?;
    let nn = ctx.nn;
    let infinity_index = ctx.order;
    let mut statuses = Vec::with_capacity(base.values.len());
    let mut values = Vec::with_capacity(base.values.len());
    let mut num = vec![0u64; nn];
    let mut den = vec![0u64; nn];
    let mut tmp = vec![0u64; 2 * nn];
    let mut inv = vec![0u64; nn];
    for w0 in 0..=ctx.order {
        // Image t0 = theta(w0) as a table index, with poles mapping to
        // infinity.
        let t0 = if w0 < ctx.order {
            ctx.eval_poly(theta.num(), w0, &mut num);
            ctx.eval_poly(theta.den(), w0, &mut den);
            if den.iter().all(|&c| c == 0) {
                infinity_index
            } else {
                let d = ctx.field.elem_at(ctx.field.index_of_slice(&den));
                let d_inv = ctx.field.inv(&d)?;
                ctx.field
                    .mul_slices(&num, d_inv.coords(), &mut inv, &mut tmp);
                ctx.field.index_of_slice(&inv) as usize
            }
        } else {
            match theta.value_at_infinity(&ctx.field) {
                None => infinity_index,
                Some(c) => ctx.field.index_of(&c) as usize,
            }
        };
        match base.statuses[t0] {
            EntryStatus::Add => {
                let (s, v) = if w0 < ctx.order {
                    finite_entry(&ctx, pullback_curve, w0)
                } else {
                    infinity_entry(&ctx, pullback_curve)
                };
                statuses.push(s);
                values.push(v);
            }
            s => {
                statuses.push(s);
                values.push(base.values[t0]);
            }
        }
    }
    let table = TraceTable {
        q: base.q,
        n,
        curve_key: pullback_curve.curve_key(),
        modulus: base.modulus.clone(),
        statuses,
        values,
    };
    table.validate()?;
    Ok(table)
}

// ---------------------------------------------------------------------------
// Cache store.
// ---------------------------------------------------------------------------

/// On-disk table store: one immutable text file per (curve, q, n), under a
/// directory derived from the canonical curve string.
#[derive(Clone, Debug)]
pub struct CacheStore {
    root: PathBuf,
}

/// How to obtain a table that is not yet cached.
pub enum TableStrategy<'a> {
    /// Count points of the curve itself.
    Direct,
    /// Derive from the base curve's table of the same level.
    TwistOf { base: &'a CurveModel, f: &'a Poly },
    /// Derive by evaluating theta into the base curve's table.
    PullbackOf {
        base: &'a CurveModel,
        theta: &'a RationalFn,
    },
}

impl CacheStore {
    pub fn new(root: impl Into<PathBuf>) -> CacheStore {
        CacheStore { root: root.into() }
    }

    /// Explicit directory, else ELLFF_CACHE_DIR, else ./ellff-cache.
    pub fn resolve(explicit: Option<PathBuf>) -> CacheStore {
        let root = explicit
            .or_else(|| std::env::var_os("ELLFF_CACHE_DIR").map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("ellff-cache"));
        CacheStore::new(root)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn curve_dir(&self, curve_key: &str) -> PathBuf {
        let digest = Sha256::digest(curve_key.as_bytes());
        let hex: String = digest.iter().take(16).map(|b| format!("{b:02x}")).collect();
        self.root.join(hex)
    }

    /// Path of the table file for (curve, n).
    pub fn path_for(&self, curve_key: &str, n: u32) -> PathBuf {
        self.curve_dir(curve_key).join(format!("n{n}.tbl"))
    }

    /// Load a cached table. Ok(None) on a clean miss; version mismatches and
    /// corruption are errors for the caller to translate.
    pub fn load(&self, curve_key: &str, q: u64, n: u32) -> Result<Option<TraceTable>> {
        let path = self.path_for(curve_key, n);
        let text = match fs::read_to_string(&path) {
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            other => other?,
        };
        let table = TraceTable::parse(&text)?;
        if table.q != q || table.n != n || table.curve_key != curve_key {
            return Err(Error::CacheCorrupt {
                reason: format!("file {} does not match its key", path.display()),
            });
        }
        Ok(Some(table))
    }

    /// Persist atomically: write a temp file in the same directory, rename
    /// over the destination.
    pub fn save(&self, table: &TraceTable) -> Result<PathBuf> {
        let dir = self.curve_dir(&table.curve_key);
        fs::create_dir_all(&dir)?;
        let path = dir.join(format!("n{}.tbl", table.n));
        let tmp = dir.join(format!("n{}.tbl.tmp.{}", table.n, std::process::id()));
        {
            let mut file = fs::File::create(&tmp)?;
            file.write_all(table.serialize().as_bytes())?;
            file.sync_all()?;
        }
        fs::rename(&tmp, &path)?;
        Ok(path)
    }

    /// Levels with a cached file for this curve, ascending.
    pub fn cached_levels(&self, curve_key: &str) -> Vec<u32> {
        let dir = self.curve_dir(curve_key);
        let mut levels = vec![];
        if let Ok(entries) = fs::read_dir(dir) {
            for entry in entries.flatten() {
                let name = entry.file_name();
                let name = name.to_string_lossy();
                if let Some(mid) = name.strip_prefix('n').and_then(|s| s.strip_suffix(".tbl")) {
                    if let Ok(n) = mid.parse() {
                        levels.push(n);
                    }
                }
            }
        }
        levels.sort_unstable();
        levels
    }
}

/// Build a table via the strategy, without consulting the cache.
fn build_with_strategy(
    store: &CacheStore,
    curve: &CurveModel,
    n: u32,
    strategy: &TableStrategy,
) -> Result<TraceTable> {
    match strategy {
        TableStrategy::Direct => build_direct(curve, n),
        TableStrategy::TwistOf { base, f } => {
            let base_table = cache_get_or_build(store, base, n, &TableStrategy::Direct)?;
            match derive_twist(&base_table, base, f) {
                Ok(t) => {
                    debug_assert_eq!(t.curve_key, curve.curve_key());
                    Ok(t)
                }
                Err(Error::TwistDerivationUnsupported(_)) => build_direct(curve, n),
                Err(e) => Err(e),
            }
        }
        TableStrategy::PullbackOf { base, theta } => {
            let base_table = cache_get_or_build(store, base, n, &TableStrategy::Direct)?;
            derive_pullback(&base_table, base, theta, curve, n)
        }
    }
}

/// Return the cached level-n table of the curve, building and persisting it
/// via the strategy on a miss. Corrupt files are reported and rebuilt;
/// version mismatches are surfaced as errors.
pub fn cache_get_or_build(
    store: &CacheStore,
    curve: &CurveModel,
    n: u32,
    strategy: &TableStrategy,
) -> Result<TraceTable> {
    let key = curve.curve_key();
    match store.load(&key, curve.q(), n) {
        Ok(Some(table)) => return Ok(table),
        Ok(None) => {}
        Err(e @ Error::CacheVersionMismatch { .. }) => return Err(e),
        Err(Error::CacheCorrupt { reason }) => {
            eprintln!(
                "warning: rebuilding corrupt table {}: {reason}",
                store.path_for(&key, n).display()
            );
        }
        Err(e) => return Err(e),
    }
    let table = build_with_strategy(store, curve, n, strategy)?;
    store.save(&table)?;
    Ok(table)
}
