//! The L-function L(T, E/K) as an exact integer polynomial.
//!
//! For a non-isotrivial curve E over K = F_q(t) the L-function is the
//! polynomial
//!
//!   L(T) = c_0 + c_1 T + ... + c_N T^N,   c_0 = 1,  N = deg M + 2 deg A - 4,
//!
//! determined by log L(T) = sum_{n >= 1} b_n T^n / n, where b_n is the flat
//! sum of the level-n trace table. Differentiating gives the recursion
//!
//!   n c_n = sum_{m=1..n} b_m c_{n-m},
//!
//! whose divisions must come out exact — the first built-in consistency
//! check. The functional equation
//!
//!   c_n = eps * q^{2n-N} * c_{N-n},   eps = global root number,
//!
//! means only the first h = floor(N/2) coefficients ever need computing; the
//! top half is filled from the bottom half, and for even N the middle
//! coefficient must satisfy c_{N/2} = eps * c_{N/2}, which forces c_{N/2} = 0
//! when eps = -1. An optional verify pass recomputes c_{h+1} from the
//! level-(h+1) table and compares it with the value the functional equation
//! predicted — the second consistency check, and the expensive one, since it
//! doubles the largest table.
//!
//! The analytic rank is the multiplicity of the factor (1 - qT), extracted by
//! repeated exact synthetic division: with g_i = c_i + q g_{i-1} the division
//! is exact iff g_N = q^N L(1/q) = 0, and then g_0..g_{N-1} are the quotient
//! coefficients. Everything is exact integer arithmetic; no floating point
//! touches the pipeline.

use crate::curve::{CurveModel, ReductionInfo};
use crate::error::{Error, Result};
use crate::tables::{cache_get_or_build, CacheStore, TableStrategy, TraceTable};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// The L-polynomial of one curve, with its root number and analytic rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPolynomial {
    q: u64,
    coeffs: Vec<BigInt>,
    sign: i8,
    rank: u32,
}

impl LPolynomial {
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Degree N of the polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn coeff(&self, i: usize) -> &BigInt {
        &self.coeffs[i]
    }
    /// Coefficients c_0..c_N, ascending.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }
    /// The root number eps.
    pub fn sign(&self) -> i8 {
        self.sign
    }
    /// Order of vanishing at T = 1/q.
    pub fn rank(&self) -> u32 {
        self.rank
    }

    /// Coefficients as a space-separated ascending list, the machine form.
    pub fn coeff_list_string(&self) -> String {
        self.coeffs
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for LPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            if c.is_zero() {
                continue;
            }
            let (op, mag) = if c.is_negative() {
                ('-', -c)
            } else {
                ('+', c.clone())
            };
            write!(f, " {op} ")?;
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            if i == 1 {
                write!(f, "T")?;
            } else {
                write!(f, "T^{i}")?;
            }
        }
        Ok(())
    }
}

/// The power sum b_n: the flat sum of the level-n table's entries.
pub fn b_value(table: &TraceTable) -> i64 {
    table.flat_sum()
}

/// Coefficients c_1..c_h from the power sums b_1..b_h via the logarithmic
/// recursion n c_n = sum_{m=1..n} b_m c_{n-m}, c_0 = 1. Returns c_0..c_h.
pub fn coeffs_from_logsums(b: &[i64]) -> Result<Vec<BigInt>> {
    let mut c = Vec::with_capacity(b.len() + 1);
    c.push(BigInt::one());
    for n in 1..=b.len() {
        let mut s = BigInt::zero();
        for m in 1..=n {
            s += BigInt::from(b[m - 1]) * &c[n - m];
        }
        let n_big = BigInt::from(n);
        if !(&s % &n_big).is_zero() {
            return Err(Error::Consistency(format!(
                "logarithmic sum {s} at level {n} is not divisible by {n}; \
                 the trace data is corrupt"
            )));
        }
        c.push(s / n_big);
    }
    Ok(c)
}

/// Assemble the full polynomial from its bottom half c_0..c_h (h = floor(N/2))
/// and the root number, filling c_{N-n} = eps * q^{N-2n} * c_n and checking
/// the even-N middle coefficient. The rank and its parity law
/// (-1)^rank = eps are checked before returning.
pub fn complete_fe(c: &[BigInt], sign: i8, n_deg: usize, q: u64) -> Result<LPolynomial> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidInput(format!("sign must be +-1, got {sign}")));
    }
    let h = n_deg / 2;
    if c.len() != h + 1 {
        return Err(Error::InvalidInput(format!(
            "degree {n_deg} needs coefficients c_0..c_{h}, got {} values",
            c.len()
        )));
    }
    if !c[0].is_one() {
        return Err(Error::InvalidInput(
            "constant coefficient must be 1".into(),
        ));
    }
    let mut coeffs = c.to_vec();
    coeffs.resize(n_deg + 1, BigInt::zero());
    let eps = BigInt::from(sign);
    for (n, cn) in c.iter().enumerate() {
        let i = n_deg - n;
        let predicted = &eps * BigInt::from(q).pow((n_deg - 2 * n) as u32) * cn;
        if i <= h {
            // Overlap: the functional equation constrains an already-computed
            // coefficient (the even-N middle one, or c_0 itself when N = 0).
            if coeffs[i] != predicted {
                return Err(Error::Consistency(format!(
                    "functional equation forces c_{i} = {predicted} with sign \
                     {sign}, but the recursion gave c_{i} = {}",
                    coeffs[i]
                )));
            }
        } else {
            coeffs[i] = predicted;
        }
    }
    let rank = vanishing_order(q, &coeffs);
    let parity = if rank.is_multiple_of(2) { 1 } else { -1 };
    if parity != sign {
        return Err(Error::Consistency(format!(
            "analytic rank {rank} has parity {parity}, contradicting the sign {sign}"
        )));
    }
    Ok(LPolynomial {
        q,
        coeffs,
        sign,
        rank,
    })
}

/// Multiplicity of (1 - qT): divide synthetically while the division is
/// exact. One pass computes g_i = c_i + q g_{i-1}; exactness is g_N = 0, and
/// then g_0..g_{N-1} are the quotient's coefficients.
fn vanishing_order(q: u64, coeffs: &[BigInt]) -> u32 {
    let q = BigInt::from(q);
    let mut cur = coeffs.to_vec();
    let mut rank = 0;
    while cur.len() > 1 {
        let mut g = Vec::with_capacity(cur.len());
        g.push(cur[0].clone());
        for c in &cur[1..] {
            let last = g.last().unwrap() * &q;
            g.push(c + last);
        }
        if !g.last().unwrap().is_zero() {
            break;
        }
        g.pop();
        cur = g;
        rank += 1;
    }
    rank
}

/// Order of vanishing of L at T = 1/q, recomputed from the coefficients.
pub fn analytic_rank(l: &LPolynomial) -> u32 {
    vanishing_order(l.q, &l.coeffs)
}

/// Compute L from any per-level table source; `table_at(n)` must return the
/// validated level-n table of `curve`. Family sweeps pass a closure deriving
/// twisted tables in memory; the cached path is `compute_l`.
pub(crate) fn compute_l_with<F>(
    curve: &CurveModel,
    info: &ReductionInfo,
    verify: bool,
    mut table_at: F,
) -> Result<LPolynomial>
where
    F: FnMut(u32) -> Result<TraceTable>,
{
    let n_deg = info.l_degree()?;
    let sign = curve.global_sign(info)?;
    let h = n_deg / 2;
    let levels = if verify { h + 1 } else { h };
    let mut b = Vec::with_capacity(levels);
    for n in 1..=levels {
        b.push(b_value(&table_at(n as u32)?));
    }
    let c = coeffs_from_logsums(&b[..h])?;
    let l = complete_fe(&c, sign, n_deg, curve.q())?;
    if verify {
        let extended = coeffs_from_logsums(&b)?;
        let expected = if h < n_deg {
            l.coeffs[h + 1].clone()
        } else {
            BigInt::zero()
        };
        if extended[h + 1] != expected {
            return Err(Error::Consistency(format!(
                "verification level {} computed c_{} = {}, functional equation \
                 predicts {expected}",
                h + 1,
                h + 1,
                extended[h + 1]
            )));
        }
    }
    Ok(l)
}

/// Options for `compute_l`: an extra-level verification pass and the build
/// strategy for uncached tables.
pub struct ComputeOpts<'a> {
    /// Build level h+1 too and check the functional-equation prediction.
    pub verify: bool,
    /// How to build tables on a cache miss.
    pub strategy: TableStrategy<'a>,
}

impl Default for ComputeOpts<'static> {
    fn default() -> Self {
        ComputeOpts {
            verify: false,
            strategy: TableStrategy::Direct,
        }
    }
}

/// The full pipeline for one curve: reduction data, degree and sign, cached
/// tables for levels 1..floor(N/2), recursion, functional-equation
/// completion, rank. Every consistency check runs; `opts.verify` adds the
/// extra-level check.
pub fn compute_l(curve: &CurveModel, store: &CacheStore, opts: &ComputeOpts) -> Result<LPolynomial> {
    let info = curve.reduction_info()?;
    compute_l_with(curve, &info, opts.verify, |n| {
        cache_get_or_build(store, curve, n, &opts.strategy)
    })
}
