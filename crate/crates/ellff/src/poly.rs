//! Dense univariate polynomials over the prime field F_q (q >= 5) and the
//! rational function field F_q(t).
//!
//! Coefficients are stored ascending with no trailing zeros, so the zero
//! polynomial is the empty vector and `deg` returns `None` for it. Complete
//! factorization works over the prime field: squarefree decomposition (with
//! p-th-root extraction, since we are in characteristic p), distinct-degree
//! splitting by iterated Frobenius, then Cantor-Zassenhaus equal-degree
//! splitting. The equal-degree stage draws random splitting elements from a
//! ChaCha8 stream with the fixed seed `0xE11F_F5EED`; together with the final
//! canonical sort this makes factor output reproducible run to run.
//!
//! Canonical order on monic polynomials of equal degree compares coefficients
//! from the highest power down, which matches ordering by the numeric index
//! sum(c_i * q^i) without ever forming that (possibly huge) integer.

use crate::error::{Error, Result};
use crate::finite_field::{FieldCtx, FieldElem};
use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::fmt;

const FACTOR_SEED: u64 = 0xE11F_F5EED;

/// A polynomial over F_q, ascending coefficients, normalized.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    q: u64,
    coeffs: Vec<u64>,
}

fn inv_mod(a: u64, q: u64) -> u64 {
    // q is prime and a != 0 mod q.
    let mut s = 1u64;
    let mut b = a % q;
    let mut e = q - 2;
    while e > 0 {
        if e & 1 == 1 {
            s = s * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    s
}

impl Poly {
    pub fn zero(q: u64) -> Self {
        Poly { q, coeffs: vec![] }
    }

    pub fn one(q: u64) -> Self {
        Poly::constant(q, 1)
    }

    pub fn constant(q: u64, c: u64) -> Self {
        Poly::from_coeffs(q, vec![c])
    }

    /// The variable t.
    pub fn x(q: u64) -> Self {
        Poly::from_coeffs(q, vec![0, 1])
    }

    /// c * t^k.
    pub fn monomial(q: u64, c: u64, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly::from_coeffs(q, coeffs)
    }

    /// Build from ascending coefficients; reduces mod q and strips trailing zeros.
    pub fn from_coeffs(q: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= q;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { q, coeffs }
    }

    /// Build from ascending signed coefficients (negatives taken mod q).
    pub fn from_signed(q: u64, coeffs: &[i64]) -> Self {
        let qi = q as i64;
        Poly::from_coeffs(
            q,
            coeffs.iter().map(|&c| (c.rem_euclid(qi)) as u64).collect(),
        )
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// Coefficient of t^k (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Leading coefficient (0 for the zero polynomial).
    pub fn lc(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn neg(&self) -> Poly {
        let q = self.q;
        Poly {
            q,
            coeffs: self.coeffs.iter().map(|&c| (q - c) % q).collect(),
        }
    }

    pub fn add(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.q, rhs.q);
        let q = self.q;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push((self.coeff(i) + rhs.coeff(i)) % q);
        }
        Poly::from_coeffs(q, out)
    }

    pub fn sub(&self, rhs: &Poly) -> Poly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Poly) -> Poly {
        debug_assert_eq!(self.q, rhs.q);
        let q = self.q;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(q);
        }
        let (a, b) = (&self.coeffs, &rhs.coeffs);
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (k, o) in out.iter_mut().enumerate() {
            let lo = k.saturating_sub(b.len() - 1);
            let hi = k.min(a.len() - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += a[i] as u128 * b[k - i] as u128;
            }
            *o = (acc % q as u128) as u64;
        }
        Poly { q, coeffs: out }
    }

    pub fn mul_scalar(&self, c: u64) -> Poly {
        let q = self.q;
        let c = c % q;
        Poly::from_coeffs(q, self.coeffs.iter().map(|&a| a * c % q).collect())
    }

    pub fn pow(&self, mut e: usize) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        debug_assert_eq!(self.q, d.q);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = self.q;
        let dd = d.deg().unwrap();
        if self.deg().is_none_or(|sd| sd < dd) {
            return Ok((Poly::zero(q), self.clone()));
        }
        let sd = self.deg().unwrap();
        let inv_lc = inv_mod(d.lc(), q);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd] * inv_lc % q;
            if c != 0 {
                quot[k] = c;
                for i in 0..=dd {
                    let sub = c * d.coeffs[i] % q;
                    rem[k + i] = (rem[k + i] + q - sub) % q;
                }
            }
        }
        Ok((Poly::from_coeffs(q, quot), Poly::from_coeffs(q, rem)))
    }

    /// Exact division; panics in debug if the remainder is nonzero.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (qt, r) = self.divrem(d).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "division was not exact");
        qt
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Poly {
        match self.lc() {
            0 | 1 => self.clone(),
            lc => self.mul_scalar(inv_mod(lc, self.q)),
        }
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, rhs: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let r = a.rem(&b).unwrap();
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let q = self.q;
        if self.coeffs.len() <= 1 {
            return Poly::zero(q);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| c * ((i as u64 + 1) % q) % q)
            .collect();
        Poly::from_coeffs(q, coeffs)
    }

    /// Multiplicity of the monic irreducible pi in self (self nonzero).
    pub fn ord_at(&self, pi: &Poly) -> usize {
        debug_assert!(!self.is_zero());
        let mut f = self.clone();
        let mut ord = 0;
        loop {
            let (qt, r) = f.divrem(pi).unwrap();
            if !r.is_zero() {
                return ord;
            }
            ord += 1;
            f = qt;
        }
    }

    /// Horner evaluation at a prime-field point.
    pub fn eval_base(&self, c: u64) -> u64 {
        let q = self.q;
        let c = c % q;
        let mut acc = 0u64;
        for &a in self.coeffs.iter().rev() {
            acc = (acc * c + a) % q;
        }
        acc
    }

    /// Horner evaluation at a point of an extension field F_{q^n}.
    pub fn eval_embedded(&self, ext: &FieldCtx, tau: &FieldElem) -> FieldElem {
        debug_assert_eq!(ext.p(), self.q);
        let mut acc = ext.zero();
        for &a in self.coeffs.iter().rev() {
            acc = ext.mul(&acc, tau);
            if a != 0 {
                acc = ext.add(&acc, &ext.from_u64(a));
            }
        }
        acc
    }

    /// self^e mod m, with a u64 exponent.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Result<Poly> {
        let mut base = self.rem(m)?;
        let mut acc = Poly::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m)?;
            }
            base = base.mul(&base).rem(m)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// self^e mod m, with an arbitrary-size exponent.
    pub fn powmod_big(&self, e: &BigUint, m: &Poly) -> Result<Poly> {
        let mut acc = Poly::one(self.q);
        let base = self.rem(m)?;
        if e.bits() == 0 {
            return Ok(acc);
        }
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc).rem(m)?;
            if e.bit(i) {
                acc = acc.mul(&base).rem(m)?;
            }
        }
        Ok(acc)
    }

    /// True iff self has no repeated irreducible factor.
    pub fn is_squarefree(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Ok(true);
        }
        let d = self.derivative();
        if d.is_zero() {
            // f = v(t^p) is a p-th power of something.
            return Ok(false);
        }
        Ok(self.gcd(&d).is_constant())
    }

    /// Irreducibility over F_q (errors on constants).
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = match self.deg() {
            None | Some(0) => return Err(Error::ConstantPolynomial),
            Some(d) => d,
        };
        if d == 1 {
            return Ok(true);
        }
        let f = self.monic();
        let x = Poly::x(self.q);
        // Iterated Frobenius: frob[k] = t^(q^(k+1)) mod f.
        let mut frob = Vec::with_capacity(d);
        let mut h = x.powmod(self.q, &f)?;
        frob.push(h.clone());
        for _ in 1..d {
            h = h.powmod(self.q, &f)?;
            frob.push(h.clone());
        }
        // Need t^(q^d) = t mod f ...
        if frob[d - 1] != x.rem(&f)? {
            return Ok(false);
        }
        // ... and gcd(t^(q^(d/l)) - t, f) = 1 for every prime l | d.
        let mut m = d;
        let mut primes = vec![];
        let mut l = 2;
        while l * l <= m {
            if m % l == 0 {
                primes.push(l);
                while m % l == 0 {
                    m /= l;
                }
            }
            l += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        for l in primes {
            let k = d / l;
            let g = frob[k - 1].sub(&x).gcd(&f);
            if !g.is_constant() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Full factorization into monic irreducibles with multiplicities,
    /// sorted canonically. The unit self.lc() is not part of the output.
    pub fn factor(&self) -> Result<Vec<(Poly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if self.is_constant() {
            return Err(Error::ConstantPolynomial);
        }
        let f = self.monic();
        let mut out: Vec<(Poly, usize)> = vec![];
        for (part, mult) in squarefree_parts(&f) {
            for (g, k) in distinct_degree(&part)? {
                for pi in equal_degree(&g, k)? {
                    out.push((pi, mult));
                }
            }
        }
        // The p-th-root recursion inside squarefree_parts can rediscover a
        // factor already seen at a different multiplicity; merge duplicates.
        out.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        let mut merged: Vec<(Poly, usize)> = vec![];
        for (pi, m) in out {
            match merged.last_mut() {
                Some((prev, pm)) if *prev == pi => *pm += m,
                _ => merged.push((pi, m)),
            }
        }
        Ok(merged)
    }

    /// Product of the distinct irreducible factors (the radical), monic.
    pub fn radical(&self) -> Result<Poly> {
        if self.is_constant() && !self.is_zero() {
            return Ok(Poly::one(self.q));
        }
        let mut r = Poly::one(self.q);
        for (pi, _) in self.factor()? {
            r = r.mul(&pi);
        }
        Ok(r)
    }
}

/// Canonical order: by degree, then coefficients compared from the top down
/// (equals ordering by numeric index sum(c_i q^i) without big integers).
pub fn canonical_cmp(a: &Poly, b: &Poly) -> Ordering {
    match a.coeffs.len().cmp(&b.coeffs.len()) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.coeffs.len()).rev() {
        match a.coeffs[i].cmp(&b.coeffs[i]) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

fn squarefree_parts(f: &Poly) -> Vec<(Poly, usize)> {
    let p = f.q();
    if f.is_constant() {
        return vec![];
    }
    let fp = f.derivative();
    if fp.is_zero() {
        let v = pth_root(f);
        return squarefree_parts(&v)
            .into_iter()
            .map(|(g, m)| (g, m * p as usize))
            .collect();
    }
    let mut c = f.gcd(&fp);
    let mut w = f.div_exact(&c);
    let mut i = 1usize;
    let mut out = vec![];
    while !w.is_constant() {
        let y = w.gcd(&c);
        let z = w.div_exact(&y);
        if !z.is_constant() {
            out.push((z, i));
        }
        w = y;
        c = c.div_exact(&w);
        i += 1;
    }
    if !c.is_constant() {
        let v = pth_root(&c);
        out.extend(
            squarefree_parts(&v)
                .into_iter()
                .map(|(g, m)| (g, m * p as usize)),
        );
    }
    out
}

/// p-th root of f = v(t^p) over the prime field (where c^(1/p) = c).
fn pth_root(f: &Poly) -> Poly {
    let p = f.q() as usize;
    let coeffs = f
        .coeffs()
        .iter()
        .step_by(p)
        .copied()
        .collect::<Vec<_>>();
    Poly::from_coeffs(f.q(), coeffs)
}

/// Split a monic squarefree polynomial into products of irreducibles of one
/// degree each: returns (product, degree) pairs.
fn distinct_degree(g: &Poly) -> Result<Vec<(Poly, usize)>> {
    let q = g.q();
    let x = Poly::x(q);
    let mut f = g.clone();
    let mut h = x.rem(&f)?;
    let mut k = 0usize;
    let mut out = vec![];
    while f.deg().unwrap_or(0) >= 2 * (k + 1) {
        k += 1;
        h = h.powmod(q, &f)?;
        let d = h.sub(&x).gcd(&f);
        if !d.is_constant() {
            out.push((d.clone(), k));
            f = f.div_exact(&d);
            h = h.rem(&f)?;
        }
    }
    if !f.is_constant() {
        let d = f.deg().unwrap();
        out.push((f, d));
    }
    Ok(out)
}

/// Cantor-Zassenhaus: split a monic squarefree product of irreducibles all of
/// degree k into the individual irreducibles.
fn equal_degree(g: &Poly, k: usize) -> Result<Vec<Poly>> {
    let q = g.q();
    let deg = g.deg().unwrap();
    if deg == k {
        return Ok(vec![g.clone()]);
    }
    let e = (BigUint::from(q).pow(k as u32) - BigUint::one()) / BigUint::from(2u32);
    let mut rng = ChaCha8Rng::seed_from_u64(FACTOR_SEED);
    let mut stack = vec![g.clone()];
    let mut out = vec![];
    while let Some(cur) = stack.pop() {
        let d = cur.deg().unwrap();
        if d == k {
            out.push(cur);
            continue;
        }
        loop {
            let coeffs: Vec<u64> = (0..d).map(|_| rng.gen_range(0..q)).collect();
            let u = Poly::from_coeffs(q, coeffs);
            if u.is_constant() {
                continue;
            }
            let mut split = u.gcd(&cur);
            if split.is_constant() || split.deg() == cur.deg() {
                let s = u.powmod_big(&e, &cur)?;
                split = s.sub(&Poly::one(q)).gcd(&cur);
            }
            if !split.is_constant() && split.deg() != cur.deg() {
                let other = cur.div_exact(&split);
                stack.push(split);
                stack.push(other);
                break;
            }
        }
    }
    Ok(out)
}

/// Legendre symbol (f / pi) for a monic irreducible pi, via Euler's criterion
/// in the residue field F_q[t]/(pi).
pub fn legendre_symbol(f: &Poly, pi: &Poly) -> Result<i8> {
    if !pi.is_monic() {
        return Err(Error::NotMonic);
    }
    if !pi.is_irreducible()? {
        return Err(Error::NotIrreducible(pi.to_string()));
    }
    let q = f.q();
    let d = pi.deg().unwrap() as u32;
    let r = f.rem(pi)?;
    if r.is_zero() {
        return Ok(0);
    }
    let e = (BigUint::from(q).pow(d) - BigUint::one()) / BigUint::from(2u32);
    let s = r.powmod_big(&e, pi)?;
    if s == Poly::one(q) {
        Ok(1)
    } else if s == Poly::constant(q, q - 1) {
        Ok(-1)
    } else {
        Err(Error::NotIrreducible(pi.to_string()))
    }
}

/// Jacobi symbol (f / N) given the factorization of N. Zero when f shares a
/// factor with N.
pub fn jacobi_symbol(f: &Poly, n_factors: &[(Poly, usize)]) -> Result<i8> {
    let mut acc = 1i8;
    for (pi, e) in n_factors {
        let l = legendre_symbol(f, pi)?;
        if l == 0 {
            return Ok(0);
        }
        if e % 2 == 1 {
            acc *= l;
        }
    }
    Ok(acc)
}

/// All q^d monic polynomials of degree d, in coefficient-index order.
pub fn enumerate_monic(q: u64, d: usize) -> Result<impl Iterator<Item = Poly>> {
    let count = q
        .checked_pow(d as u32)
        .ok_or_else(|| Error::FieldTooLarge(format!("q^d = {q}^{d} exceeds u64")))?;
    Ok((0..count).map(move |k| {
        let mut coeffs = Vec::with_capacity(d + 1);
        let mut k = k;
        for _ in 0..d {
            coeffs.push(k % q);
            k /= q;
        }
        coeffs.push(1);
        Poly { q, coeffs }
    }))
}

// ---- Text form ----

impl fmt::Display for Poly {
    /// Descending term grammar: `2*t^3+4*t+1`; zero prints as `0`.
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(w, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[k];
            if c == 0 {
                continue;
            }
            if !first {
                write!(w, "+")?;
            }
            first = false;
            match (c, k) {
                (c, 0) => write!(w, "{c}")?,
                (1, 1) => write!(w, "t")?,
                (1, k) => write!(w, "t^{k}")?,
                (c, 1) => write!(w, "{c}*t")?,
                (c, k) => write!(w, "{c}*t^{k}")?,
            }
        }
        Ok(())
    }
}

/// Ascending comma-separated coefficient list (canonical serialized form).
pub fn coeff_list_string(f: &Poly) -> String {
    if f.is_zero() {
        return "0".into();
    }
    f.coeffs()
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Parse either the term grammar (`t^2+3*t+1`, `2*t^3 - t + 4`) or an
/// ascending comma-separated coefficient list (`1,3,1`). Any single letter is
/// accepted as the variable; coefficients reduce mod q.
pub fn poly_from_str(q: u64, s: &str) -> Result<Poly> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty input".into()));
    }
    if s.contains(',') {
        let mut coeffs = vec![];
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: i128 = tok
                .parse()
                .map_err(|_| Error::Parse(format!("bad coefficient {tok:?}")))?;
            coeffs.push(v.rem_euclid(q as i128) as u64);
        }
        return Ok(Poly::from_coeffs(q, coeffs));
    }
    parse_terms(q, s)
}

fn parse_terms(q: u64, s: &str) -> Result<Poly> {
    let bytes: Vec<char> = s.chars().collect();
    let mut i = 0usize;
    let n = bytes.len();
    let mut acc = Poly::zero(q);
    let skip_ws = |i: &mut usize| {
        while *i < n && bytes[*i].is_whitespace() {
            *i += 1;
        }
    };
    let mut sign_next: u64 = 1; // 1 for +, q-1 for -
    loop {
        skip_ws(&mut i);
        if i >= n {
            return Err(Error::Parse(format!("expected a term in {s:?}")));
        }
        // Optional extra signs.
        while i < n && (bytes[i] == '+' || bytes[i] == '-') {
            if bytes[i] == '-' {
                sign_next = sign_next * (q - 1) % q;
            }
            i += 1;
            skip_ws(&mut i);
        }
        if i >= n {
            return Err(Error::Parse(format!("dangling sign in {s:?}")));
        }
        // Coefficient digits?
        let mut coeff: Option<u64> = None;
        if bytes[i].is_ascii_digit() {
            let mut c = 0u64;
            while i < n && bytes[i].is_ascii_digit() {
                c = (c * 10 + (bytes[i] as u64 - '0' as u64)) % q;
                i += 1;
            }
            coeff = Some(c);
            skip_ws(&mut i);
            if i < n && bytes[i] == '*' {
                i += 1;
                skip_ws(&mut i);
                if i >= n || !bytes[i].is_ascii_alphabetic() {
                    return Err(Error::Parse(format!("expected variable after '*' in {s:?}")));
                }
            }
        }
        // Variable part?
        let mut k = 0usize;
        if i < n && bytes[i].is_ascii_alphabetic() {
            i += 1;
            k = 1;
            if i < n && bytes[i] == '^' {
                i += 1;
                if i >= n || !bytes[i].is_ascii_digit() {
                    return Err(Error::Parse(format!("expected exponent after '^' in {s:?}")));
                }
                let mut e = 0usize;
                while i < n && bytes[i].is_ascii_digit() {
                    e = e * 10 + (bytes[i] as usize - '0' as usize);
                    if e > 1_000_000 {
                        return Err(Error::Parse("exponent too large".into()));
                    }
                    i += 1;
                }
                k = e;
            }
        } else if coeff.is_none() {
            return Err(Error::Parse(format!(
                "unexpected character {:?} in {s:?}",
                bytes[i]
            )));
        }
        let c = coeff.unwrap_or(1) * sign_next % q;
        acc = acc.add(&Poly::monomial(q, c, k));
        sign_next = 1;
        skip_ws(&mut i);
        if i >= n {
            return Ok(acc);
        }
        match bytes[i] {
            '+' => {
                i += 1;
            }
            '-' => {
                sign_next = q - 1;
                i += 1;
            }
            other => {
                return Err(Error::Parse(format!("unexpected {other:?} in {s:?}")));
            }
        }
    }
}

// ---- Rational functions ----

/// A reduced fraction num/den in F_q(t): den is monic and coprime to num;
/// zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFn {
    num: Poly,
    den: Poly,
}

impl RationalFn {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let q = num.q();
        if num.is_zero() {
            return Ok(RationalFn {
                num,
                den: Poly::one(q),
            });
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g);
        let mut den = den.div_exact(&g);
        let lc = den.lc();
        if lc != 1 {
            let inv = inv_mod(lc, q);
            num = num.mul_scalar(inv);
            den = den.mul_scalar(inv);
        }
        Ok(RationalFn { num, den })
    }

    pub fn from_poly(p: Poly) -> Self {
        let q = p.q();
        RationalFn {
            num: p,
            den: Poly::one(q),
        }
    }

    pub fn q(&self) -> u64 {
        self.num.q()
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// `Some(c)` iff the function is the constant c.
    pub fn as_constant(&self) -> Option<u64> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.coeff(0))
        } else {
            None
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Degree of the map P^1 -> P^1: max(deg num, deg den).
    pub fn map_degree(&self) -> usize {
        self.num
            .deg()
            .unwrap_or(0)
            .max(self.den.deg().unwrap_or(0))
    }

    pub fn add(&self, rhs: &RationalFn) -> RationalFn {
        let num = self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den));
        RationalFn::new(num, self.den.mul(&rhs.den)).unwrap()
    }

    pub fn sub(&self, rhs: &RationalFn) -> RationalFn {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> RationalFn {
        RationalFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &RationalFn) -> RationalFn {
        RationalFn::new(self.num.mul(&rhs.num), self.den.mul(&rhs.den)).unwrap()
    }

    pub fn mul_scalar(&self, c: u64) -> RationalFn {
        RationalFn {
            num: self.num.mul_scalar(c),
            den: self.den.clone(),
        }
    }

    pub fn div(&self, rhs: &RationalFn) -> Result<RationalFn> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        RationalFn::new(self.num.mul(&rhs.den), self.den.mul(&rhs.num))
    }

    pub fn inv(&self) -> Result<RationalFn> {
        RationalFn::from_poly(Poly::one(self.q())).div(self)
    }

    pub fn pow(&self, e: usize) -> RationalFn {
        RationalFn {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Order of vanishing at the monic irreducible pi (negative at poles).
    pub fn ord_at(&self, pi: &Poly) -> i64 {
        if self.is_zero() {
            panic!("ord of the zero function");
        }
        self.num.ord_at(pi) as i64 - self.den.ord_at(pi) as i64
    }

    /// Order of vanishing at the infinite place: deg den - deg num.
    pub fn ord_at_infinity(&self) -> i64 {
        debug_assert!(!self.is_zero());
        self.den.deg().unwrap() as i64 - self.num.deg().unwrap() as i64
    }

    /// Value at a point of P^1(F_{q^n}); `None` means the value is infinite.
    /// Since num and den are coprime they never vanish together.
    pub fn eval_projective(&self, ext: &FieldCtx, tau: &FieldElem) -> Option<FieldElem> {
        let d = self.den.eval_embedded(ext, tau);
        if ext.is_zero(&d) {
            return None;
        }
        let nv = self.num.eval_embedded(ext, tau);
        Some(ext.mul(&nv, &ext.inv(&d).unwrap()))
    }

    /// Value at t = infinity; `None` means infinite (deg num > deg den).
    pub fn value_at_infinity(&self, ext: &FieldCtx) -> Option<FieldElem> {
        let dn = self.num.deg().unwrap_or(0);
        let dd = self.den.deg().unwrap_or(0);
        if self.is_zero() || dn < dd {
            Some(ext.zero())
        } else if dn > dd {
            None
        } else {
            let r = self.num.lc() * inv_mod(self.den.lc(), self.q()) % self.q();
            Some(ext.from_u64(r))
        }
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, w: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() {
            write!(w, "{}", self.num)
        } else {
            write!(w, "({})/({})", self.num, self.den)
        }
    }
}

/// Parse `p` or `p/q` in the polynomial grammar (parens around each part ok).
pub fn rational_from_str(q: u64, s: &str) -> Result<RationalFn> {
    let strip = |x: &str| -> String {
        let x = x.trim();
        if x.starts_with('(') && x.ends_with(')') {
            x[1..x.len() - 1].to_string()
        } else {
            x.to_string()
        }
    };
    match s.split_once('/') {
        None => Ok(RationalFn::from_poly(poly_from_str(q, &strip(s))?)),
        Some((a, b)) => RationalFn::new(poly_from_str(q, &strip(a))?, poly_from_str(q, &strip(b))?),
    }
}
