//! Explicit finite fields F_{p^n} for odd characteristic p >= 5.
//!
//! A field is a context object: the prime p, the extension degree n, and a
//! monic irreducible modulus of degree n over F_p. Elements are coordinate
//! vectors of length n (ascending powers of the residue class of t). The
//! modulus is *deterministic*: for given (p, n) we always pick the monic
//! irreducible whose coefficient tuple (c_0, ..., c_{n-1}) has the smallest
//! numeric index sum(c_i * p^i). Two runs, two machines, one field -- this is
//! what makes cached point-count tables at level n mutually compatible.
//!
//! Enumeration order is fixed the same way: the element with coordinates
//! (c_0, ..., c_{n-1}) sits at index sum(c_i * p^i), so index 0 is zero and
//! the first p indices are the prime subfield.

use crate::error::{Error, Result};
use crate::poly::Poly;

/// An explicit finite field F_{p^n}, p prime >= 5.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u64,
    n: usize,
    /// Monic irreducible modulus, ascending coefficients, length n+1.
    modulus: Vec<u64>,
    /// p - modulus[i] for i < n, used during reduction.
    neg_mod: Vec<u64>,
    /// p^n.
    order: u64,
}

/// An element of a [`FieldCtx`]: n coordinates in [0, p), ascending powers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem {
    coords: Vec<u64>,
}

impl FieldElem {
    /// Coordinate slice (length = extension degree of the owning field).
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    for d in [2u64, 3, 5, 7] {
        if m == d {
            return true;
        }
        if m.is_multiple_of(d) {
            return false;
        }
    }
    let mut d = 11u64;
    while d * d <= m {
        if m.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Build F_{p^n} with the canonical (numerically smallest) irreducible modulus.
pub fn make_field(p: u64, n: usize) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p < 5 {
        return Err(Error::BadCharacteristic(p));
    }
    if p >= (1 << 31) {
        return Err(Error::FieldTooLarge(format!("p = {p} (need p < 2^31)")));
    }
    if n == 0 {
        return Err(Error::BadExtensionDegree);
    }
    let order = p
        .checked_pow(n as u32)
        .ok_or_else(|| Error::FieldTooLarge(format!("p^n = {p}^{n} exceeds u64")))?;

    // Scan candidates t^n + c_{n-1} t^{n-1} + ... + c_0 in increasing index
    // order until one is irreducible. The density of irreducibles is ~1/n, so
    // this terminates almost immediately.
    let mut modulus = None;
    for k in 0..order {
        let mut coeffs = index_digits(k, p, n);
        coeffs.push(1);
        let cand = Poly::from_coeffs(p, coeffs.clone());
        if cand.is_irreducible()? {
            modulus = Some(coeffs);
            break;
        }
    }
    let modulus = modulus.expect("an irreducible of every degree exists");
    let neg_mod = modulus[..n].iter().map(|&c| (p - c) % p).collect();
    Ok(FieldCtx {
        p,
        n,
        modulus,
        neg_mod,
        order,
    })
}

fn index_digits(mut k: u64, p: u64, n: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(k % p);
        k /= p;
    }
    out
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    /// p^n, the number of elements.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Ascending coefficients of the modulus (length n+1, last entry 1).
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            coords: vec![0; self.n],
        }
    }

    pub fn one(&self) -> FieldElem {
        self.from_u64(1)
    }

    /// Embed a residue of the prime subfield.
    pub fn from_u64(&self, c: u64) -> FieldElem {
        let mut coords = vec![0; self.n];
        coords[0] = c % self.p;
        FieldElem { coords }
    }

    /// Element from explicit coordinates (reduced mod p, padded to length n).
    pub fn from_coords(&self, coords: &[u64]) -> FieldElem {
        let mut c = vec![0; self.n];
        for (i, &v) in coords.iter().take(self.n).enumerate() {
            c[i] = v % self.p;
        }
        FieldElem { coords: c }
    }

    /// Enumeration index of an element: sum(c_i * p^i).
    pub fn index_of(&self, x: &FieldElem) -> u64 {
        self.index_of_slice(&x.coords)
    }

    /// Element at a given enumeration index (0 <= idx < order).
    pub fn elem_at(&self, idx: u64) -> FieldElem {
        debug_assert!(idx < self.order);
        FieldElem {
            coords: index_digits(idx, self.p, self.n),
        }
    }

    /// All field elements in enumeration order.
    pub fn iter(&self) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.order).map(move |i| self.elem_at(i))
    }

    pub fn is_zero(&self, x: &FieldElem) -> bool {
        x.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut out = vec![0; self.n];
        self.add_slices(&a.coords, &b.coords, &mut out);
        FieldElem { coords: out }
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| (x + self.p - y) % self.p)
            .collect();
        FieldElem { coords }
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        let coords = a.coords.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElem { coords }
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        let mut out = vec![0; self.n];
        let mut tmp = vec![0; 2 * self.n];
        self.mul_slices(&a.coords, &b.coords, &mut out, &mut tmp);
        FieldElem { coords: out }
    }

    /// Multiply by a prime-subfield constant (cheaper than a full mul).
    pub fn scale(&self, c: u64, a: &FieldElem) -> FieldElem {
        let c = c % self.p;
        let coords = a.coords.iter().map(|&x| (x * c) % self.p).collect();
        FieldElem { coords }
    }

    pub fn pow(&self, a: &FieldElem, mut e: u64) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; errors on zero.
    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, self.order - 2))
    }

    /// Quadratic character: 0 on zero, +1 on nonzero squares, -1 otherwise.
    ///
    /// Computed as x^((p^n - 1)/2); the result is forced to be 0 or +-1 in a
    /// field of odd order.
    pub fn quadratic_character(&self, a: &FieldElem) -> i8 {
        if self.is_zero(a) {
            return 0;
        }
        let s = self.pow(a, (self.order - 1) / 2);
        if s == self.one() {
            1
        } else {
            debug_assert_eq!(s, self.neg(&self.one()), "modulus must be irreducible");
            -1
        }
    }

    /// Quadratic character of a prime-subfield residue (avoids an embedding).
    pub fn base_quadratic_character(&self, c: u64) -> i8 {
        let c = c % self.p;
        if c == 0 {
            return 0;
        }
        // chi_{p^n}(c) = chi_p(c)^n for c in the prime subfield.
        let mut s = 1u64;
        let mut b = c;
        let mut e = (self.p - 1) / 2;
        while e > 0 {
            if e & 1 == 1 {
                s = s * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        let chi_p: i8 = if s == 1 { 1 } else { -1 };
        if self.n.is_multiple_of(2) {
            1
        } else {
            chi_p
        }
    }

    // ---- Slice kernels (allocation-free; used by the table builders) ----

    pub(crate) fn add_slices(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        for i in 0..self.n {
            let s = a[i] + b[i];
            out[i] = if s >= self.p { s - self.p } else { s };
        }
    }

    /// out = a * b mod modulus. `tmp` needs length >= 2n; `out` length n.
    pub(crate) fn mul_slices(&self, a: &[u64], b: &[u64], out: &mut [u64], tmp: &mut [u64]) {
        let n = self.n;
        if n == 1 {
            out[0] = a[0] * b[0] % self.p;
            return;
        }
        for k in 0..2 * n - 1 {
            let lo = k.saturating_sub(n - 1);
            let hi = k.min(n - 1);
            let mut acc: u128 = 0;
            for i in lo..=hi {
                acc += a[i] as u128 * b[k - i] as u128;
            }
            tmp[k] = (acc % self.p as u128) as u64;
        }
        tmp[2 * n - 1] = 0;
        for i in (n..=2 * n - 2).rev() {
            let c = tmp[i];
            if c != 0 {
                tmp[i] = 0;
                for j in 0..n {
                    tmp[i - n + j] = (tmp[i - n + j] + c * self.neg_mod[j]) % self.p;
                }
            }
        }
        out[..n].copy_from_slice(&tmp[..n]);
    }

    pub(crate) fn index_of_slice(&self, coords: &[u64]) -> u64 {
        let mut idx = 0u64;
        for &c in coords.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }
}
