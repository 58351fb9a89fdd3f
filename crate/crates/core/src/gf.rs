//! Arithmetic in GF(q^h) for prime `q`, and the Bose–Chowla B_h-set built
//! from discrete logarithms in that field.
//!
//! Polynomials are coefficient vectors, lowest degree first. Field elements
//! are reduced modulo a monic primitive polynomial, so the class `θ` of the
//! indeterminate generates the multiplicative group.

use std::collections::HashSet;

use serde::Serialize;
use thiserror::Error;

use crate::numtheory::{is_prime, mod_inverse, prime_factors, PrimeModulus};

/// Largest field order accepted (`q^h <= 2^20`).
pub const FIELD_ORDER_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("extension degree {0} is unsupported (need h >= 2)")]
    InvalidDegree(usize),
    #[error("field of order {q}^{h} exceeds the cap of {FIELD_ORDER_CAP} elements")]
    TooLarge { q: u64, h: usize },
    #[error("modulus polynomial must be monic of degree h with coefficients below q")]
    BadModulus,
    #[error("modulus polynomial is reducible")]
    NotIrreducible,
    #[error("modulus polynomial is not primitive")]
    NotPrimitive,
}

/// An element of GF(q^h): exactly `h` coefficients in `0..q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct FieldElement {
    pub coeffs: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    pub q: u64,
    pub h: usize,
    /// `h + 1` coefficients, lowest first, last one equal to 1.
    pub modulus_poly: Vec<u64>,
}

fn field_order(q: u64, h: usize) -> Result<u64, GfError> {
    let too_large = GfError::TooLarge { q, h };
    let order = u32::try_from(h)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .ok_or(too_large.clone())?;
    if order > FIELD_ORDER_CAP {
        return Err(too_large);
    }
    Ok(order)
}

fn check_params(q: u64, h: usize) -> Result<u64, GfError> {
    if h < 2 {
        return Err(GfError::InvalidDegree(h));
    }
    if !is_prime(q) {
        return Err(GfError::NotPrime(q));
    }
    field_order(q, h)
}

/// Builds GF(q^h) over the lexicographically smallest monic primitive
/// polynomial, ordering `x^h + c_{h-1} x^{h-1} + ... + c_0` by the
/// coefficient sequence `(c_{h-1}, ..., c_0)`.
pub fn field_build(q: u64, h: usize) -> Result<FieldSpec, GfError> {
    let order = check_params(q, h)?;
    for idx in 0..order {
        let mut poly = digits(idx, q, h);
        poly.push(1);
        if poly[0] == 0 {
            continue;
        }
        let spec = FieldSpec {
            q,
            h,
            modulus_poly: poly,
        };
        if spec.theta_is_generator() {
            debug_assert!(is_irreducible(&spec.modulus_poly, q));
            return Ok(spec);
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}

fn digits(mut idx: u64, q: u64, h: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(h + 1);
    for _ in 0..h {
        out.push(idx % q);
        idx /= q;
    }
    out
}

impl FieldSpec {
    /// Wraps a caller-supplied modulus after checking it is irreducible and
    /// primitive.
    pub fn from_modulus(q: u64, modulus_poly: Vec<u64>) -> Result<Self, GfError> {
        let h = modulus_poly.len().saturating_sub(1);
        check_params(q, h)?;
        if modulus_poly[h] != 1 || modulus_poly.iter().any(|&c| c >= q) {
            return Err(GfError::BadModulus);
        }
        if !is_irreducible(&modulus_poly, q) {
            return Err(GfError::NotIrreducible);
        }
        let spec = Self { q, h, modulus_poly };
        if !spec.theta_is_generator() {
            return Err(GfError::NotPrimitive);
        }
        Ok(spec)
    }

    pub fn order(&self) -> u64 {
        self.q.pow(self.h as u32)
    }

    fn theta_is_generator(&self) -> bool {
        let group = self.order() - 1;
        let theta = self.theta();
        let one = self.one();
        self.pow(&theta, group) == one
            && prime_factors(group)
                .into_iter()
                .all(|l| self.pow(&theta, group / l) != one)
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.h],
        }
    }

    pub fn one(&self) -> FieldElement {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = c % self.q;
        e
    }

    /// The class of the indeterminate.
    pub fn theta(&self) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[1] = 1;
        e
    }

    /// Packs an element as the base-`q` integer with `c_0` least significant.
    pub fn to_index(&self, e: &FieldElement) -> u64 {
        e.coeffs.iter().rev().fold(0, |acc, &c| acc * self.q + c)
    }

    pub fn from_index(&self, idx: u64) -> FieldElement {
        FieldElement {
            coeffs: digits(idx, self.q, self.h),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| (x + y) % self.q)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.q - x) % self.q).collect();
        FieldElement { coeffs }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let (q, h) = (self.q, self.h);
        let mut prod = vec![0u64; 2 * h - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % q;
            }
        }
        // reduce top-down using x^h = -(c_0 + ... + c_{h-1} x^{h-1})
        for d in (h..prod.len()).rev() {
            let lead = prod[d];
            if lead == 0 {
                continue;
            }
            prod[d] = 0;
            for k in 0..h {
                let sub = lead * self.modulus_poly[k] % q;
                prod[d - h + k] = (prod[d - h + k] + q - sub) % q;
            }
        }
        prod.truncate(h);
        FieldElement { coeffs: prod }
    }

    fn mul_by_theta(&self, a: &FieldElement) -> FieldElement {
        let (q, h) = (self.q, self.h);
        let lead = a.coeffs[h - 1];
        let mut coeffs = Vec::with_capacity(h);
        coeffs.push(0);
        coeffs.extend_from_slice(&a.coeffs[..h - 1]);
        if lead != 0 {
            for (c, &m) in coeffs.iter_mut().zip(&self.modulus_poly) {
                *c = (*c + q - lead * m % q) % q;
            }
        }
        FieldElement { coeffs }
    }

    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
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
}

/// Discrete logarithms to base `θ`, stored densely by packed element index.
#[derive(Debug, Clone)]
pub struct DlogTable {
    logs: Vec<u32>,
    group_order: u64,
}

const NO_LOG: u32 = u32::MAX;

impl DlogTable {
    pub fn log(&self, field: &FieldSpec, e: &FieldElement) -> Option<u64> {
        match self.logs[field.to_index(e) as usize] {
            NO_LOG => None,
            k => Some(k as u64),
        }
    }

    /// Number of entries, always `q^h - 1`.
    pub fn len(&self) -> usize {
        self.group_order as usize
    }

    pub fn is_empty(&self) -> bool {
        self.group_order == 0
    }
}

/// One pass over `θ^0, θ^1, ..., θ^(q^h - 2)`.
pub fn discrete_log_table(field: &FieldSpec) -> DlogTable {
    let order = field.order();
    let mut logs = vec![NO_LOG; order as usize];
    let mut cur = field.one();
    for k in 0..order - 1 {
        let slot = &mut logs[field.to_index(&cur) as usize];
        assert_eq!(
            *slot, NO_LOG,
            "θ is not a generator of the multiplicative group"
        );
        *slot = k as u32;
        cur = field.mul_by_theta(&cur);
    }
    assert_eq!(cur, field.one());
    DlogTable {
        logs,
        group_order: order - 1,
    }
}

/// `q` residues modulo `q^h - 1` whose `h`-fold sums are pairwise distinct.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BhSet {
    pub q: u64,
    pub h: usize,
    pub modulus: u64,
    pub elements: Vec<u64>,
}

/// Bose–Chowla: `{ log_θ(θ + c) : c in GF(q) }`, sorted ascending.
pub fn bose_chowla_set(q: u64, h: usize) -> Result<BhSet, GfError> {
    let field = field_build(q, h)?;
    Ok(bose_chowla_from_field(&field))
}

pub fn bose_chowla_from_field(field: &FieldSpec) -> BhSet {
    let table = discrete_log_table(field);
    let theta = field.theta();
    let mut elements: Vec<u64> = (0..field.q)
        .map(|c| {
            let e = field.add(&theta, &field.constant(c));
            table.log(field, &e).expect("θ + c is nonzero for h >= 2")
        })
        .collect();
    elements.sort_unstable();
    BhSet {
        q: field.q,
        h: field.h,
        modulus: field.order() - 1,
        elements,
    }
}

/// Brute force: every size-`h` multiset of `elements` has a distinct sum
/// modulo `modulus`.
pub fn verify_bh(elements: &[u64], h: usize, modulus: u64) -> bool {
    let k = elements.len();
    if k == 0 || h == 0 {
        return true;
    }
    let mut seen = HashSet::new();
    // nondecreasing index tuples enumerate multisets exactly once
    let mut idx = vec![0usize; h];
    loop {
        let sum = idx.iter().fold(0u128, |acc, &i| {
            (acc + elements[i] as u128) % modulus as u128
        });
        if !seen.insert(sum) {
            return false;
        }
        let Some(pos) = idx.iter().rposition(|&i| i + 1 < k) else {
            return true;
        };
        let next = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = next;
        }
    }
}

// --- polynomial helpers over Z_q, used for the irreducibility check ---

fn trim(mut p: Vec<u64>) -> Vec<u64> {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn poly_rem(a: &[u64], m: &[u64], q: u64, pm: PrimeModulus) -> Vec<u64> {
    let mut r = trim(a.to_vec());
    let dm = m.len() - 1;
    let inv_lead = mod_inverse(m[dm], pm).expect("nonzero leading coefficient");
    while r.len() > dm {
        let dr = r.len() - 1;
        let factor = r[dr] * inv_lead % q;
        for k in 0..=dm {
            let sub = factor * m[k] % q;
            r[dr - dm + k] = (r[dr - dm + k] + q - sub) % q;
        }
        r = trim(r);
    }
    r
}

fn poly_mulmod(a: &[u64], b: &[u64], m: &[u64], q: u64, pm: PrimeModulus) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % q;
        }
    }
    poly_rem(&prod, m, q, pm)
}

fn poly_gcd(a: &[u64], b: &[u64], q: u64, pm: PrimeModulus) -> Vec<u64> {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = poly_rem(&a, &b, q, pm);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` of degree `h` is irreducible iff
/// `gcd(f, x^(q^i) - x) = 1` for `1 <= i <= h/2`.
pub fn is_irreducible(f: &[u64], q: u64) -> bool {
    let f = trim(f.to_vec());
    let Ok(pm) = PrimeModulus::new(q) else {
        return false;
    };
    let h = match f.len() {
        0 | 1 => return false,
        n => n - 1,
    };
    let x = poly_rem(&[0, 1], &f, q, pm);
    let mut frob = x.clone();
    for _ in 0..h / 2 {
        // frob <- frob^q mod f
        let mut acc = vec![1u64];
        let mut base = frob.clone();
        let mut e = q;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&acc, &base, &f, q, pm);
            }
            base = poly_mulmod(&base, &base, &f, q, pm);
            e >>= 1;
        }
        frob = acc;
        let mut diff = frob.clone();
        diff.resize(diff.len().max(2), 0);
        for (d, &xi) in diff.iter_mut().zip(&x) {
            *d = (*d + q - xi) % q;
        }
        if poly_gcd(&f, &diff, q, pm).len() > 1 {
            return false;
        }
    }
    true
}
