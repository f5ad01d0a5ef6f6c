//! Arithmetic in GF(p^m) for odd p, the regular permutation representation of
//! its additive group, and the multiplication-table generalized Hadamard
//! matrix.
//!
//! Elements are identified with their index in a fixed enumeration: the
//! coefficient vector `(c_0, …, c_{m-1})` of `c_0 + c_1 x + … + c_{m-1} x^{m-1}`
//! read as a base-`p` numeral with `c_0` most significant. Zero is index 0.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{kronecker, shift, IntMatrix};

pub const MAX_FIELD_ORDER: usize = 1 << 16;

/// An element of a [`FiniteField`], stored as its enumeration index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct FieldElement(u32);

impl FieldElement {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteField {
    p: u32,
    m: u32,
    q: usize,
    /// Monic modulus, lowest degree first, length `m + 1`.
    modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `q = p^m` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut m = 0;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

/// Remainder of `num` modulo monic-or-not `den` over F_p (both low degree first).
fn poly_rem(num: &[u32], den: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = num.to_vec();
    let dd = den.len() - 1;
    let lead_inv = mod_inv(den[dd], p);
    while r.len() > dd {
        let top = *r.last().unwrap();
        if top != 0 {
            let factor = (top as u64 * lead_inv as u64 % p as u64) as u32;
            let shift = r.len() - 1 - dd;
            for (i, &c) in den.iter().enumerate() {
                let sub = (factor as u64 * c as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn digits(mut index: usize, p: u32, m: u32) -> Vec<u32> {
    let mut out = vec![0; m as usize];
    for slot in out.iter_mut().rev() {
        *slot = (index % p as usize) as u32;
        index /= p as usize;
    }
    out
}

fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let degree = poly.len() - 1;
    for d in 1..=degree / 2 {
        let count = (p as usize).pow(d as u32);
        for index in 0..count {
            let mut divisor = digits(index, p, d as u32);
            divisor.push(1);
            if poly_rem(poly, &divisor, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// GF(p^m) with the lexicographically smallest monic irreducible modulus.
    pub fn new(p: u32, m: u32) -> Result<Self> {
        if p == 2 || !is_prime(p as u64) {
            return Err(Error::InvalidArgument(format!("{p} is not an odd prime")));
        }
        if m == 0 {
            return Err(Error::InvalidArgument("extension degree must be positive".into()));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_FIELD_ORDER as u64)
            .ok_or_else(|| Error::SizeBound(format!("{p}^{m} exceeds {MAX_FIELD_ORDER}")))?
            as usize;
        let modulus = (0..q)
            .map(|index| {
                let mut poly = digits(index, p, m);
                poly.push(1);
                poly
            })
            .find(|poly| is_irreducible(poly, p))
            .expect("an irreducible polynomial of every degree exists");
        Ok(Self { p, m, q, modulus })
    }

    /// GF(q) for an odd prime power `q`.
    pub fn of_order(q: u64) -> Result<Self> {
        let (p, m) = prime_power(q)
            .ok_or_else(|| Error::InvalidArgument(format!("{q} is not a prime power")))?;
        if q > MAX_FIELD_ORDER as u64 {
            return Err(Error::SizeBound(format!("{q} exceeds {MAX_FIELD_ORDER}")));
        }
        Self::new(p, m)
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        let residue = k.rem_euclid(self.p as i64) as usize;
        FieldElement((residue * self.q / self.p as usize) as u32)
    }

    pub fn element(&self, index: usize) -> Result<FieldElement> {
        if index < self.q {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::InvalidArgument(format!(
                "element index {index} out of range for GF({})",
                self.q
            )))
        }
    }

    pub fn from_coefficients(&self, coefficients: &[u32]) -> Result<FieldElement> {
        if coefficients.len() != self.m as usize || coefficients.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!(
                "{coefficients:?} is not a coefficient vector of GF({})",
                self.q
            )));
        }
        let index = coefficients
            .iter()
            .fold(0usize, |acc, &c| acc * self.p as usize + c as usize);
        Ok(FieldElement(index as u32))
    }

    pub fn coefficients(&self, a: FieldElement) -> Vec<u32> {
        digits(a.index(), self.p, self.m)
    }

    /// All elements in enumeration order, zero first.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q as u32).map(FieldElement)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as usize;
        let (mut x, mut y) = (a.index(), b.index());
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out as u32)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.p as usize;
        let mut x = a.index();
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.m {
            out += ((p - x % p) % p) * place;
            x /= p;
            place *= p;
        }
        FieldElement(out as u32)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (x, y) = (self.coefficients(a), self.coefficients(b));
        let p = self.p as u64;
        let mut product = vec![0u32; 2 * self.m as usize - 1];
        for (i, &xi) in x.iter().enumerate() {
            for (j, &yj) in y.iter().enumerate() {
                product[i + j] = ((product[i + j] as u64 + xi as u64 * yj as u64) % p) as u32;
            }
        }
        let mut reduced = poly_rem(&product, &self.modulus, self.p);
        reduced.resize(self.m as usize, 0);
        self.from_coefficients(&reduced)
            .expect("reduced product is a coefficient vector")
    }

    pub fn pow(&self, a: FieldElement, mut e: u64) -> FieldElement {
        let mut result = self.one();
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// Nonzero squares, as a membership table indexed by element.
    pub fn square_table(&self) -> Vec<bool> {
        let mut squares = vec![false; self.q];
        for a in self.elements().skip(1) {
            squares[self.mul(a, a).index()] = true;
        }
        squares
    }

    /// The permutation matrix `⊗_i U^{c_i}` of the additive translation by `a`,
    /// where `U` is the forward shift of order `p`.
    pub fn rep(&self, a: FieldElement) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.q);
        for j in self.elements() {
            m.set(j.index(), self.add(j, a).index(), 1);
        }
        m
    }

    /// Same matrix as [`rep`](Self::rep), assembled literally as a Kronecker
    /// product of shift powers.
    pub fn rep_by_kronecker(&self, a: FieldElement) -> IntMatrix {
        let u = shift(self.p as usize);
        self.coefficients(a)
            .into_iter()
            .map(|c| {
                (0..c).fold(IntMatrix::identity(self.p as usize), |acc, _| {
                    acc.mul(&u).expect("permutation product")
                })
            })
            .reduce(|acc, factor| kronecker(&acc, &factor).expect("small kronecker"))
            .expect("degree is positive")
    }
}

/// `H_q`: entry `(α, β)` is `α·β`, indexed in enumeration order.
pub fn multiplication_table(field: &FiniteField) -> Vec<Vec<FieldElement>> {
    field
        .elements()
        .map(|a| field.elements().map(|b| field.mul(a, b)).collect())
        .collect()
}

/// Whether every pair of distinct rows differs by each element of the
/// additive group exactly `lambda` times.
pub fn is_generalized_hadamard(
    field: &FiniteField,
    h: &[Vec<FieldElement>],
    group_order: usize,
    lambda: usize,
) -> Result<bool> {
    if group_order != field.order() {
        return Err(Error::InvalidArgument(format!(
            "group order {group_order} differs from field order {}",
            field.order()
        )));
    }
    let size = group_order * lambda;
    if h.len() != size || h.iter().any(|row| row.len() != size) {
        return Err(Error::Dimension(format!(
            "generalized Hadamard matrix must be {size}x{size}"
        )));
    }
    let mut counts = vec![0usize; group_order];
    for i in 0..size {
        for k in i + 1..size {
            counts.iter_mut().for_each(|c| *c = 0);
            for (&x, &y) in h[i].iter().zip(&h[k]) {
                counts[field.sub(x, y).index()] += 1;
            }
            if counts.iter().any(|&c| c != lambda) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
