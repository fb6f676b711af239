//! Finite fields `F_{p^e}` in polynomial-basis representation.
//!
//! An element is stored as the integer `a_0 + a_1 p + ... + a_{e-1} p^{e-1}`
//! of its coefficients over `F_p`; that integer is also the external encoding
//! used by every file format in this crate. Multiplication goes through
//! log/antilog tables built once per field, so fields are capped in size
//! (see [`DEFAULT_MAX_ORDER`]).
//!
//! The modulus is the monic irreducible polynomial of degree `e` with the
//! smallest coefficient encoding, so two calls to [`make_field`] with the same
//! arguments always produce identical representations.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest field order accepted by [`make_field`].
pub const DEFAULT_MAX_ORDER: u64 = 1 << 20;

/// An element of some [`Field`], identified by its integer encoding.
///
/// Elements do not carry their field; operations go through the owning
/// [`Field`], which checks membership where it matters.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Wraps an encoding without range checking. Use [`Field::element`] for
    /// untrusted input.
    pub const fn from_encoding(value: u32) -> Self {
        FieldElement(value)
    }

    pub const fn encoding(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A concrete finite field `F_{p^e}`.
pub struct Field {
    p: u32,
    e: u32,
    order: u32,
    /// Coefficients `a_0..=a_e` of the monic modulus, low degree first.
    modulus: Vec<u32>,
    primitive: FieldElement,
    /// `exp[i] = g^i` for `i < 2(order-1)`, doubled to skip a modulo in `mul`.
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus {:?})", self.p, self.e, self.modulus)
    }
}

/// Builds `F_{p^e}` with the default size cap.
pub fn make_field(p: u32, e: u32) -> Result<Arc<Field>> {
    make_field_with_limit(p, e, DEFAULT_MAX_ORDER)
}

pub fn make_field_with_limit(p: u32, e: u32, max_order: u64) -> Result<Arc<Field>> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("characteristic {p} is not prime")));
    }
    if e == 0 {
        return Err(Error::invalid("extension degree must be at least 1"));
    }
    let order = (p as u64)
        .checked_pow(e)
        .filter(|&o| o <= max_order && o <= u32::MAX as u64)
        .ok_or_else(|| {
            Error::invalid(format!("field order {p}^{e} exceeds the limit {max_order}"))
        })? as u32;

    let modulus = smallest_irreducible(p, e);
    let mut field = Field {
        p,
        e,
        order,
        modulus,
        primitive: FieldElement::ONE,
        exp: Vec::new(),
        log: Vec::new(),
    };
    field.build_tables();
    Ok(Arc::new(field))
}

impl Field {
    fn build_tables(&mut self) {
        let q1 = self.order - 1;
        let factors = prime_factors(q1 as u64);
        let primitive = (1..self.order)
            .map(FieldElement)
            .find(|&g| {
                factors
                    .iter()
                    .all(|&r| self.pow_slow(g, q1 as u64 / r) != FieldElement::ONE)
            })
            .expect("multiplicative group of a finite field is cyclic");
        self.primitive = primitive;

        let mut exp = vec![0u32; 2 * q1 as usize];
        let mut log = vec![0u32; self.order as usize];
        let mut acc = FieldElement::ONE;
        for i in 0..q1 {
            exp[i as usize] = acc.0;
            exp[(i + q1) as usize] = acc.0;
            log[acc.0 as usize] = i;
            acc = self.mul_slow(acc, primitive);
        }
        debug_assert_eq!(acc, FieldElement::ONE);
        self.exp = exp;
        self.log = log;
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree over the prime field.
    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// Monic modulus coefficients, low degree first (length `degree + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The primitive element used for the log tables.
    pub fn primitive(&self) -> FieldElement {
        self.primitive
    }

    /// The class of the indeterminate `x`; it generates the field over `F_p`.
    /// In a prime field this is just the element `0`.
    pub fn generator(&self) -> FieldElement {
        if self.e == 1 {
            FieldElement::ZERO
        } else {
            FieldElement(self.p)
        }
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.order
    }

    pub fn element(&self, encoding: u32) -> Result<FieldElement> {
        if encoding < self.order {
            Ok(FieldElement(encoding))
        } else {
            Err(Error::invalid(format!(
                "encoding {encoding} is out of range for a field of order {}",
                self.order
            )))
        }
    }

    /// Image of the integer `k` in the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        FieldElement(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order).map(FieldElement)
    }

    /// Coefficients over `F_p`, low degree first.
    pub fn digits(&self, a: FieldElement) -> Vec<u32> {
        let mut v = a.0;
        (0..self.e)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> FieldElement {
        debug_assert!(digits.len() <= self.e as usize);
        FieldElement(
            digits
                .iter()
                .rev()
                .fold(0, |acc, &d| acc * self.p + d % self.p),
        )
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.p == 2 {
            return FieldElement(a.0 ^ b.0);
        }
        if self.e == 1 {
            return FieldElement((a.0 + b.0) % self.p);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            place *= self.p;
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            place *= self.p;
            x /= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let i = self.log[a.0 as usize] + self.log[b.0 as usize];
        FieldElement(self.exp[i as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let q1 = self.order - 1;
        let l = self.log[a.0 as usize];
        Some(FieldElement(self.exp[((q1 - l) % q1) as usize]))
    }

    /// # Panics
    /// Panics if `b` is zero.
    pub fn div(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul(a, self.inv(b).expect("division by zero"))
    }

    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        if k == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let q1 = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        FieldElement(self.exp[((l * (k % q1)) % q1) as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        if a.0 == 0 {
            return None;
        }
        let q1 = (self.order - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Some(q1 / gcd(q1, l))
    }

    /// Degree `d` of the subfield of order `t`, if `F_t` is a subfield.
    pub fn subfield_degree(&self, t: u64) -> Option<u32> {
        let mut d = 0u32;
        let mut acc = 1u64;
        while acc < t {
            acc *= self.p as u64;
            d += 1;
        }
        (acc == t && d >= 1 && self.e.is_multiple_of(d)).then_some(d)
    }

    fn require_subfield(&self, t: u64) -> Result<u32> {
        self.subfield_degree(t).ok_or_else(|| {
            Error::invalid(format!("{t} is not the order of a subfield of {self:?}"))
        })
    }

    /// The `t`-Frobenius `x -> x^t`.
    pub fn frobenius(&self, x: FieldElement, t: u64) -> Result<FieldElement> {
        self.require_subfield(t)?;
        Ok(self.pow(x, t))
    }

    /// `sum_{i<m} x^{t^i}` with `t^m = |F|`, returned as an element of this
    /// field (it is fixed by the `t`-Frobenius).
    pub fn trace_over(&self, x: FieldElement, t: u64) -> Result<FieldElement> {
        let d = self.require_subfield(t)?;
        let m = self.e / d;
        let mut acc = FieldElement::ZERO;
        let mut y = x;
        for _ in 0..m {
            acc = self.add(acc, y);
            y = self.pow(y, t);
        }
        Ok(acc)
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.p as u64;
        let (da, db) = (self.digits(a), self.digits(b));
        let e = self.e as usize;
        let mut prod = vec![0u64; 2 * e];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        // reduce by the monic modulus from the top
        for k in (e..2 * e).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            for (i, &m) in self.modulus[..e].iter().enumerate() {
                prod[k - e + i] = (prod[k - e + i] + (p - c) * m as u64) % p;
            }
        }
        let low: Vec<u32> = prod[..e].iter().map(|&d| d as u32).collect();
        self.from_digits(&low)
    }

    fn pow_slow(&self, a: FieldElement, mut k: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            k >>= 1;
        }
        acc
    }
}

/// An embedding `F_t -> F_{t^m}` between two concrete fields of the same
/// characteristic, together with a fixed `F_t`-basis of the big field.
///
/// The small field's generator is sent to the root of the small modulus in the
/// big field with the smallest encoding. The basis is `1, g, ..., g^{m-1}` with
/// `g` the big field's [`Field::generator`].
pub struct SubfieldEmbedding {
    small: Arc<Field>,
    big: Arc<Field>,
    root: FieldElement,
    degree: u32,
    image: Vec<FieldElement>,
    preimage: HashMap<FieldElement, FieldElement>,
    basis: Vec<FieldElement>,
    /// Inverse over `F_p` of the map from basis coordinates to big-field digits.
    coords: Vec<Vec<u32>>,
}

impl fmt::Debug for SubfieldEmbedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubfieldEmbedding")
            .field("small", &self.small)
            .field("big", &self.big)
            .field("root", &self.root)
            .finish()
    }
}

impl SubfieldEmbedding {
    pub fn new(small: Arc<Field>, big: Arc<Field>) -> Result<Self> {
        if small.p != big.p || !big.e.is_multiple_of(small.e) {
            return Err(Error::FieldMismatch(format!(
                "{small:?} is not a subfield of {big:?}"
            )));
        }
        let degree = big.e / small.e;
        let root = big
            .elements()
            .find(|&x| {
                let mut acc = FieldElement::ZERO;
                for &c in small.modulus.iter().rev() {
                    acc = big.add(big.mul(acc, x), FieldElement(c));
                }
                acc.is_zero()
            })
            .ok_or_else(|| Error::FieldMismatch("small modulus has no root".into()))?;

        let image: Vec<FieldElement> = small
            .elements()
            .map(|a| {
                small
                    .digits(a)
                    .iter()
                    .rev()
                    .fold(FieldElement::ZERO, |acc, &d| {
                        big.add(big.mul(acc, root), FieldElement(d))
                    })
            })
            .collect();
        let preimage = image
            .iter()
            .enumerate()
            .map(|(i, &x)| (x, FieldElement(i as u32)))
            .collect();

        let gen = if big.e == 1 {
            FieldElement::ONE
        } else {
            big.generator()
        };
        let basis: Vec<FieldElement> = (0..degree).map(|l| big.pow(gen, l as u64)).collect();

        // column (l, a) of the F_p-matrix holds the digits of root^a * g^l
        let e = big.e as usize;
        let mut cols = Vec::with_capacity(e);
        for &b in &basis {
            for a in 0..small.e {
                let eps = image[small.pow(small.generator_or_one(), a as u64).0 as usize];
                cols.push(big.digits(big.mul(eps, b)));
            }
        }
        let matrix: Vec<Vec<u32>> = (0..e)
            .map(|r| cols.iter().map(|c| c[r]).collect())
            .collect();
        let coords = invert_mod_p(&matrix, big.p)
            .ok_or_else(|| Error::Inconsistent("subfield basis is not independent".into()))?;

        Ok(SubfieldEmbedding {
            small,
            big,
            root,
            degree,
            image,
            preimage,
            basis,
            coords,
        })
    }

    pub fn small(&self) -> &Arc<Field> {
        &self.small
    }

    pub fn big(&self) -> &Arc<Field> {
        &self.big
    }

    /// Image of the small field's generator.
    pub fn root(&self) -> FieldElement {
        self.root
    }

    /// `m` with `|big| = |small|^m`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Order `t` of the small field.
    pub fn t(&self) -> u64 {
        self.small.order as u64
    }

    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn embed(&self, a: FieldElement) -> Result<FieldElement> {
        self.image
            .get(a.0 as usize)
            .copied()
            .ok_or_else(|| Error::FieldMismatch(format!("{a} is not in {:?}", self.small)))
    }

    /// Preimage of a big-field element that lies in the image of the embedding.
    pub fn project(&self, x: FieldElement) -> Option<FieldElement> {
        self.preimage.get(&x).copied()
    }

    /// Trace from the big field down to the small one.
    pub fn trace(&self, x: FieldElement) -> FieldElement {
        let tr = self
            .big
            .trace_over(x, self.t())
            .expect("embedding degree divides the big degree");
        self.project(tr).expect("trace lies in the subfield")
    }

    /// Coordinates of `x` in the fixed basis, as small-field elements.
    pub fn decompose(&self, x: FieldElement) -> Vec<FieldElement> {
        let p = self.big.p as u64;
        let digits = self.big.digits(x);
        let flat: Vec<u32> = self
            .coords
            .iter()
            .map(|row| {
                (row.iter()
                    .zip(&digits)
                    .map(|(&a, &b)| a as u64 * b as u64)
                    .sum::<u64>()
                    % p) as u32
            })
            .collect();
        flat.chunks(self.small.e as usize)
            .map(|c| self.small.from_digits(c))
            .collect()
    }

    pub fn recompose(&self, coords: &[FieldElement]) -> FieldElement {
        coords
            .iter()
            .zip(&self.basis)
            .fold(FieldElement::ZERO, |acc, (&c, &b)| {
                self.big.add(acc, self.big.mul(self.image[c.0 as usize], b))
            })
    }
}

impl Field {
    fn generator_or_one(&self) -> FieldElement {
        if self.e == 1 {
            FieldElement::ONE
        } else {
            self.generator()
        }
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut base, mut k, mut acc) = (a % p, p - 2, 1u64);
    while k > 0 {
        if k & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        k >>= 1;
    }
    acc
}

fn invert_mod_p(matrix: &[Vec<u32>], p: u32) -> Option<Vec<Vec<u32>>> {
    let n = matrix.len();
    let p = p as u64;
    let mut a: Vec<Vec<u64>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<u64> = row.iter().map(|&x| x as u64).collect();
            r.extend((0..n).map(|j| u64::from(i == j)));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, piv);
        let s = inv_mod(a[col][col], p);
        for x in a[col].iter_mut() {
            *x = *x * s % p;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r != col && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
    }
    Some(
        a.into_iter()
            .map(|r| r[n..].iter().map(|&x| x as u32).collect())
            .collect(),
    )
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p = p as u64;
    let mut r: Vec<u64> = a.iter().map(|&x| x as u64).collect();
    let dm = m.len() - 1;
    while r.len() > dm {
        let c = r.pop().unwrap();
        if c != 0 {
            let off = r.len() - dm;
            for (i, &mi) in m[..dm].iter().enumerate() {
                r[off + i] = (r[off + i] + (p - c) * mi as u64) % p;
            }
        }
    }
    r.into_iter().map(|x| x as u32).collect()
}

/// Monic polynomial of degree `deg` whose lower coefficients encode `index`.
fn monic_from_index(mut index: u64, deg: u32, p: u32) -> Vec<u32> {
    let mut coeffs: Vec<u32> = (0..deg)
        .map(|_| {
            let d = (index % p as u64) as u32;
            index /= p as u64;
            d
        })
        .collect();
    coeffs.push(1);
    coeffs
}

fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = (f.len() - 1) as u32;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d);
        for idx in 0..count {
            let g = monic_from_index(idx, d, p);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let count = (p as u64).pow(e);
    (0..count)
        .map(|idx| monic_from_index(idx, e, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(2, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 2);
    }

    #[test]
    fn quadratic_over_f2() {
        let f = make_field(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn modulus_choice_is_smallest_encoding() {
        // x^4 + x + 1 is the smallest irreducible quartic over F_2
        assert_eq!(make_field(2, 4).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        // x^2 + 1 is irreducible over F_3 and has encoding 1
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn every_element_of_f16_is_fixed_by_the_16th_power() {
        let f = make_field(2, 4).unwrap();
        for a in f.elements() {
            assert_eq!(f.pow(a, 16), a);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(matches!(make_field(4, 2), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_field(2, 0), Err(Error::InvalidParameter(_))));
        assert!(matches!(make_field(2, 21), Err(Error::InvalidParameter(_))));
        assert!(make_field_with_limit(2, 21, 1 << 21).is_ok());
    }

    #[test]
    fn field_axioms_on_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, e) in [(2, 4), (3, 3), (5, 2), (2, 8), (7, 1)] {
            let f = make_field(p, e).unwrap();
            let q = f.order();
            for _ in 0..1000 {
                let a = FieldElement(rng.gen_range(0..q));
                let b = FieldElement(rng.gen_range(0..q));
                let c = FieldElement(rng.gen_range(0..q));
                assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                assert_eq!(f.add(a, f.neg(a)), FieldElement::ZERO);
                assert_eq!(f.mul(a, b), f.mul_slow(a, b));
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), FieldElement::ONE);
                    assert_eq!(f.pow(a, q as u64 - 1), FieldElement::ONE);
                }
            }
        }
    }

    #[test]
    fn f4_generator_embeds_with_order_three() {
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let emb = SubfieldEmbedding::new(f4.clone(), f16.clone()).unwrap();
        assert_eq!(emb.embed(FieldElement::ZERO).unwrap(), FieldElement::ZERO);
        assert_eq!(emb.embed(FieldElement::ONE).unwrap(), FieldElement::ONE);
        let g = emb.embed(f4.generator()).unwrap();
        assert_ne!(g, FieldElement::ONE);
        assert_eq!(f16.pow(g, 3), FieldElement::ONE);
        assert_eq!(f16.multiplicative_order(g), Some(3));
        assert!(emb.embed(FieldElement(4)).is_err());
    }

    #[test]
    fn embedding_is_a_homomorphism_fixed_by_frobenius() {
        for (p, d, e) in [(2, 2, 4), (2, 1, 4), (3, 1, 2), (2, 2, 6), (2, 4, 8)] {
            let small = make_field(p, d).unwrap();
            let big = make_field(p, e).unwrap();
            let emb = SubfieldEmbedding::new(small.clone(), big.clone()).unwrap();
            let t = small.order() as u64;
            for a in small.elements() {
                let ea = emb.embed(a).unwrap();
                assert_eq!(big.pow(ea, t), ea);
                for b in small.elements() {
                    let eb = emb.embed(b).unwrap();
                    assert_eq!(emb.embed(small.add(a, b)).unwrap(), big.add(ea, eb));
                    assert_eq!(emb.embed(small.mul(a, b)).unwrap(), big.mul(ea, eb));
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        let f2 = make_field(2, 1).unwrap();
        let f4 = make_field(2, 2).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let emb = SubfieldEmbedding::new(f2.clone(), f16.clone()).unwrap();
        assert_eq!(emb.trace(FieldElement::ZERO), FieldElement::ZERO);
        assert_eq!(emb.trace(FieldElement::ONE), FieldElement::ZERO);

        // w = x in F_4 = F_2[x]/(x^2+x+1): w + w^2 = 1
        let emb4 = SubfieldEmbedding::new(f2, f4.clone()).unwrap();
        let w = f4.generator();
        assert_eq!(f4.mul(w, w), f4.add(w, FieldElement::ONE));
        assert_eq!(emb4.trace(w), FieldElement::ONE);
    }

    #[test]
    fn trace_is_surjective_linear_and_galois_invariant() {
        for (d, e) in [(1, 4), (2, 4), (1, 3), (3, 6)] {
            let small = make_field(2, d).unwrap();
            let big = make_field(2, e).unwrap();
            let emb = SubfieldEmbedding::new(small.clone(), big.clone()).unwrap();
            let t = emb.t();
            let mut hit = vec![false; small.order() as usize];
            for x in big.elements() {
                let tr = emb.trace(x);
                hit[tr.encoding() as usize] = true;
                assert_eq!(emb.trace(big.pow(x, t)), tr);
                for a in small.elements() {
                    let ax = big.mul(emb.embed(a).unwrap(), x);
                    assert_eq!(emb.trace(ax), small.mul(a, tr));
                }
            }
            assert!(hit.iter().all(|&h| h));
        }
        let f3 = make_field(3, 1).unwrap();
        let f9 = make_field(3, 2).unwrap();
        let emb = SubfieldEmbedding::new(f3, f9.clone()).unwrap();
        for x in f9.elements() {
            for y in f9.elements() {
                assert_eq!(
                    emb.trace(f9.add(x, y)),
                    emb.small().add(emb.trace(x), emb.trace(y))
                );
            }
        }
    }

    #[test]
    fn frobenius_properties() {
        let f = make_field(2, 4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for t in [2u64, 4, 16] {
            let m = 4 / f.subfield_degree(t).unwrap();
            let mut fixed = 0;
            for x in f.elements() {
                let mut y = x;
                for _ in 0..m {
                    y = f.frobenius(y, t).unwrap();
                }
                assert_eq!(y, x);
                if f.frobenius(x, t).unwrap() == x {
                    fixed += 1;
                }
            }
            assert_eq!(fixed, t);
        }
        for _ in 0..100 {
            let a = FieldElement(rng.gen_range(0..16));
            let b = FieldElement(rng.gen_range(0..16));
            assert_eq!(f.pow(f.add(a, b), 2), f.add(f.pow(a, 2), f.pow(b, 2)));
            assert_eq!(f.pow(f.mul(a, b), 2), f.mul(f.pow(a, 2), f.pow(b, 2)));
        }
        assert_eq!(
            f.frobenius(FieldElement::ONE, 2).unwrap(),
            FieldElement::ONE
        );
        assert!(f.frobenius(FieldElement::ONE, 8).is_err());
        assert!(f.frobenius(FieldElement::ONE, 3).is_err());
    }

    #[test]
    fn frobenius_of_degree_times_is_identity_in_odd_characteristic() {
        let f = make_field(3, 4).unwrap();
        for x in f.elements() {
            let mut y = x;
            for _ in 0..2 {
                y = f.frobenius(y, 9).unwrap();
            }
            assert_eq!(y, x);
        }
    }

    #[test]
    fn decompose_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (p, d, e) in [(2, 1, 4), (2, 2, 4), (3, 1, 3), (2, 2, 8), (5, 1, 2)] {
            let small = make_field(p, d).unwrap();
            let big = make_field(p, e).unwrap();
            let emb = SubfieldEmbedding::new(small.clone(), big.clone()).unwrap();
            let m = emb.degree() as usize;
            assert_eq!(
                emb.decompose(FieldElement::ZERO),
                vec![FieldElement::ZERO; m]
            );
            for a in small.elements() {
                let mut expect = vec![FieldElement::ZERO; m];
                expect[0] = a;
                assert_eq!(emb.decompose(emb.embed(a).unwrap()), expect);
            }
            for _ in 0..200 {
                let x = FieldElement(rng.gen_range(0..big.order()));
                let y = FieldElement(rng.gen_range(0..big.order()));
                assert_eq!(emb.recompose(&emb.decompose(x)), x);
                let sum: Vec<_> = emb
                    .decompose(x)
                    .iter()
                    .zip(emb.decompose(y))
                    .map(|(&a, b)| small.add(a, b))
                    .collect();
                assert_eq!(emb.decompose(big.add(x, y)), sum);
            }
        }
    }

    #[test]
    fn embedding_rejects_non_subfields() {
        let f8 = make_field(2, 3).unwrap();
        let f16 = make_field(2, 4).unwrap();
        let f9 = make_field(3, 2).unwrap();
        assert!(SubfieldEmbedding::new(f8, f16.clone()).is_err());
        assert!(SubfieldEmbedding::new(f9, f16).is_err());
    }
}
