//! Sparse bivariate polynomials over `F_{q^r}` and their normal forms modulo
//! the ideal of the curve's rational points.
//!
//! The ideal is generated by
//!
//! ```text
//! g1 = X^u - (Y + Y^q + ... + Y^{q^{r-1}})
//! g2 = X^{u(q-1)+1} - X
//! ```
//!
//! Under the weighted order of [`MonomialOrder`] the leading terms are
//! `Y^{q^{r-1}}` and `X^{u(q-1)+1}`. They are coprime, so `{g1, g2}` is a
//! Gröbner basis and the normal form of a polynomial is its unique
//! representative supported on the footprint.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::curve::CurveSpec;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::monomial::{Monomial, MonomialOrder};

type Key = (u64, u64, u64);

fn monomial_of(key: &Key) -> Monomial {
    Monomial::new(key.2, key.1)
}

/// A finite sum of terms `c X^i Y^j` with nonzero `c`, kept sorted in the
/// monomial order so that equal polynomials have equal representations.
#[derive(Clone)]
pub struct SparsePolynomial {
    field: Arc<Field>,
    order: MonomialOrder,
    terms: BTreeMap<Key, FieldElement>,
}

impl PartialEq for SparsePolynomial {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.terms == other.terms
    }
}

impl Eq for SparsePolynomial {}

impl SparsePolynomial {
    pub fn zero(field: Arc<Field>, order: MonomialOrder) -> Self {
        SparsePolynomial {
            field,
            order,
            terms: BTreeMap::new(),
        }
    }

    /// The zero polynomial over the curve's field, ordered by the curve weights.
    pub fn zero_on(c: &CurveSpec) -> Self {
        Self::zero(c.field().clone(), MonomialOrder::of(c))
    }

    pub fn monomial_on(c: &CurveSpec, m: Monomial) -> Self {
        let mut f = Self::zero_on(c);
        f.add_term(m, FieldElement::ONE);
        f
    }

    pub fn from_terms(
        field: Arc<Field>,
        order: MonomialOrder,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let mut f = Self::zero(field, order);
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (Monomial, FieldElement)> + '_ {
        self.terms.iter().map(|(k, &c)| (monomial_of(k), c))
    }

    pub fn support(&self) -> impl DoubleEndedIterator<Item = Monomial> + '_ {
        self.terms.keys().map(monomial_of)
    }

    pub fn coefficient(&self, m: Monomial) -> FieldElement {
        self.terms
            .get(&self.order.key(m))
            .copied()
            .unwrap_or(FieldElement::ZERO)
    }

    pub fn leading_term(&self) -> Option<(Monomial, FieldElement)> {
        self.terms().next_back()
    }

    pub fn add_term(&mut self, m: Monomial, c: FieldElement) {
        add_into(&self.field, &mut self.terms, self.order.key(m), c);
    }

    pub fn add(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        out
    }

    pub fn sub(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, self.field.neg(c));
        }
        out
    }

    pub fn scale(&self, c: FieldElement) -> SparsePolynomial {
        SparsePolynomial::from_terms(
            self.field.clone(),
            self.order,
            self.terms().map(|(m, a)| (m, self.field.mul(a, c))),
        )
    }

    pub fn mul(&self, other: &SparsePolynomial) -> SparsePolynomial {
        let mut out = SparsePolynomial::zero(self.field.clone(), self.order);
        for (m, a) in self.terms() {
            for (k, b) in other.terms() {
                out.add_term(m * k, self.field.mul(a, b));
            }
        }
        out
    }

    pub fn evaluate(&self, x: FieldElement, y: FieldElement) -> FieldElement {
        let f = &self.field;
        self.terms().fold(FieldElement::ZERO, |acc, (m, c)| {
            f.add(acc, f.mul(c, f.mul(f.pow(x, m.i), f.pow(y, m.j))))
        })
    }

    /// `f^{(t)}`: coefficients raised to the `t`-th power and exponents
    /// multiplied by `t`, so that `f^{(t)}(P) = f(P)^t` at every point.
    pub fn frobenius_power(&self, t: u64) -> Result<SparsePolynomial> {
        if self.field.subfield_degree(t).is_none() {
            return Err(Error::invalid(format!(
                "{t} is not a subfield order of {:?}",
                self.field
            )));
        }
        Ok(SparsePolynomial::from_terms(
            self.field.clone(),
            self.order,
            self.terms().map(|(m, c)| (m.pow(t), self.field.pow(c, t))),
        ))
    }
}

fn add_into(field: &Field, terms: &mut BTreeMap<Key, FieldElement>, key: Key, c: FieldElement) {
    if c.is_zero() {
        return;
    }
    match terms.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let sum = field.add(*o.get(), c);
            if sum.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

impl fmt::Debug for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Highest term first; coefficients other than 1 are printed as encodings in brackets.
impl fmt::Display for SparsePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (m, c)) in self.terms().rev().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            if c == FieldElement::ONE {
                write!(f, "{m}")?;
            } else if m == Monomial::ONE {
                write!(f, "[{c}]")?;
            } else {
                write!(f, "[{c}]{m}")?;
            }
        }
        Ok(())
    }
}

/// The two generators of the curve ideal.
#[derive(Clone, Debug)]
pub struct CurveIdealBasis {
    pub g1: SparsePolynomial,
    pub g2: SparsePolynomial,
}

impl CurveIdealBasis {
    pub fn leading_monomials(&self) -> (Monomial, Monomial) {
        (
            self.g1.leading_term().expect("g1 is nonzero").0,
            self.g2.leading_term().expect("g2 is nonzero").0,
        )
    }

    pub fn generators(&self) -> [&SparsePolynomial; 2] {
        [&self.g1, &self.g2]
    }
}

pub fn curve_ideal_basis(c: &CurveSpec) -> CurveIdealBasis {
    let f = c.field();
    let minus_one = f.from_int(-1);
    let mut g1 = SparsePolynomial::monomial_on(c, Monomial::new(c.u(), 0));
    for k in 0..c.r() {
        g1.add_term(Monomial::new(0, c.q().pow(k)), minus_one);
    }
    let mut g2 = SparsePolynomial::monomial_on(c, Monomial::new(c.max_x_exponent() + 1, 0));
    g2.add_term(Monomial::new(1, 0), minus_one);
    CurveIdealBasis { g1, g2 }
}

/// Unique footprint-supported representative of `f` modulo the curve ideal.
///
/// Terms are rewritten largest first with
/// `Y^{q^{r-1}} -> X^u - sum_{k<r-1} Y^{q^k}` and `X^{u(q-1)+1} -> X`; the
/// ideal members `X^a - X^{a-u(q-1)}` and `Y^b - Y^{b-(q^r-1)}` are used as
/// shortcuts for large exponents. Every rewrite replaces a term by strictly
/// smaller ones, so a popped footprint term is final.
pub fn normal_form(c: &CurveSpec, f: &SparsePolynomial) -> SparsePolynomial {
    let field = c.field();
    let order = MonomialOrder::of(c);
    debug_assert!(
        **field == **f.field(),
        "polynomial is over a different field"
    );
    let max_i = c.max_x_exponent();
    let top_j = c.weight_x();
    let qr = field.order() as u64;
    let q = c.q();
    let u = c.u();

    let mut pending: BTreeMap<Key, FieldElement> = BTreeMap::new();
    for (m, coef) in f.terms() {
        add_into(field, &mut pending, order.key(m), coef);
    }
    let mut out = BTreeMap::new();
    while let Some((key, coef)) = pending.pop_last() {
        let m = monomial_of(&key);
        if m.i > max_i {
            let reduced = Monomial::new((m.i - 1) % max_i + 1, m.j);
            add_into(field, &mut pending, order.key(reduced), coef);
        } else if m.j >= qr {
            let reduced = Monomial::new(m.i, (m.j - 1) % (qr - 1) + 1);
            add_into(field, &mut pending, order.key(reduced), coef);
        } else if m.j >= top_j {
            let rest = m.j - top_j;
            add_into(
                field,
                &mut pending,
                order.key(Monomial::new(m.i + u, rest)),
                coef,
            );
            let minus = field.neg(coef);
            for k in 0..c.r() - 1 {
                let mk = Monomial::new(m.i, rest + q.pow(k));
                add_into(field, &mut pending, order.key(mk), minus);
            }
        } else {
            out.insert(key, coef);
        }
    }
    SparsePolynomial {
        field: field.clone(),
        order,
        terms: out,
    }
}

/// `{ weight(m) mod (q-1)u : m in supp f }`.
pub fn weight_residues(c: &CurveSpec, f: &SparsePolynomial) -> BTreeSet<u64> {
    let modulus = c.max_x_exponent();
    let order = MonomialOrder::of(c);
    f.support().map(|m| order.weight(m) % modulus).collect()
}
