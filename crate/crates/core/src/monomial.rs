//! Bivariate monomials with the `(q^{r-1}, u)` weight, the footprint of the
//! curve ideal, and the weight-bounded monomial sets `M(s)`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::curve::CurveSpec;

/// `X^i Y^j`.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial {
    pub i: u64,
    pub j: u64,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { i: 0, j: 0 };

    pub const fn new(i: u64, j: u64) -> Self {
        Monomial { i, j }
    }

    pub fn pow(self, k: u64) -> Monomial {
        Monomial::new(self.i * k, self.j * k)
    }
}

impl std::ops::Mul for Monomial {
    type Output = Monomial;

    fn mul(self, other: Monomial) -> Monomial {
        Monomial::new(self.i + other.i, self.j + other.j)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let part = |f: &mut fmt::Formatter<'_>, var: &str, e: u64| match e {
            0 => Ok(()),
            1 => write!(f, "{var}"),
            _ => write!(f, "{var}^{e}"),
        };
        if self.i == 0 && self.j == 0 {
            return write!(f, "1");
        }
        part(f, "X", self.i)?;
        part(f, "Y", self.j)
    }
}

/// Weighted order: first by `wx*i + wy*j`, ties broken by the larger
/// `Y` exponent. Multiplicative and a well-order on monomials.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    pub wx: u64,
    pub wy: u64,
}

impl MonomialOrder {
    pub fn of(c: &CurveSpec) -> Self {
        MonomialOrder {
            wx: c.weight_x(),
            wy: c.weight_y(),
        }
    }

    pub fn weight(&self, m: Monomial) -> u64 {
        self.wx * m.i + self.wy * m.j
    }

    /// Sort key realizing the order; the trailing `i` is implied by the first two.
    pub fn key(&self, m: Monomial) -> (u64, u64, u64) {
        (self.weight(m), m.j, m.i)
    }

    pub fn compare(&self, a: Monomial, b: Monomial) -> Ordering {
        self.key(a).cmp(&self.key(b))
    }
}

/// `q^{r-1} i + u j`.
pub fn weight(c: &CurveSpec, m: Monomial) -> u64 {
    MonomialOrder::of(c).weight(m)
}

pub fn compare(c: &CurveSpec, a: Monomial, b: Monomial) -> Ordering {
    MonomialOrder::of(c).compare(a, b)
}

/// Which exponent box plays the role of the footprint.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaVariant {
    /// `0 <= i <= u(q-1)`, `0 <= j <= q^{r-1} - 1`: exactly `n` monomials.
    #[default]
    Footprint,
    /// `0 <= j <= q^{r-1}` as printed in the order bound statement; one extra
    /// row of `Y` exponents.
    Paper,
}

impl std::str::FromStr for DeltaVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "footprint" => Ok(DeltaVariant::Footprint),
            "paper" => Ok(DeltaVariant::Paper),
            other => Err(format!(
                "unknown delta variant '{other}' (expected paper|footprint)"
            )),
        }
    }
}

/// The footprint of the curve ideal, sorted by the monomial order.
#[derive(Clone, Debug)]
pub struct FootprintSet {
    order: MonomialOrder,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl FootprintSet {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Position of `m` in the sorted footprint.
    pub fn index_of(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.index.contains_key(&m)
    }

    pub fn weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.monomials.iter().map(|&m| self.order.weight(m))
    }

    pub fn max_weight(&self) -> u64 {
        self.monomials
            .last()
            .map(|&m| self.order.weight(m))
            .unwrap_or(0)
    }
}

pub fn footprint(c: &CurveSpec) -> FootprintSet {
    footprint_variant(c, DeltaVariant::Footprint)
}

pub fn footprint_variant(c: &CurveSpec, variant: DeltaVariant) -> FootprintSet {
    let order = MonomialOrder::of(c);
    let max_j = match variant {
        DeltaVariant::Footprint => c.weight_x() - 1,
        DeltaVariant::Paper => c.weight_x(),
    };
    let mut monomials: Vec<Monomial> = (0..=c.max_x_exponent())
        .flat_map(|i| (0..=max_j).map(move |j| Monomial::new(i, j)))
        .collect();
    monomials.sort_by_key(|&m| order.key(m));
    let index = monomials.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    FootprintSet {
        order,
        monomials,
        index,
    }
}

/// Footprint monomials of weight at most `s`, ascending. Empty for `s < 0`.
pub fn monomials_up_to(c: &CurveSpec, s: i64) -> Vec<Monomial> {
    monomials_up_to_in(&footprint(c), s)
}

pub fn monomials_up_to_in(delta: &FootprintSet, s: i64) -> Vec<Monomial> {
    if s < 0 {
        return Vec::new();
    }
    let order = delta.order();
    delta
        .monomials()
        .iter()
        .copied()
        .take_while(|&m| order.weight(m) <= s as u64)
        .collect()
}
