//! Extended Norm-Trace curves `X^u = Tr_{F_{q^r}/F_q}(Y)` and their affine
//! rational points.

use std::collections::HashMap;
use std::fmt;
use std::ops::Range;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{gcd, make_field, Field, FieldElement};

/// Parameters `(p, l, r, u)` of the curve over `F_{q^r}` with `q = p^l`.
#[derive(Clone)]
pub struct CurveSpec {
    p: u32,
    l: u32,
    r: u32,
    u: u64,
    q: u64,
    field: Arc<Field>,
    points: OnceLock<Vec<AffinePoint>>,
}

/// A rational point `(x, y)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffinePoint {
    pub x: FieldElement,
    pub y: FieldElement,
}

/// The plain-number view of a curve, as it appears in reports.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CurveParams {
    pub p: u32,
    pub l: u32,
    pub r: u32,
    pub u: u64,
    pub n: u64,
    pub genus: u64,
}

impl fmt::Debug for CurveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "NT_{}(q={}, r={}) over GF({}^{})",
            self.u,
            self.q,
            self.r,
            self.p,
            self.l * self.r
        )
    }
}

impl PartialEq for CurveSpec {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.l, self.r, self.u) == (other.p, other.l, other.r, other.u)
    }
}

impl CurveSpec {
    pub fn new(p: u32, l: u32, r: u32, u: u64) -> Result<Self> {
        if l == 0 {
            return Err(Error::invalid("l must be at least 1"));
        }
        if r < 2 {
            return Err(Error::invalid("r must be at least 2"));
        }
        if u == 0 {
            return Err(Error::invalid("u must be positive"));
        }
        let e = l
            .checked_mul(r)
            .ok_or_else(|| Error::invalid("extension degree overflows"))?;
        let field = make_field(p, e)?;
        let q = (p as u64).pow(l);
        let norm_exponent = (field.order() as u64 - 1) / (q - 1);
        if !norm_exponent.is_multiple_of(u) {
            return Err(Error::invalid(format!(
                "u = {u} does not divide (q^r - 1)/(q - 1) = {norm_exponent}"
            )));
        }
        let spec = CurveSpec {
            p,
            l,
            r,
            u,
            q,
            field,
            points: OnceLock::new(),
        };
        debug_assert_eq!(gcd(u, spec.weight_x()), 1);
        Ok(spec)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn u(&self) -> u64 {
        self.u
    }

    /// `q = p^l`.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// The coordinate field `F_{q^r}`.
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// `q^{r-1}`: the weight of `X`, and the number of `Y` exponents in the footprint.
    pub fn weight_x(&self) -> u64 {
        self.q.pow(self.r - 1)
    }

    /// `u`: the weight of `Y`.
    pub fn weight_y(&self) -> u64 {
        self.u
    }

    /// `u(q-1)`: the largest `X` exponent in the footprint.
    pub fn max_x_exponent(&self) -> u64 {
        self.u * (self.q - 1)
    }

    /// Number of affine rational points, `q^{r-1}(u(q-1)+1)`.
    pub fn n(&self) -> u64 {
        self.weight_x() * (self.max_x_exponent() + 1)
    }

    /// `(q^{r-1} - 1)(u - 1)/2`.
    pub fn genus(&self) -> u64 {
        (self.weight_x() - 1) * (self.u - 1) / 2
    }

    pub fn params(&self) -> CurveParams {
        CurveParams {
            p: self.p,
            l: self.l,
            r: self.r,
            u: self.u,
            n: self.n(),
            genus: self.genus(),
        }
    }

    /// `Tr_{F_{q^r}/F_q}(y)` as an element of `F_{q^r}`.
    pub fn trace(&self, y: FieldElement) -> FieldElement {
        self.field
            .trace_over(y, self.q)
            .expect("F_q is a subfield of F_{q^r}")
    }

    pub fn contains(&self, pt: AffinePoint) -> bool {
        self.field.pow(pt.x, self.u) == self.trace(pt.y)
    }

    /// All affine points, sorted by `(x, y)` encodings. Computed once per spec.
    pub fn points(&self) -> &[AffinePoint] {
        self.points.get_or_init(|| enumerate_points(self))
    }
}

fn u_th_power_fibres(c: &CurveSpec) -> HashMap<FieldElement, Vec<FieldElement>> {
    let mut fibres: HashMap<FieldElement, Vec<FieldElement>> = HashMap::new();
    for x in c.field.elements() {
        fibres.entry(c.field.pow(x, c.u)).or_default().push(x);
    }
    fibres
}

/// Points whose `y` encoding falls in `ys`, unsorted.
pub fn points_in_y_range(c: &CurveSpec, ys: Range<u32>) -> Vec<AffinePoint> {
    points_with_fibres(c, ys, &u_th_power_fibres(c))
}

fn points_with_fibres(
    c: &CurveSpec,
    ys: Range<u32>,
    fibres: &HashMap<FieldElement, Vec<FieldElement>>,
) -> Vec<AffinePoint> {
    let mut out = Vec::new();
    for y in ys.map(FieldElement::from_encoding) {
        if let Some(xs) = fibres.get(&c.trace(y)) {
            out.extend(xs.iter().map(|&x| AffinePoint { x, y }));
        }
    }
    out
}

/// Every affine point of the curve, in lexicographic order of `(x, y)`.
pub fn enumerate_points(c: &CurveSpec) -> Vec<AffinePoint> {
    enumerate_points_partitioned(c, 1)
}

/// Same result as [`enumerate_points`], computed over `parts` disjoint
/// `y`-ranges on scoped threads and merged.
pub fn enumerate_points_partitioned(c: &CurveSpec, parts: usize) -> Vec<AffinePoint> {
    let fibres = u_th_power_fibres(c);
    let order = c.field.order();
    let parts = parts.clamp(1, order as usize) as u32;
    let chunk = order.div_ceil(parts);
    let mut points: Vec<AffinePoint> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..parts)
            .map(|i| {
                let lo = (i * chunk).min(order);
                let hi = ((i + 1) * chunk).min(order);
                let fibres = &fibres;
                s.spawn(move || points_with_fibres(c, lo..hi, fibres))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("point enumeration worker panicked"))
            .collect()
    });
    points.sort_unstable();
    points
}
