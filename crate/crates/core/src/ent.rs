//! Evaluation codes on the curve: `NT_u(s)` is spanned by the evaluations of
//! the footprint monomials of weight at most `s` at all rational points.

use std::sync::Arc;

use log::debug;
use serde::{Deserialize, Serialize};

use crate::curve::{AffinePoint, CurveSpec};
use crate::error::Result;
use crate::field::{Field, FieldElement};
use crate::linear::{dot, LinearCode, Vector};
use crate::monomial::{monomials_up_to, Monomial};
use crate::reduction::SparsePolynomial;

#[derive(Clone, Debug)]
pub struct EntCode {
    pub curve: CurveSpec,
    pub s: i64,
    pub monomials: Vec<Monomial>,
    pub code: LinearCode,
}

impl EntCode {
    pub fn n(&self) -> usize {
        self.code.n()
    }

    pub fn k(&self) -> usize {
        self.code.k()
    }
}

pub fn evaluate_at(f: &SparsePolynomial, points: &[AffinePoint]) -> Vector {
    points.iter().map(|pt| f.evaluate(pt.x, pt.y)).collect()
}

/// Row space of the evaluations of `polys` at `points`.
pub fn affine_variety_code(
    field: Arc<Field>,
    points: &[AffinePoint],
    polys: &[SparsePolynomial],
) -> Result<LinearCode> {
    let rows = polys.iter().map(|f| evaluate_at(f, points)).collect();
    LinearCode::row_space_basis(field, points.len(), rows)
}

/// Evaluation vector of a single monomial, computed with one power per point.
pub fn monomial_row(c: &CurveSpec, m: Monomial) -> Vector {
    let f = c.field();
    c.points()
        .iter()
        .map(|pt| f.mul(f.pow(pt.x, m.i), f.pow(pt.y, m.j)))
        .collect()
}

pub fn build_code(c: &CurveSpec, s: i64) -> Result<EntCode> {
    let monomials = monomials_up_to(c, s);
    let rows = monomials.iter().map(|&m| monomial_row(c, m)).collect();
    let code = LinearCode::row_space_basis(c.field().clone(), c.n() as usize, rows)?;
    Ok(EntCode {
        curve: c.clone(),
        s,
        monomials,
        code,
    })
}

/// Weight of the dual code, `n + 2g - 2 - s`.
pub fn dual_weight(c: &CurveSpec, s: i64) -> i64 {
    let d = (c.n() + 2 * c.genus()) as i64 - 2 - s;
    let printed = printed_dual_weight(c, s);
    if printed != d {
        debug!("{c:?}: dual weight of {s} is {d}; the closed form q^(r-1)(u-1) + u(q^(r-1)-1) - 1 - s gives {printed}");
    }
    d
}

/// `q^{r-1}(u-1) + u(q^{r-1}-1) - 1 - s`, the closed form found in the
/// literature for the dual weight. It disagrees with [`dual_weight`] and with
/// the orthogonality check; it is kept only so the discrepancy can be reported.
pub fn printed_dual_weight(c: &CurveSpec, s: i64) -> i64 {
    let qr1 = c.weight_x() as i64;
    let u = c.u() as i64;
    qr1 * (u - 1) + u * (qr1 - 1) - 1 - s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualityReport {
    pub s: i64,
    pub dual_s: i64,
    pub n: usize,
    pub dim: usize,
    pub dual_dim: usize,
    pub orthogonal: bool,
    /// First pair of generator rows `(i, j)` with nonzero inner product.
    pub witness: Option<(usize, usize)>,
}

impl DualityReport {
    pub fn passed(&self) -> bool {
        self.orthogonal && self.dim + self.dual_dim == self.n
    }
}

/// Checks `NT_u(s)^⊥ = NT_u(dual_weight(s))` by orthogonality of the
/// generators and the dimension count.
pub fn check_duality(c: &CurveSpec, s: i64) -> Result<DualityReport> {
    let dual_s = dual_weight(c, s);
    let a = build_code(c, s)?;
    let b = build_code(c, dual_s)?;
    let f = c.field();
    let witness = a.code.generator().iter().enumerate().find_map(|(i, x)| {
        b.code
            .generator()
            .iter()
            .position(|y| dot(f, x, y) != FieldElement::ZERO)
            .map(|j| (i, j))
    });
    Ok(DualityReport {
        s,
        dual_s,
        n: a.n(),
        dim: a.k(),
        dual_dim: b.k(),
        orthogonal: witness.is_none(),
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::monomial::{footprint, MonomialOrder};

    fn nt(u: u64) -> CurveSpec {
        CurveSpec::new(2, 1, 4, u).unwrap()
    }

    #[test]
    fn trivial_affine_variety_codes() {
        let c = nt(3);
        let f = c.field().clone();
        let one = SparsePolynomial::monomial_on(&c, Monomial::ONE);
        let rep = affine_variety_code(f.clone(), c.points(), &[one]).unwrap();
        assert_eq!(rep.k(), 1);
        assert!(rep.contains(&[FieldElement::ONE; 32]));
        let zero = SparsePolynomial::zero_on(&c);
        assert_eq!(affine_variety_code(f, c.points(), &[zero]).unwrap().k(), 0);
    }

    #[test]
    fn reed_solomon_like_code_on_f4() {
        let f4 = make_field(2, 2).unwrap();
        let pts: Vec<AffinePoint> = f4
            .elements()
            .map(|x| AffinePoint {
                x,
                y: FieldElement::ZERO,
            })
            .collect();
        let order = MonomialOrder { wx: 1, wy: 1 };
        let polys = [
            SparsePolynomial::from_terms(f4.clone(), order, [(Monomial::ONE, FieldElement::ONE)]),
            SparsePolynomial::from_terms(
                f4.clone(),
                order,
                [(Monomial::new(1, 0), FieldElement::ONE)],
            ),
        ];
        let code = affine_variety_code(f4, &pts, &polys).unwrap();
        assert_eq!((code.n(), code.k()), (4, 2));
    }

    #[test]
    fn code_dimensions() {
        assert_eq!(build_code(&nt(5), 60).unwrap().k(), 43);
        assert_eq!(build_code(&nt(5), 62).unwrap().k(), 44);
        let full = build_code(&nt(3), 45).unwrap();
        assert_eq!((full.n(), full.k()), (32, 32));
        assert_eq!(build_code(&nt(3), -3).unwrap().k(), 0);
    }

    #[test]
    fn dimension_equals_monomial_count() {
        for c in [nt(3), nt(5)] {
            let delta = footprint(&c);
            for s in (0..=delta.max_weight() as i64).step_by(3) {
                let code = build_code(&c, s).unwrap();
                let count = delta.weights().filter(|&w| w as i64 <= s).count();
                assert_eq!(code.k(), count);
                assert_eq!(code.monomials.len(), count);
            }
        }
    }

    #[test]
    fn dual_weights() {
        assert_eq!(dual_weight(&nt(3), 36), 8);
        assert_eq!(dual_weight(&nt(5), 60), 14);
        assert_eq!(dual_weight(&nt(5), 65), 9);
        assert_eq!(printed_dual_weight(&nt(3), 36), 0);
        for s in -5..90 {
            assert_eq!(dual_weight(&nt(5), dual_weight(&nt(5), s)), s);
        }
    }

    #[test]
    fn duality_examples() {
        let r = check_duality(&nt(3), 36).unwrap();
        assert!(r.passed());
        assert_eq!((r.dim, r.dual_dim), (28, 4));
        let r = check_duality(&nt(3), 0).unwrap();
        assert_eq!((r.dual_s, r.dim, r.dual_dim), (44, 1, 31));
        assert!(r.passed());
        let r = check_duality(&nt(5), 65).unwrap();
        assert_eq!((r.dual_s, r.dim, r.dual_dim), (9, 45, 3));
        assert!(r.passed());
    }

    #[test]
    fn printed_dual_formula_is_not_orthogonal() {
        // NT_3(36) against NT_3(0): the constant word is not orthogonal to the code
        let c = nt(3);
        let a = build_code(&c, 36).unwrap();
        let b = build_code(&c, printed_dual_weight(&c, 36)).unwrap();
        assert_ne!(a.k() + b.k(), 32);
    }
}
