//! Subfield subcodes, trace codes and Frobenius images of codes.
//!
//! Two independent routes compute the dimension of `NT_u(s)|F_t`:
//!
//! * the normal-form route: the trace code of `NT_u(s')` (with `s'` the dual
//!   weight) has the dimension of the span of the normal forms of all
//!   `m^{t^i}`, `m ∈ M(s')`; the subfield subcode is its dual (Delsarte);
//! * the direct route: expand a parity-check matrix of the code over an
//!   `F_t`-basis and solve for the `F_t`-vectors it annihilates.

use serde::{Deserialize, Serialize};

use crate::curve::CurveSpec;
use crate::ent::dual_weight;
use crate::error::{Error, Result};
use crate::field::{make_field, FieldElement, SubfieldEmbedding};
use crate::linear::{expand_to_subfield, rank, LinearCode, Vector};
use crate::monomial::{footprint, monomials_up_to, Monomial};
use crate::reduction::{normal_form, SparsePolynomial};

/// The embedding of `F_t` into the curve's field `F_{q^r}`.
pub fn subfield_embedding(c: &CurveSpec, t: u64) -> Result<SubfieldEmbedding> {
    let d = c
        .field()
        .subfield_degree(t)
        .ok_or_else(|| Error::invalid(format!("F_{t} is not a subfield of {:?}", c.field())))?;
    let small = make_field(c.p(), d)?;
    SubfieldEmbedding::new(small, c.field().clone())
}

/// `C^{(t)}`: the coordinatewise `t`-th power of every codeword.
pub fn code_frobenius(code: &LinearCode, t: u64) -> Result<LinearCode> {
    let f = code.field();
    if f.subfield_degree(t).is_none() {
        return Err(Error::invalid(format!(
            "{t} is not a subfield order of {f:?}"
        )));
    }
    let rows = code
        .generator()
        .iter()
        .map(|row| row.iter().map(|&x| f.pow(x, t)).collect())
        .collect();
    LinearCode::row_space_basis(f.clone(), code.n(), rows)
}

fn frobenius_orbit(code: &LinearCode, t: u64) -> Result<Vec<LinearCode>> {
    let f = code.field();
    let d = f
        .subfield_degree(t)
        .ok_or_else(|| Error::invalid(format!("{t} is not a subfield order of {f:?}")))?;
    let m = f.degree() / d;
    let mut orbit = vec![code.clone()];
    for _ in 1..m {
        let next = code_frobenius(orbit.last().unwrap(), t)?;
        orbit.push(next);
    }
    Ok(orbit)
}

/// `C° = ∩_i C^{(t^i)}`, the big-field span of the subfield subcode.
pub fn orbit_intersection(code: &LinearCode, t: u64) -> Result<LinearCode> {
    let orbit = frobenius_orbit(code, t)?;
    orbit[1..]
        .iter()
        .try_fold(orbit[0].clone(), |acc, c| acc.intersection(c))
}

/// `C^∧ = Σ_i C^{(t^i)}`, the big-field span of the trace code.
pub fn orbit_sum(code: &LinearCode, t: u64) -> Result<LinearCode> {
    let orbit = frobenius_orbit(code, t)?;
    orbit[1..]
        .iter()
        .try_fold(orbit[0].clone(), |acc, c| acc.sum(c))
}

#[derive(Clone, Debug)]
pub struct TraceSpanResult {
    pub s: i64,
    pub t: u64,
    /// `q^r = t^m`.
    pub m: u32,
    /// Normal forms of `mono^{t^i}` for every `mono ∈ M(s)` and `0 <= i < m`,
    /// deduplicated and sorted.
    pub generators: Vec<SparsePolynomial>,
    pub dimension: usize,
}

fn check_t(c: &CurveSpec, t: u64) -> Result<u32> {
    c.field()
        .subfield_degree(t)
        .map(|d| c.field().degree() / d)
        .ok_or_else(|| Error::invalid(format!("F_{t} is not a subfield of {:?}", c.field())))
}

/// Span of the Frobenius orbit of `M(s)` modulo the curve ideal.
pub fn trace_span(c: &CurveSpec, s: i64, t: u64) -> Result<TraceSpanResult> {
    let m = check_t(c, t)?;
    let delta = footprint(c);
    let mut generators: Vec<SparsePolynomial> = Vec::new();
    for mono in monomials_up_to(c, s) {
        let mut power = mono;
        for _ in 0..m {
            generators.push(normal_form(c, &SparsePolynomial::monomial_on(c, power)));
            power = power.pow(t);
        }
    }
    let to_row = |g: &SparsePolynomial| -> Vector {
        let mut row = vec![FieldElement::ZERO; delta.len()];
        for (mono, coef) in g.terms() {
            row[delta
                .index_of(mono)
                .expect("normal forms live on the footprint")] = coef;
        }
        row
    };
    let mut rows: Vec<Vector> = generators.iter().map(to_row).collect();
    rows.sort();
    rows.dedup();
    let dimension = rank(c.field(), &rows);

    generators.sort_by_key(to_row);
    generators.dedup();
    Ok(TraceSpanResult {
        s,
        t,
        m,
        generators,
        dimension,
    })
}

/// Dimension of `Tr_{F_{q^r}/F_t}(NT_u(s))`.
pub fn trace_span_dim(c: &CurveSpec, s: i64, t: u64) -> Result<usize> {
    Ok(trace_span(c, s, t)?.dimension)
}

/// `dim NT_u(s)|F_t = n - dim Tr(NT_u(s'))` with `s'` the dual weight.
pub fn subfield_subcode_dim(c: &CurveSpec, s: i64, t: u64) -> Result<usize> {
    let trace_dim = trace_span_dim(c, dual_weight(c, s), t)?;
    Ok(c.n() as usize - trace_dim)
}

/// `C ∩ F_t^n`, computed directly from a parity-check matrix of `C`.
pub fn subfield_subcode_oracle(code: &LinearCode, emb: &SubfieldEmbedding) -> Result<LinearCode> {
    Ok(expand_to_subfield(&code.kernel(), emb)?.kernel())
}

/// The coordinatewise trace of `C`, as a code over `F_t`.
///
/// `C` is spanned over `F_t` by its basis rows scaled by an `F_t`-basis of the
/// big field; the trace of that spanning set spans the trace code.
pub fn trace_code(code: &LinearCode, emb: &SubfieldEmbedding) -> Result<LinearCode> {
    if **code.field() != **emb.big() {
        return Err(Error::FieldMismatch(format!(
            "code is over {:?}, embedding targets {:?}",
            code.field(),
            emb.big()
        )));
    }
    let f = code.field();
    let mut rows = Vec::with_capacity(code.k() * emb.basis().len());
    for row in code.generator() {
        for &beta in emb.basis() {
            rows.push(row.iter().map(|&x| emb.trace(f.mul(beta, x))).collect());
        }
    }
    LinearCode::row_space_basis(emb.small().clone(), code.n(), rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusWitness {
    /// The monomial of `M(s)` whose `t`-th power leaves the span.
    pub source: Monomial,
    /// Normal form of `source^t`, printed.
    pub image: String,
    /// Monomials of the image outside `M(s)`.
    pub offending: Vec<Monomial>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusInvariance {
    pub invariant: bool,
    pub witness: Option<FrobeniusWitness>,
}

/// Is `NT_u(s)` equal to its coordinatewise `t`-th power? Checked by
/// reducing `mono^t` for each `mono ∈ M(s)`; the first failure, in ascending
/// monomial order, is returned as the witness.
pub fn is_frobenius_invariant(c: &CurveSpec, s: i64, t: u64) -> Result<FrobeniusInvariance> {
    check_t(c, t)?;
    let basis = monomials_up_to(c, s);
    let allowed: std::collections::HashSet<Monomial> = basis.iter().copied().collect();
    for &mono in &basis {
        let image = normal_form(c, &SparsePolynomial::monomial_on(c, mono.pow(t)));
        let offending: Vec<Monomial> = image.support().filter(|m| !allowed.contains(m)).collect();
        if !offending.is_empty() {
            return Ok(FrobeniusInvariance {
                invariant: false,
                witness: Some(FrobeniusWitness {
                    source: mono,
                    image: image.to_string(),
                    offending,
                }),
            });
        }
    }
    Ok(FrobeniusInvariance {
        invariant: true,
        witness: None,
    })
}
