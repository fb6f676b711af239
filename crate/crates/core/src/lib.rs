//! Extended Norm-Trace curves `X^u = Tr(Y)` over `F_{q^r}`, their one-point
//! style evaluation codes, and the parameters of the subfield subcodes and
//! trace codes of those codes.
//!
//! The pipeline is: [`curve`] enumerates rational points, [`monomial`] defines
//! the weighted footprint and the sets `M(s)`, [`reduction`] computes normal
//! forms modulo the curve ideal, [`ent`] builds the codes, [`subfield`] computes
//! trace-code and subfield-subcode dimensions (by normal forms and by direct
//! linear algebra), and [`distance`] bounds and verifies minimum distances.
//! [`report`] ties the pieces together into a serializable [`CodeReport`].

pub mod curve;
pub mod distance;
pub mod ent;
pub mod error;
pub mod field;
pub mod linear;
pub mod matrix_io;
pub mod monomial;
pub mod reduction;
pub mod report;
pub mod subfield;

pub use curve::{AffinePoint, CurveSpec};
pub use distance::{DeltaVariant, DistanceConfig, DistanceMethod, DistanceResult};
pub use ent::EntCode;
pub use error::{Error, Result};
pub use field::{make_field, Field, FieldElement, SubfieldEmbedding};
pub use linear::LinearCode;
pub use monomial::{FootprintSet, Monomial};
pub use reduction::{CurveIdealBasis, SparsePolynomial};
pub use report::{CodeReport, ReportOptions};
pub use subfield::TraceSpanResult;
