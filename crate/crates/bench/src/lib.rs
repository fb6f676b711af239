//! Shared fixtures for the criterion benches.

use ntcodes::CurveSpec;

/// The two curves over `F_16` used throughout the benches.
pub fn curves() -> [CurveSpec; 2] {
    [
        CurveSpec::new(2, 1, 4, 3).expect("valid curve"),
        CurveSpec::new(2, 1, 4, 5).expect("valid curve"),
    ]
}
