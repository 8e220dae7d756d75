//! Exact arithmetic for Hirzebruch-Kummer covers of algebraic surfaces.
//!
//! The crate computes Chern numbers of abelian covers branched along curve
//! arrangements, evaluates the associated ball-quotient necessary conditions,
//! replays the nonexistence derivations as machine-checked certificates, and
//! exhaustively enumerates arrangement combinatorics over parameter grids.
//!
//! Everything is exact: inputs are machine integers, derived invariants are
//! arbitrary-precision integers and rationals. No floating point is used
//! anywhere. All types are immutable value objects and all operations are
//! pure functions, so the crate is `no_std` (with `alloc`) and trivially
//! thread-safe.

#![no_std]
#![deny(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod arrangements;
pub mod ball_quotient;
pub mod error;
pub mod invariants;
pub mod nc_cover;
pub mod search;
pub mod symbolic;

pub use arrangements::{
    surface_parameters, validate_combinatorics, validate_profiles, ArrangementCombinatorics,
    CurveProfile, FMoments, Finding, Severity, SurfaceModel, SurfaceParams, ValidationReport,
};
pub use ball_quotient::{
    admissible_multiplicity, admissible_pairs, certify_nonexistence, necessary_condition_filter,
    prop_curve_component, prop_exceptional, required_double_sixfold, CertStep, Certificate,
    Conclusion, DoubleSixfold, FamilyPattern, FilterOutcome, NefParams, PropValue,
};
pub use error::Error;
pub use invariants::{
    bmy_applicability, cover_chern, hirzebruch_polynomial, ApplicabilityCheck,
    ApplicabilityReport, ChernInvariants, CountSource, HirzebruchQuadratic,
};
pub use nc_cover::{
    blowup_homogeneous, cover_c1sq_nc, cover_euler_nc, NcComponent, NormalCrossingModel,
};
pub use search::{
    allowed_multiplicities, enumerate_combinatorics, gap_minimum, theorem_scan, verify_lemma_f0,
    CertificateRef, Enumeration, EnumerationCaps, FamilyGrid, GapRow, LemmaCell, LemmaReport,
    ScanCell, ScanHit, ScanReport, SearchMode, SearchSpec,
};
