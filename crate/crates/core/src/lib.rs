//! Exact computations in the dilute Temperley-Lieb algebra `dTL_n(delta)`.
//!
//! Diagrams, link states and the left ideals they cut out; idempotent
//! generators; a Mayer-Vietoris resolution of the trivial module; and exact
//! homology over the integers, the rationals and prime fields.

pub mod algebra;
pub mod bar;
pub mod coeff;
pub mod diagram;
pub mod error;
pub mod homology;
pub mod ideal;
pub mod idempotent;
pub mod linalg;
pub mod link;
pub mod mv;
pub mod tl;
pub mod verify;

pub use algebra::{AlgebraElement, Basis, MultTable};
pub use coeff::{AnyRing, DeltaSpec, ExactRing, Field, Integers, Poly, PolyRing, PrimeField, Rationals, Ring, RingKind};
pub use diagram::{enumerate_basis, Diagram, MultiplicationOutcome, Slot};
pub use error::{Error, Result};
pub use homology::{complex_homology, ChainComplex, ComplexJson, DegreeHomology, HomologyResult};
pub use ideal::IdealBasis;
pub use link::{LinkState, Site};
pub use mv::{Cover, MvComplex, Resolution};
pub use tl::TLDiagram;
pub use verify::{run_verify_theorem, CheckRecord, Report, RunConfig};
