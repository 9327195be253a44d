pub mod error;
pub mod exact_field;

pub use error::{Error, Result};
pub use exact_field::CycloNum;
pub mod ratfunc;
pub use ratfunc::{Poly, RatFunc, Var};
pub mod kummer;
pub use kummer::{KummerElem, Radical, Roster, XKummerElem, YKummerElem, ZKummerElem};
pub mod params;
pub use params::SurfaceParams;
pub mod group;
pub use group::{Cocycle, LiftedAut, S3Elem, TildeG2Elem};
pub mod pf;
pub use pf::PFOperator;
pub mod numerics;
pub use numerics::QuadSpec;
pub mod cycles;
pub use cycles::{CurveModel, CycleFamily, CycleKind, ZeroCycle};
pub mod rank;
pub use rank::{DImageVector, SpanCertificate};
pub mod report;
pub use report::{CheckRecord, Report};
pub mod suite;
pub use suite::{Command, RunConfig};
