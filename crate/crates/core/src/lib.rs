//! Exact computer algebra for the centrally extended superalgebra of quantum
//! pseudo-differential operators, its embeddings into infinite matrix
//! superalgebras over truncated polynomial rings, and the classification of
//! its quasifinite highest-weight modules.

pub mod checks;
pub mod classifier;
pub mod convention;
pub mod embedding;
pub mod error;
pub mod glinf;
pub mod half;
pub mod jet;
pub mod laurent;
pub mod parabolic;
pub mod poly;
pub mod quasipoly;
pub mod recurrence;
pub mod sample;
pub mod scalar;
pub mod superq;
pub mod syntax;

pub use error::AlgebraError;
pub use half::Half;
pub use jet::{jet_exp, RmElement};
pub use laurent::{ideal_gcd, LaurentPoly};
pub use scalar::Scalar;
pub use superq::{psi, Sector, SuperQElement};
pub use quasipoly::QuasiPolynomial;
pub use glinf::{GlInfElement, GlWeight};
pub use classifier::{ModuleDescriptor, SSqWeight};
pub use convention::{ConventionRegistry, SynthesisConvention};
pub use embedding::BandedOperator;
pub use parabolic::{HalfElement, WeightFunctional};
