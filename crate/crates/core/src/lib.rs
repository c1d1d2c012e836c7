//! Computations in the graph complex of trivalent diagrams.
//!
//! * [`diagram`] and [`canon`]: vertex-oriented trivalent multigraphs, signed
//!   canonical forms and automorphism groups.
//! * [`relations`]: enumeration of diagram classes, IHX relations, bases of
//!   the AS/IHX quotient and polynomial-algebra dimensions.
//! * [`linalg`]: exact sparse rational rank and row reduction.
//! * [`pairing`]: the clasper surgery-graph pairing and its value in the
//!   quotient.
//! * [`constants`]: Bernoulli numbers, L-polynomials and framing-correction
//!   constants.
//! * [`jgd`]: the `.jgd` text format.

pub mod canon;
pub mod constants;
pub mod diagram;
pub mod jgd;
pub mod linalg;
pub mod pairing;
pub mod relations;

pub use canon::{automorphisms, canonicalize, AutInfo, CanonicalClass};
pub use diagram::{build_diagram, Diagram, DiagramError};
pub use linalg::{rank_exact, rank_modular, row_reduce, RationalMatrix};
pub use relations::{
    a_space_basis, enumerate_diagrams, ihx_relations, poly_ring_dims, reduce, ASpaceBasis,
    DiagramVector, RelationError,
};
pub use constants::{
    a_parity, bernoulli, constants_report, delta2_theta, framing_correction, l_polynomial,
    l_top_coefficient, p_framing_dependence, zeta2_framing_dependence, ConstantsReport,
    LPolynomial,
};
pub use jgd::{parse_jgd, to_jgd, JgdError, JgdObject};
pub use pairing::{contract, contract_full, zeta_evaluate, PairingError, SurgeryGraph};
