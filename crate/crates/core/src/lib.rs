pub mod algebra;
pub mod corpus;
pub mod examples;
pub mod format;
pub mod invariants;
pub mod linalg;
pub mod module;
pub mod resolution;
pub mod scalar;
pub mod subring;

pub use algebra::{sandwiched_idempotents, Algebra, AlgebraError, Arrow, IdempotentSelector, ProductEntry, Quiver, Relation, TableSpec, Term};
pub use corpus::{generate_corpus, shuffle_table, CorpusLimits};
pub use format::{parse_algebra, serialize_algebra, AlgebraFile, FormatError, LinComb, Location, Presentation, ProductLine};
pub use invariants::{
    check_ip_conjecture, check_sandwich_theorem, ext_dims, ext_dims_hom_complex, ext_dims_shortcut, ext_quiver, global_dimension,
    m_dual_in_add_se, m_table_and_property, m_value, tor_dims, yoneda_directedness, Certainty, Check, CheckerReport, ExtQuiver,
    ExtTable, ExtendedDegree, InvariantError, MDual, MTable, TorTable, Verdict,
};
pub use linalg::{LinalgError, Mat, Rref, Subspace};
pub use module::{canonical_modules, hom_space, CanonicalModules, ModMap, Module, ModuleError, MultiplicityVector};
pub use resolution::{induced_resolution, minimal_projective_resolution, oracle_compare, run_construction, verify_minimal_resolution, ConstructionTrace, Resolution, ResolutionStatus, Verification};
pub use scalar::{FieldSpec, Fp, Scalar};
pub use subring::{gamma_algebra, Envelope, GammaContext, SubringError};

pub type F2 = Fp<2>;
pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;
pub type Q = num_rational::BigRational;
