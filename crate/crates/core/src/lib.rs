//! Exact (co)homology of truncated current algebras `g ⊗ A`, affine Weyl
//! combinatorics, first cyclic homology of subalgebras of `C[t]`, and
//! closed-form Ext computations between simple modules.

pub mod error;
pub mod exactmat;
pub mod extcalc;
pub mod affine;
pub mod cecohoml;
pub mod chevalley;
pub mod cyclic;
pub mod poly;
pub mod rootdata;
pub mod verify;

pub use error::{Error, Result};
pub use chevalley::{
    build_algebra_table, build_full_truncation, build_gis, build_gis_adapted, build_gtp_s, evaluation_module,
    structure_constants, tensor_modules, AlgebraTable, IdempotentSplitting, LieTable, ModuleRep, TruncationSpec,
};
pub use exactmat::{nullity, quotient_dim, rank, Rational, SparseRatMatrix};
pub use rootdata::{CartanType, CharacterMap, DecompositionReport, Factor, RootSystem, Weight};
