//! Quantum-walk search on the complete graph with self-loops.
//!
//! - [`instance`]: problem parameters and validation.
//! - [`subspace`]: exact 3D/4D reduced discrete-time evolution.
//! - [`fullspace`]: the same walk in the full vertex⊗coin space.
//! - [`ctqw`]: continuous-time search, 2D and full space.
//! - [`analytics`]: closed-form angles, eigensystems and predictions.
//! - [`experiment`]: configs, comparison reports, CSV output and figure data.

pub mod analytics;
pub mod ctqw;
pub mod error;
pub mod experiment;
pub mod fullspace;
pub mod instance;
pub mod linalg;
pub mod subspace;
pub mod trace;

pub use analytics::{
    angles, asymptotic_prediction, classify_regime, eigen_system, predict, AngleSet, EigenPair, EigenSystem,
    LoopBranch, Prediction, RegimeClassification, Speedup,
};
pub use ctqw::{build_hamiltonian, ctqw_evolve, ctqw_full_evolve, loop_invariance_check, CtqwModel, CtqwTrace};
pub use error::{DomainError, Error, Result};
pub use fullspace::{full_initial_state, full_step, full_success_probability, grover_equivalence_check, FullState};
pub use instance::{validate, CoinKind, RawInstance, SearchInstance, WalkKind};
pub use subspace::{build_operator, evolve, initial_state, step, success_probability, EvolutionTrace, SubspaceOperator, SubspaceState};
