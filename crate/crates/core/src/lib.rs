//! Exact signs of permutations built over residue systems.
//!
//! The crate constructs the permutations that arise from multiplication maps on
//! `Z/nZ`, power maps on `(Z/pZ)^*`, the various orderings of the quadratic
//! residues modulo an odd prime, and the exponentiation maps of primitive roots
//! of prime powers. Each one is measured directly (cycle decomposition,
//! inversion counts, modular products) and reconciled against its closed form
//! in [`verifier`].
//!
//! Modules, bottom-up:
//!
//! * [`arith`]: modular arithmetic, Jacobi symbols, primality, primitive roots.
//! * [`permutation`]: one-line permutations with sign, inversions, composition.
//! * [`constructions`]: the residue sequences and permutations themselves.
//! * [`classnum`]: `h(-p)` by Dirichlet's formulas and the product congruences.
//! * [`verifier`]: closed-form predictions, observations, and sweeps.
//! * [`cli`]: the `residue-signs` command-line front end and report formats.

pub mod arith;
pub mod classnum;
pub mod cli;
pub mod constructions;
mod error;
pub mod permutation;
pub mod verifier;

pub use arith::{Modulus, OddPrime, PrimePower};
pub use classnum::ClassNumberResult;
pub use constructions::{FoldedResidue, ResidueSequence, SequenceLabel};
pub use error::{Error, Result};
pub use permutation::{Permutation, Sign};
pub use verifier::{Outcome, Params, Status, TheoremCase, TheoremId, VerificationRecord};
