//! Rouquier blocks of cyclotomic Hecke algebras for the complex reflection
//! groups G4, G6 and G7 (Shephard-Todd numbering).
//!
//! The crate is organized bottom-up:
//!
//! * [`numfield`]: exact arithmetic in cyclotomic fields Q(zeta_N), prime
//!   ideals above a rational prime, Galois orbits of roots of unity.
//! * [`monlattice`]: the integer exponent-lattice side of monomials in the
//!   algebra parameters, morphisms associated with a primitive monomial,
//!   and hyperplane membership.
//! * [`polyalg`]: multivariate Laurent polynomials over cyclotomic fields,
//!   cyclotomic and K-cyclotomic polynomials, univariate specializations.
//! * [`schur`]: Schur elements kept in factored "essential" form, their
//!   cyclotomic specializations, a/A invariants, p-essential monomials and
//!   Clifford-chain derivation of Schur data for normal subgroups.
//! * [`grouprepo`]: group data packs (character tables, Schur tables,
//!   Clifford links) and p-blocks of the underlying group via central
//!   characters.
//! * [`blockengine`]: the partition lattice and the block algorithm itself:
//!   blocks with no / one essential hyperplane, AllBlocks, RouquierBlocks
//!   for arbitrary cyclotomic specializations.
//! * [`goldens`]: embedded reference tables used by the certified mode and
//!   the test suite.

pub mod numfield;
pub mod monlattice;
pub mod polyalg;
pub mod schur;
pub mod grouprepo;
pub mod blockengine;
pub mod goldens;
