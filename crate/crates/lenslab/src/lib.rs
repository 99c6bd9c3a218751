//! Finite categories and delta lenses, with exhaustive law checking.
//!
//! Everything in this crate is finite and explicit: a category is stored as
//! an ordered set of objects, an ordered set of morphisms, an identity
//! assignment, and a total composition table over exactly the composable
//! pairs. On top of that sit functors, lenses (functors equipped with a
//! lifting operation), the standard constructions on them (products,
//! coproducts, pullbacks, equalisers, factorisation), and brute-force
//! oracles that certify universal properties by enumerating every candidate
//! at desk scale.
//!
//! All values are immutable after validation and every operation is a pure
//! function of its inputs, so the whole API is safe to use from concurrent
//! contexts and deterministic by contract.

pub mod constructions;
pub mod dot;
pub mod fincat;
pub mod fixtures;
pub mod io;
pub mod lens;
pub mod oracle;
pub mod seeds;

pub use fincat::{FinCat, Functor, MorId, MorRec, ObjId};
pub use lens::{Lens, TrianglePresentation};
pub use oracle::{Bounds, OracleReport, PropertyTag, Verdict};
