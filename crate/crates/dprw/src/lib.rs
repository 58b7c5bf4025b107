//! Exact lattice arithmetic and enumerative bookkeeping for real nodal
//! del Pezzo pairs.
//!
//! A *nodal del Pezzo pair* (Σ, E) is a smooth rational surface Σ of positive
//! degree K² together with a (-2)-curve E.  Everything this crate does lives
//! in the Picard lattice of Σ, presented in a geometric basis
//! L, E₁, …, Eₙ (n ≤ 8) with the diagonal pairing
//! ⟨a, b⟩ = a₀b₀ − Σᵢ aᵢbᵢ:
//!
//! * [`picard`] — divisor classes, intersection pairing, adjunction,
//!   the invariant-count dimension r, and surface-pair configurations;
//! * [`exceptional`] — exhaustive enumeration of (-1)- and (-2)-classes;
//! * [`cremona`] — quadratic Cremona base changes and the normal-form
//!   reduction they generate;
//! * [`classify`] — admissibility conditions, the codimension-zero
//!   trichotomy, and the invariance-theorem applicability checker;
//! * [`walls`] — the catalog of codimension-one degenerations a generic
//!   one-parameter family of counted curves can cross;
//! * [`transforms`] — the Welschinger sign evaluator and the exact transfer
//!   transforms between the relative count RW, the Welschinger series W and
//!   the E-avoiding series W̃, plus the plane/conic double-cover formulas;
//! * [`backend`] — tropical floor diagrams for the plane and the hyperboloid
//!   quadric, with a Kontsevich-recursion oracle for the complex counts;
//! * [`store`] — provenance-tracked persistence of invariant values and the
//!   propagation rules that relate them;
//! * [`provider`] — glue that lets the store and the floor-diagram engine
//!   serve interchangeably as the numeric backend of the transfer formulas.
//!
//! All arithmetic is exact: coefficients and counts are integers, range
//! violations are hard errors, and nothing is ever evaluated in floating
//! point.

pub mod backend;
pub mod classify;
pub mod cremona;
pub mod error;
pub mod exceptional;
pub mod picard;
pub mod provider;
pub mod store;
pub mod transforms;
pub mod walls;

pub use error::Error;

// Runs every code block in the guide under `cargo test --doc`, so the book
// cannot drift from the library.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/lattice.md")]
    mod lattice {}
    #[doc = include_str!("../../../book/src/exceptional-curves.md")]
    mod exceptional_curves {}
    #[doc = include_str!("../../../book/src/cremona.md")]
    mod cremona {}
    #[doc = include_str!("../../../book/src/classification.md")]
    mod classification {}
    #[doc = include_str!("../../../book/src/walls.md")]
    mod walls {}
    #[doc = include_str!("../../../book/src/transfer-formulas.md")]
    mod transfer_formulas {}
    #[doc = include_str!("../../../book/src/floor-diagrams.md")]
    mod floor_diagrams {}
    #[doc = include_str!("../../../book/src/store-and-cli.md")]
    mod store_and_cli {}
}
