//! Crate-wide error type.
//!
//! Each module defines its own focused error enum; this umbrella exists so
//! callers that mix modules (the CLI, the acceptance suite) can use one
//! `Result` type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] crate::picard::LatticeError),
    #[error(transparent)]
    Cremona(#[from] crate::cremona::CremonaError),
    #[error(transparent)]
    Classify(#[from] crate::classify::ClassifyError),
    #[error(transparent)]
    Walls(#[from] crate::walls::WallError),
    #[error(transparent)]
    Transform(#[from] crate::transforms::TransformError),
    #[error(transparent)]
    Backend(#[from] crate::backend::BackendError),
    #[error(transparent)]
    Store(#[from] crate::store::StoreError),
}
