//! Cremona base changes of the rank-8 lattice and the normal-form reduction
//! built from them.
//!
//! The quadratic plane transformation based at the three blown-up points
//! i, j, k rewrites the geometric basis as
//!
//! ```text
//! L  = 2L' − E'ᵢ − E'ⱼ − E'ₖ ,
//! Eᵢ =  L' − E'ⱼ − E'ₖ ,   Eⱼ = L' − E'ᵢ − E'ₖ ,   Eₖ = L' − E'ᵢ − E'ⱼ ,
//! ```
//!
//! with every other basis class fixed.  On coefficient vectors this is the
//! involution d′ = 2d − dᵢ − dⱼ − dₖ, d′ᵢ = d − dⱼ − dₖ (and cyclically),
//! an isometry of the pairing fixing K.  Here i < j ≤ 6 and k ∈ {7, 8};
//! together with the swap of E₇ and E₈ these are the 30 moves used by the
//! reduction.
//!
//! Reduction repeatedly applies the move at the two largest coefficients
//! among d₁…d₆ and the larger of d₇, d₈ while their sum exceeds the line
//! coefficient; each application strictly decreases the line coefficient, so
//! the loop stops within d₀ moves.  A final swap normalizes d₇ ≥ d₈.  Ties
//! pick the lowest index, so logs are reproducible byte for byte.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::picard::{DivisorClass, LatticeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CremonaError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("cremona moves need i < j <= 6 and k in {{7, 8}}, got ({i}, {j}, {k})")]
    BadIndices { i: usize, j: usize, k: usize },
    #[error("cremona moves act on the rank-8 lattice, got rank {0}")]
    NotRank8(usize),
    #[error("reduction needs a non-negative line coefficient, got {0}")]
    NegativeLineCoeff(i64),
    #[error("reduction exceeded its move budget of {0} steps")]
    MoveBudget(i64),
}

/// One entry of a reduction log: a basis-independent description of the move.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "lowercase")]
pub enum MoveStep {
    Cremona { i: usize, j: usize, k: usize },
    Swap78,
}

impl MoveStep {
    /// Every move is an involution, so a step replays as itself.
    pub fn apply(&self, d: &DivisorClass) -> Result<DivisorClass, CremonaError> {
        match *self {
            MoveStep::Cremona { i, j, k } => apply_cremona(d, i, j, k),
            MoveStep::Swap78 => swap78(d),
        }
    }
}

/// All 30 moves: 15 index choices times k ∈ {7, 8}.
pub fn all_moves() -> Vec<MoveStep> {
    let mut moves = Vec::with_capacity(30);
    for i in 1..=6 {
        for j in (i + 1)..=6 {
            for k in [7, 8] {
                moves.push(MoveStep::Cremona { i, j, k });
            }
        }
    }
    moves
}

/// Applies the base change at (i, j, k) to a coefficient vector.
pub fn apply_cremona(
    d: &DivisorClass,
    i: usize,
    j: usize,
    k: usize,
) -> Result<DivisorClass, CremonaError> {
    if d.rank() != 8 {
        return Err(CremonaError::NotRank8(d.rank()));
    }
    if !(i < j && j <= 6 && (k == 7 || k == 8)) {
        return Err(CremonaError::BadIndices { i, j, k });
    }
    if i == 0 {
        return Err(CremonaError::BadIndices { i, j, k });
    }
    let c = d.coeffs();
    let (ci, cj, ck) = (c[i], c[j], c[k]);
    let mut out = c.to_vec();
    out[0] = 2 * c[0] - ci - cj - ck;
    out[i] = c[0] - cj - ck;
    out[j] = c[0] - ci - ck;
    out[k] = c[0] - ci - cj;
    Ok(DivisorClass::new(out)?)
}

/// Exchanges the E₇ and E₈ coefficients.
pub fn swap78(d: &DivisorClass) -> Result<DivisorClass, CremonaError> {
    if d.rank() != 8 {
        return Err(CremonaError::NotRank8(d.rank()));
    }
    let mut out = d.coeffs().to_vec();
    out.swap(7, 8);
    Ok(DivisorClass::new(out)?)
}

/// Result of a normal-form reduction: the reduced class and the moves that
/// were applied, in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionOutcome {
    pub normal: DivisorClass,
    pub log: Vec<MoveStep>,
}

impl ReductionOutcome {
    /// Replays the log backwards from the normal form; since every move is
    /// an involution this reconstructs the input exactly.
    pub fn replay_back(&self) -> Result<DivisorClass, CremonaError> {
        let mut d = self.normal.clone();
        for step in self.log.iter().rev() {
            d = step.apply(&d)?;
        }
        Ok(d)
    }
}

/// Reduces a class by Cremona moves: while the two largest coefficients
/// among d₁…d₆ plus the larger of d₇, d₈ exceed the line coefficient, apply
/// the move there; finally normalize d₇ ≥ d₈.
///
/// Any class with D² = 0, −D·K = 2, D·E = 2 ends at L−E₇; classes that never
/// trigger the condition come back unchanged with an empty log.
pub fn reduce_to_normal_form(d: &DivisorClass) -> Result<ReductionOutcome, CremonaError> {
    if d.rank() != 8 {
        return Err(CremonaError::NotRank8(d.rank()));
    }
    if d.line_coeff() < 0 {
        return Err(CremonaError::NegativeLineCoeff(d.line_coeff()));
    }
    let budget = d.line_coeff() + 1;
    let mut current = d.clone();
    let mut log = Vec::new();
    let mut steps = 0i64;
    loop {
        let c = current.coeffs();
        // Two largest coefficients among positions 1..=6, lowest index first
        // on ties.
        let mut order: Vec<usize> = (1..=6).collect();
        order.sort_by(|&a, &b| c[b].cmp(&c[a]).then(a.cmp(&b)));
        let (i, j) = if order[0] < order[1] {
            (order[0], order[1])
        } else {
            (order[1], order[0])
        };
        let k = if c[7] >= c[8] { 7 } else { 8 };
        if c[i] + c[j] + c[k] <= c[0] {
            break;
        }
        if steps >= budget {
            return Err(CremonaError::MoveBudget(budget));
        }
        let step = MoveStep::Cremona { i, j, k };
        current = step.apply(&current)?;
        log.push(step);
        steps += 1;
    }
    if current.coeff(7) < current.coeff(8) {
        current = swap78(&current)?;
        log.push(MoveStep::Swap78);
    }
    Ok(ReductionOutcome {
        normal: current,
        log,
    })
}
