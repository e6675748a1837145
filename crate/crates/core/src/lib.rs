//! Finite relational structures, homomorphism search, piece decompositions,
//! canonical lifts and universal structures for classes defined by
//! forbidden homomorphisms.

pub mod amalgamation;
pub mod bitset;
pub mod duality;
pub mod fraisse;
pub mod hom;
pub mod lifting;
pub mod pieces;
pub mod ramsey;
pub mod structures;

use thiserror::Error;

use amalgamation::AmalgamError;
use duality::DualityError;
use fraisse::FraisseError;
use hom::HomError;
use lifting::LiftError;
use pieces::PieceError;
use ramsey::RamseyError;
use structures::{CodecError, IsoError, StructureError};

/// Any error raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Iso(#[from] IsoError),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Pieces(#[from] PieceError),
    #[error(transparent)]
    Lift(#[from] LiftError),
    #[error(transparent)]
    Amalgam(#[from] AmalgamError),
    #[error(transparent)]
    Fraisse(#[from] FraisseError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Ramsey(#[from] RamseyError),
}

fn hom_budget(e: &HomError) -> bool {
    matches!(e, HomError::BudgetExhausted { .. })
}

fn lift_budget(e: &LiftError) -> bool {
    matches!(e, LiftError::Hom(h) if hom_budget(h))
}

fn iso_budget(e: &IsoError) -> bool {
    matches!(e, IsoError::Hom(h) if hom_budget(h))
}

fn piece_budget(e: &PieceError) -> bool {
    matches!(e, PieceError::Hom(h) if hom_budget(h))
}

fn amalgam_budget(e: &AmalgamError) -> bool {
    match e {
        AmalgamError::Hom(h) => hom_budget(h),
        AmalgamError::Lift(l) => lift_budget(l),
        _ => false,
    }
}

impl Error {
    /// True when the error only says a search ran out of budget, so the
    /// answer is unknown rather than negative.
    pub fn is_budget(&self) -> bool {
        match self {
            Error::Hom(h) => hom_budget(h),
            Error::Iso(i) => iso_budget(i),
            Error::Pieces(p) => piece_budget(p),
            Error::Lift(l) => lift_budget(l),
            Error::Amalgam(a) => amalgam_budget(a),
            Error::Fraisse(f) => match f {
                FraisseError::Hom(h) => hom_budget(h),
                FraisseError::Lift(l) => lift_budget(l),
                FraisseError::Pieces(p) => piece_budget(p),
                FraisseError::Amalgam(a) => amalgam_budget(a),
                _ => false,
            },
            Error::Duality(d) => match d {
                DualityError::Hom(h) => hom_budget(h),
                DualityError::Iso(i) => iso_budget(i),
                _ => false,
            },
            Error::Ramsey(r) => match r {
                RamseyError::Hom(h) => hom_budget(h),
                RamseyError::Iso(i) => iso_budget(i),
                RamseyError::Pieces(p) => piece_budget(p),
                _ => false,
            },
            Error::Structure(_) | Error::Codec(_) => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_classification() {
        let b = HomError::BudgetExhausted { nodes: 3 };
        assert!(Error::from(b.clone()).is_budget());
        assert!(Error::from(LiftError::Hom(b.clone())).is_budget());
        assert!(Error::from(FraisseError::Amalgam(AmalgamError::Lift(LiftError::Hom(b)))).is_budget());
        assert!(!Error::from(HomError::SignatureMismatch).is_budget());
        assert!(!Error::from(RamseyError::NoCuts).is_budget());
    }
}
