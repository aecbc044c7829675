//! Candidate second subconstituents of triangle-free strongly regular graphs
//! with parameters ((h⁴+3h²+4)/2, h²+1, 0, 2), built from cross-ratios on
//! the projective line over GF(q²).
//!
//! The pipeline: build the field ([`gf`]), compute the parameter set Ω and
//! admissible u ([`construct`]), build G_u on pairs of points
//! ([`projline`], [`construct`]), test the four-part partition around
//! {0, ∞} ([`partcheck`]), and assemble G_u ⊕ C and check it is strongly
//! regular ([`srg`]). [`report`] ties these together for the CLI.

pub mod construct;
pub mod gf;
pub mod graph;
pub mod par;
pub mod partcheck;
pub mod projline;
pub mod report;
pub mod srg;

use thiserror::Error;

pub use gf::{Elem, Field};
pub use graph::Graph;
pub use projline::{Point, PointPair};

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] gf::GfError),
    #[error(transparent)]
    Proj(#[from] projline::ProjError),
    #[error(transparent)]
    Construct(#[from] construct::ConstructError),
    #[error(transparent)]
    Part(#[from] partcheck::PartError),
    #[error(transparent)]
    Srg(#[from] srg::SrgError),
    #[error("malformed input: {0}")]
    Format(String),
    #[error("{0}")]
    Io(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

impl Error {
    /// 1 for bad input, 2 when the field cannot be built, 3 for a broken
    /// internal invariant.
    pub fn exit_code(&self) -> i32 {
        use gf::GfError as G;
        match self {
            Error::Field(
                G::TooLarge { .. } | G::NoPrimitivePolynomial { .. } | G::TableCheck(_),
            ) => 2,
            Error::Field(_) | Error::Proj(_) | Error::Format(_) | Error::Io(_) => 1,
            Error::Construct(construct::ConstructError::InadmissibleU(_)) => 1,
            Error::Construct(construct::ConstructError::Field(e)) => {
                Error::Field(e.clone()).exit_code()
            }
            Error::Construct(_) | Error::Part(_) | Error::Srg(_) | Error::Internal(_) => 3,
        }
    }
}
