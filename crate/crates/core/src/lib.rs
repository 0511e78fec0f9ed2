pub mod assignment;
pub mod checker;
pub mod error;
pub mod fol;
pub mod formulas;
pub mod matrix;
pub mod rational;
pub mod scalar;
pub mod subspace;
pub mod suites;
pub mod term;

pub use assignment::{eval, holds, Assignment, MeetRoute};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use rational::Rational;
pub use scalar::GaussianRational;
pub use subspace::{random_subspace, Subspace};
pub use term::{Equation, Term, TermNode};
