//! Braid monodromy, Hurwitz calculus, branched covers, Lefschetz fibration
//! invariants and van Kampen presentations, all with exact arithmetic.

pub mod braid;
pub mod cli;
pub mod cover;
pub mod error;
pub mod factor;
pub mod lefschetz;
pub mod mcg;
pub mod text;
pub mod vankampen;
pub mod word;
pub mod zlinalg;
