//! Verification toolkit for Poisson, Dirac and Poisson-Lie structures.

pub mod exactalg;
pub mod groupnum;
pub mod oracle;
pub mod dirac;
pub mod dynr;
pub mod liealg;
pub mod poisson;
