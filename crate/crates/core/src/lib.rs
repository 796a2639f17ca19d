//! Exact computation of single Hurwitz numbers by symmetric-group enumeration,
//! by characters, and by the ELSV intersection formula, together with the
//! coordinate machinery of formal reparametrizations acting on polar parts and
//! genus-0 branch polynomials.

pub mod branch;
pub mod curvegraph;
pub mod diffgroup;
pub mod elsv;
pub mod exactalg;
pub mod psi;
pub mod symgrp;

pub use exactalg::{Poly, Rational, TruncSeries};
