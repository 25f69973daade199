//! Exact intersection theory on small quotient rings, with domain layers for
//! classifying local simple normal crossing del Pezzo surfaces and evaluating
//! their local genus-0 Gromov-Witten and BPS invariants.
//!
//! The crate is organized bottom-up:
//!
//! * [`chow`] — graded quotient rings with one rewrite rule per generator,
//!   exact rational coefficients, and a small expression parser;
//! * [`ktheory`] — Chern characters, Chern classes, duals, tensor products,
//!   Todd classes (through degree 3);
//! * [`variety`] — built-in smooth varieties: projective spaces, Hirzebruch
//!   surfaces, products, and rank-2 projective bundles;
//! * [`pushforward`] — ring maps (pullbacks), fiber integration along bundle
//!   projections, product projections and isomorphisms, and the
//!   Grothendieck-Riemann-Roch index of a one-dimensional fibration;
//! * [`delpezzo`] — classification of two- and three-component simple normal
//!   crossing del Pezzo surfaces and their glued sheaf characters;
//! * [`localgw`] — genus-0 local Gromov-Witten numbers of glued curve
//!   families over a declared moduli space;
//! * [`localbps`] — weighted Euler characteristics of smooth sheaf moduli and
//!   the genus-0 BPS table;
//! * [`cli`] — the `sncdp` command-line interface (JSON reports).

pub mod bigrat;
pub mod chow;
pub mod cli;
pub mod delpezzo;
pub mod error;
pub mod ktheory;
pub mod localbps;
pub mod localgw;
pub mod pushforward;
pub mod variety;

pub use error::Error;
