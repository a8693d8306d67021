//! Kauffman bracket, Jones polynomial and Tait-graph machinery for
//! quasi-alternating certification of link diagrams.

pub mod bracket;
pub mod corpus;
pub mod diagram;
pub mod pd;
pub mod planar;
pub mod poly;
pub mod qacert;
pub mod tait;
pub mod tangle;

pub use diagram::{Crossing, DiagramError, DiagramKey, LinkDiagram, Sign, SmoothingKind};
pub use poly::{Gap, GapReport, JonesPoly, LaurentPoly, PolyError, Var};
