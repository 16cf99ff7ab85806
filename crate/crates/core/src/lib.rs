//! Diagram calculus for the braided Brin-Thompson groups `sV_br` and their
//! unbraided quotients `sV`, together with an exact simplicial homology
//! engine for the complexes that arise in their finiteness theory.

pub mod braid;
pub mod forest;
pub mod homology;
pub mod morse;
pub mod render;
pub mod spraige;
