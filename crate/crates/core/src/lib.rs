pub mod congraph;
pub mod constructions;
pub mod engine;
pub mod exact;
pub mod surface;
