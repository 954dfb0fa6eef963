pub mod amen;
pub mod circle;
pub mod heis;
pub mod order;
pub mod quasi;
pub mod reduce;
