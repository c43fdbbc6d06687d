pub mod expr;
pub mod starprod;
pub mod suites;
