pub mod bounds;
pub mod buchi;
pub mod charp;
pub mod fields;
pub mod funcfield;
pub mod geometry;
pub mod parser;
pub mod poly;
