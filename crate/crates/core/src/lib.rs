pub mod chains;
pub mod gen;
pub mod geometry;
pub mod json;
pub mod lsc;
pub mod oracle;
pub mod rational;
pub mod models;
pub mod duality;
pub mod suite;
