pub mod coefficients;
pub mod complex;
pub mod dsl;
pub mod error;
pub mod group_algebra;
pub mod linalg;
pub mod motive;
pub mod partition;
pub mod poly;
pub mod super_linear;
pub mod symgroup;
