pub mod cubics;
pub mod dual_quartic;
pub mod error;
pub mod exterior;
pub mod fibration;
pub mod field;
pub mod fp_dense;
pub mod group;
pub mod io;
pub mod linalg;
pub mod modular;
pub mod mpoly;
pub mod poly;
pub mod proj;
pub mod rng;
pub mod segre;
pub mod strata;
pub mod suites;
pub mod symplectic;
