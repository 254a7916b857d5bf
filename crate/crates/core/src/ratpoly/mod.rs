//! Exact polynomial and rational-function arithmetic, resultants and real
//! root isolation.

mod mpoly;
mod poly;
mod ratfn;
mod resultant;
mod sturm;

pub use mpoly::MPoly;
pub use poly::Poly;
pub use ratfn::RationalFn;
pub use resultant::{determinant, resultant, sylvester_matrix};
pub use sturm::{isolate_all, isolate_root, sturm_count, RealAlgebraic, SturmChain};
