pub mod matrix;
pub mod poly;
pub mod series;
pub mod snf;

pub use matrix::{IntegerMatrix, SparseIntMatrix};
pub use poly::QPolynomial;
pub use series::RationalGF;
pub use snf::{homology_of, same_homology, smith_normal_form, HomologyGroup, Snf};
