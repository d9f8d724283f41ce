//! Exact dimensions of the graded Lie algebra of complete holomorphic vector
//! fields on Siegel domains of the second kind.
//!
//! ```
//! use siegel_core::grading::grading;
//! use siegel_core::workbench::catalog_query;
//!
//! let d = catalog_query("D7").unwrap().spec;
//! assert_eq!(grading(&d).total, 22);
//! ```

pub mod cones;
pub mod exact_linalg;
pub mod forms;
pub mod grading;
pub mod homogeneity;
pub mod workbench;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/exact-arithmetic.md")]
    mod exact_arithmetic {}
    #[doc = include_str!("../../../book/src/cones.md")]
    mod cones {}
    #[doc = include_str!("../../../book/src/forms.md")]
    mod forms {}
    #[doc = include_str!("../../../book/src/grading.md")]
    mod grading {}
    #[doc = include_str!("../../../book/src/homogeneity.md")]
    mod homogeneity {}
    #[doc = include_str!("../../../book/src/catalog.md")]
    mod catalog {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
