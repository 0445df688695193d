//! Exact linear algebra over ℤ: sparse matrices, Smith normal form,
//! chain complexes and their homology.

pub mod complex;
pub mod matrix;
pub mod modular;
pub mod snf;

pub use complex::{
    induced_map_on_homology, AbelianGroup, ChainComplex, ChainMap, ComplexReport, HomologyPresentation,
    InducedMap, Orientation,
};
pub use matrix::IntegerMatrix;
pub use modular::rank_mod_p;
pub use snf::{smith_normal_form, smith_normal_form_with_transforms, span_contains, SmithForm};
