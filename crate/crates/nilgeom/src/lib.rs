//! Numerical geometry kernel for the projective model of Nil geometry:
//! translation curves, translation-triangle surfaces, signed simple ratios,
//! and checkers for the Menelaus, Desargues and Pappus incidence theorems on
//! those surfaces, together with a Euclidean instance and exact planar
//! oracles used as cross-checks.

pub mod campaign;
pub mod euclid_oracle;
pub mod incidence;
pub mod nil_kernel;
pub mod triangle_surface;
mod vec3;

pub use nil_kernel::{
    geographic, simple_ratio, simple_ratio_with, translation_distance, GeographicParams,
    KernelError, NilPoint, NilTranslation, TangentVector, Tolerances, TranslationCurve,
};
pub use vec3::{det3, Vec2, Vec3};
