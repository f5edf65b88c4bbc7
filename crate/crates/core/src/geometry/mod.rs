//! Coordinate and extrinsic models, isometries, curvature, fixed points.

pub mod curvature;
pub mod extrinsic;
pub mod fixed;
pub mod isometry;
pub mod metric;
pub mod so12;

pub use crate::groups::cross_eps;
pub use curvature::{curvature, curvature_identities, parallel_field_dim};
pub use extrinsic::{
    complex_coordinate_metric, complex_coordinates_check, extrinsic_space, iota_isometry_check, ComplexCoordinates, Embedding, ExtrinsicSpace, Iota,
};
pub use fixed::{fixed_point, fixed_point_residual};
pub use isometry::{homomorphism_residual, pullback_check, ActionMap, IsometryElement, IsometryGroup, Model};
pub use metric::{group_metric, metric_agreement, model_metric, origin_gram, CoordinateModel, LeftTranslation};
pub use so12::{classify_so12, classify_so12_with, detect_frame, fixed_vector, fixed_vector_type, so012_frame, So12Frame, SO12Class, PARABOLIC_TOL};
