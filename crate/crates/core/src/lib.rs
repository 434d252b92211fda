//! Dual quaternions read as motions of a Schoenflies-type subgroup of
//! SE(4), line classification, displacement complexes and rational motion
//! design.

pub mod circularity;
pub mod complexes;
pub mod design;
pub mod error;
pub mod export;
pub mod kinematics;
pub mod motions;
pub mod optimize;
pub mod quat;
pub mod registry;

pub use error::{Error, ErrorCode, Result};
pub use quat::{DualQuaternion, Quaternion, Vec3, Vec4, DEFAULT_TOL};
