//! Piecewise-polynomial substrate: meshes, fields of degree ≤ 2, exact quadrature and
//! interval-set algebra on a bounded interval.

pub mod coefficient;
pub mod field;
pub mod flux;
pub mod intervals;
pub mod io;
pub mod mesh;
pub mod poly;
pub mod quadrature;
pub mod sign;

pub use coefficient::{flux_misfit_sq, friedrichs_constant, weighted_norm_sq, Diffusion, Weight};
pub use field::{interpolate_nodal, Continuity, PiecewiseField};
pub use flux::FluxField;
pub use intervals::IntervalSet;
pub use mesh::{merge_meshes, Mesh1D};
pub use poly::Quadratic;
pub use quadrature::{integrate, integrate_fields, integrate_product, l2_norm_sq};
pub use sign::{pos_neg_parts, sign_partition, sign_set, PosNegParts, Relation, SignPartition, SET_TOL};
