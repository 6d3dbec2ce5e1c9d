//! Boundary-layer and inner functions of the matched expansion, and the
//! composite eigenfunction built from them.
//!
//! Stretched coordinates: xi = (theta / eps, (1 - r) / eps), arc centers at
//! xi = (m pi, 0). Inner coordinates: sigma = (xi - (m pi, 0)) / eta.

mod correctors;
mod field;
mod inner;
mod layer;

pub use correctors::{basis, v_ad_i, v_i, CorrectorParams};
pub use field::{chi, composite_field, CompositeField, CompositeModel, FieldSample, Parity, PolarGrid};
pub use inner::{w, w_ad_11, y_gradient, InnerPoint, Y, Y1, Y2};
pub use layer::{a1_ray, a_k_on_axis, x, x_partials, x_tail, StretchedPoint, MAX_PARTIAL_ORDER};
