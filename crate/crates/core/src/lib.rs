//! Exact computations on Bott towers: the fan, the Picard lattice, Cox
//! coordinates, invariant curves and Seshadri constants of nef line bundles.
//!
//! Indices that name a stage of the tower (`a_i`, `c_{i,j}`, gamma indices,
//! strata, subtower bounds) are 1-based, matching the usual notation. Stages
//! stored inside [`RayId`], [`MaximalCone`] and [`Wall`] are 0-based.
//!
//! ```
//! use bott_core::{build_tower, seshadri_at, BottNumbers, CoxPoint, DivisorClass};
//!
//! let tower = build_tower(BottNumbers::constant(4, 1).unwrap()).unwrap();
//! let l = DivisorClass::from_i64s(&[1, 3, 8, 4]);
//! let x: CoxPoint = "[*:*:*:*:0:1:0:1]".parse().unwrap();
//! assert_eq!(seshadri_at(&tower, &l, &x).unwrap().value, 3.into());
//! ```

pub mod curve;
pub mod divisor;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod point;
pub mod serde_int;
pub mod seshadri;
pub mod tower;

pub use curve::{intersect_ray_divisor, invariant_curve_class, pair, wall_relation, CurveClass, WallRelation};
pub use divisor::{
    class_of_fiber_divisor, class_of_ray, is_ample, is_nef, reduce_to_basis, restrict_to_stage,
    DivisorClass, RayDivisor,
};
pub use error::{Error, Result};
pub use oracle::{
    cross_check_fixed_points, fixed_point_seshadri, nef_lower_bound_check, run_campaign,
    CampaignConfig, CampaignReport, CrossCheckReport, VerifyError,
};
pub use point::{
    canonicalize, fixed_point_of_cone, gamma_index, in_gamma, validate_point, Coord, CoxPoint,
};
pub use seshadri::{
    seshadri_at, seshadri_at_with, seshadri_inf, seshadri_inf_with, seshadri_sup,
    seshadri_sup_with, strata_report, strata_report_with, GlobalValue, Hypotheses,
    SeshadriResult, StratumValue,
};
pub use tower::{
    build_tower, enumerate_walls, BottNumbers, BottTower, MaximalCone, Ray, RayId, Side,
    TowerSpec, Wall, MAX_DIMENSION,
};
