//! Independent checks of the Seshadri formula.
//!
//! At a torus-fixed point `x_sigma` the Seshadri constant of a nef line bundle
//! is the minimum of `L . V(tau)` over the `n` invariant curves through
//! `x_sigma` (the facets `tau` of `sigma`); those curves are smooth, so no
//! multiplicity enters. The intersection numbers come from wall relations,
//! not from the `Gamma` stratification, so this is a genuinely separate route.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::{class_from_relation, pair, wall_relation, CurveClass};
use crate::divisor::{require_nef, DivisorClass};
use crate::error::{check_len, Error};
use crate::point::fixed_point_of_cone;
use crate::seshadri::seshadri_at;
use crate::serde_int;
use crate::tower::{build_tower, BottNumbers, BottTower, MaximalCone, Wall, MAX_DIMENSION};

/// Seed used by [`CampaignConfig::default`].
pub const DEFAULT_SEED: u64 = 0x5e5_4ad1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Domain(#[from] Error),

    #[error("{count} fixed point(s) disagree; first at {}: oracle {} vs formula {}", .first.cone, .first.oracle, .first.formula)]
    DiscrepancyFound { first: Box<FixedPointCheck>, count: usize },

    #[error("wall {} pairs to {} < min a_i = {}", .violation.wall, .violation.pairing, .min)]
    BoundViolated { violation: Box<WallPairing>, min: String },
}

impl VerifyError {
    pub fn kind(&self) -> &'static str {
        match self {
            VerifyError::Domain(e) => e.kind(),
            VerifyError::DiscrepancyFound { .. } => "DiscrepancyFound",
            VerifyError::BoundViolated { .. } => "BoundViolated",
        }
    }
}

/// `L . V(tau)` for one wall.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WallPairing {
    pub wall: String,
    pub curve_class: CurveClass,
    #[serde(with = "serde_int::scalar")]
    pub pairing: BigInt,
}

/// Oracle and formula values at one fixed point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixedPointCheck {
    pub cone: String,
    pub point: String,
    #[serde(with = "serde_int::scalar")]
    pub oracle: BigInt,
    #[serde(with = "serde_int::scalar")]
    pub formula: BigInt,
    pub walls: Vec<WallPairing>,
}

impl FixedPointCheck {
    pub fn agrees(&self) -> bool {
        self.oracle == self.formula
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossCheckReport {
    pub checks: Vec<FixedPointCheck>,
    pub discrepancies: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    #[serde(with = "serde_int::scalar")]
    pub min_coefficient: BigInt,
    pub walls_checked: usize,
    pub violations: Vec<WallPairing>,
}

fn check_inputs(tower: &BottTower, l: &DivisorClass) -> Result<(), Error> {
    check_len(tower.dimension(), l.len())?;
    tower.bott_numbers().require_positive()?;
    require_nef(l)
}

fn wall_pairing(tower: &BottTower, l: &DivisorClass, wall: &Wall) -> Result<WallPairing, Error> {
    let rel = wall_relation(tower, wall)?;
    let curve_class = class_from_relation(&rel, tower.dimension());
    let pairing = pair(l, &curve_class)?;
    Ok(WallPairing { wall: wall.to_string(), curve_class, pairing })
}

fn fixed_point_walls(tower: &BottTower, l: &DivisorClass, cone: &MaximalCone) -> Result<Vec<WallPairing>, Error> {
    cone.facets().map(|w| wall_pairing(tower, l, &w)).collect()
}

/// `eps(L, x_sigma)` as the minimum of `L . V(tau)` over the facets of `sigma`.
pub fn fixed_point_seshadri(tower: &BottTower, l: &DivisorClass, cone: &MaximalCone) -> Result<BigInt, Error> {
    check_inputs(tower, l)?;
    let walls = fixed_point_walls(tower, l, cone)?;
    Ok(walls.into_iter().map(|w| w.pairing).min().expect("a maximal cone has n >= 1 facets"))
}

/// Runs the oracle against the formula at every fixed point without failing
/// on disagreement.
pub fn inspect_fixed_points(tower: &BottTower, l: &DivisorClass) -> Result<CrossCheckReport, Error> {
    check_inputs(tower, l)?;
    let mut checks = Vec::with_capacity(tower.maximal_cone_count() as usize);
    for cone in tower.maximal_cones() {
        let walls = fixed_point_walls(tower, l, &cone)?;
        let oracle = walls.iter().map(|w| w.pairing.clone()).min().expect("n >= 1");
        let point = fixed_point_of_cone(&cone);
        let formula = seshadri_at(tower, l, &point)?.value;
        checks.push(FixedPointCheck {
            cone: cone.to_string(),
            point: point.to_string(),
            oracle,
            formula,
            walls,
        });
    }
    let discrepancies = checks.iter().filter(|c| !c.agrees()).count();
    Ok(CrossCheckReport { checks, discrepancies })
}

/// Asserts oracle/formula agreement at all `2^n` fixed points.
pub fn cross_check_fixed_points(tower: &BottTower, l: &DivisorClass) -> Result<CrossCheckReport, VerifyError> {
    let report = inspect_fixed_points(tower, l)?;
    match report.checks.iter().find(|c| !c.agrees()) {
        Some(first) => Err(VerifyError::DiscrepancyFound {
            first: Box::new(first.clone()),
            count: report.discrepancies,
        }),
        None => Ok(report),
    }
}

/// Every wall pairing of a nef class, not only those through one fixed
/// point, against `min a_i`. Violations are collected, not raised.
pub fn inspect_wall_bound(tower: &BottTower, l: &DivisorClass) -> Result<BoundReport, Error> {
    check_inputs(tower, l)?;
    let min = l.min_coeff().expect("n >= 1").clone();
    let mut violations = Vec::new();
    let mut walls_checked = 0;
    for wall in tower.walls() {
        let wp = wall_pairing(tower, l, &wall)?;
        walls_checked += 1;
        if wp.pairing < min {
            violations.push(wp);
        }
    }
    Ok(BoundReport { min_coefficient: min, walls_checked, violations })
}

/// Asserts `L . V(tau) >= min a_i` for every wall `tau`.
pub fn nef_lower_bound_check(tower: &BottTower, l: &DivisorClass) -> Result<BoundReport, VerifyError> {
    let report = inspect_wall_bound(tower, l)?;
    match report.violations.first() {
        Some(v) => Err(VerifyError::BoundViolated {
            violation: Box::new(v.clone()),
            min: report.min_coefficient.to_string(),
        }),
        None => Ok(report),
    }
}

/// Parameters of a randomized oracle campaign.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignConfig {
    /// Fixed tower height; when `None`, each trial draws `n` from `1..=max_n`.
    pub n: Option<usize>,
    pub max_n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Bott numbers are drawn from `1..=max_bott`.
    pub max_bott: u32,
    /// Bundle coefficients are drawn from `0..=max_coeff`.
    pub max_coeff: u32,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig { n: None, max_n: 5, trials: 100, seed: DEFAULT_SEED, max_bott: 9, max_coeff: 99 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub n: usize,
    #[serde(with = "serde_int::rows")]
    pub bott_numbers: Vec<Vec<BigInt>>,
    pub bundle: DivisorClass,
    pub fixed_points: usize,
    pub discrepancies: Vec<FixedPointCheck>,
    pub bound_violations: Vec<WallPairing>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub config: CampaignConfig,
    pub fixed_points_checked: usize,
    pub walls_checked: usize,
    pub discrepancies: usize,
    pub bound_violations: usize,
    pub instances: Vec<InstanceSummary>,
}

/// Draws a random tower and nef bundle from `rng`.
pub fn random_instance(
    rng: &mut impl Rng,
    n: usize,
    max_bott: u32,
    max_coeff: u32,
) -> Result<(BottTower, DivisorClass), Error> {
    let numbers = BottNumbers::from_fn(n, |_, _| rng.random_range(1..=max_bott.max(1)).into())?;
    let tower = build_tower(numbers)?;
    let l = DivisorClass::new((0..n).map(|_| rng.random_range(0..=max_coeff).into()).collect());
    Ok((tower, l))
}

/// Randomized confrontation of the oracle with the formula, plus the wall
/// lower bound, over `trials` instances. Deterministic for a given config.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignReport, Error> {
    let max_n = config.n.unwrap_or(config.max_n);
    if max_n == 0 || max_n > MAX_DIMENSION {
        return Err(Error::DimensionOutOfRange { n: max_n, max: MAX_DIMENSION });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = CampaignReport {
        config: config.clone(),
        fixed_points_checked: 0,
        walls_checked: 0,
        discrepancies: 0,
        bound_violations: 0,
        instances: Vec::with_capacity(config.trials),
    };
    for _ in 0..config.trials {
        let n = match config.n {
            Some(n) => n,
            None => rng.random_range(1..=config.max_n),
        };
        let (tower, l) = random_instance(&mut rng, n, config.max_bott, config.max_coeff)?;
        let fixed = inspect_fixed_points(&tower, &l)?;
        let bound = inspect_wall_bound(&tower, &l)?;
        report.fixed_points_checked += fixed.checks.len();
        report.walls_checked += bound.walls_checked;
        report.discrepancies += fixed.discrepancies;
        report.bound_violations += bound.violations.len();
        report.instances.push(InstanceSummary {
            n,
            bott_numbers: tower.bott_numbers().rows().to_vec(),
            bundle: l,
            fixed_points: fixed.checks.len(),
            discrepancies: fixed.checks.into_iter().filter(|c| !c.agrees()).collect(),
            bound_violations: bound.violations,
        });
    }
    Ok(report)
}
