//! Dimension bounds for the Artin group of a Coxeter matrix.

use serde::{Serialize, Serializer};

use crate::classify::is_spherical;
use crate::coxmatrix::CoxeterMatrix;
use crate::error::{Error, Result};
use crate::homology::{integral_cohomology_top, reduced_betti_mod2, AbelianGroup};
use crate::simcomplex::{is_flag, nerve};

/// `k + Σ 2 d_i` over the irreducible components `T_i` of a spherical system, `d_i = |T_i| - 1`.
pub fn spherical_actdim(m: &CoxeterMatrix) -> Result<usize> {
    if !is_spherical(m, m.all())? {
        return Err(Error::NotSpherical(m.format_subset(m.all())));
    }
    let components = m.components(m.all())?;
    Ok(components.len() + components.iter().map(|c| 2 * (c.len() - 1)).sum::<usize>())
}

/// How the `K(π,1)` conjecture is known to hold, if at all.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Kpi1Status {
    ProvedSpherical,
    ProvedFlagNerve,
    Assumed,
    Unknown,
}

impl Kpi1Status {
    pub fn holds(self) -> bool {
        self != Kpi1Status::Unknown
    }
}

pub fn kpi1_sufficient(m: &CoxeterMatrix, assume: bool) -> Result<Kpi1Status> {
    Ok(if is_spherical(m, m.all())? {
        Kpi1Status::ProvedSpherical
    } else if is_flag(&nerve(m)?) {
        Kpi1Status::ProvedFlagNerve
    } else if assume {
        Kpi1Status::Assumed
    } else {
        Kpi1Status::Unknown
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundValue {
    Exact(usize),
    /// `lower ≤ x ≤ upper`, with an unknown upper end when `upper` is `None`.
    Interval {
        lower: usize,
        upper: Option<usize>,
    },
    Unknown,
}

impl BoundValue {
    pub fn exact(self) -> Option<usize> {
        match self {
            BoundValue::Exact(v) => Some(v),
            _ => None,
        }
    }
}

impl Serialize for BoundValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde_json::json;
        let value = match *self {
            BoundValue::Exact(v) => json!(v),
            BoundValue::Interval { lower, upper } => json!({
                "lower": lower,
                "upper": upper.map_or(json!("unknown"), |u| json!(u)),
            }),
            BoundValue::Unknown => json!("unknown"),
        };
        value.serialize(s)
    }
}

/// A value together with the result that produced it and the hypotheses it rests on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: BoundValue,
    pub theorem: String,
    pub hypotheses: Vec<String>,
}

impl Bound {
    fn new(value: BoundValue, theorem: &str, hypotheses: &[&str]) -> Bound {
        Bound {
            value,
            theorem: theorem.to_string(),
            hypotheses: hypotheses.iter().map(|h| h.to_string()).collect(),
        }
    }

    fn exact(value: usize, theorem: &str, hypotheses: &[&str]) -> Bound {
        Bound::new(BoundValue::Exact(value), theorem, hypotheses)
    }

    fn unknown(theorem: &str, hypotheses: &[&str]) -> Bound {
        Bound::new(BoundValue::Unknown, theorem, hypotheses)
    }

    pub fn value(&self) -> Option<usize> {
        self.value.exact()
    }
}

const SPHERICAL_FORMULA: &str = "spherical formula actdim = k + sum 2 d_i";
const OBSTRUCTOR_BOUND: &str = "obstructor bound from nonzero top mod-2 homology of the nerve";
const ABELIAN_SUBGROUP_BOUND: &str = "cd >= d + 1 from a free abelian subgroup of rank d + 1";
const GEOMETRIC_DIMENSION: &str = "gd = dim L + 1 for a K(pi,1) Artin group";
const DOUBLING_BOUND: &str = "actdim <= 2 gd";
const MANIFOLD_GLUING_BOUND: &str =
    "actdim <= 2d + 1 from a (2d+1)-manifold model glued along a contractible thickening of L";

const HYP_KPI1: &str = "K(pi,1) conjecture holds for A";
const HYP_TOP_COHOMOLOGY: &str = "H^d(L;Z) = 0";
const HYP_NOT_TWO: &str = "d != 2";
const HYP_BETTI: &str = "reduced H_d(L;Z/2) != 0";

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActdimReport {
    pub d: usize,
    pub spherical: bool,
    /// Number of irreducible components, present only for spherical systems.
    pub k: Option<usize>,
    pub cd_lower: Bound,
    pub gd: Bound,
    pub kpi1_status: Kpi1Status,
    pub betti_top_mod2_reduced: usize,
    pub h_top_integral: AbelianGroup,
    pub obdim_lower: Option<Bound>,
    pub actdim_lower: Bound,
    pub actdim_upper: Bound,
    pub actdim_exact: BoundValue,
    pub notes: Vec<String>,
}

impl ActdimReport {
    /// Checks the report's internal invariants.
    pub fn consistent(&self) -> bool {
        let lower = self.actdim_lower.value();
        let upper = self.actdim_upper.value();
        let ordered = match (lower, upper) {
            (Some(l), Some(u)) => l <= u,
            _ => true,
        };
        let exact_matches = match self.actdim_exact {
            BoundValue::Exact(e) => lower == Some(e) && upper == Some(e),
            BoundValue::Unknown => lower.is_none() || lower != upper,
            BoundValue::Interval { .. } => false,
        };
        let obdim_below = self
            .obdim_lower
            .as_ref()
            .and_then(Bound::value)
            .is_none_or(|o| lower.is_some_and(|l| o <= l));
        ordered
            && exact_matches
            && obdim_below
            && self.spherical == self.k.is_some()
            && (!self.spherical || self.actdim_exact.exact().is_some())
    }
}

pub fn action_dimension_report(m: &CoxeterMatrix, assume_kpi1: bool) -> Result<ActdimReport> {
    let l = nerve(m)?;
    let d = l.dim().ok_or(Error::NoGenerators)?;
    let betti = reduced_betti_mod2(&l)?;
    let top_betti = betti[d];
    let h_top = integral_cohomology_top(&l)?;
    let kpi1 = kpi1_sufficient(m, assume_kpi1)?;
    let cd_lower = Bound::exact(d + 1, ABELIAN_SUBGROUP_BOUND, &[]);

    if kpi1 == Kpi1Status::ProvedSpherical {
        let k = m.components(m.all())?.len();
        let value = spherical_actdim(m)?;
        let spherical = |theorem| Bound::exact(value, theorem, &[]);
        return Ok(ActdimReport {
            d,
            spherical: true,
            k: Some(k),
            cd_lower,
            gd: Bound::exact(d + 1, GEOMETRIC_DIMENSION, &[]),
            kpi1_status: kpi1,
            betti_top_mod2_reduced: top_betti,
            h_top_integral: h_top,
            obdim_lower: Some(spherical(SPHERICAL_FORMULA)),
            actdim_lower: spherical(SPHERICAL_FORMULA),
            actdim_upper: spherical(SPHERICAL_FORMULA),
            actdim_exact: BoundValue::Exact(value),
            notes: Vec::new(),
        });
    }

    let mut notes = Vec::new();
    let obdim_lower =
        (top_betti != 0).then(|| Bound::exact(2 * d + 2, OBSTRUCTOR_BOUND, &[HYP_BETTI]));
    let actdim_lower = match &obdim_lower {
        Some(b) => Bound::exact(2 * d + 2, &b.theorem, &[HYP_BETTI]),
        None => Bound::exact(d + 1, ABELIAN_SUBGROUP_BOUND, &[]),
    };

    let (gd, actdim_upper) = if kpi1.holds() {
        let gd = Bound::exact(d + 1, GEOMETRIC_DIMENSION, &[HYP_KPI1]);
        let upper = if h_top.is_zero() && d != 2 {
            Bound::exact(
                2 * d + 1,
                MANIFOLD_GLUING_BOUND,
                &[HYP_KPI1, HYP_TOP_COHOMOLOGY, HYP_NOT_TWO],
            )
        } else {
            if h_top.is_zero() {
                notes.push(
                    "H^d(L;Z) = 0 but d = 2, so the (2d+1) upper bound does not apply".to_string(),
                );
            }
            Bound::exact(2 * d + 2, DOUBLING_BOUND, &[HYP_KPI1])
        };
        (gd, upper)
    } else {
        notes.push("K(pi,1) status unknown: no upper bounds are claimed".to_string());
        let gd = Bound::new(
            BoundValue::Interval {
                lower: d + 1,
                upper: None,
            },
            GEOMETRIC_DIMENSION,
            &[HYP_KPI1],
        );
        (gd, Bound::unknown(DOUBLING_BOUND, &[HYP_KPI1]))
    };

    let actdim_exact = match (actdim_lower.value(), actdim_upper.value()) {
        (Some(l), Some(u)) if l == u => BoundValue::Exact(l),
        _ => BoundValue::Unknown,
    };
    if kpi1 == Kpi1Status::Assumed {
        notes.push("upper bounds are conditional on the assumed K(pi,1) conjecture".to_string());
    }

    Ok(ActdimReport {
        d,
        spherical: false,
        k: None,
        cd_lower,
        gd,
        kpi1_status: kpi1,
        betti_top_mod2_reduced: top_betti,
        h_top_integral: h_top,
        obdim_lower,
        actdim_lower,
        actdim_upper,
        actdim_exact,
        notes,
    })
}
