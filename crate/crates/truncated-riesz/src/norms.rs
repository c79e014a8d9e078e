//! Norm evaluators on the unitization.
//!
//! Four built-in evaluators plus a registry of custom norms:
//!
//! * [`norm1`] — `||x + alpha||_1 = ||(|x + alpha| - |alpha|)^+|| + |alpha|`,
//!   the largest unitization norm.
//! * [`norm0`] — `sup { ||y|| : y in E, |y| <= |x + alpha| }`, the smallest
//!   unitization norm on carriers without a truncation unit. With a
//!   truncation unit `e` the same supremum collapses to `||x + alpha e||`,
//!   which is only a lattice seminorm (it kills `e - 1`).
//! * [`norm_c`] — the classical direct-sum norm `||x|| + |alpha|`, complete
//!   but *not* verified as a lattice norm for the nonstandard order (see the
//!   monotonicity fuzz in the verifier; counterexamples exist).
//! * [`gauge_norm`] — the Minkowski gauge of the order interval `[-1, 1]`,
//!   i.e. the sup norm of the pointwise model.
//!
//! The registry ships with `uL1`, the explicit unitization norm
//! `(1/2) Int |f + alpha|` on the interval carrier.

use std::collections::BTreeMap;

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::Serialize;

use crate::carrier::{Carrier, CarrierKind, Element, GenParams};
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::unitization::{bracket, UnitizedElement};

/// Identifies a norm evaluator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormKind {
    Norm1,
    Norm0,
    NormC,
    Gauge,
    Custom(String),
}

impl NormKind {
    pub fn name(&self) -> &str {
        match self {
            NormKind::Norm1 => "norm1",
            NormKind::Norm0 => "norm0",
            NormKind::NormC => "normC",
            NormKind::Gauge => "gauge",
            NormKind::Custom(name) => name,
        }
    }

    pub fn from_name(name: &str) -> NormKind {
        match name {
            "norm1" => NormKind::Norm1,
            "norm0" => NormKind::Norm0,
            "normC" => NormKind::NormC,
            "gauge" => NormKind::Gauge,
            other => NormKind::Custom(other.to_string()),
        }
    }

    /// Whether this evaluator is a unitization norm on the given carrier: a
    /// lattice norm extending the base norm with `||1|| = 1`. `normC` is
    /// excluded (not a lattice norm for the nonstandard order), and the
    /// gauge only extends the base norm where the base norm *is* the sup
    /// norm. `norm0` on a carrier with a truncation unit is a seminorm.
    pub fn is_unitization_norm(&self, carrier: &Carrier) -> bool {
        match self {
            NormKind::Norm1 => true,
            NormKind::Norm0 => carrier.truncation_unit().is_none(),
            NormKind::NormC => false,
            NormKind::Gauge => carrier.kind() == CarrierKind::CompactSupport,
            NormKind::Custom(name) => name == "uL1" && carrier.kind() == CarrierKind::Interval,
        }
    }
}

type NormEvaluator = Box<dyn Fn(&Carrier, &UnitizedElement) -> Result<Rational> + Send + Sync>;

/// A registered custom norm.
pub struct CustomNorm {
    pub name: String,
    pub carriers: Vec<CarrierKind>,
    evaluator: NormEvaluator,
}

/// Norm-evaluator registry: the four built-ins plus custom entries.
/// Write-once at startup, read-only afterwards.
#[derive(Default)]
pub struct NormRegistry {
    customs: BTreeMap<String, CustomNorm>,
}

impl NormRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registry with the built-in custom norms (`uL1` on the interval
    /// carrier).
    pub fn with_builtins() -> Self {
        let mut registry = Self::new();
        registry.register(
            "uL1",
            vec![CarrierKind::Interval],
            Box::new(|carrier: &Carrier, a: &UnitizedElement| ul1(carrier, a)),
        );
        registry
    }

    pub fn register(&mut self, name: &str, carriers: Vec<CarrierKind>, evaluator: NormEvaluator) {
        self.customs.insert(
            name.to_string(),
            CustomNorm {
                name: name.to_string(),
                carriers,
                evaluator,
            },
        );
    }

    pub fn custom_names(&self) -> impl Iterator<Item = &str> {
        self.customs.keys().map(String::as_str)
    }

    pub fn is_compatible(&self, kind: &NormKind, carrier: &Carrier) -> bool {
        match kind {
            NormKind::Custom(name) => self
                .customs
                .get(name)
                .is_some_and(|c| c.carriers.contains(&carrier.kind())),
            _ => true,
        }
    }

    /// Evaluates any registered norm. Unknown custom names and incompatible
    /// carriers are reported as errors.
    pub fn eval(
        &self,
        kind: &NormKind,
        carrier: &Carrier,
        a: &UnitizedElement,
    ) -> Result<Rational> {
        match kind {
            NormKind::Norm1 => norm1(carrier, a),
            NormKind::Norm0 => norm0(carrier, a),
            NormKind::NormC => norm_c(carrier, a),
            NormKind::Gauge => gauge_norm(carrier, a),
            NormKind::Custom(name) => {
                let custom = self
                    .customs
                    .get(name)
                    .ok_or_else(|| Error::UnknownNorm(name.clone()))?;
                if !custom.carriers.contains(&carrier.kind()) {
                    return Err(Error::UnsupportedCarrier(format!(
                        "norm `{}` is not defined on the {} carrier",
                        custom.name,
                        carrier.name()
                    )));
                }
                (custom.evaluator)(carrier, a)
            }
        }
    }

    /// The registered unitization norms applicable to a carrier, extreme
    /// norms included.
    pub fn unitization_norms(&self, carrier: &Carrier) -> Vec<NormKind> {
        let mut kinds = vec![NormKind::Norm0, NormKind::Norm1];
        if NormKind::Gauge.is_unitization_norm(carrier) {
            kinds.push(NormKind::Gauge);
        }
        for name in self.customs.keys() {
            let kind = NormKind::Custom(name.clone());
            if self.is_compatible(&kind, carrier) && kind.is_unitization_norm(carrier) {
                kinds.push(kind);
            }
        }
        kinds
    }
}

/// The largest unitization norm: `||(|x+alpha| - |alpha|)^+|| + |alpha|`.
pub fn norm1(carrier: &Carrier, a: &UnitizedElement) -> Result<Rational> {
    let b = bracket(carrier, a)?;
    Ok(carrier.base_norm(&b.pos_part())? + a.alpha.abs())
}

/// The smallest unitization norm, `sup { ||y|| : |y| <= |x + alpha| }`.
/// With a truncation unit this is the seminorm `||x + alpha e||`.
pub fn norm0(carrier: &Carrier, a: &UnitizedElement) -> Result<Rational> {
    match carrier.truncation_unit() {
        Some(e) => {
            carrier.validate(&a.x)?;
            carrier.base_norm(&a.x.add(&e.scale(&a.alpha))?)
        }
        None => {
            let b = bracket(carrier, a)?;
            carrier.ideal_sup_norm(&b, &a.alpha.abs())
        }
    }
}

/// The classical completion norm `||x|| + |alpha|`. Reference only: it is a
/// norm making the unitization complete, but it is not monotone for the
/// nonstandard order.
pub fn norm_c(carrier: &Carrier, a: &UnitizedElement) -> Result<Rational> {
    Ok(carrier.base_norm(&a.x)? + a.alpha.abs())
}

/// The gauge `inf { lambda > 0 : |x + alpha| < lambda }` of the strong unit
/// `1`: the sup norm of the pointwise model (which includes the value
/// `|alpha|` at the extra model point).
pub fn gauge_norm(carrier: &Carrier, a: &UnitizedElement) -> Result<Rational> {
    carrier.validate(&a.x)?;
    match (carrier, &a.x) {
        (Carrier::Coordinate { unit, .. }, Element::Vector(v)) => {
            let mut best = a.alpha.abs();
            for (xi, ei) in v.entries().iter().zip(unit.entries()) {
                best = best.max_of(&((xi / ei) + a.alpha.clone()).abs());
            }
            Ok(best)
        }
        (Carrier::Interval, Element::Function(f)) => {
            // Breakpoints include the endpoints, where the value is alpha.
            Ok(f.values()
                .iter()
                .map(|v| (v + &a.alpha).abs())
                .max()
                .expect("interval functions have breakpoints"))
        }
        (Carrier::CompactSupport, Element::Function(f)) => {
            let mut best = a.alpha.abs();
            for v in f.values() {
                best = best.max_of(&(v + &a.alpha).abs());
            }
            Ok(best)
        }
        _ => unreachable!("validated above"),
    }
}

/// The explicit interval-carrier unitization norm
/// `||f + alpha||_u = (1/2) Int |f(s) + alpha| ds`.
pub fn ul1(carrier: &Carrier, a: &UnitizedElement) -> Result<Rational> {
    if carrier.kind() != CarrierKind::Interval {
        return Err(Error::UnsupportedCarrier(format!(
            "uL1 is defined on the interval carrier, not {}",
            carrier.name()
        )));
    }
    carrier.validate(&a.x)?;
    let f = a.x.as_function().expect("validated");
    let shifted = f.add_const(&a.alpha)?;
    Ok(shifted.integral_abs() * Rational::ratio(1, 2))
}

/// Budget for the distance-to-`E` search.
#[derive(Clone, Debug)]
pub struct DistBudget {
    /// Highest index of the boundary-pinched witness family.
    pub n_max: u32,
    /// Number of random truncated candidates.
    pub random_trials: u32,
    pub seed: u64,
}

impl Default for DistBudget {
    fn default() -> Self {
        DistBudget {
            n_max: 64,
            random_trials: 100,
            seed: 42,
        }
    }
}

/// Certified two-sided bounds on `dist(1, E)` under a norm: the upper bound
/// comes from the best constructed witness, the lower bound from a per-norm
/// certificate (0 when no certificate applies).
#[derive(Clone, Debug, Serialize)]
pub struct DistOneReport {
    pub carrier: String,
    pub norm: String,
    pub lower: Rational,
    pub upper: Rational,
    /// Element of `E` realizing the upper bound.
    pub witness: Element,
    pub witness_description: String,
}

pub fn dist_one(
    carrier: &Carrier,
    registry: &NormRegistry,
    kind: &NormKind,
    budget: &DistBudget,
) -> Result<DistOneReport> {
    if !registry.is_compatible(kind, carrier) {
        return Err(Error::UnsupportedCarrier(format!(
            "norm `{}` is not defined on the {} carrier",
            kind.name(),
            carrier.name()
        )));
    }
    let minus_one = Rational::from_int(-1);
    let eval_distance = |x: &Element| -> Result<Rational> {
        registry.eval(
            kind,
            carrier,
            &UnitizedElement::new(x.clone(), minus_one.clone()),
        )
    };

    // Candidate witnesses.
    let mut best: (Rational, Element, String) = (
        eval_distance(&carrier.zero())?,
        carrier.zero(),
        "zero element".to_string(),
    );
    let mut consider = |value: Rational, x: Element, desc: String| {
        if value < best.0 {
            best = (value, x, desc);
        }
    };

    if let Some(e) = carrier.truncation_unit() {
        consider(eval_distance(&e)?, e, "truncation unit e".to_string());
    }
    if carrier.kind() == CarrierKind::Interval {
        for n in 2..=budget.n_max {
            let f = carrier.make_fn(n)?;
            consider(eval_distance(&f)?, f, format!("plateau trapezoid f_{n}"));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(budget.seed);
    let params = GenParams::default();
    for trial in 0..budget.random_trials {
        let z = carrier.sample_element(&mut rng, &params);
        let x = carrier.truncate(&z.abs())?;
        consider(
            eval_distance(&x)?,
            x,
            format!("truncated random element (trial {trial})"),
        );
    }

    let lower = match (kind, carrier.kind()) {
        // ||x - 1||_1 = ||(|x-1| - 1)^+|| + 1 >= 1.
        (NormKind::Norm1, _) => Rational::one(),
        // ||x - 1||_c = ||x|| + 1 >= 1.
        (NormKind::NormC, _) => Rational::one(),
        // The model of x - 1 takes the value -1 at the boundary points or
        // at infinity, so the gauge never drops below 1.
        (NormKind::Gauge, _) => Rational::one(),
        // The envelope of |x - 1| is 1 beyond the support, so the
        // ideal supremum is at least 1.
        (NormKind::Norm0, CarrierKind::CompactSupport) => Rational::one(),
        _ => Rational::zero(),
    };

    let (upper, witness, witness_description) = best;
    debug_assert!(lower <= upper);
    Ok(DistOneReport {
        carrier: carrier.name().to_string(),
        norm: kind.name().to_string(),
        lower,
        upper,
        witness,
        witness_description,
    })
}

/// The finite-model representation of the coordinate carrier's unitization:
/// `n + 1` evaluation functionals under which the gauge becomes the sup
/// norm and `E` maps onto the functions vanishing at the extra point.
#[derive(Clone, Debug, Serialize)]
pub struct CoordinateRepresentation {
    pub dim: usize,
    pub unit: Vec<Rational>,
    pub functionals: Vec<String>,
}

pub fn coordinate_representation(carrier: &Carrier) -> Result<CoordinateRepresentation> {
    match carrier {
        Carrier::Coordinate { unit, .. } => {
            let dim = unit.dim();
            let mut functionals: Vec<String> = (0..dim)
                .map(|i| format!("x + alpha |-> x[{i}]/e[{i}] + alpha"))
                .collect();
            functionals.push("x + alpha |-> alpha".to_string());
            Ok(CoordinateRepresentation {
                dim,
                unit: unit.entries().to_vec(),
                functionals,
            })
        }
        _ => Err(Error::UnsupportedCarrier(format!(
            "the finite representation needs the coordinate carrier, not {}",
            carrier.name()
        ))),
    }
}

impl CoordinateRepresentation {
    /// The image of `a` under the `n + 1` evaluation functionals.
    pub fn image(&self, a: &UnitizedElement) -> Result<Vec<Rational>> {
        let v = a.x.as_vector().ok_or_else(|| {
            Error::CarrierMismatch("representation image needs a coordinate vector".into())
        })?;
        if v.dim() != self.dim {
            return Err(Error::CarrierMismatch(format!(
                "vector has dimension {}, representation expects {}",
                v.dim(),
                self.dim
            )));
        }
        let mut out: Vec<Rational> = v
            .entries()
            .iter()
            .zip(&self.unit)
            .map(|(xi, ei)| (xi / ei) + a.alpha.clone())
            .collect();
        out.push(a.alpha.clone());
        Ok(out)
    }

    pub fn sup_norm(image: &[Rational]) -> Rational {
        image
            .iter()
            .map(Rational::abs)
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Checks `gauge(a) = sup |image(a)|` exactly; returns both values.
    pub fn isometry_check(
        &self,
        carrier: &Carrier,
        a: &UnitizedElement,
    ) -> Result<(Rational, Rational, bool)> {
        let gauge = gauge_norm(carrier, a)?;
        let sup = Self::sup_norm(&self.image(a)?);
        let equal = gauge == sup;
        Ok((gauge, sup, equal))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::CoordinateVector;
    use crate::pl::PLFunction;
    use crate::unitization::{u_abs, u_join, u_leq};

    fn r(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn ri(n: i64) -> Rational {
        Rational::from_int(n)
    }

    fn coord() -> Carrier {
        Carrier::default_coordinate()
    }

    fn vec2(a: i64, b: i64) -> Element {
        Element::Vector(CoordinateVector::from_ints(&[a, b]))
    }

    fn hat(peak: Rational) -> Element {
        Element::Function(
            PLFunction::interval(vec![ri(-1), ri(0), ri(1)], vec![ri(0), peak, ri(0)]).unwrap(),
        )
    }

    fn unit_bump() -> Element {
        Element::Function(
            PLFunction::real_line(vec![ri(0), ri(1), ri(2)], vec![ri(0), ri(1), ri(0)]).unwrap(),
        )
    }

    fn all_carriers() -> [Carrier; 3] {
        [coord(), Carrier::interval(), Carrier::compact_support()]
    }

    fn sample_unitized(carrier: &Carrier, seed: u64) -> UnitizedElement {
        // Deterministic mix of scalar parts, both signs, zero included.
        let x = carrier.random_element(seed, &GenParams::default());
        let alpha = match seed % 5 {
            0 => Rational::zero(),
            1 => ri(1),
            2 => ri(-1),
            3 => r(seed as i64 % 7 - 3, 2),
            _ => r(-(seed as i64 % 11), 3),
        };
        UnitizedElement::new(x, alpha)
    }

    #[test]
    fn norm1_restricts_to_base_norm() {
        for carrier in all_carriers() {
            for seed in 0..30u64 {
                let x = carrier.random_element(seed, &GenParams::default());
                let a = UnitizedElement::from_element(x.clone());
                assert_eq!(norm1(&carrier, &a).unwrap(), carrier.base_norm(&x).unwrap());
            }
            assert_eq!(
                norm1(&carrier, &UnitizedElement::one(&carrier)).unwrap(),
                ri(1)
            );
        }
    }

    #[test]
    fn norm1_worked_examples() {
        let iv = Carrier::interval();
        // Deep dip: bracket <= 0, so norm1 = |alpha| = 1.
        let a = UnitizedElement::new(hat(ri(-2)), ri(1));
        assert_eq!(norm1(&iv, &a).unwrap(), ri(1));
        // f_n - 1: |f_n - 1| <= 1 pointwise, so norm1 = 1 for every n.
        for n in [2u32, 5, 17, 64] {
            let a = UnitizedElement::new(iv.make_fn(n).unwrap(), ri(-1));
            assert_eq!(norm1(&iv, &a).unwrap(), ri(1));
        }
    }

    #[test]
    fn norm0_seminorm_kernel_on_coordinate() {
        let c = coord();
        let e = c.truncation_unit().unwrap();
        let a = UnitizedElement::new(e.clone(), ri(-1));
        assert_eq!(norm0(&c, &a).unwrap(), ri(0));
        assert!(!a.is_zero());
        // Kernel is exactly the span of e - 1.
        for seed in 0..50u64 {
            let a = sample_unitized(&c, seed);
            let in_kernel = norm0(&c, &a).unwrap().is_zero();
            let spans = a.x == e.scale(&-a.alpha.clone());
            assert_eq!(in_kernel, spans, "seed {seed}");
        }
    }

    #[test]
    fn norm0_coordinate_agrees_with_ideal_sup_route() {
        // ||x + alpha e|| must equal sup { ||y|| : |y| <= |x + alpha| }
        // computed through the bracket and the envelope evaluator.
        let c = coord();
        for seed in 0..60u64 {
            let a = sample_unitized(&c, seed);
            let direct = norm0(&c, &a).unwrap();
            let b = bracket(&c, &a).unwrap();
            let via_envelope = c.ideal_sup_norm(&b, &a.alpha.abs()).unwrap();
            assert_eq!(direct, via_envelope, "seed {seed}");
        }
    }

    #[test]
    fn norm0_interval_fn_family() {
        // The distance from f_n to 1 in the smallest norm: exact integration
        // gives 1/(2n) (the two ramp triangles contribute 1/(2n) each, and
        // the norm carries the 1/2 factor).
        let iv = Carrier::interval();
        let registry = NormRegistry::with_builtins();
        for n in 2..=64u32 {
            let a = UnitizedElement::new(iv.make_fn(n).unwrap(), ri(-1));
            let expect = r(1, 2 * n as i64);
            assert_eq!(norm0(&iv, &a).unwrap(), expect, "n={n}");
            // Dense case: uL1 agrees with norm0 exactly.
            assert_eq!(
                registry
                    .eval(&NormKind::Custom("uL1".into()), &iv, &a)
                    .unwrap(),
                expect
            );
        }
    }

    #[test]
    fn norm0_compact_support_witness_value() {
        let cs = Carrier::compact_support();
        let a = UnitizedElement::new(unit_bump().neg(), ri(1));
        assert_eq!(norm0(&cs, &a).unwrap(), ri(1));
    }

    #[test]
    fn norm_c_worked_examples() {
        let c = coord();
        let a = UnitizedElement::new(vec2(2, -3), ri(1));
        assert_eq!(norm_c(&c, &a).unwrap(), r(7, 2));
        for carrier in all_carriers() {
            assert_eq!(
                norm_c(&carrier, &UnitizedElement::scalar(&carrier, r(-5, 2))).unwrap(),
                r(5, 2)
            );
        }
    }

    #[test]
    fn gauge_worked_examples_and_certificates() {
        let c = coord();
        let x = vec2(2, -3);
        let a = UnitizedElement::from_element(x.clone());
        let g = gauge_norm(&c, &a).unwrap();
        assert_eq!(g, ri(3));
        // Certificate scan: |x|/g lies in E*, |x|/(g - 1/8) does not.
        let scaled = x.scale(&g.recip());
        assert!(crate::axioms::in_e_star(&c, &scaled).unwrap());
        let tighter = x.scale(&(&g - &r(1, 8)).recip());
        assert!(!crate::axioms::in_e_star(&c, &tighter).unwrap());

        for carrier in all_carriers() {
            let a = UnitizedElement::scalar(&carrier, r(-3, 4));
            assert_eq!(gauge_norm(&carrier, &a).unwrap(), r(3, 4));
        }
        let cs = Carrier::compact_support();
        assert_eq!(
            gauge_norm(&cs, &UnitizedElement::from_element(unit_bump())).unwrap(),
            ri(1)
        );
    }

    #[test]
    fn gauge_equals_norm0_on_compact_support() {
        // Two code paths, one value: the envelope sup used by norm0 is the
        // gauge when the base norm is the sup norm.
        let cs = Carrier::compact_support();
        for seed in 0..60u64 {
            let a = sample_unitized(&cs, seed);
            assert_eq!(
                norm0(&cs, &a).unwrap(),
                gauge_norm(&cs, &a).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn ul1_worked_examples() {
        let iv = Carrier::interval();
        let registry = NormRegistry::with_builtins();
        let ul1_kind = NormKind::Custom("uL1".into());
        assert_eq!(
            registry
                .eval(&ul1_kind, &iv, &UnitizedElement::one(&iv))
                .unwrap(),
            ri(1)
        );
        let a = UnitizedElement::new(hat(ri(-2)), ri(1));
        assert_eq!(registry.eval(&ul1_kind, &iv, &a).unwrap(), r(1, 2));
        assert_eq!(norm0(&iv, &a).unwrap(), r(1, 2));
        // Unknown and incompatible norms are reported.
        assert!(matches!(
            registry.eval(&NormKind::Custom("nope".into()), &iv, &a),
            Err(Error::UnknownNorm(_))
        ));
        assert!(matches!(
            registry.eval(
                &ul1_kind,
                &coord(),
                &UnitizedElement::from_element(vec2(1, 1))
            ),
            Err(Error::UnsupportedCarrier(_))
        ));
    }

    #[test]
    fn dense_case_ul1_equals_norm0_on_samples() {
        let iv = Carrier::interval();
        let registry = NormRegistry::with_builtins();
        let ul1_kind = NormKind::Custom("uL1".into());
        for seed in 0..80u64 {
            let a = sample_unitized(&iv, seed);
            assert_eq!(
                registry.eval(&ul1_kind, &iv, &a).unwrap(),
                norm0(&iv, &a).unwrap(),
                "seed {seed}"
            );
        }
    }

    #[test]
    fn extremality_on_samples() {
        let registry = NormRegistry::with_builtins();
        for carrier in all_carriers() {
            let kinds = registry.unitization_norms(&carrier);
            for seed in 0..80u64 {
                let a = sample_unitized(&carrier, seed);
                let low = norm0(&carrier, &a).unwrap();
                let high = norm1(&carrier, &a).unwrap();
                assert!(low <= high);
                for kind in &kinds {
                    let val = registry.eval(kind, &carrier, &a).unwrap();
                    assert!(
                        low <= val && val <= high,
                        "{} on {}: {val} outside [{low}, {high}]",
                        kind.name(),
                        carrier.name()
                    );
                }
            }
        }
    }

    #[test]
    fn sandwich_with_explicit_constants() {
        let three = ri(3);
        for carrier in all_carriers() {
            for seed in 0..100u64 {
                let a = sample_unitized(&carrier, seed);
                let classic = norm_c(&carrier, &a).unwrap();
                let n1 = norm1(&carrier, &a).unwrap();
                assert!(&classic / &three <= n1, "{} seed {seed}", carrier.name());
                assert!(n1 <= &three * &classic, "{} seed {seed}", carrier.name());
            }
        }
    }

    #[test]
    fn lattice_norm_axioms_on_samples() {
        let registry = NormRegistry::with_builtins();
        for carrier in all_carriers() {
            for kind in registry.unitization_norms(&carrier) {
                for seed in 0..40u64 {
                    let a = sample_unitized(&carrier, seed);
                    let b = sample_unitized(&carrier, seed + 7_000);
                    let na = registry.eval(&kind, &carrier, &a).unwrap();
                    let nb = registry.eval(&kind, &carrier, &b).unwrap();
                    // Triangle inequality and homogeneity.
                    let ns = registry.eval(&kind, &carrier, &a.add(&b).unwrap()).unwrap();
                    assert!(ns <= &na + &nb);
                    let lambda = r(-5, 3);
                    assert_eq!(
                        registry.eval(&kind, &carrier, &a.scale(&lambda)).unwrap(),
                        lambda.abs() * na.clone()
                    );
                    // Monotonicity.
                    let abs_a = u_abs(&carrier, &a).unwrap();
                    let abs_b = u_abs(&carrier, &b).unwrap();
                    if u_leq(&carrier, &abs_a, &abs_b).unwrap() {
                        assert!(na <= nb);
                    }
                    // Separation (norm0 separates here: no truncation unit
                    // on these carriers).
                    if na.is_zero() {
                        assert!(a.is_zero());
                    }
                }
                // Unit normalization.
                let one = UnitizedElement::one(&carrier);
                assert_eq!(registry.eval(&kind, &carrier, &one).unwrap(), ri(1));
            }
        }
    }

    #[test]
    fn norm_c_is_not_monotone_for_the_nonstandard_order() {
        // |a| <= |b| with normC(a) > normC(b): the deep hat against the
        // scalar 1. Keeps the "unverified" flag on normC honest.
        let iv = Carrier::interval();
        let a = UnitizedElement::new(hat(ri(-2)), ri(1));
        let b = UnitizedElement::one(&iv);
        let abs_a = u_abs(&iv, &a).unwrap();
        let abs_b = u_abs(&iv, &b).unwrap();
        assert!(u_leq(&iv, &abs_a, &abs_b).unwrap());
        assert!(norm_c(&iv, &a).unwrap() > norm_c(&iv, &b).unwrap());
    }

    #[test]
    fn gauge_is_am_on_positive_samples() {
        for carrier in all_carriers() {
            for seed in 0..60u64 {
                let a =
                    crate::unitization::u_pos(&carrier, &sample_unitized(&carrier, seed)).unwrap();
                let b =
                    crate::unitization::u_pos(&carrier, &sample_unitized(&carrier, seed + 3_000))
                        .unwrap();
                let join = u_join(&carrier, &a, &b).unwrap();
                let g = gauge_norm(&carrier, &join).unwrap();
                let expect = gauge_norm(&carrier, &a)
                    .unwrap()
                    .max_of(&gauge_norm(&carrier, &b).unwrap());
                assert_eq!(g, expect, "{} seed {seed}", carrier.name());
            }
        }
    }

    #[test]
    fn dist_one_certified_bounds() {
        let registry = NormRegistry::with_builtins();
        let budget = DistBudget {
            n_max: 64,
            random_trials: 50,
            seed: 42,
        };

        // norm1: closed evidence on every carrier, distance exactly 1.
        for carrier in all_carriers() {
            let report = dist_one(&carrier, &registry, &NormKind::Norm1, &budget).unwrap();
            assert_eq!(report.lower, ri(1));
            assert_eq!(report.upper, ri(1));
        }

        // Interval, smallest norm: dense evidence, upper bound 1/(2 n_max).
        let iv = Carrier::interval();
        for kind in [NormKind::Norm0, NormKind::Custom("uL1".into())] {
            let report = dist_one(&iv, &registry, &kind, &budget).unwrap();
            assert_eq!(report.lower, ri(0));
            assert_eq!(report.upper, r(1, 128));
            assert!(report.witness_description.contains("f_64"));
        }

        // Compact support, smallest norm: closed evidence, distance 1.
        let cs = Carrier::compact_support();
        let report = dist_one(&cs, &registry, &NormKind::Norm0, &budget).unwrap();
        assert_eq!(report.lower, ri(1));
        assert_eq!(report.upper, ri(1));

        // Coordinate seminorm: the unit witnesses distance 0.
        let report = dist_one(&coord(), &registry, &NormKind::Norm0, &budget).unwrap();
        assert_eq!(report.upper, ri(0));
        assert!(report.witness_description.contains("unit"));
    }

    #[test]
    fn representation_worked_examples() {
        let c = coord();
        let repr = coordinate_representation(&c).unwrap();
        assert_eq!(repr.dim, 2);
        assert_eq!(repr.functionals.len(), 3);

        let e = c.truncation_unit().unwrap();
        let img = repr.image(&UnitizedElement::new(e, ri(-1))).unwrap();
        assert_eq!(img, vec![ri(0), ri(0), ri(-1)]);

        let img = repr.image(&UnitizedElement::one(&c)).unwrap();
        assert_eq!(img, vec![ri(1), ri(1), ri(1)]);

        let a = UnitizedElement::from_element(vec2(2, -3));
        let img = repr.image(&a).unwrap();
        assert_eq!(img, vec![ri(2), ri(-3), ri(0)]);
        let (gauge, sup, ok) = repr.isometry_check(&c, &a).unwrap();
        assert!(ok);
        assert_eq!(gauge, ri(3));
        assert_eq!(sup, ri(3));

        assert!(coordinate_representation(&Carrier::interval()).is_err());
    }

    #[test]
    fn representation_is_linear_and_lattice_respecting() {
        let c = coord();
        let repr = coordinate_representation(&c).unwrap();
        for seed in 0..60u64 {
            let a = sample_unitized(&c, seed);
            let b = sample_unitized(&c, seed + 11_000);
            // Linearity.
            let lhs = repr.image(&a.add(&b).unwrap()).unwrap();
            let rhs: Vec<Rational> = repr
                .image(&a)
                .unwrap()
                .into_iter()
                .zip(repr.image(&b).unwrap())
                .map(|(p, q)| p + q)
                .collect();
            assert_eq!(lhs, rhs);
            // Joins map to pointwise maxima.
            let join_img = repr.image(&u_join(&c, &a, &b).unwrap()).unwrap();
            let pointwise: Vec<Rational> = repr
                .image(&a)
                .unwrap()
                .into_iter()
                .zip(repr.image(&b).unwrap())
                .map(|(p, q)| p.max_of(&q))
                .collect();
            assert_eq!(join_img, pointwise, "seed {seed}");
            // Isometry.
            let (_, _, ok) = repr.isometry_check(&c, &a).unwrap();
            assert!(ok);
            // E maps onto functions vanishing at the extra point.
            let img = repr
                .image(&UnitizedElement::from_element(a.x.clone()))
                .unwrap();
            assert!(img.last().unwrap().is_zero());
        }
    }
}
