//! The property catalogue: every runnable claim about truncations, the
//! unitization order, and the norms, expressed as checks over generated
//! inputs. All comparisons are exact.

use rand_chacha::ChaCha8Rng;

use crate::axioms;
use crate::carrier::{range_i64, Carrier, CarrierKind};
use crate::error::Result;
use crate::norms::{self, NormKind, NormRegistry};
use crate::rational::Rational;
use crate::unitization::{self, UnitizedElement};
use crate::verifier::generate::Sampler;

/// Shared context for property checks.
pub struct Ctx<'a> {
    pub carrier: &'a Carrier,
    pub registry: &'a NormRegistry,
}

/// Result of a single trial.
pub struct Outcome {
    pub ok: bool,
    /// The trial exercised the property's premise (for implications).
    pub premise_hit: bool,
    /// Store the inputs as an informational counterexample without counting
    /// a failure (exploratory properties).
    pub record: bool,
    pub values: Vec<(String, Rational)>,
}

impl Outcome {
    pub fn from_ok(ok: bool) -> Self {
        Outcome {
            ok,
            premise_hit: false,
            record: false,
            values: Vec::new(),
        }
    }

    fn with_premise(mut self, hit: bool) -> Self {
        self.premise_hit = hit;
        self
    }

    fn with_value(mut self, label: &str, value: Rational) -> Self {
        self.values.push((label.to_string(), value));
        self
    }
}

/// Which carriers a property applies to.
pub enum Compat {
    All,
    Only(&'static [CarrierKind], &'static str),
}

impl Compat {
    pub fn supports(&self, kind: CarrierKind) -> bool {
        match self {
            Compat::All => true,
            Compat::Only(kinds, _) => kinds.contains(&kind),
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            Compat::All => "",
            Compat::Only(_, reason) => reason,
        }
    }
}

type GenerateFn = fn(&mut Sampler<'_>) -> Vec<UnitizedElement>;
type ValidateFn = fn(&Carrier, &[UnitizedElement]) -> Result<bool>;
type CheckFn = fn(&Ctx<'_>, &mut ChaCha8Rng, &[UnitizedElement]) -> Result<Outcome>;
type OnceFn = fn(&Ctx<'_>) -> Result<Outcome>;

pub struct PropertyDef {
    pub id: &'static str,
    pub description: &'static str,
    pub compat: Compat,
    /// Exploratory properties record findings instead of failing.
    pub exploratory: bool,
    pub generate: GenerateFn,
    pub validate: ValidateFn,
    pub check: CheckFn,
    /// Optional one-shot check executed before the trials.
    pub once: Option<OnceFn>,
}

const COORD_ONLY: Compat = Compat::Only(
    &[CarrierKind::Coordinate],
    "requires a truncation unit (coordinate carrier)",
);
const INTERVAL_ONLY: Compat = Compat::Only(
    &[CarrierKind::Interval],
    "defined on the interval carrier only",
);
const NO_UNIT: Compat = Compat::Only(
    &[CarrierKind::Interval, CarrierKind::CompactSupport],
    "norm0 is only a seminorm when a truncation unit exists",
);

pub static CATALOGUE: &[PropertyDef] = &[
    PropertyDef {
        id: "truncation_axioms",
        description: "both defining truncation axioms hold on positive pairs",
        compat: Compat::All,
        exploratory: false,
        generate: gen_positive_pair,
        validate: validate_positive_pair,
        check: check_truncation_axioms,
        once: None,
    },
    PropertyDef {
        id: "truncation_bound",
        description: "truncated norms stay below 1; the witness family approaches 1",
        compat: Compat::All,
        exploratory: false,
        generate: gen_positive_single,
        validate: validate_positive_single,
        check: check_truncation_bound,
        once: Some(once_truncation_bound),
    },
    PropertyDef {
        id: "birkhoff_contraction",
        description: "truncation is a norm contraction on positive pairs",
        compat: Compat::All,
        exploratory: false,
        generate: gen_positive_pair,
        validate: validate_positive_pair,
        check: check_contraction,
        once: None,
    },
    PropertyDef {
        id: "av_oracle",
        description: "the absolute-value formula agrees with the pointwise model",
        compat: Compat::All,
        exploratory: false,
        generate: gen_unitized_single,
        validate: validate_any,
        check: check_av_oracle,
        once: None,
    },
    PropertyDef {
        id: "positivity_alpha",
        description: "positive unitized elements have nonnegative scalar part",
        compat: Compat::All,
        exploratory: false,
        generate: gen_maybe_positive,
        validate: validate_any,
        check: check_positivity_alpha,
        once: None,
    },
    PropertyDef {
        id: "order_ideal",
        description: "domination by a carrier element forces the scalar part to vanish",
        compat: Compat::All,
        exploratory: false,
        generate: gen_order_ideal,
        validate: validate_any,
        check: check_order_ideal,
        once: None,
    },
    PropertyDef {
        id: "norm_domination",
        description: "|x| <= alpha in the unitization implies ||x|| <= alpha",
        compat: Compat::All,
        exploratory: false,
        generate: gen_norm_domination,
        validate: validate_norm_domination,
        check: check_norm_domination,
        once: None,
    },
    PropertyDef {
        id: "lattice_norm_norm1",
        description: "norm1 satisfies the lattice-norm axioms with ||1|| = 1",
        compat: Compat::All,
        exploratory: false,
        generate: gen_unitized_pair,
        validate: validate_any,
        check: check_lattice_norm_norm1,
        once: None,
    },
    PropertyDef {
        id: "lattice_norm_norm0",
        description: "norm0 satisfies the lattice-norm axioms with ||1|| = 1",
        compat: NO_UNIT,
        exploratory: false,
        generate: gen_unitized_pair,
        validate: validate_any,
        check: check_lattice_norm_norm0,
        once: None,
    },
    PropertyDef {
        id: "lattice_norm_gauge",
        description: "the gauge satisfies the lattice-norm axioms with ||1|| = 1",
        compat: Compat::All,
        exploratory: false,
        generate: gen_unitized_pair,
        validate: validate_any,
        check: check_lattice_norm_gauge,
        once: None,
    },
    PropertyDef {
        id: "lattice_norm_uL1",
        description: "uL1 satisfies the lattice-norm axioms with ||1|| = 1",
        compat: INTERVAL_ONLY,
        exploratory: false,
        generate: gen_unitized_pair,
        validate: validate_any,
        check: check_lattice_norm_ul1,
        once: None,
    },
    PropertyDef {
        id: "extremality",
        description: "every registered unitization norm lies between norm0 and norm1",
        compat: Compat::All,
        exploratory: false,
        generate: gen_unitized_single,
        validate: validate_any,
        check: check_extremality,
        once: None,
    },
    PropertyDef {
        id: "sandwich_classic",
        description: "(||x|| + |alpha|)/3 <= norm1 <= 3 (||x|| + |alpha|)",
        compat: Compat::All,
        exploratory: false,
        generate: gen_unitized_single,
        validate: validate_any,
        check: check_sandwich,
        once: None,
    },
    PropertyDef {
        id: "lemma_unit",
        description: "|x| /\\ (1 - e) = 0 for all x, and 0 < e < 1",
        compat: COORD_ONLY,
        exploratory: false,
        generate: gen_element_single,
        validate: validate_any,
        check: check_lemma_unit,
        once: Some(once_lemma_unit),
    },
    PropertyDef {
        id: "norm1_closed_diag",
        description: "norm1(x - 1) >= 1 for every carrier element x",
        compat: Compat::All,
        exploratory: false,
        generate: gen_element_single,
        validate: validate_any,
        check: check_norm1_closed_diag,
        once: None,
    },
    PropertyDef {
        id: "dense_equality",
        description: "uL1 equals norm0 on the interval carrier",
        compat: INTERVAL_ONLY,
        exploratory: false,
        generate: gen_unitized_single,
        validate: validate_any,
        check: check_dense_equality,
        once: None,
    },
    PropertyDef {
        id: "seminorm_kernel",
        description: "norm0 vanishes exactly on the span of e - 1",
        compat: COORD_ONLY,
        exploratory: false,
        generate: gen_kernel_biased,
        validate: validate_any,
        check: check_seminorm_kernel,
        once: None,
    },
    PropertyDef {
        id: "gauge_am",
        description: "gauge(a \\/ b) = max(gauge a, gauge b) on positive pairs",
        compat: Compat::All,
        exploratory: false,
        generate: gen_positive_unitized_pair,
        validate: validate_positive_unitized_pair,
        check: check_gauge_am,
        once: None,
    },
    PropertyDef {
        id: "repr_isometry",
        description: "the gauge equals the sup norm of the finite-model image",
        compat: COORD_ONLY,
        exploratory: false,
        generate: gen_unitized_single,
        validate: validate_any,
        check: check_repr_isometry,
        once: None,
    },
    PropertyDef {
        id: "ideal_sup_consistency",
        description: "clipped samples respect the ideal supremum; witnesses approach it",
        compat: Compat::All,
        exploratory: false,
        generate: gen_ideal_sup,
        validate: validate_ideal_sup,
        check: check_ideal_sup,
        once: None,
    },
    PropertyDef {
        id: "normc_monotonicity_fuzz",
        description: "exploratory: search for nonstandard-order monotonicity violations of normC",
        compat: Compat::All,
        exploratory: true,
        generate: gen_normc_fuzz,
        validate: validate_any,
        check: check_normc_fuzz,
        once: None,
    },
];

pub fn find(id: &str) -> Option<&'static PropertyDef> {
    CATALOGUE.iter().find(|p| p.id == id)
}

pub fn property_ids() -> Vec<&'static str> {
    CATALOGUE.iter().map(|p| p.id).collect()
}

// ---- generators ----

fn gen_positive_pair(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    let (a, b) = s.pair();
    vec![
        UnitizedElement::from_element(a.abs()),
        UnitizedElement::from_element(b.abs()),
    ]
}

fn gen_positive_single(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    vec![UnitizedElement::from_element(s.positive_element())]
}

fn gen_element_single(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    vec![UnitizedElement::from_element(s.element())]
}

fn gen_unitized_single(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    vec![s.unitized()]
}

fn gen_unitized_pair(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    // Sometimes order the pair so the monotonicity premise fires.
    let a = s.unitized();
    if range_i64(s.rng(), 0, 2) == 0 {
        let bump = s.positive_unitized();
        let abs_a = unitization::u_abs(s.carrier, &a).expect("valid element");
        let b = abs_a.add(&bump).expect("same carrier");
        vec![a, b]
    } else {
        let b = s.unitized();
        vec![a, b]
    }
}

fn gen_maybe_positive(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    if range_i64(s.rng(), 0, 1) == 0 {
        vec![s.positive_unitized()]
    } else {
        vec![s.unitized()]
    }
}

fn gen_order_ideal(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    let y = s.element();
    let a = match range_i64(s.rng(), 0, 2) {
        0 => UnitizedElement::from_element(y.scale(&Rational::ratio(1, 2))),
        1 => {
            // Clip a random element into [-|y|, |y|]: premise guaranteed.
            let z = s.element();
            let clipped = s
                .carrier
                .clip_to_envelope(&z, &y.abs(), &Rational::zero())
                .expect("envelope |y| is valid");
            UnitizedElement::from_element(clipped)
        }
        _ => s.unitized(),
    };
    vec![a, UnitizedElement::from_element(y)]
}

fn gen_norm_domination(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    let den = range_i64(s.rng(), 1, 4);
    let alpha = Rational::ratio(range_i64(s.rng(), 1, 4 * den), den);
    let x = if range_i64(s.rng(), 0, 1) == 0 {
        // alpha-scaled truncation fixed point: premise guaranteed.
        let frac = Rational::ratio(range_i64(s.rng(), 0, 8), 8);
        s.star_element().scale(&(&alpha * &frac))
    } else {
        s.element()
    };
    vec![UnitizedElement::from_element(x), s.scalar(alpha)]
}

fn gen_kernel_biased(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    if range_i64(s.rng(), 0, 2) == 0 {
        // Exactly in the kernel: x = -alpha e.
        let e = s.carrier.truncation_unit().expect("coordinate carrier");
        let den = range_i64(s.rng(), 1, 6);
        let alpha = Rational::ratio(range_i64(s.rng(), -3 * den, 3 * den), den);
        vec![UnitizedElement::new(e.scale(&-alpha.clone()), alpha)]
    } else {
        vec![s.unitized()]
    }
}

fn gen_positive_unitized_pair(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    vec![s.positive_unitized(), s.positive_unitized()]
}

fn gen_ideal_sup(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    let z = s.element();
    let g = s.positive_element();
    let den = range_i64(s.rng(), 1, 4);
    let c = Rational::ratio(range_i64(s.rng(), 0, 3 * den), den);
    vec![
        UnitizedElement::from_element(z),
        UnitizedElement::from_element(g),
        s.scalar(c),
    ]
}

fn gen_normc_fuzz(s: &mut Sampler<'_>) -> Vec<UnitizedElement> {
    if range_i64(s.rng(), 0, 3) == 0 {
        // Dominated-by-1 pattern: a = 1 - p with 0 <= p <= 1.
        let p = s.positive_element();
        let p = s.carrier.truncate(&p).expect("positive");
        let a = UnitizedElement::new(p.neg(), Rational::one());
        let b = UnitizedElement::new(s.carrier.zero(), Rational::one());
        vec![a, b]
    } else {
        vec![s.unitized(), s.unitized()]
    }
}

// ---- validators (used for generation sanity and shrink candidates) ----

fn validate_any(carrier: &Carrier, inputs: &[UnitizedElement]) -> Result<bool> {
    for a in inputs {
        carrier.validate(&a.x)?;
    }
    Ok(true)
}

fn validate_positive_pair(carrier: &Carrier, inputs: &[UnitizedElement]) -> Result<bool> {
    Ok(validate_any(carrier, inputs)?
        && inputs.len() == 2
        && inputs.iter().all(|a| a.alpha.is_zero() && a.x.is_nonneg()))
}

fn validate_positive_single(carrier: &Carrier, inputs: &[UnitizedElement]) -> Result<bool> {
    Ok(validate_any(carrier, inputs)?
        && inputs.len() == 1
        && inputs[0].alpha.is_zero()
        && inputs[0].x.is_nonneg())
}

fn validate_norm_domination(carrier: &Carrier, inputs: &[UnitizedElement]) -> Result<bool> {
    Ok(validate_any(carrier, inputs)?
        && inputs.len() == 2
        && inputs[0].alpha.is_zero()
        && inputs[1].x.is_zero()
        && inputs[1].alpha.is_positive())
}

fn validate_positive_unitized_pair(carrier: &Carrier, inputs: &[UnitizedElement]) -> Result<bool> {
    if !validate_any(carrier, inputs)? || inputs.len() != 2 {
        return Ok(false);
    }
    Ok(unitization::u_is_positive(carrier, &inputs[0])?
        && unitization::u_is_positive(carrier, &inputs[1])?)
}

fn validate_ideal_sup(carrier: &Carrier, inputs: &[UnitizedElement]) -> Result<bool> {
    if !validate_any(carrier, inputs)? || inputs.len() != 3 {
        return Ok(false);
    }
    if !inputs[0].alpha.is_zero() || !inputs[1].alpha.is_zero() || !inputs[2].x.is_zero() {
        return Ok(false);
    }
    carrier.envelope_is_nonneg(&inputs[1].x, &inputs[2].alpha)
}

// ---- checks ----

fn check_truncation_axioms(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let ok = axioms::axiom_check_truncation(ctx.carrier, &inputs[0].x, &inputs[1].x)?;
    Ok(Outcome::from_ok(ok))
}

fn check_truncation_bound(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let t = ctx.carrier.truncate(&inputs[0].x)?;
    let norm = ctx.carrier.base_norm(&t)?;
    let ok = norm <= Rational::one();
    Ok(Outcome::from_ok(ok).with_value("truncated_norm", norm))
}

fn once_truncation_bound(ctx: &Ctx<'_>) -> Result<Outcome> {
    let bound = axioms::truncation_bound(ctx.carrier);
    let mut ok = bound.bound == Rational::one();
    let mut outcome = Outcome::from_ok(true).with_value("bound", bound.bound.clone());
    match ctx.carrier.kind() {
        CarrierKind::Interval => {
            // The family must reach at least 1 - 1/128 without crossing 1.
            let mut last = Rational::zero();
            for n in 2..=64u32 {
                let member = axioms::bound_family_member(ctx.carrier, n)?;
                let norm = ctx.carrier.base_norm(&ctx.carrier.truncate(&member)?)?;
                let expect = Rational::one() - Rational::ratio(1, 2 * n as i64);
                ok = ok && norm == expect;
                last = norm;
            }
            ok = ok && last >= Rational::one() - Rational::ratio(1, 128);
            outcome = outcome.with_value("family_last", last);
        }
        _ => {
            let member = axioms::bound_family_member(ctx.carrier, 2)?;
            let norm = ctx.carrier.base_norm(&ctx.carrier.truncate(&member)?)?;
            ok = ok && bound.attained && norm == Rational::one();
            outcome = outcome.with_value("attained_norm", norm);
        }
    }
    outcome.ok = ok;
    Ok(outcome)
}

fn check_contraction(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let ok = axioms::contraction_check(ctx.carrier, &inputs[0].x, &inputs[1].x)?;
    Ok(Outcome::from_ok(ok))
}

fn check_av_oracle(
    ctx: &Ctx<'_>,
    rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let a = &inputs[0];
    let abs = unitization::u_abs(ctx.carrier, a)?;
    match ctx.carrier.kind() {
        CarrierKind::Coordinate => {
            // Finite model: n coordinates plus the point at infinity.
            let unit = ctx.carrier.truncation_unit().expect("coordinate carrier");
            let e = unit.as_vector().expect("coordinate");
            let xv = a.x.as_vector().expect("validated");
            let gv = abs.x.as_vector().expect("abs stays in carrier");
            let mut ok = abs.alpha == a.alpha.abs();
            for i in 0..e.dim() {
                let model_in = &xv.entries()[i] / &e.entries()[i] + a.alpha.clone();
                let model_out = &gv.entries()[i] / &e.entries()[i] + abs.alpha.clone();
                ok = ok && model_out == model_in.abs();
            }
            Ok(Outcome::from_ok(ok))
        }
        _ => {
            let xf = a.x.as_function().expect("validated");
            let gf = abs.x.as_function().expect("abs stays in carrier");
            let interval = ctx.carrier.kind() == CarrierKind::Interval;
            for _ in 0..1000 {
                let den = range_i64(rng, 1, 97);
                let bound = if interval { den } else { 10 * den };
                let t = Rational::ratio(range_i64(rng, -bound, bound), den);
                let lhs = gf.eval(&t)? + abs.alpha.clone();
                let rhs = (xf.eval(&t)? + a.alpha.clone()).abs();
                if lhs != rhs {
                    return Ok(Outcome::from_ok(false)
                        .with_value("at_t", t)
                        .with_value("formula", lhs)
                        .with_value("pointwise", rhs));
                }
            }
            Ok(Outcome::from_ok(true))
        }
    }
}

fn check_positivity_alpha(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let a = &inputs[0];
    let positive = unitization::u_is_positive(ctx.carrier, a)?;
    let ok = !positive || !a.alpha.is_negative();
    Ok(Outcome::from_ok(ok).with_premise(positive))
}

fn check_order_ideal(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let (a, y) = (&inputs[0], &inputs[1]);
    let abs_a = unitization::u_abs(ctx.carrier, a)?;
    let abs_y = UnitizedElement::from_element(y.x.abs());
    let premise = unitization::u_leq(ctx.carrier, &abs_a, &abs_y)?;
    let ok = !premise || a.alpha.is_zero();
    Ok(Outcome::from_ok(ok).with_premise(premise))
}

fn check_norm_domination(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let (x, alpha) = (&inputs[0].x, &inputs[1].alpha);
    let abs_x = unitization::u_abs(ctx.carrier, &inputs[0])?;
    let bound = UnitizedElement::new(ctx.carrier.zero(), alpha.clone());
    let premise = unitization::u_leq(ctx.carrier, &abs_x, &bound)?;
    let ok = !premise || ctx.carrier.base_norm(x)? <= *alpha;
    Ok(Outcome::from_ok(ok).with_premise(premise))
}

fn check_lattice_norm(
    ctx: &Ctx<'_>,
    rng: &mut ChaCha8Rng,
    kind: &NormKind,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let (a, b) = (&inputs[0], &inputs[1]);
    let na = ctx.registry.eval(kind, ctx.carrier, a)?;
    let nb = ctx.registry.eval(kind, ctx.carrier, b)?;

    // Triangle inequality.
    let ns = ctx.registry.eval(kind, ctx.carrier, &a.add(b)?)?;
    let mut ok = ns <= &na + &nb;

    // Absolute homogeneity with a random scalar.
    let den = range_i64(rng, 1, 6);
    let lambda = Rational::ratio(range_i64(rng, -4 * den, 4 * den), den);
    let nl = ctx.registry.eval(kind, ctx.carrier, &a.scale(&lambda))?;
    ok = ok && nl == lambda.abs() * na.clone();

    // Monotonicity whenever |a| <= |b| holds.
    let abs_a = unitization::u_abs(ctx.carrier, a)?;
    let abs_b = unitization::u_abs(ctx.carrier, b)?;
    let premise = unitization::u_leq(ctx.carrier, &abs_a, &abs_b)?;
    if premise {
        ok = ok && na <= nb;
    }

    // Point separation and unit normalization.
    if na.is_zero() {
        ok = ok && a.is_zero();
    }
    let one = UnitizedElement::one(ctx.carrier);
    ok = ok && ctx.registry.eval(kind, ctx.carrier, &one)? == Rational::one();

    Ok(Outcome::from_ok(ok).with_premise(premise))
}

fn check_lattice_norm_norm1(
    ctx: &Ctx<'_>,
    rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    check_lattice_norm(ctx, rng, &NormKind::Norm1, inputs)
}

fn check_lattice_norm_norm0(
    ctx: &Ctx<'_>,
    rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    check_lattice_norm(ctx, rng, &NormKind::Norm0, inputs)
}

fn check_lattice_norm_gauge(
    ctx: &Ctx<'_>,
    rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    check_lattice_norm(ctx, rng, &NormKind::Gauge, inputs)
}

fn check_lattice_norm_ul1(
    ctx: &Ctx<'_>,
    rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    check_lattice_norm(ctx, rng, &NormKind::Custom("uL1".into()), inputs)
}

fn check_extremality(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let a = &inputs[0];
    let low = norms::norm0(ctx.carrier, a)?;
    let high = norms::norm1(ctx.carrier, a)?;
    let mut ok = low <= high;
    for kind in ctx.registry.unitization_norms(ctx.carrier) {
        let val = ctx.registry.eval(&kind, ctx.carrier, a)?;
        ok = ok && low <= val && val <= high;
    }
    Ok(Outcome::from_ok(ok)
        .with_value("norm0", low)
        .with_value("norm1", high))
}

fn check_sandwich(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let a = &inputs[0];
    let classic = norms::norm_c(ctx.carrier, a)?;
    let n1 = norms::norm1(ctx.carrier, a)?;
    let three = Rational::from_int(3);
    let ok = &classic / &three <= n1 && n1 <= &three * &classic;
    Ok(Outcome::from_ok(ok)
        .with_value("norm1", n1)
        .with_value("normC", classic))
}

fn check_lemma_unit(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let e = ctx.carrier.truncation_unit().expect("compat gate");
    let one_minus_e = UnitizedElement::new(e.neg(), Rational::one());
    let abs_x = unitization::u_abs(ctx.carrier, &inputs[0])?;
    let m = unitization::u_meet(ctx.carrier, &abs_x, &one_minus_e)?;
    Ok(Outcome::from_ok(m.is_zero()))
}

fn once_lemma_unit(ctx: &Ctx<'_>) -> Result<Outcome> {
    let e = UnitizedElement::from_element(ctx.carrier.truncation_unit().expect("compat gate"));
    let one = UnitizedElement::one(ctx.carrier);
    let zero = UnitizedElement::new(ctx.carrier.zero(), Rational::zero());
    let ok = unitization::u_leq(ctx.carrier, &zero, &e)?
        && unitization::u_leq(ctx.carrier, &e, &one)?
        && e != zero
        && e != one;
    Ok(Outcome::from_ok(ok))
}

fn check_norm1_closed_diag(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let a = UnitizedElement::new(inputs[0].x.clone(), Rational::from_int(-1));
    let n1 = norms::norm1(ctx.carrier, &a)?;
    Ok(Outcome::from_ok(n1 >= Rational::one()).with_value("norm1", n1))
}

fn check_dense_equality(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let a = &inputs[0];
    let ul1 = ctx
        .registry
        .eval(&NormKind::Custom("uL1".into()), ctx.carrier, a)?;
    let n0 = norms::norm0(ctx.carrier, a)?;
    Ok(Outcome::from_ok(ul1 == n0)
        .with_value("uL1", ul1)
        .with_value("norm0", n0))
}

fn check_seminorm_kernel(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let a = &inputs[0];
    let e = ctx.carrier.truncation_unit().expect("compat gate");
    let value = norms::norm0(ctx.carrier, a)?;
    let in_kernel = value.is_zero();
    let spans = a.x == e.scale(&-a.alpha.clone());
    Ok(Outcome::from_ok(in_kernel == spans)
        .with_premise(in_kernel)
        .with_value("norm0", value))
}

fn check_gauge_am(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let (a, b) = (&inputs[0], &inputs[1]);
    let join = unitization::u_join(ctx.carrier, a, b)?;
    let lhs = norms::gauge_norm(ctx.carrier, &join)?;
    let rhs = norms::gauge_norm(ctx.carrier, a)?.max_of(&norms::gauge_norm(ctx.carrier, b)?);
    Ok(Outcome::from_ok(lhs == rhs).with_value("gauge_join", lhs))
}

fn check_repr_isometry(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let repr = norms::coordinate_representation(ctx.carrier)?;
    let (gauge, sup, ok) = repr.isometry_check(ctx.carrier, &inputs[0])?;
    Ok(Outcome::from_ok(ok)
        .with_value("gauge", gauge)
        .with_value("sup_image", sup))
}

fn check_ideal_sup(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let (z, g, c) = (&inputs[0].x, &inputs[1].x, &inputs[2].alpha);
    let target = ctx.carrier.ideal_sup_norm(g, c)?;
    let y = ctx.carrier.clip_to_envelope(z, g, c)?;

    // The clipped element is genuinely inside the order interval.
    let abs_y = unitization::u_abs(ctx.carrier, &UnitizedElement::from_element(y.clone()))?;
    let envelope = UnitizedElement::new(g.clone(), c.clone());
    let mut ok = unitization::u_leq(ctx.carrier, &abs_y, &envelope)?;

    // Its norm is a lower bound for the supremum.
    let ny = ctx.carrier.base_norm(&y)?;
    ok = ok && ny <= target;

    // Constructed witnesses close in on the supremum.
    for n in [2u32, 64] {
        let w = ctx.carrier.ideal_sup_witness(g, c, n)?;
        let nw = ctx.carrier.base_norm(&w)?;
        ok = ok && nw <= target && &target - &nw <= Rational::ratio(1, n as i64);
    }
    Ok(Outcome::from_ok(ok).with_value("ideal_sup", target))
}

fn check_normc_fuzz(
    ctx: &Ctx<'_>,
    _rng: &mut ChaCha8Rng,
    inputs: &[UnitizedElement],
) -> Result<Outcome> {
    let (a, b) = (&inputs[0], &inputs[1]);
    let abs_a = unitization::u_abs(ctx.carrier, a)?;
    let abs_b = unitization::u_abs(ctx.carrier, b)?;
    if unitization::u_leq(ctx.carrier, &abs_a, &abs_b)? {
        let nca = norms::norm_c(ctx.carrier, a)?;
        let ncb = norms::norm_c(ctx.carrier, b)?;
        if nca > ncb {
            // A genuine monotonicity violation: recorded, never asserted.
            let mut out = Outcome::from_ok(true).with_premise(true);
            out.record = true;
            out.values.push(("normC_a".into(), nca));
            out.values.push(("normC_b".into(), ncb));
            return Ok(out);
        }
    }
    Ok(Outcome::from_ok(true))
}
