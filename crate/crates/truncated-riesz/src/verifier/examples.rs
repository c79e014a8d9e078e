//! Exact reproductions of the worked examples, as runnable reports.

use std::time::Instant;

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::norms::{self, NormKind, NormRegistry};
use crate::rational::Rational;
use crate::unitization::{bracket, UnitizedElement};
use crate::verifier::generate::Sampler;
use crate::verifier::{PropertyReport, Status};

pub const EXAMPLE_IDS: &[&str] = &["fn_sequence", "compact_support_witness", "unit_kernel"];

#[derive(Clone, Debug)]
pub struct ExampleParams {
    /// Largest index in the `f_n` table.
    pub n_max: u32,
    pub seed: u64,
}

impl Default for ExampleParams {
    fn default() -> Self {
        ExampleParams {
            n_max: 64,
            seed: 42,
        }
    }
}

/// Reproduces a worked example and verifies its exact values. Failures count
/// rows whose recomputed value differs from the expected closed form.
pub fn reproduce_example(
    registry: &NormRegistry,
    example_id: &str,
    params: &ExampleParams,
) -> Result<PropertyReport> {
    match example_id {
        "fn_sequence" => fn_sequence(registry, params),
        "compact_support_witness" => compact_support_witness(params),
        "unit_kernel" => unit_kernel(params),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// The plateau family on the interval carrier: `||f_n - 1||_1 = 1` for every
/// `n`, while the explicit `uL1` distance shrinks to zero (exact value
/// `1/(2n)`: each ramp contributes a triangle of area `1/(2n)` and the norm
/// halves the integral). The smallest norm agrees with `uL1` on this
/// carrier, so the same values certify that the distance from `1` to `E`
/// vanishes in the limit while staying 1 in the largest norm.
fn fn_sequence(registry: &NormRegistry, params: &ExampleParams) -> Result<PropertyReport> {
    let start = Instant::now();
    let carrier = Carrier::interval();
    let ul1 = NormKind::Custom("uL1".into());
    let mut failures = 0u32;
    let mut rows: Vec<(String, Rational)> = Vec::new();
    let mut trials = 0u32;

    for n in 2..=params.n_max {
        trials += 1;
        let a = UnitizedElement::new(carrier.make_fn(n)?, Rational::from_int(-1));
        let dist_u = registry.eval(&ul1, &carrier, &a)?;
        let dist_1 = norms::norm1(&carrier, &a)?;
        let dist_0 = norms::norm0(&carrier, &a)?;

        let expect_u = Rational::ratio(1, 2 * n as i64);
        if dist_u != expect_u || dist_1 != Rational::one() || dist_0 != dist_u {
            failures += 1;
        }
        rows.push((format!("n={n} uL1(f_n - 1)"), dist_u));
        rows.push((format!("n={n} norm1(f_n - 1)"), dist_1));
    }

    Ok(PropertyReport {
        property_id: "fn_sequence".to_string(),
        carrier: carrier.name().to_string(),
        status: if failures > 0 {
            Status::Fail
        } else {
            Status::Pass
        },
        trials,
        failures,
        premise_hits: 0,
        seed: params.seed,
        exact_values: rows,
        first_counterexample: None,
        note: None,
        elapsed: start.elapsed(),
    })
}

/// Bumps `0 <= f <= 1` on the compact-support carrier: the support extension
/// `g` satisfies `f <= g <= 1` with `||g|| = 1`, and the smallest norm keeps
/// `-f + 1` at distance exactly 1 from zero, certifying that `1` stays away
/// from `E`.
fn compact_support_witness(params: &ExampleParams) -> Result<PropertyReport> {
    let start = Instant::now();
    let carrier = Carrier::compact_support();
    let mut sampler = Sampler::new(&carrier, params.seed);
    let mut failures = 0u32;
    let mut rows: Vec<(String, Rational)> = Vec::new();
    let trials = 20u32;

    for i in 0..trials {
        // A random bump with 0 <= f <= 1.
        let f = carrier.truncate(&sampler.element().abs())?;
        let a_bound = match f.as_function().and_then(|pl| pl.span()) {
            Some((lo, hi)) => lo.abs().max_of(&hi.abs()).max_of(&Rational::one()),
            None => Rational::one(),
        };
        let g = carrier.support_extension_witness(&f, &a_bound)?;

        let sandwiched = carrier.leq(&f, &g)?
            && g.as_function().expect("compact element").max_value() <= Rational::one();
        let g_norm = carrier.base_norm(&g)?;
        let dist = norms::norm0(&carrier, &UnitizedElement::new(f.neg(), Rational::one()))?;
        if !sandwiched || g_norm != Rational::one() || dist != Rational::one() {
            failures += 1;
        }
        if i == 0 {
            rows.push(("||g||".to_string(), g_norm));
            rows.push(("norm0(-f + 1)".to_string(), dist));
        }
    }
    rows.push((
        "bumps_checked".to_string(),
        Rational::from_int(trials as i64),
    ));

    Ok(PropertyReport {
        property_id: "compact_support_witness".to_string(),
        carrier: carrier.name().to_string(),
        status: if failures > 0 {
            Status::Fail
        } else {
            Status::Pass
        },
        trials,
        failures,
        premise_hits: 0,
        seed: params.seed,
        exact_values: rows,
        first_counterexample: None,
        note: None,
        elapsed: start.elapsed(),
    })
}

/// The seminorm kernel on the coordinate carrier: `||e - 1||_0 = 0` with
/// `e - 1 != 0`, and the truncation-unit formula agrees with the abstract
/// supremum (computed through the envelope evaluator) on random elements.
fn unit_kernel(params: &ExampleParams) -> Result<PropertyReport> {
    let start = Instant::now();
    let carrier = Carrier::default_coordinate();
    let e = carrier.truncation_unit().expect("coordinate carrier");
    let mut rows: Vec<(String, Rational)> = Vec::new();
    let mut failures = 0u32;

    let e_minus_one = UnitizedElement::new(e.clone(), Rational::from_int(-1));
    let kernel_value = norms::norm0(&carrier, &e_minus_one)?;
    let nonzero = !e_minus_one.is_zero();
    if !kernel_value.is_zero() || !nonzero {
        failures += 1;
    }
    rows.push(("norm0(e - 1)".to_string(), kernel_value));
    rows.push((
        "e - 1 is nonzero".to_string(),
        Rational::from_int(nonzero as i64),
    ));

    // The unit formula against the envelope route, on random elements.
    let trials = 1000u32;
    let mut sampler = Sampler::new(&carrier, params.seed);
    for _ in 0..trials {
        let a = sampler.unitized();
        let by_formula = norms::norm0(&carrier, &a)?;
        let by_envelope = carrier.ideal_sup_norm(&bracket(&carrier, &a)?, &a.alpha.abs())?;
        if by_formula != by_envelope {
            failures += 1;
        }
    }
    rows.push((
        "random_elements_checked".to_string(),
        Rational::from_int(trials as i64),
    ));

    Ok(PropertyReport {
        property_id: "unit_kernel".to_string(),
        carrier: carrier.name().to_string(),
        status: if failures > 0 {
            Status::Fail
        } else {
            Status::Pass
        },
        trials: trials + 1,
        failures,
        premise_hits: 0,
        seed: params.seed,
        exact_values: rows,
        first_counterexample: None,
        note: None,
        elapsed: start.elapsed(),
    })
}
