//! Randomized property verification.
//!
//! Every in-scope claim is a catalogue entry (see [`properties::CATALOGUE`])
//! tying an identifier to a generator and an exact check. The runner
//! executes a property over a number of generated trials, shrinks the first
//! counterexample, and produces a [`PropertyReport`] that is reproducible
//! from `(property_id, carrier, seed, trials)`.

pub mod generate;
pub mod properties;

mod examples;
mod shrink;

use std::time::{Duration, Instant};

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use serde::Serialize;

pub use examples::{reproduce_example, ExampleParams, EXAMPLE_IDS};
pub use properties::{property_ids, Ctx, Outcome, PropertyDef, CATALOGUE};

use crate::carrier::Carrier;
use crate::error::{Error, Result};
use crate::norms::NormRegistry;
use crate::rational::Rational;
use crate::unitization::UnitizedElement;
use generate::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Outcome record for one `(property, carrier)` run. Serialization omits the
/// elapsed time so identical configurations produce byte-identical reports.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub property_id: String,
    pub carrier: String,
    pub status: Status,
    pub trials: u32,
    pub failures: u32,
    /// How many trials exercised the property's premise (implications).
    pub premise_hits: u64,
    pub seed: u64,
    pub exact_values: Vec<(String, Rational)>,
    /// Shrunk failing inputs (or an informational find for exploratory
    /// properties), in the element wire format.
    pub first_counterexample: Option<serde_json::Value>,
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Configuration for a catalogue run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub carriers: Vec<Carrier>,
    pub trials: u32,
    pub seed: u64,
    /// Restrict to these property ids (full catalogue when `None`).
    pub properties: Option<Vec<String>>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            carriers: vec![
                Carrier::default_coordinate(),
                Carrier::interval(),
                Carrier::compact_support(),
            ],
            trials: 1000,
            seed: 42,
            properties: None,
        }
    }
}

fn trial_seed(seed: u64, trial: u32) -> u64 {
    seed ^ 0x9E37_79B9_7F4A_7C15u64.wrapping_mul(trial as u64 + 1)
}

/// Runs one property on one carrier. Incompatible combinations are a
/// configuration error; `run_all` turns them into skip reports instead.
pub fn run_property(
    registry: &NormRegistry,
    property_id: &str,
    carrier: &Carrier,
    trials: u32,
    seed: u64,
) -> Result<PropertyReport> {
    let def = properties::find(property_id)
        .ok_or_else(|| Error::UnknownProperty(property_id.to_string()))?;
    if !def.compat.supports(carrier.kind()) {
        return Err(Error::IncompatibleProperty {
            property: property_id.to_string(),
            carrier: carrier.name().to_string(),
            reason: def.compat.reason().to_string(),
        });
    }

    let start = Instant::now();
    let ctx = Ctx { carrier, registry };
    let mut failures = 0u32;
    let mut premise_hits = 0u64;
    let mut exact_values: Vec<(String, Rational)> = Vec::new();
    let mut trial_values: Vec<(String, Rational)> = Vec::new();
    let mut first_counterexample: Option<serde_json::Value> = None;
    let mut note: Option<String> = None;

    if let Some(once) = def.once {
        let out = once(&ctx)?;
        exact_values.extend(out.values);
        if !out.ok {
            failures += 1;
            note = Some("one-shot check failed".to_string());
        }
    }

    let mut sampler = Sampler::new(carrier, seed);
    for trial in 0..trials {
        let inputs = (def.generate)(&mut sampler);
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, trial));
        let out = (def.check)(&ctx, &mut rng, &inputs)?;
        if trial == 0 {
            trial_values = out.values.clone();
        }
        if out.premise_hit {
            premise_hits += 1;
        }
        if !out.ok {
            failures += 1;
            if first_counterexample.is_none() {
                let shrunk = shrink::shrink_inputs(&ctx, def, trial_seed(seed, trial), inputs);
                first_counterexample = Some(counterexample_json(&shrunk));
                trial_values = out.values;
            }
        } else if out.record && first_counterexample.is_none() {
            first_counterexample = Some(counterexample_json(&inputs));
            trial_values = out.values;
            note = Some("informational find recorded (exploratory property)".to_string());
        }
    }
    exact_values.extend(trial_values);

    if trials == 0 {
        note = Some("no trials executed".to_string());
    }

    Ok(PropertyReport {
        property_id: property_id.to_string(),
        carrier: carrier.name().to_string(),
        status: if failures > 0 {
            Status::Fail
        } else {
            Status::Pass
        },
        trials,
        failures,
        premise_hits,
        seed,
        exact_values,
        first_counterexample,
        note,
        elapsed: start.elapsed(),
    })
}

fn counterexample_json(inputs: &[UnitizedElement]) -> serde_json::Value {
    serde_json::json!({ "inputs": inputs })
}

/// A skip report for an incompatible `(property, carrier)` pair.
pub fn skipped_report(
    property_id: &str,
    carrier: &Carrier,
    reason: &str,
    seed: u64,
) -> PropertyReport {
    PropertyReport {
        property_id: property_id.to_string(),
        carrier: carrier.name().to_string(),
        status: Status::Skipped,
        trials: 0,
        failures: 0,
        premise_hits: 0,
        seed,
        exact_values: Vec::new(),
        first_counterexample: None,
        note: Some(reason.to_string()),
        elapsed: Duration::ZERO,
    }
}

/// Runs the catalogue over the configured carriers, skipping incompatible
/// pairs with an explicit status.
pub fn run_all(registry: &NormRegistry, config: &RunConfig) -> Result<Vec<PropertyReport>> {
    if let Some(filter) = &config.properties {
        for id in filter {
            if properties::find(id).is_none() {
                return Err(Error::UnknownProperty(id.clone()));
            }
        }
    }
    let mut reports = Vec::new();
    for def in CATALOGUE {
        if let Some(filter) = &config.properties {
            if !filter.iter().any(|id| id == def.id) {
                continue;
            }
        }
        for carrier in &config.carriers {
            if !def.compat.supports(carrier.kind()) {
                reports.push(skipped_report(
                    def.id,
                    carrier,
                    def.compat.reason(),
                    config.seed,
                ));
                continue;
            }
            reports.push(run_property(
                registry,
                def.id,
                carrier,
                config.trials,
                config.seed,
            )?);
        }
    }
    Ok(reports)
}

pub fn all_pass(reports: &[PropertyReport]) -> bool {
    reports.iter().all(PropertyReport::passed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carrier::CarrierKind;
    use crate::rational::Rational;

    fn registry() -> NormRegistry {
        NormRegistry::with_builtins()
    }

    #[test]
    fn run_property_is_deterministic() {
        let reg = registry();
        let carrier = Carrier::interval();
        let a = run_property(&reg, "sandwich_classic", &carrier, 50, 7).unwrap();
        let b = run_property(&reg, "sandwich_classic", &carrier, 50, 7).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert_eq!(a.status, Status::Pass);
        assert_eq!(a.failures, 0);
    }

    #[test]
    fn incompatible_property_is_a_config_error() {
        let reg = registry();
        let err = run_property(&reg, "lemma_unit", &Carrier::interval(), 10, 7).unwrap_err();
        assert!(matches!(err, Error::IncompatibleProperty { .. }));
        let err = run_property(&reg, "no_such_property", &Carrier::interval(), 10, 7).unwrap_err();
        assert!(matches!(err, Error::UnknownProperty(_)));
    }

    #[test]
    fn zero_trials_trivially_pass_with_note() {
        let reg = registry();
        let report = run_property(&reg, "sandwich_classic", &Carrier::interval(), 0, 7).unwrap();
        assert_eq!(report.status, Status::Pass);
        assert_eq!(report.trials, 0);
        assert_eq!(report.note.as_deref(), Some("no trials executed"));
    }

    #[test]
    fn quick_catalogue_pass_over_all_carriers() {
        let reg = registry();
        let config = RunConfig {
            trials: 25,
            seed: 11,
            ..RunConfig::default()
        };
        let reports = run_all(&reg, &config).unwrap();
        assert!(
            all_pass(&reports),
            "failures: {:?}",
            reports
                .iter()
                .filter(|r| !r.passed())
                .map(|r| (&r.property_id, &r.carrier))
                .collect::<Vec<_>>()
        );
        // Incompatible pairs appear as explicit skips.
        assert!(reports
            .iter()
            .any(|r| r.property_id == "lemma_unit" && r.status == Status::Skipped));
        // Every catalogue property shows up for every carrier.
        assert_eq!(reports.len(), CATALOGUE.len() * 3);
    }

    #[test]
    fn run_all_rejects_unknown_filter_entries() {
        let reg = registry();
        let config = RunConfig {
            properties: Some(vec!["definitely_not_a_property".to_string()]),
            ..RunConfig::default()
        };
        assert!(matches!(
            run_all(&reg, &config),
            Err(Error::UnknownProperty(_))
        ));
    }

    #[test]
    fn exploratory_fuzz_records_normc_finds_without_failing() {
        let reg = registry();
        let carrier = Carrier::interval();
        let report = run_property(&reg, "normc_monotonicity_fuzz", &carrier, 400, 3).unwrap();
        assert_eq!(report.status, Status::Pass);
        assert_eq!(report.failures, 0);
        // The biased generator hits the known violation pattern.
        assert!(report.premise_hits > 0, "no finds recorded");
        assert!(report.first_counterexample.is_some());
        assert!(report
            .note
            .as_deref()
            .unwrap_or("")
            .contains("informational"));
    }

    #[test]
    fn shrinking_reduces_synthetic_failures() {
        // A deliberately false claim: every positive element has norm <= 1.
        // The shrinker should walk the failing sample down to a small one.
        static BOGUS: PropertyDef = PropertyDef {
            id: "bogus_norm_bound",
            description: "synthetic failing property for shrinker tests",
            compat: properties::Compat::All,
            exploratory: false,
            generate: |s| {
                vec![crate::unitization::UnitizedElement::from_element(
                    s.positive_element().scale(&Rational::from_int(16)),
                )]
            },
            validate: |carrier, inputs| {
                Ok(inputs.len() == 1
                    && inputs[0].alpha.is_zero()
                    && inputs[0].x.is_nonneg()
                    && carrier.validate(&inputs[0].x).is_ok())
            },
            check: |ctx, _rng, inputs| {
                let norm = ctx.carrier.base_norm(&inputs[0].x)?;
                Ok(Outcome::from_ok(norm <= Rational::one()))
            },
            once: None,
        };

        let reg = registry();
        let carrier = Carrier::interval();
        let ctx = Ctx {
            carrier: &carrier,
            registry: &reg,
        };
        let mut sampler = Sampler::new(&carrier, 5);
        // Find a failing input.
        let mut failing = None;
        for trial in 0..200u32 {
            let inputs = (BOGUS.generate)(&mut sampler);
            let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(5, trial));
            let out = (BOGUS.check)(&ctx, &mut rng, &inputs).unwrap();
            if !out.ok {
                failing = Some((trial, inputs));
                break;
            }
        }
        let (trial, inputs) = failing.expect("the bogus property must fail");
        let original_breakpoints = inputs[0]
            .x
            .as_function()
            .map(|f| f.breakpoints().len())
            .unwrap_or(0);
        let shrunk = shrink::shrink_inputs(&ctx, &BOGUS, trial_seed(5, trial), inputs.clone());
        // Still failing, still valid.
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(5, trial));
        let out = (BOGUS.check)(&ctx, &mut rng, &shrunk).unwrap();
        assert!(!out.ok);
        assert!((BOGUS.validate)(&carrier, &shrunk).unwrap());
        // And simpler: no more breakpoints than before, denominators <= 16.
        let f = shrunk[0].x.as_function().unwrap();
        assert!(f.breakpoints().len() <= original_breakpoints);
        use num_traits::ToPrimitive;
        for v in f.values() {
            assert!(v.denom().to_i64().unwrap() <= 16);
        }
    }

    #[test]
    fn property_catalogue_covers_every_kind() {
        // Guard against catalogue regressions: the ids the acceptance suite
        // relies on must exist.
        for id in [
            "truncation_axioms",
            "truncation_bound",
            "birkhoff_contraction",
            "av_oracle",
            "positivity_alpha",
            "order_ideal",
            "norm_domination",
            "lattice_norm_norm1",
            "lattice_norm_norm0",
            "lattice_norm_gauge",
            "lattice_norm_uL1",
            "extremality",
            "sandwich_classic",
            "lemma_unit",
            "norm1_closed_diag",
            "dense_equality",
            "seminorm_kernel",
            "gauge_am",
            "repr_isometry",
            "ideal_sup_consistency",
            "normc_monotonicity_fuzz",
        ] {
            assert!(properties::find(id).is_some(), "missing property {id}");
        }
        assert!(properties::find("lattice_norm_uL1")
            .unwrap()
            .compat
            .supports(CarrierKind::Interval));
    }
}
