//! Counterexample shrinking: halve breakpoint counts and snap rationals to
//! smaller denominators while the failure persists.

use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

use crate::carrier::Element;
use crate::pl::PLFunction;
use crate::rational::Rational;
use crate::unitization::UnitizedElement;
use crate::verifier::properties::{Ctx, PropertyDef};

const MAX_STEPS: usize = 64;

/// Returns the smallest failing variant of `inputs` found. The check is
/// replayed with the same derived seed, so point-sampling checks see the
/// same sample points on every attempt.
pub(crate) fn shrink_inputs(
    ctx: &Ctx<'_>,
    def: &PropertyDef,
    check_seed: u64,
    inputs: Vec<UnitizedElement>,
) -> Vec<UnitizedElement> {
    let still_fails = |candidate: &[UnitizedElement]| -> bool {
        match (def.validate)(ctx.carrier, candidate) {
            Ok(true) => {}
            _ => return false,
        }
        let mut rng = ChaCha8Rng::seed_from_u64(check_seed);
        matches!((def.check)(ctx, &mut rng, candidate), Ok(out) if !out.ok)
    };

    let mut current = inputs;
    let mut steps = 0;
    'outer: while steps < MAX_STEPS {
        steps += 1;
        // Halve the breakpoint count of one function input at a time.
        for i in 0..current.len() {
            if let Some(halved) = halve_breakpoints(&current[i].x) {
                if halved != current[i].x {
                    let mut candidate = current.clone();
                    candidate[i].x = halved;
                    if still_fails(&candidate) {
                        current = candidate;
                        continue 'outer;
                    }
                }
            }
        }
        // Snap every rational to a smaller denominator.
        for den in [16i64, 4, 1] {
            let candidate: Vec<UnitizedElement> = current
                .iter()
                .map(|a| UnitizedElement::new(snap_element(&a.x, den), a.alpha.snap_to_den(den)))
                .collect();
            if candidate != current && still_fails(&candidate) {
                current = candidate;
                continue 'outer;
            }
        }
        break;
    }
    current
}

/// Drops every other interior breakpoint. `None` when the element has no
/// function structure to simplify.
fn halve_breakpoints(x: &Element) -> Option<Element> {
    let f = x.as_function()?;
    let n = f.breakpoints().len();
    if n <= 3 {
        return None;
    }
    let mut bps = Vec::with_capacity(n / 2 + 2);
    let mut vals = Vec::with_capacity(n / 2 + 2);
    for i in 0..n {
        if i == 0 || i == n - 1 || i % 2 == 1 {
            bps.push(f.breakpoints()[i].clone());
            vals.push(f.values()[i].clone());
        }
    }
    let rebuilt = match f.domain() {
        crate::pl::Domain::Interval => PLFunction::interval(bps, vals),
        crate::pl::Domain::RealLine => PLFunction::real_line(bps, vals),
    };
    rebuilt.ok().map(Element::Function)
}

fn snap_element(x: &Element, den: i64) -> Element {
    match x {
        Element::Vector(v) => {
            let entries = v.entries().iter().map(|r| r.snap_to_den(den)).collect();
            match crate::carrier::CoordinateVector::new(entries) {
                Ok(snapped) => Element::Vector(snapped),
                Err(_) => x.clone(),
            }
        }
        Element::Function(f) => {
            let vals: Vec<Rational> = f.values().iter().map(|r| r.snap_to_den(den)).collect();
            let rebuilt = match f.domain() {
                crate::pl::Domain::Interval => PLFunction::interval(f.breakpoints().to_vec(), vals),
                crate::pl::Domain::RealLine => {
                    PLFunction::real_line(f.breakpoints().to_vec(), vals)
                }
            };
            match rebuilt {
                Ok(snapped) => Element::Function(snapped),
                Err(_) => x.clone(),
            }
        }
    }
}
