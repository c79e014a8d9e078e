//! Truncation contracts: the defining axioms, the normalized bound, the set
//! `E*` of truncation fixed points, and the Birkhoff contraction property.

use serde::Serialize;

use crate::carrier::{Carrier, CarrierKind, Element};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Summary of a carrier's truncation data.
#[derive(Clone, Debug, Serialize)]
pub struct TruncationContract {
    /// Carrier identifier.
    pub domain: String,
    /// The truncation unit, when the truncation is a meet with an element.
    pub unit: Option<Element>,
    /// `sup { ||tau(x)|| : x >= 0 }`; always 1 after normalization.
    pub bound: Rational,
}

pub fn truncation_contract(carrier: &Carrier) -> TruncationContract {
    TruncationContract {
        domain: carrier.name().to_string(),
        unit: carrier.truncation_unit(),
        bound: Rational::one(),
    }
}

/// Checks both defining axioms of a truncation on the pair `(x, y)`:
/// `x /\ tau(y) <= tau(x) <= x` and `tau(x) /\ y = x /\ tau(y)`.
pub fn axiom_check_truncation(carrier: &Carrier, x: &Element, y: &Element) -> Result<bool> {
    let tx = carrier.truncate(x)?;
    let ty = carrier.truncate(y)?;
    let x_meet_ty = x.meet(&ty)?;
    let first = carrier.leq(&x_meet_ty, &tx)? && carrier.leq(&tx, x)?;
    let second = tx.meet(y)? == x_meet_ty;
    Ok(first && second)
}

/// How the normalized truncation bound is realized on a carrier.
#[derive(Clone, Debug, Serialize)]
pub enum BoundWitness {
    /// The supremum is a maximum, attained at this element.
    Attained { element: Element },
    /// The supremum is approached by a one-parameter family; see
    /// [`bound_family_member`].
    Family { description: String },
}

/// The exact truncation bound together with its witness.
#[derive(Clone, Debug, Serialize)]
pub struct TruncationBound {
    pub bound: Rational,
    pub attained: bool,
    pub witness: BoundWitness,
}

/// The closed-form supremum `sup { ||tau(x)|| : x >= 0 }` for a built-in
/// carrier. Normalization makes it exactly 1 everywhere; the carriers differ
/// in whether it is attained.
pub fn truncation_bound(carrier: &Carrier) -> TruncationBound {
    match carrier.kind() {
        CarrierKind::Coordinate => TruncationBound {
            bound: Rational::one(),
            attained: true,
            witness: BoundWitness::Attained {
                element: carrier
                    .truncation_unit()
                    .expect("coordinate carrier has a unit"),
            },
        },
        CarrierKind::Interval => TruncationBound {
            bound: Rational::one(),
            attained: false,
            witness: BoundWitness::Family {
                description: "plateau trapezoids f_n with ||tau(f_n)|| = 1 - 1/(2n)".into(),
            },
        },
        CarrierKind::CompactSupport => TruncationBound {
            bound: Rational::one(),
            attained: true,
            witness: BoundWitness::Attained {
                element: unit_bump(),
            },
        },
    }
}

/// The n-th member of the witness family for the truncation bound: `f_n` on
/// the interval carrier, the attaining element elsewhere.
pub fn bound_family_member(carrier: &Carrier, n: u32) -> Result<Element> {
    match carrier.kind() {
        CarrierKind::Interval => carrier.make_fn(n),
        CarrierKind::Coordinate => Ok(carrier
            .truncation_unit()
            .expect("coordinate carrier has a unit")),
        CarrierKind::CompactSupport => Ok(unit_bump()),
    }
}

fn unit_bump() -> Element {
    use crate::pl::PLFunction;
    Element::Function(
        PLFunction::real_line(
            vec![Rational::from_int(-1), Rational::zero(), Rational::one()],
            vec![Rational::zero(), Rational::one(), Rational::zero()],
        )
        .expect("static bump is valid"),
    )
}

/// Membership in `E* = { x : tau(|x|) = |x| }`, the fixed points of the
/// truncation; equivalently the elements with `|x| <= 1` in the unitization.
pub fn in_e_star(carrier: &Carrier, x: &Element) -> Result<bool> {
    let abs = x.abs();
    Ok(carrier.truncate(&abs)? == abs)
}

/// `||tau(x) - tau(y)|| <= ||x - y||` for positive `x`, `y`; the truncation
/// is a norm contraction.
pub fn contraction_check(carrier: &Carrier, x: &Element, y: &Element) -> Result<bool> {
    if !x.is_nonneg() || !y.is_nonneg() {
        return Err(Error::Precondition(
            "contraction check takes positive elements".into(),
        ));
    }
    let lhs = carrier.base_norm(&carrier.truncate(x)?.sub(&carrier.truncate(y)?)?)?;
    let rhs = carrier.base_norm(&x.sub(y)?)?;
    Ok(lhs <= rhs)
}
