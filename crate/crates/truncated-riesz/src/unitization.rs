//! The unitization `E (+) R` with its nonstandard Riesz-space structure.
//!
//! A [`UnitizedElement`] is a pair `(x, alpha)` standing for `x + alpha * 1`.
//! Vector-space operations are the usual direct-sum ones; the lattice
//! structure is the nonstandard one under which `E` is a Riesz subspace and
//! the truncation of `E` becomes meet with `1`.
//!
//! Everything reduces to one primitive, the absolute value [`u_abs`]:
//! for `alpha != 0`,
//!
//! ```text
//! |x + alpha| = (|x| - 2 |alpha| tau(v)) + |alpha|,
//!     v = ((sign alpha) x)^- / |alpha|,
//! ```
//!
//! where `tau` is the carrier truncation and `v` lies in the positive cone
//! (for `alpha > 0` it is `x^-/alpha`, for `alpha < 0` it is `x^+/|alpha|`).
//! In the function carriers this is exactly the pointwise function
//! `t -> |x(t) + alpha|`. Joins, meets, positive parts, the order relation,
//! and positivity are all derived from it, so there is a single source of
//! truth for the nonstandard order.

use serde::{Deserialize, Serialize};

use crate::carrier::{Carrier, Element};
use crate::error::Result;
use crate::rational::Rational;

/// An element `x + alpha` of the unitization.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UnitizedElement {
    pub x: Element,
    pub alpha: Rational,
}

impl UnitizedElement {
    pub fn new(x: Element, alpha: Rational) -> Self {
        UnitizedElement { x, alpha }
    }

    /// Embeds a carrier element (`alpha = 0`).
    pub fn from_element(x: Element) -> Self {
        UnitizedElement {
            x,
            alpha: Rational::zero(),
        }
    }

    /// The multiplicative-style unit `1 = (0, 1)`.
    pub fn one(carrier: &Carrier) -> Self {
        UnitizedElement {
            x: carrier.zero(),
            alpha: Rational::one(),
        }
    }

    pub fn scalar(carrier: &Carrier, alpha: Rational) -> Self {
        UnitizedElement {
            x: carrier.zero(),
            alpha,
        }
    }

    /// Whether the element lies in `E` itself.
    pub fn in_carrier(&self) -> bool {
        self.alpha.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        Ok(UnitizedElement {
            x: self.x.add(&other.x)?,
            alpha: &self.alpha + &other.alpha,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Ok(UnitizedElement {
            x: self.x.sub(&other.x)?,
            alpha: &self.alpha - &other.alpha,
        })
    }

    pub fn scale(&self, r: &Rational) -> Self {
        UnitizedElement {
            x: self.x.scale(r),
            alpha: &self.alpha * r,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.x.is_zero()
    }
}

/// The absolute value in the nonstandard order.
pub fn u_abs(carrier: &Carrier, a: &UnitizedElement) -> Result<UnitizedElement> {
    carrier.validate(&a.x)?;
    if a.alpha.is_zero() {
        return Ok(UnitizedElement::new(a.x.abs(), Rational::zero()));
    }
    let abs_alpha = a.alpha.abs();
    let sign = Rational::from_int(a.alpha.signum() as i64);
    // v = ((sign alpha) x)^- / |alpha|, an element of the positive cone.
    let v = a.x.scale(&sign).neg_part().scale(&abs_alpha.recip());
    let tau_v = carrier.truncate(&v)?;
    let two_abs_alpha = Rational::from_int(2) * abs_alpha.clone();
    let e_part = a.x.abs().sub(&tau_v.scale(&two_abs_alpha))?;
    Ok(UnitizedElement::new(e_part, abs_alpha))
}

/// The carrier part of the absolute value: `|x + alpha| - |alpha|`, always
/// an element of `E`.
pub fn bracket(carrier: &Carrier, a: &UnitizedElement) -> Result<Element> {
    Ok(u_abs(carrier, a)?.x)
}

/// `a \/ b`, derived from the absolute value as `b + ((a-b) + |a-b|)/2`.
pub fn u_join(
    carrier: &Carrier,
    a: &UnitizedElement,
    b: &UnitizedElement,
) -> Result<UnitizedElement> {
    let d = a.sub(b)?;
    let abs_d = u_abs(carrier, &d)?;
    b.add(&d.add(&abs_d)?.scale(&Rational::ratio(1, 2)))
}

/// `a /\ b = -((-a) \/ (-b))`.
pub fn u_meet(
    carrier: &Carrier,
    a: &UnitizedElement,
    b: &UnitizedElement,
) -> Result<UnitizedElement> {
    Ok(u_join(carrier, &a.neg(), &b.neg())?.neg())
}

/// Positive part `a \/ 0`.
pub fn u_pos(carrier: &Carrier, a: &UnitizedElement) -> Result<UnitizedElement> {
    let zero = UnitizedElement::new(carrier.zero(), Rational::zero());
    u_join(carrier, a, &zero)
}

/// Negative part `(-a) \/ 0`.
pub fn u_neg_part(carrier: &Carrier, a: &UnitizedElement) -> Result<UnitizedElement> {
    u_pos(carrier, &a.neg())
}

/// Positivity in the nonstandard order: `a >= 0` iff `|a| = a`.
pub fn u_is_positive(carrier: &Carrier, a: &UnitizedElement) -> Result<bool> {
    Ok(u_abs(carrier, a)? == *a)
}

/// Order relation: `a <= b` iff `|b - a| = b - a`.
pub fn u_leq(carrier: &Carrier, a: &UnitizedElement, b: &UnitizedElement) -> Result<bool> {
    u_is_positive(carrier, &b.sub(a)?)
}
