//! Deterministic input generation for the property suites.
//!
//! Uniform random elements alone rarely land on the regimes the hard case
//! splits pivot on, so the sampler biases toward them: scalar parts of both
//! signs with magnitude near the negative-part norm, truncation fixed points
//! (elements of `E*`), plateaus touching height 1, disjoint pairs, and the
//! zero element.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::carrier::{range_i64, Carrier, CarrierKind, Element, GenParams};
use crate::rational::Rational;
use crate::unitization::UnitizedElement;

pub struct Sampler<'a> {
    pub carrier: &'a Carrier,
    rng: ChaCha8Rng,
    params: GenParams,
}

impl<'a> Sampler<'a> {
    pub fn new(carrier: &'a Carrier, seed: u64) -> Self {
        Sampler {
            carrier,
            rng: ChaCha8Rng::seed_from_u64(seed),
            params: GenParams::default(),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    fn pick(&mut self, n: u64) -> u64 {
        self.rng.next_u64() % n
    }

    /// A carrier element, biased toward boundary shapes.
    pub fn element(&mut self) -> Element {
        match self.pick(8) {
            0 => self.star_element(),
            1 => self.plateau_element(),
            2 => self.carrier.zero(),
            3 => {
                let base = self.carrier.sample_element(&mut self.rng, &self.params);
                base.scale(&Rational::ratio(1, 4))
            }
            _ => self.carrier.sample_element(&mut self.rng, &self.params),
        }
    }

    pub fn positive_element(&mut self) -> Element {
        match self.pick(6) {
            0 => self.star_element().abs(),
            1 => self.plateau_element(),
            2 => self.carrier.zero(),
            _ => self
                .carrier
                .sample_element(&mut self.rng, &self.params.clone().nonneg()),
        }
    }

    /// A truncation fixed point, possibly negated: `|x| <= 1` in the
    /// unitization.
    pub fn star_element(&mut self) -> Element {
        let raw = self.carrier.sample_element(&mut self.rng, &self.params);
        let star = self
            .carrier
            .truncate(&raw.abs())
            .expect("absolute values are positive");
        if self.pick(2) == 0 {
            star.neg()
        } else {
            star
        }
    }

    /// A positive element whose plateau touches height 1 exactly.
    fn plateau_element(&mut self) -> Element {
        let raw = self.carrier.sample_element(&mut self.rng, &self.params);
        let doubled = raw.abs().scale(&Rational::from_int(2));
        self.carrier
            .truncate(&doubled)
            .expect("absolute values are positive")
    }

    /// A scalar part biased toward the positivity boundary of `x`.
    pub fn alpha_for(&mut self, x: &Element) -> Rational {
        match self.pick(8) {
            0 => Rational::zero(),
            1 => Rational::one(),
            2 => Rational::from_int(-1),
            3 | 4 => {
                // Near the negative-part norm, either side, either sign.
                let base = self
                    .carrier
                    .base_norm(&x.neg_part())
                    .expect("element is valid");
                let tweak = match self.pick(3) {
                    0 => Rational::zero(),
                    1 => Rational::ratio(1, 8),
                    _ => Rational::ratio(-1, 8),
                };
                let mag = (base + tweak).abs();
                if self.pick(2) == 0 {
                    mag
                } else {
                    -mag
                }
            }
            _ => {
                let den = range_i64(&mut self.rng, 1, 8);
                Rational::ratio(range_i64(&mut self.rng, -3 * den, 3 * den), den)
            }
        }
    }

    pub fn unitized(&mut self) -> UnitizedElement {
        let x = self.element();
        let alpha = self.alpha_for(&x);
        UnitizedElement::new(x, alpha)
    }

    /// A positive element of the unitization.
    pub fn positive_unitized(&mut self) -> UnitizedElement {
        let a = self.unitized();
        crate::unitization::u_pos(self.carrier, &a).expect("valid element")
    }

    pub fn scalar(&mut self, value: Rational) -> UnitizedElement {
        UnitizedElement::new(self.carrier.zero(), value)
    }

    /// A pair of elements, frequently with disjoint supports.
    pub fn pair(&mut self) -> (Element, Element) {
        if self.pick(3) == 0 {
            self.disjoint_pair()
        } else {
            (self.element(), self.element())
        }
    }

    fn disjoint_pair(&mut self) -> (Element, Element) {
        match self.carrier.kind() {
            CarrierKind::Coordinate => {
                let a = self.element();
                let b = self.element();
                let (mut av, mut bv) = (Vec::new(), Vec::new());
                let (ae, be) = (
                    a.as_vector().expect("coordinate").entries(),
                    b.as_vector().expect("coordinate").entries(),
                );
                for i in 0..ae.len() {
                    if i % 2 == 0 {
                        av.push(ae[i].clone());
                        bv.push(Rational::zero());
                    } else {
                        av.push(Rational::zero());
                        bv.push(be[i].clone());
                    }
                }
                (
                    Element::Vector(crate::carrier::CoordinateVector::new(av).expect("nonempty")),
                    Element::Vector(crate::carrier::CoordinateVector::new(bv).expect("nonempty")),
                )
            }
            CarrierKind::Interval => {
                // Support in [-1, 0] versus [0, 1].
                let left = self.element();
                let right = self.element();
                let gate_left = half_gate(true);
                let gate_right = half_gate(false);
                (
                    left.meet(&gate_left)
                        .and_then(|m| m.join(&gate_left.neg()))
                        .expect("same carrier"),
                    right
                        .meet(&gate_right)
                        .and_then(|m| m.join(&gate_right.neg()))
                        .expect("same carrier"),
                )
            }
            CarrierKind::CompactSupport => {
                // Whole supports translated apart.
                let a = self.element();
                let b = self.element();
                (translate(&a, -6), translate(&b, 6))
            }
        }
    }
}

/// A wedge that is large on one half of `[-1, 1]` and zero on the other;
/// clipping against it confines supports to that half.
fn half_gate(left: bool) -> Element {
    use crate::pl::PLFunction;
    let big = Rational::from_int(100);
    let (bps, vals) = if left {
        (
            vec![
                Rational::from_int(-1),
                Rational::ratio(-9, 10),
                Rational::zero(),
                Rational::one(),
            ],
            vec![Rational::zero(), big, Rational::zero(), Rational::zero()],
        )
    } else {
        (
            vec![
                Rational::from_int(-1),
                Rational::zero(),
                Rational::ratio(9, 10),
                Rational::one(),
            ],
            vec![Rational::zero(), Rational::zero(), big, Rational::zero()],
        )
    };
    Element::Function(PLFunction::interval(bps, vals).expect("static gate"))
}

fn translate(x: &Element, by: i64) -> Element {
    use crate::pl::PLFunction;
    match x {
        Element::Function(f) if !f.breakpoints().is_empty() => {
            let shift = Rational::from_int(by);
            let bps = f.breakpoints().iter().map(|b| b + &shift).collect();
            Element::Function(
                PLFunction::real_line(bps, f.values().to_vec()).expect("shifted grid"),
            )
        }
        other => other.clone(),
    }
}
