//! The three built-in truncated normed Riesz spaces.
//!
//! * **coordinate** — `Q^n` with a strictly positive truncation unit `e`,
//!   weighted-L1 norm `||x|| = sum w_i |x_i|`, and truncation `e /\ x`. The
//!   constructor rescales the weights so that `||e|| = 1`, which normalizes
//!   the truncation bound.
//! * **interval** — piecewise-linear functions on `[-1, 1]` vanishing at
//!   both endpoints, norm `(1/2) Int |f|`, truncation `min(1, f)`. No
//!   truncation unit exists; the truncation bound 1 is approached but never
//!   attained.
//! * **compact_support** — compactly supported piecewise-linear functions on
//!   the real line, sup norm, truncation `min(1, f)`. No truncation unit;
//!   the bound 1 is attained by any bump reaching height 1.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pl::{Domain, PLFunction};
use crate::rational::Rational;

/// A fixed-length tuple of rationals; the element type of the coordinate
/// carrier.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "CoordinateWire")]
pub struct CoordinateVector {
    entries: Vec<Rational>,
}

#[derive(Deserialize)]
struct CoordinateWire {
    entries: Vec<Rational>,
}

impl TryFrom<CoordinateWire> for CoordinateVector {
    type Error = Error;
    fn try_from(w: CoordinateWire) -> Result<Self> {
        CoordinateVector::new(w.entries)
    }
}

impl CoordinateVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidElement("empty coordinate vector".into()));
        }
        Ok(CoordinateVector { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Self {
        CoordinateVector {
            entries: entries.iter().map(|&n| Rational::from_int(n)).collect(),
        }
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::CarrierMismatch(format!(
                "coordinate dimensions differ: {} vs {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(CoordinateVector {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| op(a, b))
                .collect(),
        })
    }

    fn map(&self, op: impl Fn(&Rational) -> Rational) -> Self {
        CoordinateVector {
            entries: self.entries.iter().map(op).collect(),
        }
    }
}

impl std::fmt::Debug for CoordinateVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// An element of one of the carriers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Element {
    Vector(CoordinateVector),
    Function(PLFunction),
}

impl Element {
    pub fn as_vector(&self) -> Option<&CoordinateVector> {
        match self {
            Element::Vector(v) => Some(v),
            _ => None,
        }
    }

    pub fn as_function(&self) -> Option<&PLFunction> {
        match self {
            Element::Function(f) => Some(f),
            _ => None,
        }
    }

    fn binary(
        &self,
        other: &Self,
        vec_op: impl Fn(&CoordinateVector, &CoordinateVector) -> Result<CoordinateVector>,
        fn_op: impl Fn(&PLFunction, &PLFunction) -> Result<PLFunction>,
    ) -> Result<Element> {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => Ok(Element::Vector(vec_op(a, b)?)),
            (Element::Function(a), Element::Function(b)) => Ok(Element::Function(fn_op(a, b)?)),
            _ => Err(Error::CarrierMismatch(
                "cannot combine a coordinate vector with a function".into(),
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Element> {
        self.binary(other, |a, b| a.zip_with(b, |x, y| x + y), PLFunction::add)
    }

    pub fn sub(&self, other: &Self) -> Result<Element> {
        self.binary(other, |a, b| a.zip_with(b, |x, y| x - y), PLFunction::sub)
    }

    pub fn meet(&self, other: &Self) -> Result<Element> {
        self.binary(
            other,
            |a, b| a.zip_with(b, |x, y| x.min_of(y)),
            PLFunction::meet,
        )
    }

    pub fn join(&self, other: &Self) -> Result<Element> {
        self.binary(
            other,
            |a, b| a.zip_with(b, |x, y| x.max_of(y)),
            PLFunction::join,
        )
    }

    pub fn scale(&self, r: &Rational) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(v.map(|x| x * r)),
            Element::Function(f) => Element::Function(f.scale(r)),
        }
    }

    pub fn neg(&self) -> Element {
        self.scale(&Rational::from_int(-1))
    }

    pub fn abs(&self) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(v.map(Rational::abs)),
            Element::Function(f) => Element::Function(f.abs()),
        }
    }

    pub fn pos_part(&self) -> Element {
        match self {
            Element::Vector(v) => Element::Vector(v.map(|x| x.max_of(&Rational::zero()))),
            Element::Function(f) => Element::Function(f.pos_part()),
        }
    }

    pub fn neg_part(&self) -> Element {
        self.neg().pos_part()
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        match (self, other) {
            (Element::Vector(a), Element::Vector(b)) => {
                if a.dim() != b.dim() {
                    return Err(Error::CarrierMismatch(
                        "coordinate dimensions differ".into(),
                    ));
                }
                Ok(a.entries.iter().zip(&b.entries).all(|(x, y)| x <= y))
            }
            (Element::Function(a), Element::Function(b)) => a.leq(b),
            _ => Err(Error::CarrierMismatch(
                "cannot compare a coordinate vector with a function".into(),
            )),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Element::Vector(v) => v.entries.iter().all(Rational::is_zero),
            Element::Function(f) => f.is_zero_fn(),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        match self {
            Element::Vector(v) => v.entries.iter().all(|x| !x.is_negative()),
            Element::Function(f) => f.is_nonneg(),
        }
    }
}

/// Carrier identifier, used for compatibility checks and report labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CarrierKind {
    Coordinate,
    Interval,
    CompactSupport,
}

impl CarrierKind {
    pub fn name(self) -> &'static str {
        match self {
            CarrierKind::Coordinate => "coordinate",
            CarrierKind::Interval => "interval",
            CarrierKind::CompactSupport => "compact_support",
        }
    }
}

/// Serializable carrier description, the wire form of a carrier.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CarrierConfig {
    Coordinate {
        dim: usize,
        unit: Vec<Rational>,
        weights: Vec<Rational>,
    },
    Interval,
    CompactSupport,
}

/// One of the three built-in truncated normed Riesz spaces, bundling its
/// lattice operations, base norm, truncation, and order-ideal supremum
/// evaluator.
#[derive(Clone, Debug)]
pub enum Carrier {
    Coordinate {
        unit: CoordinateVector,
        /// Weights after normalization: `sum w_i e_i = 1`.
        weights: Vec<Rational>,
        /// Factor the raw weights were multiplied by to normalize.
        rescale: Rational,
    },
    Interval,
    CompactSupport,
}

/// Semantic equality: the rescale factor records how the carrier was built,
/// not what it is.
impl PartialEq for Carrier {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (
                Carrier::Coordinate {
                    unit: u1,
                    weights: w1,
                    ..
                },
                Carrier::Coordinate {
                    unit: u2,
                    weights: w2,
                    ..
                },
            ) => u1 == u2 && w1 == w2,
            (Carrier::Interval, Carrier::Interval) => true,
            (Carrier::CompactSupport, Carrier::CompactSupport) => true,
            _ => false,
        }
    }
}

impl Carrier {
    /// Coordinate carrier on `Q^n`. Both the unit and the weights must be
    /// strictly positive; weights are rescaled so the truncation bound is
    /// exactly 1 and the applied factor is kept on the descriptor.
    pub fn coordinate(unit: Vec<Rational>, weights: Vec<Rational>) -> Result<Self> {
        if unit.is_empty() || unit.len() != weights.len() {
            return Err(Error::Precondition(
                "unit and weights must have equal positive length".into(),
            ));
        }
        if unit.iter().any(|e| !e.is_positive()) {
            return Err(Error::Precondition(
                "truncation unit must be strictly positive".into(),
            ));
        }
        if weights.iter().any(|w| !w.is_positive()) {
            return Err(Error::Precondition(
                "weights must be strictly positive".into(),
            ));
        }
        let raw_bound = unit
            .iter()
            .zip(&weights)
            .fold(Rational::zero(), |acc, (e, w)| acc + e * w);
        let rescale = Rational::one() / raw_bound;
        let weights = weights.iter().map(|w| w * &rescale).collect();
        Ok(Carrier::Coordinate {
            unit: CoordinateVector::new(unit)?,
            weights,
            rescale,
        })
    }

    /// The 2-dimensional coordinate carrier with `e = (1,1)` and weights
    /// `(1/2, 1/2)`.
    pub fn default_coordinate() -> Self {
        Carrier::coordinate(
            vec![Rational::one(), Rational::one()],
            vec![Rational::ratio(1, 2), Rational::ratio(1, 2)],
        )
        .expect("valid default carrier")
    }

    pub fn interval() -> Self {
        Carrier::Interval
    }

    pub fn compact_support() -> Self {
        Carrier::CompactSupport
    }

    pub fn from_config(config: &CarrierConfig) -> Result<Self> {
        match config {
            CarrierConfig::Coordinate { dim, unit, weights } => {
                if *dim != unit.len() {
                    return Err(Error::Precondition(format!(
                        "declared dim {dim} does not match unit length {}",
                        unit.len()
                    )));
                }
                Carrier::coordinate(unit.clone(), weights.clone())
            }
            CarrierConfig::Interval => Ok(Carrier::Interval),
            CarrierConfig::CompactSupport => Ok(Carrier::CompactSupport),
        }
    }

    /// The resolved configuration (post-normalization weights).
    pub fn config(&self) -> CarrierConfig {
        match self {
            Carrier::Coordinate { unit, weights, .. } => CarrierConfig::Coordinate {
                dim: unit.dim(),
                unit: unit.entries().to_vec(),
                weights: weights.clone(),
            },
            Carrier::Interval => CarrierConfig::Interval,
            Carrier::CompactSupport => CarrierConfig::CompactSupport,
        }
    }

    pub fn kind(&self) -> CarrierKind {
        match self {
            Carrier::Coordinate { .. } => CarrierKind::Coordinate,
            Carrier::Interval => CarrierKind::Interval,
            Carrier::CompactSupport => CarrierKind::CompactSupport,
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind().name()
    }

    pub fn dim(&self) -> Option<usize> {
        match self {
            Carrier::Coordinate { unit, .. } => Some(unit.dim()),
            _ => None,
        }
    }

    pub fn truncation_unit(&self) -> Option<Element> {
        match self {
            Carrier::Coordinate { unit, .. } => Some(Element::Vector(unit.clone())),
            _ => None,
        }
    }

    pub fn weights(&self) -> Option<&[Rational]> {
        match self {
            Carrier::Coordinate { weights, .. } => Some(weights),
            _ => None,
        }
    }

    /// Rescale factor applied to normalize the truncation bound.
    pub fn norm_rescale(&self) -> Rational {
        match self {
            Carrier::Coordinate { rescale, .. } => rescale.clone(),
            _ => Rational::one(),
        }
    }

    pub fn zero(&self) -> Element {
        match self {
            Carrier::Coordinate { unit, .. } => {
                Element::Vector(CoordinateVector::new(vec![Rational::zero(); unit.dim()]).unwrap())
            }
            Carrier::Interval => Element::Function(PLFunction::zero(Domain::Interval)),
            Carrier::CompactSupport => Element::Function(PLFunction::zero(Domain::RealLine)),
        }
    }

    /// Checks that `x` belongs to this carrier.
    pub fn validate(&self, x: &Element) -> Result<()> {
        match (self, x) {
            (Carrier::Coordinate { unit, .. }, Element::Vector(v)) => {
                if v.dim() != unit.dim() {
                    Err(Error::CarrierMismatch(format!(
                        "vector has dimension {}, carrier expects {}",
                        v.dim(),
                        unit.dim()
                    )))
                } else {
                    Ok(())
                }
            }
            (Carrier::Interval, Element::Function(f)) if f.domain() == Domain::Interval => Ok(()),
            (Carrier::CompactSupport, Element::Function(f)) if f.domain() == Domain::RealLine => {
                Ok(())
            }
            _ => Err(Error::CarrierMismatch(format!(
                "element does not belong to the {} carrier",
                self.name()
            ))),
        }
    }

    /// The base lattice norm of the carrier, exact.
    pub fn base_norm(&self, x: &Element) -> Result<Rational> {
        self.validate(x)?;
        Ok(match (self, x) {
            (Carrier::Coordinate { weights, .. }, Element::Vector(v)) => v
                .entries()
                .iter()
                .zip(weights)
                .fold(Rational::zero(), |acc, (x, w)| acc + x.abs() * w),
            (Carrier::Interval, Element::Function(f)) => f.integral_abs() * Rational::ratio(1, 2),
            (Carrier::CompactSupport, Element::Function(f)) => f.sup_abs(),
            _ => unreachable!("validated above"),
        })
    }

    /// The truncation `tau(x)` for `x >= 0`: meet with the unit on the
    /// coordinate carrier, pointwise `min(1, x)` on the function carriers.
    pub fn truncate(&self, x: &Element) -> Result<Element> {
        self.validate(x)?;
        if !x.is_nonneg() {
            return Err(Error::Precondition(
                "truncation is defined on the positive cone only".into(),
            ));
        }
        match (self, x) {
            (Carrier::Coordinate { unit, .. }, Element::Vector(v)) => {
                Ok(Element::Vector(v.zip_with(unit, |a, e| a.min_of(e))?))
            }
            (_, Element::Function(f)) => Ok(Element::Function(f.min_const(&Rational::one())?)),
            _ => unreachable!("validated above"),
        }
    }

    pub fn leq(&self, a: &Element, b: &Element) -> Result<bool> {
        self.validate(a)?;
        self.validate(b)?;
        a.leq(b)
    }

    /// `sup { ||y|| : y in E, |y| <= g + c }`, where the envelope `g + c` is
    /// a nonnegative element of the unitization. Exact closed form per
    /// carrier; see [`Carrier::ideal_sup_witness`] for how the supremum is
    /// realized.
    pub fn ideal_sup_norm(&self, g: &Element, c: &Rational) -> Result<Rational> {
        self.check_envelope(g, c)?;
        match (self, g) {
            (Carrier::Coordinate { unit, .. }, Element::Vector(_)) => {
                // Attained at y = g + c e.
                let witness = g.add(&Element::Vector(unit.clone()).scale(c))?;
                self.base_norm(&witness)
            }
            (Carrier::Interval, Element::Function(f)) => {
                // (1/2) Int (g + c); the boundary pinch has measure zero, so
                // the supremum is the full envelope integral (not attained
                // for c > 0).
                Ok(f.integral_signed() * Rational::ratio(1, 2) + c)
            }
            (Carrier::CompactSupport, Element::Function(f)) => {
                // Envelope sup over the line and at infinity; max_value is
                // >= 0, so this also covers the value c at infinity.
                Ok(f.max_value() + c)
            }
            _ => unreachable!("validated by check_envelope"),
        }
    }

    /// Whether `g + c >= 0` holds in the unitization (the precondition of
    /// the ideal-supremum evaluator).
    pub fn envelope_is_nonneg(&self, g: &Element, c: &Rational) -> Result<bool> {
        self.validate(g)?;
        if c.is_negative() {
            return Ok(false);
        }
        Ok(match (self, g) {
            (Carrier::Coordinate { unit, .. }, Element::Vector(v)) => v
                .entries()
                .iter()
                .zip(unit.entries())
                .all(|(gi, ei)| !(gi + &(c * ei)).is_negative()),
            (_, Element::Function(f)) => !(f.min_value() + c).is_negative(),
            _ => unreachable!("validated above"),
        })
    }

    fn check_envelope(&self, g: &Element, c: &Rational) -> Result<()> {
        if !self.envelope_is_nonneg(g, c)? {
            return Err(Error::Precondition(
                "envelope g + c is not nonnegative in the unitization".into(),
            ));
        }
        Ok(())
    }

    /// An element realizing (or approaching) the ideal supremum: exact
    /// attainment on the coordinate and compact-support carriers; on the
    /// interval carrier a boundary-pinched element within `1/n` of the
    /// supremum (`n >= 2`).
    pub fn ideal_sup_witness(&self, g: &Element, c: &Rational, n: u32) -> Result<Element> {
        self.check_envelope(g, c)?;
        match (self, g) {
            (Carrier::Coordinate { unit, .. }, Element::Vector(_)) => {
                g.add(&Element::Vector(unit.clone()).scale(c))
            }
            (Carrier::Interval, Element::Function(f)) => {
                if n < 2 {
                    return Err(Error::Precondition("witness index must be >= 2".into()));
                }
                let env = f.add_const(c)?;
                let peak = env.max_value();
                if !peak.is_positive() {
                    return Ok(self.zero());
                }
                // Plateau at the envelope maximum with ramps narrow enough
                // that the clipped-off boundary area stays below 1/n.
                let ceil_peak = Rational::from_int(int_ceil(&peak));
                let w = Rational::one() / (Rational::from_int(n as i64) * ceil_peak);
                let tent = PLFunction::interval(
                    vec![
                        Rational::from_int(-1),
                        Rational::from_int(-1) + w.clone(),
                        Rational::one() - w.clone(),
                        Rational::one(),
                    ],
                    vec![Rational::zero(), peak.clone(), peak, Rational::zero()],
                )?;
                Ok(Element::Function(env.meet(&tent)?))
            }
            (Carrier::CompactSupport, Element::Function(f)) => {
                let peak = f.max_value() + c;
                if !peak.is_positive() {
                    return Ok(self.zero());
                }
                // Steepest envelope slope; a spike no steeper than the
                // envelope stays under it.
                let mut slope_bound = Rational::one();
                let bps = f.breakpoints();
                let vals = f.values();
                for i in 1..bps.len() {
                    let s = ((&vals[i] - &vals[i - 1]) / (&bps[i] - &bps[i - 1])).abs();
                    slope_bound = slope_bound.max_of(&s);
                }
                let (t0, k) = if f.max_value().is_positive() {
                    // Spike at an interior argmax breakpoint.
                    let idx = (0..vals.len())
                        .max_by(|&i, &j| vals[i].cmp(&vals[j]))
                        .expect("nonempty");
                    (bps[idx].clone(), slope_bound + Rational::one())
                } else {
                    // The envelope is flat at height c beyond the support.
                    let right = bps.last().cloned().unwrap_or_else(Rational::zero);
                    let k = slope_bound + Rational::one();
                    (right + (&peak / &k) + Rational::one(), k)
                };
                let half_base = &peak / &k;
                let tent = PLFunction::real_line(
                    vec![&t0 - &half_base, t0.clone(), &t0 + &half_base],
                    vec![Rational::zero(), peak, Rational::zero()],
                )?;
                Ok(Element::Function(tent))
            }
            _ => unreachable!("validated by check_envelope"),
        }
    }

    /// Clips `z` into the order interval `[-(g + c), g + c]`, producing an
    /// element `y` with `|y| <= g + c` in the unitization.
    pub fn clip_to_envelope(&self, z: &Element, g: &Element, c: &Rational) -> Result<Element> {
        self.validate(z)?;
        self.check_envelope(g, c)?;
        match (self, z, g) {
            (Carrier::Coordinate { unit, .. }, Element::Vector(zv), Element::Vector(gv)) => {
                let env = gv.zip_with(unit, |gi, ei| gi + &(c * ei))?;
                let clipped = zv.zip_with(&env, |zi, hi| zi.min_of(hi))?;
                Ok(Element::Vector(
                    clipped.zip_with(&env, |zi, hi| zi.max_of(&-hi))?,
                ))
            }
            (_, Element::Function(zf), Element::Function(gf)) => {
                Ok(Element::Function(clip_function(zf, gf, c)))
            }
            _ => unreachable!("validated above"),
        }
    }

    /// The plateau trapezoid `f_n`: 0 at the endpoints, 1 on
    /// `[-1 + 1/n, 1 - 1/n]`, linear ramps between. Interval carrier only.
    pub fn make_fn(&self, n: u32) -> Result<Element> {
        if self.kind() != CarrierKind::Interval {
            return Err(Error::UnsupportedCarrier(format!(
                "make_fn needs the interval carrier, not {}",
                self.name()
            )));
        }
        if n < 2 {
            return Err(Error::Precondition("make_fn requires n >= 2".into()));
        }
        let inv = Rational::ratio(1, n as i64);
        let f = PLFunction::interval(
            vec![
                Rational::from_int(-1),
                Rational::from_int(-1) + inv.clone(),
                Rational::one() - inv,
                Rational::one(),
            ],
            vec![
                Rational::zero(),
                Rational::one(),
                Rational::one(),
                Rational::zero(),
            ],
        )?;
        Ok(Element::Function(f))
    }

    /// For `0 <= f <= 1` supported in `[-a, a]`, the compactly supported
    /// extension that keeps `f` on `(-inf, a)` and appends a unit tent on
    /// `[a, a + 2]`; satisfies `f <= g <= 1` and `||g|| = 1`.
    pub fn support_extension_witness(&self, f: &Element, a: &Rational) -> Result<Element> {
        if self.kind() != CarrierKind::CompactSupport {
            return Err(Error::UnsupportedCarrier(format!(
                "support extension needs the compact_support carrier, not {}",
                self.name()
            )));
        }
        self.validate(f)?;
        let func = f.as_function().expect("validated");
        if !a.is_positive() {
            return Err(Error::Precondition("a must be positive".into()));
        }
        if !func.is_nonneg() || func.max_value() > Rational::one() {
            return Err(Error::Precondition("need 0 <= f <= 1 pointwise".into()));
        }
        if let Some((lo, hi)) = func.span() {
            if *lo < -a || *hi > *a {
                return Err(Error::Precondition(format!(
                    "support [{lo}, {hi}] is not inside [-{a}, {a}]"
                )));
            }
        }
        let mut bps: Vec<Rational> = func.breakpoints().to_vec();
        let mut vals: Vec<Rational> = func.values().to_vec();
        // f vanishes on [sup supp f, a]; append the tent over [a, a+2].
        if bps.last() != Some(a) {
            bps.push(a.clone());
            vals.push(Rational::zero());
        }
        bps.push(a + &Rational::one());
        vals.push(Rational::one());
        bps.push(a + &Rational::from_int(2));
        vals.push(Rational::zero());
        Ok(Element::Function(PLFunction::real_line(bps, vals)?))
    }

    /// Deterministic random element: same seed, same element.
    pub fn random_element(&self, seed: u64, params: &GenParams) -> Element {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_element(&mut rng, params)
    }

    /// Draws an element from an externally managed generator stream.
    pub fn sample_element(&self, rng: &mut ChaCha8Rng, params: &GenParams) -> Element {
        match self {
            Carrier::Coordinate { unit, .. } => {
                let entries = (0..unit.dim()).map(|_| params.sample_value(rng)).collect();
                Element::Vector(CoordinateVector { entries })
            }
            Carrier::Interval => {
                let interior = sample_grid(
                    rng,
                    params.max_breakpoints,
                    &Rational::from_int(-1),
                    &Rational::one(),
                );
                let mut bps = vec![Rational::from_int(-1)];
                let mut vals = vec![Rational::zero()];
                for t in interior {
                    bps.push(t);
                    vals.push(params.sample_value(rng));
                }
                bps.push(Rational::one());
                vals.push(Rational::zero());
                Element::Function(PLFunction::interval(bps, vals).expect("generated grid is valid"))
            }
            Carrier::CompactSupport => {
                let lo = Rational::from_int(range_i64(rng, -4, 2));
                let hi = &lo + &Rational::from_int(range_i64(rng, 1, 6));
                let interior = sample_grid(rng, params.max_breakpoints, &lo, &hi);
                let mut bps = vec![lo];
                let mut vals = vec![Rational::zero()];
                for t in interior {
                    bps.push(t);
                    vals.push(params.sample_value(rng));
                }
                bps.push(hi);
                vals.push(Rational::zero());
                Element::Function(
                    PLFunction::real_line(bps, vals).expect("generated grid is valid"),
                )
            }
        }
    }
}

/// Parameters for random element generation.
#[derive(Clone, Debug)]
pub struct GenParams {
    /// Maximum number of interior breakpoints for function carriers.
    pub max_breakpoints: usize,
    /// Values land in `[-value_bound, value_bound]`.
    pub value_bound: i64,
    /// Denominators are bounded by this.
    pub denom_bound: i64,
    /// Generate only nonnegative values.
    pub nonneg: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_breakpoints: 5,
            value_bound: 3,
            denom_bound: 8,
            nonneg: false,
        }
    }
}

impl GenParams {
    pub fn nonneg(mut self) -> Self {
        self.nonneg = true;
        self
    }

    fn sample_value(&self, rng: &mut ChaCha8Rng) -> Rational {
        let den = range_i64(rng, 1, self.denom_bound);
        let lo = if self.nonneg {
            0
        } else {
            -self.value_bound * den
        };
        let num = range_i64(rng, lo, self.value_bound * den);
        Rational::ratio(num, den)
    }
}

pub(crate) fn range_i64(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> i64 {
    debug_assert!(lo <= hi);
    let span = (hi - lo + 1) as u64;
    lo + (rng.next_u64() % span) as i64
}

/// Strictly increasing rationals strictly between `lo` and `hi`.
fn sample_grid(
    rng: &mut ChaCha8Rng,
    max_points: usize,
    lo: &Rational,
    hi: &Rational,
) -> Vec<Rational> {
    let count = (rng.next_u64() % (max_points as u64 + 1)) as usize;
    let mut points = Vec::with_capacity(count);
    let width = hi - lo;
    for _ in 0..count {
        // lo + width * k/64 with k in 1..64.
        let k = range_i64(rng, 1, 63);
        points.push(lo + &(&width * &Rational::ratio(k, 64)));
    }
    points.sort();
    points.dedup();
    points
}

fn int_ceil(r: &Rational) -> i64 {
    use num_traits::ToPrimitive;
    let num = r.numer();
    let den = r.denom();
    let q = num / den;
    let rem = num % den;
    let mut c = q.to_i64().expect("desk-scale value");
    if rem.sign() == num_bigint::Sign::Plus {
        c += 1;
    }
    c.max(1)
}

/// `med(-(g + c), z, g + c)` as an exact piecewise-linear function. The
/// envelope evaluates to `g(t) + c` everywhere (so to `c` beyond the span of
/// `g` on the real line).
fn clip_function(z: &PLFunction, g: &PLFunction, c: &Rational) -> PLFunction {
    let mut grid: Vec<Rational> = z
        .breakpoints()
        .iter()
        .chain(g.breakpoints())
        .cloned()
        .collect();
    grid.sort();
    grid.dedup();
    if grid.is_empty() {
        return PLFunction::zero(z.domain());
    }

    let env_at = |t: &Rational| -> Rational { g.eval(t).expect("grid point in domain") + c };
    let z_at = |t: &Rational| -> Rational { z.eval(t).expect("grid point in domain") };

    // Refine with the crossings of z - env and z + env; between refined
    // points the median is linear.
    let mut refined: Vec<Rational> = Vec::with_capacity(grid.len() * 2);
    for i in 0..grid.len() {
        if i > 0 {
            let (t0, t1) = (&grid[i - 1], &grid[i]);
            let mut cuts: Vec<Rational> = Vec::new();
            for sign in [1i64, -1i64] {
                let s = Rational::from_int(sign);
                let d0 = z_at(t0) - &s * env_at(t0);
                let d1 = z_at(t1) - &s * env_at(t1);
                if d0.signum() * d1.signum() < 0 {
                    cuts.push(t0 + &((t1 - t0) * &d0 / (&d0 - &d1)));
                }
            }
            cuts.sort();
            // Both diffs can cross at one point when the envelope touches 0.
            cuts.dedup();
            refined.extend(cuts);
        }
        refined.push(grid[i].clone());
    }

    let pts: Vec<(Rational, Rational)> = refined
        .into_iter()
        .map(|t| {
            let e = env_at(&t);
            let v = z_at(&t).min_of(&e).max_of(&-&e);
            (t, v)
        })
        .collect();
    let (bps, vals): (Vec<_>, Vec<_>) = pts.into_iter().unzip();
    PLFunction::raw(z.domain(), bps, vals)
}
