//! Continuous piecewise-linear functions with exact rational breakpoints.
//!
//! A [`PLFunction`] is stored as a strictly increasing list of breakpoints
//! together with the value at each; between adjacent breakpoints the function
//! interpolates linearly. Two domains are supported:
//!
//! * [`Domain::Interval`] — functions on `[-1, 1]`; the breakpoint list
//!   always spans the whole interval.
//! * [`Domain::RealLine`] — compactly supported functions on the real line;
//!   the function is identically zero outside the breakpoint span, and the
//!   zero function is stored with no breakpoints at all.
//!
//! Lattice operations insert the exact rational crossing points of the two
//! operands, so pointwise `min`/`max` of piecewise-linear functions is again
//! an exact [`PLFunction`]. Every constructor canonicalizes: collinear
//! interior breakpoints are removed (and zero tails trimmed on the real
//! line), so structural equality of canonical forms is pointwise equality of
//! functions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Domain {
    Interval,
    RealLine,
}

impl Domain {
    pub fn name(self) -> &'static str {
        match self {
            Domain::Interval => "interval",
            Domain::RealLine => "real_line",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Serialize)]
#[serde(into = "Wire")]
pub struct PLFunction {
    domain: Domain,
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

#[derive(Serialize, Deserialize)]
struct Wire {
    domain: Domain,
    breakpoints: Vec<Rational>,
    values: Vec<Rational>,
}

impl From<PLFunction> for Wire {
    fn from(f: PLFunction) -> Wire {
        Wire {
            domain: f.domain,
            breakpoints: f.breakpoints,
            values: f.values,
        }
    }
}

impl<'de> Deserialize<'de> for PLFunction {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let w = Wire::deserialize(de)?;
        let build = match w.domain {
            Domain::Interval => PLFunction::interval(w.breakpoints, w.values),
            Domain::RealLine => PLFunction::real_line(w.breakpoints, w.values),
        };
        build.map_err(serde::de::Error::custom)
    }
}

impl std::fmt::Debug for PLFunction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "PL[{}](", self.domain.name())?;
        for (i, (b, v)) in self.breakpoints.iter().zip(&self.values).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{b}:{v}")?;
        }
        write!(f, ")")
    }
}

fn collinear(
    a: (&Rational, &Rational),
    b: (&Rational, &Rational),
    c: (&Rational, &Rational),
) -> bool {
    // (b.y - a.y) * (c.x - b.x) == (c.y - b.y) * (b.x - a.x), all exact.
    (b.1 - a.1) * (c.0 - b.0) == (c.1 - b.1) * (b.0 - a.0)
}

impl PLFunction {
    /// A function on `[-1, 1]`. Breakpoints must start at -1, end at 1, be
    /// strictly increasing, and carry value 0 at both endpoints.
    pub fn interval(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        Self::check_shape(&breakpoints, &values)?;
        if breakpoints.len() < 2 {
            return Err(Error::InvalidElement(
                "interval function needs at least 2 breakpoints".into(),
            ));
        }
        let minus_one = Rational::from_int(-1);
        let one = Rational::one();
        if breakpoints[0] != minus_one || *breakpoints.last().unwrap() != one {
            return Err(Error::InvalidElement(
                "interval breakpoints must span [-1, 1]".into(),
            ));
        }
        if !values[0].is_zero() || !values.last().unwrap().is_zero() {
            return Err(Error::InvalidElement(
                "interval function must vanish at -1 and 1".into(),
            ));
        }
        Ok(Self::from_parts(Domain::Interval, breakpoints, values))
    }

    /// A compactly supported function on the real line. Endpoint values must
    /// be 0; the zero function may be given as empty lists.
    pub fn real_line(breakpoints: Vec<Rational>, values: Vec<Rational>) -> Result<Self> {
        Self::check_shape(&breakpoints, &values)?;
        if breakpoints.is_empty() {
            return Ok(Self::zero(Domain::RealLine));
        }
        if breakpoints.len() < 2 {
            return Err(Error::InvalidElement(
                "a nonzero compactly supported function needs at least 2 breakpoints".into(),
            ));
        }
        if !values[0].is_zero() || !values.last().unwrap().is_zero() {
            return Err(Error::InvalidElement(
                "compactly supported function must vanish at its support endpoints".into(),
            ));
        }
        Ok(Self::from_parts(Domain::RealLine, breakpoints, values))
    }

    pub fn zero(domain: Domain) -> Self {
        match domain {
            Domain::Interval => PLFunction {
                domain,
                breakpoints: vec![Rational::from_int(-1), Rational::one()],
                values: vec![Rational::zero(), Rational::zero()],
            },
            Domain::RealLine => PLFunction {
                domain,
                breakpoints: Vec::new(),
                values: Vec::new(),
            },
        }
    }

    /// Internal constructor that skips carrier-membership checks (endpoint
    /// zeros); used for envelopes like `f + c` during norm computations.
    /// Still canonicalizes and still requires a well-formed grid.
    pub(crate) fn raw(domain: Domain, breakpoints: Vec<Rational>, values: Vec<Rational>) -> Self {
        debug_assert!(breakpoints.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(breakpoints.len(), values.len());
        Self::from_parts(domain, breakpoints, values)
    }

    fn check_shape(breakpoints: &[Rational], values: &[Rational]) -> Result<()> {
        if breakpoints.len() != values.len() {
            return Err(Error::InvalidElement(format!(
                "{} breakpoints but {} values",
                breakpoints.len(),
                values.len()
            )));
        }
        for w in breakpoints.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidElement(format!(
                    "breakpoints not strictly increasing at {}",
                    w[1]
                )));
            }
        }
        Ok(())
    }

    fn from_parts(domain: Domain, breakpoints: Vec<Rational>, values: Vec<Rational>) -> Self {
        let mut pts: Vec<(Rational, Rational)> = breakpoints.into_iter().zip(values).collect();

        // Drop collinear interior points, stack-wise.
        if pts.len() > 2 {
            let mut kept: Vec<(Rational, Rational)> = Vec::with_capacity(pts.len());
            for p in pts.drain(..) {
                while kept.len() >= 2 {
                    let a = &kept[kept.len() - 2];
                    let b = &kept[kept.len() - 1];
                    if collinear((&a.0, &a.1), (&b.0, &b.1), (&p.0, &p.1)) {
                        kept.pop();
                    } else {
                        break;
                    }
                }
                kept.push(p);
            }
            pts = kept;
        }

        if domain == Domain::RealLine {
            // Trim flat zero tails; the function is zero outside its span.
            while pts.len() >= 2 && pts[0].1.is_zero() && pts[1].1.is_zero() {
                pts.remove(0);
            }
            while pts.len() >= 2 && pts[pts.len() - 1].1.is_zero() && pts[pts.len() - 2].1.is_zero()
            {
                pts.pop();
            }
            if pts.len() <= 1 {
                return Self::zero(domain);
            }
        }

        let (breakpoints, values) = pts.into_iter().unzip();
        PLFunction {
            domain,
            breakpoints,
            values,
        }
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn breakpoints(&self) -> &[Rational] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn is_zero_fn(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Support span (first and last breakpoint), if any.
    pub fn span(&self) -> Option<(&Rational, &Rational)> {
        match (self.breakpoints.first(), self.breakpoints.last()) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        }
    }

    /// Exact value at `t`. Errors when `t` lies outside `[-1, 1]` for the
    /// interval domain; real-line functions evaluate to 0 beyond their span.
    pub fn eval(&self, t: &Rational) -> Result<Rational> {
        if self.domain == Domain::Interval {
            let one = Rational::one();
            if *t < -&one || *t > one {
                return Err(Error::Precondition(format!(
                    "{t} is outside the interval domain [-1, 1]"
                )));
            }
        }
        Ok(self.eval_extended(t))
    }

    /// Value at `t` with the real-line convention (0 outside the span)
    /// applied to both domains; grid points passed internally always lie
    /// within interval spans.
    fn eval_extended(&self, t: &Rational) -> Rational {
        let n = self.breakpoints.len();
        if n == 0 {
            return Rational::zero();
        }
        if *t <= self.breakpoints[0] {
            return if *t == self.breakpoints[0] {
                self.values[0].clone()
            } else {
                Rational::zero()
            };
        }
        if *t >= self.breakpoints[n - 1] {
            return if *t == self.breakpoints[n - 1] {
                self.values[n - 1].clone()
            } else {
                Rational::zero()
            };
        }
        // Last index with breakpoint <= t; t is strictly inside the span.
        let idx = self.breakpoints.partition_point(|b| b <= t) - 1;
        let (b0, b1) = (&self.breakpoints[idx], &self.breakpoints[idx + 1]);
        let (v0, v1) = (&self.values[idx], &self.values[idx + 1]);
        if t == b0 {
            return v0.clone();
        }
        v0 + &((v1 - v0) * (t - b0) / (b1 - b0))
    }

    fn same_domain(&self, other: &Self) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::CarrierMismatch(format!(
                "cannot combine a {} function with a {} function",
                self.domain.name(),
                other.domain.name()
            )));
        }
        Ok(())
    }

    /// Union of both breakpoint grids, strictly increasing.
    fn merged_grid(&self, other: &Self) -> Vec<Rational> {
        let mut grid: Vec<Rational> =
            Vec::with_capacity(self.breakpoints.len() + other.breakpoints.len());
        let (mut i, mut j) = (0, 0);
        while i < self.breakpoints.len() || j < other.breakpoints.len() {
            let next = match (self.breakpoints.get(i), other.breakpoints.get(j)) {
                (Some(a), Some(b)) => {
                    if a < b {
                        i += 1;
                        a.clone()
                    } else if b < a {
                        j += 1;
                        b.clone()
                    } else {
                        i += 1;
                        j += 1;
                        a.clone()
                    }
                }
                (Some(a), None) => {
                    i += 1;
                    a.clone()
                }
                (None, Some(b)) => {
                    j += 1;
                    b.clone()
                }
                (None, None) => unreachable!(),
            };
            grid.push(next);
        }
        grid
    }

    /// Pointwise combination over the merged grid. With `crossings`, the
    /// exact roots of `self - other` are inserted first, which makes
    /// `min`/`max`/`abs`-style combinations exact.
    fn combine(
        &self,
        other: &Self,
        crossings: bool,
        op: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<Self> {
        self.same_domain(other)?;
        let grid = self.merged_grid(other);
        if grid.is_empty() {
            // Both are the zero function on the real line.
            return Ok(Self::zero(self.domain));
        }
        let mut pts: Vec<(Rational, Rational)> = Vec::with_capacity(grid.len() + 4);
        let mut prev: Option<(Rational, Rational, Rational)> = None; // (t, f(t), g(t))
        for t in grid {
            let ft = self.eval_extended(&t);
            let gt = other.eval_extended(&t);
            if crossings {
                if let Some((pt, pf, pg)) = &prev {
                    let d0 = pf - pg;
                    let d1 = &ft - &gt;
                    if d0.signum() * d1.signum() < 0 {
                        // Exact crossing of f - g inside (pt, t).
                        let tc = pt + &((&t - pt) * &d0 / (&d0 - &d1));
                        let fc = self.eval_extended(&tc);
                        let gc = other.eval_extended(&tc);
                        pts.push((tc, op(&fc, &gc)));
                    }
                }
            }
            pts.push((t.clone(), op(&ft, &gt)));
            prev = Some((t, ft, gt));
        }
        let (breakpoints, values) = pts.into_iter().unzip();
        Ok(Self::from_parts(self.domain, breakpoints, values))
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, false, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, false, |a, b| a - b)
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.combine(other, true, |a, b| a.min_of(b))
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.combine(other, true, |a, b| a.max_of(b))
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero(self.domain);
        }
        let values = self.values.iter().map(|v| v * r).collect();
        Self::from_parts(self.domain, self.breakpoints.clone(), values)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from_int(-1))
    }

    pub fn abs(&self) -> Self {
        let zero = Self::zero(self.domain);
        self.combine(&zero, true, |a, _| a.abs())
            .expect("same domain by construction")
    }

    pub fn pos_part(&self) -> Self {
        let zero = Self::zero(self.domain);
        self.combine(&zero, true, |a, _| a.max_of(&Rational::zero()))
            .expect("same domain by construction")
    }

    pub fn neg_part(&self) -> Self {
        self.neg().pos_part()
    }

    /// Pointwise `min(c, f)`, inserting exact level crossings. On the real
    /// line `c` must be nonnegative so the result stays compactly supported.
    pub fn min_const(&self, c: &Rational) -> Result<Self> {
        if self.domain == Domain::RealLine && c.is_negative() {
            return Err(Error::Precondition(
                "min with a negative constant is not compactly supported".into(),
            ));
        }
        if self.breakpoints.is_empty() {
            return Ok(Self::zero(self.domain));
        }
        let mut pts: Vec<(Rational, Rational)> = Vec::with_capacity(self.breakpoints.len() + 4);
        for i in 0..self.breakpoints.len() {
            if i > 0 {
                let d0 = &self.values[i - 1] - c;
                let d1 = &self.values[i] - c;
                if d0.signum() * d1.signum() < 0 {
                    let (b0, b1) = (&self.breakpoints[i - 1], &self.breakpoints[i]);
                    let tc = b0 + &((b1 - b0) * &d0 / (&d0 - &d1));
                    pts.push((tc, c.clone()));
                }
            }
            pts.push((self.breakpoints[i].clone(), self.values[i].min_of(c)));
        }
        let (breakpoints, values) = pts.into_iter().unzip();
        Ok(Self::from_parts(self.domain, breakpoints, values))
    }

    /// `f + c` on the interval domain; the result generally has nonzero
    /// endpoint values, so it is internal envelope material.
    pub(crate) fn add_const(&self, c: &Rational) -> Result<Self> {
        if self.domain != Domain::Interval {
            return Err(Error::Precondition(
                "adding a nonzero constant leaves the compactly supported space".into(),
            ));
        }
        let values = self.values.iter().map(|v| v + c).collect();
        Ok(Self::from_parts(
            self.domain,
            self.breakpoints.clone(),
            values,
        ))
    }

    /// Exact signed integral over the span (trapezoid sums).
    pub fn integral_signed(&self) -> Rational {
        let mut total = Rational::zero();
        let half = Rational::ratio(1, 2);
        for i in 1..self.breakpoints.len() {
            let width = &self.breakpoints[i] - &self.breakpoints[i - 1];
            let avg = (&self.values[i] + &self.values[i - 1]) * &half;
            total = total + width * avg;
        }
        total
    }

    /// Exact integral of `|f|` (zero crossings inserted first).
    pub fn integral_abs(&self) -> Rational {
        self.abs().integral_signed()
    }

    /// `sup |f|`; a piecewise-linear maximum is attained at a breakpoint.
    pub fn sup_abs(&self) -> Rational {
        self.values
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Minimum value over the whole domain (0 outside the span counts on the
    /// real line; interval spans carry explicit endpoint values).
    pub fn min_value(&self) -> Rational {
        let inner = self.values.iter().min().cloned();
        match (self.domain, inner) {
            (_, None) => Rational::zero(),
            (Domain::Interval, Some(m)) => m,
            (Domain::RealLine, Some(m)) => m.min_of(&Rational::zero()),
        }
    }

    pub fn max_value(&self) -> Rational {
        let inner = self.values.iter().max().cloned();
        match (self.domain, inner) {
            (_, None) => Rational::zero(),
            (Domain::Interval, Some(m)) => m,
            (Domain::RealLine, Some(m)) => m.max_of(&Rational::zero()),
        }
    }

    pub fn is_nonneg(&self) -> bool {
        !self.min_value().is_negative()
    }

    /// Pointwise `<=`: on the merged grid both operands are linear between
    /// shared breakpoints, so comparing grid values suffices.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.same_domain(other)?;
        for t in self.merged_grid(other) {
            if self.eval_extended(&t) > other.eval_extended(&t) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
