//! Exact scalar functions on a chart.
//!
//! A [`RingElem`] is a finite Fourier series in the chart's periodic
//! variable whose coefficients are sparse polynomials, all divided by a
//! formal product of the chart's registered denominator factors:
//!
//! ```text
//!     ( Σ_k  c_k(x) cos(k ω₀ u) + s_k(x) sin(k ω₀ u) )  /  Π_f f^{e_f}
//! ```
//!
//! The representation is kept canonical (no zero coefficient polynomials,
//! denominator factors cancelled whenever they divide every numerator
//! coefficient), so zero testing is exact and free of sampling.

use crate::chart::Chart;
use crate::poly::Poly;
use crate::scalar::{Rat, Scalar};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RingError {
    #[error("operands belong to different charts")]
    MixedChart,
    #[error("denominator factor `{0}` is not registered on this chart")]
    UnregisteredDenominator(String),
    #[error("registered denominator factor `{0}` vanishes at the evaluation point")]
    DenominatorZero(String),
    #[error("exact evaluation of a trigonometric term at a nonzero angle")]
    TrigInExactMode,
    #[error("element is not a unit (rational multiple of denominator factors)")]
    NotAUnit,
    #[error("chart has no periodic variable")]
    NoPeriodicVariable,
}

#[derive(Clone, PartialEq, Debug)]
struct Wave {
    cos: Poly<Rat>,
    sin: Poly<Rat>,
}

impl Wave {
    fn zero(nvars: usize) -> Self {
        Wave {
            cos: Poly::zero(nvars),
            sin: Poly::zero(nvars),
        }
    }

    fn is_zero(&self) -> bool {
        self.cos.is_zero() && self.sin.is_zero()
    }
}

/// An exact scalar-function value on a chart.
#[derive(Clone, Debug)]
pub struct RingElem {
    chart: Arc<Chart>,
    /// Exponent of each registered denominator factor.
    den: Vec<u32>,
    /// Frequency multiple `k` -> coefficient pair; slot 0 holds the
    /// non-oscillatory part (its sine half is identically zero).
    waves: BTreeMap<u32, Wave>,
}

impl RingElem {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        RingElem {
            chart: chart.clone(),
            den: vec![0; chart.denominators().len()],
            waves: BTreeMap::new(),
        }
    }

    pub fn constant(chart: &Arc<Chart>, c: Rat) -> Self {
        Self::from_poly(chart, Poly::constant(chart.dim(), c))
    }

    pub fn int(chart: &Arc<Chart>, n: i64) -> Self {
        Self::constant(chart, Rat::from_integer(n.into()))
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::int(chart, 1)
    }

    pub fn var(chart: &Arc<Chart>, i: usize) -> Self {
        Self::from_poly(chart, Poly::var(chart.dim(), i))
    }

    pub fn from_poly(chart: &Arc<Chart>, p: Poly<Rat>) -> Self {
        assert_eq!(p.nvars(), chart.dim());
        let mut e = Self::zero(chart);
        if !p.is_zero() {
            e.waves.insert(
                0,
                Wave {
                    cos: p,
                    sin: Poly::zero(chart.dim()),
                },
            );
        }
        e
    }

    /// `cos(k ω₀ u)` on a chart with periodic variable `u`.
    pub fn cos_k(chart: &Arc<Chart>, k: u32) -> Result<Self, RingError> {
        Self::trig(chart, k, true)
    }

    /// `sin(k ω₀ u)`.
    pub fn sin_k(chart: &Arc<Chart>, k: u32) -> Result<Self, RingError> {
        Self::trig(chart, k, false)
    }

    fn trig(chart: &Arc<Chart>, k: u32, is_cos: bool) -> Result<Self, RingError> {
        if chart.periodic().is_none() {
            return Err(RingError::NoPeriodicVariable);
        }
        let mut e = Self::zero(chart);
        let nv = chart.dim();
        if k == 0 {
            if is_cos {
                return Ok(Self::one(chart));
            }
            return Ok(e);
        }
        let one = Poly::one(nv);
        let w = if is_cos {
            Wave {
                cos: one,
                sin: Poly::zero(nv),
            }
        } else {
            Wave {
                cos: Poly::zero(nv),
                sin: one,
            }
        };
        e.waves.insert(k, w);
        Ok(e)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    /// True iff this is the zero function; decided on the canonical form.
    pub fn is_zero(&self) -> bool {
        self.waves.is_empty()
    }

    /// The value as a rational constant, when it is one.
    pub fn as_rat(&self) -> Option<Rat> {
        if self.den.iter().any(|&e| e > 0) {
            return None;
        }
        match self.waves.len() {
            0 => Some(Rat::zero()),
            1 => {
                let (k, w) = self.waves.iter().next().unwrap();
                if *k == 0 && w.sin.is_zero() {
                    w.cos.as_constant()
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// The non-oscillatory polynomial part, when the element is a plain
    /// polynomial (no denominator, no waves).
    pub fn as_poly(&self) -> Option<&Poly<Rat>> {
        if self.den.iter().any(|&e| e > 0) || self.waves.len() > 1 {
            return None;
        }
        match self.waves.iter().next() {
            None => None,
            Some((0, w)) if w.sin.is_zero() => Some(&w.cos),
            _ => None,
        }
    }

    fn check_chart(&self, other: &RingElem) -> Result<(), RingError> {
        if self.chart.same_as(&other.chart) {
            Ok(())
        } else {
            Err(RingError::MixedChart)
        }
    }

    fn normalize(&mut self) {
        self.waves.retain(|_, w| !w.is_zero());
        if self.waves.is_empty() {
            self.den.iter_mut().for_each(|e| *e = 0);
            return;
        }
        let factors = self.chart.denominators();
        for (fi, (_, fpoly)) in factors.iter().enumerate() {
            while self.den[fi] > 0 {
                let mut divided: Vec<(u32, Wave)> = Vec::with_capacity(self.waves.len());
                let mut all_divide = true;
                for (k, w) in &self.waves {
                    let dc = if w.cos.is_zero() {
                        Some(w.cos.clone())
                    } else {
                        w.cos.exact_div(fpoly)
                    };
                    let ds = if w.sin.is_zero() {
                        Some(w.sin.clone())
                    } else {
                        w.sin.exact_div(fpoly)
                    };
                    match (dc, ds) {
                        (Some(c), Some(s)) => divided.push((*k, Wave { cos: c, sin: s })),
                        _ => {
                            all_divide = false;
                            break;
                        }
                    }
                }
                if all_divide {
                    self.waves = divided.into_iter().collect();
                    self.den[fi] -= 1;
                } else {
                    break;
                }
            }
        }
    }

    fn scale_polys(&self, f: impl Fn(&Poly<Rat>) -> Poly<Rat>) -> Self {
        let waves = self
            .waves
            .iter()
            .map(|(k, w)| {
                (
                    *k,
                    Wave {
                        cos: f(&w.cos),
                        sin: f(&w.sin),
                    },
                )
            })
            .collect();
        let mut out = RingElem {
            chart: self.chart.clone(),
            den: self.den.clone(),
            waves,
        };
        out.normalize();
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        self.scale_polys(|p| p.scale(c))
    }

    pub fn checked_add(&self, rhs: &RingElem) -> Result<RingElem, RingError> {
        self.check_chart(rhs)?;
        let nf = self.den.len();
        let lcm: Vec<u32> = (0..nf).map(|i| self.den[i].max(rhs.den[i])).collect();
        let boost = |e: &RingElem| -> BTreeMap<u32, Wave> {
            let mut mult = Poly::one(e.chart.dim());
            for (i, (_, f)) in e.chart.denominators().iter().enumerate() {
                for _ in e.den[i]..lcm[i] {
                    mult = &mult * f;
                }
            }
            e.waves
                .iter()
                .map(|(k, w)| {
                    (
                        *k,
                        Wave {
                            cos: &w.cos * &mult,
                            sin: &w.sin * &mult,
                        },
                    )
                })
                .collect()
        };
        let mut waves = boost(self);
        for (k, w) in boost(rhs) {
            let entry = waves.entry(k).or_insert_with(|| Wave::zero(self.chart.dim()));
            entry.cos = &entry.cos + &w.cos;
            entry.sin = &entry.sin + &w.sin;
        }
        let mut out = RingElem {
            chart: self.chart.clone(),
            den: lcm,
            waves,
        };
        out.normalize();
        Ok(out)
    }

    pub fn checked_mul(&self, rhs: &RingElem) -> Result<RingElem, RingError> {
        self.check_chart(rhs)?;
        let nv = self.chart.dim();
        let den: Vec<u32> = self
            .den
            .iter()
            .zip(&rhs.den)
            .map(|(&a, &b)| a + b)
            .collect();
        let half = Rat::new(1.into(), 2.into());
        let mut waves: BTreeMap<u32, Wave> = BTreeMap::new();
        let mut put = |k: i64, cos: Poly<Rat>, sin: Poly<Rat>| {
            // fold negative frequencies: cos is even, sin is odd
            let (k, cos, sin) = if k < 0 { (-k, cos, -&sin) } else { (k, cos, sin) };
            let k = k as u32;
            let sin = if k == 0 { Poly::zero(nv) } else { sin };
            if cos.is_zero() && sin.is_zero() {
                return;
            }
            let entry = waves.entry(k).or_insert_with(|| Wave::zero(nv));
            entry.cos = &entry.cos + &cos;
            entry.sin = &entry.sin + &sin;
        };
        for (&k1, w1) in &self.waves {
            for (&k2, w2) in &rhs.waves {
                let (k1i, k2i) = (k1 as i64, k2 as i64);
                if k1 == 0 && k2 == 0 {
                    put(0, &w1.cos * &w2.cos, Poly::zero(nv));
                    continue;
                }
                // cos·cos -> ½cos(k1−k2) + ½cos(k1+k2)
                let cc = (&w1.cos * &w2.cos).scale(&half);
                put(k1i - k2i, cc.clone(), Poly::zero(nv));
                put(k1i + k2i, cc, Poly::zero(nv));
                // sin·sin -> ½cos(k1−k2) − ½cos(k1+k2)
                let ss = (&w1.sin * &w2.sin).scale(&half);
                if !ss.is_zero() {
                    put(k1i - k2i, ss.clone(), Poly::zero(nv));
                    put(k1i + k2i, -&ss, Poly::zero(nv));
                }
                // sin·cos -> ½sin(k1+k2) + ½sin(k1−k2)
                let sc = (&w1.sin * &w2.cos).scale(&half);
                if !sc.is_zero() {
                    put(k1i + k2i, Poly::zero(nv), sc.clone());
                    put(k1i - k2i, Poly::zero(nv), sc);
                }
                // cos·sin -> ½sin(k1+k2) − ½sin(k1−k2)
                let cs = (&w1.cos * &w2.sin).scale(&half);
                if !cs.is_zero() {
                    put(k1i + k2i, Poly::zero(nv), cs.clone());
                    put(k1i - k2i, Poly::zero(nv), -&cs);
                }
            }
        }
        let mut out = RingElem {
            chart: self.chart.clone(),
            den,
            waves,
        };
        out.normalize();
        Ok(out)
    }

    /// Exact partial derivative with respect to chart variable `var`.
    pub fn derivative(&self, var: usize) -> RingElem {
        assert!(var < self.chart.dim());
        let nv = self.chart.dim();
        let periodic = self.chart.periodic().cloned();

        // numerator derivative (waves only, same denominator)
        let mut num_waves: BTreeMap<u32, Wave> = BTreeMap::new();
        for (&k, w) in &self.waves {
            let mut cos = w.cos.derivative(var);
            let mut sin = w.sin.derivative(var);
            if k > 0 {
                if let Some(p) = &periodic {
                    if p.var == var {
                        let freq = Rat::from_integer(k.into()) * p.base_freq.clone();
                        // d/du [c cos(ku) + s sin(ku)]
                        //   = (c' + s·k) cos + (s' − c·k) sin
                        cos = &cos + &w.sin.scale(&freq);
                        sin = &sin - &w.cos.scale(&freq);
                    }
                }
            }
            if !(cos.is_zero() && sin.is_zero()) {
                let e = num_waves.entry(k).or_insert_with(|| Wave::zero(nv));
                e.cos = &e.cos + &cos;
                e.sin = &e.sin + &sin;
            }
        }
        let mut out = RingElem {
            chart: self.chart.clone(),
            den: self.den.clone(),
            waves: num_waves,
        };
        out.normalize();

        // quotient rule contributions, one per denominator factor
        for (fi, (_, fpoly)) in self.chart.denominators().iter().enumerate() {
            let e = self.den[fi];
            if e == 0 {
                continue;
            }
            let fprime = fpoly.derivative(var);
            if fprime.is_zero() {
                continue;
            }
            let coeff = (&fprime).scale(&-Rat::from_integer(e.into()));
            let mut term = self.scale_polys(|p| p * &coeff);
            term.den = self.den.clone();
            term.den[fi] += 1;
            term.normalize();
            out = out.checked_add(&term).expect("same chart");
        }
        out
    }

    /// Evaluate at a point (slice in chart-variable order).
    pub fn eval<S: Scalar>(&self, point: &[S]) -> Result<S, RingError> {
        assert_eq!(point.len(), self.chart.dim());
        let mut den_val = S::one();
        for (fi, (name, fpoly)) in self.chart.denominators().iter().enumerate() {
            if self.den[fi] == 0 {
                continue;
            }
            let fv = fpoly.eval(point);
            if fv.is_zero() {
                return Err(RingError::DenominatorZero(name.clone()));
            }
            for _ in 0..self.den[fi] {
                den_val = den_val * fv.clone();
            }
        }
        let mut acc = S::zero();
        for (&k, w) in &self.waves {
            if k == 0 {
                acc = acc + w.cos.eval(point);
                continue;
            }
            let p = self.chart.periodic().expect("wave without periodic variable");
            let freq = Rat::from_integer(k.into()) * p.base_freq.clone();
            let angle = S::from_rat(&freq) * point[p.var].clone();
            let (c, s) = match (S::cos_of(&angle), S::sin_of(&angle)) {
                (Some(c), Some(s)) => (c, s),
                _ => return Err(RingError::TrigInExactMode),
            };
            acc = acc + w.cos.eval(point) * c + w.sin.eval(point) * s;
        }
        Ok(acc / den_val)
    }

    /// Evaluate with variables given by name.
    pub fn eval_named<S: Scalar>(&self, point: &BTreeMap<String, S>) -> Result<S, RingError> {
        let vals: Vec<S> = self
            .chart
            .vars()
            .iter()
            .map(|v| point.get(v).cloned().expect("missing variable in point"))
            .collect();
        self.eval(&vals)
    }

    /// Decompose a unit as `rational · Π factor^power` (numerator factor
    /// powers count positive, denominator powers negative).
    pub fn as_unit(&self) -> Result<(Rat, Vec<i64>), RingError> {
        let Some(p) = self.as_poly() else {
            // waves or irreducible denominator structure
            if self.waves.len() != 1 {
                return Err(RingError::NotAUnit);
            }
            let (k, w) = self.waves.iter().next().unwrap();
            if *k != 0 || !w.sin.is_zero() {
                return Err(RingError::NotAUnit);
            }
            // numerator with denominator: strip factors from numerator
            let mut rest = w.cos.clone();
            let mut powers: Vec<i64> = self.den.iter().map(|&e| -(e as i64)).collect();
            for (fi, (_, fpoly)) in self.chart.denominators().iter().enumerate() {
                while let Some(q) = rest.exact_div(fpoly) {
                    rest = q;
                    powers[fi] += 1;
                }
            }
            return match rest.as_constant() {
                Some(c) if !c.is_zero() => Ok((c, powers)),
                _ => Err(RingError::NotAUnit),
            };
        };
        let mut rest = p.clone();
        if rest.is_zero() {
            return Err(RingError::NotAUnit);
        }
        let mut powers: Vec<i64> = vec![0; self.chart.denominators().len()];
        for (fi, (_, fpoly)) in self.chart.denominators().iter().enumerate() {
            while let Some(q) = rest.exact_div(fpoly) {
                rest = q;
                powers[fi] += 1;
            }
        }
        match rest.as_constant() {
            Some(c) if !c.is_zero() => Ok((c, powers)),
            _ => Err(RingError::NotAUnit),
        }
    }

    /// Exact inverse of a unit.
    pub fn inv_unit(&self) -> Result<RingElem, RingError> {
        let (c, powers) = self.as_unit()?;
        let mut num = Poly::constant(self.chart.dim(), Rat::one() / c);
        let mut den = vec![0u32; powers.len()];
        for (fi, (_, fpoly)) in self.chart.denominators().iter().enumerate() {
            let p = powers[fi];
            if p > 0 {
                den[fi] = p as u32;
            } else {
                for _ in 0..(-p) {
                    num = &num * fpoly;
                }
            }
        }
        let mut out = RingElem::from_poly(&self.chart, num);
        out.den = den;
        out.normalize();
        Ok(out)
    }

    /// Exact quotient by a unit.
    pub fn checked_div(&self, rhs: &RingElem) -> Result<RingElem, RingError> {
        self.checked_mul(&rhs.inv_unit()?)
    }

    pub fn pow(&self, k: u32) -> RingElem {
        let mut acc = RingElem::one(&self.chart);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub(crate) fn waves_iter(&self) -> impl Iterator<Item = (u32, &Poly<Rat>, &Poly<Rat>)> {
        self.waves.iter().map(|(&k, w)| (k, &w.cos, &w.sin))
    }

    pub(crate) fn den_exponents(&self) -> &[u32] {
        &self.den
    }

    /// Rebuild this element on another chart given old->new variable
    /// indices; requires the element not to involve any unmapped variable
    /// and the target chart's denominators to match in order.
    pub(crate) fn map_vars(&self, chart: &Arc<Chart>, var_map: &[Option<usize>]) -> RingElem {
        let remap = |p: &Poly<Rat>| -> Poly<Rat> {
            Poly::from_terms(
                chart.dim(),
                p.terms().map(|(e, c)| {
                    let mut e2 = vec![0u16; chart.dim()];
                    for (i, &k) in e.iter().enumerate() {
                        if k > 0 {
                            let ni = var_map[i].expect("element involves a dropped variable");
                            e2[ni] = k;
                        }
                    }
                    (e2, c.clone())
                }),
            )
        };
        let waves = self
            .waves
            .iter()
            .map(|(&k, w)| {
                (
                    k,
                    Wave {
                        cos: remap(&w.cos),
                        sin: remap(&w.sin),
                    },
                )
            })
            .collect();
        let mut out = RingElem {
            chart: chart.clone(),
            den: self.den.clone(),
            waves,
        };
        out.normalize();
        out
    }
}

impl PartialEq for RingElem {
    fn eq(&self, other: &Self) -> bool {
        match self.checked_add(&other.neg()) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

impl RingElem {
    fn neg(&self) -> RingElem {
        self.scale(&-Rat::one())
    }
}

impl Add for &RingElem {
    type Output = RingElem;
    fn add(self, rhs: Self) -> RingElem {
        self.checked_add(rhs).expect("mixed-chart addition")
    }
}

impl Sub for &RingElem {
    type Output = RingElem;
    fn sub(self, rhs: Self) -> RingElem {
        self + &(-rhs)
    }
}

impl Neg for &RingElem {
    type Output = RingElem;
    fn neg(self) -> RingElem {
        RingElem::neg(self)
    }
}

impl Mul for &RingElem {
    type Output = RingElem;
    fn mul(self, rhs: Self) -> RingElem {
        self.checked_mul(rhs).expect("mixed-chart multiplication")
    }
}

impl fmt::Display for RingElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::exprlang::emit(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn plain_chart() -> Arc<Chart> {
        Chart::new(vec!["x1".into(), "x2".into()]).shared()
    }

    fn z_chart() -> Arc<Chart> {
        let c = Chart::new(vec!["z".into(), "w".into()]);
        let f = Poly::var(2, 0);
        c.with_denominator("z", f).shared()
    }

    fn periodic_chart() -> Arc<Chart> {
        Chart::new(vec!["xm".into(), "y".into()])
            .with_periodic("xm", rat(1, 2))
            .shared()
    }

    #[test]
    fn difference_of_squares() {
        let ch = plain_chart();
        let x1 = RingElem::var(&ch, 0);
        let one = RingElem::one(&ch);
        let p = &(&x1 + &one) * &(&x1 - &one);
        let expect = &(&x1 * &x1) - &one;
        assert_eq!(p, expect);
    }

    #[test]
    fn product_to_sum() {
        // cos(½xm)·cos(½xm) = ½ + ½cos(xm), with ω₀ = ½ so k=1 is ½xm
        let ch = periodic_chart();
        let c = RingElem::cos_k(&ch, 1).unwrap();
        let sq = &c * &c;
        let half = RingElem::constant(&ch, rat(1, 2));
        let expect = &half + &RingElem::cos_k(&ch, 2).unwrap().scale(&rat(1, 2));
        assert_eq!(sq, expect);
    }

    #[test]
    fn common_denominator_addition() {
        // 1/z + 1/z² = (z+1)/z²
        let ch = z_chart();
        let one = RingElem::one(&ch);
        let z = RingElem::var(&ch, 0);
        let inv_z = one.checked_div(&z).unwrap();
        let inv_z2 = inv_z.checked_mul(&inv_z).unwrap();
        let sum = &inv_z + &inv_z2;
        let expect = (&z + &one).checked_div(&(&z * &z)).unwrap();
        assert_eq!(sum, expect);
    }

    #[test]
    fn pythagorean_identity_is_zero() {
        let ch = periodic_chart();
        let c = RingElem::cos_k(&ch, 1).unwrap();
        let s = RingElem::sin_k(&ch, 1).unwrap();
        let expr = &(&(&c * &c) + &(&s * &s)) - &RingElem::one(&ch);
        assert!(expr.is_zero());
        let nonzero = &RingElem::var(&ch, 0) - &RingElem::var(&ch, 1);
        assert!(!nonzero.is_zero());
    }

    #[test]
    fn cancellation_in_quotients() {
        // (z² − z²)/z⁴ = 0
        let ch = z_chart();
        let z = RingElem::var(&ch, 0);
        let z2 = &z * &z;
        let z4 = &z2 * &z2;
        let q = (&z2 - &z2).checked_div(&z4).unwrap();
        assert!(q.is_zero());
    }

    #[test]
    fn derivative_examples() {
        let ch = plain_chart();
        let x1 = RingElem::var(&ch, 0);
        let x2 = RingElem::var(&ch, 1);
        // ∂/∂x1 (x1² x2) = 2 x1 x2
        let p = &(&x1 * &x1) * &x2;
        assert_eq!(p.derivative(0), (&x1 * &x2).scale(&rat(2, 1)));

        // ∂/∂z (1/z²) = −2/z³
        let zc = z_chart();
        let z = RingElem::var(&zc, 0);
        let one = RingElem::one(&zc);
        let inv_z2 = one.checked_div(&(&z * &z)).unwrap();
        let d = inv_z2.derivative(0);
        let expect = RingElem::int(&zc, -2)
            .checked_div(&(&(&z * &z) * &z))
            .unwrap();
        assert_eq!(d, expect);

        // ∂/∂xm sin(½xm) = ½cos(½xm)
        let pc = periodic_chart();
        let s = RingElem::sin_k(&pc, 1).unwrap();
        let d = s.derivative(0);
        let expect = RingElem::cos_k(&pc, 1).unwrap().scale(&rat(1, 2));
        assert_eq!(d, expect);
    }

    #[test]
    fn evaluation() {
        let ch = plain_chart();
        let x1 = RingElem::var(&ch, 0);
        let p = &(&x1 * &x1) - &RingElem::one(&ch);
        assert_eq!(
            p.eval::<Rat>(&[rat(3, 1), rat(0, 1)]).unwrap(),
            rat(8, 1)
        );

        let zc = z_chart();
        let inv_z = RingElem::one(&zc).checked_div(&RingElem::var(&zc, 0)).unwrap();
        assert!(matches!(
            inv_z.eval::<Rat>(&[rat(0, 1), rat(1, 1)]),
            Err(RingError::DenominatorZero(_))
        ));

        // x1 + cos(½xm) at xm=0 exactly
        let pc = periodic_chart();
        let e = &RingElem::var(&pc, 1) + &RingElem::cos_k(&pc, 1).unwrap();
        assert_eq!(e.eval::<Rat>(&[rat(0, 1), rat(0, 1)]).unwrap(), rat(1, 1));
        assert!(matches!(
            e.eval::<Rat>(&[rat(1, 1), rat(0, 1)]),
            Err(RingError::TrigInExactMode)
        ));
        // float mode works anywhere
        let v = e.eval::<f64>(&[2.0, 0.5]).unwrap();
        assert!((v - (0.5 + (1.0f64).cos())).abs() < 1e-12);
    }

    #[test]
    fn mixed_chart_rejected() {
        let a = RingElem::one(&plain_chart());
        let b = RingElem::one(&z_chart());
        assert!(matches!(a.checked_add(&b), Err(RingError::MixedChart)));
    }

    #[test]
    fn unit_recognition() {
        let zc = z_chart();
        let z = RingElem::var(&zc, 0);
        let u = z.pow(2).scale(&rat(3, 4));
        let (c, pows) = u.as_unit().unwrap();
        assert_eq!(c, rat(3, 4));
        assert_eq!(pows, vec![2]);
        assert_eq!(&u * &u.inv_unit().unwrap(), RingElem::one(&zc));
        let not_unit = &z + &RingElem::one(&zc);
        assert!(not_unit.as_unit().is_err());
    }
}
