//! Sparse multivariate polynomials with dense exponent vectors and a
//! sorted term map, so every polynomial has one canonical representation.

use crate::scalar::{Rat, Scalar};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Exponent vector of one term; same length as the variable list.
pub type Exps = Vec<u16>;

/// A sparse polynomial in `nvars` variables over the scalar `C`.
///
/// Invariants: no zero coefficients are stored and every exponent vector
/// has length `nvars`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly<C: Scalar> {
    nvars: usize,
    terms: BTreeMap<Exps, C>,
}

impl<C: Scalar> Poly<C> {
    pub fn zero(nvars: usize) -> Self {
        Poly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: C) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, C::one())
    }

    /// The monomial `var^k`.
    pub fn var_pow(nvars: usize, var: usize, k: u16) -> Self {
        assert!(var < nvars, "variable index out of range");
        let mut exps = vec![0; nvars];
        exps[var] = k;
        let mut p = Self::zero(nvars);
        p.terms.insert(exps, C::one());
        p
    }

    pub fn var(nvars: usize, var: usize) -> Self {
        Self::var_pow(nvars, var, 1)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Exps, C)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &C)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Some(c) iff the polynomial is the constant `c` (zero counts).
    pub fn as_constant(&self) -> Option<C> {
        match self.terms.len() {
            0 => Some(C::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&k| k == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Some((var, coeff)) iff the polynomial is `coeff * var` exactly.
    pub fn as_linear_monomial(&self) -> Option<(usize, C)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        let mut var = None;
        for (i, &k) in e.iter().enumerate() {
            match (k, var) {
                (0, _) => {}
                (1, None) => var = Some(i),
                _ => return None,
            }
        }
        var.map(|v| (v, c.clone()))
    }

    fn add_term(&mut self, exps: Exps, c: C) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.clone(), a.clone() * c.clone()))
            .collect();
        Poly {
            nvars: self.nvars,
            terms,
        }
    }

    /// Exact partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        assert!(var < self.nvars);
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var] = k - 1;
            let mut kc = C::zero();
            for _ in 0..k {
                kc = kc + C::one();
            }
            out.add_term(e2, c.clone() * kc);
        }
        out
    }

    /// Evaluate at a point, mapping coefficients into `S` with `conv`.
    pub fn eval_map<S: Scalar>(&self, point: &[S], conv: impl Fn(&C) -> S) -> S {
        assert_eq!(point.len(), self.nvars);
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = conv(c);
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = t * point[i].clone();
                }
            }
            acc = acc + t;
        }
        acc
    }

    /// Substitute each variable by the given polynomial.
    pub fn substitute(&self, subs: &[Poly<C>]) -> Poly<C> {
        assert_eq!(subs.len(), self.nvars);
        let nv = subs.first().map(|p| p.nvars).unwrap_or(0);
        let mut acc = Poly::zero(nv);
        for (e, c) in &self.terms {
            let mut t = Poly::constant(nv, c.clone());
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    t = &t * &subs[i];
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Exact quotient if `divisor` divides `self`, else `None`.
    ///
    /// Division with respect to the lex leading term; for a single divisor
    /// the remainder is unique, so a zero remainder decides divisibility.
    pub fn exact_div(&self, divisor: &Poly<C>) -> Option<Poly<C>> {
        assert_eq!(self.nvars, divisor.nvars);
        let (dlead, dcoef) = divisor.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quo = Poly::zero(self.nvars);
        while !rem.is_zero() {
            let (rlead, rcoef) = rem.terms.iter().next_back().unwrap();
            let mut q = rlead.clone();
            for i in 0..self.nvars {
                if rlead[i] < dlead[i] {
                    return None;
                }
                q[i] = rlead[i] - dlead[i];
            }
            let qc = rcoef.clone() / dcoef.clone();
            let mut mono = Poly::zero(self.nvars);
            mono.terms.insert(q, qc);
            rem = &rem - &(&mono * divisor);
            quo = &quo + &mono;
        }
        Some(quo)
    }
}

impl Poly<Rat> {
    pub fn eval<S: Scalar>(&self, point: &[S]) -> S {
        self.eval_map(point, S::from_rat)
    }
}

impl<C: Scalar> Add for &Poly<C> {
    type Output = Poly<C>;
    fn add(self, rhs: Self) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable counts differ");
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &Poly<C> {
    type Output = Poly<C>;
    fn sub(self, rhs: Self) -> Poly<C> {
        self + &(-rhs)
    }
}

impl<C: Scalar> Neg for &Poly<C> {
    type Output = Poly<C>;
    fn neg(self) -> Poly<C> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), -c.clone()))
            .collect();
        Poly {
            nvars: self.nvars,
            terms,
        }
    }
}

impl<C: Scalar> Mul for &Poly<C> {
    type Output = Poly<C>;
    fn mul(self, rhs: Self) -> Poly<C> {
        assert_eq!(self.nvars, rhs.nvars, "polynomial variable counts differ");
        let mut out = Poly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let e: Exps = ea.iter().zip(eb).map(|(&x, &y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl<C: Scalar> fmt::Display for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", c)?;
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    write!(f, "*v{}^{}", i, k)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, rat_int};

    fn x(i: usize) -> Poly<Rat> {
        Poly::var(3, i)
    }

    #[test]
    fn difference_of_squares() {
        let one = Poly::one(3);
        let p = &(&x(0) + &one) * &(&x(0) - &one);
        let expect = &(&x(0) * &x(0)) - &one;
        assert_eq!(p, expect);
    }

    #[test]
    fn derivative_of_monomial() {
        // d/dx0 (x0^2 x1) = 2 x0 x1
        let p = &(&x(0) * &x(0)) * &x(1);
        let d = p.derivative(0);
        let expect = (&x(0) * &x(1)).scale(&rat_int(2));
        assert_eq!(d, expect);
        assert!(p.derivative(2).is_zero());
    }

    #[test]
    fn mixed_partials_commute() {
        let p = &(&(&x(0) * &x(1)) * &x(2)) + &(&x(0) * &x(0));
        assert_eq!(p.derivative(0).derivative(1), p.derivative(1).derivative(0));
    }

    #[test]
    fn eval_is_homomorphism() {
        let a = &(&x(0) * &x(1)) + &Poly::constant(3, rat(1, 2));
        let b = &x(2) - &x(0);
        let pt = [rat_int(3), rat(1, 3), rat_int(-2)];
        let prod = (&a * &b).eval::<Rat>(&pt);
        assert_eq!(prod, a.eval::<Rat>(&pt) * b.eval::<Rat>(&pt));
    }

    #[test]
    fn exact_division() {
        // (1 + x0^2 + x1^2) divides its product with anything.
        let f = &(&Poly::one(3) + &(&x(0) * &x(0))) + &(&x(1) * &x(1));
        let g = &x(2) + &Poly::constant(3, rat(5, 7));
        let prod = &f * &g;
        assert_eq!(prod.exact_div(&f), Some(g.clone()));
        let not_multiple = &prod + &Poly::one(3);
        assert_eq!(not_multiple.exact_div(&f), None);
    }

    #[test]
    fn float_evaluation() {
        let p = &(&x(0) * &x(0)) - &Poly::one(3);
        let v = p.eval::<f64>(&[3.0, 0.0, 0.0]);
        assert!((v - 8.0).abs() < 1e-12);
    }
}
