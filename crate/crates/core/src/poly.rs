//! Sparse multivariate polynomials over Q(ζ_N).
//!
//! Terms live in a `BTreeMap` keyed by [`Monomial`], whose order is graded
//! lexicographic, so iteration order (and every printed form) is
//! deterministic. Zero coefficients are never stored.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::scalar::CyclotomicScalar as Scalar;

/// Exponent vector of a monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0.iter().zip(&other.0).map(|(a, b)| a.checked_sub(*b)).collect::<Option<Vec<_>>>().map(Monomial)
    }

    /// Comma-separated exponents, the key format of polynomial JSON.
    pub fn key(&self) -> String {
        self.0.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
    }

    pub fn from_key(key: &str) -> Result<Self, AlgebraError> {
        key.split(',')
            .map(|s| s.trim().parse::<u32>().map_err(|_| AlgebraError::Parse(format!("invalid exponent key '{key}'"))))
            .collect::<Result<Vec<_>, _>>()
            .map(Monomial)
    }

    /// All exponent vectors of `nvars` variables with total degree `d`, in
    /// descending graded-lex order (x1^d first).
    pub fn all_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
        fn rec(prefix: &mut Vec<u32>, left: u32, slots: usize, out: &mut Vec<Monomial>) {
            if slots == 1 {
                prefix.push(left);
                out.push(Monomial(prefix.clone()));
                prefix.pop();
                return;
            }
            for e in (0..=left).rev() {
                prefix.push(e);
                rec(prefix, left - e, slots - 1, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        if nvars == 0 {
            if d == 0 {
                out.push(Monomial(Vec::new()));
            }
            return out;
        }
        rec(&mut Vec::with_capacity(nvars), d, nvars, &mut out);
        out
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    nvars: usize,
    conductor: u32,
    terms: BTreeMap<Monomial, Scalar>,
}

impl Poly {
    pub fn zero(nvars: usize, conductor: u32) -> Self {
        Poly { nvars, conductor, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize, conductor: u32) -> Self {
        Self::constant(nvars, Scalar::one(conductor))
    }

    /// The variable x_i (0-based).
    pub fn var(nvars: usize, i: usize, conductor: u32) -> Self {
        Self::term(Monomial::var(nvars, i), Scalar::one(conductor))
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Poly { nvars: m.nvars(), conductor: c.conductor(), terms: BTreeMap::new() };
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from terms; duplicate monomials are summed.
    pub fn from_terms(
        nvars: usize,
        conductor: u32,
        terms: impl IntoIterator<Item = (Monomial, Scalar)>,
    ) -> Result<Self, AlgebraError> {
        let mut p = Poly::zero(nvars, conductor);
        for (m, c) in terms {
            if m.nvars() != nvars {
                return Err(AlgebraError::ArityMismatch { left: nvars, right: m.nvars() });
            }
            if c.conductor() != conductor {
                return Err(AlgebraError::ConductorMismatch { left: conductor, right: c.conductor() });
            }
            p.add_term(m, &c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.conductor))
    }

    /// Largest term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.leading_term().map(|(m, _)| m.degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<(), AlgebraError> {
        if self.nvars != other.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: other.nvars });
        }
        if self.conductor != other.conductor {
            return Err(AlgebraError::ConductorMismatch { left: self.conductor, right: other.conductor });
        }
        Ok(())
    }

    fn assert_compatible(&self, other: &Poly) {
        if let Err(e) = self.check_compatible(other) {
            panic!("incompatible polynomials: {e}");
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_compatible(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        assert_eq!(c.conductor(), self.conductor, "conductor mismatch");
        if c.is_zero() {
            return Poly::zero(self.nvars, self.conductor);
        }
        Poly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(self.nvars, self.conductor);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Evaluates at a point; a ring homomorphism Q(ζ)[x] → Q(ζ).
    pub fn evaluate(&self, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
        if point.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: point.len() });
        }
        if let Some(bad) = point.iter().find(|x| x.conductor() != self.conductor) {
            return Err(AlgebraError::ConductorMismatch { left: self.conductor, right: bad.conductor() });
        }
        let mut acc = Scalar::zero(self.conductor);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    /// Substitutes x_i ↦ images[i].
    pub fn compose(&self, images: &[Poly]) -> Result<Poly, AlgebraError> {
        if images.len() != self.nvars {
            return Err(AlgebraError::ArityMismatch { left: self.nvars, right: images.len() });
        }
        let Some(first) = images.first() else {
            return Ok(self.clone());
        };
        for img in images {
            first.check_compatible(img)?;
        }
        if first.conductor != self.conductor {
            return Err(AlgebraError::ConductorMismatch { left: self.conductor, right: first.conductor });
        }
        let mut powers: Vec<Vec<Poly>> = images.iter().map(|p| vec![Poly::one(p.nvars, p.conductor)]).collect();
        let mut out = Poly::zero(first.nvars, self.conductor);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(first.nvars, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if e > 0 {
                    t = &t * &powers[i][e as usize];
                }
            }
            out = &out + &t;
        }
        Ok(out)
    }

    pub fn partial_derivative(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.nvars, self.conductor);
        for (m, c) in &self.terms {
            let e = m.exponents()[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[i] -= 1;
            out.add_term(Monomial(exps), &c.scale(&crate::scalar::Rational::from_integer(e.into())));
        }
        out
    }

    pub fn embed(&self, conductor: u32) -> Result<Poly, AlgebraError> {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| Ok((m.clone(), c.embed(conductor)?)))
            .collect::<Result<BTreeMap<_, _>, AlgebraError>>()?;
        Ok(Poly { nvars: self.nvars, conductor, terms })
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        self.assert_compatible(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let lc_inv = lc.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars, self.conductor);
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c * &lc_inv;
            let t = Poly::term(qm.clone(), qc.clone());
            rem = &rem - &(&t * divisor);
            quot.add_term(qm, &qc);
        }
        Some(quot)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = Poly::zero(self.nvars, self.conductor);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nvars: self.nvars,
            conductor: self.conductor,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let vars: Vec<String> = m
                .exponents()
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "({c})*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Wire form: `{"n": int, "coeffs": {"e1,...,en": scalar-string}}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyJson {
    pub n: usize,
    pub coeffs: BTreeMap<String, String>,
}

impl Poly {
    pub fn to_json(&self) -> PolyJson {
        PolyJson { n: self.nvars, coeffs: self.terms.iter().map(|(m, c)| (m.key(), c.to_string())).collect() }
    }

    /// Parses the wire form. Coefficients of different conductors are
    /// embedded into the least common multiple of their conductors.
    pub fn from_json(json: &PolyJson) -> Result<Poly, AlgebraError> {
        let mut parsed = Vec::with_capacity(json.coeffs.len());
        let mut conductor = 1u32;
        for (k, v) in &json.coeffs {
            let m = Monomial::from_key(k)?;
            if m.nvars() != json.n {
                return Err(AlgebraError::ArityMismatch { left: json.n, right: m.nvars() });
            }
            let c: Scalar = v.parse()?;
            conductor = num_integer::lcm(conductor, c.conductor());
            parsed.push((m, c));
        }
        let terms =
            parsed.into_iter().map(|(m, c)| Ok((m, c.embed(conductor)?))).collect::<Result<Vec<_>, AlgebraError>>()?;
        Poly::from_terms(json.n, conductor, terms)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize, n: usize, conductor: u32) -> Poly {
        Poly::var(n, i, conductor)
    }

    #[test]
    fn difference_of_squares() {
        let (a, b) = (x(0, 2, 1), x(1, 2, 1));
        let p = &(&a + &b) * &(&a - &b);
        let expected = &(&a * &a) - &(&b * &b);
        assert_eq!(p, expected);
    }

    #[test]
    fn evaluate_sum_of_cubes() {
        let (a, b) = (x(0, 2, 1), x(1, 2, 1));
        let f = &a.pow(3) + &b.pow(3);
        let one = Scalar::one(1);
        assert_eq!(f.evaluate(&[one.clone(), one]).unwrap(), Scalar::from_integer(1, 2));
        assert!(f.evaluate(&[Scalar::one(1)]).is_err());
    }

    #[test]
    fn factored_sum_of_cubes_over_q_zeta3() {
        // (x + ωy)(x + ω²y)(x + y), expanded by direct multiplication.
        let (a, b) = (x(0, 2, 3), x(1, 2, 3));
        let w = Scalar::zeta_power(3, 1);
        let w2 = Scalar::zeta_power(3, 2);
        let p = &(&(&a + &b.scale(&w)) * &(&a + &b.scale(&w2))) * &(&a + &b);
        assert_eq!(p, &a.pow(3) + &b.pow(3));
    }

    #[test]
    fn graded_lex_order() {
        let m = |e: &[u32]| Monomial::new(e.to_vec());
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[0, 3]) > m(&[2, 0]));
        let all = Monomial::all_of_degree(3, 2);
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], m(&[2, 0, 0]));
        assert!(all.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn exact_division() {
        let (a, b) = (x(0, 2, 1), x(1, 2, 1));
        let f = &a.pow(3) + &b.pow(3);
        let g = &a + &b;
        let q = f.div_exact(&g).unwrap();
        assert_eq!(&q * &g, f);
        assert!(f.div_exact(&(&a - &b)).is_none());
    }

    #[test]
    fn compose_scaling() {
        let (a, b) = (x(0, 2, 1), x(1, 2, 1));
        let f = &a.pow(3) + &b.pow(3);
        let two = Scalar::from_integer(1, 2);
        let g = f.compose(&[a.scale(&two), b.clone()]).unwrap();
        assert_eq!(g, &a.pow(3).scale(&Scalar::from_integer(1, 8)) + &b.pow(3));
    }

    #[test]
    fn json_round_trip_and_mixed_conductors() {
        let json: PolyJson =
            serde_json::from_str(r#"{"n": 2, "coeffs": {"3,0": "1", "0,3": "[0,1]@3", "1,2": "[0,1]@4"}}"#).unwrap();
        let p = Poly::from_json(&json).unwrap();
        assert_eq!(p.conductor(), 12);
        assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
        let bad: PolyJson = serde_json::from_str(r#"{"n": 2, "coeffs": {"3": "1"}}"#).unwrap();
        assert!(Poly::from_json(&bad).is_err());
    }
}
