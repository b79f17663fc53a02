use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::exponent::{degree, Exponent};
use super::series::SeriesVector;
use crate::error::{dim_mismatch, Result};
use crate::rational::Rational;

/// An exact polynomial in `nvars` variables with rational coefficients.
///
/// Used for the entries of `A`, the components of `φ` and `f`, and the
/// coefficients of jet fields. No truncation semantics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

fn binomial(n: u32, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn pow(q: &Rational, e: u32) -> Rational {
    num_traits::pow(q.clone(), e as usize)
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    /// The coordinate function `x_i` (zero-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut alpha = vec![0; nvars];
        alpha[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(alpha, Rational::one());
        p
    }

    pub fn from_terms<I>(nvars: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut p = Self::zero(nvars);
        for (alpha, c) in terms {
            if alpha.len() != nvars {
                return Err(dim_mismatch(format!(
                    "monomial of length {} in a polynomial in {nvars} variables",
                    alpha.len()
                )));
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Forgets the truncation of a scalar jet.
    pub fn from_series(s: &SeriesVector) -> Result<Self> {
        if s.ncomponents() != 1 {
            return Err(dim_mismatch("only scalar jets convert to polynomials"));
        }
        Self::from_terms(s.nvars(), s.terms().map(|(e, c)| (e.alpha.clone(), c.clone())))
    }

    fn add_term(&mut self, alpha: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, alpha: &[u32]) -> Rational {
        self.terms.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|a| degree(a)).max()
    }

    fn same_vars(&self, other: &Polynomial) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(dim_mismatch(format!(
                "polynomials in {} and {} variables",
                self.nvars, other.nvars
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_vars(other)?;
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.same_vars(other)?;
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let ab = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(ab, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, v) in &self.terms {
            out.add_term(a.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.nvars, Rational::one());
        for _ in 0..e {
            acc = acc.mul(self).expect("same variables");
        }
        acc
    }

    pub fn eval(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.nvars {
            return Err(dim_mismatch(format!(
                "point of dimension {} for a polynomial in {} variables",
                point.len(),
                self.nvars
            )));
        }
        let mut acc = Rational::zero();
        for (a, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(a) {
                if e > 0 {
                    t *= pow(x, e);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `∂/∂x_i` (zero-based `i`).
    pub fn derivative(&self, i: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (a, c) in &self.terms {
            if a[i] > 0 {
                let mut b = a.clone();
                b[i] -= 1;
                out.add_term(b, c * Rational::from_integer(a[i].into()));
            }
        }
        out
    }

    /// `∂^{|α|}/∂x^α`.
    pub fn partial(&self, alpha: &[u32]) -> Result<Polynomial> {
        if alpha.len() != self.nvars {
            return Err(dim_mismatch("derivative multiindex has the wrong length"));
        }
        let mut out = Polynomial::zero(self.nvars);
        'terms: for (a, c) in &self.terms {
            let mut b = a.clone();
            let mut factor = BigInt::one();
            for (k, (&ak, &dk)) in a.iter().zip(alpha).enumerate() {
                if ak < dk {
                    continue 'terms;
                }
                for s in 0..dk {
                    factor *= BigInt::from(ak - s);
                }
                b[k] = ak - dk;
            }
            out.add_term(b, c * Rational::from_integer(factor));
        }
        Ok(out)
    }

    /// Substitutes `x_i ↦ g_i`; the result lives in the variables of the `g_i`.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Polynomial> {
        if subs.len() != self.nvars {
            return Err(dim_mismatch(format!(
                "{} substitutions for a polynomial in {} variables",
                subs.len(),
                self.nvars
            )));
        }
        let target = match subs.first() {
            Some(g) => g.nvars,
            None => {
                return Ok(self.clone());
            }
        };
        if subs.iter().any(|g| g.nvars != target) {
            return Err(dim_mismatch("substituted polynomials disagree on variables"));
        }
        let mut powers: Vec<Vec<Polynomial>> = subs
            .iter()
            .map(|_| vec![Polynomial::constant(target, Rational::one())])
            .collect();
        let mut out = Polynomial::zero(target);
        for (a, c) in &self.terms {
            let mut t = Polynomial::constant(target, c.clone());
            for (k, &e) in a.iter().enumerate() {
                while powers[k].len() <= e as usize {
                    let next = powers[k].last().unwrap().mul(&subs[k])?;
                    powers[k].push(next);
                }
                t = t.mul(&powers[k][e as usize])?;
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// The degree-`D` jet of `x ↦ f(a + x)`, expanded term by term with the
    /// binomial theorem.
    pub fn taylor_expand_at(&self, a: &[Rational], max_degree: u32) -> Result<SeriesVector> {
        if a.len() != self.nvars {
            return Err(dim_mismatch(format!(
                "expansion point of dimension {} for a polynomial in {} variables",
                a.len(),
                self.nvars
            )));
        }
        let mut out = SeriesVector::scalar_zero(self.nvars, max_degree);
        for (beta, c) in &self.terms {
            // odometer over gamma <= beta componentwise
            let mut gamma = vec![0u32; self.nvars];
            loop {
                if degree(&gamma) <= max_degree {
                    let mut coeff = c.clone();
                    for k in 0..self.nvars {
                        let rest = beta[k] - gamma[k];
                        if rest > 0 {
                            if a[k].is_zero() {
                                coeff = Rational::zero();
                                break;
                            }
                            coeff *= pow(&a[k], rest);
                        }
                        if gamma[k] > 0 {
                            coeff *= Rational::from_integer(binomial(beta[k], gamma[k]));
                        }
                    }
                    out.add_term(Exponent::scalar(gamma.clone()), coeff);
                }
                let mut k = 0;
                loop {
                    if k == self.nvars {
                        break;
                    }
                    if gamma[k] < beta[k] {
                        gamma[k] += 1;
                        break;
                    }
                    gamma[k] = 0;
                    k += 1;
                }
                if k == self.nvars {
                    break;
                }
            }
        }
        Ok(out)
    }

    /// The degree-`D` truncation as a jet.
    pub fn to_series(&self, max_degree: u32) -> SeriesVector {
        SeriesVector::scalar_from_terms(
            self.nvars,
            max_degree,
            self.terms.iter().map(|(a, c)| (a.clone(), c.clone())),
        )
        .expect("terms fit by construction")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
            for (k, e) in a.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", k + 1)?,
                    _ => write!(f, "*x{}^{e}", k + 1)?,
                }
            }
        }
        Ok(())
    }
}
