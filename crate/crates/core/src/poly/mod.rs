//! Exact sparse multivariate polynomials over the rationals.

mod matrix;
mod monomial;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use matrix::PolyMatrix;
pub use monomial::Monomial;

/// Coefficients are exact rationals, always kept in lowest terms.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Polynomial ring context: an ordered list of variable names.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    vars: Vec<String>,
}

impl Ring {
    pub fn new<S: AsRef<str>>(vars: impl IntoIterator<Item = S>) -> Arc<Ring> {
        Arc::new(Ring {
            vars: vars.into_iter().map(|s| s.as_ref().to_string()).collect(),
        })
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The ring with one more variable appended at the end. The name is
    /// chosen to avoid clashes with existing variables.
    pub fn extend_with_fresh(&self, base: &str) -> Arc<Ring> {
        let mut name = base.to_string();
        while self.vars.contains(&name) {
            name.push('_');
        }
        let mut vars = self.vars.clone();
        vars.push(name);
        Arc::new(Ring { vars })
    }
}

pub(crate) fn same_ring(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// Sparse polynomial; terms are stored in strictly decreasing degrevlex order
/// with no zero coefficients, so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<Ring>,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<Ring>, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Self::constant(ring, Scalar::one())
    }

    pub fn var(ring: &Arc<Ring>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), Scalar::one())
    }

    pub fn monomial(ring: &Arc<Ring>, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.nvars(), ring.nvars(), "monomial length must match the ring");
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    /// Builds a polynomial from arbitrary terms, combining duplicates.
    pub fn from_terms(ring: &Arc<Ring>, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.nvars(), ring.nvars(), "monomial length must match the ring");
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        Self::from_map(ring, acc)
    }

    fn from_map(ring: &Arc<Ring>, acc: BTreeMap<Monomial, Scalar>) -> Self {
        let terms = acc.into_iter().rev().filter(|(_, c)| !c.is_zero()).collect();
        Polynomial { ring: ring.clone(), terms }
    }

    /// Trusted constructor: terms must already be sorted decreasing and nonzero.
    pub(crate) fn from_sorted(ring: &Arc<Ring>, terms: Vec<(Monomial, Scalar)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 > w[1].0));
        debug_assert!(terms.iter().all(|(_, c)| !c.is_zero()));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn parse(ring: &Arc<Ring>, text: &str) -> Result<Self> {
        parse::parse_polynomial(ring, text)
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// Maximal total degree of a term; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Minimal total degree of a term (the order at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.last().map(|(m, _)| m.degree())
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn constant_term(&self) -> Scalar {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => {
                let d = m.degree();
                self.terms.iter().all(|(t, _)| t.degree() == d)
            }
        }
    }

    /// Leading term in the storage (degrevlex) order.
    pub fn leading(&self) -> Option<&(Monomial, Scalar)> {
        self.terms.first()
    }

    fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        use std::cmp::Ordering::*;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &Scalar| if negate_other { -c } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                Equal => {
                    let c = if negate_other { &a[i].1 - &b[j].1 } else { &a[i].1 + &b[j].1 };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.ring));
        }
        let mut acc: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let c = ca * cb;
                match acc.entry(ma.mul(mb)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += c;
                    }
                }
            }
        }
        Ok(Self::from_map(&self.ring, acc))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by a term; monomial orders are multiplicative so the term
    /// order is preserved.
    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `i` (0-based).
    pub fn diff(&self, i: usize) -> Result<Polynomial> {
        let n = self.nvars();
        if i >= n {
            return Err(Error::VariableIndex { index: i, nvars: n });
        }
        let terms = self.terms.iter().filter_map(|(m, c)| {
            let e = m.exponents()[i];
            (e > 0).then(|| {
                let mut ex = m.exponents().to_vec();
                ex[i] -= 1;
                (Monomial::new(ex), c * int(e as i64))
            })
        });
        Ok(Polynomial::from_terms(&self.ring, terms))
    }

    /// The partial derivatives `(d_1 p, ..., d_n p)` in variable order.
    pub fn jacobian(&self) -> Vec<Polynomial> {
        (0..self.nvars()).map(|i| self.diff(i).expect("index in range")).collect()
    }

    /// Exact division: `Some(q)` with `q * divisor == self`, or `None` when the
    /// divisor does not divide.
    pub fn div_exact(&self, divisor: &Polynomial) -> Result<Option<Polynomial>> {
        self.check_ring(divisor)?;
        let Some((lm, lc)) = divisor.terms.first() else {
            return Ok(if self.is_zero() { Some(self.clone()) } else { None });
        };
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((m, c)) = rem.terms.first() {
            let Some(q) = m.div(lm) else {
                return Ok(None);
            };
            let qc = c / lc;
            rem = rem.merge(&divisor.mul_term(&q, &qc), true);
            quot.push((q, qc));
        }
        Ok(Some(Polynomial::from_sorted(&self.ring, quot)))
    }

    /// Embeds into a ring with extra trailing variables.
    pub fn lift(&self, target: &Arc<Ring>) -> Polynomial {
        let extra = target.nvars() - self.nvars();
        assert!(target.vars()[..self.nvars()] == self.ring.vars()[..]);
        Polynomial::from_terms(
            target,
            self.terms.iter().map(|(m, c)| (m.extended(extra), c.clone())),
        )
    }

    /// Drops terms of total degree `>= d`.
    pub fn truncate_below(&self, d: u32) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| m.degree() < d).cloned().collect(),
        }
    }

    /// Scales so that the coefficient of the leading term (in the storage
    /// order) is 1.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Applies the derivation `sum a_i d_i` to `self`.
    pub fn apply_derivation(&self, coeffs: &[Polynomial]) -> Result<Polynomial> {
        if coeffs.len() != self.nvars() {
            return Err(Error::Shape(format!(
                "derivation has {} coefficients in a ring with {} variables",
                coeffs.len(),
                self.nvars()
            )));
        }
        let mut acc = Polynomial::zero(&self.ring);
        for (i, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = acc.try_add(&a.try_mul(&self.diff(i)?)?)?;
        }
        Ok(acc)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $inner:ident) => {
        impl<'a> $tr<&'a Polynomial> for &'a Polynomial {
            type Output = Polynomial;
            /// Panics if the operands live in different rings; use the `try_`
            /// variant for a fallible version.
            fn $method(self, rhs: &'a Polynomial) -> Polynomial {
                self.$inner(rhs).expect("ring mismatch")
            }
        }
        impl $tr<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$inner(&rhs).expect("ring mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

pub(crate) fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Terms in decreasing degrevlex order, explicit `*` and `^`, rationals as
/// `a/b`. The output re-parses to an equal polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(fmt_scalar(&abs));
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars[i].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars[i], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Arc<Ring> {
        Ring::new(["x", "y", "z"])
    }

    fn p(ring: &Arc<Ring>, s: &str) -> Polynomial {
        Polynomial::parse(ring, s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let r = Ring::new(["x", "y"]);
        assert_eq!(&p(&r, "x+y") + &p(&r, "x-y"), p(&r, "2*x"));
        assert_eq!(&p(&r, "x-y") * &p(&r, "x+y"), p(&r, "x^2-y^2"));
        let r = r3();
        let f = p(&r, "x*y*(x+y)*(x-y)*(y-x*z)");
        let expanded = &(&(&(&p(&r, "x*y") * &p(&r, "x+y")) * &p(&r, "x-y")) * &p(&r, "y-x*z"))
            * &p(&r, "x");
        assert_eq!(expanded, &f * &p(&r, "x"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let a = Polynomial::var(&Ring::new(["x"]), 0);
        let b = Polynomial::var(&Ring::new(["y"]), 0);
        assert_eq!(a.try_add(&b), Err(Error::RingMismatch));
        assert_eq!(a.try_mul(&b), Err(Error::RingMismatch));
    }

    #[test]
    fn derivatives() {
        let r = r3();
        let f = p(&r, "x^2 - y^2*z");
        assert_eq!(f.diff(0).unwrap(), p(&r, "2*x"));
        assert_eq!(f.diff(2).unwrap(), p(&r, "-y^2"));
        assert!(p(&r, "7/3").diff(0).unwrap().is_zero());
        assert_eq!(f.diff(3), Err(Error::VariableIndex { index: 3, nvars: 3 }));
        assert_eq!(f.jacobian(), vec![p(&r, "2*x"), p(&r, "-2*y*z"), p(&r, "-y^2")]);
        assert_eq!(
            p(&r, "x^2+y^2+z^2").jacobian(),
            vec![p(&r, "2*x"), p(&r, "2*y"), p(&r, "2*z")]
        );
    }

    #[test]
    fn exact_division() {
        let r = r3();
        let f = p(&r, "x^2 - y^2*z");
        let g = &f * &p(&r, "3 + x*y - z");
        assert_eq!(g.div_exact(&f).unwrap(), Some(p(&r, "3 + x*y - z")));
        assert_eq!(p(&r, "x^2 + y").div_exact(&p(&r, "x")).unwrap(), None);
    }

    #[test]
    fn display_round_trip() {
        let r = r3();
        for s in ["-1/2*x^3*y + 2*z - 7", "0", "x", "-x^2*y*z^4 + 3/5"] {
            let q = p(&r, s);
            assert_eq!(p(&r, &q.to_string()), q);
        }
        assert_eq!(p(&r, "1/2*x - y^2 + 3").to_string(), "-y^2 + 1/2*x + 3");
    }

    #[test]
    fn constant_term_and_degrees() {
        let r = r3();
        let q = p(&r, "3 + x^2*y - z");
        assert_eq!(q.constant_term(), int(3));
        assert_eq!(q.degree(), Some(3));
        assert_eq!(q.low_degree(), Some(0));
        assert!(!q.is_homogeneous());
        assert!(p(&r, "x*y + z^2").is_homogeneous());
    }
}
