//! Sparse multivariate polynomials over ℚ and polynomial vector fields.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::monomial::{weighted_degree, Monomial, MonomialOrder, Weights};
use crate::rational::Rational;

/// Finite map monomial → nonzero coefficient in a ring with `nvars` variables.
///
/// Zero coefficients are never stored, so structural equality is polynomial
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Polynomial::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Polynomial::constant(nvars, Rational::one())
    }

    /// The coordinate function `z_var`.
    pub fn var(nvars: usize, var: usize) -> Self {
        Polynomial::term(Monomial::var_power(nvars, var, 1), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let mut p = Polynomial::zero(m.nvars());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Sums the given terms, merging repeated monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut p = Polynomial::zero(nvars);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
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

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> Rational {
        self.coefficient(&Monomial::one(self.nvars))
    }

    pub fn add_term(&mut self, m: Monomial, c: &Rational) {
        debug_assert_eq!(m.nvars(), self.nvars);
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(a, b)| (a.mul(m), b * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(self.nvars);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Maximal term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Result<(&Monomial, &Rational)> {
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(a.0, b.0))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn leading_monomial(&self, ord: &MonomialOrder) -> Option<&Monomial> {
        self.leading_term(ord).ok().map(|(m, _)| m)
    }

    /// Terms sorted decreasingly under `ord`.
    pub fn sorted_terms(&self, ord: &MonomialOrder) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|a, b| ord.cmp(b.0, a.0));
        t
    }

    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Lowest total degree of a term (the order of vanishing at 0).
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// The common weighted degree of all terms, if there is one.
    pub fn homogeneous_degree(&self, w: &Weights) -> Option<u64> {
        let mut degs = self.terms.keys().map(|m| weighted_degree(m, w));
        let first = degs.next()?;
        degs.all(|d| d == first).then_some(first)
    }

    pub fn is_weighted_homogeneous(&self, w: &Weights) -> bool {
        self.is_zero() || self.homogeneous_degree(w).is_some()
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), &(c * Rational::from(e as i64)));
        }
        out
    }

    /// Sets every variable for which `kill(var)` holds to zero.
    pub fn set_to_zero(&self, kill: impl Fn(usize) -> bool) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| (0..self.nvars).all(|i| !kill(i) || m.exponent(i) == 0))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Restriction to the `z_0`-axis: all other variables set to zero.
    pub fn restrict_to_axis(&self) -> Polynomial {
        self.set_to_zero(|i| i != 0)
    }

    /// Exact division by a monomial; `None` if some term is not divisible.
    pub fn div_monomial(&self, m: &Monomial) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (a, c) in &self.terms {
            terms.insert(m.quotient_of(a)?, c.clone());
        }
        Some(Polynomial {
            nvars: self.nvars,
            terms,
        })
    }

    /// Drops all terms of total degree `>= n`.
    pub fn truncate_below(&self, n: u64) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() < n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The same polynomial in a ring with `extra` more variables.
    pub fn extended(&self, extra: usize) -> Polynomial {
        Polynomial {
            nvars: self.nvars + extra,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.extended(extra), c.clone()))
                .collect(),
        }
    }

    /// Projects to the first `nvars` variables; `None` if a dropped variable
    /// occurs.
    pub fn projected(&self, nvars: usize) -> Option<Polynomial> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.exponents()[nvars..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.insert(m.truncated(nvars), c.clone());
        }
        Some(Polynomial { nvars, terms })
    }

    pub fn evaluate_at_origin(&self) -> Rational {
        self.constant_term()
    }
}

impl std::fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let names = crate::parse::default_names(self.nvars);
        let ord = MonomialOrder::local_degree(self.nvars);
        f.write_str(&crate::parse::format_polynomial(self, &names, &ord))
    }
}

fn check_same_ring(a: &Polynomial, b: &Polynomial) {
    assert_eq!(a.nvars, b.nvars, "polynomials from different rings");
}

impl Add<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        check_same_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c);
        }
        out
    }
}

impl Sub<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        check_same_ring(self, rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), &-c);
        }
        out
    }
}

impl Mul<&Polynomial> for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        check_same_ring(self, rhs);
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.mul(b), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Rational::one())
    }
}

macro_rules! owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                (&self).$method(rhs)
            }
        }
        impl $trait<Polynomial> for &Polynomial {
            type Output = Polynomial;
            fn $method(self, rhs: Polynomial) -> Polynomial {
                self.$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Maximal term of `p` under `ord`; errors on the zero polynomial.
pub fn leading_term(p: &Polynomial, ord: &MonomialOrder) -> Result<(Monomial, Rational)> {
    p.leading_term(ord).map(|(m, c)| (m.clone(), c.clone()))
}

/// A polynomial vector field `Σ components[j]·∂/∂z_j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Derivation {
    components: Vec<Polynomial>,
}

impl Derivation {
    pub fn new(components: Vec<Polynomial>) -> Result<Self> {
        let n = components.len();
        if let Some(bad) = components.iter().find(|c| c.nvars() != n) {
            return Err(Error::RingMismatch(n, bad.nvars()));
        }
        Ok(Derivation { components })
    }

    /// `Σ w_j z_j ∂/∂z_j`.
    pub fn euler(w: &Weights) -> Self {
        let n = w.len();
        Derivation {
            components: (0..n)
                .map(|j| Polynomial::var(n, j).scale(&Rational::from(w.get(j) as i64)))
                .collect(),
        }
    }

    /// `∂/∂z_var`.
    pub fn partial(nvars: usize, var: usize) -> Self {
        Derivation {
            components: (0..nvars)
                .map(|j| {
                    if j == var {
                        Polynomial::one(nvars)
                    } else {
                        Polynomial::zero(nvars)
                    }
                })
                .collect(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.components
    }

    pub fn component(&self, j: usize) -> &Polynomial {
        &self.components[j]
    }

    pub fn apply(&self, f: &Polynomial) -> Polynomial {
        apply_derivation(self, f)
    }

    /// `self − c·other`, componentwise.
    pub fn sub_scaled(&self, c: &Polynomial, other: &Derivation) -> Derivation {
        Derivation {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - &(c * b))
                .collect(),
        }
    }

    pub fn scaled(&self, c: &Polynomial) -> Derivation {
        Derivation {
            components: self.components.iter().map(|a| c * a).collect(),
        }
    }
}

/// `ξ(f) = Σ_j ξ_j ∂f/∂z_j`.
pub fn apply_derivation(xi: &Derivation, f: &Polynomial) -> Polynomial {
    assert_eq!(xi.nvars(), f.nvars(), "derivation and polynomial from different rings");
    let mut out = Polynomial::zero(f.nvars());
    for (j, c) in xi.components.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let d = f.derivative(j);
        if !d.is_zero() {
            out = &out + &(c * &d);
        }
    }
    out
}
