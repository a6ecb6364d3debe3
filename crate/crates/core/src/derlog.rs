//! Logarithmic vector fields along a weighted homogeneous space `X ⊃ Σ`.
//!
//! For a hypersurface `h` with isolated singularity the module `D_X` is
//! generated by the Euler field `ξ_E = Σ w_j z_j ∂_j` and the Hamiltonian
//! fields `σ_ij = h_j ∂_i − h_i ∂_j` (`i < j`). If `ξ(h) = a·h` then
//! `ξ − (a/d)ξ_E` annihilates `h`, so its components form a syzygy of the
//! partials; the partials are a regular sequence (isolated singularity), so
//! every such syzygy is Koszul, i.e. a combination of the `σ_ij`.
//!
//! The trivial fields `h·∂_i` are left out. They are combinations of the
//! others: `d·h·∂_i = h_i·ξ_E + Σ_j w_j z_j σ_ij` with `d = deg_w h`.
//!
//! For complete intersections (`p ≥ 2`) generators are supplied by the user
//! and only verified here.

use crate::error::{Error, Result};
use crate::ideal_ops;
use crate::monomial::{Monomial, MonomialOrder, Weights};
use crate::mora::{self, Ideal, DEFAULT_BUDGET};
use crate::parse::Ring;
use crate::poly::{Derivation, Polynomial};
use crate::rational::Rational;
use crate::weights::infer_weights;

/// Ambient coordinates with weights, the equations of `X`, and the axis
/// `Σ = {z_1 = ... = z_n = 0}` with ideal `𝔤 = (z_1, ..., z_n)`.
#[derive(Clone, Debug)]
pub struct SpacePair {
    ring: Ring,
    weights: Weights,
    hs: Vec<Polynomial>,
    budget: u64,
}

impl SpacePair {
    /// Validates the pair. Weights are inferred when `weights` is `None`.
    ///
    /// For hypersurfaces the isolated-singularity certificate is checked
    /// here; for `p ≥ 2` it is the caller's responsibility.
    pub fn new(names: Vec<String>, weights: Option<Weights>, hs: Vec<Polynomial>) -> Result<Self> {
        SpacePair::with_budget(names, weights, hs, DEFAULT_BUDGET)
    }

    pub fn with_budget(
        names: Vec<String>,
        weights: Option<Weights>,
        hs: Vec<Polynomial>,
        budget: u64,
    ) -> Result<Self> {
        let n = names.len();
        if hs.is_empty() || hs.len() >= n {
            return Err(Error::InvalidSpacePair(format!(
                "need 1 ≤ p < {n} equations, got {}",
                hs.len()
            )));
        }
        for (i, h) in hs.iter().enumerate() {
            if h.nvars() != n {
                return Err(Error::RingMismatch(n, h.nvars()));
            }
            if h.is_zero() {
                return Err(Error::InvalidSpacePair(format!("equation {i} is zero")));
            }
        }
        let weights = match weights {
            Some(w) => w,
            None => infer_weights(&hs)?,
        };
        if weights.len() != n {
            return Err(Error::InvalidSpacePair(format!(
                "{} weights for {n} variables",
                weights.len()
            )));
        }
        for (i, h) in hs.iter().enumerate() {
            if !h.is_weighted_homogeneous(&weights) {
                return Err(Error::NotWeightedHomogeneous(i));
            }
            if !h.restrict_to_axis().is_zero() {
                return Err(Error::InvalidSpacePair(format!(
                    "equation {i} does not vanish on the axis"
                )));
            }
        }
        let ring = Ring::with_order(names, MonomialOrder::local(weights.clone()))?;
        let pair = SpacePair {
            ring,
            weights,
            hs,
            budget,
        };
        if pair.p() == 1 && !pair.hypersurface_is_isolated()? {
            return Err(Error::NotIsolated);
        }
        Ok(pair)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        self.ring.order()
    }

    pub fn equations(&self) -> &[Polynomial] {
        &self.hs
    }

    pub fn p(&self) -> usize {
        self.hs.len()
    }

    pub fn dim_x(&self) -> usize {
        self.nvars() - self.p()
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn set_budget(&mut self, budget: u64) {
        self.budget = budget;
    }

    pub fn ideal(&self, gens: impl IntoIterator<Item = Polynomial>) -> Ideal {
        Ideal::new(gens, self.order().clone()).with_budget(self.budget)
    }

    /// `𝔥`.
    pub fn h_ideal(&self) -> Ideal {
        self.ideal(self.hs.iter().cloned())
    }

    /// `𝔤 = (z_1, ..., z_n)`.
    pub fn sigma(&self) -> Ideal {
        Ideal::coordinate(1..self.nvars(), self.order().clone()).with_budget(self.budget)
    }

    /// `f ∈ 𝔤`; `𝔤` is a monomial ideal, so this is a termwise test.
    pub fn in_sigma(&self, f: &Polynomial) -> bool {
        f.restrict_to_axis().is_zero()
    }

    /// `f ∈ 𝔤²`, termwise.
    pub fn in_sigma_squared(&self, f: &Polynomial) -> bool {
        f.terms()
            .all(|(m, _)| m.exponents()[1..].iter().sum::<u32>() >= 2)
    }

    fn hypersurface_is_isolated(&self) -> Result<bool> {
        let h = &self.hs[0];
        let mut gens = vec![h.clone()];
        gens.extend((0..self.nvars()).map(|j| h.derivative(j)));
        Ok(mora::vdim(&self.ideal(gens))?.is_finite())
    }

    pub fn euler(&self) -> Derivation {
        Derivation::euler(&self.weights)
    }
}

/// Generators of `D_X`: the Euler field first, then the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerlogBasis {
    pub euler: Derivation,
    pub others: Vec<Derivation>,
}

impl DerlogBasis {
    pub fn len(&self) -> usize {
        1 + self.others.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn all(&self) -> impl Iterator<Item = &Derivation> {
        std::iter::once(&self.euler).chain(self.others.iter())
    }
}

/// `D_X = O·ξ_E + D¹`: every member of `d1` has its `∂/∂x` coefficient in `𝔤`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitDerlog {
    pub d0: Derivation,
    pub d1: Vec<Derivation>,
}

/// Hamiltonian field `∂_j h ∂_i − ∂_i h ∂_j`.
pub fn hamiltonian(h: &Polynomial, i: usize, j: usize) -> Derivation {
    let n = h.nvars();
    let mut comps = vec![Polynomial::zero(n); n];
    comps[i] = h.derivative(j);
    comps[j] = -h.derivative(i);
    Derivation::new(comps).expect("component count")
}

fn check_tangency(x: &SpacePair, gens: &[&Derivation]) -> Result<()> {
    let hi = x.h_ideal();
    for (k, xi) in gens.iter().enumerate() {
        if xi.nvars() != x.nvars() {
            return Err(Error::RingMismatch(x.nvars(), xi.nvars()));
        }
        for (e, h) in x.equations().iter().enumerate() {
            if !mora::is_member(&xi.apply(h), &hi)? {
                return Err(Error::TangencyFailure {
                    derivation: k,
                    equation: e,
                });
            }
        }
    }
    Ok(())
}

/// `ξ_E` and all `σ_ij` for a hypersurface.
pub fn build_derlog_hypersurface(x: &SpacePair) -> Result<DerlogBasis> {
    if x.p() != 1 {
        return Err(Error::PreconditionViolation(
            "generators are only constructed for hypersurfaces; supply them for p ≥ 2".into(),
        ));
    }
    let h = &x.equations()[0];
    if !h.is_weighted_homogeneous(x.weights()) {
        return Err(Error::NotWeightedHomogeneous(0));
    }
    if !x.hypersurface_is_isolated()? {
        return Err(Error::NotIsolated);
    }
    let n = x.nvars();
    let mut others = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            others.push(hamiltonian(h, i, j));
        }
    }
    let basis = DerlogBasis {
        euler: x.euler(),
        others,
    };
    let refs: Vec<&Derivation> = basis.all().collect();
    check_tangency(x, &refs)?;
    Ok(basis)
}

/// Verifies user supplied generators; the first one must be `ξ_E`.
pub fn load_derlog(x: &SpacePair, gens: Vec<Derivation>) -> Result<DerlogBasis> {
    let mut it = gens.into_iter();
    let euler = it.next().ok_or(Error::MissingEuler)?;
    if euler != x.euler() {
        return Err(Error::MissingEuler);
    }
    let basis = DerlogBasis {
        euler,
        others: it.collect(),
    };
    let refs: Vec<&Derivation> = basis.all().collect();
    check_tangency(x, &refs)?;
    Ok(basis)
}

/// Replaces each generator whose `∂/∂x` coefficient is not in `𝔤` by
/// `ξ − (1/w_0)(c(x)/x)·ξ_E`, where `c` is that coefficient on the axis.
pub fn split_d1(basis: &DerlogBasis, x: &SpacePair) -> Result<SplitDerlog> {
    let n = x.nvars();
    let w0 = Rational::from(x.weights().get(0) as i64);
    let sigma = x.sigma();
    let mut d1 = Vec::with_capacity(basis.others.len());
    for (k, xi) in basis.others.iter().enumerate() {
        let c = xi.component(0).restrict_to_axis();
        let modified = if c.is_zero() {
            xi.clone()
        } else {
            if !c.constant_term().is_zero() {
                // report in the numbering of the full basis, Euler field = 0
                return Err(Error::AxisRestrictionNonvanishing(k + 1));
            }
            let quotient = c
                .div_monomial(&Monomial::var_power(n, 0, 1))
                .expect("axis restriction without constant term")
                .scale(&w0.recip());
            xi.sub_scaled(&quotient, &basis.euler)
        };
        if !mora::is_member(modified.component(0), &sigma)? {
            return Err(Error::PreconditionViolation(format!(
                "split of derivation {} left the x-coefficient outside 𝔤",
                k + 1
            )));
        }
        d1.push(modified);
    }
    Ok(SplitDerlog {
        d0: basis.euler.clone(),
        d1,
    })
}

/// `J⁰ = (ξ_E(f))`, `J¹ = (ξ'(f) : ξ' ∈ D¹)` and `J_X(f) = J⁰ + J¹`.
#[derive(Clone, Debug)]
pub struct JacobianIdeals {
    pub j0: Ideal,
    pub j1: Ideal,
    pub jx: Ideal,
}

pub fn jacobian_ideal(split: &SplitDerlog, x: &SpacePair, f: &Polynomial) -> Result<JacobianIdeals> {
    let j0 = x.ideal([split.d0.apply(f)]);
    let j1 = x.ideal(split.d1.iter().map(|xi| xi.apply(f)));
    let jx = ideal_ops::sum(&j0, &j1)?;
    Ok(JacobianIdeals { j0, j1, jx })
}

/// `(ξ(f) : ξ ∈ basis)`, without the split.
pub fn jacobian_ideal_unsplit(basis: &DerlogBasis, x: &SpacePair, f: &Polynomial) -> Ideal {
    x.ideal(basis.all().map(|xi| xi.apply(f)))
}
