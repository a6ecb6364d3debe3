//! Ideal arithmetic on top of the standard basis engine.

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::mora::{self, Cut, Dim, Ideal};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Default last `N` tried by [`relative_dim_g`].
pub const DEFAULT_N_MAX: u32 = 64;

fn same_ring(i: &Ideal, j: &Ideal) -> Result<()> {
    if i.nvars() != j.nvars() {
        return Err(Error::RingMismatch(i.nvars(), j.nvars()));
    }
    if i.order() != j.order() {
        return Err(Error::PreconditionViolation(
            "ideals carry different monomial orders".into(),
        ));
    }
    Ok(())
}

pub fn sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    Ok(Ideal::new(
        i.generators().iter().chain(j.generators()).cloned(),
        i.order().clone(),
    )
    .with_budget(i.budget().max(j.budget())))
}

pub fn product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    let gens = i
        .generators()
        .iter()
        .flat_map(|a| j.generators().iter().map(move |b| a * b));
    Ok(Ideal::new(gens, i.order().clone()).with_budget(i.budget().max(j.budget())))
}

/// `I ∩ J` by elimination of `t` from `t·I + (1 − t)·J`.
pub fn intersect(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    if !i.order().is_local() {
        return Err(Error::PreconditionViolation(
            "intersection needs a local order".into(),
        ));
    }
    let n = i.nvars();
    if i.is_zero() || j.is_zero() {
        return Ok(Ideal::zero(i.order().clone()));
    }
    // the factor carrying t should be the one with a known cut, a plain
    // corner if possible
    let rank = |c: Option<&Cut>| c.map_or(0, |c| if c.guards().is_empty() { 2 } else { 1 });
    let (i, j) = if rank(j.std_basis()?.cut()) > rank(i.std_basis()?.cut()) {
        (j, i)
    } else {
        (i, j)
    };
    let t = Polynomial::var(n + 1, n);
    let one_minus_t = &Polynomial::one(n + 1) - &t;
    let gens: Vec<Polynomial> = i
        .generators()
        .iter()
        .map(|g| &t * &g.extended(1))
        .chain(j.generators().iter().map(|g| &one_minus_t * &g.extended(1)))
        .collect();
    let ord = i.order().eliminating_new_variable();
    let budget = i.budget().max(j.budget());
    let cut = i.std_basis()?.cut().map(|c| elimination_cut(i, j, c));
    let basis = mora::compute_std_basis_with_cut(&gens, &ord, budget, cut)?;
    let kept: Vec<Polynomial> = basis
        .elements()
        .iter()
        .filter_map(|g| g.projected(n))
        .collect();
    Ok(Ideal::new(kept, i.order().clone()).with_budget(budget))
}

/// If `x^a` lies in the cut of `I`, then `t·x^a` lies in
/// `t·I + (1 − t)·J`, and so does `x^a` itself when also a multiple of a
/// monomial generator of `J`.
fn elimination_cut(i: &Ideal, j: &Ideal, cut: &Cut) -> Cut {
    let n = i.nvars();
    let mut weights: Vec<u64> = i.order().weights().as_slice().iter().map(|&w| w as u64).collect();
    weights.push(0);
    let t = Monomial::var_power(n + 1, n, 1);
    let inner: Vec<Monomial> = cut.guards().iter().map(|g| g.extended(1)).collect();
    let mut guards = if inner.is_empty() {
        vec![t.clone()]
    } else {
        inner.iter().map(|g| g.mul(&t)).collect()
    };
    for g in j.generators() {
        if g.len() != 1 {
            continue;
        }
        let m = g.terms().next().expect("one term").0.extended(1);
        if inner.is_empty() || inner.iter().any(|v| v.divides(&m)) {
            guards.push(m);
        } else {
            guards.extend(inner.iter().map(|v| v.mul(&m)));
        }
    }
    let d = cut.degree();
    let cut = Cut::guarded(weights, d, guards);
    // what lies past both cuts lies in I ∩ J; if the cut of J also confines
    // I, all terms are bounded, t-degrees by those of the leads
    let Some(other) = j.std_basis().ok().and_then(|b| b.cut().cloned()) else {
        return cut;
    };
    let outer: Vec<Monomial> = other.guards().iter().map(|g| g.extended(1)).collect();
    let floor = d.max(other.degree());
    if inner.is_empty() || inner == outer {
        cut.with_floor(floor, outer).bounding()
    } else if outer.is_empty() {
        cut.with_floor(floor, inner)
    } else {
        let both = inner.iter().flat_map(|a| outer.iter().map(move |b| a.lcm(b))).collect();
        cut.with_floor(floor, mora::minimalize(both))
    }
}

/// `I : (f)`, dividing the generators of `I ∩ (f)` by `f` in the local ring.
fn colon_poly(i: &Ideal, f: &Polynomial) -> Result<Ideal> {
    let principal = Ideal::new([f.clone()], i.order().clone()).with_budget(i.budget());
    let both = intersect(i, &principal)?;
    let divisor = [f.clone()];
    let mut quotients = Vec::new();
    for g in both.generators() {
        // u·g = a·f with u a unit, so a generates the same class as g/f
        let (rem, cert) = mora::mora_nf_with_certificate_budget(g, &divisor, i.order(), i.budget())?;
        if !rem.is_zero() {
            return Err(Error::ExactDivisionFailure(format!(
                "{g:?} is not a multiple of {f:?}"
            )));
        }
        quotients.push(cert.coefficients.into_iter().next().expect("one divisor"));
    }
    Ok(Ideal::new(quotients, i.order().clone()).with_budget(i.budget()))
}

/// `I : J = {q : q·J ⊆ I}`.
pub fn colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    same_ring(i, j)?;
    if j.is_zero() {
        return Err(Error::PreconditionViolation("colon by the zero ideal".into()));
    }
    let mut acc: Option<Ideal> = None;
    for f in j.generators() {
        let part = colon_poly(i, f)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part)?,
        });
    }
    Ok(acc.expect("nonempty"))
}

/// Counts standard monomials of an ideal by degree, for truncations by
/// powers of the maximal ideal.
///
/// Uses a standard basis for the local degree order: for a degree-compatible
/// local order, the leading ideal of `I + m^N` is `L(I) + m^N`, so
/// `dim O/(I + m^N)` is the number of standard monomials of `I` of degree
/// below `N`. The same holds with `I + m^M` in place of `I` for `N ≤ M`,
/// which is how [`Truncation::below`] avoids computing a basis of `I` itself.
#[derive(Clone, Debug)]
pub struct Truncation {
    nvars: usize,
    leading: Vec<Monomial>,
    /// Degrees below this are exact; `None` for a basis of `I` itself.
    valid_below: Option<u32>,
    per_degree: Vec<u64>,
}

impl Truncation {
    pub fn new(i: &Ideal) -> Result<Self> {
        Truncation::build(i, None)
    }

    /// Enough of `L(I)` for `dim_below(n)` with `n ≤ m`, from a basis of
    /// `I + m^m`. Always cheap: the truncation bounds every term.
    pub fn below(i: &Ideal, m: u32) -> Result<Self> {
        Truncation::build(i, Some(m))
    }

    fn build(i: &Ideal, valid_below: Option<u32>) -> Result<Self> {
        let n = i.nvars();
        let leading = if i.is_zero() && valid_below.is_none() {
            Vec::new()
        } else {
            let ord = MonomialOrder::local_degree(n);
            let basis = match valid_below {
                None => i.with_order(ord).std_basis()?.clone(),
                Some(m) => {
                    let cut = Cut::corner(ord.weights(), m as u64);
                    mora::compute_std_basis_with_cut(i.generators(), &ord, i.budget(), Some(cut))?
                }
            };
            mora::minimalize(basis.leading_monomials())
        };
        Ok(Truncation {
            nvars: n,
            leading,
            valid_below,
            per_degree: Vec::new(),
        })
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    /// `dim O/(I + m^N)`.
    ///
    /// # Panics
    /// If `n` is past the truncation this was built with.
    pub fn dim_below(&mut self, n: u32) -> u64 {
        if let Some(m) = self.valid_below {
            assert!(n <= m, "truncation built below {m}, asked for {n}");
        }
        while self.per_degree.len() < n as usize {
            let d = self.per_degree.len() as u32;
            let count = monomials_of_degree(self.nvars, d)
                .filter(|m| !self.leading.iter().any(|l| l.divides(m)))
                .count() as u64;
            self.per_degree.push(count);
        }
        self.per_degree[..n as usize].iter().sum()
    }
}

/// All monomials of total degree exactly `d`.
pub fn monomials_of_degree(nvars: usize, d: u32) -> impl Iterator<Item = Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    fill(&mut out, &mut exps, 0, d);
    out.into_iter()
}

fn fill(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, pos: usize, left: u32) {
    if pos + 1 == exps.len() {
        exps[pos] = left;
        out.push(Monomial::new(exps.iter().copied()));
        return;
    }
    for e in (0..=left).rev() {
        exps[pos] = e;
        fill(out, exps, pos + 1, left - e);
    }
    exps[pos] = 0;
}

/// `dim O/(I + m^N)`.
pub fn truncated_dim(i: &Ideal, n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::PreconditionViolation("N must be positive".into()));
    }
    Ok(Truncation::below(i, n)?.dim_below(n))
}

/// Indices of the variables generating `g`, if it is a coordinate ideal.
pub fn coordinate_variables(g: &Ideal) -> Option<Vec<usize>> {
    let mut vars = Vec::new();
    for gen in g.generators() {
        let mut terms = gen.terms();
        let (m, _) = terms.next()?;
        if terms.next().is_some() || m.degree() != 1 {
            return None;
        }
        vars.push(m.pure_power_var()?);
    }
    vars.sort_unstable();
    vars.dedup();
    Some(vars)
}

/// `dim 𝔤/I` for a coordinate ideal `𝔤 ⊇ I`.
///
/// Evaluates `truncated_dim(I, N) − truncated_dim(𝔤, N)` on `N = 6, 8, ...`
/// and stops when two consecutive values agree. The difference equals
/// `dim 𝔤/(I + 𝔤·m^{N−1})`, which is non-decreasing in `N`; once two values
/// agree Nakayama gives `𝔤·m^{N−1} ⊆ I`, so the value is final. The values
/// are read off in batches from truncations at `16, 32, 64, ...`.
pub fn relative_dim_g(i: &Ideal, g: &Ideal, n_max: u32) -> Result<u64> {
    same_ring(i, g)?;
    coordinate_variables(g).ok_or_else(|| {
        Error::PreconditionViolation("𝔤 must be generated by coordinate variables".into())
    })?;
    for gen in i.generators() {
        if !mora::is_member(gen, g)? {
            return Err(Error::PreconditionViolation("I is not contained in 𝔤".into()));
        }
    }
    let mut tg = Truncation::new(g)?;
    let mut prev: Option<u64> = None;
    let mut n = 6;
    let mut batch = 16.min(n_max);
    while n <= n_max {
        let mut ti = Truncation::below(i, batch)?;
        while n <= batch {
            let d = ti.dim_below(n) - tg.dim_below(n);
            if prev == Some(d) {
                return Ok(d);
            }
            prev = Some(d);
            n += 2;
        }
        batch = (2 * batch).min(n_max.max(n));
    }
    Err(Error::NoStabilization { n_max })
}

/// `vdim` of `I` under its local order.
pub fn vdim(i: &Ideal) -> Result<Dim> {
    mora::vdim(i)
}

/// The ideal `m^n` of all monomials of degree `n`.
pub fn maximal_ideal_power(order: &MonomialOrder, n: u32) -> Ideal {
    let nv = order.nvars();
    Ideal::new(
        monomials_of_degree(nv, n).map(|m| Polynomial::term(m, Rational::one())),
        order.clone(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mora::{ideal_equal, is_member};
    use crate::parse::Ring;

    fn r() -> Ring {
        Ring::new(["x", "y", "z"]).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        let r = r();
        Ideal::new(
            gens.iter().map(|g| r.parse(g).unwrap()),
            MonomialOrder::local_degree(3),
        )
    }

    #[test]
    fn sums_and_products() {
        let s = sum(&ideal(&["y"]), &ideal(&["z"])).unwrap();
        assert!(ideal_equal(&s, &ideal(&["y", "z"])).unwrap());
        let p = product(&ideal(&["y"]), &ideal(&["y", "z"])).unwrap();
        assert_eq!(p.generators(), ideal(&["y^2", "y*z"]).generators());
    }

    #[test]
    fn intersections() {
        let a = intersect(&ideal(&["x"]), &ideal(&["y"])).unwrap();
        assert!(ideal_equal(&a, &ideal(&["x*y"])).unwrap());
        let b = intersect(&ideal(&["y", "z"]), &ideal(&["x"])).unwrap();
        assert!(ideal_equal(&b, &ideal(&["x*y", "x*z"])).unwrap());
        let c = intersect(&ideal(&["y"]), &ideal(&["y"])).unwrap();
        assert!(ideal_equal(&c, &ideal(&["y"])).unwrap());
        // units are invisible locally: (y(1+x)) ∩ (y + z) = (y(y+z))
        let d = intersect(&ideal(&["y + x*y"]), &ideal(&["y + z"])).unwrap();
        assert!(ideal_equal(&d, &ideal(&["y^2 + y*z"])).unwrap());
    }

    #[test]
    fn colons() {
        let a = colon(&ideal(&["x*y", "z"]), &ideal(&["y"])).unwrap();
        assert!(ideal_equal(&a, &ideal(&["x", "z"])).unwrap());
        let b = colon(&ideal(&["x^2"]), &ideal(&["x"])).unwrap();
        assert!(ideal_equal(&b, &ideal(&["x"])).unwrap());
        let c = colon(&ideal(&["y", "z^2"]), &ideal(&["z"])).unwrap();
        assert!(ideal_equal(&c, &ideal(&["y", "z"])).unwrap());
        // divisor with a unit factor
        let d = colon(&ideal(&["x*y", "z"]), &ideal(&["y - x*y"])).unwrap();
        assert!(ideal_equal(&d, &ideal(&["x", "z"])).unwrap());
        // two generators: (x y, x z) : (y, z) = (x)
        let e = colon(&ideal(&["x*y", "x*z"]), &ideal(&["y", "z"])).unwrap();
        assert!(ideal_equal(&e, &ideal(&["x"])).unwrap());
        assert!(colon(&ideal(&["x"]), &ideal(&[])).is_err());
    }

    #[test]
    fn colon_generators_are_sound() {
        let i = ideal(&["x*y + z^2", "y^2 - x^3", "y*z"]);
        let j = ideal(&["y + z", "x"]);
        let q = colon(&i, &j).unwrap();
        for a in q.generators() {
            for f in j.generators() {
                assert!(is_member(&(a * f), &i).unwrap());
            }
        }
    }

    #[test]
    fn truncated_dims() {
        assert_eq!(truncated_dim(&ideal(&["y", "z"]), 4).unwrap(), 4);
        assert_eq!(truncated_dim(&ideal(&["x^3", "y", "z"]), 10).unwrap(), 3);
        assert_eq!(truncated_dim(&ideal(&[]), 3).unwrap(), 10);
    }

    #[test]
    fn relative_dims() {
        let g = ideal(&["y", "z"]);
        let i = ideal(&["x^2*y", "x^2*z", "y^2", "y*z", "z^2"]);
        assert_eq!(relative_dim_g(&i, &g, DEFAULT_N_MAX).unwrap(), 4);
        assert_eq!(relative_dim_g(&g, &g, DEFAULT_N_MAX).unwrap(), 0);
        let not_inside = ideal(&["x"]);
        assert!(matches!(
            relative_dim_g(&not_inside, &g, DEFAULT_N_MAX),
            Err(Error::PreconditionViolation(_))
        ));
        let infinite = ideal(&["y^2", "z"]);
        assert_eq!(
            relative_dim_g(&infinite, &g, 20),
            Err(Error::NoStabilization { n_max: 20 })
        );
        assert!(matches!(
            relative_dim_g(&i, &ideal(&["y + x"]), DEFAULT_N_MAX),
            Err(Error::PreconditionViolation(_))
        ));
    }

    #[test]
    fn relative_difference_is_monotone() {
        let g = ideal(&["y", "z"]);
        let i = ideal(&["x^5*y", "x^3*z + y^2", "y*z", "z^2"]);
        let mut ti = Truncation::below(&i, 20).unwrap();
        let mut tg = Truncation::new(&g).unwrap();
        let diffs: Vec<u64> = (1..20).map(|n| ti.dim_below(n) - tg.dim_below(n)).collect();
        assert!(diffs.windows(2).all(|w| w[0] <= w[1]), "{diffs:?}");
        assert_eq!(*diffs.last().unwrap(), relative_dim_g(&i, &g, DEFAULT_N_MAX).unwrap());
    }
}
