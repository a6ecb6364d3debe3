//! Standard bases in localizations of polynomial rings.
//!
//! The reduction is Mora's weak normal form: among the reducers whose leading
//! monomial divides the current leading monomial, pick one of minimal écart;
//! if that écart exceeds the écart of the current remainder, the remainder
//! itself joins the reducer set before the step. This terminates for every
//! semigroup order, and the unit produced along the way always has leading
//! monomial `1`, because each later reduction by an earlier remainder
//! multiplies it by a monomial strictly smaller than `1`.
//!
//! Standard bases come from the usual pair loop on top of that reduction, with
//! the Gebauer–Möller update discarding pairs by the product and chain
//! criteria. Pairs are selected by sugar (the degree of the S-polynomial
//! after homogenization), then by the order (larger lcm first), then by
//! index, so results are deterministic.

use std::cmp::Ordering;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::monomial::{weighted_degree, Monomial, MonomialOrder, Weights};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Default cap on reduction steps per standard basis computation.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// Size of a leading coefficient, in bits, at which a reduction gives up.
/// Without a cut, Mora reduction of ideals that are neither zero dimensional
/// nor of finite colength in a coordinate ideal can grow coefficients
/// without bound long before the step budget runs out.
pub const MAX_COEFFICIENT_BITS: u64 = 1 << 16;

/// Polynomial with terms sorted decreasingly under a fixed order.
#[derive(Clone, Debug)]
pub(crate) struct Sorted {
    terms: Vec<(Monomial, Rational)>,
    ecart: u64,
}

impl Sorted {
    fn new(p: &Polynomial, ord: &MonomialOrder) -> Self {
        let terms = p
            .sorted_terms(ord)
            .into_iter()
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Sorted::from_vec(terms, ord)
    }

    fn from_vec(terms: Vec<(Monomial, Rational)>, ord: &MonomialOrder) -> Self {
        let ecart = ecart(&terms, ord);
        Sorted { terms, ecart }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &Rational {
        &self.terms[0].1
    }

    fn to_poly(&self, nvars: usize) -> Polynomial {
        Polynomial::from_terms(nvars, self.terms.iter().cloned())
    }

    fn make_monic(&mut self) {
        if self.lc().is_one() {
            return;
        }
        let inv = self.lc().recip();
        for (_, c) in self.terms.iter_mut() {
            *c *= &inv;
        }
    }

    /// Drops the terms lying in the cut.
    fn truncated(mut self, ord: &MonomialOrder, cut: Option<&Cut>) -> Sorted {
        if let Some(cut) = cut {
            self.terms.retain(|(m, _)| !cut.drops(m));
            self.ecart = ecart(&self.terms, ord);
        }
        self
    }

    /// `self − c·m·other`, the leading terms are assumed to cancel. Terms of
    /// `m·other` lying in the cut are skipped.
    fn sub_mul(
        &self,
        c: &Rational,
        m: &Monomial,
        other: &Sorted,
        ord: &MonomialOrder,
        cut: Option<&Cut>,
    ) -> Sorted {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(mm, cc)| (mm.mul(m), cc))
            .filter(|(mm, _)| cut.is_none_or(|k| !k.drops(mm)))
            .map(|(mm, cc)| (mm, cc * c))
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (mm, cc) = b.next().unwrap();
                    out.push((mm, -cc));
                }
                (Some(x), Some(y)) => match ord.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (mm, cc) = b.next().unwrap();
                        out.push((mm, -cc));
                    }
                    Ordering::Equal => {
                        let (mm, cc) = b.next().unwrap();
                        let (_, ca) = a.next().unwrap();
                        let s = ca - &cc;
                        if !s.is_zero() {
                            out.push((mm, s));
                        }
                    }
                },
            }
        }
        Sorted::from_vec(out, ord)
    }
}

fn ecart(terms: &[(Monomial, Rational)], ord: &MonomialOrder) -> u64 {
    let Some((lm, _)) = terms.first() else {
        return 0;
    };
    let w = ord.weights();
    let top = terms.iter().map(|(m, _)| weighted_degree(m, w)).max().unwrap_or(0);
    top - weighted_degree(lm, w)
}

/// Step counter shared by the reductions of one computation.
struct Budget {
    limit: u64,
    used: u64,
}

impl Budget {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            Err(Error::IterationBudgetExceeded { budget: self.limit })
        } else {
            Ok(())
        }
    }
}

/// Witness for `u·f = Σ coefficients[i]·G[i] + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub unit: Polynomial,
    pub coefficients: Vec<Polynomial>,
}

impl Certificate {
    /// Re-checks the identity by exact arithmetic.
    pub fn verify(
        &self,
        f: &Polynomial,
        gens: &[Polynomial],
        remainder: &Polynomial,
        ord: &MonomialOrder,
    ) -> bool {
        if self.coefficients.len() != gens.len() {
            return false;
        }
        let unit_ok = self
            .unit
            .leading_monomial(ord)
            .is_some_and(Monomial::is_one);
        let mut rhs = remainder.clone();
        for (a, g) in self.coefficients.iter().zip(gens) {
            rhs = &rhs + &(a * g);
        }
        unit_ok && &self.unit * f == rhs
    }
}

/// Representation `elem = unit·f + Σ coeffs[i]·G[i]` of a reducer.
#[derive(Clone)]
struct Rep {
    unit: Polynomial,
    coeffs: Vec<Polynomial>,
}

impl Rep {
    fn sub_mul(&self, c: &Rational, m: &Monomial, other: &Rep) -> Rep {
        Rep {
            unit: &self.unit - &other.unit.mul_term(m, c),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - &b.mul_term(m, c))
                .collect(),
        }
    }
}

/// Mora reduction of `f` by `basis`. With `rep`, `basis_reps` holds the
/// representation of each basis element and the result carries the one of
/// the remainder.
#[allow(clippy::too_many_arguments)]
fn reduce(
    f: Sorted,
    basis: &[Sorted],
    basis_reps: Option<&[Rep]>,
    f_rep: Option<Rep>,
    ord: &MonomialOrder,
    cut: Option<&Cut>,
    budget: &mut Budget,
) -> Result<(Sorted, Option<Rep>)> {
    let mut h = f;
    let mut h_rep = f_rep;
    let mut extra: Vec<Sorted> = Vec::new();
    let mut extra_reps: Vec<Rep> = Vec::new();
    while !h.is_zero() {
        let lm = h.lm().clone();
        let mut best: Option<(usize, bool, u64)> = None;
        for (i, g) in basis.iter().enumerate() {
            if g.lm().divides(&lm) && best.is_none_or(|(_, _, e)| g.ecart < e) {
                best = Some((i, false, g.ecart));
            }
        }
        for (i, g) in extra.iter().enumerate() {
            if g.lm().divides(&lm) && best.is_none_or(|(_, _, e)| g.ecart < e) {
                best = Some((i, true, g.ecart));
            }
        }
        let Some((idx, from_extra, e)) = best else {
            break;
        };
        budget.tick()?;
        // when the cut bounds every term, plain reduction terminates; keeping
        // h around only feeds coefficient growth
        if e > h.ecart && !cut.is_some_and(|c| c.bounded) {
            extra.push(h.clone());
            if let Some(r) = &h_rep {
                extra_reps.push(r.clone());
            }
        }
        let (g, g_rep) = if from_extra {
            (&extra[idx], h_rep.as_ref().map(|_| &extra_reps[idx]))
        } else {
            (&basis[idx], basis_reps.map(|r| &r[idx]))
        };
        let m = g.lm().quotient_of(&lm).expect("divisor");
        let c = h.lc() / g.lc();
        let next = h.sub_mul(&c, &m, g, ord, cut);
        h_rep = match (&h_rep, g_rep) {
            (Some(hr), Some(gr)) => Some(hr.sub_mul(&c, &m, gr)),
            _ => None,
        };
        h = next;
        if let Some((_, c)) = h.terms.first() {
            let bits = c.bits();
            if bits > MAX_COEFFICIENT_BITS {
                return Err(Error::CoefficientGrowth { bits });
            }
        }
    }
    Ok((h, h_rep))
}

/// Weak normal form of `f` with respect to `gens`.
pub fn mora_nf(f: &Polynomial, gens: &[Polynomial], ord: &MonomialOrder) -> Result<Polynomial> {
    let basis: Vec<Sorted> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| Sorted::new(g, ord))
        .collect();
    let mut budget = Budget {
        limit: DEFAULT_BUDGET,
        used: 0,
    };
    let (r, _) = reduce(Sorted::new(f, ord), &basis, None, None, ord, None, &mut budget)?;
    Ok(r.to_poly(f.nvars()))
}

/// Weak normal form together with a certificate `u·f = Σ a_i g_i + r`.
pub fn mora_nf_with_certificate(
    f: &Polynomial,
    gens: &[Polynomial],
    ord: &MonomialOrder,
) -> Result<(Polynomial, Certificate)> {
    mora_nf_with_certificate_budget(f, gens, ord, DEFAULT_BUDGET)
}

pub(crate) fn mora_nf_with_certificate_budget(
    f: &Polynomial,
    gens: &[Polynomial],
    ord: &MonomialOrder,
    limit: u64,
) -> Result<(Polynomial, Certificate)> {
    let n = f.nvars();
    let mut basis = Vec::new();
    let mut reps = Vec::new();
    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        basis.push(Sorted::new(g, ord));
        let mut coeffs = vec![Polynomial::zero(n); gens.len()];
        coeffs[i] = Polynomial::one(n);
        reps.push(Rep {
            unit: Polynomial::zero(n),
            coeffs,
        });
    }
    let f_rep = Rep {
        unit: Polynomial::one(n),
        coeffs: vec![Polynomial::zero(n); gens.len()],
    };
    let mut budget = Budget { limit, used: 0 };
    let (r, rep) = reduce(
        Sorted::new(f, ord),
        &basis,
        Some(&reps),
        Some(f_rep),
        ord,
        None,
        &mut budget,
    )?;
    let rep = rep.expect("tracked representation");
    // r = u·f + Σ c_i g_i  ⇒  u·f = Σ (−c_i) g_i + r
    let cert = Certificate {
        unit: rep.unit,
        coefficients: rep.coeffs.iter().map(|c| -c).collect(),
    };
    Ok((r.to_poly(n), cert))
}

/// A standard basis together with the order it was computed for.
#[derive(Clone, Debug)]
pub struct StdBasis {
    nvars: usize,
    order: MonomialOrder,
    sorted: Vec<Sorted>,
    elements: Vec<Polynomial>,
    cut: Option<Cut>,
}

impl StdBasis {
    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.sorted.iter().map(|s| s.lm().clone()).collect()
    }

    /// Minimal generators of the leading ideal.
    pub fn minimal_leading_monomials(&self) -> Vec<Monomial> {
        minimalize(self.leading_monomials())
    }

    /// For a local order: every monomial of weighted degree at least this
    /// lies in the ideal.
    pub fn corner(&self) -> Option<u64> {
        self.cut
            .as_ref()
            .filter(|c| c.guards.is_empty())
            .map(|c| c.degree)
    }

    pub(crate) fn cut(&self) -> Option<&Cut> {
        self.cut.as_ref()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        let mut budget = Budget {
            limit: DEFAULT_BUDGET,
            used: 0,
        };
        let cut = self.cut.as_ref();
        let start = Sorted::new(f, &self.order).truncated(&self.order, cut);
        let (r, _) = reduce(start, &self.sorted, None, None, &self.order, cut, &mut budget)?;
        Ok(r.to_poly(self.nvars))
    }

    /// All S-polynomials paired with their normal forms (for verification).
    pub fn s_polynomial_remainders(&self) -> Result<Vec<Polynomial>> {
        let mut out = Vec::new();
        for i in 0..self.sorted.len() {
            for j in i + 1..self.sorted.len() {
                let s = s_polynomial(&self.sorted[i], &self.sorted[j], &self.order, self.cut.as_ref());
                out.push(self.normal_form(&s.to_poly(self.nvars))?);
            }
        }
        Ok(out)
    }
}

/// Drops monomials divisible by another one in the list, and duplicates.
pub fn minimalize(mut monos: Vec<Monomial>) -> Vec<Monomial> {
    monos.sort();
    monos.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for (i, m) in monos.iter().enumerate() {
        let redundant = monos
            .iter()
            .enumerate()
            .any(|(j, d)| j != i && d.divides(m) && d != m);
        if !redundant {
            out.push(m.clone());
        }
    }
    out
}

fn s_polynomial(f: &Sorted, g: &Sorted, ord: &MonomialOrder, cut: Option<&Cut>) -> Sorted {
    let l = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&l).expect("lcm");
    let mg = g.lm().quotient_of(&l).expect("lcm");
    let scaled = Sorted::from_vec(
        f.terms
            .iter()
            .map(|(m, c)| (m.mul(&mf), c / f.lc()))
            .collect(),
        ord,
    )
    .truncated(ord, cut);
    scaled.sub_mul(&g.lc().recip(), &mg, g, ord, cut)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    /// Degree of the S-polynomial after homogenization.
    sugar: u64,
}

/// Computes a standard basis of the ideal generated by `gens` under `ord`.
pub fn compute_std_basis(gens: &[Polynomial], ord: &MonomialOrder, limit: u64) -> Result<StdBasis> {
    compute_std_basis_with_cut(gens, ord, limit, None)
}

/// Same, for an ideal known to contain the monomials of `cut`. For local
/// orders without a given cut, one is found along the way as soon as the
/// leading monomials contain a pure power of every variable.
pub(crate) fn compute_std_basis_with_cut(
    gens: &[Polynomial],
    ord: &MonomialOrder,
    limit: u64,
    cut: Option<Cut>,
) -> Result<StdBasis> {
    let nvars = ord.nvars();
    if let Some(bad) = gens.iter().find(|g| g.nvars() != nvars) {
        return Err(Error::RingMismatch(nvars, bad.nvars()));
    }
    let mut budget = Budget { limit, used: 0 };
    let mut basis: Vec<Sorted> = Vec::new();
    let mut active: Vec<bool> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let fixed = cut.is_some();
    let inside = inside_hyperplane_ideals(gens, nvars);
    let mut cut = match cut {
        None if ord.is_local() => early_cut(gens, ord, limit, &inside)?,
        given => given,
    };
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let mut s = Sorted::new(g, ord);
        s.make_monic();
        insert(&mut basis, &mut active, &mut pairs, s, ord);
    }
    if let Some(c) = &cut {
        restart_with_cut(&mut basis, &mut active, &mut pairs, ord, c);
    }
    loop {
        if !fixed {
            let lead: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
            if let Some(c) = find_cut(&lead, ord, &inside).filter(|c| improves(c, cut.as_ref())) {
                restart_with_cut(&mut basis, &mut active, &mut pairs, ord, &c);
                cut = Some(c);
            }
        }
        let Some(k) = select_pair(&pairs, ord) else {
            break;
        };
        let pair = pairs.swap_remove(k);
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], ord, cut.as_ref());
        if s.is_zero() {
            continue;
        }
        let (mut h, _) = reduce(s, &basis, None, None, ord, cut.as_ref(), &mut budget)?;
        if !h.is_zero() {
            h.make_monic();
            insert(&mut basis, &mut active, &mut pairs, h, ord);
        }
    }
    if !fixed && cut.as_ref().is_some_and(|c| c.guards.is_empty()) {
        // now L(I) is known: everything above the top standard monomial is in it
        let lead: Vec<Monomial> = basis.iter().map(|g| g.lm().clone()).collect();
        if let Some(std) = standard_monomials(&lead, nvars) {
            let w = ord.weights();
            let top = std.iter().map(|m| weighted_degree(m, w) + 1).max().unwrap_or(0);
            cut = Some(Cut::corner(w, top));
        }
    }
    let elements = basis.iter().map(|s| s.to_poly(nvars)).collect();
    Ok(StdBasis {
        nvars,
        order: ord.clone(),
        sorted: basis,
        elements,
        cut,
    })
}

/// `1 + Σ (a_i − 1)·w_i` where `x_i^{a_i}` are the least pure powers among
/// `monos`; every monomial of at least that weighted degree is divisible by
/// one of them.
fn pure_power_bound(monos: impl Iterator<Item = Monomial>, w: &Weights) -> Option<u64> {
    let n = w.len();
    let mut power = vec![u32::MAX; n];
    for m in monos {
        if m.is_one() {
            return Some(0);
        }
        if let Some(v) = m.pure_power_var() {
            power[v] = power[v].min(m.exponent(v));
        }
    }
    if power.contains(&u32::MAX) {
        return None;
    }
    Some(1 + (0..n).map(|i| (power[i] as u64 - 1) * w.get(i) as u64).sum::<u64>())
}

/// A cut implied by the current leading monomials, for local orders.
///
/// Plain: every monomial of weighted degree `≥ D` is a leading monomial of
/// an ideal element, so by Nakayama all of them lie in the ideal. Guarded:
/// when the ideal lies in the ideal `V` of all variables but `u` and each
/// `L : v` (`v ∈ V`) has pure powers, the same argument applies to the
/// monomials of `V` of weighted degree `≥ E`, because ideal elements have
/// all their terms in `V`.
fn find_cut(leading: &[Monomial], ord: &MonomialOrder, inside: &[bool]) -> Option<Cut> {
    if !ord.is_local() {
        return None;
    }
    let w = ord.weights();
    let lms = || leading.iter().cloned();
    if let Some(d) = pure_power_bound(lms(), w) {
        return Some(Cut::corner(w, d));
    }
    let n = ord.nvars();
    let u = (0..n).find(|&u| inside[u])?;
    let mut e = 0u64;
    for v in (0..n).filter(|&v| v != u) {
        let yv = Monomial::var_power(n, v, 1);
        let quotients = lms().map(|m| {
            if m.exponent(v) > 0 {
                yv.quotient_of(&m).expect("divides")
            } else {
                m
            }
        });
        e = e.max(w.get(v) as u64 + pure_power_bound(quotients, w)?);
    }
    let guards = (0..n)
        .filter(|&v| v != u)
        .map(|v| Monomial::var_power(n, v, 1))
        .collect();
    let weights = w.as_slice().iter().map(|&x| x as u64).collect();
    // ideal elements have all their terms in V, so these are bounded too
    Some(Cut::guarded(weights, e, guards).bounding())
}

/// A cut read off the leading monomials of `I + W_N` below degree `N`,
/// which are those of `I`. The truncated bases are cheap, while running
/// without any cut until one shows up can cost coefficient growth.
fn early_cut(gens: &[Polynomial], ord: &MonomialOrder, limit: u64, inside: &[bool]) -> Result<Option<Cut>> {
    let w = ord.weights();
    let base: u64 = w.as_slice().iter().map(|&x| x as u64).sum::<u64>() * 2;
    for n in [base, 2 * base, 4 * base] {
        let sb = compute_std_basis_with_cut(gens, ord, limit, Some(Cut::corner(w, n)))?;
        let lead: Vec<Monomial> = sb
            .minimal_leading_monomials()
            .into_iter()
            .filter(|m| weighted_degree(m, w) < n)
            .collect();
        if let Some(c) = find_cut(&lead, ord, inside) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// `inside[u]` says that no generator has a term free of all variables
/// other than `u`, i.e. the ideal lies in the ideal of those variables.
fn inside_hyperplane_ideals(gens: &[Polynomial], nvars: usize) -> Vec<bool> {
    (0..nvars)
        .map(|u| {
            gens.iter().all(|g| {
                g.terms()
                    .all(|(m, _)| (0..nvars).any(|v| v != u && m.exponent(v) > 0))
            })
        })
        .collect()
}

/// Whether `new` is worth a restart over `old`.
fn improves(new: &Cut, old: Option<&Cut>) -> bool {
    match old {
        None => true,
        Some(old) if old.guards.is_empty() != new.guards.is_empty() => new.guards.is_empty(),
        Some(old) => 4 * new.degree <= 3 * old.degree,
    }
}

/// A monomial ideal known to lie in the ideal under computation: the
/// monomials of weighted degree at least `degree`, restricted to multiples of
/// one of `guards` unless that list is empty, and likewise for `floor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Cut {
    degree: u64,
    weights: Vec<u64>,
    guards: Vec<Monomial>,
    floor: Option<(u64, Vec<Monomial>)>,
    /// Whether only finitely many monomials survive in the elements the
    /// computation produces.
    bounded: bool,
}

impl Cut {
    pub(crate) fn corner(w: &Weights, degree: u64) -> Self {
        Cut {
            degree,
            weights: w.as_slice().iter().map(|&x| x as u64).collect(),
            guards: Vec::new(),
            floor: None,
            bounded: true,
        }
    }

    /// Weights may be zero; such variables never count towards the degree.
    pub(crate) fn guarded(weights: Vec<u64>, degree: u64, guards: Vec<Monomial>) -> Self {
        Cut {
            degree,
            weights,
            guards,
            floor: None,
            bounded: false,
        }
    }

    pub(crate) fn with_floor(mut self, degree: u64, guards: Vec<Monomial>) -> Self {
        self.floor = Some((degree, guards));
        self
    }

    pub(crate) fn bounding(mut self) -> Self {
        self.bounded = true;
        self
    }

    pub(crate) fn degree(&self) -> u64 {
        self.degree
    }

    /// Empty for a plain corner.
    pub(crate) fn guards(&self) -> &[Monomial] {
        &self.guards
    }

    fn degree_of(&self, m: &Monomial) -> u64 {
        m.exponents()
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w)
            .sum()
    }

    fn drops(&self, m: &Monomial) -> bool {
        let d = self.degree_of(m);
        let part = |e: u64, guards: &[Monomial]| d >= e && (guards.is_empty() || guards.iter().any(|g| g.divides(m)));
        part(self.degree, &self.guards) || self.floor.as_ref().is_some_and(|(e, g)| part(*e, g))
    }

    /// Minimal monomial generators.
    fn generators(&self) -> Vec<Monomial> {
        fn go(i: usize, exps: &mut Vec<u32>, acc: u64, w: &[u64], d: u64, out: &mut Vec<Monomial>) {
            if i == w.len() {
                let minimal = acc >= d && exps.iter().zip(w).all(|(&e, &wi)| e == 0 || acc - wi < d);
                if minimal {
                    out.push(Monomial::new(exps.iter().copied()));
                }
                return;
            }
            if w[i] == 0 {
                exps.push(0);
                go(i + 1, exps, acc, w, d, out);
                exps.pop();
                return;
            }
            let mut e = 0u32;
            loop {
                let a = acc + e as u64 * w[i];
                exps.push(e);
                go(i + 1, exps, a, w, d, out);
                exps.pop();
                if a >= d {
                    break;
                }
                e += 1;
            }
        }
        let part = |d: u64, guards: &[Monomial]| {
            let mut plain = Vec::new();
            go(0, &mut Vec::new(), 0, &self.weights, d, &mut plain);
            if guards.is_empty() {
                return plain;
            }
            plain
                .iter()
                .flat_map(|c| guards.iter().map(move |g| c.lcm(g)))
                .collect()
        };
        let mut all = part(self.degree, &self.guards);
        if let Some((d, guards)) = &self.floor {
            all.extend(part(*d, guards));
        }
        minimalize(all)
    }
}

/// Truncates the basis at the cut, adds the generators of the cut and
/// regenerates the pairs.
fn restart_with_cut(
    basis: &mut Vec<Sorted>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    ord: &MonomialOrder,
    cut: &Cut,
) {
    let old = std::mem::take(basis);
    active.clear();
    pairs.clear();
    let cut_gens = cut
        .generators()
        .into_iter()
        .map(|m| Sorted::from_vec(vec![(m, Rational::one())], ord));
    let kept = old.into_iter().map(|g| g.truncated(ord, Some(cut))).filter(|g| !g.is_zero());
    for mut g in kept.chain(cut_gens) {
        g.make_monic();
        insert(basis, active, pairs, g, ord);
    }
}

fn select_pair(pairs: &[Pair], ord: &MonomialOrder) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (k, p) in pairs.iter().enumerate() {
        best = match best {
            None => Some(k),
            Some(b) => {
                let q = &pairs[b];
                let better = p
                    .sugar
                    .cmp(&q.sugar)
                    .then_with(|| ord.cmp(&q.lcm, &p.lcm))
                    .then_with(|| (p.j, p.i).cmp(&(q.j, q.i)));
                if better == Ordering::Less {
                    Some(k)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// Weighted degree of `(lcm / lm(f))·f` after homogenization.
fn sugar_of(f: &Sorted, lcm: &Monomial, ord: &MonomialOrder) -> u64 {
    let w = ord.weights();
    weighted_degree(lcm, w) + f.ecart
}

/// Gebauer–Möller update for a new element.
fn insert(
    basis: &mut Vec<Sorted>,
    active: &mut Vec<bool>,
    pairs: &mut Vec<Pair>,
    h: Sorted,
    ord: &MonomialOrder,
) {
    let hi = basis.len();
    let hlm = h.lm().clone();
    let mut candidates: Vec<Pair> = (0..hi)
        .filter(|&g| active[g])
        .map(|g| {
            let lcm = basis[g].lm().lcm(&hlm);
            let sugar = sugar_of(&basis[g], &lcm, ord).max(sugar_of(&h, &lcm, ord));
            Pair { i: g, j: hi, lcm, sugar }
        })
        .collect();
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = candidates.pop() {
        let coprime = basis[p.i].lm().is_coprime(&hlm);
        let dominated = candidates
            .iter()
            .chain(kept.iter())
            .any(|q| q.lcm.divides(&p.lcm));
        if coprime || !dominated {
            kept.push(p);
        }
    }
    kept.retain(|p| !basis[p.i].lm().is_coprime(&hlm));
    pairs.retain(|p| {
        !(hlm.divides(&p.lcm)
            && basis[p.i].lm().lcm(&hlm) != p.lcm
            && basis[p.j].lm().lcm(&hlm) != p.lcm)
    });
    kept.sort_by_key(|p| p.i);
    pairs.extend(kept);
    for (g, flag) in active.iter_mut().enumerate() {
        if *flag && hlm.divides(basis[g].lm()) {
            *flag = false;
        }
    }
    basis.push(h);
    active.push(true);
}

/// Either a finite dimension or `Infinite`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Dim {
    Finite(u64),
    Infinite,
}

impl Dim {
    pub fn finite(self) -> Option<u64> {
        match self {
            Dim::Finite(d) => Some(d),
            Dim::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dim::Finite(_))
    }
}

impl std::fmt::Display for Dim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dim::Finite(d) => write!(f, "{d}"),
            Dim::Infinite => f.write_str("INFINITE"),
        }
    }
}

/// An ideal of the localized ring, with a lazily computed standard basis.
#[derive(Debug)]
pub struct Ideal {
    nvars: usize,
    generators: Vec<Polynomial>,
    order: MonomialOrder,
    budget: u64,
    basis: OnceLock<StdBasis>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let basis = OnceLock::new();
        if let Some(b) = self.basis.get() {
            let _ = basis.set(b.clone());
        }
        Ideal {
            nvars: self.nvars,
            generators: self.generators.clone(),
            order: self.order.clone(),
            budget: self.budget,
            basis,
        }
    }
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(generators: impl IntoIterator<Item = Polynomial>, order: MonomialOrder) -> Self {
        let nvars = order.nvars();
        let generators: Vec<Polynomial> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        for g in &generators {
            assert_eq!(g.nvars(), nvars, "generator from a different ring");
        }
        Ideal {
            nvars,
            generators,
            order,
            budget: DEFAULT_BUDGET,
            basis: OnceLock::new(),
        }
    }

    pub fn zero(order: MonomialOrder) -> Self {
        Ideal::new(std::iter::empty(), order)
    }

    /// The ideal generated by the variables with the given indices.
    pub fn coordinate(vars: impl IntoIterator<Item = usize>, order: MonomialOrder) -> Self {
        let n = order.nvars();
        Ideal::new(vars.into_iter().map(|i| Polynomial::var(n, i)), order)
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    /// Same generators in another order (cached basis dropped).
    pub fn with_order(&self, order: MonomialOrder) -> Ideal {
        Ideal::new(self.generators.clone(), order).with_budget(self.budget)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn budget(&self) -> u64 {
        self.budget
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Standard basis, computed on first use.
    pub fn std_basis(&self) -> Result<&StdBasis> {
        if let Some(b) = self.basis.get() {
            return Ok(b);
        }
        let b = compute_std_basis(&self.generators, &self.order, self.budget)?;
        let _ = self.basis.set(b);
        Ok(self.basis.get().expect("just set"))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        is_member(f, self)
    }
}

/// Standard basis of `ideal` under its own order.
pub fn std_basis(ideal: &Ideal) -> Result<StdBasis> {
    ideal.std_basis().cloned()
}

/// `f ∈ I·O_loc`.
pub fn is_member(f: &Polynomial, ideal: &Ideal) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    if ideal.is_zero() {
        return Ok(false);
    }
    Ok(ideal.std_basis()?.normal_form(f)?.is_zero())
}

/// Mutual membership of generators.
pub fn ideal_equal(a: &Ideal, b: &Ideal) -> Result<bool> {
    for g in a.generators() {
        if !is_member(g, b)? {
            return Ok(false);
        }
    }
    for g in b.generators() {
        if !is_member(g, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of monomials outside the monomial ideal generated by `leading`,
/// or `Infinite` if some variable has no pure power among them.
pub fn count_standard_monomials(leading: &[Monomial], nvars: usize) -> Dim {
    match standard_monomials(leading, nvars) {
        Some(v) => Dim::Finite(v.len() as u64),
        None => Dim::Infinite,
    }
}

/// The monomials outside the monomial ideal generated by `leading`, if
/// finitely many.
pub fn standard_monomials(leading: &[Monomial], nvars: usize) -> Option<Vec<Monomial>> {
    let mut bound = vec![u32::MAX; nvars];
    for m in leading {
        if m.is_one() {
            return Some(Vec::new());
        }
        if let Some(v) = m.pure_power_var() {
            bound[v] = bound[v].min(m.exponent(v));
        }
    }
    if bound.contains(&u32::MAX) {
        return None;
    }
    let leading = minimalize(leading.to_vec());
    let mut out = Vec::new();
    let mut exps = vec![0u32; nvars];
    loop {
        let m = Monomial::new(exps.iter().copied());
        if !leading.iter().any(|l| l.divides(&m)) {
            out.push(m);
        }
        // odometer over the box bound[0] × ... × bound[n-1]
        let mut i = 0;
        loop {
            if i == nvars {
                return Some(out);
            }
            exps[i] += 1;
            if exps[i] < bound[i] {
                break;
            }
            exps[i] = 0;
            i += 1;
        }
    }
}

/// `dim_ℚ O/I` for a local order: number of standard monomials.
pub fn vdim(ideal: &Ideal) -> Result<Dim> {
    if !ideal.order().is_local() {
        return Err(Error::PreconditionViolation(
            "vdim needs a local order".into(),
        ));
    }
    if ideal.is_zero() {
        return Ok(Dim::Infinite);
    }
    let lead = ideal.std_basis()?.leading_monomials();
    Ok(count_standard_monomials(&lead, ideal.nvars()))
}
