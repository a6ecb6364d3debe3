//! Random inputs and property checks shared by the `properties` and
//! `acceptance` targets. Every check takes a seed and is deterministic in it.

#![allow(dead_code)]

use std::cmp::Ordering;

use linesing::derlog::{self, SpacePair};
use linesing::ideal_ops::{self, DEFAULT_N_MAX};
use linesing::invariants::{self, PairRule, Problem};
use linesing::jet::{self, JetSpace};
use linesing::mora::{self, compute_std_basis, mora_nf_with_certificate, DEFAULT_BUDGET};
use linesing::{Derivation, Error, Ideal, Monomial, MonomialOrder, Polynomial, Rational, Ring, Weights};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

pub fn ring() -> Ring {
    Ring::new(["x", "y", "z"]).unwrap()
}

pub fn names() -> Vec<String> {
    ["x", "y", "z"].iter().map(|s| s.to_string()).collect()
}

pub const G: &str = "y^2 - y*z + 1/2*z^2";
pub const F: &str = "y + 1/2*z^2";

pub fn x_ls(l: u32, s: u32) -> SpacePair {
    let h = ring().parse(&format!("x^{l}*y + x^{s}*z^2 + y*z")).unwrap();
    SpacePair::new(names(), None, vec![h]).unwrap()
}

pub fn problem(l: u32, s: u32, f: &str) -> Problem {
    let x = x_ls(l, s);
    let f = x.ring().parse(f).unwrap();
    Problem::hypersurface(x, f).unwrap()
}

pub struct Gen(ChaCha8Rng);

impl Gen {
    pub fn new(seed: u64) -> Self {
        Gen(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: u32) -> u32 {
        self.0.gen_range(0..n)
    }

    pub fn range(&mut self, lo: u32, hi: u32) -> u32 {
        self.0.gen_range(lo..=hi)
    }

    pub fn coin(&mut self) -> bool {
        self.0.gen_bool(0.5)
    }

    pub fn coeff(&mut self) -> Rational {
        let num = loop {
            let n: i64 = self.0.gen_range(-3..=3);
            if n != 0 {
                break n;
            }
        };
        Rational::new(num, self.0.gen_range(1..=2))
    }

    pub fn monomial(&mut self, nvars: usize, lo: u32, hi: u32) -> Monomial {
        let d = self.range(lo, hi);
        let mut exps = vec![0u32; nvars];
        for _ in 0..d {
            exps[self.below(nvars as u32) as usize] += 1;
        }
        Monomial::new(exps)
    }

    /// Up to `terms` terms of total degree in `lo..=hi`.
    pub fn poly(&mut self, nvars: usize, terms: u32, lo: u32, hi: u32) -> Polynomial {
        let n = self.range(1, terms);
        Polynomial::from_terms(
            nvars,
            (0..n).map(|_| (self.monomial(nvars, lo, hi), self.coeff())),
        )
    }

    pub fn nonzero_poly(&mut self, nvars: usize, terms: u32, lo: u32, hi: u32) -> Polynomial {
        loop {
            let p = self.poly(nvars, terms, lo, hi);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn weights(&mut self, nvars: usize) -> Weights {
        Weights::new((0..nvars).map(|_| self.range(1, 3)).collect()).unwrap()
    }

    pub fn local_order(&mut self, nvars: usize) -> MonomialOrder {
        if self.coin() {
            MonomialOrder::local_degree(nvars)
        } else {
            MonomialOrder::local(self.weights(nvars))
        }
    }

    pub fn any_order(&mut self, nvars: usize) -> MonomialOrder {
        if self.coin() {
            self.local_order(nvars)
        } else {
            self.local_order(nvars - 1).eliminating_new_variable()
        }
    }

    /// Pure powers perturbed by terms above them in weighted degree, plus a
    /// random extra generator. Always zero-dimensional under `w`.
    pub fn zero_dim_generators_for(&mut self, w: &Weights) -> Vec<Polynomial> {
        let mut gens = Vec::new();
        for v in 0..3 {
            let a = self.range(1, 3);
            let pure = Monomial::var_power(3, v, a);
            let floor = pure.weighted_degree(w);
            let tail = Polynomial::from_terms(
                3,
                self.poly(3, 2, a, a + 2)
                    .into_terms()
                    .filter(|(m, _)| m.weighted_degree(w) > floor),
            );
            gens.push(&Polynomial::term(pure, Rational::one()) + &tail);
        }
        if self.coin() {
            gens.push(self.nonzero_poly(3, 3, 1, 3));
        }
        gens.shuffle(&mut self.0);
        gens
    }

    pub fn zero_dim_generators(&mut self) -> Vec<Polynomial> {
        self.zero_dim_generators_for(&Weights::standard(3))
    }

    pub fn zero_dim_ideal(&mut self) -> Ideal {
        Ideal::new(self.zero_dim_generators(), MonomialOrder::local_degree(3))
    }

    /// Two or three generators of order at least one.
    pub fn small_ideal(&mut self, ord: &MonomialOrder) -> Ideal {
        let n = self.range(1, 3);
        Ideal::new((0..n).map(|_| self.nonzero_poly(3, 3, 1, 3)), ord.clone())
    }

    /// `lead` plus random terms of `𝔤` strictly above it in weighted degree.
    fn perturbed(&mut self, lead: Monomial, w: &Weights) -> Polynomial {
        let floor = lead.weighted_degree(w);
        let d = lead.degree() as u32;
        let tail = self
            .poly(3, 2, d, d + 2)
            .into_terms()
            .filter(|(m, _)| m.weighted_degree(w) > floor && (m.exponent(1) > 0 || m.exponent(2) > 0));
        &Polynomial::term(lead, Rational::one()) + &Polynomial::from_terms(3, tail)
    }

    /// An ideal inside `𝔤 = (y, z)` with `dim 𝔤/I` finite: perturbations of
    /// `x^a y`, `x^b z`, `y^c`, `z^d`, and possibly one more element of `𝔤`.
    pub fn axis_ideal(&mut self, ord: &MonomialOrder) -> Ideal {
        let w = ord.weights().clone();
        let leads = [
            Monomial::new([self.range(0, 2), 1, 0]),
            Monomial::new([self.range(0, 2), 0, 1]),
            Monomial::new([0, self.range(2, 3), 0]),
            Monomial::new([0, 0, self.range(2, 3)]),
        ];
        let mut gens: Vec<Polynomial> = leads.into_iter().map(|m| self.perturbed(m, &w)).collect();
        if self.coin() {
            let y = Polynomial::var(3, 1);
            let z = Polynomial::var(3, 2);
            let (a, b) = (self.poly(3, 2, 0, 2), self.poly(3, 2, 0, 2));
            gens.push(&(&y * &a) + &(&z * &b));
        }
        gens.retain(|p| !p.is_zero());
        gens.shuffle(&mut self.0);
        Ideal::new(gens, ord.clone())
    }

    /// Ideals of the two kinds the invariant pipeline builds: zero
    /// dimensional, or contained in `𝔤`. Standard bases of ideals in general
    /// position without either property can be very slow.
    pub fn pipeline_ideal(&mut self, ord: &MonomialOrder) -> Ideal {
        if self.coin() {
            Ideal::new(self.zero_dim_generators_for(ord.weights()), ord.clone())
        } else {
            self.axis_ideal(ord)
        }
    }

    /// A random `O`-combination of the generators.
    pub fn member_of(&mut self, i: &Ideal) -> Polynomial {
        let mut acc = Polynomial::zero(i.nvars());
        for g in i.generators() {
            let c = self.poly(i.nvars(), 2, 0, 2);
            acc = &acc + &(&c * g);
        }
        acc
    }

    pub fn derivation(&mut self, nvars: usize) -> Derivation {
        Derivation::new((0..nvars).map(|_| self.poly(nvars, 3, 0, 2)).collect()).unwrap()
    }

    /// A weighted homogeneous polynomial of degree `d`, possibly zero.
    pub fn homogeneous(&mut self, w: &Weights, d: u64) -> Polynomial {
        let mut p = Polynomial::zero(w.len());
        for _ in 0..4 {
            let mut exps = vec![0u32; w.len()];
            let mut left = d;
            // fill the last variables first so that most draws succeed
            for v in (1..w.len()).rev() {
                let wv = w.get(v) as u64;
                let e = self.0.gen_range(0..=left / wv);
                exps[v] = e as u32;
                left -= e * wv;
            }
            if left.is_multiple_of(w.get(0) as u64) {
                exps[0] = (left / w.get(0) as u64) as u32;
                p.add_term(Monomial::new(exps), &self.coeff());
            }
        }
        p
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.0).unwrap()
    }

    pub fn shuffled(&mut self, i: &Ideal) -> Ideal {
        let mut gens = i.generators().to_vec();
        gens.shuffle(&mut self.0);
        Ideal::new(gens, i.order().clone())
    }
}

fn e<T: std::fmt::Debug>(r: Result<T, Error>) -> Result<T, String> {
    r.map_err(|e| format!("{e:?}"))
}

// --- polynomial layer ------------------------------------------------------

pub fn ring_laws(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let a = g.poly(3, 4, 0, 3);
    let b = g.poly(3, 4, 0, 3);
    let c = g.poly(3, 4, 0, 3);
    ensure!(&(&a + &b) + &c == &a + &(&b + &c), "+ not associative");
    ensure!(&a + &b == &b + &a, "+ not commutative");
    ensure!(&(&a * &b) * &c == &a * &(&b * &c), "· not associative");
    ensure!(&a * &b == &b * &a, "· not commutative");
    ensure!(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), "not distributive");
    let copy = a.clone();
    ensure!((&a - &copy).is_zero(), "a − a ≠ 0");
    let sum = &a + &b;
    ensure!(sum.terms().all(|(_, c)| !c.is_zero()), "stored zero coefficient");
    Ok(())
}

pub fn order_multiplicativity(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let ord = g.any_order(3);
    let a = g.monomial(3, 0, 4);
    let b = g.monomial(3, 0, 4);
    let m = g.monomial(3, 0, 3);
    let before = ord.cmp(&a, &b);
    ensure!(ord.cmp(&b, &a) == before.reverse(), "{ord:?} not antisymmetric");
    ensure!((before == Ordering::Equal) == (a == b), "{ord:?} not total");
    ensure!(
        ord.cmp(&a.mul(&m), &b.mul(&m)) == before,
        "{ord:?}: {a:?} vs {b:?} changes after multiplying by {m:?}"
    );
    let p = g.nonzero_poly(3, 3, 0, 3);
    let q = g.nonzero_poly(3, 3, 0, 3);
    let (mp, cp) = e(p.leading_term(&ord))?;
    let (mq, cq) = e(q.leading_term(&ord))?;
    let pq = &p * &q;
    let (m, c) = e(pq.leading_term(&ord))?;
    ensure!(*m == mp.mul(mq), "leading monomial not multiplicative under {ord:?}");
    let mut prod = cp.clone();
    prod *= cq;
    ensure!(*c == prod, "leading coefficient not multiplicative");
    Ok(())
}

pub fn leibniz(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let xi = g.derivation(3);
    let f = g.poly(3, 4, 0, 3);
    let h = g.poly(3, 4, 0, 3);
    let lhs = xi.apply(&(&f * &h));
    let rhs = &(&f * &xi.apply(&h)) + &(&h * &xi.apply(&f));
    ensure!(lhs == rhs, "Leibniz rule fails for {xi:?}");
    Ok(())
}

pub fn euler_identity(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let w = g.weights(3);
    let d = g.range(1, 8) as u64;
    let p = g.homogeneous(&w, d);
    let lhs = Derivation::euler(&w).apply(&p);
    ensure!(lhs == p.scale(&Rational::from(d as i64)), "ξ_E(p) ≠ {d}·p for weights {w:?}");
    Ok(())
}

pub fn parse_round_trip(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let r = ring();
    let p = g.poly(3, 5, 0, 4);
    let text = r.format(&p);
    ensure!(e(r.parse(&text))? == p, "`{text}` does not parse back");
    Ok(())
}

// --- standard bases --------------------------------------------------------

pub fn certificate_validity(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let ord = g.local_order(3);
    let gens: Vec<Polynomial> = (0..g.range(1, 3)).map(|_| g.nonzero_poly(3, 3, 1, 3)).collect();
    let f = g.poly(3, 4, 0, 4);
    let (r, cert) = e(mora_nf_with_certificate(&f, &gens, &ord))?;
    ensure!(cert.verify(&f, &gens, &r, &ord), "certificate does not verify");
    Ok(())
}

pub fn s_polynomials_reduce(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let ord = g.local_order(3);
    let gens: Vec<Polynomial> = if g.coin() {
        g.zero_dim_generators_for(ord.weights())
    } else {
        g.small_ideal(&ord).generators().to_vec()
    };
    let sb = e(compute_std_basis(&gens, &ord, DEFAULT_BUDGET))?;
    for (i, r) in e(sb.s_polynomial_remainders())?.iter().enumerate() {
        ensure!(r.is_zero(), "S-polynomial {i} leaves {r:?}");
    }
    for gen in &gens {
        ensure!(e(sb.normal_form(gen))?.is_zero(), "generator not reduced to zero");
    }
    let again = e(compute_std_basis(&gens, &ord, DEFAULT_BUDGET))?;
    ensure!(sb.elements() == again.elements(), "basis is not deterministic");
    Ok(())
}

pub fn colon_soundness(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let ord = g.local_order(3);
    let i = g.pipeline_ideal(&ord);
    let j = if i.generators().iter().all(|p| p.restrict_to_axis().is_zero()) {
        let y = Polynomial::var(3, 1);
        let z = Polynomial::var(3, 2);
        let (a, b) = (g.poly(3, 2, 0, 1), g.poly(3, 2, 0, 1));
        Ideal::new([&(&y * &a) + &(&z * &b)], ord.clone())
    } else {
        Ideal::new((0..g.range(1, 2)).map(|_| g.nonzero_poly(3, 2, 1, 2)), ord.clone())
    };
    if j.is_zero() {
        return Ok(());
    }
    let q = e(ideal_ops::colon(&i, &j))?;
    for a in q.generators() {
        for b in j.generators() {
            ensure!(e(mora::is_member(&(a * b), &i))?, "q·f ∉ I for q = {a:?}");
        }
    }
    for a in i.generators() {
        ensure!(e(mora::is_member(a, &q))?, "I ⊄ I : J");
    }
    let q2 = e(ideal_ops::colon(&g.shuffled(&i), &g.shuffled(&j)))?;
    ensure!(e(mora::ideal_equal(&q, &q2))?, "colon depends on generator order");
    Ok(())
}

pub fn intersection_correctness(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let ord = g.local_order(3);
    let i = g.pipeline_ideal(&ord);
    let j = g.pipeline_ideal(&ord);
    let both = e(ideal_ops::intersect(&i, &j))?;
    let mut samples = vec![g.member_of(&i), g.member_of(&j), g.poly(3, 3, 0, 3)];
    let prod = e(ideal_ops::product(&i, &j))?;
    samples.push(g.member_of(&prod));
    for p in &samples {
        let lhs = e(mora::is_member(p, &both))?;
        let rhs = e(mora::is_member(p, &i))? && e(mora::is_member(p, &j))?;
        ensure!(lhs == rhs, "membership of {p:?} in I ∩ J is {lhs}, in both is {rhs}");
    }
    let swapped = e(ideal_ops::intersect(&g.shuffled(&j), &g.shuffled(&i)))?;
    ensure!(e(mora::ideal_equal(&both, &swapped))?, "intersection depends on generator order");
    Ok(())
}

/// `dim O/(I + m^N) − dim O/(𝔤 + m^N)` never decreases in `N` for `I ⊆ 𝔤`, and
/// settles at `dim 𝔤/I` when that is finite.
pub fn stabilization_monotone(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let ord = MonomialOrder::local_degree(3);
    let sigma = Ideal::coordinate(1..3, ord.clone());
    let n = g.range(1, 3);
    let y = Polynomial::var(3, 1);
    let z = Polynomial::var(3, 2);
    let mut gens: Vec<Polynomial> = Vec::new();
    for _ in 0..n {
        let (a, b) = (g.poly(3, 2, 0, 2), g.poly(3, 2, 0, 2));
        gens.push(&(&y * &a) + &(&z * &b));
    }
    if g.coin() {
        let a = g.range(1, 3);
        let squares = &y.pow(2) + &z.pow(2);
        gens.push(&squares + &Polynomial::term(Monomial::new([a, 1, 0]), Rational::one()));
    }
    let i = Ideal::new(gens, ord);
    let mut prev = 0u64;
    let mut diffs = Vec::new();
    for big_n in 1..=12 {
        let d = e(ideal_ops::truncated_dim(&i, big_n))? - e(ideal_ops::truncated_dim(&sigma, big_n))?;
        ensure!(d >= prev, "difference drops from {prev} to {d} at N = {big_n}");
        prev = d;
        diffs.push(d);
    }
    match ideal_ops::relative_dim_g(&i, &sigma, DEFAULT_N_MAX) {
        Ok(v) => ensure!(v >= prev, "limit {v} below partial value {prev}"),
        Err(Error::InfiniteDimension) | Err(Error::NoStabilization { .. }) => {}
        Err(other) => return Err(format!("{other:?}")),
    }
    Ok(())
}

// --- oracle ----------------------------------------------------------------

/// `vdim` equals the stabilized truncated dimension, and `jet_dim` is
/// monotone in `N` and in the ideal.
pub fn oracle_vdim(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let i = g.zero_dim_ideal();
    let v = e(mora::vdim(&i))?.finite().ok_or("vdim infinite")?;
    let (d, k) = jet::stable_jet_dim(&i, 40).ok_or("oracle did not stabilize")?;
    ensure!(v == d, "vdim {v} vs oracle {d}");
    let space = JetSpace::of_ideal(&i, k + 3);
    for n in k..=k + 3 {
        ensure!(space.dim_below(n) == v, "jet_dim at N = {n} past stabilization");
    }
    for n in 1..k + 3 {
        ensure!(space.dim_below(n) <= space.dim_below(n + 1), "jet_dim decreases in N");
    }
    let mut bigger = i.generators().to_vec();
    bigger.push(g.nonzero_poly(3, 2, 1, 2));
    let bigger = Ideal::new(bigger, i.order().clone());
    ensure!(jet::jet_dim(&bigger, k) <= jet::jet_dim(&i, k), "jet_dim grows with the ideal");
    Ok(())
}

/// Engine and oracle agree on memberships; returns the number of queries.
pub fn oracle_membership(seed: u64, queries: usize) -> Result<usize, String> {
    let mut g = Gen::new(seed);
    let i = g.zero_dim_ideal();
    let (_, k) = jet::stable_jet_dim(&i, 40).ok_or("oracle did not stabilize")?;
    let space = JetSpace::of_ideal(&i, k);
    for q in 0..queries {
        let f = match q % 3 {
            0 => g.member_of(&i),
            1 => g.poly(3, 3, 0, 2),
            _ => &g.member_of(&i) + &g.poly(3, 1, 1, 3),
        };
        let engine = e(mora::is_member(&f, &i))?;
        let oracle = space.contains(&f);
        ensure!(engine == oracle, "engine {engine}, oracle {oracle} for {f:?}");
        if engine {
            for n in 1..k {
                ensure!(space.contains_below(&f, n), "member rejected by jet space N = {n}");
            }
        }
    }
    Ok(queries)
}

// --- derivations and invariants -------------------------------------------

fn random_x_ls(g: &mut Gen) -> (u32, u32, SpacePair) {
    let l = g.range(1, 3);
    let s = g.range(0, 3);
    (l, s, x_ls(l, s))
}

/// Tangency of the generators and `(ξ(f)) = J⁰ + J¹`.
pub fn derlog_identities(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let (_, _, x) = random_x_ls(&mut g);
    let basis = e(derlog::build_derlog_hypersurface(&x))?;
    let h = &x.equations()[0];
    let hi = x.h_ideal();
    for xi in basis.all() {
        ensure!(e(mora::is_member(&xi.apply(h), &hi))?, "generator not tangent");
    }
    let d = h.homogeneous_degree(x.weights()).unwrap();
    ensure!(x.euler().apply(h) == h.scale(&Rational::from(d as i64)), "ξ_E(h) ≠ deg·h");
    let split = e(derlog::split_d1(&basis, &x))?;
    for xi in &split.d1 {
        ensure!(x.in_sigma(xi.component(0)), "D¹ member with x-component outside 𝔤");
    }
    // compared modulo 𝔥, the level at which the formulas use them; only for
    // f of finite Jacobian number, where these ideals have finite colength
    // in 𝔤
    let f = in_g_squared_plus_h(&mut g, &x);
    let mut p = e(Problem::new(x.clone(), basis.clone(), f.clone()))?;
    // a large j is as good as an infinite one here and far slower to find
    p.config.n_max = 20;
    match invariants::jacobian_number(&p) {
        Ok(_) => {}
        Err(Error::NotTransversalA1) => return Ok(()),
        Err(other) => return Err(format!("{other:?}")),
    }
    let j = e(derlog::jacobian_ideal(&split, &x, &f))?;
    let split_side = e(ideal_ops::sum(&j.jx, &hi))?;
    let unsplit = e(ideal_ops::sum(&derlog::jacobian_ideal_unsplit(&basis, &x, &f), &hi))?;
    ensure!(e(mora::ideal_equal(&split_side, &unsplit))?, "J⁰ + J¹ + 𝔥 ≠ (ξ(f)) + 𝔥");
    Ok(())
}

/// A random element of `𝔤² + 𝔥`.
fn in_g_squared_plus_h(g: &mut Gen, x: &SpacePair) -> Polynomial {
    let y = Polynomial::var(3, 1);
    let z = Polynomial::var(3, 2);
    let quad = &(&(&y * &y) * &g.poly(3, 2, 0, 1)) + &(&(&y * &z) * &g.poly(3, 2, 0, 1));
    let quad = &quad + &(&(&z * &z) * &g.poly(3, 2, 0, 1));
    if g.coin() {
        &quad + &(&x.equations()[0] * &g.poly(3, 1, 0, 1))
    } else {
        quad
    }
}

pub fn primitive_from_g_squared(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let (_, _, x) = random_x_ls(&mut g);
    let f = in_g_squared_plus_h(&mut g, &x);
    if f.is_zero() {
        return Ok(());
    }
    let p = e(Problem::hypersurface(x, f))?;
    ensure!(e(invariants::is_primitive_member(&p))?, "element of 𝔤² + 𝔥 not primitive");
    Ok(())
}

pub fn extraction_rule_independence(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let (_, _, x) = random_x_ls(&mut g);
    let f = in_g_squared_plus_h(&mut g, &x);
    let least = invariants::delta_f_with_rule(&x, &f, PairRule::LexLeast);
    let greatest = invariants::delta_f_with_rule(&x, &f, PairRule::LexGreatest);
    ensure!(least == greatest, "δ_f depends on the rule: {least:?} vs {greatest:?}");
    let dl = invariants::quadric_determinant(&x, &f, PairRule::LexLeast).map(|d| d.restrict_to_axis());
    let dg = invariants::quadric_determinant(&x, &f, PairRule::LexGreatest).map(|d| d.restrict_to_axis());
    ensure!(dl == dg, "det H mod 𝔤 depends on the rule");
    let lambda = invariants::torsion_number(&x);
    let again = invariants::torsion_number(&x_ls_from(&x));
    ensure!(lambda == again, "λ not reproducible: {lambda:?} vs {again:?}");
    Ok(())
}

fn x_ls_from(x: &SpacePair) -> SpacePair {
    SpacePair::new(names(), Some(x.weights().clone()), x.equations().to_vec()).unwrap()
}

pub fn e_k_linear(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let (l, s, x) = random_x_ls(&mut g);
    let f = match g.below(3) {
        0 => x.ring().parse(F).unwrap(),
        1 => x.ring().parse(G).unwrap(),
        _ => in_g_squared_plus_h(&mut g, &x),
    };
    let p = e(Problem::hypersurface(x, f))?;
    let (sigma, mult) = e(invariants::sigma_mult(&p))?;
    let (sigma, mult) = match (sigma.finite(), mult.finite()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(format!("σ or mult infinite on X_{{{l},{s}}}")),
    };
    for k in 1..=4 {
        let ek = e(invariants::e_k(&p, k))?.finite().ok_or("e_k infinite")?;
        ensure!(ek == sigma + k as u64 * mult, "e_{k} = {ek}, σ = {sigma}, mult = {mult}");
    }
    Ok(())
}

/// Coherence and JSON round trip of full reports on small problems.
pub fn report_coherence(seed: u64) -> Check {
    let mut g = Gen::new(seed);
    let l = g.range(1, 2);
    let s = g.range(0, 2);
    let f = *g.pick(&[F, G, "y", "y + z^2"]);
    let p = problem(l, s, f);
    let report = match invariants::compute_report(&p) {
        Ok(r) => r,
        Err(Error::NotTransversalA1) | Err(Error::InfiniteNu) => return Ok(()),
        Err(other) => return Err(format!("{other:?}")),
    };
    ensure!(report.is_coherent(), "incoherent report {report:?}");
    ensure!(report.chi == invariants::chi_formula(2, report.j, report.nu), "χ sign");
    let s = report.series.last().ok_or("empty series")?;
    ensure!(s.consistent, "series did not settle");
    let text = serde_json::to_string(&report).map_err(|e| e.to_string())?;
    let back: invariants::InvariantReport = serde_json::from_str(&text).map_err(|e| e.to_string())?;
    ensure!(back == report, "JSON round trip changed the report");
    Ok(())
}

pub type NamedCheck = (&'static str, fn(u64) -> Check);

/// Every check paired with its name, for sweeping over seeds.
pub const CHECKS: &[NamedCheck] = &[
    ("ring laws", ring_laws),
    ("order multiplicativity", order_multiplicativity),
    ("leibniz", leibniz),
    ("euler identity", euler_identity),
    ("parse round trip", parse_round_trip),
    ("mora certificate", certificate_validity),
    ("s-polynomials reduce to zero", s_polynomials_reduce),
    ("colon soundness", colon_soundness),
    ("intersection correctness", intersection_correctness),
    ("stabilization monotone", stabilization_monotone),
    ("vdim vs oracle", oracle_vdim),
    ("derlog identities", derlog_identities),
    ("primitive from g^2 + h", primitive_from_g_squared),
    ("extraction rule independence", extraction_rule_independence),
    ("e_k = sigma + k mult", e_k_linear),
    ("report coherence", report_coherence),
];
