//! Invariants of a function `f` on `X` with critical locus the `x`-axis.
//!
//! The Euler characteristic of the Milnor fibre is
//! `χ(F) = 1 + (−1)^{dim X − 1}(j(f) + ν)` with
//!
//! - `j(f) = dim 𝔤/(𝔥 + J_X(f))`, the Jacobian number;
//! - `ν = dim O/(𝔤 + ((J¹(f) + 𝔥) : (ξ_E(f))))`.
//!
//! The rest of the module computes the quantities that cross-check it: the
//! Milnor numbers `μ(f_k)` of `f_k = f + x^{k+1}/(k+1)`, which must equal
//! `k + 1 + j + ν` for large `k`; the ideal identity
//! `ξ_E(f)𝔤 + J¹(f) + 𝔥 = (𝔥 + J_X(f_k)) ∩ 𝔤`; and the conjectural
//! `ν = 2λ + δ_f − 1` in terms of the torsion number and the quadric
//! discriminant.

use serde::{Deserialize, Serialize};

use crate::derlog::{self, DerlogBasis, SpacePair, SplitDerlog};
use crate::error::{Error, ErrorKind, Result};
use crate::ideal_ops::{self, DEFAULT_N_MAX};
use crate::monomial::Monomial;
use crate::mora::{self, Dim, Ideal};
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Knobs for the stabilization schedule and the `k` sweeps.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Config {
    pub n_max: u32,
    /// Number of consecutive successes a sweep must see.
    pub run: u32,
    pub k_min: u32,
    pub k_max: u32,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            n_max: DEFAULT_N_MAX,
            run: 3,
            k_min: 1,
            k_max: 60,
        }
    }
}

/// `(X, Σ = x-axis, f)` with the split generators of `D_X`.
#[derive(Clone, Debug)]
pub struct Problem {
    pub space: SpacePair,
    pub basis: DerlogBasis,
    pub split: SplitDerlog,
    pub f: Polynomial,
    pub config: Config,
}

impl Problem {
    pub fn new(space: SpacePair, basis: DerlogBasis, f: Polynomial) -> Result<Self> {
        if f.nvars() != space.nvars() {
            return Err(Error::RingMismatch(space.nvars(), f.nvars()));
        }
        if !f.constant_term().is_zero() {
            return Err(Error::NotInMaximalIdeal);
        }
        let split = derlog::split_d1(&basis, &space)?;
        Ok(Problem {
            space,
            basis,
            split,
            f,
            config: Config::default(),
        })
    }

    /// Builds `D_X` from the equation of a hypersurface.
    pub fn hypersurface(space: SpacePair, f: Polynomial) -> Result<Self> {
        let basis = derlog::build_derlog_hypersurface(&space)?;
        Problem::new(space, basis, f)
    }

    pub fn with_config(mut self, config: Config) -> Self {
        self.config = config;
        self
    }

    /// `f_k = f + x^{k+1}/(k+1)`.
    pub fn f_k(&self, k: u32) -> Polynomial {
        let n = self.space.nvars();
        let bump = Polynomial::term(
            Monomial::var_power(n, 0, k + 1),
            Rational::new(1, k as i64 + 1),
        );
        &self.f + &bump
    }

    /// `𝔥 + J_X(f_k)`, the ideal whose colength is `μ(f_k)`.
    pub fn series_ideal(&self, k: u32) -> Ideal {
        self.h_plus_jx(&self.f_k(k))
    }

    /// `𝔥 + J_X(g)` using every stored generator of `D_X`.
    pub fn h_plus_jx(&self, g: &Polynomial) -> Ideal {
        let gens = self
            .space
            .equations()
            .iter()
            .cloned()
            .chain(self.basis.all().map(|xi| xi.apply(g)));
        self.space.ideal(gens)
    }

    fn sigma_plus_jx(&self, g: &Polynomial) -> Ideal {
        let gens = self
            .space
            .sigma()
            .generators()
            .to_vec()
            .into_iter()
            .chain(self.basis.all().map(|xi| xi.apply(g)));
        self.space.ideal(gens)
    }
}

/// `f ∈ 𝔤` and `ξ(f) ∈ 𝔤` for every generator `ξ` of `D_X`.
pub fn is_primitive_member(p: &Problem) -> Result<bool> {
    let sigma = p.space.sigma();
    if !mora::is_member(&p.f, &sigma)? {
        return Ok(false);
    }
    for xi in p.basis.all() {
        if !mora::is_member(&xi.apply(&p.f), &sigma)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn require_primitive(p: &Problem) -> Result<()> {
    if is_primitive_member(p)? {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

/// `j(f) = dim 𝔤/(𝔥 + J_X(f))`.
pub fn jacobian_number(p: &Problem) -> Result<u64> {
    require_primitive(p)?;
    let i = p.h_plus_jx(&p.f);
    match ideal_ops::relative_dim_g(&i, &p.space.sigma(), p.config.n_max) {
        Err(Error::InfiniteDimension | Error::NoStabilization { .. }) => Err(Error::NotTransversalA1),
        other => other,
    }
}

/// `𝔤 + ((J¹(f) + 𝔥) : (ξ_E(f)))`.
pub fn nu_ideal(p: &Problem) -> Result<Ideal> {
    let j = derlog::jacobian_ideal(&p.split, &p.space, &p.f)?;
    if j.j0.is_zero() {
        return Err(Error::PreconditionViolation("ξ_E(f) = 0".into()));
    }
    let num = ideal_ops::sum(&j.j1, &p.space.h_ideal())?;
    let quotient = ideal_ops::colon(&num, &j.j0)?;
    ideal_ops::sum(&p.space.sigma(), &quotient)
}

/// `ν = dim O/(𝔤 + ((J¹(f) + 𝔥) : (ξ_E(f))))`.
pub fn nu(p: &Problem) -> Result<u64> {
    require_primitive(p)?;
    mora::vdim(&nu_ideal(p)?)?.finite().ok_or(Error::InfiniteNu)
}

/// `1 + (−1)^{dim X − 1}(j + ν)`.
pub fn chi_formula(dim_x: usize, j: u64, nu: u64) -> i64 {
    let sign = if (dim_x + 1).is_multiple_of(2) { 1 } else { -1 };
    1 + sign * (j + nu) as i64
}

/// Euler characteristic of the Milnor fibre of `f`.
pub fn euler_characteristic(p: &Problem) -> Result<i64> {
    let j = jacobian_number(p)?;
    let n = nu(p)?;
    Ok(chi_formula(p.space.dim_x(), j, n))
}

/// Constancy of the transversal type along `Σ ∖ 0`: the colon ideal defining
/// `ν` has finite colength.
pub fn check_constancy(p: &Problem) -> Result<bool> {
    require_primitive(p)?;
    let j = derlog::jacobian_ideal(&p.split, &p.space, &p.f)?;
    let num = ideal_ops::sum(&j.j1, &p.space.h_ideal())?;
    let ideal = if j.j0.is_zero() {
        ideal_ops::sum(&p.space.sigma(), &num)?
    } else {
        ideal_ops::sum(&p.space.sigma(), &ideal_ops::colon(&num, &j.j0)?)?
    };
    Ok(mora::vdim(&ideal)?.is_finite())
}

/// `μ(f_k) = dim O/(𝔥 + J_X(f_k))`.
pub fn milnor_series(p: &Problem, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::PreconditionViolation("k must be positive".into()));
    }
    mora::vdim(&p.series_ideal(k))?
        .finite()
        .ok_or(Error::NotIsolatedSeries { k })
}

/// `e_k = dim O/(𝔤 + J_X(f_k))`.
pub fn e_k(p: &Problem, k: u32) -> Result<Dim> {
    mora::vdim(&p.sigma_plus_jx(&p.f_k(k)))
}

/// `(σ(ΣX, 0), mult_x(Σ)) = (dim O/(𝔤 + J_X(x)), dim O/(𝔤 + (x)))`.
pub fn sigma_mult(p: &Problem) -> Result<(Dim, Dim)> {
    let x = Polynomial::var(p.space.nvars(), 0);
    let sigma = mora::vdim(&p.sigma_plus_jx(&x))?;
    let mult = mora::vdim(&ideal_ops::sum(&p.space.sigma(), &p.space.ideal([x]))?)?;
    Ok((sigma, mult))
}

/// Order of vanishing of a polynomial in `x` alone at `0`.
fn ord_x(b: &Polynomial) -> Option<u64> {
    b.terms().map(|(m, _)| m.exponent(0) as u64).min()
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
fn det(m: &[Vec<Polynomial>], nvars: usize) -> Polynomial {
    match m.len() {
        0 => Polynomial::one(nvars),
        1 => m[0][0].clone(),
        n => {
            let mut acc = Polynomial::zero(nvars);
            for c in 0..n {
                if m[0][c].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(j, _)| *j != c)
                            .map(|(_, e)| e.clone())
                            .collect()
                    })
                    .collect();
                let term = &m[0][c] * &det(&minor, nvars);
                acc = if c % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// `x`-part of a monomial, i.e. its class modulo `𝔤`.
fn x_part(m: &Monomial, c: &Rational) -> Polynomial {
    let n = m.nvars();
    Polynomial::term(Monomial::var_power(n, 0, m.exponent(0)), c.clone())
}

/// The matrix `b_ik` of `h_i ≡ Σ_k b_ik y_k mod 𝔤²`, entries reduced mod `𝔤`.
/// Rows are equations, columns `y_1..y_n`.
pub fn conormal_matrix(x: &SpacePair) -> Vec<Vec<Polynomial>> {
    let n = x.nvars();
    x.equations()
        .iter()
        .map(|h| {
            let mut row = vec![Polynomial::zero(n); n - 1];
            for (m, c) in h.terms() {
                let ys = &m.exponents()[1..];
                if ys.iter().sum::<u32>() == 1 {
                    let k = ys.iter().position(|&e| e == 1).expect("one y");
                    row[k] = &row[k] + &x_part(m, c);
                }
            }
            row
        })
        .collect()
}

fn aligned_block(x: &SpacePair) -> Result<Vec<Vec<Polynomial>>> {
    let p = x.p();
    let b = conormal_matrix(x);
    if b.iter().any(|row| row[p..].iter().any(|e| !e.is_zero())) {
        return Err(Error::NotAligned);
    }
    Ok(b.into_iter().map(|row| row[..p].to_vec()).collect())
}

/// `det B` reduced modulo `𝔤`.
pub fn torsion_determinant(x: &SpacePair) -> Result<Polynomial> {
    let block = aligned_block(x)?;
    Ok(det(&block, x.nvars()))
}

/// `λ(ΣX) = ord_x det B = dim O/(𝔤 + (det B))`.
pub fn torsion_number(x: &SpacePair) -> Result<u64> {
    let b = torsion_determinant(x)?;
    ord_x(&b).ok_or(Error::DegenerateTorsion)
}

/// Which divisor pair `y_k y_l` absorbs a monomial of `f ∈ 𝔤²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairRule {
    LexLeast,
    LexGreatest,
}

/// Symmetric `H` with `f = Σ H_kl y_k y_l`, entries reduced mod `𝔤`.
pub fn quadric_matrix(x: &SpacePair, f: &Polynomial, rule: PairRule) -> Result<Vec<Vec<Polynomial>>> {
    if !x.in_sigma_squared(f) {
        return Err(Error::NotInGSquared);
    }
    let n = x.nvars();
    let ny = n - 1;
    let half = Rational::new(1, 2);
    let mut h = vec![vec![Polynomial::zero(n); ny]; ny];
    for (m, c) in f.terms() {
        let ys = &m.exponents()[1..];
        let mut candidates = Vec::new();
        for k in 0..ny {
            for l in k..ny {
                let ok = if k == l { ys[k] >= 2 } else { ys[k] >= 1 && ys[l] >= 1 };
                if ok {
                    candidates.push((k, l));
                }
            }
        }
        let (k, l) = match rule {
            PairRule::LexLeast => candidates[0],
            PairRule::LexGreatest => *candidates.last().expect("f ∈ 𝔤²"),
        };
        // cofactor m / (y_k y_l) survives mod 𝔤 only if it is a pure x power
        let rest: u32 = ys.iter().sum::<u32>() - 2;
        if rest > 0 {
            continue;
        }
        let entry = x_part(m, c);
        if k == l {
            h[k][k] = &h[k][k] + &entry;
        } else {
            let e = entry.scale(&half);
            h[k][l] = &h[k][l] + &e;
            h[l][k] = &h[l][k] + &e;
        }
    }
    Ok(h)
}

/// `Δ = det(H_kl)_{p < k, l ≤ n}` mod `𝔤`.
pub fn quadric_determinant(x: &SpacePair, f: &Polynomial, rule: PairRule) -> Result<Polynomial> {
    aligned_block(x)?;
    let h = quadric_matrix(x, f, rule)?;
    let p = x.p();
    let block: Vec<Vec<Polynomial>> = h[p..].iter().map(|row| row[p..].to_vec()).collect();
    Ok(det(&block, x.nvars()))
}

/// `δ_f = ord_x Δ`.
pub fn delta_f(x: &SpacePair, f: &Polynomial) -> Result<u64> {
    delta_f_with_rule(x, f, PairRule::LexLeast)
}

pub fn delta_f_with_rule(x: &SpacePair, f: &Polynomial, rule: PairRule) -> Result<u64> {
    let d = quadric_determinant(x, f, rule)?;
    ord_x(&d).ok_or(Error::DegenerateQuadric)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Q44Status {
    Holds,
    Fails,
    Inapplicable,
}

/// Both sides of `ν = 2λ + δ_f − 1`, never assuming the equality.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Q44Verdict {
    pub status: Q44Status,
    pub nu: Option<u64>,
    pub lambda: Option<u64>,
    pub delta: Option<u64>,
    pub rhs: Option<i64>,
    pub reason: Option<String>,
}

impl Q44Verdict {
    fn inapplicable(reason: &Error) -> Self {
        Q44Verdict {
            status: Q44Status::Inapplicable,
            nu: None,
            lambda: None,
            delta: None,
            rhs: None,
            reason: Some(reason.to_string()),
        }
    }
}

impl std::fmt::Display for Q44Verdict {
    fn fmt(&self, fm: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match (self.status, self.nu, self.rhs) {
            (Q44Status::Inapplicable, ..) => write!(
                fm,
                "inapplicable ({})",
                self.reason.as_deref().unwrap_or("unknown reason")
            ),
            (s, Some(nu), Some(rhs)) => write!(
                fm,
                "{} (ν={nu}, 2λ+δ−1={rhs})",
                if s == Q44Status::Holds { "holds" } else { "fails" }
            ),
            (_, _, rhs) => write!(fm, "fails (ν infinite, 2λ+δ−1={rhs:?})"),
        }
    }
}

fn fold_precondition<T>(r: Result<T>) -> Result<std::result::Result<T, Error>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e) if matches!(e.kind(), ErrorKind::Precondition | ErrorKind::NonFinite) => Ok(Err(e)),
        Err(e) => Err(e),
    }
}

/// Computes `ν` and `2λ + δ_f − 1` independently and compares them.
pub fn q44_check(p: &Problem) -> Result<Q44Verdict> {
    q44_with_nu(p, None)
}

fn q44_with_nu(p: &Problem, known_nu: Option<u64>) -> Result<Q44Verdict> {
    let lambda = match fold_precondition(torsion_number(&p.space))? {
        Ok(l) => l,
        Err(e) => return Ok(Q44Verdict::inapplicable(&e)),
    };
    let delta = match fold_precondition(delta_f(&p.space, &p.f))? {
        Ok(d) => d,
        Err(e) => return Ok(Q44Verdict::inapplicable(&e)),
    };
    let rhs = 2 * lambda as i64 + delta as i64 - 1;
    let nu_value = match known_nu {
        Some(v) => Some(v),
        None => match fold_precondition(nu(p))? {
            Ok(v) => Some(v),
            Err(Error::InfiniteNu) => None,
            Err(e) => return Ok(Q44Verdict::inapplicable(&e)),
        },
    };
    let holds = nu_value.is_some_and(|v| v as i64 == rhs);
    Ok(Q44Verdict {
        status: if holds { Q44Status::Holds } else { Q44Status::Fails },
        nu: nu_value,
        lambda: Some(lambda),
        delta: Some(delta),
        rhs: Some(rhs),
        reason: None,
    })
}

/// `J̃ = ξ_E(f)·𝔤 + J¹(f) + 𝔥`.
pub fn j_tilde(p: &Problem) -> Result<Ideal> {
    let j = derlog::jacobian_ideal(&p.split, &p.space, &p.f)?;
    let e = p.split.d0.apply(&p.f);
    let gens = p
        .space
        .sigma()
        .generators()
        .iter()
        .map(|y| y * &e)
        .chain(j.j1.generators().iter().cloned())
        .chain(p.space.equations().iter().cloned())
        .collect::<Vec<_>>();
    Ok(p.space.ideal(gens))
}

/// `J̃ = (𝔥 + J_X(f_k)) ∩ 𝔤`, both sides computed and compared.
pub fn lemma42_check(p: &Problem, k: u32) -> Result<bool> {
    require_primitive(p)?;
    let lhs = j_tilde(p)?;
    let rhs = ideal_ops::intersect(&p.h_plus_jx(&p.f_k(k)), &p.space.sigma())?;
    mora::ideal_equal(&lhs, &rhs)
}

/// Least `k` from which the equality holds for `config.run` consecutive
/// values, searching `config.k_min..=config.k_max`.
pub fn lemma42_sweep(p: &Problem) -> Result<Option<u32>> {
    require_primitive(p)?;
    let lhs = j_tilde(p)?;
    let sigma = p.space.sigma();
    let mut streak_start: Option<u32> = None;
    for k in p.config.k_min..=p.config.k_max {
        let rhs = ideal_ops::intersect(&p.h_plus_jx(&p.f_k(k)), &sigma)?;
        if mora::ideal_equal(&lhs, &rhs)? {
            let start = *streak_start.get_or_insert(k);
            if k + 1 - start >= p.config.run {
                return Ok(Some(start));
            }
        } else {
            streak_start = None;
        }
    }
    Ok(None)
}

/// One row of the Iomdin–Lê series table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRow {
    pub k: u32,
    /// `None` when `f_k` is not isolated at this `k`.
    pub mu: Option<u64>,
    pub predicted: u64,
    pub consistent: bool,
}

/// `μ(f_k)` against `k + 1 + j + ν`.
pub fn series_row(p: &Problem, k: u32, j_plus_nu: u64) -> Result<SeriesRow> {
    let predicted = k as u64 + 1 + j_plus_nu;
    let mu = match milnor_series(p, k) {
        Ok(m) => Some(m),
        Err(Error::NotIsolatedSeries { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(SeriesRow {
        k,
        mu,
        predicted,
        consistent: mu == Some(predicted),
    })
}

/// `μ(f_k) = k + 1 + j + ν`, equivalently `χ(F) = χ(F_k) + (−1)^{dim X}(k+1)`.
pub fn iomdin_consistency(p: &Problem, k: u32) -> Result<bool> {
    let j = jacobian_number(p)?;
    let n = nu(p)?;
    let mu = milnor_series(p, k)?;
    Ok(mu == k as u64 + 1 + j + n)
}

/// `χ(F_k) + (−1)^{dim X}(k+1)` with `χ(F_k) = 1 + (−1)^{dim X − 1}μ(f_k)`.
pub fn chi_from_series(dim_x: usize, k: u32, mu: u64) -> i64 {
    let s = if dim_x.is_multiple_of(2) { 1 } else { -1 };
    let chi_fk = 1 - s * mu as i64;
    chi_fk + s * (k as i64 + 1)
}

/// Rows from `config.k_min` until `config.run` consecutive consistent rows
/// (or `config.k_max`).
pub fn iomdin_sweep(p: &Problem, j_plus_nu: u64) -> Result<Vec<SeriesRow>> {
    let mut rows: Vec<SeriesRow> = Vec::new();
    for k in p.config.k_min..=p.config.k_max {
        rows.push(series_row(p, k, j_plus_nu)?);
        let tail = rows.iter().rev().take(p.config.run as usize);
        if rows.len() >= p.config.run as usize && tail.clone().all(|r| r.consistent) {
            break;
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EkSample {
    pub k: u32,
    pub e_k: Option<u64>,
}

/// Everything computed for one problem.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub dim_x: usize,
    pub p: usize,
    pub weights: Vec<u32>,
    pub primitive_member: bool,
    pub constancy: bool,
    pub j: u64,
    pub nu: u64,
    pub chi: i64,
    pub lambda: Option<u64>,
    pub delta: Option<u64>,
    pub q44: Q44Verdict,
    pub series: Vec<SeriesRow>,
    pub e_k: Vec<EkSample>,
    pub sigma: Option<u64>,
    pub mult: Option<u64>,
}

impl InvariantReport {
    /// `χ = 1 + (−1)^{dim X − 1}(j + ν)`.
    pub fn is_coherent(&self) -> bool {
        self.chi == chi_formula(self.dim_x, self.j, self.nu)
    }
}

/// Runs the whole pipeline. Fails if `f` is not primitive or `j`, `ν` are
/// infinite.
pub fn compute_report(p: &Problem) -> Result<InvariantReport> {
    require_primitive(p)?;
    let j = jacobian_number(p)?;
    let n = nu(p)?;
    let constancy = true; // ν finite is exactly the constancy criterion
    let chi = chi_formula(p.space.dim_x(), j, n);
    let lambda = fold_precondition(torsion_number(&p.space))?.ok();
    let delta = fold_precondition(delta_f(&p.space, &p.f))?.ok();
    let q44 = q44_with_nu(p, Some(n))?;
    let series = iomdin_sweep(p, j + n)?;
    let mut e_samples = Vec::new();
    for row in series.iter().rev().take(p.config.run as usize).rev() {
        e_samples.push(EkSample {
            k: row.k,
            e_k: e_k(p, row.k)?.finite(),
        });
    }
    let (sigma, mult) = sigma_mult(p)?;
    Ok(InvariantReport {
        dim_x: p.space.dim_x(),
        p: p.space.p(),
        weights: p.space.weights().as_slice().to_vec(),
        primitive_member: true,
        constancy,
        j,
        nu: n,
        chi,
        lambda,
        delta,
        q44,
        series,
        e_k: e_samples,
        sigma: sigma.finite(),
        mult: mult.finite(),
    })
}
