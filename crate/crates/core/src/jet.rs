//! Brute-force dimensions and memberships on truncated jet spaces.
//!
//! `O/(I + m^N)` is the quotient of the finite dimensional space of
//! polynomials of degree below `N` by the span of all `μ·g` truncated below
//! `N`, for monomials `μ` and generators `g`. Nothing here touches the
//! standard basis engine; the point is to check it.
//!
//! The row space is kept in echelon form with each row led by its
//! lowest-degree monomial. Truncating further to some `N' < N` keeps exactly
//! the rows led below degree `N'`, so one elimination answers every smaller
//! `N'` as well.

use std::collections::HashMap;

use crate::monomial::Monomial;
use crate::mora::Ideal;
use crate::poly::Polynomial;
use crate::rational::Rational;

type Row = Vec<(usize, Rational)>;

/// Monomials of degree below `n`, numbered by degree first.
#[derive(Clone, Debug)]
struct Columns {
    monos: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// `start[d]` is the first column of degree `d`.
    start: Vec<usize>,
}

impl Columns {
    fn new(nvars: usize, n: u32) -> Self {
        let mut monos = Vec::new();
        let mut start = Vec::new();
        for d in 0..n {
            start.push(monos.len());
            let mut exps = vec![0u32; nvars];
            push_degree(&mut monos, &mut exps, 0, d);
        }
        start.push(monos.len());
        let index = monos.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Columns { monos, index, start }
    }

    fn below(&self, n: u32) -> usize {
        self.start[(n as usize).min(self.start.len() - 1)]
    }

    fn degree_of(&self, col: usize) -> u32 {
        self.monos[col].degree() as u32
    }

    /// The terms of `p` of degree below the truncation, as a sorted row.
    fn row(&self, p: &Polynomial) -> Row {
        let mut row: Row = p
            .terms()
            .filter_map(|(m, c)| self.index.get(m).map(|&i| (i, c.clone())))
            .collect();
        row.sort_by_key(|(i, _)| *i);
        row
    }
}

fn push_degree(out: &mut Vec<Monomial>, exps: &mut Vec<u32>, i: usize, left: u32) {
    if i + 1 == exps.len() {
        exps[i] = left;
        out.push(Monomial::new(exps.iter().copied()));
        exps[i] = 0;
        return;
    }
    for e in (0..=left).rev() {
        exps[i] = e;
        push_degree(out, exps, i + 1, left - e);
    }
    exps[i] = 0;
}

/// `row − c·pivot`, both sorted by column.
fn sub_scaled(row: &Row, c: &Rational, pivot: &Row) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (0, 0);
    while a < row.len() || b < pivot.len() {
        let ka = row.get(a).map(|t| t.0);
        let kb = pivot.get(b).map(|t| t.0);
        match (ka, kb) {
            (Some(x), Some(y)) if x == y => {
                let v = &row[a].1 - &(c * &pivot[b].1);
                if !v.is_zero() {
                    out.push((x, v));
                }
                a += 1;
                b += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(row[a].clone());
                a += 1;
            }
            (Some(_), None) => {
                out.push(row[a].clone());
                a += 1;
            }
            (_, Some(y)) => {
                out.push((y, -(c * &pivot[b].1)));
                b += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Echelon form of `I + m^N` inside the polynomials of degree below `N`.
#[derive(Clone, Debug)]
pub struct JetSpace {
    nvars: usize,
    n: u32,
    cols: Columns,
    /// `pivots[c]` is the row led by column `c`, normalized to lead 1.
    pivots: Vec<Option<Row>>,
}

impl JetSpace {
    pub fn new(generators: &[Polynomial], nvars: usize, n: u32) -> Self {
        let cols = Columns::new(nvars, n);
        let mut space = JetSpace {
            nvars,
            n,
            pivots: vec![None; cols.monos.len()],
            cols,
        };
        // sparse rows first: large multipliers leave only the lowest terms
        let mut mults: Vec<Monomial> = space.cols.monos.clone();
        mults.reverse();
        for mu in &mults {
            for g in generators {
                let lowest = g.terms().map(|(m, _)| m.degree()).min();
                if lowest.is_none_or(|d| d + mu.degree() >= n as u64) {
                    continue;
                }
                let p = g.mul_term(mu, &Rational::one());
                let row = space.cols.row(&p);
                space.insert(row);
            }
        }
        space
    }

    pub fn of_ideal(i: &Ideal, n: u32) -> Self {
        JetSpace::new(i.generators(), i.nvars(), n)
    }

    pub fn truncation(&self) -> u32 {
        self.n
    }

    fn reduce(&self, mut row: Row) -> Row {
        while let Some((lead, c)) = row.first().cloned() {
            match &self.pivots[lead] {
                Some(p) => row = sub_scaled(&row, &c, p),
                None => break,
            }
        }
        row
    }

    fn insert(&mut self, row: Row) {
        let row = self.reduce(row);
        if let Some((lead, c)) = row.first().cloned() {
            let inv = c.recip();
            let normalized = row.into_iter().map(|(i, v)| (i, &v * &inv)).collect();
            self.pivots[lead] = Some(normalized);
        }
    }

    /// `dim O/(I + m^k)` for `k ≤ N`.
    pub fn dim_below(&self, k: u32) -> u64 {
        let k = k.min(self.n);
        let cols = self.cols.below(k);
        let rank = self.pivots[..cols].iter().filter(|p| p.is_some()).count();
        (cols - rank) as u64
    }

    pub fn dim(&self) -> u64 {
        self.dim_below(self.n)
    }

    /// Whether `f mod m^k` lies in the row space truncated below `k ≤ N`.
    pub fn contains_below(&self, f: &Polynomial, k: u32) -> bool {
        assert_eq!(f.nvars(), self.nvars, "polynomial from a different ring");
        let k = k.min(self.n);
        let mut row = self.cols.row(f);
        row.retain(|(i, _)| self.cols.degree_of(*i) < k);
        while let Some((lead, c)) = row.first().cloned() {
            match &self.pivots[lead] {
                Some(p) => {
                    row = sub_scaled(&row, &c, p);
                    row.retain(|(i, _)| self.cols.degree_of(*i) < k);
                }
                None => return false,
            }
        }
        true
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.contains_below(f, self.n)
    }

    /// Least `k < N` with `dim(k) = dim(k + 1)`. By Nakayama this forces
    /// `m^k ⊆ I`, and then `dim(k)` is the colength of `I`.
    pub fn stabilization(&self) -> Option<u32> {
        (1..self.n).find(|&k| self.dim_below(k) == self.dim_below(k + 1))
    }
}

/// `dim O/(I + m^N)`.
pub fn jet_dim(i: &Ideal, n: u32) -> u64 {
    JetSpace::of_ideal(i, n).dim()
}

/// `f ∈ I + m^N`.
pub fn jet_member(f: &Polynomial, i: &Ideal, n: u32) -> bool {
    JetSpace::of_ideal(i, n).contains(f)
}

/// The stable value of `jet_dim(I, N)` with the first `N` where it is
/// reached, trying truncations up to `n_max`.
pub fn stable_jet_dim(i: &Ideal, n_max: u32) -> Option<(u64, u32)> {
    let mut n = 8.min(n_max);
    loop {
        let space = JetSpace::of_ideal(i, n);
        if let Some(k) = space.stabilization() {
            return Some((space.dim_below(k), k));
        }
        if n >= n_max {
            return None;
        }
        n = (2 * n).min(n_max);
    }
}
