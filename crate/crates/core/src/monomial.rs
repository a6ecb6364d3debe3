//! Monomials, weight vectors and the two monomial orders used by the kernel.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Exponent vector `z_0^{e_0} ... z_n^{e_n}`. The all-zero vector is `1`.
///
/// The derived `Ord` is plain lexicographic on exponents and only serves as a
/// storage key; leading terms are always decided by a [`MonomialOrder`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(SmallVec<[u32; 5]>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(SmallVec::from_elem(0, nvars))
    }

    pub fn new(exponents: impl IntoIterator<Item = u32>) -> Self {
        Monomial(exponents.into_iter().collect())
    }

    /// `z_var^power` in a ring with `nvars` variables.
    pub fn var_power(nvars: usize, var: usize, power: u32) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[var] = power;
        m
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0[var]
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn weighted_degree(&self, w: &Weights) -> u64 {
        weighted_degree(self, w)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.nvars(), other.nvars());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `true` iff `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, if `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(
                self.0.iter().zip(&other.0).map(|(a, b)| b - a).collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Appends `extra` zero exponents (ring extension by new variables).
    pub fn extended(&self, extra: usize) -> Monomial {
        let mut e = self.0.clone();
        e.extend(std::iter::repeat_n(0, extra));
        Monomial(e)
    }

    /// Keeps the first `nvars` exponents.
    pub fn truncated(&self, nvars: usize) -> Monomial {
        Monomial(self.0[..nvars].iter().copied().collect())
    }

    /// Index of the single variable this monomial is a pure power of.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.0.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Positive integer weights, one per variable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Weights(Vec<u32>);

impl Weights {
    pub fn new(w: Vec<u32>) -> Result<Self> {
        if w.is_empty() || w.contains(&0) {
            return Err(Error::InvalidWeights(w));
        }
        Ok(Weights(w))
    }

    pub fn standard(nvars: usize) -> Self {
        Weights(vec![1; nvars])
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn extended(&self, extra: &[u32]) -> Weights {
        let mut w = self.0.clone();
        w.extend_from_slice(extra);
        Weights(w)
    }
}

impl TryFrom<Vec<u32>> for Weights {
    type Error = Error;
    fn try_from(w: Vec<u32>) -> Result<Self> {
        Weights::new(w)
    }
}

impl From<Weights> for Vec<u32> {
    fn from(w: Weights) -> Vec<u32> {
        w.0
    }
}

/// `Σ exponents[i]·w[i]`.
pub fn weighted_degree(m: &Monomial, w: &Weights) -> u64 {
    debug_assert_eq!(m.nvars(), w.len());
    m.exponents()
        .iter()
        .zip(w.as_slice())
        .map(|(&e, &wi)| e as u64 * wi as u64)
        .sum()
}

/// The monomial orders the engine understands.
///
/// `LocalWeighted`: lower weighted degree is larger, ties broken reverse
/// lexicographically (larger exponent in the last differing position loses).
/// `1` is the maximal monomial.
///
/// `MixedElimination`: the total degree in the `global` block decides first
/// (higher is larger); ties fall through to the local order on the other
/// variables, then to lex on the global block. `local` has one entry per
/// variable; entries for global variables only feed the écart.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    LocalWeighted(Weights),
    MixedElimination { global: Vec<usize>, local: Weights },
}

impl MonomialOrder {
    pub fn local(w: Weights) -> Self {
        MonomialOrder::LocalWeighted(w)
    }

    /// Local degree order with all weights one.
    pub fn local_degree(nvars: usize) -> Self {
        MonomialOrder::LocalWeighted(Weights::standard(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.weights().len()
    }

    /// The weights used for écart computations.
    pub fn weights(&self) -> &Weights {
        match self {
            MonomialOrder::LocalWeighted(w) => w,
            MonomialOrder::MixedElimination { local, .. } => local,
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, MonomialOrder::LocalWeighted(_))
    }

    /// `Greater` means `a ≻ b`.
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::LocalWeighted(w) => local_cmp(a, b, w, |_| true),
            MonomialOrder::MixedElimination { global, local } => {
                let gdeg = |m: &Monomial| -> u64 {
                    global.iter().map(|&i| m.exponent(i) as u64).sum()
                };
                gdeg(a)
                    .cmp(&gdeg(b))
                    .then_with(|| local_cmp(a, b, local, |i| !global.contains(&i)))
                    .then_with(|| {
                        for &i in global {
                            match a.exponent(i).cmp(&b.exponent(i)) {
                                Ordering::Equal => continue,
                                other => return other,
                            }
                        }
                        Ordering::Equal
                    })
            }
        }
    }

    /// The same order on a ring with one extra variable that forms the
    /// global block of a mixed elimination order.
    pub fn eliminating_new_variable(&self) -> MonomialOrder {
        let n = self.nvars();
        match self {
            MonomialOrder::LocalWeighted(w) => MonomialOrder::MixedElimination {
                global: vec![n],
                local: w.extended(&[1]),
            },
            MonomialOrder::MixedElimination { global, local } => {
                let mut global = global.clone();
                global.push(n);
                MonomialOrder::MixedElimination {
                    global,
                    local: local.extended(&[1]),
                }
            }
        }
    }
}

fn local_cmp(a: &Monomial, b: &Monomial, w: &Weights, active: impl Fn(usize) -> bool) -> Ordering {
    let mut da = 0u64;
    let mut db = 0u64;
    for i in 0..a.nvars() {
        if active(i) {
            da += a.exponent(i) as u64 * w.get(i) as u64;
            db += b.exponent(i) as u64 * w.get(i) as u64;
        }
    }
    match db.cmp(&da) {
        Ordering::Equal => {}
        other => return other,
    }
    for i in (0..a.nvars()).rev() {
        if !active(i) {
            continue;
        }
        match a.exponent(i).cmp(&b.exponent(i)) {
            Ordering::Equal => continue,
            // larger exponent in the last differing slot is the smaller monomial
            other => return other.reverse(),
        }
    }
    Ordering::Equal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.iter().copied())
    }

    #[test]
    fn weighted_degree_examples() {
        let w = Weights::new(vec![1, 3, 2]).unwrap();
        assert_eq!(weighted_degree(&m(&[2, 0, 1]), &w), 4);
        assert_eq!(weighted_degree(&m(&[0, 0, 0]), &w), 0);
        let w = Weights::new(vec![1, 2, 1]).unwrap();
        assert_eq!(weighted_degree(&m(&[0, 1, 1]), &w), 3);
    }

    #[test]
    fn local_order_basics() {
        let ord = MonomialOrder::local_degree(3);
        // y ≻ z²
        assert_eq!(ord.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 2])), Ordering::Greater);
        // 1 ≻ x
        assert_eq!(ord.cmp(&m(&[0, 0, 0]), &m(&[1, 0, 0])), Ordering::Greater);
        // revlex tie-break: x ≻ y ≻ z in degree one
        assert_eq!(ord.cmp(&m(&[1, 0, 0]), &m(&[0, 1, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 1, 0]), &m(&[0, 0, 1])), Ordering::Greater);
        let ord = MonomialOrder::local(Weights::new(vec![1, 3, 2]).unwrap());
        assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[3, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn mixed_order_prefers_global_degree() {
        let ord = MonomialOrder::local_degree(2).eliminating_new_variable();
        // t ≻ 1 ≻ x
        assert_eq!(ord.cmp(&m(&[0, 0, 1]), &m(&[0, 0, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[5, 5, 1]), &m(&[0, 0, 0])), Ordering::Greater);
        assert_eq!(ord.cmp(&m(&[0, 0, 0]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn rejects_zero_weights() {
        assert!(Weights::new(vec![1, 0]).is_err());
        assert!(Weights::new(vec![]).is_err());
    }

    fn arb_mono(n: usize) -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..6, n).prop_map(Monomial::new)
    }

    fn orders() -> Vec<MonomialOrder> {
        vec![
            MonomialOrder::local_degree(4),
            MonomialOrder::local(Weights::new(vec![1, 3, 2, 5]).unwrap()),
            MonomialOrder::local(Weights::new(vec![2, 1, 1]).unwrap()).eliminating_new_variable(),
            MonomialOrder::MixedElimination {
                global: vec![0, 2],
                local: Weights::new(vec![1, 2, 1, 3]).unwrap(),
            },
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig { cases: 256, rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed), ..ProptestConfig::default() })]

        #[test]
        fn orders_are_multiplicative(a in arb_mono(4), b in arb_mono(4), c in arb_mono(4)) {
            for ord in orders() {
                let lhs = ord.cmp(&a, &b);
                prop_assert_eq!(ord.cmp(&c.mul(&a), &c.mul(&b)), lhs);
            }
        }

        #[test]
        fn orders_are_total(a in arb_mono(4), b in arb_mono(4)) {
            for ord in orders() {
                prop_assert_eq!(ord.cmp(&a, &b) == Ordering::Equal, a == b);
                prop_assert_eq!(ord.cmp(&a, &b), ord.cmp(&b, &a).reverse());
            }
        }

        #[test]
        fn one_is_maximal_locally(a in arb_mono(4)) {
            let ord = MonomialOrder::local(Weights::new(vec![1, 3, 2, 5]).unwrap());
            if !a.is_one() {
                prop_assert_eq!(ord.cmp(&Monomial::one(4), &a), Ordering::Greater);
            }
        }
    }
}
