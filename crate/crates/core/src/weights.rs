//! Weight inference for weighted homogeneous equations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::monomial::Weights;
use crate::poly::Polynomial;
use crate::rational::Rational;

/// Smallest positive integer weights making every `h` weighted homogeneous.
///
/// The constraints `(m_a − m_b)·w = 0` over all pairs of monomials of each
/// equation must cut out a line; the primitive positive generator of that
/// line is returned.
pub fn infer_weights(hs: &[Polynomial]) -> Result<Weights> {
    let nvars = hs.first().map(Polynomial::nvars).ok_or(Error::AmbiguousWeights)?;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for h in hs {
        if h.is_zero() {
            return Err(Error::PreconditionViolation("zero equation".into()));
        }
        if h.nvars() != nvars {
            return Err(Error::RingMismatch(nvars, h.nvars()));
        }
        let monos: Vec<_> = h.terms().map(|(m, _)| m.clone()).collect();
        for pair in monos.windows(2) {
            rows.push(
                (0..nvars)
                    .map(|i| {
                        Rational::from(pair[0].exponent(i) as i64 - pair[1].exponent(i) as i64)
                    })
                    .collect(),
            );
        }
    }
    let kernel = nullspace(rows, nvars);
    match kernel.len() {
        0 => Err(Error::NoWeights),
        1 => primitive_positive(&kernel[0]).ok_or(Error::NoWeights),
        _ => Err(Error::AmbiguousWeights),
    }
}

fn primitive_positive(v: &[Rational]) -> Option<Weights> {
    let den = Rational::common_denominator(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|q| q.numer() * (&den / q.denom()))
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return None;
    }
    let sign = if ints.iter().any(|x| x.is_negative()) {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let w: Option<Vec<u32>> = ints
        .iter()
        .map(|x| {
            let y = x * &sign / &g;
            if y.is_positive() {
                y.to_u32()
            } else {
                None
            }
        })
        .collect();
    Weights::new(w?).ok()
}

/// Basis of `{w : rows·w = 0}` via reduced row echelon form.
pub(crate) fn nullspace(mut rows: Vec<Vec<Rational>>, ncols: usize) -> Vec<Vec<Rational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x *= &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, p) in row.iter_mut().zip(&pivot) {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[i][free];
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::Ring;

    fn xyz() -> Ring {
        Ring::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn weights_of_a_lines() {
        let r = xyz();
        let h = r.parse("x^1*y + x^0*z^2 + y*z").unwrap();
        assert_eq!(infer_weights(&[h]).unwrap().as_slice(), &[1, 1, 1]);
        let h = r.parse("x^2*y + x*z^2 + y*z").unwrap();
        assert_eq!(infer_weights(&[h]).unwrap().as_slice(), &[1, 3, 2]);
    }

    #[test]
    fn general_family_matches_closed_form() {
        // w = (1, s + l, l) for x^l y + x^s z^2 + y z
        let r = xyz();
        for l in 1..5u32 {
            for s in 0..6u32 {
                let h = r.parse(&format!("x^{l}*y + x^{s}*z^2 + y*z")).unwrap();
                assert_eq!(infer_weights(&[h]).unwrap().as_slice(), &[1, s + l, l]);
            }
        }
    }

    #[test]
    fn single_monomial_is_ambiguous() {
        let h = xyz().parse("x*y").unwrap();
        assert_eq!(infer_weights(&[h]), Err(Error::AmbiguousWeights));
    }

    #[test]
    fn inconsistent_system_has_no_weights() {
        let r = xyz();
        // x = y^2, y = x^2 forces w = 0
        let hs = [
            r.parse("x - y^2 + z").unwrap(),
            r.parse("y - x^2").unwrap(),
        ];
        assert_eq!(infer_weights(&hs), Err(Error::NoWeights));
        // x·y = z forces w_x + w_y = w_z, and z^2 = x forces a nonpositive entry
        let hs = [r.parse("x*y - z").unwrap(), r.parse("x - z^2").unwrap()];
        assert_eq!(infer_weights(&hs), Err(Error::NoWeights));
    }
}
