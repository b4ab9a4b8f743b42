//! Univariate polynomials with rational coefficients and exact real-root
//! isolation by Sturm sequences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PolyError {
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("interval bound {0} is not a number")]
    BadBound(f64),
}

/// Coefficients in ascending degree; the leading one is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigRational>,
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigRational>) -> Result<Self, PolyError> {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(Self { coeffs })
    }

    /// Integer coefficients, highest degree first: `[27, -270, 1008, …]`.
    pub fn from_descending(coeffs: &[i64]) -> Result<Self, PolyError> {
        Self::new(coeffs.iter().rev().map(|&c| int(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> &BigRational {
        self.coeffs.last().unwrap()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// `None` for constants.
    pub fn derivative(&self) -> Option<Self> {
        if self.degree() == 0 {
            return None;
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * int(i as i64))
            .collect();
        Self::new(coeffs).ok()
    }

    /// Remainder of division by `divisor`; `None` when it vanishes.
    fn rem(&self, divisor: &Self) -> Option<Self> {
        let mut r = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        while r.len() > dd && !r.is_empty() {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Self::new(r).ok()
    }

    fn quotient(&self, divisor: &Self) -> Self {
        let mut r = self.coeffs.clone();
        let dd = divisor.degree();
        let lead = divisor.leading();
        let mut q = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while r.len() > dd {
            let shift = r.len() - 1 - dd;
            let factor = r.last().unwrap() / lead;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                r[shift + i] -= &factor * c;
            }
            q[shift] = factor;
            r.pop();
        }
        Self::new(q).expect("divisor degree does not exceed dividend")
    }

    fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while let Some(r) = a.rem(&b) {
            a = b;
            b = r;
        }
        b
    }

    /// The product of the distinct irreducible factors, made monic.
    pub fn squarefree(&self) -> Self {
        let Some(d) = self.derivative() else {
            return self.clone();
        };
        let g = self.gcd(&d);
        let q = self.quotient(&g);
        let lead = q.leading().clone();
        Self::new(q.coeffs.iter().map(|c| c / &lead).collect()).unwrap()
    }

    pub fn sturm_sequence(&self) -> Vec<Self> {
        let mut seq = vec![self.clone()];
        if let Some(d) = self.derivative() {
            seq.push(d);
            loop {
                let n = seq.len();
                match seq[n - 2].rem(&seq[n - 1]) {
                    Some(r) => seq.push(Self::new(r.coeffs.iter().map(|c| -c).collect()).unwrap()),
                    None => break,
                }
            }
        }
        seq
    }

    /// `1 + max |a_i / a_n|`; every root lies strictly inside `(−B, B)`.
    pub fn cauchy_bound(&self) -> BigRational {
        let lead = self.leading().abs();
        self.coeffs[..self.degree()]
            .iter()
            .map(|c| c.abs() / &lead)
            .fold(BigRational::zero(), |acc, v| if v > acc { v } else { acc })
            + BigRational::one()
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let coef = if a.is_one() && i > 0 {
                String::new()
            } else {
                a.to_string()
            };
            match i {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{coef}x")?,
                _ => write!(f, "{coef}x^{i}")?,
            }
        }
        Ok(())
    }
}

fn sign_changes(seq: &[Polynomial], x: &BigRational) -> usize {
    let signs: Vec<i8> = seq
        .iter()
        .map(|p| {
            let v = p.eval(x);
            if v.is_positive() {
                1
            } else if v.is_negative() {
                -1
            } else {
                0
            }
        })
        .filter(|&s| s != 0)
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// An interval `[lo, hi]` holding exactly one root of a squarefree polynomial;
/// `lo == hi` marks an exact rational root.
#[derive(Debug, Clone, PartialEq)]
pub struct RootInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RootInterval {
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }
}

/// Exact isolation of every real root of `p`, ascending.
pub fn isolate_roots(p: &Polynomial) -> Vec<RootInterval> {
    let q = p.squarefree();
    if q.degree() == 0 {
        return Vec::new();
    }
    let seq = q.sturm_sequence();
    let bound = q.cauchy_bound();
    let count = |a: &BigRational, b: &BigRational| sign_changes(&seq, a) - sign_changes(&seq, b);
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((a, b)) = stack.pop() {
        match count(&a, &b) {
            0 => {}
            1 => out.push(RootInterval { lo: a, hi: b }),
            _ => {
                let mid = (&a + &b) / int(2);
                if q.eval(&mid).is_zero() {
                    let mut delta = (&b - &a) / int(4);
                    loop {
                        let (l, h) = (&mid - &delta, &mid + &delta);
                        if !q.eval(&l).is_zero() && !q.eval(&h).is_zero() && count(&l, &h) == 1 {
                            stack.push((a.clone(), l));
                            stack.push((h, b.clone()));
                            break;
                        }
                        delta /= int(2);
                    }
                    out.push(RootInterval {
                        lo: mid.clone(),
                        hi: mid,
                    });
                } else {
                    stack.push((a, mid.clone()));
                    stack.push((mid, b));
                }
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// Shrinks an isolating interval of `p` by bisection until its width is at
/// most `width`.
pub fn refine_interval(
    p: &Polynomial,
    interval: &RootInterval,
    width: &BigRational,
) -> RootInterval {
    let q = p.squarefree();
    let mut iv = interval.clone();
    if iv.lo == iv.hi {
        return iv;
    }
    let mut lo_sign = q.eval(&iv.lo).signum();
    while &iv.width() > width {
        let mid = iv.midpoint();
        let v = q.eval(&mid);
        if v.is_zero() {
            return RootInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if v.signum() == lo_sign {
            iv.lo = mid;
            lo_sign = v.signum();
        } else {
            iv.hi = mid;
        }
    }
    iv
}

/// Real roots in the open interval `(lo, hi)`, ascending, each accurate to
/// about `1e-15` relative. Infinite bounds are allowed.
pub fn real_roots(p: &Polynomial, lo: f64, hi: f64) -> Result<Vec<f64>, PolyError> {
    for b in [lo, hi] {
        if b.is_nan() {
            return Err(PolyError::BadBound(b));
        }
    }
    Ok(real_root_intervals(p, lo, hi, 60)
        .iter()
        .map(|iv| iv.midpoint().to_f64().unwrap_or(f64::NAN))
        .collect())
}

/// Isolating intervals for the roots in `(lo, hi)`, refined to a relative
/// width of `2^-bits`.
pub fn real_root_intervals(p: &Polynomial, lo: f64, hi: f64, bits: u32) -> Vec<RootInterval> {
    let bound = |v: f64| {
        (v.is_finite())
            .then(|| BigRational::from_float(v))
            .flatten()
    };
    let (lo, hi) = (bound(lo), bound(hi));
    let scale = BigRational::new(BigInt::one(), BigInt::one() << bits);
    let q = p.squarefree();
    let root_bounds: Vec<&BigRational> = [&lo, &hi]
        .into_iter()
        .flatten()
        .filter(|b| q.eval(b).is_zero())
        .collect();
    isolate_roots(p)
        .into_iter()
        .filter_map(|iv| {
            // each interval holds one root, so a root on a bound is that root
            if root_bounds.iter().any(|&b| &iv.lo <= b && b <= &iv.hi) {
                return None;
            }
            let magnitude = iv.lo.abs().max(iv.hi.abs()).max(BigRational::one());
            let mut iv = refine_interval(p, &iv, &(&scale * magnitude));
            loop {
                let below = lo.as_ref().is_some_and(|l| &iv.hi <= l);
                let above = hi.as_ref().is_some_and(|h| &iv.lo >= h);
                if below || above {
                    return None;
                }
                let straddles = lo.as_ref().is_some_and(|l| &iv.lo <= l)
                    || hi.as_ref().is_some_and(|h| &iv.hi >= h);
                if !straddles {
                    return Some(iv);
                }
                iv = refine_interval(p, &iv, &(iv.width() / int(2)));
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_has_two_positive_roots() {
        let p = Polynomial::from_descending(&[27, -270, 1008, -1700, 1129]).unwrap();
        let roots = real_roots(&p, 0.0, f64::INFINITY).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(p.eval_f64(*r).abs() < 1e-9);
        }
        assert!((2.0 * roots[0] - 5.8586).abs() < 1e-4);
        assert!((2.0 * roots[1] - 6.9152).abs() < 1e-4);
    }

    #[test]
    fn cubic_and_sextic() {
        let cubic = Polynomial::from_descending(&[14, -277, 1819, -3967]).unwrap();
        let roots = real_roots(&cubic, 0.0, f64::INFINITY).unwrap();
        assert_eq!(roots.len(), 1);
        assert!((roots[0] - 7.4806).abs() < 1e-4);
        let sextic =
            Polynomial::from_descending(&[17500, -113750, 316325, -490500, 447800, -225550, 48503])
                .unwrap();
        assert_eq!(
            real_roots(&sextic, f64::NEG_INFINITY, f64::INFINITY)
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn no_real_roots() {
        let p = Polynomial::from_descending(&[1, 0, 1]).unwrap();
        assert!(real_roots(&p, f64::NEG_INFINITY, f64::INFINITY)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn exact_and_repeated_roots() {
        // (x − 1)^2 (x + 2) x = x^4 − 3x^2 + 2x
        let p = Polynomial::from_descending(&[1, 0, -3, 2, 0]).unwrap();
        let all = real_roots(&p, f64::NEG_INFINITY, f64::INFINITY).unwrap();
        assert_eq!(all, vec![-2.0, 0.0, 1.0]);
        // open interval drops the root on its bound
        assert_eq!(real_roots(&p, 0.0, 5.0).unwrap(), vec![1.0]);
        assert_eq!(real_roots(&p, -2.0, 1.0).unwrap(), vec![0.0]);
    }

    #[test]
    fn sturm_count_matches_roots() {
        let p = Polynomial::from_descending(&[1, 0, -2]).unwrap();
        let iv = isolate_roots(&p);
        assert_eq!(iv.len(), 2);
        let fine = refine_interval(
            &p,
            &iv[1],
            &BigRational::new(BigInt::one(), BigInt::one() << 130),
        );
        let sqrt2 = fine.midpoint().to_f64().unwrap();
        assert_eq!(sqrt2, 2f64.sqrt());
        assert_eq!(p.to_string(), "x^2 - 2");
    }
}
