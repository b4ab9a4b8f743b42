//! Exact rational evaluation of the curvature formulas, used as an oracle
//! for rational metrics.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::model::SpaceModel;

fn big(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn value(t: &crate::model::Triple) -> BigRational {
    let v = t.value();
    BigRational::new(BigInt::from(*v.numer()), BigInt::from(*v.denom()))
}

/// Rational coordinates from integers.
pub fn coords(x: &[i64]) -> Vec<BigRational> {
    x.iter().map(|&v| big(v)).collect()
}

pub fn rho(space: &SpaceModel, x: &[BigRational]) -> Vec<BigRational> {
    let mut sums = vec![BigRational::zero(); x.len()];
    for t in space.triples() {
        let v = value(t);
        let idx = t.zero_based();
        let mut members = idx.to_vec();
        members.dedup();
        for &k in &members {
            let mut rest = idx.to_vec();
            let pos = rest.iter().position(|&m| m == k).unwrap();
            rest.remove(pos);
            let (i, j) = (rest[0], rest[1]);
            let ordered = if i == j { big(1) } else { big(2) };
            let num = &x[k] * &x[k] - &x[i] * &x[i] - &x[j] * &x[j];
            sums[k] += ordered * &v * num / (&x[i] * &x[j] * &x[k]);
        }
    }
    x.iter()
        .zip(space.dims())
        .zip(sums)
        .map(|((xk, &d), s)| {
            BigRational::new(BigInt::from(1), BigInt::from(2)) / xk + s / big(4 * i64::from(d))
        })
        .collect()
}

/// `max_k |2ρ_k − mean| / mean` in exact arithmetic.
pub fn residual(space: &SpaceModel, x: &[BigRational]) -> BigRational {
    let rho = rho(space, x);
    let mean =
        rho.iter().fold(BigRational::zero(), |acc, r| acc + r) * big(2) / big(rho.len() as i64);
    rho.iter()
        .map(|r| (r * big(2) - &mean).abs())
        .fold(BigRational::zero(), |acc, v| if v > acc { v } else { acc })
        / mean.abs()
}

pub fn two_rho_mean(space: &SpaceModel, x: &[BigRational]) -> BigRational {
    let rho = rho(space, x);
    rho.iter().fold(BigRational::zero(), |acc, r| acc + r) * big(2) / big(rho.len() as i64)
}

pub fn scalar(space: &SpaceModel, x: &[BigRational]) -> BigRational {
    let mut first = BigRational::zero();
    for (xk, &d) in x.iter().zip(space.dims()) {
        first += big(i64::from(d)) / xk;
    }
    let mut second = BigRational::zero();
    for t in space.triples() {
        let v = value(t);
        let idx = t.zero_based();
        let mut perms: Vec<[usize; 3]> = vec![
            [idx[0], idx[1], idx[2]],
            [idx[0], idx[2], idx[1]],
            [idx[1], idx[0], idx[2]],
            [idx[1], idx[2], idx[0]],
            [idx[2], idx[0], idx[1]],
            [idx[2], idx[1], idx[0]],
        ];
        perms.sort_unstable();
        perms.dedup();
        for [i, j, k] in perms {
            second += &v * &x[k] / (&x[i] * &x[j]);
        }
    }
    first / big(2) - second / big(4)
}

/// The matrix `D^{−1/2} [L_p] D^{1/2}` with `D = diag(d_k)`; it is rational,
/// shares the spectrum of the stability matrix and equals it when all
/// dimensions agree.
pub fn stability_similar(space: &SpaceModel, x: &[BigRational]) -> Vec<Vec<BigRational>> {
    let r = x.len();
    let mut m = vec![vec![BigRational::zero(); r]; r];
    for t in space.triples() {
        let v = value(t);
        let idx = t.zero_based();
        let mut perms: Vec<[usize; 3]> = vec![
            [idx[0], idx[1], idx[2]],
            [idx[0], idx[2], idx[1]],
            [idx[1], idx[0], idx[2]],
            [idx[1], idx[2], idx[0]],
            [idx[2], idx[0], idx[1]],
            [idx[2], idx[1], idx[0]],
        ];
        perms.sort_unstable();
        perms.dedup();
        for &[i, j, k] in &perms {
            if i != k && j != k {
                m[k][k] += &v * &x[k] / (&x[i] * &x[j]);
            }
            // entry (j, k) with summation index i
            if j != k {
                let num = &x[i] * &x[i] - &x[j] * &x[j] - &x[k] * &x[k];
                m[j][k] += &v * num / (&x[i] * &x[j] * &x[k]);
            }
        }
        let mut members = idx.to_vec();
        members.dedup();
        for &k in &members {
            if idx.iter().filter(|&&q| q == k).count() == 2 {
                let i = *idx.iter().find(|&&q| q != k).unwrap();
                m[k][k] += &v * &x[i] / (&x[k] * &x[k]);
            }
        }
    }
    // D^{-1/2} (D^{-1/2} S D^{-1/2}) D^{1/2} = D^{-1} S
    for (k, row) in m.iter_mut().enumerate() {
        let d = big(i64::from(space.dims()[k]));
        for entry in row.iter_mut() {
            *entry = &*entry / &d;
        }
    }
    m
}

pub fn to_f64(v: &BigRational) -> f64 {
    v.to_f64().unwrap_or(f64::NAN)
}
