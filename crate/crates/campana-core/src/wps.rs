//! Weighted projective spaces as fans: well-formed weights, canonical fan
//! construction, and weight recovery from a fan.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::{integer_kernel, row_hermite_basis};

/// Positive weights `(q_0, ..., q_n)`, `n >= 1`, in caller order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Weights {
    values: Vec<u64>,
}

impl Weights {
    pub fn new(values: Vec<u64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewWeights);
        }
        if values.contains(&0) {
            return Err(Error::ZeroWeight);
        }
        Ok(Weights { values })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Fan dimension `n` for weights `(q_0, ..., q_n)`.
    pub fn dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn sorted(&self) -> Weights {
        let mut values = self.values.clone();
        values.sort_unstable();
        Weights { values }
    }

    pub fn product(&self) -> BigInt {
        self.values.iter().fold(BigInt::one(), |acc, &q| acc * q)
    }

    /// Every n-element subset of the n+1 weights has gcd 1.
    pub fn well_formed(&self) -> bool {
        self.subset_gcd_witness().is_none()
    }

    fn subset_gcd_witness(&self) -> Option<u64> {
        for omit in 0..self.values.len() {
            let g = self
                .values
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != omit)
                .fold(0u64, |g, (_, &q)| g.gcd(&q));
            if g != 1 {
                return Some(g);
            }
        }
        None
    }
}

fn lcm_all(values: &[u64]) -> BigInt {
    values
        .iter()
        .fold(BigInt::one(), |acc, &q| acc.lcm(&BigInt::from(q)))
}

/// The complete simplicial fan of `P(q_0, ..., q_n)` in a canonical basis of
/// the lattice generated by the scaled projective-space vectors `v_i / q_i`.
///
/// Rays come out in weight order, maximal cones are the n-element subsets
/// (listed by omitted index), and `sum q_i * ray_i = 0` holds exactly in the
/// output coordinates.
pub fn wps_fan(weights: &Weights) -> Result<Fan> {
    if let Some(gcd) = weights.subset_gcd_witness() {
        return Err(Error::NotWellFormed { gcd });
    }
    let n = weights.dim();
    // v_i = standard basis for i < n, v_n = -(v_0 + ... + v_{n-1})
    let v = |i: usize| -> Vec<BigInt> {
        if i < n {
            (0..n)
                .map(|c| {
                    if c == i {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        } else {
            vec![-BigInt::one(); n]
        }
    };
    let scale = lcm_all(weights.values());
    // generators of (scale * N) inside Z^n: (scale / q_i) * v_i
    let gens: Vec<Vec<BigInt>> = (0..=n)
        .map(|i| {
            let f = &scale / BigInt::from(weights.values()[i]);
            v(i).into_iter().map(|c| c * &f).collect()
        })
        .collect();
    let basis = row_hermite_basis(&gens);
    if basis.len() != n {
        return Err(Error::Internal("weight lattice must have full rank".into()));
    }
    // ray_i = coordinates of gen_i in the Hermite basis (forward substitution)
    let mut rays: Vec<Vec<i64>> = Vec::with_capacity(n + 1);
    for gen in &gens {
        let mut x = vec![BigInt::zero(); n];
        for col in 0..n {
            let mut acc = gen[col].clone();
            for (j, xj) in x.iter().enumerate().take(col) {
                acc -= xj * &basis[j][col];
            }
            let (q, r) = acc.div_rem(&basis[col][col]);
            if !r.is_zero() {
                return Err(Error::Internal("generator outside its own lattice".into()));
            }
            x[col] = q;
        }
        let coords: Vec<i64> = x
            .iter()
            .map(|c| {
                c.to_i64()
                    .ok_or(Error::Internal("ray coordinate overflow".into()))
            })
            .collect::<Result<_>>()?;
        rays.push(coords);
    }
    // exact relation sum q_i * ray_i = 0 in the chosen basis
    for c in 0..n {
        let s: i128 = rays
            .iter()
            .zip(weights.values())
            .map(|(r, &q)| r[c] as i128 * q as i128)
            .sum();
        if s != 0 {
            return Err(Error::Internal(
                "weight relation failed in output basis".into(),
            ));
        }
    }
    let cones: Vec<Vec<usize>> = (0..=n)
        .map(|omit| (0..=n).filter(|&i| i != omit).collect())
        .collect();
    Fan::new(n, rays, cones)
}

/// The unique primitive strictly positive relation among the rays of a
/// complete simplicial fan with `dim + 1` rays, sorted ascending. Inverts
/// [`wps_fan`] up to ordering.
pub fn recover_weights(fan: &Fan) -> Result<Weights> {
    if fan.rays().len() != fan.dim() + 1 {
        return Err(Error::DimensionMismatch {
            left: fan.rays().len(),
            right: fan.dim() + 1,
        });
    }
    let kernel = integer_kernel(&fan.ray_matrix())?;
    if kernel.len() != 1 {
        return Err(Error::NoPositiveWeights);
    }
    let gen = &kernel[0];
    if gen.iter().any(|c| c.sign() != Sign::Plus) {
        return Err(Error::NoPositiveWeights);
    }
    let mut weights: Vec<u64> = gen
        .iter()
        .map(|c| c.to_u64().ok_or(Error::Internal("weight overflow".into())))
        .collect::<Result<_>>()?;
    weights.sort_unstable();
    Weights::new(weights)
}
