//! Campana orbifold data, ray-supported contact orders, and the rank/torsion
//! certificate checker.
//!
//! A certificate bundles the five conditions certification rests on:
//! the contact orders balance to zero, they are of Campana type for the
//! orbifold multiplicities, the sublattice they generate has full rank, its
//! quotient has no p-torsion, and (reported separately, not required for
//! certification) no coefficient is divisible by p. `certified` means the
//! first four hold; a failing certificate only ever means "not certified
//! by this collection", never a refutation.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::linalg::elementary_divisors_of_sublattice;
use crate::modp::Prime;

/// Per-ray multiplicity `m` of the boundary divisor weight `1 - 1/m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Multiplicity {
    Finite(u64),
    Infinite,
}

impl Multiplicity {
    pub fn is_infinite(self) -> bool {
        matches!(self, Multiplicity::Infinite)
    }

    /// Smallest admissible positive coefficient for a marking on this ray.
    pub fn floor(self) -> BigInt {
        match self {
            Multiplicity::Finite(m) => BigInt::from(m.max(1)),
            Multiplicity::Infinite => BigInt::one(),
        }
    }
}

/// A fan together with a multiplicity for each ray.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampanaOrbifold {
    fan: Fan,
    multiplicities: Vec<Multiplicity>,
}

impl CampanaOrbifold {
    pub fn new(fan: Fan, multiplicities: Vec<Multiplicity>) -> Result<Self> {
        if multiplicities.len() != fan.rays().len() {
            return Err(Error::MultiplicityCount {
                expected: fan.rays().len(),
                got: multiplicities.len(),
            });
        }
        for (ray, m) in multiplicities.iter().enumerate() {
            if matches!(m, Multiplicity::Finite(0)) {
                return Err(Error::ZeroMultiplicity { ray });
            }
        }
        Ok(CampanaOrbifold {
            fan,
            multiplicities,
        })
    }

    /// All multiplicities infinite.
    pub fn absolute(fan: Fan) -> Self {
        let n = fan.rays().len();
        CampanaOrbifold {
            fan,
            multiplicities: alloc::vec![Multiplicity::Infinite; n],
        }
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    pub fn multiplicities(&self) -> &[Multiplicity] {
        &self.multiplicities
    }

    pub fn is_absolute(&self) -> bool {
        self.multiplicities.iter().all(|m| m.is_infinite())
    }

    pub fn is_non_klt(&self) -> bool {
        self.multiplicities.iter().any(|m| m.is_infinite())
    }
}

/// One ray-supported contact order: the lattice point `coeff * u_ray`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Marking {
    pub ray: usize,
    pub coeff: BigInt,
}

/// A collection of positive ray-supported contact orders.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ContactOrderSet {
    markings: Vec<Marking>,
}

impl ContactOrderSet {
    pub fn new(markings: Vec<Marking>) -> Result<Self> {
        for (i, m) in markings.iter().enumerate() {
            if m.coeff < BigInt::one() {
                return Err(Error::NonPositiveCoefficient { marking: i });
            }
        }
        Ok(ContactOrderSet { markings })
    }

    /// One marking per ray with the given positive coefficients.
    pub fn from_coefficients(coeffs: &[BigInt]) -> Result<Self> {
        ContactOrderSet::new(
            coeffs
                .iter()
                .enumerate()
                .map(|(ray, c)| Marking {
                    ray,
                    coeff: c.clone(),
                })
                .collect(),
        )
    }

    pub fn markings(&self) -> &[Marking] {
        &self.markings
    }

    pub fn check_indices(&self, fan: &Fan) -> Result<()> {
        for (i, m) in self.markings.iter().enumerate() {
            if m.ray >= fan.rays().len() {
                return Err(Error::MarkingRayIndex {
                    marking: i,
                    ray: m.ray,
                });
            }
        }
        Ok(())
    }

    /// Markings sorted by (ray, coefficient); the canonical comparison form.
    pub fn canonical(&self) -> ContactOrderSet {
        let mut markings = self.markings.clone();
        markings.sort();
        ContactOrderSet { markings }
    }

    /// The lattice points `coeff * u_ray`, one per marking.
    pub fn lattice_points(&self, fan: &Fan) -> Vec<Vec<BigInt>> {
        self.markings
            .iter()
            .map(|m| {
                fan.ray(m.ray)
                    .to_bigints()
                    .into_iter()
                    .map(|c| c * &m.coeff)
                    .collect()
            })
            .collect()
    }
}

/// Outcome of [`scrc_check`]; see the module docs for the semantics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub rank: usize,
    pub elementary_divisors: Vec<BigInt>,
    pub p_torsion_free: bool,
    pub good_contact_orders: bool,
    pub balanced: bool,
    pub campana_type: bool,
}

impl Certificate {
    pub fn certified(&self) -> bool {
        self.balanced && self.campana_type && self.p_torsion_free
    }
}

/// Do the contact orders sum to zero in the lattice?
pub fn balancing_check(sigma: &ContactOrderSet, fan: &Fan) -> bool {
    let mut total = alloc::vec![BigInt::zero(); fan.dim()];
    for point in sigma.lattice_points(fan) {
        for (t, c) in total.iter_mut().zip(point) {
            *t += c;
        }
    }
    total.iter().all(Zero::is_zero)
}

/// Campana type: coefficients on a finite-multiplicity ray reach at least the
/// multiplicity, and an infinite-multiplicity ray carries at most one marking.
pub fn campana_type_check(sigma: &ContactOrderSet, orb: &CampanaOrbifold) -> bool {
    for (ray, m) in orb.multiplicities().iter().enumerate() {
        let on_ray = sigma.markings().iter().filter(|mk| mk.ray == ray);
        match m {
            Multiplicity::Finite(bound) => {
                let bound = BigInt::from(*bound);
                if on_ray.clone().any(|mk| mk.coeff < bound) {
                    return false;
                }
            }
            Multiplicity::Infinite => {
                if on_ray.count() > 1 {
                    return false;
                }
            }
        }
    }
    true
}

/// Full certificate for a collection of contact orders on an orbifold at
/// characteristic `p`. Marking ray indices must be valid for the fan.
pub fn scrc_check(sigma: &ContactOrderSet, orb: &CampanaOrbifold, p: Prime) -> Certificate {
    let fan = orb.fan();
    let d = fan.dim();
    let balanced = balancing_check(sigma, fan);
    let campana_type = campana_type_check(sigma, orb);
    let gens = sigma.lattice_points(fan);
    let (rank, elementary_divisors) = elementary_divisors_of_sublattice(&gens, d);
    let p_torsion_free = rank == d && !elementary_divisors.iter().any(|e| p.divides(e));
    let good_contact_orders = sigma.markings().iter().all(|m| !p.divides(&m.coeff));
    Certificate {
        rank,
        elementary_divisors,
        p_torsion_free,
        good_contact_orders,
        balanced,
        campana_type,
    }
}
