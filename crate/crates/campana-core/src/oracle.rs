//! Brute-force ground truth at desk scale: exhaustive enumeration of
//! certified contact-order collections, the structural check that every
//! balanced collection on a weighted projective space is a multiple of the
//! weight relation, and a seeded generator of random complete surface fans
//! for stress tests.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::campana::{balancing_check, scrc_check, CampanaOrbifold, ContactOrderSet, Marking};
use crate::error::{Error, Result};
use crate::fan::Fan;
use crate::modp::Prime;
use crate::rng::SplitMix64;
use crate::wps::{wps_fan, Weights};

/// Enumeration bounds. `max_markings_per_ray` beyond 1 admits multi-marking
/// candidates (several markings on one ray); those violating the at-most-one
/// rule on infinite-multiplicity rays are generated and then filtered, which
/// is what the filter tests rely on.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_coeff: u64,
    pub max_markings_per_ray: u32,
    pub max_candidates: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_coeff: 12,
            max_markings_per_ray: 1,
            max_candidates: 10_000_000,
        }
    }
}

impl SearchBudget {
    pub fn with_max_coeff(max_coeff: u64) -> Self {
        SearchBudget {
            max_coeff,
            ..SearchBudget::default()
        }
    }
}

struct Enumeration<'a> {
    orb: &'a CampanaOrbifold,
    p: Prime,
    budget: &'a SearchBudget,
    examined: u64,
    found: Vec<ContactOrderSet>,
}

impl Enumeration<'_> {
    fn run(&mut self) -> Result<()> {
        let mut markings = Vec::new();
        self.per_ray(0, &mut markings)
    }

    /// Rays with infinite multiplicity get 1..=max markings, finite ones
    /// 0..=max; coefficients per ray are nondecreasing to avoid duplicates.
    fn per_ray(&mut self, ray: usize, markings: &mut Vec<Marking>) -> Result<()> {
        let n = self.orb.fan().rays().len();
        if ray == n {
            return self.candidate(markings);
        }
        let max_k = self.budget.max_markings_per_ray.max(1);
        let min_k = if self.orb.multiplicities()[ray].is_infinite() {
            1
        } else {
            0
        };
        for k in min_k..=max_k {
            self.coefficients(ray, k, 1, markings)?;
        }
        Ok(())
    }

    fn coefficients(
        &mut self,
        ray: usize,
        remaining: u32,
        min_coeff: u64,
        markings: &mut Vec<Marking>,
    ) -> Result<()> {
        if remaining == 0 {
            return self.per_ray(ray + 1, markings);
        }
        for c in min_coeff..=self.budget.max_coeff {
            markings.push(Marking {
                ray,
                coeff: BigInt::from(c),
            });
            self.coefficients(ray, remaining - 1, c, markings)?;
            markings.pop();
        }
        Ok(())
    }

    fn candidate(&mut self, markings: &[Marking]) -> Result<()> {
        self.examined += 1;
        if self.examined > self.budget.max_candidates {
            return Err(Error::BudgetExhausted {
                examined: self.examined,
                found: self.found.clone(),
            });
        }
        let sigma = ContactOrderSet::new(markings.to_vec()).expect("positive coefficients");
        // cheap balance test first; the normal form only runs on balanced candidates
        if balancing_check(&sigma, self.orb.fan())
            && scrc_check(&sigma, self.orb, self.p).certified()
        {
            self.found.push(sigma.canonical());
        }
        Ok(())
    }
}

/// Every certified contact-order collection within the budget, sorted
/// lexicographically by (ray, coefficient) marking list.
pub fn brute_force_witnesses(
    orb: &CampanaOrbifold,
    p: Prime,
    budget: &SearchBudget,
) -> Result<Vec<ContactOrderSet>> {
    let mut e = Enumeration {
        orb,
        p,
        budget,
        examined: 0,
        found: Vec::new(),
    };
    e.run()?;
    let mut found = e.found;
    found.sort();
    Ok(found)
}

/// True when every balanced one-marking-per-ray collection with coefficients
/// up to `bound` on the fan of `P(Q)` is an integer multiple of the weight
/// relation (coefficient `m * q_i` on ray `i`).
pub fn verify_sigma_m_structure(weights: &Weights, bound: u64) -> Result<bool> {
    let fan = wps_fan(weights)?;
    let n = fan.rays().len();
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total
            .checked_mul(bound)
            .filter(|&t| t <= 100_000_000)
            .ok_or(Error::BudgetExhausted {
                examined: 0,
                found: vec![],
            })?;
    }
    let rays: Vec<&[i64]> = fan.rays().iter().map(|r| r.coords()).collect();
    let dim = fan.dim();
    let q = weights.values();

    let mut gamma = vec![1u64; n];
    loop {
        let balanced = (0..dim).all(|c| {
            rays.iter()
                .zip(&gamma)
                .map(|(r, &g)| r[c] as i128 * g as i128)
                .sum::<i128>()
                == 0
        });
        if balanced {
            // must be gamma_i = m * q_i for a single integer m
            if gamma[0] % q[0] != 0 {
                return Ok(false);
            }
            let m = gamma[0] / q[0];
            if m == 0 || (0..n).any(|i| gamma[i] != m * q[i]) {
                return Ok(false);
            }
        }
        // odometer over [1, bound]^n
        let mut i = n;
        loop {
            if i == 0 {
                return Ok(true);
            }
            i -= 1;
            gamma[i] += 1;
            if gamma[i] <= bound {
                break;
            }
            gamma[i] = 1;
        }
    }
}

/// Seeded random complete surface fan with at most `max_rays` rays and
/// coordinates in `[-coord_bound, coord_bound]`. Deterministic per seed.
///
/// Random primitive directions are sorted counterclockwise; any angular gap
/// of pi or more is closed by inserting the quarter-turn of the gap's lower
/// ray, which always lands strictly inside the gap.
pub fn random_complete_surface_fan(seed: u64, max_rays: usize, coord_bound: i64) -> Fan {
    assert!(max_rays >= 3 && coord_bound >= 1);
    let mut rng = SplitMix64::new(seed);
    'attempt: loop {
        let target = 3 + rng.below((max_rays - 2) as u64) as usize;
        let mut dirs: Vec<[i64; 2]> = Vec::new();
        for _ in 0..target {
            let (mut x, mut y);
            loop {
                x = rng.range_i64(-coord_bound, coord_bound);
                y = rng.range_i64(-coord_bound, coord_bound);
                if x != 0 || y != 0 {
                    break;
                }
            }
            let g = gcd_i64(x.unsigned_abs(), y.unsigned_abs()) as i64;
            let dir = [x / g, y / g];
            if !dirs.contains(&dir) {
                dirs.push(dir);
            }
        }
        if dirs.len() < 3 {
            continue;
        }
        loop {
            sort_ccw(&mut dirs);
            let gap = (0..dirs.len()).find(|&i| {
                let a = dirs[i];
                let b = dirs[(i + 1) % dirs.len()];
                cross(a, b) <= 0
            });
            match gap {
                None => break,
                Some(i) => {
                    let a = dirs[i];
                    let perp = [-a[1], a[0]];
                    debug_assert!(!dirs.contains(&perp));
                    dirs.push(perp);
                    if dirs.len() > max_rays {
                        continue 'attempt;
                    }
                }
            }
        }
        let n = dirs.len();
        let cones: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        let rays: Vec<Vec<i64>> = dirs.into_iter().map(|d| d.to_vec()).collect();
        return Fan::new(2, rays, cones).expect("constructed fan is complete");
    }
}

fn gcd_i64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_i64(b, a % b)
    }
}

fn cross(a: [i64; 2], b: [i64; 2]) -> i128 {
    a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128
}

fn sort_ccw(dirs: &mut [[i64; 2]]) {
    let half = |v: [i64; 2]| -> u8 {
        if v[1] > 0 || (v[1] == 0 && v[0] > 0) {
            0
        } else {
            1
        }
    };
    dirs.sort_by(|&a, &b| {
        half(a)
            .cmp(&half(b))
            .then_with(|| cross(b, a).cmp(&cross(a, b)))
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fan::fixtures::{p11p_fan, p2_fan};

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    fn sigma_of(coeffs: &[i64]) -> ContactOrderSet {
        let coeffs: Vec<BigInt> = coeffs.iter().map(|&c| BigInt::from(c)).collect();
        ContactOrderSet::from_coefficients(&coeffs)
            .unwrap()
            .canonical()
    }

    #[test]
    fn p2_bound_three_at_two() {
        let orb = CampanaOrbifold::absolute(p2_fan());
        let found =
            brute_force_witnesses(&orb, prime(2), &SearchBudget::with_max_coeff(3)).unwrap();
        assert!(found.contains(&sigma_of(&[1, 1, 1])));
        assert!(found.contains(&sigma_of(&[3, 3, 3])));
        assert!(
            !found.contains(&sigma_of(&[2, 2, 2])),
            "index 2 has 2-torsion"
        );
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn p11p_at_char_p_has_no_witnesses() {
        for p in [2i64, 3, 5] {
            let orb = CampanaOrbifold::absolute(p11p_fan(p));
            let found = brute_force_witnesses(
                &orb,
                prime(p as u64),
                &SearchBudget::with_max_coeff(2 * p as u64),
            )
            .unwrap();
            assert!(found.is_empty(), "P(1,1,{p}) at characteristic {p}");
        }
    }

    #[test]
    fn p112_at_three_contains_the_surface_witness() {
        let orb = CampanaOrbifold::absolute(p11p_fan(2));
        let found =
            brute_force_witnesses(&orb, prime(3), &SearchBudget::with_max_coeff(4)).unwrap();
        assert!(found.contains(&sigma_of(&[1, 2, 1])));
    }

    #[test]
    fn budget_exhaustion_carries_progress() {
        let orb = CampanaOrbifold::absolute(p2_fan());
        let budget = SearchBudget {
            max_coeff: 3,
            max_markings_per_ray: 1,
            max_candidates: 10,
        };
        match brute_force_witnesses(&orb, prime(2), &budget) {
            Err(Error::BudgetExhausted { examined, .. }) => assert_eq!(examined, 11),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn multi_marking_violations_are_filtered() {
        // with two markings allowed per ray, candidates violating the
        // at-most-one rule on infinite rays are enumerated but never pass
        let orb = CampanaOrbifold::absolute(p2_fan());
        let budget = SearchBudget {
            max_coeff: 3,
            max_markings_per_ray: 2,
            max_candidates: 1_000_000,
        };
        let found = brute_force_witnesses(&orb, prime(2), &budget).unwrap();
        for sigma in &found {
            for ray in 0..3 {
                let count = sigma.markings().iter().filter(|m| m.ray == ray).count();
                assert!(count <= 1);
            }
        }
        let single =
            brute_force_witnesses(&orb, prime(2), &SearchBudget::with_max_coeff(3)).unwrap();
        assert_eq!(found, single);
    }

    #[test]
    fn enumeration_count_matches_nested_loops() {
        // one marking per ray forced on an absolute orbifold: bound^3 leaves
        let orb = CampanaOrbifold::absolute(p2_fan());
        let budget = SearchBudget {
            max_coeff: 4,
            max_markings_per_ray: 1,
            max_candidates: 63,
        };
        match brute_force_witnesses(&orb, prime(2), &budget) {
            Err(Error::BudgetExhausted { examined, .. }) => assert_eq!(examined, 64),
            Ok(_) => panic!("4^3 = 64 candidates exceed the cap of 63"),
            Err(e) => panic!("unexpected error {e:?}"),
        }
        let budget = SearchBudget {
            max_coeff: 4,
            max_markings_per_ray: 1,
            max_candidates: 64,
        };
        assert!(brute_force_witnesses(&orb, prime(2), &budget).is_ok());
    }

    #[test]
    fn sigma_m_structure_examples() {
        assert!(verify_sigma_m_structure(&Weights::new(vec![1, 1, 2]).unwrap(), 8).unwrap());
        assert!(verify_sigma_m_structure(&Weights::new(vec![1, 1, 1]).unwrap(), 5).unwrap());
        assert!(verify_sigma_m_structure(&Weights::new(vec![1, 2, 3]).unwrap(), 12).unwrap());
    }

    #[test]
    fn random_fans_are_deterministic_and_bounded() {
        for seed in 0..30 {
            let a = random_complete_surface_fan(seed, 8, 10);
            let b = random_complete_surface_fan(seed, 8, 10);
            assert_eq!(a, b);
            assert!(a.rays().len() >= 3 && a.rays().len() <= 8);
            for r in a.rays() {
                assert!(r.coords().iter().all(|c| c.abs() <= 10));
            }
        }
    }
}
