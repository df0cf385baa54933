//! Property tests: normal-form invariants against the minor-gcd oracle,
//! kernel saturation, positive relations and witness soundness on random
//! complete surface fans.

use campana_core::campana::{scrc_check, CampanaOrbifold};
use campana_core::linalg::{
    elementary_divisors_of_sublattice, integer_kernel, lift_kernel_mod_p, positive_relation, snf,
    IntMatrix,
};
use campana_core::modp::{modp_kernel, Prime, SpanSearch};
use campana_core::oracle::random_complete_surface_fan;
use campana_core::witness::{crit_sing, witness_smooth, witness_surface, Reason, VerdictStatus};
use campana_core::{is_refinement, Fan};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn small_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(-15i64..=15, r * c).prop_map(move |v| {
            IntMatrix::new(r, c, v.into_iter().map(BigInt::from).collect()).unwrap()
        })
    })
}

/// Independent oracle: elementary divisors as ratios of minor gcds.
fn gcd_minor_divisors(m: &IntMatrix) -> Vec<BigInt> {
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        if k > n {
            return vec![];
        }
        let mut out = vec![];
        let mut cur: Vec<usize> = (0..k).collect();
        loop {
            out.push(cur.clone());
            let mut i = k;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < n - (k - i) {
                    cur[i] += 1;
                    for j in i + 1..k {
                        cur[j] = cur[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    let t = m.rows().min(m.cols());
    let mut prev = BigInt::one();
    let mut out = Vec::new();
    for k in 1..=t {
        let mut g = BigInt::zero();
        'level: for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let mut sub = IntMatrix::zero(k, k);
                for (i, &r) in rs.iter().enumerate() {
                    for (j, &c) in cs.iter().enumerate() {
                        *sub.at_mut(i, j) = m.at(r, c).clone();
                    }
                }
                g = g.gcd(&sub.determinant());
                if g == prev {
                    break 'level;
                }
            }
        }
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

proptest! {
    #[test]
    fn snf_invariants_and_minor_oracle(m in small_matrix()) {
        let s = snf(&m).unwrap();
        prop_assert_eq!(&s.u.mul(&m).mul(&s.v), &s.d);
        prop_assert!(s.u.determinant().abs().is_one());
        prop_assert!(s.v.determinant().abs().is_one());
        let diag = s.diagonal();
        for i in 0..diag.len() {
            prop_assert!(diag[i] >= BigInt::zero());
            if i + 1 < diag.len() && !diag[i + 1].is_zero() {
                prop_assert!((&diag[i + 1] % &diag[i]).is_zero());
            }
        }
        prop_assert_eq!(s.elementary_divisors(), gcd_minor_divisors(&m));
    }

    #[test]
    fn integer_kernel_is_saturated(m in small_matrix()) {
        let basis = integer_kernel(&m).unwrap();
        for b in &basis {
            prop_assert!(m.mul_vec(b).iter().all(Zero::is_zero));
        }
        prop_assert_eq!(basis.len() + snf(&m).unwrap().rank(), m.cols());
        if !basis.is_empty() {
            // a saturated sublattice has all elementary divisors equal to one
            let (rank, divisors) = elementary_divisors_of_sublattice(&basis, m.cols());
            prop_assert_eq!(rank, basis.len());
            prop_assert!(divisors.iter().all(One::is_one));
        }
    }

    #[test]
    fn random_surface_fans_have_positive_relations(seed in 0u64..400) {
        let fan = random_complete_surface_fan(seed, 8, 10);
        let m = fan.ray_matrix();
        let relation = positive_relation(&m).unwrap();
        prop_assert!(relation.iter().all(|c| c > &BigInt::zero()));
        prop_assert!(m.mul_vec(&relation).iter().all(Zero::is_zero));
        // the relation reduces to a mod-p kernel element
        for p in [2u64, 3, 5] {
            let p = Prime::new(p).unwrap();
            let kernel = modp_kernel(&m, p);
            let reduced: Vec<u64> = relation.iter().map(|c| p.reduce(c)).collect();
            let mm = campana_core::modp::ModPMat::from_int(&m, p);
            prop_assert!(mm.mul_vec(&reduced).iter().all(|&x| x == 0));
            let _ = kernel;
        }
    }

    #[test]
    fn star_subdivision_refines(seed in 0u64..150) {
        let fan = random_complete_surface_fan(seed, 7, 8);
        // midpoint direction of the first cone is inside the support
        let c = &fan.max_cones()[0];
        let a = fan.ray(c.rays()[0]).coords();
        let b = fan.ray(c.rays()[1]).coords();
        let mut v = [a[0] + b[0], a[1] + b[1]];
        let g = gcd(v[0].unsigned_abs(), v[1].unsigned_abs());
        v = [v[0] / g as i64, v[1] / g as i64];
        if fan.ray_index(&v).is_some() {
            return Ok(());
        }
        let sub = fan.star_subdivide(&v).unwrap();
        prop_assert!(is_refinement(&sub, &fan).unwrap());
        prop_assert!(!is_refinement(&fan, &sub).unwrap());
        prop_assert_eq!(sub.rays().len(), fan.rays().len() + 1);
    }

    #[test]
    fn lifting_property_on_surface_fans(seed in 0u64..300) {
        let fan = random_complete_surface_fan(seed, 8, 10);
        let m = fan.ray_matrix();
        let s = snf(&m).unwrap();
        let divisors = s.elementary_divisors();
        for p in [2u64, 3, 5] {
            let p = Prime::new(p).unwrap();
            if divisors.iter().any(|d| p.divides(d)) {
                continue;
            }
            let relation = positive_relation(&m).unwrap();
            for ybar in modp_kernel(&m, p) {
                let mut lift = lift_kernel_mod_p(&m, &ybar).unwrap();
                prop_assert!(m.mul_vec(&lift).iter().all(Zero::is_zero));
                // shift by p*m*relation until strictly positive
                let step: Vec<BigInt> =
                    relation.iter().map(|r| r * BigInt::from(p.get())).collect();
                let mut shifts = 0;
                while lift.iter().any(|c| c <= &BigInt::zero()) {
                    for (l, s) in lift.iter_mut().zip(&step) {
                        *l += s;
                    }
                    shifts += 1;
                    prop_assert!(shifts < 10_000);
                }
                prop_assert!(lift.iter().all(|c| c > &BigInt::zero()));
                for (l, &y) in lift.iter().zip(ybar.coords()) {
                    prop_assert_eq!(p.reduce(l), y);
                }
            }
        }
    }

    #[test]
    fn emitted_witnesses_always_certify(seed in 0u64..200) {
        let fan = random_complete_surface_fan(seed, 8, 10);
        let orb = CampanaOrbifold::absolute(fan);
        for p in [2u64, 3, 5] {
            let p = Prime::new(p).unwrap();
            let smooth = witness_smooth(&orb, p, &SpanSearch::default());
            if smooth.status == VerdictStatus::CertifiedScrc {
                let cert = scrc_check(smooth.witness.as_ref().unwrap(), &orb, p);
                prop_assert!(cert.certified());
            }
            let sing = crit_sing(&orb, p);
            if sing.reason == Reason::CritSingHolds {
                prop_assert!(sing.status == VerdictStatus::CertifiedScrc);
                let surface = witness_surface(&orb, p);
                prop_assert!(surface.status == VerdictStatus::CertifiedScrc);
                let cert = scrc_check(surface.witness.as_ref().unwrap(), &orb, p);
                prop_assert!(cert.certified());
            }
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

#[test]
fn subdivision_of_every_fixture_refines_it() {
    let fixtures: [Fan; 3] = [
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap(),
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -5]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap(),
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, 2], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap(),
    ];
    for fan in &fixtures {
        let sub = fan.star_subdivide(&[1, 1]).unwrap();
        assert!(is_refinement(&sub, fan).unwrap());
    }
}

#[test]
fn core_values_are_shareable_across_threads() {
    fn shareable<T: Send + Sync>() {}
    shareable::<Fan>();
    shareable::<CampanaOrbifold>();
    shareable::<campana_core::ContactOrderSet>();
    shareable::<campana_core::Certificate>();
    shareable::<campana_core::Verdict>();
    shareable::<campana_core::IntMatrix>();
    shareable::<campana_core::ModPVec>();
    shareable::<campana_core::Error>();
}
