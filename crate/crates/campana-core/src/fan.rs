//! Complete simplicial fans: validation, cone singularity classification in
//! characteristic p, adjacency tables, star subdivision and refinement tests.
//!
//! A [`Fan`] can only be obtained through [`Fan::new`], which checks every
//! structural invariant (primitive rays, simplicial full-dimensional maximal
//! cones, completeness); afterwards the fan is immutable, so downstream code
//! may rely on those invariants without re-checking.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{elementary_divisors_of_sublattice, IntMatrix};
use crate::modp::Prime;

/// Primitive lattice point spanning a one-dimensional cone.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ray {
    coords: Vec<i64>,
}

impl Ray {
    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn to_bigints(&self) -> Vec<BigInt> {
        self.coords.iter().map(|&c| BigInt::from(c)).collect()
    }
}

fn gcd_all(values: &[i64]) -> i64 {
    values.iter().fold(0i64, |g, &v| g.gcd(&v))
}

/// Maximal cone, stored as sorted distinct ray indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    rays: Vec<usize>,
}

impl Cone {
    pub fn rays(&self) -> &[usize] {
        &self.rays
    }

    pub fn contains_ray(&self, ray: usize) -> bool {
        self.rays.binary_search(&ray).is_ok()
    }

    /// Sorted (d-1)-subsets of the ray indices.
    fn facets(&self) -> Vec<Vec<usize>> {
        (0..self.rays.len())
            .map(|drop| {
                self.rays
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != drop)
                    .map(|(_, &r)| r)
                    .collect()
            })
            .collect()
    }
}

/// Classification of a simplicial cone at a prime `p` by the index `m` of the
/// sublattice its rays generate inside its saturation. Smooth means `m = 1`,
/// wild means `p | m`, tame is everything else.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularityClass {
    Smooth,
    Tame(BigInt),
    Wild(BigInt),
}

impl SingularityClass {
    pub fn is_smooth(&self) -> bool {
        matches!(self, SingularityClass::Smooth)
    }

    pub fn is_wild(&self) -> bool {
        matches!(self, SingularityClass::Wild(_))
    }

    pub fn index(&self) -> BigInt {
        match self {
            SingularityClass::Smooth => BigInt::one(),
            SingularityClass::Tame(m) | SingularityClass::Wild(m) => m.clone(),
        }
    }
}

/// Adjacency tables of a validated fan.
#[derive(Debug, Clone)]
pub struct Adjacency {
    /// Maximal cones sharing a facet with each maximal cone.
    pub cone_neighbors: Vec<Vec<usize>>,
    /// Maximal cones containing each ray.
    pub ray_cones: Vec<Vec<usize>>,
    /// Maximal cones *not* containing each ray.
    pub ray_non_adjacent: Vec<Vec<usize>>,
}

/// Complete simplicial fan in a lattice of rank `dim`, rays kept in input
/// order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Ray>,
    max_cones: Vec<Cone>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Result<Fan> {
        if dim == 0 || rays.is_empty() || max_cones.is_empty() {
            return Err(Error::NotComplete);
        }
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::RayDimensionMismatch { ray: i });
            }
            if gcd_all(r) != 1 {
                return Err(Error::NonPrimitiveRay { ray: i });
            }
        }
        for i in 0..rays.len() {
            for j in i + 1..rays.len() {
                if rays[i] == rays[j] {
                    return Err(Error::DuplicateRay {
                        first: i,
                        second: j,
                    });
                }
            }
        }

        let mut cones = Vec::with_capacity(max_cones.len());
        for (ci, indices) in max_cones.iter().enumerate() {
            let mut sorted = indices.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != indices.len() || sorted.len() != dim {
                return Err(Error::NonSimplicialCone { cone: ci });
            }
            if let Some(&bad) = sorted.iter().find(|&&r| r >= rays.len()) {
                return Err(Error::ConeRayIndex { cone: ci, ray: bad });
            }
            cones.push(Cone { rays: sorted });
        }
        for i in 0..cones.len() {
            for j in i + 1..cones.len() {
                if cones[i] == cones[j] {
                    return Err(Error::OverlappingCones {
                        first: i,
                        second: j,
                    });
                }
            }
        }

        let fan = Fan {
            dim,
            rays: rays.into_iter().map(|coords| Ray { coords }).collect(),
            max_cones: cones,
        };

        for ray in 0..fan.rays.len() {
            if !fan.max_cones.iter().any(|c| c.contains_ray(ray)) {
                return Err(Error::UnusedRay { ray });
            }
        }
        for (ci, cone) in fan.max_cones.iter().enumerate() {
            if fan.cone_matrix(cone).determinant().is_zero() {
                return Err(Error::NonSimplicialCone { cone: ci });
            }
        }

        match fan.dim {
            1 => fan.check_complete_dim1()?,
            2 => fan.check_complete_dim2()?,
            _ => fan.check_complete_facets()?,
        }
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> &Ray {
        &self.rays[i]
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn ray_index(&self, coords: &[i64]) -> Option<usize> {
        self.rays.iter().position(|r| r.coords() == coords)
    }

    /// `dim x n` matrix whose columns are the rays, in input order.
    pub fn ray_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.rays.iter().map(Ray::to_bigints).collect();
        IntMatrix::from_columns(&cols).expect("fan has rays")
    }

    fn cone_matrix(&self, cone: &Cone) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = cone
            .rays
            .iter()
            .map(|&r| self.rays[r].to_bigints())
            .collect();
        IntMatrix::from_columns(&cols).expect("cone has rays")
    }

    fn check_complete_dim1(&self) -> Result<()> {
        if self.rays.len() != 2 || self.rays[0].coords[0] + self.rays[1].coords[0] != 0 {
            return Err(Error::NotComplete);
        }
        let mut seen: Vec<usize> = self.max_cones.iter().map(|c| c.rays[0]).collect();
        seen.sort_unstable();
        if seen != vec![0, 1] {
            return Err(Error::NotComplete);
        }
        Ok(())
    }

    /// Exact surface check: sorted counterclockwise, the maximal cones must be
    /// precisely the consecutive pairs and every angular gap below pi.
    fn check_complete_dim2(&self) -> Result<()> {
        let n = self.rays.len();
        let mut order: Vec<usize> = (0..n).collect();
        let half = |r: &Ray| -> u8 {
            let (x, y) = (r.coords[0], r.coords[1]);
            if y > 0 || (y == 0 && x > 0) {
                0
            } else {
                1
            }
        };
        let cross = |a: &Ray, b: &Ray| -> i128 {
            a.coords[0] as i128 * b.coords[1] as i128 - a.coords[1] as i128 * b.coords[0] as i128
        };
        order.sort_by(|&a, &b| {
            let (ra, rb) = (&self.rays[a], &self.rays[b]);
            half(ra)
                .cmp(&half(rb))
                .then_with(|| cross(rb, ra).cmp(&cross(ra, rb)))
        });
        let mut expected = Vec::with_capacity(n);
        for i in 0..n {
            let a = order[i];
            let b = order[(i + 1) % n];
            if cross(&self.rays[a], &self.rays[b]) <= 0 {
                return Err(Error::NotComplete);
            }
            let mut pair = vec![a, b];
            pair.sort_unstable();
            expected.push(pair);
        }
        for (ci, cone) in self.max_cones.iter().enumerate() {
            if !expected.contains(&cone.rays) {
                let other = (ci + 1) % self.max_cones.len();
                return Err(Error::OverlappingCones {
                    first: ci,
                    second: other,
                });
            }
        }
        for pair in &expected {
            if !self.max_cones.iter().any(|c| &c.rays == pair) {
                return Err(Error::NotComplete);
            }
        }
        Ok(())
    }

    /// Facet-pairing completeness for dim >= 3: every facet of a maximal cone
    /// is shared by exactly two maximal cones and the facet graph is
    /// connected. Exact for pure simplicial fans meeting in faces.
    fn check_complete_facets(&self) -> Result<()> {
        let mut facet_owners: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for facet in cone.facets() {
                match facet_owners.iter_mut().find(|(f, _)| f == &facet) {
                    Some((_, owners)) => owners.push(ci),
                    None => facet_owners.push((facet, vec![ci])),
                }
            }
        }
        for (_, owners) in &facet_owners {
            if owners.len() != 2 {
                return Err(Error::IncompleteFan { cone: owners[0] });
            }
        }
        let m = self.max_cones.len();
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(c) = stack.pop() {
            for (_, owners) in &facet_owners {
                if owners.contains(&c) {
                    for &o in owners {
                        if !seen[o] {
                            seen[o] = true;
                            stack.push(o);
                        }
                    }
                }
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(Error::NotComplete);
        }
        Ok(())
    }

    /// Smooth / tame / wild for the maximal cone `cone_idx` at `p`, read off
    /// the elementary divisors of the sublattice its rays generate.
    pub fn classify_cone(&self, cone_idx: usize, p: Prime) -> Result<SingularityClass> {
        let cone = &self.max_cones[cone_idx];
        let gens: Vec<Vec<BigInt>> = cone
            .rays
            .iter()
            .map(|&r| self.rays[r].to_bigints())
            .collect();
        let (rank, divisors) = elementary_divisors_of_sublattice(&gens, self.dim);
        if rank != cone.rays.len() {
            return Err(Error::NonSimplicialCone { cone: cone_idx });
        }
        let mut index = BigInt::one();
        for d in &divisors {
            index *= d;
        }
        Ok(if index.is_one() {
            SingularityClass::Smooth
        } else if p.divides(&index) {
            SingularityClass::Wild(index)
        } else {
            SingularityClass::Tame(index)
        })
    }

    pub fn classify_all(&self, p: Prime) -> Result<Vec<SingularityClass>> {
        (0..self.max_cones.len())
            .map(|i| self.classify_cone(i, p))
            .collect()
    }

    pub fn adjacency(&self) -> Adjacency {
        let m = self.max_cones.len();
        let mut cone_neighbors = vec![Vec::new(); m];
        for i in 0..m {
            for j in i + 1..m {
                let shared = self.max_cones[i]
                    .rays
                    .iter()
                    .filter(|r| self.max_cones[j].contains_ray(**r))
                    .count();
                if shared == self.dim - 1 {
                    cone_neighbors[i].push(j);
                    cone_neighbors[j].push(i);
                }
            }
        }
        let ray_cones: Vec<Vec<usize>> = (0..self.rays.len())
            .map(|r| {
                (0..m)
                    .filter(|&c| self.max_cones[c].contains_ray(r))
                    .collect()
            })
            .collect();
        let ray_non_adjacent: Vec<Vec<usize>> = (0..self.rays.len())
            .map(|r| {
                (0..m)
                    .filter(|&c| !self.max_cones[c].contains_ray(r))
                    .collect()
            })
            .collect();
        Adjacency {
            cone_neighbors,
            ray_cones,
            ray_non_adjacent,
        }
    }

    /// Barycentric numerators of `point` in a simplicial full-dimensional
    /// cone, scaled by `|det|` so that membership is `all entries >= 0`.
    fn cone_coordinates(&self, cone: &Cone, point: &[BigInt]) -> Vec<BigInt> {
        let a = self.cone_matrix(cone);
        let det = a.determinant();
        debug_assert!(!det.is_zero());
        let flip = det.sign() == Sign::Minus;
        (0..self.dim)
            .map(|i| {
                let mut ai = a.clone();
                for r in 0..self.dim {
                    *ai.at_mut(r, i) = point[r].clone();
                }
                let num = ai.determinant();
                if flip {
                    -num
                } else {
                    num
                }
            })
            .collect()
    }

    pub fn cone_contains_point(&self, cone_idx: usize, point: &[BigInt]) -> bool {
        self.cone_coordinates(&self.max_cones[cone_idx], point)
            .iter()
            .all(|c| c.sign() != Sign::Minus)
    }

    /// Star subdivision at a new primitive ray: every maximal cone containing
    /// it is replaced by the cones spanned by the new ray and the facets not
    /// containing it. Support and completeness are preserved and re-checked.
    pub fn star_subdivide(&self, new_ray: &[i64]) -> Result<Fan> {
        let new_index = self.rays.len();
        if new_ray.len() != self.dim {
            return Err(Error::RayDimensionMismatch { ray: new_index });
        }
        if gcd_all(new_ray) != 1 {
            return Err(Error::NonPrimitiveRay { ray: new_index });
        }
        if let Some(i) = self.ray_index(new_ray) {
            return Err(Error::ExistingRay { ray: i });
        }
        let point: Vec<BigInt> = new_ray.iter().map(|&c| BigInt::from(c)).collect();

        let mut containing: Vec<(usize, Vec<usize>)> = Vec::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            let coords = self.cone_coordinates(cone, &point);
            if coords.iter().any(|c| c.sign() == Sign::Minus) {
                continue;
            }
            let support: Vec<usize> = cone
                .rays
                .iter()
                .zip(&coords)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&r, _)| r)
                .collect();
            containing.push((ci, support));
        }
        if containing.is_empty() {
            return Err(Error::OutsideSupport);
        }
        // the support face is the same for every containing cone
        let support = containing[0].1.clone();
        debug_assert!(containing.iter().all(|(_, s)| *s == support));

        let mut new_cones: Vec<Vec<usize>> = Vec::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            if containing.iter().all(|(c, _)| *c != ci) {
                new_cones.push(cone.rays.clone());
            } else {
                for &drop in &support {
                    let mut c: Vec<usize> =
                        cone.rays.iter().copied().filter(|&r| r != drop).collect();
                    c.push(new_index);
                    new_cones.push(c);
                }
            }
        }
        let mut rays: Vec<Vec<i64>> = self.rays.iter().map(|r| r.coords.clone()).collect();
        rays.push(new_ray.to_vec());
        Fan::new(self.dim, rays, new_cones)
    }
}

/// True when every ray of `coarse` is a ray of `fine` and every maximal cone
/// of `fine` sits inside some maximal cone of `coarse`.
pub fn is_refinement(fine: &Fan, coarse: &Fan) -> Result<bool> {
    if fine.dim() != coarse.dim() {
        return Err(Error::DimensionMismatch {
            left: fine.dim(),
            right: coarse.dim(),
        });
    }
    for ray in coarse.rays() {
        if fine.ray_index(ray.coords()).is_none() {
            return Ok(false);
        }
    }
    for cone in fine.max_cones() {
        let inside_some = (0..coarse.max_cones().len()).any(|cc| {
            cone.rays()
                .iter()
                .all(|&r| coarse.cone_contains_point(cc, &fine.ray(r).to_bigints()))
        });
        if !inside_some {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Fan;
    use alloc::vec;
    use alloc::vec::Vec;

    pub fn p2_fan() -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    pub fn p11p_fan(p: i64) -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, -p]],
            vec![vec![0, 1], vec![1, 2], vec![2, 0]],
        )
        .unwrap()
    }

    pub fn hirzebruch(a: i64) -> Fan {
        Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![-1, a], vec![0, -1]],
            vec![vec![0, 1], vec![1, 2], vec![2, 3], vec![3, 0]],
        )
        .unwrap()
    }

    pub fn p1_cubed() -> Fan {
        let rays = vec![
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
        ];
        let mut cones: Vec<Vec<usize>> = vec![];
        for x in [0usize, 3] {
            for y in [1usize, 4] {
                for z in [2usize, 5] {
                    cones.push(vec![x, y, z]);
                }
            }
        }
        Fan::new(3, rays, cones).unwrap()
    }
}
