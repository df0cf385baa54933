//! Linear algebra over the prime field `F_p`: reduction of integer matrices,
//! row reduction, kernels, inverses, and the search for a span element with
//! every coordinate nonzero.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::rng::SplitMix64;

/// A checked prime characteristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Prime> {
        if p < 2 {
            return Err(Error::NotPrime(p));
        }
        let mut d = 2u64;
        while d.saturating_mul(d) <= p {
            if p.is_multiple_of(d) {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    pub fn divides(self, n: &BigInt) -> bool {
        n.mod_floor(&BigInt::from(self.0)) == BigInt::from(0u8)
    }

    pub fn reduce(self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.0))
            .to_u64()
            .expect("residue fits u64")
    }

    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }

    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }

    fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }

    fn inv(self, a: u64) -> u64 {
        // extended Euclid; a must be nonzero mod p
        debug_assert!(!a.is_multiple_of(self.0));
        let (mut t, mut new_t): (i128, i128) = (0, 1);
        let (mut r, mut new_r): (i128, i128) = (self.0 as i128, (a % self.0) as i128);
        while new_r != 0 {
            let q = r / new_r;
            (t, new_t) = (new_t, t - q * new_t);
            (r, new_r) = (new_r, r - q * new_r);
        }
        debug_assert_eq!(r, 1);
        t.rem_euclid(self.0 as i128) as u64
    }
}

/// Vector over `F_p` with coordinates reduced into `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPVec {
    p: Prime,
    coords: Vec<u64>,
}

impl ModPVec {
    pub fn new(p: Prime, coords: Vec<u64>) -> Self {
        let coords = coords.into_iter().map(|c| c % p.get()).collect();
        ModPVec { p, coords }
    }

    pub fn from_bigints(p: Prime, values: &[BigInt]) -> Self {
        ModPVec {
            p,
            coords: values.iter().map(|v| p.reduce(v)).collect(),
        }
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn all_nonzero(&self) -> bool {
        self.coords.iter().all(|&c| c != 0)
    }
}

/// Dense matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPMat {
    p: Prime,
    rows: usize,
    cols: usize,
    entries: Vec<u64>,
}

impl ModPMat {
    pub fn new(p: Prime, rows: usize, cols: usize, entries: Vec<u64>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        let entries = entries.into_iter().map(|e| e % p.get()).collect();
        ModPMat {
            p,
            rows,
            cols,
            entries,
        }
    }

    pub fn from_int(m: &IntMatrix, p: Prime) -> Self {
        let entries = (0..m.rows())
            .flat_map(|r| (0..m.cols()).map(move |c| p.reduce(m.at(r, c))))
            .collect();
        ModPMat {
            p,
            rows: m.rows(),
            cols: m.cols(),
            entries,
        }
    }

    pub fn from_columns(p: Prime, cols: &[ModPVec]) -> Self {
        assert!(!cols.is_empty());
        let rows = cols[0].len();
        assert!(cols.iter().all(|c| c.len() == rows && c.prime() == p));
        let mut entries = vec![0u64; rows * cols.len()];
        for (j, col) in cols.iter().enumerate() {
            for (i, &v) in col.coords().iter().enumerate() {
                entries[i * cols.len() + j] = v;
            }
        }
        ModPMat {
            p,
            rows,
            cols: cols.len(),
            entries,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.cols + c]
    }

    fn at_mut(&mut self, r: usize, c: usize) -> &mut u64 {
        &mut self.entries[r * self.cols + c]
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u64;
                for c in 0..self.cols {
                    acc = self.p.add(acc, self.p.mul(self.at(r, c), v[c]));
                }
                acc
            })
            .collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0usize;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.at(i, col) != 0) else {
                continue;
            };
            for c in 0..self.cols {
                let (a, b) = (self.at(r, c), self.at(pr, c));
                *self.at_mut(r, c) = b;
                *self.at_mut(pr, c) = a;
            }
            let inv = self.p.inv(self.at(r, col));
            for c in 0..self.cols {
                *self.at_mut(r, c) = self.p.mul(self.at(r, c), inv);
            }
            for i in 0..self.rows {
                if i == r || self.at(i, col) == 0 {
                    continue;
                }
                let f = self.at(i, col);
                for c in 0..self.cols {
                    let s = self.p.mul(f, self.at(r, c));
                    *self.at_mut(i, c) = self.p.sub(self.at(i, c), s);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Canonical kernel basis: one vector per free column, unit there.
    pub fn kernel_basis(&self) -> Vec<ModPVec> {
        let mut red = self.clone();
        let pivots = red.rref();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut basis = Vec::new();
        for f in 0..self.cols {
            if is_pivot[f] {
                continue;
            }
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = self.p.sub(0, red.at(i, f));
            }
            basis.push(ModPVec {
                p: self.p,
                coords: v,
            });
        }
        basis
    }

    /// Inverse of a square matrix, or `None` if singular.
    pub fn inverse(&self) -> Option<ModPMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = ModPMat::new(self.p, n, 2 * n, vec![0; 2 * n * n]);
        for r in 0..n {
            for c in 0..n {
                *aug.at_mut(r, c) = self.at(r, c);
            }
            *aug.at_mut(r, n + r) = 1;
        }
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        let mut inv = ModPMat::new(self.p, n, n, vec![0; n * n]);
        for r in 0..n {
            for c in 0..n {
                *inv.at_mut(r, c) = aug.at(r, n + c);
            }
        }
        Some(inv)
    }

    /// Unique solution of `self * x = rhs` when the columns are independent.
    pub fn solve(&self, rhs: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = ModPMat::new(
            self.p,
            self.rows,
            self.cols + 1,
            vec![0; self.rows * (self.cols + 1)],
        );
        for r in 0..self.rows {
            for c in 0..self.cols {
                *aug.at_mut(r, c) = self.at(r, c);
            }
            *aug.at_mut(r, self.cols) = rhs[r];
        }
        let pivots = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![0u64; self.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(i, self.cols);
        }
        Some(x)
    }
}

/// Basis of `ker(M mod p)` over `F_p`, in canonical reduced-echelon form.
pub fn modp_kernel(m: &IntMatrix, p: Prime) -> Vec<ModPVec> {
    ModPMat::from_int(m, p).kernel_basis()
}

/// Greedy maximal independent subset of the columns, with their indices.
/// The span of the returned vectors equals the column space.
pub fn independent_columns(m: &ModPMat) -> (Vec<ModPVec>, Vec<usize>) {
    let mut basis: Vec<ModPVec> = Vec::new();
    let mut indices = Vec::new();
    for j in 0..m.cols() {
        let col = ModPVec {
            p: m.p,
            coords: (0..m.rows()).map(|r| m.at(r, j)).collect(),
        };
        if col.is_zero() {
            continue;
        }
        let mut candidate = basis.clone();
        candidate.push(col.clone());
        if ModPMat::from_columns(m.p, &candidate).rank() == candidate.len() {
            basis.push(col);
            indices.push(j);
        }
    }
    (basis, indices)
}

/// Budget for [`find_all_nonzero_in_span`]: exhaustive lexicographic
/// enumeration while `p^k` stays within `exhaustive_cap`, seeded sampling
/// beyond that.
#[derive(Debug, Clone)]
pub struct SpanSearch {
    pub exhaustive_cap: u64,
    pub random_trials: u64,
    pub seed: u64,
}

impl Default for SpanSearch {
    fn default() -> Self {
        SpanSearch {
            exhaustive_cap: 10_000_000,
            random_trials: 100_000,
            seed: 0,
        }
    }
}

impl SpanSearch {
    pub fn with_seed(seed: u64) -> Self {
        SpanSearch {
            seed,
            ..SpanSearch::default()
        }
    }
}

/// First vector (by lexicographic coefficient tuple) in the span of `basis`
/// with every coordinate nonzero mod p; `Ok(None)` when exhaustive search
/// proves none exists. On the sampled fallback path a miss is reported as
/// [`Error::SpanSearchUndecided`], never as a silent `None`.
pub fn find_all_nonzero_in_span(
    basis: &[ModPVec],
    dim: usize,
    cfg: &SpanSearch,
) -> Result<Option<ModPVec>> {
    if dim == 0 {
        return Ok(None);
    }
    if basis.is_empty() {
        return Ok(None);
    }
    let p = basis[0].prime();
    assert!(basis.iter().all(|b| b.len() == dim && b.prime() == p));
    debug_assert_eq!(
        ModPMat::from_columns(p, basis).rank(),
        basis.len(),
        "span basis must be independent"
    );
    let k = basis.len();

    let combine = |t: &[u64]| -> ModPVec {
        let mut v = vec![0u64; dim];
        for (ti, b) in t.iter().zip(basis) {
            if *ti == 0 {
                continue;
            }
            for (vi, bi) in v.iter_mut().zip(b.coords()) {
                *vi = p.add(*vi, p.mul(*ti, *bi));
            }
        }
        ModPVec { p, coords: v }
    };

    let space: Option<u64> = p.get().checked_pow(k as u32);
    if space.is_some_and(|s| s <= cfg.exhaustive_cap) {
        let mut t = vec![0u64; k];
        loop {
            // odometer with the last coordinate fastest = lexicographic order
            let mut i = k;
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                t[i] += 1;
                if t[i] < p.get() {
                    break;
                }
                t[i] = 0;
            }
            let v = combine(&t);
            if v.all_nonzero() {
                return Ok(Some(v));
            }
        }
    }

    let mut rng = SplitMix64::new(cfg.seed);
    for _ in 0..cfg.random_trials {
        let t: Vec<u64> = (0..k).map(|_| rng.below(p.get())).collect();
        if t.iter().all(|&x| x == 0) {
            continue;
        }
        let v = combine(&t);
        if v.all_nonzero() {
            return Ok(Some(v));
        }
    }
    Err(Error::SpanSearchUndecided {
        trials: cfg.random_trials,
    })
}
