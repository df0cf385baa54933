//! Exact integer linear algebra: Smith and Hermite normal forms with full
//! transform tracking, saturated integer kernels, elementary divisors of
//! sublattices, strictly positive relations, and lifting of mod-p kernel
//! elements through the Smith form.
//!
//! All arithmetic is arbitrary precision; nothing here rounds or overflows.
//! Algorithms are tuned for desk-scale matrices (a handful of rows and
//! columns), not asymptotics, and every tie is broken by a fixed scan order
//! so identical inputs give identical outputs.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modp::{ModPMat, ModPVec};

/// Dense row-major matrix over `Z`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::EmptyMatrix);
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<BigInt>]) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::EmptyMatrix);
        }
        IntMatrix::new(r, c, rows.iter().flatten().cloned().collect())
    }

    pub fn from_columns(cols: &[Vec<BigInt>]) -> Result<Self> {
        IntMatrix::from_rows(cols).map(|m| m.transpose())
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let entries = rows
            .iter()
            .flat_map(|row| row.iter().map(|&x| BigInt::from(x)))
            .collect();
        IntMatrix::new(r, c, entries).expect("nonempty i64 rows")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "inner dimensions must agree");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let mut acc = BigInt::zero();
                for k in 0..self.cols {
                    acc += self.at(r, k) * other.at(k, c);
                }
                *out.at_mut(r, c) = acc;
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    /// row[a] -= q * row[b]
    fn row_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        for c in 0..self.cols {
            let s = q * self.at(b, c);
            *self.at_mut(a, c) -= s;
        }
    }

    /// col[a] -= q * col[b]
    fn col_sub_mul(&mut self, a: usize, b: usize, q: &BigInt) {
        for r in 0..self.rows {
            let s = q * self.at(r, b);
            *self.at_mut(r, a) -= s;
        }
    }

    /// Unimodular 2x2 transform on rows (i, j):
    /// row_i <- x*row_i + y*row_j, row_j <- s*row_i + t*row_j.
    fn row_two_inv(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, s: &BigInt, t: &BigInt) {
        for c in 0..self.cols {
            let a = self.at(i, c).clone();
            let b = self.at(j, c).clone();
            *self.at_mut(i, c) = x * &a + y * &b;
            *self.at_mut(j, c) = s * &a + t * &b;
        }
    }

    /// Unimodular 2x2 transform on columns (i, j), same convention.
    fn col_two_inv(&mut self, i: usize, j: usize, x: &BigInt, y: &BigInt, s: &BigInt, t: &BigInt) {
        for r in 0..self.rows {
            let a = self.at(r, i).clone();
            let b = self.at(r, j).clone();
            *self.at_mut(r, i) = x * &a + y * &b;
            *self.at_mut(r, j) = s * &a + t * &b;
        }
    }

    /// row[a] += row[b]
    fn row_add(&mut self, a: usize, b: usize) {
        for c in 0..self.cols {
            let s = self.at(b, c).clone();
            *self.at_mut(a, c) += s;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self.at(r, c).clone();
            *self.at_mut(r, c) = v;
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant needs a square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = 1i8;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m.at(r, k).is_zero()) else {
                    return BigInt::zero();
                };
                m.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    *m.at_mut(i, j) = num / &prev;
                }
                *m.at_mut(i, k) = BigInt::zero();
            }
            prev = m.at(k, k).clone();
        }
        let det = m.at(n - 1, n - 1).clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Exact inverse of a matrix with determinant `±1`, via Cramer's rule.
    pub fn inverse_unimodular(&self) -> Result<IntMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let det = self.determinant();
        if !det.magnitude().is_one() {
            return Err(Error::Internal("matrix is not unimodular".into()));
        }
        let mut inv = IntMatrix::zero(n, n);
        for j in 0..n {
            // solve A x = e_j; x_i = det(A with column i -> e_j) / det
            for i in 0..n {
                let mut a = self.clone();
                for r in 0..n {
                    *a.at_mut(r, i) = if r == j {
                        BigInt::one()
                    } else {
                        BigInt::zero()
                    };
                }
                *inv.at_mut(i, j) = a.determinant() * &det;
            }
        }
        Ok(inv)
    }
}

/// `U * M * V = D` with `U`, `V` unimodular and `D` diagonal with a
/// divisibility chain of nonnegative entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithDecomposition {
    pub fn diagonal(&self) -> Vec<BigInt> {
        let t = self.d.rows().min(self.d.cols());
        (0..t).map(|i| self.d.at(i, i).clone()).collect()
    }

    /// Number of nonzero diagonal entries.
    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// The nonzero diagonal entries, in chain order.
    pub fn elementary_divisors(&self) -> Vec<BigInt> {
        self.diagonal()
            .into_iter()
            .filter(|x| !x.is_zero())
            .collect()
    }
}

/// Quotient minimizing the absolute remainder; on a tie keeps the truncated
/// quotient. `b` must be nonzero.
fn quot_nearest(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        return q;
    }
    let two_r = r.abs() * 2;
    if two_r > b.abs() {
        if r.sign() == b.sign() {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn pivot_min_abs(d: &IntMatrix, k: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for r in k..d.rows() {
        for c in k..d.cols() {
            if d.at(r, c).is_zero() {
                continue;
            }
            match best {
                None => best = Some((r, c)),
                Some((br, bc)) => {
                    if d.at(r, c).abs() < d.at(br, bc).abs() {
                        best = Some((r, c));
                    }
                }
            }
        }
    }
    best
}

/// Clear row k and column k against the pivot. Entries divisible by the
/// pivot go by exact-quotient elimination (which leaves the pivot line
/// untouched); the rest by a Bezout 2x2 transform that replaces the pivot
/// with a gcd. Alternates until a full pass needs no Bezout step.
fn clear_pivot_cross(d: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, k: usize) {
    let mut first = true;
    loop {
        // row k via column operations
        let mut exact_only = true;
        for c in k + 1..d.cols() {
            if d.at(k, c).is_zero() {
                continue;
            }
            let a = d.at(k, k).clone();
            let b = d.at(k, c).clone();
            if (&b % &a).is_zero() {
                let q = &b / &a;
                d.col_sub_mul(c, k, &q);
                v.col_sub_mul(c, k, &q);
            } else {
                exact_only = false;
                let (g, x, y) = extended_gcd(&a, &b);
                let (s, t) = (-(&b / &g), &a / &g);
                d.col_two_inv(k, c, &x, &y, &s, &t);
                v.col_two_inv(k, c, &x, &y, &s, &t);
            }
        }
        if exact_only && !first {
            break;
        }
        first = false;
        // column k via row operations
        let mut exact_only = true;
        for r in k + 1..d.rows() {
            if d.at(r, k).is_zero() {
                continue;
            }
            let a = d.at(k, k).clone();
            let b = d.at(r, k).clone();
            if (&b % &a).is_zero() {
                let q = &b / &a;
                d.row_sub_mul(r, k, &q);
                u.row_sub_mul(r, k, &q);
            } else {
                exact_only = false;
                let (g, x, y) = extended_gcd(&a, &b);
                let (s, t) = (-(&b / &g), &a / &g);
                d.row_two_inv(k, r, &x, &y, &s, &t);
                u.row_two_inv(k, r, &x, &y, &s, &t);
            }
        }
        if exact_only {
            break;
        }
    }
}

/// `(g, x, y)` with `x*a + y*b = g > 0`.
fn extended_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let ext = a.extended_gcd(b);
    if ext.gcd.sign() == Sign::Minus {
        (-ext.gcd, -ext.x, -ext.y)
    } else {
        (ext.gcd, ext.x, ext.y)
    }
}

/// Smith normal form by elementary row/column operations with transform
/// tracking. Diagonal entries come out nonnegative and each divides the next.
pub fn snf(m: &IntMatrix) -> Result<SmithDecomposition> {
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let mut d = m.clone();
    let mut u = IntMatrix::identity(m.rows());
    let mut v = IntMatrix::identity(m.cols());
    let t = m.rows().min(m.cols());

    for k in 0..t {
        let Some((pr, pc)) = pivot_min_abs(&d, k) else {
            break;
        };
        d.swap_rows(k, pr);
        u.swap_rows(k, pr);
        d.swap_cols(k, pc);
        v.swap_cols(k, pc);

        loop {
            clear_pivot_cross(&mut d, &mut u, &mut v, k);
            // the pivot must divide the remaining submatrix for the chain
            let mut offender = None;
            'scan: for r in k + 1..d.rows() {
                for c in k + 1..d.cols() {
                    if !(d.at(r, c) % d.at(k, k)).is_zero() {
                        offender = Some(r);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(r) => {
                    d.row_add(k, r);
                    u.row_add(k, r);
                }
                None => break,
            }
        }
        if d.at(k, k).sign() == Sign::Minus {
            d.negate_row(k);
            u.negate_row(k);
        }
    }
    Ok(SmithDecomposition { u, d, v })
}

/// Basis of the saturated lattice `{x : Mx = 0}`; empty when `M` is
/// injective. Each basis vector is sign-normalized so its first nonzero
/// coordinate is positive.
pub fn integer_kernel(m: &IntMatrix) -> Result<Vec<Vec<BigInt>>> {
    let s = snf(m)?;
    let r = s.rank();
    let mut basis = Vec::with_capacity(m.cols() - r);
    for j in r..m.cols() {
        let mut col = s.v.column(j);
        if let Some(first) = col.iter().find(|x| !x.is_zero()) {
            if first.sign() == Sign::Minus {
                for x in col.iter_mut() {
                    *x = -x.clone();
                }
            }
        }
        basis.push(col);
    }
    Ok(basis)
}

/// Rank and nonzero elementary divisors of the sublattice of `Z^ambient`
/// generated by the given vectors. `Z^ambient / L` has p-torsion exactly when
/// the rank is below `ambient` or `p` divides one of the divisors.
pub fn elementary_divisors_of_sublattice(
    generators: &[Vec<BigInt>],
    ambient: usize,
) -> (usize, Vec<BigInt>) {
    if generators.is_empty() || ambient == 0 {
        return (0, Vec::new());
    }
    assert!(
        generators.iter().all(|g| g.len() == ambient),
        "generator length must equal the ambient rank"
    );
    let m = IntMatrix::from_rows(generators).expect("nonempty generator matrix");
    let s = snf(&m).expect("nonempty matrix");
    (s.rank(), s.elementary_divisors())
}

/// Canonical (row-style Hermite) basis of the lattice generated by the given
/// row vectors: row echelon with positive pivots and the entries above each
/// pivot reduced into `[0, pivot)`. Zero rows are dropped.
pub fn row_hermite_basis(generators: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if generators.is_empty() {
        return Vec::new();
    }
    let cols = generators[0].len();
    let mut rows: Vec<Vec<BigInt>> = generators.to_vec();
    let mut r = 0usize;
    for col in 0..cols {
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some(i),
                    Some(b) => {
                        if rows[i][col].abs() < rows[b][col].abs() {
                            best = Some(i);
                        }
                    }
                }
            }
            let Some(b) = best else { break };
            rows.swap(r, b);
            let mut settled = true;
            for i in r + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = quot_nearest(&rows[i][col], &rows[r][col]);
                for c in 0..cols {
                    let s = &q * &rows[r][c];
                    rows[i][c] -= s;
                }
                if !rows[i][col].is_zero() {
                    settled = false;
                }
            }
            if settled {
                break;
            }
        }
        if r < rows.len() && !rows[r][col].is_zero() {
            if rows[r][col].sign() == Sign::Minus {
                for c in 0..cols {
                    rows[r][c] = -rows[r][c].clone();
                }
            }
            for i in 0..r {
                let q = rows[i][col].div_floor(&rows[r][col]);
                if !q.is_zero() {
                    for c in 0..cols {
                        let s = &q * &rows[r][c];
                        rows[i][c] -= s;
                    }
                }
            }
            r += 1;
        }
    }
    rows.truncate(r);
    rows
}

/// Lexicographic `k`-subsets of `0..n`.
struct Combinations {
    n: usize,
    state: Option<Vec<usize>>,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        let state = if k <= n { Some((0..k).collect()) } else { None };
        Combinations { n, state }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let state = self.state.as_mut()?;
        let out = state.clone();
        let k = state.len();
        if k == 0 {
            self.state = None;
            return Some(out);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.state = None;
                break;
            }
            i -= 1;
            if state[i] < self.n - (k - i) {
                state[i] += 1;
                for j in i + 1..k {
                    state[j] = state[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// A strictly positive integer vector `c` with `Mc = 0`, normalized by its
/// content. The columns of `M` must positively span the space (they do for
/// the ray matrix of a complete fan).
///
/// Construction: for every column `j`, `-col_j` is expressed as a nonnegative
/// rational combination of some `rows(M)`-subset of columns (first such
/// subset in lexicographic order, solved by Cramer's rule and cleared of
/// denominators); summing the resulting relations over `j` puts positive
/// weight on every column.
pub fn positive_relation(m: &IntMatrix) -> Result<Vec<BigInt>> {
    let d = m.rows();
    let n = m.cols();
    let mut total = vec![BigInt::zero(); n];
    for j in 0..n {
        let target: Vec<BigInt> = (0..d).map(|r| -m.at(r, j)).collect();
        let mut found = false;
        'subsets: for subset in Combinations::new(n, d) {
            let a =
                IntMatrix::from_columns(&subset.iter().map(|&c| m.column(c)).collect::<Vec<_>>())
                    .expect("square subset matrix");
            let det = a.determinant();
            if det.is_zero() {
                continue;
            }
            let mut nums = Vec::with_capacity(d);
            for i in 0..d {
                let mut ai = a.clone();
                for r in 0..d {
                    *ai.at_mut(r, i) = target[r].clone();
                }
                let num = ai.determinant();
                if !num.is_zero() && num.sign() != det.sign() {
                    continue 'subsets;
                }
                nums.push(num);
            }
            total[j] += det.abs();
            for (i, &c) in subset.iter().enumerate() {
                total[c] += nums[i].abs();
            }
            found = true;
            break;
        }
        if !found {
            return Err(Error::NoPositiveRelation);
        }
    }
    debug_assert!(m.mul_vec(&total).iter().all(Zero::is_zero));
    let mut g = BigInt::zero();
    for x in &total {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for x in total.iter_mut() {
            *x = &*x / &g;
        }
    }
    if total.iter().any(|x| x.sign() != Sign::Plus) {
        return Err(Error::NoPositiveRelation);
    }
    Ok(total)
}

/// Lift an element of `ker(M mod p)` to the integer kernel lattice of `M`.
///
/// Writes `ybar = Vbar * zbar` through the Smith form `UMV = D`; positions of
/// `zbar` under a nonzero diagonal entry must vanish (automatic when `p`
/// divides no elementary divisor), the free positions are lifted into
/// `[0, p)`, and the result is `V z`. The outcome reduces to `ybar` mod `p`.
pub fn lift_kernel_mod_p(m: &IntMatrix, ybar: &ModPVec) -> Result<Vec<BigInt>> {
    assert_eq!(m.cols(), ybar.len());
    let s = snf(m)?;
    let p = ybar.prime();
    let vbar = ModPMat::from_int(&s.v, p);
    let vinv = vbar
        .inverse()
        .ok_or_else(|| Error::Internal("unimodular transform not invertible mod p".into()))?;
    let zbar = vinv.mul_vec(ybar.coords());
    let rank = s.rank();
    if zbar.iter().take(rank).any(|&z| z != 0) {
        return Err(Error::LiftObstructed);
    }
    let z: Vec<BigInt> = zbar
        .iter()
        .enumerate()
        .map(|(i, &zi)| {
            if i < rank {
                BigInt::zero()
            } else {
                BigInt::from(zi)
            }
        })
        .collect();
    let lift = s.v.mul_vec(&z);
    debug_assert!(m.mul_vec(&lift).iter().all(Zero::is_zero));
    Ok(lift)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::Prime;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Independent elementary-divisor oracle: d_k = gcd(k-minors)/gcd((k-1)-minors).
    fn gcd_minor_divisors(m: &IntMatrix) -> Vec<BigInt> {
        let t = m.rows().min(m.cols());
        let mut prev = BigInt::one();
        let mut out = Vec::new();
        for k in 1..=t {
            let mut g = BigInt::zero();
            for rs in Combinations::new(m.rows(), k) {
                for cs in Combinations::new(m.cols(), k) {
                    let mut sub = IntMatrix::zero(k, k);
                    for (i, &r) in rs.iter().enumerate() {
                        for (j, &c) in cs.iter().enumerate() {
                            *sub.at_mut(i, j) = m.at(r, c).clone();
                        }
                    }
                    g = g.gcd(&sub.determinant());
                    if g == prev {
                        break;
                    }
                }
                if g == prev {
                    break;
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

    fn check_decomposition(m: &IntMatrix, s: &SmithDecomposition) {
        assert_eq!(s.u.mul(m).mul(&s.v), s.d, "U*M*V must equal D");
        assert!(s.u.determinant().magnitude().is_one());
        assert!(s.v.determinant().magnitude().is_one());
        let diag = s.diagonal();
        for i in 0..diag.len() {
            assert!(diag[i].sign() != Sign::Minus);
            if i + 1 < diag.len() && !diag[i + 1].is_zero() {
                assert!(!diag[i].is_zero(), "zero before nonzero in the chain");
                assert!((&diag[i + 1] % &diag[i]).is_zero(), "chain divisibility");
            }
        }
        for r in 0..s.d.rows() {
            for c in 0..s.d.cols() {
                if r != c {
                    assert!(s.d.at(r, c).is_zero());
                }
            }
        }
    }

    #[test]
    fn snf_identity() {
        let m = IntMatrix::identity(2);
        let s = snf(&m).unwrap();
        check_decomposition(&m, &s);
        assert_eq!(s.d, IntMatrix::identity(2));
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));
    }

    #[test]
    fn snf_diag_2_3() {
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]);
        let s = snf(&m).unwrap();
        check_decomposition(&m, &s);
        assert_eq!(s.elementary_divisors(), vec![big(1), big(6)]);
        assert_eq!(gcd_minor_divisors(&m), vec![big(1), big(6)]);
    }

    #[test]
    fn snf_p112_ray_matrix() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -2]]);
        let s = snf(&m).unwrap();
        check_decomposition(&m, &s);
        assert_eq!(s.elementary_divisors(), vec![big(1), big(1)]);
        assert_eq!(gcd_minor_divisors(&m), vec![big(1), big(1)]);
        assert_eq!(s.d.cols(), 3);
        assert!(s.d.at(0, 2).is_zero() && s.d.at(1, 2).is_zero());
    }

    #[test]
    fn kernel_of_injective_map_is_empty() {
        let m = IntMatrix::identity(2);
        assert!(integer_kernel(&m).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_p2_rays() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -1]]);
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k, vec![vec![big(1), big(1), big(1)]]);
    }

    #[test]
    fn kernel_of_p112_rays() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -2]]);
        let k = integer_kernel(&m).unwrap();
        assert_eq!(k, vec![vec![big(1), big(2), big(1)]]);
    }

    #[test]
    fn sublattice_divisors() {
        let gens = vec![vec![big(1), big(0)], vec![big(0), big(1)]];
        assert_eq!(
            elementary_divisors_of_sublattice(&gens, 2),
            (2, vec![big(1), big(1)])
        );
        let gens = vec![
            vec![big(1), big(0)],
            vec![big(0), big(2)],
            vec![big(-1), big(-2)],
        ];
        assert_eq!(
            elementary_divisors_of_sublattice(&gens, 2),
            (2, vec![big(1), big(2)])
        );
        assert_eq!(elementary_divisors_of_sublattice(&[], 2), (0, vec![]));
    }

    #[test]
    fn positive_relation_p2() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -1]]);
        assert_eq!(positive_relation(&m).unwrap(), vec![big(1), big(1), big(1)]);
    }

    #[test]
    fn positive_relation_p112() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -2]]);
        assert_eq!(positive_relation(&m).unwrap(), vec![big(1), big(2), big(1)]);
    }

    #[test]
    fn positive_relation_hirzebruch_one() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1, 0], &[0, 1, 1, -1]]);
        assert_eq!(
            positive_relation(&m).unwrap(),
            vec![big(1), big(1), big(1), big(2)]
        );
    }

    #[test]
    fn positive_relation_absent() {
        let m = IntMatrix::identity(2);
        assert_eq!(positive_relation(&m), Err(Error::NoPositiveRelation));
    }

    #[test]
    fn hermite_basis_is_canonical() {
        let gens = vec![
            vec![big(2), big(0)],
            vec![big(0), big(2)],
            vec![big(-1), big(-1)],
        ];
        let h = row_hermite_basis(&gens);
        assert_eq!(h, vec![vec![big(1), big(1)], vec![big(0), big(2)]]);
    }

    #[test]
    fn lift_kernel_mod_p_p112() {
        let m = IntMatrix::from_i64_rows(&[&[1, 0, -1], &[0, 1, -2]]);
        let p = Prime::new(3).unwrap();
        let ybar = ModPVec::new(p, vec![1, 2, 1]);
        let lift = lift_kernel_mod_p(&m, &ybar).unwrap();
        assert!(m.mul_vec(&lift).iter().all(Zero::is_zero));
        for (c, &y) in lift.iter().zip(ybar.coords()) {
            assert_eq!(c.mod_floor(&big(3)), big(y as i64));
        }
    }

    #[test]
    fn lift_rejects_obstructed_element() {
        // rays of P(1,1,2) mod 2: kernel contains (1,0,1), whose only integer
        // preimages are odd multiples of (1,2,1) -- liftable; but the matrix
        // [[2,0],[0,1]] has kernel 0 while mod 2 the kernel is spanned by e1.
        let m = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        let p = Prime::new(2).unwrap();
        let ybar = ModPVec::new(p, vec![1, 0]);
        assert_eq!(lift_kernel_mod_p(&m, &ybar), Err(Error::LiftObstructed));
    }

    #[test]
    fn determinant_matches_cofactor_cases() {
        let m = IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]);
        assert_eq!(m.determinant(), big(-2));
        let m = IntMatrix::from_i64_rows(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]);
        assert_eq!(m.determinant(), big(-2));
    }

    #[test]
    fn unimodular_inverse_roundtrip() {
        let m = IntMatrix::from_i64_rows(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse_unimodular().unwrap();
        assert_eq!(m.mul(&inv), IntMatrix::identity(2));
        let not_uni = IntMatrix::from_i64_rows(&[&[2, 0], &[0, 1]]);
        assert!(not_uni.inverse_unimodular().is_err());
    }

    #[test]
    fn snf_matches_minor_oracle_on_seeded_matrices() {
        use crate::rng::SplitMix64;
        let mut rng = SplitMix64::new(0xfeed);
        for _ in 0..60 {
            let rows = 1 + rng.below(5) as usize;
            let cols = 1 + rng.below(6) as usize;
            let entries: Vec<BigInt> = (0..rows * cols)
                .map(|_| big(rng.range_i64(-9, 9)))
                .collect();
            let m = IntMatrix::new(rows, cols, entries).unwrap();
            let s = snf(&m).unwrap();
            check_decomposition(&m, &s);
            assert_eq!(s.elementary_divisors(), gcd_minor_divisors(&m));
        }
    }
}
