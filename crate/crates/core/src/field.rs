//! Exact dense linear algebra over the prime field ℤ/pℤ.
//!
//! Residues are stored as `u32` in `[0, p)`. Matrices are dense and row-major;
//! the systems handled here have at most a few dozen rows, so no attempt is
//! made at sparsity or blocking.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("modulus {0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} does not fit in 32 bits")]
    TooLarge(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// The field ℤ/pℤ for a prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    /// Primality is checked by trial division up to √p.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p > u64::from(u32::MAX) {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Self { p: p as u32 })
    }

    pub const fn binary() -> Self {
        Self { p: 2 }
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u32 {
        (v % u64::from(self.p)) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(&self, v: i64) -> u32 {
        v.rem_euclid(i64::from(self.p)) as u32
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) + u64::from(b)) % u64::from(self.p)) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((u64::from(a) * u64::from(b)) % u64::from(self.p)) as u32
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    /// Returns `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        let (mut old_r, mut r) = (i64::from(a), i64::from(self.p));
        let (mut old_s, mut s) = (1i64, 0i64);
        while r != 0 {
            let q = old_r / r;
            (old_r, r) = (r, old_r - q * r);
            (old_s, s) = (s, old_s - q * s);
        }
        debug_assert_eq!(old_r, 1);
        Some(self.reduce_signed(old_s))
    }
}

impl fmt::Display for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}Z", self.p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A vector of residues. Every entry lies in `[0, p)` for the field it was
/// built against.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldVector(Vec<u32>);

impl FieldVector {
    pub fn zeros(len: usize) -> Self {
        Self(vec![0; len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = 1;
        v
    }

    /// Builds a vector from arbitrary integers, reducing each mod p.
    pub fn from_values<I>(values: I, f: &PrimeField) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        Self(values.into_iter().map(|v| f.reduce_signed(v)).collect())
    }

    /// Wraps residues that are already reduced.
    pub fn from_residues(entries: Vec<u32>, f: &PrimeField) -> Self {
        assert!(
            entries.iter().all(|&e| e < f.modulus()),
            "entries must be reduced mod {}",
            f.modulus()
        );
        Self(entries)
    }

    /// Wraps residues the caller has already reduced.
    pub(crate) fn from_residues_unchecked(entries: Vec<u32>) -> Self {
        Self(entries)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn set(&mut self, i: usize, value: u32, f: &PrimeField) {
        self.0[i] = value % f.modulus();
    }

    pub fn add(&self, other: &Self, f: &PrimeField) -> Self {
        assert_eq!(self.len(), other.len());
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f.add(a, b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self, f: &PrimeField) -> Self {
        assert_eq!(self.len(), other.len());
        Self(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| f.sub(a, b))
                .collect(),
        )
    }

    pub fn neg(&self, f: &PrimeField) -> Self {
        Self(self.0.iter().map(|&a| f.neg(a)).collect())
    }

    pub fn scale(&self, c: u32, f: &PrimeField) -> Self {
        Self(self.0.iter().map(|&a| f.mul(a, c)).collect())
    }
}

impl fmt::Display for FieldVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dense row-major matrix over ℤ/pℤ.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FieldMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a matrix from row slices of integers, reducing mod p.
    /// Panics if the rows are ragged.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R], f: &PrimeField) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&v| f.reduce_signed(v)));
        }
        Self {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds the matrix whose columns are the given vectors.
    pub fn from_columns(len: usize, columns: &[FieldVector]) -> Self {
        let mut m = Self::zeros(len, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), len);
            for i in 0..len {
                m.data[i * m.cols + j] = c.get(i);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: u32, f: &PrimeField) {
        self.data[i * self.cols + j] = value % f.modulus();
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> FieldVector {
        FieldVector((0..self.rows).map(|i| self.get(i, j)).collect())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `[self | other]`.
    pub fn hconcat(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.rows != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Self {
            rows: self.rows,
            cols,
            data,
        })
    }

    /// Stacks `other` below `self`.
    pub fn vconcat(&self, other: &Self) -> Result<Self, LinalgError> {
        if self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Self {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &FieldVector, f: &PrimeField) -> Result<FieldVector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        let p = u64::from(f.modulus());
        let out = (0..self.rows)
            .map(|i| {
                let acc = self
                    .row(i)
                    .iter()
                    .zip(v.as_slice())
                    .fold(0u64, |acc, (&a, &b)| {
                        (acc + u64::from(a) * u64::from(b)) % p
                    });
                acc as u32
            })
            .collect();
        Ok(FieldVector(out))
    }

    pub fn mul_mat(&self, other: &Self, f: &PrimeField) -> Result<Self, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * out.cols + j;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: u32, f: &PrimeField) {
        for j in 0..self.cols {
            let idx = r * self.cols + j;
            self.data[idx] = f.mul(self.data[idx], c);
        }
    }

    /// row[dst] -= c * row[src]
    fn eliminate(&mut self, dst: usize, src: usize, c: u32, f: &PrimeField) {
        for j in 0..self.cols {
            let s = self.data[src * self.cols + j];
            if s == 0 {
                continue;
            }
            let idx = dst * self.cols + j;
            self.data[idx] = f.sub(self.data[idx], f.mul(c, s));
        }
    }
}

impl fmt::Display for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let parts: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub reduced: FieldMatrix,
    /// Pivot columns in ascending order.
    pub pivots: Vec<usize>,
    pub rank: usize,
}

/// Gauss-Jordan elimination to reduced row-echelon form.
pub fn rref(m: &FieldMatrix, f: &PrimeField) -> Rref {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(pivot_row) = (row..a.rows).find(|&r| a.get(r, col) != 0) else {
            continue;
        };
        a.swap_rows(row, pivot_row);
        let inv = f.inv(a.get(row, col)).expect("pivot is nonzero");
        a.scale_row(row, inv, f);
        for r in 0..a.rows {
            if r != row {
                let c = a.get(r, col);
                if c != 0 {
                    a.eliminate(r, row, c, f);
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    let rank = pivots.len();
    Rref {
        reduced: a,
        pivots,
        rank,
    }
}

pub fn rank(m: &FieldMatrix, f: &PrimeField) -> usize {
    rref(m, f).rank
}

/// Basis of the right nullspace, one vector per free column in ascending
/// order: the free variable is set to 1, other free variables to 0, and the
/// pivot variables are read off the reduced rows.
pub fn kernel_basis(m: &FieldMatrix, f: &PrimeField) -> Vec<FieldVector> {
    let Rref {
        reduced, pivots, ..
    } = rref(m, f);
    let mut is_pivot = vec![false; m.cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    (0..m.cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = FieldVector::zeros(m.cols);
            v.0[free] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v.0[pc] = f.neg(reduced.get(r, free));
            }
            v
        })
        .collect()
}

/// One particular solution of `m·x = rhs` with all free variables zero, or
/// `Ok(None)` when the system is inconsistent.
pub fn solve(
    m: &FieldMatrix,
    rhs: &FieldVector,
    f: &PrimeField,
) -> Result<Option<FieldVector>, LinalgError> {
    if rhs.len() != m.rows {
        return Err(LinalgError::DimensionMismatch {
            expected: m.rows,
            found: rhs.len(),
        });
    }
    let augmented = m.hconcat(&FieldMatrix::from_columns(
        m.rows,
        std::slice::from_ref(rhs),
    ))?;
    let Rref {
        reduced, pivots, ..
    } = rref(&augmented, f);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut x = FieldVector::zeros(m.cols);
    for (r, &pc) in pivots.iter().enumerate() {
        x.0[pc] = reduced.get(r, m.cols);
    }
    Ok(Some(x))
}

/// True when the two families of vectors span the same subspace.
pub fn same_span(a: &[FieldVector], b: &[FieldVector], f: &PrimeField) -> bool {
    let len = match (a.first(), b.first()) {
        (Some(v), _) | (None, Some(v)) => v.len(),
        (None, None) => return true,
    };
    let ma = FieldMatrix::from_columns(len, a).transpose();
    let mb = FieldMatrix::from_columns(len, b).transpose();
    let ra = rank(&ma, f);
    let rb = rank(&mb, f);
    let stacked = ma.vconcat(&mb).expect("equal lengths");
    ra == rb && rank(&stacked, f) == ra
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn gf(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn cycle5_lambda() -> FieldMatrix {
        FieldMatrix::from_rows(
            &[
                [1, 0, 0, 0, 0, 0, 1, 0, 0, 1],
                [0, 1, 0, 0, 0, 1, 0, 1, 0, 0],
                [0, 0, 1, 0, 0, 0, 1, 0, 1, 0],
                [0, 0, 0, 1, 0, 0, 0, 1, 0, 1],
                [0, 0, 0, 0, 1, 1, 0, 0, 1, 0],
            ],
            &gf(2),
        )
    }

    #[test]
    fn primality() {
        for p in [2, 3, 5, 7, 11, 13, 65521, 65537] {
            assert!(PrimeField::new(p).is_ok(), "{p}");
        }
        for p in [0, 1, 4, 9, 15, 65535] {
            assert_eq!(PrimeField::new(p), Err(FieldError::NotPrime(p)));
        }
        assert!(matches!(
            PrimeField::new(1 << 40),
            Err(FieldError::TooLarge(_))
        ));
    }

    #[test]
    fn inverses() {
        for p in [2u64, 3, 5, 7, 13, 101] {
            let f = gf(p);
            assert_eq!(f.inv(0), None);
            for a in 1..p as u32 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "p={p} a={a}");
            }
        }
    }

    #[test]
    fn rref_identity() {
        let f = gf(2);
        let r = rref(&FieldMatrix::identity(3), &f);
        assert_eq!(r.reduced, FieldMatrix::identity(3));
        assert_eq!(r.pivots, vec![0, 1, 2]);
        assert_eq!(r.rank, 3);
    }

    #[test]
    fn rref_cycle5_lambda_full_rank() {
        assert_eq!(rref(&cycle5_lambda(), &gf(2)).rank, 5);
    }

    #[test]
    fn rref_zero() {
        let f = gf(3);
        let r = rref(&FieldMatrix::zeros(2, 2), &f);
        assert_eq!(r.reduced, FieldMatrix::zeros(2, 2));
        assert!(r.pivots.is_empty());
        assert_eq!(r.rank, 0);
    }

    #[test]
    fn kernel_cycle5_contains_listed_vectors() {
        let f = gf(2);
        let basis = kernel_basis(&cycle5_lambda(), &f);
        assert_eq!(basis.len(), 5);
        let listed: Vec<FieldVector> = [
            [0, 1, 0, 0, 1, 1, 0, 0, 0, 0],
            [1, 0, 1, 0, 0, 0, 1, 0, 0, 0],
            [0, 1, 0, 1, 0, 0, 0, 1, 0, 0],
            [0, 0, 1, 0, 1, 0, 0, 0, 1, 0],
            [1, 0, 0, 1, 0, 0, 0, 0, 0, 1],
        ]
        .iter()
        .map(|r| FieldVector::from_values(r.iter().copied(), &f))
        .collect();
        assert!(same_span(&basis, &listed, &f));
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        assert!(kernel_basis(&FieldMatrix::identity(4), &gf(5)).is_empty());
    }

    #[test]
    fn kernel_of_single_equation() {
        let f = gf(2);
        let m = FieldMatrix::from_rows(&[[1, 1]], &f);
        assert_eq!(
            kernel_basis(&m, &f),
            vec![FieldVector::from_values([1, 1], &f)]
        );
    }

    #[test]
    fn solve_identity_returns_rhs() {
        let f = gf(7);
        let rhs = FieldVector::from_values([3, 0, 6, 1], &f);
        assert_eq!(
            solve(&FieldMatrix::identity(4), &rhs, &f).unwrap(),
            Some(rhs)
        );
    }

    #[test]
    fn solve_lambda_gives_rhs_in_z_block() {
        let f = gf(2);
        let d = FieldVector::from_values([1, 0, 1, 1, 0], &f);
        let s = solve(&cycle5_lambda(), &d, &f).unwrap().unwrap();
        let mut expected = d.clone().into_inner();
        expected.extend([0; 5]);
        assert_eq!(s.into_inner(), expected);
    }

    #[test]
    fn solve_zeroes_free_variables() {
        let f = gf(2);
        let m = FieldMatrix::from_rows(&[[1, 1]], &f);
        let s = solve(&m, &FieldVector::from_values([1], &f), &f).unwrap();
        assert_eq!(s, Some(FieldVector::from_values([1, 0], &f)));
    }

    #[test]
    fn solve_inconsistent() {
        let f = gf(3);
        let m = FieldMatrix::from_rows(&[[1, 2], [2, 4]], &f);
        let rhs = FieldVector::from_values([1, 0], &f);
        assert_eq!(solve(&m, &rhs, &f).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let f = gf(3);
        let err = solve(&FieldMatrix::identity(3), &FieldVector::zeros(2), &f).unwrap_err();
        assert_eq!(
            err,
            LinalgError::DimensionMismatch {
                expected: 3,
                found: 2
            }
        );
    }

    fn arb_matrix() -> impl Strategy<Value = (FieldMatrix, PrimeField)> {
        (
            prop::sample::select(vec![2u64, 3, 5]),
            1usize..=8,
            1usize..=8,
        )
            .prop_flat_map(|(p, rows, cols)| {
                prop::collection::vec(0..p as i64, rows * cols).prop_map(move |vals| {
                    let f = PrimeField::new(p).unwrap();
                    let rows_vec: Vec<Vec<i64>> = vals.chunks(cols).map(<[i64]>::to_vec).collect();
                    (FieldMatrix::from_rows(&rows_vec, &f), f)
                })
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn rank_nullity((m, f) in arb_matrix()) {
            let basis = kernel_basis(&m, &f);
            prop_assert_eq!(rank(&m, &f) + basis.len(), m.cols());
            for v in &basis {
                prop_assert!(m.mul_vec(v, &f).unwrap().is_zero());
            }
        }

        #[test]
        fn rref_is_idempotent((m, f) in arb_matrix()) {
            let once = rref(&m, &f);
            let twice = rref(&once.reduced, &f);
            prop_assert_eq!(&once, &twice);
            // Row space is preserved.
            let stacked = m.vconcat(&once.reduced).unwrap();
            prop_assert_eq!(rank(&stacked, &f), once.rank);
        }

        #[test]
        fn solutions_satisfy_system((m, f) in arb_matrix(), seed in any::<u64>()) {
            let x = FieldVector::from_values(
                (0..m.cols()).map(|j| (seed.rotate_left(j as u32 * 7) % 1000) as i64),
                &f,
            );
            let rhs = m.mul_vec(&x, &f).unwrap();
            let s = solve(&m, &rhs, &f).unwrap();
            prop_assert!(s.is_some());
            prop_assert_eq!(m.mul_vec(&s.unwrap(), &f).unwrap(), rhs);
        }
    }
}
