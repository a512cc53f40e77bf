//! Bipolar patterns, Hebbian training of the interconnection matrix, the
//! fixed-point storage test, and the triangular decomposition.
//!
//! Training accumulates outer products of memories into a symmetric,
//! zero-diagonal integer matrix `T`. A memory counts as stored when it is a
//! fixed point of `x = sgn(T x)` under the positive-zero signum convention.
//! Splitting `T = B + Bᵗ` yields the strictly lower-triangular `B` that
//! drives sequential single-neuron retrieval.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngExt};

use crate::error::{Error, Result};

/// Signum with the positive-zero convention: `+1` for `k >= 0`, `-1` otherwise.
///
/// Never returns 0, so every thresholded sum stays bipolar.
#[inline]
pub fn sgn(k: i64) -> i8 {
    if k >= 0 {
        1
    } else {
        -1
    }
}

/// A length-`n` pattern over `{-1, +1}`.
///
/// Both trained memories and retrieval outputs use this type. Values are
/// validated on construction; a `BipolarVector` never holds anything but
/// `-1` and `+1`, and always has at least 2 components.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BipolarVector {
    signs: Vec<i8>,
}

impl BipolarVector {
    pub fn from_signs(signs: Vec<i8>) -> Result<Self> {
        if signs.len() < 2 {
            return Err(Error::NetworkTooSmall(signs.len()));
        }
        for (index, &s) in signs.iter().enumerate() {
            if s != 1 && s != -1 {
                return Err(Error::NotBipolar {
                    index,
                    value: s as i64,
                });
            }
        }
        Ok(Self { signs })
    }

    /// Draws each component iid uniform over `{-1, +1}`.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        let signs = (0..n)
            .map(|_| if rng.random::<bool>() { 1 } else { -1 })
            .collect();
        Ok(Self { signs })
    }

    #[allow(clippy::len_without_is_empty)] // constructors enforce n >= 2
    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    /// Component at `i` (0-based). Panics when out of range.
    pub fn get(&self, i: usize) -> i8 {
        self.signs[i]
    }

    pub fn complement(&self) -> Self {
        Self {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

/// Renders as one `+`/`-` character per component, e.g. `+-++`.
impl fmt::Display for BipolarVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.signs {
            f.write_str(if s > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

impl FromStr for BipolarVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut signs = Vec::with_capacity(s.len());
        for (index, c) in s.chars().enumerate() {
            match c {
                '+' => signs.push(1),
                '-' => signs.push(-1),
                other => {
                    return Err(Error::NotBipolar {
                        index,
                        value: other as i64,
                    })
                }
            }
        }
        Self::from_signs(signs)
    }
}

/// The symmetric interconnection matrix accumulated by Hebbian training.
///
/// Entries are exact integers: each accumulated memory contributes `±1` per
/// off-diagonal pair, the diagonal is pinned to zero, and `memory_count`
/// tracks how many memories have been folded in. Invariants (symmetry, zero
/// diagonal, `|entry| <= memory_count`, entry/count parity) are enforced at
/// construction and preserved by every operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TMatrix {
    entries: Vec<i32>, // row-major n*n
    n: usize,
    memory_count: usize,
}

impl TMatrix {
    /// The untrained network: all-zero entries, no memories.
    pub fn zeros(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        Ok(Self {
            entries: vec![0; n * n],
            n,
            memory_count: 0,
        })
    }

    /// Builds from explicit rows, validating every invariant against
    /// `memory_count`.
    #[allow(clippy::needless_range_loop)] // (i, j) and (j, i) are compared
    pub fn from_entries(rows: Vec<Vec<i32>>, memory_count: usize) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::NetworkTooSmall(n));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        for i in 0..n {
            if rows[i][i] != 0 {
                return Err(Error::NonzeroDiagonal(i));
            }
            for j in (i + 1)..n {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::NotSymmetric {
                        row: i,
                        col: j,
                        value: rows[i][j] as f64,
                        mirror: rows[j][i] as f64,
                    });
                }
                let v = rows[i][j];
                if v.unsigned_abs() as usize > memory_count {
                    return Err(Error::EntryExceedsCount {
                        row: i,
                        col: j,
                        value: v,
                        count: memory_count,
                    });
                }
                if v.rem_euclid(2) as usize != memory_count % 2 {
                    return Err(Error::EntryParity {
                        row: i,
                        col: j,
                        value: v,
                        count: memory_count,
                    });
                }
            }
        }
        let entries = rows.into_iter().flatten().collect();
        Ok(Self {
            entries,
            n,
            memory_count,
        })
    }

    pub(crate) fn from_raw_unchecked(entries: Vec<i32>, n: usize, memory_count: usize) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        Self {
            entries,
            n,
            memory_count,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn memory_count(&self) -> usize {
        self.memory_count
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    /// Folds one memory into the matrix: `T[i][j] += x[i]·x[j]` for `i != j`,
    /// diagonal pinned to zero. Returns the trained matrix; `self` is left
    /// untouched.
    pub fn accumulate(&self, x: &BipolarVector) -> Result<TMatrix> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let n = self.n;
        let signs = x.signs();
        let mut entries = self.entries.clone();
        for i in 0..n {
            for j in (i + 1)..n {
                let delta = (signs[i] * signs[j]) as i32;
                entries[i * n + j] += delta;
                entries[j * n + i] += delta;
            }
        }
        Ok(Self {
            entries,
            n,
            memory_count: self.memory_count + 1,
        })
    }

    /// The fixed-point storage test: true iff `sgn(T x) = x` componentwise,
    /// with zero row sums counting as `+1`.
    pub fn is_stored(&self, x: &BipolarVector) -> Result<bool> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: x.len(),
            });
        }
        let signs = x.signs();
        for i in 0..self.n {
            let row = &self.entries[i * self.n..(i + 1) * self.n];
            let sum: i64 = row
                .iter()
                .zip(signs)
                .map(|(&t, &s)| t as i64 * s as i64)
                .sum();
            if sgn(sum) != signs[i] {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// How many positions in `fed` pass the storage test. Duplicates are
    /// counted once per occurrence.
    pub fn count_stored(&self, fed: &[BipolarVector]) -> Result<usize> {
        let mut count = 0;
        for x in fed {
            if self.is_stored(x)? {
                count += 1;
            }
        }
        Ok(count)
    }

    /// Splits off the strictly lower triangle, so `B + Bᵗ` reproduces this
    /// matrix exactly.
    pub fn lower_triangular(&self) -> BMatrix {
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 1..n {
            for j in 0..i {
                entries[i * n + j] = self.entries[i * n + j];
            }
        }
        BMatrix { entries, n }
    }
}

/// Strictly lower-triangular half of a [`TMatrix`].
///
/// Row `i` holds weights only toward neurons earlier in the current order,
/// which is what lets retrieval assign one component per step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BMatrix {
    entries: Vec<i32>, // row-major n*n, zero on and above the diagonal
    n: usize,
}

impl BMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    #[inline]
    pub(crate) fn row(&self, i: usize) -> &[i32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn bv(signs: &[i8]) -> BipolarVector {
        BipolarVector::from_signs(signs.to_vec()).unwrap()
    }

    #[test]
    fn sgn_zero_is_positive() {
        assert_eq!(sgn(0), 1);
    }

    #[test]
    fn sgn_follows_the_argument_sign() {
        assert_eq!(sgn(7), 1);
        assert_eq!(sgn(-3), -1);
    }

    #[test]
    fn bipolar_rejects_bad_values() {
        assert!(matches!(
            BipolarVector::from_signs(vec![1, 0, -1]),
            Err(Error::NotBipolar { index: 1, .. })
        ));
        assert!(matches!(
            BipolarVector::from_signs(vec![1]),
            Err(Error::NetworkTooSmall(1))
        ));
    }

    #[test]
    fn bipolar_display_parse_round_trip() {
        let x = bv(&[1, -1, 1, 1, -1]);
        assert_eq!(x.to_string(), "+-++-");
        assert_eq!("+-++-".parse::<BipolarVector>().unwrap(), x);
        assert!("+a+".parse::<BipolarVector>().is_err());
    }

    #[test]
    fn complement_negates_every_component() {
        let x = bv(&[1, -1, 1]);
        assert_eq!(x.complement(), bv(&[-1, 1, -1]));
    }

    fn assert_entries(t: &TMatrix, expected: &[[i32; 3]; 3]) {
        for (i, row) in expected.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                assert_eq!(t.entry(i, j), v, "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn accumulate_single_outer_product() {
        let t = TMatrix::zeros(3).unwrap();
        let t = t.accumulate(&bv(&[1, 1, -1])).unwrap();
        assert_entries(&t, &[[0, 1, -1], [1, 0, -1], [-1, -1, 0]]);
        assert_eq!(t.memory_count(), 1);
    }

    #[test]
    fn accumulate_same_memory_twice_doubles_magnitudes() {
        let x = bv(&[1, 1, -1]);
        let t = TMatrix::zeros(3).unwrap().accumulate(&x).unwrap();
        let t = t.accumulate(&x).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                if i != j {
                    assert_eq!(t.entry(i, j).abs(), 2);
                }
            }
        }
    }

    // Expected entries checked against a by-hand outer-product sum:
    // x1 x1t gives (0,1)=+1 (0,2)=-1 (1,2)=-1; x2 x2t gives -1, +1, -1.
    #[test]
    fn accumulate_two_memories() {
        let t = TMatrix::zeros(3)
            .unwrap()
            .accumulate(&bv(&[1, 1, -1]))
            .unwrap()
            .accumulate(&bv(&[1, -1, 1]))
            .unwrap();
        assert_entries(&t, &[[0, 0, 0], [0, 0, -2], [0, -2, 0]]);
        assert_eq!(t.memory_count(), 2);
    }

    #[test]
    fn accumulate_rejects_wrong_dimension() {
        let t = TMatrix::zeros(3).unwrap();
        assert!(matches!(
            t.accumulate(&bv(&[1, -1])),
            Err(Error::DimensionMismatch {
                expected: 3,
                actual: 2
            })
        ));
    }

    #[test]
    fn single_memory_is_a_fixed_point() {
        let m = bv(&[1, -1]);
        let t = TMatrix::zeros(2).unwrap().accumulate(&m).unwrap();
        assert_eq!(t.entry(0, 1), -1);
        assert!(t.is_stored(&m).unwrap());
    }

    // Row sums computed by hand; the first row is all zero, which exercises
    // the sgn(0) = +1 convention.
    #[test]
    fn storage_test_with_zero_row_sum() {
        let t =
            TMatrix::from_entries(vec![vec![0, 0, 0], vec![0, 0, -2], vec![0, -2, 0]], 2).unwrap();
        assert!(t.is_stored(&bv(&[1, 1, -1])).unwrap());
        assert!(!t.is_stored(&bv(&[-1, 1, 1])).unwrap());
    }

    #[test]
    fn count_stored_basics() {
        let m = bv(&[1, -1, 1, -1]);
        let t = TMatrix::zeros(4).unwrap().accumulate(&m).unwrap();
        assert_eq!(t.count_stored(std::slice::from_ref(&m)).unwrap(), 1);
        assert_eq!(t.count_stored(&[]).unwrap(), 0);
        // duplicates count separately
        assert_eq!(t.count_stored(&[m.clone(), m.clone()]).unwrap(), 2);
    }

    // Independent re-evaluation of the storage condition straight from the
    // raw entries, kept free of TMatrix methods.
    fn oracle_is_stored(t: &TMatrix, x: &BipolarVector) -> bool {
        let n = t.n();
        (0..n).all(|i| {
            let mut sum: i64 = 0;
            for j in 0..n {
                sum += t.entry(i, j) as i64 * x.get(j) as i64;
            }
            let s = if sum >= 0 { 1 } else { -1 };
            s == x.get(i)
        })
    }

    #[test]
    fn count_stored_matches_direct_evaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let n = 8;
        let fed: Vec<_> = (0..12)
            .map(|_| BipolarVector::random(n, &mut rng).unwrap())
            .collect();
        let mut t = TMatrix::zeros(n).unwrap();
        for m in &fed {
            t = t.accumulate(m).unwrap();
        }
        let expected = fed.iter().filter(|m| oracle_is_stored(&t, m)).count();
        assert_eq!(t.count_stored(&fed).unwrap(), expected);
    }

    #[test]
    fn lower_triangular_two_by_two() {
        let t = TMatrix::from_entries(vec![vec![0, 1], vec![1, 0]], 1).unwrap();
        let b = t.lower_triangular();
        assert_eq!(b.entry(0, 0), 0);
        assert_eq!(b.entry(0, 1), 0);
        assert_eq!(b.entry(1, 0), 1);
        assert_eq!(b.entry(1, 1), 0);
    }

    #[test]
    fn lower_triangular_of_zeros_is_zero() {
        let t = TMatrix::zeros(5).unwrap();
        let b = t.lower_triangular();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(b.entry(i, j), 0);
            }
        }
    }

    #[test]
    fn lower_triangular_reconstructs_the_source() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let n = 16;
        let mut t = TMatrix::zeros(n).unwrap();
        for _ in 0..5 {
            t = t
                .accumulate(&BipolarVector::random(n, &mut rng).unwrap())
                .unwrap();
        }
        let b = t.lower_triangular();
        for i in 0..n {
            for j in 0..n {
                assert_eq!(b.entry(i, j) + b.entry(j, i), t.entry(i, j));
                if i <= j {
                    assert_eq!(b.entry(i, j), 0);
                }
            }
        }
    }

    #[test]
    fn from_entries_validates_invariants() {
        assert!(matches!(
            TMatrix::from_entries(vec![vec![0, 1], vec![2, 0]], 2),
            Err(Error::NotSymmetric { .. })
        ));
        assert!(matches!(
            TMatrix::from_entries(vec![vec![1, 0], vec![0, 0]], 2),
            Err(Error::NonzeroDiagonal(0))
        ));
        assert!(matches!(
            TMatrix::from_entries(vec![vec![0, 3], vec![3, 0]], 2),
            Err(Error::EntryExceedsCount { .. })
        ));
        assert!(matches!(
            TMatrix::from_entries(vec![vec![0, 1], vec![1, 0]], 2),
            Err(Error::EntryParity { .. })
        ));
    }
}
