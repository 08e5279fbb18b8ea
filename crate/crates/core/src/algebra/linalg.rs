//! Exact linear algebra over the rationals. Elimination is fraction-free
//! (Bareiss) on integer rows obtained by clearing denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::{lcm_of_denominators, Rational};

/// Row echelon form produced by fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
    swaps: usize,
}

fn integer_rows(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|row| {
            assert_eq!(row.len(), ncols, "ragged matrix");
            let l = lcm_of_denominators(row.iter());
            let ints: Vec<BigInt> = row
                .iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect();
            let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
            if g.is_zero() || g.is_one() {
                ints
            } else {
                ints.into_iter().map(|v| v / &g).collect()
            }
        })
        .collect()
}

fn echelon(mut rows: Vec<Vec<BigInt>>, ncols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut swaps = 0;
    let mut previous = BigInt::one();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            rows.swap(p, r);
            swaps += 1;
        }
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let factor = row[c].clone();
            for j in c + 1..ncols {
                let v = &pivot_row[c] * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&v % &previous).is_zero(), "inexact Bareiss step");
                row[j] = v / &previous;
            }
            row[c] = BigInt::zero();
        }
        previous = rows[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    rows.truncate(pivots.len());
    Echelon {
        rows,
        pivots,
        swaps,
    }
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> usize {
    echelon(integer_rows(rows, ncols), ncols).pivots.len()
}

/// Basis of the right kernel `{x : A x = 0}`. Each vector is a primitive
/// integer vector whose last non-zero entry is positive; the list is empty
/// iff the matrix is injective.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let e = echelon(integer_rows(rows, ncols), ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !e.pivots.contains(c)).collect();
    let mut basis = Vec::with_capacity(free.len());
    for &f in &free {
        let mut x = vec![Rational::zero(); ncols];
        x[f] = Rational::one();
        for (r, &pc) in e.pivots.iter().enumerate().rev() {
            let mut sum = Rational::zero();
            for j in pc + 1..ncols {
                if !e.rows[r][j].is_zero() && !x[j].is_zero() {
                    sum += Rational::from_integer(e.rows[r][j].clone()) * &x[j];
                }
            }
            x[pc] = -sum / Rational::from_integer(e.rows[r][pc].clone());
        }
        basis.push(normalize(x));
    }
    basis
}

/// Scales to a primitive integer vector with positive last non-zero entry.
pub fn normalize(v: Vec<Rational>) -> Vec<Rational> {
    let l = lcm_of_denominators(v.iter());
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    let sign = match ints.iter().rev().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x * &sign / &g))
        .collect()
}

pub fn determinant(matrix: &[Vec<Rational>]) -> Rational {
    let n = matrix.len();
    if n == 0 {
        return Rational::one();
    }
    // Clearing denominators row by row scales the determinant.
    let mut scale = Rational::one();
    let rows: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "matrix is not square");
            let l = lcm_of_denominators(row.iter());
            scale *= Rational::from_integer(l.clone());
            row.iter()
                .map(|v| (v * Rational::from_integer(l.clone())).to_integer())
                .collect()
        })
        .collect();
    let e = echelon(rows, n);
    if e.pivots.len() < n {
        return Rational::zero();
    }
    // After full Bareiss elimination the last pivot is the determinant.
    let det = Rational::from_integer(e.rows[n - 1][n - 1].clone());
    let det = if e.swaps % 2 == 1 { -det } else { det };
    det / scale
}

pub fn mat_vec(rows: &[Vec<Rational>], x: &[Rational]) -> Vec<Rational> {
    rows.iter()
        .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum())
        .collect()
}

pub fn transpose(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    (0..ncols)
        .map(|c| rows.iter().map(|r| r[c].clone()).collect())
        .collect()
}

/// Finite-dimensional subspace of `Q^ambient`, stored as an independent
/// spanning set.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    /// Spanned by the given vectors (dependent ones are dropped).
    pub fn span(ambient: usize, vectors: impl IntoIterator<Item = Vec<Rational>>) -> Self {
        let mut basis: Vec<Vec<Rational>> = Vec::new();
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector has wrong length");
            if v.iter().all(Zero::is_zero) {
                continue;
            }
            let mut candidate = basis.clone();
            candidate.push(v.clone());
            if rank(&candidate, ambient) == candidate.len() {
                basis.push(v);
            }
        }
        Subspace { ambient, basis }
    }

    /// Kernel of the matrix with the given rows.
    pub fn kernel(rows: &[Vec<Rational>], ncols: usize) -> Self {
        Subspace {
            ambient: ncols,
            basis: nullspace(rows, ncols),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        if v.iter().all(Zero::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows, self.ambient) == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn same_as(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.dim() == other.dim() && self.contains_subspace(other)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let k = self.basis.len();
        let cols = k + other.basis.len();
        // Solve sum a_i v_i - sum b_j w_j = 0.
        let rows: Vec<Vec<Rational>> = (0..self.ambient)
            .map(|i| {
                self.basis
                    .iter()
                    .map(|v| v[i].clone())
                    .chain(other.basis.iter().map(|w| -w[i].clone()))
                    .collect()
            })
            .collect();
        let vectors = nullspace(&rows, cols).into_iter().map(|coeffs| {
            let mut v = vec![Rational::zero(); self.ambient];
            for (a, b) in coeffs[..k].iter().zip(&self.basis) {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += a * bi;
                }
            }
            normalize(v)
        });
        Subspace::span(self.ambient, vectors)
    }

    /// Vectors vanishing on the given coordinates.
    pub fn coordinate(ambient: usize, zero_coords: &[usize]) -> Subspace {
        Subspace::span(
            ambient,
            (0..ambient).filter(|i| !zero_coords.contains(i)).map(|i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            }),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| int(v)).collect())
            .collect()
    }

    #[test]
    fn identity_is_injective() {
        assert!(nullspace(&m(&[&[1, 0], &[0, 1]]), 2).is_empty());
    }

    #[test]
    fn rank_one_kernel() {
        let k = nullspace(&m(&[&[1, 1], &[2, 2]]), 2);
        assert_eq!(k, vec![vec![int(-1), int(1)]]);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let a = vec![
            vec![rat(1, 2), int(3), int(-1), int(0)],
            vec![int(2), rat(-1, 3), int(4), int(1)],
            vec![rat(5, 2), rat(8, 3), int(3), int(1)],
        ];
        let k = nullspace(&a, 4);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(mat_vec(&a, v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn determinants() {
        assert_eq!(determinant(&m(&[&[1, 1], &[1, 0]])), int(-1));
        assert_eq!(
            determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])),
            int(6)
        );
        assert_eq!(
            determinant(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 1]])),
            int(0)
        );
        assert_eq!(determinant(&m(&[&[1, 2], &[2, 4]])), int(0));
        assert_eq!(
            determinant(&[vec![rat(1, 2), int(0)], vec![int(0), rat(2, 3)]]),
            rat(1, 3)
        );
        assert_eq!(determinant(&m(&[&[0, 1], &[1, 0]])), int(-1));
    }

    #[test]
    fn subspace_intersection() {
        let a = Subspace::span(
            3,
            [vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]],
        );
        let b = Subspace::span(
            3,
            [vec![int(1), int(1), int(1)], vec![int(0), int(1), int(-1)]],
        );
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[int(1), int(2), int(0)]));
    }

    #[test]
    fn span_drops_dependent_vectors() {
        let s = Subspace::span(
            2,
            [
                vec![int(1), int(2)],
                vec![int(2), int(4)],
                vec![int(0), int(0)],
            ],
        );
        assert_eq!(s.dim(), 1);
    }
}
