//! Divisor class lattices with intersection form, canonical class and a
//! conjugation involution.
//!
//! A [`RealLattice`] is a free Z-module with a labelled basis, a symmetric
//! integer Gram matrix, a distinguished canonical class and an involution
//! acting as a permutation of the basis (every conjugation occurring in the
//! constructions permutes curve classes, so permutations are all we model).
//! The group cohomology H^2 of the order-two group generated by the
//! involution is an F2 vector space; for permutation involutions it is freely
//! spanned by the fixed basis vectors, and the general kernel/image
//! computation is kept alongside as a cross-check.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{f2_is_isomorphism, smith_normal_form, F2Matrix, IntMatrix};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("gram matrix must be symmetric and match the basis size")]
    BadGram,
    #[error("involution must be a permutation of order at most two")]
    BadInvolution,
    #[error("involution does not preserve the intersection form")]
    FormNotPreserved,
    #[error("involution does not fix the canonical class")]
    CanonicalNotFixed,
    #[error("class length {got} does not match basis size {expected}")]
    ClassLength { expected: usize, got: usize },
    #[error("classes live in different lattices")]
    LatticeMismatch,
    #[error("map is not equivariant for the two involutions")]
    NotEquivariant,
    #[error("matrix shape does not match source/target ranks")]
    ShapeMismatch,
    #[error("the given classes do not form a unimodular basis")]
    NotABasis,
}

/// A based Z-lattice with intersection form, canonical class and involution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealLattice {
    basis: Vec<String>,
    gram: IntMatrix,
    canonical: Vec<BigInt>,
    involution: Vec<usize>,
}

impl RealLattice {
    pub fn new(
        basis: Vec<String>,
        gram: IntMatrix,
        canonical: Vec<BigInt>,
        involution: Vec<usize>,
    ) -> Result<Arc<Self>, LatticeError> {
        let n = basis.len();
        if gram.rows() != n || gram.cols() != n || !gram.is_symmetric() {
            return Err(LatticeError::BadGram);
        }
        if canonical.len() != n {
            return Err(LatticeError::ClassLength {
                expected: n,
                got: canonical.len(),
            });
        }
        if involution.len() != n
            || !involution.iter().all(|&i| i < n)
            || (0..n).any(|i| involution[involution[i]] != i)
        {
            return Err(LatticeError::BadInvolution);
        }
        // sigma^T G sigma = G for a permutation means G[s(i)][s(j)] = G[i][j].
        for i in 0..n {
            for j in 0..n {
                if gram[(involution[i], involution[j])] != gram[(i, j)] {
                    return Err(LatticeError::FormNotPreserved);
                }
            }
        }
        for i in 0..n {
            if canonical[involution[i]] != canonical[i] {
                return Err(LatticeError::CanonicalNotFixed);
            }
        }
        Ok(Arc::new(RealLattice {
            basis,
            gram,
            canonical,
            involution,
        }))
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn basis_index(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b == label)
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn canonical_class(self: &Arc<Self>) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(self),
            coeffs: self.canonical.clone(),
        }
    }

    pub fn class_from_coeffs(
        self: &Arc<Self>,
        coeffs: Vec<BigInt>,
    ) -> Result<DivisorClass, LatticeError> {
        if coeffs.len() != self.rank() {
            return Err(LatticeError::ClassLength {
                expected: self.rank(),
                got: coeffs.len(),
            });
        }
        Ok(DivisorClass {
            lattice: Arc::clone(self),
            coeffs,
        })
    }

    pub fn basis_class(self: &Arc<Self>, label: &str) -> Option<DivisorClass> {
        let i = self.basis_index(label)?;
        let mut coeffs = vec![BigInt::zero(); self.rank()];
        coeffs[i] = BigInt::one();
        Some(DivisorClass {
            lattice: Arc::clone(self),
            coeffs,
        })
    }

    pub fn zero_class(self: &Arc<Self>) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(self),
            coeffs: vec![BigInt::zero(); self.rank()],
        }
    }

    /// Applies the involution to a coefficient vector.
    pub fn conjugate_coeffs(&self, coeffs: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); coeffs.len()];
        for (i, c) in coeffs.iter().enumerate() {
            out[self.involution[i]] = c.clone();
        }
        out
    }

    /// Indices fixed by the involution, in basis order.
    pub fn fixed_indices(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| self.involution[i] == i)
            .collect()
    }

    /// The involution as a permutation matrix (column i is e_{sigma(i)}).
    pub fn involution_matrix(&self) -> IntMatrix {
        let n = self.rank();
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(self.involution[i], i)] = BigInt::one();
        }
        m
    }
}

/// An element of a [`RealLattice`], held as an integer coefficient vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorClass {
    lattice: Arc<RealLattice>,
    coeffs: Vec<BigInt>,
}

impl DivisorClass {
    pub fn lattice(&self) -> &Arc<RealLattice> {
        &self.lattice
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn conjugate(&self) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.lattice.conjugate_coeffs(&self.coeffs),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.check_same_lattice(other)?;
        Ok(DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.check_same_lattice(other)?;
        Ok(DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn scale(&self, k: &BigInt) -> DivisorClass {
        DivisorClass {
            lattice: Arc::clone(&self.lattice),
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    fn check_same_lattice(&self, other: &DivisorClass) -> Result<(), LatticeError> {
        if Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice == other.lattice {
            Ok(())
        } else {
            Err(LatticeError::LatticeMismatch)
        }
    }
}

/// Intersection pairing `u^T G v`.
pub fn pair(u: &DivisorClass, v: &DivisorClass) -> Result<BigInt, LatticeError> {
    u.check_same_lattice(v)?;
    let gv = u.lattice.gram.mul_vec(v.coeffs());
    Ok(u.coeffs.iter().zip(&gv).map(|(a, b)| a * b).sum())
}

pub fn self_intersection(u: &DivisorClass) -> BigInt {
    pair(u, u).expect("class pairs with itself")
}

/// H^2 of the order-two group acting through the lattice involution,
/// reported as an F2 dimension together with representative lifts.
#[derive(Debug, Clone)]
pub struct H2Space {
    pub dimension: usize,
    pub lifts: Vec<DivisorClass>,
}

/// For a permutation involution, ker(1 - sigma)/im(1 + sigma) is freely
/// spanned over F2 by the fixed basis vectors: a fixed vector has paired
/// coordinates equal, and im(1 + sigma) is spanned by e_i + e_sigma(i) for
/// the 2-cycles together with 2 e_i for the fixed indices. Lifts are chosen
/// in basis order, which makes reports reproducible.
pub fn galois_h2(lat: &Arc<RealLattice>) -> H2Space {
    let fixed = lat.fixed_indices();
    let lifts = fixed
        .iter()
        .map(|&i| {
            let mut coeffs = vec![BigInt::zero(); lat.rank()];
            coeffs[i] = BigInt::one();
            DivisorClass {
                lattice: Arc::clone(lat),
                coeffs,
            }
        })
        .collect();
    H2Space {
        dimension: fixed.len(),
        lifts,
    }
}

/// General computation of dim H^2 = dim ker(1 - sigma)/im(1 + sigma) through
/// Smith forms, independent of the permutation shortcut. Used as an oracle.
pub fn galois_h2_dimension_general(lat: &RealLattice) -> usize {
    let n = lat.rank();
    let sigma = lat.involution_matrix();
    let id = IntMatrix::identity(n);
    let mut one_minus = IntMatrix::zero(n, n);
    let mut one_plus = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            one_minus[(i, j)] = &id[(i, j)] - &sigma[(i, j)];
            one_plus[(i, j)] = &id[(i, j)] + &sigma[(i, j)];
        }
    }
    // Kernel basis of (1 - sigma): columns of `right` past the rank.
    let snf = smith_normal_form(&one_minus);
    let rank = snf.rank();
    let kernel_cols: Vec<Vec<BigInt>> = (rank..n).map(|j| snf.right.column(j)).collect();
    let k = kernel_cols.len();
    if k == 0 {
        return 0;
    }
    let kernel = IntMatrix::from_columns(n, &kernel_cols);
    // Express the generators of im(1 + sigma) in kernel coordinates. The
    // composite (1+sigma)(1-sigma) = 0 guarantees containment.
    let mut coords: Vec<Vec<BigInt>> = Vec::new();
    for j in 0..n {
        let gen = one_plus.column(j);
        let x = crate::exactalg::solve_integer_linear(&kernel, &gen)
            .expect("im(1+sigma) lies in ker(1-sigma)");
        coords.push(x);
    }
    let q = IntMatrix::from_columns(k, &coords);
    // H^2 = coker(q); count invariant factors divisible by 2 (all are 1 or 2
    // here) plus any free rank.
    let qsnf = smith_normal_form(&q);
    let mut dim = k - qsnf.rank();
    for d in &qsnf.diag {
        if !d.is_zero() && !d.is_one() {
            debug_assert_eq!(*d, BigInt::from(2), "H^2 has an invariant factor > 2");
            dim += 1;
        }
    }
    dim
}

/// An involution-equivariant homomorphism between two real lattices.
#[derive(Debug, Clone)]
pub struct GModuleMap {
    source: Arc<RealLattice>,
    target: Arc<RealLattice>,
    matrix: IntMatrix,
}

impl GModuleMap {
    pub fn new(
        source: Arc<RealLattice>,
        target: Arc<RealLattice>,
        matrix: IntMatrix,
    ) -> Result<Self, LatticeError> {
        if matrix.rows() != target.rank() || matrix.cols() != source.rank() {
            return Err(LatticeError::ShapeMismatch);
        }
        // Equivariance: sigma_target(M e_j) = M e_{sigma_source(j)}.
        for j in 0..source.rank() {
            let col = matrix.column(j);
            let lhs = target.conjugate_coeffs(&col);
            let rhs = matrix.column(source.involution[j]);
            if lhs != rhs {
                return Err(LatticeError::NotEquivariant);
            }
        }
        Ok(GModuleMap {
            source,
            target,
            matrix,
        })
    }

    pub fn source(&self) -> &Arc<RealLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<RealLattice> {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// Rewrites the map in a different target basis, given as classes forming
    /// a unimodular basis of the target lattice. Column order is preserved.
    pub fn matrix_in_target_basis(
        &self,
        basis: &[DivisorClass],
    ) -> Result<IntMatrix, LatticeError> {
        let n = self.target.rank();
        if basis.len() != n {
            return Err(LatticeError::NotABasis);
        }
        let p = IntMatrix::from_columns(
            n,
            &basis
                .iter()
                .map(|c| c.coeffs().to_vec())
                .collect::<Vec<_>>(),
        );
        if !crate::exactalg::is_unimodular(&p).map_err(|_| LatticeError::NotABasis)? {
            return Err(LatticeError::NotABasis);
        }
        let mut cols = Vec::with_capacity(self.matrix.cols());
        for j in 0..self.matrix.cols() {
            let col = self.matrix.column(j);
            let x =
                crate::exactalg::solve_integer_linear(&p, &col).ok_or(LatticeError::NotABasis)?;
            cols.push(x);
        }
        Ok(IntMatrix::from_columns(n, &cols))
    }
}

/// Matrix of the induced map on H^2 in the canonical (fixed-basis-vector)
/// bases. Entry (i, j) is the coefficient, mod 2, of the image of the j-th
/// source lift at the i-th fixed target index; the paired coordinates of an
/// invariant vector cancel modulo im(1 + sigma).
pub fn h2_induced(map: &GModuleMap) -> F2Matrix {
    let src_fixed = map.source.fixed_indices();
    let tgt_fixed = map.target.fixed_indices();
    let mut out = F2Matrix::zero(tgt_fixed.len(), src_fixed.len());
    let two = BigInt::from(2);
    for (j, &sj) in src_fixed.iter().enumerate() {
        let image = map.matrix.column(sj);
        for (i, &ti) in tgt_fixed.iter().enumerate() {
            let bit = image[ti].mod_floor(&two).is_one();
            out.set(i, j, bit);
        }
    }
    out
}

pub fn h2_induced_is_isomorphism(map: &GModuleMap) -> bool {
    f2_is_isomorphism(&h2_induced(map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::f2_rank;

    fn lat(
        labels: &[&str],
        gram: &[Vec<i64>],
        canonical: &[i64],
        involution: &[usize],
    ) -> Arc<RealLattice> {
        RealLattice::new(
            labels.iter().map(|s| s.to_string()).collect(),
            IntMatrix::from_rows(gram),
            canonical.iter().map(|&c| BigInt::from(c)).collect(),
            involution.to_vec(),
        )
        .unwrap()
    }

    #[test]
    fn projective_plane_pairings() {
        let l = lat(&["l"], &[vec![1]], &[-3], &[0]);
        let h = l.basis_class("l").unwrap();
        let k = l.canonical_class();
        assert_eq!(pair(&h, &h).unwrap(), BigInt::one());
        assert_eq!(pair(&k, &k).unwrap(), BigInt::from(9));
        assert_eq!(pair(&k, &h).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn rejects_bad_involutions() {
        let r = RealLattice::new(
            vec!["a".into(), "b".into()],
            IntMatrix::from_rows(&[vec![-1, 0], vec![0, -2]]),
            vec![BigInt::zero(), BigInt::zero()],
            vec![1, 0],
        );
        // Swapping basis vectors with different self-intersections breaks the form.
        assert_eq!(r.unwrap_err(), LatticeError::FormNotPreserved);

        let r = RealLattice::new(
            vec!["a".into(), "b".into()],
            IntMatrix::identity(2),
            vec![BigInt::one(), BigInt::zero()],
            vec![1, 0],
        );
        assert_eq!(r.unwrap_err(), LatticeError::CanonicalNotFixed);
    }

    #[test]
    fn h2_dimension_counts_fixed_vectors() {
        let trivial = lat(&["a", "b"], &[vec![1, 0], vec![0, 1]], &[0, 0], &[0, 1]);
        assert_eq!(galois_h2(&trivial).dimension, 2);
        assert_eq!(galois_h2_dimension_general(&trivial), 2);

        let swap = lat(&["a", "b"], &[vec![0, 1], vec![1, 0]], &[1, 1], &[1, 0]);
        assert_eq!(galois_h2(&swap).dimension, 0);
        assert_eq!(galois_h2_dimension_general(&swap), 0);
    }

    #[test]
    fn h2_induced_equals_mod2_for_trivial_involutions() {
        let src = lat(&["a", "b"], &[vec![0, 0], vec![0, 0]], &[0, 0], &[0, 1]);
        let tgt = lat(&["x", "y"], &[vec![0, 0], vec![0, 0]], &[0, 0], &[0, 1]);
        let m = IntMatrix::from_rows(&[vec![3, 4], vec![5, 6]]);
        let map = GModuleMap::new(src, tgt, m.clone()).unwrap();
        assert_eq!(h2_induced(&map), m.reduction_mod2());
    }

    #[test]
    fn equivariance_is_enforced() {
        let src = lat(&["p", "q"], &[vec![0, 1], vec![1, 0]], &[0, 0], &[1, 0]);
        let tgt = lat(&["x", "y"], &[vec![0, 1], vec![1, 0]], &[0, 0], &[1, 0]);
        // Maps p to x only: conjugating the image gives y, but sigma(p) = q
        // maps to x, so the map cannot be equivariant.
        let bad = IntMatrix::from_rows(&[vec![1, 1], vec![0, 0]]);
        assert!(GModuleMap::new(src.clone(), tgt.clone(), bad).is_err());
        let good = IntMatrix::from_rows(&[vec![1, 0], vec![0, 1]]);
        assert!(GModuleMap::new(src, tgt, good).is_ok());
    }

    #[test]
    fn conic_complement_h2_map_is_trivial() {
        let src = lat(&["B"], &[vec![4]], &[0], &[0]);
        let tgt = lat(&["l"], &[vec![1]], &[-3], &[0]);
        let map = GModuleMap::new(src, tgt, IntMatrix::from_rows(&[vec![2]])).unwrap();
        let induced = h2_induced(&map);
        assert_eq!(f2_rank(&induced), 0);
        assert!(!h2_induced_is_isomorphism(&map));
    }
}
