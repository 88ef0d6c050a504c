//! Generalized Cartan matrices, symmetrizers, root-lattice vectors with the
//! symmetrized bilinear form, integer linear algebra (kernels and solves over
//! the root lattice), and the Weyl-vector solve used by the star calculus.
//!
//! Root-lattice and weight vectors are stored in *doubled* coordinates on the
//! simple-root basis: the vector `sum_i (c_i/2) alpha_i` is stored as the
//! integer tuple `(c_1, ..., c_n)`.  This keeps the half-lattice (where the
//! group-like generators live) integral.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CartanError {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGeneralizedCartan(String),
    #[error("matrix is not symmetrizable")]
    NotSymmetrizable,
    #[error("symmetrized form is degenerate; no Weyl vector exists")]
    DegenerateForm,
    #[error("Weyl vector does not lie in the half root lattice")]
    WeylVectorNotHalfIntegral,
}

/// Vector in doubled root-lattice coordinates: entry `c_i` denotes the
/// coefficient `c_i / 2` of the simple root `alpha_i`.  Length always equals
/// the rank of the ambient Cartan matrix.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct RootVec(SmallVec<[i64; 4]>);

impl RootVec {
    pub fn zeros(n: usize) -> Self {
        RootVec(smallvec::smallvec![0; n])
    }

    /// The simple root `alpha_i` (doubled coordinate `2` in slot `i`).
    pub fn simple(i: usize, n: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = 2;
        v
    }

    pub fn from_doubled(coords: &[i64]) -> Self {
        RootVec(SmallVec::from_slice(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// True when the vector lies in the root lattice itself (all doubled
    /// coordinates even) rather than just the half lattice.
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|&c| c % 2 == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "rank mismatch");
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.len(), other.len(), "rank mismatch");
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        RootVec(self.0.iter().map(|&a| -a).collect())
    }

    /// Multiply by an integer scalar (acting on the underlying vector, so
    /// `alpha.scaled(3)` is `3 alpha`).
    pub fn scaled(&self, k: i64) -> Self {
        RootVec(self.0.iter().map(|&a| a * k).collect())
    }
}

/// A symmetrizable generalized Cartan matrix together with its minimal
/// positive integer symmetrizer.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CartanMatrix {
    n: usize,
    a: Vec<Vec<i64>>,
    eps: Vec<i64>,
}

impl CartanMatrix {
    /// Validate a generalized Cartan matrix and compute its minimal positive
    /// integer symmetrizer (componentwise minimal).
    pub fn new(a: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        let eps = Self::symmetrizer_for(&a)?;
        Ok(CartanMatrix {
            n: a.len(),
            a,
            eps,
        })
    }

    /// Validate against an explicitly supplied symmetrizer instead of the
    /// minimal one.
    pub fn with_symmetrizer(a: Vec<Vec<i64>>, eps: Vec<i64>) -> Result<Self, CartanError> {
        Self::validate_shape(&a)?;
        if eps.len() != a.len() || eps.iter().any(|&e| e <= 0) {
            return Err(CartanError::NotSymmetrizable);
        }
        let n = a.len();
        for i in 0..n {
            for j in 0..n {
                if eps[i] * a[i][j] != eps[j] * a[j][i] {
                    return Err(CartanError::NotSymmetrizable);
                }
            }
        }
        Ok(CartanMatrix { n, a, eps })
    }

    fn validate_shape(a: &[Vec<i64>]) -> Result<(), CartanError> {
        let n = a.len();
        if n == 0 {
            return Err(CartanError::NotGeneralizedCartan("empty matrix".into()));
        }
        for (i, row) in a.iter().enumerate() {
            if row.len() != n {
                return Err(CartanError::NotGeneralizedCartan(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            if row[i] != 2 {
                return Err(CartanError::NotGeneralizedCartan(format!(
                    "diagonal entry ({},{}) is {}, expected 2",
                    i, i, row[i]
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    if a[i][j] > 0 {
                        return Err(CartanError::NotGeneralizedCartan(format!(
                            "off-diagonal entry ({},{}) is positive",
                            i, j
                        )));
                    }
                    if (a[i][j] == 0) != (a[j][i] == 0) {
                        return Err(CartanError::NotGeneralizedCartan(format!(
                            "zero pattern not symmetric at ({},{})",
                            i, j
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Minimal positive integer symmetrizer, by ratio propagation along each
    /// connected component of the Dynkin diagram.
    fn symmetrizer_for(a: &[Vec<i64>]) -> Result<Vec<i64>, CartanError> {
        Self::validate_shape(a)?;
        let n = a.len();
        let mut ratio: Vec<Option<BigRational>> = vec![None; n];
        for start in 0..n {
            if ratio[start].is_some() {
                continue;
            }
            // breadth-first propagation of eps_j = eps_i * a_ij / a_ji
            let mut queue = vec![start];
            let mut component = vec![start];
            ratio[start] = Some(BigRational::one());
            while let Some(i) = queue.pop() {
                for j in 0..n {
                    if i != j && a[i][j] != 0 && ratio[j].is_none() {
                        let r = ratio[i].clone().unwrap()
                            * BigRational::new(BigInt::from(a[i][j]), BigInt::from(a[j][i]));
                        ratio[j] = Some(r);
                        queue.push(j);
                        component.push(j);
                    }
                }
            }
            // scale this component to minimal positive integers
            let lcm_den = component
                .iter()
                .map(|&i| ratio[i].as_ref().unwrap().denom().clone())
                .fold(BigInt::one(), |acc, d| num::integer::lcm(acc, d));
            for &i in &component {
                let scaled = ratio[i].clone().unwrap() * BigRational::from_integer(lcm_den.clone());
                ratio[i] = Some(scaled);
            }
            let gcd_num = component
                .iter()
                .map(|&i| ratio[i].as_ref().unwrap().numer().abs())
                .fold(BigInt::zero(), num::integer::gcd);
            for &i in &component {
                let v = ratio[i].clone().unwrap() / BigRational::from_integer(gcd_num.clone());
                ratio[i] = Some(v);
            }
        }
        let mut eps = Vec::with_capacity(n);
        for r in ratio {
            let r = r.unwrap();
            if !r.is_integer() || !r.is_positive() {
                return Err(CartanError::NotSymmetrizable);
            }
            let v: BigInt = r.to_integer();
            eps.push(i64::try_from(v).map_err(|_| CartanError::NotSymmetrizable)?);
        }
        // consistency across the whole matrix (catches non-symmetrizability
        // with cycles of incompatible ratios)
        for i in 0..n {
            for j in 0..n {
                if eps[i] * a[i][j] != eps[j] * a[j][i] {
                    return Err(CartanError::NotSymmetrizable);
                }
            }
        }
        Ok(eps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.a[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.a
    }

    /// Symmetrizer diagonal: `eps_i a_ij = eps_j a_ji`, and `q_i = q^{eps_i}`.
    pub fn eps(&self) -> &[i64] {
        &self.eps
    }

    /// Twice the symmetrized bilinear form: `pairing2(b, g) = 2 (b, g)`,
    /// where `(alpha_i, alpha_j) = eps_i a_ij`.  Panics when the value is not
    /// a half integer, which would mean both arguments lie strictly in the
    /// half lattice; callers always keep one argument in the root lattice.
    pub fn pairing2(&self, b: &RootVec, g: &RootVec) -> i64 {
        assert_eq!(b.len(), self.n, "rank mismatch");
        assert_eq!(g.len(), self.n, "rank mismatch");
        let mut raw: i128 = 0;
        for i in 0..self.n {
            if b.coords()[i] == 0 {
                continue;
            }
            for j in 0..self.n {
                raw += i128::from(b.coords()[i])
                    * i128::from(g.coords()[j])
                    * i128::from(self.eps[i])
                    * i128::from(self.a[i][j]);
            }
        }
        // raw = 4 (b, g); the doubled pairing is raw / 2
        assert!(raw % 2 == 0, "pairing is not half-integral");
        i64::try_from(raw / 2).expect("pairing overflow")
    }

    /// The Weyl vector `rho` with `(rho, alpha_i) = eps_i` for all `i`, in
    /// doubled coordinates.  Fails when the symmetrized form is degenerate
    /// (affine type) or `rho` leaves the half lattice.
    pub fn rho_half(&self) -> Result<RootVec, CartanError> {
        // Gram matrix g_ij = (alpha_i, alpha_j) = eps_i a_ij, symmetric
        let gram: Vec<Vec<i64>> = (0..self.n)
            .map(|i| (0..self.n).map(|j| self.eps[i] * self.a[i][j]).collect())
            .collect();
        let cols: Vec<Vec<i64>> = (0..self.n)
            .map(|j| (0..self.n).map(|i| gram[i][j]).collect())
            .collect();
        let target: Vec<i64> = self.eps.clone();
        let sol = solve_rational(&cols, &target).ok_or(CartanError::DegenerateForm)?;
        let mut doubled = Vec::with_capacity(self.n);
        for r in sol {
            let two_r = r * BigRational::from_integer(BigInt::from(2));
            if !two_r.is_integer() {
                return Err(CartanError::WeylVectorNotHalfIntegral);
            }
            doubled.push(
                i64::try_from(two_r.to_integer())
                    .map_err(|_| CartanError::WeylVectorNotHalfIntegral)?,
            );
        }
        Ok(RootVec::from_doubled(&doubled))
    }
}

/// Reduced row echelon form in place; returns the pivot column of each row
/// (in row order).
fn rref(mat: &mut [Vec<BigRational>]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r >= rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for x in mat[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for j in 0..cols {
                    let t = &mat[r][j] * &f;
                    mat[i][j] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Scale a rational vector to a primitive integer vector with positive
/// leading (first nonzero) entry.
fn primitive_integer(v: &[BigRational]) -> Vec<i64> {
    let lcm_den = v
        .iter()
        .map(|x| x.denom().clone())
        .fold(BigInt::one(), num::integer::lcm);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm_den.clone())).to_integer())
        .collect();
    let g = ints
        .iter()
        .map(|x| x.abs())
        .fold(BigInt::zero(), num::integer::gcd);
    let g = if g.is_zero() { BigInt::one() } else { g };
    let mut out: Vec<i64> = ints
        .iter()
        .map(|x| i64::try_from(x / &g).expect("kernel entry overflow"))
        .collect();
    if let Some(first) = out.iter().find(|&&x| x != 0) {
        if *first < 0 {
            for x in &mut out {
                *x = -*x;
            }
        }
    }
    out
}

/// Basis of the integer kernel `{x : M x = 0}` of an integer matrix, as
/// primitive vectors with positive leading entry, sorted lexicographically.
pub fn kernel_basis(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut mat: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| {
            assert_eq!(row.len(), cols, "ragged matrix");
            row.iter()
                .map(|&x| BigRational::from_integer(BigInt::from(x)))
                .collect()
        })
        .collect();
    let pivots = rref(&mut mat);
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivots.contains(&f) {
            continue;
        }
        let mut x = vec![BigRational::zero(); cols];
        x[f] = BigRational::one();
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = -mat[row][f].clone();
        }
        basis.push(primitive_integer(&x));
    }
    basis.sort();
    basis
}

/// Solve `sum_k x_k col_k = target` over the rationals.  Free coordinates are
/// set to zero; returns `None` when the system is inconsistent.
pub fn solve_rational(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<BigRational>> {
    let k = cols.len();
    if k == 0 {
        return if target.iter().all(|&t| t == 0) {
            Some(Vec::new())
        } else {
            None
        };
    }
    let m = cols[0].len();
    assert!(cols.iter().all(|c| c.len() == m), "ragged columns");
    assert_eq!(target.len(), m, "dimension mismatch");
    // augmented matrix [A | target]
    let mut mat: Vec<Vec<BigRational>> = (0..m)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..k)
                .map(|j| BigRational::from_integer(BigInt::from(cols[j][i])))
                .collect();
            row.push(BigRational::from_integer(BigInt::from(target[i])));
            row
        })
        .collect();
    let pivots = rref(&mut mat);
    if pivots.contains(&k) {
        return None; // pivot in the augmented column: inconsistent
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = mat[row][k].clone();
    }
    Some(x)
}

/// Solve `sum_k x_k col_k = target` over the integers (rational solve plus an
/// integrality check).
pub fn solve_integer(cols: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let sol = solve_rational(cols, target)?;
    let mut out = Vec::with_capacity(sol.len());
    for x in sol {
        if !x.is_integer() {
            return None;
        }
        out.push(i64::try_from(x.to_integer()).expect("solution overflow"));
    }
    // verify (covers underdetermined systems where free coordinates were
    // forced to zero but the pivot solution is still exact)
    if !cols.is_empty() {
        let m = cols[0].len();
        for i in 0..m {
            let s: i128 = cols
                .iter()
                .zip(&out)
                .map(|(c, &x)| i128::from(c[i]) * i128::from(x))
                .sum();
            if s != i128::from(target[i]) {
                return None;
            }
        }
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetrizers() {
        let a2 = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.eps(), &[1, 1]);
        let b2 = CartanMatrix::new(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        assert_eq!(b2.eps(), &[2, 1]);
        let c2 = CartanMatrix::new(vec![vec![2, -2], vec![-1, 2]]).unwrap();
        assert_eq!(c2.eps(), &[1, 2]);
        let a1a1 = CartanMatrix::new(vec![vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(a1a1.eps(), &[1, 1]);
        let affine = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert_eq!(affine.eps(), &[1, 1]);
    }

    #[test]
    fn invalid_matrices_are_rejected() {
        assert!(CartanMatrix::new(vec![vec![1]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, 1], vec![1, 2]]).is_err());
        assert!(CartanMatrix::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(CartanMatrix::with_symmetrizer(
            vec![vec![2, -1], vec![-2, 2]],
            vec![1, 1]
        )
        .is_err());
    }

    #[test]
    fn pairings() {
        let a1 = CartanMatrix::new(vec![vec![2]]).unwrap();
        let alpha = RootVec::simple(0, 1);
        assert_eq!(a1.pairing2(&alpha, &alpha), 4); // (alpha, alpha) = 2
        let half = RootVec::from_doubled(&[1]); // alpha/2
        assert_eq!(a1.pairing2(&half, &alpha), 2); // (alpha/2, alpha) = 1

        let a2 = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        let a = RootVec::simple(0, 2);
        let b = RootVec::simple(1, 2);
        assert_eq!(a2.pairing2(&a, &b), -2); // (alpha_1, alpha_2) = -1
        assert_eq!(a2.pairing2(&a.add(&b), &a.add(&b)), 4);

        let b2 = CartanMatrix::new(vec![vec![2, -1], vec![-2, 2]]).unwrap();
        let long = RootVec::simple(0, 2);
        let short = RootVec::simple(1, 2);
        assert_eq!(b2.pairing2(&long, &long), 8); // (long, long) = 4
        assert_eq!(b2.pairing2(&short, &short), 4);
        assert_eq!(b2.pairing2(&long, &short), -4);
        assert_eq!(b2.pairing2(&short, &long), -4);
    }

    #[test]
    fn weyl_vectors() {
        let a1 = CartanMatrix::new(vec![vec![2]]).unwrap();
        assert_eq!(a1.rho_half().unwrap(), RootVec::from_doubled(&[1])); // alpha/2
        let a2 = CartanMatrix::new(vec![vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(a2.rho_half().unwrap(), RootVec::from_doubled(&[2, 2])); // alpha_1 + alpha_2
        let affine = CartanMatrix::new(vec![vec![2, -2], vec![-2, 2]]).unwrap();
        assert!(matches!(
            affine.rho_half(),
            Err(CartanError::DegenerateForm)
        ));
    }

    #[test]
    fn kernels_and_solves() {
        assert_eq!(kernel_basis(&[vec![1, 1], vec![1, 1]]), vec![vec![1, -1]]);
        // involution alpha_1 <-> -alpha_2 on root coordinates: ker(theta + 1)
        assert_eq!(
            kernel_basis(&[vec![1, -1], vec![-1, 1]]),
            vec![vec![1, 1]]
        );
        // identity involution: theta + 1 = 2 id has trivial kernel
        assert!(kernel_basis(&[vec![2, 0], vec![0, 2]]).is_empty());
        // zero matrix: full kernel, sorted primitive
        assert_eq!(
            kernel_basis(&[vec![0, 0]]),
            vec![vec![0, 1], vec![1, 0]]
        );

        assert_eq!(
            solve_integer(&[vec![1, 1], vec![1, -1]], &[3, 1]),
            Some(vec![2, 1])
        );
        assert_eq!(solve_integer(&[vec![2, 0], vec![0, 2]], &[1, 0]), None);
        assert_eq!(solve_integer(&[vec![1, 0], vec![0, 1]], &[7, -4]), Some(vec![7, -4]));
        assert_eq!(solve_rational(&[vec![1, 2]], &[1, 3]), None);
    }

    #[test]
    fn rootvec_arithmetic() {
        let a = RootVec::simple(0, 3);
        let b = RootVec::simple(2, 3);
        let s = a.add(&b).sub(&RootVec::simple(0, 3));
        assert_eq!(s, b);
        assert!(RootVec::zeros(3).is_zero());
        assert!(a.is_integral());
        assert!(!RootVec::from_doubled(&[1, 0, 0]).is_integral());
        assert_eq!(a.scaled(-2), RootVec::from_doubled(&[-4, 0, 0]));
    }
}
