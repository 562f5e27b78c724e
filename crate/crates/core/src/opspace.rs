//! Subspaces of operator spaces `L(H, K)` between finite-dimensional Hilbert
//! spaces.
//!
//! A subspace is stored as a list of matrices that is orthonormal for the
//! Hilbert–Schmidt inner product `<f1|f2> = Tr(f1 · f2†)`. Every constructor
//! canonicalizes through [`OperatorSubspace::orthonormalize`], so the basis is
//! always orthonormal up to the global tolerance.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{dims_mismatch, Error, Result};
use crate::linalg;
use crate::tolerance::epsilon;

pub type ComplexMatrix = DMatrix<Complex64>;

/// Hilbert–Schmidt inner product `Tr(a · b†)`.
pub fn hs_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> Complex64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y.conj()).sum()
}

pub fn hs_norm(a: &ComplexMatrix) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Matrix with a single unit entry at `(row, col)`.
pub fn matrix_unit(rows: usize, cols: usize, row: usize, col: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(rows, cols);
    m[(row, col)] = Complex64::new(1.0, 0.0);
    m
}

pub fn is_finite(m: &ComplexMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

#[derive(Debug, Clone)]
pub struct OperatorSubspace {
    dom_dim: usize,
    cod_dim: usize,
    basis: Vec<ComplexMatrix>,
}

impl OperatorSubspace {
    pub fn zero(dom_dim: usize, cod_dim: usize) -> Self {
        OperatorSubspace {
            dom_dim,
            cod_dim,
            basis: Vec::new(),
        }
    }

    /// The whole space `L(H_dom, H_cod)`, spanned by matrix units.
    pub fn full(dom_dim: usize, cod_dim: usize) -> Self {
        let mut basis = Vec::with_capacity(dom_dim * cod_dim);
        for col in 0..dom_dim {
            for row in 0..cod_dim {
                basis.push(matrix_unit(cod_dim, dom_dim, row, col));
            }
        }
        OperatorSubspace {
            dom_dim,
            cod_dim,
            basis,
        }
    }

    /// `ℂ · I_dim`.
    pub fn scalars(dim: usize) -> Self {
        let mut id = ComplexMatrix::identity(dim, dim);
        if dim > 0 {
            id /= Complex64::new((dim as f64).sqrt(), 0.0);
        }
        OperatorSubspace {
            dom_dim: dim,
            cod_dim: dim,
            basis: if dim > 0 { vec![id] } else { Vec::new() },
        }
    }

    /// The line `ℂ · m` (the zero subspace if `m` vanishes).
    pub fn line(m: &ComplexMatrix) -> Result<Self> {
        Self::orthonormalize(std::slice::from_ref(m), m.ncols(), m.nrows())
    }

    /// Span of `spanning` as a Hilbert–Schmidt orthonormal basis.
    ///
    /// Rank is decided on the singular values of the stacked coefficient
    /// matrix, cutting below `epsilon * max(sigma_max, 1)`.
    pub fn orthonormalize(
        spanning: &[ComplexMatrix],
        dom_dim: usize,
        cod_dim: usize,
    ) -> Result<Self> {
        for m in spanning {
            if m.nrows() != cod_dim || m.ncols() != dom_dim {
                return Err(dims_mismatch((cod_dim, dom_dim), (m.nrows(), m.ncols())));
            }
            if !is_finite(m) {
                return Err(Error::NonFinite);
            }
        }
        let n = dom_dim * cod_dim;
        if spanning.is_empty() || n == 0 {
            return Ok(Self::zero(dom_dim, cod_dim));
        }
        let stacked = ComplexMatrix::from_fn(n, spanning.len(), |i, j| spanning[j][i]);
        let basis = orthonormal_columns(stacked)
            .into_iter()
            .map(|col| ComplexMatrix::from_column_slice(cod_dim, dom_dim, col.as_slice()))
            .collect();
        Ok(OperatorSubspace {
            dom_dim,
            cod_dim,
            basis,
        })
    }

    pub fn dom_dim(&self) -> usize {
        self.dom_dim
    }

    pub fn cod_dim(&self) -> usize {
        self.cod_dim
    }

    pub fn basis(&self) -> &[ComplexMatrix] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.dom_dim * self.cod_dim
    }

    /// Ambient dimension `dom_dim * cod_dim`.
    pub fn ambient_dim(&self) -> usize {
        self.dom_dim * self.cod_dim
    }

    fn check_same_dims(&self, other: &Self) -> Result<()> {
        if self.dom_dim != other.dom_dim || self.cod_dim != other.cod_dim {
            return Err(dims_mismatch(
                (self.cod_dim, self.dom_dim),
                (other.cod_dim, other.dom_dim),
            ));
        }
        Ok(())
    }

    /// Hilbert–Schmidt distance from `m` to this subspace.
    pub fn residual(&self, m: &ComplexMatrix) -> f64 {
        let mut r = m.clone();
        for q in &self.basis {
            let c = hs_inner(m, q);
            r -= q * c;
        }
        hs_norm(&r)
    }

    /// Orthogonal projection of `m` onto this subspace.
    pub fn project(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut p = ComplexMatrix::zeros(self.cod_dim, self.dom_dim);
        for q in &self.basis {
            p += q * hs_inner(m, q);
        }
        p
    }

    /// Whether `m` lies in the subspace, judged on `m / |m|`.
    pub fn contains_matrix(&self, m: &ComplexMatrix) -> bool {
        let norm = hs_norm(m);
        if norm <= epsilon() {
            return true;
        }
        self.residual(m) / norm < epsilon()
    }

    /// `other ≤ self`.
    pub fn contains(&self, other: &Self) -> Result<bool> {
        self.check_same_dims(other)?;
        if other.dim() > self.dim() {
            return Ok(false);
        }
        Ok(other.basis.iter().all(|b| self.residual(b) < epsilon()))
    }

    /// Mutual containment.
    pub fn same_span(&self, other: &Self) -> Result<bool> {
        Ok(self.dim() == other.dim() && self.contains(other)? && other.contains(self)?)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(other.clone());
        }
        let all: Vec<_> = self.basis.iter().chain(&other.basis).cloned().collect();
        Self::orthonormalize(&all, self.dom_dim, self.cod_dim)
    }

    pub fn ortho_complement(&self) -> Self {
        let n = self.ambient_dim();
        if self.is_zero() {
            return Self::full(self.dom_dim, self.cod_dim);
        }
        if self.is_full() {
            return Self::zero(self.dom_dim, self.cod_dim);
        }
        // Columns of I - QQ† span the complement.
        let q = ComplexMatrix::from_fn(n, self.dim(), |i, j| self.basis[j][i]);
        let p = ComplexMatrix::identity(n, n) - &q * q.adjoint();
        let basis = orthonormal_columns(p)
            .into_iter()
            .map(|col| ComplexMatrix::from_column_slice(self.cod_dim, self.dom_dim, col.as_slice()))
            .collect();
        OperatorSubspace {
            dom_dim: self.dom_dim,
            cod_dim: self.cod_dim,
            basis,
        }
    }

    /// Intersection, computed as `¬(¬A ∨ ¬B)`.
    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check_same_dims(other)?;
        if self.is_zero() || other.is_full() {
            return Ok(self.clone());
        }
        if other.is_zero() || self.is_full() {
            return Ok(other.clone());
        }
        let joined = self.ortho_complement().join(&other.ortho_complement())?;
        Ok(joined.ortho_complement())
    }

    /// `span { b·a : a ∈ self, b ∈ next }` for `self ⊆ L(X,Y)` and `next ⊆ L(Y,Z)`.
    pub fn product_span(&self, next: &Self) -> Result<Self> {
        if self.cod_dim != next.dom_dim {
            return Err(Error::DimensionMismatch {
                expected: format!("inner dimension {}", self.cod_dim),
                found: format!("inner dimension {}", next.dom_dim),
            });
        }
        if self.is_zero() || next.is_zero() {
            return Ok(Self::zero(self.dom_dim, next.cod_dim));
        }
        let mut products = Vec::with_capacity(self.dim() * next.dim());
        for a in &self.basis {
            for b in &next.basis {
                products.push(b * a);
            }
        }
        Self::orthonormalize(&products, self.dom_dim, next.cod_dim)
    }

    /// `span { a† : a ∈ self }`; the conjugate transpose preserves the
    /// Hilbert–Schmidt inner product, so the basis stays orthonormal.
    pub fn adjoint_space(&self) -> Self {
        OperatorSubspace {
            dom_dim: self.cod_dim,
            cod_dim: self.dom_dim,
            basis: self.basis.iter().map(|a| a.adjoint()).collect(),
        }
    }

    /// `span { a ⊗ b }`; Kronecker products of orthonormal bases are orthonormal.
    pub fn tensor_space(&self, other: &Self) -> Self {
        let mut basis = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.basis {
            for b in &other.basis {
                basis.push(a.kronecker(b));
            }
        }
        OperatorSubspace {
            dom_dim: self.dom_dim * other.dom_dim,
            cod_dim: self.cod_dim * other.cod_dim,
            basis,
        }
    }

    pub fn is_orthogonal(&self, other: &Self) -> Result<bool> {
        self.check_same_dims(other)?;
        let eps = epsilon();
        Ok(self
            .basis
            .iter()
            .all(|a| other.basis.iter().all(|b| hs_inner(a, b).norm() < eps)))
    }

    /// Orthogonal projector onto the subspace, acting on column-stacked `vec(m)`.
    pub fn projector(&self) -> ComplexMatrix {
        let n = self.ambient_dim();
        let q = ComplexMatrix::from_fn(n, self.dim(), |i, j| self.basis[j][i]);
        &q * q.adjoint()
    }
}

/// Orthonormal basis of the column space of `a`, strongest directions first.
fn orthonormal_columns(a: ComplexMatrix) -> Vec<DVector<Complex64>> {
    let (u, sigma) = linalg::thin_svd_left(&a);
    let sigma_max = sigma.first().copied().unwrap_or(0.0);
    let cut = epsilon() * sigma_max.max(1.0);
    sigma
        .iter()
        .enumerate()
        .take_while(|(_, s)| **s > cut)
        .map(|(i, _)| u.column(i).into_owned())
        .collect()
}
