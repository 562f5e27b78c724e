//! States and observables on quantum sets, and what functions do to them.
//!
//! An observable is an element of `ℓ∞(X) = ⊕_X L(X)`, a state a family of
//! density matrices in `ℓ¹(X)` whose traces sum to one, and the two are paired
//! by `Tr(a·m) = Σ_X Tr(a(X)·m(X))`. A function `F : X → Y` pushes states
//! forward with Kraus operators drawn from Hilbert–Schmidt orthonormal bases
//! of its blocks:
//!
//! ```text
//! n(Y) = Σ_X dim(Y) · Σ_{v ∈ B(X,Y)} v · m(X) · v†
//! ```
//!
//! and pulls observables back along the dual map
//! `F⋆(a)(X) = Σ_Y dim(Y) · Σ_v v† · a(Y) · v`.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::hermitian_eigenvalues;
use crate::opspace::{hs_norm, ComplexMatrix, OperatorSubspace};
use crate::qset::{embed_classical_set, QFunction, QRelation, QuantumSet};
use crate::tolerance::epsilon;

fn check_blocks(space: &QuantumSet, blocks: &[ComplexMatrix]) -> Result<()> {
    if blocks.len() != space.len() {
        return Err(Error::ShapeMismatch(format!(
            "{} blocks for {} atoms",
            blocks.len(),
            space.len()
        )));
    }
    for (i, b) in blocks.iter().enumerate() {
        let d = space.dim(i);
        if b.nrows() != d || b.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: format!("{d}x{d}"),
                found: format!("{}x{}", b.nrows(), b.ncols()),
            });
        }
        if !crate::opspace::is_finite(b) {
            return Err(Error::NonFinite);
        }
    }
    Ok(())
}

/// An element of `ℓ∞(X)`.
#[derive(Debug, Clone)]
pub struct Observable {
    space: QuantumSet,
    blocks: Vec<ComplexMatrix>,
}

impl Observable {
    pub fn new(space: QuantumSet, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        check_blocks(&space, &blocks)?;
        Ok(Observable { space, blocks })
    }

    /// The unit `1 ∈ ℓ∞(X)`.
    pub fn identity(space: &QuantumSet) -> Self {
        let blocks = space
            .atoms()
            .iter()
            .map(|a| ComplexMatrix::identity(a.dim, a.dim))
            .collect();
        Observable {
            space: space.clone(),
            blocks,
        }
    }

    pub fn space(&self) -> &QuantumSet {
        &self.space
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &ComplexMatrix {
        &self.blocks[i]
    }

    /// Blockwise product.
    pub fn mul(&self, other: &Observable) -> Result<Observable> {
        if self.space != other.space {
            return Err(Error::ShapeMismatch("observables on different sets".into()));
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a * b)
            .collect();
        Ok(Observable {
            space: self.space.clone(),
            blocks,
        })
    }

    pub fn adjoint(&self) -> Observable {
        Observable {
            space: self.space.clone(),
            blocks: self.blocks.iter().map(|a| a.adjoint()).collect(),
        }
    }

    /// Largest blockwise Hilbert–Schmidt distance.
    pub fn distance(&self, other: &Observable) -> f64 {
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| hs_norm(&(a - b)))
            .fold(0.0, f64::max)
    }
}

/// A normal state, given by density blocks with total trace one.
#[derive(Debug, Clone)]
pub struct DensityState {
    space: QuantumSet,
    blocks: Vec<ComplexMatrix>,
}

impl DensityState {
    /// Validates positivity of every block and total trace one, both within
    /// the global tolerance.
    pub fn new(space: QuantumSet, blocks: Vec<ComplexMatrix>) -> Result<Self> {
        check_blocks(&space, &blocks)?;
        let eps = epsilon();
        let mut trace = Complex64::new(0.0, 0.0);
        for (i, b) in blocks.iter().enumerate() {
            if hs_norm(&(b - b.adjoint())) > eps * b.nrows().max(1) as f64 {
                return Err(Error::InvalidState(format!(
                    "block `{}` is not Hermitian",
                    space.label(i)
                )));
            }
            let min = hermitian_eigenvalues(b).first().copied().unwrap_or(0.0);
            if min < -eps {
                return Err(Error::InvalidState(format!(
                    "block `{}` has eigenvalue {min:e}",
                    space.label(i)
                )));
            }
            trace += b.trace();
        }
        if (trace - Complex64::new(1.0, 0.0)).norm() > eps {
            return Err(Error::InvalidState(format!(
                "total trace is {} instead of 1",
                trace.re
            )));
        }
        Ok(DensityState { space, blocks })
    }

    /// Pure state `|ψ⟩⟨ψ|` (normalized here) on one atom.
    pub fn pure(space: &QuantumSet, atom: usize, psi: &[Complex64]) -> Result<Self> {
        let d = space.dim(atom);
        if psi.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d.to_string(),
                found: psi.len().to_string(),
            });
        }
        let v = ComplexMatrix::from_column_slice(d, 1, psi);
        let norm = hs_norm(&v);
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let v = v / Complex64::new(norm, 0.0);
        let mut blocks: Vec<_> = space
            .atoms()
            .iter()
            .map(|a| ComplexMatrix::zeros(a.dim, a.dim))
            .collect();
        blocks[atom] = &v * v.adjoint();
        DensityState::new(space.clone(), blocks)
    }

    pub fn space(&self) -> &QuantumSet {
        &self.space
    }

    pub fn blocks(&self) -> &[ComplexMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &ComplexMatrix {
        &self.blocks[i]
    }

    pub fn trace(&self) -> Complex64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }

    /// Smallest eigenvalue over all blocks.
    pub fn min_eigenvalue(&self) -> f64 {
        self.blocks
            .iter()
            .flat_map(|b| hermitian_eigenvalues(b).into_iter().take(1))
            .fold(f64::INFINITY, f64::min)
    }
}

/// `μ(a) = Tr(a·m)`.
pub fn pair(a: &Observable, m: &DensityState) -> Result<Complex64> {
    if a.space != m.space {
        return Err(Error::ShapeMismatch(format!(
            "observable on {} paired with state on {}",
            a.space, m.space
        )));
    }
    Ok(a.blocks
        .iter()
        .zip(&m.blocks)
        .map(|(x, y)| (x * y).trace())
        .sum())
}

/// The pushforward `μ ∘ F⋆` of the state `m` along `f`.
pub fn pushforward(m: &DensityState, f: &QFunction) -> Result<DensityState> {
    if m.space != *f.dom() {
        return Err(Error::ShapeMismatch(format!(
            "state on {} pushed along a function from {}",
            m.space,
            f.dom()
        )));
    }
    let cod = f.cod();
    let mut out: Vec<ComplexMatrix> = cod
        .atoms()
        .iter()
        .map(|a| ComplexMatrix::zeros(a.dim, a.dim))
        .collect();
    for ((x, y), space) in f.blocks() {
        let scale = Complex64::new(cod.dim(y) as f64, 0.0);
        for v in space.basis() {
            out[y] += (v * m.block(x) * v.adjoint()) * scale;
        }
    }
    DensityState::new(cod.clone(), out).map_err(|e| {
        Error::InvalidState(format!(
            "pushforward left the state space ({e}); is the input a function?"
        ))
    })
}

/// `F⋆ : ℓ∞(Y) → ℓ∞(X)`, the unital *-homomorphism dual to `f`.
pub fn dual_hom_apply(f: &QFunction, a: &Observable) -> Result<Observable> {
    if a.space != *f.cod() {
        return Err(Error::ShapeMismatch(format!(
            "observable on {} pulled back along a function into {}",
            a.space,
            f.cod()
        )));
    }
    let dom = f.dom();
    let mut out: Vec<ComplexMatrix> = dom
        .atoms()
        .iter()
        .map(|x| ComplexMatrix::zeros(x.dim, x.dim))
        .collect();
    for ((x, y), space) in f.blocks() {
        let scale = Complex64::new(f.cod().dim(y) as f64, 0.0);
        for v in space.basis() {
            out[x] += (v.adjoint() * a.block(y) * v) * scale;
        }
    }
    Ok(Observable {
        space: dom.clone(),
        blocks: out,
    })
}

fn is_unitary(u: &ComplexMatrix) -> bool {
    u.is_square()
        && hs_norm(&(u.adjoint() * u - ComplexMatrix::identity(u.nrows(), u.ncols()))) < epsilon()
}

fn line_function(set: &QuantumSet, lines: Vec<ComplexMatrix>) -> QFunction {
    let blocks = lines.into_iter().enumerate().map(|(i, u)| {
        (
            (i, i),
            OperatorSubspace::line(&u).expect("unitary has the atom's shape"),
        )
    });
    QFunction::trusted(QRelation::from_blocks(set, set, blocks).expect("diagonal lines fit"))
}

/// The automorphism `ℂ·u` of the atomic set `ℋ_d` (labelled `H{d}`).
pub fn unitary_gate(u: &ComplexMatrix) -> Result<QFunction> {
    if !is_unitary(u) {
        return Err(Error::NotUnitary);
    }
    let set = QuantumSet::atomic(format!("H{}", u.nrows()), u.nrows());
    Ok(line_function(&set, vec![u.clone()]))
}

/// `[[1, 1], [1, -1]]`, unnormalized as a spanning vector.
pub fn hadamard_matrix() -> ComplexMatrix {
    let one = Complex64::new(1.0, 0.0);
    ComplexMatrix::from_row_slice(2, 2, &[one, one, one, -one])
}

/// The Hadamard gate `ℂ·[[1, 1], [1, -1]]` on `ℋ₂`.
pub fn hadamard() -> QFunction {
    line_function(&QuantumSet::atomic("H2", 2), vec![hadamard_matrix()])
}

/// `diag(1, 1, 1, e^{iθ})`.
pub fn cphase_matrix(theta: f64) -> ComplexMatrix {
    let mut m = ComplexMatrix::identity(4, 4);
    m[(3, 3)] = Complex64::from_polar(1.0, theta);
    m
}

/// Controlled phase on `ℋ₂ × ℋ₂`.
pub fn cphase(theta: f64) -> QFunction {
    let h2 = QuantumSet::atomic("H2", 2);
    line_function(&h2.product(&h2), vec![cphase_matrix(theta)])
}

/// The measurement `ℋ_d → `S` whose block at outcome `s` is `L(ℋ_d, ℂ)·p_s`.
pub fn measurement_from_pvm(
    domain: &QuantumSet,
    outcomes: &QuantumSet,
    projections: &[ComplexMatrix],
) -> Result<QFunction> {
    if domain.len() != 1 {
        return Err(Error::ShapeMismatch(
            "measurements start at an atomic set".into(),
        ));
    }
    if !outcomes.is_classical() || outcomes.len() != projections.len() {
        return Err(Error::ShapeMismatch(
            "need one classical outcome per projection".into(),
        ));
    }
    let d = domain.dim(0);
    let eps = epsilon();
    let mut sum = ComplexMatrix::zeros(d, d);
    for (s, p) in projections.iter().enumerate() {
        if p.nrows() != d || p.ncols() != d {
            return Err(Error::DimensionMismatch {
                expected: format!("{d}x{d}"),
                found: format!("{}x{}", p.nrows(), p.ncols()),
            });
        }
        if hs_norm(&(p - p.adjoint())) > eps || hs_norm(&(p * p - p)) > eps {
            return Err(Error::NotAPvm(format!(
                "element {s} is not an orthogonal projection"
            )));
        }
        for q in &projections[..s] {
            if hs_norm(&(p * q)) > eps {
                return Err(Error::NotAPvm(
                    "projections are not pairwise orthogonal".into(),
                ));
            }
        }
        sum += p;
    }
    if hs_norm(&(sum - ComplexMatrix::identity(d, d))) > eps {
        return Err(Error::NotAPvm(
            "projections do not sum to the identity".into(),
        ));
    }
    let mut blocks = Vec::new();
    for (s, p) in projections.iter().enumerate() {
        let rows: Vec<ComplexMatrix> = (0..d).map(|r| p.rows(r, 1).into_owned()).collect();
        blocks.push(((0, s), OperatorSubspace::orthonormalize(&rows, d, 1)?));
    }
    QFunction::new(QRelation::from_blocks(domain, outcomes, blocks)?)
}

/// The projections `p_s = Σ_{v ∈ B(ℋ_d, s)} v†v` of a function into a
/// classical set.
pub fn pvm_from_function(f: &QFunction) -> Result<Vec<ComplexMatrix>> {
    if f.dom().len() != 1 {
        return Err(Error::ShapeMismatch("domain must be atomic".into()));
    }
    if !f.cod().is_classical() {
        let bad = f
            .cod()
            .atoms()
            .iter()
            .find(|a| a.dim != 1)
            .expect("non-classical");
        return Err(Error::NotClassical {
            label: bad.label.clone(),
            dim: bad.dim,
        });
    }
    let d = f.dom().dim(0);
    Ok((0..f.cod().len())
        .map(|s| {
            f.block(0, s)
                .basis()
                .iter()
                .fold(ComplexMatrix::zeros(d, d), |acc, v| acc + v.adjoint() * v)
        })
        .collect())
}

/// The list type `1 + ℋ₂ + ℋ₂×ℋ₂ + ⋯` truncated after `n` qubits; atom `k`
/// is the `k`-fold product of `ℋ₂`.
pub fn list_quantum_set(n: usize) -> QuantumSet {
    let h2 = QuantumSet::atomic("H2", 2);
    let mut power = QuantumSet::one();
    let mut list = QuantumSet::one();
    for k in 1..=n {
        power = if k == 1 {
            h2.clone()
        } else {
            power.product(&h2)
        };
        list = list.coproduct(&power);
    }
    list
}

/// `N : list → `{0..n}`, sending the `k`-qubit atom onto the point `k`.
pub fn length_function(n: usize) -> QFunction {
    let dom = list_quantum_set(n);
    let points: Vec<String> = (0..=n).map(|k| k.to_string()).collect();
    let cod = embed_classical_set(&points).expect("distinct labels");
    let blocks = (0..=n).map(|k| ((k, k), OperatorSubspace::full(dom.dim(k), 1)));
    QFunction::new(QRelation::from_blocks(&dom, &cod, blocks).expect("blocks fit"))
        .expect("length map is a function")
}

fn bit(index: usize, qubit: usize, n: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Reverses the qubit order of an `n`-qubit register (qubit 0 is the most
/// significant tensor factor).
pub fn swap_unitary(n: usize) -> ComplexMatrix {
    let dim = 1usize << n;
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        let j = (0..n).fold(0, |acc, q| acc | (bit(i, q, n) << q));
        m[(j, i)] = Complex64::new(1.0, 0.0);
    }
    m
}

/// One step: Hadamard on qubit 0, then for each later qubit `k` a controlled
/// phase of `2π/2^{k+1}` between qubits 0 and `k`.
pub fn step_unitary(n: usize) -> ComplexMatrix {
    if n == 0 {
        return ComplexMatrix::identity(1, 1);
    }
    let rest = 1usize << (n - 1);
    let h = hadamard_matrix() / Complex64::new(2f64.sqrt(), 0.0);
    let mut u = h.kronecker(&ComplexMatrix::identity(rest, rest));
    let dim = 1usize << n;
    for k in 1..n {
        let theta = 2.0 * PI / (1u64 << (k + 1)) as f64;
        let phase = Complex64::from_polar(1.0, theta);
        let mut c = ComplexMatrix::identity(dim, dim);
        for i in 0..dim {
            if bit(i, 0, n) == 1 && bit(i, k, n) == 1 {
                c[(i, i)] = phase;
            }
        }
        u = c * u;
    }
    u
}

/// The swapped transform: a step on the head, then recursion on the tail.
pub fn qft0_unitary(n: usize) -> ComplexMatrix {
    if n == 0 {
        return ComplexMatrix::identity(1, 1);
    }
    let tail = ComplexMatrix::identity(2, 2).kronecker(&qft0_unitary(n - 1));
    tail * step_unitary(n)
}

pub fn qft_unitary(n: usize) -> ComplexMatrix {
    swap_unitary(n) * qft0_unitary(n)
}

fn list_lines(n: usize, unitary: impl Fn(usize) -> ComplexMatrix) -> QFunction {
    line_function(&list_quantum_set(n), (0..=n).map(unitary).collect())
}

pub fn swap_function(n: usize) -> QFunction {
    list_lines(n, swap_unitary)
}

pub fn step_function(n: usize) -> QFunction {
    list_lines(n, step_unitary)
}

pub fn qft0_function(n: usize) -> QFunction {
    list_lines(n, qft0_unitary)
}

/// `QFT = Swap ∘ QFT₀`, atomwise on the truncated list type.
pub fn qft_function(n: usize) -> QFunction {
    list_lines(n, qft_unitary)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn h2() -> QuantumSet {
        QuantumSet::atomic("H2", 2)
    }

    fn bits() -> QuantumSet {
        embed_classical_set(&["1", "-1"]).unwrap()
    }

    fn f2() -> QFunction {
        let p0 = ComplexMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)]);
        let p1 = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]);
        measurement_from_pvm(&h2(), &bits(), &[p0, p1]).unwrap()
    }

    fn sample_state() -> DensityState {
        let m = ComplexMatrix::from_row_slice(
            2,
            2,
            &[c(0.3, 0.), c(0.1, -0.2), c(0.1, 0.2), c(0.7, 0.)],
        );
        DensityState::new(h2(), vec![m]).unwrap()
    }

    #[test]
    fn measurement_recovers_diagonal() {
        let n = pushforward(&sample_state(), &f2()).unwrap();
        assert!((n.block(0)[(0, 0)] - c(0.3, 0.)).norm() < 1e-12);
        assert!((n.block(1)[(0, 0)] - c(0.7, 0.)).norm() < 1e-12);
    }

    #[test]
    fn measurement_blocks_are_standard_rows() {
        let f = f2();
        let row = |a: f64, b: f64| ComplexMatrix::from_row_slice(1, 2, &[c(a, 0.), c(b, 0.)]);
        assert!(f
            .block(0, 0)
            .same_span(&OperatorSubspace::line(&row(1., 0.)).unwrap())
            .unwrap());
        assert!(f
            .block(0, 1)
            .same_span(&OperatorSubspace::line(&row(0., 1.)).unwrap())
            .unwrap());
        assert!(f.is_surjective().unwrap());
    }

    #[test]
    fn hadamard_pushes_e11_to_plus_state() {
        let e11 = DensityState::pure(&h2(), 0, &[c(1., 0.), c(0., 0.)]).unwrap();
        let n = pushforward(&e11, &hadamard()).unwrap();
        let expected = ComplexMatrix::from_element(2, 2, c(0.5, 0.));
        assert!(hs_norm(&(n.block(0) - expected)) < 1e-12);
    }

    #[test]
    fn identity_leaves_state_alone() {
        let m = sample_state();
        let n = pushforward(&m, &QFunction::identity(&h2())).unwrap();
        assert!(hs_norm(&(n.block(0) - m.block(0))) < 1e-12);
    }

    #[test]
    fn pairing_basics() {
        let m = sample_state();
        assert!((pair(&Observable::identity(&h2()), &m).unwrap() - c(1., 0.)).norm() < 1e-12);
        let a = ComplexMatrix::from_row_slice(2, 2, &[c(2., 1.), c(3., 0.), c(-1., 0.), c(5., 0.)]);
        let e11 = DensityState::pure(&h2(), 0, &[c(1., 0.), c(0., 0.)]).unwrap();
        let obs = Observable::new(h2(), vec![a]).unwrap();
        assert!((pair(&obs, &e11).unwrap() - c(2., 1.)).norm() < 1e-12);
        assert!(pair(&Observable::identity(&bits()), &m).is_err());
    }

    #[test]
    fn dual_of_measurement_is_diagonal_inclusion() {
        let a = Observable::new(
            bits(),
            vec![
                ComplexMatrix::from_element(1, 1, c(2., 1.)),
                ComplexMatrix::from_element(1, 1, c(-3., 0.)),
            ],
        )
        .unwrap();
        let pulled = dual_hom_apply(&f2(), &a).unwrap();
        let expected =
            ComplexMatrix::from_row_slice(2, 2, &[c(2., 1.), c(0., 0.), c(0., 0.), c(-3., 0.)]);
        assert!(hs_norm(&(pulled.block(0) - expected)) < 1e-12);
    }

    #[test]
    fn dual_of_hadamard_is_conjugation() {
        let a = ComplexMatrix::from_row_slice(2, 2, &[c(1., 2.), c(0., 1.), c(4., 0.), c(-1., 0.)]);
        let obs = Observable::new(h2(), vec![a.clone()]).unwrap();
        let pulled = dual_hom_apply(&hadamard(), &obs).unwrap();
        let h = hadamard_matrix();
        let expected = &h * a * &h * c(0.5, 0.);
        assert!(hs_norm(&(pulled.block(0) - expected)) < 1e-12);
        let id = dual_hom_apply(&QFunction::identity(&h2()), &obs).unwrap();
        assert!(obs.distance(&id) < 1e-12);
    }

    #[test]
    fn invalid_states_rejected() {
        let bad_trace = ComplexMatrix::identity(2, 2);
        assert!(matches!(
            DensityState::new(h2(), vec![bad_trace]),
            Err(Error::InvalidState(_))
        ));
        let negative =
            ComplexMatrix::from_row_slice(2, 2, &[c(1.5, 0.), c(0., 0.), c(0., 0.), c(-0.5, 0.)]);
        assert!(matches!(
            DensityState::new(h2(), vec![negative]),
            Err(Error::InvalidState(_))
        ));
    }

    #[test]
    fn gates() {
        assert!(hadamard().is_function().unwrap());
        let id = unitary_gate(&ComplexMatrix::identity(2, 2)).unwrap();
        assert!(id.approx_eq(&QRelation::identity(&h2())).unwrap());
        assert_eq!(
            unitary_gate(&(ComplexMatrix::identity(2, 2) * c(2., 0.))).unwrap_err(),
            Error::NotUnitary
        );
        let cp = cphase(0.0);
        assert!(cp.approx_eq(&QRelation::identity(cp.dom())).unwrap());
        assert_eq!(cp.dom().dims(), vec![4]);
    }

    #[test]
    fn pvm_validation_and_round_trip() {
        let trivial =
            measurement_from_pvm(&h2(), &QuantumSet::one(), &[ComplexMatrix::identity(2, 2)])
                .unwrap();
        assert!(trivial.block(0, 0).is_full());
        let ps = pvm_from_function(&f2()).unwrap();
        let again = measurement_from_pvm(&h2(), &bits(), &ps).unwrap();
        assert!(again.approx_eq(&f2()).unwrap());
        let half = ComplexMatrix::identity(2, 2) * c(0.5, 0.);
        assert!(matches!(
            measurement_from_pvm(&h2(), &bits(), &[half.clone(), half]),
            Err(Error::NotAPvm(_))
        ));
    }

    #[test]
    fn list_set_and_length() {
        assert_eq!(list_quantum_set(0), QuantumSet::one());
        assert_eq!(list_quantum_set(3).dims(), vec![1, 2, 4, 8]);
        assert!(length_function(3).is_function().unwrap());
    }

    #[test]
    fn swap_is_an_involution() {
        let s = swap_function(3);
        assert!(s
            .then(&s)
            .unwrap()
            .approx_eq(&QFunction::identity(s.dom()))
            .unwrap());
        // 3 qubits: |011> ↦ |110>.
        assert_eq!(swap_unitary(3)[(0b110, 0b011)], c(1., 0.));
    }

    #[test]
    fn one_qubit_qft_is_hadamard() {
        let q = qft_function(1);
        assert!(q
            .block(1, 1)
            .same_span(&OperatorSubspace::line(&hadamard_matrix()).unwrap())
            .unwrap());
        assert!(q.is_function().unwrap());
    }
}
