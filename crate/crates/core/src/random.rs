//! Random generators for property tests and the acceptance suite.
//!
//! Everything takes an explicit `Rng` so callers control seeding.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::opspace::{ComplexMatrix, OperatorSubspace};
use crate::qcpo::lift_object;
use crate::qorder::{embed_classical_poset, FinitePoset, QPoset};
use crate::qset::{Atom, QFunction, QRelation, QuantumSet};
use crate::states::{DensityState, Observable};

pub fn gaussian_complex<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im)
}

/// Entries i.i.d. standard complex Gaussian.
pub fn gaussian_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| gaussian_complex(rng))
}

/// Gram–Schmidt on the columns of a Gaussian matrix. Almost surely full rank;
/// retried otherwise.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, d: usize) -> ComplexMatrix {
    'retry: loop {
        let mut q = gaussian_matrix(rng, d, d);
        for j in 0..d {
            for k in 0..j {
                let proj = q.column(k).dotc(&q.column(j));
                let col_k = q.column(k).clone_owned();
                let mut col_j = q.column_mut(j);
                col_j -= col_k * proj;
            }
            let norm = q.column(j).norm();
            if norm < 1e-8 {
                continue 'retry;
            }
            let mut col_j = q.column_mut(j);
            col_j /= Complex64::new(norm, 0.0);
        }
        return q;
    }
}

/// Up to `max_atoms` atoms (at least one) with dims in `1..=max_dim`.
pub fn random_quantum_set<R: Rng + ?Sized>(
    rng: &mut R,
    max_atoms: usize,
    max_dim: usize,
) -> QuantumSet {
    let n = rng.random_range(1..=max_atoms);
    let atoms = (0..n)
        .map(|i| Atom::new(format!("x{i}"), rng.random_range(1..=max_dim)))
        .collect();
    QuantumSet::new(atoms).expect("generated labels are distinct")
}

/// A random subspace of `L(dom, cod)`: zero with some probability, else the
/// span of a random number of Gaussian matrices.
pub fn random_subspace<R: Rng + ?Sized>(
    rng: &mut R,
    dom_dim: usize,
    cod_dim: usize,
) -> OperatorSubspace {
    let ambient = dom_dim * cod_dim;
    if rng.random_bool(0.25) {
        return OperatorSubspace::zero(dom_dim, cod_dim);
    }
    let k = rng.random_range(1..=ambient.max(1));
    let spanning: Vec<_> = (0..k)
        .map(|_| gaussian_matrix(rng, cod_dim, dom_dim))
        .collect();
    OperatorSubspace::orthonormalize(&spanning, dom_dim, cod_dim).expect("shapes agree")
}

pub fn random_relation<R: Rng + ?Sized>(
    rng: &mut R,
    dom: &QuantumSet,
    cod: &QuantumSet,
) -> QRelation {
    let mut blocks = Vec::new();
    for i in 0..dom.len() {
        for j in 0..cod.len() {
            blocks.push(((i, j), random_subspace(rng, dom.dim(i), cod.dim(j))));
        }
    }
    QRelation::from_blocks(dom, cod, blocks).expect("blocks fit")
}

/// Random way of writing `d` as an ordered sum of entries of `dims`, as a list
/// of indices. `None` if no decomposition exists.
fn random_partition<R: Rng + ?Sized>(rng: &mut R, d: usize, dims: &[usize]) -> Option<Vec<usize>> {
    // reachable[s]: can s be written as a sum of available dims
    let mut reachable = vec![false; d + 1];
    reachable[0] = true;
    for s in 1..=d {
        reachable[s] = dims.iter().any(|&k| k <= s && reachable[s - k]);
    }
    if !reachable[d] {
        return None;
    }
    let mut parts = Vec::new();
    let mut left = d;
    while left > 0 {
        let options: Vec<usize> = (0..dims.len())
            .filter(|&j| dims[j] <= left && reachable[left - dims[j]])
            .collect();
        let &j = options.as_slice().choose(rng)?;
        parts.push(j);
        left -= dims[j];
    }
    Some(parts)
}

/// A random function `dom → cod`.
///
/// For each atom `x` of `dom` the dual `*`-homomorphism is
/// `a ↦ U (⊕_k a_{j_k}) U†` for a random unitary `U` on `x` and a random
/// multiset `j_1, j_2, …` of codomain atoms whose dims add up to `dim x`.
/// Block `(x, y)` is spanned by `E_k U†` over the slots `k` assigned to `y`,
/// where `E_k` picks out the `k`-th diagonal slot. `None` if some domain atom
/// admits no such multiset.
pub fn random_function<R: Rng + ?Sized>(
    rng: &mut R,
    dom: &QuantumSet,
    cod: &QuantumSet,
) -> Option<QFunction> {
    let cod_dims = cod.dims();
    let mut blocks = Vec::new();
    for i in 0..dom.len() {
        let d = dom.dim(i);
        let parts = random_partition(rng, d, &cod_dims)?;
        let u_dag = random_unitary(rng, d).adjoint();
        let mut spanning: Vec<Vec<ComplexMatrix>> = vec![Vec::new(); cod.len()];
        let mut offset = 0;
        for j in parts {
            let dj = cod_dims[j];
            let mut e = ComplexMatrix::zeros(dj, d);
            for r in 0..dj {
                e[(r, offset + r)] = Complex64::new(1.0, 0.0);
            }
            spanning[j].push(&e * &u_dag);
            offset += dj;
        }
        for (j, mats) in spanning.into_iter().enumerate() {
            if !mats.is_empty() {
                let space = OperatorSubspace::orthonormalize(&mats, d, cod_dims[j]).ok()?;
                blocks.push(((i, j), space));
            }
        }
    }
    let rel = QRelation::from_blocks(dom, cod, blocks).ok()?;
    QFunction::new(rel).ok()
}

/// Blockwise Wishart matrices, normalized to total trace one. Each block is
/// dropped (set to zero) with some probability, keeping at least one.
pub fn random_state<R: Rng + ?Sized>(rng: &mut R, space: &QuantumSet) -> DensityState {
    let keep: Vec<bool> = {
        let mut k: Vec<bool> = (0..space.len()).map(|_| rng.random_bool(0.7)).collect();
        if !k.iter().any(|&b| b) && !k.is_empty() {
            let i = rng.random_range(0..k.len());
            k[i] = true;
        }
        k
    };
    let mut blocks: Vec<ComplexMatrix> = (0..space.len())
        .map(|i| {
            let d = space.dim(i);
            if keep[i] {
                let rank = rng.random_range(1..=d);
                let g = gaussian_matrix(rng, d, rank);
                &g * g.adjoint()
            } else {
                ComplexMatrix::zeros(d, d)
            }
        })
        .collect();
    let total: Complex64 = blocks.iter().map(|b| b.trace()).sum();
    for b in &mut blocks {
        *b /= total;
        // exact hermiticity after rounding
        *b = (b.clone() + b.adjoint()) * Complex64::new(0.5, 0.0);
    }
    DensityState::new(space.clone(), blocks).expect("Wishart blocks are valid")
}

pub fn random_observable<R: Rng + ?Sized>(rng: &mut R, space: &QuantumSet) -> Observable {
    let blocks = (0..space.len())
        .map(|i| gaussian_matrix(rng, space.dim(i), space.dim(i)))
        .collect();
    Observable::new(space.clone(), blocks).expect("shapes agree")
}

/// Random partial order on `n` elements: random pairs along a random linear
/// extension, transitively closed.
pub fn random_finite_poset<R: Rng + ?Sized>(rng: &mut R, n: usize) -> FinitePoset {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let density: f64 = rng.random_range(0.1..0.7);
    let mut leq = vec![vec![false; n]; n];
    for (a, row) in leq.iter_mut().enumerate() {
        row[a] = true;
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if rng.random_bool(density) {
                leq[perm[x]][perm[y]] = true;
            }
        }
    }
    for k in 0..n {
        for a in 0..n {
            for b in 0..n {
                if leq[a][k] && leq[k][b] {
                    leq[a][b] = true;
                }
            }
        }
    }
    let pairs: BTreeSet<(usize, usize)> = (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter(|&(a, b)| leq[a][b])
        .collect();
    let labels = (0..n).map(|i| format!("p{i}")).collect();
    FinitePoset::new(labels, pairs).expect("closure of an acyclic relation is a partial order")
}

/// A uniformly chosen monotone map `p → q` as `map[i] = f(i)`, found by
/// randomized backtracking. `None` only if `q` is empty while `p` is not.
pub fn random_monotone_map<R: Rng + ?Sized>(
    rng: &mut R,
    p: &FinitePoset,
    q: &FinitePoset,
) -> Option<Vec<usize>> {
    fn extend<R: Rng + ?Sized>(
        rng: &mut R,
        p: &FinitePoset,
        q: &FinitePoset,
        map: &mut Vec<usize>,
    ) -> bool {
        let i = map.len();
        if i == p.len() {
            return true;
        }
        let mut choices: Vec<usize> = (0..q.len()).collect();
        choices.shuffle(rng);
        for c in choices {
            let ok = (0..i)
                .all(|k| (!p.leq(k, i) || q.leq(map[k], c)) && (!p.leq(i, k) || q.leq(c, map[k])));
            if ok {
                map.push(c);
                if extend(rng, p, q, map) {
                    return true;
                }
                map.pop();
            }
        }
        false
    }
    let mut map = Vec::with_capacity(p.len());
    extend(rng, p, q, &mut map).then_some(map)
}

/// Any map, monotone or not.
pub fn random_map<R: Rng + ?Sized>(rng: &mut R, from: usize, to: usize) -> Vec<usize> {
    (0..from).map(|_| rng.random_range(0..to)).collect()
}

/// `(ℋ₂, span{I, e₁₂})`, the smallest non-classical quantum poset.
pub fn upper_triangular_poset() -> QPoset {
    let one = Complex64::new(1.0, 0.0);
    let id = ComplexMatrix::identity(2, 2);
    let mut e12 = ComplexMatrix::zeros(2, 2);
    e12[(0, 1)] = one;
    let h2 = QuantumSet::atomic("H2", 2);
    let order =
        QRelation::from_spanning(&h2, &h2, &[("H2", "H2", vec![id, e12])]).expect("fixed shapes");
    QPoset::new(order).expect("span{I, e12} is an order")
}

/// A small random quantum poset: classical, trivial, the upper-triangular
/// example, or a lift / product / coproduct of those. Total dimension is kept
/// small so that compositions stay cheap.
pub fn random_qposet<R: Rng + ?Sized>(rng: &mut R) -> QPoset {
    fn base<R: Rng + ?Sized>(rng: &mut R) -> QPoset {
        match rng.random_range(0..3) {
            0 => {
                let n = rng.random_range(1..=3);
                embed_classical_poset(&random_finite_poset(rng, n)).expect("valid poset")
            }
            1 => QPoset::trivial(&random_quantum_set(rng, 2, 2)),
            _ => upper_triangular_poset(),
        }
    }
    match rng.random_range(0..5) {
        0 | 1 => base(rng),
        2 => lift_object(&base(rng)).base().clone(),
        3 => {
            let a = base(rng);
            let b = base(rng);
            a.coproduct(&b).expect("coproduct of orders")
        }
        _ => {
            let a = base(rng);
            let b = embed_classical_poset(&random_finite_poset(rng, 2)).expect("valid poset");
            a.product(&b).expect("product of orders")
        }
    }
}
