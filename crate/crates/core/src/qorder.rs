//! Quantum posets.
//!
//! An order on a quantum set `X` is an endo-relation `R` with `I ≤ R`,
//! `R∘R ≤ R` and `R ∧ R† ≤ I`. Functions `W → X` into an ordered set are
//! ordered by `F ⊑ G iff G ≤ R∘F`, and `F : (X,R) → (Y,S)` is monotone when
//! `F∘R ≤ S∘F`. In this crate's diagrammatic notation those read
//! `g ≤ f.compose(r)` and `r.compose(f) ≤ f.compose(s)`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::opspace::{ComplexMatrix, OperatorSubspace};
use crate::qset::{
    embed_classical_relation, extract_classical, FiniteRelation, QFunction, QRelation, QuantumSet,
};
use crate::tolerance::epsilon;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OrderAxioms {
    pub reflexive: bool,
    pub transitive: bool,
    pub antisymmetric: bool,
}

impl OrderAxioms {
    pub fn all(&self) -> bool {
        self.reflexive && self.transitive && self.antisymmetric
    }
}

/// Reports each of the three order axioms for `order` on `set` separately.
pub fn check_order_axioms(set: &QuantumSet, order: &QRelation) -> Result<OrderAxioms> {
    if order.dom() != set || order.cod() != set {
        return Err(Error::ShapeMismatch(format!(
            "order must be an endo-relation on {set}, got {} -> {}",
            order.dom(),
            order.cod()
        )));
    }
    let id = QRelation::identity(set);
    Ok(OrderAxioms {
        reflexive: id.leq(order)?,
        transitive: order.compose(order)?.leq(order)?,
        antisymmetric: order.meet(&order.dagger())?.leq(&id)?,
    })
}

/// A quantum set with a validated partial order.
#[derive(Debug, Clone)]
pub struct QPoset {
    carrier: QuantumSet,
    order: QRelation,
    axioms: OrderAxioms,
}

impl QPoset {
    pub fn new(order: QRelation) -> Result<Self> {
        let carrier = order.dom().clone();
        let axioms = check_order_axioms(&carrier, &order)?;
        if !axioms.all() {
            let failed: Vec<&str> = [
                (!axioms.reflexive).then_some("reflexivity"),
                (!axioms.transitive).then_some("transitivity"),
                (!axioms.antisymmetric).then_some("antisymmetry"),
            ]
            .into_iter()
            .flatten()
            .collect();
            return Err(Error::NotAnOrder(failed.join(", ")));
        }
        Ok(QPoset {
            carrier,
            order,
            axioms,
        })
    }

    /// The trivial order `I_X`.
    pub fn trivial(set: &QuantumSet) -> Self {
        QPoset {
            carrier: set.clone(),
            order: QRelation::identity(set),
            axioms: OrderAxioms {
                reflexive: true,
                transitive: true,
                antisymmetric: true,
            },
        }
    }

    pub fn carrier(&self) -> &QuantumSet {
        &self.carrier
    }

    pub fn order(&self) -> &QRelation {
        &self.order
    }

    pub fn axioms(&self) -> OrderAxioms {
        self.axioms
    }

    /// `(X×Y, R×S)`.
    pub fn product(&self, other: &QPoset) -> Result<QPoset> {
        QPoset::new(self.order.monoidal_product(&other.order))
    }

    /// `(X⊎Y, R⊎S)`.
    pub fn coproduct(&self, other: &QPoset) -> Result<QPoset> {
        QPoset::new(self.order.coproduct(&other.order))
    }
}

pub fn trivial_order(set: &QuantumSet) -> QPoset {
    QPoset::trivial(set)
}

/// `F ⊑ G` in `qSet(W, X)` for the order of `target`: `G ≤ R∘F`.
pub fn hom_leq(f: &QFunction, g: &QFunction, target: &QPoset) -> Result<bool> {
    if f.dom() != g.dom() || f.cod() != g.cod() {
        return Err(Error::ShapeMismatch(
            "functions have different types".into(),
        ));
    }
    if f.cod() != target.carrier() {
        return Err(Error::ShapeMismatch(format!(
            "functions land in {}, order is on {}",
            f.cod(),
            target.carrier()
        )));
    }
    g.leq(&f.compose(target.order())?)
}

/// `F∘R ≤ S∘F`.
pub fn is_monotone(f: &QFunction, source: &QPoset, target: &QPoset) -> Result<bool> {
    if f.dom() != source.carrier() || f.cod() != target.carrier() {
        return Err(Error::ShapeMismatch(format!(
            "function {} -> {} does not match posets on {} and {}",
            f.dom(),
            f.cod(),
            source.carrier(),
            target.carrier()
        )));
    }
    let lhs = source.order().compose(f)?;
    let rhs = f.compose(target.order())?;
    lhs.leq(&rhs)
}

/// The order `⋀_α J_α† ∘ R_α ∘ J_α` induced on `carrier` by a finite cone of
/// functions `J_α : carrier → X_α` into posets `(X_α, R_α)`.
///
/// The caller validates the axioms of the result. An empty family yields `⊤`.
pub fn induced_cone_order(
    carrier: &QuantumSet,
    cone: &[(&QPoset, &QFunction)],
) -> Result<QRelation> {
    if cone.is_empty() {
        log::warn!("induced_cone_order over an empty family is the top relation");
    }
    let mut acc = QRelation::top(carrier, carrier);
    for (poset, leg) in cone {
        if leg.dom() != carrier || leg.cod() != poset.carrier() {
            return Err(Error::ShapeMismatch(format!(
                "cone leg {} -> {} does not match {} -> {}",
                leg.dom(),
                leg.cod(),
                carrier,
                poset.carrier()
            )));
        }
        let pulled = leg.compose(poset.order())?.compose(&leg.dagger())?;
        acc = acc.meet(&pulled)?;
    }
    Ok(acc)
}

/// A (possibly partial) channel on `ℋ_d` given by Kraus operators with
/// `Σ v†v ≤ I`.
#[derive(Debug, Clone)]
pub struct KrausChannel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl KrausChannel {
    pub fn new(dim: usize, kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let mut total = ComplexMatrix::zeros(dim, dim);
        for v in &kraus {
            if v.nrows() != dim || v.ncols() != dim {
                return Err(Error::DimensionMismatch {
                    expected: format!("{dim}x{dim}"),
                    found: format!("{}x{}", v.nrows(), v.ncols()),
                });
            }
            total += v.adjoint() * v;
        }
        let slack = ComplexMatrix::identity(dim, dim) - total;
        let min_eig = crate::linalg::hermitian_eigenvalues(&slack)
            .first()
            .copied()
            .unwrap_or(0.0);
        if min_eig < -epsilon() {
            return Err(Error::NotSubunital);
        }
        Ok(KrausChannel { dim, kraus })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// `ρ ↦ Σ v ρ v†`.
    pub fn apply(&self, rho: &ComplexMatrix) -> ComplexMatrix {
        self.kraus
            .iter()
            .fold(ComplexMatrix::zeros(self.dim, self.dim), |acc, v| {
                acc + v * rho * v.adjoint()
            })
    }
}

/// Information order of a channel: the unital subalgebra of `L(ℋ_d)`
/// generated by the adjoints of its Kraus operators, as an endo-relation on
/// the atomic set `ℋ_d` (labelled `H{d}`).
///
/// The result is reflexive and transitive; it need not be antisymmetric.
pub fn order_from_channel(channel: &KrausChannel) -> Result<QRelation> {
    let d = channel.dim;
    let set = QuantumSet::atomic(format!("H{d}"), d);
    let adjoints: Vec<ComplexMatrix> = channel.kraus.iter().map(|v| v.adjoint()).collect();
    let generators = OperatorSubspace::orthonormalize(&adjoints, d, d)?;
    let mut algebra = OperatorSubspace::scalars(d);
    // Words of length ≤ k after k rounds; stops once a round adds nothing.
    loop {
        let next = algebra.join(&algebra.product_span(&generators)?)?;
        if next.dim() == algebra.dim() {
            break;
        }
        algebra = next;
    }
    QRelation::from_blocks(&set, &set, [((0, 0), algebra)])
}

/// An ordinary finite partial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    elements: Vec<String>,
    leq: BTreeSet<(usize, usize)>,
}

impl FinitePoset {
    /// `leq` must already be reflexive, transitive and antisymmetric.
    pub fn new(elements: Vec<String>, leq: BTreeSet<(usize, usize)>) -> Result<Self> {
        let n = elements.len();
        if leq.iter().any(|&(a, b)| a >= n || b >= n) {
            return Err(Error::ShapeMismatch("order pair out of range".into()));
        }
        if (0..n).any(|a| !leq.contains(&(a, a))) {
            return Err(Error::NotAnOrder("reflexivity".into()));
        }
        for &(a, b) in &leq {
            if a != b && leq.contains(&(b, a)) {
                return Err(Error::NotAnOrder("antisymmetry".into()));
            }
            for c in 0..n {
                if leq.contains(&(b, c)) && !leq.contains(&(a, c)) {
                    return Err(Error::NotAnOrder("transitivity".into()));
                }
            }
        }
        Ok(FinitePoset { elements, leq })
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(n: usize) -> Self {
        let leq = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        FinitePoset {
            elements: (0..n).map(|i| i.to_string()).collect(),
            leq,
        }
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq.contains(&(a, b))
    }

    pub fn pairs(&self) -> &BTreeSet<(usize, usize)> {
        &self.leq
    }
}

/// `` (`S, `⊑) ``.
pub fn embed_classical_poset(p: &FinitePoset) -> Result<QPoset> {
    let rel = embed_classical_relation(&FiniteRelation::new(
        p.elements.clone(),
        p.elements.clone(),
        p.leq.clone(),
    ))?;
    QPoset::new(rel)
}

pub fn extract_classical_poset(q: &QPoset) -> Result<FinitePoset> {
    let r = extract_classical(q.order())?;
    FinitePoset::new(r.dom, r.pairs)
}
