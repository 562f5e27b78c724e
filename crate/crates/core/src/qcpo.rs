//! Chains of functions, their limits, and pointed quantum posets.
//!
//! For an increasing chain `K₁ ⊑ K₂ ⊑ ⋯ : W → (X, R)` the relations
//! `M_n = R∘K_n` decrease. `K∞` is a limit when `R∘K∞ = ⋀ₙ M_n`. Chains here
//! are finite prefixes; a prefix stands for its infinite continuation only
//! once its last two `M` terms agree; otherwise the operations below refuse
//! with [`Error::PrefixNotStabilized`].

use crate::error::{Error, Result};
use crate::opspace::OperatorSubspace;
use crate::qorder::{hom_leq, QPoset};
use crate::qset::{Atom, QFunction, QRelation, QuantumSet};

/// A nonempty finite prefix of a sequence of functions `dom → target`.
#[derive(Debug, Clone)]
pub struct Chain {
    dom: QuantumSet,
    target: QPoset,
    steps: Vec<QFunction>,
}

impl Chain {
    pub fn new(target: QPoset, steps: Vec<QFunction>) -> Result<Self> {
        let first = steps
            .first()
            .ok_or_else(|| Error::ShapeMismatch("a chain needs at least one step".into()))?;
        let dom = first.dom().clone();
        for (n, k) in steps.iter().enumerate() {
            if k.dom() != &dom || k.cod() != target.carrier() {
                return Err(Error::ShapeMismatch(format!(
                    "step {} has type {} -> {}, expected {} -> {}",
                    n + 1,
                    k.dom(),
                    k.cod(),
                    dom,
                    target.carrier()
                )));
            }
        }
        Ok(Chain { dom, target, steps })
    }

    pub fn dom(&self) -> &QuantumSet {
        &self.dom
    }

    pub fn target(&self) -> &QPoset {
        &self.target
    }

    pub fn steps(&self) -> &[QFunction] {
        &self.steps
    }

    /// `M_n = R∘K_n` for every stored step.
    pub fn upper_sets(&self) -> Result<Vec<QRelation>> {
        self.steps
            .iter()
            .map(|k| k.compose(self.target.order()))
            .collect()
    }

    /// First `n` (1-based) with `K_n ⋢ K_{n+1}`, if any.
    fn first_descent(&self) -> Result<Option<usize>> {
        for (n, pair) in self.steps.windows(2).enumerate() {
            if !hom_leq(&pair[0], &pair[1], &self.target)? {
                return Ok(Some(n + 1));
            }
        }
        Ok(None)
    }

    /// The `M` sequence of an increasing, stabilized prefix.
    fn stabilized_upper_sets(&self) -> Result<Vec<QRelation>> {
        if let Some(n) = self.first_descent()? {
            return Err(Error::ChainNotIncreasing(n));
        }
        let ms = self.upper_sets()?;
        match ms.as_slice() {
            [.., a, b] if a.approx_eq(b)? => Ok(ms),
            _ => Err(Error::PrefixNotStabilized),
        }
    }
}

pub fn is_increasing_chain(chain: &Chain) -> Result<bool> {
    Ok(chain.first_descent()?.is_none())
}

/// Whether `R∘candidate` equals the meet of all `R∘K_n`.
pub fn verify_limit(chain: &Chain, candidate: &QFunction) -> Result<bool> {
    if candidate.dom() != chain.dom() || candidate.cod() != chain.target.carrier() {
        return Err(Error::ShapeMismatch(
            "limit candidate does not share the chain's type".into(),
        ));
    }
    let ms = chain.stabilized_upper_sets()?;
    let mut meet = ms[0].clone();
    for m in &ms[1..] {
        meet = meet.meet(m)?;
    }
    candidate.compose(chain.target.order())?.approx_eq(&meet)
}

/// The limit of a chain into a poset with finitely many atoms: the first
/// step `K_m` whose `M_m` already equals the stabilized value.
pub fn chain_limit_finite(chain: &Chain) -> Result<QFunction> {
    let ms = chain.stabilized_upper_sets()?;
    let last = ms.last().expect("chains are nonempty");
    for (m, upper) in ms.iter().enumerate() {
        if upper.approx_eq(last)? {
            return Ok(chain.steps[m].clone());
        }
    }
    unreachable!("the last upper set equals itself")
}

/// Checks that `f` carries the chain limit `limit` to the limit of the image
/// chain `f∘K_n` in `codomain`. A `limit` that is not a limit of `chain`
/// yields `false`.
pub fn check_scott_continuity_on_chain(
    f: &QFunction,
    chain: &Chain,
    limit: &QFunction,
    codomain: &QPoset,
) -> Result<bool> {
    if !verify_limit(chain, limit)? {
        return Ok(false);
    }
    let image: Vec<QFunction> = chain
        .steps
        .iter()
        .map(|k| k.then(f))
        .collect::<Result<_>>()?;
    let image = Chain::new(codomain.clone(), image)?;
    if !is_increasing_chain(&image)? {
        return Ok(false);
    }
    verify_limit(&image, &limit.then(f)?)
}

/// Outcome of looking for a bottom atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Pointedness {
    Pointed(usize),
    NoCandidate,
    /// Several one-dimensional atoms qualify; pointedness needs uniqueness.
    Multiple(Vec<usize>),
}

impl Pointedness {
    pub fn bottom(&self) -> Option<usize> {
        match self {
            Pointedness::Pointed(i) => Some(*i),
            _ => None,
        }
    }
}

/// Looks for the unique one-dimensional atom `X⊥` with `R(X⊥, X) = L(X⊥, X)`
/// for every atom `X`.
pub fn is_pointed(p: &QPoset) -> Pointedness {
    let carrier = p.carrier();
    let candidates: Vec<usize> = (0..carrier.len())
        .filter(|&b| carrier.dim(b) == 1)
        .filter(|&b| {
            (0..carrier.len()).all(|x| p.order().block_ref(b, x).is_some_and(|s| s.is_full()))
        })
        .collect();
    match candidates.as_slice() {
        [] => Pointedness::NoCandidate,
        [b] => Pointedness::Pointed(*b),
        _ => Pointedness::Multiple(candidates),
    }
}

#[derive(Debug, Clone)]
pub struct PointedQPoset {
    base: QPoset,
    bottom: usize,
}

impl PointedQPoset {
    pub fn new(base: QPoset) -> Result<Self> {
        match is_pointed(&base) {
            Pointedness::Pointed(bottom) => Ok(PointedQPoset { base, bottom }),
            Pointedness::NoCandidate => Err(Error::NotAnOrder(
                "no one-dimensional atom lies below every atom".into(),
            )),
            Pointedness::Multiple(c) => Err(Error::NotAnOrder(format!(
                "bottom atom is not unique: candidates {c:?}"
            ))),
        }
    }

    pub fn base(&self) -> &QPoset {
        &self.base
    }

    pub fn carrier(&self) -> &QuantumSet {
        self.base.carrier()
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }
}

/// `⊥`, or `⊥1`, `⊥2`, … when the label is taken.
fn fresh_bottom_label(set: &QuantumSet) -> String {
    let mut label = "⊥".to_string();
    let mut k = 1;
    while set.index_of(&label).is_some() {
        label = format!("⊥{k}");
        k += 1;
    }
    label
}

/// `{⊥} ⊎ X` with the fresh bottom atom first.
pub fn lift_set(set: &QuantumSet) -> QuantumSet {
    let mut atoms = vec![Atom::new(fresh_bottom_label(set), 1)];
    atoms.extend(set.atoms().iter().cloned());
    QuantumSet::new(atoms).expect("fresh label keeps labels unique")
}

/// `(X, R)⊥`: a fresh bottom atom (index 0) fully below every atom.
pub fn lift_object(p: &QPoset) -> PointedQPoset {
    let lifted = lift_set(p.carrier());
    let mut blocks: Vec<_> = p
        .order()
        .blocks()
        .map(|((i, j), s)| ((i + 1, j + 1), s.clone()))
        .collect();
    for j in 0..lifted.len() {
        blocks.push(((0, j), OperatorSubspace::full(1, lifted.dim(j))));
    }
    let order =
        QRelation::from_blocks(&lifted, &lifted, blocks).expect("blocks fit the lifted set");
    let base = QPoset::new(order).expect("lifting preserves the order axioms");
    PointedQPoset { base, bottom: 0 }
}

/// `F⊥ : X⊥ → Y⊥`, sending `⊥ ↦ ⊥` and acting as `F` elsewhere.
pub fn lift_morphism(f: &QFunction) -> Result<QFunction> {
    let dom = lift_set(f.dom());
    let cod = lift_set(f.cod());
    let mut blocks: Vec<_> = f
        .blocks()
        .map(|((i, j), s)| ((i + 1, j + 1), s.clone()))
        .collect();
    blocks.push(((0, 0), OperatorSubspace::full(1, 1)));
    QFunction::new(QRelation::from_blocks(&dom, &cod, blocks)?)
}

/// `F(X⊥, Y⊥) = L(X⊥, Y⊥)`.
pub fn is_strict(f: &QFunction, source: &PointedQPoset, target: &PointedQPoset) -> Result<bool> {
    if f.dom() != source.carrier() || f.cod() != target.carrier() {
        return Err(Error::ShapeMismatch(
            "function does not match the pointed posets".into(),
        ));
    }
    Ok(f.block_ref(source.bottom, target.bottom)
        .is_some_and(|s| s.is_full()))
}

/// The least function `W → X`: every atom of `W` sent onto `⊥` by the full
/// block `L(W_atom, ℂ)`.
pub fn bottom_function(w: &QuantumSet, p: &PointedQPoset) -> QFunction {
    let blocks = (0..w.len()).map(|i| ((i, p.bottom), OperatorSubspace::full(w.dim(i), 1)));
    let rel = QRelation::from_blocks(w, p.carrier(), blocks).expect("blocks fit");
    QFunction::new(rel).expect("collapsing onto a one-dimensional atom is a function")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::opspace::ComplexMatrix;
    use crate::qorder::{embed_classical_poset, FinitePoset};
    use crate::qset::embed_classical_function;
    use num_complex::Complex64;

    fn h2() -> QuantumSet {
        QuantumSet::atomic("H2", 2)
    }

    fn nonclassical() -> QPoset {
        let m =
            |a: [[f64; 2]; 2]| ComplexMatrix::from_fn(2, 2, |i, j| Complex64::new(a[i][j], 0.0));
        QPoset::new(
            QRelation::from_spanning(
                &h2(),
                &h2(),
                &[(
                    "H2",
                    "H2",
                    vec![m([[1.0, 0.0], [0.0, 1.0]]), m([[0.0, 1.0], [0.0, 0.0]])],
                )],
            )
            .unwrap(),
        )
        .unwrap()
    }

    /// Constant function `1 → chain(n)` at `k`.
    fn point(n: usize, k: usize) -> QFunction {
        let els: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        embed_classical_function(&["*".to_string()], &els, &[k]).unwrap()
    }

    fn chain_poset(n: usize) -> QPoset {
        embed_classical_poset(&FinitePoset::chain(n)).unwrap()
    }

    #[test]
    fn constant_chain_has_its_step_as_limit() {
        let p = chain_poset(3);
        let k = point(3, 1);
        let c = Chain::new(p, vec![k.clone(), k.clone(), k.clone()]).unwrap();
        assert!(is_increasing_chain(&c).unwrap());
        assert!(verify_limit(&c, &k).unwrap());
        assert!(chain_limit_finite(&c).unwrap().approx_eq(&k).unwrap());
    }

    #[test]
    fn staircase_limit_is_the_top() {
        let p = chain_poset(3);
        let steps: Vec<_> = [0, 1, 2, 2, 2].iter().map(|&k| point(3, k)).collect();
        let c = Chain::new(p, steps).unwrap();
        assert!(is_increasing_chain(&c).unwrap());
        assert!(verify_limit(&c, &point(3, 2)).unwrap());
        assert!(!verify_limit(&c, &point(3, 0)).unwrap());
        assert!(chain_limit_finite(&c)
            .unwrap()
            .approx_eq(&point(3, 2))
            .unwrap());
    }

    #[test]
    fn reversed_staircase_is_rejected() {
        let p = chain_poset(3);
        let steps: Vec<_> = [2, 1, 0, 0].iter().map(|&k| point(3, k)).collect();
        let c = Chain::new(p, steps).unwrap();
        assert!(!is_increasing_chain(&c).unwrap());
        assert_eq!(
            verify_limit(&c, &point(3, 0)).unwrap_err(),
            Error::ChainNotIncreasing(1)
        );
    }

    #[test]
    fn unstabilized_prefix_is_refused() {
        let p = chain_poset(3);
        let c = Chain::new(p, vec![point(3, 0), point(3, 1)]).unwrap();
        assert_eq!(
            chain_limit_finite(&c).unwrap_err(),
            Error::PrefixNotStabilized
        );
        let single = Chain::new(chain_poset(3), vec![point(3, 0)]).unwrap();
        assert_eq!(
            chain_limit_finite(&single).unwrap_err(),
            Error::PrefixNotStabilized
        );
    }

    #[test]
    fn bottom_then_f_chain_in_lifted_poset() {
        let lifted = lift_object(&nonclassical());
        let b = bottom_function(&h2(), &lifted);
        // F embeds ℋ₂ onto its own atom by the identity.
        let f = QFunction::new(
            QRelation::from_blocks(
                &h2(),
                lifted.carrier(),
                [((0, 1), OperatorSubspace::scalars(2))],
            )
            .unwrap(),
        )
        .unwrap();
        assert!(hom_leq(&b, &f, lifted.base()).unwrap());
        let c = Chain::new(lifted.base().clone(), vec![b.clone(), f.clone(), f.clone()]).unwrap();
        assert!(chain_limit_finite(&c).unwrap().approx_eq(&f).unwrap());
        assert!(!verify_limit(&c, &b).unwrap());
    }

    #[test]
    fn scott_continuity_examples() {
        let p = chain_poset(3);
        let steps: Vec<_> = [0, 1, 2, 2].iter().map(|&k| point(3, k)).collect();
        let c = Chain::new(p.clone(), steps).unwrap();
        let id = QFunction::identity(p.carrier());
        assert!(check_scott_continuity_on_chain(&id, &c, &point(3, 2), &p).unwrap());
        assert!(!check_scott_continuity_on_chain(&id, &c, &point(3, 1), &p).unwrap());
    }

    #[test]
    fn pointedness() {
        let two = chain_poset(2);
        assert_eq!(is_pointed(&two), Pointedness::Pointed(0));
        assert_eq!(is_pointed(&nonclassical()), Pointedness::NoCandidate);
        let discrete = QPoset::trivial(&QuantumSet::new(vec![Atom::new("a", 1)]).unwrap());
        assert_eq!(is_pointed(&discrete), Pointedness::Pointed(0));
        let lifted = lift_object(&nonclassical());
        assert_eq!(is_pointed(lifted.base()), Pointedness::Pointed(0));
    }

    #[test]
    fn lift_of_empty_set_is_one_point() {
        let l = lift_object(&QPoset::trivial(&QuantumSet::empty()));
        assert_eq!(l.carrier().dims(), vec![1]);
        assert_eq!(l.carrier().label(0), "⊥");
    }

    #[test]
    fn fresh_label_avoids_collisions() {
        let s = QuantumSet::new(vec![Atom::new("⊥", 1)]).unwrap();
        assert_eq!(lift_set(&s).label(0), "⊥1");
    }

    #[test]
    fn lift_morphism_of_identity_is_identity() {
        let id = QFunction::identity(&h2());
        let lifted = lift_morphism(&id).unwrap();
        assert!(lifted
            .approx_eq(&QRelation::identity(&lift_set(&h2())))
            .unwrap());
        let p = lift_object(&nonclassical());
        assert!(is_strict(&lifted, &p, &p).unwrap());
    }

    #[test]
    fn bottom_function_is_least() {
        let lifted = lift_object(&nonclassical());
        let b = bottom_function(&h2(), &lifted);
        assert!(b.is_function().unwrap());
        assert!(b.block(0, 0).is_full());
        assert!(is_strict(
            &bottom_function(lifted.carrier(), &lifted),
            &lifted,
            &lifted
        )
        .unwrap());
    }

    #[test]
    fn non_strict_map_detected() {
        // On the lifted two-chain, send ⊥ to the top point.
        let p = lift_object(&chain_poset(2));
        let labels: Vec<String> = p
            .carrier()
            .atoms()
            .iter()
            .map(|a| a.label.clone())
            .collect();
        let f = embed_classical_function(&labels, &labels, &[2, 2, 2]).unwrap();
        assert!(!is_strict(&f, &p, &p).unwrap());
    }
}
