//! Quantum sets, quantum relations and quantum functions.
//!
//! A quantum set is a finite list of labelled atoms (finite-dimensional
//! Hilbert spaces). A relation `X → Y` is a sparse matrix of operator
//! subspaces `R(x, y) ⊆ L(x, y)`; absent blocks are the zero subspace and a
//! zero block is never stored.
//!
//! Composition is written diagrammatically: `r.compose(&s)` is "`r` then `s`",
//! the relation usually written `S ∘ R`. Its `(x, z)` block is the span of all
//! products `b·a` with `a ∈ R(x, y)` and `b ∈ S(y, z)`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::opspace::{ComplexMatrix, OperatorSubspace};

/// One atom of a quantum set: a Hilbert space of dimension `dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub label: String,
    pub dim: usize,
}

impl Atom {
    pub fn new(label: impl Into<String>, dim: usize) -> Self {
        Atom {
            label: label.into(),
            dim,
        }
    }
}

/// Equality is label-and-dimension list equality, in order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct QuantumSet {
    atoms: Vec<Atom>,
}

impl QuantumSet {
    pub fn new(atoms: Vec<Atom>) -> Result<Self> {
        let mut seen = HashSet::new();
        for a in &atoms {
            if a.dim == 0 {
                return Err(Error::ShapeMismatch(format!(
                    "atom `{}` has dimension 0",
                    a.label
                )));
            }
            if !seen.insert(a.label.as_str()) {
                return Err(Error::DuplicateLabel(a.label.clone()));
            }
        }
        Ok(QuantumSet { atoms })
    }

    /// The empty quantum set `0`.
    pub fn empty() -> Self {
        QuantumSet::default()
    }

    /// The one-point quantum set `1 = {ℂ}`.
    pub fn one() -> Self {
        QuantumSet::atomic("*", 1)
    }

    /// A quantum set with a single atom, e.g. `ℋ_d`.
    pub fn atomic(label: impl Into<String>, dim: usize) -> Self {
        assert!(dim > 0, "atoms have positive dimension");
        QuantumSet {
            atoms: vec![Atom::new(label, dim)],
        }
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn dim(&self, index: usize) -> usize {
        self.atoms[index].dim
    }

    pub fn label(&self, index: usize) -> &str {
        &self.atoms[index].label
    }

    pub fn dims(&self) -> Vec<usize> {
        self.atoms.iter().map(|a| a.dim).collect()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a.label == label)
    }

    /// All atoms one-dimensional.
    pub fn is_classical(&self) -> bool {
        self.atoms.iter().all(|a| a.dim == 1)
    }

    /// Monoidal product: atoms `x ⊗ y` labelled `"(a,b)"`, ordered
    /// lexicographically in factor order.
    pub fn product(&self, other: &QuantumSet) -> QuantumSet {
        let mut atoms = Vec::with_capacity(self.len() * other.len());
        for a in &self.atoms {
            for b in &other.atoms {
                atoms.push(Atom::new(
                    format!("({},{})", a.label, b.label),
                    a.dim * b.dim,
                ));
            }
        }
        QuantumSet { atoms }
    }

    /// Disjoint union. When any label occurs on both sides, every left label
    /// gets an `L.` prefix and every right label an `R.` prefix.
    pub fn coproduct(&self, other: &QuantumSet) -> QuantumSet {
        let left: HashSet<&str> = self.atoms.iter().map(|a| a.label.as_str()).collect();
        let collides = other.atoms.iter().any(|a| left.contains(a.label.as_str()));
        let mut atoms = Vec::with_capacity(self.len() + other.len());
        for a in &self.atoms {
            let label = if collides {
                format!("L.{}", a.label)
            } else {
                a.label.clone()
            };
            atoms.push(Atom::new(label, a.dim));
        }
        for a in &other.atoms {
            let label = if collides {
                format!("R.{}", a.label)
            } else {
                a.label.clone()
            };
            atoms.push(Atom::new(label, a.dim));
        }
        QuantumSet { atoms }
    }

    /// The dual quantum set. Atoms of dimension one are self-dual; every other
    /// atom has its `*` marker toggled. Dimensions are unchanged.
    pub fn dual(&self) -> QuantumSet {
        let atoms = self
            .atoms
            .iter()
            .map(|a| {
                let label = if a.dim == 1 {
                    a.label.clone()
                } else if let Some(base) = a.label.strip_suffix('*') {
                    base.to_string()
                } else {
                    format!("{}*", a.label)
                };
                Atom::new(label, a.dim)
            })
            .collect();
        QuantumSet { atoms }
    }

    /// The sub-quantum-set `!X` of one-dimensional atoms, with the indices
    /// they occupy in `self`.
    pub fn bang(&self) -> (QuantumSet, Vec<usize>) {
        let kept: Vec<usize> = (0..self.len())
            .filter(|&i| self.atoms[i].dim == 1)
            .collect();
        let atoms = kept.iter().map(|&i| self.atoms[i].clone()).collect();
        (QuantumSet { atoms }, kept)
    }
}

impl fmt::Display for QuantumSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", a.label, a.dim)?;
        }
        write!(f, "}}")
    }
}

/// A quantum binary relation `dom → cod`.
#[derive(Debug, Clone)]
pub struct QRelation {
    dom: QuantumSet,
    cod: QuantumSet,
    blocks: BTreeMap<(usize, usize), OperatorSubspace>,
}

impl QRelation {
    /// The bottom relation `⊥(X,Y)`, all blocks zero.
    pub fn bottom(dom: &QuantumSet, cod: &QuantumSet) -> Self {
        QRelation {
            dom: dom.clone(),
            cod: cod.clone(),
            blocks: BTreeMap::new(),
        }
    }

    /// The top relation `⊤(X,Y)`, every block the full `L(x, y)`.
    pub fn top(dom: &QuantumSet, cod: &QuantumSet) -> Self {
        let mut blocks = BTreeMap::new();
        for (i, x) in dom.atoms.iter().enumerate() {
            for (j, y) in cod.atoms.iter().enumerate() {
                blocks.insert((i, j), OperatorSubspace::full(x.dim, y.dim));
            }
        }
        QRelation {
            dom: dom.clone(),
            cod: cod.clone(),
            blocks,
        }
    }

    /// `ℂ·1` down the diagonal.
    pub fn identity(set: &QuantumSet) -> Self {
        let blocks = set
            .atoms
            .iter()
            .enumerate()
            .map(|(i, a)| ((i, i), OperatorSubspace::scalars(a.dim)))
            .collect();
        QRelation {
            dom: set.clone(),
            cod: set.clone(),
            blocks,
        }
    }

    /// Builds a relation from explicit blocks. Zero blocks are dropped;
    /// repeated coordinates are joined.
    pub fn from_blocks(
        dom: &QuantumSet,
        cod: &QuantumSet,
        blocks: impl IntoIterator<Item = ((usize, usize), OperatorSubspace)>,
    ) -> Result<Self> {
        let mut rel = QRelation::bottom(dom, cod);
        for ((i, j), space) in blocks {
            if i >= dom.len() || j >= cod.len() {
                return Err(Error::ShapeMismatch(format!(
                    "block ({i},{j}) outside {}x{} atoms",
                    dom.len(),
                    cod.len()
                )));
            }
            if space.dom_dim() != dom.dim(i) || space.cod_dim() != cod.dim(j) {
                return Err(Error::DimensionMismatch {
                    expected: format!("L({}, {})", dom.dim(i), cod.dim(j)),
                    found: format!("L({}, {})", space.dom_dim(), space.cod_dim()),
                });
            }
            rel.join_block(i, j, space)?;
        }
        Ok(rel)
    }

    /// Relation whose `(i, j)` block is the span of `spanning`, looked up by
    /// atom label.
    pub fn from_spanning(
        dom: &QuantumSet,
        cod: &QuantumSet,
        blocks: &[(&str, &str, Vec<ComplexMatrix>)],
    ) -> Result<Self> {
        let mut spaces = Vec::with_capacity(blocks.len());
        for (from, to, mats) in blocks {
            let i = dom
                .index_of(from)
                .ok_or_else(|| Error::UnknownAtom(from.to_string()))?;
            let j = cod
                .index_of(to)
                .ok_or_else(|| Error::UnknownAtom(to.to_string()))?;
            spaces.push((
                (i, j),
                OperatorSubspace::orthonormalize(mats, dom.dim(i), cod.dim(j))?,
            ));
        }
        QRelation::from_blocks(dom, cod, spaces)
    }

    fn join_block(&mut self, i: usize, j: usize, space: OperatorSubspace) -> Result<()> {
        if space.is_zero() {
            return Ok(());
        }
        let merged = match self.blocks.remove(&(i, j)) {
            Some(existing) => existing.join(&space)?,
            None => space,
        };
        self.blocks.insert((i, j), merged);
        Ok(())
    }

    pub fn dom(&self) -> &QuantumSet {
        &self.dom
    }

    pub fn cod(&self) -> &QuantumSet {
        &self.cod
    }

    /// The `(i, j)` block, or the zero subspace.
    pub fn block(&self, i: usize, j: usize) -> OperatorSubspace {
        self.blocks
            .get(&(i, j))
            .cloned()
            .unwrap_or_else(|| OperatorSubspace::zero(self.dom.dim(i), self.cod.dim(j)))
    }

    pub fn block_ref(&self, i: usize, j: usize) -> Option<&OperatorSubspace> {
        self.blocks.get(&(i, j))
    }

    /// Nonzero blocks in `(dom index, cod index)` order.
    pub fn blocks(&self) -> impl Iterator<Item = ((usize, usize), &OperatorSubspace)> {
        self.blocks.iter().map(|(k, v)| (*k, v))
    }

    pub fn nonzero_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_endo(&self) -> bool {
        self.dom == self.cod
    }

    fn check_same_shape(&self, other: &QRelation) -> Result<()> {
        if self.dom != other.dom || self.cod != other.cod {
            return Err(Error::ShapeMismatch(format!(
                "relation {} -> {} vs {} -> {}",
                self.dom, self.cod, other.dom, other.cod
            )));
        }
        Ok(())
    }

    /// `self` then `next`.
    pub fn compose(&self, next: &QRelation) -> Result<QRelation> {
        if self.cod != next.dom {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose: codomain {} differs from domain {}",
                self.cod, next.dom
            )));
        }
        let mut by_source: BTreeMap<usize, Vec<(usize, &OperatorSubspace)>> = BTreeMap::new();
        for ((y, z), s) in &next.blocks {
            by_source.entry(*y).or_default().push((*z, s));
        }
        let mut products: BTreeMap<(usize, usize), Vec<ComplexMatrix>> = BTreeMap::new();
        for ((x, y), r) in &self.blocks {
            let Some(targets) = by_source.get(y) else {
                continue;
            };
            for (z, s) in targets {
                let entry = products.entry((*x, *z)).or_default();
                for a in r.basis() {
                    for b in s.basis() {
                        entry.push(b * a);
                    }
                }
            }
        }
        let mut blocks = BTreeMap::new();
        for ((x, z), mats) in products {
            let space = OperatorSubspace::orthonormalize(&mats, self.dom.dim(x), next.cod.dim(z))?;
            if !space.is_zero() {
                blocks.insert((x, z), space);
            }
        }
        Ok(QRelation {
            dom: self.dom.clone(),
            cod: next.cod.clone(),
            blocks,
        })
    }

    /// `R†(y, x) = { a† : a ∈ R(x, y) }`.
    pub fn dagger(&self) -> QRelation {
        let blocks = self
            .blocks
            .iter()
            .map(|((i, j), s)| ((*j, *i), s.adjoint_space()))
            .collect();
        QRelation {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            blocks,
        }
    }

    /// `self ≤ other`, entrywise containment.
    pub fn leq(&self, other: &QRelation) -> Result<bool> {
        self.check_same_shape(other)?;
        for ((i, j), s) in &self.blocks {
            match other.blocks.get(&(*i, *j)) {
                Some(o) => {
                    if !o.contains(s)? {
                        return Ok(false);
                    }
                }
                None => return Ok(false),
            }
        }
        Ok(true)
    }

    /// Equality as subspace matrices (mutual `≤`).
    pub fn approx_eq(&self, other: &QRelation) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    pub fn meet(&self, other: &QRelation) -> Result<QRelation> {
        self.check_same_shape(other)?;
        let mut blocks = BTreeMap::new();
        for (k, s) in &self.blocks {
            if let Some(o) = other.blocks.get(k) {
                let m = s.meet(o)?;
                if !m.is_zero() {
                    blocks.insert(*k, m);
                }
            }
        }
        Ok(QRelation {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            blocks,
        })
    }

    pub fn join(&self, other: &QRelation) -> Result<QRelation> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for ((i, j), s) in &other.blocks {
            out.join_block(*i, *j, s.clone())?;
        }
        Ok(out)
    }

    /// Entrywise orthocomplement in the relation lattice.
    pub fn complement(&self) -> QRelation {
        let mut blocks = BTreeMap::new();
        for i in 0..self.dom.len() {
            for j in 0..self.cod.len() {
                let c = self.block(i, j).ortho_complement();
                if !c.is_zero() {
                    blocks.insert((i, j), c);
                }
            }
        }
        QRelation {
            dom: self.dom.clone(),
            cod: self.cod.clone(),
            blocks,
        }
    }

    /// Orthogonal in every entry: `Tr(S(x,y)† · R(x,y)) = 0`.
    pub fn is_orthogonal(&self, other: &QRelation) -> Result<bool> {
        self.check_same_shape(other)?;
        for (k, s) in &self.blocks {
            if let Some(o) = other.blocks.get(k) {
                if !s.is_orthogonal(o)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `R × S : X₁×X₂ → Y₁×Y₂`, blocks `R(x₁,y₁) ⊗ S(x₂,y₂)`.
    pub fn monoidal_product(&self, other: &QRelation) -> QRelation {
        let dom = self.dom.product(&other.dom);
        let cod = self.cod.product(&other.cod);
        let n2 = other.dom.len();
        let m2 = other.cod.len();
        let mut blocks = BTreeMap::new();
        for ((x1, y1), r) in &self.blocks {
            for ((x2, y2), s) in &other.blocks {
                blocks.insert((x1 * n2 + x2, y1 * m2 + y2), r.tensor_space(s));
            }
        }
        QRelation { dom, cod, blocks }
    }

    /// `R ⊎ S`, block diagonal on the disjoint unions.
    pub fn coproduct(&self, other: &QRelation) -> QRelation {
        let dom = self.dom.coproduct(&other.dom);
        let cod = self.cod.coproduct(&other.cod);
        let (di, dj) = (self.dom.len(), self.cod.len());
        let mut blocks = self.blocks.clone();
        for ((i, j), s) in &other.blocks {
            blocks.insert((i + di, j + dj), s.clone());
        }
        QRelation { dom, cod, blocks }
    }

    /// `F ∘ F† ≤ I` and `F† ∘ F ≥ I`.
    pub fn is_function(&self) -> Result<bool> {
        Ok(self.is_single_valued()? && self.is_total()?)
    }

    fn is_single_valued(&self) -> Result<bool> {
        self.dagger()
            .compose(self)?
            .leq(&QRelation::identity(&self.cod))
    }

    fn is_total(&self) -> Result<bool> {
        QRelation::identity(&self.dom).leq(&self.compose(&self.dagger())?)
    }

    /// `F ∘ F† ≥ I`.
    pub fn is_surjective(&self) -> Result<bool> {
        QRelation::identity(&self.cod).leq(&self.dagger().compose(self)?)
    }

    /// `F† ∘ F ≤ I`.
    pub fn is_injective(&self) -> Result<bool> {
        self.compose(&self.dagger())?
            .leq(&QRelation::identity(&self.dom))
    }

    /// Same relation with the atoms of both sides relabelled positionally.
    pub fn relabel(&self, dom: &QuantumSet, cod: &QuantumSet) -> Result<QRelation> {
        if dom.dims() != self.dom.dims() || cod.dims() != self.cod.dims() {
            return Err(Error::ShapeMismatch(
                "relabelling must preserve atom dimensions".into(),
            ));
        }
        Ok(QRelation {
            dom: dom.clone(),
            cod: cod.clone(),
            blocks: self.blocks.clone(),
        })
    }
}

/// The inclusion `!X → X` of the one-dimensional atoms.
pub fn bang(set: &QuantumSet) -> (QuantumSet, QRelation) {
    let (sub, kept) = set.bang();
    let blocks = kept
        .iter()
        .enumerate()
        .map(|(k, &i)| ((k, i), OperatorSubspace::scalars(1)))
        .collect();
    let inclusion = QRelation {
        dom: sub.clone(),
        cod: set.clone(),
        blocks,
    };
    (sub, inclusion)
}

/// A relation known to satisfy the function inequalities.
#[derive(Debug, Clone)]
pub struct QFunction(QRelation);

impl QFunction {
    pub fn new(rel: QRelation) -> Result<Self> {
        if !rel.is_single_valued()? {
            return Err(Error::NotAFunction("F ∘ F† ≤ I fails".into()));
        }
        if !rel.is_total()? {
            return Err(Error::NotAFunction("F† ∘ F ≥ I fails".into()));
        }
        Ok(QFunction(rel))
    }

    pub fn identity(set: &QuantumSet) -> Self {
        QFunction(QRelation::identity(set))
    }

    pub fn relation(&self) -> &QRelation {
        &self.0
    }

    pub fn into_relation(self) -> QRelation {
        self.0
    }

    /// `self` then `next`; functions are closed under composition.
    pub fn then(&self, next: &QFunction) -> Result<QFunction> {
        Ok(QFunction(self.0.compose(&next.0)?))
    }

    pub fn product(&self, other: &QFunction) -> QFunction {
        QFunction(self.0.monoidal_product(&other.0))
    }

    pub fn sum(&self, other: &QFunction) -> QFunction {
        QFunction(self.0.coproduct(&other.0))
    }

    /// Wraps a relation the caller has constructed to be a function.
    pub(crate) fn trusted(rel: QRelation) -> Self {
        debug_assert!(rel.is_function().unwrap_or(false));
        QFunction(rel)
    }
}

impl Deref for QFunction {
    type Target = QRelation;

    fn deref(&self) -> &QRelation {
        &self.0
    }
}

impl TryFrom<QRelation> for QFunction {
    type Error = Error;

    fn try_from(rel: QRelation) -> Result<Self> {
        QFunction::new(rel)
    }
}

/// An ordinary binary relation between finite sets of labelled elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteRelation {
    pub dom: Vec<String>,
    pub cod: Vec<String>,
    pub pairs: BTreeSet<(usize, usize)>,
}

impl FiniteRelation {
    pub fn new(dom: Vec<String>, cod: Vec<String>, pairs: BTreeSet<(usize, usize)>) -> Self {
        FiniteRelation { dom, cod, pairs }
    }

    pub fn from_map(dom: Vec<String>, cod: Vec<String>, map: &[usize]) -> Self {
        let pairs = map.iter().enumerate().map(|(i, &j)| (i, j)).collect();
        FiniteRelation { dom, cod, pairs }
    }
}

/// `` `S ``: one one-dimensional atom per element.
pub fn embed_classical_set<S: AsRef<str>>(elements: &[S]) -> Result<QuantumSet> {
    QuantumSet::new(elements.iter().map(|e| Atom::new(e.as_ref(), 1)).collect())
}

/// `` `r ``: full `1×1` block at `(s, t)` exactly when `s r t`.
pub fn embed_classical_relation(r: &FiniteRelation) -> Result<QRelation> {
    let dom = embed_classical_set(&r.dom)?;
    let cod = embed_classical_set(&r.cod)?;
    let mut blocks = BTreeMap::new();
    for &(s, t) in &r.pairs {
        if s >= dom.len() || t >= cod.len() {
            return Err(Error::ShapeMismatch(format!("pair ({s},{t}) out of range")));
        }
        blocks.insert((s, t), OperatorSubspace::full(1, 1));
    }
    Ok(QRelation { dom, cod, blocks })
}

/// `` `f `` for a map given as `map[i] = f(i)`.
pub fn embed_classical_function<S: AsRef<str>>(
    dom: &[S],
    cod: &[S],
    map: &[usize],
) -> Result<QFunction> {
    let owned = |v: &[S]| v.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>();
    if map.len() != dom.len() || map.iter().any(|&j| j >= cod.len()) {
        return Err(Error::NotAFunction(
            "map is not total into the codomain".into(),
        ));
    }
    let rel = embed_classical_relation(&FiniteRelation::from_map(owned(dom), owned(cod), map))?;
    Ok(QFunction::trusted(rel))
}

/// Inverse of [`embed_classical_relation`] on classical quantum sets.
pub fn extract_classical(r: &QRelation) -> Result<FiniteRelation> {
    for a in r.dom.atoms.iter().chain(&r.cod.atoms) {
        if a.dim != 1 {
            return Err(Error::NotClassical {
                label: a.label.clone(),
                dim: a.dim,
            });
        }
    }
    let labels = |s: &QuantumSet| s.atoms.iter().map(|a| a.label.clone()).collect();
    Ok(FiniteRelation {
        dom: labels(&r.dom),
        cod: labels(&r.cod),
        pairs: r.blocks.keys().copied().collect(),
    })
}
