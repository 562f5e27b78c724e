//! Statement-by-statement evaluation of a parsed script. Every numeric step
//! is delegated to `qcpo-core`; this module only resolves names, shapes
//! values and records outcomes.

use std::collections::HashMap;

use num_complex::Complex64;
use qcpo_core::qcpo::{
    check_scott_continuity_on_chain, is_pointed, is_strict, lift_object, lift_set, verify_limit,
};
use qcpo_core::qorder::{check_order_axioms, hom_leq, is_monotone, order_from_channel};
use qcpo_core::qset::embed_classical_set;
use qcpo_core::states::{list_quantum_set, pushforward, qft_function};
use qcpo_core::{
    Chain, ComplexMatrix, DensityState, KrausChannel, OperatorSubspace, PointedQPoset, Pointedness,
    QFunction, QPoset, QRelation, QuantumSet,
};

use crate::ast::*;
use crate::diagnostic::Diagnostic;
use crate::report::{Entry, Outcome, Report, Value};

type EResult<T> = Result<T, String>;

fn core<T>(r: qcpo_core::Result<T>) -> EResult<T> {
    r.map_err(|e| e.to_string())
}

#[derive(Default)]
struct Env {
    sets: HashMap<String, QuantumSet>,
    rels: HashMap<String, QRelation>,
    states: HashMap<String, DensityState>,
}

/// Runs the statements in order, stopping at the first semantic error.
pub fn evaluate(script: &Script) -> Report {
    let mut env = Env::default();
    let mut report = Report::default();
    for st in &script.statements {
        match env.statement(&st.kind) {
            Ok(outcome) => report.entries.push(Entry {
                span: st.span,
                source: st.kind.to_string(),
                outcome,
            }),
            Err(message) => {
                report.error = Some(Diagnostic::new(st.span, message));
                break;
            }
        }
    }
    report
}

impl Env {
    fn statement(&mut self, kind: &StmtKind) -> EResult<Outcome> {
        match kind {
            StmtKind::Set { name, expr } => {
                let set = self.set(expr, Some(name))?;
                self.sets.insert(name.clone(), set.clone());
                Ok(Outcome::Defined(Value::Set(set)))
            }
            StmtKind::Rel {
                kind,
                name,
                dom,
                cod,
                expr,
            } => {
                let dom = self.set(dom, None)?;
                let cod = self.set(cod, None)?;
                let rel = self.rel(expr, Some((&dom, &cod)))?;
                if *kind == DeclKind::Fun && !core(rel.is_function())? {
                    return Err(format!("`{name}` is not a function"));
                }
                self.rels.insert(name.clone(), rel.clone());
                Ok(Outcome::Defined(Value::Rel(rel)))
            }
            StmtKind::State {
                name,
                space,
                blocks,
            } => {
                let space = self.set(space, None)?;
                let mut mats: Vec<ComplexMatrix> = (0..space.len())
                    .map(|i| ComplexMatrix::zeros(space.dim(i), space.dim(i)))
                    .collect();
                let mut given = vec![false; space.len()];
                for (atom, m) in blocks {
                    let i = atom_index(&space, atom)?;
                    if std::mem::replace(&mut given[i], true) {
                        return Err(format!("atom {atom} is given twice"));
                    }
                    let m = matrix(m)?;
                    let d = space.dim(i);
                    if m.nrows() != d || m.ncols() != d {
                        return Err(format!(
                            "block for atom {atom} must be {d}x{d}, found {}x{}",
                            m.nrows(),
                            m.ncols()
                        ));
                    }
                    mats[i] = m;
                }
                let state = core(DensityState::new(space, mats))?;
                self.states.insert(name.clone(), state.clone());
                Ok(Outcome::Defined(Value::State(state)))
            }
            StmtKind::Check { mode, check } => {
                let (passed, detail) = self.check(check)?;
                Ok(Outcome::Check {
                    mode: *mode,
                    passed,
                    detail,
                })
            }
            StmtKind::Push { state, fun, result } => {
                let m = &self.states[state];
                let f = self.function(&self.rels[fun], fun)?;
                let out = core(pushforward(m, &f))?;
                self.states.insert(result.clone(), out.clone());
                Ok(Outcome::Defined(Value::State(out)))
            }
            StmtKind::Lift { name, order } => {
                let p = self.poset(order)?;
                let lifted = lift_object(&p).base().order().clone();
                self.rels.insert(name.clone(), lifted.clone());
                Ok(Outcome::Defined(Value::Rel(lifted)))
            }
            StmtKind::Qft { name, qubits } => {
                let f = qft_function(*qubits as usize).into_relation();
                self.rels.insert(name.clone(), f.clone());
                Ok(Outcome::Defined(Value::Rel(f)))
            }
            StmtKind::Print { name } => {
                let found: Vec<Value> = [
                    self.states.get(name).cloned().map(Value::State),
                    self.rels.get(name).cloned().map(Value::Rel),
                    self.sets.get(name).cloned().map(Value::Set),
                ]
                .into_iter()
                .flatten()
                .collect();
                match <[Value; 1]>::try_from(found) {
                    Ok([v]) => Ok(Outcome::Printed(v)),
                    Err(_) => Err(format!("`{name}` names values of several kinds")),
                }
            }
        }
    }

    /// `name` labels a bare `atom d` declared as a set; nested atoms are `H{d}`.
    fn set(&self, e: &SetExpr, name: Option<&str>) -> EResult<QuantumSet> {
        Ok(match e {
            SetExpr::Name(n) => self.sets[n].clone(),
            SetExpr::Atom(0) => return Err("atoms have dimension at least 1".into()),
            SetExpr::Atom(d) => match name {
                Some(n) => QuantumSet::atomic(n, *d as usize),
                None => QuantumSet::atomic(format!("H{d}"), *d as usize),
            },
            SetExpr::Classical(elems) => {
                let labels: Vec<String> = elems.iter().map(AtomRef::label).collect();
                core(embed_classical_set(&labels))?
            }
            SetExpr::Product(a, b) => self.set(a, None)?.product(&self.set(b, None)?),
            SetExpr::Sum(a, b) => self.set(a, None)?.coproduct(&self.set(b, None)?),
            SetExpr::Lift(a) => lift_set(&self.set(a, None)?),
            SetExpr::List(n) => list_quantum_set(*n as usize),
        })
    }

    fn rel(&self, e: &RelExpr, expected: Option<(&QuantumSet, &QuantumSet)>) -> EResult<QRelation> {
        let r = match e {
            RelExpr::Name(n) => self.rels[n].clone(),
            RelExpr::Span { matrices, from, to } => {
                let Some((dom, cod)) = expected else {
                    return Err("`span` needs a known type; use it directly in a declaration or under /\\, \\/ and dagger".into());
                };
                let i = atom_index(dom, from)?;
                let j = atom_index(cod, to)?;
                let mats = matrices.iter().map(matrix).collect::<EResult<Vec<_>>>()?;
                for m in &mats {
                    if m.nrows() != cod.dim(j) || m.ncols() != dom.dim(i) {
                        return Err(format!(
                            "maps from {from} to {to} are {}x{} matrices, found {}x{}",
                            cod.dim(j),
                            dom.dim(i),
                            m.nrows(),
                            m.ncols()
                        ));
                    }
                }
                let space = core(OperatorSubspace::orthonormalize(
                    &mats,
                    dom.dim(i),
                    cod.dim(j),
                ))?;
                core(QRelation::from_blocks(dom, cod, [((i, j), space)]))?
            }
            RelExpr::Id(s) => QRelation::identity(&self.set(s, None)?),
            RelExpr::Top(a, b) => QRelation::top(&self.set(a, None)?, &self.set(b, None)?),
            RelExpr::Bot(a, b) => QRelation::bottom(&self.set(a, None)?, &self.set(b, None)?),
            RelExpr::Channel(matrices) => {
                let mats = matrices.iter().map(matrix).collect::<EResult<Vec<_>>>()?;
                let d = mats[0].nrows();
                let channel = core(KrausChannel::new(d, mats))?;
                core(order_from_channel(&channel))?
            }
            RelExpr::Dagger(a) => self.rel(a, expected.map(|(d, c)| (c, d)))?.dagger(),
            RelExpr::Compose(a, b) => {
                let r = self.rel(a, None)?;
                let s = self.rel(b, None)?;
                core(r.compose(&s))?
            }
            RelExpr::Meet(a, b) | RelExpr::Join(a, b) => {
                let r = self.rel(a, expected)?;
                let s = self.rel(b, Some((r.dom(), r.cod())))?;
                if matches!(e, RelExpr::Meet(..)) {
                    core(r.meet(&s))?
                } else {
                    core(r.join(&s))?
                }
            }
        };
        match expected {
            Some((dom, cod)) if r.dom() != dom || r.cod() != cod => {
                r.relabel(dom, cod).map_err(|_| {
                    format!(
                        "expression has type {} -> {}, expected {} -> {}",
                        r.dom(),
                        r.cod(),
                        dom,
                        cod
                    )
                })
            }
            _ => Ok(r),
        }
    }

    fn function(&self, r: &QRelation, what: &str) -> EResult<QFunction> {
        QFunction::new(r.clone()).map_err(|_| format!("`{what}` is not a function"))
    }

    fn fun_expr(&self, e: &RelExpr) -> EResult<QFunction> {
        self.function(&self.rel(e, None)?, &e.to_string())
    }

    fn poset(&self, name: &str) -> EResult<QPoset> {
        QPoset::new(self.rels[name].clone()).map_err(|e| format!("`{name}` is not an order: {e}"))
    }

    fn pointed(&self, name: &str) -> EResult<PointedQPoset> {
        PointedQPoset::new(self.poset(name)?).map_err(|e| format!("`{name}` is not pointed: {e}"))
    }

    fn chain(&self, order: &QPoset, steps: &[String]) -> EResult<Chain> {
        let steps = steps
            .iter()
            .map(|k| self.function(&self.rels[k], k))
            .collect::<EResult<Vec<_>>>()?;
        core(Chain::new(order.clone(), steps))
    }

    fn check(&self, check: &Check) -> EResult<(bool, Option<String>)> {
        let rel = |e: &RelExpr| self.rel(e, None);
        Ok(match check {
            Check::Poset { order, on } => {
                let r = rel(order)?;
                if let Some(s) = on {
                    let s = self.set(s, None)?;
                    if r.dom() != &s || r.cod() != &s {
                        return Err(format!(
                            "relation is on {} -> {}, not on {s}",
                            r.dom(),
                            r.cod()
                        ));
                    }
                }
                if !r.is_endo() {
                    return Err("an order must be an endo-relation".into());
                }
                let ax = core(check_order_axioms(r.dom(), &r))?;
                (
                    ax.all(),
                    Some(format!(
                        "reflexive={} transitive={} antisymmetric={}",
                        ax.reflexive, ax.transitive, ax.antisymmetric
                    )),
                )
            }
            Check::Function(e) => (core(rel(e)?.is_function())?, None),
            Check::Surjective(e) => (core(rel(e)?.is_surjective())?, None),
            Check::Injective(e) => (core(rel(e)?.is_injective())?, None),
            Check::Leq(a, b) | Check::Eq(a, b) | Check::Orthogonal(a, b) => {
                let r = rel(a)?;
                let s = self.rel(b, Some((r.dom(), r.cod())))?;
                let v = match check {
                    Check::Leq(..) => r.leq(&s),
                    Check::Eq(..) => r.approx_eq(&s),
                    _ => r.is_orthogonal(&s),
                };
                (core(v)?, None)
            }
            Check::Monotone {
                fun,
                source,
                target,
            } => {
                let f = self.fun_expr(fun)?;
                (
                    core(is_monotone(&f, &self.poset(source)?, &self.poset(target)?))?,
                    None,
                )
            }
            Check::Strict {
                fun,
                source,
                target,
            } => {
                let f = self.fun_expr(fun)?;
                (
                    core(is_strict(
                        &f,
                        &self.pointed(source)?,
                        &self.pointed(target)?,
                    ))?,
                    None,
                )
            }
            Check::Below {
                lower,
                upper,
                order,
            } => {
                let f = self.fun_expr(lower)?;
                let g = self.fun_expr(upper)?;
                (core(hom_leq(&f, &g, &self.poset(order)?))?, None)
            }
            Check::Scott {
                fun,
                source,
                target,
                chain,
                limit,
            } => {
                let f = self.fun_expr(fun)?;
                let chain = self.chain(&self.poset(source)?, chain)?;
                let limit = self.function(&self.rels[limit], limit)?;
                let target = self.poset(target)?;
                (
                    core(check_scott_continuity_on_chain(&f, &chain, &limit, &target))?,
                    None,
                )
            }
            Check::Limit {
                limit,
                chain,
                order,
            } => {
                let chain = self.chain(&self.poset(order)?, chain)?;
                let limit = self.function(&self.rels[limit], limit)?;
                (core(verify_limit(&chain, &limit))?, None)
            }
            Check::Pointed(name) => {
                let p = self.poset(name)?;
                let labels = |ix: &[usize]| {
                    ix.iter()
                        .map(|&i| p.carrier().label(i).to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                match is_pointed(&p) {
                    Pointedness::Pointed(b) => (true, Some(format!("bottom {}", labels(&[b])))),
                    Pointedness::NoCandidate => (false, Some("no bottom atom".into())),
                    Pointedness::Multiple(c) => {
                        (false, Some(format!("several candidates: {}", labels(&c))))
                    }
                }
            }
        })
    }
}

fn atom_index(set: &QuantumSet, atom: &AtomRef) -> EResult<usize> {
    set.index_of(&atom.label())
        .ok_or_else(|| format!("no atom {atom} in {set}"))
}

fn scalar(s: &Scalar) -> EResult<Complex64> {
    let real = |text: &str| {
        text.parse::<f64>()
            .map_err(|_| format!("bad number `{text}`"))
    };
    let v = match s {
        Scalar::Real(t) => Complex64::new(real(t)?, 0.0),
        Scalar::Imag(None) => Complex64::i(),
        Scalar::Imag(Some(t)) => Complex64::new(0.0, real(t)?),
        Scalar::Pi => Complex64::new(std::f64::consts::PI, 0.0),
        Scalar::Sqrt(a) => scalar(a)?.sqrt(),
        Scalar::Neg(a) => -scalar(a)?,
        Scalar::Add(a, b) => scalar(a)? + scalar(b)?,
        Scalar::Sub(a, b) => scalar(a)? - scalar(b)?,
        Scalar::Mul(a, b) => scalar(a)? * scalar(b)?,
        Scalar::Div(a, b) => {
            let d = scalar(b)?;
            if d == Complex64::new(0.0, 0.0) {
                return Err("division by zero".into());
            }
            scalar(a)? / d
        }
    };
    if v.re.is_finite() && v.im.is_finite() {
        Ok(v)
    } else {
        Err("number is not finite".into())
    }
}

fn matrix(m: &Matrix) -> EResult<ComplexMatrix> {
    let rows = m.len();
    let cols = m[0].len();
    let mut out = ComplexMatrix::zeros(rows, cols);
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[(i, j)] = scalar(x)?;
        }
    }
    Ok(out)
}
