//! Canonical source text for syntax trees. Parsing the output gives back the
//! same statements (positions aside).

use std::fmt::{self, Display, Formatter, Write};

use crate::ast::*;

impl Display for Script {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for st in &self.statements {
            writeln!(f, "{}", st.kind)?;
        }
        Ok(())
    }
}

impl Display for Statement {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        self.kind.fmt(f)
    }
}

impl Display for StmtKind {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            StmtKind::Set { name, expr } => write!(f, "set {name} = {expr}"),
            StmtKind::Rel {
                kind,
                name,
                dom,
                cod,
                expr,
            } => {
                let kw = match kind {
                    DeclKind::Rel => "rel",
                    DeclKind::Fun => "fun",
                };
                write!(f, "{kw} {name} : {dom} -> {cod} = {expr}")
            }
            StmtKind::State {
                name,
                space,
                blocks,
            } => {
                write!(f, "state {name} on {space} = {{")?;
                for (k, (atom, m)) in blocks.iter().enumerate() {
                    let sep = if k == 0 { " " } else { ", " };
                    write!(f, "{sep}{atom}: {}", MatrixText(m))?;
                }
                if blocks.is_empty() {
                    write!(f, "}}")
                } else {
                    write!(f, " }}")
                }
            }
            StmtKind::Check { mode, check } => {
                let kw = match mode {
                    Mode::Check => "check",
                    Mode::Assert => "assert",
                };
                write!(f, "{kw} {check}")
            }
            StmtKind::Push { state, fun, result } => {
                write!(f, "push {state} along {fun} as {result}")
            }
            StmtKind::Lift { name, order } => write!(f, "lift {name} = {order}"),
            StmtKind::Qft { name, qubits } => write!(f, "qft {name} = {qubits}"),
            StmtKind::Print { name } => write!(f, "print {name}"),
        }
    }
}

impl Display for Check {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let u = |e: &RelExpr| Prec(e, RelLevel::Unary).to_string();
        match self {
            Check::Poset { order, on } => {
                write!(f, "poset {order}")?;
                if let Some(s) = on {
                    write!(f, " on {s}")?;
                }
                Ok(())
            }
            Check::Function(e) => write!(f, "function {e}"),
            Check::Surjective(e) => write!(f, "surjective {e}"),
            Check::Injective(e) => write!(f, "injective {e}"),
            Check::Leq(a, b) => write!(f, "leq {} {}", u(a), u(b)),
            Check::Eq(a, b) => write!(f, "eq {} {}", u(a), u(b)),
            Check::Orthogonal(a, b) => write!(f, "orthogonal {} {}", u(a), u(b)),
            Check::Monotone {
                fun,
                source,
                target,
            } => write!(f, "monotone {} : {source} -> {target}", u(fun)),
            Check::Strict {
                fun,
                source,
                target,
            } => write!(f, "strict {} : {source} -> {target}", u(fun)),
            Check::Below {
                lower,
                upper,
                order,
            } => write!(f, "below {} {} in {order}", u(lower), u(upper)),
            Check::Scott {
                fun,
                source,
                target,
                chain,
                limit,
            } => write!(
                f,
                "scott {} : {source} -> {target} chain {} limit {limit}",
                u(fun),
                chain.join(", ")
            ),
            Check::Limit {
                limit,
                chain,
                order,
            } => write!(f, "limit {limit} chain {} in {order}", chain.join(", ")),
            Check::Pointed(p) => write!(f, "pointed {p}"),
        }
    }
}

impl Display for AtomRef {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            AtomRef::Ident(s) => f.write_str(s),
            AtomRef::Int(n) => write!(f, "{n}"),
            AtomRef::Quoted(s) => write!(f, "\"{s}\""),
        }
    }
}

// Set expressions: sum < product < atom.
fn set_level(e: &SetExpr) -> u8 {
    match e {
        SetExpr::Sum(..) => 0,
        SetExpr::Product(..) => 1,
        _ => 2,
    }
}

fn write_set(f: &mut Formatter<'_>, e: &SetExpr, min: u8) -> fmt::Result {
    if set_level(e) < min {
        f.write_char('(')?;
        write_set(f, e, 0)?;
        return f.write_char(')');
    }
    match e {
        SetExpr::Name(n) => f.write_str(n),
        SetExpr::Atom(d) => write!(f, "atom {d}"),
        SetExpr::List(n) => write!(f, "list {n}"),
        SetExpr::Lift(a) => {
            f.write_str("lift ")?;
            write_set(f, a, 2)
        }
        SetExpr::Classical(elems) => {
            f.write_str("classical {")?;
            for (k, a) in elems.iter().enumerate() {
                if k > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_char('}')
        }
        SetExpr::Sum(a, b) => {
            write_set(f, a, 0)?;
            f.write_str(" + ")?;
            write_set(f, b, 1)
        }
        SetExpr::Product(a, b) => {
            write_set(f, a, 1)?;
            f.write_str(" * ")?;
            write_set(f, b, 2)
        }
    }
}

struct SetPrec<'a>(&'a SetExpr, u8);

impl Display for SetPrec<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_set(f, self.0, self.1)
    }
}

impl Display for SetExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_set(f, self, 0)
    }
}

#[derive(Clone, Copy, PartialEq, PartialOrd)]
enum RelLevel {
    Compose,
    Lattice,
    Unary,
    Atom,
}

fn rel_level(e: &RelExpr) -> RelLevel {
    match e {
        RelExpr::Compose(..) => RelLevel::Compose,
        RelExpr::Meet(..) | RelExpr::Join(..) => RelLevel::Lattice,
        RelExpr::Dagger(..) => RelLevel::Unary,
        _ => RelLevel::Atom,
    }
}

struct Prec<'a>(&'a RelExpr, RelLevel);

impl Display for Prec<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let Prec(e, min) = *self;
        if rel_level(e) < min {
            return write!(f, "({})", Prec(e, RelLevel::Compose));
        }
        let set_atom = |s| SetPrec(s, 2);
        match e {
            RelExpr::Name(n) => f.write_str(n),
            RelExpr::Span { matrices, from, to } => {
                write!(f, "span {} from {from} to {to}", MatrixList(matrices))
            }
            RelExpr::Channel(matrices) => write!(f, "channel {}", MatrixList(matrices)),
            RelExpr::Id(s) => write!(f, "id {}", set_atom(s)),
            RelExpr::Top(a, b) => write!(f, "top {} {}", set_atom(a), set_atom(b)),
            RelExpr::Bot(a, b) => write!(f, "bot {} {}", set_atom(a), set_atom(b)),
            RelExpr::Dagger(a) => write!(f, "dagger {}", Prec(a, RelLevel::Unary)),
            RelExpr::Compose(a, b) => write!(
                f,
                "{} ; {}",
                Prec(a, RelLevel::Compose),
                Prec(b, RelLevel::Lattice)
            ),
            RelExpr::Meet(a, b) => write!(
                f,
                "{} /\\ {}",
                Prec(a, RelLevel::Lattice),
                Prec(b, RelLevel::Unary)
            ),
            RelExpr::Join(a, b) => write!(
                f,
                "{} \\/ {}",
                Prec(a, RelLevel::Lattice),
                Prec(b, RelLevel::Unary)
            ),
        }
    }
}

impl Display for RelExpr {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        Prec(self, RelLevel::Compose).fmt(f)
    }
}

struct MatrixList<'a>(&'a [Matrix]);

impl Display for MatrixList<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_char('[')?;
        for (k, m) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            MatrixText(m).fmt(f)?;
        }
        f.write_char(']')
    }
}

pub struct MatrixText<'a>(pub &'a Matrix);

impl Display for MatrixText<'_> {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_char('[')?;
        for (r, row) in self.0.iter().enumerate() {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_char('[')?;
            for (c, x) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_char(']')?;
        }
        f.write_char(']')
    }
}

// Scalars: sum < product < factor.
fn scalar_level(s: &Scalar) -> u8 {
    match s {
        Scalar::Add(..) | Scalar::Sub(..) => 0,
        Scalar::Mul(..) | Scalar::Div(..) => 1,
        _ => 2,
    }
}

fn write_scalar(f: &mut Formatter<'_>, s: &Scalar, min: u8) -> fmt::Result {
    if scalar_level(s) < min {
        f.write_char('(')?;
        write_scalar(f, s, 0)?;
        return f.write_char(')');
    }
    match s {
        Scalar::Real(x) => f.write_str(x),
        Scalar::Imag(Some(x)) => write!(f, "{x}i"),
        Scalar::Imag(None) => f.write_char('i'),
        Scalar::Pi => f.write_str("pi"),
        Scalar::Sqrt(a) => {
            f.write_str("sqrt(")?;
            write_scalar(f, a, 0)?;
            f.write_char(')')
        }
        Scalar::Neg(a) => {
            f.write_char('-')?;
            // `--` would open a comment
            if matches!(**a, Scalar::Neg(_)) {
                f.write_char('(')?;
                write_scalar(f, a, 0)?;
                f.write_char(')')
            } else {
                write_scalar(f, a, 2)
            }
        }
        Scalar::Add(a, b) | Scalar::Sub(a, b) => {
            write_scalar(f, a, 0)?;
            f.write_str(if matches!(s, Scalar::Add(..)) {
                " + "
            } else {
                " - "
            })?;
            write_scalar(f, b, 1)
        }
        Scalar::Mul(a, b) | Scalar::Div(a, b) => {
            write_scalar(f, a, 1)?;
            f.write_str(if matches!(s, Scalar::Mul(..)) {
                " * "
            } else {
                " / "
            })?;
            write_scalar(f, b, 2)
        }
    }
}

impl Display for Scalar {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_scalar(f, self, 0)
    }
}
