//! Syntax tree of the script language.
//!
//! Source positions are kept per statement only; expressions carry none, so
//! that pretty-printing and re-parsing gives back an equal tree.

use std::fmt;

/// 1-based line and column (in characters).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Script {
    pub statements: Vec<Statement>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Statement {
    pub span: Span,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeclKind {
    Rel,
    Fun,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Check,
    Assert,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtKind {
    Set {
        name: String,
        expr: SetExpr,
    },
    Rel {
        kind: DeclKind,
        name: String,
        dom: SetExpr,
        cod: SetExpr,
        expr: RelExpr,
    },
    State {
        name: String,
        space: SetExpr,
        blocks: Vec<(AtomRef, Matrix)>,
    },
    Check {
        mode: Mode,
        check: Check,
    },
    Push {
        state: String,
        fun: String,
        result: String,
    },
    /// `lift L = P`: `L` is the lifted order of the order `P`.
    Lift {
        name: String,
        order: String,
    },
    /// `qft F = n`: the transform on the list type truncated after `n` qubits.
    Qft {
        name: String,
        qubits: u32,
    },
    Print {
        name: String,
    },
}

/// An atom label in source: a bare identifier, a signed integer, or a quoted
/// string for anything else (for instance `"(H2,H2)"`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AtomRef {
    Ident(String),
    Int(i64),
    Quoted(String),
}

impl AtomRef {
    pub fn label(&self) -> String {
        match self {
            AtomRef::Ident(s) | AtomRef::Quoted(s) => s.clone(),
            AtomRef::Int(n) => n.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SetExpr {
    Name(String),
    Atom(u32),
    Classical(Vec<AtomRef>),
    Product(Box<SetExpr>, Box<SetExpr>),
    Sum(Box<SetExpr>, Box<SetExpr>),
    Lift(Box<SetExpr>),
    List(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub enum RelExpr {
    Name(String),
    Span {
        matrices: Vec<Matrix>,
        from: AtomRef,
        to: AtomRef,
    },
    Id(SetExpr),
    Top(SetExpr, SetExpr),
    Bot(SetExpr, SetExpr),
    /// Information order generated by a channel's Kraus operators.
    Channel(Vec<Matrix>),
    Dagger(Box<RelExpr>),
    /// Diagrammatic: `R ; S` is `R` then `S`.
    Compose(Box<RelExpr>, Box<RelExpr>),
    Meet(Box<RelExpr>, Box<RelExpr>),
    Join(Box<RelExpr>, Box<RelExpr>),
}

pub type Matrix = Vec<Vec<Scalar>>;

#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    /// A decimal literal, kept as written.
    Real(String),
    /// `2.5i`, or `i` alone (coefficient `None`).
    Imag(Option<String>),
    Pi,
    Sqrt(Box<Scalar>),
    Neg(Box<Scalar>),
    Add(Box<Scalar>, Box<Scalar>),
    Sub(Box<Scalar>, Box<Scalar>),
    Mul(Box<Scalar>, Box<Scalar>),
    Div(Box<Scalar>, Box<Scalar>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Check {
    Poset {
        order: RelExpr,
        on: Option<SetExpr>,
    },
    Function(RelExpr),
    Surjective(RelExpr),
    Injective(RelExpr),
    Leq(RelExpr, RelExpr),
    Eq(RelExpr, RelExpr),
    Orthogonal(RelExpr, RelExpr),
    Monotone {
        fun: RelExpr,
        source: String,
        target: String,
    },
    /// `F ⊑ G` in the hom order of the poset `order`.
    Below {
        lower: RelExpr,
        upper: RelExpr,
        order: String,
    },
    Scott {
        fun: RelExpr,
        source: String,
        target: String,
        chain: Vec<String>,
        limit: String,
    },
    Limit {
        limit: String,
        chain: Vec<String>,
        order: String,
    },
    Pointed(String),
    Strict {
        fun: RelExpr,
        source: String,
        target: String,
    },
}
