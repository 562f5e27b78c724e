//! Recursive-descent parser for the script language, followed by a scope
//! pass (declared-before-use, no redefinition within a namespace).
//!
//! ```text
//! script    := { [stmt] NEWLINE }
//! stmt      := "set" NAME "=" setexpr
//!            | ("rel" | "fun") NAME ":" setexpr "->" setexpr "=" relexpr
//!            | "state" NAME "on" setexpr "=" "{" [atom ":" matrix {"," atom ":" matrix}] "}"
//!            | ("check" | "assert") check
//!            | "push" NAME "along" NAME "as" NAME
//!            | "lift" NAME "=" NAME
//!            | "qft" NAME "=" INT
//!            | "print" NAME
//! setexpr   := prod {"+" prod}
//! prod      := setatom {"*" setatom}
//! setatom   := NAME | "atom" INT | "list" INT | "lift" setatom
//!            | "classical" "{" [atom {"," atom}] "}" | "(" setexpr ")"
//! relexpr   := lattice {";" lattice}
//! lattice   := unary {("/\" | "\/") unary}
//! unary     := "dagger" unary | relatom
//! relatom   := NAME | "id" setatom | "top" setatom setatom | "bot" setatom setatom
//!            | "span" "[" matrix {"," matrix} "]" "from" atom "to" atom
//!            | "channel" "[" matrix {"," matrix} "]" | "(" relexpr ")"
//! atom      := NAME | ["-"] INT | STRING
//! matrix    := "[" row {"," row} "]"      row := "[" scalar {"," scalar} "]"
//! scalar    := term {("+" | "-") term}
//! term      := factor {("*" | "/") factor}
//! factor    := "-" factor | NUMBER | IMAG | "i" | "pi" | "sqrt" "(" scalar ")" | "(" scalar ")"
//! ```

use std::collections::HashSet;

use crate::ast::*;
use crate::diagnostic::Diagnostic;
use crate::lexer::{tokenize, Tok, Token};

const KEYWORDS: &[&str] = &[
    "set",
    "rel",
    "fun",
    "state",
    "check",
    "assert",
    "push",
    "lift",
    "qft",
    "print",
    "on",
    "along",
    "as",
    "atom",
    "list",
    "classical",
    "id",
    "top",
    "bot",
    "span",
    "from",
    "to",
    "channel",
    "dagger",
    "chain",
    "limit",
    "in",
    "poset",
    "function",
    "surjective",
    "injective",
    "leq",
    "eq",
    "orthogonal",
    "monotone",
    "below",
    "scott",
    "pointed",
    "strict",
    "i",
    "pi",
    "sqrt",
];

pub fn parse(source: &str) -> Result<Script, Diagnostic> {
    let tokens = tokenize(source)?;
    let script = Parser { tokens, pos: 0 }.script()?;
    check_scopes(&script)?;
    Ok(script)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

type PResult<T> = Result<T, Diagnostic>;

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if t.tok != Tok::Eof {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, expected: &str) -> PResult<T> {
        let t = self.peek();
        Err(Diagnostic::new(
            t.span,
            format!("expected {expected}, found {}", t.tok.describe()),
        ))
    }

    fn at(&self, tok: &Tok) -> bool {
        &self.peek().tok == tok
    }

    fn at_kw(&self, kw: &str) -> bool {
        matches!(&self.peek().tok, Tok::Ident(s) if s == kw)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.at(tok) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok) -> PResult<()> {
        if self.eat(&tok) {
            Ok(())
        } else {
            self.error(&tok.describe())
        }
    }

    fn expect_kw(&mut self, kw: &str) -> PResult<()> {
        if self.at_kw(kw) {
            self.bump();
            Ok(())
        } else {
            self.error(&format!("`{kw}`"))
        }
    }

    fn name(&mut self) -> PResult<String> {
        match &self.peek().tok {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            _ => self.error("a name"),
        }
    }

    fn int(&mut self) -> PResult<u32> {
        match &self.peek().tok {
            Tok::Number(s) => match s.parse::<u32>() {
                Ok(n) => {
                    self.bump();
                    Ok(n)
                }
                Err(_) => self.error("a non-negative integer"),
            },
            _ => self.error("a non-negative integer"),
        }
    }

    fn script(mut self) -> PResult<Script> {
        let mut statements = Vec::new();
        loop {
            while self.eat(&Tok::Newline) {}
            if self.at(&Tok::Eof) {
                break;
            }
            statements.push(self.statement()?);
            if !self.at(&Tok::Eof) {
                self.expect(Tok::Newline)?;
            }
        }
        Ok(Script { statements })
    }

    fn statement(&mut self) -> PResult<Statement> {
        let span = self.peek().span;
        let kw = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.error("a statement"),
        };
        self.bump();
        let kind = match kw.as_str() {
            "set" => {
                let name = self.name()?;
                self.expect(Tok::Eq)?;
                StmtKind::Set {
                    name,
                    expr: self.set_expr()?,
                }
            }
            "rel" | "fun" => {
                let name = self.name()?;
                self.expect(Tok::Colon)?;
                let dom = self.set_expr()?;
                self.expect(Tok::Arrow)?;
                let cod = self.set_expr()?;
                self.expect(Tok::Eq)?;
                StmtKind::Rel {
                    kind: if kw == "rel" {
                        DeclKind::Rel
                    } else {
                        DeclKind::Fun
                    },
                    name,
                    dom,
                    cod,
                    expr: self.rel_expr()?,
                }
            }
            "state" => {
                let name = self.name()?;
                self.expect_kw("on")?;
                let space = self.set_expr()?;
                self.expect(Tok::Eq)?;
                self.expect(Tok::LBrace)?;
                let mut blocks = Vec::new();
                if !self.at(&Tok::RBrace) {
                    loop {
                        let atom = self.atom_ref()?;
                        self.expect(Tok::Colon)?;
                        blocks.push((atom, self.matrix()?));
                        if !self.eat(&Tok::Comma) {
                            break;
                        }
                    }
                }
                self.expect(Tok::RBrace)?;
                StmtKind::State {
                    name,
                    space,
                    blocks,
                }
            }
            "check" | "assert" => StmtKind::Check {
                mode: if kw == "check" {
                    Mode::Check
                } else {
                    Mode::Assert
                },
                check: self.check()?,
            },
            "push" => {
                let state = self.name()?;
                self.expect_kw("along")?;
                let fun = self.name()?;
                self.expect_kw("as")?;
                StmtKind::Push {
                    state,
                    fun,
                    result: self.name()?,
                }
            }
            "lift" => {
                let name = self.name()?;
                self.expect(Tok::Eq)?;
                StmtKind::Lift {
                    name,
                    order: self.name()?,
                }
            }
            "qft" => {
                let name = self.name()?;
                self.expect(Tok::Eq)?;
                StmtKind::Qft {
                    name,
                    qubits: self.int()?,
                }
            }
            "print" => StmtKind::Print { name: self.name()? },
            _ => {
                self.pos -= 1;
                return self.error("a statement keyword");
            }
        };
        Ok(Statement { span, kind })
    }

    fn names(&mut self) -> PResult<Vec<String>> {
        let mut out = vec![self.name()?];
        while self.eat(&Tok::Comma) {
            out.push(self.name()?);
        }
        Ok(out)
    }

    /// `: P -> Q` after a function in monotone/scott/strict checks.
    fn typing(&mut self) -> PResult<(String, String)> {
        self.expect(Tok::Colon)?;
        let source = self.name()?;
        self.expect(Tok::Arrow)?;
        Ok((source, self.name()?))
    }

    fn check(&mut self) -> PResult<Check> {
        let kw = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.error("a check"),
        };
        self.bump();
        Ok(match kw.as_str() {
            "poset" => {
                let order = self.rel_expr()?;
                let on = if self.at_kw("on") {
                    self.bump();
                    Some(self.set_expr()?)
                } else {
                    None
                };
                Check::Poset { order, on }
            }
            "function" => Check::Function(self.rel_expr()?),
            "surjective" => Check::Surjective(self.rel_expr()?),
            "injective" => Check::Injective(self.rel_expr()?),
            "leq" | "eq" | "orthogonal" => {
                let a = self.rel_unary()?;
                let b = self.rel_unary()?;
                match kw.as_str() {
                    "leq" => Check::Leq(a, b),
                    "eq" => Check::Eq(a, b),
                    _ => Check::Orthogonal(a, b),
                }
            }
            "monotone" | "strict" => {
                let fun = self.rel_unary()?;
                let (source, target) = self.typing()?;
                if kw == "monotone" {
                    Check::Monotone {
                        fun,
                        source,
                        target,
                    }
                } else {
                    Check::Strict {
                        fun,
                        source,
                        target,
                    }
                }
            }
            "below" => {
                let lower = self.rel_unary()?;
                let upper = self.rel_unary()?;
                self.expect_kw("in")?;
                Check::Below {
                    lower,
                    upper,
                    order: self.name()?,
                }
            }
            "scott" => {
                let fun = self.rel_unary()?;
                let (source, target) = self.typing()?;
                self.expect_kw("chain")?;
                let chain = self.names()?;
                self.expect_kw("limit")?;
                Check::Scott {
                    fun,
                    source,
                    target,
                    chain,
                    limit: self.name()?,
                }
            }
            "limit" => {
                let limit = self.name()?;
                self.expect_kw("chain")?;
                let chain = self.names()?;
                self.expect_kw("in")?;
                Check::Limit {
                    limit,
                    chain,
                    order: self.name()?,
                }
            }
            "pointed" => Check::Pointed(self.name()?),
            _ => {
                self.pos -= 1;
                return self.error("a check (poset, function, surjective, injective, leq, eq, orthogonal, monotone, below, scott, limit, pointed, strict)");
            }
        })
    }

    fn set_expr(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.set_prod()?;
        while self.eat(&Tok::Plus) {
            lhs = SetExpr::Sum(Box::new(lhs), Box::new(self.set_prod()?));
        }
        Ok(lhs)
    }

    fn set_prod(&mut self) -> PResult<SetExpr> {
        let mut lhs = self.set_atom()?;
        while self.eat(&Tok::Star) {
            lhs = SetExpr::Product(Box::new(lhs), Box::new(self.set_atom()?));
        }
        Ok(lhs)
    }

    fn set_atom(&mut self) -> PResult<SetExpr> {
        if self.eat(&Tok::LParen) {
            let e = self.set_expr()?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        if self.at_kw("atom") {
            self.bump();
            return Ok(SetExpr::Atom(self.int()?));
        }
        if self.at_kw("list") {
            self.bump();
            return Ok(SetExpr::List(self.int()?));
        }
        if self.at_kw("lift") {
            self.bump();
            return Ok(SetExpr::Lift(Box::new(self.set_atom()?)));
        }
        if self.at_kw("classical") {
            self.bump();
            self.expect(Tok::LBrace)?;
            let mut elems = Vec::new();
            if !self.at(&Tok::RBrace) {
                loop {
                    elems.push(self.atom_ref()?);
                    if !self.eat(&Tok::Comma) {
                        break;
                    }
                }
            }
            self.expect(Tok::RBrace)?;
            return Ok(SetExpr::Classical(elems));
        }
        match self.name() {
            Ok(n) => Ok(SetExpr::Name(n)),
            Err(_) => self.error("a set expression"),
        }
    }

    fn atom_ref(&mut self) -> PResult<AtomRef> {
        let negative = self.eat(&Tok::Minus);
        match self.peek().tok.clone() {
            Tok::Number(s) => {
                let parsed = s.parse::<i64>();
                match parsed {
                    Ok(n) => {
                        self.bump();
                        Ok(AtomRef::Int(if negative { -n } else { n }))
                    }
                    Err(_) => self.error("an integer atom label"),
                }
            }
            _ if negative => self.error("an integer after `-`"),
            Tok::Str(s) => {
                self.bump();
                Ok(AtomRef::Quoted(s))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(AtomRef::Ident(s))
            }
            _ => self.error("an atom label"),
        }
    }

    fn rel_expr(&mut self) -> PResult<RelExpr> {
        let mut lhs = self.rel_lattice()?;
        while self.eat(&Tok::Semi) {
            lhs = RelExpr::Compose(Box::new(lhs), Box::new(self.rel_lattice()?));
        }
        Ok(lhs)
    }

    fn rel_lattice(&mut self) -> PResult<RelExpr> {
        let mut lhs = self.rel_unary()?;
        loop {
            if self.eat(&Tok::Meet) {
                lhs = RelExpr::Meet(Box::new(lhs), Box::new(self.rel_unary()?));
            } else if self.eat(&Tok::Join) {
                lhs = RelExpr::Join(Box::new(lhs), Box::new(self.rel_unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn rel_unary(&mut self) -> PResult<RelExpr> {
        if self.at_kw("dagger") {
            self.bump();
            return Ok(RelExpr::Dagger(Box::new(self.rel_unary()?)));
        }
        self.rel_atom()
    }

    fn rel_atom(&mut self) -> PResult<RelExpr> {
        if self.eat(&Tok::LParen) {
            let e = self.rel_expr()?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        let kw = match &self.peek().tok {
            Tok::Ident(s) => s.clone(),
            _ => return self.error("a relation expression"),
        };
        match kw.as_str() {
            "id" => {
                self.bump();
                Ok(RelExpr::Id(self.set_atom()?))
            }
            "top" | "bot" => {
                self.bump();
                let a = self.set_atom()?;
                let b = self.set_atom()?;
                Ok(if kw == "top" {
                    RelExpr::Top(a, b)
                } else {
                    RelExpr::Bot(a, b)
                })
            }
            "span" => {
                self.bump();
                let matrices = self.matrix_list()?;
                self.expect_kw("from")?;
                let from = self.atom_ref()?;
                self.expect_kw("to")?;
                Ok(RelExpr::Span {
                    matrices,
                    from,
                    to: self.atom_ref()?,
                })
            }
            "channel" => {
                self.bump();
                Ok(RelExpr::Channel(self.matrix_list()?))
            }
            _ => match self.name() {
                Ok(n) => Ok(RelExpr::Name(n)),
                Err(_) => self.error("a relation expression"),
            },
        }
    }

    fn matrix_list(&mut self) -> PResult<Vec<Matrix>> {
        self.expect(Tok::LBracket)?;
        let mut out = vec![self.matrix()?];
        while self.eat(&Tok::Comma) {
            out.push(self.matrix()?);
        }
        self.expect(Tok::RBracket)?;
        Ok(out)
    }

    fn matrix(&mut self) -> PResult<Matrix> {
        let start = self.peek().span;
        self.expect(Tok::LBracket)?;
        let mut rows = Vec::new();
        loop {
            self.expect(Tok::LBracket)?;
            let mut row = vec![self.scalar()?];
            while self.eat(&Tok::Comma) {
                row.push(self.scalar()?);
            }
            self.expect(Tok::RBracket)?;
            rows.push(row);
            if !self.eat(&Tok::Comma) {
                break;
            }
        }
        self.expect(Tok::RBracket)?;
        if rows.iter().any(|r| r.len() != rows[0].len()) {
            return Err(Diagnostic::new(start, "matrix rows have different lengths"));
        }
        Ok(rows)
    }

    fn scalar(&mut self) -> PResult<Scalar> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Scalar::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Scalar::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> PResult<Scalar> {
        let mut lhs = self.factor()?;
        loop {
            if self.eat(&Tok::Star) {
                lhs = Scalar::Mul(Box::new(lhs), Box::new(self.factor()?));
            } else if self.eat(&Tok::Slash) {
                lhs = Scalar::Div(Box::new(lhs), Box::new(self.factor()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn factor(&mut self) -> PResult<Scalar> {
        if self.eat(&Tok::Minus) {
            return Ok(Scalar::Neg(Box::new(self.factor()?)));
        }
        if self.eat(&Tok::LParen) {
            let s = self.scalar()?;
            self.expect(Tok::RParen)?;
            return Ok(s);
        }
        match self.peek().tok.clone() {
            Tok::Number(s) => {
                self.bump();
                Ok(Scalar::Real(s))
            }
            Tok::Imag(s) => {
                self.bump();
                Ok(Scalar::Imag(Some(s)))
            }
            Tok::Ident(s) if s == "i" => {
                self.bump();
                Ok(Scalar::Imag(None))
            }
            Tok::Ident(s) if s == "pi" => {
                self.bump();
                Ok(Scalar::Pi)
            }
            Tok::Ident(s) if s == "sqrt" => {
                self.bump();
                self.expect(Tok::LParen)?;
                let inner = self.scalar()?;
                self.expect(Tok::RParen)?;
                Ok(Scalar::Sqrt(Box::new(inner)))
            }
            _ => self.error("a number"),
        }
    }
}

#[derive(Default)]
struct Scopes {
    sets: HashSet<String>,
    rels: HashSet<String>,
    states: HashSet<String>,
}

fn check_scopes(script: &Script) -> Result<(), Diagnostic> {
    let mut sc = Scopes::default();
    for st in &script.statements {
        let span = st.span;
        let need = |set: &HashSet<String>, name: &str, what: &str| {
            if set.contains(name) {
                Ok(())
            } else {
                Err(Diagnostic::new(span, format!("unknown {what} `{name}`")))
            }
        };
        let declare = |set: &mut HashSet<String>, name: &str, what: &str| {
            if set.insert(name.to_string()) {
                Ok(())
            } else {
                Err(Diagnostic::new(
                    span,
                    format!("{what} `{name}` is already defined"),
                ))
            }
        };
        match &st.kind {
            StmtKind::Set { name, expr } => {
                set_names(expr, &sc, span)?;
                declare(&mut sc.sets, name, "set")?;
            }
            StmtKind::Rel {
                name,
                dom,
                cod,
                expr,
                ..
            } => {
                set_names(dom, &sc, span)?;
                set_names(cod, &sc, span)?;
                rel_names(expr, &sc, span)?;
                declare(&mut sc.rels, name, "relation")?;
            }
            StmtKind::State { name, space, .. } => {
                set_names(space, &sc, span)?;
                declare(&mut sc.states, name, "state")?;
            }
            StmtKind::Check { check, .. } => {
                let rel = |e: &RelExpr| rel_names(e, &sc, span);
                match check {
                    Check::Poset { order, on } => {
                        rel(order)?;
                        if let Some(s) = on {
                            set_names(s, &sc, span)?;
                        }
                    }
                    Check::Function(e) | Check::Surjective(e) | Check::Injective(e) => rel(e)?,
                    Check::Leq(a, b) | Check::Eq(a, b) | Check::Orthogonal(a, b) => {
                        rel(a)?;
                        rel(b)?;
                    }
                    Check::Monotone {
                        fun,
                        source,
                        target,
                    }
                    | Check::Strict {
                        fun,
                        source,
                        target,
                    } => {
                        rel(fun)?;
                        need(&sc.rels, source, "relation")?;
                        need(&sc.rels, target, "relation")?;
                    }
                    Check::Below {
                        lower,
                        upper,
                        order,
                    } => {
                        rel(lower)?;
                        rel(upper)?;
                        need(&sc.rels, order, "relation")?;
                    }
                    Check::Scott {
                        fun,
                        source,
                        target,
                        chain,
                        limit,
                    } => {
                        rel(fun)?;
                        for n in chain.iter().chain([source, target, limit]) {
                            need(&sc.rels, n, "relation")?;
                        }
                    }
                    Check::Limit {
                        limit,
                        chain,
                        order,
                    } => {
                        for n in chain.iter().chain([limit, order]) {
                            need(&sc.rels, n, "relation")?;
                        }
                    }
                    Check::Pointed(p) => need(&sc.rels, p, "relation")?,
                }
            }
            StmtKind::Push { state, fun, result } => {
                need(&sc.states, state, "state")?;
                need(&sc.rels, fun, "relation")?;
                declare(&mut sc.states, result, "state")?;
            }
            StmtKind::Lift { name, order } => {
                need(&sc.rels, order, "relation")?;
                declare(&mut sc.rels, name, "relation")?;
            }
            StmtKind::Qft { name, .. } => declare(&mut sc.rels, name, "relation")?,
            StmtKind::Print { name } => {
                if !(sc.sets.contains(name) || sc.rels.contains(name) || sc.states.contains(name)) {
                    return Err(Diagnostic::new(span, format!("unknown name `{name}`")));
                }
            }
        }
    }
    Ok(())
}

fn set_names(e: &SetExpr, sc: &Scopes, span: Span) -> Result<(), Diagnostic> {
    match e {
        SetExpr::Name(n) if !sc.sets.contains(n) => {
            Err(Diagnostic::new(span, format!("unknown set `{n}`")))
        }
        SetExpr::Product(a, b) | SetExpr::Sum(a, b) => {
            set_names(a, sc, span)?;
            set_names(b, sc, span)
        }
        SetExpr::Lift(a) => set_names(a, sc, span),
        _ => Ok(()),
    }
}

fn rel_names(e: &RelExpr, sc: &Scopes, span: Span) -> Result<(), Diagnostic> {
    match e {
        RelExpr::Name(n) if !sc.rels.contains(n) => {
            Err(Diagnostic::new(span, format!("unknown relation `{n}`")))
        }
        RelExpr::Id(s) => set_names(s, sc, span),
        RelExpr::Top(a, b) | RelExpr::Bot(a, b) => {
            set_names(a, sc, span)?;
            set_names(b, sc, span)
        }
        RelExpr::Dagger(a) => rel_names(a, sc, span),
        RelExpr::Compose(a, b) | RelExpr::Meet(a, b) | RelExpr::Join(a, b) => {
            rel_names(a, sc, span)?;
            rel_names(b, sc, span)
        }
        _ => Ok(()),
    }
}
