//! Pretty-printing then parsing gives back the same statements.

use proptest::prelude::*;
use qcpo_cli::ast::*;
use qcpo_cli::eval::evaluate;
use qcpo_cli::parser::parse;

const PRELUDE: &str = "set A = atom 2
set B = classical {u, v}
rel R : A -> A = id A
rel S : A -> A = top A A
state M on A = {}
";

fn kinds(s: &Script) -> Vec<StmtKind> {
    s.statements.iter().map(|st| st.kind.clone()).collect()
}

fn set_name() -> impl Strategy<Value = String> {
    prop_oneof![Just("A".to_string()), Just("B".to_string())]
}

fn rel_name() -> impl Strategy<Value = String> {
    prop_oneof![Just("R".to_string()), Just("S".to_string())]
}

fn atom_ref() -> impl Strategy<Value = AtomRef> {
    prop_oneof![
        "[a-z][a-z0-9_]{0,3}"
            .prop_filter("not a keyword", |s| parse(&format!("set {s} = atom 1"))
                .is_ok())
            .prop_map(AtomRef::Ident),
        (-20i64..20).prop_map(AtomRef::Int),
        "[a-z ]{0,4}".prop_map(AtomRef::Quoted),
    ]
}

fn scalar() -> impl Strategy<Value = Scalar> {
    let number = (0u32..100, proptest::option::of(0u32..1000)).prop_map(|(a, b)| match b {
        Some(b) => format!("{a}.{b}"),
        None => a.to_string(),
    });
    let leaf = prop_oneof![
        number.clone().prop_map(Scalar::Real),
        proptest::option::of(number).prop_map(Scalar::Imag),
        Just(Scalar::Pi),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        let b = |s: Scalar| Box::new(s);
        prop_oneof![
            inner.clone().prop_map(move |a| Scalar::Sqrt(b(a))),
            inner.clone().prop_map(move |a| Scalar::Neg(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Scalar::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Scalar::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| Scalar::Mul(b(x), b(y))),
            (inner.clone(), inner).prop_map(move |(x, y)| Scalar::Div(b(x), b(y))),
        ]
    })
}

fn matrix() -> impl Strategy<Value = Matrix> {
    (1usize..3, 1usize..3).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(scalar(), c), r)
    })
}

fn set_expr() -> impl Strategy<Value = SetExpr> {
    let leaf = prop_oneof![
        set_name().prop_map(SetExpr::Name),
        (1u32..5).prop_map(SetExpr::Atom),
        (0u32..4).prop_map(SetExpr::List),
        proptest::collection::vec(atom_ref(), 0..3).prop_map(SetExpr::Classical),
    ];
    leaf.prop_recursive(3, 10, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| SetExpr::Lift(Box::new(a))),
            (inner.clone(), inner.clone())
                .prop_map(|(a, b)| SetExpr::Product(Box::new(a), Box::new(b))),
            (inner.clone(), inner).prop_map(|(a, b)| SetExpr::Sum(Box::new(a), Box::new(b))),
        ]
    })
}

fn rel_expr() -> impl Strategy<Value = RelExpr> {
    let leaf = prop_oneof![
        rel_name().prop_map(RelExpr::Name),
        set_expr().prop_map(RelExpr::Id),
        (set_expr(), set_expr()).prop_map(|(a, b)| RelExpr::Top(a, b)),
        (set_expr(), set_expr()).prop_map(|(a, b)| RelExpr::Bot(a, b)),
        (
            proptest::collection::vec(matrix(), 1..3),
            atom_ref(),
            atom_ref()
        )
            .prop_map(|(matrices, from, to)| RelExpr::Span { matrices, from, to }),
        proptest::collection::vec(matrix(), 1..3).prop_map(RelExpr::Channel),
    ];
    leaf.prop_recursive(3, 12, 2, |inner| {
        let b = |e: RelExpr| Box::new(e);
        prop_oneof![
            inner.clone().prop_map(move |a| RelExpr::Dagger(b(a))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| RelExpr::Compose(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| RelExpr::Meet(b(x), b(y))),
            (inner.clone(), inner).prop_map(move |(x, y)| RelExpr::Join(b(x), b(y))),
        ]
    })
}

fn check() -> impl Strategy<Value = Check> {
    let names = || proptest::collection::vec(rel_name(), 1..4);
    prop_oneof![
        (rel_expr(), proptest::option::of(set_expr()))
            .prop_map(|(order, on)| Check::Poset { order, on }),
        rel_expr().prop_map(Check::Function),
        rel_expr().prop_map(Check::Surjective),
        rel_expr().prop_map(Check::Injective),
        (rel_expr(), rel_expr()).prop_map(|(a, b)| Check::Leq(a, b)),
        (rel_expr(), rel_expr()).prop_map(|(a, b)| Check::Eq(a, b)),
        (rel_expr(), rel_expr()).prop_map(|(a, b)| Check::Orthogonal(a, b)),
        (rel_expr(), rel_name(), rel_name()).prop_map(|(fun, source, target)| {
            Check::Monotone {
                fun,
                source,
                target,
            }
        }),
        (rel_expr(), rel_name(), rel_name()).prop_map(|(fun, source, target)| Check::Strict {
            fun,
            source,
            target
        }),
        (rel_expr(), rel_expr(), rel_name()).prop_map(|(lower, upper, order)| Check::Below {
            lower,
            upper,
            order
        }),
        (rel_expr(), rel_name(), rel_name(), names(), rel_name()).prop_map(
            |(fun, source, target, chain, limit)| Check::Scott {
                fun,
                source,
                target,
                chain,
                limit
            }
        ),
        (rel_name(), names(), rel_name()).prop_map(|(limit, chain, order)| Check::Limit {
            limit,
            chain,
            order
        }),
        rel_name().prop_map(Check::Pointed),
    ]
}

// `fresh` is a name no other statement uses.
fn statement(fresh: String) -> impl Strategy<Value = StmtKind> {
    let f = move || fresh.clone();
    let (f1, f2, f3, f4, f5, f6) = (f.clone(), f.clone(), f.clone(), f.clone(), f.clone(), f);
    prop_oneof![
        set_expr().prop_map(move |expr| StmtKind::Set { name: f1(), expr }),
        (any::<bool>(), set_expr(), set_expr(), rel_expr()).prop_map(
            move |(fun, dom, cod, expr)| {
                StmtKind::Rel {
                    kind: if fun { DeclKind::Fun } else { DeclKind::Rel },
                    name: f2(),
                    dom,
                    cod,
                    expr,
                }
            }
        ),
        (
            set_expr(),
            proptest::collection::vec((atom_ref(), matrix()), 0..3)
        )
            .prop_map(move |(space, blocks)| StmtKind::State {
                name: f3(),
                space,
                blocks
            }),
        (any::<bool>(), check()).prop_map(|(assert, check)| StmtKind::Check {
            mode: if assert { Mode::Assert } else { Mode::Check },
            check,
        }),
        rel_name().prop_map(move |fun| StmtKind::Push {
            state: "M".into(),
            fun,
            result: f4(),
        }),
        rel_name().prop_map(move |order| StmtKind::Lift { name: f5(), order }),
        (0u32..5).prop_map(move |qubits| StmtKind::Qft { name: f6(), qubits }),
        prop_oneof![set_name(), rel_name(), Just("M".to_string())]
            .prop_map(|name| StmtKind::Print { name }),
    ]
}

fn script() -> impl Strategy<Value = Vec<StmtKind>> {
    (1usize..6).prop_flat_map(|n| {
        (0..n)
            .map(|k| statement(format!("Z{k}")))
            .collect::<Vec<_>>()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn parse_inverts_pretty(stmts in script()) {
        let prelude = parse(PRELUDE).unwrap();
        let mut all = kinds(&prelude);
        all.extend(stmts);
        let text: String = all.iter().map(|k| format!("{k}\n")).collect();
        let back = parse(&text).map_err(|d| TestCaseError::fail(format!("{d}\n{text}")))?;
        prop_assert_eq!(kinds(&back), all, "{}", text);
    }

    // Nonsense that parses is reported, never a crash.
    #[test]
    fn evaluation_never_panics(stmts in script()) {
        let mut all = kinds(&parse(PRELUDE).unwrap());
        all.extend(stmts);
        let text: String = all.iter().map(|k| format!("{k}\n")).collect();
        let report = evaluate(&parse(&text).unwrap());
        prop_assert!(report.entries.len() >= 5 || report.error.is_some());
    }
}

#[test]
fn shipped_scripts_round_trip() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/scripts");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "q") {
            let Ok(ast) = parse(&std::fs::read_to_string(&path).unwrap()) else {
                continue;
            };
            let again = parse(&ast.to_string()).unwrap();
            assert_eq!(kinds(&again), kinds(&ast), "{}", path.display());
        }
    }
}

#[test]
fn measurement_script_has_seven_statements() {
    let text = include_str!("../scripts/measurement.q");
    assert_eq!(parse(text).unwrap().statements.len(), 7);
}

#[test]
fn truncated_declaration_points_past_the_arrow() {
    let d = parse("rel R : Q -> ").unwrap_err();
    assert_eq!((d.span.line, d.span.col), (1, 14));
}
