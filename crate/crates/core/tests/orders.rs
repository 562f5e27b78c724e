mod common;

use std::collections::BTreeSet;

use common::*;
use proptest::prelude::*;
use qcpo_core::qcpo::{bottom_function, lift_object};
use qcpo_core::qorder::{
    check_order_axioms, embed_classical_poset, extract_classical_poset, hom_leq,
    induced_cone_order, is_monotone, order_from_channel, trivial_order, FinitePoset,
};
use qcpo_core::qset::embed_classical_function;
use qcpo_core::random::{
    gaussian_matrix, random_finite_poset, random_function, random_map, random_monotone_map,
    random_quantum_set, random_unitary, upper_triangular_poset,
};
use qcpo_core::states::unitary_gate;
use qcpo_core::{KrausChannel, OperatorSubspace, QPoset, QRelation, QuantumSet};
use rand::Rng;

fn ordinary_monotone(p: &FinitePoset, q: &FinitePoset, map: &[usize]) -> bool {
    p.pairs().iter().all(|&(a, b)| q.leq(map[a], map[b]))
}

fn point(p: &FinitePoset, i: usize) -> qcpo_core::QFunction {
    embed_classical_function(&["w".to_string()], p.elements(), &[i]).unwrap()
}

#[test]
fn channel_with_a_lowering_kraus_operator_gives_upper_triangular_order() {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let v = unit(2, 2, 1, 0);
    let ch = KrausChannel::new(2, vec![real([[s, 0.0], [0.0, s]]), v * c(s, 0.0)]).unwrap();
    let r = order_from_channel(&ch).unwrap();
    let expected = upper_triangular_poset();
    assert!(r.approx_eq(expected.order()).unwrap());
    assert!(check_order_axioms(r.dom(), &r).unwrap().all());
}

#[test]
fn identity_and_full_channels() {
    let id = KrausChannel::new(3, vec![qcpo_core::ComplexMatrix::identity(3, 3)]).unwrap();
    let r = order_from_channel(&id).unwrap();
    assert!(r.approx_eq(&QRelation::identity(r.dom())).unwrap());

    let d = 3;
    let units: Vec<_> = (0..d)
        .flat_map(|i| (0..d).map(move |j| unit(d, d, i, j) * c(1.0 / d as f64, 0.0)))
        .collect();
    let full = order_from_channel(&KrausChannel::new(d, units).unwrap()).unwrap();
    assert!(full
        .approx_eq(&QRelation::top(full.dom(), full.dom()))
        .unwrap());
    let ax = check_order_axioms(full.dom(), &full).unwrap();
    assert!(ax.reflexive && ax.transitive && !ax.antisymmetric);
}

#[test]
fn channel_orders_are_preorders() {
    let mut rng = rng(21);
    for _ in 0..30 {
        let d = rng.random_range(1..=3);
        let k = rng.random_range(1..=3);
        let raw: Vec<_> = (0..k).map(|_| gaussian_matrix(&mut rng, d, d)).collect();
        // scale into a subunital family
        let total: f64 = raw.iter().map(|m| m.norm_squared()).sum();
        let kraus = raw.iter().map(|m| m * c(1.0 / total.sqrt(), 0.0)).collect();
        let r = order_from_channel(&KrausChannel::new(d, kraus).unwrap()).unwrap();
        let ax = check_order_axioms(r.dom(), &r).unwrap();
        assert!(ax.reflexive && ax.transitive);
    }
}

#[test]
fn top_fails_antisymmetry_only() {
    let h2 = QuantumSet::atomic("H2", 2);
    let ax = check_order_axioms(&h2, &QRelation::top(&h2, &h2)).unwrap();
    assert!(ax.reflexive && ax.transitive && !ax.antisymmetric);
}

#[test]
fn pauli_x_is_neither_monotone_nor_above_the_identity() {
    let p = upper_triangular_poset();
    let x = unitary_gate(&real([[0.0, 1.0], [1.0, 0.0]])).unwrap();
    assert!(!is_monotone(&x, &p, &p).unwrap());
    let id = qcpo_core::QFunction::identity(p.carrier());
    assert!(!hom_leq(&id, &x, &p).unwrap());
    assert!(is_monotone(&id, &p, &p).unwrap());
}

#[test]
fn embedded_monotonicity_and_hom_order_match_ordinary_ones() {
    let mut rng = rng(8);
    for _ in 0..150 {
        let p = poset_upto(&mut rng, 4);
        let q = poset_upto(&mut rng, 4);
        let qp = embed_classical_poset(&p).unwrap();
        let qq = embed_classical_poset(&q).unwrap();
        assert_eq!(extract_classical_poset(&qp).unwrap(), p);
        let map = random_map(&mut rng, p.len(), q.len());
        let f = embed_classical_function(p.elements(), q.elements(), &map).unwrap();
        assert_eq!(
            is_monotone(&f, &qp, &qq).unwrap(),
            ordinary_monotone(&p, &q, &map)
        );
        let other = random_map(&mut rng, p.len(), q.len());
        let g = embed_classical_function(p.elements(), q.elements(), &other).unwrap();
        let pointwise = (0..p.len()).all(|i| q.leq(map[i], other[i]));
        assert_eq!(hom_leq(&f, &g, &qq).unwrap(), pointwise);
    }
}

#[test]
fn constant_zero_is_below_constant_one_in_the_two_chain() {
    let chain = FinitePoset::chain(2);
    let qc = embed_classical_poset(&chain).unwrap();
    assert!(hom_leq(&point(&chain, 0), &point(&chain, 1), &qc).unwrap());
    assert!(!hom_leq(&point(&chain, 1), &point(&chain, 0), &qc).unwrap());
}

#[test]
fn hom_order_into_a_trivial_order_is_discrete() {
    let mut rng = rng(13);
    for _ in 0..40 {
        let w = random_quantum_set(&mut rng, 2, 2);
        let x = QuantumSet::one().coproduct(&random_quantum_set(&mut rng, 2, 2));
        let t = trivial_order(&x);
        let f = random_function(&mut rng, &w, &x).unwrap();
        let g = random_function(&mut rng, &w, &x).unwrap();
        assert!(hom_leq(&f, &f, &t).unwrap());
        assert_eq!(hom_leq(&f, &g, &t).unwrap(), f.approx_eq(&g).unwrap());
    }
}

#[test]
fn product_order_from_projection_cone() {
    let mut rng = rng(17);
    for _ in 0..40 {
        let p = poset_upto(&mut rng, 3);
        let q = poset_upto(&mut rng, 3);
        let (qp, qq) = (
            embed_classical_poset(&p).unwrap(),
            embed_classical_poset(&q).unwrap(),
        );
        let prod = qp.product(&qq).unwrap();
        let carrier = prod.carrier().clone();
        // carrier atoms are pairs in lexicographic order
        let fst: Vec<usize> = (0..p.len() * q.len()).map(|k| k / q.len()).collect();
        let snd: Vec<usize> = (0..p.len() * q.len()).map(|k| k % q.len()).collect();
        let labels: Vec<String> = carrier.atoms().iter().map(|a| a.label.clone()).collect();
        let j1 = embed_classical_function(&labels, p.elements(), &fst).unwrap();
        let j2 = embed_classical_function(&labels, q.elements(), &snd).unwrap();
        let cone = induced_cone_order(&carrier, &[(&qp, &j1), (&qq, &j2)]).unwrap();
        assert!(cone.approx_eq(prod.order()).unwrap());
        // ordinary product order
        for a in 0..labels.len() {
            for b in 0..labels.len() {
                let ordinary = p.leq(fst[a], fst[b]) && q.leq(snd[a], snd[b]);
                assert_eq!(cone.block_ref(a, b).is_some(), ordinary);
            }
        }
    }
}

#[test]
fn cone_with_identity_leg_returns_the_order() {
    let p = upper_triangular_poset();
    let id = qcpo_core::QFunction::identity(p.carrier());
    let r = induced_cone_order(p.carrier(), &[(&p, &id)]).unwrap();
    assert!(r.approx_eq(p.order()).unwrap());
    let top = induced_cone_order(p.carrier(), &[]).unwrap();
    assert!(top
        .approx_eq(&QRelation::top(p.carrier(), p.carrier()))
        .unwrap());
}

#[test]
fn meeting_with_a_trivial_leg_tightens_the_order() {
    // carrier {a, b}; leg 1 into the chain a<b, leg 2 the identity into the
    // discrete order: the meet is the discrete order.
    let chain = embed_classical_poset(&FinitePoset::chain(2)).unwrap();
    let carrier = chain.carrier().clone();
    let id = qcpo_core::QFunction::identity(&carrier);
    let discrete = trivial_order(&carrier);
    let r = induced_cone_order(&carrier, &[(&chain, &id), (&discrete, &id)]).unwrap();
    assert!(r.leq(chain.order()).unwrap());
    assert!(r.approx_eq(discrete.order()).unwrap());
}

fn random_pair_of_related_functions(
    rng: &mut rand_chacha::ChaCha8Rng,
) -> (QPoset, qcpo_core::QFunction, qcpo_core::QFunction) {
    if rng.random_bool(0.5) {
        let p = poset_upto(rng, 4);
        let i = rng.random_range(0..p.len());
        let j = rng.random_range(0..p.len());
        let qp = embed_classical_poset(&p).unwrap();
        (qp, point(&p, i), point(&p, j))
    } else {
        let lifted = lift_object(&upper_triangular_poset());
        let h2 = QuantumSet::atomic("w", 2);
        let bottom = bottom_function(&h2, &lifted);
        let u = random_unitary(rng, 2);
        let line = OperatorSubspace::line(&u).unwrap();
        let f = qcpo_core::QFunction::new(
            QRelation::from_blocks(&h2, lifted.carrier(), [((0, 1), line)]).unwrap(),
        )
        .unwrap();
        let g = if rng.random_bool(0.5) {
            bottom.clone()
        } else {
            f.clone()
        };
        (lifted.base().clone(), bottom, g)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_order_is_a_partial_order(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let p = poset_upto(&mut rng, 4);
        let qp = embed_classical_poset(&p).unwrap();
        let w = FinitePoset::chain(rng.random_range(1..=2));
        let fs: Vec<_> = (0..3)
            .map(|_| {
                let m = random_map(&mut rng, w.len(), p.len());
                embed_classical_function(w.elements(), p.elements(), &m).unwrap()
            })
            .collect();
        for f in &fs {
            prop_assert!(hom_leq(f, f, &qp).unwrap());
            for g in &fs {
                if hom_leq(f, g, &qp).unwrap() && hom_leq(g, f, &qp).unwrap() {
                    prop_assert!(f.approx_eq(g).unwrap());
                }
                for h in &fs {
                    if hom_leq(f, g, &qp).unwrap() && hom_leq(g, h, &qp).unwrap() {
                        prop_assert!(hom_leq(f, h, &qp).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn bottom_is_below_and_composition_respects_the_order(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (target, f, g) = random_pair_of_related_functions(&mut rng);
        let below = hom_leq(&f, &g, &target).unwrap();
        // post-compose with a monotone map into a classical chain when the
        // target is classical; otherwise with the identity
        if target.carrier().is_classical() {
            let p = extract_classical_poset(&target).unwrap();
            let q = poset_upto(&mut rng, 3);
            let m = random_monotone_map(&mut rng, &p, &q).unwrap();
            let h = embed_classical_function(p.elements(), q.elements(), &m).unwrap();
            let qq = embed_classical_poset(&q).unwrap();
            prop_assert!(is_monotone(&h, &target, &qq).unwrap());
            if below {
                prop_assert!(hom_leq(&f.then(&h).unwrap(), &g.then(&h).unwrap(), &qq).unwrap());
            }
        } else {
            prop_assert!(below);
        }
    }
}

#[test]
fn ordinary_monotone_maps_exhaustively_on_three_points() {
    // all posets on 3 labelled points, all maps into the 2-chain
    let cells = [(0, 1), (0, 2), (1, 0), (1, 2), (2, 0), (2, 1)];
    let q = FinitePoset::chain(2);
    let qq = embed_classical_poset(&q).unwrap();
    let mut seen = 0;
    for mask in 0u32..64 {
        let mut pairs: BTreeSet<(usize, usize)> = (0..3).map(|i| (i, i)).collect();
        pairs.extend(
            cells
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &p)| p),
        );
        let Ok(p) = FinitePoset::new(vec!["a".into(), "b".into(), "c".into()], pairs) else {
            continue;
        };
        seen += 1;
        let qp = embed_classical_poset(&p).unwrap();
        for code in 0..8usize {
            let map = [code & 1, code >> 1 & 1, code >> 2 & 1];
            let f = embed_classical_function(p.elements(), q.elements(), &map).unwrap();
            assert_eq!(
                is_monotone(&f, &qp, &qq).unwrap(),
                ordinary_monotone(&p, &q, &map)
            );
        }
    }
    assert_eq!(seen, 19); // labelled posets on 3 points
}

fn poset_upto(rng: &mut impl Rng, max: usize) -> FinitePoset {
    let n = rng.random_range(1..=max);
    random_finite_poset(rng, n)
}
