use qcpo_cli::json;
use qcpo_core::random::{random_quantum_set, random_relation, random_state};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn random_relations_survive_a_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let dom = random_quantum_set(&mut rng, 3, 3);
        let cod = random_quantum_set(&mut rng, 3, 3);
        let r = random_relation(&mut rng, &dom, &cod);
        let text = json::to_string(&json::relation_to_json(&r));
        let back = json::relation_from_json(&json::parse(&text).unwrap(), "").unwrap();
        assert_eq!(back.dom(), r.dom());
        assert_eq!(back.cod(), r.cod());
        assert!(back.leq(&r).unwrap() && r.leq(&back).unwrap());
    }
}

#[test]
fn random_states_survive_a_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..50 {
        let space = random_quantum_set(&mut rng, 3, 3);
        let m = random_state(&mut rng, &space);
        let text = json::to_string(&json::state_to_json(&m));
        let back = json::state_from_json(&json::parse(&text).unwrap(), "").unwrap();
        for (a, b) in m.blocks().iter().zip(back.blocks()) {
            assert_eq!(a, b);
        }
    }
}

#[test]
fn unknown_fields_are_rejected() {
    let v = json::parse(r#"{"atoms":[],"extra":1}"#).unwrap();
    assert_eq!(json::set_from_json(&v, "").unwrap_err().pointer, "/extra");
}
