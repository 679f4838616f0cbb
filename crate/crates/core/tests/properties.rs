use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ver4_forms::classify::all_classes;
use ver4_forms::io::{form_to_json, parse_form};
use ver4_forms::verobj::random_automorphism;
use ver4_forms::witt::{direct_sum, expected_product, expected_sum, tensor_product};
use ver4_forms::{canonical_rep, canonicalize, classify, make_field, CanonicalClass, FieldCtx};

fn pick(field: &'static FieldCtx, m: usize, n: usize, idx: usize) -> Option<CanonicalClass> {
    let classes = all_classes(m, n, field);
    (!classes.is_empty()).then(|| classes[idx % classes.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn congruent_forms_share_class_and_canonical_form(k in 2u32..=4, m in 0usize..4, n in 0usize..4, idx in 0usize..64, seed in any::<u64>()) {
        let f = make_field(k).unwrap();
        let Some(class) = pick(f, m, n, idx) else { return Ok(()) };
        let rep = canonical_rep(&class, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moved = rep.pullback(&random_automorphism(&rep.obj(), f, &mut rng)).unwrap();
        prop_assert_eq!(classify(&moved).unwrap(), class);
        let (t, canon) = canonicalize(&moved).unwrap();
        prop_assert_eq!(moved.gram().congruence(&t.matrix), rep.gram().clone());
        prop_assert_eq!(canon, rep);
    }

    #[test]
    fn operations_follow_tables(k in 2u32..=3, sizes in (0usize..3, 0usize..3, 0usize..3, 0usize..3), i in 0usize..64, j in 0usize..64, seed in any::<u64>()) {
        let f = make_field(k).unwrap();
        let (m, n, p, q) = sizes;
        let (Some(a), Some(b)) = (pick(f, m, n, i), pick(f, p, q, j)) else { return Ok(()) };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ra = canonical_rep(&a, f).unwrap();
        let ra = ra.pullback(&random_automorphism(&ra.obj(), f, &mut rng)).unwrap();
        let rb = canonical_rep(&b, f).unwrap();
        prop_assert_eq!(classify(&direct_sum(&ra, &rb).unwrap()).unwrap(), expected_sum(&a, &b).unwrap());
        prop_assert_eq!(classify(&direct_sum(&rb, &ra).unwrap()).unwrap(), expected_sum(&b, &a).unwrap());
        prop_assert_eq!(classify(&tensor_product(&ra, &rb).unwrap()).unwrap(), expected_product(&a, &b, f).unwrap());
        prop_assert_eq!(classify(&tensor_product(&rb, &ra).unwrap()).unwrap(), expected_product(&a, &b, f).unwrap());
    }

    #[test]
    fn json_roundtrip(k in 2u32..=5, m in 0usize..3, n in 0usize..3, idx in 0usize..64, seed in any::<u64>()) {
        let f = make_field(k).unwrap();
        let Some(class) = pick(f, m, n, idx) else { return Ok(()) };
        let rep = canonical_rep(&class, f).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let moved = rep.pullback(&random_automorphism(&rep.obj(), f, &mut rng)).unwrap();
        prop_assert_eq!(parse_form(&form_to_json(&moved)).unwrap(), moved);
    }
}

#[test]
fn labels_roundtrip_for_every_small_class() {
    let f = make_field(3).unwrap();
    for m in 0..=3 {
        for n in 0..=3 {
            for c in all_classes(m, n, f) {
                assert_eq!(CanonicalClass::parse(&c.label(), f).unwrap(), c);
            }
        }
    }
}
