mod common;

use common::{nat, nats, random_sentence, reference_programs, Structure};
use insep::janiczak::{normal_form, SizeProfile};
use insep::logic::{godel, parse_sentence, ungodel};
use insep::recfun::{smn_agrees, Fuel};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn program_and_args() -> impl Strategy<Value = (usize, Vec<u64>, usize)> {
    (0..reference_programs().len()).prop_flat_map(|k| {
        let arity = reference_programs()[k].1;
        (Just(k), prop::collection::vec(0u64..40, arity), 0..=arity)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn specialization_agrees_with_the_original((k, args, split) in program_and_args()) {
        let (i, _, reference) = &reference_programs()[k];
        prop_assert!(smn_agrees(i, &nats(&args[..split]), &nats(&args[split..]), Fuel(10_000)));
        prop_assert_eq!(i.apply(&nats(&args), Fuel(10_000)).value().cloned(), reference(&args).map(nat));
    }

    #[test]
    fn halted_runs_are_stable_under_more_fuel((k, args, _) in program_and_args(), fuel in 1u64..300, extra in 1u64..1000) {
        let (i, _, _) = &reference_programs()[k];
        let first = i.apply(&nats(&args), Fuel(fuel));
        if first.halted() {
            prop_assert_eq!(i.apply(&nats(&args), Fuel(fuel + extra)), first);
        }
    }

    #[test]
    fn printing_then_parsing_is_the_identity(seed in any::<u64>(), rank in 0usize..4) {
        let f = random_sentence(&mut ChaCha8Rng::seed_from_u64(seed), rank, 3).to_formula();
        prop_assert_eq!(parse_sentence(&f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(ungodel(&godel(&f)), Some(f));
    }

    #[test]
    fn normal_forms_agree_with_brute_force(seed in any::<u64>(), bits in 0u64..16) {
        let s = random_sentence(&mut ChaCha8Rng::seed_from_u64(seed), 2, 1);
        let nf = normal_form(&s.to_formula()).unwrap();
        let p = SizeProfile::from_bits(4, bits);
        let st = Structure::for_profile(4, &p.present.iter().copied().collect::<Vec<_>>());
        prop_assert_eq!(nf.eval(&|i| st.has_class_of_size(i + 1)), st.holds(&s));
    }
}
