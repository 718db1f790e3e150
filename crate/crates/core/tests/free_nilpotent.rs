use hopf_core::nilpotent::{
    free_nilpotent_group, invert_word, magnus_equal, witt_number, word_element, Collector, HallBasis, Letter, Word,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn w(s: &str) -> Vec<Letter> {
    s.parse::<Word>().unwrap().0
}

fn random_word(rng: &mut ChaCha8Rng, rank: usize, max_len: usize) -> Vec<Letter> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5))).collect()
}

/// Left-normed commutator `[a, b] = a⁻¹ b⁻¹ a b` of two words.
fn comm(a: &[Letter], b: &[Letter]) -> Vec<Letter> {
    let mut out = invert_word(a);
    out.extend(invert_word(b));
    out.extend_from_slice(a);
    out.extend_from_slice(b);
    out
}

#[test]
fn hall_basis_sizes() {
    assert_eq!(HallBasis::new(2, 2).len(), 3);
    assert_eq!(HallBasis::new(2, 3).layer_sizes(), vec![2, 1, 2]);
    for c in 1..6 {
        assert_eq!(HallBasis::new(1, c).len(), 1);
    }
    let b = HallBasis::new(2, 2);
    assert_eq!(b.describe(2), "[x2,x1]");
}

#[test]
fn layers_match_witt_numbers() {
    // Witt numbers computed independently by counting Lyndon words.
    fn lyndon_count(r: usize, n: usize) -> usize {
        let mut count = 0;
        let mut word = vec![0usize];
        while !word.is_empty() {
            if word.len() == n {
                count += 1;
            }
            let mut next: Vec<usize> = (0..n).map(|i| word[i % word.len()]).collect();
            while next.last() == Some(&(r - 1)) {
                next.pop();
            }
            if let Some(last) = next.last_mut() {
                *last += 1;
            }
            word = next;
        }
        count
    }
    for r in 1..=4 {
        for c in 1..=5 {
            let layers = HallBasis::new(r, c).layer_sizes();
            for wgt in 1..=c {
                assert_eq!(layers[wgt - 1], witt_number(r, wgt), "r={r} w={wgt}");
                assert_eq!(witt_number(r, wgt), lyndon_count(r, wgt), "r={r} w={wgt}");
            }
        }
    }
}

#[test]
fn collect_examples() {
    let c = Collector::new(2, 2);
    assert!(c.collect(&[]).is_identity());
    assert_eq!(c.collect(&w("x2 x1")).0, vec![1, 1, 1]);
    assert!(c.collect(&w("x1 x1'")).is_identity());
    assert_eq!(c.collect(&w("x1 x2")).0, vec![1, 1, 0]);
}

#[test]
fn magnus_examples() {
    assert!(magnus_equal(&w("x1x2"), &w("x1x2"), 2, 3));
    assert!(!magnus_equal(&w("x2x1"), &w("x1x2"), 2, 2));
    assert!(magnus_equal(&w("x1x1'"), &[], 2, 3));
    assert!(magnus_equal(&w("x2x1"), &w("x1x2"), 2, 1));
}

fn agreement(rank: usize, class: usize, pairs: usize, seed: u64) {
    let col = Collector::new(rank, class);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut equal_pairs = 0;
    for t in 0..pairs {
        let a = random_word(&mut rng, rank, 12);
        let b = if t % 2 == 0 {
            random_word(&mut rng, rank, 12)
        } else {
            // Same element by construction: splice in a commutator of weight
            // class + 1, which vanishes in the truncation.
            let mut long = Vec::new();
            let x = Letter::new(rng.gen_range(1..=rank), false);
            let mut c = vec![x];
            for _ in 0..class {
                let y = Letter::new(rng.gen_range(1..=rank), rng.gen_bool(0.5));
                c = comm(&c, &[y]);
            }
            let cut = rng.gen_range(0..=a.len());
            long.extend_from_slice(&a[..cut]);
            long.extend(c);
            long.extend_from_slice(&a[cut..]);
            long
        };
        let by_collection = col.collect(&a) == col.collect(&b);
        let by_magnus = magnus_equal(&a, &b, rank, class);
        assert_eq!(by_collection, by_magnus, "{a:?} vs {b:?} at ({rank},{class})");
        equal_pairs += by_magnus as usize;
    }
    assert!(equal_pairs >= pairs / 2);
}

#[test]
fn collection_agrees_with_magnus_2_2() {
    agreement(2, 2, 10_000, 1);
}

#[test]
fn collection_agrees_with_magnus_2_3() {
    agreement(2, 3, 10_000, 2);
}

#[test]
fn collection_agrees_with_magnus_3_2() {
    agreement(3, 2, 10_000, 3);
}

#[test]
fn collection_agrees_with_magnus_higher_class() {
    agreement(2, 4, 2_000, 4);
    agreement(3, 3, 2_000, 5);
}

#[test]
fn truncated_group_examples() {
    let g = free_nilpotent_group(2, 2, 2).unwrap();
    assert_eq!(g.order().unwrap(), 8);
    assert!(!g.is_abelian());
    let gens = g.generators();
    assert!(gens.iter().all(|x| g.element_order(x) == 2));
    assert_eq!(g.element_order(&g.mul(&gens[0], &gens[1])), 4);
    let c = free_nilpotent_group(1, 4, 6).unwrap();
    assert_eq!(c.order().unwrap(), 6);
    assert!(c.is_abelian());
    assert_eq!(free_nilpotent_group(2, 3, 3).unwrap().order().unwrap(), 243);
}

#[test]
fn truncated_groups_are_associative() {
    for (r, c, m) in [(2, 2, 2), (2, 2, 3), (2, 3, 3), (2, 2, 5), (3, 2, 2)] {
        let g = free_nilpotent_group(r, c, m).unwrap();
        g.check_axioms(512, 0, 0).unwrap_or_else(|e| panic!("({r},{c},{m}): {e}"));
    }
    for (r, c, m) in [(2, 3, 5), (2, 3, 7), (3, 2, 3), (3, 2, 4)] {
        let g = free_nilpotent_group(r, c, m).unwrap();
        g.check_axioms(512, 100_000, 11).unwrap_or_else(|e| panic!("({r},{c},{m}): {e}"));
    }
}

#[test]
fn even_exponent_at_class_three_is_rejected() {
    // Reducing x1·x1 mod 2 then multiplying disagrees with the integer law.
    for m in [2, 4, 6] {
        assert!(matches!(free_nilpotent_group(2, 3, m), Err(hopf_core::Error::InvalidParameter(_))));
    }
    assert!(matches!(free_nilpotent_group(2, 4, 3), Err(hopf_core::Error::InvalidParameter(_))));
}

#[test]
fn cap_is_enforced() {
    assert!(matches!(free_nilpotent_group(3, 3, 7), Err(hopf_core::Error::CapExceeded { .. })));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn reduction_mod_m_is_a_homomorphism(seed in any::<u64>(), m in prop::sample::select(vec![3u64, 5, 7, 9, 11])) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&mut rng, 2, 16);
        let col = Collector::new(2, 3);
        let g = free_nilpotent_group(2, 3, m).unwrap();
        let x = word_element(&g, &word);
        let expect: Vec<u32> = col.collect_mod(&word, m).0.iter().map(|&e| e as u32).collect();
        prop_assert_eq!(x.as_slice(), expect.as_slice());
    }

    #[test]
    fn reduction_mod_m_at_class_two(seed in any::<u64>(), m in 2u64..9) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let word = random_word(&mut rng, 3, 16);
        let col = Collector::new(3, 2);
        let g = free_nilpotent_group(3, 2, m).unwrap();
        let x = word_element(&g, &word);
        let expect: Vec<u32> = col.collect_mod(&word, m).0.iter().map(|&e| e as u32).collect();
        prop_assert_eq!(x.as_slice(), expect.as_slice());
    }

    #[test]
    fn word_parsing_round_trips(letters in proptest::collection::vec((1usize..5, any::<bool>()), 0..10)) {
        let word = Word(letters.iter().map(|&(g, i)| Letter::new(g, i)).collect());
        let text = format!("{word:?}");
        prop_assert_eq!(text.parse::<Word>().unwrap(), word);
    }
}
