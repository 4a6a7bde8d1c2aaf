use std::sync::OnceLock;

use proptest::prelude::*;

use lanke_core::characters::{decompose, Decomposition};
use lanke_core::combinatorics::Partition;
use lanke_core::filippov::{enumerate_shapes, BracketShape, BracketWord, Tower};
use lanke_core::linalg::{Field, F998244353};
use lanke_core::module::{character, Representation};
use lanke_core::perm::Perm;
use lanke_core::specht::{phi_eigenvalue, product_decomposition};
use lanke_core::tree_specht::{enumerate_plane_trees, t_partitions, TPartition};

type F = F998244353;

fn tower_3_3() -> &'static Tower<F> {
    static T: OnceLock<Tower<F>> = OnceLock::new();
    T.get_or_init(|| Tower::build(3, 3).unwrap())
}

fn perm(m: usize) -> impl Strategy<Value = Perm> {
    Just((0..m).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(Perm::from_images)
}

fn word_3_3() -> impl Strategy<Value = BracketWord> {
    let shapes = enumerate_shapes(3, 3);
    (0..shapes.len(), perm(7)).prop_map(move |(i, p)| shapes[i].fill().relabel(&|x| p.apply(x as usize) as u32))
}

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (1..=max).prop_flat_map(|m| {
        let all = Partition::all(m);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn action_is_a_homomorphism(s in perm(7), t in perm(7), i in 0usize..56) {
        let r = tower_3_3();
        let i = i % Representation::dim(r);
        let lhs = r.act(&s.compose(&t), i);
        let rhs = r.act_vec(&s, &r.act(&t, i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn normal_form_is_equivariant(w in word_3_3(), s in perm(7)) {
        let r = tower_3_3();
        let v = r.word_nf(&w).unwrap();
        let moved = w.relabel(&|x| s.apply(x as usize) as u32);
        prop_assert_eq!(r.word_nf(&moved).unwrap(), r.act_vec(&s, &v));
    }

    #[test]
    fn antisymmetry_of_normal_forms(w in word_3_3()) {
        let r = tower_3_3();
        let BracketWord::Bracket(mut c) = w.clone() else { unreachable!() };
        c.swap(0, 1);
        let swapped = BracketWord::Bracket(c);
        let sum = r.word_nf(&w).unwrap().add_scaled(&r.word_nf(&swapped).unwrap(), &F::one());
        prop_assert!(sum.is_zero());
    }

    #[test]
    fn word_text_roundtrip(w in word_3_3()) {
        let back: BracketWord = w.to_string().parse().unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn decomposition_json_roundtrip(l in partition(7), mu in partition(7)) {
        let mut d = Decomposition::new(l.size());
        d.add(l.clone(), 2);
        if mu.size() == l.size() {
            d.add(mu, 1);
        }
        let s = serde_json::to_string(&d).unwrap();
        let back: Decomposition = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn irreducible_characters_decompose_to_themselves(l in partition(7)) {
        let d = Decomposition::from_pairs(l.size(), [(l.clone(), 1)]);
        prop_assert_eq!(decompose(&d.character()).unwrap(), d);
    }

    #[test]
    fn phi_scalars_are_nonnegative(l1 in partition(4), l2 in partition(3), extra in 0usize..2) {
        let d = l1.num_columns() + extra;
        for (l, _) in product_decomposition(&l1, &l2).terms() {
            prop_assert!(phi_eigenvalue(l, &l1, &l2, d) >= 0, "{} {} {} {}", l, l1, l2, d);
        }
    }

    #[test]
    fn t_partition_text_roundtrip(size in 1usize..5, pick in any::<prop::sample::Index>(), extra in 0usize..4) {
        let trees = enumerate_plane_trees(size);
        let tree = pick.get(&trees);
        for mu in t_partitions(tree, size + extra) {
            let back: TPartition = mu.to_string().parse().unwrap();
            prop_assert_eq!(&back, &mu);
            let parents = mu.tree().parents();
            for (v, p) in parents.iter().enumerate() {
                if let Some(p) = p {
                    prop_assert!(mu.values()[*p] <= mu.values()[v]);
                }
            }
        }
    }

    #[test]
    fn shape_text_roundtrip(pick in any::<prop::sample::Index>()) {
        let shapes = enumerate_shapes(3, 3);
        let s = pick.get(&shapes);
        let back: BracketShape = s.to_string().parse().unwrap();
        prop_assert_eq!(&back, s);
    }
}

#[test]
fn character_of_tower_is_integral() {
    let r = tower_3_3();
    let ch = character::<F, _>(r);
    let d = decompose(&ch).unwrap();
    assert_eq!(d.dimension(), Representation::dim(r) as u128);
}
