use std::collections::BTreeSet;
use std::sync::OnceLock;

use proptest::prelude::*;
use proptest::sample::{select, subsequence};

use csg::enumeration::{count, enumerate, EnumSpec};
use csg::game::{Coalition, SimpleGame};
use csg::oracle::OracleCatalog;
use csg::roles::{semantic_roles, structural_roles};
use csg::transforms::{apply_bijection, apply_inverse, BijectionId};
use csg::{dual, Invariants, Profile, Role, RoleSet};

/// Every game with `n <= 8` and `t <= 4`, built once.
fn catalogue() -> &'static [Invariants] {
    static ALL: OnceLock<Vec<Invariants>> = OnceLock::new();
    ALL.get_or_init(|| {
        let mut all = Vec::new();
        for n in 1..=8 {
            for t in 1..=n.min(4) {
                all.extend(enumerate(&EnumSpec::new(n, t), 1).unwrap());
            }
        }
        all
    })
}

fn small_game() -> impl Strategy<Value = Invariants> {
    select(catalogue().iter().filter(|i| i.n() <= 6).cloned().collect::<Vec<_>>())
}

fn any_game() -> impl Strategy<Value = Invariants> {
    select(catalogue().to_vec())
}

fn permutation(n: u32) -> impl Strategy<Value = Vec<u32>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn labelled_game() -> impl Strategy<Value = (Invariants, Vec<u32>)> {
    small_game().prop_flat_map(|inv| {
        let n = inv.n();
        (Just(inv), permutation(n))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn extract_inverts_expand(inv in any_game()) {
        let g = inv.expand().unwrap();
        prop_assert_eq!(Invariants::extract(&g).unwrap(), inv);
    }

    #[test]
    fn invariants_ignore_labels((inv, perm) in labelled_game()) {
        let g = inv.expand().unwrap().relabel(&perm).unwrap();
        prop_assert_eq!(Invariants::extract(&g).unwrap(), inv);
    }

    #[test]
    fn dual_is_an_involution_on_labelled_games((inv, perm) in labelled_game()) {
        let g = inv.expand().unwrap().relabel(&perm).unwrap();
        let d = dual(&g).unwrap();
        prop_assert_eq!(dual(&d).unwrap(), g.clone());
        prop_assert_eq!(Invariants::extract(&d).unwrap(), inv.dual().unwrap());
    }

    #[test]
    fn dual_swaps_roles(inv in small_game()) {
        let swap = |r: Role| match r {
            Role::Vetoer => Role::Passer,
            Role::Passer => Role::Vetoer,
            Role::SemiVetoer => Role::SemiPasser,
            Role::SemiPasser => Role::SemiVetoer,
            other => other,
        };
        let before = semantic_roles(&inv.expand().unwrap()).unwrap().present();
        let after = semantic_roles(&inv.dual().unwrap().expand().unwrap()).unwrap().present();
        let want: RoleSet = before.iter().map(swap).collect();
        prop_assert_eq!(after, want);
    }

    #[test]
    fn structural_roles_agree_with_semantic(inv in any_game()) {
        let s = structural_roles(&inv);
        let m = semantic_roles(&inv.expand().unwrap()).unwrap();
        prop_assert_eq!(s.per_class(), m.per_class());
    }

    #[test]
    fn expanded_games_are_monotone(inv in small_game(), a in any::<u64>(), b in any::<u64>()) {
        let g = inv.expand().unwrap();
        let full = g.grand().bits();
        let s = Coalition::from_bits(a & full);
        let t = Coalition::from_bits((a | b) & full);
        if g.wins(s) {
            prop_assert!(g.wins(t));
        }
        prop_assert!(g.wins(g.grand()));
        prop_assert!(!g.wins(Coalition::EMPTY));
    }

    #[test]
    fn rows_are_winning_and_pairwise_incomparable(inv in any_game()) {
        let rows = inv.rows();
        for (i, a) in rows.iter().enumerate() {
            prop_assert!(inv.is_winning(a));
            for b in &rows[i + 1..] {
                prop_assert!(a > b);
                prop_assert!(!a.delta_ge(b) && !b.delta_ge(a));
            }
        }
    }

    #[test]
    fn bijections_round_trip(inv in any_game(), id in select(BijectionId::ALL.to_vec())) {
        if let Ok(img) = apply_bijection(id, &inv) {
            prop_assert_eq!(img.n(), inv.n());
            prop_assert_eq!(apply_inverse(id, &img).unwrap(), inv);
        }
    }

    #[test]
    fn delta_order_is_a_partial_order(
        a in proptest::collection::vec(0u32..5, 3),
        b in proptest::collection::vec(0u32..5, 3),
        c in proptest::collection::vec(0u32..5, 3),
    ) {
        let (a, b, c) = (Profile::new(a).unwrap(), Profile::new(b).unwrap(), Profile::new(c).unwrap());
        prop_assert!(a.delta_ge(&a));
        if a.delta_ge(&b) && b.delta_ge(&a) {
            prop_assert_eq!(&a, &b);
        }
        if a.delta_ge(&b) && b.delta_ge(&c) {
            prop_assert!(a.delta_ge(&c));
        }
    }

    #[test]
    fn complete_antichains_land_in_the_catalogue(
        n in 1u32..=5,
        picks in subsequence((1u64..32).collect::<Vec<_>>(), 1..6),
    ) {
        let full = (1u64 << n) - 1;
        let raw: Vec<Coalition> = picks
            .into_iter()
            .map(|b| b & full)
            .filter(|&b| b != 0)
            .map(Coalition::from_bits)
            .collect();
        prop_assume!(!raw.is_empty());
        let g = SimpleGame::normalize(n, &raw).unwrap();
        if let Ok(inv) = Invariants::extract(&g) {
            if inv.t() <= 4 {
                prop_assert!(catalogue().contains(&inv));
            } else {
                let all = enumerate(&EnumSpec::new(n, inv.t() as u32), 1).unwrap();
                prop_assert!(all.contains(&inv));
            }
        }
    }
}

#[test]
fn enumeration_has_no_duplicates_and_is_ordered() {
    for n in 1..=8u32 {
        for t in 1..=n.min(4) {
            let list = enumerate(&EnumSpec::new(n, t), 1).unwrap();
            let set: BTreeSet<_> = list.iter().collect();
            assert_eq!(set.len(), list.len(), "duplicate at n={n} t={t}");
            let c = count(&EnumSpec::new(n, t), 1).unwrap();
            assert_eq!(c, list.len() as u64);
        }
    }
}

#[test]
fn parallel_enumeration_matches_sequential() {
    for (n, t) in [(7, 3), (8, 4), (6, 6)] {
        let one = enumerate(&EnumSpec::new(n, t), 1).unwrap();
        let four = enumerate(&EnumSpec::new(n, t), 4).unwrap();
        assert_eq!(one, four);
    }
}

#[test]
fn counts_grow_with_n() {
    // Adding a voter to the last class embeds CG(n,t) into CG(n+1,t).
    for t in 1..=4u32 {
        let mut prev = 0u64;
        for n in t..=9 {
            let c: u64 = count(&EnumSpec::new(n, t), 1).unwrap().to_string().parse().unwrap();
            assert!(c >= prev, "CG({n},{t}) = {c} < {prev}");
            prev = c;
        }
    }
}

#[test]
fn oracle_matches_enumeration_up_to_six() {
    let cat = OracleCatalog::build(6).unwrap();
    let mut enumerated = BTreeSet::new();
    for t in 1..=6 {
        enumerated.extend(enumerate(&EnumSpec::new(6, t), 1).unwrap());
    }
    let oracle: BTreeSet<_> = cat.classes().keys().cloned().collect();
    assert_eq!(oracle, enumerated);
}
