//! Randomized and exhaustive invariant checks that cut across modules.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sepnoether_core::abelian::DEFAULT_ELEMENT_CAP;
use sepnoether_core::arith::gcd;
use sepnoether_core::blockmonoid::{Context, MultVector, DEFAULT_NODE_CAP};
use sepnoether_core::lattice::{self, find_scaling_unit};
use sepnoether_core::sepnoether::max_group_atom_length;
use sepnoether_core::GroupSpec;

fn context_strategy() -> impl Strategy<Value = (GroupSpec, Vec<usize>)> {
    prop::collection::vec(2u64..=6, 1..=3)
        .prop_map(|moduli| GroupSpec::canonicalize(&moduli).unwrap())
        .prop_flat_map(|group| {
            let pool = group.nonzero_elements(DEFAULT_ELEMENT_CAP).unwrap().len();
            let k = 1..=pool.min(3);
            (
                Just(group),
                k.prop_flat_map(move |k| {
                    prop::sample::subsequence((0..pool).collect::<Vec<_>>(), k)
                }),
            )
        })
}

fn context_from(group: &GroupSpec, indices: &[usize]) -> Context {
    let pool = group.nonzero_elements(DEFAULT_ELEMENT_CAP).unwrap();
    let elements = indices.iter().map(|&i| pool[i].clone()).collect();
    Context::new(group.clone(), elements).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn atoms_respect_box_length_and_complementer_laws((group, indices) in context_strategy()) {
        let ctx = context_from(&group, &indices);
        let orders = ctx.orders().to_vec();
        let max_ord = *orders.iter().max().unwrap();
        let ord_sum: u64 = orders.iter().sum();
        let atoms = ctx.enumerate_atoms(None, DEFAULT_NODE_CAP).unwrap();
        prop_assert!(!atoms.is_empty());
        for atom in &atoms {
            for (i, (&m, &ord)) in atom.0.iter().zip(&orders).enumerate() {
                prop_assert!(m <= ord);
                if m == ord {
                    let unit: Vec<u64> = (0..orders.len())
                        .map(|j| if j == i { ord } else { 0 })
                        .collect();
                    prop_assert_eq!(&atom.0, &unit);
                }
            }
            if atom.length() > max_ord.max(ord_sum / 2) {
                let verdict = lattice::is_group_atom(&ctx, atom, DEFAULT_NODE_CAP).unwrap();
                prop_assert!(!verdict.is_group_atom, "over-cap atom {atom} must decompose");
            }
            let comp = ctx.complementer(atom).unwrap();
            prop_assert!(ctx.is_zero_sum(&comp).unwrap());
            prop_assert_eq!(ctx.complementer(&comp).unwrap(), atom.clone());
        }
    }

    #[test]
    fn group_atoms_are_atoms_and_non_atoms_decompose((group, indices) in context_strategy()) {
        let ctx = context_from(&group, &indices);
        let orders = ctx.orders().to_vec();
        let box_size: u64 = orders.iter().map(|&o| o + 1).product();
        prop_assume!(box_size <= 2_000);

        let mut m = vec![0u64; orders.len()];
        loop {
            let vector = MultVector(m.clone());
            if !vector.is_zero() && ctx.is_zero_sum(&vector).unwrap() {
                let verdict = lattice::is_group_atom(&ctx, &vector, DEFAULT_NODE_CAP).unwrap();
                if verdict.is_group_atom {
                    prop_assert!(ctx.is_atom(&vector).unwrap());
                    prop_assert!(verdict.witness.is_none());
                } else {
                    let terms = verdict.witness.expect("witness for non group atom");
                    prop_assert!(!terms.is_empty());
                    for term in &terms {
                        prop_assert!(term.vector.length() < vector.length());
                        prop_assert!(ctx.is_zero_sum(&term.vector).unwrap());
                    }
                }
            }
            let mut i = 0;
            while i < m.len() && m[i] == orders[i] {
                m[i] = 0;
                i += 1;
            }
            if i == m.len() {
                break;
            }
            m[i] += 1;
        }
    }
}

#[test]
fn scaling_units_satisfy_their_postconditions_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e901);
    let mut checked = 0;
    while checked < 200 {
        let alpha = rng.gen_range(1..=30u64);
        let gamma = rng.gen_range(1..=30u64);
        let beta = rng.gen_range(1..=60u64);
        if gcd(alpha, beta) != 1 {
            continue;
        }
        let modulus = alpha * gamma;
        let ell = find_scaling_unit(alpha, beta, gamma).unwrap();
        assert!(
            ell >= 1 && ell < modulus.max(2),
            "ell {ell} out of range for modulus {modulus}"
        );
        assert_eq!(gcd(ell, modulus), 1);
        assert_eq!(
            (u128::from(ell) * u128::from(beta)) % u128::from(alpha),
            1 % u128::from(alpha)
        );
        checked += 1;
    }
}

fn naive_max_group_atom(ctx: &Context, full_support_only: bool) -> Option<(u64, MultVector)> {
    let mut atoms = ctx.enumerate_atoms(None, DEFAULT_NODE_CAP).unwrap();
    atoms.sort_by_key(|a| (a.length(), a.0.clone()));
    let mut best: Option<(u64, MultVector)> = None;
    for atom in atoms {
        if full_support_only && !atom.has_full_support() {
            continue;
        }
        if best.as_ref().is_some_and(|(len, _)| *len >= atom.length()) {
            continue;
        }
        if lattice::is_group_atom(ctx, &atom, DEFAULT_NODE_CAP)
            .unwrap()
            .is_group_atom
        {
            best = Some((atom.length(), atom));
        }
    }
    best
}

#[test]
fn search_modes_match_a_naive_oracle_on_every_small_context() {
    for name in ["2,2", "3,3", "2,2,2"] {
        let group = GroupSpec::parse(name).unwrap();
        let pool = group.nonzero_elements(DEFAULT_ELEMENT_CAP).unwrap();
        let kmax = group.rank() + 1;
        let mut stack = vec![(Vec::<usize>::new(), 0)];
        while let Some((chosen, next)) = stack.pop() {
            if !chosen.is_empty() {
                let elements = chosen.iter().map(|&i| pool[i].clone()).collect();
                let ctx = Context::new(group.clone(), elements).unwrap();
                let pruned = max_group_atom_length(&ctx, false, DEFAULT_NODE_CAP).unwrap();
                let audited = max_group_atom_length(&ctx, true, DEFAULT_NODE_CAP).unwrap();
                assert_eq!(
                    pruned,
                    naive_max_group_atom(&ctx, true),
                    "context {chosen:?} of {name}"
                );
                assert_eq!(
                    audited,
                    naive_max_group_atom(&ctx, false),
                    "context {chosen:?} of {name}"
                );
            }
            if chosen.len() < kmax {
                for i in next..pool.len() {
                    let mut longer = chosen.clone();
                    longer.push(i);
                    stack.push((longer, i + 1));
                }
            }
        }
    }
}
