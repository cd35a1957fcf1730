//! Property-based invariants over random formulas, assignments, and graphs.

mod common;

use proptest::prelude::*;

use trapset::alist::{parse_alist, write_alist};
use trapset::sat::{
    check_gamma_in_beta, complement, parse_formula, write_formula, Assignment, MonotoneFormula,
};

fn arb_uniform_formula(width: usize) -> impl Strategy<Value = MonotoneFormula> {
    (width..=10usize).prop_flat_map(move |n_vars| {
        let clause = proptest::sample::subsequence((0..n_vars).collect::<Vec<_>>(), width);
        proptest::collection::vec(clause, 1..8).prop_map(move |clauses| {
            let mut f = MonotoneFormula::with_n_vars(n_vars);
            for c in clauses {
                f.push_clause(&c).unwrap();
            }
            f
        })
    })
}

proptest! {
    #[test]
    fn complement_is_an_involution(values in proptest::collection::vec(any::<bool>(), 0..32)) {
        let l = Assignment(values);
        prop_assert_eq!(complement(&complement(&l)), l);
    }

    /// On a 3-uniform formula, gamma-IN-3 under l is (3-gamma)-IN-3 under
    /// the complement; the 1-IN-3 / 2-IN-3 pairing drives the whole chain.
    #[test]
    fn one_in_three_iff_complement_two_in_three(
        f in arb_uniform_formula(3),
        seed in any::<u64>(),
    ) {
        let n = f.n_vars();
        let l = Assignment((0..n).map(|v| seed >> (v % 64) & 1 == 1).collect());
        prop_assert_eq!(
            check_gamma_in_beta(&f, &l, 1).unwrap(),
            check_gamma_in_beta(&f, &complement(&l), 2).unwrap()
        );
    }

    #[test]
    fn formula_text_round_trips(f in arb_uniform_formula(3)) {
        prop_assert_eq!(parse_formula(&write_formula(&f)).unwrap(), f);
    }

    #[test]
    fn alist_round_trips(
        n_var in 1usize..10,
        n_chk in 1usize..10,
        p in 10u32..90,
        seed in any::<u64>(),
    ) {
        let g = common::random_bipartite(n_var, n_chk, p, seed);
        let parsed = parse_alist(&write_alist(&g)).unwrap();
        prop_assert!(parsed.same_structure(&g));
    }
}
