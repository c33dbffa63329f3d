mod common;

use common::checks;
use common::*;
use proptest::prelude::*;

fn config() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

fn oracle_registry() -> fieldcas::Registry {
    registry(ORACLE_DECLARATIONS)
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn print_then_parse_is_identity(e in arb_expr()) {
        checks::roundtrip(&e)?;
    }

    #[test]
    fn canonicalise_is_idempotent(t in arb_monomial(vec![VECTOR, SYM, ANTI, RIEMANN]), c in rational()) {
        checks::idempotent(&oracle_registry(), &t, &c)?;
    }

    #[test]
    fn canonicalise_absorbs_symmetry_signs(
        t in arb_monomial(vec![VECTOR, SYM, ANTI, RIEMANN]),
        choices in prop::collection::vec(0usize..1000, 12),
    ) {
        checks::sign_invariant(&oracle_registry(), &t, &choices)?;
    }

    #[test]
    fn canonicalise_agrees_with_brute_force(
        t1 in arb_monomial(vec![VECTOR, SYM, ANTI, RIEMANN]),
        t2 in arb_monomial(vec![VECTOR, SYM, ANTI, RIEMANN]),
        choices in prop::collection::vec(0usize..1000, 12),
        use_image in any::<bool>(),
    ) {
        let t2 = if use_image { random_image(&t1, &choices).0 } else { t2 };
        checks::matches_oracle(&oracle_registry(), &t1, &t2)?;
    }

    #[test]
    fn young_projection_is_idempotent(t in arb_monomial(vec![SYM, ANTI, RIEMANN])) {
        checks::projector_idempotent(&oracle_registry(), &t)?;
    }

    #[test]
    fn relabelling_keeps_contractions(
        t in arb_monomial(vec![VECTOR, SYM, ANTI, RIEMANN]),
        host in prop::collection::vec(0usize..8, 0..6),
    ) {
        let reg = registry(&["{a,b,c,d,e,f,g,h#}::Indices(vector)."]);
        checks::relabel_preserves_topology(&reg, &t, &host)?;
    }

    #[test]
    fn prodsort_keeps_the_value(
        names in prop::collection::vec(
            prop::sample::select(vec!["\\epsilon", "\\lambda", "\\chi", "x", "y", "z"]), 1..7),
    ) {
        checks::prodsort_preserves_value(&registry(checks::GRASSMANN_DECLARATIONS), &names)?;
    }

    #[test]
    fn vary_is_linear(
        p in prop::collection::vec((0usize..6, rational()), 1..4),
        q in prop::collection::vec((0usize..6, rational()), 1..4),
        c in rational(),
    ) {
        checks::vary_linear(&registry(checks::VARY_DECLARATIONS), &p, &q, &c)?;
    }
}
