use polyband::{
    build_oligomer, catalog, counting_function, fe_levels, fe_oracle_discretized, hmo_gap, parse_monomer, serialize_monomer,
    Model, ModelConstants, MonomerSpec,
};
use polyband::hmo::hmo_lambda;
use proptest::prelude::*;

/// Connected monomers: a random tree plus extra bonds, with two distinct links.
fn monomers() -> impl Strategy<Value = MonomerSpec> {
    (2usize..=8)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec(0usize..1000, n - 1),
                proptest::collection::vec((1..=n, 1..=n), 0..=n),
                1..=n,
                1..n,
            )
        })
        .prop_map(|(n, parents, extra, link_b, shift)| {
            let mut bonds: Vec<[usize; 2]> = parents.iter().enumerate().map(|(i, p)| [p % (i + 1) + 1, i + 2]).collect();
            for (a, b) in extra {
                let bond = [a.min(b), a.max(b)];
                if a != b && !bonds.iter().any(|x| [x[0].min(x[1]), x[0].max(x[1])] == bond) {
                    bonds.push(bond);
                }
            }
            let link_e = (link_b - 1 + shift) % n + 1;
            MonomerSpec::from_labels("random", n, &bonds, link_b, link_e, &[], n / 2).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn monomer_files_round_trip(spec in monomers()) {
        let text = serialize_monomer(&spec);
        prop_assert_eq!(parse_monomer(&text).unwrap(), spec);
    }

    #[test]
    fn hueckel_moments(spec in monomers(), m in 1usize..6) {
        let g = build_oligomer(&spec, m, false).unwrap();
        let lambda = hmo_lambda::<f64>(&g).unwrap().into_values();
        prop_assert_eq!(lambda.len(), g.n_vertices());
        let trace: f64 = lambda.iter().sum();
        let second: f64 = lambda.iter().map(|l| l * l).sum();
        prop_assert!(trace.abs() < 1e-9);
        prop_assert!((second - 2.0 * g.n_edges() as f64).abs() < 1e-9);
        prop_assert!(hmo_gap(&spec, m, &ModelConstants::<f64>::default()).unwrap() >= 0.0);
    }

    #[test]
    fn counting_function_totals(spec in monomers(), m in 1usize..6) {
        let cf = counting_function::<f64>(&spec, m, Model::Hmo, &[-10.0, 0.0, 10.0]).unwrap();
        prop_assert_eq!(cf.samples()[0].1, 0.0);
        prop_assert!((cf.samples()[2].1 - spec.n_atoms() as f64).abs() < 1e-12);
        prop_assert!(cf.samples()[1].1 <= cf.samples()[2].1);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn fe_levels_agree_with_finite_differences(spec in monomers(), m in 1usize..3) {
        let g = build_oligomer(&spec, m, false).unwrap();
        let count = 10.min(g.n_vertices() + g.n_edges());
        let exact = fe_levels::<f64>(&g, count).unwrap();
        let fd = fe_oracle_discretized::<f64>(&g, 60, count).unwrap();
        for (a, b) in exact.mu_values().iter().zip(fd.mu_values()) {
            // second-order scheme: error k⁴h²/12
            let tol = 1e-9 + a * a / (12.0 * 61.0 * 61.0) * 1.5;
            prop_assert!((a - b).abs() <= tol, "{} vs {}", a, b);
        }
    }
}

#[test]
fn single_and_double_precision_agree() {
    for spec in catalog() {
        for m in [1, 4, 10] {
            let g64 = hmo_gap(&spec, m, &ModelConstants::<f64>::default()).unwrap();
            let g32 = hmo_gap(&spec, m, &ModelConstants::<f32>::default()).unwrap();
            assert!((g64 - g32 as f64).abs() <= 1e-4 * g64.max(1.0), "{} m={m}: {g64} vs {g32}", spec.name());
        }
    }
}
