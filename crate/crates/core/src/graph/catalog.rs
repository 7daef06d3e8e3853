//! Built-in monomers.
//!
//! Atom numbering of the benzene-based monomers is a convention: the ring is
//! 1..6 in cyclic order, the previous monomer attaches at atom 1, and the
//! para/meta naming fixes the position of the outgoing link (4 or 3).

use super::MonomerSpec;

const BENZENE: [[usize; 2]; 6] = [[1, 2], [2, 3], [3, 4], [4, 5], [5, 6], [1, 6]];

/// The six polymers PA, PPf, PPP, PMP, PPV and PmPV, in that order.
pub fn catalog() -> Vec<MonomerSpec> {
    let build = |name, n_atoms, bonds: &[[usize; 2]], link_b, link_e, dangling: &[usize], n| {
        MonomerSpec::from_labels(name, n_atoms, bonds, link_b, link_e, dangling, n)
            .expect("built-in monomer is valid")
    };
    let vinylene = |ring_atom: usize| {
        let mut bonds = BENZENE.to_vec();
        bonds.extend([[ring_atom, 7], [7, 8]]);
        bonds
    };
    vec![
        // polyacetylene; free-electron chains are capped at both ends
        build("PA", 2, &[[1, 2]], 2, 1, &[1, 2], 1),
        // pentafulvene: five-ring 1..5 with the exocyclic atom 6 on atom 4
        build(
            "PPf",
            6,
            &[[1, 2], [2, 3], [3, 4], [4, 5], [1, 5], [4, 6]],
            5,
            3,
            &[],
            3,
        ),
        build("PPP", 6, &BENZENE, 4, 1, &[], 3),
        build("PMP", 6, &BENZENE, 3, 1, &[], 3),
        // the terminal vinylene is dropped so that PPV2 is stilbene (= PmPV2)
        build("PPV", 8, &vinylene(4), 8, 1, &[], 4).with_trim_last(&[7, 8]).expect("valid trim"),
        build("PmPV", 8, &vinylene(3), 8, 1, &[], 4).with_trim_last(&[7, 8]).expect("valid trim"),
    ]
}

/// Looks a built-in monomer up by name, ignoring ASCII case.
pub fn catalog_entry(name: &str) -> Option<MonomerSpec> {
    catalog().into_iter().find(|s| s.name().eq_ignore_ascii_case(name))
}
