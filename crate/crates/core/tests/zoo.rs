use latgenus::enumerate::{theta_coefficients, EnumConfig};
use latgenus::zoo::{
    gamma_spec, make_glued, make_leech, make_root_lattice, theta_by_modular_identity,
    NamedLatticeCatalog, RootComponentSpec,
};

fn cfg() -> EnumConfig {
    EnumConfig::default()
}

#[test]
fn root_lattice_root_counts() {
    for (spec, roots) in [
        (RootComponentSpec::d(24), 1104),
        (RootComponentSpec::a(1), 2),
        (RootComponentSpec::e(8), 240),
        (RootComponentSpec::e(7), 126),
        (RootComponentSpec::e(6), 72),
        (RootComponentSpec::a(12), 156),
    ] {
        let l = make_root_lattice(spec).unwrap();
        let th = theta_coefficients(&l, 2, &cfg()).unwrap();
        assert_eq!(th[&2], roots, "{spec}");
        assert_eq!(th[&2], spec.root_count());
        assert_eq!(l.determinant(), &spec.determinant().into());
    }
}

#[test]
fn catalog_a2_matches_claims() {
    let cat = NamedLatticeCatalog::builtin();
    for e in cat.entries() {
        let l = e.build().unwrap();
        let th = theta_coefficients(&l, 2, &cfg()).unwrap();
        if let Some(a2) = e.expected.a2 {
            assert_eq!(th[&2], a2, "{}", e.name);
        }
    }
}

#[test]
fn glued_lattices_contain_their_components() {
    let cat = NamedLatticeCatalog::builtin();
    for e in cat.entries() {
        let latgenus::zoo::Construction::Glued { spec, integer_summand: 0 } = &e.construction else {
            continue;
        };
        let l = make_glued(spec).unwrap();
        for gens in spec.root_generators() {
            for g in gens {
                assert!(l.contains(&g).unwrap(), "{}", e.name);
            }
        }
    }
}

#[test]
fn rank_24_theta_matches_modular_identity() {
    let cat = NamedLatticeCatalog::builtin();
    for name in ["D24", "A24", "A12^2", "A15D9", "A17E7", "E8^3"] {
        let l = cat.lattice(name).unwrap();
        let th = theta_coefficients(&l, 4, &cfg()).unwrap();
        assert_eq!(th[&1], 0);
        assert_eq!(th[&3], 0);
        let a4 = theta_by_modular_identity(th[&2] as i64, 4).unwrap();
        assert_eq!(th[&4] as i128, a4, "{name}");
    }
}

#[test]
fn paper_theta_pairs() {
    let cat = NamedLatticeCatalog::builtin();
    for (name, a2, a4) in [("A24", 600, 182160), ("A12^2", 312, 189072)] {
        let th = theta_coefficients(&cat.lattice(name).unwrap(), 4, &cfg()).unwrap();
        assert_eq!((th[&2], th[&4]), (a2, a4), "{name}");
    }
}

#[test]
fn leech_minimal_vectors() {
    let l = make_leech().unwrap();
    let th = theta_coefficients(&l, 4, &cfg()).unwrap();
    assert_eq!(th[&2], 0);
    assert_eq!(th[&4], 196560);
}

#[test]
fn gamma_family() {
    for k in 3..=6 {
        let l = make_glued(&gamma_spec(k)).unwrap();
        assert!(l.is_unimodular());
        assert_eq!(l.is_even(), k % 2 == 0);
    }
}
