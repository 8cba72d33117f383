use latgenus::enumerate::{theta_coefficients, EnumConfig};
use latgenus::genus::adjunction_genus_bound;
use latgenus::lorentz::*;
use latgenus::zoo::{NamedLatticeCatalog, RootComponentSpec};
use latgenus::{Error, LatticeHandle};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn class(s: &str) -> LorentzClass {
    s.parse().unwrap()
}

fn leech_class() -> LorentzClass {
    let mut b = vec![51];
    b.extend((3..=47).rev().step_by(2));
    LorentzClass::from_i64(145, &b)
}

#[test]
fn class_squares() {
    assert_eq!(class("(7|5,1^23)").square(), 1.into());
    assert_eq!(leech_class().square(), 1.into());
    assert_eq!(leech_class().n(), 24);
    assert!(matches!(complement_lattice(&class("(1|1)")), Err(Error::ClassSquareNotOne(_))));
    assert_eq!(class("(8|4,3,2^8,1^6)").to_string(), "(8|4,3,2^8,1^6)");
}

#[test]
fn adjunction_genera() {
    for (c, g) in [
        ("(7|5,1^23)", 5),
        ("(5|1^24)", 6),
        ("(11|3^12,1^12)", 9),
        ("(11|5,3^9,1^14)", 8),
        ("(9|3^7,1^17)", 7),
        ("(9|3^8,1^8)", 4),
        ("(8|4,3,2^8,1^6)", 4),
        ("(7|2^10,1^8)", 5),
    ] {
        assert_eq!(adjunction_genus(&class(c)).unwrap(), g, "{c}");
        assert_eq!(adjunction_genus_bound(&class(c)).unwrap(), g, "{c}");
    }
    // a line
    assert_eq!(adjunction_genus(&class("(1|0)")).unwrap(), 0);
    // (3|2,2) has square 1 and genus (4 - 9 + 3) / 2 < 0
    assert_eq!(adjunction_genus(&class("(3|2,2)")), Err(Error::GenusParity));
}

fn components(labels: &[&str]) -> Vec<RootComponentSpec> {
    let mut v: Vec<RootComponentSpec> = labels.iter().map(|s| s.parse().unwrap()).collect();
    v.sort();
    v
}

#[test]
fn rank_24_complements() {
    let catalog = NamedLatticeCatalog::builtin();
    for (c, roots, name) in [
        ("(7|5,1^23)", vec!["D24"], "D24"),
        ("(5|1^24)", vec!["A24"], "A24"),
        ("(11|3^12,1^12)", vec!["A12", "A12"], "A12^2"),
        ("(11|5,3^9,1^14)", vec!["A15", "D9"], "A15D9"),
        ("(9|3^7,1^17)", vec!["A17", "E7"], "A17E7"),
    ] {
        let v = class(c);
        let l = complement_lattice(&v).unwrap();
        assert_eq!(l.rank(), 24);
        assert!(l.is_unimodular());
        assert!(l.is_even(), "{c}");
        assert!(even_complement_test(&v).unwrap());
        let fp = root_fingerprint(&l).unwrap();
        assert_eq!(fp.components, components(&roots), "{c}");
        assert!(fp.spans_full_rank);
        let id = identify_unimodular(&l, &catalog).unwrap();
        assert_eq!(id.name(), Some(name), "{c}");
    }
}

#[test]
fn leech_complement_has_no_roots() {
    let l = complement_lattice(&leech_class()).unwrap();
    assert!(l.is_even());
    let fp = root_fingerprint(&l).unwrap();
    assert!(fp.components.is_empty());
    assert_eq!(fp.root_count, 0);
    let id = identify_unimodular(&l, &NamedLatticeCatalog::builtin()).unwrap();
    assert_eq!(id.name(), Some("Leech"));
}

#[test]
fn e8_squared_complement() {
    let v = class("(9|3^8,1^8)");
    let l = complement_lattice(&v).unwrap();
    assert!(l.is_even());
    assert!(even_complement_test(&v).unwrap());
    let id = identify_unimodular(&l, &NamedLatticeCatalog::builtin()).unwrap();
    assert_eq!(id.fingerprint.components, components(&["E8", "E8"]));
    assert_eq!(id.name(), Some("E8^2"));
}

#[test]
fn d8_squared_complement_needs_the_tests() {
    let v = class("(8|4,3,2^8,1^6)");
    let l = complement_lattice(&v).unwrap();
    assert!(!l.is_even());
    assert!(!even_complement_test(&v).unwrap());
    let id = identify_unimodular(&l, &NamedLatticeCatalog::builtin()).unwrap();
    assert_eq!(id.fingerprint.components, components(&["D8", "D8"]));
    assert_eq!(id.half_sums.len(), 2);
    assert!(id.half_sums.iter().all(|h| !h.in_lattice));
    assert_eq!(id.odd_witness.as_ref().unwrap().1, 3);
    let gone: Vec<&str> = id.eliminated.iter().map(|(n, _)| n.as_str()).collect();
    assert_eq!(gone, ["E8^2", "E8+Z8", "Z16"]);
    assert_eq!(id.name(), Some("D8^2"));
    // h - e3 - e4 - e5 - e6 is in the complement with norm 3
    let u = class("(1|0,0,1^4,0^10)");
    assert!(l.contains(&u.vector()).unwrap());
    assert_eq!(l.norm(&u.vector()).unwrap(), num_rational::BigRational::from_integer(3.into()));
}

#[test]
fn catalog_lattices_identify_themselves() {
    let catalog = NamedLatticeCatalog::builtin();
    for name in ["E8", "E8^2", "E7^2", "D8^2", "A15", "A17A1", "A9^2", "E8+Z8"] {
        let l = catalog.lattice(name).unwrap();
        let id = identify_unimodular(&l, &catalog).unwrap();
        assert_eq!(id.name(), Some(name), "{name}: {:?}", id.status);
    }
}

#[test]
fn fingerprint_is_independent_of_the_functional() {
    let l = complement_lattice(&class("(11|5,3^9,1^14)")).unwrap();
    let reference = root_system(&l, &Functional::Lexicographic).unwrap().fingerprint;
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut runs = 0;
    while runs < 5 {
        let w: Vec<i64> = (0..l.rank()).map(|_| rng.gen_range(-1_000_000..=1_000_000)).collect();
        match root_system(&l, &Functional::Weights(w)) {
            Ok(rs) => {
                assert_eq!(rs.fingerprint, reference);
                runs += 1;
            }
            Err(Error::Invalid(_)) => continue,
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn plumbing_grams() {
    let single = plumbing_gram(&PlumbingGraph::new(vec![2], vec![]).unwrap()).unwrap();
    assert_eq!(single.determinant(), &2.into());
    assert_eq!(
        PlumbingGraph::new(vec![2, 2, 2], vec![(0, 1), (1, 2), (2, 0)]),
        Err(Error::NotATree)
    );
    assert_eq!(PlumbingGraph::new(vec![2, 2, 2], vec![(0, 1)]), Err(Error::NotATree));
    for p in builtin_plumbings() {
        let l = plumbing_gram(&p.graph().unwrap()).unwrap();
        assert_eq!(l.determinant(), &1.into(), "{}", p.name);
    }
    let d24 = plumbing_gram(&builtin_plumbings()[0].graph().unwrap()).unwrap();
    assert!(d24.is_even());
}

#[test]
fn shipped_plumbings_embed() {
    let catalog = NamedLatticeCatalog::builtin();
    for p in builtin_plumbings() {
        let r = p.verify(&catalog).unwrap();
        assert!(r.holds(), "{}: {r:?}", p.name);
    }
}

#[test]
fn embedding_implies_equal_theta_series() {
    let catalog = NamedLatticeCatalog::builtin();
    let cfg = EnumConfig::default();
    for p in builtin_plumbings() {
        let l = catalog.lattice(p.lattice.as_deref().unwrap()).unwrap();
        let g = plumbing_gram(&p.graph().unwrap()).unwrap();
        assert_eq!(
            theta_coefficients(&l, 4, &cfg).unwrap(),
            theta_coefficients(&g, 4, &cfg).unwrap(),
            "{}",
            p.name
        );
    }
}

#[test]
fn foreign_basis_vector_is_named() {
    let catalog = NamedLatticeCatalog::builtin();
    let mut p = builtin_plumbings().into_iter().find(|p| p.name.starts_with("A9")).unwrap();
    p.basis[4] = "(1/2^20)".into();
    assert_eq!(p.verify(&catalog), Err(Error::BasisNotInLattice { index: 4 }));
}

#[test]
fn wrong_weight_is_reported() {
    let catalog = NamedLatticeCatalog::builtin();
    let mut p = builtin_plumbings().into_iter().find(|p| p.name.starts_with("D24")).unwrap();
    p.weights[0] = 4;
    let r = p.verify(&catalog).unwrap();
    assert!(!r.holds());
    assert_eq!(r.mismatch.as_ref().map(|m| (m.0, m.1)), Some((0, 0)));
}

#[test]
fn a17a1_plumbing_roots_force_the_lattice() {
    let catalog = NamedLatticeCatalog::builtin();
    let p = builtin_plumbings().into_iter().find(|p| p.name.starts_with("A17A1")).unwrap();
    let basis = p.basis_vectors().unwrap();
    let roots: Vec<_> = basis
        .iter()
        .zip(&p.weights)
        .filter(|(_, &w)| w == 2)
        .map(|(v, _)| v.clone())
        .collect();
    let l = catalog.lattice("A17A1").unwrap();
    let sub = LatticeHandle::from_generators(l.ambient().unwrap(), roots).unwrap();
    let fp = root_fingerprint(&sub).unwrap();
    assert_eq!(fp.components, components(&["A16", "A1"]));
    assert_eq!(
        identify_overlattice(&catalog, 18, &fp.components),
        IdentificationStatus::Identified("A17A1".into())
    );
}

#[test]
fn classification_rows_match_their_lattices() {
    let catalog = NamedLatticeCatalog::builtin();
    let mut checked = 0;
    for row in catalog.classification() {
        let Ok(l) = catalog.lattice(&row.name) else { continue };
        assert_eq!(l.rank(), row.rank, "{}", row.name);
        assert_eq!(l.is_even(), row.even, "{}", row.name);
        assert_eq!(root_fingerprint(&l).unwrap().components, row.roots, "{}", row.name);
        checked += 1;
    }
    assert!(checked >= 15, "{checked}");
}
