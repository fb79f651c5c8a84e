use std::collections::BTreeSet;

use wordmap::roots::*;

fn all_types() -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    out.extend((1..=8).map(|r| (RootType::A, r)));
    out.extend((2..=8).map(|r| (RootType::B, r)));
    out.extend((2..=8).map(|r| (RootType::C, r)));
    out.extend((3..=8).map(|r| (RootType::D, r)));
    out.extend([(RootType::E6, 6), (RootType::E7, 7), (RootType::E8, 8), (RootType::F4, 4), (RootType::G2, 2)]);
    out
}

fn expected_count(t: RootType, r: usize) -> usize {
    match t {
        RootType::A => r * (r + 1),
        RootType::B | RootType::C => 2 * r * r,
        RootType::D => 2 * r * (r - 1),
        RootType::E6 => 72,
        RootType::E7 => 126,
        RootType::E8 => 240,
        RootType::F4 => 48,
        RootType::G2 => 12,
    }
}

/// Classical roots written out directly, doubled.
fn classical_roots(t: RootType, r: usize) -> BTreeSet<Vec<i64>> {
    let mut out = BTreeSet::new();
    let dim = if t == RootType::A { r + 1 } else { r };
    for i in 0..dim {
        for j in 0..dim {
            if i == j {
                continue;
            }
            let mut v = vec![0; dim];
            v[i] = 2;
            v[j] = -2;
            out.insert(v);
            if t != RootType::A {
                for s in [2, -2] {
                    let mut v = vec![0; dim];
                    v[i] = s;
                    v[j] = s;
                    out.insert(v);
                }
            }
        }
        let mut v = vec![0; dim];
        match t {
            RootType::B => {
                v[i] = 2;
                out.insert(v.clone());
                v[i] = -2;
                out.insert(v);
            }
            RootType::C => {
                v[i] = 4;
                out.insert(v.clone());
                v[i] = -4;
                out.insert(v);
            }
            _ => {}
        }
    }
    out
}

#[test]
fn root_counts_and_sign_coherence() {
    for (t, r) in all_types() {
        let rs = build_root_system(t, r).unwrap();
        assert_eq!(rs.num_roots(), expected_count(t, r), "{t}{r}");
        for i in 0..rs.num_roots() {
            let c = rs.coefficients(i);
            assert!(c.iter().all(|&x| x >= 0) || c.iter().all(|&x| x <= 0));
            assert_eq!(rs.is_positive(i), c.iter().all(|&x| x >= 0));
        }
    }
}

#[test]
fn classical_root_sets() {
    for (t, r) in all_types().into_iter().filter(|(t, _)| t.is_classical()) {
        let rs = build_root_system(t, r).unwrap();
        let got: BTreeSet<Vec<i64>> = rs.roots().iter().cloned().collect();
        assert_eq!(got, classical_roots(t, r), "{t}{r}");
    }
}

#[test]
fn e8_root_set() {
    let mut expected = BTreeSet::new();
    for i in 0..8 {
        for j in i + 1..8 {
            for (a, b) in [(2, 2), (2, -2), (-2, 2), (-2, -2)] {
                let mut v = vec![0; 8];
                v[i] = a;
                v[j] = b;
                expected.insert(v);
            }
        }
    }
    for mask in 0u32..256 {
        if mask.count_ones() % 2 == 0 {
            expected.insert((0..8).map(|k| if mask >> k & 1 == 1 { -1 } else { 1 }).collect());
        }
    }
    let rs = build_root_system(RootType::E8, 8).unwrap();
    let got: BTreeSet<Vec<i64>> = rs.roots().iter().cloned().collect();
    assert_eq!(got, expected);
}

#[test]
fn root_lengths_are_uniform_per_orbit() {
    for (t, r) in all_types() {
        let rs = build_root_system(t, r).unwrap();
        let lengths: BTreeSet<i64> = rs.roots().iter().map(|v| dot4(v, v)).collect();
        let simply_laced = matches!(t, RootType::A | RootType::D | RootType::E6 | RootType::E7 | RootType::E8);
        assert_eq!(lengths.len(), if simply_laced { 1 } else { 2 }, "{t}{r}");
    }
}

#[test]
fn coxeter_elements_are_fixed_point_free_orthogonal_and_permute_roots() {
    for (t, r) in all_types() {
        let rs = build_root_system(t, r).unwrap();
        let c = standard_coxeter_element(&rs);
        assert!(is_fixed_point_free(&c, &rs), "{t}{r}");
        assert!(c.is_orthogonal(), "{t}{r}");
        assert!(c.permutes_roots(&rs), "{t}{r}");
        assert!(c.representations_agree(&rs), "{t}{r}");
    }
}

#[test]
fn coxeter_numbers() {
    let h = [
        (RootType::A, 4, 5),
        (RootType::B, 4, 8),
        (RootType::C, 3, 6),
        (RootType::D, 5, 8),
        (RootType::G2, 2, 6),
        (RootType::F4, 4, 12),
        (RootType::E6, 6, 12),
        (RootType::E7, 7, 18),
        (RootType::E8, 8, 30),
    ];
    for (t, r, expected) in h {
        let rs = build_root_system(t, r).unwrap();
        assert_eq!(standard_coxeter_element(&rs).order(), expected, "{t}{r}");
        // number of roots = rank * Coxeter number
        assert_eq!(rs.num_roots(), r * expected as usize);
    }
}

#[test]
fn all_orderings_conjugate_and_share_char_poly() {
    for (t, r) in [(RootType::A, 3), (RootType::B, 3), (RootType::C, 4), (RootType::D, 4), (RootType::F4, 4), (RootType::G2, 2)] {
        let rs = build_root_system(t, r).unwrap();
        let base = standard_coxeter_element(&rs);
        let poly = base.char_poly();
        for o in orderings(r) {
            let c = coxeter_element(&rs, &o).unwrap();
            assert_eq!(c.char_poly(), poly, "{t}{r} {o:?}");
            assert!(is_fixed_point_free(&c, &rs));
        }
        let group = enumerate_weyl_group(&rs, DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert!(group.len() >= 12);
        for o in orderings(r).into_iter().step_by(5) {
            let c = coxeter_element(&rs, &o).unwrap();
            assert!(conjugate_in_weyl_group(&rs, &base, &c, DEFAULT_ENUMERATION_LIMIT).unwrap(), "{t}{r} {o:?}");
        }
    }
}

#[test]
fn char_poly_shared_up_to_rank_eight() {
    for (t, r) in [(RootType::E6, 6), (RootType::D, 6), (RootType::B, 5)] {
        let rs = build_root_system(t, r).unwrap();
        let poly = standard_coxeter_element(&rs).char_poly();
        for o in orderings(r).into_iter().step_by(97) {
            assert_eq!(coxeter_element(&rs, &o).unwrap().char_poly(), poly);
        }
    }
}

#[test]
fn longest_element_rule_matches_search() {
    for (t, r) in all_types().into_iter().filter(|&(_, r)| r <= 4) {
        let rs = build_root_system(t, r).unwrap();
        let searched = minus_one_in_weyl_group(&rs, DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(longest_element_is_minus_one(t, r).unwrap(), searched, "{t}{r}");
    }
    assert!(!longest_element_is_minus_one(RootType::E6, 6).unwrap());
    assert!(longest_element_is_minus_one(RootType::E7, 7).unwrap());
}

#[test]
fn d_type_cycle_elements() {
    for r in 3..=8 {
        let rs = build_root_system(RootType::D, r).unwrap();
        let w = d_type_cycle_element(&rs).unwrap();
        assert!(is_fixed_point_free(&w, &rs));
        assert!(w.permutes_roots(&rs));
        assert!(w.is_orthogonal());
        // -e_1 on one line, a signed (r-1)-cycle with one sign change on the rest
        let orbits = signed_orbit_lengths(&signed_permutation(&w).unwrap());
        assert_eq!(orbits, vec![2, 2 * (r - 1)]);
        assert_eq!(w.order() as usize, 2 * (r - 1));
    }
}

#[test]
fn reflections_are_involutions() {
    let rs = build_root_system(RootType::F4, 4).unwrap();
    for i in 0..rs.num_roots() {
        let s = WeylElement::reflection(&rs, i);
        assert!(s.permutes_roots(&rs));
        assert!(s.representations_agree(&rs));
        assert!(s.mul(&s).is_identity());
        assert!(!is_fixed_point_free(&s, &rs));
    }
}

#[test]
fn strictly_firm_witnesses_are_valid() {
    for (t, r) in all_types().into_iter().filter(|(t, _)| t.is_classical()) {
        let rs = build_root_system(t, r).unwrap();
        for k in 1..=r {
            let a = strictly_firm_parabolic(t, r, k).unwrap();
            assert_eq!(a, strictly_firm_parabolic(t, r, k).unwrap());
            match a.witness_index {
                Some(b) => {
                    assert!(!a.passes);
                    assert!(rs.is_positive(b));
                    for i in (0..r).filter(|&i| i != k - 1) {
                        assert_eq!(dot4(rs.simple_root(i), rs.root(b)), 0);
                    }
                }
                None => assert!(a.passes),
            }
        }
    }
}

#[test]
fn power_map_is_multiplicative_in_m() {
    for (t, r) in all_types() {
        for iso in [Isogeny::SimplyConnected, Isogeny::Adjoint] {
            for p in [1, 2, 3, 5] {
                for m1 in 1..=20u64 {
                    for m2 in 1..=20u64 {
                        if num_integer::gcd(m1, m2) != 1 {
                            continue;
                        }
                        let both = power_map_surjective(t, r, iso, p, m1 * m2).unwrap();
                        let each = power_map_surjective(t, r, iso, p, m1).unwrap()
                            && power_map_surjective(t, r, iso, p, m2).unwrap();
                        assert_eq!(both, each);
                    }
                }
                assert!(power_map_surjective(t, r, iso, p, 1).unwrap());
            }
        }
    }
}

#[test]
fn json_round_trip_shape() {
    let rs = build_root_system(RootType::F4, 4).unwrap();
    let v = rs.to_json();
    assert_eq!(v["type"], "F4");
    assert_eq!(v["simple_roots"].as_array().unwrap().len(), 4);
    assert_eq!(v["positive_roots"].as_array().unwrap().len(), 24);
    let half = v["roots"][rs.simple_roots()[3]][0].clone();
    assert_eq!(half, serde_json::json!([1, 2]));
}
