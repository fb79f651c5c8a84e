//! Acceptance criteria. Each criterion prints one PASS/FAIL line.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;
use wordmap::finite::{
    class_product_covers, conjugacy_classes, count_tw, count_ww, word_image, ElementSet, EngineOptions,
    GroupKind, GroupTable, Mat2,
};
use wordmap::roots::{
    build_root_system, coxeter_element, d_type_cycle_element, enumerate_weyl_group, is_fixed_point_free,
    power_map_surjective, signed_orbit_lengths, signed_permutation, standard_coxeter_element,
    strictly_firm_parabolic, Isogeny, RootType, DEFAULT_ENUMERATION_LIMIT,
};
use wordmap::symbolic::{f_w, is_in_f2, ng_operator_analysis, prime_set, trace_polynomial, WeightModule};
use wordmap::symbolic::trace::trivial_at_identity;
use wordmap::{parse_word, Family, Letter, NielsenMove, Word};

/// Criteria that cannot hold as stated; they must keep failing, so that a
/// change in behaviour is noticed.
const UNATTAINABLE: &[usize] = &[7];

struct Outcome {
    id: usize,
    name: &'static str,
    pass: bool,
    detail: String,
}

fn word(text: &str) -> Word {
    parse_word(text, None).unwrap().into_word().unwrap()
}

fn sl2(q: u64) -> GroupTable {
    GroupTable::for_q(GroupKind::Sl2, q).unwrap()
}

fn criterion_1() -> (bool, String) {
    let w = Word::family(&Family::Commutator).unwrap();
    let opts = EngineOptions::with_workers(1);
    let mut pass = true;
    let mut detail = Vec::new();
    for q in [5u64, 7, 9] {
        let g = sl2(q);
        let start = Instant::now();
        let size = word_image(&w, &g, &opts).unwrap().count() as u64;
        let elapsed = start.elapsed();
        let ok = size == q * (q * q - 1) && elapsed < Duration::from_secs(10);
        pass &= ok;
        detail.push(format!("q={q}: {size}/{} in {:.2}s", q * (q * q - 1), elapsed.as_secs_f64()));
    }
    (pass, detail.join(", "))
}

fn criterion_2() -> (bool, String) {
    let start = Instant::now();
    let c = word("[x,y]");
    let f = f_w(&c).unwrap();
    let computed: SparsePoly = f
        .terms()
        .map(|(e, v)| (e.clone(), i64::try_from(v).unwrap()))
        .collect();
    // t1 s1 (1 - t2^2) + t2 s2 (t1^2 - 1), exponents [t1, t2, s1, s2]
    let expected: SparsePoly = [
        (vec![1, 0, 1, 0], 1),
        (vec![1, 2, 1, 0], -1),
        (vec![2, 1, 0, 1], 1),
        (vec![0, 1, 0, 1], -1),
    ]
    .into();
    let oracle = magnus_oracle(&c);
    let oracle_ok = oracle.alpha.iter().all(|&a| a == 0) && oracle.beta == computed;
    let two: BTreeSet<BigInt> = [BigInt::from(2)].into();
    let three: BTreeSet<BigInt> = [BigInt::from(3)].into();
    let s1 = prime_set(&c).unwrap().is_empty();
    let s2 = prime_set(&word("[x,y]^2")).unwrap() == two;
    let s3 = prime_set(&word("[x,y]^3")).unwrap() == three;
    let f2 = is_in_f2(&word("[[x1,x2],[x3,x4]]")).unwrap();
    let elapsed = start.elapsed();
    let pass = computed == expected && oracle_ok && s1 && s2 && s3 && f2 && elapsed < Duration::from_secs(1);
    (
        pass,
        format!(
            "f = {f}; closed form {}, oracle {oracle_ok}, S sets {s1}/{s2}/{s3}, F2 {f2}, {:.3}s",
            computed == expected,
            elapsed.as_secs_f64()
        ),
    )
}

fn random_word(rng: &mut ChaCha8Rng, arity: u32, max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    let letters: Vec<Letter> = (0..len)
        .map(|_| Letter::new(rng.gen_range(1..=arity), if rng.gen_bool(0.5) { 1 } else { -1 }))
        .collect();
    Word::from_letters(letters, arity)
}

fn criterion_3() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0003);
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mut mismatches = 0;
    let mut done = 0;
    while done < 100 {
        let arity = rng.gen_range(2..=3);
        let w = random_word(&mut rng, arity, 12);
        if w.is_identity() || !w.in_commutator_subgroup() || w.len() > 12 {
            continue;
        }
        let p = primes[rng.gen_range(0..primes.len())];
        let n = arity as usize;
        let t: Vec<u64> = (0..n).map(|_| rng.gen_range(1..p)).collect();
        let s: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let f = f_w(&w).unwrap().reduce_mod(p);
        let mut values = t.clone();
        values.extend(&s);
        let symbolic = f.eval_mod(p, &values).unwrap();
        let tuple: Vec<PMat> = (0..n).map(|i| [t[i], s[i], 0, modinv(t[i], p)]).collect();
        let direct = eval_word(&w, &tuple, p);
        if direct[0] != 1 || direct[2] != 0 || direct[3] != 1 || direct[1] != symbolic {
            mismatches += 1;
        }
        done += 1;
    }
    (mismatches == 0, format!("{done} cases, {mismatches} mismatches"))
}

/// Random element of `SL_2(Z)` as a product of elementary matrices.
fn random_sl2z(rng: &mut ChaCha8Rng) -> ZMat {
    let mut m: ZMat = [1, 0, 0, 1];
    for _ in 0..rng.gen_range(1..4) {
        let k = rng.gen_range(-2..=2);
        let e: ZMat = if rng.gen_bool(0.5) { [1, k, 0, 1] } else { [1, 0, k, 1] };
        m = zmul(&m, &e);
    }
    m
}

fn criterion_4() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let psi_x = trace_polynomial(&word("x"), &[]).unwrap();
    let x_ok = psi_x.poly().num_terms() == 2
        && psi_x.coefficient(0, 0) == BigInt::from(2)
        && psi_x.coefficient(1, 1) == BigInt::from(1);

    let psi_c = trace_polynomial(&word("[x1,x2]"), &[[1, 1, 0, 1]]).unwrap();
    let mut route_mismatch = 0;
    for _ in 0..50 {
        let x: i128 = rng.gen_range(-1000..=1000);
        let y: i128 = rng.gen_range(-1000..=1000);
        let a: ZMat = [1, x, y, 1 + x * y];
        let b: ZMat = [1, 1, 0, 1];
        let (ta, tb, tab) = (ztrace(&a), ztrace(&b), ztrace(&zmul(&a, &b)));
        let identity_route = ta * ta + tb * tb + tab * tab - ta * tb * tab - 2;
        if psi_c.eval(&BigInt::from(x), &BigInt::from(y)) != BigInt::from(identity_route) {
            route_mismatch += 1;
        }
    }

    let mut at_origin_bad = 0;
    let mut found = 0;
    while found < 20 {
        let arity = rng.gen_range(2..=3);
        let w = random_word(&mut rng, arity, 10);
        let mut images = vec![Word::identity(arity)];
        images.extend((2..=arity).map(Word::generator));
        if w.max_generator() < 2 || !w.substitute(&images).is_identity() {
            continue;
        }
        let consts: Vec<[i64; 4]> = (1..arity)
            .map(|_| random_sl2z(&mut rng).map(|e| e as i64))
            .collect();
        if !trivial_at_identity(&w, &consts) {
            continue;
        }
        let psi = trace_polynomial(&w, &consts).unwrap();
        if psi.eval(&BigInt::from(0), &BigInt::from(0)) != BigInt::from(2) {
            at_origin_bad += 1;
        }
        found += 1;
    }
    (
        x_ok && route_mismatch == 0 && at_origin_bad == 0,
        format!("psi(x) = {psi_x}; route mismatches {route_mismatch}/50; psi(0,0) != 2 in {at_origin_bad}/20"),
    )
}

fn criterion_5() -> (bool, String) {
    let six = WeightModule::new(vec![5, 3, 1, -1, -3, -5], "V5").unwrap();
    let a = ng_operator_analysis(&six, 3, 9).unwrap();
    let adj = WeightModule::new(vec![2, 0, -2], "adjoint").unwrap();
    let b = ng_operator_analysis(&adj, 3, 9).unwrap();
    let kernel: BTreeSet<i64> = a.kernel_weights.iter().copied().collect();
    let pass = a.singular && kernel == [3, -3].into() && !b.singular && b.surjective;
    (
        pass,
        format!("V5 singular={} kernel={:?}; adjoint surjective={}", a.singular, a.kernel_weights, b.surjective),
    )
}

/// Shipped (type, rank) pairs.
fn shipped_types() -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    out.extend((1..=8).map(|r| (RootType::A, r)));
    out.extend((2..=8).map(|r| (RootType::B, r)));
    out.extend((2..=8).map(|r| (RootType::C, r)));
    out.extend((3..=8).map(|r| (RootType::D, r)));
    out.extend([(RootType::E6, 6), (RootType::E7, 7), (RootType::E8, 8), (RootType::F4, 4), (RootType::G2, 2)]);
    out
}

/// Center order of the simply connected group and product of bad primes,
/// from the standard tables.
fn reference_data(t: RootType, r: usize) -> (u64, u64) {
    match t {
        RootType::A => (r as u64 + 1, 1),
        RootType::B | RootType::C => (2, 2),
        RootType::D => (4, 2),
        RootType::E6 => (3, 6),
        RootType::E7 => (2, 6),
        RootType::E8 => (1, 30),
        RootType::F4 => (1, 6),
        RootType::G2 => (1, 6),
    }
}

fn criterion_6() -> (bool, String) {
    let mut checked = 0;
    let mut disagree = 0;
    for (t, r) in shipped_types() {
        let (z_sc, bad) = reference_data(t, r);
        let mut isogenies = vec![(Isogeny::SimplyConnected, z_sc), (Isogeny::Adjoint, 1)];
        isogenies.extend((1..=z_sc).filter(|d| z_sc % d == 0).map(|d| (Isogeny::CenterOrder(d), d)));
        for (iso, z) in isogenies {
            for p in [1u64, 2, 3, 5, 7, 11] {
                for m in 1..=60u64 {
                    let got = power_map_surjective(t, r, iso, p, m).unwrap();
                    if got != (gcd(m, p * bad * z) == 1) {
                        disagree += 1;
                    }
                    checked += 1;
                }
            }
        }
    }
    let e8: Vec<u64> = (1..=60)
        .filter(|&m| power_map_surjective(RootType::E8, 8, Isogeny::Adjoint, 1, m).unwrap())
        .collect();
    let e8_expected: Vec<u64> = (1..=60).filter(|&m| gcd(m, 30) == 1).collect();
    (
        disagree == 0 && e8 == e8_expected,
        format!("{checked} table entries, {disagree} disagreements; E8 adjoint matches gcd(m,30)=1: {}", e8 == e8_expected),
    )
}

fn criterion_7() -> (bool, String) {
    let start = Instant::now();
    let mut failures = Vec::new();
    for (t, r) in shipped_types() {
        let rs = build_root_system(t, r).unwrap();
        let c = standard_coxeter_element(&rs);
        if !is_fixed_point_free(&c, &rs) || !c.permutes_roots(&rs) || !c.is_orthogonal() {
            failures.push(format!("{t}{r}"));
        }
    }
    let d4 = build_root_system(RootType::D, 4).unwrap();
    let w = d_type_cycle_element(&d4).unwrap();
    let fpf = is_fixed_point_free(&w, &d4);
    let minus: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| -((i == j) as i64)).collect()).collect();
    let m4_is_minus_one = w.pow(4).simple == minus;
    let orbits = signed_orbit_lengths(&signed_permutation(&w).unwrap());
    // M^4 = -I forces a single signed 4-cycle with one sign change, which
    // W(D_4) does not contain.
    let any_in_group = enumerate_weyl_group(&d4, DEFAULT_ENUMERATION_LIMIT)
        .unwrap()
        .iter()
        .any(|m| {
            let mut p = m.clone();
            for _ in 0..3 {
                p = (0..4)
                    .map(|i| (0..4).map(|j| (0..4).map(|k| p[i][k] * m[k][j]).sum()).collect())
                    .collect();
            }
            p == minus
        });
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && fpf && m4_is_minus_one && elapsed < Duration::from_secs(5);
    (
        pass,
        format!(
            "Coxeter non-FPF: {failures:?}; D4 w* FPF={fpf}, order {}, orbits on ±e_i {orbits:?}, M^4=-I {m4_is_minus_one}, \
             some element of W(D4) has M^4=-I: {any_in_group}; {:.2}s",
            w.order(),
            elapsed.as_secs_f64()
        ),
    )
}

fn criterion_8() -> (bool, String) {
    let mut bad = Vec::new();
    for r in 2..=6 {
        for k in 1..=r {
            if !strictly_firm_parabolic(RootType::A, r, k).unwrap().passes {
                bad.push(format!("A{r} k={k}"));
            }
        }
    }
    for t in [RootType::B, RootType::C, RootType::D] {
        for r in 3..=8 {
            for k in 3..=r {
                if !strictly_firm_parabolic(t, r, k).unwrap().passes {
                    bad.push(format!("{t}{r} k={k}"));
                }
            }
        }
    }
    let b3 = strictly_firm_parabolic(RootType::B, 3, 1).unwrap();
    let witness: Option<Vec<i64>> = b3
        .witness
        .as_ref()
        .map(|w| w.iter().map(|[n, d]| { assert_eq!(*d, 1); *n }).collect());
    // positive roots of B3: e_i and e_i ± e_j with i < j
    let mut positive: Vec<Vec<i64>> = Vec::new();
    for i in 0..3 {
        let mut v = vec![0; 3];
        v[i] = 1;
        positive.push(v);
        for j in i + 1..3 {
            for s in [1, -1] {
                let mut v = vec![0; 3];
                v[i] = 1;
                v[j] = s;
                positive.push(v);
            }
        }
    }
    let x = [vec![0, 1, -1], vec![0, 0, 1]];
    let witness_ok = match &witness {
        Some(w) => {
            positive.contains(w) && x.iter().all(|a| a.iter().zip(w).map(|(p, q)| p * q).sum::<i64>() == 0)
        }
        None => false,
    };
    let pass = bad.is_empty() && !b3.passes && witness == Some(vec![1, 0, 0]) && witness_ok;
    (pass, format!("failing cases {bad:?}; B3 k=1 witness {witness:?} valid={witness_ok}"))
}

fn criterion_9() -> (bool, String) {
    let g = sl2(3);
    let opts = EngineOptions::default();
    let c = word("[x,y]");
    let ww = count_ww(&c, &g, &opts).unwrap();
    let naive = naive_solution_count(&c, 3);
    let classes = conjugacy_classes(&g).len();
    let mut violations = Vec::new();
    for (name, w) in corpus() {
        let a = count_ww(&w, &g, &opts).unwrap();
        let b = count_tw(&w, &g, &opts).unwrap();
        if a > b {
            violations.push(name);
        }
    }
    let pass = ww == 168 && naive == 168 && classes == 7 && ww == (g.order() * classes) as u128 && violations.is_empty();
    (
        pass,
        format!("|W| = {ww}, nested loops {naive}, {classes} classes, W<=T violations {violations:?}"),
    )
}

fn to_pmat(m: &Mat2) -> PMat {
    [m.a as u64, m.b as u64, m.c as u64, m.d as u64]
}

fn naive_as_set(g: &GroupTable, w: &Word, p: u64) -> ElementSet {
    let idx = naive_image(w, p).into_iter().map(|m| {
        g.index_of(&Mat2::new(m[0] as u32, m[1] as u32, m[2] as u32, m[3] as u32))
            .expect("SL2 element")
    });
    ElementSet::from_indices(g.order(), idx)
}

fn criterion_10() -> (bool, String) {
    let mut bad = Vec::new();
    let mut runs = 0;
    for p in [3u64, 5] {
        let g = sl2(p);
        for (name, w) in corpus() {
            let reference = naive_as_set(&g, &w, p);
            for workers in [1, 2, 8] {
                let img = word_image(&w, &g, &EngineOptions::with_workers(workers)).unwrap();
                runs += 1;
                let as_mats: BTreeSet<PMat> = img.iter().map(|i| to_pmat(&g.element(i))).collect();
                if img.to_hex() != reference.to_hex() || as_mats != naive_image(&w, p) {
                    bad.push(format!("p={p} {name} workers={workers}"));
                }
            }
        }
    }
    (bad.is_empty(), format!("{runs} runs, mismatches {bad:?}"))
}

fn conjugation_closed(g: &GroupTable, s: &ElementSet) -> bool {
    s.iter().all(|x| {
        (0..g.order() as u32).all(|h| s.contains(g.mul_idx(g.mul_idx(h, x), g.inv_idx(h))))
    })
}

fn set_product(g: &GroupTable, a: &ElementSet, b: &ElementSet) -> ElementSet {
    let mut out = ElementSet::empty(g.order());
    for x in a.iter() {
        for y in b.iter() {
            out.insert(g.mul_idx(x, y));
        }
    }
    out
}

fn criterion_11() -> (bool, String) {
    let opts = EngineOptions::default();
    let mut problems = Vec::new();
    for q in [3u64, 5] {
        let g = sl2(q);
        for (name, w) in corpus() {
            let img = word_image(&w, &g, &opts).unwrap();
            if !conjugation_closed(&g, &img) {
                problems.push(format!("q={q} {name} not normal"));
            }
            if !img.contains(g.identity_index()) {
                problems.push(format!("q={q} {name} misses 1"));
            }
        }
    }
    let g = sl2(5);
    let x = word("x").with_arity(2);
    let xy = x.apply_nielsen(&[NielsenMove::MultiplyRight(1, 2)]).unwrap();
    let nielsen_ok = word_image(&x, &g, &opts).unwrap() == word_image(&xy, &g, &opts).unwrap();
    if !nielsen_ok {
        problems.push("x vs xy".into());
    }
    for (name, w) in corpus() {
        let w2 = w.clone().with_arity(2);
        let moved = w2.apply_nielsen(&[NielsenMove::MultiplyRight(1, 2)]).unwrap();
        if word_image(&w2, &g, &opts).unwrap() != word_image(&moved, &g, &opts).unwrap() {
            problems.push(format!("Nielsen move on {name}"));
        }
    }
    let pairs = [("x^2", "x^3"), ("[x,y]", "x^2"), ("x^5", "x^4"), ("x^6", "x^10")];
    for (a, b) in pairs {
        let w1 = word(a);
        let w2 = word(b);
        let joined = w1.mul(&w2.shift_variables(w1.arity()));
        let lhs = word_image(&joined, &g, &opts).unwrap();
        let rhs = set_product(&g, &word_image(&w1, &g, &opts).unwrap(), &word_image(&w2, &g, &opts).unwrap());
        if lhs != rhs {
            problems.push(format!("disjoint product {a} * {b}"));
        }
    }
    (problems.is_empty(), format!("problems {problems:?}"))
}

fn criterion_12() -> (bool, String) {
    let start = Instant::now();
    let a5 = GroupTable::for_q(GroupKind::Psl2, 5).unwrap();
    let classes = conjugacy_classes(&a5);
    let covering: Vec<usize> = classes
        .iter()
        .filter(|c| class_product_covers(&[(*c).clone(), (*c).clone()], &a5).unwrap())
        .map(|c| c.size)
        .collect();
    let elapsed = start.elapsed();
    (
        a5.order() == 60 && !covering.is_empty() && elapsed < Duration::from_secs(10),
        format!(
            "|G| = {}, {} classes, sizes of classes with C^2 = G: {covering:?}, {:.2}s",
            a5.order(),
            classes.len(),
            elapsed.as_secs_f64()
        ),
    )
}

#[test]
fn acceptance() {
    type Check = fn() -> (bool, String);
    let criteria: [(&'static str, Check); 12] = [
        ("commutator surjectivity", criterion_1),
        ("Magnus obstruction", criterion_2),
        ("specialization coherence", criterion_3),
        ("trace polynomial", criterion_4),
        ("N_g criterion", criterion_5),
        ("power map predicate", criterion_6),
        ("Coxeter fixed-point-freeness", criterion_7),
        ("strictly firm parabolics", criterion_8),
        ("variety point counts", criterion_9),
        ("engine oracle equivalence", criterion_10),
        ("image invariance", criterion_11),
        ("class C with C^2 = G", criterion_12),
    ];
    let outcomes: Vec<Outcome> = criteria
        .iter()
        .enumerate()
        .map(|(i, (name, f))| {
            let (pass, detail) = f();
            Outcome {
                id: i + 1,
                name,
                pass,
                detail,
            }
        })
        .collect();
    let mut out = std::io::stdout().lock();
    for o in &outcomes {
        writeln!(
            out,
            "criterion {:>2} {}: {} ({})",
            o.id,
            if o.pass { "PASS" } else { "FAIL" },
            o.name,
            o.detail
        )
        .unwrap();
    }
    drop(out);
    for o in &outcomes {
        if UNATTAINABLE.contains(&o.id) {
            assert!(!o.pass, "criterion {} now passes; update UNATTAINABLE", o.id);
        } else {
            assert!(o.pass, "criterion {} failed: {}", o.id, o.detail);
        }
    }
}

#[test]
fn coxeter_orderings_share_char_poly() {
    let rs = build_root_system(RootType::B, 3).unwrap();
    let base = coxeter_element(&rs, &[1, 2, 3]).unwrap().char_poly();
    assert_eq!(coxeter_element(&rs, &[3, 1, 2]).unwrap().char_poly(), base);
}
