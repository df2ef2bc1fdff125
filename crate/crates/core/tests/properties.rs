use flagsqs::constructs::{boolean_sqs, netto_sqs, pgl_sqs};
use flagsqs::designs::{
    are_isomorphic, derived_design, is_block_transitive, relabel, verify_sqs, verify_sts, Design,
};
use flagsqs::field::FiniteField;
use flagsqs::groups::{a_gamma_l1, agl, pgl2, psl2, GroupSpec};
use flagsqs::kmsearch::{build_km_matrix, solve_exact_cover};
use flagsqs::perm::{PermGroup, Permutation};
use flagsqs::screen::zsigmondy;
use proptest::prelude::*;
use proptest::sample::subsequence;

fn small_groups() -> Vec<PermGroup> {
    vec![
        psl2(7).unwrap(),
        psl2(13).unwrap(),
        pgl2(9).unwrap(),
        a_gamma_l1(8).unwrap(),
        a_gamma_l1(16).unwrap(),
        agl(3, 2).unwrap(),
        PermGroup::symmetric(6),
    ]
}

fn sqs_pool() -> Vec<Design> {
    vec![
        boolean_sqs(3).unwrap(),
        boolean_sqs(4).unwrap(),
        pgl_sqs(2).unwrap(),
        netto_sqs(7).unwrap(),
        netto_sqs(19).unwrap(),
    ]
}

fn random_element(g: &PermGroup, word: &[usize]) -> Permutation {
    let gens = g.generators();
    word.iter()
        .fold(Permutation::identity(g.degree()), |acc, &i| {
            acc.then(&gens[i % gens.len()])
        })
}

fn permutation(n: usize) -> impl Strategy<Value = Permutation> {
    Just((0..n as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::from_images(images).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_ring_axioms(which in 0usize..5, a in any::<usize>(), b in any::<usize>(), c in any::<usize>()) {
        let f = [(2, 3), (3, 2), (7, 1), (2, 5), (5, 2)][which];
        let f = FiniteField::new(f.0, f.1).unwrap();
        let q = f.order();
        let (x, y, z) = (f.element(a % q), f.element(b % q), f.element(c % q));
        let lhs = f.mul(&x, &f.add(&y, &z).unwrap()).unwrap();
        let rhs = f.add(&f.mul(&x, &y).unwrap(), &f.mul(&x, &z).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let xy_z = f.mul(&f.mul(&x, &y).unwrap(), &z).unwrap();
        let x_yz = f.mul(&x, &f.mul(&y, &z).unwrap()).unwrap();
        prop_assert_eq!(xy_z, x_yz);
        prop_assert_eq!(f.add(&x, &f.neg(&x).unwrap()).unwrap(), f.zero());
        if !x.is_zero() {
            prop_assert_eq!(f.mul(&x, &f.inv(&x).unwrap()).unwrap(), f.one());
        }
        prop_assert_eq!(f.index_of(&x), a % q);
    }

    #[test]
    fn permutation_inverse_and_order(p in permutation(9)) {
        prop_assert!(p.then(&p.inverse()).is_identity());
        let mut power = Permutation::identity(9);
        for _ in 0..p.order() {
            power = power.then(&p);
        }
        prop_assert!(power.is_identity());
        prop_assert_eq!(p.fixed_point_count() + p.support().len(), 9);
    }

    #[test]
    fn order_ignores_generator_order(which in 0usize..7, seed in any::<u64>()) {
        let g = &small_groups()[which];
        let mut gens = g.generators().to_vec();
        let len = gens.len();
        gens.rotate_left((seed as usize) % len);
        if seed % 2 == 1 {
            gens.reverse();
        }
        let h = PermGroup::new(g.degree(), gens).unwrap();
        prop_assert_eq!(h.order(), g.order());
    }

    #[test]
    fn orbit_stabilizer_on_subsets(which in 0usize..7, k in 1usize..5, pick in any::<u64>()) {
        let g = &small_groups()[which];
        let n = g.degree() as u32;
        let mut set: Vec<u32> = Vec::new();
        let mut s = pick;
        while set.len() < k {
            let x = (s % n as u64) as u32;
            s = s / n as u64 + 7 * set.len() as u64 + 1;
            if !set.contains(&x) {
                set.push(x);
            } else {
                set.push((0..n).find(|y| !set.contains(y)).unwrap());
            }
        }
        let orbit = g.orbit_of_set(&set).unwrap().len() as u128;
        let stab = g.setwise_stabilizer(&set).unwrap().order();
        prop_assert_eq!(orbit * stab, g.order());
    }

    #[test]
    fn relabeled_sqs_stays_isomorphic(which in 0usize..5, seed in any::<u64>()) {
        let d = &sqs_pool()[which];
        let mut map: Vec<u32> = (0..d.v() as u32).collect();
        let mut s = seed;
        for i in (1..map.len()).rev() {
            map.swap(i, (s % (i as u64 + 1)) as usize);
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        }
        let e = relabel(d, &map).unwrap();
        prop_assert!(verify_sqs(&e).unwrap().is_valid());
        let found = are_isomorphic(d, &e).unwrap().expect("isomorphic");
        prop_assert_eq!(relabel(d, &found).unwrap(), e);
    }

    #[test]
    fn derived_designs_are_triple_systems(which in 0usize..5, x in any::<u32>()) {
        let d = &sqs_pool()[which];
        let x = x % d.v() as u32;
        let der = derived_design(d, x).unwrap();
        prop_assert_eq!(der.v(), d.v() - 1);
        prop_assert!(verify_sts(&der).unwrap().is_valid());
    }

    #[test]
    fn design_file_round_trip(which in 0usize..5) {
        let d = &sqs_pool()[which];
        let text = d.to_file_string();
        prop_assert_eq!(&Design::parse_file(&text).unwrap(), d);
    }

    #[test]
    fn boolean_planes_close_under_xor(d in 3u32..=5, pts in subsequence((0u32..32).collect::<Vec<_>>(), 3)) {
        let design = boolean_sqs(d).unwrap();
        let n = 1u32 << d;
        prop_assume!(pts.iter().all(|&p| p < n));
        let fourth = pts[0] ^ pts[1] ^ pts[2];
        let mut block = vec![pts[0], pts[1], pts[2], fourth];
        block.sort_unstable();
        prop_assert!(design.block_index(&block).is_some());
    }

    #[test]
    fn km_rows_independent_of_representative(which in 0usize..3, word in prop::collection::vec(0usize..8, 0..12)) {
        let g = [psl2(13).unwrap(), psl2(7).unwrap(), a_gamma_l1(16).unwrap()][which].clone();
        let m = build_km_matrix(&g, g.degree()).unwrap();
        let h = random_element(&g, &word);
        for (row, rep) in m.row_reps.iter().enumerate() {
            let image = h.image_of_set(rep);
            prop_assert_eq!(m.row_from_triple(&image), m.entries[row].clone());
        }
    }
}

#[test]
fn sqs_counting_identities() {
    for d in sqs_pool() {
        let v = d.v() as u64;
        let b = d.block_count() as u64;
        let r = (v - 1) * (v - 2) / 6;
        assert_eq!(24 * b, v * (v - 1) * (v - 2));
        assert!(d.point_degrees().iter().all(|&x| x as u64 == r));
        assert_eq!(d.flags().len() as u64, 4 * b);
        assert_eq!(4 * b, v * r);
    }
}

#[test]
fn orbit_lengths_partition_subsets() {
    for g in small_groups() {
        let n = g.degree() as u64;
        for k in 1..=4u64 {
            let total: u64 = g
                .orbits_on_ksubsets(k as usize)
                .unwrap()
                .iter()
                .map(|o| o.1)
                .sum();
            let binom = (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1));
            assert_eq!(total, binom, "n={n} k={k}");
        }
    }
}

#[test]
fn transitivity_implications() {
    for g in small_groups() {
        for t in 1..=4 {
            if g.is_t_transitive(t).unwrap() {
                assert!(g.is_t_homogeneous(t).unwrap());
                assert!(g.is_t_transitive(t - 1).unwrap());
            }
        }
    }
}

#[test]
fn psl2_sits_in_pgl2_with_gcd_index() {
    for q in [5u64, 7, 8, 9, 11, 13, 16, 25, 27] {
        let (s, g) = (psl2(q).unwrap(), pgl2(q).unwrap());
        assert!(s.generators().iter().all(|x| g.contains(x)));
        let index = if q % 2 == 0 { 1 } else { 2 };
        assert_eq!(g.order(), s.order() * index, "q={q}");
    }
}

#[test]
fn group_specs_round_trip() {
    for s in [
        "AGL(3,2)",
        "AGL(1,8)",
        "AGammaL(1,32)",
        "PSL(2,13)",
        "PGL(2,9)",
        "PSigmaL(2,25)",
        "PGammaL(2,9)",
        "A7_16",
        "Netto(19)",
    ] {
        let spec: GroupSpec = s.parse().unwrap();
        assert_eq!(spec.to_string(), s);
        let g = spec.build().unwrap();
        assert_eq!(g.order(), spec.formula_order(), "{s}");
        assert_eq!(g.degree() as u64, spec.degree());
    }
}

#[test]
fn block_transitive_implies_point_transitive() {
    let pairs: Vec<(Design, PermGroup)> = vec![
        (boolean_sqs(3).unwrap(), agl(3, 2).unwrap()),
        (boolean_sqs(4).unwrap(), a_gamma_l1(16).unwrap()),
        (pgl_sqs(2).unwrap(), pgl2(9).unwrap()),
        (netto_sqs(7).unwrap(), psl2(7).unwrap()),
        (netto_sqs(19).unwrap(), psl2(19).unwrap()),
    ];
    for (d, g) in pairs {
        if is_block_transitive(&d, &g).unwrap() {
            assert!(g.is_transitive());
        }
    }
}

#[test]
fn one_row_matrices_solve_by_single_entries() {
    for g in [
        pgl2(9).unwrap(),
        psl2(7).unwrap(),
        psl2(11).unwrap(),
        a_gamma_l1(8).unwrap(),
    ] {
        assert!(g.is_t_homogeneous(3).unwrap());
        let m = build_km_matrix(&g, g.degree()).unwrap();
        assert_eq!(m.rows(), 1);
        let singles: Vec<Vec<usize>> = (0..m.cols())
            .filter(|&c| m.entries[0][c] == 1)
            .map(|c| vec![c])
            .collect();
        assert_eq!(solve_exact_cover(&m), singles);
    }
}

#[test]
fn zsigmondy_shape_for_small_bases() {
    for q in 2u64..=16 {
        for n in 2u32..=20 {
            let primes = zsigmondy(q, n).unwrap();
            let exception = (q, n) == (2, 6) || (n == 2 && (q + 1).is_power_of_two());
            assert_eq!(primes.is_empty(), exception, "q={q} n={n}");
            for p in primes {
                assert_eq!(p % n as u128, 1, "primitive primes are 1 mod n");
            }
        }
    }
}
