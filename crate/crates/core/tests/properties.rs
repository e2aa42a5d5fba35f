use monodromy::braid::{band_generator, braid_equal, braid_perm, full_twist, BraidWord};
use monodromy::cover::{check_compatibility, fiber_genus, surface_h1, build_fiber_surface, CoveringData};
use monodromy::factor::{
    delete_node_pair, global_conjugate, hurwitz_equivalent, hurwitz_move, insert_node_pair, product, validate, Direction,
    Factorization, SearchOptions, SearchOutcome,
};
use monodromy::lefschetz::{euler_characteristic, fiber_sum, sp_validity, total_space_h1, FibSumTwist, LFibration};
use monodromy::mcg::{sp_word, standard_chain, transvection, SpMatrix};
use monodromy::text::{
    parse_covering, parse_factorization, parse_lfibration, parse_presentation, parse_target, parse_twist, print_covering,
    print_factorization, print_lfibration, print_presentation, print_twist,
};
use monodromy::vankampen::{abelianization, count_homs, presentation, simplify, stabilized, HomOptions, Presentation};
use monodromy::word::{FreeAutomorphism, FreeWord};
use monodromy::zlinalg::{cokernel, determinant, int_rank, smith_normal_form, standard_alternating, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn fact(text: &str) -> Factorization {
    parse_factorization(text).unwrap()
}

fn catalog() -> Vec<Factorization> {
    vec![
        fact("degree 2\nfactor conj=- base=1 exp=1\nfactor conj=- base=1 exp=1\n"),
        fact("degree 3\nfactor conj=- base=1 exp=2\nfactor conj=2 base=1 exp=2\nfactor conj=- base=2 exp=2\n"),
        fact("degree 3\nfactor conj=- base=1 exp=3\nfactor conj=-1 base=2 exp=1\nfactor conj=- base=1 exp=1\nfactor conj=- base=2 exp=1\n"),
        fact("degree 3\nfactor conj=- base=1 exp=1\nfactor conj=- base=1 exp=1\nfactor conj=2 base=1 exp=2\nfactor conj=- base=2 exp=2\n"),
    ]
}

fn letters(d: usize, max_len: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..d as i32, any::<bool>()), 0..=max_len)
        .prop_map(|v| v.into_iter().map(|(i, neg)| if neg { -i } else { i }).collect())
}

fn braid(max_d: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_d).prop_flat_map(move |d| letters(d, max_len).prop_map(move |l| BraidWord::new(d, l).unwrap()))
}

fn matrix(max_dim: usize) -> impl Strategy<Value = IntMatrix> {
    (1..=max_dim, 1..=max_dim).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c)
            .prop_map(move |e| IntMatrix::from_entries(r, c, e.into_iter().map(BigInt::from).collect()).unwrap())
    })
}

/// Applies `(position, forward?)` moves, positions taken modulo the length.
fn scramble(f: &Factorization, moves: &[(usize, bool)]) -> Factorization {
    moves.iter().fold(f.clone(), |g, &(p, fwd)| {
        let dir = if fwd { Direction::Forward } else { Direction::Backward };
        hurwitz_move(&g, p % (g.len() - 1), dir).unwrap()
    })
}

fn moves(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..8, any::<bool>()), 0..=max)
}

/// Connected cover closed over infinity: a transposition word and its reverse.
fn cover() -> impl Strategy<Value = CoveringData> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((1..=n, 1..n), 1..=5)))
        .prop_filter_map("disconnected", |(n, half)| {
            let mut pairs: Vec<(usize, usize)> = half
                .into_iter()
                .map(|(a, k)| {
                    let b = (a - 1 + k) % n + 1;
                    (a.min(b), a.max(b))
                })
                .collect();
            let back: Vec<_> = pairs.iter().rev().copied().collect();
            pairs.extend(back);
            let theta = CoveringData::from_pairs(n, &pairs).unwrap();
            theta.is_transitive().then_some(theta)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn smith_form_certificates(a in matrix(6)) {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.u.mul(&a).unwrap().mul(&s.v).unwrap(), s.d.clone());
        prop_assert!(determinant(&s.u).unwrap().abs().is_one());
        prop_assert!(determinant(&s.v).unwrap().abs().is_one());
        for w in s.diagonal.windows(2) {
            prop_assert!(!w[0].is_negative());
            prop_assert!(w[1].is_zero() || w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn cokernel_ignores_signs_and_order(a in matrix(5), flip in any::<u8>()) {
        let (r, c) = (a.rows(), a.cols());
        let mut b = IntMatrix::zeros(r, c);
        for i in 0..r {
            for j in 0..c {
                let x = a.get(r - 1 - i, (j + 1) % c).clone();
                b.set(i, j, if flip >> (i % 8) & 1 == 1 { -x } else { x });
            }
        }
        prop_assert_eq!(cokernel(&a), cokernel(&b));
        prop_assert_eq!(int_rank(&a), int_rank(&a.transpose()));
    }

    #[test]
    fn free_reduction(w in letters(5, 12), v in letters(5, 12)) {
        let r = FreeWord::reduce(&w, 4).unwrap();
        prop_assert!(r.len() <= w.len());
        prop_assert_eq!(FreeWord::reduce(r.letters(), 4).unwrap(), r.clone());
        let u = FreeWord::reduce(&v, 4).unwrap();
        let phi = FreeAutomorphism::artin_generator(4, 2, false).unwrap()
            .compose(&FreeAutomorphism::artin_generator(4, 1, true).unwrap()).unwrap();
        prop_assert!(phi.check_inverse());
        let lhs = phi.apply(&r.concat(&u).unwrap()).unwrap();
        let rhs = phi.apply(&r).unwrap().concat(&phi.apply(&u).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn braid_relations_in_context(x in braid(5, 8), y in letters(5, 8), i in 1usize..4, j in 1usize..4) {
        let d = x.strands();
        let y = BraidWord::new(d, y.into_iter().filter(|l| (l.unsigned_abs() as usize) < d).collect()).unwrap();
        let xy = x.concat(&y).unwrap();
        let (i, j) = (1 + (i - 1) % (d - 1), 1 + (j - 1) % (d - 1));
        let (i, j) = (i as i32, j as i32);
        let rel = if (i - j).abs() >= 2 {
            vec![i, j, -i, -j]
        } else if i + 1 < d as i32 {
            vec![i, i + 1, i, -(i + 1), -i, -(i + 1)]
        } else {
            vec![i, -i]
        };
        let with = x.concat(&BraidWord::new(d, rel).unwrap()).unwrap().concat(&y).unwrap();
        prop_assert!(braid_equal(&with, &xy).unwrap());
        prop_assert_eq!(braid_perm(&with), braid_perm(&xy));
        let t = full_twist(d);
        prop_assert!(braid_equal(&t.concat(&x).unwrap(), &x.concat(&t).unwrap()).unwrap());
    }

    #[test]
    fn band_permutations(q in braid(5, 6), i in 1usize..4) {
        let d = q.strands();
        let i = 1 + (i - 1) % (d - 1);
        prop_assert!(braid_perm(&band_generator(d, &q, i, 2).unwrap()).is_identity());
        prop_assert!(braid_perm(&band_generator(d, &q, i, 1).unwrap()).is_transposition());
    }

    #[test]
    fn hurwitz_moves_keep_product(k in 0usize..4, ms in moves(12), q in letters(3, 4), node in 0usize..4) {
        let f = &catalog()[k];
        let d = f.degree();
        let g = scramble(f, &ms);
        prop_assert!(braid_equal(&product(&g), &product(f)).unwrap());
        let mut e1: Vec<i32> = f.exponents().iter().map(|e| e.value()).collect();
        let mut e2: Vec<i32> = g.exponents().iter().map(|e| e.value()).collect();
        e1.sort();
        e2.sort();
        prop_assert_eq!(e1, e2);
        prop_assert!(validate(&g).is_valid());
        let q = BraidWord::new(d, q.into_iter().filter(|l| (l.unsigned_abs() as usize) < d).collect()).unwrap();
        let pos = node % (g.len() + 1);
        let h = insert_node_pair(&g, pos, &q, 1).unwrap();
        prop_assert!(braid_equal(&product(&h), &product(f)).unwrap());
        prop_assert_eq!(delete_node_pair(&h, pos).unwrap(), g);
    }

    #[test]
    fn scrambles_are_recovered(k in 0usize..4, ms in moves(4)) {
        let f = &catalog()[k];
        let g = scramble(f, &ms);
        match hurwitz_equivalent(&g, f, &SearchOptions::default()).unwrap() {
            SearchOutcome::Found(path) => prop_assert!(path.len() <= ms.len()),
            other => prop_assert!(false, "not recovered: {other:?}"),
        }
    }

    #[test]
    fn van_kampen_is_a_hurwitz_invariant(k in 0usize..4, ms in moves(8), c in letters(3, 4)) {
        let f = &catalog()[k];
        let d = f.degree();
        let g = scramble(f, &ms);
        let c = BraidWord::new(d, c.into_iter().filter(|l| (l.unsigned_abs() as usize) < d).collect()).unwrap();
        let g = global_conjugate(&g, &c).unwrap();
        let (p, q) = (presentation(f, true).unwrap(), presentation(&g, true).unwrap());
        prop_assert_eq!(abelianization(&p), abelianization(&q));
        let s3 = parse_target("S3").unwrap();
        let opts = HomOptions::default();
        let (a, b) = (count_homs(&p, &s3, &opts).unwrap(), count_homs(&q, &s3, &opts).unwrap());
        prop_assert_eq!(a.count, b.count);
        let h = insert_node_pair(&g, 0, &c, 1).unwrap();
        prop_assert_eq!(abelianization(&presentation(&h, true).unwrap()), abelianization(&p));
    }

    #[test]
    fn simplification_keeps_hom_counts(rels in prop::collection::vec(letters(4, 5), 0..4)) {
        let p = Presentation::from_letters(3, &rels).unwrap();
        let s = simplify(&p);
        prop_assert_eq!(abelianization(&p), abelianization(&s));
        let target = parse_target("S3").unwrap();
        let opts = HomOptions::default();
        prop_assert_eq!(count_homs(&p, &target, &opts).unwrap().count, count_homs(&s, &target, &opts).unwrap().count);
    }

    #[test]
    fn stabilizing_keeps_abelianization(theta in cover(), bound in 0usize..2) {
        let d = theta.degree();
        let p = Presentation::from_letters(d, &[(1..=d as i32).collect::<Vec<_>>()]).unwrap();
        let s = stabilized(&p, &theta, bound).unwrap();
        prop_assert_eq!(abelianization(&s.presentation), abelianization(&p));
    }

    #[test]
    fn covers_have_rank_2g(theta in cover()) {
        let g = fiber_genus(&theta).unwrap();
        let h = surface_h1(&build_fiber_surface(&theta).unwrap()).unwrap();
        prop_assert_eq!(h.rank(), 2 * g);
    }

    #[test]
    fn compatibility_survives_moves(ms in moves(10)) {
        let f = catalog()[0].clone();
        let theta = CoveringData::from_pairs(2, &[(1, 2), (1, 2)]).unwrap();
        prop_assert!(check_compatibility(&theta, &scramble(&f, &ms)).unwrap().is_compatible());
    }

    #[test]
    fn transvections_are_symplectic(g in 1usize..4, c in prop::collection::vec(-3i64..=3, 6), w in prop::collection::vec(1i32..=5, 0..10)) {
        let j = standard_alternating(g);
        let t = transvection(&c[..2 * g], g).unwrap();
        let m = t.matrix();
        prop_assert_eq!(m.transpose().mul(&j).unwrap().mul(m).unwrap(), j);
        let s = sp_word(&w, &standard_chain(2).unwrap()).unwrap();
        let j2 = standard_alternating(2);
        prop_assert_eq!(s.matrix().transpose().mul(&j2).unwrap().mul(s.matrix()).unwrap(), j2);
    }

    #[test]
    fn fiber_sums(w1 in prop::collection::vec(1i32..=5, 1..12), w2 in prop::collection::vec(1i32..=5, 1..12), t in prop::collection::vec(1i32..=5, 0..6)) {
        let chain = standard_chain(2).unwrap();
        let fib = |w: &[i32]| LFibration::from_cycles(2, w.iter().map(|&k| chain.classes()[k as usize - 1].clone()).collect()).unwrap();
        let (l1, l2) = (fib(&w1), fib(&w2));
        let s = fiber_sum(&l1, &l2, None).unwrap();
        prop_assert_eq!(euler_characteristic(&s), euler_characteristic(&l1) + euler_characteristic(&l2) + 4);
        let twist = FibSumTwist { matrix: sp_word(&t, &chain).unwrap() };
        let moved = fiber_sum(&LFibration::from_cycles(2, vec![]).unwrap(), &l1, Some(&twist)).unwrap();
        prop_assert_eq!(total_space_h1(&moved), total_space_h1(&l1));
        let hyper: Vec<i32> = (1..=5).chain((1..=5).rev()).collect();
        let v = fiber_sum(&fib(&hyper), &fib(&hyper), Some(&twist)).unwrap();
        prop_assert!(sp_validity(&v).unwrap().is_valid());
    }

    #[test]
    fn text_round_trips(k in 0usize..4, ms in moves(6), theta in cover(), w in prop::collection::vec(1i32..=5, 0..8), rels in prop::collection::vec(letters(4, 5), 0..4)) {
        let f = scramble(&catalog()[k], &ms);
        prop_assert_eq!(parse_factorization(&print_factorization(&f)).unwrap(), f);
        prop_assert_eq!(parse_covering(&print_covering(&theta)).unwrap(), theta);
        let chain = standard_chain(2).unwrap();
        let l = LFibration::from_cycles(2, w.iter().map(|&k| chain.classes()[k as usize - 1].clone()).collect()).unwrap();
        prop_assert_eq!(parse_lfibration(&print_lfibration(&l)).unwrap(), l);
        let twist = FibSumTwist { matrix: sp_word(&w, &chain).unwrap() };
        prop_assert_eq!(parse_twist(&print_twist(&twist)).unwrap(), twist);
        let p = Presentation::from_letters(3, &rels).unwrap();
        prop_assert_eq!(parse_presentation(&print_presentation(&p)).unwrap(), p);
    }
}

#[test]
fn genus_two_matrices_are_symplectic_groups() {
    let s = sp_word(&[1, 2, 3, 4, 5], &standard_chain(2).unwrap()).unwrap();
    let mut p = SpMatrix::identity(2);
    for _ in 0..6 {
        p = p.mul(&s).unwrap();
    }
    assert!(p.is_identity());
}
