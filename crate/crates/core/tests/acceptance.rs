//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach stdout. The
//! random streams are seeded from `MONODROMY_SEED` (default 20240601).

use std::time::{Duration, Instant};

use monodromy::braid::{artin_action, braid_equal, full_twist, is_central, BraidWord, Permutation};
use monodromy::cover::{check_compatibility, fiber_genus, surface_h1, build_fiber_surface, CoveringData, FiberLift};
use monodromy::factor::{
    apply_move, global_conjugate, hurwitz_equivalent, hurwitz_move, insert_node_pair, product, validate, Direction, Exponent,
    Factor, Factorization, SearchOptions, SearchOutcome, Refutation,
};
use monodromy::lefschetz::{euler_characteristic, fiber_sum, from_branch_data, invariants, sp_validity, total_space_h1, LFibration};
use monodromy::mcg::{sp_word, standard_chain, SpMatrix};
use monodromy::text::{parse_factorization, parse_target};
use monodromy::vankampen::{abelianization, count_homs, presentation, HomOptions};
use monodromy::zlinalg::{determinant, smith_normal_form, standard_alternating, AbelianGroup, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn seed() -> u64 {
    std::env::var("MONODROMY_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(20240601)
}

fn rng(stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed());
    r.set_stream(stream);
    r
}

fn fact(text: &str) -> Factorization {
    parse_factorization(text).expect("catalog factorization parses")
}

fn conic() -> Factorization {
    fact("degree 2\nfactor conj=- base=1 exp=1\nfactor conj=- base=1 exp=1\n")
}

fn two_lines() -> Factorization {
    fact("degree 2\nfactor conj=- base=1 exp=2\n")
}

fn lantern() -> Factorization {
    fact("degree 3\nfactor conj=- base=1 exp=2\nfactor conj=2 base=1 exp=2\nfactor conj=- base=2 exp=2\n")
}

fn cusp_cubic() -> Factorization {
    fact("degree 3\nfactor conj=- base=1 exp=3\nfactor conj=-1 base=2 exp=1\nfactor conj=- base=1 exp=1\nfactor conj=- base=2 exp=1\n")
}

fn line_conic() -> Factorization {
    // A conic and a transverse line: the lantern with its first node split
    // into two tangencies.
    fact("degree 3\nfactor conj=- base=1 exp=1\nfactor conj=- base=1 exp=1\nfactor conj=2 base=1 exp=2\nfactor conj=- base=2 exp=2\n")
}

fn random_braid(r: &mut ChaCha8Rng, d: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let i = r.gen_range(1..d as i32);
            if r.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(d, letters).unwrap()
}

fn random_move(r: &mut ChaCha8Rng, f: &Factorization) -> Factorization {
    let p = r.gen_range(0..f.len() - 1);
    let dir = if r.gen_bool(0.5) { Direction::Forward } else { Direction::Backward };
    hurwitz_move(f, p, dir).unwrap()
}

fn exponent_multiset(f: &Factorization) -> Vec<i32> {
    let mut v: Vec<i32> = f.exponents().iter().map(|e| e.value()).collect();
    v.sort();
    v
}

fn c1_sl2z() -> Check {
    let ta = SpMatrix::from_rows(1, &[[1, 1], [0, 1]]).map_err(|e| e.to_string())?;
    let tb = SpMatrix::from_rows(1, &[[1, 0], [-1, 1]]).map_err(|e| e.to_string())?;
    let m = |a: &SpMatrix, b: &SpMatrix| a.mul(b).unwrap();
    ensure(m(&m(&ta, &tb), &ta) == m(&m(&tb, &ta), &tb), || "braid relation fails".into())?;
    let ab = m(&ta, &tb);
    let mut p = SpMatrix::identity(1);
    for k in 1..=6 {
        p = m(&p, &ab);
        ensure(p.is_identity() == (k == 6), || format!("(τaτb)^{k} identity mismatch"))?;
    }
    Ok("τaτbτa=τbτaτb, (τaτb)^6=I, order exactly 6".into())
}

fn c2_genus_two() -> Check {
    let s = standard_chain(2).map_err(|e| e.to_string())?;
    let w = |letters: &[i32]| sp_word(letters, &s).unwrap();
    let mut count = 0;
    for i in 1..=5 {
        for j in 1..=5 {
            if (i - j).abs() >= 2 {
                ensure(w(&[i, j]) == w(&[j, i]), || format!("τ{i}τ{j} != τ{j}τ{i}"))?;
                count += 1;
            }
        }
    }
    for i in 1..5 {
        ensure(w(&[i, i + 1, i]) == w(&[i + 1, i, i + 1]), || format!("braid relation {i}"))?;
        count += 1;
    }
    let chain: Vec<i32> = (1..=5).collect();
    ensure(w(&chain.repeat(6)).is_identity(), || "(τ1..τ5)^6 != I".into())?;
    let mut hyper = chain.clone();
    hyper.extend((1..=5).rev());
    let i = w(&hyper);
    ensure(i == SpMatrix::identity(2).neg(), || format!("I maps to {i}"))?;
    ensure(w(&[hyper.clone(), hyper.clone()].concat()).is_identity(), || "I^2 != 1".into())?;
    for k in 1..=5 {
        ensure(i.mul(&w(&[k])).unwrap() == w(&[k]).mul(&i).unwrap(), || format!("I does not commute with τ{k}"))?;
    }
    Ok(format!("{} relations exact, I ↦ -I, I² ↦ I, I central", count + 3))
}

fn c3_braid_words() -> Check {
    let mut relations = 0;
    for d in 2..=6 {
        let x = |i: i32| BraidWord::new(d, vec![i]).unwrap();
        let cat = |ws: &[BraidWord]| ws.iter().skip(1).fold(ws[0].clone(), |a, b| a.concat(b).unwrap());
        for i in 1..d as i32 {
            for j in 1..d as i32 {
                if (i - j).abs() >= 2 {
                    ensure(braid_equal(&cat(&[x(i), x(j)]), &cat(&[x(j), x(i)])).unwrap(), || format!("B{d}: far commutation {i},{j}"))?;
                    relations += 1;
                } else if j == i + 1 {
                    ensure(
                        braid_equal(&cat(&[x(i), x(j), x(i)]), &cat(&[x(j), x(i), x(j)])).unwrap(),
                        || format!("B{d}: braid relation {i}"),
                    )?;
                    relations += 1;
                }
            }
        }
        ensure(is_central(&full_twist(d)), || format!("Δ² not central in B{d}"))?;
        ensure(!artin_action(&full_twist(d)).is_identity() || d == 1, || format!("Δ² acts trivially in B{d}"))?;
    }
    let mut r = rng(3);
    let mut trials = 0;
    while trials < 1000 {
        let d = r.gen_range(3..=6);
        let w = { let n = r.gen_range(0..12); random_braid(&mut r, d, n) };
        // Insert a conjugate of a defining relator at a random position.
        let i = r.gen_range(1..d as i32 - 1);
        let rel = match r.gen_range(0..3) {
            0 => vec![i, i + 1, i, -(i + 1), -i, -(i + 1)],
            1 => {
                let j = r.gen_range(1..d as i32);
                if (j - i).abs() < 2 {
                    continue;
                }
                vec![i, j, -i, -j]
            }
            _ => {
                let mut t = full_twist(d).letters().to_vec();
                t.push(i);
                t.extend(full_twist(d).inverse().letters());
                t.push(-i);
                t
            }
        };
        let c = { let n = r.gen_range(0..5); random_braid(&mut r, d, n) };
        let mut inserted = c.letters().to_vec();
        inserted.extend(rel);
        inserted.extend(c.inverse().letters());
        let pos = r.gen_range(0..=w.len());
        let mut letters = w.letters()[..pos].to_vec();
        letters.extend(inserted);
        letters.extend_from_slice(&w.letters()[pos..]);
        let w2 = BraidWord::new(d, letters).unwrap();
        ensure(braid_equal(&w, &w2).unwrap(), || format!("consequence word differs: {w} vs {w2}"))?;
        trials += 1;
    }
    // Negative control: a single generator is never trivial.
    ensure(!braid_equal(&BraidWord::new(4, vec![1]).unwrap(), &BraidWord::identity(4)).unwrap(), || "X1 = 1".into())?;
    Ok(format!("{relations} defining relations, Δ² central for d<=6, {trials} consequence words equal"))
}

fn c4_lantern() -> Check {
    let f = lantern();
    let twist = full_twist(3);
    ensure(braid_equal(&product(&f), &twist).unwrap(), || "product != Δ²".into())?;
    ensure(validate(&f).positive_nodes == 3, || "not three nodes".into())?;
    Ok("[X1², X2·X1²·X2⁻¹, X2²] multiplies to Δ² in B3".into())
}

fn catalog() -> Vec<Factorization> {
    vec![conic(), two_lines(), lantern(), cusp_cubic(), line_conic()]
}

/// A valid factorization with `d <= 4` and at most five factors: a catalog
/// entry, conjugated, scrambled, with a node pair inserted when room allows.
fn random_valid(r: &mut ChaCha8Rng) -> Factorization {
    let mut f = catalog().choose(r).unwrap().clone();
    let d = f.degree();
    f = global_conjugate(&f, &{ let n = r.gen_range(0..4); random_braid(r, d, n) }).unwrap();
    if f.len() + 2 <= 5 && r.gen_bool(0.5) {
        let q = { let n = r.gen_range(0..3); random_braid(r, d, n) };
        let i = r.gen_range(1..d);
        let pos = r.gen_range(0..=f.len());
        f = insert_node_pair(&f, pos, &q, i).unwrap();
    }
    if f.len() >= 2 {
        for _ in 0..r.gen_range(0..4) {
            f = random_move(r, &f);
        }
    }
    f
}

fn c5_hurwitz() -> Check {
    let mut r = rng(5);
    let mut samples = Vec::new();
    while samples.len() < 100 {
        let f = random_valid(&mut r);
        if f.len() >= 2 {
            samples.push(f);
        }
    }
    for f in &samples {
        ensure(f.degree() <= 4 && f.len() <= 5 && validate(f).is_valid(), || format!("bad sample {f}"))?;
        let p = product(f);
        let e = exponent_multiset(f);
        let mut g = f.clone();
        for _ in 0..10 {
            g = random_move(&mut r, &g);
            ensure(braid_equal(&product(&g), &p).unwrap(), || "product changed under a move".into())?;
            ensure(exponent_multiset(&g) == e, || "exponents changed under a move".into())?;
        }
    }
    let options = SearchOptions {
        max_states: 100_000,
        ..SearchOptions::default()
    };
    let mut recovered = 0;
    let mut worst = 0;
    for f in &samples {
        let mut g = f.clone();
        for _ in 0..4 {
            g = random_move(&mut r, &g);
        }
        let out = hurwitz_equivalent(&g, f, &options).unwrap();
        match out {
            SearchOutcome::Found(moves) => {
                ensure(moves.len() <= 4, || format!("path of length {}", moves.len()))?;
                let end = moves.iter().fold(g.clone(), |h, m| apply_move(&h, m).unwrap());
                ensure(end.factorwise_equal(f).unwrap(), || "recovered path does not reach the target".into())?;
                worst = worst.max(moves.len());
                recovered += 1;
            }
            other => {
                let one = f.to_string().replace('\n', " | ");
                return Err(format!("scramble of {one} not recovered: {other:?}"));
            }
        }
    }
    let mut refuted = 0;
    for f in &samples {
        // Same exponents and length, different product: move the base of the
        // last factor or drop its conjugator.
        let d = f.degree();
        let mut factors = f.factors().to_vec();
        let last = factors.pop().unwrap();
        let candidates = (1..d).flat_map(|i| {
            [BraidWord::identity(d), last.conjugator().clone()].into_iter().map(move |q| (q, i))
        });
        for (q, i) in candidates {
            let mut h = factors.clone();
            h.push(Factor::new(q, i, last.exponent()).unwrap());
            let h = Factorization::new(d, h).unwrap();
            if braid_equal(&product(&h), &product(f)).unwrap() {
                continue;
            }
            match hurwitz_equivalent(f, &h, &options).unwrap() {
                SearchOutcome::Refuted(Refutation::Product) => {
                    refuted += 1;
                    break;
                }
                other => return Err(format!("product-distinct pair not refuted: {other:?}")),
            }
        }
    }
    ensure(refuted >= 50, || format!("only {refuted} product-distinct pairs built"))?;
    Ok(format!(
        "100 samples x 10 moves invariant; {recovered}/100 scrambles recovered (longest path {worst}); {refuted} refutations by product"
    ))
}

/// Random connected covers with `N <= 4` sheets, `d <= 10` even, closed over
/// infinity: a random word in transpositions followed by its reverse.
fn random_cover(r: &mut ChaCha8Rng) -> CoveringData {
    loop {
        let n = r.gen_range(2..=4);
        let half = r.gen_range(1..=5);
        let mut labels = Vec::new();
        for _ in 0..half {
            let a = r.gen_range(1..=n);
            let mut b = r.gen_range(1..=n);
            while b == a {
                b = r.gen_range(1..=n);
            }
            labels.push(Permutation::transposition(n, a, b).unwrap());
        }
        let back: Vec<Permutation> = labels.iter().rev().cloned().collect();
        labels.extend(back);
        let theta = CoveringData::new(n, labels).unwrap();
        if theta.is_transitive() {
            return theta;
        }
    }
}

/// `X_i^k` with `k` the exponent whose local condition the labels meet.
fn liftable_letters(theta: &CoveringData) -> Vec<Vec<i32>> {
    let l = theta.labels();
    let mut out = Vec::new();
    for i in 1..l.len() {
        let (a, b) = (&l[i - 1], &l[i]);
        let shared = a.support().iter().filter(|x| b.support().contains(x)).count();
        let k = match shared {
            2 => 1,
            0 => 2,
            _ => 3,
        };
        out.push(vec![i as i32; k]);
    }
    out
}

fn c6_covers() -> Check {
    let mut r = rng(6);
    let j0 = |g| standard_alternating(g);
    let mut covers = 0;
    let mut pairs = 0;
    let mut local = 0;
    let mut genera = std::collections::BTreeSet::new();
    while covers < 40 || pairs < 50 {
        let theta = random_cover(&mut r);
        let g = fiber_genus(&theta).map_err(|e| e.to_string())?;
        let h = surface_h1(&build_fiber_surface(&theta).unwrap()).unwrap();
        ensure(h.rank() == 2 * g && h.group == AbelianGroup::free(2 * g), || format!("rank H1 != 2g for {theta:?}"))?;
        genera.insert(g);
        covers += 1;
        let lift = FiberLift::new(&theta).unwrap();
        let d = theta.degree();
        let letters = liftable_letters(&theta);
        let word = |r: &mut ChaCha8Rng| {
            let mut w = Vec::new();
            for _ in 0..r.gen_range(1..=4) {
                let x = letters.choose(r).unwrap();
                if r.gen_bool(0.5) {
                    w.extend(x);
                } else {
                    w.extend(x.iter().map(|l| -l));
                }
            }
            BraidWord::new(d, w).unwrap()
        };
        if g >= 1 && pairs < 50 {
            for _ in 0..3 {
                let (b1, b2) = (word(&mut r), word(&mut r));
                let (m1, m2) = (lift.lift(&b1).unwrap(), lift.lift(&b2).unwrap());
                for m in [&m1, &m2] {
                    ensure(m.transpose().mul(&j0(g)).unwrap().mul(m).unwrap() == j0(g), || "form not preserved".into())?;
                }
                let m12 = lift.lift(&b1.concat(&b2).unwrap()).unwrap();
                ensure(m12 == m1.mul(&m2).unwrap(), || format!("homomorphism law fails for {b1} {b2}"))?;
                pairs += 1;
            }
        }
        for (i, x) in letters.iter().enumerate() {
            if x.len() >= 2 {
                let m = lift.lift(&BraidWord::new(d, x.clone()).unwrap()).unwrap();
                ensure(m == IntMatrix::identity(2 * g), || format!("node/cusp lift at {} is not the identity", i + 1))?;
                local += 1;
            }
        }
    }
    ensure(local > 0, || "no node or cusp letters met".into())?;
    Ok(format!(
        "{covers} covers (genera {genera:?}) with rank H1 = 2g; {pairs} liftable pairs symplectic and multiplicative; {local} node/cusp lifts trivial"
    ))
}

fn chain_fibration(word: &[i32]) -> LFibration {
    let s = standard_chain(2).unwrap();
    LFibration::from_cycles(2, word.iter().map(|&k| s.classes()[k as usize - 1].clone()).collect()).unwrap()
}

fn c7_lefschetz() -> Check {
    let mut hyper: Vec<i32> = (1..=5).collect();
    hyper.extend((1..=5).rev());
    let f0 = chain_fibration(&hyper.repeat(2));
    let f1 = chain_fibration(&(1..=5).collect::<Vec<_>>().repeat(6));
    for (name, l, chi) in [("f0", &f0, 16), ("f1", &f1, 26)] {
        ensure(euler_characteristic(l) == chi, || format!("χ({name}) = {}", euler_characteristic(l)))?;
        ensure(total_space_h1(l).free_rank == 0, || format!("b1({name}) != 0"))?;
        ensure(sp_validity(l).unwrap().is_valid(), || format!("{name} monodromy not trivial"))?;
    }
    let s0 = fiber_sum(&fiber_sum(&f0, &f0, None).unwrap(), &f0, None).unwrap();
    let s1 = fiber_sum(&f1, &f1, None).unwrap();
    let (i0, i1) = (invariants(&s0), invariants(&s1));
    for (name, i) in [("3·f0", &i0), ("2·f1", &i1)] {
        ensure(i.critical_points == 60 && i.euler_characteristic == 56, || format!("{name}: m={}, χ={}", i.critical_points, i.euler_characteristic))?;
    }
    ensure(i0 == i1, || "invariants of 3·f0 and 2·f1 differ".into())?;
    Ok("χ(f0)=16, χ(f1)=26, b1=0; 3·f0 and 2·f1 both m=60, χ=56".into())
}

fn c8_van_kampen() -> Check {
    let s3 = parse_target("S3").unwrap();
    let s4 = parse_target("S4").unwrap();
    let opts = HomOptions::default();
    let line = presentation(&Factorization::empty(1).unwrap(), true).unwrap();
    ensure(abelianization(&line).is_trivial(), || "line group not trivial".into())?;
    ensure(count_homs(&line, &s4, &opts).unwrap().count == 1, || "line group has nontrivial S4 quotients".into())?;
    let invariants = |f: &Factorization| {
        let p = presentation(f, true).unwrap();
        (abelianization(&p), count_homs(&p, &s3, &opts).unwrap().count, count_homs(&p, &s4, &opts).unwrap().count)
    };
    let conic_inv = invariants(&conic());
    ensure(conic_inv.0 == AbelianGroup::cyclic(2) && conic_inv.1 == 4, || format!("conic: {conic_inv:?}"))?;
    let cubic_inv = invariants(&cusp_cubic());
    ensure(cubic_inv.0 == AbelianGroup::cyclic(3), || format!("cusp cubic: {cubic_inv:?}"))?;
    let mut r = rng(8);
    let mut variants = 0;
    for (f, base) in [(conic(), &conic_inv), (cusp_cubic(), &cubic_inv)] {
        for _ in 0..4 {
            let mut g = f.clone();
            for _ in 0..r.gen_range(1..=4) {
                g = random_move(&mut r, &g);
            }
            let d = g.degree();
            let q = { let n = r.gen_range(0..3); random_braid(&mut r, d, n) };
            let (pos, i) = (r.gen_range(0..=g.len()), r.gen_range(1..d));
            let h = insert_node_pair(&g, pos, &q, i).unwrap();
            for x in [&g, &h] {
                ensure(&invariants(x) == base, || format!("invariants changed for {x}"))?;
                variants += 1;
            }
        }
    }
    Ok(format!(
        "line trivial; conic Z/2 with {} homs to S3; cusp cubic {}; stable over {variants} moved/node-pair variants",
        conic_inv.1, cubic_inv.0
    ))
}

fn c9_snf() -> Check {
    let mut r = rng(9);
    for t in 0..500 {
        let (m, n) = (r.gen_range(1..=6), r.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..m).map(|_| (0..n).map(|_| r.gen_range(-9..=9)).collect()).collect();
        let a = IntMatrix::from_rows(&rows).unwrap();
        let s = smith_normal_form(&a);
        ensure(s.u.mul(&a).unwrap().mul(&s.v).unwrap() == s.d, || format!("UAV != D for matrix {t}"))?;
        for (u, name) in [(&s.u, "U"), (&s.v, "V")] {
            ensure(determinant(u).unwrap().abs().is_one(), || format!("{name} not unimodular for matrix {t}"))?;
        }
        ensure(s.u.mul(&s.u_inv).unwrap() == IntMatrix::identity(m), || "U·U⁻¹ != I".into())?;
        ensure(s.v.mul(&s.v_inv).unwrap() == IntMatrix::identity(n), || "V·V⁻¹ != I".into())?;
        for i in 0..m {
            for j in 0..n {
                ensure(i == j || s.d.get(i, j).is_zero(), || "D not diagonal".into())?;
            }
        }
        let diag: Vec<BigInt> = (0..m.min(n)).map(|i| s.d.get(i, i).clone()).collect();
        ensure(diag.iter().all(|x| !x.is_negative()), || "negative invariant factor".into())?;
        for w in diag.windows(2) {
            ensure(
                if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) },
                || format!("divisibility chain broken: {diag:?}"),
            )?;
        }
    }
    Ok("500 matrices: UAV=D, U and V unimodular, divisibility chain".into())
}

/// Every covering with at most `max_sheets` sheets compatible with `f`.
fn compatible_covers(f: &Factorization, max_sheets: usize) -> Vec<CoveringData> {
    let mut out = Vec::new();
    let d = f.degree();
    for n in 2..=max_sheets {
        let ts: Vec<Permutation> = (1..=n)
            .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
            .map(|(a, b)| Permutation::transposition(n, a, b).unwrap())
            .collect();
        let mut idx = vec![0usize; d];
        loop {
            // Fix the first label up to relabelling sheets.
            if idx[0] == 0 {
                let theta = CoveringData::new(n, idx.iter().map(|&k| ts[k].clone()).collect()).unwrap();
                if check_compatibility(&theta, f).unwrap().is_compatible() {
                    out.push(theta);
                }
            }
            let mut k = 0;
            while k < d && idx[k] + 1 == ts.len() {
                idx[k] = 0;
                k += 1;
            }
            if k == d {
                break;
            }
            idx[k] += 1;
        }
    }
    out
}

fn c10_cross_module() -> Check {
    let mut r = rng(10);
    let tangency_chain = |d: usize, reps: usize| {
        let factors = (0..reps).flat_map(|_| (1..d).map(|i| Factor::simple(d, i, Exponent::Tangency).unwrap())).collect();
        Factorization::new(d, factors).unwrap()
    };
    let mut corpus: Vec<(Factorization, CoveringData)> = Vec::new();
    let bases = [
        (conic(), 4),
        (lantern(), 4),
        (cusp_cubic(), 4),
        (line_conic(), 4),
        (tangency_chain(3, 3), 4),
        (tangency_chain(4, 4), 4),
        (tangency_chain(5, 5), 3),
        (tangency_chain(6, 6), 3),
        (tangency_chain(7, 7), 2),
        (tangency_chain(8, 8), 2),
    ];
    for (f, max_sheets) in bases {
        for theta in compatible_covers(&f, max_sheets) {
            corpus.push((f.clone(), theta));
        }
    }
    // Scrambled variants: Hurwitz moves must keep every pair compatible.
    for k in 0..corpus.len() {
        let (mut f, theta) = corpus[k].clone();
        for _ in 0..3 {
            for _ in 0..4 {
                f = random_move(&mut r, &f);
            }
            ensure(check_compatibility(&theta, &f).unwrap().is_compatible(), || "compatibility lost under a move".into())?;
            corpus.push((f.clone(), theta.clone()));
        }
    }
    ensure(corpus.len() >= 10, || format!("corpus too small: {}", corpus.len()))?;
    let mut relators = 0;
    let mut fibrations = 0;
    for (f, theta) in &corpus {
        let closed = theta.product().is_identity();
        let p = presentation(f, closed).unwrap();
        for rel in p.relators() {
            ensure(theta.image(rel).unwrap().is_identity(), || format!("relator {rel:?} survives θ for {f}"))?;
            relators += 1;
        }
        if closed && theta.is_transitive() {
            let base = from_branch_data(f, theta).map_err(|e| e.to_string())?;
            let inv = invariants(&base);
            let mut g = f.clone();
            for _ in 0..5 {
                g = random_move(&mut r, &g);
                ensure(check_compatibility(theta, &g).unwrap().is_compatible(), || "compatibility lost under a move".into())?;
                let l = from_branch_data(&g, theta).unwrap();
                ensure(invariants(&l) == inv, || format!("fibration invariants changed under a move for {f}"))?;
                ensure(sp_validity(&l).unwrap().is_valid(), || "moved fibration has nontrivial monodromy".into())?;
                fibrations += 1;
            }
        }
    }
    let bad = CoveringData::from_pairs(3, &[(1, 2), (1, 3)]).unwrap();
    ensure(!check_compatibility(&bad, &conic()).unwrap().is_compatible(), || "corrupted labels accepted".into())?;
    Ok(format!(
        "{} compatible pairs, {relators} relators trivial under θ; {fibrations} moved fibrations with equal invariants; corrupted labels rejected",
        corpus.len()
    ))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("SL(2,Z) relations", Duration::from_millis(100), c1_sl2z),
        ("genus-2 relations in Sp(4,Z)", Duration::from_millis(500), c2_genus_two),
        ("braid word problem", Duration::from_secs(5), c3_braid_words),
        ("lantern factorization", Duration::from_millis(100), c4_lantern),
        ("Hurwitz calculus", Duration::from_secs(60), c5_hurwitz),
        ("cover suite", Duration::from_secs(30), c6_covers),
        ("Lefschetz invariants", Duration::from_secs(1), c7_lefschetz),
        ("van Kampen suite", Duration::from_secs(10), c8_van_kampen),
        ("Smith normal form", Duration::from_secs(10), c9_snf),
        ("cross-module consistency", Duration::from_secs(10), c10_cross_module),
    ];
    println!("acceptance (seed {})", seed());
    let mut failed = 0;
    for (k, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: exact; {:.3}s (limit {:.1}s); {detail}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            elapsed.as_secs_f64(),
            limit.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
