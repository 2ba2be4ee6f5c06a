//! One line per acceptance criterion; exits nonzero if any fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use leavitt_core::classify::graded_hom_obstruction;
use leavitt_core::intlin::{cokernel, hom_group, smith, tensor_group, FgAbelianGroup};
use leavitt_core::invariants::{bf, bf_dual, bf_twisted, bfolbf_criterion, det_bf_twisted, jh_vanishes, Coefficients};
use leavitt_core::homology::{kh_ends, CoefficientData};
use leavitt_core::lifting::{certify_inverse, kk_iso_exists, verify, Decision};
use leavitt_core::sigma::{sigma_iso_decide, SigmaModule};
use leavitt_core::terms::{verify_minus_one_identity, PathAlgebra};
use leavitt_core::{BigInt, Graph, IntMatrix, SigmaScalar};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn is_cyclic(g: &FgAbelianGroup, n: i64) -> bool {
    g.is_isomorphic_to(&FgAbelianGroup::cyclic(n))
}

fn rose_values() -> Outcome {
    let start = Instant::now();
    let (r2, r2m) = (Graph::rose(2), r2_minus());
    ensure(is_cyclic(bf_twisted(&r2).module.underlying(), 3), "twisted BF(R2) is not Z/3")?;
    ensure(is_cyclic(bf_twisted(&r2m).module.underlying(), 7), "twisted BF(R2-) is not Z/7")?;
    ensure(bf(&r2).group.is_trivial() && bf(&r2m).group.is_trivial(), "BF(R2) or BF(R2-) is nonzero")?;
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), format!("took {t:?}"))?;
    Ok(format!("Z/3, Z/7, 0, 0 in {t:?}"))
}

fn upsilon_example() -> Outcome {
    let g = upsilon();
    let d = det_bf_twisted(&g).map_err(|e| e.to_string())?;
    ensure(d == SigmaScalar::new(0, -1), format!("det is {d}"))?;
    ensure(jh_vanishes(&g, Coefficients::ZSigma) == (true, true), "jh does not vanish")?;
    ensure(g.is_purely_infinite_simple(), "not purely infinite simple")?;
    Ok("det = -s, both vanish, purely infinite simple".into())
}

fn graded_obstruction() -> Outcome {
    let (r2, r2m) = (Graph::rose(2), r2_minus());
    ensure(!graded_hom_obstruction(&r2, &r2m).possible, "R2 -> R2- not obstructed")?;
    ensure(!graded_hom_obstruction(&r2m, &r2).possible, "R2- -> R2 not obstructed")?;
    Ok("no unital homomorphism either way".into())
}

fn remark_criterion() -> Outcome {
    let g = remark_graph();
    let c = bfolbf_criterion(&g).map_err(|e| e.to_string())?;
    ensure(c.det_plus == BigInt::one() && c.det_minus == BigInt::from(-3) && c.holds, "determinants")?;
    let twisted = bf_twisted(&g).module;
    let plain = SigmaModule::trivial_action(bf(&g).group);
    ensure(sigma_iso_decide(&twisted, &plain).map_err(|e| e.to_string())?.is_some(), "no equivariant iso")?;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut accepted, mut holding) = (0, 0);
    while accepted < 200 {
        let g = random_regular_graph(&mut rng, 4, 3);
        let group = bf(&g).group;
        match group.order() {
            Some(o) if !o.is_one() && o <= BigInt::from(50) => {}
            _ => continue,
        }
        accepted += 1;
        let holds = bfolbf_criterion(&g).expect("regular").holds;
        let iso = sigma_iso_decide(&bf_twisted(&g).module, &SigmaModule::trivial_action(group))
            .map_err(|e| e.to_string())?
            .is_some();
        ensure(holds == iso, format!("criterion {holds} but iso {iso} for {g:?}"))?;
        holding += holds as usize;
    }
    Ok(format!("example holds; 200 random graphs agree ({holding} satisfy the criterion)"))
}

fn doubling() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut regular = 0;
    for _ in 0..500 {
        let g = random_graph(&mut rng, 5, 10);
        let t = bf_twisted(&g).module;
        ensure(t.underlying().is_isomorphic_to(&bf(&g.double_cover()).group), format!("cover fails for {g:?}"))?;
        ensure(t.mod_sigma_minus_one().is_isomorphic_to(&bf(&g).group), format!("σ-coinvariants fail for {g:?}"))?;
        if g.is_regular() {
            regular += 1;
            let at = g.incidence_matrix().transpose().without_labels();
            let sq = IntMatrix::identity(at.rows()).sub(&at.mul(&at));
            ensure(t.underlying().is_isomorphic_to(&cokernel(&sq)), format!("square fails for {g:?}"))?;
            ensure(t.underlying().is_isomorphic_to(&bf(&g.square_graph()).group), format!("E^2 fails for {g:?}"))?;
        }
    }
    Ok(format!("500 graphs ({regular} regular)"))
}

fn move_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut sources, mut essential) = (0, 0);
    for _ in 0..300 {
        let g = random_graph(&mut rng, 5, 9);
        let b = bf(&g).group;
        ensure(bf(&g.out_split_graph()).group.is_isomorphic_to(&b), format!("out-split changes BF of {g:?}"))?;
        for v in g.classify_vertices().sources {
            if g.out_degree(v) > 0 {
                let h = g.source_eliminate(&g.vertices()[v]).map_err(|e| e.to_string())?;
                ensure(bf(&h).group.is_isomorphic_to(&b), format!("eliminating {v} changes BF of {g:?}"))?;
                sources += 1;
            }
        }
        let h = add_source(&mut rng, &g);
        let s = h.vertices().last().unwrap().clone();
        ensure(bf(&h.source_eliminate(&s).unwrap()).group.is_isomorphic_to(&bf(&h).group), "added source")?;
        if g.is_essential() {
            essential += 1;
            ensure(bf_dual(&g).group.is_isomorphic_to(&bf(&g.dual_graph()).group), format!("dual fails for {g:?}"))?;
        }
    }
    Ok(format!("300 graphs, {sources} native sources, {essential} essential"))
}

fn random_move<R: Rng>(rng: &mut R, g: &Graph) -> Graph {
    match rng.gen_range(0..3) {
        0 if (0..g.num_vertices()).any(|v| g.out_degree(v) > 0) => {
            let regular: Vec<usize> = (0..g.num_vertices()).filter(|&v| g.out_degree(v) > 0).collect();
            let v = &g.vertices()[regular[rng.gen_range(0..regular.len())]];
            g.cuntz_splice(v).unwrap()
        }
        1 if g.num_edges() <= 5 => g.out_split_graph(),
        _ => add_source(rng, g),
    }
}

fn lifting() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut homotopies = 0;
    for i in 0..100 {
        let seed = random_graph(&mut rng, 3, 5);
        let mut f = seed.clone();
        for _ in 0..rng.gen_range(1..=2) {
            f = random_move(&mut rng, &f);
        }
        let (e, f) = if i % 2 == 0 { (seed, f) } else { (f, seed) };
        let Decision::Iso(c) = kk_iso_exists(&e, &f) else {
            return Err(format!("no certificate for {e:?} and {f:?}"));
        };
        verify(&c).map_err(|err| format!("{err} for {e:?}"))?;
        let inv = certify_inverse(&c).map_err(|err| err.to_string())?;
        verify(&inv.backward).map_err(|err| err.to_string())?;
        let (g, h) = (&inv.backward, &inv.h_source);
        let (m0, m1) = c.mat_a.shape();
        ensure(h.mul(&c.mat_a) == IntMatrix::identity(m1).sub(&g.f1.mul(&c.f1)), "hA")?;
        ensure(c.mat_a.mul(h) == IntMatrix::identity(m0).sub(&g.f0.mul(&c.f0)), "Ah")?;
        let k = &inv.h_target;
        let (n0, n1) = c.mat_m.shape();
        ensure(k.mul(&c.mat_m) == IntMatrix::identity(n1).sub(&c.f1.mul(&g.f1)), "kM")?;
        ensure(c.mat_m.mul(k) == IntMatrix::identity(n0).sub(&c.f0.mul(&g.f0)), "Mk")?;
        homotopies += 2;
    }
    Ok(format!("100 pairs certified, {homotopies} homotopies checked"))
}

fn normal_forms() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut square = 0;
    for _ in 0..1000 {
        let m = random_matrix(&mut rng, 6, 9);
        let s = smith(&m);
        ensure(s.u.mul(&m).mul(&s.v) == s.d, format!("UMV != D for {m:?}"))?;
        ensure(s.u.is_unimodular() && s.v.is_unimodular(), "U or V not unimodular")?;
        ensure(s.u.mul(&s.u_inv).is_identity() && s.v.mul(&s.v_inv).is_identity(), "inverses")?;
        let diag: Vec<BigInt> = (0..m.rows().min(m.cols())).map(|i| s.d[(i, i)].clone()).collect();
        for (i, d) in diag.iter().enumerate() {
            ensure((i < s.rank) == !d.is_zero() && !d.is_negative(), "diagonal signs or rank")?;
            if i + 1 < s.rank {
                ensure((&diag[i + 1] % d).is_zero(), "divisibility chain")?;
            }
        }
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                ensure(i == j || s.d[(i, j)].is_zero(), "off-diagonal entry")?;
            }
        }
        if m.is_square() {
            let det = m.det();
            if !det.is_zero() {
                square += 1;
                ensure(cokernel(&m).order() == Some(det.abs()), "torsion order differs from |det|")?;
            }
        }
    }
    Ok(format!("1000 matrices ({square} nonsingular square)"))
}

fn term_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut regular = 0;
    for _ in 0..60 {
        let g = random_graph(&mut rng, 4, 8);
        if g.is_regular() {
            regular += 1;
            ensure(verify_minus_one_identity(&g) == Ok(true), format!("-1 identity fails for {g:?}"))?;
        }
    }
    for g in [Graph::rose(1), Graph::rose(2), upsilon(), remark_graph(), r2_minus()] {
        ensure(verify_minus_one_identity(&g) == Ok(true), format!("-1 identity fails for {g:?}"))?;
    }

    let graphs = [Graph::rose(2), upsilon(), remark_graph(), Graph::from_adjacency(&[vec![1, 1], vec![0, 0]])];
    for i in 0..500 {
        let g = &graphs[i % graphs.len()];
        let c = PathAlgebra::cohn(g);
        let (x, y) = (random_term(&mut rng, &c, 3, 3), random_term(&mut rng, &c, 3, 3));
        let v = random_vector(&mut rng, g, 3);
        let lhs = x.mul(&y).unwrap().rho_apply(&v).unwrap();
        let rhs = x.rho_apply(&y.rho_apply(&v).unwrap()).unwrap();
        ensure(lhs == rhs, format!("rho not multiplicative on {x} and {y}"))?;

        for (a, b) in [(x.clone(), y.clone()), (x.to_leavitt(), y.to_leavitt())] {
            let ab = a.mul(&b).unwrap();
            ensure(ab.star() == b.star().mul(&a.star()).unwrap(), "star is not an anti-homomorphism")?;
            ensure(ab.bar() == b.bar().mul(&a.bar()).unwrap(), "bar is not an anti-homomorphism")?;
            ensure(a.star().star() == a && a.bar().bar() == a, "not involutive")?;
        }

        let target = x.to_leavitt();
        let mut t = x.as_leavitt_unreduced();
        while let Some(next) = t.reduce_once(rng.gen()) {
            t = next;
        }
        ensure(t == target, format!("reduction order changes the normal form of {x}"))?;
    }
    Ok(format!("{regular} random regular graphs, 500 triples"))
}

fn sequences() -> Outcome {
    let c = CoefficientData::field_like();
    let cases: [(&str, Graph, Option<i64>, Option<i64>); 3] = [
        ("R4", Graph::rose(4), Some(3), Some(15)),
        ("Upsilon", upsilon(), None, None),
        ("remark", remark_graph(), Some(3), Some(3)),
    ];
    for (name, g, plain, twisted) in cases {
        let b = g.bf_matrix().without_labels();
        let z = IntMatrix::zeros(b.rows(), b.cols());
        let doubled = IntMatrix::block(&b, &z, &z, &b);
        let ends = kh_ends(&g, &c, 0, false).map_err(|e| e.to_string())?;
        let middle = ends.middle.ok_or(format!("{name}: middle undetermined"))?;
        ensure(middle.is_isomorphic_to(&cokernel(&doubled)), format!("{name}: plain middle {middle}"))?;
        let expect = plain.map_or(FgAbelianGroup::trivial(), |n| FgAbelianGroup::cyclic(n).direct_sum(&FgAbelianGroup::cyclic(n)));
        ensure(middle.is_isomorphic_to(&expect), format!("{name}: plain middle {middle}"))?;

        let ends = kh_ends(&g, &c, 0, true).map_err(|e| e.to_string())?;
        let middle = ends.middle.ok_or(format!("{name}: twisted middle undetermined"))?;
        ensure(middle.is_isomorphic_to(bf_twisted(&g).module.underlying()), format!("{name}: twisted middle"))?;
        let expect = twisted.map_or(FgAbelianGroup::trivial(), FgAbelianGroup::cyclic);
        ensure(middle.is_isomorphic_to(&expect), format!("{name}: twisted middle {middle}"))?;
    }

    // Hom(Z/3, Z/7): images k of the generator with 3k = 0 mod 7.
    let homs = (0..7).filter(|k| (3 * k) % 7 == 0).count();
    // Z/3 ⊗ Z/7 is cyclic on 1⊗1, of order the least m > 0 in 3Z + 7Z.
    let tensor_order = (1..=21).find(|m| (-7i64..=7).any(|x| (m - 3 * x) % 7 == 0)).unwrap();
    let (z3, z7) = (FgAbelianGroup::cyclic(3), FgAbelianGroup::cyclic(7));
    ensure(homs == 1 && hom_group(&z3, &z7).is_trivial(), "Hom(Z/3, Z/7)")?;
    ensure(tensor_order == 1 && tensor_group(&z3, &z7).is_trivial(), "Z/3 ⊗ Z/7")?;
    Ok("R4, Upsilon, remark graph; Hom and tensor vanish".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("twisted and plain BF of R2 and its splice", rose_values),
        ("determinant and vanishing for Upsilon", upsilon_example),
        ("graded homomorphism obstruction", graded_obstruction),
        ("determinant criterion vs equivariant isomorphism", remark_criterion),
        ("double cover and squared matrix identities", doubling),
        ("move invariance of BF", move_invariance),
        ("lifting certificates and homotopies", lifting),
        ("Smith form witnesses", normal_forms),
        ("term engine laws", term_engine),
        ("exact sequence ends", sequences),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2}: PASS  {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} passed in {:?}", criteria.len() - failed, criteria.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
