//! Acceptance criteria 1-11, one line each. Exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dtl_core::algebra::augmentation_ideal_basis;
use dtl_core::bar::{bar_tor, IdealProducts};
use dtl_core::coeff::{Integers, PolyRing, PrimeField, Rationals};
use dtl_core::homology::DegreeHomology;
use dtl_core::ideal::{cup_module, ideal_j, ideal_k, ideal_l, intersect};
use dtl_core::idempotent::{check_conditions, find_idempotent, is_idempotent, verify_unit};
use dtl_core::linalg::LinAlg;
use dtl_core::link::enumerate_link_states;
use dtl_core::mv::{
    build_cover, ext_from_resolution, tor_from_resolution, verify_acyclic, witness_for, GeneratorWitness, Resolution,
};
use dtl_core::tl::tl_bar_tor;
use dtl_core::verify::{run_verify_theorem, RunConfig};
use dtl_core::{enumerate_basis, AlgebraElement, Basis, Diagram, MultiplicationOutcome, Ring, RingKind, Slot};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Slot position on the boundary circle L1..Ln, Rn..R1.
fn circle(s: Slot, n: usize) -> usize {
    match s {
        Slot::L(i) => i - 1,
        Slot::R(j) => 2 * n - j,
    }
}

/// All noncrossing partial matchings on `m` circle points, by brute force over involutions.
fn brute_force_matchings(m: usize) -> BTreeSet<Vec<(usize, usize)>> {
    fn go(m: usize, partner: &mut Vec<Option<usize>>, k: usize, out: &mut BTreeSet<Vec<(usize, usize)>>) {
        if k == m {
            let edges: Vec<(usize, usize)> =
                (0..m).filter_map(|a| partner[a].filter(|&b| b > a).map(|b| (a, b))).collect();
            let crossing = edges.iter().any(|&(a, b)| edges.iter().any(|&(c, d)| a < c && c < b && b < d));
            if !crossing {
                out.insert(edges);
            }
            return;
        }
        if partner[k].is_some() {
            return go(m, partner, k + 1, out);
        }
        go(m, partner, k + 1, out);
        for j in k + 1..m {
            if partner[j].is_none() {
                partner[k] = Some(j);
                partner[j] = Some(k);
                go(m, partner, k + 1, out);
                partner[k] = None;
                partner[j] = None;
            }
        }
    }
    let mut out = BTreeSet::new();
    go(m, &mut vec![None; m], 0, &mut out);
    out
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `M_k = sum_j C(k, 2j) Cat(j)`.
fn motzkin_by_catalan(k: u64) -> u64 {
    (0..=k / 2).map(|j| binomial(k, 2 * j) * binomial(2 * j, j) / (j + 1)).sum()
}

fn criterion_1() -> Check {
    let mut sizes = Vec::new();
    for n in 1..=5 {
        let basis = enumerate_basis(n);
        let ours: BTreeSet<Vec<(usize, usize)>> = basis
            .iter()
            .map(|d| {
                let mut e: Vec<(usize, usize)> = d
                    .edges()
                    .into_iter()
                    .map(|(a, b)| {
                        let (x, y) = (circle(a, n), circle(b, n));
                        (x.min(y), x.max(y))
                    })
                    .collect();
                e.sort();
                e
            })
            .collect();
        ensure(ours.len() == basis.len(), || format!("n={n}: duplicate diagrams"))?;
        ensure(ours == brute_force_matchings(2 * n), || format!("n={n}: differs from brute force"))?;
        ensure(basis.len() as u64 == motzkin_by_catalan(2 * n as u64), || format!("n={n}: Motzkin mismatch"))?;
        sizes.push(basis.len());
    }
    ensure(sizes == [2, 9, 51, 323, 2188], || format!("sizes {sizes:?}"))?;
    Ok(format!("sizes {sizes:?}"))
}

fn element(d: &Diagram) -> AlgebraElement<PolyRing> {
    AlgebraElement::from_diagram(&PolyRing, d.clone())
}

fn associative(a: &Diagram, b: &Diagram, c: &Diagram) -> bool {
    let (x, y, z) = (element(a), element(b), element(c));
    x.mul(&y).unwrap().mul(&z).unwrap() == x.mul(&y.mul(&z).unwrap()).unwrap()
}

fn criterion_2() -> Check {
    let b2 = enumerate_basis(2);
    for a in &b2 {
        for b in &b2 {
            for c in &b2 {
                ensure(associative(a, b, c), || format!("({a}, {b}, {c})"))?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut random = 0;
    for n in [3, 4] {
        let b = enumerate_basis(n);
        for _ in 0..10_000 {
            let pick = |rng: &mut ChaCha8Rng| &b[rng.gen_range(0..b.len())];
            let (x, y, z) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            ensure(associative(x, y, z), || format!("({x}, {y}, {z})"))?;
            random += 1;
        }
    }
    for n in 1..=4 {
        let one = AlgebraElement::identity(&PolyRing, n);
        ensure(one.mul(&one).unwrap() == one, || format!("n={n}: unit not idempotent"))?;
        for d in enumerate_basis(n) {
            let x = element(&d);
            ensure(one.mul(&x).unwrap() == x && x.mul(&one).unwrap() == x, || format!("n={n}: unit fails on {d}"))?;
        }
    }
    Ok(format!("{} exhaustive + {random} random triples; unit checked n <= 4", b2.len().pow(3)))
}

fn criterion_3() -> Check {
    let d = |s: &str| s.parse::<Diagram>().unwrap();
    let u = d("D2:(L1,L2)(R1,R2)");
    let cases = [
        (u.clone(), u.clone(), MultiplicationOutcome::Product { loops: 1, diagram: u.clone() }),
        (d("D2:(L2,R1)"), d("D2:(L1,R2)"), MultiplicationOutcome::Product { loops: 0, diagram: d("D2:(L2,R2)") }),
        (d("D2:(L1,R1)(L2,R2)"), d("D2:(L1,R1)"), MultiplicationOutcome::Annihilated),
        (u.clone(), d("D2:(R1,R2)"), MultiplicationOutcome::Annihilated),
    ];
    for (a, b, want) in &cases {
        let got = a.multiply(b).unwrap();
        ensure(got == *want, || format!("{a} * {b} = {got}, expected {want}"))?;
    }
    let one = AlgebraElement::identity(&PolyRing, 2);
    let expected: BTreeSet<Diagram> =
        ["D2:(L1,R1)(L2,R2)", "D2:(L1,R1)", "D2:(L2,R2)", "D2:"].iter().map(|s| d(s)).collect();
    let terms: BTreeSet<Diagram> = one.terms().map(|(t, _)| t.clone()).collect();
    ensure(terms == expected && one.terms().all(|(_, c)| *c == PolyRing.one()), || {
        format!("identity terms {terms:?}")
    })?;
    Ok("4 composites and the 4-term unit".into())
}

fn subsets(items: &[usize]) -> Vec<Vec<usize>> {
    (1u32..1 << items.len())
        .map(|mask| items.iter().enumerate().filter(|(k, _)| mask & (1 << k) != 0).map(|(_, &x)| x).collect())
        .collect()
}

fn criterion_4() -> Check {
    let mut checked = 0;
    for n in 1..=5 {
        let basis = enumerate_basis(n);
        let ks: Vec<_> = subsets(&(1..=n).collect::<Vec<_>>())
            .into_iter()
            .map(|s| ideal_k(&basis, n, &s.into_iter().collect()).unwrap())
            .collect();
        let ls: Vec<_> = (1..n).map(|i| ideal_l(&basis, n, i).unwrap()).collect();
        let union: BTreeSet<Diagram> = ks.iter().chain(&ls).flat_map(|j| j.diagrams().iter().cloned()).collect();
        let i_basis: BTreeSet<Diagram> = augmentation_ideal_basis(n).diagrams().iter().cloned().collect();
        ensure(union == i_basis, || format!("n={n}: union differs from I"))?;
        for (a, ka) in ks.iter().enumerate() {
            for kb in &ks[a + 1..] {
                ensure(intersect(&[ka.clone(), kb.clone()]).unwrap().is_empty(), || {
                    format!("n={n}: {} meets {}", ka.label(), kb.label())
                })?;
            }
            for l in &ls {
                ensure(intersect(&[ka.clone(), l.clone()]).unwrap().is_empty(), || {
                    format!("n={n}: {} meets {}", ka.label(), l.label())
                })?;
            }
        }
        for u in subsets(&(1..n).collect::<Vec<_>>()) {
            let parts: Vec<_> = u.iter().map(|&i| ls[i - 1].clone()).collect();
            let empty = intersect(&parts).unwrap().is_empty();
            let consecutive = u.windows(2).any(|w| w[1] == w[0] + 1);
            ensure(empty == consecutive, || format!("n={n}: U={u:?} empty={empty}"))?;
            checked += 1;
        }
    }
    Ok(format!("n <= 5, {checked} L-subsets"))
}

fn criterion_5() -> Check {
    let mut states = 0;
    let mut pairs = 0;
    for n in 1..=5 {
        let basis = enumerate_basis(n);
        for p in enumerate_link_states(n).into_iter().filter(|p| p.has_defect()) {
            let e = find_idempotent(&basis, &p).map_err(|err| err.to_string())?;
            ensure(check_conditions(&p, &e).unwrap().all(), || format!("{p}: conditions"))?;
            ensure(is_idempotent(&e), || format!("{p}: e^2 != e"))?;
            let j = ideal_j(&basis, &p);
            let ee = element(&e);
            let unit = j.diagrams().iter().all(|y| element(y).mul(&ee).unwrap() == element(y));
            ensure(unit && verify_unit(&j, &e), || format!("{p}: y e != y"))?;
            states += 1;
            if n <= 4 {
                let j = ideal_j(&basis, &p);
                for cand in &basis {
                    if check_conditions(&p, cand).unwrap().all() {
                        ensure(verify_unit(&j, cand), || format!("{p}, {cand}: conditions hold but unit fails"))?;
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{states} link states; {pairs} (p, e) pairs for n <= 4"))
}

fn witness_passed(w: &GeneratorWitness) -> bool {
    match w {
        GeneratorWitness::Idempotent { certificate, .. } => certificate.passed(),
        GeneratorWitness::CupTransport { full, iso, .. } => full.passed() && iso.passed(),
    }
}

fn criterion_6() -> Check {
    let mut certified = 0;
    for n in 1..=5 {
        let basis = enumerate_basis(n);
        let mut ideals: Vec<_> = subsets(&(1..=n).collect::<Vec<_>>())
            .into_iter()
            .map(|s| ideal_k(&basis, n, &s.into_iter().collect()).unwrap())
            .collect();
        for u in subsets(&(1..n).collect::<Vec<_>>()) {
            let parts: Vec<_> = u.iter().map(|&i| ideal_l(&basis, n, i).unwrap()).collect();
            let j = intersect(&parts).unwrap();
            if !j.is_empty() {
                ideals.push(j);
            }
        }
        for j in &ideals {
            let w = witness_for(&basis, n, j).map_err(|e| format!("{}: {e}", j.label()))?;
            ensure(witness_passed(&w), || format!("n={n}: {} not certified", j.label()))?;
            certified += 1;
        }
    }
    for n in [2, 4, 6] {
        let basis = enumerate_basis(n);
        let cup = cup_module(&basis, n).unwrap();
        let w = witness_for(&basis, n, &cup).map_err(|e| format!("Cup({n}): {e}"))?;
        ensure(matches!(w, GeneratorWitness::CupTransport { .. }) && witness_passed(&w), || {
            format!("Cup({n}) not certified through the cup maps")
        })?;
        certified += 1;
    }
    Ok(format!("{certified} ideals certified"))
}

fn acyclic<R: LinAlg>(res: &Resolution, ring: &R) -> Result<(), String> {
    let h = verify_acyclic(&res.complex, ring).map_err(|e| e.to_string())?;
    ensure(h.is_zero(), || format!("n={} {} delta={:?}: {:?}", res.basis.n(), ring.descriptor(), ring.delta_pow(1), h))
}

fn criterion_7(resolutions: &[Resolution]) -> Check {
    let mut runs = 0;
    for res in resolutions {
        res.complex.chain_complex(&PolyRing).check_d_squared().map_err(|e| e.to_string())?;
        for delta in [0, 1, -1, 2] {
            acyclic(res, &Integers::new(delta))?;
            acyclic(res, &Rationals::new(delta))?;
            runs += 2;
        }
        for p in [2u64, 3, 5] {
            for delta in 0..p as i64 {
                acyclic(res, &PrimeField::new(p, delta).unwrap())?;
                runs += 1;
            }
        }
    }
    Ok(format!("d^2 = 0 over Z[delta]; {runs} acyclic specializations, n <= 5"))
}

fn concentrated(h: &[DegreeHomology]) -> bool {
    h.iter().all(|d| if d.degree == 0 { d.is_ground_ring() } else { d.is_zero() })
}

fn tor_ext<R: LinAlg>(res: &Resolution, ring: &R) -> Result<(), String> {
    let tor = tor_from_resolution(&res.complex, &res.action, ring).map_err(|e| e.to_string())?;
    let ext = ext_from_resolution(&res.complex, &res.action, ring).map_err(|e| e.to_string())?;
    ensure(concentrated(&tor) && concentrated(&ext), || {
        format!("n={} {}: tor {tor:?} ext {ext:?}", res.basis.n(), ring.descriptor())
    })
}

fn criterion_8(resolutions: &[Resolution]) -> Check {
    let mut runs = 0;
    for res in resolutions {
        for delta in [0, 1, -1, 2] {
            tor_ext(res, &Integers::new(delta))?;
            tor_ext(res, &PrimeField::new(2, delta).unwrap())?;
            tor_ext(res, &PrimeField::new(5, delta).unwrap())?;
            runs += 3;
        }
    }
    Ok(format!("Tor and Ext concentrated in degree 0 for {runs} (n, ring, delta)"))
}

fn bar_matches<R: LinAlg>(res: &Resolution, ring: &R, max_degree: usize) -> Result<(), String> {
    let n = res.basis.n();
    let bar = bar_tor(&IdealProducts::dilute(n).unwrap(), ring, max_degree).map_err(|e| e.to_string())?;
    let mv = tor_from_resolution(&res.complex, &res.action, ring).map_err(|e| e.to_string())?;
    for b in &bar {
        let same = match mv.iter().find(|m| m.degree == b.degree) {
            Some(m) => m == b,
            None => b.is_zero(),
        };
        ensure(same, || format!("n={n} {} degree {}: bar {b:?} vs {mv:?}", ring.descriptor(), b.degree))?;
    }
    ensure(concentrated(&bar), || format!("n={n}: bar {bar:?}"))
}

fn criterion_9(resolutions: &[Resolution]) -> Check {
    for (n, top) in [(2, 4), (3, 2)] {
        let res = &resolutions[n - 1];
        for delta in [0, 1, -1] {
            bar_matches(res, &Rationals::new(delta), top)?;
            bar_matches(res, &PrimeField::new(2, delta).unwrap(), top)?;
        }
    }
    Ok("n=2 degrees <= 4, n=3 degrees <= 2, over Q and F_2".into())
}

fn criterion_10() -> Check {
    let f2 = PrimeField::new(2, 0).unwrap();
    let tl: Vec<usize> = tl_bar_tor(2, &f2, 4).map_err(|e| e.to_string())?.iter().map(|h| h.betti).collect();
    let dtl: Vec<usize> = bar_tor(&IdealProducts::dilute(2).unwrap(), &f2, 4)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|h| h.betti)
        .collect();
    ensure(tl == [1, 1, 1, 1, 1] && dtl == [1, 0, 0, 0, 0], || format!("TL {tl:?}, dTL {dtl:?}"))?;
    Ok(format!("TL_2 {tl:?} vs dTL_2 {dtl:?}"))
}

fn criterion_11(resolutions: &[Resolution]) -> Check {
    let res = &resolutions[4];
    let rank2 = res.complex.ranks().get(&2).copied().unwrap_or(0);
    ensure(rank2 > 0 && res.cover.summands_of_size(2).count() > 0, || "no degree-2 term at n=5".into())?;
    let config = RunConfig {
        n_values: vec![5],
        rings: vec![RingKind::PrimeField(2)],
        deltas: vec![0],
        max_bar_degree: 0,
        ..RunConfig::default()
    };
    let report = run_verify_theorem(&config).map_err(|e| e.to_string())?;
    let shape = report.find("mv_shape", &[("n", "5")]).ok_or("no mv_shape record")?;
    ensure(shape.passed && shape.payload["ranks"]["2"] == rank2, || format!("{shape:?}"))?;
    let note = report.notes.iter().find(|s| s.contains("n = 5") && s.contains("degree 2")).ok_or("note missing")?;
    Ok(format!("degree-2 rank {rank2}; note: {}", note.chars().take(60).collect::<String>()))
}

fn main() {
    let start = Instant::now();
    let resolutions: Vec<Resolution> = (1..=5).map(|n| Resolution::new(n).expect("resolution builds")).collect();
    assert!(resolutions.iter().all(|r| build_cover(&Basis::new(r.basis.n())).is_ok()));
    println!("resolutions for n <= 5 built in {:.1?}", start.elapsed());

    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("basis counts", Box::new(criterion_1)),
        ("algebra axioms", Box::new(criterion_2)),
        ("worked examples", Box::new(criterion_3)),
        ("cover and intersections", Box::new(criterion_4)),
        ("idempotent conditions", Box::new(criterion_5)),
        ("principality certificates", Box::new(criterion_6)),
        ("Mayer-Vietoris acyclicity", Box::new(|| criterion_7(&resolutions))),
        ("Tor and Ext vanish", Box::new(|| criterion_8(&resolutions))),
        ("bar oracle agreement", Box::new(|| criterion_9(&resolutions))),
        ("TL contrast", Box::new(criterion_10)),
        ("odd-n shape flag", Box::new(|| criterion_11(&resolutions))),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.1?})", k + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.1?})", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1?}", criteria.len() - failures, criteria.len(), start.elapsed());
    if failures > 0 {
        std::process::exit(1);
    }
}
