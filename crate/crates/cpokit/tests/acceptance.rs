//! Acceptance criteria, one line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use cpokit_core::canon::isomorphic;
use cpokit_core::gallery::{
    ad_certificate, ad_inclusion, build_ad_family, two_step_certificate, two_step_inclusion, AdJoins,
};
use cpokit_core::objects::{chain, two_atoms};
use cpokit_core::oracle::{
    coequalizer_is_universal, factors_through, has_two_sided_inverse, is_extremal_by_mono_search, is_left_cancellable,
    is_right_cancellable, is_strong_epi_by_diagonals, Corpus,
};
use cpokit_core::poset::indices;
use cpokit_core::quotient::random_extremal_epi;
use cpokit_core::symbolic::DEFAULT_FUEL;
use cpokit_core::{
    classify, coequalizer, cokernel_pair, directed_closure, epi_strongmono_factorize, hom_enumerate,
    is_strong_generator, normalize_extremal_epi, symbolic_is_epi, term_leq, FinCpoMap, SymbolicCpoMap, Term,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Debug>(err: E) -> String {
    format!("{err:?}")
}

/// `f_{0,α}` composed step by step from the trace.
fn compose_steps(e0: &FinCpoMap, steps: &[FinCpoMap]) -> Vec<usize> {
    let mut table: Vec<usize> = (0..e0.src().len()).collect();
    for s in steps {
        table = table.iter().map(|&x| s.apply(x)).collect();
    }
    table
}

fn criterion_1() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut largest = 0;
    for kappa in 1..=3usize {
        for seed in 0..50u64 {
            let start = Instant::now();
            let e0 = random_extremal_epi(kappa, seed).map_err(e)?;
            let t = normalize_extremal_epi(&e0).map_err(e)?;
            let took = start.elapsed();
            slowest = slowest.max(took);
            ensure(took < Duration::from_secs(1), || format!("kappa={kappa} seed={seed} took {took:?}"))?;
            let bound = 2 * kappa + 1;
            ensure(t.sizes[0] == 3 * kappa - (kappa - 1), || format!("|A_0| = {}", t.sizes[0]))?;
            for (k, &n) in t.sizes.iter().enumerate() {
                ensure(n == t.object(k).len(), || format!("recorded size {n} != |A_{k}|"))?;
                ensure(n <= bound, || format!("kappa={kappa} seed={seed}: |A_{k}| = {n} > {bound}"))?;
                largest = largest.max(n);
            }
        }
    }
    Ok(format!("150 runs, max size {largest}, slowest {slowest:?}"))
}

fn criterion_2() -> Outcome {
    let mut longest = 0;
    for kappa in 1..=3usize {
        for seed in 0..50u64 {
            let e0 = random_extremal_epi(kappa, seed).map_err(e)?;
            let t = normalize_extremal_epi(&e0).map_err(e)?;
            let n = t.steps.len();
            longest = longest.max(n);
            ensure(n <= 2 * kappa + 1, || format!("kappa={kappa} seed={seed}: {n} steps"))?;
            ensure(classify(&t.final_iso).iso, || format!("kappa={kappa} seed={seed}: final map not iso"))?;
            ensure(t.final_iso.table() == t.cocone(n).table(), || "final map is not the last cocone leg".into())?;
            let inverse = has_two_sided_inverse(&t.final_iso).map_err(e)?;
            ensure(inverse, || "final map has no inverse".into())?;
            for a in 0..=n {
                let steps: Vec<FinCpoMap> = t.steps[..a].iter().map(|s| s.step.clone()).collect();
                let f0a = compose_steps(&t.e0, &steps);
                let leg = t.cocone(a);
                let through: Vec<usize> = f0a.iter().map(|&x| leg.apply(x)).collect();
                ensure(through == t.e0.table(), || format!("kappa={kappa} seed={seed}: e_0 != e_{a} . f_0{a}"))?;
            }
            for (a, s) in t.steps.iter().enumerate() {
                let (g, h) = &s.pair;
                let eg: Vec<usize> = g.table().iter().map(|&x| t.cocone(a).apply(x)).collect();
                let eh: Vec<usize> = h.table().iter().map(|&x| t.cocone(a).apply(x)).collect();
                ensure(eg == eh && g.table() != h.table(), || format!("step {a} pair is not collapsed by e_{a}"))?;
            }
        }
    }
    Ok(format!("150 runs, longest chain {longest} steps"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let three = is_strong_generator(&chain(3), 4).map_err(e)?;
    ensure(three.holds, || "3 is not a strong generator".into())?;
    let two = is_strong_generator(&chain(2), 4).map_err(e)?;
    ensure(!two.holds, || "2 is a strong generator".into())?;
    let w = two.witness.ok_or("no witness for 2")?;
    let m = &w.subobject;
    ensure(isomorphic(m.src().order(), two_atoms().order()), || format!("witness domain {}", m.src().name()))?;
    ensure(isomorphic(m.dst().order(), chain(3).order()), || format!("witness codomain {}", m.dst().name()))?;
    ensure(m.table() == [0, 1, 2], || format!("witness table {:?}", m.table()))?;
    ensure(w.factorizations.len() == 3, || format!("{} factorizations", w.factorizations.len()))?;
    let probes = hom_enumerate(&Arc::new(chain(2)), m.dst()).map_err(e)?;
    ensure(probes.len() == 3, || format!("|hom(2, 3)| = {}", probes.len()))?;
    for s in &probes {
        let t = factors_through(s, m).map_err(e)?.ok_or("a map 2 -> 3 does not factor")?;
        ensure(m.after(&t).map_err(e)?.table() == s.table(), || "factorization does not compose".into())?;
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))?;
    Ok(format!("witness (A, id, 3) with 3 factorizations, {took:?}"))
}

fn criterion_4(corpus: &Corpus, maps: &[FinCpoMap]) -> Outcome {
    let mut epis = 0;
    for f in maps {
        let surjective = f.is_surjective();
        let closure = directed_closure(f.dst(), f.image()).closure() == f.dst().all();
        let legs = cokernel_pair(f).map_err(e)?.legs_equal();
        let cancel = is_right_cancellable(f, corpus).map_err(e)?;
        let verdicts = [surjective, closure, legs, cancel];
        ensure(verdicts.iter().all(|&v| v == surjective), || format!("{:?}: {verdicts:?}", f.table()))?;
        ensure(classify(f).epi == surjective, || format!("{:?}: classify disagrees", f.table()))?;
        epis += surjective as usize;
    }
    Ok(format!("{} maps, {epis} epis, 0 mismatches", maps.len()))
}

fn criterion_5(corpus: &Corpus, maps: &[FinCpoMap]) -> Outcome {
    let mut checked = 0;
    let mut strong = 0;
    for f in maps.iter().filter(|f| f.is_surjective()) {
        let diagonal = is_strong_epi_by_diagonals(f, corpus).map_err(e)?;
        let extremal = is_extremal_by_mono_search(f, corpus).map_err(e)?;
        let cls = classify(f);
        ensure(diagonal == extremal, || format!("{:?}: diagonal {diagonal}, extremal {extremal}", f.table()))?;
        ensure(cls.strong_epi == diagonal && cls.extremal_epi == extremal, || format!("{:?}: classify", f.table()))?;
        checked += 1;
        strong += diagonal as usize;
    }
    Ok(format!("{checked} epis, {strong} strong, 0 mismatches"))
}

fn criterion_6() -> Outcome {
    let iota = two_step_inclusion();
    let cert = two_step_certificate();
    let v = symbolic_is_epi(&iota, &cert, DEFAULT_FUEL).map_err(e)?;
    ensure(v.epi, || "iota is not epi".into())?;
    ensure(v.closure.closure_stage == 2, || format!("closure at stage {}", v.closure.closure_stage))?;
    ensure(v.closure.refuted == vec![(Term::Top, 1)], || format!("refuted {:?}", v.closure.refuted))?;
    ensure(!v.surjective, || "iota is surjective".into())?;
    let w = symbolic_is_epi(&iota, &cert, 4 * DEFAULT_FUEL).map_err(e)?;
    ensure(w.epi == v.epi && w.closure.closure_stage == v.closure.closure_stage, || "fuel 256 disagrees".into())?;
    ensure(w.closure.refuted == v.closure.refuted, || "fuel 256 refutes differently".into())?;
    Ok("epi, closure at stage 2, top refuted at stage 1, fuel 64 = fuel 256".into())
}

/// Number of nonempty strings shared by the two branches, from their bits.
fn shared_prefixes(a: &cpokit_core::gallery::Branch, b: &cpokit_core::gallery::Branch, horizon: usize) -> usize {
    (1..=horizon).take_while(|&n| a.bit(n - 1) == b.bit(n - 1)).count()
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let family = Arc::new(build_ad_family(16).map_err(e)?);
    let mut pairs = 0;
    let mut largest = 0;
    for i in 0..16 {
        for j in i + 1..16 {
            let size = family.intersection_size(i, j).ok_or_else(|| format!("A_{i} = A_{j}"))?;
            let oracle = shared_prefixes(family.member(i), family.member(j), 256);
            ensure(oracle < 256, || format!("A_{i} and A_{j} share 256 prefixes"))?;
            ensure(size == oracle, || format!("|A_{i} ∩ A_{j}| = {size}, bitwise count {oracle}"))?;
            largest = largest.max(size);
            pairs += 1;
        }
    }
    ensure(pairs == 120, || format!("{pairs} pairs"))?;
    let f01 = ad_inclusion(&family);
    let v = symbolic_is_epi(&f01, &ad_certificate(), DEFAULT_FUEL).map_err(e)?;
    ensure(v.injective && v.mono, || "f01 is not injective".into())?;
    ensure(v.epi && v.closure.closure_stage == 1, || format!("epi={} stage={}", v.epi, v.closure.closure_stage))?;
    ensure(!v.iso, || "f01 is an iso".into())?;
    let k1 = f01.target();
    let joins: Vec<Term> = (0..16).map(AdJoins::join_of).collect();
    for (i, x) in joins.iter().enumerate() {
        ensure(k1.well_formed(x), || format!("x_{i} ill-formed"))?;
        for (j, y) in joins.iter().enumerate().filter(|&(j, _)| j != i) {
            ensure(x != y && !term_leq(k1, x, y).map_err(e)?, || format!("x_{i} <= x_{j}"))?;
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(5), || format!("took {took:?}"))?;
    Ok(format!("120 finite intersections (max {largest}), f01 injective epi non-iso, 16 distinct joins, {took:?}"))
}

fn criterion_8(maps: &[FinCpoMap]) -> Outcome {
    for f in maps {
        let fac = epi_strongmono_factorize(f).map_err(e)?;
        let (ep, m) = (&fac.epi_part, &fac.mono_part);
        let table = || format!("{:?}", f.table());
        ensure(m.after(ep).map_err(e)?.table() == f.table(), || format!("{}: m . e != f", table()))?;
        ensure(ep.is_surjective() && classify(ep).epi, || format!("{}: e not epi", table()))?;
        ensure(m.is_injective(), || format!("{}: m not injective", table()))?;
        let mid = fac.mid();
        let img: Vec<usize> = indices(f.image()).collect();
        ensure(mid.len() == img.len() && m.image() == f.image(), || format!("{}: mid is not the image", table()))?;
        for x in 0..mid.len() {
            for y in 0..mid.len() {
                let inherited = f.dst().order().leq(m.apply(x), m.apply(y));
                ensure(mid.order().leq(x, y) == inherited, || format!("{}: order not inherited", table()))?;
            }
        }
        ensure(classify(m).strong_mono, || format!("{}: m not strong mono", table()))?;
    }
    Ok(format!("{} maps, 0 failures", maps.len()))
}

fn criterion_9(corpus: &Corpus) -> Outcome {
    let small = Corpus::up_to(3).map_err(e)?;
    let mut pairs = 0;
    for a in &small.objects {
        for b in &small.objects {
            let homs = hom_enumerate(a, b).map_err(e)?;
            for f in &homs {
                for g in &homs {
                    let q = coequalizer(f, g).map_err(e)?;
                    let ok = coequalizer_is_universal(f, g, &q, corpus).map_err(e)?;
                    ensure(ok, || format!("{:?}, {:?}: not universal", f.table(), g.table()))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} parallel pairs, {} targets, 0 failures", corpus.objects.len()))
}

fn criterion_10(corpus: &Corpus, maps: &[FinCpoMap]) -> Outcome {
    let (mut monos, mut isos) = (0, 0);
    for f in maps {
        let cls = classify(f);
        let injective = f.is_injective();
        let cancel = is_left_cancellable(f, corpus).map_err(e)?;
        ensure(cls.mono == injective && injective == cancel, || {
            format!("{:?}: mono {}/{injective}/{cancel}", f.table(), cls.mono)
        })?;
        let bij_reflect = f.is_injective() && f.is_surjective() && f.is_order_reflecting();
        let invertible = has_two_sided_inverse(f).map_err(e)?;
        ensure(cls.iso == bij_reflect && bij_reflect == invertible, || {
            format!("{:?}: iso {}/{bij_reflect}/{invertible}", f.table(), cls.iso)
        })?;
        monos += injective as usize;
        isos += invertible as usize;
    }
    Ok(format!("{} maps, {monos} monos, {isos} isos, 0 mismatches", maps.len()))
}

fn main() -> ExitCode {
    let corpus = Corpus::up_to(4).expect("corpus");
    let maps = corpus.all_maps().expect("corpus maps");
    let criteria: [Criterion; 10] = [
        ("finite quotient bound", Box::new(criterion_1)),
        ("normalization terminates with cocone", Box::new(criterion_2)),
        ("strong generator 3, not 2", Box::new(criterion_3)),
        ("epi equivalences", Box::new(|| criterion_4(&corpus, &maps))),
        ("strong epi = extremal epi", Box::new(|| criterion_5(&corpus, &maps))),
        ("two-step closure", Box::new(criterion_6)),
        ("almost-disjoint quotient step", Box::new(criterion_7)),
        ("factorization law", Box::new(|| criterion_8(&maps))),
        ("coequalizer universality", Box::new(|| criterion_9(&corpus))),
        ("mono and iso cross-checks", Box::new(|| criterion_10(&corpus, &maps))),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
