//! The standard examples, each run as a list of checks.
//!
//! Every demo returns a [`Report`]: `key=value` lines in a fixed order and a
//! final `status=pass` or `status=fail`.

mod ad_family;
mod two_step;

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

pub use ad_family::{
    ad_certificate, ad_inclusion, build_ad_family, AdAtoms, AdJoins, AlmostDisjointFamily, Branch, BRANCH, MAX_MEMBERS,
};
pub use two_step::{
    pair_leq, pair_leq_generating, two_step_certificate, two_step_inclusion, TwoStepCodomain, TwoStepDomain, COLUMN,
    ROW,
};

use crate::classify::classify;
use crate::error::{Error, Result};
use crate::factor::epi_strongmono_factorize;
use crate::generator::{is_generator_in, is_strong_generator_in, separating_morphism};
use crate::map::{hom_enumerate, FinCpoMap};
use crate::objects::{chain, two_atoms};
use crate::oracle::{factors_through, is_extremal_by_mono_search, Corpus};
use crate::symbolic::{
    symbolic_is_epi, term_leq, validate_map, validate_symbolic, Ext, SymbolicCpo, SymbolicCpoMap, Term,
};

pub const DEMO_NAMES: [&str; 4] = ["generator-2-vs-3", "two-step-closure", "ad-family", "epi-mono-not-iso"];
pub const DEFAULT_AD_MEMBERS: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub name: String,
    pub lines: Vec<(String, String)>,
    failures: Vec<String>,
}

impl Report {
    pub fn new(name: &str) -> Self {
        Report { name: name.into(), lines: Vec::new(), failures: Vec::new() }
    }

    pub fn value(&mut self, key: impl Into<String>, v: impl fmt::Display) {
        self.lines.push((key.into(), format!("{v}")));
    }

    pub fn check(&mut self, key: impl Into<String>, ok: bool) -> bool {
        let key = key.into();
        if !ok {
            self.failures.push(key.clone());
        }
        self.lines.push((key, String::from(if ok { "pass" } else { "fail" })));
        ok
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failures(&self) -> &[String] {
        &self.failures
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.lines.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    fn absorb(&mut self, r: Result<()>) {
        if let Err(e) = r {
            self.value("error", &e);
            self.check("completed", false);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "demo={}", self.name)?;
        for (k, v) in &self.lines {
            writeln!(f, "{k}={v}")?;
        }
        writeln!(f, "status={}", if self.passed() { "pass" } else { "fail" })
    }
}

/// Runs a demo by its command-line name.
pub fn run_demo(name: &str, fuel: usize) -> Result<Report> {
    match name {
        "generator-2-vs-3" => Ok(demo_generator_2_vs_3()),
        "two-step-closure" => Ok(demo_two_step_closure(fuel)),
        "ad-family" => demo_ad_quotient_step(DEFAULT_AD_MEMBERS, fuel),
        "epi-mono-not-iso" => Ok(demo_epi_mono_not_iso()),
        _ => Err(Error::ShapeMismatch("unknown demo")),
    }
}

fn show(f: &FinCpoMap) -> String {
    let images: Vec<&str> = f.table().iter().map(|&y| f.dst().label(y)).collect();
    format!("{}->{}:[{}]", f.src().name(), f.dst().name(), images.join(","))
}

fn id_a_to_3() -> Result<FinCpoMap> {
    FinCpoMap::new(Arc::new(two_atoms()), Arc::new(chain(3)), alloc::vec![0, 1, 2])
}

/// `2` detects distinct maps but not proper subobjects; `3` detects both.
pub fn demo_generator_2_vs_3() -> Report {
    let mut r = Report::new("generator-2-vs-3");
    let res = generator_checks(&mut r);
    r.absorb(res);
    r
}

fn generator_checks(r: &mut Report) -> Result<()> {
    let id = id_a_to_3()?;
    let cls = classify(&id);
    r.value("id", show(&id));
    r.check("id.mono", cls.mono);
    r.check("id.epi", cls.epi);
    r.check("id.not_iso", !cls.iso);

    let two = Arc::new(chain(2));
    let three = Arc::new(chain(3));
    let homs = hom_enumerate(&two, &three)?;
    r.value("hom_2_3.count", homs.len());
    r.check("hom_2_3.count_is_3", homs.len() == 3);
    let mut all_factor = true;
    for (k, s) in homs.iter().enumerate() {
        match factors_through(s, &id)? {
            Some(t) => r.value(format!("factor.{k}"), format!("{} = id . {}", show(s), show(&t))),
            None => all_factor = false,
        }
    }
    r.check("hom_2_3.all_factor_through_id", all_factor);

    let sep = separating_morphism(&id)?;
    r.value("separating", show(&sep));
    r.check("separating.does_not_factor", factors_through(&sep, &id)?.is_none());

    let corpus = Corpus::up_to(4)?;
    r.value("corpus.bound", corpus.bound);
    r.value("corpus.objects", corpus.objects.len());
    r.check("generator.2", is_generator_in(&two, &corpus)?.holds);
    r.check("strong_generator.3", is_strong_generator_in(&three, &corpus)?.holds);
    let v2 = is_strong_generator_in(&two, &corpus)?;
    r.check("strong_generator.2.fails", !v2.holds);
    if let Some(w) = &v2.witness {
        r.value("strong_generator.2.witness", show(&w.subobject));
        r.value("strong_generator.2.factorizations", w.factorizations.len());
        let exact = crate::canon::isomorphic(w.subobject.src().order(), two_atoms().order())
            && crate::canon::isomorphic(w.subobject.dst().order(), chain(3).order())
            && w.subobject.table() == [0, 1, 2]
            && w.factorizations.len() == 3;
        r.check("strong_generator.2.witness_is_id_a_to_3", exact);
    } else {
        r.check("strong_generator.2.witness_is_id_a_to_3", false);
    }

    let mut proper = 0usize;
    let mut separated = 0usize;
    for b in &corpus.objects {
        for c in corpus.at_most(b.len()) {
            for m in hom_enumerate(c, b)? {
                let cls = classify(&m);
                if cls.mono && !cls.iso {
                    proper += 1;
                    separated += separating_morphism(&m).is_ok() as usize;
                }
            }
        }
    }
    r.value("proper_subobjects", proper);
    r.value("proper_subobjects.separated_by_3", separated);
    r.check("separating.every_proper_subobject", proper == separated);
    Ok(())
}

/// The image of the inclusion `ι` reaches the codomain only after two rounds of joins.
pub fn demo_two_step_closure(fuel: usize) -> Report {
    let mut r = Report::new("two-step-closure");
    r.value("fuel", fuel);
    let res = two_step_checks(&mut r, fuel);
    r.absorb(res);
    r
}

fn validated(r: &mut Report, key: &str, c: &dyn SymbolicCpo, fuel: usize) {
    let v = validate_symbolic(c, fuel);
    for name in v.failures() {
        r.value(format!("{key}.failed"), name);
    }
    r.check(format!("{key}.validated"), v.passed());
}

fn two_step_checks(r: &mut Report, fuel: usize) -> Result<()> {
    let iota = two_step_inclusion();
    let cod = iota.target();
    validated(r, "domain", iota.source(), fuel);
    validated(r, "codomain", cod, fuel);
    r.check("iota.validated", validate_map(&iota, fuel).passed());

    let p = |m: u64, n: u64| Term::Pair(Ext::Finite(m), n);
    let inf = |n: u64| Term::Pair(Ext::Infinity, n);
    r.check("order.(3,5)<=(inf,5)", term_leq(cod, &p(3, 5), &inf(5))?);
    r.check("order.(inf,2)<=(inf,7)", term_leq(cod, &inf(2), &inf(7))?);
    r.check("order.(3,5)|(4,6)", !term_leq(cod, &p(3, 5), &p(4, 6))? && !term_leq(cod, &p(4, 6), &p(3, 5))?);
    let terms = cod.enumerate(fuel);
    let mut below_top = true;
    for t in &terms {
        below_top &= term_leq(cod, t, &Term::Top)?;
    }
    r.check("order.top_greatest", below_top);
    let row_joins = (0..fuel.min(8) as u64).all(|n| cod.family(ROW).map(|f| f.join(&alloc::vec![n])) == Some(inf(n)));
    r.check("row_join_is_(inf,n)", row_joins);

    let v = symbolic_is_epi(&iota, &two_step_certificate(), fuel)?;
    for (k, n) in v.closure.new_per_stage.iter().enumerate() {
        r.value(format!("stage.{k}.new_terms"), n);
    }
    for (t, k) in &v.closure.refuted {
        r.value(format!("refuted.stage{k}"), t);
    }
    r.value("closure_stage", v.closure.closure_stage);
    r.check("iota.epi", v.epi);
    r.check("iota.mono", v.mono);
    r.check("iota.not_surjective", !v.surjective);
    r.check("iota.not_iso", !v.iso);
    r.check("closure.stage_is_2", v.closure.closure_stage == 2);
    r.check("closure.top_refuted_at_stage_1", v.closure.refuted.contains(&(Term::Top, 1)));
    r.value("caveat", v.closure.caveat);
    Ok(())
}

/// Atoms `K_0`, chains `A ∈ 𝔉` with formal joins `K_1`, and the injective,
/// non-invertible epimorphism `K_0 -> K_1`.
pub fn demo_ad_quotient_step(n: usize, fuel: usize) -> Result<Report> {
    let family = Arc::new(build_ad_family(n)?);
    let mut r = Report::new("ad-family");
    r.value("members", n);
    r.value("fuel", fuel);
    let res = ad_checks(&mut r, &family, fuel);
    r.absorb(res);
    Ok(r)
}

fn ad_checks(r: &mut Report, family: &Arc<AlmostDisjointFamily>, fuel: usize) -> Result<()> {
    let n = family.len();
    let distinct_descriptors = (0..n).all(|i| (i + 1..n).all(|j| family.member(i) != family.member(j)));
    r.check("members.distinct_descriptors", distinct_descriptors);
    let infinite = (0..n).all(|i| family.codes(i, fuel).windows(2).all(|w| w[0] < w[1]));
    r.check("members.codes_strictly_increasing", infinite);

    let mut pairs = 0usize;
    let mut finite = 0usize;
    let mut sizes: alloc::collections::BTreeMap<usize, usize> = alloc::collections::BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            pairs += 1;
            if let (Some(size), Some(d)) = (family.intersection_size(i, j), family.divergence(i, j)) {
                finite += (size == d) as usize;
                *sizes.entry(size).or_default() += 1;
            }
        }
    }
    r.value("pairs", pairs);
    r.value("pairs.finite_intersection", finite);
    for (size, count) in &sizes {
        r.value(format!("intersection_size.{size}"), count);
    }
    r.check("pairs.all_finite_equal_divergence", pairs == finite && pairs == n * (n - 1) / 2);

    let f01 = ad_inclusion(family);
    validated(r, "k0", f01.source(), fuel);
    validated(r, "k1", f01.target(), fuel);
    r.check("f01.validated", validate_map(&f01, fuel).passed());
    let v = symbolic_is_epi(&f01, &ad_certificate(), fuel)?;
    r.value("closure_stage", v.closure.closure_stage);
    r.check("f01.mono", v.mono);
    r.check("f01.epi", v.epi);
    r.check("f01.not_iso", !v.iso);
    r.check("f01.not_order_reflecting", !v.order_reflecting);
    r.check("closure.stage_is_1", v.closure.closure_stage == 1);

    let k1 = f01.target();
    let mut separated = 0usize;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = family.divergence(i, j).ok_or(Error::WitnessInvalid(format!("members {i} and {j} coincide")))?;
            let a = Term::Atom(family.member(i).code(d + 1));
            let ok = AdJoins::join_of(i) != AdJoins::join_of(j)
                && term_leq(k1, &a, &AdJoins::join_of(i))?
                && !term_leq(k1, &a, &AdJoins::join_of(j))?;
            separated += ok as usize;
        }
    }
    r.value("joins.ordered_pairs_separated", separated);
    r.check("joins.pairwise_distinct", separated == n * (n - 1));

    let terms = k1.enumerate(fuel);
    let mut maximal_are_joins = true;
    for t in &terms {
        let maximal = match t {
            Term::Atom(c) => !(0..n).any(|i| family.member(i).contains(c)),
            _ => !terms.iter().any(|u| u != t && k1.leq_unchecked(t, u)),
        };
        maximal_are_joins &= maximal == matches!(t, Term::Join { .. });
    }
    r.check("k1.maximal_elements_are_joins", maximal_are_joins);
    r.value("caveat", v.closure.caveat);
    Ok(())
}

/// `id: A -> 3` is mono and epi but not iso, and not a strong epi.
pub fn demo_epi_mono_not_iso() -> Report {
    let mut r = Report::new("epi-mono-not-iso");
    let res = epi_mono_checks(&mut r);
    r.absorb(res);
    r
}

fn epi_mono_checks(r: &mut Report) -> Result<()> {
    let id = id_a_to_3()?;
    let cls = classify(&id);
    r.value("id", show(&id));
    r.value("classification", cls);
    r.check("mono", cls.mono);
    r.check("epi", cls.epi);
    r.check("not_iso", !cls.iso);
    r.check("not_strong_epi", !cls.strong_epi);
    r.check("not_extremal_epi", !cls.extremal_epi);
    let corpus = Corpus::up_to(3)?;
    r.check("not_extremal_by_mono_search", !is_extremal_by_mono_search(&id, &corpus)?);
    let through_itself = factors_through(&id, &id)?.is_some() && !cls.iso;
    r.check("factors_through_non_invertible_mono_id", through_itself);
    let fac = epi_strongmono_factorize(&id)?;
    r.value("factorization.mid", fac.mid().name());
    r.value("factorization.mid_size", fac.mid().len());
    r.check(
        "factorization.mid_is_3",
        fac.mid().len() == 3 && crate::canon::isomorphic(fac.mid().order(), chain(3).order()),
    );
    r.check("factorization.composes", fac.mono_part.after(&fac.epi_part)?.table() == id.table());
    Ok(())
}
