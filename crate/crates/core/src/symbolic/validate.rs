use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::term::Term;
use super::{Resolution, SymbolicCpo, SymbolicCpoMap, DEFAULT_SEED};

const ADEQUACY_SAMPLES: usize = 256;

/// Pass/fail per named check, listed in name order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub subject: String,
    pub fuel: usize,
    pub values: Vec<(String, String)>,
    pub checks: BTreeMap<String, bool>,
}

impl ValidationReport {
    fn new(subject: &str, fuel: usize) -> Self {
        ValidationReport { subject: subject.into(), fuel, values: Vec::new(), checks: BTreeMap::new() }
    }

    fn check(&mut self, name: String, ok: bool) {
        let slot = self.checks.entry(name).or_insert(true);
        *slot &= ok;
    }

    pub fn passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &str> {
        self.checks.iter().filter(|(_, &ok)| !ok).map(|(k, _)| k.as_str())
    }

    pub fn get(&self, name: &str) -> Option<bool> {
        self.checks.get(name).copied()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "subject={}", self.subject)?;
        writeln!(f, "fuel={}", self.fuel)?;
        for (k, v) in &self.values {
            writeln!(f, "{k}={v}")?;
        }
        for (k, ok) in &self.checks {
            writeln!(f, "check.{k}={}", if *ok { "pass" } else { "fail" })?;
        }
        writeln!(f, "status={}", if self.passed() { "pass" } else { "fail" })
    }
}

struct Bits {
    words: usize,
    rows: Vec<u64>,
}

impl Bits {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Bits { words, rows: alloc::vec![0; n * words] }
    }

    fn set(&mut self, i: usize, j: usize) {
        self.rows[i * self.words + j / 64] |= 1 << (j % 64);
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }
}

/// Samples every law a symbolic cpo and its chain basis must satisfy over the
/// first `fuel` terms, parameters, and chain indices.
pub fn validate_symbolic(c: &dyn SymbolicCpo, fuel: usize) -> ValidationReport {
    let mut report = ValidationReport::new(c.name(), fuel);
    report.values.push(("adequacy".into(), c.adequacy().into()));
    let terms = c.enumerate(fuel);
    let n = terms.len();
    report.values.push(("terms".into(), format!("{n}")));
    report.check("terms.well_formed".into(), terms.iter().all(|t| c.well_formed(t)));
    report.check("terms.distinct".into(), terms.iter().collect::<alloc::collections::BTreeSet<_>>().len() == n);

    let mut leq = Bits::new(n);
    for i in 0..n {
        for j in 0..n {
            if c.leq_unchecked(&terms[i], &terms[j]) {
                leq.set(i, j);
            }
        }
    }
    report.check("order.reflexive".into(), (0..n).all(|i| leq.get(i, i)));
    report.check(
        "order.antisymmetric".into(),
        (0..n).all(|i| (0..n).all(|j| i == j || !(leq.get(i, j) && leq.get(j, i)))),
    );
    let transitive = (0..n).all(|i| {
        (0..n).filter(|&j| leq.get(i, j)).all(|j| leq.row(j).iter().zip(leq.row(i)).all(|(rj, ri)| rj & !ri == 0))
    });
    report.check("order.transitive".into(), transitive);
    let bottom = c.bottom();
    report.check("bottom.least".into(), c.well_formed(&bottom) && terms.iter().all(|t| c.leq_unchecked(&bottom, t)));

    for fam in c.families() {
        let id = fam.id();
        let params = fam.parameters(fuel);
        report.values.push((format!("family.{id}.parameters"), format!("{}", params.len())));
        report.check(format!("family.{id}.sampled"), !params.is_empty());
        for p in &params {
            let elems: Vec<Term> = (0..fuel as u64).map(|i| fam.element(p, i)).collect();
            let join = fam.join(p);
            report.check(
                format!("family.{id}.well_formed"),
                c.well_formed(&join) && elems.iter().all(|e| c.well_formed(e)),
            );
            let classes = fam.element_classes(p);
            report.check(format!("family.{id}.element_classes"), elems.iter().all(|e| classes.contains(&e.class())));
            report.check(
                format!("family.{id}.strictly_monotone"),
                elems.windows(2).all(|w| w[0] != w[1] && c.leq_unchecked(&w[0], &w[1])),
            );
            report.check(format!("family.{id}.upper_bound"), elems.iter().all(|e| c.leq_unchecked(e, &join)));
            let least =
                terms.iter().filter(|b| elems.iter().all(|e| c.leq_unchecked(e, b))).all(|b| c.leq_unchecked(&join, b));
            report.check(format!("family.{id}.least"), least);
        }
    }

    // A finite directed set must contain its own join.
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    let idx: Vec<usize> = (0..n).collect();
    let mut directed_seen = 0usize;
    let mut with_max = 0usize;
    for _ in 0..ADEQUACY_SAMPLES {
        if n == 0 {
            break;
        }
        let size = rng.gen_range(1..=4.min(n));
        let pick: Vec<usize> = idx.choose_multiple(&mut rng, size).copied().collect();
        let directed = pick.iter().all(|&a| pick.iter().all(|&b| pick.iter().any(|&u| leq.get(a, u) && leq.get(b, u))));
        if directed {
            directed_seen += 1;
            with_max += pick.iter().any(|&m| pick.iter().all(|&x| leq.get(x, m))) as usize;
        }
    }
    report.values.push(("adequacy.directed_samples".into(), format!("{directed_seen}")));
    report.check("adequacy.finite_directed_have_max".into(), with_max == directed_seen);
    report
}

/// Samples the cpo-map laws: monotone, bottom to bottom, and chain joins
/// sent to the resolved target joins.
pub fn validate_map(f: &dyn SymbolicCpoMap, fuel: usize) -> ValidationReport {
    let mut report = ValidationReport::new(f.name(), fuel);
    let (src, dst) = (f.source(), f.target());
    let terms = src.enumerate(fuel);
    let images: Vec<Term> = terms.iter().map(|t| f.apply(t)).collect();
    report.check("map.well_formed".into(), images.iter().all(|t| dst.well_formed(t)));
    report.check("map.bottom".into(), f.apply(&src.bottom()) == dst.bottom());
    let monotone = (0..terms.len()).all(|i| {
        (0..terms.len()).all(|j| !src.leq_unchecked(&terms[i], &terms[j]) || dst.leq_unchecked(&images[i], &images[j]))
    });
    report.check("map.monotone".into(), monotone);
    for fam in src.families() {
        let id = fam.id();
        for p in fam.parameters(fuel) {
            let image_join = f.apply(&fam.join(&p));
            let ok = match f.resolve(id, &p) {
                None => false,
                Some(Resolution::EventuallyConstant(t)) => {
                    image_join == t && (fuel as u64 / 2..fuel as u64).all(|i| f.apply(&fam.element(&p, i)) == t)
                }
                Some(Resolution::Cofinal { family, params }) => match dst.family(family) {
                    None => false,
                    Some(tf) => {
                        let cofinal = (0..fuel as u64 / 2).all(|i| {
                            let target = tf.element(&params, i);
                            (0..fuel as u64).any(|j| dst.leq_unchecked(&target, &f.apply(&fam.element(&p, j))))
                        });
                        let bounded = (0..fuel as u64)
                            .all(|j| dst.leq_unchecked(&f.apply(&fam.element(&p, j)), &tf.join(&params)));
                        cofinal && bounded && image_join == tf.join(&params)
                    }
                },
            };
            report.check(format!("map.family.{id}.join_preserved"), ok);
        }
    }
    report
}
