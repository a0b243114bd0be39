use std::sync::Arc;

use cpokit::format::{
    parse_map, parse_poset, read_trace, split_records, write_map, write_poset, write_trace, FormatError,
};
use cpokit_core::objects::{chain, diamond, two_atoms};
use cpokit_core::oracle::Corpus;
use cpokit_core::quotient::normalize_random;
use cpokit_core::{Error as CoreError, FinCpoMap};

#[test]
fn posets_round_trip() {
    let corpus = Corpus::up_to(5).unwrap();
    for p in corpus.objects.iter().map(|p| p.as_ref()).chain([&diamond(), &two_atoms()]) {
        let text = write_poset(p);
        let back = parse_poset(&text).unwrap();
        assert_eq!(&back, p, "{text}");
    }
}

#[test]
fn maps_round_trip() {
    let corpus = Corpus::up_to(3).unwrap();
    for f in corpus.all_maps().unwrap() {
        let text = write_map("f", &f);
        let (name, back) = parse_map(&text, &[f.src().clone(), f.dst().clone()]).unwrap();
        assert_eq!(name, "f");
        assert_eq!(back.table(), f.table());
        assert_eq!(back.src().as_ref(), f.src().as_ref());
        assert_eq!(back.dst().as_ref(), f.dst().as_ref());
    }
}

#[test]
fn comments_and_blank_lines_are_skipped() {
    let p =
        parse_poset("# a chain\n\nposet 3\n  elements: 0 1 2\nbottom: 0\n# covers follow\ncovers: 0<1 1<2\n").unwrap();
    assert_eq!(p, chain(3));
}

fn line_of(e: &FormatError) -> Option<usize> {
    match e {
        FormatError::Syntax { line, .. } | FormatError::Invalid { line, .. } => Some(*line),
        FormatError::Eof(_) => None,
    }
}

#[test]
fn errors_name_the_line() {
    let e = parse_poset("poset P\nelements: 0 a\nbottom: 0\ncovers: 0-a\n").unwrap_err();
    assert!(e.is_syntax());
    assert_eq!(line_of(&e), Some(4));
    assert!(e.to_string().starts_with("line 4:"));

    let e = parse_poset("poset P\nelements: 0 a a\nbottom: 0\ncovers: 0<a\n").unwrap_err();
    assert!(matches!(e, FormatError::Invalid { line: 2, source: CoreError::DuplicateElement(_) }), "{e:?}");

    let e = parse_poset("poset P\nelements: 0 a b\nbottom: 0\ncovers: 0<a\n").unwrap_err();
    assert!(!e.is_syntax());

    let e = parse_poset("poset P\nelements: 0 a\nbottom: 0\ncovers: a<0 0<a\n").unwrap_err();
    assert_eq!(line_of(&e), Some(4));

    let e = parse_poset("poset P\nelements: 0\n").unwrap_err();
    assert!(matches!(e, FormatError::Eof("bottom:")));

    let e = parse_poset("poset P\nelements: 0\nbottom: 0\ncovers:\nextra\n").unwrap_err();
    assert_eq!(line_of(&e), Some(5));
}

#[test]
fn map_errors() {
    let three = Arc::new(chain(3));
    let two = Arc::new(chain(2));
    let posets = [two.clone(), three.clone()];

    let e = parse_map("map f : 2 -> 3\n0 -> 0\n1 -> 1\n1 -> 2\n", &posets).unwrap_err();
    assert!(e.is_syntax());
    assert_eq!(line_of(&e), Some(4));

    let e = parse_map("map f : 2 -> 3\n0 -> 0\n", &posets).unwrap_err();
    assert!(e.is_syntax());

    let e = parse_map("map f : 2 -> 3\n0 -> 0\n1 => 2\n", &posets).unwrap_err();
    assert_eq!(line_of(&e), Some(3));

    let e = parse_map("map f : 2 -> 3\n0 -> 0\n1 -> 7\n", &posets).unwrap_err();
    assert!(matches!(e, FormatError::Invalid { line: 3, source: CoreError::UnknownElement(_) }));

    let e = parse_map("map f : 3 -> 3\n0 -> 0\n1 -> 2\n2 -> 1\n", &posets).unwrap_err();
    assert!(!e.is_syntax());
    assert_eq!(line_of(&e), Some(1));

    let e = parse_map("map f : 2 -> 9\n0 -> 0\n1 -> 1\n", &posets).unwrap_err();
    assert!(e.is_syntax());
}

#[test]
fn traces_round_trip() {
    for kappa in 1..=3 {
        for seed in 0..10 {
            let t = normalize_random(kappa, seed).unwrap();
            let text = write_trace(&t);
            let r = read_trace(&text).unwrap();
            assert_eq!(r.sizes, t.sizes);
            assert_eq!(r.maps.len(), 2 + 4 * t.steps.len());
            let find = |n: &str| -> &FinCpoMap { &r.maps.iter().find(|(m, _)| m == n).unwrap().1 };
            assert_eq!(find("e0").table(), t.e0.table());
            assert_eq!(find("final_iso").table(), t.final_iso.table());
            for (a, s) in t.steps.iter().enumerate() {
                let step = find(&format!("f{a}_{}", a + 1));
                assert_eq!(step.table(), s.step.table());
                assert_eq!(step.src().order(), s.step.src().order());
                assert_eq!(find(&format!("e{}", a + 1)).table(), s.induced.table());
                assert_eq!(find(&format!("g{a}")).table(), s.pair.0.table());
                assert_eq!(find(&format!("h{a}")).table(), s.pair.1.table());
            }
            for (k, &n) in t.sizes.iter().enumerate() {
                let p = r.posets.iter().find(|p| p.name() == format!("A{k}")).unwrap();
                assert_eq!(p.len(), n);
            }
            assert_eq!(write_trace(&t), text);
        }
    }
}

#[test]
fn record_splitting() {
    let recs = split_records(
        "# head\nposet 2\nelements: 0 1\nbottom: 0\ncovers: 0<1\nmap i : 2 -> 2\n0 -> 0\n1 -> 1\nsizes: 1\n",
    );
    assert_eq!(recs.len(), 4);
    assert!(recs[1].starts_with("poset 2"));
    assert!(recs[3].starts_with("sizes:"));
}
