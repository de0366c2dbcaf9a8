use std::collections::BTreeMap;

use proptest::prelude::*;
use relcat::fincat::{RawCategory, RawComposite, RawMorphism};
use relcat::report::{run, verify, Command, Config, Document, InputSpec};
use relcat::Error;

/// Corpus input, command, config adjustment.
type Case = (&'static str, Command, fn(&mut Config));

fn corpus(name: &str) -> RawCategory {
    let path = format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    RawCategory::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn plain(category: RawCategory) -> InputSpec {
    InputSpec {
        construction: None,
        category,
    }
}

fn roundtrip(doc: &Document) -> Document {
    let text = doc.to_json();
    let back = Document::from_json(&text).unwrap();
    assert_eq!(back.to_json(), text);
    verify(&back).unwrap();
    back
}

/// The poset on `0..n` with `i ≤ j` exactly when `le(i, j)` (assumed
/// transitive), weak equivalences chosen by `weq`.
fn poset(
    n: usize,
    le: impl Fn(usize, usize) -> bool,
    weq: impl Fn(usize, usize) -> bool,
) -> RawCategory {
    let name = |i: usize, j: usize| {
        if i == j {
            format!("id{i}")
        } else {
            format!("m{i}{j}")
        }
    };
    let mut morphisms = Vec::new();
    let mut identities = BTreeMap::new();
    let mut composition = Vec::new();
    let mut gens = Vec::new();
    for i in 0..n {
        identities.insert(i.to_string(), name(i, i));
        for j in 0..n {
            if i == j || le(i, j) {
                morphisms.push(RawMorphism {
                    id: name(i, j),
                    src: i.to_string(),
                    tgt: j.to_string(),
                });
                if i != j && weq(i, j) {
                    gens.push(name(i, j));
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if i != j && j != k && le(i, j) && le(j, k) {
                    composition.push(RawComposite {
                        g: name(j, k),
                        f: name(i, j),
                        gf: name(i, k),
                    });
                }
            }
        }
    }
    RawCategory {
        objects: (0..n).map(|i| i.to_string()).collect(),
        morphisms,
        identities,
        composition,
        weq_generators: Some(gens),
    }
}

/// A random poset on at most `max` objects refining the linear order, with
/// random weak equivalences.
fn random_poset(max: usize) -> impl Strategy<Value = RawCategory> {
    (1usize..=max, any::<u16>(), any::<u16>()).prop_map(|(n, rel, weq)| {
        let mut le = vec![vec![false; n]; n];
        let mut bit = 0;
        for i in 0..n {
            for j in i + 1..n {
                le[i][j] = rel >> (bit % 16) & 1 == 1;
                bit += 1;
            }
        }
        for m in 0..n {
            for i in 0..n {
                for j in 0..n {
                    if le[i][m] && le[m][j] {
                        le[i][j] = true;
                    }
                }
            }
        }
        poset(
            n,
            |i, j| le[i][j],
            |i, j| weq >> ((i * 4 + j) % 16) & 1 == 1,
        )
    })
}

#[test]
fn corpus_reports_round_trip() {
    let cases: &[Case] = &[
        ("bz2", Command::NerveHomology, |c| c.d = 3),
        ("shape_-1_2", Command::Validate, |_| {}),
        ("c2of3", Command::Zigzag, |c| {
            c.x = Some("0".into());
            c.y = Some("1".into());
        }),
        ("walkiso_all", Command::Classify, |_| {}),
        ("walkiso", Command::Saturation, |c| c.l = 1),
        ("c2of3", Command::HoHom, |c| {
            c.x = Some("0".into());
            c.y = Some("2".into());
        }),
        ("c2of3", Command::Htac, |_| {}),
        ("c2of3", Command::Segal, |_| {}),
        ("c2of3", Command::Completeness, |_| {}),
        ("htac_fail", Command::Htac, |c| c.k = 1),
    ];
    for (name, command, tweak) in cases {
        let mut config = Config::default();
        tweak(&mut config);
        let doc = run(*command, &plain(corpus(name)), &config).unwrap();
        roundtrip(&doc);
    }
}

#[test]
fn zigzag_category_has_maximum_on_the_counterexample() {
    let config = Config {
        x: Some("0".into()),
        y: Some("1".into()),
        ..Config::default()
    };
    let doc = run(Command::Zigzag, &plain(corpus("c2of3")), &config).unwrap();
    let v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
    assert_eq!(v["report"]["objects"].as_array().unwrap().len(), 2);
    assert_eq!(v["report"]["maximum"], "<id_0,a',b>");
}

#[test]
fn tampered_certificate_is_rejected() {
    let doc = run(
        Command::Htac,
        &plain(corpus("c2of3")),
        &Config {
            k: 1,
            ..Config::default()
        },
    )
    .unwrap();
    let mut v: serde_json::Value = serde_json::from_str(&doc.to_json()).unwrap();
    // claim a different bound than the cells cover
    v["report"]["k_max"] = serde_json::json!(2);
    let tampered = Document::from_json(&v.to_string());
    match tampered {
        Ok(doc) => assert!(matches!(verify(&doc), Err(Error::Verification(_)))),
        Err(e) => assert!(matches!(e, Error::InputParse(_))),
    }
}

#[test]
fn missing_endpoint_is_an_error() {
    let err = run(Command::HoHom, &plain(corpus("c2of3")), &Config::default()).unwrap_err();
    assert!(err.to_string().contains("--x"), "{err}");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn plain_reports_verify(raw in random_poset(4)) {
        for command in [Command::Validate, Command::NerveHomology, Command::Classify] {
            let doc = run(command, &plain(raw.clone()), &Config::default()).unwrap();
            roundtrip(&doc);
        }
    }

    #[test]
    fn certificates_verify(raw in random_poset(4)) {
        let config = Config { k: 1, l: 2, ..Config::default() };
        for command in [Command::Htac, Command::Saturation] {
            let doc = run(command, &plain(raw.clone()), &config).unwrap();
            roundtrip(&doc);
        }
    }

    // the degeneracy functor's target grows fast, so keep these small
    #[test]
    fn completeness_certificates_verify(raw in random_poset(3)) {
        let config = Config { l: 2, ..Config::default() };
        let doc = run(Command::Completeness, &plain(raw), &config).unwrap();
        roundtrip(&doc);
    }

    // Segal cubes grow quickly with the number of objects
    #[test]
    fn segal_certificates_verify(raw in random_poset(2)) {
        let doc = run(Command::Segal, &plain(raw), &Config::default()).unwrap();
        prop_assert!(doc.passed());
        roundtrip(&doc);
    }

    #[test]
    fn output_is_stable(raw in random_poset(4)) {
        let config = Config { k: 1, ..Config::default() };
        let a = run(Command::Htac, &plain(raw.clone()), &config).unwrap().to_json();
        let b = run(Command::Htac, &plain(raw), &config).unwrap().to_json();
        prop_assert_eq!(a, b);
    }
}
