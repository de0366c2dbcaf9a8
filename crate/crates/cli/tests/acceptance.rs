//! One line per acceptance criterion, each with its pinned time limit.
//! Results are exact; a criterion that misses its limit fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::sync::Arc;
use std::time::{Duration, Instant};

use relcat::classify::{
    completeness_report, hom_space_certificate, htac_certificate, saturation_report,
    segal_certificate, segal_cube,
};
use relcat::fincat::{terminal, to_terminal, FinCat, Functor, Obj, RawCategory};
use relcat::groth::Variant;
use relcat::homology::{homology, nerve_complex, CertOptions, Evidence};
use relcat::hpb::{product_certificate, strict_pullback, theorem_b_certificate, HpbEvidence};
use relcat::relcat::{
    insertion_functor, precompose_along, zigzag_category, RelCat, ShapeMap, ZigzagType,
};
use relcat::report::{self, Body, Command, Config, Construction, Document, InputSpec, Leg};
use relcat::Limits;

type Check = Result<(), String>;

/// Description, time limit in seconds, check.
type Criterion = (&'static str, Option<u64>, fn() -> Check);

fn corpus() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn raw(name: &str) -> RawCategory {
    RawCategory::from_json(&fs::read_to_string(corpus().join(format!("{name}.json"))).unwrap())
        .unwrap()
}

fn rel(name: &str) -> RelCat {
    RelCat::from_raw(&raw(name)).unwrap()
}

fn opts() -> CertOptions {
    CertOptions {
        d: 2,
        ..CertOptions::default()
    }
}

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// Every corpus input as the relative category commands run on.
fn corpus_inputs() -> Vec<(String, RelCat)> {
    let mut out = Vec::new();
    let mut names: Vec<_> = fs::read_dir(corpus())
        .unwrap()
        .filter_map(|e| e.unwrap().file_name().into_string().ok())
        .filter(|n| n.ends_with(".json"))
        .collect();
    names.sort();
    for name in names {
        let text = fs::read_to_string(corpus().join(&name)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        let input = match value.get("base").and_then(|b| b.as_str()) {
            Some(base) => InputSpec {
                construction: Some(Construction::Arrow),
                category: raw(base.trim_end_matches(".json")),
            },
            None => InputSpec {
                construction: None,
                category: RawCategory::from_json(&text).unwrap(),
            },
        };
        out.push((
            name,
            report::load_input(&input, &Limits::default()).unwrap(),
        ));
    }
    out
}

fn exact_identities() -> Check {
    let limits = Limits::default();
    for (name, c) in corpus_inputs() {
        let before = ZigzagType::new(&[-1, 1, -1]);
        for seg in [0, 2] {
            let s0 = ShapeMap::s0(&before, seg).map_err(err)?;
            let s1 = ShapeMap::s1(&before, seg).map_err(err)?;
            let d = ShapeMap::d(&s0.from, seg).map_err(err)?;
            for x in c.und().objects() {
                for y in c.und().objects() {
                    let (a, b, fs0) =
                        insertion_functor(&c, &s0, Some((x, y)), &limits).map_err(err)?;
                    let fs1 = precompose_along(&s1, &a, &b).map_err(err)?;
                    let fd = precompose_along(&d, &b, &a).map_err(err)?;
                    let id = Functor::identity(a.cat());
                    ensure(
                        fd.after(&fs0).map_err(err)? == id,
                        format!("{name}: d∘s0 ≠ id at segment {seg}"),
                    )?;
                    ensure(
                        fd.after(&fs1).map_err(err)? == id,
                        format!("{name}: d∘s1 ≠ id at segment {seg}"),
                    )?;
                }
            }
        }
        for n in 0..=1 {
            let s2 = ShapeMap::s2(n).map_err(err)?;
            let r2 = ShapeMap::r2(n).map_err(err)?;
            let (a, b, fs2) = insertion_functor(&c, &s2, None, &limits).map_err(err)?;
            let fr2 = precompose_along(&r2, &b, &a).map_err(err)?;
            ensure(
                fr2.after(&fs2).map_err(err)? == Functor::identity(a.cat()),
                format!("{name}: r²∘s² ≠ id on [{n}]"),
            )?;
        }
    }
    Ok(())
}

// Brute-force homology oracle, sharing nothing with the library: chains of
// composable non-identity morphisms straight from the composition table, and
// a textbook Smith normal form over i64.

fn brute_chains(c: &FinCat, n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return c.objects().map(|o| vec![o.idx()]).collect();
    }
    let mut out: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for chain in &out {
            for m in c.morphisms().filter(|&m| !c.is_identity(m)) {
                let ok = match chain.last() {
                    None => true,
                    Some(&prev) => c.tgt(c.morphisms().nth(prev).unwrap()) == c.src(m),
                };
                if ok {
                    let mut ch = chain.clone();
                    ch.push(m.idx());
                    next.push(ch);
                }
            }
        }
        out = next;
    }
    out
}

fn brute_boundary(c: &FinCat, n: usize) -> Vec<Vec<i64>> {
    let rows = brute_chains(c, n - 1);
    let cols = brute_chains(c, n);
    let mor = |i: usize| c.morphisms().nth(i).unwrap();
    let mut m = vec![vec![0i64; cols.len()]; rows.len()];
    for (j, chain) in cols.iter().enumerate() {
        for i in 0..=n {
            // face i: drop the first vertex, compose at vertex i, or drop the last
            let face: Option<Vec<usize>> = if n == 1 {
                let f = mor(chain[0]);
                Some(vec![if i == 0 {
                    c.tgt(f).idx()
                } else {
                    c.src(f).idx()
                }])
            } else if i == 0 {
                Some(chain[1..].to_vec())
            } else if i == n {
                Some(chain[..n - 1].to_vec())
            } else {
                let gf = c.compose(mor(chain[i]), mor(chain[i - 1])).unwrap();
                if c.is_identity(gf) {
                    None
                } else {
                    let mut f = chain[..i - 1].to_vec();
                    f.push(gf.idx());
                    f.extend_from_slice(&chain[i + 1..]);
                    Some(f)
                }
            };
            if let Some(face) = face {
                let r = rows.iter().position(|x| *x == face).unwrap();
                m[r][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
    }
    m
}

/// Rank and invariant factors greater than one.
fn brute_snf(mut a: Vec<Vec<i64>>) -> (usize, Vec<i64>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pr, pc)) = (t..rows)
            .flat_map(|r| (t..cols).map(move |c| (r, c)))
            .filter(|&(r, c)| a[r][c] != 0)
            .min_by_key(|&(r, c)| a[r][c].abs())
        else {
            break;
        };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        let mut clean = true;
        for r in t + 1..rows {
            let q = a[r][t] / a[t][t];
            for c in t..cols {
                a[r][c] -= q * a[t][c];
            }
            clean &= a[r][t] == 0;
        }
        for c in t + 1..cols {
            let q = a[t][c] / a[t][t];
            for r in t..rows {
                a[r][c] -= q * a[r][t];
            }
            clean &= a[t][c] == 0;
        }
        if !clean {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(r) = (t + 1..rows).find(|&r| (t + 1..cols).any(|c| a[r][c] % a[t][t] != 0)) {
            for c in t..cols {
                a[t][c] += a[r][c];
            }
            continue;
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    (diag.len(), diag.into_iter().filter(|&x| x > 1).collect())
}

fn brute_homology(c: &FinCat, d: usize) -> Vec<(usize, Vec<i64>)> {
    let dims: Vec<usize> = (0..=d + 1).map(|n| brute_chains(c, n).len()).collect();
    let mut inv = vec![(0, vec![])];
    for n in 1..=d + 1 {
        inv.push(brute_snf(brute_boundary(c, n)));
    }
    (0..=d)
        .map(|n| (dims[n] - inv[n].0 - inv[n + 1].0, inv[n + 1].1.clone()))
        .collect()
}

fn homology_oracle() -> Check {
    let point = vec![(1, vec![]), (0, vec![]), (0, vec![]), (0, vec![])];
    let bz2 = vec![(1, vec![]), (0, vec![2]), (0, vec![]), (0, vec![2])];
    for (name, expected) in [("pt", point.clone()), ("walkiso", point), ("bz2", bz2)] {
        let c = rel(name).und().clone();
        let oracle = brute_homology(&c, 3);
        ensure(
            oracle == expected,
            format!("{name}: oracle gives {oracle:?}"),
        )?;
        let k = nerve_complex(&c, 3, &Limits::default()).map_err(err)?;
        let h = homology(&k.complex, 3).map_err(err)?;
        let got: Vec<(usize, Vec<i64>)> = h
            .groups
            .iter()
            .map(|g| {
                (
                    g.rank,
                    g.torsion
                        .iter()
                        .map(|t| i64::try_from(t).unwrap())
                        .collect(),
                )
            })
            .collect();
        ensure(got == expected, format!("{name}: library gives {h}"))?;
    }
    Ok(())
}

fn run(command: Command, input: InputSpec, leg: Option<Leg>) -> Result<Document, String> {
    let config = Config {
        leg,
        ..Config::default()
    };
    report::run(command, &input, &config).map_err(err)
}

fn fibration_detection() -> Check {
    let c = rel("c2of3");
    let input = || InputSpec {
        construction: Some(Construction::Arrow),
        category: raw("c2of3"),
    };
    for (leg, variant) in [
        (Leg::Dom, Variant::Fibration),
        (Leg::Codom, Variant::Opfibration),
    ] {
        let doc = run(Command::CheckFibration, input(), Some(leg))?;
        let Body::CheckFibration(j) = &doc.body else {
            return Err("wrong report kind".into());
        };
        ensure(
            j.fibration.variant == variant && j.fibration.split,
            format!("{leg:?}: {:?}", j.fibration),
        )?;
        for f in &j.fibers {
            let x = c.und().obj(&f.base).map_err(err)?;
            // a coslice has an object per arrow out of x, a slice one per arrow into x
            let expected = match leg {
                Leg::Dom => c.und().out_of(x).len(),
                Leg::Codom => c.und().incoming(x).len(),
            };
            ensure(
                f.slice_iso == Some(true),
                format!("{leg:?}: fiber over {} is not the (co)slice", f.base),
            )?;
            ensure(
                f.objects == expected,
                format!("{leg:?}: fiber over {} has {} objects", f.base, f.objects),
            )?;
        }
    }
    Ok(())
}

fn bifibration_and_canonical_iso() -> Check {
    let input = || InputSpec {
        construction: None,
        category: raw("c2of3"),
    };
    let doc = run(Command::TwoSided, input(), None)?;
    let Body::TwoSided(j) = &doc.body else {
        return Err("wrong report kind".into());
    };
    ensure(
        j.zigzag_type == [-1, 1, -1] && j.canonical_iso,
        "canonical isomorphism not verified",
    )?;
    for (leg, variant) in [
        (Leg::Dom, Variant::Opfibration),
        (Leg::Codom, Variant::Fibration),
    ] {
        let doc = run(Command::CheckFibration, input(), Some(leg))?;
        let Body::CheckFibration(j) = &doc.body else {
            return Err("wrong report kind".into());
        };
        ensure(
            j.fibration.variant == variant && j.fibration.split && j.fibration.verdict == "yes",
            format!(
                "{leg:?} on weq RelFun([-1;1;-1], c2of3): {:?} split={}",
                j.fibration.variant, j.fibration.split
            ),
        )?;
    }
    Ok(())
}

/// An object every object maps to by exactly one morphism.
fn has_maximum(c: &FinCat) -> bool {
    c.objects()
        .any(|m| c.objects().all(|x| c.hom(x, m).len() == 1))
}

fn counterexample() -> Check {
    let c = rel("c2of3");
    let u = c.und();
    let doc = run(
        Command::Validate,
        InputSpec {
            construction: None,
            category: raw("c2of3"),
        },
        None,
    )?;
    let Body::Validate(j) = &doc.body else {
        return Err("wrong report kind".into());
    };
    let w = j
        .witness
        .as_ref()
        .ok_or("two-out-of-three reported to hold")?;
    ensure(
        !j.two_out_of_three && (w.f.as_str(), w.g.as_str()) == ("a", "b"),
        format!("witness {w:?}"),
    )?;
    let ba = u
        .compose(u.mor("b").map_err(err)?, u.mor("a").map_err(err)?)
        .ok_or("b∘a undefined")?;
    ensure(
        u.mor_name(ba) == w.gf,
        format!("witness composite {} is not b∘a", w.gf),
    )?;

    let cert = htac_certificate(&c, 2, &opts()).map_err(err)?;
    ensure(cert.holds(), "three-arrow calculus refused")?;
    for cell in &cert.cells {
        let here = format!(
            "cell (k={}, l={}, {}, {})",
            cell.k,
            cell.l,
            u.obj_name(cell.x),
            u.obj_name(cell.y)
        );
        for k in [cell.cert.functor.source(), cell.cert.functor.target()] {
            ensure(
                k.is_empty() || has_maximum(k),
                format!("{here}: zigzag category without maximum"),
            )?;
        }
        ensure(
            matches!(
                cell.cert.evidence,
                Evidence::ExactIso | Evidence::Contraction { .. }
            ),
            format!("{here}: not certified by a contraction"),
        )?;
    }
    cert.verify(&opts()).map_err(err)
}

fn theorem_b_sanity() -> Check {
    let pt = Arc::new(terminal());
    let w = rel("walkiso").und().clone();
    let sq = strict_pullback(
        &to_terminal(&w, &pt),
        &to_terminal(&w, &pt),
        &Limits::default(),
    )
    .map_err(err)?;
    let prod = product_certificate(&sq, 2).map_err(err)?;
    ensure(
        matches!(prod.evidence, HpbEvidence::Product),
        "product square not certified",
    )?;
    prod.verify(&Limits::default()).map_err(err)?;
    let b = theorem_b_certificate(&sq, Variant::Fibration, &opts()).map_err(err)?;
    ensure(
        matches!(b.evidence, HpbEvidence::TheoremB { .. }),
        "no Theorem B certificate",
    )?;
    b.verify(&Limits::default()).map_err(err)
}

fn segal() -> Check {
    let c = rel("c2of3");
    let cert = segal_certificate(&c, 1, &opts()).map_err(err)?;
    ensure(cert.holds() && cert.d == 2, "Segal certificate refused")?;
    let (back, front, _) = segal_cube(&c, 1, &opts()).map_err(err)?;
    ensure(
        back.is_strict_pullback() && front.is_strict_pullback(),
        "cube face is not a strict pullback",
    )?;
    let HpbEvidence::Transported { corners, .. } = &cert.cert.evidence else {
        return Err("back face not certified through the cube".into());
    };
    for w in corners.iter() {
        ensure(
            w.kind().is_some_and(|k| k.is_strong()),
            format!("oblique arrow only has {:?}", w.kind()),
        )?;
    }
    cert.verify(&opts()).map_err(err)
}

/// Two thin categories are isomorphic when some bijection of objects
/// preserves and reflects the order; tried by brute force.
fn thin_isomorphic(a: &FinCat, b: &FinCat) -> bool {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for i in 0..n {
                let mut q = p.clone();
                q.insert(i, n - 1);
                out.push(q);
            }
        }
        out
    }
    let n = a.num_objects();
    if n != b.num_objects() || !a.is_thin() || !b.is_thin() {
        return false;
    }
    let oa: Vec<Obj> = a.objects().collect();
    let ob: Vec<Obj> = b.objects().collect();
    perms(n).into_iter().any(|p| {
        (0..n).all(|i| {
            (0..n).all(|j| a.hom(oa[i], oa[j]).is_empty() == b.hom(ob[p[i]], ob[p[j]]).is_empty())
        })
    })
}

fn hom_space() -> Check {
    let c = rel("c2of3");
    let (x, y) = (
        c.und().obj("0").map_err(err)?,
        c.und().obj("1").map_err(err)?,
    );
    let cert = hom_space_certificate(&c, x, y, 2, &opts()).map_err(err)?;
    ensure(cert.holds(), "hom-space square refused")?;
    let corner = cert.cert.as_ref().unwrap().square.corners()[0].clone();
    let direct = zigzag_category(&c, &ZigzagType::new(&[-1, 1, -1]), x, y, &Limits::default())
        .map_err(err)?;
    let d = direct.cat();
    ensure(
        corner.num_objects() == 2 && corner.is_thin() && d.num_objects() == 2 && d.is_thin(),
        "corner is not a two-object poset",
    )?;
    ensure(
        thin_isomorphic(&corner, d),
        format!(
            "corner {:?} is not isomorphic to the enumerated {:?}",
            corner.obj_names(),
            d.obj_names()
        ),
    )?;
    cert.verify(&opts()).map_err(err)
}

fn saturation_and_completeness() -> Check {
    let w = rel("walkiso");
    ensure(
        w.weq_generators().is_empty(),
        "walkiso should have identities as its only weak equivalences",
    )?;
    let sat = saturation_report(&w, 1, &Limits::default()).map_err(err)?;
    ensure(
        sat.verdict() == "not-saturated",
        format!("walkiso: {}", sat.verdict()),
    )?;
    ensure(
        sat.entries.iter().all(|e| e.witness.is_some()),
        "violation without witness",
    )?;
    sat.verify().map_err(err)?;
    let comp = completeness_report(&rel("c2of3"), 4, &opts()).map_err(err)?;
    ensure(comp.holds(), "c2of3 not complete at (4, 2)")?;
    comp.verify(&opts()).map_err(err)
}

#[derive(serde::Deserialize)]
struct Entry {
    input: String,
    command: String,
    args: Vec<String>,
    #[serde(default)]
    variant: Option<String>,
}

fn manifest() -> Vec<Entry> {
    serde_json::from_str(&fs::read_to_string(corpus().join("golden/manifest.json")).unwrap())
        .unwrap()
}

fn relcat_bin(args: &[String]) -> std::process::Output {
    Process::new(env!("CARGO_BIN_EXE_relcat"))
        .args(args)
        .env_remove("RELCAT_BUDGET")
        .output()
        .unwrap()
}

fn determinism() -> Check {
    for e in manifest() {
        let mut args = vec![
            e.command.clone(),
            corpus().join(&e.input).display().to_string(),
        ];
        args.extend(e.args.iter().cloned());
        args.extend(["--format".to_string(), "json".to_string()]);
        let with = |jobs: &str| {
            let mut a = args.clone();
            a.extend(["--jobs".to_string(), jobs.to_string()]);
            relcat_bin(&a).stdout
        };
        let (one, four, again) = (with("1"), with("4"), with("4"));
        ensure(
            !one.is_empty() && one == four && four == again,
            format!("{} {} is not byte-stable", e.command, e.input),
        )?;
    }
    Ok(())
}

fn self_containment() -> Check {
    for e in manifest() {
        let stem = e.input.trim_end_matches(".json");
        let name = match &e.variant {
            Some(v) => format!("{stem}.{}.{v}.json", e.command),
            None => format!("{stem}.{}.json", e.command),
        };
        let path = corpus().join("golden").join(&name);
        let doc =
            Document::from_json(&fs::read_to_string(&path).map_err(|x| format!("{name}: {x}"))?)
                .map_err(err)?;
        report::verify(&doc).map_err(|x| format!("{name}: {x}"))?;
        let out = relcat_bin(&["verify".to_string(), path.display().to_string()]);
        ensure(
            out.status.code() == Some(0),
            format!("{name}: verify exits {:?}", out.status.code()),
        )?;
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        (
            "exact identities d∘s0 = d∘s1 = id, r²∘s² = id",
            Some(1),
            exact_identities,
        ),
        (
            "nerve homology matches brute-force oracle",
            Some(5),
            homology_oracle,
        ),
        (
            "dom/codom on arrow category are split (op)fibrations with (co)slice fibers",
            Some(5),
            fibration_detection,
        ),
        (
            "canonical iso and split bifibration on weq RelFun([-1;1;-1], c2of3)",
            Some(30),
            bifibration_and_canonical_iso,
        ),
        (
            "c2of3 fails 2-of-3 at (a, b, b∘a) and admits the three-arrow calculus",
            Some(60),
            counterexample,
        ),
        (
            "walkiso × walkiso over a point is a homotopy pullback",
            Some(5),
            theorem_b_sanity,
        ),
        (
            "Segal certificate for c2of3, n = 1, d = 2",
            Some(300),
            segal,
        ),
        (
            "hom-space certificate for c2of3 (0, 1)",
            Some(300),
            hom_space,
        ),
        (
            "walkiso not saturated at L = 1; c2of3 complete at (4, 2)",
            Some(60),
            saturation_and_completeness,
        ),
        (
            "JSON byte-identical across runs and --jobs 1/4",
            None,
            determinism,
        ),
        (
            "every golden certificate re-verifies",
            None,
            self_containment,
        ),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(()), Some(s)) if took > Duration::from_secs(*s) => {
                Err(format!("took longer than {s} s"))
            }
            (o, _) => o,
        };
        let limit = limit.map_or("none".to_string(), |s| format!("{s} s"));
        match outcome {
            Ok(()) => println!(
                "criterion {:>2} PASS  {name}  ({:.2} s, limit {limit})",
                i + 1,
                took.as_secs_f64()
            ),
            Err(e) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL  {name}  ({:.2} s, limit {limit}): {e}",
                    i + 1,
                    took.as_secs_f64()
                );
            }
        }
    }
    assert_eq!(failed, 0, "{failed} acceptance criteria failed");
}
