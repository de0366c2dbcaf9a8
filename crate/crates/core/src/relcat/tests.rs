use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::fincat::{ordinal, Functor, Obj};
use crate::limits::Limits;

fn load(name: &str) -> RelCat {
    let path = format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    RelCat::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn k(seq: &[i64]) -> ZigzagType {
    ZigzagType::new(seq)
}

#[test]
fn weq_closure() {
    let c = load("c2of3");
    let und = c.und().clone();
    let names = |r: &RelCat| -> Vec<String> {
        r.weq_generators()
            .into_iter()
            .map(|m| und.mor_name(m).to_string())
            .collect()
    };
    assert_eq!(names(&c), ["a'", "b"]);
    assert_eq!(c.weq_subcategory().num_morphisms(), 5);
    let none = make_relative(und.clone(), &[]).unwrap();
    assert!(none.weq_generators().is_empty());
    let all = make_relative(und.clone(), &und.morphisms().collect::<Vec<_>>()).unwrap();
    assert_eq!(all.weq_subcategory().num_morphisms(), 6);
    // b and a alone generate b∘a too
    let ab = make_relative(und.clone(), &[und.mor("a").unwrap(), und.mor("b").unwrap()]).unwrap();
    assert!(ab.is_weq(und.mor("a'").unwrap()));
}

#[test]
fn normalization() {
    assert_eq!(k(&[1, 1]).entries(), &[2]);
    assert!(k(&[0]).is_empty());
    assert_eq!(k(&[-1, 2, -1]).entries(), &[-1, 2, -1]);
    assert_eq!(k(&[-1, 0, -1, 3, 0, 0]).entries(), &[-2, 3]);
    assert_eq!(k(&[-1, 2, -1]).to_string(), "[-1;2;-1]");
}

#[test]
fn shapes() {
    let s = zigzag_shape(&k(&[]));
    assert_eq!(s.und().num_morphisms(), 1);
    let s = zigzag_shape(&k(&[-1, 2]));
    let u = s.und();
    assert_eq!(u.num_objects(), 4);
    // 4 identities, 1->0, 1->2, 2->3, 1->3
    assert_eq!(u.num_morphisms(), 8);
    let gens: Vec<&str> = s
        .weq_generators()
        .into_iter()
        .map(|m| u.mor_name(m))
        .collect();
    assert_eq!(gens, ["1->0"]);
    assert_eq!(**zigzag_shape(&k(&[3])).und(), ordinal(3));
    let file = load("shape_-1_2");
    assert_eq!(file.weq_generators().len(), 1);
    assert_eq!(file.und().num_morphisms(), u.num_morphisms());
}

#[test]
fn relative_functor_categories() {
    let limits = Limits::default();
    let c = load("c2of3");
    let pt = RelCat::minimal(Arc::new(ordinal(0)));
    let r0 = rel_functor_category(&pt, &c, &limits).unwrap();
    assert_eq!(r0.functors.cat().num_objects(), 3);
    let one = zigzag_shape(&k(&[1]));
    let r1 = rel_functor_category(&one, &c, &limits).unwrap();
    assert_eq!(r1.functors.cat().num_objects(), 6);
    let back = zigzag_shape(&k(&[-1]));
    let rb = rel_functor_category(&back, &c, &limits).unwrap();
    assert_eq!(rb.functors.cat().num_objects(), 5);
    // the dedicated zigzag enumerator agrees with the generic one
    let w = weq_rel_fun(&c, &k(&[-1]), &limits).unwrap();
    assert_eq!(w.cat().obj_names(), rb.functors.cat().obj_names());
    assert_eq!(
        w.cat().num_morphisms(),
        rb.rel.weq_subcategory().num_morphisms()
    );
}

#[test]
fn zigzag_categories() {
    let limits = Limits::default();
    let c = load("c2of3");
    let (x0, x1) = (Obj(0), Obj(1));
    let z = zigzag_category(&c, &k(&[-1, 1, -1]), x0, x1, &limits).unwrap();
    assert_eq!(z.cat().num_objects(), 2);
    assert_eq!(z.cat().non_identities().count(), 1);
    let e = zigzag_category(&c, &k(&[]), x0, x1, &limits).unwrap();
    assert_eq!(e.cat().num_objects(), 0);
    let p = zigzag_category(&c, &k(&[]), x1, x1, &limits).unwrap();
    assert_eq!(p.cat().num_objects(), 1);
    let d = zigzag_category(&c, &k(&[1]), x0, Obj(2), &limits).unwrap();
    assert_eq!(d.cat().num_objects(), 1);
    assert_eq!(d.cat().num_morphisms(), 1);
}

#[test]
fn insertion_identities() {
    let limits = Limits::default();
    let c = load("c2of3");
    for seq in [[-1i64, 1, -1], [-1, 2, -1]] {
        let before = k(&seq);
        for seg in [0, 2] {
            let s0 = ShapeMap::s0(&before, seg).unwrap();
            let s1 = ShapeMap::s1(&before, seg).unwrap();
            let d = ShapeMap::d(&s0.from, seg).unwrap();
            for x in c.und().objects() {
                for y in c.und().objects() {
                    let (a, b, fs0) = insertion_functor(&c, &s0, Some((x, y)), &limits).unwrap();
                    let fs1 = precompose_along(&s1, &a, &b).unwrap();
                    let fd = precompose_along(&d, &b, &a).unwrap();
                    let id = Functor::identity(a.cat());
                    assert_eq!(fd.after(&fs0).unwrap(), id);
                    assert_eq!(fd.after(&fs1).unwrap(), id);
                }
            }
        }
    }
    for n in 0..3 {
        let s2 = ShapeMap::s2(n).unwrap();
        let r2 = ShapeMap::r2(n).unwrap();
        let (a, b, fs2) = insertion_functor(&c, &s2, None, &limits).unwrap();
        let fr2 = precompose_along(&r2, &b, &a).unwrap();
        assert_eq!(fr2.after(&fs2).unwrap(), Functor::identity(a.cat()));
    }
}

#[test]
fn s0_and_s1_differ() {
    let limits = Limits::default();
    let c = load("c2of3");
    let before = k(&[-1, 1, -1]);
    let s0 = ShapeMap::s0(&before, 0).unwrap();
    let s1 = ShapeMap::s1(&before, 0).unwrap();
    // X = 2 admits the non-identity weak equivalences into it
    let (a, b, f0) = insertion_functor(&c, &s0, Some((Obj(2), Obj(2))), &limits).unwrap();
    let f1 = precompose_along(&s1, &a, &b).unwrap();
    assert_ne!(f0, f1);
}

#[test]
fn two_of_three() {
    let c = load("c2of3");
    let w = two_out_of_three(&c).unwrap();
    let u = c.und();
    assert_eq!(
        (u.mor_name(w.f), u.mor_name(w.g), u.mor_name(w.gf)),
        ("a", "b", "a'")
    );
    assert_eq!(two_out_of_three(&RelCat::all_weq(u.clone())), None);
    assert_eq!(two_out_of_three(&RelCat::minimal(u.clone())), None);
}

#[test]
fn shape_map_rejects_bad_maps() {
    // a leftward arrow may not be sent to a rightward one
    let err = ShapeMap::new(k(&[-1]), k(&[1]), vec![0, 1]).unwrap_err();
    assert!(matches!(err, crate::Error::ShapeMismatch(_)));
    let err = ShapeMap::s0(&k(&[1]), 0).unwrap_err();
    assert!(matches!(err, crate::Error::ShapeMismatch(_)));
}

proptest! {
    #[test]
    fn normalization_is_idempotent_and_length_preserving(seq in proptest::collection::vec(-3i64..4, 0..8)) {
        let n = ZigzagType::new(&seq);
        prop_assert_eq!(ZigzagType::new(n.entries()), n.clone());
        prop_assert_eq!(n.len(), seq.iter().map(|x| x.unsigned_abs() as usize).sum::<usize>());
        prop_assert!(n.entries().windows(2).all(|w| (w[0] < 0) != (w[1] < 0)));
        prop_assert!(n.entries().iter().all(|&x| x != 0));
    }

    #[test]
    fn weq_closure_is_least(gens in proptest::collection::vec(0usize..6, 0..4)) {
        let c = load("c2of3");
        let gens: Vec<_> = gens.into_iter().map(|g| crate::fincat::Mor(g as u32)).collect();
        let r = make_relative(c.und().clone(), &gens).unwrap();
        let u = r.und();
        // closed under composition
        for (g, f, h) in u.composition_table() {
            if r.is_weq(g) && r.is_weq(f) {
                prop_assert!(r.is_weq(h));
            }
        }
        // every weak equivalence is an identity, a generator, or a composite of two weak equivalences
        for m in u.morphisms().filter(|&m| r.is_weq(m)) {
            let explained = u.is_identity(m)
                || gens.contains(&m)
                || u.composition_table().any(|(g, f, h)| {
                    h == m && !u.is_identity(g) && !u.is_identity(f) && r.is_weq(g) && r.is_weq(f)
                });
            prop_assert!(explained);
        }
    }
}
