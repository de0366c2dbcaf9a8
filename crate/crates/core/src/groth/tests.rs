use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::error::Error;
use crate::fincat::{
    arrow_category, enumerate_functors, ordinal, product, slice, terminal, to_terminal, FinCat,
    FinCatBuilder, Functor, Mor, Obj, SliceSide,
};
use crate::limits::Limits;
use crate::relcat::{weq_rel_fun, RelCat, ZigzagType};
use crate::testutil::{arc, load_cat, load_rel, poset};

/// The slice (covariant, by postcomposition) or coslice (contravariant, by
/// precomposition) diagram of a category over itself.
fn slice_diagram(c: &Arc<FinCat>, side: SliceSide) -> CatDiagram {
    let values: Vec<Arc<FinCat>> = c.objects().map(|x| slice(c, x, side).unwrap().0).collect();
    let variance = match side {
        SliceSide::Over => Variance::Covariant,
        SliceSide::Under => Variance::Contravariant,
    };
    let actions = c
        .morphisms()
        .map(|f| {
            let act = |g: &str| -> String {
                let g = c.mor(g).unwrap();
                let h = match side {
                    SliceSide::Over => c.compose(f, g),
                    SliceSide::Under => c.compose(g, f),
                };
                c.mor_name(h.unwrap()).to_string()
            };
            let (from, to) = match side {
                SliceSide::Over => (c.src(f), c.tgt(f)),
                SliceSide::Under => (c.tgt(f), c.src(f)),
            };
            Functor::by_names(
                values[from.idx()].clone(),
                values[to.idx()].clone(),
                |o| act(o),
                |m| {
                    let (h, rest) = m.split_once(':').unwrap();
                    let (g1, g2) = rest.split_once("->").unwrap();
                    format!("{h}:{}->{}", act(g1), act(g2))
                },
            )
            .unwrap()
        })
        .collect();
    CatDiagram::new(c.clone(), variance, values, actions).unwrap()
}

fn point_into_ordinal() -> Functor {
    let mut b = FinCatBuilder::new();
    let o = b.add_object("*").unwrap();
    b.add_identity(o, "id_*").unwrap();
    b.fill_identity_composites().unwrap();
    let pt = arc(b.build().unwrap());
    Functor::new(pt, arc(ordinal(1)), vec![Obj(0)], vec![Mor(0)]).unwrap()
}

#[test]
fn dom_on_arrows_is_split_fibration() {
    let limits = Limits::default();
    let c = arc(load_cat("c2of3"));
    let (arrows, dom, codom) = arrow_category(&c, &limits).unwrap();
    let rep = check_fibration(&dom, Variant::Fibration);
    assert!(rep.verdict && rep.split);
    assert!(verify_report(&rep));
    assert!(check_fibration(&codom, Variant::Opfibration).split);
    // fibers are coslices: arrows out of A with squares whose top is id_A
    for a in c.objects() {
        let (fib, incl) = fiber(&dom, a).unwrap();
        let (cos, _) = slice(&c, a, SliceSide::Under).unwrap();
        assert_eq!(fib.num_objects(), cos.num_objects());
        assert_eq!(fib.num_morphisms(), cos.num_morphisms());
        let mut images: Vec<Mor> = fib
            .objects()
            .map(|o| arrows.mor_map(incl.on_obj(o))[1])
            .collect();
        images.sort();
        assert_eq!(images, c.out_of(a));
    }
}

#[test]
fn transition_along_dom_is_precomposition() {
    let limits = Limits::default();
    let c = arc(load_cat("c2of3"));
    let (arrows, dom, _) = arrow_category(&c, &limits).unwrap();
    let rep = check_fibration(&dom, Variant::Fibration);
    let a = c.mor("a").unwrap();
    let t = transition_functor(&rep, a).unwrap();
    let (_, from) = fiber(&dom, c.tgt(a)).unwrap();
    let (_, to) = fiber(&dom, c.src(a)).unwrap();
    for o in t.source().objects() {
        let g = arrows.mor_map(from.on_obj(o))[1];
        let moved = arrows.mor_map(to.on_obj(t.on_obj(o)))[1];
        assert_eq!(Some(moved), c.compose(g, a));
    }
    // identities act trivially and composites strictly
    for x in c.objects() {
        let id = transition_functor(&rep, c.id(x)).unwrap();
        assert_eq!(id, Functor::identity(id.source()));
    }
    for (g, f, gf) in c.composition_table() {
        let lhs = transition_functor(&rep, gf).unwrap();
        let rhs = transition_functor(&rep, f)
            .unwrap()
            .after(&transition_functor(&rep, g).unwrap())
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn terminal_projection_is_bifibration() {
    let pt = arc(terminal());
    for name in ["c2of3", "bz2", "walkiso"] {
        let c = arc(load_cat(name));
        let p = to_terminal(&c, &pt);
        for v in [Variant::Fibration, Variant::Opfibration] {
            let rep = check_fibration(&p, v);
            assert!(rep.verdict && rep.split, "{name} {v:?}");
            assert!(verify_report(&rep));
            assert_eq!(
                transition_functor(&rep, Mor(0)).unwrap(),
                Functor::identity(&c)
            );
        }
        assert_eq!(*fiber(&p, Obj(0)).unwrap().0, *c);
    }
}

#[test]
fn point_into_ordinal_is_not_an_opfibration() {
    let p = point_into_ordinal();
    assert!(check_fibration(&p, Variant::Fibration).verdict);
    let rep = check_fibration(&p, Variant::Opfibration);
    assert!(!rep.verdict);
    assert_eq!(
        rep.counterexample,
        Some((Obj(0), p.target().mor("0->1").unwrap()))
    );
    assert!(verify_report(&rep));
    assert_eq!(rep.summary().counterexample.unwrap().base, "0->1");
    assert!(matches!(
        transition_functor(&rep, Mor(1)),
        Err(Error::NotAFibration(_))
    ));
}

#[test]
fn simple_fibers() {
    let limits = Limits::default();
    let c = arc(load_cat("c2of3"));
    let id = Functor::identity(&c);
    for b in c.objects() {
        let (f, _) = fiber(&id, b).unwrap();
        assert_eq!((f.num_objects(), f.num_morphisms()), (1, 1));
    }
    assert!(matches!(fiber(&id, Obj(7)), Err(Error::UnknownObject(_))));
    let d = arc(load_cat("walkiso"));
    let (_, pr1, _) = product(&c, &d, &limits).unwrap();
    for b in c.objects() {
        let (f, _) = fiber(&pr1, b).unwrap();
        assert_eq!(f.num_objects(), d.num_objects());
        assert_eq!(f.num_morphisms(), d.num_morphisms());
        assert_eq!(f.num_composable_pairs(), d.num_composable_pairs());
    }
}

#[test]
fn report_summary_serializes() {
    let c = arc(ordinal(1));
    let pt = arc(terminal());
    let rep = check_fibration(&to_terminal(&c, &pt), Variant::Fibration);
    let json = serde_json::to_value(rep.summary()).unwrap();
    assert_eq!(json["verdict"], "yes");
    assert_eq!(json["variant"], "fibration");
    assert_eq!(json["lifts"].as_array().unwrap().len(), 2);
    assert!(json.get("counterexample").is_none());
}

#[test]
fn constant_point_diagrams_recover_the_base() {
    let limits = Limits::default();
    let pt = arc(terminal());
    for name in ["c2of3", "bz2"] {
        let c = arc(load_cat(name));
        let f = CatDiagram::constant(&c, Variance::Contravariant, &pt);
        let g = CatDiagram::constant(&c, Variance::Covariant, &pt);
        let (tc, proj) = two_sided_grothendieck(&f, &g, &limits).unwrap();
        assert!(proj.is_bijective());
        assert_eq!(tc.cat.num_composable_pairs(), c.num_composable_pairs());
        proj.check().unwrap();
    }
}

#[test]
fn one_sided_construction_is_split_fibration() {
    let limits = Limits::default();
    let pt = arc(terminal());
    for name in ["c2of3", "walkiso", "bz2"] {
        let c = arc(load_cat(name));
        let f = slice_diagram(&c, SliceSide::Under);
        let (tc, proj) = two_sided_grothendieck(
            &f,
            &CatDiagram::constant(&c, Variance::Covariant, &pt),
            &limits,
        )
        .unwrap();
        tc.cat.check_laws().unwrap();
        let rep = check_fibration(&proj, Variant::Fibration);
        assert!(rep.verdict && rep.split, "{name}");
        assert!(verify_report(&rep));
        // and dually the covariant side gives a split opfibration
        let g = slice_diagram(&c, SliceSide::Over);
        let (tc, proj) = two_sided_grothendieck(
            &CatDiagram::constant(&c, Variance::Contravariant, &pt),
            &g,
            &limits,
        )
        .unwrap();
        tc.cat.check_laws().unwrap();
        let rep = check_fibration(&proj, Variant::Opfibration);
        assert!(rep.verdict && rep.split, "{name}");
    }
}

#[test]
fn diagram_checks_functoriality() {
    let c = arc(ordinal(1));
    let values = vec![arc(ordinal(0)), arc(ordinal(1))];
    // the action of 0->1 is the constant at the top, which is fine; a wrong
    // identity action is not
    let bad = vec![
        Functor::constant(&values[1], &values[1], Obj(1)),
        Functor::constant(&values[0], &values[1], Obj(1)),
        Functor::identity(&values[1]),
    ];
    let good = vec![
        Functor::identity(&values[0]),
        Functor::constant(&values[0], &values[1], Obj(1)),
        Functor::identity(&values[1]),
    ];
    assert!(CatDiagram::new(c.clone(), Variance::Covariant, values.clone(), good).is_ok());
    assert!(matches!(
        CatDiagram::new(c, Variance::Covariant, values, bad),
        Err(Error::InvalidFunctor(_))
    ));
}

#[test]
fn zigzag_bifunctor_requires_backward_ends() {
    let limits = Limits::default();
    let c = load_rel("c2of3");
    let err = zigzag_bifunctor(&c, &ZigzagType::new(&[1]), &limits).unwrap_err();
    assert!(matches!(err, Error::BadZigzagType(_)));
    let err = zigzag_bifunctor(&c, &ZigzagType::new(&[-1, 1]), &limits).unwrap_err();
    assert!(matches!(err, Error::BadZigzagType(_)));
}

#[test]
fn zigzag_bifunctor_is_strict() {
    let limits = Limits::default();
    let c = load_rel("c2of3");
    for seq in [vec![-1], vec![-1, 1, -1], vec![-1, 2, -1]] {
        let k = ZigzagType::new(&seq);
        let zb = zigzag_bifunctor(&c, &k, &limits).unwrap();
        zb.bifunctor.check().unwrap();
        let n = c.und().num_objects();
        for x in c.und().objects() {
            for y in c.und().objects() {
                let direct = crate::relcat::zigzag_category(&c, &k, x, y, &limits).unwrap();
                assert_eq!(
                    zb.bifunctor.value(x, y).obj_names(),
                    direct.cat().obj_names()
                );
                assert_eq!(
                    zb.cells[x.idx() * n + y.idx()].cat().obj_names(),
                    direct.cat().obj_names()
                );
            }
        }
    }
}

#[test]
fn canonical_isomorphism() {
    let limits = Limits::default();
    let c2of3 = load_rel("c2of3");
    let all = RelCat::all_weq(c2of3.und().clone());
    let cases = [
        (&c2of3, vec![-1, 1, -1]),
        (&all, vec![-1, -1]),
        (&c2of3, vec![-1]),
        (&all, vec![-1]),
    ];
    for (c, seq) in cases {
        assert!(
            verify_canonical_iso(c, &ZigzagType::new(&seq), &limits).unwrap(),
            "{seq:?}"
        );
    }
    for name in ["walkiso", "walkiso_all", "bz2", "htac_fail"] {
        let c = load_rel(name);
        for seq in [vec![-1], vec![-1, 1, -1]] {
            assert!(
                verify_canonical_iso(&c, &ZigzagType::new(&seq), &limits).unwrap(),
                "{name} {seq:?}"
            );
        }
    }
}

#[test]
fn zigzag_projections_are_split_bifibrations() {
    let limits = Limits::default();
    for name in ["c2of3", "walkiso_all", "htac_fail"] {
        let c = load_rel(name);
        for seq in [vec![-1], vec![-1, 1, -1], vec![-1, 2, -1]] {
            let k = ZigzagType::new(&seq);
            let w = weq_rel_fun(&c, &k, &limits).unwrap();
            let dom = c.corestrict(&w.evaluate(Obj(0))).unwrap();
            let codom = c.corestrict(&w.evaluate(Obj(k.len() as u32))).unwrap();
            let op = check_fibration(&dom, Variant::Opfibration);
            assert!(op.verdict && op.split, "{name} {seq:?}");
            let fib = check_fibration(&codom, Variant::Fibration);
            assert!(fib.verdict && fib.split, "{name} {seq:?}");
            assert!(verify_report(&op) && verify_report(&fib));
        }
    }
}

/// The bijection condition checked directly from the definition for every
/// recorded lift, independently of `is_cartesian`.
fn brute_force_cartesian(p: &Functor, phi: Mor) -> bool {
    let (e, b) = (p.source(), p.target());
    let f = p.on_mor(phi);
    for e2 in e.objects() {
        let mut hit = std::collections::BTreeMap::new();
        for &psi in e.hom(e2, e.src(phi)) {
            let key = (e.compose(phi, psi).unwrap(), p.on_mor(psi));
            if hit.insert(key, psi).is_some() {
                return false;
            }
        }
        for &h in e.hom(e2, e.tgt(phi)) {
            for &g in b.hom(p.on_obj(e2), b.src(f)) {
                if b.compose(f, g) == Some(p.on_mor(h)) && !hit.contains_key(&(h, g)) {
                    return false;
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn fibration_agrees_with_opposite(
        n in 1usize..4,
        m in 1usize..4,
        r1 in proptest::collection::vec(any::<bool>(), 0..6),
        r2 in proptest::collection::vec(any::<bool>(), 0..6),
        pick in any::<usize>(),
    ) {
        let e = arc(poset(n, &r1));
        let b = arc(poset(m, &r2));
        let all = enumerate_functors(&e, &b, 100_000).unwrap();
        let (om, mm) = all[pick % all.len()].clone();
        let p = Functor::new(e.clone(), b.clone(), om, mm).unwrap();
        let e_op = arc(crate::fincat::opposite(&e));
        let b_op = arc(crate::fincat::opposite(&b));
        let p_op = p.opposite(e_op, b_op);
        for (v, w) in [(Variant::Fibration, Variant::Opfibration), (Variant::Opfibration, Variant::Fibration)] {
            let a = check_fibration(&p, v);
            let o = check_fibration(&p_op, w);
            prop_assert_eq!(a.verdict, o.verdict);
            prop_assert_eq!(&a.lifts, &o.lifts);
            prop_assert_eq!(a.split, o.split);
            prop_assert!(verify_report(&a));
        }
        let rep = check_fibration(&p, Variant::Fibration);
        for l in &rep.lifts {
            prop_assert!(brute_force_cartesian(&p, l.lift));
        }
    }

    #[test]
    fn two_sided_object_count(
        n in 1usize..5,
        rel in proptest::collection::vec(any::<bool>(), 0..10),
    ) {
        let limits = Limits::default();
        let c = arc(poset(n, &rel));
        let f = slice_diagram(&c, SliceSide::Under);
        let g = slice_diagram(&c, SliceSide::Over);
        let (tc, proj) = two_sided_grothendieck(&f, &g, &limits).unwrap();
        let expected: usize = c
            .objects()
            .map(|o| f.value(o).num_objects() * g.value(o).num_objects())
            .sum();
        prop_assert_eq!(tc.cat.num_objects(), expected);
        prop_assert!(tc.cat.check_laws().is_ok());
        prop_assert!(proj.check().is_ok());
    }
}
