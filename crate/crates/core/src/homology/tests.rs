use std::sync::Arc;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::evidence::{CatStore, CatTable};
use crate::fincat::{enumerate_functors, terminal, to_terminal, FinCat, Functor, Obj};
use crate::limits::Limits;
use crate::relcat::{insertion_functor, zigzag_category, ShapeMap, ZigzagType};
use crate::testutil::{arc, load_cat, load_rel, poset};

// Independent oracle: invariant factors as quotients of determinantal divisors
// (gcd of all k×k minors), on small dense matrices.

fn det(m: &[Vec<i128>]) -> i128 {
    // Bareiss fraction-free elimination
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a = m.to_vec();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// (rank, torsion) of an integer matrix by determinantal divisors.
fn oracle_invariants(m: &[Vec<i128>], rows: usize, cols: usize) -> (usize, Vec<u64>) {
    let mut divisors = vec![1i128];
    for k in 1..=rows.min(cols) {
        let mut g = 0;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c]).collect())
                    .collect();
                g = gcd(g, det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        divisors.push(g);
    }
    let rank = divisors.len() - 1;
    let torsion = (1..=rank)
        .map(|k| (divisors[k] / divisors[k - 1]) as u64)
        .filter(|&t| t > 1)
        .collect();
    (rank, torsion)
}

fn dense_i128(m: &SparseMat) -> Vec<Vec<i128>> {
    (0..m.num_rows())
        .map(|r| (0..m.num_cols()).map(|c| m.get(r, c) as i128).collect())
        .collect()
}

fn oracle_homology(k: &ChainComplex, d: usize) -> Vec<(usize, Vec<u64>)> {
    let inv: Vec<(usize, Vec<u64>)> = (0..=d + 1)
        .map(|n| {
            let b = &k.boundaries[n];
            oracle_invariants(&dense_i128(b), b.num_rows(), b.num_cols())
        })
        .collect();
    (0..=d)
        .map(|n| (k.dims[n] - inv[n].0 - inv[n + 1].0, inv[n + 1].1.clone()))
        .collect()
}

fn summary_pairs(h: &HomologySummary) -> Vec<(usize, Vec<u64>)> {
    h.groups
        .iter()
        .map(|g| {
            (
                g.rank,
                g.torsion
                    .iter()
                    .map(|t| u64::try_from(t).unwrap())
                    .collect(),
            )
        })
        .collect()
}

fn nerve_homology(c: &Arc<FinCat>, d: usize) -> HomologySummary {
    let k = nerve_complex(c, d, &Limits::default()).unwrap();
    homology(&k.complex, d).unwrap()
}

#[test]
fn smith_matches_determinantal_divisors_on_fixed_matrices() {
    let cases: Vec<Vec<Vec<i64>>> = vec![
        vec![vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]],
        vec![vec![0, 0], vec![0, 0]],
        vec![vec![6]],
        vec![vec![2, 0], vec![0, 3]],
        vec![vec![4, 6, 0], vec![6, 9, 0]],
    ];
    for rows in cases {
        let (r, c) = (rows.len(), rows[0].len());
        let cols = (0..c)
            .map(|j| (0..r).map(|i| (i as u32, rows[i][j])).collect())
            .collect();
        let m = SparseMat::from_columns(r, cols);
        let snf = smith_invariants(&m);
        let (rank, torsion) = oracle_invariants(&dense_i128(&m), r, c);
        assert_eq!(snf.rank, rank, "{rows:?}");
        let got: Vec<u64> = snf
            .torsion
            .iter()
            .map(|t| u64::try_from(t).unwrap())
            .collect();
        assert_eq!(got, torsion, "{rows:?}");
    }
}

proptest! {
    #[test]
    fn smith_matches_determinantal_divisors(
        r in 1usize..5,
        c in 1usize..5,
        entries in proptest::collection::vec(-6i64..7, 16),
        sparsity in 0u8..3,
    ) {
        let cols: Vec<Vec<(u32, i64)>> = (0..c)
            .map(|j| (0..r).filter_map(|i| {
                let v = entries[(i * 4 + j) % entries.len()];
                let keep = sparsity == 0 || (i + j) % (sparsity as usize + 1) == 0;
                keep.then_some((i as u32, v))
            }).collect())
            .collect();
        let m = SparseMat::from_columns(r, cols);
        let snf = smith_invariants(&m);
        let (rank, torsion) = oracle_invariants(&dense_i128(&m), r, c);
        prop_assert_eq!(snf.rank, rank);
        let got: Vec<u64> = snf.torsion.iter().map(|t| u64::try_from(t).unwrap()).collect();
        prop_assert_eq!(got, torsion);
    }

    #[test]
    fn dense_and_sparse_paths_agree(
        r in 1usize..6,
        c in 1usize..6,
        entries in proptest::collection::vec(-20i64..21, 36),
    ) {
        let cols: Vec<Vec<(u32, i64)>> = (0..c)
            .map(|j| (0..r).map(|i| (i as u32, entries[i * 6 + j])).collect())
            .collect();
        let m = SparseMat::from_columns(r, cols);
        let snf = smith_invariants(&m);
        let diag = dense_snf(m.to_dense());
        let nonzero: Vec<BigUint> = diag.iter().filter(|x| !num_traits::Zero::is_zero(*x)).map(|x| x.magnitude().clone()).collect();
        prop_assert_eq!(snf.rank, nonzero.len());
        let torsion: Vec<BigUint> = nonzero.into_iter().filter(|x| *x > BigUint::from(1u32)).collect();
        prop_assert_eq!(snf.torsion, torsion);
    }
}

#[test]
fn large_entries_fall_back_to_exact_arithmetic() {
    let big = i64::MAX / 3;
    let m = SparseMat::from_columns(
        2,
        vec![
            vec![(0, big), (1, big - 1)],
            vec![(0, big - 1), (1, big - 2)],
        ],
    );
    // det = big(big-2) - (big-1)^2 = -1
    let snf = smith_invariants(&m);
    assert_eq!(snf.rank, 2);
    assert!(snf.torsion.is_empty());
    let m = SparseMat::from_columns(1, vec![vec![(0, big)], vec![(0, big)]]);
    let snf = smith_invariants(&m);
    assert_eq!((snf.rank, snf.torsion.len()), (1, 1));
}

#[test]
fn bz2_matches_the_hand_written_complex() {
    // one object, one non-identity s with s∘s = id: one chain per degree, and
    // ∂_n = 0 for odd n, 2 for even n ≥ 2
    let bz2 = arc(load_cat("bz2"));
    let k = nerve_complex(&bz2, 3, &Limits::default()).unwrap();
    assert_eq!(k.complex.dims, vec![1, 1, 1, 1, 1]);
    let hand = ChainComplex {
        dims: vec![1; 5],
        boundaries: vec![
            SparseMat::zero(0, 1),
            SparseMat::from_columns(1, vec![vec![]]),
            SparseMat::from_columns(1, vec![vec![(0, 2)]]),
            SparseMat::from_columns(1, vec![vec![]]),
            SparseMat::from_columns(1, vec![vec![(0, 2)]]),
        ],
    };
    assert_eq!(k.complex, hand);
    let expected = vec![(1, vec![]), (0, vec![2]), (0, vec![]), (0, vec![2])];
    assert_eq!(oracle_homology(&hand, 3), expected);
    let h = homology(&k.complex, 3).unwrap();
    assert_eq!(summary_pairs(&h), expected);
    assert_eq!(h.to_string(), "H_0 = Z, H_1 = Z/2, H_2 = 0, H_3 = Z/2");
}

#[test]
fn corpus_homology_through_degree_three() {
    let point = vec![(1, vec![]), (0, vec![]), (0, vec![]), (0, vec![])];
    for (name, expected) in [
        ("pt", point.clone()),
        ("walkiso", point.clone()),
        ("arrow", point.clone()),
        (
            "bz2",
            vec![(1, vec![]), (0, vec![2]), (0, vec![]), (0, vec![2])],
        ),
    ] {
        let c = arc(load_cat(name));
        let k = nerve_complex(&c, 3, &Limits::default()).unwrap();
        assert!(k.complex.is_complex(), "{name}");
        let h = homology(&k.complex, 3).unwrap();
        assert_eq!(summary_pairs(&h), expected, "{name}");
        assert_eq!(oracle_homology(&k.complex, 3), expected, "{name}");
    }
}

#[test]
fn small_nerves() {
    let l = Limits::default();
    let pt = arc(terminal());
    let k = nerve_complex(&pt, 3, &l).unwrap();
    assert_eq!(k.complex.dims, vec![1, 0, 0, 0, 0]);
    let o1 = arc(crate::fincat::ordinal(1));
    let k = nerve_complex(&o1, 3, &l).unwrap();
    assert_eq!(k.complex.dims, vec![2, 1, 0, 0, 0]);
    assert_eq!(k.chain(1, 0).len(), 1);
}

#[test]
fn nerve_size_is_budgeted() {
    let bz2 = arc(load_cat("bz2"));
    let tight = Limits::default().with_budget(1);
    assert!(matches!(
        nerve_complex(&bz2, 30, &tight),
        Err(crate::Error::SizeBudgetExceeded { .. })
    ));
}

#[test]
fn circle_poset_has_a_loop() {
    // p0, p1 < p2, p3: the boundary of a square
    let mut b = crate::fincat::FinCatBuilder::new();
    for i in 0..4 {
        b.add_object(format!("p{i}")).unwrap();
    }
    let mut ids = Vec::new();
    for i in 0..4 {
        let m = b.add_morphism(format!("id{i}"), Obj(i), Obj(i)).unwrap();
        b.set_identity(Obj(i), m);
        ids.push(m);
    }
    for (s, t) in [(0, 2), (0, 3), (1, 2), (1, 3)] {
        b.add_morphism(format!("{s}{t}"), Obj(s), Obj(t)).unwrap();
    }
    b.fill_identity_composites().unwrap();
    let c = arc(b.build().unwrap());
    let h = nerve_homology(&c, 2);
    assert_eq!(h.to_string(), "H_0 = Z, H_1 = Z, H_2 = 0");
}

fn random_poset(rng: &mut ChaCha8Rng, max: usize) -> Arc<FinCat> {
    let n = rng.gen_range(1..=max);
    let rel: Vec<bool> = (0..n * n).map(|_| rng.gen_bool(0.4)).collect();
    arc(poset(n, &rel))
}

fn shuffle_complex(k: &ChainComplex, rng: &mut ChaCha8Rng) -> ChainComplex {
    let perms: Vec<Vec<usize>> = k
        .dims
        .iter()
        .map(|&n| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            p
        })
        .collect();
    let boundaries = (0..k.dims.len())
        .map(|n| {
            let b = &k.boundaries[n];
            if n == 0 {
                return SparseMat::zero(0, b.num_cols());
            }
            let mut cols = vec![Vec::new(); b.num_cols()];
            for j in 0..b.num_cols() {
                cols[perms[n][j]] = b
                    .column(j)
                    .iter()
                    .map(|&(r, v)| (perms[n - 1][r as usize] as u32, v))
                    .collect();
            }
            SparseMat::from_columns(b.num_rows(), cols)
        })
        .collect();
    ChainComplex {
        dims: k.dims.clone(),
        boundaries,
    }
}

#[test]
fn homology_is_invariant_under_basis_reordering() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut cats: Vec<Arc<FinCat>> = ["walkiso", "bz2", "arrow"]
        .iter()
        .map(|n| arc(load_cat(n)))
        .collect();
    cats.extend((0..12).map(|_| random_poset(&mut rng, 5)));
    for c in cats {
        let k = nerve_complex(&c, 2, &Limits::default()).unwrap();
        let h = homology(&k.complex, 2).unwrap();
        for _ in 0..3 {
            let s = shuffle_complex(&k.complex, &mut rng);
            assert!(s.is_complex());
            assert_eq!(homology(&s, 2).unwrap(), h);
        }
    }
}

#[test]
fn boundaries_square_to_zero_on_random_posets() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let c = random_poset(&mut rng, 6);
        let k = nerve_complex(&c, 3, &Limits::default()).unwrap();
        assert!(k.complex.is_complex());
        assert_eq!(
            summary_pairs(&homology(&k.complex, 2).unwrap()),
            oracle_homology(&k.complex, 2)
        );
    }
}

#[test]
fn euler_characteristic_from_bases_and_homology() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        // chains in a poset on n ≤ 3 objects stop at degree 2
        let c = random_poset(&mut rng, 3);
        let k = nerve_complex(&c, 3, &Limits::default()).unwrap();
        let h = homology(&k.complex, 3).unwrap();
        assert_eq!(k.complex.euler_characteristic(3), h.euler_characteristic());
    }
}

#[test]
fn identity_chain_map_is_identity() {
    let c = arc(load_cat("walkiso"));
    let k = nerve_complex(&c, 2, &Limits::default()).unwrap();
    let maps = chain_map(&Functor::identity(&c), &k, &k).unwrap();
    for (n, m) in maps.iter().enumerate() {
        assert_eq!(*m, SparseMat::identity(k.count(n)));
    }
}

#[test]
fn constant_functor_kills_positive_degrees() {
    let c = arc(load_cat("c2of3"));
    let k = nerve_complex(&c, 2, &Limits::default()).unwrap();
    let f = Functor::constant(&c, &c, Obj(1));
    let maps = chain_map(&f, &k, &k).unwrap();
    assert_eq!(maps[0].nnz(), c.num_objects());
    assert!(maps[1..].iter().all(SparseMat::is_zero));
}

fn random_functors(rng: &mut ChaCha8Rng, count: usize) -> Vec<(Functor, Functor)> {
    let mut out = Vec::new();
    while out.len() < count {
        let (a, b, c) = (
            random_poset(rng, 4),
            random_poset(rng, 4),
            random_poset(rng, 4),
        );
        let pick = |s: &Arc<FinCat>, t: &Arc<FinCat>, rng: &mut ChaCha8Rng| {
            let all = enumerate_functors(s, t, 100_000).unwrap();
            let (om, mm) = all[rng.gen_range(0..all.len())].clone();
            Functor::new(s.clone(), t.clone(), om, mm).unwrap()
        };
        let f = pick(&a, &b, rng);
        let g = pick(&b, &c, rng);
        out.push((f, g));
    }
    out
}

#[test]
fn chain_maps_commute_with_boundaries_and_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let l = Limits::default();
    for (f, g) in random_functors(&mut rng, 10) {
        let ka = nerve_complex(f.source(), 2, &l).unwrap();
        let kb = nerve_complex(f.target(), 2, &l).unwrap();
        let kc = nerve_complex(g.target(), 2, &l).unwrap();
        let mf = chain_map(&f, &ka, &kb).unwrap();
        let mg = chain_map(&g, &kb, &kc).unwrap();
        assert!(is_chain_map(&mf, &ka.complex, &kb.complex));
        assert!(is_chain_map(&mg, &kb.complex, &kc.complex));
        let gf = g.after(&f).unwrap();
        let mgf = chain_map(&gf, &ka, &kc).unwrap();
        for n in 0..mgf.len() {
            assert_eq!(mgf[n], mg[n].mul(&mf[n]));
        }
    }
}

#[test]
fn mapping_cone_is_a_complex() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let l = Limits::default();
    for (f, _) in random_functors(&mut rng, 10) {
        let ka = nerve_complex(f.source(), 2, &l).unwrap();
        let kb = nerve_complex(f.target(), 2, &l).unwrap();
        let cone = mapping_cone(&chain_map(&f, &ka, &kb).unwrap(), &ka.complex, &kb.complex);
        assert!(cone.is_complex());
    }
}

fn roundtrip(cert: &WheCert) -> WheCert {
    let mut t = CatTable::new();
    let j = cert.to_json(&mut t);
    let text = serde_json::to_string(&j).unwrap();
    let store = CatStore::new(&t.into_map()).unwrap();
    let back = WheCert::from_json(&serde_json::from_str(&text).unwrap(), &store).unwrap();
    back.verify(&Limits::default()).unwrap();
    back
}

#[test]
fn identity_is_certified_at_every_degree() {
    let c = arc(load_cat("bz2"));
    for d in 0..4 {
        let cert =
            homology_equivalence_cert(&Functor::identity(&c), d, &Limits::default()).unwrap();
        assert_eq!(cert.kind(), Some(CertKind::HomologyDEquivalence));
        assert_eq!(cert.semantics(), HOMOLOGY_SEMANTICS);
        roundtrip(&cert);
        let cert = whe_certificate(&Functor::identity(&c), 1, d, None, &Limits::default()).unwrap();
        assert_eq!(cert.kind(), Some(CertKind::ExactIso));
    }
}

#[test]
fn walkiso_to_point_has_homology_certificate() {
    let c = arc(load_cat("walkiso"));
    let pt = arc(terminal());
    let f = to_terminal(&c, &pt);
    let cert = homology_equivalence_cert(&f, 3, &Limits::default()).unwrap();
    assert!(cert.holds());
    assert!(
        matches!(&cert.evidence, Evidence::Homology { cone } if cone.d == 3 && cone.vanishes())
    );
    roundtrip(&cert);
    let strong = whe_certificate(&f, 1, 3, None, &Limits::default()).unwrap();
    assert_eq!(strong.kind(), Some(CertKind::MaxElementContraction));
}

#[test]
fn point_into_two_points_is_refused() {
    let mut b = crate::fincat::FinCatBuilder::new();
    for x in ["x", "y"] {
        let o = b.add_object(x).unwrap();
        let m = b.add_morphism(format!("id_{x}"), o, o).unwrap();
        b.set_identity(o, m);
    }
    b.fill_identity_composites().unwrap();
    let two = arc(b.build().unwrap());
    let pt = arc(terminal());
    let f = Functor::constant(&pt, &two, Obj(0));
    let cert = whe_certificate(&f, 2, 2, None, &Limits::default()).unwrap();
    assert!(!cert.holds());
    assert!(matches!(
        cert.evidence,
        Evidence::Refused {
            pi0_bijective: false,
            ..
        }
    ));
    assert_eq!(cert.kind(), None);
    roundtrip(&cert);
}

#[test]
fn bz2_to_point_is_refused_in_degree_one() {
    let c = arc(load_cat("bz2"));
    let pt = arc(terminal());
    let f = to_terminal(&c, &pt);
    let cert = whe_certificate(&f, 2, 2, None, &Limits::default()).unwrap();
    let Evidence::Refused {
        cone,
        pi0_bijective,
    } = &cert.evidence
    else {
        panic!("bz2 is not contractible");
    };
    assert!(*pi0_bijective);
    // the cone's H_2 carries H_1(bz2) = Z/2
    assert_eq!(cone.groups[2].torsion, vec![BigUint::from(2u32)]);
}

#[test]
fn composing_leftward_arrows_has_strong_certificate() {
    // d: C^[1;-2](X, Y) → C^[1;-1](X, Y) with inverse s0: id ⇒ s0∘d and d∘s0 = id
    let c = load_rel("c2of3");
    let l = Limits::default();
    let before = ZigzagType::new(&[1, -1]);
    let s0 = ShapeMap::s0(&before, 1).unwrap();
    let dmap = ShapeMap::d(&s0.from, 1).unwrap();
    for (x, y) in [(0, 2), (1, 2), (2, 2), (0, 1)] {
        let ends = Some((Obj(x), Obj(y)));
        // a shape map σ: [from] → [to] induces C^[to] → C^[from]
        let (short, long, s0_fun) = insertion_functor(&c, &s0, ends, &l).unwrap();
        let (_, _, d_fun) = insertion_functor(&c, &dmap, ends, &l).unwrap();
        assert_eq!(d_fun.source().num_objects(), long.cat().num_objects());
        assert_eq!(d_fun.target().num_objects(), short.cat().num_objects());
        assert_eq!(
            d_fun.after(&s0_fun).unwrap(),
            Functor::identity(short.cat())
        );
        let hints = WheHints {
            inverse: Some(s0_fun.clone()),
            ..Default::default()
        };
        let cert = whe_certificate(&d_fun, 1, 2, Some(&hints), &l).unwrap();
        if d_fun.is_bijective() {
            assert_eq!(cert.kind(), Some(CertKind::ExactIso));
        } else {
            assert_eq!(cert.kind(), Some(CertKind::NatZigzag), "({x},{y})");
        }
        roundtrip(&cert);
    }
}

#[test]
fn zigzag_category_with_maximum_is_contractible() {
    let c = load_rel("c2of3");
    let l = Limits::default();
    let k = ZigzagType::new(&[-1, 1, -1]);
    let z = zigzag_category(&c, &k, Obj(0), Obj(1), &l).unwrap();
    assert_eq!(z.cat().num_objects(), 2);
    let pt = arc(terminal());
    let f = to_terminal(z.cat(), &pt);
    let cert = whe_certificate(&f, 1, 2, None, &l).unwrap();
    let Evidence::Contraction { source, target } = &cert.evidence else {
        panic!("expected a contraction, got {:?}", cert.kind());
    };
    assert_eq!(source.steps.len(), 1);
    assert_eq!(source.steps[0].direction, crate::fincat::Direction::Forward);
    assert!(target.steps.is_empty());
    roundtrip(&cert);
}

#[test]
fn tampered_certificates_are_rejected() {
    let c = arc(load_cat("walkiso"));
    let pt = arc(terminal());
    let f = to_terminal(&c, &pt);
    let cert = homology_equivalence_cert(&f, 2, &Limits::default()).unwrap();
    let mut t = CatTable::new();
    let mut j = cert.to_json(&mut t);
    if let EvidenceJson::HomologyDEquivalence { cone, .. } = &mut j.evidence {
        cone.groups[1].rank = 1;
    }
    let store = CatStore::new(&t.into_map()).unwrap();
    let back = WheCert::from_json(&j, &store).unwrap();
    assert!(back.verify(&Limits::default()).is_err());

    let strong = whe_certificate(&f, 1, 2, None, &Limits::default()).unwrap();
    let mut t = CatTable::new();
    let mut j = strong.to_json(&mut t);
    j.verdict = "refused".into();
    let store = CatStore::new(&t.into_map()).unwrap();
    assert!(WheCert::from_json(&j, &store).is_err());
}

#[test]
fn strong_certificates_imply_homology_certificates() {
    let l = Limits::default();
    let pt = arc(terminal());
    let mut functors = Vec::new();
    for name in ["walkiso", "arrow", "pt", "c2of3"] {
        let c = arc(load_cat(name));
        functors.push(to_terminal(&c, &pt));
        functors.push(Functor::identity(&c));
    }
    let c = load_rel("c2of3");
    let k = ZigzagType::new(&[-1, 1, -1]);
    for (x, y) in [(0, 1), (0, 2), (2, 2)] {
        let z = zigzag_category(&c, &k, Obj(x), Obj(y), &l).unwrap();
        if !z.cat().is_empty() {
            functors.push(to_terminal(z.cat(), &pt));
        }
    }
    for f in functors {
        let cert = whe_certificate(&f, 2, 2, None, &l).unwrap();
        if cert.kind().is_some_and(CertKind::is_strong) {
            for d in 0..=3 {
                assert!(homology_equivalence_cert(&f, d, &l).unwrap().holds());
            }
        }
    }
}

#[test]
fn homology_summary_json() {
    let h = nerve_homology(&arc(load_cat("bz2")), 1);
    let text = serde_json::to_string(&h).unwrap();
    assert_eq!(
        text,
        r#"{"d":1,"groups":[{"degree":0,"rank":1,"torsion":[]},{"degree":1,"rank":0,"torsion":[2]}]}"#
    );
    let back: HomologySummary = serde_json::from_str(&text).unwrap();
    assert_eq!(back, h);
    let big: HomologySummary = serde_json::from_str(
        r#"{"d":0,"groups":[{"degree":0,"rank":0,"torsion":["123456789012345678901234567890"]}]}"#,
    )
    .unwrap();
    assert_eq!(
        big.groups[0].torsion[0].to_string(),
        "123456789012345678901234567890"
    );
}
