//! Shared helpers for unit tests.

use std::sync::Arc;

use crate::fincat::{validate_category, FinCat, FinCatBuilder, Obj, RawCategory};
use crate::relcat::RelCat;

pub fn corpus_text(name: &str) -> String {
    let path = format!("{}/../../corpus/{name}.json", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

pub fn load_cat(name: &str) -> FinCat {
    validate_category(&RawCategory::from_json(&corpus_text(name)).unwrap()).unwrap()
}

pub fn load_rel(name: &str) -> RelCat {
    RelCat::from_json(&corpus_text(name)).unwrap()
}

pub fn arc(c: FinCat) -> Arc<FinCat> {
    Arc::new(c)
}

/// A poset on `0..n` given by a strict upper-triangular relation, closed transitively.
pub fn poset(n: usize, rel: &[bool]) -> FinCat {
    let mut le = vec![vec![false; n]; n];
    let mut k = 0;
    for i in 0..n {
        le[i][i] = true;
        for j in i + 1..n {
            le[i][j] = !rel.is_empty() && rel[k % rel.len()];
            k += 1;
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
    let mut b = FinCatBuilder::new();
    for i in 0..n {
        b.add_object(format!("p{i}")).unwrap();
    }
    let mut idx = vec![vec![None; n]; n];
    for i in 0..n {
        for j in 0..n {
            if le[i][j] {
                let m = b
                    .add_morphism(format!("p{i}<p{j}"), Obj(i as u32), Obj(j as u32))
                    .unwrap();
                if i == j {
                    b.set_identity(Obj(i as u32), m);
                }
                idx[i][j] = Some(m);
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                if let (Some(f), Some(g)) = (idx[i][j], idx[j][l]) {
                    b.set_composite(g, f, idx[i][l].unwrap()).unwrap();
                }
            }
        }
    }
    b.build().unwrap()
}
