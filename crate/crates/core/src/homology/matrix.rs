use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sparse integer matrix stored by columns, each sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMat {
    rows: usize,
    cols: Vec<Vec<(u32, i64)>>,
}

impl SparseMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMat {
            rows,
            cols: vec![Vec::new(); cols],
        }
    }

    /// Builds a matrix from unsorted column entries; duplicates are summed and zeros dropped.
    pub fn from_columns(rows: usize, cols: Vec<Vec<(u32, i64)>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable_by_key(|e| e.0);
                let mut out: Vec<(u32, i64)> = Vec::with_capacity(c.len());
                for (r, v) in c {
                    match out.last_mut() {
                        Some(last) if last.0 == r => last.1 += v,
                        _ => out.push((r, v)),
                    }
                }
                out.retain(|e| e.1 != 0);
                out
            })
            .collect();
        SparseMat { rows, cols }
    }

    pub fn identity(n: usize) -> Self {
        SparseMat {
            rows: n,
            cols: (0..n).map(|i| vec![(i as u32, 1)]).collect(),
        }
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, j: usize) -> &[(u32, i64)] {
        &self.cols[j]
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.cols[c]
            .binary_search_by_key(&(r as u32), |e| e.0)
            .map(|i| self.cols[c][i].1)
            .unwrap_or(0)
    }

    /// `self · other`; panics if the inner dimensions differ.
    pub fn mul(&self, other: &SparseMat) -> SparseMat {
        assert_eq!(self.num_cols(), other.rows, "inner dimensions differ");
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc = Vec::new();
                for &(k, v) in col {
                    for &(r, w) in &self.cols[k as usize] {
                        acc.push((r, v * w));
                    }
                }
                acc
            })
            .collect();
        SparseMat::from_columns(self.rows, cols)
    }

    pub fn scaled(&self, s: i64) -> SparseMat {
        SparseMat {
            rows: self.rows,
            cols: self
                .cols
                .iter()
                .map(|c| {
                    c.iter()
                        .map(|&(r, v)| (r, v * s))
                        .filter(|e| e.1 != 0)
                        .collect()
                })
                .collect(),
        }
    }

    /// Places `blocks[i][j]` at block row `i`, block column `j`; `None` is a zero block.
    /// Row and column block sizes are given explicitly.
    pub fn block(
        row_sizes: &[usize],
        col_sizes: &[usize],
        blocks: &[Vec<Option<&SparseMat>>],
    ) -> SparseMat {
        let rows: usize = row_sizes.iter().sum();
        let mut cols = Vec::with_capacity(col_sizes.iter().sum());
        for (bj, &w) in col_sizes.iter().enumerate() {
            for j in 0..w {
                let mut col = Vec::new();
                let mut offset = 0u32;
                for (bi, &h) in row_sizes.iter().enumerate() {
                    if let Some(m) = blocks[bi][bj] {
                        debug_assert_eq!((m.rows, m.num_cols()), (h, w));
                        col.extend(m.cols[j].iter().map(|&(r, v)| (r + offset, v)));
                    }
                    offset += h as u32;
                }
                cols.push(col);
            }
        }
        SparseMat { rows, cols }
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = vec![vec![BigInt::zero(); self.num_cols()]; self.rows];
        for (j, c) in self.cols.iter().enumerate() {
            for &(r, v) in c {
                d[r as usize][j] = BigInt::from(v);
            }
        }
        d
    }
}

/// Rank and invariant factors (greater than one, each dividing the next) of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub rank: usize,
    pub torsion: Vec<BigUint>,
}

/// Smith normal form invariants: unit pivots are eliminated sparsely with checked
/// 64-bit arithmetic, and what remains is reduced densely over big integers.
/// On overflow the whole matrix is reduced densely instead.
pub fn smith_invariants(m: &SparseMat) -> Snf {
    match sparse_unit_elimination(m) {
        Some((units, rest)) => {
            let diag = dense_snf(rest);
            finish(units, diag)
        }
        None => finish(0, dense_snf(m.to_dense())),
    }
}

fn finish(units: usize, diag: Vec<BigInt>) -> Snf {
    let mut factors: Vec<BigUint> = diag.into_iter().map(|x| x.magnitude().clone()).collect();
    normalize_chain(&mut factors);
    let rank = units + factors.len();
    Snf {
        rank,
        torsion: factors.into_iter().filter(|x| !x.is_one()).collect(),
    }
}

/// Turns a list of nonzero diagonal entries into the canonical divisor chain.
fn normalize_chain(d: &mut [BigUint]) {
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = &d[i] / &g * &d[j];
                d[i] = g;
                d[j] = l;
            }
        }
    }
}

/// Eliminates ±1 pivots; returns the number eliminated and the dense residual
/// on the untouched rows and columns, or `None` on overflow.
fn sparse_unit_elimination(m: &SparseMat) -> Option<(usize, Vec<Vec<BigInt>>)> {
    let nr = m.rows;
    let nc = m.num_cols();
    let mut cols = m.cols.clone();
    let mut rows: Vec<Vec<u32>> = vec![Vec::new(); nr];
    for (j, c) in cols.iter().enumerate() {
        for &(r, _) in c {
            rows[r as usize].push(j as u32);
        }
    }
    // rows[r] may hold stale or repeated column ids; the columns are authoritative
    let mut row_alive = vec![true; nr];
    let mut col_alive = vec![true; nc];
    let mut units = 0;
    for c in 0..nc {
        let pivot = cols[c]
            .iter()
            .filter(|e| e.1.abs() == 1 && row_alive[e.0 as usize])
            .min_by_key(|e| (rows[e.0 as usize].len(), e.0))
            .copied();
        let Some((r, v)) = pivot else { continue };
        let pivot_col = std::mem::take(&mut cols[c]);
        let mut others: Vec<u32> = rows[r as usize].clone();
        others.sort_unstable();
        others.dedup();
        for &c2 in &others {
            let c2 = c2 as usize;
            if c2 == c || !col_alive[c2] {
                continue;
            }
            let a = match cols[c2].binary_search_by_key(&r, |e| e.0) {
                Ok(i) => cols[c2][i].1,
                Err(_) => continue,
            };
            // col c2 -= (a / v) · col c, with v = ±1
            let factor = a.checked_mul(v)?;
            let merged = axpy(&cols[c2], &pivot_col, factor)?;
            for &(rr, _) in &merged {
                if cols[c2].binary_search_by_key(&rr, |e| e.0).is_err() {
                    rows[rr as usize].push(c2 as u32);
                }
            }
            cols[c2] = merged;
        }
        row_alive[r as usize] = false;
        col_alive[c] = false;
        units += 1;
    }
    let live_rows: Vec<usize> = (0..nr).filter(|&r| row_alive[r]).collect();
    let mut row_pos = vec![usize::MAX; nr];
    for (i, &r) in live_rows.iter().enumerate() {
        row_pos[r] = i;
    }
    let live_cols: Vec<usize> = (0..nc)
        .filter(|&c| col_alive[c] && cols[c].iter().any(|e| row_alive[e.0 as usize]))
        .collect();
    let used_rows: Vec<usize> = {
        let mut used = vec![false; live_rows.len()];
        for &c in &live_cols {
            for &(r, _) in &cols[c] {
                if row_alive[r as usize] {
                    used[row_pos[r as usize]] = true;
                }
            }
        }
        (0..live_rows.len()).filter(|&i| used[i]).collect()
    };
    let mut compact = vec![usize::MAX; live_rows.len()];
    for (i, &r) in used_rows.iter().enumerate() {
        compact[r] = i;
    }
    let mut dense = vec![vec![BigInt::zero(); live_cols.len()]; used_rows.len()];
    for (j, &c) in live_cols.iter().enumerate() {
        for &(r, v) in &cols[c] {
            if row_alive[r as usize] {
                dense[compact[row_pos[r as usize]]][j] = BigInt::from(v);
            }
        }
    }
    Some((units, dense))
}

/// `x − factor · y` on sorted sparse columns; `None` on overflow.
fn axpy(x: &[(u32, i64)], y: &[(u32, i64)], factor: i64) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            out.push((y[j].0, factor.checked_mul(y[j].1)?.checked_neg()?));
            j += 1;
        } else {
            let v = x[i].1.checked_sub(factor.checked_mul(y[j].1)?)?;
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Nonzero diagonal of a Smith normal form of a dense matrix (not yet a divisor chain).
pub fn dense_snf(mut a: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !a[i][j].is_zero()
                    && best.is_none_or(|(bi, bj)| a[i][j].magnitude() < a[bi][bj].magnitude())
                {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for row in a.iter_mut() {
            row.swap(t, bj);
        }
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if !a[i][t].is_zero() {
                    let q = a[i][t].div_floor(&a[t][t]);
                    for j in t..cols {
                        let s = &q * &a[t][j];
                        a[i][j] -= s;
                    }
                    dirty |= !a[i][t].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[t][j].is_zero() {
                    let q = a[t][j].div_floor(&a[t][t]);
                    for row in a.iter_mut().take(rows).skip(t) {
                        let s = &q * &row[t];
                        row[j] -= s;
                    }
                    dirty |= !a[t][j].is_zero();
                }
            }
            if dirty {
                // move the smallest remainder in row or column t to the pivot
                let mut best = (t, t);
                for i in t + 1..rows {
                    if !a[i][t].is_zero() && a[i][t].magnitude() < a[best.0][best.1].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() && a[t][j].magnitude() < a[best.0][best.1].magnitude() {
                        best = (t, j);
                    }
                }
                a.swap(t, best.0);
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
                continue;
            }
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
