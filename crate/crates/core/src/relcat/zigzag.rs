use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{arrow_name, FinCatBuilder, Functor, Mor, Obj};
use crate::relcat::RelCat;

/// A normalized zigzag type: non-zero entries of strictly alternating sign.
/// Positive entries are runs of rightward arrows, negative entries runs of
/// leftward ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Vec<i64>", into = "Vec<i64>")]
pub struct ZigzagType(Vec<i64>);

impl From<Vec<i64>> for ZigzagType {
    fn from(seq: Vec<i64>) -> Self {
        ZigzagType::new(&seq)
    }
}

impl From<ZigzagType> for Vec<i64> {
    fn from(k: ZigzagType) -> Self {
        k.0
    }
}

impl fmt::Display for ZigzagType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "[{}]", parts.join(";"))
    }
}

impl ZigzagType {
    /// Drops zeros and merges neighbours of equal sign.
    pub fn new(seq: &[i64]) -> Self {
        let mut out: Vec<i64> = Vec::new();
        for &k in seq.iter().filter(|&&k| k != 0) {
            match out.last_mut() {
                Some(last) if (*last < 0) == (k < 0) => *last += k,
                _ => out.push(k),
            }
        }
        ZigzagType(out)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Total number of arrows `|k|`.
    pub fn len(&self) -> usize {
        self.0.iter().map(|k| k.unsigned_abs() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// For each arrow position `j` (between objects `j` and `j+1`), whether it points left.
    pub fn leftward(&self) -> Vec<bool> {
        self.0
            .iter()
            .flat_map(|&k| std::iter::repeat(k < 0).take(k.unsigned_abs() as usize))
            .collect()
    }

    /// Both end segments point leftward.
    pub fn ends_leftward(&self) -> bool {
        matches!((self.0.first(), self.0.last()), (Some(&a), Some(&b)) if a < 0 && b < 0)
    }
}

/// The relative category `[k]`: the free category on the oriented line with
/// `|k|` edges, weak equivalences generated by the leftward edges.
///
/// Objects are `0..=|k|`; the morphism from `i` to `j` is named `i->j`
/// (`id_i` when `i = j`), ordered by `(source, target)`. For `k = (n)` this is
/// exactly `ordinal(n)`.
pub fn zigzag_shape(k: &ZigzagType) -> RelCat {
    let left = k.leftward();
    let n = left.len();
    // reachable(i, j): a directed path from i to j exists
    let reach = |i: usize, j: usize| -> bool {
        if i == j {
            return true;
        }
        let (lo, hi) = (i.min(j), i.max(j));
        let want_left = i > j;
        (lo..hi).all(|a| left[a] == want_left)
    };
    let mut b = FinCatBuilder::new();
    for i in 0..=n {
        b.add_object(i.to_string()).unwrap();
    }
    let mut weq = Vec::new();
    let mut index = vec![vec![None; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            if reach(i, j) {
                let m = b
                    .add_morphism(arrow_name(i, j), Obj(i as u32), Obj(j as u32))
                    .unwrap();
                if i == j {
                    b.set_identity(Obj(i as u32), m);
                }
                index[i][j] = Some(m);
                weq.push(i >= j);
            }
        }
    }
    for i in 0..=n {
        for j in 0..=n {
            let Some(f) = index[i][j] else { continue };
            for l in 0..=n {
                if let Some(g) = index[j][l] {
                    let h = index[i][l].expect("paths compose along a run");
                    b.set_composite(g, f, h).unwrap();
                }
            }
        }
    }
    RelCat::from_flags(Arc::new(b.build_trusted().unwrap()), weq)
}

/// A map of zigzag shapes `σ : [from] → [to]` given on objects; precomposition
/// with it is how every insertion and deletion functor between zigzag
/// categories is realized.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeMap {
    pub from: ZigzagType,
    pub to: ZigzagType,
    pub sigma: Vec<usize>,
}

impl ShapeMap {
    pub fn new(from: ZigzagType, to: ZigzagType, sigma: Vec<usize>) -> Result<Self> {
        let map = ShapeMap { from, to, sigma };
        map.functor()?;
        Ok(map)
    }

    /// Whether `σ` fixes both endpoints, so it restricts to zigzag categories.
    pub fn fixes_endpoints(&self) -> bool {
        self.sigma.first() == Some(&0) && self.sigma.last() == Some(&self.to.len())
    }

    /// The relative functor between the shape categories.
    pub fn functor(&self) -> Result<Functor> {
        let src = zigzag_shape(&self.from);
        let tgt = zigzag_shape(&self.to);
        self.functor_between(&src, &tgt)
    }

    pub(crate) fn functor_between(&self, src: &RelCat, tgt: &RelCat) -> Result<Functor> {
        let (s, t) = (src.und(), tgt.und());
        if self.sigma.len() != s.num_objects() || self.sigma.iter().any(|&x| x >= t.num_objects()) {
            return Err(Error::ShapeMismatch(format!(
                "object map of length {} does not fit {} → {}",
                self.sigma.len(),
                self.from,
                self.to
            )));
        }
        let obj_map: Vec<Obj> = self.sigma.iter().map(|&x| Obj(x as u32)).collect();
        let mor_map = s
            .morphisms()
            .map(|m| {
                let (a, b) = (obj_map[s.src(m).idx()], obj_map[s.tgt(m).idx()]);
                let image = t.hom(a, b).first().copied().ok_or_else(|| {
                    Error::ShapeMismatch(format!(
                        "arrow {} of {} has no image in {}",
                        s.mor_name(m),
                        self.from,
                        self.to
                    ))
                })?;
                if src.is_weq(m) && !tgt.is_weq(image) {
                    return Err(Error::ShapeMismatch(format!(
                        "leftward arrow {} of {} is not sent to a leftward path",
                        s.mor_name(m),
                        self.from
                    )));
                }
                Ok(image)
            })
            .collect::<Result<Vec<Mor>>>()?;
        Functor::new(s.clone(), t.clone(), obj_map, mor_map)
    }

    /// Composite `self ∘ first` (first applied first on shapes).
    pub fn after(&self, first: &ShapeMap) -> Result<ShapeMap> {
        if first.to != self.from {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {} → {} with {} → {}",
                first.from, first.to, self.from, self.to
            )));
        }
        Ok(ShapeMap {
            from: first.from.clone(),
            to: self.to.clone(),
            sigma: first.sigma.iter().map(|&x| self.sigma[x]).collect(),
        })
    }

    pub fn identity(k: &ZigzagType) -> ShapeMap {
        ShapeMap {
            from: k.clone(),
            to: k.clone(),
            sigma: (0..=k.len()).collect(),
        }
    }

    /// Inserting an identity arrow of the given orientation after object `position`
    /// of `before`: the shape map collapses the new arrow.
    pub fn insert_identity(
        before: &ZigzagType,
        position: usize,
        leftward: bool,
    ) -> Result<ShapeMap> {
        let n = before.len();
        if position > n {
            return Err(Error::ShapeMismatch(format!(
                "position {position} outside {before}"
            )));
        }
        let mut arrows: Vec<i64> = before
            .leftward()
            .iter()
            .map(|&l| if l { -1 } else { 1 })
            .collect();
        arrows.insert(position, if leftward { -1 } else { 1 });
        let after = ZigzagType::new(&arrows);
        let sigma = (0..=n + 1)
            .map(|j| if j <= position { j } else { j - 1 })
            .collect();
        ShapeMap::new(after, before.clone(), sigma)
    }

    /// Start position of segment `segment` of `k`.
    fn segment_start(k: &ZigzagType, segment: usize) -> Result<usize> {
        if segment >= k.entries().len() {
            return Err(Error::ShapeMismatch(format!(
                "{k} has no segment {segment}"
            )));
        }
        Ok(k.entries()[..segment]
            .iter()
            .map(|e| e.unsigned_abs() as usize)
            .sum())
    }

    /// `s0`: `[…;-1;…] → […;-2;…]`, the new outer (left) arrow is an identity.
    pub fn s0(before: &ZigzagType, segment: usize) -> Result<ShapeMap> {
        let p = Self::segment_start(before, segment)?;
        Self::check_single_left(before, segment)?;
        Self::insert_identity(before, p, true)
    }

    /// `s1`: `[…;-1;…] → […;-2;…]`, the new inner (right) arrow is an identity.
    pub fn s1(before: &ZigzagType, segment: usize) -> Result<ShapeMap> {
        let p = Self::segment_start(before, segment)?;
        Self::check_single_left(before, segment)?;
        Self::insert_identity(before, p + 1, true)
    }

    fn check_single_left(k: &ZigzagType, segment: usize) -> Result<()> {
        if k.entries()[segment] != -1 {
            return Err(Error::ShapeMismatch(format!(
                "segment {segment} of {k} is not a single leftward arrow"
            )));
        }
        Ok(())
    }

    /// `d`: `[…;-2;…] → […;-1;…]`, composing the two leftward arrows.
    pub fn d(before: &ZigzagType, segment: usize) -> Result<ShapeMap> {
        let p = Self::segment_start(before, segment)?;
        if before.entries()[segment] != -2 {
            return Err(Error::ShapeMismatch(format!(
                "segment {segment} of {before} is not a pair of leftward arrows"
            )));
        }
        let mut entries = before.entries().to_vec();
        entries[segment] = -1;
        let after = ZigzagType::new(&entries);
        let sigma = (0..=after.len())
            .map(|j| if j <= p { j } else { j + 1 })
            .collect();
        ShapeMap::new(after, before.clone(), sigma)
    }

    /// `s²`: `[k] → [-1;k;-1]`, two identity arrows at the ends.
    pub fn s2(k: usize) -> Result<ShapeMap> {
        let before = ZigzagType::new(&[k as i64]);
        let after = ZigzagType::new(&[-1, k as i64, -1]);
        let sigma = (0..=k + 2).map(|j| j.saturating_sub(1).min(k)).collect();
        ShapeMap::new(after, before, sigma)
    }

    /// `r²`: `[-1;k;-1] → [k]`, discarding the two outermost arrows.
    pub fn r2(k: usize) -> Result<ShapeMap> {
        let before = ZigzagType::new(&[-1, k as i64, -1]);
        let after = ZigzagType::new(&[k as i64]);
        let sigma = (0..=k).map(|j| j + 1).collect();
        ShapeMap::new(after, before, sigma)
    }
}
