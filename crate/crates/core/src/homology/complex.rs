use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fincat::{FinCat, Functor, Mor, Obj};
use crate::homology::matrix::{smith_invariants, Snf, SparseMat};
use crate::limits::Limits;
use crate::util::par_map;

/// A bounded chain complex of free abelian groups: `dims[n]` is the rank of
/// `C_n` and `boundaries[n]: C_n → C_{n-1}` (with `boundaries[0]` the zero map).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMat>,
}

impl ChainComplex {
    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    /// Whether `∂_{n} ∘ ∂_{n+1} = 0` in every available degree.
    pub fn is_complex(&self) -> bool {
        (1..self.top()).all(|n| self.boundaries[n].mul(&self.boundaries[n + 1]).is_zero())
    }

    pub fn euler_characteristic(&self, through: usize) -> i64 {
        (0..=through.min(self.top()))
            .map(|n| {
                if n % 2 == 0 {
                    self.dims[n] as i64
                } else {
                    -(self.dims[n] as i64)
                }
            })
            .sum()
    }
}

/// One homology group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub rank: usize,
    #[serde(
        serialize_with = "serialize_torsion",
        deserialize_with = "deserialize_torsion"
    )]
    pub torsion: Vec<BigUint>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

fn serialize_torsion<S: Serializer>(t: &[BigUint], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for x in t {
        match u64::try_from(x) {
            Ok(v) => seq.serialize_element(&v)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

fn deserialize_torsion<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<BigUint>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Coeff {
        Small(u64),
        Big(String),
    }
    Vec::<Coeff>::deserialize(d)?
        .into_iter()
        .map(|c| match c {
            Coeff::Small(v) => Ok(BigUint::from(v)),
            Coeff::Big(s) => s.parse().map_err(serde::de::Error::custom),
        })
        .collect()
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

/// Integral homology in degrees `0..=d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub d: usize,
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    pub fn vanishes(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| {
                if g.degree % 2 == 0 {
                    g.rank as i64
                } else {
                    -(g.rank as i64)
                }
            })
            .sum()
    }
}

impl fmt::Display for HomologySummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .groups
            .iter()
            .map(|g| format!("H_{} = {g}", g.degree))
            .collect();
        write!(f, "{}", parts.join(", "))
    }
}

/// Exact homology through degree `d`, which needs `∂_{d+1}`.
pub fn homology(k: &ChainComplex, d: usize) -> Result<HomologySummary> {
    if d + 1 > k.top() {
        return Err(Error::ShapeMismatch(format!(
            "homology through degree {d} needs the complex through degree {}",
            d + 1
        )));
    }
    // SNF of ∂_1 … ∂_{d+1}
    let snfs: Vec<Snf> = par_map(d + 1, |i| smith_invariants(&k.boundaries[i + 1]));
    let groups = (0..=d)
        .map(|n| {
            let incoming = &snfs[n];
            let outgoing = if n == 0 { 0 } else { snfs[n - 1].rank };
            HomologyGroup {
                degree: n,
                rank: k.dims[n] - outgoing - incoming.rank,
                torsion: incoming.torsion.clone(),
            }
        })
        .collect();
    Ok(HomologySummary { d, groups })
}

/// The normalized nerve chain complex: degree-`n` basis elements are chains of
/// `n` composable non-identity morphisms, in lexicographic order of indices.
#[derive(Clone, Debug)]
pub struct NerveComplex {
    pub cat: Arc<FinCat>,
    /// `chains[n]` holds the degree-`n` chains flattened with stride `n`
    /// (empty for degree 0, whose basis is the objects).
    chains: Vec<Vec<u32>>,
    pub complex: ChainComplex,
}

impl NerveComplex {
    pub fn count(&self, n: usize) -> usize {
        self.complex.dims[n]
    }

    /// The `i`-th basis chain of degree `n ≥ 1`, in application order.
    pub fn chain(&self, n: usize, i: usize) -> &[u32] {
        &self.chains[n][i * n..(i + 1) * n]
    }

    /// Position of a chain of degree `n ≥ 1` (given in application order).
    pub fn position(&self, chain: &[u32]) -> Option<usize> {
        let n = chain.len();
        let flat = &self.chains[n];
        let (mut lo, mut hi) = (0, flat.len() / n);
        while lo < hi {
            let mid = (lo + hi) / 2;
            match flat[mid * n..(mid + 1) * n].cmp(chain) {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }
}

/// Builds the normalized nerve complex through degree `d + 1`.
pub fn nerve_complex(c: &Arc<FinCat>, d: usize, limits: &Limits) -> Result<NerveComplex> {
    let top = d + 1;
    let mut chains: Vec<Vec<u32>> = vec![Vec::new(); top + 1];
    let mut dims = vec![c.num_objects()];
    let mut total = c.num_objects();
    if top >= 1 {
        chains[1] = c.non_identities().map(|m| m.0).collect();
        dims.push(chains[1].len());
        total += chains[1].len();
    }
    for n in 2..=top {
        let prev = &chains[n - 1];
        let mut next = Vec::new();
        for ch in prev.chunks(n - 1) {
            let last = Mor(*ch.last().unwrap());
            for &m in c.out_of(c.tgt(last)) {
                if !c.is_identity(m) {
                    next.extend_from_slice(ch);
                    next.push(m.0);
                }
            }
            limits.check_simplices("nerve", total + next.len() / n)?;
        }
        total += next.len() / n;
        dims.push(next.len() / n);
        chains[n] = next;
    }
    let mut nerve = NerveComplex {
        cat: c.clone(),
        chains,
        complex: ChainComplex {
            dims: dims.clone(),
            boundaries: Vec::new(),
        },
    };
    let boundaries: Vec<SparseMat> = (0..=top)
        .map(|n| {
            if n == 0 {
                return SparseMat::zero(0, dims[0]);
            }
            let cols = (0..dims[n])
                .map(|i| boundary_column(&nerve, c, n, i))
                .collect();
            SparseMat::from_columns(dims[n - 1], cols)
        })
        .collect();
    nerve.complex.boundaries = boundaries;
    Ok(nerve)
}

fn boundary_column(nerve: &NerveComplex, c: &FinCat, n: usize, i: usize) -> Vec<(u32, i64)> {
    let ch = nerve.chain(n, i);
    if n == 1 {
        let m = Mor(ch[0]);
        return vec![(c.tgt(m).0, 1), (c.src(m).0, -1)];
    }
    let mut col = Vec::with_capacity(n + 1);
    let sign = |k: usize| if k % 2 == 0 { 1 } else { -1 };
    let mut face = Vec::with_capacity(n - 1);
    for k in 0..=n {
        face.clear();
        if k == 0 {
            face.extend_from_slice(&ch[1..]);
        } else if k == n {
            face.extend_from_slice(&ch[..n - 1]);
        } else {
            let gf = c.compose(Mor(ch[k]), Mor(ch[k - 1])).unwrap();
            if c.is_identity(gf) {
                continue;
            }
            face.extend_from_slice(&ch[..k - 1]);
            face.push(gf.0);
            face.extend_from_slice(&ch[k + 1..]);
        }
        let row = nerve
            .position(&face)
            .expect("faces of nerve chains are nerve chains");
        col.push((row as u32, sign(k)));
    }
    col
}

/// The chain map induced by a functor between nerve complexes of equal truncation;
/// chains whose image contains an identity go to zero.
pub fn chain_map(
    f: &Functor,
    source: &NerveComplex,
    target: &NerveComplex,
) -> Result<Vec<SparseMat>> {
    let top = source.complex.top();
    if target.complex.top() < top {
        return Err(Error::ShapeMismatch(
            "target nerve is truncated lower than the source".into(),
        ));
    }
    let d = f.target();
    let maps = (0..=top)
        .map(|n| {
            let cols = (0..source.count(n))
                .map(|i| {
                    if n == 0 {
                        return vec![(f.on_obj(Obj(i as u32)).0, 1)];
                    }
                    let image: Vec<u32> = source
                        .chain(n, i)
                        .iter()
                        .map(|&m| f.on_mor(Mor(m)).0)
                        .collect();
                    if image.iter().any(|&m| d.is_identity(Mor(m))) {
                        return Vec::new();
                    }
                    let row = target
                        .position(&image)
                        .expect("images of chains are chains");
                    vec![(row as u32, 1)]
                })
                .collect();
            SparseMat::from_columns(target.count(n), cols)
        })
        .collect();
    Ok(maps)
}

/// Whether a family of matrices commutes with the boundaries of two complexes.
pub fn is_chain_map(maps: &[SparseMat], source: &ChainComplex, target: &ChainComplex) -> bool {
    (1..maps.len())
        .all(|n| target.boundaries[n].mul(&maps[n]) == maps[n - 1].mul(&source.boundaries[n]))
}

/// The mapping cone of `f: C → D`: `Cone_n = C_{n-1} ⊕ D_n` with
/// `∂(c, x) = (−∂c, f(c) + ∂x)`, through the top degree of `D`.
pub fn mapping_cone(maps: &[SparseMat], c: &ChainComplex, d: &ChainComplex) -> ChainComplex {
    let top = d.top().min(c.top() + 1).min(maps.len());
    let cdim = |n: isize| if n < 0 { 0 } else { c.dims[n as usize] };
    let dims: Vec<usize> = (0..=top)
        .map(|n| cdim(n as isize - 1) + d.dims[n])
        .collect();
    let mut boundaries = vec![SparseMat::zero(0, dims[0])];
    for n in 1..=top {
        let neg = if n >= 2 {
            Some(c.boundaries[n - 1].scaled(-1))
        } else {
            None
        };
        let zero_top = SparseMat::zero(cdim(n as isize - 2), d.dims[n]);
        let neg_block = neg.unwrap_or_else(|| SparseMat::zero(0, cdim(n as isize - 1)));
        let m = SparseMat::block(
            &[cdim(n as isize - 2), d.dims[n - 1]],
            &[cdim(n as isize - 1), d.dims[n]],
            &[
                vec![Some(&neg_block), Some(&zero_top)],
                vec![Some(&maps[n - 1]), Some(&d.boundaries[n])],
            ],
        );
        boundaries.push(m);
    }
    ChainComplex { dims, boundaries }
}
