use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{enumerate_functors, find_nat_trans, Functor, Mor};
use crate::limits::Limits;

/// Orientation of one natural transformation in a zigzag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// `previous ⇒ next`
    Forward,
    /// `next ⇒ previous`
    Backward,
}

/// One step of a zigzag of natural transformations, ending at `functor`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatStep {
    pub functor: Functor,
    pub direction: Direction,
    pub components: Vec<Mor>,
}

/// Finds a natural transformation between two functors in either direction,
/// preferring `from ⇒ to`.
pub fn connect(from: &Functor, to: &Functor) -> Option<NatStep> {
    if let Some(c) = find_nat_trans(from, to) {
        return Some(NatStep {
            functor: to.clone(),
            direction: Direction::Forward,
            components: c,
        });
    }
    find_nat_trans(to, from).map(|c| NatStep {
        functor: to.clone(),
        direction: Direction::Backward,
        components: c,
    })
}

/// Connects `start` through each of `through` in order; `None` when some consecutive
/// pair admits no natural transformation in either direction.
pub fn zigzag_through(start: &Functor, through: &[Functor]) -> Option<Vec<NatStep>> {
    let mut prev = start;
    let mut steps = Vec::with_capacity(through.len());
    for f in through {
        if f == prev {
            continue;
        }
        steps.push(connect(prev, f)?);
        prev = f;
    }
    Some(steps)
}

/// Natural transformation searches allowed per functor the limits admit.
const CONNECTS_PER_FUNCTOR: usize = 16;

/// Shortest zigzag of natural transformations from `f` to `g` of length at most
/// `max_len`, searching the graph of all functors between the common source
/// and target. Fails when the search would try more connections than the
/// limits allow.
pub fn nat_trans_zigzag(
    f: &Functor,
    g: &Functor,
    max_len: usize,
    limits: &Limits,
) -> Result<Option<Vec<NatStep>>> {
    if !crate::fincat::functor::same_cat(f.source(), g.source())
        || !crate::fincat::functor::same_cat(f.target(), g.target())
    {
        return Err(Error::InvalidFunctor(
            "zigzag between non-parallel functors".into(),
        ));
    }
    if f == g {
        return Ok(Some(Vec::new()));
    }
    let all = enumerate_functors(f.source(), f.target(), limits.max_objects)?;
    let nodes: Vec<Functor> = all
        .into_iter()
        .map(|(om, mm)| Functor::new_unchecked(f.source().clone(), f.target().clone(), om, mm))
        .collect();
    let find = |h: &Functor| nodes.iter().position(|n| n.mor_map() == h.mor_map());
    let (Some(s), Some(t)) = (find(f), find(g)) else {
        return Err(Error::InvalidFunctor(
            "functor missing from enumeration".into(),
        ));
    };
    let mut parent: Vec<Option<(usize, NatStep)>> = vec![None; nodes.len()];
    let mut depth = vec![usize::MAX; nodes.len()];
    depth[s] = 0;
    let mut queue = VecDeque::from([s]);
    let budget = limits.max_objects.saturating_mul(CONNECTS_PER_FUNCTOR);
    let mut tried = 0usize;
    while let Some(u) = queue.pop_front() {
        if u == t {
            break;
        }
        if depth[u] >= max_len {
            continue;
        }
        for v in 0..nodes.len() {
            if depth[v] != usize::MAX {
                continue;
            }
            tried += 1;
            if tried > budget {
                return Err(Error::SizeBudgetExceeded {
                    what: "natural transformation zigzag search".into(),
                    limit: budget,
                });
            }
            if let Some(step) = connect(&nodes[u], &nodes[v]) {
                depth[v] = depth[u] + 1;
                parent[v] = Some((u, step));
                queue.push_back(v);
            }
        }
    }
    if depth[t] == usize::MAX {
        return Ok(None);
    }
    let mut steps = Vec::new();
    let mut cur = t;
    while let Some((p, step)) = parent[cur].take() {
        steps.push(step);
        cur = p;
    }
    steps.reverse();
    Ok(Some(steps))
}
