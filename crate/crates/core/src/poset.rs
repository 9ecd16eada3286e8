//! Finite posets stored as full order relations, with an isomorphism search.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use crate::error::Error;

/// Largest poset accepted by [`isomorphism`].
pub const MAX_ELEMENTS: usize = 4096;
/// Search nodes visited before [`isomorphism`] gives up.
pub const STEP_BUDGET: u64 = 2_000_000;

#[derive(Clone, Debug)]
pub struct Poset<L> {
    labels: Vec<L>,
    /// `up[x]` holds every `y` with `x <= y`, including `x`.
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
}

impl<L> Poset<L> {
    /// `le` must be a partial order on `labels`; it is evaluated on all pairs.
    pub fn from_order(labels: Vec<L>, le: impl Fn(&L, &L) -> bool) -> Self {
        let n = labels.len();
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for x in 0..n {
            for y in 0..n {
                if x == y || le(&labels[x], &labels[y]) {
                    up[x].insert(y);
                    down[y].insert(x);
                }
            }
        }
        Self { labels, up, down }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[L] {
        &self.labels
    }

    pub fn le(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    /// Checks reflexivity, antisymmetry and transitivity.
    pub fn is_partial_order(&self) -> bool {
        let n = self.len();
        for x in 0..n {
            if !self.le(x, x) {
                return false;
            }
            for y in self.up[x].ones() {
                if y != x && self.le(y, x) {
                    return false;
                }
                if !self.up[y].is_subset(&self.up[x]) {
                    return false;
                }
            }
        }
        true
    }

    /// Elements `y` covering `x`.
    pub fn covers(&self, x: usize) -> Vec<usize> {
        self.up[x]
            .ones()
            .filter(|&y| {
                y != x
                    && !self.up[x]
                        .ones()
                        .any(|z| z != x && z != y && self.le(z, y))
            })
            .collect()
    }

    /// Length of the longest chain ending at each element.
    pub fn ranks(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| self.down[x].count_ones(..));
        let mut rank = vec![0; self.len()];
        for &x in &order {
            rank[x] = self
                .down[x]
                .ones()
                .filter(|&y| y != x)
                .map(|y| rank[y] + 1)
                .max()
                .unwrap_or(0);
        }
        rank
    }

    fn is_order_preserving(&self, other: &Poset<impl Sized>, map: &[usize]) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.le(x, y) == other.le(map[x], map[y])))
    }
}

/// Colour refinement run on the disjoint union so colours are comparable.
fn refine<A, B>(p: &Poset<A>, q: &Poset<B>) -> (Vec<usize>, Vec<usize>) {
    let n = p.len();
    let initial = |poset_ranks: &[usize], x: usize, up: &FixedBitSet, down: &FixedBitSet| {
        vec![poset_ranks[x], up.count_ones(..), down.count_ones(..)]
    };
    let (rp, rq) = (p.ranks(), q.ranks());
    let mut keys: Vec<Vec<usize>> = (0..n)
        .map(|x| initial(&rp, x, &p.up[x], &p.down[x]))
        .chain((0..n).map(|x| initial(&rq, x, &q.up[x], &q.down[x])))
        .collect();
    let mut colors = intern(&keys);
    let mut classes = distinct(&colors);
    loop {
        keys = (0..2 * n)
            .map(|g| {
                let (up, down, offset) = if g < n {
                    (&p.up[g], &p.down[g], 0)
                } else {
                    (&q.up[g - n], &q.down[g - n], n)
                };
                let local = g - offset;
                let mut below: Vec<usize> = down
                    .ones()
                    .filter(|&y| y != local)
                    .map(|y| colors[y + offset])
                    .collect();
                let mut above: Vec<usize> = up
                    .ones()
                    .filter(|&y| y != local)
                    .map(|y| colors[y + offset])
                    .collect();
                below.sort_unstable();
                above.sort_unstable();
                let mut key = vec![colors[g], below.len()];
                key.extend(below);
                key.push(usize::MAX);
                key.extend(above);
                key
            })
            .collect();
        let next = intern(&keys);
        let next_classes = distinct(&next);
        colors = next;
        if next_classes == classes {
            break;
        }
        classes = next_classes;
    }
    let q_colors = colors.split_off(n);
    (colors, q_colors)
}

fn intern(keys: &[Vec<usize>]) -> Vec<usize> {
    let mut ids = BTreeMap::new();
    for k in keys {
        let next = ids.len();
        ids.entry(k.clone()).or_insert(next);
    }
    keys.iter().map(|k| ids[k]).collect()
}

fn distinct(colors: &[usize]) -> usize {
    let mut c = colors.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// An order isomorphism `x -> map[x]` from `p` onto `q`, if one exists.
pub fn isomorphism<A, B>(p: &Poset<A>, q: &Poset<B>) -> Result<Option<Vec<usize>>, Error> {
    let n = p.len();
    if n != q.len() {
        return Ok(None);
    }
    if n > MAX_ELEMENTS {
        return Err(Error::DeskScaleExceeded(format!(
            "poset with {n} elements (limit {MAX_ELEMENTS})"
        )));
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (cp, cq) = refine(p, q);
    let mut hp = cp.clone();
    let mut hq = cq.clone();
    hp.sort_unstable();
    hq.sort_unstable();
    if hp != hq {
        return Ok(None);
    }
    let domains: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut d = FixedBitSet::with_capacity(n);
            for y in 0..n {
                if cq[y] == cp[x] {
                    d.insert(y);
                }
            }
            d
        })
        .collect();
    let mut search = Search {
        p,
        q,
        map: vec![usize::MAX; n],
        steps: 0,
    };
    let found = search.run(domains)?;
    if found {
        debug_assert!(p.is_order_preserving(q, &search.map));
        Ok(Some(search.map))
    } else {
        Ok(None)
    }
}

pub fn isomorphic<A, B>(p: &Poset<A>, q: &Poset<B>) -> Result<bool, Error> {
    Ok(isomorphism(p, q)?.is_some())
}

struct Search<'a, A, B> {
    p: &'a Poset<A>,
    q: &'a Poset<B>,
    map: Vec<usize>,
    steps: u64,
}

impl<A, B> Search<'_, A, B> {
    fn run(&mut self, domains: Vec<FixedBitSet>) -> Result<bool, Error> {
        let Some(x) = (0..self.map.len())
            .filter(|&x| self.map[x] == usize::MAX)
            .min_by_key(|&x| domains[x].count_ones(..))
        else {
            return Ok(true);
        };
        let candidates: Vec<usize> = domains[x].ones().collect();
        for y in candidates {
            self.steps += 1;
            if self.steps > STEP_BUDGET {
                return Err(Error::DeskScaleExceeded(format!(
                    "isomorphism search exceeded {STEP_BUDGET} steps"
                )));
            }
            let mut next = domains.clone();
            let mut dead = false;
            for z in 0..self.map.len() {
                if self.map[z] != usize::MAX || z == x {
                    continue;
                }
                let d = &mut next[z];
                d.set(y, false);
                if self.p.le(z, x) {
                    d.intersect_with(&self.q.down[y]);
                } else {
                    d.difference_with(&self.q.down[y]);
                }
                if self.p.le(x, z) {
                    d.intersect_with(&self.q.up[y]);
                } else {
                    d.difference_with(&self.q.up[y]);
                }
                if d.is_clear() {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.map[x] = y;
            if self.run(next)? {
                return Ok(true);
            }
            self.map[x] = usize::MAX;
        }
        Ok(false)
    }
}
