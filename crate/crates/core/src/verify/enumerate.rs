//! Exhaustive generation of immersions over a presentation complex, up to
//! isomorphism.
//!
//! The 1-skeleton of an immersion carries, for every generator, a partial
//! injection on the vertex set (the edge with that label leaving a vertex).
//! Faces are closed traces of relators through these injections; a trace is
//! determined by the edge at relator position 0, so any set of distinct traces
//! has distinct side slots on every edge.
//!
//! The first injection ranges over one representative per conjugacy type
//! (cycle and path lengths), the rest over all partial injections.
//! Skeletons are deduplicated by canonical form before faces are chosen.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budgets;
use crate::canon::canonical_form;
use crate::complex::{Edge, Face, Morphism, Side, TwoComplex};
use crate::error::{Error, Result};
use crate::presentation::Presentation;

const NONE: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationFilter {
    pub max_vertices: usize,
    pub require_connected: bool,
    pub require_no_free_faces: bool,
    /// Exact set of face types that must occur; `None` accepts any.
    pub required_types: Option<BTreeSet<usize>>,
}

impl EnumerationFilter {
    /// Connected, no free faces, exactly the given face types.
    pub fn closed(max_vertices: usize, types: &[usize]) -> Self {
        EnumerationFilter {
            max_vertices,
            require_connected: true,
            require_no_free_faces: true,
            required_types: Some(types.iter().copied().collect()),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_vertices == 0 {
            return Err(Error::Argument("max_vertices must be at least 1".into()));
        }
        Ok(())
    }

    fn types_ok(&self, present: &BTreeSet<usize>) -> bool {
        self.required_types.as_ref().is_none_or(|r| r == present)
    }
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// One representative per class, sorted by canonical form.
    pub classes: Vec<Morphism>,
    /// Search nodes visited (skeletons plus face sets).
    pub nodes: usize,
}

/// [`enumerate_immersions_over`] with the target `⟨a,b | b, baBAA⟩`.
pub fn enumerate_immersions(filter: &EnumerationFilter, budgets: &Budgets) -> Result<Enumeration> {
    enumerate_immersions_over(&Arc::new(Presentation::kp()), filter, budgets)
}

/// Every immersion over `target` satisfying `filter`, up to isomorphism.
/// Fails rather than truncating when more than `budgets.enumeration_nodes`
/// nodes would be visited.
pub fn enumerate_immersions_over(
    target: &Arc<Presentation>,
    filter: &EnumerationFilter,
    budgets: &Budgets,
) -> Result<Enumeration> {
    filter.validate()?;
    let counter = Counter::new(budgets.enumeration_nodes);
    // Components are filtered by everything except the type set, which only
    // makes sense for the whole complex.
    let component_filter = EnumerationFilter {
        required_types: if filter.require_connected {
            filter.required_types.clone()
        } else {
            None
        },
        ..filter.clone()
    };
    let mut by_size: Vec<Vec<Keyed>> = vec![Vec::new()];
    for n in 1..=filter.max_vertices {
        by_size.push(connected_classes(target, n, &component_filter, &counter)?);
    }
    let mut found: Vec<(Vec<u8>, Morphism)> = if filter.require_connected {
        by_size
            .into_iter()
            .flatten()
            .map(|k| (k.form, k.morphism))
            .collect()
    } else {
        combine(&by_size, filter, &counter)?
    };
    found.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(Enumeration {
        classes: found.into_iter().map(|(_, m)| m).collect(),
        nodes: counter.seen(),
    })
}

struct Counter {
    used: AtomicUsize,
    limit: usize,
    stop: AtomicBool,
}

impl Counter {
    fn new(limit: usize) -> Self {
        Counter {
            used: AtomicUsize::new(0),
            limit,
            stop: AtomicBool::new(false),
        }
    }

    fn tick(&self, k: usize) -> bool {
        let before = self.used.fetch_add(k, Ordering::Relaxed);
        if before + k > self.limit {
            self.stop.store(true, Ordering::Relaxed);
        }
        !self.stop.load(Ordering::Relaxed)
    }

    fn seen(&self) -> usize {
        self.used.load(Ordering::Relaxed)
    }

    fn check(&self) -> Result<()> {
        if self.stop.load(Ordering::Relaxed) {
            Err(Error::Budget(format!(
                "enumeration exceeded {} search nodes",
                self.limit
            )))
        } else {
            Ok(())
        }
    }
}

/// A found complex with the generation key that produced it; the smallest
/// key wins so that representatives do not depend on scheduling.
struct Keyed {
    form: Vec<u8>,
    key: (usize, usize, usize),
    morphism: Morphism,
}

fn keep_min(items: impl IntoIterator<Item = Keyed>) -> Vec<Keyed> {
    let mut best: HashMap<Vec<u8>, Keyed> = HashMap::new();
    for k in items {
        match best.get(&k.form) {
            Some(old) if old.key <= k.key => {}
            _ => {
                best.insert(k.form.clone(), k);
            }
        }
    }
    let mut out: Vec<Keyed> = best.into_values().collect();
    out.sort_by(|x, y| x.form.cmp(&y.form));
    out
}

/// All partial injections of `0..n`, in lexicographic order.
fn partial_injections(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        cur.push(NONE);
        go(i + 1, n, cur, used, out);
        cur.pop();
        for j in 0..n {
            if !used[j] {
                used[j] = true;
                cur.push(j);
                go(i + 1, n, cur, used, out);
                cur.pop();
                used[j] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(0, n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Non-increasing sequences of positive integers summing to `n`.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for k in (1..=rest.min(max)).rev() {
            cur.push(k);
            go(rest - k, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// One partial injection of `0..n` per conjugacy type: cycles first, then
/// paths, each on consecutive vertices.
fn conjugacy_representatives(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for c in 0..=n {
        for cycles in partitions(c) {
            for paths in partitions(n - c) {
                let mut sigma = vec![NONE; n];
                let mut s = 0;
                for &len in &cycles {
                    for k in 0..len {
                        sigma[s + k] = s + (k + 1) % len;
                    }
                    s += len;
                }
                for &len in &paths {
                    for k in 0..len - 1 {
                        sigma[s + k] = s + k + 1;
                    }
                    s += len;
                }
                out.push(sigma);
            }
        }
    }
    out
}

fn skeleton(target: &Arc<Presentation>, sigmas: &[&[usize]], n: usize) -> Morphism {
    let mut edges = Vec::new();
    let mut edge_label = Vec::new();
    for (g, sigma) in sigmas.iter().enumerate() {
        let name = &target.generators()[g];
        for (v, &w) in sigma.iter().enumerate() {
            if w != NONE {
                let k = edge_label.iter().filter(|&&l| l == g).count();
                edges.push(Edge {
                    name: format!("{name}{k}"),
                    tail: v,
                    head: w,
                });
                edge_label.push(g);
            }
        }
    }
    Morphism {
        domain: TwoComplex {
            vertices: (0..n).map(|v| format!("v{v}")).collect(),
            edges,
            faces: Vec::new(),
        },
        target: target.clone(),
        edge_label,
        face_type: Vec::new(),
    }
}

fn connected(d: &TwoComplex) -> bool {
    d.num_vertices() > 0 && d.is_connected()
}

/// Connected skeletons on exactly `n` vertices, one per class.
fn skeletons(target: &Arc<Presentation>, n: usize, counter: &Counter) -> Result<Vec<Keyed>> {
    let g = target.num_generators();
    if g == 0 {
        let m = skeleton(target, &[], n);
        return Ok(if connected(&m.domain) {
            vec![Keyed {
                form: canonical_form(&m),
                key: (0, 0, 0),
                morphism: m,
            }]
        } else {
            Vec::new()
        });
    }
    let reps = conjugacy_representatives(n);
    let all = partial_injections(n);
    // The remaining generators range over the product of all partial injections.
    let rest = g - 1;
    let combos = all
        .len()
        .checked_pow(rest as u32)
        .ok_or_else(|| Error::Budget("too many skeletons to enumerate".into()))?;
    let found: Vec<Keyed> = reps
        .par_iter()
        .enumerate()
        .flat_map_iter(|(ri, rep)| {
            let all = &all;
            (0..combos).filter_map(move |ci| {
                if !counter.tick(1) {
                    return None;
                }
                let mut sigmas: Vec<&[usize]> = vec![rep];
                let mut x = ci;
                for _ in 0..rest {
                    sigmas.push(&all[x % all.len()]);
                    x /= all.len();
                }
                let m = skeleton(target, &sigmas, n);
                connected(&m.domain).then(|| Keyed {
                    form: canonical_form(&m),
                    key: (ri, ci, 0),
                    morphism: m,
                })
            })
        })
        .collect();
    counter.check()?;
    Ok(keep_min(found))
}

/// Closed traces of every relator, one per starting edge at position 0.
fn candidate_faces(m: &Morphism) -> Vec<(usize, Vec<Side>)> {
    let d = &m.domain;
    let n = d.num_vertices();
    let g = m.target.num_generators();
    let mut out_edge = vec![vec![NONE; n]; g];
    let mut in_edge = vec![vec![NONE; n]; g];
    for (e, edge) in d.edges.iter().enumerate() {
        out_edge[m.edge_label[e]][edge.tail] = e;
        in_edge[m.edge_label[e]][edge.head] = e;
    }
    let mut out = Vec::new();
    for (r, word) in m.target.relators().iter().enumerate() {
        for start in 0..n {
            let mut v = start;
            let mut boundary = Vec::with_capacity(word.len());
            for l in word {
                let e = if l.inverse {
                    in_edge[l.gen][v]
                } else {
                    out_edge[l.gen][v]
                };
                if e == NONE {
                    break;
                }
                let edge = &d.edges[e];
                boundary.push(Side {
                    edge: e,
                    inverse: l.inverse,
                });
                v = if l.inverse { edge.tail } else { edge.head };
            }
            if boundary.len() == word.len() && v == start {
                out.push((r, boundary));
            }
        }
    }
    out
}

/// Every admissible face set on one skeleton.
fn with_faces(skel: &Keyed, filter: &EnumerationFilter, counter: &Counter) -> Vec<Keyed> {
    let m = &skel.morphism;
    let cands = candidate_faces(m);
    let ne = m.domain.num_edges();
    let mut out = Vec::new();
    if cands.len() >= usize::BITS as usize || !counter.tick(1usize << cands.len()) {
        counter.stop.store(true, Ordering::Relaxed);
        return out;
    }
    let mut counts = vec![0usize; ne];
    for mask in 0usize..(1 << cands.len()) {
        let chosen = || (0..cands.len()).filter(move |i| mask >> i & 1 == 1);
        let present: BTreeSet<usize> = chosen().map(|i| cands[i].0).collect();
        if !filter.types_ok(&present) {
            continue;
        }
        if filter.require_no_free_faces {
            counts.iter_mut().for_each(|c| *c = 0);
            for i in chosen() {
                for s in &cands[i].1 {
                    counts[s.edge] += 1;
                }
            }
            if counts.contains(&1) {
                continue;
            }
        }
        let mut x = m.clone();
        for (k, i) in chosen().enumerate() {
            x.domain.faces.push(Face {
                name: format!("f{k}"),
                boundary: cands[i].1.clone(),
            });
            x.face_type.push(cands[i].0);
        }
        out.push(Keyed {
            form: canonical_form(&x),
            key: (skel.key.0, skel.key.1, mask),
            morphism: x,
        });
    }
    out
}

fn connected_classes(
    target: &Arc<Presentation>,
    n: usize,
    filter: &EnumerationFilter,
    counter: &Counter,
) -> Result<Vec<Keyed>> {
    let skels = skeletons(target, n, counter)?;
    let found: Vec<Keyed> = skels
        .par_iter()
        .flat_map_iter(|s| with_faces(s, filter, counter))
        .collect();
    counter.check()?;
    Ok(keep_min(found))
}

/// Disjoint unions of connected classes with at most `max_vertices` vertices
/// in total, as multisets.
fn combine(
    by_size: &[Vec<Keyed>],
    filter: &EnumerationFilter,
    counter: &Counter,
) -> Result<Vec<(Vec<u8>, Morphism)>> {
    let pool: Vec<(usize, &Keyed)> = by_size
        .iter()
        .enumerate()
        .flat_map(|(n, ks)| ks.iter().map(move |k| (n, k)))
        .collect();
    let mut out = BTreeMap::new();
    let mut stack: Vec<usize> = Vec::new();
    fn go(
        start: usize,
        room: usize,
        pool: &[(usize, &Keyed)],
        stack: &mut Vec<usize>,
        filter: &EnumerationFilter,
        counter: &Counter,
        out: &mut BTreeMap<Vec<u8>, Morphism>,
    ) -> Result<()> {
        if !counter.tick(1) {
            return counter.check();
        }
        if let Some((&first, rest)) = stack.split_first() {
            let mut m = pool[first].1.morphism.clone();
            for &i in rest {
                m = m.disjoint_union(&pool[i].1.morphism)?;
            }
            let present: BTreeSet<usize> = m.face_type.iter().copied().collect();
            if filter.types_ok(&present) {
                out.entry(canonical_form(&m)).or_insert(m);
            }
        }
        for i in start..pool.len() {
            if pool[i].0 <= room {
                stack.push(i);
                go(i, room - pool[i].0, pool, stack, filter, counter, out)?;
                stack.pop();
            }
        }
        Ok(())
    }
    go(
        0,
        filter.max_vertices,
        &pool,
        &mut stack,
        filter,
        counter,
        &mut out,
    )?;
    counter.check()?;
    Ok(out.into_iter().collect())
}
