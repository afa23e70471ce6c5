//! Todd–Coxeter coset enumeration over the trivial subgroup (HLT strategy:
//! scan every relator from every live coset, defining cosets to complete the
//! scan, and process coincidences with a queue).

use std::sync::atomic::{AtomicBool, Ordering};

use serde::{Deserialize, Serialize};

use crate::presentation::Presentation;

const NONE: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CosetOutcome {
    /// The table closed: `order` live cosets, `defined` cosets created in total.
    Finished {
        order: usize,
        defined: usize,
    },
    /// More than the allowed number of cosets would be needed.
    Overflow {
        defined: usize,
    },
    Cancelled {
        defined: usize,
    },
}

impl CosetOutcome {
    pub fn order(&self) -> Option<usize> {
        match self {
            CosetOutcome::Finished { order, .. } => Some(*order),
            _ => None,
        }
    }
}

struct Table {
    cols: usize,
    rows: Vec<u32>,
    parent: Vec<u32>,
    queue: Vec<u32>,
    max: usize,
}

struct Overflow;

impl Table {
    fn get(&self, c: u32, x: usize) -> u32 {
        self.rows[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.rows[c as usize * self.cols + x] = d;
    }

    fn len(&self) -> usize {
        self.parent.len()
    }

    fn alive(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.parent[r as usize] != r {
            r = self.parent[r as usize];
        }
        let mut x = c;
        while self.parent[x as usize] != r {
            let next = self.parent[x as usize];
            self.parent[x as usize] = r;
            x = next;
        }
        r
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, Overflow> {
        if self.len() >= self.max {
            return Err(Overflow);
        }
        let d = self.len() as u32;
        self.parent.push(d);
        self.rows.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(d)
    }

    fn merge(&mut self, k: u32, l: u32) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k == l {
            return;
        }
        let (lo, hi) = (k.min(l), k.max(l));
        self.parent[hi as usize] = lo;
        self.queue.push(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.queue.clear();
        self.merge(a, b);
        let mut i = 0;
        while i < self.queue.len() {
            let e = self.queue[i];
            i += 1;
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                if self.get(f, x ^ 1) == e {
                    self.set(f, x ^ 1, NONE);
                }
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                if ex != NONE {
                    self.merge(f1, ex);
                } else {
                    let fx = self.get(f1, x ^ 1);
                    if fx != NONE {
                        self.merge(e1, fx);
                    } else {
                        self.set(e1, x, f1);
                        self.set(f1, x ^ 1, e1);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, w: &[usize]) -> Result<(), Overflow> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() as isize - 1);
        loop {
            while (i as isize) <= j && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if (i as isize) > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j >= i as isize && self.get(b, w[j as usize] ^ 1) != NONE {
                b = self.get(b, w[j as usize] ^ 1);
                j -= 1;
            }
            if j < i as isize {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i as isize {
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }
}

/// Enumerates the cosets of the trivial subgroup, i.e. the group order,
/// defining at most `max_cosets` cosets.
pub fn coset_enumeration(p: &Presentation, max_cosets: usize) -> CosetOutcome {
    coset_enumeration_with(p, max_cosets, &AtomicBool::new(false))
}

/// As [`coset_enumeration`], stopping early once `cancel` is set.
pub fn coset_enumeration_with(
    p: &Presentation,
    max_cosets: usize,
    cancel: &AtomicBool,
) -> CosetOutcome {
    let cols = 2 * p.num_generators();
    let words: Vec<Vec<usize>> = p
        .relators()
        .iter()
        .map(|r| r.iter().map(|l| 2 * l.gen + l.inverse as usize).collect())
        .collect();
    let mut t = Table {
        cols,
        rows: vec![NONE; cols],
        parent: vec![0],
        queue: Vec::new(),
        max: max_cosets.max(1),
    };
    let mut c = 0u32;
    while (c as usize) < t.len() {
        if cancel.load(Ordering::Relaxed) {
            return CosetOutcome::Cancelled { defined: t.len() };
        }
        let step = (|| {
            for w in &words {
                if !t.alive(c) {
                    break;
                }
                t.scan_and_fill(c, w)?;
            }
            for x in 0..cols {
                if !t.alive(c) {
                    break;
                }
                if t.get(c, x) == NONE {
                    t.define(c, x)?;
                }
            }
            Ok::<(), Overflow>(())
        })();
        if step.is_err() {
            return CosetOutcome::Overflow { defined: t.len() };
        }
        c += 1;
    }
    let order = (0..t.len() as u32).filter(|&c| t.alive(c)).count();
    CosetOutcome::Finished {
        order,
        defined: t.len(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::{parse_presentation, Letter};

    fn group(gens: &[&str], rels: &[&str]) -> Presentation {
        let generators: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let relators = rels
            .iter()
            .map(|r| {
                r.chars()
                    .map(|c| {
                        let g = generators
                            .iter()
                            .position(|x| x.starts_with(c.to_ascii_lowercase()))
                            .unwrap();
                        Letter::new(g, c.is_ascii_uppercase())
                    })
                    .collect()
            })
            .collect();
        Presentation::group(generators, relators).unwrap()
    }

    #[test]
    fn kp_is_trivial() {
        let p = parse_presentation("a,b|b,baBAA").unwrap();
        assert_eq!(coset_enumeration(&p, 100_000).order(), Some(1));
    }

    #[test]
    fn cyclic_of_order_three() {
        assert_eq!(
            coset_enumeration(&group(&["a"], &["aaa"]), 1000).order(),
            Some(3)
        );
    }

    #[test]
    fn symmetric_group_s3_and_s4() {
        // S3 = <a,b | a^2, b^3, (ab)^2>
        assert_eq!(
            coset_enumeration(&group(&["a", "b"], &["aa", "bbb", "abab"]), 1000).order(),
            Some(6)
        );
        // S4 = <a,b | a^2, b^3, (ab)^4>
        assert_eq!(
            coset_enumeration(&group(&["a", "b"], &["aa", "bbb", "abababab"]), 10_000).order(),
            Some(24)
        );
        // A5 = <a,b | a^2, b^3, (ab)^5>
        assert_eq!(
            coset_enumeration(&group(&["a", "b"], &["aa", "bbb", "ababababab"]), 100_000).order(),
            Some(60)
        );
    }

    #[test]
    fn quaternion_group() {
        // Q8 = <i,j | i^4, i^2 j^-2, j^-1 i j i>
        assert_eq!(
            coset_enumeration(&group(&["i", "j"], &["iiii", "iiJJ", "Jiji"]), 10_000).order(),
            Some(8)
        );
    }

    #[test]
    fn infinite_groups_overflow() {
        let t = parse_presentation("a,b|abAB").unwrap();
        assert!(matches!(
            coset_enumeration(&t, 1000),
            CosetOutcome::Overflow { .. }
        ));
        let f = parse_presentation("a|").unwrap();
        assert!(matches!(
            coset_enumeration(&f, 50),
            CosetOutcome::Overflow { .. }
        ));
    }

    #[test]
    fn cancellation() {
        let t = parse_presentation("a,b|abAB").unwrap();
        let flag = AtomicBool::new(true);
        assert!(matches!(
            coset_enumeration_with(&t, 1000, &flag),
            CosetOutcome::Cancelled { .. }
        ));
    }
}
