//! Group presentations and their signed-letter words.
//!
//! The compact text format is `gens|rel,rel,...` where generators are
//! comma-separated lowercase letters and each relator is spelled with a
//! lowercase letter for a generator and the uppercase letter for its inverse,
//! e.g. `a,b|b,baBAA`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A generator together with an exponent sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(gen: usize, inverse: bool) -> Self {
        Letter { gen, inverse }
    }

    pub fn pos(gen: usize) -> Self {
        Letter {
            gen,
            inverse: false,
        }
    }

    pub fn neg(gen: usize) -> Self {
        Letter { gen, inverse: true }
    }

    pub fn inv(self) -> Self {
        Letter {
            gen: self.gen,
            inverse: !self.inverse,
        }
    }

    /// `+1` or `-1`.
    pub fn sign(self) -> i8 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

pub type Word = Vec<Letter>;

/// Cancels adjacent `x x⁻¹` pairs.
pub fn free_reduce(word: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &l in word {
        if out.last() == Some(&l.inv()) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

fn is_freely_reduced(word: &[Letter]) -> bool {
    word.windows(2).all(|w| w[0] != w[1].inv())
}

/// Returns the smallest `k ≥ 2` with `word = u^k`, if any.
fn power_exponent(word: &[Letter]) -> Option<usize> {
    let n = word.len();
    (1..n)
        .filter(|&p| n.is_multiple_of(p))
        .find(|&p| (p..n).all(|i| word[i] == word[i - p]))
        .map(|p| n / p)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// A presentation usable as the target of a combinatorial map: relators
    /// must be nonempty, freely reduced and not proper powers.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        let p = Self::group(generators, relators)?;
        for (i, r) in p.relators.iter().enumerate() {
            if let Some(k) = power_exponent(r) {
                return Err(Error::Presentation(format!(
                    "relator {} is a proper power (exponent {k})",
                    p.word_to_string(r).unwrap_or_else(|| i.to_string())
                )));
            }
        }
        Ok(p)
    }

    /// A presentation of a group, where proper-power relators are allowed
    /// (torsion, fundamental-group presentations).
    pub fn group(generators: Vec<String>, relators: Vec<Word>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if generators[..i].contains(g) {
                return Err(Error::Presentation(format!("duplicate generator `{g}`")));
            }
        }
        for (i, r) in relators.iter().enumerate() {
            if r.is_empty() {
                return Err(Error::Presentation(format!("relator {i} is empty")));
            }
            if let Some(l) = r.iter().find(|l| l.gen >= generators.len()) {
                return Err(Error::Presentation(format!(
                    "relator {i} uses undeclared generator index {}",
                    l.gen
                )));
            }
            if !is_freely_reduced(r) {
                return Err(Error::Presentation(format!(
                    "relator {i} is not freely reduced"
                )));
            }
        }
        Ok(Presentation {
            generators,
            relators,
        })
    }

    /// `⟨a,b | b, bab⁻¹a⁻²⟩`.
    pub fn kp() -> Self {
        parse_presentation("a,b|b,baBAA").expect("static presentation")
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Whether every generator is a single lowercase ASCII letter, so the
    /// compact format applies.
    pub fn is_compact(&self) -> bool {
        self.generators
            .iter()
            .all(|g| g.len() == 1 && g.as_bytes()[0].is_ascii_lowercase())
    }

    fn word_to_string(&self, w: &[Letter]) -> Option<String> {
        if !self.is_compact() {
            return None;
        }
        Some(
            w.iter()
                .map(|l| {
                    let c = self.generators[l.gen].chars().next().unwrap();
                    if l.inverse {
                        c.to_ascii_uppercase()
                    } else {
                        c
                    }
                })
                .collect(),
        )
    }

    /// The `gens|rel,...` form, when every generator is a single letter.
    pub fn to_compact(&self) -> Option<String> {
        if !self.is_compact() {
            return None;
        }
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| self.word_to_string(r).unwrap())
            .collect();
        Some(format!("{}|{}", self.generators.join(","), rels.join(",")))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(s) = self.to_compact() {
            return f.write_str(&s);
        }
        let rels: Vec<String> = self
            .relators
            .iter()
            .map(|r| {
                r.iter()
                    .map(|l| {
                        let g = &self.generators[l.gen];
                        if l.inverse {
                            format!("{g}^-1")
                        } else {
                            g.clone()
                        }
                    })
                    .collect::<Vec<_>>()
                    .join("*")
            })
            .collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

/// Parses the compact `gens|rel,rel,...` format.
///
/// Relators are checked, never silently reduced: an unreduced relator or a
/// proper power is an error.
pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let text = text.trim();
    let (gens, rels) = text
        .split_once('|')
        .ok_or_else(|| Error::Presentation("expected `gens|relators`".into()))?;
    let generators: Vec<String> = if gens.trim().is_empty() {
        Vec::new()
    } else {
        gens.split(',').map(|g| g.trim().to_string()).collect()
    };
    for g in &generators {
        if g.len() != 1 || !g.as_bytes()[0].is_ascii_lowercase() {
            return Err(Error::Presentation(format!(
                "generator `{g}` must be a single lowercase letter"
            )));
        }
    }
    let mut relators = Vec::new();
    if !rels.trim().is_empty() {
        for (i, r) in rels.split(',').enumerate() {
            let r = r.trim();
            if r.is_empty() {
                return Err(Error::Presentation(format!("relator {i} is empty")));
            }
            let mut word = Word::new();
            for c in r.chars() {
                let lower = c.to_ascii_lowercase().to_string();
                let gen = generators.iter().position(|g| *g == lower).ok_or_else(|| {
                    Error::Presentation(format!("unknown symbol `{c}` in relator {i}"))
                })?;
                word.push(Letter::new(gen, c.is_ascii_uppercase()));
            }
            relators.push(word);
        }
    }
    Presentation::new(generators, relators)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_kp() {
        let p = parse_presentation("a,b|b,baBAA").unwrap();
        assert_eq!(p.generators(), ["a", "b"]);
        assert_eq!(p.relators()[0], vec![Letter::pos(1)]);
        assert_eq!(
            p.relators()[1],
            vec![
                Letter::pos(1),
                Letter::pos(0),
                Letter::neg(1),
                Letter::neg(0),
                Letter::neg(0)
            ]
        );
        assert_eq!(p.to_compact().unwrap(), "a,b|b,baBAA");
        assert_eq!(p, Presentation::kp());
    }

    #[test]
    fn rejects_unreduced() {
        let e = parse_presentation("a|aA").unwrap_err();
        assert!(e.to_string().contains("not freely reduced"), "{e}");
    }

    #[test]
    fn rejects_proper_power() {
        let e = parse_presentation("a|aa").unwrap_err();
        assert!(e.to_string().contains("proper power"), "{e}");
        assert!(parse_presentation("a,b|abab").is_err());
        assert!(parse_presentation("a,b|abaB").is_ok());
    }

    #[test]
    fn rejects_unknown_and_empty() {
        assert!(parse_presentation("a|b").is_err());
        assert!(parse_presentation("a|a,,a").is_err());
        assert!(parse_presentation("ab|a").is_err());
    }

    #[test]
    fn free_group_and_group_presentations() {
        let p = parse_presentation("a|").unwrap();
        assert_eq!(p.relators().len(), 0);
        let g = Presentation::group(vec!["a".into()], vec![vec![Letter::pos(0); 3]]).unwrap();
        assert_eq!(g.to_compact().unwrap(), "a|aaa");
    }

    #[test]
    fn reduces_words() {
        let w = vec![
            Letter::pos(0),
            Letter::pos(1),
            Letter::neg(1),
            Letter::neg(0),
            Letter::pos(1),
        ];
        assert_eq!(free_reduce(&w), vec![Letter::pos(1)]);
    }
}
