use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Letter {
    pub generator: usize,
    /// +1 or -1.
    pub exponent: i8,
}

impl Letter {
    pub fn new(generator: usize, exponent: i8) -> Self {
        debug_assert!(exponent == 1 || exponent == -1);
        Letter { generator, exponent }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, exponent: -self.exponent }
    }
}

/// A freely reduced word in the generators of a presentation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: impl IntoIterator<Item = Letter>) -> Self {
        let mut w = Word::empty();
        for l in letters {
            w.push(l);
        }
        w
    }

    /// Append with free cancellation.
    pub fn push(&mut self, letter: Letter) {
        if self.0.last() == Some(&letter.inverse()) {
            self.0.pop();
        } else {
            self.0.push(letter);
        }
    }

    pub fn extend(&mut self, other: &Word) {
        for &l in &other.0 {
            self.push(l);
        }
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    /// Cyclically reduced form, as the least rotation of the word or its
    /// inverse. Two relators with the same key have the same normal closure.
    pub fn cyclic_key(&self) -> Word {
        let mut v = self.0.clone();
        while v.len() >= 2 && v[0] == v[v.len() - 1].inverse() {
            v.pop();
            v.remove(0);
        }
        let inv: Vec<Letter> = v.iter().rev().map(|l| l.inverse()).collect();
        let mut best = v.clone();
        for base in [&v, &inv] {
            for k in 0..base.len() {
                let rot: Vec<Letter> = base[k..].iter().chain(&base[..k]).copied().collect();
                if rot < best {
                    best = rot;
                }
            }
        }
        Word(best)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Reindex generators through `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Word {
        Word::from_letters(self.0.iter().map(|l| Letter::new(f(l.generator), l.exponent)))
    }

    /// `[[generator, ±1], ...]` as used by the JSON output.
    pub fn signed_indices(&self) -> Vec<i64> {
        self.0
            .iter()
            .map(|l| (l.generator as i64 + 1) * l.exponent as i64)
            .collect()
    }

    pub fn exponent_sums(&self, ngens: usize) -> Vec<i64> {
        let mut v = vec![0i64; ngens];
        for l in &self.0 {
            v[l.generator] += l.exponent as i64;
        }
        v
    }

    pub fn render(&self, labels: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|l| {
                if l.exponent > 0 {
                    labels[l.generator].clone()
                } else {
                    format!("{}^-1", labels[l.generator])
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = (0..=self.0.iter().map(|l| l.generator).max().unwrap_or(0))
            .map(|g| format!("g{}", g + 1))
            .collect();
        f.write_str(&self.render(&labels))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_cancellation() {
        let w = Word::from_letters([Letter::new(0, 1), Letter::new(1, 1), Letter::new(1, -1), Letter::new(0, -1)]);
        assert!(w.is_empty());
        let w = Word::from_letters([Letter::new(0, 1), Letter::new(0, 1)]);
        assert_eq!(w.len(), 2);
        let mut u = w.clone();
        u.extend(&w.inverse());
        assert!(u.is_empty());
        assert_eq!(w.signed_indices(), vec![1, 1]);
        assert_eq!(w.inverse().signed_indices(), vec![-1, -1]);
    }
}
