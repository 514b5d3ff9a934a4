//! Bounded check of the splitting `Π(G) ≅ E x Z/2` for reflexive `G`, where
//! `E` is the even subgroupoid and an odd arrow `α: v -> w` corresponds to
//! the even arrow `α * (w w)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homotopy::{Verdict, WalkHomotopy};
use crate::walk::{reduced_walks, Parity, Walk};

const WALK_CAP: usize = 100_000;
const INNER_STATES: usize = 20_000;
const CONCAT_SAMPLES: usize = 200;

#[derive(Debug, Clone, Default, Serialize)]
pub struct ReflexiveReport {
    pub walks: usize,
    pub even_classes: usize,
    pub odd_classes: usize,
    /// Odd classes whose image is not among the even classes, or two odd
    /// classes sharing an image.
    pub bijection_failures: Vec<String>,
    pub concat_checked: usize,
    pub concat_failures: Vec<String>,
    pub unknown: Vec<String>,
}

impl ReflexiveReport {
    pub fn passed(&self) -> bool {
        self.bijection_failures.is_empty() && self.concat_failures.is_empty() && self.unknown.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "walks classified: {}", self.walks);
        let _ = writeln!(out, "classes: {} even, {} odd", self.even_classes, self.odd_classes);
        let _ = writeln!(out, "bijection failures: {}", self.bijection_failures.len());
        for f in &self.bijection_failures {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(out, "concatenation: {} checked, {} failures", self.concat_checked, self.concat_failures.len());
        for f in &self.concat_failures {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(out, "undecided comparisons: {}", self.unknown.len());
        for u in &self.unknown {
            let _ = writeln!(out, "  {u}");
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Homotopy classes of walks with fixed endpoints and parity, by
/// representative.
struct Classes<'a> {
    ctx: &'a mut WalkHomotopy,
    reps: BTreeMap<(usize, usize, Parity), Vec<Walk>>,
    unknown: Vec<String>,
}

impl Classes<'_> {
    fn equal(&mut self, a: &Walk, b: &Walk) -> Result<Option<bool>> {
        let bound = a.len().max(b.len()) + 4;
        let d = self.ctx.decide(a, b, bound, INNER_STATES)?;
        Ok(match d.verdict {
            Verdict::Equal => Some(true),
            Verdict::Distinct => Some(false),
            Verdict::Unknown => {
                self.unknown.push(format!("({a}) vs ({b})"));
                None
            }
        })
    }

    /// Index of the class of `w` among the known ones, if any.
    fn find(&mut self, w: &Walk) -> Result<Option<usize>> {
        let key = (w.start(), w.end(), w.parity());
        let reps = self.reps.get(&key).cloned().unwrap_or_default();
        for (i, r) in reps.iter().enumerate() {
            if self.equal(w, r)? == Some(true) {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    fn insert(&mut self, w: &Walk) -> Result<()> {
        if self.find(w)?.is_none() {
            self.reps.entry((w.start(), w.end(), w.parity())).or_default().push(w.clone());
        }
        Ok(())
    }
}

/// `α` followed by a repeat of its last vertex.
fn stutter(w: &Walk) -> Walk {
    w.push(w.end()).expect("reflexive graphs have every loop")
}

pub fn verify_reflexive_split(g: &Arc<Graph>, max_len: usize) -> Result<ReflexiveReport> {
    if let Some(v) = (0..g.order()).find(|&v| !g.is_looped(v)) {
        return Err(Error::NotReflexive(g.name(v).to_string()));
    }
    if max_len == 0 {
        return Err(Error::InvalidBound("max_len"));
    }
    let mut ctx = WalkHomotopy::new(g.clone(), false);
    let mut classes = Classes { ctx: &mut ctx, reps: BTreeMap::new(), unknown: Vec::new() };
    let mut report = ReflexiveReport::default();
    for v in 0..g.order() {
        for w in reduced_walks(g, v, max_len, false, WALK_CAP)? {
            report.walks += 1;
            classes.insert(&w)?;
        }
    }
    for ((_, _, parity), reps) in &classes.reps {
        match parity {
            Parity::Even => report.even_classes += reps.len(),
            Parity::Odd => report.odd_classes += reps.len(),
        }
    }

    // odd classes -> even classes through α * (w w)
    let keys: Vec<_> = classes.reps.keys().copied().filter(|k| k.2 == Parity::Odd).collect();
    for (s, t, _) in keys {
        let odd = classes.reps[&(s, t, Parity::Odd)].clone();
        let mut hit: BTreeMap<usize, Walk> = BTreeMap::new();
        for a in &odd {
            let image = stutter(a);
            match classes.find(&image)? {
                None => report.bijection_failures.push(format!("({image}) matches no even class")),
                Some(i) => {
                    if let Some(prev) = hit.insert(i, a.clone()) {
                        report.bijection_failures.push(format!("({prev}) and ({a}) share an even image"));
                    }
                }
            }
        }
        // every even class is hit: β * (w w) is an odd walk of the same
        // endpoints, and its image is β again
        let even = classes.reps.get(&(s, t, Parity::Even)).cloned().unwrap_or_default();
        for (i, b) in even.iter().enumerate() {
            if hit.contains_key(&i) || b.len() + 1 > max_len {
                continue;
            }
            report.bijection_failures.push(format!("even class of ({b}) is not an image"));
        }
    }

    // concatenation: (v v) * β ≃ β * (w w) for composable samples
    let all: Vec<Walk> = classes.reps.values().flatten().cloned().collect();
    'outer: for a in &all {
        for b in all.iter().filter(|b| b.start() == a.end()) {
            if report.concat_checked >= CONCAT_SAMPLES {
                break 'outer;
            }
            report.concat_checked += 1;
            let left = stutter(a).concat(b)?;
            let right = stutter(&a.concat(b)?);
            if classes.equal(&left, &right)? == Some(false) {
                report.concat_failures.push(format!("({left}) vs ({right})"));
            }
            if a.parity() == Parity::Odd && b.parity() == Parity::Odd {
                let split = stutter(a).concat(&stutter(b))?;
                let joined = a.concat(b)?;
                if classes.equal(&split, &joined)? == Some(false) {
                    report.concat_failures.push(format!("({split}) vs ({joined})"));
                }
            }
        }
    }
    report.unknown = classes.unknown;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph, terminal_graph};

    #[test]
    fn terminal_graph_has_two_classes() {
        let r = verify_reflexive_split(&Arc::new(terminal_graph()), 6).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!((r.even_classes, r.odd_classes), (1, 1));
    }

    #[test]
    fn looped_k2() {
        let r = verify_reflexive_split(&Arc::new(complete_graph(2, true)), 4).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.even_classes, r.odd_classes);
    }

    #[test]
    fn requires_reflexive() {
        assert_eq!(
            verify_reflexive_split(&Arc::new(path_graph(2, false)), 4).unwrap_err(),
            Error::NotReflexive("0".into())
        );
    }
}
