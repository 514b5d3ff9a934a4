//! Walks, their concatenation and inversion, and the prune / l-prune
//! rewriting systems.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{same_graph, Graph, Morphism};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_len(len: usize) -> Parity {
        if len.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

/// A place where a single rewrite applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PruneSite {
    /// `seq[i] == seq[i + 2]`: drop `seq[i + 1]` and `seq[i + 2]`.
    Backtrack(usize),
    /// `seq[i] == seq[i + 1]`: drop `seq[i + 1]` (looped mode only).
    Repeat(usize),
}

/// A walk of length `n` is `n + 1` vertices with consecutive ones adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    graph: Arc<Graph>,
    seq: Vec<usize>,
}

impl Walk {
    pub fn new(graph: Arc<Graph>, seq: Vec<usize>) -> Result<Walk> {
        if seq.is_empty() {
            return Err(Error::EmptyWalk);
        }
        if let Some(&bad) = seq.iter().find(|&&v| v >= graph.order()) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        for w in seq.windows(2) {
            if !graph.adjacent(w[0], w[1]) {
                return Err(Error::NotAWalk(
                    graph.name(w[0]).to_string(),
                    graph.name(w[1]).to_string(),
                ));
            }
        }
        Ok(Walk { graph, seq })
    }

    pub fn from_tokens<S: AsRef<str>>(graph: Arc<Graph>, tokens: &[S]) -> Result<Walk> {
        let seq = tokens
            .iter()
            .map(|t| graph.require(t.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Walk::new(graph, seq)
    }

    /// Parse the comma separated form, e.g. `a,c,b,c,e`.
    pub fn parse(graph: Arc<Graph>, text: &str) -> Result<Walk> {
        Walk::from_tokens(graph, &crate::io::parse_walk_tokens(text))
    }

    pub fn trivial(graph: Arc<Graph>, v: usize) -> Walk {
        assert!(v < graph.order());
        Walk { graph, seq: vec![v] }
    }

    pub(crate) fn from_trusted(graph: Arc<Graph>, seq: Vec<usize>) -> Walk {
        debug_assert!(Walk::new(graph.clone(), seq.clone()).is_ok());
        Walk { graph, seq }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn vertices(&self) -> &[usize] {
        &self.seq
    }

    /// Number of edges traversed.
    pub fn len(&self) -> usize {
        self.seq.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.seq.len() == 1
    }

    pub fn start(&self) -> usize {
        self.seq[0]
    }

    pub fn end(&self) -> usize {
        self.seq[self.seq.len() - 1]
    }

    pub fn is_closed(&self) -> bool {
        self.start() == self.end()
    }

    pub fn parity(&self) -> Parity {
        Parity::of_len(self.len())
    }

    pub fn is_looped_walk(&self) -> bool {
        self.seq.iter().all(|&v| self.graph.is_looped(v))
    }

    pub fn tokens(&self) -> Vec<&str> {
        self.seq.iter().map(|&v| self.graph.name(v)).collect()
    }

    pub fn same_graph(&self, other: &Walk) -> bool {
        same_graph(&self.graph, &other.graph)
    }

    pub fn concat(&self, other: &Walk) -> Result<Walk> {
        if !self.same_graph(other) {
            return Err(Error::DifferentGraphs);
        }
        if self.end() != other.start() {
            return Err(Error::EndpointMismatch(
                self.graph.name(self.end()).to_string(),
                self.graph.name(other.start()).to_string(),
            ));
        }
        let mut seq = self.seq.clone();
        seq.extend_from_slice(&other.seq[1..]);
        Ok(Walk { graph: self.graph.clone(), seq })
    }

    pub fn invert(&self) -> Walk {
        let mut seq = self.seq.clone();
        seq.reverse();
        Walk { graph: self.graph.clone(), seq }
    }

    /// Append `v` (which must be adjacent to the current end).
    pub fn push(&self, v: usize) -> Result<Walk> {
        let mut seq = self.seq.clone();
        seq.push(v);
        Walk::new(self.graph.clone(), seq)
    }

    pub(crate) fn require_looped(&self) -> Result<()> {
        match self.seq.iter().find(|&&v| !self.graph.is_looped(v)) {
            Some(&v) => Err(Error::Unlooped(self.graph.name(v).to_string())),
            None => Ok(()),
        }
    }

    /// The unique walk reachable by pruning until no prune applies. In looped
    /// mode immediate repeats are deleted as well.
    pub fn prune_normalize(&self, looped: bool) -> Result<Walk> {
        if looped {
            self.require_looped()?;
        }
        Ok(Walk {
            graph: self.graph.clone(),
            seq: normalize_seq(&self.seq, looped),
        })
    }

    pub fn prune_sites(&self, looped: bool) -> Vec<PruneSite> {
        prune_sites(&self.seq, looped)
    }

    pub fn is_prunable(&self, looped: bool) -> bool {
        !self.prune_sites(looped).is_empty()
    }

    /// Panics when `site` does not apply.
    pub fn apply_prune(&self, site: PruneSite) -> Walk {
        Walk {
            graph: self.graph.clone(),
            seq: apply_site(&self.seq, site),
        }
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::format_walk_tokens(&self.tokens()))
    }
}

/// Entry-wise image of a walk under a morphism.
pub fn induced_walk(f: &Morphism, a: &Walk) -> Result<Walk> {
    if !same_graph(f.source(), a.graph()) {
        return Err(Error::DifferentGraphs);
    }
    let seq = a.vertices().iter().map(|&v| f.apply(v)).collect();
    // a validated morphism maps walks to walks
    Ok(Walk::from_trusted(f.target().clone(), seq))
}

/// Leftmost reduction: the processed prefix is always irreducible, so the
/// first redex found is the leftmost one.
pub(crate) fn normalize_seq(seq: &[usize], looped: bool) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(seq.len());
    for &v in seq {
        out.push(v);
        loop {
            let n = out.len();
            if looped && n >= 2 && out[n - 1] == out[n - 2] {
                out.pop();
            } else if n >= 3 && out[n - 1] == out[n - 3] {
                out.truncate(n - 2);
            } else {
                break;
            }
        }
    }
    out
}

pub(crate) fn prune_sites(seq: &[usize], looped: bool) -> Vec<PruneSite> {
    let mut sites = Vec::new();
    for i in 0..seq.len() {
        if looped && i + 1 < seq.len() && seq[i] == seq[i + 1] {
            sites.push(PruneSite::Repeat(i));
        }
        if i + 2 < seq.len() && seq[i] == seq[i + 2] {
            sites.push(PruneSite::Backtrack(i));
        }
    }
    sites
}

pub(crate) fn apply_site(seq: &[usize], site: PruneSite) -> Vec<usize> {
    let mut out = seq.to_vec();
    match site {
        PruneSite::Backtrack(i) => {
            assert_eq!(seq[i], seq[i + 2], "no backtrack at {i}");
            out.drain(i + 1..i + 3);
        }
        PruneSite::Repeat(i) => {
            assert_eq!(seq[i], seq[i + 1], "no repeat at {i}");
            out.remove(i + 1);
        }
    }
    out
}

/// Every non-prunable walk from `from` of length at most `max_len`, in
/// depth-first vertex order. Fails once more than `cap` walks are found.
pub fn reduced_walks(g: &Arc<Graph>, from: usize, max_len: usize, looped: bool, cap: usize) -> Result<Vec<Walk>> {
    let mut out = Vec::new();
    let mut seq = vec![from];
    fn go(
        g: &Arc<Graph>,
        seq: &mut Vec<usize>,
        max_len: usize,
        looped: bool,
        cap: usize,
        out: &mut Vec<Walk>,
    ) -> Result<()> {
        if out.len() >= cap {
            return Err(Error::CapExceeded { what: "walk enumeration", size: cap as u128 + 1, cap: cap as u128 });
        }
        out.push(Walk::from_trusted(g.clone(), seq.clone()));
        if seq.len() > max_len {
            return Ok(());
        }
        let n = seq.len();
        let last = seq[n - 1];
        for &v in g.neighbors(last) {
            if (n >= 2 && seq[n - 2] == v) || (looped && (v == last || !g.is_looped(v))) {
                continue;
            }
            seq.push(v);
            go(g, seq, max_len, looped, cap, out)?;
            seq.pop();
        }
        Ok(())
    }
    if looped && !g.is_looped(from) {
        return Err(Error::Unlooped(g.name(from).to_string()));
    }
    go(g, &mut seq, max_len, looped, cap, &mut out)?;
    Ok(out)
}

/// Uniform random walk of exactly `len` steps from `start`, staying on
/// looped vertices when `looped_only`. `None` when it gets stuck.
pub fn random_walk<R: rand::Rng>(g: &Arc<Graph>, rng: &mut R, start: usize, len: usize, looped_only: bool) -> Option<Walk> {
    use rand::seq::SliceRandom;
    let mut seq = vec![start];
    for _ in 0..len {
        let last = seq[seq.len() - 1];
        let options: Vec<usize> = g.neighbors(last).iter().copied().filter(|&v| !looped_only || g.is_looped(v)).collect();
        seq.push(*options.choose(rng)?);
    }
    Some(Walk::from_trusted(g.clone(), seq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle_graph, path_graph, terminal_graph, complete_graph};
    use crate::io::parse_graph;

    fn pendant_square() -> Arc<Graph> {
        Arc::new(parse_graph("vertex a\nvertex b\nvertex c\nvertex d\nvertex e\nedge d a\nedge a c\nedge c e\nedge e d\nedge c b\n").unwrap())
    }

    fn w(g: &Arc<Graph>, s: &str) -> Walk {
        Walk::parse(g.clone(), s).unwrap()
    }

    #[test]
    fn concat_examples() {
        let g = Arc::new(path_graph(2, false));
        assert_eq!(w(&g, "0,1").concat(&w(&g, "1,2")).unwrap(), w(&g, "0,1,2"));
        assert_eq!(w(&g, "1").concat(&w(&g, "1,2")).unwrap(), w(&g, "1,2"));
        assert!(matches!(w(&g, "0,1").concat(&w(&g, "0,1")), Err(Error::EndpointMismatch(..))));
        let other = Arc::new(path_graph(3, false));
        assert_eq!(w(&g, "0,1").concat(&w(&other, "1,2")), Err(Error::DifferentGraphs));

        let g = pendant_square();
        let whole = w(&g, "a,c,b,c,e");
        assert_eq!(w(&g, "a,c").concat(&w(&g, "c,b,c,e")).unwrap(), whole);
    }

    #[test]
    fn inversion() {
        let c5 = Arc::new(cycle_graph(5));
        assert_eq!(w(&c5, "0,1,2,3,4,0").invert(), w(&c5, "0,4,3,2,1,0"));
        assert_eq!(w(&c5, "3").invert(), w(&c5, "3"));
    }

    #[test]
    fn walks_must_follow_edges() {
        let c5 = Arc::new(cycle_graph(5));
        assert!(matches!(Walk::parse(c5.clone(), "0,2"), Err(Error::NotAWalk(..))));
        assert_eq!(Walk::parse(c5, ""), Err(Error::EmptyWalk));
    }

    #[test]
    fn reduced_walk_counts() {
        let c5 = Arc::new(cycle_graph(5));
        // one trivial walk, then two non-backtracking walks of each length
        assert_eq!(reduced_walks(&c5, 0, 4, false, 100).unwrap().len(), 9);
        assert!(reduced_walks(&c5, 0, 4, false, 5).unwrap_err().is_cap());
        let t = Arc::new(terminal_graph());
        let ws: Vec<String> = reduced_walks(&t, 0, 3, false, 100).unwrap().iter().map(|w| w.to_string()).collect();
        assert_eq!(ws, vec!["v", "v,v"]);
        assert_eq!(reduced_walks(&t, 0, 3, true, 100).unwrap().len(), 1);
        for w in reduced_walks(&c5, 0, 6, false, 100).unwrap() {
            assert!(!w.is_prunable(false));
        }
    }

    #[test]
    fn normal_forms() {
        let g = pendant_square();
        assert_eq!(w(&g, "a,c,b,c,e").prune_normalize(false).unwrap(), w(&g, "a,c,e"));
        let p2 = Arc::new(path_graph(2, false));
        assert_eq!(w(&p2, "0,1,2,1,0").prune_normalize(false).unwrap(), w(&p2, "0"));
        let t = Arc::new(terminal_graph());
        assert_eq!(w(&t, "v,v,v").prune_normalize(true).unwrap(), w(&t, "v"));
        // unlooped mode only removes the backtrack
        assert_eq!(w(&t, "v,v,v").prune_normalize(false).unwrap(), w(&t, "v"));
        assert_eq!(w(&t, "v,v").prune_normalize(false).unwrap(), w(&t, "v,v"));
        let k2l = Arc::new(complete_graph(2, true));
        assert_eq!(w(&k2l, "0,0,1").prune_normalize(true).unwrap(), w(&k2l, "0,1"));
    }

    #[test]
    fn looped_mode_rejects_unlooped_vertices() {
        let c5 = Arc::new(cycle_graph(5));
        assert_eq!(w(&c5, "0,1").prune_normalize(true), Err(Error::Unlooped("0".into())));
    }

    #[test]
    fn inverse_law_on_a_cycle() {
        let c5 = Arc::new(cycle_graph(5));
        let a = w(&c5, "0,1,2,3,4,0,1");
        let r = a.concat(&a.invert()).unwrap().prune_normalize(false).unwrap();
        assert_eq!(r, Walk::trivial(c5, 0));
    }

    #[test]
    fn induced_walks() {
        let g = pendant_square();
        let id = Morphism::identity(g.clone());
        let a = w(&g, "a,c,b,c,e");
        assert_eq!(induced_walk(&id, &a).unwrap(), a);
        let fold = Morphism::from_pairs(g.clone(), g.clone(), &[("a", "a"), ("b", "a"), ("c", "c"), ("d", "d"), ("e", "e")]).unwrap();
        assert_eq!(induced_walk(&fold, &a).unwrap(), w(&g, "a,c,a,c,e"));

        let p2 = Arc::new(path_graph(2, false));
        let t = Arc::new(terminal_graph());
        let constant = Morphism::new(p2.clone(), t.clone(), vec![0, 0, 0]).unwrap();
        assert_eq!(induced_walk(&constant, &w(&p2, "0,1,2")).unwrap(), w(&t, "v,v,v"));
    }

    #[test]
    fn sites_and_application() {
        let t = Arc::new(terminal_graph());
        let a = w(&t, "v,v,v");
        assert_eq!(
            a.prune_sites(true),
            vec![PruneSite::Repeat(0), PruneSite::Backtrack(0), PruneSite::Repeat(1)]
        );
        assert_eq!(a.apply_prune(PruneSite::Repeat(1)), w(&t, "v,v"));
        assert_eq!(a.apply_prune(PruneSite::Backtrack(0)), w(&t, "v"));
    }
}
