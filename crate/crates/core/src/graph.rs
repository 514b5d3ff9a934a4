//! Finite undirected graphs with optional loops, graph morphisms, the
//! categorical product and small-instance isomorphism search.
//!
//! Vertices are addressed by dense indices in declaration order; the string
//! token of each vertex is kept alongside for I/O. A loop is stored as the
//! edge `(v, v)`, so "looped" is just `adjacent(v, v)`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default cap on vertex count for [`find_isomorphism`].
pub const DEFAULT_ISO_CAP: usize = 10;

/// A vertex token: nonempty, over `[A-Za-z0-9_|]`.
///
/// `|` is admitted so that product vertices (`g|h`) survive a round trip
/// through the file format.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: impl Into<String>) -> Result<Self> {
        let token = token.into();
        if is_valid_token(&token) {
            Ok(VertexId(token))
        } else {
            Err(Error::InvalidToken(token))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn is_valid_token(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '|')
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    names: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<Vec<usize>>,
}

/// Incremental constructor; the only way to obtain a [`Graph`].
#[derive(Debug, Default, Clone)]
pub struct GraphBuilder {
    names: Vec<VertexId>,
    index: HashMap<VertexId, usize>,
    adj: Vec<BTreeSet<usize>>,
}

impl GraphBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_capacity(n: usize) -> Self {
        GraphBuilder {
            names: Vec::with_capacity(n),
            index: HashMap::with_capacity(n),
            adj: Vec::with_capacity(n),
        }
    }

    pub fn vertex(&mut self, token: &str) -> Result<usize> {
        let id = VertexId::new(token)?;
        if self.index.contains_key(&id) {
            return Err(Error::DuplicateVertex(token.to_string()));
        }
        let i = self.names.len();
        self.index.insert(id.clone(), i);
        self.names.push(id);
        self.adj.push(BTreeSet::new());
        Ok(i)
    }

    pub fn looped_vertex(&mut self, token: &str) -> Result<usize> {
        let i = self.vertex(token)?;
        self.edge_by_index(i, i);
        Ok(i)
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn edge(&mut self, a: &str, b: &str) -> Result<()> {
        let u = self
            .index_of(a)
            .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
        let v = self
            .index_of(b)
            .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
        self.edge_by_index(u, v);
        Ok(())
    }

    /// Panics if either index is out of range.
    pub fn edge_by_index(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn build(self) -> Graph {
        Graph {
            names: self.names,
            index: self.index,
            adj: self.adj.into_iter().map(|s| s.into_iter().collect()).collect(),
        }
    }
}

impl std::borrow::Borrow<str> for VertexId {
    fn borrow(&self) -> &str {
        &self.0
    }
}

impl Graph {
    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, v: usize) -> &str {
        self.names[v].as_str()
    }

    pub fn names(&self) -> &[VertexId] {
        &self.names
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.index.get(token).copied()
    }

    pub fn require(&self, token: &str) -> Result<usize> {
        self.index_of(token)
            .ok_or_else(|| Error::UnknownVertex(token.to_string()))
    }

    /// Sorted neighbours; includes `v` itself when `v` is looped.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn is_looped(&self, v: usize) -> bool {
        self.adjacent(v, v)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.order()).all(|v| self.is_looped(v))
    }

    /// Edges as `(u, v)` with `u <= v`, ordered by `u` then `v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v >= u).map(move |&v| (u, v)))
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Degree counting a loop once.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_isolated_vertex(&self) -> bool {
        self.adj.iter().any(|ns| ns.is_empty())
    }

    /// Component label per vertex; labels are assigned in order of each
    /// component's least vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.order()];
        let mut next = 0;
        for s in 0..self.order() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn component_count(&self) -> usize {
        self.components().into_iter().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Induced subgraph on `keep` (in the given order). Returns the subgraph
    /// and, for each of its vertices, the index in `self`.
    pub fn induced(&self, keep: &[usize]) -> (Graph, Vec<usize>) {
        let mut b = GraphBuilder::with_capacity(keep.len());
        let mut local = HashMap::with_capacity(keep.len());
        for &v in keep {
            let i = b.vertex(self.name(v)).expect("tokens already valid and unique");
            local.insert(v, i);
        }
        for &v in keep {
            for &w in &self.adj[v] {
                if let Some(&j) = local.get(&w) {
                    b.edge_by_index(local[&v], j);
                }
            }
        }
        (b.build(), keep.to_vec())
    }

    pub fn looped_subgraph(&self) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.order()).filter(|&v| self.is_looped(v)).collect();
        self.induced(&keep)
    }

    pub fn without_vertex(&self, x: usize) -> (Graph, Vec<usize>) {
        let keep: Vec<usize> = (0..self.order()).filter(|&v| v != x).collect();
        self.induced(&keep)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::io::serialize_graph(self))
    }
}

// ---------------------------------------------------------------------------
// Standard graphs

/// `P_n` on vertices `0..=n`; with `looped` every vertex gets a loop (`I_n^l`).
pub fn path_graph(n: usize, looped: bool) -> Graph {
    let mut b = GraphBuilder::with_capacity(n + 1);
    for i in 0..=n {
        b.vertex(&i.to_string()).unwrap();
        if looped {
            b.edge_by_index(i, i);
        }
        if i > 0 {
            b.edge_by_index(i - 1, i);
        }
    }
    b.build()
}

pub fn cycle_graph(n: usize) -> Graph {
    assert!(n >= 3, "cycle needs at least 3 vertices");
    let mut b = GraphBuilder::with_capacity(n);
    for i in 0..n {
        b.vertex(&i.to_string()).unwrap();
    }
    for i in 0..n {
        b.edge_by_index(i, (i + 1) % n);
    }
    b.build()
}

pub fn complete_graph(n: usize, looped: bool) -> Graph {
    let mut b = GraphBuilder::with_capacity(n);
    for i in 0..n {
        b.vertex(&i.to_string()).unwrap();
    }
    for i in 0..n {
        for j in i..n {
            if i != j || looped {
                b.edge_by_index(i, j);
            }
        }
    }
    b.build()
}

/// The terminal graph: one vertex `v` with a loop.
pub fn terminal_graph() -> Graph {
    let mut b = GraphBuilder::new();
    b.looped_vertex("v").unwrap();
    b.build()
}

/// Rim `a, b, c, ...` (a cycle of length `rim`) plus a hub `x` joined to
/// every rim vertex.
pub fn wheel_graph(rim: usize) -> Graph {
    assert!((3..=23).contains(&rim));
    let mut b = GraphBuilder::with_capacity(rim + 1);
    let rim_names: Vec<String> = (0..rim)
        .map(|i| ((b'a' + i as u8) as char).to_string())
        .collect();
    for n in &rim_names {
        b.vertex(n).unwrap();
    }
    let hub = b.vertex("x").unwrap();
    for i in 0..rim {
        b.edge_by_index(i, (i + 1) % rim);
        b.edge_by_index(i, hub);
    }
    b.build()
}

// ---------------------------------------------------------------------------
// Products

/// Categorical product. Vertex `(g, h)` is named `g|h`, ordered G-major.
pub fn product(g: &Graph, h: &Graph) -> Graph {
    let (n, m) = (g.order(), h.order());
    let mut b = GraphBuilder::with_capacity(n * m);
    for i in 0..n {
        for j in 0..m {
            b.vertex(&format!("{}|{}", g.name(i), h.name(j)))
                .expect("product tokens are unique");
        }
    }
    for (u1, u2) in g.edges() {
        for (w1, w2) in h.edges() {
            b.edge_by_index(u1 * m + w1, u2 * m + w2);
            b.edge_by_index(u1 * m + w2, u2 * m + w1);
        }
    }
    b.build()
}

/// Index of the pair `(g, h)` in `product(G, H)` where `H` has `h_order` vertices.
pub fn product_index(g: usize, h: usize, h_order: usize) -> usize {
    g * h_order + h
}

/// Random graph on vertices `0..n`: each pair is an edge with probability
/// `p`, each vertex looped with probability `p_loop`.
pub fn random_graph<R: rand::Rng>(rng: &mut R, n: usize, p: f64, p_loop: f64) -> Graph {
    let mut b = GraphBuilder::with_capacity(n);
    for i in 0..n {
        b.vertex(&i.to_string()).expect("numeric tokens are valid");
    }
    for i in 0..n {
        if rng.gen_bool(p_loop) {
            b.edge_by_index(i, i);
        }
        for j in i + 1..n {
            if rng.gen_bool(p) {
                b.edge_by_index(i, j);
            }
        }
    }
    b.build()
}

// ---------------------------------------------------------------------------
// Morphisms

/// A validated graph morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    source: Arc<Graph>,
    target: Arc<Graph>,
    map: Vec<usize>,
}

impl Morphism {
    pub fn new(source: Arc<Graph>, target: Arc<Graph>, map: Vec<usize>) -> Result<Self> {
        if map.len() != source.order() {
            return Err(Error::NotTotal(
                source
                    .names()
                    .get(map.len())
                    .map(|v| v.to_string())
                    .unwrap_or_default(),
            ));
        }
        if let Some(&bad) = map.iter().find(|&&t| t >= target.order()) {
            return Err(Error::UnknownVertex(bad.to_string()));
        }
        if let Some((u, v)) = first_broken_edge(&source, &target, &map) {
            return Err(Error::NotAMorphism(
                source.name(u).to_string(),
                source.name(v).to_string(),
            ));
        }
        Ok(Morphism { source, target, map })
    }

    pub fn from_pairs<S: AsRef<str>, T: AsRef<str>>(
        source: Arc<Graph>,
        target: Arc<Graph>,
        pairs: &[(S, T)],
    ) -> Result<Self> {
        let map = resolve_map(&source, &target, pairs)?;
        Morphism::new(source, target, map)
    }

    pub fn identity(g: Arc<Graph>) -> Self {
        let map = (0..g.order()).collect();
        Morphism { source: g.clone(), target: g, map }
    }

    pub fn source(&self) -> &Arc<Graph> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Graph> {
        &self.target
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn apply(&self, v: usize) -> usize {
        self.map[v]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if !same_graph(&self.target, &other.source) {
            return Err(Error::ShapeMismatch);
        }
        let map = self.map.iter().map(|&v| other.map[v]).collect();
        Morphism::new(self.source.clone(), other.target.clone(), map)
    }

    pub fn is_identity(&self) -> bool {
        same_graph(&self.source, &self.target) && self.map.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `source -> target` pairs by token, in source order.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.map
            .iter()
            .enumerate()
            .map(|(i, &t)| (self.source.name(i).to_string(), self.target.name(t).to_string()))
            .collect()
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Resolve token pairs into an index map. Errors distinguish unknown tokens,
/// double assignment and non-totality.
pub fn resolve_map<S: AsRef<str>, T: AsRef<str>>(
    source: &Graph,
    target: &Graph,
    pairs: &[(S, T)],
) -> Result<Vec<usize>> {
    let mut map = vec![None; source.order()];
    for (s, t) in pairs {
        let (s, t) = (s.as_ref(), t.as_ref());
        let i = source.require(s)?;
        let j = target.require(t)?;
        if map[i].replace(j).is_some() {
            return Err(Error::DuplicateAssignment(s.to_string()));
        }
    }
    map.into_iter()
        .enumerate()
        .map(|(i, m)| m.ok_or_else(|| Error::NotTotal(source.name(i).to_string())))
        .collect()
}

fn first_broken_edge(source: &Graph, target: &Graph, map: &[usize]) -> Option<(usize, usize)> {
    source
        .edges()
        .find(|&(u, v)| !target.adjacent(map[u], map[v]))
}

/// Edge preservation, loops included. A non-total map is an error rather
/// than `false`.
pub fn check_morphism<S: AsRef<str>, T: AsRef<str>>(
    source: &Graph,
    target: &Graph,
    pairs: &[(S, T)],
) -> Result<bool> {
    let map = resolve_map(source, target, pairs)?;
    Ok(preserves_edges(source, target, &map))
}

pub fn preserves_edges(source: &Graph, target: &Graph, map: &[usize]) -> bool {
    map.len() == source.order() && first_broken_edge(source, target, map).is_none()
}

// ---------------------------------------------------------------------------
// Isomorphism

/// Lexicographically least isomorphism `G -> H` in vertex order, by degree
/// pruning and backtracking. Refuses inputs above `cap` vertices.
pub fn find_isomorphism(g: &Graph, h: &Graph, cap: usize) -> Result<Option<Vec<usize>>> {
    let n = g.order();
    let size = n.max(h.order());
    if size > cap {
        return Err(Error::CapExceeded {
            what: "isomorphism search",
            size: size as u128,
            cap: cap as u128,
        });
    }
    if n != h.order() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let signature = |gr: &Graph, v: usize| (gr.degree(v), gr.is_looped(v));
    let mut gs: Vec<_> = (0..n).map(|v| signature(g, v)).collect();
    let mut hs: Vec<_> = (0..n).map(|v| signature(h, v)).collect();
    gs.sort_unstable();
    hs.sort_unstable();
    if gs != hs {
        return Ok(None);
    }

    fn extend(
        g: &Graph,
        h: &Graph,
        v: usize,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
    ) -> bool {
        if v == g.order() {
            return true;
        }
        for c in 0..h.order() {
            if used[c] || g.degree(v) != h.degree(c) || g.is_looped(v) != h.is_looped(c) {
                continue;
            }
            let consistent = (0..v).all(|u| g.adjacent(u, v) == h.adjacent(map[u], c));
            if !consistent {
                continue;
            }
            map.push(c);
            used[c] = true;
            if extend(g, h, v + 1, map, used) {
                return true;
            }
            map.pop();
            used[c] = false;
        }
        false
    }

    let mut map = Vec::with_capacity(n);
    let mut used = vec![false; n];
    Ok(extend(g, h, 0, &mut map, &mut used).then_some(map))
}

pub fn isomorphic(g: &Graph, h: &Graph, cap: usize) -> Result<bool> {
    Ok(find_isomorphism(g, h, cap)?.is_some())
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::io::parse_graph;

    pub(crate) fn pendant_square() -> Graph {
        parse_graph("vertex a\nvertex b\nvertex c\nvertex d\nvertex e\nedge d a\nedge a c\nedge c e\nedge e d\nedge c b\n").unwrap()
    }

    #[test]
    fn path_graphs() {
        let p0 = path_graph(0, false);
        assert_eq!((p0.order(), p0.edge_count()), (1, 0));
        let p2 = path_graph(2, false);
        assert_eq!(p2.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let i1 = path_graph(1, true);
        assert_eq!(i1.edges().collect::<Vec<_>>(), vec![(0, 0), (0, 1), (1, 1)]);
        assert!(i1.is_reflexive());
    }

    #[test]
    fn k2_squared_is_two_disjoint_edges() {
        let k2 = complete_graph(2, false);
        let p = product(&k2, &k2);
        // enumerate pairs against the product rule directly
        let mut expected = BTreeSet::new();
        for a in 0..2 {
            for b in 0..2 {
                for c in 0..2 {
                    for d in 0..2 {
                        if k2.adjacent(a, c) && k2.adjacent(b, d) {
                            let (x, y) = (a * 2 + b, c * 2 + d);
                            expected.insert((x.min(y), x.max(y)));
                        }
                    }
                }
            }
        }
        assert_eq!(p.edges().collect::<BTreeSet<_>>(), expected);
        assert_eq!(p.edge_count(), 2);
        assert_eq!(p.component_count(), 2);
        let two_k2 = parse_graph("vertex a\nvertex b\nvertex c\nvertex d\nedge a b\nedge c d").unwrap();
        assert!(find_isomorphism(&two_k2, &p, DEFAULT_ISO_CAP).unwrap().is_some());
    }

    #[test]
    fn p2_times_k2_matches_parity_example() {
        let p = product(&path_graph(2, false), &complete_graph(2, false));
        let e = |a: &str, b: &str| p.adjacent(p.require(a).unwrap(), p.require(b).unwrap());
        assert!(e("0|0", "1|1") && e("1|1", "2|0") && e("0|1", "1|0") && e("1|0", "2|1"));
        assert_eq!(p.edge_count(), 4);
        assert!(!e("0|0", "1|0"));
    }

    #[test]
    fn product_with_terminal_is_identity_up_to_names() {
        let g = pendant_square();
        let p = product(&g, &terminal_graph());
        assert_eq!(p.order(), g.order());
        assert_eq!(p.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn loops_in_product_need_both_coordinates() {
        let t = terminal_graph();
        let k2 = complete_graph(2, false);
        let p = product(&t, &k2);
        assert!(!p.is_looped(0) && !p.is_looped(1));
        let p = product(&t, &t);
        assert!(p.is_looped(0));
    }

    #[test]
    fn morphism_checks() {
        let c5 = cycle_graph(5);
        let id: Vec<(String, String)> = (0..5).map(|i| (i.to_string(), i.to_string())).collect();
        assert!(check_morphism(&c5, &c5, &id).unwrap());
        let constant: Vec<(String, String)> = (0..5).map(|i| (i.to_string(), "0".to_string())).collect();
        assert!(!check_morphism(&c5, &c5, &constant).unwrap());
        let partial = &id[..4];
        assert_eq!(check_morphism(&c5, &c5, partial), Err(Error::NotTotal("4".into())));
    }

    #[test]
    fn folds_of_pendant_square() {
        let g = pendant_square();
        let fold = |b_image: &str| {
            let pairs = [("a", "a"), ("b", b_image), ("c", "c"), ("d", "d"), ("e", "e")];
            check_morphism(&g, &g, &pairs).unwrap()
        };
        // N(b) = {c} sits inside N(a) and N(e) but not N(d) = {a, e}
        assert!(fold("a"));
        assert!(fold("e"));
        assert!(!fold("d"));
    }

    #[test]
    fn isomorphism_examples() {
        let k2 = complete_graph(2, false);
        let renamed = parse_graph("vertex p\nvertex q\nedge p q").unwrap();
        assert_eq!(find_isomorphism(&k2, &renamed, 10).unwrap(), Some(vec![0, 1]));
        assert_eq!(find_isomorphism(&cycle_graph(5), &path_graph(4, false), 10).unwrap(), None);
        let big = path_graph(11, false);
        assert!(matches!(find_isomorphism(&big, &big, 10), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn composition_stays_a_morphism() {
        let g = Arc::new(pendant_square());
        let f = Morphism::from_pairs(g.clone(), g.clone(), &[("a", "a"), ("b", "a"), ("c", "c"), ("d", "d"), ("e", "e")]).unwrap();
        let h = Morphism::from_pairs(g.clone(), g.clone(), &[("a", "e"), ("b", "b"), ("c", "c"), ("d", "d"), ("e", "e")]).unwrap();
        let fh = f.then(&h).unwrap();
        assert!(preserves_edges(&g, &g, fh.map()));
    }
}
