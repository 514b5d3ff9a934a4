use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use super::smith::{smith_normal_form, SmithForm};
use super::word::{Letter, Word};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::walk::Walk;

/// A spanning forest, grown by BFS in vertex order. Loops are never tree
/// edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    base: usize,
    component: Vec<usize>,
    roots: Vec<usize>,
    tree: HashSet<(usize, usize)>,
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

impl SpanningForest {
    /// BFS from `base` first, then from the least unvisited vertex of each
    /// remaining component.
    pub fn bfs(g: &Graph, base: usize) -> SpanningForest {
        let n = g.order();
        let mut component = vec![usize::MAX; n];
        let mut roots = Vec::new();
        let mut tree = HashSet::new();
        let starts = std::iter::once(base).chain(0..n);
        for s in starts {
            if component[s] != usize::MAX {
                continue;
            }
            let label = roots.len();
            roots.push(s);
            component[s] = label;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in g.neighbors(u) {
                    if component[w] == usize::MAX {
                        component[w] = label;
                        tree.insert(key(u, w));
                        queue.push_back(w);
                    }
                }
            }
        }
        SpanningForest { base, component, roots, tree }
    }

    /// Forest from an explicit tree-edge set. Fails unless the edges are
    /// acyclic, loop free, present in `g`, and span every component.
    pub fn from_tree_edges(g: &Graph, base: usize, edges: &[(usize, usize)]) -> Result<SpanningForest> {
        let n = g.order();
        let mut uf = UnionFind::new(n);
        let mut tree = HashSet::new();
        for &(u, v) in edges {
            if u == v || !g.adjacent(u, v) {
                return Err(Error::Unsupported(format!(
                    "{}~{} is not a tree edge candidate",
                    g.name(u),
                    g.name(v)
                )));
            }
            if !uf.union(u, v) {
                return Err(Error::Unsupported("tree edges contain a cycle".into()));
            }
            tree.insert(key(u, v));
        }
        let graph_comp = g.components();
        let mut roots = Vec::new();
        let mut component = vec![usize::MAX; n];
        let mut label_of_root = HashMap::new();
        for s in std::iter::once(base).chain(0..n) {
            let r = uf.find(s);
            let label = *label_of_root.entry(r).or_insert_with(|| {
                roots.push(s);
                roots.len() - 1
            });
            component[s] = label;
        }
        // spanning: forest components coincide with graph components
        for u in 0..n {
            for &w in g.neighbors(u) {
                if graph_comp[u] == graph_comp[w] && component[u] != component[w] {
                    return Err(Error::Unsupported("tree edges do not span".into()));
                }
            }
        }
        Ok(SpanningForest { base, component, roots, tree })
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.tree.contains(&key(u, v))
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn root(&self, v: usize) -> usize {
        self.roots[self.component[v]]
    }

    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.tree.iter().copied().collect();
        e.sort_unstable();
        e
    }

    pub fn component_vertices(&self, v: usize) -> Vec<usize> {
        let c = self.component[v];
        (0..self.component.len()).filter(|&u| self.component[u] == c).collect()
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GeneratorSource {
    /// Non-tree edge, positively oriented from `from` to `to`.
    Edge { from: String, to: String },
    /// Loop edge; order two in the unlooped groupoid.
    Loop { vertex: String },
    /// A 1-cell of a cell complex.
    Cell { index: usize },
    /// Extra loop through an additional component of an amalgamation
    /// intersection.
    Connector { vertex: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Generator {
    pub label: String,
    pub source: GeneratorSource,
}

impl Generator {
    pub fn is_loop(&self) -> bool {
        matches!(self.source, GeneratorSource::Loop { .. })
    }
}

/// A finite group presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<Generator>,
    pub relators: Vec<Word>,
    pub basepoint: String,
}

impl Presentation {
    pub fn labels(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.label.clone()).collect()
    }

    pub fn relator_matrix(&self) -> Vec<Vec<BigInt>> {
        let n = self.generators.len();
        self.relators
            .iter()
            .map(|r| r.exponent_sums(n).into_iter().map(BigInt::from).collect())
            .collect()
    }

    pub fn abelianization(&self) -> Abelianization {
        let n = self.generators.len();
        Abelianization::new(smith_normal_form(&self.relator_matrix(), n))
    }

    pub fn abelian_invariants(&self) -> AbelianInvariants {
        self.abelianization().invariants()
    }

    pub fn render(&self) -> String {
        let labels = self.labels();
        let mut out = format!("basepoint: {}\n", self.basepoint);
        out.push_str(&format!("generators ({}):\n", self.generators.len()));
        for g in &self.generators {
            let origin = match &g.source {
                GeneratorSource::Edge { from, to } => format!("edge {from}~{to}"),
                GeneratorSource::Loop { vertex } => format!("loop at {vertex}"),
                GeneratorSource::Cell { index } => format!("1-cell {index}"),
                GeneratorSource::Connector { vertex } => format!("connector through {vertex}"),
            };
            out.push_str(&format!("  {} = {}\n", g.label, origin));
        }
        out.push_str(&format!("relators ({}):\n", self.relators.len()));
        for r in &self.relators {
            out.push_str(&format!("  {}\n", r.render(&labels)));
        }
        out.push_str(&format!("abelian invariants: {}\n", self.abelian_invariants()));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let inv = self.abelian_invariants();
        serde_json::json!({
            "basepoint": self.basepoint,
            "generators": self.generators,
            "relators": self.relators.iter().map(|r| r.signed_indices()).collect::<Vec<_>>(),
            "rank": inv.rank,
            "torsion": inv.torsion_json(),
        })
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Rank and torsion coefficients of an abelian group, torsion in
/// divisibility order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianInvariants {
    pub fn new(rank: usize, torsion: &[u64]) -> Self {
        AbelianInvariants { rank, torsion: torsion.iter().map(|&t| BigInt::from(t)).collect() }
    }

    pub fn trivial() -> Self {
        AbelianInvariants::new(0, &[])
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    fn torsion_json(&self) -> Vec<serde_json::Value> {
        self.torsion
            .iter()
            .map(|t| match t.to_u64() {
                Some(x) => serde_json::Value::from(x),
                None => serde_json::Value::from(t.to_string()),
            })
            .collect()
    }
}

impl Serialize for AbelianInvariants {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("AbelianInvariants", 2)?;
        st.serialize_field("rank", &self.rank)?;
        st.serialize_field("torsion", &self.torsion_json())?;
        st.end()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        write!(f, "rank {}, torsion [{}]", self.rank, t.join(", "))
    }
}

/// The quotient map `Z^n -> Z^n / rowspace(R)` in Smith coordinates.
#[derive(Debug, Clone)]
pub struct Abelianization {
    smith: SmithForm,
}

impl Abelianization {
    fn new(smith: SmithForm) -> Self {
        Abelianization { smith }
    }

    pub fn invariants(&self) -> AbelianInvariants {
        let rank = self.smith.diagonal.iter().filter(|d| d.is_zero()).count();
        let torsion = self
            .smith
            .diagonal
            .iter()
            .filter(|d| !d.is_zero() && !d.is_one())
            .cloned()
            .collect();
        AbelianInvariants { rank, torsion }
    }

    /// Coordinates of the word's image: free coordinates as integers,
    /// torsion coordinates reduced into `0..d`, trivial coordinates zero.
    pub fn image(&self, word: &Word) -> Vec<BigInt> {
        let n = self.smith.diagonal.len();
        let x = word.exponent_sums(n);
        (0..n)
            .map(|j| {
                let y: BigInt = (0..n)
                    .filter(|&k| x[k] != 0)
                    .map(|k| BigInt::from(x[k]) * &self.smith.column_transform[k][j])
                    .sum();
                let d = &self.smith.diagonal[j];
                if d.is_zero() {
                    y
                } else {
                    y.mod_floor(d)
                }
            })
            .collect()
    }
}

pub fn abelian_invariants(p: &Presentation) -> AbelianInvariants {
    p.abelian_invariants()
}

/// Translation of walks into words relative to a spanning forest.
#[derive(Debug, Clone)]
pub(crate) struct WordMap {
    component: usize,
    forest: SpanningForest,
    generator_of: HashMap<(usize, usize), usize>,
    /// Looped groupoid: loop edges are killed, not generators.
    kill_loops: bool,
}

impl WordMap {
    pub(crate) fn new(g: &Graph, forest: SpanningForest, kill_loops: bool) -> Self {
        let component = forest.component_of(forest.base());
        let mut edges: Vec<(usize, usize)> = g
            .edges()
            .filter(|&(u, v)| forest.component_of(u) == component && !forest.contains(u, v))
            .filter(|&(u, v)| !(kill_loops && u == v))
            .collect();
        edges.sort_unstable();
        let generator_of = edges.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        WordMap { component, forest, generator_of, kill_loops }
    }

    pub(crate) fn forest(&self) -> &SpanningForest {
        &self.forest
    }

    pub(crate) fn in_component(&self, v: usize) -> bool {
        self.forest.component_of(v) == self.component
    }

    pub(crate) fn generator_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.generator_of.iter().map(|(&e, &i)| (i, e)).collect();
        e.sort_unstable();
        e.into_iter().map(|(_, e)| e).collect()
    }

    pub(crate) fn generator_count(&self) -> usize {
        self.generator_of.len()
    }

    pub(crate) fn letter(&self, u: usize, v: usize) -> Option<Letter> {
        if u == v && self.kill_loops {
            return None;
        }
        let &gen = self.generator_of.get(&key(u, v))?;
        Some(Letter::new(gen, if u <= v { 1 } else { -1 }))
    }

    /// Caller guarantees `seq` is a walk inside the component.
    pub(crate) fn word(&self, seq: &[usize]) -> Word {
        Word::from_letters(seq.windows(2).filter_map(|w| self.letter(w[0], w[1])))
    }

    pub(crate) fn generators(&self, g: &Graph) -> Vec<Generator> {
        self.generator_edges()
            .into_iter()
            .enumerate()
            .map(|(i, (u, v))| Generator {
                label: format!("e{}", i + 1),
                source: if u == v {
                    GeneratorSource::Loop { vertex: g.name(u).to_string() }
                } else {
                    GeneratorSource::Edge { from: g.name(u).to_string(), to: g.name(v).to_string() }
                },
            })
            .collect()
    }
}

/// Word of a walk: forest edges vanish, other edges contribute their
/// generator signed by direction; loops always enter with exponent +1.
pub fn word_of_walk(g: &Graph, forest: &SpanningForest, w: &Walk) -> Result<Word> {
    let map = WordMap::new(g, forest.clone(), false);
    if let Some(&v) = w.vertices().iter().find(|&&v| !map.in_component(v)) {
        return Err(Error::OutsideComponent(g.name(v).to_string()));
    }
    Ok(map.word(w.vertices()))
}

/// All closed 4-walks `(a x b y a)` within the component of `base`. With
/// `require_diagonal`, additionally `x ~ y`.
pub(crate) fn closed_four_walks(
    g: &Graph,
    component: &[usize],
    require_diagonal: bool,
) -> Vec<[usize; 5]> {
    let mut out = Vec::new();
    for &a in component {
        for &x in g.neighbors(a) {
            for &b in g.neighbors(x) {
                for &y in g.neighbors(b) {
                    if g.adjacent(y, a) && (!require_diagonal || g.adjacent(x, y)) {
                        out.push([a, x, b, y, a]);
                    }
                }
            }
        }
    }
    out
}

fn dedup_relators(words: impl IntoIterator<Item = Word>) -> Vec<Word> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for w in words {
        if !w.is_empty() && seen.insert(w.cyclic_key()) {
            out.push(w);
        }
    }
    out
}

fn loop_relators(map: &WordMap) -> Vec<Word> {
    map.generator_edges()
        .iter()
        .enumerate()
        .filter(|(_, (u, v))| u == v)
        .map(|(i, _)| Word::from_letters([Letter::new(i, 1), Letter::new(i, 1)]))
        .collect()
}

/// Words of every closed 4-walk in the component of `v`, deduplicated.
pub fn diamond_relators(g: &Graph, forest: &SpanningForest, v: usize) -> Vec<Word> {
    let map = WordMap::new(g, SpanningForest { base: v, ..forest.clone() }, false);
    diamond_words(g, &map, false)
}

pub(crate) fn diamond_words(g: &Graph, map: &WordMap, require_diagonal: bool) -> Vec<Word> {
    let comp = map.forest().component_vertices(map.forest().base());
    dedup_relators(
        // degenerate walks only give conjugates of loop squares
        closed_four_walks(g, &comp, require_diagonal)
            .iter()
            .filter(|w| w[0] != w[2] && w[1] != w[3])
            .map(|w| map.word(w)),
    )
}

/// The walk group at `v`: free on non-forest edges, with loop generators
/// of order two.
pub fn walk_group_presentation(g: &Graph, v: &str) -> Result<Presentation> {
    let base = g.require(v)?;
    let map = WordMap::new(g, SpanningForest::bfs(g, base), false);
    Ok(Presentation {
        generators: map.generators(g),
        relators: loop_relators(&map),
        basepoint: v.to_string(),
    })
}

/// The fundamental group at `v`: the walk group modulo all diamonds.
pub fn fundamental_group_presentation(g: &Graph, v: &str) -> Result<Presentation> {
    let base = g.require(v)?;
    let map = WordMap::new(g, SpanningForest::bfs(g, base), false);
    Ok(presentation_from_map(g, &map, v))
}

fn presentation_from_map(g: &Graph, map: &WordMap, v: &str) -> Presentation {
    Presentation {
        generators: map.generators(g),
        relators: groupoid_relators(g, map),
        basepoint: v.to_string(),
    }
}

/// Relators of the groupoid the map was built for: loop squares and all
/// diamonds, or in looped mode only diamonds with `x ~ y`.
pub(crate) fn groupoid_relators(g: &Graph, map: &WordMap) -> Vec<Word> {
    let mut relators = if map.kill_loops { Vec::new() } else { loop_relators(map) };
    relators.extend(diamond_words(g, map, map.kill_loops));
    dedup_relators(relators)
}

pub(crate) fn abelianize(ngens: usize, relators: &[Word]) -> Abelianization {
    let rows: Vec<Vec<BigInt>> = relators
        .iter()
        .map(|r| r.exponent_sums(ngens).into_iter().map(BigInt::from).collect())
        .collect();
    Abelianization::new(smith_normal_form(&rows, ngens))
}

pub(crate) fn format_image(image: &[BigInt]) -> String {
    let parts: Vec<String> = image.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, terminal_graph, wheel_graph};
    use std::sync::Arc;

    #[test]
    fn walk_groups() {
        let c5 = cycle_graph(5);
        let p = walk_group_presentation(&c5, "0").unwrap();
        assert_eq!(p.generators.len(), 1);
        assert!(p.relators.is_empty());
        assert_eq!(p.abelian_invariants(), AbelianInvariants::new(1, &[]));

        let t = terminal_graph();
        let p = walk_group_presentation(&t, "v").unwrap();
        assert_eq!(p.generators.len(), 1);
        assert!(p.generators[0].is_loop());
        assert_eq!(p.relators, vec![Word::from_letters([Letter::new(0, 1), Letter::new(0, 1)])]);
        assert_eq!(p.abelian_invariants(), AbelianInvariants::new(0, &[2]));

        let p3 = path_graph(3, false);
        let p = walk_group_presentation(&p3, "0").unwrap();
        assert!(p.generators.is_empty());
        assert!(p.abelian_invariants().is_trivial());

        assert_eq!(walk_group_presentation(&p3, "9"), Err(Error::UnknownVertex("9".into())));
    }

    #[test]
    fn words_on_c5() {
        let c5 = Arc::new(cycle_graph(5));
        let forest = SpanningForest::bfs(&c5, 0);
        // BFS from 0 in vertex order keeps 0-1, 0-4, 1-2, 4-3; the odd edge out is 2-3
        assert!(!forest.contains(2, 3));
        let cw = Walk::parse(c5.clone(), "0,1,2,3,4,0").unwrap();
        let ccw = cw.invert();
        let wa = word_of_walk(&c5, &forest, &cw).unwrap();
        let wb = word_of_walk(&c5, &forest, &ccw).unwrap();
        assert_eq!(wa.signed_indices(), vec![1]);
        assert_eq!(wb, wa.inverse());
        let tree_only = Walk::parse(c5.clone(), "3,4,0,1,0").unwrap();
        assert!(word_of_walk(&c5, &forest, &tree_only).unwrap().is_empty());

        // with the forest 0-1-2-3-4 the non-forest edge is 4-0
        let path_forest = SpanningForest::from_tree_edges(&c5, 0, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let w = word_of_walk(&c5, &path_forest, &cw).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w.letters()[0].exponent, -1); // traversed 4 -> 0 against the 0 -> 4 orientation
    }

    #[test]
    fn loop_word_in_terminal_graph() {
        let t = Arc::new(terminal_graph());
        let f = SpanningForest::bfs(&t, 0);
        let w = word_of_walk(&t, &f, &Walk::parse(t.clone(), "v,v").unwrap()).unwrap();
        assert_eq!(w.signed_indices(), vec![1]);
        let w = word_of_walk(&t, &f, &Walk::parse(t.clone(), "v,v,v").unwrap()).unwrap();
        assert_eq!(w.signed_indices(), vec![1, 1]);
    }

    #[test]
    fn outside_component_is_an_error() {
        let g = Arc::new(crate::io::parse_graph("vertex a\nvertex b\nvertex c\nvertex d\nedge a b\nedge c d").unwrap());
        let f = SpanningForest::bfs(&g, 0);
        let w = Walk::parse(g.clone(), "c,d").unwrap();
        assert_eq!(word_of_walk(&g, &f, &w), Err(Error::OutsideComponent("c".into())));
    }

    #[test]
    fn diamonds() {
        let c5 = cycle_graph(5);
        assert!(diamond_relators(&c5, &SpanningForest::bfs(&c5, 0), 0).is_empty());

        let k2l = complete_graph(2, true);
        let f = SpanningForest::bfs(&k2l, 0);
        let d = diamond_relators(&k2l, &f, 0);
        // (0 0 1 1 0) gives loop0 * loop1 in generator order e1 = 0~0, e2 = 1~1
        assert!(d.contains(&Word::from_letters([Letter::new(0, 1), Letter::new(1, 1)])));
    }

    #[test]
    fn wheel_diamonds_are_products_of_consecutive_generators() {
        let w = wheel_graph(5);
        let x = w.require("x").unwrap();
        let f = SpanningForest::bfs(&w, x);
        // spokes form the tree; rim edges are the generators
        for r in 0..5 {
            assert!(f.contains(x, r));
        }
        let d = diamond_relators(&w, &f, x);
        let p = fundamental_group_presentation(&w, "x").unwrap();
        let labels = p.labels();
        let rim_gen = |a: &str, b: &str| {
            let (ia, ib) = (w.require(a).unwrap(), w.require(b).unwrap());
            let (lo, hi) = (ia.min(ib), ia.max(ib));
            let idx = p.generators.iter().position(|g| g.source == GeneratorSource::Edge { from: w.name(lo).into(), to: w.name(hi).into() }).unwrap();
            Letter::new(idx, if ia < ib { 1 } else { -1 })
        };
        // (x a b c x) traverses a->b then b->c
        let abc = Word::from_letters([rim_gen("a", "b"), rim_gen("b", "c")]);
        let has = |w: &Word| d.iter().any(|r| r.cyclic_key() == w.cyclic_key());
        assert!(has(&abc), "{:?} not in {:?}", abc.render(&labels), d);
        let eab = Word::from_letters([rim_gen("e", "a"), rim_gen("a", "b")]);
        assert!(has(&eab));
    }

    #[test]
    fn fundamental_groups() {
        let w = wheel_graph(5);
        assert_eq!(fundamental_group_presentation(&w, "x").unwrap().abelian_invariants(), AbelianInvariants::new(0, &[2]));
        let k2 = complete_graph(2, false);
        assert!(fundamental_group_presentation(&k2, "0").unwrap().abelian_invariants().is_trivial());
        let c5 = cycle_graph(5);
        assert_eq!(fundamental_group_presentation(&c5, "0").unwrap().abelian_invariants(), AbelianInvariants::new(1, &[]));
        let t = terminal_graph();
        assert_eq!(fundamental_group_presentation(&t, "v").unwrap().abelian_invariants(), AbelianInvariants::new(0, &[2]));
    }

    #[test]
    fn image_coordinates() {
        let c5 = Arc::new(cycle_graph(5));
        let p = fundamental_group_presentation(&c5, "0").unwrap();
        let ab = p.abelianization();
        let f = SpanningForest::bfs(&c5, 0);
        let cw = word_of_walk(&c5, &f, &Walk::parse(c5.clone(), "0,1,2,3,4,0").unwrap()).unwrap();
        let a = ab.image(&cw);
        let b = ab.image(&cw.inverse());
        assert_eq!(a.len(), 1);
        assert_eq!(&a[0] + &b[0], BigInt::zero());
        assert!(!a[0].is_zero());
    }

    #[test]
    fn forest_validation() {
        let c5 = cycle_graph(5);
        assert!(SpanningForest::from_tree_edges(&c5, 0, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).is_err());
        assert!(SpanningForest::from_tree_edges(&c5, 0, &[(0, 1), (1, 2)]).is_err());
        let t = terminal_graph();
        assert!(SpanningForest::from_tree_edges(&t, 0, &[(0, 0)]).is_err());
    }
}
