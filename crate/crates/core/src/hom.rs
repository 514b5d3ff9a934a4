//! Exponential graphs, the 2-skeleton of `Hom(G, H)`, edge-path groups and
//! the looped fundamental group, plus their desk-scale comparison.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::groupoid::{
    closed_four_walks, groupoid_relators, AbelianInvariants, Generator, GeneratorSource, Letter, Presentation,
    SpanningForest, Word, WordMap,
};
use crate::homotopy::{walks_homotopic, Verdict};
use crate::walk::Walk;

pub const DEFAULT_HOM_CAP: usize = 100_000;
const ORACLE_STATES: usize = 20_000;
const ORACLE_SAMPLES: usize = 40;

fn cap_error(what: &'static str, size: u128, cap: usize) -> Error {
    Error::CapExceeded { what, size, cap: cap as u128 }
}

fn function_count(g: &Graph, h: &Graph) -> Option<u128> {
    (h.order() as u128).checked_pow(g.order() as u32)
}

/// Token of a set map `V(G) -> V(H)`: images in `G`'s vertex order, joined
/// by `|` unless every token of `H` is a single character.
pub fn function_token(h: &Graph, f: &[usize]) -> String {
    if f.is_empty() {
        return "empty".to_string();
    }
    let single = h.names().iter().all(|v| v.as_str().len() == 1);
    let parts: Vec<&str> = f.iter().map(|&y| h.name(y)).collect();
    parts.join(if single { "" } else { "|" })
}

fn function_index(f: &[usize], m: usize) -> usize {
    f.iter().fold(0, |acc, &y| acc * m + y)
}

fn function_at(mut idx: usize, n: usize, m: usize) -> Vec<usize> {
    let mut f = vec![0; n];
    for slot in f.iter_mut().rev() {
        *slot = idx % m;
        idx /= m;
    }
    f
}

/// `H^G`: all set maps, `f ~ g` iff `x ~ y` implies `f(x) ~ g(y)`. Looped
/// vertices are exactly the graph morphisms.
pub fn exponential_graph(g: &Graph, h: &Graph, cap: usize) -> Result<Graph> {
    let total = function_count(g, h).filter(|&t| t <= cap as u128).ok_or_else(|| {
        cap_error("exponential graph", function_count(g, h).unwrap_or(u128::MAX), cap)
    })? as usize;
    let (n, m) = (g.order(), h.order());
    let mut b = GraphBuilder::with_capacity(total);
    for idx in 0..total {
        b.vertex(&function_token(h, &function_at(idx, n, m)))?;
    }
    let all: Vec<usize> = (0..m).collect();
    for idx in 0..total {
        let f = function_at(idx, n, m);
        // admissible images of each y: common neighbours of f over N(y)
        let allowed: Vec<Vec<usize>> = (0..n)
            .map(|y| {
                g.neighbors(y).iter().fold(all.clone(), |acc, &x| {
                    acc.into_iter().filter(|&z| h.adjacent(f[x], z)).collect()
                })
            })
            .collect();
        if allowed.iter().any(Vec::is_empty) {
            continue;
        }
        let mut pick = vec![0usize; n];
        'odometer: loop {
            let other: Vec<usize> = (0..n).map(|y| allowed[y][pick[y]]).collect();
            let j = function_index(&other, m);
            if j >= idx {
                b.edge_by_index(idx, j);
            }
            for k in (0..n).rev() {
                pick[k] += 1;
                if pick[k] < allowed[k].len() {
                    continue 'odometer;
                }
                pick[k] = 0;
            }
            break;
        }
    }
    Ok(b.build())
}

/// All graph morphisms `G -> H` in lexicographic order.
pub fn homomorphisms(g: &Graph, h: &Graph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let cells = enumerate_multihoms(g, h, 0, cap)?;
    Ok(cells.into_iter().map(|c| c.into_iter().map(|s| s[0]).collect()).collect())
}

/// Set-valued assignment with `η(x) × η(y) ⊆ E(H)` along every edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multihom {
    pub assignment: Vec<Vec<usize>>,
}

impl Multihom {
    /// Sum of `|η(x)| - 1`.
    pub fn dimension(&self) -> usize {
        self.assignment.iter().map(|s| s.len() - 1).sum()
    }

    pub fn render(&self, h: &Graph) -> String {
        let parts: Vec<String> = self
            .assignment
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    h.name(s[0]).to_string()
                } else {
                    let names: Vec<&str> = s.iter().map(|&y| h.name(y)).collect();
                    format!("{{{}}}", names.join(","))
                }
            })
            .collect();
        format!("({})", parts.join(" "))
    }

    pub fn is_valid(&self, g: &Graph, h: &Graph) -> bool {
        self.assignment.len() == g.order()
            && self.assignment.iter().all(|s| !s.is_empty())
            && g.edges().all(|(x, y)| {
                self.assignment[x].iter().all(|&a| self.assignment[y].iter().all(|&b| h.adjacent(a, b)))
            })
    }
}

fn subsets_up_to(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (0..m).map(|a| vec![a]).collect();
    if k >= 1 {
        for a in 0..m {
            for b in a + 1..m {
                out.push(vec![a, b]);
                if k >= 2 {
                    for c in b + 1..m {
                        out.push(vec![a, b, c]);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Multihoms of dimension at most `budget`, in lexicographic order.
fn enumerate_multihoms(g: &Graph, h: &Graph, budget: usize, cap: usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = g.order();
    let subsets = subsets_up_to(h.order(), budget);
    let mut out = Vec::new();
    let mut cur: Vec<Vec<usize>> = Vec::with_capacity(n);
    fn fits(g: &Graph, h: &Graph, cur: &[Vec<usize>], x: usize, s: &[usize]) -> bool {
        g.neighbors(x).iter().all(|&y| {
            let other: &[usize] = if y == x {
                s
            } else if y < cur.len() {
                &cur[y]
            } else {
                return true;
            };
            s.iter().all(|&a| other.iter().all(|&b| h.adjacent(a, b)))
        })
    }
    #[allow(clippy::too_many_arguments)]
    fn go(
        g: &Graph,
        h: &Graph,
        subsets: &[Vec<usize>],
        budget: usize,
        cap: usize,
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) -> Result<()> {
        let x = cur.len();
        if x == g.order() {
            if out.len() >= cap {
                return Err(cap_error("hom complex cells", out.len() as u128 + 1, cap));
            }
            out.push(cur.clone());
            return Ok(());
        }
        for s in subsets {
            if s.len() - 1 > budget || !fits(g, h, cur, x, s) {
                continue;
            }
            cur.push(s.clone());
            go(g, h, subsets, budget - (s.len() - 1), cap, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    go(g, h, &subsets, budget, cap, &mut cur, &mut out)?;
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CellShape {
    /// One tripleton; boundary is a triangle.
    Triangle,
    /// Two doubletons; boundary is a square.
    Square,
}

#[derive(Debug, Clone)]
pub struct Complex2 {
    pub cells0: Vec<Multihom>,
    pub cells1: Vec<Multihom>,
    pub cells2: Vec<Multihom>,
    /// Each 1-cell runs from the face with the smaller element to the one
    /// with the larger.
    pub edges: Vec<(usize, usize)>,
    pub shapes: Vec<CellShape>,
    /// Boundary of each 2-cell as a word in 1-cells.
    pub boundaries: Vec<Vec<(usize, i8)>>,
}

impl Complex2 {
    /// Component label of each 0-cell in the 1-skeleton.
    pub fn components(&self) -> Vec<usize> {
        let n = self.cells0.len();
        let mut adj = vec![Vec::new(); n];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for s in 0..n {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
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

    pub fn to_json(&self, h: &Graph) -> serde_json::Value {
        serde_json::json!({
            "cells0": self.cells0.len(),
            "cells1": self.cells1.len(),
            "cells2": self.cells2.len(),
            "components": self.component_count(),
            "edges": self.edges.iter().enumerate().map(|(i, &(a, b))| serde_json::json!({
                "cell": self.cells1[i].render(h),
                "from": self.cells0[a].render(h),
                "to": self.cells0[b].render(h),
            })).collect::<Vec<_>>(),
            "faces": self.boundaries.iter().enumerate().map(|(i, word)| serde_json::json!({
                "cell": self.cells2[i].render(h),
                "shape": self.shapes[i],
                "boundary": word.iter().map(|&(e, s)| (e as i64 + 1) * s as i64).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, h: &Graph) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "cells: {} 0-cells, {} 1-cells, {} 2-cells; {} components",
            self.cells0.len(),
            self.cells1.len(),
            self.cells2.len(),
            self.component_count()
        );
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            let _ = writeln!(
                out,
                "  1-cell {}: {} -> {}",
                self.cells1[i].render(h),
                self.cells0[a].render(h),
                self.cells0[b].render(h)
            );
        }
        for (i, word) in self.boundaries.iter().enumerate() {
            let letters: Vec<String> = word
                .iter()
                .map(|&(e, s)| format!("c{}{}", e + 1, if s < 0 { "^-1" } else { "" }))
                .collect();
            let shape = match self.shapes[i] {
                CellShape::Triangle => "triangle",
                CellShape::Square => "square",
            };
            let _ = writeln!(out, "  2-cell {} ({shape}): {}", self.cells2[i].render(h), letters.join(" "));
        }
        out
    }
}

pub fn hom_complex_2skeleton(g: &Graph, h: &Graph, cap: usize) -> Result<Complex2> {
    let raw = enumerate_multihoms(g, h, 2, cap)?;
    let mut cells: [Vec<Multihom>; 3] = Default::default();
    for a in raw {
        let m = Multihom { assignment: a };
        let d = m.dimension();
        // two extra elements at one vertex is a tripleton (dimension 2), two
        // doubletons likewise; both land in cells[2]
        cells[d].push(m);
    }
    let [cells0, cells1, cells2] = cells;
    let index0: HashMap<&Multihom, usize> = cells0.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let index1: HashMap<&Multihom, usize> = cells1.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let with = |m: &Multihom, x: usize, s: Vec<usize>| {
        let mut a = m.assignment.clone();
        a[x] = s;
        Multihom { assignment: a }
    };
    let mut edges = Vec::with_capacity(cells1.len());
    for c in &cells1 {
        let x = c.assignment.iter().position(|s| s.len() == 2).expect("one doubleton");
        let (p, q) = (c.assignment[x][0], c.assignment[x][1]);
        edges.push((index0[&with(c, x, vec![p])], index0[&with(c, x, vec![q])]));
    }
    let mut shapes = Vec::with_capacity(cells2.len());
    let mut boundaries = Vec::with_capacity(cells2.len());
    for c in &cells2 {
        let big: Vec<usize> = (0..c.assignment.len()).filter(|&x| c.assignment[x].len() > 1).collect();
        if big.len() == 1 {
            let x = big[0];
            let (p, q, r) = (c.assignment[x][0], c.assignment[x][1], c.assignment[x][2]);
            let e = |a: usize, b: usize| index1[&with(c, x, vec![a, b])];
            shapes.push(CellShape::Triangle);
            boundaries.push(vec![(e(p, q), 1), (e(q, r), 1), (e(p, r), -1)]);
        } else {
            let (x, y) = (big[0], big[1]);
            let (p, q) = (c.assignment[x][0], c.assignment[x][1]);
            let (s, t) = (c.assignment[y][0], c.assignment[y][1]);
            let e = |sx: Vec<usize>, sy: Vec<usize>| index1[&with(&with(c, x, sx), y, sy)];
            shapes.push(CellShape::Square);
            // (p,s) -> (q,s) -> (q,t) -> (p,t) -> (p,s)
            boundaries.push(vec![
                (e(vec![p, q], vec![s]), 1),
                (e(vec![q], vec![s, t]), 1),
                (e(vec![p, q], vec![t]), -1),
                (e(vec![p], vec![s, t]), -1),
            ]);
        }
    }
    Ok(Complex2 { cells0, cells1, cells2, edges, shapes, boundaries })
}

/// Edge-path group of the component of `base`: generators are the 1-cells
/// off a BFS spanning tree, relators the 2-cell boundaries.
pub fn edge_path_presentation(c: &Complex2, base: usize, h: &Graph) -> Result<Presentation> {
    if base >= c.cells0.len() {
        return Err(Error::Unsupported(format!("{base} is not a 0-cell")));
    }
    let n = c.cells0.len();
    let mut incident = vec![Vec::new(); n];
    for (i, &(a, b)) in c.edges.iter().enumerate() {
        incident[a].push((i, b));
        incident[b].push((i, a));
    }
    let mut seen = vec![false; n];
    let mut tree = vec![false; c.edges.len()];
    seen[base] = true;
    let mut queue = VecDeque::from([base]);
    while let Some(u) = queue.pop_front() {
        for &(e, w) in &incident[u] {
            if !seen[w] {
                seen[w] = true;
                tree[e] = true;
                queue.push_back(w);
            }
        }
    }
    let mut gen_of = HashMap::new();
    let mut generators = Vec::new();
    for (i, &(a, _)) in c.edges.iter().enumerate() {
        if seen[a] && !tree[i] {
            gen_of.insert(i, generators.len());
            generators.push(Generator { label: format!("c{}", i + 1), source: GeneratorSource::Cell { index: i } });
        }
    }
    let mut relators: Vec<Word> = Vec::new();
    for word in &c.boundaries {
        let (first, _) = word[0];
        if !seen[c.edges[first].0] {
            continue;
        }
        let w = Word::from_letters(word.iter().filter_map(|&(e, s)| gen_of.get(&e).map(|&g| Letter::new(g, s))));
        if !w.is_empty() && !relators.contains(&w) {
            relators.push(w);
        }
    }
    Ok(Presentation { generators, relators, basepoint: c.cells0[base].render(h) })
}

/// Presentation of the looped fundamental group at `v`, on the looped
/// subgraph: loops are killed and only diamonds with `x ~ y` relate.
pub fn looped_presentation(g: &Graph, v: &str) -> Result<Presentation> {
    let x = g.require(v)?;
    if !g.is_looped(x) {
        return Err(Error::Unlooped(v.to_string()));
    }
    let (sub, keep) = g.looped_subgraph();
    let base = keep.iter().position(|&k| k == x).expect("looped vertex kept");
    let map = WordMap::new(&sub, SpanningForest::bfs(&sub, base), true);
    Ok(Presentation {
        generators: map.generators(&sub),
        relators: groupoid_relators(&sub, &map),
        basepoint: v.to_string(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ComponentMatch {
    pub representative: String,
    pub looped: AbelianInvariants,
    pub complex: AbelianInvariants,
    pub matches: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomComparison {
    pub exponential_vertices: usize,
    pub looped_vertices: usize,
    pub cells: [usize; 3],
    /// The 0-cells are exactly the looped vertices.
    pub zero_cells_match: bool,
    pub looped_components: usize,
    pub complex_components: usize,
    pub component_bijection: bool,
    pub components: Vec<ComponentMatch>,
    pub oracle_checked: usize,
    pub oracle_failures: Vec<String>,
}

impl HomComparison {
    pub fn passed(&self) -> bool {
        self.zero_cells_match
            && self.component_bijection
            && self.components.iter().all(|c| c.matches)
            && self.oracle_failures.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "exponential graph: {} vertices, {} looped; complex: {} / {} / {} cells",
            self.exponential_vertices, self.looped_vertices, self.cells[0], self.cells[1], self.cells[2]
        );
        let _ = writeln!(out, "0-cells = looped vertices: {}", self.zero_cells_match);
        let _ = writeln!(
            out,
            "components: {} looped, {} in the complex; bijection: {}",
            self.looped_components, self.complex_components, self.component_bijection
        );
        for c in &self.components {
            let _ = writeln!(
                out,
                "  {}: looped [{}] complex [{}] {}",
                c.representative,
                c.looped,
                c.complex,
                if c.matches { "match" } else { "MISMATCH" }
            );
        }
        let _ = writeln!(out, "relator oracle: {} checked, {} failures", self.oracle_checked, self.oracle_failures.len());
        for f in &self.oracle_failures {
            let _ = writeln!(out, "  {f}");
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

pub fn compare_hom_groups(g: &Graph, h: &Graph, max_len: usize, cap: usize) -> Result<HomComparison> {
    let k = Arc::new(exponential_graph(g, h, cap)?);
    let delta = hom_complex_2skeleton(g, h, cap)?;
    let m = h.order();
    let looped: Vec<usize> = (0..k.order()).filter(|&f| k.is_looped(f)).collect();
    let cell_vertices: Vec<usize> = delta
        .cells0
        .iter()
        .map(|c| function_index(&c.assignment.iter().map(|s| s[0]).collect::<Vec<_>>(), m))
        .collect();
    let zero_cells_match = {
        let a: BTreeSet<usize> = looped.iter().copied().collect();
        let b: BTreeSet<usize> = cell_vertices.iter().copied().collect();
        a == b && b.len() == cell_vertices.len()
    };

    let (sub, keep) = k.looped_subgraph();
    let sub_comp = sub.components();
    let mut comp_of_vertex = HashMap::new();
    for (i, &v) in keep.iter().enumerate() {
        comp_of_vertex.insert(v, sub_comp[i]);
    }
    let looped_components = sub.component_count();
    let cc = delta.components();
    let complex_components = delta.component_count();
    // Δ component -> set of looped components it touches, and back
    let mut forward: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); complex_components];
    let mut backward: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); looped_components];
    for (i, &v) in cell_vertices.iter().enumerate() {
        if let Some(&lc) = comp_of_vertex.get(&v) {
            forward[cc[i]].insert(lc);
            backward[lc].insert(cc[i]);
        }
    }
    let component_bijection = zero_cells_match
        && looped_components == complex_components
        && forward.iter().all(|s| s.len() == 1)
        && backward.iter().all(|s| s.len() == 1);

    let mut components = Vec::new();
    let mut oracle_checked = 0;
    let mut oracle_failures = Vec::new();
    for c in 0..complex_components {
        let rep = cc.iter().position(|&x| x == c).expect("component has a 0-cell");
        let token = k.name(cell_vertices[rep]).to_string();
        let looped_inv = if k.is_looped(cell_vertices[rep]) {
            looped_presentation(&k, &token)?.abelian_invariants()
        } else {
            AbelianInvariants::trivial()
        };
        let complex_inv = edge_path_presentation(&delta, rep, h)?.abelian_invariants();
        components.push(ComponentMatch {
            representative: token.clone(),
            matches: looped_inv == complex_inv,
            looped: looped_inv,
            complex: complex_inv,
        });

        // every looped relator must be null under the looped search
        if !k.is_looped(cell_vertices[rep]) {
            continue;
        }
        let base = keep.iter().position(|&v| v == cell_vertices[rep]).expect("looped");
        let comp_vertices: Vec<usize> = (0..sub.order()).filter(|&v| sub_comp[v] == sub_comp[base]).collect();
        let sub = Arc::new(sub.clone());
        let map = WordMap::new(&sub, SpanningForest::bfs(&sub, base), true);
        let mut sampled = 0;
        for w in closed_four_walks(&sub, &comp_vertices, true) {
            if sampled >= ORACLE_SAMPLES {
                break;
            }
            if map.word(&w).is_empty() {
                continue;
            }
            sampled += 1;
            oracle_checked += 1;
            let walk = Walk::new(sub.clone(), w.to_vec())?;
            let d = walks_homotopic(&walk, &Walk::trivial(sub.clone(), w[0]), true, max_len.max(8), ORACLE_STATES)?;
            if d.verdict != Verdict::Equal {
                oracle_failures.push(format!("({walk}): {}", d.verdict));
            }
        }
    }

    Ok(HomComparison {
        exponential_vertices: k.order(),
        looped_vertices: looped.len(),
        cells: [delta.cells0.len(), delta.cells1.len(), delta.cells2.len()],
        zero_cells_match,
        looped_components,
        complex_components,
        component_bijection,
        components,
        oracle_checked,
        oracle_failures,
    })
}
