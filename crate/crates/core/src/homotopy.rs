//! Spider moves, bounded homotopy decisions with certificates, folds and
//! stiff reduction.

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{same_graph, Graph, Morphism};
use crate::groupoid::{abelianize, format_image, groupoid_relators, Abelianization, SpanningForest, WordMap};
use crate::walk::{apply_site, normalize_seq, prune_sites, Parity, PruneSite, Walk};

pub const DEFAULT_MAX_STATES: usize = 200_000;
/// Extra length granted over the longer input when no bound is given.
pub const DEFAULT_LEN_SLACK: usize = 6;
pub const DEFAULT_MAX_STEPS: usize = 100_000;

/// Change of one image. For walks `position` is an index into the walk, for
/// morphisms it is a source vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SpiderStep {
    pub position: usize,
    pub old_image: usize,
    pub new_image: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Move {
    Spider(SpiderStep),
    /// Delete `seq[i + 1], seq[i + 2]` where `seq[i] == seq[i + 2]`.
    Prune { position: usize },
    /// Insert `via, seq[i]` after index `i`.
    Unprune { position: usize, via: usize },
    /// Delete `seq[i + 1]` where `seq[i] == seq[i + 1]`.
    LoopPrune { position: usize },
    /// Duplicate `seq[i]`.
    LoopUnprune { position: usize },
}

impl Move {
    fn describe(&self, pos_name: impl Fn(usize) -> String, name: impl Fn(usize) -> String) -> String {
        match *self {
            Move::Spider(s) => format!(
                "spider at {}: {} -> {}",
                pos_name(s.position),
                name(s.old_image),
                name(s.new_image)
            ),
            Move::Prune { position } => format!("prune at {position}"),
            Move::Unprune { position, via } => format!("unprune at {position} via {}", name(via)),
            Move::LoopPrune { position } => format!("l-prune at {position}"),
            Move::LoopUnprune { position } => format!("l-unprune at {position}"),
        }
    }

    fn to_json(self, pos_name: impl Fn(usize) -> serde_json::Value, name: impl Fn(usize) -> String) -> serde_json::Value {
        use serde_json::json;
        match self {
            Move::Spider(s) => json!({
                "move": "spider",
                "position": pos_name(s.position),
                "old": name(s.old_image),
                "new": name(s.new_image),
            }),
            Move::Prune { position } => json!({"move": "prune", "position": position}),
            Move::Unprune { position, via } => json!({"move": "unprune", "position": position, "via": name(via)}),
            Move::LoopPrune { position } => json!({"move": "l-prune", "position": position}),
            Move::LoopUnprune { position } => json!({"move": "l-unprune", "position": position}),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Verdict {
    Equal,
    Distinct,
    Unknown,
}

impl Verdict {
    /// CLI exit code.
    pub fn code(self) -> i32 {
        match self {
            Verdict::Equal => 0,
            Verdict::Distinct => 1,
            Verdict::Unknown => 2,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    Endpoints { a: (usize, usize), b: (usize, usize) },
    Parity { a: Parity, b: Parity },
    /// Images in the abelianized fundamental group of the component.
    Abelianization { a: Vec<BigInt>, b: Vec<BigInt> },
    /// One spider-move closure was explored completely without meeting the
    /// other side.
    DisjointClosures { exhausted_side: usize, closure_size: usize },
    /// Images of a connected source lie in different components.
    Components { a: usize, b: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certificate {
    Moves(Vec<Move>),
    Separated(Separation),
    Exhausted {
        max_len: Option<usize>,
        max_states: usize,
        explored: usize,
        /// Every state within the bounds was visited.
        complete: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Certificate,
}

impl Decision {
    fn equal(moves: Vec<Move>) -> Self {
        Decision { verdict: Verdict::Equal, certificate: Certificate::Moves(moves) }
    }

    fn distinct(s: Separation) -> Self {
        Decision { verdict: Verdict::Distinct, certificate: Certificate::Separated(s) }
    }

    pub fn moves(&self) -> &[Move] {
        match &self.certificate {
            Certificate::Moves(m) => m,
            _ => &[],
        }
    }

    /// Replay an Equal certificate on `a`, checking every step.
    pub fn replay_walk(&self, a: &Walk, looped: bool) -> Result<Walk> {
        let g = a.graph();
        let mut seq = a.vertices().to_vec();
        for mv in self.moves() {
            seq = apply_walk_move(g, &seq, *mv, looped)?;
        }
        Walk::new(g.clone(), seq)
    }

    /// Replay an Equal certificate on `f`, checking every step.
    pub fn replay_morphism(&self, f: &Morphism) -> Result<Morphism> {
        let mut map = f.map().to_vec();
        for mv in self.moves() {
            let Move::Spider(s) = *mv else {
                return Err(Error::Unsupported("only spider moves apply to morphisms".into()));
            };
            if map.get(s.position) != Some(&s.old_image) || !morphism_spider_ok(f.source(), f.target(), &map, s.position, s.new_image) {
                return Err(Error::Unsupported(format!("illegal spider move at source vertex {}", s.position)));
            }
            map[s.position] = s.new_image;
        }
        Morphism::new(f.source().clone(), f.target().clone(), map)
    }

    pub fn render_walk(&self, g: &Graph) -> String {
        self.render(|p| p.to_string(), |v| g.name(v).to_string())
    }

    pub fn render_morphism(&self, source: &Graph, target: &Graph) -> String {
        self.render(|p| source.name(p).to_string(), |v| target.name(v).to_string())
    }

    fn render(&self, pos_name: impl Fn(usize) -> String, name: impl Fn(usize) -> String) -> String {
        let mut out = format!("{}\n", self.verdict);
        match &self.certificate {
            Certificate::Moves(moves) => {
                out.push_str(&format!("certificate ({} moves):\n", moves.len()));
                for m in moves {
                    out.push_str(&format!("  {}\n", m.describe(&pos_name, &name)));
                }
            }
            Certificate::Separated(s) => {
                let line = match s {
                    Separation::Endpoints { a, b } => format!(
                        "endpoints differ: {}..{} vs {}..{}",
                        name(a.0),
                        name(a.1),
                        name(b.0),
                        name(b.1)
                    ),
                    Separation::Parity { a, b } => format!("parity differs: {a} vs {b}"),
                    Separation::Abelianization { a, b } => format!(
                        "abelianization images differ: {} vs {}",
                        format_image(a),
                        format_image(b)
                    ),
                    Separation::DisjointClosures { exhausted_side, closure_size } => format!(
                        "spider closure of side {} exhausted after {} states without meeting the other",
                        exhausted_side, closure_size
                    ),
                    Separation::Components { a, b } => {
                        format!("images lie in different components ({a} vs {b})")
                    }
                };
                out.push_str(&format!("separated: {line}\n"));
            }
            Certificate::Exhausted { max_len, max_states, explored, complete } => {
                let len = max_len.map_or("-".to_string(), |l| l.to_string());
                out.push_str(&format!(
                    "bounds: max_len {len}, max_states {max_states}; explored {explored} states{}\n",
                    if *complete { " (bounded space exhausted)" } else { "" }
                ));
            }
        }
        out
    }

    pub fn to_json_walk(&self, g: &Graph) -> serde_json::Value {
        self.to_json(|p| p.into(), |v| g.name(v).to_string())
    }

    pub fn to_json_morphism(&self, source: &Graph, target: &Graph) -> serde_json::Value {
        self.to_json(|p| source.name(p).into(), |v| target.name(v).to_string())
    }

    fn to_json(&self, pos_name: impl Fn(usize) -> serde_json::Value, name: impl Fn(usize) -> String) -> serde_json::Value {
        use serde_json::json;
        let cert = match &self.certificate {
            Certificate::Moves(moves) => json!({
                "kind": "moves",
                "moves": moves.iter().map(|m| m.to_json(&pos_name, &name)).collect::<Vec<_>>(),
            }),
            Certificate::Separated(s) => match s {
                Separation::Endpoints { a, b } => json!({
                    "kind": "endpoints",
                    "a": [name(a.0), name(a.1)],
                    "b": [name(b.0), name(b.1)],
                }),
                Separation::Parity { a, b } => json!({"kind": "parity", "a": a, "b": b}),
                Separation::Abelianization { a, b } => json!({
                    "kind": "abelianization",
                    "a": a.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "b": b.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                }),
                Separation::DisjointClosures { exhausted_side, closure_size } => json!({
                    "kind": "disjoint-closures",
                    "exhausted_side": exhausted_side,
                    "closure_size": closure_size,
                }),
                Separation::Components { a, b } => json!({"kind": "components", "a": a, "b": b}),
            },
            Certificate::Exhausted { max_len, max_states, explored, complete } => json!({
                "kind": "exhausted",
                "max_len": max_len,
                "max_states": max_states,
                "explored": explored,
                "complete": complete,
            }),
        };
        json!({"verdict": self.verdict, "certificate": cert})
    }
}

// ---------------------------------------------------------------------------
// Walk moves

fn spider_ok(g: &Graph, seq: &[usize], i: usize, new: usize, looped: bool) -> bool {
    let old = seq[i];
    new != old
        && g.adjacent(seq[i - 1], new)
        && g.adjacent(new, seq[i + 1])
        && (!looped || (g.is_looped(new) && g.adjacent(old, new)))
}

fn apply_walk_move(g: &Graph, seq: &[usize], mv: Move, looped: bool) -> Result<Vec<usize>> {
    let bad = |what: &str| Err(Error::Unsupported(format!("illegal {what} in certificate")));
    let n = seq.len();
    let out = match mv {
        Move::Spider(s) => {
            if s.position == 0 || s.position + 1 >= n || seq[s.position] != s.old_image {
                return bad("spider move");
            }
            if !spider_ok(g, seq, s.position, s.new_image, looped) {
                return bad("spider move");
            }
            let mut out = seq.to_vec();
            out[s.position] = s.new_image;
            out
        }
        Move::Prune { position } => {
            if position + 2 >= n || seq[position] != seq[position + 2] {
                return bad("prune");
            }
            apply_site(seq, PruneSite::Backtrack(position))
        }
        Move::Unprune { position, via } => {
            if position >= n || via >= g.order() || !g.adjacent(seq[position], via) || (looped && !g.is_looped(via)) {
                return bad("unprune");
            }
            let mut out = seq.to_vec();
            out.splice(position + 1..position + 1, [via, seq[position]]);
            out
        }
        Move::LoopPrune { position } => {
            if !looped || position + 1 >= n || seq[position] != seq[position + 1] {
                return bad("l-prune");
            }
            apply_site(seq, PruneSite::Repeat(position))
        }
        Move::LoopUnprune { position } => {
            if !looped || position >= n {
                return bad("l-unprune");
            }
            let mut out = seq.to_vec();
            out.insert(position, seq[position]);
            out
        }
    };
    Ok(out)
}

/// Inverse of `mv` as applied to `seq`.
fn inverse_move(seq: &[usize], mv: Move) -> Move {
    match mv {
        Move::Spider(s) => Move::Spider(SpiderStep { position: s.position, old_image: s.new_image, new_image: s.old_image }),
        Move::Prune { position } => Move::Unprune { position, via: seq[position + 1] },
        Move::Unprune { position, .. } => Move::Prune { position },
        Move::LoopPrune { position } => Move::LoopUnprune { position },
        Move::LoopUnprune { position } => Move::LoopPrune { position },
    }
}

/// Moves taking the end of `moves` (started at `start`) back to `start`.
fn invert_moves(g: &Graph, start: &[usize], moves: &[Move], looped: bool) -> Vec<Move> {
    let mut seq = start.to_vec();
    let mut inv = Vec::with_capacity(moves.len());
    for &mv in moves {
        inv.push(inverse_move(&seq, mv));
        seq = apply_walk_move(g, &seq, mv, looped).expect("moves were generated legal");
    }
    inv.reverse();
    inv
}

/// Leftmost prunes down to the normal form, recorded as moves.
fn normalization_moves(seq: &[usize], looped: bool) -> (Vec<Move>, Vec<usize>) {
    let mut cur = seq.to_vec();
    let mut moves = Vec::new();
    while let Some(&site) = prune_sites(&cur, looped).first() {
        moves.push(match site {
            PruneSite::Backtrack(i) => Move::Prune { position: i },
            PruneSite::Repeat(i) => Move::LoopPrune { position: i },
        });
        cur = apply_site(&cur, site);
    }
    (moves, cur)
}

/// All walks one interior spider move away from `w`, by position and then
/// vertex order.
pub fn spider_successors(w: &Walk, looped: bool) -> Result<Vec<(SpiderStep, Walk)>> {
    if looped {
        w.require_looped()?;
    }
    let g = w.graph();
    let seq = w.vertices();
    let mut out = Vec::new();
    for i in 1..seq.len().saturating_sub(1) {
        for &y in g.neighbors(seq[i - 1]) {
            if spider_ok(g, seq, i, y, looped) {
                let mut next = seq.to_vec();
                next[i] = y;
                out.push((
                    SpiderStep { position: i, old_image: seq[i], new_image: y },
                    Walk::from_trusted(g.clone(), next),
                ));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Walk decisions

/// One edge of the search over normal forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Step {
    Spider { position: usize, new: usize },
    /// Splice the closed walk `(v x b y v)` in after index `position`.
    Diamond { position: usize, x: usize, b: usize, y: usize },
}

impl Step {
    fn raw(self, seq: &[usize], looped: bool) -> (Vec<Move>, Vec<usize>) {
        let mut moves = Vec::new();
        let mut cur = seq.to_vec();
        match self {
            Step::Spider { position, new } => {
                moves.push(Move::Spider(SpiderStep { position, old_image: cur[position], new_image: new }));
                cur[position] = new;
            }
            Step::Diamond { position, x, b, y } => {
                let v = cur[position];
                moves.push(Move::Unprune { position, via: x });
                moves.push(Move::Unprune { position: position + 1, via: b });
                moves.push(Move::Spider(SpiderStep { position: position + 3, old_image: x, new_image: y }));
                cur.splice(position + 1..position + 1, [x, b, y, v]);
            }
        }
        let (prunes, norm) = normalization_moves(&cur, looped);
        moves.extend(prunes);
        (moves, norm)
    }
}

fn successors(g: &Graph, s: &[usize], looped: bool, max_len: usize, out: &mut Vec<(Step, Vec<usize>)>) {
    out.clear();
    let len = s.len() - 1;
    let usable = |v: usize| !looped || g.is_looped(v);
    for i in 1..len {
        for &y in g.neighbors(s[i - 1]) {
            if spider_ok(g, s, i, y, looped) {
                let mut next = s.to_vec();
                next[i] = y;
                let next = normalize_seq(&next, looped);
                if next.len() <= max_len + 1 {
                    out.push((Step::Spider { position: i, new: y }, next));
                }
            }
        }
    }
    if len + 4 > max_len {
        return;
    }
    for i in 0..=len {
        let v = s[i];
        for &x in g.neighbors(v) {
            if !usable(x) {
                continue;
            }
            for &b in g.neighbors(x) {
                if !usable(b) {
                    continue;
                }
                for &y in g.neighbors(b) {
                    if y == x || !usable(y) || !g.adjacent(y, v) || (looped && !g.adjacent(x, y)) {
                        continue;
                    }
                    let mut next = Vec::with_capacity(s.len() + 4);
                    next.extend_from_slice(&s[..=i]);
                    next.extend_from_slice(&[x, b, y, v]);
                    next.extend_from_slice(&s[i + 1..]);
                    let next = normalize_seq(&next, looped);
                    if next.as_slice() != s {
                        out.push((Step::Diamond { position: i, x, b, y }, next));
                    }
                }
            }
        }
    }
}

enum Meet<S, E> {
    Found { path_a: Vec<(S, E)>, path_b: Vec<(S, E)> },
    /// `side` had nothing left to expand.
    Exhausted { side: usize, size: usize, explored: usize },
    Capped { explored: usize },
}

/// Layered bidirectional BFS, always expanding the side with the smaller
/// frontier. Paths are returned as (predecessor, edge) lists from each root
/// to the meeting state.
fn bidirectional<S, E>(
    a: S,
    b: S,
    max_states: usize,
    mut expand: impl FnMut(&S, &mut Vec<(E, S)>),
) -> Meet<S, E>
where
    S: Clone + Eq + Hash,
    E: Clone,
{
    if a == b {
        return Meet::Found { path_a: vec![], path_b: vec![] };
    }
    let mut parents: [HashMap<S, Option<(S, E)>>; 2] = [HashMap::new(), HashMap::new()];
    parents[0].insert(a.clone(), None);
    parents[1].insert(b.clone(), None);
    let mut frontier = [vec![a], vec![b]];
    let mut buf = Vec::new();
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return Meet::Exhausted {
                side,
                size: parents[side].len(),
                explored: parents[0].len() + parents[1].len(),
            };
        }
        let layer = std::mem::take(&mut frontier[side]);
        for s in &layer {
            buf.clear();
            expand(s, &mut buf);
            for (e, t) in buf.drain(..) {
                if parents[side].contains_key(&t) {
                    continue;
                }
                parents[side].insert(t.clone(), Some((s.clone(), e)));
                if parents[1 - side].contains_key(&t) {
                    let pa = trace(&parents[0], &t);
                    let pb = trace(&parents[1], &t);
                    return Meet::Found { path_a: pa, path_b: pb };
                }
                frontier[side].push(t);
                if parents[0].len() + parents[1].len() >= max_states {
                    return Meet::Capped { explored: parents[0].len() + parents[1].len() };
                }
            }
        }
    }
}

fn trace<S: Clone + Eq + Hash, E: Clone>(parents: &HashMap<S, Option<(S, E)>>, end: &S) -> Vec<(S, E)> {
    let mut path = Vec::new();
    let mut cur = end.clone();
    while let Some(Some((p, e))) = parents.get(&cur) {
        path.push((p.clone(), e.clone()));
        cur = p.clone();
    }
    path.reverse();
    path
}

/// Bounded search only, with no invariant checks. Equal or Unknown.
pub fn search_walks(a: &Walk, b: &Walk, looped: bool, max_len: usize, max_states: usize) -> Result<Decision> {
    check_pair(a, b, looped, max_len, max_states)?;
    let g = a.graph().clone();
    if a.start() != b.start() || a.end() != b.end() {
        return Ok(unknown(Some(max_len), max_states, 0, false));
    }
    let (norm_a_moves, na) = normalization_moves(a.vertices(), looped);
    let (norm_b_moves, nb) = normalization_moves(b.vertices(), looped);
    let outcome = bidirectional(na.clone(), nb.clone(), max_states, |s, out| {
        let mut tmp = Vec::new();
        successors(&g, s, looped, max_len, &mut tmp);
        out.extend(tmp);
    });
    Ok(match outcome {
        Meet::Found { path_a, path_b, .. } => {
            let mut forward = norm_a_moves;
            for (s, step) in &path_a {
                forward.extend(step.raw(s, looped).0);
            }
            // b -> meet, then reversed
            let mut from_b = norm_b_moves;
            for (s, step) in &path_b {
                from_b.extend(step.raw(s, looped).0);
            }
            forward.extend(invert_moves(&g, b.vertices(), &from_b, looped));
            Decision::equal(forward)
        }
        Meet::Exhausted { explored, .. } => unknown(Some(max_len), max_states, explored, true),
        Meet::Capped { explored } => unknown(Some(max_len), max_states, explored, false),
    })
}

fn unknown(max_len: Option<usize>, max_states: usize, explored: usize, complete: bool) -> Decision {
    Decision {
        verdict: Verdict::Unknown,
        certificate: Certificate::Exhausted { max_len, max_states, explored, complete },
    }
}

fn check_pair(a: &Walk, b: &Walk, looped: bool, max_len: usize, max_states: usize) -> Result<()> {
    if !a.same_graph(b) {
        return Err(Error::DifferentGraphs);
    }
    if max_len == 0 && (!a.is_empty() || !b.is_empty()) {
        return Err(Error::InvalidBound("max_len"));
    }
    if max_len < a.len().max(b.len()) {
        return Err(Error::Unsupported(format!(
            "max_len {max_len} is shorter than the inputs ({} and {})",
            a.len(),
            b.len()
        )));
    }
    if max_states == 0 {
        return Err(Error::InvalidBound("max_states"));
    }
    if looped {
        a.require_looped()?;
        b.require_looped()?;
    }
    Ok(())
}

pub fn default_max_len(a: &Walk, b: &Walk) -> usize {
    a.len().max(b.len()) + DEFAULT_LEN_SLACK
}

/// Invariant checks and cached abelianizations for walks in one graph.
pub struct WalkHomotopy {
    graph: Arc<Graph>,
    looped: bool,
    /// Looped mode works in the looped subgraph; `local[v]` is `v`'s index
    /// there.
    sub: Arc<Graph>,
    local: Vec<usize>,
    cache: HashMap<usize, (WordMap, Abelianization)>,
}

impl WalkHomotopy {
    pub fn new(graph: Arc<Graph>, looped: bool) -> Self {
        let (sub, local) = if looped {
            let (sub, keep) = graph.looped_subgraph();
            let mut local = vec![usize::MAX; graph.order()];
            for (i, &v) in keep.iter().enumerate() {
                local[v] = i;
            }
            (Arc::new(sub), local)
        } else {
            (graph.clone(), (0..graph.order()).collect())
        };
        WalkHomotopy { graph, looped, sub, local, cache: HashMap::new() }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn looped(&self) -> bool {
        self.looped
    }

    /// Image of a walk in the abelianized fundamental group of its
    /// component (looped or not, per mode).
    pub fn abelian_image(&mut self, w: &Walk) -> Result<Vec<BigInt>> {
        if !same_graph(&self.graph, w.graph()) {
            return Err(Error::DifferentGraphs);
        }
        if self.looped {
            w.require_looped()?;
        }
        let seq: Vec<usize> = w.vertices().iter().map(|&v| self.local[v]).collect();
        let sub = &self.sub;
        let looped = self.looped;
        let root = sub.components()[seq[0]];
        let (map, ab) = self.cache.entry(root).or_insert_with(|| {
            let base = sub.components().iter().position(|&c| c == root).expect("component has a vertex");
            let map = WordMap::new(sub, SpanningForest::bfs(sub, base), looped);
            let relators = groupoid_relators(sub, &map);
            let ab = abelianize(map.generator_count(), &relators);
            (map, ab)
        });
        Ok(ab.image(&map.word(&seq)))
    }

    /// Endpoint, parity and abelianization tests; `None` when none separate.
    pub fn separate(&mut self, a: &Walk, b: &Walk) -> Result<Option<Separation>> {
        if a.start() != b.start() || a.end() != b.end() {
            return Ok(Some(Separation::Endpoints { a: (a.start(), a.end()), b: (b.start(), b.end()) }));
        }
        if !self.looped && a.parity() != b.parity() {
            return Ok(Some(Separation::Parity { a: a.parity(), b: b.parity() }));
        }
        let (ia, ib) = (self.abelian_image(a)?, self.abelian_image(b)?);
        if ia != ib {
            return Ok(Some(Separation::Abelianization { a: ia, b: ib }));
        }
        Ok(None)
    }

    pub fn decide(&mut self, a: &Walk, b: &Walk, max_len: usize, max_states: usize) -> Result<Decision> {
        check_pair(a, b, self.looped, max_len, max_states)?;
        if !same_graph(&self.graph, a.graph()) {
            return Err(Error::DifferentGraphs);
        }
        if let Some(s) = self.separate(a, b)? {
            return Ok(Decision::distinct(s));
        }
        search_walks(a, b, self.looped, max_len, max_states)
    }
}

/// Homotopy rel endpoints of two walks: Equal with a replayable move list,
/// Distinct with a separating invariant, or Unknown at the bounds.
pub fn walks_homotopic(a: &Walk, b: &Walk, looped: bool, max_len: usize, max_states: usize) -> Result<Decision> {
    WalkHomotopy::new(a.graph().clone(), looped).decide(a, b, max_len, max_states)
}

// ---------------------------------------------------------------------------
// Morphism decisions

fn morphism_spider_ok(source: &Graph, target: &Graph, map: &[usize], x: usize, u: usize) -> bool {
    u < target.order()
        && u != map[x]
        && source.neighbors(x).iter().all(|&y| y == x || target.adjacent(u, map[y]))
        && (!source.is_looped(x) || (target.is_looped(u) && target.adjacent(u, map[x])))
}

fn morphism_successors(source: &Graph, target: &Graph, map: &[usize], out: &mut Vec<(SpiderStep, Vec<usize>)>) {
    for x in 0..source.order() {
        let anchor = source.neighbors(x).iter().find(|&&y| y != x);
        let candidates: Vec<usize> = match anchor {
            Some(&y) => target.neighbors(map[y]).to_vec(),
            None if source.is_looped(x) => target.neighbors(map[x]).to_vec(),
            None => (0..target.order()).collect(),
        };
        for u in candidates {
            if morphism_spider_ok(source, target, map, x, u) {
                let mut next = map.to_vec();
                next[x] = u;
                out.push((SpiderStep { position: x, old_image: map[x], new_image: u }, next));
            }
        }
    }
}

pub fn morphisms_homotopic(f: &Morphism, g: &Morphism, max_steps: usize) -> Result<Decision> {
    if !same_graph(f.source(), g.source()) || !same_graph(f.target(), g.target()) {
        return Err(Error::ShapeMismatch);
    }
    if max_steps == 0 {
        return Err(Error::InvalidBound("max_steps"));
    }
    let (src, tgt) = (f.source().clone(), f.target().clone());
    if src.order() > 0 && src.is_connected() && (src.order() >= 2 || src.is_looped(0)) {
        let comp = tgt.components();
        let (ca, cb) = (comp[f.apply(0)], comp[g.apply(0)]);
        if ca != cb {
            return Ok(Decision::distinct(Separation::Components { a: ca, b: cb }));
        }
    }
    let outcome = bidirectional(f.map().to_vec(), g.map().to_vec(), max_steps, |m, out| {
        morphism_successors(&src, &tgt, m, out)
    });
    Ok(match outcome {
        Meet::Found { path_a, path_b, .. } => {
            let mut moves: Vec<Move> = path_a.iter().map(|(_, s)| Move::Spider(*s)).collect();
            moves.extend(path_b.iter().rev().map(|(_, s)| {
                Move::Spider(SpiderStep { position: s.position, old_image: s.new_image, new_image: s.old_image })
            }));
            Decision::equal(moves)
        }
        Meet::Exhausted { side, size, .. } => {
            Decision::distinct(Separation::DisjointClosures { exhausted_side: side, closure_size: size })
        }
        Meet::Capped { explored } => unknown(None, max_steps, explored, false),
    })
}

// ---------------------------------------------------------------------------
// Folds

/// A self-map moving one vertex onto another whose neighbourhood contains
/// its own.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fold {
    pub vertex: usize,
    pub onto: usize,
    pub morphism: Morphism,
}

impl Fold {
    pub fn describe(&self) -> String {
        let g = self.morphism.source();
        format!("{} -> {}", g.name(self.vertex), g.name(self.onto))
    }
}

pub fn can_fold(g: &Graph, x: usize, u: usize) -> bool {
    x != u
        && g.neighbors(x).iter().all(|&y| g.adjacent(u, y))
        && (!g.is_looped(x) || g.is_looped(u))
}

fn fold_candidates(g: &Graph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for x in 0..g.order() {
        for u in 0..g.order() {
            if can_fold(g, x, u) {
                out.push((x, u));
            }
        }
    }
    out
}

fn make_fold(g: Arc<Graph>, x: usize, u: usize) -> Fold {
    let mut map: Vec<usize> = (0..g.order()).collect();
    map[x] = u;
    let morphism = Morphism::new(g.clone(), g, map).expect("a fold is a morphism");
    Fold { vertex: x, onto: u, morphism }
}

/// Least foldable vertex, folded onto the least possible target.
pub fn find_fold(g: &Arc<Graph>) -> Option<Fold> {
    for x in 0..g.order() {
        if let Some(u) = (0..g.order()).find(|&u| can_fold(g, x, u)) {
            return Some(make_fold(g.clone(), x, u));
        }
    }
    None
}

#[derive(Debug, Clone)]
pub struct StiffReduction {
    pub stiff: Arc<Graph>,
    /// Each fold acts on the graph left by the previous ones.
    pub folds: Vec<Fold>,
    /// Composite of the folds, as a map from the input onto the stiff graph.
    pub retraction: Morphism,
}

fn reduce_with(g: &Arc<Graph>, mut pick: impl FnMut(&Arc<Graph>) -> Option<Fold>) -> StiffReduction {
    let mut cur = g.clone();
    // position of each original vertex in `cur`
    let mut image: Vec<usize> = (0..g.order()).collect();
    let mut folds = Vec::new();
    while let Some(fold) = pick(&cur) {
        let (next, keep) = cur.without_vertex(fold.vertex);
        let mut local = vec![usize::MAX; cur.order()];
        for (i, &v) in keep.iter().enumerate() {
            local[v] = i;
        }
        for v in image.iter_mut() {
            *v = local[fold.morphism.apply(*v)];
        }
        folds.push(fold);
        cur = Arc::new(next);
    }
    let retraction = Morphism::new(g.clone(), cur.clone(), image).expect("composite of folds");
    StiffReduction { stiff: cur, folds, retraction }
}

/// Fold until stiff, always taking `find_fold`'s choice.
pub fn stiff_reduce(g: &Arc<Graph>) -> StiffReduction {
    reduce_with(g, find_fold)
}

/// Fold until stiff, choosing uniformly among all available folds.
pub fn stiff_reduce_random<R: Rng>(g: &Arc<Graph>, rng: &mut R) -> StiffReduction {
    reduce_with(g, |cur| {
        fold_candidates(cur).choose(rng).map(|&(x, u)| make_fold(cur.clone(), x, u))
    })
}

pub fn is_stiff(g: &Arc<Graph>) -> bool {
    find_fold(g).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, find_isomorphism, terminal_graph, wheel_graph};
    use crate::io::parse_graph;

    fn pendant_square() -> Arc<Graph> {
        Arc::new(crate::graph::tests::pendant_square())
    }

    fn looped_square() -> Arc<Graph> {
        Arc::new(
            parse_graph("vertex a loop\nvertex b loop\nvertex c loop\nvertex d loop\nedge a b\nedge b c\nedge c d\nedge d a").unwrap(),
        )
    }

    fn w(g: &Arc<Graph>, s: &str) -> Walk {
        Walk::parse(g.clone(), s).unwrap()
    }

    #[test]
    fn spider_successor_examples() {
        let g = pendant_square();
        let succ = spider_successors(&w(&g, "a,c,e"), false).unwrap();
        let d = g.require("d").unwrap();
        assert!(succ.iter().any(|(s, walk)| s.position == 1 && s.new_image == d && walk.to_string() == "a,d,e"));

        let c5 = Arc::new(cycle_graph(5));
        assert!(spider_successors(&w(&c5, "0,1,2"), false).unwrap().is_empty());

        let sq = looped_square();
        assert!(spider_successors(&w(&sq, "a,b,c"), true).unwrap().is_empty());
        assert_eq!(spider_successors(&w(&sq, "a,b,c"), false).unwrap().len(), 1);
    }

    #[test]
    fn pendant_square_equal_with_replay() {
        let g = pendant_square();
        let (a, b) = (w(&g, "a,c,b,c,e"), w(&g, "a,d,e"));
        let d = walks_homotopic(&a, &b, false, 10, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(d.verdict, Verdict::Equal);
        assert_eq!(d.replay_walk(&a, false).unwrap(), b);
        assert_eq!(d.moves()[0], Move::Prune { position: 1 });
        assert!(matches!(d.moves()[1], Move::Spider(_)));
        assert_eq!(d.moves().len(), 2);
    }

    #[test]
    fn c5_orientations_are_distinct() {
        let c5 = Arc::new(cycle_graph(5));
        let d = walks_homotopic(&w(&c5, "0,1,2,3,4,0"), &w(&c5, "0,4,3,2,1,0"), false, 11, 1000).unwrap();
        assert_eq!(d.verdict, Verdict::Distinct);
        assert!(matches!(d.certificate, Certificate::Separated(Separation::Abelianization { .. })));
    }

    #[test]
    fn trivial_and_parity() {
        let c5 = Arc::new(cycle_graph(5));
        let d = walks_homotopic(&w(&c5, "0"), &w(&c5, "0"), false, 1, 10).unwrap();
        assert_eq!(d, Decision::equal(vec![]));
        let k2l = Arc::new(complete_graph(2, true));
        let d = walks_homotopic(&w(&k2l, "0,1"), &w(&k2l, "0,0,1"), false, 8, 1000).unwrap();
        assert_eq!(d.certificate, Certificate::Separated(Separation::Parity { a: Parity::Odd, b: Parity::Even }));
        let d = walks_homotopic(&w(&k2l, "0,1"), &w(&k2l, "0,0,1"), true, 8, 1000).unwrap();
        assert_eq!(d.verdict, Verdict::Equal);
        assert_eq!(d.replay_walk(&w(&k2l, "0,1"), true).unwrap(), w(&k2l, "0,0,1"));
    }

    #[test]
    fn looped_square_example() {
        let sq = looped_square();
        let (a, b) = (w(&sq, "a,b,c"), w(&sq, "a,d,c"));
        let d = walks_homotopic(&a, &b, false, 8, 10_000).unwrap();
        assert_eq!(d.verdict, Verdict::Equal);
        assert_eq!(d.replay_walk(&a, false).unwrap(), b);
        let d = walks_homotopic(&a, &b, true, 8, 10_000).unwrap();
        assert_eq!(d.verdict, Verdict::Distinct);
    }

    #[test]
    fn wheel_square_of_generator_is_null() {
        let wh = Arc::new(wheel_graph(5));
        let a = w(&wh, "x,a,b,x,a,b,x");
        let b = w(&wh, "x");
        let d = walks_homotopic(&a, &b, false, 12, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(d.verdict, Verdict::Equal);
        assert_eq!(d.replay_walk(&a, false).unwrap(), b);
    }

    #[test]
    fn bound_errors() {
        let c5 = Arc::new(cycle_graph(5));
        let a = w(&c5, "0,1,2");
        assert_eq!(walks_homotopic(&a, &a, false, 0, 10), Err(Error::InvalidBound("max_len")));
        assert_eq!(walks_homotopic(&a, &a, false, 5, 0), Err(Error::InvalidBound("max_states")));
        let other = Arc::new(cycle_graph(7));
        assert_eq!(walks_homotopic(&a, &w(&other, "0,1,2"), false, 5, 10), Err(Error::DifferentGraphs));
    }

    #[test]
    fn morphism_examples() {
        let g = pendant_square();
        let id = Morphism::identity(g.clone());
        assert_eq!(morphisms_homotopic(&id, &id, 10).unwrap(), Decision::equal(vec![]));
        let fold = Morphism::from_pairs(g.clone(), g.clone(), &[("a", "a"), ("b", "a"), ("c", "c"), ("d", "d"), ("e", "e")]).unwrap();
        let d = morphisms_homotopic(&id, &fold, 100).unwrap();
        assert_eq!(d.verdict, Verdict::Equal);
        assert_eq!(d.moves().len(), 1);
        assert_eq!(d.replay_morphism(&id).unwrap(), fold);

        let c5 = Arc::new(cycle_graph(5));
        let rot = Morphism::new(c5.clone(), c5.clone(), vec![1, 2, 3, 4, 0]).unwrap();
        let d = morphisms_homotopic(&Morphism::identity(c5.clone()), &rot, 100).unwrap();
        assert_eq!(d.verdict, Verdict::Distinct);
        assert!(matches!(d.certificate, Certificate::Separated(Separation::DisjointClosures { closure_size: 1, .. })));
    }

    #[test]
    fn folds() {
        let g = pendant_square();
        let f = find_fold(&g).unwrap();
        assert_eq!(f.describe(), "a -> e");
        assert!(find_fold(&Arc::new(cycle_graph(5))).is_none());
        assert!(find_fold(&Arc::new(complete_graph(2, false))).is_none());
        let t = Arc::new(terminal_graph());
        let r = stiff_reduce(&t);
        assert!(r.folds.is_empty());
        assert_eq!(*r.stiff, *t);

        let r = stiff_reduce(&g);
        assert!(is_stiff(&r.stiff));
        let k2 = complete_graph(2, false);
        assert!(find_isomorphism(&r.stiff, &k2, 10).unwrap().is_some());
        assert_eq!(r.retraction.source().order(), 5);
        let names: Vec<_> = r.folds.iter().map(|f| f.describe()).collect();
        assert_eq!(names, vec!["a -> e", "b -> e", "c -> d"]);
    }

    #[test]
    fn random_fold_orders_agree_on_example() {
        use rand::SeedableRng;
        let g = pendant_square();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..10 {
            let r = stiff_reduce_random(&g, &mut rng);
            assert_eq!(r.stiff.order(), 2);
            assert_eq!(r.stiff.edge_count(), 1);
        }
    }
}
