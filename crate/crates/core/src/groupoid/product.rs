//! Bounded check that the fundamental groupoid of `G x H` is the pullback of
//! those of the factors over parity.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{product, product_index, Graph};
use crate::homotopy::{Verdict, WalkHomotopy};
use crate::walk::{reduced_walks, Parity, Walk};

pub const PRODUCT_ORDER_CAP: usize = 100;
pub const WALK_CAP: usize = 200_000;
pub const PAIR_CAP: usize = 5_000_000;
const INNER_STATES: usize = 20_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LiftWitness {
    pub from: String,
    pub to: String,
    pub parity: Parity,
    pub walk: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ProductReport {
    pub product_order: usize,
    pub product_components: usize,
    pub pairs_checked: usize,
    pub lift_failures: Vec<String>,
    /// A shortest lift found for each pair of endpoints.
    pub witnesses: Vec<LiftWitness>,
    /// Pairs of product vertices with no arrow between them.
    pub unreachable: Vec<(String, String)>,
    pub reachability_mismatches: Vec<String>,
    pub loops_checked: usize,
    pub counterexamples: Vec<String>,
    pub unknown_blocked: Vec<String>,
}

impl ProductReport {
    pub fn passed(&self) -> bool {
        self.lift_failures.is_empty() && self.reachability_mismatches.is_empty() && self.counterexamples.is_empty()
    }

    pub fn witness(&self, from: &str, to: &str) -> Option<&LiftWitness> {
        self.witnesses.iter().find(|w| w.from == from && w.to == to)
    }

    pub fn is_unreachable(&self, from: &str, to: &str) -> bool {
        self.unreachable.iter().any(|(a, b)| a == from && b == to)
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "product: {} vertices, {} components", self.product_order, self.product_components);
        let _ = writeln!(out, "surjectivity: {} parity-matched pairs lifted, {} failures", self.pairs_checked, self.lift_failures.len());
        for f in &self.lift_failures {
            let _ = writeln!(out, "  lift failure: {f}");
        }
        let _ = writeln!(out, "reachability: {} unreachable ordered pairs, {} mismatches", self.unreachable.len(), self.reachability_mismatches.len());
        for m in &self.reachability_mismatches {
            let _ = writeln!(out, "  mismatch: {m}");
        }
        let _ = writeln!(
            out,
            "injectivity: {} closed walks checked, {} counterexamples, {} undecided",
            self.loops_checked,
            self.counterexamples.len(),
            self.unknown_blocked.len()
        );
        for c in &self.counterexamples {
            let _ = writeln!(out, "  counterexample: {c}");
        }
        for u in &self.unknown_blocked {
            let _ = writeln!(out, "  undecided: {u}");
        }
        let _ = writeln!(out, "{}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }
}

/// Pad a walk to `len` by repeating its last step. A trivial walk borrows
/// its least neighbour.
fn extend_to(g: &Graph, seq: &[usize], len: usize) -> Option<Vec<usize>> {
    let mut out = seq.to_vec();
    if out.len() - 1 < len && out.len() == 1 {
        let v = out[0];
        let &u = g.neighbors(v).first()?;
        out.extend([u, v]);
    }
    while out.len() - 1 < len {
        let n = out.len();
        let (a, b) = (out[n - 2], out[n - 1]);
        out.extend([a, b]);
    }
    (out.len() - 1 == len).then_some(out)
}

/// Parities of walks between every ordered pair of vertices.
fn parity_reach(g: &Graph) -> Vec<Vec<[bool; 2]>> {
    let n = g.order();
    let mut reach = vec![vec![[false; 2]; n]; n];
    for (s, row) in reach.iter_mut().enumerate() {
        let mut stack = vec![(s, 0usize)];
        row[s][0] = true;
        while let Some((u, p)) = stack.pop() {
            for &w in g.neighbors(u) {
                if !row[w][1 - p] {
                    row[w][1 - p] = true;
                    stack.push((w, 1 - p));
                }
            }
        }
    }
    reach
}

pub fn verify_product_pullback(g: &Arc<Graph>, h: &Arc<Graph>, max_len: usize) -> Result<ProductReport> {
    if max_len == 0 {
        return Err(Error::InvalidBound("max_len"));
    }
    let order = g.order() * h.order();
    if order > PRODUCT_ORDER_CAP {
        return Err(Error::CapExceeded { what: "product graph", size: order as u128, cap: PRODUCT_ORDER_CAP as u128 });
    }
    let p = Arc::new(product(g, h));
    let m = h.order();
    let comp = p.components();
    let mut report = ProductReport {
        product_order: order,
        product_components: p.component_count(),
        ..Default::default()
    };

    // surjectivity
    let gw: Vec<Vec<Walk>> = (0..g.order()).map(|v| reduced_walks(g, v, max_len, false, WALK_CAP)).collect::<Result<_>>()?;
    let hw: Vec<Vec<Walk>> = (0..m).map(|v| reduced_walks(h, v, max_len, false, WALK_CAP)).collect::<Result<_>>()?;
    let total: usize = gw.iter().map(Vec::len).sum::<usize>() * hw.iter().map(Vec::len).sum::<usize>();
    if total / 2 > PAIR_CAP {
        return Err(Error::CapExceeded { what: "walk pairs", size: total as u128 / 2, cap: PAIR_CAP as u128 });
    }
    let mut witnesses: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for ga in gw.iter().flatten() {
        for hb in hw.iter().flatten() {
            if ga.parity() != hb.parity() {
                continue;
            }
            report.pairs_checked += 1;
            let len = ga.len().max(hb.len());
            let (Some(x), Some(y)) = (extend_to(g, ga.vertices(), len), extend_to(h, hb.vertices(), len)) else {
                report.lift_failures.push(format!("({ga}) with ({hb}): no tail extension"));
                continue;
            };
            let lift: Vec<usize> = x.iter().zip(&y).map(|(&a, &b)| product_index(a, b, m)).collect();
            let lift = Walk::new(p.clone(), lift)?;
            let (px, py) = project(g, h, &lift);
            if px.prune_normalize(false)?.vertices() != ga.vertices() || py.prune_normalize(false)?.vertices() != hb.vertices() {
                report.lift_failures.push(format!("({lift}) does not project to ({ga}), ({hb})"));
                continue;
            }
            let key = (lift.start(), lift.end());
            let seq = lift.vertices();
            match witnesses.get(&key) {
                Some(w) if w.len() <= seq.len() => {}
                _ => {
                    witnesses.insert(key, seq.to_vec());
                }
            }
        }
    }
    report.witnesses = witnesses
        .into_iter()
        .map(|((s, t), seq)| LiftWitness {
            from: p.name(s).to_string(),
            to: p.name(t).to_string(),
            parity: Parity::of_len(seq.len() - 1),
            walk: Walk::from_trusted(p.clone(), seq).to_string(),
        })
        .collect();

    // arrows exist in the product exactly when the factors have walks of a
    // common parity
    let (rg, rh) = (parity_reach(g), parity_reach(h));
    for a in 0..order {
        for b in 0..order {
            let (ga, ha, gb, hb) = (a / m, a % m, b / m, b % m);
            let pulled = (0..2).any(|k| rg[ga][gb][k] && rh[ha][hb][k]);
            let direct = comp[a] == comp[b];
            if pulled != direct {
                report.reachability_mismatches.push(format!(
                    "({})->({}): product {}, factors {}",
                    p.name(a),
                    p.name(b),
                    direct,
                    pulled
                ));
            }
            if !direct {
                report.unreachable.push((p.name(a).to_string(), p.name(b).to_string()));
            }
        }
    }

    // faithfulness on isotropy, one basepoint per component
    let mut hg = WalkHomotopy::new(g.clone(), false);
    let mut hh = WalkHomotopy::new(h.clone(), false);
    let mut hp = WalkHomotopy::new(p.clone(), false);
    let mut seen = vec![false; report.product_components];
    for base in 0..order {
        if std::mem::replace(&mut seen[comp[base]], true) {
            continue;
        }
        for w in reduced_walks(&p, base, max_len, false, WALK_CAP)? {
            if w.is_empty() || !w.is_closed() {
                continue;
            }
            report.loops_checked += 1;
            let (wg, wh) = project(g, h, &w);
            let bound = w.len() + 4;
            let dg = hg.decide(&wg, &Walk::trivial(g.clone(), wg.start()), bound, INNER_STATES)?;
            let dh = hh.decide(&wh, &Walk::trivial(h.clone(), wh.start()), bound, INNER_STATES)?;
            match (dg.verdict, dh.verdict) {
                (Verdict::Distinct, _) | (_, Verdict::Distinct) => continue,
                (Verdict::Equal, Verdict::Equal) => {}
                _ => {
                    report.unknown_blocked.push(format!("({w}): a projection is undecided"));
                    continue;
                }
            }
            let d = hp.decide(&w, &Walk::trivial(p.clone(), base), bound, INNER_STATES)?;
            match d.verdict {
                Verdict::Equal => {}
                Verdict::Distinct => report.counterexamples.push(format!("({w}) has null projections but is not null")),
                Verdict::Unknown => report.unknown_blocked.push(format!("({w}): null projections, product undecided")),
            }
        }
    }
    Ok(report)
}

fn project(g: &Arc<Graph>, h: &Arc<Graph>, w: &Walk) -> (Walk, Walk) {
    let m = h.order();
    let a = w.vertices().iter().map(|&x| x / m).collect();
    let b = w.vertices().iter().map(|&x| x % m).collect();
    (Walk::from_trusted(g.clone(), a), Walk::from_trusted(h.clone(), b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, terminal_graph};

    #[test]
    fn p2_times_k2() {
        let r = verify_product_pullback(&Arc::new(path_graph(2, false)), &Arc::new(complete_graph(2, false)), 6).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.product_components, 2);
        assert_eq!(r.witness("0|0", "1|1").unwrap().parity, Parity::Odd);
        assert_eq!(r.witness("0|0", "2|0").unwrap().parity, Parity::Even);
        assert!(r.witness("0|0", "1|0").is_none());
        assert!(r.is_unreachable("0|0", "1|0"));
    }

    #[test]
    fn k2_squared_and_terminal_factor() {
        let k2 = Arc::new(complete_graph(2, false));
        let r = verify_product_pullback(&k2, &k2, 4).unwrap();
        assert!(r.passed());
        assert_eq!(r.product_components, 2);
        let r = verify_product_pullback(&Arc::new(terminal_graph()), &Arc::new(cycle_graph(5)), 4).unwrap();
        assert!(r.passed(), "{}", r.render());
        assert_eq!(r.product_components, 1);
    }

    #[test]
    fn isolated_vertices_break_lifting() {
        let g = Arc::new(crate::io::parse_graph("vertex a\nvertex b\nvertex c\nedge a b").unwrap());
        let r = verify_product_pullback(&g, &Arc::new(cycle_graph(5)), 2).unwrap();
        assert!(!r.lift_failures.is_empty());
        assert!(!r.reachability_mismatches.is_empty());
        assert!(!r.passed());
    }
}
