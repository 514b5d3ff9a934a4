//! Naturality squares for spider pairs `φ, ψ: G -> H`: with
//! `γ_v = (φ(v) φ(u) ψ(v))` for a neighbour `u` of `v`, every walk
//! `α: w -> w'` gives `φ(α) * γ_w' ≃ γ_w * ψ(α)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{same_graph, Morphism};
use crate::homotopy::{Decision, WalkHomotopy};
use crate::walk::{induced_walk, Walk};

/// `φ(u) ~ ψ(v)` whenever `u ~ v`.
pub fn is_spider_pair(phi: &Morphism, psi: &Morphism) -> bool {
    let (g, h) = (phi.source(), phi.target());
    (0..g.order()).all(|u| g.neighbors(u).iter().all(|&v| h.adjacent(phi.apply(u), psi.apply(v))))
}

/// The component `γ_v`, through the first neighbour of `v` (or `v` itself
/// when looped).
pub fn naturality_path(phi: &Morphism, psi: &Morphism, v: usize) -> Result<Walk> {
    let g = phi.source();
    let u = if g.is_looped(v) {
        v
    } else {
        *g.neighbors(v).first().ok_or_else(|| Error::Unsupported(format!("{} is isolated", g.name(v))))?
    };
    Walk::new(phi.target().clone(), vec![phi.apply(v), phi.apply(u), psi.apply(v)])
}

/// Both sides of the square for `alpha`.
pub fn naturality_sides(phi: &Morphism, psi: &Morphism, alpha: &Walk) -> Result<(Walk, Walk)> {
    if !same_graph(phi.source(), psi.source()) || !same_graph(phi.target(), psi.target()) {
        return Err(Error::ShapeMismatch);
    }
    if !is_spider_pair(phi, psi) {
        return Err(Error::Unsupported("the morphisms are not a spider pair".into()));
    }
    let left = induced_walk(phi, alpha)?.concat(&naturality_path(phi, psi, alpha.end())?)?;
    let right = naturality_path(phi, psi, alpha.start())?.concat(&induced_walk(psi, alpha)?)?;
    Ok((left, right))
}

pub fn check_naturality(
    ctx: &mut WalkHomotopy,
    phi: &Morphism,
    psi: &Morphism,
    alpha: &Walk,
    max_len: usize,
    max_states: usize,
) -> Result<Decision> {
    let (left, right) = naturality_sides(phi, psi, alpha)?;
    if !Arc::ptr_eq(ctx.graph(), phi.target()) && !same_graph(ctx.graph(), phi.target()) {
        return Err(Error::DifferentGraphs);
    }
    ctx.decide(&left, &right, max_len.max(left.len()), max_states)
}
