//! Separant, coseparant and the Ritt pencil of a pivot equation.

use crate::diffpoly::{Derivative, DiffPoly, Rational, RingRef, FRESH_VARIABLE};
use crate::error::{Error, Result};
use crate::reduction::{membership, AutoreducedSet};

/// `d·u = t₁ + ℓ·s₁` with `ℓ` the leader of `u` in the pivot variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coseparant {
    pub leader: Derivative,
    pub degree: u32,
    pub separant: DiffPoly,
    pub coseparant: DiffPoly,
}

pub fn coseparant(u: &DiffPoly, var: usize) -> Result<Coseparant> {
    let leader = u.leader_in(var)?;
    let degree = u.degree_in(leader);
    let separant = u.partial(leader);
    let ell = DiffPoly::derivative(u.ring(), leader.var, leader.order)?;
    let coseparant = u.scale(&Rational::from_integer(degree.into())) - &ell * &separant;
    Ok(Coseparant {
        leader,
        degree,
        separant,
        coseparant,
    })
}

/// Whether the separant of `u` in `x_var` lies in the component described
/// by `charset`.
pub fn is_degenerate(u: &DiffPoly, var: usize, charset: &AutoreducedSet) -> Result<bool> {
    let s = u.separant(var)?;
    membership(&s, charset)
}

/// The family `[t₁ + w·s₁, u₂, …, u_n]` over the ring extended by `w`.
#[derive(Debug, Clone)]
pub struct RittPencil {
    pub base_ring: RingRef,
    pub ring: RingRef,
    /// Index of the fresh variable in `ring`.
    pub fresh: usize,
    pub pivot: usize,
    pub var: usize,
    pub leader: Derivative,
    pub degree: u32,
    pub separant: DiffPoly,
    pub coseparant: DiffPoly,
    /// `t₁ + w·s₁` over `ring`.
    pub generator: DiffPoly,
    /// The other equations, in order, over `base_ring`.
    pub carried: Vec<DiffPoly>,
    /// `t₁, s₁` followed by the carried equations.
    pub base_generators: Vec<DiffPoly>,
}

pub fn build_pencil(system: &[DiffPoly], pivot: usize, var: usize) -> Result<RittPencil> {
    let u = system.get(pivot).ok_or_else(|| {
        Error::ShapeMismatch(format!("pivot {pivot} out of range for {} equations", system.len()))
    })?;
    let base_ring = u.ring().clone();
    if system.iter().any(|p| !p.same_ring(u)) {
        return Err(Error::RingMismatch);
    }
    let cs = coseparant(u, var)?;
    let (ring, fresh) = base_ring.extended(FRESH_VARIABLE);
    let w = DiffPoly::var(&ring, fresh)?;
    let generator = cs.coseparant.embed(&ring)? + &w * &cs.separant.embed(&ring)?;
    let carried: Vec<DiffPoly> = system
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pivot)
        .map(|(_, p)| p.clone())
        .collect();
    let mut base_generators = vec![cs.coseparant.clone(), cs.separant.clone()];
    base_generators.extend(carried.iter().cloned());
    Ok(RittPencil {
        base_ring,
        ring,
        fresh,
        pivot,
        var,
        leader: cs.leader,
        degree: cs.degree,
        separant: cs.separant,
        coseparant: cs.coseparant,
        generator,
        carried,
        base_generators,
    })
}

impl RittPencil {
    /// The fiber `w = μ`: the system with the pivot replaced by `t₁ + μ·s₁`.
    pub fn fiber_at(&self, mu: &Rational) -> Result<Vec<DiffPoly>> {
        let member = self.generator.substitute_constant(self.fresh, mu)?.restrict(&self.base_ring)?;
        let mut out = self.carried.clone();
        out.insert(self.pivot, member);
        Ok(out)
    }

    /// The pivot equation recovered from the base generators as
    /// `(t₁ + ℓ·s₁)/d`.
    pub fn reconstruct_pivot(&self) -> Result<DiffPoly> {
        let ell = DiffPoly::derivative(&self.base_ring, self.leader.var, self.leader.order)?;
        let sum = &self.coseparant + &(&ell * &self.separant);
        Ok(sum.scale(&(Rational::from_integer(1.into()) / Rational::from_integer(self.degree.into()))))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "leader": self.base_ring.render_derivative(self.leader),
            "degree": self.degree,
            "separant": self.separant.to_string(),
            "coseparant": self.coseparant.to_string(),
            "fresh_variable": self.ring.name(self.fresh),
            "generators": std::iter::once(self.generator.to_string())
                .chain(self.carried.iter().map(ToString::to_string))
                .collect::<Vec<_>>(),
            "base_generators": self.base_generators.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }
}
