//! Exactness in the truss sense and the theorem engines built on it.
//!
//! `M → N → P` is exact at `N` when `Im f = ker_e g` for some `e ∈ Im g`.
//! Such an `e` is unique when it exists (it is `g` of any element of
//! `Im f`), so witness search is a scan over `Im g`.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::module::{quotient_module, same_module, FiniteModule, ModuleMorphism, Submodule};

pub mod factor;
pub mod functors;
pub mod lemmas;
pub mod snake;
pub mod split;

pub(crate) fn require_chain(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<()> {
    if same_module(&f.cod, &g.dom) {
        Ok(())
    } else {
        Err(Error::ChainMismatch("codomain of the first map is not the domain of the second".into()))
    }
}

/// The smallest `e ∈ Im g` with `ker_e g = Im f`, if any.
pub fn is_exact_at(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Option<usize>> {
    require_chain(f, g)?;
    let image = f.image();
    for e in g.image() {
        if (0..g.dom.size()).filter(|&x| g.apply(x) == e).eq(image.iter().copied()) {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Two independently computed short-exactness verdicts for
/// `⋆ → M → N → P → ⋆`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShortExactReport {
    pub witness: Option<usize>,
    pub f_injective: bool,
    pub g_surjective: bool,
    /// Exact at `N`, `f` injective and `g` surjective.
    pub verdict_a: bool,
    /// The canonical map `N/Im f → P` is a well-defined T-linear bijection.
    pub quotient_iso: bool,
    /// `f` injective and `quotient_iso`.
    pub verdict_b: bool,
}

impl ShortExactReport {
    pub fn is_short_exact(&self) -> bool {
        self.verdict_a
    }
}

/// Whether `N/Im f → P`, `n̄ ↦ g(n)`, is a well-defined T-linear bijection.
fn quotient_criterion(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<bool> {
    let image = Submodule::new(f.cod.clone(), f.image())
        .map_err(|e| Error::Consistency(format!("image of a T-linear map is not a submodule: {e}")))?;
    let q = quotient_module(&f.cod, &image)?;
    let mut map = Vec::with_capacity(q.partition.len());
    for class in q.partition.classes() {
        let value = g.apply(class[0]);
        if class.iter().any(|&n| g.apply(n) != value) {
            return Ok(false);
        }
        map.push(value);
    }
    let canonical = ModuleMorphism::new(q.module.clone(), g.cod.clone(), map)?;
    Ok(canonical.validate().is_ok() && canonical.is_bijective())
}

/// Both verdicts, which are required to agree.
pub fn is_short_exact(f: &ModuleMorphism, g: &ModuleMorphism) -> Result<ShortExactReport> {
    require_chain(f, g)?;
    let witness = is_exact_at(f, g)?;
    let f_injective = f.is_injective();
    let g_surjective = g.is_surjective();
    let verdict_a = witness.is_some() && f_injective && g_surjective;
    let quotient_iso = quotient_criterion(f, g)?;
    let verdict_b = f_injective && quotient_iso;
    if verdict_a != verdict_b {
        return Err(Error::Consistency(format!(
            "short exactness verdicts disagree: exact-and-epi gives {verdict_a}, quotient iso gives {verdict_b}"
        )));
    }
    Ok(ShortExactReport { witness, f_injective, g_surjective, verdict_a, quotient_iso, verdict_b })
}

/// A verified short exact sequence `⋆ → M₁ → M → M₂ → ⋆` with its witness.
#[derive(Debug, Clone)]
pub struct ShortExactSequence {
    pub f: ModuleMorphism,
    pub g: ModuleMorphism,
    pub witness: usize,
}

impl ShortExactSequence {
    pub fn new(f: ModuleMorphism, g: ModuleMorphism) -> Result<Self> {
        for (name, m) in [("f", &f), ("g", &g)] {
            m.validate().map_err(|v| Error::Precondition(format!("{name} is not T-linear: {v}")))?;
        }
        let report = is_short_exact(&f, &g)?;
        match report.witness {
            Some(witness) if report.verdict_a => Ok(Self { f, g, witness }),
            _ => Err(Error::Precondition(format!("sequence is not short exact: {report:?}"))),
        }
    }

    pub fn left(&self) -> &Arc<FiniteModule> {
        &self.f.dom
    }

    pub fn middle(&self) -> &Arc<FiniteModule> {
        &self.f.cod
    }

    pub fn right(&self) -> &Arc<FiniteModule> {
        &self.g.cod
    }
}

/// `⋆ → X → Y → A → B → ⋆` from `X → Y → Z` and `Z → A → B`.
#[derive(Debug, Clone)]
pub struct Spliced {
    pub f: ModuleMorphism,
    pub middle: ModuleMorphism,
    pub beta: ModuleMorphism,
    pub witness_y: usize,
    pub witness_a: usize,
}

pub fn splice(first: &ShortExactSequence, second: &ShortExactSequence) -> Result<Spliced> {
    let middle = first.g.then(&second.f)?;
    let witness_y = is_exact_at(&first.f, &middle)?
        .ok_or_else(|| Error::Falsified("spliced sequence is not exact at Y".into()))?;
    let witness_a = is_exact_at(&middle, &second.g)?
        .ok_or_else(|| Error::Falsified("spliced sequence is not exact at A".into()))?;
    Ok(Spliced { f: first.f.clone(), middle, beta: second.g.clone(), witness_y, witness_a })
}

/// `⋆ → Abs(M) → M → M/Abs(M) → ⋆`.
pub fn abs_sequence(m: &Arc<FiniteModule>) -> Result<ShortExactSequence> {
    let abs = m.absorbers();
    if abs.is_empty() {
        return Err(Error::NoAbsorbers);
    }
    let sub = Submodule::new(m.clone(), abs)
        .map_err(|e| Error::Consistency(format!("absorbers do not form a submodule: {e}")))?;
    let inclusion = sub.embed().inclusion;
    let projection = quotient_module(m, &sub)?.projection;
    ShortExactSequence::new(inclusion, projection).map_err(|e| match e {
        Error::Precondition(msg) => Error::Falsified(format!("absorber sequence: {msg}")),
        other => other,
    })
}

#[cfg(test)]
pub(crate) mod fixtures {
    use std::sync::Arc;

    use crate::heap::FiniteHeap;
    use crate::module::{FiniteModule, ModuleMorphism};
    use crate::truss::{truss_of_ring, FiniteRing, FiniteTruss};

    pub fn t(n: usize) -> Arc<FiniteTruss> {
        Arc::new(truss_of_ring(&FiniteRing::zn(n)).unwrap())
    }

    /// `ℤ/m` as a module over `T(ℤ/n)`, `m | n`.
    pub fn zm(truss: &Arc<FiniteTruss>, m: usize) -> Arc<FiniteModule> {
        Arc::new(FiniteModule::from_fn(truss.clone(), Arc::new(FiniteHeap::cyclic(m)), true, |a, x| (a * x) % m).unwrap())
    }

    /// `ℤ/2 → ℤ/4 → ℤ/2` over `T(ℤ/4)`.
    pub fn z2_z4_z2() -> (ModuleMorphism, ModuleMorphism) {
        let tr = t(4);
        let (a, b, c) = (zm(&tr, 2), zm(&tr, 4), zm(&tr, 2));
        let f = ModuleMorphism::new(a, b.clone(), vec![0, 2]).unwrap();
        let g = ModuleMorphism::new(b, c, vec![0, 1, 0, 1]).unwrap();
        (f, g)
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    #[test]
    fn exactness_witnesses() {
        let tr = t(4);
        let reg = zm(&tr, 4);
        let two = ModuleMorphism::new(reg.clone(), reg.clone(), vec![0, 2, 0, 2]).unwrap();
        let mod2 = ModuleMorphism::new(reg.clone(), zm(&tr, 2), vec![0, 1, 0, 1]).unwrap();
        assert_eq!(is_exact_at(&two, &mod2).unwrap(), Some(0));
        assert_eq!(is_exact_at(&two, &ModuleMorphism::identity(reg.clone())).unwrap(), None);
        let id = ModuleMorphism::identity(reg.clone());
        let c = ModuleMorphism::constant(reg.clone(), reg.clone(), 0).unwrap();
        assert_eq!(is_exact_at(&id, &c).unwrap(), Some(0));
        assert!(matches!(is_exact_at(&mod2, &two), Err(Error::ChainMismatch(_))));
    }

    #[test]
    fn short_exact_examples() {
        let (f, g) = z2_z4_z2();
        let r = is_short_exact(&f, &g).unwrap();
        assert!(r.verdict_a && r.verdict_b);
        assert_eq!(r.witness, Some(0));

        let m = zm(&t(4), 4);
        let id = ModuleMorphism::identity(m);
        let r = is_short_exact(&id, &id).unwrap();
        assert!(!r.verdict_a && !r.verdict_b);
    }

    #[test]
    fn product_sequence_is_short_exact() {
        let tr = t(3);
        let m = zm(&tr, 3);
        let p = Arc::new(FiniteModule::trivial_action(tr.clone(), Arc::new(crate::heap::FiniteHeap::cyclic(2))));
        let mp = Arc::new(m.product(&p).unwrap());
        let inj = ModuleMorphism::from_fn(m.clone(), mp.clone(), |x| x * 2).unwrap();
        let proj = ModuleMorphism::from_fn(mp, p, |x| x % 2).unwrap();
        assert!(ShortExactSequence::new(inj, proj).is_ok());
    }

    #[test]
    fn splice_two_sequences() {
        let (f, g) = z2_z4_z2();
        let first = ShortExactSequence::new(f.clone(), g.clone()).unwrap();
        let tr = f.dom.truss().clone();
        let z4 = zm(&tr, 4);
        let alpha = ModuleMorphism::new(g.cod.clone(), z4.clone(), vec![0, 2]).unwrap();
        let beta = ModuleMorphism::new(z4, zm(&tr, 2), vec![0, 1, 0, 1]).unwrap();
        let second = ShortExactSequence::new(alpha, beta).unwrap();
        let s = splice(&first, &second).unwrap();
        assert_eq!((s.witness_y, s.witness_a), (0, 0));
        assert_eq!(s.middle.map, vec![0, 2, 0, 2]);
    }

    #[test]
    fn abs_sequences() {
        let tr = t(4);
        let reg = zm(&tr, 4);
        let s = abs_sequence(&reg).unwrap();
        assert_eq!(s.left().size(), 1);
        assert_eq!(s.right().size(), 4);
        let triv = Arc::new(FiniteModule::trivial_action(tr.clone(), Arc::new(crate::heap::FiniteHeap::cyclic(3))));
        let s = abs_sequence(&triv).unwrap();
        assert_eq!(s.left().size(), 3);
        assert_eq!(s.right().size(), 1);
        let prod = Arc::new(triv.product(&reg).unwrap());
        let s = abs_sequence(&prod).unwrap();
        assert_eq!(s.f.map, vec![0, 4, 8]);
    }
}
