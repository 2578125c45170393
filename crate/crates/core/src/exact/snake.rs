//! The snake lemma with an explicit connecting map.

use std::sync::Arc;

use serde::Serialize;

use crate::diagram::SnakeDiagram;
use crate::error::{Error, Result};
use crate::exact::is_exact_at;
use crate::module::{quotient_module, FiniteModule, ModuleMorphism, ModuleQuotient, Submodule};

/// The six-term sequence
/// `ker f′ → ker f → ker f″ → N′/Im f′ → N/Im f → N″/Im f″`
/// with kernels over `f′(e′)`, `φ₁f′(e′)`, `ψ₁φ₁f′(e′)`.
#[derive(Debug, Clone, Serialize)]
pub struct SnakeResult {
    pub e_prime: usize,
    /// Members of the three kernels, in the ambient indexing.
    pub kernels: [Vec<usize>; 3],
    /// Classes of the three cokernels, in the ambient indexing.
    pub cokernels: [Vec<Vec<usize>>; 3],
    /// `φ₀, ψ₀, δ, φ₂, ψ₂` as tables over kernel positions and class indices.
    pub maps: SnakeMaps,
    /// Witnesses at `ker f`, `ker f″`, `N′/Im f′`, `N/Im f`.
    pub witnesses: [usize; 4],
    /// Number of `(a″, a)` pairs over which δ was checked.
    pub delta_preimages_checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct SnakeMaps {
    pub phi0: Vec<usize>,
    pub psi0: Vec<usize>,
    pub delta: Vec<usize>,
    pub phi2: Vec<usize>,
    pub psi2: Vec<usize>,
}

impl SnakeResult {
    pub fn kernel_sizes(&self) -> [usize; 3] {
        [self.kernels[0].len(), self.kernels[1].len(), self.kernels[2].len()]
    }

    pub fn cokernel_sizes(&self) -> [usize; 3] {
        [self.cokernels[0].len(), self.cokernels[1].len(), self.cokernels[2].len()]
    }
}

fn kernel(f: &ModuleMorphism, base: usize, name: &str) -> Result<(Submodule, Arc<FiniteModule>)> {
    let fiber = f.fiber(base)?;
    if !fiber.action_closed {
        return Err(Error::Falsified(format!("{name} over the image of an absorber is not a submodule")));
    }
    let sub = Submodule::new(f.dom.clone(), fiber.elems)?;
    let module = sub.embed().module;
    Ok((sub, module))
}

fn cokernel(f: &ModuleMorphism) -> Result<ModuleQuotient> {
    let image = f.image_submodule()?;
    quotient_module(&f.cod, &image)
}

/// Restriction of `g` to kernels, which must map into each other.
fn restrict(g: &ModuleMorphism, from: (&Submodule, &Arc<FiniteModule>), to: (&Submodule, &Arc<FiniteModule>), name: &str) -> Result<ModuleMorphism> {
    let mut map = Vec::with_capacity(from.0.len());
    for &x in from.0.elems() {
        let y = g.apply(x);
        map.push(to.0.index_of(y).ok_or_else(|| Error::Falsified(format!("{name} sends kernel element {x} outside the next kernel")))?);
    }
    ModuleMorphism::new(from.1.clone(), to.1.clone(), map)
}

/// `x̄ ↦ g(x)‾` between cokernels, checked on every representative.
fn descend(g: &ModuleMorphism, from: &ModuleQuotient, to: &ModuleQuotient, name: &str) -> Result<ModuleMorphism> {
    let mut map = Vec::with_capacity(from.partition.len());
    for class in from.partition.classes() {
        let value = to.partition.class_of(g.apply(class[0]));
        if let Some(&x) = class.iter().find(|&&x| to.partition.class_of(g.apply(x)) != value) {
            return Err(Error::Falsified(format!("{name} is not well defined on cokernel classes at {x}")));
        }
        map.push(value);
    }
    ModuleMorphism::new(from.module.clone(), to.module.clone(), map)
}

pub fn snake(d: &SnakeDiagram, e_prime: usize) -> Result<SnakeResult> {
    let m_left = d.m_left();
    if e_prime >= m_left.size() {
        return Err(Error::OutOfRange { what: "e′", index: e_prime, size: m_left.size() });
    }
    if !m_left.is_absorber(e_prime) {
        return Err(Error::NotAbsorber(e_prime));
    }
    let base0 = d.f_left.apply(e_prime);
    let base1 = d.phi1.apply(base0);
    let base2 = d.psi1.apply(base1);
    let k0 = kernel(&d.f_left, base0, "ker f′")?;
    let k1 = kernel(&d.f_mid, base1, "ker f")?;
    let k2 = kernel(&d.f_right, base2, "ker f″")?;
    let c0 = cokernel(&d.f_left)?;
    let c1 = cokernel(&d.f_mid)?;
    let c2 = cokernel(&d.f_right)?;

    let phi0 = restrict(&d.phi, (&k0.0, &k0.1), (&k1.0, &k1.1), "φ")?;
    let psi0 = restrict(&d.psi, (&k1.0, &k1.1), (&k2.0, &k2.1), "ψ")?;
    let phi2 = descend(&d.phi1, &c0, &c1, "φ₂")?;
    let psi2 = descend(&d.psi1, &c1, &c2, "ψ₂")?;

    // δ(a″): for every a with ψ(a) = a″, f(a) = φ₁(a′) for a unique a′; the
    // class of a′ must not depend on a.
    let phi1_pre = d.phi1.preimages();
    let psi_pre = d.psi.preimages();
    let mut delta = Vec::with_capacity(k2.0.len());
    let mut checked = 0;
    for &a2 in k2.0.elems() {
        let mut value = None;
        for &a in &psi_pre[a2] {
            let n = d.f_mid.apply(a);
            let a1 = match phi1_pre[n].as_slice() {
                [a1] => *a1,
                [] => return Err(Error::Falsified(format!("δ: f({a}) = {n} is not in Im φ₁"))),
                _ => return Err(Error::Consistency("φ₁ was validated injective".into())),
            };
            let class = c0.partition.class_of(a1);
            checked += 1;
            match value {
                None => value = Some(class),
                Some(v) if v != class => {
                    return Err(Error::Falsified(format!("δ({a2}) depends on the preimage: classes {v} and {class}")))
                }
                Some(_) => {}
            }
        }
        delta.push(value.ok_or_else(|| Error::Consistency(format!("ψ was validated surjective but misses {a2}")))?);
    }
    let delta = ModuleMorphism::new(k2.1.clone(), c0.module.clone(), delta)?;

    for (name, m) in [("φ₀", &phi0), ("ψ₀", &psi0), ("δ", &delta), ("φ₂", &phi2), ("ψ₂", &psi2)] {
        m.validate().map_err(|v| Error::Falsified(format!("{name} is not T-linear: {v}")))?;
    }
    let positions = [("ker f", &phi0, &psi0), ("ker f″", &psi0, &delta), ("N′/Im f′", &delta, &phi2), ("N/Im f", &phi2, &psi2)];
    let mut witnesses = [0; 4];
    for (slot, (name, f, g)) in witnesses.iter_mut().zip(positions) {
        *slot = is_exact_at(f, g)?.ok_or_else(|| Error::Falsified(format!("snake sequence is not exact at {name}")))?;
    }
    Ok(SnakeResult {
        e_prime,
        kernels: [k0.0.elems().to_vec(), k1.0.elems().to_vec(), k2.0.elems().to_vec()],
        cokernels: [c0.partition.classes().to_vec(), c1.partition.classes().to_vec(), c2.partition.classes().to_vec()],
        maps: SnakeMaps { phi0: phi0.map, psi0: psi0.map, delta: delta.map, phi2: phi2.map, psi2: psi2.map },
        witnesses,
        delta_preimages_checked: checked,
    })
}

/// The snake for every absorber of `M′`.
#[derive(Debug, Clone, Serialize)]
pub struct SnakeSweep {
    pub results: Vec<SnakeResult>,
    /// All runs verified with the same kernel and cokernel sizes.
    pub stable: bool,
}

pub fn snake_all_absorbers(d: &SnakeDiagram) -> Result<SnakeSweep> {
    let results = d.m_left().absorbers().into_iter().map(|e| snake(d, e)).collect::<Result<Vec<_>>>()?;
    let first = &results[0];
    let stable = results
        .iter()
        .all(|r| r.kernel_sizes() == first.kernel_sizes() && r.cokernel_sizes() == first.cokernel_sizes());
    Ok(SnakeSweep { results, stable })
}

/// Smallest absorber of `M′`.
pub fn default_base(d: &SnakeDiagram) -> usize {
    d.m_left().absorbers()[0]
}
