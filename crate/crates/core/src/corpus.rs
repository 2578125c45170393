//! Seeded generation of structures, sequences and diagrams over `T(ℤ/n)`.
//!
//! Modules are `T`-images of the `ℤ/n`-modules `ℤ/d` (`d | n`) and of
//! products of two of them. Short exact sequences come from submodules and
//! their quotients; vertical maps in diagrams are drawn from constrained Hom
//! searches. A twist moves every module of a diagram to the action induced
//! at a random base point and conjugates the maps, so that witnesses and
//! absorbers are not always `0`.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::is_exact_at;
use crate::heap::{heap_of_group, FiniteGroup, FiniteHeap};
use crate::hom::{HomSearch, DEFAULT_HOM_BUDGET};
use crate::io::{diagram_from_maps, Diagram, Shape};
use crate::oracle;
use crate::module::{quotient_module, FiniteModule, ModuleMorphism, Submodule};
use crate::ring_module::{FiniteRingModule, RingModuleMorphism, TFunctor};
use crate::truss::{truss_of_ring, FiniteRing, FiniteTruss};

/// Largest product ring in the axiom corpus; heap validation is `O(n⁵)`.
pub const PRODUCT_RING_LIMIT: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusConfig {
    /// Base rings `ℤ/n`.
    pub rings: Vec<usize>,
    /// Bound on module carriers.
    pub max_size: usize,
    pub seed: u64,
    /// Instances per shape.
    pub count: usize,
    pub hom_budget: u128,
    /// Whether diagrams may be moved to induced actions.
    pub twist: bool,
    /// Appends a diagram with a broken square to the snake corpus.
    pub inject_corrupt: bool,
}

impl Default for CorpusConfig {
    fn default() -> Self {
        Self {
            rings: vec![2, 3, 4],
            max_size: 9,
            seed: 7,
            count: 60,
            hom_budget: DEFAULT_HOM_BUDGET,
            twist: true,
            inject_corrupt: false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Labeled<T> {
    pub label: String,
    pub item: T,
}

fn labeled<T>(label: String, item: T) -> Labeled<T> {
    Labeled { label, item }
}

const STREAM_AXIOMS: u64 = 1;
const STREAM_SNAKE: u64 = 2;
const STREAM_GRID: u64 = 3;
const STREAM_FIVE: u64 = 4;
const STREAM_SHORT_FIVE: u64 = 5;
const STREAM_SES: u64 = 6;
const STREAM_SPLIT: u64 = 7;
const STREAM_HOM: u64 = 8;
const STREAM_ABS: u64 = 9;
const STREAM_MUTANTS: u64 = 10;

pub(crate) fn rng(cfg: &CorpusConfig, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(cfg.seed);
    r.set_stream(stream);
    r
}

/// `ℤ/d` as a `ℤ/n`-module, `d | n`.
pub fn cyclic_module(ring: &Arc<FiniteRing>, d: usize) -> Result<FiniteRingModule> {
    if d == 0 || ring.size() % d != 0 {
        return Err(Error::Precondition(format!("{d} does not divide {}", ring.size())));
    }
    FiniteRingModule::from_fn(ring.clone(), d, 0, ring.one().is_some(), |a, b| (a + b) % d, |r, x| r * x % d)
}

pub struct RingPool {
    pub n: usize,
    pub functor: TFunctor,
    pub ring_modules: Vec<Labeled<Arc<FiniteRingModule>>>,
    /// `T`-images of `ring_modules`, same order, followed by modules with the
    /// identity action and their products with the cyclic ones.
    pub modules: Vec<Arc<FiniteModule>>,
    pub labels: Vec<String>,
}

impl RingPool {
    pub fn new(n: usize, max_size: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        let functor = TFunctor::new(Arc::new(FiniteRing::zn(n)))?;
        let ring = functor.ring.clone();
        let divisors: Vec<usize> = (1..=n).filter(|d| n % d == 0 && *d <= max_size.max(1)).collect();
        let mut ring_modules = Vec::new();
        for &d in &divisors {
            ring_modules.push(labeled(format!("Z{d}"), Arc::new(cyclic_module(&ring, d)?)));
        }
        for (i, &a) in divisors.iter().enumerate() {
            for &b in &divisors[i..] {
                if a > 1 && a * b <= max_size {
                    let m = cyclic_module(&ring, a)?.product(&cyclic_module(&ring, b)?)?;
                    ring_modules.push(labeled(format!("Z{a}xZ{b}"), Arc::new(m)));
                }
            }
        }
        let mut modules: Vec<Arc<FiniteModule>> = ring_modules.iter().map(|m| functor.module(&m.item).map(Arc::new)).collect::<Result<_>>()?;
        let mut labels: Vec<String> = ring_modules.iter().map(|m| m.label.clone()).collect();
        let cyclic = modules[..divisors.len()].to_vec();
        for &k in divisors.iter().filter(|&&k| k > 1) {
            let triv = Arc::new(FiniteModule::trivial_action(functor.truss.clone(), Arc::new(FiniteHeap::cyclic(k))));
            for (m, &d) in cyclic.iter().zip(&divisors).filter(|(_, &d)| d > 1 && d * k <= max_size) {
                modules.push(Arc::new(m.product(&triv)?));
                labels.push(format!("Z{d}xI{k}"));
            }
            modules.push(triv);
            labels.push(format!("I{k}"));
        }
        Ok(Self { n, functor, ring_modules, modules, labels })
    }

    fn module_within(&self, rng: &mut ChaCha8Rng, bound: usize) -> &Arc<FiniteModule> {
        let fits: Vec<&Arc<FiniteModule>> = self.modules.iter().filter(|m| m.size() <= bound.max(1)).collect();
        fits.choose(rng).expect("the singleton module always fits")
    }
}

pub fn pools(cfg: &CorpusConfig) -> Result<Vec<RingPool>> {
    if cfg.rings.is_empty() {
        return Err(Error::Precondition("no base rings".into()));
    }
    cfg.rings.iter().map(|&n| RingPool::new(n, cfg.max_size)).collect()
}

/// Closure of `seed` under the heap operation and the action.
pub fn generated(m: &FiniteModule, seed: &[usize]) -> Vec<usize> {
    let n = m.size();
    let mut mask = vec![false; n];
    for &s in seed {
        mask[s] = true;
    }
    loop {
        let current: Vec<usize> = (0..n).filter(|&x| mask[x]).collect();
        let mut grew = false;
        let mut add = |v: usize, mask: &mut Vec<bool>| {
            if !mask[v] {
                mask[v] = true;
                grew = true;
            }
        };
        for &a in &current {
            for &b in &current {
                for &c in &current {
                    add(m.op(a, b, c), &mut mask);
                }
            }
            for t in 0..m.truss().size() {
                add(m.act(t, a), &mut mask);
            }
        }
        if !grew {
            return current;
        }
    }
}

/// Submodules through `base` generated by at most two further elements.
pub fn submodules(m: &FiniteModule, base: usize) -> Vec<Vec<usize>> {
    let mut out = BTreeSet::new();
    for x in 0..m.size() {
        for y in x..m.size() {
            out.insert(generated(m, &[base, x, y]));
        }
    }
    out.into_iter().collect()
}

/// `⋆ → S → M → M/S → ⋆`.
pub fn ses_from_submodule(m: &Arc<FiniteModule>, sub: &[usize]) -> Result<(ModuleMorphism, ModuleMorphism)> {
    let s = Submodule::new(m.clone(), sub.iter().copied())?;
    let f = s.embed().inclusion;
    let g = quotient_module(m, &s)?.projection;
    Ok((f, g))
}

fn random_ses(pool: &RingPool, rng: &mut ChaCha8Rng, bound: usize) -> Result<(ModuleMorphism, ModuleMorphism)> {
    let m = pool.module_within(rng, bound).clone();
    let subs = submodules(&m, 0);
    ses_from_submodule(&m, subs.choose(rng).expect("the whole module is a submodule"))
}

fn choose_map(rng: &mut ChaCha8Rng, mut maps: Vec<ModuleMorphism>, prefer_iso: bool) -> Option<ModuleMorphism> {
    if prefer_iso && maps.iter().any(ModuleMorphism::is_bijective) {
        maps.retain(ModuleMorphism::is_bijective);
    }
    if maps.is_empty() {
        return None;
    }
    let i = rng.gen_range(0..maps.len());
    Some(maps.swap_remove(i))
}

/// Vertical maps `v₀, …, v_k` between two rows of `k` maps with every square
/// commuting, drawn one after another; constant maps to `0` if the draws keep
/// failing.
fn fill_verticals(top: &[ModuleMorphism], bottom: &[ModuleMorphism], rng: &mut ChaCha8Rng, budget: u128, prefer_iso: bool) -> Result<Vec<ModuleMorphism>> {
    let node = |row: &[ModuleMorphism], i: usize| if i == 0 { row[0].dom.clone() } else { row[i - 1].cod.clone() };
    'attempt: for _ in 0..20 {
        let first = HomSearch::new(node(top, 0), node(bottom, 0))?.collect(budget)?;
        let Some(mut prev) = choose_map(rng, first, prefer_iso) else { continue };
        let mut out = vec![prev.clone()];
        for (t, b) in top.iter().zip(bottom) {
            let mut search = HomSearch::new(t.cod.clone(), b.cod.clone())?;
            for x in 0..t.dom.size() {
                search = search.restrict(t.apply(x), [b.apply(prev.apply(x))]);
            }
            let Some(next) = choose_map(rng, search.collect(budget)?, prefer_iso) else { continue 'attempt };
            out.push(next.clone());
            prev = next;
        }
        return Ok(out);
    }
    (0..=top.len()).map(|i| ModuleMorphism::constant(node(top, i), node(bottom, i), 0)).collect()
}

struct Node {
    old: Arc<FiniteModule>,
    new: Arc<FiniteModule>,
    tau: Vec<usize>,
    inverse: Vec<usize>,
}

/// Moves every module to the action induced at a random point `e`, through
/// `x ↦ [x, a, e]` with `a` an absorber, and conjugates the maps.
pub fn twist(maps: &[ModuleMorphism], rng: &mut ChaCha8Rng) -> Result<Vec<ModuleMorphism>> {
    let mut nodes: Vec<Node> = Vec::new();
    let mut index = |m: &Arc<FiniteModule>, rng: &mut ChaCha8Rng| -> Result<usize> {
        if let Some(i) = nodes.iter().position(|n| Arc::ptr_eq(&n.old, m)) {
            return Ok(i);
        }
        let node = match m.absorbers().first() {
            None => Node { old: m.clone(), new: m.clone(), tau: (0..m.size()).collect(), inverse: (0..m.size()).collect() },
            Some(&a) => {
                let e = rng.gen_range(0..m.size());
                Node {
                    old: m.clone(),
                    new: Arc::new(m.induced(e)?),
                    tau: (0..m.size()).map(|x| m.op(x, a, e)).collect(),
                    inverse: (0..m.size()).map(|y| m.op(y, e, a)).collect(),
                }
            }
        };
        nodes.push(node);
        Ok(nodes.len() - 1)
    };
    let mut ends = Vec::with_capacity(maps.len());
    for f in maps {
        ends.push((index(&f.dom, rng)?, index(&f.cod, rng)?));
    }
    maps.iter()
        .zip(ends)
        .map(|(f, (d, c))| {
            let (d, c) = (&nodes[d], &nodes[c]);
            ModuleMorphism::from_fn(d.new.clone(), c.new.clone(), |x| c.tau[f.apply(d.inverse[x])])
        })
        .collect()
}

fn maybe_twist(cfg: &CorpusConfig, maps: Vec<ModuleMorphism>, rng: &mut ChaCha8Rng, label: &mut String) -> Result<Vec<ModuleMorphism>> {
    if cfg.twist && rng.gen_bool(0.5) {
        label.push_str("/twisted");
        twist(&maps, rng)
    } else {
        Ok(maps)
    }
}

fn pool_for<'a>(pools: &'a [RingPool], i: usize) -> &'a RingPool {
    &pools[i % pools.len()]
}

/// Top row exact at `M` with `ψ` onto, possibly with a non-injective `φ`;
/// bottom row a short exact sequence.
fn snake_maps(pool: &RingPool, cfg: &CorpusConfig, rng: &mut ChaCha8Rng, widen: bool, same_rows: bool, prefer_iso: bool) -> Result<Vec<ModuleMorphism>> {
    let (phi0, psi) = random_ses(pool, rng, cfg.max_size)?;
    let phi = if widen {
        let z = pool.module_within(rng, cfg.max_size / phi0.dom.size().max(1)).clone();
        let k = z.size();
        let prod = Arc::new(phi0.dom.product(&z)?);
        ModuleMorphism::from_fn(prod, phi0.cod.clone(), |x| phi0.apply(x / k))?
    } else {
        phi0.clone()
    };
    let (phi1, psi1) = if same_rows { (phi0, psi.clone()) } else { random_ses(pool, rng, cfg.max_size)? };
    let v = fill_verticals(&[phi.clone(), psi.clone()], &[phi1.clone(), psi1.clone()], rng, cfg.hom_budget, prefer_iso)?;
    let [a, b, c]: [ModuleMorphism; 3] = v.try_into().expect("three verticals");
    Ok(vec![phi, psi, phi1, psi1, a, b, c])
}

/// Snake diagrams with arbitrary vertical maps.
pub fn snakes(cfg: &CorpusConfig) -> Result<Vec<Labeled<Diagram>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_SNAKE);
    let mut out = Vec::with_capacity(cfg.count + 1);
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let widen = rng.gen_bool(0.3);
        let same = !widen && rng.gen_bool(0.3);
        let mut label = format!("snake/Z{}/{i}", pool.n);
        let maps = snake_maps(pool, cfg, &mut rng, widen, same, false)?;
        let maps = maybe_twist(cfg, maps, &mut rng, &mut label)?;
        out.push(labeled(label, diagram_from_maps(Shape::Snake, &maps, None)?));
    }
    if cfg.inject_corrupt {
        out.push(corrupted_snake()?);
    }
    Ok(out)
}

/// The `ℤ/2 → ℤ/4 → ℤ/2` square with `f″` replaced by a map that breaks
/// the right-hand square.
pub fn corrupted_snake() -> Result<Labeled<Diagram>> {
    let pool = RingPool::new(4, 4)?;
    let z4 = pool.modules.iter().find(|m| m.size() == 4).expect("Z4").clone();
    let (f, g) = ses_from_submodule(&z4, &[0, 2])?;
    let mid = ModuleMorphism::identity(z4);
    let left = ModuleMorphism::identity(f.dom.clone());
    let right = ModuleMorphism::constant(g.cod.clone(), g.cod.clone(), 0)?;
    let maps = vec![f.clone(), g.clone(), f, g, left, mid, right];
    Ok(labeled("snake/Z4/corrupted".into(), diagram_from_maps(Shape::Snake, &maps, None)?))
}

/// Short-five instances: two short exact rows with vertical maps, favouring
/// isomorphisms on half of them.
pub fn short_fives(cfg: &CorpusConfig) -> Result<Vec<Labeled<Diagram>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_SHORT_FIVE);
    let mut out = Vec::with_capacity(cfg.count);
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let same = rng.gen_bool(0.5);
        let prefer_iso = rng.gen_bool(0.5);
        let mut label = format!("short-five/Z{}/{i}", pool.n);
        let maps = snake_maps(pool, cfg, &mut rng, false, same, prefer_iso)?;
        let maps = maybe_twist(cfg, maps, &mut rng, &mut label)?;
        out.push(labeled(label, diagram_from_maps(Shape::Snake, &maps, None)?));
    }
    Ok(out)
}

/// `S → B → (B/S)×W → W×V → V`, exact at the three inner nodes.
fn five_row(pool: &RingPool, cfg: &CorpusConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ModuleMorphism>> {
    let (i, p) = random_ses(pool, rng, cfg.max_size)?;
    let q = p.cod.clone();
    let w = pool.module_within(rng, cfg.max_size / q.size()).clone();
    let v = pool.module_within(rng, cfg.max_size / w.size()).clone();
    let (kw, kv) = (w.size(), v.size());
    let c = Arc::new(q.product(&w)?);
    let d = Arc::new(w.product(&v)?);
    let into_c = ModuleMorphism::from_fn(p.dom.clone(), c.clone(), |x| p.apply(x) * kw)?;
    let into_d = ModuleMorphism::from_fn(c, d.clone(), |y| (y % kw) * kv)?;
    let onto_v = ModuleMorphism::from_fn(d, v, |z| z % kv)?;
    Ok(vec![i, into_c, into_d, onto_v])
}

/// Five-lemma instances: two exact rows of four maps with vertical maps.
pub fn fives(cfg: &CorpusConfig) -> Result<Vec<Labeled<Diagram>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_FIVE);
    let mut out = Vec::with_capacity(cfg.count);
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let top = five_row(pool, cfg, &mut rng)?;
        let bottom = if rng.gen_bool(0.5) { top.clone() } else { five_row(pool, cfg, &mut rng)? };
        let prefer_iso = rng.gen_bool(0.5);
        let vertical = fill_verticals(&top, &bottom, &mut rng, cfg.hom_budget, prefer_iso)?;
        let mut label = format!("five/Z{}/{i}", pool.n);
        let maps: Vec<ModuleMorphism> = top.into_iter().chain(bottom).chain(vertical).collect();
        let maps = maybe_twist(cfg, maps, &mut rng, &mut label)?;
        out.push(labeled(label, diagram_from_maps(Shape::Row2x5, &maps, None)?));
    }
    Ok(out)
}

fn index_in(elems: &[usize], x: usize) -> usize {
    elems.binary_search(&x).expect("element of the submodule")
}

/// A 3×3 grid from submodules `K, L` of `B`, `X ⊆ K ∩ L` and
/// `Y ⊇ (K+L)/K` in `B/K`:
///
/// ```text
/// X → K → K/X
/// L → B → B/L
/// Y → B/K → (B/K)/Y
/// ```
///
/// The outer columns are short exact exactly when `X = K ∩ L` and
/// `Y = (K+L)/K`.
fn grid_maps(pool: &RingPool, cfg: &CorpusConfig, rng: &mut ChaCha8Rng) -> Result<Vec<ModuleMorphism>> {
    let b = pool.module_within(rng, cfg.max_size).clone();
    let subs = submodules(&b, 0);
    let k = subs.choose(rng).expect("non-empty").clone();
    let l = subs.choose(rng).expect("non-empty").clone();
    let meet: Vec<usize> = k.iter().copied().filter(|x| l.contains(x)).collect();
    let x = if rng.gen_bool(0.5) { meet.clone() } else { generated(&b, &[0, *meet.choose(rng).expect("0 is in both")]) };

    let km = Submodule::new(b.clone(), k.iter().copied())?.embed();
    let lm = Submodule::new(b.clone(), l.iter().copied())?.embed();
    let xm = Submodule::new(b.clone(), x.iter().copied())?.embed();
    let x_in_k: Vec<usize> = x.iter().map(|&e| index_in(&k, e)).collect();
    let qx = quotient_module(&km.module, &Submodule::new(km.module.clone(), x_in_k.iter().copied())?)?;
    let ql = quotient_module(&b, &Submodule::new(b.clone(), l.iter().copied())?)?;
    let qk = quotient_module(&b, &Submodule::new(b.clone(), k.iter().copied())?)?;
    let bk = qk.module.clone();
    let l_image: Vec<usize> = l.iter().map(|&e| qk.partition.class_of(e)).collect();
    let mut seed = l_image.clone();
    if rng.gen_bool(0.5) {
        seed.push(rng.gen_range(0..bk.size()));
    }
    let y = generated(&bk, &seed);
    let ym = Submodule::new(bk.clone(), y.iter().copied())?.embed();
    let qy = quotient_module(&bk, &Submodule::new(bk.clone(), y.iter().copied())?)?;

    let f1 = ModuleMorphism::new(xm.module.clone(), km.module.clone(), x_in_k)?;
    let g1 = qx.projection.clone();
    let f2 = lm.inclusion.clone();
    let g2 = ql.projection.clone();
    let f3 = ym.inclusion.clone();
    let g3 = qy.projection.clone();
    let a1 = ModuleMorphism::new(xm.module.clone(), lm.module.clone(), x.iter().map(|&e| index_in(&l, e)).collect())?;
    let a2 = ModuleMorphism::from_fn(lm.module.clone(), ym.module.clone(), |i| index_in(&y, qk.partition.class_of(l[i])))?;
    let b1 = km.inclusion.clone();
    let b2 = qk.projection.clone();
    let c1 = ModuleMorphism::from_fn(qx.module.clone(), ql.module.clone(), |c| {
        ql.partition.class_of(k[qx.partition.representative(c)])
    })?;
    let c2 = ModuleMorphism::from_fn(ql.module.clone(), qy.module.clone(), |c| {
        qy.partition.class_of(qk.partition.class_of(ql.partition.representative(c)))
    })?;
    Ok(vec![f1, g1, f2, g2, f3, g3, a1, a2, b1, b2, c1, c2])
}

/// Valid 3×3 grids, about half with non-exact outer columns.
pub fn grids(cfg: &CorpusConfig) -> Result<Vec<Labeled<Diagram>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_GRID);
    let mut out = Vec::with_capacity(cfg.count);
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let mut label = format!("nine/Z{}/{i}", pool.n);
        let maps = grid_maps(pool, cfg, &mut rng)?;
        let maps = maybe_twist(cfg, maps, &mut rng, &mut label)?;
        out.push(labeled(label, diagram_from_maps(Shape::Grid3x3, &maps, None)?));
    }
    Ok(out)
}

/// Changes one entry of one map whose codomain has at least two elements.
pub fn mutate_diagram(d: &Diagram, rng: &mut ChaCha8Rng) -> Option<Diagram> {
    let candidates: Vec<usize> = (0..d.maps.len()).filter(|&i| d.maps[i].morphism.cod.size() > 1).collect();
    let &i = candidates.choose(rng)?;
    let m = &d.maps[i].morphism;
    let x = rng.gen_range(0..m.dom.size());
    let shift = rng.gen_range(1..m.cod.size());
    let mut map = m.map.clone();
    map[x] = (map[x] + shift) % m.cod.size();
    let mut out = d.clone();
    out.maps[i].morphism = ModuleMorphism::new(m.dom.clone(), m.cod.clone(), map).ok()?;
    out.maps[i].name = Some(format!("mutated at {x}"));
    Some(out)
}

/// Grids with one corrupted map entry.
pub fn grid_mutants(cfg: &CorpusConfig) -> Result<Vec<Labeled<Diagram>>> {
    let mut rng = rng(cfg, STREAM_MUTANTS);
    Ok(grids(cfg)?
        .into_iter()
        .filter_map(|g| mutate_diagram(&g.item, &mut rng).map(|d| labeled(format!("{}/mutant", g.label), d)))
        .collect())
}

/// `ℤ/(n/d) → ℤ/n → ℤ/d` for every proper divisor `d` of each base ring.
fn canonical_sequences(pools: &[RingPool]) -> Result<Vec<Labeled<Diagram>>> {
    let mut out = Vec::new();
    for pool in pools {
        let Some(zn) = pool.modules.iter().zip(&pool.ring_modules).find(|(_, r)| r.label == format!("Z{}", pool.n)) else { continue };
        for d in (2..pool.n).filter(|d| pool.n % d == 0) {
            let sub: Vec<usize> = (0..pool.n).step_by(d).collect();
            let (f, g) = ses_from_submodule(zn.0, &sub)?;
            out.push(labeled(format!("ses/Z{}/canonical-{d}", pool.n), diagram_from_maps(Shape::Ses, &[f, g], None)?));
        }
    }
    Ok(out)
}

/// Canonical sequences, `count` random short exact sequences and `count`
/// mutants in which `f` or `g` is replaced by another T-linear map.
pub fn sequences(cfg: &CorpusConfig) -> Result<Vec<Labeled<Diagram>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_SES);
    let mut out = canonical_sequences(&pools)?;
    let mut mutants = Vec::new();
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let (f, g) = random_ses(pool, &mut rng, cfg.max_size)?;
        let mut label = format!("ses/Z{}/{i}", pool.n);
        let maps = maybe_twist(cfg, vec![f, g], &mut rng, &mut label)?;
        let replace = rng.gen_range(0..2);
        let old = &maps[replace];
        let others: Vec<ModuleMorphism> = HomSearch::new(old.dom.clone(), old.cod.clone())?
            .collect(cfg.hom_budget)?
            .into_iter()
            .filter(|m| m.map != old.map)
            .collect();
        if let Some(m) = others.choose(&mut rng) {
            let mut mutant = maps.clone();
            mutant[replace] = m.clone();
            mutants.push(labeled(format!("{label}/mutant-{}", ["f", "g"][replace]), diagram_from_maps(Shape::Ses, &mutant, None)?));
        }
        out.push(labeled(label, diagram_from_maps(Shape::Ses, &maps, None)?));
    }
    out.extend(mutants);
    Ok(out)
}

/// Short exact sequences for the splitting engine: product sequences,
/// submodule sequences and the canonical ones.
pub fn splits(cfg: &CorpusConfig) -> Result<Vec<Labeled<Diagram>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_SPLIT);
    let mut out = canonical_sequences(&pools)?;
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let (maps, mut label) = if rng.gen_bool(0.5) {
            let a = pool.module_within(&mut rng, cfg.max_size).clone();
            let b = pool.module_within(&mut rng, cfg.max_size / a.size()).clone();
            let k = b.size();
            let ab = Arc::new(a.product(&b)?);
            let f = ModuleMorphism::from_fn(a, ab.clone(), |x| x * k)?;
            let g = ModuleMorphism::from_fn(ab, b, |x| x % k)?;
            (vec![f, g], format!("split/Z{}/{i}/product", pool.n))
        } else {
            let (f, g) = random_ses(pool, &mut rng, cfg.max_size)?;
            (vec![f, g], format!("split/Z{}/{i}", pool.n))
        };
        let maps = maybe_twist(cfg, maps, &mut rng, &mut label)?;
        out.push(labeled(label, diagram_from_maps(Shape::Ses, &maps, None)?));
    }
    Ok(out)
}

/// `⋆ → M → N → P` exact at `N` with absorbing witness `e`, and a test
/// module `Q`.
#[derive(Debug, Clone)]
pub struct HomCase {
    pub q: Arc<FiniteModule>,
    pub f: ModuleMorphism,
    pub g: ModuleMorphism,
    pub e: usize,
}

/// Hom cases with `|Q| ≤ q_max`, half of them with `g` not onto.
pub fn hom_cases(cfg: &CorpusConfig, q_max: usize) -> Result<Vec<Labeled<HomCase>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_HOM);
    let mut out = Vec::with_capacity(cfg.count);
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let (f, g, mut label) = if rng.gen_bool(0.5) {
            let (f, g) = random_ses(pool, &mut rng, cfg.max_size)?;
            (f, g, format!("hom/Z{}/{i}", pool.n))
        } else {
            let row = five_row(pool, cfg, &mut rng)?;
            (row[0].clone(), row[1].clone(), format!("hom/Z{}/{i}/not-onto", pool.n))
        };
        let maps = maybe_twist(cfg, vec![f, g], &mut rng, &mut label)?;
        let [f, g]: [ModuleMorphism; 2] = maps.try_into().expect("two maps");
        let e = is_exact_at(&f, &g)?.ok_or_else(|| Error::Consistency(format!("{label}: generated sequence is not exact")))?;
        let qs: Vec<&Arc<FiniteModule>> = pool.modules.iter().filter(|m| m.size() > 1 && m.size() <= q_max).collect();
        let mut q = match qs.choose(&mut rng) {
            Some(&q) => q.clone(),
            None => pool.module_within(&mut rng, q_max).clone(),
        };
        if cfg.twist && rng.gen_bool(0.5) {
            q = Arc::new(q.induced(rng.gen_range(0..q.size()))?);
        }
        out.push(labeled(label, HomCase { q, f, g, e }));
    }
    Ok(out)
}

/// Inputs for the `(−)_Abs` checks.
#[derive(Debug, Clone)]
pub enum AbsCase {
    /// An `R`-module, for `T(N)_Abs ≅ N`.
    Module(TFunctor, Arc<FiniteRingModule>),
    /// A short exact sequence of `R`-modules.
    RingSequence(TFunctor, RingModuleMorphism, RingModuleMorphism),
    /// A short exact sequence of `T(R)`-modules, possibly twisted.
    TrussSequence(TFunctor, ModuleMorphism, ModuleMorphism),
    /// Composable `R`-linear maps, for functoriality.
    Composable(TFunctor, ModuleMorphism, ModuleMorphism),
}

pub fn abs_cases(cfg: &CorpusConfig) -> Result<Vec<Labeled<AbsCase>>> {
    let pools = pools(cfg)?;
    let mut rng = rng(cfg, STREAM_ABS);
    let mut out = Vec::new();
    for pool in &pools {
        for m in &pool.ring_modules {
            out.push(labeled(format!("abs/Z{}/{}", pool.n, m.label), AbsCase::Module(pool.functor.clone(), m.item.clone())));
        }
    }
    for i in 0..cfg.count {
        let pool = pool_for(&pools, i);
        let functor = pool.functor.clone();
        let j = rng.gen_range(0..pool.ring_modules.len());
        let (rm, tm) = (&pool.ring_modules[j].item, &pool.modules[j]);
        let subs = submodules(tm, 0);
        let sub = subs.choose(&mut rng).expect("non-empty");
        let (f, g) = (rm.submodule(sub)?, rm.quotient(sub)?);
        out.push(labeled(format!("abs/Z{}/{i}/ring-sequence", pool.n), AbsCase::RingSequence(functor.clone(), f, g)));

        let (f, g) = random_ses(pool, &mut rng, cfg.max_size)?;
        let mut label = format!("abs/Z{}/{i}/sequence", pool.n);
        let maps = maybe_twist(cfg, vec![f, g], &mut rng, &mut label)?;
        let [f, g]: [ModuleMorphism; 2] = maps.try_into().expect("two maps");
        out.push(labeled(label, AbsCase::TrussSequence(functor.clone(), f, g)));

        let a = pool.modules.choose(&mut rng).expect("non-empty").clone();
        let b = pool.modules.choose(&mut rng).expect("non-empty").clone();
        let c = pool.modules.choose(&mut rng).expect("non-empty").clone();
        let f = HomSearch::new(a, b.clone())?.collect(cfg.hom_budget)?;
        let g = HomSearch::new(b, c)?.collect(cfg.hom_budget)?;
        let f = f.choose(&mut rng).expect("the zero map").clone();
        let g = g.choose(&mut rng).expect("the zero map").clone();
        out.push(labeled(format!("abs/Z{}/{i}/composable", pool.n), AbsCase::Composable(functor, f, g)));
    }
    Ok(out)
}

/// Heaps, trusses and modules for the axiom checks: everything built from
/// the base rings, their products of size at most [`PRODUCT_RING_LIMIT`],
/// and the heaps of a few non-abelian groups.
pub struct AxiomCorpus {
    pub heaps: Vec<Labeled<Arc<FiniteHeap>>>,
    pub trusses: Vec<Labeled<Arc<FiniteTruss>>>,
    pub modules: Vec<Labeled<Arc<FiniteModule>>>,
}

pub fn axiom_corpus(cfg: &CorpusConfig) -> Result<AxiomCorpus> {
    let mut rng = rng(cfg, STREAM_AXIOMS);
    let mut rings: Vec<(String, FiniteRing)> = cfg.rings.iter().map(|&n| (format!("Z{n}"), FiniteRing::zn(n))).collect();
    for (i, &a) in cfg.rings.iter().enumerate() {
        for &b in &cfg.rings[i..] {
            if a * b <= PRODUCT_RING_LIMIT {
                rings.push((format!("Z{a}xZ{b}"), FiniteRing::zn(a).product(&FiniteRing::zn(b))));
            }
        }
    }
    let mut corpus = AxiomCorpus { heaps: Vec::new(), trusses: Vec::new(), modules: Vec::new() };
    for (name, g) in [("S3", FiniteGroup::symmetric3()), ("D4", FiniteGroup::dihedral4()), ("Q8", FiniteGroup::quaternion())] {
        corpus.heaps.push(labeled(format!("heap/H({name})"), Arc::new(heap_of_group(&g))));
    }
    for (name, ring) in rings {
        let ring = Arc::new(ring);
        let truss = Arc::new(truss_of_ring(&ring)?);
        corpus.heaps.push(labeled(format!("heap/H({name})"), truss.heap().clone()));
        corpus.trusses.push(labeled(format!("truss/T({name})"), truss.clone()));
        let functor = TFunctor { ring: ring.clone(), truss: truss.clone() };
        let regular = Arc::new(functor.module(&FiniteRingModule::regular(ring.clone()))?);
        let e = rng.gen_range(0..regular.size());
        corpus.modules.push(labeled(format!("module/T({name})/induced-{e}"), Arc::new(regular.induced(e)?)));
        corpus.modules.push(labeled(format!("module/T({name})"), regular));
        if let Some(n) = name.strip_prefix('Z').and_then(|n| n.parse::<usize>().ok()) {
            for d in (2..n).filter(|d| n % d == 0 && *d <= cfg.max_size) {
                let m = functor.module(&cyclic_module(&ring, d)?)?;
                corpus.modules.push(labeled(format!("module/T({name})/Z{d}"), Arc::new(m)));
            }
            let triv = FiniteModule::trivial_action(truss.clone(), Arc::new(FiniteHeap::cyclic(2)));
            corpus.modules.push(labeled(format!("module/T({name})/trivial-Z2"), Arc::new(triv)));
        }
    }
    Ok(corpus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Heap,
    Truss,
    Module,
}

/// Result of validating a single-entry corruption.
#[derive(Debug, Clone, Serialize)]
pub struct Mutant {
    pub label: String,
    /// Rejected by the validator.
    pub caught: bool,
    /// Still a valid structure according to [`crate::oracle`]; such a
    /// corruption cannot be caught.
    pub equivalent: bool,
}

fn corrupt(table: &mut [usize], bound: usize, rng: &mut ChaCha8Rng) -> usize {
    let i = rng.gen_range(0..table.len());
    table[i] = (table[i] + rng.gen_range(1..bound)) % bound;
    i
}

/// `count` single-entry corruptions of structures of the given kind with at
/// least two elements, each validated.
pub fn mutants(cfg: &CorpusConfig, corpus: &AxiomCorpus, kind: StructureKind, count: usize) -> Result<Vec<Mutant>> {
    let mut rng = rng(cfg, STREAM_MUTANTS + 1 + kind as u64);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let mutant = match kind {
            StructureKind::Heap => {
                let h = corpus.heaps.iter().filter(|h| h.item.size() > 1).collect::<Vec<_>>();
                let h = h.choose(&mut rng).ok_or(Error::EmptyCarrier)?;
                let mut op = h.item.table().to_vec();
                let i = corrupt(&mut op, h.item.size(), &mut rng);
                let equivalent = oracle::is_heap(h.item.size(), &op);
                let caught = FiniteHeap::new(h.item.size(), op)?.validate().is_err();
                Mutant { label: format!("{}/op[{i}]", h.label), caught, equivalent }
            }
            StructureKind::Truss => {
                let t = corpus.trusses.iter().filter(|t| t.item.size() > 1).collect::<Vec<_>>();
                let t = t.choose(&mut rng).ok_or(Error::EmptyCarrier)?;
                let n = t.item.size();
                let (mut op, mut mul) = (t.item.heap().table().to_vec(), t.item.mul_table().to_vec());
                let label = if rng.gen_bool(0.5) {
                    format!("{}/op[{}]", t.label, corrupt(&mut op, n, &mut rng))
                } else {
                    format!("{}/mul[{}]", t.label, corrupt(&mut mul, n, &mut rng))
                };
                let equivalent = oracle::is_truss(n, &op, &mul, t.item.one());
                let truss = FiniteTruss::new(Arc::new(FiniteHeap::new(n, op)?), mul, t.item.one())?;
                Mutant { label, caught: !matches!(truss.validate(), Ok(Ok(()))), equivalent }
            }
            StructureKind::Module => {
                let m = corpus.modules.iter().filter(|m| m.item.size() > 1).collect::<Vec<_>>();
                let m = m.choose(&mut rng).ok_or(Error::EmptyCarrier)?;
                let n = m.item.size();
                let (mut op, mut act) = (m.item.heap().table().to_vec(), m.item.act_table().to_vec());
                let label = if rng.gen_bool(0.5) {
                    format!("{}/op[{}]", m.label, corrupt(&mut op, n, &mut rng))
                } else {
                    format!("{}/act[{}]", m.label, corrupt(&mut act, n, &mut rng))
                };
                let tr = m.item.truss();
                let equivalent = oracle::is_module((tr.size(), tr.heap().table(), tr.mul_table(), tr.one()), n, &op, &act, m.item.is_unital());
                let module = FiniteModule::new(tr.clone(), Arc::new(FiniteHeap::new(n, op)?), act, m.item.is_unital())?;
                Mutant { label, caught: !matches!(module.validate(), Ok(Ok(()))), equivalent }
            }
        };
        out.push(mutant);
    }
    Ok(out)
}
