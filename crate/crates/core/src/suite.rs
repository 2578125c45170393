//! Runs the engines over the generated corpus and collects one verdict per
//! instance into a deterministic report.

use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::abs::{abs_morphism, abs_object, find_ring_isomorphism};
use crate::corpus::{self, AbsCase, CorpusConfig, Labeled, RingPool, StructureKind};
use crate::diagram::TwoRow;
use crate::error::{Error, Result};
use crate::exact::factor::{factor_through_epi, factor_through_mono};
use crate::exact::functors::{abs_exact, hom_left_exact, t_functor_ses};
use crate::exact::lemmas::{five_lemma, induced_epi_map, induced_mono_map, nine_lemma, short_five};
use crate::exact::snake::snake_all_absorbers;
use crate::exact::split::splitting;
use crate::exact::{abs_sequence, is_short_exact, splice, ShortExactSequence};
use crate::heap::{group_of_heap, heap_of_group, FiniteGroup};
use crate::hom::HomSearch;
use crate::io::Diagram;
use crate::module::{first_isomorphism, FiniteModule, ModuleMorphism};

pub const SUITES: [&str; 8] = ["axioms", "section2", "snake", "nine", "five", "split", "hom", "abs"];

/// Share of corrupted tables the validators must reject.
pub const MUTANT_CATCH_RATE: f64 = 0.99;
pub const MUTANTS_PER_KIND: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Verified,
    Falsified,
    /// Not applicable to the instance, or over the Hom budget.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub instance: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub verified: usize,
    pub falsified: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub suite: String,
    pub config: CorpusConfig,
    pub summary: Summary,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn falsified(&self) -> bool {
        self.summary.falsified > 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.outcome == Outcome::Falsified)
    }

    pub fn of(&self, suite: &str) -> impl Iterator<Item = &Check> + '_ {
        let suite = suite.to_string();
        self.checks.iter().filter(move |c| c.suite == suite)
    }
}

fn verified(suite: &'static str, instance: impl Into<String>, data: Value) -> Check {
    Check { suite, instance: instance.into(), outcome: Outcome::Verified, detail: None, data }
}

fn failed(suite: &'static str, instance: impl Into<String>, detail: impl Into<String>) -> Check {
    Check { suite, instance: instance.into(), outcome: Outcome::Falsified, detail: Some(detail.into()), data: Value::Null }
}

fn skipped(suite: &'static str, instance: impl Into<String>, detail: impl Into<String>) -> Check {
    Check { suite, instance: instance.into(), outcome: Outcome::Skipped, detail: Some(detail.into()), data: Value::Null }
}

/// Over-budget searches are skipped; every other error on a generated
/// instance counts against it.
fn settle(suite: &'static str, instance: &str, r: Result<Value>) -> Check {
    match r {
        Ok(data) => verified(suite, instance, data),
        Err(e @ Error::BudgetExceeded { .. }) => skipped(suite, instance, e.to_string()),
        Err(e) => failed(suite, instance, e.to_string()),
    }
}

pub fn run_suite(name: &str, cfg: &CorpusConfig) -> Result<Report> {
    let names: Vec<&str> = match name {
        "all" => SUITES.to_vec(),
        n if SUITES.contains(&n) => vec![n],
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    let mut checks = Vec::new();
    for n in names {
        checks.extend(match n {
            "axioms" => axioms(cfg)?,
            "section2" => section2(cfg)?,
            "snake" => snake(cfg)?,
            "nine" => nine(cfg)?,
            "five" => five(cfg)?,
            "split" => split(cfg)?,
            "hom" => hom(cfg)?,
            "abs" => abs(cfg)?,
            _ => unreachable!("checked above"),
        });
    }
    let mut summary = Summary::default();
    for c in &checks {
        match c.outcome {
            Outcome::Verified => summary.verified += 1,
            Outcome::Falsified => summary.falsified += 1,
            Outcome::Skipped => summary.skipped += 1,
        }
    }
    Ok(Report { suite: name.to_string(), config: cfg.clone(), summary, checks })
}

pub fn axioms(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "axioms";
    let corpus = corpus::axiom_corpus(cfg)?;
    let mut out = Vec::new();
    for h in &corpus.heaps {
        out.push(match h.item.validate() {
            Ok(()) => verified(S, &h.label, json!({ "size": h.item.size() })),
            Err(v) => failed(S, &h.label, v.to_string()),
        });
    }
    for t in &corpus.trusses {
        out.push(settle(S, &t.label, t.item.validate().and_then(|v| v.map_err(Error::from)).map(|()| json!({ "size": t.item.size() }))));
    }
    for m in &corpus.modules {
        out.push(settle(S, &m.label, m.item.validate().and_then(|v| v.map_err(Error::from)).map(|()| json!({ "size": m.item.size() }))));
    }
    for kind in [StructureKind::Heap, StructureKind::Truss, StructureKind::Module] {
        let mutants = corpus::mutants(cfg, &corpus, kind, MUTANTS_PER_KIND)?;
        let label = format!("mutants/{}", serde_json::to_value(kind).expect("unit enum").as_str().expect("string"));
        let disagree: Vec<&str> = mutants.iter().filter(|m| m.caught == m.equivalent).map(|m| m.label.as_str()).collect();
        let equivalent = mutants.iter().filter(|m| m.equivalent).count();
        let caught = mutants.iter().filter(|m| m.caught).count();
        let live = mutants.len() - equivalent;
        let data = json!({ "total": mutants.len(), "equivalent": equivalent, "caught": caught, "disagreements": disagree });
        let mut c = if !disagree.is_empty() {
            failed(S, label, format!("validator and reference checker disagree on {} corruptions", disagree.len()))
        } else if (caught as f64) < MUTANT_CATCH_RATE * live as f64 {
            failed(S, label, format!("{caught} of {live} invalid corruptions caught"))
        } else {
            verified(S, label, Value::Null)
        };
        c.data = data;
        out.push(c);
    }
    Ok(out)
}

fn named_groups(cfg: &CorpusConfig) -> Vec<(String, FiniteGroup)> {
    let mut groups = vec![
        ("S3".to_string(), FiniteGroup::symmetric3()),
        ("D4".to_string(), FiniteGroup::dihedral4()),
        ("Q8".to_string(), FiniteGroup::quaternion()),
    ];
    for &n in &cfg.rings {
        groups.push((format!("C{n}"), FiniteGroup::cyclic(n)));
    }
    groups
}

/// Modules of size at most `bound` from the pools, with one induced twist
/// of each.
fn small_modules(cfg: &CorpusConfig, bound: usize) -> Result<Vec<Labeled<Arc<FiniteModule>>>> {
    let mut out = Vec::new();
    for pool in corpus::pools(cfg)? {
        for (m, name) in pool.modules.iter().zip(&pool.labels) {
            if m.size() > bound {
                continue;
            }
            out.push(Labeled { label: format!("Z{}/{name}", pool.n), item: m.clone() });
            if m.size() > 1 {
                let e = m.size() - 1;
                out.push(Labeled { label: format!("Z{}/{name}/induced-{e}", pool.n), item: Arc::new(m.induced(e)?) });
            }
        }
    }
    Ok(out)
}

/// Heap and group round trips, the first isomorphism theorem over whole Hom
/// sets, both short-exactness verdicts, splicing and absorber sequences.
pub fn section2(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "section2";
    let mut out = Vec::new();
    let corpus = corpus::axiom_corpus(cfg)?;
    for h in &corpus.heaps {
        let bad = (0..h.item.size()).find(|&e| {
            group_of_heap(&h.item, e).map(|g| heap_of_group(&g).table() != h.item.table()).unwrap_or(true)
        });
        out.push(match bad {
            None => verified(S, format!("round-trip/{}", h.label), json!({ "base_points": h.item.size() })),
            Some(e) => failed(S, format!("round-trip/{}", h.label), format!("H(G(H; {e})) differs from H")),
        });
    }
    for (name, g) in named_groups(cfg) {
        let back = group_of_heap(&heap_of_group(&g), g.identity())?;
        let same = back.mul_table() == g.mul_table() && back.identity() == g.identity();
        let label = format!("round-trip/G(H({name}))");
        out.push(if same { verified(S, label, Value::Null) } else { failed(S, label, "group table changed") });
    }

    let small = small_modules(cfg, 4)?;
    for a in &small {
        for b in &small {
            if !Arc::ptr_eq(a.item.truss(), b.item.truss()) {
                continue;
            }
            let label = format!("first-iso/{} -> {}", a.label, b.label);
            let r = HomSearch::new(a.item.clone(), b.item.clone()).and_then(|s| s.collect(cfg.hom_budget)).and_then(|maps| {
                let mut induced = 0;
                for f in &maps {
                    induced += usize::from(first_isomorphism(f)?.induced_structure);
                }
                Ok(json!({ "maps": maps.len(), "induced_structure": induced }))
            });
            out.push(settle(S, &label, r));
        }
    }

    for d in corpus::sequences(cfg)? {
        let (f, g) = (&d.item.maps[0].morphism, &d.item.maps[1].morphism);
        let r = is_short_exact(f, g).map(|r| json!({ "short_exact": r.verdict_a, "witness": r.witness }));
        out.push(settle(S, &format!("verdicts/{}", d.label), r));
    }

    for pool in corpus::pools(cfg)? {
        out.extend(splices(&pool)?);
        for (m, name) in pool.modules.iter().zip(&pool.labels) {
            let label = format!("abs-sequence/Z{}/{name}", pool.n);
            out.push(settle(S, &label, abs_sequence(m).map(|s| json!({ "abs": s.left().size(), "quotient": s.right().size() }))));
        }
    }
    Ok(out)
}

/// Splices `ℤ/(n/d) → ℤ/n → ℤ/d` with `ℤ/d → ℤ/n → ℤ/(n/d)` for each proper
/// divisor `d`.
fn splices(pool: &RingPool) -> Result<Vec<Check>> {
    const S: &str = "section2";
    let mut out = Vec::new();
    let Some(zn) = pool.modules.iter().find(|m| m.size() == pool.n && m.absorbers() == [0] && m.heap().is_abelian()) else {
        return Ok(out);
    };
    for d in (2..pool.n).filter(|d| pool.n % d == 0) {
        let first: Vec<usize> = (0..pool.n).step_by(d).collect();
        let second: Vec<usize> = (0..pool.n).step_by(pool.n / d).collect();
        let (f1, g1) = corpus::ses_from_submodule(zn, &first)?;
        let (f2, g2) = corpus::ses_from_submodule(zn, &second)?;
        // Identify the quotient of the first with the submodule of the second.
        let iso = crate::hom::find_isomorphism(&g1.cod, &f2.dom, u128::MAX)?;
        let label = format!("splice/Z{}/{d}", pool.n);
        let Some(iso) = iso else {
            out.push(failed(S, label, "quotient and submodule are not isomorphic"));
            continue;
        };
        let r = (|| {
            let a = ShortExactSequence::new(f1, g1.then(&iso)?)?;
            let b = ShortExactSequence::new(f2, g2)?;
            let s = splice(&a, &b)?;
            Ok(json!({ "witness_y": s.witness_y, "witness_a": s.witness_a }))
        })();
        out.push(settle(S, &label, r));
    }
    Ok(out)
}

pub fn snake(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "snake";
    Ok(corpus::snakes(cfg)?
        .iter()
        .map(|d| {
            let r = d.item.snake().and_then(|s| snake_all_absorbers(&s)).and_then(|sweep| {
                if !sweep.stable {
                    return Err(Error::Falsified("kernel and cokernel sizes depend on the absorber chosen".into()));
                }
                let first = &sweep.results[0];
                Ok(json!({
                    "absorbers": sweep.results.len(),
                    "kernels": first.kernel_sizes(),
                    "cokernels": first.cokernel_sizes(),
                    "delta_preimages": sweep.results.iter().map(|r| r.delta_preimages_checked).sum::<usize>(),
                }))
            });
            settle(S, &d.label, r)
        })
        .collect())
}

pub fn nine(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "nine";
    let mut out = Vec::new();
    for d in corpus::grids(cfg)? {
        let r = d.item.grid().and_then(|g| nine_lemma(&g)).map(|r| {
            json!({ "first_column": r.first_column.is_short_exact(), "last_column": r.last_column.is_short_exact() })
        });
        out.push(settle(S, &d.label, r));
    }
    for d in corpus::grid_mutants(cfg)? {
        out.push(match d.item.grid() {
            Err(e @ (Error::Precondition(_) | Error::Shape(_))) => verified(S, &d.label, json!({ "rejected": e.to_string() })),
            Err(e) => failed(S, &d.label, e.to_string()),
            Ok(g) => settle(S, &d.label, nine_lemma(&g).map(|_| json!({ "rejected": Value::Null }))),
        });
    }
    Ok(out)
}

/// Five and short-five lemmas, the maps they induce between rows, and
/// factorisations through epimorphisms and monomorphisms.
pub fn five(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "five";
    let mut out = Vec::new();
    for d in corpus::fives(cfg)? {
        let r = d.item.row().and_then(|row| five_lemma(&row)).map(|r| json!({ "clauses": r.clauses }));
        out.push(settle(S, &d.label, r));
    }
    for d in corpus::short_fives(cfg)? {
        let r = d.item.snake().and_then(|s| short_five(&s)).map(|r| json!({ "clauses": r.clauses }));
        out.push(settle(S, &d.label, r));
        out.extend(induced(&d, cfg.hom_budget));
    }
    Ok(out)
}

fn maps7(d: &Diagram) -> [ModuleMorphism; 7] {
    std::array::from_fn(|i| d.maps[i].morphism.clone())
}

/// On a short-five diagram the induced maps must be the given outer
/// verticals, and the composites `ψ₁∘f` and `f∘φ` must factor through `ψ`
/// and `φ₁` by them.
fn induced(d: &Labeled<Diagram>, budget: u128) -> Vec<Check> {
    const S: &str = "five";
    let [phi, psi, phi1, psi1, fl, fm, fr] = maps7(&d.item);
    let equal = |what: &str, got: &[usize], want: &ModuleMorphism| -> Result<Value> {
        if got == want.map.as_slice() {
            Ok(json!({ "map": got }))
        } else {
            Err(Error::Falsified(format!("{what} is {got:?}, expected {:?}", want.map)))
        }
    };
    let mut out = Vec::new();
    let r = TwoRow::cokernel_side(phi.clone(), psi.clone(), phi1.clone(), psi1.clone(), fl.clone(), fm.clone())
        .and_then(|row| induced_epi_map(&row, budget))
        .and_then(|h| equal("induced map on cokernels", &h.map, &fr));
    out.push(settle(S, &format!("{}/induced-epi", d.label), r));
    let label = format!("{}/induced-mono", d.label);
    out.push(match TwoRow::kernel_side(phi.clone(), psi.clone(), phi1.clone(), psi1.clone(), fm.clone(), fr.clone()) {
        Err(e @ Error::Hypothesis(_)) => skipped(S, label, e.to_string()),
        r => settle(S, &label, r.and_then(|(row, _, _)| induced_mono_map(&row, budget)).and_then(|h| equal("induced map on kernels", &h.map, &fl))),
    });

    let r = (|| {
        let f = fm.then(&psi1)?;
        let s = psi.apply(0);
        let h = factor_through_epi(&f, &psi, s, f.apply(0), budget)?;
        equal("factor through ψ", &h.h, &fr)
    })();
    out.push(settle(S, &format!("{}/factor-epi", d.label), r));
    let r = (|| {
        let f = phi.then(&fm)?;
        let h = factor_through_mono(&f, &phi1, budget)?;
        equal("factor through φ₁", &h.h, &fl)
    })();
    out.push(settle(S, &format!("{}/factor-mono", d.label), r));
    out
}

pub fn split(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "split";
    Ok(corpus::splits(cfg)?
        .iter()
        .map(|d| {
            let r = d.item.ses().and_then(|s| splitting(&s, cfg.hom_budget)).map(|r| {
                json!({
                    "e2": r.e2,
                    "section": r.has_section,
                    "retraction": r.has_retraction,
                    "product_iso": r.has_product_iso,
                })
            });
            settle(S, &d.label, r)
        })
        .collect())
}

/// `|Q| ≤ 4`.
pub const HOM_Q_MAX: usize = 4;

pub fn hom(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "hom";
    Ok(corpus::hom_cases(cfg, HOM_Q_MAX)?
        .iter()
        .map(|c| {
            let h = &c.item;
            let r = hom_left_exact(&h.q, &h.f, &h.g, h.e, cfg.hom_budget).map(|r| json!({ "sizes": r.sizes, "hom_modules": r.hom_modules }));
            settle(S, &c.label, r)
        })
        .collect())
}

pub fn abs(cfg: &CorpusConfig) -> Result<Vec<Check>> {
    const S: &str = "abs";
    let mut out = Vec::new();
    for c in corpus::abs_cases(cfg)? {
        let check = match &c.item {
            AbsCase::Module(functor, n) => {
                let r = functor
                    .module(n)
                    .and_then(|t| abs_object(&t, functor))
                    .and_then(|img| find_ring_isomorphism(&img.module, n, functor, cfg.hom_budget))
                    .and_then(|iso| iso.map(|i| json!({ "iso": i.map })).ok_or_else(|| Error::Falsified("T(N)_Abs is not isomorphic to N".into())));
                settle(S, &c.label, r)
            }
            AbsCase::RingSequence(functor, f, g) => {
                let r = t_functor_ses(f, g, functor)
                    .and_then(|t| abs_exact(&t.maps.0, &t.maps.1, functor))
                    .map(|r| json!({ "f_abs": r.f_abs, "g_abs": r.g_abs }));
                settle(S, &c.label, r)
            }
            AbsCase::TrussSequence(functor, f, g) => match abs_exact(f, g, functor) {
                Err(e @ (Error::Hypothesis(_) | Error::Precondition(_))) => skipped(S, &c.label, e.to_string()),
                r => settle(S, &c.label, r.map(|r| json!({ "e": r.e, "f_abs": r.f_abs, "g_abs": r.g_abs }))),
            },
            AbsCase::Composable(functor, f, g) => settle(S, &c.label, functoriality(functor, f, g)),
        };
        out.push(check);
    }
    Ok(out)
}

/// `(g∘f)_Abs = g_Abs∘f_Abs` and `(1_M)_Abs = 1`.
fn functoriality(functor: &crate::ring_module::TFunctor, f: &ModuleMorphism, g: &ModuleMorphism) -> Result<Value> {
    let a = abs_object(&f.dom, functor)?;
    let b = abs_object(&f.cod, functor)?;
    let c = abs_object(&g.cod, functor)?;
    let fa = abs_morphism(f, &a, &b)?;
    let ga = abs_morphism(g, &b, &c)?;
    let gfa = abs_morphism(&f.then(g)?, &a, &c)?;
    let composed: Vec<usize> = fa.map.iter().map(|&x| ga.apply(x)).collect();
    if composed != gfa.map {
        return Err(Error::Falsified(format!("(g∘f)_Abs = {:?} but g_Abs∘f_Abs = {composed:?}", gfa.map)));
    }
    let id = abs_morphism(&ModuleMorphism::identity(f.dom.clone()), &a, &a)?;
    if id.map.iter().enumerate().any(|(i, &x)| i != x) {
        return Err(Error::Falsified(format!("identity goes to {:?}", id.map)));
    }
    Ok(json!({ "composite": composed }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> CorpusConfig {
        CorpusConfig { rings: vec![2, 4], max_size: 4, count: 4, ..CorpusConfig::default() }
    }

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(run_suite("nope", &tiny()), Err(Error::UnknownSuite(_))));
    }

    #[test]
    fn every_suite_passes_on_a_small_corpus() {
        let r = run_suite("all", &tiny()).unwrap();
        let failures: Vec<_> = r.failures().map(|c| format!("{}: {:?}", c.instance, c.detail)).collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert!(r.summary.verified > 0);
    }

    #[test]
    fn singleton_corpus_passes() {
        let cfg = CorpusConfig { max_size: 1, count: 3, ..CorpusConfig::default() };
        for s in ["snake", "nine", "five", "split", "hom"] {
            let r = run_suite(s, &cfg).unwrap();
            assert!(!r.falsified(), "{s}");
        }
    }

    #[test]
    fn corrupted_snake_is_named() {
        let cfg = CorpusConfig { inject_corrupt: true, ..tiny() };
        let r = run_suite("snake", &cfg).unwrap();
        let bad: Vec<&str> = r.failures().map(|c| c.instance.as_str()).collect();
        assert_eq!(bad, ["snake/Z4/corrupted"]);
    }

    #[test]
    fn reports_are_reproducible() {
        let a = serde_json::to_string(&run_suite("five", &tiny()).unwrap()).unwrap();
        let b = serde_json::to_string(&run_suite("five", &tiny()).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
