//! The ten acceptance criteria, each timed against its limit. One line per
//! criterion is printed; the test fails if any criterion fails.

use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;
use trusslab::corpus::{self, AbsCase, CorpusConfig};
use trusslab::suite::{self, Check, Outcome, MUTANTS_PER_KIND, MUTANT_CATCH_RATE};
use trusslab::{FiniteModule, ModuleMorphism};

type Verdict = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Verdict,
}

fn rings_to_eight() -> CorpusConfig {
    CorpusConfig { rings: (1..=8).collect(), ..CorpusConfig::default() }
}

fn none_falsified<'a>(checks: impl IntoIterator<Item = &'a Check>) -> Result<usize, String> {
    let mut n = 0;
    for c in checks {
        match c.outcome {
            Outcome::Verified => n += 1,
            Outcome::Falsified => return Err(format!("{}: {}", c.instance, c.detail.as_deref().unwrap_or(""))),
            Outcome::Skipped => return Err(format!("{} skipped: {}", c.instance, c.detail.as_deref().unwrap_or(""))),
        }
    }
    Ok(n)
}

fn at_least(what: &str, n: usize, min: usize) -> Result<(), String> {
    if n >= min {
        Ok(())
    } else {
        Err(format!("only {n} {what}, need {min}"))
    }
}

/// Every function `dom → cod` that passes the morphism validator, by
/// exhausting all `|cod|^|dom|` tables.
fn brute_force_hom(dom: &Arc<FiniteModule>, cod: &Arc<FiniteModule>) -> Vec<Vec<usize>> {
    let (n, k) = (dom.size(), cod.size());
    let total = (k as u64).pow(n as u32);
    assert!(total <= 1 << 16, "brute force over {total} functions");
    let mut out = Vec::new();
    for code in 0..total {
        let mut c = code;
        let mut map = vec![0; n];
        for x in (0..n).rev() {
            map[x] = (c % k as u64) as usize;
            c /= k as u64;
        }
        let f = ModuleMorphism::new(dom.clone(), cod.clone(), map).unwrap();
        if f.validate().is_ok() {
            out.push(f.map);
        }
    }
    out
}

fn axioms() -> Verdict {
    let cfg = rings_to_eight();
    let checks = suite::axioms(&cfg).map_err(|e| e.to_string())?;
    let (mutants, structures): (Vec<&Check>, Vec<&Check>) = checks.iter().partition(|c| c.instance.starts_with("mutants/"));
    let n = none_falsified(structures.iter().copied())?;
    let products = structures.iter().filter(|c| c.instance.contains('x')).count();
    at_least("product structures", products, 1)?;
    let mut rates = Vec::new();
    for m in &mutants {
        let d = &m.data;
        let (total, equivalent, caught) = (d["total"].as_u64().unwrap(), d["equivalent"].as_u64().unwrap(), d["caught"].as_u64().unwrap());
        if total != MUTANTS_PER_KIND as u64 {
            return Err(format!("{}: {total} mutants", m.instance));
        }
        if m.outcome != Outcome::Verified {
            return Err(format!("{}: {}", m.instance, m.detail.as_deref().unwrap_or("")));
        }
        let live = total - equivalent;
        if (caught as f64) < MUTANT_CATCH_RATE * live as f64 {
            return Err(format!("{}: {caught}/{live}", m.instance));
        }
        rates.push(format!("{} {caught}/{live} ({equivalent} equivalent)", m.instance.trim_start_matches("mutants/")));
    }
    at_least("mutant kinds", rates.len(), 3)?;
    Ok(format!("{n} structures valid; mutants caught: {}", rates.join(", ")))
}

fn round_trips() -> Verdict {
    let checks = suite::section2(&rings_to_eight()).map_err(|e| e.to_string())?;
    let n = none_falsified(checks.iter().filter(|c| c.instance.starts_with("round-trip/")))?;
    at_least("round trips", n, 10)?;
    Ok(format!("{n} heaps and groups round-trip exactly"))
}

fn first_isomorphism() -> Verdict {
    let cfg = CorpusConfig::default();
    let checks = suite::section2(&cfg).map_err(|e| e.to_string())?;
    let iso: Vec<&Check> = checks.iter().filter(|c| c.instance.starts_with("first-iso/")).collect();
    let pairs = none_falsified(iso.iter().copied())?;
    let maps: u64 = iso.iter().map(|c| c.data["maps"].as_u64().unwrap()).sum();
    // The enumerated Hom sets must be complete.
    let mut compared = 0;
    for pool in corpus::pools(&cfg).map_err(|e| e.to_string())? {
        let small: Vec<&Arc<FiniteModule>> = pool.modules.iter().filter(|m| m.size() <= 4).collect();
        for a in &small {
            for b in &small {
                let engine: Vec<Vec<usize>> = trusslab::enumerate_hom(a, b, u128::MAX).map_err(|e| e.to_string())?.morphisms.into_iter().map(|f| f.map).collect();
                if engine != brute_force_hom(a, b) {
                    return Err(format!("Hom enumeration differs from brute force for sizes {} → {}", a.size(), b.size()));
                }
                compared += 1;
            }
        }
    }
    Ok(format!("{maps} maps over {pairs} module pairs; {compared} Hom sets match brute force"))
}

fn snake() -> Verdict {
    let cfg = CorpusConfig { rings: vec![2, 3, 4], count: 60, ..CorpusConfig::default() };
    let checks = suite::snake(&cfg).map_err(|e| e.to_string())?;
    let n = none_falsified(&checks)?;
    at_least("snake diagrams", n, 50)?;
    let multi = checks.iter().filter(|c| c.data["absorbers"].as_u64().unwrap() > 1).count();
    at_least("diagrams with several absorbers", multi, 1)?;
    let preimages: u64 = checks.iter().map(|c| c.data["delta_preimages"].as_u64().unwrap()).sum();
    Ok(format!("{n} diagrams, {multi} with several absorbers, δ checked over {preimages} preimage pairs"))
}

fn short_exactness() -> Verdict {
    let cfg = CorpusConfig { count: 120, ..CorpusConfig::default() };
    let checks = suite::section2(&cfg).map_err(|e| e.to_string())?;
    let seqs: Vec<&Check> = checks.iter().filter(|c| c.instance.starts_with("verdicts/")).collect();
    let n = none_falsified(seqs.iter().copied())?;
    at_least("sequences", n, 200)?;
    let mutants = seqs.iter().filter(|c| c.instance.contains("/mutant-")).count();
    let exact = seqs.iter().filter(|c| c.data["short_exact"] == Value::Bool(true)).count();
    at_least("mutants", mutants, 50)?;
    at_least("non-exact sequences", n - exact, 1)?;
    Ok(format!("verdicts agree on {n} sequences ({mutants} mutants, {} not short exact)", n - exact))
}

fn nine() -> Verdict {
    let cfg = CorpusConfig { count: 30, ..CorpusConfig::default() };
    let checks = suite::nine(&cfg).map_err(|e| e.to_string())?;
    let (mutants, valid): (Vec<&Check>, Vec<&Check>) = checks.iter().partition(|c| c.instance.ends_with("/mutant"));
    let n = none_falsified(valid.iter().copied())?;
    at_least("valid grids", n, 20)?;
    let broken = valid.iter().filter(|c| c.data["first_column"] == Value::Bool(false)).count();
    at_least("grids with non-exact outer columns", broken, 1)?;
    none_falsified(mutants.iter().copied())?;
    let rejected = mutants.iter().filter(|c| c.data["rejected"].is_string()).count();
    at_least("rejected mutants", rejected, 1)?;
    Ok(format!("{n} grids ({broken} with both outer columns non-exact); {rejected} of {} mutants rejected by precondition, rest still valid", mutants.len()))
}

fn five() -> Verdict {
    let cfg = CorpusConfig { count: 40, ..CorpusConfig::default() };
    let checks = suite::five(&cfg).map_err(|e| e.to_string())?;
    let fives = none_falsified(checks.iter().filter(|c| c.instance.starts_with("five/")))?;
    let shorts = checks.iter().filter(|c| c.instance.starts_with("short-five/") && c.data.get("clauses").is_some()).count();
    none_falsified(checks.iter().filter(|c| c.outcome != Outcome::Skipped))?;
    at_least("five-lemma instances", fives, 30)?;
    at_least("short-five instances", shorts, 30)?;
    let fired = checks.iter().filter_map(|c| c.data.get("clauses")).flat_map(|cl| cl.as_array().unwrap()).filter(|cl| cl["hypothesis"] == Value::Bool(true)).count();
    Ok(format!("{fives} five, {shorts} short five; {fired} clauses with hypotheses met"))
}

fn splitting() -> Verdict {
    let cfg = CorpusConfig { count: 30, ..CorpusConfig::default() };
    let checks = suite::split(&cfg).map_err(|e| e.to_string())?;
    let n = none_falsified(&checks)?;
    at_least("in-budget sequences", n, 20)?;
    let canonical = checks.iter().find(|c| c.instance == "ses/Z4/canonical-2").ok_or("ℤ/2–ℤ/4–ℤ/2 missing")?;
    let d = &canonical.data;
    if [&d["section"], &d["retraction"], &d["product_iso"]].iter().any(|v| **v != Value::Bool(false)) {
        return Err(format!("ℤ/2–ℤ/4–ℤ/2 reported {d}"));
    }
    let split = checks.iter().filter(|c| c.data["section"] == Value::Bool(true)).count();
    Ok(format!("{n} sequences agree ({split} split); ℤ/2–ℤ/4–ℤ/2 has no section, retraction or product iso"))
}

fn hom() -> Verdict {
    let cfg = CorpusConfig { count: 60, ..CorpusConfig::default() };
    let checks = suite::hom(&cfg).map_err(|e| e.to_string())?;
    let n = none_falsified(&checks)?;
    // Hom set sizes from brute force.
    let cases = corpus::hom_cases(&cfg, suite::HOM_Q_MAX).map_err(|e| e.to_string())?;
    for (c, check) in cases.iter().zip(&checks) {
        let h = &c.item;
        if h.q.size() > 4 {
            return Err(format!("{}: |Q| = {}", c.label, h.q.size()));
        }
        let sizes = [&h.f.dom, &h.f.cod, &h.g.cod].map(|m| brute_force_hom(&h.q, m).len());
        if check.data["sizes"] != serde_json::json!(sizes) {
            return Err(format!("{}: engine sizes {} vs brute force {sizes:?}", c.label, check.data["sizes"]));
        }
    }
    let nontrivial = checks.iter().filter(|c| c.data["sizes"][1].as_u64().unwrap() > 1).count();
    Ok(format!("{n} sequences, {nontrivial} with |Hom(Q,N)| > 1; Hom sizes match brute force"))
}

fn functors() -> Verdict {
    let cfg = CorpusConfig::default();
    let cases = corpus::abs_cases(&cfg).map_err(|e| e.to_string())?;
    let checks = suite::abs(&cfg).map_err(|e| e.to_string())?;
    let mut counts = [0usize; 4];
    for (case, check) in cases.iter().zip(&checks) {
        let slot = match case.item {
            AbsCase::Module(..) => 0,
            AbsCase::RingSequence(..) => 1,
            AbsCase::TrussSequence(..) => 2,
            AbsCase::Composable(..) => 3,
        };
        match check.outcome {
            Outcome::Verified => counts[slot] += 1,
            Outcome::Falsified => return Err(format!("{}: {}", check.instance, check.detail.as_deref().unwrap_or(""))),
            Outcome::Skipped if slot == 2 => {}
            Outcome::Skipped => return Err(format!("{} skipped", check.instance)),
        }
    }
    for (what, n) in ["modules", "ring sequences", "qualifying module sequences", "composable pairs"].iter().zip(counts) {
        at_least(what, n, 1)?;
    }
    Ok(format!(
        "T(N)_Abs ≅ N for {} modules; {} ring and {} module sequences recovered; functoriality on {} pairs",
        counts[0], counts[1], counts[2], counts[3]
    ))
}

const CRITERIA: [Criterion; 10] = [
    Criterion { id: 1, name: "axiom suites and mutation detection", limit: Duration::from_secs(30), run: axioms },
    Criterion { id: 2, name: "heap/group round trips", limit: Duration::from_secs(5), run: round_trips },
    Criterion { id: 3, name: "first isomorphism theorem", limit: Duration::from_secs(60), run: first_isomorphism },
    Criterion { id: 4, name: "snake lemma", limit: Duration::from_secs(120), run: snake },
    Criterion { id: 5, name: "short exactness cross-check", limit: Duration::from_secs(60), run: short_exactness },
    Criterion { id: 6, name: "nine lemma", limit: Duration::from_secs(120), run: nine },
    Criterion { id: 7, name: "five and short five lemmas", limit: Duration::from_secs(60), run: five },
    Criterion { id: 8, name: "splitting trichotomy", limit: Duration::from_secs(60), run: splitting },
    Criterion { id: 9, name: "Hom left exactness", limit: Duration::from_secs(120), run: hom },
    Criterion { id: 10, name: "functor round trips", limit: Duration::from_secs(30), run: functors },
];

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in &CRITERIA {
        let start = Instant::now();
        let verdict = (c.run)();
        let elapsed = start.elapsed();
        let verdict = match verdict {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; took {elapsed:.2?}, limit {:?}", c.limit)),
            v => v,
        };
        match &verdict {
            Ok(detail) => println!("criterion {:>2} PASS  {} [{elapsed:.2?} / {:?}]: {detail}", c.id, c.name, c.limit),
            Err(why) => {
                println!("criterion {:>2} FAIL  {} [{elapsed:.2?} / {:?}]: {why}", c.id, c.name, c.limit);
                failed.push(c.id);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
