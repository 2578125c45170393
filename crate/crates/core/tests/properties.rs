use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use trusslab::corpus::{self, CorpusConfig, RingPool};
use trusslab::heap::{group_of_heap, heap_of_group};
use trusslab::module::quotient_module;
use trusslab::{enumerate_hom, is_exact_at, is_short_exact, oracle, FiniteHeap, FiniteModule, ModuleMorphism, Submodule};

fn pool(n: usize) -> RingPool {
    RingPool::new(n, 9).unwrap()
}

fn functions(dom: usize, cod: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (cod as u64).pow(dom as u32);
    (0..total).map(move |mut c| {
        let mut map = vec![0; dom];
        for x in (0..dom).rev() {
            map[x] = (c % cod as u64) as usize;
            c /= cod as u64;
        }
        map
    })
}

/// A pool module, moved to the action induced at `e` when `twist` is set.
fn pick(p: &RingPool, i: usize, twist: Option<usize>) -> Arc<FiniteModule> {
    let m = p.modules[i % p.modules.len()].clone();
    match twist {
        Some(e) => Arc::new(m.induced(e % m.size()).unwrap()),
        None => m,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hom_search_matches_brute_force(n in prop::sample::select(vec![2usize, 3, 4]), i in 0usize..64, j in 0usize..64, ti in prop::option::of(0usize..9), tj in prop::option::of(0usize..9)) {
        let p = pool(n);
        let (a, b) = (pick(&p, i, ti), pick(&p, j, tj));
        prop_assume!((b.size() as u64).pow(a.size() as u32) <= 4096);
        let engine: Vec<Vec<usize>> = enumerate_hom(&a, &b, u128::MAX).unwrap().morphisms.into_iter().map(|f| f.map).collect();
        let brute: Vec<Vec<usize>> = functions(a.size(), b.size())
            .filter(|m| ModuleMorphism::new(a.clone(), b.clone(), m.clone()).unwrap().validate().is_ok())
            .collect();
        prop_assert_eq!(engine, brute);
    }

    #[test]
    fn heap_validator_agrees_with_oracle(size in 2usize..=3, table in prop::collection::vec(0usize..3, 27)) {
        let op: Vec<usize> = table[..size * size * size].iter().map(|v| v % size).collect();
        let h = FiniteHeap::new(size, op.clone()).unwrap();
        prop_assert_eq!(h.validate().is_ok(), oracle::is_heap(size, &op));
    }

    #[test]
    fn corrupted_heaps_agree_with_oracle(n in 2usize..=6, idx in 0usize..216, shift in 1usize..6) {
        let h = FiniteHeap::cyclic(n);
        let mut op = h.table().to_vec();
        let i = idx % op.len();
        op[i] = (op[i] + shift % (n - 1) + 1) % n;
        let mutant = FiniteHeap::new(n, op.clone()).unwrap();
        prop_assert_eq!(mutant.validate().is_ok(), oracle::is_heap(n, &op));
    }

    #[test]
    fn module_validator_agrees_with_oracle(n in prop::sample::select(vec![2usize, 4]), i in 0usize..16, idx in 0usize..64, value in 0usize..9) {
        let p = pool(n);
        let m = pick(&p, i, None);
        let mut act = m.act_table().to_vec();
        let k = idx % act.len();
        act[k] = value % m.size();
        let t = m.truss();
        let mutant = FiniteModule::new(t.clone(), m.heap().clone(), act.clone(), m.is_unital()).unwrap();
        let valid = matches!(mutant.validate(), Ok(Ok(())));
        prop_assert_eq!(valid, oracle::is_module((t.size(), t.heap().table(), t.mul_table(), t.one()), m.size(), m.heap().table(), &act, m.is_unital()));
    }

    #[test]
    fn exactness_witness_is_unique(n in prop::sample::select(vec![2usize, 3, 4]), i in 0usize..64, sub in 0usize..64, twist in any::<u64>()) {
        let p = pool(n);
        let m = pick(&p, i, None);
        let subs = corpus::submodules(&m, 0);
        let (f, g) = corpus::ses_from_submodule(&m, &subs[sub % subs.len()]).unwrap();
        let maps = corpus::twist(&[f, g], &mut ChaCha8Rng::seed_from_u64(twist)).unwrap();
        let (f, g) = (&maps[0], &maps[1]);
        let e = is_exact_at(f, g).unwrap().expect("short exact sequences are exact");
        let image = f.image();
        let holding: Vec<usize> = (0..g.cod.size())
            .filter(|&e| (0..g.dom.size()).filter(|&x| g.apply(x) == e).eq(image.iter().copied()))
            .collect();
        prop_assert_eq!(holding, vec![e]);
        prop_assert!(g.cod.is_absorber(e));
        let report = is_short_exact(f, g).unwrap();
        prop_assert!(report.verdict_a && report.verdict_b);
    }

    #[test]
    fn verdicts_agree_on_random_linear_pairs(n in prop::sample::select(vec![2usize, 3, 4]), i in 0usize..64, j in 0usize..64, k in 0usize..64, fi in 0usize..256, gi in 0usize..256) {
        let p = pool(n);
        let (a, b, c) = (pick(&p, i, None), pick(&p, j, None), pick(&p, k, None));
        let hf = enumerate_hom(&a, &b, 1 << 16).unwrap();
        let hg = enumerate_hom(&b, &c, 1 << 16).unwrap();
        let (f, g) = (&hf.morphisms[fi % hf.len()], &hg.morphisms[gi % hg.len()]);
        let r = is_short_exact(f, g).unwrap();
        prop_assert_eq!(r.verdict_a, r.verdict_b);
    }

    #[test]
    fn group_round_trip_at_every_base_point(n in prop::sample::select(vec![2usize, 3, 4, 6]), i in 0usize..64) {
        let p = pool(n);
        let h = pick(&p, i, None).heap().clone();
        for e in 0..h.size() {
            let back = heap_of_group(&group_of_heap(&h, e).unwrap());
            prop_assert_eq!(back.table(), h.table());
        }
    }

    #[test]
    fn quotient_classes_are_ordered_by_least_member(n in prop::sample::select(vec![2usize, 4]), i in 0usize..64, sub in 0usize..64) {
        let p = pool(n);
        let m = pick(&p, i, None);
        let subs = corpus::submodules(&m, 0);
        let s = Submodule::new(m.clone(), subs[sub % subs.len()].iter().copied()).unwrap();
        let q = quotient_module(&m, &s).unwrap();
        let mins: Vec<usize> = q.partition.classes().iter().map(|c| c[0]).collect();
        prop_assert!(mins.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(q.partition.classes().iter().all(|c| c.windows(2).all(|w| w[0] < w[1])));
        prop_assert_eq!(q.partition.class(0), s.elems());
    }

    #[test]
    fn twisted_modules_stay_valid(n in prop::sample::select(vec![2usize, 3, 4]), i in 0usize..64, e in 0usize..9) {
        let p = pool(n);
        let m = pick(&p, i, Some(e));
        prop_assert_eq!(m.validate().unwrap(), Ok(()));
        prop_assert!(m.is_absorber(e % m.size()));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn corpus_is_a_function_of_the_seed(seed in any::<u64>()) {
        let cfg = CorpusConfig { rings: vec![2, 4], count: 5, seed, ..CorpusConfig::default() };
        let maps = |c: &CorpusConfig| -> Vec<Vec<usize>> {
            corpus::snakes(c).unwrap().into_iter().flat_map(|d| d.item.maps.into_iter().map(|m| m.morphism.map)).collect()
        };
        prop_assert_eq!(maps(&cfg), maps(&cfg));
        for d in corpus::snakes(&cfg).unwrap() {
            prop_assert!(d.item.snake().is_ok(), "{}", d.label);
        }
    }
}
