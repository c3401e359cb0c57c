use std::sync::Arc;

use proptest::prelude::*;
use serde_json::Value;

use skellim::comma::point;
use skellim::gen;
use skellim::hom::search::{to_map, Extension, SimplexIndex};
use skellim::limit::diagram::DiagramInCat;
use skellim::limit::engine::{compare_colimit_engines, compare_engines, limit_by_skeletal_induction};
use skellim::simplicial::io::{map_from_json, map_to_json, sset_from_json, sset_to_json};
use skellim::simplicial::map::SimplicialMap;
use skellim::simplicial::nerve::nerve;
use skellim::simplicial::skeleton::{skeletal_filtration, skeleton};
use skellim::simplicial::sset::SimplicialSet;
use skellim::simplicial::standard::horn;
use skellim::weights::{pseudo_weight, weighted_limit, IndexCategory, Variance, Weight};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sset_json_round_trips_byte_exactly(seed in any::<u64>()) {
        let x = gen::sset(&mut gen::rng(seed), 3, 12);
        let text = sset_to_json(&x);
        let back = sset_from_json(&text).unwrap();
        prop_assert_eq!(&back, &x);
        prop_assert_eq!(sset_to_json(&back), text);
    }

    #[test]
    fn skeleton_inclusions_round_trip(seed in any::<u64>(), n in 0usize..3) {
        let x = Arc::new(gen::sset(&mut gen::rng(seed), 3, 12));
        let (_, incl) = skeleton(&x, n).unwrap();
        prop_assert!(incl.is_mono());
        let text = map_to_json(&incl);
        prop_assert_eq!(map_to_json(&map_from_json(&text).unwrap()), text);
    }

    #[test]
    fn filtrations_recompose(seed in any::<u64>()) {
        let x = Arc::new(gen::sset(&mut gen::rng(seed), 3, 12));
        let f = skeletal_filtration(&x).unwrap();
        prop_assert_eq!(f.stages.len(), x.dim().unwrap_or(0));
        prop_assert_eq!(f.recompose().unwrap(), (*x).clone());
    }

    #[test]
    fn opposites_are_involutions(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let x = gen::sset(&mut r, 3, 12);
        prop_assert_eq!(x.opposite().opposite(), x);
        let c = gen::lattice(&mut r, 10);
        prop_assert_eq!(c.opposite().opposite(), c);
    }

    #[test]
    fn engines_agree(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let c = gen::lattice(&mut r, 12);
        let x = Arc::new(gen::sset(&mut r, 3, 12));
        let d = gen::monotone_diagram(&mut r, &c, x).unwrap();
        prop_assert!(compare_engines(&c, &d, None).unwrap().agree);
        let p = gen::poset(&mut r, 6, 0.4);
        let d = gen::monotone_diagram(&mut r, &p, d.x.clone()).unwrap();
        prop_assert!(compare_engines(&p, &d, None).unwrap().agree);
        prop_assert!(compare_colimit_engines(&p, &d, None).unwrap().agree);
    }

    #[test]
    fn colimits_are_limits_in_the_opposite(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let c = gen::join_semilattice(&mut r, 10);
        let x = Arc::new(gen::sset(&mut r, 2, 8));
        let d = gen::monotone_diagram(&mut r, &c, x).unwrap();
        let colim = compare_colimit_engines(&c, &d, None).unwrap().brute.unwrap();
        // the join of the image, read off the poset
        let join = (0..c.num_objects())
            .filter(|&m| d.objects.iter().all(|&o| c.leq(o, m)))
            .find(|&m| (0..c.num_objects()).all(|u| !d.objects.iter().all(|&o| c.leq(o, u)) || c.leq(m, u)))
            .unwrap();
        prop_assert_eq!(&colim.apex, &c.objects()[join]);
    }

    #[test]
    fn generator_order_does_not_change_the_apex(seed in any::<u64>()) {
        let mut r = gen::rng(seed);
        let c = gen::lattice(&mut r, 12);
        let x = Arc::new(gen::sset(&mut r, 3, 12));
        let d = gen::monotone_diagram(&mut r, &c, x.clone()).unwrap();
        let shuffled = Arc::new(reverse_generators(&x));
        let d2 = DiagramInCat::from_json(&c, shuffled, &d.to_json(&c)).unwrap();
        let a = limit_by_skeletal_induction(&c, &d, None).unwrap();
        let b = limit_by_skeletal_induction(&c, &d2, None).unwrap();
        prop_assert_eq!(a.apex, b.apex);
    }
}

/// The same simplicial set with the generators of each dimension listed in
/// reverse.
fn reverse_generators(x: &SimplicialSet) -> SimplicialSet {
    let mut v: Value = serde_json::from_str(&sset_to_json(x)).unwrap();
    for (_, level) in v["generators"].as_object_mut().unwrap().iter_mut() {
        level.as_array_mut().unwrap().reverse();
    }
    sset_from_json(&v.to_string()).unwrap()
}

/// All natural transformations `W ⇒ F` by enumerating the maps at each
/// object and checking every arrow.
fn count_natural(w: &Weight, f: &Weight) -> usize {
    let per_object: Vec<Vec<SimplicialMap>> = w
        .values
        .iter()
        .zip(&f.values)
        .map(|(a, b)| {
            let idx = SimplexIndex::new(b.clone());
            Extension::new(a.clone(), &idx).all().unwrap().into_iter().map(|imgs| to_map(a, b, imgs).unwrap()).collect()
        })
        .collect();
    let mut count = 0;
    let mut choice = vec![0; per_object.len()];
    'outer: loop {
        let natural = w.index.arrows.iter().enumerate().all(|(i, a)| {
            let lhs = per_object[a.src][choice[a.src]].then(&f.action[i]).unwrap();
            let rhs = w.action[i].then(&per_object[a.tgt][choice[a.tgt]]).unwrap();
            lhs.same_as(&rhs)
        });
        count += natural as usize;
        for k in 0..choice.len() {
            choice[k] += 1;
            if choice[k] < per_object[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    count
}

#[test]
fn weighted_limit_vertices_are_natural_transformations() {
    let shape = Arc::new(horn(2, 2).unwrap().0);
    let w = pseudo_weight(&shape).unwrap();
    for seed in 0..6 {
        let p = gen::poset(&mut gen::rng(seed), 3, 0.6);
        let a = nerve(Arc::new(p), None).unwrap().sset().clone();
        // a point of A and the identity, over the cospan 0 -> 2 <- 1
        let v = a.gen_ids(0).nth(seed as usize % 3).unwrap();
        let pick = point(&a, v).unwrap();
        let id = SimplicialMap::identity(a.clone());
        let values = vec![pick.source().clone(), a.clone(), a.clone()];
        let f = Weight::new(IndexCategory::from_sset(&shape), values, vec![pick, id], Variance::Covariant).unwrap();
        let lim = weighted_limit(&w, &f, 3).unwrap();
        assert_eq!(lim.sset().counts()[0], count_natural(&w, &f), "seed {seed}");
    }
}
