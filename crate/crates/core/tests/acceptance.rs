//! Acceptance suite. Every test prints one `PASS` or `FAIL` line with its
//! measured numbers; thresholds and time budgets are pinned below.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use skellim::cert::Verdict;
use skellim::comma::arrow_object;
use skellim::gen::{self, Complex};
use skellim::hom::equivalence::is_equivalence_of_nerves;
use skellim::hom::lifting::{is_isofibration, is_quasi_category, is_trivial_fibration, terminal_map};
use skellim::hom::mapping::{mapping_space, restriction};
use skellim::limit::category::{FiniteCategory, Functor};
use skellim::limit::cone_check::{cone_limit_check, Presentation};
use skellim::limit::engine::{compare_colimit_engines, compare_engines};
use skellim::simplicial::colimits::coproduct;
use skellim::simplicial::io::sset_to_json;
use skellim::simplicial::iso::is_isomorphic;
use skellim::simplicial::nerve::nerve;
use skellim::simplicial::product::{product, pullback};
use skellim::simplicial::skeleton::skeletal_filtration;
use skellim::simplicial::sset::{Simplex, SimplicialSet};
use skellim::simplicial::standard::{horn, std_simplex};
use skellim::weights::{pseudo_weight, terminal_weight, strict_pseudo_cone, IndexCategory, Variance, Weight};

const ENGINE_INSTANCES: u64 = 50;
const ENGINE_BUDGET: Duration = Duration::from_secs(300);
const LATTICE_SIZE: usize = 12;
const SHAPE_DIM: usize = 3;
const SHAPE_CELLS: usize = 12;
const CONE_INSTANCES: u64 = 20;
const COMPARISON_BOUND: usize = 4;
const COMPARISON_BUDGET: Duration = Duration::from_secs(600);
const FILTRATION_INSTANCES: u64 = 100;
const COTENSOR_INSTANCES: u64 = 20;
/// All spaces are nerves, so a map that is bijective on simplices through
/// dimension 2 is an isomorphism. Spaces are built and compared through
/// one more dimension.
const COTENSOR_DIM: usize = 3;

/// Written to the stderr handle directly so the line survives test output
/// capture.
fn report(name: &str, pass: bool, detail: String) {
    let _ = writeln!(std::io::stderr(), "{} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "{name}: {detail}");
}

#[test]
fn limits_by_induction_match_brute_force() {
    let start = Instant::now();
    let mut agree = 0;
    let mut found = 0;
    for seed in 0..ENGINE_INSTANCES {
        let mut r = gen::rng(seed);
        let c = gen::lattice(&mut r, LATTICE_SIZE);
        let x = Arc::new(gen::sset(&mut r, SHAPE_DIM, SHAPE_CELLS));
        let d = gen::monotone_diagram(&mut r, &c, x).unwrap();
        let cmp = compare_engines(&c, &d, None).unwrap();
        agree += cmp.agree as usize;
        found += cmp.induction.is_some() as usize;
    }
    let t = start.elapsed();
    report(
        "limits, induction vs brute force",
        agree as u64 == ENGINE_INSTANCES && t < ENGINE_BUDGET,
        format!("{agree}/{ENGINE_INSTANCES} agree ({found} limits) in {t:.1?}"),
    );
}

#[test]
fn colimits_by_induction_match_brute_force() {
    let start = Instant::now();
    let mut agree = 0;
    let mut found = 0;
    for seed in 0..ENGINE_INSTANCES {
        let mut r = gen::rng(1000 + seed);
        let c = gen::join_semilattice(&mut r, LATTICE_SIZE);
        let x = Arc::new(gen::sset(&mut r, SHAPE_DIM, SHAPE_CELLS));
        let d = gen::monotone_diagram(&mut r, &c, x).unwrap();
        let cmp = compare_colimit_engines(&c, &d, None).unwrap();
        agree += cmp.agree as usize;
        found += cmp.induction.is_some() as usize;
    }
    let t = start.elapsed();
    report(
        "colimits, induction vs brute force",
        agree as u64 == ENGINE_INSTANCES && t < ENGINE_BUDGET,
        format!("{agree}/{ENGINE_INSTANCES} agree ({found} colimits) in {t:.1?}"),
    );
}

#[test]
fn cone_objects_glue_as_strict_limits() {
    let mut exact = 0;
    for seed in 0..CONE_INSTANCES {
        let mut r = gen::rng(2000 + seed);
        let c = gen::poset(&mut r, 5, 0.5);
        let n = nerve(Arc::new(c.clone()), None).unwrap();
        let presentation = if seed % 2 == 0 {
            let (y, _) = gen::complex(&mut r, 3, 2, 6).sset();
            let (z, _) = gen::complex(&mut r, 3, 2, 6).sset();
            Presentation::Coproduct(coproduct(&[y, z]).unwrap())
        } else {
            let (glue, w_y, w_z) = gen::pushout_presentation(&mut r, 5, 2, 12).unwrap();
            Presentation::Pushout { glue, w_y, w_z }
        };
        let x = match &presentation {
            Presentation::Coproduct(g) | Presentation::Pushout { glue: g, .. } => g.sset.clone(),
            Presentation::Composite { .. } => unreachable!(),
        };
        let d = gen::monotone_diagram(&mut r, &c, x).unwrap().nerve_map(&c, &n).unwrap();
        let check = cone_limit_check(n.sset(), &presentation, &d, 6).unwrap();
        exact += (check.verdict == Verdict::Yes) as u64;
    }
    report("cone objects as strict limits", exact == CONE_INSTANCES, format!("{exact}/{CONE_INSTANCES} exact isomorphisms"));
}

/// `(Δ¹)ᵏ`, the cube oracle for the value of the pseudo weight of `Δⁿ` at
/// vertex `k`.
fn cube(k: usize) -> Arc<SimplicialSet> {
    (0..k).fold(Arc::new(std_simplex(0)), |acc, _| product(acc, Arc::new(std_simplex(1))).unwrap().sset().clone())
}

#[test]
fn pseudo_weight_values() {
    let mut failures = Vec::new();

    let pt = Arc::new(std_simplex(0));
    let points = coproduct(&[pt.clone(), pt.clone(), pt]).unwrap().sset;
    let w = pseudo_weight(&points).unwrap();
    let t = terminal_weight(&w.index);
    let discrete = w.values.iter().zip(&t.values).all(|(a, b)| is_isomorphic(a, b));
    if !discrete {
        failures.push("discrete weight is not terminal".to_string());
    }

    let cospan = Arc::new(horn(2, 2).unwrap().0);
    let w = pseudo_weight(&cospan).unwrap();
    let middle = &w.values[2];
    let data = w.realization.as_ref().unwrap();
    let direct: Vec<usize> = middle
        .gen_ids(0)
        .filter(|&v| data.values[2].cell_of(Simplex::nondegenerate(v)).beads.len() == 1)
        .map(|v| v.index())
        .collect();
    let sourced = middle.gen_ids(1).all(|e| direct.contains(&middle.generator(e).faces[1].gen.index()));
    if middle.counts() != [3, 2] || direct.len() != 1 || !sourced {
        failures.push(format!("middle value has counts {:?} and direct vertices {direct:?}", middle.counts()));
    }

    let w = pseudo_weight(&Arc::new(std_simplex(1))).unwrap();
    if !is_isomorphic(&w.values[0], &std_simplex(0)) || !is_isomorphic(&w.values[1], &std_simplex(1)) {
        failures.push("interval weight is not (Δ⁰, Δ¹)".into());
    }
    for n in 1..=3 {
        let w = pseudo_weight(&Arc::new(std_simplex(n))).unwrap();
        for k in 0..=n {
            if !is_isomorphic(&w.values[k], &cube(k)) {
                failures.push(format!("value of the Δ{n} weight at {k} is not a {k}-cube"));
            }
        }
    }
    report("pseudo weight values", failures.is_empty(), if failures.is_empty() { "discrete, cospan and cube values match".into() } else { failures.join("; ") });
}

fn group_nerve_map(src: usize, tgt: usize, images: Vec<usize>) -> skellim::simplicial::map::SimplicialMap {
    let (s, t) = (Arc::new(FiniteCategory::cyclic_group(src)), Arc::new(FiniteCategory::cyclic_group(tgt)));
    let f = Functor::group_hom(&s, &t, images).unwrap();
    let (ns, nt) = (nerve(s, Some(5)).unwrap(), nerve(t, Some(5)).unwrap());
    ns.functor_map(&nt, &f).unwrap()
}

/// Pullbacks `K -> G <- H` along surjections, and towers of surjections.
fn comparison_instances() -> Vec<(String, Weight, Arc<SimplicialSet>)> {
    let mut out = Vec::new();
    for seed in 0..10 {
        let gc = gen::group_cospan(&mut gen::rng(3000 + seed), 2, 4, 2);
        let x = Arc::new(horn(2, 2).unwrap().0);
        let i = group_nerve_map(gc.k, gc.g, (0..gc.k).map(|v| v * gc.mult % gc.g).collect());
        let p = group_nerve_map(gc.h, gc.g, (0..gc.h).map(|v| v % gc.g).collect());
        let values = vec![i.source().clone(), p.source().clone(), p.target().clone()];
        let f = Weight::new(IndexCategory::from_sset(&x), values, vec![i, p], Variance::Covariant).unwrap();
        out.push((format!("Z{} -> Z{} <- Z{}", gc.k, gc.g, gc.h), f, x));
    }
    for seed in 0..5 {
        let orders = gen::group_tower(&mut gen::rng(4000 + seed), 2, 2);
        let m = orders.len();
        let mut c = Complex::default();
        for v in 0..m - 1 {
            c.add(&[v, v + 1]);
        }
        let (x, _) = c.sset();
        // vertex v carries the group of order orders[m - 1 - v]
        let maps: Vec<_> = (0..m - 1)
            .map(|v| {
                let (a, b) = (orders[m - 1 - v], orders[m - 2 - v]);
                group_nerve_map(a, b, (0..a).map(|g| g % b).collect())
            })
            .collect();
        let mut values: Vec<_> = maps.iter().map(|f| f.source().clone()).collect();
        values.push(maps[m - 2].target().clone());
        let f = Weight::new(IndexCategory::from_sset(&x), values, maps, Variance::Covariant).unwrap();
        let name = orders.iter().rev().map(|o| format!("Z{o}")).collect::<Vec<_>>().join(" -> ");
        out.push((name, f, x));
    }
    out
}

#[test]
fn strict_to_pseudo_comparison() {
    let start = Instant::now();
    let instances = comparison_instances();
    let total = instances.len();
    let (mut trivial, mut equivalences) = (0, 0);
    let mut failures = Vec::new();
    for (name, f, x) in &instances {
        let sp = strict_pseudo_cone(f, x, COMPARISON_BOUND - 1, COMPARISON_BOUND).unwrap();
        let cert = is_trivial_fibration(&sp.comparison, COMPARISON_BOUND).unwrap();
        println!("     {name}: {:?} in {:.1?}", cert.verdict, start.elapsed());
        match cert.verdict {
            Verdict::Yes => trivial += 1,
            Verdict::No => {
                assert!(cert.replay(&sp.comparison).unwrap(), "{name}: witness does not replay");
                failures.push(format!("{name} {:?}", cert.witness.as_ref().map(|w| w.square)));
            }
            Verdict::Inconclusive => failures.push(format!("{name} (inconclusive)")),
        }
        equivalences += (is_equivalence_of_nerves(&sp.comparison).unwrap().verdict == Verdict::Yes) as usize;
    }
    let t = start.elapsed();
    let _ = writeln!(std::io::stderr(), "     comparison is an equivalence of nerves: {equivalences}/{total}");
    report(
        "strict to pseudo comparison is a trivial fibration",
        trivial == total && t < COMPARISON_BUDGET,
        format!("{trivial}/{total} at bound {COMPARISON_BOUND} in {t:.1?}; unfilled squares: {}", failures.join(", ")),
    );
}

#[test]
fn structural_checks() {
    let mut failures = Vec::new();
    let c = FiniteCategory::poset(vec!["a".into(), "b".into(), "c".into(), "d".into()], |i, j| i == j || i == 0 || j == 3).unwrap();
    let a = nerve(Arc::new(c), None).unwrap().sset().clone();
    if is_quasi_category(&a, 3).unwrap().verdict != Verdict::Yes {
        failures.push("nerve of a poset is not a quasi-category".to_string());
    }
    let h = Arc::new(horn(2, 1).unwrap().0);
    let cert = is_quasi_category(&h, 3).unwrap();
    if cert.verdict != Verdict::No || !cert.replay(&terminal_map(h)).unwrap() {
        failures.push("the inner horn passed or its witness does not replay".into());
    }
    let b = nerve(Arc::new(FiniteCategory::chain(1)), None).unwrap().sset().clone();
    let arrows = arrow_object(b, 4).unwrap();
    for (name, p) in [("(p1, p0)", &arrows.projection), ("p0", &arrows.p0), ("p1", &arrows.p1)] {
        if is_isofibration(p, 3).unwrap().verdict != Verdict::Yes {
            failures.push(format!("{name} is not an isofibration"));
        }
    }
    let mut exact = 0;
    for seed in 0..FILTRATION_INSTANCES {
        let x = Arc::new(gen::sset(&mut gen::rng(5000 + seed), SHAPE_DIM, SHAPE_CELLS));
        let back = skeletal_filtration(&x).unwrap().recompose().unwrap();
        exact += (sset_to_json(&back) == sset_to_json(&x)) as u64;
    }
    if exact != FILTRATION_INSTANCES {
        failures.push(format!("{exact}/{FILTRATION_INSTANCES} filtrations recompose exactly"));
    }
    report("structural checks", failures.is_empty(), if failures.is_empty() { format!("all hold; {exact}/{FILTRATION_INSTANCES} filtrations recompose exactly") } else { failures.join("; ") });
}

#[test]
fn cotensor_of_a_pushout_is_a_pullback() {
    let mut exact = 0;
    for seed in 0..COTENSOR_INSTANCES {
        let mut r = gen::rng(6000 + seed);
        let (glue, w_y, w_z) = gen::pushout_presentation(&mut r, 4, 2, 9).unwrap();
        let a = nerve(Arc::new(gen::poset(&mut r, 3, 0.5)), None).unwrap().sset().clone();
        let space = |x: &Arc<SimplicialSet>| mapping_space(x.clone(), a.clone(), COTENSOR_DIM).unwrap();
        let (ap, ay, az, aw) = (space(&glue.sset), space(w_y.target()), space(w_z.target()), space(w_y.source()));
        let pb = pullback(&restriction(&w_y, &ay, &aw).unwrap(), &restriction(&w_z, &az, &aw).unwrap()).unwrap();
        let to_y = restriction(&glue.legs[0], &ap, &ay).unwrap();
        let to_z = restriction(&glue.legs[1], &ap, &az).unwrap();
        let cmp = pb.pairing(&to_y, &to_z).unwrap();
        let through = |x: &SimplicialSet| x.counts().into_iter().take(COTENSOR_DIM + 1).collect::<Vec<_>>();
        exact += (cmp.is_mono() && through(cmp.source()) == through(cmp.target())) as u64;
    }
    report("cotensor of a pushout is a pullback", exact == COTENSOR_INSTANCES, format!("{exact}/{COTENSOR_INSTANCES} comparisons are isomorphisms through dimension {COTENSOR_DIM}"));
}
