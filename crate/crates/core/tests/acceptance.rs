//! End-to-end acceptance suite: one test per criterion, each printing a
//! PASS line (visible with `cargo test --test acceptance -- --nocapture`).

use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use poeq_core::generate::{generate_general_position, generate_instance};
use poeq_core::geometry::claim_from_weights;
use poeq_core::*;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn pt(a: BigRational, b: BigRational, c: BigRational) -> SimplexPoint {
    SimplexPoint::new([a, b, c]).unwrap()
}

/// Random interior simplex point with coordinates bounded away from zero.
fn random_interior(rng: &mut ChaCha8Rng) -> SimplexPoint {
    let raw: [BigRational; 3] = std::array::from_fn(|_| {
        BigRational::from_integer(rng.random_range(150i64..=450).into())
    });
    normalize_point(raw).unwrap()
}

fn min_gtilde_over_graph(inst: &Instance, graph: &RnsGraph) -> BigRational {
    (0..graph.vertex_count())
        .map(|v| g_tilde(inst, &graph.vertices[v].location).unwrap())
        .min()
        .expect("nonempty graph")
}

#[test]
fn c01_e5_exact_value_splits_and_lp_agreement() {
    let started = Instant::now();
    let inst = fixtures::e5();
    let expected = rat(42, 107);
    for alg in [Algorithm::Simple, Algorithm::Steepest] {
        let report = solve(&inst, alg).unwrap();
        assert_eq!(report.value, expected, "{alg}");
        assert_eq!(*report.allocation.share(Player::I, 0), rat(60, 107));
        assert_eq!(*report.allocation.share(Player::III, 0), rat(47, 107));
        assert_eq!(*report.allocation.share(Player::II, 1), rat(70, 107));
        assert_eq!(*report.allocation.share(Player::III, 1), rat(37, 107));
        assert_eq!(report.split_pattern, SplitPattern::TwoItemsTwoPlayersEach);
    }
    assert_eq!(maxmin_lp(&inst).value, expected);
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_millis(50), "took {elapsed:?}");
    println!("PASS criterion 1: e5 value 42/107, exact splits, LP agreement in {elapsed:?}");
}

#[test]
fn c02_e1_graph_shape_constant_gtilde_one_step_descent() {
    let inst = fixtures::e1();
    let graph = build_graph(&inst);
    assert_eq!(graph.vertex_count(), 6);
    let hist = graph.class_histogram();
    assert_eq!(hist.get(&FaceClass::F1), Some(&3));
    assert_eq!(hist.get(&FaceClass::F2), Some(&3));
    // A 6-cycle: six arcs, every vertex of degree 2, one connected loop.
    assert_eq!(graph.arcs.len(), 6);
    for v in 0..6 {
        assert_eq!(graph.neighbors(v).len(), 2);
    }
    let mut visited = vec![false; 6];
    let (mut prev, mut here) = (usize::MAX, 0usize);
    for _ in 0..6 {
        visited[here] = true;
        let next = graph
            .neighbors(here)
            .iter()
            .map(|&(n, _)| n)
            .find(|&n| n != prev)
            .unwrap();
        prev = here;
        here = next;
    }
    assert_eq!(here, 0, "walk must close after six steps");
    assert!(visited.iter().all(|&v| v));

    for v in 0..6 {
        assert_eq!(g_tilde(&inst, &graph.vertices[v].location).unwrap(), rat(4, 5));
    }
    for start in 0..6 {
        for (alg, report) in [
            (Algorithm::Simple, simple_descent(&inst, &graph, Some(start)).unwrap()),
            (Algorithm::Steepest, steepest_descent(&inst, &graph, Some(start)).unwrap()),
        ] {
            assert_eq!(report.path.len(), 1, "{alg} from {start}");
            assert_eq!(report.value, rat(4, 5));
            assert_eq!(report.split_pattern, SplitPattern::NoSplit);
            for (j, p) in Player::ALL.into_iter().enumerate() {
                assert_eq!(*report.allocation.share(p, j), rat(1, 1));
            }
        }
    }
    println!("PASS criterion 2: e1 six-cycle graph, constant g-tilde 4/5, one-step termination");
}

#[test]
fn c03_e3f_star_graph_f3_census_and_value() {
    let inst = fixtures::e3f();
    let graph = build_graph(&inst);
    assert_eq!(graph.vertex_count(), 4);
    let center = graph.vertex_at(&SimplexPoint::center()).expect("center vertex");
    assert_eq!(graph.vertices[center].face_class, FaceClass::F3);
    assert_eq!(graph.neighbors(center).len(), 3);
    for v in 0..4 {
        if v != center {
            assert_eq!(graph.neighbors(v).len(), 1);
            assert_eq!(graph.neighbors(v)[0].0, center);
        }
    }
    let census = face_allocation_census(&inst, &graph.vertices[center]).unwrap();
    assert_eq!(
        census,
        Census { allocations: 8, hull_vertices: 6, on_edge: 0, interior: 2 }
    );
    let center_value = ValueVector([rat(2, 5), rat(2, 5), rat(2, 5)]);
    let values = face_allocation_values(&inst, &graph.vertices[center]).unwrap();
    assert_eq!(values.iter().filter(|v| **v == center_value).count(), 2);

    for alg in [Algorithm::Simple, Algorithm::Steepest] {
        let report = solve(&inst, alg).unwrap();
        assert_eq!(report.value, rat(2, 5));
        assert_eq!(report.split_pattern, SplitPattern::NoSplit);
        assert!(report.splits.is_empty());
    }
    println!("PASS criterion 3: e3f star graph, F3 census (8,6,0,2), value 2/5, no splits");
}

#[test]
fn c04_f5_fixture_census_and_lp_agreement() {
    // The literal three-point set (e5 points plus their crossing) admits no
    // positive masses: the e5 chord passes through the center. The realized
    // fixture adds a balancing fourth point; the pentagon at q is unchanged.
    let e5 = fixtures::e5();
    let literal = vec![
        item_point(&e5, 0),
        item_point(&e5, 1),
        pt(rat(7, 18), rat(6, 18), rat(5, 18)),
    ];
    assert!(matches!(instance_from_rns_points(&literal), Err(Error::Infeasible(_))));

    let inst = fixtures::f5_fixture();
    let graph = build_graph(&inst);
    let q = graph
        .vertex_at(&pt(rat(7, 18), rat(6, 18), rat(5, 18)))
        .expect("pentagon vertex");
    assert_eq!(graph.vertices[q].face_class, FaceClass::F5);
    let census = face_allocation_census(&inst, &graph.vertices[q]).unwrap();
    assert_eq!(
        census,
        Census { allocations: 12, hull_vertices: 5, on_edge: 4, interior: 3 }
    );
    for alg in [Algorithm::Simple, Algorithm::Steepest] {
        let report = solve(&inst, alg).unwrap();
        assert_eq!(report.value, maxmin_lp(&inst).value, "{alg}");
    }
    println!("PASS criterion 4: F5 fixture census (12,5,4,3), solver matches LP exactly");
}

#[test]
fn c05_randomized_oracle_equivalence() {
    let started = Instant::now();
    for seed in 0..200u64 {
        let m = (seed as usize % 8) + 1;
        let inst = generate_instance(m, seed).unwrap();
        let graph = build_graph(&inst);
        let simple = simple_descent(&inst, &graph, None).unwrap();
        let steepest = steepest_descent(&inst, &graph, None).unwrap();
        assert_eq!(simple.value, steepest.value, "seed {seed}");
        let lp = maxmin_lp(&inst);
        assert_eq!(simple.value, lp.value, "seed {seed}");
        assert_eq!(simple.value, min_gtilde_over_graph(&inst, &graph), "seed {seed}");
        for report in [&simple, &steepest] {
            let totals = allocation_value(&inst, &report.allocation).unwrap();
            assert!(totals.is_equitable(), "seed {seed}");
            assert_eq!(totals.0[0], report.value);
            assert!(report.splits.len() <= 2);
            match report.split_pattern {
                SplitPattern::NoSplit => assert_eq!(report.splits.len(), 0),
                SplitPattern::OneItemUpTo3Players => assert_eq!(report.splits.len(), 1),
                SplitPattern::TwoItemsTwoPlayersEach => {
                    assert_eq!(report.splits.len(), 2);
                    for split in &report.splits {
                        assert_eq!(split.shares.len(), 2);
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    println!("PASS criterion 5: 200 seeded instances match the LP and the global sweep in {elapsed:?}");
}

#[test]
fn c06_support_property() {
    let mut rng = ChaCha8Rng::seed_from_u64(600);
    for seed in 1000..1020u64 {
        let m = (seed as usize % 6) + 1;
        let inst = generate_instance(m, seed).unwrap();
        let report = solve(&inst, Algorithm::Steepest).unwrap();
        let mut gammas = vec![report.gamma_star.clone()];
        for _ in 0..50 {
            gammas.push(random_interior(&mut rng));
        }
        for gamma in &gammas {
            // The brute-force max over integer allocations must equal g
            // exactly, which also bounds every allocation by g.
            assert_eq!(
                hyperplane_support_check(&inst, gamma).unwrap(),
                g_value(&inst, gamma),
                "seed {seed}"
            );
        }
    }
    println!("PASS criterion 6: support check equals g exactly at gamma* and 50 random gammas per instance");
}

#[test]
fn c07_convexity_of_g() {
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    let lambdas = [rat(1, 4), rat(1, 2), rat(3, 4)];
    for seed in 0..10u64 {
        let inst = generate_instance((seed as usize % 6) + 1, 3000 + seed).unwrap();
        for trial in 0..100 {
            let a = random_interior(&mut rng);
            let b = random_interior(&mut rng);
            let lambda = &lambdas[trial % 3];
            let mix = SimplexPoint::new(std::array::from_fn(|i| {
                lambda * &a.coords()[i] + (rat(1, 1) - lambda) * &b.coords()[i]
            }))
            .unwrap();
            let lhs = g_value(&inst, &mix);
            let rhs = lambda * g_value(&inst, &a) + (rat(1, 1) - lambda) * g_value(&inst, &b);
            assert!(lhs <= rhs, "convexity violated at seed {seed} trial {trial}");
        }
    }
    println!("PASS criterion 7: 1000 exact convexity inequalities hold");
}

#[test]
fn c08_duality_of_par_and_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(800);
    for seed in 0..10u64 {
        let inst = generate_instance((seed as usize % 8) + 1, 4000 + seed).unwrap();
        for _ in 0..50 {
            let gamma = random_interior(&mut rng);
            let beta = rd_map(&gamma).unwrap();
            for j in 0..inst.item_count() {
                let algebraic = claim_from_weights(&inst, &gamma, j);
                let geometric = geometric_claim(&inst, &beta, j).unwrap();
                assert_eq!(algebraic, geometric, "seed {seed} item {j}");
            }
        }
    }
    println!("PASS criterion 8: geometric allocation rule matches weight argmax on 500 random points");
}

#[test]
fn c09_shift_lemma_numerics() {
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    let eps = rat(1, 1_000_000);
    let mut worst_parallel = 0.0f64;
    let mut worst_ratio = 0.0f64;
    for _ in 0..100 {
        let c = random_interior(&mut rng);
        for toward in Player::ALL {
            let [pa, pb] = toward.others();
            // Exact point after moving eps toward the corner along the
            // supporting line: the two off-corner coordinates shrink
            // proportionally.
            let ca = c.coord(pa).clone();
            let cb = c.coord(pb).clone();
            let shrink = rat(1, 1) - &eps / (&ca + &cb);
            let mut coords = c.coords().clone();
            coords[toward.index()] = &coords[toward.index()] + &eps;
            coords[pa.index()] = &ca * &shrink;
            coords[pb.index()] = &cb * &shrink;
            let shifted = SimplexPoint::new(coords).unwrap();
            let diff: Vec<f64> = rd_map(&shifted)
                .unwrap()
                .coords()
                .iter()
                .zip(rd_map(&c).unwrap().coords())
                .map(|(after, before)| (after - before).to_f64().unwrap())
                .collect();
            let s = shift_direction(&c, toward).unwrap();
            let sv: Vec<f64> = s.components.iter().map(|x| x.to_f64().unwrap()).collect();
            let eps_f = eps.to_f64().unwrap();
            let norm = |v: &[f64]| v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let (dn, sn) = (norm(&diff), norm(&sv));
            // Parallelism: unit vectors must agree to 1e-5.
            let dev = norm(
                &diff
                    .iter()
                    .zip(&sv)
                    .map(|(d, s)| d / dn - s / sn)
                    .collect::<Vec<f64>>(),
            );
            assert!(dev <= 1e-5, "parallel deviation {dev}");
            // Scale: |diff|/eps must reproduce delta'(0) times the direction
            // norm, i.e. the norm of the shift vector itself.
            let ratio = (dn / eps_f) / sn;
            assert!((ratio - 1.0).abs() <= 1e-5, "norm ratio off by {}", ratio - 1.0);
            worst_parallel = worst_parallel.max(dev);
            worst_ratio = worst_ratio.max((ratio - 1.0).abs());
        }
    }
    println!(
        "PASS criterion 9: finite differences confirm the shift direction (worst parallel dev {worst_parallel:.2e}, worst scale dev {worst_ratio:.2e})"
    );
}

#[test]
fn c10_derivative_signs_match_finite_differences() {
    for seed in 0..50u64 {
        let m = (seed as usize % 5) + 2;
        let inst = generate_instance(m, 5000 + seed).unwrap();
        let graph = build_graph(&inst);
        for v in 0..graph.vertex_count() {
            let location = &graph.vertices[v].location;
            let own = g_tilde(&inst, location).unwrap();
            for &(n, arc_idx) in graph.neighbors(v) {
                let carrier = &graph.arcs[arc_idx].carrier;
                let t_here = carrier.param_of(location).unwrap();
                let t_there = carrier.param_of(&graph.vertices[n].location).unwrap();
                let shift = shift_direction(location, carrier.toward).unwrap();
                let shift = if t_there > t_here { shift } else { shift.reversed() };
                let derivative = directional_derivative(&inst, location, &shift).unwrap();
                // Sample strictly inside the arc: no other vertex sits there,
                // and g is linear along the arc, so signs must agree exactly.
                let mid = carrier.at(&((&t_here + &t_there) / rat(2, 1)));
                let delta = g_tilde(&inst, &mid).unwrap() - &own;
                assert_eq!(
                    derivative.is_positive(),
                    delta.is_positive(),
                    "seed {seed} vertex {v} -> {n}"
                );
                assert_eq!(derivative.is_zero(), delta.is_zero());
            }
        }
        let report = steepest_descent(&inst, &graph, None).unwrap();
        let terminal_value = g_tilde(&inst, &graph.vertices[report.optimal_vertex].location).unwrap();
        for &(n, _) in graph.neighbors(report.optimal_vertex) {
            assert!(g_tilde(&inst, &graph.vertices[n].location).unwrap() >= terminal_value);
        }
    }
    println!("PASS criterion 10: one-sided derivatives match exact finite-difference signs on every arc");
}

#[test]
fn c11_general_position_census() {
    for seed in 0..100u64 {
        let m = 3 + (seed as usize % 6);
        let inst = generate_general_position(m, 6000 + seed, 64).unwrap();
        let graph = build_graph(&inst);
        assert_eq!(
            graph.vertex_count(),
            m + m * (m - 1) / 2,
            "seed {seed} m {m}"
        );
        for v in &graph.vertices {
            assert!(
                matches!(v.face_class, FaceClass::F1 | FaceClass::F2),
                "seed {seed}: unexpected class {:?}",
                v.face_class
            );
        }
    }
    println!("PASS criterion 11: 100 general-position instances have k + C(k,2) vertices, classes F1/F2");
}

#[test]
fn c12_performance_at_scale() {
    let inst = generate_instance(50, 42).unwrap();
    let started = Instant::now();
    let report = solve(&inst, Algorithm::Steepest).unwrap();
    let elapsed_small = started.elapsed();
    assert!(report.splits.len() <= 2);
    assert!(elapsed_small < Duration::from_secs(1), "m=50 took {elapsed_small:?}");

    let inst = generate_instance(200, 43).unwrap();
    let started = Instant::now();
    let report = solve(&inst, Algorithm::Steepest).unwrap();
    let elapsed_large = started.elapsed();
    assert!(report.splits.len() <= 2);
    assert!(elapsed_large < Duration::from_secs(30), "m=200 took {elapsed_large:?}");
    println!(
        "PASS criterion 12: m=50 solved in {elapsed_small:?}, m=200 solved in {elapsed_large:?}"
    );
}
