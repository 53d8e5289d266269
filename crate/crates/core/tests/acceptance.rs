//! Acceptance checks. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use common::*;
use poolq_core::fixtures::{late_separation, mirrored_triangles, pair_fixtures};
use poolq_core::pipeline::{prepare, random_colouring_curve, run_grid, FeatureSource};
use poolq_core::quality::{lambda_full_metered, lambda_group, lambda_ratio, q_single};
use poolq_core::select::{apply_select, RefinementFeasibility};
use poolq_core::spectral::{normalized_laplacian, sym_eigen, unnormalized_laplacian};
use poolq_core::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if let false = $cond {
            return Err(format!($($msg)+));
        }
    };
}

fn mutag() -> DatasetBundle {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/MUTAG");
    load_tudataset(dir, "MUTAG").expect("MUTAG is vendored under data/")
}

fn within(elapsed: Duration, limit: Duration) -> Outcome {
    if elapsed <= limit {
        Ok(format!("{elapsed:.2?}"))
    } else {
        Err(format!("took {elapsed:.2?}, limit {limit:?}"))
    }
}

fn fixture_vectors() -> Outcome {
    let start = Instant::now();
    let mut got = Vec::new();
    for f in pair_fixtures() {
        let r = q_single(&f.zeta_s, &f.p_s, &f.zeta_u, &f.p_u, TransferVariant::Full)
            .map_err(|e| e.to_string())?;
        got.push((f.name, (r.gamma, r.lambda, r.q)));
    }
    let elapsed = start.elapsed();
    let expected = [
        (1.0, 1.0, 1.0),
        (1.0, 0.0, 0.0),
        (0.0, 1.0, 0.0),
        (1.0, 1.0, 1.0),
    ];
    for ((name, v), want) in got.iter().zip(expected) {
        ensure!(*v == want, "fixture {name}: got {v:?}, want {want:?}");
    }
    let t = within(elapsed, Duration::from_millis(1))?;
    Ok(format!("(a)-(d) exact in {t}"))
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..500 {
        let num = rng.random_range(2..=5);
        let inst: Vec<Instance> = (0..num)
            .map(|_| random_instance(&mut rng, 12, 6, 4))
            .collect();
        let (s, u) = (&inst[0], &inst[1]);

        let g = gamma(&s.zeta, &s.partition)
            .map_err(|e| e.to_string())?
            .value;
        ensure!(
            g == gamma_oracle(&s.zeta, &s.labels),
            "trial {trial}: gamma {g}"
        );

        let full = quality::lambda_full(&s.zeta, &s.partition, &u.zeta, &u.partition)
            .unwrap()
            .value;
        let ratio = lambda_ratio(&s.zeta, &s.partition, &u.zeta, &u.partition)
            .unwrap()
            .value;
        ensure!(
            full == lambda_full_oracle(&s.zeta, &s.labels, &u.zeta, &u.labels),
            "trial {trial}: full {full}"
        );
        ensure!(
            ratio == lambda_ratio_oracle(&s.zeta, &s.labels, &u.zeta, &u.labels),
            "trial {trial}: ratio {ratio}"
        );

        for variant in [
            TransferVariant::Full,
            TransferVariant::Ratio,
            TransferVariant::Group,
        ] {
            let q = q_single(&s.zeta, &s.partition, &u.zeta, &u.partition, variant).unwrap();
            ensure!(
                q.q == q.gamma.min(q.lambda),
                "trial {trial}: q_single {variant} not min"
            );
        }

        let cut = rng.random_range(1..num);
        let split = DatasetSplit {
            seen: (0..cut).collect(),
            unseen: (cut..num).collect(),
        };
        let seen: Vec<&Instance> = inst[..cut].iter().collect();
        let unseen: Vec<&Instance> = inst[cut..].iter().collect();
        let seen_pairs: Vec<(&[usize], &Partition)> =
            seen.iter().map(|i| (&i.zeta[..], &i.partition)).collect();
        for (j, x) in unseen.iter().enumerate() {
            for (gi, nodes) in x.partition.groups().iter().enumerate() {
                let hit = lambda_group(&seen_pairs, &x.zeta, nodes).unwrap();
                let sub: Vec<usize> = nodes.iter().map(|&v| x.zeta[v]).collect();
                let one_group = vec![0; sub.len()];
                let want = seen
                    .iter()
                    .any(|s| best_map(&s.zeta, &s.labels, &sub, &one_group).0 == 1);
                ensure!(
                    hit == want,
                    "trial {trial}: lambda_group unseen {j} group {gi}"
                );
            }
        }

        let dataset: Vec<ColouredGraph> = inst
            .iter()
            .map(|i| ColouredGraph::new(i.zeta.clone(), i.partition.clone()).unwrap())
            .collect();
        let full_bar: f64 = unseen
            .iter()
            .map(|x| {
                seen.iter()
                    .map(|s| lambda_full_oracle(&s.zeta, &s.labels, &x.zeta, &x.labels))
                    .fold(0.0, f64::max)
            })
            .sum::<f64>()
            / unseen.len() as f64;
        let ratio_bar: f64 = unseen
            .iter()
            .map(|x| {
                seen.iter()
                    .map(|s| lambda_ratio_oracle(&s.zeta, &s.labels, &x.zeta, &x.labels))
                    .fold(0.0, f64::max)
            })
            .sum::<f64>()
            / unseen.len() as f64;
        let group_bar = lambda_group_oracle(&seen, &unseen);
        for (variant, want) in [
            (TransferVariant::Full, full_bar),
            (TransferVariant::Ratio, ratio_bar),
            (TransferVariant::Group, group_bar),
        ] {
            let got = lambda_bar(&dataset, &split, variant).unwrap();
            ensure!(
                (got - want).abs() <= 1e-12,
                "trial {trial}: lambda_bar {variant} {got} vs {want}"
            );
            let q = q_bar(&dataset, &split, variant).unwrap();
            ensure!(
                q.q == q.gamma.min(q.lambda),
                "trial {trial}: q_bar {variant} not min"
            );
            let gamma_want = inst
                .iter()
                .map(|i| gamma_oracle(&i.zeta, &i.labels))
                .sum::<f64>()
                / num as f64;
            ensure!(
                (q.gamma - gamma_want).abs() <= 1e-12,
                "trial {trial}: gamma_bar {}",
                q.gamma
            );
        }
    }
    let t = within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("500 instances match in {t}"))
}

fn trivial_bounds() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut dataset_unique = Vec::new();
    let mut dataset_constant = Vec::new();
    for i in 0..100 {
        let n = rng.random_range(4..=30);
        let g = random_graph(&mut rng, n, 0.25);
        let p = spectral_partition(&g, ClusterRule::Auto.resolve(n), derive_seed(3, i)).unwrap();
        let unique: Vec<usize> = (0..n).collect();
        ensure!(
            gamma(&unique, &p).unwrap().value == 1.0,
            "graph {i}: unique colours not valid"
        );
        dataset_unique.push(ColouredGraph::new(unique, p.clone()).unwrap());
        dataset_constant.push(ColouredGraph::new(vec![0; n], p).unwrap());
    }
    for (i, u) in dataset_constant.iter().enumerate().skip(1) {
        let s = &dataset_constant[i - 1];
        let full = quality::lambda_full(&s.colours, &s.partition, &u.colours, &u.partition)
            .unwrap()
            .value;
        let ratio = lambda_ratio(&s.colours, &s.partition, &u.colours, &u.partition)
            .unwrap()
            .value;
        let group = lambda_group(
            &[(&s.colours[..], &s.partition)],
            &u.colours,
            u.partition.groups()[0].as_slice(),
        )
        .unwrap();
        ensure!(
            full == 1.0 && ratio == 1.0 && group,
            "pair {i}: constant colouring not transferable"
        );
    }
    let split = split_indices(100, 0.8, 3).unwrap();
    ensure!(
        gamma_bar(&dataset_unique).unwrap() == 1.0,
        "dataset gamma_bar with unique colours below 1"
    );
    for v in [
        TransferVariant::Full,
        TransferVariant::Ratio,
        TransferVariant::Group,
    ] {
        let l = lambda_bar(&dataset_constant, &split, v).unwrap();
        ensure!(l == 1.0, "constant colouring lambda_bar {v} = {l}");
    }
    Ok("100 graphs: unique => gamma 1, constant => lambda 1 (full, ratio, group)".into())
}

fn random_curve_trends() -> Outcome {
    let start = Instant::now();
    let bundle = mutag();
    let fractions: Vec<f64> = (1..=10).map(|i| i as f64 / 10.0).collect();
    let seeds = 10;
    let mut gamma_mean = vec![0.0; fractions.len()];
    let mut lambda_mean = vec![0.0; fractions.len()];
    for seed in 0..seeds {
        let config = PipelineConfig {
            seed,
            ..PipelineConfig::default()
        };
        let prepared = prepare(&bundle, &config).unwrap();
        let pts = random_colouring_curve(
            &bundle,
            &prepared,
            &fractions,
            &[Rounds::Finite(0)],
            TransferVariant::Full,
            seed,
        )
        .unwrap();
        let last = pts.last().unwrap();
        ensure!(
            last.gamma_bar == 1.0,
            "seed {seed}: gamma_bar at k/N = 1 is {}",
            last.gamma_bar
        );
        ensure!(
            last.k_over_n == 1.0,
            "seed {seed}: realized k/N at fraction 1 is {}",
            last.k_over_n
        );
        for (j, p) in pts.iter().enumerate() {
            gamma_mean[j] += p.gamma_bar / seeds as f64;
            lambda_mean[j] += p.lambda_bar / seeds as f64;
        }
    }
    let strictly = gamma_mean.windows(2).all(|w| w[1] > w[0]);
    let rho_g = spearman(&fractions, &gamma_mean);
    let rho_l = spearman(&fractions, &lambda_mean);
    ensure!(
        strictly,
        "mean gamma_bar not strictly increasing: {gamma_mean:.3?}"
    );
    ensure!(rho_g > 0.95, "gamma rho {rho_g:.3}");
    ensure!(
        rho_l < -0.8,
        "lambda rho {rho_l:.3}, curve {lambda_mean:.3?}"
    );
    let t = within(start.elapsed(), Duration::from_secs(30))?;
    Ok(format!(
        "rho(gamma) = {rho_g:.3}, rho(lambda) = {rho_l:.3}, gamma(1) = 1 for 10 seeds, {t}"
    ))
}

fn table_one() -> Outcome {
    let start = Instant::now();
    let bundle = mutag();
    let sources = [
        FeatureSource::Empirical,
        FeatureSource::Same,
        FeatureSource::Mixed,
        FeatureSource::Distinct,
        FeatureSource::LapPe,
    ];
    let seeds = 5u64;
    let mut k = [0.0; 5];
    let mut q = [0.0; 5];
    let mut distinct_exact = true;
    for seed in 0..seeds {
        let config = PipelineConfig {
            seed,
            ..PipelineConfig::default()
        };
        let rows = run_grid(&bundle, &sources, &[Rounds::Finite(0)], &config)
            .map_err(|e| e.to_string())?;
        for (j, r) in rows.iter().enumerate() {
            k[j] += r.k_over_n / seeds as f64;
            q[j] += r.q_bar / seeds as f64;
        }
        distinct_exact &= rows[3].k_over_n == 1.0;
    }
    let [k_emp, k_same, k_mixed, _, _] = k;
    let [q_emp, q_same, _, _, q_lap] = q;
    ensure!((k_emp - 0.19).abs() <= 0.01, "empirical k/N {k_emp:.3}");
    ensure!((k_same - 0.06).abs() <= 0.01, "same k/N {k_same:.3}");
    ensure!(distinct_exact, "distinct k/N not exactly 1");
    ensure!((k_mixed - 0.52).abs() <= 0.05, "mixed k/N {k_mixed:.3}");
    ensure!(
        q_lap > q_emp && q_lap > q_same,
        "ordering Q lap {q_lap:.3}, emp {q_emp:.3}, same {q_same:.3}"
    );
    for (name, got, reference) in [
        ("lap-pe", q_lap, 0.79),
        ("empirical", q_emp, 0.34),
        ("same", q_same, 0.00),
    ] {
        ensure!(
            (got - reference).abs() <= 0.15,
            "{name} Q {got:.3} vs {reference}"
        );
    }
    let t = within(start.elapsed(), Duration::from_secs(300))?;
    Ok(format!(
        "k/N emp {k_emp:.3} same {k_same:.3} mixed {k_mixed:.3} distinct 1; Q lap {q_lap:.3} emp {q_emp:.3} same {q_same:.3}; {t}"
    ))
}

fn wl_properties() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for trial in 0..200 {
        let n = rng.random_range(1..=16);
        let g = random_graph(&mut rng, n, 0.3);
        let init =
            canonicalize_colouring(&(0..n).map(|_| rng.random_range(0..3)).collect::<Vec<_>>())
                .unwrap();
        let mut prev = init.clone();
        for r in 1..=n + 1 {
            let next = refine_colours(&g, &init, Rounds::Finite(r)).unwrap();
            ensure!(
                next.refines(&prev),
                "trial {trial}: round {r} does not refine round {}",
                r - 1
            );
            prev = next;
        }
        let fixed = refine_colours(&g, &init, Rounds::Stable).unwrap();
        let again = refine_colours(&g, &fixed, Rounds::Finite(1)).unwrap();
        ensure!(
            same_classes(&fixed, &again),
            "trial {trial}: fixed point moved"
        );
        ensure!(
            same_classes(&fixed, &prev),
            "trial {trial}: n rounds did not reach the fixed point"
        );

        let mut perm: Vec<usize> = (0..n).collect();
        rand::seq::SliceRandom::shuffle(&mut perm[..], &mut rng);
        let pg = g.permuted(&perm).unwrap();
        let mut pinit = vec![0; n];
        for v in 0..n {
            pinit[perm[v]] = init[v];
        }
        let pfixed = refine_colours(
            &pg,
            &canonicalize_colouring(&pinit).unwrap(),
            Rounds::Stable,
        )
        .unwrap();
        let pulled: Vec<usize> = (0..n).map(|v| pfixed[perm[v]]).collect();
        ensure!(
            same_classes(&fixed, &pulled),
            "trial {trial}: not permutation equivariant"
        );
    }
    let stable =
        |g: &Graph| refine_colours(g, &Colouring::uniform(g.n()).unwrap(), Rounds::Stable).unwrap();
    let p3 = stable(&Graph::new(3, [(0, 1), (1, 2)]).unwrap());
    ensure!(p3.as_slice() == [0, 1, 0], "P3 {:?}", p3.as_slice());
    let star = stable(&Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap());
    ensure!(
        star.as_slice() == [0, 1, 1, 1, 1],
        "star {:?}",
        star.as_slice()
    );
    let c4 = stable(&Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap());
    ensure!(c4.as_slice() == [0, 0, 0, 0], "C4 {:?}", c4.as_slice());
    let t = within(start.elapsed(), Duration::from_secs(5))?;
    Ok(format!("200 graphs + P3/star/C4, {t}"))
}

fn numerical_kernels() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let n = rng.random_range(1..=50);
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let x = rng.random_range(-1.0..1.0);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        worst = worst.max(sym_eigen(&m).unwrap().max_residual(&m));
    }
    ensure!(worst <= 1e-8, "eigen residual {worst:e}");
    let k2 = Graph::new(2, [(0, 1)]).unwrap();
    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() <= 1e-10);
    let combinatorial = |g: &Graph| {
        sym_eigen(&unnormalized_laplacian(&g.adjacency()))
            .unwrap()
            .values
    };
    let normalised = |g: &Graph| {
        sym_eigen(&normalized_laplacian(&g.adjacency()))
            .unwrap()
            .values
    };
    let (k2_l, p3_l) = (combinatorial(&k2), combinatorial(&p3));
    ensure!(close(&k2_l, &[0.0, 2.0]), "K2 spectrum {k2_l:?}");
    ensure!(close(&p3_l, &[0.0, 1.0, 3.0]), "P3 spectrum {p3_l:?}");
    let (k2_n, p3_n) = (normalised(&k2), normalised(&p3));
    ensure!(close(&k2_n, &[0.0, 2.0]), "K2 normalised spectrum {k2_n:?}");
    ensure!(
        close(&p3_n, &[0.0, 1.0, 2.0]),
        "P3 normalised spectrum {p3_n:?}"
    );
    let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
    let rw = spectral::random_walk_pe(&c4, 2).unwrap();
    ensure!(
        (0..4).all(|v| rw[(v, 1)] == 0.5),
        "C4 step-2 return probabilities {:?}",
        rw.column(1)
    );
    let split = Graph::new(7, [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 6), (6, 3)]).unwrap();
    for laplacian in [Laplacian::Sym, Laplacian::Unnormalized] {
        let p = spectral_partition_with(&split, 2, 7, laplacian).unwrap();
        ensure!(
            same_classes(p.membership(), &[0, 0, 0, 1, 1, 1, 1]),
            "{laplacian} components {:?}",
            p.membership()
        );
    }
    Ok(format!(
        "max residual {worst:.1e}; K2, P3, C4 walk, components exact"
    ))
}

fn nmi_checks() -> Outcome {
    let part = |l: &[usize]| Partition::from_labels(l).unwrap();
    let a = part(&[0, 0, 1, 1, 2, 2]);
    ensure!((nmi(&a, &a).unwrap() - 1.0).abs() <= 1e-12, "self NMI");
    let relabelled = part(&[5, 5, 9, 9, 1, 1]);
    ensure!(
        (nmi(&a, &relabelled).unwrap() - 1.0).abs() <= 1e-12,
        "relabel invariance"
    );
    let indep = nmi(&part(&[0, 0, 1, 1]), &part(&[0, 1, 0, 1])).unwrap();
    ensure!(indep.abs() <= 1e-12, "independent 2x2 gives {indep}");
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for _ in 0..200 {
        let n = rng.random_range(1..=30);
        let ka = rng.random_range(1..=5);
        let kb = rng.random_range(1..=5);
        let x: Vec<usize> = (0..n).map(|_| rng.random_range(0..ka)).collect();
        let y: Vec<usize> = (0..n).map(|_| rng.random_range(0..kb)).collect();
        let got = nmi(&part(&x), &part(&y)).unwrap();
        let want = nmi_oracle(&x, &y).clamp(0.0, 1.0);
        worst = worst.max((got - want).abs());
    }
    ensure!(worst <= 1e-12, "oracle gap {worst:e}");
    Ok(format!(
        "self, relabel, independence exact; oracle gap {worst:.1e}"
    ))
}

fn select_cross_check() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut feasible_count = 0;
    for trial in 0..300 {
        let n = rng.random_range(1..=15);
        let k = rng.random_range(1..=4.min(n));
        let target_labels: Vec<usize> = (0..n).map(|_| rng.random_range(0..k)).collect();
        let raw: Vec<usize> = if trial % 2 == 0 {
            target_labels
                .iter()
                .map(|&g| g * 3 + rng.random_range(0..3))
                .collect()
        } else {
            (0..n).map(|_| rng.random_range(0..5)).collect()
        };
        let zeta = canonicalize_colouring(&raw).unwrap();
        let target = Partition::from_labels(&target_labels).unwrap();
        let out = construct_select(&zeta, &target).unwrap();
        let valid = gamma(&zeta, &target).unwrap().value == 1.0;
        ensure!(
            out.feasible == valid,
            "trial {trial}: feasible {} vs gamma==1 {valid}",
            out.feasible
        );
        if let Some(w) = &out.weights {
            feasible_count += 1;
            let assigned = apply_select(&zeta, w).unwrap();
            ensure!(
                assigned == target.membership(),
                "trial {trial}: argmax does not reproduce the target"
            );
        } else {
            ensure!(
                out.certificate.is_some(),
                "trial {trial}: infeasible without certificate"
            );
        }
    }
    let top = late_separation();
    let init = canonicalize_colouring(&top.init).unwrap();
    let at_two = feasible_after_refinement(&top.graph, &init, &top.target, 2).unwrap();
    ensure!(
        matches!(at_two, RefinementFeasibility::NotWithin { max_rounds: 2 }),
        "late separation within 2 rounds: {at_two:?}"
    );
    let later = feasible_after_refinement(&top.graph, &init, &top.target, 10).unwrap();
    let RefinementFeasibility::Feasible { rounds } = later else {
        return Err(format!("late separation never feasible: {later:?}"));
    };
    ensure!(rounds > 2, "late separation feasible at {rounds}");
    let bottom = mirrored_triangles();
    let never = feasible_after_refinement(
        &bottom.graph,
        &canonicalize_colouring(&bottom.init).unwrap(),
        &bottom.target,
        10,
    )
    .unwrap();
    ensure!(
        matches!(never, RefinementFeasibility::Never { .. }),
        "mirrored triangles: {never:?}"
    );
    Ok(format!(
        "300 instances ({feasible_count} feasible); separation at r = {rounds}; mirrored never"
    ))
}

fn complexity_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for trial in 0..500 {
        let s = random_instance(&mut rng, 12, 6, 4);
        let u = random_instance(&mut rng, 12, 6, 4);
        let mut meter = OpCounter::default();
        lambda_full_metered(&s.zeta, &s.partition, &u.zeta, &u.partition, &mut meter).unwrap();
        let bound = (u.zeta.len() * s.partition.k() + s.zeta.len()) as f64;
        let ratio = meter.total() as f64 / bound;
        ensure!(
            ratio <= 4.0,
            "trial {trial}: {} operations for bound {bound}",
            meter.total()
        );
        worst = worst.max(ratio);
    }
    Ok(format!("max ops / (|V_u||P_s| + |V_s|) = {worst:.3}"))
}

fn determinism() -> Outcome {
    let bundle = mutag();
    let config = PipelineConfig {
        seed: 42,
        ..PipelineConfig::default()
    };
    let rounds = [Rounds::Finite(0), Rounds::Finite(1), Rounds::Stable];
    let run = |threads: usize| -> String {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| {
            let evals = run_grid(&bundle, &FeatureSource::ALL, &rounds, &config).unwrap();
            let resolved =
                report::ResolvedConfig::new(&bundle.name, &FeatureSource::ALL, &rounds, &config);
            let split = split_seen_unseen(&bundle, config.split_fraction, config.seed).unwrap();
            QualityRun::new(resolved, split, evals).to_json().unwrap()
        })
    };
    let a = run(1);
    let b = run(4);
    let c = run(4);
    ensure!(
        a == b && b == c,
        "reports differ across runs or thread counts"
    );
    Ok(format!("{} bytes identical for 1, 4, 4 threads", a.len()))
}

fn main() {
    let criteria: [Check; 11] = [
        ("fixture vectors", fixture_vectors),
        ("oracle equivalence", oracle_equivalence),
        ("trivial bounds", trivial_bounds),
        ("random-colouring trends", random_curve_trends),
        ("table reproduction", table_one),
        ("refinement properties", wl_properties),
        ("numerical kernels", numerical_kernels),
        ("nmi", nmi_checks),
        ("select cross-check", select_cross_check),
        ("complexity contract", complexity_contract),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match result {
            Ok(detail) => println!("PASS criterion {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
