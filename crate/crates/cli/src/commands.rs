use anyhow::Result;
use poolq_core::fixtures::{late_separation, mirrored_triangles, pair_fixtures};
use poolq_core::pipeline::{
    prepare, random_colouring_curve, run_grid, source_colours, threshold_curve, FeatureSource,
};
use poolq_core::refine::refinement_trajectory;
use poolq_core::select::apply_select;
use poolq_core::{
    canonicalize_colouring, construct_select, dataset_alignment, derive_seed,
    feasible_after_refinement, lambda_full, load_tudataset, spectral_partition_with,
    split_seen_unseen, Colouring, DatasetBundle, PipelineConfig, QualityRun, ResolvedConfig,
    Rounds,
};
use serde_json::json;

use crate::args::{
    CurvesArgs, DatasetArgs, FeasibilityArgs, NmiArgs, QualityArgs, RefineDumpArgs, ScoringArgs,
};
use crate::output;
use crate::UsageError;

fn load(data: &DatasetArgs) -> Result<DatasetBundle> {
    let dir = output::dataset_dir(data.dataset.as_deref(), &data.name)?;
    Ok(load_tudataset(dir, &data.name)?)
}

fn check_split(scoring: &ScoringArgs) -> Result<()> {
    if !(scoring.split > 0.0 && scoring.split < 1.0) {
        return Err(
            UsageError(format!("--split must lie in (0, 1), got {}", scoring.split)).into(),
        );
    }
    Ok(())
}

fn sources_label(sources: &[FeatureSource]) -> String {
    if sources == FeatureSource::ALL {
        "all".into()
    } else {
        sources
            .iter()
            .map(|s| s.as_str())
            .collect::<Vec<_>>()
            .join("+")
    }
}

pub fn quality(args: &QualityArgs) -> Result<()> {
    check_split(&args.scoring)?;
    let tau_grid = match args.tau {
        Some(t) if (0.0..=1.0).contains(&t) => vec![t],
        Some(t) => return Err(UsageError(format!("--tau must lie in [0, 1], got {t}")).into()),
        None => output::grid(&args.tau_grid)?,
    };
    let bundle = load(&args.data)?;
    let config = PipelineConfig {
        split_fraction: args.scoring.split,
        seed: args.data.seed,
        clusters: args.scoring.clusters,
        laplacian: args.scoring.laplacian,
        variant: args.scoring.variant,
        alphabet: args.alphabet,
        tau_grid,
        pe_dim: args.pe_dim,
        empirical: args.empirical,
    };
    let sources = &args.features.0;
    let rounds = &args.cr.0;
    let mut evaluations = run_grid(&bundle, sources, rounds, &config)?;
    if !args.keep_curves {
        evaluations.iter_mut().for_each(|e| e.curve = None);
    }
    let mut resolved = ResolvedConfig::new(&bundle.name, sources, rounds, &config);
    resolved.affinity = args.affinity;
    let split = split_seen_unseen(&bundle, config.split_fraction, config.seed)?;
    let run = QualityRun::new(resolved, split, evaluations);

    let default = format!(
        "{}-{}-{}",
        bundle.name,
        sources_label(sources),
        config.variant
    );
    let stem = output::stem(args.data.out.as_deref(), &default);
    let json_path = output::write(&stem, ".json", &run.to_json()?)?;
    let csv_path = output::write(&stem, ".csv", &run.to_csv())?;
    for row in &run.rows {
        let tau = row
            .tau
            .map(|t| format!("{t:.2}"))
            .unwrap_or_else(|| "-".into());
        println!(
            "{:<10} cr={:<3} tau={:<4} k/N={:.3} gamma={:.3} lambda={:.3} q={:.3}",
            row.feature_source.as_str(),
            row.cr_rounds.to_string(),
            tau,
            row.k_over_n,
            row.gamma_bar,
            row.lambda_bar,
            row.q_bar
        );
    }
    println!("wrote {} and {}", json_path.display(), csv_path.display());
    Ok(())
}

pub fn curves(args: &CurvesArgs) -> Result<()> {
    check_split(&args.scoring)?;
    let grid = output::grid(&args.tau_grid)?;
    let bundle = load(&args.data)?;
    let config = PipelineConfig {
        split_fraction: args.scoring.split,
        seed: args.data.seed,
        clusters: args.scoring.clusters,
        laplacian: args.scoring.laplacian,
        variant: args.scoring.variant,
        tau_grid: grid.clone(),
        pe_dim: args.pe_dim,
        ..PipelineConfig::default()
    };
    let prepared = prepare(&bundle, &config)?;
    let random = random_colouring_curve(
        &bundle,
        &prepared,
        &args.fractions,
        &args.cr.0,
        config.variant,
        config.seed,
    )
    .map_err(|e| match e {
        poolq_core::Error::InvalidArgument(m) => anyhow::Error::new(UsageError(m)),
        other => other.into(),
    })?;
    let lap = threshold_curve(
        &source_colours(&bundle, FeatureSource::LapPe, &config)?,
        &grid,
    )?;
    let rw = threshold_curve(
        &source_colours(&bundle, FeatureSource::RwPe, &config)?,
        &grid,
    )?;

    let mut random_csv = String::from("fraction,cr_rounds,k_over_n,gamma_bar,lambda_bar,q_bar\n");
    for p in &random {
        random_csv.push_str(&format!(
            "{},{},{:.6},{:.6},{:.6},{:.6}\n",
            p.fraction, p.cr_rounds, p.k_over_n, p.gamma_bar, p.lambda_bar, p.q_bar
        ));
    }
    let mut tau_csv = String::from("tau,lap_pe_k_over_n,rw_pe_k_over_n\n");
    for (a, b) in lap.iter().zip(&rw) {
        tau_csv.push_str(&format!("{},{:.6},{:.6}\n", a.tau, a.k_over_n, b.k_over_n));
    }
    let report = json!({
        "dataset": bundle.name,
        "seed": config.seed,
        "variant": config.variant,
        "k_rule": config.clusters,
        "laplacian": config.laplacian,
        "split_fraction": config.split_fraction,
        "pe_dim": config.pe_dim,
        "tau_grid": grid,
        "random_colourings": random,
        "thresholds": { "lap-pe": lap, "rw-pe": rw },
    });
    let stem = output::stem(
        args.data.out.as_deref(),
        &format!("{}-curves-{}", bundle.name, config.variant),
    );
    let paths = [
        output::write(&stem, ".json", &output::json(&report)?)?,
        output::write(&stem, "-random.csv", &random_csv)?,
        output::write(&stem, "-thresholds.csv", &tau_csv)?,
    ];
    for p in paths {
        println!("wrote {}", p.display());
    }
    Ok(())
}

pub fn nmi(args: &NmiArgs) -> Result<()> {
    let bundle = load(&args.data)?;
    let seeds: Vec<u64> = (0..bundle.len())
        .map(|i| derive_seed(args.data.seed, i))
        .collect();
    let m = dataset_alignment(
        &bundle.graphs,
        args.clusters,
        &seeds,
        args.affinity,
        args.laplacian,
        args.normalisation,
    )?;
    let mut csv = format!(",{}\n", m.labels.join(","));
    for (i, label) in m.labels.iter().enumerate() {
        let row: Vec<String> = (0..m.labels.len())
            .map(|j| format!("{:.6}", m.values[(i, j)]))
            .collect();
        csv.push_str(&format!("{label},{}\n", row.join(",")));
    }
    let report = json!({
        "dataset": bundle.name,
        "seed": args.data.seed,
        "k_rule": args.clusters,
        "laplacian": args.laplacian,
        "affinity": args.affinity,
        "nmi_normalisation": args.normalisation,
        "labels": m.labels,
        "values": (0..m.labels.len()).map(|i| m.values.row(i).to_vec()).collect::<Vec<_>>(),
    });
    let stem = output::stem(args.data.out.as_deref(), &format!("{}-nmi", bundle.name));
    output::write(&stem, ".json", &output::json(&report)?)?;
    let path = output::write(&stem, ".csv", &csv)?;
    print!("{csv}");
    println!("wrote {}", path.display());
    Ok(())
}

fn initial_colouring(bundle: &DatasetBundle, graph: usize, labels: bool) -> Result<Colouring> {
    if labels {
        if let Some(c) = bundle.node_label_colouring(graph) {
            return Ok(c);
        }
        return Err(UsageError(format!("dataset {} has no node labels", bundle.name)).into());
    }
    Ok(Colouring::uniform(bundle.graphs[graph].n())?)
}

pub fn refine_dump(args: &RefineDumpArgs) -> Result<()> {
    let bundle = load(&args.data)?;
    let max_r = match args.rounds {
        Rounds::Finite(r) => r,
        Rounds::Stable => 0,
    };
    let mut graphs = Vec::with_capacity(bundle.len());
    let mut worst = 0;
    for (i, g) in bundle.graphs.iter().enumerate() {
        let init = initial_colouring(&bundle, i, args.labels)?;
        let t = refinement_trajectory(g, &init, max_r)?;
        worst = worst.max(t.stable_round);
        let mut counts: Vec<usize> = t.colourings.iter().map(Colouring::num_colours).collect();
        let last = match args.rounds {
            Rounds::Finite(_) => t
                .colourings
                .last()
                .cloned()
                .unwrap_or_else(|| t.fixed_point.clone()),
            Rounds::Stable => {
                counts = vec![init.num_colours(), t.fixed_point.num_colours()];
                t.fixed_point.clone()
            }
        };
        graphs.push(json!({
            "graph": i,
            "nodes": g.n(),
            "stable_round": t.stable_round,
            "colour_counts": counts,
            "colours": last.as_slice(),
        }));
    }
    let report = json!({
        "dataset": bundle.name,
        "rounds": args.rounds,
        "initial": if args.labels { "labels" } else { "uniform" },
        "max_stable_round": worst,
        "graphs": graphs,
    });
    let stem = output::stem(args.data.out.as_deref(), &format!("{}-refine", bundle.name));
    let path = output::write(&stem, ".json", &output::json(&report)?)?;
    println!("{} graphs, largest stable round {worst}", bundle.len());
    println!("wrote {}", path.display());
    Ok(())
}

pub fn feasibility(args: &FeasibilityArgs) -> Result<()> {
    let (name, report) = match args.fixture.as_deref() {
        Some(f @ ("late-separation" | "mirrored-triangles")) => {
            let fx = if f == "late-separation" {
                late_separation()
            } else {
                mirrored_triangles()
            };
            let init = canonicalize_colouring(&fx.init)?;
            let outcome = feasible_after_refinement(&fx.graph, &init, &fx.target, args.max_rounds)?;
            (
                f.to_string(),
                json!({ "fixture": f, "refinement": outcome }),
            )
        }
        Some(f) => {
            let fx = pair_fixtures()
                .into_iter()
                .find(|p| p.name == f)
                .ok_or_else(|| UsageError(format!("unknown fixture {f:?}")))?;
            let seen = construct_select(&canonicalize_colouring(&fx.zeta_s)?, &fx.p_s)?;
            let unseen = construct_select(&canonicalize_colouring(&fx.zeta_u)?, &fx.p_u)?;
            let transfer = lambda_full(&fx.zeta_s, &fx.p_s, &fx.zeta_u, &fx.p_u)?;
            let feasible = seen.feasible && unseen.feasible && transfer.value == 1.0;
            (
                format!("fixture-{f}"),
                json!({
                    "fixture": f,
                    "feasible": feasible,
                    "seen": seen,
                    "unseen": unseen,
                    "transferable": transfer.value == 1.0,
                    "unmatched_unseen_groups": transfer.unmatched,
                }),
            )
        }
        None => {
            let bundle = load(&args.data)?;
            let i = args.graph;
            let g = bundle.graphs.get(i).ok_or_else(|| {
                UsageError(format!("graph {i} out of range ({} graphs)", bundle.len()))
            })?;
            let target = spectral_partition_with(
                g,
                args.clusters.resolve(g.n()),
                derive_seed(args.data.seed, i),
                args.laplacian,
            )?;
            let init = initial_colouring(&bundle, i, args.labels)?;
            let select = construct_select(&init, &target)?;
            if let Some(w) = &select.weights {
                debug_assert_eq!(apply_select(&init, w)?, target.membership());
            }
            let outcome = feasible_after_refinement(g, &init, &target, args.max_rounds)?;
            (
                format!("{}-graph{i}-feasibility", bundle.name),
                json!({
                    "dataset": bundle.name,
                    "graph": i,
                    "seed": args.data.seed,
                    "k_rule": args.clusters,
                    "laplacian": args.laplacian,
                    "target": target.membership(),
                    "select": select,
                    "refinement": outcome,
                }),
            )
        }
    };
    let text = output::json(&report)?;
    print!("{text}");
    let stem = output::stem(args.data.out.as_deref(), &name);
    let path = output::write(&stem, ".json", &text)?;
    println!("wrote {}", path.display());
    Ok(())
}
