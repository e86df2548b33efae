//! Command implementations.

use crate::report::{
    render, ReduceReport, SolveReport, StatsReport, VerifyKindSummary, VerifySummary,
    FORMAT_VERSION,
};
use crate::{
    BkpLevelArg, CommandError, FamilyArg, GenerateArgs, ReduceArgs, SolveArgs, StatsArgs,
    VerifyArgs,
};
use mepvcb::format::{digest_any, parse_any, parse_mepvcb, serialize_any};
use mepvcb::generate::{self, rng_from_seed, BkpLevel};
use mepvcb::instance::{Answer, AnyInstance, MepvcbInstance};
use mepvcb::matching::max_weight_matching;
use mepvcb::reductions::{
    apply_reduction, verify_reduction, OracleCaps, ReductionKind, VerifyStatus,
};
use mepvcb::solvers::{solve, SolveConfig, SolveError};
use mepvcb::{graph_stats, Graph};
use std::path::Path;
use std::process::ExitCode;
use std::time::Instant;

fn read_input(path: &Path) -> Result<String, CommandError> {
    std::fs::read_to_string(path)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

fn write_output(path: &Path, content: &str) -> Result<(), CommandError> {
    std::fs::write(path, content)
        .map_err(|e| CommandError::Input(format!("{}: {e}", path.display())))
}

pub fn cmd_solve(args: &SolveArgs) -> Result<ExitCode, CommandError> {
    let text = read_input(&args.input)?;
    let inst: MepvcbInstance<i64> = parse_mepvcb(&text)
        .map_err(|e| CommandError::Input(format!("{}: {e}", args.input.display())))?;
    let config = SolveConfig {
        oracle_vertex_cap: args.oracle_cap,
        strategy: args.strategy.to_strategy(),
        seed: args.seed,
        ..SolveConfig::default()
    };
    let started = Instant::now();
    let verdict = solve(&inst, &config).map_err(|e| match e {
        SolveError::CapExceeded { .. } => CommandError::Cap(e.to_string()),
    })?;
    let elapsed = started.elapsed();

    match &verdict.answer {
        Answer::Yes(cert) => {
            println!("verdict: yes");
            println!("method: {}", verdict.method);
            let chosen: Vec<String> = cert.chosen.iter().map(|v| v.to_string()).collect();
            println!("chosen ({}): {}", chosen.len(), chosen.join(" "));
            println!("covered weight: {} (k2 = {})", cert.covered_weight, inst.k2);
            println!(
              "matching weight: {} (k3 = {}, {} edges)",
                cert.matching_weight,
                inst.k3,
                cert.matching.len()
            );
        }
        Answer::No => {
            println!("verdict: no");
            println!("method: {}", verdict.method);
        }
    }
    println!("time: {elapsed:?}");

    if let Some(json_path) = &args.json_out {
        let digest = digest_any(&AnyInstance::Mepvcb(inst.clone()));
        let report = SolveReport::new(
            &inst.graph,
            digest,
            &verdict,
            args.strategy.name().to_string(),
            args.seed,
        );
        write_output(json_path, &render(&report))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn lookup_reduction(name: &str) -> Result<ReductionKind, CommandError> {
    ReductionKind::from_name(name).ok_or_else(|| {
        let names: Vec<&str> = ReductionKind::ALL.iter().map(|k| k.name()).collect();
        CommandError::Input(format!(
            "unknown reduction `{name}`; available: {}",
            names.join(", ")
        ))
    })
}

pub fn cmd_reduce(args: &ReduceArgs) -> Result<ExitCode, CommandError> {
    let kind = lookup_reduction(&args.reduction)?;
    let text = read_input(&args.input)?;
    let source: AnyInstance<i64> = parse_any(&text)
        .map_err(|e| CommandError::Input(format!("{}: {e}", args.input.display())))?;
    let reduced = apply_reduction(kind, &source, args.mutate)
        .map_err(|e| CommandError::Input(format!("{}: {e}", kind.name())))?;

    write_output(&args.output, &serialize_any(&reduced.target))?;
    let report = ReduceReport {
        format_version: FORMAT_VERSION,
        reduction: kind.name().to_string(),
        source_digest: digest_any(&source),
        target_digest: digest_any(&reduced.target),
        source_budget: source.budget(),
        target_budget: reduced.target.budget(),
        params: reduced.params,
    };
    let sidecar = args.output.with_extension("report.json");
    write_output(&sidecar, &render(&report))?;
    println!(
        "{}: wrote {} (report: {})",
        kind.name(),
        args.output.display(),
        sidecar.display()
    );
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode, CommandError> {
    if args.list {
        for kind in ReductionKind::ALL {
            println!("{}", kind.name());
        }
        return Ok(ExitCode::SUCCESS);
    }
    let kinds: Vec<ReductionKind> = if args.reduction == "all" {
        ReductionKind::ALL.to_vec()
    } else {
        vec![lookup_reduction(&args.reduction)?]
    };
    let caps = OracleCaps {
        vertex_cap: args.oracle_cap,
        item_cap: args.item_cap,
    };
    let mut summaries = Vec::new();
    let mut total_mismatches = 0usize;
    let mut first_witness: Option<String> = None;
    let mut corpus_count = 0usize;
    for kind in &kinds {
        let corpus: Vec<AnyInstance<i64>> = generate::reduction_corpus(*kind, args.seed, args.count);
        corpus_count += corpus.len();
        let reports = verify_reduction(*kind, &corpus, caps, args.mutate, args.workers.max(1));
        let mut equivalent = 0;
        let mut mismatches = 0;
        let mut unverified = 0;
        for r in &reports {
            match &r.status {
                VerifyStatus::Equivalent => equivalent += 1,
                VerifyStatus::Mismatch { witness, .. } => {
                    mismatches += 1;
                    if first_witness.is_none() {
                        first_witness = Some(witness.clone());
                    }
                }
                VerifyStatus::Unverified { .. } => unverified += 1,
            }
        }
        println!(
            "{}: {} equivalent, {} mismatch, {} unverified",
            kind.name(),
            equivalent,
            mismatches,
            unverified
        );
        total_mismatches += mismatches;
        summaries.push(VerifyKindSummary {
            reduction: kind.name().to_string(),
            equivalent,
            mismatches,
            unverified,
            reports,
        });
    }
    if let Some(json_path) = &args.json_out {
        let summary = VerifySummary {
            format_version: FORMAT_VERSION,
            seed: args.seed,
            corpus_count,
            mutated: args.mutate,
            kinds: summaries,
        };
        write_output(json_path, &render(&summary))?;
    }
    if total_mismatches > 0 {
        let witness = first_witness.expect("mismatch recorded a witness");
        write_output(&args.witness_out, &witness)?;
        eprintln!(
            "{total_mismatches} mismatch(es); first witness written to {}",
            args.witness_out.display()
        );
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_generate(args: &GenerateArgs) -> Result<ExitCode, CommandError> {
    let mut rng = rng_from_seed(args.seed);
    if args.min_weight < 0 || args.max_weight < args.min_weight {
        return Err(CommandError::Input(
            "weight range must satisfy 0 <= min <= max".into(),
        ));
    }
    let graph_instance = |graph: Graph,
                          rng: &mut generate::ChaCha8Rng|
     -> Result<AnyInstance<i64>, CommandError> {
        let (mut k1, mut k2, mut k3) = generate::random_thresholds(rng, &graph);
        if let Some(v) = args.k1 {
            k1 = v;
        }
        if let Some(v) = args.k2 {
            k2 = v;
        }
        if let Some(v) = args.k3 {
            k3 = v;
        }
        MepvcbInstance::new(graph, k1, k2, k3)
            .map(AnyInstance::Mepvcb)
            .map_err(|e| CommandError::Input(e.to_string()))
    };
    let instance: AnyInstance<i64> = match args.family {
        FamilyArg::RandomBipartite => {
            if args.left == 0 || args.right == 0 {
                return Err(CommandError::Input("sides must be non-empty".into()));
            }
            let g = generate::random_bipartite(
                &mut rng,
                args.left,
                args.right,
                args.edges,
                args.min_weight,
                args.max_weight,
            );
            graph_instance(g, &mut rng)?
        }
        FamilyArg::TwoPaths => {
            if args.paths == 0 {
                return Err(CommandError::Input("need at least one path".into()));
            }
            let g = generate::two_paths(&mut rng, args.paths, args.min_weight, args.max_weight);
            graph_instance(g, &mut rng)?
        }
        FamilyArg::Regular => {
            if args.degree == 0 || args.degree > args.side {
                return Err(CommandError::Input(format!(
                    "degree {} impossible on side {}",
                    args.degree, args.side
                )));
            }
            let g = generate::regular_bipartite(
                &mut rng,
                args.side,
                args.degree,
                args.min_weight,
                args.max_weight,
            );
            graph_instance(g, &mut rng)?
        }
        FamilyArg::Complete => {
            if args.left == 0 || args.right == 0 {
                return Err(CommandError::Input("sides must be non-empty".into()));
            }
            let g = generate::complete_bipartite(
                &mut rng,
                args.left,
                args.right,
                args.min_weight,
                args.max_weight,
            );
            graph_instance(g, &mut rng)?
        }
        FamilyArg::Bkp => {
            if args.items == 0 {
                return Err(CommandError::Input("need at least one item".into()));
            }
            let level = if args.gap {
                BkpLevel::Gapped
            } else {
                match args.level {
                    BkpLevelArg::Signed => BkpLevel::Signed,
                    BkpLevelArg::Positive => BkpLevel::Positive,
                    BkpLevelArg::Ordered => BkpLevel::Ordered,
                    BkpLevelArg::Gapped => BkpLevel::Gapped,
                }
            };
            AnyInstance::Bkp(generate::random_bkp(
                &mut rng,
                args.items,
                args.magnitude.max(2),
                level,
            ))
        }
        FamilyArg::Subsetsum => {
            if args.items == 0 {
                return Err(CommandError::Input("need at least one value".into()));
            }
            AnyInstance::SubsetSum(generate::random_subsetsum(
                &mut rng,
                args.items,
                args.magnitude.max(1),
            ))
        }
    };
    write_output(&args.output, &serialize_any(&instance))?;
    println!(
        "generated {} instance: {} (digest {})",
        instance.kind_name(),
        args.output.display(),
        digest_any(&instance)
    );
    Ok(ExitCode::SUCCESS)
}

pub fn cmd_stats(args: &StatsArgs) -> Result<ExitCode, CommandError> {
    let text = read_input(&args.input)?;
    let inst: MepvcbInstance<i64> = parse_mepvcb(&text)
        .map_err(|e| CommandError::Input(format!("{}: {e}", args.input.display())))?;
    let stats = graph_stats(&inst.graph, args.induced_cap);
    let best_matching = max_weight_matching(&inst.graph).total_weight;
    let report = StatsReport::new(&inst, &stats, best_matching);

    println!(
        "graph: left {} right {} edges {} total weight {}",
        report.left, report.right, report.edges, report.total_weight
    );
    println!(
        "degrees: max {} |V0| {} |V1| {} |V2| {} |V>=2| {} |V>=3| {}",
        report.max_degree,
        report.degree_0,
        report.degree_1,
        report.degree_2,
        report.at_least_2,
        report.at_least_3
    );
    println!(
        "numbers: tau {} nu {} alpha {} nu_w {}",
        report.tau, report.nu, report.alpha, report.max_matching_weight
    );
    match report.nu_ind {
        Some(v) => println!("nu_ind: {v}"),
        None => println!("nu_ind: skipped (|V| > {})", args.induced_cap),
    }
    println!(
        "metric: radius {} diameter {} disconnected {}",
        report.radius, report.diameter, report.disconnected
    );
    println!(
        "thresholds: k1 {} k2 {} k3 {}",
        report.k1, report.k2, report.k3
    );
    println!(
        "normalization: k1 >= tau: {}; k2 <= k3: {}; k2 >= k3 * max_degree: {}",
        report.budget_rule_applies, report.matching_rule_applies, report.ratio_rule_applies
    );

    if let Some(json_path) = &args.json_out {
        write_output(json_path, &render(&report))?;
    }
    Ok(ExitCode::SUCCESS)
}
