use anyhow::anyhow;
use fdsc_core::oracle::{a1a2_check, exact_structure_connectivity_with, super_cut_probe};
use fdsc_core::{
    apply_cut, k11_cut, k1_cut, k1m_cut, lemmas, predicted_kappa, validate_family, Budget,
    CutReport, Dim, ExportFormat, FamilyJson, FaultFamily, Graph, Mode, SearchOptions, Variant,
    VertexLabel,
};
use serde_json::{json, Value};

use crate::{CutArgs, Failure, OracleArgs, Outcome, Pattern, ProbeArgs, ProbeCheck, VerifyArgs};

type Reported = Result<(Value, Outcome), Failure>;

fn make_dim(d: u32) -> Result<Dim, Failure> {
    Ok(Dim::new(d)?)
}

fn with_threads<T: Send>(
    threads: Option<usize>,
    f: impl FnOnce() -> T + Send,
) -> Result<T, Failure> {
    match threads {
        None => Ok(f()),
        Some(0) => Err(Failure::usage(anyhow!("--threads must be at least 1"))),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t)
                .build()
                .map_err(|e| Failure::usage(anyhow!(e)))?;
            Ok(pool.install(f))
        }
    }
}

pub fn gen(d: u32, variant: Variant, format: ExportFormat) -> Result<String, Failure> {
    let g = Graph::build(make_dim(d)?, variant)?;
    let mut buf = Vec::new();
    g.export(format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("export is ascii"))
}

fn labels(dim: Dim, vs: impl IntoIterator<Item = VertexLabel>) -> Vec<String> {
    vs.into_iter().map(|v| dim.format_label(v)).collect()
}

fn cut_json(dim: Dim, report: &CutReport) -> Value {
    json!({
        "removed_vertex_count": report.removed_vertex_count,
        "survivors": report.census.survivor_count,
        "component_count": report.census.component_count,
        "component_sizes": report.census.component_sizes,
        "smallest_component": labels(dim, report.census.smallest_component_members.iter().copied()),
        "is_cut": report.is_cut,
        "isolated": report.isolated_target.map(|v| dim.format_label(v)),
    })
}

pub fn cut(args: &CutArgs) -> Reported {
    let dim = make_dim(args.common.d)?;
    if args.pattern != Pattern::K1m && (args.m.is_some() || args.module.is_some()) {
        return Err(Failure::usage(anyhow!(
            "--m and --module only apply to --pattern k1m"
        )));
    }
    let parsed_u = args.u.as_deref().map(|s| dim.parse_label(s)).transpose()?;
    let (family, u) = match args.pattern {
        Pattern::K1 => {
            let u = parsed_u.unwrap_or(VertexLabel(0));
            (k1_cut(u, dim), u)
        }
        Pattern::K11 => {
            let u = parsed_u.unwrap_or(VertexLabel(0));
            (k11_cut(u, dim)?, u)
        }
        Pattern::K1m => {
            let m = args
                .m
                .ok_or_else(|| Failure::usage(anyhow!("--pattern k1m needs --m")))?;
            let from_module = args
                .module
                .as_deref()
                .map(|s| dim.parse_address(s))
                .transpose()?;
            let b1 = match (parsed_u, from_module) {
                (Some(u), module) => {
                    let b1 = dim.module_address(u);
                    if dim.join(dim.complement_address(b1), b1) != u {
                        return Err(Failure::usage(anyhow!(
                            "--u {} is not of the form complement(B1)·B1",
                            dim.format_label(u)
                        )));
                    }
                    if module.is_some_and(|b| b != b1) {
                        return Err(Failure::usage(anyhow!(
                            "--u and --module name different modules"
                        )));
                    }
                    b1
                }
                (None, module) => module.unwrap_or(fdsc_core::ModuleAddress(0)),
            };
            k1m_cut(dim, m, b1)?
        }
    };

    let validation = validate_family(&family, dim);
    let covers = family.isolates(u, dim);
    let mut passed = validation.is_ok() && covers;
    let mut applied = Value::Null;
    if args.verify {
        let g = Graph::build(dim, Variant::Fdsc)?;
        let report = apply_cut(&g, &family);
        passed &= report.is_cut;
        applied = cut_json(dim, &report);
    }
    let config = json!({
        "d": dim.d(),
        "variant": "fdsc",
        "pattern": format!("{:?}", args.pattern).to_lowercase(),
        "m": args.m,
        "module": args.module.clone().unwrap_or_else(|| dim.format_address(fdsc_core::ModuleAddress(0))),
        "u": dim.format_label(u),
        "verify": args.verify,
    });
    let report = json!({
        "n": dim.n(),
        "u": dim.format_label(u),
        "family": family.to_json(dim),
        "size": family.len(),
        "predicted_kappa": predicted_kappa(dim.d(), family.pattern_m, family.mode),
        "valid": validation.is_ok(),
        "violation": validation.err().map(|v| v.to_string()),
        "covers_neighborhood": covers,
        "applied": applied,
    });
    Ok((config, Outcome { report, passed }))
}

pub fn oracle(args: &OracleArgs) -> Reported {
    let dim = make_dim(args.common.d)?;
    let variant: Variant = args.variant.into();
    let mode: Mode = args.mode.into();
    let g = Graph::build(dim, variant)?;
    let opts = SearchOptions {
        max_subsets: Some(args.max_subsets),
        seed: args.seed,
        no_pruning: args.no_pruning,
    };
    let result = with_threads(args.threads, || {
        exact_structure_connectivity_with(&g, args.m, mode, args.budget, &opts)
    })??;
    let predicted = match variant {
        Variant::Fdsc => predicted_kappa(dim.d(), args.m, mode),
        Variant::Dsc => None,
    };
    let consistent = match (result.value, predicted) {
        (Some(v), Some(p)) => v == p as usize,
        (None, Some(p)) => p as usize > args.budget,
        (_, None) => true,
    };
    let config = json!({
        "d": dim.d(),
        "variant": variant.as_str(),
        "m": args.m,
        "mode": mode.as_str(),
        "budget": args.budget,
        "seed": args.seed,
        "threads": args.threads,
        "max_subsets": args.max_subsets,
        "no_pruning": args.no_pruning,
    });
    let mut report = result.to_json();
    report["predicted"] = json!(predicted);
    report["consistent"] = json!(consistent);
    Ok((
        config,
        Outcome {
            report,
            passed: consistent,
        },
    ))
}

pub fn lemmas(d: u32) -> Reported {
    let dim = make_dim(d)?;
    let report = lemmas::run_all(dim);
    Ok((
        json!({ "d": d }),
        Outcome {
            passed: report.overall,
            report: report.to_json(),
        },
    ))
}

pub fn verify(args: &VerifyArgs) -> Reported {
    let dim = make_dim(args.common.d)?;
    let text = std::fs::read_to_string(&args.family)?;
    let wire: FamilyJson = serde_json::from_str(&text).map_err(Failure::usage)?;
    let family = FaultFamily::from_json(&wire, dim)?;
    let config = json!({
        "d": dim.d(),
        "family": args.family.display().to_string(),
    });
    let predicted = predicted_kappa(dim.d(), family.pattern_m, family.mode);
    let mut report = json!({
        "n": dim.n(),
        "mode": family.mode.as_str(),
        "m": family.pattern_m,
        "size": family.len(),
        "predicted_kappa": predicted,
    });
    if let Err(v) = validate_family(&family, dim) {
        report["valid"] = json!(false);
        report["violation"] = json!({ "element": v.element, "message": v.message });
        return Ok((
            config,
            Outcome {
                report,
                passed: false,
            },
        ));
    }
    report["valid"] = json!(true);
    let passed = match Graph::build(dim, Variant::Fdsc) {
        Ok(g) => {
            let applied = apply_cut(&g, &family);
            let below = applied.is_cut && predicted.is_some_and(|p| family.len() < p as usize);
            report["applied"] = cut_json(dim, &applied);
            report["below_predicted"] = json!(below);
            applied.is_cut && !below
        }
        Err(fdsc_core::Error::ResourceCap(msg)) => {
            report["applied"] = Value::Null;
            report["note"] = json!(format!("not applied: {msg}"));
            true
        }
        Err(e) => return Err(e.into()),
    };
    Ok((config, Outcome { report, passed }))
}

pub fn probe(args: &ProbeArgs) -> Reported {
    let dim = make_dim(args.common.d)?;
    let g = Graph::build(dim, Variant::Fdsc)?;
    let budget = match args.samples {
        Some(count) => Budget::Sample {
            count,
            seed: args.seed,
        },
        None => Budget::Exhaustive,
    };
    let report = with_threads(args.threads, || match args.check {
        ProbeCheck::A1a2 => a1a2_check(&g, budget),
        ProbeCheck::Super => super_cut_probe(&g, budget),
    })??;
    let config = json!({
        "d": dim.d(),
        "check": format!("{:?}", args.check).to_lowercase(),
        "samples": args.samples,
        "seed": args.seed,
        "threads": args.threads,
    });
    Ok((
        config,
        Outcome {
            passed: report.holds(),
            report: report.to_json(),
        },
    ))
}
