//! `check <name>`: one checker per invocation.

use std::path::Path;

use nilp2_core::bilinear::{
    counting_bound, is_alternating, lemma_bil_exhaust, psi_check, sigma_check, sigma_failure_density,
    DEFAULT_MAP_BUDGET,
};
use nilp2_core::comprehensive::{
    height, height_in, is_pure, star_scan, star_witness, DEFAULT_INSTANCE_BUDGET,
};
use nilp2_core::groups::{
    commutator_power_check, group_from_bilinear, hall_witt_check, laurent_bound_check, lower_central_series,
    DEFAULT_TABLE_BUDGET,
};
use nilp2_core::modelcheck::{
    finite_stage_maximality, rho_check, sigma_on_group, sop_chain_direct_power, structure_of,
};
use nilp2_core::{AbelianPGroup, CheckMode, Error, FiniteGroup, SeriesReport};
use serde_json::{json, to_value, Value};

use crate::args::{CheckArgs, CheckName, GlobalOpts};
use crate::input::{load_any_group, load_class2, load_instance, load_structure, usage, CliResult};
use crate::report::{InputDigest, Verdict};

/// Exhaustive triple checks up to this many cases unless `--budget` says otherwise.
pub const DEFAULT_TRIPLE_BUDGET: u64 = 1 << 24;
pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const DEFAULT_SEED: u64 = 1;

#[derive(Debug, Default)]
pub struct CheckOutput {
    pub verdicts: Vec<Verdict>,
    pub inputs: Vec<InputDigest>,
    pub seed: Option<u64>,
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> CliResult<T> {
    v.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn input(args: &CheckArgs) -> CliResult<&Path> {
    args.input.as_deref().ok_or_else(|| usage("this check needs an input file"))
}

fn val<T: serde::Serialize>(x: &T) -> Value {
    to_value(x).expect("report types serialize")
}

/// Commutator evaluations spent computing the series.
fn series_cases(s: &SeriesReport) -> u64 {
    let g = s.orders[0] as u64;
    s.orders.iter().take(s.class.max(1)).map(|&o| g * o as u64).sum()
}

/// Exhaustive over `order³` triples when within budget, sampled otherwise.
fn triple_mode(order: usize, opts: &GlobalOpts, samples: Option<u64>) -> CheckMode {
    let seed = opts.seed.unwrap_or(DEFAULT_SEED);
    match samples {
        Some(count) => CheckMode::Sample { count, seed },
        None if (order as u64).checked_pow(3).is_some_and(|c| c <= opts.budget.unwrap_or(DEFAULT_TRIPLE_BUDGET)) => {
            CheckMode::Exhaustive
        }
        None => CheckMode::Sample { count: DEFAULT_SAMPLES, seed },
    }
}

fn seed_of(mode: CheckMode) -> Option<u64> {
    match mode {
        CheckMode::Sample { seed, .. } => Some(seed),
        CheckMode::Exhaustive => None,
    }
}

fn abelian(args: &CheckArgs) -> CliResult<AbelianPGroup> {
    if args.abelian_type.is_empty() {
        return Err(usage("missing --type"));
    }
    Ok(AbelianPGroup::new(need(args.p, "p")?, &args.abelian_type)?)
}

pub fn run_check(args: &CheckArgs, opts: &GlobalOpts) -> CliResult<CheckOutput> {
    let mut out = CheckOutput::default();
    match args.name {
        CheckName::Psi => {
            let path = input(args)?;
            let s = load_structure(path)?;
            out.inputs.push(s.digest);
            let psi = psi_check(&s.value)?;
            let sigma2 = sigma_check(&s.value, 2);
            out.verdicts.push(
                Verdict::new("psi", path.display().to_string(), psi.holds, psi.cases_checked, json!({
                    "psi": psi,
                    "sigma_2_holds": sigma2.holds,
                    "agree": psi.holds == sigma2.holds,
                }))
                .refuting_if(psi.holds != sigma2.holds),
            );
        }
        CheckName::Sigma => {
            let path = input(args)?;
            let k = args.k.unwrap_or(2);
            let s = load_structure(path)?;
            out.inputs.push(s.digest);
            let subject = format!("{} k={k}", path.display());
            let direct = sigma_check(&s.value, k);
            out.verdicts.push(Verdict::new("sigma_check", &subject, direct.holds, direct.cases_checked, val(&direct)));
            if is_alternating(&s.value) {
                let g = group_from_bilinear(&s.value)?;
                let on_group = sigma_on_group(&g, k)?;
                let reduced = sigma_check(&structure_of(&g)?, k);
                let agree = on_group.holds == reduced.holds;
                out.verdicts.push(
                    Verdict::new("sigma_on_group", &subject, on_group.holds, on_group.cases_checked, json!({
                        "group": on_group,
                        "reduced_holds": reduced.holds,
                        "reduction_agrees": agree,
                    }))
                    .refuting_if(!agree),
                );
            }
        }
        CheckName::Rho => {
            let path = input(args)?;
            let g = load_class2(path)?;
            out.inputs.push(g.digest);
            let r = rho_check(&g.value);
            out.verdicts.push(Verdict::new("rho", path.display().to_string(), r.holds, r.cases_checked, val(&r)));
        }
        CheckName::LemmaBil => {
            let (p, n, d) = (need(args.p, "p")?, need(args.n, "n")?, need(args.d, "d")?);
            let r = lemma_bil_exhaust(p, n, d, opts.budget.unwrap_or(DEFAULT_MAP_BUDGET))?;
            out.verdicts.push(
                Verdict::new("lemma_bil", format!("p={p} n={n} d={d}"), r.satisfying_count == 0, r.maps_checked, val(&r))
                    .refuting_if(r.refutation),
            );
        }
        CheckName::CountingBound => {
            let (p, n, d) = (need(args.p, "p")?, need(args.n, "n")?, need(args.d, "d")?);
            let c = counting_bound(p, n, d)?;
            out.verdicts.push(
                Verdict::new("counting_bound", format!("p={p} n={n} d={d}"), !c.packing_possible, 1, val(&c))
                    .refuting_if(c.packing_possible && d >= 2),
            );
        }
        CheckName::Density => {
            let path = input(args)?;
            let k = args.k.unwrap_or(2);
            let s = load_structure(path)?;
            out.inputs.push(s.digest);
            let dens = sigma_failure_density(&s.value, k)?;
            let sigma = sigma_check(&s.value, k);
            let consistent = (dens.failing_subspaces == 0) == sigma.holds;
            let cases = u64::try_from(dens.subspaces).unwrap_or(u64::MAX);
            out.verdicts.push(
                Verdict::new("density", format!("{} k={k}", path.display()), dens.failing_subspaces == 0, cases, json!({
                    "density": dens,
                    "sigma_holds": sigma.holds,
                    "consistent": consistent,
                }))
                .refuting_if(!consistent),
            );
        }
        CheckName::Series => {
            let path = input(args)?;
            let g = load_any_group(path)?;
            out.inputs.push(g.digest);
            let t = g.value.to_table();
            let validation = t.validate();
            let subject = path.display().to_string();
            let v = match lower_central_series(&t) {
                Ok(s) => Verdict::new("series", subject, validation.passed, series_cases(&s), json!({
                    "series": s,
                    "validation": validation,
                })),
                Err(e @ Error::NotNilpotent { .. }) => Verdict::new("series", subject, false, t.order() as u64, json!({
                    "error": e.to_string(),
                    "validation": validation,
                })),
                Err(e) => return Err(e.into()),
            };
            out.verdicts.push(v);
        }
        CheckName::HallWitt => {
            let path = input(args)?;
            let g = load_any_group(path)?;
            out.inputs.push(g.digest);
            let t = g.value.to_table();
            let mode = triple_mode(t.order(), opts, args.samples);
            out.seed = seed_of(mode);
            let r = hall_witt_check(&t, mode);
            out.verdicts.push(
                Verdict::new("hall_witt", path.display().to_string(), r.holds, r.cases_checked, val(&r))
                    .refuting_if(!r.holds),
            );
        }
        CheckName::Laurent => {
            let path = input(args)?;
            let g = load_any_group(path)?;
            out.inputs.push(g.digest);
            let r = laurent_bound_check(&g.value.to_table())?;
            out.verdicts.push(
                Verdict::new("laurent", path.display().to_string(), r.holds, series_cases(&r.series), val(&r))
                    .refuting_if(!r.holds),
            );
        }
        CheckName::Chains => {
            let path = input(args)?;
            let k = args.k.unwrap_or(2);
            let g = load_class2(path)?;
            out.inputs.push(g.digest);
            let budget = opts.budget.map_or(DEFAULT_TABLE_BUDGET, |b| b as usize);
            let r = sop_chain_direct_power(&g.value, k, budget)?;
            let cases = (r.power_order * r.elements.len()) as u64;
            out.verdicts.push(
                Verdict::new("chains", format!("{} k={k}", path.display()), r.verified, cases, val(&r))
                    .refuting_if(!r.verified),
            );
        }
        CheckName::Maximality => {
            let path = input(args)?;
            let k = args.k.unwrap_or(2);
            let g = load_class2(path)?;
            out.inputs.push(g.digest);
            let budget = opts.budget.map_or(DEFAULT_TABLE_BUDGET, |b| b as usize);
            let r = finite_stage_maximality(&g.value, k, budget)?;
            out.verdicts.push(
                Verdict::new("maximality", format!("{} k={k}", path.display()), r.validated, r.candidates_checked, val(&r))
                    .refuting_if(!r.validated),
            );
        }
        CheckName::Star => {
            let path = input(args)?;
            let g = load_class2(path)?;
            out.inputs.push(g.digest);
            match &args.instance {
                Some(ipath) => {
                    let inst = load_instance(ipath, &g.value)?;
                    out.inputs.push(inst.digest);
                    let r = star_witness(&g.value, &inst.value)?;
                    let subject = format!("{} instance={}", path.display(), ipath.display());
                    out.verdicts.push(Verdict::new("star", subject, r.witness.is_some(), r.candidates_checked, json!({
                        "instance": inst.value,
                        "outcome": r,
                    })));
                }
                None => {
                    let rank = args.max_rank.unwrap_or(1);
                    let r = star_scan(&g.value, rank, opts.budget.unwrap_or(DEFAULT_INSTANCE_BUDGET))?;
                    let subject = format!("{} max_rank={rank}", path.display());
                    out.verdicts.push(Verdict::new("star_scan", subject, r.all_satisfied, r.instances, val(&r)));
                }
            }
        }
        CheckName::Height => {
            let a = abelian(args)?;
            let x = a.index(&args.element)?;
            let all: Vec<usize> = (0..a.order()).collect();
            let (h, scanned) = (height(&a, x), height_in(&a, &all, x));
            let subject = format!("p={} type={:?} element={:?}", a.p(), a.exponents(), args.element);
            out.verdicts.push(
                Verdict::new("height", subject, h == scanned, a.order() as u64, json!({
                    "height": h,
                    "height_by_scan": scanned,
                }))
                .refuting_if(h != scanned),
            );
        }
        CheckName::Purity => {
            let a = abelian(args)?;
            let gens = args
                .generators
                .iter()
                .map(|g| {
                    let coords = g
                        .split(',')
                        .map(|c| c.trim().parse::<usize>().map_err(|_| usage(format!("bad --gen {g:?}"))))
                        .collect::<CliResult<Vec<usize>>>()?;
                    Ok(a.index(&coords)?)
                })
                .collect::<CliResult<Vec<usize>>>()?;
            let r = is_pure(&a, &gens);
            let subject = format!("p={} type={:?} gens={:?}", a.p(), a.exponents(), args.generators);
            out.verdicts.push(Verdict::new("purity", subject, r.holds, r.cases_checked, val(&r)));
        }
        CheckName::CommutatorIdentities => {
            let path = input(args)?;
            let g = load_class2(path)?;
            out.inputs.push(g.digest);
            let powers: Vec<u64> = if args.powers.is_empty() {
                (1..=g.value.p() as u64).collect()
            } else {
                args.powers.clone()
            };
            let mode = triple_mode(g.value.order(), opts, args.samples);
            out.seed = seed_of(mode);
            let r = commutator_power_check(&g.value, &powers, mode);
            out.verdicts.push(
                Verdict::new("commutator_identities", path.display().to_string(), r.holds, r.pairs_checked + r.triples_checked, val(&r))
                    .refuting_if(!r.holds),
            );
        }
    }
    Ok(out)
}

