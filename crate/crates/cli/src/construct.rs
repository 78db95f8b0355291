//! `construct <kind> params…`

use std::path::Path;
use std::str::FromStr;

use nilp2_core::format::{write_bilinear_group, write_table_group};
use nilp2_core::groups::{
    central_product, direct_power, extraspecial, group_from_bilinear, heisenberg, ut_group, Certificate,
    TableValidation, DEFAULT_TABLE_BUDGET,
};
use nilp2_core::{Class2Group, TableGroup};

use crate::args::{ConstructKind, GlobalOpts};
use crate::input::{load_class2, load_structure, usage, CliError, CliResult};

pub struct Constructed {
    /// File contents in the shared text format.
    pub text: String,
    pub summary: String,
    pub passed: bool,
}

fn arity(params: &[String], lo: usize, hi: usize, shape: &str) -> CliResult<()> {
    if params.len() < lo || params.len() > hi {
        return Err(usage(format!("expected parameters: {shape}")));
    }
    Ok(())
}

fn num<T: FromStr>(params: &[String], i: usize, name: &str) -> CliResult<T> {
    params[i].parse().map_err(|_| usage(format!("{name} must be a non-negative integer, found {:?}", params[i])))
}

fn ok(flag: bool) -> &'static str {
    if flag {
        "ok"
    } else {
        "FAILED"
    }
}

pub fn certificate_summary(label: &str, c: &Certificate) -> String {
    format!(
        "{label}: order {}; associativity {} ({} cases) {}; exponent p {}; commutator formula {}; \
         centre order {} {}; derived order {} {}; {}",
        c.order,
        c.associativity_mode,
        c.associativity_cases,
        ok(c.associative),
        ok(c.exponent_p),
        ok(c.commutator_formula),
        c.center_order,
        ok(c.center_matches),
        c.derived_order,
        ok(c.derived_matches),
        if c.passed { "PASSED" } else { "FAILED" }
    )
}

pub fn validation_summary(label: &str, v: &TableValidation) -> String {
    format!(
        "{label}: order {}; identity {}; inverses {}; associativity {} ({} cases) {}; {}",
        v.order,
        ok(v.identity_law),
        ok(v.inverse_law),
        if v.associativity_exhaustive { "exhaustive" } else { "sampled" },
        v.associativity_cases,
        ok(v.associative),
        if v.passed { "PASSED" } else { "FAILED" }
    )
}

fn class2(label: String, g: &Class2Group) -> Constructed {
    let c = g.certify();
    Constructed { text: write_bilinear_group(g.structure()), summary: certificate_summary(&label, &c), passed: c.passed }
}

fn table(label: String, t: &TableGroup) -> Constructed {
    let v = t.validate();
    Constructed { text: write_table_group(t), summary: validation_summary(&label, &v), passed: v.passed }
}

pub fn construct(kind: ConstructKind, params: &[String], opts: &GlobalOpts) -> CliResult<Constructed> {
    let budget = opts.budget.map_or(DEFAULT_TABLE_BUDGET, |b| b as usize);
    Ok(match kind {
        ConstructKind::Extraspecial => {
            arity(params, 2, 2, "P K")?;
            let (p, k) = (num(params, 0, "P")?, num(params, 1, "K")?);
            class2(format!("extraspecial({p},{k})"), &extraspecial(p, k)?)
        }
        ConstructKind::Heisenberg => {
            arity(params, 2, 3, "P N [M]")?;
            let (p, n) = (num(params, 0, "P")?, num(params, 1, "N")?);
            let m = if params.len() == 3 { num(params, 2, "M")? } else { 1 };
            class2(format!("heisenberg({p},{n},{m})"), &heisenberg(p, n, m)?)
        }
        ConstructKind::CentralProduct => {
            arity(params, 2, 2, "FILE COPIES")?;
            let g = load_class2(Path::new(&params[0]))?.value;
            let copies: usize = num(params, 1, "COPIES")?;
            class2(format!("central_product({}, {copies})", params[0]), &central_product(&g, copies)?)
        }
        ConstructKind::DirectPower => {
            arity(params, 2, 2, "FILE K")?;
            let g = load_class2(Path::new(&params[0]))?.value;
            let k: usize = num(params, 1, "K")?;
            table(format!("direct_power({}, {k})", params[0]), &direct_power(&g, k, budget)?)
        }
        ConstructKind::Ut => {
            arity(params, 2, 2, "P DIM")?;
            let (p, dim) = (num(params, 0, "P")?, num(params, 1, "DIM")?);
            table(format!("ut({p},{dim})"), &ut_group(p, dim, budget)?)
        }
        ConstructKind::FromBilinear => {
            arity(params, 1, 1, "FILE")?;
            let path = Path::new(&params[0]);
            let s = load_structure(path)?.value;
            let g = group_from_bilinear(&s).map_err(|source| CliError::Input { path: path.into(), source })?;
            class2(format!("from_bilinear({})", params[0]), &g)
        }
    })
}
