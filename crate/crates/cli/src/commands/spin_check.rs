use std::collections::BTreeMap;

use spinorize_core::spin_algebra::{
    commutator, hp_bosonize, hp_spinorize, make_boson_operators, make_spin_operators, BasisTag, OperatorMatrix,
};
use spinorize_core::HalfInteger;

use super::{Context, Params};
use crate::error::CliError;
use crate::format::num;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Spin for the SU(2) and bosonization checks.
    #[arg(long)]
    pub j1: Option<HalfInteger>,
    /// Spin for the spinorization checks.
    #[arg(long)]
    pub j2: Option<HalfInteger>,
}

struct Check {
    name: &'static str,
    spin: HalfInteger,
    residual: f64,
    tolerance: f64,
}

fn diff(a: &OperatorMatrix, b: &OperatorMatrix) -> Result<f64, CliError> {
    Ok(a.max_abs_diff(b)?)
}

fn su2_checks(j: HalfInteger, out: &mut Vec<Check>) -> Result<(), CliError> {
    let tol = 1e-12 * (1.0 + j.value() * j.value());
    let s = make_spin_operators(j);
    let push = |out: &mut Vec<Check>, name, residual| out.push(Check { name, spin: j, residual, tolerance: tol });
    push(out, "[Jz,J+]=J+", diff(&commutator(&s.jz, &s.jplus)?, &s.jplus)?);
    push(out, "[Jz,J-]=-J-", diff(&commutator(&s.jz, &s.jminus)?, &s.jminus.scale(-1.0))?);
    push(out, "[J+,J-]=2Jz", diff(&commutator(&s.jplus, &s.jminus)?, &s.jz.scale(2.0))?);

    let hp = hp_bosonize(j)?.to_spin_basis();
    push(out, "bosonized Jz", diff(&hp.jz, &s.jz)?);
    push(out, "bosonized J+", diff(&hp.jplus, &s.jplus)?);
    push(out, "bosonized J-", diff(&hp.jminus, &s.jminus)?);
    Ok(())
}

fn spinorize_checks(j: HalfInteger, out: &mut Vec<Check>) -> Result<(), CliError> {
    let tol = 1e-12 * (1.0 + j.value());
    let b = make_boson_operators(j.twice() as usize)?;
    let sp = hp_spinorize(j)?.to_fock_basis();
    let push = |out: &mut Vec<Check>, name, residual| out.push(Check { name, spin: j, residual, tolerance: tol });
    push(out, "spinorized a+a", diff(&sp.number, &b.number)?);
    push(out, "spinorized a+", diff(&sp.adag, &b.adag)?);
    push(out, "spinorized a", diff(&sp.a, &b.a)?);

    // [a, a†] is the identity except on the top Fock state.
    let c = commutator(&sp.a, &sp.adag)?;
    let dim = c.dim();
    let mut expected = vec![1.0; dim];
    expected[dim - 1] = -(2.0 * j.value());
    let expected = OperatorMatrix::from_diagonal(&expected, BasisTag::FockAscendingN);
    push(out, "[a,a+] with truncation defect", diff(&c, &expected)?);
    Ok(())
}

pub fn run(args: &Args, ctx: &mut Context) -> Result<BTreeMap<String, String>, CliError> {
    if args.j1.is_none() && args.j2.is_none() {
        return Err(CliError::Usage("--j1 or --j2 is required".into()));
    }
    let mut checks = Vec::new();
    if let Some(j) = args.j1 {
        su2_checks(j, &mut checks)?;
    }
    if let Some(j) = args.j2 {
        spinorize_checks(j, &mut checks)?;
    }

    let rows: Vec<[String; 5]> = checks
        .iter()
        .map(|c| {
            [
                c.name.to_string(),
                c.spin.to_string(),
                num(c.residual),
                num(c.tolerance),
                (c.residual <= c.tolerance).to_string(),
            ]
        })
        .collect();
    ctx.out
        .write_csv("spin_check.csv", &["check", "spin", "residual", "tolerance", "passed"], &rows)?;

    let mut failed = Vec::new();
    for c in &checks {
        let ok = c.residual <= c.tolerance;
        ctx.say(format!(
            "{} J={} residual={} {}",
            c.name,
            c.spin,
            num(c.residual),
            if ok { "ok" } else { "FAILED" }
        ));
        if !ok {
            failed.push(c.name);
        }
    }
    if !failed.is_empty() {
        return Err(CliError::CheckFailed(format!("spin checks failed: {}", failed.join(", "))));
    }
    let mut p = Params::default();
    p.set_opt("j1", args.j1).set_opt("j2", args.j2);
    Ok(p.into_map())
}
