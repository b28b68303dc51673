use std::collections::BTreeMap;

use spinorize_core::classical::{integrate_orbit, OrbitShape, PhasePoint, ReducedHamiltonian};

use super::{select_reduced, Context, Params};
use crate::error::CliError;
use crate::format::num;

#[derive(Debug, clap::Args)]
pub struct Args {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: Option<f64>,
    #[arg(long = "lambda-prime", allow_negative_numbers = true)]
    pub lambda_prime: Option<f64>,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub q0: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub p0: f64,
    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,
    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,
}

/// Return distance used to call an orbit closed.
const CLOSURE_TOLERANCE: f64 = 1e-3;

pub fn run(args: &Args, ctx: &mut Context) -> Result<BTreeMap<String, String>, CliError> {
    let h = select_reduced(args.lambda, args.lambda_prime)?;
    let traj = integrate_orbit(&h, PhasePoint::new(args.q0, args.p0), args.dt, args.steps)?;
    let energies = traj.energies(&h);
    let rows: Vec<[String; 5]> = traj
        .points
        .iter()
        .zip(&energies)
        .enumerate()
        .map(|(k, (x, e))| [k.to_string(), num(k as f64 * traj.dt), num(x.q), num(x.p), num(*e)])
        .collect();
    ctx.out.write_csv("orbit.csv", &["step", "t", "q", "p", "energy"], &rows)?;

    ctx.say(format!(
        "{} Hamiltonian, coupling {}, {} steps of {}",
        h.name(),
        num(h.coupling()),
        traj.points.len() - 1,
        num(traj.dt)
    ));
    ctx.say(format!("energy {} drift {}", num(energies[0]), num(traj.max_energy_drift(&h))));
    ctx.say(match traj.shape(CLOSURE_TOLERANCE) {
        OrbitShape::Closed { period } => format!("closed orbit, period ~ {}", num(period)),
        OrbitShape::Open => "open orbit (q winds)".to_string(),
        OrbitShape::Undetermined => "orbit shape undetermined within the integration time".to_string(),
    });
    if traj.hit_boundary {
        ctx.warn("orbit reached |p| = 1 and was stopped");
    }

    let mut p = Params::default();
    match h {
        ReducedHamiltonian::Rotating { lambda } => p.set("lambda", lambda),
        ReducedHamiltonian::Counter { lambda_prime } => p.set("lambda-prime", lambda_prime),
    };
    p.set("q0", args.q0).set("p0", args.p0).set("dt", args.dt).set("steps", args.steps);
    Ok(p.into_map())
}
