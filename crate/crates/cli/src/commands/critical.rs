use std::collections::BTreeMap;

use spinorize_core::classical::{
    all_fixed_points, critical_coupling_scan, separatrix_energy, FixedPointSearch, ReducedHamiltonian,
};
use spinorize_core::spectra::{ground_energy_curve, second_difference, Approximation, CouplingKind};
use spinorize_core::{HalfInteger, ModelParams};

use super::{Context, Params};
use crate::error::CliError;
use crate::format::num;
use crate::grid::{Grid, Range};

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Bracket for λ'_c.
    #[arg(long, default_value = "0.1:2")]
    pub range: Range,
    #[arg(long, default_value_t = 1e-4)]
    pub tol: f64,
    /// Report fixed points of the counter Hamiltonian at this λ'.
    #[arg(long)]
    pub at: Option<f64>,
    /// Comma-separated J values for the quantum curvature peaks.
    #[arg(long = "with-quantum", value_delimiter = ',')]
    pub with_quantum: Option<Vec<HalfInteger>>,
    /// λ' grid for the quantum scans; g' = λ' / sqrt(J).
    #[arg(long = "quantum-grid", default_value = "0.3:1.5:0.005")]
    pub quantum_grid: Grid,
}

/// Curvature peak of the counter-rotating ground energy at `J1 = J2 = j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuantumPeak {
    pub j: HalfInteger,
    pub g_prime: f64,
    /// `g' sqrt(J)`.
    pub lambda_prime: f64,
    /// `2 g'`.
    pub literal_lambda_prime: f64,
}

pub fn quantum_peak(j: HalfInteger, lambda_grid: &[f64]) -> Result<QuantumPeak, CliError> {
    let root = j.value().sqrt();
    let gp: Vec<f64> = lambda_grid.iter().map(|l| l / root).collect();
    let template = ModelParams::new(1.0, 0.0, 0.0, j, j)?;
    let energies = ground_energy_curve(&template, CouplingKind::GPrime, &gp, Approximation::Counter)?;
    let curvature = second_difference(&gp, &energies)?;
    Ok(QuantumPeak {
        j,
        g_prime: curvature.peak_coupling,
        lambda_prime: curvature.peak_coupling * root,
        literal_lambda_prime: 2.0 * curvature.peak_coupling,
    })
}

pub fn run(args: &Args, ctx: &mut Context) -> Result<BTreeMap<String, String>, CliError> {
    if !(args.tol > 0.0) {
        return Err(CliError::Usage(format!("--tol: must be > 0, got {}", args.tol)));
    }
    let critical = critical_coupling_scan(args.range.lo, args.range.hi, args.tol)?;
    ctx.say(format!("lambda'_c = {}", num(critical)));

    let mut rows = vec![["classical".to_string(), String::new(), String::new(), num(critical), String::new()]];

    if let Some(at) = args.at {
        let h = ReducedHamiltonian::counter(at).map_err(|e| CliError::Usage(format!("--at: {e}")))?;
        let points = all_fixed_points(&h, &FixedPointSearch::default())?;
        let fp_rows: Vec<[String; 4]> = points
            .iter()
            .map(|fp| [num(fp.point.q), num(fp.point.p), num(fp.energy), fp.kind.to_string()])
            .collect();
        ctx.out.write_csv("fixed_points.csv", &["q", "p", "energy", "kind"], &fp_rows)?;
        for fp in &points {
            ctx.say(format!(
                "lambda'={}: {} at q={} p={} energy={}",
                num(at),
                fp.kind,
                num(fp.point.q),
                num(fp.point.p),
                num(fp.energy)
            ));
        }
        match separatrix_energy(&h) {
            Ok(e) => ctx.say(format!("lambda'={}: separatrix energy {}", num(at), num(e))),
            Err(e) => ctx.say(format!("lambda'={}: {e}", num(at))),
        }
    }

    if let Some(js) = &args.with_quantum {
        for &j in js {
            let peak = quantum_peak(j, args.quantum_grid.values())?;
            ctx.say(format!(
                "J={}: curvature peak g'={} lambda'=g'sqrt(J)={} (2g'={})",
                j,
                num(peak.g_prime),
                num(peak.lambda_prime),
                num(peak.literal_lambda_prime)
            ));
            rows.push([
                "quantum".to_string(),
                j.to_string(),
                num(peak.g_prime),
                num(peak.lambda_prime),
                num(peak.literal_lambda_prime),
            ]);
        }
    }
    ctx.out.write_csv(
        "critical.csv",
        &["source", "j", "g_prime", "lambda_prime", "two_g_prime"],
        &rows,
    )?;

    let mut p = Params::default();
    p.set("range", args.range).set("tol", args.tol).set_opt("at", args.at);
    if let Some(js) = &args.with_quantum {
        let list: Vec<String> = js.iter().map(|j| j.to_string()).collect();
        p.set("with-quantum", list.join(",")).set("quantum-grid", &args.quantum_grid);
    }
    Ok(p.into_map())
}
