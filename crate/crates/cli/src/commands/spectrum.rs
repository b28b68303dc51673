use std::collections::BTreeMap;

use spinorize_core::spectra::{spectrum_scan, Approximation, CouplingKind};
use spinorize_core::{HalfInteger, ModelParams};

use super::{Context, Params};
use crate::error::CliError;
use crate::format::num;
use crate::grid::Grid;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Atomic pseudo-spin J1 (M = 2 J1 atoms).
    #[arg(long, conflicts_with = "atoms")]
    pub j1: Option<HalfInteger>,
    /// Field spin J2; the Fock space is cut at n = 2 J2.
    #[arg(long)]
    pub j2: HalfInteger,
    /// Atom count M; sets J1 = M/2.
    #[arg(long)]
    pub atoms: Option<u32>,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    /// Rotating coupling g.
    #[arg(long, conflicts_with_all = ["big_g", "g_grid"])]
    pub g: Option<f64>,
    /// Counter-rotating coupling g'.
    #[arg(long, conflicts_with_all = ["big_gp", "gp_grid"])]
    pub gp: Option<f64>,
    /// Collective coupling G = g sqrt(M); needs --atoms.
    #[arg(long = "big-g", requires = "atoms", conflicts_with = "g_grid")]
    pub big_g: Option<f64>,
    /// Collective coupling G' = g' sqrt(M); needs --atoms.
    #[arg(long = "big-gp", requires = "atoms", conflicts_with = "gp_grid")]
    pub big_gp: Option<f64>,
    /// Scan g over start:stop:step.
    #[arg(long = "g-grid", conflicts_with = "gp_grid")]
    pub g_grid: Option<Grid>,
    /// Scan g' over start:stop:step.
    #[arg(long = "gp-grid")]
    pub gp_grid: Option<Grid>,
    /// Defaults to the approximation implied by the nonzero couplings.
    #[arg(long)]
    pub approx: Option<Approximation>,
    /// Number of lowest levels written per coupling.
    #[arg(long, default_value_t = 200)]
    pub levels: usize,
    /// Also write a gnuplot script.
    #[arg(long)]
    pub gnuplot: bool,
}

struct Resolved {
    template: ModelParams,
    which: CouplingKind,
    grid: Vec<f64>,
    approx: Approximation,
}

fn resolve(args: &Args) -> Result<Resolved, CliError> {
    let j1 = match (args.j1, args.atoms) {
        (Some(j), None) => j,
        (None, Some(m)) if m > 0 => HalfInteger::from_twice(m),
        (None, Some(_)) => return Err(CliError::Usage("--atoms must be at least 1".into())),
        _ => return Err(CliError::Usage("--j1 or --atoms is required".into())),
    };
    let root_m = f64::from(j1.twice()).sqrt();
    let g = args.big_g.map(|v| v / root_m).or(args.g).unwrap_or(0.0);
    let gp = args.big_gp.map(|v| v / root_m).or(args.gp).unwrap_or(0.0);
    for (flag, v) in [("--g", g), ("--gp", gp)] {
        if !(v.is_finite() && v >= 0.0) {
            return Err(CliError::Usage(format!("{flag}: coupling must be >= 0, got {v}")));
        }
    }
    if !(args.eps.is_finite() && args.eps > 0.0) {
        return Err(CliError::Usage(format!("--eps: must be > 0, got {}", args.eps)));
    }
    if args.levels == 0 {
        return Err(CliError::Usage("--levels: must be at least 1".into()));
    }

    let g_active = args.g_grid.is_some() || g > 0.0;
    let gp_active = args.gp_grid.is_some() || gp > 0.0;
    let approx = args.approx.unwrap_or(match (g_active, gp_active) {
        (false, true) => Approximation::Counter,
        (true, true) => Approximation::Full,
        _ => Approximation::Rotating,
    });
    let (which, grid) = match (&args.g_grid, &args.gp_grid) {
        (Some(grid), _) => (CouplingKind::G, grid.values().to_vec()),
        (_, Some(grid)) => (CouplingKind::GPrime, grid.values().to_vec()),
        _ if approx == Approximation::Counter => (CouplingKind::GPrime, vec![gp]),
        _ => (CouplingKind::G, vec![g]),
    };
    if grid.iter().any(|&v| v < 0.0) {
        return Err(CliError::Usage("coupling grids must be >= 0".into()));
    }
    let template = ModelParams::new(args.eps, g, gp, j1, args.j2).map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(Resolved {
        template,
        which,
        grid,
        approx,
    })
}

fn gnuplot_script(which: CouplingKind) -> String {
    let label = match which {
        CouplingKind::G => "g",
        CouplingKind::GPrime => "g'",
    };
    format!(
        "set datafile separator ','\n\
         set key off\n\
         set multiplot layout 1,2\n\
         set xlabel '{label}'\n\
         set ylabel 'E'\n\
         plot 'spectrum.csv' skip 1 using 1:3 with points pt 7 ps 0.3\n\
         set ylabel '<n>'\n\
         plot 'expectation.csv' skip 1 using 1:2 with linespoints\n\
         unset multiplot\n"
    )
}

pub fn run(args: &Args, ctx: &mut Context) -> Result<BTreeMap<String, String>, CliError> {
    let r = resolve(args)?;
    let scan = spectrum_scan(&r.template, r.which, &r.grid, r.approx)?;

    let mut rows = Vec::new();
    for (coupling, energies) in scan.spectral.coupling_grid.iter().zip(&scan.spectral.energies) {
        for (k, e) in energies.iter().take(args.levels).enumerate() {
            rows.push([num(*coupling), k.to_string(), num(*e)]);
        }
    }
    ctx.out.write_csv("spectrum.csv", &["coupling", "level_index", "energy"], &rows)?;

    let eps = r.template.epsilon();
    let obs = &scan.observable;
    let rows: Vec<[String; 2]> = obs
        .coupling_grid
        .iter()
        .zip(&obs.values)
        .map(|(c, v)| [num(*c), num(v / eps)])
        .collect();
    ctx.out.write_csv("expectation.csv", &["coupling", "mean_n"], &rows)?;
    if args.gnuplot {
        ctx.out.write_text("spectrum.gp", &gnuplot_script(r.which))?;
    }

    ctx.say(format!(
        "{} approximation, J1={} J2={} eps={}, {} couplings, {} levels each",
        r.approx,
        r.template.j1(),
        r.template.j2(),
        num(eps),
        r.grid.len(),
        scan.spectral.level_count().min(args.levels)
    ));
    for (i, c) in obs.coupling_grid.iter().enumerate() {
        ctx.say(format!(
            "{}={} E0={} <n>={}",
            r.which.name(),
            num(*c),
            num(scan.spectral.energies[i][0]),
            num(obs.values[i] / eps)
        ));
        if obs.degenerate[i] {
            ctx.warn(format!(
                "{}={}: degenerate ground state, reporting the smallest <n>",
                r.which.name(),
                num(*c)
            ));
        }
        if obs.truncation_warning[i] {
            ctx.warn(format!(
                "{}={}: <n> is close to the Fock cutoff 2 J2; increase --j2",
                r.which.name(),
                num(*c)
            ));
        }
    }

    let mut p = Params::default();
    p.set("j1", r.template.j1())
        .set("j2", r.template.j2())
        .set("eps", r.template.epsilon())
        .set("approx", r.approx)
        .set("levels", args.levels)
        .set("gnuplot", args.gnuplot);
    match (&args.g_grid, &args.gp_grid) {
        (Some(grid), _) => {
            p.set("g-grid", grid).set("gp", r.template.g_prime());
        }
        (_, Some(grid)) => {
            p.set("gp-grid", grid).set("g", r.template.g());
        }
        _ => {
            p.set("g", r.template.g()).set("gp", r.template.g_prime());
        }
    }
    Ok(p.into_map())
}
