use std::collections::BTreeMap;

use spinorize_core::classical::{
    all_fixed_points, lambda_from_coupling, ContourField, FixedPointKind, FixedPointSearch, ReducedHamiltonian,
};
use spinorize_core::HalfInteger;

use super::{select_reduced, Context, Params};
use crate::error::CliError;
use crate::format::num;
use crate::grid::GridShape;

#[derive(Debug, clap::Args)]
pub struct Args {
    /// Rotating coupling λ.
    #[arg(long, allow_negative_numbers = true, conflicts_with_all = ["g", "gp"])]
    pub lambda: Option<f64>,
    /// Counter-rotating coupling λ'.
    #[arg(long = "lambda-prime", allow_negative_numbers = true, conflicts_with_all = ["g", "gp"])]
    pub lambda_prime: Option<f64>,
    /// Quantum g, converted with λ = g sqrt(J) / ε; needs --j.
    #[arg(long, requires = "j")]
    pub g: Option<f64>,
    /// Quantum g', converted like --g; needs --j.
    #[arg(long, requires = "j")]
    pub gp: Option<f64>,
    /// J1 = J2 = J for the coupling conversion.
    #[arg(long)]
    pub j: Option<HalfInteger>,
    #[arg(long, default_value_t = 1.0)]
    pub eps: f64,
    /// Contour grid NQxNP.
    #[arg(long, default_value = "512x512")]
    pub grid: GridShape,
    /// Number of evenly spaced contour levels.
    #[arg(long, default_value_t = 20)]
    pub contours: usize,
    #[arg(long)]
    pub gnuplot: bool,
}

fn resolve(args: &Args) -> Result<ReducedHamiltonian, CliError> {
    if !(args.eps.is_finite() && args.eps > 0.0) {
        return Err(CliError::Usage(format!("--eps: must be > 0, got {}", args.eps)));
    }
    let convert = |g: Option<f64>| g.map(|g| lambda_from_coupling(g, args.eps, args.j.expect("clap enforces --j")));
    let (lambda, lambda_prime) = if args.g.is_some() || args.gp.is_some() {
        (convert(args.g), convert(args.gp))
    } else {
        (args.lambda, args.lambda_prime)
    };
    select_reduced(lambda, lambda_prime).map_err(|e| match e {
        CliError::Core(c) => CliError::Usage(format!("coupling: {c}")),
        other => other,
    })
}

const GNUPLOT: &str = "set datafile separator ','\n\
set key off\n\
set xlabel 'q'\n\
set ylabel 'p'\n\
set xrange [-pi:pi]\n\
set yrange [-1:1]\n\
plot 'contours.csv' skip 1 using 4:5 with dots, \\\n     'fixed_points.csv' skip 1 using 1:2 with points pt 7\n";

pub fn run(args: &Args, ctx: &mut Context) -> Result<BTreeMap<String, String>, CliError> {
    let h = resolve(args)?;
    if args.contours == 0 {
        return Err(CliError::Usage("--contours: must be at least 1".into()));
    }
    let points = all_fixed_points(&h, &FixedPointSearch::default())?;
    let field = ContourField::sample(&h, args.grid.nq, args.grid.np)?;

    let (lo, hi) = (field.min(), field.max());
    let n = args.contours;
    let mut levels: Vec<f64> = (1..=n).map(|k| lo + (hi - lo) * k as f64 / (n + 1) as f64).collect();
    let separatrix = points.iter().find(|fp| fp.kind == FixedPointKind::Saddle).map(|fp| fp.energy);
    if let Some(e) = separatrix {
        levels.push(e);
    }
    levels.sort_by(f64::total_cmp);
    levels.dedup();

    let mut rows = Vec::new();
    let mut polyline_id = 0usize;
    for &level in &levels {
        for line in field.trace(level).polylines {
            for (k, v) in line.vertices.iter().enumerate() {
                rows.push([num(level), polyline_id.to_string(), k.to_string(), num(v.q), num(v.p)]);
            }
            polyline_id += 1;
        }
    }
    ctx.out
        .write_csv("contours.csv", &["level", "polyline_id", "vertex_index", "q", "p"], &rows)?;

    let rows: Vec<[String; 4]> = points
        .iter()
        .map(|fp| [num(fp.point.q), num(fp.point.p), num(fp.energy), fp.kind.to_string()])
        .collect();
    ctx.out.write_csv("fixed_points.csv", &["q", "p", "energy", "kind"], &rows)?;
    if args.gnuplot {
        ctx.out.write_text("phase_space.gp", GNUPLOT)?;
    }

    ctx.say(format!(
        "{} Hamiltonian, coupling {}, grid {}, {} levels, {} polylines",
        h.name(),
        num(h.coupling()),
        args.grid,
        levels.len(),
        polyline_id
    ));
    for fp in &points {
        ctx.say(format!(
            "{} at q={} p={} energy={}{}",
            fp.kind,
            num(fp.point.q),
            num(fp.point.p),
            num(fp.energy),
            if fp.on_boundary { " (p = -1 pole)" } else { "" }
        ));
    }
    match separatrix {
        Some(e) => ctx.say(format!("separatrix energy {}", num(e))),
        None => ctx.say("no saddle: no separatrix"),
    }

    let mut p = Params::default();
    match h {
        ReducedHamiltonian::Rotating { lambda } => p.set("lambda", lambda),
        ReducedHamiltonian::Counter { lambda_prime } => p.set("lambda-prime", lambda_prime),
    };
    p.set("eps", args.eps)
        .set("grid", args.grid)
        .set("contours", args.contours)
        .set("gnuplot", args.gnuplot);
    Ok(p.into_map())
}
