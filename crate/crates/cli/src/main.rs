mod svg;
mod workspace;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num::bigint::BigInt;
use num::{Signed, Zero};
use serde_json::json;

use nsurf_core::{
    bogomolov_check, charge, discriminant, discriminant_difference, discriminant_resolution_side,
    format_rat, intersect, mumford_pullback, parse_rat, riemann_roch_chi,
    phase, riemann_roch_via_discriminant, slice_charge, slope, support_constant, support_form,
    wall_locus, wall_locus_unchecked, DivisorClass, Error, Phase, Rat, WallShape,
};

use workspace::{parse_workspace, CompiledSheaf, Workspace};

/// Exact intersection theory and stability numerics on normal surfaces.
#[derive(Parser)]
#[command(name = "nsurf", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Workspace file (JSON)
    workspace: PathBuf,
    /// Emit a JSON report instead of plain text
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct StabilityFlags {
    /// Trust H to be ample instead of checking it against the inventory
    #[arg(long)]
    unchecked_ample: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Intersection number of two named divisor classes
    Intersect {
        #[command(flatten)]
        common: Common,
        a: String,
        b: String,
    },
    /// Pullback of a base class to the resolution lattice
    Pullback {
        #[command(flatten)]
        common: Common,
        divisor: String,
    },
    /// Chern character of a named sheaf
    Chern {
        #[command(flatten)]
        common: Common,
        sheaf: String,
    },
    /// Euler characteristic by Riemann-Roch
    Chi {
        #[command(flatten)]
        common: Common,
        sheaf: String,
    },
    /// Discriminant of a named sheaf
    Delta {
        #[command(flatten)]
        common: Common,
        sheaf: String,
    },
    /// Bogomolov inequality check with the workspace C
    Bogomolov {
        #[command(flatten)]
        common: Common,
        sheaf: String,
        #[command(flatten)]
        flags: StabilityFlags,
    },
    /// Central charge of a named sheaf at (H, B, C)
    Charge {
        #[command(flatten)]
        common: Common,
        sheaf: String,
        /// Also report the exact phase, shifting slope <= B.H classes
        /// into the heart
        #[arg(long)]
        phase: bool,
        #[command(flatten)]
        flags: StabilityFlags,
    },
    /// Support constant and support form of a named sheaf
    Support {
        #[command(flatten)]
        common: Common,
        sheaf: String,
        #[command(flatten)]
        flags: StabilityFlags,
    },
    /// Wall of a pair of classes over the (b, t) slice through (H, B)
    Walls {
        #[command(flatten)]
        common: Common,
        v: String,
        w: String,
        /// bmin:bmax:tmin:tmax, decimal or p/q entries, tmin > 0
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        /// Write an SVG diagram to this path
        #[arg(long)]
        out: Option<PathBuf>,
        /// Overlay an approximate phase heatmap of this sheaf
        #[arg(long)]
        heatmap: Option<String>,
        #[command(flatten)]
        flags: StabilityFlags,
    },
}

/// Parses "p/q", "p", or a decimal literal like "-0.25" exactly.
fn parse_decimal_rat(s: &str) -> Result<Rat, Error> {
    if s.contains('/') || !s.contains('.') {
        return parse_rat(s);
    }
    let bad = || Error::Usage(format!("invalid numeric literal `{s}`"));
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (whole, frac) = body.split_once('.').ok_or_else(bad)?;
    if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    let whole: BigInt = if whole.is_empty() { BigInt::zero() } else { whole.parse().map_err(|_| bad())? };
    let digits: BigInt = frac.parse().map_err(|_| bad())?;
    let denom = BigInt::from(10u32).pow(frac.len() as u32);
    Ok(Rat::new((whole * &denom + digits) * BigInt::from(sign), denom))
}

struct WallWindow {
    b_min: Rat,
    b_max: Rat,
    t_min: Rat,
    t_max: Rat,
}

fn parse_window(s: &str) -> Result<WallWindow, Error> {
    let parts: Vec<&str> = s.split(':').collect();
    let [b_min, b_max, t_min, t_max] = parts.as_slice() else {
        return Err(Error::Usage(format!("window must be bmin:bmax:tmin:tmax, got `{s}`")));
    };
    let w = WallWindow {
        b_min: parse_decimal_rat(b_min)?,
        b_max: parse_decimal_rat(b_max)?,
        t_min: parse_decimal_rat(t_min)?,
        t_max: parse_decimal_rat(t_max)?,
    };
    if w.b_min >= w.b_max || w.t_min >= w.t_max {
        return Err(Error::Usage("window bounds must satisfy bmin < bmax and tmin < tmax".into()));
    }
    if !w.t_min.is_positive() {
        return Err(Error::Usage("window requires tmin > 0".into()));
    }
    Ok(w)
}

fn coords_tuple(coords: &[Rat]) -> String {
    let parts: Vec<String> = coords.iter().map(format_rat).collect();
    format!("({})", parts.join(", "))
}

fn coords_json(coords: &[Rat]) -> serde_json::Value {
    json!(coords.iter().map(format_rat).collect::<Vec<_>>())
}

struct Report {
    lines: Vec<String>,
    payload: serde_json::Value,
}

fn cmd_intersect(ws: &Workspace, a: &str, b: &str) -> Result<Report, Error> {
    let da = ws.divisor(a)?;
    let db = ws.divisor(b)?;
    let v = intersect(&ws.surface, da, db)?;
    Ok(Report {
        lines: vec![format!("{a}.{b} = {}", format_rat(&v))],
        payload: json!({"command": "intersect", "a": a, "b": b, "value": format_rat(&v)}),
    })
}

fn cmd_pullback(ws: &Workspace, name: &str) -> Result<Report, Error> {
    let d = ws.divisor(name)?;
    let pulled = mumford_pullback(&ws.surface, d)?;
    Ok(Report {
        lines: vec![
            format!("basis: {}", ws.surface.basis.join(", ")),
            format!("pullback({name}) = {}", coords_tuple(&pulled.coords)),
        ],
        payload: json!({
            "command": "pullback",
            "divisor": name,
            "basis": ws.surface.basis,
            "coords": coords_json(&pulled.coords),
        }),
    })
}

fn cmd_chern(ws: &Workspace, name: &str) -> Result<Report, Error> {
    let sheaf = ws.sheaf(name)?;
    let mc = sheaf.chern();
    let mut lines = vec![
        format!("ch0 = {}", mc.ch0),
        format!("ch1 = {}", coords_tuple(&mc.ch1.coords)),
        format!("ch2 = {}", format_rat(&mc.ch2)),
    ];
    let mut defaulted = Vec::new();
    if let CompiledSheaf::Resolution { defaulted_points, .. } = sheaf {
        for p in defaulted_points {
            lines.push(format!("note: assuming chi = 0 and r1 = 0 at {p}"));
            defaulted.push(p.clone());
        }
    }
    Ok(Report {
        lines,
        payload: json!({
            "command": "chern",
            "sheaf": name,
            "ch0": mc.ch0,
            "ch1": coords_json(&mc.ch1.coords),
            "ch2": format_rat(&mc.ch2),
            "defaulted_locals": defaulted,
        }),
    })
}

fn cmd_chi(ws: &Workspace, name: &str) -> Result<Report, Error> {
    let mc = ws.sheaf(name)?.chern();
    let chi = riemann_roch_chi(&ws.surface, mc)?;
    debug_assert_eq!(chi, riemann_roch_via_discriminant(&ws.surface, mc)?);
    let mut lines = vec![format!("chi = {}", format_rat(&chi))];
    if !chi.is_integer() {
        lines.push("warning: chi is not an integer; the local data is inconsistent".into());
    }
    Ok(Report {
        lines,
        payload: json!({
            "command": "chi",
            "sheaf": name,
            "value": format_rat(&chi),
            "integral": chi.is_integer(),
        }),
    })
}

fn cmd_delta(ws: &Workspace, name: &str) -> Result<Report, Error> {
    let sheaf = ws.sheaf(name)?;
    let d = discriminant(&ws.surface, sheaf.chern())?;
    let mut lines = vec![format!("delta = {}", format_rat(&d))];
    let mut payload = json!({"command": "delta", "sheaf": name, "value": format_rat(&d)});
    if let CompiledSheaf::Resolution { fdata, .. } = sheaf {
        let upstairs = discriminant_resolution_side(&ws.surface, fdata)?;
        let diff = discriminant_difference(&ws.surface, fdata)?;
        debug_assert_eq!(&upstairs - &d, diff);
        lines.push(format!("delta_resolution = {}", format_rat(&upstairs)));
        lines.push(format!("difference = {}", format_rat(&diff)));
        payload["delta_resolution"] = json!(format_rat(&upstairs));
        payload["difference"] = json!(format_rat(&diff));
    }
    Ok(Report { lines, payload })
}

fn cmd_bogomolov(ws: &Workspace, name: &str, unchecked: bool) -> Result<Report, Error> {
    let params = ws.stability()?.params(ws, unchecked)?;
    let mc = ws.sheaf(name)?.chern();
    let out = bogomolov_check(&ws.surface, &params, mc)?;
    let verdict = if out.holds { "holds" } else { "violated" };
    Ok(Report {
        lines: vec![format!("{verdict}, margin = {}", format_rat(&out.margin))],
        payload: json!({
            "command": "bogomolov",
            "sheaf": name,
            "holds": out.holds,
            "margin": format_rat(&out.margin),
        }),
    })
}

fn cmd_charge(ws: &Workspace, name: &str, with_phase: bool, unchecked: bool) -> Result<Report, Error> {
    let params = ws.stability()?.params(ws, unchecked)?;
    let mc = ws.sheaf(name)?.chern();
    let z = charge(&ws.surface, &params, mc)?;
    let mut lines = vec![format!("Z = {z}")];
    let mut payload = json!({
        "command": "charge",
        "sheaf": name,
        "re": format_rat(&z.re),
        "im": format_rat(&z.im),
    });
    if with_phase {
        // positive-rank classes at or below the B.H slope level enter
        // the heart shifted by [1]; rank-zero classes stay unshifted
        let shifted = if mc.ch0 > 0 {
            let bh = intersect(&ws.surface, &params.b, &params.h)?;
            slope(&ws.surface, &params, mc)? <= bh
        } else if mc.ch0 == 0 {
            false
        } else {
            return Err(Error::Usage("--phase requires ch0 >= 0".into()));
        };
        lines.push(format!("heart = {}", if shifted { "shifted" } else { "unshifted" }));
        payload["shifted"] = json!(shifted);
        match phase(&z, shifted)? {
            Phase::One => {
                lines.push("phase = 1".into());
                payload["phase"] = json!("1");
            }
            Phase::Cotangent(c) => {
                lines.push(format!("cot(pi*phase) = {}", format_rat(&c)));
                payload["cot_pi_phase"] = json!(format_rat(&c));
            }
        }
    }
    Ok(Report { lines, payload })
}

fn cmd_support(ws: &Workspace, name: &str, unchecked: bool) -> Result<Report, Error> {
    let params = ws.stability()?.params(ws, unchecked)?;
    let mc = ws.sheaf(name)?.chern();
    let q = support_form(&ws.surface, &params, mc)?;
    let mut lines = vec![format!("C = {}", format_rat(&params.c))];
    let mut payload = json!({
        "command": "support",
        "sheaf": name,
        "c": format_rat(&params.c),
        "q": format_rat(&q),
    });
    if !unchecked {
        let enlarged = support_constant(&ws.surface, &params.h, &params.c)?;
        lines.push(format!("C_inventory = {}", format_rat(&enlarged)));
        payload["c_inventory"] = json!(format_rat(&enlarged));
    }
    lines.push(format!("Q({name}) = {}", format_rat(&q)));
    Ok(Report { lines, payload })
}

fn describe_shape(shape: &WallShape) -> String {
    match shape {
        WallShape::Degenerate => "degenerate (proportional charges)".into(),
        WallShape::Empty => "empty".into(),
        WallShape::VerticalLine { b } => format!("vertical line b = {}", format_rat(b)),
        WallShape::Semicircle { center_b, radius_sq } => format!(
            "semicircle center b = {}, radius^2 = {}",
            format_rat(center_b),
            format_rat(radius_sq)
        ),
    }
}

fn shape_json(shape: &WallShape) -> serde_json::Value {
    match shape {
        WallShape::Degenerate => json!({"kind": "degenerate"}),
        WallShape::Empty => json!({"kind": "empty"}),
        WallShape::VerticalLine { b } => json!({"kind": "vertical-line", "b": format_rat(b)}),
        WallShape::Semicircle { center_b, radius_sq } => json!({
            "kind": "semicircle",
            "center_b": format_rat(center_b),
            "radius_sq": format_rat(radius_sq),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_walls(
    ws: &Workspace,
    v: &str,
    w: &str,
    window: &str,
    out: Option<&PathBuf>,
    heatmap: Option<&str>,
    unchecked: bool,
) -> Result<Report, Error> {
    let win = parse_window(window)?;
    let st = ws.stability()?;
    let h0 = ws.divisor(&st.h_name)?;
    let b0 = ws.divisor(&st.b_name)?;
    let c = st.resolve_c(&ws.surface)?;
    let mv = ws.sheaf(v)?.chern();
    let mw = ws.sheaf(w)?.chern();
    let locus = if unchecked {
        wall_locus_unchecked(&ws.surface, h0, b0, mv, mw, &c)?
    } else {
        wall_locus(&ws.surface, h0, b0, mv, mw, &c)?
    };
    let mut lines = vec![format!("wall({v}, {w}): {}", describe_shape(&locus.shape))];
    let mut payload = json!({
        "command": "walls",
        "v": v,
        "w": w,
        "shape": shape_json(&locus.shape),
        "coefficients": {
            "q_bb": format_rat(&locus.coefficients.q_bb),
            "q_tt": format_rat(&locus.coefficients.q_tt),
            "q_b": format_rat(&locus.coefficients.q_b),
            "q_t": format_rat(&locus.coefficients.q_t),
            "q_1": format_rat(&locus.coefficients.q_1),
        },
    });
    if let Some(path) = out {
        let hm = match heatmap {
            None => None,
            Some(hname) => Some(compute_heatmap(ws, h0, b0, &c, hname, &win)?),
        };
        let svg_text = svg::render(
            svg::Window {
                b_min: svg::rat_to_f64(&win.b_min),
                b_max: svg::rat_to_f64(&win.b_max),
                t_min: svg::rat_to_f64(&win.t_min),
                t_max: svg::rat_to_f64(&win.t_max),
            },
            &[(format!("wall({v}, {w})"), locus.shape.clone())],
            hm.as_ref(),
        );
        std::fs::write(path, svg_text).map_err(|e| {
            Error::Usage(format!("cannot write {}: {e}", path.display()))
        })?;
        lines.push(format!("svg written to {}", path.display()));
        payload["svg"] = json!(path.display().to_string());
    } else if heatmap.is_some() {
        return Err(Error::Usage("--heatmap requires --out".into()));
    }
    Ok(Report { lines, payload })
}

/// Exact charges on a grid (data-parallel when compiled in), converted
/// to approximate phases only for coloring.
fn compute_heatmap(
    ws: &Workspace,
    h0: &DivisorClass,
    b0: &DivisorClass,
    c: &Rat,
    sheaf: &str,
    win: &WallWindow,
) -> Result<svg::Heatmap, Error> {
    let mc = ws.sheaf(sheaf)?.chern().clone();
    let grid = nsurf_core::grid::SliceGrid {
        b_min: win.b_min.clone(),
        b_max: win.b_max.clone(),
        t_min: win.t_min.clone(),
        t_max: win.t_max.clone(),
        b_steps: 48,
        t_steps: 32,
    };
    let points = grid.points();
    let s = &ws.surface;
    let charges = nsurf_core::grid::map_grid(&points, |b, t| {
        slice_charge(s, h0, b0, c, &mc, b, t).ok()
    });
    let phases = charges
        .iter()
        .map(|z| {
            let z = z.as_ref()?;
            if z.is_zero() {
                return None;
            }
            let arg = svg::rat_to_f64(&z.im).atan2(svg::rat_to_f64(&z.re));
            let phi = arg / std::f64::consts::PI;
            Some(if phi <= 0.0 { phi + 2.0 } else { phi })
        })
        .collect();
    Ok(svg::Heatmap { b_steps: grid.b_steps, t_steps: grid.t_steps, phases })
}

fn run(cli: Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Intersect { common, a, b } => {
            cmd_intersect(&parse_workspace(&common.workspace)?, a, b)
        }
        Command::Pullback { common, divisor } => {
            cmd_pullback(&parse_workspace(&common.workspace)?, divisor)
        }
        Command::Chern { common, sheaf } => cmd_chern(&parse_workspace(&common.workspace)?, sheaf),
        Command::Chi { common, sheaf } => cmd_chi(&parse_workspace(&common.workspace)?, sheaf),
        Command::Delta { common, sheaf } => cmd_delta(&parse_workspace(&common.workspace)?, sheaf),
        Command::Bogomolov { common, sheaf, flags } => {
            cmd_bogomolov(&parse_workspace(&common.workspace)?, sheaf, flags.unchecked_ample)
        }
        Command::Charge { common, sheaf, phase, flags } => {
            cmd_charge(&parse_workspace(&common.workspace)?, sheaf, *phase, flags.unchecked_ample)
        }
        Command::Support { common, sheaf, flags } => {
            cmd_support(&parse_workspace(&common.workspace)?, sheaf, flags.unchecked_ample)
        }
        Command::Walls { common, v, w, window, out, heatmap, flags } => cmd_walls(
            &parse_workspace(&common.workspace)?,
            v,
            w,
            window,
            out.as_ref(),
            heatmap.as_deref(),
            flags.unchecked_ample,
        ),
    }
}

fn wants_json(cli: &Cli) -> bool {
    match &cli.command {
        Command::Intersect { common, .. }
        | Command::Pullback { common, .. }
        | Command::Chern { common, .. }
        | Command::Chi { common, .. }
        | Command::Delta { common, .. }
        | Command::Bogomolov { common, .. }
        | Command::Charge { common, .. }
        | Command::Support { common, .. }
        | Command::Walls { common, .. } => common.json,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let json = wants_json(&cli);
    match run(cli) {
        Ok(report) => {
            if json {
                println!("{}", serde_json::to_string_pretty(&report.payload).unwrap());
            } else {
                for line in &report.lines {
                    println!("{line}");
                }
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let code = match &e {
                Error::Usage(_) => 1,
                Error::Validation(issues) => {
                    for issue in issues {
                        eprintln!("error: {issue}");
                    }
                    return ExitCode::from(2);
                }
                Error::Singular => 2,
                Error::Consistency(_) => 3,
            };
            eprintln!("error: {e}");
            ExitCode::from(code)
        }
    }
}
