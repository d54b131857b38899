//! `penning` — command-line front door for the trap operator-algebra engine.
//!
//! Subcommands: `verify`, `spectrum`, `figure`, `scan`, `wavefunction`.
//! Everything is machine-readable (`--format csv|json`, `--out PATH`) and
//! deterministic. Exit codes: 0 success, 1 verification failure, 2 usage or
//! domain error. `PENNING_THREADS` caps worker parallelism.

mod output;

use clap::{Parser, Subcommand, ValueEnum};
use output::{fmt_f64, Envelope, Format};
use penning_core::catalog::{
    catalog, complete_set_identities, graded_jacobi_check, hamiltonian_commutation,
    higher_order_checks, structure_constants, verify_relations, verify_relations_numeric, CaseId,
    CatalogError, IdentityCheck,
};
use penning_core::scan::{
    classify_point, degeneracy_groups, detect_rational_ratios, energy_f64, enumerate_states,
    find_crossings, hundredths_grid, ScanConfig, StateCaps,
};
use penning_core::trap::{Scalar, TrapParameters};
use penning_core::wavefunction::{
    energy_nkm_f64, pde_residual, psi, sample_points, QuantumNumbersNKM, WaveParams,
};
use serde_json::json;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

/// A rational (`p/q`) or decimal scalar argument. Rational inputs stay exact
/// end to end; decimals are flagged inexact in the metadata header.
#[derive(Clone, Debug)]
struct ScalarArg {
    scalar: Scalar,
    text: String,
}

impl ScalarArg {
    fn is_exact(&self) -> bool {
        self.scalar.is_exact()
    }

    fn to_f64(&self) -> f64 {
        self.scalar.to_f64()
    }
}

impl FromStr for ScalarArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text = s.to_string();
        if let Some((p, q)) = s.split_once('/') {
            let p: i64 = p.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            let q: i64 = q.trim().parse().map_err(|_| format!("bad rational `{s}`"))?;
            if q == 0 {
                return Err(format!("zero denominator in `{s}`"));
            }
            return Ok(ScalarArg { scalar: Scalar::from_ratio(p, q), text });
        }
        if let Ok(n) = s.parse::<i64>() {
            return Ok(ScalarArg { scalar: Scalar::from_int(n), text });
        }
        let x: f64 = s.parse().map_err(|_| format!("bad number `{s}`"))?;
        Ok(ScalarArg { scalar: Scalar::Approx(x), text })
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CaseArg {
    #[value(name = "su11_plus")]
    Su11Plus,
    #[value(name = "su11_minus")]
    Su11Minus,
    #[value(name = "so3_su11")]
    So3Su11,
    #[value(name = "su21")]
    Su21,
    #[value(name = "su211")]
    Su211,
    #[value(name = "osp26")]
    Osp26,
}

impl From<CaseArg> for CaseId {
    fn from(value: CaseArg) -> CaseId {
        match value {
            CaseArg::Su11Plus => CaseId::Su11Plus,
            CaseArg::Su11Minus => CaseId::Su11Minus,
            CaseArg::So3Su11 => CaseId::So3Su11,
            CaseArg::Su21 => CaseId::Su21,
            CaseArg::Su211 => CaseId::Su211,
            CaseArg::Osp26 => CaseId::Osp26,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "penning",
    version,
    about = "Exact superalgebra verification and spectra for a single fermion in a Penning trap"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write output to a file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Verify relation tables, closure, Jacobi identities, hamiltonian
    /// commutation, and the complete-set identities.
    Verify {
        /// Restrict to one case (default: all).
        #[arg(long, value_enum)]
        case: Option<CaseArg>,
        /// Re-derive every bracket from truncated Fock matrices as well.
        #[arg(long)]
        numeric_cross_check: bool,
        /// Fock cutoff per bosonic mode for the numeric cross-check.
        #[arg(long, default_value_t = 8)]
        cutoff: u32,
    },
    /// Energy levels at one parameter point, exact rationals when possible.
    Spectrum {
        #[arg(long)]
        sigma: ScalarArg,
        #[arg(long)]
        g: ScalarArg,
        #[arg(long, default_value_t = 2)]
        max_na: u32,
        #[arg(long, default_value_t = 3)]
        max_nb: u32,
        #[arg(long, default_value_t = 1)]
        max_nc: u32,
    },
    /// Data for the three published figures (1: frequency curves;
    /// 2: levels at g = 2/3; 3: levels at g = 4/3).
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        number: u8,
    },
    /// Crossing, rational-ratio, and classification scan over a σ range.
    Scan {
        #[arg(long)]
        g: ScalarArg,
        #[arg(long, default_value_t = 1.45)]
        sigma_min: f64,
        #[arg(long, default_value_t = 3.0)]
        sigma_max: f64,
        #[arg(long, default_value_t = 310)]
        steps: usize,
        /// Max denominator for rational-ratio detection.
        #[arg(long, default_value_t = 16)]
        maxden: u64,
    },
    /// Evaluate a coordinate-space eigenfunction.
    Wavefunction {
        #[arg(long = "N")]
        n: u32,
        #[arg(long = "K")]
        k_hat: u32,
        #[arg(long = "M")]
        m_hat: i64,
        #[arg(long)]
        sigma: ScalarArg,
        /// Evaluate at one point `rho,phi,z`.
        #[arg(long, value_name = "RHO,PHI,Z")]
        eval: Option<String>,
        /// Dump a profile over a monotone ρ grid at z in {-1, 0, 1}.
        #[arg(long)]
        profile: bool,
        /// Check the PDE residual over quasi-random sample points.
        #[arg(long)]
        check: bool,
    },
}

/// Domain and usage errors map to exit code 2.
#[derive(Debug)]
struct DomainError(String);

impl std::fmt::Display for DomainError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl<E: std::error::Error> From<E> for DomainError {
    fn from(e: E) -> DomainError {
        DomainError(e.to_string())
    }
}

fn main() -> ExitCode {
    if let Ok(threads) = std::env::var("PENNING_THREADS") {
        if let Ok(n) = threads.parse::<usize>() {
            if n >= 1 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, DomainError> {
    match cli.command {
        Command::Verify { case, numeric_cross_check, cutoff } => {
            cmd_verify(case.map(CaseId::from), numeric_cross_check, cutoff, cli.format, cli.out)
        }
        Command::Spectrum { sigma, g, max_na, max_nb, max_nc } => cmd_spectrum(
            &sigma,
            &g,
            StateCaps { na: max_na, nb: max_nb, nc: max_nc },
            cli.format,
            cli.out,
        ),
        Command::Figure { number } => cmd_figure(number, cli.format, cli.out),
        Command::Scan { g, sigma_min, sigma_max, steps, maxden } => {
            cmd_scan(&g, sigma_min, sigma_max, steps, maxden, cli.format, cli.out)
        }
        Command::Wavefunction { n, k_hat, m_hat, sigma, eval, profile, check } => {
            cmd_wavefunction(
                n,
                k_hat,
                m_hat,
                &sigma,
                eval.as_deref(),
                profile,
                check,
                cli.format,
                cli.out,
            )
        }
    }
}

fn check_rows(rows: &mut Vec<Vec<String>>, kind: &str, checks: &[IdentityCheck]) -> bool {
    let mut all = true;
    for c in checks {
        all &= c.passed;
        rows.push(vec![
            kind.to_string(),
            c.case.clone(),
            c.identity.clone(),
            c.passed.to_string(),
            c.residual.clone(),
        ]);
    }
    all
}

fn cmd_verify(
    case: Option<CaseId>,
    numeric: bool,
    cutoff: u32,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, DomainError> {
    let cases: Vec<CaseId> = case.map(|c| vec![c]).unwrap_or_else(|| CaseId::ALL.to_vec());
    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut all = true;

    for &case in &cases {
        all &= check_rows(&mut rows, "relation", &verify_relations(case)?.checks);

        match structure_constants(&catalog(case)) {
            Ok(sc) => rows.push(vec![
                "closure".into(),
                case.name().into(),
                format!("{} brackets resolve in span + unit", sc.entries.len()),
                "true".into(),
                "0".into(),
            ]),
            Err(CatalogError::NotClosed { lhs, rhs, bracket }) => {
                all = false;
                rows.push(vec![
                    "closure".into(),
                    case.name().into(),
                    format!("[{lhs}, {rhs}] escapes the span"),
                    "false".into(),
                    bracket,
                ]);
            }
            Err(other) => return Err(other.into()),
        }

        let jacobi = graded_jacobi_check(&catalog(case))?;
        all &= jacobi.failures == 0;
        rows.push(vec![
            "jacobi".into(),
            case.name().into(),
            format!("{} ordered triples", jacobi.triples),
            (jacobi.failures == 0).to_string(),
            format!("{} failing triples", jacobi.failures),
        ]);

        all &= check_rows(&mut rows, "hamiltonian", &hamiltonian_commutation(case)?.checks);

        if matches!(case, CaseId::So3Su11 | CaseId::Su21) {
            all &= check_rows(&mut rows, "complete_set", &complete_set_identities(case)?.checks);
        }

        if numeric {
            for row in verify_relations_numeric(case, cutoff, 1e-12)? {
                all &= row.pass;
                rows.push(vec![
                    "numeric".into(),
                    row.case,
                    row.identity,
                    row.pass.to_string(),
                    fmt_f64(row.residual),
                ]);
            }
        }
    }

    all &= check_rows(&mut rows, "higher_order", &higher_order_checks()?.checks);

    let mut env = Envelope::new(format, out, "verify");
    env.meta("cases", cases.iter().map(|c| c.name()).collect::<Vec<_>>().join(" "));
    env.meta("numeric_cross_check", numeric);
    if numeric {
        env.meta("cutoff", cutoff);
    }
    env.meta("passed", all);
    env.emit_table(&["kind", "case", "identity", "passed", "residual"], &rows)?;
    Ok(all)
}

fn cmd_spectrum(
    sigma: &ScalarArg,
    g: &ScalarArg,
    caps: StateCaps,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, DomainError> {
    let params = TrapParameters::new(sigma.scalar.clone(), g.scalar.clone())?;
    let exact = params.is_exact();
    let mut rows = Vec::new();
    for state in enumerate_states(&caps) {
        let energy = params.energy(&state);
        let rendered = match energy.as_exact() {
            Some(r) => r.to_string(),
            None => fmt_f64(energy.to_f64()),
        };
        rows.push(vec![
            state.na.to_string(),
            state.nb.to_string(),
            state.nc.to_string(),
            state.nf.to_string(),
            rendered,
        ]);
    }
    let mut env = Envelope::new(format, out, "spectrum");
    env.meta("sigma", &sigma.text);
    env.meta("g", &g.text);
    env.meta("exact", exact);
    env.meta("max_na", caps.na);
    env.meta("max_nb", caps.nb);
    env.meta("max_nc", caps.nc);
    env.emit_table(&["Na", "Nb", "Nc", "Nf", "energy"], &rows)?;
    Ok(true)
}

fn cmd_figure(number: u8, format: Format, out: Option<PathBuf>) -> Result<bool, DomainError> {
    let grid = hundredths_grid(143, 300);
    let mut env = Envelope::new(format, out, "figure");
    env.meta("figure", number);
    match number {
        1 => {
            let gs = [4.0 / 3.0, 2.0 / 3.0];
            let data = penning_core::scan::figure1_data(&gs, &grid)?;
            env.meta("g_dashed", "4/3 2/3");
            let rows: Vec<Vec<String>> = data
                .rows
                .iter()
                .map(|r| {
                    vec![
                        fmt_f64(r.sigma),
                        fmt_f64(r.omega_plus),
                        fmt_f64(r.omega_minus),
                        fmt_f64(r.omega_z),
                        fmt_f64(r.omega_g[0]),
                        fmt_f64(r.omega_g[1]),
                    ]
                })
                .collect();
            env.emit_table(
                &["sigma", "omega_plus", "omega_minus", "omega_z", "omega_g_4/3", "omega_g_2/3"],
                &rows,
            )?;
        }
        2 | 3 => {
            let (g, g_text, caps) = if number == 2 {
                (2.0 / 3.0, "2/3", StateCaps::figure2())
            } else {
                (4.0 / 3.0, "4/3", StateCaps::figure3())
            };
            env.meta("g", g_text);
            let states = enumerate_states(&caps);
            let mut rows = Vec::new();
            for &sigma in &grid {
                for state in &states {
                    rows.push(vec![
                        fmt_f64(sigma),
                        state.na.to_string(),
                        state.nb.to_string(),
                        state.nc.to_string(),
                        state.nf.to_string(),
                        fmt_f64(energy_f64(state, sigma, g)),
                    ]);
                }
            }
            env.emit_table(&["sigma", "Na", "Nb", "Nc", "Nf", "energy"], &rows)?;
        }
        _ => unreachable!("clap range guards 1..=3"),
    }
    Ok(true)
}

fn cmd_scan(
    g: &ScalarArg,
    sigma_min: f64,
    sigma_max: f64,
    steps: usize,
    maxden: u64,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, DomainError> {
    let mut config = ScanConfig::new(sigma_min, sigma_max, steps, g.to_f64());
    config.max_denominator = maxden;
    config.validate()?;
    let crossings = find_crossings(&config)?;

    let mut rows: Vec<Vec<String>> = Vec::new();
    let mut crossings_json = Vec::new();
    let mut rationals_json = Vec::new();
    let mut classifications_json = Vec::new();
    let mut groups_json = Vec::new();

    for cluster in &crossings {
        let pairs: Vec<String> =
            cluster.pairs.iter().map(|(a, b)| format!("{a} x {b}")).collect();
        rows.push(vec!["crossing".into(), fmt_f64(cluster.sigma), pairs.join("; ")]);
        crossings_json.push(json!({
            "sigma": cluster.sigma,
            "pairs": cluster.pairs,
        }));

        if let Some(ratio) = detect_rational_ratios(cluster.sigma, config.g, maxden) {
            let [np, nm, nz, ng] = ratio.0;
            rows.push(vec![
                "rational".into(),
                fmt_f64(cluster.sigma),
                format!("{np}:{nm}:{nz}:{ng}"),
            ]);
            rationals_json.push(json!({ "sigma": cluster.sigma, "ratio": ratio.0 }));
        }

        if let Some(case) = classify_point(cluster.sigma, config.g)? {
            rows.push(vec!["classification".into(), fmt_f64(cluster.sigma), case.name().into()]);
            classifications_json.push(json!({ "sigma": cluster.sigma, "case": case.name() }));
        }

        for group in degeneracy_groups(cluster.sigma, config.g, &config.caps, config.energy_tol) {
            if group.multiplicity() < 2 {
                continue;
            }
            let members: Vec<String> = group.members.iter().map(|s| s.to_string()).collect();
            rows.push(vec![
                "group".into(),
                fmt_f64(cluster.sigma),
                format!(
                    "E={} multiplicity={} {}",
                    fmt_f64(group.energy),
                    group.multiplicity(),
                    members.join(" ")
                ),
            ]);
            groups_json.push(json!({
                "sigma": cluster.sigma,
                "energy": group.energy,
                "members": group.members,
            }));
        }
    }

    let mut env = Envelope::new(format, out, "scan");
    env.meta("g", &g.text);
    env.meta("sigma_min", fmt_f64(sigma_min));
    env.meta("sigma_max", fmt_f64(sigma_max));
    env.meta("steps", steps);
    env.meta("maxden", maxden);
    match format {
        Format::Csv => env.emit_table(&["kind", "sigma", "detail"], &rows)?,
        Format::Json => env.emit_json(json!({
            "crossings": crossings_json,
            "rational_points": rationals_json,
            "classifications": classifications_json,
            "degenerate_groups": groups_json,
        }))?,
    }
    Ok(true)
}

#[allow(clippy::too_many_arguments)]
fn cmd_wavefunction(
    n: u32,
    k_hat: u32,
    m_hat: i64,
    sigma: &ScalarArg,
    eval: Option<&str>,
    profile: bool,
    check: bool,
    format: Format,
    out: Option<PathBuf>,
) -> Result<bool, DomainError> {
    if eval.is_none() && !profile && !check {
        return Err(DomainError(
            "wavefunction requires at least one of --eval, --profile, --check".into(),
        ));
    }
    let qn = QuantumNumbersNKM::new(n, k_hat, m_hat)?;
    let wp = WaveParams::new(sigma.to_f64())?;

    let mut env = Envelope::new(format, out, "wavefunction");
    env.meta("N", n);
    env.meta("K", k_hat);
    env.meta("M", m_hat);
    env.meta("sigma", &sigma.text);
    env.meta("exact", sigma.is_exact());
    env.meta("energy", fmt_f64(energy_nkm_f64(&qn, wp.sigma)));

    let mut passed = true;
    if check {
        let residual = pde_residual(&qn, &wp, &sample_points(&wp, 100));
        env.meta("pde_residual", fmt_f64(residual));
        passed = residual < 1e-8;
        env.meta("pde_pass", passed);
    }

    if let Some(point) = eval {
        let coords: Vec<f64> = point
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| DomainError(format!("bad --eval point `{point}`")))?;
        let [rho, phi, z] = coords.as_slice() else {
            return Err(DomainError(format!("--eval needs three coordinates, got `{point}`")));
        };
        if *rho < 0.0 {
            return Err(DomainError("rho must be nonnegative".into()));
        }
        let value = psi(&qn, &wp, *rho, *phi, *z);
        let rows = vec![vec![
            fmt_f64(*rho),
            fmt_f64(*phi),
            fmt_f64(*z),
            fmt_f64(value.re),
            fmt_f64(value.im),
        ]];
        env.emit_table(&["rho", "phi", "z", "re", "im"], &rows)?;
        return Ok(passed);
    }

    if profile {
        let rho_max = 4.0 * wp.r0 / wp.k.sqrt();
        let mut rows = Vec::new();
        for i in 1..=120u32 {
            let rho = rho_max * i as f64 / 120.0;
            for z in [-1.0, 0.0, 1.0] {
                let value = psi(&qn, &wp, rho, 0.0, z);
                rows.push(vec![fmt_f64(rho), fmt_f64(z), fmt_f64(value.re), fmt_f64(value.im)]);
            }
        }
        env.emit_table(&["rho", "z", "re", "im"], &rows)?;
        return Ok(passed);
    }

    // --check alone: metadata only.
    env.emit_table(&["rho", "z", "re", "im"], &[])?;
    Ok(passed)
}
