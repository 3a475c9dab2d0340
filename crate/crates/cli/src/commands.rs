use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use qadpa_core::circuit::solve_sparams;
use qadpa_core::doherty::{
    backoff_from_delta, chain_response, delta_from_backoff, harmonic_cascade, metrics, representative_cases,
    SizeRatio, StageClipper,
};
use qadpa_core::matching::{pi_equivalent, theta_from_shunt_c, synthesize_two_section, GAConfig, MatchSpec};
use qadpa_core::rf::{linspace, Frequency, TLineSection};
use qadpa_core::wilkinson::{design_with, to_netlist_with, NetlistOptions};

use crate::config::ChainConfig;
use crate::error::{CliError, CliResult};
use crate::netlist_text::{parse_netlist, write_netlist};
use crate::output::{curves_csv, harmonics_csv, write_atomic};
use crate::touchstone::{write_touchstone, DataFormat};
use crate::units::{format_scaled, parse_value, Dim};

/// Environment variable that replaces any `--seed`.
pub const SEED_ENV: &str = "QADPA_SEED";

#[derive(Debug, Parser)]
#[command(name = "qadpa", version, about = "Passive-network synthesis and Doherty model toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve a netlist over a frequency sweep and write Touchstone.
    Analyze(AnalyzeArgs),
    /// Two-section matching network with insertion-phase target.
    SynthMatch(SynthMatchArgs),
    /// Equal or unequal split Wilkinson combiner.
    SynthWilkinson(WilkinsonArgs),
    /// Lumped pi equivalent of a line, or line length from a shunt capacitor.
    PiEquiv(PiArgs),
    /// Drive sweep of a Doherty chain configuration to CSV.
    DohertyCurves(CurvesArgs),
    /// Harmonic content of cascaded clipping stages.
    Harmonics(HarmonicsArgs),
    /// Back-off from size ratio or the reverse.
    Backoff(BackoffArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Ri,
    Ma,
    Db,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    pub netlist: PathBuf,
    /// Start frequency (Hz, or with a Hz/MHz/GHz suffix).
    #[arg(long)]
    pub fstart: String,
    #[arg(long)]
    pub fstop: String,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    /// Output `.sNp` file; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "ri")]
    pub format: FormatArg,
    /// Terminate every port in this impedance instead of the netlist values.
    #[arg(long)]
    pub zref: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SynthMatchArgs {
    /// Source impedance as `re,im` in ohms.
    #[arg(long, default_value = "10.6,5.7", allow_hyphen_values = true)]
    pub zsrc: String,
    #[arg(long, default_value_t = 25.0)]
    pub zint: f64,
    #[arg(long, default_value_t = 50.0)]
    pub ztgt: f64,
    #[arg(long, default_value = "8e9")]
    pub f0: String,
    /// Band edges as `lo,hi`.
    #[arg(long, default_value = "7.6e9,8.4e9")]
    pub band: String,
    /// Insertion phase delay to realise, degrees.
    #[arg(long, default_value_t = 120.0)]
    pub phase: f64,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub conjugate: bool,
    #[arg(long)]
    pub population: Option<usize>,
    #[arg(long)]
    pub generations: Option<usize>,
    /// JSON result; stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the two sections as a netlist.
    #[arg(long)]
    pub out_netlist: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WilkinsonArgs {
    #[arg(long, default_value_t = 50.0)]
    pub z0: f64,
    /// Power ratio P2/P3 (main over auxiliary).
    #[arg(long)]
    pub ratio: f64,
    #[arg(long)]
    pub f0: String,
    #[arg(long)]
    pub out_netlist: Option<PathBuf>,
    /// Leave out the output quarter-wave transformers.
    #[arg(long)]
    pub no_transformers: bool,
    /// Leave out the isolation resistor.
    #[arg(long)]
    pub no_bridge: bool,
    /// Replace each line by its pi equivalent.
    #[arg(long)]
    pub lumped: bool,
}

#[derive(Debug, Args)]
pub struct PiArgs {
    #[arg(long)]
    pub z0: f64,
    #[arg(long)]
    pub f0: String,
    /// Electrical length in degrees.
    #[arg(long, conflicts_with = "c", required_unless_present = "c")]
    pub theta: Option<f64>,
    /// Shunt capacitor (F, or with pF/fF suffix); prints the line length.
    #[arg(long)]
    pub c: Option<String>,
}

#[derive(Debug, Args)]
pub struct CurvesArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Add per-path input and output columns.
    #[arg(long)]
    pub full: bool,
}

#[derive(Debug, Args)]
pub struct HarmonicsArgs {
    /// `gain:clip` per stage, comma separated (`inf` for no clipping), or
    /// `representative` for the three bias cases.
    #[arg(long, default_value = "representative")]
    pub stages: String,
    /// Drive amplitude in volts.
    #[arg(long, default_value_t = 1.0)]
    pub drive: f64,
    #[arg(long, default_value_t = 4)]
    pub periods: usize,
    #[arg(long, default_value_t = 256)]
    pub samples: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct BackoffArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Back-off magnitude in dB.
    #[arg(long, allow_negative_numbers = true)]
    pub obo: Option<f64>,
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> CliResult<()> {
    match cli.command {
        Command::Analyze(a) => analyze(a, stdout),
        Command::SynthMatch(a) => synth_match(a, stdout),
        Command::SynthWilkinson(a) => synth_wilkinson(a, stdout),
        Command::PiEquiv(a) => pi_equiv(a, stdout),
        Command::DohertyCurves(a) => doherty_curves(a, stdout),
        Command::Harmonics(a) => harmonics(a, stdout),
        Command::Backoff(a) => backoff(a, stdout),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn say(out: &mut dyn Write, text: &str) -> CliResult<()> {
    out.write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e))
}

fn emit(path: Option<&Path>, text: &str, out: &mut dyn Write) -> CliResult<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => say(out, text),
    }
}

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

fn freq_arg(text: &str) -> CliResult<Frequency<f64>> {
    let hz = parse_value(text, Dim::Frequency, 0).map_err(usage)?;
    Ok(Frequency::new(hz)?)
}

fn pair(text: &str, what: &str) -> CliResult<(f64, f64)> {
    let (a, b) = text.split_once(',').ok_or_else(|| usage(format!("{what} must be `a,b`")))?;
    let num = |s: &str| parse_value(s.trim(), Dim::Frequency, 0).map_err(usage);
    Ok((num(a)?, num(b)?))
}

fn analyze(a: AnalyzeArgs, out: &mut dyn Write) -> CliResult<()> {
    let mut netlist = parse_netlist(&read(&a.netlist)?).map_err(|e| match e {
        CliError::Parse { line, msg } => usage(format!("{}:{line}: {msg}", a.netlist.display())),
        other => other,
    })?;
    if let Some(z) = a.zref {
        if !(z > 0.0 && z.is_finite()) {
            return Err(usage(format!("--zref must be positive, got {z}")));
        }
        netlist.set_port_impedance(z);
    }
    let freqs = linspace(freq_arg(&a.fstart)?, freq_arg(&a.fstop)?, a.points)?;
    let report = solve_sparams(&netlist, &freqs)?;
    if let Some(f) = report.failures.first() {
        return Err(CliError::Numerical(format!(
            "{} of {} points failed, first at {} Hz: {}",
            report.failures.len(),
            freqs.len(),
            f.freq.hz(),
            f.error
        )));
    }
    for f in report.ill_conditioned() {
        eprintln!("warning: ill-conditioned nodal matrix at {} Hz", f.hz());
    }
    let format = match a.format {
        FormatArg::Ri => DataFormat::Ri,
        FormatArg::Ma => DataFormat::Ma,
        FormatArg::Db => DataFormat::Db,
    };
    emit(a.out.as_deref(), &write_touchstone(&report.sparams, format)?, out)
}

fn seed(cli: Option<u64>) -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| usage(format!("{SEED_ENV}=`{v}` is not an integer"))),
        Err(_) => Ok(cli.unwrap_or(GAConfig::default().seed)),
    }
}

fn synth_match(a: SynthMatchArgs, out: &mut dyn Write) -> CliResult<()> {
    let (re, im) = a
        .zsrc
        .split_once(',')
        .and_then(|(r, i)| Some((r.trim().parse::<f64>().ok()?, i.trim().parse::<f64>().ok()?)))
        .ok_or_else(|| usage("--zsrc must be `re,im`"))?;
    let spec = MatchSpec {
        z_source: Complex64::new(re, im),
        z_intermediate: a.zint,
        z_target: a.ztgt,
        f0: freq_arg(&a.f0)?.hz(),
        band: pair(&a.band, "--band")?,
        phase_target_deg: a.phase,
        conjugate_mode: a.conjugate,
        ..MatchSpec::main_path_omn()
    };
    let mut cfg = GAConfig { seed: seed(a.seed)?, ..GAConfig::default() };
    if let Some(p) = a.population {
        cfg.population = p;
    }
    if let Some(g) = a.generations {
        cfg.generations = g;
    }
    let r = synthesize_two_section(&spec, &cfg)?;
    if !r.feasible {
        eprintln!(
            "warning: best candidate misses the thresholds (|Γ| = {:.4}, phase error {:.3}°)",
            r.gamma_at_f0.norm(),
            r.phase_error_deg
        );
    }
    if let Some(p) = &a.out_netlist {
        let mut n = qadpa_core::circuit::Netlist::new();
        n.add_node("src").add_node("mid").add_node("load");
        for (name, (from, to), s) in [("TL1", ("src", "mid"), r.sections[0]), ("TL2", ("mid", "load"), r.sections[1])] {
            n.add_element(name, qadpa_core::circuit::ElementKind::TLine { z0: s.z0, theta0_deg: s.theta0_deg, f0: s.f0 }, from, to);
        }
        n.add_port("src", spec.z_source.re).add_port("load", spec.z_target);
        let header = format!(
            "two-section matching network, seed {}\nport 1 reference is the real part of the source impedance",
            cfg.seed
        );
        write_atomic(p, write_netlist(&n, &header).as_bytes())?;
    }
    let json = serde_json::to_string_pretty(&r).map_err(|e| usage(e.to_string()))? + "\n";
    emit(a.out.as_deref(), &json, out)
}

fn synth_wilkinson(a: WilkinsonArgs, out: &mut dyn Write) -> CliResult<()> {
    let d = design_with(a.z0, a.ratio, freq_arg(&a.f0)?, !a.no_transformers)?;
    let fmt = |v: f64| format!("{v:.3}");
    let mut text = format!(
        "K^2 = {}\nbranch 2 = {} ohm\nbranch 3 = {} ohm\nbridge = {} ohm\n",
        fmt(d.k_squared),
        fmt(d.branch2_z0),
        fmt(d.branch3_z0),
        fmt(d.bridge_resistor)
    );
    if d.with_transformers {
        text += &format!(
            "transformer 2 = {} ohm\ntransformer 3 = {} ohm\n",
            fmt(d.output_transformer2_z0),
            fmt(d.output_transformer3_z0)
        );
    }
    say(out, &text)?;
    if let Some(p) = &a.out_netlist {
        let n = to_netlist_with(&d, NetlistOptions { bridge: !a.no_bridge, lumped: a.lumped })?;
        let header = format!(
            "Wilkinson combiner, P2/P3 = {}, Z0 = {} ohm\nport 1 common, port 2 main, port 3 auxiliary",
            a.ratio, a.z0
        );
        write_atomic(p, write_netlist(&n, &header).as_bytes())?;
    }
    Ok(())
}

fn pi_equiv(a: PiArgs, out: &mut dyn Write) -> CliResult<()> {
    let f0 = freq_arg(&a.f0)?;
    let theta = match (&a.c, a.theta) {
        (Some(c), _) => {
            let c = parse_value(c, Dim::Capacitance, 0).map_err(usage)?;
            let t = theta_from_shunt_c(c, a.z0, f0)?;
            say(out, &format!("theta = {t:.4} deg\n"))?;
            t
        }
        (None, Some(t)) => t,
        (None, None) => return Err(usage("give --theta or --c")),
    };
    let pi = pi_equivalent(&TLineSection::new(a.z0, theta, f0)?)?;
    say(
        out,
        &format!("L = {} nH\nC = {} pF (each side)\n", format_scaled(pi.l_series, -9), format_scaled(pi.c_shunt, -12)),
    )
}

fn doherty_curves(a: CurvesArgs, out: &mut dyn Write) -> CliResult<()> {
    let cfg = ChainConfig::parse(&read(&a.config)?).map_err(|e| match e {
        CliError::Parse { line, msg } => usage(format!("{}:{line}: {msg}", a.config.display())),
        other => other,
    })?;
    let curves = chain_response(&cfg.chain(), &cfg.sweep.grid()?)?;
    let m = metrics(&curves, cfg.dc_power(), cfg.aux_threshold)?;
    eprintln!("small-signal gain {:.3} dB", m.small_signal_gain_db);
    eprintln!("peak output {:.3} dBm", m.peak_pout_dbm);
    eprintln!("compression {:.3} dB", m.compression_db);
    match m.opbo_db {
        Some(o) => eprintln!("output back-off {o:.3} dB"),
        None => eprintln!("auxiliary path never reaches the back-off threshold"),
    }
    if let Some(eff) = &m.efficiency {
        let peak = eff.iter().copied().fold(0.0, f64::max);
        eprintln!("peak drain efficiency {:.1} %", 100.0 * peak);
    }
    emit(a.out.as_deref(), &curves_csv(&curves, a.full)?, out)
}

fn parse_stages(spec: &str) -> CliResult<Vec<(String, Vec<StageClipper<f64>>)>> {
    if spec.eq_ignore_ascii_case("representative") {
        return Ok(representative_cases().into_iter().map(|(n, s)| (n.to_string(), s)).collect());
    }
    let stages = spec
        .split(',')
        .map(|s| {
            let (g, c) = s.split_once(':').ok_or_else(|| usage(format!("stage `{s}` must be `gain:clip`")))?;
            let num = |t: &str| {
                let t = t.trim();
                if t.eq_ignore_ascii_case("inf") {
                    Ok(f64::INFINITY)
                } else {
                    t.parse::<f64>().map_err(|_| usage(format!("`{t}` is not a number")))
                }
            };
            Ok(StageClipper::new(num(g)?, num(c)?)?)
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(vec![("custom".to_string(), stages)])
}

fn harmonics(a: HarmonicsArgs, out: &mut dyn Write) -> CliResult<()> {
    let rows = parse_stages(&a.stages)?
        .into_iter()
        .map(|(name, s)| Ok((name, harmonic_cascade(&s, a.drive, a.periods, a.samples)?)))
        .collect::<CliResult<Vec<_>>>()?;
    emit(a.out.as_deref(), &harmonics_csv(&rows)?, out)
}

fn backoff(a: BackoffArgs, out: &mut dyn Write) -> CliResult<()> {
    match (a.delta, a.obo) {
        (Some(d), _) => {
            let b = backoff_from_delta(SizeRatio::new(d)?);
            say(out, &format!("{b:.4} dB\n"))
        }
        (None, Some(o)) => {
            let d = delta_from_backoff(o)?;
            say(out, &format!("delta = {:.4}\n", d.delta()))
        }
        (None, None) => Err(usage("give --delta or --obo")),
    }
}
