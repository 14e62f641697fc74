use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use cm::baselines::{compare, extract_threshold_1d};
use cm::cm::{
    init_horizontal, init_random, init_threshold_1d, init_vertical, run_cm, CmConfig,
    IterationTrace, Partition,
};
use cm::config::ExperimentConfig;
use cm::generators::{example1_setup, example2_setup, ClassSetup};
use cm::output::{
    fmt_sig9, render_partition, write_compare_csv, write_partition_csv, write_trace_csv,
};

#[derive(Parser)]
#[command(
    name = "cm",
    version,
    about = "Channels-matching classifier experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Directory for output files (overrides any `output.dir` in the config)
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,

    /// Iteration cap override
    #[arg(long, global = true)]
    max_iters: Option<usize>,

    /// Minimum per-iteration MI improvement before stopping
    #[arg(long, global = true)]
    mi_tol: Option<f64>,

    /// Also emit a PPM image of the partition after each iteration (2D only)
    #[arg(long, global = true)]
    render: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file
    Run { config: PathBuf },
    /// 1D two-class preset with a single decision threshold
    Example1,
    /// 2D three-class preset (one class is a two-component mixture)
    Example2 {
        #[arg(long, value_enum)]
        init: Example2Init,
        /// RNG seed for `--init random`
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run both the MI-maximizing and maximum-posterior classifiers and report
    Compare { config: PathBuf },
}

#[derive(Copy, Clone, ValueEnum)]
enum Example2Init {
    Vertical,
    Horizontal,
    Random,
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors; the exit-code contract reserves 2
    // for non-convergence, so bad arguments map to 1 like other config errors.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e)
            if matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match dispatch(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

/// Runs the selected command; `Ok(true)` means the iteration converged.
fn dispatch(cli: &Cli) -> Result<bool> {
    match &cli.command {
        Command::Run { config } => cmd_run(cli, config),
        Command::Example1 => cmd_example1(cli),
        Command::Example2 { init, seed } => cmd_example2(cli, *init, *seed),
        Command::Compare { config } => cmd_compare(cli, config),
    }
}

fn load_config(cli: &Cli, path: &Path) -> Result<ExperimentConfig> {
    let mut cfg =
        ExperimentConfig::from_file(path).with_context(|| format!("config {}", path.display()))?;
    apply_overrides(cli, &mut cfg.cm)?;
    Ok(cfg)
}

fn apply_overrides(cli: &Cli, cm_cfg: &mut CmConfig) -> Result<()> {
    if let Some(m) = cli.max_iters {
        cm_cfg.max_iters = m;
    }
    if let Some(t) = cli.mi_tol {
        cm_cfg.mi_tol = t;
    }
    cm_cfg.validate()?;
    Ok(())
}

fn resolve_out_dir(cli: &Cli, from_config: Option<&Path>) -> Result<PathBuf> {
    let dir = cli
        .out_dir
        .clone()
        .or_else(|| from_config.map(Path::to_path_buf))
        .unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir)
        .with_context(|| format!("creating output directory {}", dir.display()))?;
    Ok(dir)
}

/// Runs the CM iteration and writes trace.csv, per-iteration partition CSVs,
/// and (with `--render`) per-iteration PPM images into `out_dir`.
fn run_and_write(
    setup: &ClassSetup,
    init: &Partition,
    cm_cfg: &CmConfig,
    out_dir: &Path,
    render: bool,
) -> Result<IterationTrace> {
    let trace = run_cm(setup, init, cm_cfg)?;
    write_trace_csv(&out_dir.join("trace.csv"), &trace)?;
    for (record, partition) in trace.records.iter().zip(&trace.partitions) {
        let k = record.iter;
        write_partition_csv(&out_dir.join(format!("partition_iter_{k}.csv")), partition)?;
        if render {
            render_partition(partition, &out_dir.join(format!("partition_iter_{k}.ppm")))?;
        }
    }
    Ok(trace)
}

fn summarize(name: &str, trace: &IterationTrace, extra: &str) {
    let mi = trace
        .records
        .last()
        .map(|r| fmt_sig9(r.shannon_mi_bits))
        .unwrap_or_else(|| "n/a".to_string());
    let status = if trace.converged {
        "converged"
    } else {
        "did not converge"
    };
    println!(
        "{name}: {status}, MI = {mi} bits, iterations = {}{extra}",
        trace.records.len()
    );
}

fn cmd_run(cli: &Cli, config_path: &Path) -> Result<bool> {
    let cfg = load_config(cli, config_path)?;
    let setup = cfg.setup()?;
    let init = cfg.initial_partition(&setup)?;
    let out_dir = resolve_out_dir(cli, cfg.out_dir.as_deref())?;
    let trace = run_and_write(&setup, &init, &cfg.cm, &out_dir, cli.render)?;
    summarize("run", &trace, "");
    Ok(trace.converged)
}

fn cmd_example1(cli: &Cli) -> Result<bool> {
    let setup = example1_setup();
    let mut cm_cfg = CmConfig::default();
    apply_overrides(cli, &mut cm_cfg)?;
    let init = init_threshold_1d(&setup.grid, 50.0)?;
    let out_dir = resolve_out_dir(cli, None)?;
    let trace = run_and_write(&setup, &init, &cm_cfg, &out_dir, cli.render)?;
    let z_star = extract_threshold_1d(&trace.final_partition)?;
    summarize("example1", &trace, &format!(", z* = {z_star}"));
    Ok(trace.converged)
}

fn cmd_example2(cli: &Cli, init_kind: Example2Init, seed: u64) -> Result<bool> {
    let setup = example2_setup();
    let mut cm_cfg = CmConfig::default();
    apply_overrides(cli, &mut cm_cfg)?;
    let n_labels = setup.n_classes() as u32;
    let (name, init) = match init_kind {
        Example2Init::Vertical => ("vertical", init_vertical(&setup.grid, n_labels)?),
        Example2Init::Horizontal => ("horizontal", init_horizontal(&setup.grid, n_labels)?),
        Example2Init::Random => ("random", init_random(&setup.grid, n_labels, seed)?),
    };
    let out_dir = resolve_out_dir(cli, None)?;
    let trace = run_and_write(&setup, &init, &cm_cfg, &out_dir, cli.render)?;
    let extra = match (trace.records.get(1), trace.records.last()) {
        (Some(second), Some(last)) if last.shannon_mi_bits > 0.0 => format!(
            ", MI ratio after iteration 2 = {}",
            fmt_sig9(second.shannon_mi_bits / last.shannon_mi_bits)
        ),
        _ => String::new(),
    };
    summarize(&format!("example2 ({name})"), &trace, &extra);
    Ok(trace.converged)
}

fn cmd_compare(cli: &Cli, config_path: &Path) -> Result<bool> {
    let cfg = load_config(cli, config_path)?;
    let setup = cfg.setup()?;
    let init = cfg.initial_partition(&setup)?;
    let report = compare(&setup, &cfg.cm, &init)?;
    let out_dir = resolve_out_dir(cli, cfg.out_dir.as_deref())?;
    write_compare_csv(&out_dir.join("compare.csv"), &report)?;
    if cli.render {
        render_partition(&report.mmi_partition, &out_dir.join("compare_mmi.ppm"))?;
        render_partition(&report.mpp_partition, &out_dir.join("compare_mpp.ppm"))?;
    }
    let fmt_thr = |t: Option<f64>| t.map(|v| v.to_string()).unwrap_or_else(|| "-".to_string());
    println!(
        "compare: mmi MI = {} bits (err {}), mpp MI = {} bits (err {}), \
         thresholds mmi = {}, mpp = {}, partitions {}",
        fmt_sig9(report.mmi_partition_mi),
        fmt_sig9(report.mmi_error_rate),
        fmt_sig9(report.mpp_partition_mi),
        fmt_sig9(report.mpp_error_rate),
        fmt_thr(report.mmi_threshold),
        fmt_thr(report.mpp_threshold),
        if report.partitions_equivalent {
            "equivalent"
        } else {
            "distinct"
        },
    );
    for v in &report.violations {
        eprintln!("warning: {v}");
    }
    Ok(report.cm_converged)
}
