use std::fs;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::Parser;

use sim_cli::bench::run_bench;
use sim_cli::config::{load_config, parse_time, ScenarioConfig};
use sim_cli::plot::render_svg;
use sim_cli::runner::run_scenario_with;
use sim_cli::runner::RunOptions;

/// Event-driven behavioral simulator of a conductance-based silicon neuron
/// array with synchronous scan readout and an external pattern controller.
#[derive(Parser, Debug)]
#[command(name = "neurosim", version, about)]
struct Cli {
    /// Built-in scenario, or `custom` to take everything from --config.
    #[arg(long, default_value = "fig3a")]
    scenario: String,

    /// TOML scenario configuration (required with --scenario custom).
    #[arg(long)]
    config: Option<PathBuf>,

    /// Override the simulated duration, e.g. `50ms` or `1s`.
    #[arg(long)]
    duration: Option<String>,

    /// Override the scenario seed.
    #[arg(long)]
    seed: Option<u64>,

    /// Output directory for trace.csv, summary.json and plots.
    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Emit one SVG plot per traced neuron.
    #[arg(long)]
    plot: bool,

    /// Print a throughput report instead of writing trace files.
    #[arg(long)]
    bench: bool,

    /// Worker threads (1 = strictly sequential).
    #[arg(long)]
    threads: Option<usize>,
}

fn scenario_from(cli: &Cli) -> Result<ScenarioConfig> {
    let mut cfg = match cli.scenario.as_str() {
        "custom" => {
            let path = cli
                .config
                .as_ref()
                .context("--scenario custom requires --config <path>")?;
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            load_config(&text)?
        }
        name => {
            if cli.config.is_some() {
                bail!("--config is only used with --scenario custom");
            }
            ScenarioConfig::by_name(name)
                .with_context(|| format!("unknown scenario {name:?} (fig3a|fig3b|fig3c|fig3d|custom)"))?
        }
    };
    if let Some(duration) = &cli.duration {
        cfg.duration = sim_cli::config::TimePs(
            parse_time(duration).map_err(|e| anyhow::anyhow!(e))?,
        );
    }
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(threads) = cli.threads {
        cfg.threads = threads;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let cfg = scenario_from(&cli)?;

    if cli.bench {
        let report = run_bench(&cfg, cfg.threads)?;
        println!("{report}");
        return Ok(());
    }

    let artifacts = run_scenario_with(
        &cfg,
        RunOptions {
            threads: cfg.threads,
            record_segments: false,
        },
    )?;

    fs::create_dir_all(&cli.out)
        .with_context(|| format!("creating {}", cli.out.display()))?;
    let trace_path = cli.out.join("trace.csv");
    let mut file = fs::File::create(&trace_path)
        .with_context(|| format!("creating {}", trace_path.display()))?;
    artifacts.trace.write_csv(&mut file)?;

    let summary_path = cli.out.join("summary.json");
    fs::write(&summary_path, artifacts.summary.to_json())
        .with_context(|| format!("writing {}", summary_path.display()))?;

    if cli.plot {
        for &neuron in &cfg.trace.neurons {
            if let Some(svg) = render_svg(&artifacts.trace, neuron, &cfg.biases) {
                let path = cli.out.join(format!("neuron_{neuron}.svg"));
                fs::write(&path, svg)
                    .with_context(|| format!("writing {}", path.display()))?;
            }
        }
    }

    let spikes: u64 = artifacts.summary.counts.output_spikes;
    println!(
        "simulated {} neuron(s) for {:.6} s model time in {:.3} s wall time ({} output spikes)",
        cfg.n_neurons,
        cfg.duration.0 as f64 * 1e-12,
        artifacts.summary.wall_seconds,
        spikes
    );
    println!("wrote {}", trace_path.display());
    println!("wrote {}", summary_path.display());
    Ok(())
}
