use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use semigroup_lab::report::{self, Analysis, Report, ReportError, RunConfig};

#[derive(Parser)]
#[command(name = "semigroup-lab", version, about = "Batch analyses of semigroups inside groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the analyses of a config and write the JSON report.
    Analyze {
        #[arg(long)]
        config: Option<PathBuf>,
        /// JSON model document or shorthand such as `free_monoid:2`, `numerical:2,3`.
        #[arg(long)]
        model: Option<String>,
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long)]
        radius: Option<usize>,
        #[arg(long)]
        trunc: Option<usize>,
        #[arg(long = "f-chain")]
        f_chain: Option<usize>,
        #[arg(long = "ore-len")]
        ore_len: Option<usize>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated subset of ideals,independence,ore,invsgp,spectrum,boundary,freeness,fock,sc.
        #[arg(long, value_delimiter = ',')]
        analyses: Option<Vec<String>>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit timings so the file is byte-identical across runs.
        #[arg(long)]
        canonical: bool,
    },
    /// Describe one analysis of a saved report.
    Explain {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        topic: String,
    },
}

fn analyze(cmd: Command) -> Result<i32, ReportError> {
    let Command::Analyze {
        config,
        model,
        depth,
        radius,
        trunc,
        f_chain,
        ore_len,
        samples,
        seed,
        analyses,
        out,
        canonical,
    } = cmd
    else {
        unreachable!()
    };
    let mut cfg = match (&config, &model) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, Some(m)) => RunConfig::new(report::parse_model_arg(m)?),
        (None, None) => return Err(ReportError::Config("either --config or --model is required".into())),
    };
    if let (Some(_), Some(m)) = (&config, &model) {
        cfg.model = report::parse_model_arg(m)?;
    }
    let caps = &mut cfg.caps;
    caps.depth = depth.unwrap_or(caps.depth);
    caps.radius = radius.or(caps.radius);
    caps.trunc = trunc.or(caps.trunc);
    caps.f_chain = f_chain.unwrap_or(caps.f_chain);
    caps.ore_len = ore_len.unwrap_or(caps.ore_len);
    caps.samples = samples.unwrap_or(caps.samples);
    cfg.seed = seed.unwrap_or(cfg.seed);
    if let Some(names) = analyses {
        cfg.analyses = names
            .iter()
            .map(|n| Analysis::parse(n.trim()).ok_or_else(|| ReportError::Config(format!("unknown analysis {n:?}"))))
            .collect::<Result<_, _>>()?;
    }
    let out = out.or_else(|| cfg.output.clone());
    let report = report::run_cached(&cfg)?;
    for a in &report.analyses {
        match &a.error {
            Some(e) => println!("{:<13} error: {e}", a.analysis.name()),
            None => println!("{:<13} {} [{:?}]", a.analysis.name(), a.verdict, a.evidence),
        }
    }
    println!("status: {:?}", report.status);
    if let Some(path) = out {
        let text = if canonical { report.canonical_json() } else { report.to_json() };
        std::fs::write(&path, text).map_err(|source| ReportError::Io { path, source })?;
    }
    Ok(report.status.exit_code())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Explain { report: path, topic } => {
            Report::load(&path).and_then(|r| report::explain(&r, &topic)).map(|text| {
                print!("{text}");
                0
            })
        }
        cmd => analyze(cmd),
    };
    match result {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
