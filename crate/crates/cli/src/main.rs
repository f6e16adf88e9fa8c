//! `ltq` command-line tool: build topologies, construct the spanning tree
//! family, verify tree-set files, run the broadcast latency simulation,
//! and convert between formats.
//!
//! Exit codes: 0 success, 1 failed verification, 2 usage error, 3 file or
//! input failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use ltq_core::{
    build_ltq_direct, compute_latency, construct, export, verify, BroadcastConfig, CeistFile,
    CeistSet, LtqTopology, TopologyFile,
};

#[derive(Parser)]
#[command(name = "ltq", version, about = "Locally twisted cube spanning tree toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GraphFormat {
    Json,
    Dot,
    Edgelist,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Build the LTQ_n topology and export its edge set.
    Build {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Render vertex labels as binary strings (DOT only).
        #[arg(long)]
        binary_labels: bool,
    },
    /// Construct the floor(n/2) edge-disjoint spanning trees of LTQ_n.
    Construct {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: GraphFormat,
        /// Output path; for DOT, one file per tree with a -T<i> suffix.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        binary_labels: bool,
    },
    /// Check a tree-set file; exit 0 only if every check passes.
    Verify {
        /// Tree-set file (JSON or edge list).
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        /// Write the JSON report here as well as stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Simulate multi-tree vs single-tree broadcast latency on LTQ_n.
    Simulate {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 1 << 20)]
        message_bytes: u64,
        #[arg(long, default_value_t = 1500)]
        packet_bytes: u64,
        /// Fixed packet count; 0 switches to ceil(message/packet).
        #[arg(long, default_value_t = 700)]
        packets: u64,
        #[arg(long, value_enum, default_value = "csv")]
        format: ReportFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Convert a topology or tree-set file to another format.
    Export {
        #[arg(long, value_name = "FILE")]
        r#in: PathBuf,
        #[arg(long, value_enum)]
        format: GraphFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        binary_labels: bool,
    },
}

fn write_out(out: Option<&Path>, content: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, content)
            .with_context(|| format!("cannot write {}", path.display())),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

/// Path for the i-th tree of a DOT export: `-T<i>` goes before the
/// extension when there is one.
fn tree_path(base: &Path, idx: usize) -> PathBuf {
    match (base.file_stem(), base.extension()) {
        (Some(stem), Some(ext)) => base.with_file_name(format!(
            "{}-T{idx}.{}",
            stem.to_string_lossy(),
            ext.to_string_lossy()
        )),
        _ => PathBuf::from(format!("{}-T{idx}", base.display())),
    }
}

fn emit_topology(
    topo: &LtqTopology,
    format: GraphFormat,
    out: Option<&Path>,
    binary: bool,
) -> Result<()> {
    let content = match format {
        GraphFormat::Json => {
            serde_json::to_string_pretty(&TopologyFile::from_topology(topo))? + "\n"
        }
        GraphFormat::Dot => export::topology_dot(topo, binary),
        GraphFormat::Edgelist => export::topology_edgelist(topo),
    };
    write_out(out, &content)
}

fn emit_ceist(cs: &CeistSet, format: GraphFormat, out: Option<&Path>, binary: bool) -> Result<()> {
    match format {
        GraphFormat::Json => write_out(
            out,
            &(serde_json::to_string_pretty(&CeistFile::from_ceist_set(cs))? + "\n"),
        ),
        GraphFormat::Edgelist => write_out(out, &export::ceist_edgelist(cs)),
        GraphFormat::Dot => {
            for (i, tree) in cs.trees().iter().enumerate() {
                let dot = export::tree_dot(tree, i + 1, binary);
                match out {
                    Some(base) => write_out(Some(&tree_path(base, i + 1)), &dot)?,
                    None => print!("{dot}"),
                }
            }
            Ok(())
        }
    }
}

fn read_ceist_file(path: &Path) -> Result<CeistSet> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    if text.trim_start().starts_with('{') {
        let file: CeistFile = serde_json::from_str(&text)
            .with_context(|| format!("{} is not a tree-set JSON file", path.display()))?;
        Ok(file.into_ceist_set()?)
    } else {
        Ok(export::parse_ceist_edgelist(&text)?)
    }
}

/// A file holding either a full topology or a tree set.
enum GraphFile {
    Topology(LtqTopology),
    Trees(CeistSet),
}

fn read_graph_file(path: &Path) -> Result<GraphFile> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        if let Ok(file) = serde_json::from_str::<CeistFile>(&text) {
            return Ok(GraphFile::Trees(file.into_ceist_set()?));
        }
        let file: TopologyFile = serde_json::from_str(&text)
            .with_context(|| format!("{} is neither a tree-set nor a topology file", path.display()))?;
        Ok(GraphFile::Topology(file.into_topology()?))
    } else if trimmed.starts_with("# ceist") {
        Ok(GraphFile::Trees(export::parse_ceist_edgelist(&text)?))
    } else if trimmed.starts_with("# ltq") {
        Ok(GraphFile::Topology(export::parse_topology_edgelist(&text)?))
    } else {
        bail!("{}: unrecognized file format", path.display());
    }
}

/// Distinguishes a failed verification (exit 1) from input failures
/// (exit 3).
enum RunOutcome {
    Ok,
    VerificationFailed,
}

fn run(cli: Cli) -> Result<RunOutcome> {
    match cli.command {
        Command::Build {
            n,
            format,
            out,
            binary_labels,
        } => {
            let topo = build_ltq_direct(n)?;
            emit_topology(&topo, format, out.as_deref(), binary_labels)?;
            Ok(RunOutcome::Ok)
        }
        Command::Construct {
            n,
            format,
            out,
            binary_labels,
        } => {
            let cs = construct(n)?;
            emit_ceist(&cs, format, out.as_deref(), binary_labels)?;
            Ok(RunOutcome::Ok)
        }
        Command::Verify { r#in, out } => {
            let cs = read_ceist_file(&r#in)?;
            let report = verify(&cs)?;
            let json = serde_json::to_string_pretty(&report)? + "\n";
            if let Some(path) = &out {
                write_out(Some(path), &json)?;
            }
            print!("{json}");
            if report.all_ok {
                Ok(RunOutcome::Ok)
            } else {
                Ok(RunOutcome::VerificationFailed)
            }
        }
        Command::Simulate {
            n,
            message_bytes,
            packet_bytes,
            packets,
            format,
            out,
        } => {
            let cfg = BroadcastConfig {
                message_bytes,
                packet_payload_bytes: packet_bytes,
                packet_count_override: (packets > 0).then_some(packets),
            };
            let cs = construct(n)?;
            let report = compute_latency(cs.trees(), &cfg)?;
            let content = match format {
                ReportFormat::Csv => export::latency_csv(std::slice::from_ref(&report))?,
                ReportFormat::Json => serde_json::to_string_pretty(&report)? + "\n",
            };
            write_out(out.as_deref(), &content)?;
            Ok(RunOutcome::Ok)
        }
        Command::Export {
            r#in,
            format,
            out,
            binary_labels,
        } => {
            match read_graph_file(&r#in)? {
                GraphFile::Topology(topo) => {
                    emit_topology(&topo, format, out.as_deref(), binary_labels)?
                }
                GraphFile::Trees(cs) => emit_ceist(&cs, format, out.as_deref(), binary_labels)?,
            }
            Ok(RunOutcome::Ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(RunOutcome::Ok) => ExitCode::SUCCESS,
        Ok(RunOutcome::VerificationFailed) => ExitCode::from(1),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(3)
        }
    }
}
