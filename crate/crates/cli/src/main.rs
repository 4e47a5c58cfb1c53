//! `mspace`: generate finite measurable spaces, enumerate their ideals,
//! filters and congruences, run the theorem-verification suites, export
//! lattice diagrams, and check isomorphisms between spaces.
//!
//! Exit codes: 0 success, 1 theorem counterexample or failed check,
//! 2 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mspace_core::dot::{filter_lattice_dot, ideal_lattice_dot, structure_space_dot};
use mspace_core::filtcong::{Congruence, ZFilter};
use mspace_core::func::ValueGrid;
use mspace_core::ideal::{IdealCore, Side};
use mspace_core::io::{
    congruence_literal_json, filter_literal_json, ideal_literal_json, quotient_report_json,
    structure_export_json, IsoMapFile, SpaceFile, SpaceReport,
};
use mspace_core::space::SpaceRef;
use mspace_core::structure::{
    recover_homeomorphism, transfer_isomorphism, IsoDescriptor, PointBijection,
};
use mspace_core::verify::{run_suite, Mutation, VerifyConfig};

#[derive(Parser)]
#[command(name = "mspace", version, about = "Algebra of measurable functions on finite spaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SpaceArgs {
    /// Space file: {"points": [...], "generators": [[...]]}
    space_file: PathBuf,
    /// Refuse ground sets with more points than this.
    #[arg(long, default_value_t = 5, global = false)]
    max_points: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Generate the σ-algebra from a space file and print it canonically.
    Gen {
        #[command(flatten)]
        space: SpaceArgs,
        /// Also write the closed family back out as a canonical space file.
        #[arg(long)]
        emit_canonical: Option<PathBuf>,
    },
    /// Stream canonical-order JSON records for a structure family.
    Enumerate {
        #[command(flatten)]
        space: SpaceArgs,
        /// What to enumerate.
        #[arg(long, value_enum)]
        what: What,
        /// Ideal side (ideals only).
        #[arg(long, value_enum, default_value_t = SideArg::Semiring)]
        side: SideArg,
    },
    /// Run a theorem-verification suite; exit 1 on any counterexample.
    Verify {
        #[command(flatten)]
        space: SpaceArgs,
        /// Suite to run.
        #[arg(long, default_value = "all")]
        suite: String,
        /// Comma-separated non-negative rationals; must contain 0 and 1.
        #[arg(long, env = "MSPACE_GRID")]
        grid: Option<String>,
        /// Cap for sampled quadruple sweeps.
        #[arg(long, default_value_t = 48)]
        pair_cap: usize,
        /// Deliberately miswire one computation (harness self-test).
        #[arg(long, value_enum)]
        mutate: Option<MutateArg>,
    },
    /// Export a lattice diagram or the structure-space report.
    Export {
        #[command(flatten)]
        space: SpaceArgs,
        #[arg(long, value_enum)]
        target: ExportTarget,
        /// Output file (stdout when omitted).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check whether a map file realizes an isomorphism between two spaces.
    Isocheck {
        space_a: PathBuf,
        space_b: PathBuf,
        /// Map file: {"pointMap": {..}} or {"atomMap": [..]}
        map_file: PathBuf,
        #[arg(long, default_value_t = 5)]
        max_points: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    Ideals,
    Filters,
    Zcongruences,
    Maxcong,
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum SideArg {
    Semiring,
    Ring,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateArg {
    SwapJoinMeet,
}

#[derive(Clone, Copy, ValueEnum)]
enum ExportTarget {
    IdealLatticeDot,
    FilterLatticeDot,
    StructureDot,
    StructureJson,
}

/// Input-side failure: exit code 2.
struct InputError(String);

fn load_space(path: &PathBuf, max_points: usize) -> Result<SpaceRef, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("cannot read {}: {e}", path.display())))?;
    let file = SpaceFile::parse(&text).map_err(|e| InputError(e.to_string()))?;
    if file.points.len() > max_points {
        return Err(InputError(format!(
            "{} points exceeds --max-points {} (exhaustive sweeps are exponential)",
            file.points.len(),
            max_points
        )));
    }
    let space = file.build().map_err(|e| InputError(e.to_string()))?;
    Ok(Arc::new(space))
}

fn grid_from(arg: &Option<String>) -> Result<ValueGrid, InputError> {
    match arg {
        None => Ok(ValueGrid::default()),
        Some(text) => ValueGrid::parse(text).map_err(|e| InputError(e.to_string())),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, InputError> {
    match cli.command {
        Command::Gen { space: args, emit_canonical } => {
            let space = load_space(&args.space_file, args.max_points)?;
            println!("{}", SpaceReport::from_space(&space).to_json());
            if let Some(path) = emit_canonical {
                let mut json = SpaceFile::from_space(&space).to_json();
                json.push('\n');
                fs::write(&path, json).map_err(|e| {
                    InputError(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Enumerate { space, what, side } => {
            let space = load_space(&space.space_file, space.max_points)?;
            enumerate(&space, what, side);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { space, suite, grid, pair_cap, mutate } => {
            let space = load_space(&space.space_file, space.max_points)?;
            let config = VerifyConfig {
                grid: grid_from(&grid)?,
                pair_cap,
                mutate: mutate.map(|MutateArg::SwapJoinMeet| Mutation::SwapJoinMeet),
            };
            verify(&space, &suite, &config)
        }
        Command::Export { space, target, out } => {
            let space = load_space(&space.space_file, space.max_points)?;
            let content = match target {
                ExportTarget::IdealLatticeDot => ideal_lattice_dot(&space),
                ExportTarget::FilterLatticeDot => filter_lattice_dot(&space),
                ExportTarget::StructureDot => structure_space_dot(&space),
                ExportTarget::StructureJson => {
                    let mut json =
                        structure_export_json(&space).map_err(|e| InputError(e.to_string()))?;
                    json.push('\n');
                    json
                }
            };
            match out {
                Some(path) => fs::write(&path, content).map_err(|e| {
                    InputError(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{content}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Isocheck { space_a, space_b, map_file, max_points } => {
            let a = load_space(&space_a, max_points)?;
            let b = load_space(&space_b, max_points)?;
            let text = fs::read_to_string(&map_file)
                .map_err(|e| InputError(format!("cannot read {}: {e}", map_file.display())))?;
            let map = IsoMapFile::parse(&text).map_err(|e| InputError(e.to_string()))?;
            isocheck(&a, &b, &map)
        }
    }
}

fn enumerate(space: &SpaceRef, what: What, side: SideArg) {
    match what {
        What::Ideals => {
            let side = match side {
                SideArg::Semiring => Side::Semiring,
                SideArg::Ring => Side::Ring,
            };
            for ideal in IdealCore::enumerate(space, side) {
                println!("{}", ideal_literal_json(&ideal));
            }
        }
        What::Filters => {
            for filter in ZFilter::enumerate(space) {
                println!("{}", filter_literal_json(&filter));
            }
        }
        What::Zcongruences => {
            for rho in Congruence::enumerate_z(space) {
                println!("{}", congruence_literal_json(&rho));
            }
        }
        What::Maxcong => {
            for rho in Congruence::enumerate_maximal(space) {
                println!("{}", congruence_literal_json(&rho));
            }
        }
    }
}

fn verify(space: &SpaceRef, suite: &str, config: &VerifyConfig) -> Result<ExitCode, InputError> {
    let results = run_suite(space, suite, config).map_err(|e| InputError(e.to_string()))?;
    // the quotient suite streams its per-congruence reports
    if suite == "quotient" || suite == "all" {
        for rho in Congruence::enumerate_z(space) {
            let line = quotient_report_json(&rho, &config.grid)
                .map_err(|e| InputError(e.to_string()))?;
            println!("{line}");
        }
    }
    let mut failed = false;
    for result in &results {
        for failure in &result.failures {
            println!(
                "counterexample [{}] {}: {}",
                result.suite, failure.check, failure.counterexample
            );
        }
        println!(
            "suite {}: {} checks, {} failures: {}",
            result.suite,
            result.checks_run,
            result.failures.len(),
            if result.passed() { "PASS" } else { "FAIL" }
        );
        eprintln!("suite {} took {:?}", result.suite, result.elapsed);
        failed |= !result.passed();
    }
    Ok(if failed { ExitCode::from(1) } else { ExitCode::SUCCESS })
}

fn isocheck(a: &SpaceRef, b: &SpaceRef, map: &IsoMapFile) -> Result<ExitCode, InputError> {
    let grid = ValueGrid::default();
    let result: Result<(IsoDescriptor, PointBijection), mspace_core::Error> = (|| {
        match (&map.point_map, &map.atom_map) {
            (Some(points), _) => {
                let pairs: Vec<(String, String)> =
                    points.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
                let h = PointBijection::from_labels(a, b, &pairs)?;
                let descriptor = transfer_isomorphism(&h, &grid, 24)?;
                let recovered = recover_homeomorphism(&descriptor)?;
                Ok((descriptor, recovered))
            }
            (None, Some(atoms)) => {
                let descriptor = IsoDescriptor::new(a, b, atoms.clone())?;
                if !descriptor.certify(&grid, 24).unwrap_or(false) {
                    return Err(mspace_core::Error::NotRepresentable(
                        "descriptor failed the isomorphism certificate".into(),
                    ));
                }
                let h = recover_homeomorphism(&descriptor)?;
                let back = transfer_isomorphism(&h, &grid, 24)?;
                if back.atom_map() != descriptor.atom_map() {
                    return Err(mspace_core::Error::NotRepresentable(
                        "round trip changed the descriptor".into(),
                    ));
                }
                Ok((descriptor, h))
            }
            (None, None) => Err(mspace_core::Error::Parse(
                "map file needs pointMap or atomMap".into(),
            )),
        }
    })();

    match result {
        Ok((descriptor, bijection)) => {
            let point_map: serde_json::Map<String, serde_json::Value> = bijection
                .dom()
                .ground()
                .labels()
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    (
                        l.clone(),
                        serde_json::Value::String(
                            bijection.cod().ground().labels()[bijection.map()[i]].clone(),
                        ),
                    )
                })
                .collect();
            let report = serde_json::json!({
                "certificate": {
                    "atomMap": descriptor.atom_map(),
                    "pointMap": point_map,
                },
                "pass": true,
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(ExitCode::SUCCESS)
        }
        Err(mspace_core::Error::Parse(msg)) => Err(InputError(msg)),
        Err(e) => {
            let report = serde_json::json!({
                "failure": e.to_string(),
                "pass": false,
            });
            println!("{}", serde_json::to_string_pretty(&report).unwrap());
            Ok(ExitCode::from(1))
        }
    }
}
