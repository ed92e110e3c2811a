use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use mobdb_workbench::bench;
use mobdb_workbench::error::{Result, WorkbenchError};
use mobdb_workbench::eval::eval_expression;
use mobdb_workbench::experiment::BoxTable;
use mobdb_workbench::geojson::write_geojson;
use mobdb_workbench::ingest::{build_trips, read_observations};
use mobdb_workbench::queries::{region_report, run_query, QueryId};
use mobdb_workbench::store::{self, read_instants, read_points, read_regions, read_vehicles, Workspace};
use mobdb_workbench::synth::{generate, SynthConfig};

#[derive(Parser)]
#[command(name = "mobdb", version, about = "Moving-object workbench")]
struct Cli {
    /// Dataset directory.
    #[arg(long, global = true, default_value = "mobdb-data")]
    data: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression such as `duration('{1@2025-01-01}'::tint, true)`.
    Eval { expr: String },
    /// Load trips from a `vehicle_id,trip_id,x,y,t` CSV, plus optional side tables.
    Ingest(IngestArgs),
    /// Generate a synthetic dataset.
    Synth(SynthArgs),
    /// Manage the R-tree indexes.
    Index {
        #[command(subcommand)]
        action: IndexAction,
    },
    /// Run one benchmark query.
    Query {
        #[arg(long, value_parser = parse_query_id)]
        id: QueryId,
        #[arg(long)]
        use_index: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Time every query variant.
    Bench {
        #[arg(long, conflicts_with = "query", required_unless_present = "query")]
        all: bool,
        /// Report only this query's variants.
        #[arg(long, value_parser = parse_query_id)]
        query: Option<QueryId>,
        #[arg(long, default_value_t = 5)]
        repeat: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// `box && <stbox>` over the generated box table.
    Scan {
        #[arg(long)]
        stbox: String,
        #[arg(long)]
        use_index: bool,
    },
    /// Kilometres driven inside each region.
    Regions,
    /// Export query results.
    Export {
        #[command(subcommand)]
        format: ExportFormat,
    },
}

#[derive(Args)]
struct IngestArgs {
    #[arg(long)]
    trips: PathBuf,
    /// Vehicles CSV (`vehicle_id,license,vehicle_type`); Licenses1/2 are sampled from it.
    #[arg(long)]
    vehicles: Option<PathBuf>,
    /// Instants CSV (`instant_id,instant`).
    #[arg(long)]
    instants: Option<PathBuf>,
    /// Points CSV (`point_id,geom` with WKT).
    #[arg(long)]
    points: Option<PathBuf>,
    /// Regions CSV (`name,polygon` with WKT).
    #[arg(long)]
    regions: Option<PathBuf>,
    #[arg(long)]
    srid: Option<i32>,
}

#[derive(Args)]
#[command(group = clap::ArgGroup::new("what").required(true).multiple(true).args(["rows", "vehicles", "trips"]))]
struct SynthArgs {
    /// Rows of the box table for the index experiment.
    #[arg(long)]
    rows: Option<u64>,
    #[arg(long)]
    vehicles: Option<usize>,
    #[arg(long)]
    trips: Option<usize>,
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand)]
enum IndexAction {
    /// Index the trips (and the box table, if any); rebuilt on every load.
    Build {
        #[arg(long, default_value_t = 4)]
        workers: usize,
    },
    Drop,
}

#[derive(Subcommand)]
enum ExportFormat {
    Geojson {
        #[arg(long, value_parser = parse_query_id)]
        query: QueryId,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        use_index: bool,
    },
}

fn parse_query_id(s: &str) -> std::result::Result<QueryId, String> {
    s.parse().map_err(|e: WorkbenchError| e.to_string())
}

fn load_or_default(dir: &Path) -> Result<Workspace> {
    if dir.join("meta.json").exists() {
        store::load(dir)
    } else {
        Ok(Workspace::default())
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    Ok(BufWriter::new(File::create(path)?))
}

fn run(cli: Cli) -> Result<()> {
    let data = cli.data.as_path();
    let mut stdout = io::stdout().lock();
    match cli.command {
        Command::Eval { expr } => {
            writeln!(stdout, "{}", eval_expression(&expr)?)?;
        }
        Command::Ingest(args) => {
            let mut ws = load_or_default(data)?;
            let obs = read_observations(BufReader::new(File::open(&args.trips)?))?;
            ws.db.trips = build_trips(obs, args.srid)?;
            ws.db.check_trip_keys()?;
            ws.meta.srid = args.srid;
            if let Some(p) = &args.vehicles {
                ws.db.vehicles = read_vehicles(p)?;
                ws.db.sample_licenses();
            }
            if let Some(p) = &args.instants {
                ws.db.instants1 = read_instants(p)?;
            }
            if let Some(p) = &args.points {
                ws.db.points1 = read_points(p)?;
            }
            if let Some(p) = &args.regions {
                ws.db.regions = read_regions(p)?;
            }
            store::save(data, &ws)?;
            writeln!(stdout, "ingested {} trips into {}", ws.db.trips.len(), data.display())?;
        }
        Command::Synth(args) => {
            let mut ws = load_or_default(data)?;
            if let Some(rows) = args.rows {
                if rows == 0 {
                    return Err(WorkbenchError::Usage("--rows must be at least 1".into()));
                }
                ws.meta.box_rows = Some(rows);
                writeln!(stdout, "box table: {rows} rows")?;
            }
            if args.vehicles.is_some() || args.trips.is_some() {
                let d = SynthConfig::default();
                let config = SynthConfig {
                    vehicles: args.vehicles.unwrap_or(d.vehicles),
                    trips: args.trips.unwrap_or(d.trips),
                    seed: args.seed,
                };
                if config.vehicles < 2 {
                    return Err(WorkbenchError::Usage("--vehicles must be at least 2".into()));
                }
                ws.db = generate(config);
                ws.meta.srid = None;
                writeln!(
                    stdout,
                    "trips: {} vehicles, {} trips, seed {}",
                    config.vehicles, config.trips, config.seed
                )?;
            }
            store::save(data, &ws)?;
        }
        Command::Index { action } => {
            let mut ws = store::load(data)?;
            match action {
                IndexAction::Build { workers } => {
                    if workers == 0 {
                        return Err(WorkbenchError::Usage("--workers must be at least 1".into()));
                    }
                    let start = Instant::now();
                    ws.db.build_index(workers)?;
                    if let Some(b) = ws.boxes.as_mut() {
                        b.build_index(workers)?;
                    }
                    ws.meta.indexed = true;
                    ws.meta.index_workers = workers;
                    writeln!(
                        stdout,
                        "indexed {} trips{} in {:.3} s",
                        ws.db.trips.len(),
                        ws.boxes.as_ref().map_or(String::new(), |b| format!(" and {} boxes", b.rows.len())),
                        start.elapsed().as_secs_f64()
                    )?;
                }
                IndexAction::Drop => ws.meta.indexed = false,
            }
            store::save(data, &ws)?;
        }
        Command::Query { id, use_index, out } => {
            let ws = store::load(data)?;
            let result = run_query(&ws.db, id, use_index)?;
            let (headers, rows) = result.table();
            let sink: Box<dyn Write> = match &out {
                Some(p) => Box::new(create(p)?),
                None => Box::new(io::stdout()),
            };
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(&headers)?;
            for r in rows {
                w.write_record(&r)?;
            }
            w.flush()?;
        }
        Command::Bench { all: _, query, repeat, out } => {
            if repeat == 0 {
                return Err(WorkbenchError::Usage("--repeat must be at least 1".into()));
            }
            let ws = store::load(data)?;
            let reports = bench::run_all(&ws.db, ws.boxes.as_ref(), repeat, query)?;
            match &out {
                Some(p) => bench::write_csv(create(p)?, &reports)?,
                None => bench::write_csv(&mut stdout, &reports)?,
            }
            write!(io::stderr(), "{}", bench::human_table(&reports))?;
        }
        Command::Scan { stbox, use_index } => {
            let ws = store::load(data)?;
            let boxes: &BoxTable = ws
                .boxes
                .as_ref()
                .ok_or(WorkbenchError::MissingTable("box table (run `synth --rows N`)"))?;
            let start = Instant::now();
            let ids = boxes.scan_literal(&stbox, use_index)?;
            let elapsed = start.elapsed();
            writeln!(stdout, "{} rows in {:.6} s", ids.len(), elapsed.as_secs_f64())?;
            for id in ids {
                writeln!(stdout, "{id}")?;
            }
        }
        Command::Regions => {
            let ws = store::load(data)?;
            writeln!(stdout, "region,km")?;
            for (name, km) in region_report(&ws.db)? {
                writeln!(stdout, "{name},{km:.3}")?;
            }
        }
        Command::Export {
            format: ExportFormat::Geojson { query, out, use_index },
        } => {
            let ws = store::load(data)?;
            let result = run_query(&ws.db, query, use_index)?;
            let mut w = create(&out)?;
            write_geojson(&mut w, &result)?;
            w.flush()?;
            writeln!(stdout, "{} features written to {}", result.len(), out.display())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
