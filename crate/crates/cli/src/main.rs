use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use semirigid::constructions::{self, DEFAULT_SIZE_CAP};
use semirigid::lattice::{self, CensusMode};
use semirigid::nets::{self, LatinSquare, PartialLatinSquare};
use semirigid::planar::{self, PlanarSet, Point};
use semirigid::search::{self, DEFAULT_ENDO_CAP};
use semirigid::{io, System};

#[derive(Parser)]
#[command(name = "semirigid", version, about = "Semirigid systems of equivalence relations")]
struct Cli {
    /// Output format for point sets and latin squares.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a system from one of the known families.
    Construct {
        #[command(subcommand)]
        family: Family,
    },
    /// Test a property; exit 0 if it holds, 1 if it fails.
    Check {
        property: Property,
        #[command(flatten)]
        input: Input,
    },
    /// List or count the endomorphisms of a system.
    Endos {
        action: EndoAction,
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = DEFAULT_ENDO_CAP)]
        cap: usize,
    },
    /// Operations on finite point sets of the integer plane.
    Planar {
        #[command(subcommand)]
        action: PlanarAction,
    },
    /// Latin squares and 3-nets.
    Net {
        #[command(subcommand)]
        action: NetAction,
    },
    /// Count semirigid triples of equivalence relations on n points.
    Census {
        n: usize,
        /// Count isomorphism classes instead of ordered triples.
        #[arg(long)]
        up_to_iso: bool,
        /// With --up-to-iso, also identify triples differing by relation order.
        #[arg(long, requires = "up_to_iso")]
        permute_relations: bool,
        /// Include the triples found.
        #[arg(long)]
        list: bool,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Decide whether two systems are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        permute_relations: bool,
    },
}

#[derive(Args)]
struct Input {
    /// Input file, or `-` for stdin.
    #[arg(short, long)]
    input: PathBuf,
}

#[derive(Subcommand)]
enum Family {
    /// Zádori's system on n points (n ≥ 3, n ≠ 4).
    Zadori { n: usize },
    /// Triangle of lattice points with x, y ≥ 0 and x + y ≤ n.
    Tn {
        n: i64,
        #[arg(long)]
        points: bool,
    },
    /// Two-row band of size 2n + 1.
    Tn2 {
        n: i64,
        #[arg(long)]
        points: bool,
    },
    /// Two-row band of size 2n + 2.
    Tn2p {
        n: i64,
        #[arg(long)]
        points: bool,
    },
    /// Compositions of n into i parts, related by agreement in each coordinate.
    Simplex {
        i: usize,
        n: usize,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// Pierce's system with k relations.
    Pierce { k: usize },
    /// Coordinate kernels of the power w^i.
    Product {
        w: usize,
        i: usize,
        #[arg(long, default_value_t = DEFAULT_SIZE_CAP)]
        cap: usize,
    },
    /// The 8-point set U, semirigid but not monogenic.
    U {
        #[arg(long)]
        points: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Semirigid,
    Reduced,
    M3,
    Orthogonal,
    #[value(name = "3net")]
    ThreeNet,
    Monogenic,
    Center,
    Certificate,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EndoAction {
    List,
    Count,
}

#[derive(Subcommand)]
enum PlanarAction {
    /// Induced three-direction system of a point set.
    Induce {
        #[command(flatten)]
        input: Input,
    },
    /// Triangle-completion closure of the given points inside the set.
    Closure {
        #[command(flatten)]
        input: Input,
        /// Generator `x,y`; repeat for several.
        #[arg(short, long = "generator", value_parser = parse_point, required = true)]
        generators: Vec<Point>,
    },
    /// Translate and scale the set to its canonical position.
    Normalize {
        #[command(flatten)]
        input: Input,
    },
    /// Search for a realization of a system in a G×G grid.
    Embed {
        #[command(flatten)]
        input: Input,
        /// Grid side; defaults to the number of elements.
        #[arg(long)]
        grid: Option<usize>,
        /// Map relation i to direction i instead of trying all orders.
        #[arg(long)]
        fixed_order: bool,
    },
}

#[derive(Subcommand)]
enum NetAction {
    /// Partial latin square of a pairwise orthogonal triple.
    ToLatin {
        #[command(flatten)]
        input: Input,
    },
    /// Complete a partial latin square of order e inside one of order 2e.
    Extend {
        #[command(flatten)]
        input: Input,
    },
    /// Embed a pairwise orthogonal triple into a 3-net.
    Embed {
        #[command(flatten)]
        input: Input,
    },
}

fn parse_point(s: &str) -> std::result::Result<Point, String> {
    let (x, y) = s.split_once(',').ok_or_else(|| format!("expected x,y, got {s:?}"))?;
    let coord = |t: &str| t.trim().parse::<i64>().map_err(|e| format!("{t:?}: {e}"));
    Ok(Point::new(coord(x)?, coord(y)?))
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
    }
}

fn load_system(path: &Path) -> Result<System> {
    io::parse_system(&read_input(path)?).with_context(|| format!("{}", path.display()))
}

fn load_points(path: &Path) -> Result<PlanarSet> {
    io::parse_points(&read_input(path)?).with_context(|| format!("{}", path.display()))
}

fn load_latin(path: &Path) -> Result<PartialLatinSquare> {
    io::parse_latin(&read_input(path)?).with_context(|| format!("{}", path.display()))
}

/// What a command prints and how it exits.
enum Outcome {
    Emit(String),
    Verdict(bool, Value),
}

fn json_line(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn system_json(m: &System) -> Value {
    serde_json::from_str(&io::system_to_json(m)).expect("round trip")
}

fn points_out(c: &PlanarSet, format: Format) -> String {
    match format {
        Format::Json => io::points_to_json(c),
        Format::Text => io::points_to_text(c).trim_end().to_string(),
    }
}

fn latin_out(p: &PartialLatinSquare, format: Format) -> String {
    match format {
        Format::Text => io::format_latin(p).trim_end().to_string(),
        Format::Json => json_line(&json!({ "order": p.order(), "rows": p.rows() })),
    }
}

fn planar_family(c: Result<PlanarSet, semirigid::Error>, points: bool, format: Format) -> Result<Outcome> {
    let c = c?;
    Ok(Outcome::Emit(if points {
        points_out(&c, format)
    } else {
        io::system_to_json(&planar::induced_system(&c)?)
    }))
}

fn construct(family: Family, format: Format) -> Result<Outcome> {
    let m = match family {
        Family::Zadori { n } => constructions::zadori(n)?,
        Family::Tn { n, points } => return planar_family(constructions::tn(n), points, format),
        Family::Tn2 { n, points } => return planar_family(constructions::tn2(n), points, format),
        Family::Tn2p { n, points } => return planar_family(constructions::tn2p(n), points, format),
        Family::U { points } => return planar_family(Ok(constructions::u_example()), points, format),
        Family::Simplex { i, n, cap } => constructions::simplex_system_capped(i, n, cap)?,
        Family::Pierce { k } => constructions::pierce_system(k)?,
        Family::Product { w, i, cap } => constructions::product_system_capped(w, i, cap)?,
    };
    Ok(Outcome::Emit(io::system_to_json(&m)))
}

fn check(property: Property, path: &Path) -> Result<Outcome> {
    Ok(match property {
        Property::Semirigid => {
            let report = search::is_semirigid(&load_system(path)?);
            Outcome::Verdict(report.semirigid, serde_json::to_value(&report)?)
        }
        Property::Reduced => {
            let pair = semirigid::system::unseparated_pair(&load_system(path)?);
            Outcome::Verdict(pair.is_none(), json!({ "reduced": pair.is_none(), "unseparated": pair }))
        }
        Property::M3 => {
            let holds = lattice::is_m3(&load_system(path)?)?;
            Outcome::Verdict(holds, json!({ "m3": holds }))
        }
        Property::Orthogonal => {
            let holds = nets::pairwise_orthogonal(&load_system(path)?);
            Outcome::Verdict(holds, json!({ "orthogonal": holds }))
        }
        Property::ThreeNet => {
            let holds = nets::is_3net(&load_system(path)?)?;
            Outcome::Verdict(holds, json!({ "3net": holds }))
        }
        Property::Monogenic => {
            let gens = planar::is_monogenic(&load_points(path)?);
            Outcome::Verdict(gens.is_some(), json!({ "monogenic": gens.is_some(), "generators": gens }))
        }
        Property::Center => {
            let center = planar::symmetry_center(&load_points(path)?)?;
            Outcome::Verdict(
                center.is_some(),
                json!({ "center": center.is_some(), "doubled_center": center }),
            )
        }
        Property::Certificate => {
            let cert = planar::maintheo_certificate(&load_points(path)?)?;
            Outcome::Verdict(cert.is_certified(), serde_json::to_value(&cert)?)
        }
    })
}

fn endos(action: EndoAction, path: &Path, cap: usize) -> Result<Outcome> {
    let found = search::endomorphisms(&load_system(path)?, Some(cap));
    let mut out = json!({ "count": found.count(), "capped": found.capped });
    if action == EndoAction::List {
        out["maps"] = serde_json::to_value(&found.maps)?;
    }
    Ok(Outcome::Emit(json_line(&out)))
}

fn planar_cmd(action: PlanarAction, format: Format) -> Result<Outcome> {
    Ok(match action {
        PlanarAction::Induce { input } => {
            Outcome::Emit(io::system_to_json(&planar::induced_system(&load_points(&input.input)?)?))
        }
        PlanarAction::Closure { input, generators } => {
            let c = load_points(&input.input)?;
            Outcome::Emit(points_out(&PlanarSet::new(planar::closure(&c, &generators)?), format))
        }
        PlanarAction::Normalize { input } => {
            Outcome::Emit(points_out(&planar::normalize(&load_points(&input.input)?), format))
        }
        PlanarAction::Embed { input, grid, fixed_order } => {
            let m = load_system(&input.input)?;
            match planar::embed_search(&m, grid.unwrap_or(m.n()), fixed_order)? {
                Some(e) => Outcome::Verdict(true, json!({ "embedded": true, "points": e.points, "directions": e.directions })),
                None => Outcome::Verdict(false, json!({ "embedded": false })),
            }
        }
    })
}

fn net_cmd(action: NetAction, format: Format) -> Result<Outcome> {
    Ok(match action {
        NetAction::ToLatin { input } => {
            let (p, _) = nets::to_partial_latin(&load_system(&input.input)?)?;
            Outcome::Emit(latin_out(&p, format))
        }
        NetAction::Extend { input } => {
            let full: LatinSquare = nets::evans_extend(&load_latin(&input.input)?)?;
            Outcome::Emit(latin_out(&full.to_partial(), format))
        }
        NetAction::Embed { input } => {
            let e = nets::embed_into_3net(&load_system(&input.input)?)?;
            Outcome::Emit(json_line(&json!({
                "order": e.order,
                "net": system_json(&e.net),
                "embedding": e.embedding,
            })))
        }
    })
}

fn census_cmd(n: usize, up_to_iso: bool, permute_relations: bool, list: bool, jobs: usize) -> Result<Outcome> {
    if jobs == 0 {
        bail!("--jobs must be at least 1");
    }
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build()?;
    let mode = if up_to_iso {
        CensusMode::UpToIso { permute_relations }
    } else {
        CensusMode::Ordered
    };
    let found = pool.install(|| lattice::census(n, mode))?;
    let mut out = json!({ "n": n, "semirigid_triples": found.count });
    if list {
        out["triples"] = serde_json::to_value(&found.representatives)?;
    }
    Ok(Outcome::Emit(json_line(&out)))
}

fn iso(a: &Path, b: &Path, permute_relations: bool) -> Result<Outcome> {
    let found = lattice::are_isomorphic(&load_system(a)?, &load_system(b)?, permute_relations)?;
    Ok(match found {
        Some(iso) => Outcome::Verdict(
            true,
            json!({ "isomorphic": true, "map": iso.map, "relation_perm": iso.relation_perm }),
        ),
        None => Outcome::Verdict(false, json!({ "isomorphic": false })),
    })
}

fn run(cli: Cli) -> Result<Outcome> {
    let format = cli.format;
    match cli.command {
        Command::Construct { family } => construct(family, format),
        Command::Check { property, input } => check(property, &input.input),
        Command::Endos { action, input, cap } => endos(action, &input.input, cap),
        Command::Planar { action } => planar_cmd(action, format),
        Command::Net { action } => net_cmd(action, format),
        Command::Census {
            n,
            up_to_iso,
            permute_relations,
            list,
            jobs,
        } => census_cmd(n, up_to_iso, permute_relations, list, jobs),
        Command::Iso {
            a,
            b,
            permute_relations,
        } => iso(&a, &b, permute_relations),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Outcome::Emit(text)) => {
            println!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Outcome::Verdict(holds, v)) => {
            println!("{}", json_line(&v));
            if holds {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
