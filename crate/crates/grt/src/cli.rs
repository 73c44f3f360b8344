//! Argument parsing and subcommand dispatch.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use grt_core::catalog::{catalog, polytope_coordinates, Family};
use grt_core::constructions::{
    c4_rectangle, c4_rhombus, c6_sign_torus, hexagonal_prism_antipodal, polytope_skeleton,
    truncated_tetrahedron_mix,
};
use grt_core::dtrans::{base_and_neighbors, cosine_obstruction, cosine_profile, cosine_sequence_recurrence, intersection_array};
use grt_core::linalg::subspace_relation;
use grt_core::metrics::{circumradius_at_unit_edge, dihedral_angle_from_dual, metric_report, relative_length, theta_from_metrics};
use grt_core::realization::{
    irreducibility_test, is_balanced, is_spectral, scale_orbits, spectral_realization, sphericity, symmetry_residuals,
    DEFAULT_SAMPLES,
};
use grt_core::rigidity::{multiplicity_criteria, rigidity_report};
use grt_core::symmetry::{candidate_decomposition, orbitals};
use grt_core::{
    automorphism_group, cartesian_product, eigendecompose, transitivity_class, Graph, Irreducibility, PermGroup,
    Realization, Sphericity, SubspaceRelation,
};
use serde::Serialize;

use crate::error::{GrtError, Result};
use crate::formats::{self, GraphFormat};
use crate::output::{self, to_json, BlockMatch, RealizationJson};

/// Graphs swept by `check --sweep`.
pub const SWEEP: &[(&str, &[usize])] = &[
    ("cycle", &[5]),
    ("cycle", &[6]),
    ("complete", &[5]),
    ("complete_bipartite", &[3, 3]),
    ("complete_bipartite", &[4, 4]),
    ("complete_bipartite", &[2, 4]),
    ("complete_multipartite", &[2, 2, 2]),
    ("prism", &[6]),
    ("petersen", &[]),
    ("dodecahedron", &[]),
    ("icosahedron", &[]),
    ("truncated_tetrahedron", &[]),
    ("cuboctahedron", &[]),
    ("rhombic_dodecahedron", &[]),
    ("cell24", &[]),
];

#[derive(Parser, Debug)]
#[command(name = "grt", version, about = "Spectral, balanced and symmetric graph realizations")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct GraphArgs {
    /// Catalog graph as `NAME` or `NAME:P1,P2,..` (see `grt catalog list`).
    #[arg(long, value_name = "NAME[:P1,..]", conflicts_with = "input")]
    pub catalog: Option<String>,
    /// Take the Cartesian product with a second catalog graph.
    #[arg(long, value_name = "NAME[:P1,..]", requires = "catalog")]
    pub product: Option<String>,
    /// Graph file (graph6, edge list or JSON).
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
    /// Input file format; guessed from the extension when absent.
    #[arg(long, value_enum, requires = "input")]
    pub input_format: Option<GraphFormat>,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Residual tolerance for balance and symmetry checks.
    #[arg(long, default_value_t = 1e-8, value_parser = positive)]
    pub tol: f64,
    /// Eigenvalue grouping tolerance.
    #[arg(long, default_value_t = 1e-5, value_parser = positive)]
    pub group_tol: f64,
    /// Tolerance for subspace comparisons.
    #[arg(long, default_value_t = 1e-7, value_parser = positive)]
    pub subspace_tol: f64,
    /// Seed for randomized steps; GRT_SEED overrides it.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the artifact here instead of stdout.
    #[arg(long, short, value_name = "PATH")]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<OutputFormat>,
}

#[derive(Args, Debug, Clone, Default)]
pub struct RealizationArgs {
    /// Spectral realization of the K-th distinct eigenvalue (1 = largest).
    #[arg(long, value_name = "K")]
    pub index: Option<usize>,
    /// Standard coordinates of a polytope catalog graph.
    #[arg(long)]
    pub coordinates: bool,
    /// A built-in explicit realization (carries its own graph).
    #[arg(long, value_enum)]
    pub construction: Option<Construction>,
    /// Realization JSON file (carries its own graph).
    #[arg(long, value_name = "PATH")]
    pub realization: Option<PathBuf>,
    /// Multiply the k-th vertex orbit of Aut(G) by the k-th factor.
    #[arg(long, value_delimiter = ',', value_name = "A1,A2,..", allow_negative_numbers = true)]
    pub scale_orbits: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Text,
    Obj,
    Svg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Construction {
    /// Hexagonal prism, bottom hexagon antipodal to the top one (0-balanced, d = 2).
    HexagonalPrismAntipodal,
    /// C6 x C6 with vertex 6a+b at ((-1)^a, (-1)^b).
    C6SignTorus,
    /// C4 as a unit square.
    C4Square,
    /// C4 as a 2 x 1 rectangle.
    C4Rectangle,
    /// C4 as a rhombus with diagonals 4 and 2.
    C4Rhombus,
    /// Truncated tetrahedron mixing the θ = 2 and θ = 0 eigenspaces.
    TruncatedTetrahedronMix,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigenvalues with multiplicities (json, csv, text).
    Spectrum {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Emit a realization (json, csv, obj, svg).
    Realize {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        real: RealizationArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Balanced, spectral, symmetric and sphericity checks.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        real: RealizationArgs,
        #[command(flatten)]
        common: Common,
        /// Check the spectral realization of every eigenvalue.
        #[arg(long, conflicts_with_all = ["index", "coordinates", "construction", "realization", "scale_orbits"])]
        all: bool,
        /// Check every eigenvalue of every graph in the built-in sweep list.
        #[arg(long, conflicts_with_all = ["all", "catalog", "input"])]
        sweep: bool,
    },
    /// Automorphism group generators and order.
    Aut {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Vertex, edge, arc and distance transitivity of Aut(G).
    Transitivity {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Orbitals of Aut(G), optionally the seeded orbital-matrix eigenspaces.
    Orbitals {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: Common,
        /// Compare the orbital-matrix eigenspaces with the adjacency eigenspaces.
        #[arg(long)]
        decompose: bool,
    },
    /// Cosine vector and sequence at a base vertex.
    Cosine {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        real: RealizationArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 0)]
        base: usize,
        /// Test whether a second cosine vector can agree on the base and its neighbors.
        #[arg(long)]
        obstruction: bool,
    },
    /// Intersection array of a distance-regular graph (json, text).
    IntersectionArray {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: Common,
    },
    /// Metric report of a realization, or the closed-form conversions.
    Metrics {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        real: RealizationArgs,
        #[command(flatten)]
        common: Common,
        /// Evaluate the closed forms at this eigenvalue instead of a realization.
        #[arg(long, allow_negative_numbers = true)]
        theta: Option<f64>,
        /// Degree for the closed forms (defaults to the graph degree).
        #[arg(long)]
        deg: Option<f64>,
        /// Edge length over radius; with --deg yields θ.
        #[arg(long, conflicts_with = "theta")]
        relative_length: Option<f64>,
    },
    /// Rigidity verdict of an Aut(G)-realization.
    Rigidity {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        real: RealizationArgs,
        #[command(flatten)]
        common: Common,
        /// Only evaluate the multiplicity criteria for realizations of this dimension.
        #[arg(long, value_name = "D")]
        multiplicity_d: Option<usize>,
    },
    /// Catalog of named graphs.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Write the graph in a file format.
    Export {
        #[command(flatten)]
        graph: GraphArgs,
        /// Target file format.
        #[arg(long, value_enum, default_value = "edgelist")]
        to: GraphFormat,
        #[arg(long, short, value_name = "PATH")]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogAction {
    /// List names and parameter signatures.
    List {
        #[arg(long, value_enum)]
        format: Option<OutputFormat>,
    },
}

fn positive(s: &str) -> std::result::Result<f64, String> {
    match s.parse::<f64>() {
        Ok(x) if x > 0.0 && x.is_finite() => Ok(x),
        Ok(_) => Err("must be a positive number".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { stdout.write_all(text.as_bytes()) } else { stderr.write_all(text.as_bytes()) };
            return code;
        }
    };
    let mut notes = Vec::new();
    match execute(cli.command, &mut notes) {
        Ok(artifact) => {
            for note in &notes {
                let _ = writeln!(stderr, "{note}");
            }
            match artifact.deliver(stdout) {
                Ok(()) => 0,
                Err(e) => {
                    let _ = writeln!(stderr, "error: {e}");
                    e.exit_code()
                }
            }
        }
        Err(e) => {
            for note in &notes {
                let _ = writeln!(stderr, "{note}");
            }
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

struct Artifact {
    text: String,
    out: Option<PathBuf>,
}

impl Artifact {
    fn deliver(self, stdout: &mut dyn Write) -> Result<()> {
        match self.out {
            Some(path) => std::fs::write(&path, self.text)
                .map_err(|source| GrtError::Io { context: format!("writing {}", path.display()), source }),
            None => stdout
                .write_all(self.text.as_bytes())
                .map_err(|source| GrtError::Io { context: "writing stdout".into(), source }),
        }
    }
}

fn seed(common: &Common) -> Result<u64> {
    match std::env::var("GRT_SEED") {
        Ok(v) => v.trim().parse().map_err(|_| GrtError::Parse(format!("GRT_SEED={v:?} is not an unsigned integer"))),
        Err(_) => Ok(common.seed),
    }
}

fn format_of(common: &Common, allowed: &[OutputFormat], command: &str) -> Result<OutputFormat> {
    let f = common.format.unwrap_or(allowed[0]);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        let names: Vec<_> = allowed.iter().map(|a| a.to_possible_value().unwrap().get_name().to_string()).collect();
        Err(GrtError::Unsupported(format!("`{command}` supports --format {}", names.join(", "))))
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| GrtError::Io { context: format!("reading {}", path.display()), source })
}

/// Splits `NAME[:P1,P2,..]`; dashes in the name are read as underscores.
fn catalog_spec(spec: &str) -> Result<(Family, Vec<usize>)> {
    let (name, params) = spec.split_once(':').unwrap_or((spec, ""));
    let family: Family = name.trim().replace('-', "_").parse()?;
    let params = params
        .split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<usize>().map_err(|_| GrtError::Parse(format!("catalog parameter {p:?} is not a count"))))
        .collect::<Result<Vec<_>>>()?;
    Ok((family, params))
}

fn load_graph(args: &GraphArgs, notes: &mut Vec<String>) -> Result<Graph> {
    if let Some(spec) = &args.catalog {
        let (family, params) = catalog_spec(spec)?;
        let g = catalog(family, &params)?;
        return match &args.product {
            Some(other) => {
                let (f2, p2) = catalog_spec(other)?;
                Ok(cartesian_product(&g, &catalog(f2, &p2)?))
            }
            None => Ok(g),
        };
    }
    if let Some(path) = &args.input {
        let fmt = args.input_format.unwrap_or_else(|| GraphFormat::from_path(path));
        let parsed = formats::parse(&read(path)?, fmt)?;
        notes.extend(parsed.warnings.into_iter().map(|w| format!("warning: {w}")));
        return Ok(parsed.graph);
    }
    Err(GrtError::Unsupported("no graph given: use --catalog NAME or --input PATH".into()))
}

fn has_graph(args: &GraphArgs) -> bool {
    args.catalog.is_some() || args.input.is_some()
}

fn build_construction(c: Construction) -> Result<Realization> {
    Ok(match c {
        Construction::HexagonalPrismAntipodal => hexagonal_prism_antipodal(),
        Construction::C6SignTorus => c6_sign_torus(),
        Construction::C4Square => c4_rectangle(1.0, 1.0),
        Construction::C4Rectangle => c4_rectangle(2.0, 1.0),
        Construction::C4Rhombus => c4_rhombus(2.0, 1.0),
        Construction::TruncatedTetrahedronMix => truncated_tetrahedron_mix(0.5)?,
    })
}

fn load_realization(graph: &GraphArgs, real: &RealizationArgs, common: &Common, notes: &mut Vec<String>) -> Result<Realization> {
    let sources = [real.index.is_some(), real.coordinates, real.construction.is_some(), real.realization.is_some()];
    if sources.iter().filter(|&&s| s).count() != 1 {
        return Err(GrtError::Unsupported(
            "choose exactly one of --index, --coordinates, --construction, --realization".into(),
        ));
    }
    let self_contained = real.construction.is_some() || real.realization.is_some();
    if self_contained && has_graph(graph) {
        return Err(GrtError::Unsupported("--construction and --realization carry their own graph".into()));
    }
    let r = if let Some(c) = real.construction {
        build_construction(c)?
    } else if let Some(path) = &real.realization {
        let raw: RealizationJson = serde_json::from_str(&read(path)?)?;
        raw.build()?
    } else if real.coordinates {
        let spec = graph.catalog.as_deref().filter(|_| graph.product.is_none()).ok_or_else(|| {
            GrtError::Unsupported("--coordinates needs a single polytope --catalog graph".into())
        })?;
        let (family, params) = catalog_spec(spec)?;
        if polytope_coordinates(family).is_none() || !params.is_empty() {
            return Err(GrtError::Unsupported(format!("{family} has no standard coordinates")));
        }
        polytope_skeleton(family)?
    } else {
        let g = load_graph(graph, notes)?;
        spectral_realization(&g, real.index.unwrap(), common.group_tol)?
    };
    match &real.scale_orbits {
        Some(alphas) => {
            let aut = automorphism_group(r.graph())?;
            Ok(scale_orbits(&r, &aut, alphas)?)
        }
        None => Ok(r),
    }
}

fn execute(command: Command, notes: &mut Vec<String>) -> Result<Artifact> {
    match command {
        Command::Spectrum { graph, common } => {
            let fmt = format_of(&common, &[OutputFormat::Json, OutputFormat::Csv, OutputFormat::Text], "spectrum")?;
            let g = load_graph(&graph, notes)?;
            let s = eigendecompose(&g.adjacency_matrix(), common.group_tol)?;
            let text = match fmt {
                OutputFormat::Csv => output::spectrum_csv(&s),
                OutputFormat::Text => output::spectrum_text(&s),
                _ => output::spectrum_json(&s),
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Realize { graph, real, common } => {
            let fmt = format_of(
                &common,
                &[OutputFormat::Json, OutputFormat::Csv, OutputFormat::Obj, OutputFormat::Svg],
                "realize",
            )?;
            let r = load_realization(&graph, &real, &common, notes)?;
            let text = match fmt {
                OutputFormat::Csv => output::realization_csv(&r),
                OutputFormat::Obj | OutputFormat::Svg => {
                    let (text, note) =
                        if fmt == OutputFormat::Obj { output::realization_obj(&r)? } else { output::realization_svg(&r)? };
                    notes.extend(note);
                    text
                }
                _ => output::realization_json(&r),
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Check { graph, real, common, all, sweep } => {
            let fmt = format_of(&common, &[OutputFormat::Json, OutputFormat::Text], "check")?;
            let seed = seed(&common)?;
            let mut rows = Vec::new();
            if sweep {
                for (name, params) in SWEEP {
                    let g = catalog(name.parse()?, params)?;
                    rows.extend(check_all(&g, &common, seed, &format!("{name}{}", param_suffix(params)))?);
                }
            } else if all {
                let g = load_graph(&graph, notes)?;
                rows = check_all(&g, &common, seed, "")?;
            } else {
                let r = load_realization(&graph, &real, &common, notes)?;
                let aut = automorphism_group(r.graph())?;
                rows.push(check_one(&r, &aut, &common, seed, String::new(), None)?);
            }
            let text = match fmt {
                OutputFormat::Text => check_text(&rows),
                _ if sweep || all => to_json(&rows),
                _ => to_json(&rows[0]),
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Aut { graph, common } => {
            let fmt = format_of(&common, &[OutputFormat::Json, OutputFormat::Text], "aut")?;
            let g = load_graph(&graph, notes)?;
            let aut = automorphism_group(&g)?;
            let text = match fmt {
                OutputFormat::Text => format!("order {}\ngenerators {}\n", aut.order(), aut.generators().len()),
                _ => output::group_json(&aut),
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Transitivity { graph, common } => {
            let fmt = format_of(&common, &[OutputFormat::Json, OutputFormat::Text], "transitivity")?;
            let g = load_graph(&graph, notes)?;
            let aut = automorphism_group(&g)?;
            let t = transitivity_class(&g, &aut)?;
            let text = match fmt {
                OutputFormat::Text => format!(
                    "vertex {}\nedge {}\narc {}\ndistance {}\n",
                    t.vertex, t.edge, t.arc, t.distance
                ),
                _ => to_json(&t),
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Orbitals { graph, common, decompose } => {
            format_of(&common, &[OutputFormat::Json], "orbitals")?;
            let g = load_graph(&graph, notes)?;
            let aut = automorphism_group(&g)?;
            let part = orbitals(&aut);
            let blocks = if decompose {
                let candidate = candidate_decomposition(&part, seed(&common)?)?;
                let adjacency = eigendecompose(&g.adjacency_matrix(), common.group_tol)?;
                let mut blocks = Vec::new();
                for block in candidate.groups() {
                    let mut matched = None;
                    for e in adjacency.groups() {
                        if subspace_relation(&block.subspace(), &e.subspace(), common.subspace_tol)? == SubspaceRelation::Equal {
                            matched = Some(e.value);
                        }
                    }
                    blocks.push(BlockMatch { multiplicity: block.multiplicity(), adjacency_theta: matched });
                }
                Some(blocks)
            } else {
                None
            };
            Ok(Artifact { text: output::orbitals_json(&part, blocks.as_deref()), out: common.out })
        }
        Command::Cosine { graph, real, common, base, obstruction } => {
            format_of(&common, &[OutputFormat::Json], "cosine")?;
            let r = load_realization(&graph, &real, &common, notes)?;
            let p = cosine_profile(&r, base)?;
            // The recurrence applies to balanced realizations of distance-regular graphs.
            let recurrence = match (is_balanced(&r, common.tol), intersection_array(r.graph())) {
                (Some(theta), Ok(arr)) => {
                    let r2 = p.radius_squared();
                    Some(cosine_sequence_recurrence(&arr, theta)?.into_iter().map(|u| u * r2).collect::<Vec<_>>())
                }
                _ => None,
            };
            let obs = if obstruction {
                Some(cosine_obstruction(&p, &base_and_neighbors(r.graph(), base), true)?)
            } else {
                None
            };
            Ok(Artifact { text: output::cosine_json(&p, recurrence.as_deref(), obs.as_ref()), out: common.out })
        }
        Command::IntersectionArray { graph, common } => {
            let fmt = format_of(&common, &[OutputFormat::Json, OutputFormat::Text], "intersection-array")?;
            let g = load_graph(&graph, notes)?;
            let arr = intersection_array(&g)?;
            let text = match fmt {
                OutputFormat::Text => output::intersection_array_text(&arr),
                _ => output::intersection_array_json(&arr),
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Metrics { graph, real, common, theta, deg, relative_length: rel } => {
            let fmt = format_of(&common, &[OutputFormat::Json, OutputFormat::Text], "metrics")?;
            let formula_mode = theta.is_some() || rel.is_some();
            let text = if formula_mode {
                let g = if has_graph(&graph) { Some(load_graph(&graph, notes)?) } else { None };
                let deg = match (deg, &g) {
                    (Some(d), _) => d,
                    (None, Some(g)) => g.regular_degree().ok_or(grt_core::Error::NotRegular)? as f64,
                    (None, None) => return Err(GrtError::Unsupported("give --deg or a graph".into())),
                };
                let (theta, rel) = match (theta, rel) {
                    (Some(t), _) => (t, relative_length(deg, t)?),
                    (None, Some(l)) => (theta_from_metrics(deg, l)?, l),
                    (None, None) => unreachable!(),
                };
                let formulas = Formulas {
                    deg,
                    theta,
                    relative_length: rel,
                    cosine: theta / deg,
                    lambda: deg - theta,
                    circumradius_at_unit_edge: g.as_ref().map(|g| circumradius_at_unit_edge(g, theta)).transpose()?,
                    dihedral_angle_from_dual_degrees: g
                        .as_ref()
                        .map(|g| dihedral_angle_from_dual(g, theta).map(f64::to_degrees))
                        .transpose()?,
                };
                match fmt {
                    OutputFormat::Text => formulas.text(),
                    _ => to_json(&formulas),
                }
            } else {
                let r = load_realization(&graph, &real, &common, notes)?;
                let aut = automorphism_group(r.graph())?;
                let report = metric_report(&r, &aut, common.tol)?;
                let circumradius = circumradius_at_unit_edge(r.graph(), report.theta)?;
                let dihedral = dihedral_angle_from_dual(r.graph(), report.theta)?.to_degrees();
                match fmt {
                    OutputFormat::Text => output::metric_text(
                        &report,
                        &[("circumradius_at_unit_edge", circumradius), ("dihedral_angle_from_dual_degrees", dihedral)],
                    ),
                    _ => to_json(&MetricsJson {
                        report,
                        circumradius_at_unit_edge: circumradius,
                        dihedral_angle_from_dual_degrees: dihedral,
                    }),
                }
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Rigidity { graph, real, common, multiplicity_d } => {
            format_of(&common, &[OutputFormat::Json], "rigidity")?;
            let text = match multiplicity_d {
                Some(d) => {
                    let g = load_graph(&graph, notes)?;
                    let s = eigendecompose(&g.adjacency_matrix(), common.group_tol)?;
                    to_json(&multiplicity_criteria(&s, d)?)
                }
                None => {
                    let r = load_realization(&graph, &real, &common, notes)?;
                    let aut = automorphism_group(r.graph())?;
                    to_json(&rigidity_report(&r, &aut, seed(&common)?)?)
                }
            };
            Ok(Artifact { text, out: common.out })
        }
        Command::Catalog { action: CatalogAction::List { format } } => {
            let text = match format.unwrap_or(OutputFormat::Text) {
                OutputFormat::Json => {
                    let entries: Vec<CatalogEntry> = Family::ALL
                        .iter()
                        .map(|f| CatalogEntry {
                            name: f.name(),
                            parameters: f.parameters(),
                            coordinates: polytope_coordinates(*f).is_some(),
                        })
                        .collect();
                    to_json(&entries)
                }
                OutputFormat::Text => {
                    let mut s = String::new();
                    for f in Family::ALL {
                        let coords = if polytope_coordinates(f).is_some() { "  (coordinates)" } else { "" };
                        s.push_str(&format!("{:<24}{}{coords}\n", f.name(), f.parameters()));
                    }
                    s
                }
                _ => return Err(GrtError::Unsupported("`catalog list` supports --format json, text".into())),
            };
            Ok(Artifact { text, out: None })
        }
        Command::Export { graph, to, out } => {
            let g = load_graph(&graph, notes)?;
            Ok(Artifact { text: formats::write(&g, to), out })
        }
    }
}

fn param_suffix(params: &[usize]) -> String {
    if params.is_empty() {
        String::new()
    } else {
        format!(":{}", params.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
    }
}

#[derive(Serialize)]
struct CheckRow {
    #[serde(skip_serializing_if = "String::is_empty")]
    graph: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<usize>,
    d: usize,
    balanced: Option<f64>,
    spectral: Option<f64>,
    sphericity: Sphericity,
    symmetric: bool,
    max_residual: f64,
    max_orthogonality_defect: f64,
    /// Only evaluated for symmetric realizations.
    irreducible: Option<bool>,
}

fn check_one(
    r: &Realization,
    aut: &PermGroup,
    common: &Common,
    seed: u64,
    graph: String,
    index: Option<usize>,
) -> Result<CheckRow> {
    let residuals = symmetry_residuals(r, aut)?;
    let max_residual = residuals.iter().map(|p| p.0).fold(0.0, f64::max);
    let max_orthogonality_defect = residuals.iter().map(|p| p.1).fold(0.0, f64::max);
    let scale = r.matrix().max_abs().max(1.0);
    let check_tol = common.tol.max(1e-6);
    let symmetric = max_residual <= check_tol * scale && max_orthogonality_defect <= check_tol;
    let irreducible = if symmetric {
        Some(irreducibility_test(r, aut, DEFAULT_SAMPLES, seed)? == Irreducibility::Irreducible)
    } else {
        None
    };
    Ok(CheckRow {
        graph,
        index,
        d: r.d(),
        balanced: is_balanced(r, common.tol),
        spectral: is_spectral(r, common.tol),
        sphericity: sphericity(r, common.tol),
        symmetric,
        max_residual,
        max_orthogonality_defect,
        irreducible,
    })
}

fn check_all(g: &Graph, common: &Common, seed: u64, name: &str) -> Result<Vec<CheckRow>> {
    let aut = automorphism_group(g)?;
    let count = eigendecompose(&g.adjacency_matrix(), common.group_tol)?.len();
    (1..=count)
        .map(|k| {
            let r = spectral_realization(g, k, common.group_tol)?;
            check_one(&r, &aut, common, seed, name.to_string(), Some(k))
        })
        .collect()
}

fn check_text(rows: &[CheckRow]) -> String {
    let opt = |x: Option<f64>| x.map_or("-".to_string(), output::fmt_num);
    let mut s = String::new();
    for row in rows {
        let label = match (row.graph.is_empty(), row.index) {
            (false, Some(k)) => format!("{} #{k}: ", row.graph),
            (true, Some(k)) => format!("#{k}: "),
            _ => String::new(),
        };
        s.push_str(&format!(
            "{label}d={} balanced={} spectral={} sphericity={:?} symmetric={} residual={:e} irreducible={}\n",
            row.d,
            opt(row.balanced),
            opt(row.spectral),
            row.sphericity,
            row.symmetric,
            row.max_residual,
            row.irreducible.map_or("-".to_string(), |b| b.to_string()),
        ));
    }
    s
}

#[derive(Serialize)]
struct Formulas {
    deg: f64,
    theta: f64,
    relative_length: f64,
    cosine: f64,
    lambda: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    circumradius_at_unit_edge: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dihedral_angle_from_dual_degrees: Option<f64>,
}

impl Formulas {
    fn text(&self) -> String {
        let mut rows = vec![
            ("deg", Some(self.deg)),
            ("theta", Some(self.theta)),
            ("relative_length", Some(self.relative_length)),
            ("cosine", Some(self.cosine)),
            ("lambda", Some(self.lambda)),
            ("circumradius_at_unit_edge", self.circumradius_at_unit_edge),
            ("dihedral_angle_from_dual_degrees", self.dihedral_angle_from_dual_degrees),
        ];
        rows.retain(|r| r.1.is_some());
        let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
        rows.iter().map(|(k, v)| format!("{k:<width$}  {}\n", output::fmt_num(v.unwrap()))).collect()
    }
}

#[derive(Serialize)]
struct MetricsJson {
    #[serde(flatten)]
    report: grt_core::MetricReport,
    circumradius_at_unit_edge: f64,
    dihedral_angle_from_dual_degrees: f64,
}

#[derive(Serialize)]
struct CatalogEntry {
    name: &'static str,
    parameters: &'static str,
    coordinates: bool,
}
