use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;

use netintensity::autocorr::{
    local_moran, node_general_correlation, node_local_correlation, permutation_oracle, DependenceType, LagMode,
    LocalStatistic,
};
use netintensity::io::{export_attributes, export_graph, read_graph, read_inputs, write_local_moran, EdgeSource};
use netintensity::{
    path_total_weight, relate_events_to_network, render_heatmap, render_neighborhood, render_path, shortest_path,
    AnnotatedNetwork, Error, GraphKind, HeatSpec, VertexRef,
};

#[derive(Parser)]
#[command(name = "netintensity", version, about = "Event intensities on planar networks")]
struct Cli {
    /// Graph kind used when building from tables.
    #[arg(long, global = true, value_enum, default_value_t = Kind::Undirected)]
    kind: Kind,

    /// Event-correction radius: events farther than this from every edge stay unassigned.
    #[arg(long, global = true, default_value_t = 5.0)]
    tau: f64,

    /// Seed for permutation inference.
    #[arg(long, global = true, env = "NETINTENSITY_SEED", default_value_t = 1)]
    seed: u64,

    #[arg(long, global = true, default_value = ".")]
    out_dir: PathBuf,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Undirected,
    Directed,
    Mixed,
}

impl From<Kind> for GraphKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Undirected => GraphKind::Undirected,
            Kind::Directed => GraphKind::Directed,
            Kind::Mixed => GraphKind::Mixed,
        }
    }
}

#[derive(Args)]
struct Input {
    /// Node table: id,x,y (id optional).
    #[arg(long, conflicts_with = "graph")]
    nodes: Option<PathBuf>,

    /// Edge list: from,to[,directed].
    #[arg(long, requires = "nodes", conflicts_with = "adjacency")]
    edges: Option<PathBuf>,

    /// Dense adjacency matrix.
    #[arg(long, requires = "nodes")]
    adjacency: Option<PathBuf>,

    /// Event table: x,y[,mark].
    #[arg(long, requires = "nodes")]
    events: Option<PathBuf>,

    /// A previously exported graph document.
    #[arg(long)]
    graph: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the network and write graph.json (no events).
    Build {
        #[command(flatten)]
        input: Input,
    },
    /// Snap events to edges and write the attribute tables and graph.json.
    Snap {
        #[command(flatten)]
        input: Input,
    },
    /// Autocorrelation of the nodewise intensity.
    Stats {
        #[command(flatten)]
        input: Input,
        #[command(subcommand)]
        which: Stats,
    },
    /// Shortest path between two vertices (id or 1-based index).
    Path {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Edge attribute to minimize; hop count when omitted.
        #[arg(long)]
        weight: Option<String>,
        /// Also draw the path to this SVG file (inside the output directory).
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        show_events: bool,
    },
    /// Restrict to a rectangle and write window.json.
    Window {
        #[command(flatten)]
        input: Input,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        x: Vec<f64>,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_negative_numbers = true)]
        y: Vec<f64>,
    },
    /// Draw a heatmap or a vertex neighbourhood as SVG.
    Render {
        #[command(flatten)]
        input: Input,
        /// none, v_intensity, e_intensity, moran, geary, getis or an attribute name.
        #[arg(long, default_value = "none")]
        heat: String,
        #[arg(long)]
        show_events: bool,
        #[arg(long, default_value_t = 1.0)]
        alpha: f64,
        /// Color only these vertices (comma separated ids).
        #[arg(long, value_delimiter = ',')]
        vertices: Option<Vec<String>>,
        /// Color only these edges, written from:to and comma separated.
        #[arg(long, value_delimiter = ',')]
        select_edges: Option<Vec<String>>,
        /// Draw the first-order neighbourhood of this vertex instead.
        #[arg(long, conflicts_with_all = ["vertices", "select_edges"])]
        neighborhood: Option<String>,
        #[arg(long, default_value = "heatmap.svg")]
        output: PathBuf,
    },
    /// Write vertices_out.csv, edges_out.csv and graph.json.
    Export {
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Subcommand)]
enum Stats {
    /// Lagged global correlation, printed as lag,value rows.
    General {
        #[arg(long, value_enum, default_value_t = Dep::Correlation)]
        dep: Dep,
        #[arg(long, default_value_t = 5)]
        lag_max: usize,
        #[arg(long, value_enum, default_value_t = Mode::Partial)]
        mode: Mode,
    },
    /// Local statistic per vertex; moran also writes localmoran.csv.
    Local {
        #[arg(long, value_enum, default_value_t = Local::Moran)]
        stat: Local,
        /// Run a conditional permutation test with this many replicates.
        #[arg(long)]
        permutations: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Dep {
    Correlation,
    Covariance,
    Moran,
    Geary,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Partial,
    Cumulative,
}

#[derive(Clone, Copy, ValueEnum)]
enum Local {
    Moran,
    Geary,
    Getis,
}

impl From<Local> for LocalStatistic {
    fn from(l: Local) -> Self {
        match l {
            Local::Moran => LocalStatistic::Moran,
            Local::Geary => LocalStatistic::Geary,
            Local::Getis => LocalStatistic::Getis,
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 1 } else { 2 })
        }
    }
}

fn load(cli: &Cli, input: &Input, with_events: bool) -> Result<AnnotatedNetwork, Error> {
    if let Some(path) = &input.graph {
        return read_graph(path);
    }
    let nodes = input
        .nodes
        .as_deref()
        .ok_or_else(|| Error::InvalidArgument("either --graph or --nodes is required".into()))?;
    let source = match (&input.edges, &input.adjacency) {
        (Some(p), _) => EdgeSource::EdgeList(p),
        (None, Some(p)) => EdgeSource::Adjacency(p),
        (None, None) => return Err(Error::InvalidArgument("--nodes needs --edges or --adjacency".into())),
    };
    let events = if with_events { input.events.as_deref() } else { None };
    let (net, events) = read_inputs(nodes, source, events, cli.kind.into(), cli.tau)?;
    info!("read {} vertices, {} edges, {} events", net.vertex_count(), net.edge_count(), events.len());
    let g = relate_events_to_network(net, events);
    report_unassigned(&g);
    Ok(g)
}

fn report_unassigned(g: &AnnotatedNetwork) {
    let unassigned = &g.assignment().unassigned;
    if unassigned.is_empty() {
        return;
    }
    eprintln!(
        "{} of {} events farther than {} from every edge were not assigned",
        unassigned.len(),
        g.events().len(),
        g.network().event_correction()
    );
    for u in unassigned {
        eprintln!("  event {}: nearest edge at {}", u.event + 1, u.distance);
    }
}

fn out_path(cli: &Cli, name: &Path) -> Result<PathBuf, Error> {
    fs::create_dir_all(&cli.out_dir)?;
    Ok(cli.out_dir.join(name))
}

fn run(cli: Cli) -> Result<(), Error> {
    if !(cli.tau.is_finite() && cli.tau >= 0.0) {
        return Err(Error::InvalidEventCorrection(cli.tau));
    }
    match &cli.command {
        Command::Build { input } => {
            let g = load(&cli, input, false)?;
            let net = g.network();
            println!("kind,vertices,edges");
            println!("{},{},{}", net.kind(), net.vertex_count(), net.edge_count());
            export_graph(&g, &out_path(&cli, Path::new("graph.json"))?)
        }
        Command::Snap { input } => {
            let g = load(&cli, input, true)?;
            let assigned = g.assignment().assigned_count();
            println!("events,assigned,unassigned");
            println!("{},{},{}", g.events().len(), assigned, g.events().len() - assigned);
            export_all(&cli, &g)
        }
        Command::Export { input } => export_all(&cli, &load(&cli, input, true)?),
        Command::Stats { input, which } => {
            let mut g = load(&cli, input, true)?;
            stats(&cli, &mut g, which)
        }
        Command::Path { input, from, to, weight, svg, show_events } => {
            let g = load(&cli, input, true)?;
            let net = g.network();
            let (s, t) = (net.resolve_token(from)?, net.resolve_token(to)?);
            let found = shortest_path(&g, &VertexRef::Index(s + 1), &VertexRef::Index(t + 1), weight.as_deref())?;
            let Some(path) = found else {
                return Err(Error::BrokenPath { from: from.clone(), to: to.clone() });
            };
            let refs: Vec<VertexRef> = path.vertices.iter().map(|&v| VertexRef::Index(v + 1)).collect();
            let total = path_total_weight(&g, &refs, weight.as_deref())?;
            println!("algorithm,total_weight,path");
            println!("{},{},{}", path.algorithm, total, path.vertex_ids(net).join(" "));
            if let Some(name) = svg {
                fs::write(out_path(&cli, name)?, render_path(&g, &path, *show_events)?)?;
            }
            Ok(())
        }
        Command::Window { input, x, y } => {
            let g = load(&cli, input, true)?;
            let (net, events) = g.network().apply_window(g.events(), (x[0], x[1]), (y[0], y[1]))?;
            let w = relate_events_to_network(net, events);
            println!("vertices,edges,events");
            println!("{},{},{}", w.network().vertex_count(), w.network().edge_count(), w.events().len());
            export_graph(&w, &out_path(&cli, Path::new("window.json"))?)
        }
        Command::Render { input, heat, show_events, alpha, vertices, select_edges, neighborhood, output } => {
            let g = load(&cli, input, true)?;
            let svg = match neighborhood {
                Some(v) => render_neighborhood(&g, &VertexRef::Index(g.network().resolve_token(v)? + 1))?,
                None => {
                    let edges = select_edges
                        .as_ref()
                        .map(|list| list.iter().map(|e| split_edge(e)).collect::<Result<Vec<_>, _>>())
                        .transpose()?;
                    let spec = HeatSpec {
                        heat_type: heat.parse()?,
                        show_events: *show_events,
                        alpha: *alpha,
                        vertices: vertices.clone(),
                        edges,
                    };
                    render_heatmap(&g, &spec)?
                }
            };
            fs::write(out_path(&cli, output)?, svg)?;
            Ok(())
        }
    }
}

fn split_edge(s: &str) -> Result<(String, String), Error> {
    match s.split_once(':') {
        Some((a, b)) => Ok((a.trim().to_string(), b.trim().to_string())),
        None => Err(Error::InvalidArgument(format!("edge {s:?} must be written from:to"))),
    }
}

fn export_all(cli: &Cli, g: &AnnotatedNetwork) -> Result<(), Error> {
    export_attributes(
        g,
        &out_path(cli, Path::new("vertices_out.csv"))?,
        &out_path(cli, Path::new("edges_out.csv"))?,
    )?;
    export_graph(g, &out_path(cli, Path::new("graph.json"))?)
}

fn stats(cli: &Cli, g: &mut AnnotatedNetwork, which: &Stats) -> Result<(), Error> {
    let x = g.node_intensity();
    match which {
        Stats::General { dep, lag_max, mode } => {
            let dep = match dep {
                Dep::Correlation => DependenceType::Correlation,
                Dep::Covariance => DependenceType::Covariance,
                Dep::Moran => DependenceType::Moran,
                Dep::Geary => DependenceType::Geary,
            };
            let mode = match mode {
                Mode::Partial => LagMode::Partial,
                Mode::Cumulative => LagMode::Cumulative,
            };
            let values = node_general_correlation(g.network(), dep, *lag_max, &x, mode)?;
            println!("lag,value");
            for (k, v) in values.iter().enumerate() {
                println!("{k},{v}");
            }
            Ok(())
        }
        Stats::Local { stat, permutations } => {
            let stat = LocalStatistic::from(*stat);
            let net = g.network();
            if stat == LocalStatistic::Moran {
                let rows = local_moran(net, &x)?;
                write_local_moran(net, &rows, &out_path(cli, Path::new("localmoran.csv"))?)?;
            }
            if let Some(n_sim) = permutations {
                let sims = permutation_oracle(net, &x, stat, *n_sim, cli.seed)?;
                let path = out_path(cli, Path::new(&format!("permutation_{}.csv", stat.column_name())))?;
                let mut text = String::from("name,observed,mean,variance,z,p\n");
                for (i, m) in sims.iter().enumerate() {
                    text.push_str(&format!(
                        "{},{},{},{},{},{}\n",
                        net.vertex(i).id,
                        m.observed,
                        m.mean,
                        m.variance,
                        m.z(),
                        m.p
                    ));
                }
                fs::write(path, text)?;
            }
            node_local_correlation(g, stat)?;
            export_all(cli, g)
        }
    }
}
