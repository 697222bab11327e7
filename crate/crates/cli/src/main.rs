mod report;

use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use graphcat::corpus::{acceptance_corpus, CorpusEntry};
use graphcat::graph::io::to_json;
use graphcat::graph::{
    automorphism_count, count_contractions, enumerate_reduced_graphs, DirectedEdge, Family,
};
use graphcat::growth::{dimension_table, fit_polynomial, Functional};
use graphcat::matroid::{characteristic_polynomial, flats, kl_polynomial, os_dimension, rank};
use graphcat::swiatkowski::abrams::abrams_homology;
use graphcat::swiatkowski::{torsion_scan, uconf_homology};
use graphcat::trees::{duality_check, parse_tree, quasi_leq_witness, tree_quasi_leq};
use graphcat::MultiGraph;
use serde::Serialize;
use serde_json::{json, Value};

use report::{big, bigs, join, load_graph, rat, Input, Report, Table};

#[derive(Parser)]
#[command(
    name = "graphcat",
    version,
    about = "Exact computations on graphs, configuration spaces and matroids"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// H_i(UConf_n(G); Z) from the reduced Świątkowski complex.
    Uconf(HomArgs),
    /// The same group from the Abrams cube complex, compared with uconf.
    OracleAbrams(OracleArgs),
    /// Kazhdan–Lusztig polynomial of the graphic matroid.
    Kl(GraphArgs),
    /// Characteristic polynomial.
    Charpoly(GraphArgs),
    /// Flats of the graphic matroid.
    Flats(GraphArgs),
    /// Orlik–Solomon dimensions.
    OsDim(OsArgs),
    /// Number of contractions G → target, with the bound |Aut(target)|·C(|G|, |target|).
    ContractCount(CountArgs),
    /// Reduced graphs of a given genus up to isomorphism.
    EnumerateReduced(GenusArgs),
    /// Dimension tables and polynomial fits over a family.
    Growth {
        #[command(subcommand)]
        kind: GrowthKind,
    },
    /// Planar rooted tree checks.
    Trees {
        #[command(subcommand)]
        kind: TreesKind,
    },
    /// Torsion in H_i(UConf_n) across the corpus.
    ScanTorsion(ScanArgs),
    /// The built-in acceptance corpus.
    Corpus {
        #[command(subcommand)]
        kind: CorpusKind,
    },
}

#[derive(Args, Serialize)]
struct GraphArgs {
    /// Graph JSON file, or corpus:<id>.
    #[arg(long)]
    graph: String,
}

#[derive(Args, Serialize)]
struct HomArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    n: usize,
}

#[derive(Args, Serialize)]
struct OracleArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    i: usize,
    #[arg(long)]
    n: usize,
    /// Fail unless the two computations agree.
    #[arg(long)]
    check: bool,
}

#[derive(Args, Serialize)]
struct OsArgs {
    #[arg(long)]
    graph: String,
    /// A single degree; all degrees up to the rank when omitted.
    #[arg(long)]
    i: Option<usize>,
}

#[derive(Args, Serialize)]
struct CountArgs {
    #[arg(long)]
    graph: String,
    #[arg(long)]
    target: String,
    /// Fail unless the count is within the bound.
    #[arg(long)]
    assert_bound: bool,
}

#[derive(Args, Serialize)]
struct GenusArgs {
    #[arg(long)]
    genus: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum FunctionalName {
    Betti,
    Kl,
    Os,
    Hom,
}

#[derive(Args, Serialize)]
struct GrowthArgs {
    #[arg(long)]
    graph: String,
    /// Comma separated sites: edge ids (prefix `~` to reverse) for subdivision,
    /// vertex names for sprouting.
    #[arg(long)]
    sites: String,
    /// `a..b` for every axis, or one range per site separated by commas.
    #[arg(long)]
    grid: String,
    #[arg(long, value_enum)]
    functional: FunctionalName,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    /// Target graph for the hom functional.
    #[arg(long)]
    target: Option<String>,
    /// Fit a polynomial of at most this total degree.
    #[arg(long)]
    degree: Option<usize>,
    /// Fail unless an exact fit of at most this degree holds on some upper box.
    #[arg(long)]
    assert_bound: Option<usize>,
}

#[derive(Subcommand)]
enum GrowthKind {
    Subdivide(GrowthArgs),
    Sprout(GrowthArgs),
}

#[derive(Args, Serialize)]
struct DualityArgs {
    /// Exhaustive comparison over all trees with at most this many edges.
    #[arg(long, default_value_t = 6)]
    max_edges: usize,
    #[arg(long)]
    check: bool,
}

#[derive(Args, Serialize)]
struct LeqArgs {
    /// Trees in bracket notation, e.g. "(r:x (a:y) (b:x))".
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
}

#[derive(Subcommand)]
enum TreesKind {
    Duality(DualityArgs),
    /// Whether a ≤ b, i.e. some labeled contraction b → a exists.
    Leq(LeqArgs),
}

#[derive(Args, Serialize)]
struct ScanArgs {
    #[arg(long)]
    i: usize,
    #[arg(long)]
    n: usize,
    /// Only corpus graphs of this genus.
    #[arg(long)]
    genus: Option<i64>,
    /// Only corpus graphs with at most this many edges.
    #[arg(long)]
    max_edges: Option<usize>,
}

#[derive(Args, Serialize)]
struct BuildArgs {
    /// Directory for the graph files.
    #[arg(long)]
    dir: String,
}

#[derive(Subcommand)]
enum CorpusKind {
    Build(BuildArgs),
    List,
}

type Res<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn graph_input(spec: &str) -> Res<(MultiGraph, Vec<Input>)> {
    let (g, input) = load_graph(spec)?;
    Ok((g, vec![input]))
}

fn summary_value(h: &graphcat::linalg::HomologySummary) -> Value {
    json!({ "betti": h.betti, "torsion": bigs(&h.torsion) })
}

fn uconf(a: HomArgs) -> Res<Report> {
    let (g, inputs) = graph_input(&a.graph)?;
    let h = uconf_homology(&g, a.i, a.n).map_err(err)?;
    let mut r = Report::new("uconf", inputs, &a);
    r.result = summary_value(&h);
    r.table = Table::pairs(&[
        ("betti", h.betti.to_string()),
        ("torsion", join(&h.torsion)),
    ]);
    Ok(r)
}

fn oracle(a: OracleArgs) -> Res<Report> {
    let (g, inputs) = graph_input(&a.graph)?;
    let sw = uconf_homology(&g, a.i, a.n).map_err(err)?;
    let ab = abrams_homology(&g, a.i, a.n).map_err(err)?;
    let agree = sw.betti == ab.betti && sw.torsion == ab.torsion;
    let mut r = Report::new("oracle-abrams", inputs, &a);
    r.result =
        json!({ "swiatkowski": summary_value(&sw), "abrams": summary_value(&ab), "agree": agree });
    r.table = Table::new(&["model", "betti", "torsion"]);
    r.table.push(vec![
        "swiatkowski".into(),
        sw.betti.to_string(),
        join(&sw.torsion),
    ]);
    r.table.push(vec![
        "abrams".into(),
        ab.betti.to_string(),
        join(&ab.torsion),
    ]);
    r.ok = !a.check || agree;
    Ok(r)
}

fn kl(a: GraphArgs) -> Res<Report> {
    let (g, inputs) = graph_input(&a.graph)?;
    let p = kl_polynomial(&g).map_err(err)?;
    let mut r = Report::new("kl", inputs, &a);
    r.result =
        json!({ "rank": rank(&g), "coefficients": bigs(p.coeffs()), "polynomial": p.to_string() });
    r.table = Table::new(&["degree", "coefficient"]);
    for (k, c) in p.coeffs().iter().enumerate() {
        r.table.push(vec![k.to_string(), c.to_string()]);
    }
    Ok(r)
}

fn charpoly(a: GraphArgs) -> Res<Report> {
    let (g, inputs) = graph_input(&a.graph)?;
    let p = characteristic_polynomial(&g);
    let mut r = Report::new("charpoly", inputs, &a);
    r.result = json!({ "coefficients": bigs(p.coeffs()), "polynomial": p.to_string() });
    r.table = Table::new(&["degree", "coefficient"]);
    for (k, c) in p.coeffs().iter().enumerate() {
        r.table.push(vec![k.to_string(), c.to_string()]);
    }
    Ok(r)
}

fn flats_cmd(a: GraphArgs) -> Res<Report> {
    let (g, inputs) = graph_input(&a.graph)?;
    let fs = flats(&g);
    let names = |es: &[usize]| {
        es.iter()
            .map(|&e| g.edge(e).name.clone())
            .collect::<Vec<_>>()
    };
    let mut by_rank = vec![0usize; rank(&g) + 1];
    for f in &fs {
        by_rank[f.rank] += 1;
    }
    let mut r = Report::new("flats", inputs, &a);
    r.result = json!({
        "rank": rank(&g),
        "counts_by_rank": by_rank,
        "flats": fs.iter().map(|f| json!({ "rank": f.rank, "corank": f.corank, "edges": names(&f.edges) })).collect::<Vec<_>>(),
    });
    r.table = Table::new(&["rank", "corank", "edges"]);
    for f in &fs {
        r.table.push(vec![
            f.rank.to_string(),
            f.corank.to_string(),
            names(&f.edges).join(" "),
        ]);
    }
    Ok(r)
}

fn os_dim(a: OsArgs) -> Res<Report> {
    let (g, inputs) = graph_input(&a.graph)?;
    let degrees: Vec<usize> = match a.i {
        Some(i) => vec![i],
        None => (0..=rank(&g)).collect(),
    };
    let dims: Vec<_> = degrees.iter().map(|&i| os_dimension(&g, i)).collect();
    let mut r = Report::new("os-dim", inputs, &a);
    r.result = json!({ "degrees": degrees, "dimensions": bigs(&dims) });
    r.table = Table::new(&["degree", "dimension"]);
    for (i, d) in degrees.iter().zip(&dims) {
        r.table.push(vec![i.to_string(), d.to_string()]);
    }
    Ok(r)
}

fn contract_count(a: CountArgs) -> Res<Report> {
    let (g, mut inputs) = graph_input(&a.graph)?;
    let (t, ti) = load_graph(&a.target)?;
    inputs.push(ti);
    let count = count_contractions(&g, &t).map_err(err)?;
    let aut = automorphism_count(&t);
    let bound = aut * graphcat::graph::enumerate::binomial(g.edge_count(), t.edge_count());
    let mut r = Report::new("contract-count", inputs, &a);
    r.result = json!({
        "morphisms": count.to_string(),
        "target_automorphisms": aut.to_string(),
        "bound": bound.to_string(),
        "within_bound": count <= bound,
    });
    r.table = Table::pairs(&[
        ("morphisms", count.to_string()),
        ("target_automorphisms", aut.to_string()),
        ("bound", bound.to_string()),
    ]);
    r.ok = !a.assert_bound || count <= bound;
    Ok(r)
}

fn enumerate_reduced(a: GenusArgs) -> Res<Report> {
    if a.genus == 0 || a.genus > 4 {
        return Err("--genus must be between 1 and 4".into());
    }
    let gs = enumerate_reduced_graphs(a.genus);
    let mut r = Report::new("enumerate-reduced", Vec::new(), &a);
    let records: Vec<Value> = gs
        .iter()
        .map(|g| serde_json::from_str(&to_json(g)).expect("valid json"))
        .collect();
    r.result = json!({ "count": gs.len(), "graphs": records });
    r.table = Table::new(&["index", "vertices", "edges", "loops"]);
    for (k, g) in gs.iter().enumerate() {
        r.table.push(vec![
            k.to_string(),
            g.vertex_count().to_string(),
            g.edge_count().to_string(),
            g.loop_count().to_string(),
        ]);
    }
    Ok(r)
}

fn parse_range(s: &str) -> Res<(usize, usize)> {
    let (a, b) = s
        .trim()
        .split_once("..")
        .ok_or_else(|| format!("range {s:?} is not of the form a..b"))?;
    let lo: usize = a.parse().map_err(|_| format!("bad range start in {s:?}"))?;
    let hi: usize = b.parse().map_err(|_| format!("bad range end in {s:?}"))?;
    if lo > hi {
        return Err(format!("empty range {s:?}"));
    }
    Ok((lo, hi))
}

fn growth(a: GrowthArgs, sprout: bool) -> Res<Report> {
    let (g, mut inputs) = graph_input(&a.graph)?;
    let g = Arc::new(g);
    let names: Vec<&str> = a
        .sites
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if names.is_empty() {
        return Err("--sites is empty".into());
    }
    let family = if sprout {
        let sites = names
            .iter()
            .map(|s| {
                g.vertex_index(s)
                    .ok_or_else(|| format!("no vertex named {s}"))
            })
            .collect::<Res<Vec<_>>>()?;
        Family::sprout(g.clone(), sites).map_err(err)?
    } else {
        let sites = names
            .iter()
            .map(|s| {
                let (reversed, id) = match s.strip_prefix('~') {
                    Some(rest) => (true, rest),
                    None => (false, *s),
                };
                let edge = g
                    .edge_index(id)
                    .ok_or_else(|| format!("no edge with id {id}"))?;
                Ok(DirectedEdge { edge, reversed })
            })
            .collect::<Res<Vec<_>>>()?;
        Family::subdivision(g.clone(), sites).map_err(err)?
    };
    let ranges = a
        .grid
        .split(',')
        .map(parse_range)
        .collect::<Res<Vec<_>>>()?;
    let axes = match ranges.len() {
        1 => vec![ranges[0]; names.len()],
        k if k == names.len() => ranges,
        k => return Err(format!("{k} grid ranges for {} sites", names.len())),
    };
    let functional = match a.functional {
        FunctionalName::Betti => Functional::UconfBetti {
            i: a.i.ok_or("betti needs --i")?,
            n: a.n.ok_or("betti needs --n")?,
        },
        FunctionalName::Kl => Functional::KlCoefficient {
            i: a.i.ok_or("kl needs --i")?,
        },
        FunctionalName::Os => Functional::OsDimension {
            i: a.i.ok_or("os needs --i")?,
        },
        FunctionalName::Hom => {
            let spec = a.target.as_deref().ok_or("hom needs --target")?;
            let (t, ti) = load_graph(spec)?;
            inputs.push(ti);
            Functional::HomCount {
                target: Arc::new(t),
            }
        }
    };
    let degree = a.degree.or(a.assert_bound);
    if let Some(d) = degree {
        if let Some(k) = axes.iter().position(|&(lo, hi)| hi - lo < d) {
            return Err(format!("axis {k} has too few values for degree {d}"));
        }
    }
    let table = dimension_table(&functional, &family, &axes).map_err(err)?;
    let fit = degree
        .map(|d| fit_polynomial(&table, d))
        .transpose()
        .map_err(err)?;
    let command = if sprout {
        "growth sprout"
    } else {
        "growth subdivide"
    };
    let mut r = Report::new(command, inputs, &a);
    let cells: Vec<Value> = table
        .cells
        .iter()
        .map(|c| json!({ "sizes": c.sizes, "value": c.value.as_ref().map(big) }))
        .collect();
    let fit_value = fit.as_ref().map(|f| {
        json!({
            "polynomial": f.polynomial.to_string(),
            "degree": f.degree,
            "checked_cells": f.checked_cells,
            "residuals": f.residuals.iter().map(|(p, x)| json!({ "sizes": p, "residual": rat(x) })).collect::<Vec<_>>(),
            "threshold": f.threshold,
        })
    });
    r.result = json!({ "functional": table.functional, "axes": table.axes, "cells": cells, "fit": fit_value });
    let mut cols: Vec<String> = (0..axes.len()).map(|k| format!("m{}", k + 1)).collect();
    cols.push("value".into());
    r.table = Table {
        columns: cols,
        rows: Vec::new(),
    };
    for c in &table.cells {
        let mut row: Vec<String> = c.sizes.iter().map(ToString::to_string).collect();
        row.push(
            c.value
                .as_ref()
                .map(ToString::to_string)
                .unwrap_or_default(),
        );
        r.table.push(row);
    }
    if let Some(bound) = a.assert_bound {
        r.ok = fit
            .as_ref()
            .is_some_and(|f| f.degree.unwrap_or(0) <= bound && f.threshold.is_some());
    }
    Ok(r)
}

fn duality(a: DualityArgs) -> Res<Report> {
    if a.max_edges > 8 {
        return Err("--max-edges above 8 is not supported".into());
    }
    let d = duality_check(a.max_edges);
    let mut r = Report::new("trees duality", Vec::new(), &a);
    r.result = serde_json::to_value(&d).map_err(err)?;
    r.result["holds"] = json!(d.holds());
    r.table = Table::pairs(&[
        ("pairs", d.pairs.to_string()),
        ("contractions", d.contractions.to_string()),
        ("embeddings", d.embeddings.to_string()),
        ("existence_mismatches", d.existence_mismatches.to_string()),
        ("bijection_failures", d.bijection_failures.to_string()),
    ]);
    r.ok = !a.check || d.holds();
    Ok(r)
}

fn leq(a: LeqArgs) -> Res<Report> {
    let ta = parse_tree(&a.a).map_err(err)?;
    let tb = parse_tree(&a.b).map_err(err)?;
    let inputs = vec![
        Input::new("a", a.a.as_bytes()),
        Input::new("b", a.b.as_bytes()),
    ];
    let holds = tree_quasi_leq(&ta, &tb);
    let witness = quasi_leq_witness(&ta, &tb).map(|m| {
        (0..tb.vertex_count())
            .map(|v| json!([tb.name(v), ta.name(m[v])]))
            .collect::<Vec<_>>()
    });
    let mut r = Report::new("trees leq", inputs, &a);
    r.result = json!({ "leq": holds, "contraction": witness });
    r.table = Table::pairs(&[("leq", holds.to_string())]);
    Ok(r)
}

fn scan(a: ScanArgs) -> Res<Report> {
    let corpus: Vec<CorpusEntry> = acceptance_corpus()
        .into_iter()
        .filter(|e| a.genus.is_none_or(|g| e.graph.genus().ok() == Some(g)))
        .filter(|e| a.max_edges.is_none_or(|m| e.graph.edge_count() <= m))
        .collect();
    let rep = torsion_scan(&corpus, a.i, a.n).map_err(err)?;
    let mut r = Report::new("scan-torsion", Vec::new(), &a);
    r.result = json!({
        "rows": rep.rows.iter().map(|row| json!({
            "graph": row.graph, "genus": row.genus, "planar": row.planar,
            "betti": row.betti, "torsion": bigs(&row.torsion),
        })).collect::<Vec<_>>(),
        "exponents": rep.exponents.iter().map(|x| json!({
            "genus": x.genus, "i": x.i, "n": x.n, "exponent": big(&x.exponent),
        })).collect::<Vec<_>>(),
    });
    r.table = Table::new(&["graph", "genus", "planar", "betti", "torsion"]);
    for row in &rep.rows {
        r.table.push(vec![
            row.graph.clone(),
            row.genus.to_string(),
            row.planar.to_string(),
            row.betti.to_string(),
            join(&row.torsion),
        ]);
    }
    Ok(r)
}

fn corpus_build(a: BuildArgs) -> Res<Report> {
    let dir = std::path::Path::new(&a.dir);
    std::fs::create_dir_all(dir).map_err(err)?;
    let corpus = acceptance_corpus();
    let mut r = Report::new("corpus build", Vec::new(), &a);
    r.table = Table::new(&["id", "file", "sha256"]);
    let mut files = Vec::new();
    for e in &corpus {
        let text = to_json(&e.graph) + "\n";
        let file = format!("{}.json", e.id);
        std::fs::write(dir.join(&file), &text).map_err(err)?;
        let hash = Input::new(&file, text.as_bytes()).sha256;
        files.push(json!({ "id": e.id, "file": file, "sha256": hash }));
        r.table.push(vec![e.id.clone(), file, hash]);
    }
    r.result = json!({ "count": corpus.len(), "files": files });
    Ok(r)
}

fn corpus_list() -> Res<Report> {
    let corpus = acceptance_corpus();
    let mut r = Report::new("corpus list", Vec::new(), json!({}));
    r.table = Table::new(&["id", "vertices", "edges", "genus"]);
    let mut rows = Vec::new();
    for e in &corpus {
        let genus = e.graph.genus().map_err(err)?;
        rows.push(json!({ "id": e.id, "vertices": e.graph.vertex_count(), "edges": e.graph.edge_count(), "genus": genus }));
        r.table.push(vec![
            e.id.clone(),
            e.graph.vertex_count().to_string(),
            e.graph.edge_count().to_string(),
            genus.to_string(),
        ]);
    }
    r.result = json!({ "count": corpus.len(), "graphs": rows });
    Ok(r)
}

fn run(cli: Cli) -> Res<Report> {
    match cli.command {
        Command::Uconf(a) => uconf(a),
        Command::OracleAbrams(a) => oracle(a),
        Command::Kl(a) => kl(a),
        Command::Charpoly(a) => charpoly(a),
        Command::Flats(a) => flats_cmd(a),
        Command::OsDim(a) => os_dim(a),
        Command::ContractCount(a) => contract_count(a),
        Command::EnumerateReduced(a) => enumerate_reduced(a),
        Command::Growth {
            kind: GrowthKind::Subdivide(a),
        } => growth(a, false),
        Command::Growth {
            kind: GrowthKind::Sprout(a),
        } => growth(a, true),
        Command::Trees {
            kind: TreesKind::Duality(a),
        } => duality(a),
        Command::Trees {
            kind: TreesKind::Leq(a),
        } => leq(a),
        Command::ScanTorsion(a) => scan(a),
        Command::Corpus {
            kind: CorpusKind::Build(a),
        } => corpus_build(a),
        Command::Corpus {
            kind: CorpusKind::List,
        } => corpus_list(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(w) = cli.workers {
        if w == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .expect("thread pool set once");
    }
    let csv_format = cli.format == Format::Csv;
    let out = cli.out.clone();
    let report = match run(cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let bytes = match report.render(csv_format) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let written = match &out {
        Some(path) => std::fs::write(path, &bytes).map_err(err),
        None => {
            use std::io::Write;
            std::io::stdout().write_all(&bytes).map_err(err)
        }
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    if report.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("assertion failed");
        ExitCode::FAILURE
    }
}
