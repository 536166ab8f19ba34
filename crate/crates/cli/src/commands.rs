use std::path::Path;

use rigidity_core::bounds::{
    certificate_embedding, iterated_subdivision_bound, kn_bound, limit_matrix_bound,
    partition_bound, partition_bound_2d, path_bounds, star_embedding, star_spectrum_closed_form,
    subdivision_bound, BoundReport,
};
use rigidity_core::expander::{build_k_regular, calibrate, certify};
use rigidity_core::framework::{generic_embedding, is_d_rigid, stiffness, Embedding};
use rigidity_core::graph::{
    balanced_partition, iterated_subdivision, make_complete, make_gen_cycle, make_gen_path,
    make_star, subdivide, Graph, VertexPartition,
};
use rigidity_core::io::{
    parse_edge_list, parse_embedding, parse_partition, write_edge_list, write_embedding,
    write_partition,
};
use rigidity_core::optimizer::{maximize_gap, AscentConfig, TraceEntry};
use rigidity_core::spectra::{
    algebraic_connectivity, graph_laplacian, stiffness_gap, sym_eigenvalues, Gap, Spectrum,
};
use serde::Serialize;

use crate::report::{in_file, read_file, write_atomic, CliError, CliResult, Output, Table};
use crate::{
    ConstructArgs, Family, FamilyArgs, GenerateArgs, LimitArgs, OptimizeArgs, PartitionArgs,
    RigidityArgs, SpectrumArgs, SubdivisionArgs, SweepArgs,
};

fn load_graph(path: &Path) -> CliResult<Graph> {
    in_file(path, parse_edge_list(&read_file(path)?))
}

fn load_partition(path: Option<&Path>, g: &Graph, d: usize) -> CliResult<VertexPartition> {
    match path {
        Some(path) => in_file(path, parse_partition(&read_file(path)?, Some(g.num_vertices()))),
        None => Ok(balanced_partition(g.num_vertices(), d)?),
    }
}

fn points(p: &Embedding) -> Vec<Vec<f64>> {
    p.points().map(<[f64]>::to_vec).collect()
}

#[derive(Serialize)]
struct Multiplicity {
    value: f64,
    multiplicity: usize,
}

#[derive(Serialize)]
struct SpectrumReport {
    matrix: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    dimension: Option<usize>,
    values: Vec<f64>,
    multiplicities: Vec<Multiplicity>,
}

impl SpectrumReport {
    fn new(matrix: &'static str, dimension: Option<usize>, s: &Spectrum) -> Self {
        Self {
            matrix,
            dimension,
            values: s.values().to_vec(),
            multiplicities: s
                .multiplicities()
                .into_iter()
                .map(|(value, multiplicity)| Multiplicity {
                    value,
                    multiplicity,
                })
                .collect(),
        }
    }
}

fn spectrum_table(values: &[f64]) -> Table {
    Table {
        header: vec!["index", "value"],
        rows: values
            .iter()
            .enumerate()
            .map(|(i, v)| vec![(i + 1).to_string(), v.to_string()])
            .collect(),
    }
}

pub fn spectrum(a: &SpectrumArgs) -> CliResult<Output> {
    let g = load_graph(&a.graph)?;
    let embedding = match (&a.embedding, a.random_d) {
        (Some(path), _) => Some(in_file(path, parse_embedding(&read_file(path)?))?),
        (None, Some(0)) => return Err(CliError::Usage("--random-d must be at least 1".into())),
        (None, Some(d)) => Some(generic_embedding(&g, d, a.seed)),
        (None, None) => None,
    };
    let report = match &embedding {
        Some(p) => {
            if p.num_vertices() != g.num_vertices() {
                return Err(CliError::Input(format!(
                    "embedding has {} vertices, graph has {}",
                    p.num_vertices(),
                    g.num_vertices()
                )));
            }
            let s = sym_eigenvalues(&stiffness(&g, p)?)?;
            SpectrumReport::new("stiffness", Some(p.dim()), &s)
        }
        None => SpectrumReport::new("laplacian", None, &sym_eigenvalues(&graph_laplacian(&g))?),
    };
    let table = spectrum_table(&report.values);
    Ok(Output::json(&report).with_table(table))
}

pub fn rigidity(a: &RigidityArgs) -> CliResult<Output> {
    let g = load_graph(&a.graph)?;
    Ok(Output::json(&is_d_rigid(&g, a.d, a.trials, a.seed)?))
}

fn evidence_table(r: &BoundReport) -> Table {
    let mut rows: Vec<Vec<String>> = r
        .evidence
        .iter()
        .map(|e| {
            let kind = serde_json::to_value(e.kind).expect("kind serializes");
            let parts: Vec<String> = e.parts.iter().map(ToString::to_string).collect();
            vec![
                kind.as_str().unwrap_or_default().to_string(),
                parts.join(" "),
                e.gap.to_string(),
            ]
        })
        .collect();
    rows.push(vec!["bound".into(), String::new(), r.value.to_string()]);
    Table {
        header: vec!["kind", "parts", "value"],
        rows,
    }
}

pub fn bound_partition(a: &PartitionArgs) -> CliResult<Output> {
    let g = load_graph(&a.graph)?;
    let partition = load_partition(a.partition.as_deref(), &g, a.d)?;
    let report = if a.d == 2 && !a.halved {
        partition_bound_2d(&g, &partition)?
    } else {
        partition_bound(&g, &partition, a.d)?
    };
    let table = evidence_table(&report);
    Ok(Output::json(&report).with_table(table))
}

#[derive(Serialize)]
struct LimitReport {
    #[serde(flatten)]
    bound: BoundReport,
    certificate: Certificate,
}

#[derive(Serialize)]
struct Certificate {
    scale: f64,
    stiffness_gap: f64,
    difference: f64,
}

pub fn bound_limit(a: &LimitArgs) -> CliResult<Output> {
    if !(a.scale > 0.0 && a.scale.is_finite()) {
        return Err(CliError::Usage(format!("--scale must be positive, got {}", a.scale)));
    }
    let g = load_graph(&a.graph)?;
    let partition = load_partition(a.partition.as_deref(), &g, a.d)?;
    let bound = limit_matrix_bound(&g, &partition, a.d)?;
    let (p, gap) = certificate_embedding(&g, &partition, a.scale)?;
    if let Some(path) = &a.emit_embedding {
        write_atomic(path, write_embedding(&p).as_bytes())?;
    }
    let report = LimitReport {
        certificate: Certificate {
            scale: a.scale,
            stiffness_gap: gap,
            difference: gap - bound.value,
        },
        bound,
    };
    Ok(Output::json(&report))
}

#[derive(Serialize)]
struct FormulaReport {
    value: f64,
}

pub fn bound_kn(a: &FamilyArgs) -> CliResult<Output> {
    let value = kn_bound(a.n, a.d)?;
    Ok(Output::json(&FormulaReport { value }).with_table(Table {
        header: vec!["n", "d", "value"],
        rows: vec![vec![a.n.to_string(), a.d.to_string(), value.to_string()]],
    }))
}

pub fn bound_path(a: &FamilyArgs) -> CliResult<Output> {
    let b = path_bounds(a.n, a.d)?;
    Ok(Output::json(&b).with_table(Table {
        header: vec!["n", "d", "lower", "upper"],
        rows: vec![vec![
            a.n.to_string(),
            a.d.to_string(),
            b.lower.to_string(),
            b.upper.to_string(),
        ]],
    }))
}

#[derive(Serialize)]
struct StarReport {
    closed_form: Vec<f64>,
    computed: Vec<f64>,
    max_deviation: f64,
    stiffness_gap: f64,
}

pub fn bound_star(a: &FamilyArgs) -> CliResult<Output> {
    let closed = star_spectrum_closed_form(a.n, a.d)?;
    let g = make_star(a.n, a.d)?;
    let p = star_embedding(a.n, a.d)?;
    let computed = sym_eigenvalues(&stiffness(&g, &p)?)?;
    let max_deviation = closed
        .values()
        .iter()
        .zip(computed.values())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let report = StarReport {
        closed_form: closed.values().to_vec(),
        computed: computed.values().to_vec(),
        max_deviation,
        stiffness_gap: stiffness_gap(&g, &p)?.value,
    };
    let table = spectrum_table(&report.closed_form);
    Ok(Output::json(&report).with_table(table))
}

#[derive(Serialize)]
struct SubdivisionReport {
    algebraic_connectivity: Gap,
    max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u32>,
    bound: f64,
    measured: Gap,
    subdivided_vertices: usize,
}

pub fn bound_subdivision(a: &SubdivisionArgs) -> CliResult<Output> {
    let g = load_graph(&a.graph)?;
    let a_g = algebraic_connectivity(&g);
    let Some(a_value) = a_g.finite() else {
        return Err(CliError::Usage("graph needs at least two vertices".into()));
    };
    let delta = g.max_degree();
    let (bound, h) = match (a.m, a.k) {
        (Some(m), _) => {
            let counts = g.edges().iter().map(|&e| (e, m)).collect();
            (subdivision_bound(a_value, delta, m), subdivide(&g, &counts)?)
        }
        (None, Some(k)) => (
            iterated_subdivision_bound(a_value, delta, k),
            iterated_subdivision(&g, k as usize),
        ),
        (None, None) => return Err(CliError::Usage("pass --m or --k".into())),
    };
    Ok(Output::json(&SubdivisionReport {
        algebraic_connectivity: a_g,
        max_degree: delta,
        m: a.m,
        k: a.k,
        bound,
        measured: algebraic_connectivity(&h),
        subdivided_vertices: h.num_vertices(),
    }))
}

#[derive(Serialize)]
struct ConstructReport {
    d: usize,
    k: usize,
    n: usize,
    num_vertices: usize,
    num_edges: usize,
    certificate: BoundReport,
    files: Vec<String>,
}

pub fn construct(a: &ConstructArgs) -> CliResult<Output> {
    let e = build_k_regular(a.n, a.d, a.k, a.seed)?;
    let mut certificate = certify(&e.graph, &e.partition, a.d)?;
    certificate.partition = None;
    let mut files = Vec::new();
    let mut write = |suffix: &str, body: String| -> CliResult<()> {
        let mut name = a.prefix.as_os_str().to_os_string();
        name.push(suffix);
        let path = std::path::PathBuf::from(name);
        write_atomic(&path, body.as_bytes())?;
        files.push(path.display().to_string());
        Ok(())
    };
    write(".edges", write_edge_list(&e.graph))?;
    write(".partition", write_partition(&e.partition))?;
    let mut blueprint = serde_json::to_string_pretty(&e.blueprint).expect("blueprint serializes");
    blueprint.push('\n');
    write(".blueprint.json", blueprint)?;
    Ok(Output::json(&ConstructReport {
        d: a.d,
        k: e.blueprint.k,
        n: a.n,
        num_vertices: e.graph.num_vertices(),
        num_edges: e.graph.num_edges(),
        certificate,
        files,
    }))
}

pub fn sweep(a: &SweepArgs) -> CliResult<Output> {
    if a.n_min > a.n_max {
        return Err(CliError::Usage("--n-min exceeds --n-max".into()));
    }
    let ns: Vec<usize> = (a.n_min..=a.n_max).collect();
    let c = calibrate(a.d, a.k, &ns, a.seed)?;
    let table = Table {
        header: vec!["n", "num_vertices", "certified"],
        rows: c
            .points
            .iter()
            .map(|p| vec![p.n.to_string(), p.num_vertices.to_string(), p.certified.to_string()])
            .collect(),
    };
    Ok(Output::json(&c).with_table(table))
}

#[derive(Serialize)]
struct OptimizeReport {
    best_value: f64,
    converged: bool,
    iterations: usize,
    restart: usize,
    subgradient_steps: usize,
    best_embedding: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trace: Option<Vec<TraceEntry>>,
}

pub fn optimize(a: &OptimizeArgs) -> CliResult<Output> {
    let g = load_graph(&a.graph)?;
    let cfg = AscentConfig {
        steps: a.steps,
        step_size: a.step_size,
        restarts: a.restarts,
        seed: a.seed,
        tol: a.tol,
        multiplicity_tol: a.multiplicity_tol,
    };
    let r = maximize_gap(&g, a.d, &cfg)?;
    if let Some(path) = &a.emit_embedding {
        write_atomic(path, write_embedding(&r.best_embedding).as_bytes())?;
    }
    let table = Table {
        header: vec!["iteration", "value", "step", "subgradient"],
        rows: r
            .trace
            .iter()
            .map(|t| {
                vec![
                    t.iteration.to_string(),
                    t.value.to_string(),
                    t.step.to_string(),
                    t.subgradient.to_string(),
                ]
            })
            .collect(),
    };
    Ok(Output::json(&OptimizeReport {
        best_value: r.best_value,
        converged: r.converged,
        iterations: r.iterations,
        restart: r.restart,
        subgradient_steps: r.subgradient_steps,
        best_embedding: points(&r.best_embedding),
        trace: a.trace.then(|| r.trace.clone()),
    })
    .with_table(table))
}

pub fn generate(a: &GenerateArgs) -> CliResult<String> {
    let g = match a.family {
        Family::Complete => make_complete(a.n)?,
        Family::Star => make_star(a.n, a.d)?,
        Family::Path => make_gen_path(a.n, a.d)?,
        Family::Cycle => make_gen_cycle(a.n, a.d)?,
        Family::BalancedPartition => return Ok(write_partition(&balanced_partition(a.n, a.d)?)),
    };
    Ok(write_edge_list(&g))
}
