use std::path::{Path, PathBuf};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use toroid_core::congraph::{
    build_graph, build_graph_merging_coplanar, check_m_division, is_single_cycle, validate_decomposition,
    ConnectionGraph, Decomposition, MDivisionVerdict,
};
use toroid_core::constructions::{
    attach_simple, bipyramid, chain_csaszar, chain_csaszar_shared_tet, csaszar, cycle_closure, pyramid,
    schoenhardt, toroid_p9, ConstructionError, DEFAULT_TWIST,
};
use toroid_core::engine::{
    certify_minimal, is_valid_triangulation, lower_bound, search, EngineError, SearchMode, SearchStatus,
    Triangulation,
};
use toroid_core::exact::Rat;
use toroid_core::surface::{
    edge_graph_is_complete, parse_off_with, reflex_edges, validate, write_off, FaceImport, SurfaceReport, TriMesh,
};

use crate::report::{read_input, report, sha256_hex, to_value, Failure, Outcome, BUDGET, NEGATIVE, OK};
use crate::{Cli, Command, Family, Mode};

pub fn run(cli: &Cli, argv: &[String]) -> Result<Outcome, Failure> {
    match &cli.command {
        Command::Generate { family, n, p, k, twist, space_base } => {
            generate(cli, argv, *family, *n, *p, *k, twist.as_deref(), *space_base)
        }
        Command::Inspect { mesh, fan_polygons } => inspect(cli, argv, mesh, *fan_polygons),
        Command::Triangulate { mesh, mode, fan_polygons } => triangulate(cli, argv, mesh, *mode, *fan_polygons),
        Command::Verify { mesh, tets } => verify(argv, mesh, tets),
        Command::Certify { mesh, tets } => certify(argv, mesh, tets),
        Command::Bound { n, p } => {
            let bound = lower_bound(*n, *p);
            Ok(Outcome {
                report: report(argv, vec![], json!({ "n": n, "p": p, "lower_bound": bound })),
                summary: bound.to_string(),
                code: OK,
            })
        }
        Command::Congraph { decomposition, mesh, check_m, merge_coplanar, sharing_rule } => {
            congraph(cli, argv, decomposition, mesh.as_deref(), *check_m, *merge_coplanar, *sharing_rule)
        }
    }
}

fn construction_failure(e: ConstructionError) -> Failure {
    match e {
        ConstructionError::BadParams(_) => Failure::usage(e.to_string()),
        _ => Failure { code: NEGATIVE, message: e.to_string() },
    }
}

fn engine_failure(e: EngineError) -> Failure {
    Failure::usage(e.to_string())
}

fn need(value: Option<usize>, flag: &str, family: &str) -> Result<usize, Failure> {
    value.ok_or_else(|| Failure::usage(format!("{family} needs --{flag}")))
}

fn parse_twist(text: Option<&str>) -> Result<(Rat, Rat), Failure> {
    let Some(text) = text else {
        let (c, s, d) = DEFAULT_TWIST;
        let r = |v| Rat::new(v, d).expect("nonzero denominator");
        return Ok((r(c), r(s)));
    };
    let (c, s) = text.split_once(',').ok_or_else(|| Failure::usage("--twist expects `c,s`"))?;
    let parse = |v: &str| v.trim().parse::<Rat>().map_err(|e| Failure::usage(format!("--twist: {e}")));
    Ok((parse(c)?, parse(s)?))
}

fn out_dir(cli: &Cli) -> Result<PathBuf, Failure> {
    let dir = cli.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
    Ok(dir)
}

/// Writes a file and returns its record for the report.
fn emit(dir: &Path, name: &str, contents: &str) -> Result<Value, Failure> {
    let path = dir.join(name);
    std::fs::write(&path, contents).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))?;
    Ok(json!({ "path": path.display().to_string(), "sha256": sha256_hex(contents.as_bytes()) }))
}

fn graph_stats(g: &ConnectionGraph) -> Value {
    json!({
        "nodes": g.nodes,
        "edges": g.edges.len(),
        "cycle_rank": g.cycle_rank,
        "connected": g.is_connected(),
        "single_cycle": is_single_cycle(g),
    })
}

#[allow(clippy::too_many_arguments)]
fn generate(
    cli: &Cli,
    argv: &[String],
    family: Family,
    n: Option<usize>,
    p: Option<usize>,
    k: Option<usize>,
    twist: Option<&str>,
    space_base: bool,
) -> Result<Outcome, Failure> {
    let mut extra = Vec::new();
    let out = match family {
        Family::Pyramid => pyramid(need(n, "n", "pyramid")?, !space_base),
        Family::Bipyramid => bipyramid(need(n, "n", "bipyramid")?).map(|b| {
            extra.push(("two-pyramids", b.two_pyramids));
            extra.push(("around-axis", b.around_axis));
            b.output
        }),
        Family::Schoenhardt => {
            let (c, s) = parse_twist(twist)?;
            schoenhardt(&c, &s)
        }
        Family::Csaszar => csaszar(),
        Family::ToroidP9 => toroid_p9(),
        Family::Chain => chain_csaszar(need(p, "p", "chain")?),
        Family::ChainAttach => {
            let k = need(k, "k", "chain+attach")?;
            chain_csaszar(need(p, "p", "chain+attach")?).and_then(|base| attach_simple(&base, k))
        }
        Family::ChainSharedTet => chain_csaszar_shared_tet(need(p, "p", "chain-shared-tet")?),
        Family::CycleClosure => cycle_closure(need(p, "p", "cycle-closure")?),
    }
    .map_err(construction_failure)?;
    let label = match &out.mesh {
        Some(m) => m.label().to_string(),
        None => format!("{}-{}", out.family, p.unwrap_or(0)),
    };
    let dir = out_dir(cli)?;
    let mut files = Vec::new();
    if let Some(m) = &out.mesh {
        files.push(emit(&dir, &format!("{label}.off"), &write_off(m))?);
    }
    if let Some(w) = &out.witness {
        files.push(emit(&dir, &format!("{label}.witness.json"), &w.to_json())?);
    }
    for (name, t) in &extra {
        files.push(emit(&dir, &format!("{label}.{name}.json"), &t.to_json())?);
    }
    if let Some(tets) = &out.combinatorial_tets {
        let complex = Triangulation::new(label.clone(), tets.clone());
        files.push(emit(&dir, &format!("{label}.complex.json"), &complex.to_json())?);
    }
    if let Some(d) = &out.decomposition {
        files.push(emit(&dir, &format!("{label}.decomposition.json"), &d.to_json())?);
    }
    if let Some(g) = &out.graph {
        files.push(emit(&dir, &format!("{label}.graph.json"), &g.to_json())?);
    }
    let result = json!({
        "family": out.family,
        "label": label,
        "vertices": out.vertices,
        "geometric": out.mesh.as_ref().map(TriMesh::is_geometric),
        "claimed_genus": out.claimed_genus,
        "claimed_tmin": out.claimed_tmin,
        "lower_bound": lower_bound(out.vertices, out.claimed_genus),
        "witness_size": out.witness.as_ref().map(Triangulation::len),
        "combinatorial_tets": out.combinatorial_tets.as_ref().map(Vec::len),
        "graph": out.graph.as_ref().map(graph_stats),
        "files": files,
    });
    let summary = format!(
        "{label}: {} vertices, genus {}, witness {}",
        out.vertices,
        out.claimed_genus,
        out.witness.as_ref().map_or("none".to_string(), |w| format!("{} tets", w.len()))
    );
    Ok(Outcome { report: report(argv, vec![], result), summary, code: OK })
}

fn load_mesh(path: &Path, fan_polygons: bool) -> Result<(TriMesh, Value), Failure> {
    let (text, digest) = read_input(path)?;
    let import = if fan_polygons { FaceImport::FanConvexPlanar } else { FaceImport::Strict };
    let mesh = parse_off_with(&text, import).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((mesh, digest))
}

fn load_tets(path: &Path) -> Result<(Triangulation, Value), Failure> {
    let (text, digest) = read_input(path)?;
    let t = Triangulation::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    Ok((t, digest))
}

/// Validates a copy with shuffled vertex labels; counts, genus, embedding
/// and volume must not change.
fn relabel_check(mesh: &TriMesh, original: &SurfaceReport, seed: u64) -> bool {
    let n = mesh.n_vertices();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let coords = mesh.coords().map(|c| {
        let mut moved = c.to_vec();
        for (v, &to) in perm.iter().enumerate() {
            moved[to] = c[v].clone();
        }
        moved
    });
    let faces = mesh.faces().iter().map(|f| f.map(|v| perm[v])).collect();
    TriMesh::new(mesh.label(), n, coords, faces)
        .ok()
        .and_then(|m| validate(&m).ok())
        .is_some_and(|r| &r == original)
}

fn inspect(cli: &Cli, argv: &[String], path: &Path, fan_polygons: bool) -> Result<Outcome, Failure> {
    let (mesh, digest) = load_mesh(path, fan_polygons)?;
    let (result, summary, code) = match validate(&mesh) {
        Ok(r) => {
            let reflex = mesh.is_geometric().then(|| reflex_edges(&mesh).map(|e| e.len()).unwrap_or(0));
            let mut result = json!({
                "label": mesh.label(),
                "valid": true,
                "surface": to_value(&r),
                "complete_edge_graph": edge_graph_is_complete(&mesh),
                "reflex_edges": reflex,
            });
            if let Some(seed) = cli.seed {
                result["relabel_check"] = json!({ "seed": seed, "consistent": relabel_check(&mesh, &r, seed) });
            }
            let summary = format!(
                "V={} E={} F={} chi={} genus={} embedded={}",
                r.vertices,
                r.edges,
                r.faces,
                r.euler_characteristic,
                r.genus.map_or("none".into(), |g| g.to_string()),
                r.embedded.map_or("n/a".into(), |e| e.to_string()),
            );
            (result, summary, OK)
        }
        Err(e) => {
            (json!({ "label": mesh.label(), "valid": false, "error": e.to_string() }), format!("invalid: {e}"), NEGATIVE)
        }
    };
    Ok(Outcome { report: report(argv, vec![digest], result), summary, code })
}

fn triangulate(cli: &Cli, argv: &[String], path: &Path, mode: Mode, fan_polygons: bool) -> Result<Outcome, Failure> {
    let (mesh, digest) = load_mesh(path, fan_polygons)?;
    let mode = match mode {
        Mode::Any => SearchMode::Any,
        Mode::Exhaustive => SearchMode::Exhaustive,
    };
    let r = search(&mesh, mode, cli.budget).map_err(engine_failure)?;
    let mut result = to_value(&r);
    if let (Some(dir), Some(w)) = (&cli.out, &r.witness_min) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::usage(format!("cannot create {}: {e}", dir.display())))?;
        result["files"] = json!([emit(dir, &format!("{}.witness.json", mesh.label()), &w.to_json())?]);
    }
    let code = match r.status {
        SearchStatus::Found | SearchStatus::Exhausted => OK,
        SearchStatus::NotTriangulable => NEGATIVE,
        SearchStatus::BudgetExceeded => BUDGET,
    };
    let show = |v: Option<usize>| v.map_or("-".to_string(), |v| v.to_string());
    let summary = format!(
        "{}: {:?}, {} candidates, t_min {}, t_max {}, {} nodes",
        mesh.label(),
        r.status,
        r.candidates,
        show(r.t_min),
        show(r.t_max),
        r.nodes_explored
    );
    Ok(Outcome { report: report(argv, vec![digest], result), summary, code })
}

fn verify(argv: &[String], mesh_path: &Path, tets_path: &Path) -> Result<Outcome, Failure> {
    let (mesh, d1) = load_mesh(mesh_path, false)?;
    let (t, d2) = load_tets(tets_path)?;
    let check = is_valid_triangulation(&mesh, &t.tets).map_err(engine_failure)?;
    let summary = match &check.defect {
        None => format!("valid triangulation with {} tets", check.tets),
        Some(d) => format!("invalid: {d}"),
    };
    let code = if check.valid { OK } else { NEGATIVE };
    Ok(Outcome { report: report(argv, vec![d1, d2], to_value(&check)), summary, code })
}

fn certify(argv: &[String], mesh_path: &Path, tets_path: &Path) -> Result<Outcome, Failure> {
    let (mesh, d1) = load_mesh(mesh_path, false)?;
    let (t, d2) = load_tets(tets_path)?;
    let (result, summary, code) = match certify_minimal(&mesh, &t) {
        Ok(c) => {
            let summary = format!("{:?}: {} tets, lower bound {}", c.verdict, c.size, c.lower_bound);
            (to_value(&c), summary, OK)
        }
        Err(EngineError::InvalidWitness(d)) => {
            (json!({ "verdict": "invalid", "defect": to_value(&d) }), format!("invalid: {d}"), NEGATIVE)
        }
        Err(e) => return Err(engine_failure(e)),
    };
    Ok(Outcome { report: report(argv, vec![d1, d2], result), summary, code })
}

fn congraph(
    cli: &Cli,
    argv: &[String],
    path: &Path,
    mesh_path: Option<&Path>,
    check_m: bool,
    merge_coplanar: bool,
    sharing_rule: bool,
) -> Result<Outcome, Failure> {
    let (text, digest) = read_input(path)?;
    let d = Decomposition::from_json(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    let mut inputs = vec![digest];
    let mesh = match mesh_path {
        Some(p) => {
            let (m, digest) = load_mesh(p, false)?;
            inputs.push(digest);
            Some(m)
        }
        None => None,
    };
    let graph = match (&mesh, merge_coplanar) {
        (Some(m), true) => build_graph_merging_coplanar(&d, m).map_err(|e| Failure::usage(e.to_string()))?,
        _ => build_graph(&d),
    };
    let mut result = json!({ "graph": to_value(&graph), "stats": graph_stats(&graph) });
    let mut summary = format!(
        "{} pieces, {} contacts, cycle rank {}, single cycle {}",
        graph.nodes,
        graph.edges.len(),
        graph.cycle_rank,
        is_single_cycle(&graph)
    );
    let mut code = OK;
    if let Some(m) = &mesh {
        let check = validate_decomposition(m, &d, sharing_rule).map_err(|e| Failure::usage(e.to_string()))?;
        if let Some(defect) = &check.defect {
            summary.push_str(&format!("\ninvalid decomposition: {defect}"));
            code = NEGATIVE;
        }
        result["decomposition"] = to_value(&check);
        if check_m && check.valid {
            let md = check_m_division(m, &d, cli.budget).map_err(|e| Failure::usage(e.to_string()))?;
            summary.push_str(&format!("\n{:?}", md.verdict));
            code = match md.verdict {
                MDivisionVerdict::MDivision => OK,
                MDivisionVerdict::NotMDivision => NEGATIVE,
                MDivisionVerdict::Undecided => BUDGET,
            };
            result["m_division"] = to_value(&md);
        }
    }
    Ok(Outcome { report: report(argv, inputs, result), summary, code })
}
