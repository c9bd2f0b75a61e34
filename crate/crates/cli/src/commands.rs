use std::fs;
use std::io::Read;

use cliquefam::bounds::{ap_exact_value, applicable_bounds, classify_ap, def_bound, rational_string};
use cliquefam::clique::{associated_r_graph, clique_degrees, count_cliques};
use cliquefam::family::{frankl_family, FranklVariant};
use cliquefam::graph::{
    blown_turan, complete, ekr_extremal, extremal_ap, hm_extremal, single_size_construction, turan,
    ConstructionParams,
};
use cliquefam::intersect::{
    family_mod_q_ok, intersection_spectrum, is_l_intersecting, is_nontrivial_t_intersecting,
    is_t_cover_free, is_t_intersecting,
};
use cliquefam::repro::{format_table, run_selected, ReproConfig};
use cliquefam::search::{exact_cover_free, exact_phi, exact_psi, SearchConfig, Witness};
use cliquefam::structure::{
    atoms, check_furedi_properties, core_collection, cover_families, default_cover_threshold,
    default_sunflower_threshold, heavy_family_span, hm_decomposition, max_sunflower_with_core,
    prune_low_degree, verify_atom_claims, verify_quotient_claims, verify_sunflower_claims,
};
use cliquefam::{graph6, BitSet, Graph, IntersectSpec, SetFamily};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::{
    AnalyzeArgs, BoundsArgs, ConstructArgs, CountArgs, InFormat, InputArgs, Kind, Mode, OutFormat,
    Property, ReproArgs, SearchArgs, Variant, VerifyArgs,
};

pub struct Output {
    pub stdout: String,
    pub code: u8,
}

type CliResult = Result<Output, String>;

fn record(subcommand: &str, params: &impl Serialize, result: Value) -> String {
    let rec = json!({
        "tool_version": env!("CARGO_PKG_VERSION"),
        "subcommand": subcommand,
        "params": serde_json::to_value(params).unwrap_or(Value::Null),
        "result": result,
    });
    serde_json::to_string_pretty(&rec).expect("JSON values serialise") + "\n"
}

fn ok(stdout: String) -> CliResult {
    Ok(Output { stdout, code: 0 })
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialise")
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, String> {
    v.ok_or_else(|| format!("--{flag} is required here"))
}

fn parse_list(text: &str) -> Result<Vec<usize>, String> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("'{s}' is not a non-negative integer")))
        .collect()
}

/// `--L` when given, otherwise `[t, r−1]` from `--t`.
fn spec_from(r: usize, l: Option<&str>, t: Option<usize>) -> Result<IntersectSpec, String> {
    match (l, t) {
        (Some(l), _) => IntersectSpec::parse(r, l).map_err(err),
        (None, Some(t)) => IntersectSpec::t_intersecting(r, t).map_err(err),
        (None, None) => Err("one of --L or --t is required".into()),
    }
}

enum Input {
    Graph(Graph),
    Family(SetFamily),
}

fn read_text(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn looks_like_family(text: &str) -> bool {
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .is_some_and(|l| {
            let toks: Vec<&str> = l.split_whitespace().collect();
            toks.len() == 3 && toks.iter().all(|t| t.parse::<usize>().is_ok())
        })
}

fn read_input(args: &InputArgs) -> Result<Input, String> {
    let text = read_text(&args.input)?;
    let family = match args.input_format {
        InFormat::Family => true,
        InFormat::G6 => false,
        InFormat::Auto => looks_like_family(&text),
    };
    if family {
        Ok(Input::Family(SetFamily::from_text(&text).map_err(err)?))
    } else {
        Ok(Input::Graph(graph6::decode(&text).map_err(err)?))
    }
}

fn read_graph(args: &InputArgs) -> Result<Graph, String> {
    match read_input(args)? {
        Input::Graph(g) => Ok(g),
        Input::Family(_) => Err("this subcommand needs a graph6 input".into()),
    }
}

fn graph_summary(g: &Graph, r: Option<usize>) -> Value {
    let mut m = Map::new();
    m.insert("n".into(), json!(g.n()));
    m.insert("edge_count".into(), json!(g.edge_count()));
    m.insert("graph6".into(), json!(graph6::encode(g)));
    m.insert("edges".into(), json!(g.edges()));
    if let Some(r) = r {
        m.insert("r".into(), json!(r));
        m.insert("clique_count".into(), json!(count_cliques(g, r).to_string()));
    }
    Value::Object(m)
}

pub fn construct(a: ConstructArgs) -> CliResult {
    let mut extra = Map::new();
    let built: Input = match a.kind {
        Kind::Ap => {
            let (n, r) = (need(a.n, "n")?, need(a.r, "r")?);
            let l = a.l.as_deref().ok_or("--L is required for --kind ap")?;
            let spec = IntersectSpec::parse(r, l).map_err(err)?;
            let p = ConstructionParams::new(n, &spec).map_err(err)?;
            extra.insert(
                "construction".into(),
                json!({"ell1": p.ell1, "s": p.s, "d": p.d, "m": p.m, "lambda": p.lambda, "s1": p.s1}),
            );
            Input::Graph(extremal_ap(n, &spec).map_err(err)?)
        }
        Kind::Hm => Input::Graph(
            hm_extremal(need(a.n, "n")?, need(a.r, "r")?, need(a.t, "t")?).map_err(err)?,
        ),
        Kind::Ekr => Input::Graph(
            ekr_extremal(need(a.n, "n")?, need(a.r, "r")?, need(a.t, "t")?).map_err(err)?,
        ),
        Kind::Single => Input::Graph(
            single_size_construction(need(a.n, "n")?, need(a.r, "r")?, need(a.ell, "ell")?)
                .map_err(err)?,
        ),
        Kind::Turan => {
            let parts = a.s.or(a.t).ok_or("--s (number of parts) is required")?;
            if parts == 0 {
                return Err("--s must be positive".into());
            }
            Input::Graph(turan(need(a.n, "n")?, parts))
        }
        Kind::Blowup => {
            let (m, s, d) = (need(a.m, "m")?, need(a.s, "s")?, need(a.d, "d")?);
            if s == 0 {
                return Err("--s must be positive".into());
            }
            Input::Graph(blown_turan(m, s, d))
        }
        Kind::Complete => Input::Graph(complete(need(a.n, "n")?)),
        Kind::Frankl => {
            let variant = match a.variant {
                Variant::Star => FranklVariant::Star,
                Variant::Ball => FranklVariant::Ball,
            };
            Input::Family(
                frankl_family(need(a.n, "n")?, need(a.r, "r")?, need(a.t, "t")?, variant)
                    .map_err(err)?,
            )
        }
    };
    match (built, a.format) {
        (Input::Graph(g), OutFormat::G6) => ok(graph6::encode(&g) + "\n"),
        (Input::Graph(g), OutFormat::Family) => {
            let r = a.r.ok_or("--r is required to print the clique family")?;
            ok(associated_r_graph(&g, r).to_text())
        }
        (Input::Graph(g), OutFormat::Json) => {
            let mut v = graph_summary(&g, a.r);
            if let Value::Object(m) = &mut v {
                m.extend(extra);
            }
            ok(record("construct", &a, v))
        }
        (Input::Family(f), OutFormat::Family) => ok(f.to_text()),
        (Input::Family(f), OutFormat::Json) => ok(record(
            "construct",
            &a,
            json!({"n": f.ground_n(), "r": f.r(), "size": f.len(), "edges": f.edge_lists()}),
        )),
        (Input::Family(_), OutFormat::G6) => Err("a set family has no graph6 form".into()),
    }
}

pub fn count(a: CountArgs) -> CliResult {
    let g = read_graph(&a.input)?;
    let mut v = json!({"n": g.n(), "r": a.r, "count": count_cliques(&g, a.r).to_string()});
    if a.list {
        v["cliques"] = json!(associated_r_graph(&g, a.r).edge_lists());
        v["degrees"] = json!(clique_degrees(&g, a.r).iter().map(u128::to_string).collect::<Vec<_>>());
    }
    ok(record("count", &a, v))
}

pub fn verify(a: VerifyArgs) -> CliResult {
    let family = match read_input(&a.input)? {
        Input::Family(f) => {
            if a.r.is_some_and(|r| r != f.r()) {
                return Err(format!("--r differs from the family's uniformity {}", f.r()));
            }
            f
        }
        Input::Graph(g) => associated_r_graph(&g, a.r.ok_or("--r is required for graph input")?),
    };
    let r = family.r();
    let spectrum: Vec<usize> = intersection_spectrum(&family).into_iter().collect();
    let mut v = match a.property {
        Property::LIntersecting => {
            let spec = spec_from(r, a.l.as_deref(), a.t)?;
            let res = is_l_intersecting(&family, &spec).map_err(err)?;
            json!({"holds": res.holds, "witness": res.witness, "vacuous": res.vacuous, "L": spec.l()})
        }
        Property::TIntersecting => {
            let t = need(a.t, "t")?;
            let res = is_t_intersecting(&family, t);
            json!({"holds": res.holds, "witness": res.witness, "vacuous": res.vacuous})
        }
        Property::Nontrivial => {
            let t = need(a.t, "t")?;
            let res = is_nontrivial_t_intersecting(&family, t);
            json!({
                "holds": res.holds,
                "witness": res.t_intersecting.witness,
                "t_intersecting": res.t_intersecting.holds,
                "common_intersection": res.common,
            })
        }
        Property::CoverFree => {
            let t = need(a.t, "t")?;
            let res = is_t_cover_free(&family, t);
            json!({"holds": res.holds, "witness": res.witness})
        }
        Property::ModQ => {
            let q = need(a.q, "q")?;
            if q == 0 {
                return Err("--q must be positive".into());
            }
            let residues = parse_list(a.residues.as_deref().ok_or("--residues is required")?)?;
            let res = family_mod_q_ok(&family, q, &residues);
            json!({"holds": res.holds, "witness": res.witness, "vacuous": res.vacuous})
        }
    };
    v["property"] = to_value(&a.property);
    v["spectrum"] = json!(spectrum);
    v["edge_count"] = json!(family.len());
    ok(record("verify", &a, v))
}

pub fn analyze(a: AnalyzeArgs) -> CliResult {
    let g = read_graph(&a.input)?;
    let n = g.n();
    let r = a.r;
    let h = associated_r_graph(&g, r);
    let mut v = json!({
        "n": n,
        "r": r,
        "clique_count": h.len(),
        "spectrum": intersection_spectrum(&h).into_iter().collect::<Vec<_>>(),
    });
    let set = |list: &str| -> Result<BitSet, String> {
        let items = parse_list(list)?;
        if let Some(&x) = items.iter().find(|&&x| x >= n) {
            return Err(format!("vertex {x} outside [0, {n})"));
        }
        Ok(BitSet::from_iter(n, items))
    };
    if let Some(core) = &a.sunflower_core {
        v["sunflower"] = to_value(&max_sunflower_with_core(&h, &set(core)?));
    }
    if let Some(ell) = a.sunflower_ell {
        let threshold = a.sunflower_threshold.unwrap_or_else(|| default_sunflower_threshold(r));
        v["core_collection"] = to_value(&core_collection(&h, ell, threshold));
        v["sunflower_claims"] = to_value(&verify_sunflower_claims(&h, ell, threshold));
    }
    if let Some(d) = a.atoms_d {
        if d == 0 {
            return Err("--atoms-d must be positive".into());
        }
        let at = atoms(&h, d);
        v["atoms"] = to_value(&at);
        if at.atoms.cells.iter().all(|c| c.len() == d) {
            v["quotient_claims"] = to_value(&verify_quotient_claims(&g, r, d, &at.atoms).map_err(err)?);
        } else {
            v["quotient_claims"] = json!("atoms have unequal sizes; quotient claims need equal cells");
        }
        if r % d == 0 {
            v["atom_claims"] = to_value(&verify_atom_claims(&g, r / d, d).map_err(err)?);
        }
    }
    if let Some(th) = a.prune_threshold {
        let res = prune_low_degree(&g, r, th);
        v["prune"] = json!({
            "report": to_value(&res),
            "graph6": graph6::encode(&res.graph),
        });
    }
    if let Some(t) = a.cover_t {
        let threshold = a.cover_threshold.unwrap_or_else(|| default_cover_threshold(n, r, t));
        let cf = cover_families(&g, r, t, threshold).map_err(err)?;
        let span = heavy_family_span(&cf, t);
        v["cover_families"] = to_value(&cf);
        v["heavy_span"] = json!(span);
        if let Some(d) = span {
            if r >= t + 2 {
                let dec = hm_decomposition(&g, r, t, &BitSet::from_iter(n, d)).map_err(err)?;
                v["hm_decomposition"] = to_value(&dec);
            }
        }
    }
    if a.furedi {
        let spec = IntersectSpec::parse(r, a.l.as_deref().ok_or("--furedi needs --L")?).map_err(err)?;
        v["structure_properties"] = to_value(&check_furedi_properties(&h, &spec));
    }
    ok(record("analyze", &a, v))
}

pub fn bounds(a: BoundsArgs) -> CliResult {
    let spec = IntersectSpec::parse(a.r, &a.l).map_err(err)?;
    let v = json!({
        "n": a.n,
        "r": a.r,
        "L": spec.l(),
        "classification": to_value(&classify_ap(&spec)),
        "bounds": to_value(&applicable_bounds(a.n, &spec)),
    });
    ok(record("bounds", &a, v))
}

pub fn search(a: SearchArgs) -> CliResult {
    let mut cfg = SearchConfig::default();
    if let Some(b) = a.budget {
        cfg.budget = b;
    }
    if let Some(t) = a.threads {
        if t == 0 {
            return Err("--threads must be at least 1".into());
        }
        cfg.threads = Some(t);
    }
    if let Some(m) = a.max_n {
        cfg.max_graph_n = m;
    }
    if let Some(m) = a.max_subsets {
        cfg.max_family_subsets = m;
    }
    let mut extra = Map::new();
    let res = match a.mode {
        Mode::Psi | Mode::Phi => {
            let spec = spec_from(a.r, a.l.as_deref(), a.t)?;
            let res = if matches!(a.mode, Mode::Psi) {
                exact_psi(a.n, &spec, &cfg)
            } else {
                exact_phi(a.n, &spec, &cfg)
            }
            .map_err(err)?;
            extra.insert("def_bound".into(), json!(rational_string(&def_bound(a.n, &spec).value)));
            if let (Mode::Psi, Ok(ap)) = (a.mode, ap_exact_value(a.n, &spec)) {
                let ap = ap.value.to_integer();
                extra.insert("construction_value".into(), json!(ap.to_string()));
                extra.insert(
                    "gap_to_construction".into(),
                    json!((BigInt::from(res.value.clone()) - ap).to_string()),
                );
            }
            res
        }
        Mode::Coverfree => exact_cover_free(a.n, a.r, need(a.t, "t")?, &cfg).map_err(err)?,
    };
    if let Some(path) = &a.emit_witness {
        let text = match &res.witness {
            Witness::Graph(g) => graph6::encode(g) + "\n",
            Witness::Family(f) => f.to_text(),
        };
        fs::write(path, text).map_err(|e| format!("cannot write {path}: {e}"))?;
    }
    let mut v = to_value(&res);
    if let Value::Object(m) = &mut v {
        m.extend(extra);
    }
    Ok(Output {
        stdout: record("search", &a, v),
        code: if res.exhaustive { 0 } else { 3 },
    })
}

pub fn repro(a: ReproArgs) -> CliResult {
    let mut cfg = ReproConfig {
        seed: a.seed,
        ..ReproConfig::default()
    };
    if let Some(t) = a.threads {
        if t == 0 {
            return Err("--threads must be at least 1".into());
        }
        cfg.search.threads = Some(t);
    }
    let reports = run_selected(&a.only, &cfg);
    if reports.is_empty() {
        return Err(format!("no criteria match {:?}", a.only));
    }
    let all = reports.iter().all(|r| r.passed);
    let stdout = if a.json {
        record("repro", &a, json!({"all_passed": all, "criteria": to_value(&reports)}))
    } else {
        format_table(&reports)
    };
    Ok(Output {
        stdout,
        code: if all { 0 } else { 1 },
    })
}
