//! Subcommand implementations. Each returns a JSON value and a text rendering.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::{json, Value};
use vgit::hyperbolic::boundary::ParabolicSummary;
use vgit::hyperbolic::{
    baily_borel_boundary, default_base_vector, parabolic_subdiagrams, vinberg, BoundaryReport, NormMenu,
    VinbergBudget,
};
use vgit::lattice::{discriminant_form, embeds_primitively_k3, in_genus, overlattices, roots, GramLattice};
use vgit::moduli::{config_occurs, trace_summary, SingularityConfig, Verdict};
use vgit::monoform::{support, Configuration, LineVar, Monomial};
use vgit::stability::{
    diagonal_interval, interval_for_configuration, lct_quasihomogeneous, stability_threshold, Pair,
    WeightedOrderInput,
};
use vgit::walls::candidate_walls;
use vgit::Q;

use crate::cache::Cache;
use crate::form::{parse_form, parse_germ, AffineMap};
use crate::{
    verify, BoundaryArgs, CliError, Command, IntervalArgs, LatticeAction, LctArgs, Report, Suite, ThresholdArgs,
    VinbergArgs,
};

pub fn dispatch(cmd: &Command, cache: &Cache) -> Result<Report, CliError> {
    match cmd {
        Command::Walls { degree } => walls(*degree, cache),
        Command::Interval(args) => interval(args),
        Command::Threshold(args) => threshold(args),
        Command::Lct(args) => lct(args),
        Command::Lattice { action } => lattice(action, cache),
        Command::Vinberg(args) => vinberg_cmd(args),
        Command::Boundary(args) => boundary(args),
        Command::Occurs { roots, trace } => occurs(roots, *trace),
        Command::Verify { suite } => verify_cmd(*suite),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize to JSON")
}

fn strings(ms: &[Monomial]) -> Vec<String> {
    ms.iter().map(Monomial::to_string).collect()
}

fn str_of(v: &Value) -> &str {
    v.as_str().unwrap_or("")
}

fn walls(d: u32, cache: &Cache) -> Result<Report, CliError> {
    let v = cache.get_or_compute("walls", &d.to_string(), || Ok::<_, CliError>(to_value(&candidate_walls(d))))?;
    let mut text = String::new();
    let realized = v["realized"].as_array().cloned().unwrap_or_default();
    let ts: Vec<&str> = realized.iter().map(|w| str_of(&w["t"])).collect();
    let _ = writeln!(text, "degree {d}: {} realized walls", realized.len());
    let _ = writeln!(text, "  {}", ts.join(", "));
    for w in &realized {
        let curve: Vec<&str> = w["witness"]["curve"].as_array().map(|a| a.iter().map(str_of).collect()).unwrap_or_default();
        let _ = writeln!(
            text,
            "  t = {:<6} r = {:<6} {:<8} line {}  curve {}",
            str_of(&w["t"]),
            str_of(&w["r"]),
            str_of(&w["witness"]["side"]),
            str_of(&w["witness"]["line"]),
            curve.join(" + ")
        );
    }
    let raw = v["raw"].as_array().map_or(0, Vec::len);
    let _ = writeln!(text, "candidate slopes: {raw}");
    for s in v["surplus"].as_array().into_iter().flatten() {
        let _ = writeln!(text, "  not realized {}: {}", str_of(&s["t"]), str_of(&s["note"]));
    }
    Ok(Report { json: v, text, ok: true })
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn parse_json<T: for<'de> Deserialize<'de>>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Json { path: path.display().to_string(), source })
}

#[derive(Deserialize)]
#[serde(untagged)]
enum CurveInput {
    Exponents(Vec<[u32; 3]>),
    Form(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairFile {
    curve: CurveInput,
    line: LineVar,
}

fn interval(args: &IntervalArgs) -> Result<Report, CliError> {
    let (cfg, interval, diagonal) = if let Some(path) = &args.config {
        let cfg: Configuration = parse_json(path, &read(path)?)?;
        let i = interval_for_configuration(&cfg);
        (cfg, i, false)
    } else {
        let path = args.pair.as_ref().expect("clap requires one input");
        let file: PairFile = parse_json(path, &read(path)?)?;
        let curve = match file.curve {
            CurveInput::Exponents(es) => es.into_iter().map(Monomial::from).collect(),
            CurveInput::Form(text) => parse_form(&text, None)?,
        };
        let pair = Pair::new(curve, file.line)?;
        let i = if args.diagonal {
            diagonal_interval(&pair)
        } else {
            interval_for_configuration(&pair.configuration())
        };
        (pair.configuration(), i, args.diagonal)
    };
    let supp = strings(cfg.curve_support().monomials());
    let json = json!({
        "configuration": to_value(&cfg),
        "support": supp,
        "diagonal": diagonal,
        "interval": to_value(&interval),
    });
    let text = format!(
        "degree {} curve support {} line {}\ninterval {}{}\n",
        cfg.degree(),
        supp.join(" + "),
        cfg.line_support(),
        interval,
        if diagonal { " (diagonal)" } else { "" }
    );
    Ok(Report { json, text, ok: true })
}

fn threshold(args: &ThresholdArgs) -> Result<Report, CliError> {
    let affine = args.affine.then(|| AffineMap {
        x_to: args.x_to,
        y_to: args.y_to,
        degree: args.degree.expect("clap requires --degree"),
    });
    let ms = parse_form(&args.monomials, affine)?;
    let tp = stability_threshold(&ms)?;
    let supp = strings(support(&ms)?.monomials());
    let json = json!({
        "monomials": strings(&ms),
        "support": supp,
        "threshold": tp.to_string(),
    });
    let text = format!("support {}\nt_p = {tp}\n", supp.join(" + "));
    Ok(Report { json, text, ok: true })
}

fn lct(args: &LctArgs) -> Result<Report, CliError> {
    let (w1, w2) = args.weights;
    let input = WeightedOrderInput::new(w1, w2, parse_germ(&args.form)?)?;
    let lct = lct_quasihomogeneous(&input);
    let mut json = json!({
        "weights": [w1, w2],
        "weighted_order": input.weighted_order(),
        "lct": lct.to_string(),
    });
    let mut text = format!("weighted order {}\nlct = {lct}\n", input.weighted_order());
    if let Some(d) = args.degree {
        let bound = Q::from_integer(3) / lct - Q::from_integer(d);
        json["threshold_bound"] = json!(bound.to_string());
        let _ = writeln!(text, "3/lct - {d} = {bound}");
    }
    Ok(Report { json, text, ok: true })
}

fn integer(x: i128) -> Value {
    i64::try_from(x).map_or_else(|_| json!(x.to_string()), |v| json!(v))
}

fn lattice_header(spec: &str, l: &GramLattice) -> Value {
    let s = l.signature();
    json!({
        "spec": spec,
        "name": l.name(),
        "rank": l.rank(),
        "signature": [s.positive, s.negative],
        "det": integer(l.det()),
    })
}

fn lattice(action: &LatticeAction, cache: &Cache) -> Result<Report, CliError> {
    match action {
        LatticeAction::Disc(a) => {
            let l = GramLattice::parse(&a.spec)?;
            let form = discriminant_form(&l)?.form;
            let q_gens: Vec<String> =
                (0..form.generator_count()).map(|i| form.q_value(&form.generator(i)).to_string()).collect();
            let iso = form.isotropic_elements().len();
            let mut json = lattice_header(&a.spec, &l);
            json["order"] = json!(form.order());
            json["invariant_factors"] = json!(form.invariant_factors());
            json["generator_orders"] = json!(form.orders());
            json["q_generators"] = json!(q_gens);
            json["isotropic_nonzero"] = json!(iso);
            let text = format!(
                "{}: rank {}, det {}\nA_L of order {} with invariant factors {:?}\nq on generators: {}\nnon-zero isotropic elements: {iso}\n",
                l.name(),
                l.rank(),
                l.det(),
                form.order(),
                form.invariant_factors(),
                q_gens.join(", ")
            );
            Ok(Report { json, text, ok: true })
        }
        LatticeAction::Roots(a) => {
            let l = GramLattice::parse(&a.spec)?;
            let input = serde_json::to_string(l.gram()).expect("integers serialize");
            let mut json = cache.get_or_compute("roots", &input, || {
                let r = roots(&l)?;
                Ok::<_, CliError>(json!({
                    "count": r.count(),
                    "type": r.type_string(),
                    "components": r.components.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "simple_roots": r.simple_roots,
                    "roots": r.roots,
                }))
            })?;
            json["spec"] = json!(a.spec);
            let text = format!(
                "{}: {} roots of type {}\n",
                l.name(),
                json["count"],
                str_of(&json["type"])
            );
            Ok(Report { json, text, ok: true })
        }
        LatticeAction::Overlattices(a) => {
            let l = GramLattice::parse(&a.spec)?;
            let mut items = Vec::new();
            let mut text = format!("{}:\n", l.name());
            for o in overlattices(&l)? {
                let root_type = if o.lattice.is_negative_definite() {
                    Some(roots(&o.lattice)?.type_string())
                } else {
                    None
                };
                let _ = writeln!(
                    text,
                    "  |H| = {:<4} det {:<8} generators {:?}{}",
                    o.order(),
                    o.lattice.det(),
                    o.generators,
                    root_type.as_ref().map_or(String::new(), |t| format!("  roots {t}"))
                );
                items.push(json!({
                    "order": o.order(),
                    "generators": o.generators,
                    "gram": o.lattice.gram(),
                    "det": integer(o.lattice.det()),
                    "roots": root_type,
                }));
            }
            let mut json = lattice_header(&a.spec, &l);
            json["overlattices"] = json!(items);
            Ok(Report { json, text, ok: true })
        }
        LatticeAction::Genus { spec, other } => {
            let a = GramLattice::parse(&spec.spec)?;
            let b = GramLattice::parse(other)?;
            let same = in_genus(&a, &b)?;
            let json = json!({
                "lattices": [lattice_header(&spec.spec, &a), lattice_header(other, &b)],
                "in_genus": same,
            });
            let text = format!(
                "{} and {} {} the same genus\n",
                a.name(),
                b.name(),
                if same { "have" } else { "do not have" }
            );
            Ok(Report { json, text, ok: same })
        }
        LatticeAction::Embed(a) => {
            let l = GramLattice::parse(&a.spec)?;
            let verdict = embeds_primitively_k3(&l)?;
            let mut json = lattice_header(&a.spec, &l);
            json["embedding"] = to_value(&verdict);
            let answer = if verdict.is_yes() {
                "yes"
            } else if verdict.is_no() {
                "no"
            } else {
                "undetermined"
            };
            let text = format!("{} embeds primitively in the K3 lattice: {answer} ({})\n", l.name(), verdict.reason());
            Ok(Report { json, text, ok: verdict.is_yes() })
        }
    }
}

fn hyperbolic_inputs(
    spec: &str,
    h: &Option<Vec<i64>>,
    norms: &[i64],
) -> Result<(GramLattice, Vec<i64>, NormMenu), CliError> {
    let l = GramLattice::parse(spec)?;
    let h = match h {
        Some(h) => h.clone(),
        None => default_base_vector(&l)
            .ok_or_else(|| CliError::Usage(format!("no default base vector for `{spec}`; pass --h")))?,
    };
    if let Some(bad) = norms.iter().find(|k| **k <= 0 || **k % 2 != 0) {
        return Err(CliError::Usage(format!("--norms takes positive even values, got {bad}")));
    }
    let mut menu = norms.to_vec();
    menu.sort_unstable();
    menu.dedup();
    Ok((l, h, NormMenu(menu)))
}

fn vinberg_cmd(args: &VinbergArgs) -> Result<Report, CliError> {
    let (l, h, menu) = hyperbolic_inputs(&args.spec, &args.h, &args.norms)?;
    let budget = VinbergBudget { max_roots: args.budget, max_height: args.max_height };
    let run = vinberg(&l, &h, &menu, &budget)?;
    let parabolic: Vec<ParabolicSummary> = if run.stopped {
        parabolic_subdiagrams(&run.diagram, l.rank() - 2).iter().map(ParabolicSummary::from).collect()
    } else {
        Vec::new()
    };
    let json = json!({
        "spec": args.spec,
        "h": h,
        "norms": menu.0,
        "stopped": run.stopped,
        "roots": run.state.roots,
        "diagram": to_value(&run.diagram),
        "parabolic": to_value(&parabolic),
    });
    let text = if args.dot {
        run.diagram.to_dot()
    } else {
        let mut t = format!(
            "{}: {} simple roots, stop condition {}\n",
            l.name(),
            run.diagram.len(),
            if run.stopped { "reached" } else { "not reached within the budget" }
        );
        for (i, r) in run.state.roots.iter().enumerate() {
            let _ = writeln!(t, "  {i:>3}  norm {:>3}  height {:>3}  {r:?}", l.norm(r), -l.dot(r, &h));
        }
        for p in &parabolic {
            let _ = writeln!(t, "  parabolic {} x{}", p.types, p.count);
        }
        t
    };
    Ok(Report { json, text, ok: true })
}

fn boundary_text(l: &GramLattice, r: &BoundaryReport) -> String {
    let mut t = format!("T = {} + U\n", l.name());
    let _ = writeln!(t, "rank-1 classes: {}", r.rank1.len());
    for (i, c) in r.rank1.iter().enumerate() {
        let _ = writeln!(t, "  [{i}] {:<10} |H_E| = {}  orbit size {}", c.label, c.h_e.len(), c.orbit.len());
    }
    let _ = writeln!(t, "rank-2 classes: {}", r.rank2.len());
    for c in &r.rank2 {
        let _ = writeln!(
            t,
            "  {:<10} contains {:?}  parabolic {}",
            c.label,
            c.contains,
            c.parabolic.join(", ")
        );
    }
    let _ = writeln!(t, "Vinberg roots: {}", r.vinberg_roots);
    for a in &r.assumptions {
        let _ = writeln!(t, "assumes: {a}");
    }
    t
}

fn boundary(args: &BoundaryArgs) -> Result<Report, CliError> {
    let (l, h, menu) = hyperbolic_inputs(&args.spec, &args.h, &args.norms)?;
    let budget = VinbergBudget { max_roots: args.budget, max_height: args.max_height };
    let report = baily_borel_boundary(&l, &h, &menu, &budget)?;
    let mut json = to_value(&report);
    json["spec"] = json!(args.spec);
    Ok(Report { text: boundary_text(&l, &report), json, ok: true })
}

fn occurs(text: &str, trace: bool) -> Result<Report, CliError> {
    let cfg = SingularityConfig::parse(text)?;
    let report = config_occurs(&cfg)?;
    let summary = trace_summary(&report.trace);
    let verdict = match report.verdict {
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Undetermined => "undetermined",
    };
    let mut json = json!({
        "config": report.config,
        "verdict": to_value(&report.verdict),
        "passing_classes": report.passing_classes,
        "candidates": report.candidates,
        "certificate": to_value(&report.certificate),
        "summary": summary,
    });
    if trace {
        json["trace"] = to_value(&report.trace);
    }
    let mut out = format!("{}: {verdict}\n", report.config);
    let _ = writeln!(out, "  candidates {}  passing classes {}", report.candidates, report.passing_classes);
    for (reason, count) in &summary {
        let _ = writeln!(out, "  {reason}: {count}");
    }
    if let Some(cert) = &report.certificate {
        let _ = writeln!(out, "  certificate |H| = {}, roots orthogonal to h: {}", cert.order, cert.perp_roots);
    }
    Ok(Report { json, text: out, ok: report.verdict == Verdict::Yes })
}

fn verify_cmd(suite: Suite) -> Result<Report, CliError> {
    let checks = verify::run(suite)?;
    let ok = checks.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &checks {
        if c.passed {
            let _ = writeln!(text, "PASS {:<9} {}: {}", c.suite, c.name, c.computed);
        } else {
            let _ = writeln!(text, "FAIL {:<9} {}: expected {}, computed {}", c.suite, c.name, c.expected, c.computed);
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let _ = writeln!(text, "{} checks, {failed} failed", checks.len());
    let json = json!({ "checks": to_value(&checks), "passed": ok });
    Ok(Report { json, text, ok })
}
