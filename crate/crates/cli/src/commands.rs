use crate::Command;
use anyhow::{bail, Context, Result};
use serde_json::Value;
use std::path::Path;
use supersat::config::RunConfig;
use supersat::exactcomb::{binom_u128, nat, BigNat};
use supersat::intgraph::{
    build_intgraph, claim_a5_check, enumerate_grid_graphs, prop25_containment, prop25_intervals, IntGraph,
};
use supersat::oracle::{min_disj_perms, min_disj_sets, verify_counterexample, MinimizerReport};
use supersat::permfam::{self, disj_perm, disj_t_formula, derangement_graph_spectrum, CosetSpec, Engine};
use supersat::report::{big, ratio, Report};
use supersat::setfam::{self, disj_naive, disj_zeta, ell_ball, lex_params, lex_segment, quad_upper_bound};
use supersat::structcount;
use supersat::suite;

/// A report, plus raw text that replaces it in plain output (family files).
pub struct Outcome {
    pub report: Report,
    pub raw: Option<String>,
}

impl From<Report> for Outcome {
    fn from(report: Report) -> Self {
        Outcome { report, raw: None }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| path.display().to_string())
}

fn strs(v: &[impl ToString]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn points_string(pts: &[(u32, u32)]) -> String {
    pts.iter().map(|(i, j)| format!("({i},{j})")).collect::<Vec<_>>().join(" ")
}

fn family_out(report: Report, text: String, out: &Option<std::path::PathBuf>) -> Result<Outcome> {
    match out {
        Some(p) => {
            std::fs::write(p, &text).with_context(|| p.display().to_string())?;
            Ok(report.field("file", p.display().to_string()).into())
        }
        None => Ok(Outcome { report: report.field("family", text.clone()), raw: Some(text) }),
    }
}

fn minimizer_report(kind: &str, r: &MinimizerReport) -> Report {
    let mut rep = Report::new(kind);
    for (k, v) in &r.params {
        rep.push(k, *v);
    }
    rep.field("value", big(&r.minimum))
        .field("minimum", big(&r.minimum))
        .field("num_minimizers", big(&r.num_minimizers))
        .field("formula_value", big(&r.lex_or_t_value))
        .field("optimal", r.lex_or_t_optimal)
        .field("exhaustive", r.exhaustive)
        .field("nodes", r.nodes.to_string())
        .field("runtime_ms", r.runtime_ms.to_string())
        .field("witnesses", Value::Array(r.sample_minimizers.iter().cloned().map(Value::String).collect()))
}

fn graph_row(g: &IntGraph) -> Vec<String> {
    let a5 = claim_a5_check(g);
    vec![
        points_string(g.points()),
        g.k(1).to_string(),
        g.k(2).to_string(),
        g.k(3).to_string(),
        g.k(4).to_string(),
        g.p3bar().to_string(),
        g.is_canonical().to_string(),
        a5.i.to_string(),
        a5.ii.to_string(),
        a5.iii.to_string(),
        a5.iii_twelfth.to_string(),
        a5.excess.to_string(),
    ]
}

const GRAPH_COLUMNS: [&str; 12] =
    ["points", "k1", "k2", "k3", "k4", "p3bar", "canonical", "i", "ii", "iii", "iii_twelfth", "excess"];

pub fn dispatch(cmd: &Command, cfg: &RunConfig) -> Result<Outcome> {
    Ok(match cmd {
        Command::DisjSets { file, zeta } => {
            let f = setfam::io::parse_family(&read(file)?)?;
            let d = if *zeta { disj_zeta(&f, cfg.zeta_cap)? } else { disj_naive(&f) };
            Report::new("disj-sets")
                .field("value", big(&d))
                .field("n", f.n())
                .field("k", f.k())
                .field("size", f.len())
                .field("intersecting", f.is_intersecting())
                .into()
        }
        Command::DisjPerms { file } => {
            let f = permfam::io::parse_perms(&read(file)?)?;
            let d = disj_perm(&f);
            Report::new("disj-perms").field("value", big(&d)).field("n", f.n()).field("size", f.len()).into()
        }
        Command::Lex { n, k, s, out } => {
            if *n > cfg.set_cap {
                bail!("n={n} above set_cap={}", cfg.set_cap);
            }
            let f = lex_segment(*n, *k, *s)?;
            let rep = Report::new("lex").field("n", *n).field("k", *k).field("size", f.len());
            family_out(rep, setfam::io::write_family(&f), out)?
        }
        Command::PermLex { n, s, out } => {
            let f = permfam::lex_perm_segment(*n, *s, cfg.perm_cap)?;
            let rep = Report::new("perm-lex").field("n", *n).field("size", f.len());
            family_out(rep, permfam::io::write_perms(&f), out)?
        }
        Command::Ball { n, k, ell, s, out } => {
            if *n > cfg.set_cap {
                bail!("n={n} above set_cap={}", cfg.set_cap);
            }
            let b = ell_ball(*n, *k, *ell, *s)?;
            let rep = Report::new("ball")
                .field("n", *n)
                .field("k", *k)
                .field("ell", *ell)
                .field("r", b.r)
                .field("size", b.family.len());
            family_out(rep, setfam::io::write_family(&b.family), out)?
        }
        Command::Counterexample { k } => {
            let row = verify_counterexample(*k, cfg.zeta_cap)?;
            let mut rows = vec![
                vec!["F".into(), row.disj_f.to_string(), String::new()],
                vec!["L".into(), row.disj_l.to_string(), String::new()],
            ];
            for b in &row.balls {
                rows.push(vec![format!("B{}", b.ell), b.disj.to_string(), b.inner_lower.to_string()]);
            }
            Report::new("counterexample")
                .field("value", big(&row.disj_f))
                .field("k", row.k)
                .field("n", row.n)
                .field("s", big(&row.s))
                .field("disj_f", big(&row.disj_f))
                .field("disj_l", big(&row.disj_l))
                .field("gap", big(&row.gap))
                .field("direct", row.direct)
                .with_table(&["family", "disj", "inner_lower"], rows)
                .with_pass(row.holds)
                .into()
        }
        Command::Formula { sets, perms, n, k, s } => {
            let s: BigNat = s.trim().parse().map_err(|_| anyhow::anyhow!("s must be a nonnegative integer"))?;
            if *perms {
                let v = disj_t_formula(*n, &s)?;
                Report::new("formula-perms").field("value", big(&v)).field("n", *n).field("s", big(&s)).into()
            } else {
                if !sets {
                    bail!("choose --sets or --perms");
                }
                let k = k.context("--sets needs -k")?;
                if k == 0 || k > *n {
                    bail!("need 1 <= k <= n");
                }
                if s > supersat::exactcomb::binom(*n as i64, k as i64) {
                    bail!("s exceeds C(n,k)");
                }
                let v = setfam::disj_lex_formula(*n as u64, k as u64, &s);
                let (r, gamma) = lex_params(*n as u64, k as u64, &s);
                let mut rep = Report::new("formula-sets")
                    .field("value", big(&v))
                    .field("n", *n)
                    .field("k", k)
                    .field("s", big(&s))
                    .field("r", r)
                    .field("gamma", ratio(&gamma));
                if r >= 1 {
                    rep.push("star_upper_bound", ratio(&setfam::star_upper_bound(*n as u64, k as u64, r, &gamma)));
                    rep.push("quad_upper_bound", ratio(&quad_upper_bound(&s, r)));
                }
                rep.into()
            }
        }
        Command::Intgraph { file, sweep, k1_max, n } => {
            if *sweep {
                let specs = enumerate_grid_graphs(*k1_max)?;
                let mut rows = Vec::new();
                let mut violations = 0usize;
                let mut first = None;
                for spec in &specs {
                    let g = build_intgraph(spec)?;
                    if claim_a5_check(&g).violated() {
                        violations += 1;
                        first.get_or_insert_with(|| points_string(g.points()));
                    }
                    let mut row = graph_row(&g);
                    if let Some(n) = n {
                        let engine = Engine::new(*n);
                        row.push(prop25_containment(&spec.with_n(*n)?, &engine)?.all().to_string());
                    }
                    rows.push(row);
                }
                let mut cols = GRAPH_COLUMNS.to_vec();
                if n.is_some() {
                    cols.push("intervals_hold");
                }
                let fails = rows.iter().filter(|r| r.len() > 12 && r[12] == "false").count();
                let mut rep = Report::new("intgraph-sweep")
                    .field("value", violations)
                    .field("classes", specs.len())
                    .field("violations", violations);
                if let Some(w) = first {
                    rep.push("witness", w);
                }
                if n.is_some() {
                    rep.push("interval_failures", fails);
                }
                rep.with_table(&cols, rows).with_pass(violations == 0 && fails == 0).into()
            } else {
                let file = file.as_ref().context("intgraph needs --file or --sweep")?;
                let spec = permfam::io::parse_spec(&read(file)?)?;
                let g = build_intgraph(&spec)?;
                let a5 = claim_a5_check(&g);
                let row = graph_row(&g);
                let mut rep = Report::new("intgraph");
                for (c, v) in GRAPH_COLUMNS.iter().zip(&row) {
                    rep.push(c, v.clone());
                }
                if let Some(e) = a5.exceptional {
                    rep.push("exceptional", e);
                }
                rep.with_pass(!a5.violated()).into()
            }
        }
        Command::Prop25 { file, n, k1_max } => {
            let specs: Vec<CosetSpec> = match file {
                Some(f) => vec![permfam::io::parse_spec(&read(f)?)?],
                None => enumerate_grid_graphs(*k1_max)?,
            };
            let engine = Engine::new(*n);
            let mut rows = Vec::new();
            let mut failures = Vec::new();
            for spec in &specs {
                let spec = spec.with_n(*n)?;
                let g = build_intgraph(&spec)?;
                let iv = prop25_intervals(&g, *n)?;
                let c = prop25_containment(&spec, &engine)?;
                if !c.all() {
                    failures.push(c.witness.clone().unwrap_or_else(|| points_string(spec.points())));
                }
                rows.push(vec![
                    points_string(spec.points()),
                    c.union_size.to_string(),
                    c.disj_union.to_string(),
                    c.a.to_string(),
                    c.b.to_string(),
                    c.b_refined.to_string(),
                    c.c.to_string(),
                    c.c_refined.to_string(),
                    c.profiles.to_string(),
                    iv.a.to_string(),
                    iv.c.to_string(),
                ]);
            }
            let mut rep = Report::new("prop25")
                .field("value", failures.len())
                .field("n", *n)
                .field("specs", specs.len())
                .field("failures", failures.len());
            if let Some(w) = failures.first() {
                rep.push("witness", w.clone());
            }
            rep.with_table(
                &["points", "union_size", "disj", "a", "b", "b_refined", "c", "c_refined", "profiles", "interval_a", "interval_c"],
                rows,
            )
            .with_pass(failures.is_empty())
            .into()
        }
        Command::OracleSets { n, k, s } => {
            let total = binom_u128(*n as u64, *k as u64);
            let sizes: Vec<u64> = match s {
                Some(s) => vec![*s],
                None => (0..=total as u64).collect(),
            };
            let deadline = cfg.deadline();
            let mut reports = Vec::new();
            for &s in &sizes {
                reports.push((s, min_disj_sets(*n, *k, s, deadline)?));
            }
            let bad = |s: u64, r: &MinimizerReport| !r.lex_or_t_optimal && suite::in_lex_theorem_range(*n, *k, s);
            let pass = reports.iter().all(|(s, r)| !bad(*s, r));
            if let [(_, r)] = reports.as_slice() {
                minimizer_report("oracle-sets", r).with_pass(pass).into()
            } else {
                let rows = reports
                    .iter()
                    .map(|(s, r)| {
                        strs(&[
                            s.to_string(),
                            r.minimum.to_string(),
                            r.num_minimizers.to_string(),
                            r.lex_or_t_value.to_string(),
                            r.lex_or_t_optimal.to_string(),
                            r.exhaustive.to_string(),
                        ])
                    })
                    .collect();
                Report::new("oracle-sets")
                    .field("n", *n)
                    .field("k", *k)
                    .field("value", reports.iter().filter(|(_, r)| !r.lex_or_t_optimal).count())
                    .with_table(&["s", "minimum", "num_minimizers", "lex_value", "optimal", "exhaustive"], rows)
                    .with_pass(pass)
                    .into()
            }
        }
        Command::OraclePerms { n, s } => {
            let total: u64 = (1..=*n as u64).product();
            let sizes: Vec<u64> = match s {
                Some(s) => vec![*s],
                None => (0..=total).collect(),
            };
            let deadline = cfg.deadline();
            let mut reports = Vec::new();
            for &s in &sizes {
                reports.push((s, min_disj_perms(*n, s, cfg.perm_cap, deadline)?));
            }
            let pass = reports.iter().all(|(_, r)| r.lex_or_t_optimal);
            if let [(_, r)] = reports.as_slice() {
                minimizer_report("oracle-perms", r).with_pass(pass).into()
            } else {
                let rows = reports
                    .iter()
                    .map(|(s, r)| {
                        strs(&[
                            s.to_string(),
                            r.minimum.to_string(),
                            r.num_minimizers.to_string(),
                            r.lex_or_t_value.to_string(),
                            r.lex_or_t_optimal.to_string(),
                            r.exhaustive.to_string(),
                        ])
                    })
                    .collect();
                Report::new("oracle-perms")
                    .field("n", *n)
                    .field("value", reports.iter().filter(|(_, r)| !r.lex_or_t_optimal).count())
                    .with_table(&["s", "minimum", "num_minimizers", "t_value", "optimal", "exhaustive"], rows)
                    .with_pass(pass)
                    .into()
            }
        }
        Command::Spectrum { n, m, a } => match (n, m, a) {
            (Some(n), None, None) => {
                let r = derangement_graph_spectrum(*n)?;
                Report::new("spectrum-derangement")
                    .field("n", r.n)
                    .field("d_n", r.d_n)
                    .field("lambda0", r.lambda0)
                    .field("lambda1", r.lambda1)
                    .field("expected_lambda1", r.expected_lambda1)
                    .field("lambda2_abs", r.lambda2_abs)
                    .field("lambda2_ratio", r.lambda2_ratio)
                    .with_pass(r.lambda0_ok && r.lambda1_ok)
                    .into()
            }
            (None, Some(m), Some(a)) => {
                if *m > 10 {
                    bail!("m={m} above the dense-spectrum cap 10");
                }
                let p = setfam::kneser_params(*m as u64, *a as u64)?;
                let ev = supersat::eigen::symmetric_eigenvalues(&setfam::kneser_adjacency(*m, *a));
                let lambda: f64 = p.lambda.to_string().parse().unwrap_or(f64::INFINITY);
                let degree: f64 = p.degree.to_string().parse().unwrap_or(f64::INFINITY);
                let min = ev.first().copied().unwrap_or(0.0);
                let max = ev.last().copied().unwrap_or(0.0);
                let tol = 1e-6 * degree.max(1.0);
                Report::new("spectrum-kneser")
                    .field("m", *m)
                    .field("a", *a)
                    .field("vertices", big(&p.vertices))
                    .field("degree", big(&p.degree))
                    .field("lambda0", max)
                    .field("lambda_min", min)
                    .field("expected_lambda_min", -lambda)
                    .with_pass((max - degree).abs() <= tol && (min + lambda).abs() <= tol)
                    .into()
            }
            _ => bail!("spectrum needs either -n or both -m and -a"),
        },
        Command::CountFamilies { n, k, s, maximal } => {
            let c = structcount::count_no_matching_families(*n, *k, *s, cfg.family_cap)?;
            let mut rep =
                Report::new("count-families").field("value", big(&c)).field("n", *n).field("k", *k).field("s", *s);
            if *maximal {
                let fams = structcount::enumerate_maximal_families(*n, *k, *s, cfg.family_cap)?;
                let rows = fams
                    .iter()
                    .map(|f| vec![f.len().to_string(), strs(f.members()).join(" ")])
                    .collect();
                rep.push("maximal", fams.len());
                rep = rep.with_table(&["size", "members"], rows);
            }
            rep.into()
        }
        Command::Typicality { n, k, s } => {
            let t = structcount::typicality_report(*n, *k, *s)?;
            let mut rep = Report::new("typicality")
                .field("value", ratio(&t.margin))
                .field("n", t.n)
                .field("k", t.k)
                .field("s", t.s)
                .field("n0", big(&t.n0))
                .field("n1_bound", ratio(&t.n1_bound))
                .field("n2", big(&t.n2))
                .field("log2m_bound", big(&t.log2m_bound))
                .field("margin", ratio(&t.margin))
                .field("extremal", big(&t.t))
                .field("certifies", t.certifies());
            if let Some(target) = &t.target {
                rep.push("target", ratio(target));
                rep.push("meets_target", t.meets_target() == Some(true));
            }
            rep.with_pass(t.certifies() && t.meets_target() != Some(false)).into()
        }
        Command::Shadow { file, level, pq } => {
            let f = setfam::io::parse_family(&read(file)?)?;
            let sh = structcount::shadow(&f, *level)?;
            let bound = structcount::kk_lower_bound_exact(&nat(f.len() as u64), f.k(), *level);
            let size = nat(sh.len() as u64);
            let mut ok = supersat::exactcomb::nat_to_rat(&size) >= bound;
            let mut rep = Report::new("shadow")
                .field("value", sh.len())
                .field("size", f.len())
                .field("k", f.k())
                .field("level", *level)
                .field("lovasz_bound", ratio(&bound))
                .field("lovasz_bound_f64", structcount::kk_lower_bound(&nat(f.len() as u64), f.k(), *level));
            if *pq {
                let r = structcount::pq_shadow_check(&f)?;
                rep.push("center", r.center);
                rep.push("p", r.p.len());
                rep.push("q", r.q.len());
                rep.push("shadow_p", r.shadow_p.len());
                rep.push("pq_holds", r.holds);
                ok &= r.holds;
            }
            rep.with_pass(ok).into()
        }
        Command::VerifyAll { only } => {
            if let Some(bad) = only.iter().find(|&&i| i == 0 || i > suite::CHECK_COUNT) {
                bail!("no check {bad}; ids run 1..={}", suite::CHECK_COUNT);
            }
            let checks = suite::run(cfg, only);
            let failed: Vec<u32> = checks.iter().filter(|c| !c.pass).map(|c| c.id).collect();
            let rows = checks
                .iter()
                .map(|c| {
                    vec![
                        c.id.to_string(),
                        if c.pass { "PASS".into() } else { "FAIL".into() },
                        c.title.clone(),
                        c.millis.to_string(),
                        c.detail.clone(),
                        c.witnesses.join("; "),
                    ]
                })
                .collect();
            Report::new("verify-all")
                .field("value", format!("{}/{} passed", checks.len() - failed.len(), checks.len()))
                .field("seed", cfg.seed.to_string())
                .field("failed", strs(&failed).join(","))
                .with_table(&["id", "status", "title", "millis", "detail", "witnesses"], rows)
                .with_pass(failed.is_empty())
                .into()
        }
    })
}
