use std::fmt::Write as _;

use khash::report::{
    BoundReportRecord, BoundsRecord, CheckRecord, ProbeRecord, SearchRecord, SelectionsRecord,
    VerdictRecord,
};

fn num(x: f64) -> String {
    if x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e12) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_else(|| "-".into())
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

fn csv(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .map(|c| {
                if c.contains(',') || c.contains('"') {
                    format!("\"{}\"", c.replace('"', "\"\""))
                } else {
                    c.clone()
                }
            })
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn bounds_text(r: &BoundsRecord) -> String {
    let mut rows = vec![("b", r.b.to_string()), ("k", r.k.to_string())];
    if let (Some(a), Some(e)) = (r.alpha, &r.alpha_exact) {
        rows.push(("alpha", format!("{} ({e})", num(a))));
    }
    rows.push(("trivial_upper", opt(r.trivial_upper)));
    rows.push(("prob_lower", opt(r.prob_lower)));
    rows.push(("km", format!("{} (j={})", num(r.km), r.km_j)));
    rows.push(("arikan", opt(r.arikan)));
    match &r.pipeline_note {
        Some(note) => {
            rows.push(("beta", note.clone()));
            rows.push(("gamma_star", note.clone()));
        }
        None => {
            rows.push(("beta", opt(r.beta)));
            rows.push(("gamma_star", opt(r.gamma_star)));
        }
    }
    table(&rows)
}

pub fn bounds_csv(r: &BoundsRecord) -> String {
    csv(
        &["b", "k", "alpha", "alpha_exact", "trivial_upper", "prob_lower", "km", "km_j", "arikan", "beta", "gamma_star"],
        &[vec![
            r.b.to_string(),
            r.k.to_string(),
            opt(r.alpha),
            r.alpha_exact.clone().unwrap_or_else(|| "-".into()),
            opt(r.trivial_upper),
            opt(r.prob_lower),
            num(r.km),
            r.km_j.to_string(),
            opt(r.arikan),
            opt(r.beta),
            opt(r.gamma_star),
        ]],
    )
}

pub fn beta_text(r: &BoundReportRecord) -> String {
    let mut rows = vec![
        ("k", r.k.to_string()),
        ("mode", r.mode.clone()),
        ("alpha", num(r.alpha)),
        ("beta", num(r.beta)),
        ("gamma_star", num(r.gamma_star)),
        ("bracket", format!("[{}, {}]", num(r.threshold.bracket[0]), num(r.threshold.bracket[1]))),
        ("residual", num(r.threshold.residual)),
        ("below_1/(2k-3)", r.threshold.below_concavity_floor.to_string()),
        ("theta_closed", num(r.theta_closed_at_gamma_star)),
        ("theta_constrained", num(r.theta_constrained_at_gamma_star)),
        ("beta_profile", num(r.beta_profile_at_gamma_star)),
        ("beta_star", num(r.beta_star_at_gamma_star)),
        ("trivial_upper", num(r.references.trivial_upper)),
        ("prob_lower", num(r.references.prob_lower)),
        ("km", num(r.references.km)),
        ("arikan", opt(r.references.arikan)),
    ];
    if let Some(v) = &r.conjecture {
        rows.push(("conjecture_holds", v.holds.to_string()));
        rows.push(("conjecture_margin", num(v.margin)));
        rows.push(("all_converged", v.all_converged.to_string()));
    }
    table(&rows)
}

pub fn beta_csv(r: &BoundReportRecord) -> String {
    csv(
        &["k", "mode", "alpha", "beta", "gamma_star", "theta_closed", "theta_constrained", "residual", "conjecture_holds"],
        &[vec![
            r.k.to_string(),
            r.mode.clone(),
            num(r.alpha),
            num(r.beta),
            num(r.gamma_star),
            num(r.theta_closed_at_gamma_star),
            num(r.theta_constrained_at_gamma_star),
            num(r.threshold.residual),
            r.conjecture
                .as_ref()
                .map(|v| v.holds.to_string())
                .unwrap_or_else(|| "-".into()),
        ]],
    )
}

pub fn verdict_text(v: &VerdictRecord) -> String {
    let mut out = table(&[
        ("k", v.k.to_string()),
        ("gamma", num(v.gamma)),
        ("conjectured", v.conjectured.clone()),
        ("conjectured_value", num(v.conjectured_value)),
        ("margin", num(v.margin)),
        ("holds", v.holds.to_string()),
        ("all_converged", v.all_converged.to_string()),
    ]);
    out.push('\n');
    let _ = writeln!(out, "{:<24} {:<16} {:<10} starts", "selection", "max", "converged");
    for s in &v.per_selection_max {
        let _ = writeln!(
            out,
            "{:<24} {:<16} {:<10} {}/{}",
            s.selection,
            num(s.value),
            s.converged,
            s.starts_converged,
            s.num_starts
        );
    }
    out
}

pub fn verdict_csv(v: &VerdictRecord) -> String {
    let rows: Vec<Vec<String>> = v
        .per_selection_max
        .iter()
        .map(|s| {
            vec![
                v.k.to_string(),
                num(v.gamma),
                s.selection.clone(),
                num(s.value),
                (s.selection == v.conjectured).to_string(),
                s.converged.to_string(),
            ]
        })
        .collect();
    csv(&["k", "gamma", "selection", "max", "conjectured", "converged"], &rows)
}

pub fn probe_text(p: &ProbeRecord) -> String {
    let mut out = format!("k = {}\n", p.k);
    let _ = writeln!(out, "{:<16} {:<16} {:<16} best selection", "gamma", "theta_hat", "theta_closed");
    for r in &p.rows {
        let _ = writeln!(
            out,
            "{:<16} {:<16} {:<16} {}",
            num(r.gamma),
            num(r.theta_hat),
            num(r.theta_closed),
            r.best_selection
        );
    }
    out
}

pub fn probe_csv(p: &ProbeRecord) -> String {
    let rows: Vec<Vec<String>> = p
        .rows
        .iter()
        .map(|r| {
            vec![
                p.k.to_string(),
                num(r.gamma),
                num(r.theta_hat),
                num(r.theta_closed),
                r.best_selection.clone(),
            ]
        })
        .collect();
    csv(&["k", "gamma", "theta_hat", "theta_closed", "best_selection"], &rows)
}

pub fn selections_text(s: &SelectionsRecord) -> String {
    let mut out = format!("k = {}, {} selections\n", s.k, s.count);
    for sel in &s.selections {
        let mark = if *sel == s.conjectured { "  (conjectured)" } else { "" };
        let _ = writeln!(out, "{sel}{mark}");
    }
    out
}

pub fn selections_csv(s: &SelectionsRecord) -> String {
    let rows: Vec<Vec<String>> = s
        .selections
        .iter()
        .enumerate()
        .map(|(i, sel)| {
            vec![
                s.k.to_string(),
                (i + 1).to_string(),
                sel.clone(),
                (*sel == s.conjectured).to_string(),
            ]
        })
        .collect();
    csv(&["k", "index", "selection", "conjectured"], &rows)
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(",")
    }
}

pub fn check_text(c: &CheckRecord) -> String {
    let mut rows = vec![
        ("k", c.k.to_string()),
        ("n", c.n.to_string()),
        ("words", c.size.to_string()),
        ("rate", num(c.rate)),
        ("order", c.separation.order.to_string()),
        ("separated", c.separation.separated.to_string()),
    ];
    if let Some(w) = &c.separation.witness {
        rows.push(("witness", list(w)));
        if let Some(words) = &c.separation.witness_words {
            rows.push(("witness_words", words.join(" | ")));
        }
    }
    if let Some(cl) = &c.classification {
        rows.push(("gamma", num(cl.gamma)));
        rows.push(("balanced", list(&cl.balanced)));
        rows.push(("skewed", list(&cl.skewed)));
        let ell = if cl.ell_clamped {
            format!("{} (clamped)", cl.ell)
        } else {
            cl.ell.to_string()
        };
        rows.push(("ell", ell));
    }
    if let Some(h) = &c.hansel {
        rows.push(("hansel_fixed", list(&h.fixed)));
        rows.push(("hansel_lhs", num(h.lhs)));
        rows.push(("hansel_rhs", num(h.rhs)));
        rows.push(("hansel_rhs_graph", num(h.rhs_graph)));
        rows.push(("hansel_satisfied", h.satisfied.to_string()));
    }
    if let Some(h) = &c.hypergraph {
        rows.push(("hyper_fixed", list(&h.fixed)));
        rows.push(("hyper_m_d_c", format!("{} {} {}", h.m, h.d, h.c)));
        rows.push(("hyper_lhs", num(h.lhs)));
        rows.push(("hyper_lhs_ratio", num(h.lhs_ratio)));
        rows.push(("hyper_rhs", num(h.rhs)));
        rows.push(("hyper_satisfied", h.satisfied.to_string()));
    }
    if let Some(cs) = &c.census {
        rows.push(("census_T", list(&cs.coordinates)));
        rows.push(("census_patterns", cs.patterns.to_string()));
        rows.push(("census_total", format!("{} (expected {})", cs.total, cs.expected_total)));
        let richest: Vec<String> = cs.richest.iter().map(|s| format!("{{{}}}", list(s))).collect();
        rows.push(("census_richest", format!("{} with {} words", richest.join(" "), cs.richest_count)));
    }
    let mut out = table(&rows);
    out.push('\n');
    let _ = writeln!(out, "{:<6} {:<12} frequencies", "coord", "min");
    for co in &c.coordinates {
        let _ = writeln!(out, "{:<6} {:<12} {}", co.coordinate, num(co.min_frequency), co.frequencies.join(" "));
    }
    out
}

pub fn check_csv(c: &CheckRecord) -> String {
    let balanced = c.classification.as_ref().map(|cl| &cl.balanced);
    let rows: Vec<Vec<String>> = c
        .coordinates
        .iter()
        .map(|co| {
            vec![
                co.coordinate.to_string(),
                num(co.min_frequency),
                co.frequencies.join(" "),
                balanced
                    .map(|b| b.contains(&co.coordinate).to_string())
                    .unwrap_or_else(|| "-".into()),
                c.separation.separated.to_string(),
            ]
        })
        .collect();
    csv(&["coordinate", "min_frequency", "frequencies", "balanced", "separated"], &rows)
}

pub fn search_text(s: &SearchRecord) -> String {
    let mut out = table(&[
        ("k", s.k.to_string()),
        ("n", s.n.to_string()),
        ("seed", s.seed.to_string()),
        ("trials", s.trials.to_string()),
        ("words", s.size.to_string()),
        ("rate", num(s.rate)),
        ("prob_lower", num(s.prob_lower)),
    ]);
    out.push('\n');
    for w in &s.words {
        let _ = writeln!(out, "{w}");
    }
    out
}

pub fn search_csv(s: &SearchRecord) -> String {
    let rows: Vec<Vec<String>> = s
        .words
        .iter()
        .enumerate()
        .map(|(i, w)| vec![(i + 1).to_string(), w.clone()])
        .collect();
    csv(&["index", "word"], &rows)
}
