//! Plain-text tables for terminal output and `.txt` artifacts.

use std::fmt::Write as _;

use mixfit_core::criteria::ComparisonReport;
use mixfit_core::diagnostics::CollapseReport;
use mixfit_core::estimation::FitResult;
use mixfit_core::params::FreeParam;

fn sig(v: f64) -> String {
    if !v.is_finite() {
        return format!("{v}");
    }
    let a = v.abs();
    if a != 0.0 && !(1e-3..1e5).contains(&a) {
        format!("{v:.3e}")
    } else {
        let digits = if a == 0.0 { 0 } else { (3 - a.log10().floor() as i32).max(0) as usize };
        format!("{v:.digits$}")
    }
}

fn magnitude(se: f64) -> String {
    if se.is_finite() && se > 0.0 {
        format!("10^{}", se.log10().floor() as i32)
    } else {
        "-".to_string()
    }
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().filter_map(|r| r.get(c)).map(|s| s.chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().enumerate().map(|(c, s)| format!("{s:<w$}", w = widths[c])).collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}

/// One column per fit: parameter names, estimates, and the order of
/// magnitude of each standard error underneath.
pub fn parameter_table(fits: &[FitResult]) -> String {
    let mut title = vec![String::new()];
    let mut names = vec!["params".to_string()];
    let mut values = vec!["estimate".to_string()];
    let mut ses = vec!["std. err.".to_string()];
    let mut ks = vec!["k".to_string()];
    let mut lgl = vec!["lgL".to_string()];
    let mut status = vec!["converged".to_string()];
    for f in fits {
        let params: &[FreeParam] = f.kind().free_params();
        title.push(f.kind().title().to_string());
        names.push(params.iter().map(|p| p.name()).collect::<Vec<_>>().join(", "));
        values.push(
            params
                .iter()
                .map(|&p| f.theta_hat.get(p).map_or("-".to_string(), sig))
                .collect::<Vec<_>>()
                .join(", "),
        );
        ses.push(format!(
            "({})",
            params
                .iter()
                .map(|&p| f.std_errors.get(p).map_or("-".to_string(), magnitude))
                .collect::<Vec<_>>()
                .join(", ")
        ));
        ks.push(sig(f.theta_hat.k));
        lgl.push(format!("{:.2}", f.lgl_max));
        status.push(if f.converged { "yes" } else { "no" }.to_string());
    }
    table(&[title, names, values, ses, ks, lgl, status])
}

/// Criteria by model, then the pairwise RI values and any notes.
pub fn comparison_table(r: &ComparisonReport) -> String {
    let mut rows = vec![std::iter::once(String::new())
        .chain(r.entries.iter().map(|e| e.fit.kind().title().to_string()))
        .collect::<Vec<_>>()];
    type Row = (&'static str, fn(&mixfit_core::CriteriaReport) -> String);
    let spec: [Row; 8] = [
        ("ID", |c| format!("{:.4}", c.id)),
        ("D_KL", |c| format!("{:.4}", c.d_kl)),
        ("sqrt(n) D_KS", |c| format!("{:.3}", c.d_ks_scaled)),
        ("D_KS", |c| format!("{:.3e}", c.d_ks_raw)),
        ("AIC", |c| format!("{:.1}", c.aic)),
        ("BIC", |c| format!("{:.1}", c.bic)),
        ("lgL", |c| format!("{:.2}", c.lgl)),
        ("kappa", |c| c.kappa.to_string()),
    ];
    for (name, f) in spec {
        let mut row = vec![name.to_string()];
        row.extend(r.entries.iter().map(|e| f(&e.criteria)));
        rows.push(row);
    }
    let mut out = format!("dataset {} (n = {})\n", r.label, r.n);
    out.push_str(&table(&rows));
    out.push('\n');
    for p in &r.pairwise {
        let ri = p.ri.map_or("undefined (ID of simpler model is 0)".to_string(), |v| format!("{v:.3}"));
        let _ = writeln!(out, "RI({} -> {}) = {ri}", r.entries[p.simple].name, r.entries[p.complex].name);
    }
    let ranking: Vec<&str> = r.ranking.iter().map(|&i| r.entries[i].name.as_str()).collect();
    let _ = writeln!(out, "ranking by AIC: {}", ranking.join(" < "));
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

pub fn collapse_summary(r: &CollapseReport) -> String {
    let mut rows = vec![vec!["label".to_string(), "T".to_string()]];
    for (l, t) in r.labels.iter().zip(&r.temperatures) {
        rows.push(vec![l.clone(), format!("{t:.1}")]);
    }
    let mut out = table(&rows);
    let _ = writeln!(out, "grid x/T in [{}, {}]", sig(r.grid_range.0), sig(r.grid_range.1));
    for i in 0..r.labels.len() {
        for j in i + 1..r.labels.len() {
            let _ = writeln!(out, "gap({}, {}) = {:.4}", r.labels[i], r.labels[j], r.gaps[i][j]);
        }
    }
    let _ = writeln!(
        out,
        "max gap {:.4} {} epsilon {}: {}",
        r.max_gap(),
        if r.collapsed { "<" } else { ">=" },
        r.epsilon,
        if r.collapsed { "collapsed" } else { "not collapsed" }
    );
    out
}
