use std::fmt::Write as _;
use std::path::Path;

use regdep::{BoundReport, FamilyClassification};

pub fn family_line(f: &FamilyClassification) -> String {
    match f {
        FamilyClassification::Regular(d) => {
            format!("regular d={d}, lambda={}", 1.0 / *d as f64)
        }
        FamilyClassification::BipartiteBiregular { d1, d2, .. } => format!(
            "bipartite-biregular d1={d1} d2={d2}, lambda={}",
            1.0 / ((d1 * d2) as f64).sqrt()
        ),
        FamilyClassification::NotScalar => "not-scalar".to_string(),
    }
}

fn family_note(f: Option<&FamilyClassification>) -> &'static str {
    match f {
        Some(FamilyClassification::Regular(_)) => "regular",
        Some(FamilyClassification::BipartiteBiregular { .. }) => "bipartite biregular",
        Some(FamilyClassification::NotScalar) => "not scalar",
        None => "disconnected",
    }
}

fn opt(x: Option<f64>) -> f64 {
    x.unwrap_or(f64::NAN)
}

pub fn report_text(graph: &Path, r: &BoundReport, family: Option<&FamilyClassification>) -> String {
    let p = &r.profile;
    let t = r.terms;
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<14}{v}");
    };
    line("graph", graph.display().to_string());
    line("n", p.n().to_string());
    line("K", r.k.to_string());
    line("family", family_note(family).to_string());
    line("d_mean", format!("{:.6}", p.mean_degree));
    line("d_min", p.d_min.to_string());
    line("d_max", p.d_max.to_string());
    line("sigma_d", format!("{:.6}", p.sigma_d));
    line("CV(d)", format!("{:.6}", p.cv_d));
    line("alpha", format!("{:.6}", opt(p.alpha)));
    line("delta_K", format!("{:.6}", r.delta_k));
    line("||E||_F", format!("{:.6}", r.frob_e));
    line("tau_K", format!("{:.6}", r.tau_k));
    line("T1", format!("{:.6}", opt(t.map(|t| t.t1))));
    line("T2", format!("{:.6}", opt(t.map(|t| t.t2))));
    line("RHS", format!("{:.6}", opt(t.map(|t| t.rhs))));
    line("sin_theta", format!("{:.6e}", opt(r.actual)));
    line("tightness", format!("{:.6}", opt(t.map(|t| t.tightness))));
    line("T2 share", format!("{:.6}", opt(t.map(|t| t.t2_share))));
    line("valid", t.is_some_and(|t| t.valid).to_string());
    if r.ill_defined {
        line(
            "note",
            "top-K subspace not unique (eigenvalue tie at K)".to_string(),
        );
    }
    out
}

pub fn report_csv(r: &BoundReport, family: Option<&FamilyClassification>) -> String {
    let p = &r.profile;
    let t = r.terms;
    let f = |x: f64| format!("{x:.16e}");
    let fields = [
        p.n().to_string(),
        r.k.to_string(),
        f(p.mean_degree),
        p.d_min.to_string(),
        p.d_max.to_string(),
        f(p.sigma_d),
        f(p.cv_d),
        f(opt(p.alpha)),
        f(r.delta_k),
        f(r.frob_e),
        f(r.tau_k),
        f(opt(t.map(|t| t.t1))),
        f(opt(t.map(|t| t.t2))),
        f(opt(t.map(|t| t.rhs))),
        f(opt(r.actual)),
        f(opt(t.map(|t| t.tightness))),
        f(opt(t.map(|t| t.t2_share))),
        r.assumptions_met.to_string(),
        t.is_some_and(|t| t.valid).to_string(),
        family.map_or("disconnected", |f| f.label()).to_string(),
    ];
    format!(
        "n,K,d_mean,d_min,d_max,sigma_d,cv_d,alpha,delta_K,frob_E,tau_K,T1,T2,bound_rhs,sin_theta,tightness,t2_share,valid_assumptions,bound_holds,family\n{}\n",
        fields.join(",")
    )
}

pub fn benchmark_tables(rows: &[(String, BoundReport)]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<10} {:>4} {:>3} {:>9} {:>8} {:>8} {:>13}",
        "Dataset", "n", "K", "sinTheta", "CV(d)", "delta_K", "CV(d)/delta_K"
    );
    for (name, r) in rows {
        let _ = writeln!(
            out,
            "{:<10} {:>4} {:>3} {:>9.4} {:>8.4} {:>8.4} {:>13.4}",
            name,
            r.n(),
            r.k,
            opt(r.actual),
            r.profile.cv_d,
            r.delta_k,
            r.heterogeneity_ratio()
        );
    }
    out.push('\n');
    let _ = writeln!(
        out,
        "{:<10} {:>8} {:>7} {:>7} {:>10} {:>6}",
        "Dataset", "RHS", "T1", "T2", "tightness", "valid"
    );
    for (name, r) in rows {
        let t = r.terms;
        let _ = writeln!(
            out,
            "{:<10} {:>8.2} {:>7.2} {:>7.2} {:>10.5} {:>6}",
            name,
            opt(t.map(|t| t.rhs)),
            opt(t.map(|t| t.t1)),
            opt(t.map(|t| t.t2)),
            opt(t.map(|t| t.tightness)),
            t.is_some_and(|t| t.valid)
        );
    }
    out
}

pub fn benchmark_csv(rows: &[(String, BoundReport)]) -> String {
    let mut out = String::from(
        "dataset,n,K,sin_theta,cv_d,delta_K,ratio,bound_rhs,T1,T2,tightness,bound_holds\n",
    );
    let f = |x: f64| format!("{x:.16e}");
    for (name, r) in rows {
        let t = r.terms;
        let _ = writeln!(
            out,
            "{name},{},{},{},{},{},{},{},{},{},{},{}",
            r.n(),
            r.k,
            f(opt(r.actual)),
            f(r.profile.cv_d),
            f(r.delta_k),
            f(r.heterogeneity_ratio()),
            f(opt(t.map(|t| t.rhs))),
            f(opt(t.map(|t| t.t1))),
            f(opt(t.map(|t| t.t2))),
            f(opt(t.map(|t| t.tightness))),
            t.is_some_and(|t| t.valid)
        );
    }
    out
}
