use std::fmt::Write as _;

use lienil::groupalgebra::{CheckMethod, CheckStatus};
use lienil::indexformulas::BoundReport;

use crate::source::GroupSource;
use crate::report::{
    GroupSummary, IndexReport, LemmaReport, ScanBundle, SeriesReport, Status, Verdict,
};

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Pass => "pass",
        Status::Fail => "FAIL",
        Status::NotChecked => "not checked",
        Status::NotApplicable => "n/a",
    }
}

fn tuple<T: ToString>(xs: &[T]) -> String {
    let parts: Vec<String> = xs.iter().map(T::to_string).collect();
    format!("({})", parts.join(", "))
}

fn opt<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |v| v.to_string())
}

fn d_profile(d: &[u32]) -> String {
    if d.is_empty() {
        return "empty".into();
    }
    d.iter()
        .enumerate()
        .map(|(k, v)| format!("d_({})={v}", k + 2))
        .collect::<Vec<_>>()
        .join(" ")
}

/// `C9 x C3`, `C3^4`: invariants given as exponents of `p`, largest first.
fn cyclic_product(p: u64, exps: &[u32]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < exps.len() {
        let run = exps[i..].iter().take_while(|&&e| e == exps[i]).count();
        let c = format!("C{}", p.pow(exps[i]));
        parts.push(if run > 1 { format!("{c}^{run}") } else { c });
        i += run;
    }
    parts.join(" x ")
}

fn group_line(out: &mut String, g: &GroupSummary) {
    let source = match g.source {
        GroupSource::Catalog => "catalog",
        GroupSource::PcFile => "presentation file",
        GroupSource::CayleyFile => "Cayley table",
    };
    writeln!(
        out,
        "group {} ({source}), p = {}, |G| = {}, |G'| = {}, class {}",
        g.name, g.p, g.order, g.derived_order, g.class
    )
    .unwrap();
    if g.abelian {
        return;
    }
    if let Some(inv) = &g.derived_invariants {
        let orders: Vec<String> = inv.iter().map(|m| format!("{}^{m}", g.p)).collect();
        writeln!(out, "G' abelian with invariants {}", tuple(&orders)).unwrap();
    }
}

fn verdict_lines(out: &mut String, verdicts: &[Verdict]) {
    for v in verdicts {
        writeln!(out, "  {:<12} {:<28} {}", status_word(v.status), v.name, v.detail).unwrap();
    }
}

fn bound_lines(out: &mut String, bounds: &[BoundReport]) {
    for b in bounds {
        let verdict = match b.holds {
            Some(true) => "holds",
            Some(false) => "FAILS",
            None => "n/a",
        };
        let detail = match (b.lower_bound, &b.rank_lhs, &b.rank_rhs) {
            (Some(lb), _, _) => format!(
                "t(G') = {}, r = {}, bound {lb} <= t_L = {}",
                opt(b.t_prime),
                opt(b.r),
                b.t_lower
            ),
            (None, Some(l), Some(r)) => format!("{l} <= {r}"),
            _ => String::new(),
        };
        let note = b.note.as_deref().map(|n| format!(" [{n}]")).unwrap_or_default();
        writeln!(out, "  {:<12} {:<28} {detail}{note}", verdict, b.name).unwrap();
    }
}

pub fn indices(r: &IndexReport) -> String {
    let mut out = String::new();
    group_line(&mut out, &r.group);
    writeln!(out, "t_L = {}", opt(r.t_lower)).unwrap();
    writeln!(
        out,
        "t^L = {} (brute force), {} (closed form)",
        opt(r.t_upper_bruteforce),
        r.t_upper_closed_form
    )
    .unwrap();
    writeln!(out, "t(G) = {}", opt(r.t_aug)).unwrap();
    if let Some(d) = &r.derived_augmentation {
        writeln!(out, "t(G') = {} (formula), {} (brute force)", d.formula, opt(d.bruteforce)).unwrap();
    }
    writeln!(out, "d profile: {}", d_profile(&r.d_profile)).unwrap();
    for (name, dims) in [
        ("lower", &r.chains.lower),
        ("upper", &r.chains.upper),
        ("augmentation", &r.chains.augmentation),
    ] {
        if let Some(dims) = dims {
            writeln!(out, "{name} chain dims: {}", tuple(dims)).unwrap();
        }
    }
    if !r.bounds.is_empty() {
        writeln!(out, "bounds:").unwrap();
        bound_lines(&mut out, &r.bounds);
    }
    writeln!(out, "verdicts:").unwrap();
    verdict_lines(&mut out, &r.verdicts);
    out
}

pub fn series(r: &SeriesReport) -> String {
    let mut out = String::new();
    group_line(&mut out, &r.group);
    writeln!(out, "gamma: {}", tuple(&r.gamma_orders)).unwrap();
    writeln!(out, "D: {}", tuple(&r.dimension_orders)).unwrap();
    writeln!(out, "d profile: {}", d_profile(&r.d_profile)).unwrap();
    let ranks: Vec<String> = r
        .ranks
        .ranks
        .iter()
        .enumerate()
        .map(|(k, m)| format!("m_{}={m}", k + 2))
        .collect();
    writeln!(out, "ranks: {}", if ranks.is_empty() { "empty".into() } else { ranks.join(" ") }).unwrap();
    out
}

pub fn lemmas(r: &LemmaReport) -> String {
    let mut out = String::new();
    group_line(&mut out, &r.group);
    writeln!(out, "t_L = {}, samples = {}, seed = {}", r.t_lower, r.samples, r.seed).unwrap();
    writeln!(out, "checks:").unwrap();
    for c in &r.checks {
        let status = match c.status {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Skipped => "skipped",
        };
        let method = match c.method {
            CheckMethod::Exact => "exact",
            CheckMethod::Sampled => "sampled",
        };
        let detail = if c.status == CheckStatus::Skipped {
            c.note.clone().unwrap_or_default()
        } else {
            format!("{method}, {} instances", c.instances)
        };
        writeln!(out, "  {:<12} {:<28} {detail}", status, c.name).unwrap();
        for v in &c.violations {
            writeln!(out, "      {v}").unwrap();
        }
    }
    writeln!(out, "bounds:").unwrap();
    bound_lines(&mut out, &r.bounds);
    out
}

pub fn scan(b: &ScanBundle) -> String {
    let mut out = String::new();
    for (i, r) in b.scans.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        writeln!(out, "p = {}, K = {}", r.p, tuple(&r.k_values)).unwrap();
        writeln!(
            out,
            "  {:<22} {:>5} {:>5} {:>5} {:>5} {:>6} {:>7}",
            "group", "|G|", "|G'|", "t_L", "t^L", "closed", "oracle"
        )
        .unwrap();
        for row in &r.rows {
            writeln!(
                out,
                "  {:<22} {:>5} {:>5} {:>5} {:>5} {:>6} {:>7}",
                row.name,
                row.order,
                row.derived_order,
                opt(row.t_lower),
                opt(row.t_upper),
                row.t_upper_closed_form,
                status_word(row.oracle)
            )
            .unwrap();
        }
        writeln!(out, "index sets (t_L = k vs t^L = k):").unwrap();
        for v in &r.index_sets {
            writeln!(
                out,
                "  {:<12} k = {:<3} {{{}}} vs {{{}}}",
                status_word(v.status),
                v.k,
                v.lower.join(", "),
                v.upper.join(", ")
            )
            .unwrap();
        }
        if !r.cases.is_empty() {
            writeln!(out, "case coverage (t_L = t^L = k):").unwrap();
            for c in &r.cases {
                let witness = match (c.case.witness, c.scanned) {
                    (Some(w), true) => w.to_string(),
                    (Some(w), false) => format!("{w} (not scanned)"),
                    (None, _) => "none".to_string(),
                };
                writeln!(
                    out,
                    "  k = {:<3} G' = {:<10} r = {}  witness {witness}: {}",
                    c.case.k,
                    cyclic_product(r.p as u64, c.case.derived),
                    c.case.r,
                    c.case.note
                )
                .unwrap();
            }
        }
        writeln!(out, "verdicts:").unwrap();
        verdict_lines(&mut out, &r.verdicts);
    }
    out
}
