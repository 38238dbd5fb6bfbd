use std::collections::BTreeMap;
use std::time::Instant;

use serde::Serialize;

use lienil::catalog::{self, Expected, IndexCase, INDEX_CASES};
use lienil::groupalgebra::{AlgebraContext, CheckReport, LowerChain};
use lienil::indexformulas::{
    abelian_augmentation_index, commutator_augmentation_bound, dimension_subgroup_chain,
    rank_profile_bound, upper_index_closed_form, BoundReport,
};
use lienil::pcgroup::{RankProfile, DEFAULT_ORDER_CAP};
use lienil::FiniteGroup;

use crate::source::{GroupSource, ResolvedGroup};
use crate::CliError;

/// Wall-clock milliseconds per phase; kept out of reports so they stay reproducible.
#[derive(Debug, Default, Serialize)]
pub struct Timings(pub BTreeMap<String, f64>);

impl Timings {
    pub fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        *self.0.entry(phase.to_string()).or_default() += start.elapsed().as_secs_f64() * 1e3;
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    NotChecked,
    NotApplicable,
}

impl Status {
    fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Verdict {
    fn new(name: &str, status: Status, detail: impl Into<String>) -> Self {
        Verdict {
            name: name.to_string(),
            status,
            detail: detail.into(),
        }
    }
}

fn all_pass(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.status != Status::Fail)
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub source: GroupSource,
    pub p: u8,
    pub order: usize,
    pub derived_order: usize,
    pub class: usize,
    pub abelian: bool,
    /// Exponents `m_i` with `G' = Π C_{p^{m_i}}`, when `G'` is abelian.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_invariants: Option<Vec<u32>>,
}

impl GroupSummary {
    fn new(name: &str, source: GroupSource, g: &FiniteGroup) -> Self {
        let gammas = g.lower_central_series();
        let derived = gammas.get(1).cloned().unwrap_or_else(|| g.trivial_subgroup());
        GroupSummary {
            name: name.to_string(),
            source,
            p: g.p(),
            order: g.order(),
            derived_order: derived.order(),
            class: gammas.len() - 1,
            abelian: derived.is_trivial(),
            derived_invariants: g.abelian_invariants(&derived).ok().map(|i| i.exponents),
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ChainDims {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub upper: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub augmentation: Option<Vec<usize>>,
}

/// Augmentation index of `KG'` for abelian `G'`, by formula and by brute force.
#[derive(Clone, Debug, Serialize)]
pub struct DerivedAugmentation {
    pub formula: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bruteforce: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndexReport {
    pub group: GroupSummary,
    pub formula_only: bool,
    pub t_lower: Option<usize>,
    pub t_upper_bruteforce: Option<usize>,
    pub t_upper_closed_form: u64,
    /// Nilpotency index of the augmentation ideal.
    pub t_aug: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_augmentation: Option<DerivedAugmentation>,
    pub chains: ChainDims,
    /// `d_(2), d_(3), ...`
    pub d_profile: Vec<u32>,
    pub bounds: Vec<BoundReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
    pub verdicts: Vec<Verdict>,
}

impl IndexReport {
    pub fn passed(&self) -> bool {
        all_pass(&self.verdicts)
    }
}

fn internal(e: lienil::Error) -> CliError {
    CliError::internal(e.to_string())
}

struct BruteForce {
    lower: LowerChain,
    upper: Vec<usize>,
    augmentation: Vec<usize>,
}

fn brute_force(ctx: &AlgebraContext, timings: &mut Timings) -> Result<BruteForce, CliError> {
    let lower = timings.time("lower_chain", || ctx.lower_lie_chain()).map_err(internal)?;
    let upper = timings.time("upper_chain", || ctx.upper_lie_chain()).map_err(internal)?;
    let aug = timings
        .time("augmentation_chain", || ctx.augmentation_chain())
        .map_err(internal)?;
    Ok(BruteForce {
        lower,
        upper: upper.dims(),
        augmentation: aug.dims(),
    })
}

fn derived_augmentation(
    g: &FiniteGroup,
    brute: bool,
    timings: &mut Timings,
) -> Result<Option<DerivedAugmentation>, CliError> {
    let gammas = g.lower_central_series();
    let Some(derived) = gammas.get(1) else {
        return Ok(None);
    };
    let Ok(inv) = g.abelian_invariants(derived) else {
        return Ok(None);
    };
    if derived.is_trivial() {
        return Ok(None);
    }
    let formula = abelian_augmentation_index(&inv, g.p());
    let bruteforce = if brute {
        let sub = g.subgroup_as_group(derived).map_err(internal)?;
        let ctx = AlgebraContext::new(sub);
        let chain = timings
            .time("derived_augmentation_chain", || ctx.augmentation_chain())
            .map_err(internal)?;
        Some(chain.stop_index())
    } else {
        None
    };
    Ok(Some(DerivedAugmentation { formula, bruteforce }))
}

fn expected_verdict(expected: Option<&Expected>, summary: &GroupSummary, t_lower: Option<usize>, t_upper: Option<usize>) -> Verdict {
    let Some(e) = expected else {
        return Verdict::new("expected_values", Status::NotApplicable, "no recorded values");
    };
    let mut mismatches = Vec::new();
    let mut compare = |what: &str, want: Option<usize>, got: Option<usize>| {
        if let (Some(w), Some(g)) = (want, got) {
            if w != g {
                mismatches.push(format!("{what}: expected {w}, computed {g}"));
            }
        }
    };
    compare("order", Some(e.order), Some(summary.order));
    compare("|G'|", e.derived_order, Some(summary.derived_order));
    compare("class", e.class, Some(summary.class));
    compare("t_L", e.t_lower, t_lower);
    compare("t^L", e.t_upper, t_upper);
    if mismatches.is_empty() {
        Verdict::new("expected_values", Status::Pass, e.note.clone())
    } else {
        Verdict::new("expected_values", Status::Fail, mismatches.join("; "))
    }
}

pub fn indices(
    resolved: &ResolvedGroup,
    formula_only: bool,
    timings: &mut Timings,
) -> Result<IndexReport, CliError> {
    let g = &resolved.group;
    let p = g.p();
    let summary = timings.time("group_invariants", || GroupSummary::new(&resolved.name, resolved.source, g));
    let dc = timings.time("dimension_subgroups", || dimension_subgroup_chain(g));
    let closed = upper_index_closed_form(&dc.d, p);
    let brute = if formula_only {
        None
    } else {
        let ctx = timings.time("algebra_context", || AlgebraContext::new(g.clone()));
        Some(brute_force(&ctx, timings)?)
    };
    let derived_aug = derived_augmentation(g, !formula_only, timings)?;

    let t_lower = brute.as_ref().map(|b| b.lower.t_lower());
    let t_upper = brute.as_ref().map(|b| b.upper.len());
    let t_aug = brute.as_ref().map(|b| b.augmentation.len());
    let bounds = match t_lower {
        Some(t) => timings.time("bounds", || {
            vec![commutator_augmentation_bound(g, t), rank_profile_bound(g, t)]
        }),
        None => Vec::new(),
    };

    let mut verdicts = Vec::new();
    let not_checked = |name: &str| Verdict::new(name, Status::NotChecked, "brute force skipped");
    verdicts.push(match t_upper {
        Some(t) => Verdict::new(
            "oracle_agreement",
            Status::of(t as u64 == closed),
            format!("brute-force t^L = {t}, closed form = {closed}"),
        ),
        None => not_checked("oracle_agreement"),
    });
    verdicts.push(match (t_lower, t_upper) {
        (Some(l), Some(u)) => Verdict::new("sandwich", Status::of(l <= u), format!("t_L = {l} <= t^L = {u}")),
        _ => not_checked("sandwich"),
    });
    if summary.abelian {
        for name in ["lower_bound", "upper_bound"] {
            verdicts.push(Verdict::new(name, Status::NotApplicable, "abelian group"));
        }
    } else {
        verdicts.push(match t_lower {
            Some(l) => Verdict::new(
                "lower_bound",
                Status::of((p as usize) < l),
                format!("p + 1 = {} <= t_L = {l}", p as usize + 1),
            ),
            None => not_checked("lower_bound"),
        });
        let u = t_upper.map_or(closed, |t| t as u64);
        verdicts.push(Verdict::new(
            "upper_bound",
            Status::of(u <= summary.derived_order as u64 + 1),
            format!("t^L = {u} <= |G'| + 1 = {}", summary.derived_order + 1),
        ));
    }
    let log_derived = g.log_p(summary.derived_order);
    verdicts.push(Verdict::new(
        "d_profile_sum",
        Status::of(dc.d_sum() == log_derived),
        format!("sum of d = {}, log_p |G'| = {log_derived}", dc.d_sum()),
    ));
    verdicts.push(expected_verdict(resolved.expected.as_ref(), &summary, t_lower, t_upper));
    verdicts.push(if summary.abelian {
        match t_aug {
            Some(t) => {
                let inv = g.abelian_invariants(&g.whole()).map_err(internal)?;
                let formula = abelian_augmentation_index(&inv, p);
                Verdict::new(
                    "abelian_augmentation_index",
                    Status::of(t as u64 == formula),
                    format!("brute-force t(G) = {t}, formula = {formula}"),
                )
            }
            None => not_checked("abelian_augmentation_index"),
        }
    } else {
        Verdict::new("abelian_augmentation_index", Status::NotApplicable, "nonabelian group")
    });
    verdicts.push(match &derived_aug {
        Some(DerivedAugmentation { formula, bruteforce: Some(b) }) => Verdict::new(
            "derived_augmentation_index",
            Status::of(*b as u64 == *formula),
            format!("brute-force t(G') = {b}, formula = {formula}"),
        ),
        Some(_) => not_checked("derived_augmentation_index"),
        None => Verdict::new(
            "derived_augmentation_index",
            Status::NotApplicable,
            "G' is trivial or nonabelian",
        ),
    });

    Ok(IndexReport {
        group: summary,
        formula_only,
        t_lower,
        t_upper_bruteforce: t_upper,
        t_upper_closed_form: closed,
        t_aug,
        derived_augmentation: derived_aug,
        chains: ChainDims {
            lower: brute.as_ref().map(|b| b.lower.chain().dims()),
            upper: brute.as_ref().map(|b| b.upper.clone()),
            augmentation: brute.as_ref().map(|b| b.augmentation.clone()),
        },
        d_profile: dc.d,
        bounds,
        expected: resolved.expected.clone(),
        verdicts,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SeriesReport {
    pub group: GroupSummary,
    /// `|γ_1|, |γ_2|, ..., 1`
    pub gamma_orders: Vec<usize>,
    /// `|D_(1)|, |D_(2)|, ..., 1`
    pub dimension_orders: Vec<usize>,
    pub d_profile: Vec<u32>,
    pub ranks: RankProfile,
}

pub fn series(resolved: &ResolvedGroup, timings: &mut Timings) -> SeriesReport {
    let g = &resolved.group;
    timings.time("series", || {
        let dc = dimension_subgroup_chain(g);
        SeriesReport {
            group: GroupSummary::new(&resolved.name, resolved.source, g),
            gamma_orders: g.lower_central_series().iter().map(|s| s.order()).collect(),
            dimension_orders: dc.subgroups.iter().map(|s| s.order()).collect(),
            d_profile: dc.d,
            ranks: g.rank_profile(),
        }
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LemmaReport {
    pub group: GroupSummary,
    pub samples: usize,
    pub seed: u64,
    pub t_lower: usize,
    pub checks: Vec<CheckReport>,
    pub bounds: Vec<BoundReport>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::passed) && self.bounds.iter().all(BoundReport::passed)
    }
}

const QUADRUPLE: &str = "quadruple_commutator_square";

pub fn lemmas(
    resolved: &ResolvedGroup,
    samples: usize,
    seed: u64,
    timings: &mut Timings,
) -> Result<LemmaReport, CliError> {
    let g = &resolved.group;
    let ctx = timings.time("algebra_context", || AlgebraContext::new(g.clone()));
    let lower = timings.time("lower_chain", || ctx.lower_lie_chain()).map_err(internal)?;
    let t = lower.t_lower();
    let mut checks = timings.time("preliminary_facts", || {
        ctx.check_preliminary_facts(&lower, t, samples, seed)
    });
    checks.push(timings.time("cube_power_containment", || ctx.check_cube_power_containment(&lower, t)));
    checks.push(timings.time("triple_commutator_absorption", || {
        ctx.check_triple_commutator_absorption(&lower, samples, seed)
    }));
    checks.push(if g.p() == 2 {
        CheckReport::skipped(QUADRUPLE, "needs 2 to be a unit of K (p != 2)")
    } else {
        timings
            .time(QUADRUPLE, || ctx.check_quadruple_commutator_square(&lower, samples, seed))
            .map_err(internal)?
    });
    let bounds = timings.time("bounds", || {
        vec![commutator_augmentation_bound(g, t), rank_profile_bound(g, t)]
    });
    Ok(LemmaReport {
        group: GroupSummary::new(&resolved.name, resolved.source, g),
        samples,
        seed,
        t_lower: t,
        checks,
        bounds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanRow {
    pub name: String,
    pub order: usize,
    pub derived_order: usize,
    pub class: usize,
    pub t_lower: Option<usize>,
    pub t_upper: Option<usize>,
    pub t_upper_closed_form: u64,
    pub oracle: Status,
}

/// Groups with `t_L = k` against groups with `t^L = k`.
#[derive(Clone, Debug, Serialize)]
pub struct IndexSetVerdict {
    pub k: usize,
    pub lower: Vec<String>,
    pub upper: Vec<String>,
    pub status: Status,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    pub p: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_order: Option<usize>,
    pub formula_only: bool,
    /// `p+1, 2p, 3p-1, 4p-2, 5p-3, 6p-4`
    pub k_values: Vec<usize>,
    pub rows: Vec<ScanRow>,
    pub index_sets: Vec<IndexSetVerdict>,
    /// `p = 3` only.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub cases: Vec<CaseCoverage>,
    pub verdicts: Vec<Verdict>,
}

/// One case branch and whether its witness made it into this scan.
#[derive(Clone, Debug, Serialize)]
pub struct CaseCoverage {
    #[serde(flatten)]
    pub case: IndexCase,
    pub scanned: bool,
}

impl ScanReport {
    pub fn passed(&self) -> bool {
        self.index_sets.iter().all(|v| v.status != Status::Fail) && all_pass(&self.verdicts)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanBundle {
    /// Echoed only; the scan itself draws no samples.
    pub seed: u64,
    pub scans: Vec<ScanReport>,
}

impl ScanBundle {
    pub fn passed(&self) -> bool {
        self.scans.iter().all(ScanReport::passed)
    }
}

pub fn k_values(p: u8) -> Vec<usize> {
    let p = p as usize;
    (1..=6).map(|i| i * p + 2 - i).collect()
}

fn scan_row(entry: &catalog::CatalogEntry, formula_only: bool) -> Result<ScanRow, CliError> {
    let g = entry.build().map_err(internal)?;
    let gammas = g.lower_central_series();
    let dc = dimension_subgroup_chain(&g);
    let closed = upper_index_closed_form(&dc.d, g.p());
    let (t_lower, t_upper) = if formula_only {
        (None, None)
    } else {
        let ctx = AlgebraContext::new(g.clone());
        let lower = ctx.lower_lie_chain().map_err(internal)?;
        let upper = ctx.upper_lie_chain().map_err(internal)?;
        (Some(lower.t_lower()), Some(upper.stop_index()))
    };
    Ok(ScanRow {
        name: entry.name.clone(),
        order: g.order(),
        derived_order: gammas.get(1).map_or(1, |s| s.order()),
        class: gammas.len() - 1,
        t_lower,
        t_upper,
        t_upper_closed_form: closed,
        oracle: match t_upper {
            Some(t) => Status::of(t as u64 == closed),
            None => Status::NotChecked,
        },
    })
}

pub fn scan(
    p: u8,
    max_order: Option<usize>,
    formula_only: bool,
    timings: &mut Timings,
) -> Result<ScanReport, CliError> {
    let cap = max_order.unwrap_or(DEFAULT_ORDER_CAP);
    let entries: Vec<_> = catalog::builtin_catalog()
        .into_iter()
        .filter(|e| e.p() == p && e.order() <= cap)
        .collect();
    // entries are independent; collect in catalog (name) order
    let rows = timings.time(&format!("scan_p{p}"), || {
        std::thread::scope(|s| {
            let handles: Vec<_> = entries
                .iter()
                .map(|e| s.spawn(move || scan_row(e, formula_only)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("scan worker panicked"))
                .collect::<Result<Vec<_>, _>>()
        })
    })?;

    let ks = k_values(p);
    let names_with = |f: &dyn Fn(&ScanRow) -> Option<usize>, k: usize| -> Vec<String> {
        rows.iter().filter(|r| f(r) == Some(k)).map(|r| r.name.clone()).collect()
    };
    let index_sets = ks
        .iter()
        .map(|&k| {
            let lower = names_with(&|r| r.t_lower, k);
            let upper = names_with(&|r| r.t_upper, k);
            let status = if formula_only {
                Status::NotChecked
            } else {
                Status::of(lower == upper)
            };
            IndexSetVerdict { k, lower, upper, status }
        })
        .collect();

    let mut verdicts = Vec::new();
    let mut offenders = |name: &str, what: &str, bad: Vec<String>| {
        let (status, detail) = if formula_only {
            (Status::NotChecked, "brute force skipped".to_string())
        } else if bad.is_empty() {
            (Status::Pass, format!("no row with {what}"))
        } else {
            (Status::Fail, format!("{what}: {}", bad.join(", ")))
        };
        verdicts.push(Verdict::new(name, status, detail));
    };
    let rows_where = |f: &dyn Fn(&ScanRow) -> bool| -> Vec<String> {
        rows.iter().filter(|r| f(r)).map(|r| r.name.clone()).collect()
    };
    offenders(
        "oracle_agreement",
        "brute-force t^L != closed form",
        rows_where(&|r| r.oracle == Status::Fail),
    );
    offenders(
        "sandwich",
        "t_L > t^L",
        rows_where(&|r| matches!((r.t_lower, r.t_upper), (Some(l), Some(u)) if l > u)),
    );
    if p == 3 {
        offenders(
            "forbidden_lower_values",
            "t_L in {11, 13}",
            rows_where(&|r| matches!(r.t_lower, Some(11 | 13))),
        );
    }
    if p > 3 {
        offenders(
            "lower_equals_upper",
            "t_L != t^L",
            rows_where(&|r| r.t_lower != r.t_upper),
        );
    }
    let cases = if p == 3 {
        INDEX_CASES
            .iter()
            .map(|c| CaseCoverage {
                case: c.clone(),
                scanned: c.witness.is_some_and(|w| rows.iter().any(|r| r.name == w)),
            })
            .collect()
    } else {
        Vec::new()
    };
    Ok(ScanReport {
        p,
        max_order,
        formula_only,
        k_values: ks,
        rows,
        index_sets,
        cases,
        verdicts,
    })
}
