//! Closed forms: Lie dimension subgroups, the upper index formula, the
//! augmentation index of an abelian group, and two lower-bound families for
//! the lower index.

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::pcgroup::{AbelianInvariants, FiniteGroup, RankProfile, Subgroup};

/// `D_(1) ⊇ D_(2) ⊇ ... ⊇ D_(M) = 1` and the exponents `d_(m)`.
#[derive(Clone, Debug, PartialEq)]
pub struct DimensionChain {
    /// `subgroups[m - 1] = D_(m)`; `D_(1) = G` by convention.
    pub subgroups: Vec<Subgroup>,
    /// `d[0] = d_(2)`, `d[k] = d_(k+2)`, with `p^{d_(m)} = |D_(m) : D_(m+1)|`.
    pub d: Vec<u32>,
}

impl DimensionChain {
    pub fn d_sum(&self) -> u32 {
        self.d.iter().sum()
    }
}

/// `D_(m) = Π γ_i^{p^j}` over `(i - 1) p^j >= m - 1`. Only `i <= class + 1` and
/// `p^j <= exp(G)` contribute, all other factors being trivial.
pub fn dimension_subgroup_chain(g: &FiniteGroup) -> DimensionChain {
    let p = g.p() as u64;
    let gammas = g.lower_central_series();
    let exponent = (0..g.order()).map(|x| g.element_order(x)).max().unwrap_or(1) as u64;
    // (i, p^j, γ_i^{p^j}) for i >= 2
    let mut factors = Vec::new();
    for (idx, gamma) in gammas.iter().enumerate().skip(1) {
        let i = idx as u64 + 1;
        let mut q = 1u64;
        while q <= exponent {
            let power = g
                .power_subgroup(gamma, q)
                .expect("q is a power of p by construction");
            if !power.is_trivial() {
                factors.push((i, q, power));
            }
            q *= p;
        }
    }
    let mut subgroups = vec![g.whole()];
    for m in 2u64.. {
        let seed = factors
            .iter()
            .filter(|(i, q, _)| (i - 1) * q >= m - 1)
            .flat_map(|(_, _, s)| s.generators().iter().copied())
            .collect::<Vec<_>>();
        let dm = g.subgroup_closure(seed);
        let done = dm.is_trivial();
        subgroups.push(dm);
        if done {
            break;
        }
    }
    let d = subgroups[1..]
        .windows(2)
        .map(|w| g.log_p(w[0].order()) - g.log_p(w[1].order()))
        .collect();
    DimensionChain { subgroups, d }
}

/// `t^L = 2 + (p - 1) Σ_{m>=1} m d_(m+1)`, with `d[0] = d_(2)`.
pub fn upper_index_closed_form(d: &[u32], p: u8) -> u64 {
    let weighted: u64 = d
        .iter()
        .enumerate()
        .map(|(k, &dk)| (k as u64 + 1) * dk as u64)
        .sum();
    2 + (p as u64 - 1) * weighted
}

/// Nilpotency index of the augmentation ideal of an abelian p-group:
/// `1 + Σ (p^{m_i} - 1)`.
pub fn abelian_augmentation_index(inv: &AbelianInvariants, p: u8) -> u64 {
    1 + inv
        .exponents
        .iter()
        .map(|&m| (p as u64).pow(m) - 1)
        .sum::<u64>()
}

fn ratio_as_string<S: Serializer>(r: &Option<Ratio<i64>>, s: S) -> Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

/// Quantities behind one bound, and its verdict against a computed `t_L`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub applicable: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_prime: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lower_bound: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ranks: Option<RankProfile>,
    #[serde(serialize_with = "ratio_as_string", skip_serializing_if = "Option::is_none")]
    pub rank_lhs: Option<Ratio<i64>>,
    #[serde(serialize_with = "ratio_as_string", skip_serializing_if = "Option::is_none")]
    pub rank_rhs: Option<Ratio<i64>>,
    pub t_lower: usize,
    /// `None` when not applicable.
    pub holds: Option<bool>,
}

impl BoundReport {
    fn empty(name: &str, t_lower: usize) -> Self {
        BoundReport {
            name: name.to_string(),
            applicable: true,
            note: None,
            r: None,
            t_prime: None,
            lower_bound: None,
            ranks: None,
            rank_lhs: None,
            rank_rhs: None,
            t_lower,
            holds: None,
        }
    }

    fn not_applicable(mut self, note: &str) -> Self {
        self.applicable = false;
        self.note = Some(note.to_string());
        self.holds = None;
        self
    }

    /// True unless the bound applies and fails.
    pub fn passed(&self) -> bool {
        self.holds != Some(false)
    }
}

/// `t_L >= t(G') + r + 1` for `p = 3` and `t_L >= t(G') + r(p - 1) + 1` otherwise,
/// where `G'` is abelian and `|γ_3 G'^p / G'^p| = p^r`.
pub fn commutator_augmentation_bound(g: &FiniteGroup, t_lower: usize) -> BoundReport {
    let mut report = BoundReport::empty("augmentation_lower_bound", t_lower);
    let p = g.p();
    let gammas = g.lower_central_series();
    let derived = gammas.get(1).cloned().unwrap_or_else(|| g.trivial_subgroup());
    let Ok(inv) = g.abelian_invariants(&derived) else {
        return report.not_applicable("derived subgroup is nonabelian");
    };
    let gamma3 = gammas.get(2).cloned().unwrap_or_else(|| g.trivial_subgroup());
    let derived_p = g
        .power_subgroup(&derived, p as u64)
        .expect("p is a power of p");
    let joined = g.subgroup_closure(
        gamma3
            .generators()
            .iter()
            .chain(derived_p.generators())
            .copied(),
    );
    let r = g.log_p(joined.order()) - g.log_p(derived_p.order());
    let t_prime = abelian_augmentation_index(&inv, p);
    let bound = if p == 3 {
        t_prime + r as u64 + 1
    } else {
        t_prime + r as u64 * (p as u64 - 1) + 1
    };
    report.r = Some(r);
    report.t_prime = Some(t_prime);
    report.lower_bound = Some(bound);
    if derived.is_trivial() {
        return report.not_applicable("abelian group");
    }
    report.holds = Some(bound <= t_lower as u64);
    report
}

/// Weight of `m_i` in the rank-profile sum: 1, 3/2, then `i - 2` from `i = 4` on.
fn rank_weight(i: usize) -> Ratio<i64> {
    match i {
        2 => Ratio::from_integer(1),
        3 => Ratio::new(3, 2),
        _ => Ratio::from_integer(i as i64 - 2),
    }
}

/// `m_2 + (3/2) m_3 + 2 m_4 + 3 m_5 + ... + (c - 2) m_c <= (n - 3)/(p - 1)` with
/// `m_i` the rank of `γ_i / γ_{i+1}` and `n = t_L`. Needs `G` nonabelian and `p >= 3`.
pub fn rank_profile_bound(g: &FiniteGroup, t_lower: usize) -> BoundReport {
    let mut report = BoundReport::empty("rank_profile_bound", t_lower);
    let p = g.p();
    let profile = g.rank_profile();
    let lhs: Ratio<i64> = profile
        .ranks
        .iter()
        .enumerate()
        .map(|(k, &m)| rank_weight(k + 2) * m as i64)
        .sum();
    let rhs = Ratio::new(t_lower as i64 - 3, p as i64 - 1);
    report.ranks = Some(profile);
    report.rank_lhs = Some(lhs);
    report.rank_rhs = Some(rhs);
    if p == 2 {
        return report.not_applicable("needs p >= 3");
    }
    if g.is_abelian() {
        return report.not_applicable("abelian group");
    }
    report.holds = Some(lhs <= rhs);
    report
}
