//! Branches of the `p = 3` case analysis for `t_L = t^L = 12` and `14`, each
//! with its catalog witness or the reason there is none.
//!
//! A branch is pinned down by the invariants of `G'`, by `r` with
//! `|γ_3 G'^3 / G'^3| = 3^r`, and where needed by the `d` profile. Lower
//! bounds on `|G|` come from `G'/γ_3` having rank at most `C(d, 2)` when `G`
//! needs `d` generators.

use serde::Serialize;

use crate::indexformulas::{commutator_augmentation_bound, dimension_subgroup_chain};
use crate::pcgroup::FiniteGroup;

#[derive(Clone, Debug, Serialize)]
pub struct IndexCase {
    /// Common value of `t_L` and `t^L`.
    pub k: usize,
    /// Abelian invariants of `G'` as exponents of 3, largest first.
    pub derived: &'static [u32],
    pub r: u32,
    /// `d_(2), d_(3), ...` when the branch fixes it.
    pub d_profile: Option<&'static [u32]>,
    pub witness: Option<&'static str>,
    pub note: &'static str,
}

impl IndexCase {
    /// Whether `g` falls in this branch. Says nothing about `t_L`.
    pub fn matches(&self, g: &FiniteGroup) -> bool {
        if g.p() != 3 || g.is_abelian() {
            return false;
        }
        let derived = &g.lower_central_series()[1];
        let Ok(inv) = g.abelian_invariants(derived) else {
            return false;
        };
        let mut exps = inv.exponents;
        exps.sort_unstable_by(|a, b| b.cmp(a));
        if exps != self.derived || commutator_augmentation_bound(g, 0).r != Some(self.r) {
            return false;
        }
        match self.d_profile {
            Some(d) => dimension_subgroup_chain(g).d == d,
            None => true,
        }
    }
}

pub const INDEX_CASES: &[IndexCase] = &[
    IndexCase {
        k: 12,
        derived: &[2, 1],
        r: 0,
        d_profile: None,
        witness: None,
        note: "G'/γ_3 has rank 2, so G needs 3 generators and |G| >= 3^6",
    },
    IndexCase {
        k: 12,
        derived: &[1, 1, 1, 1, 1],
        r: 0,
        d_profile: None,
        witness: None,
        note: "G'/γ_3 has rank 5, so G needs 4 generators and |G| >= 3^9",
    },
    IndexCase {
        k: 12,
        derived: &[1, 1, 1, 1],
        r: 1,
        d_profile: Some(&[3, 1]),
        witness: None,
        note: "G'/γ_3 has rank 3, so G needs 3 generators and |G| >= 3^7",
    },
    IndexCase {
        k: 12,
        derived: &[1, 1, 1],
        r: 2,
        d_profile: Some(&[1, 2]),
        witness: Some("class3_243"),
        note: "γ_4 = 1",
    },
    IndexCase {
        k: 14,
        derived: &[2, 1, 1],
        r: 0,
        d_profile: None,
        witness: None,
        note: "G'/γ_3 has rank 3, so G needs 3 generators and |G| >= 3^7",
    },
    IndexCase {
        k: 14,
        derived: &[1, 1, 1, 1, 1, 1],
        r: 0,
        d_profile: None,
        witness: None,
        note: "G'/γ_3 has rank 6, so G needs 4 generators and |G| >= 3^10",
    },
    IndexCase {
        k: 14,
        derived: &[1, 1, 1, 1, 1],
        r: 1,
        d_profile: Some(&[4, 1]),
        witness: None,
        note: "G'/γ_3 has rank 4, so G needs 4 generators and |G| >= 3^9",
    },
    IndexCase {
        k: 14,
        derived: &[2, 1],
        r: 1,
        d_profile: Some(&[1, 1, 1]),
        witness: Some("maxclass243"),
        note: "γ_4 = C3 inside G'^3",
    },
    IndexCase {
        k: 14,
        derived: &[1, 1, 1, 1],
        r: 2,
        d_profile: Some(&[2, 2]),
        witness: None,
        note: "G'/γ_3 has rank 2, so G needs 3 generators and |G| >= 3^7",
    },
    IndexCase {
        k: 14,
        derived: &[1, 1, 1],
        r: 2,
        d_profile: Some(&[1, 1, 1]),
        witness: None,
        note: "maximal class of order 3^5 with elementary G'; no consistent presentation in the catalog",
    },
];
