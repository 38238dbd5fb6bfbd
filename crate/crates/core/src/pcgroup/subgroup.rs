use serde::Serialize;

use crate::error::{Error, Result};

use super::group::FiniteGroup;

/// A subgroup stored as its sorted element set together with a generating witness.
///
/// Equality compares element sets only.
#[derive(Clone, Debug)]
pub struct Subgroup {
    elements: Vec<usize>,
    generators: Vec<usize>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|&g| other.contains(g))
    }
}

/// Exponents `(m_1 ≥ m_2 ≥ ... ≥ m_s)` of an abelian p-group `∏ C_{p^{m_i}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AbelianInvariants {
    pub exponents: Vec<u32>,
}

impl AbelianInvariants {
    pub fn log_order(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn rank(&self) -> usize {
        self.exponents.len()
    }
}

/// Ranks `m_i` of the lower central factors `γ_i / γ_{i+1}` for `2 ≤ i ≤ c`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    /// `ranks[0]` is `m_2`.
    pub ranks: Vec<u32>,
    pub class: usize,
}

impl FiniteGroup {
    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            elements: vec![0],
            generators: Vec::new(),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
            generators: self.gen_indices().to_vec(),
        }
    }

    /// Smallest subgroup containing `seed`. The stored generators are the
    /// irredundant subsequence of `seed` that was actually needed.
    pub fn subgroup_closure<I: IntoIterator<Item = usize>>(&self, seed: I) -> Subgroup {
        let n = self.order();
        let mut member = vec![false; n];
        member[0] = true;
        let mut elements = vec![0usize];
        let mut generators = Vec::new();
        for s in seed {
            assert!(s < n, "element index {s} out of range");
            if member[s] {
                continue;
            }
            generators.push(s);
            // right-multiply everything reached so far by all generators until closed
            let mut i = 0;
            while i < elements.len() {
                let x = elements[i];
                for &g in &generators {
                    let y = self.mul(x, g);
                    if !member[y] {
                        member[y] = true;
                        elements.push(y);
                    }
                }
                i += 1;
            }
        }
        elements.sort_unstable();
        Subgroup {
            elements,
            generators,
        }
    }

    /// `γ_1 = G ⊇ γ_2 ⊇ ... ⊇ γ_{c+1} = 1` with `γ_{i+1} = (γ_i, G)`.
    pub fn lower_central_series(&self) -> Vec<Subgroup> {
        let mut series = vec![self.whole()];
        let n = self.order();
        loop {
            let current = series.last().unwrap();
            if current.is_trivial() {
                break;
            }
            let mut seen = vec![false; n];
            let mut seed = Vec::new();
            for &g in current.elements() {
                for h in 0..n {
                    let c = self.commutator(g, h);
                    if !seen[c] {
                        seen[c] = true;
                        seed.push(c);
                    }
                }
            }
            let next = self.subgroup_closure(seed);
            if next.order() == current.order() {
                // not nilpotent; impossible for p-groups
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class: number of nontrivial terms of the lower central series
    /// (0 for the trivial group).
    pub fn nilpotency_class(&self) -> usize {
        self.lower_central_series().len() - 1
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.generators().iter().all(|&x| {
            self.gen_indices()
                .iter()
                .all(|&g| h.contains(self.conjugate(x, g)))
        })
    }

    /// Subgroup generated by all `q`-th powers of elements of `h`; `q` must be a power of `p`.
    pub fn power_subgroup(&self, h: &Subgroup, q: u64) -> Result<Subgroup> {
        if q == 0 || !super::group::is_power_of(q as usize, self.p() as usize) {
            return Err(Error::Input(format!(
                "exponent {q} is not a power of {}",
                self.p()
            )));
        }
        if q == 1 {
            return Ok(h.clone());
        }
        let mut seen = vec![false; self.order()];
        let mut seed = Vec::new();
        for &x in h.elements() {
            let y = self.pow(x, q);
            if !seen[y] {
                seen[y] = true;
                seed.push(y);
            }
        }
        Ok(self.subgroup_closure(seed))
    }

    /// `HK` for subgroups of which at least one is normal.
    pub fn subgroup_product(&self, h: &Subgroup, k: &Subgroup) -> Result<Subgroup> {
        if !self.is_normal(h) && !self.is_normal(k) {
            return Err(Error::Invariant(
                "product of two non-normal subgroups requested".into(),
            ));
        }
        let prod = self.subgroup_closure(
            h.generators()
                .iter()
                .chain(k.generators().iter())
                .copied(),
        );
        // |HK| = |H||K| / |H ∩ K|
        let meet = h.elements().iter().filter(|&&x| k.contains(x)).count();
        if prod.order() * meet != h.order() * k.order() {
            return Err(Error::Invariant("product set is not a subgroup".into()));
        }
        Ok(prod)
    }

    pub fn center(&self) -> Subgroup {
        let gens = self.gen_indices();
        let central = (0..self.order())
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)));
        self.subgroup_closure(central)
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gens = h.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Invariants of an abelian subgroup by counting elements of each p-power order:
    /// `|{h : h^{p^k} = 1}| = p^{Σ min(m_i, k)}`.
    pub fn abelian_invariants(&self, h: &Subgroup) -> Result<AbelianInvariants> {
        if !self.is_abelian_subgroup(h) {
            return Err(Error::Domain(
                "abelian invariants requested for a nonabelian subgroup".into(),
            ));
        }
        let mut count_by_log = Vec::<usize>::new();
        for &x in h.elements() {
            let k = self.log_p(self.element_order(x)) as usize;
            if count_by_log.len() <= k {
                count_by_log.resize(k + 1, 0);
            }
            count_by_log[k] += 1;
        }
        // omega[k] = log_p |{h : h^{p^k} = 1}|
        let mut omega = Vec::with_capacity(count_by_log.len());
        let mut acc = 0;
        for c in &count_by_log {
            acc += c;
            omega.push(self.log_p(acc));
        }
        // at_least[k] = #{i : m_i ≥ k} = omega[k] - omega[k-1]
        let top = omega.len() - 1;
        let at_least: Vec<u32> = (1..=top).map(|k| omega[k] - omega[k - 1]).collect();
        let mut exponents = Vec::new();
        for k in (1..=top).rev() {
            let exactly = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
            exponents.extend(std::iter::repeat_n(k as u32, exactly as usize));
        }
        Ok(AbelianInvariants { exponents })
    }

    /// Rank of the abelian section `H / K`: `log_p |H : K H^p|`.
    pub fn section_rank(&self, h: &Subgroup, k: &Subgroup) -> Result<u32> {
        if !k.is_subgroup_of(h) {
            return Err(Error::Input("section H/K requires K ⊆ H".into()));
        }
        let hp = self.power_subgroup(h, self.p() as u64)?;
        let khp = self.subgroup_closure(
            k.generators()
                .iter()
                .chain(hp.generators().iter())
                .copied(),
        );
        Ok(self.log_p(h.order()) - self.log_p(khp.order()))
    }

    /// `h` as a group in its own right, elements relabelled in increasing order.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Result<FiniteGroup> {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &x) in h.elements().iter().enumerate() {
            index[x] = i;
        }
        let table = h
            .elements()
            .iter()
            .map(|&a| h.elements().iter().map(|&b| index[self.mul(a, b)]).collect())
            .collect();
        FiniteGroup::from_table(self.field(), table)
    }

    pub fn rank_profile(&self) -> RankProfile {
        let series = self.lower_central_series();
        let class = series.len() - 1;
        let ranks = (2..=class)
            .map(|i| {
                self.section_rank(&series[i - 1], &series[i])
                    .expect("lower central series is descending")
            })
            .collect();
        RankProfile { ranks, class }
    }
}
