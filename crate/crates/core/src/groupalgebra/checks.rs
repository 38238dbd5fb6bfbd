use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{AlgebraContext, AlgebraElement, LowerChain};
use crate::error::{Error, Result};
use crate::ffkernel::{MembershipTest, Subspace};

/// Default number of random unit samples for the sampled checks.
pub const DEFAULT_SAMPLES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckMethod {
    Exact,
    Sampled,
}

/// Outcome of one containment check. Violations are content, not errors.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub status: CheckStatus,
    pub method: CheckMethod,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Number of individual containments or memberships tested.
    pub instances: usize,
    pub violations: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    fn new(name: &str, method: CheckMethod) -> Self {
        CheckReport {
            name: name.to_string(),
            status: CheckStatus::Pass,
            method,
            samples: None,
            seed: None,
            instances: 0,
            violations: Vec::new(),
            note: None,
        }
    }

    fn sampled(name: &str, samples: usize, seed: u64) -> Self {
        CheckReport {
            samples: Some(samples),
            seed: Some(seed),
            note: Some("sampled over random units 1 + d, d in the augmentation ideal".into()),
            ..CheckReport::new(name, CheckMethod::Sampled)
        }
    }

    pub fn skipped(name: &str, reason: impl Into<String>) -> Self {
        CheckReport {
            status: CheckStatus::Skipped,
            note: Some(reason.into()),
            ..CheckReport::new(name, CheckMethod::Exact)
        }
    }

    pub fn passed(&self) -> bool {
        self.status != CheckStatus::Fail
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.status = CheckStatus::Fail;
            // keep reports readable when something is badly off
            if self.violations.len() < 32 {
                self.violations.push(describe());
            }
        }
    }
}

// distinct random streams per check so reports do not depend on call order
const STREAM_UNIT_LOWER_CENTRAL: u64 = 1;
const STREAM_COMMUTATOR_POWER: u64 = 2;
const STREAM_TRIPLE_COMMUTATOR: u64 = 3;
const STREAM_QUADRUPLE_COMMUTATOR: u64 = 4;

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// `R^[n]`, with terms past the chain zero and `R^[1] = R`.
fn lower_term<'a>(lower: &'a LowerChain, zero: &'a Subspace, n: usize) -> &'a Subspace {
    lower.chain.term_ref(n).unwrap_or(zero)
}

/// Membership testers for every term of the lower chain.
struct TermTests {
    // tests[n - 1] tests R^[n]; the last one is the zero term
    tests: Vec<MembershipTest>,
}

impl TermTests {
    fn new(lower: &LowerChain) -> Self {
        TermTests {
            tests: lower.chain.spaces().iter().map(Subspace::membership_test).collect(),
        }
    }

    fn contains(&self, n: usize, v: &[u8]) -> bool {
        self.tests[(n - 1).min(self.tests.len() - 1)].contains(v)
    }
}

impl AlgebraContext {
    /// A random unit `1 + d` with `d` uniform in the augmentation ideal.
    pub fn random_unit<R: Rng>(&self, rng: &mut R) -> AlgebraElement {
        let f = self.field();
        let mut v: Vec<u8> = (0..self.dim()).map(|_| rng.gen_range(0..f.p())).collect();
        let rest = v[1..].iter().map(|&x| x as i64).sum::<i64>();
        v[0] = f.reduce(1 - rest);
        self.wrap(v)
    }

    /// Inverse of a unit in `1 + Δ`: `(1 + d)^{|G|} = 1 + d^{|G|} = 1`.
    pub(crate) fn inverse_of_normalized_unit(&self, u: &AlgebraElement) -> AlgebraElement {
        debug_assert_eq!(self.augmentation(u), 1);
        let mut e = self.dim() - 1;
        let mut base = u.clone();
        let mut result = self.one();
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(&result, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        result
    }

    /// Group commutator `(x, y) = x^{-1} y^{-1} x y` of two units, or `None`
    /// if either is not invertible.
    pub fn unit_commutator(&self, x: &AlgebraElement, y: &AlgebraElement) -> Option<AlgebraElement> {
        let xi = self.inverse(x)?;
        let yi = self.inverse(y)?;
        Some(self.mul(&self.mul(&xi, &yi), &self.mul(x, y)))
    }

    /// Left-normed commutator `(u_1, ..., u_k)` of units from `1 + Δ`, tracking
    /// inverses through `(a, b)^{-1} = (b, a)`.
    pub(crate) fn left_normed_unit_commutator(&self, units: &[AlgebraElement]) -> AlgebraElement {
        let mut c = units[0].clone();
        let mut c_inv = self.inverse_of_normalized_unit(&c);
        for u in &units[1..] {
            let u_inv = self.inverse_of_normalized_unit(u);
            let next = self.mul(&self.mul(&c_inv, &u_inv), &self.mul(&c, u));
            let next_inv = self.mul(&self.mul(&u_inv, &c_inv), &self.mul(u, &c));
            c = next;
            c_inv = next_inv;
        }
        c
    }

    /// `R^[m] R^[n] ⊆ R^[m+n-2]` for all `m, n >= 2` with `m + n - 2` up to the stop index.
    pub fn check_lie_power_products(&self, lower: &LowerChain) -> CheckReport {
        let mut report = CheckReport::new("lie_power_product", CheckMethod::Exact);
        let zero = self.zero_space();
        let stop = lower.t_lower();
        for m in 2..=stop {
            for n in 2..=stop {
                if m + n - 2 > stop {
                    continue;
                }
                let a = lower_term(lower, &zero, m);
                let target = lower_term(lower, &zero, m + n - 2);
                let ok = a.basis().all(|x| {
                    lower
                        .ideal_generators(n)
                        .iter()
                        .all(|s| target.contains_slice(&self.mul_slices(x, s)))
                });
                report.record(ok, || {
                    format!("R^[{m}] R^[{n}] is not contained in R^[{}]", m + n - 2)
                });
            }
        }
        report
    }

    /// `γ_m(U) ⊆ 1 + R^[m]` on sampled units, for `2 <= m <= m_max`. Each sample
    /// draws `u_1, ..., u_{m_max}` and checks every prefix commutator `(u_1, ..., u_m)`.
    pub fn check_unit_lower_central(
        &self,
        lower: &LowerChain,
        m_max: usize,
        samples: usize,
        seed: u64,
    ) -> CheckReport {
        let mut report = CheckReport::sampled("unit_lower_central", samples, seed);
        let mut rng = rng_for(seed, STREAM_UNIT_LOWER_CENTRAL);
        let one = self.one();
        if m_max < 2 {
            return report;
        }
        let terms = TermTests::new(lower);
        for s in 0..samples {
            let mut c = self.random_unit(&mut rng);
            let mut c_inv = self.inverse_of_normalized_unit(&c);
            for m in 2..=m_max {
                let u = self.random_unit(&mut rng);
                let u_inv = self.inverse_of_normalized_unit(&u);
                let next = self.mul(&self.mul(&c_inv, &u_inv), &self.mul(&c, &u));
                c_inv = self.mul(&self.mul(&u_inv, &c_inv), &self.mul(&u, &c));
                c = next;
                let diff = self.sub(&c, &one);
                report.record(terms.contains(m, diff.as_slice()), || {
                    format!("sample {s}: a commutator of weight {m} minus 1 lies outside R^[{m}]")
                });
            }
        }
        report
    }

    /// `((x, y) - 1)^k R^[m] ⊆ R^[m+k]` on sampled unit pairs, for `1 <= m <= m_max`.
    /// Each sample draws one pair and tests it against every `m`, with `k`
    /// cycling through `2..=max(2, stop - m)` across samples.
    pub fn check_commutator_power_absorption(
        &self,
        lower: &LowerChain,
        m_max: usize,
        samples: usize,
        seed: u64,
    ) -> CheckReport {
        let mut report = CheckReport::sampled("commutator_power_absorption", samples, seed);
        let mut rng = rng_for(seed, STREAM_COMMUTATOR_POWER);
        let zero = self.zero_space();
        let one = self.one();
        let stop = lower.t_lower();
        let terms = TermTests::new(lower);
        for s in 0..samples {
            let x = self.random_unit(&mut rng);
            let y = self.random_unit(&mut rng);
            let c = self.left_normed_unit_commutator(&[x, y]);
            let e = self.sub(&c, &one);
            // powers[j] = e^j
            let mut powers = vec![one.clone(), e.clone()];
            for m in 1..=m_max {
                let k_top = stop.saturating_sub(m).max(2);
                let k = 2 + s % (k_top - 1);
                while powers.len() <= k {
                    let next = self.mul(powers.last().unwrap(), &e);
                    powers.push(next);
                }
                let ek = &powers[k];
                let ok = ek.is_zero()
                    || lower_term(lower, &zero, m)
                        .basis()
                        .all(|v| terms.contains(m + k, &self.mul_slices(ek.as_slice(), v)));
                report.record(ok, || {
                    format!("sample {s}: ((x,y)-1)^{k} R^[{m}] is not contained in R^[{}]", m + k)
                });
            }
        }
        report
    }

    /// The three basic facts about Lie powers, in a fixed order.
    pub fn check_preliminary_facts(
        &self,
        lower: &LowerChain,
        m_max: usize,
        samples: usize,
        seed: u64,
    ) -> Vec<CheckReport> {
        vec![
            self.check_lie_power_products(lower),
            self.check_unit_lower_central(lower, m_max, samples, seed),
            self.check_commutator_power_absorption(lower, m_max, samples, seed),
        ]
    }

    /// Powers of `R^[3]`: `P^{2k} ⊆ R^[3k+2]`, `P^{2k+1} ⊆ R^[3k+3]`, and
    /// `P^k ⊆ R^[2k+1]` when `p != 3`, for `k <= k_max`.
    pub fn check_cube_power_containment(&self, lower: &LowerChain, k_max: usize) -> CheckReport {
        let mut report = CheckReport::new("cube_power_containment", CheckMethod::Exact);
        let zero = self.zero_space();
        let p3 = lower_term(lower, &zero, 3).clone();
        let gens = lower.ideal_generators(3).to_vec();
        let check_third = self.field().p() != 3;
        // powers[j - 1] = P^j
        let mut powers = vec![p3];
        let j_max = 2 * k_max + 1;
        while powers.len() < j_max && !powers.last().unwrap().is_zero() {
            let next = self.ideal_product(powers.last().unwrap(), &gens);
            powers.push(next);
        }
        let power = |j: usize| powers.get(j - 1).unwrap_or(&zero);
        for k in 1..=k_max {
            let (even, odd) = (power(2 * k), power(2 * k + 1));
            report.record(contained(even, lower_term(lower, &zero, 3 * k + 2)), || {
                format!("(R^[3])^{} is not contained in R^[{}]", 2 * k, 3 * k + 2)
            });
            report.record(contained(odd, lower_term(lower, &zero, 3 * k + 3)), || {
                format!("(R^[3])^{} is not contained in R^[{}]", 2 * k + 1, 3 * k + 3)
            });
            if check_third {
                report.record(contained(power(k), lower_term(lower, &zero, 2 * k + 1)), || {
                    format!("(R^[3])^{k} is not contained in R^[{}]", 2 * k + 1)
                });
            }
        }
        if !check_third {
            report.note = Some("odd-index containment needs 3 to be invertible; omitted for p = 3".into());
        }
        report
    }

    /// `((x, y, y) - 1) R^[m] ⊆ R^[m+2]` on sampled unit pairs, for `m + 2 <= stop`.
    pub fn check_triple_commutator_absorption(
        &self,
        lower: &LowerChain,
        samples: usize,
        seed: u64,
    ) -> CheckReport {
        let mut report = CheckReport::sampled("triple_commutator_absorption", samples, seed);
        let mut rng = rng_for(seed, STREAM_TRIPLE_COMMUTATOR);
        let zero = self.zero_space();
        let one = self.one();
        let stop = lower.t_lower();
        let terms = TermTests::new(lower);
        for s in 0..samples {
            let x = self.random_unit(&mut rng);
            let y = self.random_unit(&mut rng);
            let c = self.left_normed_unit_commutator(&[x, y.clone(), y]);
            let e = self.sub(&c, &one);
            for m in 1..=stop.saturating_sub(2) {
                let a = lower_term(lower, &zero, m);
                let ok = e.is_zero()
                    || a.basis()
                        .all(|v| terms.contains(m + 2, &self.mul_slices(e.as_slice(), v)));
                report.record(ok, || {
                    format!("sample {s}: ((x,y,y)-1) R^[{m}] is not contained in R^[{}]", m + 2)
                });
            }
        }
        report
    }

    /// `((x, y, y, y) - 1)^2 ∈ R^[7]` on sampled unit pairs; needs `p != 2`.
    pub fn check_quadruple_commutator_square(
        &self,
        lower: &LowerChain,
        samples: usize,
        seed: u64,
    ) -> Result<CheckReport> {
        if self.field().p() == 2 {
            return Err(Error::Precondition(
                "the quadruple commutator square check needs 2 to be invertible (p != 2)".into(),
            ));
        }
        let mut report = CheckReport::sampled("quadruple_commutator_square", samples, seed);
        let mut rng = rng_for(seed, STREAM_QUADRUPLE_COMMUTATOR);
        let zero = self.zero_space();
        let one = self.one();
        let target = lower_term(lower, &zero, 7);
        for s in 0..samples {
            let x = self.random_unit(&mut rng);
            let y = self.random_unit(&mut rng);
            let c = self.left_normed_unit_commutator(&[x, y.clone(), y.clone(), y]);
            let e = self.sub(&c, &one);
            let sq = self.mul(&e, &e);
            report.record(target.contains_slice(sq.as_slice()), || {
                format!("sample {s}: ((x,y,y,y)-1)^2 lies outside R^[7]")
            });
        }
        Ok(report)
    }
}

fn contained(a: &Subspace, b: &Subspace) -> bool {
    a.basis().all(|v| b.contains_slice(v))
}
