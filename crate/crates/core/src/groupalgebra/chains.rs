use serde::Serialize;

use super::{AlgebraContext, IdealBuilder};
use crate::error::{Error, Result};
use crate::ffkernel::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainKind {
    Lower,
    Upper,
    Augmentation,
}

/// A descending chain of subspaces of `KG`, ending with the first zero term.
#[derive(Clone, Debug)]
pub struct LieChain {
    kind: ChainKind,
    // spaces[n - 1] is the n-th term
    spaces: Vec<Subspace>,
}

impl LieChain {
    pub fn kind(&self) -> ChainKind {
        self.kind
    }

    /// Term `n >= 1`; terms past the end of the chain are zero.
    pub fn term(&self, n: usize) -> Subspace {
        assert!(n >= 1, "chain terms are indexed from 1");
        match self.spaces.get(n - 1) {
            Some(s) => s.clone(),
            None => {
                let last = self.spaces.last().unwrap();
                Subspace::zero(last.field(), last.ambient_dim())
            }
        }
    }

    pub(crate) fn term_ref(&self, n: usize) -> Option<&Subspace> {
        self.spaces.get(n - 1)
    }

    /// Terms `1..=stop_index`.
    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    /// First `n` with a zero term.
    pub fn stop_index(&self) -> usize {
        self.spaces.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(Subspace::dim).collect()
    }
}

/// The lower chain together with the weight spaces it was built from and a
/// generating set of each term as an ideal.
#[derive(Clone, Debug)]
pub struct LowerChain {
    pub(crate) chain: LieChain,
    // weights[n - 1] = W_n
    pub(crate) weights: Vec<Subspace>,
    // ideal_gens[n - 1] generates R^[n] as a two-sided ideal
    pub(crate) ideal_gens: Vec<Vec<Vec<u8>>>,
}

impl LowerChain {
    pub fn chain(&self) -> &LieChain {
        &self.chain
    }

    /// Lower Lie nilpotency index.
    pub fn t_lower(&self) -> usize {
        self.chain.stop_index()
    }

    pub fn weight_spaces(&self) -> &[Subspace] {
        &self.weights
    }

    pub(crate) fn ideal_generators(&self, n: usize) -> &[Vec<u8>] {
        self.ideal_gens.get(n - 1).map_or(&[], Vec::as_slice)
    }
}

fn chain_cap_error(ctx: &AlgebraContext, what: &str) -> Error {
    Error::Invariant(format!(
        "{what} did not reach zero within {} steps",
        ctx.dim() + 2
    ))
}

fn assert_strict(prev: &Subspace, next: &Subspace, what: &str) -> Result<()> {
    if next.dim() >= prev.dim() {
        return Err(Error::Invariant(format!(
            "{what} stalled at dimension {}",
            prev.dim()
        )));
    }
    Ok(())
}

impl AlgebraContext {
    /// `W_{n+1} = span{[w, g] : w ∈ W_n, g ∈ G}`.
    pub(crate) fn next_weight_space(&self, w: &Subspace) -> Subspace {
        let mut next = self.zero_space();
        let mut queue = Vec::new();
        for row in w.basis() {
            for &g in self.bracket_reps() {
                if let Some(r) = next.insert(self.bracket_group(row, g)) {
                    queue.push(r);
                }
            }
        }
        self.conjugation_close(&mut next, queue);
        next
    }

    /// Weight spaces `W_1 = KG, W_2, ..., W_k`, stopping at the first zero
    /// space or at `W_cap`.
    pub fn lie_weight_spaces(&self, cap: usize) -> Result<Vec<Subspace>> {
        if cap < 2 {
            return Err(Error::Input(format!("weight space cap {cap} is below 2")));
        }
        let mut spaces = vec![self.full_space()];
        while spaces.len() < cap && !spaces.last().unwrap().is_zero() {
            let next = self.next_weight_space(spaces.last().unwrap());
            spaces.push(next);
        }
        Ok(spaces)
    }

    pub fn lower_lie_chain(&self) -> Result<LowerChain> {
        let cap = self.dim() + 2;
        let full = self.full_space();
        let mut weights = vec![full.clone()];
        let mut spaces = vec![full];
        let mut ideal_gens = vec![vec![{
            let mut one = vec![0u8; self.dim()];
            one[0] = 1;
            one
        }]];
        loop {
            if spaces.len() >= cap {
                return Err(chain_cap_error(self, "lower Lie chain"));
            }
            let w = self.next_weight_space(weights.last().unwrap());
            let mut builder = IdealBuilder::new(self);
            for row in w.basis() {
                builder.add(row.to_vec());
            }
            let (ideal, gens) = builder.finish();
            assert_strict(spaces.last().unwrap(), &ideal, "lower Lie chain")?;
            let done = ideal.is_zero();
            weights.push(w);
            spaces.push(ideal);
            ideal_gens.push(gens);
            if done {
                break;
            }
        }
        Ok(LowerChain {
            chain: LieChain {
                kind: ChainKind::Lower,
                spaces,
            },
            weights,
            ideal_gens,
        })
    }

    /// `I_n` is the ideal generated by `[u, x]` for `u ∈ I_{n-1}` and generators `x`;
    /// `[u, ab] = [u, a] b + a [u, b]` keeps every `[u, g]` with `g ∈ G` inside it.
    pub fn upper_lie_chain(&self) -> Result<LieChain> {
        let cap = self.dim() + 2;
        let mut spaces = vec![self.full_space()];
        loop {
            if spaces.len() >= cap {
                return Err(chain_cap_error(self, "upper Lie chain"));
            }
            let prev = spaces.last().unwrap();
            let mut builder = IdealBuilder::new(self);
            for row in prev.basis() {
                for &x in self.group().gen_indices() {
                    builder.add(self.bracket_group(row, x));
                }
            }
            let next = builder.finish().0;
            assert_strict(prev, &next, "upper Lie chain")?;
            let done = next.is_zero();
            spaces.push(next);
            if done {
                break;
            }
        }
        Ok(LieChain {
            kind: ChainKind::Upper,
            spaces,
        })
    }

    /// Powers `Δ, Δ^2, ...` of the augmentation ideal; the stop index is `t(G)`.
    /// `Δ^{k+1}` is generated as an ideal by `a (x - 1)` with `a ∈ Δ^k` and generators `x`.
    pub fn augmentation_chain(&self) -> Result<LieChain> {
        let cap = self.dim() + 2;
        let mut spaces = vec![self.augmentation_ideal()];
        let p = self.field().p();
        while !spaces.last().unwrap().is_zero() {
            if spaces.len() >= cap {
                return Err(chain_cap_error(self, "augmentation chain"));
            }
            let prev = spaces.last().unwrap();
            let mut builder = IdealBuilder::new(self);
            for row in prev.basis() {
                for &x in self.group().gen_indices() {
                    let mut v = self.right_mul_group(row, x);
                    crate::ffkernel::axpy(p, &mut v, row, self.field().neg(1));
                    builder.add(v);
                }
            }
            let next = builder.finish().0;
            assert_strict(prev, &next, "augmentation chain")?;
            spaces.push(next);
        }
        Ok(LieChain {
            kind: ChainKind::Augmentation,
            spaces,
        })
    }
}
