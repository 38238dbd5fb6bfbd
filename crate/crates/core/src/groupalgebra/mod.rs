//! The group algebra `GF(p)G` in its regular basis.
//!
//! Coefficient position `i` corresponds to group element `i`, so every
//! ideal, Lie power or weight space is a [`Subspace`] of `GF(p)^{|G|}`.
//! Multiplying by a group element permutes coordinates, which is what makes
//! the chain computations affordable.

mod chains;
mod checks;

use std::collections::VecDeque;

use crate::ffkernel::{axpy, CoeffVector, FieldSpec, Subspace};
use crate::pcgroup::FiniteGroup;

pub use chains::{ChainKind, LieChain, LowerChain};
pub use checks::{CheckMethod, CheckReport, CheckStatus, DEFAULT_SAMPLES};

/// `GF(p)G` together with the permutation tables used by the chain code.
#[derive(Clone, Debug)]
pub struct AlgebraContext {
    group: FiniteGroup,
    field: FieldSpec,
    // column-major table: mul_t[h * n + g] = g h
    mul_t: Vec<u32>,
    // for each generator x: g ↦ x^{-1} g x
    conj: Vec<Vec<u32>>,
    // representatives of the orbits of G \ Z(G) under conjugation and
    // multiplication by central elements
    bracket_reps: Vec<usize>,
}

/// An element of `KG` as a coefficient vector indexed by group elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    coeffs: CoeffVector,
}

impl AlgebraElement {
    pub fn coeffs(&self) -> &CoeffVector {
        &self.coeffs
    }

    pub fn as_slice(&self) -> &[u8] {
        self.coeffs.as_slice()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.coeffs.into_vec()
    }
}

impl AlgebraContext {
    pub fn new(group: FiniteGroup) -> Self {
        let n = group.order();
        let field = group.field();
        let mut mul_t = vec![0u32; n * n];
        for g in 0..n {
            for (h, &gh) in group.mul_row(g).iter().enumerate() {
                mul_t[h * n + g] = gh;
            }
        }
        let conj = group
            .gen_indices()
            .iter()
            .map(|&x| (0..n).map(|g| group.conjugate(g, x) as u32).collect())
            .collect();
        let bracket_reps = bracket_representatives(&group);
        AlgebraContext {
            group,
            field,
            mul_t,
            conj,
            bracket_reps,
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.group.order()
    }

    pub fn zero_space(&self) -> Subspace {
        Subspace::zero(self.field, self.dim())
    }

    pub fn full_space(&self) -> Subspace {
        Subspace::full(self.field, self.dim())
    }

    pub fn element(&self, coeffs: CoeffVector) -> crate::Result<AlgebraElement> {
        if coeffs.len() != self.dim() {
            return Err(crate::Error::Input(format!(
                "element of length {} in an algebra of dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        Ok(AlgebraElement { coeffs })
    }

    pub(crate) fn wrap(&self, v: Vec<u8>) -> AlgebraElement {
        AlgebraElement {
            coeffs: CoeffVector::from_vec_unchecked(v),
        }
    }

    pub fn zero(&self) -> AlgebraElement {
        self.wrap(vec![0; self.dim()])
    }

    pub fn one(&self) -> AlgebraElement {
        self.basis_element(0)
    }

    /// The group element `g` as an algebra element.
    pub fn basis_element(&self, g: usize) -> AlgebraElement {
        let mut v = vec![0; self.dim()];
        v[g] = 1;
        self.wrap(v)
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.wrap(a.coeffs.add(&self.field, &b.coeffs).into_vec())
    }

    pub fn sub(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.wrap(a.coeffs.sub(&self.field, &b.coeffs).into_vec())
    }

    pub fn scale(&self, a: &AlgebraElement, c: u8) -> AlgebraElement {
        self.wrap(a.coeffs.scale(&self.field, c).into_vec())
    }

    /// Sum of coefficients (the augmentation map).
    pub fn augmentation(&self, a: &AlgebraElement) -> u8 {
        self.field
            .reduce(a.as_slice().iter().map(|&x| x as i64).sum::<i64>())
    }

    pub fn mul(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        self.wrap(self.mul_slices(a.as_slice(), b.as_slice()))
    }

    /// Lie bracket `ab - ba`.
    pub fn lie_bracket(&self, a: &AlgebraElement, b: &AlgebraElement) -> AlgebraElement {
        let ab = self.mul_slices(a.as_slice(), b.as_slice());
        let ba = self.mul_slices(b.as_slice(), a.as_slice());
        let mut out = ab;
        axpy(self.field.p(), &mut out, &ba, self.field.neg(1));
        self.wrap(out)
    }

    pub fn pow(&self, a: &AlgebraElement, k: u32) -> AlgebraElement {
        let mut result = self.one();
        for _ in 0..k {
            result = self.mul(&result, a);
        }
        result
    }

    /// Inverse of a unit. An element of `KG` is a unit exactly when its
    /// augmentation is nonzero; then `u = c (1 + d)` with `d` in the nilpotent
    /// augmentation ideal and `(1 + d)^{-1} = Σ (-d)^k`.
    pub fn inverse(&self, u: &AlgebraElement) -> Option<AlgebraElement> {
        let c = self.augmentation(u);
        let c_inv = self.field.inv(c)?;
        let normalized = self.scale(u, c_inv);
        let minus_d = self.sub(&self.one(), &normalized);
        let mut sum = self.zero();
        let mut power = self.one();
        for _ in 0..=self.dim() {
            if power.is_zero() {
                let inv = self.scale(&sum, c_inv);
                debug_assert_eq!(self.mul(u, &inv), self.one());
                return Some(inv);
            }
            sum = self.add(&sum, &power);
            power = self.mul(&power, &minus_d);
        }
        None
    }

    /// Dense product in the regular basis, iterating over the sparser factor.
    /// Written as gathers, `(ab)[x] = Σ_g a_g b[g^{-1} x] = Σ_h b_h a[x h^{-1}]`,
    /// which vectorize where the scattered form does not.
    pub(crate) fn mul_slices(&self, a: &[u8], b: &[u8]) -> Vec<u8> {
        let n = self.dim();
        let p = self.field.p() as u32;
        let mut acc = vec![0u32; n];
        let nnz_a = a.iter().filter(|&&x| x != 0).count();
        let nnz_b = b.iter().filter(|&&x| x != 0).count();
        let (sparse, dense, transposed) = if nnz_a <= nnz_b {
            (a, b, false)
        } else {
            (b, a, true)
        };
        let dense: Vec<u32> = dense.iter().map(|&x| x as u32).collect();
        for (g, &c) in sparse.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let c = c as u32;
            let gi = self.group.inv(g);
            let perm = if transposed {
                &self.mul_t[gi * n..(gi + 1) * n]
            } else {
                self.group.mul_row(gi)
            };
            for (slot, &idx) in acc.iter_mut().zip(perm) {
                *slot += c * dense[idx as usize];
            }
        }
        acc.into_iter().map(|x| (x % p) as u8).collect()
    }

    /// `v g` for a group element `g`.
    pub(crate) fn right_mul_group(&self, v: &[u8], g: usize) -> Vec<u8> {
        let n = self.dim();
        let col = &self.mul_t[g * n..(g + 1) * n];
        let mut out = vec![0u8; n];
        for (&hg, &x) in col.iter().zip(v) {
            out[hg as usize] = x;
        }
        out
    }

    /// `g v` for a group element `g`.
    pub(crate) fn left_mul_group(&self, v: &[u8], g: usize) -> Vec<u8> {
        let row = self.group.mul_row(g);
        let mut out = vec![0u8; self.dim()];
        for (&gh, &x) in row.iter().zip(v) {
            out[gh as usize] = x;
        }
        out
    }

    /// `[v, g] = v g - g v` for a group element `g`.
    pub(crate) fn bracket_group(&self, v: &[u8], g: usize) -> Vec<u8> {
        let n = self.dim();
        let p = self.field.p();
        let col = &self.mul_t[g * n..(g + 1) * n];
        let row = self.group.mul_row(g);
        let mut out = vec![0u8; n];
        for (h, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let hg = col[h] as usize;
            out[hg] = self.field.add(out[hg], x);
            let gh = row[h] as usize;
            out[gh] = self.field.sub(out[gh], x);
        }
        debug_assert!(out.iter().all(|&y| y < p));
        out
    }

    /// `x^{-1} v x` for the `i`-th generator `x`.
    fn conjugate_by_gen(&self, v: &[u8], i: usize) -> Vec<u8> {
        let table = &self.conj[i];
        let mut out = vec![0u8; self.dim()];
        for (&c, &x) in table.iter().zip(v) {
            out[c as usize] = x;
        }
        out
    }

    /// Smallest two-sided ideal containing `s`.
    pub fn ideal_closure(&self, s: &Subspace) -> Subspace {
        let mut builder = IdealBuilder::new(self);
        for row in s.basis() {
            builder.add(row.to_vec());
        }
        builder.finish().0
    }

    /// Span of all products `a b` with `a`, `b` running over the two bases.
    pub fn product_space(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut out = self.zero_space();
        for x in a.basis() {
            for y in b.basis() {
                out.insert(self.mul_slices(x, y));
            }
        }
        out
    }

    /// `A B` for a two-sided ideal `A` and the ideal `B` generated by `b_gens`:
    /// every `a u s v` equals `(a u) s v`, so the products `a s` generate `A B` as an ideal.
    pub(crate) fn ideal_product(&self, a: &Subspace, b_gens: &[Vec<u8>]) -> Subspace {
        let mut builder = IdealBuilder::new(self);
        for x in a.basis() {
            for s in b_gens {
                builder.add(self.mul_slices(x, s));
            }
        }
        builder.finish().0
    }

    /// Augmentation ideal `Δ = span{g - 1}`, written directly in reduced form:
    /// row `i` is `e_i - e_{n-1}`.
    pub fn augmentation_ideal(&self) -> Subspace {
        let n = self.dim();
        let mut s = self.zero_space();
        if n == 1 {
            return s;
        }
        let minus_one = self.field.neg(1);
        for i in (0..n - 1).rev() {
            let mut v = vec![0u8; n];
            v[i] = 1;
            v[n - 1] = minus_one;
            s.insert(v);
        }
        s
    }

    pub(crate) fn bracket_reps(&self) -> &[usize] {
        &self.bracket_reps
    }

    /// Closes `space` under conjugation by the group, starting from the vectors in `queue`.
    pub(crate) fn conjugation_close(&self, space: &mut Subspace, mut queue: Vec<Vec<u8>>) {
        while let Some(v) = queue.pop() {
            for i in 0..self.conj.len() {
                if let Some(r) = space.insert(self.conjugate_by_gen(&v, i)) {
                    queue.push(r);
                }
            }
        }
    }
}

/// Incremental two-sided ideal closure under multiplication by the group generators.
pub(crate) struct IdealBuilder<'a> {
    ctx: &'a AlgebraContext,
    space: Subspace,
    generators: Vec<Vec<u8>>,
}

impl<'a> IdealBuilder<'a> {
    pub(crate) fn new(ctx: &'a AlgebraContext) -> Self {
        IdealBuilder {
            ctx,
            space: ctx.zero_space(),
            generators: Vec::new(),
        }
    }

    /// Adds `v` and closes; returns whether the ideal grew.
    pub(crate) fn add(&mut self, v: Vec<u8>) -> bool {
        let Some(r) = self.space.insert(v.clone()) else {
            return false;
        };
        self.generators.push(v);
        let gens = self.ctx.group.gen_indices();
        let mut queue = VecDeque::from([r]);
        while let Some(w) = queue.pop_front() {
            for &x in gens {
                if let Some(r) = self.space.insert(self.ctx.right_mul_group(&w, x)) {
                    queue.push_back(r);
                }
                if let Some(r) = self.space.insert(self.ctx.left_mul_group(&w, x)) {
                    queue.push_back(r);
                }
            }
        }
        true
    }

    /// The ideal and the seeds that were needed to generate it.
    pub(crate) fn finish(self) -> (Subspace, Vec<Vec<u8>>) {
        (self.space, self.generators)
    }
}

/// Orbit representatives of `G \ Z(G)` under `g ↦ h^{-1} g h z` (`h ∈ G`, `z ∈ Z(G)`).
///
/// Weight spaces are invariant under conjugation and are modules over the
/// central group elements, so brackets with one element per orbit, followed
/// by closure under conjugation, span the same next weight space.
fn bracket_representatives(group: &FiniteGroup) -> Vec<usize> {
    let n = group.order();
    let center = group.center();
    let mut seen = vec![false; n];
    for &z in center.elements() {
        seen[z] = true;
    }
    let mut reps = Vec::new();
    for g in 0..n {
        if seen[g] {
            continue;
        }
        reps.push(g);
        seen[g] = true;
        let mut stack = vec![g];
        while let Some(x) = stack.pop() {
            let images = group
                .gen_indices()
                .iter()
                .map(|&h| group.conjugate(x, h))
                .chain(center.generators().iter().map(|&z| group.mul(x, z)));
            for y in images.collect::<Vec<_>>() {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    reps
}

#[cfg(test)]
mod tests;
