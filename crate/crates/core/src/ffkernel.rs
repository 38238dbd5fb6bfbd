//! Exact arithmetic over GF(p) and dense subspaces in reduced row echelon form.
//!
//! Every space the rest of the crate talks about (Lie powers, weight spaces,
//! powers of the augmentation ideal) is a [`Subspace`] of some `GF(p)^n`.
//! Rows are stored densely with one byte per entry; for `p = 2` the row
//! operations degenerate to XOR, for small odd primes the modulus is a
//! compile-time constant so the inner loops vectorize.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported characteristic: residues must fit in one byte.
pub const MAX_PRIME: u32 = 251;

/// The prime field `GF(p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FieldSpec {
    p: u8,
}

impl FieldSpec {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 {
            return Err(Error::Input(format!("characteristic {p} is not a prime")));
        }
        if p > MAX_PRIME {
            return Err(Error::Input(format!(
                "characteristic {p} exceeds the supported maximum {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::Input(format!("characteristic {p} is not a prime")));
        }
        Ok(FieldSpec { p: p as u8 })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        ((a as u16 + self.p as u16 - b as u16) % self.p as u16) as u8
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u8) -> Option<u8> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        // a^(p-2) by square and multiply
        let mut result = 1u8;
        let mut base = a;
        let mut e = self.p as u32 - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        Some(result)
    }

    /// Canonical residue of an arbitrary integer.
    #[inline]
    pub fn reduce(&self, x: i64) -> u8 {
        x.rem_euclid(self.p as i64) as u8
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A coordinate vector over `GF(p)`; every entry lies in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoeffVector {
    entries: Vec<u8>,
}

impl CoeffVector {
    pub fn zeros(len: usize) -> Self {
        CoeffVector {
            entries: vec![0; len],
        }
    }

    /// Unit vector `e_i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.entries[i] = 1;
        v
    }

    /// Reduces arbitrary integers into `[0, p)`.
    pub fn from_ints<I: IntoIterator<Item = i64>>(field: &FieldSpec, values: I) -> Self {
        CoeffVector {
            entries: values.into_iter().map(|x| field.reduce(x)).collect(),
        }
    }

    /// Wraps already-reduced residues.
    pub fn from_residues(field: &FieldSpec, entries: Vec<u8>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|&&x| x >= field.p()) {
            return Err(Error::Input(format!(
                "entry {bad} is not a residue mod {}",
                field.p()
            )));
        }
        Ok(CoeffVector { entries })
    }

    pub(crate) fn from_vec_unchecked(entries: Vec<u8>) -> Self {
        CoeffVector { entries }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn as_slice(&self) -> &[u8] {
        &self.entries
    }

    pub fn into_vec(self) -> Vec<u8> {
        self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&x| x == 0)
    }

    /// Number of nonzero entries.
    pub fn weight(&self) -> usize {
        self.entries.iter().filter(|&&x| x != 0).count()
    }

    pub fn add(&self, field: &FieldSpec, other: &CoeffVector) -> CoeffVector {
        let mut out = self.clone();
        axpy(field.p(), &mut out.entries, &other.entries, 1);
        out
    }

    pub fn sub(&self, field: &FieldSpec, other: &CoeffVector) -> CoeffVector {
        let mut out = self.clone();
        axpy(field.p(), &mut out.entries, &other.entries, field.neg(1));
        out
    }

    pub fn scale(&self, field: &FieldSpec, c: u8) -> CoeffVector {
        let mut out = self.clone();
        scale_in_place(field.p(), &mut out.entries, c % field.p());
        out
    }
}

/// `dst += k * src` over `GF(p)`, with `k` already reduced.
#[inline]
pub(crate) fn axpy(p: u8, dst: &mut [u8], src: &[u8], k: u8) {
    debug_assert_eq!(dst.len(), src.len());
    if k == 0 {
        return;
    }
    match p {
        2 => {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
        }
        3 => axpy_const::<3>(dst, src, k),
        5 => axpy_const::<5>(dst, src, k),
        7 => axpy_const::<7>(dst, src, k),
        _ => {
            let p = p as u16;
            let k = k as u16;
            for (d, &s) in dst.iter_mut().zip(src) {
                *d = ((*d as u16 + k * s as u16) % p) as u8;
            }
        }
    }
}

#[inline]
fn axpy_const<const P: u16>(dst: &mut [u8], src: &[u8], k: u8) {
    let k = k as u16;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = ((*d as u16 + k * s as u16) % P) as u8;
    }
}

#[inline]
pub(crate) fn scale_in_place(p: u8, v: &mut [u8], c: u8) {
    if c == 1 {
        return;
    }
    let p = p as u16;
    let c = c as u16;
    for x in v.iter_mut() {
        *x = ((*x as u16 * c) % p) as u8;
    }
}

/// A subspace of `GF(p)^ambient_dim`, stored as its reduced row echelon basis.
///
/// Rows are sorted by pivot, every pivot entry is 1 and every pivot column is
/// zero in all other rows, so two subspaces are equal exactly when their
/// representations are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient_dim: usize,
    rows: Vec<Vec<u8>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient_dim: usize) -> Self {
        Subspace {
            field,
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut r = vec![0; ambient_dim];
                r[i] = 1;
                r
            })
            .collect();
        Subspace {
            field,
            ambient_dim,
            rows,
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Canonical basis of the linear span of `vectors`.
    pub fn span(field: FieldSpec, ambient_dim: usize, vectors: &[CoeffVector]) -> Result<Self> {
        let mut s = Subspace::zero(field, ambient_dim);
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::Input(format!(
                    "vector of length {} in a span over dimension {ambient_dim}",
                    v.len()
                )));
            }
            if v.as_slice().iter().any(|&x| x >= field.p()) {
                return Err(Error::Input("vector entry is not reduced mod p".into()));
            }
            s.insert(v.as_slice().to_vec());
        }
        Ok(s)
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Basis rows in pivot order.
    pub fn basis(&self) -> impl ExactSizeIterator<Item = &[u8]> + '_ {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn basis_vectors(&self) -> Vec<CoeffVector> {
        self.rows
            .iter()
            .map(|r| CoeffVector::from_vec_unchecked(r.clone()))
            .collect()
    }

    /// Reduces `v` in place against the basis; the result is zero iff `v` lies in the span.
    pub(crate) fn reduce(&self, v: &mut [u8]) {
        let p = self.field.p();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if a != 0 {
                axpy(p, v, row, p - a);
            }
        }
    }

    pub(crate) fn contains_slice(&self, v: &[u8]) -> bool {
        debug_assert_eq!(v.len(), self.ambient_dim);
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    pub fn contains(&self, v: &CoeffVector) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::Input(format!(
                "vector of length {} tested against a subspace of dimension {}",
                v.len(),
                self.ambient_dim
            )));
        }
        Ok(self.contains_slice(v.as_slice()))
    }

    /// Adds `v` to the span. Returns the reduced, normalized vector when the
    /// dimension grew (it lies in the new span but not the old one).
    pub fn insert(&mut self, mut v: Vec<u8>) -> Option<Vec<u8>> {
        debug_assert_eq!(v.len(), self.ambient_dim);
        self.reduce(&mut v);
        let lead = v.iter().position(|&x| x != 0)?;
        let p = self.field.p();
        let inv = self.field.inv(v[lead]).expect("nonzero residue");
        scale_in_place(p, &mut v, inv);
        for row in self.rows.iter_mut() {
            let a = row[lead];
            if a != 0 {
                axpy(p, row, &v, p - a);
            }
        }
        let pos = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v.clone());
        Some(v)
    }

    pub(crate) fn membership_test(&self) -> MembershipTest {
        let mut is_pivot = vec![false; self.ambient_dim];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.ambient_dim).filter(|&c| !is_pivot[c]).collect();
        let mut coeffs = Vec::with_capacity(self.rows.len() * free.len());
        for row in &self.rows {
            coeffs.extend(free.iter().map(|&k| row[k]));
        }
        MembershipTest {
            p: self.field.p() as u32,
            pivots: self.pivots.clone(),
            free,
            coeffs,
        }
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient_dim != other.ambient_dim || self.field != other.field {
            return Err(Error::Input(format!(
                "subspaces of {}^{} and {}^{} are not comparable",
                self.field, self.ambient_dim, other.field, other.ambient_dim
            )));
        }
        Ok(())
    }

    /// `self ⊆ other`.
    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok(self.rows.iter().all(|r| other.contains_slice(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let (mut big, small) = if self.dim() >= other.dim() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for r in &small.rows {
            big.insert(r.clone());
        }
        Ok(big)
    }
}

/// Repeated membership queries against one fixed subspace.
///
/// In reduced form the only candidate combination for `v` is `Σ v[pivot_j] row_j`,
/// so `v` lies in the span iff the two agree on the non-pivot columns. The rows
/// are kept restricted to those columns, contiguously.
pub(crate) struct MembershipTest {
    p: u32,
    pivots: Vec<usize>,
    free: Vec<usize>,
    // row j occupies coeffs[j * free.len()..(j + 1) * free.len()]
    coeffs: Vec<u8>,
}

impl MembershipTest {
    pub(crate) fn contains(&self, v: &[u8]) -> bool {
        let width = self.free.len();
        if width == 0 {
            return true;
        }
        let mut acc = vec![0u32; width];
        for (j, &c) in self.pivots.iter().enumerate() {
            let a = v[c] as u32;
            if a == 0 {
                continue;
            }
            let row = &self.coeffs[j * width..(j + 1) * width];
            for (slot, &x) in acc.iter_mut().zip(row) {
                *slot += a * x as u32;
            }
        }
        acc.iter()
            .zip(&self.free)
            .all(|(&s, &k)| s % self.p == v[k] as u32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn vecs(field: &FieldSpec, rows: &[&[i64]]) -> Vec<CoeffVector> {
        rows.iter()
            .map(|r| CoeffVector::from_ints(field, r.iter().copied()))
            .collect()
    }

    #[test]
    fn field_rejects_composites_and_large_primes() {
        assert!(FieldSpec::new(0).is_err());
        assert!(FieldSpec::new(1).is_err());
        assert!(FieldSpec::new(9).is_err());
        assert!(FieldSpec::new(257).is_err());
        assert!(FieldSpec::new(251).is_ok());
    }

    #[test]
    fn span_examples() {
        let f3 = f(3);
        assert_eq!(Subspace::span(f3, 4, &[]).unwrap().dim(), 0);
        let f2 = f(2);
        let s = Subspace::span(f2, 3, &vecs(&f2, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]])).unwrap();
        assert_eq!(s.dim(), 2);
        let s = Subspace::span(f3, 2, &vecs(&f3, &[&[1, 2], &[2, 1]])).unwrap();
        assert_eq!(s.dim(), 1);
    }

    #[test]
    fn span_rejects_mixed_lengths() {
        let f2 = f(2);
        let err = Subspace::span(f2, 3, &vecs(&f2, &[&[1, 0, 0], &[1, 0]]));
        assert!(matches!(err, Err(Error::Input(_))));
    }

    #[test]
    fn containment_examples() {
        let f2 = f(2);
        let s = Subspace::span(f2, 3, &vecs(&f2, &[&[0, 1, 0]])).unwrap();
        assert!(s.contains(&CoeffVector::zeros(3)).unwrap());
        assert!(s.contains(&s.basis_vectors()[0]).unwrap());
        assert!(!s.contains(&CoeffVector::unit(3, 0)).unwrap());
        assert!(s.contains(&CoeffVector::zeros(4)).is_err());
    }

    #[test]
    fn leq_and_sum_examples() {
        let f2 = f(2);
        let zero = Subspace::zero(f2, 2);
        let full = Subspace::full(f2, 2);
        let a = Subspace::span(f2, 2, &vecs(&f2, &[&[1, 0]])).unwrap();
        let b = Subspace::span(f2, 2, &vecs(&f2, &[&[0, 1]])).unwrap();
        assert!(zero.is_subspace_of(&a).unwrap());
        assert!(a.is_subspace_of(&a).unwrap());
        assert!(!full.is_subspace_of(&a).unwrap());
        assert_eq!(a.sum(&zero).unwrap(), a);
        assert_eq!(a.sum(&a).unwrap(), a);
        assert_eq!(a.sum(&b).unwrap(), full);
        assert!(a.is_subspace_of(&Subspace::zero(f2, 3)).is_err());
    }

    #[test]
    fn rref_shape() {
        let f5 = f(5);
        let s = Subspace::span(
            f5,
            4,
            &vecs(&f5, &[&[2, 4, 1, 0], &[0, 3, 3, 1], &[2, 1, 3, 3]]),
        )
        .unwrap();
        for (row, &c) in s.basis().zip(s.pivots()) {
            assert_eq!(row[c], 1);
            assert!(row[..c].iter().all(|&x| x == 0));
        }
        for (i, &c) in s.pivots().iter().enumerate() {
            for (j, row) in s.basis().enumerate() {
                if i != j {
                    assert_eq!(row[c], 0);
                }
            }
        }
    }

    /// Brute-force intersection: enumerate every vector of `a` and test membership in `b`.
    fn intersection_dim(a: &Subspace, b: &Subspace) -> usize {
        let p = a.field().p() as usize;
        let basis: Vec<&[u8]> = a.basis().collect();
        let mut count = 0usize;
        let total = p.pow(basis.len() as u32);
        for idx in 0..total {
            let mut v = vec![0u8; a.ambient_dim()];
            let mut rem = idx;
            for row in &basis {
                let c = (rem % p) as u8;
                rem /= p;
                axpy(p as u8, &mut v, row, c);
            }
            if b.contains_slice(&v) {
                count += 1;
            }
        }
        // count = p^dim(A ∩ B)
        let mut d = 0;
        let mut c = count;
        while c > 1 {
            c /= p;
            d += 1;
        }
        d
    }

    fn small_instance() -> impl Strategy<Value = (u32, usize, Vec<Vec<u8>>, Vec<Vec<u8>>)> {
        (prop_oneof![Just(2u32), Just(3), Just(5)], 1usize..6).prop_flat_map(|(p, n)| {
            let row = proptest::collection::vec(0u8..p as u8, n);
            (
                Just(p),
                Just(n),
                proptest::collection::vec(row.clone(), 0..5),
                proptest::collection::vec(row, 0..5),
            )
        })
    }

    proptest! {
        #[test]
        fn span_is_canonical_under_permutation_and_scaling(
            (p, n, rows, _b) in small_instance(),
            seed in any::<u64>(),
        ) {
            let field = f(p);
            let vs: Vec<CoeffVector> = rows.iter().map(|r| CoeffVector::from_vec_unchecked(r.clone())).collect();
            let base = Subspace::span(field, n, &vs).unwrap();
            let mut shuffled = vs.clone();
            // deterministic permutation + nonzero rescaling derived from the seed
            let len = shuffled.len();
            if len > 1 {
                for i in 0..len {
                    let j = ((seed >> (i % 60)) as usize + i * 7) % len;
                    shuffled.swap(i, j);
                }
            }
            let shuffled: Vec<CoeffVector> = shuffled
                .into_iter()
                .enumerate()
                .map(|(i, v)| v.scale(&field, 1 + ((seed as usize + i) % (p as usize - 1)) as u8))
                .collect();
            prop_assert_eq!(Subspace::span(field, n, &shuffled).unwrap(), base);
        }

        #[test]
        fn mutual_containment_is_equality((p, n, a, b) in small_instance()) {
            let field = f(p);
            let to = |rows: &Vec<Vec<u8>>| rows.iter().map(|r| CoeffVector::from_vec_unchecked(r.clone())).collect::<Vec<_>>();
            let sa = Subspace::span(field, n, &to(&a)).unwrap();
            let sb = Subspace::span(field, n, &to(&b)).unwrap();
            let both = sa.is_subspace_of(&sb).unwrap() && sb.is_subspace_of(&sa).unwrap();
            prop_assert_eq!(both, sa == sb);
        }

        #[test]
        fn dimension_formula((p, n, a, b) in small_instance()) {
            let field = f(p);
            let to = |rows: &Vec<Vec<u8>>| rows.iter().map(|r| CoeffVector::from_vec_unchecked(r.clone())).collect::<Vec<_>>();
            let sa = Subspace::span(field, n, &to(&a)).unwrap();
            let sb = Subspace::span(field, n, &to(&b)).unwrap();
            let sum = sa.sum(&sb).unwrap();
            prop_assert!(sum.dim() >= sa.dim().max(sb.dim()));
            prop_assert_eq!(sum.dim() + intersection_dim(&sa, &sb), sa.dim() + sb.dim());
        }

        #[test]
        fn field_division_is_exact(p in prop_oneof![Just(2u32), Just(3), Just(5), Just(7), Just(251)], a in 0u8..=250, b in 1u8..=250) {
            let field = f(p);
            let a = a % field.p();
            let b = b % field.p();
            prop_assume!(b != 0);
            prop_assert_eq!(field.mul(field.mul(a, b), field.inv(b).unwrap()), a);
        }
    }
}
