use crate::error::{Error, Result};
use crate::ffkernel::FieldSpec;

use super::presentation::PcPresentation;

/// Default bound on `|G|` for table construction.
pub const DEFAULT_ORDER_CAP: usize = 1024;

/// A finite p-group given by its full Cayley table. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    field: FieldSpec,
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    gens: Vec<usize>,
    words: Option<Vec<Vec<u8>>>,
}

impl FiniteGroup {
    /// Enumerates the normal words of `pres`, multiplies them by collection and
    /// certifies that the resulting table is a group.
    pub fn from_presentation(pres: &PcPresentation, order_cap: usize) -> Result<Self> {
        let p = pres.p() as usize;
        let n = pres.n_gens();
        let order = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        if order > order_cap as u128 {
            return Err(Error::Resource(format!(
                "group order {p}^{n} exceeds the order cap {order_cap}"
            )));
        }
        let order = order as usize;

        let words: Vec<Vec<u8>> = (0..order).map(|idx| decode(idx, p, n)).collect();

        // right[k][g] = g * x_k
        let mut right = vec![vec![0u32; order]; n];
        let mut e = vec![0u8; n];
        for (g, word) in words.iter().enumerate() {
            for (k, row) in right.iter_mut().enumerate() {
                e.copy_from_slice(word);
                pres.collect(&mut e, &[k]);
                row[g] = encode(&e, p) as u32;
            }
        }

        // h = parent(h) * x_k, with parent(h) dropping one letter from the last syllable.
        let mut mul = vec![0u32; order * order];
        for g in 0..order {
            let row = &mut mul[g * order..(g + 1) * order];
            row[0] = g as u32;
            for (h, word) in words.iter().enumerate().skip(1) {
                let k = word.iter().rposition(|&x| x != 0).unwrap();
                let parent = h - p.pow(k as u32);
                row[h] = right[k][row[parent] as usize];
            }
        }

        for (h, _) in words.iter().enumerate() {
            if mul[h] as usize != h {
                return Err(Error::InconsistentPresentation(format!(
                    "identity times normal word {h} does not collect to itself"
                )));
            }
        }

        // (a b) x = a (b x) for all a, b and generators x implies associativity
        // by induction on the length of normal words.
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b] as usize;
                for r in &right {
                    let bx = r[b] as usize;
                    if mul[a * order + bx] != r[ab] {
                        return Err(Error::InconsistentPresentation(format!(
                            "multiplication is not associative (elements {a}, {b})"
                        )));
                    }
                }
            }
        }

        let inv = inverses(&mul, order).ok_or_else(|| {
            Error::InconsistentPresentation("some element has no inverse".into())
        })?;

        Ok(FiniteGroup {
            field: pres.field(),
            order,
            mul,
            inv,
            gens: (0..n).map(|k| p.pow(k as u32)).collect(),
            words: Some(words),
        })
    }

    /// Builds a group from an explicit table, verifying identity, inverses,
    /// associativity on all triples and that the order is a power of `p`.
    pub fn from_table(field: FieldSpec, table: Vec<Vec<usize>>) -> Result<Self> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Input("empty Cayley table".into()));
        }
        if !is_power_of(order, field.p() as usize) {
            return Err(Error::Input(format!(
                "group order {order} is not a power of {}",
                field.p()
            )));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (i, row) in table.iter().enumerate() {
            if row.len() != order {
                return Err(Error::Input(format!(
                    "row {i} has {} entries, expected {order}",
                    row.len()
                )));
            }
            for &x in row {
                if x >= order {
                    return Err(Error::Input(format!("entry {x} out of range in row {i}")));
                }
                mul.push(x as u32);
            }
        }
        for g in 0..order {
            if mul[g] as usize != g || mul[g * order] as usize != g {
                return Err(Error::Input("element 0 does not act as the identity".into()));
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = mul[a * order + b] as usize;
                for c in 0..order {
                    let bc = mul[b * order + c] as usize;
                    if mul[ab * order + c] != mul[a * order + bc] {
                        return Err(Error::Input(format!(
                            "table is not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        let inv = inverses(&mul, order)
            .ok_or_else(|| Error::Input("some element has no inverse".into()))?;
        let mut group = FiniteGroup {
            field,
            order,
            mul,
            inv,
            gens: Vec::new(),
            words: None,
        };
        group.gens = group.subgroup_closure(0..order).generators().to_vec();
        Ok(group)
    }

    #[inline]
    pub fn field(&self) -> FieldSpec {
        self.field
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.field.p()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> usize {
        0
    }

    /// Generators: the pc generators for presentation-built groups, a greedy
    /// irredundant generating set otherwise.
    pub fn gen_indices(&self) -> &[usize] {
        &self.gens
    }

    /// Normal-form exponent vector of `g`, when built from a presentation.
    pub fn element_word(&self, g: usize) -> Option<&[u8]> {
        self.words.as_ref().map(|w| w[g].as_slice())
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// Row `a` of the Cayley table: `b ↦ a b`.
    #[inline]
    pub(crate) fn mul_row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    pub fn pow(&self, g: usize, k: u64) -> usize {
        let mut result = 0;
        let mut base = g;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    /// `(g, h) = g^{-1} h^{-1} g h`.
    #[inline]
    pub fn commutator(&self, g: usize, h: usize) -> usize {
        let gi = self.inv(g);
        let hi = self.inv(h);
        self.mul(self.mul(gi, hi), self.mul(g, h))
    }

    /// Left-normed commutator `(g_1, ..., g_k)`; the identity for an empty slice.
    pub fn commutator_seq(&self, gs: &[usize]) -> usize {
        match gs.split_first() {
            None => 0,
            Some((&first, rest)) => rest.iter().fold(first, |acc, &g| self.commutator(acc, g)),
        }
    }

    /// `h^{-1} g h`.
    #[inline]
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(self.inv(h), g), h)
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.gens;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `log_p` of a p-power.
    pub fn log_p(&self, n: usize) -> u32 {
        let p = self.p() as usize;
        let mut k = 0;
        let mut m = n;
        while m > 1 {
            debug_assert_eq!(m % p, 0);
            m /= p;
            k += 1;
        }
        k
    }
}

fn decode(mut idx: usize, p: usize, n: usize) -> Vec<u8> {
    let mut e = vec![0u8; n];
    for x in e.iter_mut() {
        *x = (idx % p) as u8;
        idx /= p;
    }
    e
}

fn encode(e: &[u8], p: usize) -> usize {
    e.iter().rev().fold(0, |acc, &x| acc * p + x as usize)
}

fn inverses(mul: &[u32], order: usize) -> Option<Vec<u32>> {
    let mut inv = vec![u32::MAX; order];
    for g in 0..order {
        let row = &mul[g * order..(g + 1) * order];
        let h = row.iter().position(|&x| x == 0)?;
        inv[g] = h as u32;
    }
    // two-sided
    for g in 0..order {
        if mul[inv[g] as usize * order + g] != 0 {
            return None;
        }
    }
    Some(inv)
}

pub(crate) fn is_power_of(n: usize, p: usize) -> bool {
    let mut m = n;
    while m > 1 {
        if !m.is_multiple_of(p) {
            return false;
        }
        m /= p;
    }
    m == 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pcgroup::Word;

    fn f(p: u32) -> FieldSpec {
        FieldSpec::new(p).unwrap()
    }

    fn d4() -> FiniteGroup {
        let mut pres = PcPresentation::new(f(2), 3);
        pres.set_power(1, Word::new(vec![(2, 1)])).unwrap();
        pres.set_commutator(1, 0, Word::new(vec![(2, 1)])).unwrap();
        FiniteGroup::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap()
    }

    #[test]
    fn d4_has_order_8_and_expected_commutator() {
        let g = d4();
        assert_eq!(g.order(), 8);
        let (x1, x2, x3) = (g.gen_indices()[0], g.gen_indices()[1], g.gen_indices()[2]);
        assert_eq!(g.commutator(x2, x1), x3);
        assert_eq!(g.commutator(x1, x1), 0);
        assert_eq!(g.commutator(x1, x3), 0);
        assert_eq!(g.element_order(x2), 4);
        assert!(!g.is_abelian());
    }

    #[test]
    fn heisenberg_27() {
        let mut pres = PcPresentation::new(f(3), 3);
        pres.set_commutator(1, 0, Word::new(vec![(2, 1)])).unwrap();
        let g = FiniteGroup::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap();
        assert_eq!(g.order(), 27);
        assert!((0..27).all(|x| g.pow(x, 3) == 0));
    }

    #[test]
    fn inconsistent_presentation_is_rejected() {
        // x1^2 = x2 while (x2, x1) = x3 cannot hold: x1 commutes with its own power.
        let mut pres = PcPresentation::new(f(2), 3);
        pres.set_power(0, Word::new(vec![(1, 1)])).unwrap();
        pres.set_commutator(1, 0, Word::new(vec![(2, 1)])).unwrap();
        let err = FiniteGroup::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap_err();
        assert!(matches!(err, Error::InconsistentPresentation(_)), "{err}");
    }

    #[test]
    fn order_cap_is_enforced() {
        let pres = PcPresentation::new(f(2), 11);
        let err = FiniteGroup::from_presentation(&pres, DEFAULT_ORDER_CAP).unwrap_err();
        assert!(matches!(err, Error::Resource(_)));
        assert!(FiniteGroup::from_presentation(&pres, 2048).is_ok());
    }

    #[test]
    fn table_validation() {
        let c2 = vec![vec![0, 1], vec![1, 0]];
        assert_eq!(FiniteGroup::from_table(f(2), c2).unwrap().order(), 2);
        let c3 = vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]];
        assert!(FiniteGroup::from_table(f(2), c3).is_err());
        let bad_identity = vec![vec![1, 0], vec![0, 1]];
        assert!(FiniteGroup::from_table(f(2), bad_identity).is_err());
    }
}
