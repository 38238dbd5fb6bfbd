use std::fmt::{self, Write as _};

use crate::error::{Error, Result};
use crate::ffkernel::FieldSpec;

/// A normal word `x_{k1}^{e1} x_{k2}^{e2} ...` with strictly increasing
/// generator indices (0-based) and exponents in `[1, p)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<(usize, u8)>);

impl Word {
    pub fn identity() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from `(generator, exponent)` pairs; zero exponents are dropped.
    pub fn new(syllables: Vec<(usize, u8)>) -> Self {
        Word(syllables.into_iter().filter(|&(_, e)| e != 0).collect())
    }

    pub fn syllables(&self) -> &[(usize, u8)] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.is_empty()
    }

    /// Expands the word into single generator letters.
    pub(crate) fn letters(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .flat_map(|&(g, e)| std::iter::repeat_n(g, e as usize))
    }

    /// Checks the normal-word shape relative to `p`, requiring every
    /// generator to exceed `after` (when given) and to be `< n_gens`.
    fn validate(&self, p: u8, n_gens: usize, after: Option<usize>) -> Result<()> {
        let mut prev: Option<usize> = None;
        for &(g, e) in &self.0 {
            if g >= n_gens {
                return Err(Error::Input(format!(
                    "generator x{} out of range (presentation has {n_gens})",
                    g + 1
                )));
            }
            if let Some(a) = after {
                if g <= a {
                    return Err(Error::Input(format!(
                        "relation word uses x{} but only generators after x{} are allowed",
                        g + 1,
                        a + 1
                    )));
                }
            }
            if let Some(q) = prev {
                if g <= q {
                    return Err(Error::Input(
                        "generators in a word must be strictly increasing".into(),
                    ));
                }
            }
            if e == 0 || e >= p {
                return Err(Error::Input(format!(
                    "exponent {e} of x{} is outside [1, {p})",
                    g + 1
                )));
            }
            prev = Some(g);
        }
        Ok(())
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("e");
        }
        for (i, (g, e)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_char(' ')?;
            }
            write!(f, "x{}^{}", g + 1, e)?;
        }
        Ok(())
    }
}

/// Power-commutator presentation of a finite p-group.
///
/// Generators are `x_1, ..., x_n` (0-based internally). For each `i` the
/// power relation gives `x_i^p` and for each `j > i` the commutator relation
/// gives `(x_j, x_i) = x_j^{-1} x_i^{-1} x_j x_i`, both as normal words in
/// generators strictly after `i` resp. `j`. Missing relations are trivial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    field: FieldSpec,
    n_gens: usize,
    powers: Vec<Word>,
    // commutators[j][i] for i < j
    commutators: Vec<Vec<Word>>,
    names: Vec<String>,
}

impl PcPresentation {
    pub fn new(field: FieldSpec, n_gens: usize) -> Self {
        PcPresentation {
            field,
            n_gens,
            powers: vec![Word::identity(); n_gens],
            commutators: (0..n_gens).map(|j| vec![Word::identity(); j]).collect(),
            names: (1..=n_gens).map(|i| format!("x{i}")).collect(),
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn p(&self) -> u8 {
        self.field.p()
    }

    pub fn n_gens(&self) -> usize {
        self.n_gens
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn set_names(&mut self, names: Vec<String>) -> Result<()> {
        if names.len() != self.n_gens {
            return Err(Error::Input(format!(
                "{} names given for {} generators",
                names.len(),
                self.n_gens
            )));
        }
        self.names = names;
        Ok(())
    }

    /// Sets `x_i^p = word` (0-based `i`).
    pub fn set_power(&mut self, i: usize, word: Word) -> Result<()> {
        if i >= self.n_gens {
            return Err(Error::Input(format!("generator x{} out of range", i + 1)));
        }
        word.validate(self.p(), self.n_gens, Some(i))?;
        self.powers[i] = word;
        Ok(())
    }

    /// Sets `(x_j, x_i) = word` for `j > i` (0-based).
    pub fn set_commutator(&mut self, j: usize, i: usize, word: Word) -> Result<()> {
        if j >= self.n_gens || i >= self.n_gens {
            return Err(Error::Input(format!(
                "commutator ({}, {}) out of range",
                j + 1,
                i + 1
            )));
        }
        if j <= i {
            return Err(Error::Input(format!(
                "commutator relation ({}, {}) needs the first index larger",
                j + 1,
                i + 1
            )));
        }
        word.validate(self.p(), self.n_gens, Some(j))?;
        self.commutators[j][i] = word;
        Ok(())
    }

    pub fn power(&self, i: usize) -> &Word {
        &self.powers[i]
    }

    pub fn commutator(&self, j: usize, i: usize) -> &Word {
        &self.commutators[j][i]
    }

    /// Renders the presentation in the line-oriented file format, listing only
    /// nontrivial relations.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "p {}", self.p()).unwrap();
        writeln!(out, "gens {}", self.n_gens).unwrap();
        for (i, w) in self.powers.iter().enumerate() {
            if !w.is_identity() {
                writeln!(out, "pow {} : {}", i + 1, w).unwrap();
            }
        }
        for (j, row) in self.commutators.iter().enumerate() {
            for (i, w) in row.iter().enumerate() {
                if !w.is_identity() {
                    writeln!(out, "comm {} {} : {}", j + 1, i + 1, w).unwrap();
                }
            }
        }
        out
    }

    /// Multiplies the normal form `e` (exponent vector) on the right by the
    /// given letters, collecting from the left.
    pub(crate) fn collect(&self, e: &mut [u8], letters: &[usize]) {
        let p = self.p();
        let mut stack: Vec<usize> = letters.iter().rev().copied().collect();
        let mut pending: Vec<usize> = Vec::new();
        while let Some(k) = stack.pop() {
            // e * x_k = prefix * x_k^{e_k + 1} * tail^{x_k},
            // where x_j^{x_k} = x_j (x_j, x_k) for every tail generator j > k.
            pending.clear();
            for j in k + 1..self.n_gens {
                for _ in 0..e[j] {
                    pending.push(j);
                    pending.extend(self.commutators[j][k].letters());
                }
                e[j] = 0;
            }
            e[k] += 1;
            if e[k] == p {
                e[k] = 0;
                let power: Vec<usize> = self.powers[k].letters().collect();
                stack.extend(pending.iter().rev());
                stack.extend(power.iter().rev());
            } else {
                stack.extend(pending.iter().rev());
            }
        }
    }
}
