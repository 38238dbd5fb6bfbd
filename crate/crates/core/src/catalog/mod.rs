//! Named small p-groups with inline power-commutator presentations, and
//! parsers for presentation and Cayley-table files.

mod cases;
mod parse;

use serde::Serialize;

pub use cases::{IndexCase, INDEX_CASES};
pub use parse::{parse_cayley_file, parse_pc_file};

use crate::error::Result;
use crate::pcgroup::{FiniteGroup, PcPresentation, DEFAULT_ORDER_CAP};

/// Values known for an entry independently of this crate's computations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub order: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derived_order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_lower: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_upper: Option<usize>,
    /// Why the values hold.
    pub note: String,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub presentation: PcPresentation,
    pub tags: Vec<String>,
    pub expected: Expected,
}

impl CatalogEntry {
    pub fn p(&self) -> u8 {
        self.presentation.p()
    }

    /// `p^n`; every normal word is a distinct element.
    pub fn order(&self) -> usize {
        (self.p() as usize).pow(self.presentation.n_gens() as u32)
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        FiniteGroup::from_presentation(&self.presentation, DEFAULT_ORDER_CAP)
    }
}

// (name, tags, presentation text, expected |G'|, class, forced t value)
type Row = (&'static str, &'static str, &'static str, Option<usize>, Option<usize>, Forced);

#[derive(Clone, Copy)]
enum Forced {
    None,
    // commutative: both indices are 2
    Abelian,
    // |G'| = p squeezes p + 1 <= t_L <= t^L <= |G'| + 1
    DerivedOrderP,
}

const ROWS: &[Row] = &[
    // abelian controls
    ("c2", "p=2 abelian cyclic", "p 2\ngens 1\n", Some(1), Some(1), Forced::Abelian),
    ("c4", "p=2 abelian cyclic", "p 2\ngens 2\npow 1 : x2^1\n", Some(1), Some(1), Forced::Abelian),
    ("c3", "p=3 abelian cyclic", "p 3\ngens 1\n", Some(1), Some(1), Forced::Abelian),
    ("c9", "p=3 abelian cyclic", "p 3\ngens 2\npow 1 : x2^1\n", Some(1), Some(1), Forced::Abelian),
    (
        "c27",
        "p=3 abelian cyclic",
        "p 3\ngens 3\npow 1 : x2^1\npow 2 : x3^1\n",
        Some(1),
        Some(1),
        Forced::Abelian,
    ),
    ("c9xc3", "p=3 abelian", "p 3\ngens 3\npow 1 : x2^1\n", Some(1), Some(1), Forced::Abelian),
    ("elementary81", "p=3 abelian elementary", "p 3\ngens 4\n", Some(1), Some(1), Forced::Abelian),
    ("c5", "p=5 abelian cyclic", "p 5\ngens 1\n", Some(1), Some(1), Forced::Abelian),
    // p = 2
    (
        "d4",
        "p=2 dihedral class=2 |G'|=2",
        "p 2\ngens 3\npow 2 : x3^1\ncomm 2 1 : x3^1\n",
        Some(2),
        Some(2),
        Forced::DerivedOrderP,
    ),
    (
        "q8",
        "p=2 quaternion class=2 |G'|=2",
        "p 2\ngens 3\npow 1 : x3^1\npow 2 : x3^1\ncomm 2 1 : x3^1\n",
        Some(2),
        Some(2),
        Forced::DerivedOrderP,
    ),
    (
        "d8",
        "p=2 dihedral class=3 |G'|=4",
        "p 2\ngens 4\npow 2 : x3^1\npow 3 : x4^1\ncomm 2 1 : x3^1 x4^1\ncomm 3 1 : x4^1\n",
        Some(4),
        Some(3),
        Forced::None,
    ),
    (
        "q16",
        "p=2 quaternion class=3 |G'|=4",
        "p 2\ngens 4\npow 1 : x4^1\npow 2 : x3^1\npow 3 : x4^1\ncomm 2 1 : x3^1 x4^1\ncomm 3 1 : x4^1\n",
        Some(4),
        Some(3),
        Forced::None,
    ),
    (
        "sd16",
        "p=2 semidihedral class=3 |G'|=4",
        "p 2\ngens 4\npow 2 : x3^1\npow 3 : x4^1\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\n",
        Some(4),
        Some(3),
        Forced::None,
    ),
    (
        "m16",
        "p=2 modular class=2 |G'|=2",
        "p 2\ngens 4\npow 2 : x3^1\npow 3 : x4^1\ncomm 2 1 : x4^1\n",
        Some(2),
        Some(2),
        Forced::DerivedOrderP,
    ),
    (
        "c4wrc2",
        "p=2 wreath class=3 |G'|=4",
        "p 2\ngens 5\npow 2 : x4^1\npow 3 : x5^1\ncomm 2 1 : x3^1\ncomm 3 1 : x5^1\ncomm 4 1 : x5^1\n",
        Some(4),
        Some(3),
        Forced::None,
    ),
    (
        "c2wrc4",
        "p=2 wreath class=4 |G'|=8",
        "p 2\ngens 6\npow 1 : x2^1\ncomm 3 1 : x4^1\ncomm 3 2 : x5^1\ncomm 4 1 : x5^1\ncomm 4 2 : x6^1\ncomm 5 1 : x6^1\n",
        Some(8),
        Some(4),
        Forced::None,
    ),
    (
        "extraspecial32plus",
        "p=2 extraspecial class=2 |G'|=2",
        "p 2\ngens 5\ncomm 2 1 : x5^1\ncomm 4 3 : x5^1\n",
        Some(2),
        Some(2),
        Forced::DerivedOrderP,
    ),
    (
        "extraspecial32minus",
        "p=2 extraspecial class=2 |G'|=2",
        "p 2\ngens 5\npow 3 : x5^1\npow 4 : x5^1\ncomm 2 1 : x5^1\ncomm 4 3 : x5^1\n",
        Some(2),
        Some(2),
        Forced::DerivedOrderP,
    ),
    // p = 3
    (
        "heisenberg27",
        "p=3 extraspecial exponent=3 class=2 |G'|=3",
        "p 3\ngens 3\ncomm 2 1 : x3^1\n",
        Some(3),
        Some(2),
        Forced::DerivedOrderP,
    ),
    (
        "extraspecial27exp9",
        "p=3 extraspecial exponent=9 class=2 |G'|=3",
        "p 3\ngens 3\npow 1 : x3^1\ncomm 2 1 : x3^1\n",
        Some(3),
        Some(2),
        Forced::DerivedOrderP,
    ),
    (
        "c3wrc3",
        "p=3 wreath maximal-class class=3 |G'|=9",
        "p 3\ngens 4\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\n",
        Some(9),
        Some(3),
        Forced::None,
    ),
    (
        "maxclass81b",
        "p=3 maximal-class class=3 |G'|=9",
        "p 3\ngens 4\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\ncomm 3 2 : x4^1\n",
        Some(9),
        Some(3),
        Forced::None,
    ),
    (
        "maxclass81c",
        "p=3 maximal-class class=3 |G'|=9",
        "p 3\ngens 4\npow 2 : x4^1\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\n",
        Some(9),
        Some(3),
        Forced::None,
    ),
    (
        "maxclass81d",
        "p=3 maximal-class class=3 |G'|=9",
        "p 3\ngens 4\npow 1 : x4^1\npow 2 : x4^2\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\n",
        Some(9),
        Some(3),
        Forced::None,
    ),
    (
        "class2_243",
        "p=3 class=2 |G'|=9 G'=C3xC3",
        "p 3\ngens 5\ncomm 2 1 : x4^1\ncomm 3 1 : x5^1\n",
        Some(9),
        Some(2),
        Forced::None,
    ),
    (
        "cyclic_derived_243",
        "p=3 G'=C9",
        "p 3\ngens 5\npow 1 : x4^1\npow 2 : x3^1\npow 3 : x5^2\ncomm 2 1 : x3^2 x4^2\ncomm 3 1 : x5^1\ncomm 4 2 : x5^2\n",
        None,
        None,
        Forced::None,
    ),
    (
        "class3_243",
        "p=3 class=3 |G'|=27 G'=C3^3 gamma3=C3xC3",
        "p 3\ngens 5\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\ncomm 3 2 : x5^1\n",
        Some(27),
        Some(3),
        Forced::None,
    ),
    (
        "maxclass243",
        "p=3 maximal-class class=4 |G'|=27 G'=C9xC3 gamma3=C3xC3",
        "p 3\ngens 5\npow 3 : x5^2\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\ncomm 3 2 : x4^1\ncomm 4 1 : x5^1\ncomm 4 2 : x5^1\n",
        Some(27),
        Some(4),
        Forced::None,
    ),
    // p = 5
    (
        "heisenberg125",
        "p=5 extraspecial exponent=5 class=2 |G'|=5",
        "p 5\ngens 3\ncomm 2 1 : x3^1\n",
        Some(5),
        Some(2),
        Forced::DerivedOrderP,
    ),
    (
        "class3_625",
        "p=5 class=3 |G'|=25",
        "p 5\ngens 4\ncomm 2 1 : x3^1\ncomm 3 1 : x4^1\n",
        Some(25),
        Some(3),
        Forced::None,
    ),
];

fn entry_from_row(row: &Row) -> CatalogEntry {
    let &(name, tags, text, derived_order, class, forced) = row;
    let presentation = parse_pc_file(text).expect("builtin presentations parse");
    let p = presentation.p() as usize;
    let (t, note) = match forced {
        Forced::Abelian => (Some(2), "commutative algebra: [KG, KG] = 0".to_string()),
        Forced::DerivedOrderP => (
            Some(p + 1),
            format!("|G'| = {p} forces p + 1 <= t_L <= t^L <= |G'| + 1 = {}", p + 1),
        ),
        Forced::None => (None, "standard presentation facts only".to_string()),
    };
    let mut entry = CatalogEntry {
        name: name.to_string(),
        presentation,
        tags: tags.split(' ').map(str::to_string).collect(),
        expected: Expected {
            order: 0,
            derived_order,
            class,
            t_lower: t,
            t_upper: t,
            note,
        },
    };
    entry.expected.order = entry.order();
    entry
}

/// All builtin entries, sorted by name.
pub fn builtin_catalog() -> Vec<CatalogEntry> {
    let mut entries: Vec<CatalogEntry> = ROWS.iter().map(entry_from_row).collect();
    entries.sort_by(|a, b| a.name.cmp(&b.name));
    entries
}

/// Looks up a builtin entry by name, ignoring ASCII case.
pub fn find_entry(name: &str) -> Option<CatalogEntry> {
    ROWS.iter()
        .find(|row| row.0.eq_ignore_ascii_case(name))
        .map(entry_from_row)
}
