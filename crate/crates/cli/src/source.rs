use std::path::Path;

use serde::Serialize;

use lienil::catalog::{self, Expected};
use lienil::{Error, FiniteGroup};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSource {
    Catalog,
    PcFile,
    CayleyFile,
}

pub struct ResolvedGroup {
    pub name: String,
    pub source: GroupSource,
    pub group: FiniteGroup,
    pub expected: Option<Expected>,
}

fn input(e: Error) -> CliError {
    CliError::input(e.to_string())
}

fn check_p(found: u8, wanted: Option<u32>) -> Result<(), CliError> {
    match wanted {
        Some(p) if p != found as u32 => Err(CliError::input(format!(
            "group is defined over p = {found}, but --p {p} was given"
        ))),
        _ => Ok(()),
    }
}

fn check_order(order: usize, max_order: usize) -> Result<(), CliError> {
    if order > max_order {
        return Err(CliError::input(format!(
            "group order {order} exceeds --max-order {max_order}"
        )));
    }
    Ok(())
}

fn is_cayley_text(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().next() == Some("order"))
}

/// Catalog names win over paths.
pub fn resolve(group: &str, p: Option<u32>, max_order: usize) -> Result<ResolvedGroup, CliError> {
    if let Some(entry) = catalog::find_entry(group) {
        check_p(entry.p(), p)?;
        check_order(entry.order(), max_order)?;
        return Ok(ResolvedGroup {
            group: entry.build().map_err(input)?,
            name: entry.name,
            source: GroupSource::Catalog,
            expected: Some(entry.expected),
        });
    }
    let path = Path::new(group);
    if !path.is_file() {
        return Err(CliError::input(format!(
            "`{group}` is neither a catalog entry nor a readable file"
        )));
    }
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::input(format!("cannot read {group}: {e}")))?;
    let name = path
        .file_stem()
        .map_or_else(|| group.to_string(), |s| s.to_string_lossy().into_owned());
    let located = |e: Error| CliError::input(format!("{group}: {e}"));
    if is_cayley_text(&text) {
        let p = p.ok_or_else(|| CliError::input("Cayley-table files need --p"))?;
        let g = catalog::parse_cayley_file(&text, p).map_err(located)?;
        check_order(g.order(), max_order)?;
        return Ok(ResolvedGroup {
            name,
            source: GroupSource::CayleyFile,
            group: g,
            expected: None,
        });
    }
    let pres = catalog::parse_pc_file(&text).map_err(located)?;
    check_p(pres.p(), p)?;
    let g = FiniteGroup::from_presentation(&pres, max_order).map_err(located)?;
    Ok(ResolvedGroup {
        name,
        source: GroupSource::PcFile,
        group: g,
        expected: None,
    })
}
