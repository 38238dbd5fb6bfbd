use crate::error::{Error, Result};
use crate::ffkernel::FieldSpec;
use crate::pcgroup::{FiniteGroup, PcPresentation, Word};

/// A whitespace-separated token with its 1-based column.
#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    col: usize,
    text: &'a str,
}

/// Splits a line at whitespace, treating `:` as a token of its own and
/// dropping everything after `#`.
fn tokenize(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in body.char_indices() {
        let boundary = ch.is_whitespace() || ch == ':';
        if boundary {
            if let Some(s) = start.take() {
                out.push((s, &body[s..i]));
            }
            if ch == ':' {
                out.push((i, &body[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s, &body[s..]));
    }
    out.into_iter()
        .map(|(byte, text)| Token {
            col: body[..byte].chars().count() + 1,
            text,
        })
        .collect()
}

struct LineCtx {
    line: usize,
    // column just past the last token, for "missing ..." diagnostics
    end_col: usize,
}

impl LineCtx {
    fn at(&self, tok: &Token, msg: impl Into<String>) -> Error {
        Error::parse(self.line, tok.col, msg)
    }

    fn at_end(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.line, self.end_col, msg)
    }
}

fn parse_number(ctx: &LineCtx, tok: &Token, what: &str) -> Result<usize> {
    tok.text
        .parse::<usize>()
        .map_err(|_| ctx.at(tok, format!("expected {what}, found `{}`", tok.text)))
}

fn parse_gen_index(ctx: &LineCtx, tok: &Token, n_gens: usize) -> Result<usize> {
    let k = parse_number(ctx, tok, "a generator index")?;
    if k == 0 || k > n_gens {
        return Err(ctx.at(
            tok,
            format!("generator index {k} out of range 1..={n_gens}"),
        ));
    }
    Ok(k - 1)
}

/// Parses `e` or `x<k>^<e> ...`, requiring every generator to come after `after` (0-based).
fn parse_word(ctx: &LineCtx, toks: &[Token], p: u8, n_gens: usize, after: usize) -> Result<Word> {
    if toks.is_empty() {
        return Err(ctx.at_end("missing relation word"));
    }
    if toks.len() == 1 && toks[0].text == "e" {
        return Ok(Word::identity());
    }
    let mut syllables = Vec::with_capacity(toks.len());
    let mut prev: Option<usize> = None;
    for tok in toks {
        let malformed = || ctx.at(tok, format!("malformed word token `{}`, expected x<k>^<e>", tok.text));
        let rest = tok.text.strip_prefix('x').ok_or_else(malformed)?;
        let (k, e) = rest.split_once('^').ok_or_else(malformed)?;
        let k: usize = k.parse().map_err(|_| malformed())?;
        let e: u32 = e.parse().map_err(|_| malformed())?;
        if k == 0 || k > n_gens {
            return Err(ctx.at(tok, format!("generator x{k} out of range 1..={n_gens}")));
        }
        let g = k - 1;
        if g <= after {
            return Err(ctx.at(
                tok,
                format!("word must use generators after x{}, found x{k}", after + 1),
            ));
        }
        if prev.is_some_and(|q| g <= q) {
            return Err(ctx.at(tok, "generators in a word must be strictly increasing"));
        }
        if e == 0 || e >= p as u32 {
            return Err(ctx.at(tok, format!("exponent {e} outside 1..{p}")));
        }
        prev = Some(g);
        syllables.push((g, e as u8));
    }
    Ok(Word::new(syllables))
}

fn expect_colon<'a>(ctx: &LineCtx, toks: &'a [Token<'a>], at: usize) -> Result<&'a [Token<'a>]> {
    match toks.get(at) {
        Some(t) if t.text == ":" => Ok(&toks[at + 1..]),
        Some(t) => Err(ctx.at(t, format!("expected `:`, found `{}`", t.text))),
        None => Err(ctx.at_end("expected `:`")),
    }
}

fn single_arg<'a>(ctx: &LineCtx, toks: &'a [Token<'a>], what: &str) -> Result<&'a Token<'a>> {
    match toks {
        [_, arg] => Ok(arg),
        [_] => Err(ctx.at_end(format!("missing {what}"))),
        [_, _, extra, ..] => Err(ctx.at(extra, format!("unexpected `{}`", extra.text))),
        [] => unreachable!(),
    }
}

/// Parses the line-oriented presentation format:
///
/// ```text
/// p <prime>
/// gens <n>
/// pow <i> : <word>
/// comm <j> <i> : <word>     # j > i
/// ```
///
/// Words are `e` or `x<k>^<e> ...` with increasing `k` and `1 <= e < p`.
/// Relations that are not listed are trivial.
pub fn parse_pc_file(text: &str) -> Result<PcPresentation> {
    let mut field: Option<FieldSpec> = None;
    let mut pres: Option<PcPresentation> = None;
    let mut seen_pow: Vec<bool> = Vec::new();
    let mut seen_comm: Vec<Vec<bool>> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        let last = toks.last().unwrap();
        let ctx = LineCtx {
            line,
            end_col: last.col + last.text.chars().count(),
        };
        match head.text {
            "p" => {
                if field.is_some() {
                    return Err(ctx.at(head, "duplicate `p` directive"));
                }
                let arg = single_arg(&ctx, &toks, "prime")?;
                let p = parse_number(&ctx, arg, "a prime")?;
                let f = u32::try_from(p)
                    .map_err(|_| ctx.at(arg, format!("{p} is too large")))
                    .and_then(|p| FieldSpec::new(p).map_err(|e| ctx.at(arg, e.to_string())))?;
                field = Some(f);
            }
            "gens" => {
                let Some(f) = field else {
                    return Err(ctx.at(head, "`gens` must follow the `p` directive"));
                };
                if pres.is_some() {
                    return Err(ctx.at(head, "duplicate `gens` directive"));
                }
                let arg = single_arg(&ctx, &toks, "generator count")?;
                let n = parse_number(&ctx, arg, "a generator count")?;
                pres = Some(PcPresentation::new(f, n));
                seen_pow = vec![false; n];
                seen_comm = (0..n).map(|j| vec![false; j]).collect();
            }
            "pow" => {
                let Some(pr) = pres.as_mut() else {
                    return Err(ctx.at(head, "relations must follow `p` and `gens`"));
                };
                let n = pr.n_gens();
                let i_tok = toks.get(1).ok_or_else(|| ctx.at_end("missing generator index"))?;
                let i = parse_gen_index(&ctx, i_tok, n)?;
                let word_toks = expect_colon(&ctx, &toks, 2)?;
                let word = parse_word(&ctx, word_toks, pr.p(), n, i)?;
                if std::mem::replace(&mut seen_pow[i], true) {
                    return Err(ctx.at(head, format!("duplicate power relation for x{}", i + 1)));
                }
                pr.set_power(i, word).map_err(|e| ctx.at(head, e.to_string()))?;
            }
            "comm" => {
                let Some(pr) = pres.as_mut() else {
                    return Err(ctx.at(head, "relations must follow `p` and `gens`"));
                };
                let n = pr.n_gens();
                let j_tok = toks.get(1).ok_or_else(|| ctx.at_end("missing generator index"))?;
                let i_tok = toks.get(2).ok_or_else(|| ctx.at_end("missing generator index"))?;
                let j = parse_gen_index(&ctx, j_tok, n)?;
                let i = parse_gen_index(&ctx, i_tok, n)?;
                if j <= i {
                    return Err(ctx.at(
                        j_tok,
                        format!("commutator (x{}, x{}) needs the first index larger", j + 1, i + 1),
                    ));
                }
                let word_toks = expect_colon(&ctx, &toks, 3)?;
                let word = parse_word(&ctx, word_toks, pr.p(), n, j)?;
                if std::mem::replace(&mut seen_comm[j][i], true) {
                    return Err(ctx.at(
                        head,
                        format!("duplicate commutator relation for (x{}, x{})", j + 1, i + 1),
                    ));
                }
                pr.set_commutator(j, i, word).map_err(|e| ctx.at(head, e.to_string()))?;
            }
            other => return Err(ctx.at(head, format!("unknown directive `{other}`"))),
        }
    }
    let missing = |what: &str| Error::parse(last_line + 1, 1, format!("missing `{what}` directive"));
    if field.is_none() {
        return Err(missing("p"));
    }
    pres.ok_or_else(|| missing("gens"))
}

/// Parses `order <N>` followed by `N` rows of `N` 0-based element indices and
/// builds the group, checking identity, associativity on all triples and that
/// `N` is a power of `p`.
pub fn parse_cayley_file(text: &str, p: u32) -> Result<FiniteGroup> {
    let field = FieldSpec::new(p)?;
    let mut order: Option<usize> = None;
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokenize(raw);
        let Some(head) = toks.first() else { continue };
        let last = toks.last().unwrap();
        let ctx = LineCtx {
            line,
            end_col: last.col + last.text.chars().count(),
        };
        let Some(n) = order else {
            if head.text != "order" {
                return Err(ctx.at(head, format!("expected `order`, found `{}`", head.text)));
            }
            let arg = single_arg(&ctx, &toks, "order")?;
            let n = parse_number(&ctx, arg, "an order")?;
            if n == 0 {
                return Err(ctx.at(arg, "order must be positive"));
            }
            order = Some(n);
            continue;
        };
        if rows.len() == n {
            return Err(ctx.at(head, format!("more than {n} table rows")));
        }
        if toks.len() != n {
            let tok = toks.get(n).unwrap_or(last);
            return Err(ctx.at(tok, format!("row has {} entries, expected {n}", toks.len())));
        }
        let mut row = Vec::with_capacity(n);
        for tok in &toks {
            let x = parse_number(&ctx, tok, "an element index")?;
            if x >= n {
                return Err(ctx.at(tok, format!("element {x} out of range 0..{n}")));
            }
            row.push(x);
        }
        rows.push(row);
    }
    let Some(n) = order else {
        return Err(Error::parse(last_line + 1, 1, "missing `order` line"));
    };
    if rows.len() != n {
        return Err(Error::parse(
            last_line + 1,
            1,
            format!("expected {n} table rows, found {}", rows.len()),
        ));
    }
    FiniteGroup::from_table(field, rows)
}
