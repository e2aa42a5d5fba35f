//! Line-oriented text formats.
//!
//! Every format allows blank lines and `#` comments. Parse errors carry the
//! 1-based line and column of the offending token.
//!
//! ```text
//! degree 3                      # factorization
//! factor conj=- base=1 exp=3
//! factor conj=1,-2 base=2 exp=1
//!
//! N 3                           # covering
//! labels (1 2) (2 3) (1 3)
//!
//! genus 1                       # Lefschetz fibration
//! cycle 1 0 sep=0
//!
//! gens 2                        # presentation
//! rel 1 2 -1 -2
//!
//! perm 3: (1 2) (1 2 3)         # target group
//! table 2                       # or a multiplication table
//! 0 1
//! 1 0
//!
//! twist 1                       # gluing matrix, 2g rows
//! 1 1
//! 0 1
//! ```
//!
//! Braids are `B<d>: <signed ints>`; twist words are bare signed ints.

use std::str::FromStr;

use crate::braid::{BraidWord, Permutation};
use crate::cover::CoveringData;
use crate::error::{Error, Result};
use crate::factor::{Exponent, Factor, Factorization};
use crate::lefschetz::{FibSumTwist, LFibration};
use crate::mcg::SpMatrix;
use crate::vankampen::{FiniteGroup, Presentation};
use crate::word::FreeWord;

#[derive(Clone, Copy, Debug)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

#[derive(Debug)]
struct Line<'a> {
    number: usize,
    body: &'a str,
    tokens: Vec<Token<'a>>,
}

impl<'a> Line<'a> {
    fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    fn end_column(&self) -> usize {
        self.body.chars().count() + 1
    }

    /// Exactly `keyword <value>`.
    fn single<T: FromStr>(&self, keyword: &str) -> Result<T> {
        if self.keyword() != keyword {
            return Err(self.error(1, format!("expected '{keyword}'")));
        }
        match self.tokens.len() {
            1 => Err(self.error(self.end_column(), format!("missing value after '{keyword}'"))),
            2 => number(self, self.tokens[1]),
            _ => Err(self.error(self.tokens[2].column, "unexpected trailing token")),
        }
    }
}

fn lines(input: &str) -> Vec<Line<'_>> {
    input
        .lines()
        .enumerate()
        .filter_map(|(k, raw)| {
            let body = raw.split('#').next().unwrap_or("");
            let mut tokens = Vec::new();
            let mut start: Option<usize> = None;
            for (i, c) in body.char_indices() {
                if c.is_whitespace() {
                    if let Some(s) = start.take() {
                        tokens.push(token(body, s, i));
                    }
                } else if start.is_none() {
                    start = Some(i);
                }
            }
            if let Some(s) = start {
                tokens.push(token(body, s, body.len()));
            }
            (!tokens.is_empty()).then_some(Line {
                number: k + 1,
                body,
                tokens,
            })
        })
        .collect()
}

fn token(body: &str, start: usize, end: usize) -> Token<'_> {
    Token {
        text: &body[start..end],
        column: body[..start].chars().count() + 1,
    }
}

fn number<T: FromStr>(line: &Line, t: Token) -> Result<T> {
    t.text
        .parse()
        .map_err(|_| line.error(t.column, format!("expected an integer, found '{}'", t.text)))
}

fn numbers<T: FromStr>(line: &Line, tokens: &[Token]) -> Result<Vec<T>> {
    tokens.iter().map(|&t| number(line, t)).collect()
}

/// Attach a position to a semantic error raised while building a value.
fn at<T>(line: &Line, column: usize, r: Result<T>) -> Result<T> {
    r.map_err(|e| match e {
        Error::Parse { .. } => e,
        other => line.error(column, other.to_string()),
    })
}

fn first_line<'a>(ls: &'a [Line<'a>], what: &str) -> Result<&'a Line<'a>> {
    ls.first().ok_or_else(|| Error::Parse {
        line: 1,
        column: 1,
        message: format!("empty input, expected {what}"),
    })
}

fn ints(v: &[i32]) -> String {
    v.iter().map(i32::to_string).collect::<Vec<_>>().join(" ")
}

fn ints64(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
}

pub fn parse_factorization(input: &str) -> Result<Factorization> {
    let ls = lines(input);
    let head = first_line(&ls, "'degree <d>'")?;
    let d: usize = head.single("degree")?;
    let mut factors = Vec::new();
    for line in &ls[1..] {
        if line.keyword() != "factor" {
            return Err(line.error(1, "expected 'factor'"));
        }
        let (mut conj, mut base, mut exp) = (Some(Vec::new()), None, None);
        let mut seen_conj = false;
        for &t in &line.tokens[1..] {
            let Some((key, value)) = t.text.split_once('=') else {
                return Err(line.error(t.column, format!("expected key=value, found '{}'", t.text)));
            };
            let vcol = t.column + key.chars().count() + 1;
            let vt = Token { text: value, column: vcol };
            match key {
                "conj" if !seen_conj => {
                    seen_conj = true;
                    if value != "-" {
                        let mut letters = Vec::new();
                        let mut col = vcol;
                        for part in value.split(',') {
                            letters.push(number::<i32>(line, Token { text: part, column: col })?);
                            col += part.chars().count() + 1;
                        }
                        conj = Some(letters);
                    }
                }
                "base" if base.is_none() => base = Some((number::<usize>(line, vt)?, vcol)),
                "exp" if exp.is_none() => {
                    let k = number::<i32>(line, vt)?;
                    exp = Some(at(line, vcol, Exponent::from_value(k))?);
                }
                "conj" | "base" | "exp" => return Err(line.error(t.column, format!("duplicate key '{key}'"))),
                _ => return Err(line.error(t.column, format!("unknown key '{key}'"))),
            }
        }
        let end = line.end_column();
        let (base, bcol) = base.ok_or_else(|| line.error(end, "missing base="))?;
        let exp = exp.ok_or_else(|| line.error(end, "missing exp="))?;
        let conj = at(line, 1, BraidWord::new(d, conj.unwrap_or_default()))?;
        factors.push(at(line, bcol, Factor::new(conj, base, exp))?);
    }
    at(head, 1, Factorization::new(d, factors))
}

pub fn print_factorization(f: &Factorization) -> String {
    let mut out = format!("degree {}\n", f.degree());
    for x in f.factors() {
        let letters = x.conjugator().letters();
        let conj = if letters.is_empty() {
            "-".to_string()
        } else {
            letters.iter().map(i32::to_string).collect::<Vec<_>>().join(",")
        };
        out += &format!("factor conj={conj} base={} exp={}\n", x.base(), x.exponent().value());
    }
    out
}

/// Whitespace-separated permutations in cycle notation starting at byte
/// offset `from` of the line body. Adjacent cycles `(1 2)(3 4)` form one
/// permutation; `()` is the identity.
fn permutations(line: &Line, from: usize, degree: usize) -> Result<Vec<(Permutation, usize)>> {
    let body = line.body;
    let col = |i: usize| body[..i].chars().count() + 1;
    let mut out = Vec::new();
    let mut i = from;
    let bytes = body.as_bytes();
    while i < body.len() {
        if bytes[i].is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        while i < body.len() && bytes[i] == b'(' {
            let close = body[i..].find(')').map(|k| i + k).ok_or_else(|| line.error(col(i), "unclosed '('"))?;
            let inner = &body[i + 1..close];
            let mut cycle = Vec::new();
            let mut off = i + 1;
            for part in inner.split(|c: char| c.is_whitespace() || c == ',') {
                if !part.is_empty() {
                    cycle.push(number::<usize>(line, Token { text: part, column: col(off) })?);
                }
                off += part.len() + 1;
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            i = close + 1;
        }
        if i == start {
            return Err(line.error(col(i), "expected '('"));
        }
        if i < body.len() && !bytes[i].is_ascii_whitespace() {
            return Err(line.error(col(i), "expected whitespace or '(' after ')'"));
        }
        out.push((at(line, col(start), Permutation::from_cycles(degree, &cycles))?, col(start)));
    }
    Ok(out)
}

pub fn parse_covering(input: &str) -> Result<CoveringData> {
    let ls = lines(input);
    let head = first_line(&ls, "'N <sheets>'")?;
    let n: usize = head.single("N")?;
    let mut labels = Vec::new();
    for line in &ls[1..] {
        if line.keyword() != "labels" {
            return Err(line.error(1, "expected 'labels'"));
        }
        let from = line.tokens[0].text.len() + line.body.find("labels").unwrap_or(0);
        for (p, c) in permutations(line, from, n)? {
            if !p.is_transposition() {
                return Err(line.error(c, format!("label {p} is not a transposition")));
            }
            labels.push(p);
        }
    }
    at(head, 1, CoveringData::new(n, labels))
}

pub fn print_covering(theta: &CoveringData) -> String {
    let labels: Vec<String> = theta.labels().iter().map(Permutation::to_string).collect();
    format!("N {}\nlabels {}\n", theta.sheets(), labels.join(" "))
}

pub fn parse_lfibration(input: &str) -> Result<LFibration> {
    let ls = lines(input);
    let head = first_line(&ls, "'genus <g>'")?;
    let g: usize = head.single("genus")?;
    let (mut cycles, mut flags) = (Vec::new(), Vec::new());
    for line in &ls[1..] {
        if line.keyword() != "cycle" {
            return Err(line.error(1, "expected 'cycle'"));
        }
        let mut rest = &line.tokens[1..];
        let mut sep = false;
        if let Some(last) = rest.last() {
            if let Some(v) = last.text.strip_prefix("sep=") {
                sep = match v {
                    "0" => false,
                    "1" => true,
                    _ => return Err(line.error(last.column + 4, "sep must be 0 or 1")),
                };
                rest = &rest[..rest.len() - 1];
            }
        }
        if rest.len() != 2 * g {
            return Err(line.error(line.tokens[0].column, format!("expected {} entries, found {}", 2 * g, rest.len())));
        }
        cycles.push(numbers::<i64>(line, rest)?);
        flags.push(sep);
    }
    at(head, 1, LFibration::new(g, cycles, flags))
}

pub fn print_lfibration(l: &LFibration) -> String {
    let mut out = format!("genus {}\n", l.genus());
    for (c, &s) in l.cycles().iter().zip(l.separating()) {
        out += &format!("cycle {} sep={}\n", ints64(c), u8::from(s));
    }
    out
}

pub fn parse_presentation(input: &str) -> Result<Presentation> {
    let ls = lines(input);
    let head = first_line(&ls, "'gens <n>'")?;
    let n: usize = head.single("gens")?;
    let mut relators = Vec::new();
    for line in &ls[1..] {
        if line.keyword() != "rel" {
            return Err(line.error(1, "expected 'rel'"));
        }
        let letters = numbers::<i32>(line, &line.tokens[1..])?;
        relators.push(at(line, 1, FreeWord::reduce(&letters, n))?);
    }
    at(head, 1, Presentation::new(n, relators))
}

pub fn print_presentation(p: &Presentation) -> String {
    let mut out = format!("gens {}\n", p.generators());
    for r in p.relators() {
        if r.is_empty() {
            out += "rel\n";
        } else {
            out += &format!("rel {}\n", ints(r.letters()));
        }
    }
    out
}

/// `perm <degree>: <generators>`, `table <n>` with `n` rows, or the
/// shorthands `S<n>` (symmetric) and `Z<n>` (cyclic).
pub fn parse_target(input: &str) -> Result<FiniteGroup> {
    let ls = lines(input);
    let head = first_line(&ls, "a target group")?;
    let kw = head.keyword();
    if head.tokens.len() == 1 && ls.len() == 1 {
        if let Some(g) = shorthand(head, kw)? {
            return Ok(g);
        }
    }
    match kw {
        "perm" => {
            let t = head.tokens.get(1).ok_or_else(|| head.error(head.end_column(), "missing degree"))?;
            let (deg_text, colon) = match t.text.strip_suffix(':') {
                Some(s) => (s, true),
                None => (t.text, false),
            };
            let degree: usize = number(head, Token { text: deg_text, column: t.column })?;
            let mut from = head.body.find(t.text).unwrap_or(0) + t.text.len();
            if !colon {
                let rest = &head.body[from..];
                let k = rest.find(':').ok_or_else(|| head.error(t.column + t.text.len(), "expected ':'"))?;
                if !rest[..k].trim().is_empty() {
                    return Err(head.error(t.column + t.text.len() + 1, "expected ':'"));
                }
                from += k + 1;
            }
            let gens: Vec<Permutation> = permutations(head, from, degree)?.into_iter().map(|(p, _)| p).collect();
            if let Some(extra) = ls.get(1) {
                return Err(extra.error(1, "unexpected line after 'perm'"));
            }
            at(head, 1, FiniteGroup::from_permutations(degree, &gens))
        }
        "table" => {
            let n: usize = head.single("table")?;
            if ls.len() != n + 1 {
                let line = ls.last().map_or(head.number, |l| l.number);
                return Err(Error::Parse {
                    line,
                    column: 1,
                    message: format!("expected {n} table rows, found {}", ls.len() - 1),
                });
            }
            let mut rows = Vec::with_capacity(n);
            for line in &ls[1..] {
                if line.tokens.len() != n {
                    return Err(line.error(1, format!("expected {n} entries, found {}", line.tokens.len())));
                }
                rows.push(numbers::<usize>(line, &line.tokens)?);
            }
            at(head, 1, FiniteGroup::from_table(&rows))
        }
        _ => Err(head.error(1, "expected 'perm', 'table', 'S<n>' or 'Z<n>'")),
    }
}

fn shorthand(line: &Line, kw: &str) -> Result<Option<FiniteGroup>> {
    let (kind, rest) = kw.split_at(1);
    if !matches!(kind, "S" | "Z") || rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
        return Ok(None);
    }
    let n: usize = number(line, Token { text: rest, column: 2 })?;
    if n == 0 || (kind == "S" && n > 7) {
        return Err(line.error(2, format!("unsupported order parameter {n}")));
    }
    let gens = if kind == "Z" {
        let images: Vec<usize> = (1..=n).map(|k| k % n + 1).collect();
        vec![Permutation::from_images(&images)?]
    } else if n == 1 {
        Vec::new()
    } else {
        let images: Vec<usize> = (1..=n).map(|k| k % n + 1).collect();
        vec![Permutation::transposition(n, 1, 2)?, Permutation::from_images(&images)?]
    };
    at(line, 1, FiniteGroup::from_permutations(n, &gens)).map(Some)
}

pub fn parse_twist(input: &str) -> Result<FibSumTwist> {
    let ls = lines(input);
    let head = first_line(&ls, "'twist <g>'")?;
    let g: usize = head.single("twist")?;
    if ls.len() != 2 * g + 1 {
        return Err(Error::Parse {
            line: ls.last().map_or(1, |l| l.number),
            column: 1,
            message: format!("expected {} matrix rows, found {}", 2 * g, ls.len() - 1),
        });
    }
    let mut rows = Vec::with_capacity(2 * g);
    for line in &ls[1..] {
        if line.tokens.len() != 2 * g {
            return Err(line.error(1, format!("expected {} entries, found {}", 2 * g, line.tokens.len())));
        }
        rows.push(numbers::<i64>(line, &line.tokens)?);
    }
    let matrix = at(head, 1, SpMatrix::from_rows(g, &rows))?;
    Ok(FibSumTwist { matrix })
}

pub fn print_twist(t: &FibSumTwist) -> String {
    let m = t.matrix.matrix();
    let mut out = format!("twist {}\n", t.matrix.genus());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|x| x.to_string()).collect();
        out += &row.join(" ");
        out.push('\n');
    }
    out
}

/// `B<d>: <signed ints>`.
pub fn parse_braid(input: &str) -> Result<BraidWord> {
    let ls = lines(input);
    let line = first_line(&ls, "'B<d>: ...'")?;
    if let Some(extra) = ls.get(1) {
        return Err(extra.error(1, "unexpected extra line"));
    }
    let head = line.tokens[0];
    let Some(rest) = head.text.strip_prefix('B') else {
        return Err(line.error(head.column, "expected 'B<d>:'"));
    };
    let (d_text, tail) = rest.split_once(':').unwrap_or((rest, "\u{0}"));
    if tail == "\u{0}" {
        return Err(line.error(head.column + head.text.len(), "expected ':'"));
    }
    let d: usize = number(line, Token { text: d_text, column: head.column + 1 })?;
    let mut letters = Vec::new();
    if !tail.is_empty() {
        letters.push(number::<i32>(line, Token { text: tail, column: head.column + 2 + d_text.len() })?);
    }
    letters.extend(numbers::<i32>(line, &line.tokens[1..])?);
    at(line, 1, BraidWord::new(d, letters))
}

/// Signed twist indices, possibly over several lines.
pub fn parse_tau_word(input: &str) -> Result<Vec<i32>> {
    let mut out = Vec::new();
    for line in lines(input) {
        for &t in &line.tokens {
            let k: i32 = number(&line, t)?;
            if k == 0 {
                return Err(line.error(t.column, "twist index 0"));
            }
            out.push(k);
        }
    }
    Ok(out)
}

/// Generators of `Λ ⊂ Z²` as `a,b;c,d;…`.
pub fn parse_lambda(input: &str) -> Result<Vec<[i64; 2]>> {
    let mut out = Vec::new();
    let mut col = 1;
    for part in input.split(';') {
        let fields: Vec<&str> = part.split(',').map(str::trim).collect();
        let bad = || Error::Parse {
            line: 1,
            column: col,
            message: format!("expected 'a,b', found '{part}'"),
        };
        if fields.len() != 2 {
            return Err(bad());
        }
        let a = fields[0].parse().map_err(|_| bad())?;
        let b = fields[1].parse().map_err(|_| bad())?;
        out.push([a, b]);
        col += part.chars().count() + 1;
    }
    Ok(out)
}
