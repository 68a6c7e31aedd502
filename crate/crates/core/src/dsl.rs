//! Line-oriented text format for register automata, its JSON mirror, and
//! data words written as `letter:datum` pairs.
//!
//! ```text
//! automaton demo
//! registers 1
//! alphabet a b
//! location p initial
//! location q accepting
//! trans p -> q on a when true set *
//! trans q -> q on b when !=r0 | (=r0 & true)
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::automaton::{Acceptance, Constraint, Datum, RegSet, RegisterAutomaton, Transition};
use crate::semantics::DataWord;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

/// One or more positioned diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub source: String,
    pub diagnostics: Vec<Diagnostic>,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, d) in self.diagnostics.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{}:{}:{}: {}", self.source, d.line, d.column, d.message)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

/// Text plus where it came from, for diagnostics.
#[derive(Clone, Debug)]
pub struct SourceDocument {
    pub text: String,
    pub provenance: String,
}

impl SourceDocument {
    pub fn inline(text: impl Into<String>) -> Self {
        SourceDocument {
            text: text.into(),
            provenance: "<inline>".into(),
        }
    }

    pub fn from_path(path: &str, text: String) -> Self {
        SourceDocument {
            text,
            provenance: path.into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Dsl,
    Json,
}

struct Errors {
    source: String,
    list: Vec<Diagnostic>,
}

impl Errors {
    fn push(&mut self, line: usize, column: usize, message: impl Into<String>) {
        self.list.push(Diagnostic {
            line,
            column,
            message: message.into(),
        });
    }

    fn finish<T>(self, value: T) -> Result<T, ParseError> {
        if self.list.is_empty() {
            Ok(value)
        } else {
            Err(ParseError {
                source: self.source,
                diagnostics: self.list,
            })
        }
    }
}

/// Whitespace-separated tokens with their 1-based columns, up to a `//` comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let code = line.find("//").map_or(line, |i| &line[..i]);
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in code.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s + 1, &code[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &code[s..]));
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    True,
    Eq(usize),
    Ne(usize),
    Not,
    And,
    Or,
    Open,
    Close,
}

struct GuardParser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_col: usize,
    registers: &'a mut Vec<(usize, usize)>,
}

fn lex_guard(text: &str, col0: usize) -> Result<Vec<(usize, Tok)>, (usize, String)> {
    let bytes = text.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    let register = |i: usize| -> Result<(usize, usize), (usize, String)> {
        let digits = bytes[i..].iter().take_while(|b| b.is_ascii_digit()).count();
        if digits == 0 {
            return Err((col0 + i, "expected a register index".into()));
        }
        let r = text[i..i + digits]
            .parse()
            .map_err(|_| (col0 + i, "register index too large".to_string()))?;
        Ok((r, i + digits))
    };
    while i < bytes.len() {
        let col = col0 + i;
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'(' => {
                out.push((col, Tok::Open));
                i += 1;
            }
            b')' => {
                out.push((col, Tok::Close));
                i += 1;
            }
            b'&' => {
                out.push((col, Tok::And));
                i += 1;
            }
            b'|' => {
                out.push((col, Tok::Or));
                i += 1;
            }
            b'!' if text[i..].starts_with("!=r") => {
                let (r, next) = register(i + 3)?;
                out.push((col, Tok::Ne(r)));
                i = next;
            }
            b'!' => {
                out.push((col, Tok::Not));
                i += 1;
            }
            b'=' if text[i..].starts_with("=r") => {
                let (r, next) = register(i + 2)?;
                out.push((col, Tok::Eq(r)));
                i = next;
            }
            b't' if text[i..].starts_with("true") => {
                out.push((col, Tok::True));
                i += 4;
            }
            _ => {
                return Err((
                    col,
                    format!(
                        "unexpected `{}` in guard",
                        text[i..].chars().next().unwrap_or(' ')
                    ),
                ))
            }
        }
    }
    Ok(out)
}

impl GuardParser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |t| t.0)
    }

    fn or(&mut self) -> Result<Constraint, (usize, String)> {
        let mut left = self.and()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            left = Constraint::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Constraint, (usize, String)> {
        let mut left = self.unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            left = Constraint::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Constraint, (usize, String)> {
        let col = self.col();
        let tok = self.peek().cloned();
        self.pos += 1;
        match tok {
            Some(Tok::Not) => Ok(Constraint::not(self.unary()?)),
            Some(Tok::True) => Ok(Constraint::True),
            Some(Tok::Eq(r)) => {
                self.registers.push((r, col));
                Ok(Constraint::eq(r))
            }
            Some(Tok::Ne(r)) => {
                self.registers.push((r, col));
                Ok(Constraint::ne(r))
            }
            Some(Tok::Open) => {
                let inner = self.or()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err((self.col(), "expected `)`".into()));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(_) => Err((col, "expected a guard term".into())),
            None => Err((col, "guard ended early".into())),
        }
    }
}

/// Parses a standalone guard; register atoms are returned with their columns.
fn parse_guard(
    text: &str,
    col0: usize,
) -> Result<(Constraint, Vec<(usize, usize)>), (usize, String)> {
    let toks = lex_guard(text, col0)?;
    let mut registers = Vec::new();
    let mut p = GuardParser {
        toks,
        pos: 0,
        end_col: col0 + text.len(),
        registers: &mut registers,
    };
    let g = p.or()?;
    if p.pos < p.toks.len() {
        return Err((p.col(), "unexpected trailing input in guard".into()));
    }
    Ok((g, registers))
}

fn parse_register_name(tok: &str) -> Option<usize> {
    tok.strip_prefix('r')?.parse().ok()
}

struct RawTrans {
    line: usize,
    src: (usize, String),
    dst: (usize, String),
    letter: (usize, String),
    guard: Constraint,
    guard_regs: Vec<(usize, usize)>,
    update: Option<Vec<(usize, usize)>>,
}

/// Parses the text format. JSON documents (leading `{`) are accepted too.
pub fn parse_automaton(doc: &SourceDocument) -> Result<RegisterAutomaton, ParseError> {
    if doc.text.trim_start().starts_with('{') {
        return parse_json(doc);
    }
    let mut errs = Errors {
        source: doc.provenance.clone(),
        list: Vec::new(),
    };
    let mut name: Option<String> = None;
    let mut registers: Option<usize> = None;
    let mut alphabet: Vec<String> = Vec::new();
    let mut letter_cols: HashMap<String, ()> = HashMap::new();
    let mut locations: Vec<String> = Vec::new();
    let mut initial: Option<usize> = None;
    let mut accepting = BTreeSet::new();
    let mut trans: Vec<RawTrans> = Vec::new();

    for (n, line) in doc.text.lines().enumerate() {
        let ln = n + 1;
        let toks = tokens(line);
        let Some(&(c0, head)) = toks.first() else {
            continue;
        };
        match head {
            "automaton" => match toks.get(1..) {
                Some([(_, v)]) if name.is_none() => name = Some(v.to_string()),
                Some([_]) => errs.push(ln, c0, "duplicate `automaton` header"),
                _ => errs.push(ln, c0, "expected `automaton <name>`"),
            },
            "registers" => match toks.get(1..) {
                Some([(c, v)]) => match v.parse() {
                    Ok(k) if registers.is_none() => registers = Some(k),
                    Ok(_) => errs.push(ln, c0, "duplicate `registers` header"),
                    Err(_) => errs.push(ln, *c, format!("`{v}` is not a register count")),
                },
                _ => errs.push(ln, c0, "expected `registers <k>`"),
            },
            "alphabet" => {
                for &(c, v) in &toks[1..] {
                    if letter_cols.insert(v.to_string(), ()).is_some() {
                        errs.push(ln, c, format!("duplicate letter `{v}`"));
                    } else {
                        alphabet.push(v.to_string());
                    }
                }
            }
            "location" => {
                let Some(&(c, v)) = toks.get(1) else {
                    errs.push(ln, c0, "expected `location <name>`");
                    continue;
                };
                if locations.iter().any(|l| l == v) {
                    errs.push(ln, c, format!("duplicate location `{v}`"));
                    continue;
                }
                let id = locations.len();
                locations.push(v.to_string());
                for &(c, flag) in &toks[2..] {
                    match flag {
                        "initial" if initial.is_some() => {
                            errs.push(ln, c, "a second initial location")
                        }
                        "initial" => initial = Some(id),
                        "accepting" => {
                            accepting.insert(id);
                        }
                        other => errs.push(ln, c, format!("unknown location flag `{other}`")),
                    }
                }
            }
            "trans" => match parse_trans_line(line, ln, &toks) {
                Ok(t) => trans.push(t),
                Err((c, m)) => errs.push(ln, c, m),
            },
            other => errs.push(ln, c0, format!("unknown directive `{other}`")),
        }
    }

    let k = registers.unwrap_or_else(|| {
        errs.push(1, 1, "missing `registers` header");
        0
    });
    let name = name.unwrap_or_else(|| {
        errs.push(1, 1, "missing `automaton` header");
        String::new()
    });
    if initial.is_none() && !accepting.is_empty() {
        errs.push(1, 1, "accepting locations need an initial location");
    }
    let mut a = RegisterAutomaton::new(name, k);
    a.alphabet = alphabet;
    a.locations = locations;
    for t in trans {
        let mut ok = true;
        let mut resolve =
            |(c, n): &(usize, String), names: &[String], what: &str, errs: &mut Errors| {
                let id = names.iter().position(|x| x == n);
                if id.is_none() {
                    errs.push(t.line, *c, format!("unknown {what} `{n}`"));
                    ok = false;
                }
                id.unwrap_or(0)
            };
        let source = resolve(&t.src, &a.locations, "location", &mut errs);
        let target = resolve(&t.dst, &a.locations, "location", &mut errs);
        let letter = resolve(&t.letter, &a.alphabet, "letter", &mut errs);
        for &(r, c) in &t.guard_regs {
            if r >= k {
                errs.push(
                    t.line,
                    c,
                    format!("register out of range: r{r} with {k} registers"),
                );
                ok = false;
            }
        }
        let update = match &t.update {
            None => RegSet::all(k),
            Some(regs) => {
                let mut set = RegSet::EMPTY;
                for &(r, c) in regs {
                    if r >= k {
                        errs.push(
                            t.line,
                            c,
                            format!("register out of range: r{r} with {k} registers"),
                        );
                        ok = false;
                    } else {
                        set = set.with(r);
                    }
                }
                set
            }
        };
        if ok {
            a.transitions
                .push(Transition::new(source, letter, t.guard, update, target));
        }
    }
    if let Some(i) = initial {
        a.acceptance = Some(Acceptance {
            initial: i,
            accepting,
        });
    }
    errs.finish(a)
}

fn parse_trans_line(
    line: &str,
    ln: usize,
    toks: &[(usize, &str)],
) -> Result<RawTrans, (usize, String)> {
    let _ = ln;
    let get = |i: usize, what: &str| -> Result<(usize, &str), (usize, String)> {
        toks.get(i).copied().ok_or_else(|| {
            let col = toks.last().map_or(1, |t| t.0 + t.1.len());
            (col, format!("expected {what}"))
        })
    };
    let expect = |i: usize, kw: &str| -> Result<(), (usize, String)> {
        let (c, v) = get(i, &format!("`{kw}`"))?;
        if v == kw {
            Ok(())
        } else {
            Err((c, format!("expected `{kw}`, found `{v}`")))
        }
    };
    let src = get(1, "a source location")?;
    expect(2, "->")?;
    let dst = get(3, "a target location")?;
    expect(4, "on")?;
    let letter = get(5, "a letter")?;
    expect(6, "when")?;
    let set_at = toks.iter().position(|t| t.1 == "set");
    let guard_toks = &toks[7..set_at.unwrap_or(toks.len())];
    let (Some(first), Some(last)) = (guard_toks.first(), guard_toks.last()) else {
        return Err((get(6, "")?.0 + 4, "expected a guard".into()));
    };
    let (gs, ge) = (first.0 - 1, last.0 - 1 + last.1.len());
    let (guard, guard_regs) = parse_guard(&line[gs..ge], first.0)?;
    let update = match set_at {
        None => Some(Vec::new()),
        Some(i) => {
            let regs = &toks[i + 1..];
            match regs {
                [] => return Err((toks[i].0, "expected registers or `*` after `set`".into())),
                [(_, "*")] => None,
                _ => Some(
                    regs.iter()
                        .map(|&(c, v)| {
                            parse_register_name(v)
                                .map(|r| (r, c))
                                .ok_or((c, format!("`{v}` is not a register")))
                        })
                        .collect::<Result<Vec<_>, _>>()?,
                ),
            }
        }
    };
    let own = |t: (usize, &str)| (t.0, t.1.to_string());
    Ok(RawTrans {
        line: ln,
        src: own(src),
        dst: own(dst),
        letter: own(letter),
        guard,
        guard_regs,
        update,
    })
}

/// Guard text with minimal parentheses; parsing it gives back the same tree.
pub fn guard_to_string(g: &Constraint) -> String {
    let mut s = String::new();
    write_guard(g, 0, &mut s);
    s
}

/// Precedence: 0 for `|`, 1 for `&`, 2 for prefix and atoms.
fn write_guard(g: &Constraint, min: u8, out: &mut String) {
    let wrap = |prec: u8, out: &mut String, body: &dyn Fn(&mut String)| {
        if prec < min {
            out.push('(');
            body(out);
            out.push(')');
        } else {
            body(out);
        }
    };
    match g {
        Constraint::True => out.push_str("true"),
        Constraint::Eq(r) => out.push_str(&format!("=r{r}")),
        Constraint::Not(inner) => match &**inner {
            Constraint::Eq(r) => out.push_str(&format!("!=r{r}")),
            Constraint::And(a, b) => match (&**a, &**b) {
                (Constraint::Not(x), Constraint::Not(y)) => wrap(0, out, &|o| {
                    write_guard(x, 0, o);
                    o.push_str(" | ");
                    write_guard(y, 1, o);
                }),
                _ => {
                    out.push('!');
                    write_guard(inner, 2, out);
                }
            },
            _ => {
                out.push('!');
                write_guard(inner, 2, out);
            }
        },
        Constraint::And(a, b) => wrap(1, out, &|o| {
            write_guard(a, 1, o);
            o.push_str(" & ");
            write_guard(b, 2, o);
        }),
    }
}

fn update_to_dsl(update: RegSet, k: usize) -> String {
    if update.is_empty() {
        String::new()
    } else if update == RegSet::all(k) {
        " set *".into()
    } else {
        let regs: Vec<String> = update.iter().map(|r| format!("r{r}")).collect();
        format!(" set {}", regs.join(" "))
    }
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonLocation {
    name: String,
    #[serde(default)]
    initial: bool,
    #[serde(default)]
    accepting: bool,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
#[serde(untagged)]
enum JsonSet {
    All(String),
    Some(Vec<String>),
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonTransition {
    from: String,
    to: String,
    on: String,
    when: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    set: Option<JsonSet>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
struct JsonAutomaton {
    automaton: String,
    registers: usize,
    alphabet: Vec<String>,
    locations: Vec<JsonLocation>,
    transitions: Vec<JsonTransition>,
}

fn to_json_value(a: &RegisterAutomaton) -> JsonAutomaton {
    let k = a.registers;
    JsonAutomaton {
        automaton: a.name.clone(),
        registers: k,
        alphabet: a.alphabet.clone(),
        locations: a
            .locations
            .iter()
            .enumerate()
            .map(|(i, n)| JsonLocation {
                name: n.clone(),
                initial: a.acceptance.as_ref().is_some_and(|acc| acc.initial == i),
                accepting: a.is_accepting(i),
            })
            .collect(),
        transitions: a
            .transitions
            .iter()
            .map(|t| JsonTransition {
                from: a.locations[t.source].clone(),
                to: a.locations[t.target].clone(),
                on: a.alphabet[t.letter].clone(),
                when: guard_to_string(&t.guard),
                set: if t.update.is_empty() {
                    None
                } else if t.update == RegSet::all(k) {
                    Some(JsonSet::All("*".into()))
                } else {
                    Some(JsonSet::Some(
                        t.update.iter().map(|r| format!("r{r}")).collect(),
                    ))
                },
            })
            .collect(),
    }
}

/// Rebuilds the text form from JSON and parses that, so both formats share
/// one set of checks.
fn parse_json(doc: &SourceDocument) -> Result<RegisterAutomaton, ParseError> {
    let v: JsonAutomaton = serde_json::from_str(&doc.text).map_err(|e| ParseError {
        source: doc.provenance.clone(),
        diagnostics: vec![Diagnostic {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }],
    })?;
    let mut text = format!(
        "automaton {}\nregisters {}\nalphabet {}\n",
        v.automaton,
        v.registers,
        v.alphabet.join(" ")
    );
    for l in &v.locations {
        text.push_str(&format!(
            "location {}{}{}\n",
            l.name,
            if l.initial { " initial" } else { "" },
            if l.accepting { " accepting" } else { "" }
        ));
    }
    for t in &v.transitions {
        let set = match &t.set {
            None => String::new(),
            Some(JsonSet::All(s)) => format!(" set {s}"),
            Some(JsonSet::Some(regs)) if regs.is_empty() => String::new(),
            Some(JsonSet::Some(regs)) => format!(" set {}", regs.join(" ")),
        };
        text.push_str(&format!(
            "trans {} -> {} on {} when {}{}\n",
            t.from, t.to, t.on, t.when, set
        ));
    }
    parse_automaton(&SourceDocument {
        text,
        provenance: format!("{} (json)", doc.provenance),
    })
}

pub fn serialize_automaton(a: &RegisterAutomaton, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&to_json_value(a)).expect("plain data serializes");
            s.push('\n');
            s
        }
        Format::Dsl => {
            let mut s = format!("automaton {}\nregisters {}\n", a.name, a.registers);
            s.push_str("alphabet");
            for x in &a.alphabet {
                s.push(' ');
                s.push_str(x);
            }
            s.push('\n');
            for (i, n) in a.locations.iter().enumerate() {
                s.push_str("location ");
                s.push_str(n);
                if a.acceptance.as_ref().is_some_and(|acc| acc.initial == i) {
                    s.push_str(" initial");
                }
                if a.is_accepting(i) {
                    s.push_str(" accepting");
                }
                s.push('\n');
            }
            for t in &a.transitions {
                s.push_str(&format!(
                    "trans {} -> {} on {} when {}{}\n",
                    a.locations[t.source],
                    a.locations[t.target],
                    a.alphabet[t.letter],
                    guard_to_string(&t.guard),
                    update_to_dsl(t.update, a.registers)
                ));
            }
            s
        }
    }
}

/// Parses `letter:datum` pairs separated by whitespace or commas.
pub fn parse_word(a: &RegisterAutomaton, text: &str) -> Result<DataWord, ParseError> {
    let mut errs = Errors {
        source: "<word>".into(),
        list: Vec::new(),
    };
    let mut entries = Vec::new();
    let mut col = 1;
    for piece in text.split(|c: char| c.is_whitespace() || c == ',') {
        if !piece.is_empty() {
            match piece.split_once(':') {
                Some((l, d)) => match (a.letter_id(l), d.parse::<Datum>()) {
                    (Some(l), Ok(d)) => entries.push((l, d)),
                    (None, _) => errs.push(1, col, format!("unknown letter `{l}`")),
                    (_, Err(_)) => errs.push(1, col + l.len() + 1, format!("`{d}` is not a datum")),
                },
                None => errs.push(1, col, format!("expected `letter:datum`, found `{piece}`")),
            }
        }
        col += piece.len() + 1;
    }
    errs.finish(DataWord::new(entries))
}
