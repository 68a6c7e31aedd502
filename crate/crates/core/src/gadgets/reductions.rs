//! Constructions relating synchronization to universality and emptiness.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::automaton::{
    complete_with_sink, complete_with_sink_except, Acceptance, Constraint, Datum, Letter, Loc,
    RegSet, RegisterAutomaton,
};
use crate::error::{Error, Result};
use crate::semantics::{
    canonicalize, post_set, product_set, Abstraction, Configuration, DataWord, DatumChoice,
};

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    let mut i = 1;
    while taken.contains(&name) {
        name = format!("{base}{i}");
        i += 1;
    }
    name
}

fn require_acceptance(automaton: &RegisterAutomaton) -> Result<&Acceptance> {
    automaton.acceptance.as_ref().ok_or_else(|| {
        Error::Argument("reduction needs an initial location and accepting set".into())
    })
}

/// Letters and locations added by [`reduce_nonuniv_to_sync`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NonUnivParts {
    pub star: Letter,
    pub hash: Letter,
    pub reset: Loc,
    pub synch: Loc,
}

/// An automaton without acceptance that has a synchronizing word iff the
/// input rejects some word: `(star,d) w (hash,d)` synchronizes in `synch`
/// whenever `w` is rejected.
pub fn reduce_nonuniv_to_sync(input: &RegisterAutomaton) -> Result<RegisterAutomaton> {
    Ok(reduce_nonuniv_to_sync_parts(input)?.0)
}

pub fn reduce_nonuniv_to_sync_parts(
    input: &RegisterAutomaton,
) -> Result<(RegisterAutomaton, NonUnivParts)> {
    require_acceptance(input)?;
    input.check()?;
    let mut a = complete_with_sink(input)?;
    let acc = a.acceptance.take().expect("checked above");
    let all = a.all_registers();
    let originals = a.locations.len();
    let hash = a.add_letter(fresh_name(&a.alphabet, "hash"));
    let star = a.add_letter(fresh_name(&a.alphabet, "star"));
    let reset = a.add_location(fresh_name(&a.locations, "reset"));
    let synch = a.add_location(fresh_name(&a.locations, "synch"));
    a.name = format!("{}_nonuniv_sync", input.name);
    for x in 0..a.alphabet.len() {
        a.add(synch, x, Constraint::True, all, synch);
        if x == star {
            a.add(reset, x, Constraint::True, all, acc.initial);
        } else {
            a.add(reset, x, Constraint::True, all, reset);
        }
    }
    for l in 0..originals {
        a.add(l, star, Constraint::True, all, acc.initial);
        let target = if acc.accepting.contains(&l) {
            reset
        } else {
            synch
        };
        a.add(l, hash, Constraint::True, all, target);
    }
    Ok((
        a,
        NonUnivParts {
            star,
            hash,
            reset,
            synch,
        },
    ))
}

/// A deterministic complete automaton without acceptance that has a
/// synchronizing word iff the input accepts some word: `(star,d)(star,d) w
/// (star,d)` synchronizes in the accepting location when `w` is accepted.
///
/// The input must be deterministic with exactly one accepting location, and
/// that location must have no outgoing transitions.
pub fn reduce_nonempty_to_sync_dra(input: &RegisterAutomaton) -> Result<RegisterAutomaton> {
    let acc = require_acceptance(input)?.clone();
    input.check()?;
    if !input.is_deterministic()? {
        return Err(Error::Argument("input must be deterministic".into()));
    }
    let fin = match acc.accepting.iter().collect::<Vec<_>>()[..] {
        [&f] => f,
        _ => {
            return Err(Error::Argument(
                "input must have exactly one accepting location".into(),
            ))
        }
    };
    if input.outgoing(fin).next().is_some() {
        return Err(Error::Argument(
            "the accepting location must have no outgoing transitions".into(),
        ));
    }
    if fin == acc.initial {
        return Err(Error::Argument(
            "the accepting location must differ from the initial one".into(),
        ));
    }
    let mut a = complete_with_sink_except(input, &[fin])?;
    a.acceptance = None;
    a.name = format!("{}_nonempty_sync", input.name);
    let all = a.all_registers();
    let star = a.add_letter(fresh_name(&a.alphabet, "star"));
    let reset = a.add_location(fresh_name(&a.locations, "reset"));
    for x in 0..a.alphabet.len() {
        a.add(fin, x, Constraint::True, all, fin);
        a.add(reset, x, Constraint::True, all, acc.initial);
    }
    for l in 0..a.locations.len() {
        if l == fin || l == reset {
            continue;
        }
        let target = if l == acc.initial { acc.initial } else { reset };
        a.add(l, star, Constraint::True, all, target);
    }
    Ok(a)
}

/// Letter layout of [`reduce_sync_to_nonuniv`] outputs: the input letters
/// first, then one letter per input location, then the delimiter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LangAlphabet {
    pub input_letters: usize,
    pub locations: usize,
}

impl LangAlphabet {
    pub fn of(input: &RegisterAutomaton) -> Self {
        LangAlphabet {
            input_letters: input.alphabet.len(),
            locations: input.locations.len(),
        }
    }

    pub fn location_letter(&self, l: Loc) -> Letter {
        self.input_letters + l
    }

    pub fn star(&self) -> Letter {
        self.input_letters + self.locations
    }

    pub fn size(&self) -> usize {
        self.input_letters + self.locations + 1
    }
}

fn lang_alphabet(input: &RegisterAutomaton, out: &mut RegisterAutomaton) {
    for x in &input.alphabet {
        out.add_letter(x.clone());
    }
    for l in &input.locations {
        let name = fresh_name(&out.alphabet, &format!("at_{l}"));
        out.add_letter(name);
    }
    let star = fresh_name(&out.alphabet, "star");
    out.add_letter(star);
}

fn universal(input: &RegisterAutomaton) -> RegisterAutomaton {
    let mut out = RegisterAutomaton::new(format!("{}_sync_nonuniv", input.name), 1);
    lang_alphabet(input, &mut out);
    let u = out.add_location("all");
    for x in 0..out.alphabet.len() {
        out.add(u, x, Constraint::True, RegSet::single(0), u);
    }
    out.acceptance = Some(Acceptance {
        initial: u,
        accepting: BTreeSet::from([u]),
    });
    out
}

/// Whether some word repeating a single datum `x` maps `L × D` into
/// `L × {x}`. A one-register automaton without such a word has no
/// synchronizing word; with one, synchronizing from `L × {x}` suffices.
pub fn collapses_to_one_datum(input: &RegisterAutomaton) -> Result<bool> {
    let abs = Abstraction::new(input)?;
    let start = canonicalize(&abs.initial());
    if !start.has_sym() {
        return Ok(true);
    }
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(set) = queue.pop_front() {
        let choice = if set.word_data_count == 0 {
            DatumChoice::Fresh
        } else {
            DatumChoice::Seen(0)
        };
        for a in 0..input.alphabet.len() {
            let next = canonicalize(&abs.post(&set, a, choice)?);
            if !next.has_sym() {
                return Ok(true);
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    Ok(false)
}

/// A one-register automaton with acceptance that rejects some word iff the
/// complete one-register input has a synchronizing word. Rejected words
/// encode a synchronizing run block by block (see [`encode_sync_run`]);
/// each union member accepts one way of violating that encoding.
pub fn reduce_sync_to_nonuniv(input: &RegisterAutomaton) -> Result<RegisterAutomaton> {
    if input.registers != 1 {
        return Err(Error::Argument(format!(
            "expected one register, got {}",
            input.registers
        )));
    }
    input.check()?;
    if let Some(c) = input.incomplete_cell()? {
        return Err(Error::Argument(format!(
            "input is not complete at location {} letter {}",
            input.locations[c.location], input.alphabet[c.letter]
        )));
    }
    if !collapses_to_one_datum(input)? {
        return Ok(universal(input));
    }
    let lang = LangAlphabet::of(input);
    let mut out = RegisterAutomaton::new(format!("{}_sync_nonuniv", input.name), 1);
    lang_alphabet(input, &mut out);
    let r = RegSet::single(0);
    let none = RegSet::EMPTY;
    let t = Constraint::True;
    let star = lang.star();
    let sigma: Vec<Letter> = (0..lang.input_letters).collect();
    let locs: Vec<Letter> = (0..lang.locations)
        .map(|l| lang.location_letter(l))
        .collect();
    let every: Vec<Letter> = (0..lang.size()).collect();
    let mut accepting = BTreeSet::new();
    let mut starts: Vec<Loc> = Vec::new();

    let init = out.add_location("init");

    // Initial block: (star,y)(l1,x)..(ln,x) with x != y.
    {
        let i = out.add_location("blk_i");
        let f = out.add_location("blk_f");
        let s: Vec<Loc> = (0..=lang.locations)
            .map(|j| out.add_location(format!("blk_{j}")))
            .collect();
        accepting.insert(f);
        starts.push(i);
        for &x in &every {
            out.add(f, x, t.clone(), none, f);
            out.add(s[lang.locations], x, t.clone(), none, s[lang.locations]);
            if x == star {
                out.add(i, x, t.clone(), r, s[0]);
            } else {
                out.add(i, x, t.clone(), none, f);
            }
        }
        for j in 0..lang.locations {
            let (guard, update) = if j == 0 {
                (Constraint::ne(0), r)
            } else {
                (Constraint::eq(0), none)
            };
            for &x in &every {
                if x == locs[j] {
                    out.add(s[j], x, guard.clone(), update, s[j + 1]);
                    out.add(s[j], x, Constraint::not(guard.clone()), none, f);
                } else {
                    out.add(s[j], x, t.clone(), none, f);
                }
            }
        }
    }

    // Letter shape outside (star L+ Sigma)+ star L star.
    {
        let q: Vec<Loc> = (0..8)
            .map(|j| out.add_location(format!("shape_{j}")))
            .collect();
        let dead = out.add_location("shape_dead");
        starts.push(q[0]);
        for (j, &s) in q.iter().enumerate() {
            if j != 7 {
                accepting.insert(s);
            }
        }
        accepting.insert(dead);
        let step = |from: usize, x: Letter| -> Option<usize> {
            let is_star = x == star;
            let is_loc = x >= lang.input_letters && x < star;
            let is_sigma = x < lang.input_letters;
            match from {
                0 if is_star => Some(1),
                1 if is_loc => Some(2),
                2 if is_loc => Some(2),
                2 if is_sigma => Some(3),
                3 if is_star => Some(4),
                4 if is_loc => Some(5),
                5 if is_loc => Some(6),
                5 if is_sigma => Some(3),
                5 if is_star => Some(7),
                6 if is_loc => Some(6),
                6 if is_sigma => Some(3),
                _ => None,
            }
        };
        for (j, &s) in q.iter().enumerate() {
            for &x in &every {
                let target = step(j, x).map_or(dead, |n| q[n]);
                out.add(s, x, t.clone(), none, target);
            }
        }
        for &x in &every {
            out.add(dead, x, t.clone(), none, dead);
        }
    }

    // Two delimiters with different data.
    {
        let s: Vec<Loc> = (1..=3)
            .map(|j| out.add_location(format!("delim_{j}")))
            .collect();
        starts.push(s[0]);
        accepting.insert(s[2]);
        out.add(s[0], star, t.clone(), r, s[1]);
        for &x in &every {
            out.add(s[2], x, t.clone(), none, s[2]);
            if x == star {
                out.add(s[1], x, Constraint::ne(0), none, s[2]);
                out.add(s[1], x, Constraint::eq(0), none, s[1]);
            } else {
                out.add(s[1], x, t.clone(), none, s[1]);
            }
        }
    }

    // The delimiter datum used by another letter.
    {
        let s: Vec<Loc> = (1..=3)
            .map(|j| out.add_location(format!("reuse_{j}")))
            .collect();
        starts.push(s[0]);
        accepting.insert(s[2]);
        out.add(s[0], star, t.clone(), r, s[1]);
        for &x in &every {
            out.add(s[2], x, t.clone(), none, s[2]);
            if x == star {
                out.add(s[1], x, t.clone(), none, s[1]);
            } else {
                out.add(s[1], x, Constraint::eq(0), none, s[2]);
                out.add(s[1], x, Constraint::ne(0), none, s[1]);
            }
        }
    }

    // One member per transition: some block holds (l, x) and input (a, d)
    // enabling the transition, while the next block misses its successor.
    for (n, tr) in input.transitions.iter().enumerate() {
        if tr.guard.truth_table(1) == 0 {
            continue;
        }
        let s: Vec<Loc> = (1..=7)
            .map(|j| out.add_location(format!("t{n}_{j}")))
            .collect();
        starts.push(s[0]);
        accepting.insert(s[4]);
        accepting.insert(s[5]);
        let from = locs[tr.source];
        let to = locs[tr.target];
        for &x in &every {
            out.add(s[0], x, t.clone(), none, s[0]);
            out.add(s[5], x, t.clone(), none, s[5]);
            out.add(s[6], x, t.clone(), none, s[6]);
        }
        out.add(s[0], star, t.clone(), none, s[1]);
        for &x in &locs {
            out.add(s[1], x, t.clone(), none, s[1]);
            out.add(s[2], x, t.clone(), none, s[2]);
            if x != from {
                out.add(s[3], x, t.clone(), none, s[3]);
            }
        }
        out.add(s[1], from, t.clone(), r, s[2]);
        out.add(s[2], sigma[tr.letter], tr.guard.clone(), tr.update, s[3]);
        out.add(s[3], star, t.clone(), none, s[4]);
        for &x in &every {
            if x == star {
                out.add(s[4], x, t.clone(), none, s[5]);
            } else if x == to {
                out.add(s[4], x, Constraint::eq(0), none, s[6]);
                out.add(s[4], x, Constraint::ne(0), none, s[4]);
            } else {
                out.add(s[4], x, t.clone(), none, s[4]);
            }
        }
    }

    // Union: the initial location guesses a member.
    let copies: Vec<_> = out
        .transitions
        .iter()
        .filter(|tr| starts.contains(&tr.source))
        .map(|tr| (tr.letter, tr.guard.clone(), tr.target))
        .collect();
    for (x, g, target) in copies {
        out.add(init, x, g, r, target);
    }
    if starts.iter().any(|s| accepting.contains(s)) {
        accepting.insert(init);
    }
    out.acceptance = Some(Acceptance {
        initial: init,
        accepting,
    });
    complete_with_sink(&out)
}

/// The encoding of a run of `input` on `word` from `L × {x}` as a word over
/// the alphabet of [`reduce_sync_to_nonuniv`]: each block lists the current
/// configurations after a delimiter `(star, y)`, followed by the next input;
/// the last block lists the final configurations and closes with a delimiter.
pub fn encode_sync_run(
    input: &RegisterAutomaton,
    word: &DataWord,
    x: Datum,
    y: Datum,
) -> Result<DataWord> {
    if input.registers != 1 {
        return Err(Error::Argument("expected one register".into()));
    }
    let lang = LangAlphabet::of(input);
    let locs: Vec<Loc> = (0..input.locations.len()).collect();
    let mut set: BTreeSet<Configuration> = product_set(input, &locs, &[x]);
    let mut out = Vec::new();
    let block = |set: &BTreeSet<Configuration>, out: &mut Vec<(Letter, Datum)>| {
        out.push((lang.star(), y));
        for q in set {
            out.push((lang.location_letter(q.location), q.valuation[0]));
        }
    };
    for &(a, d) in &word.entries {
        block(&set, &mut out);
        out.push((a, d));
        set = post_set(input, &set, &DataWord::new(vec![(a, d)]))?;
    }
    block(&set, &mut out);
    out.push((lang.star(), y));
    Ok(DataWord::new(out))
}
