//! Parametric automata whose synchronizing words are provably expensive.

use crate::automaton::{Constraint, Letter, Loc, RegSet, RegisterAutomaton};
use crate::error::{Error, Result};

fn require_positive(n: usize, family: &str) -> Result<()> {
    if n == 0 {
        Err(Error::Argument(format!("{family} needs n >= 1")))
    } else {
        Ok(())
    }
}

/// Single-letter DRA with `n` registers whose synchronizing words need
/// `n + 1` distinct data.
///
/// From `init` the first input splits on `=r0`/`!=r0` into two copies of a
/// chain `l1 .. ln`. In `li` the input is ignored while it equals one of the
/// registers filled so far and otherwise stored in the next register; `ln`
/// moves to `synch` on an input differing from every register.
pub fn gen_chain_dra(n: usize) -> Result<RegisterAutomaton> {
    require_positive(n, "chain")?;
    let mut a = RegisterAutomaton::new(format!("chain{n}"), n);
    let letter = a.add_letter("a");
    let init = a.add_location("init");
    let plain: Vec<Loc> = (1..=n).map(|i| a.add_location(format!("l{i}"))).collect();
    let primed: Vec<Loc> = (1..=n).map(|i| a.add_location(format!("l{i}'"))).collect();
    let synch = a.add_location("synch");
    let all = RegSet::all(n);

    a.add(init, letter, Constraint::eq(0), RegSet::single(0), plain[0]);
    a.add(
        init,
        letter,
        Constraint::ne(0),
        RegSet::single(0),
        primed[0],
    );
    for chain in [&plain, &primed] {
        for i in 0..n {
            let filled = 0..=i;
            let hit = Constraint::any(filled.clone().map(Constraint::eq));
            let miss = Constraint::all(filled.map(Constraint::ne));
            if i + 1 < n {
                a.add(chain[i], letter, hit, RegSet::EMPTY, chain[i]);
                a.add(chain[i], letter, miss, RegSet::single(i + 1), chain[i + 1]);
            } else {
                a.add(chain[i], letter, miss, all, synch);
                a.add(chain[i], letter, hit, RegSet::EMPTY, chain[i]);
            }
        }
    }
    a.add(synch, letter, Constraint::True, all, synch);
    Ok(a)
}

/// One-register NRA encoding an `n+1`-bit binary counter: synchronizing
/// requires counting to `2^n` with a single datum.
///
/// Locations `on{i}`/`off{i}` hold a token per bit; `bit{i}` with the
/// counter datum increments, `hash` exits to `synch` only from the pattern
/// `on{n}, off{n-1} .. off0`, and `star` restarts from `zero`.
pub fn gen_counter_nra(n: usize) -> Result<RegisterAutomaton> {
    require_positive(n, "counter")?;
    let mut a = RegisterAutomaton::new(format!("counter{n}"), 1);
    let hash = a.add_letter("hash");
    let star = a.add_letter("star");
    let bits: Vec<Letter> = (0..=n).map(|i| a.add_letter(format!("bit{i}"))).collect();
    let synch = a.add_location("synch");
    let reset = a.add_location("reset");
    let zero = a.add_location("zero");
    let mut on = vec![0; n + 1];
    let mut off = vec![0; n + 1];
    for i in (0..=n).rev() {
        on[i] = a.add_location(format!("on{i}"));
    }
    for i in (0..=n).rev() {
        off[i] = a.add_location(format!("off{i}"));
    }
    let r = RegSet::single(0);
    let eq = Constraint::eq(0);
    let ne = Constraint::ne(0);
    let letters: Vec<Letter> = (0..a.alphabet.len()).collect();

    for &x in &letters {
        a.add(synch, x, Constraint::True, r, synch);
    }
    for l in (0..a.locations.len()).filter(|&l| l != synch) {
        a.add(l, star, Constraint::True, r, zero);
    }
    for &x in letters.iter().filter(|&&x| x != star) {
        a.add(reset, x, Constraint::True, RegSet::EMPTY, reset);
    }
    let counting: Vec<Loc> = std::iter::once(zero)
        .chain(on.iter().copied())
        .chain(off.iter().copied())
        .collect();
    for &l in &counting {
        for &x in letters.iter().filter(|&&x| x != star) {
            a.add(l, x, ne.clone(), RegSet::EMPTY, l);
        }
    }

    a.add(zero, bits[0], eq.clone(), RegSet::EMPTY, on[0]);
    for &o in &off[1..] {
        a.add(zero, bits[0], eq.clone(), RegSet::EMPTY, o);
    }
    for &b in &bits[1..] {
        a.add(zero, b, eq.clone(), RegSet::EMPTY, reset);
    }
    a.add(zero, hash, eq.clone(), RegSet::EMPTY, reset);

    for i in 0..=n {
        for (j, &b) in bits.iter().enumerate() {
            let (on_target, off_target) = match j.cmp(&i) {
                std::cmp::Ordering::Less => (on[i], off[i]),
                std::cmp::Ordering::Equal => (reset, on[i]),
                std::cmp::Ordering::Greater => (off[i], reset),
            };
            a.add(on[i], b, eq.clone(), RegSet::EMPTY, on_target);
            a.add(off[i], b, eq.clone(), RegSet::EMPTY, off_target);
        }
        if i == n {
            a.add(on[i], hash, eq.clone(), r, synch);
            a.add(off[i], hash, eq.clone(), RegSet::EMPTY, reset);
        } else {
            a.add(on[i], hash, eq.clone(), RegSet::EMPTY, reset);
            a.add(off[i], hash, eq.clone(), r, synch);
        }
    }
    Ok(a)
}

/// One-register NRA whose synchronizing words need at least `tower(n)`
/// distinct data: tokens are replicated on fresh data by `rep`, and the
/// `tow`/`exp`/`doub` phases force repeated doubling.
pub fn gen_tower_nra(n: usize) -> Result<RegisterAutomaton> {
    require_positive(n, "tower")?;
    let mut a = RegisterAutomaton::new(format!("tower{n}"), 1);
    let hash = a.add_letter("hash");
    let star = a.add_letter("star");
    let rep_l = a.add_letter("rep");
    let doub = a.add_letter("doub");
    let exp = a.add_letter("exp");
    let tow = a.add_letter("tow");
    let mut data: Vec<Loc> = (1..n).map(|i| a.add_location(format!("data{i}"))).collect();
    let wait_tow = a.add_location("waitTow");
    data.push(wait_tow);
    let reset = a.add_location("reset");
    let synch = a.add_location("synch");
    let store = a.add_location("store");
    let rep = a.add_location("rep");
    let wait_doub = a.add_location("waitDoub");
    let wait_exp = a.add_location("waitExp");

    let r = RegSet::single(0);
    let none = RegSet::EMPTY;
    let eq = Constraint::eq(0);
    let ne = Constraint::ne(0);
    let t = Constraint::True;
    let letters: Vec<Letter> = (0..a.alphabet.len()).collect();

    for &x in &letters {
        a.add(synch, x, t.clone(), r, synch);
    }
    for l in (0..a.locations.len()).filter(|&l| l != synch) {
        a.add(l, star, t.clone(), r, data[0]);
    }
    for &x in letters.iter().filter(|&&x| x != star) {
        a.add(reset, x, t.clone(), none, reset);
    }
    for w in data.windows(2) {
        let (from, to) = (w[0], w[1]);
        a.add(from, rep_l, ne.clone(), none, to);
        a.add(from, rep_l, ne.clone(), r, to);
        a.add(from, rep_l, eq.clone(), none, reset);
        for x in [hash, doub, exp, tow] {
            a.add(from, x, t.clone(), none, reset);
        }
    }

    a.add(wait_tow, tow, eq.clone(), none, wait_exp);
    a.add(wait_tow, tow, ne.clone(), none, wait_tow);
    for x in [doub, exp, rep_l] {
        a.add(wait_tow, x, t.clone(), none, wait_tow);
    }
    a.add(wait_tow, hash, t.clone(), none, reset);

    a.add(wait_exp, exp, eq.clone(), none, wait_doub);
    a.add(wait_exp, exp, ne.clone(), none, wait_exp);
    for x in [doub, rep_l] {
        a.add(wait_exp, x, t.clone(), none, wait_exp);
    }
    for x in [tow, hash] {
        a.add(wait_exp, x, t.clone(), none, reset);
    }

    a.add(wait_doub, doub, eq.clone(), none, rep);
    a.add(wait_doub, doub, ne.clone(), none, wait_doub);
    a.add(wait_doub, rep_l, ne.clone(), none, wait_doub);
    a.add(wait_doub, rep_l, eq.clone(), none, reset);
    for x in [exp, tow, hash] {
        a.add(wait_doub, x, t.clone(), none, reset);
    }

    a.add(rep, rep_l, ne.clone(), none, store);
    a.add(rep, rep_l, ne.clone(), r, store);
    a.add(rep, rep_l, eq.clone(), none, reset);
    for x in [doub, exp, tow, hash] {
        a.add(rep, x, t.clone(), none, reset);
    }

    a.add(store, tow, t.clone(), none, wait_exp);
    a.add(store, exp, t.clone(), none, wait_doub);
    a.add(store, doub, ne.clone(), none, store);
    a.add(store, doub, eq.clone(), none, reset);
    a.add(store, rep_l, ne.clone(), none, store);
    a.add(store, rep_l, eq, none, reset);
    a.add(store, hash, t, r, synch);
    Ok(a)
}

/// `A_1(n) = 2n`, `A_{k+1}(n) = A_k^n(1)`; errors once a value exceeds `cap`.
pub fn ackermann_capped(level: u32, n: u64, cap: u64) -> Result<u64> {
    if level == 0 {
        return Err(Error::Argument("ackermann levels start at 1".into()));
    }
    let overflow = || Error::Resource(format!("ackermann({level}, {n}) exceeds {cap}"));
    if level == 1 {
        return n.checked_mul(2).filter(|&v| v <= cap).ok_or_else(overflow);
    }
    let mut v = 1u64;
    for _ in 0..n {
        v = ackermann_capped(level - 1, v, cap).map_err(|_| overflow())?;
    }
    Ok(v)
}

pub fn ackermann(level: u32, n: u64) -> Result<u64> {
    ackermann_capped(level, n, 1 << 62)
}

pub fn tower(n: u64) -> Result<u64> {
    ackermann(3, n)
}

/// A nondeterministic one-register automaton over `a`, `b` with a length-3
/// synchronizing word on three distinct data, while every synchronizing
/// word repeating its first datum is longer.
pub fn gen_three_data_shortcut() -> RegisterAutomaton {
    let mut m = RegisterAutomaton::new("shortcut", 1);
    let a = m.add_letter("a");
    let b = m.add_letter("b");
    let q: Vec<Loc> = (1..=6).map(|i| m.add_location(format!("q{i}"))).collect();
    let synch = m.add_location("synch");
    let (q1, q2, q3, q4, q5, q6) = (q[0], q[1], q[2], q[3], q[4], q[5]);
    let r = RegSet::single(0);
    let none = RegSet::EMPTY;
    let eq = Constraint::eq(0);
    let ne = Constraint::ne(0);
    let t = Constraint::True;

    m.add(q1, a, t.clone(), r, q3);
    m.add(q1, b, t.clone(), none, q2);
    m.add(q2, a, eq.clone(), none, q2);
    m.add(q2, a, t.clone(), r, synch);
    m.add(q2, b, t.clone(), r, synch);
    m.add(q2, b, eq.clone(), none, q5);
    m.add(q3, a, t.clone(), r, q3);
    m.add(q3, b, eq.clone(), none, q1);
    m.add(q3, b, ne.clone(), none, q4);
    m.add(q4, a, t.clone(), r, q3);
    m.add(q4, b, eq.clone(), none, q4);
    m.add(q4, b, ne.clone(), r, synch);
    m.add(q5, a, t.clone(), none, q5);
    m.add(q5, b, t.clone(), r, q6);
    m.add(q6, a, t.clone(), none, q5);
    m.add(q6, b, eq, none, q6);
    m.add(q6, b, ne, r, synch);
    m.add(synch, a, t.clone(), r, q1);
    m.add(synch, b, t, r, synch);
    m
}
