//! Random and exhaustive families of small automata, used for differential
//! testing against the oracle.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::automaton::{Acceptance, Constraint, Loc, RegSet, RegisterAutomaton, Transition};

#[derive(Clone, Debug)]
pub struct RandomShape {
    pub max_locations: usize,
    pub max_registers: usize,
    pub max_letters: usize,
    pub deterministic: bool,
    pub complete: bool,
    pub with_acceptance: bool,
}

impl RandomShape {
    pub fn small_complete() -> Self {
        RandomShape {
            max_locations: 3,
            max_registers: 2,
            max_letters: 2,
            deterministic: false,
            complete: true,
            with_acceptance: false,
        }
    }

    pub fn small_nondeterministic() -> Self {
        RandomShape {
            complete: false,
            ..Self::small_complete()
        }
    }

    pub fn small_deterministic() -> Self {
        RandomShape {
            max_locations: 4,
            deterministic: true,
            ..Self::small_complete()
        }
    }
}

/// A readable guard satisfied by exactly the atom assignments in `cases`
/// (bit `s` set for assignment `s`).
pub fn guard_for(cases: u64, k: usize) -> Constraint {
    let all = if k == 6 {
        u64::MAX
    } else {
        (1u64 << (1 << k)) - 1
    };
    let cases = cases & all;
    if cases == all {
        return Constraint::True;
    }
    for r in 0..k {
        for g in [Constraint::eq(r), Constraint::ne(r)] {
            if g.truth_table(k) == cases {
                return g;
            }
        }
    }
    for r in 0..k {
        for s in r + 1..k {
            for g in [
                Constraint::and(Constraint::ne(r), Constraint::ne(s)),
                Constraint::or(Constraint::eq(r), Constraint::eq(s)),
                Constraint::and(Constraint::eq(r), Constraint::eq(s)),
            ] {
                if g.truth_table(k) == cases {
                    return g;
                }
            }
        }
    }
    Constraint::any(
        (0..1u32 << k)
            .filter(|&s| cases >> s & 1 == 1)
            .map(|s| Constraint::minterm(RegSet(s), k)),
    )
}

fn random_update(rng: &mut impl Rng, k: usize) -> RegSet {
    RegSet(rng.gen_range(0..1u32 << k))
}

fn random_guard(rng: &mut impl Rng, k: usize) -> Constraint {
    if k == 0 {
        return Constraint::True;
    }
    let r = rng.gen_range(0..k);
    let s = rng.gen_range(0..k);
    match rng.gen_range(0..6) {
        0 => Constraint::True,
        1 => Constraint::eq(r),
        2 => Constraint::ne(r),
        3 => Constraint::and(Constraint::ne(r), Constraint::ne(s)),
        4 => Constraint::or(Constraint::eq(r), Constraint::eq(s)),
        _ => Constraint::and(Constraint::eq(r), Constraint::ne(s)),
    }
}

fn skeleton(name: &str, locations: usize, k: usize, letters: usize) -> RegisterAutomaton {
    let mut a = RegisterAutomaton::new(name, k);
    for i in 0..locations {
        a.add_location(format!("q{i}"));
    }
    for i in 0..letters {
        a.add_letter(((b'a' + i as u8) as char).to_string());
    }
    a
}

pub fn random_automaton(rng: &mut impl Rng, shape: &RandomShape) -> RegisterAutomaton {
    let n = rng.gen_range(1..=shape.max_locations);
    let k = rng.gen_range(0..=shape.max_registers);
    let letters = rng.gen_range(1..=shape.max_letters);
    let mut a = skeleton("random", n, k, letters);
    let sigmas = 1usize << k;
    let all = if k == 6 {
        u64::MAX
    } else {
        (1u64 << sigmas) - 1
    };
    for l in 0..n {
        for x in 0..letters {
            if shape.deterministic {
                let blocks = rng.gen_range(1..=sigmas.min(3));
                let mut parts = vec![0u64; blocks];
                for s in 0..sigmas {
                    parts[rng.gen_range(0..blocks)] |= 1 << s;
                }
                for p in parts {
                    if p != 0 && (shape.complete || rng.gen_bool(0.85)) {
                        a.add(
                            l,
                            x,
                            guard_for(p, k),
                            random_update(rng, k),
                            rng.gen_range(0..n),
                        );
                    }
                }
            } else {
                let count = rng.gen_range(if shape.complete { 1 } else { 0 }..=2);
                let mut covered = 0;
                for _ in 0..count {
                    let g = random_guard(rng, k);
                    covered |= g.truth_table(k);
                    a.add(l, x, g, random_update(rng, k), rng.gen_range(0..n));
                }
                if shape.complete && covered != all {
                    a.add(
                        l,
                        x,
                        guard_for(all & !covered, k),
                        random_update(rng, k),
                        rng.gen_range(0..n),
                    );
                }
            }
        }
    }
    if shape.with_acceptance {
        add_random_acceptance(rng, &mut a);
    }
    a
}

/// Makes location 0 initial (forcing full updates on its transitions) and
/// picks a random accepting set.
pub fn add_random_acceptance(rng: &mut impl Rng, a: &mut RegisterAutomaton) {
    let all = a.all_registers();
    for t in a.transitions.iter_mut().filter(|t| t.source == 0) {
        t.update = all;
    }
    let accepting = (0..a.locations.len())
        .filter(|_| rng.gen_bool(0.4))
        .collect();
    a.acceptance = Some(Acceptance {
        initial: 0,
        accepting,
    });
}

/// Mixed-radix enumeration of per-cell choices.
struct Odometer {
    radix: Vec<usize>,
    digits: Vec<usize>,
    done: bool,
}

impl Odometer {
    fn new(radix: Vec<usize>) -> Self {
        let done = radix.contains(&0);
        Odometer {
            digits: vec![0; radix.len()],
            radix,
            done,
        }
    }

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.digits.clone();
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.radix[i] {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

/// Cell contents for one `(location, letter)` of a one-register automaton.
type CellOption = Vec<(Constraint, RegSet, Loc)>;

fn dra1_cell_options(locations: usize) -> Vec<CellOption> {
    let updates = [RegSet::EMPTY, RegSet::single(0)];
    let moves: Vec<(RegSet, Loc)> = updates
        .iter()
        .flat_map(|&u| (0..locations).map(move |l| (u, l)))
        .collect();
    let mut out = Vec::new();
    for &(u, l) in &moves {
        out.push(vec![(Constraint::True, u, l)]);
    }
    for &(u1, l1) in &moves {
        for &(u2, l2) in &moves {
            out.push(vec![
                (Constraint::eq(0), u1, l1),
                (Constraint::ne(0), u2, l2),
            ]);
        }
    }
    out
}

fn nra1_cell_options(locations: usize, max_per_cell: usize) -> Vec<CellOption> {
    let guards = [Constraint::True, Constraint::eq(0), Constraint::ne(0)];
    let mut candidates = Vec::new();
    for g in &guards {
        for u in [RegSet::EMPTY, RegSet::single(0)] {
            for l in 0..locations {
                candidates.push((g.clone(), u, l));
            }
        }
    }
    let mut out = Vec::new();
    let n = candidates.len();
    for mask in 1u32..1 << n {
        if mask.count_ones() as usize > max_per_cell {
            continue;
        }
        let chosen: CellOption = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| candidates[i].clone())
            .collect();
        let covered = chosen
            .iter()
            .fold(0, |acc, (g, _, _)| acc | g.truth_table(1));
        if covered == 0b11 {
            out.push(chosen);
        }
    }
    out
}

fn grid(
    locations: usize,
    letters: usize,
    options: Vec<CellOption>,
) -> impl Iterator<Item = RegisterAutomaton> {
    let cells = locations * letters;
    let mut odo = Odometer::new(vec![options.len(); cells]);
    std::iter::from_fn(move || {
        let digits = odo.next()?;
        let mut a = skeleton("grid", locations, 1, letters);
        for (cell, &d) in digits.iter().enumerate() {
            let (l, x) = (cell / letters, cell % letters);
            for (g, u, t) in &options[d] {
                a.transitions.push(Transition::new(l, x, g.clone(), *u, *t));
            }
        }
        Some(a)
    })
}

/// Every complete deterministic one-register automaton with the given
/// numbers of locations and letters, guards from {true, =r0, !=r0} and
/// updates from {∅, {r0}}.
pub fn dra1_grid(locations: usize, letters: usize) -> impl Iterator<Item = RegisterAutomaton> {
    grid(locations, letters, dra1_cell_options(locations))
}

/// Number of automata produced by [`dra1_grid`].
pub fn dra1_grid_size(locations: usize, letters: usize) -> u64 {
    (dra1_cell_options(locations).len() as u64).pow((locations * letters) as u32)
}

/// Every complete one-register automaton whose cells hold between one and
/// `max_per_cell` transitions (guards {true, =r0, !=r0}, updates {∅, {r0}}).
pub fn nra1_grid(
    locations: usize,
    letters: usize,
    max_per_cell: usize,
) -> impl Iterator<Item = RegisterAutomaton> {
    grid(
        locations,
        letters,
        nra1_cell_options(locations, max_per_cell),
    )
}

pub fn nra1_grid_size(locations: usize, letters: usize, max_per_cell: usize) -> u64 {
    (nra1_cell_options(locations, max_per_cell).len() as u64).pow((locations * letters) as u32)
}

/// A uniformly random member of [`dra1_grid`].
pub fn random_dra1(rng: &mut impl Rng, locations: usize, letters: usize) -> RegisterAutomaton {
    let options = dra1_cell_options(locations);
    let mut a = skeleton("grid", locations, 1, letters);
    for l in 0..locations {
        for x in 0..letters {
            for (g, u, t) in options.choose(rng).expect("nonempty options") {
                a.transitions.push(Transition::new(l, x, g.clone(), *u, *t));
            }
        }
    }
    a
}

/// Whether `a` is the least of its orbit under renaming locations and
/// letters (compared through a canonical transition listing), so that
/// grids can skip isomorphic copies.
pub fn is_orbit_representative(a: &RegisterAutomaton) -> bool {
    let key = |lp: &[usize], ap: &[usize]| {
        let mut ts: Vec<(usize, usize, u64, u32, usize)> = a
            .transitions
            .iter()
            .map(|t| {
                (
                    lp[t.source],
                    ap[t.letter],
                    t.guard.truth_table(a.registers),
                    t.update.0,
                    lp[t.target],
                )
            })
            .collect();
        ts.sort_unstable();
        ts
    };
    let ident_l: Vec<usize> = (0..a.locations.len()).collect();
    let ident_a: Vec<usize> = (0..a.alphabet.len()).collect();
    let base = key(&ident_l, &ident_a);
    let lperms = permutations(a.locations.len());
    let aperms = permutations(a.alphabet.len());
    lperms
        .iter()
        .all(|lp| aperms.iter().all(|ap| key(lp, ap) >= base))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}
