//! End-to-end acceptance suite: one line per criterion, nonzero exit on any
//! failure. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use regsync::automaton::{apply_update, eval_constraint, Acceptance, Datum, Loc, Transition};
use regsync::dra::{dra1_decide, synchronizing_word_dra, DraOutcome, DEFAULT_NODE_BUDGET};
use regsync::dsl::{serialize_automaton, Format};
use regsync::gadgets::{
    encode_sync_run, gen_chain_dra, gen_counter_nra, gen_three_data_shortcut, gen_tower_nra,
    reduce_nonempty_to_sync_dra, reduce_nonuniv_to_sync, reduce_sync_to_nonuniv, tower,
};
use regsync::generate::{
    dra1_grid, is_orbit_representative, nra1_grid, random_automaton, random_dra1, RandomShape,
};
use regsync::oracle::{
    oracle_find_word, oracle_is_synchronizing, oracle_min_data_efficiency, OracleParams,
};
use regsync::search::{
    bounded_sync_search, bounded_universality_witness, enumerate_sync_witnesses,
    nonemptiness_witness, SearchBudget, SearchOutcome, SearchReport, Strategy,
};
use regsync::semantics::{
    accepts, canonical_instance, post_set, product_set, Abstraction, ChoiceWord, Configuration,
    DataWord, DatumChoice,
};
use regsync::{Constraint, RegisterAutomaton};

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: regsync::Error) -> String {
    e.to_string()
}

fn dra_witness(a: &RegisterAutomaton) -> Result<Option<DataWord>, String> {
    match synchronizing_word_dra(a, DEFAULT_NODE_BUDGET).map_err(err)? {
        DraOutcome::Synchronizing(w) => Ok(Some(w)),
        DraOutcome::NoSyncWord => Ok(None),
    }
}

/// Every well-formed choice word of exactly `len` entries.
fn choice_words(letters: usize, len: usize) -> Vec<ChoiceWord> {
    let mut out = vec![(Vec::new(), 0u32)];
    for _ in 0..len {
        let mut next = Vec::new();
        for (entries, fresh) in &out {
            for a in 0..letters {
                for i in 0..*fresh {
                    let mut e: Vec<(usize, DatumChoice)> = entries.clone();
                    e.push((a, DatumChoice::Seen(i)));
                    next.push((e, *fresh));
                }
                let mut e = entries.clone();
                e.push((a, DatumChoice::Fresh));
                next.push((e, fresh + 1));
            }
        }
        out = next;
    }
    out.into_iter().map(|(e, _)| ChoiceWord::new(e)).collect()
}

fn chain_family() -> Outcome {
    let mut effs = Vec::new();
    for n in 1..=4 {
        let a = gen_chain_dra(n).map_err(err)?;
        let w = dra_witness(&a)?.ok_or_else(|| format!("chain({n}): no witness"))?;
        check(oracle_is_synchronizing(&a, &w).map_err(err)?, || {
            format!("chain({n}): oracle rejects {}", w.display(&a))
        })?;
        if n <= 3 {
            let eff =
                oracle_min_data_efficiency(&a, &OracleParams::new(n + 3, n + 1)).map_err(err)?;
            check(eff == Some(n + 1), || {
                format!("chain({n}): min efficiency {eff:?}, expected {}", n + 1)
            })?;
            effs.push(format!("n={n}:{}", n + 1));
        }
    }
    Ok(format!(
        "witnesses for n=1..4 confirmed; min efficiency {}",
        effs.join(" ")
    ))
}

fn chain_word() -> Outcome {
    let a = gen_chain_dra(3).map_err(err)?;
    let (x1, x2, x3, x4) = (10, 20, 30, 40);
    let w = DataWord::new(vec![(0, x1), (0, x2), (0, x3), (0, x4)]);
    check(oracle_is_synchronizing(&a, &w).map_err(err)?, || {
        "oracle rejects the word".into()
    })?;
    let locs: Vec<Loc> = (0..a.locations.len()).collect();
    let pool = [x1, x2, x3, x4, 100, 101, 102, 103, 104, 105];
    let end = post_set(&a, &product_set(&a, &locs, &pool), &w).map_err(err)?;
    let synch = a.location_id("synch").ok_or("no synch location")?;
    let expected = BTreeSet::from([Configuration::new(synch, vec![x4, x4, x4])]);
    check(end == expected, || format!("final set {end:?}"))?;
    Ok("(a,x1)..(a,x4) ends at exactly (synch,(x4,x4,x4))".into())
}

fn efficiency_bound() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0003);
    let shape = RandomShape::small_deterministic();
    let (mut found, mut drawn) = (0, 0);
    while found < 300 {
        drawn += 1;
        check(drawn < 100_000, || "too few synchronizable samples".into())?;
        let a = random_automaton(&mut rng, &shape);
        let Some(w) = dra_witness(&a)? else { continue };
        found += 1;
        let k = a.registers;
        check(w.efficiency() <= 2 * k + 1, || {
            format!(
                "witness {} uses {} data with k={k}",
                w.display(&a),
                w.efficiency()
            )
        })?;
        check(oracle_is_synchronizing(&a, &w).map_err(err)?, || {
            format!(
                "oracle rejects {}\n{}",
                w.display(&a),
                serialize_automaton(&a, Format::Dsl)
            )
        })?;
    }
    Ok(format!("300 synchronizable DRAs ({drawn} drawn), every witness within 2k+1 data and oracle-confirmed"))
}

#[derive(Default)]
struct Tally {
    checked: usize,
    positive: usize,
}

fn dra1_one(a: &RegisterAutomaton, tally: &mut Tally) -> Result<(), String> {
    let decided = dra1_decide(a).map_err(err)?;
    let w = dra_witness(a)?;
    let dump = || serialize_automaton(a, Format::Dsl);
    check(decided == w.is_some(), || {
        format!("dra1_decide={decided}, procedure={:?}\n{}", w, dump())
    })?;
    match &w {
        Some(w) => check(oracle_is_synchronizing(a, w).map_err(err)?, || {
            format!("oracle rejects {w:?}\n{}", dump())
        })?,
        None => {
            let found = oracle_find_word(a, &OracleParams::new(5, 3), 3, None).map_err(err)?;
            check(found.is_none(), || {
                format!("oracle found {found:?} on a negative\n{}", dump())
            })?
        }
    }
    tally.checked += 1;
    tally.positive += usize::from(decided);
    Ok(())
}

fn dra1_equivalence() -> Outcome {
    let mut parts = Vec::new();
    for (l, s) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        let mut t = Tally::default();
        for a in dra1_grid(l, s).filter(is_orbit_representative) {
            dra1_one(&a, &mut t)?;
        }
        parts.push(format!("({l},{s}):{}/{}", t.positive, t.checked));
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0004);
    let mut t = Tally::default();
    for _ in 0..20_000 {
        dra1_one(&random_dra1(&mut rng, 3, 2), &mut t)?;
    }
    parts.push(format!("(3,2) sampled:{}/{}", t.positive, t.checked));
    Ok(format!(
        "synchronizable/checked per (|L|,|Σ|) {}",
        parts.join(" ")
    ))
}

fn max_multiplicity(w: &DataWord) -> usize {
    let mut counts: BTreeMap<Datum, usize> = BTreeMap::new();
    for &(_, d) in &w.entries {
        *counts.entry(d).or_default() += 1;
    }
    counts.values().copied().max().unwrap_or(0)
}

fn counter_family() -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=2usize {
        let a = gen_counter_nra(n).map_err(err)?;
        let r = bounded_sync_search(&a, &SearchBudget::new(12)).map_err(err)?;
        let w = r
            .outcome
            .witness()
            .ok_or_else(|| format!("counter({n}): {:?}", r.outcome))?;
        let len = w.len();
        let all = enumerate_sync_witnesses(&a, len, 50_000_000).map_err(err)?;
        check(!all.is_empty(), || {
            format!("counter({n}): enumeration at length {len} is empty")
        })?;
        for c in &all {
            let inst = canonical_instance(c);
            check(max_multiplicity(&inst) >= 1 << n, || {
                format!(
                    "counter({n}): witness {} repeats no datum {} times",
                    inst.display(&a),
                    1 << n
                )
            })?;
        }
        parts.push(format!(
            "n={n}: {} minimal witnesses of length {len}",
            all.len()
        ));
    }
    Ok(format!(
        "{}; each repeats a datum at least 2^n times",
        parts.join(", ")
    ))
}

fn tower_family() -> Outcome {
    let t1 = gen_tower_nra(1).map_err(err)?;
    let eff = oracle_min_data_efficiency(&t1, &OracleParams::new(8, 3)).map_err(err)?;
    check(eff == Some(2), || {
        format!("tower(1): min efficiency {eff:?}")
    })?;

    let t2 = gen_tower_nra(2).map_err(err)?;
    let need = tower(2).map_err(err)? as usize;
    let budget = |m| {
        SearchBudget::new(30)
            .with_data(m)
            .with_nodes(50_000_000)
            .with_strategy(Strategy::BreadthFirst)
    };
    let below = bounded_sync_search(&t2, &budget(need - 1)).map_err(err)?;
    check(below.outcome == SearchOutcome::NoneWithinBound, || {
        format!("tower(2) with {} data: {:?}", need - 1, below.outcome)
    })?;
    let caveat = if below.stats.space_exhausted {
        "reachable space exhausted, so no witness at any length".to_string()
    } else {
        format!("none up to length {} only", below.stats.depth)
    };
    let at = bounded_sync_search(&t2, &budget(need)).map_err(err)?;
    let w = at
        .outcome
        .witness()
        .ok_or_else(|| format!("tower(2) with {need} data: {:?}", at.outcome))?;
    check(oracle_is_synchronizing(&t2, w).map_err(err)?, || {
        "oracle rejects the tower(2) witness".into()
    })?;
    Ok(format!(
        "n=1 efficiency 2; n=2: none with {} data ({caveat}), length-{} witness with {need}",
        need - 1,
        w.len()
    ))
}

fn shortcut() -> Outcome {
    let a = gen_three_data_shortcut();
    let r3 = bounded_sync_search(&a, &SearchBudget::new(3)).map_err(err)?;
    let SearchOutcome::Witness { choices, word } = &r3.outcome else {
        return Err(format!("length 3: {:?}", r3.outcome));
    };
    let shape: Vec<DatumChoice> = choices.entries.iter().map(|&(_, c)| c).collect();
    check(
        word.len() == 3 && word.efficiency() == 3 && shape.iter().all(|&c| c == DatumChoice::Fresh),
        || {
            format!(
                "length 3 witness {} is not on three distinct data",
                word.display(&a)
            )
        },
    )?;
    let r2 = bounded_sync_search(&a, &SearchBudget::new(2)).map_err(err)?;
    check(r2.outcome == SearchOutcome::NoneWithinBound, || {
        format!("length 2: {:?}", r2.outcome)
    })?;
    let all = enumerate_sync_witnesses(&a, 3, DEFAULT_NODE_BUDGET).map_err(err)?;
    let shared = all
        .iter()
        .filter(|c| c.entries[1].1 == DatumChoice::Seen(0))
        .count();
    check(shared == 0, || {
        format!("{shared} length-3 witnesses repeat the first datum")
    })?;
    Ok(format!(
        "{} at length 3, none at length 2, none of {} length-3 witnesses repeats the first datum",
        word.display(&a),
        all.len()
    ))
}

#[derive(Default)]
struct Agreement {
    agree: usize,
    undecided: usize,
}

impl Agreement {
    fn show(&self, name: &str) -> String {
        format!("{name} {} agree/{} undecided", self.agree, self.undecided)
    }
}

fn decided(r: &SearchReport) -> Option<bool> {
    match r.outcome {
        SearchOutcome::Witness { .. } => Some(true),
        SearchOutcome::NoneWithinBound => Some(false),
        SearchOutcome::BudgetExhausted { .. } => None,
    }
}

/// Makes transitions leaving the initial location update every register.
/// With `free_guards` they also ignore the initial valuation, so that the
/// language does not depend on it.
fn with_acceptance(
    mut a: RegisterAutomaton,
    initial: Loc,
    accepting: BTreeSet<Loc>,
    free_guards: bool,
) -> RegisterAutomaton {
    let all = a.all_registers();
    for t in a.transitions.iter_mut().filter(|t| t.source == initial) {
        t.update = all;
        if free_guards {
            t.guard = Constraint::True;
        }
    }
    let mut kept: Vec<Transition> = Vec::new();
    for t in a.transitions {
        if !kept.contains(&t) {
            kept.push(t);
        }
    }
    a.transitions = kept;
    a.acceptance = Some(Acceptance { initial, accepting });
    a
}

fn small_nras(rng: &mut StdRng, random: usize) -> Vec<RegisterAutomaton> {
    let mut out: Vec<RegisterAutomaton> = Vec::new();
    for (l, s) in [(1, 1), (1, 2), (2, 1)] {
        out.extend(nra1_grid(l, s, 2).filter(is_orbit_representative));
    }
    let shape = RandomShape {
        max_locations: 3,
        max_registers: 1,
        ..RandomShape::small_complete()
    };
    let mut added = 0;
    while added < random {
        let a = random_automaton(rng, &shape);
        if a.registers == 1 {
            out.push(a);
            added += 1;
        }
    }
    out
}

fn nonuniv_round_trip(inputs: &[RegisterAutomaton], n: usize) -> Result<Agreement, String> {
    let mut tally = Agreement::default();
    let mut seen = HashSet::new();
    for base in inputs {
        let locs = base.locations.len();
        for mask in 0..1u32 << locs {
            let accepting = (0..locs).filter(|l| mask >> l & 1 == 1).collect();
            let a = with_acceptance(base.clone(), 0, accepting, true);
            if !seen.insert(serialize_automaton(&a, Format::Dsl)) {
                continue;
            }
            let lhs = bounded_universality_witness(&a, &SearchBudget::new(n)).map_err(err)?;
            let s = reduce_nonuniv_to_sync(&a).map_err(err)?;
            let rhs = bounded_sync_search(&s, &SearchBudget::new(n + 2)).map_err(err)?;
            match (decided(&lhs), decided(&rhs)) {
                (Some(x), Some(y)) if x == y => tally.agree += 1,
                (Some(x), Some(y)) => {
                    return Err(format!(
                        "nonuniv within {n}: {x}, sync within {}: {y}\n{}",
                        n + 2,
                        serialize_automaton(&a, Format::Dsl)
                    ))
                }
                _ => tally.undecided += 1,
            }
        }
    }
    Ok(tally)
}

fn nonempty_round_trip(rng: &mut StdRng) -> Result<Agreement, String> {
    let mut tally = Agreement::default();
    let mut bases: Vec<RegisterAutomaton> = Vec::new();
    for (l, s) in [(2, 1), (2, 2), (3, 1)] {
        bases.extend(dra1_grid(l, s).filter(is_orbit_representative));
    }
    for _ in 0..500 {
        bases.push(random_dra1(rng, 3, 2));
    }
    let mut seen = HashSet::new();
    for base in bases {
        let fin = base.locations.len() - 1;
        let mut a = base;
        a.transitions.retain(|t| t.source != fin);
        let a = with_acceptance(a, 0, BTreeSet::from([fin]), false);
        if !seen.insert(serialize_automaton(&a, Format::Dsl)) {
            continue;
        }
        let lhs = nonemptiness_witness(&a, &SearchBudget::new(4)).map_err(err)?;
        let lhs = match lhs.outcome {
            SearchOutcome::Witness { .. } => Some(true),
            SearchOutcome::NoneWithinBound if lhs.stats.space_exhausted => Some(false),
            _ => None,
        };
        let s = reduce_nonempty_to_sync_dra(&a).map_err(err)?;
        let rhs = dra_witness(&s)?.is_some();
        match lhs {
            Some(x) if x == rhs => tally.agree += 1,
            Some(x) => {
                return Err(format!(
                    "nonempty: {x}, synchronizing: {rhs}\n{}",
                    serialize_automaton(&a, Format::Dsl)
                ))
            }
            None => tally.undecided += 1,
        }
    }
    Ok(tally)
}

/// A rejected word of the reduced automaton spells out a run with at least
/// one delimiter and one location letter per block, so a rejected word of
/// length `3m + 2` would encode a synchronizing word of length `m`. Without a
/// synchronizing word up to length `n >= 2` there is no rejected word up to
/// length 8.
fn sync_round_trip(inputs: &[RegisterAutomaton], n: usize) -> Result<Agreement, String> {
    let mut tally = Agreement::default();
    for a in inputs {
        let reduced = reduce_sync_to_nonuniv(a).map_err(err)?;
        let dump = || serialize_automaton(a, Format::Dsl);
        let sync = bounded_sync_search(
            a,
            &SearchBudget::new(n).with_strategy(Strategy::BreadthFirst),
        )
        .map_err(err)?;
        match &sync.outcome {
            SearchOutcome::Witness { word, .. } => {
                let encoded = encode_sync_run(a, word, 100, 101).map_err(err)?;
                check(!accepts(&reduced, &encoded).map_err(err)?, || {
                    format!("encoded run of {} is accepted\n{}", word.display(a), dump())
                })?;
                tally.agree += 1;
            }
            SearchOutcome::NoneWithinBound => {
                let u =
                    bounded_universality_witness(&reduced, &SearchBudget::new(8)).map_err(err)?;
                match u.outcome {
                    SearchOutcome::NoneWithinBound => tally.agree += 1,
                    SearchOutcome::Witness { word, .. } => {
                        return Err(format!(
                            "no synchronizing word but {} is rejected\n{}",
                            word.display(&reduced),
                            dump()
                        ))
                    }
                    SearchOutcome::BudgetExhausted { .. } => tally.undecided += 1,
                }
            }
            SearchOutcome::BudgetExhausted { .. } => tally.undecided += 1,
        }
    }
    Ok(tally)
}

fn reductions() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0008);
    let inputs = small_nras(&mut rng, 200);
    let mut parts = Vec::new();
    let timed = |name: &str, t: Instant, a: Agreement| {
        format!("{} [{:.1}s]", a.show(name), t.elapsed().as_secs_f64())
    };
    for n in [2, 4] {
        let t = Instant::now();
        parts.push(timed(
            &format!("nonuniv->sync N={n}:"),
            t,
            nonuniv_round_trip(&inputs, n)?,
        ));
    }
    let t = Instant::now();
    parts.push(timed("nonempty->sync:", t, nonempty_round_trip(&mut rng)?));
    let t = Instant::now();
    parts.push(timed(
        "sync->nonuniv N=12/8:",
        t,
        sync_round_trip(&inputs, 12)?,
    ));
    Ok(format!("{} inputs; {}", inputs.len(), parts.join("; ")))
}

fn differential_one(
    a: &RegisterAutomaton,
    words: &[Vec<ChoiceWord>],
    count: &mut usize,
) -> Result<(), String> {
    let abs = Abstraction::new(a).map_err(err)?;
    for w in words.get(a.alphabet.len()).into_iter().flatten() {
        let lhs = abs.synchronizes(w).map_err(err)?;
        let rhs = oracle_is_synchronizing(a, &canonical_instance(w)).map_err(err)?;
        check(lhs == rhs, || {
            format!(
                "abstract {lhs}, oracle {rhs} on {w:?}\n{}",
                serialize_automaton(a, Format::Dsl)
            )
        })?;
        *count += 1;
    }
    Ok(())
}

fn differential() -> Outcome {
    let words: Vec<Vec<ChoiceWord>> = (0..=2)
        .map(|s| (1..=3).flat_map(|n| choice_words(s, n)).collect())
        .collect();
    let mut count = 0;
    let mut automata = 0;
    for (l, s) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        for a in dra1_grid(l, s).filter(is_orbit_representative) {
            differential_one(&a, &words, &mut count)?;
            automata += 1;
        }
    }
    for (l, s) in [(1, 1), (1, 2), (2, 1)] {
        for a in nra1_grid(l, s, 2).filter(is_orbit_representative) {
            differential_one(&a, &words, &mut count)?;
            automata += 1;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    for i in 0..500 {
        let shape = if i % 2 == 0 {
            RandomShape::small_complete()
        } else {
            RandomShape::small_nondeterministic()
        };
        differential_one(&random_automaton(&mut rng, &shape), &words, &mut count)?;
        automata += 1;
    }
    Ok(format!(
        "{count} (automaton, choice word) pairs over {automata} automata agree"
    ))
}

fn equivariance() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let shape = RandomShape::small_nondeterministic();
    for i in 0..1000 {
        let a = random_automaton(&mut rng, &shape);
        let k = a.registers;
        let mut perm: Vec<Datum> = (0..8).collect();
        perm.shuffle(&mut rng);
        let pi = |d: Datum| perm[d as usize];
        let valuation: Vec<Datum> = (0..k).map(|_| rng.gen_range(0..8)).collect();
        let input = rng.gen_range(0..8);
        let moved: Vec<Datum> = valuation.iter().map(|&d| pi(d)).collect();
        for t in &a.transitions {
            let before = eval_constraint(&t.guard, &valuation, input).map_err(err)?;
            let after = eval_constraint(&t.guard, &moved, pi(input)).map_err(err)?;
            check(before == after, || {
                format!("check {i}: guard {:?} not equivariant", t.guard)
            })?;
            check(
                apply_update(&moved, t.update, pi(input))
                    == apply_update(&valuation, t.update, input)
                        .iter()
                        .map(|&d| pi(d))
                        .collect::<Vec<_>>(),
                || format!("check {i}: update not equivariant"),
            )?;
        }
        let len = rng.gen_range(0..=4);
        let w = DataWord::new(
            (0..len)
                .map(|_| (rng.gen_range(0..a.alphabet.len()), rng.gen_range(0..8)))
                .collect(),
        );
        let pw = DataWord::new(w.entries.iter().map(|&(x, d)| (x, pi(d))).collect());
        let locs: Vec<Loc> = (0..a.locations.len()).collect();
        let pool: Vec<Datum> = (0..4).collect();
        let start = product_set(&a, &locs, &pool);
        let moved_start: BTreeSet<Configuration> = start
            .iter()
            .map(|q| Configuration::new(q.location, q.valuation.iter().map(|&d| pi(d)).collect()))
            .collect();
        let lhs: BTreeSet<Configuration> = post_set(&a, &start, &w)
            .map_err(err)?
            .iter()
            .map(|q| Configuration::new(q.location, q.valuation.iter().map(|&d| pi(d)).collect()))
            .collect();
        let rhs = post_set(&a, &moved_start, &pw).map_err(err)?;
        check(lhs == rhs, || {
            format!("check {i}: post set not equivariant")
        })?;
    }
    Ok("1000 random permutations commute with guards, updates and post sets".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("chain family", chain_family),
        ("four-datum chain word", chain_word),
        ("2k+1 data bound", efficiency_bound),
        ("one-register DRA decision", dra1_equivalence),
        ("counter family", counter_family),
        ("tower family", tower_family),
        ("length-3 shortcut", shortcut),
        ("reduction round trips", reductions),
        ("abstract vs concrete", differential),
        ("equivariance", equivariance),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = (i + 1).to_string();
        if !filter.is_empty() && !filter.iter().any(|f| *f == id || name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = run();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("[PASS] {id:>2} {name}: {detail} ({secs:.1}s)"),
            Err(why) => {
                failed += 1;
                println!("[FAIL] {id:>2} {name}: {why} ({secs:.1}s)");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
