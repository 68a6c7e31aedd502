//! Synchronizing words for deterministic register automata: a shrink phase
//! that collapses `L × D^k` to a finite set over at most `k` data, then
//! pairwise merging over the fixed data set `0..=2k`.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use crate::automaton::{Datum, Letter, Loc, RegSet, RegisterAutomaton, StepTable};
use crate::error::{Error, Result};
use crate::semantics::{
    canonical_instance, register_partitions, AbstractConfig, AbstractConfigSet, AbstractValue,
    Abstraction, ChoiceWord, Configuration, DataWord, DatumChoice,
};

/// Default number of explored search nodes before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShrinkResult {
    pub word: DataWord,
    /// `post(L × D^k, word)`, a finite set over the data of `word`.
    pub residual: BTreeSet<Configuration>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShrinkOutcome {
    Shrunk(ShrinkResult),
    /// Configurations at this location keep data that never get overwritten.
    NotShrinkable(Loc),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DraOutcome {
    Synchronizing(DataWord),
    NoSyncWord,
}

fn require_dra(automaton: &RegisterAutomaton) -> Result<()> {
    automaton.check()?;
    if let Some(c) = automaton.incomplete_cell()? {
        return Err(Error::Argument(format!(
            "automaton is not complete at location {} letter {}",
            automaton.locations[c.location], automaton.alphabet[c.letter]
        )));
    }
    if let Some(c) = automaton.nondeterministic_cell()? {
        return Err(Error::Argument(format!(
            "automaton is not deterministic at location {} letter {}",
            automaton.locations[c.location], automaton.alphabet[c.letter]
        )));
    }
    Ok(())
}

/// Renames Word and Sym values of a single config by first occurrence.
fn normalize(config: &AbstractConfig) -> AbstractConfig {
    let mut words: Vec<u32> = Vec::new();
    let mut syms: Vec<u32> = Vec::new();
    let values = config
        .values
        .iter()
        .map(|v| match *v {
            AbstractValue::Word(i) => AbstractValue::Word(index_of(&mut words, i)),
            AbstractValue::Sym(b) => AbstractValue::Sym(index_of(&mut syms, b)),
        })
        .collect();
    AbstractConfig {
        location: config.location,
        values,
    }
}

fn index_of(seen: &mut Vec<u32>, x: u32) -> u32 {
    match seen.iter().position(|&y| y == x) {
        Some(i) => i as u32,
        None => {
            seen.push(x);
            seen.len() as u32 - 1
        }
    }
}

/// For every location: can each initial register pattern be driven to a
/// configuration without initial data, using inputs that never equal a
/// register still holding initial data? This is necessary for synchronization,
/// since configurations whose initial data never occur in the word see exactly
/// such inputs. For one register it is reachability of a full update through
/// transitions enabled when the input differs from the register.
pub fn inequality_update_check(automaton: &RegisterAutomaton) -> Result<Vec<bool>> {
    let abs = Abstraction::new(automaton)?;
    let k = automaton.registers;
    let letters = automaton.alphabet.len();
    let partitions = register_partitions(k);
    let mut out = Vec::with_capacity(automaton.locations.len());
    for l in 0..automaton.locations.len() {
        let ok = partitions.iter().all(|p| {
            let start = AbstractConfig {
                location: l,
                values: p.iter().map(|&b| AbstractValue::Sym(b)).collect(),
            };
            let mut seen = HashSet::from([start.clone()]);
            let mut queue = VecDeque::from([start]);
            let mut next = Vec::new();
            while let Some(c) = queue.pop_front() {
                if !c.has_sym() {
                    return true;
                }
                let words = c
                    .values
                    .iter()
                    .filter_map(|v| match v {
                        AbstractValue::Word(i) => Some(*i),
                        AbstractValue::Sym(_) => None,
                    })
                    .max()
                    .map_or(0, |m| m + 1);
                for a in 0..letters {
                    next.clear();
                    for i in 0..words {
                        abs.successors_into(&c, a, DatumChoice::Seen(i), words, &mut next);
                    }
                    abs.successors_avoiding_syms(&c, a, words, &mut next);
                    for n in next.drain(..) {
                        let n = normalize(&n);
                        if seen.insert(n.clone()) {
                            queue.push_back(n);
                        }
                    }
                }
            }
            false
        });
        out.push(ok);
    }
    Ok(out)
}

/// Choices available after `m` word data when at most `max_data` may be used.
pub(crate) fn choices(m: u32, max_data: Option<u32>) -> impl Iterator<Item = DatumChoice> {
    let fresh = max_data.is_none_or(|cap| m < cap);
    (0..m)
        .map(DatumChoice::Seen)
        .chain(fresh.then_some(DatumChoice::Fresh))
}

/// Breadth-first search for a word removing every Sym value from the
/// descendants of `start`, using at most `k` word data in total.
fn eliminate_syms(
    abs: &Abstraction,
    start: AbstractConfigSet,
    letters: usize,
    k: u32,
    explored: &mut u64,
    budget: u64,
) -> Result<Option<ChoiceWord>> {
    let mut nodes: Vec<(AbstractConfigSet, usize, (Letter, DatumChoice))> = Vec::new();
    let mut seen: HashSet<AbstractConfigSet> = HashSet::new();
    seen.insert(start.clone());
    nodes.push((start, usize::MAX, (0, DatumChoice::Fresh)));
    let mut head = 0;
    while head < nodes.len() {
        *explored += 1;
        if *explored > budget {
            return Err(Error::Inconclusive {
                explored: *explored,
            });
        }
        let set = nodes[head].0.clone();
        for a in 0..letters {
            for ch in choices(set.word_data_count, Some(k)) {
                let next = abs.post_unchecked(&set, a, ch);
                if !next.has_sym() {
                    let mut path = vec![(a, ch)];
                    let mut i = head;
                    while nodes[i].1 != usize::MAX {
                        path.push(nodes[i].2);
                        i = nodes[i].1;
                    }
                    path.reverse();
                    return Ok(Some(ChoiceWord::new(path)));
                }
                if seen.insert(next.clone()) {
                    nodes.push((next, head, (a, ch)));
                }
            }
        }
        head += 1;
    }
    Ok(None)
}

/// A word over the data `0..k` after which no configuration keeps an
/// initial datum.
pub fn shrink_word(automaton: &RegisterAutomaton, budget: u64) -> Result<ShrinkOutcome> {
    require_dra(automaton)?;
    if let Some(l) = inequality_update_check(automaton)?
        .iter()
        .position(|ok| !ok)
    {
        return Ok(ShrinkOutcome::NotShrinkable(l));
    }
    let abs = Abstraction::new(automaton)?;
    let k = automaton.registers as u32;
    let letters = automaton.alphabet.len();
    let mut set = abs.initial();
    let mut word = ChoiceWord::default();
    let mut explored = 0;
    while let Some(target) = set.configs.iter().find(|c| c.has_sym()).cloned() {
        let start = AbstractConfigSet {
            configs: vec![target.clone()],
            word_data_count: set.word_data_count,
        };
        match eliminate_syms(&abs, start, letters, k, &mut explored, budget)? {
            Some(piece) => {
                set = abs.run(&set, &piece)?;
                word.entries.extend(piece.entries);
            }
            None => return Ok(ShrinkOutcome::NotShrinkable(target.location)),
        }
    }
    let word = canonical_instance(&word);
    let data: Vec<Datum> = (0..set.word_data_count).collect();
    let residual = set.concretize(&data).expect("set has no Sym values");
    Ok(ShrinkOutcome::Shrunk(ShrinkResult { word, residual }))
}

/// Deterministic stepping of concrete configurations over a fixed data set.
struct PairSpace<'a> {
    table: StepTable,
    data: &'a [Datum],
    k: usize,
}

impl<'a> PairSpace<'a> {
    fn step(&self, q: &Configuration, letter: Letter, d: Datum) -> Configuration {
        let sigma: RegSet = q
            .valuation
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == d)
            .map(|(r, _)| r)
            .collect();
        let e = self
            .table
            .edges(q.location, letter)
            .iter()
            .find(|e| e.enabled(sigma))
            .expect("complete automaton has an enabled edge");
        let mut valuation = q.valuation.clone();
        for (r, v) in valuation.iter_mut().enumerate().take(self.k) {
            if e.update.contains(r) {
                *v = d;
            }
        }
        Configuration::new(e.target, valuation)
    }

    fn inputs(&self) -> impl Iterator<Item = (Letter, Datum)> + '_ {
        (0..self.table.letters()).flat_map(move |a| self.data.iter().map(move |&d| (a, d)))
    }
}

/// Shortest (then lexicographically least) word over `Σ × data` sending `q1`
/// and `q2` to the same configuration; `None` when they never meet.
pub fn pairwise_merge_word(
    automaton: &RegisterAutomaton,
    q1: &Configuration,
    q2: &Configuration,
    data: &[Datum],
) -> Result<Option<DataWord>> {
    require_dra(automaton)?;
    let k = automaton.registers;
    if data.len() != 2 * k + 1 {
        return Err(Error::Argument(format!(
            "merging needs exactly {} data, got {}",
            2 * k + 1,
            data.len()
        )));
    }
    for q in [q1, q2] {
        if q.valuation.len() != k || q.location >= automaton.locations.len() {
            return Err(Error::Argument(
                "configuration does not fit the automaton".into(),
            ));
        }
        if q.valuation.iter().any(|d| !data.contains(d)) {
            return Err(Error::Argument(
                "configuration data outside the merging data set".into(),
            ));
        }
    }
    let space = PairSpace {
        table: StepTable::new(automaton)?,
        data,
        k,
    };
    Ok(merge_in(&space, q1, q2))
}

fn merge_in(space: &PairSpace<'_>, q1: &Configuration, q2: &Configuration) -> Option<DataWord> {
    if q1 == q2 {
        return Some(DataWord::default());
    }
    let mut nodes: Vec<((Configuration, Configuration), usize, (Letter, Datum))> = Vec::new();
    let mut seen: HashMap<(Configuration, Configuration), ()> = HashMap::new();
    let start = (q1.clone(), q2.clone());
    seen.insert(start.clone(), ());
    nodes.push((start, usize::MAX, (0, 0)));
    let mut head = 0;
    while head < nodes.len() {
        let (p1, p2) = nodes[head].0.clone();
        for (a, d) in space.inputs() {
            let n1 = space.step(&p1, a, d);
            let n2 = space.step(&p2, a, d);
            if n1 == n2 {
                let mut path = vec![(a, d)];
                let mut i = head;
                while nodes[i].1 != usize::MAX {
                    path.push(nodes[i].2);
                    i = nodes[i].1;
                }
                path.reverse();
                return Some(DataWord::new(path));
            }
            let key = (n1, n2);
            if !seen.contains_key(&key) {
                seen.insert(key.clone(), ());
                nodes.push((key, head, (a, d)));
            }
        }
        head += 1;
    }
    None
}

/// A synchronizing word with at most `2k + 1` distinct data, or `NoSyncWord`.
pub fn synchronizing_word_dra(automaton: &RegisterAutomaton, budget: u64) -> Result<DraOutcome> {
    let shrunk = match shrink_word(automaton, budget)? {
        ShrinkOutcome::Shrunk(s) => s,
        ShrinkOutcome::NotShrinkable(_) => return Ok(DraOutcome::NoSyncWord),
    };
    if automaton.alphabet.is_empty() {
        return Ok(DraOutcome::NoSyncWord);
    }
    let k = automaton.registers;
    let data: Vec<Datum> = (0..=2 * k as Datum).collect();
    let space = PairSpace {
        table: StepTable::new(automaton)?,
        data: &data,
        k,
    };
    let mut word = shrunk.word;
    let mut set = shrunk.residual;
    while set.len() > 1 {
        let mut it = set.iter();
        let (q1, q2) = (
            it.next().expect("two configs"),
            it.next().expect("two configs"),
        );
        let Some(piece) = merge_in(&space, q1, q2) else {
            return Ok(DraOutcome::NoSyncWord);
        };
        set = set
            .iter()
            .map(|q| {
                piece
                    .entries
                    .iter()
                    .fold(q.clone(), |q, &(a, d)| space.step(&q, a, d))
            })
            .collect();
        word = word.concat(&piece);
    }
    if word.is_empty() {
        word = DataWord::new(vec![(0, 0)]);
    }
    let abs = Abstraction::new(automaton)?;
    if !abs.synchronizes(&word.to_choice_word())? {
        return Err(Error::Structural(
            "constructed word failed abstract verification".into(),
        ));
    }
    Ok(DraOutcome::Synchronizing(word))
}

/// A complete deterministic finite automaton.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    states: usize,
    letters: usize,
    delta: Vec<usize>,
}

impl Dfa {
    /// `delta[q * letters + a]` is the successor of `q` on `a`.
    pub fn new(states: usize, letters: usize, delta: Vec<usize>) -> Result<Self> {
        if delta.len() != states * letters || delta.iter().any(|&q| q >= states) {
            return Err(Error::Argument("transition function is not total".into()));
        }
        Ok(Dfa {
            states,
            letters,
            delta,
        })
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn step(&self, q: usize, a: usize) -> usize {
        self.delta[q * self.letters + a]
    }

    pub fn run(&self, q: usize, word: &[usize]) -> usize {
        word.iter().fold(q, |q, &a| self.step(q, a))
    }

    fn merge(&self, p: usize, q: usize) -> Option<Vec<usize>> {
        let mut parent: HashMap<(usize, usize), (usize, usize, usize)> = HashMap::new();
        let mut queue = VecDeque::from([(p, q)]);
        parent.insert((p, q), (usize::MAX, 0, 0));
        while let Some((x, y)) = queue.pop_front() {
            for a in 0..self.letters {
                let (nx, ny) = (self.step(x, a), self.step(y, a));
                if nx == ny {
                    let mut path = vec![a];
                    let mut node = (x, y);
                    while let Some(&(px, py, pa)) = parent.get(&node).filter(|e| e.0 != usize::MAX)
                    {
                        path.push(pa);
                        node = (px, py);
                    }
                    path.reverse();
                    return Some(path);
                }
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry((nx, ny)) {
                    e.insert((x, y, a));
                    queue.push_back((nx, ny));
                }
            }
        }
        None
    }
}

/// Pairwise merging: repeatedly merge the two lowest states of the current set.
pub fn dfa_synchronizing_word(dfa: &Dfa) -> Option<Vec<usize>> {
    let mut set: BTreeSet<usize> = (0..dfa.states).collect();
    let mut word = Vec::new();
    while set.len() > 1 {
        let mut it = set.iter();
        let (p, q) = (*it.next()?, *it.next()?);
        let piece = dfa.merge(p, q)?;
        set = set.iter().map(|&s| dfa.run(s, &piece)).collect();
        word.extend(piece);
    }
    Some(word)
}

/// The DFA over `L × {0,1,2}` with inputs `Σ × {0,1,2}` induced by a
/// one-register DRA; state `(l, d)` is `l * 3 + d`, input `(a, d)` is `a * 3 + d`.
pub fn dra1_dfa(automaton: &RegisterAutomaton) -> Result<Dfa> {
    if automaton.registers != 1 {
        return Err(Error::Argument(format!(
            "expected one register, got {}",
            automaton.registers
        )));
    }
    require_dra(automaton)?;
    let data = [0, 1, 2];
    let space = PairSpace {
        table: StepTable::new(automaton)?,
        data: &data,
        k: 1,
    };
    let letters = automaton.alphabet.len() * 3;
    let states = automaton.locations.len() * 3;
    let mut delta = Vec::with_capacity(states * letters);
    for l in 0..automaton.locations.len() {
        for v in data {
            let q = Configuration::new(l, vec![v]);
            for (a, d) in space.inputs() {
                let n = space.step(&q, a, d);
                delta.push(n.location * 3 + n.valuation[0] as usize);
            }
        }
    }
    Dfa::new(states, letters, delta)
}

/// Synchronizability of a one-register DRA through its three-datum DFA.
pub fn dra1_decide(automaton: &RegisterAutomaton) -> Result<bool> {
    let dfa = dra1_dfa(automaton)?;
    let shrinkable = inequality_update_check(automaton)?.iter().all(|&ok| ok);
    Ok(shrinkable && dfa_synchronizing_word(&dfa).is_some())
}
