//! Brute-force ground truth over finite data pools. Uses only concrete
//! successor sets and the guard AST, never the symbolic abstraction.
//!
//! Start sets are `L × Z^k` with `Z = data(w) ∪ {2k extra data}`. Any two
//! initial valuations together use at most `2k` data outside `data(w)`, and a
//! bijection fixing `data(w)` maps them into `Z` while keeping their runs
//! apart, so two surviving configurations are never collapsed into one.

use std::collections::{BTreeSet, HashSet};

use crate::automaton::{Datum, Loc, RegisterAutomaton};
use crate::error::{Error, Result};
use crate::semantics::{post_config, product_set, Configuration, DataWord};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleParams {
    pub max_length: usize,
    /// Data available to words: `0..data_pool_size`.
    pub data_pool_size: usize,
    /// Extra data adjoined for initial valuations; defaults to twice the register count.
    pub initial_extra_data: Option<usize>,
    /// Enumerate every pool datum at every position instead of choice words.
    pub concrete_words: bool,
    pub max_nodes: u64,
}

impl OracleParams {
    pub fn new(max_length: usize, data_pool_size: usize) -> Self {
        OracleParams {
            max_length,
            data_pool_size,
            initial_extra_data: None,
            concrete_words: false,
            max_nodes: 20_000_000,
        }
    }
}

const MAX_INITIAL_CONFIGS: usize = 2_000_000;

fn initial_set(automaton: &RegisterAutomaton, pool: &[Datum]) -> Result<BTreeSet<Configuration>> {
    let size = pool
        .len()
        .checked_pow(automaton.registers as u32)
        .and_then(|n| n.checked_mul(automaton.locations.len()));
    if size.is_none_or(|n| n > MAX_INITIAL_CONFIGS) {
        return Err(Error::Resource(format!(
            "initial set of {} locations over {} data with {} registers is too large",
            automaton.locations.len(),
            pool.len(),
            automaton.registers
        )));
    }
    let locs: Vec<Loc> = (0..automaton.locations.len()).collect();
    Ok(product_set(automaton, &locs, pool))
}

fn step(
    automaton: &RegisterAutomaton,
    set: &BTreeSet<Configuration>,
    letter: usize,
    d: Datum,
) -> Result<BTreeSet<Configuration>> {
    let mut next = BTreeSet::new();
    for q in set {
        next.extend(post_config(automaton, q, letter, d)?);
    }
    Ok(next)
}

/// Whether `post(L × D^k, word)` is a single configuration.
pub fn oracle_is_synchronizing(automaton: &RegisterAutomaton, word: &DataWord) -> Result<bool> {
    automaton.check()?;
    let mut pool = word.data();
    let top = pool.iter().copied().max().map_or(0, |m| m + 1);
    pool.extend((0..2 * automaton.registers as Datum).map(|i| top + i));
    let mut set = initial_set(automaton, &pool)?;
    for &(a, d) in &word.entries {
        set = step(automaton, &set, a, d)?;
    }
    Ok(set.len() == 1)
}

struct Search<'a> {
    automaton: &'a RegisterAutomaton,
    params: &'a OracleParams,
    /// Most distinct data a word may use.
    max_data: usize,
    /// Goal only at exactly the limit (length search) or anywhere (efficiency search).
    exact: bool,
    failing: HashSet<(Vec<Configuration>, u64, usize)>,
    nodes: u64,
    path: Vec<(usize, Datum)>,
}

impl Search<'_> {
    fn inputs(&self, used: u64) -> Vec<Datum> {
        let count = used.count_ones() as usize;
        if self.params.concrete_words {
            (0..self.params.data_pool_size as Datum)
                .filter(|&d| used & (1 << d) != 0 || count < self.max_data)
                .collect()
        } else {
            let fresh = (count < self.max_data && count < self.params.data_pool_size)
                .then_some(count as Datum);
            (0..count as Datum).chain(fresh).collect()
        }
    }

    fn go(&mut self, set: &BTreeSet<Configuration>, used: u64, remaining: usize) -> Result<bool> {
        let done = !self.path.is_empty() && set.len() == 1;
        if done && (!self.exact || remaining == 0) {
            return Ok(true);
        }
        if remaining == 0 {
            return Ok(false);
        }
        let key = (set.iter().cloned().collect::<Vec<_>>(), used, remaining);
        if self.failing.contains(&key) {
            return Ok(false);
        }
        self.nodes += 1;
        if self.nodes > self.params.max_nodes {
            return Err(Error::Resource(format!(
                "oracle exceeded {} nodes",
                self.params.max_nodes
            )));
        }
        for a in 0..self.automaton.alphabet.len() {
            for d in self.inputs(used) {
                let next = step(self.automaton, set, a, d)?;
                self.path.push((a, d));
                if self.go(&next, used | (1 << d), remaining - 1)? {
                    return Ok(true);
                }
                self.path.pop();
            }
        }
        self.failing.insert(key);
        Ok(false)
    }
}

fn prepare(
    automaton: &RegisterAutomaton,
    params: &OracleParams,
) -> Result<BTreeSet<Configuration>> {
    automaton.check()?;
    if params.data_pool_size == 0 || params.data_pool_size > 60 {
        return Err(Error::Argument("data pool size must be in 1..=60".into()));
    }
    let extra = params.initial_extra_data.unwrap_or(2 * automaton.registers);
    let pool: Vec<Datum> = (0..(params.data_pool_size + extra) as Datum).collect();
    initial_set(automaton, &pool)
}

/// A synchronizing word of length at most `params.max_length` (exactly, if
/// `exact_length`) using at most `max_data` distinct data.
pub fn oracle_find_word(
    automaton: &RegisterAutomaton,
    params: &OracleParams,
    max_data: usize,
    exact_length: Option<usize>,
) -> Result<Option<DataWord>> {
    let start = prepare(automaton, params)?;
    let mut s = Search {
        automaton,
        params,
        max_data,
        exact: exact_length.is_some(),
        failing: HashSet::new(),
        nodes: 0,
        path: Vec::new(),
    };
    let limit = exact_length.unwrap_or(params.max_length);
    Ok(s.go(&start, 0, limit)?.then(|| DataWord::new(s.path)))
}

/// Least number of distinct data in a synchronizing word of length at most
/// `params.max_length`, or `None` when the pool and length allow none.
pub fn oracle_min_data_efficiency(
    automaton: &RegisterAutomaton,
    params: &OracleParams,
) -> Result<Option<usize>> {
    for m in 1..=params.data_pool_size {
        if oracle_find_word(automaton, params, m, None)?.is_some() {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

/// Least length of a synchronizing word, up to `params.max_length`.
pub fn oracle_min_length(
    automaton: &RegisterAutomaton,
    params: &OracleParams,
) -> Result<Option<usize>> {
    for len in 1..=params.max_length {
        if oracle_find_word(automaton, params, params.data_pool_size, Some(len))?.is_some() {
            return Ok(Some(len));
        }
    }
    Ok(None)
}
