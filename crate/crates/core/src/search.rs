//! Exact bounded search over choice words for nondeterministic automata:
//! synchronizing words, universality counterexamples and accepted words.

use std::collections::{HashMap, HashSet};

use crate::automaton::{Letter, RegisterAutomaton};
use crate::dra::DEFAULT_NODE_BUDGET;
use crate::error::{Error, Result};
use crate::semantics::{
    canonical_instance, is_synchronized, AbstractConfig, AbstractConfigSet, AbstractValue,
    Abstraction, ChoiceWord, DataWord, DatumChoice,
};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    #[default]
    IterativeDeepening,
    BreadthFirst,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_length: usize,
    pub max_distinct_data: Option<usize>,
    pub max_nodes: u64,
    pub strategy: Strategy,
}

impl SearchBudget {
    pub fn new(max_length: usize) -> Self {
        SearchBudget {
            max_length,
            max_distinct_data: None,
            max_nodes: DEFAULT_NODE_BUDGET,
            strategy: Strategy::default(),
        }
    }

    pub fn with_data(mut self, max_distinct_data: usize) -> Self {
        self.max_distinct_data = Some(max_distinct_data);
        self
    }

    pub fn with_nodes(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn with_strategy(mut self, strategy: Strategy) -> Self {
        self.strategy = strategy;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness { choices: ChoiceWord, word: DataWord },
    NoneWithinBound,
    BudgetExhausted { explored: u64 },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&DataWord> {
        match self {
            SearchOutcome::Witness { word, .. } => Some(word),
            _ => None,
        }
    }

    fn found(choices: ChoiceWord) -> Self {
        let word = canonical_instance(&choices);
        SearchOutcome::Witness { choices, word }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub explored: u64,
    /// Deepest length limit fully searched.
    pub depth: usize,
    /// The reachable space was exhausted, so a negative holds for every bound.
    pub space_exhausted: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub outcome: SearchOutcome,
    pub stats: SearchStats,
}

/// Memo key: live word data renumbered order-preservingly, plus what the
/// dropped data still influence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
struct Key {
    configs: Vec<AbstractConfig>,
    has_dead: bool,
    used: Option<u32>,
}

fn live_data(set: &AbstractConfigSet) -> Vec<u32> {
    let mut live: Vec<u32> = set
        .configs
        .iter()
        .flat_map(|c| c.values.iter())
        .filter_map(|v| match v {
            AbstractValue::Word(i) => Some(*i),
            AbstractValue::Sym(_) => None,
        })
        .collect();
    live.sort_unstable();
    live.dedup();
    live
}

fn compact(set: &AbstractConfigSet, live: &[u32], track_used: bool) -> Key {
    let mut configs: Vec<AbstractConfig> = set
        .configs
        .iter()
        .map(|c| AbstractConfig {
            location: c.location,
            values: c
                .values
                .iter()
                .map(|v| match *v {
                    AbstractValue::Word(i) => {
                        AbstractValue::Word(live.binary_search(&i).expect("live datum") as u32)
                    }
                    s => s,
                })
                .collect(),
        })
        .collect();
    configs.sort_unstable();
    Key {
        configs,
        has_dead: !track_used && (live.len() as u32) < set.word_data_count,
        used: track_used.then_some(set.word_data_count),
    }
}

/// Live `Seen` data, the least dead one, then `Fresh` while allowed.
fn pruned_choices(
    set: &AbstractConfigSet,
    live: &[u32],
    max_data: Option<usize>,
) -> Vec<DatumChoice> {
    let m = set.word_data_count;
    let mut out: Vec<DatumChoice> = Vec::with_capacity(live.len() + 2);
    let mut dead = None;
    for i in 0..m {
        if live.binary_search(&i).is_ok() {
            out.push(DatumChoice::Seen(i));
        } else if dead.is_none() {
            dead = Some(i);
            out.push(DatumChoice::Seen(i));
        }
    }
    if max_data.is_none_or(|cap| (m as usize) < cap) {
        out.push(DatumChoice::Fresh);
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Goal {
    Synchronized,
    Rejecting,
}

struct Engine<'a, F: Fn(&AbstractConfigSet) -> bool> {
    abs: &'a Abstraction,
    letters: usize,
    max_data: Option<usize>,
    max_nodes: u64,
    min_depth: usize,
    goal: F,
    /// Locations whose configurations can still matter; others are dropped.
    relevant: Option<Vec<bool>>,
    explored: u64,
    memo: HashMap<Key, usize>,
    cut: bool,
}

impl<F: Fn(&AbstractConfigSet) -> bool> Engine<'_, F> {
    fn is_goal(&self, set: &AbstractConfigSet, depth: usize) -> bool {
        depth >= self.min_depth && (self.goal)(set)
    }

    fn step(&self, set: &AbstractConfigSet, a: Letter, ch: DatumChoice) -> AbstractConfigSet {
        let mut next = self.abs.post_unchecked(set, a, ch);
        if let Some(keep) = &self.relevant {
            next.configs.retain(|c| keep[c.location]);
        }
        next
    }

    fn tick(&mut self) -> Result<()> {
        self.explored += 1;
        if self.explored > self.max_nodes {
            return Err(Error::Inconclusive {
                explored: self.explored,
            });
        }
        Ok(())
    }

    fn dfs(
        &mut self,
        set: &AbstractConfigSet,
        remaining: usize,
        path: &mut Vec<(Letter, DatumChoice)>,
    ) -> Result<bool> {
        if self.is_goal(set, path.len()) {
            return Ok(true);
        }
        if remaining == 0 {
            self.cut = true;
            return Ok(false);
        }
        let live = live_data(set);
        let key = compact(set, &live, self.max_data.is_some());
        match self.memo.get(&key) {
            Some(&best) if best >= remaining => return Ok(false),
            _ => {
                self.memo.insert(key, remaining);
            }
        }
        self.tick()?;
        let choices = pruned_choices(set, &live, self.max_data);
        for a in 0..self.letters {
            for &ch in &choices {
                let next = self.step(set, a, ch);
                path.push((a, ch));
                if self.dfs(&next, remaining - 1, path)? {
                    return Ok(true);
                }
                path.pop();
            }
        }
        Ok(false)
    }

    fn iterative(
        &mut self,
        start: &AbstractConfigSet,
        max_length: usize,
        stats: &mut SearchStats,
    ) -> Result<Option<ChoiceWord>> {
        let mut path = Vec::new();
        if self.is_goal(start, 0) {
            return Ok(Some(ChoiceWord::default()));
        }
        for limit in 1..=max_length {
            self.memo.clear();
            self.cut = false;
            if self.dfs(start, limit, &mut path)? {
                return Ok(Some(ChoiceWord::new(path)));
            }
            stats.depth = limit;
            if !self.cut {
                stats.space_exhausted = true;
                break;
            }
        }
        Ok(None)
    }

    fn breadth_first(
        &mut self,
        start: &AbstractConfigSet,
        max_length: usize,
        stats: &mut SearchStats,
    ) -> Result<Option<ChoiceWord>> {
        if self.is_goal(start, 0) {
            return Ok(Some(ChoiceWord::default()));
        }
        let mut nodes: Vec<(AbstractConfigSet, usize, (Letter, DatumChoice), usize)> = Vec::new();
        let mut seen: HashSet<Key> = HashSet::new();
        nodes.push((start.clone(), usize::MAX, (0, DatumChoice::Fresh), 0));
        let mut head = 0;
        let mut truncated = false;
        while head < nodes.len() {
            let depth = nodes[head].3;
            stats.depth = depth;
            if depth >= max_length {
                truncated = true;
                break;
            }
            let set = nodes[head].0.clone();
            let live = live_data(&set);
            if depth > 0 && !seen.insert(compact(&set, &live, self.max_data.is_some())) {
                head += 1;
                continue;
            }
            self.tick()?;
            for a in 0..self.letters {
                for ch in pruned_choices(&set, &live, self.max_data) {
                    let next = self.step(&set, a, ch);
                    if self.is_goal(&next, depth + 1) {
                        let mut path = vec![(a, ch)];
                        let mut i = head;
                        while nodes[i].1 != usize::MAX {
                            path.push(nodes[i].2);
                            i = nodes[i].1;
                        }
                        path.reverse();
                        return Ok(Some(ChoiceWord::new(path)));
                    }
                    nodes.push((next, head, (a, ch), depth + 1));
                }
            }
            head += 1;
        }
        stats.depth = if truncated { max_length } else { stats.depth };
        stats.space_exhausted = !truncated;
        Ok(None)
    }
}

/// Locations with a path (ignoring guards) to an accepting location.
fn can_reach_acceptance(automaton: &RegisterAutomaton) -> Vec<bool> {
    let mut reach: Vec<bool> = (0..automaton.locations.len())
        .map(|l| automaton.is_accepting(l))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for t in &automaton.transitions {
            if reach[t.target] && !reach[t.source] {
                reach[t.source] = true;
                changed = true;
            }
        }
    }
    reach
}

fn run_search(
    automaton: &RegisterAutomaton,
    start: impl FnOnce(&Abstraction) -> AbstractConfigSet,
    budget: &SearchBudget,
    goal: Goal,
) -> Result<SearchReport> {
    let abs = Abstraction::new(automaton)?;
    let start = start(&abs);
    let min_depth = usize::from(goal == Goal::Synchronized);
    let goal_fn = move |s: &AbstractConfigSet| match goal {
        Goal::Synchronized => is_synchronized(s),
        Goal::Rejecting => s
            .configs
            .iter()
            .all(|c| !automaton.is_accepting(c.location)),
    };
    let relevant = (goal == Goal::Rejecting).then(|| can_reach_acceptance(automaton));
    let mut engine = Engine {
        abs: &abs,
        letters: automaton.alphabet.len(),
        max_data: budget.max_distinct_data,
        max_nodes: budget.max_nodes,
        min_depth,
        goal: goal_fn,
        relevant,
        explored: 0,
        memo: HashMap::new(),
        cut: false,
    };
    let mut stats = SearchStats::default();
    let found = match budget.strategy {
        Strategy::IterativeDeepening => engine.iterative(&start, budget.max_length, &mut stats),
        Strategy::BreadthFirst => engine.breadth_first(&start, budget.max_length, &mut stats),
    };
    stats.explored = engine.explored;
    let outcome = match found {
        Ok(Some(w)) => {
            stats.depth = w.len();
            SearchOutcome::found(w)
        }
        Ok(None) => SearchOutcome::NoneWithinBound,
        Err(Error::Inconclusive { explored }) => SearchOutcome::BudgetExhausted { explored },
        Err(e) => return Err(e),
    };
    Ok(SearchReport { outcome, stats })
}

/// A synchronizing word of length `1..=max_length`, or a proof that none exists.
pub fn bounded_sync_search(
    automaton: &RegisterAutomaton,
    budget: &SearchBudget,
) -> Result<SearchReport> {
    if let Some(c) = automaton.incomplete_cell()? {
        return Err(Error::Argument(format!(
            "synchronization search needs a complete automaton; location {} letter {} is missing a case",
            automaton.locations[c.location], automaton.alphabet[c.letter]
        )));
    }
    run_search(automaton, |abs| abs.initial(), budget, Goal::Synchronized)
}

fn initial_of(automaton: &RegisterAutomaton) -> Result<usize> {
    let acc = automaton
        .acceptance
        .as_ref()
        .ok_or_else(|| Error::Argument("automaton has no initial location".into()))?;
    automaton.check()?;
    Ok(acc.initial)
}

/// A word of length at most `budget.max_length` that is rejected.
pub fn bounded_universality_witness(
    automaton: &RegisterAutomaton,
    budget: &SearchBudget,
) -> Result<SearchReport> {
    let init = initial_of(automaton)?;
    run_search(
        automaton,
        |abs| abs.initial_at([init]),
        budget,
        Goal::Rejecting,
    )
}

fn normalize_single(config: &AbstractConfig) -> (AbstractConfig, Vec<u32>) {
    let mut words: Vec<u32> = config
        .values
        .iter()
        .filter_map(|v| match v {
            AbstractValue::Word(i) => Some(*i),
            AbstractValue::Sym(_) => None,
        })
        .collect();
    words.sort_unstable();
    words.dedup();
    let values = config
        .values
        .iter()
        .map(|v| match *v {
            AbstractValue::Word(i) => {
                AbstractValue::Word(words.binary_search(&i).expect("present") as u32)
            }
            s => s,
        })
        .collect();
    (
        AbstractConfig {
            location: config.location,
            values,
        },
        words,
    )
}

/// A shortest accepted word of length at most `budget.max_length`.
pub fn nonemptiness_witness(
    automaton: &RegisterAutomaton,
    budget: &SearchBudget,
) -> Result<SearchReport> {
    let init = initial_of(automaton)?;
    let abs = Abstraction::new(automaton)?;
    let mut stats = SearchStats::default();
    // Node: real config, its word data count, parent, step, depth.
    let mut nodes: Vec<(AbstractConfig, u32, usize, (Letter, DatumChoice), usize)> = Vec::new();
    let mut seen: HashSet<AbstractConfig> = HashSet::new();
    for c in abs.initial_at([init]).configs {
        if seen.insert(normalize_single(&c).0) {
            nodes.push((c, 0, usize::MAX, (0, DatumChoice::Fresh), 0));
        }
    }
    let path_to = |nodes: &[(AbstractConfig, u32, usize, (Letter, DatumChoice), usize)],
                   mut i: usize| {
        let mut path = Vec::new();
        while nodes[i].2 != usize::MAX {
            path.push(nodes[i].3);
            i = nodes[i].2;
        }
        path.reverse();
        ChoiceWord::new(path)
    };
    let mut head = 0;
    let mut truncated = false;
    let mut out = Vec::new();
    while head < nodes.len() {
        let (config, m, _, _, depth) = nodes[head].clone();
        stats.depth = depth;
        if automaton.is_accepting(config.location) {
            let w = path_to(&nodes, head);
            stats.depth = w.len();
            return Ok(SearchReport {
                outcome: SearchOutcome::found(w),
                stats,
            });
        }
        if depth >= budget.max_length {
            truncated = true;
            head += 1;
            continue;
        }
        stats.explored += 1;
        if stats.explored > budget.max_nodes {
            return Ok(SearchReport {
                outcome: SearchOutcome::BudgetExhausted {
                    explored: stats.explored,
                },
                stats,
            });
        }
        let (_, live) = normalize_single(&config);
        let choices = live
            .iter()
            .map(|&i| DatumChoice::Seen(i))
            .chain([DatumChoice::Fresh]);
        for ch in choices {
            for a in 0..automaton.alphabet.len() {
                out.clear();
                abs.successors_into(&config, a, ch, m, &mut out);
                let m2 = m + u32::from(ch == DatumChoice::Fresh);
                for n in out.drain(..) {
                    if seen.insert(normalize_single(&n).0) {
                        nodes.push((n, m2, head, (a, ch), depth + 1));
                    }
                }
            }
        }
        head += 1;
    }
    stats.space_exhausted = !truncated;
    Ok(SearchReport {
        outcome: SearchOutcome::NoneWithinBound,
        stats,
    })
}

/// Every choice word of exactly `length` that synchronizes the automaton.
pub fn enumerate_sync_witnesses(
    automaton: &RegisterAutomaton,
    length: usize,
    max_nodes: u64,
) -> Result<Vec<ChoiceWord>> {
    let abs = Abstraction::new(automaton)?;
    let mut failing: HashSet<(AbstractConfigSet, usize)> = HashSet::new();
    let mut out = Vec::new();
    let mut explored = 0u64;
    let mut path = Vec::new();

    #[allow(clippy::too_many_arguments)]
    fn go(
        abs: &Abstraction,
        letters: usize,
        set: &AbstractConfigSet,
        remaining: usize,
        path: &mut Vec<(Letter, DatumChoice)>,
        failing: &mut HashSet<(AbstractConfigSet, usize)>,
        out: &mut Vec<ChoiceWord>,
        explored: &mut u64,
        max_nodes: u64,
    ) -> Result<bool> {
        if remaining == 0 {
            let ok = is_synchronized(set);
            if ok {
                out.push(ChoiceWord::new(path.clone()));
            }
            return Ok(ok);
        }
        let key = (set.clone(), remaining);
        if failing.contains(&key) {
            return Ok(false);
        }
        *explored += 1;
        if *explored > max_nodes {
            return Err(Error::Inconclusive {
                explored: *explored,
            });
        }
        let mut any = false;
        for a in 0..letters {
            for ch in (0..set.word_data_count)
                .map(DatumChoice::Seen)
                .chain([DatumChoice::Fresh])
            {
                let next = abs.post_unchecked(set, a, ch);
                path.push((a, ch));
                any |= go(
                    abs,
                    letters,
                    &next,
                    remaining - 1,
                    path,
                    failing,
                    out,
                    explored,
                    max_nodes,
                )?;
                path.pop();
            }
        }
        if !any {
            failing.insert(key);
        }
        Ok(any)
    }

    go(
        &abs,
        automaton.alphabet.len(),
        &abs.initial(),
        length,
        &mut path,
        &mut failing,
        &mut out,
        &mut explored,
        max_nodes,
    )?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::{Acceptance, Constraint, RegSet};
    use crate::dra::{synchronizing_word_dra, DraOutcome};
    use crate::gadgets::{gen_chain_dra, gen_three_data_shortcut};
    use crate::generate::{random_automaton, RandomShape};
    use crate::semantics::accepts;
    use rand::{rngs::StdRng, SeedableRng};
    use std::collections::BTreeSet;

    fn full_loop() -> RegisterAutomaton {
        let mut a = RegisterAutomaton::new("loop", 1);
        a.add_location("l");
        a.add_letter("a");
        a.add(0, 0, Constraint::True, RegSet::single(0), 0);
        a
    }

    /// Accepts exactly the words whose first two data are equal.
    fn first_two_equal() -> RegisterAutomaton {
        let mut a = RegisterAutomaton::new("eq2", 1);
        let (i, p, f, d) = (
            a.add_location("i"),
            a.add_location("p"),
            a.add_location("f"),
            a.add_location("d"),
        );
        let x = a.add_letter("a");
        a.add(i, x, Constraint::True, RegSet::single(0), p);
        a.add(p, x, Constraint::eq(0), RegSet::EMPTY, f);
        a.add(p, x, Constraint::ne(0), RegSet::EMPTY, d);
        a.add(f, x, Constraint::True, RegSet::EMPTY, f);
        a.add(d, x, Constraint::True, RegSet::EMPTY, d);
        a.acceptance = Some(Acceptance {
            initial: i,
            accepting: BTreeSet::from([f]),
        });
        a
    }

    #[test]
    fn trivial_sync() {
        let r = bounded_sync_search(&full_loop(), &SearchBudget::new(1)).unwrap();
        assert_eq!(r.outcome.witness().unwrap().len(), 1);
    }

    #[test]
    fn shortcut_three_data_length_three() {
        let a = gen_three_data_shortcut();
        let r = bounded_sync_search(&a, &SearchBudget::new(3)).unwrap();
        let w = r.outcome.witness().expect("length three witness");
        assert_eq!(w.len(), 3);
        assert_eq!(w.efficiency(), 3);
        assert_eq!(
            bounded_sync_search(&a, &SearchBudget::new(2))
                .unwrap()
                .outcome,
            SearchOutcome::NoneWithinBound
        );
    }

    #[test]
    fn strategies_agree_on_chain() {
        let c = gen_chain_dra(2).unwrap();
        let id = bounded_sync_search(&c, &SearchBudget::new(4)).unwrap();
        let bfs = bounded_sync_search(
            &c,
            &SearchBudget::new(4).with_strategy(Strategy::BreadthFirst),
        )
        .unwrap();
        assert_eq!(id.outcome, bfs.outcome);
        assert_eq!(id.outcome.witness().unwrap().len(), 3);
        let capped = bounded_sync_search(&c, &SearchBudget::new(6).with_data(2)).unwrap();
        assert_eq!(capped.outcome, SearchOutcome::NoneWithinBound);
        assert!(capped.stats.space_exhausted);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let c = gen_chain_dra(3).unwrap();
        let r = bounded_sync_search(&c, &SearchBudget::new(6).with_nodes(3)).unwrap();
        assert!(matches!(r.outcome, SearchOutcome::BudgetExhausted { .. }));
    }

    #[test]
    fn universality_examples() {
        let mut all = full_loop();
        all.acceptance = Some(Acceptance {
            initial: 0,
            accepting: BTreeSet::from([0]),
        });
        assert_eq!(
            bounded_universality_witness(&all, &SearchBudget::new(4))
                .unwrap()
                .outcome,
            SearchOutcome::NoneWithinBound
        );
        let eq2 = first_two_equal();
        let r = bounded_universality_witness(&eq2, &SearchBudget::new(2)).unwrap();
        let SearchOutcome::Witness { choices, word } = r.outcome else {
            panic!()
        };
        // The empty word is already rejected.
        assert!(choices.is_empty());
        assert!(!accepts(&eq2, &word).unwrap());
    }

    #[test]
    fn universality_needs_two_fresh_data() {
        // Accepts the empty word, one-letter words and words with equal first data.
        let mut eq2 = first_two_equal();
        eq2.acceptance.as_mut().unwrap().accepting.extend([0, 1]);
        let r = bounded_universality_witness(&eq2, &SearchBudget::new(2)).unwrap();
        let SearchOutcome::Witness { choices, word } = r.outcome else {
            panic!()
        };
        assert_eq!(
            choices.entries,
            vec![(0, DatumChoice::Fresh), (0, DatumChoice::Fresh)]
        );
        assert!(!accepts(&eq2, &word).unwrap());
    }

    #[test]
    fn nonemptiness_examples() {
        let eq2 = first_two_equal();
        let r = nonemptiness_witness(&eq2, &SearchBudget::new(4)).unwrap();
        let SearchOutcome::Witness { choices, word } = r.outcome else {
            panic!()
        };
        assert_eq!(
            choices.entries,
            vec![(0, DatumChoice::Fresh), (0, DatumChoice::Seen(0))]
        );
        assert!(accepts(&eq2, &word).unwrap());

        let mut init_acc = eq2.clone();
        init_acc.acceptance.as_mut().unwrap().accepting.insert(0);
        let r = nonemptiness_witness(&init_acc, &SearchBudget::new(0)).unwrap();
        assert_eq!(r.outcome.witness().unwrap().len(), 0);

        let mut unreachable = eq2;
        let iso = unreachable.add_location("iso");
        unreachable.acceptance.as_mut().unwrap().accepting = BTreeSet::from([iso]);
        let r = nonemptiness_witness(&unreachable, &SearchBudget::new(5)).unwrap();
        assert_eq!(r.outcome, SearchOutcome::NoneWithinBound);
        assert!(r.stats.space_exhausted);
    }

    #[test]
    fn needs_two_distinct_data_to_accept() {
        let mut a = first_two_equal();
        a.acceptance.as_mut().unwrap().accepting = BTreeSet::from([3]);
        let r = nonemptiness_witness(&a, &SearchBudget::new(2)).unwrap();
        let SearchOutcome::Witness { choices, .. } = r.outcome else {
            panic!()
        };
        assert_eq!(choices.fresh_count(), 2);
    }

    #[test]
    fn universality_witnesses_are_rejected() {
        let mut rng = StdRng::seed_from_u64(17);
        let mut shape = RandomShape::small_nondeterministic();
        shape.with_acceptance = true;
        for _ in 0..150 {
            let a = random_automaton(&mut rng, &shape);
            if let SearchOutcome::Witness { word, .. } =
                bounded_universality_witness(&a, &SearchBudget::new(3))
                    .unwrap()
                    .outcome
            {
                assert!(!accepts(&a, &word).unwrap(), "{a:?}");
            }
            if let SearchOutcome::Witness { word, .. } =
                nonemptiness_witness(&a, &SearchBudget::new(3))
                    .unwrap()
                    .outcome
            {
                assert!(accepts(&a, &word).unwrap(), "{a:?}");
            }
        }
    }

    #[test]
    fn agrees_with_dra_procedure() {
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..80 {
            let a = random_automaton(&mut rng, &RandomShape::small_deterministic());
            let dra =
                synchronizing_word_dra(&a, DEFAULT_NODE_BUDGET).unwrap() != DraOutcome::NoSyncWord;
            let r = bounded_sync_search(&a, &SearchBudget::new(12).with_nodes(200_000)).unwrap();
            match r.outcome {
                SearchOutcome::Witness { .. } => assert!(dra),
                SearchOutcome::NoneWithinBound => assert!(!dra || !r.stats.space_exhausted),
                SearchOutcome::BudgetExhausted { .. } => {}
            }
        }
    }

    #[test]
    fn enumeration_matches_search() {
        let c = gen_chain_dra(2).unwrap();
        assert!(enumerate_sync_witnesses(&c, 2, 1_000_000)
            .unwrap()
            .is_empty());
        let ws = enumerate_sync_witnesses(&c, 3, 1_000_000).unwrap();
        assert_eq!(ws, vec![ChoiceWord::new(vec![(0, DatumChoice::Fresh); 3])]);
    }
}
