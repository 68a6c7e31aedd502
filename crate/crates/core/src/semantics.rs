//! Concrete successor sets and an exact finite abstraction of configuration
//! sets up to data bijection.
//!
//! Word data are named by their order of first occurrence (`Word(i)`); data
//! not (yet) seen in the input word are symbolic blocks (`Sym(b)`), pairwise
//! distinct inside one configuration and distinct from every word datum.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::automaton::{
    apply_update, eval_constraint, require_analysis_registers, Datum, Letter, Loc, RegSet,
    RegisterAutomaton, StepTable,
};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    pub location: Loc,
    pub valuation: Vec<Datum>,
}

impl Configuration {
    pub fn new(location: Loc, valuation: Vec<Datum>) -> Self {
        Configuration {
            location,
            valuation,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct DataWord {
    pub entries: Vec<(Letter, Datum)>,
}

impl DataWord {
    pub fn new(entries: Vec<(Letter, Datum)>) -> Self {
        DataWord { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Distinct data in order of first occurrence.
    pub fn data(&self) -> Vec<Datum> {
        let mut out = Vec::new();
        for &(_, d) in &self.entries {
            if !out.contains(&d) {
                out.push(d);
            }
        }
        out
    }

    /// Number of distinct data.
    pub fn efficiency(&self) -> usize {
        self.data().len()
    }

    /// The choice word naming each datum by its first occurrence.
    pub fn to_choice_word(&self) -> ChoiceWord {
        let mut seen: Vec<Datum> = Vec::new();
        let entries = self
            .entries
            .iter()
            .map(|&(a, d)| match seen.iter().position(|&x| x == d) {
                Some(i) => (a, DatumChoice::Seen(i as u32)),
                None => {
                    seen.push(d);
                    (a, DatumChoice::Fresh)
                }
            })
            .collect();
        ChoiceWord { entries }
    }

    pub fn concat(&self, other: &DataWord) -> DataWord {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        DataWord { entries }
    }

    pub fn display<'a>(&'a self, automaton: &'a RegisterAutomaton) -> impl fmt::Display + 'a {
        DisplayWord(self, automaton)
    }
}

struct DisplayWord<'a>(&'a DataWord, &'a RegisterAutomaton);

impl fmt::Display for DisplayWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, &(a, d)) in self.0.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}:{}", self.1.alphabet[a], d)?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DatumChoice {
    Seen(u32),
    Fresh,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ChoiceWord {
    pub entries: Vec<(Letter, DatumChoice)>,
}

impl ChoiceWord {
    pub fn new(entries: Vec<(Letter, DatumChoice)>) -> Self {
        ChoiceWord { entries }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn fresh_count(&self) -> usize {
        self.entries
            .iter()
            .filter(|(_, c)| *c == DatumChoice::Fresh)
            .count()
    }

    /// Every `Seen(i)` refers to a datum introduced earlier.
    pub fn is_well_formed(&self) -> bool {
        let mut fresh = 0;
        for &(_, c) in &self.entries {
            match c {
                DatumChoice::Fresh => fresh += 1,
                DatumChoice::Seen(i) if i >= fresh => return false,
                DatumChoice::Seen(_) => {}
            }
        }
        true
    }
}

/// Fresh entries consume successive pool data; `Seen(i)` reuses the i-th.
pub fn instantiate_choice_word(word: &ChoiceWord, pool: &[Datum]) -> Result<DataWord> {
    if word.fresh_count() > pool.len() {
        return Err(Error::Argument(format!(
            "pool of {} data is too small for {} fresh entries",
            pool.len(),
            word.fresh_count()
        )));
    }
    let mut used = 0;
    let mut entries = Vec::with_capacity(word.len());
    for &(a, c) in &word.entries {
        let d = match c {
            DatumChoice::Fresh => {
                used += 1;
                pool[used - 1]
            }
            DatumChoice::Seen(i) if (i as usize) < used => pool[i as usize],
            DatumChoice::Seen(i) => {
                return Err(Error::Argument(format!(
                    "Seen({i}) refers to a datum not yet introduced"
                )))
            }
        };
        entries.push((a, d));
    }
    Ok(DataWord { entries })
}

/// Instantiation over the canonical data `0, 1, 2, ...`.
pub fn canonical_instance(word: &ChoiceWord) -> DataWord {
    let pool: Vec<Datum> = (0..word.fresh_count() as Datum).collect();
    instantiate_choice_word(word, &pool).expect("canonical pool is large enough")
}

/// Successors of one configuration.
pub fn post_config(
    automaton: &RegisterAutomaton,
    config: &Configuration,
    letter: Letter,
    input: Datum,
) -> Result<BTreeSet<Configuration>> {
    let mut out = BTreeSet::new();
    for t in automaton.outgoing(config.location) {
        if t.letter == letter && eval_constraint(&t.guard, &config.valuation, input)? {
            out.insert(Configuration::new(
                t.target,
                apply_update(&config.valuation, t.update, input),
            ));
        }
    }
    Ok(out)
}

pub fn post_set(
    automaton: &RegisterAutomaton,
    set: &BTreeSet<Configuration>,
    word: &DataWord,
) -> Result<BTreeSet<Configuration>> {
    let mut current = set.clone();
    for &(a, d) in &word.entries {
        let mut next = BTreeSet::new();
        for q in &current {
            next.extend(post_config(automaton, q, a, d)?);
        }
        current = next;
    }
    Ok(current)
}

/// `locations × pool^k`.
pub fn product_set(
    automaton: &RegisterAutomaton,
    locations: &[Loc],
    pool: &[Datum],
) -> BTreeSet<Configuration> {
    let k = automaton.registers;
    let mut out = BTreeSet::new();
    let n = pool.len().pow(k as u32);
    for &l in locations {
        for code in 0..n {
            let mut c = code;
            let valuation = (0..k)
                .map(|_| {
                    let d = pool[c % pool.len()];
                    c /= pool.len();
                    d
                })
                .collect();
            out.insert(Configuration::new(l, valuation));
        }
    }
    out
}

/// Membership: some run from the initial location (any initial valuation)
/// ends in an accepting location.
pub fn accepts(automaton: &RegisterAutomaton, word: &DataWord) -> Result<bool> {
    let acc = automaton
        .acceptance
        .as_ref()
        .ok_or_else(|| Error::Argument("membership needs an initial location".into()))?;
    let mut pool = word.data();
    let top = pool.iter().copied().max().map_or(0, |m| m + 1);
    pool.extend((0..automaton.registers as Datum).map(|i| top + i));
    let start = product_set(automaton, &[acc.initial], &pool);
    let end = post_set(automaton, &start, word)?;
    Ok(end.iter().any(|q| automaton.is_accepting(q.location)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbstractValue {
    Word(u32),
    Sym(u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbstractConfig {
    pub location: Loc,
    pub values: Vec<AbstractValue>,
}

impl AbstractConfig {
    pub fn has_sym(&self) -> bool {
        self.values
            .iter()
            .any(|v| matches!(v, AbstractValue::Sym(_)))
    }

    fn sym_blocks(&self) -> u32 {
        self.values
            .iter()
            .filter_map(|v| match v {
                AbstractValue::Sym(b) => Some(b + 1),
                AbstractValue::Word(_) => None,
            })
            .max()
            .unwrap_or(0)
    }
}

/// Renumbers Sym blocks by first occurrence.
fn renumber_syms(values: &mut [AbstractValue]) {
    let mut map: [u32; 32] = [u32::MAX; 32];
    let mut next = 0;
    for v in values.iter_mut() {
        if let AbstractValue::Sym(b) = v {
            let slot = &mut map[*b as usize % 32];
            if *slot == u32::MAX {
                *slot = next;
                next += 1;
            }
            *b = *slot;
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AbstractConfigSet {
    pub configs: Vec<AbstractConfig>,
    pub word_data_count: u32,
}

impl AbstractConfigSet {
    pub fn len(&self) -> usize {
        self.configs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.configs.is_empty()
    }

    pub fn has_sym(&self) -> bool {
        self.configs.iter().any(AbstractConfig::has_sym)
    }

    /// The concrete configurations of a Sym-free set, reading `Word(i)` as `data[i]`.
    pub fn concretize(&self, data: &[Datum]) -> Option<BTreeSet<Configuration>> {
        self.configs
            .iter()
            .map(|c| {
                let valuation = c
                    .values
                    .iter()
                    .map(|v| match v {
                        AbstractValue::Word(i) => data.get(*i as usize).copied(),
                        AbstractValue::Sym(_) => None,
                    })
                    .collect::<Option<Vec<_>>>()?;
                Some(Configuration::new(c.location, valuation))
            })
            .collect()
    }

    pub fn display<'a>(
        &'a self,
        automaton: &'a RegisterAutomaton,
        data: &'a [Datum],
    ) -> impl fmt::Display + 'a {
        DisplaySet(self, automaton, data)
    }
}

struct DisplaySet<'a>(&'a AbstractConfigSet, &'a RegisterAutomaton, &'a [Datum]);

impl fmt::Display for DisplaySet<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.0.configs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}", self.1.locations[c.location])?;
            for v in &c.values {
                match v {
                    AbstractValue::Word(i) => match self.2.get(*i as usize) {
                        Some(d) => write!(f, ", {d}")?,
                        None => write!(f, ", w{i}")?,
                    },
                    AbstractValue::Sym(b) => write!(f, ", ?{b}")?,
                }
            }
            f.write_str(")")?;
        }
        f.write_str("}")
    }
}

/// Sorts and deduplicates after renumbering Sym blocks in every config.
pub fn canonicalize(set: &AbstractConfigSet) -> AbstractConfigSet {
    let mut configs = set.configs.clone();
    for c in &mut configs {
        renumber_syms(&mut c.values);
    }
    configs.sort_unstable();
    configs.dedup();
    AbstractConfigSet {
        configs,
        word_data_count: set.word_data_count,
    }
}

/// Exactly one configuration and no symbolic register.
pub fn is_synchronized(set: &AbstractConfigSet) -> bool {
    set.configs.len() == 1 && !set.configs[0].has_sym()
}

/// Set partitions of `0..k` as restricted growth strings.
pub fn register_partitions(k: usize) -> Vec<Vec<u32>> {
    fn go(prefix: &mut Vec<u32>, max: u32, k: usize, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == k {
            out.push(prefix.clone());
            return;
        }
        for b in 0..=max {
            prefix.push(b);
            go(prefix, max.max(b + 1), k, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(k), 0, k, &mut out);
    out
}

/// Compiled abstract stepping for one automaton.
#[derive(Clone, Debug)]
pub struct Abstraction {
    table: StepTable,
}

impl Abstraction {
    pub fn new(automaton: &RegisterAutomaton) -> Result<Self> {
        require_analysis_registers(automaton.registers)?;
        Ok(Abstraction {
            table: StepTable::new(automaton)?,
        })
    }

    pub fn table(&self) -> &StepTable {
        &self.table
    }

    /// Every location with every Sym partition of the registers.
    pub fn initial(&self) -> AbstractConfigSet {
        self.initial_at(0..self.table.locations())
    }

    pub fn initial_at(&self, locations: impl IntoIterator<Item = Loc>) -> AbstractConfigSet {
        let partitions = register_partitions(self.table.registers());
        let mut configs = Vec::new();
        for l in locations {
            for p in &partitions {
                configs.push(AbstractConfig {
                    location: l,
                    values: p.iter().map(|&b| AbstractValue::Sym(b)).collect(),
                });
            }
        }
        configs.sort_unstable();
        configs.dedup();
        AbstractConfigSet {
            configs,
            word_data_count: 0,
        }
    }

    fn fire(
        &self,
        location: Loc,
        letter: Letter,
        values: &[AbstractValue],
        sigma: RegSet,
        input: AbstractValue,
        out: &mut Vec<AbstractConfig>,
    ) {
        let k = values.len();
        for e in self.table.edges(location, letter) {
            if e.enabled(sigma) {
                let mut next = values.to_vec();
                for (r, v) in next.iter_mut().enumerate().take(k) {
                    if e.update.contains(r) {
                        *v = input;
                    }
                }
                renumber_syms(&mut next);
                out.push(AbstractConfig {
                    location: e.target,
                    values: next,
                });
            }
        }
    }

    /// Unsorted successors of one config; `m` is the number of word data so far.
    pub fn successors_into(
        &self,
        config: &AbstractConfig,
        letter: Letter,
        choice: DatumChoice,
        m: u32,
        out: &mut Vec<AbstractConfig>,
    ) {
        let values = &config.values;
        match choice {
            DatumChoice::Seen(i) => {
                let input = AbstractValue::Word(i);
                let sigma = values
                    .iter()
                    .enumerate()
                    .filter(|(_, &v)| v == input)
                    .map(|(r, _)| r)
                    .collect();
                self.fire(config.location, letter, values, sigma, input, out);
            }
            DatumChoice::Fresh => {
                let input = AbstractValue::Word(m);
                self.fire(config.location, letter, values, RegSet::EMPTY, input, out);
                let mut merged = values.clone();
                for b in 0..config.sym_blocks() {
                    let mut sigma = RegSet::EMPTY;
                    for (r, v) in values.iter().enumerate() {
                        merged[r] = if *v == AbstractValue::Sym(b) {
                            sigma = sigma.with(r);
                            input
                        } else {
                            *v
                        };
                    }
                    self.fire(config.location, letter, &merged, sigma, input, out);
                }
            }
        }
    }

    /// Successors for a new datum that equals no Sym block of `config`.
    pub fn successors_avoiding_syms(
        &self,
        config: &AbstractConfig,
        letter: Letter,
        m: u32,
        out: &mut Vec<AbstractConfig>,
    ) {
        self.fire(
            config.location,
            letter,
            &config.values,
            RegSet::EMPTY,
            AbstractValue::Word(m),
            out,
        );
    }

    pub fn post(
        &self,
        set: &AbstractConfigSet,
        letter: Letter,
        choice: DatumChoice,
    ) -> Result<AbstractConfigSet> {
        if letter >= self.table.letters() {
            return Err(Error::Argument(format!("unknown letter {letter}")));
        }
        if let DatumChoice::Seen(i) = choice {
            if i >= set.word_data_count {
                return Err(Error::Argument(format!(
                    "Seen({i}) with only {} word data introduced",
                    set.word_data_count
                )));
            }
        }
        Ok(self.post_unchecked(set, letter, choice))
    }

    pub(crate) fn post_unchecked(
        &self,
        set: &AbstractConfigSet,
        letter: Letter,
        choice: DatumChoice,
    ) -> AbstractConfigSet {
        let m = set.word_data_count;
        let mut configs = Vec::with_capacity(set.configs.len());
        for c in &set.configs {
            self.successors_into(c, letter, choice, m, &mut configs);
        }
        configs.sort_unstable();
        configs.dedup();
        AbstractConfigSet {
            configs,
            word_data_count: m + u32::from(choice == DatumChoice::Fresh),
        }
    }

    pub fn run(&self, set: &AbstractConfigSet, word: &ChoiceWord) -> Result<AbstractConfigSet> {
        let mut current = set.clone();
        for &(a, c) in &word.entries {
            current = self.post(&current, a, c)?;
        }
        Ok(current)
    }

    pub fn synchronizes(&self, word: &ChoiceWord) -> Result<bool> {
        Ok(is_synchronized(&self.run(&self.initial(), word)?))
    }
}

pub fn abstract_initial(automaton: &RegisterAutomaton) -> Result<AbstractConfigSet> {
    Ok(Abstraction::new(automaton)?.initial())
}

pub fn abstract_post(
    automaton: &RegisterAutomaton,
    set: &AbstractConfigSet,
    letter: Letter,
    choice: DatumChoice,
) -> Result<AbstractConfigSet> {
    Abstraction::new(automaton)?.post(set, letter, choice)
}

/// Abstracts a finite concrete set relative to the word data `data`
/// (`data[i]` becomes `Word(i)`, any other datum a Sym block).
pub fn abstract_of(configs: &BTreeSet<Configuration>, data: &[Datum]) -> AbstractConfigSet {
    let index: HashMap<Datum, u32> = data
        .iter()
        .enumerate()
        .map(|(i, &d)| (d, i as u32))
        .collect();
    let mut out = Vec::with_capacity(configs.len());
    for q in configs {
        let mut syms: Vec<Datum> = Vec::new();
        let values = q
            .valuation
            .iter()
            .map(|d| match index.get(d) {
                Some(&i) => AbstractValue::Word(i),
                None => {
                    let b = syms.iter().position(|x| x == d).unwrap_or_else(|| {
                        syms.push(*d);
                        syms.len() - 1
                    });
                    AbstractValue::Sym(b as u32)
                }
            })
            .collect();
        out.push(AbstractConfig {
            location: q.location,
            values,
        });
    }
    out.sort_unstable();
    out.dedup();
    AbstractConfigSet {
        configs: out,
        word_data_count: data.len() as u32,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Constraint;
    use crate::gadgets::gen_chain_dra;
    use crate::generate::{random_automaton, RandomShape};
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn chain_init_moves_to_primed_branch() {
        let a = gen_chain_dra(3).unwrap();
        let init = a.location_id("init").unwrap();
        let q = Configuration::new(init, vec![1, 1, 1]);
        let post = post_config(&a, &q, 0, 10).unwrap();
        let lp1 = a.location_id("l1'").unwrap();
        assert_eq!(
            post.into_iter().collect::<Vec<_>>(),
            vec![Configuration::new(lp1, vec![10, 1, 1])]
        );
    }

    #[test]
    fn chain_finite_after_three_fresh_inputs_from_init() {
        let a = gen_chain_dra(3).unwrap();
        let init = a.location_id("init").unwrap();
        let start: BTreeSet<_> = [Configuration::new(init, vec![0, 0, 0])].into();
        let w = DataWord::new(vec![(0, 1), (0, 2), (0, 3)]);
        let end = post_set(&a, &start, &w).unwrap();
        let ends: BTreeSet<Loc> =
            [a.location_id("l3").unwrap(), a.location_id("l3'").unwrap()].into();
        assert!(!end.is_empty());
        for q in end {
            assert!(ends.contains(&q.location));
            assert_eq!(q.valuation, vec![1, 2, 3]);
        }
        assert_eq!(
            post_set(&a, &BTreeSet::new(), &DataWord::default()).unwrap(),
            BTreeSet::new()
        );
    }

    #[test]
    fn incomplete_cell_has_no_successor() {
        let mut a = RegisterAutomaton::new("t", 1);
        a.add_location("l");
        a.add_letter("a");
        a.add(0, 0, Constraint::eq(0), RegSet::EMPTY, 0);
        assert!(post_config(&a, &Configuration::new(0, vec![1]), 0, 2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn initial_sizes_follow_bell_numbers() {
        for (locs, k, expected) in [(2, 2, 4), (1, 0, 1), (3, 3, 15)] {
            let mut a = RegisterAutomaton::new("t", k);
            for i in 0..locs {
                a.add_location(format!("l{i}"));
            }
            assert_eq!(abstract_initial(&a).unwrap().len(), expected);
        }
        assert_eq!(register_partitions(4).len(), 15);
        assert_eq!(register_partitions(5).len(), 52);
    }

    #[test]
    fn full_update_collapses_branches() {
        let mut a = RegisterAutomaton::new("t", 3);
        a.add_location("l");
        a.add_letter("a");
        a.add(0, 0, Constraint::True, RegSet::all(3), 0);
        let abs = Abstraction::new(&a).unwrap();
        let start = AbstractConfigSet {
            configs: vec![AbstractConfig {
                location: 0,
                values: vec![AbstractValue::Sym(0); 3],
            }],
            word_data_count: 0,
        };
        let next = abs.post(&start, 0, DatumChoice::Fresh).unwrap();
        assert_eq!(
            next.configs,
            vec![AbstractConfig {
                location: 0,
                values: vec![AbstractValue::Word(0); 3]
            }]
        );
        assert!(is_synchronized(&next));
        assert!(abs.post(&start, 0, DatumChoice::Seen(0)).is_err());
    }

    #[test]
    fn canonicalize_ignores_order_and_sym_names() {
        let c1 = AbstractConfig {
            location: 1,
            values: vec![AbstractValue::Sym(3), AbstractValue::Sym(7)],
        };
        let c2 = AbstractConfig {
            location: 0,
            values: vec![AbstractValue::Word(0), AbstractValue::Sym(5)],
        };
        let a = AbstractConfigSet {
            configs: vec![c1.clone(), c2.clone()],
            word_data_count: 1,
        };
        let b = AbstractConfigSet {
            configs: vec![c2, c1],
            word_data_count: 1,
        };
        let ca = canonicalize(&a);
        assert_eq!(ca, canonicalize(&b));
        assert_eq!(canonicalize(&ca), ca);
        assert_eq!(
            ca.configs[1].values,
            vec![AbstractValue::Sym(0), AbstractValue::Sym(1)]
        );
    }

    #[test]
    fn synchronized_examples() {
        let one = |values| AbstractConfigSet {
            configs: vec![AbstractConfig {
                location: 0,
                values,
            }],
            word_data_count: 4,
        };
        assert!(is_synchronized(&one(vec![AbstractValue::Word(3); 3])));
        assert!(!is_synchronized(&one(vec![AbstractValue::Sym(0)])));
        let mut two = one(vec![AbstractValue::Word(0)]);
        two.configs.push(AbstractConfig {
            location: 1,
            values: vec![AbstractValue::Word(0)],
        });
        assert!(!is_synchronized(&two));
    }

    #[test]
    fn instantiation() {
        use DatumChoice::*;
        let w = ChoiceWord::new(vec![(0, Fresh), (1, Seen(0)), (1, Fresh)]);
        assert_eq!(
            instantiate_choice_word(&w, &[1, 2]).unwrap().entries,
            vec![(0, 1), (1, 1), (1, 2)]
        );
        assert!(instantiate_choice_word(&w, &[1]).is_err());
        let fresh = ChoiceWord::new(vec![(0, Fresh); 3]);
        assert_eq!(
            instantiate_choice_word(&fresh, &[4, 5, 6]).unwrap().data(),
            vec![4, 5, 6]
        );
        assert!(instantiate_choice_word(&ChoiceWord::default(), &[])
            .unwrap()
            .is_empty());
        assert_eq!(
            instantiate_choice_word(&w, &[1, 2])
                .unwrap()
                .to_choice_word(),
            w
        );
    }

    fn random_choice_word(rng: &mut StdRng, letters: usize, len: usize) -> ChoiceWord {
        let mut fresh = 0u32;
        let mut entries = Vec::new();
        for _ in 0..len {
            let a = rng.gen_range(0..letters);
            let c = if fresh == 0 || rng.gen_bool(0.5) {
                fresh += 1;
                DatumChoice::Fresh
            } else {
                DatumChoice::Seen(rng.gen_range(0..fresh))
            };
            entries.push((a, c));
        }
        ChoiceWord::new(entries)
    }

    /// The abstract set equals the abstraction of the concrete successor set
    /// of `L × Y^k`, with `Y` the word data plus `k` extra data.
    #[test]
    fn abstraction_matches_concrete_successors() {
        let mut rng = StdRng::seed_from_u64(11);
        let shape = RandomShape::small_complete();
        for _ in 0..300 {
            let a = random_automaton(&mut rng, &shape);
            let abs = Abstraction::new(&a).unwrap();
            let len = rng.gen_range(0..=4);
            let cw = random_choice_word(&mut rng, a.alphabet.len(), len);
            let w = canonical_instance(&cw);
            let data = w.data();
            let mut pool = data.clone();
            pool.extend((0..a.registers as Datum).map(|i| 100 + i));
            let locs: Vec<Loc> = (0..a.locations.len()).collect();
            let concrete = post_set(&a, &product_set(&a, &locs, &pool), &w).unwrap();
            let expected = abstract_of(&concrete, &data);
            let got = abs.run(&abs.initial(), &cw).unwrap();
            assert_eq!(got, expected, "automaton {a:?} word {cw:?}");
        }
    }

    #[test]
    fn post_set_is_equivariant() {
        let mut rng = StdRng::seed_from_u64(5);
        let shape = RandomShape::small_complete();
        for _ in 0..200 {
            let a = random_automaton(&mut rng, &shape);
            let len = rng.gen_range(0..=4);
            let w = DataWord::new(
                (0..len)
                    .map(|_| (rng.gen_range(0..a.alphabet.len()), rng.gen_range(0..4)))
                    .collect(),
            );
            let locs: Vec<Loc> = (0..a.locations.len()).collect();
            let start = product_set(&a, &locs, &[0, 1, 2, 3]);
            let pi = |d: Datum| (d * 7 + 3) % 11 + 20;
            let moved_start: BTreeSet<_> = start
                .iter()
                .map(|q| {
                    Configuration::new(q.location, q.valuation.iter().map(|&d| pi(d)).collect())
                })
                .collect();
            let moved_word = DataWord::new(w.entries.iter().map(|&(a, d)| (a, pi(d))).collect());
            let lhs = post_set(&a, &moved_start, &moved_word).unwrap();
            let rhs: BTreeSet<_> = post_set(&a, &start, &w)
                .unwrap()
                .iter()
                .map(|q| {
                    Configuration::new(q.location, q.valuation.iter().map(|&d| pi(d)).collect())
                })
                .collect();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn membership_uses_any_initial_valuation() {
        let mut a = RegisterAutomaton::new("t", 1);
        let i = a.add_location("i");
        let f = a.add_location("f");
        a.add_letter("a");
        a.add(i, 0, Constraint::True, RegSet::all(1), f);
        a.add(f, 0, Constraint::eq(0), RegSet::EMPTY, f);
        a.acceptance = Some(crate::automaton::Acceptance {
            initial: i,
            accepting: [f].into(),
        });
        assert!(accepts(&a, &DataWord::new(vec![(0, 3), (0, 3)])).unwrap());
        assert!(!accepts(&a, &DataWord::new(vec![(0, 3), (0, 4)])).unwrap());
        assert!(!accepts(&a, &DataWord::default()).unwrap());
    }
}
