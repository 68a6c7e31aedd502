//! The register automaton model: guards, valuations, transitions and the
//! structural checks (well-formedness, completeness, determinism).

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A data value. Only equality between data is ever observed.
pub type Datum = u32;
/// Index of a location.
pub type Loc = usize;
/// Index of an alphabet symbol.
pub type Letter = usize;

/// Largest register count accepted by the model (update sets are bitmasks).
pub const MAX_REGISTERS: usize = 32;
/// Largest register count for analyses that enumerate all `2^k` atom assignments.
pub const MAX_ANALYSIS_REGISTERS: usize = 6;

/// A set of register indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RegSet(pub u32);

impl RegSet {
    pub const EMPTY: RegSet = RegSet(0);

    pub fn all(k: usize) -> RegSet {
        if k >= 32 {
            RegSet(u32::MAX)
        } else {
            RegSet((1u32 << k) - 1)
        }
    }

    pub fn single(r: usize) -> RegSet {
        RegSet(1 << r)
    }

    pub fn contains(self, r: usize) -> bool {
        r < 32 && self.0 >> r & 1 == 1
    }

    pub fn with(self, r: usize) -> RegSet {
        RegSet(self.0 | 1 << r)
    }

    pub fn union(self, other: RegSet) -> RegSet {
        RegSet(self.0 | other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&r| self.contains(r))
    }
}

impl FromIterator<usize> for RegSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        iter.into_iter().fold(RegSet::EMPTY, RegSet::with)
    }
}

impl fmt::Debug for RegSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Guard over the atoms `=r`: true when the input datum equals register `r`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Constraint {
    True,
    Eq(usize),
    And(Box<Constraint>, Box<Constraint>),
    Not(Box<Constraint>),
}

impl Constraint {
    pub fn eq(r: usize) -> Constraint {
        Constraint::Eq(r)
    }

    pub fn ne(r: usize) -> Constraint {
        Constraint::not(Constraint::Eq(r))
    }

    pub fn not(c: Constraint) -> Constraint {
        Constraint::Not(Box::new(c))
    }

    pub fn and(a: Constraint, b: Constraint) -> Constraint {
        Constraint::And(Box::new(a), Box::new(b))
    }

    /// Disjunction, encoded as `!(!a & !b)`.
    pub fn or(a: Constraint, b: Constraint) -> Constraint {
        Constraint::not(Constraint::and(Constraint::not(a), Constraint::not(b)))
    }

    /// Left-nested conjunction; `True` for an empty iterator.
    pub fn all<I: IntoIterator<Item = Constraint>>(parts: I) -> Constraint {
        parts
            .into_iter()
            .reduce(Constraint::and)
            .unwrap_or(Constraint::True)
    }

    /// Left-nested disjunction; `!true` for an empty iterator.
    pub fn any<I: IntoIterator<Item = Constraint>>(parts: I) -> Constraint {
        parts
            .into_iter()
            .reduce(Constraint::or)
            .unwrap_or_else(|| Constraint::not(Constraint::True))
    }

    /// The guard satisfied by exactly one atom assignment: registers in
    /// `sigma` equal the input, the other registers below `k` differ from it.
    pub fn minterm(sigma: RegSet, k: usize) -> Constraint {
        Constraint::all((0..k).map(|r| {
            if sigma.contains(r) {
                Constraint::eq(r)
            } else {
                Constraint::ne(r)
            }
        }))
    }

    /// Truth under an atom assignment (`sigma` holds the registers equal to the input).
    pub fn holds(&self, sigma: RegSet) -> bool {
        match self {
            Constraint::True => true,
            Constraint::Eq(r) => sigma.contains(*r),
            Constraint::And(a, b) => a.holds(sigma) && b.holds(sigma),
            Constraint::Not(a) => !a.holds(sigma),
        }
    }

    /// Bit `s` of the result is set iff the guard holds under assignment `s`.
    pub fn truth_table(&self, k: usize) -> u64 {
        debug_assert!(k <= MAX_ANALYSIS_REGISTERS);
        (0..1u32 << k)
            .filter(|&s| self.holds(RegSet(s)))
            .fold(0u64, |acc, s| acc | 1 << s)
    }

    pub fn max_register(&self) -> Option<usize> {
        match self {
            Constraint::True => None,
            Constraint::Eq(r) => Some(*r),
            Constraint::And(a, b) => a.max_register().max(b.max_register()),
            Constraint::Not(a) => a.max_register(),
        }
    }
}

/// Evaluates a guard against a valuation and an input datum.
pub fn eval_constraint(guard: &Constraint, valuation: &[Datum], input: Datum) -> Result<bool> {
    Ok(match guard {
        Constraint::True => true,
        Constraint::Eq(r) => {
            let v = valuation.get(*r).ok_or_else(|| {
                Error::Structural(format!(
                    "guard reads r{r} but the valuation has {} registers",
                    valuation.len()
                ))
            })?;
            *v == input
        }
        Constraint::And(a, b) => {
            eval_constraint(a, valuation, input)? && eval_constraint(b, valuation, input)?
        }
        Constraint::Not(a) => !eval_constraint(a, valuation, input)?,
    })
}

/// `valuation[update := input]`.
pub fn apply_update(valuation: &[Datum], update: RegSet, input: Datum) -> Vec<Datum> {
    valuation
        .iter()
        .enumerate()
        .map(|(r, &v)| if update.contains(r) { input } else { v })
        .collect()
}

/// The atom assignment induced by a valuation and an input.
pub fn assignment_of(valuation: &[Datum], input: Datum) -> RegSet {
    valuation
        .iter()
        .enumerate()
        .filter(|(_, &v)| v == input)
        .map(|(r, _)| r)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub source: Loc,
    pub letter: Letter,
    pub guard: Constraint,
    pub update: RegSet,
    pub target: Loc,
}

impl Transition {
    pub fn new(
        source: Loc,
        letter: Letter,
        guard: Constraint,
        update: RegSet,
        target: Loc,
    ) -> Self {
        Transition {
            source,
            letter,
            guard,
            update,
            target,
        }
    }
}

/// Initial location and accepting locations, for language questions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Acceptance {
    pub initial: Loc,
    pub accepting: BTreeSet<Loc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RegisterAutomaton {
    pub name: String,
    pub locations: Vec<String>,
    pub registers: usize,
    pub alphabet: Vec<String>,
    pub transitions: Vec<Transition>,
    pub acceptance: Option<Acceptance>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DiagnosticKind {
    DanglingId,
    DuplicateName,
    RegisterOutOfRange,
    InitialUpdateRule,
    TooManyRegisters,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

/// A cell `(location, letter, atom assignment)` of the finite guard table.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub location: Loc,
    pub letter: Letter,
    pub assignment: RegSet,
}

impl RegisterAutomaton {
    pub fn new(name: impl Into<String>, registers: usize) -> Self {
        RegisterAutomaton {
            name: name.into(),
            locations: Vec::new(),
            registers,
            alphabet: Vec::new(),
            transitions: Vec::new(),
            acceptance: None,
        }
    }

    pub fn add_location(&mut self, name: impl Into<String>) -> Loc {
        self.locations.push(name.into());
        self.locations.len() - 1
    }

    pub fn add_letter(&mut self, name: impl Into<String>) -> Letter {
        self.alphabet.push(name.into());
        self.alphabet.len() - 1
    }

    pub fn add(
        &mut self,
        source: Loc,
        letter: Letter,
        guard: Constraint,
        update: RegSet,
        target: Loc,
    ) {
        self.transitions
            .push(Transition::new(source, letter, guard, update, target));
    }

    pub fn location_id(&self, name: &str) -> Option<Loc> {
        self.locations.iter().position(|l| l == name)
    }

    pub fn letter_id(&self, name: &str) -> Option<Letter> {
        self.alphabet.iter().position(|a| a == name)
    }

    pub fn all_registers(&self) -> RegSet {
        RegSet::all(self.registers)
    }

    pub fn is_accepting(&self, location: Loc) -> bool {
        self.acceptance
            .as_ref()
            .is_some_and(|acc| acc.accepting.contains(&location))
    }

    pub fn outgoing(&self, location: Loc) -> impl Iterator<Item = &Transition> {
        self.transitions
            .iter()
            .filter(move |t| t.source == location)
    }

    /// Structural diagnostics; empty iff the automaton is well formed.
    pub fn validate(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut push = |kind, message: String| out.push(Diagnostic { kind, message });
        if self.registers > MAX_REGISTERS {
            push(
                DiagnosticKind::TooManyRegisters,
                format!(
                    "{} registers exceed the supported {MAX_REGISTERS}",
                    self.registers
                ),
            );
        }
        for (what, names) in [("location", &self.locations), ("letter", &self.alphabet)] {
            let mut seen = BTreeSet::new();
            for n in names {
                if !seen.insert(n) {
                    push(
                        DiagnosticKind::DuplicateName,
                        format!("duplicate {what} name `{n}`"),
                    );
                }
            }
        }
        let nloc = self.locations.len();
        for (i, t) in self.transitions.iter().enumerate() {
            if t.source >= nloc {
                push(
                    DiagnosticKind::DanglingId,
                    format!("transition {i}: unknown source location {}", t.source),
                );
            }
            if t.target >= nloc {
                push(
                    DiagnosticKind::DanglingId,
                    format!("transition {i}: unknown target location {}", t.target),
                );
            }
            if t.letter >= self.alphabet.len() {
                push(
                    DiagnosticKind::DanglingId,
                    format!("transition {i}: unknown letter {}", t.letter),
                );
            }
            if let Some(r) = t.guard.max_register().filter(|&r| r >= self.registers) {
                push(
                    DiagnosticKind::RegisterOutOfRange,
                    format!(
                        "transition {i}: guard register r{r} out of range for {} registers",
                        self.registers
                    ),
                );
            }
            if let Some(r) = t.update.iter().find(|&r| r >= self.registers) {
                push(
                    DiagnosticKind::RegisterOutOfRange,
                    format!(
                        "transition {i}: update register r{r} out of range for {} registers",
                        self.registers
                    ),
                );
            }
        }
        if let Some(acc) = &self.acceptance {
            if acc.initial >= nloc {
                push(
                    DiagnosticKind::DanglingId,
                    format!("unknown initial location {}", acc.initial),
                );
            }
            for &l in acc.accepting.iter().filter(|&&l| l >= nloc) {
                push(
                    DiagnosticKind::DanglingId,
                    format!("unknown accepting location {l}"),
                );
            }
            let all = self.all_registers();
            for (i, t) in self.transitions.iter().enumerate() {
                if t.source == acc.initial && t.update.0 & all.0 != all.0 {
                    push(
                        DiagnosticKind::InitialUpdateRule,
                        format!("transition {i} leaves the initial location without updating every register"),
                    );
                }
            }
        }
        out
    }

    /// Fails with a structural error listing the diagnostics, if any.
    pub fn check(&self) -> Result<()> {
        let diags = self.validate();
        if diags.is_empty() {
            Ok(())
        } else {
            let msgs: Vec<String> = diags.iter().map(|d| d.message.clone()).collect();
            Err(Error::Structural(msgs.join("; ")))
        }
    }

    fn cells(&self) -> Result<impl Iterator<Item = Cell> + '_> {
        require_analysis_registers(self.registers)?;
        let sigmas = 1u32 << self.registers;
        Ok((0..self.locations.len()).flat_map(move |location| {
            (0..self.alphabet.len()).flat_map(move |letter| {
                (0..sigmas).map(move |s| Cell {
                    location,
                    letter,
                    assignment: RegSet(s),
                })
            })
        }))
    }

    fn enabled_count(&self, cell: Cell) -> usize {
        self.transitions
            .iter()
            .filter(|t| {
                t.source == cell.location
                    && t.letter == cell.letter
                    && t.guard.holds(cell.assignment)
            })
            .count()
    }

    /// A cell with no enabled transition, if any.
    pub fn incomplete_cell(&self) -> Result<Option<Cell>> {
        Ok(self.cells()?.find(|&c| self.enabled_count(c) == 0))
    }

    /// A cell with two or more enabled transitions, if any.
    pub fn nondeterministic_cell(&self) -> Result<Option<Cell>> {
        Ok(self.cells()?.find(|&c| self.enabled_count(c) > 1))
    }

    pub fn is_complete(&self) -> Result<bool> {
        Ok(self.incomplete_cell()?.is_none())
    }

    pub fn is_deterministic(&self) -> Result<bool> {
        Ok(self.nondeterministic_cell()?.is_none())
    }
}

pub(crate) fn require_analysis_registers(k: usize) -> Result<()> {
    if k > MAX_ANALYSIS_REGISTERS {
        Err(Error::Resource(format!(
            "{k} registers exceed the analysis cap of {MAX_ANALYSIS_REGISTERS}"
        )))
    } else {
        Ok(())
    }
}

/// Adds a sink location receiving every uncovered cell. Returns the input
/// unchanged when it is already complete.
pub fn complete_with_sink(automaton: &RegisterAutomaton) -> Result<RegisterAutomaton> {
    complete_with_sink_except(automaton, &[])
}

/// As [`complete_with_sink`], leaving the cells of `skip` untouched.
pub(crate) fn complete_with_sink_except(
    automaton: &RegisterAutomaton,
    skip: &[Loc],
) -> Result<RegisterAutomaton> {
    require_analysis_registers(automaton.registers)?;
    let k = automaton.registers;
    let everything = if k == 6 {
        u64::MAX
    } else {
        (1u64 << (1 << k)) - 1
    };
    let mut holes = Vec::new();
    for l in (0..automaton.locations.len()).filter(|l| !skip.contains(l)) {
        for a in 0..automaton.alphabet.len() {
            let covered = automaton
                .transitions
                .iter()
                .filter(|t| t.source == l && t.letter == a)
                .fold(0u64, |acc, t| acc | t.guard.truth_table(k));
            if covered != everything {
                holes.push((l, a, everything & !covered));
            }
        }
    }
    if holes.is_empty() {
        return Ok(automaton.clone());
    }
    let mut out = automaton.clone();
    let mut name = "sink".to_string();
    let mut suffix = 1;
    while out.location_id(&name).is_some() {
        name = format!("sink{suffix}");
        suffix += 1;
    }
    let sink = out.add_location(name);
    let initial = out.acceptance.as_ref().map(|acc| acc.initial);
    for (l, a, missing) in holes {
        let guard = if missing == everything {
            Constraint::True
        } else {
            Constraint::any(
                (0..1u32 << k)
                    .filter(|&s| missing >> s & 1 == 1)
                    .map(|s| Constraint::minterm(RegSet(s), k)),
            )
        };
        let update = if Some(l) == initial {
            RegSet::all(k)
        } else {
            RegSet::EMPTY
        };
        out.add(l, a, guard, update, sink);
    }
    for a in 0..out.alphabet.len() {
        out.add(sink, a, Constraint::True, RegSet::EMPTY, sink);
    }
    Ok(out)
}

/// Guard tables compiled for fast stepping: for each `(location, letter)`
/// the enabled edges as truth tables over atom assignments.
#[derive(Clone, Debug)]
pub struct StepTable {
    registers: usize,
    locations: usize,
    letters: usize,
    cells: Vec<Vec<Edge>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub truth: u64,
    pub update: RegSet,
    pub target: Loc,
}

impl Edge {
    pub fn enabled(&self, sigma: RegSet) -> bool {
        self.truth >> sigma.0 & 1 == 1
    }
}

impl StepTable {
    pub fn new(automaton: &RegisterAutomaton) -> Result<Self> {
        automaton.check()?;
        require_analysis_registers(automaton.registers)?;
        let letters = automaton.alphabet.len();
        let mut cells = vec![Vec::new(); automaton.locations.len() * letters];
        for t in &automaton.transitions {
            let truth = t.guard.truth_table(automaton.registers);
            if truth != 0 {
                cells[t.source * letters + t.letter].push(Edge {
                    truth,
                    update: t.update,
                    target: t.target,
                });
            }
        }
        Ok(StepTable {
            registers: automaton.registers,
            locations: automaton.locations.len(),
            letters,
            cells,
        })
    }

    pub fn registers(&self) -> usize {
        self.registers
    }

    pub fn locations(&self) -> usize {
        self.locations
    }

    pub fn letters(&self) -> usize {
        self.letters
    }

    pub fn edges(&self, location: Loc, letter: Letter) -> &[Edge] {
        &self.cells[location * self.letters + letter]
    }
}
