//! Browser bindings: generate a family member, look for a synchronizing
//! word, and step an automaton through a data word.

use std::fmt::Write;

use regsync::dra::{synchronizing_word_dra, DraOutcome, DEFAULT_NODE_BUDGET};
use regsync::dsl::{parse_automaton, parse_word, serialize_automaton, Format, SourceDocument};
use regsync::gadgets::{gen_chain_dra, gen_counter_nra, gen_three_data_shortcut, gen_tower_nra};
use regsync::search::{bounded_sync_search, SearchBudget, SearchOutcome};
use regsync::semantics::{is_synchronized, Abstraction};
use regsync::RegisterAutomaton;
use wasm_bindgen::prelude::*;

const SEARCH_LENGTH: usize = 12;
const SEARCH_NODES: u64 = 300_000;

fn load(text: &str) -> Result<RegisterAutomaton, String> {
    let a = parse_automaton(&SourceDocument::inline(text)).map_err(|e| e.to_string())?;
    let problems = a.validate();
    if let Some(d) = problems.first() {
        return Err(d.to_string());
    }
    Ok(a)
}

pub fn generate_text(family: &str, n: usize) -> Result<String, String> {
    let a = match family {
        "chain" => gen_chain_dra(n),
        "counter" => gen_counter_nra(n),
        "tower" => gen_tower_nra(n),
        "shortcut" => Ok(gen_three_data_shortcut()),
        other => return Err(format!("unknown family {other}")),
    }
    .map_err(|e| e.to_string())?;
    Ok(serialize_automaton(&a, Format::Dsl))
}

/// Exact procedure for complete deterministic input, bounded search otherwise.
pub fn analyze_text(text: &str) -> Result<String, String> {
    let a = load(text)?;
    let mut out = String::new();
    let complete = a.is_complete().map_err(|e| e.to_string())?;
    let deterministic = a.is_deterministic().map_err(|e| e.to_string())?;
    let _ = writeln!(
        out,
        "{} locations, {} registers, {} letters; {}complete, {}deterministic",
        a.locations.len(),
        a.registers,
        a.alphabet.len(),
        if complete { "" } else { "not " },
        if deterministic { "" } else { "not " }
    );
    if !complete {
        out.push_str("synchronization needs a complete automaton\n");
        return Ok(out);
    }
    if deterministic {
        match synchronizing_word_dra(&a, DEFAULT_NODE_BUDGET).map_err(|e| e.to_string())? {
            DraOutcome::Synchronizing(w) => {
                let _ = writeln!(out, "synchronizing word: {}", w.display(&a));
                let _ = writeln!(out, "distinct data: {}", w.efficiency());
            }
            DraOutcome::NoSyncWord => out.push_str("no synchronizing word exists\n"),
        }
        return Ok(out);
    }
    let budget = SearchBudget::new(SEARCH_LENGTH).with_nodes(SEARCH_NODES);
    let report = bounded_sync_search(&a, &budget).map_err(|e| e.to_string())?;
    match &report.outcome {
        SearchOutcome::Witness { word, .. } => {
            let _ = writeln!(out, "shortest synchronizing word: {}", word.display(&a));
            let _ = writeln!(out, "distinct data: {}", word.efficiency());
        }
        SearchOutcome::NoneWithinBound if report.stats.space_exhausted => {
            out.push_str("no synchronizing word exists\n")
        }
        SearchOutcome::NoneWithinBound => {
            let _ = writeln!(out, "none up to length {SEARCH_LENGTH}");
        }
        SearchOutcome::BudgetExhausted { explored } => {
            let _ = writeln!(out, "gave up after {explored} nodes");
        }
    }
    Ok(out)
}

/// Successors of every configuration after `word`, data outside the word
/// shown as `?i`.
pub fn simulate_text(text: &str, word: &str) -> Result<String, String> {
    let a = load(text)?;
    let w = parse_word(&a, word).map_err(|e| e.to_string())?;
    let abs = Abstraction::new(&a).map_err(|e| e.to_string())?;
    let end = abs
        .run(&abs.initial(), &w.to_choice_word())
        .map_err(|e| e.to_string())?;
    let mut out = end.display(&a, &w.data()).to_string();
    out.push('\n');
    if is_synchronized(&end) {
        out.push_str("synchronized\n");
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn generate(family: &str, n: usize) -> Result<String, JsValue> {
    generate_text(family, n).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn analyze(text: &str) -> Result<String, JsValue> {
    analyze_text(text).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn simulate(text: &str, word: &str) -> Result<String, JsValue> {
    simulate_text(text, word).map_err(|e| JsValue::from_str(&e))
}
