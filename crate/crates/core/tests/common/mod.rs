//! Brute-force semantics written independently of the library's evaluator.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use tautology::Formula;

pub type Env = HashMap<String, bool>;

pub fn letter_names(fs: &[&Formula]) -> Vec<String> {
    fn walk(f: &Formula, acc: &mut BTreeSet<String>) {
        match f {
            Formula::Atom(l) => {
                acc.insert(l.as_str().to_owned());
            }
            Formula::Not(x) => walk(x, acc),
            Formula::Or(a, b) => {
                walk(a, acc);
                walk(b, acc);
            }
        }
    }
    let mut acc = BTreeSet::new();
    for f in fs {
        walk(f, &mut acc);
    }
    acc.into_iter().collect()
}

pub fn all_envs(names: &[String]) -> Vec<Env> {
    (0..1u32 << names.len())
        .map(|bits| {
            names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.clone(), bits & (1 << i) != 0))
                .collect()
        })
        .collect()
}

pub fn holds(f: &Formula, env: &Env) -> bool {
    match f {
        Formula::Atom(l) => env[l.as_str()],
        Formula::Not(x) => !holds(x, env),
        Formula::Or(a, b) => holds(a, env) || holds(b, env),
    }
}

pub fn is_tautology(f: &Formula) -> bool {
    all_envs(&letter_names(&[f]))
        .iter()
        .all(|env| holds(f, env))
}

/// Right fold with `Or`, written out here rather than borrowed from the
/// library.
pub fn rjoin(items: &[Formula]) -> Formula {
    let (last, init) = items.split_last().expect("nonempty");
    let mut acc = last.clone();
    for item in init.iter().rev() {
        acc = Formula::or(item.clone(), acc);
    }
    acc
}

pub fn report(criterion: &str, failures: &[String]) {
    if failures.is_empty() {
        println!("[PASS] {criterion}");
    } else {
        println!("[FAIL] {criterion}: {} failures", failures.len());
        for f in failures.iter().take(10) {
            println!("       {f}");
        }
    }
}
