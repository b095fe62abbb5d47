//! Formula generators for exhaustive and randomized testing and benchmarks.

use rand::Rng;

use crate::formula::{Formula, Letter};

/// Every formula over `letters` with at most `max_connectives` `Not`/`Or`
/// nodes, ordered by connective count.
pub fn enumerate(letters: &[Letter], max_connectives: usize) -> Vec<Formula> {
    // by_size[c] holds the formulas with exactly c connectives
    let mut by_size: Vec<Vec<Formula>> = Vec::with_capacity(max_connectives + 1);
    by_size.push(letters.iter().cloned().map(Formula::Atom).collect());
    for c in 1..=max_connectives {
        let mut level: Vec<Formula> = by_size[c - 1].iter().cloned().map(Formula::not).collect();
        for left in 0..c {
            let right = c - 1 - left;
            for a in &by_size[left] {
                for b in &by_size[right] {
                    level.push(Formula::or(a.clone(), b.clone()));
                }
            }
        }
        by_size.push(level);
    }
    by_size.into_iter().flatten().collect()
}

/// A random formula of depth at most `max_depth`. Below the depth limit
/// each node is a letter, a negation or a disjunction with equal
/// probability; at the limit it is a letter.
pub fn random_formula<R: Rng + ?Sized>(
    rng: &mut R,
    letters: &[Letter],
    max_depth: usize,
) -> Formula {
    assert!(!letters.is_empty(), "need at least one letter");
    let kind = if max_depth == 0 {
        0
    } else {
        rng.random_range(0..3)
    };
    match kind {
        0 => Formula::Atom(letters[rng.random_range(0..letters.len())].clone()),
        1 => Formula::not(random_formula(rng, letters, max_depth - 1)),
        _ => {
            let a = random_formula(rng, letters, max_depth - 1);
            let b = random_formula(rng, letters, max_depth - 1);
            Formula::or(a, b)
        }
    }
}

/// Letters from a list of names; panics on an invalid name.
pub fn letters(names: &[&str]) -> Vec<Letter> {
    names
        .iter()
        .map(|n| Letter::new(n).expect("valid letter name"))
        .collect()
}

#[cfg(test)]
pub(crate) fn arb_formula(
    num_letters: usize,
    depth: u32,
) -> impl proptest::strategy::Strategy<Value = Formula> {
    use proptest::prelude::*;
    let names: Vec<Letter> = letters(&["L", "M", "N", "P", "Q", "R"][..num_letters]);
    let leaf = proptest::sample::select(names).prop_map(Formula::Atom);
    leaf.prop_recursive(depth, 64, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::or(a, b)),
        ]
    })
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;
    use rand::SeedableRng;

    #[test]
    fn enumeration_counts() {
        // N(0) = k, N(c) = N(c-1) + sum_{a+b=c-1} N(a) N(b)
        let two = letters(&["L", "M"]);
        assert_eq!(enumerate(&two, 0).len(), 2);
        assert_eq!(enumerate(&two, 1).len(), 2 + 6);
        assert_eq!(enumerate(&two, 4).len(), 2 + 6 + 30 + 186 + 1290);
        let all = enumerate(&two, 4);
        let distinct: HashSet<&Formula> = all.iter().collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.iter().all(|f| f.connectives() <= 4));
    }

    #[test]
    fn random_depth_bound() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let ls = letters(&["L", "M", "N"]);
        fn depth(f: &Formula) -> usize {
            match f {
                Formula::Atom(_) => 0,
                Formula::Not(x) => 1 + depth(x),
                Formula::Or(a, b) => 1 + depth(a).max(depth(b)),
            }
        }
        for _ in 0..200 {
            assert!(depth(&random_formula(&mut rng, &ls, 8)) <= 8);
        }
    }
}
