//! Enumeration split across root-floret candidates on scoped threads.

use std::thread;

use staged_core::{Enumerator, EquivalenceClass, EventTree, SupportSet};

use crate::error::CliError;

/// The same class as `Enumerator::run`, computed on up to `jobs` threads.
/// Each thread owns its memo; results are merged and sorted canonically.
pub fn equivalence_class(
    support: &SupportSet,
    include_unstaged: bool,
    jobs: usize,
) -> Result<EquivalenceClass, CliError> {
    let base = Enumerator::new(support)?.include_unstaged(include_unstaged);
    let candidates = base.root_candidates();
    if jobs <= 1 || candidates.len() <= 1 {
        return Ok(base.clone().run());
    }
    let workers = jobs.min(candidates.len());
    let trees: Vec<EventTree> = thread::scope(|scope| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let mut e = base.clone();
                let mine: Vec<_> = candidates
                    .iter()
                    .skip(w)
                    .step_by(workers)
                    .cloned()
                    .collect();
                scope.spawn(move || {
                    mine.iter()
                        .flat_map(|root| e.trees_with_root(root))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| {
                h.join()
                    .map_err(|_| CliError::Internal("worker thread panicked".into()))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(|parts| parts.into_iter().flatten().collect())
    })?;
    Ok(EquivalenceClass::from_trees(support.clone(), trees))
}
