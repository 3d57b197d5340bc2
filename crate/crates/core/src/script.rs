//! Derivation scripts: a start set plus a sequence of transition labels.

use thiserror::Error;

use crate::lset::LSet;
use crate::transition::{apply_set, TransitionError, TransitionLabel};

/// Replay failure, naming the offending step.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("step {step} ({label}): {source}")]
pub struct ReplayError {
    /// 0-based index into the step list.
    pub step: usize,
    pub label: TransitionLabel,
    pub source: TransitionError,
}

/// A witnessed multi-step derivation: applying `steps` in order to `start`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DerivationScript {
    pub start: LSet,
    pub steps: Vec<TransitionLabel>,
}

impl DerivationScript {
    pub fn new(start: LSet, steps: Vec<TransitionLabel>) -> Self {
        DerivationScript { start, steps }
    }

    /// The full state sequence, starting with `start`.
    ///
    /// Each step must be in bounds for the length of the preceding state;
    /// the empty set propagates through further steps (with its nominal
    /// length updated) rather than erroring.
    pub fn replay(&self) -> Result<Vec<LSet>, ReplayError> {
        replay(&self.start, &self.steps)
    }

    /// The final state of the replay.
    pub fn final_state(&self) -> Result<LSet, ReplayError> {
        Ok(self.replay()?.pop().expect("replay includes the start"))
    }
}

/// See [`DerivationScript::replay`].
pub fn replay(start: &LSet, steps: &[TransitionLabel]) -> Result<Vec<LSet>, ReplayError> {
    let mut states = Vec::with_capacity(steps.len() + 1);
    states.push(start.clone());
    for (step, &label) in steps.iter().enumerate() {
        let current = states.last().expect("nonempty");
        let next = apply_set(current, label).map_err(|source| ReplayError {
            step,
            label,
            source,
        })?;
        states.push(next);
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    fn alpha() -> Alphabet {
        Alphabet::default()
    }

    fn labels(pairs: &[(usize, usize)]) -> Vec<TransitionLabel> {
        pairs
            .iter()
            .map(|&(i, j)| TransitionLabel::new(i, j).unwrap())
            .collect()
    }

    #[test]
    fn empty_script_is_identity() {
        let start = LSet::start(alpha()).unwrap();
        let states = replay(&start, &[]).unwrap();
        assert_eq!(states, vec![start]);
    }

    #[test]
    fn single_step() {
        let start = LSet::start(alpha()).unwrap();
        let states = replay(&start, &labels(&[(1, 3)])).unwrap();
        assert_eq!(states[1], LSet::from_strs(alpha(), 3, &["adb"]).unwrap());
    }

    #[test]
    fn empty_set_propagates() {
        let start = LSet::from_strs(alpha(), 4, &["acbd"]).unwrap();
        let states = replay(&start, &labels(&[(1, 4), (1, 2)])).unwrap();
        assert_eq!(states.len(), 3);
        assert!(states[1].is_empty());
        assert_eq!(states[1].len(), 3);
        assert!(states[2].is_empty());
        assert_eq!(states[2].len(), 4);
    }

    #[test]
    fn bad_step_names_index() {
        let start = LSet::start(alpha()).unwrap();
        let err = replay(&start, &labels(&[(1, 3), (2, 5)])).unwrap_err();
        assert_eq!(err.step, 1);
        assert!(matches!(
            err.source,
            TransitionError::EndBeyondLength { j: 5, len: 3 }
        ));
    }
}
