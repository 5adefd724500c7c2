use std::sync::Arc;

use rand::Rng;

use super::{GameTree, InfoSetId, Player, ProfileLayout};
use crate::error::{Error, Result};

/// Tolerance for a behaviour distribution summing to one.
pub const PROFILE_TOLERANCE: f64 = 1e-9;

/// Behaviour strategies of both players: a distribution over actions at
/// every information set, stored flat in the tree's slot order.
#[derive(Clone, Debug, PartialEq)]
pub struct BehaviorProfile {
    layout: Arc<ProfileLayout>,
    probs: Vec<f64>,
}

impl BehaviorProfile {
    pub fn uniform(tree: &GameTree) -> Self {
        let layout = Arc::clone(tree.layout());
        let mut probs = vec![0.0; layout.slot_count()];
        for id in tree.infoset_ids() {
            let range = layout.range(id);
            let p = 1.0 / range.len() as f64;
            probs[range].fill(p);
        }
        BehaviorProfile { layout, probs }
    }

    /// Each information set drawn uniformly from the simplex, then mapped
    /// into the ε-simplex `ε + (1 − |A|ε)·x`.
    pub fn random<R: Rng + ?Sized>(tree: &GameTree, epsilon: f64, rng: &mut R) -> Self {
        let mut profile = Self::uniform(tree);
        for id in tree.infoset_ids() {
            let row = profile.get_mut(id);
            let k = row.len() as f64;
            for p in row.iter_mut() {
                // Exp(1) draws normalised give a flat Dirichlet sample.
                let u: f64 = rng.random();
                *p = -(1.0 - u).ln();
            }
            let total: f64 = row.iter().sum();
            for p in row.iter_mut() {
                let x = if total > 0.0 { *p / total } else { 1.0 / k };
                *p = epsilon + (1.0 - k * epsilon) * x;
            }
        }
        profile
    }

    /// Builds a profile from per-information-set rows in tree order.
    pub fn from_rows(tree: &GameTree, rows: Vec<Vec<f64>>) -> Result<Self> {
        let layout = Arc::clone(tree.layout());
        if rows.len() != layout.infoset_count() {
            return Err(Error::Profile(format!(
                "expected {} information sets, got {}",
                layout.infoset_count(),
                rows.len()
            )));
        }
        let mut probs = Vec::with_capacity(layout.slot_count());
        for (i, row) in rows.into_iter().enumerate() {
            let expected = layout.range(InfoSetId(i as u32)).len();
            if row.len() != expected {
                return Err(Error::Profile(format!(
                    "information set {} ({}) has {} actions, got {} probabilities",
                    i,
                    tree.infoset(InfoSetId(i as u32)).key,
                    expected,
                    row.len()
                )));
            }
            probs.extend(row);
        }
        Ok(BehaviorProfile { layout, probs })
    }

    pub(crate) fn from_flat(layout: Arc<ProfileLayout>, probs: Vec<f64>) -> Self {
        debug_assert_eq!(probs.len(), layout.slot_count());
        BehaviorProfile { layout, probs }
    }

    pub fn get(&self, infoset: InfoSetId) -> &[f64] {
        &self.probs[self.layout.range(infoset)]
    }

    pub fn get_mut(&mut self, infoset: InfoSetId) -> &mut [f64] {
        let range = self.layout.range(infoset);
        &mut self.probs[range]
    }

    pub fn prob(&self, infoset: InfoSetId, action: usize) -> f64 {
        self.get(infoset)[action]
    }

    /// All probabilities in slot order.
    pub fn as_slice(&self) -> &[f64] {
        &self.probs
    }

    pub(crate) fn as_mut_slice(&mut self) -> &mut [f64] {
        &mut self.probs
    }

    pub fn layout(&self) -> &Arc<ProfileLayout> {
        &self.layout
    }

    pub fn infoset_count(&self) -> usize {
        self.layout.infoset_count()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[f64]> + '_ {
        (0..self.infoset_count() as u32).map(move |i| self.get(InfoSetId(i)))
    }

    /// Replaces `player`'s rows with those of `other`.
    pub fn splice(&mut self, tree: &GameTree, player: Player, other: &BehaviorProfile) {
        for id in tree.infosets_of(player) {
            let range = self.layout.range(id);
            self.probs[range.clone()].copy_from_slice(&other.probs[range]);
        }
    }

    /// Checks non-negativity, normalisation within `PROFILE_TOLERANCE`, and
    /// the ε floor, and that the profile matches `tree`'s layout.
    pub fn check(&self, tree: &GameTree, epsilon: f64) -> Result<()> {
        if *self.layout != **tree.layout() {
            return Err(Error::Profile("profile layout does not match game".into()));
        }
        for id in tree.infoset_ids() {
            let row = self.get(id);
            let key = &tree.infoset(id).key;
            if let Some(p) = row.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
                return Err(Error::Profile(format!("{key}: invalid probability {p}")));
            }
            let sum: f64 = row.iter().sum();
            if (sum - 1.0).abs() > PROFILE_TOLERANCE {
                return Err(Error::Profile(format!("{key}: probabilities sum to {sum}")));
            }
            if epsilon > 0.0 {
                if let Some(p) = row.iter().find(|p| **p < epsilon - PROFILE_TOLERANCE) {
                    return Err(Error::Profile(format!(
                        "{key}: probability {p} below epsilon {epsilon}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Largest absolute difference over all slots.
    pub fn sup_distance(&self, other: &BehaviorProfile) -> f64 {
        self.probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
