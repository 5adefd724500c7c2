use serde::Serialize;

use crate::game::eval::Workspace;
use crate::game::{BehaviorProfile, GameTree, InfoSetId, Player};

/// Which action pairs to difference at each information set.
#[derive(Clone, Debug, Default, PartialEq)]
pub enum GapPairs {
    /// Last action minus first: bet − check, call − fold, raise − fold.
    #[default]
    LastMinusFirst,
    /// `(better, worse)` action labels, applied wherever both labels exist.
    Labels(Vec<(String, String)>),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GapEntry {
    pub infoset: InfoSetId,
    pub key: String,
    /// Opponent-and-chance reach `P⁻ⁱ(I)`.
    pub opp_reach: f64,
    /// Normalised action utilities; `None` when the set has zero reach.
    pub utilities: Option<Vec<f64>>,
    /// `(label, U(better) − U(worse))`, with `None` at zero reach.
    pub gaps: Vec<(String, Option<f64>)>,
}

impl GapEntry {
    pub fn is_reachable(&self) -> bool {
        self.utilities.is_some()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct UtilityGapReport {
    pub entries: Vec<GapEntry>,
}

impl UtilityGapReport {
    pub fn entry(&self, key: &str) -> Option<&GapEntry> {
        self.entries.iter().find(|e| e.key == key)
    }
}

/// Normalised action utilities and their designated differences at every
/// information set.
pub fn utility_gap_report(
    tree: &GameTree,
    profile: &BehaviorProfile,
    pairs: &GapPairs,
) -> UtilityGapReport {
    tree.assert_well_formed();
    let mut ws = Workspace::new(tree);
    ws.load(profile.as_slice());
    // Per player: opponent reach of every node and counterfactual values.
    let per_player = Player::BOTH.map(|p| {
        ws.counterfactual_for(tree, p);
        (ws.opp.clone(), ws.cf.clone())
    });
    let entries = tree
        .infoset_ids()
        .map(|id| {
            let set = tree.infoset(id);
            let (reach, cf) = &per_player[set.owner.index()];
            let opp_reach: f64 = set.members.iter().map(|m| reach[m.index()]).sum();
            let utilities = (opp_reach > 0.0).then(|| {
                cf[tree.layout().range(id)]
                    .iter()
                    .map(|u| u / opp_reach)
                    .collect::<Vec<f64>>()
            });
            let labels = &set.action_labels;
            let index_pairs: Vec<(usize, usize)> = match pairs {
                GapPairs::LastMinusFirst if labels.len() >= 2 => vec![(labels.len() - 1, 0)],
                GapPairs::LastMinusFirst => Vec::new(),
                GapPairs::Labels(wanted) => wanted
                    .iter()
                    .filter_map(|(hi, lo)| {
                        let hi = labels.iter().position(|l| l == hi)?;
                        let lo = labels.iter().position(|l| l == lo)?;
                        Some((hi, lo))
                    })
                    .collect(),
            };
            let gaps = index_pairs
                .into_iter()
                .map(|(hi, lo)| {
                    let label = format!("{}-{}", labels[hi], labels[lo]);
                    (label, utilities.as_ref().map(|u| u[hi] - u[lo]))
                })
                .collect();
            GapEntry {
                infoset: id,
                key: set.key.clone(),
                opp_reach,
                utilities,
                gaps,
            }
        })
        .collect();
    UtilityGapReport { entries }
}
