//! Brute-force reference catalogue.
//!
//! Lists every monotone simple game on `n` labelled players as an antichain
//! of the subset lattice, keeps the complete ones, and buckets them by their
//! extracted invariants. Roles come from the coalition-level definitions.
//! Nothing here shares code with the enumeration search.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::game::{Coalition, SimpleGame};
use crate::invariants::Invariants;
use crate::roles::{semantic_player_roles, RoleSet};

/// Largest `n` the oracle accepts; `n = 6` already has 7.8 million games.
pub const ORACLE_MAX_N: u32 = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleCatalog {
    n: u32,
    labelled_games: u64,
    labelled_complete: u64,
    classes: BTreeMap<Invariants, RoleSet>,
}

impl OracleCatalog {
    pub fn build(n: u32) -> Result<Self> {
        if n == 0 || n > ORACLE_MAX_N {
            return Err(Error::Capacity(format!(
                "oracle supports 1 <= n <= {ORACLE_MAX_N}, got {n}"
            )));
        }
        let mut cat = OracleCatalog {
            n,
            labelled_games: 0,
            labelled_complete: 0,
            classes: BTreeMap::new(),
        };
        let subsets: Vec<u64> = (1..1u64 << n).collect();
        let mut chosen = Vec::new();
        let mut failure = None;
        antichains(&subsets, 0, &mut chosen, &mut |family| {
            if failure.is_none() {
                if let Err(e) = cat.observe(family) {
                    failure = Some(e);
                }
            }
        });
        match failure {
            Some(e) => Err(e),
            None => Ok(cat),
        }
    }

    fn observe(&mut self, family: &[u64]) -> Result<()> {
        self.labelled_games += 1;
        let game = SimpleGame::new(
            self.n,
            family.iter().map(|&b| Coalition::from_bits(b)).collect(),
        )?;
        let inv = match Invariants::extract(&game) {
            Ok(inv) => inv,
            Err(Error::NotComplete(..)) => return Ok(()),
            Err(e) => return Err(e),
        };
        self.labelled_complete += 1;
        let roles = semantic_player_roles(&game)?
            .into_iter()
            .fold(RoleSet::EMPTY, RoleSet::union);
        match self.classes.get(&inv) {
            Some(&seen) if seen != roles => Err(Error::Validation(format!(
                "isomorphic games disagree on roles: {seen} vs {roles}"
            ))),
            Some(_) => Ok(()),
            None => {
                self.classes.insert(inv, roles);
                Ok(())
            }
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Monotone games with at least one winning coalition, labelled.
    pub fn labelled_games(&self) -> u64 {
        self.labelled_games
    }

    pub fn labelled_complete(&self) -> u64 {
        self.labelled_complete
    }

    /// Isomorphism classes of complete games with their role sets.
    pub fn classes(&self) -> &BTreeMap<Invariants, RoleSet> {
        &self.classes
    }

    pub fn count(&self, t: u32, require: RoleSet, forbid: RoleSet) -> u64 {
        self.classes
            .iter()
            .filter(|(inv, roles)| {
                inv.t() == t as usize && roles.contains_all(require) && !roles.intersects(forbid)
            })
            .count() as u64
    }

    pub fn count_rows(&self, t: u32, r: usize) -> u64 {
        self.classes
            .keys()
            .filter(|inv| inv.t() == t as usize && inv.r() == r)
            .count() as u64
    }
}

/// Visits every nonempty antichain drawn from `subsets[from..]` extending
/// `chosen`.
fn antichains(subsets: &[u64], from: usize, chosen: &mut Vec<u64>, f: &mut impl FnMut(&[u64])) {
    for i in from..subsets.len() {
        let s = subsets[i];
        if chosen.iter().all(|&c| c & s != c && c & s != s) {
            chosen.push(s);
            f(chosen);
            antichains(subsets, i + 1, chosen, f);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn labelled_totals() {
        // Dedekind numbers minus the two families {} and {∅}.
        let want = [1u64, 4, 18, 166];
        for (n, w) in (1..=4).zip(want) {
            assert_eq!(OracleCatalog::build(n).unwrap().labelled_games(), w);
        }
    }

    #[test]
    fn class_counts() {
        let c = OracleCatalog::build(3).unwrap();
        let e = RoleSet::EMPTY;
        assert_eq!(c.count(1, e, e), 3);
        assert_eq!(c.count(2, e, e), 5);
        assert_eq!(c.count(3, e, e), 0);
        assert_eq!(OracleCatalog::build(4).unwrap().count(3, e, e), 6);
    }

    #[test]
    fn bounds() {
        assert!(OracleCatalog::build(0).is_err());
        assert!(OracleCatalog::build(7).is_err());
    }
}
