//! Profiles (per-class member counts) and the δ-ordering by prefix sums.

use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::game::{Coalition, TypePartition};

/// Member counts `(m₁, …, m_t)` of a coalition per desirability class.
///
/// The prefix-sum vector is carried alongside the counts so that δ-comparisons
/// need no recomputation.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Profile {
    counts: Vec<u32>,
    prefix: Vec<u32>,
}

/// Result of comparing two profiles under the δ-ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeltaOrder {
    Dominates,
    DominatedBy,
    Equal,
    Incomparable,
}

impl Profile {
    pub fn new(counts: Vec<u32>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::Input("a profile needs at least one class".into()));
        }
        Ok(Self::from_counts(counts))
    }

    pub(crate) fn from_counts(counts: Vec<u32>) -> Self {
        let prefix = counts
            .iter()
            .scan(0u32, |acc, &c| {
                *acc += c;
                Some(*acc)
            })
            .collect();
        Profile { counts, prefix }
    }

    pub fn zero(t: usize) -> Self {
        Self::from_counts(vec![0; t])
    }

    /// Unit profile `e_c` (0-based class).
    pub fn unit(t: usize, class: usize) -> Self {
        let mut v = vec![0; t];
        v[class] = 1;
        Self::from_counts(v)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    pub fn prefix_sums(&self) -> &[u32] {
        &self.prefix
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> u32 {
        *self.prefix.last().unwrap_or(&0)
    }

    /// `self δ other`: every prefix sum of `self` is at least that of `other`.
    #[inline]
    pub fn delta_ge(&self, other: &Profile) -> bool {
        self.prefix
            .iter()
            .zip(&other.prefix)
            .all(|(a, b)| a >= b)
    }

    pub fn delta_compare(&self, other: &Profile) -> Result<DeltaOrder> {
        if self.len() != other.len() {
            return Err(Error::Input(format!(
                "profiles of different lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(match (self.delta_ge(other), other.delta_ge(self)) {
            (true, true) => DeltaOrder::Equal,
            (true, false) => DeltaOrder::Dominates,
            (false, true) => DeltaOrder::DominatedBy,
            (false, false) => DeltaOrder::Incomparable,
        })
    }

    /// Adds `delta` to class `class`, or `None` if it would go negative.
    pub fn shifted(&self, class: usize, delta: i64) -> Option<Profile> {
        let v = self.counts[class] as i64 + delta;
        if v < 0 {
            return None;
        }
        let mut counts = self.counts.clone();
        counts[class] = v as u32;
        Some(Self::from_counts(counts))
    }

    /// Profile of a coalition against a class partition.
    pub fn of(partition: &TypePartition, s: Coalition) -> Profile {
        Self::from_counts(
            partition
                .class_masks()
                .iter()
                .map(|m| (m.bits() & s.bits()).count_ones())
                .collect(),
        )
    }
}

/// Plain lexicographic order on the counts.
impl Ord for Profile {
    fn cmp(&self, other: &Self) -> Ordering {
        self.counts.cmp(&other.counts)
    }
}

impl PartialOrd for Profile {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Serialize for Profile {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.counts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Profile {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let counts = Vec::<u32>::deserialize(d)?;
        Profile::new(counts).map_err(serde::de::Error::custom)
    }
}

/// The box `I_{n₁} × … × I_{n_t}` of all profiles below `n̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileBox {
    sizes: Vec<u32>,
}

impl ProfileBox {
    pub fn new(sizes: Vec<u32>) -> Result<Self> {
        if sizes.is_empty() || sizes.contains(&0) {
            return Err(Error::Input(
                "a profile box needs at least one class and positive sizes".into(),
            ));
        }
        Ok(ProfileBox { sizes })
    }

    pub fn sizes(&self) -> &[u32] {
        &self.sizes
    }

    pub fn top(&self) -> Profile {
        Profile::from_counts(self.sizes.clone())
    }

    pub fn contains(&self, p: &Profile) -> bool {
        p.len() == self.sizes.len() && p.counts.iter().zip(&self.sizes).all(|(a, b)| a <= b)
    }

    /// `Π(nᵢ + 1)`, saturating at `u128::MAX`.
    pub fn volume(&self) -> u128 {
        self.sizes
            .iter()
            .fold(1u128, |acc, &s| acc.saturating_mul(s as u128 + 1))
    }

    /// Every profile in the box exactly once, in decreasing lexicographic order.
    pub fn profiles(&self) -> BoxProfiles {
        BoxProfiles {
            sizes: self.sizes.clone(),
            next: Some(self.sizes.clone()),
        }
    }
}

pub struct BoxProfiles {
    sizes: Vec<u32>,
    next: Option<Vec<u32>>,
}

impl Iterator for BoxProfiles {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        let cur = self.next.take()?;
        let mut succ = cur.clone();
        // decrement like an odometer with the last class as the fastest digit
        for k in (0..succ.len()).rev() {
            if succ[k] > 0 {
                succ[k] -= 1;
                for j in k + 1..succ.len() {
                    succ[j] = self.sizes[j];
                }
                self.next = Some(succ);
                break;
            }
        }
        Some(Profile::from_counts(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(v: &[u32]) -> Profile {
        Profile::new(v.to_vec()).unwrap()
    }

    #[test]
    fn delta_compare_examples() {
        assert_eq!(p(&[1, 2]).delta_compare(&p(&[0, 3])).unwrap(), DeltaOrder::Dominates);
        assert_eq!(p(&[0, 3]).delta_compare(&p(&[1, 2])).unwrap(), DeltaOrder::DominatedBy);
        assert_eq!(p(&[2, 0]).delta_compare(&p(&[0, 3])).unwrap(), DeltaOrder::Incomparable);
        assert_eq!(p(&[1, 1]).delta_compare(&p(&[1, 1])).unwrap(), DeltaOrder::Equal);
        assert!(p(&[1]).delta_compare(&p(&[1, 0])).is_err());
        assert!(Profile::new(vec![]).is_err());
    }

    #[test]
    fn profile_of_coalitions() {
        let ex1 = TypePartition::new(3, vec![vec![1], vec![2, 3]]).unwrap();
        let s = Coalition::from_members(&[1, 2], 3).unwrap();
        assert_eq!(Profile::of(&ex1, s).counts(), &[1, 1]);
        let ex2 = TypePartition::consecutive(&[2, 3]).unwrap();
        let s = Coalition::from_members(&[3, 4, 5], 5).unwrap();
        assert_eq!(Profile::of(&ex2, s).counts(), &[0, 3]);
        assert_eq!(Profile::of(&ex2, Coalition::EMPTY).counts(), &[0, 0]);
    }

    #[test]
    fn box_enumeration() {
        let b = ProfileBox::new(vec![1]).unwrap();
        let all: Vec<_> = b.profiles().map(|p| p.counts().to_vec()).collect();
        assert_eq!(all, vec![vec![1], vec![0]]);

        let b = ProfileBox::new(vec![2, 3]).unwrap();
        let all: Vec<_> = b.profiles().collect();
        assert_eq!(all.len(), 12);
        assert_eq!(all[0].counts(), &[2, 3]);
        assert_eq!(all[11].counts(), &[0, 0]);
        assert!(all.windows(2).all(|w| w[0] > w[1]));

        assert_eq!(ProfileBox::new(vec![1, 1, 1]).unwrap().profiles().count(), 8);
        assert!(ProfileBox::new(vec![2, 0]).is_err());
    }

    fn small_box() -> impl Strategy<Value = Vec<u32>> {
        prop::collection::vec(1u32..5, 1..5).prop_filter("box too large", |s| {
            s.iter().map(|&x| x as u64 + 1).product::<u64>() <= 10_000
        })
    }

    proptest! {
        #[test]
        fn delta_is_a_partial_order_refined_by_lex(sizes in small_box()) {
            let all: Vec<Profile> = ProfileBox::new(sizes.clone()).unwrap().profiles().collect();
            let top = Profile::from_counts(sizes.clone());
            let bottom = Profile::zero(sizes.len());
            // sample pairs and triples rather than the full cube
            let step = (all.len() / 25).max(1);
            for a in all.iter().step_by(step) {
                prop_assert!(top.delta_ge(a));
                prop_assert!(a.delta_ge(&bottom));
                for b in all.iter().step_by(step) {
                    let ab = a.delta_compare(b).unwrap();
                    if ab == DeltaOrder::Dominates {
                        prop_assert!(a > b);
                        prop_assert_eq!(b.delta_compare(a).unwrap(), DeltaOrder::DominatedBy);
                    }
                    if a.delta_ge(b) && b.delta_ge(a) {
                        prop_assert_eq!(a, b);
                    }
                    for c in all.iter().step_by(step * 3) {
                        if a.delta_ge(b) && b.delta_ge(c) {
                            prop_assert!(a.delta_ge(c));
                        }
                    }
                }
            }
        }
    }
}
