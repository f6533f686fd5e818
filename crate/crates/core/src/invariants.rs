//! Characteristic invariants `(n̄, M)` of complete simple games.
//!
//! `n̄` holds the class sizes, strongest class first, and the rows of `M` are
//! the δ-minimal winning profiles. Rows are kept in strictly decreasing
//! lexicographic order, which makes the pair a canonical form: two complete
//! games are isomorphic exactly when their invariants are equal.

use std::fmt;

use crate::error::{Error, Result};
use crate::game::{Coalition, SimpleGame, TypePartition, WinningTable, MAX_PLAYERS};
use crate::profile::{Profile, ProfileBox};

/// Largest box for which the winning profiles are materialized.
pub const MATERIALIZE_LIMIT: u128 = 1_000_000;

/// Largest box swept by extraction, duality and expansion.
pub const SWEEP_LIMIT: u128 = 1 << 26;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Invariants {
    n_bar: Vec<u32>,
    rows: Vec<Profile>,
}

/// A broken validity condition. Row and class indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Condition 1: `n_k > 0`.
    EmptyClass { class: usize },
    /// Condition 2: `0̄ ≤ row ≤ n̄`.
    RowOutsideBox { row: usize },
    /// Condition 3: rows pairwise δ-incomparable.
    ComparableRows { upper: usize, lower: usize },
    /// Condition 4: some row has `m_k > 0` and `m_{k+1} < n_{k+1}`.
    ClassesNotSeparated { k: usize },
    /// `m_{1,1} > 0`.
    FirstEntryZero,
    /// Rows must be strictly decreasing in lexicographic order.
    RowsOutOfOrder { row: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptyClass { class } => write!(f, "condition 1: class {class} is empty"),
            Violation::RowOutsideBox { row } => {
                write!(f, "condition 2: row {row} leaves the profile box")
            }
            Violation::ComparableRows { upper, lower } => {
                write!(f, "condition 3: row {upper} δ-dominates row {lower}")
            }
            Violation::ClassesNotSeparated { k } => write!(
                f,
                "condition 4: no row separates classes {k} and {}",
                k + 1
            ),
            Violation::FirstEntryZero => write!(f, "m11 must be positive"),
            Violation::RowsOutOfOrder { row } => write!(
                f,
                "rows {row} and {} are not in decreasing lexicographic order",
                row + 1
            ),
        }
    }
}

impl Invariants {
    /// Checks every validity condition and collects all violations.
    pub fn validate(n_bar: Vec<u32>, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let t = n_bar.len();
        if t == 0 {
            return Err(Error::Input("n_bar must have at least one class".into()));
        }
        if matrix.is_empty() {
            return Err(Error::Input("M must have at least one row".into()));
        }
        if let Some(i) = matrix.iter().position(|r| r.len() != t) {
            return Err(Error::Input(format!(
                "row {} has {} entries, expected {t}",
                i + 1,
                matrix[i].len()
            )));
        }
        let n: u64 = n_bar.iter().map(|&x| x as u64).sum();
        if n > u32::MAX as u64 {
            return Err(Error::Input("player count overflows".into()));
        }
        let rows: Vec<Profile> = matrix.into_iter().map(Profile::from_counts).collect();
        let mut v = Vec::new();
        for (k, &s) in n_bar.iter().enumerate() {
            if s == 0 {
                v.push(Violation::EmptyClass { class: k + 1 });
            }
        }
        for (i, r) in rows.iter().enumerate() {
            if r.counts().iter().zip(&n_bar).any(|(m, s)| m > s) {
                v.push(Violation::RowOutsideBox { row: i + 1 });
            }
        }
        for i in 0..rows.len() {
            for j in 0..rows.len() {
                if i != j && rows[i].delta_ge(&rows[j]) && (i < j || rows[i] != rows[j]) {
                    v.push(Violation::ComparableRows {
                        upper: i + 1,
                        lower: j + 1,
                    });
                }
            }
        }
        for k in 0..t.saturating_sub(1) {
            if !rows
                .iter()
                .any(|r| r.counts()[k] > 0 && r.counts()[k + 1] < n_bar[k + 1])
            {
                v.push(Violation::ClassesNotSeparated { k: k + 1 });
            }
        }
        if rows[0].counts()[0] == 0 {
            v.push(Violation::FirstEntryZero);
        }
        for i in 0..rows.len() - 1 {
            if rows[i] <= rows[i + 1] {
                v.push(Violation::RowsOutOfOrder { row: i + 1 });
            }
        }
        if v.is_empty() {
            Ok(Invariants { n_bar, rows })
        } else {
            Err(Error::Invariants(v))
        }
    }

    /// Sorts rows into canonical order before validating.
    pub fn canonical(n_bar: Vec<u32>, mut matrix: Vec<Vec<u32>>) -> Result<Self> {
        matrix.sort_by(|a, b| b.cmp(a));
        Self::validate(n_bar, matrix)
    }

    /// Trusted constructor for rows already known to satisfy every condition.
    pub(crate) fn from_parts_unchecked(n_bar: Vec<u32>, rows: Vec<Profile>) -> Self {
        debug_assert!(rows.windows(2).all(|w| w[0] > w[1]));
        Invariants { n_bar, rows }
    }

    pub fn n_bar(&self) -> &[u32] {
        &self.n_bar
    }

    pub fn rows(&self) -> &[Profile] {
        &self.rows
    }

    pub fn matrix(&self) -> Vec<Vec<u32>> {
        self.rows.iter().map(|r| r.counts().to_vec()).collect()
    }

    pub fn n(&self) -> u32 {
        self.n_bar.iter().sum()
    }

    pub fn t(&self) -> usize {
        self.n_bar.len()
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn profile_box(&self) -> ProfileBox {
        ProfileBox::new(self.n_bar.clone()).expect("validated class sizes")
    }

    pub fn top(&self) -> Profile {
        Profile::from_counts(self.n_bar.clone())
    }

    /// A profile wins iff it δ-dominates some row.
    pub fn is_winning(&self, p: &Profile) -> bool {
        self.rows.iter().any(|r| p.delta_ge(r))
    }

    /// Like [`Invariants::is_winning`] on raw counts, without allocating.
    pub fn wins_counts(&self, counts: &[u32]) -> bool {
        'rows: for r in &self.rows {
            let mut acc = 0i64;
            for (c, m) in counts.iter().zip(r.counts()) {
                acc += *c as i64 - *m as i64;
                if acc < 0 {
                    continue 'rows;
                }
            }
            return true;
        }
        false
    }

    /// Every winning profile of the box, in decreasing lexicographic order.
    pub fn winning_profiles(&self) -> Result<Vec<Profile>> {
        let b = self.profile_box();
        if b.volume() > MATERIALIZE_LIMIT {
            return Err(Error::Capacity(format!(
                "box of {} profiles exceeds {MATERIALIZE_LIMIT}; query is_winning instead",
                b.volume()
            )));
        }
        Ok(b.profiles().filter(|p| self.is_winning(p)).collect())
    }

    /// Builds the game on players `1..=n`, class `k` taking consecutive indices.
    pub fn expand(&self) -> Result<SimpleGame> {
        let n = self.n();
        if n > MAX_PLAYERS {
            return Err(Error::Capacity(format!(
                "expansion is limited to {MAX_PLAYERS} players, invariants have {n}"
            )));
        }
        let b = self.profile_box();
        if b.volume() > SWEEP_LIMIT {
            return Err(Error::Capacity("profile box too large to expand".into()));
        }
        let mut offsets = Vec::with_capacity(self.t());
        let mut off = 0;
        for &s in &self.n_bar {
            offsets.push(off);
            off += s;
        }
        let mut min_winning = Vec::new();
        for p in b.profiles() {
            if !self.is_componentwise_minimal_winning(&p) {
                continue;
            }
            let mut partial = vec![0u64];
            for (k, &m) in p.counts().iter().enumerate() {
                let subsets = k_subsets(self.n_bar[k], m, offsets[k]);
                if partial.len().saturating_mul(subsets.len()) > 50_000_000 {
                    return Err(Error::Capacity(
                        "too many minimal winning coalitions to list".into(),
                    ));
                }
                partial = partial
                    .iter()
                    .flat_map(|&a| subsets.iter().map(move |&s| a | s))
                    .collect();
            }
            min_winning.extend(partial.into_iter().map(Coalition::from_bits));
        }
        min_winning.sort();
        Ok(SimpleGame::from_sorted_unchecked(n, min_winning))
    }

    fn is_componentwise_minimal_winning(&self, p: &Profile) -> bool {
        self.is_winning(p)
            && (0..self.t()).all(|k| match p.shifted(k, -1) {
                Some(q) => !self.is_winning(&q),
                None => true,
            })
    }

    /// Characteristic invariants of a complete game.
    pub fn extract(game: &SimpleGame) -> Result<Self> {
        let table = game.winning_table()?;
        let partition = table.type_partition()?;
        Self::from_table(&table, &partition)
    }

    pub(crate) fn from_table(table: &WinningTable, partition: &TypePartition) -> Result<Self> {
        let n_bar = partition.sizes();
        let classes = partition.classes();
        let wins = |counts: &[u32]| {
            let mut s = Coalition::EMPTY;
            for (k, &c) in counts.iter().enumerate() {
                for &player in &classes[k][..c as usize] {
                    s = s.with(player);
                }
            }
            table.wins(s)
        };
        let rows = delta_minimal(&n_bar, wins)?;
        Ok(Invariants::from_parts_unchecked(n_bar, rows))
    }

    /// Invariants of the dual game, computed on profiles. Classes keep their
    /// order since duality preserves desirability.
    pub fn dual(&self) -> Result<Self> {
        let top = self.n_bar.clone();
        let rows = delta_minimal(&self.n_bar, |counts| {
            let comp: Vec<u32> = counts.iter().zip(&top).map(|(c, s)| s - c).collect();
            !self.wins_counts(&comp)
        })?;
        Ok(Invariants::from_parts_unchecked(self.n_bar.clone(), rows))
    }
}

/// δ-minimal members of an up-closed predicate over the box, in decreasing
/// lexicographic order.
///
/// A winning `p` is δ-minimal iff every one-step descent `p - e_k` and
/// `p - e_k + e_j` (`j > k`) that stays in the box is losing: every profile
/// strictly δ-below `p` sits under one of those descents.
fn delta_minimal(n_bar: &[u32], wins: impl Fn(&[u32]) -> bool) -> Result<Vec<Profile>> {
    let b = ProfileBox::new(n_bar.to_vec())?;
    if b.volume() > SWEEP_LIMIT {
        return Err(Error::Capacity(format!(
            "profile box of {} entries exceeds {SWEEP_LIMIT}",
            b.volume()
        )));
    }
    let t = n_bar.len();
    let mut rows = Vec::new();
    let mut q = vec![0u32; t];
    for p in b.profiles() {
        let c = p.counts();
        if !wins(c) {
            continue;
        }
        let mut minimal = true;
        'k: for k in 0..t {
            if c[k] == 0 {
                continue;
            }
            q.copy_from_slice(c);
            q[k] -= 1;
            if wins(&q) {
                minimal = false;
                break;
            }
            for j in k + 1..t {
                if c[j] < n_bar[j] {
                    q[j] += 1;
                    let w = wins(&q);
                    q[j] -= 1;
                    if w {
                        minimal = false;
                        break 'k;
                    }
                }
            }
        }
        if minimal {
            rows.push(p);
        }
    }
    Ok(rows)
}

/// All `m`-subsets of the `size` consecutive bits starting at `offset`.
fn k_subsets(size: u32, m: u32, offset: u32) -> Vec<u64> {
    if m == 0 {
        return vec![0];
    }
    let mut out = Vec::new();
    let limit: u128 = 1u128 << size;
    let mut x: u128 = (1u128 << m) - 1;
    while x < limit {
        out.push((x as u64) << offset);
        // Gosper's hack
        let c = x & x.wrapping_neg();
        let r = x + c;
        x = (((r ^ x) >> 2) / c) | r;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(n_bar: &[u32], m: &[&[u32]]) -> Invariants {
        Invariants::validate(n_bar.to_vec(), m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    fn violations(n_bar: &[u32], m: &[&[u32]]) -> Vec<Violation> {
        match Invariants::validate(n_bar.to_vec(), m.iter().map(|r| r.to_vec()).collect()) {
            Err(Error::Invariants(v)) => v,
            other => panic!("expected violations, got {other:?}"),
        }
    }

    fn g(n: u32, mw: &[&[u32]]) -> SimpleGame {
        SimpleGame::new(
            n,
            mw.iter()
                .map(|m| Coalition::from_members(m, n).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        inv(&[2, 3], &[&[2, 0], &[0, 3]]);
        assert_eq!(
            violations(&[1, 2], &[&[1, 1], &[0, 2]]),
            vec![Violation::ComparableRows { upper: 1, lower: 2 }]
        );
        assert_eq!(
            violations(&[1, 2], &[&[1, 2]]),
            vec![Violation::ClassesNotSeparated { k: 1 }]
        );
    }

    #[test]
    fn validate_reports_every_condition() {
        let v = violations(&[0, 2], &[&[0, 3], &[0, 3]]);
        assert!(v.contains(&Violation::EmptyClass { class: 1 }));
        assert!(v.contains(&Violation::RowOutsideBox { row: 1 }));
        assert!(v.contains(&Violation::ComparableRows { upper: 1, lower: 2 }));
        assert!(v.contains(&Violation::FirstEntryZero));
        assert!(v.contains(&Violation::RowsOutOfOrder { row: 1 }));
        assert_eq!(
            violations(&[2, 3], &[&[0, 3], &[2, 0]]),
            vec![Violation::FirstEntryZero, Violation::RowsOutOfOrder { row: 1 }]
        );
    }

    #[test]
    fn validate_input_errors() {
        assert!(matches!(
            Invariants::validate(vec![], vec![vec![]]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            Invariants::validate(vec![2], vec![]),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            Invariants::validate(vec![2, 3], vec![vec![2, 0], vec![1]]),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn winning_profiles_of_example_two() {
        let i = inv(&[2, 3], &[&[2, 0], &[0, 3]]);
        let mut w: Vec<Vec<u32>> = i
            .winning_profiles()
            .unwrap()
            .iter()
            .map(|p| p.counts().to_vec())
            .collect();
        w.sort();
        assert_eq!(
            w,
            vec![
                vec![0, 3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 0],
                vec![2, 1],
                vec![2, 2],
                vec![2, 3]
            ]
        );
        let d = inv(&[1, 2], &[&[1, 0]]);
        let w: Vec<Vec<u32>> = d
            .winning_profiles()
            .unwrap()
            .iter()
            .map(|p| p.counts().to_vec())
            .collect();
        assert_eq!(w, vec![vec![1, 2], vec![1, 1], vec![1, 0]]);
        assert!(d.is_winning(&d.top()));
    }

    #[test]
    fn expand_example_two() {
        let game = inv(&[2, 3], &[&[2, 0], &[0, 3]]).expand().unwrap();
        let expected = g(
            5,
            &[
                &[1, 2],
                &[1, 3, 4],
                &[1, 3, 5],
                &[1, 4, 5],
                &[2, 3, 4],
                &[2, 3, 5],
                &[2, 4, 5],
                &[3, 4, 5],
            ],
        );
        assert_eq!(game.min_winning().len(), 8);
        assert_eq!(game, expected);
        let unanimity = inv(&[4], &[&[4]]).expand().unwrap();
        assert_eq!(unanimity.min_winning(), &[Coalition::grand(4)]);
    }

    #[test]
    fn extract_examples() {
        assert_eq!(
            Invariants::extract(&g(3, &[&[1, 2], &[1, 3]])).unwrap(),
            inv(&[1, 2], &[&[1, 1]])
        );
        assert_eq!(
            Invariants::extract(&g(3, &[&[1]])).unwrap(),
            inv(&[1, 2], &[&[1, 0]])
        );
        assert_eq!(
            Invariants::extract(&g(3, &[&[1, 2], &[1, 3], &[2, 3]])).unwrap(),
            inv(&[3], &[&[2]])
        );
        assert!(matches!(
            Invariants::extract(&g(4, &[&[1, 2], &[3, 4]])),
            Err(Error::NotComplete(..))
        ));
    }

    #[test]
    fn extract_ignores_labels() {
        let shuffled = inv(&[2, 3], &[&[2, 0], &[0, 3]])
            .expand()
            .unwrap()
            .relabel(&[5, 3, 1, 4, 2])
            .unwrap();
        assert_eq!(
            Invariants::extract(&shuffled).unwrap(),
            inv(&[2, 3], &[&[2, 0], &[0, 3]])
        );
    }

    #[test]
    fn dual_on_profiles_matches_examples() {
        assert_eq!(inv(&[4], &[&[4]]).dual().unwrap(), inv(&[4], &[&[1]]));
        let dict = inv(&[1, 3], &[&[1, 0]]);
        assert_eq!(dict.dual().unwrap(), dict);
        assert_eq!(inv(&[3], &[&[2]]).dual().unwrap(), inv(&[3], &[&[2]]));
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(5, 2, 0).len(), 10);
        assert_eq!(k_subsets(3, 3, 2), vec![0b11100]);
        assert_eq!(k_subsets(4, 0, 1), vec![0]);
        assert_eq!(k_subsets(64, 1, 0).len(), 64);
    }
}
