//! Extensional simple games over explicit coalitions.
//!
//! A [`SimpleGame`] is stored by its antichain of minimal winning coalitions.
//! Coalitions are 64-bit masks where bit `i - 1` stands for player `i`, so the
//! extensional model holds at most [`MAX_PLAYERS`] players. Operations that
//! sweep the whole subset lattice (desirability, duality, completeness) are
//! further limited to [`MAX_TABLE_PLAYERS`].

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const MAX_PLAYERS: u32 = 64;

/// Largest player count for which a full winning table (2^n bits) is built.
pub const MAX_TABLE_PLAYERS: u32 = 25;

/// A set of players, 1-based.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Coalition(u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn from_bits(bits: u64) -> Self {
        Coalition(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The grand coalition `{1..n}`.
    pub fn grand(n: u32) -> Self {
        debug_assert!(n <= MAX_PLAYERS);
        if n == 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn from_members(members: &[u32], n: u32) -> Result<Self> {
        let mut bits = 0u64;
        for &m in members {
            if m == 0 || m > n {
                return Err(Error::Input(format!("player {m} is outside 1..{n}")));
            }
            bits |= 1 << (m - 1);
        }
        Ok(Coalition(bits))
    }

    pub fn singleton(player: u32) -> Self {
        Coalition(1 << (player - 1))
    }

    pub fn contains(self, player: u32) -> bool {
        player >= 1 && player <= 64 && self.0 & (1 << (player - 1)) != 0
    }

    pub fn is_subset_of(self, other: Coalition) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, player: u32) -> Self {
        Coalition(self.0 | 1 << (player - 1))
    }

    pub fn without(self, player: u32) -> Self {
        Coalition(self.0 & !(1 << (player - 1)))
    }

    /// Highest player index present, or 0 for the empty coalition.
    pub fn max_player(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Members in ascending order.
    pub fn members(self) -> impl Iterator<Item = u32> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros();
                bits &= bits - 1;
                Some(i + 1)
            }
        })
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.members().collect()
    }
}

/// Lexicographic order on the ascending member lists: `{1,2} < {1,2,3} < {1,3}`.
impl Ord for Coalition {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.members();
        let mut b = other.members();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) if x != y => return x.cmp(&y),
                _ => {}
            }
        }
    }
}

impl PartialOrd for Coalition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Coalition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

/// A monotone simple game `(N, W)` given by its minimal winning coalitions.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SimpleGame {
    n: u32,
    min_winning: Vec<Coalition>,
}

impl SimpleGame {
    /// Builds a game from an antichain of minimal winning coalitions.
    ///
    /// The input must already be an antichain; use [`SimpleGame::normalize`]
    /// to reduce an arbitrary family of winning coalitions.
    pub fn new(n: u32, min_winning: Vec<Coalition>) -> Result<Self> {
        check_family(n, &min_winning)?;
        let mut min_winning = min_winning;
        min_winning.sort();
        min_winning.dedup();
        for (a, &x) in min_winning.iter().enumerate() {
            for &y in &min_winning[a + 1..] {
                if x.is_subset_of(y) || y.is_subset_of(x) {
                    return Err(Error::Validation(format!(
                        "minimal winning coalitions {:?} and {:?} are nested",
                        x.to_vec(),
                        y.to_vec()
                    )));
                }
            }
        }
        Ok(SimpleGame { n, min_winning })
    }

    /// Keeps the inclusion-minimal members of `raw`. The result has the same
    /// monotone closure as `raw`.
    pub fn normalize(n: u32, raw: &[Coalition]) -> Result<Self> {
        check_family(n, raw)?;
        let mut sorted: Vec<Coalition> = raw.to_vec();
        sorted.sort_by_key(|c| c.len());
        sorted.dedup();
        let mut kept: Vec<Coalition> = Vec::new();
        for c in sorted {
            if !kept.iter().any(|k| k.is_subset_of(c)) {
                kept.push(c);
            }
        }
        kept.sort();
        Ok(SimpleGame {
            n,
            min_winning: kept,
        })
    }

    pub(crate) fn from_sorted_unchecked(n: u32, min_winning: Vec<Coalition>) -> Self {
        SimpleGame { n, min_winning }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn min_winning(&self) -> &[Coalition] {
        &self.min_winning
    }

    pub fn grand(&self) -> Coalition {
        Coalition::grand(self.n)
    }

    pub fn is_winning(&self, s: Coalition) -> Result<bool> {
        if s.max_player() > self.n {
            return Err(Error::Input(format!(
                "player {} is outside 1..{}",
                s.max_player(),
                self.n
            )));
        }
        Ok(self.wins(s))
    }

    /// Unchecked membership test.
    pub fn wins(&self, s: Coalition) -> bool {
        self.min_winning.iter().any(|m| m.is_subset_of(s))
    }

    pub fn winning_table(&self) -> Result<WinningTable> {
        WinningTable::build(self)
    }

    /// Exact desirability relation between players `i` and `j`, by sweeping
    /// every `S ⊆ N \ {i, j}`.
    pub fn desirability(&self, i: u32, j: u32) -> Result<Desirability> {
        self.check_player(i)?;
        self.check_player(j)?;
        if i == j {
            return Err(Error::Input(format!(
                "desirability needs two distinct players, got {i} twice"
            )));
        }
        let table = self.winning_table()?;
        Ok(table.desirability(i, j))
    }

    /// Equivalence classes of the desirability relation, strongest first.
    pub fn type_partition(&self) -> Result<TypePartition> {
        let table = self.winning_table()?;
        table.type_partition()
    }

    pub fn is_complete(&self) -> Result<bool> {
        match self.type_partition() {
            Ok(_) => Ok(true),
            Err(Error::NotComplete(..)) => Ok(false),
            Err(e) => Err(e),
        }
    }

    /// Applies a relabeling: player `i` becomes `perm[i - 1]`.
    pub fn relabel(&self, perm: &[u32]) -> Result<SimpleGame> {
        if perm.len() != self.n as usize {
            return Err(Error::Input("permutation length differs from n".into()));
        }
        let mut seen = vec![false; perm.len()];
        for &p in perm {
            if p == 0 || p > self.n || std::mem::replace(&mut seen[p as usize - 1], true) {
                return Err(Error::Input("relabeling is not a permutation".into()));
            }
        }
        let mut mw: Vec<Coalition> = self
            .min_winning
            .iter()
            .map(|c| {
                Coalition(
                    c.members()
                        .fold(0u64, |acc, m| acc | 1 << (perm[m as usize - 1] - 1)),
                )
            })
            .collect();
        mw.sort();
        Ok(SimpleGame::from_sorted_unchecked(self.n, mw))
    }

    fn check_player(&self, i: u32) -> Result<()> {
        if i == 0 || i > self.n {
            Err(Error::Input(format!("player {i} is outside 1..{}", self.n)))
        } else {
            Ok(())
        }
    }
}

fn check_family(n: u32, family: &[Coalition]) -> Result<()> {
    if n == 0 || n > MAX_PLAYERS {
        return Err(Error::Input(format!(
            "player count must lie in 1..={MAX_PLAYERS}, got {n}"
        )));
    }
    if family.is_empty() {
        return Err(Error::Validation(
            "a simple game needs at least one winning coalition".into(),
        ));
    }
    for c in family {
        if c.is_empty() {
            return Err(Error::Validation(
                "the empty coalition cannot be winning".into(),
            ));
        }
        if c.max_player() > n {
            return Err(Error::Input(format!(
                "player {} is outside 1..{n}",
                c.max_player()
            )));
        }
    }
    Ok(())
}

/// Winning/losing bit for every coalition of a game with at most
/// [`MAX_TABLE_PLAYERS`] players.
#[derive(Clone, Debug)]
pub struct WinningTable {
    n: u32,
    words: Vec<u64>,
}

const LOW_HALVES: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

impl WinningTable {
    pub fn build(game: &SimpleGame) -> Result<Self> {
        let n = game.n;
        if n > MAX_TABLE_PLAYERS {
            return Err(Error::Capacity(format!(
                "subset sweeps are limited to {MAX_TABLE_PLAYERS} players, game has {n}"
            )));
        }
        let size = 1usize << n;
        let mut words = vec![0u64; size.div_ceil(64)];
        for c in &game.min_winning {
            let b = c.bits() as usize;
            words[b >> 6] |= 1 << (b & 63);
        }
        // upward closure, one player at a time
        for i in 0..n {
            if i < 6 {
                let shift = 1u32 << i;
                for w in words.iter_mut() {
                    *w |= (*w & LOW_HALVES[i as usize]) << shift;
                }
            } else {
                let stride = 1usize << (i - 6);
                let mut base = 0;
                while base < words.len() {
                    for j in base..base + stride {
                        words[j + stride] |= words[j];
                    }
                    base += 2 * stride;
                }
            }
        }
        Ok(WinningTable { n, words })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn wins(&self, s: Coalition) -> bool {
        let b = s.bits() as usize;
        self.words[b >> 6] >> (b & 63) & 1 != 0
    }

    /// `i` at least as desirable as `j`.
    fn at_least(&self, i: u32, j: u32) -> bool {
        let rest = Coalition::grand(self.n).without(i).without(j).bits();
        let mut sub = rest;
        loop {
            let s = Coalition(sub);
            if self.wins(s.with(j)) && !self.wins(s.with(i)) {
                return false;
            }
            if sub == 0 {
                return true;
            }
            sub = (sub - 1) & rest;
        }
    }

    pub fn desirability(&self, i: u32, j: u32) -> Desirability {
        match (self.at_least(i, j), self.at_least(j, i)) {
            (true, true) => Desirability::EquallyDesirable,
            (true, false) => Desirability::MoreDesirable,
            (false, true) => Desirability::LessDesirable,
            (false, false) => Desirability::Incomparable,
        }
    }

    pub fn type_partition(&self) -> Result<TypePartition> {
        let n = self.n;
        // dominated[i] = number of players j with i ≿ j
        let mut score = vec![0u32; n as usize];
        let mut equal = vec![vec![false; n as usize]; n as usize];
        for i in 1..=n {
            for j in i + 1..=n {
                let (a, b) = (i as usize - 1, j as usize - 1);
                match self.desirability(i, j) {
                    Desirability::EquallyDesirable => {
                        equal[a][b] = true;
                        score[a] += 1;
                        score[b] += 1;
                    }
                    Desirability::MoreDesirable => score[a] += 1,
                    Desirability::LessDesirable => score[b] += 1,
                    Desirability::Incomparable => return Err(Error::NotComplete(i, j)),
                }
            }
        }
        let mut class_of = vec![usize::MAX; n as usize];
        let mut classes: Vec<Vec<u32>> = Vec::new();
        for p in 0..n as usize {
            if class_of[p] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let mut members = vec![p as u32 + 1];
            class_of[p] = idx;
            for q in p + 1..n as usize {
                if equal[p][q] {
                    class_of[q] = idx;
                    members.push(q as u32 + 1);
                }
            }
            classes.push(members);
        }
        // in a total preorder, stronger classes dominate strictly more players
        classes.sort_by_key(|c| std::cmp::Reverse(score[c[0] as usize - 1]));
        TypePartition::new(n, classes)
    }

    pub fn iter_winning(&self) -> impl Iterator<Item = Coalition> + '_ {
        (0..1u64 << self.n)
            .map(Coalition)
            .filter(move |&s| self.wins(s))
    }
}

/// Outcome of comparing two players under the desirability relation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Desirability {
    MoreDesirable,
    EquallyDesirable,
    LessDesirable,
    Incomparable,
}

/// Ordered partition `N₁ > N₂ > … > N_t` of the players into desirability
/// classes. Players inside a class are kept in ascending order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TypePartition {
    n: u32,
    classes: Vec<Vec<u32>>,
    masks: Vec<Coalition>,
}

impl TypePartition {
    pub fn new(n: u32, classes: Vec<Vec<u32>>) -> Result<Self> {
        let mut seen = Coalition::EMPTY;
        let mut masks = Vec::with_capacity(classes.len());
        for class in &classes {
            if class.is_empty() {
                return Err(Error::Validation("empty desirability class".into()));
            }
            let m = Coalition::from_members(class, n)?;
            if m.len() as usize != class.len() || m.bits() & seen.bits() != 0 {
                return Err(Error::Validation("classes overlap".into()));
            }
            seen = Coalition(seen.bits() | m.bits());
            masks.push(m);
        }
        if seen != Coalition::grand(n) {
            return Err(Error::Validation("classes do not cover all players".into()));
        }
        Ok(TypePartition { n, classes, masks })
    }

    /// Classes filled with consecutive players: class 1 gets `1..=n₁` and so on.
    pub fn consecutive(sizes: &[u32]) -> Result<Self> {
        let mut next = 1;
        let classes: Vec<Vec<u32>> = sizes
            .iter()
            .map(|&s| {
                let c: Vec<u32> = (next..next + s).collect();
                next += s;
                c
            })
            .collect();
        TypePartition::new(next - 1, classes)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn t(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    pub fn class_masks(&self) -> &[Coalition] {
        &self.masks
    }

    pub fn sizes(&self) -> Vec<u32> {
        self.classes.iter().map(|c| c.len() as u32).collect()
    }

    /// 0-based class index of a player.
    pub fn class_of(&self, player: u32) -> Option<usize> {
        self.masks.iter().position(|m| m.contains(player))
    }
}

/// A weighted representation `[q; w₁, …, wₙ]` with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedRepresentation {
    pub quota: BigRational,
    pub weights: Vec<BigRational>,
}

impl WeightedRepresentation {
    pub fn new(quota: BigRational, weights: Vec<BigRational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::Validation("weighted game without players".into()));
        }
        if quota.is_negative() || weights.iter().any(Signed::is_negative) {
            return Err(Error::Validation("quota and weights must be nonnegative".into()));
        }
        let total: BigRational = weights.iter().sum();
        if quota > total {
            return Err(Error::Validation(format!(
                "quota {quota} exceeds the total weight {total}"
            )));
        }
        if quota.is_zero() {
            return Err(Error::Validation(
                "a zero quota makes the empty coalition winning".into(),
            ));
        }
        Ok(WeightedRepresentation { quota, weights })
    }

    /// Parses decimal strings such as `"12"`, `"0.25"` or fractions `"1/3"`.
    pub fn parse(quota: &str, weights: &[String]) -> Result<Self> {
        let q = parse_exact(quota)?;
        let w = weights
            .iter()
            .map(|s| parse_exact(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(q, w)
    }

    /// Game whose winning coalitions are those reaching the quota.
    pub fn to_game(&self) -> Result<SimpleGame> {
        let n = self.weights.len() as u32;
        if n > MAX_TABLE_PLAYERS {
            return Err(Error::Capacity(format!(
                "weighted expansion is limited to {MAX_TABLE_PLAYERS} players"
            )));
        }
        // scale to integers over the common denominator
        let denom = self
            .weights
            .iter()
            .chain(std::iter::once(&self.quota))
            .fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
        let scale = |r: &BigRational| -> Result<i128> {
            (r.numer() * (&denom / r.denom()))
                .to_i128()
                .filter(|v| v.unsigned_abs() < 1 << 100)
                .ok_or_else(|| Error::Capacity("weights too large for exact expansion".into()))
        };
        let w: Vec<i128> = self.weights.iter().map(scale).collect::<Result<_>>()?;
        let q = scale(&self.quota)?;
        let size = 1usize << n;
        let mut sums = vec![0i128; size];
        let mut mw = Vec::new();
        for s in 1..size {
            let low = s.trailing_zeros() as usize;
            sums[s] = sums[s & (s - 1)] + w[low];
            if sums[s] < q {
                continue;
            }
            let lightest = (0..n as usize)
                .filter(|&i| s >> i & 1 == 1)
                .map(|i| w[i])
                .min()
                .unwrap_or(0);
            if sums[s] - lightest < q {
                mw.push(Coalition(s as u64));
            }
        }
        mw.sort();
        Ok(SimpleGame::from_sorted_unchecked(n, mw))
    }
}

/// Exact rational from a decimal literal or an `a/b` fraction.
pub fn parse_exact(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Input(format!("not an exact number: {s:?}"));
    if let Some((a, b)) = s.split_once('/') {
        let a: BigInt = a.trim().parse().map_err(|_| bad())?;
        let b: BigInt = b.trim().parse().map_err(|_| bad())?;
        if b.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{int}{frac}0").parse().map_err(|_| bad())?;
    let denom = BigInt::from(10).pow(frac.len() as u32 + 1);
    let value = BigRational::new(digits, denom);
    Ok(if neg { -value } else { value })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: &[u32]) -> Coalition {
        Coalition::from_members(m, 64).unwrap()
    }

    fn ex1() -> SimpleGame {
        SimpleGame::new(3, vec![c(&[1, 2]), c(&[1, 3])]).unwrap()
    }

    fn ex2() -> SimpleGame {
        let mw = [
            &[1, 2][..],
            &[1, 3, 4],
            &[1, 3, 5],
            &[1, 4, 5],
            &[2, 3, 4],
            &[2, 3, 5],
            &[2, 4, 5],
            &[3, 4, 5],
        ];
        SimpleGame::new(5, mw.iter().map(|m| c(m)).collect()).unwrap()
    }

    fn weighted(q: &str, w: &[&str]) -> SimpleGame {
        let w: Vec<String> = w.iter().map(|s| s.to_string()).collect();
        WeightedRepresentation::parse(q, &w)
            .unwrap()
            .to_game()
            .unwrap()
    }

    #[test]
    fn winning_in_example_one() {
        let g = ex1();
        assert!(g.is_winning(c(&[1, 2, 3])).unwrap());
        assert!(!g.is_winning(c(&[2, 3])).unwrap());
        assert!(!g.is_winning(Coalition::EMPTY).unwrap());
        assert!(g.is_winning(c(&[4])).is_err());
    }

    #[test]
    fn normalize_drops_supersets() {
        let g = SimpleGame::normalize(3, &[c(&[1, 2]), c(&[1, 2, 3])]).unwrap();
        assert_eq!(g.min_winning(), &[c(&[1, 2])]);
        let g = SimpleGame::normalize(2, &[c(&[1]), c(&[2]), c(&[1, 2])]).unwrap();
        assert_eq!(g.min_winning(), &[c(&[1]), c(&[2])]);
        let e = ex2();
        assert_eq!(SimpleGame::normalize(5, e.min_winning()).unwrap(), e);
        assert!(SimpleGame::normalize(3, &[]).is_err());
        assert!(SimpleGame::normalize(3, &[Coalition::EMPTY]).is_err());
    }

    #[test]
    fn new_rejects_nested_family() {
        assert!(SimpleGame::new(3, vec![c(&[1]), c(&[1, 2])]).is_err());
    }

    #[test]
    fn coalition_order_is_lexicographic() {
        let mut v = vec![c(&[1, 3]), c(&[1, 2, 3]), c(&[2]), c(&[1, 2])];
        v.sort();
        assert_eq!(v, vec![c(&[1, 2]), c(&[1, 2, 3]), c(&[1, 3]), c(&[2])]);
    }

    #[test]
    fn desirability_examples() {
        let g = ex1();
        assert_eq!(g.desirability(1, 2).unwrap(), Desirability::MoreDesirable);
        assert_eq!(g.desirability(2, 1).unwrap(), Desirability::LessDesirable);
        assert_eq!(g.desirability(2, 3).unwrap(), Desirability::EquallyDesirable);
        let u = SimpleGame::new(2, vec![c(&[1, 2])]).unwrap();
        assert_eq!(u.desirability(1, 2).unwrap(), Desirability::EquallyDesirable);
        assert!(g.desirability(2, 2).is_err());
    }

    #[test]
    fn type_partition_examples() {
        let p = ex1().type_partition().unwrap();
        assert_eq!(p.classes(), &[vec![1], vec![2, 3]]);
        assert_eq!(p.sizes(), vec![1, 2]);
        let p = ex2().type_partition().unwrap();
        assert_eq!(p.classes(), &[vec![1, 2], vec![3, 4, 5]]);
        let g = SimpleGame::new(4, vec![c(&[1, 2]), c(&[3, 4])]).unwrap();
        assert!(matches!(g.type_partition(), Err(Error::NotComplete(1, 3))));
    }

    #[test]
    fn weighted_examples() {
        assert_eq!(weighted("3", &["2", "1", "1"]), ex1());
        assert_eq!(weighted("51", &["50", "49", "1"]), ex1());
        assert_eq!(weighted("6", &["3", "3", "2", "2", "2"]), ex2());
        let eec = weighted("12", &["4", "4", "4", "2", "2", "1"]);
        assert!(eec.min_winning().iter().all(|m| !m.contains(6)));
        assert!(WeightedRepresentation::parse("13", &["6".into(), "6".into()]).is_err());
    }

    #[test]
    fn weighted_ties_at_quota_are_exact() {
        // 0.1 + 0.2 reaches 0.3 exactly
        let g = weighted("0.3", &["0.1", "0.2", "0.05"]);
        assert!(g.wins(c(&[1, 2])));
        let g = weighted("1/3", &["1/6", "1/6", "1/10"]);
        assert!(g.wins(c(&[1, 2])));
        assert!(!g.wins(c(&[1, 3])));
    }

    #[test]
    fn parse_exact_forms() {
        assert_eq!(parse_exact("12").unwrap(), BigRational::from_integer(12.into()));
        assert_eq!(
            parse_exact("0.25").unwrap(),
            BigRational::new(1.into(), 4.into())
        );
        assert_eq!(parse_exact("-.5").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert!(parse_exact("1e3").is_err());
        assert!(parse_exact("").is_err());
        assert!(parse_exact("1/0").is_err());
    }

    #[test]
    fn winning_table_matches_direct_membership() {
        let g = ex2();
        let t = g.winning_table().unwrap();
        for s in 0..32u64 {
            assert_eq!(t.wins(Coalition(s)), g.wins(Coalition(s)));
        }
        // exercises the word-level closure branch
        let big = SimpleGame::new(9, vec![c(&[9]), c(&[1, 7])]).unwrap();
        let t = big.winning_table().unwrap();
        for s in 0..512u64 {
            assert_eq!(t.wins(Coalition(s)), big.wins(Coalition(s)), "{s}");
        }
    }
}
