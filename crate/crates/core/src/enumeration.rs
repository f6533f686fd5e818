//! Exhaustive, isomorph-free generation of complete simple games.
//!
//! For every class-size vector `n̄` the search walks antichains of the profile
//! box under the δ-ordering. Rows are picked in strictly decreasing
//! lexicographic order, so each antichain is produced exactly once and already
//! in canonical row order. A candidate list is threaded down the recursion:
//! after choosing a row, only the lexicographically smaller profiles it does
//! not δ-dominate survive. Since δ-dominance implies lexicographic dominance,
//! that single filter keeps the chosen set pairwise incomparable.
//!
//! Condition 4 (adjacent classes must be separated by some row) is tracked as
//! a bitmask; a subtree is skipped as soon as the rows still available cannot
//! complete the mask.
//!
//! Work is split into shards, one per `(n̄, first row)`. Shards are independent
//! and their counts merge by addition, so any number of workers yields the
//! same totals, and ordered collection keeps streams deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::invariants::Invariants;
use crate::profile::{Profile, ProfileBox};
use crate::roles::{structural_present, RoleSet};

/// Boxes with more candidate rows than this abort with a capacity error.
pub const MAX_BOX: u128 = 1 << 30;

/// What to generate: `n` voters, exactly `t` types, optional exact row count
/// and role filters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumSpec {
    pub n: u32,
    pub t: u32,
    pub rows: Option<usize>,
    pub require: RoleSet,
    pub forbid: RoleSet,
    pub count_only: bool,
}

impl EnumSpec {
    pub fn new(n: u32, t: u32) -> Self {
        EnumSpec {
            n,
            t,
            rows: None,
            require: RoleSet::EMPTY,
            forbid: RoleSet::EMPTY,
            count_only: false,
        }
    }

    pub fn rows(mut self, r: usize) -> Self {
        self.rows = Some(r);
        self
    }

    pub fn require(mut self, roles: RoleSet) -> Self {
        self.require = self.require.union(roles);
        self
    }

    pub fn forbid(mut self, roles: RoleSet) -> Self {
        self.forbid = self.forbid.union(roles);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::Input("n must be positive".into()));
        }
        if self.t == 0 || self.t > self.n {
            return Err(Error::Input(format!(
                "t must lie in 1..={}, got {}",
                self.n, self.t
            )));
        }
        if self.t > 32 {
            return Err(Error::Capacity("at most 32 types are supported".into()));
        }
        if self.rows == Some(0) {
            return Err(Error::Input("rows must be positive".into()));
        }
        Ok(())
    }

    fn has_filter(&self) -> bool {
        !self.require.is_empty() || !self.forbid.is_empty()
    }

    /// Short label used in count tables, e.g. `+vetoer-null` or `all`.
    pub fn filter_label(&self) -> String {
        let mut s = String::new();
        for r in self.require.iter() {
            s.push('+');
            s.push_str(r.name());
        }
        for r in self.forbid.iter() {
            s.push('-');
            s.push_str(r.name());
        }
        if s.is_empty() {
            s.push_str("all");
        }
        s
    }
}

/// Exact, unbounded count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Count(pub BigUint);

impl Count {
    pub fn value(&self) -> &BigUint {
        &self.0
    }
}

impl From<u64> for Count {
    fn from(v: u64) -> Self {
        Count(BigUint::from(v))
    }
}

impl PartialEq<u64> for Count {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl std::iter::Sum<u64> for Count {
    fn sum<I: Iterator<Item = u64>>(iter: I) -> Self {
        Count(iter.fold(BigUint::default(), |acc, x| acc + x))
    }
}

/// All ordered vectors of `t` positive integers summing to `n`, in
/// decreasing lexicographic order.
pub fn compositions(n: u32, t: u32) -> Result<Vec<Vec<u32>>> {
    Ok(Compositions::new(n, t)?.collect())
}

/// Lazy form of [`compositions`].
#[derive(Clone, Debug)]
pub struct Compositions {
    next: Option<Vec<u32>>,
}

impl Compositions {
    pub fn new(n: u32, t: u32) -> Result<Self> {
        if t == 0 || t > n {
            return Err(Error::Input(format!("need 1 <= t <= n, got n={n}, t={t}")));
        }
        let mut first = vec![1; t as usize];
        first[0] = n - t + 1;
        Ok(Compositions { next: Some(first) })
    }
}

impl Iterator for Compositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let cur = self.next.take()?;
        let t = cur.len();
        // Lower the rightmost part that can give a unit to its suffix, then
        // make the suffix lexicographically largest.
        if let Some(i) = (0..t.saturating_sub(1)).rev().find(|&i| cur[i] > 1) {
            let mut nxt = cur.clone();
            nxt[i] -= 1;
            let suffix: u32 = nxt[i + 1..].iter().sum::<u32>() + 1;
            let parts = (t - i - 1) as u32;
            nxt[i + 1] = suffix - (parts - 1);
            for v in &mut nxt[i + 2..] {
                *v = 1;
            }
            self.next = Some(nxt);
        }
        Some(cur)
    }
}

/// δ-comparisons on prefix sums packed eight to a word.
///
/// Each lane holds a prefix sum below 128; `a ≥ b` in every lane exactly when
/// subtracting `b` from `a` with the lane guard bits set clears no guard.
#[derive(Debug)]
struct PackedPrefix {
    words: usize,
    data: Vec<u64>,
}

const GUARDS: u64 = 0x8080_8080_8080_8080;

impl PackedPrefix {
    #[inline]
    fn ge(&self, a: u32, b: u32) -> bool {
        let w = self.words;
        let pa = &self.data[a as usize * w..(a as usize + 1) * w];
        let pb = &self.data[b as usize * w..(b as usize + 1) * w];
        pa.iter()
            .zip(pb)
            .all(|(&x, &y)| ((x | GUARDS) - y) & GUARDS == GUARDS)
    }
}

/// Search context for one class-size vector.
#[derive(Debug)]
struct BoxContext {
    n_bar: Vec<u32>,
    /// Nonzero profiles in decreasing lexicographic order.
    profiles: Vec<Vec<u32>>,
    /// Condition-4 witnesses: bit k set iff `p_k > 0` and `p_{k+1} < n_{k+1}`.
    sep: Vec<u32>,
    prefix: Prefix,
    /// Profiles with a positive first entry form a prefix of `profiles`.
    first_rows: usize,
    full: u32,
}

#[derive(Debug)]
enum Prefix {
    Packed(PackedPrefix),
    Wide { t: usize, data: Vec<u32> },
}

impl BoxContext {
    fn new(n_bar: Vec<u32>) -> Result<Self> {
        let b = ProfileBox::new(n_bar.clone())?;
        if b.volume() > MAX_BOX {
            return Err(Error::Capacity(format!(
                "profile box for {:?} has {} entries, above the {} limit",
                n_bar,
                b.volume(),
                MAX_BOX
            )));
        }
        let t = n_bar.len();
        let n: u32 = n_bar.iter().sum();
        let profiles: Vec<Vec<u32>> = b
            .profiles()
            .map(|p| p.counts().to_vec())
            .filter(|c| c.iter().any(|&x| x > 0))
            .collect();
        let sep = profiles
            .iter()
            .map(|c| {
                (0..t.saturating_sub(1))
                    .filter(|&k| c[k] > 0 && c[k + 1] < n_bar[k + 1])
                    .fold(0u32, |m, k| m | 1 << k)
            })
            .collect();
        let first_rows = profiles.iter().take_while(|c| c[0] > 0).count();
        let prefix_of = |c: &Vec<u32>| {
            c.iter()
                .scan(0u32, |acc, &x| {
                    *acc += x;
                    Some(*acc)
                })
                .collect::<Vec<u32>>()
        };
        let prefix = if n < 128 {
            let words = t.div_ceil(8);
            let mut data = Vec::with_capacity(words * profiles.len());
            for c in &profiles {
                let ps = prefix_of(c);
                for w in 0..words {
                    let mut word = 0u64;
                    for lane in 0..8 {
                        if let Some(&v) = ps.get(w * 8 + lane) {
                            word |= (v as u64) << (lane * 8);
                        }
                    }
                    data.push(word);
                }
            }
            Prefix::Packed(PackedPrefix { words, data })
        } else {
            Prefix::Wide {
                t,
                data: profiles.iter().flat_map(prefix_of).collect(),
            }
        };
        Ok(BoxContext {
            full: if t >= 2 { (1u32 << (t - 1)) - 1 } else { 0 },
            n_bar,
            profiles,
            sep,
            prefix,
            first_rows,
        })
    }

    fn invariants(&self, chosen: &[u32]) -> Invariants {
        Invariants::from_parts_unchecked(
            self.n_bar.clone(),
            chosen
                .iter()
                .map(|&i| Profile::from_counts(self.profiles[i as usize].clone()))
                .collect(),
        )
    }
}

trait Dominance {
    fn ge(&self, a: u32, b: u32) -> bool;
}

impl Dominance for PackedPrefix {
    #[inline]
    fn ge(&self, a: u32, b: u32) -> bool {
        PackedPrefix::ge(self, a, b)
    }
}

struct WidePrefix<'a> {
    t: usize,
    data: &'a [u32],
}

impl Dominance for WidePrefix<'_> {
    #[inline]
    fn ge(&self, a: u32, b: u32) -> bool {
        let t = self.t;
        let pa = &self.data[a as usize * t..(a as usize + 1) * t];
        let pb = &self.data[b as usize * t..(b as usize + 1) * t];
        pa.iter().zip(pb).all(|(x, y)| x >= y)
    }
}

struct Search<'a, D: Dominance, V: FnMut(&[u32])> {
    ctx: &'a BoxContext,
    dom: &'a D,
    max_rows: Option<usize>,
    exact_rows: bool,
    chosen: Vec<u32>,
    bufs: Vec<Vec<u32>>,
    visit: V,
}

impl<D: Dominance, V: FnMut(&[u32])> Search<'_, D, V> {
    /// Explores the subtree whose root row is `first`.
    fn run_shard(&mut self, first: usize) {
        let ctx = self.ctx;
        let c = first as u32;
        let mask = ctx.sep[first];
        let mut reach = mask;
        let mut next = std::mem::take(&mut self.bufs[1]);
        next.clear();
        for d in first as u32 + 1..ctx.profiles.len() as u32 {
            if !self.dom.ge(c, d) {
                next.push(d);
                reach |= ctx.sep[d as usize];
            }
        }
        self.bufs[1] = next;
        if reach != ctx.full {
            return;
        }
        self.chosen.push(c);
        self.descend(1, mask);
        self.chosen.pop();
    }

    fn descend(&mut self, depth: usize, mask: u32) {
        let ctx = self.ctx;
        if mask == ctx.full && (!self.exact_rows || Some(depth) == self.max_rows) {
            (self.visit)(&self.chosen);
        }
        if Some(depth) == self.max_rows {
            return;
        }
        if self.bufs.len() <= depth + 1 {
            self.bufs.push(Vec::new());
        }
        let len = self.bufs[depth].len();
        for i in 0..len {
            let (lo, hi) = self.bufs.split_at_mut(depth + 1);
            let cur = &lo[depth];
            let next = &mut hi[0];
            let c = cur[i];
            next.clear();
            let mut reach = mask | ctx.sep[c as usize];
            for &d in &cur[i + 1..] {
                if !self.dom.ge(c, d) {
                    next.push(d);
                    reach |= ctx.sep[d as usize];
                }
            }
            if reach != ctx.full {
                continue;
            }
            self.chosen.push(c);
            self.descend(depth + 1, mask | ctx.sep[c as usize]);
            self.chosen.pop();
        }
    }
}

fn run_shard_with<V: FnMut(&[u32])>(
    ctx: &BoxContext,
    first: usize,
    max_rows: Option<usize>,
    exact_rows: bool,
    visit: V,
) {
    match &ctx.prefix {
        Prefix::Packed(p) => {
            let mut s = Search {
                ctx,
                dom: p,
                max_rows,
                exact_rows,
                chosen: Vec::new(),
                bufs: vec![Vec::new(), Vec::new()],
                visit,
            };
            s.run_shard(first);
        }
        Prefix::Wide { t, data } => {
            let dom = WidePrefix { t: *t, data };
            let mut s = Search {
                ctx,
                dom: &dom,
                max_rows,
                exact_rows,
                chosen: Vec::new(),
                bufs: vec![Vec::new(), Vec::new()],
                visit,
            };
            s.run_shard(first);
        }
    }
}

/// Largest profile box over all compositions of `n` into `t` parts. The
/// balanced split maximises the product of the `n_k + 1`.
fn largest_box(n: u32, t: u32) -> u128 {
    let (q, rem) = (n / t, n % t);
    (0..t).fold(1u128, |v, k| {
        v.saturating_mul((q + 1 + u32::from(k < rem)) as u128)
    })
}

fn check_capacity(n: u32, t: u32) -> Result<()> {
    let v = largest_box(n, t);
    if v > MAX_BOX {
        return Err(Error::Capacity(format!(
            "n={n}, t={t} needs profile boxes of {v} entries, above the {MAX_BOX} limit"
        )));
    }
    Ok(())
}

fn worker_pool(jobs: usize) -> Result<Option<rayon::ThreadPool>> {
    if jobs <= 1 {
        return Ok(None);
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map(Some)
        .map_err(|e| Error::Input(format!("cannot start worker pool: {e}")))
}

/// Runs `per_shard` on every `(n̄, first row)` shard. Compositions are
/// handled one at a time; the shards of each are spread over the pool and
/// handed to `sink` in shard order.
fn run_shards<T: Send>(
    n: u32,
    t: u32,
    jobs: usize,
    per_shard: impl Fn(&BoxContext, usize) -> T + Sync,
    mut sink: impl FnMut(&BoxContext, Vec<T>),
) -> Result<()> {
    check_capacity(n, t)?;
    let pool = worker_pool(jobs)?;
    for n_bar in Compositions::new(n, t)? {
        let ctx = BoxContext::new(n_bar)?;
        let results: Vec<T> = match &pool {
            None => (0..ctx.first_rows).map(|f| per_shard(&ctx, f)).collect(),
            Some(pool) => pool.install(|| {
                (0..ctx.first_rows)
                    .into_par_iter()
                    .map(|f| per_shard(&ctx, f))
                    .collect()
            }),
        };
        sink(&ctx, results);
    }
    Ok(())
}

fn accepts(spec: &EnumSpec, inv: &Invariants) -> bool {
    let present = structural_present(inv);
    present.contains_all(spec.require) && !present.intersects(spec.forbid)
}

/// Counts the games described by `spec` on `jobs` workers.
pub fn count(spec: &EnumSpec, jobs: usize) -> Result<Count> {
    spec.validate()?;
    let mut total = BigUint::default();
    run_shards(
        spec.n,
        spec.t,
        jobs,
        |ctx, first| {
            let mut c = 0u64;
            if spec.has_filter() {
                run_shard_with(ctx, first, spec.rows, spec.rows.is_some(), |chosen| {
                    if accepts(spec, &ctx.invariants(chosen)) {
                        c += 1;
                    }
                });
            } else {
                run_shard_with(ctx, first, spec.rows, spec.rows.is_some(), |_| c += 1);
            }
            c
        },
        |_, counts| {
            for c in counts {
                total += c;
            }
        },
    )?;
    Ok(Count(total))
}

/// Streams every matching game, in composition-major, depth-first order.
pub fn for_each(spec: &EnumSpec, mut f: impl FnMut(Invariants)) -> Result<()> {
    spec.validate()?;
    check_capacity(spec.n, spec.t)?;
    for n_bar in Compositions::new(spec.n, spec.t)? {
        let ctx = BoxContext::new(n_bar)?;
        for first in 0..ctx.first_rows {
            run_shard_with(&ctx, first, spec.rows, spec.rows.is_some(), |chosen| {
                let inv = ctx.invariants(chosen);
                if !spec.has_filter() || accepts(spec, &inv) {
                    f(inv);
                }
            });
        }
    }
    Ok(())
}

/// Collects every matching game; parallel runs return the same order as
/// [`for_each`].
pub fn enumerate(spec: &EnumSpec, jobs: usize) -> Result<Vec<Invariants>> {
    spec.validate()?;
    let mut out = Vec::new();
    run_shards(
        spec.n,
        spec.t,
        jobs,
        |ctx, first| {
            let mut games = Vec::new();
            run_shard_with(ctx, first, spec.rows, spec.rows.is_some(), |chosen| {
                let inv = ctx.invariants(chosen);
                if !spec.has_filter() || accepts(spec, &inv) {
                    games.push(inv);
                }
            });
            games
        },
        |_, shards| out.extend(shards.into_iter().flatten()),
    )?;
    Ok(out)
}

/// Number of games with `n` voters and `t` types per exact set of roles
/// present. Any role-filtered count is a sum over this table.
pub fn role_census(n: u32, t: u32, jobs: usize) -> Result<BTreeMap<RoleSet, u64>> {
    EnumSpec::new(n, t).validate()?;
    let mut merged = BTreeMap::new();
    run_shards(
        n,
        t,
        jobs,
        |ctx, first| {
            let mut tally = BTreeMap::new();
            run_shard_with(ctx, first, None, false, |chosen| {
                *tally
                    .entry(structural_present(&ctx.invariants(chosen)))
                    .or_insert(0u64) += 1;
            });
            tally
        },
        |_, tallies| {
            for tally in tallies {
                for (k, c) in tally {
                    *merged.entry(k).or_insert(0) += c;
                }
            }
        },
    )?;
    Ok(merged)
}

/// Sums a census over the role sets that pass a filter.
pub fn census_count(census: &BTreeMap<RoleSet, u64>, require: RoleSet, forbid: RoleSet) -> u64 {
    census
        .iter()
        .filter(|(s, _)| s.contains_all(require) && !s.intersects(forbid))
        .map(|(_, c)| c)
        .sum()
}

/// Counts per `(t, r)` for `n` voters. With `max_rows` set, only games with
/// at most that many rows are visited.
pub fn count_by_rows(
    n: u32,
    max_rows: Option<usize>,
    jobs: usize,
) -> Result<BTreeMap<(u32, usize), Count>> {
    if n == 0 {
        return Err(Error::Input("n must be positive".into()));
    }
    if max_rows == Some(0) {
        return Err(Error::Input("max_rows must be positive".into()));
    }
    let mut table = BTreeMap::new();
    for t in 1..=n.min(32) {
        let mut merged: BTreeMap<usize, BigUint> = BTreeMap::new();
        run_shards(
            n,
            t,
            jobs,
            |ctx, first| {
                let mut tally = BTreeMap::new();
                run_shard_with(ctx, first, max_rows, false, |chosen| {
                    *tally.entry(chosen.len()).or_insert(0u64) += 1;
                });
                tally
            },
            |_, tallies| {
                for tally in tallies {
                    for (r, c) in tally {
                        *merged.entry(r).or_default() += c;
                    }
                }
            },
        )?;
        for (r, c) in merged {
            table.insert((t, r), Count(c));
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roles::Role;

    fn inv(n_bar: &[u32], m: &[&[u32]]) -> Invariants {
        Invariants::validate(n_bar.to_vec(), m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn compositions_examples() {
        assert_eq!(compositions(3, 2).unwrap(), vec![vec![2, 1], vec![1, 2]]);
        assert_eq!(compositions(5, 2).unwrap().len(), 4);
        assert_eq!(compositions(4, 4).unwrap(), vec![vec![1, 1, 1, 1]]);
        assert!(compositions(2, 3).is_err());
        let c = compositions(7, 3).unwrap();
        assert_eq!(c.len(), 15);
        assert!(c.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn three_voters_two_types() {
        let games = enumerate(&EnumSpec::new(3, 2), 1).unwrap();
        let expected = vec![
            inv(&[2, 1], &[&[2, 0]]),
            inv(&[2, 1], &[&[1, 0]]),
            inv(&[1, 2], &[&[1, 1]]),
            inv(&[1, 2], &[&[1, 0], &[0, 2]]),
            inv(&[1, 2], &[&[1, 0]]),
        ];
        let mut a = games.clone();
        let mut b = expected.clone();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        let veto = enumerate(
            &EnumSpec::new(3, 2).require([Role::Vetoer].into_iter().collect()),
            1,
        )
        .unwrap();
        assert_eq!(veto.len(), 3);
    }

    #[test]
    fn one_type_games() {
        let games = enumerate(&EnumSpec::new(3, 1), 1).unwrap();
        assert_eq!(
            games,
            vec![inv(&[3], &[&[3]]), inv(&[3], &[&[2]]), inv(&[3], &[&[1]])]
        );
    }

    #[test]
    fn small_counts() {
        assert_eq!(count(&EnumSpec::new(4, 3), 1).unwrap(), 6);
        assert_eq!(count(&EnumSpec::new(4, 3), 3).unwrap(), 6);
    }

    #[test]
    fn parallel_enumeration_keeps_order() {
        let spec = EnumSpec::new(6, 3);
        assert_eq!(enumerate(&spec, 1).unwrap(), enumerate(&spec, 4).unwrap());
    }

    #[test]
    fn rows_table() {
        let table = count_by_rows(3, Some(1), 1).unwrap();
        assert_eq!(table[&(1, 1)], 3);
        assert_eq!(table[&(2, 1)], 4);
        assert!(!table.contains_key(&(3, 1)));
        let one = count_by_rows(1, None, 1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[&(1, 1)], 1);
    }

    #[test]
    fn spec_validation() {
        assert!(count(&EnumSpec::new(3, 4), 1).is_err());
        assert!(count(&EnumSpec::new(0, 0), 1).is_err());
        assert!(count(&EnumSpec::new(3, 2).rows(0), 1).is_err());
    }

    #[test]
    fn capacity_guard() {
        assert!(matches!(count(&EnumSpec::new(40, 20), 1), Err(Error::Capacity(_))));
        assert!(matches!(
            enumerate(&EnumSpec::new(64, 31), 1),
            Err(Error::Capacity(_))
        ));
        assert_eq!(largest_box(5, 2), 12);
        assert_eq!(largest_box(30, 30), 1 << 30);
    }

    #[test]
    fn packed_and_wide_prefixes_agree() {
        let ctx = BoxContext::new(vec![2, 3, 1, 2, 1, 1, 2, 1, 1]).unwrap();
        let Prefix::Packed(p) = &ctx.prefix else {
            panic!("expected packed lanes")
        };
        let t = ctx.n_bar.len();
        let wide: Vec<u32> = ctx
            .profiles
            .iter()
            .flat_map(|c| {
                c.iter()
                    .scan(0, |a, &x| {
                        *a += x;
                        Some(*a)
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        let w = WidePrefix { t, data: &wide };
        let len = ctx.profiles.len() as u32;
        for a in (0..len).step_by(7) {
            for b in (0..len).step_by(5) {
                assert_eq!(p.ge(a, b), w.ge(a, b), "{a} {b}");
            }
        }
    }
}
