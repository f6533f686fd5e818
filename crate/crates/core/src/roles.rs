//! The six distinguished voter types.
//!
//! Roles are detected two ways: [`semantic_roles`] evaluates each definition
//! literally on coalitions of an extensional game, and [`structural_roles`]
//! answers the same questions with profile predicates on `(n̄, M)` without
//! expanding the game. The two agree on every complete game; the test suite
//! checks this exhaustively for small player counts.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::game::{Coalition, SimpleGame, TypePartition, WinningTable};
use crate::invariants::Invariants;
use crate::profile::Profile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Dictator,
    Vetoer,
    Passer,
    Null,
    SemiVetoer,
    SemiPasser,
}

impl Role {
    pub const ALL: [Role; 6] = [
        Role::Dictator,
        Role::Vetoer,
        Role::Passer,
        Role::Null,
        Role::SemiVetoer,
        Role::SemiPasser,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Role::Dictator => "dictator",
            Role::Vetoer => "vetoer",
            Role::Passer => "passer",
            Role::Null => "null",
            Role::SemiVetoer => "semi_vetoer",
            Role::SemiPasser => "semi_passer",
        }
    }

    fn bit(self) -> u8 {
        1 << self as u8
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Role {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s
            .trim()
            .to_ascii_lowercase()
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .collect();
        Ok(match key.as_str() {
            "dictator" | "d" => Role::Dictator,
            "vetoer" | "veto" | "v" => Role::Vetoer,
            "passer" | "p" => Role::Passer,
            "null" | "n" => Role::Null,
            "semivetoer" | "semiveto" | "sv" => Role::SemiVetoer,
            "semipasser" | "sp" => Role::SemiPasser,
            _ => return Err(Error::Input(format!("unknown role {s:?}"))),
        })
    }
}

/// Small set of roles.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleSet(u8);

impl RoleSet {
    pub const EMPTY: RoleSet = RoleSet(0);

    pub fn contains(self, r: Role) -> bool {
        self.0 & r.bit() != 0
    }

    pub fn insert(&mut self, r: Role) {
        self.0 |= r.bit();
    }

    pub fn union(self, other: RoleSet) -> RoleSet {
        RoleSet(self.0 | other.0)
    }

    pub fn contains_all(self, other: RoleSet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn intersects(self, other: RoleSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn iter(self) -> impl Iterator<Item = Role> {
        Role::ALL.into_iter().filter(move |r| self.contains(*r))
    }

    pub fn names(self) -> Vec<&'static str> {
        self.iter().map(Role::name).collect()
    }

    /// Subsets with exactly `k` roles, in bit order.
    pub fn subsets_of_size(self, k: u32) -> impl Iterator<Item = RoleSet> {
        (1u8..64)
            .filter(move |s| s & !self.0 == 0 && s.count_ones() == k)
            .map(RoleSet)
    }
}

impl FromIterator<Role> for RoleSet {
    fn from_iter<I: IntoIterator<Item = Role>>(iter: I) -> Self {
        let mut s = RoleSet::EMPTY;
        for r in iter {
            s.insert(r);
        }
        s
    }
}

impl fmt::Display for RoleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("none");
        }
        f.write_str(&self.names().join("+"))
    }
}

/// Roles per player and per desirability class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RoleReport {
    classes: Vec<Vec<u32>>,
    per_class: Vec<RoleSet>,
    per_player: Vec<RoleSet>,
}

impl RoleReport {
    fn from_classes(classes: Vec<Vec<u32>>, per_class: Vec<RoleSet>) -> Self {
        let n: usize = classes.iter().map(Vec::len).sum();
        let mut per_player = vec![RoleSet::EMPTY; n];
        for (c, members) in classes.iter().enumerate() {
            for &p in members {
                per_player[p as usize - 1] = per_class[c];
            }
        }
        RoleReport {
            classes,
            per_class,
            per_player,
        }
    }

    pub fn t(&self) -> usize {
        self.classes.len()
    }

    pub fn classes(&self) -> &[Vec<u32>] {
        &self.classes
    }

    /// Role set of a 0-based class.
    pub fn class_roles(&self, class: usize) -> RoleSet {
        self.per_class[class]
    }

    pub fn per_class(&self) -> &[RoleSet] {
        &self.per_class
    }

    /// Role set of a 1-based player.
    pub fn player_roles(&self, player: u32) -> RoleSet {
        self.per_player[player as usize - 1]
    }

    pub fn per_player(&self) -> &[RoleSet] {
        &self.per_player
    }

    /// Roles held by at least one player.
    pub fn present(&self) -> RoleSet {
        self.per_class
            .iter()
            .fold(RoleSet::EMPTY, |acc, &s| acc.union(s))
    }

    pub fn has(&self, r: Role) -> bool {
        self.present().contains(r)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "t": self.t(),
            "classes": self.classes.iter().zip(&self.per_class).map(|(m, r)| json!({
                "members": m,
                "roles": r.names(),
            })).collect::<Vec<_>>(),
            "players": self.per_player.iter().map(|r| r.names()).collect::<Vec<_>>(),
            "roles": self.present().names(),
        })
    }
}

/// Literal role predicates for every player of an arbitrary simple game.
pub fn semantic_player_roles(game: &SimpleGame) -> Result<Vec<RoleSet>> {
    let table = game.winning_table()?;
    Ok(player_roles_with(game, &table))
}

fn player_roles_with(game: &SimpleGame, table: &WinningTable) -> Vec<RoleSet> {
    let n = game.n();
    let grand = Coalition::grand(n);
    let mw = game.min_winning();
    (1..=n)
        .map(|i| {
            let mut s = RoleSet::EMPTY;
            let single = Coalition::singleton(i);
            if mw == [single] {
                s.insert(Role::Dictator);
            }
            if mw.iter().all(|m| m.contains(i)) {
                s.insert(Role::Vetoer);
            }
            if table.wins(single) {
                s.insert(Role::Passer);
            }
            if mw.iter().all(|m| !m.contains(i)) {
                s.insert(Role::Null);
            }
            let rest = grand.without(i);
            if table.wins(rest) && mw.iter().all(|m| m.contains(i) || *m == rest) {
                s.insert(Role::SemiVetoer);
            }
            if !table.wins(single) && (1..=n).all(|j| j == i || table.wins(single.with(j))) {
                s.insert(Role::SemiPasser);
            }
            s
        })
        .collect()
}

/// Literal coalition-level roles of a complete game, grouped by class.
pub fn semantic_roles(game: &SimpleGame) -> Result<RoleReport> {
    let table = game.winning_table()?;
    let partition = table.type_partition()?;
    let players = player_roles_with(game, &table);
    Ok(report_from_players(&partition, &players))
}

fn report_from_players(partition: &TypePartition, players: &[RoleSet]) -> RoleReport {
    let per_class = partition
        .classes()
        .iter()
        .map(|c| players[c[0] as usize - 1])
        .collect();
    let mut report = RoleReport::from_classes(partition.classes().to_vec(), per_class);
    report.per_player = players.to_vec();
    report
}

/// Role sets per class, read off `(n̄, M)` directly.
pub fn structural_class_roles(inv: &Invariants) -> Vec<RoleSet> {
    let t = inv.t();
    let n_bar = inv.n_bar();
    let n: u32 = inv.n();
    let rows = inv.rows();
    let mut out = vec![RoleSet::EMPTY; t];

    let dictator = (t == 1 && n == 1)
        || (n_bar[0] == 1
            && rows.len() == 1
            && rows[0].counts()[0] == 1
            && rows[0].counts()[1..].iter().all(|&x| x == 0));
    if dictator {
        out[0].insert(Role::Dictator);
    }
    if rows.iter().all(|r| r.counts()[0] == n_bar[0]) {
        out[0].insert(Role::Vetoer);
    }
    if inv.is_winning(&Profile::unit(t, 0)) {
        out[0].insert(Role::Passer);
    }
    if t >= 2 && rows.iter().all(|r| r.counts()[t - 1] == 0) {
        out[t - 1].insert(Role::Null);
    }

    let mut buf = n_bar.to_vec();
    for c in 0..t {
        // n̄ - e_c wins and is the only winning profile with fewer than n_c from class c
        buf.copy_from_slice(n_bar);
        buf[c] -= 1;
        let mut semi_veto = inv.wins_counts(&buf);
        if semi_veto {
            for j in 0..t {
                if buf[j] == 0 {
                    continue;
                }
                buf[j] -= 1;
                let w = inv.wins_counts(&buf);
                buf[j] += 1;
                if w {
                    semi_veto = false;
                    break;
                }
            }
        }
        if semi_veto {
            out[c].insert(Role::SemiVetoer);
        }

        // e_c loses, e_c + e_d wins for every other class d, and 2e_c wins if it exists
        buf.iter_mut().for_each(|x| *x = 0);
        buf[c] = 1;
        let mut semi_pass = !inv.wins_counts(&buf);
        if semi_pass && n_bar[c] >= 2 {
            buf[c] = 2;
            semi_pass = inv.wins_counts(&buf);
            buf[c] = 1;
        }
        for d in 0..t {
            if !semi_pass {
                break;
            }
            if d != c {
                buf[d] = 1;
                semi_pass = inv.wins_counts(&buf);
                buf[d] = 0;
            }
        }
        if semi_pass {
            out[c].insert(Role::SemiPasser);
        }
    }
    out
}

/// Roles present anywhere in the game described by `inv`.
pub fn structural_present(inv: &Invariants) -> RoleSet {
    structural_class_roles(inv)
        .into_iter()
        .fold(RoleSet::EMPTY, RoleSet::union)
}

/// Structural role report; classes take consecutive player indices.
pub fn structural_roles(inv: &Invariants) -> RoleReport {
    let mut next = 1;
    let classes = inv
        .n_bar()
        .iter()
        .map(|&s| {
            let c: Vec<u32> = (next..next + s).collect();
            next += s;
            c
        })
        .collect();
    RoleReport::from_classes(classes, structural_class_roles(inv))
}

/// Tally of role combinations observed over a stream of games.
///
/// Dictatorships are counted in their own bucket; every other game adds one
/// to each pair and triple of roles it contains. Tallies from disjoint
/// streams merge by addition.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RoleAudit {
    pub games: u64,
    pub dictator_games: u64,
    pub dictator_example: Option<Invariants>,
    pub combinations: BTreeMap<RoleSet, (u64, Invariants)>,
}

impl RoleAudit {
    pub fn observe(&mut self, inv: &Invariants) {
        self.games += 1;
        let present = structural_present(inv);
        if present.contains(Role::Dictator) {
            self.dictator_games += 1;
            self.dictator_example.get_or_insert_with(|| inv.clone());
            return;
        }
        for k in [2, 3] {
            for combo in present.subsets_of_size(k) {
                self.combinations
                    .entry(combo)
                    .and_modify(|e| e.0 += 1)
                    .or_insert_with(|| (1, inv.clone()));
            }
        }
    }

    /// Adds a tally gathered from games that come after `self`'s games.
    pub fn merge(mut self, later: RoleAudit) -> RoleAudit {
        self.games += later.games;
        self.dictator_games += later.dictator_games;
        if self.dictator_example.is_none() {
            self.dictator_example = later.dictator_example;
        }
        for (k, (c, ex)) in later.combinations {
            self.combinations
                .entry(k)
                .and_modify(|e| e.0 += c)
                .or_insert((c, ex));
        }
        self
    }

    pub fn count(&self, combo: RoleSet) -> u64 {
        self.combinations.get(&combo).map_or(0, |e| e.0)
    }

    /// CSV rows `combination,count,example`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Input(e.to_string());
        w.write_record(["combination", "count", "example"]).map_err(io)?;
        if let Some(ex) = &self.dictator_example {
            w.write_record([
                "dictator".to_string(),
                self.dictator_games.to_string(),
                crate::json::invariants_to_string(ex),
            ])
            .map_err(io)?;
        }
        for (combo, (count, ex)) in &self.combinations {
            w.write_record([
                combo.to_string(),
                count.to_string(),
                crate::json::invariants_to_string(ex),
            ])
            .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Input(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

pub fn audit_role_pairs<'a>(games: impl IntoIterator<Item = &'a Invariants>) -> RoleAudit {
    let mut audit = RoleAudit::default();
    for g in games {
        audit.observe(g);
    }
    audit
}
