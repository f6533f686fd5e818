//! Self-check suites behind `csg verify`. Each one returns a CSV table and
//! an overall pass flag.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::enumeration::{census_count, count, count_by_rows, enumerate, role_census, EnumSpec};
use crate::error::{Error, Result};
use crate::formulas::FormulaFamily;
use crate::invariants::Invariants;
use crate::oracle::OracleCatalog;
use crate::roles::{semantic_roles, structural_present, Role, RoleSet};
use crate::transforms::{apply_bijection, apply_inverse, dual, BijectionId};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Formulas,
    Bijections,
    Duality,
    Oracle,
    Rows,
    Sequences,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Formulas,
        Suite::Bijections,
        Suite::Duality,
        Suite::Oracle,
        Suite::Rows,
        Suite::Sequences,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Formulas => "formulas",
            Suite::Bijections => "bijections",
            Suite::Duality => "duality",
            Suite::Oracle => "oracle",
            Suite::Rows => "rows",
            Suite::Sequences => "sequences",
        }
    }

    pub fn default_max_n(self) -> u32 {
        match self {
            Suite::Formulas => 7,
            Suite::Bijections => 8,
            Suite::Duality => 6,
            Suite::Oracle => 5,
            Suite::Rows => 12,
            Suite::Sequences => 9,
        }
    }

    pub fn run(self, max_n: u32, jobs: usize) -> Result<SuiteReport> {
        match self {
            Suite::Formulas => formulas_suite(max_n, jobs),
            Suite::Bijections => bijections_suite(max_n, 4, jobs),
            Suite::Duality => duality_suite(max_n),
            Suite::Oracle => oracle_suite(max_n, jobs),
            Suite::Rows => rows_suite(max_n, jobs),
            Suite::Sequences => sequences_suite(max_n, jobs),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s.trim().to_ascii_lowercase())
            .ok_or_else(|| Error::Input(format!("unknown suite {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub csv: String,
    pub ok: bool,
}

struct Table {
    w: csv::Writer<Vec<u8>>,
    ok: bool,
}

impl Table {
    fn new(header: &[&str]) -> Result<Self> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(header).map_err(csv_err)?;
        Ok(Table { w, ok: true })
    }

    fn row(&mut self, fields: Vec<String>, pass: bool) -> Result<()> {
        self.ok &= pass;
        self.w.write_record(&fields).map_err(csv_err)
    }

    fn finish(self, suite: Suite) -> Result<SuiteReport> {
        let bytes = self.w.into_inner().map_err(|e| Error::Input(e.to_string()))?;
        Ok(SuiteReport {
            suite,
            csv: String::from_utf8(bytes).expect("csv output is utf-8"),
            ok: self.ok,
        })
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Input(e.to_string())
}

fn roles(list: &[Role]) -> RoleSet {
    list.iter().copied().collect()
}

/// Role filter backing each formula family, and whether it sums over all `t`.
fn family_filter(f: FormulaFamily) -> Option<(RoleSet, Option<u32>)> {
    use FormulaFamily::*;
    use Role::*;
    Some(match f {
        Fib => return None,
        CgT1 => (RoleSet::EMPTY, Some(1)),
        CgT2 => (RoleSet::EMPTY, Some(2)),
        CgvT1 => (roles(&[Vetoer]), Some(1)),
        CgvT2 => (roles(&[Vetoer]), Some(2)),
        CgvT3 => (roles(&[Vetoer]), Some(3)),
        CgvnT2 => (roles(&[Vetoer, Null]), Some(2)),
        CgvnT3 => (roles(&[Vetoer, Null]), Some(3)),
        CgvnT4 => (roles(&[Vetoer, Null]), Some(4)),
        Cgd | CgdNt => (roles(&[Dictator]), None),
        Cgdn => (roles(&[Dictator, Null]), None),
        Cgsvsp | CgsvspNt => (roles(&[SemiVetoer, SemiPasser]), None),
        Cgvsp | CgvspNt => (roles(&[Vetoer, SemiPasser]), None),
        Cgpsv | CgpsvNt => (roles(&[Passer, SemiVetoer]), None),
    })
}

/// Census tables for every `t ≤ n` up to `max_n`.
pub struct CensusTable {
    by_nt: BTreeMap<(u32, u32), BTreeMap<RoleSet, u64>>,
}

impl CensusTable {
    pub fn build(max_n: u32, jobs: usize) -> Result<Self> {
        let mut by_nt = BTreeMap::new();
        for n in 1..=max_n {
            for t in 1..=n {
                by_nt.insert((n, t), role_census(n, t, jobs)?);
            }
        }
        Ok(CensusTable { by_nt })
    }

    pub fn count(&self, n: u32, t: u32, require: RoleSet) -> u64 {
        self.by_nt
            .get(&(n, t))
            .map_or(0, |c| census_count(c, require, RoleSet::EMPTY))
    }

    pub fn count_all_t(&self, n: u32, require: RoleSet) -> u64 {
        (1..=n).map(|t| self.count(n, t, require)).sum()
    }
}

/// Compares each formula family with filtered enumeration for `n ≤ max_n`.
pub fn formulas_suite(max_n: u32, jobs: usize) -> Result<SuiteReport> {
    let census = CensusTable::build(max_n, jobs)?;
    let mut table = Table::new(&["family", "n", "t", "formula", "enumerated", "match"])?;
    for f in FormulaFamily::ALL {
        let Some((require, fixed_t)) = family_filter(f) else {
            continue;
        };
        for n in (f.min_n().max(1) as u32)..=max_n {
            let cells: Vec<(Option<u32>, u64)> = match fixed_t {
                Some(t) if t > n => continue,
                Some(t) => vec![(None, census.count(n, t, require))],
                None if f.requires_t() => (1..=n)
                    .map(|t| (Some(t), census.count(n, t, require)))
                    .collect(),
                None => vec![(None, census.count_all_t(n, require))],
            };
            for (t, enumerated) in cells {
                let formula = f.evaluate(n as u64, t.map(u64::from))?;
                let pass = formula == BigInt::from(enumerated);
                table.row(
                    vec![
                        f.name().into(),
                        n.to_string(),
                        fixed_t.or(t).map_or("all".into(), |t| t.to_string()),
                        formula.to_string(),
                        enumerated.to_string(),
                        pass.to_string(),
                    ],
                    pass,
                )?;
            }
        }
    }
    table.finish(Suite::Formulas)
}

/// One bijection checked on one `(n, t)` cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionCheck {
    pub id: BijectionId,
    pub label: &'static str,
    pub n: u32,
    pub t: u32,
    pub domain: usize,
    pub codomain: usize,
    pub images: usize,
    pub ok: bool,
    pub failure: Option<String>,
}

/// Domain and codomain role filters of each bijection. Duality carries two
/// pairs of classes.
pub fn bijection_classes(id: BijectionId) -> Vec<(&'static str, RoleSet, RoleSet)> {
    use Role::*;
    match id {
        BijectionId::F => vec![("v_to_n", roles(&[Vetoer]), roles(&[Null]))],
        BijectionId::G => vec![("p_to_n", roles(&[Passer]), roles(&[Null]))],
        BijectionId::H => vec![("v_to_sv", roles(&[Vetoer]), roles(&[SemiVetoer]))],
        BijectionId::K => vec![("p_to_sp", roles(&[Passer]), roles(&[SemiPasser]))],
        BijectionId::HPrime => vec![
            ("vn_to_pn", roles(&[Vetoer, Null]), roles(&[Passer, Null])),
            (
                "vsv_to_psp",
                roles(&[Vetoer, SemiVetoer]),
                roles(&[Passer, SemiPasser]),
            ),
        ],
        BijectionId::HSecond => vec![(
            "vsv_to_vn",
            roles(&[Vetoer, SemiVetoer]),
            roles(&[Vetoer, Null]),
        )],
    }
}

/// Whether the map is defined for `(n, t)`: the null-producing maps need two
/// types, and the semi-role maps need two voters.
pub fn bijection_applies(id: BijectionId, n: u32, t: u32) -> bool {
    match id {
        BijectionId::F | BijectionId::G => t >= 2,
        BijectionId::H | BijectionId::K => n >= 2,
        BijectionId::HPrime | BijectionId::HSecond => t >= 2 && n >= 2,
    }
}

/// Exhaustive check that `id` maps its domain class onto its codomain class
/// injectively, and that the inverse undoes it.
pub fn check_bijection(id: BijectionId, n: u32, t: u32, jobs: usize) -> Result<Vec<BijectionCheck>> {
    let mut out = Vec::new();
    for (label, dom, cod) in bijection_classes(id) {
        let domain = enumerate(&EnumSpec::new(n, t).require(dom), jobs)?;
        let codomain: BTreeSet<Invariants> =
            enumerate(&EnumSpec::new(n, t).require(cod), jobs)?.into_iter().collect();
        let mut images = BTreeSet::new();
        let mut failure = None;
        for g in &domain {
            let img = match apply_bijection(id, g) {
                Ok(img) => img,
                Err(e) => {
                    failure.get_or_insert_with(|| format!("{id} failed: {e}"));
                    continue;
                }
            };
            if !codomain.contains(&img) {
                failure.get_or_insert_with(|| format!("{id} left the codomain"));
            }
            match apply_inverse(id, &img) {
                Ok(back) if back == *g => {}
                _ => {
                    failure.get_or_insert_with(|| format!("{id} inverse did not recover input"));
                }
            }
            images.insert(img);
        }
        if images.len() != domain.len() && failure.is_none() {
            failure = Some(format!("{id} is not injective"));
        }
        if images.len() != codomain.len() && failure.is_none() {
            failure = Some(format!("{id} is not onto"));
        }
        out.push(BijectionCheck {
            id,
            label,
            n,
            t,
            domain: domain.len(),
            codomain: codomain.len(),
            images: images.len(),
            ok: failure.is_none(),
            failure,
        });
    }
    Ok(out)
}

pub fn bijections_suite(max_n: u32, max_t: u32, jobs: usize) -> Result<SuiteReport> {
    let mut table = Table::new(&[
        "n", "t", "bijection", "classes", "domain", "codomain", "images", "match",
    ])?;
    for n in 1..=max_n {
        for t in 1..=n.min(max_t) {
            for id in BijectionId::ALL {
                if !bijection_applies(id, n, t) {
                    continue;
                }
                for c in check_bijection(id, n, t, jobs)? {
                    table.row(
                        vec![
                            n.to_string(),
                            t.to_string(),
                            id.name().into(),
                            c.label.into(),
                            c.domain.to_string(),
                            c.codomain.to_string(),
                            c.images.to_string(),
                            c.ok.to_string(),
                        ],
                        c.ok,
                    )?;
                }
            }
        }
    }
    table.finish(Suite::Bijections)
}

/// Duality over every complete game with `n ≤ max_n`: involution on games,
/// agreement of the invariant route, and the role swap.
pub fn duality_suite(max_n: u32) -> Result<SuiteReport> {
    let mut table = Table::new(&["n", "games", "involution", "invariant_route", "role_swap", "match"])?;
    for n in 1..=max_n {
        let (mut games, mut inv_ok, mut inv_route, mut swap_ok) = (0u64, 0u64, 0u64, 0u64);
        for t in 1..=n {
            for inv in enumerate(&EnumSpec::new(n, t), 1)? {
                games += 1;
                let g = inv.expand()?;
                let d = dual(&g)?;
                if dual(&d)? == g {
                    inv_ok += 1;
                }
                if Invariants::extract(&d)? == inv.dual()? {
                    inv_route += 1;
                }
                if role_swap_holds(&g, &d)? {
                    swap_ok += 1;
                }
            }
        }
        let pass = inv_ok == games && inv_route == games && swap_ok == games;
        table.row(
            vec![
                n.to_string(),
                games.to_string(),
                inv_ok.to_string(),
                inv_route.to_string(),
                swap_ok.to_string(),
                pass.to_string(),
            ],
            pass,
        )?;
    }
    table.finish(Suite::Duality)
}

/// Vetoers and passers trade places under duality, as do semi-vetoers and
/// semi-passers; nulls stay nulls.
pub fn role_swap_holds(g: &crate::game::SimpleGame, d: &crate::game::SimpleGame) -> Result<bool> {
    use Role::*;
    let a = semantic_roles(g)?;
    let b = semantic_roles(d)?;
    Ok((1..=g.n()).all(|i| {
        let (x, y) = (a.player_roles(i), b.player_roles(i));
        x.contains(Vetoer) == y.contains(Passer)
            && x.contains(Passer) == y.contains(Vetoer)
            && x.contains(Null) == y.contains(Null)
            && x.contains(SemiVetoer) == y.contains(SemiPasser)
            && x.contains(SemiPasser) == y.contains(SemiVetoer)
    }))
}

/// Role filters used across the counting checks.
pub fn standard_filters() -> Vec<RoleSet> {
    use Role::*;
    let mut out = vec![RoleSet::EMPTY];
    out.extend(Role::ALL.iter().map(|&r| roles(&[r])));
    for pair in [
        [Vetoer, Null],
        [Passer, Null],
        [Vetoer, SemiVetoer],
        [Passer, SemiPasser],
        [Dictator, Null],
        [SemiVetoer, SemiPasser],
        [Vetoer, SemiPasser],
        [Passer, SemiVetoer],
    ] {
        out.push(roles(&pair));
    }
    out
}

pub fn filter_label(s: RoleSet) -> String {
    if s.is_empty() {
        "all".into()
    } else {
        s.to_string()
    }
}

/// Brute-force catalogue against the enumerator, cell by cell.
pub fn oracle_suite(max_n: u32, jobs: usize) -> Result<SuiteReport> {
    let mut table = Table::new(&["n", "t", "filter", "oracle", "enumerated", "match"])?;
    for n in 1..=max_n {
        let cat = OracleCatalog::build(n)?;
        for t in 1..=n {
            let games: BTreeSet<Invariants> = enumerate(&EnumSpec::new(n, t), jobs)?.into_iter().collect();
            let oracle_set: BTreeSet<&Invariants> =
                cat.classes().keys().filter(|i| i.t() == t as usize).collect();
            let same = games.iter().collect::<BTreeSet<_>>() == oracle_set;
            table.row(
                vec![
                    n.to_string(),
                    t.to_string(),
                    "identical_catalogue".into(),
                    oracle_set.len().to_string(),
                    games.len().to_string(),
                    same.to_string(),
                ],
                same,
            )?;
            for f in standard_filters() {
                let o = cat.count(t, f, RoleSet::EMPTY);
                let e = count(&EnumSpec::new(n, t).require(f), jobs)?;
                let pass = e == o;
                table.row(
                    vec![
                        n.to_string(),
                        t.to_string(),
                        filter_label(f),
                        o.to_string(),
                        e.to_string(),
                        pass.to_string(),
                    ],
                    pass,
                )?;
            }
            let structural: BTreeMap<&Invariants, RoleSet> =
                games.iter().map(|g| (g, structural_present(g))).collect();
            let roles_agree = cat
                .classes()
                .iter()
                .filter(|(i, _)| i.t() == t as usize)
                .all(|(i, r)| structural.get(i) == Some(r));
            table.row(
                vec![
                    n.to_string(),
                    t.to_string(),
                    "role_sets".into(),
                    oracle_set.len().to_string(),
                    structural.len().to_string(),
                    roles_agree.to_string(),
                ],
                roles_agree,
            )?;
        }
    }
    table.finish(Suite::Oracle)
}

/// Single-row games over all `t` number `2^n − 1`.
pub fn rows_suite(max_n: u32, jobs: usize) -> Result<SuiteReport> {
    let mut table = Table::new(&["n", "r1_total", "expected", "match"])?;
    for n in 1..=max_n {
        let cells = count_by_rows(n, Some(1), jobs)?;
        let total: num_bigint::BigUint = cells.values().map(|c| c.value().clone()).sum();
        let expected = (num_bigint::BigUint::from(1u32) << n) - 1u32;
        let pass = total == expected;
        table.row(
            vec![n.to_string(), total.to_string(), expected.to_string(), pass.to_string()],
            pass,
        )?;
    }
    table.finish(Suite::Rows)
}

/// Published counts reproduced by enumeration.
pub struct KnownCount {
    pub name: &'static str,
    pub n: u32,
    pub t: u32,
    pub require: &'static [Role],
    pub value: u64,
}

pub const KNOWN_COUNTS: &[KnownCount] = {
    const fn k(name: &'static str, n: u32, t: u32, require: &'static [Role], value: u64) -> KnownCount {
        KnownCount {
            name,
            n,
            t,
            require,
            value,
        }
    }
    const V: &[Role] = &[Role::Vetoer];
    const VN: &[Role] = &[Role::Vetoer, Role::Null];
    &[
        k("cg", 4, 3, &[], 6),
        k("cg", 5, 3, &[], 50),
        k("cg", 6, 3, &[], 262),
        k("cg", 7, 3, &[], 1114),
        k("cg", 8, 3, &[], 4278),
        k("cg", 9, 3, &[], 15769),
        k("cg", 10, 3, &[], 58147),
        k("cg", 11, 3, &[], 221089),
        k("cg", 10, 4, &[], 4570902),
        k("cg", 11, 4, &[], 59776637),
        k("cgv", 4, 3, V, 2),
        k("cgv", 5, 3, V, 11),
        k("cgv", 6, 3, V, 37),
        k("cgv", 7, 3, V, 98),
        k("cgv", 8, 3, V, 225),
        k("cgv", 9, 3, V, 470),
        k("cgvn", 5, 4, VN, 1),
        k("cgvn", 6, 4, VN, 8),
        k("cgvn", 7, 4, VN, 35),
        k("cgvn", 8, 4, VN, 113),
        k("cgvn", 9, 4, VN, 303),
    ]
};

pub fn sequences_suite(max_n: u32, jobs: usize) -> Result<SuiteReport> {
    let mut table = Table::new(&["sequence", "n", "t", "expected", "enumerated", "match"])?;
    for n in 1..=max_n {
        let e = count(&EnumSpec::new(n, 1), jobs)?;
        let pass = e == n as u64;
        table.row(
            vec!["cg".into(), n.to_string(), "1".into(), n.to_string(), e.to_string(), pass.to_string()],
            pass,
        )?;
    }
    for k in KNOWN_COUNTS.iter().filter(|k| k.n <= max_n) {
        let spec = EnumSpec::new(k.n, k.t).require(k.require.iter().copied().collect());
        let e = count(&spec, jobs)?;
        let pass = e == k.value;
        table.row(
            vec![
                k.name.into(),
                k.n.to_string(),
                k.t.to_string(),
                k.value.to_string(),
                e.to_string(),
                pass.to_string(),
            ],
            pass,
        )?;
    }
    table.finish(Suite::Sequences)
}
