//! Duality and the structural bijections between role classes.
//!
//! Every bijection works on `(n̄, M)` directly and re-sorts rows into
//! canonical order after its edit. Domain membership is checked with the
//! structural role predicates; an input outside the domain is an error.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::game::{Coalition, SimpleGame};
use crate::invariants::Invariants;
use crate::roles::{structural_present, Role, RoleSet};

/// Dual game: `S` wins iff its complement loses in `game`.
pub fn dual(game: &SimpleGame) -> Result<SimpleGame> {
    let table = game.winning_table()?;
    let n = game.n();
    let grand = Coalition::grand(n).bits();
    let dual_wins = |s: u64| !table.wins(Coalition::from_bits(grand & !s));
    let mut mw = Vec::new();
    for s in 1..=grand {
        if dual_wins(s) && Coalition::from_bits(s).members().all(|i| !dual_wins(s & !(1 << (i - 1)))) {
            mw.push(Coalition::from_bits(s));
        }
    }
    SimpleGame::new(n, mw)
}

/// Dual on invariants; the class vector is unchanged.
pub fn dual_inv(inv: &Invariants) -> Result<Invariants> {
    inv.dual()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BijectionId {
    /// Vetoers to nulls.
    F,
    /// Passers to nulls.
    G,
    /// Vetoers to semi-vetoers.
    H,
    /// Passers to semi-passers.
    K,
    /// Duality on veto+null (resp. veto+semi-veto) games.
    HPrime,
    /// Veto+semi-veto to veto+null.
    HSecond,
}

impl BijectionId {
    pub const ALL: [BijectionId; 6] = [
        BijectionId::F,
        BijectionId::G,
        BijectionId::H,
        BijectionId::K,
        BijectionId::HPrime,
        BijectionId::HSecond,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BijectionId::F => "f",
            BijectionId::G => "g",
            BijectionId::H => "h",
            BijectionId::K => "k",
            BijectionId::HPrime => "h1",
            BijectionId::HSecond => "h2",
        }
    }
}

impl fmt::Display for BijectionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BijectionId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim().to_ascii_lowercase().as_str() {
            "f" => BijectionId::F,
            "g" => BijectionId::G,
            "h" => BijectionId::H,
            "k" => BijectionId::K,
            "h1" | "hprime" | "h'" => BijectionId::HPrime,
            "h2" | "hsecond" | "h''" => BijectionId::HSecond,
            _ => return Err(Error::Input(format!("unknown bijection {s:?}"))),
        })
    }
}

fn need(present: RoleSet, role: Role, id: &str) -> Result<()> {
    if present.contains(role) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{id} requires a {role} in the game")))
    }
}

fn need_types(inv: &Invariants, id: &str) -> Result<()> {
    if inv.t() < 2 {
        Err(Error::Domain(format!("{id} requires at least two types of voters")))
    } else {
        Ok(())
    }
}

fn need_players(inv: &Invariants, id: &str) -> Result<()> {
    if inv.n() < 2 {
        Err(Error::Domain(format!("{id} requires at least two voters")))
    } else {
        Ok(())
    }
}

fn need_either(present: RoleSet, a: Role, b: Role, id: &str) -> Result<()> {
    if present.contains(a) || present.contains(b) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{id} requires a {a} or a {b} in the game")))
    }
}

fn rebuild(n_bar: Vec<u32>, rows: Vec<Vec<u32>>, id: &str) -> Result<Invariants> {
    Invariants::canonical(n_bar, rows).map_err(|e| {
        Error::Validation(format!("bijection {id} produced invalid invariants: {e}"))
    })
}

fn rotate_left(v: &[u32]) -> Vec<u32> {
    let mut out = v[1..].to_vec();
    out.push(v[0]);
    out
}

fn rotate_right(v: &[u32]) -> Vec<u32> {
    let mut out = vec![v[v.len() - 1]];
    out.extend_from_slice(&v[..v.len() - 1]);
    out
}

/// Applies one of the six maps to invariants in its domain class.
pub fn apply_bijection(id: BijectionId, inv: &Invariants) -> Result<Invariants> {
    let present = structural_present(inv);
    let name = id.name();
    let n_bar = inv.n_bar();
    let t = inv.t();
    let m = inv.matrix();
    match id {
        BijectionId::F => {
            need_types(inv, name)?;
            need(present, Role::Vetoer, name)?;
            if present.contains(Role::Null) {
                return Ok(inv.clone());
            }
            let rows = m.iter().map(|r| rotate_left(r)).map(zero_last).collect();
            rebuild(rotate_left(n_bar), rows, name)
        }
        BijectionId::G => {
            need_types(inv, name)?;
            need(present, Role::Passer, name)?;
            if present.contains(Role::Null) {
                return Ok(inv.clone());
            }
            let rows = m[1..].iter().map(|r| rotate_left(r)).map(zero_last).collect();
            rebuild(rotate_left(n_bar), rows, name)
        }
        BijectionId::H => {
            need_players(inv, name)?;
            need(present, Role::Vetoer, name)?;
            if present.contains(Role::SemiVetoer) {
                return Ok(inv.clone());
            }
            let mut rows = m;
            let mut last = n_bar.to_vec();
            last[0] -= 1;
            if t == 1 {
                rows = vec![last];
            } else {
                rows.push(last);
            }
            rebuild(n_bar.to_vec(), rows, name)
        }
        BijectionId::K => {
            need_players(inv, name)?;
            need(present, Role::Passer, name)?;
            if present.contains(Role::SemiPasser) {
                return Ok(inv.clone());
            }
            let mut rows = m;
            rows[0][t - 1] += 1;
            rebuild(n_bar.to_vec(), rows, name)
        }
        BijectionId::HPrime => {
            need_types(inv, name)?;
            need_players(inv, name)?;
            need(present, Role::Vetoer, name)?;
            need_either(present, Role::Null, Role::SemiVetoer, name)?;
            inv.dual()
        }
        BijectionId::HSecond => {
            need_types(inv, name)?;
            need_players(inv, name)?;
            need(present, Role::Vetoer, name)?;
            need(present, Role::SemiVetoer, name)?;
            if t == 2 {
                if m != [vec![n_bar[0], n_bar[1] - 1]] {
                    return Err(Error::Domain(format!(
                        "{name} expects M = (n1, n2-1) for two types"
                    )));
                }
                return rebuild(n_bar.to_vec(), vec![vec![n_bar[0], 0]], name);
            }
            // Rows are (n1, n2, x) above a last row (n1, n2 - 1, n3, ..., nt).
            let mut last = n_bar.to_vec();
            last[1] -= 1;
            if m.len() < 2 || m[m.len() - 1] != last {
                return Err(Error::Domain(format!(
                    "{name} expects a last row (n1, n2-1, n3, ..., nt)"
                )));
            }
            let body = &m[..m.len() - 1];
            if body.iter().any(|r| r[0] != n_bar[0] || r[1] != n_bar[1]) {
                return Err(Error::Domain(format!(
                    "{name} expects every other row to start with (n1, n2)"
                )));
            }
            let (sizes, rows) = spread(
                n_bar[2..].to_vec(),
                body.iter().map(|r| r[2..].to_vec()).collect(),
            );
            let mut out_bar = vec![n_bar[0]];
            out_bar.extend(&sizes);
            out_bar.push(n_bar[1]);
            let rows = rows
                .into_iter()
                .map(|x| {
                    let mut v = vec![n_bar[0]];
                    v.extend(x);
                    v.push(0);
                    v
                })
                .collect();
            rebuild(out_bar, rows, name)
        }
    }
}

/// Inverse of [`apply_bijection`], defined on the codomain class.
pub fn apply_inverse(id: BijectionId, inv: &Invariants) -> Result<Invariants> {
    let present = structural_present(inv);
    let name = format!("{}^-1", id.name());
    let name = name.as_str();
    let n_bar = inv.n_bar();
    let t = inv.t();
    let m = inv.matrix();
    match id {
        BijectionId::F => {
            need_types(inv, name)?;
            need(present, Role::Null, name)?;
            if present.contains(Role::Vetoer) {
                return Ok(inv.clone());
            }
            let top = n_bar[t - 1];
            let rows = m
                .iter()
                .map(|r| {
                    let mut v = rotate_right(r);
                    v[0] = top;
                    v
                })
                .collect();
            rebuild(rotate_right(n_bar), rows, name)
        }
        BijectionId::G => {
            need_types(inv, name)?;
            need(present, Role::Null, name)?;
            if present.contains(Role::Passer) {
                return Ok(inv.clone());
            }
            let mut passer = vec![0; t];
            passer[0] = 1;
            let mut rows = vec![passer];
            rows.extend(m.iter().map(|r| {
                let mut v = rotate_right(r);
                v[0] = 0;
                v
            }));
            rebuild(rotate_right(n_bar), rows, name)
        }
        BijectionId::H => {
            need_players(inv, name)?;
            need(present, Role::SemiVetoer, name)?;
            if present.contains(Role::Vetoer) {
                return Ok(inv.clone());
            }
            let mut last = n_bar.to_vec();
            last[0] -= 1;
            if t == 1 {
                return rebuild(n_bar.to_vec(), vec![n_bar.to_vec()], name);
            }
            let pos = m.iter().position(|r| *r == last).ok_or_else(|| {
                Error::Domain(format!("{name} expects a row (n1-1, n2, ..., nt)"))
            })?;
            let mut rows = m;
            rows.remove(pos);
            rebuild(n_bar.to_vec(), rows, name)
        }
        BijectionId::K => {
            need_players(inv, name)?;
            need(present, Role::SemiPasser, name)?;
            if present.contains(Role::Passer) {
                return Ok(inv.clone());
            }
            if t == 1 {
                return rebuild(n_bar.to_vec(), vec![vec![1]], name);
            }
            let mut expected = vec![0; t];
            expected[0] = 1;
            expected[t - 1] = 1;
            if m[0] != expected {
                return Err(Error::Domain(format!(
                    "{name} expects first row (1, 0, ..., 0, 1)"
                )));
            }
            let mut rows = m;
            rows[0][t - 1] = 0;
            rebuild(n_bar.to_vec(), rows, name)
        }
        BijectionId::HPrime => {
            need_types(inv, name)?;
            need_players(inv, name)?;
            need(present, Role::Passer, name)?;
            need_either(present, Role::Null, Role::SemiPasser, name)?;
            inv.dual()
        }
        BijectionId::HSecond => {
            need_types(inv, name)?;
            need_players(inv, name)?;
            need(present, Role::Vetoer, name)?;
            need(present, Role::Null, name)?;
            if t == 2 {
                if m != [vec![n_bar[0], 0]] {
                    return Err(Error::Domain(format!("{name} expects M = (n1, 0)")));
                }
                return rebuild(n_bar.to_vec(), vec![vec![n_bar[0], n_bar[1] - 1]], name);
            }
            if m.iter().any(|r| r[0] != n_bar[0] || r[t - 1] != 0) {
                return Err(Error::Domain(format!(
                    "{name} expects rows of the form (n1, y, 0)"
                )));
            }
            let (sizes, rows) = gather(
                n_bar[1..t - 1].to_vec(),
                m.iter().map(|r| r[1..t - 1].to_vec()).collect(),
            );
            let null = n_bar[t - 1];
            let mut orig = vec![n_bar[0], null];
            orig.extend(&sizes);
            let mut rows: Vec<Vec<u32>> = rows
                .into_iter()
                .map(|x| {
                    let mut v = vec![n_bar[0], null];
                    v.extend(x);
                    v
                })
                .collect();
            let mut last = orig.clone();
            last[1] -= 1;
            rows.push(last);
            rebuild(orig, rows, name)
        }
    }
}

/// Re-encodes the tail of a veto+semi-veto game as the middle of a
/// veto+null game.
///
/// The tail is the part of the rows after the first two classes, minus the
/// last row: an antichain of the box `b` whose members each leave out at
/// least two voters. The middle is the part between the first and the last
/// class: an antichain of `b` with some member using the last class. Both
/// kinds satisfy the same separation conditions. A veto+semi-veto tail
/// that uses its last class is already a veto+null tail, and `spread` keeps
/// it. A tail that ignores its last class is, with that class dropped, a
/// veto+null tail one class shorter; `gather` turns it into a shorter
/// veto+semi-veto tail, which is widened by a full first class and the
/// profile `T - e_1`. Veto+null tails holding `T - e_1` are exactly the
/// ones not reached by the first case. With one class the map sends `0` to
/// `b_1 - 1` and fixes everything else.
fn spread(b: Vec<u32>, rows: Vec<Vec<u32>>) -> (Vec<u32>, Vec<Vec<u32>>) {
    let s = b.len();
    if rows.iter().any(|x| x[s - 1] > 0) {
        return (b, rows);
    }
    if s == 1 {
        return (b.clone(), vec![vec![b[0] - 1]]);
    }
    let inner_rows = rows.iter().map(|x| x[..s - 1].to_vec()).collect();
    let (inner, shorter) = gather(b[..s - 1].to_vec(), inner_rows);
    let mut sizes = vec![b[s - 1]];
    sizes.extend(&inner);
    let mut near_top = sizes.clone();
    near_top[0] -= 1;
    let mut out = vec![near_top];
    out.extend(shorter.into_iter().map(|x| {
        let mut v = vec![sizes[0]];
        v.extend(x);
        v
    }));
    (sizes, out)
}

/// Inverse of [`spread`].
fn gather(b: Vec<u32>, rows: Vec<Vec<u32>>) -> (Vec<u32>, Vec<Vec<u32>>) {
    let s = b.len();
    let mut near_top = b.clone();
    near_top[0] -= 1;
    if !rows.contains(&near_top) {
        return (b, rows);
    }
    if s == 1 {
        return (b, vec![vec![0]]);
    }
    let rest = rows
        .into_iter()
        .filter(|x| *x != near_top)
        .map(|x| x[1..].to_vec())
        .collect();
    let (inner, longer) = spread(b[1..].to_vec(), rest);
    let mut sizes = inner;
    sizes.push(b[0]);
    let out = longer
        .into_iter()
        .map(|mut x| {
            x.push(0);
            x
        })
        .collect();
    (sizes, out)
}

fn zero_last(mut v: Vec<u32>) -> Vec<u32> {
    if let Some(x) = v.last_mut() {
        *x = 0;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(n_bar: &[u32], m: &[&[u32]]) -> Invariants {
        Invariants::validate(n_bar.to_vec(), m.iter().map(|r| r.to_vec()).collect()).unwrap()
    }

    #[test]
    fn dual_examples() {
        let d = inv(&[1, 3], &[&[1, 0]]).expand().unwrap();
        assert_eq!(dual(&d).unwrap(), d);
        let u = inv(&[4], &[&[4]]);
        assert_eq!(dual_inv(&u).unwrap(), inv(&[4], &[&[1]]));
        assert_eq!(
            Invariants::extract(&dual(&u.expand().unwrap()).unwrap()).unwrap(),
            inv(&[4], &[&[1]])
        );
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(
            apply_bijection(BijectionId::F, &inv(&[1, 2], &[&[1, 1]])).unwrap(),
            inv(&[2, 1], &[&[1, 0]])
        );
        assert_eq!(
            apply_bijection(BijectionId::H, &inv(&[1, 2], &[&[1, 0]])).unwrap(),
            inv(&[1, 2], &[&[1, 0], &[0, 2]])
        );
        assert_eq!(
            apply_bijection(BijectionId::K, &inv(&[1, 2], &[&[1, 0]])).unwrap(),
            inv(&[1, 2], &[&[1, 1]])
        );
        assert_eq!(
            apply_bijection(BijectionId::HSecond, &inv(&[1, 2], &[&[1, 1]])).unwrap(),
            inv(&[1, 2], &[&[1, 0]])
        );
        assert_eq!(
            apply_bijection(BijectionId::HSecond, &inv(&[2, 1], &[&[2, 0]])).unwrap(),
            inv(&[2, 1], &[&[2, 0]])
        );
    }

    #[test]
    fn domain_violations_are_errors() {
        let ex2 = inv(&[2, 3], &[&[2, 0], &[0, 3]]);
        for id in BijectionId::ALL {
            let e = apply_bijection(id, &ex2).unwrap_err();
            assert!(matches!(e, Error::Domain(_)), "{id}: {e}");
        }
        // a unanimity game has veto but no null class to map into
        assert!(apply_bijection(BijectionId::F, &inv(&[3], &[&[3]])).is_err());
        assert!(apply_bijection(BijectionId::H, &inv(&[1], &[&[1]])).is_err());
    }

    #[test]
    fn single_type_cases() {
        for n in 2..6 {
            assert_eq!(
                apply_bijection(BijectionId::H, &inv(&[n], &[&[n]])).unwrap(),
                inv(&[n], &[&[n - 1]])
            );
            assert_eq!(
                apply_bijection(BijectionId::K, &inv(&[n], &[&[1]])).unwrap(),
                inv(&[n], &[&[2]])
            );
        }
    }

    #[test]
    fn names_parse() {
        for id in BijectionId::ALL {
            assert_eq!(id.name().parse::<BijectionId>().unwrap(), id);
        }
        assert!("q".parse::<BijectionId>().is_err());
    }
}
