//! Canonical JSON forms for games, invariants and weighted representations.
//!
//! Output is compact with object keys in sorted order, so equal values always
//! serialize to identical bytes.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::game::{Coalition, SimpleGame, WeightedRepresentation};
use crate::invariants::Invariants;

/// `{"min_winning": [[1,2],[1,3]], "n": 3}`
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct GameJson {
    pub min_winning: Vec<Vec<u32>>,
    pub n: u32,
}

/// `{"M": [[2,0],[0,3]], "n_bar": [2,3]}`
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct InvariantsJson {
    #[serde(rename = "M")]
    pub m: Vec<Vec<u32>>,
    pub n_bar: Vec<u32>,
}

/// `{"quota": "12", "weights": ["4","4","4","2","2","1"]}`
#[derive(Serialize, Deserialize, Debug, Clone)]
#[serde(deny_unknown_fields)]
pub struct WeightedJson {
    pub quota: String,
    pub weights: Vec<String>,
}

impl From<&SimpleGame> for GameJson {
    fn from(g: &SimpleGame) -> Self {
        GameJson {
            min_winning: g.min_winning().iter().map(|c| c.to_vec()).collect(),
            n: g.n(),
        }
    }
}

impl From<&Invariants> for InvariantsJson {
    fn from(i: &Invariants) -> Self {
        InvariantsJson {
            m: i.matrix(),
            n_bar: i.n_bar().to_vec(),
        }
    }
}

impl GameJson {
    /// Strict: the family must already be an antichain.
    pub fn into_game(self) -> Result<SimpleGame> {
        let coalitions = self
            .min_winning
            .iter()
            .map(|m| Coalition::from_members(m, self.n))
            .collect::<Result<Vec<_>>>()?;
        SimpleGame::new(self.n, coalitions)
    }
}

impl InvariantsJson {
    pub fn into_invariants(self) -> Result<Invariants> {
        Invariants::validate(self.n_bar, self.m)
    }
}

/// Any of the accepted input shapes.
#[derive(Debug, Clone)]
pub enum GameInput {
    Game(SimpleGame),
    Invariants(Invariants),
}

impl GameInput {
    pub fn invariants(&self) -> Result<Invariants> {
        match self {
            GameInput::Game(g) => Invariants::extract(g),
            GameInput::Invariants(i) => Ok(i.clone()),
        }
    }

    pub fn game(&self) -> Result<SimpleGame> {
        match self {
            GameInput::Game(g) => Ok(g.clone()),
            GameInput::Invariants(i) => i.expand(),
        }
    }
}

/// Parses a game, invariant or weighted JSON object, told apart by its keys.
pub fn parse_input(text: &str) -> Result<GameInput> {
    let v: Value = serde_json::from_str(text)?;
    let obj = v
        .as_object()
        .ok_or_else(|| Error::Input("expected a JSON object".into()))?;
    if obj.contains_key("n_bar") || obj.contains_key("M") {
        let j: InvariantsJson = serde_json::from_value(v)?;
        Ok(GameInput::Invariants(j.into_invariants()?))
    } else if obj.contains_key("min_winning") {
        let j: GameJson = serde_json::from_value(v)?;
        Ok(GameInput::Game(j.into_game()?))
    } else if obj.contains_key("quota") {
        let j: WeightedJson = serde_json::from_value(v)?;
        let rep = WeightedRepresentation::parse(&j.quota, &j.weights)?;
        Ok(GameInput::Game(rep.to_game()?))
    } else {
        Err(Error::Input(
            "expected keys n_bar/M, min_winning/n or quota/weights".into(),
        ))
    }
}

pub fn game_to_string(g: &SimpleGame) -> String {
    serde_json::to_string(&GameJson::from(g)).expect("serializable")
}

pub fn invariants_to_string(i: &Invariants) -> String {
    serde_json::to_string(&InvariantsJson::from(i)).expect("serializable")
}
