//! Theorem checkers and exhaustive or sampled sweeps over instance spaces.

mod checks;
pub mod enumerate;
mod manifest;
mod sweep;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

pub use checks::{check_theorem, Case};
pub use manifest::{limits, Limits};
pub use sweep::{cases, sweep, Mode, ModeName, SweepOptions, SweepReport, MAX_COUNTEREXAMPLES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    S1_1,
    K1_2,
    L1_3,
    S2_2,
    B2_3d,
    L3_1,
    B3_2,
    S3_3,
    B3_4,
    B3_6,
    B3_7,
    #[serde(rename = "S3_8_bij")]
    S3_8Bij,
    #[serde(rename = "S3_8_all")]
    S3_8All,
    K3_9,
    B3_10,
    #[serde(rename = "COVAR")]
    Covar,
    #[serde(rename = "CHAIN_karrenk")]
    ChainKarrenk,
    #[serde(rename = "IDEM_ydwed")]
    IdemYdwed,
}

impl TheoremId {
    pub fn all() -> [TheoremId; 18] {
        use TheoremId::*;
        [
            S1_1, K1_2, L1_3, S2_2, B2_3d, L3_1, B3_2, S3_3, B3_4, B3_6, B3_7, S3_8Bij, S3_8All, K3_9, B3_10, Covar,
            ChainKarrenk, IdemYdwed,
        ]
    }

    pub fn name(self) -> &'static str {
        use TheoremId::*;
        match self {
            S1_1 => "S1_1",
            K1_2 => "K1_2",
            L1_3 => "L1_3",
            S2_2 => "S2_2",
            B2_3d => "B2_3d",
            L3_1 => "L3_1",
            B3_2 => "B3_2",
            S3_3 => "S3_3",
            B3_4 => "B3_4",
            B3_6 => "B3_6",
            B3_7 => "B3_7",
            S3_8Bij => "S3_8_bij",
            S3_8All => "S3_8_all",
            K3_9 => "K3_9",
            B3_10 => "B3_10",
            Covar => "COVAR",
            ChainKarrenk => "CHAIN_karrenk",
            IdemYdwed => "IDEM_ydwed",
        }
    }

    /// A failure on a proved theorem is reported with exit code 1.
    pub fn is_proved(self) -> bool {
        use TheoremId::*;
        matches!(self, L1_3 | L3_1 | B3_2 | S3_3 | B3_4 | B3_6 | B3_7 | S1_1 | K1_2 | B3_10 | S2_2)
    }

    pub fn label(self) -> &'static str {
        use TheoremId::*;
        match self {
            B2_3d => "discrete analog",
            S3_8Bij | S3_8All => "empirical: documented open question",
            _ if self.is_proved() => "proved",
            _ => "empirical",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        TheoremId::all()
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownName(format!("theorem {s}")))
    }
}
