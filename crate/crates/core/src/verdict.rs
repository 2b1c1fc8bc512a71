use serde::{Deserialize, Serialize};

use crate::instance::WireInstance;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Skipped,
}

/// Outcome of checking one theorem on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WireInstance>,
    pub note: String,
}

impl Verdict {
    pub fn holds(note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Holds,
            witness: None,
            note: note.into(),
        }
    }

    pub fn skipped(note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Skipped,
            witness: None,
            note: note.into(),
        }
    }

    pub fn fails(witness: WireInstance, note: impl Into<String>) -> Self {
        Verdict {
            status: Status::Fails,
            witness: Some(witness),
            note: note.into(),
        }
    }

    pub fn with_witness(mut self, witness: WireInstance) -> Self {
        if self.status == Status::Fails {
            self.witness = Some(witness);
        }
        self
    }

    pub fn is_holds(&self) -> bool {
        self.status == Status::Holds
    }

    pub fn is_fails(&self) -> bool {
        self.status == Status::Fails
    }
}
