//! Machine-readable run outcomes.

use serde::Serialize;

/// One failed work item; the rest of the batch still runs.
#[derive(Clone, Debug, Serialize)]
pub struct ItemError {
    pub id: String,
    pub error: String,
}

/// Outcome of a batch command. The process exits 0 iff `item_errors` is
/// empty; otherwise the summary is printed to stderr as JSON and the exit
/// code is 1.
#[derive(Clone, Debug, Default, Serialize)]
pub struct RunSummary {
    pub items_ok: usize,
    pub item_errors: Vec<ItemError>,
}

impl RunSummary {
    pub fn is_clean(&self) -> bool {
        self.item_errors.is_empty()
    }

    pub fn record_ok(&mut self) {
        self.items_ok += 1;
    }

    pub fn record_error(&mut self, id: impl Into<String>, error: impl ToString) {
        self.item_errors.push(ItemError {
            id: id.into(),
            error: error.to_string(),
        });
    }
}
