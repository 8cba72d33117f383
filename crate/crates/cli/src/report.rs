use std::fmt::Write as _;
use std::time::Duration;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Skipped,
    Fail,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIP",
        }
    }
}

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Reference {
    /// Printed in the source literature.
    Published,
    /// Follows from published values by a stated identity.
    Derived,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationItem {
    pub id: String,
    /// Acceptance criterion the item belongs to.
    pub criterion: Option<u8>,
    pub module: &'static str,
    pub description: String,
    pub expected: String,
    pub reference: Reference,
    /// `None` when skipped.
    pub computed: Option<String>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    /// Seconds since the Unix epoch; the only field that varies between
    /// identical runs.
    pub generated_at: u64,
    pub budget: String,
    pub summary: Summary,
    pub items: Vec<VerificationItem>,
}

/// Module order used by the text report.
const MODULES: [&str; 5] = ["zoo", "genus", "munoz", "lorentz", "enumerate"];

impl Report {
    pub fn new(budget: impl Into<String>, items: Vec<VerificationItem>) -> Self {
        let mut summary = Summary::default();
        for it in &items {
            match it.status {
                Status::Pass => summary.pass += 1,
                Status::Fail => summary.fail += 1,
                Status::Skipped => summary.skipped += 1,
            }
        }
        let generated_at = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        Self {
            tool: "latgenus",
            version: env!("CARGO_PKG_VERSION"),
            generated_at,
            budget: budget.into(),
            summary,
            items,
        }
    }

    pub fn worst(&self) -> Status {
        self.items.iter().map(|i| i.status).max().unwrap_or(Status::Pass)
    }

    /// 0 when nothing failed, 1 on any failure, 3 when items were skipped
    /// for budget and `strict` is set.
    pub fn exit_code(&self, strict: bool) -> i32 {
        match self.worst() {
            Status::Fail => 1,
            Status::Skipped if strict => 3,
            _ => 0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut order: Vec<&VerificationItem> = self.items.iter().collect();
        let rank = |m: &str| MODULES.iter().position(|x| *x == m).unwrap_or(MODULES.len());
        order.sort_by_key(|i| rank(i.module));
        let mut current = "";
        for it in order {
            if it.module != current {
                current = it.module;
                let _ = writeln!(out, "[{current}]");
            }
            let _ = writeln!(
                out,
                "  {} {:<28} expected {} ; computed {} ({:.2}s)",
                it.status.label(),
                it.id,
                it.expected,
                it.computed.as_deref().unwrap_or("-"),
                it.elapsed.as_secs_f64()
            );
            if let Some(n) = &it.note {
                let _ = writeln!(out, "       {n}");
            }
        }
        let _ = writeln!(
            out,
            "{} passed, {} failed, {} skipped",
            self.summary.pass, self.summary.fail, self.summary.skipped
        );
        out
    }
}
