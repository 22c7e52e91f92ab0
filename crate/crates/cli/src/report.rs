use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Ok,
    NotRealizable,
    NoRealRealization,
    Indeterminate,
    Failed,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok => 0,
            Verdict::NotRealizable | Verdict::NoRealRealization => 2,
            Verdict::Indeterminate => 3,
            Verdict::Failed => 1,
        }
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Ok => "ok",
            Verdict::NotRealizable => "not_realizable",
            Verdict::NoRealRealization => "no_real_realization",
            Verdict::Indeterminate => "indeterminate",
            Verdict::Failed => "failed",
        }
    }
}

/// Result of one command. Entries keep insertion order so the text and JSON
/// forms list the same things in the same order.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub entries: Vec<Entry>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Entry {
    pub key: String,
    pub value: String,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report { command: command.to_string(), verdict: Verdict::Ok, entries: Vec::new() }
    }

    pub fn add(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.entries.push(Entry { key: key.into(), value: value.to_string() });
        self
    }

    pub fn verdict(&mut self, v: Verdict) -> &mut Self {
        self.verdict = v;
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nverdict: {}\n", self.command, self.verdict.label());
        for e in &self.entries {
            out.push_str(&e.key);
            out.push_str(": ");
            out.push_str(&e.value);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}
