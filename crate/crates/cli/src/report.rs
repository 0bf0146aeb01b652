//! Command outcomes and their text rendering.

use std::fmt::Write as _;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    /// Usage or input error.
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    fn word(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// Outcome of one command: echo, verdict, named values and witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub seed: Option<u64>,
    pub fields: Vec<(String, String)>,
    pub witnesses: Vec<String>,
    pub error: Option<String>,
    /// Verbatim output such as help text; replaces the rendered body.
    pub text: Option<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), status: Status::Pass, seed: None, fields: Vec::new(), witnesses: Vec::new(), error: None, text: None }
    }

    pub fn error(command: impl Into<String>, message: impl Into<String>) -> Self {
        let mut r = Report::new(command);
        r.status = Status::Error;
        r.error = Some(message.into());
        r
    }

    pub fn field(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    pub fn fields(&mut self, kv: Vec<(String, String)>) -> &mut Self {
        self.fields.extend(kv);
        self
    }

    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    /// Fails the report unless `ok`.
    pub fn require(&mut self, ok: bool) -> &mut Self {
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
        }
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    /// `key=value` lines.
    pub fn porcelain(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command={}", self.command);
        let _ = writeln!(out, "status={}", self.status.word());
        if let Some(s) = self.seed {
            let _ = writeln!(out, "seed={}", s);
        }
        for (k, v) in &self.fields {
            let _ = writeln!(out, "{}={}", k, v);
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "witness={}", w);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "error={}", e.replace('\n', " "));
        }
        out
    }

    /// Aligned two-column table.
    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        let width = self.fields.iter().map(|(k, _)| k.len()).chain(["seed".len()]).max().unwrap_or(4);
        if let Some(s) = self.seed {
            let _ = writeln!(out, "  {:<w$}  {}", "seed", s, w = width);
        }
        for (k, v) in &self.fields {
            let _ = writeln!(out, "  {:<w$}  {}", k, v, w = width);
        }
        for w in &self.witnesses {
            let _ = writeln!(out, "  witness: {}", w);
        }
        if let Some(e) = &self.error {
            let _ = writeln!(out, "{}", e.trim_end());
        }
        let _ = writeln!(out, "{}", self.status.word().to_uppercase());
        out
    }

    pub fn render(&self, porcelain: bool) -> String {
        if let Some(t) = &self.text {
            t.clone()
        } else if porcelain {
            self.porcelain()
        } else {
            self.human()
        }
    }
}
