//! Pass/fail bookkeeping for the acceptance suite: each criterion collects
//! checks and prints one summary line with its timing.

use std::io::Write;
use std::time::{Duration, Instant};

pub struct Criterion {
    id: u32,
    title: &'static str,
    tolerance: &'static str,
    limit: Duration,
    start: Instant,
    checks: usize,
    failures: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    pub fn new(id: u32, title: &'static str, tolerance: &'static str, limit: Duration) -> Self {
        Self { id, title, tolerance, limit, start: Instant::now(), checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    /// Records one check; `what` describes it on failure.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) -> bool {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
        ok
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn checks(&self) -> usize {
        self.checks
    }

    pub fn failures(&self) -> usize {
        self.failures.len()
    }

    /// The summary line, failing when a check failed or the time limit was
    /// exceeded.
    pub fn line(&self) -> (bool, String) {
        let t = self.start.elapsed();
        let in_time = t <= self.limit;
        let ok = self.failures.is_empty() && in_time;
        let mut s = format!(
            "criterion {} {} | {} | {} checks, {} failed | tolerance {} | {:.2}s (limit {}s{})",
            self.id,
            if ok { "PASS" } else { "FAIL" },
            self.title,
            self.checks,
            self.failures.len(),
            self.tolerance,
            t.as_secs_f64(),
            self.limit.as_secs(),
            if in_time { "" } else { ", exceeded" }
        );
        for n in &self.notes {
            s.push_str(&format!("\n    {n}"));
        }
        for f in self.failures.iter().take(5) {
            s.push_str(&format!("\n    failed: {f}"));
        }
        if self.failures.len() > 5 {
            s.push_str(&format!("\n    ... {} more", self.failures.len() - 5));
        }
        (ok, s)
    }

    /// Prints the summary line and panics if the criterion failed. The line
    /// goes straight to the stdout handle so the test harness shows it for
    /// passing tests too.
    pub fn finish(self) {
        let (ok, s) = self.line();
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, "{s}");
        let _ = out.flush();
        assert!(ok, "criterion {} failed", self.id);
    }
}
