//! Pass/fail reports shared by every check suite.

use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub checks: Vec<CheckOutcome>,
}

/// Failure lists are truncated to this many entries.
const MAX_REPORTED: usize = 10;

impl SuiteReport {
    pub fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), seed: None, checks: Vec::new() }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn push(&mut self, name: &str, cases: usize, mut failures: Vec<String>) {
        let extra = failures.len().saturating_sub(MAX_REPORTED);
        failures.truncate(MAX_REPORTED);
        if extra > 0 {
            failures.push(format!("... and {extra} more"));
        }
        self.checks.push(CheckOutcome { name: name.to_string(), cases, failures });
    }

    /// Record a single yes/no fact.
    pub fn assert(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let failures = if ok { Vec::new() } else { vec![detail()] };
        self.push(name, 1, failures);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed())
    }

    pub fn cases(&self) -> usize {
        self.checks.iter().map(|c| c.cases).sum()
    }

    pub fn failed_checks(&self) -> Vec<&CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed()).collect()
    }
}

impl std::fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "[{status}] {} ({} cases)", self.suite, self.cases())?;
        for c in &self.checks {
            let mark = if c.passed() { "ok" } else { "FAILED" };
            writeln!(f, "  {mark:6} {} ({})", c.name, c.cases)?;
            for msg in &c.failures {
                writeln!(f, "         {msg}")?;
            }
        }
        Ok(())
    }
}

/// Seed used by every sampled check unless overridden.
pub const DEFAULT_SEED: u64 = 0x5eed_0003;

/// Random combination of `terms` basis monomials with small coefficients
/// `a + b q`, `a, b ∈ [-3, 3]`.
pub fn random_element(
    basis: &[crate::ncpoly::Monomial],
    rng: &mut impl rand::Rng,
    terms: usize,
) -> crate::ncpoly::Element {
    let mut e = crate::ncpoly::Element::zero();
    for _ in 0..terms {
        let m = basis[rng.gen_range(0..basis.len())];
        let c = crate::field::Scalar::from_ints(rng.gen_range(-3..=3), rng.gen_range(-3..=3));
        e.add_term(m, c);
    }
    e
}
