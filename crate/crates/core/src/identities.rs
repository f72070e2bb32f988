//! Theorem suite: sweep each frequency/repetition identity over parameter
//! ranges, comparing independent computation routes and reporting
//! counterexamples.
//!
//! Every check is a finite numeric sweep. `Fast` mode compares two
//! closed-form routes; `Oracle` mode compares enumeration-derived values;
//! `Both` runs the fast sweep and additionally cross-checks each side
//! against the enumeration oracle wherever the cap allows.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::partitions::{oracle_tables, OracleStat, OracleTables, DEFAULT_ORACLE_CAP};
use crate::series::FactorSpec;
use crate::stats::{f_bar1, f_general, f_step, h_uniform, StatKind, StatTable};

/// The identities under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremId {
    /// One color: the frequency of `k` equals the count of parts repeated
    /// at least `k` times.
    SefClassic,
    /// The same equality for `b`-colored partitions.
    SefBColored,
    /// `k*F_k(n) = H_k(n) - H_k(n-k)` over `b`-colored partitions
    /// (Andrews–Merca form).
    AndrewsMercaH,
    /// Odd parts: `F_k(n) = G_k(n) + G_k(n-k)` for odd `k`.
    OddSum,
    /// Distinct parts against odd-part repetitions:
    /// `F_k(n) = G_k(n) - G_k(n-k)`.
    DistinctDiff,
    /// Part `k` in `k` colors: `F_k(n) = k*(G_k(n) - G_k(n-k))`.
    KColors,
    /// The combined overpartition statement: ordinary, distinct and odd
    /// statistics of the convolved product at once.
    OverpartitionCombined,
    /// Overpartitions: ones-count equals once-repeated minus
    /// thrice-repeated.
    Overline13,
    /// Euler: the odd-part and distinct-part products agree
    /// coefficient-wise.
    EulerOddDistinct,
}

impl TheoremId {
    pub const ALL: [TheoremId; 9] = [
        TheoremId::SefClassic,
        TheoremId::SefBColored,
        TheoremId::AndrewsMercaH,
        TheoremId::OddSum,
        TheoremId::DistinctDiff,
        TheoremId::KColors,
        TheoremId::OverpartitionCombined,
        TheoremId::Overline13,
        TheoremId::EulerOddDistinct,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            TheoremId::SefClassic => "sef-classic",
            TheoremId::SefBColored => "sef-bcolored",
            TheoremId::AndrewsMercaH => "andrews-merca-h",
            TheoremId::OddSum => "odd-sum",
            TheoremId::DistinctDiff => "distinct-diff",
            TheoremId::KColors => "kcolors",
            TheoremId::OverpartitionCombined => "overpartition-combined",
            TheoremId::Overline13 => "overline13",
            TheoremId::EulerOddDistinct => "euler-odd-distinct",
        }
    }

    /// Parse a theorem name, ignoring case, dashes and underscores.
    pub fn parse(input: &str) -> Result<TheoremId> {
        let norm = |s: &str| {
            s.chars()
                .filter(|c| *c != '-' && *c != '_')
                .collect::<String>()
                .to_ascii_lowercase()
        };
        let wanted = norm(input);
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| norm(t.as_str()) == wanted)
            .ok_or_else(|| Error::UnknownTheorem {
                input: input.to_string(),
                known: TheoremId::ALL
                    .iter()
                    .map(|t| t.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerifyMode {
    Fast,
    Oracle,
    Both,
}

impl VerifyMode {
    pub fn as_str(&self) -> &'static str {
        match self {
            VerifyMode::Fast => "fast",
            VerifyMode::Oracle => "oracle",
            VerifyMode::Both => "both",
        }
    }

    pub fn parse(input: &str) -> Option<VerifyMode> {
        match input.to_ascii_lowercase().as_str() {
            "fast" => Some(VerifyMode::Fast),
            "oracle" => Some(VerifyMode::Oracle),
            "both" => Some(VerifyMode::Both),
            _ => None,
        }
    }
}

/// Sweep configuration shared by every theorem.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub max_n: u64,
    pub mode: VerifyMode,
    /// Color counts swept by the `b`-parameterized theorems.
    pub b_values: Vec<u64>,
    /// `(r, s)` color pairs swept by the combined overpartition theorem.
    pub rs_values: Vec<(u64, u64)>,
    /// Weight ceiling for enumeration-backed checks.
    pub oracle_cap: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            max_n: 100,
            mode: VerifyMode::Fast,
            b_values: vec![1, 2, 3],
            rs_values: vec![(1, 1), (2, 1), (1, 2)],
            oracle_cap: DEFAULT_ORACLE_CAP,
        }
    }
}

/// One failed comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub params: String,
    pub equation: String,
    pub k: u64,
    pub n: u64,
    pub lhs: String,
    pub rhs: String,
}

/// Result of sweeping one theorem over its parameter grid.
#[derive(Debug, Clone)]
pub struct IdentityReport {
    pub theorem: TheoremId,
    pub params: Vec<String>,
    pub range_n: u64,
    pub range_k: String,
    pub mode: VerifyMode,
    /// Labels of the series each side was computed from.
    pub series_used: Vec<String>,
    /// Closed-form comparisons performed.
    pub checked: u64,
    /// Enumeration cross-checks performed.
    pub oracle_checked: u64,
    /// First counterexamples, capped to keep reports bounded.
    pub failures: Vec<Counterexample>,
    pub total_failures: u64,
    pub elapsed: Duration,
    /// Present when the sweep ran a deliberately perturbed equation.
    pub mutation: Option<String>,
}

const MAX_RECORDED_FAILURES: usize = 32;

#[derive(Serialize)]
struct ReportExport<'a> {
    theorem: &'a str,
    params: &'a [String],
    range_n: u64,
    range_k: &'a str,
    mode: &'a str,
    series: &'a [String],
    checked: u64,
    oracle_checked: u64,
    passed: bool,
    total_failures: u64,
    failures: &'a [Counterexample],
    #[serde(skip_serializing_if = "Option::is_none")]
    mutation: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<u128>,
}

impl IdentityReport {
    fn new(theorem: TheoremId, range_k: &str, opts: &VerifyOptions) -> IdentityReport {
        IdentityReport {
            theorem,
            params: Vec::new(),
            range_n: opts.max_n,
            range_k: range_k.to_string(),
            mode: opts.mode,
            series_used: Vec::new(),
            checked: 0,
            oracle_checked: 0,
            failures: Vec::new(),
            total_failures: 0,
            elapsed: Duration::ZERO,
            mutation: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.total_failures == 0
    }

    fn note_series(&mut self, label: &str) {
        let label = label.to_string();
        if !self.series_used.contains(&label) {
            self.series_used.push(label);
        }
    }

    fn record(&mut self, params: &str, equation: &str, k: u64, n: u64, lhs: &BigInt, rhs: &BigInt) {
        self.total_failures += 1;
        if self.failures.len() < MAX_RECORDED_FAILURES {
            self.failures.push(Counterexample {
                params: params.to_string(),
                equation: equation.to_string(),
                k,
                n,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
    }

    fn check(&mut self, params: &str, equation: &str, k: u64, n: u64, lhs: &BigInt, rhs: &BigInt) {
        self.checked += 1;
        if lhs != rhs {
            self.record(params, equation, k, n, lhs, rhs);
        }
    }

    fn oracle_check(
        &mut self,
        params: &str,
        equation: &str,
        k: u64,
        n: u64,
        value: &BigInt,
        oracle: &BigInt,
    ) {
        self.oracle_checked += 1;
        if value != oracle {
            let tagged = format!("{equation} [oracle]");
            self.record(params, &tagged, k, n, value, oracle);
        }
    }

    /// JSON view of the report. `with_elapsed` controls whether the timing
    /// field appears; leave it off for byte-reproducible output.
    pub fn to_json_value(&self, with_elapsed: bool) -> serde_json::Value {
        let export = ReportExport {
            theorem: self.theorem.as_str(),
            params: &self.params,
            range_n: self.range_n,
            range_k: &self.range_k,
            mode: self.mode.as_str(),
            series: &self.series_used,
            checked: self.checked,
            oracle_checked: self.oracle_checked,
            passed: self.passed(),
            total_failures: self.total_failures,
            failures: &self.failures,
            mutation: self.mutation.as_deref(),
            elapsed_ms: with_elapsed.then_some(self.elapsed.as_millis()),
        };
        serde_json::to_value(export).expect("report export cannot fail")
    }
}

/// Enumeration tables shared across one sweep, keyed by spec label and
/// weight.
struct OracleCache {
    cap: u64,
    tables: BTreeMap<(String, u64), OracleTables>,
}

impl OracleCache {
    fn new(cap: u64) -> OracleCache {
        OracleCache {
            cap,
            tables: BTreeMap::new(),
        }
    }

    fn get(&mut self, spec: &FactorSpec, n: u64) -> Result<&OracleTables> {
        let key = (spec.label().to_string(), n);
        if !self.tables.contains_key(&key) {
            let t = oracle_tables(n, spec, self.cap)?;
            self.tables.insert(key.clone(), t);
        }
        Ok(&self.tables[&key])
    }

    /// Statistic at a possibly-negative shifted weight.
    fn stat(&mut self, spec: &FactorSpec, n: i64, stat: OracleStat, k: u64) -> Result<BigInt> {
        if n < 0 {
            return Ok(BigInt::zero());
        }
        Ok(self.get(spec, n as u64)?.get(stat, k))
    }
}

fn ensure_oracle_range(opts: &VerifyOptions) -> Result<()> {
    if opts.mode == VerifyMode::Oracle && opts.max_n > opts.oracle_cap {
        return Err(Error::CapExceeded {
            n: opts.max_n,
            cap: opts.oracle_cap,
        });
    }
    Ok(())
}

/// Largest weight the oracle layer covers, if the mode has one at all.
fn oracle_limit(opts: &VerifyOptions) -> Option<u64> {
    match opts.mode {
        VerifyMode::Fast => None,
        VerifyMode::Oracle | VerifyMode::Both => Some(opts.max_n.min(opts.oracle_cap)),
    }
}

fn all_ks(max_n: u64) -> Vec<u64> {
    (1..=max_n).collect()
}

/// Verify one theorem over its parameter grid.
pub fn verify(theorem: TheoremId, opts: &VerifyOptions) -> Result<IdentityReport> {
    ensure_oracle_range(opts)?;
    let started = Instant::now();
    let mut cache = OracleCache::new(opts.oracle_cap);
    let mut report = match theorem {
        TheoremId::SefClassic => {
            let mut rep = IdentityReport::new(theorem, "1..=n", opts);
            sweep_sef(&mut rep, 1, opts, &mut cache)?;
            rep
        }
        TheoremId::SefBColored => {
            let mut rep = IdentityReport::new(theorem, "1..=n", opts);
            for &b in &opts.b_values {
                sweep_sef(&mut rep, b, opts, &mut cache)?;
            }
            rep
        }
        TheoremId::AndrewsMercaH => {
            let mut rep = IdentityReport::new(theorem, "1..=n", opts);
            for &b in &opts.b_values {
                sweep_andrews_merca(&mut rep, b, opts, &mut cache)?;
            }
            rep
        }
        TheoremId::OddSum => {
            let mut rep = IdentityReport::new(theorem, "odd k <= n", opts);
            for &b in &opts.b_values {
                sweep_odd_sum(&mut rep, b, opts, &mut cache)?;
            }
            rep
        }
        TheoremId::DistinctDiff => {
            let mut rep = IdentityReport::new(theorem, "1..=n", opts);
            for &b in &opts.b_values {
                sweep_distinct_diff(&mut rep, b, opts, &mut cache)?;
            }
            rep
        }
        TheoremId::KColors => {
            let mut rep = IdentityReport::new(theorem, "1..=n", opts);
            sweep_kcolors(&mut rep, opts, &mut cache)?;
            rep
        }
        TheoremId::OverpartitionCombined => {
            let mut rep =
                IdentityReport::new(theorem, "1..=n (odd k for the odd-part equation)", opts);
            for &(r, s) in &opts.rs_values {
                sweep_combined(&mut rep, r, s, opts, &mut cache)?;
            }
            rep
        }
        TheoremId::Overline13 => {
            let mut rep = IdentityReport::new(theorem, "k = 1", opts);
            sweep_overline13(&mut rep, opts, &mut cache)?;
            rep
        }
        TheoremId::EulerOddDistinct => {
            let mut rep = IdentityReport::new(theorem, "n/a", opts);
            for &b in &opts.b_values {
                sweep_euler(&mut rep, b, opts, &mut cache)?;
            }
            rep
        }
    };
    if report.checked == 0 && report.oracle_checked == 0 {
        return Err(Error::EmptyRange {
            theorem: theorem.as_str().to_string(),
            max_n: opts.max_n,
        });
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

/// Run every theorem over the shared grid, collecting per-theorem results
/// without aborting on individual errors.
pub fn verify_all(opts: &VerifyOptions) -> Vec<(TheoremId, Result<IdentityReport>)> {
    TheoremId::ALL
        .iter()
        .map(|&t| (t, verify(t, opts)))
        .collect()
}

fn sweep_sef(
    report: &mut IdentityReport,
    b: u64,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = format!("b={b}");
    report.params.push(params.clone());
    let spec = FactorSpec::uniform(b, opts.max_n);
    let h = spec.expand(opts.max_n)?;
    report.note_series(h.label());
    let eq = "F_k(n) = G_k(n)";
    let fast = opts.mode != VerifyMode::Oracle;
    let g_table = if fast {
        Some(StatTable::build(
            &h,
            StatKind::GUniform,
            &all_ks(opts.max_n),
            opts.max_n,
            true,
        )?)
    } else {
        None
    };
    let oracle_max = oracle_limit(opts);
    for n in 1..=opts.max_n {
        for k in 1..=n {
            let mut fast_sides = None;
            if let Some(table) = &g_table {
                let lhs = f_step(&h, b, k, n as i64)?;
                let rhs = table.value(k, n).expect("table covers the range").clone();
                report.check(&params, eq, k, n, &lhs, &rhs);
                fast_sides = Some((lhs, rhs));
            }
            if oracle_max.is_some_and(|m| n <= m) {
                let lhs_o = cache.stat(&spec, n as i64, OracleStat::F, k)?;
                let rhs_o = cache.stat(&spec, n as i64, OracleStat::G, k)?;
                match &fast_sides {
                    Some((lhs, rhs)) => {
                        report.oracle_check(&params, "F_k(n)", k, n, lhs, &lhs_o);
                        report.oracle_check(&params, "G_k(n)", k, n, rhs, &rhs_o);
                    }
                    None => report.check(&params, eq, k, n, &lhs_o, &rhs_o),
                }
            }
        }
    }
    Ok(())
}

fn sweep_andrews_merca(
    report: &mut IdentityReport,
    b: u64,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = format!("b={b}");
    report.params.push(params.clone());
    let spec = FactorSpec::uniform(b, opts.max_n);
    let h = spec.expand(opts.max_n)?;
    report.note_series(h.label());
    let eq = "k*F_k(n) = H_k(n) - H_k(n-k)";
    let fast = opts.mode != VerifyMode::Oracle;
    let tables = if fast {
        let ks = all_ks(opts.max_n);
        Some((
            StatTable::build(&h, StatKind::FUniform, &ks, opts.max_n, true)?,
            StatTable::build(&h, StatKind::HUniform, &ks, opts.max_n, true)?,
        ))
    } else {
        None
    };
    let oracle_max = oracle_limit(opts);
    for n in 1..=opts.max_n {
        for k in 1..=n {
            let mut fast_sides = None;
            if let Some((f_table, h_table)) = &tables {
                let lhs = f_table.value(k, n).expect("in range") * BigInt::from(k);
                let rhs = h_table.value(k, n).expect("in range")
                    - h_table.value_or_zero(k, n as i64 - k as i64);
                report.check(&params, eq, k, n, &lhs, &rhs);
                fast_sides = Some((lhs, rhs));
            }
            if oracle_max.is_some_and(|m| n <= m) {
                let lhs_o = cache.stat(&spec, n as i64, OracleStat::F, k)? * BigInt::from(k);
                let rhs_o = cache.stat(&spec, n as i64, OracleStat::H, k)?
                    - cache.stat(&spec, n as i64 - k as i64, OracleStat::H, k)?;
                match &fast_sides {
                    Some((lhs, rhs)) => {
                        report.oracle_check(&params, "k*F_k(n)", k, n, lhs, &lhs_o);
                        report.oracle_check(&params, "H_k(n) - H_k(n-k)", k, n, rhs, &rhs_o);
                    }
                    None => report.check(&params, eq, k, n, &lhs_o, &rhs_o),
                }
            }
        }
    }
    Ok(())
}

fn sweep_odd_sum(
    report: &mut IdentityReport,
    b: u64,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = format!("b={b}");
    report.params.push(params.clone());
    let spec = FactorSpec::odd(b, opts.max_n);
    let h = spec.expand(opts.max_n)?;
    report.note_series(h.label());
    let eq = "F_k(n) = G_k(n) + G_k(n-k), odd parts";
    let fast = opts.mode != VerifyMode::Oracle;
    let tables = if fast {
        let ks = all_ks(opts.max_n);
        Some((
            StatTable::build(&h, StatKind::FOdd, &ks, opts.max_n, true)?,
            StatTable::build(&h, StatKind::GOdd, &ks, opts.max_n, true)?,
        ))
    } else {
        None
    };
    let oracle_max = oracle_limit(opts);
    for n in 1..=opts.max_n {
        for k in (1..=n).step_by(2) {
            let mut fast_sides = None;
            if let Some((f_table, g_table)) = &tables {
                let lhs = f_table.value(k, n).expect("in range").clone();
                let rhs = g_table.value(k, n).expect("in range")
                    + g_table.value_or_zero(k, n as i64 - k as i64);
                report.check(&params, eq, k, n, &lhs, &rhs);
                fast_sides = Some((lhs, rhs));
            }
            if oracle_max.is_some_and(|m| n <= m) {
                let lhs_o = cache.stat(&spec, n as i64, OracleStat::FOdd, k)?;
                let rhs_o = cache.stat(&spec, n as i64, OracleStat::GOdd, k)?
                    + cache.stat(&spec, n as i64 - k as i64, OracleStat::GOdd, k)?;
                match &fast_sides {
                    Some((lhs, rhs)) => {
                        report.oracle_check(&params, "F_k(n), odd parts", k, n, lhs, &lhs_o);
                        report.oracle_check(
                            &params,
                            "G_k(n) + G_k(n-k), odd parts",
                            k,
                            n,
                            rhs,
                            &rhs_o,
                        );
                    }
                    None => report.check(&params, eq, k, n, &lhs_o, &rhs_o),
                }
            }
        }
    }
    Ok(())
}

fn sweep_distinct_diff(
    report: &mut IdentityReport,
    b: u64,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = format!("b={b}");
    report.params.push(params.clone());
    let spec_d = FactorSpec::distinct(b, opts.max_n);
    let spec_o = FactorSpec::odd(b, opts.max_n);
    let h_d = spec_d.expand(opts.max_n)?;
    let h_o = spec_o.expand(opts.max_n)?;
    report.note_series(h_d.label());
    report.note_series(h_o.label());
    let eq = "F_k(n) distinct = G_k(n) - G_k(n-k) odd";
    let fast = opts.mode != VerifyMode::Oracle;
    let tables = if fast {
        let ks = all_ks(opts.max_n);
        Some((
            StatTable::build(&h_d, StatKind::FDistinct, &ks, opts.max_n, true)?,
            StatTable::build(&h_o, StatKind::GOdd, &ks, opts.max_n, true)?,
        ))
    } else {
        None
    };
    let oracle_max = oracle_limit(opts);
    for n in 1..=opts.max_n {
        for k in 1..=n {
            let mut fast_sides = None;
            if let Some((f_table, g_table)) = &tables {
                let lhs = f_table.value(k, n).expect("in range").clone();
                let rhs = g_table.value(k, n).expect("in range")
                    - g_table.value_or_zero(k, n as i64 - k as i64);
                report.check(&params, eq, k, n, &lhs, &rhs);
                fast_sides = Some((lhs, rhs));
            }
            if oracle_max.is_some_and(|m| n <= m) {
                let lhs_o = cache.stat(&spec_d, n as i64, OracleStat::FDistinct, k)?;
                let rhs_o = cache.stat(&spec_o, n as i64, OracleStat::GOdd, k)?
                    - cache.stat(&spec_o, n as i64 - k as i64, OracleStat::GOdd, k)?;
                match &fast_sides {
                    Some((lhs, rhs)) => {
                        report.oracle_check(&params, "F_k(n), distinct parts", k, n, lhs, &lhs_o);
                        report.oracle_check(
                            &params,
                            "G_k(n) - G_k(n-k), odd parts",
                            k,
                            n,
                            rhs,
                            &rhs_o,
                        );
                    }
                    None => report.check(&params, eq, k, n, &lhs_o, &rhs_o),
                }
            }
        }
    }
    Ok(())
}

fn sweep_kcolors(
    report: &mut IdentityReport,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = "b_k=k";
    report.params.push(params.to_string());
    let spec = FactorSpec::kcolors(opts.max_n);
    let h = spec.expand(opts.max_n)?;
    report.note_series(h.label());
    let eq = "F_k(n) = k*(G_k(n) - G_k(n-k))";
    let fast = opts.mode != VerifyMode::Oracle;
    let tables = if fast {
        let ks = all_ks(opts.max_n);
        Some((
            StatTable::build(&h, StatKind::FKColors, &ks, opts.max_n, true)?,
            StatTable::build(&h, StatKind::GKColors, &ks, opts.max_n, true)?,
        ))
    } else {
        None
    };
    let oracle_max = oracle_limit(opts);
    for n in 1..=opts.max_n {
        for k in 1..=n {
            let mut fast_sides = None;
            if let Some((f_table, g_table)) = &tables {
                let lhs = f_table.value(k, n).expect("in range").clone();
                let diff = g_table.value(k, n).expect("in range")
                    - g_table.value_or_zero(k, n as i64 - k as i64);
                let rhs = diff * BigInt::from(k);
                report.check(params, eq, k, n, &lhs, &rhs);
                fast_sides = Some((lhs, rhs));
            }
            if oracle_max.is_some_and(|m| n <= m) {
                let lhs_o = cache.stat(&spec, n as i64, OracleStat::F, k)?;
                let rhs_o = (cache.stat(&spec, n as i64, OracleStat::G, k)?
                    - cache.stat(&spec, n as i64 - k as i64, OracleStat::G, k)?)
                    * BigInt::from(k);
                match &fast_sides {
                    Some((lhs, rhs)) => {
                        report.oracle_check(params, "F_k(n)", k, n, lhs, &lhs_o);
                        report.oracle_check(params, "k*(G_k(n) - G_k(n-k))", k, n, rhs, &rhs_o);
                    }
                    None => report.check(params, eq, k, n, &lhs_o, &rhs_o),
                }
            }
        }
    }
    Ok(())
}

fn sweep_combined(
    report: &mut IdentityReport,
    r: u64,
    s: u64,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = format!("r={r},s={s}");
    report.params.push(params.clone());
    let spec_ov = FactorSpec::overpartition(r, s, opts.max_n);
    let spec_oo = FactorSpec::odd_overlined(r, s, opts.max_n);
    let h_ov = spec_ov.expand(opts.max_n)?;
    let h_oo = spec_oo.expand(opts.max_n)?;
    report.note_series(h_ov.label());
    report.note_series(h_oo.label());
    let fast = opts.mode != VerifyMode::Oracle;
    let tables = if fast {
        let ks = all_ks(opts.max_n);
        Some((
            StatTable::build(&h_oo, StatKind::GUniform, &ks, opts.max_n, true)?,
            StatTable::build(&h_ov, StatKind::FDistinct, &ks, opts.max_n, true)?,
            StatTable::build(&h_oo, StatKind::FOdd, &ks, opts.max_n, true)?,
            StatTable::build(&h_oo, StatKind::GOdd, &ks, opts.max_n, true)?,
        ))
    } else {
        None
    };
    let eq_ordinary = "F_k(n) = G_k(n), ordinary class";
    let eq_distinct = "F_k(n) distinct class = G_k(n) - G_k(n-k) odd class";
    let eq_odd = "F_k(n) odd class = G_k(n) + G_k(n-k) odd class";
    let oracle_max = oracle_limit(opts);
    for n in 1..=opts.max_n {
        for k in 1..=n {
            let odd_k = k % 2 == 1;
            let mut fast_ord = None;
            let mut fast_dist = None;
            let mut fast_odd = None;
            if let Some((g_uni, f_dist, f_odd_t, g_odd_t)) = &tables {
                // ordinary equality: frequency route on the overpartition
                // series, repetition route on the odd-overlined series
                let lhs = f_step(&h_ov, r, k, n as i64)?;
                let rhs = g_uni.value(k, n).expect("in range").clone();
                report.check(&params, eq_ordinary, k, n, &lhs, &rhs);
                fast_ord = Some((lhs, rhs));

                let lhs = f_dist.value(k, n).expect("in range").clone();
                let rhs = g_odd_t.value(k, n).expect("in range")
                    - g_odd_t.value_or_zero(k, n as i64 - k as i64);
                report.check(&params, eq_distinct, k, n, &lhs, &rhs);
                fast_dist = Some((lhs, rhs));

                if odd_k {
                    let lhs = f_odd_t.value(k, n).expect("in range").clone();
                    let rhs = g_odd_t.value(k, n).expect("in range")
                        + g_odd_t.value_or_zero(k, n as i64 - k as i64);
                    report.check(&params, eq_odd, k, n, &lhs, &rhs);
                    fast_odd = Some((lhs, rhs));
                }
            }
            if oracle_max.is_some_and(|m| n <= m) {
                let f_o = cache.stat(&spec_ov, n as i64, OracleStat::F, k)?;
                let g_o = cache.stat(&spec_oo, n as i64, OracleStat::G, k)?;
                let fd_o = cache.stat(&spec_ov, n as i64, OracleStat::FDistinct, k)?;
                let godd_n = cache.stat(&spec_oo, n as i64, OracleStat::GOdd, k)?;
                let godd_shift = cache.stat(&spec_oo, n as i64 - k as i64, OracleStat::GOdd, k)?;
                match (&fast_ord, &fast_dist) {
                    (Some((lhs, rhs)), Some((dl, dr))) => {
                        report.oracle_check(&params, "F_k(n), ordinary class", k, n, lhs, &f_o);
                        report.oracle_check(&params, "G_k(n), ordinary class", k, n, rhs, &g_o);
                        report.oracle_check(&params, "F_k(n), distinct class", k, n, dl, &fd_o);
                        let dr_o = &godd_n - &godd_shift;
                        report.oracle_check(&params, "G_k diff, odd class", k, n, dr, &dr_o);
                        if let Some((ol, or)) = &fast_odd {
                            let fo_o = cache.stat(&spec_oo, n as i64, OracleStat::FOdd, k)?;
                            let or_o = &godd_n + &godd_shift;
                            report.oracle_check(&params, "F_k(n), odd class", k, n, ol, &fo_o);
                            report.oracle_check(&params, "G_k sum, odd class", k, n, or, &or_o);
                        }
                    }
                    _ => {
                        report.check(&params, eq_ordinary, k, n, &f_o, &g_o);
                        let dr_o = &godd_n - &godd_shift;
                        report.check(&params, eq_distinct, k, n, &fd_o, &dr_o);
                        if odd_k {
                            let fo_o = cache.stat(&spec_oo, n as i64, OracleStat::FOdd, k)?;
                            let or_o = &godd_n + &godd_shift;
                            report.check(&params, eq_odd, k, n, &fo_o, &or_o);
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn sweep_overline13(
    report: &mut IdentityReport,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = "r=1,s=1";
    report.params.push(params.to_string());
    let spec = FactorSpec::overpartition(1, 1, opts.max_n);
    let h = spec.expand(opts.max_n)?;
    report.note_series(h.label());
    let eq = "Fbar_1(n) = Gbar_1(n) - Gbar_3(n)";
    let fast = opts.mode != VerifyMode::Oracle;
    let tables = if fast {
        Some((
            StatTable::build(&h, StatKind::GBar1, &[], opts.max_n, true)?,
            StatTable::build(&h, StatKind::GBar3, &[], opts.max_n, true)?,
        ))
    } else {
        None
    };
    let oracle_max = oracle_limit(opts);
    for n in 1..=opts.max_n {
        let mut fast_sides = None;
        if let Some((gbar1, gbar3)) = &tables {
            let lhs = f_bar1(&h, n as i64)?;
            let rhs = gbar1.value(0, n).expect("in range") - gbar3.value(0, n).expect("in range");
            report.check(params, eq, 1, n, &lhs, &rhs);
            fast_sides = Some((lhs, rhs));
        }
        if oracle_max.is_some_and(|m| n <= m) {
            let lhs_o = cache.stat(&spec, n as i64, OracleStat::FBar, 1)?;
            let rhs_o = cache.stat(&spec, n as i64, OracleStat::GBar, 1)?
                - cache.stat(&spec, n as i64, OracleStat::GBar, 3)?;
            match &fast_sides {
                Some((lhs, rhs)) => {
                    report.oracle_check(params, "Fbar_1(n)", 1, n, lhs, &lhs_o);
                    report.oracle_check(params, "Gbar_1(n) - Gbar_3(n)", 1, n, rhs, &rhs_o);
                }
                None => report.check(params, eq, 1, n, &lhs_o, &rhs_o),
            }
        }
    }
    Ok(())
}

fn sweep_euler(
    report: &mut IdentityReport,
    b: u64,
    opts: &VerifyOptions,
    cache: &mut OracleCache,
) -> Result<()> {
    let params = format!("b={b}");
    report.params.push(params.clone());
    let spec_o = FactorSpec::odd(b, opts.max_n);
    let spec_d = FactorSpec::distinct(b, opts.max_n);
    let h_o = spec_o.expand(opts.max_n)?;
    let h_d = spec_d.expand(opts.max_n)?;
    report.note_series(h_o.label());
    report.note_series(h_d.label());
    let eq = "odd-part count = distinct-part count";
    let fast = opts.mode != VerifyMode::Oracle;
    let oracle_max = oracle_limit(opts);
    for n in 0..=opts.max_n {
        let (lhs, rhs) = (h_o.coefficient(n as i64)?, h_d.coefficient(n as i64)?);
        if fast {
            report.check(&params, eq, 0, n, &lhs, &rhs);
        }
        if oracle_max.is_some_and(|m| n <= m) {
            let lhs_o = cache.get(&spec_o, n)?.count.clone();
            let rhs_o = cache.get(&spec_d, n)?.count.clone();
            if fast {
                report.oracle_check(&params, "odd-part count", 0, n, &lhs, &lhs_o);
                report.oracle_check(&params, "distinct-part count", 0, n, &rhs, &rhs_o);
            } else {
                report.check(&params, eq, 0, n, &lhs_o, &rhs_o);
            }
        }
    }
    Ok(())
}

/// Re-run a theorem with a deliberately broken equation and report the
/// counterexamples the sweep finds. A healthy checker must find some: this
/// guards the verifier itself against vacuous passes.
///
/// Registered mutations:
/// - [`TheoremId::OddSum`]: drop the color factor from the odd frequency
///   formula while sweeping two colors.
/// - [`TheoremId::AndrewsMercaH`]: shift the divisible-sum difference by 1
///   instead of k.
/// - [`TheoremId::EulerOddDistinct`]: compare one-color odd parts against
///   two-color distinct parts.
pub fn mutation_smoke(theorem: TheoremId, max_n: u64) -> Result<IdentityReport> {
    let opts = VerifyOptions {
        max_n,
        mode: VerifyMode::Fast,
        ..VerifyOptions::default()
    };
    let started = Instant::now();
    let mut report = match theorem {
        TheoremId::OddSum => {
            let mut rep = IdentityReport::new(theorem, "odd k <= n", &opts);
            rep.mutation =
                Some("frequency formula without the color factor, swept at b = 2".to_string());
            rep.params.push("b=2".to_string());
            let spec = FactorSpec::odd(2, max_n);
            let h = spec.expand(max_n)?;
            rep.note_series(h.label());
            let g_table = StatTable::build(&h, StatKind::GOdd, &all_ks(max_n), max_n, true)?;
            for n in 1..=max_n {
                for k in (1..=n).step_by(2) {
                    // mutant: b omitted from the frequency side
                    let lhs = f_general(&h, 1, k, n as i64)?;
                    let rhs = g_table.value(k, n).expect("in range")
                        + g_table.value_or_zero(k, n as i64 - k as i64);
                    rep.check(
                        "b=2",
                        "F_k(n) without b = G_k(n) + G_k(n-k)",
                        k,
                        n,
                        &lhs,
                        &rhs,
                    );
                }
            }
            rep
        }
        TheoremId::AndrewsMercaH => {
            let mut rep = IdentityReport::new(theorem, "1..=n", &opts);
            rep.mutation = Some("divisible-sum difference shifted by 1 instead of k".to_string());
            rep.params.push("b=1".to_string());
            let spec = FactorSpec::uniform(1, max_n);
            let h = spec.expand(max_n)?;
            rep.note_series(h.label());
            for n in 1..=max_n {
                for k in 1..=n {
                    let lhs = f_general(&h, 1, k, n as i64)? * BigInt::from(k);
                    let rhs = h_uniform(&h, 1, k, n as i64)? - h_uniform(&h, 1, k, n as i64 - 1)?;
                    rep.check("b=1", "k*F_k(n) = H_k(n) - H_k(n-1)", k, n, &lhs, &rhs);
                }
            }
            rep
        }
        TheoremId::EulerOddDistinct => {
            let mut rep = IdentityReport::new(theorem, "n/a", &opts);
            rep.mutation = Some("odd parts in one color against distinct parts in two".to_string());
            rep.params.push("b=1 vs b=2".to_string());
            let h_o = FactorSpec::odd(1, max_n).expand(max_n)?;
            let h_d = FactorSpec::distinct(2, max_n).expand(max_n)?;
            rep.note_series(h_o.label());
            rep.note_series(h_d.label());
            for n in 0..=max_n {
                let lhs = h_o.coefficient(n as i64)?;
                let rhs = h_d.coefficient(n as i64)?;
                rep.check(
                    "b=1 vs b=2",
                    "odd(1) count = distinct(2) count",
                    0,
                    n,
                    &lhs,
                    &rhs,
                );
            }
            rep
        }
        other => {
            return Err(Error::NoMutationRegistered {
                theorem: other.as_str().to_string(),
            })
        }
    };
    if report.checked == 0 {
        return Err(Error::EmptyRange {
            theorem: theorem.as_str().to_string(),
            max_n,
        });
    }
    report.elapsed = started.elapsed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fast_opts(max_n: u64) -> VerifyOptions {
        VerifyOptions {
            max_n,
            ..VerifyOptions::default()
        }
    }

    #[test]
    fn classic_equality_holds() {
        let report = verify(TheoremId::SefClassic, &fast_opts(60)).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 1830);
        assert_eq!(report.params, ["b=1"]);
    }

    #[test]
    fn bcolored_check_count_matches_the_triangle() {
        let opts = VerifyOptions {
            max_n: 60,
            b_values: vec![2],
            ..VerifyOptions::default()
        };
        let report = verify(TheoremId::SefBColored, &opts).unwrap();
        assert!(report.passed());
        assert_eq!(report.checked, 1830);
    }

    #[test]
    fn andrews_merca_point_value() {
        // at (k=2, n=6): lhs 2*8 = 16, rhs 24 - 8 = 16
        let h = FactorSpec::uniform(1, 6).expand(6).unwrap();
        let lhs = f_general(&h, 1, 2, 6).unwrap() * BigInt::from(2);
        let rhs = h_uniform(&h, 1, 2, 6).unwrap() - h_uniform(&h, 1, 2, 4).unwrap();
        assert_eq!(lhs, BigInt::from(16));
        assert_eq!(rhs, BigInt::from(16));
        let report = verify(TheoremId::AndrewsMercaH, &fast_opts(30)).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn every_theorem_passes_a_fast_sweep() {
        for (theorem, result) in verify_all(&fast_opts(40)) {
            let report = result.unwrap_or_else(|e| panic!("{}: {e}", theorem.as_str()));
            assert!(report.passed(), "{} failed", theorem.as_str());
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn both_mode_cross_checks_against_the_oracle() {
        let opts = VerifyOptions {
            max_n: 12,
            mode: VerifyMode::Both,
            b_values: vec![1, 2],
            rs_values: vec![(1, 1), (2, 1)],
            ..VerifyOptions::default()
        };
        for (theorem, result) in verify_all(&opts) {
            let report = result.unwrap_or_else(|e| panic!("{}: {e}", theorem.as_str()));
            assert!(report.passed(), "{} failed", theorem.as_str());
            assert!(
                report.oracle_checked > 0,
                "{} ran no oracle checks",
                theorem.as_str()
            );
        }
    }

    #[test]
    fn oracle_mode_respects_the_cap() {
        let opts = VerifyOptions {
            max_n: 30,
            mode: VerifyMode::Oracle,
            ..VerifyOptions::default()
        };
        assert_eq!(
            verify(TheoremId::SefClassic, &opts).unwrap_err(),
            Error::CapExceeded { n: 30, cap: 20 }
        );
        let opts = VerifyOptions {
            max_n: 8,
            mode: VerifyMode::Oracle,
            ..VerifyOptions::default()
        };
        let report = verify(TheoremId::Overline13, &opts).unwrap();
        assert!(report.passed());
    }

    #[test]
    fn empty_ranges_are_errors() {
        let report = verify(TheoremId::SefClassic, &fast_opts(0));
        assert!(matches!(report, Err(Error::EmptyRange { .. })));
    }

    #[test]
    fn overline_point_value() {
        let opts = VerifyOptions {
            max_n: 5,
            mode: VerifyMode::Both,
            ..VerifyOptions::default()
        };
        let report = verify(TheoremId::Overline13, &opts).unwrap();
        assert!(report.passed());
        // lhs at n = 5 is 38; recompute directly
        let h = FactorSpec::overpartition(1, 1, 5).expand(5).unwrap();
        assert_eq!(f_bar1(&h, 5).unwrap(), BigInt::from(38));
    }

    #[test]
    fn mutations_are_caught() {
        for theorem in [
            TheoremId::OddSum,
            TheoremId::AndrewsMercaH,
            TheoremId::EulerOddDistinct,
        ] {
            let report = mutation_smoke(theorem, 10).unwrap();
            assert!(
                !report.passed(),
                "mutation for {} slipped through",
                theorem.as_str()
            );
            assert!(report.failures.iter().any(|f| f.n <= 10));
        }
        assert!(matches!(
            mutation_smoke(TheoremId::KColors, 10),
            Err(Error::NoMutationRegistered { .. })
        ));
    }

    #[test]
    fn reports_export_deterministically() {
        let a = verify(TheoremId::KColors, &fast_opts(15)).unwrap();
        let b = verify(TheoremId::KColors, &fast_opts(15)).unwrap();
        assert_eq!(
            a.to_json_value(false).to_string(),
            b.to_json_value(false).to_string()
        );
        let with_elapsed = a.to_json_value(true);
        assert!(with_elapsed.get("elapsed_ms").is_some());
        assert!(a.to_json_value(false).get("elapsed_ms").is_none());
    }

    #[test]
    fn theorem_names_parse_loosely() {
        assert_eq!(
            TheoremId::parse("overline13").unwrap(),
            TheoremId::Overline13
        );
        assert_eq!(TheoremId::parse("kcolors").unwrap(), TheoremId::KColors);
        assert_eq!(
            TheoremId::parse("SEF_BCOLORED").unwrap(),
            TheoremId::SefBColored
        );
        assert_eq!(
            TheoremId::parse("andrews-merca-h").unwrap(),
            TheoremId::AndrewsMercaH
        );
        assert!(TheoremId::parse("fermat").is_err());
    }
}
