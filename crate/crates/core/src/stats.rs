//! Closed-form computation of every frequency/repetition statistic from a
//! coefficient series alone, with no enumeration.
//!
//! Every operation takes the precomputed series `h` for the relevant spec
//! and follows the convention `h(m) = 0` for `m < 0`. All infinite sums
//! terminate when their argument goes negative. Reading past the series
//! truncation is an error, never a silent zero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::{CoeffSeries, SpecFamily};

/// The statistics with a closed-form route.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StatKind {
    FUniform,
    GUniform,
    HUniform,
    FOdd,
    GOdd,
    FDistinct,
    FKColors,
    GKColors,
    OBarM,
    OOverlinedM,
    TBarM,
    FBar1,
    GBar1,
    GBar3,
    FGeneral,
}

impl StatKind {
    pub const ALL: [StatKind; 15] = [
        StatKind::FUniform,
        StatKind::GUniform,
        StatKind::HUniform,
        StatKind::FOdd,
        StatKind::GOdd,
        StatKind::FDistinct,
        StatKind::FKColors,
        StatKind::GKColors,
        StatKind::OBarM,
        StatKind::OOverlinedM,
        StatKind::TBarM,
        StatKind::FBar1,
        StatKind::GBar1,
        StatKind::GBar3,
        StatKind::FGeneral,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            StatKind::FUniform => "F",
            StatKind::GUniform => "G",
            StatKind::HUniform => "H",
            StatKind::FOdd => "Fodd",
            StatKind::GOdd => "Godd",
            StatKind::FDistinct => "Fdistinct",
            StatKind::FKColors => "Fkcolors",
            StatKind::GKColors => "Gkcolors",
            StatKind::OBarM => "Obar",
            StatKind::OOverlinedM => "Ooverlined",
            StatKind::TBarM => "Tbar",
            StatKind::FBar1 => "Fbar1",
            StatKind::GBar1 => "Gbar1",
            StatKind::GBar3 => "Gbar3",
            StatKind::FGeneral => "Fgeneral",
        }
    }

    pub fn parse(input: &str) -> Result<StatKind> {
        let wanted = input.to_ascii_lowercase();
        StatKind::ALL
            .iter()
            .copied()
            .find(|k| k.as_str().to_ascii_lowercase() == wanted)
            .ok_or_else(|| Error::UnknownStat {
                input: input.to_string(),
                known: StatKind::ALL
                    .iter()
                    .map(|k| k.as_str())
                    .collect::<Vec<_>>()
                    .join(", "),
            })
    }

    /// Does the statistic take a `k` (or `m`) selector?
    pub fn takes_k(&self) -> bool {
        !matches!(self, StatKind::FBar1 | StatKind::GBar1 | StatKind::GBar3)
    }

    fn valid_pairing(&self) -> &'static str {
        match self {
            StatKind::FUniform | StatKind::GUniform => {
                "uniform:b, overpartition:r,s, oddoverlined:r,s"
            }
            StatKind::HUniform => "uniform:b",
            StatKind::FOdd | StatKind::GOdd => "odd:b, oddoverlined:r,s",
            StatKind::FDistinct => "distinct:b, overpartition:r,s",
            StatKind::FKColors | StatKind::GKColors => "kcolors",
            StatKind::OBarM
            | StatKind::OOverlinedM
            | StatKind::TBarM
            | StatKind::FBar1
            | StatKind::GBar1
            | StatKind::GBar3 => "overpartition:1,1",
            StatKind::FGeneral => "any spec with repeatable factors",
        }
    }
}

fn ensure_k(k: u64) -> Result<()> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    Ok(())
}

fn ensure_in_range(h: &CoeffSeries, n: i64) -> Result<()> {
    if n > h.truncation() as i64 {
        return Err(Error::TruncationExceeded {
            index: n,
            truncation: h.truncation(),
        });
    }
    Ok(())
}

/// `sum of h(n - j*k)` for `j = start, start+step, ...`, stopping once the
/// argument goes negative.
fn sum_at_multiples(h: &CoeffSeries, k: u64, n: i64, start: u64, step: u64) -> BigInt {
    let coeffs = h.coeffs();
    let mut total = BigInt::zero();
    let mut j = start;
    loop {
        let idx = n - (j as i64) * (k as i64);
        if idx < 0 {
            break;
        }
        total += &coeffs[idx as usize];
        j += step;
    }
    total
}

/// Alternating `h(n-start*k) - h(n-(start+1)*k) + ...`.
fn alternating_from(h: &CoeffSeries, k: u64, n: i64, start: u64) -> BigInt {
    let coeffs = h.coeffs();
    let mut total = BigInt::zero();
    let mut j = start;
    let mut positive = true;
    loop {
        let idx = n - (j as i64) * (k as i64);
        if idx < 0 {
            break;
        }
        if positive {
            total += &coeffs[idx as usize];
        } else {
            total -= &coeffs[idx as usize];
        }
        positive = !positive;
        j += 1;
    }
    total
}

/// `sum of j * h(n - j*k)` for `j >= 1`.
fn weighted_sum(h: &CoeffSeries, k: u64, n: i64) -> BigInt {
    let coeffs = h.coeffs();
    let mut total = BigInt::zero();
    let mut j: u64 = 1;
    loop {
        let idx = n - (j as i64) * (k as i64);
        if idx < 0 {
            break;
        }
        total += BigInt::from(j) * &coeffs[idx as usize];
        j += 1;
    }
    total
}

/// Frequency of the part `k` over all partitions counted by `h`, where `k`
/// comes in `bk` colors: `bk * (h(n-k) + h(n-2k) + h(n-3k) + ...)`.
pub fn f_general(h: &CoeffSeries, bk: u64, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h, n)?;
    Ok(BigInt::from(bk) * sum_at_multiples(h, k, n, 1, 1))
}

/// Same frequency by the one-step recurrence
/// `F_k(n) = F_k(n-k) + bk * h(n-k)`, zero for `n <= 0`.
///
/// Agrees with [`f_general`] everywhere; kept as an independent route.
pub fn f_step(h: &CoeffSeries, bk: u64, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h, n)?;
    if n <= 0 {
        return Ok(BigInt::zero());
    }
    let prev = f_step(h, bk, k, n - k as i64)?;
    let idx = n - k as i64;
    let term = if idx < 0 {
        BigInt::zero()
    } else {
        BigInt::from(bk) * &h.coeffs()[idx as usize]
    };
    Ok(prev + term)
}

/// Parts repeated at least `k` times over all `b`-colored partitions:
/// `b * (h(n-k) + h(n-2k) + ...)`.
pub fn g_uniform(h: &CoeffSeries, b: u64, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h, n)?;
    Ok(BigInt::from(b) * sum_at_multiples(h, k, n, 1, 1))
}

/// Sum of parts divisible by `k`, counted once per colored part, over all
/// `b`-colored partitions: `b*k*h(n-k) + 2*b*k*h(n-2k) + 3*b*k*h(n-3k) + ...`.
pub fn h_uniform(h: &CoeffSeries, b: u64, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h, n)?;
    Ok(BigInt::from(b) * BigInt::from(k) * weighted_sum(h, k, n))
}

/// Frequency of `k` over `b`-colored partitions with odd parts: zero for
/// even `k`, otherwise `b * (h(n-k) + h(n-2k) + ...)` on the odd-part
/// series.
pub fn f_odd(h_odd: &CoeffSeries, b: u64, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h_odd, n)?;
    if k.is_multiple_of(2) {
        return Ok(BigInt::zero());
    }
    Ok(BigInt::from(b) * sum_at_multiples(h_odd, k, n, 1, 1))
}

/// Parts repeated at least `k` times over `b`-colored odd-part partitions:
/// `b * (h(n-k) + h(n-3k) + h(n-5k) + ...)`, odd multiples only. Defined
/// for every `k >= 1`, even or odd.
pub fn g_odd(h_odd: &CoeffSeries, b: u64, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h_odd, n)?;
    Ok(BigInt::from(b) * sum_at_multiples(h_odd, k, n, 1, 2))
}

/// Frequency of `k` over `b`-colored partitions with distinct parts:
/// `b * (h(n-k) - h(n-2k) + h(n-3k) - ...)`, alternating.
pub fn f_distinct(h_dist: &CoeffSeries, b: u64, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h_dist, n)?;
    Ok(BigInt::from(b) * alternating_from(h_dist, k, n, 1))
}

/// Parts repeated at least `k` times over partitions where part `k` comes
/// in `k` colors: `1*h(n-k) + 2*h(n-2k) + 3*h(n-3k) + ...`.
pub fn g_kcolors(h_pl: &CoeffSeries, k: u64, n: i64) -> Result<BigInt> {
    ensure_k(k)?;
    ensure_in_range(h_pl, n)?;
    Ok(weighted_sum(h_pl, k, n))
}

/// Overpartitions of `n` where the value `m` (overlined or not) appears at
/// least once: `2 * (p(n-m) - p(n-2m) + p(n-3m) - ...)` on the
/// overpartition series.
pub fn o_bar_m(h_bar: &CoeffSeries, m: u64, n: i64) -> Result<BigInt> {
    ensure_k(m)?;
    ensure_in_range(h_bar, n)?;
    Ok(BigInt::from(2) * alternating_from(h_bar, m, n, 1))
}

/// Overpartitions of `n` where `m` appears overlined but never plain:
/// `p(n-m) - 2p(n-2m) + 2p(n-3m) - 2p(n-4m) + ...`.
pub fn o_overlined_m(h_bar: &CoeffSeries, m: u64, n: i64) -> Result<BigInt> {
    ensure_k(m)?;
    ensure_in_range(h_bar, n)?;
    let first = {
        let idx = n - m as i64;
        if idx < 0 {
            BigInt::zero()
        } else {
            h_bar.coeffs()[idx as usize].clone()
        }
    };
    Ok(BigInt::from(2) * alternating_from(h_bar, m, n, 1) - first)
}

/// Overpartitions of `n` where the value `m` appears at least three times:
/// `2 * (p(n-3m) - p(n-4m) + p(n-5m) - ...)`.
pub fn t_bar_m(h_bar: &CoeffSeries, m: u64, n: i64) -> Result<BigInt> {
    ensure_k(m)?;
    ensure_in_range(h_bar, n)?;
    Ok(BigInt::from(2) * alternating_from(h_bar, m, n, 3))
}

/// Number of ones (plain or overlined) over all overpartitions of `n`:
/// `2 * (p(n-1) + p(n-3) + p(n-5) + ...)`.
pub fn f_bar1(h_bar: &CoeffSeries, n: i64) -> Result<BigInt> {
    ensure_in_range(h_bar, n)?;
    Ok(BigInt::from(2) * sum_at_multiples(h_bar, 1, n, 1, 2))
}

/// Values repeated at least `r` times over all overpartitions, summed by
/// value, via the ancillary sums: `r = 1` sums the once-counts, `r = 3`
/// sums the thrice-counts. Other thresholds have no closed ancillary and
/// are refused (the enumeration oracle still covers them).
pub fn g_bar(h_bar: &CoeffSeries, r: u64, n: i64) -> Result<BigInt> {
    ensure_in_range(h_bar, n)?;
    if r != 1 && r != 3 {
        return Err(Error::UnsupportedGBar { r });
    }
    let mut total = BigInt::zero();
    let mut m: u64 = 1;
    while (m as i64) <= n {
        total += match r {
            1 => o_bar_m(h_bar, m, n)?,
            _ => t_bar_m(h_bar, m, n)?,
        };
        m += 1;
    }
    Ok(total)
}

/// Route a statistic through the pure functions, pulling the color
/// parameters from the series' spec provenance and validating the pairing.
pub fn stat_value(series: &CoeffSeries, kind: StatKind, k: u64, n: i64) -> Result<BigInt> {
    let spec = series.spec().ok_or_else(|| Error::MissingProvenance {
        label: series.label().to_string(),
    })?;
    let family = spec.family();
    let mismatch = || Error::InvalidPairing {
        kind: kind.as_str().to_string(),
        label: spec.label().to_string(),
        valid: kind.valid_pairing().to_string(),
    };
    match kind {
        StatKind::FUniform | StatKind::GUniform => {
            let b = match family {
                SpecFamily::Uniform { b } => b,
                SpecFamily::Overpartition { r, .. } | SpecFamily::OddOverlined { r, .. } => r,
                _ => return Err(mismatch()),
            };
            match kind {
                StatKind::FUniform => f_general(series, b, k, n),
                _ => g_uniform(series, b, k, n),
            }
        }
        StatKind::HUniform => match family {
            SpecFamily::Uniform { b } => h_uniform(series, b, k, n),
            _ => Err(mismatch()),
        },
        StatKind::FOdd | StatKind::GOdd => {
            let b = match family {
                SpecFamily::Odd { b } => b,
                SpecFamily::OddOverlined { s, .. } => s,
                _ => return Err(mismatch()),
            };
            match kind {
                StatKind::FOdd => f_odd(series, b, k, n),
                _ => g_odd(series, b, k, n),
            }
        }
        StatKind::FDistinct => {
            let b = match family {
                SpecFamily::Distinct { b } => b,
                SpecFamily::Overpartition { s, .. } => s,
                _ => return Err(mismatch()),
            };
            f_distinct(series, b, k, n)
        }
        StatKind::FKColors => match family {
            SpecFamily::KColors => f_general(series, k, k, n),
            _ => Err(mismatch()),
        },
        StatKind::GKColors => match family {
            SpecFamily::KColors => g_kcolors(series, k, n),
            _ => Err(mismatch()),
        },
        StatKind::OBarM
        | StatKind::OOverlinedM
        | StatKind::TBarM
        | StatKind::FBar1
        | StatKind::GBar1
        | StatKind::GBar3 => {
            if family != (SpecFamily::Overpartition { r: 1, s: 1 }) {
                return Err(mismatch());
            }
            match kind {
                StatKind::OBarM => o_bar_m(series, k, n),
                StatKind::OOverlinedM => o_overlined_m(series, k, n),
                StatKind::TBarM => t_bar_m(series, k, n),
                StatKind::FBar1 => f_bar1(series, n),
                StatKind::GBar1 => g_bar(series, 1, n),
                _ => g_bar(series, 3, n),
            }
        }
        StatKind::FGeneral => {
            ensure_k(k)?;
            let bk = spec.repeatable_multiplicity(k);
            f_general(series, bk, k, n)
        }
    }
}

#[derive(Serialize)]
struct StatRow<'a> {
    kind: &'a str,
    spec: &'a str,
    k: u64,
    n: u64,
    value: String,
}

/// Computed values of one statistic over a `(k, n)` grid.
///
/// Built either through per-column one-step recurrences (`memoize = true`,
/// the default for sweeps) or by evaluating every cell independently
/// through the pure functions. The two routes must agree; a property test
/// holds them to that.
#[derive(Debug, Clone)]
pub struct StatTable {
    kind: StatKind,
    spec_label: String,
    max_n: u64,
    values: BTreeMap<(u64, u64), BigInt>,
}

impl StatTable {
    /// Tabulate `kind` for every `k` in `ks` (ignored for the k-less
    /// statistics, which use the single column `k = 0`) and every
    /// `n <= max_n`.
    pub fn build(
        series: &CoeffSeries,
        kind: StatKind,
        ks: &[u64],
        max_n: u64,
        memoize: bool,
    ) -> Result<StatTable> {
        ensure_in_range(series, max_n as i64)?;
        let columns: Vec<u64> = if kind.takes_k() {
            let mut ks = ks.to_vec();
            ks.sort_unstable();
            ks.dedup();
            ks
        } else {
            vec![0]
        };
        let mut values = BTreeMap::new();
        for &k in &columns {
            if memoize {
                let column = memoized_column(series, kind, k, max_n)?;
                for (n, v) in column.into_iter().enumerate() {
                    values.insert((k, n as u64), v);
                }
            } else {
                for n in 0..=max_n {
                    let v = stat_value(series, kind, k, n as i64)?;
                    values.insert((k, n), v);
                }
            }
        }
        Ok(StatTable {
            kind,
            spec_label: series.label().to_string(),
            max_n,
            values,
        })
    }

    pub fn kind(&self) -> StatKind {
        self.kind
    }

    pub fn spec_label(&self) -> &str {
        &self.spec_label
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn value(&self, k: u64, n: u64) -> Option<&BigInt> {
        self.values.get(&(k, n))
    }

    /// Value with the `n < 0` convention applied, for shifted lookups.
    pub fn value_or_zero(&self, k: u64, n: i64) -> BigInt {
        if n < 0 {
            return BigInt::zero();
        }
        self.values
            .get(&(k, n as u64))
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn rows(&self) -> impl Iterator<Item = (u64, u64, &BigInt)> {
        self.values.iter().map(|(&(k, n), v)| (k, n, v))
    }

    /// CSV export, header `kind,spec,k,n,value`. Spec labels containing
    /// commas are quoted.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("kind,spec,k,n,value\n");
        let spec = if self.spec_label.contains(',') {
            format!("\"{}\"", self.spec_label)
        } else {
            self.spec_label.clone()
        };
        for (k, n, v) in self.rows() {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.kind.as_str(),
                spec,
                k,
                n,
                v
            ));
        }
        out
    }

    /// JSON export: an array of row objects mirroring the CSV.
    pub fn to_json(&self) -> String {
        let rows: Vec<StatRow<'_>> = self
            .rows()
            .map(|(k, n, v)| StatRow {
                kind: self.kind.as_str(),
                spec: &self.spec_label,
                k,
                n,
                value: v.to_string(),
            })
            .collect();
        serde_json::to_string(&rows).expect("stat table export cannot fail")
    }
}

/// One-step recurrences for a single `k` column, `n = 0..=max_n`.
fn memoized_column(
    series: &CoeffSeries,
    kind: StatKind,
    k: u64,
    max_n: u64,
) -> Result<Vec<BigInt>> {
    if kind.takes_k() {
        ensure_k(k)?;
    }
    // resolve the color multiplier exactly as stat_value does
    let spec = series.spec().ok_or_else(|| Error::MissingProvenance {
        label: series.label().to_string(),
    })?;
    let family = spec.family();
    let mismatch = || Error::InvalidPairing {
        kind: kind.as_str().to_string(),
        label: spec.label().to_string(),
        valid: kind.valid_pairing().to_string(),
    };
    let len = max_n as usize + 1;
    let h = series.coeffs();
    let ki = k as usize;

    // running sums shared by several kinds
    let plain_sum = |step_two: bool| -> Vec<BigInt> {
        // S(n) = h(n-k) + S(n - step*k)
        let back = if step_two { 2 * ki } else { ki };
        let mut s = vec![BigInt::zero(); len];
        for n in ki..len {
            let mut v = h[n - ki].clone();
            if n >= back {
                v += &s[n - back];
            }
            s[n] = v;
        }
        s
    };
    let scale = |xs: Vec<BigInt>, c: u64| -> Vec<BigInt> {
        let c = BigInt::from(c);
        xs.into_iter().map(|x| x * &c).collect()
    };

    let column = match kind {
        StatKind::FUniform | StatKind::GUniform => {
            let b = match family {
                SpecFamily::Uniform { b } => b,
                SpecFamily::Overpartition { r, .. } | SpecFamily::OddOverlined { r, .. } => r,
                _ => return Err(mismatch()),
            };
            scale(plain_sum(false), b)
        }
        StatKind::FGeneral => {
            let bk = spec.repeatable_multiplicity(k);
            scale(plain_sum(false), bk)
        }
        StatKind::FKColors => {
            if family != SpecFamily::KColors {
                return Err(mismatch());
            }
            scale(plain_sum(false), k)
        }
        StatKind::HUniform => {
            let b = match family {
                SpecFamily::Uniform { b } => b,
                _ => return Err(mismatch()),
            };
            // T(n) = S(n) + T(n-k); H = b*k*T
            let s = plain_sum(false);
            let mut t = vec![BigInt::zero(); len];
            for n in ki..len {
                let mut v = s[n].clone();
                if n >= ki {
                    v += &t[n - ki];
                }
                t[n] = v;
            }
            scale(t, b * k)
        }
        StatKind::GKColors => {
            if family != SpecFamily::KColors {
                return Err(mismatch());
            }
            let s = plain_sum(false);
            let mut t = vec![BigInt::zero(); len];
            for n in ki..len {
                let mut v = s[n].clone();
                v += &t[n - ki];
                t[n] = v;
            }
            t
        }
        StatKind::FOdd => {
            let b = match family {
                SpecFamily::Odd { b } => b,
                SpecFamily::OddOverlined { s, .. } => s,
                _ => return Err(mismatch()),
            };
            if k.is_multiple_of(2) {
                vec![BigInt::zero(); len]
            } else {
                scale(plain_sum(false), b)
            }
        }
        StatKind::GOdd => {
            let b = match family {
                SpecFamily::Odd { b } => b,
                SpecFamily::OddOverlined { s, .. } => s,
                _ => return Err(mismatch()),
            };
            scale(plain_sum(true), b)
        }
        StatKind::FDistinct => {
            let b = match family {
                SpecFamily::Distinct { b } => b,
                SpecFamily::Overpartition { s, .. } => s,
                _ => return Err(mismatch()),
            };
            // A(n) = h(n-k) - A(n-k)
            let mut a = vec![BigInt::zero(); len];
            for n in ki..len {
                let mut v = h[n - ki].clone();
                v -= &a[n - ki];
                a[n] = v;
            }
            scale(a, b)
        }
        StatKind::OBarM | StatKind::OOverlinedM | StatKind::TBarM => {
            if family != (SpecFamily::Overpartition { r: 1, s: 1 }) {
                return Err(mismatch());
            }
            match kind {
                StatKind::OBarM => scale(alternating_column(h, ki, len), 2),
                StatKind::TBarM => {
                    // thrice-counts are the once-counts shifted by 2m
                    let alt = alternating_column(h, ki, len);
                    let mut out = vec![BigInt::zero(); len];
                    for n in 2 * ki..len {
                        out[n] = &alt[n - 2 * ki] * 2;
                    }
                    out
                }
                _ => {
                    // V(n) = h(n-m) - h(n-2m) - V(n-m)
                    let mut v = vec![BigInt::zero(); len];
                    for n in ki..len {
                        let mut x = h[n - ki].clone();
                        if n >= 2 * ki {
                            x -= &h[n - 2 * ki];
                        }
                        x -= &v[n - ki];
                        v[n] = x;
                    }
                    v
                }
            }
        }
        StatKind::FBar1 | StatKind::GBar1 | StatKind::GBar3 => {
            if family != (SpecFamily::Overpartition { r: 1, s: 1 }) {
                return Err(mismatch());
            }
            match kind {
                StatKind::FBar1 => {
                    // FB(n) = 2h(n-1) + FB(n-2)
                    let mut fb = vec![BigInt::zero(); len];
                    for n in 1..len {
                        let mut v = &h[n - 1] * 2;
                        if n >= 2 {
                            v += &fb[n - 2];
                        }
                        fb[n] = v;
                    }
                    fb
                }
                _ => {
                    let shift = if kind == StatKind::GBar1 { 0 } else { 2 };
                    let mut out = vec![BigInt::zero(); len];
                    for m in 1..len {
                        let alt = alternating_column(h, m, len);
                        for (n, slot) in out.iter_mut().enumerate() {
                            let idx = n as i64 - (shift * m) as i64;
                            if idx >= 0 {
                                *slot += &alt[idx as usize] * 2;
                            }
                        }
                    }
                    out
                }
            }
        }
    };
    Ok(column)
}

/// `A(n) = h(n-m) - A(n-m)` as a full column.
fn alternating_column(h: &[BigInt], m: usize, len: usize) -> Vec<BigInt> {
    let mut a = vec![BigInt::zero(); len];
    for n in m..len {
        let mut v = h[n - m].clone();
        v -= &a[n - m];
        a[n] = v;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::FactorSpec;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn p_series(n: u64) -> CoeffSeries {
        FactorSpec::uniform(1, n).expand(n).unwrap()
    }

    fn pbar_series(n: u64) -> CoeffSeries {
        FactorSpec::overpartition(1, 1, n).expand(n).unwrap()
    }

    #[test]
    fn frequency_of_ones_in_partitions_of_five() {
        let h = p_series(10);
        assert_eq!(f_general(&h, 1, 1, 5).unwrap(), big(12));
        assert_eq!(g_uniform(&h, 1, 1, 5).unwrap(), big(12));
    }

    #[test]
    fn frequency_with_colors() {
        let pl = FactorSpec::kcolors(6).expand(6).unwrap();
        // part 2 in 2 colors: 2*(h(2)+h(0)) = 2*(3+1)
        assert_eq!(f_general(&pl, 2, 2, 4).unwrap(), big(8));
        let h2 = FactorSpec::uniform(2, 5).expand(5).unwrap();
        assert_eq!(f_step(&h2, 2, 1, 3).unwrap(), big(16));
        assert_eq!(g_uniform(&h2, 2, 1, 3).unwrap(), big(16));
    }

    #[test]
    fn frequency_vanishes_past_n() {
        let h = p_series(10);
        assert_eq!(f_general(&h, 1, 7, 6).unwrap(), big(0));
        assert_eq!(f_general(&h, 1, 6, 5).unwrap(), big(0));
    }

    #[test]
    fn one_step_route_and_sum_route_agree() {
        let h = p_series(60);
        for k in 1..=10 {
            for n in 0..=60i64 {
                assert_eq!(
                    f_step(&h, 1, k, n).unwrap(),
                    f_general(&h, 1, k, n).unwrap(),
                    "k = {k}, n = {n}"
                );
            }
        }
        assert_eq!(f_step(&h, 1, 2, 6).unwrap(), big(8));
        assert_eq!(f_step(&h, 3, 4, 4).unwrap(), big(3)); // n = k gives bk
    }

    #[test]
    fn divisible_sums() {
        let h = p_series(10);
        assert_eq!(h_uniform(&h, 1, 2, 6).unwrap(), big(24));
        assert_eq!(h_uniform(&h, 1, 2, 4).unwrap(), big(8));
        assert_eq!(h_uniform(&h, 1, 3, 2).unwrap(), big(0));
    }

    #[test]
    fn odd_part_statistics() {
        let h1 = FactorSpec::odd(1, 10).expand(10).unwrap();
        assert_eq!(f_odd(&h1, 1, 1, 5).unwrap(), big(7));
        assert_eq!(f_odd(&h1, 1, 2, 8).unwrap(), big(0));
        assert_eq!(g_odd(&h1, 1, 1, 5).unwrap(), big(4));
        assert_eq!(g_odd(&h1, 1, 1, 4).unwrap(), big(3));
        assert_eq!(g_odd(&h1, 1, 5, 4).unwrap(), big(0));

        let h2 = FactorSpec::odd(2, 10).expand(10).unwrap();
        assert_eq!(f_odd(&h2, 2, 1, 2).unwrap(), big(6));
    }

    #[test]
    fn distinct_part_statistics() {
        let h1 = FactorSpec::distinct(1, 10).expand(10).unwrap();
        assert_eq!(f_distinct(&h1, 1, 1, 5).unwrap(), big(1));
        assert_eq!(f_distinct(&h1, 1, 5, 5).unwrap(), big(1));
        let h2 = FactorSpec::distinct(2, 10).expand(10).unwrap();
        assert_eq!(f_distinct(&h2, 2, 1, 2).unwrap(), big(2));
    }

    #[test]
    fn kcolors_repetition_sum() {
        let pl = FactorSpec::kcolors(6).expand(6).unwrap();
        assert_eq!(g_kcolors(&pl, 1, 3).unwrap(), big(8));
        assert_eq!(g_kcolors(&pl, 2, 4).unwrap(), big(5));
        assert_eq!(g_kcolors(&pl, 5, 4).unwrap(), big(0));
    }

    #[test]
    fn overline_ancillaries() {
        let pb = pbar_series(10);
        assert_eq!(o_bar_m(&pb, 1, 5).unwrap(), big(18));
        assert_eq!(o_bar_m(&pb, 5, 5).unwrap(), big(2));
        assert_eq!(o_bar_m(&pb, 2, 5).unwrap(), big(12));
        assert_eq!(t_bar_m(&pb, 1, 5).unwrap(), big(6));
        assert_eq!(t_bar_m(&pb, 2, 5).unwrap(), big(0));
        assert_eq!(t_bar_m(&pb, 1, 4).unwrap(), big(2));
        assert_eq!(o_overlined_m(&pb, 1, 3).unwrap(), big(2));
        // the once-count splits into plain-appearance and overlined-only
        // counts, and the plain count is a single shifted coefficient
        for m in 1..=5u64 {
            for n in 0..=10i64 {
                let plain = pb.coefficient(n - m as i64).unwrap();
                assert_eq!(
                    o_bar_m(&pb, m, n).unwrap(),
                    plain + o_overlined_m(&pb, m, n).unwrap(),
                    "m={m}, n={n}"
                );
            }
        }
    }

    #[test]
    fn overline_totals() {
        let pb = pbar_series(10);
        assert_eq!(f_bar1(&pb, 5).unwrap(), big(38));
        assert_eq!(f_bar1(&pb, 1).unwrap(), big(2));
        assert_eq!(f_bar1(&pb, 0).unwrap(), big(0));
        assert_eq!(
            g_bar(&pb, 1, 5).unwrap() - g_bar(&pb, 3, 5).unwrap(),
            big(38)
        );
        assert_eq!(g_bar(&pb, 3, 2).unwrap(), big(0));
        assert_eq!(g_bar(&pb, 1, 1).unwrap(), big(2));
        assert_eq!(g_bar(&pb, 2, 5), Err(Error::UnsupportedGBar { r: 2 }));
    }

    #[test]
    fn negative_arguments_are_zero_and_overruns_error() {
        let h = p_series(5);
        assert_eq!(f_general(&h, 1, 1, -3).unwrap(), big(0));
        assert_eq!(g_odd(&h, 1, 2, -1).unwrap(), big(0));
        assert!(matches!(
            f_general(&h, 1, 1, 6),
            Err(Error::TruncationExceeded { .. })
        ));
        assert_eq!(f_general(&h, 1, 0, 3), Err(Error::ZeroK));
    }

    #[test]
    fn stat_value_enforces_pairings() {
        let uniform = p_series(10);
        let over = pbar_series(10);
        assert_eq!(
            stat_value(&uniform, StatKind::FUniform, 1, 5).unwrap(),
            big(12)
        );
        assert_eq!(stat_value(&over, StatKind::FBar1, 0, 5).unwrap(), big(38));
        assert!(matches!(
            stat_value(&uniform, StatKind::FOdd, 1, 5),
            Err(Error::InvalidPairing { .. })
        ));
        assert!(matches!(
            stat_value(&over, StatKind::HUniform, 1, 5),
            Err(Error::InvalidPairing { .. })
        ));
        let over21 = FactorSpec::overpartition(2, 1, 10).expand(10).unwrap();
        assert!(matches!(
            stat_value(&over21, StatKind::FBar1, 0, 5),
            Err(Error::InvalidPairing { .. })
        ));
        // ordinary-class statistics on a combined spec use the r colors
        assert_eq!(
            stat_value(&over21, StatKind::FUniform, 1, 2).unwrap(),
            big(2) * sum_at_multiples(&over21, 1, 2, 1, 1)
        );
    }

    #[test]
    fn memoized_tables_match_pure_evaluation() {
        let cases: Vec<(CoeffSeries, Vec<StatKind>)> = vec![
            (
                p_series(40),
                vec![
                    StatKind::FUniform,
                    StatKind::GUniform,
                    StatKind::HUniform,
                    StatKind::FGeneral,
                ],
            ),
            (
                FactorSpec::odd(2, 40).expand(40).unwrap(),
                vec![StatKind::FOdd, StatKind::GOdd],
            ),
            (
                FactorSpec::distinct(2, 40).expand(40).unwrap(),
                vec![StatKind::FDistinct],
            ),
            (
                FactorSpec::kcolors(40).expand(40).unwrap(),
                vec![StatKind::FKColors, StatKind::GKColors],
            ),
            (
                pbar_series(40),
                vec![
                    StatKind::OBarM,
                    StatKind::OOverlinedM,
                    StatKind::TBarM,
                    StatKind::FBar1,
                    StatKind::GBar1,
                    StatKind::GBar3,
                ],
            ),
        ];
        let ks = [1, 2, 3, 5, 8];
        for (series, kinds) in &cases {
            for &kind in kinds {
                let fast = StatTable::build(series, kind, &ks, 40, true).unwrap();
                let slow = StatTable::build(series, kind, &ks, 40, false).unwrap();
                for (k, n, v) in fast.rows() {
                    assert_eq!(
                        Some(v),
                        slow.value(k, n),
                        "{} on {} at k={k}, n={n}",
                        kind.as_str(),
                        series.label()
                    );
                }
            }
        }
    }

    #[test]
    fn table_exports() {
        let h = p_series(3);
        let table = StatTable::build(&h, StatKind::FUniform, &[1], 3, true).unwrap();
        assert_eq!(
            table.to_csv(),
            "kind,spec,k,n,value\nF,uniform:1,1,0,0\nF,uniform:1,1,1,1\nF,uniform:1,1,2,2\nF,uniform:1,1,3,4\n"
        );
        let over = pbar_series(2);
        let quoted = StatTable::build(&over, StatKind::FBar1, &[], 2, true).unwrap();
        assert!(quoted.to_csv().contains("\"overpartition:1,1\""));
        assert!(quoted.to_json().starts_with("[{\"kind\":\"Fbar1\""));
    }

    #[test]
    fn stat_kind_parsing() {
        assert_eq!(StatKind::parse("F").unwrap(), StatKind::FUniform);
        assert_eq!(StatKind::parse("fbar1").unwrap(), StatKind::FBar1);
        assert_eq!(StatKind::parse("GODD").unwrap(), StatKind::GOdd);
        assert!(StatKind::parse("nope").is_err());
    }
}
