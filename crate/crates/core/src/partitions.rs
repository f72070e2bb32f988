//! Concrete colored-partition objects, exhaustive enumeration for a
//! [`FactorSpec`], and per-partition statistics.
//!
//! Everything here is the slow, obviously-correct route: statistics are
//! obtained by generating every partition of a given weight and counting.
//! The fast recurrences in [`crate::stats`] are checked against this module.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::series::{FactorKind, FactorSpec, SpecFamily};

/// Default ceiling for exhaustive enumeration. Colored counts explode
/// quickly (three colors at weight 20 is already several hundred thousand
/// objects), so oracle entry points refuse larger weights unless the caller
/// raises the cap explicitly.
pub const DEFAULT_ORACLE_CAP: u64 = 20;

/// One colored part: the part value, its color index within the factor it
/// came from, and the factor kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ColoredPart {
    pub value: u64,
    pub color: u64,
    pub kind: FactorKind,
}

impl ColoredPart {
    pub fn repeatable(value: u64, color: u64) -> ColoredPart {
        ColoredPart {
            value,
            color,
            kind: FactorKind::Repeatable,
        }
    }

    pub fn distinct(value: u64, color: u64) -> ColoredPart {
        ColoredPart {
            value,
            color,
            kind: FactorKind::Distinct,
        }
    }
}

// Canonical ordering: descending value, repeatable before distinct,
// ascending color.
impl Ord for ColoredPart {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .value
            .cmp(&self.value)
            .then(self.kind.cmp(&other.kind))
            .then(self.color.cmp(&other.color))
    }
}

impl PartialOrd for ColoredPart {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Merge convention for "a part repeated at least k times".
///
/// `ByColoredPart` counts `(value, color, kind)` triples separately, the
/// convention of the colored frequency statistics. `ByValue` merges all
/// colors and kinds of a value first, the convention of the overpartition
/// statistics, where `2` and the overlined `2` count as the same part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MergeMode {
    ByColoredPart,
    ByValue,
}

/// A colored partition: a frequency map over colored parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredPartition {
    entries: BTreeMap<ColoredPart, u64>,
    weight: u64,
}

impl ColoredPartition {
    pub fn empty() -> ColoredPartition {
        ColoredPartition {
            entries: BTreeMap::new(),
            weight: 0,
        }
    }

    /// Build from `(part, frequency)` pairs; duplicates merge, zero
    /// frequencies drop out.
    pub fn from_entries(pairs: impl IntoIterator<Item = (ColoredPart, u64)>) -> ColoredPartition {
        let mut entries: BTreeMap<ColoredPart, u64> = BTreeMap::new();
        for (part, freq) in pairs {
            if freq > 0 {
                *entries.entry(part).or_insert(0) += freq;
            }
        }
        let weight = entries.iter().map(|(p, f)| p.value * f).sum();
        ColoredPartition { entries, weight }
    }

    pub fn weight(&self) -> u64 {
        self.weight
    }

    pub fn entries(&self) -> impl Iterator<Item = (&ColoredPart, &u64)> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Recompute the weight from the entries (for integrity checks).
    pub fn recomputed_weight(&self) -> u64 {
        self.entries.iter().map(|(p, f)| p.value * f).sum()
    }

    /// Total frequency of the value `k`, merged over colors and kinds.
    pub fn frequency(&self, k: u64) -> u64 {
        self.entries
            .iter()
            .filter(|(p, _)| p.value == k)
            .map(|(_, f)| *f)
            .sum()
    }

    /// Number of parts appearing at least `k` times under the given merge
    /// convention.
    pub fn parts_repeated_at_least(&self, k: u64, merge: MergeMode) -> u64 {
        match merge {
            MergeMode::ByColoredPart => self.entries.values().filter(|&&f| f >= k).count() as u64,
            MergeMode::ByValue => {
                let mut by_value: BTreeMap<u64, u64> = BTreeMap::new();
                for (p, f) in &self.entries {
                    *by_value.entry(p.value).or_insert(0) += f;
                }
                by_value.values().filter(|&&f| f >= k).count() as u64
            }
        }
    }

    /// Sum of part values divisible by `k`, each colored part counted once
    /// regardless of its frequency.
    pub fn sum_parts_divisible_by(&self, k: u64) -> u64 {
        if k == 0 {
            return 0;
        }
        self.entries
            .keys()
            .filter(|p| p.value % k == 0)
            .map(|p| p.value)
            .sum()
    }

    pub fn stats(&self) -> PartitionStats {
        let mut freq_by_value: BTreeMap<u64, u64> = BTreeMap::new();
        for (p, f) in &self.entries {
            *freq_by_value.entry(p.value).or_insert(0) += f;
        }
        PartitionStats {
            weight: self.weight,
            freq_by_value,
            freq_by_colored_part: self.entries.clone(),
        }
    }

    /// Canonical text form: parts in canonical order, one token per
    /// occurrence, joined with `+`. Repeatable parts print `value_color`,
    /// distinct parts `value~color`; the color suffix is dropped when the
    /// governing factor has a single color, so one-color partitions print
    /// as plain partitions and one-color overlined parts as `2~`.
    pub fn canonical_string(&self, spec: &FactorSpec) -> String {
        if self.entries.is_empty() {
            return "-".to_string();
        }
        let mut out = String::new();
        for (part, freq) in &self.entries {
            let single_color = spec.multiplicity_of(part.value, part.kind) == Some(1);
            for _ in 0..*freq {
                if !out.is_empty() {
                    out.push('+');
                }
                let _ = match (part.kind, single_color) {
                    (FactorKind::Repeatable, true) => write!(out, "{}", part.value),
                    (FactorKind::Repeatable, false) => {
                        write!(out, "{}_{}", part.value, part.color)
                    }
                    (FactorKind::Distinct, true) => write!(out, "{}~", part.value),
                    (FactorKind::Distinct, false) => write!(out, "{}~{}", part.value, part.color),
                };
            }
        }
        out
    }

    /// One JSON line: an array of `[value, color, kind, frequency]`
    /// quadruples in canonical order.
    pub fn to_json_line(&self) -> String {
        let quads: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(p, f)| serde_json::json!([p.value, p.color, p.kind.as_str(), f]))
            .collect();
        serde_json::Value::Array(quads).to_string()
    }
}

/// Per-partition frequency summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionStats {
    pub weight: u64,
    pub freq_by_value: BTreeMap<u64, u64>,
    pub freq_by_colored_part: BTreeMap<ColoredPart, u64>,
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    value: u64,
    color: u64,
    kind: FactorKind,
}

/// Streaming enumeration of every colored partition of weight `n` described
/// by a spec.
///
/// Parts are laid out in canonical order (descending value, repeatable
/// before distinct, ascending color) and frequencies are explored from
/// largest to smallest, so the first partition emitted is `n` itself (when
/// available) and the last is all ones. The stream is deterministic and
/// never materializes more than one partition.
pub struct Enumerator {
    slots: Vec<Slot>,
    freqs: Vec<u64>,
    rem: u64,
    started: bool,
    done: bool,
}

/// Enumerate the colored partitions of weight `n` under `spec`.
pub fn enumerate(n: u64, spec: &FactorSpec) -> Enumerator {
    let mut slots = Vec::new();
    let mut factors: Vec<_> = spec.factors().to_vec();
    // canonical slot order: descending part value, repeatable first
    factors.sort_by(|a, b| b.part.cmp(&a.part).then(a.kind.cmp(&b.kind)));
    for factor in factors {
        if factor.part > n {
            continue;
        }
        for color in 1..=factor.multiplicity {
            slots.push(Slot {
                value: factor.part,
                color,
                kind: factor.kind,
            });
        }
    }
    let freqs = vec![0; slots.len()];
    Enumerator {
        slots,
        freqs,
        rem: n,
        started: false,
        done: false,
    }
}

impl Enumerator {
    /// Assign the maximum feasible frequency to every slot from `from` on.
    fn descend(&mut self, from: usize) {
        for i in from..self.slots.len() {
            let slot = self.slots[i];
            let mut f = self.rem / slot.value;
            if slot.kind == FactorKind::Distinct {
                f = f.min(1);
            }
            self.freqs[i] = f;
            self.rem -= f * slot.value;
        }
    }

    /// Step to the next frequency assignment in lexicographic-descending
    /// order. Returns false once the space is exhausted.
    fn advance(&mut self) -> bool {
        let mut i = self.slots.len();
        while i > 0 {
            i -= 1;
            if self.freqs[i] > 0 {
                self.freqs[i] -= 1;
                self.rem += self.slots[i].value;
                self.descend(i + 1);
                return true;
            }
        }
        false
    }

    fn snapshot(&self) -> ColoredPartition {
        let entries: BTreeMap<ColoredPart, u64> = self
            .slots
            .iter()
            .zip(&self.freqs)
            .filter(|(_, &f)| f > 0)
            .map(|(s, &f)| {
                (
                    ColoredPart {
                        value: s.value,
                        color: s.color,
                        kind: s.kind,
                    },
                    f,
                )
            })
            .collect();
        let weight = entries.iter().map(|(p, f)| p.value * f).sum();
        ColoredPartition { entries, weight }
    }
}

impl Iterator for Enumerator {
    type Item = ColoredPartition;

    fn next(&mut self) -> Option<ColoredPartition> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            self.descend(0);
            if self.rem == 0 {
                return Some(self.snapshot());
            }
        }
        loop {
            if !self.advance() {
                self.done = true;
                return None;
            }
            if self.rem == 0 {
                return Some(self.snapshot());
            }
        }
    }
}

/// The statistics the enumeration oracle can recompute.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OracleStat {
    /// Frequency of `k` among ordinary-class parts.
    F,
    /// Ordinary-class colored parts repeated at least `k` times.
    G,
    /// Sum of ordinary-class part values divisible by `k`, once per
    /// colored part.
    H,
    /// Frequency of `k` among odd-class parts.
    FOdd,
    /// Odd-class colored parts repeated at least `k` times.
    GOdd,
    /// Frequency of `k` among distinct-class parts.
    FDistinct,
    /// Frequency of the value `k`, all classes merged.
    FBar,
    /// Values repeated at least `k` times, all classes merged.
    GBar,
    /// Partitions where the value `m = k` appears at all.
    OBarM,
    /// Partitions where `m` appears overlined but never plain.
    OOverlinedM,
    /// Partitions where the value `m = k` appears at least three times.
    TBarM,
}

impl OracleStat {
    pub fn as_str(&self) -> &'static str {
        match self {
            OracleStat::F => "F",
            OracleStat::G => "G",
            OracleStat::H => "H",
            OracleStat::FOdd => "Fodd",
            OracleStat::GOdd => "Godd",
            OracleStat::FDistinct => "Fdistinct",
            OracleStat::FBar => "Fbar",
            OracleStat::GBar => "Gbar",
            OracleStat::OBarM => "Obar",
            OracleStat::OOverlinedM => "Ooverlined",
            OracleStat::TBarM => "Tbar",
        }
    }
}

/// Which parts of a partition a class-restricted statistic looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ClassFilter {
    All,
    Ordinary,
    OddClass,
    DistinctClass,
}

fn class_filter(stat: OracleStat, spec: &FactorSpec) -> Result<ClassFilter> {
    use OracleStat::*;
    let family = spec.family();
    let filter = match stat {
        F | G | H => ClassFilter::Ordinary,
        FOdd | GOdd => match family {
            SpecFamily::Odd { .. } | SpecFamily::OddOverlined { .. } => ClassFilter::OddClass,
            _ => {
                return Err(Error::InvalidPairing {
                    kind: stat.as_str().to_string(),
                    label: spec.label().to_string(),
                    valid: "odd:b, oddoverlined:r,s".to_string(),
                })
            }
        },
        FDistinct => match family {
            SpecFamily::Distinct { .. } | SpecFamily::Overpartition { .. } => {
                ClassFilter::DistinctClass
            }
            _ => {
                return Err(Error::InvalidPairing {
                    kind: stat.as_str().to_string(),
                    label: spec.label().to_string(),
                    valid: "distinct:b, overpartition:r,s".to_string(),
                })
            }
        },
        FBar | GBar | OBarM | OOverlinedM | TBarM => ClassFilter::All,
    };
    Ok(filter)
}

fn part_in_class(part: &ColoredPart, family: SpecFamily, filter: ClassFilter) -> bool {
    match filter {
        ClassFilter::All => true,
        ClassFilter::Ordinary => match family {
            SpecFamily::Overpartition { .. } => part.kind == FactorKind::Repeatable,
            SpecFamily::OddOverlined { r, .. } => {
                part.kind == FactorKind::Repeatable && part.color <= r
            }
            _ => true,
        },
        ClassFilter::OddClass => match family {
            SpecFamily::Odd { .. } => true,
            SpecFamily::OddOverlined { r, .. } => part.color > r,
            _ => false,
        },
        ClassFilter::DistinctClass => match family {
            SpecFamily::Distinct { .. } => true,
            SpecFamily::Overpartition { .. } => part.kind == FactorKind::Distinct,
            _ => false,
        },
    }
}

/// Every statistic of one spec at one weight, accumulated over a single
/// enumeration pass. Maps are keyed by `k` (or `m`); absent keys mean zero.
#[derive(Debug, Clone, Default)]
pub struct OracleTables {
    pub count: BigInt,
    pub f: BTreeMap<u64, BigInt>,
    pub g: BTreeMap<u64, BigInt>,
    pub h_div: BTreeMap<u64, BigInt>,
    pub f_odd: BTreeMap<u64, BigInt>,
    pub g_odd: BTreeMap<u64, BigInt>,
    pub f_distinct: BTreeMap<u64, BigInt>,
    pub f_bar: BTreeMap<u64, BigInt>,
    pub g_bar: BTreeMap<u64, BigInt>,
    pub o_bar: BTreeMap<u64, BigInt>,
    pub o_overlined: BTreeMap<u64, BigInt>,
    pub t_bar: BTreeMap<u64, BigInt>,
}

impl OracleTables {
    pub fn get(&self, stat: OracleStat, k: u64) -> BigInt {
        let table = match stat {
            OracleStat::F => &self.f,
            OracleStat::G => &self.g,
            OracleStat::H => &self.h_div,
            OracleStat::FOdd => &self.f_odd,
            OracleStat::GOdd => &self.g_odd,
            OracleStat::FDistinct => &self.f_distinct,
            OracleStat::FBar => &self.f_bar,
            OracleStat::GBar => &self.g_bar,
            OracleStat::OBarM => &self.o_bar,
            OracleStat::OOverlinedM => &self.o_overlined,
            OracleStat::TBarM => &self.t_bar,
        };
        table.get(&k).cloned().unwrap_or_else(BigInt::zero)
    }
}

fn bump(table: &mut BTreeMap<u64, BigInt>, key: u64, amount: u64) {
    *table.entry(key).or_insert_with(BigInt::zero) += amount;
}

/// Enumerate weight `n` under `spec` once and tabulate every statistic.
///
/// `n` above `cap` is refused; the cap exists because the object count
/// grows super-polynomially in `n`.
pub fn oracle_tables(n: u64, spec: &FactorSpec, cap: u64) -> Result<OracleTables> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    let family = spec.family();
    let odd_class_defined = matches!(
        family,
        SpecFamily::Odd { .. } | SpecFamily::OddOverlined { .. }
    );
    let distinct_class_defined = matches!(
        family,
        SpecFamily::Distinct { .. } | SpecFamily::Overpartition { .. }
    );
    let mut tables = OracleTables::default();
    for partition in enumerate(n, spec) {
        tables.count += 1u32;
        let mut merged: BTreeMap<u64, u64> = BTreeMap::new();
        let mut plain_seen: BTreeMap<u64, bool> = BTreeMap::new();
        let mut overlined_seen: BTreeMap<u64, bool> = BTreeMap::new();
        for (part, &freq) in partition.entries() {
            if part_in_class(part, family, ClassFilter::Ordinary) {
                bump(&mut tables.f, part.value, freq);
                for j in 1..=freq {
                    bump(&mut tables.g, j, 1);
                }
                for k in 1..=part.value {
                    if part.value % k == 0 {
                        bump(&mut tables.h_div, k, part.value);
                    }
                }
            }
            if odd_class_defined && part_in_class(part, family, ClassFilter::OddClass) {
                bump(&mut tables.f_odd, part.value, freq);
                for j in 1..=freq {
                    bump(&mut tables.g_odd, j, 1);
                }
            }
            if distinct_class_defined && part_in_class(part, family, ClassFilter::DistinctClass) {
                bump(&mut tables.f_distinct, part.value, freq);
            }
            *merged.entry(part.value).or_insert(0) += freq;
            match part.kind {
                FactorKind::Repeatable => {
                    plain_seen.insert(part.value, true);
                }
                FactorKind::Distinct => {
                    overlined_seen.insert(part.value, true);
                }
            }
        }
        for (&value, &freq) in &merged {
            bump(&mut tables.f_bar, value, freq);
            for j in 1..=freq {
                bump(&mut tables.g_bar, j, 1);
            }
            bump(&mut tables.o_bar, value, 1);
            if freq >= 3 {
                bump(&mut tables.t_bar, value, 1);
            }
            if overlined_seen.get(&value).copied().unwrap_or(false)
                && !plain_seen.get(&value).copied().unwrap_or(false)
            {
                bump(&mut tables.o_overlined, value, 1);
            }
        }
    }
    Ok(tables)
}

/// Recompute one statistic by exhaustive enumeration.
///
/// Negative weights hold no partitions, so the value is zero. The merge
/// convention follows the statistic: colored-part granularity for the
/// class-restricted counts, value granularity for the overline counts.
pub fn oracle_stat(
    n: i64,
    spec: &FactorSpec,
    stat: OracleStat,
    k: u64,
    cap: u64,
) -> Result<BigInt> {
    if k == 0 {
        return Err(Error::ZeroK);
    }
    // validate the pairing up front, even for trivially-zero weights
    class_filter(stat, spec)?;
    if n < 0 {
        return Ok(BigInt::zero());
    }
    let tables = oracle_tables(n as u64, spec, cap)?;
    Ok(tables.get(stat, k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::Factor;

    fn count(n: u64, spec: &FactorSpec) -> usize {
        enumerate(n, spec).count()
    }

    #[test]
    fn weight_zero_has_exactly_the_empty_partition() {
        let spec = FactorSpec::uniform(1, 5);
        let all: Vec<_> = enumerate(0, &spec).collect();
        assert_eq!(all, vec![ColoredPartition::empty()]);
    }

    #[test]
    fn plain_partitions_of_four() {
        let spec = FactorSpec::uniform(1, 4);
        let strings: Vec<String> = enumerate(4, &spec)
            .map(|p| p.canonical_string(&spec))
            .collect();
        assert_eq!(strings, ["4", "3+1", "2+2", "2+1+1", "1+1+1+1"]);
    }

    #[test]
    fn overpartitions_of_four_number_fourteen() {
        let spec = FactorSpec::overpartition(1, 1, 4);
        assert_eq!(count(4, &spec), 14);
    }

    #[test]
    fn enumeration_counts_match_series_coefficients() {
        let specs = [
            FactorSpec::uniform(1, 10),
            FactorSpec::uniform(2, 10),
            FactorSpec::kcolors(10),
            FactorSpec::odd(2, 10),
            FactorSpec::distinct(2, 10),
            FactorSpec::overpartition(1, 1, 10),
            FactorSpec::odd_overlined(2, 1, 10),
        ];
        for spec in &specs {
            let series = spec.expand(10).unwrap();
            for n in 0..=10u64 {
                let counted = BigInt::from(count(n, spec));
                assert_eq!(
                    counted,
                    series.coefficient(n as i64).unwrap(),
                    "spec {} at n = {n}",
                    spec.label()
                );
            }
        }
    }

    #[test]
    fn no_duplicate_partitions() {
        let spec = FactorSpec::overpartition(2, 1, 8);
        let mut seen = std::collections::BTreeSet::new();
        for p in enumerate(8, &spec) {
            assert_eq!(p.recomputed_weight(), 8);
            assert!(seen.insert(p.to_json_line()), "duplicate {:?}", p);
        }
    }

    #[test]
    fn frequency_of_the_worked_example() {
        // 4+3+3+2+1+1+1+1
        let pi = ColoredPartition::from_entries([
            (ColoredPart::repeatable(4, 1), 1),
            (ColoredPart::repeatable(3, 1), 2),
            (ColoredPart::repeatable(2, 1), 1),
            (ColoredPart::repeatable(1, 1), 4),
        ]);
        assert_eq!(pi.weight(), 16);
        assert_eq!(pi.frequency(1), 4);
        assert_eq!(pi.frequency(2), 1);
        assert_eq!(pi.frequency(3), 2);
        assert_eq!(pi.frequency(4), 1);
        assert_eq!(pi.frequency(5), 0);
        assert_eq!(ColoredPartition::empty().frequency(3), 0);
    }

    #[test]
    fn frequency_merges_colors() {
        // 3_1+3_2+6_1+6_1+6_1+6_2 in two colors
        let pi = ColoredPartition::from_entries([
            (ColoredPart::repeatable(3, 1), 1),
            (ColoredPart::repeatable(3, 2), 1),
            (ColoredPart::repeatable(6, 1), 3),
            (ColoredPart::repeatable(6, 2), 1),
        ]);
        assert_eq!(pi.frequency(3), 2);
        assert_eq!(pi.frequency(6), 4);
    }

    #[test]
    fn repetition_counts_under_both_merges() {
        // overpartition 3+2+2+2~+1+1~
        let over = ColoredPartition::from_entries([
            (ColoredPart::repeatable(3, 1), 1),
            (ColoredPart::repeatable(2, 1), 2),
            (ColoredPart::distinct(2, 1), 1),
            (ColoredPart::repeatable(1, 1), 1),
            (ColoredPart::distinct(1, 1), 1),
        ]);
        assert_eq!(over.weight(), 11);
        assert_eq!(over.parts_repeated_at_least(3, MergeMode::ByValue), 1);
        assert_eq!(over.parts_repeated_at_least(2, MergeMode::ByValue), 2);
        assert_eq!(over.parts_repeated_at_least(1, MergeMode::ByValue), 3);
        assert_eq!(over.parts_repeated_at_least(4, MergeMode::ByValue), 0);

        // 2_1+2_1+2_2 in two colors
        let two_colors = ColoredPartition::from_entries([
            (ColoredPart::repeatable(2, 1), 2),
            (ColoredPart::repeatable(2, 2), 1),
        ]);
        assert_eq!(
            two_colors.parts_repeated_at_least(2, MergeMode::ByColoredPart),
            1
        );
        assert_eq!(two_colors.parts_repeated_at_least(3, MergeMode::ByValue), 1);
        // k = 1 by colored part counts the distinct colored parts
        assert_eq!(
            two_colors.parts_repeated_at_least(1, MergeMode::ByColoredPart),
            2
        );
    }

    #[test]
    fn divisible_sum_counts_each_colored_part_once() {
        let plain = ColoredPartition::from_entries([
            (ColoredPart::repeatable(3, 1), 2),
            (ColoredPart::repeatable(6, 1), 4),
        ]);
        assert_eq!(plain.sum_parts_divisible_by(3), 9);
        assert_eq!(plain.sum_parts_divisible_by(7), 0);

        let colored = ColoredPartition::from_entries([
            (ColoredPart::repeatable(3, 1), 1),
            (ColoredPart::repeatable(3, 2), 1),
            (ColoredPart::repeatable(6, 1), 3),
            (ColoredPart::repeatable(6, 2), 1),
        ]);
        assert_eq!(colored.sum_parts_divisible_by(3), 18);
    }

    #[test]
    fn oracle_point_values() {
        let uniform = FactorSpec::uniform(1, 5);
        assert_eq!(
            oracle_stat(5, &uniform, OracleStat::F, 1, DEFAULT_ORACLE_CAP).unwrap(),
            BigInt::from(12)
        );
        assert_eq!(
            oracle_stat(5, &uniform, OracleStat::G, 1, DEFAULT_ORACLE_CAP).unwrap(),
            BigInt::from(12)
        );
        let distinct = FactorSpec::distinct(1, 5);
        assert_eq!(
            oracle_stat(5, &distinct, OracleStat::FDistinct, 1, DEFAULT_ORACLE_CAP).unwrap(),
            BigInt::from(1)
        );
        assert_eq!(
            oracle_stat(-2, &uniform, OracleStat::F, 1, DEFAULT_ORACLE_CAP).unwrap(),
            BigInt::zero()
        );
    }

    #[test]
    fn oracle_refuses_past_the_cap() {
        let spec = FactorSpec::uniform(1, 30);
        let err = oracle_stat(25, &spec, OracleStat::F, 1, DEFAULT_ORACLE_CAP).unwrap_err();
        assert_eq!(err, Error::CapExceeded { n: 25, cap: 20 });
        // and the cap is overridable
        assert!(oracle_stat(25, &spec, OracleStat::F, 1, 25).is_ok());
    }

    #[test]
    fn oracle_refuses_mismatched_pairings() {
        let uniform = FactorSpec::uniform(1, 5);
        assert!(matches!(
            oracle_stat(4, &uniform, OracleStat::FOdd, 1, DEFAULT_ORACLE_CAP),
            Err(Error::InvalidPairing { .. })
        ));
        assert!(matches!(
            oracle_stat(4, &uniform, OracleStat::FDistinct, 1, DEFAULT_ORACLE_CAP),
            Err(Error::InvalidPairing { .. })
        ));
    }

    #[test]
    fn ordinary_class_respects_the_color_split() {
        // odd-overlined with r = 2, s = 1: colors 1..2 ordinary, color 3 overlined
        let spec = FactorSpec::odd_overlined(2, 1, 4);
        let tables = oracle_tables(2, &spec, DEFAULT_ORACLE_CAP).unwrap();
        // weight 2: 2_1, 2_2, and the six color multisets of 1+1 over 3 colors
        assert_eq!(tables.count, BigInt::from(8));
        // overlined class is color 3 only: four 1_3 parts across
        // 1_1+1_3, 1_2+1_3, 1_3+1_3; three partitions contain one
        assert_eq!(tables.get(OracleStat::FOdd, 1), BigInt::from(4));
        assert_eq!(tables.get(OracleStat::GOdd, 1), BigInt::from(3));
    }

    #[test]
    fn canonical_strings_and_json_lines() {
        let spec = FactorSpec::overpartition(1, 1, 4);
        let pi = ColoredPartition::from_entries([
            (ColoredPart::repeatable(2, 1), 1),
            (ColoredPart::distinct(2, 1), 1),
            (ColoredPart::repeatable(1, 1), 2),
        ]);
        assert_eq!(pi.canonical_string(&spec), "2+2~+1+1");
        assert_eq!(
            pi.to_json_line(),
            r#"[[2,1,"repeatable",1],[2,1,"distinct",1],[1,1,"repeatable",2]]"#
        );
        assert_eq!(ColoredPartition::empty().canonical_string(&spec), "-");
        assert_eq!(ColoredPartition::empty().to_json_line(), "[]");

        let two_color = FactorSpec::uniform(2, 6);
        let colored = ColoredPartition::from_entries([
            (ColoredPart::repeatable(6, 1), 1),
            (ColoredPart::repeatable(3, 2), 1),
        ]);
        assert_eq!(colored.canonical_string(&two_color), "6_1+3_2");
    }

    #[test]
    fn enumeration_streams_lazily_from_custom_factors() {
        let spec = FactorSpec::from_factors(
            vec![
                Factor::repeatable(2, 1).unwrap(),
                Factor::distinct(3, 2).unwrap(),
            ],
            "custom",
        )
        .unwrap();
        // weight 5: 3~c + 2 for c in {1, 2}
        let got: Vec<String> = enumerate(5, &spec)
            .map(|p| p.canonical_string(&spec))
            .collect();
        assert_eq!(got, ["3~1+2", "3~2+2"]);
    }
}
