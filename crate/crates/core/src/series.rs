//! Expansion of generating products into truncated big-integer coefficient
//! series.
//!
//! A [`FactorSpec`] describes a finite product of factors of the form
//! `1/(1-q^k)^b` (repeatable parts in `b` colors) and `(1+q^k)^b` (distinct
//! parts in `b` colors). [`FactorSpec::expand`] turns it into a
//! [`CoeffSeries`] holding the counts `h(0..=N)` of the colored partitions
//! the product generates.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Which kind of generating factor a part came from.
///
/// `Repeatable` parts may occur with any frequency; `Distinct` parts occur
/// at most once per color. An overlined part of an overpartition is exactly
/// a `Distinct`-kind part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorKind {
    Repeatable,
    Distinct,
}

impl FactorKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            FactorKind::Repeatable => "repeatable",
            FactorKind::Distinct => "distinct",
        }
    }
}

impl fmt::Display for FactorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One factor of a generating product: the part size, its color count and
/// whether repetition is allowed.
///
/// A multiplicity of zero is the identity factor; expansion skips it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub part: u64,
    pub multiplicity: u64,
    pub kind: FactorKind,
}

impl Factor {
    pub fn new(part: u64, multiplicity: u64, kind: FactorKind) -> Result<Self> {
        if part == 0 {
            return Err(Error::ZeroFactorPart);
        }
        Ok(Factor {
            part,
            multiplicity,
            kind,
        })
    }

    pub fn repeatable(part: u64, multiplicity: u64) -> Result<Self> {
        Factor::new(part, multiplicity, FactorKind::Repeatable)
    }

    pub fn distinct(part: u64, multiplicity: u64) -> Result<Self> {
        Factor::new(part, multiplicity, FactorKind::Distinct)
    }
}

/// The built-in families of generating products.
///
/// The family is kept alongside the factor list so that downstream
/// statistics can recover the color split (ordinary colors vs. the extra
/// colors of a combined product) without re-parsing labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpecFamily {
    /// Every part in `b` colors: `prod 1/(1-q^k)^b`.
    Uniform { b: u64 },
    /// Part `k` in `k` colors: `prod 1/(1-q^k)^k` (plane partition numbers).
    KColors,
    /// Odd parts in `b` colors: `prod 1/(1-q^(2k-1))^b`.
    Odd { b: u64 },
    /// Distinct parts in `b` colors: `prod (1+q^k)^b`.
    Distinct { b: u64 },
    /// Ordinary parts in `r` colors convolved with distinct parts in `s`
    /// colors: `prod (1+q^k)^s / (1-q^k)^r`.
    Overpartition { r: u64, s: u64 },
    /// Ordinary parts in `r` colors with `s` extra colors on odd parts:
    /// `prod 1/((1-q^k)^r (1-q^(2k-1))^s)`. Equinumerous to `Overpartition`
    /// with the same `(r, s)`.
    OddOverlined { r: u64, s: u64 },
    /// Hand-assembled factor list.
    Custom,
}

/// A finite description of a generating product: a canonical factor list
/// plus its family and label.
///
/// Canonical form: factors sorted by `(part, kind)`, at most one factor per
/// `(part, kind)` pair (multiplicities merged on construction), zero
/// multiplicities dropped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorSpec {
    factors: Vec<Factor>,
    family: SpecFamily,
    built_for: u64,
    label: String,
}

impl FactorSpec {
    fn assemble(raw: Vec<Factor>, family: SpecFamily, built_for: u64, label: String) -> FactorSpec {
        let mut factors = raw;
        factors.sort_by_key(|f| (f.part, f.kind));
        let mut merged: Vec<Factor> = Vec::with_capacity(factors.len());
        for f in factors {
            if f.multiplicity == 0 {
                continue;
            }
            match merged.last_mut() {
                Some(last) if last.part == f.part && last.kind == f.kind => {
                    last.multiplicity += f.multiplicity;
                }
                _ => merged.push(f),
            }
        }
        FactorSpec {
            factors: merged,
            family,
            built_for,
            label,
        }
    }

    /// A hand-assembled product. Factors sharing `(part, kind)` are merged.
    pub fn from_factors(factors: Vec<Factor>, label: impl Into<String>) -> Result<FactorSpec> {
        if factors.iter().any(|f| f.part == 0) {
            return Err(Error::ZeroFactorPart);
        }
        let built_for = factors.iter().map(|f| f.part).max().unwrap_or(0);
        Ok(FactorSpec::assemble(
            factors,
            SpecFamily::Custom,
            built_for,
            label.into(),
        ))
    }

    /// `b`-colored partitions with parts up to `max_part`.
    pub fn uniform(b: u64, max_part: u64) -> FactorSpec {
        let raw = (1..=max_part)
            .map(|k| Factor {
                part: k,
                multiplicity: b,
                kind: FactorKind::Repeatable,
            })
            .collect();
        FactorSpec::assemble(
            raw,
            SpecFamily::Uniform { b },
            max_part,
            format!("uniform:{b}"),
        )
    }

    /// Partitions where part `k` comes in `k` colors (plane partition counts).
    pub fn kcolors(max_part: u64) -> FactorSpec {
        let raw = (1..=max_part)
            .map(|k| Factor {
                part: k,
                multiplicity: k,
                kind: FactorKind::Repeatable,
            })
            .collect();
        FactorSpec::assemble(raw, SpecFamily::KColors, max_part, "kcolors".to_string())
    }

    /// `b`-colored partitions with all parts odd.
    pub fn odd(b: u64, max_part: u64) -> FactorSpec {
        let raw = (1..=max_part)
            .filter(|k| k % 2 == 1)
            .map(|k| Factor {
                part: k,
                multiplicity: b,
                kind: FactorKind::Repeatable,
            })
            .collect();
        FactorSpec::assemble(raw, SpecFamily::Odd { b }, max_part, format!("odd:{b}"))
    }

    /// `b`-colored partitions with distinct parts (per color).
    pub fn distinct(b: u64, max_part: u64) -> FactorSpec {
        let raw = (1..=max_part)
            .map(|k| Factor {
                part: k,
                multiplicity: b,
                kind: FactorKind::Distinct,
            })
            .collect();
        FactorSpec::assemble(
            raw,
            SpecFamily::Distinct { b },
            max_part,
            format!("distinct:{b}"),
        )
    }

    /// Overpartitions with `r`-colored ordinary parts and `s`-colored
    /// overlined (distinct) parts.
    pub fn overpartition(r: u64, s: u64, max_part: u64) -> FactorSpec {
        let mut raw: Vec<Factor> = Vec::new();
        for k in 1..=max_part {
            raw.push(Factor {
                part: k,
                multiplicity: r,
                kind: FactorKind::Repeatable,
            });
            raw.push(Factor {
                part: k,
                multiplicity: s,
                kind: FactorKind::Distinct,
            });
        }
        FactorSpec::assemble(
            raw,
            SpecFamily::Overpartition { r, s },
            max_part,
            format!("overpartition:{r},{s}"),
        )
    }

    /// Odd-overlined partitions: ordinary parts in `r` colors plus `s`
    /// extra colors on the odd parts. Colors `1..=r` of any part are the
    /// ordinary class; colors `r+1..=r+s` of odd parts are the overlined
    /// class.
    pub fn odd_overlined(r: u64, s: u64, max_part: u64) -> FactorSpec {
        let mut raw: Vec<Factor> = Vec::new();
        for k in 1..=max_part {
            let extra = if k % 2 == 1 { s } else { 0 };
            raw.push(Factor {
                part: k,
                multiplicity: r + extra,
                kind: FactorKind::Repeatable,
            });
        }
        FactorSpec::assemble(
            raw,
            SpecFamily::OddOverlined { r, s },
            max_part,
            format!("oddoverlined:{r},{s}"),
        )
    }

    /// Parse a flat selector of the form `name[:p1[,p2]]`.
    ///
    /// Known selectors: `uniform:b`, `kcolors`, `odd:b`, `distinct:b`,
    /// `overpartition:r,s`, `oddoverlined:r,s`.
    pub fn parse(selector: &str, max_part: u64) -> Result<FactorSpec> {
        let bad = |reason: &str| Error::BadSelector {
            input: selector.to_string(),
            reason: reason.to_string(),
        };
        let (name, args) = match selector.split_once(':') {
            Some((n, a)) => (n, Some(a)),
            None => (selector, None),
        };
        let params: Vec<u64> = match args {
            None => Vec::new(),
            Some(a) => a
                .split(',')
                .map(|p| p.trim().parse::<u64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|_| bad("parameters must be non-negative integers"))?,
        };
        match (name, params.as_slice()) {
            ("uniform", [b]) => Ok(FactorSpec::uniform(*b, max_part)),
            ("uniform", _) => Err(bad("expected uniform:b")),
            ("kcolors", []) => Ok(FactorSpec::kcolors(max_part)),
            ("kcolors", _) => Err(bad("kcolors takes no parameters")),
            ("odd", [b]) => Ok(FactorSpec::odd(*b, max_part)),
            ("odd", _) => Err(bad("expected odd:b")),
            ("distinct", [b]) => Ok(FactorSpec::distinct(*b, max_part)),
            ("distinct", _) => Err(bad("expected distinct:b")),
            ("overpartition", [r, s]) => Ok(FactorSpec::overpartition(*r, *s, max_part)),
            ("overpartition", _) => Err(bad("expected overpartition:r,s")),
            ("oddoverlined", [r, s]) => Ok(FactorSpec::odd_overlined(*r, *s, max_part)),
            ("oddoverlined", _) => Err(bad("expected oddoverlined:r,s")),
            _ => Err(bad(
                "known selectors: uniform:b, kcolors, odd:b, distinct:b, \
                 overpartition:r,s, oddoverlined:r,s",
            )),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn family(&self) -> SpecFamily {
        self.family
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    /// Largest part the spec was built to cover.
    pub fn built_for(&self) -> u64 {
        self.built_for
    }

    /// Total repeatable color count for a given part (0 if absent).
    pub fn repeatable_multiplicity(&self, part: u64) -> u64 {
        self.factors
            .iter()
            .filter(|f| f.part == part && f.kind == FactorKind::Repeatable)
            .map(|f| f.multiplicity)
            .sum()
    }

    /// Color count of the factor a part came from, if any.
    pub fn multiplicity_of(&self, part: u64, kind: FactorKind) -> Option<u64> {
        self.factors
            .iter()
            .find(|f| f.part == part && f.kind == kind)
            .map(|f| f.multiplicity)
    }

    /// Expand the product into the coefficient series `h(0..=n)`.
    ///
    /// Repeatable factors apply the prefix update `c[i] += c[i-part]` once
    /// per color; distinct factors multiply in the binomial expansion of
    /// `(1+q^part)^multiplicity`.
    ///
    /// Built-in families refuse to expand past the part range they were
    /// constructed for: the result would silently miss partitions using
    /// larger parts.
    pub fn expand(&self, n: u64) -> Result<CoeffSeries> {
        if self.family != SpecFamily::Custom && n > self.built_for {
            return Err(Error::ExpansionBeyondSpec {
                label: self.label.clone(),
                built_for: self.built_for,
                requested: n,
            });
        }
        let len = n as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        coeffs[0] = BigInt::one();
        for factor in &self.factors {
            let part = factor.part as usize;
            if part > n as usize || factor.multiplicity == 0 {
                continue;
            }
            match factor.kind {
                FactorKind::Repeatable => {
                    for _ in 0..factor.multiplicity {
                        for i in part..len {
                            let (lo, hi) = coeffs.split_at_mut(i);
                            hi[0] += &lo[i - part];
                        }
                    }
                }
                FactorKind::Distinct => {
                    let binoms = binomial_row(factor.multiplicity);
                    for i in (part..len).rev() {
                        let mut acc = BigInt::zero();
                        for (j, binom) in binoms.iter().enumerate().skip(1) {
                            let offset = j * part;
                            if offset > i {
                                break;
                            }
                            acc += binom * &coeffs[i - offset];
                        }
                        coeffs[i] += acc;
                    }
                }
            }
        }
        Ok(CoeffSeries {
            truncation: n,
            coeffs,
            label: self.label.clone(),
            spec: Some(self.clone()),
        })
    }
}

impl fmt::Display for FactorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Row of binomial coefficients `C(m, 0..=m)`.
fn binomial_row(m: u64) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(m as usize + 1);
    row.push(BigInt::one());
    for j in 1..=m {
        let next = &row[j as usize - 1] * BigInt::from(m - j + 1) / BigInt::from(j);
        row.push(next);
    }
    row
}

/// A truncated coefficient sequence `c_0..=c_N` with explicit truncation.
///
/// Reading past the truncation is an error, never a silent zero; reading a
/// negative index yields zero, matching the convention `h(m) = 0` for
/// `m < 0`.
#[derive(Debug, Clone)]
pub struct CoeffSeries {
    truncation: u64,
    coeffs: Vec<BigInt>,
    label: String,
    spec: Option<FactorSpec>,
}

#[derive(Serialize)]
struct SeriesExport<'a> {
    label: &'a str,
    truncation: u64,
    coeffs: Vec<String>,
}

impl CoeffSeries {
    /// The multiplicative identity `1 + 0q + 0q^2 + ...` at a truncation.
    pub fn identity(truncation: u64) -> CoeffSeries {
        let mut coeffs = vec![BigInt::zero(); truncation as usize + 1];
        coeffs[0] = BigInt::one();
        CoeffSeries {
            truncation,
            coeffs,
            label: "identity".to_string(),
            spec: None,
        }
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&FactorSpec> {
        self.spec.as_ref()
    }

    /// Coefficient at `n`: zero for `n < 0`, an error past the truncation.
    pub fn coefficient(&self, n: i64) -> Result<BigInt> {
        if n < 0 {
            return Ok(BigInt::zero());
        }
        let idx = n as u64;
        if idx > self.truncation {
            return Err(Error::TruncationExceeded {
                index: n,
                truncation: self.truncation,
            });
        }
        Ok(self.coeffs[idx as usize].clone())
    }

    /// Cauchy product, truncated to the shorter of the two series.
    pub fn convolve(&self, other: &CoeffSeries) -> CoeffSeries {
        let truncation = self.truncation.min(other.truncation);
        let len = truncation as usize + 1;
        let mut coeffs = vec![BigInt::zero(); len];
        for (i, a) in self.coeffs.iter().take(len).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(len - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        CoeffSeries {
            truncation,
            coeffs,
            label: format!("{}*{}", self.label, other.label),
            spec: None,
        }
    }

    /// True iff the truncations match and every coefficient agrees.
    pub fn coeffs_equal(&self, other: &CoeffSeries) -> bool {
        self.truncation == other.truncation && self.coeffs == other.coeffs
    }

    /// JSON export with coefficients as decimal strings, never floats.
    pub fn to_json(&self) -> String {
        let export = SeriesExport {
            label: &self.label,
            truncation: self.truncation,
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        };
        serde_json::to_string(&export).expect("series export cannot fail")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nums(xs: &[u64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn uniform_1_is_the_partition_numbers() {
        let series = FactorSpec::uniform(1, 10).expand(10).unwrap();
        assert_eq!(
            series.coeffs(),
            nums(&[1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]).as_slice()
        );
    }

    #[test]
    fn empty_product_is_one() {
        let spec = FactorSpec::from_factors(vec![], "empty").unwrap();
        let series = spec.expand(3).unwrap();
        assert_eq!(series.coeffs(), nums(&[1, 0, 0, 0]).as_slice());
    }

    #[test]
    fn kcolors_matches_plane_partition_counts() {
        let series = FactorSpec::kcolors(6).expand(6).unwrap();
        assert_eq!(series.coeffs(), nums(&[1, 1, 3, 6, 13, 24, 48]).as_slice());
    }

    #[test]
    fn uniform_2_is_the_square_of_the_partition_series() {
        // Oracle: convolve the 1-color series with itself by hand.
        let p = nums(&[1, 1, 2, 3, 5, 7]);
        let mut square = vec![BigInt::zero(); 6];
        for i in 0..6 {
            for j in 0..=i {
                square[i] += &p[j] * &p[i - j];
            }
        }
        let series = FactorSpec::uniform(2, 5).expand(5).unwrap();
        assert_eq!(series.coeffs(), square.as_slice());
        assert_eq!(square, nums(&[1, 2, 5, 10, 20, 36]));
    }

    #[test]
    fn coefficient_conventions() {
        let series = FactorSpec::uniform(1, 10).expand(10).unwrap();
        assert_eq!(series.coefficient(-3).unwrap(), BigInt::zero());
        assert_eq!(series.coefficient(0).unwrap(), BigInt::one());
        assert_eq!(series.coefficient(5).unwrap(), BigInt::from(7));
        assert_eq!(
            series.coefficient(11),
            Err(Error::TruncationExceeded {
                index: 11,
                truncation: 10
            })
        );
    }

    #[test]
    fn convolution_of_ordinary_and_distinct_counts_overpartitions() {
        let p = FactorSpec::uniform(1, 4).expand(4).unwrap();
        let d = FactorSpec::distinct(1, 4).expand(4).unwrap();
        let conv = p.convolve(&d);
        assert_eq!(conv.coeffs(), nums(&[1, 2, 4, 8, 14]).as_slice());
    }

    #[test]
    fn convolution_identity() {
        let a = FactorSpec::overpartition(2, 1, 9).expand(9).unwrap();
        let conv = a.convolve(&CoeffSeries::identity(9));
        assert!(conv.coeffs_equal(&a));
    }

    #[test]
    fn distinct_squared_at_two() {
        let d = FactorSpec::distinct(1, 2).expand(2).unwrap();
        let conv = d.convolve(&d);
        // pairs (empty, 2), (1, 1), (2, empty)
        assert_eq!(conv.coefficient(2).unwrap(), BigInt::from(3));
    }

    #[test]
    fn euler_odd_equals_distinct_for_small_truncations() {
        for b in 1..=2 {
            let odd = FactorSpec::odd(b, 50).expand(50).unwrap();
            let distinct = FactorSpec::distinct(b, 50).expand(50).unwrap();
            assert!(odd.coeffs_equal(&distinct), "b = {b}");
        }
        let uniform = FactorSpec::uniform(1, 3).expand(3).unwrap();
        let distinct = FactorSpec::distinct(1, 3).expand(3).unwrap();
        assert!(!uniform.coeffs_equal(&distinct));
    }

    #[test]
    fn overpartition_series_equals_the_convolution() {
        let over = FactorSpec::overpartition(1, 1, 20).expand(20).unwrap();
        let conv = FactorSpec::uniform(1, 20)
            .expand(20)
            .unwrap()
            .convolve(&FactorSpec::distinct(1, 20).expand(20).unwrap());
        assert_eq!(over.coeffs(), conv.coeffs());
    }

    #[test]
    fn factors_merge_on_construction() {
        let spec = FactorSpec::from_factors(
            vec![
                Factor::repeatable(2, 1).unwrap(),
                Factor::distinct(2, 3).unwrap(),
                Factor::repeatable(2, 2).unwrap(),
                Factor::repeatable(5, 0).unwrap(),
            ],
            "merged",
        )
        .unwrap();
        assert_eq!(
            spec.factors(),
            &[
                Factor::repeatable(2, 3).unwrap(),
                Factor::distinct(2, 3).unwrap(),
            ]
        );
        assert_eq!(spec.repeatable_multiplicity(2), 3);
        assert_eq!(spec.multiplicity_of(2, FactorKind::Distinct), Some(3));
    }

    #[test]
    fn odd_overlined_merges_the_extra_odd_colors() {
        let spec = FactorSpec::odd_overlined(2, 1, 4);
        assert_eq!(spec.repeatable_multiplicity(1), 3);
        assert_eq!(spec.repeatable_multiplicity(2), 2);
        assert_eq!(spec.repeatable_multiplicity(3), 3);
        assert_eq!(spec.repeatable_multiplicity(4), 2);
    }

    #[test]
    fn odd_overlined_series_matches_overpartition_series() {
        let over = FactorSpec::overpartition(2, 1, 30).expand(30).unwrap();
        let odd = FactorSpec::odd_overlined(2, 1, 30).expand(30).unwrap();
        assert_eq!(over.coeffs(), odd.coeffs());
    }

    #[test]
    fn expansion_past_built_range_is_refused() {
        let spec = FactorSpec::uniform(1, 10);
        let err = spec.expand(11).unwrap_err();
        assert!(matches!(err, Error::ExpansionBeyondSpec { .. }));
        // a custom finite product expands to any truncation
        let custom = FactorSpec::from_factors(vec![Factor::distinct(1, 2).unwrap()], "c").unwrap();
        let series = custom.expand(5).unwrap();
        assert_eq!(series.coeffs(), nums(&[1, 2, 1, 0, 0, 0]).as_slice());
    }

    #[test]
    fn zero_part_rejected() {
        assert_eq!(Factor::repeatable(0, 1), Err(Error::ZeroFactorPart));
    }

    #[test]
    fn selector_parsing_round_trips_labels() {
        for sel in [
            "uniform:2",
            "kcolors",
            "odd:1",
            "distinct:3",
            "overpartition:1,1",
            "oddoverlined:2,1",
        ] {
            let spec = FactorSpec::parse(sel, 10).unwrap();
            assert_eq!(spec.label(), sel);
        }
        assert!(FactorSpec::parse("mystery:1", 10).is_err());
        assert!(FactorSpec::parse("uniform", 10).is_err());
        assert!(FactorSpec::parse("overpartition:1", 10).is_err());
        assert!(FactorSpec::parse("uniform:-1", 10).is_err());
    }

    #[test]
    fn json_export_uses_decimal_strings() {
        let series = FactorSpec::uniform(1, 3).expand(3).unwrap();
        assert_eq!(
            series.to_json(),
            r#"{"label":"uniform:1","truncation":3,"coeffs":["1","1","2","3"]}"#
        );
    }
}
