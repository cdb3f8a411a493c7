//! Parameter sweeps: a TOML spec selects a family and a range (interval
//! or explicit list) for each of its parameters; points are enumerated
//! in lexicographic order over the family's canonical axis order,
//! evaluated in parallel, and re-assembled in order so output is
//! deterministic regardless of worker scheduling.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Deserialize;

use slopekit_core::lab::{invariants, FamilyKind, FamilyParams, InvariantsReport};
use slopekit_core::{Error, Result};

use crate::render::params_from_map;

/// Hard default on the number of points one sweep may evaluate.
pub const DEFAULT_MAX_POINTS: u64 = 1_000_000;

/// One parameter's range: an explicit list, or an inclusive interval.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RangeSpec {
    List(Vec<u64>),
    Interval { min: u64, max: u64 },
}

impl RangeSpec {
    /// Expand to the concrete values, in the order given (lists) or
    /// ascending (intervals). An interval with `min > max` is empty.
    pub fn values(&self) -> Vec<u64> {
        match self {
            RangeSpec::List(v) => v.clone(),
            RangeSpec::Interval { min, max } => {
                if min > max {
                    Vec::new()
                } else {
                    (*min..=*max).collect()
                }
            }
        }
    }
}

fn default_max_points() -> u64 {
    DEFAULT_MAX_POINTS
}

/// Deserialized form of a sweep spec file.
///
/// ```toml
/// family = "kobayashi12"
/// max_points = 1000        # optional; defaults to 1000000
///
/// [ranges]
/// g = [0, 1]
/// e = { min = 3, max = 5 }
/// ```
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub family: String,
    #[serde(default = "default_max_points")]
    pub max_points: u64,
    pub ranges: BTreeMap<String, RangeSpec>,
}

impl SweepSpec {
    pub fn parse(text: &str) -> Result<SweepSpec> {
        toml::from_str(text).map_err(|e| Error::Parameter(format!("sweep spec: {e}")))
    }

    pub fn kind(&self) -> Result<FamilyKind> {
        FamilyKind::parse(&self.family)
            .ok_or_else(|| Error::Parameter(format!("unknown family {:?}", self.family)))
    }

    /// The family's parameter axes in canonical order, each with its
    /// expanded value list. Every axis must be given; unknown keys are
    /// rejected.
    pub fn axes(&self) -> Result<Vec<(&'static str, Vec<u64>)>> {
        let kind = self.kind()?;
        let names: &[&'static str] = match kind {
            FamilyKind::AbelianBase => &["n", "g", "chi_a", "deg_db"],
            FamilyKind::P1Base => &["g", "deg_da", "deg_db"],
            FamilyKind::Kobayashi12 => &["g", "e"],
            FamilyKind::Surf23 => &["g", "deg_d2"],
        };
        for key in self.ranges.keys() {
            if !names.contains(&key.as_str()) {
                return Err(Error::Parameter(format!(
                    "range key {key:?} does not apply to family {}",
                    kind.name()
                )));
            }
        }
        names
            .iter()
            .map(|&name| {
                let range = self.ranges.get(name).ok_or_else(|| {
                    Error::Parameter(format!("family {} needs a range for {name:?}", kind.name()))
                })?;
                Ok((name, range.values()))
            })
            .collect()
    }

    /// Number of points the sweep would evaluate.
    pub fn point_count(&self) -> Result<u128> {
        Ok(self.axes()?.iter().map(|(_, v)| v.len() as u128).product())
    }

    /// Enumerate every parameter point in lexicographic order over the
    /// canonical axes (last axis varies fastest), enforcing the cap
    /// before expanding.
    pub fn points(&self) -> Result<Vec<FamilyParams>> {
        let axes = self.axes()?;
        let count = self.point_count()?;
        if count > u128::from(self.max_points) {
            return Err(Error::Capacity {
                needed: count.min(usize::MAX as u128) as usize,
                cap: self.max_points as usize,
            });
        }
        if count == 0 {
            return Ok(Vec::new());
        }
        let mut points = Vec::with_capacity(count as usize);
        let mut index = vec![0usize; axes.len()];
        loop {
            let map: BTreeMap<String, u64> = axes
                .iter()
                .zip(&index)
                .map(|((name, values), &i)| (name.to_string(), values[i]))
                .collect();
            let params = params_from_map(&self.family, &map)?;
            // Validate eagerly and in order, so a range containing an
            // out-of-domain value fails deterministically at its first
            // offending point rather than at a scheduler-chosen one.
            params.validate()?;
            points.push(params);
            // Odometer increment: last axis fastest.
            let mut axis = axes.len();
            loop {
                if axis == 0 {
                    return Ok(points);
                }
                axis -= 1;
                index[axis] += 1;
                if index[axis] < axes[axis].1.len() {
                    break;
                }
                index[axis] = 0;
            }
        }
    }
}

/// A fully evaluated sweep, rows in deterministic lexicographic order.
#[derive(Debug, Clone)]
pub struct SweepOutcome {
    pub family: FamilyKind,
    pub reports: Vec<InvariantsReport>,
}

/// Evaluate every point of the spec, fanning out across worker threads
/// but collecting in input order.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepOutcome> {
    let family = spec.kind()?;
    let points = spec.points()?;
    let reports = points
        .par_iter()
        .map(invariants)
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepOutcome { family, reports })
}
