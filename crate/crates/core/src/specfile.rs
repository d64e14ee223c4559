//! Plain key-value measure specifications.
//!
//! ```text
//! # Plancherel-type symbol
//! eps2 = -1
//! eps1 = 2
//! modes = 1=1, 2=1/3
//! D = 10
//! radius = 0.5
//! threshold = 1e-6
//! ```
//!
//! `modes` sets equal in and out modes. Non-real symbols use `in_modes` and
//! `out_modes` instead. Unknown or repeated keys are errors.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::fock::ModeAssignment;
use crate::measure::{JackMeasureSpec, DEFAULT_THRESHOLD};
use crate::partition::EpsilonPair;
use crate::rational::{fmt_q, parse_q, Q};
use crate::toeplitz::LaurentSymbol;

const KEYS: [&str; 8] = ["eps2", "eps1", "modes", "in_modes", "out_modes", "D", "radius", "threshold"];

#[derive(Clone, Debug, PartialEq)]
pub struct SpecFile {
    pub eps: EpsilonPair,
    pub modes: ModeAssignment,
    /// `None` means "smallest `D` meeting the threshold".
    pub truncation: Option<usize>,
    pub radius: Option<f64>,
    pub threshold: f64,
}

fn parse_modes(s: &str) -> Result<BTreeMap<usize, Q>> {
    let mut out = BTreeMap::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let (k, v) = item.split_once('=').ok_or_else(|| Error::Parse(format!("mode entry {item:?} is not k=value")))?;
        let k: usize = k.trim().parse().map_err(|_| Error::Parse(format!("bad mode index {k:?}")))?;
        if k == 0 {
            return Err(Error::Parse("mode index must be >= 1".into()));
        }
        if out.insert(k, parse_q(v)?).is_some() {
            return Err(Error::Parse(format!("mode {k} given twice")));
        }
    }
    Ok(out)
}

fn fmt_modes(m: &BTreeMap<usize, Q>) -> String {
    m.iter().map(|(k, v)| format!("{k}={}", fmt_q(v))).collect::<Vec<_>>().join(", ")
}

fn parse_f64(key: &str, v: &str) -> Result<f64> {
    v.parse().map_err(|_| Error::Parse(format!("{key}: not a number: {v:?}")))
}

impl SpecFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<&str, &str> = BTreeMap::new();
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("line {}: expected key = value", n + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(Error::Parse(format!("line {}: unknown key {k:?}", n + 1)));
            }
            if kv.insert(k, v).is_some() {
                return Err(Error::Parse(format!("line {}: duplicate key {k:?}", n + 1)));
            }
        }
        let need = |k: &str| kv.get(k).copied().ok_or_else(|| Error::Parse(format!("missing key {k:?}")));
        let eps = EpsilonPair::new(parse_q(need("eps2")?)?, parse_q(need("eps1")?)?)?;
        let modes = match (kv.get("modes"), kv.get("in_modes"), kv.get("out_modes")) {
            (Some(m), None, None) => ModeAssignment::real(parse_modes(m)?),
            (None, i, o) => {
                let strip = |m: BTreeMap<usize, Q>| m.into_iter().filter(|(_, v)| !num_traits::Zero::is_zero(v)).collect();
                ModeAssignment {
                    in_modes: strip(parse_modes(i.copied().unwrap_or(""))?),
                    out_modes: strip(parse_modes(o.copied().unwrap_or(""))?),
                }
            }
            _ => return Err(Error::Parse("use either modes or in_modes/out_modes".into())),
        };
        let truncation = kv
            .get("D")
            .map(|v| v.parse::<usize>().map_err(|_| Error::Parse(format!("D: not a non-negative integer: {v:?}"))))
            .transpose()?;
        let radius = kv.get("radius").map(|v| parse_f64("radius", v)).transpose()?;
        if let Some(r) = radius {
            if !(r > 0.0 && r < 1.0) {
                return Err(Error::Parse(format!("radius must lie in (0,1), got {r}")));
            }
        }
        let threshold = kv.get("threshold").map(|v| parse_f64("threshold", v)).transpose()?.unwrap_or(DEFAULT_THRESHOLD);
        if !(threshold > 0.0) {
            return Err(Error::Parse("threshold must be positive".into()));
        }
        Ok(SpecFile { eps, modes, truncation, radius, threshold })
    }

    /// Measure spec; a missing `D` is replaced by the smallest adequate one.
    pub fn measure_spec(&self) -> Result<JackMeasureSpec> {
        let mut spec = JackMeasureSpec::new(self.eps.clone(), self.modes.clone(), 0)?;
        spec.radius = self.radius;
        spec.threshold = self.threshold;
        spec.truncation = match self.truncation {
            Some(d) => d,
            None => spec.required_truncation(),
        };
        Ok(spec)
    }

    pub fn symbol(&self) -> LaurentSymbol {
        let s = LaurentSymbol::from_modes(&self.modes);
        match self.radius {
            Some(r) => s.with_radius(r),
            None => s,
        }
    }
}

impl fmt::Display for SpecFile {
    /// Canonical form; parses back to the same value.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "eps2 = {}", fmt_q(self.eps.eps2()))?;
        writeln!(f, "eps1 = {}", fmt_q(self.eps.eps1()))?;
        if self.modes.is_real() {
            writeln!(f, "modes = {}", fmt_modes(&self.modes.in_modes))?;
        } else {
            writeln!(f, "in_modes = {}", fmt_modes(&self.modes.in_modes))?;
            writeln!(f, "out_modes = {}", fmt_modes(&self.modes.out_modes))?;
        }
        if let Some(d) = self.truncation {
            writeln!(f, "D = {d}")?;
        }
        if let Some(r) = self.radius {
            writeln!(f, "radius = {r:e}")?;
        }
        writeln!(f, "threshold = {:e}", self.threshold)
    }
}
