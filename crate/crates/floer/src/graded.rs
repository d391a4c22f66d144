//! Graded modules over Z[U].
//!
//! A module is a finite multiset of summands of two kinds:
//!   - a tower with bottom degree d (U lowers degree by 2, one generator
//!     in each degree d, d+2, d+4, ...),
//!   - a cyclic piece Z[U]/U^len with bottom degree d (generators in
//!     degrees d, d+2, ..., d+2(len-1)).
//!
//! Degrees are exact rationals. A module carries a grading mode: in
//! relative mode only degree differences are meaningful and the multiset
//! is normalized so the minimal bottom degree is 0.

use crate::{domain_err, Result};
use num_rational::Rational64;
use num_traits::{Signed, Zero};

pub type Deg = Rational64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Absolute,
    Relative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    mode: Mode,
    towers: Vec<Deg>,
    cyclics: Vec<(Deg, u64)>,
}

pub fn deg_to_string(d: Deg) -> String {
    if d.denom() == &1 {
        format!("{}", d.numer())
    } else {
        format!("{}/{}", d.numer(), d.denom())
    }
}

pub fn deg_from_string(s: &str) -> Result<Deg> {
    let s = s.trim();
    let parse_int = |t: &str| -> Result<i64> {
        t.trim()
            .parse::<i64>()
            .map_err(|_| crate::Error::Domain(format!("bad rational '{}'", s)))
    };
    match s.split_once('/') {
        None => Ok(Rational64::from_integer(parse_int(s)?)),
        Some((n, d)) => {
            let den = parse_int(d)?;
            if den == 0 {
                return domain_err(format!("bad rational '{}'", s));
            }
            Ok(Rational64::new(parse_int(n)?, den))
        }
    }
}

impl GradedModule {
    pub fn empty(mode: Mode) -> Self {
        GradedModule { mode, towers: Vec::new(), cyclics: Vec::new() }
    }

    pub fn absolute() -> Self {
        Self::empty(Mode::Absolute)
    }

    pub fn relative() -> Self {
        Self::empty(Mode::Relative)
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_empty(&self) -> bool {
        self.towers.is_empty() && self.cyclics.is_empty()
    }

    pub fn towers(&self) -> &[Deg] {
        &self.towers
    }

    pub fn cyclics(&self) -> &[(Deg, u64)] {
        &self.cyclics
    }

    pub fn add_tower(&mut self, bottom: Deg) {
        self.towers.push(bottom);
        self.canonicalize();
    }

    pub fn add_cyclic(&mut self, bottom: Deg, len: u64) {
        if len == 0 {
            return;
        }
        self.cyclics.push((bottom, len));
        self.canonicalize();
    }

    fn min_bottom(&self) -> Option<Deg> {
        let t = self.towers.iter().copied().min();
        let c = self.cyclics.iter().map(|(d, _)| *d).min();
        match (t, c) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (Some(a), None) => Some(a),
            (None, Some(b)) => Some(b),
            (None, None) => None,
        }
    }

    fn canonicalize(&mut self) {
        if self.mode == Mode::Relative {
            if let Some(m) = self.min_bottom() {
                if !m.is_zero() {
                    for d in self.towers.iter_mut() {
                        *d -= m;
                    }
                    for (d, _) in self.cyclics.iter_mut() {
                        *d -= m;
                    }
                }
            }
        }
        self.towers.sort();
        self.cyclics.sort();
    }

    /// Direct sum. Absolute summands combine freely; an empty module is
    /// the unit for either mode. Two nonempty relative modules need an
    /// explicit offset, see `direct_sum_with_offset`.
    pub fn direct_sum(&self, other: &GradedModule) -> Result<GradedModule> {
        if other.is_empty() {
            return Ok(self.clone());
        }
        if self.is_empty() {
            return Ok(other.clone());
        }
        match (self.mode, other.mode) {
            (Mode::Absolute, Mode::Absolute) => {
                let mut out = self.clone();
                out.towers.extend_from_slice(&other.towers);
                out.cyclics.extend_from_slice(&other.cyclics);
                out.canonicalize();
                Ok(out)
            }
            (Mode::Relative, Mode::Relative) => domain_err(
                "direct sum of two relative modules needs an explicit offset",
            ),
            _ => domain_err("direct sum with mixed grading modes"),
        }
    }

    /// Direct sum of two relative modules, with `other` placed `offset`
    /// degrees above `self` (offsets are measured between the normalized
    /// bottoms). Result is relative.
    pub fn direct_sum_with_offset(
        &self,
        other: &GradedModule,
        offset: Deg,
    ) -> Result<GradedModule> {
        if self.mode != Mode::Relative || other.mode != Mode::Relative {
            return domain_err("direct_sum_with_offset expects two relative modules");
        }
        let mut out = self.clone();
        for d in &other.towers {
            out.towers.push(*d + offset);
        }
        for (d, l) in &other.cyclics {
            out.cyclics.push((*d + offset, *l));
        }
        out.canonicalize();
        Ok(out)
    }

    /// Shift all degrees up by `by`. On a relative module this is the
    /// identity (the normalization absorbs the shift).
    pub fn shift(&self, by: Deg) -> GradedModule {
        let mut out = self.clone();
        for d in out.towers.iter_mut() {
            *d += by;
        }
        for (d, _) in out.cyclics.iter_mut() {
            *d += by;
        }
        out.canonicalize();
        out
    }

    /// Direct sum of `k` copies.
    pub fn scale(&self, k: u64) -> GradedModule {
        let mut out = GradedModule::empty(self.mode);
        for _ in 0..k {
            out.towers.extend_from_slice(&self.towers);
            out.cyclics.extend_from_slice(&self.cyclics);
        }
        out.canonicalize();
        out
    }

    /// Rank of the degree-d piece. Absolute mode only.
    pub fn rank_in_degree(&self, d: Deg) -> Result<u64> {
        if self.mode != Mode::Absolute {
            return domain_err("rank_in_degree needs an absolute grading");
        }
        let mut r = 0u64;
        let hits = |bottom: Deg| -> Option<i64> {
            let step = (d - bottom) / Rational64::from_integer(2);
            if step.denom() == &1 && !step.is_negative() {
                Some(*step.numer())
            } else {
                None
            }
        };
        for b in &self.towers {
            if hits(*b).is_some() {
                r += 1;
            }
        }
        for (b, l) in &self.cyclics {
            if let Some(k) = hits(*b) {
                if (k as u64) < *l {
                    r += 1;
                }
            }
        }
        Ok(r)
    }

    /// Total rank of the U-torsion part (sum of cyclic lengths).
    pub fn total_finite_rank(&self) -> u64 {
        self.cyclics.iter().map(|(_, l)| l).sum()
    }

    /// Rank over F2 of the associated hat group: each tower contributes
    /// 1, each cyclic of any length contributes 2.
    pub fn hf_hat_rank(&self) -> u64 {
        self.towers.len() as u64 + 2 * self.cyclics.len() as u64
    }

    /// Text form: one `T <deg>` line per tower, one `Z <deg> <len>` line
    /// per cyclic, in canonical order; a single `0` for the empty module.
    pub fn to_text(&self) -> String {
        if self.is_empty() {
            return "0\n".to_string();
        }
        let mut out = String::new();
        for d in &self.towers {
            out.push_str(&format!("T {}\n", deg_to_string(*d)));
        }
        for (d, l) in &self.cyclics {
            out.push_str(&format!("Z {} {}\n", deg_to_string(*d), l));
        }
        out
    }

    pub fn from_text(mode: Mode, text: &str) -> Result<GradedModule> {
        let mut out = GradedModule::empty(mode);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line == "0" {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            match parts.as_slice() {
                ["T", d] => out.towers.push(deg_from_string(d)?),
                ["Z", d, l] => {
                    let len = l
                        .parse::<u64>()
                        .map_err(|_| crate::Error::Domain(format!("bad length '{}'", l)))?;
                    if len == 0 {
                        return domain_err("cyclic length must be positive");
                    }
                    out.cyclics.push((deg_from_string(d)?, len));
                }
                _ => return domain_err(format!("bad module line '{}'", line)),
            }
        }
        out.canonicalize();
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "mode": match self.mode { Mode::Absolute => "absolute", Mode::Relative => "relative" },
            "towers": self.towers.iter().map(|d| deg_to_string(*d)).collect::<Vec<_>>(),
            "cyclics": self.cyclics.iter()
                .map(|(d, l)| serde_json::json!([deg_to_string(*d), l]))
                .collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<GradedModule> {
        let bad = || crate::Error::Domain("bad module json".to_string());
        let mode = match v.get("mode").and_then(|m| m.as_str()).ok_or_else(bad)? {
            "absolute" => Mode::Absolute,
            "relative" => Mode::Relative,
            _ => return domain_err("bad module json"),
        };
        let mut out = GradedModule::empty(mode);
        for t in v.get("towers").and_then(|t| t.as_array()).ok_or_else(bad)? {
            out.towers.push(deg_from_string(t.as_str().ok_or_else(bad)?)?);
        }
        for c in v.get("cyclics").and_then(|c| c.as_array()).ok_or_else(bad)? {
            let pair = c.as_array().ok_or_else(bad)?;
            if pair.len() != 2 {
                return Err(bad());
            }
            let d = deg_from_string(pair[0].as_str().ok_or_else(bad)?)?;
            let l = pair[1].as_u64().ok_or_else(bad)?;
            if l == 0 {
                return domain_err("cyclic length must be positive");
            }
            out.cyclics.push((d, l));
        }
        out.canonicalize();
        Ok(out)
    }

    /// Forget absolute degrees, keeping only the relative grading.
    pub fn to_relative(&self) -> GradedModule {
        let mut out = self.clone();
        out.mode = Mode::Relative;
        out.canonicalize();
        out
    }
}

pub fn tower(mode: Mode, bottom: Deg) -> GradedModule {
    let mut m = GradedModule::empty(mode);
    m.add_tower(bottom);
    m
}

pub fn deg(n: i64) -> Deg {
    Rational64::from_integer(n)
}
