//! Obstruction screens for cosmetic surgery pairs p/q vs p/q'.
//!
//! Each screen can only exclude a pair; a pair that survives every
//! screen is reported as not excluded, which is not a claim that the
//! surgeries are homeomorphic.

use crate::alexander::{genus_from_profile, Profile};
use crate::surgery::{hf_hat_rank_formula, is_lspace_surgery, Slope};
use crate::{domain_err, Result};
use num_integer::Integer;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    ExcludedByRank,
    ExcludedBySign,
    ExcludedByGenusOne,
    ExcludedByP3,
    ExcludedByLinkingForm,
    NotExcluded,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Verdict::ExcludedByRank => "excluded-by-rank",
            Verdict::ExcludedBySign => "excluded-by-sign",
            Verdict::ExcludedByGenusOne => "excluded-by-genus-one",
            Verdict::ExcludedByP3 => "excluded-by-p3",
            Verdict::ExcludedByLinkingForm => "excluded-by-linking-form",
            Verdict::NotExcluded => "not-excluded",
        };
        write!(f, "{}", s)
    }
}

#[derive(Debug, Clone)]
pub struct PairResult {
    pub q: i64,
    pub q2: i64,
    pub verdict: Verdict,
    pub note: Option<String>,
}

/// Screens, in order: total hat rank, same-sign L-space requirement,
/// the genus one specialization, the blanket |p| = 3 exclusion for
/// nontrivial knots, and the Z/3 linking form.
pub fn screen_pair(
    prof: &Profile,
    p: i64,
    q: i64,
    q2: i64,
    oriented: bool,
) -> Result<PairResult> {
    if q == q2 {
        return domain_err("a cosmetic pair needs two distinct denominators");
    }
    let s1 = Slope::new(p, q)?;
    let s2 = Slope::new(p, q2)?;
    let mut note = None;

    let r1 = hf_hat_rank_formula(prof, s1);
    let r2 = hf_hat_rank_formula(prof, s2);
    if r1 != r2 {
        return Ok(PairResult {
            q,
            q2,
            verdict: Verdict::ExcludedByRank,
            note: Some(format!("ranks {} vs {}", r1, r2)),
        });
    }

    // equal slopes of the same sign need the surgeries to be L-spaces
    if !is_lspace_surgery(prof, s1) {
        return Ok(PairResult { q, q2, verdict: Verdict::ExcludedBySign, note });
    }

    if oriented && genus_from_profile(prof) == 1 {
        // for a genus one knot the surviving slopes are L-space slopes,
        // which this pair already is: record the constraint
        note = Some("genus-one constraint: L-space slopes only".to_string());
    }

    if p.abs() == 3 && !prof.is_trivial() {
        return Ok(PairResult { q, q2, verdict: Verdict::ExcludedByP3, note });
    }

    if p.abs() == 3 && q.rem_euclid(3) != q2.rem_euclid(3) {
        // L(3,1) and L(3,2) have inequivalent linking forms
        return Ok(PairResult {
            q,
            q2,
            verdict: Verdict::ExcludedByLinkingForm,
            note,
        });
    }

    Ok(PairResult { q, q2, verdict: Verdict::NotExcluded, note })
}

/// All pairs q < q' up to qmax with slopes in lowest terms.
pub fn scan(prof: &Profile, p: i64, qmax: i64, oriented: bool) -> Result<Vec<PairResult>> {
    if p == 0 {
        return domain_err("p must be nonzero");
    }
    if qmax < 2 {
        return domain_err("qmax must be at least 2");
    }
    let mut out = Vec::new();
    for q in 1..=qmax {
        if p.gcd(&q) != 1 {
            continue;
        }
        for q2 in q + 1..=qmax {
            if p.gcd(&q2) != 1 {
                continue;
            }
            out.push(screen_pair(prof, p, q, q2, oriented)?);
        }
    }
    Ok(out)
}

pub fn survivors(results: &[PairResult]) -> Vec<(i64, i64)> {
    results
        .iter()
        .filter(|r| r.verdict == Verdict::NotExcluded)
        .map(|r| (r.q, r.q2))
        .collect()
}
