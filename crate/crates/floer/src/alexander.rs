//! Alexander polynomials, torsion coefficients, and knot profiles.
//!
//! A profile is the surgery-relevant shadow of a knot: the sequences
//! V_s, H_s, the invariant nu, the ranks of the hat-flavor groups
//! A-hat_s, and (for thin non-fibered examples) the count of square
//! summands per Alexander grading.

use crate::{domain_err, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alexander {
    g: i64,
    coeffs: Vec<i64>, // index 0 holds a_{-g}
}

impl Alexander {
    /// Build from the full coefficient list a_{-g} ... a_g. The list is
    /// normalized so the polynomial evaluates to 1 at T = 1; trailing
    /// zeros are trimmed symmetrically.
    pub fn from_coeffs(list: &[i64]) -> Result<Alexander> {
        if list.is_empty() || list.len() % 2 == 0 {
            return domain_err("alexander coefficients must be an odd-length list a_{-g}..a_g");
        }
        let mut coeffs = list.to_vec();
        let sum: i64 = coeffs.iter().sum();
        if sum == -1 {
            for c in coeffs.iter_mut() {
                *c = -*c;
            }
        } else if sum != 1 {
            return domain_err(format!(
                "alexander polynomial must evaluate to +-1 at T=1, got {}",
                sum
            ));
        }
        // trim zero outer coefficients, keeping symmetry
        while coeffs.len() > 1 && coeffs[0] == 0 && *coeffs.last().unwrap() == 0 {
            coeffs.remove(0);
            coeffs.pop();
        }
        let g = (coeffs.len() as i64 - 1) / 2;
        for i in 0..coeffs.len() {
            if coeffs[i] != coeffs[coeffs.len() - 1 - i] {
                return domain_err("alexander coefficients must be symmetric");
            }
        }
        if coeffs[0] == 0 || *coeffs.last().unwrap() == 0 {
            return domain_err("alexander coefficients must be symmetric");
        }
        Ok(Alexander { g, coeffs })
    }

    /// Parse a whitespace-separated coefficient list. A palindromic list
    /// is taken as the full a_{-g}..a_g; otherwise it is read as the
    /// one-sided list a_0..a_g and symmetrized.
    pub fn parse(text: &str) -> Result<Alexander> {
        let vals: Vec<i64> = text
            .split_whitespace()
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| crate::Error::Domain(format!("bad coefficient '{}'", t)))
            })
            .collect::<Result<_>>()?;
        if vals.is_empty() {
            return domain_err("empty alexander coefficient list");
        }
        let palindromic =
            vals.len() % 2 == 1 && (0..vals.len()).all(|i| vals[i] == vals[vals.len() - 1 - i]);
        if palindromic {
            Alexander::from_coeffs(&vals)
        } else {
            let mut full: Vec<i64> = vals.iter().skip(1).rev().copied().collect();
            full.extend_from_slice(&vals);
            Alexander::from_coeffs(&full)
        }
    }

    pub fn genus_bound(&self) -> i64 {
        self.g
    }

    pub fn coeff(&self, i: i64) -> i64 {
        if i.abs() > self.g {
            0
        } else {
            self.coeffs[(i + self.g) as usize]
        }
    }

    /// t_i = sum_{j >= 1} j * a_{|i|+j}
    pub fn torsion(&self, i: i64) -> i64 {
        let i = i.abs();
        (1..=(self.g - i).max(0))
            .map(|j| j * self.coeff(i + j))
            .sum()
    }

    pub fn torsions(&self) -> Vec<(i64, i64)> {
        (0..=self.g).map(|i| (i, self.torsion(i))).collect()
    }

    /// Nonzero coefficients alternate in sign and are all +-1, with the
    /// top coefficient +1. This characterizes the polynomials our
    /// L-space machinery accepts.
    pub fn is_alternating_unimodular(&self) -> bool {
        let nz: Vec<i64> = self.coeffs.iter().copied().filter(|&c| c != 0).collect();
        if *nz.last().unwrap() != 1 {
            return false;
        }
        nz.iter().all(|&c| c.abs() == 1)
            && nz.windows(2).all(|w| w[0] * w[1] == -1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub g: i64,
    pub nu: i64,
    pub lspace: bool,
    /// V_s stored on a window around [-g, g]; outside the window V is 0
    /// to the right and grows by 1 per step to the left
    v: BTreeMap<i64, u64>,
    /// ranks of the hat-flavor A groups; default 1
    aranks: BTreeMap<i64, u64>,
    /// square-summand counts per Alexander grading (thin mode)
    boxes: BTreeMap<i64, u64>,
    pub alex: Alexander,
}

impl Profile {
    pub fn v(&self, s: i64) -> u64 {
        if let Some(&x) = self.v.get(&s) {
            return x;
        }
        let (&lo, &vlo) = self.v.iter().next().expect("profile has a nonempty window");
        let (&hi, _) = self.v.iter().next_back().unwrap();
        if s > hi {
            0
        } else {
            debug_assert!(s < lo);
            vlo + (lo - s) as u64
        }
    }

    pub fn h(&self, s: i64) -> u64 {
        self.v(-s)
    }

    pub fn arank(&self, s: i64) -> u64 {
        *self.aranks.get(&s).unwrap_or(&1)
    }

    pub fn aranks(&self) -> &BTreeMap<i64, u64> {
        &self.aranks
    }

    /// number of square summands contributing a finite Z to H(A^+_s)
    pub fn finite_count(&self, s: i64) -> u64 {
        *self.boxes.get(&s).unwrap_or(&0)
    }

    pub fn is_trivial(&self) -> bool {
        self.g == 0 && self.boxes.is_empty()
    }

    /// Formal mirror: V and H exchange via s -> -s, hat ranks reflect,
    /// nu is recomputed. This is a data-level transform on the profile.
    pub fn mirror(&self) -> Profile {
        let window: Vec<i64> = self.v.keys().copied().collect();
        let lo = *window.first().unwrap();
        let hi = *window.last().unwrap();
        let mut v = BTreeMap::new();
        for s in lo..=hi {
            v.insert(s, self.h(s));
        }
        let aranks = self.aranks.iter().map(|(&s, &r)| (-s, r)).collect();
        let boxes = self.boxes.iter().map(|(&s, &n)| (-s, n)).collect();
        let nu = (lo..=hi)
            .find(|&s| v[&s] == 0)
            .unwrap_or(hi);
        Profile {
            g: self.g,
            nu,
            lspace: self.lspace,
            v,
            aranks,
            boxes,
            alex: self.alex.clone(),
        }
    }
}

/// Profile of an L-space knot: V from torsion coefficients.
pub fn lspace_profile(alex: &Alexander) -> Result<Profile> {
    if !alex.is_alternating_unimodular() {
        return domain_err(
            "not an L-space knot polynomial: coefficients must be alternating +-1",
        );
    }
    let g = alex.genus_bound();
    let mut v = BTreeMap::new();
    for s in -(g + 1)..=(g + 1) {
        let t = alex.torsion(s) as u64;
        let val = if s >= 0 { t } else { t + (-s) as u64 };
        v.insert(s, val);
    }
    let nu = (-(g + 1)..=(g + 1))
        .find(|&s| v[&s] == 0)
        .expect("V vanishes at s = g+1");
    Ok(Profile {
        g,
        nu,
        lspace: true,
        v,
        aranks: BTreeMap::new(),
        boxes: BTreeMap::new(),
        alex: alex.clone(),
    })
}

/// Profile of a thin knot with tau = 0: a single staircase generator
/// plus square summands. Hat rank 2n+1 at grading s means n squares.
pub fn thin_profile(alex: &Alexander, aranks: &BTreeMap<i64, u64>) -> Result<Profile> {
    let g = alex.genus_bound();
    let mut boxes = BTreeMap::new();
    for (&s, &r) in aranks {
        if r % 2 == 0 {
            return domain_err("thin-mode hat ranks must be odd");
        }
        if aranks.get(&-s) != Some(&r) {
            return domain_err("hat ranks must be symmetric under s -> -s");
        }
        if r > 1 {
            boxes.insert(s, (r - 1) / 2);
        }
    }
    // the square counts must reproduce the knot homology ranks, which
    // for a thin knot are the absolute values of the coefficients
    let n = |s: i64| *boxes.get(&s).unwrap_or(&0) as i64;
    for s in -(g + 1)..=(g + 1) {
        let expect = n(s - 1) + 2 * n(s) + n(s + 1) + if s == 0 { 1 } else { 0 };
        if alex.coeff(s).abs() != expect {
            return domain_err(format!(
                "hat ranks inconsistent with coefficients at grading {}",
                s
            ));
        }
    }
    let mut v = BTreeMap::new();
    for s in -(g + 1)..=(g + 1) {
        v.insert(s, (-s).max(0) as u64);
    }
    Ok(Profile {
        g,
        nu: 0,
        lspace: false,
        v,
        aranks: aranks.clone(),
        boxes,
        alex: alex.clone(),
    })
}

pub fn genus_from_profile(p: &Profile) -> i64 {
    let from_ranks = p
        .aranks
        .iter()
        .filter(|(_, &r)| r > 1)
        .map(|(&s, _)| s + 1)
        .max()
        .unwrap_or(0);
    p.nu.max(from_ranks)
}

/// Independent computation of the V/H profile of an L-space knot from
/// its staircase complex. V_s is the total rank of the homology of the
/// region {i < 0, j >= s} of the doubly-filtered complex, H_s that of
/// {i >= 0, j < s}.
pub fn staircase_profile(alex: &Alexander) -> Result<Profile> {
    if !alex.is_alternating_unimodular() {
        return domain_err("staircase model needs an alternating +-1 polynomial");
    }
    let g = alex.genus_bound();
    // support exponents e_0 > e_1 > ... > e_{2m}
    let exps: Vec<i64> = (-g..=g).rev().filter(|&i| alex.coeff(i) != 0).collect();
    // generator positions: evens at inner corners, odds one step out
    let mut pos: Vec<(i64, i64)> = Vec::new();
    let (mut c, mut d) = (0i64, exps[0]);
    pos.push((c, d));
    let mut k = 1;
    while k + 1 < exps.len() {
        let c_next = d - exps[k];
        pos.push((c_next, d)); // odd generator
        let d_next = c_next + exps[k + 1];
        pos.push((c_next, d_next)); // next even generator
        c = c_next;
        d = d_next;
        k += 2;
    }
    let _ = c;

    // rank of homology of the translates of `pos` lying in a region;
    // the differential sends each odd copy to its two neighbor evens
    // at the same translate
    let region_rank = |in_region: &dyn Fn(i64, i64) -> bool| -> u64 {
        // collect copies (gen k, translate m) -> position - (m, m)
        let mut idx: BTreeMap<(usize, i64), usize> = BTreeMap::new();
        let mut count = 0;
        let span = 4 * g + 8;
        for (kk, &(a, b)) in pos.iter().enumerate() {
            for m in -span..=span {
                if in_region(a - m, b - m) {
                    idx.insert((kk, m), count);
                    count += 1;
                }
            }
        }
        let mut rows: Vec<Vec<i128>> = Vec::new();
        for (&(kk, m), _) in idx.iter() {
            if kk % 2 == 1 {
                let mut row = vec![0i128; count];
                if let Some(&t) = idx.get(&(kk - 1, m)) {
                    row[t] = 1;
                }
                if let Some(&t) = idx.get(&(kk + 1, m)) {
                    row[t] = 1;
                }
                rows.push(row);
            }
        }
        let r = crate::linalg::rank_q(&rows) as u64;
        count as u64 - 2 * r
    };

    let mut v = BTreeMap::new();
    for s in -(g + 1)..=(g + 1) {
        let vs = region_rank(&|i, j| i < 0 && j >= s);
        let hs = region_rank(&|i, j| i >= 0 && j < s);
        if hs != region_rank(&|i, j| i < 0 && j >= -s) {
            return crate::internal_err("staircase V/H symmetry failed");
        }
        v.insert(s, vs);
    }
    let nu = (-(g + 1)..=(g + 1))
        .find(|&s| v[&s] == 0)
        .ok_or_else(|| crate::Error::Internal("staircase V never vanished".into()))?;
    Ok(Profile {
        g,
        nu,
        lspace: true,
        v,
        aranks: BTreeMap::new(),
        boxes: BTreeMap::new(),
        alex: alex.clone(),
    })
}

#[derive(Debug, Clone)]
pub struct KnotInput {
    pub alex: Alexander,
    pub nu: Option<i64>,
    pub aranks: Option<BTreeMap<i64, u64>>,
    pub lspace: Option<bool>,
}

/// `s:rank` pairs, comma separated
pub fn parse_aranks(text: &str) -> Result<BTreeMap<i64, u64>> {
    let mut map = BTreeMap::new();
    for item in text.split(',') {
        let item = item.trim();
        if item.is_empty() {
            continue;
        }
        let bad = || crate::Error::Domain(format!("bad aranks entry '{}'", item));
        let (s, r) = item.split_once(':').ok_or_else(bad)?;
        let s = s.trim().parse::<i64>().map_err(|_| bad())?;
        let r = r.trim().parse::<u64>().map_err(|_| bad())?;
        map.insert(s, r);
    }
    Ok(map)
}

/// Knot description file: `alexander:` (required), `nu:`, `aranks:`
/// (`s:rank` pairs, comma separated), `lspace:`. Lines starting with
/// `#` are comments.
pub fn parse_knot_file(text: &str) -> Result<KnotInput> {
    let mut alex = None;
    let mut nu = None;
    let mut aranks = None;
    let mut lspace = None;
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, val) = line
            .split_once(':')
            .ok_or_else(|| crate::Error::Domain(format!("bad knot file line '{}'", line)))?;
        let val = val.trim();
        match key.trim() {
            "alexander" => alex = Some(Alexander::parse(val)?),
            "nu" => {
                nu = Some(val.parse::<i64>().map_err(|_| {
                    crate::Error::Domain(format!("bad nu value '{}'", val))
                })?)
            }
            "aranks" => aranks = Some(parse_aranks(val)?),
            "lspace" => {
                lspace = Some(match val {
                    "true" => true,
                    "false" => false,
                    _ => return domain_err(format!("bad lspace value '{}'", val)),
                })
            }
            other => return domain_err(format!("unknown knot file key '{}'", other)),
        }
    }
    let alex = alex.ok_or_else(|| crate::Error::Domain("missing alexander: line".into()))?;
    Ok(KnotInput { alex, nu, aranks, lspace })
}

pub fn profile_from_input(inp: &KnotInput) -> Result<Profile> {
    let lspace = inp.lspace.unwrap_or_else(|| inp.alex.is_alternating_unimodular());
    if lspace {
        if let Some(r) = &inp.aranks {
            if r.values().any(|&x| x != 1) {
                return domain_err("L-space profiles have all hat ranks 1");
            }
        }
        let p = lspace_profile(&inp.alex)?;
        if let Some(nu) = inp.nu {
            if nu != p.nu {
                return domain_err(format!("nu {} inconsistent with coefficients ({})", nu, p.nu));
            }
        }
        Ok(p)
    } else {
        if inp.nu.unwrap_or(0) != 0 {
            return domain_err("general mode supports thin knots with nu 0 only");
        }
        let aranks = inp
            .aranks
            .as_ref()
            .ok_or_else(|| crate::Error::Domain("general mode needs aranks:".into()))?;
        thin_profile(&inp.alex, aranks)
    }
}
