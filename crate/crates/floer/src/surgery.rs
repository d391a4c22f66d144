//! Surgery mapping cones and their homology.
//!
//! For a slope p/q and a residue label i the cone has one column A_s
//! per integer s in a truncation window, one column B_s in a slightly
//! smaller or larger window depending on the sign of p, and arrows
//!   A_s -> B_s     with exponent V_{j(s)}   (vertical)
//!   A_s -> B_{s+1} with exponent H_{j(s)}   (horizontal)
//! where j(s) = floor((i + p s)/q). Each column is a tower; thin
//! summands of H(A^+) ride along as extra finite pieces that neither
//! receive nor emit arrows.

use crate::alexander::Profile;
use crate::graded::GradedModule;
use crate::{domain_err, internal_err, Result};
use num_integer::Integer;
use num_rational::Rational64;
use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Slope> {
        if q < 1 || p == 0 || p.gcd(&q) != 1 {
            return domain_err(format!("bad slope {}/{}", p, q));
        }
        Ok(Slope { p, q })
    }

    pub fn parse(s: &str) -> Result<Slope> {
        let s = s.trim();
        let (p, q) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s, "1"),
        };
        let p = p
            .parse::<i64>()
            .map_err(|_| crate::Error::Domain(format!("bad slope '{}'", s)))?;
        let q = q
            .parse::<i64>()
            .map_err(|_| crate::Error::Domain(format!("bad slope '{}'", s)))?;
        Slope::new(p, q)
    }
}

impl std::fmt::Display for Slope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.q == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}/{}", self.p, self.q)
        }
    }
}

// ---------------------------------------------------------------------
// generic two-row cone of towers

/// Columns of towers with U^exp arrows from A towers to B towers.
/// Every arrow must satisfy b_b = b_a + 2 exp - 1. All coefficients
/// are +1; this loses no generality while the arrow graph is a forest,
/// which holds for every cone built here.
#[derive(Debug, Clone)]
pub struct TowerCone {
    pub a_bottoms: Vec<i64>,
    pub b_bottoms: Vec<i64>,
    pub arrows: Vec<(usize, usize, u64)>,
}

/// Homology of the cone: (tower bottoms, cyclic (bottom, length)).
pub fn tower_cone_homology(cone: &TowerCone) -> Result<(Vec<i64>, Vec<(i64, u64)>)> {
    for &(a, b, e) in &cone.arrows {
        if cone.b_bottoms[b] != cone.a_bottoms[a] + 2 * e as i64 - 1 {
            return internal_err("arrow grading mismatch in tower cone");
        }
    }
    let first = homology_with_guard(cone, 0)?;
    let second = homology_with_guard(cone, 6)?;
    if first != second {
        return internal_err("tower cone homology did not stabilize");
    }
    Ok(first)
}

fn homology_with_guard(cone: &TowerCone, extra: i64) -> Result<(Vec<i64>, Vec<(i64, u64)>)> {
    let mut towers: Vec<i64> = Vec::new();
    let mut cyclics: Vec<(i64, u64)> = Vec::new();
    if cone.a_bottoms.is_empty() && cone.b_bottoms.is_empty() {
        return Ok((towers, cyclics));
    }
    let max_bottom = cone
        .a_bottoms
        .iter()
        .chain(cone.b_bottoms.iter())
        .copied()
        .max()
        .unwrap();
    // Above max_bottom + 2 max_exp the complex repeats itself degree by
    // degree and U acts bijectively on chains, so U is onto in homology
    // there: no finite summand tops the guard, and everything alive at
    // the guard is a tower. A violation would shift bar bottoms between
    // the two guard heights and fail the double computation.
    let max_exp: i64 = cone.arrows.iter().map(|&(_, _, e)| e as i64).max().unwrap_or(0);
    let d_hi = max_bottom + 2 * (max_exp + 2) + extra;

    // basis of a row in degree d: (column, height) pairs
    let basis = |bottoms: &[i64], d: i64| -> Vec<(usize, i64)> {
        bottoms
            .iter()
            .enumerate()
            .filter(|(_, &b)| d >= b && (d - b) % 2 == 0)
            .map(|(k, &b)| (k, (d - b) / 2))
            .collect()
    };
    let a_basis = |d: i64| basis(&cone.a_bottoms, d);
    let b_basis = |d: i64| basis(&cone.b_bottoms, d);

    // All linear algebra is mod 2: the matrices are incidence matrices
    // of a forest (unit coefficients) extended by unit columns, hence
    // totally unimodular, and ranks over F2 agree with ranks over Q.
    // differential matrix in degree d, rows over b_basis(d-1)
    let diff_cache: RefCell<HashMap<i64, Rc<Vec<Vec<u8>>>>> = RefCell::new(HashMap::new());
    let diff = |d: i64| -> Rc<Vec<Vec<u8>>> {
        if let Some(m) = diff_cache.borrow().get(&d) {
            return m.clone();
        }
        let cols = a_basis(d);
        let rows = b_basis(d - 1);
        let mut m = vec![vec![0u8; cols.len()]; rows.len()];
        for &(a, b, e) in &cone.arrows {
            for (ci, &(ac, am)) in cols.iter().enumerate() {
                if ac != a || am < e as i64 {
                    continue;
                }
                for (ri, &(bc, bm)) in rows.iter().enumerate() {
                    if bc == b && bm == am - e as i64 {
                        m[ri][ci] ^= 1;
                    }
                }
            }
        }
        let m = Rc::new(m);
        diff_cache.borrow_mut().insert(d, m.clone());
        m
    };

    // column reduction helpers; pivots are (leading row, vector)
    let reduce = |mut w: Vec<u8>, pivots: &[(usize, Vec<u8>)]| -> Vec<u8> {
        loop {
            let lead = match w.iter().position(|&x| x == 1) {
                Some(l) => l,
                None => return w,
            };
            match pivots.iter().find(|(pl, _)| *pl == lead) {
                Some((_, pv)) => {
                    for (a, b) in w.iter_mut().zip(pv.iter()) {
                        *a ^= b;
                    }
                }
                None => return w,
            }
        }
    };

    // Sublevel persistence of one row, walking degrees downward. The
    // A row is kernel classes of the differential; the B row is
    // cokernel classes, reduced against the image columns. U drops the
    // height in each column by one. A bar that survives from the top
    // guard down to a is a tower with bottom a; a bar born at b < top
    // that dies at a is a cyclic of length (b - a)/2 + 1.
    let mut run_part = |is_b: bool| -> Result<()> {
        let bottoms: &[i64] = if is_b { &cone.b_bottoms } else { &cone.a_bottoms };
        if bottoms.is_empty() {
            return Ok(());
        }
        for par in 0..2i64 {
            let lo = match bottoms.iter().filter(|&&b| b.rem_euclid(2) == par).min() {
                Some(&b) => b,
                None => continue,
            };
            let top = d_hi - (d_hi - par).rem_euclid(2);
            // alive bars, eldest first: (birth degree, reduced vector)
            let mut alive: Vec<(i64, Vec<u8>)> = Vec::new();
            let mut d = top;
            loop {
                if alive.is_empty() && d < lo {
                    break;
                }
                let cur = basis(bottoms, d);
                let prev = basis(bottoms, d + 2);
                // where each basis element of degree d+2 lands under U
                let slot: HashMap<(usize, i64), usize> =
                    cur.iter().enumerate().map(|(k, &c)| (c, k)).collect();
                let down: Vec<Option<usize>> = prev
                    .iter()
                    .map(|&(c, m)| if m >= 1 { slot.get(&(c, m - 1)).copied() } else { None })
                    .collect();
                let mut pivots: Vec<(usize, Vec<u8>)> = Vec::new();
                let mut im_rank = 0usize;
                if is_b {
                    // image of the differential from degree d+1
                    let m = diff(d + 1);
                    let ncols = if m.is_empty() { 0 } else { m[0].len() };
                    for j in 0..ncols {
                        let col: Vec<u8> = m.iter().map(|r| r[j]).collect();
                        let r = reduce(col, &pivots);
                        if let Some(l) = r.iter().position(|&x| x == 1) {
                            pivots.push((l, r));
                            im_rank += 1;
                        }
                    }
                }
                let mut next: Vec<(i64, Vec<u8>)> = Vec::new();
                for (birth, v) in alive.drain(..) {
                    let mut w = vec![0u8; cur.len()];
                    for (i, &x) in v.iter().enumerate() {
                        if x == 1 {
                            if let Some(t) = down[i] {
                                w[t] ^= 1;
                            }
                        }
                    }
                    let r = reduce(w, &pivots);
                    match r.iter().position(|&x| x == 1) {
                        Some(l) => {
                            pivots.push((l, r.clone()));
                            next.push((birth, r));
                        }
                        None => {
                            // died below d+2
                            if birth == top {
                                towers.push(d + 2);
                            } else {
                                cyclics.push((d + 2, ((birth - d - 2) / 2 + 1) as u64));
                            }
                        }
                    }
                }
                let dim = if is_b {
                    cur.len() - im_rank
                } else {
                    cur.len() - crate::linalg::rank_mod2(&diff(d))
                };
                if dim < next.len() {
                    return internal_err("persistence lost independence");
                }
                let births = dim - next.len();
                if births > 0 {
                    let candidates: Vec<Vec<u8>> = if is_b {
                        (0..cur.len())
                            .map(|i| {
                                let mut v = vec![0u8; cur.len()];
                                v[i] = 1;
                                v
                            })
                            .collect()
                    } else {
                        crate::linalg::nullspace_mod2(&diff(d), cur.len())
                    };
                    let mut added = 0;
                    for cand in candidates {
                        if added == births {
                            break;
                        }
                        let r = reduce(cand, &pivots);
                        if let Some(l) = r.iter().position(|&x| x == 1) {
                            pivots.push((l, r.clone()));
                            next.push((d, r));
                            added += 1;
                        }
                    }
                    if added != births {
                        return internal_err("persistence birth count mismatch");
                    }
                }
                alive = next;
                d -= 2;
            }
        }
        Ok(())
    };
    run_part(false)?;
    run_part(true)?;
    towers.sort();
    cyclics.sort();
    Ok((towers, cyclics))
}

// ---------------------------------------------------------------------
// the surgery cone

#[derive(Debug, Clone)]
pub struct Cone {
    pub slope: Slope,
    pub label: i64,
    pub s_min: i64,
    pub s_max: i64,
    pub b_min: i64,
    pub b_max: i64,
    pub calib: Rational64,
}

fn j_of(slope: Slope, i: i64, s: i64) -> i64 {
    Integer::div_floor(&(i + slope.p * s), &slope.q)
}

/// truncation thresholds: to the right of J_plus every column is a
/// vertical isomorphism, to the left of J_minus a horizontal one
fn iso_thresholds(prof: &Profile) -> (i64, i64) {
    let mut bad: Vec<i64> = prof
        .aranks()
        .iter()
        .filter(|(_, &r)| r > 1)
        .map(|(&s, _)| s)
        .collect();
    for s in -(prof.g + 1)..=(prof.g + 1) {
        if prof.finite_count(s) > 0 {
            bad.push(s);
        }
    }
    let j_plus = prof.nu.max(bad.iter().max().map_or(i64::MIN, |&m| m + 1));
    let j_minus = (-prof.nu).min(bad.iter().min().map_or(i64::MAX, |&m| m - 1));
    (j_plus, j_minus)
}

fn build_window(prof: &Profile, slope: Slope, i: i64, widen: i64) -> (i64, i64, i64, i64) {
    let (jp, jm) = iso_thresholds(prof);
    let (p, q) = (slope.p, slope.q);
    let (mut s_min, mut s_max);
    if p > 0 {
        // minimal s with j(s) >= jp, i.e. i + ps >= jp*q
        let s0 = Integer::div_ceil(&(jp * q - i), &p);
        // maximal s with j(s) <= jm, i.e. i + ps <= jm*q + q - 1
        let s1 = Integer::div_floor(&(jm * q + q - 1 - i), &p);
        s_max = s0 - 1;
        s_min = s1 + 1;
    } else {
        // j decreasing: minimal s with i + ps <= jm*q + q - 1
        let s2 = Integer::div_ceil(&(jm * q + q - 1 - i), &p);
        // maximal s with i + ps >= jp*q
        let s3 = Integer::div_floor(&(jp * q - i), &p);
        s_max = s2 - 1;
        s_min = s3 + 1;
    }
    if s_min > s_max {
        s_min = s_max;
    }
    s_min -= widen;
    s_max += widen;
    let (b_min, b_max) = if p > 0 {
        (s_min + 1, s_max)
    } else {
        (s_min, s_max + 1)
    };
    (s_min, s_max, b_min, b_max)
}

/// anchored grading of the A column at s; b_B(0) = 0 extended formally
fn a_grading(prof: &Profile, slope: Slope, i: i64, s: i64) -> i64 {
    let mut b = 1 - 2 * prof.v(j_of(slope, i, 0)) as i64;
    if s >= 0 {
        for t in 1..=s {
            b += 2 * prof.h(j_of(slope, i, t - 1)) as i64 - 2 * prof.v(j_of(slope, i, t)) as i64;
        }
    } else {
        for t in (s + 1..=0).rev() {
            b -= 2 * prof.h(j_of(slope, i, t - 1)) as i64 - 2 * prof.v(j_of(slope, i, t)) as i64;
        }
    }
    b
}

/// the cone as a tower cone plus the finite pieces riding along
fn assemble(
    prof: &Profile,
    slope: Slope,
    i: i64,
    widen: i64,
) -> (TowerCone, Vec<(i64, u64)>) {
    let (s_min, s_max, b_min, b_max) = build_window(prof, slope, i, widen);
    let a_cols: Vec<i64> = (s_min..=s_max).collect();
    let b_cols: Vec<i64> = (b_min..=b_max).collect();
    let a_idx = |s: i64| (s - s_min) as usize;
    let b_idx = |s: i64| (s - b_min) as usize;
    let a_bottoms: Vec<i64> = a_cols.iter().map(|&s| a_grading(prof, slope, i, s)).collect();
    let mut b_bottoms: Vec<i64> = Vec::new();
    for &s in &b_cols {
        // every B column is adjacent to an A column in the window
        let b = if s >= s_min && s <= s_max {
            a_bottoms[a_idx(s)] + 2 * prof.v(j_of(slope, i, s)) as i64 - 1
        } else {
            debug_assert_eq!(s, s_max + 1);
            a_bottoms[a_idx(s - 1)] + 2 * prof.h(j_of(slope, i, s - 1)) as i64 - 1
        };
        b_bottoms.push(b);
    }
    let mut arrows = Vec::new();
    for &s in &a_cols {
        let j = j_of(slope, i, s);
        if s >= b_min && s <= b_max {
            arrows.push((a_idx(s), b_idx(s), prof.v(j)));
        }
        if s + 1 >= b_min && s + 1 <= b_max {
            arrows.push((a_idx(s), b_idx(s + 1), prof.h(j)));
        }
    }
    let mut finite = Vec::new();
    for &s in &a_cols {
        let j = j_of(slope, i, s);
        let n = prof.finite_count(j);
        if n > 0 {
            let deg = a_bottoms[a_idx(s)] + 2 * prof.v(j) as i64 + j - 1;
            for _ in 0..n {
                finite.push((deg, 1u64));
            }
        }
    }
    (
        TowerCone { a_bottoms, b_bottoms, arrows },
        finite,
    )
}

fn unknot_profile() -> Profile {
    let alex = crate::alexander::Alexander::from_coeffs(&[1]).unwrap();
    crate::alexander::lspace_profile(&alex).unwrap()
}

/// target d-invariants used to pin the overall grading: surgery on the
/// unknot gives a lens space, with sign flipped for negative slopes
pub fn calibration_target(slope: Slope, i: i64) -> Result<Rational64> {
    if slope.p > 0 {
        crate::lens::d_lens(slope.p, slope.q, i)
    } else {
        Ok(-crate::lens::d_lens(-slope.p, slope.q, i)?)
    }
}

fn uncalibrated_bottom(prof: &Profile, slope: Slope, i: i64, widen: i64) -> Result<i64> {
    let (cone, _) = assemble(prof, slope, i, widen);
    let (towers, _) = tower_cone_homology(&cone)?;
    if towers.len() != 1 {
        return internal_err(format!(
            "expected a single tower in residue {}, found {}",
            i,
            towers.len()
        ));
    }
    Ok(towers[0])
}

/// HF+ of p/q surgery in the residue i, absolutely graded.
pub fn surgery_hfp_label(prof: &Profile, slope: Slope, i: i64, widen: i64) -> Result<GradedModule> {
    let target = calibration_target(slope, i)?;
    let unknot = unknot_profile();
    let base = uncalibrated_bottom(&unknot, slope, i, widen)?;
    let calib = target - Rational64::from_integer(base);

    let (cone, finite) = assemble(prof, slope, i, widen);
    let (towers, cyclics) = tower_cone_homology(&cone)?;
    if towers.len() != 1 {
        return internal_err(format!(
            "expected a single tower in residue {}, found {}",
            i,
            towers.len()
        ));
    }
    let mut m = GradedModule::absolute();
    for t in towers {
        m.add_tower(Rational64::from_integer(t) + calib);
    }
    for (d, l) in cyclics.into_iter().chain(finite.into_iter()) {
        m.add_cyclic(Rational64::from_integer(d) + calib, l);
    }
    Ok(m)
}

/// HF+ of the surgery, one module per residue label 0..|p|.
pub fn surgery_hfp(prof: &Profile, slope: Slope) -> Result<Vec<(i64, GradedModule)>> {
    surgery_hfp_widened(prof, slope, 0)
}

pub fn surgery_hfp_widened(
    prof: &Profile,
    slope: Slope,
    widen: i64,
) -> Result<Vec<(i64, GradedModule)>> {
    let mut out = Vec::new();
    for i in 0..slope.p.abs() {
        let mut result = None;
        let mut last_err = None;
        // a failed stabilization check retries on a wider window
        for extra in 0..=3 {
            match surgery_hfp_label(prof, slope, i, widen + extra) {
                Ok(m) => {
                    result = Some(m);
                    break;
                }
                Err(e @ crate::Error::Internal(_)) => last_err = Some(e),
                Err(e) => return Err(e),
            }
        }
        match result {
            Some(m) => out.push((i, m)),
            None => return Err(last_err.unwrap()),
        }
    }
    Ok(out)
}

/// lens space d-invariants read off from the unknot cone
pub fn d_lens_via_cone(p: i64, q: i64) -> Result<Vec<Rational64>> {
    let slope = Slope::new(p, q)?;
    let unknot = unknot_profile();
    let mods = surgery_hfp(&unknot, slope)?;
    mods.iter()
        .map(|(_, m)| {
            if m.towers().len() != 1 || !m.cyclics().is_empty() {
                internal_err("unknot surgery is not a single tower")
            } else {
                Ok(m.towers()[0])
            }
        })
        .collect()
}

// ---------------------------------------------------------------------
// numerical invariants

/// the torsion index matched to the label: the j(s) of smallest
/// absolute value over all integers s
pub fn torsion_index(slope: Slope, i: i64) -> i64 {
    let (p, q) = (slope.p, slope.q);
    let center = -i / p;
    let mut best = i64::MAX;
    for s in center - q - 2..=center + q + 2 {
        best = best.min(j_of(slope, i, s).abs());
    }
    best
}

/// d-invariants of a positive surgery on an L-space knot:
/// d(i) = d(L(p,q), i) - 2 t_{m(i)}
pub fn d_invariants(prof: &Profile, slope: Slope) -> Result<Vec<(i64, Rational64)>> {
    if slope.p <= 0 {
        return domain_err("d_invariants needs a positive slope");
    }
    if !prof.lspace {
        return domain_err("d_invariants needs an L-space profile");
    }
    (0..slope.p)
        .map(|i| {
            let m = torsion_index(slope, i);
            let t = prof.alex.torsion(m);
            Ok((
                i,
                crate::lens::d_lens(slope.p, slope.q, i)? - Rational64::from_integer(2 * t),
            ))
        })
        .collect()
}

/// total rank of the hat flavor over all residues, closed form
pub fn hf_hat_rank_formula(prof: &Profile, slope: Slope) -> u64 {
    let (p, q) = (slope.p.abs() as u64, slope.q as u64);
    let nu = prof.nu.max(0) as u64;
    let excess: u64 = prof.aranks().values().map(|&r| r - 1).sum();
    if slope.p > 0 {
        let spill = (2 * nu).saturating_sub(1).saturating_mul(q);
        p + 2 * spill.saturating_sub(p) + q * excess
    } else {
        p + 2 * q * (2 * nu).saturating_sub(1) + q * excess
    }
}

/// total rank of the hat flavor computed from the F2 cone
pub fn hf_hat_rank_cone(prof: &Profile, slope: Slope) -> Result<u64> {
    hf_hat_rank_cone_widened(prof, slope, 0)
}

pub fn hf_hat_rank_cone_widened(prof: &Profile, slope: Slope, widen: i64) -> Result<u64> {
    let mut total = 0u64;
    for i in 0..slope.p.abs() {
        total += hat_rank_label(prof, slope, i, widen)?;
    }
    Ok(total)
}

/// per-residue hat ranks from the F2 cone
pub fn hf_hat_rank_labels(prof: &Profile, slope: Slope) -> Result<Vec<(i64, u64)>> {
    (0..slope.p.abs())
        .map(|i| Ok((i, hat_rank_label(prof, slope, i, 0)?)))
        .collect()
}

fn hat_rank_label(prof: &Profile, slope: Slope, i: i64, widen: i64) -> Result<u64> {
    let (s_min, s_max, b_min, b_max) = build_window(prof, slope, i, widen);
    let n_a = (s_max - s_min + 1) as usize;
    let n_b = (b_max - b_min + 1).max(0) as usize;
    let mut m: Vec<Vec<u8>> = vec![vec![0u8; n_a]; n_b];
    let mut gen_count = n_b as u64;
    for s in s_min..=s_max {
        let j = j_of(slope, i, s);
        gen_count += prof.arank(j);
        let col = (s - s_min) as usize;
        if prof.v(j) == 0 && s >= b_min && s <= b_max {
            m[(s - b_min) as usize][col] ^= 1;
        }
        if prof.h(j) == 0 && s + 1 >= b_min && s + 1 <= b_max {
            m[(s + 1 - b_min) as usize][col] ^= 1;
        }
    }
    let r = crate::linalg::rank_mod2(&m) as u64;
    Ok(gen_count - 2 * r)
}

pub fn is_lspace_surgery(prof: &Profile, slope: Slope) -> bool {
    hf_hat_rank_formula(prof, slope) == slope.p.unsigned_abs()
}

/// L-space slopes force the vanishing of the torsion coefficients
/// beyond p/2q; callers can assert this as a sanity check
pub fn validate_vanishing(prof: &Profile, slope: Slope) -> Result<()> {
    if !is_lspace_surgery(prof, slope) {
        return Ok(());
    }
    for i in 0..=prof.g {
        if 2 * slope.q * i > slope.p.abs() && prof.alex.torsion(i) != 0 {
            return internal_err(format!(
                "torsion t_{} nonzero beyond an L-space slope {}",
                i, slope
            ));
        }
    }
    Ok(())
}
