//! Built-in acceptance checks, shared by `floer selftest` and the
//! integration test suite. Each criterion returns Ok or a short
//! failure description. Randomized criteria use fixed seeds.

use crate::alexander::{self, Alexander, Profile};
use crate::graded::{GradedModule, Mode};
use crate::lens;
use crate::seifert::{self, SeifertData};
use crate::surgery::{self, Slope};
use num_integer::Integer;
use num_rational::Rational64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

type Check = std::result::Result<(), String>;

fn es(e: crate::Error) -> String {
    e.to_string()
}

pub struct Criterion {
    pub index: usize,
    pub name: &'static str,
    pub run: fn() -> Check,
}

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { index: 1, name: "seifert worked example", run: criterion1 },
        Criterion { index: 2, name: "delta sequences", run: criterion2 },
        Criterion { index: 3, name: "thin knot surgeries", run: criterion3 },
        Criterion { index: 4, name: "lens space anchor", run: criterion4 },
        Criterion { index: 5, name: "d-invariants vs cone", run: criterion5 },
        Criterion { index: 6, name: "rank formula vs cone", run: criterion6 },
        Criterion { index: 7, name: "bamboo vs wells", run: criterion7 },
        Criterion { index: 8, name: "surgeries detect the unknot", run: criterion8 },
        Criterion { index: 9, name: "cosmetic screens", run: criterion9 },
        Criterion { index: 10, name: "invariant suite", run: criterion10 },
    ]
}

// ---------------------------------------------------------------------
// fixtures

fn lprofile(coeffs: &str) -> Profile {
    alexander::lspace_profile(&Alexander::parse(coeffs).unwrap()).unwrap()
}

pub fn unknot() -> Profile {
    lprofile("1")
}

pub fn trefoil() -> Profile {
    lprofile("1 -1 1")
}

pub fn t25() -> Profile {
    lprofile("1 -1 1 -1 1")
}

pub fn t34() -> Profile {
    lprofile("1 -1 0 1 0 -1 1")
}

pub fn t35() -> Profile {
    lprofile("1 -1 0 1 -1 1 0 -1 1")
}

pub fn nine44() -> Profile {
    let alex = Alexander::parse("1 -4 7 -4 1").unwrap();
    let aranks: BTreeMap<i64, u64> = [(-1, 3), (0, 5), (1, 3)].into_iter().collect();
    alexander::thin_profile(&alex, &aranks).unwrap()
}

pub fn figure_eight() -> Profile {
    let alex = Alexander::parse("-1 3 -1").unwrap();
    let aranks: BTreeMap<i64, u64> = [(0, 3)].into_iter().collect();
    alexander::thin_profile(&alex, &aranks).unwrap()
}

fn sample_seifert() -> SeifertData {
    SeifertData::new(1, -1, vec![(1, 2), (2, 3)]).unwrap()
}

fn module(text: &str) -> GradedModule {
    GradedModule::from_text(Mode::Absolute, text).unwrap()
}

fn random_lspace(rng: &mut ChaCha8Rng) -> Profile {
    let g: i64 = rng.gen_range(1..=4);
    let mut support = vec![g, 0];
    for e in 1..g {
        if rng.gen_bool(0.5) {
            support.push(e);
        }
    }
    support.sort();
    support.reverse();
    let mut coeffs = vec![0i64; (2 * g + 1) as usize];
    for (k, &e) in support.iter().enumerate() {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeffs[(g + e) as usize] = sign;
        coeffs[(g - e) as usize] = sign;
    }
    alexander::lspace_profile(&Alexander::from_coeffs(&coeffs).unwrap()).unwrap()
}

fn random_thin(rng: &mut ChaCha8Rng) -> Profile {
    let g: i64 = rng.gen_range(1..=4);
    let mut boxes: BTreeMap<i64, u64> = BTreeMap::new();
    for s in 0..g {
        let v: u64 = if s == g - 1 { rng.gen_range(1..=2) } else { rng.gen_range(0..=2) };
        if v > 0 {
            boxes.insert(s, v);
            boxes.insert(-s, v);
        }
    }
    let n = |s: i64| *boxes.get(&s).unwrap_or(&0) as i64;
    let mut coeffs = vec![0i64; (2 * g + 1) as usize];
    for s in -g..=g {
        let m = n(s - 1) + 2 * n(s) + n(s + 1) + if s == 0 { 1 } else { 0 };
        let sign = if s.rem_euclid(2) == 0 { 1 } else { -1 };
        coeffs[(s + g) as usize] = sign * m;
    }
    let alex = Alexander::from_coeffs(&coeffs).unwrap();
    let aranks: BTreeMap<i64, u64> = boxes.iter().map(|(&s, &v)| (s, 2 * v + 1)).collect();
    alexander::thin_profile(&alex, &aranks).unwrap()
}

fn random_slope(rng: &mut ChaCha8Rng) -> Slope {
    loop {
        let p: i64 = rng.gen_range(1..=10) * if rng.gen_bool(0.5) { 1 } else { -1 };
        let q: i64 = rng.gen_range(1..=5);
        if p.abs().gcd(&q) == 1 {
            return Slope::new(p, q).unwrap();
        }
    }
}

// ---------------------------------------------------------------------
// criteria

/// genus 1 fibration (-1; 1/2, 2/3): the full module, exactly
pub fn criterion1() -> Check {
    let data = sample_seifert();
    let classes = data.spinc_classes();
    if classes.len() != 1 {
        return Err(format!("expected one torsion spin-c class, found {}", classes.len()));
    }
    let got = seifert::seifert_hfp(&data, &[0, 0, 0]).map_err(es)?;
    let want = module("T 0\nT 0\nT -1\nT -1\nZ 1 1\nZ 1 1\nZ -1 1\nZ -1 1\nZ -1 1\n");
    if got != want {
        return Err(format!("got\n{}want\n{}", got.to_text(), want.to_text()));
    }
    Ok(())
}

/// the three published delta windows and the period-6 shift law
pub fn criterion2() -> Check {
    let data = sample_seifert();
    let xi = [0i64, 0, 0];
    let t0: Vec<i64> = (0..=5).map(|s| data.delta(&xi, 0, s)).collect();
    if t0 != [0, -1, 0, 0, 0, 0] {
        return Err(format!("delta_0 on 0..=5: {:?}", t0));
    }
    let tm1: Vec<i64> = (-5..=12).map(|s| data.delta(&xi, -1, s)).collect();
    let want_m1 = [-3, 0, -2, 0, -2, 1, -2, 1, -1, 1, -1, 2, -1, 2, 0, 2, 0, 3];
    if tm1 != want_m1 {
        return Err(format!("delta_-1 on -5..=12: {:?}", tm1));
    }
    // the published t = 1 window is listed against -s; equivalently it
    // is the negated reflection of this delta
    let want_p1 = [-1, -2, 0, -2, 0, -1, 0, -1, 1, -1, 1, 0, 1, 0, 2, 0, 2, 1];
    for (k, s) in (-12..=5).enumerate() {
        if want_p1[k] != -data.delta(&xi, 1, -s) {
            return Err(format!("delta_1 mismatch at s = {}", s));
        }
    }
    for t in -1..=1 {
        for s in -18..=18 {
            if data.delta(&xi, t, s + 6) != 1 + data.delta(&xi, t, s) {
                return Err(format!("periodicity fails at t = {}, s = {}", t, s));
            }
        }
    }
    Ok(())
}

/// thin complex data: both +1 and -1 surgery give the same module
pub fn criterion3() -> Check {
    let prof = nine44();
    let want = module("T 0\nZ 0 1\nZ 0 1\nZ -1 1\nZ -1 1\n");
    for p in [1i64, -1] {
        let slope = Slope::new(p, 1).map_err(es)?;
        let mods = surgery::surgery_hfp(&prof, slope).map_err(es)?;
        if mods.len() != 1 || mods[0].1 != want {
            return Err(format!(
                "slope {}: got\n{}want\n{}",
                slope,
                mods[0].1.to_text(),
                want.to_text()
            ));
        }
    }
    Ok(())
}

/// d(L(p,q)) three ways: recursion, closed form, cone over the unknot
pub fn criterion4() -> Check {
    for p in 2..=12i64 {
        for q in 1..p {
            if p.gcd(&q) != 1 {
                continue;
            }
            let rec = lens::d_lens_all(p, q).map_err(es)?;
            let cone = surgery::d_lens_via_cone(p, q).map_err(es)?;
            if rec != cone {
                return Err(format!("recursion vs cone differ on L({},{})", p, q));
            }
        }
    }
    for p in 1..=12i64 {
        for i in 0..p {
            if lens::d_lens(p, 1, i).map_err(es)? != lens::d_lens_closed(p, i).map_err(es)? {
                return Err(format!("closed form differs on L({},1), label {}", p, i));
            }
        }
    }
    Ok(())
}

/// torsion formula d-invariants equal cone bottom degrees
pub fn criterion5() -> Check {
    let slopes = [(1, 1), (2, 1), (5, 1), (7, 2), (9, 2), (13, 3)];
    for (name, prof) in [("trefoil", trefoil()), ("T(2,5)", t25())] {
        for (p, q) in slopes {
            let slope = Slope::new(p, q).map_err(es)?;
            let dvals = surgery::d_invariants(&prof, slope).map_err(es)?;
            let mods = surgery::surgery_hfp(&prof, slope).map_err(es)?;
            for ((i, d), (i2, m)) in dvals.iter().zip(mods.iter()) {
                if i != i2 || m.towers().len() != 1 || m.towers()[0] != *d {
                    return Err(format!(
                        "{} slope {} label {}: formula {} vs cone {:?}",
                        name, slope, i, d, m.towers()
                    ));
                }
            }
        }
    }
    let one = surgery::d_invariants(&trefoil(), Slope::new(1, 1).map_err(es)?).map_err(es)?;
    if one[0].1 != Rational64::from_integer(-2) {
        return Err(format!("d of +1 trefoil surgery: {}", one[0].1));
    }
    Ok(())
}

/// closed-form hat rank equals the F2 cone rank on random inputs
pub fn criterion6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a11);
    for k in 0..25 {
        let prof = if k % 2 == 0 { random_lspace(&mut rng) } else { random_thin(&mut rng) };
        let slope = random_slope(&mut rng);
        let formula = surgery::hf_hat_rank_formula(&prof, slope);
        let cone = surgery::hf_hat_rank_cone(&prof, slope).map_err(es)?;
        if formula != cone {
            return Err(format!(
                "case {}: formula {} vs cone {} at slope {}",
                k, formula, cone, slope
            ));
        }
    }
    Ok(())
}

/// the bamboo complex and sublevel persistence agree
pub fn criterion7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xba3b00);
    for k in 0..100 {
        let len: usize = rng.gen_range(1..=40);
        let h: Vec<i64> = (0..len).map(|_| rng.gen_range(-8..=8)).collect();
        let wells = seifert::form_hfp(&h);
        let bamboo = seifert::bamboo_homology(&h).map_err(es)?;
        if wells != bamboo {
            return Err(format!("case {}: heights {:?}", k, h));
        }
    }
    Ok(())
}

/// positive torus knot surgeries never share the unknot's d-multiset
pub fn criterion8() -> Check {
    for (name, prof) in [
        ("T(2,3)", trefoil()),
        ("T(2,5)", t25()),
        ("T(3,4)", t34()),
        ("T(3,5)", t35()),
    ] {
        for p in 1..=12i64 {
            for q in 1..=3i64 {
                if p.gcd(&q) != 1 {
                    continue;
                }
                let slope = Slope::new(p, q).map_err(es)?;
                let mut knot: Vec<Rational64> = surgery::d_invariants(&prof, slope)
                    .map_err(es)?
                    .into_iter()
                    .map(|(_, d)| d)
                    .collect();
                let mut unk = lens::d_lens_all(p, q).map_err(es)?;
                knot.sort();
                unk.sort();
                if knot == unk {
                    return Err(format!("{} at slope {} matches the unknot", name, slope));
                }
            }
        }
    }
    Ok(())
}

/// p = 3 scans exclude everything; the trefoil 9 vs 9/2 pair survives
pub fn criterion9() -> Check {
    for (name, prof) in [("trefoil", trefoil()), ("figure eight", figure_eight())] {
        let results = crate::cosmetic::scan(&prof, 3, 5, false).map_err(es)?;
        let left = crate::cosmetic::survivors(&results);
        if !left.is_empty() {
            return Err(format!("{} p=3 survivors: {:?}", name, left));
        }
    }
    let tre = trefoil();
    let pair = crate::cosmetic::screen_pair(&tre, 9, 1, 2, false).map_err(es)?;
    if pair.verdict != crate::cosmetic::Verdict::NotExcluded {
        return Err(format!("trefoil (9, 9/2) verdict: {}", pair.verdict));
    }
    for q in [1, 2] {
        let slope = Slope::new(9, q).map_err(es)?;
        if surgery::hf_hat_rank_formula(&tre, slope) != 9
            || !surgery::is_lspace_surgery(&tre, slope)
        {
            return Err(format!("trefoil slope {} is not a rank 9 L-space", slope));
        }
    }
    Ok(())
}

/// cross-cutting invariants and window-widening stability
pub fn criterion10() -> Check {
    // torsion differences recover coefficient tails
    for prof in [trefoil(), t25(), t34(), t35(), nine44(), figure_eight()] {
        let a = &prof.alex;
        let g = a.genus_bound();
        for i in 0..=g {
            let tail: i64 = (i + 1..=g).map(|j| a.coeff(j)).sum();
            if a.torsion(i) - a.torsion(i + 1) != tail {
                return Err(format!("torsion difference identity fails at i = {}", i));
            }
        }
    }
    // staircase complex oracle for the V/H profiles
    for prof in [unknot(), trefoil(), t25(), t34(), t35()] {
        let stair = alexander::staircase_profile(&prof.alex).map_err(es)?;
        if stair != prof {
            return Err("staircase profile differs from the torsion profile".into());
        }
    }
    // lens conjugation symmetry
    for p in 1..=12i64 {
        for q in 1..=p {
            if p.gcd(&q) != 1 {
                continue;
            }
            for i in 0..p + q {
                if lens::d_lens(p, q, i).map_err(es)?
                    != lens::d_lens(p, q, p + q - 1 - i).map_err(es)?
                {
                    return Err(format!("conjugation fails on L({},{})", p, q));
                }
            }
        }
    }
    // mirror involution
    for prof in [trefoil(), t25(), nine44(), figure_eight()] {
        if prof.mirror().mirror() != prof {
            return Err("mirror is not an involution".into());
        }
    }
    // well counts against module ranks
    let mut rng = ChaCha8Rng::seed_from_u64(0x3e11);
    for _ in 0..30 {
        let len: usize = rng.gen_range(1..=30);
        let h: Vec<i64> = (0..len).map(|_| rng.gen_range(-6..=6)).collect();
        let m = seifert::form_hfp(&h);
        let lo = *h.iter().min().unwrap();
        let hi = *h.iter().max().unwrap();
        for n in lo..=hi {
            let mut count = 0u64;
            let mut inside = false;
            for &v in &h {
                if v <= n {
                    if !inside {
                        count += 1;
                        inside = true;
                    }
                } else {
                    inside = false;
                }
            }
            if m.rank_in_degree(Rational64::from_integer(2 * n)).map_err(es)? != count {
                return Err(format!("well count mismatch at level {} for {:?}", n, h));
            }
        }
    }
    // widening stability on every surgery the earlier criteria compute
    let stable = |prof: &Profile, slope: Slope| -> Check {
        let base = surgery::surgery_hfp(prof, slope).map_err(es)?;
        let wide = surgery::surgery_hfp_widened(prof, slope, 3).map_err(es)?;
        if base != wide {
            return Err(format!("widening changed the output at slope {}", slope));
        }
        surgery::validate_vanishing(prof, slope).map_err(es)
    };
    for p in [1i64, -1] {
        stable(&nine44(), Slope::new(p, 1).map_err(es)?)?;
    }
    for (p, q) in [(1, 1), (2, 1), (5, 1), (7, 2), (9, 2), (13, 3)] {
        for prof in [trefoil(), t25()] {
            stable(&prof, Slope::new(p, q).map_err(es)?)?;
        }
    }
    let unk = unknot();
    for p in 2..=12i64 {
        for q in 1..p {
            if p.gcd(&q) == 1 {
                stable(&unk, Slope::new(p, q).map_err(es)?)?;
            }
        }
    }
    // the randomized rank cases, recomputed on wider windows
    let mut rng = ChaCha8Rng::seed_from_u64(0x6a11);
    for k in 0..25 {
        let prof = if k % 2 == 0 { random_lspace(&mut rng) } else { random_thin(&mut rng) };
        let slope = random_slope(&mut rng);
        let base = surgery::hf_hat_rank_cone(&prof, slope).map_err(es)?;
        let wide = surgery::hf_hat_rank_cone_widened(&prof, slope, 3).map_err(es)?;
        if base != wide {
            return Err(format!("widening changed the hat rank at slope {}", slope));
        }
    }
    Ok(())
}
