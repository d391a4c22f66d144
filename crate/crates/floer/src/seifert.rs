//! Seifert fibered spaces over orientable bases.
//!
//! The data is (genus; a; r_1/q_1, ..., r_n/q_n). For each torsion
//! spin-c structure, represented by integers (xi_0, ..., xi_n), and
//! each exterior power index t, the combinatorial height function
//!   delta_t(s) = (-1)^(s+1) t + xi_0 + a s + sum_i floor((xi_i + r_i s)/q_i)
//!   h(-1) = 0, h(s) = h(s-1) + delta_t(s)
//! determines a summand: one tower from the global minimum plus one
//! finite piece per well of h.

use crate::graded::{deg, GradedModule};
use crate::surgery::TowerCone;
use crate::{domain_err, internal_err, Result};
use num_integer::Integer;
use num_rational::Rational64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertData {
    pub genus: i64,
    pub a: i64,
    pub fibers: Vec<(i64, i64)>, // (r_i, q_i)
    pub flipped: bool,
}

impl SeifertData {
    pub fn new(genus: i64, a: i64, fibers: Vec<(i64, i64)>) -> Result<SeifertData> {
        if genus < 0 {
            return domain_err("base genus must be nonnegative");
        }
        for &(r, q) in &fibers {
            if q < 1 || r.gcd(&q) != 1 {
                return domain_err(format!("bad fiber {}/{}", r, q));
            }
        }
        let mut d = SeifertData { genus, a, fibers, flipped: false };
        let degree = d.degree();
        if degree == Rational64::from_integer(0) {
            return domain_err("degree zero fibrations are not supported");
        }
        // the computation needs positive degree; reverse orientation
        // on input when necessary and record that
        if degree < Rational64::from_integer(0) {
            d.a = -d.a;
            for f in d.fibers.iter_mut() {
                f.0 = -f.0;
            }
            d.flipped = true;
        }
        Ok(d)
    }

    /// "a; r1/q1; r2/q2; ..."
    pub fn parse(genus: i64, text: &str) -> Result<SeifertData> {
        let mut parts = text.split(';').map(|s| s.trim());
        let a = parts
            .next()
            .filter(|s| !s.is_empty())
            .ok_or_else(|| crate::Error::Domain("missing euler term".into()))?
            .parse::<i64>()
            .map_err(|_| crate::Error::Domain("bad euler term".into()))?;
        let mut fibers = Vec::new();
        for part in parts {
            if part.is_empty() {
                continue;
            }
            let (r, q) = part
                .split_once('/')
                .ok_or_else(|| crate::Error::Domain(format!("bad fiber '{}'", part)))?;
            let r = r.trim().parse::<i64>();
            let q = q.trim().parse::<i64>();
            match (r, q) {
                (Ok(r), Ok(q)) => fibers.push((r, q)),
                _ => return domain_err(format!("bad fiber '{}'", part)),
            }
        }
        SeifertData::new(genus, a, fibers)
    }

    pub fn degree(&self) -> Rational64 {
        let mut d = Rational64::from_integer(self.a);
        for &(r, q) in &self.fibers {
            d += Rational64::new(r, q);
        }
        d
    }

    /// order of the torsion part of H_1
    pub fn torsion_order(&self) -> i64 {
        let qs: i64 = self.fibers.iter().map(|&(_, q)| q).product();
        (self.degree() * Rational64::from_integer(qs))
            .to_integer()
            .abs()
    }

    /// presentation of the torsion subgroup on generators
    /// (m_0, g_1, ..., g_n): a m_0 + sum r_i g_i = 0, m_0 - q_i g_i = 0
    fn relation_matrix(&self) -> Vec<Vec<i128>> {
        let n = self.fibers.len();
        let mut r = vec![vec![0i128; n + 1]; n + 1];
        r[0][0] = self.a as i128;
        for (i, &(ri, qi)) in self.fibers.iter().enumerate() {
            r[i + 1][0] = ri as i128;
            r[0][i + 1] = 1;
            r[i + 1][i + 1] = -(qi as i128);
        }
        r
    }

    /// representatives (xi_0, ..., xi_n) of the torsion spin-c
    /// structures, with xi_i reduced into [0, q_i) for i >= 1
    pub fn spinc_classes(&self) -> Vec<Vec<i64>> {
        let n = self.fibers.len();
        let rel = self.relation_matrix();
        let snf = crate::snf::smith(&rel);
        let moduli: Vec<i128> = snf.diag.iter().map(|d| d.abs()).collect();
        let mut out = Vec::new();
        let mut c = vec![0i128; n + 1];
        loop {
            // representative u_inv * c, then reduce the fiber slots
            let mut x: Vec<i128> = (0..n + 1)
                .map(|row| (0..n + 1).map(|k| snf.u_inv[row][k] * c[k]).sum())
                .collect();
            for (i, &(_, qi)) in self.fibers.iter().enumerate() {
                let q = qi as i128;
                let red = x[i + 1].rem_euclid(q);
                let t = (x[i + 1] - red) / q;
                x[i + 1] = red;
                x[0] += t;
            }
            out.push(x.iter().map(|&v| v as i64).collect());
            // advance the mixed-radix counter
            let mut k = 0;
            loop {
                if k > n {
                    out.sort();
                    out.dedup();
                    return out;
                }
                c[k] += 1;
                if c[k] < moduli[k] {
                    break;
                }
                c[k] = 0;
                k += 1;
            }
        }
    }

    pub fn delta(&self, xi: &[i64], t: i64, s: i64) -> i64 {
        let alt = if s.rem_euclid(2) == 1 { t } else { -t };
        let mut d = alt + xi[0] + self.a * s;
        for (i, &(r, q)) in self.fibers.iter().enumerate() {
            d += Integer::div_floor(&(xi[i + 1] + r * s), &q);
        }
        d
    }

    /// height values of h on a window wide enough that both ends are
    /// walls above every merge level; returns (first index, values)
    pub fn heights(&self, xi: &[i64], t: i64) -> Result<(i64, Vec<i64>)> {
        if xi.len() != self.fibers.len() + 1 {
            return domain_err("spin-c representative has the wrong length");
        }
        let period: i64 = self
            .fibers
            .iter()
            .map(|&(_, q)| q)
            .fold(2i64, |l, q| l.lcm(&q));
        let mut right = period;
        let mut left = -period;
        let grown = |lo: i64, hi: i64| -> bool {
            (hi - lo) > 1_000_000
        };
        // delta must be sign-definite on a full trailing period at
        // each end; periodicity then keeps it definite beyond
        loop {
            if (right - period + 1..=right).all(|s| self.delta(xi, t, s) > 0) {
                break;
            }
            right += period;
            if grown(left, right) {
                return internal_err("height window failed to stabilize");
            }
        }
        loop {
            if (left..left + period).all(|s| self.delta(xi, t, s) < 0) {
                break;
            }
            left -= period;
            if grown(left, right) {
                return internal_err("height window failed to stabilize");
            }
        }
        // h on [left-1, right], h(-1) = 0
        let h_at = |s: i64| -> i64 {
            if s >= 0 {
                (0..=s).map(|u| self.delta(xi, t, u)).sum()
            } else {
                -(s + 1..=-1).map(|u| self.delta(xi, t, u)).sum::<i64>()
            }
        };
        let mut lo = left - 1;
        let mut hi = right;
        let mut vals: Vec<i64> = (lo..=hi).map(h_at).collect();
        // extend until the boundary values strictly dominate the interior
        loop {
            let interior_max = vals[1..vals.len() - 1].iter().copied().max().unwrap_or(i64::MIN);
            let mut changed = false;
            if vals[0] <= interior_max {
                lo -= 1;
                vals.insert(0, h_at(lo));
                changed = true;
            }
            if *vals.last().unwrap() <= interior_max {
                hi += 1;
                vals.push(h_at(hi));
                changed = true;
            }
            if !changed {
                return Ok((lo, vals));
            }
            if grown(lo, hi) {
                return internal_err("height window failed to stabilize");
            }
        }
    }
}

/// The module carved out of a height function: a tower at twice the
/// global minimum, and one finite piece per well, Z[U]/U^(death-birth)
/// with bottom degree twice the birth level. Computed by sublevel-set
/// persistence of the sequence.
pub fn form_hfp(h: &[i64]) -> GradedModule {
    let mut m = GradedModule::absolute();
    if h.is_empty() {
        return m;
    }
    let n = h.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (h[i], i));
    // union-find over activated positions
    let mut parent: Vec<usize> = (0..n).collect();
    let mut birth: Vec<i64> = vec![0; n];
    let mut active = vec![false; n];
    fn find(parent: &mut Vec<usize>, mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &i in &order {
        active[i] = true;
        birth[i] = h[i];
        for nb in [i.wrapping_sub(1), i + 1] {
            if nb >= n || !active[nb] {
                continue;
            }
            let ri = find(&mut parent, i);
            let rn = find(&mut parent, nb);
            if ri == rn {
                continue;
            }
            // the younger component dies at the current level
            let (live, die) = if birth[ri] <= birth[rn] { (ri, rn) } else { (rn, ri) };
            if h[i] > birth[die] {
                m.add_cyclic(deg(2 * birth[die]), (h[i] - birth[die]) as u64);
            }
            parent[die] = live;
        }
    }
    let min = *h.iter().min().unwrap();
    m.add_tower(deg(2 * min));
    m
}

/// The same module from the bamboo complex: towers A_s with bottom
/// 2 h(s), towers B_s with bottom 2 max(h(s), h(s+1)) - 1, arrows
/// A_s -> B_s with exponent max(delta,0) and A_{s+1} -> B_s with
/// exponent max(-delta,0) where delta = h(s+1) - h(s).
pub fn bamboo_homology(h: &[i64]) -> Result<GradedModule> {
    let mut m = GradedModule::absolute();
    if h.is_empty() {
        return Ok(m);
    }
    let n = h.len();
    let a_bottoms: Vec<i64> = h.iter().map(|&v| 2 * v).collect();
    let mut b_bottoms = Vec::new();
    let mut arrows = Vec::new();
    for s in 0..n - 1 {
        let d = h[s + 1] - h[s];
        b_bottoms.push(2 * h[s].max(h[s + 1]) - 1);
        arrows.push((s, s, d.max(0) as u64));
        arrows.push((s + 1, s, (-d).max(0) as u64));
    }
    let (towers, cyclics) = crate::surgery::tower_cone_homology(&TowerCone {
        a_bottoms,
        b_bottoms,
        arrows,
    })?;
    for t in towers {
        m.add_tower(deg(t));
    }
    for (d, l) in cyclics {
        m.add_cyclic(deg(d), l);
    }
    Ok(m)
}

pub fn binomial(n: i64, k: i64) -> u64 {
    if k < 0 || k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

/// HF+ of the fibration in the spin-c structure xi: the sum over
/// t in [-genus, genus] of binomial-weighted height-function modules,
/// shifted by t, anchored so the t = 0 tower starts in degree 0.
pub fn seifert_hfp(data: &SeifertData, xi: &[i64]) -> Result<GradedModule> {
    let g = data.genus;
    let (_, h0) = data.heights(xi, 0)?;
    let anchor = -2 * h0.iter().min().unwrap();
    let mut total = GradedModule::absolute();
    for t in -g..=g {
        let (_, h) = data.heights(xi, t)?;
        let part = form_hfp(&h)
            .scale(binomial(2 * g, g + t))
            .shift(deg(t + anchor));
        total = total.direct_sum(&part)?;
    }
    Ok(total)
}
