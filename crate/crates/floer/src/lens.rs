//! d-invariants of lens spaces.

use crate::{domain_err, Result};
use num_integer::Integer;
use num_rational::Rational64;
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

fn cache() -> &'static Mutex<HashMap<(i64, i64, i64), Rational64>> {
    static CACHE: OnceLock<Mutex<HashMap<(i64, i64, i64), Rational64>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// d(L(p,q), i) by the recursion
///   d(L(1,0), 0) = 0
///   d(L(p,q), i) = ((2i+1-p-q)^2 - pq)/(4pq) - d(L(q, p mod q), i mod q)
/// for coprime p >= 1, q >= 0 and labels 0 <= i < p+q. q may exceed p
/// (surgery coefficients p/q with large q), the recursion reduces it.
pub fn d_lens(p: i64, q: i64, i: i64) -> Result<Rational64> {
    if p < 1 || q < 0 || p.gcd(&q) != 1 {
        return domain_err(format!("bad lens parameters L({},{})", p, q));
    }
    if i < 0 || i >= p + q {
        return domain_err(format!("lens label {} out of range for L({},{})", i, p, q));
    }
    Ok(d_lens_inner(p, q, i))
}

fn d_lens_inner(p: i64, q: i64, i: i64) -> Rational64 {
    if q == 0 {
        return Rational64::from_integer(0);
    }
    if let Some(v) = cache().lock().unwrap().get(&(p, q, i)) {
        return *v;
    }
    let num = (2 * i + 1 - p - q) * (2 * i + 1 - p - q) - p * q;
    let term = Rational64::new(num, 4 * p * q);
    let val = term - d_lens_inner(q, p.mod_floor(&q), i.mod_floor(&q));
    cache().lock().unwrap().insert((p, q, i), val);
    val
}

/// closed form for q = 1: d(L(p,1), i) = ((2i-p)^2 - p) / 4p
pub fn d_lens_closed(p: i64, i: i64) -> Result<Rational64> {
    if p < 1 {
        return domain_err("d_lens_closed needs p >= 1");
    }
    if i < 0 || i > p {
        return domain_err("label out of range");
    }
    Ok(Rational64::new((2 * i - p) * (2 * i - p) - p, 4 * p))
}

/// all labels 0..p
pub fn d_lens_all(p: i64, q: i64) -> Result<Vec<Rational64>> {
    (0..p).map(|i| d_lens(p, q, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn small_values() {
        assert_eq!(d_lens(1, 1, 0).unwrap(), r(0, 1));
        assert_eq!(d_lens_all(2, 1).unwrap(), vec![r(1, 4), r(-1, 4)]);
        assert_eq!(d_lens_all(3, 1).unwrap(), vec![r(1, 2), r(-1, 6), r(-1, 6)]);
    }

    #[test]
    fn closed_form_matches_recursion() {
        for p in 1..=12 {
            for i in 0..p {
                assert_eq!(d_lens(p, 1, i).unwrap(), d_lens_closed(p, i).unwrap());
            }
        }
    }

    #[test]
    fn conjugation_symmetry() {
        // d(L(p,q), i) = d(L(p,q), p+q-1-i) on the extended label range
        for p in 1..=12 {
            for q in 1..=p {
                if num_integer::gcd(p, q) != 1 {
                    continue;
                }
                for i in 0..p + q {
                    assert_eq!(
                        d_lens(p, q, i).unwrap(),
                        d_lens(p, q, p + q - 1 - i).unwrap(),
                        "L({},{}) label {}",
                        p,
                        q,
                        i
                    );
                }
            }
        }
    }

    #[test]
    fn trivial_surgery_is_s3() {
        for q in [1, 2, 3, 5] {
            assert_eq!(d_lens(1, q % 1, 0).unwrap_or(r(0, 1)), r(0, 1));
        }
        assert_eq!(d_lens(1, 0, 0).unwrap(), r(0, 1));
        assert_eq!(d_lens(1, 1, 0).unwrap(), r(0, 1));
    }
}
