//! Exact rank computations for small integer matrices.

/// Rank over Q, by fraction-free (Bareiss) elimination in i128.
/// `m` is row-major, rows may be empty (rank 0).
pub fn rank_q(m: &[Vec<i128>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut rank = 0;
    let mut prev: i128 = 1;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let pivot_row = (row..rows).find(|&r| a[r][col] != 0);
        let pr = match pivot_row {
            Some(r) => r,
            None => continue,
        };
        a.swap(row, pr);
        for r in row + 1..rows {
            for c in col + 1..cols {
                a[r][c] = (a[row][col] * a[r][c] - a[r][col] * a[row][c]) / prev;
            }
            a[r][col] = 0;
        }
        prev = a[row][col];
        row += 1;
        rank += 1;
    }
    rank
}

/// Rank over F2.
pub fn rank_mod2(m: &[Vec<u8>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<u8>> = m.iter().map(|r| r.iter().map(|x| x & 1).collect()).collect();
    let mut rank = 0;
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let pr = match (row..rows).find(|&r| a[r][col] == 1) {
            Some(r) => r,
            None => continue,
        };
        a.swap(row, pr);
        for r in 0..rows {
            if r != row && a[r][col] == 1 {
                for c in col..cols {
                    a[r][c] ^= a[row][c];
                }
            }
        }
        row += 1;
        rank += 1;
    }
    rank
}

/// Basis of the right nullspace over F2 of a row-major matrix with
/// `ncols` columns (rows may be absent entirely).
pub fn nullspace_mod2(m: &[Vec<u8>], ncols: usize) -> Vec<Vec<u8>> {
    let nrows = m.len();
    let mut a: Vec<Vec<u8>> = m.iter().map(|r| r.iter().map(|x| x & 1).collect()).collect();
    let mut pivots: Vec<(usize, usize)> = Vec::new(); // (row, col)
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let pr = match (row..nrows).find(|&r| a[r][col] == 1) {
            Some(r) => r,
            None => continue,
        };
        a.swap(row, pr);
        for r in 0..nrows {
            if r != row && a[r][col] == 1 {
                for c in col..ncols {
                    a[r][c] ^= a[row][c];
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let mut is_pivot = vec![false; ncols];
    for &(_, c) in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for c in 0..ncols {
        if is_pivot[c] {
            continue;
        }
        let mut v = vec![0u8; ncols];
        v[c] = 1;
        for &(pr, pc) in &pivots {
            if a[pr][c] == 1 {
                v[pc] = 1;
            }
        }
        out.push(v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_basics() {
        assert_eq!(rank_q(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_q(&[vec![1, 0], vec![0, 1]]), 2);
        assert_eq!(rank_q(&[vec![0, 0], vec![0, 0]]), 0);
        assert_eq!(rank_q(&[]), 0);
        assert_eq!(rank_q(&[vec![2, 3, 5], vec![7, 11, 13], vec![9, 14, 18]]), 2);
    }

    #[test]
    fn nullspace_members_are_cycles() {
        let m: Vec<Vec<u8>> = vec![vec![1, 1, 0], vec![0, 1, 1]];
        let ns = nullspace_mod2(&m, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![1, 1, 1]);
        assert!(nullspace_mod2(&[], 2).len() == 2);
    }

    #[test]
    fn rank_mod2_differs_from_q() {
        // invertible over Q, singular mod 2
        let m = vec![vec![1, 1], vec![1, -1]];
        assert_eq!(rank_q(&m), 2);
        let m2: Vec<Vec<u8>> = vec![vec![1, 1], vec![1, 1]];
        assert_eq!(rank_mod2(&m2), 1);
    }
}
