//! Dense linear algebra over `Z/mZ`: kernels and ranks over a prime field,
//! and unique solutions modulo a prime power.

use crate::arith::{inv_mod, mul_mod, sub_mod};

/// Reduced row echelon form in place over `F_p`; returns pivot columns.
pub fn rref(rows: &mut [Vec<u64>], p: u64) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, piv);
        let inv = inv_mod(rows[r][c], p).unwrap();
        for v in rows[r].iter_mut() {
            *v = mul_mod(*v, inv, p);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<u64>], p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, p).len()
}

/// Basis of the right kernel `{v : M v = 0}` over `F_p`.
pub fn kernel(rows: &[Vec<u64>], ncols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, p);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = sub_mod(0, m[i][f], p);
            }
            v
        })
        .collect()
}

/// Solution of `M x = b` modulo `l^e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimePowerSolution {
    pub values: Vec<u64>,
    /// `true` where the column had an invertible pivot, so its value is
    /// forced modulo `l^e`. Other columns carry one admissible choice.
    pub determined: Vec<bool>,
}

/// Echelon elimination modulo `l^e`, always pivoting on the entry of least
/// `l`-adic valuation, followed by back substitution that picks the
/// smallest admissible value for columns with non-unit or missing pivots.
pub fn solve_mod_prime_power(rows: &[Vec<u64>], rhs: &[u64], l: u64, e: u32) -> PrimePowerSolution {
    let m = l.pow(e);
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut v: Vec<u64> = r.iter().map(|&x| x % m).collect();
            v.push(b % m);
            v
        })
        .collect();
    let val = |x: u64| -> u32 {
        if x == 0 {
            return e;
        }
        let (mut x, mut k) = (x, 0);
        while x % l == 0 {
            x /= l;
            k += 1;
        }
        k
    };
    let mut pivots: Vec<(usize, usize, u32)> = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(piv) = (r..a.len()).filter(|&i| a[i][c] != 0).min_by_key(|&i| val(a[i][c])) else {
            continue;
        };
        a.swap(r, piv);
        let v = val(a[r][c]);
        let unit = a[r][c] / l.pow(v);
        let uinv = inv_mod(unit, m).unwrap();
        for i in r + 1..a.len() {
            if a[i][c] == 0 {
                continue;
            }
            // a[i][c] has valuation >= v, so it is a multiple of the pivot.
            let f = mul_mod(a[i][c] / l.pow(v), uinv, m);
            let pivot_row = a[r].clone();
            for (x, &y) in a[i].iter_mut().zip(&pivot_row) {
                *x = sub_mod(*x, mul_mod(f, y, m), m);
            }
        }
        pivots.push((r, c, v));
        r += 1;
    }
    let mut values = vec![0u64; ncols];
    let mut determined = vec![false; ncols];
    for &(row, c, v) in pivots.iter().rev() {
        let mut t = a[row][ncols];
        for k in c + 1..ncols {
            t = sub_mod(t, mul_mod(a[row][k], values[k], m), m);
        }
        let lv = l.pow(v);
        if !t.is_multiple_of(lv) {
            continue;
        }
        let modulus = m / lv;
        let unit = (a[row][c] / lv) % modulus;
        values[c] = mul_mod(t / lv, inv_mod(unit, modulus).unwrap_or(1), modulus.max(1));
        determined[c] = v == 0;
    }
    PrimePowerSolution { values, determined }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two_mod_eight() {
        // x1 + x2 = 3, x1 - x2 = 1: the second pivot is 2 mod 8, so x2 is
        // only fixed modulo 4 and the smallest choice is taken.
        let rows = vec![vec![1, 1], vec![1, 7]];
        let s = solve_mod_prime_power(&rows, &[3, 1], 2, 3);
        assert_eq!(s.values, vec![2, 1]);
        assert_eq!(s.determined, vec![true, false]);
    }

    #[test]
    fn unit_system_mod_eight() {
        let rows = vec![vec![1, 1], vec![0, 1], vec![1, 2]];
        let s = solve_mod_prime_power(&rows, &[3, 1, 4], 2, 3);
        assert_eq!(s.values, vec![2, 1]);
        assert_eq!(s.determined, vec![true, true]);
    }

    #[test]
    fn kernel_is_annihilated() {
        let p = 11;
        let rows = vec![vec![1, 2, 3, 4], vec![2, 4, 6, 8], vec![0, 1, 5, 7]];
        let k = kernel(&rows, 4, p);
        assert_eq!(k.len(), 2);
        for v in &k {
            for r in &rows {
                let s = r.iter().zip(v).fold(0, |acc, (&a, &b)| (acc + a * b) % p);
                assert_eq!(s, 0);
            }
        }
        assert_eq!(rank(&rows, p), 2);
    }
}
