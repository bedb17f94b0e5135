//! Sparse exact linear algebra for the telescoper search.
//!
//! The homogeneous systems are solved modulo a 62-bit prime by streaming
//! row elimination (recording the elimination recipe), a kernel direction is
//! selected deterministically, and the corresponding square subsystem is
//! lifted p-adically (Dixon) to an exact rational solution, which the caller
//! verifies unconditionally against the polynomial identity.

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::Rat;

pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn invmod(a: u64, p: u64) -> u64 {
    // p prime
    powmod(a, p - 2, p)
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Deterministic sequence of 62-bit primes.
pub fn nth_prime(k: usize) -> u64 {
    let mut cand = (1u64 << 62) - 57 - 2 * (1000 * k) as u64;
    loop {
        if is_prime_u64(cand) {
            return cand;
        }
        cand -= 2;
    }
}

pub fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// One exact matrix row: sorted (column, integer coefficient) pairs.
pub type ExactRow = Vec<(u32, BigInt)>;

/// Result of the modular elimination pass.
pub struct Echelon {
    pub p: u64,
    /// reduced unit-pivot rows, keyed by pivot column
    pub rows: Vec<SparseRowMod>,
    pub pivot_of_col: Vec<Option<u32>>,
    /// original row index backing each pivot row
    pub origin: Vec<u32>,
    /// per pivot row: reductions applied (pivot column, factor), in order
    pub recipe: Vec<Vec<(u32, u64)>>,
    /// inverse of the pre-normalization leading value of each pivot row
    pub norm_inv: Vec<u64>,
    pub free_cols: Vec<u32>,
}

pub type SparseRowMod = Vec<(u32, u64)>;

fn reduce_row(
    row: &mut SparseRowMod,
    rows: &[SparseRowMod],
    pivot_of_col: &[Option<u32>],
    p: u64,
    recipe: Option<&mut Vec<(u32, u64)>>,
) {
    let mut recorded = recipe;
    loop {
        let lead = match row.first() {
            Some(&(c, _)) => c,
            None => return,
        };
        let pr = match pivot_of_col[lead as usize] {
            Some(r) => r as usize,
            None => return,
        };
        let factor = row[0].1;
        if let Some(rec) = recorded.as_deref_mut() {
            rec.push((lead, factor));
        }
        // row -= factor * rows[pr]  (pivot row is unit-normalized)
        let other = &rows[pr];
        let mut out: SparseRowMod = Vec::with_capacity(row.len() + other.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < row.len() || j < other.len() {
            if j >= other.len() || (i < row.len() && row[i].0 < other[j].0) {
                out.push(row[i].clone());
                i += 1;
            } else if i >= row.len() || other[j].0 < row[i].0 {
                let v = p - mulmod(factor, other[j].1, p);
                if v != 0 {
                    out.push((other[j].0, v));
                }
                j += 1;
            } else {
                let v = (row[i].1 + p - mulmod(factor, other[j].1, p)) % p;
                if v != 0 {
                    out.push((row[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
        *row = out;
    }
}

/// Streaming row echelon with unit pivots, processing rows sparsest-first.
pub fn echelon(exact_rows: &[ExactRow], ncols: usize, p: u64) -> Echelon {
    let mut order: Vec<usize> = (0..exact_rows.len()).collect();
    order.sort_by_key(|&i| (exact_rows[i].len(), i));
    let mut rows: Vec<SparseRowMod> = Vec::new();
    let mut origin: Vec<u32> = Vec::new();
    let mut recipe: Vec<Vec<(u32, u64)>> = Vec::new();
    let mut norm_inv: Vec<u64> = Vec::new();
    let mut pivot_of_col: Vec<Option<u32>> = vec![None; ncols];
    for idx in order {
        let mut row: SparseRowMod = exact_rows[idx]
            .iter()
            .filter_map(|(c, v)| {
                let m = bigint_mod(v, p);
                if m == 0 {
                    None
                } else {
                    Some((*c, m))
                }
            })
            .collect();
        if row.is_empty() {
            continue;
        }
        let mut rec = Vec::new();
        reduce_row(&mut row, &rows, &pivot_of_col, p, Some(&mut rec));
        if row.is_empty() {
            continue;
        }
        // normalize to unit pivot
        let inv = invmod(row[0].1, p);
        for e in row.iter_mut() {
            e.1 = mulmod(e.1, inv, p);
        }
        let lead = row[0].0;
        pivot_of_col[lead as usize] = Some(rows.len() as u32);
        rows.push(row);
        origin.push(idx as u32);
        recipe.push(rec);
        norm_inv.push(inv);
    }
    let free_cols = (0..ncols as u32)
        .filter(|&c| pivot_of_col[c as usize].is_none())
        .collect();
    Echelon {
        p,
        rows,
        pivot_of_col,
        origin,
        recipe,
        norm_inv,
        free_cols,
    }
}

impl Echelon {
    /// Kernel vector (mod p) with the given free column set to one; returns
    /// the values of all columns.
    pub fn kernel_vector(&self, free_col: u32, ncols: usize) -> Vec<u64> {
        let mut x = vec![0u64; ncols];
        x[free_col as usize] = 1;
        // back-substitute pivots in descending pivot-column order
        let mut pivots: Vec<(u32, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| (row[0].0, r))
            .collect();
        pivots.sort_by(|a, b| b.0.cmp(&a.0));
        for (pc, r) in pivots {
            let mut acc = 0u64;
            for &(c, v) in &self.rows[r][1..] {
                if x[c as usize] != 0 {
                    acc = (acc + mulmod(v, x[c as usize], self.p)) % self.p;
                }
            }
            x[pc as usize] = (self.p - acc) % self.p;
        }
        x
    }

    /// Solve the recorded square subsystem `S z = w (mod p)` where `S` is the
    /// pivot-row/pivot-column submatrix. `w` is indexed by pivot row.
    pub fn solve_square(&self, w: &[u64]) -> Vec<u64> {
        let p = self.p;
        let nrows = self.rows.len();
        // forward: apply the recorded eliminations to the right-hand side
        let row_of_col = |c: u32| self.pivot_of_col[c as usize].unwrap() as usize;
        let mut y = w.to_vec();
        for k in 0..nrows {
            let mut v = y[k];
            for &(c, f) in &self.recipe[k] {
                let r = row_of_col(c);
                if y[r] != 0 {
                    v = (v + p - mulmod(f, y[r], p)) % p;
                }
            }
            // undo the unit-pivot normalization of the stored row
            y[k] = mulmod(v, self.norm_inv[k], p);
        }
        // back: U z = y over the pivot columns, descending
        let mut z_of_col: Vec<u64> = vec![0; self.pivot_of_col.len()];
        let mut pivots: Vec<(u32, usize)> = self
            .rows
            .iter()
            .enumerate()
            .map(|(r, row)| (row[0].0, r))
            .collect();
        pivots.sort_by(|a, b| b.0.cmp(&a.0));
        for (pc, r) in pivots {
            let mut acc = y[r];
            for &(c, v) in &self.rows[r][1..] {
                // only pivot columns carry unknowns here
                if self.pivot_of_col[c as usize].is_some() && z_of_col[c as usize] != 0 {
                    acc = (acc + p - mulmod(v, z_of_col[c as usize], p)) % p;
                }
            }
            z_of_col[pc as usize] = acc;
        }
        // emit in pivot-row order
        self.rows.iter().map(|row| z_of_col[row[0].0 as usize]).collect()
    }
}

/// Rational reconstruction of `x mod m`; numerator and denominator bounded
/// by sqrt(m/2).
pub fn rat_reconstruct(x: &BigInt, m: &BigInt) -> Option<Rat> {
    let bound = (m / BigInt::from(2)).sqrt();
    let mut r0 = m.clone();
    let mut r1 = x.mod_floor(m);
    let mut t0 = BigInt::zero();
    let mut t1 = BigInt::one();
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    if t1.is_negative() {
        r1 = -r1;
        t1 = -t1;
    }
    // gcd(n, d) must be 1 for a valid reconstruction
    if r1.gcd(&t1) != BigInt::one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Dixon lifting: exact solution of the recorded square system with exact
/// right-hand side `b` (indexed by pivot row). Returns the pivot-column
/// values as rationals, or `None` when reconstruction fails to stabilize.
pub fn dixon_solve(
    ech: &Echelon,
    exact_rows: &[ExactRow],
    b: &[BigInt],
    max_iters: usize,
) -> Option<Vec<Rat>> {
    let p = ech.p;
    let p_big = BigInt::from(p);
    let nrows = ech.rows.len();
    // restrict exact rows to pivot columns, in pivot-row order
    let is_pivot: Vec<bool> = ech
        .pivot_of_col
        .iter()
        .map(|o| o.is_some())
        .collect();
    let s_rows: Vec<ExactRow> = ech
        .origin
        .iter()
        .map(|&oi| {
            exact_rows[oi as usize]
                .iter()
                .filter(|(c, _)| is_pivot[*c as usize])
                .cloned()
                .collect()
        })
        .collect();
    let col_slot: Vec<usize> = {
        // map column id -> position in pivot-row order
        let mut m = vec![usize::MAX; ech.pivot_of_col.len()];
        for (r, row) in ech.rows.iter().enumerate() {
            m[row[0].0 as usize] = r;
        }
        m
    };
    let mut residual: Vec<BigInt> = b.to_vec();
    let mut numerators: Vec<BigInt> = vec![BigInt::zero(); nrows];
    let mut p_pow = BigInt::one();
    let mut next_check = 8usize;
    for iter in 0..max_iters {
        let w: Vec<u64> = residual.iter().map(|v| bigint_mod(v, p)).collect();
        let z = ech.solve_square(&w);
        // numerators += z * p^iter, indexed by pivot-row order
        for (k, zv) in z.iter().enumerate() {
            if *zv != 0 {
                numerators[k] += &p_pow * BigInt::from(*zv);
            }
        }
        // residual = (residual - S z) / p
        for (k, row) in s_rows.iter().enumerate() {
            let mut acc = std::mem::take(&mut residual[k]);
            for (c, v) in row {
                let slot = col_slot[*c as usize];
                if z[slot] != 0 {
                    acc -= v * BigInt::from(z[slot]);
                }
            }
            debug_assert!((&acc % &p_big).is_zero());
            residual[k] = acc / &p_big;
        }
        p_pow *= &p_big;
        let done = residual.iter().all(|v| v.is_zero());
        if done || iter + 1 >= next_check {
            next_check = next_check * 2;
            if let Some(sol) = try_reconstruct(&numerators, &p_pow, done) {
                // exact check: S sol == b
                if check_solution(&s_rows, &col_slot, &sol, b, ech) {
                    return Some(sol);
                }
            }
            if done {
                return None;
            }
        }
    }
    None
}

fn try_reconstruct(numerators: &[BigInt], modulus: &BigInt, exact: bool) -> Option<Vec<Rat>> {
    if exact {
        // residual hit zero: numerators are the exact integer solution
        return Some(
            numerators
                .iter()
                .map(|v| Rat::from_integer(v.clone()))
                .collect(),
        );
    }
    numerators
        .iter()
        .map(|v| rat_reconstruct(v, modulus))
        .collect()
}

fn check_solution(
    s_rows: &[ExactRow],
    col_slot: &[usize],
    sol: &[Rat],
    b: &[BigInt],
    _ech: &Echelon,
) -> bool {
    for (k, row) in s_rows.iter().enumerate() {
        let mut acc = Rat::zero();
        for (c, v) in row {
            let slot = col_slot[*c as usize];
            if !sol[slot].is_zero() {
                acc += Rat::from_integer(v.clone()) * &sol[slot];
            }
        }
        if acc != Rat::from_integer(b[k].clone()) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn row(entries: &[(u32, i64)]) -> ExactRow {
        entries
            .iter()
            .map(|&(c, v)| (c, BigInt::from(v)))
            .collect()
    }

    #[test]
    fn primes_are_prime() {
        for k in 0..4 {
            let p = nth_prime(k);
            assert!(is_prime_u64(p));
            assert!(p > 1 << 61);
        }
    }

    #[test]
    fn rational_reconstruction_roundtrip() {
        let p = BigInt::from(nth_prime(0));
        let m = &p * &p;
        // x = 22/7 mod m
        let seven_inv = {
            // modular inverse via extended euclid on BigInt
            let mut t0 = BigInt::zero();
            let mut t1 = BigInt::one();
            let mut r0 = m.clone();
            let mut r1 = BigInt::from(7);
            while !r1.is_zero() {
                let q = &r0 / &r1;
                let r2 = &r0 - &q * &r1;
                let t2 = &t0 - &q * &t1;
                r0 = r1;
                r1 = r2;
                t0 = t1;
                t1 = t2;
            }
            t0.mod_floor(&m)
        };
        let x = (BigInt::from(22) * seven_inv).mod_floor(&m);
        assert_eq!(rat_reconstruct(&x, &m), Some(rat(22, 7)));
    }

    #[test]
    fn kernel_and_dixon() {
        // x0 + 2 x1 - x2 = 0 ; 3 x1 + x2 = 0  -> kernel dir with x2 free
        let rows = vec![row(&[(0, 1), (1, 2), (2, -1)]), row(&[(1, 3), (2, 1)])];
        let p = nth_prime(0);
        let ech = echelon(&rows, 3, p);
        assert_eq!(ech.rows.len(), 2);
        assert_eq!(ech.free_cols.len(), 1);
        let free = ech.free_cols[0];
        let x = ech.kernel_vector(free, 3);
        // verify mod p
        for r in &rows {
            let mut acc: u64 = 0;
            for (c, v) in r {
                acc = (acc + mulmod(bigint_mod(v, p), x[*c as usize], p)) % p;
            }
            assert_eq!(acc, 0);
        }
        // exact: with x2 = 1: x1 = -1/3, x0 = 1 + 2/3 = 5/3
        let b: Vec<BigInt> = ech
            .origin
            .iter()
            .map(|&oi| {
                rows[oi as usize]
                    .iter()
                    .find(|(c, _)| *c == free)
                    .map(|(_, v)| -v.clone())
                    .unwrap_or_else(BigInt::zero)
            })
            .collect();
        let sol = dixon_solve(&ech, &rows, &b, 64).unwrap();
        // pivot order corresponds to ech.rows; check against known values
        let mut by_col = std::collections::HashMap::new();
        for (k, r) in ech.rows.iter().enumerate() {
            by_col.insert(r[0].0, sol[k].clone());
        }
        assert_eq!(by_col[&0], rat(5, 3));
        assert_eq!(by_col[&1], rat(-1, 3));
    }
}
