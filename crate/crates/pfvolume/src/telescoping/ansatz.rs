//! Bounded-ansatz telescoper search.
//!
//! For an integrand A = g/F the search looks for P = sum_i p_i(v) D_v^i and
//! polynomial certificate numerators B_j with
//!
//!     sum_i p_i h_i F^(s-i)  =  sum_j ( F dB_j/dw_j - s B_j dF/dw_j ),
//!
//! where h_i is the numerator of the i-th v-derivative of A over F^(i+1) and
//! s is the operator order. Clearing F^(s+1) and equating coefficients gives
//! a sparse homogeneous linear system over Q; certificate numerators are
//! searched in the graded basis B_j = sum_m B_{j,m} F^m, which keeps the
//! unknown count near the true certificate size. Systems are solved
//! modularly and lifted to exact rationals, and every hit is verified
//! unconditionally by exact polynomial arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Monomial, Rat, SparsePolynomial, VarSet};

use super::modp::{self, ExactRow};

pub struct AnsatzProblem {
    pub f: SparsePolynomial,
    pub g: SparsePolynomial,
    pub int_vars: Vec<String>,
    pub param: String,
    /// parameter enters F linearly with constant derivative (deformation
    /// parameter); certificate monomials then omit the parameter
    pub deformation_mode: bool,
    pub vars: VarSet,
}

impl AnsatzProblem {
    pub fn new(
        f: &SparsePolynomial,
        g: &SparsePolynomial,
        int_vars: &[String],
        param: &str,
    ) -> Self {
        // normalize to integer coefficients: scaling g scales the integrand
        // linearly and is undone by the caller; scaling F is absorbed into
        // the certificate numerators
        let f_c = f.content();
        let f_int = f.mul_scalar(&f_c.recip());
        let g_scaled = g.mul_scalar(&f_c.recip());
        let mut den = BigInt::one();
        for (_, c) in g_scaled.terms() {
            den = den.lcm(c.denom());
        }
        let g_int = g_scaled.mul_scalar(&Rat::from_integer(den));
        let vars = f_int
            .vars()
            .union(g_int.vars())
            .union(&VarSet::new(vec![param.to_string()]));
        let f_int = f_int.extend_vars(&vars);
        let g_int = g_int.extend_vars(&vars);
        let df = f_int.derivative(param);
        let deformation_mode = f_int.degree_in(param) == 1 && df.is_constant();
        AnsatzProblem {
            f: f_int,
            g: g_int,
            int_vars: int_vars.to_vec(),
            param: param.to_string(),
            deformation_mode,
            vars,
        }
    }

    /// The scalar by which `g` was multiplied during normalization; the
    /// found certificates must be divided by it to match the original A.
    pub fn scaling(&self, original_num: &SparsePolynomial, original_den: &SparsePolynomial) -> Rat {
        // g_int / F_int = scaling * (num/den)
        let _ = original_den;
        // pick any term of g_int and the matching term of original_num
        let (m, c) = self.g.leading().expect("nonzero numerator");
        let c_orig = original_num
            .extend_vars(&self.vars)
            .terms()
            .find(|(mm, _)| *mm == m)
            .map(|(_, cc)| cc.clone())
            .expect("matching leading term");
        // also account for the denominators' ratio
        let (fm, fc) = self.f.leading().expect("nonzero denominator");
        let fc_orig = original_den
            .extend_vars(&self.vars)
            .terms()
            .find(|(mm, _)| *mm == fm)
            .map(|(_, cc)| cc.clone())
            .expect("matching denominator term");
        (c / c_orig) / (fc / fc_orig)
    }
}

/// One solved ansatz: operator coefficients and graded certificate data.
pub struct AnsatzSolution {
    /// p_i as univariate polynomials in the parameter, index = D power
    pub op_coeffs: Vec<SparsePolynomial>,
    /// expanded certificate numerators B_j (one per integration variable)
    pub cert_numerators: Vec<SparsePolynomial>,
    pub pole_order: u32,
}

/// Enumerate monomials over `vars_b` subject to per-variable caps and a
/// total-degree cap, in a deterministic order.
fn enumerate_monomials(per_var: &[u32], total: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; per_var.len()];
    fn rec(i: usize, left: u32, per_var: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == per_var.len() {
            out.push(cur.clone());
            return;
        }
        let cap = per_var[i].min(left);
        for e in 0..=cap {
            cur[i] = e;
            rec(i + 1, left - e, per_var, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, total, per_var, &mut cur, &mut out);
    out
}

pub struct BuiltSystem {
    pub rows: Vec<ExactRow>,
    pub ncols: usize,
    pub n_b_cols: usize,
    /// descriptors for B columns: (int var index, grade, monomial exponents)
    pub b_cols: Vec<(usize, u32, Vec<u32>)>,
    /// descriptors for P columns: (derivative order, parameter power)
    pub p_cols: Vec<(usize, u32)>,
    /// variable names of the B monomial space (subset of all vars)
    pub b_vars: Vec<String>,
}

pub fn build_system(prob: &AnsatzProblem, order: usize, coeff_degree: u32, cert_total: u32) -> BuiltSystem {
    let s = order as u32;
    let f = &prob.f;
    let g = &prob.g;
    let nvars = prob.vars.len();
    // F powers 0..=s
    let mut fpow: Vec<SparsePolynomial> = Vec::with_capacity(order + 1);
    fpow.push(SparsePolynomial::one(prob.vars.clone()));
    for _ in 0..order {
        let last = fpow.last().unwrap().clone();
        fpow.push(last.mul(f));
    }
    // h_i
    let mut hs: Vec<SparsePolynomial> = Vec::with_capacity(order + 1);
    hs.push(g.clone());
    let df_param = f.derivative(&prob.param);
    for i in 0..order {
        let h = hs.last().unwrap();
        let next = h
            .derivative(&prob.param)
            .mul(f)
            .sub(&h.mul(&df_param).mul_scalar(&Rat::from_integer(BigInt::from(i as i64 + 1))));
        hs.push(next);
    }
    // B variable set: integration vars plus parameter unless deformation mode
    let mut b_var_names: Vec<String> = prob.int_vars.clone();
    if !prob.deformation_mode && !b_var_names.iter().any(|v| v == &prob.param) {
        b_var_names.push(prob.param.clone());
    }
    b_var_names.sort();
    b_var_names.dedup();
    // per-variable LHS degree bounds
    let lhs_cap = |u: &str| -> u32 {
        let extra = if u == prob.param { coeff_degree } else { 0 };
        extra + g.degree_in(u) + s * f.degree_in(u)
    };
    // column descriptors
    let mut b_cols: Vec<(usize, u32, Vec<u32>)> = Vec::new();
    for m in 0..s {
        let total_cap = cert_total.saturating_sub(m * f.total_degree());
        if total_cap == 0 && m > 0 {
            break;
        }
        let per_var: Vec<u32> = b_var_names
            .iter()
            .map(|u| {
                let l = lhs_cap(u);
                let used = (m + 1) * f.degree_in(u);
                (l + 1).saturating_sub(used)
            })
            .collect();
        let monos = enumerate_monomials(&per_var, total_cap);
        for (j, _) in prob.int_vars.iter().enumerate() {
            for mono in &monos {
                b_cols.push((j, m, mono.clone()));
            }
        }
    }
    let mut p_cols: Vec<(usize, u32)> = Vec::new();
    for i in 0..=order {
        for d in 0..=coeff_degree {
            p_cols.push((i, d));
        }
    }
    let n_b = b_cols.len();
    let ncols = n_b + p_cols.len();

    // rows: monomial -> (col, coeff) entries
    let mut row_ix: BTreeMap<Monomial, u32> = BTreeMap::new();
    let mut rows_data: Vec<Vec<(u32, Rat)>> = Vec::new();
    fn add_entry(
        mono: Monomial,
        col: u32,
        coeff: Rat,
        rows_data: &mut Vec<Vec<(u32, Rat)>>,
        row_ix: &mut BTreeMap<Monomial, u32>,
    ) {
        if coeff.is_zero() {
            return;
        }
        let next = rows_data.len() as u32;
        let r = *row_ix.entry(mono).or_insert(next);
        if r == next {
            rows_data.push(Vec::new());
        }
        rows_data[r as usize].push((col, coeff));
    }

    // map a b-variable monomial into the full variable space
    let b_slot: Vec<usize> = b_var_names
        .iter()
        .map(|n| prob.vars.index_of(n).unwrap())
        .collect();
    let int_slot: Vec<usize> = prob
        .int_vars
        .iter()
        .map(|n| prob.vars.index_of(n).unwrap())
        .collect();
    let embed = |mono: &[u32]| -> Vec<u32> {
        let mut e = vec![0u32; nvars];
        for (k, &x) in mono.iter().enumerate() {
            e[b_slot[k]] = x;
        }
        e
    };

    // precompute dF/dw_j * F^m
    let mut djf_m: Vec<Vec<SparsePolynomial>> = Vec::new();
    for j in 0..prob.int_vars.len() {
        let dj = f.derivative(&prob.int_vars[j]);
        let mut per_grade = Vec::with_capacity(order);
        for m in 0..s {
            per_grade.push(dj.mul(&fpow[m as usize]));
        }
        djf_m.push(per_grade);
    }

    // B columns (negated so kernel vectors read as (b, p) with the identity
    // sum_p p-col = sum_b b-col)
    for (ci, (j, m, mono)) in b_cols.iter().enumerate() {
        let col = ci as u32;
        let jm = *m as usize;
        let full = embed(mono);
        // term 1: d(mono)/dw_j * F^(m+1)
        let wj = int_slot[*j];
        let e_j = full[wj];
        if e_j > 0 {
            let mut shifted = full.clone();
            shifted[wj] -= 1;
            let factor = Rat::from_integer(BigInt::from(e_j as i64));
            for (fm, fc) in fpow[jm + 1].terms() {
                let mut e = fm.0.clone();
                for (k, &x) in shifted.iter().enumerate() {
                    e[k] += x;
                }
                add_entry(Monomial(e), col, -(fc * &factor), &mut rows_data, &mut row_ix);
            }
        }
        // term 2: (m - s) * mono * dF/dw_j * F^m
        let scale = Rat::from_integer(BigInt::from(*m as i64 - order as i64));
        for (fm, fc) in djf_m[*j][jm].terms() {
            let mut e = fm.0.clone();
            for (k, &x) in full.iter().enumerate() {
                e[k] += x;
            }
            add_entry(Monomial(e), col, -(fc * &scale), &mut rows_data, &mut row_ix);
        }
    }
    // P columns
    let param_slot = prob.vars.index_of(&prob.param).unwrap();
    for (k, (i, d)) in p_cols.iter().enumerate() {
        let col = (n_b + k) as u32;
        let base = hs[*i].mul(&fpow[order - *i]);
        for (bm, bc) in base.terms() {
            let mut e = bm.0.clone();
            e[param_slot] += *d;
            add_entry(Monomial(e), col, bc.clone(), &mut rows_data, &mut row_ix);
        }
    }

    // assemble integer rows (coefficients are integers by construction of
    // the normalized problem, but clear denominators defensively)
    let rows: Vec<ExactRow> = rows_data
        .into_iter()
        .map(|mut entries| {
            entries.sort_by_key(|(c, _)| *c);
            // merge duplicate columns
            let mut merged: Vec<(u32, Rat)> = Vec::with_capacity(entries.len());
            for (c, v) in entries {
                if let Some(last) = merged.last_mut() {
                    if last.0 == c {
                        last.1 += v;
                        continue;
                    }
                }
                merged.push((c, v));
            }
            let mut den = BigInt::one();
            for (_, v) in &merged {
                den = den.lcm(v.denom());
            }
            merged
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(c, v)| (c, v.numer() * (&den / v.denom())))
                .collect()
        })
        .filter(|r: &ExactRow| !r.is_empty())
        .collect();

    BuiltSystem {
        rows,
        ncols,
        n_b_cols: n_b,
        b_cols,
        p_cols,
        b_vars: b_var_names,
    }
}

/// Attempt one schedule entry; returns the exact solution when the system
/// has a kernel direction with a nonzero operator part.
pub fn solve_entry(
    prob: &AnsatzProblem,
    sys: &BuiltSystem,
    prime_index: usize,
) -> Option<AnsatzSolution> {
    let p = modp::nth_prime(prime_index);
    let ech = modp::echelon(&sys.rows, sys.ncols, p);
    // first free P column, in (i, d) order
    let free_p = ech
        .free_cols
        .iter()
        .copied()
        .find(|&c| (c as usize) >= sys.n_b_cols)?;
    // exact lift: solve pivots against -column(free_p)
    let b: Vec<BigInt> = ech
        .origin
        .iter()
        .map(|&oi| {
            sys.rows[oi as usize]
                .iter()
                .find(|(c, _)| *c == free_p)
                .map(|(_, v)| -v.clone())
                .unwrap_or_else(BigInt::zero)
        })
        .collect();
    let height_iters = 4096;
    let sol = modp::dixon_solve(&ech, &sys.rows, &b, height_iters)?;
    // scatter into full coordinate vector
    let mut x: Vec<Rat> = vec![Rat::zero(); sys.ncols];
    x[free_p as usize] = Rat::one();
    for (k, row) in ech.rows.iter().enumerate() {
        x[row[0].0 as usize] = sol[k].clone();
    }
    assemble(prob, sys, &x)
}

fn assemble(prob: &AnsatzProblem, sys: &BuiltSystem, x: &[Rat]) -> Option<AnsatzSolution> {
    let order = sys.p_cols.iter().map(|(i, _)| *i).max().unwrap();
    let s = order as u32;
    // operator coefficients
    let pvs = VarSet::new(vec![prob.param.clone()]);
    let mut op_coeffs: Vec<SparsePolynomial> =
        vec![SparsePolynomial::zero(pvs.clone()); order + 1];
    for (k, (i, d)) in sys.p_cols.iter().enumerate() {
        let v = &x[sys.n_b_cols + k];
        if !v.is_zero() {
            let term =
                SparsePolynomial::from_terms(pvs.clone(), vec![(Monomial(vec![*d]), v.clone())]);
            op_coeffs[*i] = op_coeffs[*i].add(&term);
        }
    }
    if op_coeffs.iter().all(|c| c.is_zero()) {
        return None;
    }
    // certificate numerators: B_j = sum_m B_{j,m} F^m, expanded
    let mut fpow: Vec<SparsePolynomial> = vec![SparsePolynomial::one(prob.vars.clone())];
    for _ in 0..order {
        let last = fpow.last().unwrap().clone();
        fpow.push(last.mul(&prob.f));
    }
    let b_vs = VarSet::new(sys.b_vars.clone());
    let mut numerators = Vec::with_capacity(prob.int_vars.len());
    for j in 0..prob.int_vars.len() {
        let mut acc = SparsePolynomial::zero(prob.vars.clone());
        // group by grade
        for m in 0..s {
            let mut bm_terms: Vec<(Monomial, Rat)> = Vec::new();
            for (k, (jj, mm, mono)) in sys.b_cols.iter().enumerate() {
                if *jj == j && *mm == m && !x[k].is_zero() {
                    bm_terms.push((Monomial(mono.clone()), x[k].clone()));
                }
            }
            if bm_terms.is_empty() {
                continue;
            }
            let bm = SparsePolynomial::from_terms(b_vs.clone(), bm_terms)
                .extend_vars(&prob.vars);
            acc = acc.add(&bm.mul(&fpow[m as usize]));
        }
        numerators.push(acc);
    }
    Some(AnsatzSolution {
        op_coeffs,
        cert_numerators: numerators,
        pole_order: s,
    })
}

/// Exact verification of the cleared identity
/// `sum_i p_i h_i F^(s-i) == sum_j (F dB_j - s B_j dF_j)`.
pub fn verify_raw(
    f: &SparsePolynomial,
    g: &SparsePolynomial,
    int_vars: &[String],
    param: &str,
    sol: &AnsatzSolution,
) -> bool {
    let s = sol.pole_order;
    let order = sol.op_coeffs.len() - 1;
    let mut fpow: Vec<SparsePolynomial> = vec![SparsePolynomial::one(f.vars().clone())];
    for _ in 0..s {
        let last = fpow.last().unwrap().clone();
        fpow.push(last.mul(f));
    }
    let mut hs: Vec<SparsePolynomial> = vec![g.clone()];
    let dfp = f.derivative(param);
    for i in 0..order {
        let h = hs.last().unwrap();
        hs.push(
            h.derivative(param)
                .mul(f)
                .sub(&h.mul(&dfp).mul_scalar(&Rat::from_integer(BigInt::from(i as i64 + 1)))),
        );
    }
    let mut lhs = SparsePolynomial::zero(f.vars().clone());
    for (i, p_i) in sol.op_coeffs.iter().enumerate() {
        if p_i.is_zero() {
            continue;
        }
        lhs = lhs.add(&p_i.mul(&hs[i]).mul(&fpow[(s as usize) - i]));
    }
    let mut rhs = SparsePolynomial::zero(f.vars().clone());
    for (j, bj) in sol.cert_numerators.iter().enumerate() {
        if bj.is_zero() {
            continue;
        }
        let dj = bj.derivative(&int_vars[j]).mul(f);
        let t2 = bj
            .mul(&f.derivative(&int_vars[j]))
            .mul_scalar(&Rat::from_integer(BigInt::from(s as i64)));
        rhs = rhs.add(&dj.sub(&t2));
    }
    lhs == rhs
}
