//! Telescoping for a single integration variable by Hermite reduction.
//!
//! Work in Q(v)[w] with F made monic in w. Each parameter derivative of
//! A = G/F is reduced modulo d/dw of rational functions to a canonical
//! residue-numerator of degree < deg_w F; the telescoper is the first
//! Q(v)-linear relation among these canonical forms, and the certificate
//! falls out of the reduction steps.

use num_bigint::BigInt;

use crate::algebra::{
    FieldOps, FieldPoly, ParamRationalFunction, Rat, SparsePolynomial, UniPoly, VarSet,
};

use super::TelescopeError;

/// Rational functions in one variable: fraction of `UniPoly`, denominator
/// monic and reduced.
#[derive(Clone, Debug)]
pub struct RatFn {
    num: UniPoly,
    den: UniPoly,
}

impl RatFn {
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "RatFn zero denominator");
        if num.is_zero() {
            return RatFn {
                num,
                den: UniPoly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.deg() > 0 {
            (num.exact_div(&g), den.exact_div(&g))
        } else {
            (num, den)
        };
        let lead = den.leading();
        RatFn {
            num: num.mul_scalar(&lead.recip()),
            den: den.mul_scalar(&lead.recip()),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFn {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    /// d/dv by the quotient rule.
    pub fn derivative(&self) -> Self {
        let dn = self.num.derivative();
        if self.den.deg() == 0 {
            return RatFn::new(dn, self.den.clone());
        }
        let dd = self.den.derivative();
        RatFn::new(
            dn.mul(&self.den).sub(&self.num.mul(&dd)),
            self.den.mul(&self.den),
        )
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.deg() == 0
    }
}

impl PartialEq for RatFn {
    fn eq(&self, other: &Self) -> bool {
        self.num.mul(&other.den) == other.num.mul(&self.den)
    }
}

impl FieldOps for RatFn {
    fn f_zero() -> Self {
        RatFn::from_poly(UniPoly::zero())
    }
    fn f_one() -> Self {
        RatFn::from_poly(UniPoly::one())
    }
    fn f_is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn f_add(&self, o: &Self) -> Self {
        RatFn::new(
            self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn f_sub(&self, o: &Self) -> Self {
        RatFn::new(
            self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            self.den.mul(&o.den),
        )
    }
    fn f_mul(&self, o: &Self) -> Self {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den))
    }
    fn f_neg(&self) -> Self {
        RatFn {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn f_inv(&self) -> Self {
        assert!(!self.num.is_zero(), "inverse of zero rational function");
        RatFn::new(self.den.clone(), self.num.clone())
    }
}

type WPoly = FieldPoly<RatFn>;

/// Convert a multivariate polynomial in {param, int_var} into a dense
/// polynomial in `w` with Q(param) coefficients.
fn to_wpoly(p: &SparsePolynomial, w: &str, v: &str) -> Result<WPoly, TelescopeError> {
    for name in p.vars().names() {
        if name != w && name != v && p.degree_in(name) > 0 {
            return Err(TelescopeError::InvalidInput(format!(
                "hermite backend requires a bivariate integrand, found variable {name}"
            )));
        }
    }
    let coeffs = if p.degree_in(w) == 0 {
        vec![p.clone()]
    } else {
        p.as_univariate_in(w)
    };
    Ok(WPoly::from_coeffs(
        coeffs
            .iter()
            .map(|c| RatFn::from_poly(c.to_unipoly()))
            .collect(),
    ))
}

fn wpoly_dw(p: &WPoly) -> WPoly {
    p.derivative()
}

fn wpoly_dv(p: &WPoly) -> WPoly {
    WPoly::from_coeffs(p.coeffs().iter().map(|c| c.derivative()).collect())
}

/// Outcome of one Hermite reduction: canonical residue numerator (deg < deg
/// F), polynomial part, and certificate numerators per pole order.
struct Reduced {
    residue: WPoly,
    poly_part: WPoly,
    /// certificate contribution: numerator at pole order k (index k-1)
    cert: Vec<WPoly>,
}

struct HermiteCtx {
    f_monic: WPoly,
    f_w: WPoly,
    /// Bezout cofactors: sigma*F + tau*F_w = 1
    tau: WPoly,
}

fn reduce(ctx: &HermiteCtx, num: WPoly, pole: u32) -> Reduced {
    let df = ctx.f_monic.deg();
    let mut cert: Vec<WPoly> = vec![WPoly::zero(); pole as usize];
    let mut poly_part = WPoly::zero();
    let mut n = num;
    let mut k = pole;
    while k >= 2 {
        // n = a F + b F_w with deg b < deg F
        let (_, b) = n.mul(&ctx.tau).div_rem(&ctx.f_monic);
        let a = n.sub(&b.mul(&ctx.f_w)).exact_div(&ctx.f_monic);
        let km1 = RatFn::from_poly(UniPoly::constant(Rat::from_integer(BigInt::from(
            (k - 1) as i64,
        ))));
        let inv = km1.f_inv();
        // n/F^k = (a + b'/(k-1)) / F^(k-1) + d/dw( -b/((k-1) F^(k-1)) )
        cert[(k - 2) as usize] = cert[(k - 2) as usize]
            .add(&b.mul_scalar(&inv.f_neg()));
        n = a.add(&wpoly_dw(&b).mul_scalar(&inv));
        k -= 1;
    }
    // pole order one: split off the polynomial part
    let _ = df;
    let (q, r) = n.div_rem(&ctx.f_monic);
    poly_part = poly_part.add(&q);
    Reduced {
        residue: r,
        poly_part,
        cert,
    }
}

/// Antiderivative in w of a polynomial with Q(v) coefficients.
fn integrate_w(p: &WPoly) -> WPoly {
    let mut c = vec![RatFn::f_zero()];
    for (i, a) in p.coeffs().iter().enumerate() {
        let div = RatFn::from_poly(UniPoly::constant(Rat::from_integer(BigInt::from(
            (i + 1) as i64,
        ))));
        c.push(a.f_mul(&div.f_inv()));
    }
    WPoly::from_coeffs(c)
}

pub struct HermiteOutput {
    /// telescoper coefficients as univariate polynomials in the parameter
    pub op_coeffs: Vec<UniPoly>,
    /// certificate numerator B with Q . A = B / F^pole (original F)
    pub cert_numerator: SparsePolynomial,
    pub pole: u32,
}

/// Core routine: telescoper for `A = g/f` integrating out `w` with parameter
/// `v`; both polynomials must involve only `{v, w}`.
pub fn hermite_core(
    f: &SparsePolynomial,
    g: &SparsePolynomial,
    w: &str,
    v: &str,
) -> Result<HermiteOutput, TelescopeError> {
    if f.degree_in(w) == 0 {
        return Err(TelescopeError::InvalidInput(
            "denominator does not involve the integration variable".into(),
        ));
    }
    let f_w_full = to_wpoly(f, w, v)?;
    let lead = f_w_full.leading();
    let f_monic = f_w_full.mul_scalar(&lead.f_inv());
    let f_dw = wpoly_dw(&f_monic);
    let (gcd, _, tau) = f_monic.extended_gcd(&f_dw);
    if gcd.deg() != 0 {
        return Err(TelescopeError::InvalidInput(
            "denominator is not square-free in the integration variable".into(),
        ));
    }
    // normalize bezout to sigma F + tau F_w = 1 exactly
    let unit = gcd.coeff(0);
    let tau = tau.mul_scalar(&unit.f_inv());
    let ctx = HermiteCtx {
        f_monic: f_monic.clone(),
        f_w: f_dw,
        tau,
    };
    // A = G / F_monic
    let g_w = to_wpoly(g, w, v)?;
    let g_scaled = g_w.mul_scalar(&lead.f_inv());

    let df = f_monic.deg();
    // canonical forms and bookkeeping per derivative order
    let mut reduced: Vec<Reduced> = Vec::new();
    // basis for the span of residues with relation tracking
    let mut basis: Vec<(Vec<RatFn>, Vec<RatFn>)> = Vec::new();
    let mut num_i = g_scaled.clone();
    let dv_f = wpoly_dv(&f_monic);
    let mut i = 0usize;
    loop {
        let red = reduce(&ctx, num_i.clone(), (i + 1) as u32);
        let mut vecr: Vec<RatFn> = (0..df).map(|k| red.residue.coeff(k)).collect();
        reduced.push(red);
        // attempt reduction of vecr against the basis
        let mut rep: Vec<RatFn> = (0..=i)
            .map(|j| {
                if j == i {
                    RatFn::f_one()
                } else {
                    RatFn::f_zero()
                }
            })
            .collect();
        for (bv, bc) in &basis {
            // find pivot of bv
            let piv = bv.iter().position(|x| !x.f_is_zero()).unwrap();
            if vecr[piv].f_is_zero() {
                continue;
            }
            let factor = vecr[piv].f_mul(&bv[piv].f_inv());
            for k in 0..df {
                vecr[k] = vecr[k].f_sub(&factor.f_mul(&bv[k]));
            }
            for (k, c) in bc.iter().enumerate() {
                rep[k] = rep[k].f_sub(&factor.f_mul(c));
            }
        }
        if vecr.iter().all(|x| x.f_is_zero()) {
            // relation found: sum_j rep[j] * residue_j = 0
            return assemble(f, v, w, &lead, &reduced, &rep, i);
        }
        basis.push((vecr, rep));
        // next derivative: N_{i+1} = dv(N_i) F - (i+1) N_i dv(F)
        let scale = RatFn::from_poly(UniPoly::constant(Rat::from_integer(BigInt::from(
            (i + 1) as i64,
        ))));
        num_i = wpoly_dv(&num_i)
            .mul(&f_monic)
            .sub(&num_i.mul(&dv_f).mul_scalar(&scale));
        i += 1;
        if i > df + 2 {
            return Err(TelescopeError::InvalidInput(
                "no relation found within the residue dimension bound".into(),
            ));
        }
    }
}

fn assemble(
    f: &SparsePolynomial,
    v: &str,
    w: &str,
    lead: &RatFn,
    reduced: &[Reduced],
    rep: &[RatFn],
    order: usize,
) -> Result<HermiteOutput, TelescopeError> {
    // combined certificate per pole and polynomial part
    let pole = order as u32 + 1;
    let mut cert: Vec<WPoly> = vec![WPoly::zero(); pole as usize];
    let mut poly_part = WPoly::zero();
    for (j, red) in reduced.iter().enumerate() {
        if rep[j].f_is_zero() {
            continue;
        }
        for (k, c) in red.cert.iter().enumerate() {
            cert[k] = cert[k].add(&c.mul_scalar(&rep[j]));
        }
        poly_part = poly_part.add(&red.poly_part.mul_scalar(&rep[j]));
    }
    let poly_int = integrate_w(&poly_part);

    // denominators to clear: from rep coefficients and certificate coeffs
    let mut den_lcm = UniPoly::one();
    let mut absorb = |r: &RatFn| {
        if r.f_is_zero() {
            return;
        }
        let d = r.denominator();
        let g = den_lcm.gcd(d);
        den_lcm = den_lcm.mul(&d.exact_div(&g));
    };
    for r in rep.iter() {
        absorb(r);
    }
    for c in cert.iter().chain(std::iter::once(&poly_int)) {
        for coeff in c.coeffs() {
            absorb(coeff);
        }
    }
    // lead appears with powers up to `pole` when converting F_monic poles to
    // F poles; clear its denominator too (lead is a polynomial ratio)
    for _ in 0..pole {
        absorb(lead);
    }
    let d_clear = RatFn::from_poly(den_lcm.clone());

    // operator coefficients: p_j = den_lcm * rep_j, now polynomials
    let mut op_coeffs = Vec::with_capacity(order + 1);
    for r in rep.iter() {
        let cleared = r.f_mul(&d_clear);
        if !cleared.is_polynomial() {
            return Err(TelescopeError::InvalidInput(
                "denominator clearing failed".into(),
            ));
        }
        op_coeffs.push(cleared.numerator().clone());
    }

    // certificate numerator over original F: sum_k C_k lead^k F^(pole-k)
    // plus the integrated polynomial part times F^pole
    let vars = VarSet::new(vec![v.to_string(), w.to_string()]).union(f.vars());
    let to_sparse = |p: &WPoly| -> Result<SparsePolynomial, TelescopeError> {
        let mut coeffs = Vec::with_capacity(p.coeffs().len().max(1));
        for c in p.coeffs() {
            let cleared = c.f_mul(&d_clear);
            if !cleared.is_polynomial() {
                return Err(TelescopeError::InvalidInput(
                    "denominator clearing failed".into(),
                ));
            }
            coeffs.push(SparsePolynomial::from_unipoly(cleared.numerator(), v));
        }
        if coeffs.is_empty() {
            coeffs.push(SparsePolynomial::zero(vars.clone()));
        }
        Ok(SparsePolynomial::from_univariate_in(w, &coeffs).extend_vars(&vars))
    };
    let f_ext = f.extend_vars(&vars);
    let mut fpow: Vec<SparsePolynomial> = vec![SparsePolynomial::one(vars.clone())];
    for _ in 0..pole {
        let last = fpow.last().unwrap().clone();
        fpow.push(last.mul(&f_ext));
    }
    let mut b = SparsePolynomial::zero(vars.clone());
    for (k0, c) in cert.iter().enumerate() {
        let k = (k0 + 1) as u32;
        if c.coeffs().iter().all(|x| x.f_is_zero()) {
            continue;
        }
        // C_k / F_monic^k = C_k lead^k / F^k
        let mut lifted = c.clone();
        for _ in 0..k {
            lifted = lifted.mul_scalar(lead);
        }
        let sp = to_sparse(&lifted)?;
        b = b.add(&sp.mul(&fpow[(pole - k) as usize]));
    }
    if !poly_int.coeffs().iter().all(|x| x.f_is_zero()) {
        let sp = to_sparse(&poly_int)?;
        b = b.add(&sp.mul(&fpow[pole as usize]));
    }
    Ok(HermiteOutput {
        op_coeffs,
        cert_numerator: b,
        pole,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, VarSet};

    fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
        let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
        parse_polynomial(src, &vs).unwrap()
    }

    #[test]
    fn disk_slice_operator() {
        // A = (d/dx F) x / F for F = 1 - x^2 - y^2, integrate x, param y:
        // expect (1 - y^2) D + y up to scalar
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let g = p("-2*x^2", &["x", "y"]);
        let out = hermite_core(&f, &g, "x", "y").unwrap();
        assert_eq!(out.op_coeffs.len(), 2);
        // ratio check: p1 / p0 == (1-y^2)/y
        let p0 = &out.op_coeffs[0];
        let p1 = &out.op_coeffs[1];
        let y = UniPoly::from_coeffs(vec![crate::algebra::rat(0, 1), crate::algebra::rat(1, 1)]);
        let one_minus_y2 =
            UniPoly::from_coeffs(vec![crate::algebra::rat(1, 1)]).sub(&y.mul(&y));
        assert_eq!(p1.mul(&y), p0.mul(&one_minus_y2));
    }
}
