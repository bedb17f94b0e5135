//! Telescoper/certificate computation for parametric rational integrands.
//!
//! Given A = g/F, `telescope` finds a univariate operator P in the surviving
//! variable together with certificates Q_j . A = B_j / F^s (poles restricted
//! to powers of F by construction) such that P . A = sum_j d/dw_j (B_j/F^s)
//! holds as an exact rational-function identity. The identity is found as a
//! finite linear system over Q, walked along a search schedule until
//! solvable, and every result is verified unconditionally before it is
//! returned.

mod ansatz;
mod hermite;
mod modp;

use std::time::Instant;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::algebra::{
    squarefree_part, DifferentialOperator, ParamRationalFunction, Rat, SparsePolynomial, VarSet,
};

pub use ansatz::AnsatzProblem;

/// test/bench access to the system builder and the modular solver
pub fn build_system_public(
    prob: &AnsatzProblem,
    order: usize,
    coeff_degree: u32,
    cert_total: u32,
) -> ansatz::BuiltSystem {
    ansatz::build_system(prob, order, coeff_degree, cert_total)
}

pub fn solve_entry_public(
    prob: &AnsatzProblem,
    sys: &ansatz::BuiltSystem,
    prime_index: usize,
) -> Option<ansatz::AnsatzSolution> {
    ansatz::solve_entry(prob, sys, prime_index)
}

#[derive(Debug, Error)]
pub enum TelescopeError {
    #[error("no telescoper found within the configured bounds; attempts: {attempts:?}")]
    NotFoundWithinBounds { attempts: Vec<(usize, u32, u32)> },
    #[error("only degenerate telescopers (order zero) exist for this integrand")]
    DegenerateTelescoper,
    #[error("invalid telescoping input: {0}")]
    InvalidInput(String),
}

/// Bounds for the undetermined-coefficient search.
#[derive(Debug, Clone)]
pub struct AnsatzConfig {
    pub max_order: usize,
    pub max_coeff_degree: u32,
    pub max_certificate_degree: u32,
    /// explicit (order, coeff_degree, certificate_degree) schedule; when
    /// empty, a default ladder is generated and sorted by
    /// (order, coeff_degree + certificate_degree)
    pub search_schedule: Vec<(usize, u32, u32)>,
}

impl Default for AnsatzConfig {
    fn default() -> Self {
        AnsatzConfig {
            max_order: 8,
            max_coeff_degree: 24,
            max_certificate_degree: 4096,
            search_schedule: Vec::new(),
        }
    }
}

impl AnsatzConfig {
    /// Derived total-degree bound for the certificate numerators of grade 0
    /// at a given order and coefficient degree.
    fn derived_cert_degree(
        f: &SparsePolynomial,
        g: &SparsePolynomial,
        order: usize,
        coeff_degree: u32,
    ) -> u32 {
        coeff_degree + g.total_degree() + (order as u32) * f.total_degree() + 1
    }

    fn schedule_for(&self, f: &SparsePolynomial, g: &SparsePolynomial) -> Vec<(usize, u32, u32)> {
        if !self.search_schedule.is_empty() {
            return self.search_schedule.clone();
        }
        let ladder: Vec<u32> = vec![1, 2, 4, 6, 8, 12, 16, 18, 20, 24];
        let mut out = Vec::new();
        for r in 1..=self.max_order {
            for &d in ladder.iter().filter(|&&d| d <= self.max_coeff_degree) {
                let c = Self::derived_cert_degree(f, g, r, d).min(self.max_certificate_degree);
                out.push((r, d, c));
            }
        }
        out.sort_by_key(|&(r, d, c)| (r, d as u64 + c as u64));
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct SearchStats {
    /// (order, coeff_degree, certificate_degree) triples that were tried
    pub attempts: Vec<(usize, u32, u32)>,
    pub backend: &'static str,
    pub millis: u128,
}

/// Raw data of the verified identity, kept for fast exact re-verification.
#[derive(Debug, Clone)]
pub struct RawIdentity {
    pub f: SparsePolynomial,
    pub g: SparsePolynomial,
    pub int_vars: Vec<String>,
    pub param: String,
    pub pole: u32,
    pub numerators: Vec<SparsePolynomial>,
    pub op_coeffs: Vec<SparsePolynomial>,
}

#[derive(Debug, Clone)]
pub struct TelescoperResult {
    pub telescoper: DifferentialOperator,
    /// Q_j . A, one per integration variable, denominators powers of F
    pub certificates: Vec<ParamRationalFunction>,
    pub verified: bool,
    pub search_stats: SearchStats,
    pub(crate) raw: Option<RawIdentity>,
}

/// First-order annihilating operator data `A d_var - (d_var . A)` from the
/// rank-one annihilator of a rational function.
#[derive(Debug, Clone)]
pub struct AnnihilatorGenerator {
    pub var: String,
    /// coefficient of the derivation (the function A itself)
    pub lead: ParamRationalFunction,
    /// order-zero coefficient: -(d_var . A)
    pub constant: ParamRationalFunction,
}

impl AnnihilatorGenerator {
    /// Exact check that the generator annihilates `a`.
    pub fn annihilates(&self, a: &ParamRationalFunction) -> bool {
        let da = a.derivative(&self.var);
        self.lead.mul(&da).add(&self.constant.mul(a)).is_zero()
    }
}

/// Generators `A d_alpha - (d_alpha . A)` for every variable of A.
pub fn annihilator_generators(a: &ParamRationalFunction) -> Vec<AnnihilatorGenerator> {
    assert!(!a.is_zero(), "annihilator of zero");
    let vars = a.vars();
    vars.names()
        .iter()
        .map(|v| AnnihilatorGenerator {
            var: v.clone(),
            lead: a.clone(),
            constant: a.derivative(v).neg(),
        })
        .collect()
}

fn involves(a: &ParamRationalFunction, var: &str) -> bool {
    a.numerator().degree_in(var) > 0 || a.denominator().degree_in(var) > 0
}

fn trivial_result(
    a: &ParamRationalFunction,
    int_vars: &[String],
    param: &str,
    order: usize,
    backend: &'static str,
) -> TelescoperResult {
    let pvs = VarSet::new(vec![param.to_string()]);
    let mut coeffs = vec![SparsePolynomial::zero(pvs.clone()); order + 1];
    coeffs[order] = SparsePolynomial::one(pvs);
    let telescoper = DifferentialOperator::new(param, coeffs);
    let zero = ParamRationalFunction::zero(a.vars());
    TelescoperResult {
        telescoper,
        certificates: vec![zero; int_vars.len()],
        verified: true,
        search_stats: SearchStats {
            attempts: vec![],
            backend,
            millis: 0,
        },
        raw: None,
    }
}

/// Telescoper search for `A` integrating out `int_vars`, surviving `param`.
pub fn telescope(
    a: &ParamRationalFunction,
    int_vars: &[String],
    param: &str,
    config: &AnsatzConfig,
) -> Result<TelescoperResult, TelescopeError> {
    let start = Instant::now();
    if a.is_zero() {
        return Err(TelescopeError::InvalidInput("zero integrand".into()));
    }
    // parameter absent: D_param annihilates A directly
    if !involves(a, param) {
        return Ok(trivial_result(a, int_vars, param, 1, "ansatz"));
    }
    // polynomial integrand: D^(deg+1) annihilates it
    if a.is_polynomial() {
        let d = a.numerator().degree_in(param) as usize;
        return Ok(trivial_result(a, int_vars, param, d + 1, "ansatz"));
    }
    let f = a.denominator().clone();
    let sf = squarefree_part(&f);
    if sf.total_degree() != f.total_degree() {
        return Err(TelescopeError::InvalidInput(
            "integrand denominator is not square-free".into(),
        ));
    }
    let g = a.numerator().clone();
    let prob = AnsatzProblem::new(&f, &g, int_vars, param);
    let scaling = prob.scaling(&g, &f);
    let schedule = config.schedule_for(&prob.f, &prob.g);
    let trace = std::env::var("PFVOLUME_TRACE").is_ok();
    let mut attempts = Vec::new();
    for (r, d, c) in schedule {
        attempts.push((r, d, c));
        let t_entry = Instant::now();
        let sys = ansatz::build_system(&prob, r, d, c);
        if trace {
            eprintln!(
                "[telescope] entry r={r} D={d} cert={c}: rows={} cols={} built in {:?}",
                sys.rows.len(),
                sys.ncols,
                t_entry.elapsed()
            );
        }
        for prime_index in 0..3 {
            let t_solve = Instant::now();
            let sol = match ansatz::solve_entry(&prob, &sys, prime_index) {
                Some(s) => s,
                None => {
                    if trace {
                        eprintln!("[telescope]   no kernel ({:?})", t_solve.elapsed());
                    }
                    break; // no kernel direction with operator part
                }
            };
            if trace {
                eprintln!("[telescope]   solved in {:?}", t_solve.elapsed());
            }
            if ansatz::verify_raw(&prob.f, &prob.g, int_vars, param, &sol) {
                let mut result = finish_ansatz(&prob, sol, int_vars, param, &scaling);
                result.search_stats.attempts = attempts;
                result.search_stats.millis = start.elapsed().as_millis();
                if result.telescoper.order() == 0 {
                    return Err(TelescopeError::DegenerateTelescoper);
                }
                return Ok(result);
            }
            // verification failure points at an unlucky prime; retry
        }
    }
    Err(TelescopeError::NotFoundWithinBounds { attempts })
}

fn finish_ansatz(
    prob: &AnsatzProblem,
    sol: ansatz::AnsatzSolution,
    int_vars: &[String],
    param: &str,
    scaling: &Rat,
) -> TelescoperResult {
    // normalize by the common content of the operator coefficients
    let mut content = Rat::from_integer(0.into());
    for c in &sol.op_coeffs {
        if !c.is_zero() {
            let cc = c.content();
            content = gcd_rat(&content, &cc);
        }
    }
    if content.is_zero() {
        content = Rat::from_integer(1.into());
    }
    if sol
        .op_coeffs
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .and_then(|c| c.leading().map(|(_, v)| v.is_negative()))
        .unwrap_or(false)
    {
        content = -content;
    }
    let inv = content.recip();
    let op_coeffs: Vec<SparsePolynomial> =
        sol.op_coeffs.iter().map(|c| c.mul_scalar(&inv)).collect();
    let telescoper = DifferentialOperator::new(param, op_coeffs.clone());
    // certificates for the original A: divide by the numerator scaling
    let cert_scale = &inv / scaling;
    let certificates: Vec<ParamRationalFunction> = sol
        .cert_numerators
        .iter()
        .map(|b| {
            ParamRationalFunction::with_power_denominator(
                b.mul_scalar(&cert_scale),
                &prob.f,
                sol.pole_order,
            )
        })
        .collect();
    let raw = RawIdentity {
        f: prob.f.clone(),
        g: prob.g.clone(),
        int_vars: int_vars.to_vec(),
        param: param.to_string(),
        pole: sol.pole_order,
        numerators: sol
            .cert_numerators
            .iter()
            .map(|b| b.mul_scalar(&inv))
            .collect(),
        op_coeffs,
    };
    TelescoperResult {
        telescoper,
        certificates,
        verified: true,
        search_stats: SearchStats {
            attempts: vec![],
            backend: "ansatz",
            millis: 0,
        },
        raw: Some(raw),
    }
}

fn gcd_rat(a: &Rat, b: &Rat) -> Rat {
    use num_integer::Integer;
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    Rat::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

/// Hermite-reduction fast path: exactly one integration variable.
pub fn hermite_telescope(
    a: &ParamRationalFunction,
    int_var: &str,
    param: &str,
) -> Result<TelescoperResult, TelescopeError> {
    let start = Instant::now();
    if a.is_zero() {
        return Err(TelescopeError::InvalidInput("zero integrand".into()));
    }
    if !involves(a, param) {
        return Ok(trivial_result(
            a,
            &[int_var.to_string()],
            param,
            1,
            "hermite",
        ));
    }
    if a.is_polynomial() {
        let d = a.numerator().degree_in(param) as usize;
        return Ok(trivial_result(
            a,
            &[int_var.to_string()],
            param,
            d + 1,
            "hermite",
        ));
    }
    let f = a.denominator().clone();
    let g = a.numerator().clone();
    let out = hermite::hermite_core(&f, &g, int_var, param)?;
    let op_polys: Vec<SparsePolynomial> = out
        .op_coeffs
        .iter()
        .map(|c| SparsePolynomial::from_unipoly(c, param))
        .collect();
    let mut content = Rat::from_integer(0.into());
    for c in &op_polys {
        if !c.is_zero() {
            content = gcd_rat(&content, &c.content());
        }
    }
    if content.is_zero() {
        content = Rat::from_integer(1.into());
    }
    if op_polys
        .iter()
        .rev()
        .find(|c| !c.is_zero())
        .and_then(|c| c.leading().map(|(_, v)| v.is_negative()))
        .unwrap_or(false)
    {
        content = -content;
    }
    let inv = content.recip();
    let op_polys: Vec<SparsePolynomial> = op_polys.iter().map(|c| c.mul_scalar(&inv)).collect();
    let telescoper = DifferentialOperator::new(param, op_polys.clone());
    let b = out.cert_numerator.mul_scalar(&inv);
    let certificates = vec![ParamRationalFunction::with_power_denominator(
        b.clone(),
        &f,
        out.pole,
    )];
    let raw = RawIdentity {
        f: f.clone(),
        g,
        int_vars: vec![int_var.to_string()],
        param: param.to_string(),
        pole: out.pole,
        numerators: vec![b],
        op_coeffs: op_polys,
    };
    let mut result = TelescoperResult {
        telescoper,
        certificates,
        verified: false,
        search_stats: SearchStats {
            attempts: vec![],
            backend: "hermite",
            millis: start.elapsed().as_millis(),
        },
        raw: Some(raw),
    };
    if !verify(&mut result, a, &[int_var.to_string()]) {
        return Err(TelescopeError::InvalidInput(
            "hermite reduction produced an unverifiable identity".into(),
        ));
    }
    Ok(result)
}

/// Exact verification: the identity `P.A = sum_j d_j (Q_j.A)` holds and all
/// certificate denominators divide a power of F. Sets `verified`.
pub fn verify(
    result: &mut TelescoperResult,
    a: &ParamRationalFunction,
    int_vars: &[String],
) -> bool {
    let f = a.denominator();
    // pole restriction first
    for cert in &result.certificates {
        if !cert.poles_within(f) {
            result.verified = false;
            return false;
        }
    }
    let ok = match &result.raw {
        Some(raw) if raw_matches(raw, a) => {
            let sol = ansatz::AnsatzSolution {
                op_coeffs: raw.op_coeffs.clone(),
                cert_numerators: raw.numerators.clone(),
                pole_order: raw.pole,
            };
            ansatz::verify_raw(&raw.f, &raw.g, &raw.int_vars, &raw.param, &sol)
        }
        _ => {
            // generic path: exact rational-function arithmetic
            let mut acc = result.telescoper.apply(a);
            for (j, cert) in result.certificates.iter().enumerate() {
                acc = acc.sub(&cert.derivative(&int_vars[j]));
            }
            acc.is_zero()
        }
    };
    result.verified = ok;
    ok
}

fn raw_matches(raw: &RawIdentity, a: &ParamRationalFunction) -> bool {
    // raw.g / raw.f must equal a up to a scalar absorbed in the certificates
    let lhs = raw.g.mul(a.denominator());
    let rhs = raw.f.mul(a.numerator());
    if lhs.is_zero() || rhs.is_zero() {
        return lhs.is_zero() && rhs.is_zero();
    }
    let c1 = lhs.content();
    let c2 = rhs.content();
    lhs.mul_scalar(&c1.recip()) == rhs.mul_scalar(&c2.recip())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat};

    fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
        let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
        parse_polynomial(src, &vs).unwrap()
    }

    fn slice_integrand(f: &SparsePolynomial, dvar: &str) -> ParamRationalFunction {
        let g = f
            .derivative(dvar)
            .mul(&SparsePolynomial::var(f.vars().clone(), dvar));
        ParamRationalFunction::new(g, f.clone())
    }

    #[test]
    fn annihilator_generator_examples() {
        // A = 1/(1-x): generator for x applied to A vanishes
        let a = ParamRationalFunction::new(p("1", &["x"]), p("1-x", &["x"]));
        for g in annihilator_generators(&a) {
            assert!(g.annihilates(&a), "generator {} fails", g.var);
        }
        // A = -2x^2/(1-x^2-y^2)
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let a2 = ParamRationalFunction::new(p("-2*x^2", &["x", "y"]), f);
        for g in annihilator_generators(&a2) {
            assert!(g.annihilates(&a2));
        }
        // constant A
        let c = ParamRationalFunction::from_poly(p("3", &["x"]));
        for g in annihilator_generators(&c) {
            assert!(g.annihilates(&c));
        }
    }

    #[test]
    fn trivial_paths() {
        // A = x, param t absent: P = D_t, zero certificates
        let a = ParamRationalFunction::from_poly(p("x", &["t", "x"]));
        let r = telescope(&a, &["x".to_string()], "t", &AnsatzConfig::default()).unwrap();
        assert_eq!(r.telescoper.order(), 1);
        assert!(r.certificates.iter().all(|c| c.is_zero()));
        assert!(r.verified);
    }

    #[test]
    fn disk_slice_via_hermite() {
        // F = 1 - x^2 - y^2; expect P proportional to (1-y^2) D + y
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let a = slice_integrand(&f, "x");
        let mut r = hermite_telescope(&a, "x", "y").unwrap();
        assert!(r.verified);
        assert_eq!(r.telescoper.order(), 1);
        let coeffs = r.telescoper.coeffs_unipoly();
        let y = crate::algebra::UniPoly::from_coeffs(vec![rat(0, 1), rat(1, 1)]);
        let omy2 = crate::algebra::UniPoly::from_coeffs(vec![rat(1, 1)]).sub(&y.mul(&y));
        assert_eq!(coeffs[1].mul(&y), coeffs[0].mul(&omy2));
        assert!(verify(&mut r, &a, &["x".to_string()]));
    }

    #[test]
    fn lp_ball_slice_operator_small() {
        // F = 1 - x^4 - y^4: expect P ~ (1-y^4) D + y^3 (n=2, p=4)
        let f = p("1 - x^4 - y^4", &["x", "y"]);
        let a = slice_integrand(&f, "x");
        let r = hermite_telescope(&a, "x", "y").unwrap();
        assert!(r.verified);
        assert_eq!(r.telescoper.order(), 1);
        let coeffs = r.telescoper.coeffs_unipoly();
        let y = crate::algebra::UniPoly::from_coeffs(vec![rat(0, 1), rat(1, 1)]);
        let y3 = y.pow(3);
        let omy4 = crate::algebra::UniPoly::one().sub(&y.pow(4));
        assert_eq!(coeffs[1].mul(&y3), coeffs[0].mul(&omy4));
    }

    #[test]
    fn ansatz_matches_hermite_on_disk() {
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let a = slice_integrand(&f, "x");
        let r = telescope(&a, &["x".to_string()], "y", &AnsatzConfig::default()).unwrap();
        assert!(r.verified);
        assert_eq!(r.telescoper.order(), 1);
        let coeffs = r.telescoper.coeffs_unipoly();
        let y = crate::algebra::UniPoly::from_coeffs(vec![rat(0, 1), rat(1, 1)]);
        let omy2 = crate::algebra::UniPoly::from_coeffs(vec![rat(1, 1)]).sub(&y.mul(&y));
        assert_eq!(coeffs[1].mul(&y), coeffs[0].mul(&omy2));
    }

    #[test]
    fn ansatz_two_int_vars_ball3() {
        // F = 1 - x^2 - y^2 - z^2, integrate {x, y}, param z:
        // expect P ~ (1-z^2) D + 2z
        let f = p("1 - x^2 - y^2 - z^2", &["x", "y", "z"]);
        let a = slice_integrand(&f, "x");
        let r = telescope(
            &a,
            &["x".to_string(), "y".to_string()],
            "z",
            &AnsatzConfig::default(),
        )
        .unwrap();
        assert!(r.verified);
        assert_eq!(r.telescoper.order(), 1);
        let coeffs = r.telescoper.coeffs_unipoly();
        let z = crate::algebra::UniPoly::from_coeffs(vec![rat(0, 1), rat(1, 1)]);
        let two_z = z.mul_scalar(&rat(2, 1));
        let omz2 = crate::algebra::UniPoly::one().sub(&z.mul(&z));
        assert_eq!(coeffs[1].mul(&two_z), coeffs[0].mul(&omz2));
    }

    #[test]
    fn spurious_pole_decomposition_rejected() {
        // certificates with poles outside F are rejected even though the
        // rational identity itself holds
        let vars = ["x1", "x2", "x3", "x4"];
        let f = p("1 - x1^2 - x2^2 - x3^2 - x4^2", &vars);
        let a = ParamRationalFunction::new(p("-2*x1^2", &vars), f.clone());
        let u = p("x4^2 + x1^2 - 1", &vars);
        let q1 = ParamRationalFunction::new(p("2*x1^3", &vars), f.clone());
        let q2 = ParamRationalFunction::new(p("2*x1^4*x2", &vars), f.mul(&u));
        let q3 = ParamRationalFunction::new(p("2*x1^4*x3", &vars), f.mul(&u));
        let pvs = VarSet::new(vec!["x4".to_string()]);
        let telescoper =
            DifferentialOperator::new("x4", vec![SparsePolynomial::constant(pvs, rat(-3, 1))]);
        // identity check by direct arithmetic
        let lhs = telescoper.apply(&a);
        let div = q1
            .derivative("x1")
            .add(&q2.derivative("x2"))
            .add(&q3.derivative("x3"));
        assert!(lhs.sub(&div).is_zero(), "printed decomposition must hold");
        let mut result = TelescoperResult {
            telescoper,
            certificates: vec![q1, q2, q3],
            verified: false,
            search_stats: SearchStats::default(),
            raw: None,
        };
        let ok = verify(
            &mut result,
            &a,
            &["x1".to_string(), "x2".to_string(), "x3".to_string()],
        );
        assert!(!ok, "spurious poles must be rejected");
    }

    #[test]
    fn zero_telescoper_rejected() {
        // P nonzero with Q = 0 and A != 0 cannot verify
        let f = p("1 - x^2 - y^2", &["x", "y"]);
        let a = slice_integrand(&f, "x");
        let pvs = VarSet::new(vec!["y".to_string()]);
        let mut result = TelescoperResult {
            telescoper: DifferentialOperator::new(
                "y",
                vec![
                    SparsePolynomial::zero(pvs.clone()),
                    SparsePolynomial::one(pvs),
                ],
            ),
            certificates: vec![ParamRationalFunction::zero(a.vars())],
            verified: false,
            search_stats: SearchStats::default(),
            raw: None,
        };
        assert!(!verify(&mut result, &a, &["x".to_string()]));
    }
}
