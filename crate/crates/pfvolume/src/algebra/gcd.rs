//! Multivariate polynomial gcd, content and square-free parts.
//!
//! The gcd is computed by a primitive pseudo-remainder sequence in a chosen
//! main variable, recursing on the coefficient ring for contents. Results are
//! normalized to integer-primitive with positive leading coefficient.

use super::poly::{SparsePolynomial, VarSet};

/// Pseudo-remainder of `f` by `g` as univariate polynomials in `v`
/// (coefficient vectors over the remaining variables). Multiplies by the
/// leading coefficient of `g` once per reduction step, which is similar to
/// the classical pseudo-remainder up to a factor and is harmless here since
/// every caller takes primitive parts afterwards.
pub(crate) fn pseudo_rem(
    f: &[SparsePolynomial],
    g: &[SparsePolynomial],
) -> Vec<SparsePolynomial> {
    let dg = g.len() - 1;
    let lg = &g[dg];
    let mut r: Vec<SparsePolynomial> = f.to_vec();
    loop {
        while r.last().map(|c| c.is_zero()).unwrap_or(false) {
            r.pop();
        }
        if r.len() <= dg {
            return r;
        }
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lg);
        }
        for j in 0..=dg {
            let sub = lr.mul(&g[j]);
            r[dr - dg + j] = r[dr - dg + j].sub(&sub);
        }
        // leading term cancels by construction
        debug_assert!(r[dr].is_zero());
    }
}

pub(crate) fn coeff_gcd(coeffs: &[SparsePolynomial]) -> SparsePolynomial {
    let mut acc: Option<SparsePolynomial> = None;
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = Some(match acc {
            None => c.clone(),
            Some(a) => poly_gcd(&a, c),
        });
        if let Some(a) = &acc {
            if a.is_constant() {
                break;
            }
        }
    }
    acc.unwrap_or_else(|| SparsePolynomial::zero(VarSet::new(vec![])))
}

/// Pick a main variable occurring in both polynomials, preferring the one
/// with the smallest maximum degree; `None` if the supports are disjoint.
fn main_variable(f: &SparsePolynomial, g: &SparsePolynomial) -> Option<String> {
    let vars = f.vars().union(g.vars());
    let mut best: Option<(u32, String)> = None;
    for name in vars.names() {
        let df = f.degree_in(name);
        let dg = g.degree_in(name);
        if df > 0 && dg > 0 {
            let key = df.max(dg);
            if best.as_ref().map(|(k, _)| key < *k).unwrap_or(true) {
                best = Some((key, name.clone()));
            }
        }
    }
    best.map(|(_, n)| n)
}

/// Multivariate gcd over Q, normalized integer-primitive with positive
/// leading coefficient (constant 1 for coprime inputs).
pub fn poly_gcd(f: &SparsePolynomial, g: &SparsePolynomial) -> SparsePolynomial {
    if f.is_zero() {
        return g.primitive_part();
    }
    if g.is_zero() {
        return f.primitive_part();
    }
    if f.is_constant() || g.is_constant() {
        let vars = f.vars().union(g.vars());
        return SparsePolynomial::one(vars);
    }
    let v = match main_variable(f, g) {
        Some(v) => v,
        None => {
            // disjoint supports: gcd of the contents in the shared constants
            let vars = f.vars().union(g.vars());
            // f's coefficients w.r.t. its own variables have gcd = content;
            // with no shared variable the polynomial gcd is a constant.
            let _ = vars;
            // still, a variable-free common factor can only be rational
            return SparsePolynomial::one(f.vars().union(g.vars()));
        }
    };
    let vars = f.vars().union(g.vars());
    let f = f.extend_vars(&vars);
    let g = g.extend_vars(&vars);
    let fu = f.as_univariate_in(&v);
    let gu = g.as_univariate_in(&v);
    let cont_f = coeff_gcd(&fu);
    let cont_g = coeff_gcd(&gu);
    let cont = poly_gcd(&cont_f, &cont_g);
    let ppf: Vec<SparsePolynomial> = fu
        .iter()
        .map(|c| c.exact_div(&cont_f).expect("content division"))
        .collect();
    let ppg: Vec<SparsePolynomial> = gu
        .iter()
        .map(|c| c.exact_div(&cont_g).expect("content division"))
        .collect();
    let (mut a, mut b) = if fu.len() >= gu.len() {
        (ppf, ppg)
    } else {
        (ppg, ppf)
    };
    loop {
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            break;
        }
        // primitive part of r
        let rc = coeff_gcd(&r);
        let r: Vec<SparsePolynomial> = r
            .iter()
            .map(|c| c.exact_div(&rc).expect("primitive part"))
            .collect();
        a = b;
        b = r;
    }
    let pp_gcd = if b.len() == 1 {
        SparsePolynomial::one(vars.clone())
    } else {
        SparsePolynomial::from_univariate_in(&v, &b)
    };
    cont.mul(&pp_gcd).primitive_part()
}

/// Gcd of a large polynomial with a small one, avoiding the content
/// computation on the large operand: one pseudo-reduction collapses the
/// problem to small sizes, and the candidate is certified by exact division.
pub fn gcd_with_small(big: &SparsePolynomial, small: &SparsePolynomial) -> SparsePolynomial {
    if small.is_constant() || big.is_zero() {
        return SparsePolynomial::one(big.vars().union(small.vars()));
    }
    if big.exact_div(small).is_some() {
        return small.primitive_part();
    }
    // pick a variable of the small polynomial
    let v = small
        .vars()
        .names()
        .iter()
        .find(|n| small.degree_in(n) > 0)
        .cloned()
        .expect("nonconstant polynomial has a variable");
    let vars = big.vars().union(small.vars());
    let b = big.extend_vars(&vars);
    let s = small.extend_vars(&vars);
    if b.degree_in(&v) == 0 {
        // v-free big: any common factor is v-free, hence divides the content
        // of small in v; recurse on that content
        let cont = coeff_gcd(&s.as_univariate_in(&v));
        if cont.is_constant() {
            return SparsePolynomial::one(vars);
        }
        return gcd_with_small(&b, &cont);
    }
    let r = pseudo_rem(&b.as_univariate_in(&v), &s.as_univariate_in(&v));
    let r = if r.is_empty() {
        SparsePolynomial::zero(vars.clone())
    } else {
        SparsePolynomial::from_univariate_in(&v, &r)
    };
    if r.is_zero() {
        // small divides lc^k * big; settle with the full algorithm
        return poly_gcd(big, small);
    }
    let g = poly_gcd(small, &r.primitive_part());
    if g.is_constant() {
        return SparsePolynomial::one(vars);
    }
    if big.exact_div(&g).is_some() {
        return g;
    }
    // leading-coefficient interference: fall back to the full algorithm
    poly_gcd(big, small)
}

/// Square-free part: the product of the distinct irreducible factors.
///
/// Computed as `f / gcd(f, df/dx_1, ..., df/dx_n)`, normalized primitive.
pub fn squarefree_part(f: &SparsePolynomial) -> SparsePolynomial {
    assert!(!f.is_zero(), "squarefree_part of zero");
    if f.is_constant() {
        return SparsePolynomial::one(f.vars().clone());
    }
    let mut g = f.clone();
    for v in f.vars().names().iter() {
        if f.degree_in(v) == 0 {
            continue;
        }
        let d = f.derivative(v);
        g = poly_gcd(&g, &d);
        if g.is_constant() {
            return f.primitive_part();
        }
    }
    f.exact_div(&g)
        .expect("gcd divides f")
        .primitive_part()
}

#[cfg(test)]
mod tests {
    use super::super::{parse_polynomial, VarSet};
    use super::*;

    fn p(src: &str, vars: &[&str]) -> SparsePolynomial {
        let vs = VarSet::new(vars.iter().map(|s| s.to_string()).collect());
        parse_polynomial(src, &vs).unwrap()
    }

    #[test]
    fn gcd_simple() {
        let f = p("(x+y)*(x-y)", &["x", "y"]);
        let g = p("(x+y)*(x+2*y)", &["x", "y"]);
        let d = poly_gcd(&f, &g);
        assert_eq!(d, p("x+y", &["x", "y"]));
    }

    #[test]
    fn gcd_coprime() {
        let f = p("x^2+1", &["x", "y"]);
        let g = p("y^2+1", &["x", "y"]);
        assert_eq!(poly_gcd(&f, &g), p("1", &["x", "y"]));
    }

    #[test]
    fn squarefree_examples() {
        // (1-x)^2 (1+x) -> (1-x)(1+x) up to normalization
        let f = p("(1-x)^2*(1+x)", &["x"]);
        let sf = squarefree_part(&f);
        let expect = p("(1-x)*(1+x)", &["x"]).primitive_part();
        assert_eq!(sf, expect);

        // already square-free
        let g = p("1-x^2-y^2", &["x", "y"]);
        assert_eq!(squarefree_part(&g), g.primitive_part());
    }

    #[test]
    fn squarefree_gcd_oracle() {
        // x^3 y + x^2 y^2 = x^2 y (x + y) -> x y (x+y)
        let f = p("x^3*y + x^2*y^2", &["x", "y"]);
        let sf = squarefree_part(&f);
        assert_eq!(sf, p("x*y*(x+y)", &["x", "y"]).primitive_part());
        // oracle: sf divides f, and sf is square-free in the gcd sense
        assert!(f.exact_div(&sf).is_some());
        let sfx = sf.derivative("x");
        let d = poly_gcd(&poly_gcd(&sf, &sfx), &sf.derivative("y"));
        assert!(d.is_constant());
        // idempotence
        assert_eq!(squarefree_part(&sf), sf);
    }
}
