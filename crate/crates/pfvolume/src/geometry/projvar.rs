//! Projection-variable selection: honor a user override, otherwise prefer an
//! axis with a zero-dimensional critical system, then minimal eliminant
//! degree, ties broken by the declared variable order.

use crate::algebra::{squarefree_part, Rat};

use super::eliminate::{critical_system, eliminate_to};
use super::{ConvexBodySpec, GeometryError, TValue};

pub fn projection_variable(
    body: &ConvexBodySpec,
    t: &Rat,
    override_order: Option<&[String]>,
) -> Result<String, GeometryError> {
    if let Some(order) = override_order {
        for v in order {
            if body.variables.contains(v) {
                return Ok(v.clone());
            }
        }
    }
    let deformed = super::deform(body, TValue::Numeric(t.clone()));
    let sf = squarefree_part(&deformed.polynomial);
    let mut best: Option<(bool, usize, usize)> = None; // (bad_dim, deg, order_ix)
    for (ix, v) in body.variables.iter().enumerate() {
        let sys = critical_system(&sf, v);
        let score = match eliminate_to(&sys, v) {
            Ok(r) if r.eliminant.deg() > 0 => {
                // check the other coordinates for collapse to classify
                let mut zero_dim = true;
                for u in body.variables.iter() {
                    if u == v {
                        continue;
                    }
                    match eliminate_to(&sys, u) {
                        Ok(ru) if ru.eliminant.deg() > 0 => {}
                        _ => {
                            zero_dim = false;
                            break;
                        }
                    }
                }
                (!zero_dim, r.eliminant.deg(), ix)
            }
            _ => (true, usize::MAX, ix),
        };
        if best.map(|b| score < b).unwrap_or(true) {
            best = Some(score);
        }
    }
    let (_, _, ix) = best.ok_or_else(|| {
        GeometryError::AmbiguousSelection("no usable projection axis".into())
    })?;
    Ok(body.variables[ix].clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, rat, VarSet};

    fn body(polys: &[&str], vars: &[&str]) -> ConvexBodySpec {
        let names: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        let vs = VarSet::new(names.clone());
        let ps = polys
            .iter()
            .map(|s| parse_polynomial(s, &vs).unwrap())
            .collect();
        ConvexBodySpec::new(ps, names, None)
    }

    #[test]
    fn override_wins() {
        let b = body(
            &["1 - x0^2 - x1^2 - x2^2 - x3^2", "1 - (x0-1)^2 - x1^2 - x2^2 - x3^2"],
            &["x0", "x1", "x2", "x3"],
        );
        let order = vec!["x3".to_string(), "x2".to_string(), "x1".to_string(), "x0".to_string()];
        let v = projection_variable(&b, &rat(1, 100), Some(&order)).unwrap();
        assert_eq!(v, "x3");
    }

    #[test]
    fn symmetric_disk_ties_break_by_order() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        let v = projection_variable(&disk, &rat(1, 4), None).unwrap();
        assert_eq!(v, "x");
    }

    #[test]
    fn degenerate_axis_avoided() {
        // x-axis projection of the two-ball body has a positive-dimensional
        // critical locus in (y, z); the heuristic must avoid x
        let b = body(
            &["1 - x^2 - y^2 - z^2", "1 - (x-1)^2 - y^2 - z^2"],
            &["x", "y", "z"],
        );
        let v = projection_variable(&b, &rat(1, 1000), None).unwrap();
        assert_ne!(v, "x");
    }
}
