//! Relevant critical values of an axis projection of the deformed body.
//!
//! Case 1 (zero-dimensional critical locus): per-coordinate eliminants give
//! finitely many candidate points; interval refinement discards spurious
//! combinations, exact sign evaluation filters by membership in C, and
//! convexity guarantees exactly two survivors.
//!
//! Case 2 (positive-dimensional locus, detected through elimination
//! collapse): convexity reduces the selection to a scan of the gaps between
//! consecutive eliminant roots for slice feasibility, certified by exact
//! rational feasible points. This replaces region sampling over the full
//! hypersurface arrangement; a grid-sampling fallback is retained for
//! cross-validation.

use std::cmp::Ordering;

use num_traits::Signed;

use crate::algebra::{
    isolate_real_roots, squarefree_part, Rat, RatInterval, RealAlgebraicNumber, SparsePolynomial,
    UniPoly,
};

use super::eliminate::{critical_system, eliminate_to, eliminate_to_skipping};
use super::interior::{find_interior_point, slice_feasible_point};
use super::{ConvexBodySpec, GeometryError, TValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseUsed {
    ZeroDimensional,
    PositiveDimensional,
}

#[derive(Debug, Clone)]
pub struct CriticalValueResult {
    pub c1: RealAlgebraicNumber,
    pub c2: RealAlgebraicNumber,
    pub eliminant: UniPoly,
    pub case_used: CaseUsed,
}

/// Strategy for the positive-dimensional case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case2Strategy {
    /// slice-feasibility scan across eliminant-root gaps (default)
    ConvexSearch,
    /// coarse grid + membership + projection hull (cross-validation)
    GridSampling,
}

pub fn relevant_critical_values(
    body: &ConvexBodySpec,
    t: &Rat,
    axis: &str,
) -> Result<CriticalValueResult, GeometryError> {
    relevant_critical_values_with(body, t, axis, Case2Strategy::ConvexSearch, 1)
}

pub fn relevant_critical_values_with(
    body: &ConvexBodySpec,
    t: &Rat,
    axis: &str,
    strategy: Case2Strategy,
    seed: u64,
) -> Result<CriticalValueResult, GeometryError> {
    if !t.is_positive() {
        return Err(GeometryError::NonPositiveDeformation(t.clone()));
    }
    let deformed = super::deform(body, TValue::Numeric(t.clone()));
    let sf = squarefree_part(&deformed.polynomial);
    let system = critical_system(&sf, axis);
    // per-coordinate eliminants; collapse anywhere routes to case 2
    let mut coord_elims: Vec<(String, UniPoly)> = Vec::new();
    let mut zero_dimensional = true;
    for v in body.variables.iter() {
        match eliminate_to(&system, v) {
            Ok(r) if r.eliminant.deg() > 0 => {
                coord_elims.push((v.clone(), r.eliminant))
            }
            Ok(_) => {
                // inconsistent critical system in this direction
                zero_dimensional = false;
                break;
            }
            Err(GeometryError::EliminationCollapse) => {
                zero_dimensional = false;
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if zero_dimensional {
        match case1(body, axis, &system, &coord_elims) {
            Ok(r) => return Ok(r),
            Err(GeometryError::AmbiguousSelection(_)) => {
                // fall through to the convex search, which is also sound
            }
            Err(e) => return Err(e),
        }
    }
    case2(body, t, axis, &system, strategy, seed)
}

fn case1(
    body: &ConvexBodySpec,
    axis: &str,
    system: &[SparsePolynomial],
    coord_elims: &[(String, UniPoly)],
) -> Result<CriticalValueResult, GeometryError> {
    let axis_elim = coord_elims
        .iter()
        .find(|(v, _)| v == axis)
        .map(|(_, e)| e.clone())
        .ok_or_else(|| GeometryError::AmbiguousSelection("axis eliminant missing".into()))?;
    // candidate grid
    let mut per_coord_roots: Vec<Vec<RealAlgebraicNumber>> = Vec::new();
    let mut total: usize = 1;
    for (_, e) in coord_elims {
        let roots = isolate_real_roots(e);
        if roots.is_empty() {
            return Err(GeometryError::AmbiguousSelection(
                "a coordinate eliminant has no real roots".into(),
            ));
        }
        total = total.saturating_mul(roots.len());
        per_coord_roots.push(roots);
    }
    if total > 40_000 {
        return Err(GeometryError::AmbiguousSelection(format!(
            "candidate grid too large: {total}"
        )));
    }
    #[derive(Clone, Copy, PartialEq)]
    enum State {
        Pending,
        Excluded,
        Member,
        NonMember,
    }
    struct Candidate {
        coords: Vec<RealAlgebraicNumber>,
        state: State,
    }
    // cartesian product
    let mut cands: Vec<Candidate> = vec![Candidate {
        coords: Vec::new(),
        state: State::Pending,
    }];
    for roots in &per_coord_roots {
        let mut next = Vec::with_capacity(cands.len() * roots.len());
        for c in &cands {
            for r in roots {
                let mut coords = c.coords.clone();
                coords.push(r.clone());
                next.push(Candidate {
                    coords,
                    state: State::Pending,
                });
            }
        }
        cands = next;
    }
    // canonical variable order of the system polynomials
    let vs = body.var_set();
    let coord_names: Vec<&String> = coord_elims.iter().map(|(v, _)| v).collect();
    let canon_map: Vec<usize> = vs
        .names()
        .iter()
        .map(|n| coord_names.iter().position(|v| *v == n).unwrap())
        .collect();
    let fis: Vec<SparsePolynomial> = body
        .polynomials
        .iter()
        .map(|f| f.extend_vars(&vs))
        .collect();
    let sys: Vec<SparsePolynomial> = system.iter().map(|f| f.extend_vars(&vs)).collect();
    for _round in 0..256 {
        let mut members = 0usize;
        let mut pending = 0usize;
        for cand in cands.iter_mut() {
            if cand.state == State::Excluded || cand.state == State::NonMember {
                continue;
            }
            let boxes: Vec<RatInterval> = canon_map
                .iter()
                .map(|&i| {
                    let (lo, hi) = cand.coords[i].interval();
                    RatInterval::new(lo, hi)
                })
                .collect();
            // exclusion by any system polynomial
            let mut excluded = false;
            for s in &sys {
                let iv = s.eval_interval(&boxes);
                if !iv.contains_zero() {
                    excluded = true;
                    break;
                }
            }
            if excluded {
                cand.state = State::Excluded;
                continue;
            }
            // exact membership in C (strict positivity of every f_i)
            let mut all_pos = true;
            let mut any_neg = false;
            let mut unresolved = false;
            for f in &fis {
                let iv = f.eval_interval(&boxes);
                match iv.definite_sign() {
                    Some(1) => {}
                    Some(_) => {
                        any_neg = true;
                        all_pos = false;
                        break;
                    }
                    None => {
                        all_pos = false;
                        unresolved = true;
                    }
                }
            }
            if any_neg {
                cand.state = State::NonMember;
                continue;
            }
            if all_pos {
                cand.state = State::Member;
                members += 1;
                // keep refining member candidates too: they may still be
                // spurious combinations awaiting exclusion
                pending += 1;
                for c in cand.coords.iter_mut() {
                    let w = c.width();
                    if w.is_positive() {
                        let half = w / Rat::from_integer(2.into());
                        c.refine_to(&half);
                    }
                }
                continue;
            }
            let _ = unresolved;
            pending += 1;
            cand.state = State::Pending;
            for c in cand.coords.iter_mut() {
                let w = c.width();
                if w.is_positive() {
                    let half = w / Rat::from_integer(2.into());
                    c.refine_to(&half);
                }
            }
        }
        let member_count = cands
            .iter()
            .filter(|c| c.state == State::Member)
            .count();
        if member_count == 2 && pending == member_count {
            // all non-members resolved; exactly the two true critical points
            let survivors: Vec<&Candidate> = cands
                .iter()
                .filter(|c| c.state == State::Member)
                .collect();
            let axis_pos = coord_names.iter().position(|v| *v == axis).unwrap();
            let mut a = survivors[0].coords[axis_pos].clone();
            let mut b = survivors[1].coords[axis_pos].clone();
            if a.compare(&b) == Ordering::Greater {
                std::mem::swap(&mut a, &mut b);
            }
            if a.compare(&b) == Ordering::Equal {
                return Err(GeometryError::AmbiguousSelection(
                    "critical values coincide".into(),
                ));
            }
            return Ok(CriticalValueResult {
                c1: a,
                c2: b,
                eliminant: axis_elim,
                case_used: CaseUsed::ZeroDimensional,
            });
        }
        let _ = members;
    }
    Err(GeometryError::AmbiguousSelection(
        "candidate refinement budget exhausted".into(),
    ))
}

fn case2(
    body: &ConvexBodySpec,
    t: &Rat,
    axis: &str,
    system: &[SparsePolynomial],
    strategy: Case2Strategy,
    seed: u64,
) -> Result<CriticalValueResult, GeometryError> {
    let axis_elim = eliminate_to_skipping(system, axis)?.eliminant;
    if axis_elim.deg() == 0 {
        return Err(GeometryError::AmbiguousSelection(
            "axis eliminant is constant".into(),
        ));
    }
    let mut roots = isolate_real_roots(&axis_elim);
    if roots.len() < 2 {
        return Err(GeometryError::AmbiguousSelection(
            "axis eliminant has fewer than two real roots".into(),
        ));
    }
    // separate all isolating intervals
    loop {
        let mut ok = true;
        for i in 0..roots.len() - 1 {
            let (_, hi) = roots[i].interval();
            let (lo, _) = roots[i + 1].interval();
            if hi > lo {
                ok = false;
            }
        }
        if ok {
            break;
        }
        for r in roots.iter_mut() {
            let w = r.width();
            if w.is_positive() {
                r.refine_to(&(w / Rat::from_integer(2.into())));
            }
        }
    }
    let separators: Vec<Rat> = (0..roots.len() - 1)
        .map(|i| {
            let (_, hi) = roots[i].interval();
            let (lo, _) = roots[i + 1].interval();
            (hi + lo) / Rat::from_integer(2.into())
        })
        .collect();
    let feasible: Vec<bool> = match strategy {
        Case2Strategy::ConvexSearch => separators
            .iter()
            .map(|s| slice_feasible_point(body, t, axis, s, seed).is_some())
            .collect(),
        Case2Strategy::GridSampling => grid_feasibility(body, t, axis, &roots, seed),
    };
    let i0 = match feasible.iter().position(|&f| f) {
        Some(i) => i,
        None => {
            // no separator lies inside: either empty body or a single gap
            // narrower than the sampling; check the interior point directly
            let pt = find_interior_point(body, t, seed).ok_or(GeometryError::EmptyBody)?;
            let axis_ix = body.variables.iter().position(|v| v == axis).unwrap();
            let a0 = pt[axis_ix].clone();
            let gap = roots
                .iter()
                .position(|r| r.cmp_rat(&a0) == Ordering::Greater)
                .unwrap_or(roots.len());
            if gap == 0 || gap == roots.len() {
                return Err(GeometryError::AmbiguousSelection(
                    "interior point lies outside the eliminant root range".into(),
                ));
            }
            gap - 1
        }
    };
    let mut left = i0;
    while left > 0 && feasible[left - 1] {
        left -= 1;
    }
    let mut right = i0;
    while right + 1 < feasible.len() && feasible[right + 1] {
        right += 1;
    }
    // contiguity check: no other feasible gap outside [left, right]
    if feasible
        .iter()
        .enumerate()
        .any(|(i, &f)| f && (i < left || i > right))
    {
        return Err(GeometryError::AmbiguousSelection(
            "feasible gaps are not contiguous (non-convex input?)".into(),
        ));
    }
    Ok(CriticalValueResult {
        c1: roots[left].clone(),
        c2: roots[right + 1].clone(),
        eliminant: axis_elim,
        case_used: CaseUsed::PositiveDimensional,
    })
}

/// Grid + membership + projection-hull fallback: sample the bounding box,
/// keep points of C_t, and mark the eliminant-root gaps their axis
/// projections fall into.
fn grid_feasibility(
    body: &ConvexBodySpec,
    t: &Rat,
    axis: &str,
    roots: &[RealAlgebraicNumber],
    seed: u64,
) -> Vec<bool> {
    use rand::Rng;
    use rand::SeedableRng;
    let n = body.dimension();
    let bx = body.bounding_box.clone().unwrap_or_else(|| {
        vec![(Rat::from_integer((-2).into()), Rat::from_integer(2.into())); n]
    });
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let axis_ix = body.variables.iter().position(|v| v == axis).unwrap();
    let mut feas = vec![false; roots.len() - 1];
    for _ in 0..20_000 {
        let pt: Vec<Rat> = bx
            .iter()
            .map(|(lo, hi)| {
                let u: u32 = rng.gen_range(0..=1 << 16);
                lo + (hi - lo) * Rat::new(u.into(), (1u32 << 16).into())
            })
            .collect();
        if super::contains(body, t, &pt) {
            let a = &pt[axis_ix];
            let k = roots
                .iter()
                .filter(|r| r.cmp_rat(a) == Ordering::Less)
                .count();
            if k > 0 && k < roots.len() {
                feas[k - 1] = true;
            }
        }
    }
    feas
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
    fn disk_quarter_deformation() {
        // t = 1/4: critical values +-sqrt(3)/2
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        let r = relevant_critical_values(&disk, &rat(1, 4), "x").unwrap();
        assert_eq!(r.case_used, CaseUsed::ZeroDimensional);
        // c1^2 = 3/4
        let sq = UniPoly::from_coeffs(vec![rat(-3, 4), rat(0, 1), rat(1, 1)]);
        assert_eq!(r.c1.sign_of(&sq), 0);
        assert_eq!(r.c2.sign_of(&sq), 0);
        assert_eq!(r.c1.cmp_rat(&rat(0, 1)), Ordering::Less);
        assert_eq!(r.c2.cmp_rat(&rat(0, 1)), Ordering::Greater);
    }

    #[test]
    fn disk_family_matches_closed_form() {
        // (c1, c2) = (-sqrt(1-t), sqrt(1-t)) for t in {1/4, 1/10, 1/100}
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        for t in [rat(1, 4), rat(1, 10), rat(1, 100)] {
            let r = relevant_critical_values(&disk, &t, "x").unwrap();
            let target =
                UniPoly::from_coeffs(vec![-(rat(1, 1) - t.clone()), rat(0, 1), rat(1, 1)]);
            assert_eq!(r.c1.sign_of(&target), 0);
            assert_eq!(r.c2.sign_of(&target), 0);
        }
    }

    #[test]
    fn triangle_small_deformation() {
        // vertices (-1,0), (1,0), (0,1): critical x-values approach -1, 1
        let tri = body(&["1 - x - y", "y", "x - y + 1"], &["x", "y"]);
        let r = relevant_critical_values(&tri, &rat(1, 1000), "x").unwrap();
        assert_eq!(r.c1.cmp_rat(&rat(-1, 1)), Ordering::Greater);
        assert_eq!(r.c1.cmp_rat(&rat(-9, 10)), Ordering::Less);
        assert_eq!(r.c2.cmp_rat(&rat(9, 10)), Ordering::Greater);
        assert_eq!(r.c2.cmp_rat(&rat(1, 1)), Ordering::Less);
    }

    #[test]
    fn nested_intervals_as_t_grows() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        let r1 = relevant_critical_values(&disk, &rat(1, 10), "x").unwrap();
        let r2 = relevant_critical_values(&disk, &rat(1, 4), "x").unwrap();
        assert_eq!(r1.c1.compare(&r2.c1), Ordering::Less);
        assert_eq!(r2.c2.compare(&r1.c2), Ordering::Less);
    }

    #[test]
    fn positive_dimensional_two_balls_slice() {
        // two Euclidean balls in R^3 tangent circles: projecting the slice
        // body onto x sees a positive-dimensional critical locus in (y, z)
        let b = body(
            &["1 - x^2 - y^2 - z^2", "1 - (x-1)^2 - y^2 - z^2"],
            &["x", "y", "z"],
        );
        let r = relevant_critical_values(&b, &rat(1, 1000), "x").unwrap();
        // the lens spans x in (0, 1), shrunk slightly by the deformation
        assert_eq!(r.c1.cmp_rat(&rat(0, 1)), Ordering::Greater);
        assert_eq!(r.c1.cmp_rat(&rat(1, 2)), Ordering::Less);
        assert_eq!(r.c2.cmp_rat(&rat(1, 2)), Ordering::Greater);
        assert_eq!(r.c2.cmp_rat(&rat(1, 1)), Ordering::Less);
    }

    #[test]
    fn rejects_zero_deformation() {
        let disk = body(&["1 - x^2 - y^2"], &["x", "y"]);
        assert!(matches!(
            relevant_critical_values(&disk, &rat(0, 1), "x"),
            Err(GeometryError::NonPositiveDeformation(_))
        ));
    }
}
