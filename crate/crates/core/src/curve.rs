//! The Hermitian curve `C: y^q - y = x^{q+1}`: point counts, the Frobenius
//! sign test, and checks of the group action on points.

use crate::error::{Error, Result};
use crate::gf::{make_field, prime_power, AdditiveMap, FieldElement, ImageSpace};
use crate::group::{build_group, build_group_over, GroupTable};

/// Largest field size `q^{2f}` for which points are counted.
pub const MAX_COUNT_FIELD: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CurveSpec {
    pub q: u64,
    pub genus: u64,
    pub b1: u64,
}

impl CurveSpec {
    pub fn new(q: u64) -> Result<Self> {
        prime_power(q).ok_or(Error::NotPrimePower(q))?;
        let genus = q * (q - 1) / 2;
        Ok(CurveSpec {
            q,
            genus,
            b1: 2 * genus,
        })
    }

    /// Topological Euler characteristic `2 - 2g`.
    pub fn euler_characteristic(&self) -> i64 {
        2 - self.b1 as i64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CountRecord {
    pub f: u32,
    /// Projective count over `F_{q^{2f}}`, including the point at infinity.
    pub count: u64,
}

fn field_size(q: u64, f: u32) -> Option<u64> {
    q.checked_pow(2 * f)
}

/// Which `F_{q^2}`-form of the curve is counted.
///
/// `Literal` is `y^q - y = x^{q+1}`, the model the group acts on. `Maximal`
/// is `y^q + y = x^{q+1}`; it becomes isomorphic to `Literal` over `F_{q^4}`
/// via `y -> εy`, `x -> λx` with `ε^{q-1} = -1`, and is the same equation
/// when `p = 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveModel {
    Literal,
    Maximal,
}

impl CurveModel {
    /// Sign `s` in `y^q + s·y`.
    pub fn y_sign(self) -> i64 {
        match self {
            CurveModel::Literal => -1,
            CurveModel::Maximal => 1,
        }
    }
}

/// `#C(F_{q^{2f}})` for the maximal model; see [`count_points_model`].
pub fn count_points(q: u64, f: u32, threads: usize) -> Result<CountRecord> {
    count_points_model(q, f, CurveModel::Maximal, threads)
}

/// Projective point count, iterating over `x` only and deciding solvability
/// of `y^q ± y = x^{q+1}` by membership in the image of `y -> y^q ± y`.
///
/// `threads > 1` splits the `x` range; the sum does not depend on the split.
pub fn count_points_model(
    q: u64,
    f: u32,
    model: CurveModel,
    threads: usize,
) -> Result<CountRecord> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let size = field_size(q, f).filter(|&s| s <= MAX_COUNT_FIELD && f >= 1);
    let Some(size) = size else {
        return Err(Error::FieldTooLarge {
            p,
            degree: (2 * f * m) as usize,
        });
    };
    let field = make_field(p, (2 * f * m) as usize)?;
    let artin_schreier = AdditiveMap::new(vec![
        (field.one(), m),
        (field.from_int(model.y_sign()), 0),
    ]);
    let image = ImageSpace::of(&artin_schreier.matrix(&field));
    let affine_over = |lo: u32, hi: u32| -> u64 {
        (lo..hi)
            .filter(|&c| image.contains(&field.element(c).pow_u64(q + 1).coeffs()))
            .count() as u64
            * q
    };
    let size = size as u32;
    let threads = threads.max(1).min(size as usize);
    let affine = if threads == 1 {
        affine_over(0, size)
    } else {
        let chunk = size.div_ceil(threads as u32);
        std::thread::scope(|s| {
            let handles: Vec<_> = (0..threads as u32)
                .map(|k| {
                    let lo = (k * chunk).min(size);
                    let hi = ((k + 1) * chunk).min(size);
                    let work = &affine_over;
                    s.spawn(move || work(lo, hi))
                })
                .collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).sum()
        })
    };
    Ok(CountRecord {
        f,
        count: affine + 1,
    })
}

/// Count forced by `P_1(T) = (1 - sign·q·T)^{b_1}` over `F_{q^2}`:
/// `q^{2f} + 1 - b_1 (sign·q)^f`.
pub fn predicted_count(q: u64, f: u32, sign: i64) -> i64 {
    let spec_b1 = (q * (q - 1)) as i128;
    let qi = q as i128;
    let base = qi.pow(2 * f) + 1;
    let weil = (sign as i128 * qi).pow(f);
    (base - spec_b1 * weil) as i64
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupersingularReport {
    pub q: u64,
    pub sign: i64,
    pub levels: Vec<(CountRecord, i64)>,
}

/// Decides the sign at `f = 1`, then checks every level up to `fmax` whose
/// field fits [`MAX_COUNT_FIELD`].
pub fn verify_supersingular(q: u64, fmax: u32, threads: usize) -> Result<SupersingularReport> {
    let first = count_points(q, 1, threads)?;
    let sign = [-1i64, 1]
        .into_iter()
        .find(|&s| predicted_count(q, 1, s) == first.count as i64)
        .ok_or(Error::MismatchAtLevel {
            f: 1,
            counted: first.count as i64,
            predicted: predicted_count(q, 1, -1),
        })?;
    let mut levels = vec![(first, predicted_count(q, 1, sign))];
    for f in 2..=fmax.max(1) {
        if field_size(q, f).is_none_or(|s| s > MAX_COUNT_FIELD) {
            break;
        }
        let rec = count_points(q, f, threads)?;
        let predicted = predicted_count(q, f, sign);
        if rec.count as i64 != predicted {
            return Err(Error::MismatchAtLevel {
                f,
                counted: rec.count as i64,
                predicted,
            });
        }
        levels.push((rec, predicted));
    }
    Ok(SupersingularReport { q, sign, levels })
}

/// Affine points of `C` with coordinates in the given group's ambient field.
pub fn affine_points(group: &GroupTable) -> Vec<(FieldElement, FieldElement)> {
    let field = group.field();
    let q = group.q();
    let m = group.m();
    let one = field.one();
    let artin_schreier = AdditiveMap::new(vec![(one.clone(), m), (-one, 0)]);
    field
        .elements()
        .flat_map(|x| {
            let rhs = x.pow_u64(q + 1);
            crate::gf::solve_additive(field, &artin_schreier, &rhs)
                .into_iter()
                .map(move |y| (x.clone(), y))
        })
        .collect()
}

pub fn on_curve(q: u64, x: &FieldElement, y: &FieldElement) -> bool {
    y.pow_u64(q) - y == x.pow_u64(q + 1)
}

/// `σ = (t, r)` acting by `x -> x + r`, `y -> y - r^q x + t`.
pub fn act(
    group: &GroupTable,
    sigma: usize,
    (x, y): (&FieldElement, &FieldElement),
) -> (FieldElement, FieldElement) {
    let s = group.element(sigma);
    (x + &s.r, y - s.r.pow_u64(group.q()) * x + &s.t)
}

/// Every `σ ∈ G` maps affine points of `C` to affine points, and only the
/// identity has an affine fixed point. Points are taken over the smallest
/// field containing both `F_{q^{2f}}` and the group coordinates.
pub fn verify_action(q: u64, f: u32) -> Result<bool> {
    let base = build_group(q)?;
    let (p, m) = (base.p(), base.m());
    let degree = num_integer::lcm(base.field().degree(), (2 * f * m) as usize);
    let group = if degree == base.field().degree() {
        base
    } else {
        build_group_over(q, &make_field(p, degree)?)?
    };
    let points = affine_points(&group);
    let e = group.identity_index();
    for sigma in 0..group.order() {
        let mut fixed = 0usize;
        for (x, y) in &points {
            let (x2, y2) = act(&group, sigma, (x, y));
            if !on_curve(q, &x2, &y2) {
                return Err(Error::ActionViolation(format!(
                    "element {sigma} sends ({x}, {y}) off the curve"
                )));
            }
            if &x2 == x && &y2 == y {
                fixed += 1;
            }
        }
        if sigma == e && fixed != points.len() {
            return Err(Error::ActionViolation("identity moves a point".into()));
        }
        if sigma != e && fixed != 0 {
            return Err(Error::ActionViolation(format!(
                "element {sigma} fixes {fixed} affine points"
            )));
        }
    }
    Ok(true)
}

/// `(x + r)^{q^2} + (x + r) = x^{q^2} + x` for every `σ`, i.e. `τ = x^{q^2} + x`
/// is `G`-invariant. Checked through `r^{q^2} + r = 0` and by evaluation on
/// every ambient `x` (the first 4096 when the field is larger).
pub fn verify_tau_invariant(q: u64) -> Result<bool> {
    let group = build_group(q)?;
    let tau = |x: &FieldElement| x.pow_u64(q * q) + x;
    let xs: Vec<FieldElement> = group.field().elements().take(4096).collect();
    let taus: Vec<FieldElement> = xs.iter().map(tau).collect();
    Ok(group.elements().iter().all(|s| {
        (s.r.pow_u64(q * q) + &s.r).is_zero()
            && xs
                .iter()
                .zip(&taus)
                .all(|(x, tx)| tau(&(x + &s.r)) == *tx)
    }))
}

/// `(x, y) -> (ζx, ζ^{q+1}y)` preserves the affine point set for every
/// `ζ ∈ F_{q^2}^×`.
pub fn verify_zeta_symmetry(q: u64) -> Result<bool> {
    let group = build_group(q)?;
    let points = affine_points(&group);
    Ok(group.zeta_candidates().iter().all(|z| {
        let z_y = z.pow_u64(q + 1);
        points
            .iter()
            .all(|(x, y)| on_curve(q, &(z * x), &(&z_y * y)))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_and_betti() {
        let c = CurveSpec::new(4).unwrap();
        assert_eq!((c.genus, c.b1), (6, 12));
        assert_eq!(CurveSpec::new(3).unwrap().euler_characteristic(), -4);
        assert!(CurveSpec::new(10).is_err());
    }

    #[test]
    fn predictions() {
        assert_eq!(predicted_count(2, 1, -1), 9);
        assert_eq!(predicted_count(3, 1, -1), 28);
        assert_eq!(predicted_count(2, 1, 1), 1);
        assert_eq!(predicted_count(2, 2, -1), 9);
        assert_eq!(predicted_count(2, 3, -1), 81);
    }

    #[test]
    fn literal_model_is_a_twist_for_odd_q() {
        let literal = |q, f| count_points_model(q, f, CurveModel::Literal, 1).unwrap().count;
        assert_eq!(literal(3, 1), 4);
        assert_eq!(literal(3, 2), count_points(3, 2, 1).unwrap().count);
        assert_eq!(literal(2, 1), 9);
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_points(2, 1, 1).unwrap().count, 9);
        assert_eq!(count_points(3, 1, 1).unwrap().count, 28);
        assert_eq!(count_points(2, 2, 1).unwrap().count, 9);
    }

    #[test]
    fn threads_do_not_change_counts() {
        let serial = count_points(3, 2, 1).unwrap();
        for threads in [2, 3, 7] {
            assert_eq!(count_points(3, 2, threads).unwrap(), serial);
        }
    }

    #[test]
    fn too_large_field() {
        assert!(matches!(count_points(4, 7, 1), Err(Error::FieldTooLarge { .. })));
    }

    #[test]
    fn supersingular_small() {
        let rep = verify_supersingular(2, 3, 1).unwrap();
        assert_eq!(rep.sign, -1);
        let counts: Vec<u64> = rep.levels.iter().map(|(r, _)| r.count).collect();
        assert_eq!(counts, vec![9, 9, 81]);
        assert_eq!(verify_supersingular(3, 2, 1).unwrap().sign, -1);
    }

    #[test]
    fn action_and_invariants() {
        assert!(verify_action(2, 1).unwrap());
        assert!(verify_action(3, 1).unwrap());
        assert!(verify_tau_invariant(2).unwrap());
        assert!(verify_tau_invariant(3).unwrap());
        assert!(verify_zeta_symmetry(3).unwrap());
    }

    #[test]
    fn q2_action_sizes() {
        let g = build_group(2).unwrap();
        assert_eq!(affine_points(&g).len(), 8);
    }
}
