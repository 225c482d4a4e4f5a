//! Local analysis at the fixed point `∞ = (0:1:0)`.
//!
//! The completed local ring there is `k[[u]]` with `u = X/Y`, and
//! `w = Z/Y` solves `w - w^q = u^{q+1}`. An element `(t, r)` sends
//! `u -> u (1 + r w/u) (1 - r^q u + t w)^{-1}`; the valuation of
//! `σ(u) - u` gives the lower ramification filtration and the length of the
//! fixed scheme.

use std::fmt;

use crate::Rational;

use crate::error::{Error, Result};
use crate::gf::{FieldElement, FieldSpec};
use crate::group::GroupTable;

/// Largest precision reached by automatic doubling.
pub const MAX_PRECISION: usize = 512;

/// Power series over a finite field, known modulo `u^N`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    field: FieldSpec,
    coeffs: Vec<FieldElement>,
}

impl TruncatedSeries {
    pub fn zero(field: &FieldSpec, precision: usize) -> Self {
        TruncatedSeries {
            field: field.clone(),
            coeffs: vec![field.zero(); precision],
        }
    }

    pub fn one(field: &FieldSpec, precision: usize) -> Self {
        Self::monomial(field.one(), 0, precision)
    }

    /// `c·u^k mod u^N`.
    pub fn monomial(c: FieldElement, k: usize, precision: usize) -> Self {
        let mut s = Self::zero(c.spec(), precision);
        if k < precision {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn from_coeffs(field: &FieldSpec, coeffs: Vec<FieldElement>) -> Self {
        TruncatedSeries {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &FieldElement {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Least index with a nonzero coefficient; `None` stands for `+∞`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn truncate(&self, precision: usize) -> Self {
        let mut s = self.clone();
        s.coeffs.truncate(precision);
        s
    }

    fn common(&self, other: &Self) -> usize {
        self.precision().min(other.precision())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.common(other);
        let coeffs = (0..n).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.common(other);
        let coeffs = (0..n).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        Self::from_coeffs(&self.field, coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.common(other);
        let mut out = vec![self.field.zero(); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        Self::from_coeffs(&self.field, out)
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one(&self.field, self.precision());
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplication by `u^k`; a series known mod `u^N` becomes known mod
    /// `u^{N+k}`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![self.field.zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self::from_coeffs(&self.field, coeffs)
    }

    /// Division by `u^k`; requires valuation at least `k`.
    pub fn shift_down(&self, k: usize) -> Option<Self> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_coeffs(
            &self.field,
            self.coeffs.iter().skip(k).cloned().collect(),
        ))
    }

    /// Inverse of a unit: `c^{-1} (1 + s)^{-1}` with `(1 + s)^{-1} = sum (-s)^k`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.precision();
        let c0 = self.coeffs.first().ok_or(Error::PrecisionTooSmall(0))?;
        let c0_inv = c0.inv()?;
        let normalized = self.scale(&c0_inv);
        let s = normalized.sub(&Self::one(&self.field, n));
        let minus_s = s.scale(&-self.field.one());
        let mut sum = Self::one(&self.field, n);
        let mut term = Self::one(&self.field, n);
        for _ in 1..n {
            term = term.mul(&minus_s);
            sum = sum.add(&term);
        }
        Ok(sum.scale(&c0_inv))
    }

    /// `self(inner(u))` by Horner evaluation; `inner` must have valuation
    /// at least 1.
    pub fn compose(&self, inner: &Self) -> Option<Self> {
        if !inner.coeffs.first().is_none_or(|c| c.is_zero()) {
            return None;
        }
        let n = self.common(inner);
        let inner = inner.truncate(n);
        let mut acc = Self::zero(&self.field, n);
        for c in self.coeffs.iter().take(n).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] = &acc.coeffs[0] + c;
        }
        Some(acc)
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({c})u^{i}"))
            .collect();
        if terms.is_empty() {
            write!(f, "O(u^{})", self.precision())
        } else {
            write!(f, "{} + O(u^{})", terms.join(" + "), self.precision())
        }
    }
}

/// Default working precision `2q + 4`.
pub fn default_precision(q: u64) -> usize {
    2 * q as usize + 4
}

fn check_precision(q: u64, n: usize) -> Result<()> {
    if n < q as usize + 3 {
        return Err(Error::PrecisionTooSmall(n));
    }
    Ok(())
}

/// `w = Z/Y` as a series in `u`, from `w <- u^{q+1} + w^q` iterated to a
/// fixed point mod `u^N`.
pub fn expand_w(field: &FieldSpec, q: u64, n: usize) -> Result<TruncatedSeries> {
    check_precision(q, n)?;
    let lead = TruncatedSeries::monomial(field.one(), q as usize + 1, n);
    let mut w = TruncatedSeries::zero(field, n);
    loop {
        let next = lead.add(&w.pow(q));
        if next == w {
            return Ok(w);
        }
        w = next;
    }
}

/// Precomputed `w` for one group and precision.
#[derive(Debug, Clone)]
pub struct LocalExpansion<'g> {
    group: &'g GroupTable,
    w: TruncatedSeries,
    w_over_u: TruncatedSeries,
}

impl<'g> LocalExpansion<'g> {
    pub fn new(group: &'g GroupTable, n: usize) -> Result<Self> {
        let w = expand_w(group.field(), group.q(), n)?;
        let w_over_u = w.shift_down(1).expect("w has valuation q + 1");
        Ok(LocalExpansion { group, w, w_over_u })
    }

    pub fn precision(&self) -> usize {
        self.w.precision()
    }

    pub fn w(&self) -> &TruncatedSeries {
        &self.w
    }

    /// `σ(u) mod u^N` for the element with index `sigma`.
    pub fn act(&self, sigma: usize) -> TruncatedSeries {
        let field = self.group.field();
        let n = self.precision();
        let s = self.group.element(sigma);
        // both factors are needed mod u^{N-1}; the final shift restores N
        let one = TruncatedSeries::one(field, n - 1);
        let numerator = one.add(&self.w_over_u.scale(&s.r));
        let u = TruncatedSeries::monomial(field.one(), 1, n - 1);
        let denominator = one
            .sub(&u.scale(&s.r.pow_u64(self.group.q())))
            .add(&self.w.truncate(n - 1).scale(&s.t));
        let inv = denominator
            .inverse()
            .expect("denominator has constant term 1");
        numerator.mul(&inv).shift_up(1)
    }

    /// `v(σ(u) - u)`; errors when the difference vanishes mod `u^N`.
    pub fn displacement(&self, sigma: usize) -> Result<usize> {
        let su = self.act(sigma);
        let u = TruncatedSeries::monomial(self.group.field().one(), 1, self.precision());
        su.sub(&u)
            .valuation()
            .ok_or(Error::PrecisionExhausted(self.precision()))
    }
}

/// `σ(u)` at precision `n`.
pub fn act_on_uniformizer(group: &GroupTable, sigma: usize, n: usize) -> Result<TruncatedSeries> {
    Ok(LocalExpansion::new(group, n)?.act(sigma))
}

/// `v(σ(u) - u)` with precision doubling from `2q + 4` up to
/// [`MAX_PRECISION`].
fn displacement_auto(group: &GroupTable, sigma: usize) -> Result<usize> {
    if sigma == group.identity_index() {
        return Err(Error::StructureViolation(
            "the identity has no ramification jump".into(),
        ));
    }
    let mut n = default_precision(group.q());
    loop {
        match LocalExpansion::new(group, n)?.displacement(sigma) {
            Err(Error::PrecisionExhausted(_)) if n < MAX_PRECISION => {
                n = (2 * n).min(MAX_PRECISION);
            }
            other => return other,
        }
    }
}

/// Largest `i` with `σ ∈ G_i`, checked to be `1` off the center and `q + 1`
/// on nontrivial central elements.
pub fn ramification_jump(group: &GroupTable, sigma: usize) -> Result<u32> {
    let jump = displacement_auto(group, sigma)? as u32 - 1;
    let expected = if group.element(sigma).is_central() {
        group.q() as u32 + 1
    } else {
        1
    };
    if jump != expected {
        return Err(Error::StructureViolation(format!(
            "element {sigma} has jump {jump}, expected {expected}"
        )));
    }
    Ok(jump)
}

/// Length of the fixed scheme at `∞`, i.e. `v(σ(u) - u)`.
pub fn fixed_scheme_length(group: &GroupTable, sigma: usize) -> Result<u32> {
    Ok(displacement_auto(group, sigma)? as u32)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RamificationProfile {
    pub q: u64,
    pub group_order: usize,
    /// Jump per element index; `None` for the identity.
    pub jumps: Vec<Option<u32>>,
    /// `(i, |G_i|)` for `i = 0 ..= max jump + 1`.
    pub filtration: Vec<(u32, usize)>,
}

impl RamificationProfile {
    pub fn order_of(&self, i: u32) -> usize {
        self.filtration
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, n)| *n)
            .unwrap_or(1)
    }

    /// Members of `G_i` as element indices.
    pub fn members(&self, i: u32) -> Vec<usize> {
        (0..self.jumps.len())
            .filter(|&s| self.jumps[s].is_none_or(|j| j >= i))
            .collect()
    }
}

/// The whole lower filtration, computed from the series action.
pub fn filtration(group: &GroupTable) -> Result<RamificationProfile> {
    let q = group.q();
    let e = group.identity_index();
    let mut precision = default_precision(q);
    let jumps = loop {
        let local = LocalExpansion::new(group, precision)?;
        let attempt: Result<Vec<Option<u32>>> = (0..group.order())
            .map(|s| {
                if s == e {
                    Ok(None)
                } else {
                    local.displacement(s).map(|v| Some(v as u32 - 1))
                }
            })
            .collect();
        match attempt {
            Err(Error::PrecisionExhausted(_)) if precision < MAX_PRECISION => {
                precision = (2 * precision).min(MAX_PRECISION);
            }
            other => break other?,
        }
    };
    let max_jump = jumps.iter().flatten().copied().max().unwrap_or(0);
    let mut profile = RamificationProfile {
        q,
        group_order: group.order(),
        jumps,
        filtration: Vec::new(),
    };
    for i in 0..=max_jump + 1 {
        let members = profile.members(i);
        if !group.is_subgroup(&members) || !group.is_normal(&members) {
            return Err(Error::StructureViolation(format!(
                "G_{i} is not a normal subgroup"
            )));
        }
        profile.filtration.push((i, members.len()));
    }
    let center = group.expected_center();
    let qs = q as usize;
    let n = group.order();
    for i in 0..=(q as u32 + 2) {
        let (expected_order, expected_set) = match i {
            0 | 1 => (n, None),
            i if i <= q as u32 + 1 => (qs, Some(&center)),
            _ => (1, None),
        };
        let members = profile.members(i);
        if members.len() != expected_order || expected_set.is_some_and(|c| c != &members) {
            return Err(Error::StructureViolation(format!(
                "|G_{i}| = {}, expected {expected_order}",
                members.len()
            )));
        }
    }
    Ok(profile)
}



/// Dimensions of a representation `M` and of its `G_i`-invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwanDims {
    pub dim_m: u64,
    /// `(i, dim M^{G_i})`, one entry for every `i >= 1` with `G_i ≠ 1`.
    pub invariants: Vec<(u32, u64)>,
}

fn integral(value: Rational) -> Result<i64> {
    if value.is_integer() {
        Ok(value.to_integer())
    } else {
        Err(Error::NonIntegralSwan(value.to_string()))
    }
}

/// `sum_{i >= 1} dim(M / M^{G_i}) / [G : G_i]`, exact.
pub fn swan_conductor(profile: &RamificationProfile, dims: &SwanDims) -> Result<i64> {
    let g = profile.group_order as i64;
    let mut sum = Rational::from_integer(0);
    for &(i, order) in profile.filtration.iter().filter(|(i, n)| *i >= 1 && *n > 1) {
        let inv = dims
            .invariants
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, d)| *d)
            .ok_or_else(|| {
                Error::StructureViolation(format!("missing invariant dimension for G_{i}"))
            })?;
        let quotient = dims.dim_m as i64 - inv as i64;
        sum += Rational::new(order as i64 * quotient, g);
    }
    integral(sum)
}

/// `dim(M/M^G) + q^{-1} dim(M/M^Z)`.
pub fn swan_closed_form(q: u64, dim_m: u64, dim_m_g: u64, dim_m_z: u64) -> Result<i64> {
    let value = Rational::from_integer(dim_m as i64 - dim_m_g as i64)
        + Rational::new(dim_m as i64 - dim_m_z as i64, q as i64);
    integral(value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::build_group;

    #[test]
    fn w_for_q2() {
        let g = build_group(2).unwrap();
        let f = g.field();
        let w = expand_w(f, 2, 8).unwrap();
        // w = u^3 + u^6 + O(u^7), and the u^7 coefficient is 0 as well
        let expected: Vec<u32> = vec![0, 0, 0, 1, 0, 0, 1, 0];
        let got: Vec<u32> = w.coeffs().iter().map(|c| c.code()).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn w_leading_term() {
        for q in [3u64, 4] {
            let g = build_group(q).unwrap();
            let w = expand_w(g.field(), q, default_precision(q)).unwrap();
            assert_eq!(w.valuation(), Some(q as usize + 1));
            assert!(w.coeff(q as usize + 1).is_one());
        }
    }

    #[test]
    fn precision_too_small() {
        let g = build_group(3).unwrap();
        assert_eq!(
            expand_w(g.field(), 3, 5).unwrap_err(),
            Error::PrecisionTooSmall(5)
        );
    }

    #[test]
    fn identity_acts_trivially() {
        let g = build_group(3).unwrap();
        let n = default_precision(3);
        let su = act_on_uniformizer(&g, g.identity_index(), n).unwrap();
        assert_eq!(su, TruncatedSeries::monomial(g.field().one(), 1, n));
    }

    #[test]
    fn central_action_leading_terms() {
        for q in [2u64, 3, 4] {
            let g = build_group(q).unwrap();
            let n = default_precision(q);
            let qs = q as usize;
            for s in g.expected_center() {
                if s == g.identity_index() {
                    continue;
                }
                let su = act_on_uniformizer(&g, s, n).unwrap();
                let t = &g.element(s).t;
                assert!(su.coeff(1).is_one());
                for i in 2..qs + 2 {
                    assert!(su.coeff(i).is_zero());
                }
                assert_eq!(su.coeff(qs + 2), &-t);
            }
        }
    }

    #[test]
    fn single_jumps() {
        let g = build_group(2).unwrap();
        let central = g.expected_center().into_iter().find(|&s| s != g.identity_index()).unwrap();
        assert_eq!(ramification_jump(&g, central).unwrap(), 3);
        assert_eq!(fixed_scheme_length(&g, central).unwrap(), 4);
        let g = build_group(3).unwrap();
        let noncentral = (0..g.order()).find(|&s| !g.element(s).is_central()).unwrap();
        assert_eq!(ramification_jump(&g, noncentral).unwrap(), 1);
        assert_eq!(fixed_scheme_length(&g, noncentral).unwrap(), 2);
        assert!(ramification_jump(&g, g.identity_index()).is_err());
    }

    #[test]
    fn filtrations() {
        let g = build_group(2).unwrap();
        let prof = filtration(&g).unwrap();
        let orders: Vec<usize> = prof.filtration.iter().map(|(_, n)| *n).collect();
        assert_eq!(orders, vec![8, 8, 2, 2, 1]);
        let g = build_group(3).unwrap();
        let prof = filtration(&g).unwrap();
        let orders: Vec<usize> = prof.filtration.iter().map(|(_, n)| *n).collect();
        assert_eq!(orders, vec![27, 27, 3, 3, 3, 1]);
    }

    #[test]
    fn swan_values() {
        let g = build_group(2).unwrap();
        let prof = filtration(&g).unwrap();
        let dims = SwanDims {
            dim_m: 2,
            invariants: vec![(1, 0), (2, 0), (3, 0)],
        };
        assert_eq!(swan_conductor(&prof, &dims).unwrap(), 3);
        let trivial = SwanDims {
            dim_m: 0,
            invariants: vec![(1, 0), (2, 0), (3, 0)],
        };
        assert_eq!(swan_conductor(&prof, &trivial).unwrap(), 0);
        assert_eq!(swan_closed_form(3, 6, 0, 0).unwrap(), 8);
        // M^G = 0 but M^Z = M / 2 in dimension: 1/2 is not an integer
        assert!(matches!(
            swan_closed_form(2, 2, 0, 1),
            Err(Error::NonIntegralSwan(_))
        ));
        let missing = SwanDims {
            dim_m: 2,
            invariants: vec![(1, 0)],
        };
        assert!(swan_conductor(&prof, &missing).is_err());
    }

    #[test]
    fn action_composes_in_group_order() {
        for q in [2u64, 3] {
            let g = build_group(q).unwrap();
            let local = LocalExpansion::new(&g, default_precision(q)).unwrap();
            let series: Vec<TruncatedSeries> = (0..g.order()).map(|s| local.act(s)).collect();
            for s in 0..g.order() {
                for t in 0..g.order() {
                    let composed = series[t].compose(&series[s]).unwrap();
                    assert_eq!(composed, series[g.mul_idx(t, s)], "q={q} s={s} t={t}");
                }
            }
        }
    }

    #[test]
    fn series_inverse_and_compose() {
        let g = build_group(3).unwrap();
        let f = g.field();
        let n = 7;
        let a = TruncatedSeries::from_coeffs(
            f,
            (0..n as u32).map(|i| f.element((i * 7 + 2) % f.size())).collect(),
        );
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), TruncatedSeries::one(f, n));
        let u = TruncatedSeries::monomial(f.one(), 1, n);
        assert_eq!(a.compose(&u).unwrap(), a);
        assert!(a.compose(&a).is_none());
    }
}
