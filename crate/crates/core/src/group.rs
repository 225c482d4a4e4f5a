//! The special `p`-group `G` of order `q^3` acting on the Hermitian curve.
//!
//! Elements are pairs `(t, r)` with `r^{q^2} + r = 0` and
//! `t^q - t = r^{q+1}`, multiplied with the opposite of the composition law:
//! `(t, r)·(t', r') = (t + t' - r^q r', r + r')`.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::gf::{make_field, prime_power, solve_additive, AdditiveMap, FieldElement, FieldSpec};

/// Largest `q` for which groups are enumerated.
pub const DESK_SCALE_Q: u64 = 9;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    pub t: FieldElement,
    pub r: FieldElement,
}

impl GroupElement {
    pub fn is_central(&self) -> bool {
        self.r.is_zero()
    }
}

/// A conjugacy class, as sorted indices into [`GroupTable::elements`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    pub members: Vec<usize>,
    pub central: bool,
}

impl ConjugacyClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }

    pub fn representative(&self) -> usize {
        self.members[0]
    }
}

/// Conjugacy classes ordered by their smallest member, plus the inverse map.
#[derive(Debug, Clone)]
pub struct Classes {
    pub classes: Vec<ConjugacyClass>,
    pub class_of: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupCensus {
    pub center: Vec<usize>,
    pub commutator_subgroup: Vec<usize>,
    pub frattini: Vec<usize>,
}

/// Which closed form the observed `p`-th powers `(t, r)^p = (c·r^{k}, 0)`
/// with `c = p(p-1)/2` satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PowerFormReading {
    /// Both `k = q + 1` and `k = p + 1` fit (always true when `q = p` or `p` odd).
    Both,
    QPlusOne,
    PPlusOne,
    Neither,
}

/// All `q^3` elements of `G` with a precomputed Cayley table.
#[derive(Debug, Clone)]
pub struct GroupTable {
    q: u64,
    p: u32,
    m: u32,
    field: FieldSpec,
    elements: Vec<GroupElement>,
    index: HashMap<(u32, u32), usize>,
    cayley: Vec<u32>,
    inverses: Vec<u32>,
}

fn check_q(q: u64) -> Result<(u32, u32)> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    if q > DESK_SCALE_Q {
        return Err(Error::OutOfDeskScale(q));
    }
    Ok((p, m))
}

/// Builds `G` over the smallest ambient field `F_{p^M}`, `M` in
/// `m, 2m, 4m, 8m`, that splits both defining equations.
pub fn build_group(q: u64) -> Result<GroupTable> {
    let (p, m) = check_q(q)?;
    let mut last = Err(Error::AmbientFieldTooSmall { q, degree: 0 });
    for k in [1usize, 2, 4, 8] {
        let field = make_field(p, k * m as usize)?;
        match build_group_over(q, &field) {
            Ok(g) => return Ok(g),
            Err(e @ Error::AmbientFieldTooSmall { .. }) => last = Err(e),
            Err(e) => return Err(e),
        }
    }
    last
}

/// Builds `G` inside a caller-chosen ambient field.
pub fn build_group_over(q: u64, field: &FieldSpec) -> Result<GroupTable> {
    let (p, m) = check_q(q)?;
    if field.characteristic() != p {
        return Err(Error::SpecMismatch);
    }
    let too_small = Error::AmbientFieldTooSmall {
        q,
        degree: field.degree(),
    };
    let one = field.one();
    let r_map = AdditiveMap::new(vec![(one.clone(), 2 * m), (one.clone(), 0)]);
    let t_map = AdditiveMap::new(vec![(one.clone(), m), (-one, 0)]);
    let rs = solve_additive(field, &r_map, &field.zero());
    if rs.len() as u64 != q * q {
        return Err(too_small);
    }
    let mut elements = Vec::with_capacity((q * q * q) as usize);
    for r in rs {
        let rhs = r.pow_u64(q + 1);
        let ts = solve_additive(field, &t_map, &rhs);
        if ts.len() as u64 != q {
            return Err(too_small);
        }
        elements.extend(ts.into_iter().map(|t| GroupElement { t, r: r.clone() }));
    }
    let index = elements
        .iter()
        .enumerate()
        .map(|(i, e)| ((e.t.code(), e.r.code()), i))
        .collect();
    let mut g = GroupTable {
        q,
        p,
        m,
        field: field.clone(),
        elements,
        index,
        cayley: Vec::new(),
        inverses: Vec::new(),
    };
    let n = g.order();
    let mut cayley = Vec::with_capacity(n * n);
    for a in &g.elements {
        let rq = a.r.pow_u64(q);
        for b in &g.elements {
            let prod = GroupElement {
                t: &a.t + &b.t - &rq * &b.r,
                r: &a.r + &b.r,
            };
            let idx = g.index_of(&prod).ok_or_else(|| {
                Error::StructureViolation("product left the group".into())
            })?;
            cayley.push(idx as u32);
        }
    }
    g.cayley = cayley;
    g.inverses = (0..n)
        .map(|i| {
            let inv = g.inv(&g.elements[i]);
            g.index_of(&inv)
                .map(|j| j as u32)
                .ok_or_else(|| Error::StructureViolation("inverse left the group".into()))
        })
        .collect::<Result<_>>()?;
    Ok(g)
}

impl GroupTable {
    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// Exponent `m` in `q = p^m`.
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.elements[i]
    }

    pub fn index_of(&self, a: &GroupElement) -> Option<usize> {
        self.index.get(&(a.t.code(), a.r.code())).copied()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            t: self.field.zero(),
            r: self.field.zero(),
        }
    }

    pub fn identity_index(&self) -> usize {
        self.index_of(&self.identity()).expect("identity is enumerated")
    }

    /// Whether `(t, r)` satisfies both defining equations.
    pub fn contains(&self, a: &GroupElement) -> bool {
        let q = self.q;
        let r_ok = (a.r.pow_u64(q * q) + &a.r).is_zero();
        let t_ok = a.t.pow_u64(q) - &a.t == a.r.pow_u64(q + 1);
        r_ok && t_ok
    }

    /// `(t + t' - r^q r', r + r')`.
    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            t: &a.t + &b.t - a.r.pow_u64(self.q) * &b.r,
            r: &a.r + &b.r,
        }
    }

    /// `(-r^{q+1} - t, -r)`.
    pub fn inv(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            t: -a.r.pow_u64(self.q + 1) - &a.t,
            r: -&a.r,
        }
    }

    /// Closed form `[(t,r),(t',r')] = (r r'^q - r^q r', 0)` of
    /// `a b a^{-1} b^{-1}`. The opposite sign belongs to `[b, a]`; the two
    /// agree only in characteristic 2.
    pub fn commutator(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let q = self.q;
        GroupElement {
            t: &a.r * b.r.pow_u64(q) - a.r.pow_u64(q) * &b.r,
            r: self.field.zero(),
        }
    }

    /// `a b a^{-1} b^{-1}` from the group law.
    pub fn commutator_by_products(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let ab = self.mul(a, b);
        let ainv_binv = self.mul(&self.inv(a), &self.inv(b));
        self.mul(&ab, &ainv_binv)
    }

    pub fn mul_idx(&self, i: usize, j: usize) -> usize {
        self.cayley[i * self.order() + j] as usize
    }

    pub fn inv_idx(&self, i: usize) -> usize {
        self.inverses[i] as usize
    }

    pub fn commutator_idx(&self, i: usize, j: usize) -> usize {
        let ab = self.mul_idx(i, j);
        let ainv_binv = self.mul_idx(self.inv_idx(i), self.inv_idx(j));
        self.mul_idx(ab, ainv_binv)
    }

    pub fn pow_idx(&self, i: usize, n: u64) -> usize {
        let mut acc = self.identity_index();
        for _ in 0..n {
            acc = self.mul_idx(acc, i);
        }
        acc
    }

    /// Order by repeated multiplication.
    pub fn element_order(&self, i: usize) -> u64 {
        let e = self.identity_index();
        let mut acc = i;
        let mut n = 1;
        while acc != e {
            acc = self.mul_idx(acc, i);
            n += 1;
        }
        n
    }

    /// Smallest subgroup containing `gens`, as sorted indices.
    pub fn generate(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let e = self.identity_index();
        seen[e] = true;
        let mut frontier = vec![e];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul_idx(x, g);
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn is_subgroup(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.order()];
        for &i in members {
            inside[i] = true;
        }
        inside[self.identity_index()]
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| inside[self.mul_idx(a, b)]))
    }

    pub fn is_normal(&self, members: &[usize]) -> bool {
        let mut inside = vec![false; self.order()];
        for &i in members {
            inside[i] = true;
        }
        (0..self.order()).all(|g| {
            let gi = self.inv_idx(g);
            members
                .iter()
                .all(|&h| inside[self.mul_idx(self.mul_idx(g, h), gi)])
        })
    }

    /// `{(t, 0) : t ∈ F_q}` as computed from the element list.
    pub fn expected_center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&i| {
                let e = &self.elements[i];
                e.r.is_zero() && e.t.pow_u64(self.q) == e.t
            })
            .collect()
    }

    /// Center, commutator subgroup and Frattini subgroup, each computed
    /// independently and required to coincide with `{(t, 0)}`.
    pub fn subgroup_census(&self) -> Result<SubgroupCensus> {
        let n = self.order();
        let center: Vec<usize> = (0..n)
            .filter(|&a| (0..n).all(|b| self.mul_idx(a, b) == self.mul_idx(b, a)))
            .collect();
        let mut commutators: Vec<usize> = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .map(|(a, b)| self.commutator_idx(a, b))
            .collect();
        commutators.sort_unstable();
        commutators.dedup();
        let commutator_subgroup = self.generate(&commutators);
        let mut frattini_gens = commutators.clone();
        frattini_gens.extend((0..n).map(|a| self.pow_idx(a, self.p as u64)));
        frattini_gens.sort_unstable();
        frattini_gens.dedup();
        let frattini = self.generate(&frattini_gens);
        let expected = self.expected_center();
        if center != expected || commutator_subgroup != expected || frattini != expected {
            return Err(Error::StructureViolation(format!(
                "|Z| = {}, |G'| = {}, |Phi| = {}, expected {}",
                center.len(),
                commutator_subgroup.len(),
                frattini.len(),
                expected.len()
            )));
        }
        if expected.len() as u64 != self.q {
            return Err(Error::StructureViolation(format!(
                "center has order {} instead of q = {}",
                expected.len(),
                self.q
            )));
        }
        Ok(SubgroupCensus {
            center,
            commutator_subgroup,
            frattini,
        })
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        (0..self.order())
            .map(|i| self.element_order(i))
            .fold(1, num_integer::lcm)
    }

    /// Compares observed `p`-th powers with the two candidate closed forms
    /// `(c·r^{q+1}, 0)` and `(c·r^{p+1}, 0)`, `c = sum_{i<p} i`.
    pub fn pth_power_form(&self) -> PowerFormReading {
        let p = self.p as u64;
        let c = self.field.from_int((p * (p - 1) / 2) as i64);
        let (mut q_fits, mut p_fits) = (true, true);
        for (i, a) in self.elements.iter().enumerate() {
            let power = &self.elements[self.pow_idx(i, p)];
            if !power.r.is_zero() {
                return PowerFormReading::Neither;
            }
            q_fits &= power.t == &c * a.r.pow_u64(self.q + 1);
            p_fits &= power.t == &c * a.r.pow_u64(p + 1);
        }
        match (q_fits, p_fits) {
            (true, true) => PowerFormReading::Both,
            (true, false) => PowerFormReading::QPlusOne,
            (false, true) => PowerFormReading::PPlusOne,
            (false, false) => PowerFormReading::Neither,
        }
    }

    /// Partition of `G` into conjugacy classes, checked against the
    /// description: `q` central singletons and `q^2 - 1` fibers of size `q`
    /// over the nonzero `r` values.
    pub fn conjugacy_classes(&self) -> Result<Classes> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for x in 0..n {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..n)
                .map(|g| self.mul_idx(self.mul_idx(g, x), self.inv_idx(g)))
                .collect();
            members.sort_unstable();
            members.dedup();
            for &y in &members {
                class_of[y] = classes.len();
            }
            let central = self.elements[x].is_central();
            classes.push(ConjugacyClass { members, central });
        }
        let q = self.q as usize;
        for c in &classes {
            let rep = &self.elements[c.representative()];
            let same_fiber = c.members.iter().all(|&i| self.elements[i].r == rep.r);
            let ok = if c.central {
                c.size() == 1
            } else {
                // full fiber over r: all q elements with that r coordinate
                c.size() == q && same_fiber
            };
            if !ok {
                return Err(Error::StructureViolation(format!(
                    "class of element {} has size {}",
                    c.representative(),
                    c.size()
                )));
            }
        }
        if classes.len() != q * q + q - 1 {
            return Err(Error::StructureViolation(format!(
                "{} conjugacy classes instead of q^2 + q - 1",
                classes.len()
            )));
        }
        Ok(Classes { classes, class_of })
    }

    /// `(t, r) -> (ζ^{q+1} t, ζ r)` for `ζ ∈ F_{q^2}^×`.
    pub fn zeta_conjugation(&self, zeta: &FieldElement, a: &GroupElement) -> Result<GroupElement> {
        let q = self.q;
        if zeta.is_zero() || !zeta.pow_u64(q * q - 1).is_one() {
            return Err(Error::NotInMultiplicativeGroup);
        }
        Ok(GroupElement {
            t: zeta.pow_u64(q + 1) * &a.t,
            r: zeta * &a.r,
        })
    }

    /// Elements of `F_{q^2}^×` inside the ambient field.
    pub fn zeta_candidates(&self) -> Vec<FieldElement> {
        let d = 2 * self.m as usize;
        crate::gf::subfield_members(&self.field, d)
            .expect("ambient field contains F_(q^2)")
            .into_iter()
            .filter(|z| !z.is_zero())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q2_enumeration() {
        let g = build_group(2).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.field().degree(), 2);
        let f = g.field();
        let (w, w2) = (f.element(2), f.element(3));
        let ts_for = |r: &FieldElement| -> Vec<FieldElement> {
            g.elements()
                .iter()
                .filter(|e| &e.r == r)
                .map(|e| e.t.clone())
                .collect()
        };
        assert_eq!(ts_for(&f.zero()), vec![f.zero(), f.one()]);
        for r in [f.one(), w.clone(), w2.clone()] {
            assert_eq!(ts_for(&r), vec![w.clone(), w2.clone()]);
        }
    }

    #[test]
    fn q2_products() {
        let g = build_group(2).unwrap();
        let f = g.field();
        let (w, w2) = (f.element(2), f.element(3));
        let a = GroupElement { t: w.clone(), r: f.one() };
        let b = GroupElement { t: w.clone(), r: w.clone() };
        assert_eq!(g.mul(&a, &b), GroupElement { t: w.clone(), r: w2.clone() });
        assert_eq!(g.inv(&a), GroupElement { t: w2.clone(), r: f.one() });
        assert_eq!(g.commutator(&a, &b), GroupElement { t: f.one(), r: f.zero() });
        assert_eq!(g.inv(&g.identity()), g.identity());
    }

    #[test]
    fn orders_and_ambient_degrees() {
        for (q, degree) in [(3u64, 4usize), (4, 4), (5, 4)] {
            let g = build_group(q).unwrap();
            assert_eq!(g.order() as u64, q * q * q);
            assert_eq!(g.field().degree(), degree);
        }
    }

    #[test]
    fn rejects_bad_q() {
        assert_eq!(build_group(6).unwrap_err(), Error::NotPrimePower(6));
        assert_eq!(build_group(11).unwrap_err(), Error::OutOfDeskScale(11));
        let f3 = make_field(3, 2).unwrap();
        assert!(matches!(
            build_group_over(3, &f3),
            Err(Error::AmbientFieldTooSmall { .. })
        ));
    }

    #[test]
    fn census_small() {
        for q in [2u64, 3, 4] {
            let g = build_group(q).unwrap();
            let census = g.subgroup_census().unwrap();
            assert_eq!(census.center.len() as u64, q);
        }
    }

    #[test]
    fn class_counts() {
        let g = build_group(2).unwrap();
        let classes = g.conjugacy_classes().unwrap();
        let mut sizes: Vec<_> = classes.classes.iter().map(|c| c.size()).collect();
        sizes.sort();
        assert_eq!(sizes, vec![1, 1, 2, 2, 2]);
        assert_eq!(build_group(3).unwrap().conjugacy_classes().unwrap().classes.len(), 11);
    }

    #[test]
    fn exponents() {
        assert_eq!(build_group(2).unwrap().exponent(), 4);
        assert_eq!(build_group(3).unwrap().exponent(), 3);
        assert_eq!(build_group(4).unwrap().exponent(), 4);
    }

    #[test]
    fn power_form_distinguishes_at_q4() {
        assert_eq!(build_group(2).unwrap().pth_power_form(), PowerFormReading::Both);
        assert_eq!(build_group(3).unwrap().pth_power_form(), PowerFormReading::Both);
        assert_eq!(build_group(4).unwrap().pth_power_form(), PowerFormReading::QPlusOne);
    }

    #[test]
    fn zeta_rejects_outside_group() {
        let g = build_group(3).unwrap();
        let e = g.identity();
        assert_eq!(
            g.zeta_conjugation(&g.field().zero(), &e).unwrap_err(),
            Error::NotInMultiplicativeGroup
        );
        // F_81 has elements outside F_9
        let outside = g
            .field()
            .elements()
            .find(|z| !z.is_zero() && !z.pow_u64(8).is_one())
            .unwrap();
        assert_eq!(
            g.zeta_conjugation(&outside, &e).unwrap_err(),
            Error::NotInMultiplicativeGroup
        );
        let one = g.field().one();
        for a in g.elements() {
            assert_eq!(&g.zeta_conjugation(&one, a).unwrap(), a);
        }
    }
}
