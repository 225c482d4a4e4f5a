//! Character-level representation theory of `G`.
//!
//! Nothing here builds representation matrices; every statement is checked
//! through class data, counts and exact inner products.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::group::{Classes, GroupTable};
use crate::local::{LocalExpansion, RamificationProfile, SwanDims, default_precision};
use crate::scalar::{lift, ExactInt};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FieldKind {
    Complex,
    ContainsMuP,
    NoMuP,
}

impl FieldKind {
    pub const ALL: [FieldKind; 3] = [FieldKind::Complex, FieldKind::ContainsMuP, FieldKind::NoMuP];
}

fn split(q: u64) -> Result<(u64, u64)> {
    let (p, m) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    Ok((p as u64, m as u64))
}

/// Number of irreducible representations over a field of the given kind.
pub fn irr_count(q: u64, kind: FieldKind) -> Result<u64> {
    let (p, _) = split(q)?;
    Ok(match kind {
        FieldKind::NoMuP => 1 + (q * q + q - 2) / (p - 1),
        _ => q * q + q - 1,
    })
}

/// Exponents `k` whose power maps generate the Galois action on classes.
fn power_maps(p: u64, kind: FieldKind) -> Vec<u64> {
    match kind {
        FieldKind::Complex => vec![1],
        FieldKind::NoMuP => (1..p * p).filter(|k| k % p != 0).collect(),
        FieldKind::ContainsMuP => (0..p).map(|j| 1 + p * j).collect(),
    }
}

/// Orbits of conjugacy classes under the power maps `a -> a^k`.
pub fn irr_count_by_orbits(group: &GroupTable, classes: &Classes, kind: FieldKind) -> Result<u64> {
    let n = classes.classes.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for k in power_maps(group.p() as u64, kind) {
        for (c, class) in classes.classes.iter().enumerate() {
            let image = classes.class_of[group.pow_idx(class.representative(), k)];
            if class
                .members
                .iter()
                .any(|&g| classes.class_of[group.pow_idx(g, k)] != image)
            {
                return Err(Error::StructureViolation(format!(
                    "power map {k} does not act on classes"
                )));
            }
            let (a, b) = (find(&mut parent, c), find(&mut parent, image));
            parent[a] = b;
        }
    }
    Ok((0..n).filter(|&c| find(&mut parent, c) == c).count() as u64)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub label: String,
    pub count: u64,
    pub degree: u64,
    pub endo_dim: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IrrCensus {
    pub q: u64,
    pub kind: FieldKind,
    pub entries: Vec<CensusEntry>,
    pub total: u64,
}

impl IrrCensus {
    fn new(q: u64, kind: FieldKind, entries: Vec<CensusEntry>) -> Self {
        let total = entries.iter().map(|e| e.count).sum();
        IrrCensus {
            q,
            kind,
            entries,
            total,
        }
    }

    pub fn entry(&self, label: &str) -> Option<&CensusEntry> {
        self.entries.iter().find(|e| e.label == label)
    }
}

fn entry(label: &str, count: u64, degree: u64, endo_dim: u64) -> CensusEntry {
    CensusEntry {
        label: label.to_string(),
        count,
        degree,
        endo_dim,
    }
}

fn complex_census(q: u64) -> IrrCensus {
    IrrCensus::new(
        q,
        FieldKind::Complex,
        vec![
            entry("trivial", 1, 1, 1),
            entry("linear", q * q - 1, 1, 1),
            entry("V", q - 1, q, 1),
        ],
    )
}

fn rational_census(q: u64, p: u64) -> IrrCensus {
    let mut entries = vec![
        entry("trivial", 1, 1, 1),
        entry("W", (q * q - 1) / (p - 1), p - 1, p - 1),
    ];
    if p == 2 {
        entries.push(entry("2V", q - 1, 2 * q, 4));
    } else {
        entries.push(entry("V", (q - 1) / (p - 1), q * (p - 1), p - 1));
    }
    IrrCensus::new(q, FieldKind::NoMuP, entries)
}

/// A basic set of irreducibles over a field of the given kind.
///
/// With `μ_p` in the field every complex character is realized when `p` is
/// odd; for `p = 2` the quaternion constituents stay as over `Q`.
pub fn basic_set(q: u64, kind: FieldKind) -> Result<IrrCensus> {
    let (p, _) = split(q)?;
    Ok(match kind {
        FieldKind::Complex => complex_census(q),
        FieldKind::NoMuP => rational_census(q, p),
        FieldKind::ContainsMuP => {
            let base = if p == 2 { rational_census(q, p) } else { complex_census(q) };
            IrrCensus { kind, ..base }
        }
    })
}

/// `Σ count · degree² / endo_dim = q³`.
pub fn wedderburn_audit(census: &IrrCensus) -> Result<()> {
    let sum: Ratio<i64> = census
        .entries
        .iter()
        .map(|e| Ratio::new((e.count * e.degree * e.degree) as i64, e.endo_dim as i64))
        .sum();
    let order = census.q.pow(3);
    if sum != Ratio::from_integer(order as i64) {
        return Err(Error::AuditFailure {
            sum: sum.to_string(),
            order,
        });
    }
    Ok(())
}

/// Complex census read off the group: `[G : G']` linear characters, and the
/// remaining classes share the leftover dimension `|G| - [G : G']`.
pub fn complex_census_from_group(group: &GroupTable, classes: &Classes) -> Result<IrrCensus> {
    let q = group.q();
    let linear = (group.order() / group.subgroup_census()?.commutator_subgroup.len()) as u64;
    let rest = classes.classes.len() as u64 - linear;
    let leftover = group.order() as u64 - linear;
    if rest == 0 || !leftover.is_multiple_of(rest) {
        return Err(Error::StructureViolation("class count does not fit the degrees".into()));
    }
    let sq = leftover / rest;
    let d = (1..=sq).find(|d| d * d >= sq).unwrap_or(0);
    if d * d != sq {
        return Err(Error::StructureViolation(format!(
            "remaining characters would have degree sqrt({sq})"
        )));
    }
    Ok(IrrCensus::new(
        q,
        FieldKind::Complex,
        vec![
            entry("trivial", 1, 1, 1),
            entry("linear", linear - 1, 1, 1),
            entry("V", rest, d, 1),
        ],
    ))
}

/// Rational-valued function on conjugacy classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction<T: ExactInt = i64> {
    pub values: Vec<Ratio<T>>,
    sizes: Vec<usize>,
    class_of: Vec<usize>,
}

impl<T: ExactInt> ClassFunction<T> {
    pub fn new(classes: &Classes, values: Vec<Ratio<T>>) -> Self {
        assert_eq!(values.len(), classes.classes.len());
        ClassFunction {
            values,
            sizes: classes.classes.iter().map(|c| c.size()).collect(),
            class_of: classes.class_of.clone(),
        }
    }

    pub fn from_fn(classes: &Classes, f: impl Fn(usize) -> Ratio<T>) -> Self {
        let values = classes.classes.iter().map(|c| f(c.representative())).collect();
        Self::new(classes, values)
    }

    pub fn trivial(classes: &Classes) -> Self {
        Self::from_fn(classes, |_| Ratio::from_integer(T::one()))
    }

    /// `|G|` on the identity class, zero elsewhere.
    pub fn regular(classes: &Classes, identity: usize) -> Self {
        let n = classes.class_of.len() as i64;
        let id = classes.class_of[identity];
        let values = (0..classes.classes.len())
            .map(|c| Ratio::from_integer(if c == id { lift(n) } else { T::zero() }))
            .collect();
        Self::new(classes, values)
    }

    pub fn at(&self, g: usize) -> Ratio<T> {
        self.values[self.class_of[g]]
    }

    pub fn mul(&self, other: &Self) -> Self {
        ClassFunction {
            values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect(),
            sizes: self.sizes.clone(),
            class_of: self.class_of.clone(),
        }
    }

    /// `(1/|G|) Σ_g f(g) h(g)`; values are rational so no conjugation is
    /// needed.
    pub fn inner_product(&self, other: &Self) -> Ratio<T> {
        let order = lift::<T>(self.class_of.len() as i64);
        let sum = self
            .values
            .iter()
            .zip(&other.values)
            .zip(&self.sizes)
            .fold(Ratio::from_integer(T::zero()), |acc, ((a, b), &s)| {
                acc + a * b * Ratio::from_integer(lift::<T>(s as i64))
            });
        sum / Ratio::from_integer(order)
    }

    /// `(1/|H|) Σ_{h ∈ H} f(h)` over explicit subgroup members.
    pub fn mean_over(&self, members: &[usize]) -> Ratio<T> {
        let sum = members
            .iter()
            .fold(Ratio::from_integer(T::zero()), |acc, &h| acc + self.at(h));
        sum / Ratio::from_integer(lift::<T>(members.len() as i64))
    }
}

/// The character of `H¹(C, Q_ℓ)` in closed form: `q(q-1)` at `e`, `-q` on
/// the rest of the center, `0` elsewhere.
pub fn cohomology_character(group: &GroupTable, classes: &Classes) -> ClassFunction {
    let q = group.q() as i64;
    let e = group.identity_index();
    ClassFunction::from_fn(classes, |g| {
        Ratio::from_integer(if g == e {
            q * (q - 1)
        } else if group.element(g).is_central() {
            -q
        } else {
            0
        })
    })
}

/// The same character rebuilt from fixed-scheme lengths, `χ(σ) = 2 - Λ(σ)`.
pub fn lefschetz_character(group: &GroupTable, classes: &Classes) -> Result<ClassFunction> {
    let q = group.q() as i64;
    let local = LocalExpansion::new(group, default_precision(group.q()))?;
    let e = group.identity_index();
    let mut values = Vec::with_capacity(classes.classes.len());
    for class in &classes.classes {
        let g = class.representative();
        let v = if g == e {
            q * (q - 1)
        } else {
            2 - local.displacement(g)? as i64
        };
        values.push(Ratio::from_integer(v));
    }
    Ok(ClassFunction::new(classes, values))
}

/// `2 - χ(σ)` equals the fixed-scheme length for every `σ ≠ e`.
pub fn trace_vs_lefschetz(group: &GroupTable, classes: &Classes) -> Result<()> {
    let chi = cohomology_character(group, classes);
    let local = LocalExpansion::new(group, default_precision(group.q()))?;
    for s in (0..group.order()).filter(|&s| s != group.identity_index()) {
        let length = local.displacement(s)? as i64;
        if Ratio::from_integer(2 - length) != chi.at(s) {
            return Err(Error::LefschetzMismatch(s));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantDims {
    pub h1_g: u64,
    pub h1_z: u64,
    pub h1_tensor_h1_g: u64,
}

fn as_dimension(v: Ratio<i64>) -> Result<u64> {
    if v.is_integer() && v.to_integer() >= 0 {
        Ok(v.to_integer() as u64)
    } else {
        Err(Error::NonIntegralDimension(v.to_string()))
    }
}

/// Dimensions of `H¹^G`, `H¹^Z` and `(H¹ ⊗ H¹)^G`.
pub fn invariant_dims(group: &GroupTable, classes: &Classes, chi: &ClassFunction) -> Result<InvariantDims> {
    let one = ClassFunction::trivial(classes);
    Ok(InvariantDims {
        h1_g: as_dimension(chi.inner_product(&one))?,
        h1_z: as_dimension(chi.mean_over(&group.expected_center()))?,
        h1_tensor_h1_g: as_dimension(chi.mul(chi).inner_product(&one))?,
    })
}

/// Invariant dimensions of the representation with character `chi` along
/// the whole filtration, ready for the Swan conductor.
pub fn swan_dims(profile: &RamificationProfile, chi: &ClassFunction, e: usize) -> Result<SwanDims> {
    let dim_m = as_dimension(chi.at(e))?;
    let invariants = profile
        .filtration
        .iter()
        .filter(|(i, n)| *i >= 1 && *n > 1)
        .map(|&(i, _)| Ok((i, as_dimension(chi.mean_over(&profile.members(i)))?)))
        .collect::<Result<_>>()?;
    Ok(SwanDims { dim_m, invariants })
}

/// `q(q-1) = ((q-1)/(p-1)) · q(p-1)`.
pub fn dimension_match(q: u64) -> Result<bool> {
    let (p, _) = split(q)?;
    Ok(q * (q - 1) == (q - 1) / (p - 1) * (q * (p - 1)))
}
