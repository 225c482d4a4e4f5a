//! Exact arithmetic in `F_{p^M}` and `F_p`-linear algebra on coordinates.
//!
//! A field is described by a [`FieldSpec`]: the prime `p`, the extension
//! degree `M`, and the lexicographically smallest monic irreducible modulus of
//! degree `M`. Elements are stored as the integer `sum c_i p^i` of their
//! coefficient vector (constant term first), which is also the enumeration
//! order used everywhere else in the crate.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};

/// Largest extension degree accepted by [`make_field`].
pub const MAX_DEGREE: usize = 24;

/// Fields up to this size get log/antilog tables on first multiplication.
const TABLE_LIMIT: u32 = 1 << 20;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^m`, returning `(p, m)`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        p = q;
    }
    let mut rest = q;
    let mut m = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Dense polynomials over `F_p`, constant term first, no trailing zeros.
mod poly {
    pub type Poly = Vec<u32>;

    pub fn trim(a: &mut Poly) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    pub fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut t, mut new_t) = (0i64, 1i64);
        let (mut r, mut new_r) = (p as i64, a as i64);
        while new_r != 0 {
            let quot = r / new_r;
            (t, new_t) = (new_t, t - quot * new_t);
            (r, new_r) = (new_r, r - quot * new_r);
        }
        t.rem_euclid(p as i64) as u32
    }

    pub fn sub(a: &Poly, b: &Poly, p: u32) -> Poly {
        let n = a.len().max(b.len());
        let mut out: Poly = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &Poly, b: &Poly, p: u32) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let p64 = p as u64;
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p64;
            }
        }
        let mut out: Poly = out.into_iter().map(|c| c as u32).collect();
        trim(&mut out);
        out
    }

    /// Remainder modulo an arbitrary nonzero divisor.
    pub fn rem(a: &Poly, m: &Poly, p: u32) -> Poly {
        let mut r = a.clone();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p) as u64;
        let p64 = p as u64;
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = r[r.len() - 1] as u64 * lead_inv % p64;
            for (i, &c) in m.iter().enumerate() {
                let sub = factor * c as u64 % p64;
                r[i + shift] = ((r[i + shift] as u64 + p64 - sub) % p64) as u32;
            }
            trim(&mut r);
        }
        r
    }

    pub fn gcd(a: &Poly, b: &Poly, p: u32) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn pow_mod(base: &Poly, mut e: u64, m: &Poly, p: u32) -> Poly {
        let mut result: Poly = vec![1];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = rem(&mul(&result, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        result
    }

    /// Ben-Or: `f` of degree `n` is irreducible iff `gcd(f, x^{p^d} - x) = 1`
    /// for every `d <= n/2`.
    pub fn is_irreducible(f: &Poly, p: u32) -> bool {
        let n = f.len() - 1;
        if n == 0 {
            return false;
        }
        let x: Poly = vec![0, 1];
        let mut h = rem(&x, f, p);
        for _ in 1..=n / 2 {
            h = pow_mod(&h, p as u64, f, p);
            let g = gcd(f, &sub(&h, &x, p), p);
            if g.len() > 1 {
                return false;
            }
        }
        true
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

struct Inner {
    p: u32,
    degree: usize,
    modulus: Vec<u32>,
    size: u32,
    tables: OnceLock<Option<Tables>>,
}

/// A finite field `F_{p^M}` with its deterministic modulus.
///
/// Cloning is cheap; all clones describe the same field.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

/// Returns the field `F_{p^M}` whose modulus is the lexicographically
/// smallest monic irreducible of degree `M`, comparing `(c_{M-1}, ..., c_0)`.
pub fn make_field(p: u32, degree: usize) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NonPrime(p as u64));
    }
    if degree == 0 || degree > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(degree));
    }
    let size = (p as u64)
        .checked_pow(degree as u32)
        .filter(|&n| n <= u32::MAX as u64)
        .ok_or(Error::FieldTooLarge { p, degree })? as u32;
    let modulus = (0..size)
        .map(|k| {
            let mut f = digits(k, p, degree);
            f.push(1);
            f
        })
        .find(|f| poly::is_irreducible(f, p))
        .expect("an irreducible polynomial of every degree exists");
    Ok(FieldSpec(Arc::new(Inner {
        p,
        degree,
        modulus,
        size,
        tables: OnceLock::new(),
    })))
}

fn digits(mut code: u32, p: u32, degree: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(degree);
    for _ in 0..degree {
        out.push(code % p);
        code /= p;
    }
    out
}

impl FieldSpec {
    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.degree
    }

    /// Number of elements, `p^M`.
    pub fn size(&self) -> u32 {
        self.0.size
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn same_field(&self, other: &FieldSpec) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.degree == other.0.degree)
    }

    pub fn zero(&self) -> FieldElement {
        self.element(0)
    }

    pub fn one(&self) -> FieldElement {
        self.element(1)
    }

    /// Element with the given code; panics when `code >= size`.
    pub fn element(&self, code: u32) -> FieldElement {
        assert!(code < self.0.size, "code {code} out of range");
        FieldElement {
            spec: self.clone(),
            code,
        }
    }

    /// Image of an integer under `Z -> F_p -> F_{p^M}`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        self.element(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> FieldElement {
        assert!(coeffs.len() <= self.0.degree);
        let p = self.0.p;
        let code = coeffs
            .iter()
            .rev()
            .fold(0u32, |acc, &c| acc * p + c % p);
        self.element(code)
    }

    /// All elements in enumeration (code) order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.size).map(move |c| self.element(c))
    }

    fn add_codes(&self, a: u32, b: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.degree == 1 {
            return (a + b) % p;
        }
        let (mut a, mut b) = (a, b);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.0.degree {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn neg_code(&self, a: u32) -> u32 {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.degree == 1 {
            return (p - a) % p;
        }
        let mut a = a;
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.0.degree {
            out += ((p - a % p) % p) * place;
            a /= p;
            place = place.wrapping_mul(p);
        }
        out
    }

    fn poly_mul_codes(&self, a: u32, b: u32) -> u32 {
        let inner = &self.0;
        if inner.degree == 1 {
            return ((a as u64 * b as u64) % inner.p as u64) as u32;
        }
        let mut x = digits(a, inner.p, inner.degree);
        let mut y = digits(b, inner.p, inner.degree);
        poly::trim(&mut x);
        poly::trim(&mut y);
        let r = poly::rem(&poly::mul(&x, &y, inner.p), &inner.modulus, inner.p);
        r.iter().rev().fold(0u32, |acc, &c| acc * inner.p + c)
    }

    fn tables(&self) -> Option<&Tables> {
        self.0
            .tables
            .get_or_init(|| {
                let n = self.0.size;
                if n > TABLE_LIMIT || n <= 2 {
                    return None;
                }
                let order = (n - 1) as u64;
                let factors = prime_factors(order);
                let is_generator = |g: u32| {
                    factors
                        .iter()
                        .all(|&l| self.slow_pow(g, order / l) != 1)
                };
                let g = (2..n).find(|&g| is_generator(g))?;
                let mut exp = vec![0u32; 2 * (n as usize - 1)];
                let mut log = vec![0u32; n as usize];
                let mut x = 1u32;
                for i in 0..(n - 1) as usize {
                    exp[i] = x;
                    log[x as usize] = i as u32;
                    x = self.poly_mul_codes(x, g);
                }
                for i in (n - 1) as usize..exp.len() {
                    exp[i] = exp[i - (n - 1) as usize];
                }
                Some(Tables { exp, log })
            })
            .as_ref()
    }

    fn slow_pow(&self, base: u32, mut e: u64) -> u32 {
        let mut result = 1u32;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.poly_mul_codes(result, b);
            }
            b = self.poly_mul_codes(b, b);
            e >>= 1;
        }
        result
    }

    fn mul_codes(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.0.degree == 1 {
            return self.poly_mul_codes(a, b);
        }
        match self.tables() {
            Some(t) => t.exp[(t.log[a as usize] + t.log[b as usize]) as usize],
            None => self.poly_mul_codes(a, b),
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.same_field(other)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F_{}^{} mod {:?}",
            self.0.p, self.0.degree, self.0.modulus
        )
    }
}

/// An element of a [`FieldSpec`].
#[derive(Clone)]
pub struct FieldElement {
    spec: FieldSpec,
    code: u32,
}

/// Binary operation selector for [`arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    /// Inverse of the left operand; the right operand is ignored.
    Inv,
    /// Power of the left operand; the right operand is ignored.
    Pow(i64),
}

/// Checked entry point covering every field operation.
pub fn arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<FieldElement> {
    if !a.spec.same_field(&b.spec) {
        return Err(Error::SpecMismatch);
    }
    match op {
        ArithOp::Add => Ok(a.add_unchecked(b)),
        ArithOp::Sub => Ok(a.add_unchecked(&b.neg_unchecked())),
        ArithOp::Mul => Ok(a.mul_unchecked(b)),
        ArithOp::Inv => a.inv(),
        ArithOp::Pow(n) => a.pow(n),
    }
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn code(&self) -> u32 {
        self.code
    }

    /// Coordinates over `F_p`, constant term first, length `M`.
    pub fn coeffs(&self) -> Vec<u32> {
        digits(self.code, self.spec.0.p, self.spec.0.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn is_one(&self) -> bool {
        self.code == 1
    }

    fn with_code(&self, code: u32) -> FieldElement {
        FieldElement {
            spec: self.spec.clone(),
            code,
        }
    }

    fn check(&self, other: &FieldElement) {
        assert!(
            self.spec.same_field(&other.spec),
            "operands live in different fields"
        );
    }

    fn add_unchecked(&self, other: &FieldElement) -> FieldElement {
        self.with_code(self.spec.add_codes(self.code, other.code))
    }

    fn neg_unchecked(&self) -> FieldElement {
        self.with_code(self.spec.neg_code(self.code))
    }

    fn mul_unchecked(&self, other: &FieldElement) -> FieldElement {
        self.with_code(self.spec.mul_codes(self.code, other.code))
    }

    pub fn try_add(&self, other: &FieldElement) -> Result<FieldElement> {
        arith(self, other, ArithOp::Add)
    }

    pub fn try_sub(&self, other: &FieldElement) -> Result<FieldElement> {
        arith(self, other, ArithOp::Sub)
    }

    pub fn try_mul(&self, other: &FieldElement) -> Result<FieldElement> {
        arith(self, other, ArithOp::Mul)
    }

    pub fn try_div(&self, other: &FieldElement) -> Result<FieldElement> {
        if !self.spec.same_field(&other.spec) {
            return Err(Error::SpecMismatch);
        }
        Ok(self.mul_unchecked(&other.inv()?))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.spec.0.size;
        if self.spec.0.degree > 1 {
            if let Some(t) = self.spec.tables() {
                let l = t.log[self.code as usize];
                return Ok(self.with_code(t.exp[((n - 1 - l) % (n - 1)) as usize]));
            }
        } else {
            return Ok(self.with_code(poly::inv_mod(self.code, self.spec.0.p)));
        }
        Ok(self.pow_u64((n - 2) as u64))
    }

    /// Square-and-multiply power; negative exponents invert first.
    pub fn pow(&self, n: i64) -> Result<FieldElement> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        Ok(self.pow_u64(n as u64))
    }

    pub fn pow_u64(&self, e: u64) -> FieldElement {
        if self.is_zero() {
            return self.with_code(if e == 0 { 1 } else { 0 });
        }
        // a^(n-1) = 1 for a != 0
        let mut e = e % (self.spec.0.size as u64 - 1);
        let mut result = 1u32;
        let mut b = self.code;
        while e > 0 {
            if e & 1 == 1 {
                result = self.spec.mul_codes(result, b);
            }
            b = self.spec.mul_codes(b, b);
            e >>= 1;
        }
        self.with_code(result)
    }

    /// Absolute Frobenius `a -> a^p`.
    pub fn frobenius(&self) -> FieldElement {
        self.pow_u64(self.spec.0.p as u64)
    }

    /// `a^{p^e}` by `e` Frobenius steps.
    pub fn frobenius_pow(&self, e: u32) -> FieldElement {
        (0..e).fold(self.clone(), |acc, _| acc.frobenius())
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && self.spec.same_field(&other.spec)
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.0.p.hash(state);
        self.spec.0.degree.hash(state);
        self.code.hash(state);
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.code.cmp(&other.code)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FieldElement {
    /// Polynomial in the generator `a` of the modulus, e.g. `a^2+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => format!("{c}"),
                (1, 1) => "a".to_string(),
                (1, c) => format!("{c}a"),
                (i, 1) => format!("a^{i}"),
                (i, c) => format!("{c}a^{i}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

macro_rules! impl_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.check(rhs);
                let f: fn(&FieldElement, &FieldElement) -> FieldElement = $body;
                f(self, rhs)
            }
        }
        impl $trait<FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldElement> for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldElement> for &FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                self.$method(&rhs)
            }
        }
    };
}

impl_binop!(Add, add, |a, b| a.add_unchecked(b));
impl_binop!(Sub, sub, |a, b| a.add_unchecked(&b.neg_unchecked()));
impl_binop!(Mul, mul, |a, b| a.mul_unchecked(b));

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_unchecked()
    }
}

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.neg_unchecked()
    }
}

/// Dense matrix over `F_p`, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Builds a matrix from its columns.
    pub fn from_columns(p: u32, rows: usize, columns: &[Vec<u32>]) -> Self {
        let mut m = FpMatrix::zeros(p, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, &v) in col.iter().enumerate() {
                m.set(i, j, v % p);
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Reduced row echelon form in place; returns pivot columns.
    fn rref(&mut self) -> Vec<usize> {
        let p = self.p as u64;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pr) = (row..self.rows).find(|&r| self.get(r, col) != 0) else {
                continue;
            };
            if pr != row {
                for j in 0..self.cols {
                    self.data.swap(pr * self.cols + j, row * self.cols + j);
                }
            }
            let inv = poly::inv_mod(self.get(row, col), self.p) as u64;
            for j in 0..self.cols {
                let v = self.get(row, j) as u64 * inv % p;
                self.set(row, j, v as u32);
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col) as u64;
                if factor == 0 {
                    continue;
                }
                for j in 0..self.cols {
                    let v = (self.get(r, j) as u64 + p - factor * self.get(row, j) as u64 % p) % p;
                    self.set(r, j, v as u32);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of the null space.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u32; self.cols];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = (self.p - m.get(r, f)) % self.p;
                }
                v
            })
            .collect()
    }

    /// One solution of `A v = b`, if any.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, b[i] % self.p);
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut v = vec![0u32; self.cols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = aug.get(r, self.cols);
        }
        Some(v)
    }
}

/// Column space of an [`FpMatrix`], kept in echelon form for fast
/// membership tests.
#[derive(Debug, Clone)]
pub struct ImageSpace {
    p: u32,
    /// (pivot coordinate, basis vector) with the pivot entry equal to 1.
    basis: Vec<(usize, Vec<u32>)>,
}

impl ImageSpace {
    pub fn of(matrix: &FpMatrix) -> Self {
        // row-reduce the transpose: rows of A^T span the image
        let mut t = FpMatrix::zeros(matrix.p, matrix.cols, matrix.rows);
        for i in 0..matrix.rows {
            for j in 0..matrix.cols {
                t.set(j, i, matrix.get(i, j));
            }
        }
        let pivots = t.rref();
        let basis = pivots
            .iter()
            .enumerate()
            .map(|(r, &pc)| (pc, (0..t.cols).map(|j| t.get(r, j)).collect()))
            .collect();
        ImageSpace {
            p: matrix.p,
            basis,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let p = self.p as u64;
        let mut w: Vec<u64> = v.iter().map(|&x| x as u64 % p).collect();
        for (pc, b) in &self.basis {
            let factor = w[*pc];
            if factor == 0 {
                continue;
            }
            for (wi, &bi) in w.iter_mut().zip(b) {
                *wi = (*wi + p - factor * bi as u64 % p) % p;
            }
        }
        w.iter().all(|&x| x == 0)
    }
}

/// An additive (`F_p`-linear) map `a -> sum_i c_i a^{p^{e_i}}`.
#[derive(Debug, Clone)]
pub struct AdditiveMap {
    terms: Vec<(FieldElement, u32)>,
}

impl AdditiveMap {
    pub fn new(terms: Vec<(FieldElement, u32)>) -> Self {
        AdditiveMap { terms }
    }

    pub fn identity(spec: &FieldSpec) -> Self {
        AdditiveMap::new(vec![(spec.one(), 0)])
    }

    /// `a -> a^{p^e} - a`, whose kernel is `F_{p^e} ∩ F_{p^M}`.
    pub fn frobenius_minus_identity(spec: &FieldSpec, e: u32) -> Self {
        AdditiveMap::new(vec![(spec.one(), e), (-spec.one(), 0)])
    }

    pub fn eval(&self, a: &FieldElement) -> FieldElement {
        self.terms
            .iter()
            .fold(a.spec().zero(), |acc, (c, e)| acc + c * a.frobenius_pow(*e))
    }

    /// Matrix of the map in the power basis `1, a, ..., a^{M-1}`.
    pub fn matrix(&self, spec: &FieldSpec) -> FpMatrix {
        let m = spec.degree();
        let p = spec.characteristic();
        let columns: Vec<Vec<u32>> = (0..m)
            .map(|j| {
                let mut unit = vec![0u32; m];
                unit[j] = 1;
                self.eval(&spec.from_coeffs(&unit)).coeffs()
            })
            .collect();
        FpMatrix::from_columns(p, m, &columns)
    }
}

/// All solutions of `map(a) = target`, in enumeration order.
///
/// The solution set is empty or a coset of the kernel, so its size is
/// `0` or `p^{dim ker}`.
pub fn solve_additive(
    spec: &FieldSpec,
    map: &AdditiveMap,
    target: &FieldElement,
) -> Vec<FieldElement> {
    let matrix = map.matrix(spec);
    let Some(particular) = matrix.solve(&target.coeffs()) else {
        return Vec::new();
    };
    let kernel = matrix.kernel();
    let p = spec.characteristic();
    let base = spec.from_coeffs(&particular);
    let kernel: Vec<FieldElement> = kernel.iter().map(|v| spec.from_coeffs(v)).collect();
    let mut out = vec![base];
    for k in &kernel {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for s in &out {
            let mut acc = s.clone();
            for _ in 0..p {
                next.push(acc.clone());
                acc = acc + k;
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// The subfield `F_{p^d} ⊂ F_{p^M}` in enumeration order.
pub fn subfield_members(spec: &FieldSpec, d: usize) -> Result<Vec<FieldElement>> {
    if d == 0 || !spec.degree().is_multiple_of(d) {
        return Err(Error::NotASubfieldDegree {
            d,
            degree: spec.degree(),
        });
    }
    let map = AdditiveMap::frobenius_minus_identity(spec, d as u32);
    Ok(solve_additive(spec, &map, &spec.zero()))
}
