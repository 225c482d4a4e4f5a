//! Brute-force helpers shared by the oracle and acceptance suites.
#![allow(dead_code)]

use wildquot::gf::{make_field, prime_power};

/// Schoolbook arithmetic on coefficient vectors modulo a monic polynomial.
pub struct Naive {
    p: u32,
    modulus: Vec<u32>,
}

impl Naive {
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn decode(&self, mut code: u32) -> Vec<u32> {
        (0..self.degree())
            .map(|_| {
                let d = code % self.p;
                code /= self.p;
                d
            })
            .collect()
    }

    pub fn encode(&self, v: &[u32]) -> u32 {
        v.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect();
        self.encode(&s)
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let (x, y) = (self.decode(a), self.decode(b));
        let n = self.degree();
        let mut prod = vec![0u64; 2 * n];
        for (i, &u) in x.iter().enumerate() {
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] += (u * v) as u64;
            }
        }
        let p = self.p as u64;
        for k in (n..2 * n).rev() {
            let c = prod[k] % p;
            prod[k] = 0;
            for (i, &m) in self.modulus[..n].iter().enumerate() {
                prod[k - n + i] += c * (p - m as u64);
            }
        }
        let r: Vec<u32> = prod[..n].iter().map(|&c| (c % p) as u32).collect();
        self.encode(&r)
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut acc = self.encode(&[1]);
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

pub fn naive_field(p: u32, degree: usize) -> Naive {
    let spec = make_field(p, degree).unwrap();
    Naive {
        p,
        modulus: spec.modulus().to_vec(),
    }
}

/// `#{(x, y) : y^q + sign·y = x^{q+1}} + 1` by a double loop over codes.
pub fn naive_count(q: u64, f: u32, sign: i64) -> u64 {
    let (p, m) = prime_power(q).unwrap();
    let field = naive_field(p, (2 * f * m) as usize);
    let size = p.pow(2 * f * m);
    let minus_one = field.encode(&[p - 1]);
    let lhs: Vec<u32> = (0..size)
        .map(|y| {
            let sy = if sign > 0 { y } else { field.mul(minus_one, y) };
            field.add(field.pow(y, q), sy)
        })
        .collect();
    let rhs: Vec<u32> = (0..size).map(|x| field.pow(x, q + 1)).collect();
    let mut count = 1u64;
    for &r in &rhs {
        for &l in &lhs {
            if l == r {
                count += 1;
            }
        }
    }
    count
}
