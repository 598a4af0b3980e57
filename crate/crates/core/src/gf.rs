//! Arithmetic in GF(q) for prime powers `q <= 2^16` via exp/log tables.
//!
//! An element is encoded as the integer `sum a_i p^i`, where `a_i` are the
//! coordinates in the power basis `1, x, ..., x^(k-1)` modulo a fixed monic
//! primitive polynomial. For `q` in {4, 8, 9, 16} the Conway polynomial is
//! used; otherwise the smallest primitive polynomial in the order of its
//! encoding, so every table is reproducible.

use crate::error::{Error, Result};

pub type Elem = u32;

pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// `Some((p, k))` when `q = p^k` with `p` prime and `k >= 1`.
pub fn prime_power_decomposition(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut rest = q;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

pub fn is_prime_power(q: u64) -> bool {
    prime_power_decomposition(q).is_some()
}

/// Low-to-high coefficients of the Conway polynomials for the small
/// non-prime fields.
fn conway_polynomial(q: u64) -> Option<Vec<u32>> {
    Some(match q {
        4 => vec![1, 1, 1],
        8 => vec![1, 1, 0, 1],
        9 => vec![2, 2, 1],
        16 => vec![1, 1, 0, 0, 1],
        _ => return None,
    })
}

#[derive(Debug, Clone)]
pub struct FieldTable {
    q: u32,
    p: u32,
    degree: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    add: Option<Vec<Elem>>,
    neg: Vec<Elem>,
}

impl FieldTable {
    pub fn new(q: u64) -> Result<Self> {
        if q > MAX_FIELD_ORDER {
            return Err(Error::invalid(format!(
                "field order {q} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        let (p, degree) = prime_power_decomposition(q)
            .ok_or_else(|| Error::invalid(format!("{q} is not a prime power")))?;
        let (p, q) = (p as u32, q as u32);
        let (modulus, exp) = match conway_polynomial(q as u64) {
            Some(modulus) => {
                let exp = power_table(p, &modulus)
                    .expect("Conway polynomials are primitive");
                (modulus, exp)
            }
            None => search_primitive(p, degree),
        };
        let mut log = vec![0; q as usize];
        for (i, &e) in exp.iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let mut exp_doubled = exp.clone();
        exp_doubled.extend_from_slice(&exp);

        let neg = (0..q).map(|a| digitwise(p, degree, a, 0, |x, _| (p - x) % p)).collect();
        let add = (q <= 256).then(|| {
            (0..q)
                .flat_map(|a| (0..q).map(move |b| (a, b)))
                .map(|(a, b)| digitwise(p, degree, a, b, |x, y| (x + y) % p))
                .collect()
        });
        Ok(Self {
            q,
            p,
            degree,
            modulus,
            exp: exp_doubled,
            log,
            add,
            neg,
        })
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Low-to-high coefficients of the defining polynomial; for a prime
    /// field this is `x - g` with `g` the smallest primitive root.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// The fixed primitive element.
    pub fn generator(&self) -> Elem {
        self.exp[1 % (self.q as usize - 1).max(1)]
    }

    /// `generator^i`.
    pub fn pow_generator(&self, i: u64) -> Elem {
        self.exp[(i % (self.q as u64 - 1)) as usize]
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.add {
            Some(t) => t[(a * self.q + b) as usize],
            None if self.p == 2 => a ^ b,
            None => digitwise(self.p, self.degree, a, b, |x, y| (x + y) % self.p),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            0
        } else {
            self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        (a != 0).then(|| {
            let l = self.log[a as usize];
            self.exp[((self.q - 1 - l) % (self.q - 1)) as usize]
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.q
    }
}

/// Applies `op` coordinate-wise to the base-`p` digits of `a` and `b`.
fn digitwise(p: u32, k: u32, a: u32, b: u32, op: impl Fn(u32, u32) -> u32) -> u32 {
    let (mut a, mut b) = (a, b);
    let mut out = 0;
    let mut place = 1;
    for _ in 0..k {
        out += op(a % p, b % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

/// Powers `x^0 .. x^(q-2)` modulo the monic `modulus`, or `None` when `x`
/// does not have order `q - 1`.
fn power_table(p: u32, modulus: &[u32]) -> Option<Vec<Elem>> {
    let k = modulus.len() - 1;
    let q = p.pow(k as u32);
    let mut digits = vec![0u32; k];
    digits[0] = 1;
    let encode = |d: &[u32]| d.iter().rev().fold(0, |acc, &c| acc * p + c);
    let mut table = Vec::with_capacity(q as usize - 1);
    for step in 0..q - 1 {
        let e = encode(&digits);
        if step > 0 && e == 1 {
            return None;
        }
        table.push(e);
        // Multiply by x and reduce with x^k = -(lower coefficients).
        let top = digits[k - 1];
        for i in (1..k).rev() {
            digits[i] = digits[i - 1];
        }
        digits[0] = 0;
        if top != 0 {
            for (i, d) in digits.iter_mut().enumerate() {
                *d = (*d + (p - modulus[i]) * top) % p;
            }
        }
    }
    (encode(&digits) == 1).then_some(table)
}

fn search_primitive(p: u32, k: u32) -> (Vec<u32>, Vec<Elem>) {
    if k == 1 {
        // Prime field: x - g for the smallest primitive root g.
        for g in 1..p.max(2) {
            let modulus = vec![(p - g) % p, 1];
            if let Some(table) = power_table(p, &modulus) {
                return (modulus, table);
            }
        }
        // p = 2: the only nonzero element is 1.
        return (vec![1, 1], vec![1]);
    }
    let q = p.pow(k);
    for low in 0..q {
        let mut modulus: Vec<u32> = (0..k).map(|i| low / p.pow(i) % p).collect();
        modulus.push(1);
        if modulus[0] == 0 {
            continue;
        }
        if let Some(table) = power_table(p, &modulus) {
            return (modulus, table);
        }
    }
    unreachable!("every finite field has a primitive polynomial")
}
