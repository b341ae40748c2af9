//! Table-driven arithmetic in GF(q) for prime powers `q <= 256`.
//!
//! Elements are encoded as integers `0..q`. For `q = p^e` with `e > 1` the
//! base-`p` digits of an element are the coefficients of its polynomial
//! representative, lowest degree first. The modulus is the lexicographically
//! smallest monic irreducible polynomial of degree `e` (ordered by the
//! coefficient string read from `x^{e-1}` down to `x^0`), so encodings are
//! stable across runs: GF(4) uses `x^2 + x + 1`, GF(8) uses `x^3 + x + 1`,
//! GF(256) uses `x^8 + x^4 + x^3 + x + 1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_ORDER: u32 = 256;

/// A finite field element, encoded as described in the module docs.
pub type Elem = u8;

#[derive(Clone)]
pub struct Field(Arc<Tables>);

struct Tables {
    q: usize,
    p: usize,
    e: usize,
    /// Monic modulus coefficients, lowest degree first, length `e + 1`.
    modulus: Vec<u8>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
    /// `exp[k] = g^k` for the smallest primitive element `g`, `k < q - 1`.
    exp: Vec<u8>,
    log: Vec<u8>,
}

impl Field {
    pub fn new(q: u32) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotAPrimePower(q))?;
        let tables = Tables::build(p as usize, e as usize);
        let field = Field(Arc::new(tables));
        if q <= 16 {
            if let Err(msg) = field.check_axioms() {
                panic!("GF({q}) tables are not a field: {msg}");
            }
        }
        Ok(field)
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.0.q
    }

    #[inline]
    pub fn characteristic(&self) -> usize {
        self.0.p
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.e
    }

    pub fn is_prime(&self) -> bool {
        self.0.e == 1
    }

    /// Modulus coefficients, lowest degree first (just `[0, 1]` for prime fields).
    pub fn modulus(&self) -> &[u8] {
        &self.0.modulus
    }

    /// The primitive element used for the exp/log tables.
    pub fn generator(&self) -> Elem {
        if self.0.q == 2 {
            1
        } else {
            self.0.exp[1]
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.q).map(|a| a as Elem)
    }

    pub fn contains(&self, a: u32) -> bool {
        (a as usize) < self.0.q
    }

    pub fn element(&self, a: u32) -> Result<Elem> {
        if self.contains(a) {
            Ok(a as Elem)
        } else {
            Err(Error::NotAnElement { value: a, q: self.0.q as u32 })
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        self.0.add[a as usize * self.0.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.0.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul[a as usize * self.0.q + b as usize]
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.0.inv[a as usize])
        }
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Discrete log base [`Field::generator`]; `None` for zero.
    pub fn log(&self, a: Elem) -> Option<usize> {
        (a != 0).then(|| self.0.log[a as usize] as usize)
    }

    pub fn exp(&self, k: usize) -> Elem {
        self.0.exp[k % (self.0.q - 1)]
    }

    /// Exhaustive check of the field axioms over all triples.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let q = self.0.q;
        for a in self.elements() {
            if self.add(a, 0) != a || self.mul(a, 1) != a {
                return Err(format!("identity fails at {a}"));
            }
            if self.add(a, self.neg(a)) != 0 {
                return Err(format!("additive inverse fails at {a}"));
            }
            if a != 0 && self.mul(a, self.0.inv[a as usize]) != 1 {
                return Err(format!("multiplicative inverse fails at {a}"));
            }
            for b in self.elements() {
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("commutativity fails at ({a}, {b})"));
                }
                if a != 0 && b != 0 && self.mul(a, b) == 0 {
                    return Err(format!("zero divisor ({a}, {b})"));
                }
                for c in self.elements() {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c)) {
                        return Err(format!("additive associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                        return Err(format!("multiplicative associativity fails at ({a}, {b}, {c})"));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at ({a}, {b}, {c})"));
                    }
                }
            }
        }
        debug_assert!(q >= 2);
        Ok(())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        // The modulus is canonical, so the order determines the tables.
        self.0.q == other.0.q
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

/// Returns `(p, e)` with `q = p^e`, or `None` when `q` is not a prime power
/// in `2..=256`.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if !(2..=MAX_ORDER).contains(&q) {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

impl Tables {
    fn build(p: usize, e: usize) -> Self {
        let q = p.pow(e as u32);
        let modulus = if e == 1 { vec![0, 1] } else { smallest_irreducible(p, e) };

        let mut add = vec![0u8; q * q];
        let mut neg = vec![0u8; q];
        for a in 0..q {
            let da = digits(a, p, e);
            let mut na = 0;
            for (k, &d) in da.iter().enumerate() {
                na += ((p - d) % p) * p.pow(k as u32);
            }
            neg[a] = na as u8;
            for b in 0..q {
                let db = digits(b, p, e);
                let mut sum = 0;
                for k in 0..e {
                    sum += ((da[k] + db[k]) % p) * p.pow(k as u32);
                }
                add[a * q + b] = sum as u8;
            }
        }

        let poly_mul = |a: usize, b: usize| -> usize {
            if e == 1 {
                return a * b % p;
            }
            let da = digits(a, p, e);
            let db = digits(b, p, e);
            let mut prod = vec![0usize; 2 * e - 1];
            for i in 0..e {
                for j in 0..e {
                    prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
                }
            }
            // Reduce modulo the monic modulus, highest degree first.
            for deg in (e..prod.len()).rev() {
                let c = prod[deg];
                if c == 0 {
                    continue;
                }
                for k in 0..=e {
                    let idx = deg - e + k;
                    prod[idx] = (prod[idx] + p * p - c * modulus[k] as usize % p) % p;
                }
            }
            prod[..e].iter().enumerate().map(|(k, &d)| d * p.pow(k as u32)).sum()
        };

        // Smallest primitive element, then exp/log.
        let order_of = |g: usize| -> usize {
            let mut x = g;
            let mut k = 1;
            while x != 1 {
                x = poly_mul(x, g);
                k += 1;
            }
            k
        };
        let g = if q == 2 { 1 } else { (2..q).find(|&g| order_of(g) == q - 1).unwrap_or(1) };
        let mut exp = vec![0u8; q - 1];
        let mut log = vec![0u8; q];
        let mut x = 1;
        for (k, slot) in exp.iter_mut().enumerate() {
            *slot = x as u8;
            log[x] = k as u8;
            x = poly_mul(x, g);
        }

        let mut mul = vec![0u8; q * q];
        let mut inv = vec![0u8; q];
        for a in 1..q {
            let la = log[a] as usize;
            inv[a] = exp[(q - 1 - la) % (q - 1)];
            for b in 1..q {
                mul[a * q + b] = exp[(la + log[b] as usize) % (q - 1)];
            }
        }

        Tables { q, p, e, modulus, add, mul, neg, inv, exp, log }
    }
}

fn digits(mut a: usize, p: usize, e: usize) -> Vec<usize> {
    let mut out = vec![0; e];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

/// Coefficients (lowest first, monic) of the smallest irreducible of degree `e` over GF(p).
fn smallest_irreducible(p: usize, e: usize) -> Vec<u8> {
    (0..p.pow(e as u32))
        .map(|code| {
            let mut c: Vec<usize> = digits(code, p, e);
            c.push(1);
            c
        })
        .find(|c| is_irreducible(c, p))
        .map(|c| c.into_iter().map(|x| x as u8).collect())
        .expect("an irreducible polynomial exists for every degree")
}

fn is_irreducible(f: &[usize], p: usize) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for code in 0..p.pow(d as u32) {
            let mut g = digits(code, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

/// Remainder of `f` modulo the monic `g`.
fn poly_rem(f: &[usize], g: &[usize], p: usize) -> Vec<usize> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap() % p;
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (k, &gk) in g.iter().enumerate() {
                r[shift + k] = (r[shift + k] + p * p - lead * gk % p) % p;
            }
        }
        r.pop();
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_has_characteristic_two() {
        let f = Field::new(2).unwrap();
        assert_eq!(f.add(1, 1), 0);
        assert_eq!(f.characteristic(), 2);
    }

    #[test]
    fn gf4_uses_x2_x_1() {
        let f = Field::new(4).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        assert_eq!(f.mul(2, 2), 3);
        assert_eq!(f.add(2, 3), 1);
    }

    #[test]
    fn canonical_moduli() {
        assert_eq!(Field::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(Field::new(256).unwrap().modulus(), &[1, 1, 0, 1, 1, 0, 0, 0, 1]);
        // x^2 + 1 is irreducible over GF(3) and precedes x^2 + x + 2.
        assert_eq!(Field::new(9).unwrap().modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_non_prime_powers() {
        for q in [0, 1, 6, 10, 12, 100, 257, 1024] {
            assert_eq!(Field::new(q).unwrap_err(), Error::NotAPrimePower(q));
        }
    }

    #[test]
    fn gf5_examples() {
        let f = Field::new(5).unwrap();
        assert_eq!(f.add(3, 4), 2);
        assert_eq!(f.inv(2), Ok(3));
        assert_eq!(f.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn all_small_fields_satisfy_axioms() {
        for q in (2..=16).filter(|&q| prime_power(q).is_some()) {
            Field::new(q).unwrap().check_axioms().unwrap();
        }
    }

    #[test]
    fn generator_is_primitive() {
        for q in [3, 4, 7, 8, 9, 25, 27, 49, 128, 243, 256] {
            let f = Field::new(q).unwrap();
            let mut seen = vec![false; q as usize];
            for k in 0..q as usize - 1 {
                seen[f.exp(k) as usize] = true;
            }
            assert!(seen[1..].iter().all(|&s| s), "GF({q})");
        }
    }
}
