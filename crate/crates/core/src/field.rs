//! Arithmetic in small finite fields GF(p^k).
//!
//! Elements are encoded as integers in `[0, q)`: the residue
//! `c_0 + c_1 x + ... + c_{k-1} x^{k-1}` is stored as `c_0 + c_1 p + ... + c_{k-1} p^{k-1}`.
//! The modulus for each `(p, k)` is the first monic primitive polynomial of
//! degree `k` when candidates are ordered by the encoding of their lower
//! coefficients, so encodings are identical on every run and platform.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Canonical encoding of a field element.
pub type Elem = u16;

const MAX_ORDER: u64 = 1 << 16;
const TABLE_ORDER: u32 = 256;

#[derive(Clone)]
pub struct FiniteField {
    inner: Arc<Inner>,
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<Elem>,
    log: Vec<u32>,
    neg: Vec<Elem>,
    add: Option<Vec<Elem>>,
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q` into `(p, k)` with `q = p^k`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let (mut rest, mut k) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

fn mulmod(a: u32, b: u32, p: u32) -> u32 {
    (a as u64 * b as u64 % p as u64) as u32
}

fn digits(mut e: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = e % p;
            e /= p;
            d
        })
        .collect()
}

fn undigits(ds: &[u32], p: u32) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Remainder of `f` modulo the monic polynomial `g`, coefficients low to high.
fn poly_rem(f: &[u32], g: &[u32], p: u32) -> Vec<u32> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        if lead != 0 {
            for (i, &gc) in g.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - mulmod(lead, gc, p)) % p;
            }
        }
        r.pop();
    }
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        for e in 0..p.pow(d as u32) {
            let mut g = digits(e, p, d as u32);
            g.push(1);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Powers of `x` modulo `modulus`; `None` unless `x` has order exactly `q - 1`.
fn primitive_powers(modulus: &[u32], p: u32, k: u32, q: u32) -> Option<Vec<Elem>> {
    let order = (q - 1) as usize;
    let mut exp = Vec::with_capacity(2 * order);
    let mut cur = vec![0u32; k as usize];
    cur[0] = 1;
    for i in 0..order {
        let enc = undigits(&cur, p);
        if i > 0 && enc == 1 {
            return None;
        }
        exp.push(enc as Elem);
        let top = cur[k as usize - 1];
        for j in (1..k as usize).rev() {
            cur[j] = cur[j - 1];
        }
        cur[0] = 0;
        for (j, c) in cur.iter_mut().enumerate() {
            *c = (*c + p - mulmod(top, modulus[j], p)) % p;
        }
        if cur.iter().all(|&d| d == 0) {
            return None;
        }
    }
    if undigits(&cur, p) != 1 {
        return None;
    }
    let head = exp.clone();
    exp.extend(head);
    Some(exp)
}

impl FiniteField {
    /// Builds GF(p^k). Errors unless `p` is prime, `k >= 1` and `p^k <= 2^16`.
    pub fn new(p: u32, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidField(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER);
        let q = q.ok_or(Error::FieldTooLarge { p, k })? as u32;

        let (modulus, exp) = (0..p.pow(k - 1).saturating_mul(p))
            .find_map(|e| {
                let mut m = digits(e, p, k);
                m.push(1);
                primitive_powers(&m, p, k, q).map(|exp| (m, exp))
            })
            .ok_or_else(|| Error::Internal(format!("no primitive polynomial for GF({p}^{k})")))?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::Internal("selected modulus is reducible".into()));
        }

        let mut log = vec![0u32; q as usize];
        for (i, &e) in exp[..(q - 1) as usize].iter().enumerate() {
            log[e as usize] = i as u32;
        }
        let neg = (0..q)
            .map(|e| {
                let d: Vec<u32> = digits(e, p, k).iter().map(|&c| (p - c) % p).collect();
                undigits(&d, p) as Elem
            })
            .collect();
        let mut field = Inner {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            neg,
            add: None,
        };
        if q <= TABLE_ORDER {
            let mut table = vec![0; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    table[(a * q + b) as usize] = field.add_digits(a as Elem, b as Elem);
                }
            }
            field.add = Some(table);
        }
        Ok(FiniteField {
            inner: Arc::new(field),
        })
    }

    /// Builds the field of order `q`, which must be a prime power.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.inner.p
    }

    pub fn degree(&self) -> u32 {
        self.inner.k
    }

    pub fn order(&self) -> u32 {
        self.inner.q
    }

    /// Modulus coefficients, constant term first; the last entry is the leading 1.
    pub fn modulus(&self) -> &[u32] {
        &self.inner.modulus
    }

    /// The class of `x`, a generator of the multiplicative group.
    pub fn generator(&self) -> Elem {
        self.inner.exp[1 % self.inner.exp.len()]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.inner.q).map(|e| e as Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> {
        (1..self.inner.q).map(|e| e as Elem)
    }

    pub fn contains(&self, e: u32) -> bool {
        e < self.inner.q
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.inner.p as i64) as Elem
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.add {
            Some(t) => t[a as usize * self.inner.q as usize + b as usize],
            None if self.inner.p == 2 => a ^ b,
            None => self.inner.add_digits(a, b),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.inner.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.inner;
        inner.exp[(inner.log[a as usize] + inner.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Elem) -> Option<Elem> {
        if a == 0 {
            return None;
        }
        let inner = &*self.inner;
        let order = inner.q - 1;
        Some(inner.exp[((order - inner.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Option<Elem> {
        self.inv(b).map(|ib| self.mul(a, ib))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.inner.q - 1) as u64;
        let l = self.inner.log[a as usize] as u64 * (e % order) % order;
        self.inner.exp[l as usize]
    }

    /// Discrete logarithm to the base [`FiniteField::generator`].
    pub fn log(&self, a: Elem) -> Option<u32> {
        (a != 0).then(|| self.inner.log[a as usize])
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: Elem) -> Option<u32> {
        let l = self.log(a)?;
        let order = self.inner.q - 1;
        Some(order / gcd(order, l))
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.inner.p as u64)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        FieldElement::new(self, value)
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl Inner {
    fn add_digits(&self, a: Elem, b: Elem) -> Elem {
        let (p, mut a, mut b) = (self.p, a as u32, b as u32);
        let (mut out, mut place) = (0u32, 1u32);
        for _ in 0..self.k {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as Elem
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.inner.p == other.inner.p && self.inner.k == other.inner.k
    }
}

impl Eq for FiniteField {}

impl Hash for FiniteField {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.inner.p, self.inner.k).hash(state);
    }
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.inner.p, self.inner.k)
    }
}

impl fmt::Display for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.inner.p, self.inner.k)
    }
}

/// Parses a field spec of the form `"p^k"`, or a bare order such as `"16"`.
impl FromStr for FiniteField {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.split_once('^') {
            Some((p, k)) => {
                let p = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad characteristic in {s:?}")))?;
                let k = k
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad degree in {s:?}")))?;
                FiniteField::new(p, k)
            }
            None => {
                let q = s
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad field spec {s:?}")))?;
                FiniteField::with_order(q)
            }
        }
    }
}

/// An element tagged with its owning field. Mixing fields is an error.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FiniteField,
    value: Elem,
}

impl FieldElement {
    pub fn new(field: &FiniteField, value: u32) -> Result<Self> {
        if !field.contains(value) {
            return Err(Error::range("element", value, 0, field.order() as i64 - 1));
        }
        Ok(FieldElement {
            field: field.clone(),
            value: value as Elem,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn value(&self) -> Elem {
        self.value
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.order(),
                right: other.field.order(),
            });
        }
        Ok(())
    }

    fn with(&self, value: Elem) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            value,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        let v = self
            .field
            .div(self.value, other.value)
            .ok_or_else(|| Error::InvalidInput("division by zero".into()))?;
        Ok(self.with(v))
    }

    pub fn neg(&self) -> FieldElement {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(&self) -> Option<FieldElement> {
        self.field.inv(self.value).map(|v| self.with(v))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.with(self.field.pow(self.value, e))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value, self.field)
    }
}

/// GF(q^2) built together with its subfield GF(q) and the embedding between them.
#[derive(Clone, Debug)]
pub struct QuadraticExtension {
    big: FiniteField,
    small: FiniteField,
    embed: Vec<Elem>,
    restrict: Vec<Option<Elem>>,
}

impl QuadraticExtension {
    /// GF(p^{2k}) over GF(p^k).
    pub fn new(p: u32, k: u32) -> Result<Self> {
        let small = FiniteField::new(p, k)?;
        let big = FiniteField::new(p, 2 * k)?;

        // Any root of the subfield modulus fixes an embedding x -> root.
        let modulus = small.modulus();
        let root = big
            .elements()
            .find(|&x| {
                let v = modulus.iter().rev().fold(0, |acc, &c| {
                    big.add(big.mul(acc, x), big.from_int(c as i64))
                });
                v == 0
            })
            .ok_or_else(|| Error::Internal("subfield modulus has no root".into()))?;

        let embed: Vec<Elem> = small
            .elements()
            .map(|a| {
                digits(a as u32, p, k).iter().rev().fold(0, |acc, &c| {
                    big.add(big.mul(acc, root), big.from_int(c as i64))
                })
            })
            .collect();
        let mut restrict = vec![None; big.order() as usize];
        for (a, &b) in embed.iter().enumerate() {
            restrict[b as usize] = Some(a as Elem);
        }
        if restrict.iter().filter(|r| r.is_some()).count() != small.order() as usize {
            return Err(Error::Internal(
                "subfield embedding is not injective".into(),
            ));
        }
        Ok(QuadraticExtension {
            big,
            small,
            embed,
            restrict,
        })
    }

    /// The quadratic extension GF(q^2) / GF(q) for a prime power `q`.
    pub fn over(q: u32) -> Result<Self> {
        let (p, k) = prime_power(q)
            .ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        Self::new(p, k)
    }

    pub fn big(&self) -> &FiniteField {
        &self.big
    }

    pub fn small(&self) -> &FiniteField {
        &self.small
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a as usize]
    }

    /// The subfield element corresponding to `b`, if `b` lies in the subfield.
    pub fn restrict(&self, b: Elem) -> Option<Elem> {
        self.restrict[b as usize]
    }

    /// `e^(q+1)`, in big-field encoding.
    pub fn norm(&self, e: Elem) -> Elem {
        self.big.pow(e, self.small.order() as u64 + 1)
    }

    /// `e^q + e`, in big-field encoding.
    pub fn trace(&self, e: Elem) -> Elem {
        self.big.add(self.big.pow(e, self.small.order() as u64), e)
    }

    pub fn norm_trace(&self, e: &FieldElement) -> Result<(FieldElement, FieldElement)> {
        if e.field() != &self.big {
            return Err(Error::NoSubfield(e.field().order()));
        }
        let lower = |b: Elem| -> Result<FieldElement> {
            let v = self
                .restrict(b)
                .ok_or_else(|| Error::Internal("norm or trace left the subfield".into()))?;
            Ok(FieldElement {
                field: self.small.clone(),
                value: v,
            })
        };
        Ok((lower(self.norm(e.value()))?, lower(self.trace(e.value()))?))
    }
}
