//! Hirzebruch–Jung continued fractions.
//!
//! `[e1, ..., el]` stands for `e1 - 1/(e2 - 1/(... - 1/el))`. Strings are plain
//! `Vec<T>`; a canonical string has every entry at least 2.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::chain::WahlSingularity;
use crate::error::{Error, Result};
use crate::scalar::{int, Int};

/// A cyclic quotient singularity type `1/Δ(1,Ω)`.
///
/// `Δ = 1, Ω = 0` is the smooth point, which only shows up as the result of
/// contracting a chain.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fraction<T = BigInt> {
    delta: T,
    omega: T,
}

impl<T: Int> Fraction<T> {
    pub fn new(delta: T, omega: T) -> Result<Self> {
        let ok = omega.is_positive() && omega < delta && delta.gcd(&omega).is_one();
        if !ok {
            return Err(Error::InvalidFraction { delta: delta.to_string(), omega: omega.to_string() });
        }
        Ok(Fraction { delta, omega })
    }

    pub fn from_i64(delta: i64, omega: i64) -> Result<Self> {
        Self::new(int(delta), int(omega))
    }

    pub fn smooth() -> Self {
        Fraction { delta: T::one(), omega: T::zero() }
    }

    /// Accepts the smooth sentinel `(1, 0)` as well as valid pairs.
    pub(crate) fn from_eval(p: T, q: T) -> Result<Self> {
        if p.is_one() && q.is_zero() {
            Ok(Self::smooth())
        } else {
            Self::new(p, q)
        }
    }

    pub fn delta(&self) -> &T {
        &self.delta
    }

    pub fn omega(&self) -> &T {
        &self.omega
    }

    pub fn is_smooth(&self) -> bool {
        self.delta.is_one()
    }

    /// `Δ/(Δ-Ω)`, the type seen from the other end of the chain.
    pub fn reversed(&self) -> Self {
        if self.is_smooth() {
            return self.clone();
        }
        // Ω·Ω' ≡ 1 mod Δ
        let inv = mod_inverse(&self.omega, &self.delta);
        Fraction { delta: self.delta.clone(), omega: inv }
    }
}

impl<T: Int> fmt::Display for Fraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.delta, self.omega)
    }
}

impl<T: Int> FromStr for Fraction<T> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (d, o) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("expected DELTA/OMEGA, got {s:?}") })?;
        let parse = |t: &str, pos: usize| {
            t.trim().parse::<T>().map_err(|_| Error::Syntax { pos, msg: format!("not an integer: {t:?}") })
        };
        Fraction::new(parse(d, 0)?, parse(o, d.len() + 1)?)
    }
}

/// Inverse of `x` modulo `m`, in `0..m`.
pub(crate) fn mod_inverse<T: Int>(x: &T, m: &T) -> T {
    let e = x.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Expansion of `p/q` for `p > q > 0` coprime.
pub(crate) fn expand_pair<T: Int>(p: &T, q: &T) -> Vec<T> {
    let (mut d, mut o) = (p.clone(), q.clone());
    let mut out = Vec::new();
    while o.is_positive() {
        let e = d.div_ceil(&o);
        let next = e.clone() * o.clone() - d;
        d = o;
        o = next;
        out.push(e);
    }
    out
}

/// `Δ/Ω = [e1..el]`. Empty for the smooth sentinel.
pub fn hj_expand<T: Int>(f: &Fraction<T>) -> Vec<T> {
    expand_pair(&f.delta, &f.omega)
}

/// `Δ/(Δ-Ω) = [b1..bs]`.
pub fn hj_dual<T: Int>(f: &Fraction<T>) -> Vec<T> {
    if f.is_smooth() {
        return Vec::new();
    }
    expand_pair(&f.delta, &(f.delta.clone() - f.omega.clone()))
}

/// Top column of `Π [[e, -1], [1, 0]]`: the value as a projective pair `(p, q)`.
///
/// Defined for every integer string; `p = 0` means the fraction is zero.
pub fn hj_eval<T: Int>(s: &[T]) -> (T, T) {
    let (mut a, mut b, mut c, mut d) = (T::one(), T::zero(), T::zero(), T::one());
    for e in s {
        let na = a.clone() * e.clone() + b;
        let nc = c.clone() * e.clone() + d;
        b = -a;
        d = -c;
        a = na;
        c = nc;
    }
    (a, c)
}

/// Contract `(-1)`-curves until none are left, always taking the leftmost.
///
/// Runs in one pass: the output stack never holds a 1, so the next 1 to
/// appear is always the leftmost one.
pub fn blow_down<T: Int>(s: &[T]) -> Vec<T> {
    let mut out: Vec<T> = Vec::with_capacity(s.len());
    let mut carry = T::zero();
    for (idx, e) in s.iter().enumerate() {
        let has_right = idx + 1 < s.len();
        let mut cur = e.clone() - carry;
        carry = T::zero();
        loop {
            if !cur.is_one() {
                out.push(cur);
                break;
            }
            // contract: the right neighbour is the next input entry
            if has_right {
                carry = carry + T::one();
            }
            match out.pop() {
                Some(left) => cur = left - T::one(),
                None => break,
            }
        }
    }
    out
}

/// `[b_s..b_1, 1, e_1..e_l]` contracts to `[0]`.
pub fn riemenschneider_zero<T: Int>(f: &Fraction<T>) -> bool {
    let mut s: Vec<T> = hj_dual(f).into_iter().rev().collect();
    s.push(T::one());
    s.extend(hj_expand(f));
    let r = blow_down(&s);
    r.len() == 1 && r[0].is_zero()
}

/// The chain of `1/n²(1, na-1)`, assembled from the expansions of `n/a` and
/// `n/(n-a)`.
pub fn wahl_cf<T: Int>(w: &WahlSingularity<T>) -> Result<Vec<T>> {
    let (n, a) = (w.n(), w.a());
    if w.is_smooth() {
        return Err(Error::InvalidWahl { n: n.to_string(), a: a.to_string() });
    }
    let y = expand_pair(n, a);
    let x = expand_pair(n, &(n.clone() - a.clone()));
    let mut out: Vec<T> = y[..y.len() - 1].to_vec();
    out.push(y[y.len() - 1].clone() + x[x.len() - 1].clone());
    out.extend(x[..x.len() - 1].iter().rev().cloned());
    Ok(out)
}

/// The chain of the complementary fraction `n²/(n² - na + 1)`.
pub fn wahl_cf_dual<T: Int>(w: &WahlSingularity<T>) -> Result<Vec<T>> {
    let (n, a) = (w.n(), w.a());
    if w.is_smooth() {
        return Err(Error::InvalidWahl { n: n.to_string(), a: a.to_string() });
    }
    let y = expand_pair(n, a);
    let mut out = expand_pair(n, &(n.clone() - a.clone()));
    out.push(int(2));
    out.extend(y.into_iter().rev());
    Ok(out)
}

/// Recognise a Wahl chain. The empty string is the smooth point.
pub fn parse_wahl<T: Int>(s: &[T]) -> Option<WahlSingularity<T>> {
    if s.is_empty() {
        return Some(WahlSingularity::smooth());
    }
    if s.iter().any(|e| *e < int(2)) {
        return None;
    }
    let (p, q) = hj_eval(s);
    let n = p.sqrt();
    if n.clone() * n.clone() != p || n < int(2) {
        return None;
    }
    let (a, rem) = (q + T::one()).div_rem(&n);
    if !rem.is_zero() {
        return None;
    }
    WahlSingularity::new(n, a).ok()
}

/// A T-singularity `1/(dn²)(1, dna-1)` written as `(d, n, a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TSingularity<T = BigInt> {
    pub d: T,
    pub n: T,
    pub a: T,
}

/// Recognise a T-singularity. `n = a = 1` is the `A_{d-1}` case.
pub fn parse_t<T: Int>(f: &Fraction<T>) -> Option<TSingularity<T>> {
    if f.is_smooth() {
        return None;
    }
    let (delta, omega) = (&f.delta, &f.omega);
    let top = delta.sqrt();
    let mut n = T::one();
    while n <= top {
        let sq = n.clone() * n.clone();
        if (delta.clone() % sq.clone()).is_zero() {
            let d = delta.clone() / sq;
            let dn = d.clone() * n.clone();
            let (a, rem) = (omega.clone() + T::one()).div_rem(&dn);
            if rem.is_zero() && a.is_positive() && a <= n && n.gcd(&a).is_one() {
                return Some(TSingularity { d, n, a });
            }
        }
        n = n + T::one();
    }
    None
}

/// `[3,4,2]`.
pub fn format_string<T: Int>(s: &[T]) -> String {
    let body: Vec<String> = s.iter().map(|e| e.to_string()).collect();
    format!("[{}]", body.join(","))
}

/// Inverse of [`format_string`]; brackets are optional.
pub fn parse_string<T: Int>(text: &str) -> Result<Vec<T>> {
    let t = text.trim();
    let t = t.strip_prefix('[').unwrap_or(t);
    let t = t.strip_suffix(']').unwrap_or(t);
    if t.trim().is_empty() {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Syntax { pos: 0, msg: format!("not an integer: {x:?}") }))
        .collect()
}
