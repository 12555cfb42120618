//! Wahl resolutions: chains of Wahl singularities joined by curves.
//!
//! A resolution `P_0 -(c_1)- P_1 - ... -(c_r)- P_r` is stored as its
//! singularities and the self-intersections `-c_i` of the curves' proper
//! transforms in the minimal resolution. Signed invariants are always derived
//! from this data, never cached.
//!
//! The chain of each `P_i` runs from `Γ_i` towards `Γ_{i+1}`, so `Γ_i` meets
//! the last curve of `P_{i-1}` and the first curve of `P_i`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::cfrac::{blow_down, format_string, hj_eval, hj_expand, parse_wahl, wahl_cf, Fraction};
use crate::error::{Error, Result};
use crate::scalar::{int, modulo, Int};

/// `1/n²(1, na-1)`; `(1, 1)` is the smooth point.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WahlSingularity<T = BigInt> {
    n: T,
    a: T,
}

impl<T: Int> WahlSingularity<T> {
    pub fn new(n: T, a: T) -> Result<Self> {
        let smooth = n.is_one() && a.is_one();
        let ok = smooth || (a.is_positive() && a < n && n.gcd(&a).is_one());
        if !ok {
            return Err(Error::InvalidWahl { n: n.to_string(), a: a.to_string() });
        }
        Ok(WahlSingularity { n, a })
    }

    pub fn from_i64(n: i64, a: i64) -> Result<Self> {
        Self::new(int(n), int(a))
    }

    /// `a` only matters modulo `n`; `n = 1` is the smooth point.
    pub fn reduced(n: T, a: T) -> Result<Self> {
        if n.is_one() {
            return Ok(Self::smooth());
        }
        if !n.is_positive() {
            return Err(Error::InvalidWahl { n: n.to_string(), a: a.to_string() });
        }
        let a = modulo(&a, &n);
        Self::new(n, a)
    }

    pub fn smooth() -> Self {
        WahlSingularity { n: T::one(), a: T::one() }
    }

    pub fn n(&self) -> &T {
        &self.n
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn is_smooth(&self) -> bool {
        self.n.is_one()
    }

    /// The same singularity with its chain read backwards.
    pub fn reversed(&self) -> Self {
        if self.is_smooth() {
            return self.clone();
        }
        WahlSingularity { n: self.n.clone(), a: self.n.clone() - self.a.clone() }
    }

    /// Minimal-resolution chain; empty for a smooth point.
    pub fn chain(&self) -> Vec<T> {
        if self.is_smooth() {
            Vec::new()
        } else {
            wahl_cf(self).expect("non-smooth")
        }
    }

    /// `a` as seen by a curve leaving to the right (smooth: 0).
    pub(crate) fn a_left(&self) -> T {
        if self.is_smooth() {
            T::zero()
        } else {
            self.a.clone()
        }
    }

    /// `a` as seen by a curve arriving from the left (smooth: 1).
    pub(crate) fn a_right(&self) -> T {
        self.a.clone()
    }
}

impl<T: Int> fmt::Display for WahlSingularity<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_smooth() {
            write!(f, "*")
        } else {
            write!(f, "[{}|{}]", self.n, self.a)
        }
    }
}

/// Discrepancies of the exceptional curves of a minimal-resolution chain.
///
/// Solves `Σ_j d_j (E_j·E_k) = e_k - 2` on the tridiagonal intersection
/// matrix (diagonal `-e_j`, off-diagonal 1).
pub fn discrepancies<T: Int>(chain: &[T]) -> Vec<Ratio<T>> {
    let len = chain.len();
    if len == 0 {
        return Vec::new();
    }
    let one = Ratio::from_integer(T::one());
    let two: T = int(2);
    // forward sweep: row k is  d_{k-1} - e_k d_k + d_{k+1} = e_k - 2
    let mut cp: Vec<Ratio<T>> = Vec::with_capacity(len);
    let mut dp: Vec<Ratio<T>> = Vec::with_capacity(len);
    for k in 0..len {
        let diag = Ratio::from_integer(-chain[k].clone());
        let rhs = Ratio::from_integer(chain[k].clone() - two.clone());
        let (denom, rhs) = if k == 0 { (diag, rhs) } else { (diag - cp[k - 1].clone(), rhs - dp[k - 1].clone()) };
        cp.push(one.clone() / denom.clone());
        dp.push(rhs / denom);
    }
    let mut d = vec![Ratio::from_integer(T::zero()); len];
    d[len - 1] = dp[len - 1].clone();
    for k in (0..len - 1).rev() {
        d[k] = dp[k].clone() - cp[k].clone() * d[k + 1].clone();
    }
    d
}

/// `K·Γ` for a curve with self-intersection `-c` in the minimal resolution,
/// from the discrepancies of the chains it meets.
pub fn k_dot_gamma<T: Int>(left: &WahlSingularity<T>, c: &T, right: &WahlSingularity<T>) -> Ratio<T> {
    let zero = Ratio::from_integer(T::zero());
    let dl = discrepancies(&left.chain()).last().cloned().unwrap_or(zero.clone());
    let dr = discrepancies(&right.chain()).first().cloned().unwrap_or(zero);
    Ratio::from_integer(c.clone() - int(2)) - dl - dr
}

/// `n_L n_R (K·Γ)`, in closed form.
pub fn signed_delta<T: Int>(left: &WahlSingularity<T>, c: &T, right: &WahlSingularity<T>) -> T {
    let (nl, nr) = (left.n.clone(), right.n.clone());
    (c.clone() - T::one()) * nl.clone() * nr.clone() + left.a_left() * nr - right.a_right() * nl
}

/// The curve whose signed invariant between `left` and `right` is `s`.
pub fn curve_from_delta<T: Int>(left: &WahlSingularity<T>, right: &WahlSingularity<T>, s: &T) -> Result<T> {
    let (nl, nr) = (left.n.clone(), right.n.clone());
    let num = s.clone() - left.a_left() * nr.clone() + right.a_right() * nl.clone();
    let (q, r) = num.div_rem(&(nl * nr));
    let c = q + T::one();
    if !r.is_zero() || c < T::one() {
        return Err(Error::NoSuchCurve { left: left.to_string(), right: right.to_string(), s: s.to_string() });
    }
    Ok(c)
}

/// Concatenated minimal-resolution string of a chain.
pub fn full_string<T: Int>(sings: &[WahlSingularity<T>], curves: &[T]) -> Vec<T> {
    let mut out = sings[0].chain();
    for (c, p) in curves.iter().zip(&sings[1..]) {
        out.push(c.clone());
        out.extend(p.chain());
    }
    out
}

/// What a chain contracts to.
pub fn contract<T: Int>(sings: &[WahlSingularity<T>], curves: &[T]) -> Result<Fraction<T>> {
    if sings.len() != curves.len() + 1 {
        return Err(Error::Malformed(format!("{} singularities but {} curves", sings.len(), curves.len())));
    }
    let full = full_string(sings, curves);
    let reduced = blow_down(&full);
    if reduced.iter().any(|e| *e < int(2)) {
        return Err(Error::NotContractible(format!(
            "{} blows down to {}",
            format_string(&full),
            format_string(&reduced)
        )));
    }
    let (p, q) = hj_eval(&reduced);
    Fraction::from_eval(p, q)
}

/// A Wahl resolution of a cyclic quotient singularity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WahlResolution<T = BigInt> {
    target: Fraction<T>,
    sings: Vec<WahlSingularity<T>>,
    curves: Vec<T>,
}

impl<T: Int> WahlResolution<T> {
    /// Validated constructor: the chain must contract to `target`.
    pub fn new(target: Fraction<T>, sings: Vec<WahlSingularity<T>>, curves: Vec<T>) -> Result<Self> {
        if curves.iter().any(|c| *c < T::one()) {
            return Err(Error::Malformed("curve with c < 1".into()));
        }
        let found = contract(&sings, &curves)?;
        if found != target {
            return Err(Error::TargetMismatch { expected: target.to_string(), found: found.to_string() });
        }
        Ok(WahlResolution { target, sings, curves })
    }

    /// Build from a chain, taking the target from the contraction.
    pub fn from_chain(sings: Vec<WahlSingularity<T>>, curves: Vec<T>) -> Result<Self> {
        let target = contract(&sings, &curves)?;
        Self::new(target, sings, curves)
    }

    pub fn target(&self) -> &Fraction<T> {
        &self.target
    }

    pub fn sings(&self) -> &[WahlSingularity<T>] {
        &self.sings
    }

    pub fn curves(&self) -> &[T] {
        &self.curves
    }

    /// Number of curves.
    pub fn r(&self) -> usize {
        self.curves.len()
    }

    pub fn full_string(&self) -> Vec<T> {
        full_string(&self.sings, &self.curves)
    }

    pub fn contracts_to(&self) -> Result<Fraction<T>> {
        contract(&self.sings, &self.curves)
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.r() {
            return Err(Error::IndexOutOfRange { index: i, max: self.r() });
        }
        Ok(())
    }

    /// `s_i = n_{i-1} n_i (K·Γ_i)` for `1 <= i <= r`.
    pub fn delta_signed(&self, i: usize) -> Result<T> {
        self.check_index(i)?;
        Ok(signed_delta(&self.sings[i - 1], &self.curves[i - 1], &self.sings[i]))
    }

    /// `K·Γ_i` as a rational, through the discrepancy solve.
    pub fn k_dot_gamma(&self, i: usize) -> Result<Ratio<T>> {
        self.check_index(i)?;
        Ok(k_dot_gamma(&self.sings[i - 1], &self.curves[i - 1], &self.sings[i]))
    }

    pub fn signed_deltas(&self) -> Vec<T> {
        (1..=self.r()).map(|i| self.delta_signed(i).expect("in range")).collect()
    }

    /// `δ_i = |s_i|`.
    pub fn deltas(&self) -> Vec<T> {
        self.signed_deltas().into_iter().map(|s| s.abs()).collect()
    }

    /// `K` is relatively nef.
    pub fn is_k_nef(&self) -> bool {
        self.signed_deltas().iter().all(|s| !s.is_negative())
    }

    /// `-K` is relatively nef.
    pub fn is_k_antinef(&self) -> bool {
        self.signed_deltas().iter().all(|s| !s.is_positive())
    }

    /// Contraction of `P_i -(c_{i+1})- ... - P_j`.
    pub fn partial_contraction(&self, i: usize, j: usize) -> Result<Fraction<T>> {
        if i > j || j > self.r() {
            return Err(Error::IndexOutOfRange { index: j, max: self.r() });
        }
        contract(&self.sings[i..=j], &self.curves[i..j])
    }

    pub fn nonsmooth_count(&self) -> usize {
        self.sings.iter().filter(|p| !p.is_smooth()).count()
    }

    /// Display form without smooth points, e.g. `(2)-[2|1]-(5)-(2)-(2)`.
    pub fn compact(&self) -> String {
        let mut parts: Vec<String> = Vec::new();
        for (idx, p) in self.sings.iter().enumerate() {
            if !p.is_smooth() {
                parts.push(p.to_string());
            }
            if idx < self.curves.len() {
                parts.push(format!("({})", self.curves[idx]));
            }
        }
        if parts.is_empty() {
            return "*".into();
        }
        parts.join("-")
    }

    /// Rebuild from chain text; the target comes from contraction.
    pub fn parse(text: &str) -> Result<Self> {
        let (sings, curves) = parse_chain(text)?;
        Self::from_chain(sings, curves)
    }
}

impl<T: Int> fmt::Display for WahlResolution<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_chain(&self.sings, &self.curves))
    }
}

/// `[2|1]-(1)-[3|1]`, `*` for smooth points.
pub fn print_chain<T: Int>(sings: &[WahlSingularity<T>], curves: &[T]) -> String {
    let mut out = sings[0].to_string();
    for (c, p) in curves.iter().zip(&sings[1..]) {
        out.push_str(&format!("-({c})-{p}"));
    }
    out
}

enum Item<T> {
    Node(WahlSingularity<T>),
    Curve(T),
}

/// Parse chain text.
///
/// Nodes are `[n|a]`, `*`, or a bracketed Wahl chain such as `[5,2]`. Smooth
/// points may be left out wherever the alternation of nodes and curves makes
/// them implicit, so `(3)-[2|1]-(2)` reads as `*-(3)-[2|1]-(2)-*`.
pub fn parse_chain<T: Int>(text: &str) -> Result<(Vec<WahlSingularity<T>>, Vec<T>)> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut items: Vec<(usize, Item<T>)> = Vec::new();
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    let int_at = |start: usize, end: usize| -> Result<T> {
        let s = text[start..end].trim();
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(syntax(start, "expected a positive integer"));
        }
        let v: T = s.parse().map_err(|_| syntax(start, "expected a positive integer"))?;
        if v < T::one() {
            return Err(syntax(start, "integers must be at least 1"));
        }
        Ok(v)
    };
    skip_ws(&mut pos);
    loop {
        if pos >= bytes.len() {
            return Err(syntax(pos, "expected a node or a curve"));
        }
        let start = pos;
        match bytes[pos] {
            b'*' => {
                pos += 1;
                items.push((start, Item::Node(WahlSingularity::smooth())));
            }
            b'[' => {
                let close = text[pos..].find(']').ok_or_else(|| syntax(pos, "unclosed '['"))? + pos;
                let body = &text[pos + 1..close];
                let node = if let Some((n, a)) = body.split_once('|') {
                    let n = int_at(pos + 1, pos + 1 + n.len())?;
                    let a = int_at(close - a.len(), close)?;
                    WahlSingularity::new(n, a).map_err(|e| syntax(start, &e.to_string()))?
                } else {
                    let mut entries = Vec::new();
                    let mut off = pos + 1;
                    for piece in body.split(',') {
                        entries.push(int_at(off, off + piece.len())?);
                        off += piece.len() + 1;
                    }
                    parse_wahl(&entries).ok_or_else(|| syntax(start, "not a Wahl chain"))?
                };
                pos = close + 1;
                items.push((start, Item::Node(node)));
            }
            b'(' => {
                let close = text[pos..].find(')').ok_or_else(|| syntax(pos, "unclosed '('"))? + pos;
                let c = int_at(pos + 1, close)?;
                pos = close + 1;
                items.push((start, Item::Curve(c)));
            }
            _ => return Err(syntax(pos, "expected '[', '*' or '('")),
        }
        skip_ws(&mut pos);
        if pos >= bytes.len() {
            break;
        }
        if bytes[pos] != b'-' {
            return Err(syntax(pos, "expected '-'"));
        }
        pos += 1;
        skip_ws(&mut pos);
    }

    let mut sings = Vec::new();
    let mut curves = Vec::new();
    let mut want_node = true;
    for (at, item) in items {
        match item {
            Item::Node(p) => {
                if !want_node {
                    return Err(syntax(at, "two nodes must be joined by a curve"));
                }
                sings.push(p);
                want_node = false;
            }
            Item::Curve(c) => {
                if want_node {
                    sings.push(WahlSingularity::smooth());
                }
                curves.push(c);
                want_node = true;
            }
        }
    }
    if want_node {
        sings.push(WahlSingularity::smooth());
    }
    Ok((sings, curves))
}

/// Discrepancies of the minimal resolution of a cyclic quotient singularity.
pub fn fraction_discrepancies<T: Int>(f: &Fraction<T>) -> Vec<Ratio<T>> {
    discrepancies(&hj_expand(f))
}
