//! Deformation components of `1/Δ(1,Ω)`, indexed by zero continued fractions.
//!
//! For `Δ/(Δ-Ω) = [b_1..b_s]`, the components correspond to the `k` with
//! `1 <= k_i <= b_i` and `[k_1..k_s] = 0`. Each one has an M-resolution, a
//! δ-vector and an N-resolution.

use std::fmt;

use num_bigint::BigInt;

use crate::cfrac::{blow_down, format_string, hj_dual, hj_eval, Fraction};
use crate::chain::{curve_from_delta, WahlResolution, WahlSingularity};
use crate::error::{Error, Result};
use crate::quiver::{hom_dims, Quiver};
use crate::scalar::{int, Int};

/// An element `k` of `K(Δ/Ω)` together with the dual expansion `b`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZeroFraction<T = BigInt> {
    k: Vec<T>,
    b: Vec<T>,
}

impl<T: Int> ZeroFraction<T> {
    /// Checks `1 <= k_i <= b_i` and that `k` contracts to `[0]`.
    pub fn new(k: Vec<T>, b: Vec<T>) -> Result<Self> {
        let z = ZeroFraction { k, b };
        if z.b.len() == 1 && z.k.len() == 1 && z.k[0].is_zero() {
            return Ok(z);
        }
        let bounded = z.k.len() == z.b.len() && z.k.iter().zip(&z.b).all(|(k, b)| k.is_positive() && k <= b);
        let r = blow_down(&z.k);
        if !bounded || !(r.len() == 1 && r[0].is_zero()) {
            return Err(Error::ConstructionFailed {
                zero_fraction: format_string(&z.k),
                reason: format!("not an element of K for b = {}", format_string(&z.b)),
            });
        }
        Ok(z)
    }

    /// Zero fraction `k` for the target `f`.
    pub fn for_target(f: &Fraction<T>, k: Vec<T>) -> Result<Self> {
        Self::new(k, hj_dual(f))
    }

    pub fn k(&self) -> &[T] {
        &self.k
    }

    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// `d_i = b_i - k_i`.
    pub fn d(&self) -> Vec<T> {
        self.b.iter().zip(&self.k).map(|(b, k)| b.clone() - k.clone()).collect()
    }

    /// Zero-based positions `i_1 < ... < i_e` of the nonzero `d_i`.
    pub fn groups(&self) -> Vec<usize> {
        self.d().iter().enumerate().filter(|(_, d)| d.is_positive()).map(|(i, _)| i).collect()
    }

    /// Number of curves `r` of the associated resolutions.
    pub fn r(&self) -> usize {
        let total = self.d().into_iter().fold(T::zero(), |acc, d| acc + d);
        total.to_usize().expect("d-sum fits usize") - 1
    }
}

impl<T: Int> fmt::Display for ZeroFraction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_string(&self.k))
    }
}

/// All of `K(Δ/Ω)`, in lexicographic order of `k`.
///
/// Du Val targets (`Ω = Δ-1`) have `b = [Δ]` and no element in the literal
/// set; they get the single Artin component `k = [0]`.
///
/// A sequence of positive integers is zero exactly when its continuants
/// `t_j = k_j t_{j-1} - t_{j-2}` stay positive until the last one vanishes,
/// which lets the search prune on the fly.
pub fn enumerate_zero_fractions<T: Int>(f: &Fraction<T>) -> Vec<ZeroFraction<T>> {
    let b = hj_dual(f);
    if b.is_empty() {
        return Vec::new();
    }
    if b.len() == 1 {
        return vec![ZeroFraction { k: vec![T::zero()], b }];
    }
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(b.len());
    search(&b, &mut prefix, T::zero(), T::one(), &mut out);
    out.into_iter().map(|k| ZeroFraction { k, b: b.clone() }).collect()
}

fn search<T: Int>(b: &[T], prefix: &mut Vec<T>, t0: T, t1: T, out: &mut Vec<Vec<T>>) {
    let j = prefix.len();
    if j == b.len() {
        if t1.is_zero() {
            out.push(prefix.clone());
        }
        return;
    }
    let last = j + 1 == b.len();
    let mut x = T::one();
    while x <= b[j] {
        let t = x.clone() * t1.clone() - t0.clone();
        let keep = if last { t.is_zero() } else { t.is_positive() };
        if keep {
            prefix.push(x.clone());
            search(b, prefix, t1.clone(), t, out);
            prefix.pop();
        }
        x = x + T::one();
    }
}

/// The δ-vector of a component with the denominators `ε` alongside.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeltaVector<T = BigInt> {
    pub delta: Vec<T>,
    pub eps: Vec<T>,
}

/// `δ_{d_{i_1}+...+d_{i_k}} / ε = [b_{i_k+1}..b_{i_{k+1}-1}]`, or `1/0` when
/// the two positions are adjacent; every other entry is 0.
pub fn delta_vector<T: Int>(z: &ZeroFraction<T>) -> DeltaVector<T> {
    let d = z.d();
    let idx = z.groups();
    let r = z.r();
    let mut delta = vec![T::zero(); r];
    let mut eps = vec![T::zero(); r];
    let mut pos = 0usize;
    for w in idx.windows(2) {
        pos += d[w[0]].to_usize().expect("small");
        let seg = &z.b[w[0] + 1..w[1]];
        let (p, q) = if seg.is_empty() { (T::one(), T::zero()) } else { hj_eval(seg) };
        delta[pos - 1] = p;
        eps[pos - 1] = q;
    }
    DeltaVector { delta, eps }
}

fn failed<T: Int>(z: &ZeroFraction<T>, reason: impl fmt::Display) -> Error {
    Error::ConstructionFailed { zero_fraction: z.to_string(), reason: reason.to_string() }
}

/// `n/(n-a) = p/q`, with `1/0` meaning a smooth point.
fn wahl_from_complement<T: Int>(p: T, q: T) -> Result<WahlSingularity<T>> {
    if p.is_one() && q.is_zero() {
        return Ok(WahlSingularity::smooth());
    }
    let a = p.clone() - q;
    WahlSingularity::reduced(p, a)
}

/// The M-resolution of a component.
///
/// Group `k` holds `d_{i_k}` copies of the singularity with
/// `n/(n-a) = [b_1 - d_1, ..., b_{i_k - 1} - d_{i_k - 1}]` after blowing down.
pub fn m_resolution<T: Int>(f: &Fraction<T>, z: &ZeroFraction<T>) -> Result<WahlResolution<T>> {
    let b = z.b();
    let d = z.d();
    let mut sings = Vec::new();
    for &i in &z.groups() {
        let prefix: Vec<T> = (0..i).map(|j| b[j].clone() - d[j].clone()).collect();
        let reduced = blow_down(&prefix);
        if reduced.iter().any(|e| *e < int(2)) {
            return Err(failed(z, format!("prefix {} does not contract", format_string(&prefix))));
        }
        let (p, q) = hj_eval(&reduced);
        let w = wahl_from_complement(p, q).map_err(|e| failed(z, e))?;
        let copies = d[i].to_usize().expect("small");
        sings.extend(std::iter::repeat_n(w, copies));
    }
    let dv = delta_vector(z);
    let mut curves = Vec::with_capacity(dv.delta.len());
    for (i, s) in dv.delta.iter().enumerate() {
        curves.push(curve_from_delta(&sings[i], &sings[i + 1], s).map_err(|e| failed(z, e))?);
    }
    let m = WahlResolution::new(f.clone(), sings, curves).map_err(|e| failed(z, e))?;
    if !m.is_k_nef() {
        return Err(failed(z, "K is not nef"));
    }
    Ok(m)
}

/// The N-resolution of a component, validated against its M-resolution.
///
/// Singularities are built bottom-up from the unmodified prefixes
/// `ñ/(ñ-ã) = [b_1..b_{i_k - 1}]`; a curve is a `(-1)`-curve when it touches a
/// Wahl singularity and a `(-2)`-curve otherwise.
pub fn n_resolution<T: Int>(f: &Fraction<T>, z: &ZeroFraction<T>) -> Result<WahlResolution<T>> {
    let m = m_resolution(f, z)?;
    n_resolution_for(f, z, &m)
}

pub(crate) fn n_resolution_for<T: Int>(
    f: &Fraction<T>,
    z: &ZeroFraction<T>,
    m: &WahlResolution<T>,
) -> Result<WahlResolution<T>> {
    let b = z.b();
    let d = z.d();
    let mut bottom_up = Vec::new();
    for &i in &z.groups() {
        let w = if i == 0 {
            WahlSingularity::smooth()
        } else {
            let (p, q) = hj_eval(&b[..i]);
            wahl_from_complement(p, q).map_err(|e| failed(z, e))?
        };
        let copies = d[i].to_usize().expect("small");
        bottom_up.extend(std::iter::repeat_n(w, copies));
    }
    let sings: Vec<_> = bottom_up.into_iter().rev().collect();
    let curves: Vec<T> =
        sings.windows(2).map(|p| if p[0].is_smooth() && p[1].is_smooth() { int(2) } else { T::one() }).collect();
    let n = WahlResolution::new(f.clone(), sings, curves).map_err(|e| failed(z, e))?;
    check_pair(m, &n).map_err(|e| failed(z, e))?;
    Ok(n)
}

/// The defining properties of an N-resolution relative to its M-resolution.
pub fn check_pair<T: Int>(m: &WahlResolution<T>, n: &WahlResolution<T>) -> Result<()> {
    let r = m.r();
    let bad = |msg: String| Err(Error::Malformed(msg));
    if n.r() != r {
        return bad(format!("M has {} curves, N has {}", r, n.r()));
    }
    if m.target() != n.target() {
        return bad("different targets".into());
    }
    if !n.is_k_antinef() {
        return bad("-K is not nef on the N-resolution".into());
    }
    if n.sings()[r] != m.sings()[0] {
        return bad("last N singularity differs from the first M singularity".into());
    }
    let (dm, dn) = (m.deltas(), n.deltas());
    for i in 1..=r {
        if dn[r - i] != dm[i - 1] {
            return bad(format!("reversed delta mismatch at {i}"));
        }
        if m.partial_contraction(0, i)? != n.partial_contraction(r - i, r)? {
            return bad(format!("partial contraction mismatch at {i}"));
        }
    }
    Ok(())
}

/// `Σ (c_i - 1)` plus the number of singular points.
pub fn component_dimension<T: Int>(m: &WahlResolution<T>) -> T {
    let curves = m.curves().iter().fold(T::zero(), |acc, c| acc + c.clone() - T::one());
    curves + T::from_usize(m.nonsmooth_count()).expect("small")
}

/// Everything computed for one component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentReport<T = BigInt> {
    pub zero_fraction: ZeroFraction<T>,
    pub dimension: T,
    pub delta: DeltaVector<T>,
    pub m_res: WahlResolution<T>,
    pub n_res: WahlResolution<T>,
    pub quiver: Quiver<T>,
}

impl<T: Int> ComponentReport<T> {
    /// The M-resolution is the minimal resolution.
    pub fn is_artin(&self) -> bool {
        self.m_res.nonsmooth_count() == 0
    }
}

/// Build and validate one component.
pub fn component<T: Int>(f: &Fraction<T>, z: &ZeroFraction<T>) -> Result<ComponentReport<T>> {
    let m_res = m_resolution(f, z)?;
    let n_res = n_resolution_for(f, z, &m_res)?;
    let delta = delta_vector(z);
    if delta.delta != m_res.deltas() {
        return Err(failed(z, "delta vector disagrees with the M-resolution"));
    }
    let quiver = hom_dims(&n_res).map_err(|e| failed(z, e))?;
    Ok(ComponentReport {
        zero_fraction: z.clone(),
        dimension: component_dimension(&m_res),
        delta,
        m_res,
        n_res,
        quiver,
    })
}

/// One report per component, ordered by `k`.
pub fn components<T: Int>(f: &Fraction<T>) -> Result<Vec<ComponentReport<T>>> {
    enumerate_zero_fractions(f).iter().map(|z| component(f, z)).collect()
}
