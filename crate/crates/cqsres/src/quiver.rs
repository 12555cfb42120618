//! Numerical data of the exceptional collection attached to an N-resolution.
//!
//! Vertex `Ē_i` belongs to the singularity `P̄_i` of the N-resolution and has
//! rank `n̄_i`. For `i > j` the hom dimension is `n̄_j ā_i - n̄_i ā_j`, which is
//! never negative under this labelling; arrows point from the higher index to
//! the lower one.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::braid::{apply_word, mn_schedule};
use crate::cfrac::Fraction;
use crate::chain::{signed_delta, WahlResolution, WahlSingularity};
use crate::components::check_pair;
use crate::error::{Error, Result};
use crate::scalar::{int, Int};

/// Ranks, hom dimensions and arrow counts; `hom[i][j]` and `arrows[i][j]`
/// are only nonzero for `i > j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver<T = BigInt> {
    pub ranks: Vec<T>,
    pub hom: Vec<Vec<T>>,
    pub arrows: Vec<Vec<T>>,
}

impl<T: Int> Quiver<T> {
    pub fn len(&self) -> usize {
        self.ranks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// No arrows at all.
    pub fn is_semisimple(&self) -> bool {
        self.arrows.iter().flatten().all(|x| x.is_zero())
    }

    /// Connected as an undirected graph.
    pub fn is_connected(&self) -> bool {
        let n = self.len();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for (u, flag) in seen.iter_mut().enumerate() {
                let joined = !self.arrows[v][u].is_zero() || !self.arrows[u][v].is_zero();
                if joined && !*flag {
                    *flag = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// `(source, target, multiplicity)` for every nonzero arrow count.
    pub fn edges(&self) -> Vec<(usize, usize, T)> {
        let mut out = Vec::new();
        for i in (0..self.len()).rev() {
            for j in (0..i).rev() {
                if !self.arrows[i][j].is_zero() {
                    out.push((i, j, self.arrows[i][j].clone()));
                }
            }
        }
        out
    }
}

/// Hom dimensions of an N-resolution, by the closed form and by the δ-sum
/// `n̄_i n̄_j Σ_{j<k<=i} δ̄_k/(n̄_{k-1} n̄_k)`, which must agree.
pub fn hom_dims<T: Int>(n: &WahlResolution<T>) -> Result<Quiver<T>> {
    let p = n.sings();
    let size = p.len();
    let ranks: Vec<T> = p.iter().map(|x| x.n().clone()).collect();
    let dbar: Vec<T> = n.deltas();
    let mut hom = vec![vec![T::zero(); size]; size];
    for i in 0..size {
        let mut sum = Ratio::from_integer(T::zero());
        for j in (0..i).rev() {
            // curve k = j + 1 joins P̄_j and P̄_{j+1}
            sum = sum + Ratio::new(dbar[j].clone(), ranks[j].clone() * ranks[j + 1].clone());
            let closed = ranks[j].clone() * p[i].a().clone() - ranks[i].clone() * p[j].a().clone();
            let by_sum = sum.clone() * Ratio::from_integer(ranks[i].clone() * ranks[j].clone());
            if !by_sum.is_integer() || by_sum.to_integer() != closed || closed.is_negative() {
                return Err(Error::FormulaMismatch { i, j, closed: closed.to_string(), sum: by_sum.to_string() });
            }
            hom[i][j] = closed;
        }
    }
    let arrows = arrows_from_homs(&hom)?;
    Ok(Quiver { ranks, hom, arrows })
}

/// Arrow counts whose path counts give `hom`:
/// `A[i][j] = H[i][j] - Σ_{i>k>j} A[i][k] H[k][j]`.
pub fn arrows_from_homs<T: Int>(hom: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let size = hom.len();
    let mut a = vec![vec![T::zero(); size]; size];
    for i in 0..size {
        for j in (0..i).rev() {
            let mut v = hom[i][j].clone();
            for k in j + 1..i {
                v = v - a[i][k].clone() * hom[k][j].clone();
            }
            if v.is_negative() {
                return Err(Error::NegativeArrowCount { i, j });
            }
            a[i][j] = v;
        }
    }
    Ok(a)
}

/// `χ(E_i, E_{i-1}) = -s_i`.
pub fn euler_pairing<T: Int>(w: &WahlResolution<T>, i: usize) -> Result<T> {
    Ok(-w.delta_signed(i)?)
}

/// `Δ = Σ n_i n̄_{r-i}` for an M/N pair.
pub fn rank_identity<T: Int>(m: &WahlResolution<T>, n: &WahlResolution<T>) -> bool {
    if m.r() != n.r() {
        return false;
    }
    let r = m.r();
    let total = (0..=r).fold(T::zero(), |acc, i| acc + m.sings()[i].n().clone() * n.sings()[r - i].n().clone());
    &total == m.target().delta()
}

/// An extremal P-resolution `[a|a-ε_a]-(·)-[b|ε_b]` with `δ = c`. Index 1
/// stands for a smooth point, with residue 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalWitness<T = BigInt> {
    pub a: T,
    pub b: T,
    pub eps_a: T,
    pub eps_b: T,
    pub lambda: T,
    pub c: T,
    pub resolution: WahlResolution<T>,
}

/// How `Q_{a,b,c}` is realised.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QabcWitness<T = BigInt> {
    /// `a = b = c = 0`: no arrows.
    Semisimple,
    /// One of `a, b` is 0 and `c` equals the other.
    Degenerate,
    Extremal(ExtremalWitness<T>),
}

fn residues<T: Int>(x: &T) -> Vec<T> {
    if x.is_one() {
        return vec![T::zero()];
    }
    let mut out = Vec::new();
    let mut e = T::one();
    while &e < x {
        if e.gcd(x).is_one() {
            out.push(e.clone());
        }
        e = e + T::one();
    }
    out
}

/// `c` as a function of `λ` and the residues.
pub fn c_from_residues<T: Int>(a: &T, b: &T, eps_a: &T, eps_b: &T, lambda: &T) -> T {
    let one = T::one();
    match (a.is_one(), b.is_one()) {
        (true, true) => lambda.clone() - one,
        (true, false) => lambda.clone() * b.clone() - b.clone() - eps_b.clone(),
        (false, true) => lambda.clone() * a.clone() - a.clone() - eps_a.clone(),
        (false, false) => {
            (lambda.clone() - one) * a.clone() * b.clone() - eps_a.clone() * b.clone() - eps_b.clone() * a.clone()
        }
    }
}

/// The chain for given data, if it is an extremal P-resolution.
///
/// The curve is `(λ+1)`, `(λ)` or `(λ-1)` as the chain has 0, 1 or 2
/// singular points.
pub fn extremal_candidate<T: Int>(a: &T, b: &T, eps_a: &T, eps_b: &T, lambda: &T) -> Option<ExtremalWitness<T>> {
    let left = if a.is_one() {
        WahlSingularity::smooth()
    } else {
        WahlSingularity::new(a.clone(), a.clone() - eps_a.clone()).ok()?
    };
    let right =
        if b.is_one() { WahlSingularity::smooth() } else { WahlSingularity::new(b.clone(), eps_b.clone()).ok()? };
    let singular = T::from_usize(usize::from(!a.is_one()) + usize::from(!b.is_one())).expect("small");
    let curve = lambda.clone() + T::one() - singular;
    if curve < T::one() {
        return None;
    }
    let s = signed_delta(&left, &curve, &right);
    let w = WahlResolution::from_chain(vec![left, right], vec![curve]).ok()?;
    if w.target().is_smooth() || !s.is_positive() {
        return None;
    }
    Some(ExtremalWitness {
        a: a.clone(),
        b: b.clone(),
        eps_a: eps_a.clone(),
        eps_b: eps_b.clone(),
        lambda: lambda.clone(),
        c: s,
        resolution: w,
    })
}

fn candidates<T: Int>(a: &T, b: &T, c_max: &T) -> Vec<ExtremalWitness<T>> {
    let mut out = Vec::new();
    let top = c_max.clone() + int(3);
    let mut lambda: T = int(2);
    while lambda <= top {
        for ea in residues(a) {
            for eb in residues(b) {
                if let Some(w) = extremal_candidate(a, b, &ea, &eb, &lambda) {
                    debug_assert_eq!(w.c, c_from_residues(a, b, &ea, &eb, &lambda));
                    out.push(w);
                }
            }
        }
        lambda = lambda + T::one();
    }
    out
}

/// Whether the quiver `Q_{a,b,c}` comes from an N-resolution with two curves.
pub fn check_q_abc<T: Int>(a: &T, b: &T, c: &T) -> Option<QabcWitness<T>> {
    if a.is_negative() || b.is_negative() || c.is_negative() {
        return None;
    }
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return c.is_zero().then_some(QabcWitness::Semisimple),
        (true, false) => return (c == b).then_some(QabcWitness::Degenerate),
        (false, true) => return (c == a).then_some(QabcWitness::Degenerate),
        _ => {}
    }
    candidates(a, b, c).into_iter().find(|w| &w.c == c).map(QabcWitness::Extremal)
}

/// Every realisable `c <= c_max` for positive `a, b`.
pub fn enumerate_c<T: Int>(a: &T, b: &T, c_max: &T) -> BTreeSet<T> {
    candidates(a, b, c_max).into_iter().map(|w| w.c).filter(|c| c <= c_max).collect()
}

/// Numerical data of the Dolgachev surface `D_{p,q}` degeneration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DolgachevReport<T = BigInt> {
    pub p: T,
    pub q: T,
    pub target: Fraction<T>,
    pub m_res: WahlResolution<T>,
    pub n_res: WahlResolution<T>,
    pub delta: Vec<T>,
    pub quiver: Quiver<T>,
    /// Whether the closed-form chain of `P̄_0..P̄_8` was checked (needs `p >= 4`).
    pub pattern_checked: bool,
    /// Gram matrix of the orthogonal complement, quoted rather than derived.
    pub gram: [[T; 2]; 2],
}

/// M-resolution `[q|q-1]-(c_1)-[p|1]-(1)-...-(1)-[p|1]` with nine `[p|1]`.
pub fn dolgachev_m_resolution<T: Int>(p: &T, q: &T) -> Result<WahlResolution<T>> {
    let first = WahlSingularity::reduced(q.clone(), q.clone() - T::one())?;
    let rest = WahlSingularity::reduced(p.clone(), T::one())?;
    let mut sings = vec![first];
    sings.extend(std::iter::repeat_n(rest, 9));
    let s1 = p.clone() * q.clone() - p.clone() - q.clone();
    let mut curves = vec![crate::chain::curve_from_delta(&sings[0], &sings[1], &s1)?];
    for i in 1..9 {
        curves.push(crate::chain::curve_from_delta(&sings[i], &sings[i + 1], &T::zero())?);
    }
    WahlResolution::from_chain(sings, curves)
}

pub fn dolgachev<T: Int>(p: &T, q: &T) -> Result<DolgachevReport<T>> {
    let two: T = int(2);
    let three: T = int(3);
    if *p < two || *q < two || !p.gcd(q).is_one() || (q.clone() % three.clone()).is_zero() {
        return Err(Error::InvalidDolgachev { p: p.to_string(), q: q.to_string() });
    }
    let m_res = dolgachev_m_resolution(p, q)?;
    let n_res = apply_word(&m_res, &mn_schedule(9))?;
    check_pair(&m_res, &n_res)?;
    let delta = m_res.deltas();
    let quiver = hom_dims(&n_res)?;

    let twos = |k: &T| vec![two.clone(); k.to_usize().expect("small")];
    let mut last = twos(&(q.clone() - two.clone()));
    last.push(q.clone() + two.clone());
    if n_res.sings()[9].chain() != last {
        return Err(Error::Malformed(format!("unexpected last singularity {}", n_res.sings()[9])));
    }
    let four: T = int(4);
    let pattern_checked = *p >= four;
    if pattern_checked {
        let mut pat = twos(&(q.clone() - two.clone()));
        pat.push(q.clone() + T::one());
        pat.push(p.clone() + T::one());
        pat.extend(twos(&(p.clone() - four)));
        pat.push(three.clone());
        pat.extend(twos(&(q.clone() - two.clone())));
        pat.push(q.clone());
        if n_res.sings()[..9].iter().any(|s| s.chain() != pat) {
            return Err(Error::Malformed("N-resolution chains differ from the expected pattern".into()));
        }
    }
    let k = p.clone() * q.clone() - p.clone() - q.clone();
    let gram = [[-T::one(), three * k], [T::zero(), -T::one()]];
    Ok(DolgachevReport {
        p: p.clone(),
        q: q.clone(),
        target: m_res.target().clone(),
        m_res,
        n_res,
        delta,
        quiver,
        pattern_checked,
        gram,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn res(s: &str) -> WahlResolution<i64> {
        WahlResolution::parse(s).unwrap()
    }

    #[test]
    fn extremal_hom() {
        let q = hom_dims(&res("[5|2]-(1)-[2|1]")).unwrap();
        assert_eq!(q.ranks, vec![5, 2]);
        assert_eq!(q.hom[1][0], 1);
        assert_eq!(q.arrows[1][0], 1);
    }

    #[test]
    fn triangle() {
        // 12/7 has M-resolution *-(2)-[2|1]-(2)-* with δ = (1, 1)
        let m = res("*-(2)-[2|1]-(2)-*");
        assert_eq!(m.target(), &Fraction::from_i64(12, 7).unwrap());
        assert_eq!(m.deltas(), vec![1, 1]);
        let n = apply_word(&m, &mn_schedule(2)).unwrap();
        let q = hom_dims(&n).unwrap();
        let (a, b) = (1, 1);
        let c = (a * m.sings()[2].n() + b * m.sings()[0].n()) / m.sings()[1].n();
        assert_eq!(q.hom[2][0], a * b + c);
        assert_eq!((q.arrows[2][1], q.arrows[1][0], q.arrows[2][0]), (a, b, c));
    }

    #[test]
    fn arrows() {
        let h = vec![vec![0i64, 0, 0], vec![2, 0, 0], vec![2 * 3 + 4, 3, 0]];
        let a = arrows_from_homs(&h).unwrap();
        assert_eq!((a[1][0], a[2][1], a[2][0]), (2, 3, 4));
        let zero = vec![vec![0i64; 3]; 3];
        assert_eq!(arrows_from_homs(&zero).unwrap(), zero);
        let bad = vec![vec![0i64, 0, 0], vec![2, 0, 0], vec![1, 3, 0]];
        assert!(matches!(arrows_from_homs(&bad), Err(Error::NegativeArrowCount { i: 2, j: 0 })));
    }

    #[test]
    fn euler() {
        assert_eq!(euler_pairing(&res("[2|1]-(1)-[3|1]"), 1).unwrap(), -1);
        assert_eq!(euler_pairing(&res("[5|2]-(1)-[2|1]"), 1).unwrap(), 1);
        assert_eq!(euler_pairing(&res("[3|1]-(1)-[3|1]"), 1).unwrap(), 0);
    }

    #[test]
    fn ranks() {
        assert!(rank_identity(&res("[2|1]-(1)-[3|1]"), &res("[5|2]-(1)-[2|1]")));
        assert!(rank_identity(&res("[2|1]-(1)-[3|1]-(2)-[2|1]"), &res("[35|13]-(1)-[5|2]-(1)-[2|1]")));
        assert!(!rank_identity(&res("[2|1]-(1)-[3|1]"), &res("[2|1]-(1)-[3|1]")));
    }

    #[test]
    fn qabc() {
        match check_q_abc(&1i64, &1, &1) {
            Some(QabcWitness::Extremal(w)) => {
                assert_eq!(w.lambda, 2);
                assert_eq!(w.resolution.to_string(), "*-(3)-*");
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(check_q_abc(&2i64, &1, &2), None);
        match check_q_abc(&2i64, &1, &3) {
            Some(QabcWitness::Extremal(w)) => assert_eq!(w.lambda, 3),
            other => panic!("{other:?}"),
        }
        assert_eq!(check_q_abc(&0i64, &3, &3), Some(QabcWitness::Degenerate));
        assert_eq!(check_q_abc(&0i64, &3, &2), None);
        assert_eq!(check_q_abc(&0i64, &0, &0), Some(QabcWitness::Semisimple));
    }

    #[test]
    fn c_sets() {
        assert_eq!(enumerate_c(&1i64, &1, &10), (1..=10).collect());
        assert_eq!(enumerate_c(&2i64, &1, &10), [1, 3, 5, 7, 9].into_iter().collect());
        assert!(enumerate_c(&2i64, &2, &20).iter().all(|c| c % 2 == 0));
    }

    #[test]
    fn dolgachev_3_2() {
        let d = dolgachev(&3i64, &2).unwrap();
        let m: Vec<Vec<i64>> = d.m_res.sings().iter().map(|s| s.chain()).collect();
        assert_eq!(m[0], vec![4]);
        assert!(m[1..].iter().all(|c| c == &vec![5, 2]));
        assert!(d.m_res.curves().iter().all(|c| *c == 1));
        let n: Vec<Vec<i64>> = d.n_res.sings().iter().map(|s| s.chain()).collect();
        assert!(n[..9].iter().all(|c| c == &vec![3, 5, 2]));
        assert_eq!(n[9], vec![4]);
        assert_eq!(d.delta, vec![1, 0, 0, 0, 0, 0, 0, 0, 0]);
        for i in 0..10 {
            for j in 0..i {
                assert_eq!(d.quiver.hom[i][j], if i == 9 { 1 } else { 0 });
            }
        }
        assert_eq!(d.gram, [[-1, 3], [0, -1]]);
    }

    #[test]
    fn dolgachev_rejects() {
        assert!(dolgachev(&4i64, &2).is_err());
        assert!(dolgachev(&5i64, &3).is_err());
        assert!(dolgachev(&1i64, &2).is_err());
    }
}
