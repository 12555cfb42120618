//! Antiflips and the braid group action on Wahl resolutions.
//!
//! The right antiflip `R_i` rewrites the two singularities on `Γ_i`: the left
//! one moves to the right and a new singularity appears on the left. The left
//! antiflip `L_i` is its inverse. On a resolution with `r` curves they satisfy
//! the relations of the braid group on `r + 1` strands.

use std::fmt;
use std::str::FromStr;

use crate::chain::{curve_from_delta, signed_delta, WahlResolution, WahlSingularity};
use crate::error::{Error, Result};
use crate::scalar::Int;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Right,
    Left,
}

/// One generator: a direction and a curve index in `1..=r`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub dir: Direction,
    pub index: usize,
}

impl Move {
    pub fn right(index: usize) -> Self {
        Move { dir: Direction::Right, index }
    }

    pub fn left(index: usize) -> Self {
        Move { dir: Direction::Left, index }
    }

    pub fn inverse(self) -> Self {
        let dir = match self.dir {
            Direction::Right => Direction::Left,
            Direction::Left => Direction::Right,
        };
        Move { dir, index: self.index }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.dir {
            Direction::Right => 'R',
            Direction::Left => 'L',
        };
        write!(f, "{c}{}", self.index)
    }
}

/// A word in the generators, applied left to right.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BraidWord(pub Vec<Move>);

impl BraidWord {
    pub fn inverse(&self) -> BraidWord {
        BraidWord(self.0.iter().rev().map(|m| m.inverse()).collect())
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// `R2,R1,L1`; the empty string is the empty word.
    fn from_str(s: &str) -> Result<Self> {
        let mut moves = Vec::new();
        let mut pos = 0;
        for tok in s.split(',') {
            let t = tok.trim();
            if t.is_empty() && s.trim().is_empty() {
                break;
            }
            let err = || Error::Syntax { pos, msg: format!("expected R<i> or L<i>, got {t:?}") };
            let dir = match t.chars().next() {
                Some('R') | Some('r') => Direction::Right,
                Some('L') | Some('l') => Direction::Left,
                _ => return Err(err()),
            };
            let index: usize = t[1..].parse().map_err(|_| err())?;
            if index == 0 {
                return Err(err());
            }
            moves.push(Move { dir, index });
            pos += tok.len() + 1;
        }
        Ok(BraidWord(moves))
    }
}

fn sign<T: Int>(x: &T) -> T {
    x.signum()
}

fn exact_div<T: Int>(num: T, den: &T, what: &str) -> Result<T> {
    let (q, r) = num.div_rem(den);
    if !r.is_zero() {
        return Err(Error::NonIntegral(format!("{what}: {num} / {den}")));
    }
    Ok(q)
}

/// The new signed invariant on the antiflipped curve: `-δ` in cases (+/-) and
/// (-/-), `+δ` in case (-/+).
fn flipped_sign<T: Int>(s: &T, m: &T) -> T {
    if !s.is_negative() || m.is_negative() {
        -s.abs()
    } else {
        s.abs()
    }
}

/// Right antiflip of `Γ_i`.
///
/// With `L = P_{i-1}`, `R = P_i`, `s = s_i` and `m = s n_L + n_R`, the result
/// has `P'_{i-1} = (|m|, sign(m)(s a_L + a_R - (c_i - 1) n_R))` and
/// `P'_i = L`. This one formula covers the cases (+/-), (-/-) and (-/+).
pub fn right_antiflip<T: Int>(w: &WahlResolution<T>, i: usize) -> Result<WahlResolution<T>> {
    w.check_index(i)?;
    let sings = w.sings();
    let curves = w.curves();
    let (l, r) = (&sings[i - 1], &sings[i]);
    let c = &curves[i - 1];
    let s = signed_delta(l, c, r);
    let m = s.clone() * l.n().clone() + r.n().clone();
    if m.is_zero() {
        return Err(Error::Degenerate { index: i });
    }
    let sg = sign(&m);
    let a_new = sg.clone() * (s.clone() * l.a_left() + r.a_right() - (c.clone() - T::one()) * r.n().clone());
    let x = WahlSingularity::reduced(m.abs(), a_new).map_err(|_| Error::Degenerate { index: i })?;

    let mut new_sings = sings.to_vec();
    let mut new_curves = curves.to_vec();
    new_sings[i - 1] = x.clone();
    new_sings[i] = l.clone();
    new_curves[i - 1] = curve_from_delta(&x, l, &flipped_sign(&s, &m))?;
    if i >= 2 {
        let prev = signed_delta(&sings[i - 2], &curves[i - 2], l);
        let num = sg * (prev * m.clone() + s.clone() * sings[i - 2].n().clone());
        let s_new = exact_div(num, l.n(), "left neighbour")?;
        new_curves[i - 2] = curve_from_delta(&sings[i - 2], &x, &s_new)?;
    }
    if i < w.r() {
        let next = signed_delta(r, &curves[i], &sings[i + 1]);
        let num = next * l.n().clone() + s * sings[i + 1].n().clone();
        let s_new = exact_div(num, r.n(), "right neighbour")?;
        new_curves[i] = curve_from_delta(l, &sings[i + 1], &s_new)?;
    }
    finish(w, new_sings, new_curves)
}

/// Left antiflip of `Γ_i`, the inverse of [`right_antiflip`].
///
/// Mirrored formulas: `m = s n_R + n_L`,
/// `P'_i = (|m|, sign(m)(s a_R + a_L + (c_i - 1) n_L))` and `P'_{i-1} = R`.
pub fn left_antiflip<T: Int>(w: &WahlResolution<T>, i: usize) -> Result<WahlResolution<T>> {
    w.check_index(i)?;
    let sings = w.sings();
    let curves = w.curves();
    let (l, r) = (&sings[i - 1], &sings[i]);
    let c = &curves[i - 1];
    let s = signed_delta(l, c, r);
    let m = s.clone() * r.n().clone() + l.n().clone();
    if m.is_zero() {
        return Err(Error::Degenerate { index: i });
    }
    let sg = sign(&m);
    let a_new = sg.clone() * (s.clone() * r.a_right() + l.a_left() + (c.clone() - T::one()) * l.n().clone());
    let y = WahlSingularity::reduced(m.abs(), a_new).map_err(|_| Error::Degenerate { index: i })?;

    let mut new_sings = sings.to_vec();
    let mut new_curves = curves.to_vec();
    new_sings[i - 1] = r.clone();
    new_sings[i] = y.clone();
    new_curves[i - 1] = curve_from_delta(r, &y, &flipped_sign(&s, &m))?;
    if i < w.r() {
        let next = signed_delta(r, &curves[i], &sings[i + 1]);
        let num = sg * (next * m.clone() + s.clone() * sings[i + 1].n().clone());
        let s_new = exact_div(num, r.n(), "right neighbour")?;
        new_curves[i] = curve_from_delta(&y, &sings[i + 1], &s_new)?;
    }
    if i >= 2 {
        let prev = signed_delta(&sings[i - 2], &curves[i - 2], l);
        let num = prev * r.n().clone() + s * sings[i - 2].n().clone();
        let s_new = exact_div(num, l.n(), "left neighbour")?;
        new_curves[i - 2] = curve_from_delta(&sings[i - 2], r, &s_new)?;
    }
    finish(w, new_sings, new_curves)
}

fn finish<T: Int>(w: &WahlResolution<T>, sings: Vec<WahlSingularity<T>>, curves: Vec<T>) -> Result<WahlResolution<T>> {
    WahlResolution::new(w.target().clone(), sings, curves)
}

pub fn apply_move<T: Int>(w: &WahlResolution<T>, mv: Move) -> Result<WahlResolution<T>> {
    match mv.dir {
        Direction::Right => right_antiflip(w, mv.index),
        Direction::Left => left_antiflip(w, mv.index),
    }
}

/// Apply a word left to right; each step is validated by contraction.
pub fn apply_word<T: Int>(w: &WahlResolution<T>, word: &BraidWord) -> Result<WahlResolution<T>> {
    let mut cur = w.clone();
    for (step, mv) in word.0.iter().enumerate() {
        cur = apply_move(&cur, *mv).map_err(|e| Error::Step { step: step + 1, source: Box::new(e) })?;
    }
    Ok(cur)
}

/// `R_m..R_1, R_m..R_2, ..., R_m`: the word taking an M-resolution with `m`
/// curves to its N-resolution.
pub fn mn_schedule(m: usize) -> BraidWord {
    let mut moves = Vec::with_capacity(m * (m + 1) / 2);
    for j in 1..=m {
        moves.extend((j..=m).rev().map(Move::right));
    }
    BraidWord(moves)
}

/// Outcome of a braid relation check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Holds,
    Fails,
    /// Some antiflip on one side was undefined.
    Vacuous,
}

/// `R_i R_j R_i = R_j R_i R_j` for adjacent indices, `R_i R_j = R_j R_i` for
/// distant ones. Equal indices hold trivially.
pub fn check_braid_relations<T: Int>(w: &WahlResolution<T>, i: usize, j: usize) -> Relation {
    let (lhs, rhs) = if i.abs_diff(j) == 1 {
        (
            BraidWord(vec![Move::right(i), Move::right(j), Move::right(i)]),
            BraidWord(vec![Move::right(j), Move::right(i), Move::right(j)]),
        )
    } else {
        (BraidWord(vec![Move::right(i), Move::right(j)]), BraidWord(vec![Move::right(j), Move::right(i)]))
    };
    match (apply_word(w, &lhs), apply_word(w, &rhs)) {
        (Ok(a), Ok(b)) if a == b => Relation::Holds,
        (Ok(_), Ok(_)) => Relation::Fails,
        _ => Relation::Vacuous,
    }
}
