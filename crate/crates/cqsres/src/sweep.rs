//! Cross-validation of every component of a target.

use std::collections::hash_map::Entry;
use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::braid::{apply_word, check_braid_relations, mn_schedule, Relation};
use crate::cfrac::{hj_eval, hj_expand, riemenschneider_zero, Fraction};
use crate::chain::WahlResolution;
use crate::components::components;
use crate::error::{Error, Result};
use crate::quiver::rank_identity;
use crate::scalar::Int;

/// Counts gathered while checking one target.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Summary {
    pub targets: usize,
    pub components: usize,
    pub antiflips: usize,
}

impl Summary {
    pub fn merge(self, other: Summary) -> Summary {
        Summary {
            targets: self.targets + other.targets,
            components: self.components + other.components,
            antiflips: self.antiflips + other.antiflips,
        }
    }
}

/// Check everything for one target: expansion round trip, the zero identity,
/// each component's M/N pair and quiver, the M→N antiflip schedule, the rank
/// identity and uniqueness of the Artin component.
pub fn check_target<T: Int>(f: &Fraction<T>) -> Result<Summary> {
    let bad = |msg: String| Error::Malformed(format!("{f}: {msg}"));
    let (p, q) = hj_eval(&hj_expand(f));
    if (&p, &q) != (f.delta(), f.omega()) {
        return Err(bad("expansion does not evaluate back".into()));
    }
    if !riemenschneider_zero(f) {
        return Err(bad("dual and expansion do not glue to zero".into()));
    }
    let reports = components(f)?;
    let mut summary = Summary { targets: 1, ..Summary::default() };
    let mut artin = 0;
    for c in &reports {
        let word = mn_schedule(c.m_res.r());
        let n = apply_word(&c.m_res, &word)?;
        if n != c.n_res {
            return Err(bad(format!("schedule gives {n}, construction gives {}", c.n_res)));
        }
        if !rank_identity(&c.m_res, &c.n_res) {
            return Err(bad(format!("rank identity fails for {}", c.zero_fraction)));
        }
        if c.is_artin() {
            artin += 1;
        }
        summary.components += 1;
        summary.antiflips += word.0.len();
    }
    if artin != 1 {
        return Err(bad(format!("{artin} components have the minimal resolution as M-resolution")));
    }
    Ok(summary)
}

/// Coprime `(Δ, Ω)` with `2 <= Δ <= max`, `0 < Ω < Δ`.
pub fn coprime_pairs(max: u64) -> Vec<(u64, u64)> {
    use num_integer::Integer;
    (2..=max).flat_map(|d| (1..d).filter(move |o| d.gcd(o) == 1).map(move |o| (d, o))).collect()
}

/// Tally of random braid relation checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BraidSample {
    pub holds: usize,
    pub vacuous: usize,
    /// `(chain, i, j)` for every failure.
    pub failures: Vec<(String, usize, usize)>,
}

/// Check braid relations on `count` random `(component, i, j)` triples:
/// a target with `Δ <= max`, one of its M-resolutions with at least two
/// curves, and distinct indices `i, j`. Deterministic in `seed`.
pub fn random_braid_checks<T: Int>(max: u64, count: usize, seed: u64) -> Result<BraidSample> {
    let pairs = coprime_pairs(max);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cache: HashMap<(u64, u64), Vec<WahlResolution<T>>> = HashMap::new();
    let mut out = BraidSample::default();
    let mut attempts = 0usize;
    while out.holds + out.vacuous + out.failures.len() < count {
        attempts += 1;
        if attempts > count * 1000 {
            return Err(Error::Malformed(format!("no resolution with two curves for Δ <= {max}")));
        }
        let (d, o) = pairs[rng.gen_range(0..pairs.len())];
        let ms = match cache.entry((d, o)) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => {
                let f = Fraction::new(T::from_u64(d).expect("fits"), T::from_u64(o).expect("fits"))?;
                e.insert(components(&f)?.into_iter().map(|c| c.m_res).filter(|m| m.r() >= 2).collect())
            }
        };
        if ms.is_empty() {
            continue;
        }
        let w = &ms[rng.gen_range(0..ms.len())];
        let i = rng.gen_range(1..=w.r());
        let mut j = rng.gen_range(1..w.r());
        if j >= i {
            j += 1;
        }
        match check_braid_relations(w, i, j) {
            Relation::Holds => out.holds += 1,
            Relation::Vacuous => out.vacuous += 1,
            Relation::Fails => out.failures.push((w.to_string(), i, j)),
        }
    }
    Ok(out)
}
