//! Exact combinatorics of cyclic quotient surface singularities `1/Δ(1,Ω)`.
//!
//! - [`cfrac`]: Hirzebruch–Jung continued fractions, Wahl chains, T-singularities.
//! - [`chain`]: Wahl resolutions, discrepancies, `K·Γ`, chain notation.
//! - [`components`]: zero continued fractions, M- and N-resolutions.
//! - [`braid`]: antiflips and the braid group action.
//! - [`quiver`]: hom dimensions, arrows, Euler pairings, `Q_{a,b,c}`, Dolgachev data.
//! - [`sweep`]: all cross-checks for one target.
//!
//! Everything is generic over an exact integer type ([`Int`]); the aliases
//! below fix it to `BigInt` or `i64`.
//!
//! ```
//! use cqsres::{components, Fraction};
//!
//! let f: Fraction = "19/7".parse().unwrap();
//! let reports = components(&f).unwrap();
//! assert_eq!(reports.len(), 3);
//! assert_eq!(reports[2].m_res.to_string(), "[2|1]-(1)-[3|1]");
//! assert_eq!(reports[2].n_res.to_string(), "[5|2]-(1)-[2|1]");
//! ```

pub mod braid;
pub mod cfrac;
pub mod chain;
pub mod components;
pub mod error;
pub mod quiver;
pub mod scalar;
pub mod sweep;

pub use braid::{
    apply_move, apply_word, check_braid_relations, left_antiflip, mn_schedule, right_antiflip, BraidWord, Direction,
    Move, Relation,
};
pub use cfrac::{
    blow_down, format_string, hj_dual, hj_eval, hj_expand, parse_string, parse_t, parse_wahl, riemenschneider_zero,
    wahl_cf, wahl_cf_dual, TSingularity,
};
pub use chain::{
    contract, curve_from_delta, discrepancies, fraction_discrepancies, full_string, k_dot_gamma, parse_chain,
    print_chain, signed_delta,
};
pub use components::{
    check_pair, component, component_dimension, components, delta_vector, enumerate_zero_fractions, m_resolution,
    n_resolution, ComponentReport, DeltaVector, ZeroFraction,
};
pub use error::{Error, Result};
pub use quiver::{
    arrows_from_homs, c_from_residues, check_q_abc, dolgachev, dolgachev_m_resolution, enumerate_c, euler_pairing,
    extremal_candidate, hom_dims, rank_identity, DolgachevReport, ExtremalWitness, QabcWitness, Quiver,
};
pub use scalar::{int, Int};
pub use sweep::{check_target, coprime_pairs, random_braid_checks, BraidSample, Summary};

pub use num_bigint::BigInt;

/// Exact rationals over the scalar.
pub type Rational<T = BigInt> = num_rational::Ratio<T>;

/// Default types, on `BigInt` (the generic defaults).
pub type Fraction = cfrac::Fraction<BigInt>;
pub type WahlSingularity = chain::WahlSingularity<BigInt>;
pub type WahlResolution = chain::WahlResolution<BigInt>;

/// Fixed-width variants for small inputs.
pub type Fraction64 = cfrac::Fraction<i64>;
pub type WahlSingularity64 = chain::WahlSingularity<i64>;
pub type WahlResolution64 = chain::WahlResolution<i64>;
pub type ZeroFraction64 = components::ZeroFraction<i64>;
pub type Quiver64 = quiver::Quiver<i64>;
pub type Fraction128 = cfrac::Fraction<i128>;
pub type WahlResolution128 = chain::WahlResolution<i128>;
