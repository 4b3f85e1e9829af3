//! Ordinals below ω³ in Cantor normal form.
//!
//! Three coefficients suffice: every ordinal here is `ω²·a + ω·b + c`.  The
//! representation is canonical by construction, so comparison is plain
//! lexicographic order on the coefficient triple.  What the rest of the
//! crate needs from ordinal arithmetic is exactly one map — `(α, k) ↦
//! ω·α + k` — plus the embedding of a union of finite ordinal sets it
//! induces.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum OrdinalError {
    #[error("result would reach ω³")]
    Overflow,
    #[error("unreadable ordinal {input:?}: {reason}")]
    Parse { input: String, reason: String },
}

/// An ordinal `ω²·a + ω·b + c`, stored as the coefficient triple `[a, b, c]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct OrdinalCnf([u64; 3]);

impl OrdinalCnf {
    pub fn new(omega2: u64, omega1: u64, finite: u64) -> OrdinalCnf {
        OrdinalCnf([omega2, omega1, finite])
    }

    pub fn nat(n: u64) -> OrdinalCnf {
        OrdinalCnf([0, 0, n])
    }

    pub fn omega() -> OrdinalCnf {
        OrdinalCnf([0, 1, 0])
    }

    pub fn is_finite(&self) -> bool {
        self.0[0] == 0 && self.0[1] == 0
    }

    /// Coefficients `[a, b, c]` of `ω²·a + ω·b + c`.
    pub fn coefficients(&self) -> [u64; 3] {
        self.0
    }
}

/// `(α, k) ↦ ω·α + k`.  Left-multiplying by ω shifts every coefficient up a
/// power, so the input must sit below ω² for the result to stay below ω³.
/// The map is injective: α is recovered from the two upper coefficients and
/// `k` from the finite part.
pub fn omega_times_plus(alpha: OrdinalCnf, k: u64) -> Result<OrdinalCnf, OrdinalError> {
    let [a, b, c] = alpha.0;
    if a != 0 {
        return Err(OrdinalError::Overflow);
    }
    Ok(OrdinalCnf([b, c, k]))
}

/// Total order on canonical forms; on finite ordinals it is the natural
/// number order.
pub fn cnf_compare(a: OrdinalCnf, b: OrdinalCnf) -> std::cmp::Ordering {
    a.cmp(&b)
}

/// Embed a union of finite ordinal sets `B_0, B_1, …` injectively into the
/// ordinals: `x ∈ B_γ` (for the first γ containing it) goes to
/// `ω·γ + rank of x in B_γ`.  Overlapping sets are fine — the first-γ rule
/// picks one image and injectivity survives, since distinct γ land in
/// distinct ω-blocks and ranks separate elements within a block.
pub fn embed_finite_family(
    family: &[BTreeSet<OrdinalCnf>],
) -> BTreeMap<OrdinalCnf, OrdinalCnf> {
    let mut out = BTreeMap::new();
    for (gamma, set) in family.iter().enumerate() {
        for (rank, x) in set.iter().enumerate() {
            let image = omega_times_plus(OrdinalCnf::nat(gamma as u64), rank as u64)
                .expect("finite γ stays below ω²");
            out.entry(*x).or_insert(image);
        }
    }
    let images: BTreeSet<OrdinalCnf> = out.values().copied().collect();
    assert_eq!(images.len(), out.len(), "block embedding must be injective");
    out
}

impl fmt::Display for OrdinalCnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.0;
        if (a, b, c) == (0, 0, 0) {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        if a > 0 {
            terms.push(if a == 1 { "w^2".to_string() } else { format!("w^2*{a}") });
        }
        if b > 0 {
            terms.push(if b == 1 { "w".to_string() } else { format!("w*{b}") });
        }
        if c > 0 {
            terms.push(c.to_string());
        }
        write!(f, "{}", terms.join("+"))
    }
}

impl FromStr for OrdinalCnf {
    type Err = OrdinalError;

    fn from_str(s: &str) -> Result<OrdinalCnf, OrdinalError> {
        let err = |reason: &str| OrdinalError::Parse {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let body = s.trim();
        if body == "0" {
            return Ok(OrdinalCnf::nat(0));
        }
        let mut coeffs = [0u64; 3];
        let mut last_power = 3u32;
        for term in body.split('+') {
            let term = term.trim();
            let (power, coeff_text) = if let Some(rest) = term.strip_prefix("w^2") {
                (2, rest.strip_prefix('*').unwrap_or("1"))
            } else if let Some(rest) = term.strip_prefix('w') {
                (1, rest.strip_prefix('*').unwrap_or("1"))
            } else {
                (0, term)
            };
            let coeff: u64 =
                coeff_text.parse().map_err(|_| err("term needs a numeric coefficient"))?;
            if coeff == 0 {
                return Err(err("zero terms are not written in canonical form"));
            }
            if power >= last_power {
                return Err(err("terms must appear in strictly descending powers"));
            }
            last_power = power;
            coeffs[2 - power as usize] = coeff;
        }
        Ok(OrdinalCnf(coeffs))
    }
}

impl Serialize for OrdinalCnf {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OrdinalCnf {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<OrdinalCnf, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
