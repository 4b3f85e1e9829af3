//! Computable names: per-coordinate antichains with attached values.
//!
//! A nice name describes a function-to-be: coordinate α is decided wherever
//! a condition extends one of the antichain members listed at α, and the
//! attached value is what the function takes there.  Everything a condition
//! can say about the named function factors through [`decides`]; the
//! headline combinatorial fact is that conditions of a fixed size `k` can
//! only ever decide `2^k` distinct values at a coordinate.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::antichain::{check_antichain, AntichainCheck};
use crate::atom::{Atom, Permutable, Permutation};
use crate::poset::{Condition, PosetError, PosetFamily};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NameError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("coordinate {alpha} is outside arity {arity}")]
    OutOfArity { alpha: u32, arity: u32 },
    #[error("conditions mix families")]
    FamilyMismatch,
    #[error("coordinate {coord} lists compatible conditions at {left} and {right}")]
    NotAntichain { coord: usize, left: usize, right: usize },
    #[error("arity {arity} does not match {found} coordinate lists")]
    ArityMismatch { arity: u32, found: usize },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// A name for a function on `0..arity`: one antichain of `(condition,
/// value)` pairs per coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NiceNameRepr", into = "NiceNameRepr")]
pub struct NiceName {
    arity: u32,
    coords: Vec<Vec<(Condition, u64)>>,
}

#[derive(Serialize, Deserialize)]
struct NiceNameRepr {
    arity: u32,
    coords: Vec<Vec<(Condition, u64)>>,
}

impl From<NiceName> for NiceNameRepr {
    fn from(name: NiceName) -> NiceNameRepr {
        NiceNameRepr { arity: name.arity, coords: name.coords }
    }
}

impl TryFrom<NiceNameRepr> for NiceName {
    type Error = NameError;

    fn try_from(repr: NiceNameRepr) -> Result<NiceName, NameError> {
        NiceName::new(repr.arity, repr.coords)
    }
}

impl NiceName {
    /// Validate and build: one antichain per coordinate, a single family.
    pub fn new(arity: u32, coords: Vec<Vec<(Condition, u64)>>) -> Result<NiceName, NameError> {
        if coords.len() != arity as usize {
            return Err(NameError::ArityMismatch { arity, found: coords.len() });
        }
        let mut family: Option<PosetFamily> = None;
        for (coord, members) in coords.iter().enumerate() {
            for (cond, _) in members {
                match family {
                    None => family = Some(cond.family()),
                    Some(f) if f == cond.family() => {}
                    Some(_) => return Err(NameError::FamilyMismatch),
                }
            }
            let conds: Vec<Condition> = members.iter().map(|(c, _)| c.clone()).collect();
            if let AntichainCheck::CompatiblePair { left, right, .. } = check_antichain(&conds)? {
                return Err(NameError::NotAntichain { coord, left, right });
            }
        }
        Ok(NiceName { arity, coords })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    /// The family of the listed conditions, if any are listed.
    pub fn family(&self) -> Option<PosetFamily> {
        self.coords.iter().flatten().next().map(|(c, _)| c.family())
    }

    pub fn coord(&self, alpha: u32) -> Result<&[(Condition, u64)], NameError> {
        self.coords
            .get(alpha as usize)
            .map(Vec::as_slice)
            .ok_or(NameError::OutOfArity { alpha, arity: self.arity })
    }

    pub fn coords(&self) -> &[Vec<(Condition, u64)>] {
        &self.coords
    }
}

impl Permutable for NiceName {
    fn permute(&self, pi: &Permutation) -> NiceName {
        NiceName {
            arity: self.arity,
            coords: self
                .coords
                .iter()
                .map(|coord| coord.iter().map(|(c, v)| (c.permute(pi), *v)).collect())
                .collect(),
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        for (cond, _) in self.coords.iter().flatten() {
            cond.collect_atoms(out);
        }
    }
}

/// The value `p` forces the name to take at `alpha`, if `p` extends one of
/// the listed deciders there; `None` when undecided.
pub fn decides(p: &Condition, name: &NiceName, alpha: u32) -> Result<Option<u64>, NameError> {
    let mut found = None;
    for (q, beta) in name.coord(alpha)? {
        if p.extends(q)? {
            assert!(
                found.is_none(),
                "a condition extended two members of one antichain"
            );
            found = Some(*beta);
        }
    }
    Ok(found)
}

/// All values decided at `alpha` by some `q ≤ p` with `|dom q| = k`,
/// exhaustively enumerated over a bit-valued family of at most 5 points.
///
/// The returned set always has at most `2^k` elements: two size-`k`
/// conditions deciding different values are incompatible, so the deciders
/// form a uniform antichain and the packing bound applies.
pub fn compute_a_set(
    name: &NiceName,
    p: &Condition,
    alpha: u32,
    k: usize,
) -> Result<BTreeSet<u64>, NameError> {
    let family = p.family();
    if !matches!(family, PosetFamily::Fin2(_)) {
        return Err(NameError::FamilyMismatch);
    }
    if let Some(name_family) = name.family() {
        if name_family != family {
            return Err(NameError::FamilyMismatch);
        }
    }
    let points = family.domain_points();
    if points.len() > 5 {
        return Err(NameError::BudgetExceeded(format!(
            "enumeration capped at 5 points, family has {}",
            points.len()
        )));
    }
    let mut out = BTreeSet::new();
    if k < p.len() || k > points.len() {
        return Ok(out);
    }
    let free: Vec<_> =
        points.into_iter().filter(|pt| p.value_at(pt).is_none()).collect();
    let extra = k - p.len();
    // Choose which free points join the domain, then how their bits fall.
    for choice in 0u32..1 << free.len() {
        if choice.count_ones() as usize != extra {
            continue;
        }
        let chosen: Vec<_> = free
            .iter()
            .enumerate()
            .filter(|(i, _)| choice >> i & 1 == 1)
            .map(|(_, pt)| *pt)
            .collect();
        for bits in 0u32..1 << extra {
            let mut q = p.clone();
            for (i, pt) in chosen.iter().enumerate() {
                q = q
                    .extended_with(*pt, crate::poset::Value::Bit((bits >> i & 1) as u8))
                    .expect("free point of a valid condition");
            }
            if let Some(beta) = decides(&q, name, alpha)? {
                out.insert(beta);
            }
        }
    }
    assert!(out.len() as u64 <= 1 << k, "decided-value set exceeded the packing bound");
    Ok(out)
}

/// A seeded random nice name over a small bit-valued family: each
/// coordinate gets a greedy antichain sampled from all conditions, with
/// values drawn below `value_bound`.
pub fn random_nice_name(
    family: PosetFamily,
    arity: u32,
    per_coord: usize,
    value_bound: u64,
    seed: u64,
) -> Result<NiceName, NameError> {
    if !matches!(family, PosetFamily::Fin2(_)) {
        return Err(NameError::FamilyMismatch);
    }
    let points = family.domain_points();
    if points.len() > 5 {
        return Err(NameError::BudgetExceeded(format!(
            "random names capped at 5 points, family has {}",
            points.len()
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let pool = family.conditions_up_to(points.len());
    let mut coords = Vec::with_capacity(arity as usize);
    for _ in 0..arity {
        let mut shuffled = pool.clone();
        shuffled.shuffle(&mut rng);
        let mut members: Vec<(Condition, u64)> = Vec::new();
        for cand in shuffled {
            if members.len() >= per_coord {
                break;
            }
            let mut clashes = false;
            for (kept, _) in &members {
                if crate::poset::compatible(&cand, kept)? {
                    clashes = true;
                    break;
                }
            }
            if !clashes {
                let value = if value_bound == 0 { 0 } else { rng.gen_range(0..value_bound) };
                members.push((cand, value));
            }
        }
        coords.push(members);
    }
    NiceName::new(arity, coords)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antichain::full_cube;
    use crate::poset::{IndexPoint, Value};

    fn bit_name(arity: u32, coords: Vec<Vec<(Condition, u64)>>) -> NiceName {
        NiceName::new(arity, coords).unwrap()
    }

    fn nat_cond(family: PosetFamily, entries: &[(u32, u8)]) -> Condition {
        Condition::from_entries(
            family,
            entries.iter().map(|(i, b)| (IndexPoint::Nat(*i), Value::Bit(*b))),
        )
    }

    #[test]
    fn unit_decides_listed_member_and_below() {
        let family = PosetFamily::fin2_naturals(4);
        let q = nat_cond(family, &[(0, 1)]);
        let name = bit_name(1, vec![vec![(q.clone(), 7)]]);
        assert_eq!(decides(&q, &name, 0).unwrap(), Some(7));
        let below = nat_cond(family, &[(0, 1), (2, 0)]);
        assert_eq!(decides(&below, &name, 0).unwrap(), Some(7));
        assert_eq!(decides(&Condition::empty(family), &name, 0).unwrap(), None);
    }

    #[test]
    fn unit_decides_out_of_arity() {
        let name = bit_name(1, vec![vec![]]);
        assert_eq!(
            decides(&Condition::empty(PosetFamily::fin2_naturals(2)), &name, 1),
            Err(NameError::OutOfArity { alpha: 1, arity: 1 })
        );
    }

    #[test]
    fn unit_name_rejects_compatible_members() {
        let family = PosetFamily::fin2_naturals(4);
        let a = nat_cond(family, &[(0, 1)]);
        let b = nat_cond(family, &[(1, 1)]);
        assert_eq!(
            NiceName::new(1, vec![vec![(a, 1), (b, 2)]]).unwrap_err(),
            NameError::NotAntichain { coord: 0, left: 0, right: 1 }
        );
    }

    #[test]
    fn unit_a_set_empty_coordinate() {
        let name = bit_name(1, vec![vec![]]);
        let p = Condition::empty(PosetFamily::fin2_naturals(3));
        assert!(compute_a_set(&name, &p, 0, 2).unwrap().is_empty());
    }

    #[test]
    fn unit_a_set_at_k_zero() {
        let family = PosetFamily::fin2_naturals(3);
        let name = bit_name(1, vec![vec![(Condition::empty(family), 5)]]);
        let a = compute_a_set(&name, &Condition::empty(family), 0, 0).unwrap();
        assert_eq!(a, BTreeSet::from([5]));
    }

    #[test]
    fn unit_a_set_full_cube_reaches_the_bound() {
        let family = PosetFamily::fin2_naturals(4);
        let cube = full_cube(family, &[IndexPoint::Nat(0), IndexPoint::Nat(1)]).unwrap();
        let coord: Vec<(Condition, u64)> =
            cube.into_iter().enumerate().map(|(i, c)| (c, i as u64)).collect();
        let name = bit_name(1, vec![coord]);
        let a = compute_a_set(&name, &Condition::empty(family), 0, 2).unwrap();
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn unit_a_set_below_a_nonempty_condition() {
        let family = PosetFamily::fin2_naturals(3);
        let p = nat_cond(family, &[(0, 0)]);
        let deciders = vec![
            (nat_cond(family, &[(0, 0), (1, 0)]), 10),
            (nat_cond(family, &[(0, 0), (1, 1)]), 11),
            (nat_cond(family, &[(0, 1)]), 99),
        ];
        let name = bit_name(1, vec![deciders]);
        // Size-2 extensions of p can decide 10 or 11, never 99.
        let a = compute_a_set(&name, &p, 0, 2).unwrap();
        assert_eq!(a, BTreeSet::from([10, 11]));
    }

    #[test]
    fn unit_a_set_budget_guard() {
        let name = bit_name(1, vec![vec![]]);
        let p = Condition::empty(PosetFamily::fin2_naturals(6));
        assert!(matches!(
            compute_a_set(&name, &p, 0, 1),
            Err(NameError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn unit_random_names_are_valid_and_bounded() {
        let family = PosetFamily::fin2_plain(4);
        for seed in 0..10 {
            let name = random_nice_name(family, 3, 6, 16, seed).unwrap();
            assert_eq!(name.arity(), 3);
            for k in 0..=3usize {
                for alpha in 0..3 {
                    let a = compute_a_set(&name, &Condition::empty(family), alpha, k).unwrap();
                    assert!(a.len() as u64 <= 1 << k);
                }
            }
        }
    }

    #[test]
    fn unit_name_json_round_trip() {
        let family = PosetFamily::fin2_naturals(3);
        let name = bit_name(2, vec![vec![(nat_cond(family, &[(0, 1)]), 3)], vec![]]);
        let json = serde_json::to_string(&name).unwrap();
        assert!(json.contains("\"arity\":2"));
        assert_eq!(serde_json::from_str::<NiceName>(&json).unwrap(), name);
    }

    #[test]
    fn unit_name_json_rejects_compatible_members() {
        let family = PosetFamily::fin2_naturals(3);
        let a = nat_cond(family, &[(0, 1)]);
        let b = nat_cond(family, &[(1, 1)]);
        let json = serde_json::to_string(&NiceNameRepr {
            arity: 1,
            coords: vec![vec![(a, 1), (b, 2)]],
        })
        .unwrap();
        assert!(serde_json::from_str::<NiceName>(&json).is_err());
    }

    #[test]
    fn unit_decides_is_equivariant() {
        let family = PosetFamily::fin2_plain(3);
        let q = Condition::from_entries(
            family,
            [(IndexPoint::AtomPoint(Atom::Plain(0)), Value::Bit(1))],
        );
        let name = bit_name(1, vec![vec![(q.clone(), 7)]]);
        let pi = Permutation::transposition(Atom::Plain(0), Atom::Plain(2));
        assert_eq!(decides(&q.permute(&pi), &name.permute(&pi), 0).unwrap(), Some(7));
        assert_eq!(decides(&q.permute(&pi), &name, 0).unwrap(), None);
    }
}
