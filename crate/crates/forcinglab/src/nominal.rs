//! Permutation groups acting on atoms, finite supports, and the executable
//! refutations that finite supports make possible.
//!
//! A [`PermModel`] fixes a universe of atoms and an ambient group.  Within it
//! one can check whether an object is fixed by every permutation that fixes a
//! finite support set, exhibit a pair swap that moves every choice-like
//! selector while fixing a given support, and classify a supported function
//! from atoms to naturals as eventually constant.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atom::{Atom, PermError, Permutable, Permutation, Universe};

/// The ambient permutation group of a model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    /// All finitary permutations of the plain atoms; socks stay fixed.
    FullSymmetric,
    /// The group generated by swapping sock pairs; plain atoms stay fixed.
    SocksGroup,
}

impl GroupSpec {
    /// Does the group contain this permutation?
    pub fn contains(&self, pi: &Permutation) -> bool {
        match self {
            GroupSpec::FullSymmetric => {
                pi.moved_atoms().all(|a| matches!(a, Atom::Plain(_)))
            }
            GroupSpec::SocksGroup => pi
                .moved_atoms()
                .all(|a| matches!(a, Atom::Sock { .. }) && pi.image(a) == a.partner().unwrap()),
        }
    }
}

/// A finite set of atoms used as a support.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Support(pub BTreeSet<Atom>);

impl Support {
    pub fn empty() -> Support {
        Support(BTreeSet::new())
    }

    pub fn from_atoms(atoms: impl IntoIterator<Item = Atom>) -> Support {
        Support(atoms.into_iter().collect())
    }

    pub fn contains(&self, atom: Atom) -> bool {
        self.0.contains(&atom)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sock pairs with at least one shoe in the support.
    pub fn touched_pairs(&self) -> BTreeSet<u32> {
        self.0
            .iter()
            .filter_map(|a| match a {
                Atom::Sock { pair, .. } => Some(*pair),
                Atom::Plain(_) => None,
            })
            .collect()
    }
}

impl Permutable for Support {
    fn permute(&self, pi: &Permutation) -> Support {
        Support(self.0.permute(pi))
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.extend(self.0.iter().copied());
    }
}

/// A choice-like selector: one pair index together with the shoe picked.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Selector {
    pub pair: u32,
    pub pick: Atom,
}

impl Selector {
    /// The two possible selectors on a pair, left pick first.
    pub fn both(pair: u32) -> [Selector; 2] {
        [
            Selector { pair, pick: Atom::sock_left(pair) },
            Selector { pair, pick: Atom::sock_right(pair) },
        ]
    }
}

impl Permutable for Selector {
    fn permute(&self, pi: &Permutation) -> Selector {
        Selector { pair: self.pair, pick: pi.image(self.pick) }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.insert(self.pick);
    }
}

/// A total function from atoms to naturals with finitely many exceptions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomFunction {
    pub exceptions: BTreeMap<Atom, u64>,
    pub default: u64,
}

impl AtomFunction {
    pub fn constant(default: u64) -> AtomFunction {
        AtomFunction { exceptions: BTreeMap::new(), default }
    }

    pub fn value(&self, atom: Atom) -> u64 {
        *self.exceptions.get(&atom).unwrap_or(&self.default)
    }
}

impl Permutable for AtomFunction {
    fn permute(&self, pi: &Permutation) -> AtomFunction {
        AtomFunction {
            exceptions: self.exceptions.iter().map(|(a, v)| (pi.image(*a), *v)).collect(),
            default: self.default,
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.extend(self.exceptions.keys().copied());
    }
}

/// Witness that no support-respecting choice can pick through pair `pair`:
/// `swap` fixes the support pointwise yet moves both selectors on the pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChoiceRefutation {
    pub pair: u32,
    pub swap: Permutation,
}

/// Outcome of classifying a supported atom function: off the support the
/// function is constant, so its range is finite.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FunctionRange {
    pub off_support_value: u64,
    pub range: BTreeSet<u64>,
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum NominalError {
    #[error("atom {0} lies outside the declared universe")]
    AtomOutsideUniverse(Atom),
    #[error("permutation is not a member of the ambient group")]
    OutsideGroup,
    #[error("universe too small: {needed} fresh atoms needed beyond object and support, {available} available")]
    InsufficientUniverse { needed: usize, available: usize },
    #[error("every sock pair meets the support")]
    NoUntouchedPair,
    #[error("object is moved by the support-fixing generator {witness}")]
    NotSupported { witness: Permutation },
    #[error("operation requires the {required:?} group")]
    WrongGroup { required: GroupSpec },
    #[error(transparent)]
    Perm(#[from] PermError),
}

/// A universe of atoms together with the ambient group acting on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermModel {
    pub universe: Universe,
    pub group: GroupSpec,
}

impl PermModel {
    pub fn new(universe: Universe, group: GroupSpec) -> PermModel {
        PermModel { universe, group }
    }

    fn check_atoms<T: Permutable>(&self, obj: &T) -> Result<(), NominalError> {
        for atom in obj.atoms() {
            if !self.universe.contains(atom) {
                return Err(NominalError::AtomOutsideUniverse(atom));
            }
        }
        Ok(())
    }

    /// Apply `pi` to `obj`, checking that the object lives in the universe
    /// and the permutation in the ambient group.
    pub fn apply_perm<T: Permutable>(&self, pi: &Permutation, obj: &T) -> Result<T, NominalError> {
        self.check_atoms(obj)?;
        for atom in pi.moved_atoms() {
            if !self.universe.contains(atom) {
                return Err(NominalError::AtomOutsideUniverse(atom));
            }
        }
        if !self.group.contains(pi) {
            return Err(NominalError::OutsideGroup);
        }
        Ok(pi.apply(obj))
    }

    /// Generators of the subgroup fixing `support` pointwise, inside this
    /// universe: transpositions of free plain atoms for the full symmetric
    /// group, swaps of untouched pairs for the socks group.
    pub fn stabilizer_generators(&self, support: &Support) -> Vec<Permutation> {
        match self.group {
            GroupSpec::FullSymmetric => {
                let free: Vec<Atom> = self
                    .universe
                    .plain_iter()
                    .filter(|a| !support.contains(*a))
                    .collect();
                let mut gens = Vec::new();
                for i in 0..free.len() {
                    for j in i + 1..free.len() {
                        gens.push(Permutation::transposition(free[i], free[j]));
                    }
                }
                gens
            }
            GroupSpec::SocksGroup => {
                let touched = support.touched_pairs();
                (0..self.universe.sock_pairs)
                    .filter(|pair| !touched.contains(pair))
                    .map(Permutation::pair_swap)
                    .collect()
            }
        }
    }

    /// Atoms the ambient group can move at all.
    fn movable_atoms(&self) -> Vec<Atom> {
        match self.group {
            GroupSpec::FullSymmetric => self.universe.plain_iter().collect(),
            GroupSpec::SocksGroup => self
                .universe
                .atoms()
                .into_iter()
                .filter(|a| matches!(a, Atom::Sock { .. }))
                .collect(),
        }
    }

    /// Soundness for finitary objects needs room to move: at least two fresh
    /// movable atoms beyond the object and its claimed support, and for the
    /// socks group a whole untouched pair.
    fn check_freshness<T: Permutable>(
        &self,
        obj: &T,
        support: &Support,
    ) -> Result<(), NominalError> {
        let mut used = obj.atoms();
        used.extend(support.0.iter().copied());
        match self.group {
            GroupSpec::FullSymmetric => {
                let available = self
                    .movable_atoms()
                    .into_iter()
                    .filter(|a| !used.contains(a))
                    .count();
                if available < 2 {
                    return Err(NominalError::InsufficientUniverse { needed: 2, available });
                }
            }
            GroupSpec::SocksGroup => {
                let touched: BTreeSet<u32> = used
                    .iter()
                    .filter_map(|a| match a {
                        Atom::Sock { pair, .. } => Some(*pair),
                        Atom::Plain(_) => None,
                    })
                    .collect();
                let fresh_pairs =
                    (0..self.universe.sock_pairs).filter(|p| !touched.contains(p)).count();
                if fresh_pairs < 1 {
                    return Err(NominalError::InsufficientUniverse {
                        needed: 2,
                        available: 2 * fresh_pairs,
                    });
                }
            }
        }
        Ok(())
    }

    /// First stabilizer generator that moves `obj`, or `None` if every one
    /// fixes it (i.e. `obj` is supported by `support`).
    pub fn support_witness<T: Permutable + Eq>(
        &self,
        obj: &T,
        support: &Support,
    ) -> Result<Option<Permutation>, NominalError> {
        self.check_atoms(obj)?;
        self.check_atoms(support)?;
        self.check_freshness(obj, support)?;
        for pi in self.stabilizer_generators(support) {
            if &pi.apply(obj) != obj {
                return Ok(Some(pi));
            }
        }
        Ok(None)
    }

    /// Is `obj` fixed by every group element fixing `support` pointwise?
    pub fn is_supported_by<T: Permutable + Eq>(
        &self,
        obj: &T,
        support: &Support,
    ) -> Result<bool, NominalError> {
        Ok(self.support_witness(obj, support)?.is_none())
    }

    /// Find the least pair untouched by `support` and return its swap.
    ///
    /// The swap fixes `support` pointwise, yet moves either selector on the
    /// pair, so no selector on that pair can be supported by `support`.
    pub fn refute_choice(&self, support: &Support) -> Result<ChoiceRefutation, NominalError> {
        self.check_atoms(support)?;
        let touched = support.touched_pairs();
        let pair = (0..self.universe.sock_pairs)
            .find(|p| !touched.contains(p))
            .ok_or(NominalError::NoUntouchedPair)?;
        Ok(ChoiceRefutation { pair, swap: Permutation::pair_swap(pair) })
    }

    /// Verify a supported atom function is constant off its support and
    /// return that constant together with the (finite) range.
    ///
    /// Requires the full symmetric group.  A function taking two distinct
    /// values outside the support is moved by the transposition of those two
    /// atoms, so it fails the support check and that transposition is the
    /// returned witness.
    pub fn classify_function(
        &self,
        f: &AtomFunction,
        support: &Support,
    ) -> Result<FunctionRange, NominalError> {
        if self.group != GroupSpec::FullSymmetric {
            return Err(NominalError::WrongGroup { required: GroupSpec::FullSymmetric });
        }
        match self.support_witness(f, support)? {
            Some(witness) => Err(NominalError::NotSupported { witness }),
            None => {
                let mut off_values: BTreeSet<u64> = self
                    .universe
                    .plain_iter()
                    .filter(|a| !support.contains(*a))
                    .map(|a| f.value(a))
                    .collect();
                off_values.insert(f.default);
                assert_eq!(off_values.len(), 1, "supported function varies off its support");
                let off = *off_values.iter().next().unwrap();
                let mut range: BTreeSet<u64> =
                    support.0.iter().map(|a| f.value(*a)).collect();
                range.insert(off);
                Ok(FunctionRange { off_support_value: off, range })
            }
        }
    }
}
