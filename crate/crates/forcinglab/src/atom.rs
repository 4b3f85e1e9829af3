//! Atoms, finite universes of atoms, and finitary permutations.
//!
//! Two kinds of atom exist: plain numbered atoms, and "sock" atoms that come
//! in indistinguishable left/right pairs.  Every structure in this crate that
//! mentions atoms implements [`Permutable`], so a permutation can be pushed
//! through it by structural recursion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Which shoe of a sock pair an atom is.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    /// The other side of the same pair.
    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// An urelement: either a numbered plain atom or one sock of a numbered pair.
///
/// The derived order (plain atoms by id, then sock atoms by pair and side,
/// left before right) is the canonical iteration order used everywhere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Atom {
    Plain(u32),
    Sock { pair: u32, side: Side },
}

impl Atom {
    /// Left sock of pair `n`.
    pub fn sock_left(pair: u32) -> Atom {
        Atom::Sock { pair, side: Side::Left }
    }

    /// Right sock of pair `n`.
    pub fn sock_right(pair: u32) -> Atom {
        Atom::Sock { pair, side: Side::Right }
    }

    /// The partner of a sock atom; plain atoms have none.
    pub fn partner(self) -> Option<Atom> {
        match self {
            Atom::Plain(_) => None,
            Atom::Sock { pair, side } => Some(Atom::Sock { pair, side: side.flipped() }),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Plain(id) => write!(f, "P{id}"),
            Atom::Sock { pair, side: Side::Left } => write!(f, "S{pair}L"),
            Atom::Sock { pair, side: Side::Right } => write!(f, "S{pair}R"),
        }
    }
}

impl FromStr for Atom {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || format!("malformed atom {s:?}");
        if let Some(rest) = s.strip_prefix('P') {
            let id = rest.parse().map_err(|_| err())?;
            return Ok(Atom::Plain(id));
        }
        if let Some(rest) = s.strip_prefix('S') {
            if let Some(pair) = rest.strip_suffix('L') {
                return Ok(Atom::sock_left(pair.parse().map_err(|_| err())?));
            }
            if let Some(pair) = rest.strip_suffix('R') {
                return Ok(Atom::sock_right(pair.parse().map_err(|_| err())?));
            }
        }
        Err(err())
    }
}

impl Serialize for Atom {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Atom {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// A finite stock of atoms: `plain_atoms` plain ones and `sock_pairs` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Universe {
    #[serde(default)]
    pub plain_atoms: u32,
    #[serde(default)]
    pub sock_pairs: u32,
}

impl Universe {
    pub fn plain(plain_atoms: u32) -> Universe {
        Universe { plain_atoms, sock_pairs: 0 }
    }

    pub fn socks(sock_pairs: u32) -> Universe {
        Universe { plain_atoms: 0, sock_pairs }
    }

    pub fn contains(&self, atom: Atom) -> bool {
        match atom {
            Atom::Plain(id) => id < self.plain_atoms,
            Atom::Sock { pair, .. } => pair < self.sock_pairs,
        }
    }

    /// All atoms in canonical order.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut out: Vec<Atom> = (0..self.plain_atoms).map(Atom::Plain).collect();
        for pair in 0..self.sock_pairs {
            out.push(Atom::sock_left(pair));
            out.push(Atom::sock_right(pair));
        }
        out
    }

    pub fn plain_iter(&self) -> impl Iterator<Item = Atom> {
        (0..self.plain_atoms).map(Atom::Plain)
    }
}

/// Errors from permutation construction and application.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PermError {
    #[error("moved-atom map is not a bijection")]
    NotBijective,
    #[error("atom {0} lies outside the declared universe")]
    AtomOutsideUniverse(Atom),
}

/// A finitary permutation of atoms, stored as its set of moved atoms.
///
/// Atoms absent from the map are fixed, so a permutation acts on every atom
/// regardless of universe; universe checks happen at the model layer.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Permutation {
    moved: BTreeMap<Atom, Atom>,
}

impl Permutation {
    pub fn identity() -> Permutation {
        Permutation { moved: BTreeMap::new() }
    }

    /// Build from an explicit moved-atom map; fixed points are dropped.
    pub fn from_moves(map: BTreeMap<Atom, Atom>) -> Result<Permutation, PermError> {
        let keys: BTreeSet<Atom> = map.keys().copied().collect();
        let values: BTreeSet<Atom> = map.values().copied().collect();
        if keys != values {
            return Err(PermError::NotBijective);
        }
        let moved = map.into_iter().filter(|(a, b)| a != b).collect();
        Ok(Permutation { moved })
    }

    /// The transposition exchanging two atoms.
    pub fn transposition(a: Atom, b: Atom) -> Permutation {
        if a == b {
            return Permutation::identity();
        }
        let mut moved = BTreeMap::new();
        moved.insert(a, b);
        moved.insert(b, a);
        Permutation { moved }
    }

    /// The swap of pair `n`, exchanging its left and right socks.
    pub fn pair_swap(pair: u32) -> Permutation {
        Permutation::transposition(Atom::sock_left(pair), Atom::sock_right(pair))
    }

    pub fn is_identity(&self) -> bool {
        self.moved.is_empty()
    }

    /// Image of a single atom.
    pub fn image(&self, atom: Atom) -> Atom {
        *self.moved.get(&atom).unwrap_or(&atom)
    }

    /// Atoms actually moved, in canonical order.
    pub fn moved_atoms(&self) -> impl Iterator<Item = Atom> + '_ {
        self.moved.keys().copied()
    }

    /// Composition `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        let mut moved = BTreeMap::new();
        let domain: BTreeSet<Atom> =
            self.moved.keys().chain(other.moved.keys()).copied().collect();
        for a in domain {
            let b = self.image(other.image(a));
            if b != a {
                moved.insert(a, b);
            }
        }
        Permutation { moved }
    }

    pub fn inverse(&self) -> Permutation {
        let moved = self.moved.iter().map(|(a, b)| (*b, *a)).collect();
        Permutation { moved }
    }

    /// Push the permutation through any atom-bearing structure.
    pub fn apply<T: Permutable>(&self, obj: &T) -> T {
        obj.permute(self)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, e.g. `(P0 P1)(S2L S2R)`; identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.moved.is_empty() {
            return write!(f, "()");
        }
        let mut seen = BTreeSet::new();
        for &start in self.moved.keys() {
            if seen.contains(&start) {
                continue;
            }
            write!(f, "(")?;
            let mut a = start;
            loop {
                seen.insert(a);
                write!(f, "{a}")?;
                a = self.image(a);
                if a == start {
                    break;
                }
                write!(f, " ")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Structures that atoms can be renamed through.
///
/// `permute` replaces every atom `a` by `pi(a)` and leaves all non-atom data
/// unchanged; `collect_atoms` gathers every atom the structure mentions.
pub trait Permutable: Sized {
    fn permute(&self, pi: &Permutation) -> Self;
    fn collect_atoms(&self, out: &mut BTreeSet<Atom>);

    fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }
}

impl Permutable for Atom {
    fn permute(&self, pi: &Permutation) -> Atom {
        pi.image(*self)
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        out.insert(*self);
    }
}

impl<T: Permutable> Permutable for Vec<T> {
    fn permute(&self, pi: &Permutation) -> Vec<T> {
        self.iter().map(|x| x.permute(pi)).collect()
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        for x in self {
            x.collect_atoms(out);
        }
    }
}

impl<T: Permutable + Ord> Permutable for BTreeSet<T> {
    fn permute(&self, pi: &Permutation) -> BTreeSet<T> {
        self.iter().map(|x| x.permute(pi)).collect()
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        for x in self {
            x.collect_atoms(out);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_atom_order_is_plain_then_socks() {
        let mut atoms = vec![
            Atom::sock_right(0),
            Atom::Plain(3),
            Atom::sock_left(1),
            Atom::Plain(0),
            Atom::sock_left(0),
        ];
        atoms.sort();
        assert_eq!(
            atoms,
            vec![
                Atom::Plain(0),
                Atom::Plain(3),
                Atom::sock_left(0),
                Atom::sock_right(0),
                Atom::sock_left(1),
            ]
        );
    }

    #[test]
    fn unit_atom_strings_round_trip() {
        for atom in [Atom::Plain(17), Atom::sock_left(4), Atom::sock_right(0)] {
            let s = atom.to_string();
            assert_eq!(s.parse::<Atom>().unwrap(), atom);
        }
        assert_eq!(Atom::Plain(7).to_string(), "P7");
        assert_eq!(Atom::sock_left(2).to_string(), "S2L");
        assert_eq!(Atom::sock_right(2).to_string(), "S2R");
        assert!("S2X".parse::<Atom>().is_err());
        assert!("Q1".parse::<Atom>().is_err());
    }

    #[test]
    fn unit_universe_membership() {
        let u = Universe { plain_atoms: 2, sock_pairs: 1 };
        assert!(u.contains(Atom::Plain(1)));
        assert!(!u.contains(Atom::Plain(2)));
        assert!(u.contains(Atom::sock_right(0)));
        assert!(!u.contains(Atom::sock_left(1)));
        assert_eq!(u.atoms().len(), 4);
    }

    #[test]
    fn unit_permutation_rejects_non_bijection() {
        let mut map = BTreeMap::new();
        map.insert(Atom::Plain(0), Atom::Plain(1));
        assert_eq!(Permutation::from_moves(map), Err(PermError::NotBijective));
    }

    #[test]
    fn unit_transposition_is_self_inverse() {
        let t = Permutation::transposition(Atom::Plain(0), Atom::Plain(1));
        assert_eq!(t.compose(&t), Permutation::identity());
        assert_eq!(t.inverse(), t);
        assert_eq!(t.image(Atom::Plain(0)), Atom::Plain(1));
        assert_eq!(t.image(Atom::Plain(2)), Atom::Plain(2));
    }

    #[test]
    fn unit_composition_applies_right_factor_first() {
        // (P0 P1) then (P1 P2): P0 -> P1 -> P2 under the composite.
        let s = Permutation::transposition(Atom::Plain(0), Atom::Plain(1));
        let t = Permutation::transposition(Atom::Plain(1), Atom::Plain(2));
        let c = t.compose(&s);
        assert_eq!(c.image(Atom::Plain(0)), Atom::Plain(2));
        assert_eq!(c.image(Atom::Plain(1)), Atom::Plain(0));
        assert_eq!(c.image(Atom::Plain(2)), Atom::Plain(1));
    }

    #[test]
    fn unit_cycle_notation() {
        let s = Permutation::transposition(Atom::Plain(0), Atom::Plain(1));
        let t = Permutation::pair_swap(2);
        assert_eq!(s.compose(&t).to_string(), "(P0 P1)(S2L S2R)");
        assert_eq!(Permutation::identity().to_string(), "()");
    }
}
