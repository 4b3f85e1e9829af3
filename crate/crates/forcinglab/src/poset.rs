//! Finite partial functions as forcing conditions.
//!
//! A [`Condition`] is a finite map from index points to values, tagged with
//! the [`PosetFamily`] it belongs to.  The order convention throughout the
//! crate: a *stronger* condition is a *larger* map, and stronger means
//! smaller in the order, so `q ≤ p` exactly when the entries of `q` contain
//! the entries of `p` (see [`Condition::extends`]).
//!
//! Families carry the finite bounds needed to enumerate points and values,
//! which keeps every search in the crate exhaustive and deterministic:
//! points are enumerated in their canonical order, values likewise, and
//! one-step extensions come out point-major.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atom::{Atom, Permutable, Permutation, Universe};

/// A point in the index domain of a condition.
///
/// Serializes untagged: a bare natural, an atom string, or an
/// `[atom, column]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IndexPoint {
    Nat(u32),
    AtomPoint(Atom),
    AtomColumn(Atom, u32),
}

impl Permutable for IndexPoint {
    fn permute(&self, pi: &Permutation) -> IndexPoint {
        match self {
            IndexPoint::Nat(n) => IndexPoint::Nat(*n),
            IndexPoint::AtomPoint(a) => IndexPoint::AtomPoint(pi.image(*a)),
            IndexPoint::AtomColumn(a, m) => IndexPoint::AtomColumn(pi.image(*a), *m),
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            IndexPoint::Nat(_) => {}
            IndexPoint::AtomPoint(a) | IndexPoint::AtomColumn(a, _) => {
                out.insert(*a);
            }
        }
    }
}

/// A value a condition can take at a point.
///
/// Serializes untagged: a bare bit, an atom string, or an
/// `[atom, natural]` pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Value {
    Bit(u8),
    AtomValue(Atom),
    Pair(Atom, u32),
}

impl Permutable for Value {
    fn permute(&self, pi: &Permutation) -> Value {
        match self {
            Value::Bit(b) => Value::Bit(*b),
            Value::AtomValue(a) => Value::AtomValue(pi.image(*a)),
            Value::Pair(a, c) => Value::Pair(pi.image(*a), *c),
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Value::Bit(_) => {}
            Value::AtomValue(a) | Value::Pair(a, _) => {
                out.insert(*a);
            }
        }
    }
}

/// Index domain of a bit-valued family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Fin2Domain {
    /// Points `0..bound`.
    Naturals { bound: u32 },
    /// Points are the plain atoms `P0..P(count-1)`.
    PlainAtoms { count: u32 },
    /// Points are (sock atom, column) pairs over `pairs` pairs and
    /// `columns` columns.
    SockColumns { pairs: u32, columns: u32 },
}

/// The families of finite partial functions the laboratory works with.
///
/// Each variant fixes both the shape of admissible entries and the finite
/// bounds used when enumerating points, values, or whole conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PosetFamily {
    /// Bit-valued conditions over the given index domain.
    Fin2(Fin2Domain),
    /// Injective partial maps from `0..nat_bound` into `plain_atoms` atoms.
    FinInj { nat_bound: u32, plain_atoms: u32 },
    /// Injective finite sequences of atoms: the domain must be an initial
    /// segment of the naturals.
    FinSeqInj { plain_atoms: u32 },
    /// Partial maps from `0..nat_bound` into pairs `(atom, c)` with
    /// `c < value_bound`, injective in the first coordinate.
    FinPi1Inj { nat_bound: u32, plain_atoms: u32, value_bound: u32 },
}

impl PosetFamily {
    /// Bit-valued conditions over `0..bound`.
    pub fn fin2_naturals(bound: u32) -> PosetFamily {
        PosetFamily::Fin2(Fin2Domain::Naturals { bound })
    }

    /// Bit-valued conditions over `count` plain atoms.
    pub fn fin2_plain(count: u32) -> PosetFamily {
        PosetFamily::Fin2(Fin2Domain::PlainAtoms { count })
    }

    /// Bit-valued conditions over sock/column points.
    pub fn fin2_socks(pairs: u32, columns: u32) -> PosetFamily {
        PosetFamily::Fin2(Fin2Domain::SockColumns { pairs, columns })
    }

    /// All admissible index points, in canonical order.
    pub fn domain_points(&self) -> Vec<IndexPoint> {
        match self {
            PosetFamily::Fin2(Fin2Domain::Naturals { bound }) => {
                (0..*bound).map(IndexPoint::Nat).collect()
            }
            PosetFamily::Fin2(Fin2Domain::PlainAtoms { count }) => {
                (0..*count).map(|i| IndexPoint::AtomPoint(Atom::Plain(i))).collect()
            }
            PosetFamily::Fin2(Fin2Domain::SockColumns { pairs, columns }) => {
                let mut out = Vec::new();
                for pair in 0..*pairs {
                    for side in [Atom::sock_left(pair), Atom::sock_right(pair)] {
                        for m in 0..*columns {
                            out.push(IndexPoint::AtomColumn(side, m));
                        }
                    }
                }
                out.sort();
                out
            }
            PosetFamily::FinInj { nat_bound, .. }
            | PosetFamily::FinPi1Inj { nat_bound, .. } => {
                (0..*nat_bound).map(IndexPoint::Nat).collect()
            }
            PosetFamily::FinSeqInj { plain_atoms } => {
                (0..*plain_atoms).map(IndexPoint::Nat).collect()
            }
        }
    }

    /// All admissible values, in canonical order.
    pub fn codomain_values(&self) -> Vec<Value> {
        match self {
            PosetFamily::Fin2(_) => vec![Value::Bit(0), Value::Bit(1)],
            PosetFamily::FinInj { plain_atoms, .. }
            | PosetFamily::FinSeqInj { plain_atoms } => {
                (0..*plain_atoms).map(|i| Value::AtomValue(Atom::Plain(i))).collect()
            }
            PosetFamily::FinPi1Inj { plain_atoms, value_bound, .. } => {
                let mut out = Vec::new();
                for i in 0..*plain_atoms {
                    for c in 0..*value_bound {
                        out.push(Value::Pair(Atom::Plain(i), c));
                    }
                }
                out
            }
        }
    }

    /// The atom universe implied by the family bounds.
    pub fn universe(&self) -> Universe {
        match self {
            PosetFamily::Fin2(Fin2Domain::Naturals { .. }) => Universe::plain(0),
            PosetFamily::Fin2(Fin2Domain::PlainAtoms { count }) => Universe::plain(*count),
            PosetFamily::Fin2(Fin2Domain::SockColumns { pairs, .. }) => Universe::socks(*pairs),
            PosetFamily::FinInj { plain_atoms, .. }
            | PosetFamily::FinSeqInj { plain_atoms }
            | PosetFamily::FinPi1Inj { plain_atoms, .. } => Universe::plain(*plain_atoms),
        }
    }

    fn point_admissible(&self, point: &IndexPoint) -> bool {
        match (self, point) {
            (PosetFamily::Fin2(Fin2Domain::Naturals { bound }), IndexPoint::Nat(n)) => n < bound,
            (PosetFamily::Fin2(Fin2Domain::PlainAtoms { count }), IndexPoint::AtomPoint(a)) => {
                matches!(a, Atom::Plain(i) if i < count)
            }
            (
                PosetFamily::Fin2(Fin2Domain::SockColumns { pairs, columns }),
                IndexPoint::AtomColumn(a, m),
            ) => matches!(a, Atom::Sock { pair, .. } if pair < pairs) && m < columns,
            (PosetFamily::FinInj { nat_bound, .. }, IndexPoint::Nat(n)) => n < nat_bound,
            (PosetFamily::FinPi1Inj { nat_bound, .. }, IndexPoint::Nat(n)) => n < nat_bound,
            (PosetFamily::FinSeqInj { plain_atoms }, IndexPoint::Nat(n)) => n < plain_atoms,
            _ => false,
        }
    }

    fn value_admissible(&self, value: &Value) -> bool {
        match (self, value) {
            (PosetFamily::Fin2(_), Value::Bit(b)) => *b <= 1,
            (PosetFamily::FinInj { plain_atoms, .. }, Value::AtomValue(a))
            | (PosetFamily::FinSeqInj { plain_atoms }, Value::AtomValue(a)) => {
                matches!(a, Atom::Plain(i) if i < plain_atoms)
            }
            (PosetFamily::FinPi1Inj { plain_atoms, value_bound, .. }, Value::Pair(a, c)) => {
                matches!(a, Atom::Plain(i) if i < plain_atoms) && c < value_bound
            }
            _ => false,
        }
    }

    /// All valid conditions with exactly `size` entries, canonically ordered.
    pub fn conditions_of_size(&self, size: usize) -> Vec<Condition> {
        let mut out = Vec::new();
        let points = self.domain_points();
        let mut current = Condition::empty(*self);
        self.fill_conditions(&points, 0, size, &mut current, &mut out);
        out
    }

    /// All valid conditions with at most `max_size` entries.
    pub fn conditions_up_to(&self, max_size: usize) -> Vec<Condition> {
        (0..=max_size).flat_map(|k| self.conditions_of_size(k)).collect()
    }

    fn fill_conditions(
        &self,
        points: &[IndexPoint],
        from: usize,
        remaining: usize,
        current: &mut Condition,
        out: &mut Vec<Condition>,
    ) {
        if remaining == 0 {
            out.push(current.clone());
            return;
        }
        for i in from..points.len() {
            for value in self.codomain_values() {
                if let Some(next) = current.extended_with(points[i], value) {
                    let mut next = next;
                    self.fill_conditions(points, i + 1, remaining - 1, &mut next, out);
                }
            }
        }
    }
}

/// Why a condition fails its family constraints.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("point {0:?} is outside the family domain")]
    PointOutsideDomain(IndexPoint),
    #[error("value {1:?} at {0:?} is outside the family codomain")]
    ValueOutsideCodomain(IndexPoint, Value),
    #[error("points {0:?} and {1:?} share a value")]
    InjectivityClash(IndexPoint, IndexPoint),
    #[error("points {0:?} and {1:?} share a first coordinate")]
    FirstCoordinateClash(IndexPoint, IndexPoint),
    #[error("domain is not an initial segment: {missing} is missing")]
    NotInitialSegment { missing: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("conditions belong to different families")]
    FamilyMismatch,
}

/// A forcing condition: a finite partial map tagged with its family.
///
/// JSON form: `{"family": ..., "entries": [[point, value], ...]}` with the
/// entries sorted by point.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ConditionRepr", into = "ConditionRepr")]
pub struct Condition {
    family: PosetFamily,
    entries: BTreeMap<IndexPoint, Value>,
}

#[derive(Serialize, Deserialize)]
struct ConditionRepr {
    family: PosetFamily,
    entries: Vec<(IndexPoint, Value)>,
}

impl From<Condition> for ConditionRepr {
    fn from(c: Condition) -> ConditionRepr {
        ConditionRepr { family: c.family, entries: c.entries.into_iter().collect() }
    }
}

impl TryFrom<ConditionRepr> for Condition {
    type Error = String;

    fn try_from(repr: ConditionRepr) -> Result<Condition, String> {
        let mut entries = BTreeMap::new();
        for (point, value) in repr.entries {
            if entries.insert(point, value).is_some() {
                return Err(format!("duplicate point {point:?} in condition entries"));
            }
        }
        Ok(Condition { family: repr.family, entries })
    }
}

impl fmt::Display for IndexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexPoint::Nat(n) => write!(f, "{n}"),
            IndexPoint::AtomPoint(a) => write!(f, "{a}"),
            IndexPoint::AtomColumn(a, c) => write!(f, "{a}@{c}"),
        }
    }
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Bit(b) => write!(f, "{b}"),
            Value::AtomValue(a) => write!(f, "{a}"),
            Value::Pair(a, c) => write!(f, "({a},{c})"),
        }
    }
}

/// Conditions print as `{point=value, ...}`; the empty condition as `{}`.
impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (point, value)) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{point}={value}")?;
        }
        write!(f, "}}")
    }
}

impl Condition {
    /// The empty condition of a family (the weakest one).
    pub fn empty(family: PosetFamily) -> Condition {
        Condition { family, entries: BTreeMap::new() }
    }

    /// Build from entries without validating family constraints; pair with
    /// [`Condition::validate`] when the entries are untrusted.
    pub fn from_entries(
        family: PosetFamily,
        entries: impl IntoIterator<Item = (IndexPoint, Value)>,
    ) -> Condition {
        Condition { family, entries: entries.into_iter().collect() }
    }

    pub fn family(&self) -> PosetFamily {
        self.family
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn value_at(&self, point: &IndexPoint) -> Option<Value> {
        self.entries.get(point).copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (&IndexPoint, &Value)> {
        self.entries.iter()
    }

    pub fn domain(&self) -> impl Iterator<Item = &IndexPoint> {
        self.entries.keys()
    }

    /// Check every family constraint, reporting the first failure.
    pub fn validate(&self) -> Result<(), Violation> {
        for (point, value) in &self.entries {
            if !self.family.point_admissible(point) {
                return Err(Violation::PointOutsideDomain(*point));
            }
            if !self.family.value_admissible(value) {
                return Err(Violation::ValueOutsideCodomain(*point, *value));
            }
        }
        match self.family {
            PosetFamily::Fin2(_) => {}
            PosetFamily::FinInj { .. } => self.check_injective()?,
            PosetFamily::FinSeqInj { .. } => {
                self.check_injective()?;
                self.check_initial_segment()?;
            }
            PosetFamily::FinPi1Inj { .. } => self.check_pi1_injective()?,
        }
        Ok(())
    }

    fn check_injective(&self) -> Result<(), Violation> {
        let mut seen: BTreeMap<Value, IndexPoint> = BTreeMap::new();
        for (point, value) in &self.entries {
            if let Some(prev) = seen.insert(*value, *point) {
                return Err(Violation::InjectivityClash(prev, *point));
            }
        }
        Ok(())
    }

    fn check_pi1_injective(&self) -> Result<(), Violation> {
        let mut seen: BTreeMap<Atom, IndexPoint> = BTreeMap::new();
        for (point, value) in &self.entries {
            if let Value::Pair(atom, _) = value {
                if let Some(prev) = seen.insert(*atom, *point) {
                    return Err(Violation::FirstCoordinateClash(prev, *point));
                }
            }
        }
        Ok(())
    }

    fn check_initial_segment(&self) -> Result<(), Violation> {
        for (i, point) in self.entries.keys().enumerate() {
            match point {
                IndexPoint::Nat(n) if *n as usize == i => {}
                _ => return Err(Violation::NotInitialSegment { missing: i as u32 }),
            }
        }
        Ok(())
    }

    /// Does `self` extend `other`, i.e. is `self` at least as strong?
    ///
    /// This is the order relation: `q.extends(&p)` holds exactly when
    /// `q ≤ p`, that is, when every entry of `p` appears in `q`.
    pub fn extends(&self, other: &Condition) -> Result<bool, PosetError> {
        if self.family != other.family {
            return Err(PosetError::FamilyMismatch);
        }
        Ok(other
            .entries
            .iter()
            .all(|(point, value)| self.entries.get(point) == Some(value)))
    }

    /// Add one entry if the result stays valid; `None` otherwise (also when
    /// the point is already occupied).
    pub fn extended_with(&self, point: IndexPoint, value: Value) -> Option<Condition> {
        if self.entries.contains_key(&point) {
            return None;
        }
        let mut entries = self.entries.clone();
        entries.insert(point, value);
        let candidate = Condition { family: self.family, entries };
        candidate.validate().ok().map(|()| candidate)
    }

    /// Every valid extension of `self` by exactly one entry, point-major and
    /// value-minor, within the family bounds.  Total conditions yield none.
    pub fn one_point_extensions(&self) -> Vec<Condition> {
        let mut out = Vec::new();
        for point in self.family.domain_points() {
            if self.entries.contains_key(&point) {
                continue;
            }
            for value in self.family.codomain_values() {
                if let Some(ext) = self.extended_with(point, value) {
                    out.push(ext);
                }
            }
        }
        out
    }
}

impl Permutable for Condition {
    fn permute(&self, pi: &Permutation) -> Condition {
        Condition {
            family: self.family,
            entries: self
                .entries
                .iter()
                .map(|(point, value)| (point.permute(pi), value.permute(pi)))
                .collect(),
        }
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        for (point, value) in &self.entries {
            point.collect_atoms(out);
            value.collect_atoms(out);
        }
    }
}

/// Result of merging two conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Compatibility {
    /// The union is a valid common extension (the weakest one: anything
    /// below both is below it).
    Compatible(Condition),
    /// The two conditions assign different values to a shared point.
    ValueClash { point: IndexPoint, left: Value, right: Value },
    /// The union breaks a family constraint even though no point clashes.
    ConstraintClash(Violation),
}

impl Compatibility {
    pub fn is_compatible(&self) -> bool {
        matches!(self, Compatibility::Compatible(_))
    }
}

/// Merge two conditions of one family into their weakest common extension,
/// or report why none exists.
pub fn common_extension(p: &Condition, q: &Condition) -> Result<Compatibility, PosetError> {
    if p.family != q.family {
        return Err(PosetError::FamilyMismatch);
    }
    let mut entries = p.entries.clone();
    for (point, value) in &q.entries {
        match entries.insert(*point, *value) {
            Some(prev) if prev != *value => {
                return Ok(Compatibility::ValueClash { point: *point, left: prev, right: *value });
            }
            _ => {}
        }
    }
    let merged = Condition { family: p.family, entries };
    match merged.validate() {
        Ok(()) => Ok(Compatibility::Compatible(merged)),
        Err(v) => Ok(Compatibility::ConstraintClash(v)),
    }
}

/// Are two conditions compatible (do they share a lower bound)?
pub fn compatible(p: &Condition, q: &Condition) -> Result<bool, PosetError> {
    Ok(common_extension(p, q)?.is_compatible())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bit_condition(family: PosetFamily, entries: &[(u32, u8)]) -> Condition {
        Condition::from_entries(
            family,
            entries.iter().map(|(n, b)| (IndexPoint::Nat(*n), Value::Bit(*b))),
        )
    }

    #[test]
    fn unit_extends_is_entry_containment() {
        let family = PosetFamily::fin2_naturals(4);
        let p = bit_condition(family, &[(0, 1)]);
        let q = bit_condition(family, &[(0, 1), (2, 0)]);
        assert!(q.extends(&p).unwrap());
        assert!(!p.extends(&q).unwrap());
        assert!(p.extends(&p).unwrap());
        let other = bit_condition(PosetFamily::fin2_naturals(5), &[(0, 1)]);
        assert_eq!(q.extends(&other), Err(PosetError::FamilyMismatch));
    }

    #[test]
    fn unit_common_extension_merges_or_clashes() {
        let family = PosetFamily::fin2_naturals(4);
        let p = bit_condition(family, &[(0, 1)]);
        let q = bit_condition(family, &[(1, 0)]);
        match common_extension(&p, &q).unwrap() {
            Compatibility::Compatible(m) => {
                assert_eq!(m.len(), 2);
                assert!(m.extends(&p).unwrap() && m.extends(&q).unwrap());
            }
            other => panic!("expected compatible, got {other:?}"),
        }
        let clash = bit_condition(family, &[(0, 0)]);
        match common_extension(&p, &clash).unwrap() {
            Compatibility::ValueClash { point, left, right } => {
                assert_eq!(point, IndexPoint::Nat(0));
                assert_eq!((left, right), (Value::Bit(1), Value::Bit(0)));
            }
            other => panic!("expected clash, got {other:?}"),
        }
    }

    #[test]
    fn unit_injective_family_rejects_shared_values() {
        let family = PosetFamily::FinInj { nat_bound: 4, plain_atoms: 3 };
        let p = Condition::from_entries(
            family,
            [(IndexPoint::Nat(0), Value::AtomValue(Atom::Plain(1)))],
        );
        let q = Condition::from_entries(
            family,
            [(IndexPoint::Nat(1), Value::AtomValue(Atom::Plain(1)))],
        );
        match common_extension(&p, &q).unwrap() {
            Compatibility::ConstraintClash(Violation::InjectivityClash(a, b)) => {
                assert_eq!((a, b), (IndexPoint::Nat(0), IndexPoint::Nat(1)));
            }
            other => panic!("expected injectivity clash, got {other:?}"),
        }
    }

    #[test]
    fn unit_sequence_family_needs_initial_segment() {
        let family = PosetFamily::FinSeqInj { plain_atoms: 3 };
        let gap = Condition::from_entries(
            family,
            [(IndexPoint::Nat(1), Value::AtomValue(Atom::Plain(0)))],
        );
        assert_eq!(gap.validate(), Err(Violation::NotInitialSegment { missing: 0 }));
        let seq = Condition::from_entries(
            family,
            [
                (IndexPoint::Nat(0), Value::AtomValue(Atom::Plain(2))),
                (IndexPoint::Nat(1), Value::AtomValue(Atom::Plain(0))),
            ],
        );
        assert_eq!(seq.validate(), Ok(()));
    }

    #[test]
    fn unit_pi1_family_rejects_repeated_first_coordinate() {
        let family = PosetFamily::FinPi1Inj { nat_bound: 4, plain_atoms: 2, value_bound: 3 };
        let c = Condition::from_entries(
            family,
            [
                (IndexPoint::Nat(0), Value::Pair(Atom::Plain(0), 1)),
                (IndexPoint::Nat(1), Value::Pair(Atom::Plain(0), 2)),
            ],
        );
        assert!(matches!(c.validate(), Err(Violation::FirstCoordinateClash(_, _))));
        let ok = Condition::from_entries(
            family,
            [
                (IndexPoint::Nat(0), Value::Pair(Atom::Plain(0), 1)),
                (IndexPoint::Nat(1), Value::Pair(Atom::Plain(1), 1)),
            ],
        );
        assert_eq!(ok.validate(), Ok(()));
    }

    #[test]
    fn unit_one_point_extensions_empty_bit_condition() {
        let family = PosetFamily::fin2_naturals(2);
        let exts = Condition::empty(family).one_point_extensions();
        // Point-major: both bits at 0, then both bits at 1.
        assert_eq!(
            exts,
            vec![
                bit_condition(family, &[(0, 0)]),
                bit_condition(family, &[(0, 1)]),
                bit_condition(family, &[(1, 0)]),
                bit_condition(family, &[(1, 1)]),
            ]
        );
    }

    #[test]
    fn unit_one_point_extensions_injective() {
        let family = PosetFamily::FinInj { nat_bound: 1, plain_atoms: 2 };
        let exts = Condition::empty(family).one_point_extensions();
        assert_eq!(exts.len(), 2);
        // A total condition has no extensions.
        assert!(exts[0].one_point_extensions().is_empty());
    }

    #[test]
    fn unit_sequence_extensions_only_append() {
        let family = PosetFamily::FinSeqInj { plain_atoms: 3 };
        let seq = Condition::from_entries(
            family,
            [(IndexPoint::Nat(0), Value::AtomValue(Atom::Plain(1)))],
        );
        let exts = seq.one_point_extensions();
        // Only point 1 can be added, with either unused atom.
        assert_eq!(exts.len(), 2);
        for e in &exts {
            assert!(e.value_at(&IndexPoint::Nat(1)).is_some());
        }
    }

    #[test]
    fn unit_enumeration_counts() {
        let family = PosetFamily::fin2_naturals(3);
        assert_eq!(family.conditions_of_size(0).len(), 1);
        assert_eq!(family.conditions_of_size(2).len(), 12); // C(3,2) * 4
        assert_eq!(family.conditions_up_to(3).len(), 27); // 3^3 total maps
    }

    #[test]
    fn unit_condition_json_round_trip() {
        let family = PosetFamily::fin2_socks(2, 2);
        let c = Condition::from_entries(
            family,
            [
                (IndexPoint::AtomColumn(Atom::sock_left(1), 0), Value::Bit(0)),
                (IndexPoint::AtomColumn(Atom::sock_right(1), 0), Value::Bit(1)),
            ],
        );
        let json = serde_json::to_string(&c).unwrap();
        assert!(json.contains("\"S1L\""));
        let back: Condition = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
        // Duplicate points are rejected at parse time.
        let dup = r#"{"family":{"fin2":{"naturals":{"bound":2}}},"entries":[[0,0],[0,1]]}"#;
        assert!(serde_json::from_str::<Condition>(dup).is_err());
    }

    #[test]
    fn unit_permuting_a_condition_renames_atoms() {
        let family = PosetFamily::fin2_plain(3);
        let c = Condition::from_entries(
            family,
            [(IndexPoint::AtomPoint(Atom::Plain(0)), Value::Bit(1))],
        );
        let pi = Permutation::transposition(Atom::Plain(0), Atom::Plain(2));
        let moved = c.permute(&pi);
        assert_eq!(moved.value_at(&IndexPoint::AtomPoint(Atom::Plain(2))), Some(Value::Bit(1)));
        assert_eq!(moved.validate(), Ok(()));
    }
}
