//! Dense sets, greedy generic-fragment construction, and extraction.
//!
//! A generic filter is an infinite object; what a finite machine can build
//! is a descending chain of conditions that meets any *listed* collection of
//! dense sets.  Such a fragment is enough to run every extraction performed
//! here: reading a well-order off the sock universe, a bit string off second
//! coordinates, or a surjection onto a finite target.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::atom::{Atom, Permutable, Permutation};
use crate::poset::{Condition, Fin2Domain, IndexPoint, PosetError, PosetFamily, Value};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GenericError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("dense set {spec} does not apply to family {family:?}")]
    SpecOutsideFamily { spec: DenseSetSpec, family: PosetFamily },
    #[error("universe exhausted while extending into {spec}")]
    NoFreshAtom { spec: DenseSetSpec },
    #[error("fragment never met the dense set {0}")]
    NotGenericEnough(DenseSetSpec),
    #[error("extraction needs a different condition family")]
    WrongFamily,
    #[error("chain fails to descend strictly at step {0}")]
    BrokenChain(usize),
}

/// A finitely describable dense set of conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DenseSetSpec {
    /// Conditions assigning both bits, in some column, to sock pair `n`.
    SockColumn(u32),
    /// Conditions whose domain contains the natural `i`.
    CoordInDomain(u32),
    /// Conditions attaining `beta` as a second coordinate.
    HitValue(u32),
}

impl fmt::Display for DenseSetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DenseSetSpec::SockColumn(n) => write!(f, "sock-column({n})"),
            DenseSetSpec::CoordInDomain(i) => write!(f, "coord-in-domain({i})"),
            DenseSetSpec::HitValue(b) => write!(f, "hit-value({b})"),
        }
    }
}

/// Test membership of `p` in the dense set described by `spec`.
pub fn is_member(spec: DenseSetSpec, p: &Condition) -> Result<bool, GenericError> {
    match spec {
        DenseSetSpec::SockColumn(n) => {
            let (_, columns) = sock_bounds(spec, p.family())?;
            Ok((0..columns).any(|m| pair_bits_at(p, n, m) == ColumnState::BothDistinct))
        }
        DenseSetSpec::CoordInDomain(i) => {
            pi1_bounds(spec, p.family())?;
            Ok(p.value_at(&IndexPoint::Nat(i)).is_some())
        }
        DenseSetSpec::HitValue(beta) => {
            pi1_bounds(spec, p.family())?;
            Ok(p.entries().any(|(_, v)| matches!(v, Value::Pair(_, c) if *c == beta)))
        }
    }
}

/// Canonical dense extension: the deterministic `q ≤ p` inside the dense
/// set, always taking the least admissible choice at every choice point.
pub fn dense_extend(spec: DenseSetSpec, p: &Condition) -> Result<Condition, GenericError> {
    extend_inner(spec, p, &mut None::<&mut ChaCha8Rng>)
}

/// Dense extension with its free choices made by `rng` instead of "least".
///
/// The column scanned for socks stays minimal (that part of the procedure is
/// not a choice), but which sock gets bit 0, which fresh atom is consumed,
/// and which second coordinate is written are all sampled.
pub fn dense_extend_seeded<R: Rng>(
    spec: DenseSetSpec,
    p: &Condition,
    rng: &mut R,
) -> Result<Condition, GenericError> {
    extend_inner(spec, p, &mut Some(rng))
}

fn extend_inner<R: Rng>(
    spec: DenseSetSpec,
    p: &Condition,
    rng: &mut Option<&mut R>,
) -> Result<Condition, GenericError> {
    if is_member(spec, p)? {
        return Ok(p.clone());
    }
    let exhausted = || GenericError::NoFreshAtom { spec };
    match spec {
        DenseSetSpec::SockColumn(n) => {
            let (_, columns) = sock_bounds(spec, p.family())?;
            let m = (0..columns)
                .find(|&m| pair_bits_at(p, n, m) == ColumnState::Empty)
                .ok_or_else(exhausted)?;
            let mut sides = [Atom::sock_left(n), Atom::sock_right(n)];
            if let Some(rng) = rng {
                sides.shuffle(rng);
            }
            let q = p
                .extended_with(IndexPoint::AtomColumn(sides[0], m), Value::Bit(0))
                .and_then(|q| q.extended_with(IndexPoint::AtomColumn(sides[1], m), Value::Bit(1)));
            q.ok_or_else(exhausted)
        }
        DenseSetSpec::CoordInDomain(i) => {
            let (nat_bound, _, value_bound) = pi1_bounds(spec, p.family())?;
            if i >= nat_bound {
                return Err(GenericError::SpecOutsideFamily { spec, family: p.family() });
            }
            let atom = pick_fresh_atom(p, rng).ok_or_else(exhausted)?;
            let c = match rng {
                Some(rng) if value_bound > 0 => rng.gen_range(0..value_bound),
                _ => 0,
            };
            p.extended_with(IndexPoint::Nat(i), Value::Pair(atom, c)).ok_or_else(exhausted)
        }
        DenseSetSpec::HitValue(beta) => {
            let (nat_bound, _, value_bound) = pi1_bounds(spec, p.family())?;
            if beta >= value_bound {
                return Err(GenericError::SpecOutsideFamily { spec, family: p.family() });
            }
            let i = (0..nat_bound)
                .find(|i| p.value_at(&IndexPoint::Nat(*i)).is_none())
                .ok_or_else(exhausted)?;
            let atom = pick_fresh_atom(p, rng).ok_or_else(exhausted)?;
            p.extended_with(IndexPoint::Nat(i), Value::Pair(atom, beta)).ok_or_else(exhausted)
        }
    }
}

#[derive(PartialEq, Eq)]
enum ColumnState {
    Empty,
    BothDistinct,
    Other,
}

fn pair_bits_at(p: &Condition, pair: u32, column: u32) -> ColumnState {
    let left = p.value_at(&IndexPoint::AtomColumn(Atom::sock_left(pair), column));
    let right = p.value_at(&IndexPoint::AtomColumn(Atom::sock_right(pair), column));
    match (left, right) {
        (None, None) => ColumnState::Empty,
        (Some(a), Some(b)) if a != b => ColumnState::BothDistinct,
        _ => ColumnState::Other,
    }
}

fn sock_bounds(spec: DenseSetSpec, family: PosetFamily) -> Result<(u32, u32), GenericError> {
    match (spec, family) {
        (DenseSetSpec::SockColumn(n), PosetFamily::Fin2(Fin2Domain::SockColumns { pairs, columns }))
            if n < pairs =>
        {
            Ok((pairs, columns))
        }
        _ => Err(GenericError::SpecOutsideFamily { spec, family }),
    }
}

fn pi1_bounds(spec: DenseSetSpec, family: PosetFamily) -> Result<(u32, u32, u32), GenericError> {
    match family {
        PosetFamily::FinPi1Inj { nat_bound, plain_atoms, value_bound } => {
            Ok((nat_bound, plain_atoms, value_bound))
        }
        _ => Err(GenericError::SpecOutsideFamily { spec, family }),
    }
}

fn pick_fresh_atom<R: Rng>(p: &Condition, rng: &mut Option<&mut R>) -> Option<Atom> {
    let PosetFamily::FinPi1Inj { plain_atoms, .. } = p.family() else { return None };
    let used = p.atoms();
    let fresh: Vec<Atom> =
        (0..plain_atoms).map(Atom::Plain).filter(|a| !used.contains(a)).collect();
    match rng {
        Some(rng) => fresh.choose(rng).copied(),
        None => fresh.first().copied(),
    }
}

/// A finite descending chain of conditions with a log of dense sets met.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericFragment {
    /// Strictly descending: each condition extends the previous one.
    pub chain: Vec<Condition>,
    /// Each listed dense set, with the chain index of the member meeting it.
    pub met: Vec<(DenseSetSpec, usize)>,
}

impl GenericFragment {
    /// The strongest condition reached.
    pub fn final_condition(&self) -> &Condition {
        self.chain.last().expect("fragment chains are never empty")
    }

    pub fn family(&self) -> PosetFamily {
        self.chain[0].family()
    }

    /// Check the two structural invariants: strict descent and met-log accuracy.
    pub fn validate(&self) -> Result<(), GenericError> {
        for (i, w) in self.chain.windows(2).enumerate() {
            if !(w[1].extends(&w[0])? && w[1] != w[0]) {
                return Err(GenericError::BrokenChain(i + 1));
            }
        }
        for (spec, idx) in &self.met {
            if !is_member(*spec, &self.chain[*idx])? {
                return Err(GenericError::NotGenericEnough(*spec));
            }
        }
        Ok(())
    }
}

impl Permutable for GenericFragment {
    fn permute(&self, pi: &Permutation) -> GenericFragment {
        GenericFragment {
            chain: self.chain.permute(pi),
            met: self.met.clone(),
        }
    }

    fn collect_atoms(&self, out: &mut std::collections::BTreeSet<Atom>) {
        self.chain.collect_atoms(out);
    }
}

/// Meet each listed dense set in order, starting from `start`, by folding
/// the canonical [`dense_extend`].
pub fn build_generic(
    specs: &[DenseSetSpec],
    start: Condition,
) -> Result<GenericFragment, GenericError> {
    build_inner(specs, start, &mut None::<&mut ChaCha8Rng>)
}

/// Seeded variant of [`build_generic`]; the same seed rebuilds the same
/// fragment.
pub fn build_generic_seeded(
    specs: &[DenseSetSpec],
    start: Condition,
    seed: u64,
) -> Result<GenericFragment, GenericError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    build_inner(specs, start, &mut Some(&mut rng))
}

fn build_inner<R: Rng>(
    specs: &[DenseSetSpec],
    start: Condition,
    rng: &mut Option<&mut R>,
) -> Result<GenericFragment, GenericError> {
    let mut chain = vec![start];
    let mut met = Vec::with_capacity(specs.len());
    for &spec in specs {
        let last = chain.last().expect("chain starts non-empty");
        let next = extend_inner(spec, last, rng)?;
        if next != *last {
            chain.push(next);
        }
        met.push((spec, chain.len() - 1));
    }
    Ok(GenericFragment { chain, met })
}

/// The well-order a fragment induces on the first `n_pairs` sock pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SockOrder {
    /// For each pair `n`, the minimal column where it carries both bits.
    pub columns: Vec<u32>,
    /// All `2 * n_pairs` sock atoms in increasing extracted order.
    pub order: Vec<Atom>,
    /// Position of each atom in `order`.
    pub ranks: BTreeMap<Atom, usize>,
}

impl Permutable for SockOrder {
    fn permute(&self, pi: &Permutation) -> SockOrder {
        SockOrder {
            columns: self.columns.clone(),
            order: self.order.permute(pi),
            ranks: self.ranks.iter().map(|(a, r)| (pi.image(*a), *r)).collect(),
        }
    }

    fn collect_atoms(&self, out: &mut std::collections::BTreeSet<Atom>) {
        self.order.collect_atoms(out);
    }
}

/// Read the sock well-order off a fragment: for each pair the minimal column
/// carrying both bits, within-pair order by bit comparison there, pairs in
/// index order.  The resulting rank map injects the `2 * n_pairs` atoms into
/// `0..2*n_pairs` — a choiceless-looking order conjured from the fragment.
pub fn extract_sock_order(
    frag: &GenericFragment,
    n_pairs: u32,
) -> Result<SockOrder, GenericError> {
    let p = frag.final_condition();
    let PosetFamily::Fin2(Fin2Domain::SockColumns { columns: col_bound, .. }) = p.family() else {
        return Err(GenericError::WrongFamily);
    };
    let mut columns = Vec::with_capacity(n_pairs as usize);
    let mut order = Vec::with_capacity(2 * n_pairs as usize);
    for n in 0..n_pairs {
        let m = (0..col_bound)
            .find(|&m| pair_bits_at(p, n, m) == ColumnState::BothDistinct)
            .ok_or(GenericError::NotGenericEnough(DenseSetSpec::SockColumn(n)))?;
        columns.push(m);
        let left_bit = p.value_at(&IndexPoint::AtomColumn(Atom::sock_left(n), m));
        let (zero, one) = if left_bit == Some(Value::Bit(0)) {
            (Atom::sock_left(n), Atom::sock_right(n))
        } else {
            (Atom::sock_right(n), Atom::sock_left(n))
        };
        order.push(zero);
        order.push(one);
    }
    let ranks = order.iter().enumerate().map(|(r, a)| (*a, r)).collect();
    Ok(SockOrder { columns, order, ranks })
}

/// What to read off the second coordinates of a fragment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionMode {
    /// The bit string at coordinates `0..count`.
    Bits { count: u32 },
    /// The coordinate map, verified onto `0..target`.
    Surjection { target: u32 },
}

/// Result of [`extract_second_coordinates`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SecondCoordinates {
    Bits(String),
    Surjection(BTreeMap<u32, u32>),
}

/// Read second coordinates off a fragment's final condition.
pub fn extract_second_coordinates(
    frag: &GenericFragment,
    mode: ExtractionMode,
) -> Result<SecondCoordinates, GenericError> {
    let p = frag.final_condition();
    let PosetFamily::FinPi1Inj { value_bound, .. } = p.family() else {
        return Err(GenericError::WrongFamily);
    };
    match mode {
        ExtractionMode::Bits { count } => {
            if value_bound != 2 {
                return Err(GenericError::WrongFamily);
            }
            let mut bits = String::with_capacity(count as usize);
            for i in 0..count {
                match p.value_at(&IndexPoint::Nat(i)) {
                    Some(Value::Pair(_, c)) => bits.push(if c == 0 { '0' } else { '1' }),
                    _ => {
                        return Err(GenericError::NotGenericEnough(DenseSetSpec::CoordInDomain(i)))
                    }
                }
            }
            Ok(SecondCoordinates::Bits(bits))
        }
        ExtractionMode::Surjection { target } => {
            let mut map = BTreeMap::new();
            for (point, value) in p.entries() {
                if let (IndexPoint::Nat(i), Value::Pair(_, c)) = (point, value) {
                    map.insert(*i, *c);
                }
            }
            for beta in 0..target {
                if !map.values().any(|c| *c == beta) {
                    return Err(GenericError::NotGenericEnough(DenseSetSpec::HitValue(beta)));
                }
            }
            Ok(SecondCoordinates::Surjection(map))
        }
    }
}

/// Bit-string shorthand for [`extract_second_coordinates`].
pub fn extract_bits(frag: &GenericFragment, count: u32) -> Result<String, GenericError> {
    match extract_second_coordinates(frag, ExtractionMode::Bits { count })? {
        SecondCoordinates::Bits(s) => Ok(s),
        SecondCoordinates::Surjection(_) => unreachable!(),
    }
}

/// Surjection shorthand for [`extract_second_coordinates`].
pub fn extract_surjection(
    frag: &GenericFragment,
    target: u32,
) -> Result<BTreeMap<u32, u32>, GenericError> {
    match extract_second_coordinates(frag, ExtractionMode::Surjection { target })? {
        SecondCoordinates::Surjection(m) => Ok(m),
        SecondCoordinates::Bits(_) => unreachable!(),
    }
}
