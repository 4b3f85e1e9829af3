//! Antichain combinatorics for bit-valued condition posets.
//!
//! The central fact driving this module: an antichain of conditions whose
//! domains all have size `k` can never exceed `2^k` members.  The proof is a
//! packing argument — over the union domain `D` (size `d`), each member
//! leaves exactly `2^(d-k)` total maps extending it, distinct members claim
//! disjoint extension sets, and only `2^d` total maps exist.  Everything
//! here makes that argument executable: exhaustive maximum-antichain
//! searches, packing reports, cube antichains witnessing equality, the
//! level decomposition that turns an antichain into a map onto its realized
//! levels, and a rename refuter showing supported antichains are trapped in
//! a finite subposet.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::atom::{Atom, Permutable, Permutation};
use crate::nominal::Support;
use crate::poset::{
    common_extension, compatible, Compatibility, Condition, IndexPoint, PosetError, PosetFamily,
    Value,
};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AntichainError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("conditions at positions {0} and {1} are compatible")]
    NotAntichain(usize, usize),
    #[error("expected uniform domain size {expected}, found {found}")]
    NonUniformSize { expected: usize, found: usize },
    #[error("operation needs a bit-valued family")]
    WrongFamily,
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("universe too small: need {needed} plain atoms, have {available}")]
    InsufficientUniverse { needed: u32, available: u32 },
    #[error("support atom {0} is not a plain atom of the universe")]
    SupportOutsideUniverse(Atom),
}

/// Verdict of a pairwise-incompatibility check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AntichainCheck {
    Antichain,
    /// Positions of a compatible pair, with their common extension.
    CompatiblePair { left: usize, right: usize, common: Condition },
}

/// Check that the listed conditions are pairwise incompatible.
pub fn check_antichain(conds: &[Condition]) -> Result<AntichainCheck, PosetError> {
    for i in 0..conds.len() {
        for j in i + 1..conds.len() {
            if let Compatibility::Compatible(common) = common_extension(&conds[i], &conds[j])? {
                return Ok(AntichainCheck::CompatiblePair { left: i, right: j, common });
            }
        }
    }
    Ok(AntichainCheck::Antichain)
}

// ---------------------------------------------------------------------------
// Maximum-antichain search.
//
// An antichain is exactly a clique in the incompatibility graph, so the
// searches below are branch-and-bound clique searches over bitset adjacency
// rows.  Vertices are kept in canonical condition order, which puts all
// conditions sharing a domain next to each other; the full cube on the first
// domain is then found immediately and prunes most of the tree.

struct IncompatibilityGraph {
    vertices: Vec<Condition>,
    adj: Vec<Vec<u64>>,
    blocks: usize,
}

impl IncompatibilityGraph {
    fn build(vertices: Vec<Condition>) -> Result<IncompatibilityGraph, PosetError> {
        let n = vertices.len();
        let blocks = n.div_ceil(64);
        let mut adj = vec![vec![0u64; blocks]; n];
        for i in 0..n {
            for j in i + 1..n {
                if !compatible(&vertices[i], &vertices[j])? {
                    adj[i][j / 64] |= 1 << (j % 64);
                    adj[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        Ok(IncompatibilityGraph { vertices, adj, blocks })
    }

    fn max_clique_with<F: FnMut(&[&Condition])>(&self, visit: &mut F) -> usize {
        let mut cand = vec![u64::MAX; self.blocks];
        trim(&mut cand, self.vertices.len());
        let mut current = Vec::new();
        let mut best = 0;
        self.dfs(&mut current, cand, &mut best, visit);
        best
    }

    fn dfs<F: FnMut(&[&Condition])>(
        &self,
        current: &mut Vec<usize>,
        mut cand: Vec<u64>,
        best: &mut usize,
        visit: &mut F,
    ) {
        if !current.is_empty() {
            let members: Vec<&Condition> = current.iter().map(|&i| &self.vertices[i]).collect();
            visit(&members);
        }
        *best = (*best).max(current.len());
        while let Some(v) = first_bit(&cand) {
            if current.len() + popcount(&cand) <= *best {
                return;
            }
            clear_bit(&mut cand, v);
            let mut next = cand.clone();
            for (block, mask) in next.iter_mut().zip(&self.adj[v]) {
                *block &= mask;
            }
            current.push(v);
            self.dfs(current, next, best, visit);
            current.pop();
        }
    }
}

fn trim(bits: &mut [u64], n: usize) {
    for (b, block) in bits.iter_mut().enumerate() {
        let lo = b * 64;
        if lo >= n {
            *block = 0;
        } else if lo + 64 > n {
            *block &= (1u64 << (n - lo)) - 1;
        }
    }
}

fn first_bit(bits: &[u64]) -> Option<usize> {
    bits.iter()
        .enumerate()
        .find(|(_, b)| **b != 0)
        .map(|(i, b)| i * 64 + b.trailing_zeros() as usize)
}

fn clear_bit(bits: &mut [u64], i: usize) {
    bits[i / 64] &= !(1 << (i % 64));
}

fn popcount(bits: &[u64]) -> usize {
    bits.iter().map(|b| b.count_ones() as usize).sum()
}

/// Exact maximum size of an antichain of size-`k` conditions over `x_size`
/// bit-valued points, by exhaustive search.  Guarded to desk scale:
/// `x_size ≤ 5` and `k ≤ x_size`.
pub fn max_uniform_antichain_size(x_size: u32, k: usize) -> Result<usize, AntichainError> {
    max_uniform_antichain_size_with(x_size, k, |_| {})
}

/// Same search, invoking `visit` on every antichain the search enumerates.
pub fn max_uniform_antichain_size_with<F: FnMut(&[&Condition])>(
    x_size: u32,
    k: usize,
    mut visit: F,
) -> Result<usize, AntichainError> {
    if x_size > 5 {
        return Err(AntichainError::BudgetExceeded(format!(
            "uniform search capped at 5 points, asked for {x_size}"
        )));
    }
    if k > x_size as usize {
        return Err(AntichainError::BudgetExceeded(format!(
            "domain size {k} exceeds {x_size} available points"
        )));
    }
    let family = PosetFamily::fin2_plain(x_size);
    let graph = IncompatibilityGraph::build(family.conditions_of_size(k))?;
    Ok(graph.max_clique_with(&mut visit))
}

/// The antichain of all `2^|points|` total bit assignments on `points`.
pub fn full_cube(
    family: PosetFamily,
    points: &[IndexPoint],
) -> Result<Vec<Condition>, AntichainError> {
    if !matches!(family, PosetFamily::Fin2(_)) {
        return Err(AntichainError::WrongFamily);
    }
    let sorted: BTreeSet<IndexPoint> = points.iter().copied().collect();
    if sorted.len() != points.len() {
        return Err(AntichainError::BudgetExceeded("cube points must be distinct".into()));
    }
    if sorted.len() > 20 {
        return Err(AntichainError::BudgetExceeded("cube capped at 20 points".into()));
    }
    let sorted: Vec<IndexPoint> = sorted.into_iter().collect();
    let n = sorted.len();
    let mut out = Vec::with_capacity(1 << n);
    for mask in 0u32..(1 << n) {
        let cond = Condition::from_entries(
            family,
            sorted.iter().enumerate().map(|(j, point)| {
                (*point, Value::Bit(((mask >> (n - 1 - j)) & 1) as u8))
            }),
        );
        debug_assert_eq!(cond.validate(), Ok(()));
        out.push(cond);
    }
    Ok(out)
}

/// Numeric summary of the packing argument for one uniform antichain.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct PackingReport {
    /// Number of antichain members.
    pub size: usize,
    /// Common domain size of the members.
    pub k: usize,
    /// Union of the member domains.
    pub union_domain: BTreeSet<IndexPoint>,
    /// Size of the union domain.
    pub d: usize,
    /// Total maps on the union domain extending one member: `2^(d-k)`.
    pub extension_set_size: u64,
    /// `size * 2^(d-k)` — the maps claimed by the antichain.
    pub claimed: u64,
    /// `2^d` — the maps available.
    pub available: u64,
}

/// Run the packing argument on a uniform antichain of bit conditions:
/// materialize each member's extension set inside the cube on the union
/// domain, check the sets are disjoint and of the exact predicted size, and
/// return the counts, which always satisfy `claimed ≤ available`.
pub fn packing_report(conds: &[Condition]) -> Result<PackingReport, AntichainError> {
    if conds.is_empty() {
        return Err(AntichainError::NonUniformSize { expected: 0, found: 0 });
    }
    if !matches!(conds[0].family(), PosetFamily::Fin2(_)) {
        return Err(AntichainError::WrongFamily);
    }
    let k = conds[0].len();
    for c in conds {
        if c.len() != k {
            return Err(AntichainError::NonUniformSize { expected: k, found: c.len() });
        }
    }
    if let AntichainCheck::CompatiblePair { left, right, .. } = check_antichain(conds)? {
        return Err(AntichainError::NotAntichain(left, right));
    }
    let union_domain: BTreeSet<IndexPoint> =
        conds.iter().flat_map(|c| c.domain().copied()).collect();
    let d = union_domain.len();
    if d > 20 {
        return Err(AntichainError::BudgetExceeded("union domain capped at 20 points".into()));
    }
    let points: Vec<IndexPoint> = union_domain.iter().copied().collect();
    let ext_size = 1u64 << (d - k);

    // Encode a total bit map on the union domain as a d-bit integer and pour
    // every member's extension set into one bucket, watching for overlap.
    let mut seen: HashSet<u64> = HashSet::new();
    for c in conds {
        let mut fixed = 0u64;
        let mut free = Vec::new();
        for (j, point) in points.iter().enumerate() {
            match c.value_at(point) {
                Some(Value::Bit(b)) => fixed |= (b as u64) << j,
                Some(_) => return Err(AntichainError::WrongFamily),
                None => free.push(j),
            }
        }
        for mask in 0u64..(1 << free.len()) {
            let mut total = fixed;
            for (t, j) in free.iter().enumerate() {
                total |= ((mask >> t) & 1) << j;
            }
            assert!(seen.insert(total), "extension sets of an antichain overlapped");
        }
    }
    let claimed = conds.len() as u64 * ext_size;
    assert_eq!(seen.len() as u64, claimed, "extension set of unexpected size");
    assert!(claimed <= 1 << d);
    Ok(PackingReport {
        size: conds.len(),
        k,
        union_domain,
        d,
        extension_set_size: ext_size,
        claimed,
        available: 1 << d,
    })
}

/// The members of size at most `n` and the points their domains cover.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelSets {
    pub conditions: Vec<Condition>,
    pub points: BTreeSet<IndexPoint>,
}

/// An antichain sliced by member size, with the induced point map.
///
/// `point_level` sends each covered point to the least `n` whose level set
/// already contains it (other points are read as 0), and `range` is its
/// value set — exactly the levels where a new point first appears.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelDecomposition {
    pub levels: Vec<LevelSets>,
    pub point_level: BTreeMap<IndexPoint, usize>,
    pub range: BTreeSet<usize>,
}

/// Slice an antichain into its size levels and build the point map.
///
/// Each level holds at most `2^(n+1) - 1` members (summing the uniform
/// bounds for sizes `0..=n`), so an infinite antichain must keep producing
/// new levels — and with them new points, which is what makes the point map
/// reach arbitrarily late realized levels.
pub fn level_decomposition(conds: &[Condition]) -> Result<LevelDecomposition, AntichainError> {
    if let AntichainCheck::CompatiblePair { left, right, .. } = check_antichain(conds)? {
        return Err(AntichainError::NotAntichain(left, right));
    }
    let max_size = conds.iter().map(Condition::len).max().unwrap_or(0);
    let mut levels = Vec::with_capacity(max_size + 1);
    for n in 0..=max_size {
        let conditions: Vec<Condition> =
            conds.iter().filter(|c| c.len() <= n).cloned().collect();
        assert!(
            (conditions.len() as u64) < (1u64 << (n + 1)),
            "level {n} exceeds the packing bound"
        );
        let points = conditions.iter().flat_map(|c| c.domain().copied()).collect();
        levels.push(LevelSets { conditions, points });
    }
    let mut point_level = BTreeMap::new();
    for (n, level) in levels.iter().enumerate() {
        for point in &level.points {
            point_level.entry(*point).or_insert(n);
        }
    }
    let range: BTreeSet<usize> = point_level.values().copied().collect();
    // The map's range is exactly the set of levels where new points appear.
    let empty = BTreeSet::new();
    let expected: BTreeSet<usize> = (0..levels.len())
        .filter(|&n| {
            let prev = if n == 0 { &empty } else { &levels[n - 1].points };
            levels[n].points.difference(prev).next().is_some()
        })
        .collect();
    assert_eq!(range, expected, "point map must reach exactly the point-growing levels");
    Ok(LevelDecomposition { levels, point_level, range })
}

/// One logged application of the rename argument: a condition touching an
/// atom outside the support, the transposition to a fresh atom, the renamed
/// condition, and their common extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenameWitness {
    pub original: Condition,
    pub transposition: Permutation,
    pub renamed: Condition,
    pub common: Condition,
}

/// Outcome of [`supported_antichain_bound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportedAntichainBound {
    /// Exact maximum antichain size among conditions with domain inside the
    /// support — always `2^|S|`.
    pub bound: usize,
    /// One rename witness per enumerated condition that strays outside the
    /// support (and leaves room for a fresh atom).
    pub witnesses: Vec<RenameWitness>,
    /// Conditions enumerated during the rename sweep.
    pub checked: usize,
    /// Conditions whose atoms exhaust the universe, out of reach of the
    /// rename argument at this universe size.
    pub out_of_scope: usize,
}

/// Show that an antichain of bit conditions on plain atoms supported by `S`
/// cannot grow beyond `2^|S|`.
///
/// The sweep enumerates every condition over the universe; each one touching
/// an atom outside `S` is renamed by a transposition to a fresh atom,
/// producing a distinct compatible condition — were the original in an
/// `S`-supported antichain, the renamed copy would also be in it, breaking
/// pairwise incompatibility.  Members are therefore confined to domains
/// inside `S`, and an exhaustive search of that finite subposet gives the
/// exact bound.
pub fn supported_antichain_bound(
    support: &Support,
    universe_atoms: u32,
) -> Result<SupportedAntichainBound, AntichainError> {
    for atom in &support.0 {
        match atom {
            Atom::Plain(i) if *i < universe_atoms => {}
            _ => return Err(AntichainError::SupportOutsideUniverse(*atom)),
        }
    }
    let s = support.len() as u32;
    if s > 5 {
        return Err(AntichainError::BudgetExceeded("support capped at 5 atoms".into()));
    }
    if universe_atoms < s + 3 {
        return Err(AntichainError::InsufficientUniverse {
            needed: s + 3,
            available: universe_atoms,
        });
    }
    if universe_atoms > 8 {
        return Err(AntichainError::BudgetExceeded("rename sweep capped at 8 atoms".into()));
    }

    let family = PosetFamily::fin2_plain(universe_atoms);
    let all = family.conditions_up_to(universe_atoms as usize);
    let checked = all.len();
    let mut witnesses = Vec::new();
    let mut out_of_scope = 0;
    for original in all {
        let touched = original.atoms();
        let Some(stray) = touched.iter().find(|a| !support.contains(**a)).copied() else {
            continue;
        };
        let fresh = (0..universe_atoms)
            .map(Atom::Plain)
            .find(|a| !touched.contains(a) && !support.contains(*a));
        let Some(fresh) = fresh else {
            out_of_scope += 1;
            continue;
        };
        let tau = Permutation::transposition(stray, fresh);
        let renamed = tau.apply(&original);
        assert_ne!(renamed, original, "renaming a stray atom must move the condition");
        let common = match common_extension(&original, &renamed)? {
            Compatibility::Compatible(c) => c,
            other => panic!("renamed copy must stay compatible, got {other:?}"),
        };
        witnesses.push(RenameWitness { original, transposition: tau, renamed, common });
    }

    // Exhaust the subposet of conditions with domain inside the support.
    let support_atoms: Vec<Atom> = support.0.iter().copied().collect();
    let mut vertices = Vec::new();
    for mask in 0u32..(1 << support_atoms.len()) {
        let domain: Vec<Atom> = support_atoms
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, a)| *a)
            .collect();
        let mut assignments = vec![Vec::new()];
        for atom in &domain {
            assignments = assignments
                .into_iter()
                .flat_map(|entries: Vec<(IndexPoint, Value)>| {
                    (0u8..2).map(move |b| {
                        let mut e = entries.clone();
                        e.push((IndexPoint::AtomPoint(*atom), Value::Bit(b)));
                        e
                    })
                })
                .collect();
        }
        for entries in assignments {
            vertices.push(Condition::from_entries(family, entries));
        }
    }
    vertices.sort();
    let graph = IncompatibilityGraph::build(vertices)?;
    let bound = graph.max_clique_with(&mut |_| {});
    Ok(SupportedAntichainBound { bound, witnesses, checked, out_of_scope })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_uniform_bound_small_cases() {
        // Size-1 conditions over 3 points: the two assignments at one point.
        assert_eq!(max_uniform_antichain_size(3, 1).unwrap(), 2);
        // Size-2 conditions over 4 points.
        assert_eq!(max_uniform_antichain_size(4, 2).unwrap(), 4);
        // Degenerate: only the empty condition, an antichain of one.
        assert_eq!(max_uniform_antichain_size(3, 0).unwrap(), 1);
        assert_eq!(max_uniform_antichain_size(0, 0).unwrap(), 1);
    }

    #[test]
    fn unit_uniform_search_guards() {
        assert!(matches!(
            max_uniform_antichain_size(6, 1),
            Err(AntichainError::BudgetExceeded(_))
        ));
        assert!(matches!(
            max_uniform_antichain_size(3, 4),
            Err(AntichainError::BudgetExceeded(_))
        ));
    }

    #[test]
    fn unit_full_cube_is_maximum_antichain() {
        let family = PosetFamily::fin2_plain(4);
        let points: Vec<IndexPoint> =
            (0..4).map(|i| IndexPoint::AtomPoint(Atom::Plain(i))).collect();
        let cube = full_cube(family, &points).unwrap();
        assert_eq!(cube.len(), 16);
        assert_eq!(check_antichain(&cube).unwrap(), AntichainCheck::Antichain);
        assert_eq!(max_uniform_antichain_size(4, 4).unwrap(), 16);
    }

    #[test]
    fn unit_check_antichain_reports_witness_pair() {
        let family = PosetFamily::fin2_naturals(3);
        let a = Condition::from_entries(family, [(IndexPoint::Nat(0), Value::Bit(0))]);
        let b = Condition::from_entries(family, [(IndexPoint::Nat(1), Value::Bit(1))]);
        match check_antichain(&[a.clone(), b.clone()]).unwrap() {
            AntichainCheck::CompatiblePair { left, right, common } => {
                assert_eq!((left, right), (0, 1));
                assert!(common.extends(&a).unwrap() && common.extends(&b).unwrap());
            }
            AntichainCheck::Antichain => panic!("disjoint bit conditions are compatible"),
        }
    }

    #[test]
    fn unit_packing_counts() {
        // Two size-2 conditions sharing one clashing point: d = 3.
        let family = PosetFamily::fin2_naturals(3);
        let a = Condition::from_entries(
            family,
            [(IndexPoint::Nat(0), Value::Bit(0)), (IndexPoint::Nat(1), Value::Bit(0))],
        );
        let b = Condition::from_entries(
            family,
            [(IndexPoint::Nat(0), Value::Bit(1)), (IndexPoint::Nat(2), Value::Bit(0))],
        );
        let report = packing_report(&[a, b]).unwrap();
        assert_eq!(report.size, 2);
        assert_eq!(report.k, 2);
        assert_eq!(report.d, 3);
        assert_eq!(report.extension_set_size, 2);
        assert_eq!(report.claimed, 4);
        assert_eq!(report.available, 8);
    }

    #[test]
    fn unit_packing_rejects_bad_input() {
        let family = PosetFamily::fin2_naturals(3);
        let a = Condition::from_entries(family, [(IndexPoint::Nat(0), Value::Bit(0))]);
        let b = Condition::from_entries(family, [(IndexPoint::Nat(1), Value::Bit(1))]);
        assert_eq!(packing_report(&[a.clone(), b]), Err(AntichainError::NotAntichain(0, 1)));
        let long = Condition::from_entries(
            family,
            [(IndexPoint::Nat(0), Value::Bit(1)), (IndexPoint::Nat(1), Value::Bit(1))],
        );
        assert_eq!(
            packing_report(&[a, long]),
            Err(AntichainError::NonUniformSize { expected: 1, found: 2 })
        );
    }

    #[test]
    fn unit_level_decomposition_of_a_cube() {
        let family = PosetFamily::fin2_plain(2);
        let points: Vec<IndexPoint> =
            (0..2).map(|i| IndexPoint::AtomPoint(Atom::Plain(i))).collect();
        let cube = full_cube(family, &points).unwrap();
        let decomp = level_decomposition(&cube).unwrap();
        // Members all have size 2: levels 0 and 1 are empty.
        assert!(decomp.levels[0].conditions.is_empty());
        assert!(decomp.levels[1].conditions.is_empty());
        assert_eq!(decomp.levels[2].conditions.len(), 4);
        for point in &points {
            assert_eq!(decomp.point_level[point], 2);
        }
        assert_eq!(decomp.range, BTreeSet::from([2]));
    }

    #[test]
    fn unit_level_decomposition_mixed_sizes() {
        let family = PosetFamily::fin2_plain(1);
        let cube = full_cube(family, &[IndexPoint::AtomPoint(Atom::Plain(0))]).unwrap();
        let decomp = level_decomposition(&cube).unwrap();
        assert_eq!(decomp.point_level[&IndexPoint::AtomPoint(Atom::Plain(0))], 1);
        assert_eq!(decomp.range, BTreeSet::from([1]));
    }

    #[test]
    fn unit_supported_bound_is_two_to_the_support() {
        let support = Support::from_atoms([Atom::Plain(0), Atom::Plain(1)]);
        let out = supported_antichain_bound(&support, 5).unwrap();
        assert_eq!(out.bound, 4);
        assert!(!out.witnesses.is_empty());
        // Every witness really is a compatible, distinct rename.
        for w in &out.witnesses {
            assert_ne!(w.original, w.renamed);
            assert!(w.common.extends(&w.original).unwrap());
            assert!(w.common.extends(&w.renamed).unwrap());
            // The transposition fixes the support pointwise.
            for a in &support.0 {
                assert_eq!(w.transposition.image(*a), *a);
            }
        }
    }

    #[test]
    fn unit_supported_bound_needs_margin() {
        let support = Support::from_atoms([Atom::Plain(0)]);
        assert_eq!(
            supported_antichain_bound(&support, 3),
            Err(AntichainError::InsufficientUniverse { needed: 4, available: 3 })
        );
    }
}
