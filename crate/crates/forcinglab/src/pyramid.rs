//! Pyramids, capstones, and the name-evaluation engine.
//!
//! A pyramid is a sequence of disjoint condition sets where every member
//! has a strictly deeper extension; a capstone is a condition tied to the
//! pyramid at unboundedly deep levels.  The laboratory works with two kinds
//! of pyramid: *complete* ones, finite objects whose levels are all there
//! is, and *truncated* ones, finite windows onto an unbounded construction.
//! Capstone certificates exist only for complete pyramids — for a truncated
//! pyramid every within-bounds candidate would have to be vouched for at
//! levels never materialized, so the honest verdict is a budget report.

use serde::Serialize;
use thiserror::Error;

use crate::names::{decides, NameError, NiceName};
use crate::poset::{compatible, Condition, PosetError, PosetFamily, Value};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PyramidError {
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Name(#[from] NameError),
    #[error("pyramid members must share one family")]
    FamilyMismatch,
    #[error("chain fails to descend strictly at step {0}")]
    NotDescending(usize),
    #[error("pyramid has no members to build a chain from")]
    EmptyPyramid,
    #[error("no lower bound within bounds for the constructed {chain_len}-chain")]
    OracleFailed { chain_len: usize },
    #[error("constructed chain stops at level {reached}, short of the deepest level")]
    UnreachableDepth { reached: usize },
    #[error("oracle depth {depth} exceeds the name arity {arity}")]
    DepthBeyondArity { depth: u32, arity: u32 },
    #[error("no name member is compatible with the condition at coordinate {coord}")]
    NoWitness { coord: u32 },
    #[error("coordinate {coord} has witnesses forcing different values")]
    IncompatiblePrefixes { coord: u32, left: (Condition, u64), right: (Condition, u64) },
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
}

/// Disjoint condition levels with the deeper-extension property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pyramid {
    family: PosetFamily,
    levels: Vec<Vec<Condition>>,
    truncated: bool,
}

/// Verdict of [`validate_pyramid`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PyramidCheck {
    Valid,
    /// The same condition sits in two places.
    DuplicateMember { levels: (usize, usize), member: Condition },
    /// A member below the last level with no extension at any deeper level.
    MissingExtension { level: usize, member: Condition },
}

impl Pyramid {
    /// Wrap materialized levels; `truncated` records whether the source
    /// construction continues past the listed depth.
    pub fn new(
        family: PosetFamily,
        levels: Vec<Vec<Condition>>,
        truncated: bool,
    ) -> Result<Pyramid, PyramidError> {
        for c in levels.iter().flatten() {
            if c.family() != family {
                return Err(PyramidError::FamilyMismatch);
            }
        }
        Ok(Pyramid { family, levels, truncated })
    }

    /// The pyramid with `P_n = {chain[n]}`, one member per level.  The
    /// chain must descend strictly, which makes the levels disjoint.
    pub fn singleton_from_chain(chain: &[Condition]) -> Result<Pyramid, PyramidError> {
        if chain.is_empty() {
            return Err(PyramidError::EmptyPyramid);
        }
        for (i, w) in chain.windows(2).enumerate() {
            if !(w[1].extends(&w[0])? && w[1] != w[0]) {
                return Err(PyramidError::NotDescending(i + 1));
            }
        }
        Ok(Pyramid {
            family: chain[0].family(),
            levels: chain.iter().map(|c| vec![c.clone()]).collect(),
            truncated: false,
        })
    }

    pub fn family(&self) -> PosetFamily {
        self.family
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[Vec<Condition>] {
        &self.levels
    }

    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn member_count(&self) -> usize {
        self.levels.iter().map(Vec::len).sum()
    }
}

/// All conditions of each size `n < depth`, as levels.  This is the shape
/// of an unbounded construction (every condition keeps growing), so the
/// result is marked truncated.
pub fn size_level_pyramid(family: PosetFamily, depth: usize) -> Result<Pyramid, PyramidError> {
    if family.domain_points().len() > 10 {
        return Err(PyramidError::BudgetExceeded("size levels capped at 10 points".into()));
    }
    let levels = (0..depth).map(|n| family.conditions_of_size(n)).collect();
    Pyramid::new(family, levels, true)
}

/// Check disjointness and the deeper-extension property.
pub fn validate_pyramid(pyramid: &Pyramid) -> Result<PyramidCheck, PyramidError> {
    let mut level_of: std::collections::BTreeMap<&Condition, usize> = Default::default();
    for (n, level) in pyramid.levels.iter().enumerate() {
        for member in level {
            if let Some(&m) = level_of.get(member) {
                return Ok(PyramidCheck::DuplicateMember {
                    levels: (m, n),
                    member: member.clone(),
                });
            }
            level_of.insert(member, n);
        }
    }
    for (n, level) in pyramid.levels.iter().enumerate() {
        if n + 1 == pyramid.depth() {
            break;
        }
        for member in level {
            // Fast path: a one-point extension indexed at a deeper level.
            let mut extended = member
                .one_point_extensions()
                .iter()
                .any(|q| level_of.get(q).is_some_and(|&k| k > n));
            if !extended {
                'deeper: for deeper in &pyramid.levels[n + 1..] {
                    for q in deeper {
                        if q.extends(member)? {
                            extended = true;
                            break 'deeper;
                        }
                    }
                }
            }
            if !extended {
                return Ok(PyramidCheck::MissingExtension { level: n, member: member.clone() });
            }
        }
    }
    Ok(PyramidCheck::Valid)
}

/// Verdict of the capstone search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapstoneVerdict {
    /// A condition below pyramid members at every materialized level, with
    /// one witness per level index.
    Capstone { q: Condition, witnesses: Vec<(usize, Condition)> },
    /// No certificate within bounds.  For a truncated pyramid this is the
    /// only possible outcome; it is a search report, not a theorem.
    NoneWithinBudget { candidates_examined: usize },
}

/// Search for a capstone: a condition `q` such that every level index `k`
/// has a witness `p` at some level `n ≥ k` with `q ≤ p`.
///
/// For a complete pyramid the deepest nonempty level must be the last one
/// (otherwise the final indices have no witnesses at all), and then any of
/// its members is its own witness at every `k`; the first in canonical
/// order is returned.  A truncated pyramid admits no within-bounds
/// certificate, so the search reports the candidate space it exhausted.
pub fn find_capstone(pyramid: &Pyramid) -> Result<CapstoneVerdict, PyramidError> {
    if pyramid.truncated {
        let candidates = pyramid.family.domain_points().len();
        let examined = if candidates > 10 {
            pyramid.member_count()
        } else {
            pyramid.family.conditions_up_to(candidates).len()
        };
        return Ok(CapstoneVerdict::NoneWithinBudget { candidates_examined: examined });
    }
    let deepest = match pyramid.levels.iter().rposition(|level| !level.is_empty()) {
        // Vacuous: no level constrains anything, the weakest condition works.
        None => {
            return Ok(CapstoneVerdict::Capstone {
                q: Condition::empty(pyramid.family),
                witnesses: Vec::new(),
            })
        }
        Some(d) => d,
    };
    if deepest + 1 != pyramid.depth() {
        // Indices past `deepest` have no members to witness them.
        return Ok(CapstoneVerdict::NoneWithinBudget {
            candidates_examined: pyramid.member_count(),
        });
    }
    let q = pyramid.levels[deepest]
        .iter()
        .min()
        .expect("deepest level is nonempty")
        .clone();
    let witnesses = (0..pyramid.depth()).map(|k| (k, q.clone())).collect();
    Ok(CapstoneVerdict::Capstone { q, witnesses })
}

/// The chain-and-bound construction of a capstone, with its trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CapstoneConstruction {
    /// The strictly-deeper chain built by the selector: `(level, member)`.
    pub chain: Vec<(usize, Condition)>,
    pub capstone: Condition,
    /// One witness per level index, drawn from the chain.
    pub witnesses: Vec<(usize, Condition)>,
}

/// Build a capstone by walking the extension property.
///
/// Starting from the first member of the first nonempty level, `selector`
/// repeatedly picks one of the strictly deeper extensions of the current
/// member (the role a choice principle plays in the unbounded setting);
/// when the walk can go no deeper, `oracle` is asked for a lower bound of
/// the walked chain, given also whether the pyramid is truncated.  The
/// result is verified to be a capstone using the chain itself as witnesses.
pub fn capstone_from_chain<S, O>(
    pyramid: &Pyramid,
    mut selector: S,
    oracle: O,
) -> Result<CapstoneConstruction, PyramidError>
where
    S: FnMut(usize, &Condition, &[(usize, Condition)]) -> usize,
    O: Fn(&[Condition], bool) -> Option<Condition>,
{
    let start_level = pyramid
        .levels
        .iter()
        .position(|level| !level.is_empty())
        .ok_or(PyramidError::EmptyPyramid)?;
    let mut chain = vec![(start_level, pyramid.levels[start_level][0].clone())];
    loop {
        let (level, member) = chain.last().expect("chain starts non-empty").clone();
        let mut options = Vec::new();
        for (n, deeper) in pyramid.levels.iter().enumerate().skip(level + 1) {
            for q in deeper {
                if q.extends(&member)? && *q != member {
                    options.push((n, q.clone()));
                }
            }
        }
        if options.is_empty() {
            break;
        }
        let pick = selector(level, &member, &options).min(options.len() - 1);
        chain.push(options[pick].clone());
    }
    let conditions: Vec<Condition> = chain.iter().map(|(_, c)| c.clone()).collect();
    let capstone = oracle(&conditions, pyramid.truncated)
        .ok_or(PyramidError::OracleFailed { chain_len: chain.len() })?;
    for (i, p) in conditions.iter().enumerate() {
        assert!(capstone.extends(p)?, "oracle output must bound chain step {i}");
    }
    let reached = chain.last().expect("chain is non-empty").0;
    if reached + 1 != pyramid.depth() {
        return Err(PyramidError::UnreachableDepth { reached });
    }
    let witnesses = (0..pyramid.depth())
        .map(|k| {
            let (n, p) =
                chain.iter().find(|(n, _)| *n >= k).expect("chain reaches the last level");
            (*n, p.clone())
        })
        .collect();
    Ok(CapstoneConstruction { chain, capstone, witnesses })
}

/// The honest exhaustive lower-bound oracle: a complete chain is bounded by
/// its own last element; a truncated chain continues past what is listed,
/// so nothing within bounds can be certified below all of it.
pub fn exhaustive_lower_bound_oracle(chain: &[Condition], truncated: bool) -> Option<Condition> {
    if truncated {
        return None;
    }
    chain.last().cloned()
}

/// A nice name read as a function-name on `0..depth`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NameOracle {
    pub name: NiceName,
    pub depth: u32,
}

impl NameOracle {
    pub fn new(name: NiceName, depth: u32) -> Result<NameOracle, PyramidError> {
        if depth > name.arity() {
            return Err(PyramidError::DepthBeyondArity { depth, arity: name.arity() });
        }
        Ok(NameOracle { name, depth })
    }
}

/// Where a condition sits relative to a name: the first coordinate it
/// leaves undecided, or full decision to the declared depth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    Level(u32),
    DecidesAllToDepth,
}

/// Classify `p` by its decided prefix: the unique `n` with coordinates
/// `0..n` decided and coordinate `n` undecided, if one exists below depth.
pub fn classify_condition(p: &Condition, oracle: &NameOracle) -> Result<Classification, PyramidError> {
    for n in 0..oracle.depth {
        if decides(p, &oracle.name, n)?.is_none() {
            return Ok(Classification::Level(n));
        }
    }
    Ok(Classification::DecidesAllToDepth)
}

/// The classified cone below a root condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamePyramid {
    /// Levels `P_n` = conditions classified at `n`; truncated, since the
    /// construction continues past any finite depth.
    pub pyramid: Pyramid,
    /// Conditions deciding every coordinate below the declared depth.
    pub decides_all: Vec<Condition>,
    /// Conditions enumerated below the root (the partition total).
    pub total: usize,
}

/// Materialize the classification pyramid below `root`: every condition
/// extending `root` within the family bounds is classified, landing in
/// exactly one level or in the decides-all remainder.
pub fn pyramid_from_name(
    oracle: &NameOracle,
    root: &Condition,
) -> Result<NamePyramid, PyramidError> {
    let family = root.family();
    if !matches!(family, PosetFamily::Fin2(_)) {
        return Err(PyramidError::FamilyMismatch);
    }
    if let Some(name_family) = oracle.name.family() {
        if name_family != family {
            return Err(PyramidError::FamilyMismatch);
        }
    }
    let points = family.domain_points();
    if points.len() > 5 {
        return Err(PyramidError::BudgetExceeded(format!(
            "cone enumeration capped at 5 points, family has {}",
            points.len()
        )));
    }
    let free: Vec<_> = points.into_iter().filter(|pt| root.value_at(pt).is_none()).collect();
    let mut cone = vec![root.clone()];
    for pt in free {
        let mut grown = Vec::with_capacity(cone.len() * 3);
        for c in &cone {
            grown.push(c.clone());
            for bit in 0..2u8 {
                grown.extend(c.extended_with(pt, Value::Bit(bit)));
            }
        }
        cone = grown;
    }
    let total = cone.len();
    let mut levels = vec![Vec::new(); oracle.depth as usize];
    let mut decides_all = Vec::new();
    for q in cone {
        match classify_condition(&q, oracle)? {
            Classification::Level(n) => levels[n as usize].push(q),
            Classification::DecidesAllToDepth => decides_all.push(q),
        }
    }
    let classified: usize = levels.iter().map(Vec::len).sum::<usize>() + decides_all.len();
    assert_eq!(classified, total, "classification must partition the cone");
    Ok(NamePyramid {
        pyramid: Pyramid::new(family, levels, true)?,
        decides_all,
        total,
    })
}

/// Check the extension property of a classified cone, with the decides-all
/// remainder playing the role of "all deeper levels at once".
///
/// At finite depth the plain pyramid check is too strict: a member whose
/// classify coordinate is its last missing point extends only into the
/// remainder.  Every level member must still extend properly into a deeper
/// level or into the remainder — witnessed here by adding the classify
/// point itself.
pub fn validate_name_pyramid(cone: &NamePyramid) -> Result<PyramidCheck, PyramidError> {
    if let check @ PyramidCheck::DuplicateMember { .. } = validate_pyramid(&cone.pyramid)? {
        return Ok(check);
    }
    for (n, level) in cone.pyramid.levels().iter().enumerate() {
        for member in level {
            let deeper = cone.pyramid.levels()[n + 1..]
                .iter()
                .flatten()
                .chain(&cone.decides_all);
            let mut extended = false;
            for q in deeper {
                if q.extends(member)? && q != member {
                    extended = true;
                    break;
                }
            }
            if !extended {
                return Ok(PyramidCheck::MissingExtension { level: n, member: member.clone() });
            }
        }
    }
    Ok(PyramidCheck::Valid)
}

/// The decided prefix read off a condition playing the capstone role.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluatedPrefix {
    /// `s*`: the value forced at each coordinate below depth.
    pub values: Vec<u64>,
    /// The name member vouching for each coordinate.
    pub witnesses: Vec<(Condition, u64)>,
}

/// Evaluate a name through a single condition `q`.
///
/// For each coordinate, the witnesses are the name members compatible with
/// `q`; they must exist and must agree on the value.  Any condition below a
/// genuine capstone satisfies both demands, and the per-coordinate answers
/// assemble into one coherent prefix — the ground-model value the name was
/// secretly naming.  A name that is genuinely new fails loudly instead:
/// either some coordinate has no compatible witness, or two witnesses force
/// clashing values.
pub fn evaluate_via_capstone(
    q: &Condition,
    oracle: &NameOracle,
) -> Result<EvaluatedPrefix, PyramidError> {
    let mut values = Vec::with_capacity(oracle.depth as usize);
    let mut witnesses = Vec::with_capacity(oracle.depth as usize);
    for coord in 0..oracle.depth {
        let mut chosen: Option<(Condition, u64)> = None;
        for (member, beta) in oracle.name.coord(coord)? {
            if !compatible(q, member)? {
                continue;
            }
            match &chosen {
                None => chosen = Some((member.clone(), *beta)),
                Some((_, prior)) if prior == beta => {}
                Some(prior) => {
                    return Err(PyramidError::IncompatiblePrefixes {
                        coord,
                        left: prior.clone(),
                        right: (member.clone(), *beta),
                    })
                }
            }
        }
        let (member, beta) = chosen.ok_or(PyramidError::NoWitness { coord })?;
        values.push(beta);
        witnesses.push((member, beta));
    }
    Ok(EvaluatedPrefix { values, witnesses })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::IndexPoint;

    fn nat_cond(family: PosetFamily, entries: &[(u32, u8)]) -> Condition {
        Condition::from_entries(
            family,
            entries.iter().map(|(i, b)| (IndexPoint::Nat(*i), Value::Bit(*b))),
        )
    }

    fn descending_chain(family: PosetFamily, len: usize) -> Vec<Condition> {
        (0..len).map(|n| nat_cond(family, &(0..n as u32).map(|i| (i, 0)).collect::<Vec<_>>())).collect()
    }

    #[test]
    fn unit_singleton_pyramid_is_valid_and_capped_by_last() {
        let family = PosetFamily::fin2_naturals(8);
        let chain = descending_chain(family, 8);
        let pyramid = Pyramid::singleton_from_chain(&chain).unwrap();
        assert_eq!(validate_pyramid(&pyramid).unwrap(), PyramidCheck::Valid);
        let CapstoneVerdict::Capstone { q, witnesses } = find_capstone(&pyramid).unwrap() else {
            panic!("a complete singleton pyramid is capped by its last element")
        };
        assert_eq!(q, chain[7]);
        assert_eq!(witnesses.len(), 8);
    }

    #[test]
    fn unit_empty_pyramid_validates() {
        let family = PosetFamily::fin2_naturals(2);
        let pyramid = Pyramid::new(family, vec![Vec::new(), Vec::new()], false).unwrap();
        assert_eq!(validate_pyramid(&pyramid).unwrap(), PyramidCheck::Valid);
    }

    #[test]
    fn unit_duplicate_member_detected() {
        let family = PosetFamily::fin2_naturals(2);
        let p = nat_cond(family, &[(0, 1)]);
        let pyramid = Pyramid::new(family, vec![vec![p.clone()], vec![p]], false).unwrap();
        assert!(matches!(
            validate_pyramid(&pyramid).unwrap(),
            PyramidCheck::DuplicateMember { levels: (0, 1), .. }
        ));
    }

    #[test]
    fn unit_missing_extension_detected() {
        let family = PosetFamily::fin2_naturals(4);
        let p = nat_cond(family, &[(0, 1)]);
        let unrelated = nat_cond(family, &[(1, 0), (2, 0)]);
        let pyramid = Pyramid::new(family, vec![vec![p], vec![unrelated]], false).unwrap();
        assert!(matches!(
            validate_pyramid(&pyramid).unwrap(),
            PyramidCheck::MissingExtension { level: 0, .. }
        ));
    }

    #[test]
    fn unit_size_levels_validate_but_never_certify() {
        let family = PosetFamily::fin2_naturals(10);
        let pyramid = size_level_pyramid(family, 10).unwrap();
        assert_eq!(validate_pyramid(&pyramid).unwrap(), PyramidCheck::Valid);
        assert!(matches!(
            find_capstone(&pyramid).unwrap(),
            CapstoneVerdict::NoneWithinBudget { .. }
        ));
    }

    #[test]
    fn unit_depth_one_pyramid_capstone_is_its_member() {
        let family = PosetFamily::fin2_naturals(2);
        let pyramid =
            Pyramid::new(family, vec![vec![Condition::empty(family)]], false).unwrap();
        let CapstoneVerdict::Capstone { q, .. } = find_capstone(&pyramid).unwrap() else {
            panic!("single-level pyramid is capped by its member")
        };
        assert!(q.is_empty());
    }

    #[test]
    fn unit_construction_reproduces_search() {
        let family = PosetFamily::fin2_naturals(8);
        let chain = descending_chain(family, 8);
        let pyramid = Pyramid::singleton_from_chain(&chain).unwrap();
        let built =
            capstone_from_chain(&pyramid, |_, _, _| 0, exhaustive_lower_bound_oracle).unwrap();
        assert_eq!(built.capstone, chain[7]);
        assert_eq!(built.chain.len(), 8);
        assert_eq!(built.witnesses.len(), 8);
    }

    #[test]
    fn unit_construction_fails_on_truncated_pyramid() {
        let family = PosetFamily::fin2_naturals(6);
        let pyramid = size_level_pyramid(family, 5).unwrap();
        let err = capstone_from_chain(&pyramid, |_, _, _| 0, exhaustive_lower_bound_oracle)
            .unwrap_err();
        assert!(matches!(err, PyramidError::OracleFailed { .. }));
    }

    fn cohen_bit_name(family: PosetFamily, depth: u32) -> NiceName {
        // Coordinate n is decided by the two one-point conditions at n,
        // with the bit itself as value.
        let coords = (0..depth)
            .map(|n| {
                (0..2u8)
                    .map(|b| (nat_cond(family, &[(n, b)]), b as u64))
                    .collect()
            })
            .collect();
        NiceName::new(depth, coords).unwrap()
    }

    #[test]
    fn unit_classify_by_first_undecided_coordinate() {
        let family = PosetFamily::fin2_naturals(4);
        let oracle = NameOracle::new(cohen_bit_name(family, 4), 4).unwrap();
        assert_eq!(
            classify_condition(&Condition::empty(family), &oracle).unwrap(),
            Classification::Level(0)
        );
        let two = nat_cond(family, &[(0, 1), (1, 0)]);
        assert_eq!(classify_condition(&two, &oracle).unwrap(), Classification::Level(2));
        // A gap at 1 stops the prefix at 1 even though 2 is decided.
        let gap = nat_cond(family, &[(0, 1), (2, 0)]);
        assert_eq!(classify_condition(&gap, &oracle).unwrap(), Classification::Level(1));
        let full = nat_cond(family, &[(0, 0), (1, 0), (2, 0), (3, 0)]);
        assert_eq!(
            classify_condition(&full, &oracle).unwrap(),
            Classification::DecidesAllToDepth
        );
    }

    #[test]
    fn unit_name_pyramid_partitions_the_cone() {
        let family = PosetFamily::fin2_naturals(4);
        let oracle = NameOracle::new(cohen_bit_name(family, 4), 4).unwrap();
        let out = pyramid_from_name(&oracle, &Condition::empty(family)).unwrap();
        assert_eq!(out.total, 81);
        let sizes: Vec<usize> = out.pyramid.levels().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![27, 18, 12, 8]);
        assert_eq!(out.decides_all.len(), 16);
        assert_eq!(validate_name_pyramid(&out).unwrap(), PyramidCheck::Valid);
        // The plain check is stricter and fails at the finite-depth boundary:
        // a member missing only its classify point extends only into the
        // decides-all remainder.
        assert!(matches!(
            validate_pyramid(&out.pyramid).unwrap(),
            PyramidCheck::MissingExtension { .. }
        ));
    }

    #[test]
    fn unit_constant_name_classifies_everything_as_full() {
        let family = PosetFamily::fin2_naturals(2);
        let name =
            NiceName::new(2, vec![vec![(Condition::empty(family), 9)], vec![(Condition::empty(family), 9)]])
                .unwrap();
        let oracle = NameOracle::new(name, 2).unwrap();
        let out = pyramid_from_name(&oracle, &Condition::empty(family)).unwrap();
        assert!(out.pyramid.levels().iter().all(Vec::is_empty));
        assert_eq!(out.decides_all.len(), out.total);
    }

    #[test]
    fn unit_evaluate_constant_name() {
        let family = PosetFamily::fin2_naturals(2);
        let name = NiceName::new(
            3,
            (0..3).map(|_| vec![(Condition::empty(family), 4)]).collect(),
        )
        .unwrap();
        let oracle = NameOracle::new(name, 3).unwrap();
        let out = evaluate_via_capstone(&Condition::empty(family), &oracle).unwrap();
        assert_eq!(out.values, vec![4, 4, 4]);
    }

    #[test]
    fn unit_evaluate_reproduces_decides_on_deciding_condition() {
        let family = PosetFamily::fin2_naturals(4);
        let oracle = NameOracle::new(cohen_bit_name(family, 4), 4).unwrap();
        let q = nat_cond(family, &[(0, 1), (1, 0), (2, 1), (3, 1)]);
        let out = evaluate_via_capstone(&q, &oracle).unwrap();
        assert_eq!(out.values, vec![1, 0, 1, 1]);
        for n in 0..4 {
            assert_eq!(decides(&q, &oracle.name, n).unwrap(), Some(out.values[n as usize]));
        }
    }

    #[test]
    fn unit_evaluate_reports_clashing_witnesses() {
        let family = PosetFamily::fin2_naturals(4);
        let oracle = NameOracle::new(cohen_bit_name(family, 4), 4).unwrap();
        let err = evaluate_via_capstone(&Condition::empty(family), &oracle).unwrap_err();
        let PyramidError::IncompatiblePrefixes { coord, left, right } = err else {
            panic!("the empty condition leaves every bit open")
        };
        assert_eq!(coord, 0);
        assert_ne!(left.1, right.1);
    }

    #[test]
    fn unit_evaluate_no_witness() {
        let family = PosetFamily::fin2_naturals(2);
        let name = NiceName::new(1, vec![vec![(nat_cond(family, &[(0, 1)]), 3)]]).unwrap();
        let oracle = NameOracle::new(name, 1).unwrap();
        let q = nat_cond(family, &[(0, 0)]);
        assert_eq!(
            evaluate_via_capstone(&q, &oracle),
            Err(PyramidError::NoWitness { coord: 0 })
        );
    }
}
