//! A desk-scale laboratory for forcing over atom universes without choice.
//!
//! Everything here is finite and checkable: conditions are finite partial
//! functions ordered by extension, antichains are enumerated rather than
//! posited, generic filters are replaced by finite fragments that meet a
//! listed family of dense sets, and every "does not exist" answer is a
//! three-valued verdict that says how hard we looked.
//!
//! The pieces:
//!
//! - [`atom`]: plain and sock-pair atoms, finitary permutations, and the
//!   [`atom::Permutable`] action that pushes them through structures.
//! - [`nominal`]: permutation models — supports, stabilizers, freshness,
//!   and the swap argument refuting supported choice functions.
//! - [`poset`]: the condition families, extension order, compatibility, and
//!   bounded enumeration.
//! - [`antichain`]: exact maximum-antichain search, the packing inequality,
//!   level decompositions, and the supported-antichain refuter.
//! - [`generic`]: dense sets, canonical and seeded generic fragments, and
//!   the extractions that read a sock well-order, a bit string, or a
//!   finite surjection off a fragment.
//! - [`names`]: nice names (one antichain of deciders per coordinate),
//!   decided-value sets with their `2^k` ceiling, and random name sampling.
//! - [`ordinal`]: Cantor-normal-form arithmetic below `ω³` and the
//!   order-respecting embedding of finite set families.
//! - [`closure`]: descending chains, bounded σ-closure verdicts, and
//!   support-driven stabilization of injective-condition chains.
//! - [`pyramid`]: pyramids, capstone search and construction, name cones,
//!   and evaluation of names through capstone witnesses.
//! - [`experiment`]: the batch runner behind the `forcinglab` binary —
//!   JSON configs in, graded deterministic reports out.
//!
//! The `examples/` directory exercises each capability end to end; start
//! with `antichain_bound` and `socks_wellorder`.

pub mod antichain;
pub mod atom;
pub mod closure;
pub mod experiment;
pub mod generic;
pub mod names;
pub mod nominal;
pub mod ordinal;
pub mod poset;
pub mod pyramid;
