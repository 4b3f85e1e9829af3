//! Pyramids and their capstones: a condition lying below arbitrarily deep
//! levels.  A strictly descending chain always caps out; a width-first
//! pyramid never does, and the verdicts stay honest about search bounds.

use forcinglab::poset::{Condition, IndexPoint, PosetFamily, Value};
use forcinglab::pyramid::{
    capstone_from_chain, exhaustive_lower_bound_oracle, find_capstone, size_level_pyramid,
    validate_pyramid, CapstoneVerdict, Pyramid, PyramidCheck,
};

fn main() {
    let depth = 6usize;
    let family = PosetFamily::fin2_naturals(depth as u32);

    // Level n = all conditions of size n: a pyramid that spreads out.
    let wide = size_level_pyramid(family, depth).unwrap();
    assert_eq!(validate_pyramid(&wide).unwrap(), PyramidCheck::Valid);
    println!("width-first pyramid to depth {depth}: levels of sizes");
    let sizes: Vec<usize> = wide.levels().iter().map(Vec::len).collect();
    println!("  {sizes:?}");
    match find_capstone(&wide).unwrap() {
        CapstoneVerdict::NoneWithinBudget { candidates_examined } => println!(
            "  capstone search: none within bounds ({candidates_examined} candidates examined)\n"
        ),
        CapstoneVerdict::Capstone { q, .. } => println!("  unexpectedly capped by {q}\n"),
    }

    // A single strictly descending chain is the thinnest possible pyramid,
    // and its deepest element caps it: below members of every level.
    let chain: Vec<Condition> = (0..depth)
        .map(|n| {
            Condition::from_entries(family, (0..n as u32).map(|i| (IndexPoint::Nat(i), Value::Bit(1))))
        })
        .collect();
    let thin = Pyramid::singleton_from_chain(&chain).unwrap();
    let CapstoneVerdict::Capstone { q, witnesses } = find_capstone(&thin).unwrap() else {
        unreachable!("a finite strictly descending chain caps out");
    };
    println!("chain pyramid: capstone {q}");
    println!("  witnessed at levels {:?}", witnesses.iter().map(|(k, _)| *k).collect::<Vec<_>>());

    // The constructive route: walk a descending chain through the levels,
    // then ask an oracle for a bound.  With an exhaustive oracle it lands
    // on the same capstone.
    let built = capstone_from_chain(&thin, |_, _, _| 0, exhaustive_lower_bound_oracle).unwrap();
    assert_eq!(built.capstone, q);
    println!("  chain-and-bound construction reproduces it: {}", built.capstone);
    println!("\nthe asymmetry is the point: finding a capstone certifies closure");
    println!("behavior, while failing to find one only ever reports the budget.");
}
