//! Reading a name below a condition: constant names evaluate everywhere,
//! while a fresh-bit name clashes below the root — with explicit witnesses.

use forcinglab::experiment::fresh_bit_name;
use forcinglab::poset::{Condition, IndexPoint, PosetFamily, Value};
use forcinglab::pyramid::{
    evaluate_via_capstone, pyramid_from_name, NameOracle, PyramidError,
};

fn main() {
    let family = PosetFamily::fin2_naturals(4);
    let root = Condition::empty(family);

    // The fresh-bit name: coordinate n is decided by the two one-point
    // conditions at n.  Below the root it cannot evaluate — and the failure
    // comes with the two clashing deciders in hand.
    let name = fresh_bit_name(family, 4);
    let oracle = NameOracle::new(name, 4).unwrap();
    match evaluate_via_capstone(&root, &oracle) {
        Err(PyramidError::IncompatiblePrefixes { coord, left, right }) => {
            println!("fresh-bit name below {root}: undecided at coordinate {coord}");
            println!("  witness {} forces value {}", left.0, left.1);
            println!("  witness {} forces value {}", right.0, right.1);
        }
        other => println!("unexpected: {other:?}"),
    }

    // Below a deciding condition the same name reads off its bits.
    let decider = Condition::from_entries(
        family,
        (0..4).map(|i| (IndexPoint::Nat(i), Value::Bit((i % 2) as u8))),
    );
    let prefix = evaluate_via_capstone(&decider, &oracle).unwrap();
    println!("\nbelow {decider} the name evaluates to {:?}", prefix.values);

    // The cone below the root, partitioned by how far each condition decides.
    let cone = pyramid_from_name(&oracle, &root).unwrap();
    let sizes: Vec<usize> = cone.pyramid.levels().iter().map(Vec::len).collect();
    println!("\ncone below the root: {} conditions total", cone.total);
    println!("  undecided-first-at-coordinate level sizes: {sizes:?}");
    println!("  deciding everything to depth 4: {}", cone.decides_all.len());
    println!("\nevery condition lands in exactly one class, so \"how much of the");
    println!("name is decided\" stratifies the whole poset below the root.");
}
