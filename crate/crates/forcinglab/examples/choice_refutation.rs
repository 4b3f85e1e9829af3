//! The socks argument, finitely: any finite support leaves some pair
//! untouched, and swapping that pair moves every supported selector — so no
//! supported choice function exists.  Plus the flip side for plain atoms:
//! supported functions are nearly constant.

use forcinglab::atom::{Atom, Permutable, Universe};
use forcinglab::nominal::{AtomFunction, GroupSpec, PermModel, Selector, Support};

fn main() {
    let model = PermModel::new(Universe::socks(6), GroupSpec::SocksGroup);

    // However the support is chosen, some pair escapes it.
    let support = Support::from_atoms([
        Atom::sock_left(0),
        Atom::sock_right(2),
        Atom::sock_left(3),
    ]);
    let refutation = model.refute_choice(&support).unwrap();
    println!("support touches pairs 0, 2, 3; pair {} escapes", refutation.pair);
    println!("the swap {} fixes the support pointwise,", refutation.swap);
    for selector in Selector::both(refutation.pair) {
        let moved = selector.permute(&refutation.swap);
        println!("  but moves selector {} to {}", selector.pick, moved.pick);
    }
    println!("so no support-respecting rule can pick one sock per pair.\n");

    // Full symmetric group over plain atoms: a supported function can only
    // distinguish finitely many atoms and must be constant off its support.
    let model = PermModel::new(Universe::plain(8), GroupSpec::FullSymmetric);
    let support = Support::from_atoms([Atom::Plain(0), Atom::Plain(1)]);
    let f = AtomFunction {
        exceptions: [(Atom::Plain(0), 10u64), (Atom::Plain(1), 20)].into_iter().collect(),
        default: 99,
    };
    let range = model.classify_function(&f, &support).unwrap();
    println!("a {{P0,P1}}-supported function on 8 atoms:");
    println!("  off the support it is pinned to {}", range.off_support_value);
    println!("  so its whole range is {:?} — finite by symmetry alone", range.range);
    println!("\nboth halves are the same mechanism: a permutation that fixes the");
    println!("support is invisible to the object, so the object cannot encode");
    println!("more atoms than its support names.");
}
