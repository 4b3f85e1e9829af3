//! Two classic generic objects from one machine: a fresh bit string, and a
//! surjection collapsing a finite "cardinal" — both read off the second
//! coordinates of an atom-valued fragment.

use forcinglab::generic::{build_generic_seeded, extract_bits, extract_surjection, DenseSetSpec};
use forcinglab::poset::{Condition, PosetFamily};

fn main() {
    // Conditions map naturals to (atom, c) pairs, injectively in the atom.
    // Meeting "coordinate i is in the domain" for i < 8 pins down 8 pairs,
    // and the c's spell a bit string nobody chose in advance.
    let bit_family = PosetFamily::FinPi1Inj { nat_bound: 8, plain_atoms: 8, value_bound: 2 };
    let specs: Vec<DenseSetSpec> = (0..8).map(DenseSetSpec::CoordInDomain).collect();
    for seed in [7u64, 8, 9] {
        let frag = build_generic_seeded(&specs, Condition::empty(bit_family), seed).unwrap();
        let bits = extract_bits(&frag, 8).unwrap();
        println!("seed {seed}: fragment of {} conditions reads bits {bits}", frag.chain.len());
    }
    println!();

    // Same machine, different dense sets: "value β is hit" for β < 6 forces
    // the second coordinates onto all of 0..6 — a collapse in miniature.
    let onto_family = PosetFamily::FinPi1Inj { nat_bound: 9, plain_atoms: 9, value_bound: 6 };
    let hits: Vec<DenseSetSpec> = (0..6).map(DenseSetSpec::HitValue).collect();
    let frag = build_generic_seeded(&hits, Condition::empty(onto_family), 17).unwrap();
    let map = extract_surjection(&frag, 6).unwrap();
    println!("collapse fragment maps slots onto 0..6:");
    for (slot, value) in &map {
        println!("  slot {slot} ↦ {value}");
    }
    println!("\nfinal condition: {}", frag.final_condition());
    println!("the same poset shape yields a new real or a collapse, depending");
    println!("only on which dense sets the fragment is asked to meet.");
}
