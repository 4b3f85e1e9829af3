//! Counting names instead of choosing them: decided-value sets obey a `2^k`
//! ceiling, and finite families of ordinals embed order-respectingly below
//! `ω³` — the two finitary ingredients of the surjection-counting argument.

use std::collections::BTreeSet;

use forcinglab::antichain::full_cube;
use forcinglab::names::{compute_a_set, random_nice_name, NiceName};
use forcinglab::ordinal::{embed_finite_family, omega_times_plus, OrdinalCnf};
use forcinglab::poset::{Condition, PosetFamily};

fn main() {
    let family = PosetFamily::fin2_plain(4);
    let root = Condition::empty(family);

    // Random nice names never break the ceiling...
    println!("decided-value set sizes |A| against the 2^k ceiling:");
    for seed in 0..3u64 {
        let name = random_nice_name(family, 4, 6, 16, seed).unwrap();
        for k in 0..=3usize {
            let sizes: Vec<usize> = (0..4)
                .map(|alpha| compute_a_set(&name, &root, alpha, k).unwrap().len())
                .collect();
            println!("  seed {seed}, k={k}: |A| per coordinate {sizes:?} ≤ {}", 1 << k);
        }
    }

    // ...and a full cube name shows the ceiling is tight.
    let points: Vec<_> = family.domain_points().into_iter().take(2).collect();
    let coord: Vec<(Condition, u64)> = full_cube(family, &points)
        .unwrap()
        .into_iter()
        .enumerate()
        .map(|(i, c)| (c, i as u64))
        .collect();
    let cube_name = NiceName::new(1, vec![coord]).unwrap();
    let attained = compute_a_set(&cube_name, &root, 0, 2).unwrap();
    println!("\nfull-cube name attains equality: |A| = {} = 2^2\n", attained.len());

    // Shifting below ω³: k ↦ ω·α + k keeps distinct inputs distinct.
    let a = omega_times_plus(OrdinalCnf::nat(3), 5).unwrap();
    let b = omega_times_plus(OrdinalCnf::omega(), 0).unwrap();
    println!("ω·3 + 5 = {a},  ω·ω + 0 = {b}");

    // Embedding a finite family of ordinal sets: set γ's elements go to
    // ω·γ + (their rank inside B_γ), except where an earlier set claimed them.
    let sets: Vec<BTreeSet<OrdinalCnf>> = vec![
        [2u64, 5, 9].iter().map(|n| OrdinalCnf::nat(*n)).collect(),
        [5u64, 7].iter().map(|n| OrdinalCnf::nat(*n)).collect(),
    ];
    println!("\nembedding {{2,5,9}} then {{5,7}}:");
    for (x, image) in embed_finite_family(&sets) {
        println!("  {x} ↦ {image}");
    }
    println!("\nfirst-come wins, images in set γ live in [ω·γ, ω·(γ+1)), and the");
    println!("map stays injective however many finite sets the family throws at it.");
}
