//! Chains and their lower bounds, honestly bounded: explicit chains either
//! stabilize or end in a lower bound; rule-generated chains only ever get a
//! verdict within the step budget.  With a support in play, strict descent
//! is rationed: one support atom per strict step.

use forcinglab::atom::{Atom, Universe};
use forcinglab::closure::{
    check_sigma_closed_bounded, support_stabilization, ChainGen, SigmaVerdict, StepRule,
};
use forcinglab::nominal::{GroupSpec, PermModel, Support};
use forcinglab::poset::{Condition, IndexPoint, PosetFamily, Value};

fn main() {
    let family = PosetFamily::fin2_naturals(16);
    let seed = Condition::empty(family);

    // A rule chain that appends three bits and then repeats forever.
    let finite_descent = ChainGen::Rule {
        seed: seed.clone(),
        rule: StepRule::AppendBits { bits: vec![1, 0, 1] },
        length: 64,
    };
    match check_sigma_closed_bounded(&finite_descent, 32).unwrap() {
        SigmaVerdict::Stabilized { at } => {
            println!("append-3-bits chain: stabilized at step {at} — its own lower bound")
        }
        other => println!("append-3-bits chain: {other:?}"),
    }

    // A rule chain that keeps strictly descending past any budget.
    let endless = ChainGen::Rule {
        seed,
        rule: StepRule::AppendBits { bits: vec![0; 16] },
        length: 64,
    };
    match check_sigma_closed_bounded(&endless, 8).unwrap() {
        SigmaVerdict::NoBoundWithinBudget { steps } => {
            println!("always-append chain: still descending after {steps} steps — no claim made")
        }
        other => println!("always-append chain: {other:?}"),
    }

    // An explicit finite chain wears its lower bound on its sleeve.
    let inj = PosetFamily::FinInj { nat_bound: 4, plain_atoms: 8 };
    let explicit: Vec<Condition> = (0..=3)
        .map(|n| {
            Condition::from_entries(
                inj,
                (0..n).map(|i| (IndexPoint::Nat(i), Value::AtomValue(Atom::Plain(i)))),
            )
        })
        .collect();
    match check_sigma_closed_bounded(&ChainGen::Explicit(explicit.clone()), 32).unwrap() {
        SigmaVerdict::LowerBound { q } => println!("explicit 4-chain: lower bound {q}"),
        other => println!("explicit 4-chain: {other:?}"),
    }
    println!();

    // Now the same chain, watched through a support of two atoms: every
    // strict step must spend a fresh support atom, so two is the ceiling.
    let model = PermModel::new(Universe::plain(8), GroupSpec::FullSymmetric);
    let support = Support::from_atoms([Atom::Plain(0), Atom::Plain(1)]);
    let capped: Vec<Condition> = explicit.into_iter().take(3).collect();
    let report =
        support_stabilization(&model, &ChainGen::Explicit(capped), &support).unwrap();
    println!("chain supported by {{P0, P1}}:");
    for step in &report.strict_steps {
        println!(
            "  strict step {}: new point {} takes value {}",
            step.index, step.new_point, step.value
        );
    }
    println!("  {} strict steps of at most {} — the support is spent", report.strict_steps.len(), report.bound);
    println!("\na supported ω-chain would need a fresh support atom infinitely often;");
    println!("after |S| strict steps it must sit still, which is the stabilization.");
}
