//! The commuting-operator lemma on finite abelian groups: single checks and a seeded fuzz.

use galois_lab::kummer::{operator_lemma_check, operator_lemma_fuzz, LemmaMode, OperatorInstance};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    // Z/8 with P = 2, S = 4, T = 1: only "T vanishes on A_0" fails, and so does the conclusion.
    let inst = OperatorInstance {
        orders: vec![8],
        p: vec![vec![2]],
        s: vec![vec![4]],
        t: vec![vec![1]],
        n_bound: 2,
    };
    let v = operator_lemma_check(&inst, &[4], 4, LemmaMode::Relaxed)?;
    println!(
        "Z/8, a = 4: T vanishes on A_0 {}, kernel bound {}, conclusion {}",
        v.t_vanishes_on_a0, v.kernel_bound, v.conclusion_holds
    );

    let report = operator_lemma_fuzz(1, 2000, 256);
    println!(
        "fuzz: {} trials, {} pairs, {} counterexamples, {} necessity witnesses, passed = {}",
        report.trials,
        report.pairs_checked,
        report.counterexamples,
        report.necessity_witnesses.len(),
        report.passed()
    );
    for w in &report.necessity_witnesses {
        println!("  hypothesis {} broken ({:?}) in trial {}: a = {:?}", w.broken, w.mode, w.trial, w.a);
    }
    Ok(())
}
