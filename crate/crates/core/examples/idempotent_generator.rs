//! Column-by-column construction of every reduced sign idempotent pattern.

use signpat::idem::{free_choices, generate_idempotent, DiagSpec, GenerationMode, IdempotentGenerator};
use signpat::SignMatrix;

fn main() -> signpat::Result<()> {
    let diag: DiagSpec = "+0+++".parse()?;
    let mut gen = IdempotentGenerator::instrumented(&diag);
    let all: Vec<SignMatrix> = gen.by_ref().collect::<signpat::Result<_>>()?;
    println!("diag {diag}: {} patterns, dead ends {}", all.len(), gen.stats().dead_ends);
    println!("first:\n{}", all[0]);

    let sample = generate_idempotent(&diag, GenerationMode::Sample { count: 2, seed: 7 })?;
    for a in &sample {
        println!("sampled:\n{a}");
    }

    let mut partial = SignMatrix::zeros(5);
    for (i, &s) in diag.signs().iter().enumerate() {
        partial.set(i, i, s);
    }
    println!("choices for (1,2): {:?}", free_choices(&partial, 0, 1, &diag)?.signs());
    Ok(())
}
