//! Sign k-potent patterns in reduced cyclic normal form.

use signpat::idem::GenerationMode;
use signpat::kpotent::{generate_kpotent, KDiagSpec, KPotentGenerator, Strategy};

fn main() -> signpat::Result<()> {
    let spec: KDiagSpec = "P2,0,P2,Q1".parse()?;
    println!("spec {spec}: order {}, k = {}", spec.order(), spec.k());
    let mut gen = KPotentGenerator::instrumented(&spec, Strategy::SinglePass)?;
    let count = gen.by_ref().count();
    println!("single pass: {count} patterns, single assignment {}", gen.stats().all_single_assignment());

    let filtered = generate_kpotent(&spec, Strategy::Filtered, GenerationMode::All)?;
    println!("filtered: {} patterns", filtered.len());

    let two_runs: KDiagSpec = "0,P2,0,P1".parse()?;
    match KPotentGenerator::new(&two_runs, Strategy::SinglePass) {
        Ok(_) => println!("single pass accepted {two_runs}"),
        Err(e) => println!("single pass refuses {two_runs}: {e}"),
    }
    for a in generate_kpotent(&two_runs, Strategy::Filtered, GenerationMode::Sample { count: 1, seed: 3 })? {
        println!("filtered sample:\n{a}");
    }
    Ok(())
}
