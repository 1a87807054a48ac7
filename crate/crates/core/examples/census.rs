//! Exhaustive enumeration and equivalence-class census of small patterns.

use signpat::oracle::{census, enumerate, EnumSpec, Predicate, Shape};
use signpat::Sign;

fn main() -> signpat::Result<()> {
    for n in 1..=3 {
        let c = census(&EnumSpec::new(n, Shape::Full, Predicate::Idempotent))?;
        println!("n = {n}: {} idempotent patterns in {} classes", c.total, c.classes);
    }
    let diag = vec![Sign::Plus, Sign::Zero, Sign::Plus];
    let upper = enumerate(&EnumSpec::new(3, Shape::UpperTriangular(diag), Predicate::Idempotent))?;
    println!("upper triangular with diagonal +0+: {}", upper.len());
    for k in 1..=3 {
        let found = enumerate(&EnumSpec::new(2, Shape::Full, Predicate::KPotent(k)))?;
        println!("2x2 with index {k}: {}", found.len());
    }
    Ok(())
}
