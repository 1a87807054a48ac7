//! Coarsest constant-block partition, red(A) and expansion.

use signpat::reduction::{coarsest_partition, expand, red};
use signpat::SignMatrix;

fn main() -> signpat::Result<()> {
    let a: SignMatrix = "++-- ++-- 00++ 00++".parse()?;
    println!("class sizes {:?}", coarsest_partition(&a)?.sizes());
    let r = red(&a)?;
    println!("red(A) =\n{}", r.entries);
    println!("index of A: {:?}, of red(A): {:?}", a.potence_index(8)?.k, r.entries.potence_index(8)?.k);
    assert_eq!(expand(&r)?, a);
    println!("expand(red(A)) = A");
    Ok(())
}
