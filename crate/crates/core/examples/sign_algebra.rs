//! Qualitative arithmetic: sums, products and the potence index.

use signpat::{Sign, SignMatrix};

fn main() -> signpat::Result<()> {
    println!("+ + - = {}", Sign::Plus + Sign::Minus);
    println!("# * 0 = {}", Sign::Amb * Sign::Zero);

    let a: SignMatrix = "+- 0+".parse()?;
    println!("A =\n{a}");
    println!("A^2 =\n{}", a.mat_mul(&a)?);
    println!("index: {:?}", a.potence_index(10)?.k);

    let mixed: SignMatrix = "++-+ 0+0+ 000+ 000+".parse()?;
    println!("square of a pattern with a mixed-sign path:\n{}", mixed.pow(2)?);
    println!("index: {:?}", mixed.potence_index(10)?.k);

    let thin: SignMatrix = "+0 0+".parse()?;
    println!("diag(+,+) is a subpattern of A: {}", thin.is_subpattern_of(&a)?);
    Ok(())
}
