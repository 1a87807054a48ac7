//! Frobenius normal form and extraneous indices.

use signpat::structure::{frobenius_normal_form, is_irreducible, strip_extraneous};
use signpat::SignMatrix;

fn main() -> signpat::Result<()> {
    let a: SignMatrix = "0+000 +0000 0+000 000-0 00000".parse()?;
    let f = frobenius_normal_form(&a)?;
    println!("perm {:?}, blocks {:?}, kinds {:?}", f.perm, f.block_sizes, f.kinds);
    println!("permuted:\n{}", a.permute(&f.perm)?);
    for (c, r) in f.components().iter().zip(f.block_ranges()) {
        let d = a.permute(&f.perm)?.block(r.clone(), r);
        println!("component {c:?} irreducible: {}", is_irreducible(&d)?);
    }
    let (core, kept) = strip_extraneous(&a)?;
    println!("kept indices {kept:?}\n{core}");
    Ok(())
}
