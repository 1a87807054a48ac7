//! Recognizing P_m and Q_m under similarity, and the cyclic normal form.

use signpat::cyclic::{cyclic_structure, potence_index_cnf, to_cyclic_normal_form};
use signpat::reduction::expand_with;
use signpat::{make_q, BlockType, Sign, SignMatrix};

fn main() -> signpat::Result<()> {
    let hidden = expand_with(&make_q(2), &[2, 1])?
        .permute(&[2, 0, 1])?
        .signature(&[Sign::Plus, Sign::Minus, Sign::Plus])?;
    println!("hidden cycle:\n{hidden}");
    match cyclic_structure(&hidden)? {
        signpat::cyclic::Recognition::Cyclic(c) => {
            println!("type {}, classes {:?}, closing sign {}", c.block_type, c.class_sizes, c.alpha)
        }
        signpat::cyclic::Recognition::NotCyclic(why) => println!("not cyclic: {why}"),
    }

    let a: SignMatrix = "0++-+- +0-+-+ 000+-+ 0000+- 000+0+ 00000-".parse()?;
    let (form, c) = to_cyclic_normal_form(&a)?;
    let types: Vec<String> = form.block_types.iter().map(BlockType::to_string).collect();
    println!("blocks {}, k = {}", types.join(","), form.k()?);
    println!("{c}");
    println!("index of diag(Q2, P4): {}", potence_index_cnf(&[BlockType::Q(2), BlockType::P(4)])?);
    Ok(())
}
