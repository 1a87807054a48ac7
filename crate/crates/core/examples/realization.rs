//! Deciding whether a sign k-potent pattern allows k-potence, and building
//! an exact rational witness when it does.

use signpat::realization::{allows_kpotence, realize, verify_realization};
use signpat::SignMatrix;

fn main() -> signpat::Result<()> {
    for text in ["00+ 00+ ++0", "0+0 +00 00-", "+- 0+"] {
        let a: SignMatrix = text.parse()?;
        let d = allows_kpotence(&a)?;
        println!("{text}: k = {}, allows = {}", d.k, d.allows);
        if d.allows {
            let r = realize(&a)?;
            println!("B =\n{}", r.b);
            println!("verified: {}", verify_realization(&r.b, &a, r.k)?);
        } else {
            let pairs: Vec<String> = d.violations.iter().map(|(i, j)| format!("({},{})", i + 1, j + 1)).collect();
            println!("violations {}", pairs.join(" "));
        }
    }
    Ok(())
}
