//! Off-diagonal block families: every block commuting with its diagonal blocks.

use signpat::family::{block_family, commute_check};
use signpat::BlockType::{self, P, Q};

fn main() -> signpat::Result<()> {
    let pairs: [(BlockType, BlockType); 4] = [(P(2), P(2)), (Q(1), P(2)), (P(2), Q(2)), (Q(1), Q(2))];
    for (ti, tj) in pairs {
        let f = block_family(ti, tj, false);
        println!("{ti} x {tj}: {} family, g = {}, {} members", f.kind, f.g, f.member_count());
        for b in f.members().take(3) {
            assert!(commute_check(&ti.pattern(), &b, &tj.pattern())?);
            println!("{b}");
        }
    }
    Ok(())
}
