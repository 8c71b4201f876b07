//! Jones-Wenzl projectors in exact Laurent arithmetic.
//!
//!     cargo run --example jones_wenzl -- 4

use foel::identities::{absorption, annihilation, idempotent, positive_expansion};
use foel::tl::{jones_wenzl, jones_wenzl_sequence};

fn main() -> foel::Result<()> {
    let n: usize = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(3);
    let jw = jones_wenzl(n)?;
    println!("[{n}]! p_{n} = {}", jw.scaled);
    println!("[{n}]! = {}", jw.denominator);
    println!("{} diagrams in the expansion", jw.scaled.len());

    let seq = jones_wenzl_sequence(n)?;
    println!("idempotent: {}", idempotent(&jw)?);
    println!("killed by every U_i: {}", annihilation(&jw)?);
    println!(
        "coefficients in q^(n(n-1)/2) N[q^-1]: {}",
        positive_expansion(&jw)?
    );
    for small in &seq[1..n.max(1)] {
        println!("absorbs p_{}: {}", small.n, absorption(small, &jw)?);
    }
    Ok(())
}
