//! Ground energy per total spin for a chain given as JSON.
//!
//!     cargo run --example foel_verdict -- crates/core/examples/data/mixed_spins.json

use foel::hamiltonian::ChainSpec;
use foel::spectra::foel_verify;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(
            env!("CARGO_MANIFEST_DIR"),
            "/examples/data/spin1_chain.json"
        )
        .to_string()
    });
    let spec = ChainSpec::from_json(&std::fs::read_to_string(&path)?)?;
    let verdict = foel_verify(&spec, 1e-9)?;
    print!("{}", verdict.to_csv());
    println!(
        "holds={} slack={:.3e} in_cone={} every bond coupled={}",
        verdict.holds, verdict.slack, verdict.in_cone, verdict.nondegenerate
    );
    for e in &verdict.energies {
        println!(
            "  spin {} solved by {:?} in {} iterations",
            e.spin, e.method, e.iterations
        );
    }
    Ok(())
}
