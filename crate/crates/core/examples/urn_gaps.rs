//! Spectral gaps of the urn process in every red-ball sector.

use foel::urnsim::{sector_gaps, Mixing, UrnModel};

fn main() -> foel::Result<()> {
    let models = [
        (
            "rho_1",
            Mixing::HypergeometricMixture {
                weights: vec![0.0, 1.0, 0.0],
            },
        ),
        (
            "0.3 rho_1 + 0.7 rho_2",
            Mixing::HypergeometricMixture {
                weights: vec![0.0, 0.3, 0.7],
            },
        ),
        (
            "uniform on {0,1,2}",
            Mixing::Explicit {
                probs: vec![1.0 / 3.0; 3],
            },
        ),
        (
            "always swap 1",
            Mixing::Explicit {
                probs: vec![0.0, 1.0, 0.0],
            },
        ),
    ];
    for (name, mixing) in models {
        let model = UrnModel::uniform(3, 2, 1.0, mixing)?;
        let gaps = sector_gaps(&model)?;
        let shown: Vec<String> = gaps
            .gaps
            .iter()
            .map(|(k, g)| format!("{k}:{g:.6}"))
            .collect();
        println!("{name:<24} spread {:.2e}  {}", gaps.spread, shown.join(" "));
    }
    Ok(())
}
