//! Sign pattern and connectivity of sector matrices in the dual canonical
//! basis, for a chain inside the cone and for one with a positive coupling.

use foel::hamiltonian::{hw_sector, sector_report, ChainSpec};
use foel::qalg::{format_rational, int, rat};

fn show(name: &str, spec: &ChainSpec) -> foel::Result<()> {
    println!("{name}");
    for k in 0..=spec.total_weight() / 2 {
        let sector = hw_sector(spec, k)?;
        if sector.basis.is_empty() {
            continue;
        }
        let r = sector_report(spec, k)?;
        println!(
            "  k={k} dim={} offdiag<=0 {} irreducible {} arcs nondecreasing {}",
            r.dim, r.offdiag_nonpositive, r.irreducible, r.arc_nondecreasing
        );
        for (i, j, v) in sector.matrix.entries() {
            println!(
                "    {} <- {}: {}",
                sector.basis[i].label(),
                sector.basis[j].label(),
                format_rational(v)
            );
        }
    }
    Ok(())
}

fn main() -> foel::Result<()> {
    let cone = ChainSpec::new(
        vec![1, 2, 1],
        vec![vec![int(0), int(-1)], vec![int(0), rat(-1, 2)]],
        rat(1, 2),
    )?;
    show("in the cone, q = 1/2", &cone)?;
    let outside = ChainSpec::new(
        vec![1, 2, 1],
        vec![vec![int(0), int(1)], vec![int(0), int(-1)]],
        rat(1, 2),
    )?;
    show("positive K(1) on the first bond", &outside)?;
    // Only K(2) on the second bond: one sector splits.
    let split = ChainSpec::new(
        vec![1, 2, 2],
        vec![vec![int(0), int(-1)], vec![int(0), int(0), int(-1)]],
        int(1),
    )?;
    show("K(2) alone on the second bond", &split)
}
