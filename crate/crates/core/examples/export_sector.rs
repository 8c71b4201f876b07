//! Exact sector matrices and their symmetric float form.

use foel::hamiltonian::{hw_sector, ChainSpec};
use foel::qalg::format_rational;
use foel::spectra::{symmetric_eigen, symmetrize_sector};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/data/mixed_spins.json"
    );
    let spec = ChainSpec::from_json(&std::fs::read_to_string(path)?)?;
    let k = 1;
    let sector = hw_sector(&spec, k)?;
    println!(
        "weights {:?}, q = {}, sector k={k}",
        spec.weights(),
        format_rational(spec.q())
    );
    for (i, row) in sector.matrix.to_dense().iter().enumerate() {
        let cells: Vec<String> = row.iter().map(format_rational).collect();
        println!("  {:<16} [{}]", sector.basis[i].label(), cells.join(", "));
    }
    let s = symmetrize_sector(&sector, spec.q())?;
    let eig = symmetric_eigen(&s)?;
    println!("eigenvalues {:?}", eig.values);
    Ok(())
}
