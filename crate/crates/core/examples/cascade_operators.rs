//! Cascade operators: spectrum against the closed form and the expansion
//! over Temperley-Lieb elements.

use foel::hamiltonian::{bond_operator, cascade_to_tl_coeffs, tl_element};
use foel::qalg::{format_rational, int, rat, Rational};
use foel::repspaces::SparseOperator;
use foel::spectra::{cascade_spectrum_at, symmetric_eigenvalues, symmetrize_site_operator};

fn main() -> foel::Result<()> {
    let (m, n) = (3, 2);
    let q0 = rat(1, 2);
    for k in 0..=n {
        println!("K_{{{m},{n}}}({k}):");
        let at_one: Vec<String> = cascade_spectrum_at(m, n, k, &int(1))?
            .iter()
            .map(|(_, v)| format_rational(v))
            .collect();
        println!("  at q=1: closed form {at_one:?}");
        let op = bond_operator(m, n, k, &q0)?;
        let eig = symmetric_eigenvalues(&symmetrize_site_operator(&op, &[m, n], &q0)?)?;
        let closed: Vec<String> = cascade_spectrum_at(m, n, k, &q0)?
            .iter()
            .map(|(_, v)| format_rational(v))
            .collect();
        println!("  at q=1/2: closed form {closed:?}");
        println!(
            "  eigenvalues {:?}",
            eig.iter()
                .map(|x| (x * 1e9).round() / 1e9)
                .collect::<Vec<_>>()
        );

        let mut sum = SparseOperator::<Rational>::zeros(op.rows(), op.cols());
        for (l, c) in cascade_to_tl_coeffs(m, n, k)? {
            println!("  coefficient of D_{l}: {c}");
            sum = sum.add(&tl_element(m, n, l, &q0)?.scale(&c.specialize(&q0)?))?;
        }
        println!("  expansion reproduces the matrix: {}", sum == op);
    }
    Ok(())
}
