//! Two-site toolkit: projectors onto total spin and step functions of the
//! energy as polynomials in S·S.

use foel::qalg::format_rational;
use foel::spectra::TwoSite;

fn main() -> foel::Result<()> {
    for (n1, n2) in [(2, 2), (3, 1), (3, 2)] {
        let t = TwoSite::new(n1, n2)?;
        println!("s1 = {n1}/2, s2 = {n2}/2");
        for j in t.spins() {
            println!(
                "  j={:>3}: S.S = {:>5}  E = {:>4}  P(z) = {}  Q(z) = {}",
                format_rational(&j),
                format_rational(&t.heisenberg_value(&j)),
                format_rational(&t.energy(&j)),
                t.projector_polynomial(&j)?,
                t.step_polynomial(&j)?
            );
        }
        let p = t.heisenberg_power_in_projectors(2);
        let shown: Vec<String> = p
            .iter()
            .map(|(j, c)| format!("{} P({})", format_rational(c), format_rational(j)))
            .collect();
        println!("  (S.S)^2 = {}", shown.join(" + "));
    }
    Ok(())
}
