//! Cap diagrams, their tableaux and the dual canonical basis of a chain.

use foel::qalg::int;
use foel::repspaces::{cap_to_syt, dcb_basis, enumerate_caps};

fn main() -> foel::Result<()> {
    println!("C(5,2) by right legs:");
    for c in enumerate_caps(5, 2)? {
        let t = cap_to_syt(&c);
        println!(
            "  {:?}  {c}  rows {:?} / {:?}",
            c.right_legs(),
            t.first,
            t.second
        );
    }

    println!("\n|C(L,k)| for L <= 10:");
    for l in 0..=10 {
        let counts: Vec<usize> = (0..=l / 2)
            .map(|k| enumerate_caps(l, k).map(|c| c.len()))
            .collect::<foel::Result<_>>()?;
        println!("  L={l:>2}: {counts:?}");
    }

    let weights = [2, 2, 2];
    println!("\nhighest-weight basis of V(2)^3 by arcs:");
    for k in 0..=3 {
        let basis = dcb_basis(&weights, k, &int(1))?;
        let labels: Vec<String> = basis.iter().map(|v| v.label()).collect();
        println!("  k={k}: {labels:?}");
    }
    Ok(())
}
