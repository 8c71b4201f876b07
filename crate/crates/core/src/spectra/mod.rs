//! Ground energies per total-spin sector, the ordering verdict, and the
//! closed-form spectrum of a cascade operator.

pub mod jacobi;
pub mod perron;
pub mod two_site;

use std::fmt::Write as _;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::hamiltonian::{
    full_hamiltonian, hw_sector_from, sector_gram, structural_checks, ChainSpec, SectorMatrix,
};
use crate::qalg::{format_rational, q_factorial, rat, to_f64, LaurentPoly, QFraction, Rational};
use crate::repspaces::{Scalar, SiteSpace, SparseOperator};

pub use jacobi::{symmetric_eigen, symmetric_eigenvalues, SymmetricEigen};
pub use perron::{perron_extremal, perron_with_limit, PerronResult, DEFAULT_TOL, MAX_ITERATIONS};
pub use two_site::{Poly, TwoSite};

/// How a sector's ground energy was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// One-dimensional sector: the single diagonal entry.
    Single,
    /// Perron root of `t - H`.
    Perron,
    /// Jacobi on the symmetrized sector matrix (used outside the cone or for
    /// reducible matrices).
    Dense,
}

#[derive(Clone, Debug)]
pub struct SectorEnergy {
    /// Number of arcs; the sector has weight `Σ n_i - 2k`.
    pub k: usize,
    pub sector_weight: usize,
    pub spin: Rational,
    pub dim: usize,
    pub e0: f64,
    /// Positive ground vector in dual canonical coordinates (Perron method only).
    pub perron_vector: Option<Vec<f64>>,
    pub iterations: usize,
    pub residual: f64,
    pub method: Method,
}

/// Ground energy of one highest-weight sector.
pub fn sector_energy(
    sector: &SectorMatrix,
    spec: &ChainSpec,
    k: usize,
    tol: f64,
) -> Result<SectorEnergy> {
    let dim = sector.basis.len();
    let sector_weight = spec.total_weight() - 2 * k;
    let base = SectorEnergy {
        k,
        sector_weight,
        spin: rat(sector_weight as i64, 2),
        dim,
        e0: 0.0,
        perron_vector: None,
        iterations: 0,
        residual: 0.0,
        method: Method::Single,
    };
    if dim == 0 {
        return Err(Error::Domain(format!("sector k={k} is empty")));
    }
    if dim == 1 {
        return Ok(SectorEnergy {
            e0: to_f64(&sector.matrix.get(0, 0)),
            perron_vector: Some(vec![1.0]),
            ..base
        });
    }
    let report = structural_checks(&sector.matrix, &sector.basis, spec);
    if report.offdiag_nonpositive && report.irreducible {
        let t = &report.shift;
        let m = SparseOperator::identity(dim)
            .scale(t)
            .sub(&sector.matrix)?
            .to_f64();
        let r = perron_extremal(&m, tol)?;
        Ok(SectorEnergy {
            e0: to_f64(t) - r.radius,
            perron_vector: Some(r.vector),
            iterations: r.iterations,
            residual: r.residual,
            method: Method::Perron,
            ..base
        })
    } else {
        let s = symmetrize_sector(sector, spec.q())?;
        let eig = symmetric_eigen(&s)?;
        let e0 = eig.values[0];
        let v = &eig.vectors[0];
        let residual = (0..dim)
            .map(|i| ((0..dim).map(|j| s[i][j] * v[j]).sum::<f64>() - e0 * v[i]).abs())
            .fold(0.0, f64::max);
        Ok(SectorEnergy {
            e0,
            residual,
            method: Method::Dense,
            ..base
        })
    }
}

/// Ground energies of every nonempty highest-weight sector, ordered by
/// increasing `k` (decreasing spin).
pub fn sector_energies(spec: &ChainSpec, tol: f64) -> Result<Vec<SectorEnergy>> {
    let h = full_hamiltonian(spec)?;
    let ks: Vec<usize> = (0..=spec.total_weight() / 2).collect();
    let sectors = ks
        .par_iter()
        .map(|&k| hw_sector_from(&h, spec, k).map(|s| (k, s)))
        .collect::<Result<Vec<_>>>()?;
    sectors
        .par_iter()
        .filter(|(_, s)| !s.basis.is_empty())
        .map(|(k, s)| sector_energy(s, spec, *k, tol))
        .collect()
}

/// Symmetric matrix similar to a sector matrix, from the exact `L D L^T`
/// factorization of the Gram matrix of the basis under the invariant form.
pub fn symmetrize_sector(sector: &SectorMatrix, q0: &Rational) -> Result<Vec<Vec<f64>>> {
    let n = sector.basis.len();
    let g = sector_gram(&sector.basis, q0)?;
    let (l, d) = ldl(&g)?;
    let h = sector.matrix.to_dense();
    // B = H L^{-T}, row by row.
    let mut b = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut x = h[i][j].clone();
            for k in 0..j {
                if !l[j][k].is_zero() && !b[i][k].is_zero() {
                    x -= &b[i][k] * &l[j][k];
                }
            }
            b[i][j] = x;
        }
    }
    let sqrt_d: Vec<f64> = d.iter().map(|x| to_f64(x).sqrt()).collect();
    let mut s = vec![vec![0.0; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut a = Rational::zero();
            for k in i..n {
                if !l[k][i].is_zero() && !b[k][j].is_zero() {
                    a += &l[k][i] * &b[k][j];
                }
            }
            s[i][j] = sqrt_d[i] * to_f64(&a) / sqrt_d[j];
        }
    }
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (s[i][j] + s[j][i]);
            s[i][j] = m;
            s[j][i] = m;
        }
    }
    Ok(s)
}

fn ldl(g: &[Vec<Rational>]) -> Result<(Vec<Vec<Rational>>, Vec<Rational>)> {
    let n = g.len();
    let mut l = vec![vec![Rational::zero(); n]; n];
    let mut d = vec![Rational::zero(); n];
    for j in 0..n {
        let mut dj = g[j][j].clone();
        for k in 0..j {
            if !l[j][k].is_zero() {
                dj -= &l[j][k] * &l[j][k] * &d[k];
            }
        }
        if !dj.is_positive() {
            return Err(Error::InvariantViolation(
                "Gram matrix of the sector basis is not positive definite".into(),
            ));
        }
        l[j][j] = Rational::one();
        for i in j + 1..n {
            let mut x = g[i][j].clone();
            for k in 0..j {
                if !l[i][k].is_zero() && !l[j][k].is_zero() {
                    x -= &l[i][k] * &l[j][k] * &d[k];
                }
            }
            l[i][j] = x / &dj;
        }
        d[j] = dj;
    }
    Ok((l, d))
}

/// `W^{1/2} A W^{-1/2}` for an operator on the product basis that is
/// self-adjoint for the invariant form `W`.
pub fn symmetrize_site_operator(
    a: &SparseOperator<Rational>,
    weights: &[usize],
    q0: &Rational,
) -> Result<Vec<Vec<f64>>> {
    let w: Vec<f64> = SiteSpace::new(weights)?
        .form_weights(q0)?
        .iter()
        .map(|x| to_f64(x).sqrt())
        .collect();
    if a.rows() != w.len() || a.cols() != w.len() {
        return Err(Error::Shape(
            "operator does not act on this site space".into(),
        ));
    }
    let mut s = vec![vec![0.0; w.len()]; w.len()];
    for (i, j, v) in a.entries() {
        s[i][j] = w[i] * v.to_f64() / w[j];
    }
    Ok(s)
}

/// Energies ordered by spin together with the ordering verdict.
#[derive(Clone, Debug)]
pub struct FoelVerdict {
    /// Sorted by increasing spin.
    pub energies: Vec<SectorEnergy>,
    /// `E_0` is non-increasing in the spin, up to the tolerance.
    pub holds: bool,
    /// Smallest `E_0(s) - E_0(s')` over consecutive spins `s < s'`.
    pub slack: f64,
    pub in_cone: bool,
    pub nondegenerate: bool,
}

impl FoelVerdict {
    /// A failure inside the cone with every bond coupled contradicts the
    /// ordering theorem and signals a defect.
    pub fn theorem_violation(&self) -> bool {
        self.in_cone && self.nondegenerate && !self.holds
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("spin,E0,sector_dim,iterations,residual\n");
        for e in &self.energies {
            let _ = writeln!(
                out,
                "{},{:.15e},{},{},{:.3e}",
                format_rational(&e.spin),
                e.e0,
                e.dim,
                e.iterations,
                e.residual
            );
        }
        out
    }
}

pub fn foel_verify(spec: &ChainSpec, tol: f64) -> Result<FoelVerdict> {
    let mut energies = sector_energies(spec, DEFAULT_TOL)?;
    energies.sort_by(|a, b| a.spin.cmp(&b.spin));
    let slack = energies
        .windows(2)
        .map(|w| w[0].e0 - w[1].e0)
        .fold(f64::INFINITY, f64::min);
    Ok(FoelVerdict {
        holds: slack >= -tol,
        slack,
        in_cone: spec.foel_cone(),
        nondegenerate: spec.all_bonds_nondegenerate(),
        energies,
    })
}

/// Eigenvalue `λ_j` of `K_{n_1,n_2}(k)` on the summand of weight
/// `n_1 + n_2 - 2j`, for `j = 0..=min(n_1, n_2)`.
pub fn cascade_spectrum_formula(n1: usize, n2: usize, k: usize) -> Result<Vec<(usize, QFraction)>> {
    let (n1, n2) = if n1 >= n2 { (n1, n2) } else { (n2, n1) };
    if k > n2 {
        return Err(Error::Domain(format!("k={k} exceeds min weight {n2}")));
    }
    let f = |x: usize| q_factorial(x as u32);
    Ok((0..=n2)
        .map(|j| {
            let value = if n2 >= j + k {
                QFraction::new(
                    &(&f(n1 + k - j) * &f(n1)) * &(&f(n2 - j) * &f(n2 - k)),
                    &(&f(n1 - j) * &f(n1 + k)) * &(&f(n2 - j - k) * &f(n2)),
                )
            } else {
                QFraction::from_poly(LaurentPoly::zero())
            };
            (j, value)
        })
        .collect())
}

pub fn cascade_spectrum_at(
    n1: usize,
    n2: usize,
    k: usize,
    q0: &Rational,
) -> Result<Vec<(usize, Rational)>> {
    cascade_spectrum_formula(n1, n2, k)?
        .into_iter()
        .map(|(j, v)| Ok((j, v.specialize(q0)?)))
        .collect()
}
