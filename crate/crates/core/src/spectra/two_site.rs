//! Two-site analysis at `q = 1`: energies of `s_1 s_2 - S·S`, Lagrange step
//! polynomials and the spin projectors as polynomials in `S·S`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::qalg::{format_rational, int, rat, Rational};
use crate::repspaces::{SiteSpace, SparseOperator};

/// Dense polynomial in one variable, coefficients in ascending degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coefficients: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coefficients: Vec<Rational>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        Poly { coefficients }
    }

    pub fn zero() -> Self {
        Poly::new(Vec::new())
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `z - a`.
    pub fn linear_root(a: &Rational) -> Self {
        Poly::new(vec![-a.clone(), Rational::one()])
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coefficients
            .get(d)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Poly::new(self.coefficients.iter().map(|x| x * c).collect())
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        self.coefficients
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * z + c)
    }

    /// `p(A)` by Horner's rule.
    pub fn eval_operator(&self, a: &SparseOperator<Rational>) -> Result<SparseOperator<Rational>> {
        let id = SparseOperator::identity(a.rows());
        let mut acc = SparseOperator::zeros(a.rows(), a.cols());
        for c in self.coefficients.iter().rev() {
            acc = acc.matmul(a)?.add(&id.scale(c))?;
        }
        Ok(acc)
    }

    /// The unique polynomial of degree `< points.len()` through `(x_i, y_i)`.
    pub fn interpolate(points: &[(Rational, Rational)]) -> Result<Self> {
        let mut out = Poly::zero();
        for (i, (xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let mut basis = Poly::constant(Rational::one());
            let mut denom = Rational::one();
            for (j, (xj, _)) in points.iter().enumerate() {
                if i != j {
                    if xi == xj {
                        return domain("interpolation nodes must be distinct");
                    }
                    basis = &basis * &Poly::linear_root(xj);
                    denom *= xi - xj;
                }
            }
            out = &out + &basis.scale(&(yi / denom));
        }
        Ok(out)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        Poly::new((0..n).map(|d| self.coeff(d) + rhs.coeff(d)).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let n = self.coefficients.len().max(rhs.coefficients.len());
        Poly::new((0..n).map(|d| self.coeff(d) - rhs.coeff(d)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![Rational::zero(); self.coefficients.len() + rhs.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in rhs.coefficients.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        Poly::new(c)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| match d {
                0 => format_rational(c),
                1 => format!("{}*z", format_rational(c)),
                _ => format!("{}*z^{d}", format_rational(c)),
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Two spins `s_1 = n_1/2`, `s_2 = n_2/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TwoSite {
    pub n1: usize,
    pub n2: usize,
}

impl TwoSite {
    /// Takes the weights `n_i = 2 s_i`.
    pub fn new(n1: usize, n2: usize) -> Result<Self> {
        if n1 == 0 || n2 == 0 {
            return domain("spins must be positive half-integers");
        }
        Ok(TwoSite { n1, n2 })
    }

    pub fn from_spins(s1: &Rational, s2: &Rational) -> Result<Self> {
        let two = int(2);
        let (a, b) = (s1 * &two, s2 * &two);
        if !a.is_integer() || !b.is_integer() {
            return domain("spins must be half-integers");
        }
        let conv = |x: &Rational| usize::try_from(x.to_integer()).ok();
        match (conv(&a), conv(&b)) {
            (Some(n1), Some(n2)) => Self::new(n1, n2),
            _ => domain("spins must be positive half-integers"),
        }
    }

    /// Total spins `|s_1 - s_2|, ..., s_1 + s_2`, as `2j`.
    pub fn spin_set(&self) -> Vec<usize> {
        let lo = self.n1.abs_diff(self.n2);
        (lo..=self.n1 + self.n2).step_by(2).collect()
    }

    pub fn spins(&self) -> Vec<Rational> {
        self.spin_set()
            .into_iter()
            .map(|t| rat(t as i64, 2))
            .collect()
    }

    /// `E(j) = ((s_1+s_2)(s_1+s_2+1) - j(j+1)) / 2`.
    pub fn energy(&self, j: &Rational) -> Rational {
        let s = rat((self.n1 + self.n2) as i64, 2);
        (&s * (&s + int(1)) - j * (j + int(1))) / int(2)
    }

    /// Eigenvalue of `S·S` on total spin `j`.
    pub fn heisenberg_value(&self, j: &Rational) -> Rational {
        let s1 = rat(self.n1 as i64, 2);
        let s2 = rat(self.n2 as i64, 2);
        (j * (j + int(1)) - &s1 * (&s1 + int(1)) - &s2 * (&s2 + int(1))) / int(2)
    }

    /// `Q_j`: equal to 1 on `E(j')` for `j' <= j` and 0 for `j' > j`.
    pub fn step_polynomial(&self, j: &Rational) -> Result<Poly> {
        self.check_spin(j)?;
        let points: Vec<_> = self
            .spins()
            .iter()
            .map(|jp| {
                let y = if jp <= j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                (self.energy(jp), y)
            })
            .collect();
        Poly::interpolate(&points)
    }

    /// `P^{(j)}` as a polynomial in `S·S`.
    pub fn projector_polynomial(&self, j: &Rational) -> Result<Poly> {
        self.check_spin(j)?;
        let points: Vec<_> = self
            .spins()
            .iter()
            .map(|jp| {
                let y = if jp == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                (self.heisenberg_value(jp), y)
            })
            .collect();
        Poly::interpolate(&points)
    }

    /// `X_j = Σ_{j' >= j} P^{(j')}` as a polynomial in `S·S`.
    pub fn indicator_polynomial(&self, j: &Rational) -> Result<Poly> {
        self.check_spin(j)?;
        let mut out = Poly::zero();
        for jp in self.spins().iter().filter(|jp| *jp >= j) {
            out = &out + &self.projector_polynomial(jp)?;
        }
        Ok(out)
    }

    /// Coefficients `c_j` with `(S·S)^p = Σ_j c_j P^{(j)}`.
    pub fn heisenberg_power_in_projectors(&self, p: u32) -> Vec<(Rational, Rational)> {
        self.spins()
            .into_iter()
            .map(|j| {
                let h = self.heisenberg_value(&j);
                let v = (0..p).fold(Rational::one(), |acc, _| acc * &h);
                (j, v)
            })
            .collect()
    }

    /// `S·S = S^z ⊗ S^z + (E ⊗ F + F ⊗ E)/2` on `V(n_1) ⊗ V(n_2)` at `q = 1`.
    pub fn heisenberg_matrix(&self) -> Result<SparseOperator<Rational>> {
        let q1 = int(1);
        let half = rat(1, 2);
        let single = |n: usize| -> Result<_> {
            let sp = SiteSpace::new(&[n])?;
            let sz = SparseOperator::from_triplets(
                n + 1,
                n + 1,
                (0..=n).map(|a| (a, a, rat(n as i64 - 2 * a as i64, 2))),
            )?;
            Ok((sz, sp.e_operator(&q1)?, sp.f_operator(&q1)?))
        };
        let (z1, e1, f1) = single(self.n1)?;
        let (z2, e2, f2) = single(self.n2)?;
        z1.kron(&z2)
            .add(&e1.kron(&f2).add(&f1.kron(&e2))?.scale(&half))
    }

    /// `P^{(j)}` on `V(n_1) ⊗ V(n_2)` from its polynomial in `S·S`.
    pub fn projector_matrix(&self, j: &Rational) -> Result<SparseOperator<Rational>> {
        self.projector_polynomial(j)?
            .eval_operator(&self.heisenberg_matrix()?)
    }

    fn check_spin(&self, j: &Rational) -> Result<()> {
        if !self.spins().contains(j) {
            return domain(format!("total spin {} does not occur", format_rational(j)));
        }
        Ok(())
    }
}
