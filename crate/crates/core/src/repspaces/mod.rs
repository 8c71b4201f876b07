//! Matrix realizations on `V(1)^{⊗N}` and on `V(n_1) ⊗ ... ⊗ V(n_L)`.
//!
//! Basis conventions:
//! * `V(1)`: index 0 is `↑ = v^{+1}`, index 1 is `↓ = v^{-1}`. A tensor state
//!   of length `N` has index with bit `N-1-p` set iff position `p` is `↓`
//!   (position 0 is the most significant bit).
//! * `V(n)`: index `a` is `v^{n-2a}`, the vector with `a` down-arrows.
//! * Multi-site spaces are mixed radix with the first site most significant,
//!   so `V(1)^{⊗N}` is the multi-site space with all weights 1.
//!
//! Quantum group: `K v^m = q^m v^m`, `E v^m = [(n-m)/2] v^{m+2}`,
//! `F v^m = [(n+m)/2] v^{m-2}`, coproduct `Δ(E) = E⊗1 + K⊗E`,
//! `Δ(F) = F⊗K^{-1} + 1⊗F`. Intertwiners: `δ(1) = ↓↑ - q^{-1} ↑↓`,
//! `ε(↑↓) = 1`, `ε(↓↑) = -q`.

mod caps;
mod dcb;
mod sparse;

pub use caps::{cap_to_syt, enumerate_caps, syt_to_cap, CapDiagram, Syt};
pub use dcb::{
    dcb_basis, dcb_full, dcb_matrix, dcb_weight_space, lowering_on_dcb, raising_on_dcb,
    DualCanonicalVector, ExactBasis, GENERIC_Q,
};
pub use sparse::{Scalar, SparseOperator};

use num_traits::{One, Zero};

use crate::error::{domain, Error, Result};
use crate::qalg::{q_binomial, q_integer, rat_pow, Rational};
use crate::tl::{DiagramCombination, PlanarDiagram};

/// Largest `N` for which `V(1)^{⊗N}` matrices are built.
pub const MAX_TENSOR_SITES: usize = 16;

fn check_q(q0: &Rational) -> Result<()> {
    if q0 <= &Rational::zero() {
        return domain("q must be positive");
    }
    Ok(())
}

/// A basis vector `v^{s_1} ⊗ ... ⊗ v^{s_N}` of `V(1)^{⊗N}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorState {
    arrows: Vec<i8>,
}

impl TensorState {
    pub fn new(arrows: Vec<i8>) -> Result<Self> {
        if arrows.iter().any(|&a| a != 1 && a != -1) {
            return domain("arrows must be +1 or -1");
        }
        Ok(TensorState { arrows })
    }

    pub fn from_index(n: usize, index: usize) -> Self {
        let arrows = (0..n)
            .map(|p| if index >> (n - 1 - p) & 1 == 1 { -1 } else { 1 })
            .collect();
        TensorState { arrows }
    }

    pub fn index(&self) -> usize {
        let n = self.arrows.len();
        self.arrows
            .iter()
            .enumerate()
            .filter(|(_, &a)| a == -1)
            .fold(0, |acc, (p, _)| acc | 1 << (n - 1 - p))
    }

    pub fn arrows(&self) -> &[i8] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `|s| = Σ s_i`.
    pub fn weight(&self) -> i64 {
        self.arrows.iter().map(|&a| a as i64).sum()
    }

    /// `‖s‖_+`: pairs `i < j` with `s_i = ↑`, `s_j = ↓`.
    pub fn norm_plus(&self) -> usize {
        inversions(&self.arrows, 1)
    }

    /// `‖s‖_-`: pairs `i < j` with `s_i = ↓`, `s_j = ↑`.
    pub fn norm_minus(&self) -> usize {
        inversions(&self.arrows, -1)
    }
}

fn inversions(arrows: &[i8], first: i8) -> usize {
    let mut seen = 0;
    let mut count = 0;
    for &a in arrows {
        if a == first {
            seen += 1;
        } else {
            count += seen;
        }
    }
    count
}

/// `‖s‖_+` for the `len` low bits of `bits` read most significant first.
fn norm_plus_bits(bits: usize, len: usize) -> usize {
    let mut ups = 0;
    let mut count = 0;
    for p in (0..len).rev() {
        if bits >> p & 1 == 0 {
            ups += 1;
        } else {
            count += ups;
        }
    }
    count
}

fn norm_minus_bits(bits: usize, len: usize) -> usize {
    let mut downs = 0;
    let mut count = 0;
    for p in (0..len).rev() {
        if bits >> p & 1 == 1 {
            downs += 1;
        } else {
            count += downs;
        }
    }
    count
}

/// `V(n_1) ⊗ ... ⊗ V(n_L)` with its mixed-radix basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteSpace {
    weights: Vec<usize>,
    strides: Vec<usize>,
    dim: usize,
}

impl SiteSpace {
    pub fn new(weights: &[usize]) -> Result<Self> {
        if weights.contains(&0) {
            return domain("site weights must be positive");
        }
        let mut strides = vec![1; weights.len()];
        let mut dim = 1usize;
        for i in (0..weights.len()).rev() {
            strides[i] = dim;
            dim = dim
                .checked_mul(weights[i] + 1)
                .ok_or_else(|| Error::Resource("site space dimension overflows".into()))?;
        }
        Ok(SiteSpace {
            weights: weights.to_vec(),
            strides,
            dim,
        })
    }

    pub fn fundamental(n: usize) -> Self {
        SiteSpace::new(&vec![1; n]).expect("positive weights")
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().sum()
    }

    /// Down-arrow counts per site.
    pub fn digits(&self, index: usize) -> Vec<usize> {
        self.weights
            .iter()
            .zip(&self.strides)
            .map(|(&n, &s)| index / s % (n + 1))
            .collect()
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    /// `K`-weight `Σ (n_i - 2 a_i)`.
    pub fn weight_of(&self, index: usize) -> i64 {
        self.digits(index)
            .iter()
            .zip(&self.weights)
            .map(|(&a, &n)| n as i64 - 2 * a as i64)
            .sum()
    }

    pub fn label(&self, index: usize) -> String {
        let parts: Vec<String> = self
            .digits(index)
            .iter()
            .zip(&self.weights)
            .map(|(&a, &n)| format!("{}", n as i64 - 2 * a as i64))
            .collect();
        format!("v[{}]", parts.join(","))
    }

    fn qint_table(&self, q0: &Rational) -> Vec<Rational> {
        let max = self.weights.iter().copied().max().unwrap_or(0) as u32;
        (0..=max)
            .map(|k| q_integer(k).specialize(q0).expect("q checked positive"))
            .collect()
    }

    /// Matrix of `E` under the iterated coproduct.
    pub fn e_operator(&self, q0: &Rational) -> Result<SparseOperator<Rational>> {
        check_q(q0)?;
        let qi = self.qint_table(q0);
        let mut m = SparseOperator::zeros(self.dim, self.dim);
        for idx in 0..self.dim {
            let d = self.digits(idx);
            let mut k_exp = 0i64;
            for p in 0..d.len() {
                if d[p] > 0 {
                    m.add_to(idx - self.strides[p], idx, &qi[d[p]] * rat_pow(q0, k_exp));
                }
                k_exp += self.weights[p] as i64 - 2 * d[p] as i64;
            }
        }
        Ok(m)
    }

    /// Matrix of `F` under the iterated coproduct.
    pub fn f_operator(&self, q0: &Rational) -> Result<SparseOperator<Rational>> {
        check_q(q0)?;
        let qi = self.qint_table(q0);
        let mut m = SparseOperator::zeros(self.dim, self.dim);
        for idx in 0..self.dim {
            let d = self.digits(idx);
            let mut kinv_exp = 0i64;
            for p in (0..d.len()).rev() {
                let n = self.weights[p];
                if d[p] < n {
                    m.add_to(
                        idx + self.strides[p],
                        idx,
                        &qi[n - d[p]] * rat_pow(q0, kinv_exp),
                    );
                }
                kinv_exp -= n as i64 - 2 * d[p] as i64;
            }
        }
        Ok(m)
    }

    pub fn k_operator(&self, q0: &Rational) -> Result<SparseOperator<Rational>> {
        self.k_power(q0, 1)
    }

    pub fn k_inv_operator(&self, q0: &Rational) -> Result<SparseOperator<Rational>> {
        self.k_power(q0, -1)
    }

    fn k_power(&self, q0: &Rational, sign: i64) -> Result<SparseOperator<Rational>> {
        check_q(q0)?;
        let mut m = SparseOperator::zeros(self.dim, self.dim);
        for idx in 0..self.dim {
            m.set(idx, idx, rat_pow(q0, sign * self.weight_of(idx)));
        }
        Ok(m)
    }

    /// Diagonal of the invariant form: `Π_i q^{-a_i(n_i-a_i)} / [n_i a_i]`.
    /// `T_n^*` is the adjoint of `T_n` for this form.
    pub fn form_weights(&self, q0: &Rational) -> Result<Vec<Rational>> {
        check_q(q0)?;
        let per_site: Vec<Vec<Rational>> = self
            .weights
            .iter()
            .map(|&n| {
                (0..=n)
                    .map(|a| {
                        rat_pow(q0, -((a * (n - a)) as i64))
                            / q_binomial(n as i64, a as i64).specialize(q0).unwrap()
                    })
                    .collect()
            })
            .collect();
        Ok((0..self.dim)
            .map(|idx| {
                self.digits(idx)
                    .iter()
                    .enumerate()
                    .fold(Rational::one(), |acc, (i, &a)| acc * &per_site[i][a])
            })
            .collect())
    }

    /// Embeds an operator on sites `(i, i+1)` into the whole space.
    pub fn embed_bond(
        &self,
        i: usize,
        local: &SparseOperator<Rational>,
    ) -> Result<SparseOperator<Rational>> {
        if i + 1 >= self.weights.len() {
            return domain(format!("bond {i} out of range"));
        }
        let (m, n) = (self.weights[i], self.weights[i + 1]);
        let ldim = (m + 1) * (n + 1);
        if local.rows() != ldim || local.cols() != ldim {
            return Err(Error::Shape(format!(
                "local operator is {}x{}, bond space has dimension {ldim}",
                local.rows(),
                local.cols()
            )));
        }
        let mut out = SparseOperator::zeros(self.dim, self.dim);
        for idx in 0..self.dim {
            let d = self.digits(idx);
            let base = idx - d[i] * self.strides[i] - d[i + 1] * self.strides[i + 1];
            let col = d[i] * (n + 1) + d[i + 1];
            for r in 0..ldim {
                let v = local.get(r, col);
                if !v.is_zero() {
                    let (ri, rj) = (r / (n + 1), r % (n + 1));
                    out.set(
                        base + ri * self.strides[i] + rj * self.strides[i + 1],
                        idx,
                        v,
                    );
                }
            }
        }
        Ok(out)
    }
}

/// Named generators and intertwiners on `V(1)^{⊗N}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// `1_{i-1} ⊗ δ ⊗ 1_{N-i+1}`: `N -> N+2`, new arc at positions `i, i+1`.
    Delta(usize),
    /// `1_{i-1} ⊗ ε ⊗ 1_{N-i-1}`: `N -> N-2`, closing positions `i, i+1`.
    Epsilon(usize),
    /// `U_i = δ ε` at positions `i, i+1`.
    U(usize),
    E,
    F,
    K,
    KInv,
}

pub fn fundamental_action(
    which: Generator,
    n: usize,
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    check_q(q0)?;
    if n > MAX_TENSOR_SITES {
        return Err(Error::Resource(format!(
            "{n} tensor factors exceed the cap"
        )));
    }
    let space = SiteSpace::fundamental(n);
    match which {
        Generator::E => space.e_operator(q0),
        Generator::F => space.f_operator(q0),
        Generator::K => space.k_operator(q0),
        Generator::KInv => space.k_inv_operator(q0),
        Generator::Delta(i) => {
            if i == 0 || i > n + 1 {
                return domain(format!("δ position {i} out of range for N={n}"));
            }
            let d = PlanarDiagram::identity(i - 1)
                .tensor(&PlanarDiagram::delta())
                .tensor(&PlanarDiagram::identity(n + 1 - i));
            represent_diagram(&d, q0)
        }
        Generator::Epsilon(i) => {
            if i == 0 || i + 1 > n {
                return domain(format!("ε position {i} out of range for N={n}"));
            }
            let d = PlanarDiagram::identity(i - 1)
                .tensor(&PlanarDiagram::epsilon())
                .tensor(&PlanarDiagram::identity(n - i - 1));
            represent_diagram(&d, q0)
        }
        Generator::U(i) => represent_diagram(&PlanarDiagram::u(n, i)?, q0),
    }
}

/// Matrix of a single planar diagram, `2^top x 2^bottom`.
pub fn represent_diagram(d: &PlanarDiagram, q0: &Rational) -> Result<SparseOperator<Rational>> {
    check_q(q0)?;
    let (a, b) = (d.bottom_count(), d.top_count());
    if a.max(b) > MAX_TENSOR_SITES {
        return Err(Error::Resource(
            "diagram too wide for a tensor matrix".into(),
        ));
    }
    let cups = d.cups();
    let caps = d.caps();
    let throughs = d.throughs();
    let neg_q = -q0.clone();
    let neg_qinv = -q0.recip();
    let bit = |len: usize, p: usize| 1usize << (len - 1 - p);

    // Cap assignments: each cap is ↓↑ (coefficient 1) or ↑↓ (coefficient -q^{-1}).
    let mut cap_patterns: Vec<(usize, Rational)> = vec![(0, Rational::one())];
    for &(l, r) in &caps {
        let mut next = Vec::with_capacity(cap_patterns.len() * 2);
        for (bits, c) in &cap_patterns {
            next.push((bits | bit(b, l), c.clone()));
            next.push((bits | bit(b, r), c * &neg_qinv));
        }
        cap_patterns = next;
    }

    let mut m = SparseOperator::zeros(1 << b, 1 << a);
    for s in 0..1usize << a {
        let mut coeff = Rational::one();
        for &(l, r) in &cups {
            let (dl, dr) = (s & bit(a, l) != 0, s & bit(a, r) != 0);
            match (dl, dr) {
                (false, true) => {}
                (true, false) => coeff *= &neg_q,
                _ => {
                    coeff = Rational::zero();
                    break;
                }
            }
        }
        if coeff.is_zero() {
            continue;
        }
        let mut t = 0usize;
        for &(bp, tp) in &throughs {
            if s & bit(a, bp) != 0 {
                t |= bit(b, tp);
            }
        }
        for (bits, c) in &cap_patterns {
            m.add_to(t | bits, s, &coeff * c);
        }
    }
    Ok(m)
}

/// Matrix of a diagram combination at `q = q0`.
pub fn represent(f: &DiagramCombination, q0: &Rational) -> Result<SparseOperator<Rational>> {
    check_q(q0)?;
    let (a, b) = (f.domain(), f.codomain());
    if a.max(b) > MAX_TENSOR_SITES {
        return Err(Error::Resource(
            "combination too wide for a tensor matrix".into(),
        ));
    }
    let mut out = SparseOperator::zeros(1 << b, 1 << a);
    for (d, c) in f.terms() {
        let cv = c.specialize(q0)?;
        out = out.add(&represent_diagram(d, q0)?.scale(&cv))?;
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetrizerDirection {
    /// `T_n: V(1)^{⊗n} -> V(n)`.
    Project,
    /// `T_n^*: V(n) -> V(1)^{⊗n}`.
    Inject,
}

/// `T_n(s) = q^{‖s‖_+} v^{|s|}` and
/// `T_n^*(v^m) = [n a]^{-1} Σ_{s with a downs} q^{-‖s‖_-} s`.
pub fn symmetrizer(
    n: usize,
    direction: SymmetrizerDirection,
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    check_q(q0)?;
    if n == 0 {
        return domain("symmetrizer needs n >= 1");
    }
    if n > MAX_TENSOR_SITES {
        return Err(Error::Resource(format!(
            "symmetrizer T_{n} exceeds the cap"
        )));
    }
    let binoms: Vec<Rational> = (0..=n)
        .map(|a| q_binomial(n as i64, a as i64).specialize(q0).unwrap())
        .collect();
    let mut m = match direction {
        SymmetrizerDirection::Project => SparseOperator::zeros(n + 1, 1 << n),
        SymmetrizerDirection::Inject => SparseOperator::zeros(1 << n, n + 1),
    };
    for s in 0..1usize << n {
        let a = s.count_ones() as usize;
        match direction {
            SymmetrizerDirection::Project => {
                m.set(a, s, rat_pow(q0, norm_plus_bits(s, n) as i64));
            }
            SymmetrizerDirection::Inject => {
                m.set(
                    s,
                    a,
                    rat_pow(q0, -(norm_minus_bits(s, n) as i64)) / &binoms[a],
                );
            }
        }
    }
    Ok(m)
}

/// `⊗_i T_{n_i}`: from `V(1)^{⊗N}` onto the multi-site space.
pub fn site_projection(weights: &[usize], q0: &Rational) -> Result<SparseOperator<Rational>> {
    kron_all(weights, SymmetrizerDirection::Project, q0)
}

/// `⊗_i T_{n_i}^*`: from the multi-site space into `V(1)^{⊗N}`.
pub fn site_injection(weights: &[usize], q0: &Rational) -> Result<SparseOperator<Rational>> {
    kron_all(weights, SymmetrizerDirection::Inject, q0)
}

fn kron_all(
    weights: &[usize],
    dir: SymmetrizerDirection,
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    let total: usize = weights.iter().sum();
    if total > MAX_TENSOR_SITES {
        return Err(Error::Resource(format!(
            "total weight {total} exceeds the tensor cap {MAX_TENSOR_SITES}"
        )));
    }
    let mut out = SparseOperator::identity(1);
    for &n in weights {
        out = out.kron(&symmetrizer(n, dir, q0)?);
    }
    Ok(out)
}

/// `p_n = T_n^* T_n` as a `2^n x 2^n` matrix.
pub fn projector_matrix(n: usize, q0: &Rational) -> Result<SparseOperator<Rational>> {
    if n == 0 {
        return Ok(SparseOperator::identity(1));
    }
    symmetrizer(n, SymmetrizerDirection::Inject, q0)?.matmul(&symmetrizer(
        n,
        SymmetrizerDirection::Project,
        q0,
    )?)
}

/// `(T_{m'} ⊗ T_{n'})(T_m^* ⊗ T_n^*)`: `V(m) ⊗ V(n) -> V(m') ⊗ V(n')`
/// with `m + n = m' + n'`.
pub fn transfer(
    m: usize,
    n: usize,
    m2: usize,
    n2: usize,
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    if m + n != m2 + n2 {
        return domain("transfer must preserve the total weight");
    }
    let proj = kron_pair(m2, n2, SymmetrizerDirection::Project, q0)?;
    let inj = kron_pair(m, n, SymmetrizerDirection::Inject, q0)?;
    proj.matmul(&inj)
}

fn kron_pair(
    m: usize,
    n: usize,
    dir: SymmetrizerDirection,
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    let side = |k: usize| -> Result<SparseOperator<Rational>> {
        if k == 0 {
            Ok(SparseOperator::identity(1))
        } else {
            symmetrizer(k, dir, q0)
        }
    };
    Ok(side(m)?.kron(&side(n)?))
}
