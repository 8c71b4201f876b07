//! Cascade operators, nearest-neighbour chain Hamiltonians and their
//! highest-weight sectors in the dual canonical basis.

use std::collections::VecDeque;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde_json::Value;

use crate::error::{domain, Error, Result};
use crate::qalg::{format_rational, parse_rational, q_binomial, q_factorial, QFraction, Rational};
use crate::repspaces::{
    dcb_basis, dcb_matrix, dcb_weight_space, represent_diagram, site_injection, site_projection,
    transfer, DualCanonicalVector, SiteSpace, SparseOperator,
};
use crate::tl::PlanarDiagram;

/// Largest total weight `Σ n_i` for which the full multi-site matrix is built.
pub const MAX_FULL_WEIGHT: usize = 14;

/// Site weights `n_i = 2 s_i`, couplings `J_k^{(i)}` and a positive rational `q`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    weights: Vec<usize>,
    couplings: Vec<Vec<Rational>>,
    q: Rational,
}

impl ChainSpec {
    /// `couplings[i][k]` is `J_k` on bond `(i, i+1)` for `k = 0..=min(n_i, n_{i+1})`;
    /// shorter lists are padded with zeros.
    pub fn new(weights: Vec<usize>, couplings: Vec<Vec<Rational>>, q: Rational) -> Result<Self> {
        if weights.is_empty() || weights.contains(&0) {
            return domain("site weights must be a nonempty list of positive integers");
        }
        if couplings.len() + 1 != weights.len() {
            return Err(Error::Shape(format!(
                "{} sites need {} bonds, got {}",
                weights.len(),
                weights.len() - 1,
                couplings.len()
            )));
        }
        if !q.is_positive() {
            return domain("q must be positive");
        }
        let mut padded = Vec::with_capacity(couplings.len());
        for (i, row) in couplings.into_iter().enumerate() {
            let max = weights[i].min(weights[i + 1]);
            if row.len() > max + 1 {
                return domain(format!(
                    "bond {i} has couplings up to k={}, but min(n_i, n_i+1) = {max}",
                    row.len() - 1
                ));
            }
            let mut row = row;
            row.resize(max + 1, Rational::zero());
            padded.push(row);
        }
        Ok(ChainSpec {
            weights,
            couplings: padded,
            q,
        })
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn couplings(&self) -> &[Vec<Rational>] {
        &self.couplings
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn with_q(&self, q: Rational) -> Result<Self> {
        Self::new(self.weights.clone(), self.couplings.clone(), q)
    }

    pub fn sites(&self) -> usize {
        self.weights.len()
    }

    pub fn total_weight(&self) -> usize {
        self.weights.iter().sum()
    }

    pub fn coupling(&self, bond: usize, k: usize) -> Rational {
        self.couplings
            .get(bond)
            .and_then(|r| r.get(k))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// `J_k^{(i)} <= 0` for every bond and every `k >= 1`.
    pub fn foel_cone(&self) -> bool {
        self.couplings
            .iter()
            .all(|row| row.iter().skip(1).all(|j| !j.is_positive()))
    }

    /// Some `J_k^{(i)}` with `k >= 1` is nonzero.
    pub fn bond_nondegenerate(&self, bond: usize) -> bool {
        self.couplings[bond].iter().skip(1).any(|j| !j.is_zero())
    }

    pub fn all_bonds_nondegenerate(&self) -> bool {
        (0..self.couplings.len()).all(|b| self.bond_nondegenerate(b))
    }

    /// Parses `{"weights": [...], "couplings": [[...], ...], "q": "p/r"}`;
    /// numbers may be JSON numbers or strings such as `"-1/3"`.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid JSON: {e}")))?;
        let weights = v
            .get("weights")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("missing \"weights\" array".into()))?
            .iter()
            .map(|w| {
                w.as_u64()
                    .map(|x| x as usize)
                    .ok_or_else(|| Error::Parse(format!("weight {w} is not a nonnegative integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        let couplings = match v.get("couplings") {
            None => vec![Vec::new(); weights.len().saturating_sub(1)],
            Some(c) => c
                .as_array()
                .ok_or_else(|| Error::Parse("\"couplings\" must be an array".into()))?
                .iter()
                .map(|row| {
                    row.as_array()
                        .ok_or_else(|| {
                            Error::Parse("each bond needs an array of couplings".into())
                        })?
                        .iter()
                        .map(json_rational)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        };
        let q = match v.get("q") {
            None => Rational::from_integer(1.into()),
            Some(q) => json_rational(q)?,
        };
        Self::new(weights, couplings, q)
    }

    pub fn to_json(&self) -> String {
        let couplings: Vec<Vec<String>> = self
            .couplings
            .iter()
            .map(|r| r.iter().map(format_rational).collect())
            .collect();
        serde_json::json!({
            "weights": self.weights,
            "couplings": couplings,
            "q": format_rational(&self.q),
        })
        .to_string()
    }
}

pub(crate) fn json_rational(v: &Value) -> Result<Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("expected a number, got {other}"))),
    }
}

/// `K_{m,n}(k) = (U_{m,n}^{m+k,n-k})^* U_{m,n}^{m+k,n-k}` on `V(m) ⊗ V(n)`,
/// for `-m <= k <= n`.
pub fn cascade_operator(
    m: usize,
    n: usize,
    k: i64,
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    if k < -(m as i64) || k > n as i64 {
        return domain(format!("cascade index {k} outside -{m}..={n}"));
    }
    let m2 = (m as i64 + k) as usize;
    let n2 = (n as i64 - k) as usize;
    let u = transfer(m, n, m2, n2, q0)?;
    let u_adj = transfer(m2, n2, m, n, q0)?;
    u_adj.matmul(&u)
}

/// The cascade operator used on a bond with weights `(m, n)`: `k` units are
/// moved into the larger site, `K_{m,n}(k)` if `m >= n` and `K_{m,n}(-k)`
/// otherwise.
pub fn bond_operator(
    m: usize,
    n: usize,
    k: usize,
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    if k > m.min(n) {
        return domain(format!("bond index {k} exceeds min({m}, {n})"));
    }
    if m >= n {
        cascade_operator(m, n, k as i64, q0)
    } else {
        cascade_operator(m, n, -(k as i64), q0)
    }
}

/// Coefficients `[m l][k l] / [m+k l]`, `l = 0..=k`, of `K_{m,n}(k)` over the
/// elements [`tl_element`]`(m, n, l)`.
pub fn cascade_to_tl_coeffs(m: usize, n: usize, k: usize) -> Result<Vec<(usize, QFraction)>> {
    if k > m.min(n) {
        return domain(format!("cascade index {k} exceeds min({m}, {n})"));
    }
    let (m, k) = (m as i64, k as i64);
    Ok((0..=k)
        .map(|l| {
            (
                l as usize,
                QFraction::new(&q_binomial(m, l) * &q_binomial(k, l), q_binomial(m + k, l)),
            )
        })
        .collect())
}

/// `(T_m ⊗ T_n) D_l (T_m^* ⊗ T_n^*)` with `D_l` the `l` nested cup-caps at
/// the junction of the two sites.
pub fn tl_element(m: usize, n: usize, l: usize, q0: &Rational) -> Result<SparseOperator<Rational>> {
    let d = represent_diagram(&PlanarDiagram::junction_arcs(m, n, l)?, q0)?;
    site_projection(&[m, n], q0)?
        .matmul(&d)?
        .matmul(&site_injection(&[m, n], q0)?)
}

/// The coefficient `Q_{jkl}^{(i)}` for a bond with weights `(n_i, n_{i+1})`;
/// the arguments are swapped when `n_i < n_{i+1}`.
pub fn q_matrix_elements(ni: usize, nj: usize, j: usize, k: usize, l: usize) -> QFraction {
    let (a, b) = if ni >= nj { (ni, nj) } else { (nj, ni) };
    let valid = k >= l && b >= j + k && a >= j + l;
    if !valid {
        return QFraction::from_poly(crate::qalg::LaurentPoly::zero());
    }
    let f = |x: usize| q_factorial(x as u32);
    let num = [f(a), f(k), f(b - j), f(b - k), f(a + k - j - l)]
        .iter()
        .fold(crate::qalg::LaurentPoly::one(), |acc, x| &acc * x);
    let den = [f(b), f(l), f(a + k), f(k - l), f(b - j - k), f(a - j - l)]
        .iter()
        .fold(crate::qalg::LaurentPoly::one(), |acc, x| &acc * x);
    QFraction::new(num, den)
}

/// How a Hamiltonian is represented.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Representation {
    /// The whole space `V(n_1) ⊗ ... ⊗ V(n_L)` in its product basis.
    FullTensor,
    /// The highest-weight space of weight `Σ n_i - 2k` in the dual canonical basis.
    HwSector(usize),
}

/// `H = Σ_i Σ_k J_k^{(i)} K^{(i)}(k)` on the product space.
pub fn full_hamiltonian(spec: &ChainSpec) -> Result<SparseOperator<Rational>> {
    if spec.total_weight() > MAX_FULL_WEIGHT {
        return Err(Error::Resource(format!(
            "total weight {} exceeds the cap {MAX_FULL_WEIGHT}",
            spec.total_weight()
        )));
    }
    let space = SiteSpace::new(spec.weights())?;
    let mut h = SparseOperator::zeros(space.dim(), space.dim());
    for bond in 0..spec.sites().saturating_sub(1) {
        let (m, n) = (spec.weights[bond], spec.weights[bond + 1]);
        let mut local = SparseOperator::zeros((m + 1) * (n + 1), (m + 1) * (n + 1));
        for (k, j) in spec.couplings[bond].iter().enumerate() {
            if !j.is_zero() {
                local = local.add(&bond_operator(m, n, k, &spec.q)?.scale(j))?;
            }
        }
        if !local.is_zero() {
            h = h.add(&space.embed_bond(bond, &local)?)?;
        }
    }
    Ok(h)
}

pub fn build_hamiltonian(
    spec: &ChainSpec,
    representation: Representation,
) -> Result<SparseOperator<Rational>> {
    match representation {
        Representation::FullTensor => full_hamiltonian(spec),
        Representation::HwSector(k) => Ok(hw_sector(spec, k)?.matrix),
    }
}

/// A Hamiltonian restricted to a span of dual canonical basis vectors.
#[derive(Clone, Debug)]
pub struct SectorMatrix {
    pub basis: Vec<DualCanonicalVector>,
    pub matrix: SparseOperator<Rational>,
}

fn check_sector(spec: &ChainSpec, k: usize) -> Result<()> {
    if 2 * k > spec.total_weight() {
        return domain(format!(
            "sector k={k} does not exist for total weight {}",
            spec.total_weight()
        ));
    }
    Ok(())
}

/// `H` on the highest-weight space of weight `Σ n_i - 2k`.
pub fn hw_sector(spec: &ChainSpec, k: usize) -> Result<SectorMatrix> {
    check_sector(spec, k)?;
    let h = full_hamiltonian(spec)?;
    hw_sector_from(&h, spec, k)
}

/// As [`hw_sector`], reusing an already assembled product-space matrix.
pub fn hw_sector_from(
    h: &SparseOperator<Rational>,
    spec: &ChainSpec,
    k: usize,
) -> Result<SectorMatrix> {
    check_sector(spec, k)?;
    let basis = dcb_basis(spec.weights(), k, spec.q())?;
    let matrix = dcb_matrix(h, &basis, &basis, spec.q())?;
    Ok(SectorMatrix { basis, matrix })
}

/// `H` on the whole weight space of weight `Σ n_i - 2j`, highest-weight and
/// descendant vectors together.
pub fn weight_space_sector(
    h: &SparseOperator<Rational>,
    spec: &ChainSpec,
    j: usize,
) -> Result<SectorMatrix> {
    check_sector(spec, 0)?;
    let basis = dcb_weight_space(spec.weights(), j, spec.q())?;
    let matrix = dcb_matrix(h, &basis, &basis, spec.q())?;
    Ok(SectorMatrix { basis, matrix })
}

/// Gram matrix `B^T W B` of basis vectors under the invariant form.
pub fn sector_gram(basis: &[DualCanonicalVector], q0: &Rational) -> Result<Vec<Vec<Rational>>> {
    let Some(first) = basis.first() else {
        return Ok(Vec::new());
    };
    let w = SiteSpace::new(first.weights())?.form_weights(q0)?;
    let vecs: Vec<_> = basis.iter().map(|v| v.site_vector(q0)).collect();
    let d = basis.len();
    let mut g = vec![vec![Rational::zero(); d]; d];
    for i in 0..d {
        for j in i..d {
            let mut s = Rational::zero();
            for (x, a) in &vecs[i] {
                if let Some(b) = vecs[j].get(x) {
                    s += a * b * &w[*x];
                }
            }
            g[i][j] = s.clone();
            g[j][i] = s;
        }
    }
    Ok(g)
}

/// Outcome of the sign and connectivity checks on a sector matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct StructuralReport {
    pub dim: usize,
    /// Every off-diagonal entry is `<= 0`.
    pub offdiag_nonpositive: bool,
    /// A positive off-diagonal entry `(row, col, value)`, if any.
    pub positive_offdiag: Option<(usize, usize, Rational)>,
    /// The off-diagonal support graph is strongly connected.
    pub irreducible: bool,
    /// A pair `(from, to)` with no path, if any.
    pub unreachable: Option<(usize, usize)>,
    /// `t` in `t - H`: largest diagonal entry plus one.
    pub shift: Rational,
    /// `H` never lowers the arc count (checked on the weight space).
    pub arc_nondecreasing: bool,
    /// An entry mapping more arcs to fewer, if any.
    pub arc_violation: Option<(usize, usize)>,
    /// The spec lies in the cone `J_k <= 0`.
    pub foel_cone: bool,
}

/// Sign, connectivity and arc-order checks on `h`, the matrix of a
/// Hamiltonian in the dual canonical vectors `basis`.
pub fn structural_checks(
    h: &SparseOperator<Rational>,
    basis: &[DualCanonicalVector],
    spec: &ChainSpec,
) -> StructuralReport {
    let dim = h.rows();
    let positive_offdiag = h
        .entries()
        .find(|(i, j, v)| i != j && v.is_positive())
        .map(|(i, j, v)| (i, j, v.clone()));
    let unreachable = first_unreachable(h);
    let shift = h
        .diagonal()
        .into_iter()
        .max()
        .unwrap_or_else(Rational::zero)
        + Rational::from_integer(1.into());
    let arc_violation = h
        .entries()
        .find(|(i, j, _)| basis[*i].arcs() < basis[*j].arcs())
        .map(|(i, j, _)| (i, j));
    StructuralReport {
        dim,
        offdiag_nonpositive: positive_offdiag.is_none(),
        positive_offdiag,
        irreducible: unreachable.is_none(),
        unreachable,
        shift,
        arc_nondecreasing: arc_violation.is_none(),
        arc_violation,
        foel_cone: spec.foel_cone(),
    }
}

/// Checks the highest-weight sector `k` and, for the arc order, the full
/// weight space of the same weight.
pub fn sector_report(spec: &ChainSpec, k: usize) -> Result<StructuralReport> {
    let h = full_hamiltonian(spec)?;
    let hw = hw_sector_from(&h, spec, k)?;
    let mut report = structural_checks(&hw.matrix, &hw.basis, spec);
    let ws = weight_space_sector(&h, spec, k)?;
    let ws_report = structural_checks(&ws.matrix, &ws.basis, spec);
    report.arc_nondecreasing = ws_report.arc_nondecreasing;
    report.arc_violation = ws_report.arc_violation;
    Ok(report)
}

fn reachable(h: &SparseOperator<Rational>, transpose: bool) -> Vec<bool> {
    let n = h.rows();
    let mut adj = vec![Vec::new(); n];
    for (i, j, _) in h.entries() {
        if i != j {
            if transpose {
                adj[i].push(j);
            } else {
                adj[j].push(i);
            }
        }
    }
    let mut seen = vec![false; n];
    if n == 0 {
        return seen;
    }
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                queue.push_back(y);
            }
        }
    }
    seen
}

fn first_unreachable(h: &SparseOperator<Rational>) -> Option<(usize, usize)> {
    if let Some(t) = reachable(h, false).iter().position(|s| !s) {
        return Some((0, t));
    }
    reachable(h, true).iter().position(|s| !s).map(|t| (t, 0))
}

/// Exact residuals of `[H, E]`, `[H, F]`, `[H, K]` (all zero for a symmetric `H`).
pub fn commutes_with_quantum_group(spec: &ChainSpec) -> Result<bool> {
    let h = full_hamiltonian(spec)?;
    let space = SiteSpace::new(spec.weights())?;
    for g in [
        space.e_operator(spec.q())?,
        space.f_operator(spec.q())?,
        space.k_operator(spec.q())?,
    ] {
        if !h.commutator(&g)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A random chain in the cone: `2..=5` sites with `Σ n_i <= max_weight`,
/// `J_k <= 0` for `k >= 1` (each bond gets at least one nonzero), `J_0`
/// of either sign, all with small denominators.
pub fn random_cone_spec<R: Rng>(rng: &mut R, max_weight: usize, q: Rational) -> Result<ChainSpec> {
    if max_weight < 2 {
        return domain("a chain needs total weight at least 2");
    }
    let sites = rng.gen_range(2..=5.min(max_weight));
    let mut weights = vec![1; sites];
    let mut budget = rng.gen_range(sites..=max_weight) - sites;
    while budget > 0 {
        let i = rng.gen_range(0..sites);
        if weights[i] < 4 {
            weights[i] += 1;
            budget -= 1;
        } else if weights.iter().all(|&w| w >= 4) {
            break;
        }
    }
    let mut couplings = Vec::with_capacity(sites - 1);
    for b in 0..sites - 1 {
        let top = weights[b].min(weights[b + 1]);
        let mut row = vec![Rational::new(
            rng.gen_range(-3..=3).into(),
            rng.gen_range(1..=3).into(),
        )];
        for _ in 1..=top {
            let j = if rng.gen_bool(0.3) {
                Rational::zero()
            } else {
                Rational::new(
                    (-rng.gen_range(1..=6i64)).into(),
                    rng.gen_range(1..=4i64).into(),
                )
            };
            row.push(j);
        }
        if row.iter().skip(1).all(Zero::is_zero) {
            let k = rng.gen_range(1..=top);
            row[k] = Rational::from_integer((-1).into());
        }
        couplings.push(row);
    }
    ChainSpec::new(weights, couplings, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::{int, q_integer, rat};

    fn qs() -> Vec<Rational> {
        vec![rat(1, 2), int(1), int(2)]
    }

    #[test]
    fn cascade_zero_is_identity() {
        for q0 in qs() {
            for m in 1..=3 {
                for n in 1..=3 {
                    assert_eq!(
                        cascade_operator(m, n, 0, &q0).unwrap(),
                        SparseOperator::identity((m + 1) * (n + 1))
                    );
                }
            }
        }
        assert!(cascade_operator(2, 2, 3, &int(1)).is_err());
        assert!(cascade_operator(2, 2, -3, &int(1)).is_err());
    }

    #[test]
    fn cascade_is_idempotent_projector_for_full_transfer() {
        // Moving everything into one site projects onto the top irreducible.
        let q0 = rat(1, 2);
        let k = cascade_operator(2, 2, 2, &q0).unwrap();
        assert_eq!(k.matmul(&k).unwrap(), k);
    }

    #[test]
    fn cascade_to_tl_matches_matrices() {
        for q0 in qs() {
            for m in 1..=3 {
                for n in 1..=3 {
                    if m < n {
                        continue;
                    }
                    for k in 0..=n {
                        let mut sum = SparseOperator::zeros((m + 1) * (n + 1), (m + 1) * (n + 1));
                        for (l, c) in cascade_to_tl_coeffs(m, n, k).unwrap() {
                            let t = tl_element(m, n, l, &q0).unwrap();
                            sum = sum.add(&t.scale(&c.specialize(&q0).unwrap())).unwrap();
                        }
                        assert_eq!(sum, cascade_operator(m, n, k as i64, &q0).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn tl_coefficient_examples() {
        let c = cascade_to_tl_coeffs(1, 1, 1).unwrap();
        assert!(c[1].1.equals(&QFraction::new(
            crate::qalg::LaurentPoly::one(),
            q_integer(2)
        )));
        let c = cascade_to_tl_coeffs(2, 2, 1).unwrap();
        assert!(c[1].1.equals(&QFraction::new(q_integer(2), q_integer(3))));
        let c = cascade_to_tl_coeffs(3, 2, 0).unwrap();
        assert_eq!(c.len(), 1);
    }

    #[test]
    fn q_elements() {
        let v = q_matrix_elements(1, 1, 0, 1, 1);
        assert!(v.equals(&QFraction::new(
            crate::qalg::LaurentPoly::one(),
            q_integer(2)
        )));
        assert!(q_matrix_elements(3, 2, 0, 1, 2).is_zero());
        assert!(q_matrix_elements(2, 3, 0, 1, 1).equals(&q_matrix_elements(3, 2, 0, 1, 1)));
    }

    #[test]
    fn spin_one_chain_sectors_and_symmetry() {
        let spec = ChainSpec::new(
            vec![2, 2, 2],
            vec![vec![int(0), int(-1)], vec![int(0), int(-1)]],
            int(1),
        )
        .unwrap();
        assert!(commutes_with_quantum_group(&spec).unwrap());
        let dims: Vec<usize> = (0..=3)
            .map(|k| hw_sector(&spec, k).unwrap().basis.len())
            .collect();
        assert_eq!(dims, vec![1, 2, 3, 1]);
        let zero = ChainSpec::new(vec![2, 2, 2], vec![vec![], vec![]], int(1)).unwrap();
        assert!(full_hamiltonian(&zero).unwrap().is_zero());
    }

    #[test]
    fn mixed_weights_commute_at_generic_q() {
        let spec = ChainSpec::new(
            vec![1, 3, 2],
            vec![vec![int(1), rat(-1, 2)], vec![int(0), int(-1), rat(-2, 3)]],
            rat(1, 2),
        )
        .unwrap();
        assert!(commutes_with_quantum_group(&spec).unwrap());
        for k in 0..=3 {
            let r = sector_report(&spec, k).unwrap();
            assert!(r.offdiag_nonpositive, "k={k}: {r:?}");
            assert!(r.irreducible, "k={k}: {r:?}");
            assert!(r.arc_nondecreasing, "k={k}: {r:?}");
        }
    }

    #[test]
    fn xxz_type_chain_structure() {
        let spec = ChainSpec::new(
            vec![1, 1, 1],
            vec![vec![int(0), int(-1)], vec![int(0), int(-1)]],
            rat(1, 2),
        )
        .unwrap();
        for k in 0..=1 {
            let r = sector_report(&spec, k).unwrap();
            assert!(r.offdiag_nonpositive && r.irreducible);
        }
    }

    #[test]
    fn spec_json_round_trip() {
        let text = r#"{"weights":[2,1],"couplings":[["0","-1/3"]],"q":"1/2"}"#;
        let spec = ChainSpec::from_json(text).unwrap();
        assert_eq!(spec.coupling(0, 1), rat(-1, 3));
        assert_eq!(ChainSpec::from_json(&spec.to_json()).unwrap(), spec);
        let spec =
            ChainSpec::from_json(r#"{"weights":[1,1],"couplings":[[0,-0.5]],"q":1}"#).unwrap();
        assert_eq!(spec.coupling(0, 1), rat(-1, 2));
        assert!(ChainSpec::from_json(r#"{"weights":[1,1],"couplings":[[0,1,2]]}"#).is_err());
        assert!(ChainSpec::from_json(r#"{"weights":[1,1],"couplings":[]}"#).is_err());
        assert!(ChainSpec::from_json("not json").is_err());
        assert!(ChainSpec::from_json(r#"{"weights":[1],"q":"-1"}"#).is_err());
    }

    #[test]
    fn random_specs_are_in_the_cone() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let s = random_cone_spec(&mut rng, 10, rat(1, 2)).unwrap();
            assert!(s.foel_cone() && s.all_bonds_nondegenerate());
            assert!(s.total_weight() <= 10 && s.sites() >= 2);
        }
    }

    #[test]
    fn cone_flags() {
        let spec = ChainSpec::new(vec![2, 2], vec![vec![int(5), int(-1), int(0)]], int(1)).unwrap();
        assert!(spec.foel_cone());
        assert!(spec.all_bonds_nondegenerate());
        let spec = ChainSpec::new(vec![2, 2], vec![vec![int(0), int(0), int(1)]], int(1)).unwrap();
        assert!(!spec.foel_cone());
    }
}
