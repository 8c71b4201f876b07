use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use super::caps::{enumerate_caps, CapDiagram};
use super::sparse::SparseOperator;
use super::SiteSpace;
use crate::error::{domain, Error, Result};
use crate::qalg::{q_integer, rat, rat_pow, LaurentPoly, Rational};

/// The rational point used to decide whether a projected vector vanishes.
pub fn generic_q() -> Rational {
    rat(1, 2)
}

/// Numerator and denominator of [`generic_q`].
pub const GENERIC_Q: (i64, i64) = (1, 2);

/// A dual canonical basis vector of `V(n_1) ⊗ ... ⊗ V(n_L)`: the projection
/// of a cap diagram on `N = Σ n_i` strands whose through-lines carry
/// `↓...↓↑...↑`.
///
/// Each cap contributes the arc vector `↑↓ - q ↓↑` (a multiple of `δ(1)`).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DualCanonicalVector {
    weights: Vec<usize>,
    cap: CapDiagram,
    downs: usize,
}

impl DualCanonicalVector {
    pub fn new(weights: &[usize], cap: CapDiagram, downs: usize) -> Result<Self> {
        let total: usize = weights.iter().sum();
        if cap.sites() != total {
            return Err(Error::Shape(format!(
                "cap diagram on {} points for total weight {total}",
                cap.sites()
            )));
        }
        if downs > cap.through_lines().len() {
            return domain("more down-arrows than through-lines");
        }
        Ok(DualCanonicalVector {
            weights: weights.to_vec(),
            cap,
            downs,
        })
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn cap(&self) -> &CapDiagram {
        &self.cap
    }

    pub fn arcs(&self) -> usize {
        self.cap.arc_count()
    }

    pub fn downs(&self) -> usize {
        self.downs
    }

    pub fn ups(&self) -> usize {
        self.cap.through_lines().len() - self.downs
    }

    /// `K`-weight: `N - 2·arcs - 2·downs`.
    pub fn weight(&self) -> i64 {
        self.ups() as i64 - self.downs as i64
    }

    pub fn is_highest_weight(&self) -> bool {
        self.downs == 0
    }

    /// Arrow on each through-line, left to right (`true` = `↓`).
    pub fn through_arrows(&self) -> Vec<(usize, bool)> {
        self.cap
            .through_lines()
            .into_iter()
            .enumerate()
            .map(|(i, p)| (p, i < self.downs))
            .collect()
    }

    /// The unprojected vector in `V(1)^{⊗N}` (index convention of the module).
    pub fn tensor_vector(&self, q0: &Rational) -> BTreeMap<usize, Rational> {
        let n = self.cap.sites();
        let bit = |p: usize| 1usize << (n - p);
        let mut base = 0usize;
        for (p, down) in self.through_arrows() {
            if down {
                base |= bit(p);
            }
        }
        let neg_q = -q0.clone();
        let mut terms: Vec<(usize, Rational)> = vec![(base, Rational::one())];
        for &(l, r) in self.cap.caps() {
            let mut next = Vec::with_capacity(terms.len() * 2);
            for (bits, c) in &terms {
                next.push((bits | bit(r), c.clone()));
                next.push((bits | bit(l), c * &neg_q));
            }
            terms = next;
        }
        terms.into_iter().collect()
    }

    /// The projected vector in the multi-site basis.
    pub fn site_vector(&self, q0: &Rational) -> BTreeMap<usize, Rational> {
        let space = SiteSpace::new(&self.weights).expect("positive weights");
        let n = self.cap.sites();
        let mut out: BTreeMap<usize, Rational> = BTreeMap::new();
        for (bits, c) in self.tensor_vector(q0) {
            let mut digits = Vec::with_capacity(self.weights.len());
            let mut exp = 0i64;
            let mut shift = n;
            for &w in &self.weights {
                shift -= w;
                let block = bits >> shift & ((1 << w) - 1);
                digits.push(block.count_ones() as usize);
                exp += block_norm_plus(block, w) as i64;
            }
            let idx = space.index(&digits);
            let v = c * rat_pow(q0, exp);
            let slot = out.entry(idx).or_insert_with(Rational::zero);
            *slot += v;
        }
        out.retain(|_, v| !v.is_zero());
        out
    }

    pub fn is_nonzero_at(&self, q0: &Rational) -> bool {
        !self.site_vector(q0).is_empty()
    }

    /// Mirror image combined with reversing every arrow.
    pub fn reflect(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        DualCanonicalVector {
            weights,
            cap: self.cap.reflect(),
            downs: self.ups(),
        }
    }

    pub fn label(&self) -> String {
        format!("{}|{}", self.cap, self.downs)
    }
}

impl fmt::Display for DualCanonicalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl fmt::Debug for DualCanonicalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn block_norm_plus(bits: usize, len: usize) -> usize {
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

fn total_weight(weights: &[usize]) -> Result<usize> {
    if weights.is_empty() || weights.contains(&0) {
        return domain("site weights must be a nonempty list of positive integers");
    }
    Ok(weights.iter().sum())
}

fn check_nonzero_at(v: &DualCanonicalVector, q0: &Rational) -> Result<()> {
    if !v.is_nonzero_at(q0) {
        return Err(Error::InvariantViolation(format!(
            "basis vector {v} vanishes at this q although it is nonzero at the generic point"
        )));
    }
    Ok(())
}

/// Highest-weight vectors with `k` arcs whose projection is nonzero, in the
/// order of [`enumerate_caps`].
pub fn dcb_basis(weights: &[usize], k: usize, q0: &Rational) -> Result<Vec<DualCanonicalVector>> {
    let n = total_weight(weights)?;
    let g = generic_q();
    let mut out = Vec::new();
    for cap in enumerate_caps(n, k)? {
        let v = DualCanonicalVector::new(weights, cap, 0)?;
        if v.is_nonzero_at(&g) {
            check_nonzero_at(&v, q0)?;
            out.push(v);
        }
    }
    Ok(out)
}

/// All basis vectors of weight `N - 2j`: `arcs + downs = j`, ordered by arc
/// count, then right legs.
pub fn dcb_weight_space(
    weights: &[usize],
    j: usize,
    q0: &Rational,
) -> Result<Vec<DualCanonicalVector>> {
    let n = total_weight(weights)?;
    if j > n {
        return domain(format!("no weight space {} - 2*{j}", n));
    }
    let g = generic_q();
    let mut out = Vec::new();
    for arcs in 0..=j.min(n / 2) {
        let downs = j - arcs;
        if downs > n - 2 * arcs {
            continue;
        }
        for cap in enumerate_caps(n, arcs)? {
            let v = DualCanonicalVector::new(weights, cap, downs)?;
            if v.is_nonzero_at(&g) {
                check_nonzero_at(&v, q0)?;
                out.push(v);
            }
        }
    }
    Ok(out)
}

/// The whole basis, weight space by weight space from the top.
pub fn dcb_full(weights: &[usize], q0: &Rational) -> Result<Vec<DualCanonicalVector>> {
    let n = total_weight(weights)?;
    let mut out = Vec::new();
    for j in 0..=n {
        out.extend(dcb_weight_space(weights, j, q0)?);
    }
    Ok(out)
}

/// Graphical action of `F`: the `i`-th `↑` from the right is flipped with
/// weight `[i]`; if another `↑` through-line sits to its left the two are
/// joined by a new cap, otherwise the pattern becomes `↓^{a+1} ↑^{b-1}`.
/// Terms with vanishing projection are dropped.
pub fn lowering_on_dcb(v: &DualCanonicalVector) -> Vec<(LaurentPoly, DualCanonicalVector)> {
    let through = v.cap.through_lines();
    let b = v.ups();
    let g = generic_q();
    let mut out = Vec::new();
    for i in 1..=b {
        let pos = through.len() - i;
        let w = if i < b {
            let cap = v
                .cap
                .with_cap(through[pos - 1], through[pos])
                .expect("adjacent through-lines can always be joined");
            DualCanonicalVector {
                weights: v.weights.clone(),
                cap,
                downs: v.downs,
            }
        } else {
            DualCanonicalVector {
                weights: v.weights.clone(),
                cap: v.cap.clone(),
                downs: v.downs + 1,
            }
        };
        if w.is_nonzero_at(&g) {
            out.push((q_integer(i as u32), w));
        }
    }
    out
}

/// Graphical action of `E`, obtained from [`lowering_on_dcb`] by reflecting
/// the picture and reversing all arrows.
pub fn raising_on_dcb(v: &DualCanonicalVector) -> Vec<(LaurentPoly, DualCanonicalVector)> {
    lowering_on_dcb(&v.reflect())
        .into_iter()
        .map(|(c, w)| (c, w.reflect()))
        .collect()
}

/// Incremental row echelon form of a list of sparse vectors, used to read
/// off coordinates in a non-orthogonal basis exactly.
#[derive(Clone, Debug)]
pub struct ExactBasis {
    size: usize,
    pivots: Vec<usize>,
    rows: Vec<BTreeMap<usize, Rational>>,
    combos: Vec<Vec<Rational>>,
}

impl ExactBasis {
    pub fn new(vectors: &[BTreeMap<usize, Rational>]) -> Result<Self> {
        let size = vectors.len();
        let mut basis = ExactBasis {
            size,
            pivots: Vec::with_capacity(size),
            rows: Vec::with_capacity(size),
            combos: Vec::with_capacity(size),
        };
        for (j, v) in vectors.iter().enumerate() {
            let mut combo = vec![Rational::zero(); size];
            combo[j] = Rational::one();
            let mut row = v.clone();
            for (p, prow) in basis.pivots.iter().zip(0..) {
                if let Some(x) = row.get(p).cloned() {
                    let c = x / &basis.rows[prow][p];
                    axpy(&mut row, &(-c.clone()), &basis.rows[prow]);
                    for (t, y) in basis.combos[prow].iter().enumerate() {
                        if !y.is_zero() {
                            combo[t] -= &c * y;
                        }
                    }
                }
            }
            let pivot = match row.keys().next() {
                Some(&p) => p,
                None => {
                    return Err(Error::InvariantViolation(format!(
                        "basis vector {j} is a combination of the previous ones"
                    )))
                }
            };
            basis.pivots.push(pivot);
            basis.rows.push(row);
            basis.combos.push(combo);
        }
        Ok(basis)
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// Coordinates of `y` in the original vectors; fails if `y` is outside
    /// their span.
    pub fn coordinates(&self, y: &BTreeMap<usize, Rational>) -> Result<Vec<Rational>> {
        let mut r = y.clone();
        let mut coords = vec![Rational::zero(); self.size];
        for (k, &p) in self.pivots.iter().enumerate() {
            if let Some(x) = r.get(&p).cloned() {
                let c = x / &self.rows[k][&p];
                axpy(&mut r, &(-c.clone()), &self.rows[k]);
                for (t, y) in self.combos[k].iter().enumerate() {
                    if !y.is_zero() {
                        coords[t] += &c * y;
                    }
                }
            }
        }
        if !r.is_empty() {
            return Err(Error::InvariantViolation(
                "vector lies outside the span of the basis".into(),
            ));
        }
        Ok(coords)
    }
}

fn axpy(y: &mut BTreeMap<usize, Rational>, a: &Rational, x: &BTreeMap<usize, Rational>) {
    for (i, v) in x {
        let slot = y.entry(*i).or_insert_with(Rational::zero);
        *slot += a * v;
        if slot.is_zero() {
            y.remove(i);
        }
    }
}

/// Matrix of a site-space operator between two lists of basis vectors:
/// column `j` holds the coordinates of `op · domain[j]` in `codomain`.
pub fn dcb_matrix(
    op: &SparseOperator<Rational>,
    domain_basis: &[DualCanonicalVector],
    codomain_basis: &[DualCanonicalVector],
    q0: &Rational,
) -> Result<SparseOperator<Rational>> {
    let cod_vectors: Vec<_> = codomain_basis.iter().map(|v| v.site_vector(q0)).collect();
    let eb = ExactBasis::new(&cod_vectors)?;
    let mut m = SparseOperator::zeros(codomain_basis.len(), domain_basis.len());
    for (j, v) in domain_basis.iter().enumerate() {
        let image = op.apply_sparse(&v.site_vector(q0));
        for (i, c) in eb.coordinates(&image)?.into_iter().enumerate() {
            m.set(i, j, c);
        }
    }
    let rows: Vec<String> = codomain_basis.iter().map(|v| v.label()).collect();
    let cols: Vec<String> = domain_basis.iter().map(|v| v.label()).collect();
    m.with_labels(rows, cols)
}
