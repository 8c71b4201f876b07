//! Urn mixing process: `L` urns of `n` balls, neighbouring urns exchange a
//! random number of uniformly chosen balls. Generators are built per number
//! of red balls and compared through their spectral gaps.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::qalg::{int, Rational};
use crate::repspaces::SparseOperator;
use crate::spectra::symmetric_eigenvalues;

/// `ρ_k({j}) = C(k,j) C(n,k-j) / C(n+k,k)` for `j = 0..=n`.
pub fn hypergeometric_rho(n: usize, k: usize) -> Result<Vec<Rational>> {
    if k > n {
        return domain(format!("k={k} exceeds n={n}"));
    }
    let total = binomial(n + k, k);
    Ok((0..=n)
        .map(|j| {
            if j > k {
                return int(0);
            }
            Rational::new((binomial(k, j) * binomial(n, k - j)).into(), total.into())
        })
        .collect())
}

fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    (0..k as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

fn binomial_f(n: usize, k: usize) -> f64 {
    binomial(n, k) as f64
}

/// Law of the number of exchanged balls on one bond.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Mixing {
    /// `Σ_k w_k ρ_k` with `w` normalized to sum to one.
    HypergeometricMixture {
        weights: Vec<f64>,
    },
    Explicit {
        probs: Vec<f64>,
    },
}

impl Mixing {
    pub fn probabilities(&self, n: usize) -> Result<Vec<f64>> {
        match self {
            Mixing::HypergeometricMixture { weights } => {
                if weights.len() > n + 1 {
                    return domain(format!("{} mixture weights for n={n}", weights.len()));
                }
                check_nonnegative(weights)?;
                let total: f64 = weights.iter().sum();
                if total <= 0.0 {
                    return domain("mixture weights must not all vanish");
                }
                let mut p = vec![0.0; n + 1];
                for (k, w) in weights.iter().enumerate() {
                    for (j, r) in hypergeometric_rho(n, k)?.iter().enumerate() {
                        p[j] += w / total * r.to_f64().unwrap_or(0.0);
                    }
                }
                Ok(p)
            }
            Mixing::Explicit { probs } => {
                if probs.len() > n + 1 {
                    return domain(format!("{} probabilities for n={n}", probs.len()));
                }
                check_nonnegative(probs)?;
                let total: f64 = probs.iter().sum();
                if (total - 1.0).abs() > 1e-12 {
                    return domain(format!("probabilities sum to {total}, not 1"));
                }
                let mut p = probs.clone();
                p.resize(n + 1, 0.0);
                Ok(p)
            }
        }
    }

    pub fn is_hypergeometric_mixture(&self) -> bool {
        matches!(self, Mixing::HypergeometricMixture { .. })
    }
}

fn check_nonnegative(xs: &[f64]) -> Result<()> {
    if xs.iter().any(|x| !(x.is_finite() && *x >= 0.0)) {
        return domain("weights must be finite and nonnegative");
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct UrnModel {
    #[serde(rename = "L")]
    pub sites: usize,
    pub n: usize,
    /// One rate per bond, or a single rate for all bonds.
    pub rates: Vec<f64>,
    /// One law per bond, or a single law for all bonds.
    pub mixing: Vec<Mixing>,
}

impl UrnModel {
    pub fn new(sites: usize, n: usize, rates: Vec<f64>, mixing: Vec<Mixing>) -> Result<Self> {
        let m = UrnModel {
            sites,
            n,
            rates,
            mixing,
        };
        m.validate()?;
        Ok(m)
    }

    /// Same rate and law on every bond.
    pub fn uniform(sites: usize, n: usize, rate: f64, mixing: Mixing) -> Result<Self> {
        Self::new(sites, n, vec![rate], vec![mixing])
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let m: UrnModel = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid urn model: {e}")))?;
        m.validate()?;
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("urn model serializes")
    }

    fn validate(&self) -> Result<()> {
        if self.sites == 0 || self.n == 0 {
            return domain("need at least one urn holding at least one ball");
        }
        let bonds = self.bonds();
        for (what, len) in [("rates", self.rates.len()), ("mixing", self.mixing.len())] {
            if !(len == 1 || len == bonds) && !(bonds == 0 && len == 0) {
                return Err(Error::Shape(format!(
                    "{what} needs 1 or {bonds} entries, got {len}"
                )));
            }
        }
        check_nonnegative(&self.rates)?;
        for b in 0..bonds {
            self.bond_law(b)?;
        }
        Ok(())
    }

    pub fn bonds(&self) -> usize {
        self.sites.saturating_sub(1)
    }

    pub fn rate(&self, bond: usize) -> f64 {
        self.rates[bond.min(self.rates.len() - 1)]
    }

    pub fn mixing_of(&self, bond: usize) -> &Mixing {
        &self.mixing[bond.min(self.mixing.len() - 1)]
    }

    pub fn bond_law(&self, bond: usize) -> Result<Vec<f64>> {
        self.mixing_of(bond).probabilities(self.n)
    }

    pub fn all_hypergeometric_mixtures(&self) -> bool {
        self.mixing.iter().all(Mixing::is_hypergeometric_mixture)
    }
}

/// Red-ball counts `(k_1, ..., k_L)` with `Σ k_x = red_total`, lexicographic.
pub fn configurations(sites: usize, n: usize, red_total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(sites);
    fill(sites, n, red_total, &mut cur, &mut out);
    out
}

fn fill(sites: usize, n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    let remaining = sites - cur.len();
    if remaining == 0 {
        if left == 0 {
            out.push(cur.clone());
        }
        return;
    }
    if left > remaining * n {
        return;
    }
    for k in 0..=n.min(left) {
        cur.push(k);
        fill(sites, n, left - k, cur, out);
        cur.pop();
    }
}

/// Probability that `m` uniformly chosen balls out of `n` contain `r` red
/// ones when `a` are red.
fn draw(n: usize, a: usize, m: usize, r: usize) -> f64 {
    if r > a || m < r || m - r > n - a {
        return 0.0;
    }
    binomial_f(a, r) * binomial_f(n - a, m - r) / binomial_f(n, m)
}

/// Generator on the configurations with `red_total` red balls; rows sum to 0.
pub fn build_urn_generator(model: &UrnModel, red_total: usize) -> Result<SparseOperator<f64>> {
    let n = model.n;
    if red_total > n * model.sites {
        return domain(format!("at most {} red balls fit", n * model.sites));
    }
    let configs = configurations(model.sites, n, red_total);
    let index = |c: &[usize]| configs.binary_search_by(|x| x.as_slice().cmp(c)).ok();
    let mut g = SparseOperator::<f64>::zeros(configs.len(), configs.len());
    for bond in 0..model.bonds() {
        let rate = model.rate(bond);
        let law = model.bond_law(bond)?;
        if rate == 0.0 {
            continue;
        }
        for (i, c) in configs.iter().enumerate() {
            let (a, b) = (c[bond], c[bond + 1]);
            for (m, p) in law.iter().enumerate() {
                if *p == 0.0 {
                    continue;
                }
                for r1 in 0..=m.min(a) {
                    let p1 = draw(n, a, m, r1);
                    if p1 == 0.0 {
                        continue;
                    }
                    for r2 in 0..=m.min(b) {
                        let p2 = draw(n, b, m, r2);
                        if p2 == 0.0 || r1 == r2 {
                            continue;
                        }
                        let mut next = c.clone();
                        next[bond] = a - r1 + r2;
                        next[bond + 1] = b - r2 + r1;
                        let j = index(&next).expect("exchange conserves red balls");
                        let w = rate * p * p1 * p2;
                        g.add_to(i, j, w);
                        g.add_to(i, i, -w);
                    }
                }
            }
        }
    }
    Ok(g)
}

/// `Π_x C(n, k_x)`: the number of ball arrangements behind each configuration.
pub fn reversible_weights(model: &UrnModel, red_total: usize) -> Vec<f64> {
    configurations(model.sites, model.n, red_total)
        .iter()
        .map(|c| c.iter().map(|&k| binomial_f(model.n, k)).product())
        .collect()
}

/// Largest `|π_i G_ij - π_j G_ji|` relative to the largest `|π_i G_ij|`.
pub fn detailed_balance_defect(g: &SparseOperator<f64>, pi: &[f64]) -> f64 {
    let scale = g
        .entries()
        .map(|(i, _, v)| (pi[i] * v).abs())
        .fold(f64::MIN_POSITIVE, f64::max);
    g.entries()
        .map(|(i, j, v)| (pi[i] * v - pi[j] * g.get(j, i)).abs())
        .fold(0.0, f64::max)
        / scale
}

/// Eigenvalues of `-G` in ascending order, through the symmetric matrix
/// `D^{1/2} G D^{-1/2}` with `D` the reversible weights.
pub fn relaxation_spectrum(model: &UrnModel, red_total: usize) -> Result<Vec<f64>> {
    let g = build_urn_generator(model, red_total)?;
    let d: Vec<f64> = reversible_weights(model, red_total)
        .iter()
        .map(|x| x.sqrt())
        .collect();
    let n = g.rows();
    let mut s = vec![vec![0.0; n]; n];
    for (i, j, v) in g.entries() {
        s[i][j] = -d[i] * v / d[j];
    }
    for i in 0..n {
        for j in 0..i {
            let m = 0.5 * (s[i][j] + s[j][i]);
            s[i][j] = m;
            s[j][i] = m;
        }
    }
    symmetric_eigenvalues(&s)
}

#[derive(Clone, Debug)]
pub struct UrnGaps {
    /// `(k, γ_k)` for `k = 1..nL-1`.
    pub gaps: Vec<(usize, f64)>,
    /// `max_k γ_k - min_k γ_k`.
    pub spread: f64,
    pub hypergeometric: bool,
}

impl UrnGaps {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,gamma\n");
        for (k, g) in &self.gaps {
            out.push_str(&format!("{k},{g:.15e}\n"));
        }
        out
    }
}

/// Spectral gap of every sector with `1 <= k <= nL - 1` red balls.
pub fn sector_gaps(model: &UrnModel) -> Result<UrnGaps> {
    let top = model.n * model.sites;
    let gaps = (1..top)
        .map(|k| {
            let spec = relaxation_spectrum(model, k)?;
            Ok((k, spec.get(1).copied().unwrap_or(0.0).max(0.0)))
        })
        .collect::<Result<Vec<_>>>()?;
    let spread = if gaps.is_empty() {
        0.0
    } else {
        let hi = gaps.iter().map(|g| g.1).fold(f64::NEG_INFINITY, f64::max);
        let lo = gaps.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
        hi - lo
    };
    Ok(UrnGaps {
        gaps,
        spread,
        hypergeometric: model.all_hypergeometric_mixtures(),
    })
}
