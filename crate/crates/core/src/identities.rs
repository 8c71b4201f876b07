//! The Jones-Wenzl identity suite: diagrammatic checks in exact Laurent
//! arithmetic and tensor-space checks at rational `q`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qalg::{format_rational, int, rat, QFraction, Rational};
use crate::repspaces::{projector_matrix, represent_diagram, SparseOperator};
use crate::tl::{
    check_positive_expansion, compose, jones_wenzl_sequence, jwfk_decompose, single_clasp_terms,
    triangle_reduce, wenzl_bent_form, DiagramCombination, JonesWenzl, PlanarDiagram,
};

type Job = (String, String, Box<dyn Fn() -> Result<bool> + Send + Sync>);

/// Largest projector size the suite accepts.
pub const MAX_SUITE_N: usize = 8;

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct IdentityCheck {
    pub identity: String,
    pub case: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub max_n: usize,
    pub passed: bool,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check(identity: &str, case: String, outcome: Result<bool>) -> IdentityCheck {
    match outcome {
        Ok(passed) => IdentityCheck {
            identity: identity.into(),
            case,
            passed,
            detail: None,
        },
        Err(e) => IdentityCheck {
            identity: identity.into(),
            case,
            passed: false,
            detail: Some(e.to_string()),
        },
    }
}

pub fn test_points() -> Vec<Rational> {
    vec![rat(1, 2), int(1), int(2)]
}

/// `p_n p_n = p_n`, i.e. `P ∘ P = [n]! P` for `P = [n]! p_n`.
pub fn idempotent(jw: &JonesWenzl) -> Result<bool> {
    Ok(compose(&jw.scaled, &jw.scaled)? == jw.scaled.scale(&jw.denominator))
}

/// `U_i p_n = p_n U_i = 0` for `1 <= i < n`.
pub fn annihilation(jw: &JonesWenzl) -> Result<bool> {
    for i in 1..jw.n {
        let u = DiagramCombination::u(jw.n, i)?;
        if !compose(&jw.scaled, &u)?.is_zero() || !compose(&u, &jw.scaled)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `(p_m ⊗ 1) p_n = p_n (p_m ⊗ 1) = p_n` for `m <= n`.
pub fn absorption(small: &JonesWenzl, big: &JonesWenzl) -> Result<bool> {
    let pad = small
        .scaled
        .tensor(&DiagramCombination::identity(big.n - small.n));
    let expected = big.scaled.scale(&small.denominator);
    Ok(compose(&big.scaled, &pad)? == expected && compose(&pad, &big.scaled)? == expected)
}

/// The recursive and the bent form of the Wenzl relation agree.
pub fn wenzl_forms_agree(prev: &JonesWenzl, next: &JonesWenzl) -> Result<bool> {
    Ok(wenzl_bent_form(prev)? == next.scaled)
}

pub fn positive_expansion(jw: &JonesWenzl) -> Result<bool> {
    match check_positive_expansion(jw) {
        Ok(()) => Ok(true),
        Err(Error::InvariantViolation(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn projector_or_identity(n: usize, q0: &Rational) -> Result<SparseOperator<Rational>> {
    if n == 0 {
        Ok(SparseOperator::identity(1))
    } else {
        projector_matrix(n, q0)
    }
}

fn identity_on(strands: usize) -> SparseOperator<Rational> {
    SparseOperator::identity(1 << strands)
}

fn value(c: &QFraction, q0: &Rational) -> Result<Rational> {
    c.specialize(q0)
}

/// `p_{m+n} = Σ_k c_{m,n,k} (p_m ⊗ p_n) D_k (p_m ⊗ p_n)` as matrices on
/// `V(1)^{⊗(m+n)}`, `D_k` the `k` nested cup-caps at the junction.
pub fn jwfk_matrices(m: usize, n: usize, q0: &Rational) -> Result<bool> {
    let lhs = projector_matrix(m + n, q0)?;
    let pp = projector_or_identity(m, q0)?.kron(&projector_or_identity(n, q0)?);
    let mut rhs = SparseOperator::zeros(lhs.rows(), lhs.cols());
    for (k, c) in jwfk_decompose(m, n) {
        let d = represent_diagram(&PlanarDiagram::junction_arcs(m, n, k)?, q0)?;
        let term = pp.matmul(&d)?.matmul(&pp)?;
        rhs = rhs.add(&term.scale(&value(&c, q0)?))?;
    }
    Ok(lhs == rhs)
}

/// `(1_{n-1} ⊗ ε)(p_n ⊗ 1) = Σ_k [k]/[n] p_{n-1} (1_{k-1} ⊗ ε ⊗ 1_{n-k})`.
pub fn single_clasp_matrices(n: usize, q0: &Rational) -> Result<bool> {
    let close = represent_diagram(
        &PlanarDiagram::identity(n - 1).tensor(&PlanarDiagram::epsilon()),
        q0,
    )?;
    let lhs = close.matmul(&projector_matrix(n, q0)?.kron(&identity_on(1)))?;
    let p_prev = projector_or_identity(n - 1, q0)?;
    let mut rhs = SparseOperator::zeros(lhs.rows(), lhs.cols());
    for (c, d) in single_clasp_terms(n)? {
        let term = p_prev.matmul(&represent_diagram(&d, q0)?)?;
        rhs = rhs.add(&term.scale(&value(&c, q0)?))?;
    }
    Ok(lhs == rhs)
}

/// The triangle with sides `j+k`, `k+l`, `j+l`: closing `l` strands of
/// `p_{j+k+l}` against `p_{k+l} ⊗ p_{j+l}` leaves `triangle_reduce(j,k,l)`
/// times the same diagram without the inner projector.
pub fn triangle_matrices(j: usize, k: usize, l: usize, q0: &Rational) -> Result<bool> {
    let outer = projector_or_identity(j + k, q0)?;
    let feet = projector_or_identity(k + l, q0)?.kron(&projector_or_identity(j + l, q0)?);
    let eps = represent_diagram(&PlanarDiagram::nested_epsilon(l), q0)?;
    let inner = projector_or_identity(j + k + l, q0)?.kron(&identity_on(l));
    let lhs = outer
        .matmul(&identity_on(j + k).kron(&eps))?
        .matmul(&inner)?
        .matmul(&feet)?;
    let middle = identity_on(k).kron(&eps).kron(&identity_on(j));
    let rhs = outer.matmul(&middle)?.matmul(&feet)?;
    Ok(lhs == rhs.scale(&value(&triangle_reduce(j, k, l), q0)?))
}

/// Runs every check up to size `max_n`. `inject_fault` corrupts the
/// idempotency test so the failure path can be exercised.
pub fn run_identities(max_n: usize, inject_fault: bool) -> Result<IdentityReport> {
    if max_n > MAX_SUITE_N {
        return Err(Error::Resource(format!(
            "identity suite is capped at n = {MAX_SUITE_N}, got {max_n}"
        )));
    }
    let seq = jones_wenzl_sequence(max_n)?;
    let mut checks: Vec<IdentityCheck> = seq
        .par_iter()
        .flat_map_iter(|jw| {
            let n = jw.n;
            let mut out = Vec::new();
            let idem = if inject_fault {
                idempotent(jw).map(|ok| ok && n == 0)
            } else {
                idempotent(jw)
            };
            out.push(check("idempotent", format!("n={n}"), idem));
            out.push(check("annihilation", format!("n={n}"), annihilation(jw)));
            out.push(check(
                "positive_expansion",
                format!("n={n}"),
                positive_expansion(jw),
            ));
            if n >= 2 {
                out.push(check(
                    "wenzl_forms",
                    format!("n={n}"),
                    wenzl_forms_agree(&seq[n - 2], jw),
                ));
            }
            for small in &seq[..n - 1] {
                out.push(check(
                    "absorption",
                    format!("m={},n={n}", small.n),
                    absorption(small, jw),
                ));
            }
            out
        })
        .collect();
    let mut jobs: Vec<Job> = Vec::new();
    for q0 in test_points() {
        let qs = format_rational(&q0);
        for total in 2..=max_n {
            for m in 1..total {
                let q = q0.clone();
                jobs.push((
                    "jwfk".into(),
                    format!("m={m},n={},q={qs}", total - m),
                    Box::new(move || jwfk_matrices(m, total - m, &q)),
                ));
            }
        }
        for n in 1..=max_n.min(6) {
            let q = q0.clone();
            jobs.push((
                "single_clasp".into(),
                format!("n={n},q={qs}"),
                Box::new(move || single_clasp_matrices(n, &q)),
            ));
        }
        for j in 0..=max_n {
            for k in 0..=max_n {
                for l in 1..=max_n {
                    if j + k + 2 * l > max_n.min(8) || j + k == 0 {
                        continue;
                    }
                    let q = q0.clone();
                    jobs.push((
                        "triangle".into(),
                        format!("j={j},k={k},l={l},q={qs}"),
                        Box::new(move || triangle_matrices(j, k, l, &q)),
                    ));
                }
            }
        }
    }
    checks.extend(
        jobs.par_iter()
            .map(|(name, case, f)| check(name, case.clone(), f()))
            .collect::<Vec<_>>(),
    );
    checks.sort_by(|a, b| (&a.identity, &a.case).cmp(&(&b.identity, &b.case)));
    let passed = checks.iter().all(|c| c.passed);
    Ok(IdentityReport {
        max_n,
        passed,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let r = run_identities(4, false).unwrap();
        assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        assert!(r.checks.iter().any(|c| c.identity == "jwfk"));
        assert!(r.checks.iter().any(|c| c.identity == "triangle"));
    }

    #[test]
    fn empty_and_capped() {
        let r = run_identities(0, false).unwrap();
        assert!(r.checks.is_empty() && r.passed);
        assert!(matches!(run_identities(9, false), Err(Error::Resource(_))));
    }

    #[test]
    fn fault_is_named() {
        let r = run_identities(2, true).unwrap();
        assert!(!r.passed);
        assert!(r.failures().all(|c| c.identity == "idempotent"));
    }
}
