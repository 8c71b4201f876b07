//! The Temperley-Lieb category over `Q[q, q^{-1}]`.
//!
//! A [`PlanarDiagram`] from `a` to `b` has `a` bottom points (numbered
//! `0..a`, left to right) and `b` top points (numbered `a..a+b`, left to
//! right). The bottom is the domain and the top the codomain, so diagrams are
//! read bottom to top. Closed loops evaluate to `-[2]`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{domain, Error, Result};
use crate::qalg::{q_binomial, q_factorial, q_integer, LaurentPoly, QFraction};

/// A noncrossing perfect matching between `bottom` and `top` boundary points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanarDiagram {
    bottom: usize,
    top: usize,
    pairing: Vec<usize>,
}

impl PlanarDiagram {
    /// Builds a diagram from the partner array of all `bottom + top` points.
    pub fn new(bottom: usize, top: usize, pairing: Vec<usize>) -> Result<Self> {
        let total = bottom + top;
        if pairing.len() != total {
            return Err(Error::Shape(format!(
                "pairing has {} entries, expected {total}",
                pairing.len()
            )));
        }
        for (p, &r) in pairing.iter().enumerate() {
            if r >= total || r == p || pairing[r] != p {
                return domain(format!("point {p} is not part of a perfect matching"));
            }
        }
        let d = PlanarDiagram {
            bottom,
            top,
            pairing,
        };
        if !d.is_noncrossing() {
            return domain("pairing has crossing strands");
        }
        Ok(d)
    }

    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let total = bottom + top;
        let mut pairing = vec![usize::MAX; total];
        for &(x, y) in pairs {
            if x >= total || y >= total || pairing[x] != usize::MAX || pairing[y] != usize::MAX {
                return domain(format!("invalid pair ({x}, {y})"));
            }
            pairing[x] = y;
            pairing[y] = x;
        }
        Self::new(bottom, top, pairing)
    }

    pub fn identity(n: usize) -> Self {
        let mut pairing = vec![0; 2 * n];
        for i in 0..n {
            pairing[i] = n + i;
            pairing[n + i] = i;
        }
        PlanarDiagram {
            bottom: n,
            top: n,
            pairing,
        }
    }

    /// `k` nested arcs created from nothing: `0 -> 2k`.
    pub fn nested_delta(k: usize) -> Self {
        let mut pairing = vec![0; 2 * k];
        for i in 0..k {
            pairing[i] = 2 * k - 1 - i;
            pairing[2 * k - 1 - i] = i;
        }
        PlanarDiagram {
            bottom: 0,
            top: 2 * k,
            pairing,
        }
    }

    /// `k` nested arcs closed off: `2k -> 0`.
    pub fn nested_epsilon(k: usize) -> Self {
        let d = Self::nested_delta(k);
        PlanarDiagram {
            bottom: 2 * k,
            top: 0,
            pairing: d.pairing,
        }
    }

    pub fn delta() -> Self {
        Self::nested_delta(1)
    }

    pub fn epsilon() -> Self {
        Self::nested_epsilon(1)
    }

    /// The generator `U_i` on `n` strands (`1 <= i < n`), a cup-cap at `i, i+1`.
    pub fn u(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return domain(format!("U_{i} needs 1 <= i < {n}"));
        }
        let cupcap = Self::nested_epsilon(1).then(&Self::nested_delta(1))?.0;
        Ok(Self::identity(i - 1)
            .tensor(&cupcap)
            .tensor(&Self::identity(n - i - 1)))
    }

    /// `1_{m-k} ⊗ (δ_k ∘ ε_k) ⊗ 1_{n-k}`: `k` nested cup-caps straddling the
    /// junction between `m` left and `n` right strands.
    pub fn junction_arcs(m: usize, n: usize, k: usize) -> Result<Self> {
        if k > m || k > n {
            return domain(format!("{k} junction arcs need k <= min({m}, {n})"));
        }
        let mid = Self::nested_epsilon(k).then(&Self::nested_delta(k))?.0;
        Ok(Self::identity(m - k)
            .tensor(&mid)
            .tensor(&Self::identity(n - k)))
    }

    pub fn bottom_count(&self) -> usize {
        self.bottom
    }

    pub fn top_count(&self) -> usize {
        self.top
    }

    pub fn pairing(&self) -> &[usize] {
        &self.pairing
    }

    pub fn partner(&self, p: usize) -> usize {
        self.pairing[p]
    }

    pub fn is_bottom(&self, p: usize) -> bool {
        p < self.bottom
    }

    /// Position of a boundary point when walking around the boundary circle:
    /// bottom left to right, then top right to left.
    fn circle_position(&self, p: usize) -> usize {
        if p < self.bottom {
            p
        } else {
            self.bottom + (self.top - 1 - (p - self.bottom))
        }
    }

    pub fn is_noncrossing(&self) -> bool {
        let total = self.bottom + self.top;
        let mut at = vec![0usize; total];
        for p in 0..total {
            at[self.circle_position(p)] = p;
        }
        let mut stack: Vec<usize> = Vec::new();
        for &p in &at {
            let r = self.pairing[p];
            if stack.last() == Some(&r) {
                stack.pop();
            } else {
                stack.push(p);
            }
        }
        stack.is_empty()
    }

    /// Pairs of bottom points joined to each other, as `(left, right)`.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        (0..self.bottom)
            .filter_map(|p| {
                let r = self.pairing[p];
                (r < self.bottom && p < r).then_some((p, r))
            })
            .collect()
    }

    /// Pairs of top points joined to each other, as top indices `(left, right)`.
    pub fn caps(&self) -> Vec<(usize, usize)> {
        (self.bottom..self.bottom + self.top)
            .filter_map(|p| {
                let r = self.pairing[p];
                (r >= self.bottom && p < r).then(|| (p - self.bottom, r - self.bottom))
            })
            .collect()
    }

    /// Through strands as `(bottom index, top index)`.
    pub fn throughs(&self) -> Vec<(usize, usize)> {
        (0..self.bottom)
            .filter_map(|p| {
                let r = self.pairing[p];
                (r >= self.bottom).then(|| (p, r - self.bottom))
            })
            .collect()
    }

    pub fn through_count(&self) -> usize {
        self.throughs().len()
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, other: &PlanarDiagram) -> PlanarDiagram {
        let (a1, b1, a2, b2) = (self.bottom, self.top, other.bottom, other.top);
        let map_self = |p: usize| if p < a1 { p } else { a1 + a2 + (p - a1) };
        let map_other = |p: usize| {
            if p < a2 {
                a1 + p
            } else {
                a1 + a2 + b1 + (p - a2)
            }
        };
        let mut pairing = vec![0; a1 + a2 + b1 + b2];
        for p in 0..a1 + b1 {
            pairing[map_self(p)] = map_self(self.pairing[p]);
        }
        for p in 0..a2 + b2 {
            pairing[map_other(p)] = map_other(other.pairing[p]);
        }
        PlanarDiagram {
            bottom: a1 + a2,
            top: b1 + b2,
            pairing,
        }
    }

    /// Stacks `next` on top of `self` (`next ∘ self`). Returns the reduced
    /// diagram and the number of closed loops removed.
    pub fn then(&self, next: &PlanarDiagram) -> Result<(PlanarDiagram, usize)> {
        if self.top != next.bottom {
            return Err(Error::Shape(format!(
                "cannot stack a {}->{} diagram on a {}->{} diagram",
                next.bottom, next.top, self.bottom, self.top
            )));
        }
        let (a, m, c) = (self.bottom, self.top, next.top);
        let mut pairing = vec![usize::MAX; a + c];
        let mut seen = vec![false; m];

        // Follows a strand that enters the middle layer at `mid` coming from
        // `lower` (true: from `self`) until it reaches an outer boundary point.
        let walk = |mut mid: usize, mut from_lower: bool, seen: &mut Vec<bool>| -> usize {
            loop {
                seen[mid] = true;
                if from_lower {
                    let r = next.pairing[mid];
                    if r >= m {
                        return a + (r - m);
                    }
                    mid = r;
                } else {
                    let r = self.pairing[a + mid];
                    if r < a {
                        return r;
                    }
                    mid = r - a;
                }
                seen[mid] = true;
                from_lower = !from_lower;
            }
        };

        for p in 0..a + c {
            if pairing[p] != usize::MAX {
                continue;
            }
            let end = if p < a {
                let r = self.pairing[p];
                if r < a {
                    r
                } else {
                    walk(r - a, true, &mut seen)
                }
            } else {
                let r = next.pairing[m + (p - a)];
                if r >= m {
                    a + (r - m)
                } else {
                    walk(r, false, &mut seen)
                }
            };
            pairing[p] = end;
            pairing[end] = p;
        }

        let mut loops = 0;
        for start in 0..m {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut mid = start;
            loop {
                seen[mid] = true;
                let r = next.pairing[mid];
                seen[r] = true;
                mid = self.pairing[a + r] - a;
                if mid == start {
                    break;
                }
            }
        }
        Ok((
            PlanarDiagram {
                bottom: a,
                top: c,
                pairing,
            },
            loops,
        ))
    }

    /// Bends the rightmost bottom point up so it becomes the rightmost top
    /// point: `a -> b` becomes `a-1 -> b+1`.
    pub fn bend_last_bottom_up(&self) -> Result<PlanarDiagram> {
        if self.bottom == 0 {
            return domain("no bottom point to bend");
        }
        let (a, b) = (self.bottom, self.top);
        let map = |p: usize| {
            if p + 1 < a {
                p
            } else if p + 1 == a {
                a - 1 + b
            } else {
                p - 1
            }
        };
        let mut pairing = vec![0; a + b];
        for p in 0..a + b {
            pairing[map(p)] = map(self.pairing[p]);
        }
        Ok(PlanarDiagram {
            bottom: a - 1,
            top: b + 1,
            pairing,
        })
    }

    /// Bends the rightmost top point down so it becomes the rightmost bottom
    /// point: `a -> b` becomes `a+1 -> b-1`.
    pub fn bend_last_top_down(&self) -> Result<PlanarDiagram> {
        if self.top == 0 {
            return domain("no top point to bend");
        }
        let (a, b) = (self.bottom, self.top);
        let map = |p: usize| {
            if p < a {
                p
            } else if p + 1 == a + b {
                a
            } else {
                p + 1
            }
        };
        let mut pairing = vec![0; a + b];
        for p in 0..a + b {
            pairing[map(p)] = map(self.pairing[p]);
        }
        Ok(PlanarDiagram {
            bottom: a + 1,
            top: b - 1,
            pairing,
        })
    }
}

impl fmt::Debug for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PlanarDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |p: usize| {
            if p < self.bottom {
                format!("b{p}")
            } else {
                format!("t{}", p - self.bottom)
            }
        };
        write!(f, "[{}->{}:", self.bottom, self.top)?;
        for p in 0..self.pairing.len() {
            let r = self.pairing[p];
            if p < r {
                write!(f, " {}-{}", name(p), name(r))?;
            }
        }
        write!(f, "]")
    }
}

fn noncrossing_matchings(
    points: &[usize],
    out: &mut Vec<Vec<(usize, usize)>>,
    acc: &mut Vec<(usize, usize)>,
) {
    if points.is_empty() {
        out.push(acc.clone());
        return;
    }
    let first = points[0];
    for j in (1..points.len()).step_by(2) {
        acc.push((first, points[j]));
        let inner = &points[1..j];
        let outer = &points[j + 1..];
        let mut inner_sets = Vec::new();
        noncrossing_matchings(inner, &mut inner_sets, &mut Vec::new());
        for ins in inner_sets {
            let len = acc.len();
            acc.extend(ins);
            noncrossing_matchings(outer, out, acc);
            acc.truncate(len);
        }
        acc.pop();
    }
}

/// All planar diagrams `a -> b`, sorted by their partner arrays.
pub fn enumerate_tl_basis(a: usize, b: usize) -> Result<Vec<PlanarDiagram>> {
    if (a + b) % 2 == 1 {
        return domain(format!(
            "{a} + {b} boundary points cannot be perfectly matched"
        ));
    }
    // Enumerate on the boundary circle, then translate back to labels.
    let total = a + b;
    let label = |c: usize| if c < a { c } else { a + (b - 1 - (c - a)) };
    let circle: Vec<usize> = (0..total).collect();
    let mut sets = Vec::new();
    noncrossing_matchings(&circle, &mut sets, &mut Vec::new());
    let mut out: Vec<PlanarDiagram> = sets
        .into_iter()
        .map(|pairs| {
            let mut pairing = vec![0; total];
            for (x, y) in pairs {
                let (x, y) = (label(x), label(y));
                pairing[x] = y;
                pairing[y] = x;
            }
            PlanarDiagram {
                bottom: a,
                top: b,
                pairing,
            }
        })
        .collect();
    out.sort();
    Ok(out)
}

/// The loop value `-[2]`.
pub fn loop_value() -> LaurentPoly {
    -q_integer(2)
}

/// A formal `Q[q, q^{-1}]`-linear combination of diagrams `domain -> codomain`.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramCombination {
    domain: usize,
    codomain: usize,
    terms: BTreeMap<PlanarDiagram, LaurentPoly>,
}

impl DiagramCombination {
    pub fn zero(domain: usize, codomain: usize) -> Self {
        DiagramCombination {
            domain,
            codomain,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_diagram(d: PlanarDiagram) -> Self {
        Self::from_term(LaurentPoly::one(), d)
    }

    pub fn from_term(c: LaurentPoly, d: PlanarDiagram) -> Self {
        let mut out = Self::zero(d.bottom, d.top);
        out.add_term(c, d);
        out
    }

    pub fn identity(n: usize) -> Self {
        Self::from_diagram(PlanarDiagram::identity(n))
    }

    pub fn u(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(PlanarDiagram::u(n, i)?))
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &BTreeMap<PlanarDiagram, LaurentPoly> {
        &self.terms
    }

    pub fn coefficient(&self, d: &PlanarDiagram) -> LaurentPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, c: LaurentPoly, d: PlanarDiagram) {
        assert_eq!(
            (d.bottom, d.top),
            (self.domain, self.codomain),
            "diagram shape mismatch"
        );
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&d) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&d);
                }
            }
            None => {
                self.terms.insert(d, c);
            }
        }
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if (self.domain, self.codomain) != (other.domain, other.codomain) {
            return Err(Error::Shape(format!(
                "{}->{} vs {}->{}",
                self.domain, self.codomain, other.domain, other.codomain
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(c.clone(), d.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::from(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.domain, self.codomain);
        if c.is_zero() {
            return out;
        }
        for (d, x) in &self.terms {
            out.terms.insert(d.clone(), x * c);
        }
        out
    }

    /// Divides every coefficient by `c`; fails unless all divisions are exact.
    pub fn exact_div(&self, c: &LaurentPoly) -> Result<Self> {
        let mut out = Self::zero(self.domain, self.codomain);
        for (d, x) in &self.terms {
            out.terms.insert(d.clone(), x.exact_div(c)?);
        }
        Ok(out)
    }

    /// `g ∘ f`: first `f` (this), then `g`.
    pub fn then(&self, g: &DiagramCombination) -> Result<Self> {
        compose(self, g)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.domain + other.domain, self.codomain + other.codomain);
        for (d1, c1) in &self.terms {
            for (d2, c2) in &other.terms {
                out.add_term(c1 * c2, d1.tensor(d2));
            }
        }
        out
    }

    /// Applies a diagram relabeling (such as a bend) to every term.
    pub fn map_diagrams(
        &self,
        f: impl Fn(&PlanarDiagram) -> Result<PlanarDiagram>,
    ) -> Result<Self> {
        let mut out: Option<Self> = None;
        for (d, c) in &self.terms {
            let nd = f(d)?;
            let o = out.get_or_insert_with(|| Self::zero(nd.bottom, nd.top));
            o.add_term(c.clone(), nd);
        }
        Ok(out.unwrap_or_else(|| Self::zero(self.domain, self.codomain)))
    }
}

impl fmt::Debug for DiagramCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for DiagramCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0[{}->{}]", self.domain, self.codomain);
        }
        let mut first = true;
        for (d, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}){d}")?;
        }
        Ok(())
    }
}

/// Composition `g ∘ f` of `f: a -> b` and `g: b -> c`.
pub fn compose(f: &DiagramCombination, g: &DiagramCombination) -> Result<DiagramCombination> {
    if f.codomain != g.domain {
        return Err(Error::Shape(format!(
            "codomain {} of the first map differs from domain {} of the second",
            f.codomain, g.domain
        )));
    }
    // Group products by (diagram, loop count) so each loop power is applied once.
    let mut grouped: BTreeMap<(PlanarDiagram, usize), LaurentPoly> = BTreeMap::new();
    for (d1, c1) in &f.terms {
        let mut inner: BTreeMap<(PlanarDiagram, usize), LaurentPoly> = BTreeMap::new();
        for (d2, c2) in &g.terms {
            let (d, loops) = d1.then(d2)?;
            inner
                .entry((d, loops))
                .and_modify(|x| *x += c2)
                .or_insert_with(|| c2.clone());
        }
        for (key, c2) in inner {
            let prod = c1 * &c2;
            grouped
                .entry(key)
                .and_modify(|x| *x += &prod)
                .or_insert(prod);
        }
    }
    let loop_val = loop_value();
    let mut powers = vec![LaurentPoly::one()];
    let mut out = DiagramCombination::zero(f.domain, g.codomain);
    for ((d, loops), c) in grouped {
        while powers.len() <= loops {
            let next = powers.last().unwrap() * &loop_val;
            powers.push(next);
        }
        out.add_term(&c * &powers[loops], d);
    }
    Ok(out)
}

/// The Jones-Wenzl projector `p_n`, stored fraction-free as `[n]! p_n`.
#[derive(Clone, Debug, PartialEq)]
pub struct JonesWenzl {
    pub n: usize,
    /// `[n]! p_n`, a combination with Laurent polynomial coefficients.
    pub scaled: DiagramCombination,
    /// `[n]!`.
    pub denominator: LaurentPoly,
}

impl JonesWenzl {
    /// The coefficient of `d` in `p_n` as a fraction.
    pub fn coefficient(&self, d: &PlanarDiagram) -> QFraction {
        QFraction::new(self.scaled.coefficient(d), self.denominator.clone())
    }
}

/// All projectors `p_1..=p_nmax` via the Wenzl recursion
/// `[n]! p_n = [n] A + A U_{n-1} A / [n-2]!` with `A = [n-1]! p_{n-1} ⊗ 1`.
pub fn jones_wenzl_sequence(nmax: usize) -> Result<Vec<JonesWenzl>> {
    let mut out: Vec<JonesWenzl> = Vec::with_capacity(nmax);
    for n in 1..=nmax {
        let scaled = if n == 1 {
            DiagramCombination::identity(1)
        } else {
            let a = out[n - 2].scaled.tensor(&DiagramCombination::identity(1));
            let aua = a.then(&DiagramCombination::u(n, n - 1)?)?.then(&a)?;
            let corr = aua.exact_div(&q_factorial(n as u32 - 2)).map_err(|_| {
                Error::InvariantViolation(format!("Wenzl correction for n={n} is not integral"))
            })?;
            a.scale(&q_integer(n as u32)).add(&corr)?
        };
        out.push(JonesWenzl {
            n,
            scaled,
            denominator: q_factorial(n as u32),
        });
    }
    Ok(out)
}

pub fn jones_wenzl(n: usize) -> Result<JonesWenzl> {
    if n == 0 {
        return domain("Jones-Wenzl projector needs n >= 1");
    }
    Ok(jones_wenzl_sequence(n)?.pop().unwrap())
}

/// The second form of the Wenzl relation, in which the correction term is
/// assembled from two bent copies of `p_{n-1}` meeting along `n-2` strands.
/// Takes `[n-1]! p_{n-1}` and returns `[n]! p_n`.
pub fn wenzl_bent_form(prev: &JonesWenzl) -> Result<DiagramCombination> {
    let n = prev.n + 1;
    if n < 2 {
        return domain("the bent Wenzl form needs n >= 2");
    }
    let upper = prev.scaled.map_diagrams(|d| d.bend_last_bottom_up())?;
    let lower = prev.scaled.map_diagrams(|d| d.bend_last_top_down())?;
    let a = prev.scaled.tensor(&DiagramCombination::identity(1));
    let corr = lower
        .then(&upper)?
        .exact_div(&q_factorial(n as u32 - 2))
        .map_err(|_| {
            Error::InvariantViolation(format!("bent Wenzl term for n={n} is not integral"))
        })?;
    a.scale(&q_integer(n as u32)).add(&corr)
}

/// Coefficients `P(d)` of `[n]! p_n`, checked to lie in `q^{n(n-1)/2} N[q^{-1}]`.
pub fn jw_positive_expansion(n: usize) -> Result<BTreeMap<PlanarDiagram, LaurentPoly>> {
    let jw = jones_wenzl(n)?;
    check_positive_expansion(&jw)?;
    Ok(jw.scaled.terms().clone())
}

pub fn check_positive_expansion(jw: &JonesWenzl) -> Result<()> {
    let top = (jw.n * (jw.n - 1) / 2) as i64;
    for (d, c) in jw.scaled.terms() {
        let ok = c.has_natural_coefficients() && c.max_exponent().is_some_and(|e| e <= top);
        if !ok {
            return Err(Error::InvariantViolation(format!(
                "coefficient {c} of {d} in [{}]! p_{} is not in q^{top} N[q^-1]",
                jw.n, jw.n
            )));
        }
    }
    Ok(())
}

/// `c_{m,n,k} = [m k][n k] / [m+n k]` for `k = 0..=min(m,n)`.
pub fn jwfk_decompose(m: usize, n: usize) -> Vec<(usize, QFraction)> {
    let (m, n) = (m as i64, n as i64);
    (0..=m.min(n))
        .map(|k| {
            (
                k as usize,
                QFraction::new(&q_binomial(m, k) * &q_binomial(n, k), q_binomial(m + n, k)),
            )
        })
        .collect()
}

/// `[j+k]! [k+l]! / ([k]! [j+k+l]!)`.
pub fn triangle_reduce(j: usize, k: usize, l: usize) -> QFraction {
    let f = |x: usize| q_factorial(x as u32);
    QFraction::new(&f(j + k) * &f(k + l), &f(k) * &f(j + k + l))
}

/// The terms `([k]/[n], 1^{k-1} ⊗ ε ⊗ 1^{n-k})`, `k = 1..=n`, of the single
/// clasp expansion of `(1_{n-1} ⊗ ε) ∘ (p_n ⊗ 1)`; each diagram is to be
/// preceded by nothing and followed by `p_{n-1}`.
pub fn single_clasp_terms(n: usize) -> Result<Vec<(QFraction, PlanarDiagram)>> {
    if n == 0 {
        return domain("single clasp expansion needs n >= 1");
    }
    Ok((1..=n)
        .map(|k| {
            let d = PlanarDiagram::identity(k - 1)
                .tensor(&PlanarDiagram::epsilon())
                .tensor(&PlanarDiagram::identity(n - k));
            (QFraction::new(q_integer(k as u32), q_integer(n as u32)), d)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qalg::int;

    fn catalan(n: usize) -> usize {
        let mut c = 1usize;
        for i in 0..n {
            c = c * 2 * (2 * i + 1) / (i + 2);
        }
        c
    }

    #[test]
    fn basis_counts() {
        for n in 0..=6 {
            assert_eq!(enumerate_tl_basis(n, n).unwrap().len(), catalan(n));
        }
        assert_eq!(enumerate_tl_basis(3, 3).unwrap().len(), 5);
        assert_eq!(enumerate_tl_basis(0, 0).unwrap().len(), 1);
        assert_eq!(enumerate_tl_basis(2, 0).unwrap().len(), 1);
        assert_eq!(enumerate_tl_basis(4, 2).unwrap().len(), 5);
        assert!(enumerate_tl_basis(2, 1).is_err());
        let b = enumerate_tl_basis(4, 4).unwrap();
        let mut sorted = b.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted, b);
        for d in &b {
            assert!(d.is_noncrossing());
        }
    }

    #[test]
    fn crossing_rejected() {
        assert!(PlanarDiagram::from_pairs(2, 2, &[(0, 3), (1, 2)]).is_err());
        assert!(PlanarDiagram::from_pairs(2, 2, &[(0, 2), (1, 3)]).is_ok());
        assert!(PlanarDiagram::from_pairs(4, 0, &[(0, 2), (1, 3)]).is_err());
    }

    #[test]
    fn u_relations() {
        let u1 = DiagramCombination::u(2, 1).unwrap();
        assert_eq!(u1.then(&u1).unwrap(), u1.scale(&loop_value()));
        let u1 = DiagramCombination::u(3, 1).unwrap();
        let u2 = DiagramCombination::u(3, 2).unwrap();
        assert_eq!(u1.then(&u2).unwrap().then(&u1).unwrap(), u1);
        assert_eq!(u2.then(&u1).unwrap().then(&u2).unwrap(), u2);
        let eps_delta = DiagramCombination::from_diagram(PlanarDiagram::delta())
            .then(&DiagramCombination::from_diagram(PlanarDiagram::epsilon()))
            .unwrap();
        assert_eq!(
            eps_delta,
            DiagramCombination::from_term(loop_value(), PlanarDiagram::identity(0))
        );
    }

    #[test]
    fn identity_is_neutral() {
        let id = DiagramCombination::identity(4);
        for d in enumerate_tl_basis(4, 4).unwrap() {
            let dd = DiagramCombination::from_diagram(d);
            assert_eq!(id.then(&dd).unwrap(), dd);
            assert_eq!(dd.then(&id).unwrap(), dd);
        }
    }

    #[test]
    fn zigzag_is_identity() {
        let d = PlanarDiagram::identity(1).tensor(&PlanarDiagram::delta());
        let e = PlanarDiagram::epsilon().tensor(&PlanarDiagram::identity(1));
        let (r, loops) = d.then(&e).unwrap();
        assert_eq!((r, loops), (PlanarDiagram::identity(1), 0));
    }

    #[test]
    fn composition_is_associative() {
        let b = enumerate_tl_basis(3, 3).unwrap();
        for x in &b {
            for y in &b {
                for z in &b {
                    let (xy, l1) = x.then(y).unwrap();
                    let (xyz, l2) = xy.then(z).unwrap();
                    let (yz, l3) = y.then(z).unwrap();
                    let (xyz2, l4) = x.then(&yz).unwrap();
                    assert_eq!(xyz, xyz2);
                    assert_eq!(l1 + l2, l3 + l4);
                }
            }
        }
    }

    #[test]
    fn bends_are_inverse() {
        for d in enumerate_tl_basis(3, 3).unwrap() {
            let up = d.bend_last_bottom_up().unwrap();
            assert!(up.is_noncrossing());
            assert_eq!(up.bend_last_top_down().unwrap(), d);
        }
    }

    #[test]
    fn small_projectors() {
        let p1 = jones_wenzl(1).unwrap();
        assert_eq!(p1.scaled, DiagramCombination::identity(1));
        let p2 = jones_wenzl(2).unwrap();
        let expected = DiagramCombination::identity(2)
            .scale(&q_integer(2))
            .add(&DiagramCombination::u(2, 1).unwrap())
            .unwrap();
        assert_eq!(p2.scaled, expected);
        assert!(jones_wenzl(0).is_err());
    }

    #[test]
    fn projector_identities_up_to_five() {
        let seq = jones_wenzl_sequence(5).unwrap();
        for jw in &seq {
            let n = jw.n;
            let sq = jw.scaled.then(&jw.scaled).unwrap();
            assert_eq!(sq, jw.scaled.scale(&jw.denominator), "idempotent n={n}");
            for i in 1..n {
                let u = DiagramCombination::u(n, i).unwrap();
                assert!(u.then(&jw.scaled).unwrap().is_zero());
                assert!(jw.scaled.then(&u).unwrap().is_zero());
            }
            check_positive_expansion(jw).unwrap();
            if n >= 2 {
                assert_eq!(wenzl_bent_form(&seq[n - 2]).unwrap(), jw.scaled);
            }
        }
        assert_eq!(seq[2].scaled.len(), 5);
    }

    #[test]
    fn jwfk_and_triangle_scalars() {
        let c = jwfk_decompose(1, 1);
        assert!(c[0].1.equals(&QFraction::from_poly(LaurentPoly::one())));
        assert!(c[1]
            .1
            .equals(&QFraction::new(LaurentPoly::one(), q_integer(2))));
        for m in 0..=6 {
            for n in 0..=6 {
                assert!(jwfk_decompose(m, n)[0].1.to_poly().unwrap().is_one());
            }
        }
        assert!(triangle_reduce(1, 1, 1).equals(&QFraction::new(q_integer(2), q_integer(3))));
        for k in 0..=5 {
            for l in 0..=5 {
                assert!(triangle_reduce(0, k, l).to_poly().unwrap().is_one());
                assert!(triangle_reduce(l, k, 0).to_poly().unwrap().is_one());
            }
        }
        assert_eq!(
            triangle_reduce(1, 1, 1).specialize(&int(1)).unwrap(),
            crate::qalg::rat(2, 3)
        );
    }
}
