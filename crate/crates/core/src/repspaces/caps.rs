use std::fmt;

use crate::error::{domain, Result};

/// `k` noncrossing caps on `L` points (numbered from 1), the remaining points
/// carrying through-lines. Determined by its sorted right legs.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CapDiagram {
    sites: usize,
    right_legs: Vec<usize>,
    caps: Vec<(usize, usize)>,
}

impl CapDiagram {
    /// Builds the diagram whose caps end at `right_legs`; each right leg is
    /// joined to the nearest free point on its left.
    pub fn from_right_legs(sites: usize, right_legs: &[usize]) -> Result<Self> {
        let mut legs = right_legs.to_vec();
        legs.sort_unstable();
        legs.dedup();
        if legs.len() != right_legs.len() {
            return domain("repeated right leg");
        }
        if legs.iter().any(|&x| x == 0 || x > sites) {
            return domain(format!("right legs must lie in 1..={sites}"));
        }
        let mut is_right = vec![false; sites + 1];
        for &x in &legs {
            is_right[x] = true;
        }
        let mut open: Vec<usize> = Vec::new();
        let mut caps = Vec::with_capacity(legs.len());
        for p in 1..=sites {
            if is_right[p] {
                match open.pop() {
                    Some(l) => caps.push((l, p)),
                    None => return domain(format!("right leg {p} has no free point to its left")),
                }
            } else {
                open.push(p);
            }
        }
        caps.sort_unstable();
        Ok(CapDiagram {
            sites,
            right_legs: legs,
            caps,
        })
    }

    /// Builds the diagram from explicit `(left, right)` caps.
    pub fn from_caps(sites: usize, caps: &[(usize, usize)]) -> Result<Self> {
        let rights: Vec<usize> = caps.iter().map(|&(_, r)| r).collect();
        let d = Self::from_right_legs(sites, &rights)?;
        let mut given: Vec<(usize, usize)> = caps.to_vec();
        given.sort_unstable();
        if given != d.caps {
            return domain("caps cross or enclose a through-line");
        }
        Ok(d)
    }

    pub fn empty(sites: usize) -> Self {
        CapDiagram {
            sites,
            right_legs: Vec::new(),
            caps: Vec::new(),
        }
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn right_legs(&self) -> &[usize] {
        &self.right_legs
    }

    /// Caps sorted by left leg.
    pub fn caps(&self) -> &[(usize, usize)] {
        &self.caps
    }

    pub fn arc_count(&self) -> usize {
        self.caps.len()
    }

    /// Positions of through-lines, ascending.
    pub fn through_lines(&self) -> Vec<usize> {
        let mut used = vec![false; self.sites + 1];
        for &(l, r) in &self.caps {
            used[l] = true;
            used[r] = true;
        }
        (1..=self.sites).filter(|&p| !used[p]).collect()
    }

    /// Adds a cap between two through-lines with no through-line between them.
    pub fn with_cap(&self, l: usize, r: usize) -> Result<Self> {
        let mut caps = self.caps.clone();
        caps.push((l, r));
        Self::from_caps(self.sites, &caps)
    }

    /// Mirror image: position `p` goes to `L + 1 - p`.
    pub fn reflect(&self) -> Self {
        let caps: Vec<(usize, usize)> = self
            .caps
            .iter()
            .map(|&(l, r)| (self.sites + 1 - r, self.sites + 1 - l))
            .collect();
        Self::from_caps(self.sites, &caps).expect("reflection preserves planarity")
    }
}

impl fmt::Display for CapDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let legs: Vec<String> = self.right_legs.iter().map(|x| x.to_string()).collect();
        write!(f, "C{}({})", self.sites, legs.join(","))
    }
}

impl fmt::Debug for CapDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All of `C(L, k)` ordered lexicographically by right legs.
pub fn enumerate_caps(sites: usize, k: usize) -> Result<Vec<CapDiagram>> {
    if 2 * k > sites {
        return domain(format!("{k} caps do not fit on {sites} points"));
    }
    let mut out = Vec::new();
    let mut legs = Vec::with_capacity(k);
    ballot_sequences(sites, k, 1, &mut legs, &mut out);
    Ok(out)
}

// Right legs x_1 < ... < x_k are valid exactly when x_i >= 2i.
fn ballot_sequences(
    sites: usize,
    k: usize,
    start: usize,
    legs: &mut Vec<usize>,
    out: &mut Vec<CapDiagram>,
) {
    if legs.len() == k {
        out.push(CapDiagram::from_right_legs(sites, legs).expect("ballot sequence"));
        return;
    }
    let i = legs.len() + 1;
    let lo = start.max(2 * i);
    let remaining = k - legs.len();
    for x in lo..=sites + 1 - remaining {
        legs.push(x);
        ballot_sequences(sites, k, x + 1, legs, out);
        legs.pop();
    }
}

/// A standard Young tableau with at most two rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Syt {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
}

impl Syt {
    pub fn is_standard(&self) -> bool {
        let n = self.first.len() + self.second.len();
        let mut all: Vec<usize> = self.first.iter().chain(&self.second).copied().collect();
        all.sort_unstable();
        let content_ok = all.iter().enumerate().all(|(i, &x)| x == i + 1) && all.len() == n;
        let rows_ok = self.first.windows(2).all(|w| w[0] < w[1])
            && self.second.windows(2).all(|w| w[0] < w[1]);
        let cols_ok = self.second.len() <= self.first.len()
            && self.second.iter().zip(&self.first).all(|(b, a)| a < b);
        content_ok && rows_ok && cols_ok
    }
}

/// Second row = right legs, first row = all other points.
pub fn cap_to_syt(c: &CapDiagram) -> Syt {
    let second = c.right_legs.clone();
    let first = (1..=c.sites)
        .filter(|p| second.binary_search(p).is_err())
        .collect();
    Syt { first, second }
}

pub fn syt_to_cap(t: &Syt) -> Result<CapDiagram> {
    if !t.is_standard() {
        return domain("not a standard Young tableau");
    }
    CapDiagram::from_right_legs(t.first.len() + t.second.len(), &t.second)
}
