use std::cmp::Ordering;
use std::fmt;

/// Total degree `|α|` of a multiindex.
pub fn degree(alpha: &[u32]) -> u32 {
    alpha.iter().sum()
}

/// Componentwise `a ≤ b`.
pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// All multiindices in `n` variables with `|α| ≤ max_degree`, ordered by
/// degree and then lexicographically.
pub fn multiindices_up_to(n: usize, max_degree: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for d in 0..=max_degree {
        multiindices_of_degree(n, d, &mut out);
    }
    out
}

/// Appends all multiindices of exactly degree `d` in lexicographic order.
pub fn multiindices_of_degree(n: usize, d: u32, out: &mut Vec<Vec<u32>>) {
    fn rec(prefix: &mut Vec<u32>, n: usize, remaining: u32, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(remaining);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in 0..=remaining {
            prefix.push(e);
            rec(prefix, n, remaining - e, out);
            prefix.pop();
        }
    }
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return;
    }
    rec(&mut Vec::with_capacity(n), n, d, out);
}

/// Number of multiindices in `n` variables of degree at most `d`: `C(n+d, d)`.
pub fn count_up_to(n: usize, d: u32) -> usize {
    let mut acc: u128 = 1;
    for i in 1..=d as u128 {
        acc = acc * (n as u128 + i) / i;
    }
    acc as usize
}

/// A pair `(α, j)`: a multiindex together with a component index.
///
/// `component` is zero-based here; the text formats use `j = component + 1`.
///
/// The derived ordering is the default monomial order, lexicographic on
/// `(|α|, j, α)`. Weighted orders go through [`MonomialOrder`](super::MonomialOrder).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub alpha: Vec<u32>,
    pub component: usize,
}

impl Exponent {
    pub fn new(alpha: Vec<u32>, component: usize) -> Self {
        Exponent { alpha, component }
    }

    /// `x^α` in a scalar (single-component) module.
    pub fn scalar(alpha: Vec<u32>) -> Self {
        Exponent { alpha, component: 0 }
    }

    pub fn zero(nvars: usize, component: usize) -> Self {
        Exponent {
            alpha: vec![0; nvars],
            component,
        }
    }

    pub fn nvars(&self) -> usize {
        self.alpha.len()
    }

    pub fn degree(&self) -> u32 {
        degree(&self.alpha)
    }

    /// `(α, j) + β = (α + β, j)`.
    pub fn shift(&self, beta: &[u32]) -> Exponent {
        debug_assert_eq!(self.alpha.len(), beta.len());
        Exponent {
            alpha: self.alpha.iter().zip(beta).map(|(a, b)| a + b).collect(),
            component: self.component,
        }
    }

    /// Whether `other ∈ self + ℕⁿ`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.component == other.component && divides(&self.alpha, &other.alpha)
    }

    /// `other − self` when `self` divides `other`.
    pub fn quotient(&self, other: &Exponent) -> Option<Vec<u32>> {
        self.divides(other)
            .then(|| other.alpha.iter().zip(&self.alpha).map(|(o, s)| o - s).collect())
    }
}

impl Ord for Exponent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.component.cmp(&other.component))
            .then_with(|| self.alpha.cmp(&other.alpha))
    }
}

impl PartialOrd for Exponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, a) in self.alpha.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ";{})", self.component + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_counts_match_binomials() {
        for n in 1..=4 {
            for d in 0..=6 {
                assert_eq!(multiindices_up_to(n, d).len(), count_up_to(n, d));
            }
        }
        assert_eq!(count_up_to(2, 1), 3);
        assert_eq!(count_up_to(3, 5), 56);
    }

    #[test]
    fn enumeration_is_sorted_by_default_key() {
        let all = multiindices_up_to(3, 4);
        let exps: Vec<_> = all.into_iter().map(Exponent::scalar).collect();
        assert!(exps.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn shift_and_quotient() {
        let e = Exponent::new(vec![1, 0], 1);
        let s = e.shift(&[2, 3]);
        assert_eq!(s, Exponent::new(vec![3, 3], 1));
        assert_eq!(e.quotient(&s), Some(vec![2, 3]));
        assert_eq!(s.quotient(&e), None);
        assert!(!e.divides(&Exponent::new(vec![3, 3], 0)));
    }
}
