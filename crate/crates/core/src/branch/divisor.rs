//! Branch divisors of admissible covers over a tree of lines, and their
//! pushforward along the contraction onto the component containing infinity.

use std::collections::BTreeMap;

use num_traits::One;

use super::{branch_polynomial, BranchError, RationalMap};
use crate::exactalg::rational::Rational;
use crate::exactalg::Poly;

pub const INFINITY_LABEL: &str = "inf";

/// Rooted tree of components; vertex 0 is the component containing infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedTree {
    parent: Vec<Option<usize>>,
}

impl MarkedTree {
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self, BranchError> {
        if parent.first() != Some(&None) {
            return Err(BranchError::Tree("vertex 0 must be the root".into()));
        }
        for v in 1..parent.len() {
            let mut cur = v;
            for _ in 0..parent.len() {
                match parent[cur] {
                    Some(p) if p < parent.len() => cur = p,
                    Some(p) => return Err(BranchError::Tree(format!("vertex {v} has unknown parent {p}"))),
                    None => break,
                }
            }
            if cur != 0 {
                return Err(BranchError::Tree(format!("vertex {v} does not reach the root")));
            }
        }
        Ok(MarkedTree { parent })
    }

    pub fn single() -> Self {
        MarkedTree { parent: vec![None] }
    }

    /// The root with `bubbles` children.
    pub fn two_level(bubbles: usize) -> Self {
        let mut parent = vec![None];
        parent.extend(std::iter::repeat_n(Some(0), bubbles));
        MarkedTree { parent }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }
}

/// A divisor supported on labeled points of a [`MarkedTree`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDivisor {
    tree: MarkedTree,
    location: BTreeMap<String, usize>,
    mult: BTreeMap<String, u64>,
}

impl TreeDivisor {
    pub fn new(tree: MarkedTree, entries: Vec<(String, usize, u64)>) -> Result<Self, BranchError> {
        let mut location = BTreeMap::new();
        let mut mult = BTreeMap::new();
        for (label, v, m) in entries {
            if v >= tree.len() {
                return Err(BranchError::Tree(format!("point {label} on missing vertex {v}")));
            }
            if location.insert(label.clone(), v).is_some() {
                return Err(BranchError::Tree(format!("point {label} listed twice")));
            }
            mult.insert(label, m);
        }
        Ok(TreeDivisor { tree, location, mult })
    }

    /// A divisor on a single line.
    pub fn on_line(entries: Vec<(String, u64)>) -> Result<Self, BranchError> {
        TreeDivisor::new(MarkedTree::single(), entries.into_iter().map(|(l, m)| (l, 0, m)).collect())
    }

    pub fn tree(&self) -> &MarkedTree {
        &self.tree
    }

    pub fn degree(&self) -> u64 {
        self.mult.values().sum()
    }

    pub fn multiplicity(&self, label: &str) -> u64 {
        self.mult.get(label).copied().unwrap_or(0)
    }

    pub fn location(&self, label: &str) -> Option<usize> {
        self.location.get(label).copied()
    }

    /// `(label, vertex, multiplicity)` sorted by label.
    pub fn entries(&self) -> Vec<(String, usize, u64)> {
        self.mult.iter().map(|(l, &m)| (l.clone(), self.location[l], m)).collect()
    }
}

/// Branch divisor of an admissible cover: `(d - n) E_inf + sum_j (d - len eps_j) E_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleDivisor {
    pub d: u32,
    /// Genus by Riemann-Hurwitz.
    pub genus: u32,
    /// Labels `inf`, `E1`, `E2`, ...
    pub multiplicities: BTreeMap<String, u64>,
}

impl AdmissibleDivisor {
    pub fn degree(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// Places the points on `tree`; unplaced labels go on the root.
    pub fn on_tree(&self, tree: MarkedTree, placement: &BTreeMap<String, usize>) -> Result<TreeDivisor, BranchError> {
        let entries =
            self.multiplicities.iter().map(|(l, &m)| (l.clone(), placement.get(l).copied().unwrap_or(0), m)).collect();
        TreeDivisor::new(tree, entries)
    }
}

fn check_partition(d: u32, parts: &[u32]) -> Result<(), BranchError> {
    if parts.is_empty() || parts.contains(&0) || parts.iter().sum::<u32>() != d {
        return Err(BranchError::NotAPartition { d, parts: parts.to_vec() });
    }
    Ok(())
}

/// `profile` is the ramification over infinity, `eps[j]` over `E_{j+1}`.
pub fn admissible_branch_divisor(profile: &[u32], eps: &[Vec<u32>]) -> Result<AdmissibleDivisor, BranchError> {
    let d: u32 = profile.iter().sum();
    check_partition(d, profile)?;
    let mut multiplicities = BTreeMap::new();
    multiplicities.insert(INFINITY_LABEL.to_string(), (d as usize - profile.len()) as u64);
    for (j, e) in eps.iter().enumerate() {
        check_partition(d, e)?;
        multiplicities.insert(format!("E{}", j + 1), (d as usize - e.len()) as u64);
    }
    let total: i64 = multiplicities.values().map(|&m| m as i64).sum();
    // total = 2g - 2 + 2d
    let twice_g = total - 2 * d as i64 + 2;
    if twice_g < 0 || twice_g % 2 != 0 {
        return Err(BranchError::NoGenus { total, d });
    }
    Ok(AdmissibleDivisor { d, genus: (twice_g / 2) as u32, multiplicities })
}

/// Image label on the root line for each non-root vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Contraction {
    pub images: BTreeMap<usize, String>,
}

impl Contraction {
    pub fn new(images: BTreeMap<usize, String>) -> Self {
        Contraction { images }
    }
}

/// Multiplicities of points whose images coincide are added.
pub fn pushforward_divisor(td: &TreeDivisor, c: &Contraction) -> Result<TreeDivisor, BranchError> {
    let mut out: BTreeMap<String, u64> = BTreeMap::new();
    for (label, v, m) in td.entries() {
        let image = if v == 0 { label } else { c.images.get(&v).cloned().ok_or(BranchError::Contraction(v))? };
        *out.entry(image).or_default() += m;
    }
    TreeDivisor::on_line(out.into_iter().collect())
}

/// `(prod (t - x_l)^{m_l}, m_inf)` for a divisor on one line, with point
/// coordinates from `positions`.
pub fn divisor_polynomial(
    td: &TreeDivisor,
    positions: &BTreeMap<String, Rational>,
) -> Result<(Poly, u64), BranchError> {
    if td.tree().len() != 1 {
        return Err(BranchError::Tree("divisor is not on a single line".into()));
    }
    let mut p = Poly::one();
    let mut at_infinity = 0;
    for (label, _, m) in td.entries() {
        if label == INFINITY_LABEL {
            at_infinity = m;
            continue;
        }
        let x = positions.get(&label).ok_or_else(|| BranchError::Tree(format!("no coordinate for {label}")))?;
        p = &p * &Poly::new(vec![-x.clone(), Rational::one()]).pow(m as usize);
    }
    Ok((p, at_infinity))
}

/// Branch divisor of a map as `(P, d - n)`: finite part and multiplicity at infinity.
pub fn map_branch_divisor(f: &RationalMap) -> Result<(Poly, u64), BranchError> {
    let p = branch_polynomial(f)?;
    Ok((p, (f.degree() - f.pole_count()) as u64))
}
