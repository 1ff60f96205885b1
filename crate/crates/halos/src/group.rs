//! Lexicographically ordered groups Q^k, written additively on exponent
//! vectors, with their convex subgroups and quotients.
//!
//! Convex subgroups of a lexicographic Q^k are exactly the suffix blocks
//! {0}^j x Q^(k-j), so one index describes each of them. The compatibility
//! subgroup of a seminorm (the largest convex subgroup every element of which
//! stays squeezed between the values of 2 and 1/2 under all powers) is
//! computed from the value of 2 alone.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::ring::{fmt_rat, Rat};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedGroupDescriptor {
    labels: Vec<String>,
}

impl OrderedGroupDescriptor {
    /// One label per coordinate, most significant first.
    pub fn new(labels: Vec<String>) -> Self {
        OrderedGroupDescriptor { labels }
    }

    pub fn rank1(label: &str) -> Self {
        OrderedGroupDescriptor::new(vec![label.to_string()])
    }

    pub fn rank2(first: &str, second: &str) -> Self {
        OrderedGroupDescriptor::new(vec![first.to_string(), second.to_string()])
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }
}

impl fmt::Display for OrderedGroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q^{}[{}]", self.rank(), self.labels.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    pub group: OrderedGroupDescriptor,
    pub exponents: Vec<Rat>,
}

impl GroupElement {
    pub fn new(group: &OrderedGroupDescriptor, exponents: Vec<Rat>) -> Result<Self> {
        if exponents.len() != group.rank() {
            return Err(Error::MixedGroups(format!(
                "{} exponents for {group}",
                exponents.len()
            )));
        }
        Ok(GroupElement {
            group: group.clone(),
            exponents,
        })
    }

    pub fn identity(group: &OrderedGroupDescriptor) -> Self {
        GroupElement {
            group: group.clone(),
            exponents: vec![Rat::zero(); group.rank()],
        }
    }

    pub fn is_identity(&self) -> bool {
        self.exponents.iter().all(|e| e.is_zero())
    }

    pub fn op(&self, other: &GroupElement) -> Result<GroupElement> {
        same_group(self, other)?;
        Ok(GroupElement {
            group: self.group.clone(),
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            group: self.group.clone(),
            exponents: self.exponents.iter().map(|e| -e).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> GroupElement {
        let factor = Rat::from_integer(n.into());
        GroupElement {
            group: self.group.clone(),
            exponents: self.exponents.iter().map(|e| e * &factor).collect(),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.exponents.iter().map(fmt_rat).collect();
        write!(f, "({})", parts.join(", "))
    }
}

fn same_group(a: &GroupElement, b: &GroupElement) -> Result<()> {
    if a.group == b.group {
        Ok(())
    } else {
        Err(Error::MixedGroups(format!("{} vs {}", a.group, b.group)))
    }
}

/// Lexicographic comparison, first coordinate dominant.
pub fn group_cmp(a: &GroupElement, b: &GroupElement) -> Result<Ordering> {
    same_group(a, b)?;
    for (x, y) in a.exponents.iter().zip(&b.exponents) {
        match x.cmp(y) {
            Ordering::Equal => continue,
            other => return Ok(other),
        }
    }
    Ok(Ordering::Equal)
}

/// The suffix block {0}^cut_index x Q^(rank - cut_index). cut_index = 0 is
/// the whole group, cut_index = rank the trivial subgroup.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexSubgroup {
    pub group: OrderedGroupDescriptor,
    pub cut_index: usize,
}

impl ConvexSubgroup {
    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        if g.group != self.group {
            return Err(Error::MixedGroups(format!("{} vs {}", g.group, self.group)));
        }
        Ok(g.exponents[..self.cut_index].iter().all(|e| e.is_zero()))
    }

    pub fn is_trivial(&self) -> bool {
        self.cut_index == self.group.rank()
    }
}

/// The smallest convex subgroup containing g: the suffix block that opens at
/// g's leading nonzero coordinate.
pub fn convex_subgroup_generated(g: &GroupElement) -> Result<ConvexSubgroup> {
    let lead = g.exponents.iter().position(|e| !e.is_zero());
    match lead {
        None => Err(Error::IdentityElement),
        Some(j) => Ok(ConvexSubgroup {
            group: g.group.clone(),
            cut_index: j,
        }),
    }
}

/// Quotient by a convex subgroup: the prefix coordinates survive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvexQuotient {
    pub source: OrderedGroupDescriptor,
    pub quotient: OrderedGroupDescriptor,
    cut_index: usize,
}

pub fn quotient_by_convex(subgroup: &ConvexSubgroup) -> ConvexQuotient {
    let labels = subgroup.group.labels()[..subgroup.cut_index].to_vec();
    ConvexQuotient {
        source: subgroup.group.clone(),
        quotient: OrderedGroupDescriptor::new(labels),
        cut_index: subgroup.cut_index,
    }
}

impl ConvexQuotient {
    pub fn project(&self, g: &GroupElement) -> Result<GroupElement> {
        if g.group != self.source {
            return Err(Error::MixedGroups(format!("{} vs {}", g.group, self.source)));
        }
        GroupElement::new(&self.quotient, g.exponents[..self.cut_index].to_vec())
    }
}

/// The compatibility subgroup determined by the value of 2. For |2| <= 1 it
/// is trivial. For |2| > 1 it is the largest suffix block all of whose
/// elements have every power squeezed strictly between |2|^-1 and |2|: the
/// block opening just after the leading nonzero coordinate of |2|.
pub fn huber_delta(two_value: &GroupElement) -> ConvexSubgroup {
    let group = two_value.group.clone();
    let lead = two_value.exponents.iter().position(|e| !e.is_zero());
    match lead {
        Some(j) if two_value.exponents[j] > Rat::zero() => ConvexSubgroup {
            group,
            cut_index: j + 1,
        },
        // |2| <= 1: identity, or negative leading coordinate
        _ => ConvexSubgroup {
            cut_index: group.rank(),
            group,
        },
    }
}
