//! Quivers, involutions with duality signs, stability, and the associated
//! bilinear and quadratic forms.

mod forms;
mod groups;
mod io;

use std::collections::HashMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

pub use groups::{form_groupoid_count, gl_inverse, group_order, GroupKind};
pub use io::{builtin_a2, builtin_a3, builtin_loop, LoadedQuiver, QuiverFile};

use crate::dimvec::DimVector;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum QuiverError {
    #[error("invalid group {kind} of size {n}")]
    InvalidGroup { kind: GroupKind, n: usize },
    #[error("slope of the zero dimension vector")]
    ZeroSlope,
    #[error("dimension vector {0} has {1} entries, quiver has {2} nodes")]
    Length(DimVector, usize, usize),
    #[error("{0} is not self-dual: entries at {1} and its dual differ")]
    NotSigmaFixed(DimVector, String),
    #[error("{0} violates evenness: node {1} is fixed with s = -1 but has odd dimension")]
    OddSymplectic(DimVector, String),
    #[error("stability is not compatible with the involution at node {0}")]
    IncompatibleStability(String),
    #[error("unknown node {0:?}")]
    UnknownNode(String),
    #[error("unknown arrow {0:?}")]
    UnknownArrow(String),
    #[error("duplicate id {0:?}")]
    Duplicate(String),
    #[error("malformed quiver: {0}")]
    Malformed(String),
    #[error("quiver with duality fails validation:\n{}", format_violations(.0))]
    Invalid(Vec<Violation>),
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| format!("  - {x}")).collect::<Vec<_>>().join("\n")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arrow {
    pub id: String,
    pub src: usize,
    pub tgt: usize,
}

/// Finite quiver with named nodes and arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    nodes: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(nodes: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, QuiverError> {
        let index = name_index(&nodes)?;
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (id, src, tgt) in arrows {
            if seen.insert(id.clone(), ()).is_some() {
                return Err(QuiverError::Duplicate(id));
            }
            let src = *index.get(&src).ok_or(QuiverError::UnknownNode(src))?;
            let tgt = *index.get(&tgt).ok_or(QuiverError::UnknownNode(tgt))?;
            out.push(Arrow { id, src, tgt });
        }
        Ok(Self { nodes, arrows: out })
    }

    /// One node with `m` loops `a1, ..., am`.
    pub fn loop_quiver(m: usize) -> Self {
        let arrows = (1..=m).map(|k| (format!("a{k}"), "0".into(), "0".into())).collect();
        Self::new(vec!["0".into()], arrows).expect("loop quiver is well formed")
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_nodes(&self) -> usize {
        self.nodes.len()
    }

    pub fn node_index(&self, name: &str) -> Option<usize> {
        self.nodes.iter().position(|n| n == name)
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.id == id)
    }

    pub fn check_len(&self, d: &DimVector) -> Result<(), QuiverError> {
        if d.len() != self.num_nodes() {
            return Err(QuiverError::Length(d.clone(), d.len(), self.num_nodes()));
        }
        Ok(())
    }
}

fn name_index(names: &[String]) -> Result<HashMap<String, usize>, QuiverError> {
    let mut index = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if index.insert(n.clone(), i).is_some() {
            return Err(QuiverError::Duplicate(n.clone()));
        }
    }
    Ok(index)
}

/// Which part of the partition `Q^- | Q^sigma | Q^+` a node or arrow is in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Minus,
    Fixed,
    Plus,
}

/// A failed axiom of a quiver with involution and duality structure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "axiom", rename_all = "snake_case")]
pub enum Violation {
    /// sigma is not an involution on nodes.
    NodeInvolution { node: String },
    /// sigma is not an involution on arrows.
    ArrowInvolution { arrow: String },
    /// sigma(alpha) must run from sigma(target) to sigma(source).
    ArrowReversal { arrow: String },
    /// An arrow i -> sigma(i) must be fixed by sigma.
    FixedArrow { arrow: String },
    /// s must take values in {+1, -1}.
    SignValue { node: String },
    /// tau must take values in {+1, -1}.
    TauValue { arrow: String },
    /// s must be sigma-invariant.
    SignInvariance { node: String },
    /// tau_alpha tau_sigma(alpha) = s_i s_j for alpha: i -> j.
    TauProduct { arrow: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NodeInvolution { node } => write!(f, "sigma is not an involution at node {node}"),
            Violation::ArrowInvolution { arrow } => write!(f, "sigma is not an involution at arrow {arrow}"),
            Violation::ArrowReversal { arrow } => {
                write!(f, "sigma must reverse arrows: sigma({arrow}) does not run sigma(tgt) -> sigma(src)")
            }
            Violation::FixedArrow { arrow } => {
                write!(f, "arrow {arrow} runs i -> sigma(i) but is not fixed by sigma")
            }
            Violation::SignValue { node } => write!(f, "s at node {node} must be +1 or -1"),
            Violation::TauValue { arrow } => write!(f, "tau at arrow {arrow} must be +1 or -1"),
            Violation::SignInvariance { node } => write!(f, "s is not sigma-invariant at node {node}"),
            Violation::TauProduct { arrow } => {
                write!(f, "tau_a * tau_sigma(a) != s_i * s_j for arrow {arrow}: i -> j")
            }
        }
    }
}

/// A quiver with an arrow-reversing involution and duality signs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuiverWithDuality {
    quiver: Quiver,
    sigma_nodes: Vec<usize>,
    sigma_arrows: Vec<usize>,
    s: Vec<i8>,
    tau: Vec<i8>,
    node_parts: Vec<Part>,
    arrow_parts: Vec<Part>,
}

impl QuiverWithDuality {
    /// Builds and validates. Pairs of nodes/arrows swapped by sigma are split
    /// by putting the lexicographically smaller id into the plus part.
    pub fn new(
        quiver: Quiver,
        sigma_nodes: Vec<usize>,
        sigma_arrows: Vec<usize>,
        s: Vec<i8>,
        tau: Vec<i8>,
    ) -> Result<Self, QuiverError> {
        let raw = Self::new_unchecked(quiver, sigma_nodes, sigma_arrows, s, tau)?;
        let violations = raw.validate();
        if violations.is_empty() {
            Ok(raw)
        } else {
            Err(QuiverError::Invalid(violations))
        }
    }

    /// Builds without checking the axioms; only shapes and index ranges are
    /// checked. Use [`QuiverWithDuality::validate`] to list violations.
    pub fn new_unchecked(
        quiver: Quiver,
        sigma_nodes: Vec<usize>,
        sigma_arrows: Vec<usize>,
        s: Vec<i8>,
        tau: Vec<i8>,
    ) -> Result<Self, QuiverError> {
        let n = quiver.num_nodes();
        let a = quiver.arrows.len();
        if sigma_nodes.len() != n || s.len() != n || sigma_nodes.iter().any(|&j| j >= n) {
            return Err(QuiverError::Malformed("node data does not match the node set".into()));
        }
        if sigma_arrows.len() != a || tau.len() != a || sigma_arrows.iter().any(|&j| j >= a) {
            return Err(QuiverError::Malformed("arrow data does not match the arrow set".into()));
        }
        let part = |i: usize, j: usize, names: &[&str]| {
            if i == j {
                Part::Fixed
            } else if names[i] < names[j] {
                Part::Plus
            } else {
                Part::Minus
            }
        };
        let node_names: Vec<&str> = quiver.nodes.iter().map(String::as_str).collect();
        let arrow_names: Vec<&str> = quiver.arrows.iter().map(|a| a.id.as_str()).collect();
        let node_parts = (0..n).map(|i| part(i, sigma_nodes[i], &node_names)).collect();
        let arrow_parts = (0..a).map(|i| part(i, sigma_arrows[i], &arrow_names)).collect();
        Ok(Self {
            quiver,
            sigma_nodes,
            sigma_arrows,
            s,
            tau,
            node_parts,
            arrow_parts,
        })
    }

    /// The same structure with the plus and minus parts exchanged.
    pub fn with_flipped_partition(&self) -> Self {
        let flip = |p: &Part| match p {
            Part::Plus => Part::Minus,
            Part::Minus => Part::Plus,
            Part::Fixed => Part::Fixed,
        };
        let mut out = self.clone();
        out.node_parts = self.node_parts.iter().map(flip).collect();
        out.arrow_parts = self.arrow_parts.iter().map(flip).collect();
        out
    }

    /// Every violated axiom, naming the offending node or arrow.
    pub fn validate(&self) -> Vec<Violation> {
        let q = &self.quiver;
        let node = |i: usize| q.nodes[i].clone();
        let arrow = |i: usize| q.arrows[i].id.clone();
        let mut out = Vec::new();
        for i in 0..q.num_nodes() {
            if self.sigma_nodes[self.sigma_nodes[i]] != i {
                out.push(Violation::NodeInvolution { node: node(i) });
            }
            if self.s[i] != 1 && self.s[i] != -1 {
                out.push(Violation::SignValue { node: node(i) });
            }
            if self.s[self.sigma_nodes[i]] != self.s[i] {
                out.push(Violation::SignInvariance { node: node(i) });
            }
        }
        for (k, a) in q.arrows.iter().enumerate() {
            let sk = self.sigma_arrows[k];
            if self.sigma_arrows[sk] != k {
                out.push(Violation::ArrowInvolution { arrow: arrow(k) });
            }
            let b = &q.arrows[sk];
            if b.src != self.sigma_nodes[a.tgt] || b.tgt != self.sigma_nodes[a.src] {
                out.push(Violation::ArrowReversal { arrow: arrow(k) });
            }
            if a.tgt == self.sigma_nodes[a.src] && sk != k {
                out.push(Violation::FixedArrow { arrow: arrow(k) });
            }
            if self.tau[k] != 1 && self.tau[k] != -1 {
                out.push(Violation::TauValue { arrow: arrow(k) });
            } else if self.tau[k] * self.tau[sk] != self.s[a.src] * self.s[a.tgt] {
                out.push(Violation::TauProduct { arrow: arrow(k) });
            }
        }
        out
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn num_nodes(&self) -> usize {
        self.quiver.num_nodes()
    }

    pub fn sigma_node(&self, i: usize) -> usize {
        self.sigma_nodes[i]
    }

    pub fn sigma_arrow(&self, k: usize) -> usize {
        self.sigma_arrows[k]
    }

    pub fn s(&self, i: usize) -> i8 {
        self.s[i]
    }

    pub fn tau(&self, k: usize) -> i8 {
        self.tau[k]
    }

    pub fn node_part(&self, i: usize) -> Part {
        self.node_parts[i]
    }

    pub fn arrow_part(&self, k: usize) -> Part {
        self.arrow_parts[k]
    }

    pub fn nodes_in(&self, p: Part) -> Vec<usize> {
        (0..self.num_nodes()).filter(|&i| self.node_parts[i] == p).collect()
    }

    pub fn arrows_in(&self, p: Part) -> Vec<usize> {
        (0..self.quiver.arrows.len()).filter(|&k| self.arrow_parts[k] == p).collect()
    }

    /// Node names of each part, for display.
    pub fn partition_summary(&self) -> PartitionSummary {
        let nn = |p| self.nodes_in(p).into_iter().map(|i| self.quiver.nodes[i].clone()).collect();
        let an = |p| self.arrows_in(p).into_iter().map(|k| self.quiver.arrows[k].id.clone()).collect();
        PartitionSummary {
            nodes_minus: nn(Part::Minus),
            nodes_fixed: nn(Part::Fixed),
            nodes_plus: nn(Part::Plus),
            arrows_minus: an(Part::Minus),
            arrows_fixed: an(Part::Fixed),
            arrows_plus: an(Part::Plus),
        }
    }

    /// Wraps `e` after checking sigma-invariance and evenness at fixed
    /// symplectic nodes.
    pub fn self_dual(&self, e: DimVector) -> Result<SelfDualDimVector, QuiverError> {
        self.quiver.check_len(&e)?;
        for i in 0..self.num_nodes() {
            if e.get(i) != e.get(self.sigma_nodes[i]) {
                return Err(QuiverError::NotSigmaFixed(e, self.quiver.nodes[i].clone()));
            }
            if self.node_parts[i] == Part::Fixed && self.s[i] == -1 && e.get(i) % 2 != 0 {
                return Err(QuiverError::OddSymplectic(e, self.quiver.nodes[i].clone()));
            }
        }
        Ok(SelfDualDimVector(e))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionSummary {
    pub nodes_minus: Vec<String>,
    pub nodes_fixed: Vec<String>,
    pub nodes_plus: Vec<String>,
    pub arrows_minus: Vec<String>,
    pub arrows_fixed: Vec<String>,
    pub arrows_plus: Vec<String>,
}

/// A sigma-invariant dimension vector that is even at fixed nodes with `s = -1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct SelfDualDimVector(DimVector);

impl SelfDualDimVector {
    pub fn as_dim(&self) -> &DimVector {
        &self.0
    }

    pub fn into_dim(self) -> DimVector {
        self.0
    }
}

impl fmt::Display for SelfDualDimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Parities of a self-dual dimension vector at the sigma-fixed nodes, in
/// node order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ParityClass {
    pub nodes: Vec<usize>,
    pub w: Vec<u8>,
}

impl ParityClass {
    /// Odd parity is only possible at fixed nodes with `s = +1`.
    pub fn is_realizable(&self, qd: &QuiverWithDuality) -> bool {
        self.nodes.iter().zip(&self.w).all(|(&i, &w)| w == 0 || qd.s(i) == 1)
    }
}

/// Integer stability parameter, one entry per node.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Stability(pub Vec<i64>);

impl Stability {
    pub fn trivial(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn is_trivial(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn theta(&self, d: &DimVector) -> i64 {
        self.0.iter().zip(d.entries()).map(|(t, x)| t * x).sum()
    }

    pub fn slope(&self, d: &DimVector) -> Result<Ratio<i64>, QuiverError> {
        if d.is_zero() {
            return Err(QuiverError::ZeroSlope);
        }
        Ok(Ratio::new(self.theta(d), d.total()))
    }

    /// `theta_{sigma(i)} = -theta_i` for every node.
    pub fn check_compatible(&self, qd: &QuiverWithDuality) -> Result<(), QuiverError> {
        for i in 0..qd.num_nodes() {
            if self.0[qd.sigma_node(i)] != -self.0[i] {
                return Err(QuiverError::IncompatibleStability(qd.quiver().nodes()[i].clone()));
            }
        }
        Ok(())
    }
}
