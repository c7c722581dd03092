//! JSON quiver files and builtin examples.
//!
//! ```json
//! {"nodes": ["1", "2", "3"],
//!  "arrows": [{"id": "a", "src": "1", "tgt": "2"}, {"id": "b", "src": "2", "tgt": "3"}],
//!  "sigma": {"nodes": {"1": "3", "2": "2", "3": "1"}, "arrows": {"a": "b", "b": "a"}},
//!  "duality": {"s": {"1": 1, "2": 1, "3": 1}, "tau": {"a": -1, "b": -1}},
//!  "theta": {"1": 1, "2": 0, "3": -1}}
//! ```
//!
//! `sigma` and `duality` are optional together; `theta` is optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Quiver, QuiverError, QuiverWithDuality, Stability};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
enum Id {
    Name(String),
    Number(i64),
}

impl Id {
    fn name(&self) -> String {
        match self {
            Id::Name(s) => s.clone(),
            Id::Number(n) => n.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct ArrowEntry {
    id: Id,
    src: Id,
    tgt: Id,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct SigmaEntry {
    nodes: BTreeMap<String, Id>,
    arrows: BTreeMap<String, Id>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct DualityEntry {
    s: BTreeMap<String, i8>,
    tau: BTreeMap<String, i8>,
}

/// Serialized form of a quiver with optional duality and stability.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverFile {
    nodes: Vec<Id>,
    arrows: Vec<ArrowEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sigma: Option<SigmaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    duality: Option<DualityEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theta: Option<BTreeMap<String, i64>>,
}

/// A parsed quiver file. `duality` is present iff the file has both `sigma`
/// and `duality`; it is not yet validated against the axioms.
#[derive(Clone, Debug)]
pub struct LoadedQuiver {
    pub quiver: Quiver,
    pub duality: Option<QuiverWithDuality>,
    pub theta: Option<Stability>,
}

impl LoadedQuiver {
    pub fn stability(&self) -> Stability {
        self.theta
            .clone()
            .unwrap_or_else(|| Stability::trivial(self.quiver.num_nodes()))
    }
}

fn lookup<T: Clone>(
    map: &BTreeMap<String, T>,
    key: &str,
    err: impl Fn(String) -> QuiverError,
) -> Result<T, QuiverError> {
    map.get(key).cloned().ok_or_else(|| err(key.to_string()))
}

impl QuiverFile {
    pub fn parse(json: &str) -> Result<LoadedQuiver, QuiverError> {
        let file: QuiverFile =
            serde_json::from_str(json).map_err(|e| QuiverError::Malformed(e.to_string()))?;
        file.load()
    }

    pub fn load(&self) -> Result<LoadedQuiver, QuiverError> {
        let nodes: Vec<String> = self.nodes.iter().map(Id::name).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|a| (a.id.name(), a.src.name(), a.tgt.name()))
            .collect();
        let quiver = Quiver::new(nodes.clone(), arrows)?;
        let duality = match (&self.sigma, &self.duality) {
            (None, None) => None,
            (Some(sig), Some(dual)) => {
                let mut sigma_nodes = Vec::new();
                let mut s = Vec::new();
                for n in &nodes {
                    let img = lookup(&sig.nodes, n, QuiverError::UnknownNode)?.name();
                    sigma_nodes.push(quiver.node_index(&img).ok_or(QuiverError::UnknownNode(img))?);
                    s.push(lookup(&dual.s, n, QuiverError::UnknownNode)?);
                }
                let mut sigma_arrows = Vec::new();
                let mut tau = Vec::new();
                for a in quiver.arrows() {
                    let img = lookup(&sig.arrows, &a.id, QuiverError::UnknownArrow)?.name();
                    sigma_arrows.push(quiver.arrow_index(&img).ok_or(QuiverError::UnknownArrow(img))?);
                    tau.push(lookup(&dual.tau, &a.id, QuiverError::UnknownArrow)?);
                }
                Some(QuiverWithDuality::new_unchecked(
                    quiver.clone(),
                    sigma_nodes,
                    sigma_arrows,
                    s,
                    tau,
                )?)
            }
            _ => {
                return Err(QuiverError::Malformed(
                    "\"sigma\" and \"duality\" must be given together".into(),
                ))
            }
        };
        let theta = match &self.theta {
            None => None,
            Some(t) => Some(Stability(
                nodes
                    .iter()
                    .map(|n| lookup(t, n, QuiverError::UnknownNode))
                    .collect::<Result<_, _>>()?,
            )),
        };
        Ok(LoadedQuiver {
            quiver,
            duality,
            theta,
        })
    }

    pub fn from_parts(quiver: &Quiver, duality: Option<&QuiverWithDuality>, theta: Option<&Stability>) -> Self {
        let name = |i: usize| quiver.nodes()[i].clone();
        let (sigma, dual) = match duality {
            None => (None, None),
            Some(qd) => {
                let sigma = SigmaEntry {
                    nodes: (0..quiver.num_nodes()).map(|i| (name(i), Id::Name(name(qd.sigma_node(i))))).collect(),
                    arrows: quiver
                        .arrows()
                        .iter()
                        .enumerate()
                        .map(|(k, a)| (a.id.clone(), Id::Name(quiver.arrows()[qd.sigma_arrow(k)].id.clone())))
                        .collect(),
                };
                let dual = DualityEntry {
                    s: (0..quiver.num_nodes()).map(|i| (name(i), qd.s(i))).collect(),
                    tau: quiver.arrows().iter().enumerate().map(|(k, a)| (a.id.clone(), qd.tau(k))).collect(),
                };
                (Some(sigma), Some(dual))
            }
        };
        QuiverFile {
            nodes: quiver.nodes().iter().cloned().map(Id::Name).collect(),
            arrows: quiver
                .arrows()
                .iter()
                .map(|a| ArrowEntry {
                    id: Id::Name(a.id.clone()),
                    src: Id::Name(name(a.src)),
                    tgt: Id::Name(name(a.tgt)),
                })
                .collect(),
            sigma,
            duality: dual,
            theta: theta.map(|t| (0..quiver.num_nodes()).map(|i| (name(i), t.0[i])).collect()),
        }
    }
}

/// `L_m` with `sigma = id`, node sign `s`, and `tau = +1` on the first
/// `tau_plus` loops and `-1` on the remaining `tau_minus`.
pub fn builtin_loop(m: usize, s: i8, tau_plus: usize, tau_minus: usize) -> Result<QuiverWithDuality, QuiverError> {
    if tau_plus + tau_minus != m {
        return Err(QuiverError::Malformed(format!(
            "tau counts {tau_plus} + {tau_minus} do not add up to {m} loops"
        )));
    }
    let tau = (0..m).map(|k| if k < tau_plus { 1 } else { -1 }).collect();
    QuiverWithDuality::new(Quiver::loop_quiver(m), vec![0], (0..m).collect(), vec![s], tau)
}

/// `1 -> 2` with `sigma` swapping the nodes and fixing the arrow.
pub fn builtin_a2() -> QuiverWithDuality {
    let q = Quiver::new(
        vec!["1".into(), "2".into()],
        vec![("a".into(), "1".into(), "2".into())],
    )
    .expect("well formed");
    QuiverWithDuality::new(q, vec![1, 0], vec![0], vec![1, 1], vec![-1]).expect("valid duality")
}

/// `1 -> 2 -> 3` with `sigma` swapping 1, 3 and the two arrows, `s = 1`,
/// `tau = -1`.
pub fn builtin_a3() -> QuiverWithDuality {
    let q = Quiver::new(
        vec!["1".into(), "2".into(), "3".into()],
        vec![
            ("a".into(), "1".into(), "2".into()),
            ("b".into(), "2".into(), "3".into()),
        ],
    )
    .expect("well formed");
    QuiverWithDuality::new(q, vec![2, 1, 0], vec![1, 0], vec![1, 1, 1], vec![-1, -1]).expect("valid duality")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Violation;

    const A3_JSON: &str = r#"{
        "nodes": [1, 2, 3],
        "arrows": [{"id": "a", "src": 1, "tgt": 2}, {"id": "b", "src": 2, "tgt": 3}],
        "sigma": {"nodes": {"1": 3, "2": 2, "3": 1}, "arrows": {"a": "b", "b": "a"}},
        "duality": {"s": {"1": 1, "2": 1, "3": 1}, "tau": {"a": -1, "b": -1}},
        "theta": {"1": 1, "2": 0, "3": -1}
    }"#;

    #[test]
    fn parses_a3() {
        let lq = QuiverFile::parse(A3_JSON).unwrap();
        let qd = lq.duality.unwrap();
        assert!(qd.validate().is_empty());
        assert_eq!(qd, builtin_a3());
        assert_eq!(lq.theta.unwrap().0, vec![1, 0, -1]);
        let p = qd.partition_summary();
        assert_eq!(p.nodes_fixed, vec!["2"]);
        assert_eq!(p.nodes_plus, vec!["1"]);
        assert_eq!(p.arrows_plus, vec!["a"]);
    }

    #[test]
    fn reports_tau_product_violation() {
        let bad = A3_JSON.replace(r#""tau": {"a": -1, "b": -1}"#, r#""tau": {"a": 1, "b": -1}"#);
        let qd = QuiverFile::parse(&bad).unwrap().duality.unwrap();
        let v = qd.validate();
        assert!(v.contains(&Violation::TauProduct { arrow: "a".into() }));
    }

    #[test]
    fn reports_non_reversing_sigma() {
        let bad = A3_JSON.replace(r#""nodes": {"1": 3, "2": 2, "3": 1}"#, r#""nodes": {"1": 1, "2": 2, "3": 3}"#);
        let qd = QuiverFile::parse(&bad).unwrap().duality.unwrap();
        assert!(qd.validate().iter().any(|v| matches!(v, Violation::ArrowReversal { .. })));
    }

    #[test]
    fn loop_identity_involution_is_valid() {
        let qd = builtin_loop(3, 1, 0, 3).unwrap();
        assert!(qd.validate().is_empty());
        assert!(builtin_loop(3, 1, 1, 1).is_err());
    }

    #[test]
    fn round_trip() {
        let qd = builtin_a3();
        let theta = Stability(vec![1, 0, -1]);
        let file = QuiverFile::from_parts(qd.quiver(), Some(&qd), Some(&theta));
        let json = serde_json::to_string(&file).unwrap();
        let back = QuiverFile::parse(&json).unwrap();
        assert_eq!(back.duality.unwrap(), qd);
        assert_eq!(back.theta.unwrap(), theta);
    }
}
