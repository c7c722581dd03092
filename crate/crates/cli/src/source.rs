use std::fs;

use odt_core::quiver::{builtin_a2, builtin_a3, builtin_loop, Quiver, QuiverFile, QuiverWithDuality, Stability};
use odt_core::DimVector;

use crate::Failure;

/// A quiver named on the command line, with its optional duality and the
/// stability in force.
pub struct Source {
    pub label: String,
    pub quiver: Quiver,
    pub duality: Option<QuiverWithDuality>,
    pub theta: Stability,
    /// `Some(m)` for the builtin `loop:m`.
    pub loops: Option<usize>,
}

pub fn parse_triple(spec: &str) -> Result<(i8, usize, usize), Failure> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let bad = || Failure::Usage(format!("--duality expects s,tau+,tau- (got {spec:?})"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let s: i8 = parts[0].parse().map_err(|_| bad())?;
    let tp: usize = parts[1].parse().map_err(|_| bad())?;
    let tm: usize = parts[2].parse().map_err(|_| bad())?;
    Ok((s, tp, tm))
}

pub fn parse_vector(spec: &str, flag: &str) -> Result<DimVector, Failure> {
    spec.parse()
        .map_err(|e| Failure::Usage(format!("{flag}: {e}")))
}

pub fn parse_theta(spec: &str) -> Result<Stability, Failure> {
    let vals: Result<Vec<i64>, _> = spec
        .trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect();
    vals.map(Stability)
        .map_err(|_| Failure::Usage(format!("--theta expects integers like 1,0,-1 (got {spec:?})")))
}

impl Source {
    /// `loop:m`, `a2`, `a3`, or a path to a quiver JSON file.
    pub fn load(spec: &str, duality: Option<&str>, theta: Option<&str>) -> Result<Self, Failure> {
        let mut src = if let Some(m) = spec.strip_prefix("loop:") {
            let m: usize = m
                .parse()
                .map_err(|_| Failure::Usage(format!("loop:m needs a nonnegative integer (got {spec:?})")))?;
            let (s, tp, tm) = match duality {
                Some(d) => parse_triple(d)?,
                None => (1, 0, m),
            };
            let qd = builtin_loop(m, s, tp, tm).map_err(|e| Failure::Check(e.to_string()))?;
            Source {
                label: format!("L_{m}"),
                quiver: qd.quiver().clone(),
                duality: Some(qd),
                theta: Stability::trivial(1),
                loops: Some(m),
            }
        } else if spec == "a2" || spec == "a3" {
            let (qd, theta) = if spec == "a2" {
                (builtin_a2(), Stability(vec![1, -1]))
            } else {
                (builtin_a3(), Stability(vec![1, 0, -1]))
            };
            Source {
                label: spec.to_uppercase(),
                quiver: qd.quiver().clone(),
                duality: Some(qd),
                theta,
                loops: None,
            }
        } else {
            let text = fs::read_to_string(spec).map_err(|e| Failure::Usage(format!("{spec}: {e}")))?;
            let loaded = QuiverFile::parse(&text).map_err(|e| Failure::Check(format!("{spec}: {e}")))?;
            Source {
                label: spec.to_string(),
                theta: loaded.stability(),
                quiver: loaded.quiver,
                duality: loaded.duality,
                loops: None,
            }
        };
        if duality.is_some() && src.loops.is_none() {
            return Err(Failure::Usage("--duality only applies to loop:m".into()));
        }
        if let Some(t) = theta {
            src.theta = parse_theta(t)?;
        }
        if src.theta.0.len() != src.quiver.num_nodes() {
            return Err(Failure::Usage(format!(
                "stability has {} entries, quiver has {} nodes",
                src.theta.0.len(),
                src.quiver.num_nodes()
            )));
        }
        Ok(src)
    }

    /// The duality after checking every axiom.
    pub fn valid_duality(&self) -> Result<&QuiverWithDuality, Failure> {
        let qd = self
            .duality
            .as_ref()
            .ok_or_else(|| Failure::Usage(format!("{} has no duality structure", self.label)))?;
        let violations = qd.validate();
        if let Some(v) = violations.first() {
            return Err(Failure::Check(format!("{}: {v}", self.label)));
        }
        Ok(qd)
    }
}
