//! Systems of multiplicities and values on Enriques diagrams: degree,
//! consistency, excesses, unloading, and the numerical invariants of a type.

use crate::diagram::{EnriquesDiagram, VertexId};
use crate::error::{Error, Result};
use crate::iso;

/// A diagram with an integer multiplicity per vertex. Multiplicities may be
/// negative or zero; only [`WeightedDiagram::invariants`] and
/// [`WeightedDiagram::is_type`] care about consistency.
#[derive(Clone, Debug)]
pub struct WeightedDiagram {
    diagram: EnriquesDiagram,
    mult: Vec<i64>,
}

/// The value system of a weighted diagram: `v_p = nu_p + sum of v_q over the
/// vertices q that p is proximate to`. Equivalently `v = P^{-1} nu` for any
/// admissible ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueSystem(Vec<i64>);

impl ValueSystem {
    pub fn new(values: Vec<i64>) -> Self {
        ValueSystem(values)
    }

    pub fn get(&self, v: VertexId) -> i64 {
        self.0[v.index()]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Per-vertex excesses `rho_p = nu_p - sum of nu_q over q proximate to p`.
#[derive(Clone, Debug)]
pub struct Excesses(Vec<i64>);

impl Excesses {
    pub fn get(&self, v: VertexId) -> i64 {
        self.0[v.index()]
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn is_consistent(&self) -> bool {
        self.0.iter().all(|&r| r >= 0)
    }

    /// Total excess; for a consistent diagram this counts the free ends
    /// (branches) of the generic curve through the cluster.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// Classical numerical invariants of a consistent weighted diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Invariants {
    /// Genus discrepancy: sum of `nu(nu-1)/2`.
    pub delta: i64,
    /// Branch count: total excess.
    pub branches: i64,
    /// `2*delta - branches + 1`.
    pub milnor: i64,
    /// Sum of `nu(nu+1)/2`.
    pub degree: i64,
}

/// One unloading step: the vertex whose value was raised, its excess before
/// the step, and the increment applied to its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnloadStep {
    pub vertex: VertexId,
    pub excess: i64,
    pub increment: i64,
}

/// Outcome of unloading: the consistent result, the step log, and whether
/// the run was tame (every step had excess exactly -1).
#[derive(Clone, Debug)]
pub struct UnloadReport {
    pub result: WeightedDiagram,
    pub tame: bool,
    pub steps: Vec<UnloadStep>,
}

impl WeightedDiagram {
    pub fn new(diagram: EnriquesDiagram, mult: Vec<i64>) -> Result<Self> {
        if mult.len() != diagram.vertex_count() {
            return Err(Error::SizeMismatch(format!(
                "{} multiplicities for {} vertices",
                mult.len(),
                diagram.vertex_count()
            )));
        }
        Ok(WeightedDiagram { diagram, mult })
    }

    pub fn diagram(&self) -> &EnriquesDiagram {
        &self.diagram
    }

    pub fn into_diagram(self) -> EnriquesDiagram {
        self.diagram
    }

    pub fn vertex_count(&self) -> usize {
        self.diagram.vertex_count()
    }

    pub fn mult(&self, v: VertexId) -> i64 {
        self.mult[v.index()]
    }

    pub fn mults(&self) -> &[i64] {
        &self.mult
    }

    /// The value system determined by the multiplicities.
    pub fn values(&self) -> ValueSystem {
        let n = self.vertex_count();
        let mut v = vec![0i64; n];
        // Ids are topologically sorted, so proximity targets are computed first.
        for i in 0..n {
            let id = VertexId(i as u32);
            v[i] = self.mult[i] + self.diagram.proximities(id).map(|q| v[q.index()]).sum::<i64>();
        }
        ValueSystem(v)
    }

    /// Inverse of [`values`](Self::values): recover multiplicities from values.
    pub fn from_values(diagram: EnriquesDiagram, values: &ValueSystem) -> Result<Self> {
        if values.len() != diagram.vertex_count() {
            return Err(Error::SizeMismatch("value count != vertex count".into()));
        }
        let mult: Vec<i64> = (0..diagram.vertex_count())
            .map(|i| {
                let id = VertexId(i as u32);
                values.0[i] - diagram.proximities(id).map(|q| values.0[q.index()]).sum::<i64>()
            })
            .collect();
        WeightedDiagram::new(diagram, mult)
    }

    pub fn excesses(&self) -> Excesses {
        let n = self.vertex_count();
        let mut rho = self.mult.clone();
        for i in 0..n {
            let id = VertexId(i as u32);
            for q in self.diagram.proximities(id) {
                rho[q.index()] -= self.mult[i];
            }
        }
        Excesses(rho)
    }

    pub fn is_consistent(&self) -> bool {
        self.excesses().is_consistent()
    }

    pub fn degree(&self) -> i64 {
        self.mult.iter().map(|&m| m * (m + 1) / 2).sum()
    }

    /// Repair an inconsistent diagram by unloading: repeatedly pick the least
    /// vertex `p` (in id order) with negative excess, and raise its value by
    /// `ceil(-rho_p / (r_p + 1))` where `r_p` counts the vertices proximate
    /// to `p`, until every excess is nonnegative.
    pub fn unload(&self) -> Result<UnloadReport> {
        let n = self.vertex_count() as u64;
        let max_mult = self.mult.iter().map(|m| m.unsigned_abs()).max().unwrap_or(0);
        self.unload_bounded(10 * n * max_mult.max(1))
    }

    /// [`unload`](Self::unload) with an explicit step bound.
    pub fn unload_bounded(&self, max_steps: u64) -> Result<UnloadReport> {
        let n = self.vertex_count();
        let mut values = self.values().0;
        let mut steps: Vec<UnloadStep> = Vec::new();
        let mut tame = true;
        let prox_count: Vec<i64> = (0..n)
            .map(|i| {
                let id = VertexId(i as u32);
                self.diagram
                    .vertices()
                    .filter(|&q| self.diagram.is_proximate(q, id))
                    .count() as i64
            })
            .collect();
        loop {
            let w = WeightedDiagram::from_values(self.diagram.clone(), &ValueSystem(values.clone()))?;
            let rho = w.excesses();
            let Some(p) = (0..n).map(|i| VertexId(i as u32)).find(|&v| rho.get(v) < 0) else {
                return Ok(UnloadReport { result: w, tame, steps });
            };
            if steps.len() as u64 >= max_steps {
                return Err(Error::ResourceExhausted {
                    what: "unloading steps",
                    cap: max_steps,
                });
            }
            let excess = rho.get(p);
            let r = prox_count[p.index()];
            let increment = (-excess + r) / (r + 1); // ceil(-excess / (r+1))
            values[p.index()] += increment;
            if excess != -1 {
                tame = false;
            }
            steps.push(UnloadStep { vertex: p, excess, increment });
        }
    }

    /// Numerical invariants; defined only for consistent diagrams.
    pub fn invariants(&self) -> Result<Invariants> {
        let rho = self.excesses();
        if !rho.is_consistent() {
            return Err(Error::Inconsistent { context: "invariants" });
        }
        let delta: i64 = self.mult.iter().map(|&m| m * (m - 1) / 2).sum();
        let branches = rho.total();
        Ok(Invariants {
            delta,
            branches,
            milnor: 2 * delta - branches + 1,
            degree: self.degree(),
        })
    }

    /// True when this weighted diagram represents an equisingularity type:
    /// consistent, with no extremal free vertex of multiplicity at most 1.
    pub fn is_type(&self) -> bool {
        self.is_consistent()
            && !self.diagram.vertices().any(|v| {
                self.diagram.is_extremal(v) && self.diagram.is_free(v) && self.mult(v) <= 1
            })
    }

    /// Canonical code extended with multiplicities: equal codes exactly when
    /// the weighted diagrams are isomorphic as weighted diagrams.
    pub fn canonical_code(&self) -> Vec<u8> {
        iso::code_with(&self.diagram, Some(&self.mult))
    }

    pub fn canonical_order(&self) -> Vec<VertexId> {
        iso::canonical_order_with(&self.diagram, Some(&self.mult))
    }

    pub fn isomorphic_to(&self, other: &WeightedDiagram) -> bool {
        self.canonical_code() == other.canonical_code()
    }
}
