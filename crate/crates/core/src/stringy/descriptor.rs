use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::hodge::{DiamondChecks, DiamondReport, HodgeDiamond};
use crate::Error;

/// An exceptional prime divisor `D_j` together with its discrepancy `a_j`.
///
/// A single component may stand for several pairwise disjoint divisors with the
/// same discrepancy; its diamond is then the sum and `h^{0,0}` counts them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component {
    pub id: u32,
    pub discrepancy: u32,
}

impl Component {
    pub fn new(id: u32, discrepancy: u32) -> Self {
        Self { id, discrepancy }
    }
}

/// Sorted set of component ids; the empty set denotes the ambient `Y`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Stratum(Vec<u32>);

impl Stratum {
    pub fn ambient() -> Self {
        Self(Vec::new())
    }

    /// Sorts the ids; `None` if an id is repeated.
    pub fn new(mut ids: Vec<u32>) -> Option<Self> {
        ids.sort_unstable();
        if ids.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some(Self(ids))
    }

    pub fn ids(&self) -> &[u32] {
        &self.0
    }

    pub fn codim(&self) -> usize {
        self.0.len()
    }

    pub fn is_ambient(&self) -> bool {
        self.0.is_empty()
    }

    /// Subsets obtained by dropping one id.
    pub fn facets(&self) -> impl Iterator<Item = Stratum> + '_ {
        (0..self.0.len()).map(move |i| {
            let mut ids = self.0.clone();
            ids.remove(i);
            Stratum(ids)
        })
    }
}

impl fmt::Display for Stratum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "Y");
        }
        let ids: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "D_{{{}}}", ids.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DescriptorViolation {
    MissingAmbient,
    DuplicateComponent(u32),
    RepeatedId(Vec<u32>),
    UnknownComponent {
        stratum: Stratum,
        id: u32,
    },
    StratumDimension {
        stratum: Stratum,
        expected: i64,
        found: u32,
    },
    NotDownwardClosed {
        stratum: Stratum,
        missing: Stratum,
    },
    Diamond {
        stratum: Stratum,
        report: DiamondReport,
    },
}

impl fmt::Display for DescriptorViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::MissingAmbient => write!(f, "missing Y stratum"),
            Self::DuplicateComponent(id) => write!(f, "component id {id} is declared twice"),
            Self::RepeatedId(ids) => write!(f, "stratum key {ids:?} repeats an id"),
            Self::UnknownComponent { stratum, id } => {
                write!(f, "stratum {stratum} refers to undeclared component {id}")
            }
            Self::StratumDimension {
                stratum,
                expected,
                found,
            } => write!(
                f,
                "stratum {stratum} must have dimension {expected}, its diamond has dimension {found}"
            ),
            Self::NotDownwardClosed { stratum, missing } => write!(
                f,
                "stratum {stratum} is present but its superset stratum {missing} is absent"
            ),
            Self::Diamond { stratum, report } => write!(f, "stratum {stratum}: {report}"),
        }
    }
}

/// Combinatorial data of a log-resolution `f: Y -> X`: the exceptional
/// components with their discrepancies and the Hodge diamonds of all nonempty
/// closed strata `D_J` (with `D_{} = Y`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolutionDescriptor {
    dim: u32,
    label: String,
    components: Vec<Component>,
    strata: BTreeMap<Stratum, HodgeDiamond>,
}

impl ResolutionDescriptor {
    pub fn new(
        dim: u32,
        label: impl Into<String>,
        components: Vec<Component>,
        strata: BTreeMap<Stratum, HodgeDiamond>,
    ) -> Result<Self, Error> {
        let d = Self::new_unchecked(dim, label, components, strata);
        let violations = d.violations();
        if violations.is_empty() {
            Ok(d)
        } else {
            Err(Error::InvalidDescriptor(violations))
        }
    }

    /// Builds a descriptor without validating it. Intended for negative
    /// controls; the stringy operations assume a valid descriptor.
    pub fn new_unchecked(
        dim: u32,
        label: impl Into<String>,
        mut components: Vec<Component>,
        strata: BTreeMap<Stratum, HodgeDiamond>,
    ) -> Self {
        components.sort_by_key(|c| c.id);
        Self {
            dim,
            label: label.into(),
            components,
            strata,
        }
    }

    /// Convenience constructor from raw id lists.
    pub fn from_parts<I>(
        dim: u32,
        label: impl Into<String>,
        components: Vec<Component>,
        strata: I,
    ) -> Result<Self, Error>
    where
        I: IntoIterator<Item = (Vec<u32>, HodgeDiamond)>,
    {
        let mut map = BTreeMap::new();
        for (ids, diamond) in strata {
            let key = Stratum::new(ids.clone())
                .ok_or_else(|| Error::InvalidDescriptor(vec![DescriptorViolation::RepeatedId(ids)]))?;
            map.insert(key, diamond);
        }
        Self::new(dim, label, components, map)
    }

    /// A smooth variety: no exceptional divisor.
    pub fn smooth(label: impl Into<String>, y: HodgeDiamond) -> Result<Self, Error> {
        Self::from_parts(y.dim(), label, Vec::new(), [(Vec::new(), y)])
    }

    pub fn violations(&self) -> Vec<DescriptorViolation> {
        let mut out = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &self.components {
            if !seen.insert(c.id) {
                out.push(DescriptorViolation::DuplicateComponent(c.id));
            }
        }
        if !self.strata.contains_key(&Stratum::ambient()) {
            out.push(DescriptorViolation::MissingAmbient);
        }
        for (stratum, diamond) in &self.strata {
            for &id in stratum.ids() {
                if !seen.contains(&id) {
                    out.push(DescriptorViolation::UnknownComponent {
                        stratum: stratum.clone(),
                        id,
                    });
                }
            }
            let expected = i64::from(self.dim) - stratum.codim() as i64;
            if expected != i64::from(diamond.dim()) {
                out.push(DescriptorViolation::StratumDimension {
                    stratum: stratum.clone(),
                    expected,
                    found: diamond.dim(),
                });
            }
            if stratum.codim() > 1 {
                for facet in stratum.facets() {
                    if !self.strata.contains_key(&facet) {
                        out.push(DescriptorViolation::NotDownwardClosed {
                            stratum: stratum.clone(),
                            missing: facet,
                        });
                    }
                }
            }
            let report = diamond.validate(DiamondChecks::SYMMETRY_ONLY);
            if !report.is_ok() {
                out.push(DescriptorViolation::Diamond {
                    stratum: stratum.clone(),
                    report,
                });
            }
        }
        out
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn discrepancy(&self, id: u32) -> Option<u32> {
        self.components.iter().find(|c| c.id == id).map(|c| c.discrepancy)
    }

    /// All discrepancies are at least 1.
    pub fn is_terminal(&self) -> bool {
        self.components.iter().all(|c| c.discrepancy >= 1)
    }

    pub fn strata(&self) -> impl Iterator<Item = (&Stratum, &HodgeDiamond)> {
        self.strata.iter()
    }

    pub fn stratum(&self, ids: &[u32]) -> Option<&HodgeDiamond> {
        let key = Stratum::new(ids.to_vec())?;
        self.strata.get(&key)
    }

    /// The diamond of `Y`; the zero diamond if absent (invalid descriptor).
    pub fn ambient(&self) -> HodgeDiamond {
        self.strata
            .get(&Stratum::ambient())
            .cloned()
            .unwrap_or_else(|| HodgeDiamond::zero(self.dim))
    }

    /// Diamond of `D(k)`, the disjoint union of all `D_J` with `|J| = k`;
    /// `D(0) = Y`. Returns the zero diamond when no such stratum exists.
    pub fn level(&self, k: usize) -> HodgeDiamond {
        let dim = (self.dim as usize).saturating_sub(k) as u32;
        self.strata
            .iter()
            .filter(|(s, d)| s.codim() == k && d.dim() == dim)
            .fold(HodgeDiamond::zero(dim), |acc, (_, d)| {
                acc.disjoint_union(d).expect("same dimension")
            })
    }

    /// Largest `|J|` over the present strata.
    pub fn depth(&self) -> usize {
        self.strata.keys().map(Stratum::codim).max().unwrap_or(0)
    }

    /// Strata whose diamond fails Poincare duality.
    pub fn poincare_duality_failures(&self) -> Vec<Stratum> {
        self.strata
            .iter()
            .filter(|(_, d)| !d.validate(DiamondChecks::SMOOTH_PROJECTIVE).is_ok())
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// Replaces every stratum diamond by `f(stratum, diamond)`.
    pub fn map_strata<F>(&self, dim: u32, label: impl Into<String>, mut f: F) -> Self
    where
        F: FnMut(&Stratum, &HodgeDiamond) -> HodgeDiamond,
    {
        Self {
            dim,
            label: label.into(),
            components: self.components.clone(),
            strata: self.strata.iter().map(|(s, d)| (s.clone(), f(s, d))).collect(),
        }
    }
}
