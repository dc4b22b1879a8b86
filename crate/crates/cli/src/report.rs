//! Analysis reports.

use std::fmt::Write as _;

use hypersym::convex::{Infeasibility, Method, Status};
use hypersym::toric::{
    cint_probe, compactness_test, connectedness_test, degeneracy_test, first_violated, freeness_test, incidence,
    smoothness_test, AnalysisOptions, CintResult, ConePoint, DegeneracyVerdict, DegeneracyWitness,
    SmoothnessVerdict, ToricConfig, Truth,
};
use hypersym::{Error, Result};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::config::{from_q, to_q, ConfigDocument, Q};

pub const TOOL: &str = "hypersym";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Yes,
    No,
    Holds,
    Fails,
    Degenerate,
    NondegenerateAtSampled,
    Nonempty,
    Empty,
    Unknown,
}

/// `(a, Re b, Im b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointDoc {
    pub a: Vec<Q>,
    pub b_re: Vec<Q>,
    pub b_im: Vec<Q>,
}

impl PointDoc {
    pub fn new(p: &ConePoint) -> Self {
        Self {
            a: to_q(&p.a),
            b_re: to_q(&p.b_re()),
            b_im: to_q(&p.b_im()),
        }
    }

    pub fn point(&self) -> ConePoint {
        ConePoint::new(from_q(&self.a), from_q(&self.b_re), from_q(&self.b_im))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    /// A point of `W_k ∩ K`.
    WallPoint { wall: usize, method: Method, point: PointDoc },
    /// `a_k − |b_k| ≥ margin > 0` on `K`.
    WallExcluded { wall: usize, margin: Q },
    WallUndecided { wall: usize, resolution: Option<usize> },
    /// Outer polygonal relaxation with this many cuts is infeasible.
    Farkas { cuts: usize, equality: Vec<Q>, inequality: Vec<Q> },
    /// Lattice data of `(u_k)_{k∈J}` at a point of `∩_{k∈J} V_k ∩ K`.
    Lattice {
        j: Vec<usize>,
        invariant_factors: Vec<String>,
        independent: bool,
        point: PointDoc,
    },
    StratumUndecided { j: Vec<usize> },
    Degeneracy {
        point: PointDoc,
        zeta: Vec<Q>,
        s: Vec<Q>,
        walls: Vec<usize>,
    },
    Search {
        wall_subsets_excluded: usize,
        wall_subsets_unresolved: usize,
        samples_tested: usize,
    },
    Interior { point: PointDoc },
    Smoothness {
        point: PointDoc,
        l: Vec<usize>,
        j: Vec<usize>,
        kernel_dim: usize,
        verdict: SmoothnessVerdict,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub status: VerdictStatus,
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resolution: Option<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub evidence: Vec<Evidence>,
}

impl Verdict {
    fn new(status: VerdictStatus, method: &str) -> Self {
        Self {
            status,
            method: method.into(),
            resolution: None,
            evidence: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StratumRow {
    pub j: Vec<usize>,
    pub status: VerdictStatus,
    pub invariant_factors: Vec<String>,
    pub extends_to_basis: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<PointDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub smoothness: Option<SmoothnessVerdict>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub tool: String,
    pub version: String,
    pub input: ConfigDocument,
    pub options: AnalysisOptions,
    pub connected: Verdict,
    pub compact: Verdict,
    pub freeness: Verdict,
    pub smoothness: Verdict,
    pub degeneracy: Verdict,
    pub cint: Verdict,
    pub strata: Vec<StratumRow>,
}

impl ReportDocument {
    pub fn verdicts(&self) -> [(&'static str, &Verdict); 6] {
        [
            ("connected", &self.connected),
            ("compact", &self.compact),
            ("freeness", &self.freeness),
            ("smoothness", &self.smoothness),
            ("degeneracy", &self.degeneracy),
            ("cint", &self.cint),
        ]
    }

    pub fn has_unknown(&self) -> bool {
        self.verdicts().iter().any(|(_, v)| v.status == VerdictStatus::Unknown)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    /// Re-checks every embedded witness exactly against the echoed input;
    /// returns descriptions of the ones that fail.
    pub fn revalidate(&self) -> Result<Vec<String>> {
        let cfg = self.input.to_config()?;
        let sys = cfg.cone_system();
        let mut failures = Vec::new();
        let in_k = |p: &ConePoint| first_violated(&cfg, p).is_none();
        for (name, verdict) in self.verdicts() {
            for ev in &verdict.evidence {
                let ok = match ev {
                    Evidence::WallPoint { wall, point, .. } => {
                        let p = point.point();
                        in_k(&p) && sys.cones[*wall].gap(&p.to_vars()).is_zero()
                    }
                    Evidence::Lattice { j, point, .. } => {
                        let p = point.point();
                        in_k(&p) && j.iter().all(|k| incidence(&cfg, &p).j.contains(k))
                    }
                    Evidence::Degeneracy { point, zeta, s, walls } => DegeneracyWitness {
                        point: point.point(),
                        zeta: from_q(zeta),
                        s: from_q(s),
                        walls: walls.clone(),
                    }
                    .verify(&cfg),
                    Evidence::Interior { point } => {
                        let p = point.point();
                        in_k(&p) && incidence(&cfg, &p).l.is_empty()
                    }
                    Evidence::Smoothness { point, l, j, .. } => {
                        let p = point.point();
                        let inc = incidence(&cfg, &p);
                        in_k(&p) && inc.l == *l && inc.j == *j
                    }
                    _ => true,
                };
                if !ok {
                    failures.push(format!("{name}: {ev:?}"));
                }
            }
        }
        for row in &self.strata {
            if let Some(w) = &row.witness {
                let p = w.point();
                if !(in_k(&p) && row.j.iter().all(|k| incidence(&cfg, &p).j.contains(k))) {
                    failures.push(format!("stratum {:?}", row.j));
                }
            }
        }
        Ok(failures)
    }
}

fn truth_status(t: Truth, yes: VerdictStatus, no: VerdictStatus) -> VerdictStatus {
    match t {
        Truth::Yes => yes,
        Truth::No => no,
        Truth::Unknown => VerdictStatus::Unknown,
    }
}

fn infeasibility_evidence(wall: usize, inf: &Infeasibility) -> Evidence {
    match inf {
        Infeasibility::Exclusion { margin, .. } => Evidence::WallExcluded {
            wall,
            margin: Q(margin.clone()),
        },
        Infeasibility::Farkas { cuts, certificate } => Evidence::Farkas {
            cuts: *cuts,
            equality: to_q(&certificate.equality),
            inequality: to_q(&certificate.inequality),
        },
    }
}

fn smoothness_evidence(cfg: &ToricConfig, p: &ConePoint) -> Option<Evidence> {
    let r = smoothness_test(cfg, p).ok()?;
    Some(Evidence::Smoothness {
        point: PointDoc::new(p),
        l: r.incidence.l,
        j: r.incidence.j,
        kernel_dim: r.kernel_dim,
        verdict: r.verdict,
    })
}

/// Runs every test on `cfg`. Deterministic for fixed options.
pub fn analyze(cfg: &ToricConfig, input: &ConfigDocument, opts: &AnalysisOptions) -> ReportDocument {
    // connectedness: W_k ∩ K for each wall
    let conn = connectedness_test(cfg, opts);
    let mut connected = Verdict::new(
        truth_status(conn.connected, VerdictStatus::Yes, VerdictStatus::No),
        "boundary_meet",
    );
    connected.resolution = Some(opts.sweep_resolution);
    let mut probe_points: Vec<ConePoint> = Vec::new();
    for (k, w) in conn.walls.iter().enumerate() {
        connected.evidence.push(match &w.status {
            Status::Feasible(x) => {
                let p = ConePoint::from_vars(cfg.n(), x);
                probe_points.push(p.clone());
                Evidence::WallPoint {
                    wall: k,
                    method: w.method,
                    point: PointDoc::new(&p),
                }
            }
            Status::Infeasible(inf) => infeasibility_evidence(k, inf),
            Status::Unknown => Evidence::WallUndecided {
                wall: k,
                resolution: w.resolution,
            },
        });
    }

    let compact = Verdict::new(
        if compactness_test(cfg) {
            VerdictStatus::Yes
        } else {
            VerdictStatus::No
        },
        "positive_span_lp",
    );

    // freeness and the stratum table
    let free = freeness_test(cfg, opts);
    let mut freeness = Verdict::new(
        truth_status(free.holds, VerdictStatus::Holds, VerdictStatus::Fails),
        "vertex_strata_snf",
    );
    let mut strata = Vec::new();
    for s in &free.strata {
        let witness = s.witness.as_ref();
        if let Some(p) = witness {
            probe_points.push(p.clone());
        }
        let factors: Vec<String> = s.invariant_factors.iter().map(ToString::to_string).collect();
        if !s.extends_to_basis() {
            if let Some(p) = witness {
                freeness.evidence.push(Evidence::Lattice {
                    j: s.j.clone(),
                    invariant_factors: factors.clone(),
                    independent: s.independent,
                    point: PointDoc::new(p),
                });
            }
        }
        strata.push(StratumRow {
            j: s.j.clone(),
            status: VerdictStatus::Nonempty,
            invariant_factors: factors,
            extends_to_basis: s.extends_to_basis(),
            witness: witness.map(PointDoc::new),
            smoothness: witness.and_then(|p| smoothness_test(cfg, p).ok()).map(|r| r.verdict),
        });
    }
    for j in &free.undetermined {
        freeness.evidence.push(Evidence::StratumUndecided { j: j.clone() });
        strata.push(StratumRow {
            j: j.clone(),
            status: VerdictStatus::Unknown,
            invariant_factors: Vec::new(),
            extends_to_basis: false,
            witness: None,
            smoothness: None,
        });
    }
    if cfg.d() > opts.max_d {
        freeness.resolution = Some(opts.max_d);
    }

    let cint_result = cint_probe(cfg);
    let mut cint = Verdict::new(
        match cint_result {
            CintResult::Point(_) => VerdictStatus::Nonempty,
            CintResult::Empty => VerdictStatus::Empty,
            CintResult::Unknown => VerdictStatus::Unknown,
        },
        "strict_interior",
    );
    if let CintResult::Point(p) = &cint_result {
        cint.evidence.push(Evidence::Interior { point: PointDoc::new(p) });
        probe_points.push(p.clone());
    }

    let deg = degeneracy_test(cfg, &probe_points, opts);
    let mut degeneracy = Verdict::new(
        match deg.verdict {
            DegeneracyVerdict::Degenerate(_) => VerdictStatus::Degenerate,
            DegeneracyVerdict::NondegenerateAtSampled => VerdictStatus::NondegenerateAtSampled,
        },
        "walls_meet+pointwise",
    );
    degeneracy.resolution = Some(opts.samples);
    if let DegeneracyVerdict::Degenerate(w) = &deg.verdict {
        degeneracy.evidence.push(Evidence::Degeneracy {
            point: PointDoc::new(&w.point),
            zeta: to_q(&w.zeta),
            s: to_q(&w.s),
            walls: w.walls.clone(),
        });
        probe_points.push(w.point.clone());
    }
    degeneracy.evidence.push(Evidence::Search {
        wall_subsets_excluded: deg.wall_subsets_excluded,
        wall_subsets_unresolved: deg.wall_subsets_unresolved,
        samples_tested: deg.samples_tested,
    });

    // Λ-injectivity at every point found above
    let mut smoothness = Verdict::new(VerdictStatus::Holds, "lambda_rank");
    let mut seen = std::collections::HashSet::new();
    for p in &probe_points {
        if !seen.insert(p.clone()) {
            continue;
        }
        if let Some(ev) = smoothness_evidence(cfg, p) {
            if let Evidence::Smoothness { verdict, .. } = &ev {
                if *verdict != SmoothnessVerdict::NecessaryConditionHolds {
                    smoothness.status = VerdictStatus::Fails;
                }
            }
            smoothness.evidence.push(ev);
        }
    }

    ReportDocument {
        tool: TOOL.into(),
        version: env!("CARGO_PKG_VERSION").into(),
        input: input.clone(),
        options: opts.clone(),
        connected,
        compact,
        freeness,
        smoothness,
        degeneracy,
        cint,
        strata,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

fn status_name(s: VerdictStatus) -> String {
    serde_json::to_value(s)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

fn summary(v: &Verdict) -> String {
    let mut parts = Vec::new();
    for ev in &v.evidence {
        match ev {
            Evidence::WallExcluded { wall, margin } => parts.push(format!("W{} misses K (margin {:?})", wall + 1, margin)),
            Evidence::Farkas { cuts, .. } => parts.push(format!("outer relaxation with {cuts} cuts infeasible")),
            Evidence::WallUndecided { wall, .. } => parts.push(format!("W{} undecided", wall + 1)),
            Evidence::Lattice { j, invariant_factors, .. } => parts.push(format!(
                "J = {:?} has invariant factors [{}]",
                j.iter().map(|k| k + 1).collect::<Vec<_>>(),
                invariant_factors.join(", ")
            )),
            Evidence::StratumUndecided { j } => {
                parts.push(format!("J = {:?} undecided", j.iter().map(|k| k + 1).collect::<Vec<_>>()))
            }
            Evidence::Degeneracy { walls, .. } if !walls.is_empty() => parts.push(format!(
                "walls {:?} meet in K",
                walls.iter().map(|k| k + 1).collect::<Vec<_>>()
            )),
            Evidence::Degeneracy { .. } => parts.push("pointwise witness".into()),
            Evidence::Search { samples_tested, .. } => parts.push(format!("{samples_tested} samples")),
            Evidence::Smoothness { verdict, l, .. } if *verdict != SmoothnessVerdict::NecessaryConditionHolds => {
                parts.push(format!("{verdict:?} at |L| = {}", l.len()))
            }
            _ => {}
        }
    }
    parts.dedup();
    parts.join("; ")
}

/// JSON (stable field order, pretty-printed) or a one-line-per-verdict
/// text summary.
pub fn emit_report(r: &ReportDocument, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            for (name, v) in r.verdicts() {
                let detail = summary(v);
                let res = v.resolution.map(|n| format!(", resolution {n}")).unwrap_or_default();
                let _ = write!(s, "{name}: {} [{}{res}]", status_name(v.status), v.method);
                if !detail.is_empty() {
                    let _ = write!(s, " {detail}");
                }
                s.push('\n');
            }
            s
        }
    }
}
