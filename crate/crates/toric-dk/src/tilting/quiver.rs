//! Quiver assembly for the range-window bundle collection, with Ext
//! orthogonality evidence and DOT/JSON export.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::cohom::{rounded_hom_sheaf, verify_vanishing, CechReport, Side};
use crate::ratlat::cone::Cone;
use crate::ratlat::modules::{hilbert_module_generators_rays, hilbert_ring_generators};
use crate::ratlat::scan::LinearRegion;
use crate::ratlat::sublattice::QLattice;
use crate::ratlat::vecs::{dot_ri, int_frac_str, rat_frac_str, rat_str};
use crate::ratlat::{Int, IntVec, LatticeError, Rat, RatVec};
use crate::stacky::{fans_of, BirationalConfig, MonomialLineBundle, QDivisor};

use super::ranges::enumerate_range_classes;
use super::TiltingError;

/// Quiver of the candidate tilting collection: one vertex per bundle class,
/// arrows labelled by the lattice degrees of generating sections.
///
/// Arrows between distinct vertices are the minimal module generators of
/// the graded Hom sheaf sections over the coordinate ring; loops are the
/// ring's own irreducible monomials that do not factor through any other
/// vertex. Orthogonality entries record box-scan evidence that higher
/// sheaf cohomology of every ordered Hom pair vanishes on both sides.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TiltingData {
    pub representatives: Vec<MonomialLineBundle>,
    pub arrows: BTreeMap<(usize, usize), Vec<RatVec>>,
    pub orthogonality: Vec<OrthogonalityEntry>,
}

/// One higher-cohomology scan: the Hom sheaf from `source` to `target`
/// checked on one side of the correspondence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalityEntry {
    pub source: usize,
    pub target: usize,
    pub side: Side,
    pub report: CechReport,
}

impl TiltingData {
    /// True when every orthogonality scan found no higher-cohomology
    /// witness inside its box.
    pub fn orthogonal(&self) -> bool {
        self.orthogonality.iter().all(|e| e.report.verified())
    }
}

/// Output encoding for [`export_quiver`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuiverFormat {
    Dot,
    Json,
}

/// Serialized quiver: vertices, arrows, and an orthogonality summary, with
/// every lattice number rendered as an exact `p/q` string.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<QuiverVertex>,
    pub arrows: Vec<QuiverArrow>,
    pub orthogonality: OrthogonalitySummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuiverVertex {
    pub id: usize,
    pub k: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuiverArrow {
    pub source: usize,
    pub target: usize,
    pub degree: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OrthogonalitySummary {
    pub box_radius: String,
    pub pairs: usize,
    pub clean: bool,
    pub witnesses: usize,
}

/// Builds the quiver for all bundle classes in the range window.
///
/// `box_size` bounds the orthogonality scans; Hom generator searches use an
/// internal box that grows on demand up to the same cap, and the loop scan
/// is clamped to a small box since ring generators of valid configurations
/// stay near the origin.
pub fn build_tilting(
    config: &BirationalConfig,
    box_size: &Int,
) -> Result<TiltingData, TiltingError> {
    tilting_from_classes(config, enumerate_range_classes(config)?, box_size)
}

/// [`build_tilting`] on an explicit list of class representatives.
pub(crate) fn tilting_from_classes(
    config: &BirationalConfig,
    representatives: Vec<MonomialLineBundle>,
    box_size: &Int,
) -> Result<TiltingData, TiltingError> {
    if representatives.is_empty() {
        return Err(TiltingError::EmptyTilting);
    }
    let (fan_x, fan_y, _) = fans_of(config);
    let dim = fan_y.ambient_rank();
    let cone = Cone::new(dim, fan_y.rays().to_vec())?;
    let lattice = QLattice::standard(dim);
    let count = representatives.len();
    let mut hom: BTreeMap<(usize, usize), QDivisor> = BTreeMap::new();
    for a in 0..count {
        for b in 0..count {
            let d = rounded_hom_sheaf(&representatives[a], &representatives[b], Side::Y, config)?;
            hom.insert((a, b), d);
        }
    }
    let mut arrows: BTreeMap<(usize, usize), Vec<RatVec>> = BTreeMap::new();
    for a in 0..count {
        for b in 0..count {
            if a == b {
                continue;
            }
            let d = &hom[&(a, b)];
            let bounds: Vec<Rat> = (0..fan_y.ray_count())
                .map(|i| -d.coefficient(i))
                .collect();
            let gens = generators_with_ladder(&bounds, &cone, &lattice, box_size)?;
            if !gens.is_empty() {
                arrows.insert((a, b), gens);
            }
        }
    }
    let ring_box = std::cmp::min(box_size.clone(), Int::from(8));
    let ring_basis = hilbert_ring_generators(&cone, &lattice, &ring_box)?;
    for v in 0..count {
        let loops: Vec<RatVec> = ring_basis
            .iter()
            .filter(|h| {
                !(0..count).any(|w| {
                    w != v && factors_through(h, &hom[&(v, w)], &hom[&(w, v)], fan_y.rays())
                })
            })
            .cloned()
            .collect();
        if !loops.is_empty() {
            arrows.insert((v, v), loops);
        }
    }
    let mut orthogonality = Vec::new();
    for a in 0..count {
        for b in 0..count {
            for side in [Side::X, Side::Y] {
                let d = rounded_hom_sheaf(&representatives[a], &representatives[b], side, config)?;
                let fan = match side {
                    Side::X => &fan_x,
                    Side::Y => &fan_y,
                };
                let report = verify_vanishing(fan, &d, box_size, 1);
                orthogonality.push(OrthogonalityEntry { source: a, target: b, side, report });
            }
        }
    }
    Ok(TiltingData { representatives, arrows, orthogonality })
}

/// Hom generator scan that retries with a doubled box on `BoxTooSmall`
/// until the cap, where the error propagates.
fn generators_with_ladder(
    bounds: &[Rat],
    cone: &Cone,
    lattice: &QLattice,
    cap: &Int,
) -> Result<Vec<RatVec>, TiltingError> {
    let mut b = std::cmp::min(Int::from(4), cap.clone());
    loop {
        match hilbert_module_generators_rays(bounds, cone, lattice, lattice, &b) {
            Err(LatticeError::BoxTooSmall { .. }) if &b < cap => {
                b = std::cmp::min(&b * 2, cap.clone());
            }
            other => return Ok(other?),
        }
    }
}

/// True when `h` splits as `p + (h - p)` with `p` a section of the outgoing
/// Hom sheaf and `h - p` a section of the returning one; the two-sided ray
/// pairings bound the candidate region, so the test is exact.
fn factors_through(h: &RatVec, d_out: &QDivisor, d_back: &QDivisor, rays: &[IntVec]) -> bool {
    let mut region = LinearRegion::new(h.len());
    for (i, ray) in rays.iter().enumerate() {
        let lo = -d_out.coefficient(i);
        let hi = dot_ri(h, ray) + d_back.coefficient(i);
        region.add_two_sided(ray.clone(), &lo, &hi);
    }
    !region.is_empty().expect("ray pairings bound the factoring region")
}

/// Renders the quiver as Graphviz DOT or as pretty-printed JSON
/// (see [`QuiverJson`]); both encodings are deterministic.
pub fn export_quiver(data: &TiltingData, format: QuiverFormat) -> String {
    match format {
        QuiverFormat::Dot => export_dot(data),
        QuiverFormat::Json => {
            serde_json::to_string_pretty(&quiver_json(data)).expect("quiver serializes")
        }
    }
}

fn export_dot(data: &TiltingData) -> String {
    let mut out = String::from("digraph {\n");
    for (id, l) in data.representatives.iter().enumerate() {
        let k: Vec<String> = l.k().iter().map(Int::to_string).collect();
        out.push_str(&format!("  v{id} [label=\"k=({})\"];\n", k.join(",")));
    }
    for ((a, b), gens) in &data.arrows {
        for g in gens {
            let deg: Vec<String> = g.iter().map(rat_str).collect();
            out.push_str(&format!("  v{a} -> v{b} [label=\"({})\"];\n", deg.join(",")));
        }
    }
    out.push_str("}\n");
    out
}

fn quiver_json(data: &TiltingData) -> QuiverJson {
    let vertices = data
        .representatives
        .iter()
        .enumerate()
        .map(|(id, l)| QuiverVertex {
            id,
            k: l.k().iter().map(int_frac_str).collect(),
        })
        .collect();
    let mut arrows = Vec::new();
    for ((a, b), gens) in &data.arrows {
        for g in gens {
            arrows.push(QuiverArrow {
                source: *a,
                target: *b,
                degree: g.iter().map(rat_frac_str).collect(),
            });
        }
    }
    let box_radius = data
        .orthogonality
        .first()
        .map(|e| int_frac_str(&e.report.box_radius))
        .unwrap_or_else(|| int_frac_str(&Int::from(0)));
    let witnesses = data
        .orthogonality
        .iter()
        .map(|e| e.report.witnesses.len())
        .sum();
    QuiverJson {
        vertices,
        arrows,
        orthogonality: OrthogonalitySummary {
            box_radius,
            pairs: data.orthogonality.len(),
            clean: data.orthogonal(),
            witnesses,
        },
    }
}
