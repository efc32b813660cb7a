//! Star-shaped fault families: the explicit cut constructions and the
//! structure / substructure validity rules.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{ComponentCensus, Graph};
use crate::label::{low_mask, Dim, ModuleAddress, Variant, VertexLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    /// Every element is a full `K_{1,m}`.
    Structure,
    /// Every element is a star with at most `m` leaves.
    Substructure,
}

impl Mode {
    pub fn as_str(self) -> &'static str {
        match self {
            Mode::Structure => "structure",
            Mode::Substructure => "substructure",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "structure" => Ok(Mode::Structure),
            "substructure" => Ok(Mode::Substructure),
            other => Err(Error::param(format!(
                "unknown mode `{other}`, expected structure or substructure"
            ))),
        }
    }
}

/// A center with zero or more leaves. Only center–leaf adjacency matters;
/// edges among leaves are ignored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Star {
    pub center: VertexLabel,
    pub leaves: Vec<VertexLabel>,
}

impl Star {
    pub fn new(center: VertexLabel, leaves: Vec<VertexLabel>) -> Self {
        Star { center, leaves }
    }

    pub fn singleton(center: VertexLabel) -> Self {
        Star {
            center,
            leaves: Vec::new(),
        }
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexLabel> + '_ {
        std::iter::once(self.center).chain(self.leaves.iter().copied())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaultFamily {
    pub elements: Vec<Star>,
    /// Pattern order: 0 is `K_1`, 1 is `K_{1,1}`, `m` is `K_{1,m}`.
    pub pattern_m: u32,
    pub mode: Mode,
}

impl FaultFamily {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Union of element vertex sets, sorted and deduplicated.
    pub fn removed_vertices(&self) -> Vec<VertexLabel> {
        let mut all: Vec<_> = self.elements.iter().flat_map(|s| s.vertices()).collect();
        all.sort_unstable();
        all.dedup();
        all
    }

    /// Whether the removed vertices contain all of `N(u)` but not `u`.
    pub fn isolates(&self, u: VertexLabel, dim: Dim) -> bool {
        let removed = self.removed_vertices();
        removed.binary_search(&u).is_err()
            && dim
                .neighbor_set(u, Variant::Fdsc)
                .iter()
                .all(|(_, v)| removed.binary_search(v).is_ok())
    }

    pub fn to_json(&self, dim: Dim) -> FamilyJson {
        FamilyJson {
            mode: self.mode,
            m: self.pattern_m,
            elements: self
                .elements
                .iter()
                .map(|s| StarJson {
                    center: dim.format_label(s.center),
                    leaves: s.leaves.iter().map(|&l| dim.format_label(l)).collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &FamilyJson, dim: Dim) -> Result<Self> {
        let elements = json
            .elements
            .iter()
            .map(|s| {
                Ok(Star {
                    center: dim.parse_label(&s.center)?,
                    leaves: s
                        .leaves
                        .iter()
                        .map(|l| dim.parse_label(l))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(FaultFamily {
            elements,
            pattern_m: json.m,
            mode: json.mode,
        })
    }
}

/// Wire form of a [`FaultFamily`], labels as binary strings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub mode: Mode,
    pub m: u32,
    pub elements: Vec<StarJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarJson {
    pub center: String,
    pub leaves: Vec<String>,
}

/// First rule a family breaks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub element: usize,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "element {}: {}", self.element, self.message)
    }
}

#[derive(Clone, Debug)]
pub struct CutReport {
    pub family: FaultFamily,
    pub removed_vertex_count: usize,
    pub census: ComponentCensus,
    pub is_cut: bool,
    pub isolated_target: Option<VertexLabel>,
}

/// Singletons on `N(u)`.
pub fn k1_cut(u: VertexLabel, dim: Dim) -> FaultFamily {
    FaultFamily {
        elements: dim
            .neighbor_set(u, Variant::Fdsc)
            .into_iter()
            .map(|(_, v)| Star::singleton(v))
            .collect(),
        pattern_m: 0,
        mode: Mode::Structure,
    }
}

/// `d + 1` single edges covering `N(u)`: `{u_1, (u_1)_{d+1}}` and
/// `{u_j, (u_j)_1}` for `j = 2..=d+1`. The `j = d` element is `{u_d, u_f}`.
pub fn k11_cut(u: VertexLabel, dim: Dim) -> Result<FaultFamily> {
    if dim.d() < 2 {
        return Err(Error::param(
            "the K_{1,1} construction needs d >= 2; use the oracle for d = 1",
        ));
    }
    dim.label(u.0)?;
    let d = dim.d();
    let u1 = dim.e1_neighbor(u);
    let mut elements = vec![Star::new(u1, vec![dim.external_neighbor(u1)])];
    for j in 2..=d + 1 {
        let uj = dim.indexed_neighbor(u, j);
        elements.push(Star::new(uj, vec![dim.e1_neighbor(uj)]));
    }
    Ok(FaultFamily {
        elements,
        pattern_m: 1,
        mode: Mode::Structure,
    })
}

/// Whether [`k1m_cut`] yields a valid family for module `b1`: the two
/// quarters of `b1` agree, and every block of a quarter, down to single
/// bits, is a pair of equal or complementary halves. Otherwise some named
/// leaf `u_{j-1}` is not adjacent to its center `(u_j)_{j-1}`.
pub fn k1m_supports(dim: Dim, b1: ModuleAddress) -> bool {
    fn self_similar(bits: u64, width: u32) -> bool {
        if width <= 1 {
            return true;
        }
        let h = width / 2;
        let mask = low_mask(h);
        let (hi, lo) = (bits >> h, bits & mask);
        (hi == lo || hi == !lo & mask) && self_similar(lo, h)
    }
    dim.address_halves_equal(b1) && self_similar(b1.0 & low_mask(dim.n() / 4), dim.n() / 4)
}

/// `K_{1,m}` structure cut of size `⌊d/2⌋ + 1` isolating
/// `u = complement(B1)·B1`. `B1` must satisfy [`k1m_supports`].
pub fn k1m_cut(dim: Dim, m: u32, b1: ModuleAddress) -> Result<(FaultFamily, VertexLabel)> {
    let d = dim.d();
    if dim.n() < 4 {
        return Err(Error::param(
            "the K_{1,m} construction needs n >= 4 (d >= 2)",
        ));
    }
    if m < 2 || m > d + 1 {
        return Err(Error::param(format!("m = {m} outside 2..={}", d + 1)));
    }
    dim.address(b1.0)?;
    if !dim.address_halves_equal(b1) {
        return Err(Error::param(format!(
            "module address {} must have equal halves so that u_2 = B1·B1",
            dim.format_address(b1)
        )));
    }
    if !k1m_supports(dim, b1) {
        return Err(Error::param(format!(
            "module address {}: each block of its halves must split into equal or complementary \
             halves, recursively; otherwise the construction's stars are not adjacency-valid",
            dim.format_address(b1)
        )));
    }
    k1m_named_stars(dim, m, b1)
}

/// The construction itself, without the module check.
fn k1m_named_stars(dim: Dim, m: u32, b1: ModuleAddress) -> Result<(FaultFamily, VertexLabel)> {
    let d = dim.d();
    let u = dim.join(dim.complement_address(b1), b1);
    let nb = |v: VertexLabel, j: u32| dim.indexed_neighbor(v, j);
    let uf = dim.f_neighbor(u);
    let extra = (m - 2) as usize;

    let mut named: Vec<(VertexLabel, [VertexLabel; 2])> = Vec::new();
    if d % 2 == 1 {
        let u2 = nb(u, 2);
        named.push((dim.external_neighbor(u2), [u2, nb(u, d + 1)]));
        for j in (4..d).step_by(2) {
            let uj = nb(u, j);
            named.push((nb(uj, j - 1), [uj, nb(u, j - 1)]));
        }
    } else {
        for j in (3..d).step_by(2) {
            let uj = nb(u, j);
            named.push((nb(uj, j - 1), [uj, nb(u, j - 1)]));
        }
        let ext = nb(u, d + 1);
        let c = dim.e1_neighbor(ext);
        named.push((c, [ext, nb(c, d)]));
    }
    named.push((uf, [nb(u, 1), nb(u, d)]));

    let elements = named
        .into_iter()
        .map(|(center, pair)| {
            let mut leaves = pair.to_vec();
            leaves.extend(fillers(
                dim,
                center,
                &[pair[0], pair[1], dim.f_neighbor(center)],
                extra,
            )?);
            Ok(Star::new(center, leaves))
        })
        .collect::<Result<_>>()?;
    Ok((
        FaultFamily {
            elements,
            pattern_m: m,
            mode: Mode::Structure,
        },
        u,
    ))
}

/// Smallest-label neighbors of `center` outside `exclude`.
fn fillers(
    dim: Dim,
    center: VertexLabel,
    exclude: &[VertexLabel],
    count: usize,
) -> Result<Vec<VertexLabel>> {
    let mut pool: Vec<_> = dim
        .neighbor_set(center, Variant::Fdsc)
        .into_iter()
        .map(|(_, v)| v)
        .filter(|v| !exclude.contains(v))
        .collect();
    pool.sort_unstable();
    if pool.len() < count {
        return Err(Error::param(format!(
            "center {} has only {} filler candidates, {count} needed",
            dim.format_label(center),
            pool.len()
        )));
    }
    pool.truncate(count);
    Ok(pool)
}

/// Checks star shape, adjacency and the mode's leaf-count rule using label
/// arithmetic only.
pub fn validate_family(fam: &FaultFamily, dim: Dim) -> std::result::Result<(), Violation> {
    for (idx, star) in fam.elements.iter().enumerate() {
        let fail = |message: String| Violation {
            element: idx,
            message,
        };
        for v in star.vertices() {
            if !dim.contains(v) {
                return Err(fail(format!(
                    "label {:#x} is wider than {} bits",
                    v.0,
                    dim.n()
                )));
            }
        }
        let count = star.leaves.len() as u32;
        match fam.mode {
            Mode::Structure if count != fam.pattern_m => {
                return Err(fail(format!(
                    "structure mode needs exactly {} leaves, found {count}",
                    fam.pattern_m
                )))
            }
            Mode::Substructure if count > fam.pattern_m => {
                return Err(fail(format!(
                    "substructure mode allows at most {} leaves, found {count}",
                    fam.pattern_m
                )))
            }
            _ => {}
        }
        let nbrs = dim.neighbor_set(star.center, Variant::Fdsc);
        for (i, &leaf) in star.leaves.iter().enumerate() {
            if leaf == star.center {
                return Err(fail("center repeated as a leaf".into()));
            }
            if star.leaves[..i].contains(&leaf) {
                return Err(fail(format!("leaf {} repeated", dim.format_label(leaf))));
            }
            if !nbrs.iter().any(|&(_, v)| v == leaf) {
                return Err(fail(format!(
                    "leaf {} is not adjacent to center {}",
                    dim.format_label(leaf),
                    dim.format_label(star.center)
                )));
            }
        }
    }
    Ok(())
}

/// Removes the family's vertices from `g` and reports the survivors.
pub fn apply_cut(g: &Graph, fam: &FaultFamily) -> CutReport {
    let removed = fam.removed_vertices();
    let census = g.components_after_removal(removed.iter().copied());
    let isolated_target = match census.component_sizes.last() {
        Some(1) => census.smallest_component_members.first().copied(),
        _ => None,
    };
    CutReport {
        family: fam.clone(),
        removed_vertex_count: removed.len(),
        is_cut: census.is_disconnected_or_trivial(),
        census,
        isolated_target,
    }
}
