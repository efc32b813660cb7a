//! Bit-string arithmetic for divide-and-swap cube labels.
//!
//! A vertex of `DSC_n` / `FDSC_n` is an `n`-bit string `s_1 s_2 ... s_n` with
//! `n = 2^d`. Labels are stored in a `u64`; `s_1` is the most significant bit
//! of the `n`-bit field and `s_n` the least significant, so the prefix splits
//! used by the swap rule are contiguous high-to-low slices.
//!
//! Nothing in this module materializes a graph, so every operation works up
//! to `n = 64`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported label width in bits.
pub const MAX_LABEL_BITS: u32 = 64;

/// Largest supported exponent `d` (`2^6 = 64`).
pub const MAX_D: u32 = 6;

/// Mask with the low `bits` bits set. Handles `bits == 64`.
#[inline]
pub(crate) fn low_mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Which member of the cube family a graph belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Folded divide-and-swap cube: `DSC_n` plus the e(f) edges.
    Fdsc,
    Dsc,
}

impl Variant {
    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Fdsc => "fdsc",
            Variant::Dsc => "dsc",
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fdsc" => Ok(Variant::Fdsc),
            "dsc" => Ok(Variant::Dsc),
            other => Err(Error::param(format!(
                "unknown variant `{other}`, expected fdsc or dsc"
            ))),
        }
    }
}

/// Dimension parameters: `n = 2^d` label bits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Dim {
    d: u32,
    n: u32,
}

/// An `n`-bit vertex label. Validity is relative to a [`Dim`]; construct
/// through [`Dim::label`] or [`Dim::parse_label`] to have it checked.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexLabel(pub u64);

impl VertexLabel {
    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }

    /// Index into a materialized graph. Only meaningful for `n <= 32`.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn display(self, dim: Dim) -> LabelDisplay {
        LabelDisplay { label: self, dim }
    }
}

/// Formats a label as its `n`-character binary string.
pub struct LabelDisplay {
    label: VertexLabel,
    dim: Dim,
}

impl fmt::Display for LabelDisplay {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$b}", self.label.0, width = self.dim.n as usize)
    }
}

/// The rightmost `n/2` bits of a label: the address of the module that
/// contains it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ModuleAddress(pub u64);

impl ModuleAddress {
    #[inline]
    pub fn bits(self) -> u64 {
        self.0
    }
}

/// How a neighbor is reached from a vertex.
///
/// `External` is the swap with parameter `k = 1` (the single cross edge of a
/// vertex); `Ek(k)` covers the interior swaps `2 <= k <= d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NeighborKind {
    E1,
    Ek(u32),
    External,
    Ef,
}

impl NeighborKind {
    /// The swap parameter for swap-type kinds.
    pub fn swap_parameter(self) -> Option<u32> {
        match self {
            NeighborKind::Ek(k) => Some(k),
            NeighborKind::External => Some(1),
            _ => None,
        }
    }

    pub fn is_interior(self) -> bool {
        !matches!(self, NeighborKind::External)
    }
}

impl fmt::Display for NeighborKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NeighborKind::E1 => f.write_str("e1"),
            NeighborKind::Ek(k) => write!(f, "e{k}"),
            NeighborKind::External => f.write_str("ext"),
            NeighborKind::Ef => f.write_str("ef"),
        }
    }
}

impl Dim {
    /// Builds the dimension for exponent `d`; requires `1 <= d <= 6`.
    pub fn new(d: u32) -> Result<Dim> {
        if d == 0 {
            return Err(Error::param("d must be at least 1"));
        }
        if d > MAX_D {
            return Err(Error::param(format!(
                "d = {d} gives n = 2^{d} label bits, exceeding the cap n <= {MAX_LABEL_BITS}"
            )));
        }
        Ok(Dim { d, n: 1 << d })
    }

    #[inline]
    pub fn d(self) -> u32 {
        self.d
    }

    #[inline]
    pub fn n(self) -> u32 {
        self.n
    }

    /// Dimension of a module (`n/2`), if `d >= 2`.
    pub fn half(self) -> Option<Dim> {
        (self.d >= 2).then(|| Dim {
            d: self.d - 1,
            n: self.n / 2,
        })
    }

    /// `2^n`, when it fits in a `u64`.
    pub fn vertex_count(self) -> Option<u64> {
        (self.n < 64).then(|| 1u64 << self.n)
    }

    /// Number of modules, `2^{n/2}`.
    pub fn module_count(self) -> u64 {
        1u64 << (self.n / 2)
    }

    #[inline]
    pub fn label_mask(self) -> u64 {
        low_mask(self.n)
    }

    #[inline]
    fn half_mask(self) -> u64 {
        low_mask(self.n / 2)
    }

    pub fn label(self, bits: u64) -> Result<VertexLabel> {
        if bits & !self.label_mask() != 0 {
            return Err(Error::param(format!(
                "label value {bits:#x} does not fit in {} bits",
                self.n
            )));
        }
        Ok(VertexLabel(bits))
    }

    pub fn address(self, bits: u64) -> Result<ModuleAddress> {
        if bits & !self.half_mask() != 0 {
            return Err(Error::param(format!(
                "module address {bits:#x} does not fit in {} bits",
                self.n / 2
            )));
        }
        Ok(ModuleAddress(bits))
    }

    pub fn contains(self, u: VertexLabel) -> bool {
        u.0 & !self.label_mask() == 0
    }

    /// Complements `s_1`.
    #[inline]
    pub fn e1_neighbor(self, u: VertexLabel) -> VertexLabel {
        VertexLabel(u.0 ^ (1u64 << (self.n - 1)))
    }

    /// Complements `s_2`.
    #[inline]
    pub fn f_neighbor(self, u: VertexLabel) -> VertexLabel {
        VertexLabel(u.0 ^ (1u64 << (self.n - 2)))
    }

    /// The swap rule with parameter `k`.
    ///
    /// With `p = n / 2^k`, the label splits as `m1 m2 m3` where `m1` and `m2`
    /// are the first two `p`-bit blocks. Equal blocks are both complemented,
    /// otherwise they trade places; `m3` is untouched.
    pub fn swap_neighbor(self, u: VertexLabel, k: u32) -> Result<VertexLabel> {
        if k == 0 || k > self.d {
            return Err(Error::param(format!(
                "swap parameter k = {k} outside 1..={}",
                self.d
            )));
        }
        Ok(self.swap_unchecked(u, k))
    }

    #[inline]
    pub(crate) fn swap_unchecked(self, u: VertexLabel, k: u32) -> VertexLabel {
        let n = self.n;
        let p = n >> k;
        let block = low_mask(p);
        let m1 = (u.0 >> (n - p)) & block;
        let m2 = (u.0 >> (n - 2 * p)) & block;
        let m3 = u.0 & low_mask(n - 2 * p);
        let (a, b) = if m1 == m2 {
            (!m1 & block, !m2 & block)
        } else {
            (m2, m1)
        };
        VertexLabel((a << (n - p)) | (b << (n - 2 * p)) | m3)
    }

    /// The `k`-th neighbor in the standard indexing: `1` is the e(1)
    /// neighbor, `2..=d` the interior swaps, `d + 1` the external neighbor.
    pub fn indexed_neighbor(self, u: VertexLabel, index: u32) -> VertexLabel {
        match index {
            1 => self.e1_neighbor(u),
            k if k >= 2 && k <= self.d => self.swap_unchecked(u, k),
            k if k == self.d + 1 => self.swap_unchecked(u, 1),
            _ => panic!("neighbor index {index} outside 1..={}", self.d + 1),
        }
    }

    #[inline]
    pub fn external_neighbor(self, u: VertexLabel) -> VertexLabel {
        self.swap_unchecked(u, 1)
    }

    pub fn neighbor(self, u: VertexLabel, kind: NeighborKind) -> VertexLabel {
        match kind {
            NeighborKind::E1 => self.e1_neighbor(u),
            NeighborKind::Ek(k) => self.swap_unchecked(u, k),
            NeighborKind::External => self.external_neighbor(u),
            NeighborKind::Ef => self.f_neighbor(u),
        }
    }

    /// Neighbor kinds in canonical order: `E1`, `Ek(2..=d)`, `External`, and
    /// `Ef` for the folded variant.
    pub fn kinds(self, variant: Variant) -> Vec<NeighborKind> {
        let mut kinds = Vec::with_capacity(self.degree(variant));
        kinds.push(NeighborKind::E1);
        kinds.extend((2..=self.d).map(NeighborKind::Ek));
        kinds.push(NeighborKind::External);
        if variant == Variant::Fdsc {
            kinds.push(NeighborKind::Ef);
        }
        kinds
    }

    pub fn degree(self, variant: Variant) -> usize {
        match variant {
            Variant::Fdsc => self.d as usize + 2,
            Variant::Dsc => self.d as usize + 1,
        }
    }

    pub fn neighbor_set(
        self,
        u: VertexLabel,
        variant: Variant,
    ) -> Vec<(NeighborKind, VertexLabel)> {
        self.kinds(variant)
            .into_iter()
            .map(|kind| (kind, self.neighbor(u, kind)))
            .collect()
    }

    pub fn is_adjacent(self, u: VertexLabel, v: VertexLabel, variant: Variant) -> bool {
        self.kinds(variant)
            .into_iter()
            .any(|kind| self.neighbor(u, kind) == v)
    }

    #[inline]
    pub fn module_address(self, u: VertexLabel) -> ModuleAddress {
        ModuleAddress(u.0 & self.half_mask())
    }

    /// The upper half of a label (its position inside its module).
    #[inline]
    pub fn inner_address(self, u: VertexLabel) -> ModuleAddress {
        ModuleAddress(u.0 >> (self.n / 2))
    }

    /// Concatenation `high · low` of two half-width strings.
    #[inline]
    pub fn join(self, high: ModuleAddress, low: ModuleAddress) -> VertexLabel {
        VertexLabel((high.0 << (self.n / 2)) | low.0)
    }

    #[inline]
    pub fn complement_address(self, b: ModuleAddress) -> ModuleAddress {
        ModuleAddress(!b.0 & self.half_mask())
    }

    /// `(B·B, complement(B)·B)`: the two vertices of module `B` whose
    /// external neighbors share a module.
    pub fn apex_pair(self, b: ModuleAddress) -> (VertexLabel, VertexLabel) {
        (self.join(b, b), self.join(self.complement_address(b), b))
    }

    /// Whether the two `n/4`-bit halves of a module address agree.
    pub fn address_halves_equal(self, b: ModuleAddress) -> bool {
        let q = self.n / 4;
        if q == 0 {
            return true;
        }
        (b.0 >> q) == (b.0 & low_mask(q))
    }

    pub fn parse_label(self, text: &str) -> Result<VertexLabel> {
        let mut bits = 0u64;
        let mut len = 0usize;
        for (position, ch) in text.chars().enumerate() {
            if position >= self.n as usize {
                return Err(Error::Parse {
                    position,
                    message: format!("label longer than {} characters", self.n),
                });
            }
            bits = (bits << 1)
                | match ch {
                    '0' => 0,
                    '1' => 1,
                    other => {
                        return Err(Error::Parse {
                            position,
                            message: format!("unexpected character {other:?}, expected 0 or 1"),
                        })
                    }
                };
            len += 1;
        }
        if len != self.n as usize {
            return Err(Error::Parse {
                position: len,
                message: format!("label has {len} characters, expected {}", self.n),
            });
        }
        Ok(VertexLabel(bits))
    }

    pub fn parse_address(self, text: &str) -> Result<ModuleAddress> {
        let half = Dim {
            d: self.d.saturating_sub(1),
            n: self.n / 2,
        };
        half.parse_label(text).map(|v| ModuleAddress(v.0))
    }

    pub fn format_label(self, u: VertexLabel) -> String {
        u.display(self).to_string()
    }

    pub fn format_address(self, b: ModuleAddress) -> String {
        format!("{:0width$b}", b.0, width = (self.n / 2) as usize)
    }

    /// Every label of the cube, in ascending order. Panics for `n = 64`.
    pub fn labels(self) -> impl Iterator<Item = VertexLabel> {
        let count = self
            .vertex_count()
            .expect("n = 64 labels cannot be enumerated");
        (0..count).map(VertexLabel)
    }

    pub fn addresses(self) -> impl Iterator<Item = ModuleAddress> {
        (0..self.module_count()).map(ModuleAddress)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(dim: Dim, s: &str) -> VertexLabel {
        dim.parse_label(s).unwrap()
    }

    #[test]
    fn make_dim_examples() {
        assert_eq!(Dim::new(1).unwrap().n(), 2);
        assert_eq!(Dim::new(3).unwrap().n(), 8);
        let err = Dim::new(7).unwrap_err().to_string();
        assert!(err.contains("n <= 64"), "{err}");
        assert!(Dim::new(0).is_err());
    }

    #[test]
    fn flip_rules() {
        let d2 = Dim::new(2).unwrap();
        let d3 = Dim::new(3).unwrap();
        assert_eq!(d2.e1_neighbor(lab(d2, "0000")), lab(d2, "1000"));
        assert_eq!(d3.e1_neighbor(lab(d3, "11000000")), lab(d3, "01000000"));
        assert_eq!(d2.f_neighbor(lab(d2, "0000")), lab(d2, "0100"));
        assert_eq!(d3.f_neighbor(lab(d3, "00000000")), lab(d3, "01000000"));
    }

    #[test]
    fn swap_examples() {
        let d2 = Dim::new(2).unwrap();
        let d3 = Dim::new(3).unwrap();
        assert_eq!(
            d2.swap_neighbor(lab(d2, "0000"), 1).unwrap(),
            lab(d2, "1111")
        );
        assert_eq!(
            d2.swap_neighbor(lab(d2, "1100"), 1).unwrap(),
            lab(d2, "0011")
        );
        assert_eq!(
            d3.swap_neighbor(lab(d3, "00000000"), 2).unwrap(),
            lab(d3, "11110000")
        );
        assert!(d3.swap_neighbor(lab(d3, "00000000"), 0).is_err());
        assert!(d3.swap_neighbor(lab(d3, "00000000"), 4).is_err());
    }

    #[test]
    fn neighbor_set_examples() {
        let d2 = Dim::new(2).unwrap();
        let got = d2.neighbor_set(VertexLabel(0), Variant::Fdsc);
        let want = vec![
            (NeighborKind::E1, lab(d2, "1000")),
            (NeighborKind::Ek(2), lab(d2, "1100")),
            (NeighborKind::External, lab(d2, "1111")),
            (NeighborKind::Ef, lab(d2, "0100")),
        ];
        assert_eq!(got, want);

        let d3 = Dim::new(3).unwrap();
        let got = d3.neighbor_set(VertexLabel(0), Variant::Fdsc);
        let want = vec![
            (NeighborKind::E1, lab(d3, "10000000")),
            (NeighborKind::Ek(2), lab(d3, "11110000")),
            (NeighborKind::Ek(3), lab(d3, "11000000")),
            (NeighborKind::External, lab(d3, "11111111")),
            (NeighborKind::Ef, lab(d3, "01000000")),
        ];
        assert_eq!(got, want);
        assert_eq!(d3.neighbor_set(VertexLabel(0), Variant::Dsc).len(), 4);

        let d1 = Dim::new(1).unwrap();
        let got = d1.neighbor_set(VertexLabel(0), Variant::Fdsc);
        assert_eq!(
            got,
            vec![
                (NeighborKind::E1, lab(d1, "10")),
                (NeighborKind::External, lab(d1, "11")),
                (NeighborKind::Ef, lab(d1, "01")),
            ]
        );
    }

    #[test]
    fn module_addressing() {
        let d2 = Dim::new(2).unwrap();
        let d3 = Dim::new(3).unwrap();
        assert_eq!(d2.module_address(lab(d2, "1100")), ModuleAddress(0b00));
        assert_eq!(d2.module_address(lab(d2, "0011")), ModuleAddress(0b11));
        assert_eq!(
            d3.module_address(lab(d3, "10110101")),
            ModuleAddress(0b0101)
        );

        assert_eq!(
            d2.apex_pair(ModuleAddress(0b00)),
            (lab(d2, "0000"), lab(d2, "1100"))
        );
        assert_eq!(
            d2.apex_pair(ModuleAddress(0b11)),
            (lab(d2, "1111"), lab(d2, "0011"))
        );
        assert_eq!(
            d3.apex_pair(ModuleAddress(0b0101)),
            (lab(d3, "01010101"), lab(d3, "10100101"))
        );
    }

    #[test]
    fn address_halves() {
        let d3 = Dim::new(3).unwrap();
        assert!(d3.address_halves_equal(ModuleAddress(0b0000)));
        assert!(d3.address_halves_equal(ModuleAddress(0b1010)));
        assert!(!d3.address_halves_equal(ModuleAddress(0b0001)));
    }

    #[test]
    fn label_codec() {
        let d2 = Dim::new(2).unwrap();
        let u = d2.parse_label("1100").unwrap();
        assert_eq!(u, VertexLabel(0b1100));
        assert_eq!(d2.format_label(u), "1100");
        assert_eq!(d2.parse_label("0000").unwrap(), VertexLabel(0));
        assert_eq!(d2.format_label(VertexLabel(1)), "0001");

        match d2.parse_label("210") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 0),
            other => panic!("unexpected {other:?}"),
        }
        match d2.parse_label("110") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 3),
            other => panic!("unexpected {other:?}"),
        }
        assert!(d2.parse_label("11001").is_err());
    }

    #[test]
    fn label_width_checked() {
        let d2 = Dim::new(2).unwrap();
        assert!(d2.label(15).is_ok());
        assert!(d2.label(16).is_err());
        let d6 = Dim::new(6).unwrap();
        assert!(d6.label(u64::MAX).is_ok());
    }

    #[test]
    fn maps_are_fixed_point_free_involutions() {
        for d in 1..=4 {
            let dim = Dim::new(d).unwrap();
            for u in dim.labels() {
                for kind in dim.kinds(Variant::Fdsc) {
                    let v = dim.neighbor(u, kind);
                    assert_ne!(v, u, "{kind} fixes {}", dim.format_label(u));
                    assert_eq!(dim.neighbor(v, kind), u, "{kind} not an involution");
                }
            }
        }
    }

    #[test]
    fn adjacency_symmetric_with_matching_kind() {
        for d in 1..=4 {
            let dim = Dim::new(d).unwrap();
            for u in dim.labels() {
                let nbrs = dim.neighbor_set(u, Variant::Fdsc);
                assert_eq!(nbrs.len(), dim.degree(Variant::Fdsc));
                for i in 0..nbrs.len() {
                    for j in i + 1..nbrs.len() {
                        assert_ne!(nbrs[i].1, nbrs[j].1);
                    }
                }
                for (kind, v) in nbrs {
                    assert!(dim.neighbor_set(v, Variant::Fdsc).contains(&(kind, u)));
                }
            }
        }
    }

    #[test]
    fn last_swap_flips_two_leading_bits() {
        for d in 1..=4 {
            let dim = Dim::new(d).unwrap();
            let top2 = 0b11u64 << (dim.n() - 2);
            for u in dim.labels() {
                let v = dim.swap_unchecked(u, d);
                assert_eq!(v.0 ^ u.0, top2);
                assert_eq!(dim.e1_neighbor(v), dim.f_neighbor(u));
            }
        }
    }

    #[test]
    fn apex_externals() {
        for d in 2..=4 {
            let dim = Dim::new(d).unwrap();
            for b in dim.addresses() {
                let nb = dim.complement_address(b);
                let (top, other) = dim.apex_pair(b);
                assert_eq!(dim.external_neighbor(top), dim.join(nb, nb));
                assert_eq!(dim.external_neighbor(other), dim.join(b, nb));
            }
        }
    }

    #[test]
    fn wide_labels() {
        let d6 = Dim::new(6).unwrap();
        let u = VertexLabel(0);
        assert_eq!(d6.external_neighbor(u), VertexLabel(u64::MAX));
        assert_eq!(d6.e1_neighbor(u), VertexLabel(1 << 63));
        let v = VertexLabel(0x0123_4567_89ab_cdef);
        for kind in d6.kinds(Variant::Fdsc) {
            assert_eq!(d6.neighbor(d6.neighbor(v, kind), kind), v);
        }
    }
}
