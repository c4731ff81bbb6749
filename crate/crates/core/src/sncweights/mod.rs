//! Weight-graded cohomology of a simple normal crossings variety `D`.
//!
//! For each degree `k` the restriction maps give a complex
//!
//! ```text
//! 0 -> H^k(D(1)) -> H^k(D(2)) -> ... -> H^k(D(l+1)) -> ...
//! ```
//!
//! with `delta_r: H^k(D(r)) -> H^k(D(r+1))`, and `Gr^W_k H^{k+l}(D)` is its
//! cohomology at `H^k(D(l+1))`. The `H^0` row is determined by the incidence
//! of components; higher rows need the restriction maps as input.
//!
//! # Orientation
//!
//! Components are ordered by their sorted id sets `J = (j_0 < ... < j_r)`. The
//! face of `J` obtained by dropping `j_i` enters `delta` with sign
//! `(-1)^(r - i)`. For two components meeting along one curve the row is
//! `(+1, -1)`. User-supplied matrices for higher degrees should use the same
//! convention, although ranks do not depend on it.

mod linalg;

pub use linalg::QMatrix;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::hodge::HodgeDiamond;
use crate::Error;

/// A connected component of some `D(r)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncComponent {
    /// Sorted ids of the divisors whose intersection contains it; length `r`.
    pub ids: Vec<u32>,
    pub diamond: HodgeDiamond,
    /// Indices into the previous level, one per id dropped. Empty on level 1.
    pub faces: Vec<usize>,
}

/// A Hodge piece `H^{p,q}` of degree `k = p + q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HodgePiece {
    pub p: u32,
    pub q: u32,
}

impl HodgePiece {
    pub fn degree(&self) -> u32 {
        self.p + self.q
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SncComplexData {
    levels: Vec<Vec<SncComponent>>,
    /// For each Hodge piece, `delta_1, delta_2, ...` restricted to that piece.
    maps: BTreeMap<HodgePiece, Vec<QMatrix>>,
}

fn snc_err(msg: impl Into<String>) -> Error {
    Error::InvalidSnc(msg.into())
}

impl SncComplexData {
    /// `levels[r - 1]` lists the connected components of `D(r)`.
    pub fn new(levels: Vec<Vec<SncComponent>>, maps: BTreeMap<HodgePiece, Vec<QMatrix>>) -> Result<Self, Error> {
        let data = Self { levels, maps };
        data.validate()?;
        Ok(data)
    }

    /// The data of a dual complex whose simplices are given by id sets; every
    /// nonempty `D_J` is taken to be connected. `diamond_of` supplies the
    /// diamond of each component.
    pub fn from_dual_complex<F>(simplices: &[Vec<u32>], mut diamond_of: F) -> Result<Self, Error>
    where
        F: FnMut(&[u32]) -> HodgeDiamond,
    {
        let mut sorted: Vec<Vec<u32>> = simplices
            .iter()
            .map(|s| {
                let mut s = s.clone();
                s.sort_unstable();
                s.dedup();
                s
            })
            .filter(|s| !s.is_empty())
            .collect();
        sorted.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        sorted.dedup();
        let depth = sorted.last().map_or(0, Vec::len);
        let mut levels: Vec<Vec<SncComponent>> = vec![Vec::new(); depth];
        for ids in sorted {
            let r = ids.len();
            let faces = if r == 1 {
                Vec::new()
            } else {
                (0..r)
                    .map(|i| {
                        let mut face = ids.clone();
                        face.remove(i);
                        levels[r - 2]
                            .iter()
                            .position(|c| c.ids == face)
                            .ok_or_else(|| snc_err(format!("simplex {ids:?} lacks face {face:?}")))
                    })
                    .collect::<Result<_, _>>()?
            };
            let diamond = diamond_of(&ids);
            levels[r - 1].push(SncComponent { ids, diamond, faces });
        }
        Self::new(levels, BTreeMap::new())
    }

    pub fn levels(&self) -> &[Vec<SncComponent>] {
        &self.levels
    }

    pub fn maps(&self) -> &BTreeMap<HodgePiece, Vec<QMatrix>> {
        &self.maps
    }

    /// Number of levels `r` with `D(r)` nonempty.
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    fn validate(&self) -> Result<(), Error> {
        let base_dim = self.levels.first().and_then(|l| l.first()).map(|c| c.diamond.dim());
        for (idx, level) in self.levels.iter().enumerate() {
            let r = idx + 1;
            for (ci, comp) in level.iter().enumerate() {
                let here = format!("component {ci} of D({r})");
                if comp.ids.len() != r || comp.ids.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(snc_err(format!(
                        "{here}: ids {:?} must be {r} strictly increasing ids",
                        comp.ids
                    )));
                }
                let expected_dim = base_dim.unwrap_or(0) as i64 - idx as i64;
                if i64::from(comp.diamond.dim()) != expected_dim {
                    return Err(snc_err(format!(
                        "{here}: diamond has dimension {}, expected {expected_dim}",
                        comp.diamond.dim()
                    )));
                }
                if comp.diamond.components() != 1 {
                    return Err(snc_err(format!(
                        "{here}: a connected component must have h^{{0,0}} = 1"
                    )));
                }
                self.face_signs(r, comp).map_err(|e| snc_err(format!("{here}: {e}")))?;
            }
        }
        // delta o delta = 0 on the H^0 row.
        for r in 1..self.depth() {
            let first = self.coboundary_h0(r)?;
            let second = self.coboundary_h0(r + 1)?;
            let composite = second.mul(&first).expect("shapes chain");
            if !composite.is_zero() {
                return Err(snc_err(format!("delta_{} o delta_{r} != 0 on H^0", r + 1)));
            }
        }
        for (piece, list) in &self.maps {
            if piece.degree() == 0 {
                return Err(snc_err("degree-0 maps are determined by the incidence data"));
            }
            for (i, m) in list.iter().enumerate() {
                let r = i + 1;
                let (rows, cols) = (self.piece_dim(*piece, r + 1), self.piece_dim(*piece, r));
                if m.rows() != rows || m.cols() != cols {
                    return Err(snc_err(format!(
                        "map delta_{r} on H^{{{},{}}} must be {rows}x{cols}, got {}x{}",
                        piece.p,
                        piece.q,
                        m.rows(),
                        m.cols()
                    )));
                }
            }
            for (i, pair) in list.windows(2).enumerate() {
                if !pair[1].mul(&pair[0]).expect("shapes chain").is_zero() {
                    return Err(snc_err(format!(
                        "delta_{} o delta_{} != 0 on H^{{{},{}}}",
                        i + 2,
                        i + 1,
                        piece.p,
                        piece.q
                    )));
                }
            }
        }
        Ok(())
    }

    /// `(face index, sign)` for each face of a component on level `r >= 2`.
    fn face_signs(&self, r: usize, comp: &SncComponent) -> Result<Vec<(usize, i64)>, String> {
        if r == 1 {
            return if comp.faces.is_empty() {
                Ok(Vec::new())
            } else {
                Err("components of D(1) have no faces".into())
            };
        }
        if comp.faces.len() != r {
            return Err(format!("expected {r} faces, found {}", comp.faces.len()));
        }
        let prev = &self.levels[r - 2];
        let mut seen = vec![false; r];
        let mut out = Vec::with_capacity(r);
        for &f in &comp.faces {
            let face = prev.get(f).ok_or_else(|| format!("face index {f} out of range"))?;
            let dropped = (0..r)
                .find(|&i| {
                    let mut ids = comp.ids.clone();
                    ids.remove(i);
                    ids == face.ids
                })
                .ok_or_else(|| format!("face {f} ({:?}) is not a facet of {:?}", face.ids, comp.ids))?;
            if std::mem::replace(&mut seen[dropped], true) {
                return Err(format!("two faces drop id {}", comp.ids[dropped]));
            }
            let sign = if (r - 1 - dropped).is_multiple_of(2) { 1 } else { -1 };
            out.push((f, sign));
        }
        Ok(out)
    }

    /// `dim H^{p,q}(D(r))`.
    pub fn piece_dim(&self, piece: HodgePiece, r: usize) -> usize {
        if r == 0 {
            return 0;
        }
        self.levels.get(r - 1).map_or(0, |level| {
            level
                .iter()
                .map(|c| c.diamond.get(i64::from(piece.p), i64::from(piece.q)) as usize)
                .sum()
        })
    }

    /// The simplicial coboundary `delta_r: H^0(D(r)) -> H^0(D(r+1))`, one row
    /// per component of `D(r+1)` and one column per component of `D(r)`.
    pub fn coboundary_h0(&self, r: usize) -> Result<QMatrix, Error> {
        if r == 0 || r > self.depth() {
            return Err(snc_err(format!("no incidence data for level {r}")));
        }
        let cols = self.levels[r - 1].len();
        let targets = self.levels.get(r).map_or(&[][..], Vec::as_slice);
        let mut m = QMatrix::zeros(targets.len(), cols);
        for (row, comp) in targets.iter().enumerate() {
            for (face, sign) in self.face_signs(r + 1, comp).map_err(snc_err)? {
                m.set(row, face, BigRational::from_integer(sign.into()));
            }
        }
        Ok(m)
    }

    /// `delta_r` on the `(p, q)` piece of degree `k`, when known.
    fn delta(&self, k: u32, piece: HodgePiece, r: usize) -> Result<QMatrix, Error> {
        let (rows, cols) = (self.piece_dim(piece, r + 1), self.piece_dim(piece, r));
        if k == 0 {
            return self.coboundary_h0(r);
        }
        if rows == 0 || cols == 0 {
            return Ok(QMatrix::zeros(rows, cols));
        }
        self.maps
            .get(&piece)
            .and_then(|list| list.get(r - 1))
            .cloned()
            .ok_or(Error::MissingMap {
                degree: k,
                p: piece.p,
                q: piece.q,
                level: r,
            })
    }

    fn rank_of_delta(&self, k: u32, piece: HodgePiece, r: usize) -> Result<usize, Error> {
        if r == 0 || r > self.depth() {
            return Ok(0);
        }
        Ok(self.delta(k, piece, r)?.rank())
    }

    /// `dim H^{p,q}(Gr^W_k H^{k+l}(D)) = dim ker delta_{l+1} - rank delta_l`.
    pub fn weight_graded_dims(&self, k: u32, l: usize, p: u32, q: u32) -> Result<u64, Error> {
        if p + q != k {
            return Ok(0);
        }
        let piece = HodgePiece { p, q };
        let r = l + 1;
        let dim = self.piece_dim(piece, r);
        if dim == 0 {
            return Ok(0);
        }
        let out_rank = self.rank_of_delta(k, piece, r)?;
        let in_rank = self.rank_of_delta(k, piece, l)?;
        Ok((dim - out_rank - in_rank) as u64)
    }
}

/// Exactness of the degree-`k` complex on one Hodge piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PieceExactness {
    pub p: u32,
    pub q: u32,
    /// Values of `l >= 1` where `Gr^W_k H^{k+l}(D)` is nonzero.
    pub failing_spots: Vec<usize>,
    /// `sum_{i >= 1} (-1)^(i+1) h^{p,q}(D(i))`, reported when the complex is exact past the first spot.
    pub alternating_sum: Option<i64>,
}

impl PieceExactness {
    pub fn exact(&self) -> bool {
        self.failing_spots.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PurityReport {
    pub degree: u32,
    /// `k >= n + s`, the range where the complex must be exact past its first spot.
    pub in_purity_range: bool,
    pub pieces: Vec<PieceExactness>,
}

impl PurityReport {
    pub fn exact(&self) -> bool {
        self.pieces.iter().all(PieceExactness::exact)
    }
}

/// Checks that the degree-`k` complex is exact except at `H^k(D(1))`, i.e.
/// that `H^k(D)` is pure of weight `k`, and reports `h^{p,q}(D)` as the
/// alternating sum over the `D(i)` when it is.
///
/// `n` is the dimension of the ambient variety and `s` the dimension of the
/// singular locus; purity is guaranteed for `k >= n + s`.
pub fn purity_consequence_check(data: &SncComplexData, n: u32, s: u32, k: u32) -> Result<PurityReport, Error> {
    let mut pieces = Vec::new();
    for p in 0..=k {
        let piece = HodgePiece { p, q: k - p };
        let mut failing_spots = Vec::new();
        for l in 1..data.depth() {
            if data.weight_graded_dims(k, l, p, k - p)? != 0 {
                failing_spots.push(l);
            }
        }
        // Ranks of every delta are needed even when all pieces vanish.
        data.weight_graded_dims(k, 0, p, k - p)?;
        let alternating_sum = failing_spots.is_empty().then(|| {
            (1..=data.depth())
                .map(|i| {
                    let d = data.piece_dim(piece, i) as i64;
                    if i % 2 == 1 {
                        d
                    } else {
                        -d
                    }
                })
                .sum()
        });
        pieces.push(PieceExactness {
            p,
            q: k - p,
            failing_spots,
            alternating_sum,
        });
    }
    Ok(PurityReport {
        degree: k,
        in_purity_range: k >= n + s,
        pieces,
    })
}

/// Parses `"num/den"` or `"num"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = n.trim().parse().ok()?;
            let d: num_bigint::BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

/// Formats a rational as `"num/den"`, or `"num"` when integral.
pub fn format_rational(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
