//! Diagonal distance of a graph and distances between codeword labellings.
//!
//! Every vector of the nullspace of `Λ = [I | Γ]` has the form `(−Γx | x)`,
//! so the search runs over `x ∈ (ℤ/pℤ)ⁿ` directly instead of spanning a
//! kernel basis. For p = 2 the x-space is walked in Gray-code order with `Γx`
//! and the support held as bitmasks; other primes use a mixed-radix odometer
//! where each digit increment adds one column of Γ.
//!
//! The affine variant for a pair of labellings searches `(d − Γx | x)` with
//! `d = c_r − c_s`, which solves `Λk = d`.

use serde::Serialize;
use thiserror::Error;

use crate::field::{FieldMatrix, FieldVector, PrimeField};
use crate::graph::{GraphLabelling, Multigraph};

/// Default cap on the number of candidate vectors, pⁿ.
pub const DEFAULT_MAX_CANDIDATES: u64 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error(
        "search over {p}^{n} candidates exceeds the budget \
         (max {max_vertices} vertices, {max_candidates} candidates); use --force to override"
    )]
    SearchTooLarge {
        p: u32,
        n: usize,
        max_vertices: usize,
        max_candidates: u64,
    },
    #[error("{p}^{n} candidates cannot be enumerated")]
    Unenumerable { p: u32, n: usize },
    #[error("Γ must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("labelling has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("at least one codeword is required")]
    NoCodewords,
}

/// A 2n-entry vector laid out as `(z₁ … zₙ | x₁ … xₙ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymplecticVector {
    n: usize,
    entries: FieldVector,
}

impl SymplecticVector {
    pub fn from_parts(z: &FieldVector, x: &FieldVector) -> Self {
        assert_eq!(z.len(), x.len(), "z and x halves differ in length");
        let mut entries = z.as_slice().to_vec();
        entries.extend_from_slice(x.as_slice());
        Self {
            n: z.len(),
            entries: FieldVector::from_residues_unchecked(entries),
        }
    }

    /// Splits a vector of even length into its two halves.
    pub fn from_vector(v: FieldVector) -> Result<Self, DistanceError> {
        if !v.len().is_multiple_of(2) {
            return Err(DistanceError::LengthMismatch {
                expected: v.len() + 1,
                found: v.len(),
            });
        }
        Ok(Self {
            n: v.len() / 2,
            entries: v,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn z(&self) -> &[u32] {
        &self.entries.as_slice()[..self.n]
    }

    pub fn x(&self) -> &[u32] {
        &self.entries.as_slice()[self.n..]
    }

    pub fn as_vector(&self) -> &FieldVector {
        &self.entries
    }

    /// Number of vertices `i` with `zᵢ ≠ 0` or `xᵢ ≠ 0`.
    pub fn chi_weight(&self) -> usize {
        self.z()
            .iter()
            .zip(self.x())
            .filter(|&(&z, &x)| z != 0 || x != 0)
            .count()
    }

    pub fn neg(&self, f: &PrimeField) -> Self {
        Self {
            n: self.n,
            entries: self.entries.neg(f),
        }
    }

    /// 0-based vertices in the support.
    pub fn support(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&i| self.z()[i] != 0 || self.x()[i] != 0)
            .collect()
    }
}

pub fn chi_weight(k: &SymplecticVector) -> usize {
    k.chi_weight()
}

/// `Λ = [I | Γ]`.
pub fn build_lambda(gamma: &FieldMatrix) -> Result<FieldMatrix, DistanceError> {
    if !gamma.is_square() {
        return Err(DistanceError::NotSquare {
            rows: gamma.rows(),
            cols: gamma.cols(),
        });
    }
    Ok(FieldMatrix::identity(gamma.rows())
        .hconcat(gamma)
        .expect("square blocks"))
}

/// The nullspace vector `(−Γx | x)`. The map `x ↦ kernel_point(Γ, x)` is a
/// bijection onto `ker Λ`.
pub fn kernel_point(gamma: &FieldMatrix, x: &FieldVector, f: &PrimeField) -> SymplecticVector {
    let gx = gamma.mul_vec(x, f).expect("x has length n");
    SymplecticVector::from_parts(&gx.neg(f), x)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest n searched without `force`.
    pub max_vertices: usize,
    /// Largest pⁿ searched without `force`.
    pub max_candidates: u64,
    pub force: bool,
}

impl SearchConfig {
    /// 24 vertices for p = 2, 12 otherwise, and at most 2²⁴ candidates.
    pub fn for_field(f: &PrimeField) -> Self {
        Self {
            max_vertices: if f.modulus() == 2 { 24 } else { 12 },
            max_candidates: DEFAULT_MAX_CANDIDATES,
            force: false,
        }
    }

    pub fn with_max_vertices(mut self, max_vertices: usize) -> Self {
        self.max_vertices = max_vertices.max(1);
        self
    }

    pub fn forced(mut self, force: bool) -> Self {
        self.force = force;
        self
    }

    /// Returns pⁿ when the search is allowed.
    fn admit(&self, n: usize, f: &PrimeField) -> Result<u64, DistanceError> {
        let p = f.modulus();
        let total = u32::try_from(n)
            .ok()
            .and_then(|e| u64::from(p).checked_pow(e))
            .ok_or(DistanceError::Unenumerable { p, n })?;
        if !self.force && (n > self.max_vertices || total > self.max_candidates) {
            return Err(DistanceError::SearchTooLarge {
                p,
                n,
                max_vertices: self.max_vertices,
                max_candidates: self.max_candidates,
            });
        }
        Ok(total)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceReport {
    /// Minimum positive χ-weight.
    pub distance: usize,
    /// First minimizer in enumeration order.
    pub witness: SymplecticVector,
    pub vectors_examined: u64,
}

/// Minimum χ-weight over `{(d − Γx | x)}` excluding weight 0.
fn search(
    gamma: &FieldMatrix,
    d: &FieldVector,
    f: &PrimeField,
    cfg: &SearchConfig,
) -> Result<DistanceReport, DistanceError> {
    let n = gamma.rows();
    cfg.admit(n, f)?;
    let report = if f.modulus() == 2 {
        search_binary(gamma, d)
    } else {
        search_odometer(gamma, d, f)
    };
    let lambda = build_lambda(gamma)?;
    let image = lambda
        .mul_vec(report.witness.as_vector(), f)
        .expect("witness has length 2n");
    assert_eq!(&image, d, "witness does not satisfy Λk = d");
    assert_eq!(report.witness.chi_weight(), report.distance);
    Ok(report)
}

fn mask_to_vector(mask: u64, n: usize) -> FieldVector {
    FieldVector::from_residues_unchecked((0..n).map(|i| ((mask >> i) & 1) as u32).collect())
}

/// Gray-code walk over x ∈ GF(2)ⁿ. Step t flips bit `t.trailing_zeros()`,
/// which toggles one column of Γ into the running product.
fn search_binary(gamma: &FieldMatrix, d: &FieldVector) -> DistanceReport {
    let n = gamma.rows();
    debug_assert!(n < 64);
    let columns: Vec<u64> = (0..n)
        .map(|j| (0..n).fold(0u64, |m, i| m | (u64::from(gamma.get(i, j)) << i)))
        .collect();
    let d_mask = (0..n).fold(0u64, |m, i| m | (u64::from(d.get(i)) << i));

    let mut best = usize::MAX;
    let mut best_zx = (0u64, 0u64);
    let mut examined = 0u64;

    if d_mask != 0 {
        examined += 1;
        best = d_mask.count_ones() as usize;
        best_zx = (d_mask, 0);
    }

    let mut x = 0u64;
    let mut gx = 0u64;
    let end = 1u64 << n;
    let mut t = 1u64;
    while t < end && best > 1 {
        let i = t.trailing_zeros() as usize;
        x ^= 1 << i;
        gx ^= columns[i];
        let z = d_mask ^ gx;
        let w = (z | x).count_ones() as usize;
        examined += 1;
        if w < best {
            best = w;
            best_zx = (z, x);
        }
        t += 1;
    }

    let witness =
        SymplecticVector::from_parts(&mask_to_vector(best_zx.0, n), &mask_to_vector(best_zx.1, n));
    DistanceReport {
        distance: best,
        witness,
        vectors_examined: examined,
    }
}

/// Odometer over x ∈ (ℤ/pℤ)ⁿ with digit 0 least significant. Incrementing
/// digit i (with or without wrap-around) adds column i to Γx.
fn search_odometer(gamma: &FieldMatrix, d: &FieldVector, f: &PrimeField) -> DistanceReport {
    let n = gamma.rows();
    let p = f.modulus();
    let columns: Vec<FieldVector> = (0..n).map(|j| gamma.column(j)).collect();
    let d = d.as_slice();

    let mut x = vec![0u32; n];
    let mut gx = vec![0u32; n];
    let mut best = usize::MAX;
    let mut best_x = x.clone();
    let mut best_gx = gx.clone();
    let mut examined = 0u64;

    let weight = |x: &[u32], gx: &[u32]| (0..n).filter(|&i| x[i] != 0 || d[i] != gx[i]).count();

    loop {
        let w = weight(&x, &gx);
        if w > 0 {
            examined += 1;
            if w < best {
                best = w;
                best_x.copy_from_slice(&x);
                best_gx.copy_from_slice(&gx);
                if best == 1 {
                    break;
                }
            }
        }
        let mut i = 0;
        loop {
            if i == n {
                break;
            }
            x[i] += 1;
            for (acc, &c) in gx.iter_mut().zip(columns[i].as_slice()) {
                *acc = f.add(*acc, c);
            }
            if x[i] == p {
                x[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if i == n {
            break;
        }
    }

    let z: Vec<u32> = (0..n).map(|i| f.sub(d[i], best_gx[i])).collect();
    let witness = SymplecticVector::from_parts(
        &FieldVector::from_residues_unchecked(z),
        &FieldVector::from_residues_unchecked(best_x),
    );
    DistanceReport {
        distance: best,
        witness,
        vectors_examined: examined,
    }
}

/// Minimum χ-weight over the nonzero vectors of `ker [I | Γ]`.
pub fn diagonal_distance(
    g: &Multigraph,
    f: &PrimeField,
    cfg: &SearchConfig,
) -> Result<DistanceReport, DistanceError> {
    let gamma = g.adjacency_matrix(f);
    search(&gamma, &FieldVector::zeros(g.vertex_count()), f, cfg)
}

/// Distance between two labellings: minimum positive χ-weight over solutions
/// of `Λk = c_r − c_s`. The reported witness solves that system; its negation
/// is the word carrying `c_r` to `c_s`.
pub fn pairwise_distance(
    g: &Multigraph,
    f: &PrimeField,
    cr: &GraphLabelling,
    cs: &GraphLabelling,
    cfg: &SearchConfig,
) -> Result<DistanceReport, DistanceError> {
    let n = g.vertex_count();
    for c in [cr, cs] {
        if c.len() != n {
            return Err(DistanceError::LengthMismatch {
                expected: n,
                found: c.len(),
            });
        }
    }
    let d = cr.0.sub(&cs.0, f);
    search(&g.adjacency_matrix(f), &d, f, cfg)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairEntry {
    /// 0-based codeword indices, `r < s`.
    pub r: usize,
    pub s: usize,
    pub distance: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeDistance {
    pub delta: usize,
    /// 0-based achieving pair, the first in row-major order over `r ≤ s`.
    pub pair: (usize, usize),
    pub diagonal: DistanceReport,
    pub pairs: Vec<(PairEntry, DistanceReport)>,
    codewords: usize,
}

impl CodeDistance {
    pub fn codeword_count(&self) -> usize {
        self.codewords
    }

    /// Δ_rs for 0-based indices; the table is symmetric with Δ(G) on the diagonal.
    pub fn get(&self, r: usize, s: usize) -> usize {
        if r == s {
            return self.diagonal.distance;
        }
        let (a, b) = if r < s { (r, s) } else { (s, r) };
        self.pairs
            .iter()
            .find(|(e, _)| e.r == a && e.s == b)
            .map(|(e, _)| e.distance)
            .expect("pair in range")
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        (0..self.codewords)
            .map(|r| (0..self.codewords).map(|s| self.get(r, s)).collect())
            .collect()
    }
}

/// δ = min over all pairs (r, s), diagonal pairs included.
pub fn code_distance(
    g: &Multigraph,
    f: &PrimeField,
    codewords: &[GraphLabelling],
    cfg: &SearchConfig,
) -> Result<CodeDistance, DistanceError> {
    if codewords.is_empty() {
        return Err(DistanceError::NoCodewords);
    }
    let n = g.vertex_count();
    if let Some(c) = codewords.iter().find(|c| c.len() != n) {
        return Err(DistanceError::LengthMismatch {
            expected: n,
            found: c.len(),
        });
    }
    let diagonal = diagonal_distance(g, f, cfg)?;
    let mut pairs = Vec::new();
    for r in 0..codewords.len() {
        for s in r + 1..codewords.len() {
            let report = pairwise_distance(g, f, &codewords[r], &codewords[s], cfg)?;
            pairs.push((
                PairEntry {
                    r,
                    s,
                    distance: report.distance,
                },
                report,
            ));
        }
    }

    let mut delta = diagonal.distance;
    let mut pair = (0, 0);
    for (e, _) in &pairs {
        // Row-major order over r <= s: (r, r) precedes (r, s > r).
        let candidate = (e.r, e.s);
        if e.distance < delta || (e.distance == delta && candidate < pair) {
            delta = e.distance;
            pair = candidate;
        }
    }

    Ok(CodeDistance {
        delta,
        pair,
        diagonal,
        pairs,
        codewords: codewords.len(),
    })
}
