//! Brute-force reference for the distance definitions.
//!
//! Everything here acts on labellings by literally applying the colouring
//! rules: `Zᵢ` adds 1 to the label of vertex i, `Xᵢ` adds row i of Γ to every
//! label. Words are enumerated exhaustively and no linear algebra is used, so
//! results can be compared against the kernel search in [`crate::distance`].
//!
//! The weight of a word counts vertices whose exponent pair `(zᵢ, xᵢ)` is
//! nonzero. When a column of Γ vanishes mod p, `Xᵢ` is the identity map but
//! still counts toward the weight.

use thiserror::Error;

use crate::distance::{DistanceReport, SymplecticVector};
use crate::field::{FieldMatrix, FieldVector, PrimeField};
use crate::graph::{GraphLabelling, Multigraph};

/// Default cap on p^(2n), the number of words enumerated.
pub const DEFAULT_HARD_CAP: u64 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle would enumerate {p}^{} words, above the cap of {cap}", 2 * .n)]
    SearchTooLarge { p: u32, n: usize, cap: u64 },
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

/// The formal product of `Zᵢ^zᵢ Xᵢ^xᵢ` over all vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OperatorWord {
    exponents: Vec<(u32, u32)>,
}

impl OperatorWord {
    pub fn identity(n: usize) -> Self {
        Self {
            exponents: vec![(0, 0); n],
        }
    }

    pub fn new(exponents: Vec<(u32, u32)>, f: &PrimeField) -> Self {
        let p = f.modulus();
        Self {
            exponents: exponents.into_iter().map(|(z, x)| (z % p, x % p)).collect(),
        }
    }

    /// The word whose exponents are the two halves of `k`.
    pub fn from_symplectic(k: &SymplecticVector) -> Self {
        Self {
            exponents: k.z().iter().copied().zip(k.x().iter().copied()).collect(),
        }
    }

    /// `k(w) = (z₁ … zₙ | x₁ … xₙ)`.
    pub fn to_symplectic(&self) -> SymplecticVector {
        let (z, x): (Vec<u32>, Vec<u32>) = self.exponents.iter().copied().unzip();
        SymplecticVector::from_parts(
            &FieldVector::from_residues_unchecked(z),
            &FieldVector::from_residues_unchecked(x),
        )
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exponents
    }
}

fn check_index(l: &GraphLabelling, i: usize) -> Result<(), OracleError> {
    if i >= l.len() {
        return Err(OracleError::IndexOutOfRange {
            index: i,
            n: l.len(),
        });
    }
    Ok(())
}

/// `Zᵢ^e`: the label of vertex `i` (0-based) is incremented `e` times.
pub fn apply_z(
    l: &GraphLabelling,
    i: usize,
    e: u32,
    f: &PrimeField,
) -> Result<GraphLabelling, OracleError> {
    check_index(l, i)?;
    let mut out = l.0.clone();
    for _ in 0..e {
        let next = f.add(out.get(i), 1);
        out.set(i, next, f);
    }
    Ok(GraphLabelling(out))
}

/// `Xᵢ^e`: `e` times, every label `j` gains `Γᵢⱼ`.
pub fn apply_x(
    l: &GraphLabelling,
    i: usize,
    e: u32,
    gamma: &FieldMatrix,
    f: &PrimeField,
) -> Result<GraphLabelling, OracleError> {
    check_index(l, i)?;
    if gamma.rows() != l.len() || gamma.cols() != l.len() {
        return Err(OracleError::DimensionMismatch {
            expected: l.len(),
            found: gamma.rows(),
        });
    }
    let mut out = l.0.clone();
    for _ in 0..e {
        for j in 0..l.len() {
            let next = f.add(out.get(j), gamma.get(i, j));
            out.set(j, next, f);
        }
    }
    Ok(GraphLabelling(out))
}

/// Applies every factor of the word, vertex by vertex.
pub fn apply_word(
    w: &OperatorWord,
    l: &GraphLabelling,
    gamma: &FieldMatrix,
    f: &PrimeField,
) -> Result<GraphLabelling, OracleError> {
    if w.len() != l.len() {
        return Err(OracleError::DimensionMismatch {
            expected: l.len(),
            found: w.len(),
        });
    }
    let mut out = l.clone();
    for (i, &(z, x)) in w.exponents.iter().enumerate() {
        out = apply_z(&out, i, z, f)?;
        out = apply_x(&out, i, x, gamma, f)?;
    }
    Ok(out)
}

/// Number of factors that are not formally the identity.
pub fn eta_sum(w: &OperatorWord) -> usize {
    w.exponents
        .iter()
        .filter(|&&(z, x)| z != 0 || x != 0)
        .count()
}

/// Decodes `index` as 2n base-p digits: digits 0..n are z-exponents, n..2n
/// are x-exponents.
fn word_at(mut index: u64, n: usize, p: u32) -> OperatorWord {
    let p = u64::from(p);
    let mut digits = vec![0u32; 2 * n];
    for d in digits.iter_mut() {
        *d = (index % p) as u32;
        index /= p;
    }
    OperatorWord {
        exponents: (0..n).map(|i| (digits[i], digits[n + i])).collect(),
    }
}

fn word_count(n: usize, f: &PrimeField, hard_cap: u64) -> Result<u64, OracleError> {
    let p = f.modulus();
    u32::try_from(2 * n)
        .ok()
        .and_then(|e| u64::from(p).checked_pow(e))
        .filter(|&total| total <= hard_cap)
        .ok_or(OracleError::SearchTooLarge {
            p,
            n,
            cap: hard_cap,
        })
}

/// Minimum positive weight over words carrying `from` to `to`.
fn brute_force(
    g: &Multigraph,
    f: &PrimeField,
    from: &GraphLabelling,
    to: &GraphLabelling,
    hard_cap: u64,
) -> Result<DistanceReport, OracleError> {
    let n = g.vertex_count();
    for l in [from, to] {
        if l.len() != n {
            return Err(OracleError::DimensionMismatch {
                expected: n,
                found: l.len(),
            });
        }
    }
    let total = word_count(n, f, hard_cap)?;
    let gamma = g.adjacency_matrix(f);

    let mut best: Option<(usize, OperatorWord)> = None;
    for index in 0..total {
        let w = word_at(index, n, f.modulus());
        let weight = eta_sum(&w);
        if weight == 0 {
            continue;
        }
        if best.as_ref().is_some_and(|(b, _)| weight >= *b) {
            continue;
        }
        if apply_word(&w, from, &gamma, f)? == *to {
            best = Some((weight, w));
        }
    }

    // The Z generators alone reach every labelling, so some word always works.
    let (distance, word) = best.expect("a nonidentity word reaches every target");
    Ok(DistanceReport {
        distance,
        witness: word.to_symplectic(),
        vectors_examined: total,
    })
}

/// Minimum positive weight over words fixing every labelling. Words act as
/// translations, so fixing the zero labelling is enough.
pub fn brute_force_distance(
    g: &Multigraph,
    f: &PrimeField,
    hard_cap: u64,
) -> Result<DistanceReport, OracleError> {
    let zero = GraphLabelling::zero(g.vertex_count());
    brute_force(g, f, &zero, &zero, hard_cap)
}

/// Minimum positive weight over words carrying `cr` to `cs`.
pub fn brute_force_pairwise(
    g: &Multigraph,
    f: &PrimeField,
    cr: &GraphLabelling,
    cs: &GraphLabelling,
    hard_cap: u64,
) -> Result<DistanceReport, OracleError> {
    brute_force(g, f, cr, cs, hard_cap)
}
