use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::{DiscreteSetSpec, SetKind};

/// Which Helly-number formula to report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundMode {
    /// The formula used for the Tverberg existence argument.
    #[default]
    Paper,
    /// The minimum over every applicable formula.
    Best,
}

impl std::str::FromStr for BoundMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(BoundMode::Paper),
            "best" => Ok(BoundMode::Best),
            other => Err(Error::InvalidInput(format!("unknown bound mode {other:?}"))),
        }
    }
}

fn pow2(e: usize) -> Result<u64> {
    u32::try_from(e).ok().and_then(|e| 1u64.checked_shl(e).filter(|_| e < 64)).ok_or(Error::Overflow("power of two"))
}

/// `(2^r − 2)·⌈2(k+1)/3⌉ + 2`.
fn aliev(r: usize, k: u64) -> Result<u64> {
    let c = (2 * (k + 1)).div_ceil(3);
    (pow2(r)? - 2).checked_mul(c).and_then(|x| x.checked_add(2)).ok_or(Error::Overflow("lattice Helly bound"))
}

/// Upper bound on the quantitative Helly number `H_S(k)`.
///
/// * lattice of rank `r`: `(2^r − 2)⌈2(k+1)/3⌉ + 2`; in best mode with `k = 1`
///   also `2^r`.
/// * `L ∖ (L₁ ∪ … ∪ L_m)` with `rank L = r`: `(2^{m+1}k + 1)^r`.
/// * `ℤ^a × ℝ^b`, `k = 1` only: `(b+1)·2^a`.
pub fn helly_upper_bound(set: &DiscreteSetSpec, k: usize, mode: BoundMode) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let k64 = k as u64;
    match set.kind() {
        SetKind::Lattice(l) => {
            let r = l.rank();
            let paper = aliev(r, k64)?;
            match mode {
                BoundMode::Best if k == 1 => Ok(paper.min(pow2(r)?)),
                _ => Ok(paper),
            }
        }
        SetKind::Difference { lattice, sublattices } => {
            let base = pow2(sublattices.len() + 1)?
                .checked_mul(k64)
                .and_then(|x| x.checked_add(1))
                .ok_or(Error::Overflow("lattice difference Helly bound"))?;
            let r = u32::try_from(lattice.rank()).map_err(|_| Error::Overflow("rank"))?;
            base.checked_pow(r).ok_or(Error::Overflow("lattice difference Helly bound"))
        }
        SetKind::Mixed { integer_dims, real_dims } => {
            if k != 1 {
                return Err(Error::NoApplicableFormula(format!(
                    "mixed integer/real sets only have a k = 1 formula (got k = {k})"
                )));
            }
            (*real_dims as u64 + 1).checked_mul(pow2(*integer_dims)?).ok_or(Error::Overflow("mixed Helly bound"))
        }
    }
}

/// `H·(m−1)·k·d + k`, where `H` is [`helly_upper_bound`] and `d` the ambient
/// dimension: any `A ⊆ S` at least this large admits an `m`-partition whose
/// hulls share `k` points of `S`.
pub fn tverberg_upper_bound(set: &DiscreteSetSpec, m: usize, k: usize, mode: BoundMode) -> Result<u64> {
    if m == 0 {
        return Err(Error::InvalidInput("m must be at least 1".into()));
    }
    let h = helly_upper_bound(set, k, mode)?;
    h.checked_mul(m as u64 - 1)
        .and_then(|x| x.checked_mul(k as u64))
        .and_then(|x| x.checked_mul(set.dim() as u64))
        .and_then(|x| x.checked_add(k as u64))
        .ok_or(Error::Overflow("Tverberg bound"))
}
