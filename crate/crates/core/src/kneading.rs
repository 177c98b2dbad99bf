//! Kneading sequences, acceptability, `τ`-admissibility and the μ-process.

use std::fmt;

use crate::forward::{approx, first_discrepancy, Depth, ForwardSeq};
use crate::symbol::{Symbol, Word};
use crate::{KneadingError, MuError, SeqError};

/// A purely periodic kneading sequence `τ = (τ_0 … τ_{N-1})^∞` with
/// `τ_0 = *`, `τ_1 = 1`, no other stars, and acceptability.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KneadingSeq {
    seq: ForwardSeq,
}

impl KneadingSeq {
    pub fn new(seq: ForwardSeq) -> Result<Self, KneadingError> {
        if !seq.is_purely_periodic() {
            return Err(KneadingError::NotPurelyPeriodic);
        }
        let n = seq.period_len();
        if seq.at(0) != Symbol::Star {
            return Err(KneadingError::NoLeadingStar);
        }
        if n < 2 || seq.at(1) != Symbol::One {
            return Err(KneadingError::SecondSymbolNotOne);
        }
        if (1..n).any(|i| seq.at(i).is_star()) {
            return Err(KneadingError::InteriorStar);
        }
        if !is_acceptable(&seq)? {
            return Err(KneadingError::NotAcceptable);
        }
        Ok(KneadingSeq { seq })
    }

    /// Builds `(*·body)^∞` from the non-star part, e.g. `"12"` for `(*12)#`.
    pub fn from_body(body: &str) -> Result<Self, KneadingError> {
        let word = Word::parse(&format!("*{body}")).ok_or(KneadingError::NoLeadingStar)?;
        Self::new(ForwardSeq::periodic(word).map_err(|_| KneadingError::NotPurelyPeriodic)?)
    }

    /// The exact period `N`.
    pub fn period(&self) -> usize {
        self.seq.period_len()
    }

    pub fn seq(&self) -> &ForwardSeq {
        &self.seq
    }

    /// `τ_i` with the index read modulo `N`; negative indices allowed.
    #[inline]
    pub fn sym(&self, i: i64) -> Symbol {
        let n = self.period() as i64;
        self.seq.at(i.rem_euclid(n) as usize)
    }

    /// `τ_0 … τ_{N-1}`.
    pub fn block(&self) -> Word {
        self.seq.period()
    }
}

impl fmt::Display for KneadingSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.seq.fmt(f)
    }
}

/// Acceptability: no proper shift of `t` is `≈ t`.
///
/// Shifts by multiples of the period return `t` itself and satisfy the
/// condition trivially, so only `1..N` is scanned.
pub fn is_acceptable(t: &ForwardSeq) -> Result<bool, SeqError> {
    if !t.is_purely_periodic() {
        return Err(SeqError::NotPurelyPeriodic);
    }
    let n = t.period_len();
    Ok((1..n).all(|k| !approx(&t.shift(k), t)))
}

/// `x ∈ D_τ`: every star of `x` starts a copy of `τ`, and every shift of `x`
/// that is `≈ τ` equals `τ`.
pub fn is_admissible(x: &ForwardSeq, tau: &KneadingSeq) -> bool {
    // σ^{n + period} x = σ^n x once n is past the prefix.
    (0..x.prefix_len() + x.period_len()).all(|n| admissible_at(x, n, tau))
}

/// The two admissibility conditions at the single position `n`.
pub(crate) fn admissible_at(x: &ForwardSeq, n: usize, tau: &KneadingSeq) -> bool {
    let tail = x.shift(n);
    if &tail == tau.seq() {
        return true;
    }
    x.at(n) != Symbol::Star && !approx(&tail, tau.seq())
}

/// The μ-process: the unique admissible point `μ ≈ μ′`, where `μ′` follows
/// the common non-star prefix, puts a star at the first discrepancy `n` and
/// continues with `τ`.
///
/// Usually `μ = μ′`. When a stretch of the prefix ending at `n` already
/// matches whole `τ`-blocks, `μ′` is itself `≈ τ` from an earlier position,
/// and `μ` places its star there instead.
pub fn mu_point(x: &ForwardSeq, y: &ForwardSeq, tau: &KneadingSeq) -> Result<ForwardSeq, MuError> {
    if x == y {
        return Err(MuError::EqualInputs);
    }
    if !is_admissible(x, tau) || !is_admissible(y, tau) {
        return Err(MuError::InadmissibleInput);
    }
    // Distinct admissible sequences always separate at a finite position.
    let n = match first_discrepancy(x, y) {
        Depth::Finite(n) => n,
        Depth::Infinite => return Err(MuError::InadmissibleInput),
    };
    let head: Word = (0..n)
        .map(|i| if x.at(i).is_star() { y.at(i) } else { x.at(i) })
        .collect();
    let period = tau.period();
    let hs = head.symbols();
    let m = (n % period..=n)
        .step_by(period)
        .find(|&m| (m..n).all(|i| hs[i].approx(tau.sym((i - m) as i64))))
        .unwrap_or(n);
    let mu = tau.seq().prepend(&hs[..m].iter().copied().collect());
    if !is_admissible(&mu, tau) {
        return Err(MuError::AdmissibilityViolation(mu.to_string()));
    }
    Ok(mu)
}
