//! Freeness decision procedures.
//!
//! Four engines are combined into one pipeline:
//!
//! 1. integer root extraction from the characteristic polynomial — a free
//!    arrangement's polynomial must split over the nonnegative integers, so
//!    a non-splitting polynomial is an immediate negative;
//! 2. the big-intersection test: with chi = (t-1)(t-a)(t-b) and some line
//!    meeting the others in more than min(a, b) points, freeness is
//!    equivalent to that count being a+1 or b+1;
//! 3. combinatorial classification of the balanced cases with at most 12
//!    lines against the three exceptional lattices;
//! 4. the Ziegler-restriction criterion: with chi factored, the arrangement
//!    is free iff the product of the restriction's multiexponents equals
//!    the product of the two non-unit roots.
//!
//! Engines 3 and 4 are independent; cross-check mode runs both and insists
//! they agree.

use std::fmt;

use serde::Serialize;

use crate::catalog::{self, CatalogName, CatalogParams};
use crate::geometry::{
    binom2, char_poly, Arrangement, CharPoly, FVector, GeomError, Lattice,
};
use crate::multiarr::{multi_exponents, ziegler_restriction, MultiError, MultiExponents};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FreenessError {
    #[error("the empty arrangement is not decided here")]
    EmptyArrangement,
    #[error("line index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),
    #[error("cross-check mismatch: classification says free={classified}, Ziegler criterion says free={yoshinaga}")]
    CrossCheckMismatch { classified: bool, yoshinaga: bool },
    #[error(transparent)]
    Geometry(#[from] GeomError),
    #[error(transparent)]
    Multi(#[from] MultiError),
    #[error(transparent)]
    Catalog(#[from] catalog::CatalogError),
}

/// Exponents (1, a, b) of a free arrangement, stored as the sorted pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentTriple {
    pub a: usize,
    pub b: usize,
}

impl ExponentTriple {
    pub fn new(a: usize, b: usize) -> Self {
        if a <= b {
            ExponentTriple { a, b }
        } else {
            ExponentTriple { a: b, b: a }
        }
    }

    pub fn min(&self) -> usize {
        self.a
    }
}

impl fmt::Display for ExponentTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1, {}, {})", self.a, self.b)
    }
}

/// Which engine produced a verdict, with its method-specific witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Method {
    /// The characteristic polynomial has no nonnegative integer roots.
    ChiNonIntegral,
    /// The big-intersection test applied at `line` (0-based), where
    /// n_{A,H} = `n` exceeds the smaller root.
    Abt { line: usize, n: usize },
    /// The Ziegler-restriction criterion at `pivot`, with the restriction's
    /// multiexponents and the root product it was compared against.
    Yoshinaga {
        pivot: usize,
        ziegler: MultiExponents,
        root_product: usize,
    },
    /// Combinatorial classification of a balanced lattice with at most 12
    /// lines; a match carries the catalog lattice and a witness bijection.
    ClassifiedBalanced {
        matched: Option<CatalogName>,
        witness: Option<Vec<usize>>,
    },
    /// A single line is free by definition.
    Trivial,
}

/// The outcome of a freeness decision. `exponents` is present exactly on
/// free verdicts, and then chi = (t-1)(t-a)(t-b).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FreenessVerdict {
    pub is_free: bool,
    pub exponents: Option<ExponentTriple>,
    pub method: Method,
}

impl FreenessVerdict {
    fn free(exponents: ExponentTriple, method: Method) -> Self {
        FreenessVerdict { is_free: true, exponents: Some(exponents), method }
    }

    fn not_free(method: Method) -> Self {
        FreenessVerdict { is_free: false, exponents: None, method }
    }
}

impl fmt::Display for FreenessVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_free {
            write!(f, "free, exponents {}", self.exponents.expect("free verdicts carry exponents"))?;
        } else {
            write!(f, "not free")?;
        }
        match &self.method {
            Method::ChiNonIntegral => write!(f, " [chi does not split over Z]"),
            Method::Abt { line, n } => write!(f, " [big-intersection test at line {}, n = {n}]", line + 1),
            Method::Yoshinaga { pivot, ziegler, root_product } => write!(
                f,
                " [Ziegler restriction at line {}: exponents {ziegler}, root product {root_product}]",
                pivot + 1
            ),
            Method::ClassifiedBalanced { matched: Some(name), .. } => {
                write!(f, " [balanced lattice matches {name}]")
            }
            Method::ClassifiedBalanced { matched: None, .. } => {
                write!(f, " [balanced lattice matches no free arrangement]")
            }
            Method::Trivial => write!(f, " [single line]"),
        }
    }
}

/// Nonnegative integer roots (a, b) of t^2 - (ell-1) t + (mu - ell + 1),
/// when they exist.
pub fn integer_roots(q: &CharPoly) -> Option<ExponentTriple> {
    let disc = q.linear * q.linear - 4 * q.constant;
    if disc < 0 {
        return None;
    }
    let s = disc.isqrt();
    if s * s != disc {
        return None;
    }
    if (q.linear - s) % 2 != 0 {
        return None;
    }
    let a = (q.linear - s) / 2;
    let b = (q.linear + s) / 2;
    if a < 0 {
        return None;
    }
    Some(ExponentTriple::new(a as usize, b as usize))
}

/// Largest n_{A,H} with the lowest line index attaining it.
pub fn max_n_line(lat: &Lattice) -> Option<(usize, usize)> {
    (0..lat.ell())
        .map(|i| (i, lat.line_n(i)))
        .max_by(|(i, n), (j, m)| n.cmp(m).then(j.cmp(i)))
}

/// Whether every line meets the others in at most min(a, b) points — the
/// situation in which deleting any single line leaves a non-free
/// arrangement, so addition-deletion gets stuck going down.
pub fn is_balanced(lat: &Lattice, roots: ExponentTriple) -> bool {
    match max_n_line(lat) {
        Some((_, n)) => n <= roots.min(),
        None => true,
    }
}

/// The big-intersection test. Applicable when some line has
/// n_{A,H} > min(a, b); inapplicable (returns None) on balanced lattices.
pub fn abt_decide(lat: &Lattice, roots: ExponentTriple) -> Option<FreenessVerdict> {
    let (line, n) = (0..lat.ell())
        .map(|i| (i, lat.line_n(i)))
        .find(|&(_, n)| n > roots.min())?;
    let method = Method::Abt { line, n };
    if n == roots.a + 1 || n == roots.b + 1 {
        Some(FreenessVerdict::free(roots, method))
    } else {
        Some(FreenessVerdict::not_free(method))
    }
}

/// The Ziegler-restriction criterion at `pivot`: free iff the product of the
/// restriction's multiexponents equals mu - ell + 1 (the product of the two
/// non-unit roots of chi, integral or not). On a free verdict the exponents
/// are exactly the multiexponents.
pub fn yoshinaga_decide(arr: &Arrangement, pivot: usize) -> Result<FreenessVerdict, FreenessError> {
    if arr.is_empty() {
        return Err(FreenessError::EmptyArrangement);
    }
    if pivot >= arr.len() {
        return Err(FreenessError::IndexOutOfRange(pivot));
    }
    if arr.len() == 1 {
        return Err(FreenessError::PreconditionViolated(
            "the Ziegler restriction needs at least two lines",
        ));
    }
    let lat = arr.lattice();
    let q = char_poly(&lat)?;
    let root_product = q.constant as usize;
    let ziegler = multi_exponents(&ziegler_restriction(arr, pivot)?);
    let method = Method::Yoshinaga { pivot, ziegler, root_product };
    if ziegler.product() == root_product {
        // d1 + d2 = ell - 1 and d1*d2 = mu - ell + 1, so the roots of q are
        // exactly the multiexponents.
        debug_assert_eq!(
            integer_roots(&q),
            Some(ExponentTriple::new(ziegler.d1, ziegler.d2))
        );
        Ok(FreenessVerdict::free(
            ExponentTriple::new(ziegler.d1, ziegler.d2),
            method,
        ))
    } else {
        Ok(FreenessVerdict::not_free(method))
    }
}

/// One combinatorial possibility for a balanced free arrangement: its size,
/// its smaller exponent, and its F-vector.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedProfile {
    pub ell: usize,
    pub a_min: usize,
    pub f: FVector,
}

impl fmt::Display for BalancedProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.ell, self.a_min, self.f)
    }
}

/// Enumerates every (ell, a, F) with 2 <= ell <= ell_max that a balanced
/// free arrangement could have: nonnegative vectors (F_1, ..., F_(a-2)) with
///
///   sum i F_i = (ell-1)(a+1) - a^2,
///   sum (i+1) F_i <= a ell,
///   sum C(i+1, 2) F_i = C(ell, 2),
///
/// for each 0 <= a <= (ell-1)/2. The support bound a-2 reflects that a
/// balanced free arrangement has no point of multiplicity a-1 or higher.
pub fn enumerate_profiles(ell_max: usize) -> Vec<BalancedProfile> {
    let mut out = Vec::new();
    for ell in 2..=ell_max.max(1) {
        for a in 0..=(ell - 1) / 2 {
            let mu_target = (ell as i64 - 1) * (a as i64 + 1) - (a as i64) * (a as i64);
            if mu_target < 0 {
                continue;
            }
            let support = a.saturating_sub(2);
            let mut partial = vec![0usize; support];
            enumerate_rec(
                ell,
                a,
                1,
                mu_target as usize,
                binom2(ell),
                a * ell,
                &mut partial,
                &mut out,
            );
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn enumerate_rec(
    ell: usize,
    a: usize,
    i: usize,
    mu_left: usize,
    pairs_left: usize,
    weight_left: usize,
    partial: &mut Vec<usize>,
    out: &mut Vec<BalancedProfile>,
) {
    let support = a.saturating_sub(2);
    if i > support {
        if mu_left == 0 && pairs_left == 0 {
            out.push(BalancedProfile {
                ell,
                a_min: a,
                f: FVector::new(partial.clone()),
            });
        }
        return;
    }
    let pair_weight = binom2(i + 1);
    let max_fi = (mu_left / i).min(pairs_left / pair_weight).min(weight_left / (i + 1));
    for fi in 0..=max_fi {
        partial[i - 1] = fi;
        enumerate_rec(
            ell,
            a,
            i + 1,
            mu_left - i * fi,
            pairs_left - pair_weight * fi,
            weight_left - (i + 1) * fi,
            partial,
            out,
        );
    }
    partial[i - 1] = 0;
}

/// Outcome of the combinatorial classification of a balanced lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BalancedClass {
    DualHesse(Vec<usize>),
    Pentagonal(Vec<usize>),
    G443(Vec<usize>),
    NotFree,
}

/// Classifies a balanced arrangement with 2 <= ell <= 12 by exact lattice
/// isomorphism against the three exceptional lattices. Any other balanced
/// lattice in this range admits no free realization.
pub fn classify_balanced(
    arr: &Arrangement,
    lat: &Lattice,
    roots: ExponentTriple,
) -> Result<BalancedClass, FreenessError> {
    if arr.len() < 2 || arr.len() > 12 {
        return Err(FreenessError::PreconditionViolated(
            "classification covers 2 to 12 lines",
        ));
    }
    if !is_balanced(lat, roots) {
        return Err(FreenessError::PreconditionViolated(
            "classification applies to balanced lattices only",
        ));
    }
    let target = match arr.len() {
        9 => CatalogName::DualHesse,
        11 => CatalogName::Pentagonal,
        12 => CatalogName::G443,
        _ => return Ok(BalancedClass::NotFree),
    };
    let reference = catalog::get(target, CatalogParams::default())?;
    match crate::geometry::lattice_isomorphic(arr, &reference.arrangement) {
        Some(witness) => Ok(match target {
            CatalogName::DualHesse => BalancedClass::DualHesse(witness),
            CatalogName::Pentagonal => BalancedClass::Pentagonal(witness),
            _ => BalancedClass::G443(witness),
        }),
        None => Ok(BalancedClass::NotFree),
    }
}

/// Options for [`decide_free_with`].
#[derive(Debug, Clone, Copy, Default)]
pub struct DecideOptions {
    /// Force a specific engine instead of the automatic dispatch.
    pub method: MethodChoice,
    /// Pivot override for the Ziegler-restriction engine.
    pub pivot: Option<usize>,
    /// On balanced lattices with at most 12 lines, run both the
    /// classification and the Ziegler criterion and require agreement.
    pub cross_check: bool,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum MethodChoice {
    #[default]
    Auto,
    Abt,
    Yoshinaga,
    Classify,
}

/// The unified pipeline: chi-root extraction, then the big-intersection
/// test where applicable, then (balanced cases) combinatorial
/// classification up to 12 lines or the Ziegler criterion beyond.
pub fn decide_free(arr: &Arrangement) -> Result<FreenessVerdict, FreenessError> {
    decide_free_with(arr, DecideOptions::default())
}

pub fn decide_free_with(
    arr: &Arrangement,
    opts: DecideOptions,
) -> Result<FreenessVerdict, FreenessError> {
    if arr.is_empty() {
        return Err(FreenessError::EmptyArrangement);
    }
    let lat = arr.lattice();
    let q = char_poly(&lat)?;

    match opts.method {
        MethodChoice::Auto => {}
        MethodChoice::Abt => {
            let roots = integer_roots(&q).ok_or(FreenessError::PreconditionViolated(
                "the big-intersection test needs integer chi roots",
            ))?;
            return abt_decide(&lat, roots).ok_or(FreenessError::PreconditionViolated(
                "the big-intersection test does not apply to balanced lattices",
            ));
        }
        MethodChoice::Yoshinaga => {
            let pivot = opts
                .pivot
                .or_else(|| max_n_line(&lat).map(|(i, _)| i))
                .ok_or(FreenessError::EmptyArrangement)?;
            return yoshinaga_decide(arr, pivot);
        }
        MethodChoice::Classify => {
            let roots = integer_roots(&q).ok_or(FreenessError::PreconditionViolated(
                "classification needs integer chi roots",
            ))?;
            let class = classify_balanced(arr, &lat, roots)?;
            return Ok(balanced_verdict(class, roots));
        }
    }

    if arr.len() == 1 {
        return Ok(FreenessVerdict::free(ExponentTriple::new(0, 0), Method::Trivial));
    }
    let Some(roots) = integer_roots(&q) else {
        return Ok(FreenessVerdict::not_free(Method::ChiNonIntegral));
    };
    if let Some(verdict) = abt_decide(&lat, roots) {
        return Ok(verdict);
    }
    // Balanced from here on.
    if arr.len() <= 12 {
        let class = classify_balanced(arr, &lat, roots)?;
        let verdict = balanced_verdict(class, roots);
        if opts.cross_check {
            let pivot = opts.pivot.unwrap_or_else(|| {
                max_n_line(&lat).map(|(i, _)| i).expect("nonempty arrangement")
            });
            let other = yoshinaga_decide(arr, pivot)?;
            if other.is_free != verdict.is_free || other.exponents != verdict.exponents {
                return Err(FreenessError::CrossCheckMismatch {
                    classified: verdict.is_free,
                    yoshinaga: other.is_free,
                });
            }
        }
        Ok(verdict)
    } else {
        let pivot = opts.pivot.unwrap_or_else(|| {
            max_n_line(&lat).map(|(i, _)| i).expect("nonempty arrangement")
        });
        yoshinaga_decide(arr, pivot)
    }
}

fn balanced_verdict(class: BalancedClass, roots: ExponentTriple) -> FreenessVerdict {
    match class {
        BalancedClass::DualHesse(w) => FreenessVerdict::free(
            roots,
            Method::ClassifiedBalanced { matched: Some(CatalogName::DualHesse), witness: Some(w) },
        ),
        BalancedClass::Pentagonal(w) => FreenessVerdict::free(
            roots,
            Method::ClassifiedBalanced { matched: Some(CatalogName::Pentagonal), witness: Some(w) },
        ),
        BalancedClass::G443(w) => FreenessVerdict::free(
            roots,
            Method::ClassifiedBalanced { matched: Some(CatalogName::G443), witness: Some(w) },
        ),
        BalancedClass::NotFree => {
            FreenessVerdict::not_free(Method::ClassifiedBalanced { matched: None, witness: None })
        }
    }
}
