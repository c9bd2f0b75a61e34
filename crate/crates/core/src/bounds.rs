//! Closed-form bounds and exact values, in exact rational arithmetic.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::clique::turan_clique_count;
use crate::{Error, IntersectSpec, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ApKind {
    Ap { d: usize },
    NotApLastGapDiffers,
    NotApLastGapEqual,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ApClass {
    #[serde(flatten)]
    pub kind: ApKind,
    /// `|L| ∈ {1, r}`: outside the hypothesis of the classification.
    pub outside_hypothesis: bool,
}

/// Classifies `ℓ₁, …, ℓ_s, r` as an arithmetic progression or by how it
/// fails to be one.
pub fn classify_ap(spec: &IntersectSpec) -> ApClass {
    let l = spec.l();
    let r = spec.r();
    let s = l.len();
    let kind = match spec.ap_difference() {
        Some(d) => ApKind::Ap { d },
        None if s >= 2 && r - l[s - 1] == l[s - 1] - l[s - 2] => ApKind::NotApLastGapEqual,
        None => ApKind::NotApLastGapDiffers,
    };
    ApClass {
        kind,
        outside_hypothesis: s == 1 || s == r,
    }
}

/// A named bound with its exact value and the range in which it is claimed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub name: String,
    #[serde(serialize_with = "ser_rational")]
    pub value: BigRational,
    pub applicability: String,
}

fn ser_rational<S: Serializer>(v: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(v))
}

/// `"36"` for integers, `"32/9"` otherwise.
pub fn rational_string(v: &BigRational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn ratio(a: i64, b: i64) -> BigRational {
    BigRational::new(BigInt::from(a), BigInt::from(b))
}

fn from_uint(v: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// `∏_{ℓ∈L} (n−ℓ)/(r−ℓ)`; an empty `L` gives 1.
pub fn def_product(n: usize, r: usize, l: &[usize]) -> BigRational {
    l.iter().fold(BigRational::one(), |acc, &x| {
        acc * ratio(n as i64 - x as i64, r as i64 - x as i64)
    })
}

pub fn def_bound(n: usize, spec: &IntersectSpec) -> BoundReport {
    BoundReport {
        name: "def_bound".into(),
        value: def_product(n, spec.r(), spec.l()),
        applicability: format!(
            "upper bound on L-intersecting r-graphs for r ≥ 3 and n ≥ 2^r·r³ (= {})",
            (1u128 << spec.r().min(127)) * (spec.r() as u128).pow(3)
        ),
    }
}

/// `(1 − 1/(3r)) ∏_{ℓ∈L} (n−ℓ)/(r−ℓ)`, valid only for `2 ≤ |L| ≤ r−1`.
pub fn helliar_liu_bound(n: usize, spec: &IntersectSpec) -> Result<BoundReport> {
    let (r, s) = (spec.r(), spec.s());
    if s < 2 || s + 1 > r {
        return Err(Error::InvalidParams(format!(
            "the (1 − 1/3r) bound needs 2 ≤ |L| ≤ r−1, got |L| = {s}, r = {r}"
        )));
    }
    let factor = BigRational::one() - ratio(1, 3 * r as i64);
    Ok(BoundReport {
        name: "helliar_liu_bound".into(),
        value: factor * def_product(n, r, spec.l()),
        applicability: format!(
            "upper bound on clique counts for r ≥ 3 and n ≥ (2r)^(r+1) (= {})",
            BigUint::from(2 * r).pow(r as u32 + 1)
        ),
    })
}

/// `N(K_s, T(⌊(n−ℓ₁)/d⌋, s))`, the clique count of the AP construction.
pub fn ap_exact_value(n: usize, spec: &IntersectSpec) -> Result<BoundReport> {
    let d = spec.ap_difference().ok_or_else(|| Error::NotArithmetic {
        r: spec.r(),
        l: spec.l().to_vec(),
    })?;
    let ell1 = spec.l()[0];
    if n < ell1 {
        return Err(Error::InvalidParams(format!("n = {n} below ℓ₁ = {ell1}")));
    }
    let s = spec.s();
    Ok(BoundReport {
        name: "ap_exact_value".into(),
        value: from_uint(turan_clique_count((n - ell1) / d, s, s)),
        applicability: "exact value for n beyond an unspecified threshold; a lower bound \
                        (attained by the construction) whenever n ≥ ℓ₁ + s·d"
            .into(),
    })
}

fn check_hm(n: usize, r: usize, t: usize) -> Result<()> {
    if t < 1 || r < t + 2 || n < t + 2 {
        return Err(Error::InvalidParams(format!(
            "need t ≥ 1, r − t − 1 ≥ 1 and n ≥ t + 2 (n={n}, r={r}, t={t})"
        )));
    }
    Ok(())
}

/// `N(K_{r−t−2}, T) + (t+2)·N(K_{r−t−1}, T)` with `T = T(n−t−2, r−t−1)`.
pub fn hm_value_exact(n: usize, r: usize, t: usize) -> Result<BigUint> {
    check_hm(n, r, t)?;
    let (m, parts) = (n - t - 2, r - t - 1);
    Ok(turan_clique_count(m, parts, r - t - 2)
        + BigUint::from(t + 2) * turan_clique_count(m, parts, r - t - 1))
}

pub fn hm_value(n: usize, r: usize, t: usize) -> Result<BoundReport> {
    Ok(BoundReport {
        name: "hm_value".into(),
        value: from_uint(hm_value_exact(n, r, t)?),
        applicability: "maximum over non-trivial t-intersecting graphs for n beyond an \
                        unspecified threshold; attained by K_{t+2} + T(n−t−2, r−t−1)"
            .into(),
    })
}

/// `C(n − t, r − t)`, the set-system maximum for t-intersecting families.
pub fn ekr_value(n: usize, r: usize, t: usize) -> BoundReport {
    let value = if n < r {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n - t), BigUint::from(r - t))
    };
    BoundReport {
        name: "ekr_value".into(),
        value: from_uint(value),
        applicability: "maximum t-intersecting r-graph size for n ≥ (t+1)(r−t+1)".into(),
    }
}

/// Clique count of `K_ℓ + ⌊(n−ℓ)/(r−ℓ)⌋ K_{r−ℓ}` for `L = {ℓ}`.
pub fn single_size_value(n: usize, r: usize, ell: usize) -> Result<BoundReport> {
    if ell >= r || n < ell {
        return Err(Error::InvalidParams(format!("need ℓ < r ≤ n (ℓ={ell}, r={r}, n={n})")));
    }
    Ok(BoundReport {
        name: "single_size_construction".into(),
        value: from_uint(BigUint::from((n - ell) / (r - ell))),
        applicability: "lower bound from K_ℓ + ⌊(n−ℓ)/(r−ℓ)⌋K_{r−ℓ} when |L| = 1".into(),
    })
}

/// Oracle for a sub-quantity `Φ_r(n, L)` or `Ψ_r(n, L)`, called with
/// `(n, r, L)`. `L` may be empty and `r` may be 0.
pub type Oracle<'a> = &'a dyn Fn(usize, usize, &[usize]) -> BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RecursiveBound {
    pub i: usize,
    #[serde(serialize_with = "ser_rational")]
    pub without_ell_i: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub lower_phi: BigRational,
    #[serde(serialize_with = "ser_rational")]
    pub upper_psi: BigRational,
    pub shifted_l: Vec<usize>,
    pub report: BoundReport,
    /// `i = 1`: the `Φ_{ℓ₁}(n, ∅)` factor is the trivial value 1.
    pub degenerate: bool,
}

/// `c⁻¹ · max{Φ_r(n, L∖{ℓ_i}), Φ_{ℓ_i}(n, {ℓ₁…ℓ_{i−1}}) · Ψ_{r−ℓ_i}(n−ℓ_i, {0, ℓ_{i+1}−ℓ_i, …})}`.
///
/// `i` is 1-based. The constant `c` and both oracles come from the caller.
pub fn recursive_bound(
    n: usize,
    spec: &IntersectSpec,
    i: usize,
    c: &BigRational,
    phi: Oracle<'_>,
    psi: Oracle<'_>,
) -> Result<RecursiveBound> {
    let l = spec.l();
    let r = spec.r();
    if i == 0 || i > l.len() {
        return Err(Error::InvalidParams(format!("index i = {i} outside [1, {}]", l.len())));
    }
    if !c.is_positive() {
        return Err(Error::InvalidParams("constant c must be positive".into()));
    }
    let li = l[i - 1];
    if n < li {
        return Err(Error::InvalidParams(format!("n = {n} below ℓ_i = {li}")));
    }
    let without: Vec<usize> = l.iter().copied().filter(|&x| x != li).collect();
    let below = &l[..i - 1];
    let shifted: Vec<usize> = std::iter::once(0)
        .chain(l[i..].iter().map(|&x| x - li))
        .collect();

    let a = phi(n, r, &without);
    let b = phi(n, li, below);
    let p = psi(n - li, r - li, &shifted);
    let second = &b * &p;
    let best = if a > second { a.clone() } else { second };
    let value = best / c;
    Ok(RecursiveBound {
        i,
        without_ell_i: a,
        lower_phi: b,
        upper_psi: p,
        shifted_l: shifted,
        report: BoundReport {
            name: format!("recursive_bound[i={i}]"),
            value,
            applicability: "upper bound on Ψ_r(n, L) given valid sub-quantity oracles and \
                            the structure-theorem constant c"
                .into(),
        },
        degenerate: i == 1,
    })
}

/// Evaluates [`recursive_bound`] for every `i` and returns the smallest.
pub fn best_recursive_bound(
    n: usize,
    spec: &IntersectSpec,
    c: &BigRational,
    phi: Oracle<'_>,
    psi: Oracle<'_>,
) -> Result<RecursiveBound> {
    let mut best: Option<RecursiveBound> = None;
    for i in 1..=spec.s() {
        if spec.l()[i - 1] > n {
            continue;
        }
        let b = recursive_bound(n, spec, i, c, phi, psi)?;
        if best.as_ref().is_none_or(|x| b.report.value < x.report.value) {
            best = Some(b);
        }
    }
    best.ok_or_else(|| Error::InvalidParams("no admissible index".into()))
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            let mut x = q;
            while x % p == 0 {
                x /= p;
            }
            return x == 1;
        }
        p += 1;
    }
    true
}

/// Smallest prime power `q` with `q | l3` and `q ∤ 2·l2`.
pub fn find_prime_power(l2: u64, l3: u64) -> Result<u64> {
    let twice = 2 * l2;
    (2..=l3)
        .find(|&q| l3 % q == 0 && twice % q != 0 && is_prime_power(q))
        .ok_or(Error::NoPrimePower { l3, twice_l2: twice })
}

/// The arithmetic half of the modular condition: `r mod q ∉ residues`.
/// The pairwise half is [`crate::intersect::family_mod_q_ok`].
pub fn mod_q_applicable(q: u64, r: u64, residues: &[u64]) -> Result<bool> {
    if !is_prime_power(q) {
        return Err(Error::NotPrimePower(q));
    }
    if residues.len() != 2 || residues.iter().any(|&x| x >= q) {
        return Err(Error::InvalidParams(format!(
            "need two residues in [0, {}], got {residues:?}",
            q - 1
        )));
    }
    Ok(!residues.contains(&(r % q)))
}

/// `C(n, 2)`, the size bound that holds under the modular condition.
pub fn mod_q_bound(n: usize) -> BigUint {
    BigUint::from(n * n.saturating_sub(1) / 2)
}

/// For `L = {0, ℓ₂, ℓ₃}` with `r − ℓ₃ = ℓ₃ − ℓ₂ ≠ ℓ₂`, returns `(ℓ₂, ℓ₃)`.
pub fn three_term_mod_case(spec: &IntersectSpec) -> Option<(usize, usize)> {
    match *spec.l() {
        [0, l2, l3] if spec.r() - l3 == l3 - l2 && l3 - l2 != l2 => Some((l2, l3)),
        _ => None,
    }
}

/// Every bound and exact value that applies to `(n, r, L)`.
pub fn applicable_bounds(n: usize, spec: &IntersectSpec) -> Vec<BoundReport> {
    let r = spec.r();
    let mut out = vec![def_bound(n, spec)];
    if let Ok(b) = helliar_liu_bound(n, spec) {
        out.push(b);
    }
    if let Ok(b) = ap_exact_value(n, spec) {
        out.push(b);
    }
    let l = spec.l();
    if l.last() == Some(&(r - 1)) && l.windows(2).all(|w| w[1] == w[0] + 1) && l[0] >= 1 {
        let t = l[0];
        out.push(ekr_value(n, r, t));
        if let Ok(b) = hm_value(n, r, t) {
            out.push(b);
        }
    }
    if let [ell] = *l {
        if let Ok(b) = single_size_value(n, r, ell) {
            out.push(b);
        }
    }
    if let Some((l2, l3)) = three_term_mod_case(spec) {
        let q = find_prime_power(l2 as u64, l3 as u64).ok();
        out.push(BoundReport {
            name: "mod_q_bound".into(),
            value: from_uint(mod_q_bound(n)),
            applicability: format!(
                "upper bound on every {{0,{l2},{l3}}}-intersecting {r}-graph via prime power q = {}",
                q.map_or("?".into(), |q| q.to_string())
            ),
        });
    }
    out
}
