//! Partitions, anisotropic profiles and their linear statistics.
//!
//! Profile conventions: the box in row `i`, column `j` (1-based) has its
//! bottom corner at `c = ε1 (j-1) + ε2 (i-1)`. Local minima of the profile sit
//! at the addable boxes, local maxima at the outer corners of removable boxes.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{exp_series, fmt_q, pow, q, qu, Q};

/// A weakly decreasing list of positive integers.
///
/// Ordered first by degree, then lexicographically; within a fixed degree the
/// lexicographic order extends the dominance order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Checked constructor; trailing zeros are dropped.
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidPartition(format!("{parts:?} has interior zeros")));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from parts in any order.
    pub fn from_multiset(mut parts: Vec<usize>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` with 1-based `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn transpose(&self) -> Partition {
        let n = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=n).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    /// Multiplicity `m_k` of each part value.
    pub fn multiplicities(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &p in &self.parts {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    pub fn multiplicity(&self, k: usize) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// `z_μ = ∏ k^{m_k} m_k!`.
    pub fn z(&self) -> BigInt {
        let mut z = BigInt::one();
        for (k, m) in self.multiplicities() {
            for i in 1..=m {
                z *= BigInt::from(k) * BigInt::from(i);
            }
        }
        z
    }

    pub fn with_part(&self, k: usize) -> Partition {
        let mut parts = self.parts.clone();
        let pos = parts.iter().position(|&p| p < k).unwrap_or(parts.len());
        parts.insert(pos, k);
        Partition { parts }
    }

    /// Removes one part equal to `k`, if present.
    pub fn without_part(&self, k: usize) -> Option<Partition> {
        let pos = self.parts.iter().position(|&p| p == k)?;
        let mut parts = self.parts.clone();
        parts.remove(pos);
        Some(Partition { parts })
    }

    /// Dominance order `self ≥ other` (same degree assumed).
    pub fn dominates(&self, other: &Partition) -> bool {
        let n = self.len().max(other.len());
        let (mut a, mut b) = (0, 0);
        for i in 1..=n {
            a += self.part(i);
            b += other.part(i);
            if a < b {
                return false;
            }
        }
        true
    }

    /// Whether the 1-based box `(row, col)` lies in the diagram.
    pub fn contains(&self, row: usize, col: usize) -> bool {
        row >= 1 && col >= 1 && col <= self.part(row)
    }

    /// All boxes `(row, col)` in row-major order.
    pub fn boxes(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.degree());
        for (i, &p) in self.parts.iter().enumerate() {
            for j in 1..=p {
                out.push((i + 1, j));
            }
        }
        out
    }

    /// All partitions of `d`, in decreasing lexicographic order.
    pub fn all(d: usize) -> Vec<Partition> {
        fn rec(rem: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(d, d, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of degree at most `d`, by increasing degree.
    pub fn up_to(d: usize) -> Vec<Partition> {
        (0..=d).flat_map(Partition::all).collect()
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.parts.cmp(&other.parts))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `3,1,1`, `(3,1,1)`, `()` or the empty string.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad partition {s:?}")))?;
        Partition::new(parts)
    }
}

/// The deformation parameters `eps2 < 0 < eps1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonPair {
    eps2: Q,
    eps1: Q,
}

impl EpsilonPair {
    pub fn new(eps2: Q, eps1: Q) -> Result<Self> {
        if !(eps2.is_negative() && eps1.is_positive()) {
            return Err(Error::InvalidEpsilon { eps2: fmt_q(&eps2), eps1: fmt_q(&eps1) });
        }
        Ok(EpsilonPair { eps2, eps1 })
    }

    /// Integer shorthand, panics on invalid input.
    pub fn int(eps2: i64, eps1: i64) -> Self {
        EpsilonPair::new(q(eps2), q(eps1)).expect("eps2 < 0 < eps1")
    }

    pub fn eps1(&self) -> &Q {
        &self.eps1
    }

    pub fn eps2(&self) -> &Q {
        &self.eps2
    }

    /// `-ε1 ε2 > 0`.
    pub fn prod(&self) -> Q {
        -(&self.eps1 * &self.eps2)
    }

    /// `ε1 + ε2`.
    pub fn aniso(&self) -> Q {
        &self.eps1 + &self.eps2
    }

    /// `β/2 = -ε2/ε1`.
    pub fn beta_half(&self) -> Q {
        -(&self.eps2 / &self.eps1)
    }

    /// Jack parameter `α = -ε1/ε2`.
    pub fn alpha(&self) -> Q {
        -(&self.eps1 / &self.eps2)
    }

    /// The pair `(-ε1, -ε2)` that describes transposed diagrams.
    pub fn transposed(&self) -> EpsilonPair {
        EpsilonPair { eps2: -self.eps1.clone(), eps1: -self.eps2.clone() }
    }

    pub fn is_isotropic(&self) -> bool {
        self.aniso().is_zero()
    }
}

impl fmt::Display for EpsilonPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", fmt_q(&self.eps2), fmt_q(&self.eps1))
    }
}

/// Interlacing minima and maxima of a profile, both strictly decreasing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProfileExtrema {
    pub minima: Vec<Q>,
    pub maxima: Vec<Q>,
}

impl ProfileExtrema {
    pub fn is_interlacing(&self) -> bool {
        if self.minima.len() != self.maxima.len() + 1 {
            return false;
        }
        for (i, x) in self.maxima.iter().enumerate() {
            if !(&self.minima[i] > x && x > &self.minima[i + 1]) {
                return false;
            }
        }
        true
    }

    /// `Σ minima - Σ maxima`, zero for profiles centred at the origin.
    pub fn center(&self) -> Q {
        let a: Q = self.minima.iter().sum();
        let b: Q = self.maxima.iter().sum();
        a - b
    }
}

/// Finitely supported measure with exact atoms.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AtomicMeasure {
    pub atoms: BTreeMap<Q, Q>,
}

impl AtomicMeasure {
    pub fn total_mass(&self) -> Q {
        self.atoms.values().sum()
    }

    pub fn moment(&self, l: usize) -> Q {
        self.atoms.iter().map(|(x, w)| pow(x, l) * w).sum()
    }
}

pub fn profile_extrema(lambda: &Partition, eps: &EpsilonPair) -> ProfileExtrema {
    let (e1, e2) = (eps.eps1(), eps.eps2());
    let n = lambda.len();
    let mut minima = Vec::with_capacity(n + 1);
    let mut maxima = Vec::with_capacity(n);
    for i in 1..=n + 1 {
        let li = lambda.part(i);
        if i == 1 || lambda.part(i - 1) > li {
            minima.push(e1 * qu(li) + e2 * qu(i - 1));
        }
        if i <= n && li > lambda.part(i + 1) {
            maxima.push(e1 * qu(li) + e2 * qu(i));
        }
    }
    // rows run down the diagram, so positions decrease already
    debug_assert!(minima.windows(2).all(|w| w[0] > w[1]));
    debug_assert!(maxima.windows(2).all(|w| w[0] > w[1]));
    ProfileExtrema { minima, maxima }
}

/// Partial fractions of `∏(u - c↓) / ∏(u - c↑)`.
pub fn transition_measure(x: &ProfileExtrema) -> AtomicMeasure {
    let mut atoms = BTreeMap::new();
    for (i, ci) in x.minima.iter().enumerate() {
        let mut num = Q::one();
        for cj in &x.maxima {
            num *= ci - cj;
        }
        let mut den = Q::one();
        for (k, ck) in x.minima.iter().enumerate() {
            if k != i {
                den *= ci - ck;
            }
        }
        atoms.insert(ci.clone(), num / den);
    }
    AtomicMeasure { atoms }
}

/// Atoms of `u - 1/T↑(u)`, located at the maxima.
pub fn cotransition_measure(x: &ProfileExtrema) -> AtomicMeasure {
    let mut atoms = BTreeMap::new();
    for (j, cj) in x.maxima.iter().enumerate() {
        // residue of ∏(u - c↑)/∏(u - c↓) at c_j↓, with a sign from u - (·)
        let mut num = Q::one();
        for ci in &x.minima {
            num *= cj - ci;
        }
        let mut den = Q::one();
        for (k, ck) in x.maxima.iter().enumerate() {
            if k != j {
                den *= cj - ck;
            }
        }
        atoms.insert(cj.clone(), -(num / den));
    }
    AtomicMeasure { atoms }
}

/// `ℓ`-th moment of the transition measure.
pub fn ch_vee(lambda: &Partition, eps: &EpsilonPair, l: usize) -> Q {
    transition_measure(&profile_extrema(lambda, eps)).moment(l)
}

/// `ch_l = Σ (c↑)^l - Σ (c↓)^l`.
pub fn ch(lambda: &Partition, eps: &EpsilonPair, l: usize) -> Q {
    let x = profile_extrema(lambda, eps);
    let a: Q = x.minima.iter().map(|c| pow(c, l)).sum();
    let b: Q = x.maxima.iter().map(|c| pow(c, l)).sum();
    a - b
}

/// `[ch_0, ..., ch_L]`.
pub fn ch_list(lambda: &Partition, eps: &EpsilonPair, max_l: usize) -> Vec<Q> {
    let x = profile_extrema(lambda, eps);
    let mut out = vec![Q::zero(); max_l + 1];
    for c in &x.minima {
        let mut p = Q::one();
        for slot in out.iter_mut() {
            *slot += &p;
            p *= c;
        }
    }
    for c in &x.maxima {
        let mut p = Q::one();
        for slot in out.iter_mut() {
            *slot -= &p;
            p *= c;
        }
    }
    out
}

/// `[ch^∨_0, ..., ch^∨_L]` through the series conversion.
pub fn ch_vee_list(lambda: &Partition, eps: &EpsilonPair, max_l: usize) -> Vec<Q> {
    chvee_from_ch(&ch_list(lambda, eps, max_l))
}

/// Coefficients of `(1/u) exp(Σ_{l≥1} ch_l u^{-l} / l)`.
///
/// Input and output are indexed from 0; `ch[0]` is ignored.
pub fn chvee_from_ch(ch: &[Q]) -> Vec<Q> {
    if ch.is_empty() {
        return vec![Q::one()];
    }
    let n = ch.len() - 1;
    let mut a = vec![Q::zero(); n + 1];
    for l in 1..=n {
        a[l] = &ch[l] / qu(l);
    }
    exp_series(&a, n)
}

/// Inverse of [`chvee_from_ch`]; output has `ch[0] = 1`.
pub fn ch_from_chvee(chv: &[Q]) -> Result<Vec<Q>> {
    if chv.is_empty() || !chv[0].is_one() {
        let got = chv.first().map(fmt_q).unwrap_or_else(|| "nothing".into());
        return Err(Error::BadLeadingMoment(got));
    }
    let n = chv.len() - 1;
    let mut ch = vec![Q::zero(); n + 1];
    ch[0] = Q::one();
    for m in 1..=n {
        let mut s = qu(m) * &chv[m];
        for k in 1..m {
            s -= &ch[k] * &chv[m - k];
        }
        ch[m] = s;
    }
    Ok(ch)
}

/// Arm and leg of the 1-based box `(i, j)`.
pub fn arm_leg(lambda: &Partition, i: usize, j: usize) -> Result<(usize, usize)> {
    if !lambda.contains(i, j) {
        return Err(Error::OutOfDiagram { row: i, col: j });
    }
    let t = lambda.transpose();
    Ok((lambda.part(i) - j, t.part(j) - i))
}
