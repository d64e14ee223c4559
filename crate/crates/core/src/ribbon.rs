//! Ribbon paths and the all-order expansion of joint cumulants of `ch^∨`.
//!
//! A configuration on `n` sites is a list of lattice paths (one per factor
//! `O_{ℓ_i}`), read left to right as one global word of steps. Stays are
//! slides of weight `h`. A down-step may be paired with a later up-step of the
//! same size (weight `k`); unpaired down-steps are exchanges (weight `V_k`) and
//! unpaired up-steps carry `V̄_k`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fock::ModeAssignment;
use crate::partition::EpsilonPair;
use crate::rational::{pow, qu, Q};

/// One step of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Step {
    Up(usize),
    Down(usize),
    /// Stay at the given height.
    Stay(usize),
}

/// Non-negative path from 0 to 0.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LivePath {
    pub heights: Vec<usize>,
}

impl LivePath {
    pub fn new(heights: Vec<usize>) -> Result<Self> {
        if heights.first() != Some(&0) || heights.last() != Some(&0) {
            return Err(Error::InvalidArgument(format!("path {heights:?} must start and end at 0")));
        }
        Ok(LivePath { heights })
    }

    /// Number of steps.
    pub fn len(&self) -> usize {
        self.heights.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn steps(&self) -> Vec<Step> {
        self.heights
            .windows(2)
            .map(|w| match w[1].cmp(&w[0]) {
                std::cmp::Ordering::Greater => Step::Up(w[1] - w[0]),
                std::cmp::Ordering::Less => Step::Down(w[0] - w[1]),
                std::cmp::Ordering::Equal => Step::Stay(w[0]),
            })
            .collect()
    }

    pub fn has_stays(&self) -> bool {
        self.steps().iter().any(|s| matches!(s, Step::Stay(_)))
    }
}

/// Paths of `len` steps with jumps of size at most `max_step` and heights at most `height_cap`.
pub fn enumerate_live_paths(len: usize, max_step: usize, height_cap: usize) -> Vec<LivePath> {
    fn rec(left: usize, max_step: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<LivePath>) {
        let h = *cur.last().unwrap();
        if left == 0 {
            if h == 0 {
                out.push(LivePath { heights: cur.clone() });
            }
            return;
        }
        // the remaining steps must be able to come back down
        let lo = h.saturating_sub(max_step);
        let hi = (h + max_step).min(cap);
        for next in lo..=hi {
            if next > max_step * (left - 1) {
                continue;
            }
            cur.push(next);
            rec(left - 1, max_step, cap, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(len, max_step, height_cap, &mut vec![0], &mut out);
    out
}

/// Paths on `n` sites with a pairing decoration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RibbonConfig {
    pub paths: Vec<LivePath>,
    /// `(down position, up position)` in the global step order.
    pub pairs: Vec<(usize, usize)>,
}

impl RibbonConfig {
    /// `(site, step)` in global order.
    pub fn global_steps(&self) -> Vec<(usize, Step)> {
        self.paths
            .iter()
            .enumerate()
            .flat_map(|(s, p)| p.steps().into_iter().map(move |st| (s, st)))
            .collect()
    }

    pub fn sites(&self) -> usize {
        self.paths.len()
    }

    /// Whether pairings connect all sites.
    pub fn is_connected(&self) -> bool {
        let n = self.paths.len();
        if n <= 1 {
            return true;
        }
        let steps = self.global_steps();
        let mut label: Vec<usize> = (0..n).collect();
        for &(a, b) in &self.pairs {
            let (x, y) = (label[steps[a].0], label[steps[b].0]);
            let (lo, hi) = (x.min(y), x.max(y));
            for l in label.iter_mut() {
                if *l == hi {
                    *l = lo;
                }
            }
        }
        label.iter().all(|&l| l == 0)
    }
}

/// All partial matchings of down-steps to later up-steps of equal size.
pub fn decorations(paths: &[LivePath]) -> Vec<RibbonConfig> {
    let base = RibbonConfig { paths: paths.to_vec(), pairs: Vec::new() };
    let steps = base.global_steps();
    let downs: Vec<(usize, usize)> = steps
        .iter()
        .enumerate()
        .filter_map(|(i, (_, s))| if let Step::Down(k) = s { Some((i, *k)) } else { None })
        .collect();
    let mut out = Vec::new();
    fn rec(
        idx: usize,
        downs: &[(usize, usize)],
        steps: &[(usize, Step)],
        used: &mut Vec<bool>,
        pairs: &mut Vec<(usize, usize)>,
        base: &RibbonConfig,
        out: &mut Vec<RibbonConfig>,
    ) {
        if idx == downs.len() {
            out.push(RibbonConfig { paths: base.paths.clone(), pairs: pairs.clone() });
            return;
        }
        // leave this down-step as an exchange
        rec(idx + 1, downs, steps, used, pairs, base, out);
        let (pos, k) = downs[idx];
        for j in pos + 1..steps.len() {
            if steps[j].1 == Step::Up(k) && !used[j] {
                used[j] = true;
                pairs.push((pos, j));
                rec(idx + 1, downs, steps, used, pairs, base, out);
                pairs.pop();
                used[j] = false;
            }
        }
    }
    let mut used = vec![false; steps.len()];
    rec(0, &downs, &steps, &mut used, &mut Vec::new(), &base, &mut out);
    out
}

/// Weight data of a configuration; the ε-prefactors are not included.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigWeight {
    pub pairs: usize,
    /// Number of stays (slides).
    pub m: usize,
    /// Total size of exchanged down-steps, equal to the `V̄`-degree.
    pub grade: usize,
    pub value: Q,
}

impl ConfigWeight {
    /// `g = #pairs - (n - 1)`; negative only for disconnected configurations.
    pub fn g(&self, n: usize) -> isize {
        self.pairs as isize - (n as isize - 1)
    }
}

pub fn config_weight(c: &RibbonConfig, modes: &ModeAssignment) -> ConfigWeight {
    let steps = c.global_steps();
    let mut paired = vec![false; steps.len()];
    let mut value = Q::one();
    for &(a, b) in &c.pairs {
        paired[a] = true;
        paired[b] = true;
        if let Step::Down(k) = steps[a].1 {
            value *= qu(k);
        }
    }
    let (mut m, mut grade) = (0, 0);
    for (i, (_, s)) in steps.iter().enumerate() {
        match *s {
            Step::Stay(h) => {
                m += 1;
                value *= qu(h);
            }
            Step::Up(k) if !paired[i] => value *= modes.out_value(k),
            Step::Down(k) if !paired[i] => {
                grade += k;
                value *= modes.in_value(k);
            }
            _ => {}
        }
    }
    ConfigWeight { pairs: c.pairs.len(), m, grade, value }
}

/// Exhaustive list of configurations with nonzero weight on sites of lengths `ells`.
///
/// Paired jumps may exceed the mode support, so jump sizes run up to the
/// largest reachable height.
pub fn enumerate_configs(ells: &[usize], modes: &ModeAssignment, connected_only: bool) -> Vec<(RibbonConfig, ConfigWeight)> {
    let k = modes.support().max(1);
    let total: usize = ells.iter().sum();
    let cap = k * (total / 2).max(1);
    let per_site: Vec<Vec<LivePath>> = ells.iter().map(|&l| enumerate_live_paths(l, cap, cap)).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; ells.len()];
    if per_site.iter().any(Vec::is_empty) {
        return out;
    }
    loop {
        let paths: Vec<LivePath> = idx.iter().zip(&per_site).map(|(&i, ps)| ps[i].clone()).collect();
        for c in decorations(&paths) {
            if connected_only && !c.is_connected() {
                continue;
            }
            let w = config_weight(&c, modes);
            if !w.value.is_zero() {
                out.push((c, w));
            }
        }
        // odometer
        let mut s = 0;
        loop {
            if s == idx.len() {
                return out;
            }
            idx[s] += 1;
            if idx[s] < per_site[s].len() {
                break;
            }
            idx[s] = 0;
            s += 1;
        }
    }
}

/// Sums of configuration values grouped by `(pairs, m, grade)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AoeTable {
    pub sites: usize,
    pub entries: BTreeMap<(usize, usize, usize), Q>,
}

impl AoeTable {
    /// `Ŵ_{n,g,m}` summed over grades.
    pub fn w_hat(&self, g: usize, m: usize) -> Q {
        let pairs = g + self.sites.saturating_sub(1);
        self.entries
            .iter()
            .filter(|((p, mm, _), _)| *p == pairs && *mm == m)
            .map(|(_, v)| v.clone())
            .sum()
    }

    /// `Σ (-ε1ε2)^{pairs} (ε1+ε2)^m Ŵ`, split by grade up to `max_grade`.
    pub fn graded_cumulant(&self, eps: &EpsilonPair, max_grade: usize) -> Vec<Q> {
        let (prod, aniso) = (eps.prod(), eps.aniso());
        let mut out = vec![Q::zero(); max_grade + 1];
        for ((p, m, grade), v) in &self.entries {
            if *grade <= max_grade {
                out[*grade] += pow(&prod, *p) * pow(&aniso, *m) * v;
            }
        }
        out
    }

    pub fn cumulant(&self, eps: &EpsilonPair) -> Q {
        let (prod, aniso) = (eps.prod(), eps.aniso());
        self.entries.iter().map(|((p, m, _), v)| pow(&prod, *p) * pow(&aniso, *m) * v).sum()
    }

    pub fn max_grade(&self) -> usize {
        self.entries.keys().map(|k| k.2).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct DpState {
    h: usize,
    /// Pending down-steps awaiting a partner: `(size, component, count)`.
    pending: Vec<(usize, usize, usize)>,
    /// Component label of each site.
    comp: Vec<usize>,
}

type Acc = BTreeMap<(usize, usize, usize), Q>;

fn merge_into(target: &mut BTreeMap<DpState, Acc>, state: DpState, acc: &Acc, weight: &Q, dp: usize, dm: usize, dg: usize) {
    let slot = target.entry(state).or_default();
    for ((p, m, g), v) in acc {
        let key = (p + dp, m + dm, g + dg);
        let e = slot.entry(key).or_insert_with(Q::zero);
        *e += v * weight;
        if e.is_zero() {
            slot.remove(&key);
        }
    }
}

fn relabel(comp: &mut [usize], pending: &mut Vec<(usize, usize, usize)>, a: usize, b: usize) {
    let (lo, hi) = (a.min(b), a.max(b));
    if lo == hi {
        return;
    }
    for c in comp.iter_mut() {
        if *c == hi {
            *c = lo;
        }
    }
    let mut merged: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for &(k, l, n) in pending.iter() {
        let l = if l == hi { lo } else { l };
        *merged.entry((k, l)).or_insert(0) += n;
    }
    *pending = merged.into_iter().map(|((k, l), n)| (k, l, n)).collect();
}

/// Ribbon-path sums by dynamic programming over the global step word.
pub fn aoe_table(ells: &[usize], modes: &ModeAssignment, connected_only: bool) -> AoeTable {
    let n = ells.len();
    let total: usize = ells.iter().sum();
    let mut states: BTreeMap<DpState, Acc> = BTreeMap::new();
    let mut init = Acc::new();
    init.insert((0, 0, 0), Q::one());
    states.insert(DpState { h: 0, pending: Vec::new(), comp: (0..n).collect() }, init);
    let mut done = 0;
    for (site, &len) in ells.iter().enumerate() {
        for t in 0..len {
            let left_here = len - t - 1;
            done += 1;
            let left_total = total - done;
            let mut next: BTreeMap<DpState, Acc> = BTreeMap::new();
            for (st, acc) in &states {
                let h = st.h;
                let pending_total: usize = st.pending.iter().map(|p| p.2).sum();
                let ok_height = |h2: usize| left_here > 0 || h2 == 0;
                // stay
                if h > 0 && ok_height(h) {
                    merge_into(&mut next, st.clone(), acc, &qu(h), 0, 1, 0);
                }
                // down-steps
                for k in 1..=h {
                    let h2 = h - k;
                    if !ok_height(h2) {
                        continue;
                    }
                    let vin = modes.in_value(k);
                    if !vin.is_zero() {
                        let s2 = DpState { h: h2, ..st.clone() };
                        merge_into(&mut next, s2, acc, &vin, 0, 0, k);
                    }
                    if left_total > pending_total {
                        let mut s2 = DpState { h: h2, ..st.clone() };
                        let label = s2.comp[site];
                        match s2.pending.iter_mut().find(|p| p.0 == k && p.1 == label) {
                            Some(p) => p.2 += 1,
                            None => {
                                s2.pending.push((k, label, 1));
                                s2.pending.sort_unstable();
                            }
                        }
                        merge_into(&mut next, s2, acc, &Q::one(), 0, 0, 0);
                    }
                }
                // unpaired up-steps
                if left_here > 0 {
                    for (&k, vout) in &modes.out_modes {
                        if vout.is_zero() {
                            continue;
                        }
                        let s2 = DpState { h: h + k, ..st.clone() };
                        merge_into(&mut next, s2, acc, vout, 0, 0, 0);
                    }
                    // paired up-steps
                    for (i, &(k, label, cnt)) in st.pending.iter().enumerate() {
                        let mut s2 = DpState { h: h + k, ..st.clone() };
                        if cnt == 1 {
                            s2.pending.remove(i);
                        } else {
                            s2.pending[i].2 -= 1;
                        }
                        let here = s2.comp[site];
                        relabel(&mut s2.comp, &mut s2.pending, here, label);
                        merge_into(&mut next, s2, acc, &(qu(k) * qu(cnt)), 1, 0, 0);
                    }
                }
            }
            next.retain(|_, acc| !acc.is_empty());
            states = next;
        }
    }
    let mut entries: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
    for (st, acc) in states {
        if st.h != 0 || !st.pending.is_empty() {
            continue;
        }
        if connected_only && st.comp.iter().any(|&c| c != 0) {
            continue;
        }
        for (key, v) in acc {
            *entries.entry(key).or_insert_with(Q::zero) += v;
        }
    }
    entries.retain(|_, v| !v.is_zero());
    AoeTable { sites: n, entries }
}

/// `Ŵ_{n,g,m}(ℓ_1..ℓ_n)` over connected configurations.
pub fn w_hat(g: usize, m: usize, ells: &[usize], modes: &ModeAssignment) -> Q {
    aoe_table(ells, modes, true).w_hat(g, m)
}

/// Joint cumulant of `ch^∨_{ℓ_1}, ..., ch^∨_{ℓ_n}` from connected ribbon paths.
pub fn aoe_cumulant(ells: &[usize], eps: &EpsilonPair, modes: &ModeAssignment) -> Q {
    aoe_table(ells, modes, true).cumulant(eps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn path(h: &[usize]) -> LivePath {
        LivePath::new(h.to_vec()).unwrap()
    }

    fn plancherel() -> ModeAssignment {
        ModeAssignment::real_from(&[(1, q(1))])
    }

    #[test]
    fn path_examples() {
        let mut p2 = enumerate_live_paths(2, 1, 2);
        p2.sort();
        assert_eq!(p2, vec![path(&[0, 0, 0]), path(&[0, 1, 0])]);
        let mut p3 = enumerate_live_paths(3, 1, 3);
        p3.sort();
        assert_eq!(p3, vec![path(&[0, 0, 0, 0]), path(&[0, 0, 1, 0]), path(&[0, 1, 0, 0]), path(&[0, 1, 1, 0])]);
        let mut dyck: Vec<LivePath> = enumerate_live_paths(4, 1, 4).into_iter().filter(|p| !p.has_stays()).collect();
        dyck.sort();
        assert_eq!(dyck, vec![path(&[0, 1, 0, 1, 0]), path(&[0, 1, 2, 1, 0])]);
    }

    #[test]
    fn decoration_examples() {
        assert_eq!(decorations(&[path(&[0, 1, 0])]).len(), 1);
        let d = decorations(&[path(&[0, 1, 0, 1, 0])]);
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|c| c.pairs == vec![(1, 2)]));
        let d = decorations(&[path(&[0, 1, 0]), path(&[0, 1, 0])]);
        assert_eq!(d.len(), 2);
        assert!(d.iter().any(|c| c.pairs == vec![(1, 2)] && c.is_connected()));
    }

    #[test]
    fn weight_examples() {
        let m = plancherel();
        let w = config_weight(&decorations(&[path(&[0, 1, 0])])[0], &m);
        assert_eq!((w.pairs, w.m, w.value), (0, 0, q(1)));
        let w = config_weight(&decorations(&[path(&[0, 1, 1, 0])])[0], &m);
        assert_eq!((w.pairs, w.m, w.value), (0, 1, q(1)));
        let c = RibbonConfig { paths: vec![path(&[0, 1, 0, 1, 0])], pairs: vec![(1, 2)] };
        let w = config_weight(&c, &m);
        assert_eq!((w.pairs, w.m, w.value), (1, 0, q(1)));
    }

    #[test]
    fn w_hat_examples() {
        let m = plancherel();
        assert_eq!(w_hat(0, 0, &[4], &m), q(2));
        assert_eq!(w_hat(0, 1, &[3], &m), q(1));
        assert_eq!(w_hat(1, 0, &[4], &m), q(1));
    }

    #[test]
    fn dp_matches_exhaustive() {
        let modes = ModeAssignment::real_from(&[(1, q(2)), (2, crate::rational::qf(-1, 3))]);
        for ells in [vec![3], vec![4], vec![5], vec![2, 2], vec![3, 2], vec![2, 3], vec![2, 2, 2]] {
            for connected in [false, true] {
                let dp = aoe_table(&ells, &modes, connected);
                let mut ex: BTreeMap<(usize, usize, usize), Q> = BTreeMap::new();
                for (_, w) in enumerate_configs(&ells, &modes, connected) {
                    *ex.entry((w.pairs, w.m, w.grade)).or_insert_with(Q::zero) += w.value;
                }
                ex.retain(|_, v| !v.is_zero());
                assert_eq!(dp.entries, ex, "ells {ells:?} connected {connected}");
            }
        }
    }

    #[test]
    fn matches_measure_cumulants_exactly() {
        use crate::measure::{JackMeasureSpec, MeasureTable};
        use crate::rational::qf;
        let eps = EpsilonPair::int(-1, 2);
        let modes = ModeAssignment::real_from(&[(1, q(1)), (2, qf(1, 3))]);
        let spec = JackMeasureSpec::new(eps.clone(), modes.clone(), 6).unwrap();
        let table = MeasureTable::new(&spec).unwrap();
        for ells in [vec![2], vec![3], vec![4], vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2]] {
            let exact = table.stripped_cumulant_series(&ells);
            let aoe = aoe_table(&ells, &modes, true);
            assert!(aoe.max_grade() <= 6);
            assert_eq!(aoe.graded_cumulant(&eps, 6), exact, "ells {ells:?}");
        }
    }

    #[test]
    fn toeplitz_formulas() {
        use crate::rational::qf;
        use crate::toeplitz::toeplitz_vev_exact;
        use std::cell::RefCell;
        use std::collections::HashMap;
        let modes = ModeAssignment::real_from(&[(1, q(1)), (2, qf(1, 2))]);
        let cache: RefCell<HashMap<(usize, usize, usize), Q>> = RefCell::new(HashMap::new());
        let t = |m: &ModeAssignment, l: usize, a: usize, b: usize| -> Q {
            if let Some(v) = cache.borrow().get(&(l, a, b)) {
                return v.clone();
            }
            let v = toeplitz_vev_exact(m, l, a, b);
            cache.borrow_mut().insert((l, a, b), v.clone());
            v
        };
        let k = modes.support();
        for l in 1..=8 {
            let table = aoe_table(&[l], &modes, true);
            assert_eq!(table.w_hat(0, 0), t(&modes, l, 0, 0), "leading, l={l}");
            let top = l * k;
            let mut slide = Q::zero();
            for h in 1..=top {
                for a in 0..l {
                    slide += qu(h) * t(&modes, a, 0, h) * t(&modes, l - 1 - a, h, 0);
                }
            }
            assert_eq!(table.w_hat(0, 1), slide, "one slide, l={l}");
            let mut pairing = Q::zero();
            if l >= 2 {
                for kk in 1..=top {
                    for hp in 0..=top {
                        for hm in 0..=top {
                            for a in 0..=l - 2 {
                                let left = t(&modes, a, 0, hp + kk);
                                if left.is_zero() {
                                    continue;
                                }
                                for b in 0..=l - 2 - a {
                                    let c = l - 2 - a - b;
                                    pairing += qu(kk) * &left * t(&modes, b, hp, hm) * t(&modes, c, hm + kk, 0);
                                }
                            }
                        }
                    }
                }
            }
            assert_eq!(table.w_hat(1, 0), pairing, "one pairing, l={l}");
        }
    }

    #[test]
    fn catalan_leading_order() {
        let m = plancherel();
        let cat = [1u64, 1, 2, 5, 14, 42, 132, 429, 1430];
        for l in 1..=8 {
            assert_eq!(w_hat(0, 0, &[2 * l], &m), Q::from_integer(cat[l].into()));
        }
    }

    #[test]
    fn connected_needs_n_minus_one_pairs() {
        let modes = ModeAssignment::real_from(&[(1, q(1)), (2, q(1))]);
        for ells in [vec![2, 2], vec![3, 2], vec![2, 2, 2]] {
            let t = aoe_table(&ells, &modes, true);
            assert!(t.entries.keys().all(|(p, _, _)| *p + 1 >= ells.len()));
        }
    }
}
