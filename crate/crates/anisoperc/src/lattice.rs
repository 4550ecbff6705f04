//! Lattice geometry, configurations, and the bootstrap update rule.
//!
//! Everything runs on a finite rectangular window. Sites outside the window
//! are permanently vacant unless an explicit boundary override supplies them
//! as occupied; the override is an input to the operation, never global
//! state. All iteration is row-major so runs are bit-reproducible.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported window, in sites.
pub const MAX_WINDOW_SITES: u128 = 1 << 28;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("invalid rectangle [{a},{b}]x[{c},{d}]: requires a <= b and c <= d")]
    InvalidRect { a: i64, b: i64, c: i64, d: i64 },
    #[error("site ({m},{n}) lies outside the window")]
    OutsideWindow { m: i64, n: i64 },
    #[error("window of {0} sites exceeds the supported maximum")]
    WindowTooLarge(u128),
    #[error("invalid neighborhood: reach and threshold must be positive")]
    InvalidNeighborhood,
    #[error("parse error: {0}")]
    Parse(String),
}

/// A lattice site `(m, n)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Site {
    pub m: i64,
    pub n: i64,
}

impl Site {
    pub const fn new(m: i64, n: i64) -> Self {
        Site { m, n }
    }

    pub const fn translate(self, dm: i64, dn: i64) -> Self {
        Site::new(self.m + dm, self.n + dn)
    }
}

impl fmt::Debug for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

// Row-major order: by row, then by column.
impl Ord for Site {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.n, self.m).cmp(&(other.n, other.m))
    }
}

impl PartialOrd for Site {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The update rule: horizontal reach `k` and occupation threshold.
///
/// The offset set is `{(±1,0), ..., (±k,0), (0,±1)}`, of cardinality
/// `2k + 2`. The paper family uses threshold `k + 1`; the model of interest
/// is `k = 2`, threshold 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NeighborhoodSpec {
    reach: u32,
    threshold: u32,
    offsets: Vec<(i64, i64)>,
}

impl NeighborhoodSpec {
    pub fn new(reach: u32, threshold: u32) -> Result<Self, LatticeError> {
        if reach == 0 || threshold == 0 {
            return Err(LatticeError::InvalidNeighborhood);
        }
        let k = reach as i64;
        let mut offsets = Vec::with_capacity(2 * reach as usize + 2);
        for dx in (1..=k).rev() {
            offsets.push((dx, 0));
        }
        offsets.push((0, 1));
        for dx in 1..=k {
            offsets.push((-dx, 0));
        }
        offsets.push((0, -1));
        Ok(NeighborhoodSpec {
            reach,
            threshold,
            offsets,
        })
    }

    /// The `N_k` rule: reach `k`, threshold `k + 1`.
    pub fn anisotropic(k: u32) -> Self {
        Self::new(k, k + 1).expect("k >= 1")
    }

    /// Simple bootstrap percolation as a comparison rule: nearest-neighbor
    /// offsets with threshold 2 (the `k = 1` member of the family).
    pub fn simple_bootstrap() -> Self {
        Self::anisotropic(1)
    }

    pub fn reach(&self) -> u32 {
        self.reach
    }

    pub fn threshold(&self) -> u32 {
        self.threshold
    }

    /// Offsets in a fixed order: `(+k,0)..(+1,0), (0,+1), (-1,0)..(-k,0), (0,-1)`.
    pub fn offsets(&self) -> &[(i64, i64)] {
        &self.offsets
    }
}

/// Neighborhood of `s`: the translated offset set, in the spec's fixed order.
pub fn neighborhood(s: Site, spec: &NeighborhoodSpec) -> Vec<Site> {
    spec.offsets()
        .iter()
        .map(|&(dm, dn)| s.translate(dm, dn))
        .collect()
}

/// Integer-bounded axis-aligned rectangle: all sites `(m, n)` with
/// `a <= m <= b` and `c <= n <= d`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RectDoc", into = "RectDoc")]
pub struct Rect {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

#[derive(Serialize, Deserialize)]
struct RectDoc {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
}

impl TryFrom<RectDoc> for Rect {
    type Error = LatticeError;
    fn try_from(doc: RectDoc) -> Result<Self, Self::Error> {
        Rect::new(doc.a, doc.b, doc.c, doc.d)
    }
}

impl From<Rect> for RectDoc {
    fn from(r: Rect) -> Self {
        RectDoc {
            a: r.a,
            b: r.b,
            c: r.c,
            d: r.d,
        }
    }
}

impl fmt::Debug for Rect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]x[{},{}]", self.a, self.b, self.c, self.d)
    }
}

impl Rect {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self, LatticeError> {
        if a > b || c > d {
            return Err(LatticeError::InvalidRect { a, b, c, d });
        }
        Ok(Rect { a, b, c, d })
    }

    /// Rectangle `[0, x] x [0, y]` with the given dimensions.
    pub fn with_dims(x: i64, y: i64) -> Result<Self, LatticeError> {
        Self::new(0, x, 0, y)
    }

    pub fn a(&self) -> i64 {
        self.a
    }
    pub fn b(&self) -> i64 {
        self.b
    }
    pub fn c(&self) -> i64 {
        self.c
    }
    pub fn d(&self) -> i64 {
        self.d
    }

    /// x-dimension `b - a` (one less than the number of columns).
    pub fn x(&self) -> i64 {
        self.b - self.a
    }

    /// y-dimension `d - c` (one less than the number of rows).
    pub fn y(&self) -> i64 {
        self.d - self.c
    }

    pub fn columns(&self) -> i64 {
        self.x() + 1
    }

    pub fn rows(&self) -> i64 {
        self.y() + 1
    }

    pub fn site_count(&self) -> u128 {
        self.columns() as u128 * self.rows() as u128
    }

    pub fn contains(&self, s: Site) -> bool {
        self.a <= s.m && s.m <= self.b && self.c <= s.n && s.n <= self.d
    }

    pub fn contains_rect(&self, other: &Rect) -> bool {
        self.a <= other.a && other.b <= self.b && self.c <= other.c && other.d <= self.d
    }

    pub fn intersect(&self, other: &Rect) -> Option<Rect> {
        let a = self.a.max(other.a);
        let b = self.b.min(other.b);
        let c = self.c.max(other.c);
        let d = self.d.min(other.d);
        (a <= b && c <= d).then_some(Rect { a, b, c, d })
    }

    pub fn translate(&self, dm: i64, dn: i64) -> Rect {
        Rect {
            a: self.a + dm,
            b: self.b + dm,
            c: self.c + dn,
            d: self.d + dn,
        }
    }

    /// Grow by `dx` columns on each side and `dy` rows on each side.
    pub fn inflate(&self, dx: i64, dy: i64) -> Rect {
        Rect {
            a: self.a - dx,
            b: self.b + dx,
            c: self.c - dy,
            d: self.d + dy,
        }
    }

    /// Sites in row-major order.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        let r = *self;
        (r.c..=r.d).flat_map(move |n| (r.a..=r.b).map(move |m| Site::new(m, n)))
    }
}

/// An occupied-site set over a finite window. Immutable after construction;
/// all dynamics operations are pure functions returning new configurations.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "ConfigurationDoc", into = "ConfigurationDoc")]
pub struct Configuration {
    window: Rect,
    cols: usize,
    words: Vec<u64>,
    count: usize,
}

#[derive(Serialize, Deserialize)]
struct ConfigurationDoc {
    window: Rect,
    occupied: Vec<Site>,
}

impl TryFrom<ConfigurationDoc> for Configuration {
    type Error = LatticeError;
    fn try_from(doc: ConfigurationDoc) -> Result<Self, Self::Error> {
        Configuration::from_sites(doc.window, doc.occupied)
    }
}

impl From<Configuration> for ConfigurationDoc {
    fn from(c: Configuration) -> Self {
        ConfigurationDoc {
            window: c.window,
            occupied: c.sites().collect(),
        }
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({:?}, {} occupied)", self.window, self.count)
    }
}

impl Configuration {
    pub fn empty(window: Rect) -> Result<Self, LatticeError> {
        let sites = window.site_count();
        if sites > MAX_WINDOW_SITES {
            return Err(LatticeError::WindowTooLarge(sites));
        }
        let words = vec![0u64; (sites as usize).div_ceil(64)];
        Ok(Configuration {
            window,
            cols: window.columns() as usize,
            words,
            count: 0,
        })
    }

    pub fn from_sites<I>(window: Rect, sites: I) -> Result<Self, LatticeError>
    where
        I: IntoIterator<Item = Site>,
    {
        let mut c = Self::empty(window)?;
        for s in sites {
            if !window.contains(s) {
                return Err(LatticeError::OutsideWindow { m: s.m, n: s.n });
            }
            c.set(s);
        }
        Ok(c)
    }

    /// Fully occupied window.
    pub fn full(window: Rect) -> Result<Self, LatticeError> {
        let mut c = Self::empty(window)?;
        let sites = window.site_count() as usize;
        for w in c.words.iter_mut() {
            *w = u64::MAX;
        }
        let tail = sites % 64;
        if tail != 0 {
            *c.words.last_mut().expect("nonempty") = (1u64 << tail) - 1;
        }
        c.count = sites;
        Ok(c)
    }

    fn idx(&self, s: Site) -> usize {
        debug_assert!(self.window.contains(s));
        (s.n - self.window.c) as usize * self.cols + (s.m - self.window.a) as usize
    }

    fn site_at(&self, idx: usize) -> Site {
        Site::new(
            self.window.a + (idx % self.cols) as i64,
            self.window.c + (idx / self.cols) as i64,
        )
    }

    fn get_idx(&self, idx: usize) -> bool {
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, s: Site) {
        let idx = self.idx(s);
        let w = &mut self.words[idx / 64];
        let bit = 1u64 << (idx % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.count += 1;
        }
    }

    pub fn window(&self) -> Rect {
        self.window
    }

    /// Number of occupied sites.
    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Occupancy query; sites outside the window are vacant.
    pub fn occupied(&self, s: Site) -> bool {
        self.window.contains(s) && self.get_idx(self.idx(s))
    }

    /// Occupied sites in row-major order.
    pub fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(self.site_at(wi * 64 + tz))
            })
        })
    }

    /// Same occupied set with `rect ∩ window` forced full.
    pub fn overlay_full(&self, rect: Rect) -> Configuration {
        let mut out = self.clone();
        if let Some(inter) = rect.intersect(&self.window) {
            for s in inter.sites() {
                out.set(s);
            }
        }
        out
    }

    /// Restriction to `region`: new window `region`, keeping occupied sites
    /// inside it.
    pub fn restrict(&self, region: Rect) -> Result<Configuration, LatticeError> {
        let mut out = Configuration::empty(region)?;
        if let Some(inter) = region.intersect(&self.window) {
            for s in inter.sites() {
                if self.occupied(s) {
                    out.set(s);
                }
            }
        }
        Ok(out)
    }

    /// Translate window and sites by `(dm, dn)`.
    pub fn translate(&self, dm: i64, dn: i64) -> Configuration {
        Configuration {
            window: self.window.translate(dm, dn),
            cols: self.cols,
            words: self.words.clone(),
            count: self.count,
        }
    }

    /// Text form: a `window a b c d` header, then one `m n` line per
    /// occupied site in row-major order.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "window {} {} {} {}\n",
            self.window.a, self.window.b, self.window.c, self.window.d
        );
        for s in self.sites() {
            out.push_str(&format!("{} {}\n", s.m, s.n));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, LatticeError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| LatticeError::Parse("empty input".into()))?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        if fields.len() != 5 || fields[0] != "window" {
            return Err(LatticeError::Parse(format!(
                "expected `window a b c d` header, got `{header}`"
            )));
        }
        let nums: Vec<i64> = fields[1..]
            .iter()
            .map(|f| {
                f.parse::<i64>()
                    .map_err(|e| LatticeError::Parse(format!("bad header field `{f}`: {e}")))
            })
            .collect::<Result<_, _>>()?;
        let window = Rect::new(nums[0], nums[1], nums[2], nums[3])?;
        let mut c = Configuration::empty(window)?;
        for line in lines {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(LatticeError::Parse(format!("expected `m n`, got `{line}`")));
            }
            let m: i64 = parts[0]
                .parse()
                .map_err(|e| LatticeError::Parse(format!("bad coordinate `{}`: {e}", parts[0])))?;
            let n: i64 = parts[1]
                .parse()
                .map_err(|e| LatticeError::Parse(format!("bad coordinate `{}`: {e}", parts[1])))?;
            let s = Site::new(m, n);
            if !window.contains(s) {
                return Err(LatticeError::OutsideWindow { m, n });
            }
            c.set(s);
        }
        Ok(c)
    }
}

/// Fixed occupied sites outside a configuration's window. They contribute to
/// neighbor counts but never change; growth stays inside the window.
pub type Boundary = BTreeSet<Site>;

fn occupied_or_external(c: &Configuration, external: Option<&Boundary>, s: Site) -> bool {
    if c.window().contains(s) {
        c.occupied(s)
    } else {
        external.is_some_and(|ext| ext.contains(&s))
    }
}

fn count_occupied(c: &Configuration, external: Option<&Boundary>, s: Site, spec: &NeighborhoodSpec) -> u32 {
    let mut count = 0;
    for &(dm, dn) in spec.offsets() {
        if occupied_or_external(c, external, s.translate(dm, dn)) {
            count += 1;
            if count >= spec.threshold() {
                break;
            }
        }
    }
    count
}

/// One synchronous round of the update rule: vacant sites with at least
/// `threshold` occupied neighbors become occupied, simultaneously.
pub fn step(c: &Configuration, spec: &NeighborhoodSpec) -> Configuration {
    step_with_boundary(c, None, spec)
}

pub fn step_with_boundary(
    c: &Configuration,
    external: Option<&Boundary>,
    spec: &NeighborhoodSpec,
) -> Configuration {
    let mut candidates: Vec<usize> = Vec::new();
    for s in c.sites() {
        for &(dm, dn) in spec.offsets() {
            let t = s.translate(dm, dn);
            if c.window().contains(t) && !c.occupied(t) {
                candidates.push(c.idx(t));
            }
        }
    }
    candidates.sort_unstable();
    candidates.dedup();
    let mut out = c.clone();
    for idx in candidates {
        let s = c.site_at(idx);
        if count_occupied(c, external, s, spec) >= spec.threshold() {
            out.set(s);
        }
    }
    out
}

struct DynamicsRun {
    closed: Configuration,
    target_time: Option<u64>,
}

/// Frontier-worklist engine: only neighbors of newly occupied sites are
/// re-examined, and rounds are synchronous, so round indices match repeated
/// application of [`step`].
fn run_dynamics(
    c: &Configuration,
    external: Option<&Boundary>,
    spec: &NeighborhoodSpec,
    target: Option<Site>,
) -> DynamicsRun {
    let mut grid = c.clone();
    if let Some(t) = target {
        if grid.occupied(t) {
            return DynamicsRun {
                closed: grid,
                target_time: Some(0),
            };
        }
    }
    let mut frontier: Vec<usize> = grid
        .words
        .iter()
        .enumerate()
        .flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let tz = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + tz)
            })
        })
        .collect();
    let mut round = 0u64;
    let mut candidates: Vec<usize> = Vec::new();
    let mut newly: Vec<usize> = Vec::new();
    while !frontier.is_empty() {
        candidates.clear();
        for &idx in &frontier {
            let s = grid.site_at(idx);
            for &(dm, dn) in spec.offsets() {
                let t = s.translate(dm, dn);
                if grid.window().contains(t) && !grid.occupied(t) {
                    candidates.push(grid.idx(t));
                }
            }
        }
        candidates.sort_unstable();
        candidates.dedup();
        newly.clear();
        for &idx in &candidates {
            let s = grid.site_at(idx);
            if count_occupied(&grid, external, s, spec) >= spec.threshold() {
                newly.push(idx);
            }
        }
        if newly.is_empty() {
            break;
        }
        round += 1;
        for &idx in &newly {
            let s = grid.site_at(idx);
            grid.set(s);
        }
        if let Some(t) = target {
            if grid.occupied(t) {
                return DynamicsRun {
                    closed: grid,
                    target_time: Some(round),
                };
            }
        }
        std::mem::swap(&mut frontier, &mut newly);
    }
    DynamicsRun {
        closed: grid,
        target_time: None,
    }
}

/// Closure `<K>`: the least fixed point of [`step`] containing `c`,
/// restricted to the window.
pub fn closure(c: &Configuration, spec: &NeighborhoodSpec) -> Configuration {
    run_dynamics(c, None, spec, None).closed
}

/// Closure with externally full sites supplied as a boundary override.
pub fn closure_with_boundary(
    c: &Configuration,
    external: &Boundary,
    spec: &NeighborhoodSpec,
) -> Configuration {
    run_dynamics(c, Some(external), spec, None).closed
}

/// Reference closure by full-grid re-scan: iterate [`step`] to stabilization.
/// Extensionally equal to [`closure`]; kept as the independent oracle.
pub fn closure_naive(c: &Configuration, spec: &NeighborhoodSpec) -> Configuration {
    let mut cur = c.clone();
    loop {
        let next = step(&cur, spec);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// Minimal `t` such that `target` is occupied after `t` rounds, or `None`
/// if it stays vacant in the stabilized configuration.
pub fn time_to_occupy(c: &Configuration, spec: &NeighborhoodSpec, target: Site) -> Option<u64> {
    assert!(
        c.window().contains(target),
        "target {target:?} outside window {:?}",
        c.window()
    );
    run_dynamics(c, None, spec, Some(target)).target_time
}

/// True iff the closure of `occupied ∩ region`, with dynamics restricted to
/// `region`, covers `region`.
pub fn is_internally_filled(region: Rect, c: &Configuration, spec: &NeighborhoodSpec) -> bool {
    assert!(
        c.window().contains_rect(&region),
        "region {region:?} outside window {:?}",
        c.window()
    );
    let restricted = c.restrict(region).expect("region validated");
    closure(&restricted, spec).len() as u128 == region.site_count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::trial_rng;

    fn k2() -> NeighborhoodSpec {
        NeighborhoodSpec::anisotropic(2)
    }

    fn config(window: Rect, sites: &[(i64, i64)]) -> Configuration {
        Configuration::from_sites(window, sites.iter().map(|&(m, n)| Site::new(m, n))).unwrap()
    }

    fn random_config(window: Rect, p: f64, seed: u64, trial: u64) -> Configuration {
        let mut rng = trial_rng(seed, trial);
        let mut c = Configuration::empty(window).unwrap();
        for s in window.sites() {
            if crate::rng::bernoulli(&mut rng, p) {
                c.set(s);
            }
        }
        c
    }

    #[test]
    fn neighborhood_k2_matches_model() {
        let got = neighborhood(Site::new(0, 0), &k2());
        let want = [(2, 0), (1, 0), (0, 1), (-1, 0), (-2, 0), (0, -1)]
            .map(|(m, n)| Site::new(m, n));
        assert_eq!(got, want);
        assert_eq!(got.len(), 2 * 2 + 2);
    }

    #[test]
    fn neighborhood_translates() {
        let base = neighborhood(Site::new(0, 0), &k2());
        let shifted = neighborhood(Site::new(5, 7), &k2());
        for (b, s) in base.iter().zip(&shifted) {
            assert_eq!(b.translate(5, 7), *s);
        }
    }

    #[test]
    fn neighborhood_k1() {
        let got = neighborhood(Site::new(0, 0), &NeighborhoodSpec::anisotropic(1));
        let want = [(1, 0), (0, 1), (-1, 0), (0, -1)].map(|(m, n)| Site::new(m, n));
        assert_eq!(got, want);
    }

    #[test]
    fn step_on_empty_is_empty() {
        let c = Configuration::empty(Rect::new(0, 4, 0, 4).unwrap()).unwrap();
        assert_eq!(step(&c, &k2()), c);
    }

    #[test]
    fn step_adds_the_two_supported_sites() {
        // (2,0) sees (1,0),(0,0),(2,1); (1,1) sees (0,1),(2,1),(1,0).
        let w = Rect::new(0, 4, 0, 4).unwrap();
        let c = config(w, &[(0, 0), (1, 0), (0, 1), (2, 1)]);
        let next = step(&c, &k2());
        let want = config(w, &[(0, 0), (1, 0), (0, 1), (2, 1), (2, 0), (1, 1)]);
        assert_eq!(next, want);
    }

    #[test]
    fn step_full_window_is_fixed() {
        let c = Configuration::full(Rect::new(0, 3, 0, 3).unwrap()).unwrap();
        assert_eq!(step(&c, &k2()), c);
    }

    #[test]
    fn closure_of_two_by_two_block_is_stable() {
        let w = Rect::new(0, 5, 0, 5).unwrap();
        let c = config(w, &[(0, 0), (1, 0), (0, 1), (1, 1)]);
        assert_eq!(closure(&c, &k2()), c);
    }

    #[test]
    fn closure_vertical_cascade_fills_third_column_only() {
        let w = Rect::new(0, 4, 0, 4).unwrap();
        let mut sites: Vec<Site> = Vec::new();
        for n in 0..=4 {
            sites.push(Site::new(0, n));
            sites.push(Site::new(1, n));
        }
        sites.push(Site::new(2, 2));
        let c = Configuration::from_sites(w, sites).unwrap();
        let closed = closure(&c, &k2());
        let mut want = Configuration::empty(w).unwrap();
        for n in 0..=4 {
            for m in 0..=2 {
                want.set(Site::new(m, n));
            }
        }
        assert_eq!(closed, want);
    }

    #[test]
    fn closure_fills_three_by_two_rectangle() {
        let w = Rect::new(0, 4, 0, 4).unwrap();
        let c = config(w, &[(0, 0), (1, 0), (0, 1), (2, 1)]);
        let closed = closure(&c, &k2());
        let want = Configuration::empty(w)
            .unwrap()
            .overlay_full(Rect::new(0, 2, 0, 1).unwrap());
        assert_eq!(closed, want);
    }

    #[test]
    fn internally_filled_examples() {
        let w = Rect::new(0, 4, 0, 4).unwrap();
        let spec = k2();
        let region = Rect::new(0, 2, 0, 1).unwrap();
        let full = Configuration::full(w).unwrap();
        assert!(is_internally_filled(region, &full, &spec));
        let empty = Configuration::empty(w).unwrap();
        assert!(!is_internally_filled(region, &empty, &spec));
        let c = config(w, &[(0, 0), (1, 0), (0, 1), (2, 1)]);
        assert!(is_internally_filled(region, &c, &spec));
    }

    #[test]
    fn time_to_occupy_examples() {
        let w = Rect::new(-2, 2, -2, 2).unwrap();
        let spec = k2();
        let origin = Site::new(0, 0);
        let c = config(w, &[(0, 0)]);
        assert_eq!(time_to_occupy(&c, &spec, origin), Some(0));
        let c = config(w, &[(1, 0), (2, 0), (0, 1)]);
        assert_eq!(time_to_occupy(&c, &spec, origin), Some(1));
        let c = Configuration::empty(w).unwrap();
        assert_eq!(time_to_occupy(&c, &spec, origin), None);
    }

    #[test]
    fn double_column_of_height_two_or_more_is_fixed() {
        let spec = k2();
        for h in 1..=5i64 {
            let w = Rect::new(0, 6, 0, h + 2).unwrap();
            let mut c = Configuration::empty(w).unwrap();
            for n in 0..=h {
                c.set(Site::new(2, n));
                c.set(Site::new(3, n));
            }
            assert_eq!(closure(&c, &spec), c, "height {h} double column grew");
        }
    }

    #[test]
    fn boundary_override_feeds_counts_but_growth_stays_inside() {
        let spec = k2();
        let w = Rect::new(0, 2, 0, 0).unwrap();
        let c = config(w, &[(2, 0)]);
        let mut ext = Boundary::new();
        ext.insert(Site::new(0, 1));
        ext.insert(Site::new(0, -1));
        let closed = closure_with_boundary(&c, &ext, &spec);
        // (0,0) sees (2,0) inside plus the two external sites: threshold met.
        assert!(closed.occupied(Site::new(0, 0)));
        // (1,0) only ever sees (0,0) and (2,0): stays vacant.
        assert!(!closed.occupied(Site::new(1, 0)));
        // Without the override nothing grows.
        assert_eq!(closure(&c, &spec), c);
    }

    #[test]
    fn frontier_equals_naive_on_random_configurations() {
        let spec = k2();
        for trial in 0..60 {
            let p = [0.05, 0.2, 0.5][trial % 3];
            let w = Rect::new(0, 14, 0, 11).unwrap();
            let c = random_config(w, p, 42, trial as u64);
            assert_eq!(closure(&c, &spec), closure_naive(&c, &spec));
        }
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let spec = k2();
        for trial in 0..40 {
            let w = Rect::new(0, 12, 0, 12).unwrap();
            let c1 = random_config(w, 0.2, 7, trial);
            let closed = closure(&c1, &spec);
            assert_eq!(closure(&closed, &spec), closed);
            // build a superset by adding more sites
            let extra = random_config(w, 0.1, 8, trial);
            let mut c2 = c1.clone();
            for s in extra.sites() {
                c2.set(s);
            }
            let closed2 = closure(&c2, &spec);
            for s in closed.sites() {
                assert!(closed2.occupied(s), "monotonicity violated at {s:?}");
            }
        }
    }

    #[test]
    fn closure_is_translation_equivariant() {
        let spec = k2();
        for trial in 0..20 {
            let w = Rect::new(0, 10, 0, 10).unwrap();
            let c = random_config(w, 0.25, 9, trial);
            let moved = c.translate(13, -4);
            assert_eq!(closure(&c, &spec).translate(13, -4), closure(&moved, &spec));
        }
    }

    #[test]
    fn text_round_trip_exact() {
        let w = Rect::new(-3, 9, 2, 6).unwrap();
        let c = random_config(w, 0.3, 5, 0);
        let text = c.to_text();
        let back = Configuration::from_text(&text).unwrap();
        assert_eq!(back, c);
        assert_eq!(back.to_text(), text);
    }

    #[test]
    fn text_rejects_out_of_window_site() {
        let err = Configuration::from_text("window 0 2 0 2\n5 5\n").unwrap_err();
        assert_eq!(err, LatticeError::OutsideWindow { m: 5, n: 5 });
    }

    #[test]
    fn json_round_trip() {
        let w = Rect::new(0, 6, 0, 4).unwrap();
        let c = random_config(w, 0.4, 6, 1);
        let json = serde_json::to_string(&c).unwrap();
        let back: Configuration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn rejects_invalid_rect() {
        assert!(Rect::new(3, 1, 0, 0).is_err());
        assert!(Rect::new(0, 0, 4, 1).is_err());
    }
}
