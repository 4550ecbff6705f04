//! Event predicates: traversability, k-vertical crossing, the corner
//! decomposition, and the conditional filling/crossing events, all evaluated
//! exactly on given configurations.
//!
//! Conventions (fixed here, used consistently by the Monte Carlo and
//! analytic modules):
//!
//! * Traversability proximity sets may reference sites outside the rectangle
//!   under test; they count only if occupied in the configuration's window.
//! * "Connected path from top to bottom" means a path of occupied strip
//!   sites under neighborhood adjacency, starting in the strip's top row and
//!   ending in its bottom row.
//! * For reach `k != 2`, horizontal traversability means no `k+1`
//!   consecutive vacant columns, and the vertical proximity set is the `2k`
//!   horizontal offsets plus one vertical.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{closure, Configuration, NeighborhoodSpec, Rect, Site};
use crate::unionfind::components_by_offsets;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EventsError {
    #[error("rectangle {inner:?} is not contained in {outer:?}")]
    NotNested { inner: Rect, outer: Rect },
    #[error("crossing granularity k must be at least 1")]
    InvalidCrossingParams,
}

/// Direction of vertical traversability.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    North,
    South,
}

/// Granularity of the k-vertical crossing events.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossingParams {
    k: i64,
}

impl CrossingParams {
    pub fn new(k: i64) -> Result<Self, EventsError> {
        if k < 1 {
            return Err(EventsError::InvalidCrossingParams);
        }
        Ok(CrossingParams { k })
    }

    pub fn k(&self) -> i64 {
        self.k
    }
}

/// The five regions between nested rectangles: side rectangles spanning the
/// outer height, top/bottom rectangles over the inner column band, and the
/// corner region `H` (sites of the outer rectangle sharing neither the inner
/// x-range nor y-range).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerDecomposition {
    pub r_left: Rect,
    pub r_right: Rect,
    pub r_top: Rect,
    pub r_bottom: Rect,
    pub corner: BTreeSet<Site>,
}

/// No `reach+1` consecutive vacant columns of `r`; vacuously true when the
/// column count admits no such run.
pub fn is_horizontally_traversable(c: &Configuration, r: Rect, spec: &NeighborhoodSpec) -> bool {
    assert!(
        c.window().contains_rect(&r),
        "rect {r:?} outside window {:?}",
        c.window()
    );
    let gap = spec.reach() as i64 + 1;
    let mut run = 0i64;
    for m in r.a()..=r.b() {
        let occupied_col = (r.c()..=r.d()).any(|n| c.occupied(Site::new(m, n)));
        if occupied_col {
            run = 0;
        } else {
            run += 1;
            if run >= gap {
                return false;
            }
        }
    }
    true
}

fn line_has_supported_site(
    c: &Configuration,
    r: Rect,
    n: i64,
    vertical: i64,
    spec: &NeighborhoodSpec,
) -> bool {
    let k = spec.reach() as i64;
    for m in r.a()..=r.b() {
        let mut count = 0;
        for dx in 1..=k {
            if c.occupied(Site::new(m + dx, n)) {
                count += 1;
            }
            if c.occupied(Site::new(m - dx, n)) {
                count += 1;
            }
        }
        if c.occupied(Site::new(m, n + vertical)) {
            count += 1;
        }
        if count >= 2 {
            return true;
        }
    }
    false
}

/// Every line of `r` contains a site whose proximity set (`2·reach`
/// horizontal offsets plus one vertical, up for NORTH and down for SOUTH)
/// holds at least two occupied sites.
pub fn is_vertically_traversable(
    c: &Configuration,
    r: Rect,
    direction: Direction,
    spec: &NeighborhoodSpec,
) -> bool {
    assert!(
        c.window().contains_rect(&r),
        "rect {r:?} outside window {:?}",
        c.window()
    );
    let vertical = match direction {
        Direction::North => 1,
        Direction::South => -1,
    };
    (r.c()..=r.d()).all(|n| line_has_supported_site(c, r, n, vertical, spec))
}

/// Strip configuration for the crossing test: `c` inside the strip, all of
/// `r` outside the strip full, dynamics restricted to `r`.
fn strip_closure(
    c: &Configuration,
    r: Rect,
    strip: Rect,
    spec: &NeighborhoodSpec,
) -> Configuration {
    let mut init = Configuration::empty(r).expect("region validated");
    for s in r.sites() {
        if strip.contains(s) {
            if c.occupied(s) {
                init.set(s);
            }
        } else {
            init.set(s);
        }
    }
    closure(&init, spec)
}

fn has_top_to_bottom_path(closed: &Configuration, strip: Rect, spec: &NeighborhoodSpec) -> bool {
    let mut queue: Vec<Site> = strip
        .sites()
        .filter(|s| s.n == strip.d() && closed.occupied(*s))
        .collect();
    if strip.d() == strip.c() {
        return !queue.is_empty();
    }
    let mut seen: BTreeSet<Site> = queue.iter().copied().collect();
    while let Some(s) = queue.pop() {
        for &(dm, dn) in spec.offsets() {
            let t = s.translate(dm, dn);
            if strip.contains(t) && closed.occupied(t) && seen.insert(t) {
                if t.n == strip.c() {
                    return true;
                }
                queue.push(t);
            }
        }
    }
    false
}

/// For every `j` in `[c, d-k]`: the strip `[a,b] x [j, j+k]`, with the rest
/// of `r` full, closes (restricted to `r`) to a configuration containing a
/// top-to-bottom connected path of strip sites.
pub fn is_k_vertically_crossed(
    c: &Configuration,
    r: Rect,
    params: CrossingParams,
    spec: &NeighborhoodSpec,
) -> bool {
    assert!(
        c.window().contains_rect(&r),
        "rect {r:?} outside window {:?}",
        c.window()
    );
    let k = params.k();
    assert!(r.y() >= k, "rect {r:?} shorter than crossing granularity {k}");
    for j in r.c()..=(r.d() - k) {
        let strip = Rect::new(r.a(), r.b(), j, j + k).expect("valid strip");
        let closed = strip_closure(c, r, strip, spec);
        if !has_top_to_bottom_path(&closed, strip, spec) {
            return false;
        }
    }
    true
}

/// Crossed: k-vertically crossed and horizontally traversable.
pub fn is_crossed(
    c: &Configuration,
    r: Rect,
    params: CrossingParams,
    spec: &NeighborhoodSpec,
) -> bool {
    is_k_vertically_crossed(c, r, params, spec) && is_horizontally_traversable(c, r, spec)
}

/// Side/top/bottom/corner decomposition of the annulus between `r1 ⊆ r2`.
pub fn corner_decomposition(r1: Rect, r2: Rect) -> Result<CornerDecomposition, EventsError> {
    if !r2.contains_rect(&r1) {
        return Err(EventsError::NotNested {
            inner: r1,
            outer: r2,
        });
    }
    let (a1, a2, b1, b2) = (r1.a(), r1.b(), r1.c(), r1.d());
    let (c1, c2, d1, d2) = (r2.a(), r2.b(), r2.c(), r2.d());
    let corner = r2
        .sites()
        .filter(|s| !(a1 <= s.m && s.m <= a2) && !(b1 <= s.n && s.n <= b2))
        .collect();
    Ok(CornerDecomposition {
        r_left: Rect::new(c1, a1, d1, d2).expect("nested"),
        r_right: Rect::new(a2, c2, d1, d2).expect("nested"),
        r_top: Rect::new(a1, a2, b2, d2).expect("nested"),
        r_bottom: Rect::new(a1, a2, d1, b1).expect("nested"),
        corner,
    })
}

/// `I(R1, R2)`: `r2` is internally filled once `r1` is made full, keeping
/// `c` elsewhere inside `r2` and restricting dynamics to `r2`. Depends only
/// on `c` restricted to `r2 \ r1`.
pub fn occurs_i(r1: Rect, r2: Rect, c: &Configuration, spec: &NeighborhoodSpec) -> bool {
    assert!(r2.contains_rect(&r1), "r1 {r1:?} not inside r2 {r2:?}");
    assert!(
        c.window().contains_rect(&r2),
        "r2 {r2:?} outside window {:?}",
        c.window()
    );
    let init = c.restrict(r2).expect("region validated").overlay_full(r1);
    closure(&init, spec).len() as u128 == r2.site_count()
}

/// `A_k(R1, R2)`: `r2` is k-vertically crossed once `r1` is made full.
pub fn occurs_a_k(
    r1: Rect,
    r2: Rect,
    c: &Configuration,
    params: CrossingParams,
    spec: &NeighborhoodSpec,
) -> bool {
    assert!(r2.contains_rect(&r1), "r1 {r1:?} not inside r2 {r2:?}");
    assert!(
        c.window().contains_rect(&r2),
        "r2 {r2:?} outside window {:?}",
        c.window()
    );
    is_k_vertically_crossed(&c.overlay_full(r1), r2, params, spec)
}

/// Offsets realizing weak connectivity: `x` and `y` are weakly connected
/// when some site's closed neighborhood `z + N ∪ {z}` contains both. (The
/// closed form is required for vertically adjacent pairs to count, which the
/// crossing structure of the model forces.)
pub fn weak_offsets(spec: &NeighborhoodSpec) -> Vec<(i64, i64)> {
    let mut out: BTreeSet<(i64, i64)> = BTreeSet::new();
    for &o in spec.offsets() {
        out.insert(o);
    }
    for &(m1, n1) in spec.offsets() {
        for &(m2, n2) in spec.offsets() {
            if (m1, n1) != (m2, n2) {
                out.insert((m1 - m2, n1 - n2));
            }
        }
    }
    out.into_iter().collect()
}

/// Maximal classes of occupied sites under the transitive closure of
/// pairwise weak connectivity, in deterministic (row-major minimum) order.
pub fn weakly_connected_components(
    c: &Configuration,
    spec: &NeighborhoodSpec,
) -> Vec<BTreeSet<Site>> {
    let sites: Vec<Site> = c.sites().collect();
    components_by_offsets(&sites, &weak_offsets(spec))
}

/// Stable event names used by the CLI and result records.
pub const EVENT_NAMES: [&str; 7] = [
    "horiz_traversable",
    "north_traversable",
    "south_traversable",
    "k_vert_crossed",
    "crossed",
    "I",
    "A_k",
];
