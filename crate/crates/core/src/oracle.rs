//! Brute-force ground truth: depth-first search over prudent walks that
//! return next to the origin, tallied by enclosed area.

use std::collections::HashSet;

use num_bigint::BigInt;

use crate::enumerate::{CountTable, Method};
use crate::error::{Error, Result};

/// Largest area the exhaustive search accepts.
pub const MAX_ORACLE_AREA: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    N,
    S,
    E,
    W,
}

impl Step {
    pub const ALL: [Step; 4] = [Step::N, Step::E, Step::S, Step::W];

    pub fn delta(self) -> (i32, i32) {
        match self {
            Step::N => (0, 1),
            Step::S => (0, -1),
            Step::E => (1, 0),
            Step::W => (-1, 0),
        }
    }

    pub fn parse_walk(s: &str) -> Result<Vec<Step>> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| match c.to_ascii_uppercase() {
                'N' => Ok(Step::N),
                'S' => Ok(Step::S),
                'E' => Ok(Step::E),
                'W' => Ok(Step::W),
                _ => Err(Error::Usage(format!("bad step {c:?}"))),
            })
            .collect()
    }
}

/// Smallest lattice rectangle containing the walk so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BoundingBox {
    pub xmin: i32,
    pub xmax: i32,
    pub ymin: i32,
    pub ymax: i32,
}

impl BoundingBox {
    fn origin() -> Self {
        BoundingBox { xmin: 0, xmax: 0, ymin: 0, ymax: 0 }
    }

    fn extend(&mut self, (x, y): (i32, i32)) {
        self.xmin = self.xmin.min(x);
        self.xmax = self.xmax.max(x);
        self.ymin = self.ymin.min(y);
        self.ymax = self.ymax.max(y);
    }

    fn contains(&self, (x, y): (i32, i32)) -> bool {
        (self.xmin..=self.xmax).contains(&x) && (self.ymin..=self.ymax).contains(&y)
    }

    /// Inclusive membership: corners lie on two sides, and a degenerate box
    /// puts its points on both opposite sides.
    pub fn sides(&self, (x, y): (i32, i32)) -> SideMembership {
        SideMembership {
            on_north: y == self.ymax,
            on_south: y == self.ymin,
            on_east: x == self.xmax,
            on_west: x == self.xmin,
        }
    }

    pub fn width(&self) -> i32 {
        self.xmax - self.xmin
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SideMembership {
    pub on_north: bool,
    pub on_east: bool,
    pub on_west: bool,
    pub on_south: bool,
}

impl SideMembership {
    pub fn on_boundary(&self) -> bool {
        self.on_north || self.on_east || self.on_west || self.on_south
    }

    fn allowed(&self, k: u8) -> bool {
        match k {
            1 => self.on_north,
            2 => self.on_north || self.on_east,
            3 => self.on_north || self.on_east || self.on_west,
            _ => self.on_boundary(),
        }
    }
}

/// Walk state for the search: vertices, occupancy and box history.
#[derive(Clone, Debug)]
pub struct LatticeWalk {
    pub steps: Vec<Step>,
    pub vertices: Vec<(i32, i32)>,
    occupied: HashSet<(i32, i32)>,
    boxes: Vec<BoundingBox>,
}

impl Default for LatticeWalk {
    fn default() -> Self {
        Self::new()
    }
}

impl LatticeWalk {
    pub fn new() -> Self {
        LatticeWalk {
            steps: Vec::new(),
            vertices: vec![(0, 0)],
            occupied: [(0, 0)].into_iter().collect(),
            boxes: vec![BoundingBox::origin()],
        }
    }

    pub fn end(&self) -> (i32, i32) {
        *self.vertices.last().unwrap()
    }

    pub fn bbox(&self) -> BoundingBox {
        *self.boxes.last().unwrap()
    }

    /// Ray test: does stepping in `s` point at an occupied vertex?  Only the
    /// part of the ray inside the current box can meet the walk.
    pub fn is_prudent_step(&self, s: Step) -> bool {
        let (dx, dy) = s.delta();
        let b = self.bbox();
        let (mut x, mut y) = self.end();
        loop {
            x += dx;
            y += dy;
            if !b.contains((x, y)) {
                return true;
            }
            if self.occupied.contains(&(x, y)) {
                return false;
            }
        }
    }

    pub fn push(&mut self, s: Step) {
        let (x, y) = self.end();
        let (dx, dy) = s.delta();
        let p = (x + dx, y + dy);
        let mut b = self.bbox();
        b.extend(p);
        self.steps.push(s);
        self.vertices.push(p);
        self.occupied.insert(p);
        self.boxes.push(b);
        debug_assert!(b.sides(p).on_boundary());
    }

    pub fn pop(&mut self) {
        if self.steps.pop().is_some() {
            let p = self.vertices.pop().unwrap();
            self.occupied.remove(&p);
            self.boxes.pop();
        }
    }

    pub fn from_steps(steps: &[Step]) -> Option<Self> {
        let mut w = LatticeWalk::new();
        for &s in steps {
            if !w.is_prudent_step(s) {
                return None;
            }
            w.push(s);
        }
        Some(w)
    }

    /// Whether the endpoint currently satisfies the k-sided side rule.
    fn side_ok(&self, k: u8) -> bool {
        self.bbox().sides(self.end()).allowed(k)
    }

    /// The 3-sided exclusion for the step `next` taken from the current end:
    /// after a south step, on the east side of a box of positive width, a
    /// west step is forbidden (mirror image on the west side).
    fn excluded_3sided(&self, next: Step) -> bool {
        if self.steps.last() != Some(&Step::S) {
            return false;
        }
        let b = self.bbox();
        if b.width() == 0 {
            return false;
        }
        let sides = b.sides(self.end());
        (sides.on_east && next == Step::W) || (sides.on_west && next == Step::E)
    }
}

/// Result of classifying a complete walk.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_prudent: bool,
    /// `sided[k-1]`: every prefix satisfies the k-sided condition.
    pub sided: [bool; 4],
    pub excluded_3sided: bool,
}

impl Classification {
    pub fn is_k_sided(&self, k: u8) -> bool {
        self.is_prudent && self.sided[k as usize - 1]
    }
}

pub fn classify_walk(steps: &[Step]) -> Result<Classification> {
    if steps.is_empty() {
        return Err(Error::Usage("empty walk".into()));
    }
    let mut w = LatticeWalk::new();
    let mut sided = [true; 4];
    let mut excluded = false;
    for &s in steps {
        let (x, y) = w.end();
        let (dx, dy) = s.delta();
        if w.occupied.contains(&(x + dx, y + dy)) || !w.is_prudent_step(s) {
            return Ok(Classification { is_prudent: false, sided: [false; 4], excluded_3sided: false });
        }
        if w.excluded_3sided(s) {
            excluded = true;
        }
        w.push(s);
        for k in 1..=4u8 {
            if !w.side_ok(k) {
                sided[k as usize - 1] = false;
            }
        }
    }
    if excluded {
        sided[2] = false;
    }
    Ok(Classification { is_prudent: true, sided, excluded_3sided: excluded })
}

/// Area enclosed once the walk is closed by the edge back to the origin.
pub fn polygon_area(steps: &[Step]) -> Result<u64> {
    let w = LatticeWalk::from_steps(steps)
        .or_else(|| {
            // area is defined for any self-avoiding walk; replay without the ray test
            let mut w = LatticeWalk::new();
            for &s in steps {
                w.push(s);
            }
            Some(w)
        })
        .unwrap();
    let (x, y) = w.end();
    if (x.abs() + y.abs()) != 1 {
        return Err(Error::Usage("walk does not end next to the origin".into()));
    }
    Ok(shoelace(&w.vertices))
}

fn shoelace(v: &[(i32, i32)]) -> u64 {
    let mut twice: i64 = 0;
    for i in 0..v.len() {
        let (x0, y0) = v[i];
        let (x1, y1) = v[(i + 1) % v.len()];
        twice += x0 as i64 * y1 as i64 - x1 as i64 * y0 as i64;
    }
    (twice.unsigned_abs()) / 2
}

/// Options for the exhaustive search.
#[derive(Clone, Copy, Debug)]
pub struct OracleOptions {
    /// Apply the 3-sided south-then-west exclusion.
    pub exclusion: bool,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions { exclusion: true }
    }
}

/// Count k-sided prudent polygons by area up to `max_area`.
pub fn enumerate_prudent_polygons(k: u8, max_area: usize) -> Result<CountTable> {
    enumerate_with(k, max_area, OracleOptions::default())
}

pub fn enumerate_with(k: u8, max_area: usize, opts: OracleOptions) -> Result<CountTable> {
    if !(2..=4).contains(&k) {
        return Err(Error::Usage(format!("sidedness must be 2, 3 or 4, got {k}")));
    }
    if max_area == 0 {
        return Err(Error::Domain("max area must be at least 1".into()));
    }
    if max_area > MAX_ORACLE_AREA {
        return Err(Error::Domain(format!(
            "exhaustive search limited to area {MAX_ORACLE_AREA} (requested {max_area})"
        )));
    }
    // perimeter of an area-n polygon is at most 2n+2, so walks have at most 2n+1 steps
    let max_steps = 2 * max_area + 1;
    let mut tally = vec![0u64; max_area + 1];
    let mut w = LatticeWalk::new();
    dfs(&mut w, k, max_steps, opts, &mut tally);
    Ok(CountTable::new(k, Method::Oracle, tally[1..].iter().map(|&c| BigInt::from(c)).collect()))
}

fn dfs(w: &mut LatticeWalk, k: u8, max_steps: usize, opts: OracleOptions, tally: &mut [u64]) {
    let len = w.steps.len();
    let (x, y) = w.end();
    if len >= 3 && x.abs() + y.abs() == 1 {
        let a = shoelace(&w.vertices) as usize;
        if a < tally.len() {
            tally[a] += 1;
        }
    }
    if len == max_steps {
        return;
    }
    let remaining = max_steps - len;
    for s in Step::ALL {
        let (dx, dy) = s.delta();
        let p = (x + dx, y + dy);
        if w.occupied.contains(&p) || !w.is_prudent_step(s) {
            continue;
        }
        // must still be able to reach a neighbour of the origin
        if (p.0.abs() + p.1.abs()) as usize > remaining {
            continue;
        }
        if k == 3 && opts.exclusion && w.excluded_3sided(s) {
            continue;
        }
        w.push(s);
        assert!(w.bbox().sides(p).on_boundary(), "prudent walk left its box boundary");
        if w.side_ok(k) {
            dfs(w, k, max_steps, opts, tally);
        }
        w.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn walk(s: &str) -> Vec<Step> {
        Step::parse_walk(s).unwrap()
    }

    #[test]
    fn remark_walk_is_excluded() {
        let c = classify_walk(&walk("ESW")).unwrap();
        assert!(c.is_prudent && c.is_k_sided(4));
        assert!(c.excluded_3sided && !c.is_k_sided(3));
    }

    #[test]
    fn small_classifications() {
        let c = classify_walk(&walk("ENW")).unwrap();
        assert!(c.is_k_sided(2) && c.is_k_sided(3) && c.is_k_sided(4));
        let c = classify_walk(&walk("SWN")).unwrap();
        assert!(c.is_k_sided(3) && !c.is_k_sided(2));
        let c = classify_walk(&walk("NWSE")).unwrap();
        assert!(!c.is_prudent);
    }

    #[test]
    fn areas() {
        assert_eq!(polygon_area(&walk("ENW")).unwrap(), 1);
        assert_eq!(polygon_area(&walk("EENWW")).unwrap(), 2);
        assert_eq!(polygon_area(&walk("NNWSS")).unwrap(), 2);
        assert!(polygon_area(&walk("EE")).is_err());
    }

    #[test]
    fn area_one() {
        assert_eq!(*enumerate_prudent_polygons(2, 1).unwrap().get(1), BigInt::from(4));
        assert_eq!(*enumerate_prudent_polygons(3, 1).unwrap().get(1), BigInt::from(6));
        assert_eq!(*enumerate_prudent_polygons(4, 1).unwrap().get(1), BigInt::from(8));
        let loose = enumerate_with(3, 1, OracleOptions { exclusion: false }).unwrap();
        assert_eq!(*loose.get(1), BigInt::from(8));
    }
}
