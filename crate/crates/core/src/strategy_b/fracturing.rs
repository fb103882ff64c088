//! w-Fracturing: player B's lower-bound strategy for ESO(m, 3).
//!
//! B keeps every point on real coordinates in the unit square and answers
//! with the `y = φ(x̂)` of the construction, where `x̂` is the midpoint of
//! the chosen gap. Points land either on a central up-run `C` or in
//! wastebins; the bins together form a second up-run, so the game never
//! ends with a 3-down-run.
//!
//! Ties in `y` are broken by `x` (the point further right counts as
//! higher). A weakly increasing run of reals therefore stays an up-run, and
//! a value clamped to `c` sits immediately above the point that defined
//! `c`.
//!
//! Rows are counted against the y-values of `C` only. The row zero
//! notches from `x` is the strip between the last point of `C` left of `x`
//! and the first one right of it. This also covers the outer fracture
//! regions, where `h` itself may be undefined because `c` lies above that
//! strip.

use std::cmp::Ordering;

use crate::game::{Board, GameKind, PointId, Rules};
use crate::strategy::{require, BStrategy, StrategyError, StrategyStats};

/// `⌊(6m)^{1/3}⌋ - 1`, at least 1.
pub fn default_width(m: usize) -> usize {
    let target = 6 * m;
    let mut c = 1;
    while (c + 1) * (c + 1) * (c + 1) <= target {
        c += 1;
    }
    (c - 1).max(1)
}

/// Whether `(w+1)^3 - (w+1) < 6m`, the condition under which w-Fracturing
/// guarantees `m + w` points.
pub fn width_admissible(m: usize, w: usize) -> bool {
    let v = w + 1;
    v * v * v - v < 6 * m
}

/// The guaranteed game length `m + w` for an admissible width.
pub fn guarantee_with(m: usize, w: usize) -> Option<usize> {
    width_admissible(m, w).then_some(m + w)
}

/// `m + ⌊(6m)^{1/3}⌋ - 1` (just `m` when no width is admissible, i.e.
/// `m = 1`).
pub fn fracturing_guarantee(m: usize) -> usize {
    guarantee_with(m, default_width(m)).unwrap_or(m)
}

/// `z_j = (w-j)(w-j+1)/2 + 1` for `j < w`, else 1.
pub fn z(w: usize, j: usize) -> usize {
    if j < w {
        (w - j) * (w - j + 1) / 2 + 1
    } else {
        1
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Pt {
    x: f64,
    y: f64,
}

const ORIGIN: Pt = Pt { x: 0.0, y: 0.0 };
const CORNER: Pt = Pt { x: 1.0, y: 1.0 };

/// Total order on placed points: by `y`, ties broken by `x`.
fn cmp_pts(p: Pt, q: Pt) -> Ordering {
    p.y.total_cmp(&q.y).then(p.x.total_cmp(&q.x))
}

/// `φ` on one region, with the central run frozen as it was when the
/// region was defined.
#[derive(Debug, Clone)]
struct Rule {
    run: Vec<Pt>,
    c: f64,
    d: f64,
    notches: Notches,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Notches {
    Central,
    Up(isize),
    Down(isize),
}

impl Rule {
    /// `y = φ(x)`, or `None` where the rule is undefined.
    fn eval(&self, x: f64) -> Option<f64> {
        let run = &self.run;
        let j = run.partition_point(|p| p.x < x);
        let at = |i: usize| -> Pt {
            if i == 0 {
                ORIGIN
            } else if i > run.len() {
                CORNER
            } else {
                run[i - 1]
            }
        };
        match self.notches {
            Notches::Central => {
                let (lo, hi) = (at(j), at(j + 1));
                if self.c >= hi.y || self.d <= lo.y {
                    return None;
                }
                let (ylo, yhi) = (self.c.max(lo.y), self.d.min(hi.y));
                Some(ylo + (x - lo.x) / (hi.x - lo.x) * (yhi - ylo))
            }
            Notches::Up(n) => {
                let n = n.max(0) as usize;
                if j + n > run.len() {
                    return None;
                }
                let (a, b) = (at(j + n).y, at(j + n + 1).y);
                (a < self.d).then(|| self.c.max((a + b.min(self.d)) / 2.0))
            }
            Notches::Down(n) => {
                let n = n.max(0) as usize;
                if n > j {
                    return None;
                }
                let (a, b) = (at(j - n).y, at(j - n + 1).y);
                (b > self.c).then(|| self.d.min((a.max(self.c) + b) / 2.0))
            }
        }
    }
}

/// A wastebin: its frozen x-interval, the rule `φ` follows there and the
/// points it holds.
#[derive(Debug, Clone)]
struct Bin {
    lo: f64,
    hi: f64,
    rule: Rule,
    points: Vec<PointId>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Region {
    Bin(usize),
    Stray,
    Central,
    Left { outer: bool },
    Right { outer: bool },
}

#[derive(Debug, Clone, Copy)]
struct Pending {
    at: Pt,
    region: Region,
}

/// The fracture that ended segment `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fracture {
    pub j: usize,
    pub left: bool,
    pub outer: bool,
    pub banked: Vec<PointId>,
}

#[derive(Debug, Clone)]
pub struct FracturingB {
    w: usize,
    pts: Vec<Pt>,
    central: Vec<PointId>,
    segment: Vec<PointId>,
    i: usize,
    a: f64,
    a1: f64,
    a2: f64,
    b2: f64,
    b1: f64,
    b: f64,
    c: f64,
    d: f64,
    bins: Vec<Bin>,
    fractures: Vec<Fracture>,
    stray: Vec<PointId>,
    pending: Option<Pending>,
    violations: Vec<String>,
    shortfalls: Vec<String>,
    stats: StrategyStats,
}

impl FracturingB {
    /// `w` defaults to `⌊(6m)^{1/3}⌋ - 1`.
    pub fn new(rules: &Rules, w: Option<usize>) -> Result<Self, StrategyError> {
        require("b:fracturing", rules, GameKind::A, Some(3))?;
        let w = w.unwrap_or_else(|| default_width(rules.m));
        if w == 0 {
            return Err(StrategyError::Contract(
                "fracturing width must be positive".into(),
            ));
        }
        Ok(FracturingB {
            w,
            pts: Vec::new(),
            central: Vec::new(),
            segment: Vec::new(),
            i: 1,
            a: 0.0,
            a1: 0.0,
            a2: 0.0,
            b2: 1.0,
            b1: 1.0,
            b: 1.0,
            c: 0.0,
            d: 1.0,
            bins: Vec::new(),
            fractures: Vec::new(),
            stray: Vec::new(),
            pending: None,
            violations: Vec::new(),
            shortfalls: Vec::new(),
            stats: StrategyStats::default(),
        })
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// Index of the current segment `C_i`.
    pub fn segment_index(&self) -> usize {
        self.i
    }

    /// The central up-run `C`, in play order.
    pub fn central(&self) -> &[PointId] {
        &self.central
    }

    /// The current segment `C_i`.
    pub fn segment(&self) -> &[PointId] {
        &self.segment
    }

    pub fn wastebins(&self) -> Vec<Vec<PointId>> {
        self.bins.iter().map(|b| b.points.clone()).collect()
    }

    pub fn fractures(&self) -> &[Fracture] {
        &self.fractures
    }

    /// Segments that ended up with exactly `z_i - 1` points where
    /// `|C_i| >= z_i` was expected. This happens after an inner fracture
    /// and is harmless: `φ` only needs `|C_i| >= w - i`.
    pub fn shortfalls(&self) -> &[String] {
        &self.shortfalls
    }

    /// The real coordinates B assigned to a point.
    pub fn coordinates(&self, id: PointId) -> Option<(f64, f64)> {
        self.pts.get(id).map(|p| (p.x, p.y))
    }

    fn run_pts(&self, ids: &[PointId]) -> Vec<Pt> {
        let mut run: Vec<Pt> = ids.iter().map(|&id| self.pts[id]).collect();
        run.sort_by(|p, q| p.x.total_cmp(&q.x));
        run
    }

    fn rule(&self, notches: Notches) -> Rule {
        Rule {
            run: self.run_pts(&self.central),
            c: self.c,
            d: self.d,
            notches,
        }
    }

    fn width_left(&self) -> isize {
        self.w as isize - self.i as isize + 1
    }

    fn region(&self, x: f64) -> Region {
        if x < self.a || x > self.b {
            return match self.bins.iter().position(|bin| bin.lo < x && x < bin.hi) {
                Some(j) => Region::Bin(j),
                None => Region::Stray,
            };
        }
        if x < self.a2 {
            Region::Left { outer: x < self.a1 }
        } else if x > self.b2 {
            Region::Right { outer: x > self.b1 }
        } else {
            Region::Central
        }
    }

    fn phi(&self, x: f64, region: Region) -> Option<f64> {
        let n = self.width_left();
        match region {
            Region::Bin(j) => self.bins[j].rule.eval(x),
            Region::Stray => None,
            Region::Central => self.rule(Notches::Central).eval(x),
            Region::Left { .. } => self.rule(Notches::Up(n)).eval(x),
            Region::Right { .. } => self.rule(Notches::Down(n)).eval(x),
        }
    }

    fn violation(&mut self, msg: String) {
        self.violations.push(msg);
    }

    /// Where `φ` is undefined: the midpoint of the `(c, d)` window.
    fn fallback(&mut self, x: f64, region: Region) -> f64 {
        self.violation(format!(
            "phi undefined at x={x} in {region:?} (segment {})",
            self.i
        ));
        self.stats.fallbacks += 1;
        (self.c + self.d) / 2.0
    }

    fn check_segment_size(&mut self) {
        let bound = 2 * z(self.w, self.i) - 1;
        if self.segment.len() > bound {
            let len = self.segment.len();
            self.violation(format!("|C_{}| = {len} exceeds 2z-1 = {bound}", self.i));
        }
    }

    fn fracture(&mut self, q: PointId, left: bool, outer: bool) {
        let qp = self.pts[q];
        let n = self.width_left();
        let cut: Vec<PointId> = self
            .central
            .iter()
            .copied()
            .filter(|&p| {
                let pp = self.pts[p];
                if left {
                    pp.x > qp.x && cmp_pts(pp, qp) == Ordering::Less
                } else {
                    pp.x < qp.x && cmp_pts(pp, qp) == Ordering::Greater
                }
            })
            .collect();
        let (l, r) = if cut.is_empty() {
            // Only reachable once `i > w`, when the new point sits zero
            // notches from C and cuts nothing off.
            self.stats.fallbacks += 1;
            (qp.x, qp.x)
        } else {
            let xs = cut.iter().map(|&p| self.pts[p].x);
            (
                xs.clone().fold(f64::INFINITY, f64::min),
                xs.fold(f64::NEG_INFINITY, f64::max),
            )
        };
        let banked: Vec<PointId> = self
            .segment
            .iter()
            .copied()
            .filter(|&p| {
                if left {
                    self.pts[p].x <= r
                } else {
                    l <= self.pts[p].x
                }
            })
            .collect();
        let rule = self.rule(if left {
            Notches::Up(n)
        } else {
            Notches::Down(n)
        });
        let (lo, hi) = if left { (self.a, l) } else { (r, self.b) };
        self.bins.push(Bin {
            lo,
            hi,
            rule,
            points: vec![q],
        });
        if self.i < self.w {
            let bound = if outer {
                self.w - self.i
            } else {
                z(self.w, self.i) + self.w - self.i
            };
            if banked.len() > bound {
                let len = banked.len();
                self.violation(format!("|B_{}| = {len} exceeds {bound}", self.i));
            }
        }
        if left {
            self.a = l;
            self.a1 = r;
            self.c = qp.y;
        } else {
            self.b1 = l;
            self.b = r;
            self.d = qp.y;
        }
        self.segment.retain(|p| !banked.contains(p));
        self.fractures.push(Fracture {
            j: self.i,
            left,
            outer,
            banked,
        });
        self.i += 1;
    }

    /// Final step of a fracture: move `a''` and `b''` to the current segment.
    fn update(&mut self) {
        let need = z(self.w, self.i) - 1;
        let seg = self.run_pts(&self.segment);
        let s = seg.len();
        // in an up-run sorted by x, NE(p_k) holds the s-1-k points after it
        self.a2 = (0..s)
            .rev()
            .find(|&k| s - 1 - k >= need)
            .map_or(self.a1, |k| seg[k].x);
        self.b2 = (0..s).find(|&k| k >= need).map_or(self.b1, |k| seg[k].x);
        if self.c >= self.d {
            self.violation(format!("c = {} is not below d = {}", self.c, self.d));
        }
        let zi = z(self.w, self.i);
        if self.i <= self.w && (self.a < self.a2 || self.b2 < self.b) && s < zi {
            // An inner fracture right next to the a''-point leaves exactly
            // z_i - 1 points; only fewer than that is an error.
            let msg = format!("|C_{}| = {s} is below z = {zi}", self.i);
            if s + 1 < zi {
                self.violation(msg);
            } else {
                self.shortfalls.push(msg);
            }
        }
    }

    fn check_up_runs(&mut self) {
        let mut central = self.run_pts(&self.central);
        let mut bins: Vec<Pt> = self
            .bins
            .iter()
            .flat_map(|b| b.points.iter().map(|&p| self.pts[p]))
            .collect();
        bins.sort_by(|p, q| p.x.total_cmp(&q.x));
        for (name, run) in [("central run", &mut central), ("wastebins", &mut bins)] {
            if run
                .windows(2)
                .any(|w| cmp_pts(w[0], w[1]) != Ordering::Less)
            {
                self.violations.push(format!("{name} is not an up-run"));
            }
        }
    }
}

impl BStrategy for FracturingB {
    fn id(&self) -> String {
        format!("b:fracturing({})", self.w)
    }

    fn reply(&mut self, board: &Board, column: usize) -> Result<usize, StrategyError> {
        if board.len() != self.pts.len() {
            return Err(StrategyError::Contract(format!(
                "fracturing tracks {} points but the board has {}",
                self.pts.len(),
                board.len()
            )));
        }
        let xat = |pos: usize| self.pts[board.id_at(pos)].x;
        let left = if column == 0 { 0.0 } else { xat(column - 1) };
        let right = if column == board.len() {
            1.0
        } else {
            xat(column)
        };
        let x = (left + right) / 2.0;
        let region = self.region(x);
        let y = match self.phi(x, region) {
            Some(y) => y,
            None => self.fallback(x, region),
        };
        let at = Pt { x, y };
        self.pending = Some(Pending { at, region });
        Ok(self
            .pts
            .iter()
            .filter(|&&p| cmp_pts(p, at) == Ordering::Less)
            .count())
    }

    fn observe(&mut self, _board: &Board, point: PointId) -> Result<(), StrategyError> {
        let Pending { at, region } = self.pending.take().ok_or_else(|| {
            StrategyError::Contract("fracturing observed a point it did not place".into())
        })?;
        if point != self.pts.len() {
            return Err(StrategyError::Contract(format!(
                "unexpected point id {point}"
            )));
        }
        self.pts.push(at);
        match region {
            Region::Bin(j) => self.bins[j].points.push(point),
            Region::Stray => {
                self.violation(format!("x={} lies in no wastebin", at.x));
                self.stray.push(point);
            }
            Region::Central => {
                self.central.push(point);
                self.segment.push(point);
                self.check_segment_size();
                self.update();
            }
            Region::Left { outer } => {
                self.fracture(point, true, outer);
                self.update();
            }
            Region::Right { outer } => {
                self.fracture(point, false, outer);
                self.update();
            }
        }
        self.check_up_runs();
        Ok(())
    }

    fn clone_box(&self) -> Box<dyn BStrategy> {
        Box::new(self.clone())
    }

    fn stats(&self) -> StrategyStats {
        self.stats
    }

    fn violations(&self) -> Vec<String> {
        self.violations.clone()
    }

    fn notes(&self) -> Vec<String> {
        self.shortfalls.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Move;

    fn play(b: &mut FracturingB, board: &mut Board, column: usize) -> usize {
        let row = b.reply(board, column).unwrap();
        let id = board.play(Move { column, reply: row }).unwrap();
        if board.terminal().is_none() {
            b.observe(board, id).unwrap();
        }
        row
    }

    #[test]
    fn widths_and_guarantees() {
        assert_eq!(default_width(5), 2);
        assert_eq!(fracturing_guarantee(5), 7);
        assert_eq!(default_width(9), 2);
        assert_eq!(fracturing_guarantee(9), 11);
        assert_eq!(default_width(27), 4);
        assert_eq!(fracturing_guarantee(27), 31);
        assert_eq!(default_width(1), 1);
        assert!(width_admissible(27, 4));
        assert!(!width_admissible(27, 5));
        for m in 3..200 {
            assert!(fracturing_guarantee(m) as f64 > m as f64 + (6.0 * m as f64).cbrt() - 2.0);
        }
        assert_eq!(
            (1..5).map(|j| z(4, j)).collect::<Vec<_>>(),
            vec![7, 4, 2, 1]
        );
    }

    #[test]
    fn first_points_extend_the_central_run() {
        let rules = Rules::a(6, 3);
        let mut b = FracturingB::new(&rules, None).unwrap();
        let mut board = Board::new(rules);
        assert_eq!(play(&mut b, &mut board, 0), 0);
        assert_eq!(play(&mut b, &mut board, 1), 1);
        assert_eq!(b.central().len(), 2);
        assert!(b.wastebins().is_empty());
    }

    #[test]
    fn far_left_move_fractures() {
        let rules = Rules::a(6, 3);
        let mut b = FracturingB::new(&rules, None).unwrap();
        let mut board = Board::new(rules);
        // the third point goes between the first two; |C_1| = 2z_1 - 1 = 3
        for c in [0, 1, 1] {
            play(&mut b, &mut board, c);
        }
        assert_eq!(b.central().len(), 3);
        play(&mut b, &mut board, 0);
        assert_eq!(b.wastebins().len(), 1);
        assert_eq!(b.segment_index(), 2);
        let f = &b.fractures()[0];
        assert!(f.left && !f.outer);
        assert!(f.banked.len() <= z(2, 1) + 1);
        assert!(b.violations().is_empty(), "{:?}", b.violations());
        assert!(board.ranked().longest_down_run() <= 2);
    }

    #[test]
    fn rejects_other_games() {
        assert!(FracturingB::new(&Rules::a(5, 4), None).is_err());
        assert!(FracturingB::new(&Rules::b(5, 3), None).is_err());
        assert!(FracturingB::new(&Rules::a(5, 3), Some(0)).is_err());
    }
}
