//! Barbs and the w-Barb mode.
//!
//! A barb is a 2-point down-run (the spikes `w`, `z`) with an up-run below
//! and left of `z` (the bottom wire `U`) and an up-run above and right of `w`
//! (the top wire `V`), arranged so that
//! `x(w) < max x(U) < min x(V) < x(z)` and
//! `max y(U) < y(z) < y(w) < min y(V)`. Playing between the wires forces B
//! either to lengthen a wire or to finish a 3-down-run, so an `(s,t)`-barb
//! ends an `A(m,3)` game within `m - s - t` more turns.
//!
//! All geometry is evaluated in a [`Frame`], so the same code serves a
//! configuration and its half-turn image.

use crate::game::{Board, PointId};
use crate::strategy::{Frame, StrategyError};

/// A barb, possibly with an empty wire (a half-barb).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barb {
    pub w: PointId,
    pub z: PointId,
    pub u: Vec<PointId>,
    pub v: Vec<PointId>,
}

impl Barb {
    fn members(&self) -> Vec<PointId> {
        let mut all = vec![self.w, self.z];
        all.extend(&self.u);
        all.extend(&self.v);
        all
    }

    /// Check the defining inequalities in a frame. Conditions involving an
    /// empty wire are dropped.
    pub(crate) fn check_in(&self, frame: Frame, board: &Board) -> Result<(), String> {
        let x = |p| frame.x(board, p);
        let y = |p| frame.y(board, p);
        if !(x(self.w) < x(self.z) && y(self.w) > y(self.z)) {
            return Err("spikes do not form a down-run".into());
        }
        for (name, wire) in [("bottom", &self.u), ("top", &self.v)] {
            let mut sorted = wire.clone();
            frame.sort_by_x(board, &mut sorted);
            if sorted.windows(2).any(|p| y(p[0]) >= y(p[1])) {
                return Err(format!("{name} wire is not an up-run"));
            }
        }
        if let Some(ux) = self.u.iter().map(|&p| x(p)).max() {
            let uy = self.u.iter().map(|&p| y(p)).max().unwrap_or(0);
            if !(x(self.w) < ux && ux < x(self.z) && uy < y(self.z)) {
                return Err("bottom wire out of place".into());
            }
        }
        if let Some(vx) = self.v.iter().map(|&p| x(p)).min() {
            let vy = self.v.iter().map(|&p| y(p)).min().unwrap_or(0);
            if !(x(self.w) < vx && vx < x(self.z) && y(self.w) < vy) {
                return Err("top wire out of place".into());
            }
        }
        if let (Some(ux), Some(vx)) = (
            self.u.iter().map(|&p| x(p)).max(),
            self.v.iter().map(|&p| x(p)).min(),
        ) {
            if ux >= vx {
                return Err("wires overlap".into());
            }
        }
        Ok(())
    }

    /// Check the barb in the plain orientation.
    pub fn check(&self, board: &Board) -> Result<(), String> {
        self.check_in(Frame::PLAIN, board)
    }

    /// The column between the wires: right of the last point of `U ∪ {w}`.
    pub(crate) fn column_in(&self, frame: Frame, board: &Board) -> usize {
        let a = self
            .u
            .iter()
            .copied()
            .chain([self.w])
            .max_by_key(|&p| frame.x(board, p));
        frame.column_right_of(board, a)
    }

    pub fn column(&self, board: &Board) -> usize {
        self.column_in(Frame::PLAIN, board)
    }

    /// File a reply to the barb column under the wire it extends. Returns
    /// false when the point is in neither row next to the spikes (only
    /// possible when it ended the game).
    pub(crate) fn observe_in(&mut self, frame: Frame, board: &Board, q: PointId) -> bool {
        let members = self.members();
        let yq = frame.y(board, q);
        let (yw, yz) = (frame.y(board, self.w), frame.y(board, self.z));
        if yq > yw && frame.rows_between(board, &members, yw, yq) == 0 {
            self.v.push(q);
            true
        } else if yq < yz && frame.rows_between(board, &members, yq, yz) == 0 {
            self.u.push(q);
            true
        } else {
            false
        }
    }

    pub fn observe(&mut self, board: &Board, q: PointId) -> bool {
        self.observe_in(Frame::PLAIN, board, q)
    }
}

/// One step-down level of the w-Barb mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BarbLevel {
    pub r: PointId,
    pub q: PointId,
    pub v: Vec<PointId>,
    pub r_hat: Option<PointId>,
}

/// Where a w-Barb mode stands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WBarbEvent {
    /// The reply joined the top wire of the current half-barb.
    Extended,
    /// The reply was far below: a new half-barb one level down.
    SteppedDown { level: usize },
    /// A full barb was formed; the mode now plays it out.
    BarbFormed,
    /// A reply while playing the barb, filed under a wire.
    Wired,
}

/// The w-Barb mode.
///
/// Entered with a half-barb `{r_1, q_1} ∪ V_1` and the up-run `U` of points
/// below and left of `r_1`. Points outside the sub-game (saved or wasted by
/// an earlier mode) are passed as `excluded` and ignored by every quadrant
/// query.
#[derive(Debug, Clone)]
pub struct WBarbMode {
    frame: Frame,
    w: usize,
    step_down_by_sw: bool,
    excluded: Vec<PointId>,
    u: Vec<PointId>,
    levels: Vec<BarbLevel>,
    lost: Vec<PointId>,
    barb: Option<Barb>,
}

/// `⌊sqrt(max(2u - 15/4, 0)) + 3/2⌋ + 1`: the least `w` the w-Barb mode's
/// analysis accepts for a bottom up-run of `u` points.
pub fn min_barb_width(u: usize) -> usize {
    let x = (8 * u).saturating_sub(15);
    (x.isqrt() + 3) / 2 + 1
}

impl WBarbMode {
    /// Enter the mode. Fails unless `w ≥ min_barb_width(|U|)`.
    pub fn new(
        board: &Board,
        u: Vec<PointId>,
        r1: PointId,
        q1: PointId,
        v1: Vec<PointId>,
        w: usize,
    ) -> Result<Self, StrategyError> {
        if w < min_barb_width(u.len()) {
            return Err(StrategyError::Contract(format!(
                "w-barb: w = {w} is below {} for |U| = {}",
                min_barb_width(u.len()),
                u.len()
            )));
        }
        Self::unchecked(board, Frame::PLAIN, Vec::new(), u, r1, q1, v1, w)
    }

    /// Enter the mode without the lower bound on `w`.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn unchecked(
        board: &Board,
        frame: Frame,
        excluded: Vec<PointId>,
        u: Vec<PointId>,
        r1: PointId,
        q1: PointId,
        v1: Vec<PointId>,
        w: usize,
    ) -> Result<Self, StrategyError> {
        let mut mode = WBarbMode {
            frame,
            w,
            step_down_by_sw: false,
            excluded,
            u,
            levels: Vec::new(),
            lost: Vec::new(),
            barb: None,
        };
        let nw = mode.nw(board, q1);
        let r_hat = nw
            .iter()
            .copied()
            .filter(|&p| p != r1)
            .min_by_key(|&p| frame.y(board, p));
        let first = Barb {
            w: r1,
            z: q1,
            u: Vec::new(),
            v: v1.clone(),
        };
        first.check_in(frame, board).map_err(|e| {
            StrategyError::Contract(format!("w-barb: entry half-barb invalid: {e}"))
        })?;
        mode.levels.push(BarbLevel {
            r: r1,
            q: q1,
            v: v1,
            r_hat,
        });
        Ok(mode)
    }

    /// Compare the step-down distance with `|SW(q)|` instead of `w - i`.
    pub fn with_sw_step_down(mut self, on: bool) -> Self {
        self.step_down_by_sw = on;
        self
    }

    pub fn w(&self) -> usize {
        self.w
    }

    /// Index `i` of the current half-barb (1-based).
    pub fn level(&self) -> usize {
        self.levels.len()
    }

    pub fn levels(&self) -> &[BarbLevel] {
        &self.levels
    }

    pub fn u(&self) -> &[PointId] {
        &self.u
    }

    /// Points given up so far: spikes of abandoned levels and the points
    /// above-left of the reply that formed the barb.
    pub fn lost(&self) -> &[PointId] {
        &self.lost
    }

    pub fn barb(&self) -> Option<&Barb> {
        self.barb.as_ref()
    }

    fn universe(&self, board: &Board) -> Vec<PointId> {
        board
            .ids()
            .iter()
            .copied()
            .filter(|p| !self.excluded.contains(p))
            .collect()
    }

    fn nw(&self, board: &Board, p: PointId) -> Vec<PointId> {
        self.frame.nw(board, p, &self.universe(board))
    }

    fn sw(&self, board: &Board, p: PointId) -> Vec<PointId> {
        self.frame.sw(board, p, &self.universe(board))
    }

    pub fn next_column(&self, board: &Board) -> usize {
        match &self.barb {
            Some(barb) => barb.column_in(self.frame, board),
            None => {
                let level = self.levels.last().expect("at least one level");
                self.frame.column_right_of(board, Some(level.r))
            }
        }
    }

    pub fn observe(&mut self, board: &Board, q: PointId) -> Result<WBarbEvent, StrategyError> {
        let frame = self.frame;
        if let Some(barb) = &mut self.barb {
            return if barb.observe_in(frame, board, q) {
                Ok(WBarbEvent::Wired)
            } else {
                Err(StrategyError::Contract(format!(
                    "barb: reply {q} is next to neither spike"
                )))
            };
        }
        let i = self.levels.len();
        let level = self.levels.last().expect("at least one level").clone();
        let (yq, yr) = (frame.y(board, q), frame.y(board, level.r));
        let mut half: Vec<PointId> = vec![level.r, level.q];
        half.extend(&level.v);
        if yq > yr && frame.rows_between(board, &half, yr, yq) == 0 {
            let last = self.levels.last_mut().expect("at least one level");
            last.v.push(q);
            last.r_hat = Some(q);
            return Ok(WBarbEvent::Extended);
        }
        if yq > yr {
            return Err(StrategyError::Contract(format!(
                "w-barb: reply {q} above the top wire"
            )));
        }
        let d = frame.rows_between(board, &self.u, yq, yr);
        let step_down = if self.step_down_by_sw {
            d > 0 && d >= self.sw(board, q).len()
        } else {
            d > 0 && d + i >= self.w
        };
        if step_down {
            let nw = self.nw(board, q);
            let r = frame.lowest(board, &nw).ok_or_else(|| {
                StrategyError::Contract("w-barb: nothing above-left of the reply".into())
            })?;
            let r_hat = nw
                .iter()
                .copied()
                .filter(|&p| p != r)
                .min_by_key(|&p| frame.y(board, p));
            let mut v = level.v.clone();
            v.extend(
                nw.iter()
                    .copied()
                    .filter(|&p| p != r && !level.v.contains(&p)),
            );
            self.lost.push(level.q);
            self.levels.push(BarbLevel { r, q, v, r_hat });
            return Ok(WBarbEvent::SteppedDown { level: i + 1 });
        }
        let nw = self.nw(board, q);
        for p in nw {
            if !self.lost.contains(&p) {
                self.lost.push(p);
            }
        }
        let mut u = self.sw(board, q);
        u.push(q);
        let barb = Barb {
            w: level.r,
            z: level.q,
            u,
            v: level.v.clone(),
        };
        barb.check_in(frame, board)
            .map_err(|e| StrategyError::Contract(format!("w-barb: formed barb invalid: {e}")))?;
        self.barb = Some(barb);
        Ok(WBarbEvent::BarbFormed)
    }
}
