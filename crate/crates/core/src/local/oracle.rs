use std::collections::BTreeMap;

use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};

use super::ranks::{PermutationProvider, RankKey, RankMode};
use super::view::NeighborView;
use crate::error::{Error, Result};
use crate::port_greedy::{EdgeCopy, Side};

/// Counters for the recursive membership computations of a session.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct TrailStats {
    /// Membership evaluations, memo hits included.
    pub eo_calls: u64,
    /// Vertex oracle invocations in this window.
    pub vo_calls: u64,
    /// Deepest evaluation stack seen.
    pub max_depth: usize,
    /// Evaluations per copy, when enabled.
    pub per_copy: Option<BTreeMap<EdgeCopy, u64>>,
}

impl TrailStats {
    pub fn mean_calls_per_vo(&self) -> f64 {
        if self.vo_calls == 0 {
            0.0
        } else {
            self.eo_calls as f64 / self.vo_calls as f64
        }
    }
}

/// Lower-ranked entries of one side list, skipping copies of the frame's edge.
#[derive(Debug, Clone, Copy)]
struct Cursor {
    x: usize,
    side: Side,
    idx: usize,
}

#[derive(Debug)]
struct Frame {
    key: RankKey,
    cursors: [Option<Cursor>; 2],
    same_edge: bool,
    /// Same-edge copies below `same_bound`, in rank order; the first `same_pos` are consumed.
    same: Vec<RankKey>,
    same_pos: usize,
    same_bound: Option<RankKey>,
}

enum Child {
    /// A copy whose conflicts at the scanned endpoint are already cleared.
    Side {
        key: RankKey,
        far: usize,
    },
    Full(RankKey),
}

/// Local membership oracle for the greedy MIS over edge copies.
///
/// A copy is in the MIS iff none of its lower-ranked conflicting copies is.
/// Membership is computed by scanning lower-ranked conflicts in rank order
/// and stopping at the first member, with an explicit stack and a memo.
pub struct OracleSession<'a> {
    provider: PermutationProvider<'a>,
    memo: FxHashMap<EdgeCopy, bool>,
    use_memo: bool,
    stats: TrailStats,
}

impl<'a> OracleSession<'a> {
    pub fn new(view: &'a dyn NeighborView, k: usize, mode: RankMode, seed: u64) -> Result<Self> {
        Ok(OracleSession {
            provider: PermutationProvider::new(view, k, mode, seed)?,
            memo: FxHashMap::default(),
            use_memo: true,
            stats: TrailStats::default(),
        })
    }

    /// Disables result memoization. Answers are unchanged; only cost grows.
    pub fn without_memo(mut self) -> Self {
        self.use_memo = false;
        self
    }

    /// Starts recording per-copy evaluation counts.
    pub fn with_per_copy_counts(mut self) -> Self {
        self.stats.per_copy = Some(BTreeMap::new());
        self
    }

    pub fn provider(&mut self) -> &mut PermutationProvider<'a> {
        &mut self.provider
    }

    pub fn k(&self) -> usize {
        self.provider.k()
    }

    pub fn trail_report(&self) -> TrailStats {
        self.stats.clone()
    }

    /// Clears the counters, keeping memoized answers.
    pub fn reset_trail(&mut self) {
        let per_copy = self.stats.per_copy.as_ref().map(|_| BTreeMap::new());
        self.stats = TrailStats {
            per_copy,
            ..TrailStats::default()
        };
    }

    fn key_of(&mut self, copy: EdgeCopy) -> RankKey {
        RankKey {
            rank: self.provider.rank_of(&copy),
            copy,
        }
    }

    fn record(&mut self, copy: &EdgeCopy) {
        self.stats.eo_calls += 1;
        if let Some(map) = &mut self.stats.per_copy {
            *map.entry(*copy).or_default() += 1;
        }
    }

    fn remember(&mut self, copy: EdgeCopy, value: bool) {
        if self.use_memo {
            self.memo.insert(copy, value);
        }
    }

    fn recalled(&self, copy: &EdgeCopy) -> Option<bool> {
        if self.use_memo {
            self.memo.get(copy).copied()
        } else {
            None
        }
    }

    fn cursor(&self, key: &RankKey, x: usize) -> Option<Cursor> {
        // At a degree-one endpoint the list only holds copies of the same edge.
        (self.provider.view().degree(x) > 1).then_some(Cursor {
            x,
            side: key.copy.side_at(x),
            idx: 0,
        })
    }

    fn side_frame(&mut self, key: RankKey, far: usize, same_edge: bool) -> Frame {
        Frame {
            key,
            cursors: [self.cursor(&key, far), None],
            same_edge,
            same: Vec::new(),
            same_pos: 0,
            same_bound: None,
        }
    }

    fn full_frame(&mut self, key: RankKey) -> Frame {
        Frame {
            key,
            cursors: [self.cursor(&key, key.copy.lo()), self.cursor(&key, key.copy.hi())],
            same_edge: true,
            same: Vec::new(),
            same_pos: 0,
            same_bound: None,
        }
    }

    fn head(&mut self, frame: &mut Frame, which: usize) -> Option<RankKey> {
        let cur = frame.cursors[which].as_mut()?;
        loop {
            let e = self.provider.list_entry(cur.x, cur.side, cur.idx, Some(&frame.key))?;
            if e.copy.same_edge(&frame.key.copy) {
                cur.idx += 1;
                continue;
            }
            return Some(e);
        }
    }

    fn next_child(&mut self, frame: &mut Frame) -> Option<Child> {
        let heads = [self.head(frame, 0), self.head(frame, 1)];
        let mut best: Option<(RankKey, usize)> = None;
        for (i, h) in heads.iter().enumerate() {
            if let Some(h) = h {
                if best.is_none_or(|(b, _)| *h < b) {
                    best = Some((*h, i));
                }
            }
        }
        if frame.same_edge {
            // Same-edge copies are only resolved up to the lowest pending port conflict.
            let limit = best.map_or(frame.key, |(b, _)| b);
            if frame.same_bound.is_none_or(|sb| sb < limit) {
                self.provider.same_edge_below(&frame.key, &limit, &mut frame.same);
                frame.same_bound = Some(limit);
            }
            if let Some(&s) = frame.same.get(frame.same_pos) {
                if s < limit {
                    frame.same_pos += 1;
                    return Some(Child::Full(s));
                }
            }
        }
        let (key, i) = best?;
        let cur = frame.cursors[i].as_mut().unwrap();
        cur.idx += 1;
        let far = key.copy.other(cur.x);
        Some(Child::Side { key, far })
    }

    /// Runs a membership computation rooted at `root` to completion.
    fn evaluate(&mut self, root: Frame) -> bool {
        let mut stack = vec![root];
        self.stats.max_depth = self.stats.max_depth.max(1);
        let mut returned: Option<bool> = None;
        loop {
            if let Some(child_in) = returned.take() {
                if child_in {
                    let done = stack.pop().unwrap();
                    self.remember(done.key.copy, false);
                    if stack.is_empty() {
                        return false;
                    }
                    returned = Some(false);
                    continue;
                }
            }
            let mut frame = stack.pop().unwrap();
            let child = self.next_child(&mut frame);
            let Some(child) = child else {
                self.remember(frame.key.copy, true);
                if stack.is_empty() {
                    return true;
                }
                returned = Some(true);
                continue;
            };
            let parent_key = frame.key;
            stack.push(frame);
            let child_key = match &child {
                Child::Side { key, .. } | Child::Full(key) => *key,
            };
            debug_assert!(child_key < parent_key, "trail ranks must decrease");
            self.record(&child_key.copy);
            if let Some(v) = self.recalled(&child_key.copy) {
                returned = Some(v);
                continue;
            }
            let next = match child {
                Child::Side { key, far } => self.side_frame(key, far, true),
                Child::Full(key) => self.full_frame(key),
            };
            stack.push(next);
            self.stats.max_depth = self.stats.max_depth.max(stack.len());
        }
    }

    /// Whether `copy` belongs to the greedy MIS. `via` must be an endpoint.
    pub fn edge_oracle(&mut self, copy: EdgeCopy, via: usize) -> Result<bool> {
        if !copy.has_endpoint(via) {
            return Err(Error::InvalidParameter(format!("{via} is not an endpoint of {copy}")));
        }
        if copy.kind.code(self.k()) >= self.k() + 2 {
            return Err(Error::InvalidParameter(format!("{copy} has a replica index above K")));
        }
        self.record(&copy);
        if let Some(v) = self.recalled(&copy) {
            return Ok(v);
        }
        let key = self.key_of(copy);
        let frame = self.full_frame(key);
        Ok(self.evaluate(frame))
    }

    /// Degree of `v` in the solution, scanning incident copies in rank order
    /// and stopping once both ports are taken.
    pub fn vertex_oracle(&mut self, v: usize) -> usize {
        self.stats.vo_calls += 1;
        let mut occupied = [false; 2];
        let mut taken: Vec<(usize, usize)> = Vec::with_capacity(2);
        let mut idx = [0usize; 2];
        loop {
            let heads = [Side::Zero, Side::One].map(|s| {
                if occupied[s.index()] {
                    None
                } else {
                    self.provider.list_entry(v, s, idx[s.index()], None)
                }
            });
            let pick = match heads {
                [Some(a), Some(b)] => usize::from(b < a),
                [Some(_), None] => 0,
                [None, Some(_)] => 1,
                [None, None] => break,
            };
            idx[pick] += 1;
            let g = heads[pick].unwrap();
            if taken.contains(&g.copy.edge()) {
                continue;
            }
            self.record(&g.copy);
            let member = match self.recalled(&g.copy) {
                Some(m) => m,
                None => {
                    // Lower-ranked copies at v, same-edge ones included, are settled.
                    let frame = self.side_frame(g, g.copy.other(v), false);
                    self.evaluate(frame)
                }
            };
            if member {
                occupied[pick] = true;
                taken.push(g.copy.edge());
            }
        }
        occupied.iter().filter(|&&o| o).count()
    }

    /// Degree of `v` in the solution by evaluating every incident copy.
    pub fn vertex_oracle_exhaustive(&mut self, v: usize) -> usize {
        self.stats.vo_calls += 1;
        let view = self.provider.view();
        let mut count = 0;
        for slot in 0..view.degree(v) {
            let w = self.provider.neighbor(v, slot);
            for c in EdgeCopy::all_of(v, w, self.k()).collect::<Vec<_>>() {
                if self.edge_oracle(c, v).expect("copy is incident to v") {
                    count += 1;
                }
            }
        }
        count
    }

    /// The solution copy occupying port `side` of `v`, if any.
    pub fn port_occupant(&mut self, v: usize, side: Side) -> Option<EdgeCopy> {
        let mut idx = 0;
        while let Some(g) = self.provider.list_entry(v, side, idx, None) {
            idx += 1;
            self.record(&g.copy);
            let member = match self.recalled(&g.copy) {
                Some(m) => m,
                None => {
                    let frame = self.side_frame(g, g.copy.other(v), true);
                    self.evaluate(frame)
                }
            };
            if member {
                return Some(g.copy);
            }
        }
        None
    }
}
