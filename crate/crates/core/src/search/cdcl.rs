//! A small incremental CDCL SAT solver with a fixed decision order.
//!
//! Decisions follow a caller-supplied static variable order and phase, which
//! makes the sequence of models reproducible. Clauses learned from conflicts
//! are kept across calls to [`Cdcl::solve`].

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Lit(u32);

impl Lit {
    pub fn new(var: usize, positive: bool) -> Lit {
        Lit((var as u32) << 1 | u32::from(!positive))
    }

    pub fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    pub fn is_positive(self) -> bool {
        self.0 & 1 == 0
    }

    fn negate(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

const UNASSIGNED: i8 = -1;

pub struct Cdcl {
    clauses: Vec<Vec<Lit>>,
    /// `watches[l]`: clauses watching `¬l`, visited when `l` becomes true.
    watches: Vec<Vec<usize>>,
    assign: Vec<i8>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    order: Vec<usize>,
    phase: Vec<bool>,
    seen: Vec<bool>,
    ok: bool,
    saving: bool,
}

impl Cdcl {
    /// `order` lists every variable once; `phase[v]` is the value tried first.
    pub fn new(num_vars: usize, order: Vec<usize>, phase: Vec<bool>) -> Cdcl {
        assert_eq!(order.len(), num_vars);
        assert_eq!(phase.len(), num_vars);
        Cdcl {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assign: vec![UNASSIGNED; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            order,
            phase,
            seen: vec![false; num_vars],
            ok: true,
            saving: false,
        }
    }

    /// With phase saving, a decision reuses the variable's last value.
    pub fn set_phase_saving(&mut self, on: bool) {
        self.saving = on;
    }

    pub fn num_vars(&self) -> usize {
        self.assign.len()
    }

    fn value(&self, l: Lit) -> i8 {
        match self.assign[l.var()] {
            UNASSIGNED => UNASSIGNED,
            v => (v == 1) as i8 ^ (!l.is_positive()) as i8,
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = l.var();
        self.assign[v] = l.is_positive() as i8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn cancel_until(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let keep = self.trail_lim[lvl];
        for &l in &self.trail[keep..] {
            if self.saving {
                self.phase[l.var()] = l.is_positive();
            }
            self.assign[l.var()] = UNASSIGNED;
            self.reason[l.var()] = None;
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(lvl);
        self.qhead = self.qhead.min(keep);
    }

    fn attach(&mut self, clause: Vec<Lit>) -> usize {
        let ci = self.clauses.len();
        self.watches[clause[0].negate().index()].push(ci);
        self.watches[clause[1].negate().index()].push(ci);
        self.clauses.push(clause);
        ci
    }

    /// Adds a permanent clause. Returns `false` once the formula is unsatisfiable.
    pub fn add_clause(&mut self, lits: &[Lit]) -> bool {
        if !self.ok {
            return false;
        }
        self.cancel_until(0);
        let mut clause: Vec<Lit> = Vec::with_capacity(lits.len());
        for &l in lits {
            assert!(l.var() < self.num_vars(), "literal over unknown variable");
            match self.value(l) {
                1 => return true,
                0 => continue,
                _ => {}
            }
            if clause.contains(&l.negate()) {
                return true;
            }
            if !clause.contains(&l) {
                clause.push(l);
            }
        }
        match clause.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(clause[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(clause);
            }
        }
        self.ok
    }

    /// Unit propagation; returns a conflicting clause index.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            // Clauses watching ¬p as one of their first two literals.
            let watchers = std::mem::take(&mut self.watches[p.index()]);
            let mut kept = Vec::with_capacity(watchers.len());
            let mut conflict = None;
            let false_lit = p.negate();
            let mut iter = watchers.into_iter();
            for ci in iter.by_ref() {
                if self.clauses[ci][0] == false_lit {
                    self.clauses[ci].swap(0, 1);
                }
                let first = self.clauses[ci][0];
                if self.value(first) == 1 {
                    kept.push(ci);
                    continue;
                }
                let len = self.clauses[ci].len();
                let mut moved = false;
                for k in 2..len {
                    let l = self.clauses[ci][k];
                    if self.value(l) != 0 {
                        self.clauses[ci].swap(1, k);
                        self.watches[l.negate().index()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                kept.push(ci);
                if self.value(first) == 0 {
                    conflict = Some(ci);
                    break;
                }
                self.enqueue(first, Some(ci));
            }
            kept.extend(iter);
            self.watches[p.index()].extend(kept);
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    /// First-UIP conflict analysis: learned clause (asserting literal first)
    /// and backjump level.
    fn analyze(&mut self, mut confl: usize) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut pending = 0usize;
        let mut idx = self.trail.len();
        let current = self.decision_level();
        let mut p: Option<Lit> = None;
        loop {
            let start = usize::from(p.is_some());
            for k in start..self.clauses[confl].len() {
                let q = self.clauses[confl][k];
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] >= current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var()] {
                    break;
                }
            }
            let lit = self.trail[idx];
            self.seen[lit.var()] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = lit.negate();
                break;
            }
            p = Some(lit);
            confl = self.reason[lit.var()].expect("implied literal has a reason");
            // The reason clause has `lit` first after propagation.
            debug_assert_eq!(self.clauses[confl][0], lit);
        }
        for l in &learnt[1..] {
            self.seen[l.var()] = false;
        }
        let bt = if learnt.len() == 1 {
            0
        } else {
            let (mut best, mut lvl) = (1, self.level[learnt[1].var()]);
            for (k, l) in learnt.iter().enumerate().skip(2) {
                if self.level[l.var()] > lvl {
                    best = k;
                    lvl = self.level[l.var()];
                }
            }
            learnt.swap(1, best);
            lvl
        };
        (learnt, bt)
    }

    /// Finds a model, or `None` if the clauses are unsatisfiable.
    pub fn solve(&mut self) -> Option<Vec<bool>> {
        if !self.ok {
            return None;
        }
        self.cancel_until(0);
        if self.propagate().is_some() {
            self.ok = false;
            return None;
        }
        loop {
            if let Some(confl) = self.propagate() {
                if self.decision_level() == 0 {
                    self.ok = false;
                    return None;
                }
                let (learnt, bt) = self.analyze(confl);
                self.cancel_until(bt);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let first = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(first, Some(ci));
                }
                continue;
            }
            let next = self.order.iter().copied().find(|&v| self.assign[v] == UNASSIGNED);
            match next {
                None => {
                    let model = self.assign.iter().map(|&a| a == 1).collect();
                    self.cancel_until(0);
                    return Some(model);
                }
                Some(v) => {
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(Lit::new(v, self.phase[v]), None);
                }
            }
        }
    }
}
