use super::{MultiTapeAutomaton, NONE};

/// Refinable partition of `0..n` (elements grouped contiguously per block).
struct Partition {
    elems: Vec<u32>,
    loc: Vec<u32>,
    block_of: Vec<u32>,
    start: Vec<u32>,
    end: Vec<u32>,
    marked: Vec<u32>,
}

impl Partition {
    fn new(n: usize, initial: &[u32]) -> Partition {
        let blocks = initial.iter().map(|&b| b as usize + 1).max().unwrap_or(0);
        let mut elems: Vec<u32> = (0..n as u32).collect();
        elems.sort_by_key(|&s| initial[s as usize]);
        let mut loc = vec![0; n];
        for (i, &s) in elems.iter().enumerate() {
            loc[s as usize] = i as u32;
        }
        let mut end = vec![0u32; blocks];
        for &b in initial {
            end[b as usize] += 1;
        }
        for b in 1..blocks {
            end[b] += end[b - 1];
        }
        let start = (0..blocks).map(|b| if b == 0 { 0 } else { end[b - 1] }).collect();
        Partition { elems, loc, block_of: initial.to_vec(), start, end, marked: vec![0; blocks] }
    }

    fn blocks(&self) -> usize {
        self.start.len()
    }

    fn size(&self, b: usize) -> usize {
        (self.end[b] - self.start[b]) as usize
    }

    fn mark(&mut self, s: u32) {
        let b = self.block_of[s as usize] as usize;
        let pos = self.loc[s as usize];
        let target = self.start[b] + self.marked[b];
        if pos < target {
            return;
        }
        let other = self.elems[target as usize];
        self.elems.swap(pos as usize, target as usize);
        self.loc[s as usize] = target;
        self.loc[other as usize] = pos;
        self.marked[b] += 1;
    }

    /// Splits block `b` into its marked prefix (new block) and the rest.
    fn split(&mut self, b: usize) -> Option<usize> {
        let m = self.marked[b];
        self.marked[b] = 0;
        if m == 0 || m as usize == self.size(b) {
            return None;
        }
        let nb = self.start.len();
        let s = self.start[b];
        self.start.push(s);
        self.end.push(s + m);
        self.marked.push(0);
        self.start[b] = s + m;
        for i in s..s + m {
            self.block_of[self.elems[i as usize] as usize] = nb as u32;
        }
        Some(nb)
    }
}

impl MultiTapeAutomaton {
    /// Canonical minimal automaton: trimmed, Hopcroft-reduced, without a sink,
    /// states numbered in breadth-first order from the initial state.
    pub fn minimize(&self) -> Self {
        let k = self.alphabet.size();
        // restrict to reachable states and complete with a sink
        let reach = self.reachable();
        let mut old_to_new = vec![NONE; self.states()];
        let mut kept = Vec::new();
        for s in 0..self.states() {
            if reach[s] {
                old_to_new[s] = kept.len() as u32;
                kept.push(s as u32);
            }
        }
        let sink = kept.len() as u32;
        let n = kept.len() + 1;
        let mut delta = Vec::with_capacity(n * k);
        for &s in &kept {
            delta.extend(self.row(s).iter().map(|&t| if t == NONE { sink } else { old_to_new[t as usize] }));
        }
        delta.extend(std::iter::repeat_n(sink, k));
        let mut finals: Vec<bool> = kept.iter().map(|&s| self.is_final(s)).collect();
        finals.push(false);

        let class = hopcroft(n, k, &delta, &finals);

        // quotient, then drop classes that cannot reach a final state
        let classes = class.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
        let mut qdelta = vec![NONE; classes * k];
        let mut qfinals = vec![false; classes];
        for s in 0..n {
            let c = class[s] as usize;
            qfinals[c] = finals[s];
            for l in 0..k {
                qdelta[c * k + l] = class[delta[s * k + l] as usize];
            }
        }
        let quotient = Self::from_table(
            self.base,
            self.alphabet,
            self.direction,
            class[old_to_new[self.initial as usize] as usize],
            qfinals,
            qdelta,
            self.padded,
        );
        let live = quotient.coreachable();
        let mut out = quotient.renumber(&live);
        out.name.clone_from(&self.name);
        out
    }

    /// Breadth-first renumbering over the states in `keep`; transitions into
    /// other states are dropped. An initial state outside `keep` gives the
    /// one-state empty automaton.
    fn renumber(&self, keep: &[bool]) -> Self {
        let k = self.alphabet.size();
        if !keep[self.initial as usize] {
            let mut e = Self::from_table(self.base, self.alphabet, self.direction, 0, vec![false], vec![NONE; k], true);
            e.padded = self.padded;
            return e;
        }
        let mut order = vec![self.initial];
        let mut id = vec![NONE; self.states()];
        id[self.initial as usize] = 0;
        let mut cur = 0;
        while cur < order.len() {
            let s = order[cur];
            for &t in self.row(s) {
                if t != NONE && keep[t as usize] && id[t as usize] == NONE {
                    id[t as usize] = order.len() as u32;
                    order.push(t);
                }
            }
            cur += 1;
        }
        let mut delta = Vec::with_capacity(order.len() * k);
        for &s in &order {
            delta.extend(self.row(s).iter().map(|&t| if t == NONE { NONE } else { id[t as usize] }));
        }
        let finals = order.iter().map(|&s| self.is_final(s)).collect();
        Self::from_table(self.base, self.alphabet, self.direction, 0, finals, delta, self.padded)
    }
}

/// Hopcroft's algorithm on a complete automaton; returns a class per state.
fn hopcroft(n: usize, k: usize, delta: &[u32], finals: &[bool]) -> Vec<u32> {
    let nf = finals.iter().filter(|&&f| f).count();
    if nf == 0 || nf == n {
        return vec![0; n];
    }
    // inverse transitions, grouped by (letter, target)
    let mut offsets = vec![0u32; k * n + 1];
    for s in 0..n {
        for l in 0..k {
            offsets[l * n + delta[s * k + l] as usize + 1] += 1;
        }
    }
    for i in 1..offsets.len() {
        offsets[i] += offsets[i - 1];
    }
    let mut fill = offsets.clone();
    let mut preds = vec![0u32; n * k];
    for s in 0..n {
        for l in 0..k {
            let key = l * n + delta[s * k + l] as usize;
            preds[fill[key] as usize] = s as u32;
            fill[key] += 1;
        }
    }

    let initial: Vec<u32> = finals.iter().map(|&f| f as u32).collect();
    let mut part = Partition::new(n, &initial);
    let smaller = if part.size(0) <= part.size(1) { 0 } else { 1 };
    let mut pending: Vec<Vec<bool>> = vec![vec![false; k]; 2];
    let mut work: Vec<(u32, u32)> = Vec::new();
    for l in 0..k {
        pending[smaller][l] = true;
        work.push((smaller as u32, l as u32));
    }

    let mut splitter: Vec<u32> = Vec::new();
    let mut touched: Vec<usize> = Vec::new();
    while let Some((b, l)) = work.pop() {
        let (b, l) = (b as usize, l as usize);
        pending[b][l] = false;
        splitter.clear();
        for i in part.start[b]..part.end[b] {
            let t = part.elems[i as usize] as usize;
            let key = l * n + t;
            splitter.extend_from_slice(&preds[offsets[key] as usize..offsets[key + 1] as usize]);
        }
        touched.clear();
        for &s in &splitter {
            let c = part.block_of[s as usize] as usize;
            if part.marked[c] == 0 {
                touched.push(c);
            }
            part.mark(s);
        }
        for &c in &touched {
            if let Some(nb) = part.split(c) {
                pending.push(vec![false; k]);
                for l2 in 0..k {
                    if pending[c][l2] {
                        pending[nb][l2] = true;
                        work.push((nb as u32, l2 as u32));
                    } else {
                        let pick = if part.size(nb) <= part.size(c) { nb } else { c };
                        pending[pick][l2] = true;
                        work.push((pick as u32, l2 as u32));
                    }
                }
            }
        }
    }
    debug_assert!(part.blocks() <= n);
    part.block_of
}
