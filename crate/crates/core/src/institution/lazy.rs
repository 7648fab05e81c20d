//! Exhaustive search over finite structures that decides table cells only
//! when an evaluation reads them. Every leaf stands for all completions of
//! its partial tables, so visiting every leaf covers every structure.

use alloc::vec::Vec;

pub const UNSET: u8 = u8::MAX;

/// Operation tables over a carrier `0..size`. Relations are tables with
/// range 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partial {
    pub size: u8,
    pub arities: Vec<usize>,
    pub ranges: Vec<u8>,
    pub tables: Vec<Vec<u8>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Need {
    pub op: usize,
    pub cell: usize,
}

impl Partial {
    /// `relations` marks the tables with range 2.
    pub fn new(size: u8, arities: &[usize], relations: &[bool]) -> Self {
        let ranges: Vec<u8> = relations.iter().map(|&r| if r { 2 } else { size }).collect();
        let tables = arities.iter().map(|&k| alloc::vec![UNSET; (size as usize).pow(k as u32)]).collect();
        Partial { size, arities: arities.to_vec(), ranges, tables }
    }

    pub fn cell_of(&self, args: &[u8]) -> usize {
        args.iter().fold(0, |acc, &a| acc * self.size as usize + a as usize)
    }

    pub fn read(&self, op: usize, args: &[u8]) -> Result<u8, Need> {
        let cell = self.cell_of(args);
        match self.tables[op][cell] {
            UNSET => Err(Need { op, cell }),
            v => Ok(v),
        }
    }

    /// Fill unset cells with 0.
    pub fn completed(&self) -> Partial {
        let mut p = self.clone();
        for t in &mut p.tables {
            t.iter_mut().filter(|c| **c == UNSET).for_each(|c| *c = 0);
        }
        p
    }
}

/// Every valuation of `vars` variables over `size` elements, as digit
/// vectors with the first variable most significant.
pub fn valuations(vars: usize, size: u8) -> Vec<Vec<u8>> {
    let count = (size as usize).pow(vars as u32);
    (0..count)
        .map(|mut n| {
            let mut v = alloc::vec![0u8; vars];
            for slot in v.iter_mut().rev() {
                *slot = (n % size as usize) as u8;
                n /= size as usize;
            }
            v
        })
        .collect()
}

/// A universally quantified statement: it holds when `check` holds at
/// every valuation index below `count`.
pub trait Goal {
    fn count(&self) -> usize;
    fn check(&self, p: &Partial, valuation: usize) -> Result<bool, Need>;
}

/// Visit every leaf. Goals are evaluated in order; `stop` may end a branch
/// early once enough results are known. `leaf` returns false to abort.
/// There are no leaves when some operation has cells but no values.
pub fn explore(
    p: &mut Partial,
    goals: &[&dyn Goal],
    stop: &dyn Fn(&[bool]) -> bool,
    leaf: &mut dyn FnMut(&[bool], &Partial) -> bool,
) -> bool {
    if p.ranges.iter().zip(&p.tables).any(|(&r, t)| r == 0 && !t.is_empty()) {
        return true;
    }
    let mut results = Vec::with_capacity(goals.len());
    go(p, goals, 0, 0, &mut results, stop, leaf)
}

fn go(
    p: &mut Partial,
    goals: &[&dyn Goal],
    mut goal: usize,
    mut from: usize,
    results: &mut Vec<bool>,
    stop: &dyn Fn(&[bool]) -> bool,
    leaf: &mut dyn FnMut(&[bool], &Partial) -> bool,
) -> bool {
    let depth = results.len();
    while goal < goals.len() {
        let g = goals[goal];
        let mut verdict = true;
        while from < g.count() {
            match g.check(p, from) {
                Ok(true) => from += 1,
                Ok(false) => {
                    verdict = false;
                    break;
                }
                Err(need) => {
                    let range = p.ranges[need.op];
                    let mut keep_going = true;
                    for v in 0..range {
                        p.tables[need.op][need.cell] = v;
                        if !go(p, goals, goal, from, results, stop, leaf) {
                            keep_going = false;
                            break;
                        }
                    }
                    p.tables[need.op][need.cell] = UNSET;
                    results.truncate(depth);
                    return keep_going;
                }
            }
        }
        results.push(verdict);
        goal += 1;
        from = 0;
        if stop(results) {
            break;
        }
    }
    let ok = leaf(results, p);
    results.truncate(depth);
    ok
}
