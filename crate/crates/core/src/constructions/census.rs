//! Words containing, or avoiding, a finite set of forbidden subwords.

use std::collections::VecDeque;

use crate::word::Word;

/// Does some `z ∈ Z` occur in `w` as a contiguous subword?
pub fn subword_closure_member(z: &[Word], w: &Word) -> bool {
    z.iter().any(|f| w.contains(f))
}

/// Pattern automaton over `{a, b}`: `next[state][symbol]`, with `dead`
/// marking states whose suffix ends some pattern.
struct Automaton {
    next: Vec<[usize; 2]>,
    dead: Vec<bool>,
}

fn symbol(c: u8) -> usize {
    usize::from(c == b'b')
}

impl Automaton {
    fn new(patterns: &[Word]) -> Automaton {
        let mut goto: Vec<[Option<usize>; 2]> = vec![[None, None]];
        let mut dead = vec![false];
        for p in patterns {
            let mut state = 0;
            for &c in p.as_bytes() {
                state = match goto[state][symbol(c)] {
                    Some(t) => t,
                    None => {
                        goto.push([None, None]);
                        dead.push(false);
                        let t = goto.len() - 1;
                        goto[state][symbol(c)] = Some(t);
                        t
                    }
                };
            }
            dead[state] = true;
        }

        let mut next = vec![[0usize; 2]; goto.len()];
        let mut fail = vec![0usize; goto.len()];
        let mut queue = VecDeque::new();
        for c in 0..2 {
            if let Some(t) = goto[0][c] {
                next[0][c] = t;
                queue.push_back(t);
            }
        }
        while let Some(u) = queue.pop_front() {
            dead[u] |= dead[fail[u]];
            for c in 0..2 {
                match goto[u][c] {
                    Some(t) => {
                        fail[t] = next[fail[u]][c];
                        next[u][c] = t;
                        queue.push_back(t);
                    }
                    None => next[u][c] = next[fail[u]][c],
                }
            }
        }
        Automaton { next, dead }
    }
}

/// `counts[ℓ - 1]` is the number of words of length `ℓ` avoiding every
/// member of `Z`, for `ℓ = 1..=max_len`.
pub fn avoidance_census(z: &[Word], max_len: usize) -> Vec<u128> {
    let automaton = Automaton::new(z);
    let states = automaton.next.len();
    let mut ways = vec![0u128; states];
    ways[0] = 1;
    let mut counts = Vec::with_capacity(max_len);
    for _ in 0..max_len {
        let mut step = vec![0u128; states];
        for (u, &n) in ways.iter().enumerate() {
            if n == 0 {
                continue;
            }
            for c in 0..2 {
                let t = automaton.next[u][c];
                if !automaton.dead[t] {
                    step[t] += n;
                }
            }
        }
        counts.push(step.iter().sum());
        ways = step;
    }
    counts
}
