//! A toy unlimited-register machine and its Gödel numbering.
//!
//! Every natural number decodes to exactly one [`Program`], and
//! [`Program::index`] is the exact inverse of [`Program::decode`]. This gives
//! the numbering `φ_0, φ_1, ...` of partial computable functions and
//! `W_0, W_1, ...` of c.e. sets that the constructions quantify over.
//!
//! # Numbering
//!
//! Instructions are coded bijectively as naturals:
//!
//! | instruction   | code               |
//! |---------------|--------------------|
//! | `HALT`        | `0`                |
//! | `INC r`       | `1 + 3r`           |
//! | `JZDEC r t`   | `2 + 3⟨r, t⟩`      |
//! | `JMP t`       | `3 + 3t`           |
//!
//! A list of codes `c_1, ..., c_k` is coded as the natural whose set bits sit
//! at positions `p_1 < ... < p_k` with `p_1 = c_1` and
//! `p_i = p_{i-1} + c_i + 1`. The empty program is `0`, `[HALT]` is `1` and
//! `[INC 0]` (successor) is `2`.
//!
//! # Semantics
//!
//! Input goes in register 0, all other registers start at 0, and the output is
//! register 0 at halt. One instruction dispatch is one step; executing `HALT`
//! costs a step, running off the end of the code (including via a jump target
//! past the end) halts without one.

mod asm;
mod cache;

pub use asm::{assemble, AsmError};
pub use cache::CachedProgram;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::pairing::{try_pair, unpair};
use crate::Stage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Instruction {
    /// Increment register `r`.
    Inc(u64),
    /// If register `r` is zero jump to `t`, otherwise decrement it.
    JzDec(u64, u64),
    Jmp(u64),
    Halt,
}

impl Instruction {
    /// The instruction's code in the numbering.
    ///
    /// Panics if `⟨r, t⟩` of a `JZDEC` does not fit in `u64`; decoded
    /// instructions always fit.
    pub fn code(self) -> u64 {
        match self {
            Instruction::Halt => 0,
            Instruction::Inc(r) => 1 + 3 * r,
            Instruction::JzDec(r, t) => {
                2 + 3 * try_pair(r, t).expect("JZDEC operands too large to encode")
            }
            Instruction::Jmp(t) => 3 + 3 * t,
        }
    }

    pub fn from_code(code: u64) -> Instruction {
        if code == 0 {
            return Instruction::Halt;
        }
        let q = (code - 1) / 3;
        match (code - 1) % 3 {
            0 => Instruction::Inc(q),
            1 => {
                let (r, t) = unpair(q);
                Instruction::JzDec(r, t)
            }
            _ => Instruction::Jmp(q),
        }
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Inc(r) => write!(f, "INC {r}"),
            Instruction::JzDec(r, t) => write!(f, "JZDEC {r} {t}"),
            Instruction::Jmp(t) => write!(f, "JMP {t}"),
            Instruction::Halt => write!(f, "HALT"),
        }
    }
}

/// Instruction with its register remapped to a dense slot.
#[derive(Clone, Copy, Debug)]
enum Op {
    Inc(usize),
    JzDec(usize, usize),
    Jmp(usize),
    Halt,
}

#[derive(Clone, Debug)]
pub struct Program {
    code: Vec<Instruction>,
    ops: Vec<Op>,
    slots: usize,
}

impl PartialEq for Program {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for Program {}

impl Program {
    pub fn new(code: Vec<Instruction>) -> Program {
        let mut slot_of: HashMap<u64, usize> = HashMap::new();
        slot_of.insert(0, 0);
        let mut slot = |r: u64| {
            let next = slot_of.len();
            *slot_of.entry(r).or_insert(next)
        };
        let target = |t: u64| usize::try_from(t).unwrap_or(usize::MAX);
        let ops = code
            .iter()
            .map(|ins| match *ins {
                Instruction::Inc(r) => Op::Inc(slot(r)),
                Instruction::JzDec(r, t) => Op::JzDec(slot(r), target(t)),
                Instruction::Jmp(t) => Op::Jmp(target(t)),
                Instruction::Halt => Op::Halt,
            })
            .collect();
        let slots = slot_of.len();
        Program { code, ops, slots }
    }

    /// Decodes any natural into its program. Total.
    pub fn decode(index: &BigUint) -> Program {
        let mut code = Vec::new();
        let mut prev: Option<u64> = None;
        for position in set_bits(index) {
            let c = match prev {
                None => position,
                Some(p) => position - p - 1,
            };
            code.push(Instruction::from_code(c));
            prev = Some(position);
        }
        Program::new(code)
    }

    pub fn from_index(index: u64) -> Program {
        Program::decode(&BigUint::from(index))
    }

    /// The program's Gödel number; `Program::decode(&p.index()) == p`.
    pub fn index(&self) -> BigUint {
        let mut n = BigUint::zero();
        let mut position: Option<u64> = None;
        for ins in &self.code {
            let p = match position {
                None => ins.code(),
                Some(p) => p + ins.code() + 1,
            };
            n.set_bit(p, true);
            position = Some(p);
        }
        n
    }

    pub fn code(&self) -> &[Instruction] {
        &self.code
    }

    /// Same function, different index: appends an unreachable-or-harmless
    /// `HALT` at the end.
    pub fn padded(&self) -> Program {
        let mut code = self.code.clone();
        code.push(Instruction::Halt);
        Program::new(code)
    }

    /// Runs on `input` for at most `budget` steps.
    pub fn run(&self, input: u64, budget: u64) -> StageOutcome {
        let mut regs = vec![0u64; self.slots];
        regs[0] = input;
        let mut pc = 0usize;
        let mut steps = 0u64;
        loop {
            let Some(op) = self.ops.get(pc) else {
                return StageOutcome::Halted { value: regs[0], steps };
            };
            if steps == budget {
                return StageOutcome::Running;
            }
            steps += 1;
            match *op {
                Op::Inc(r) => {
                    regs[r] += 1;
                    pc += 1;
                }
                Op::JzDec(r, t) => {
                    if regs[r] == 0 {
                        pc = t;
                    } else {
                        regs[r] -= 1;
                        pc += 1;
                    }
                }
                Op::Jmp(t) => pc = t,
                Op::Halt => return StageOutcome::Halted { value: regs[0], steps },
            }
        }
    }

    /// The least stage at which `phi_stage(self, input, s)` becomes defined,
    /// with its value, if that stage is at most `budget`.
    pub fn convergence(&self, input: u64, budget: Stage) -> Option<Convergence> {
        match self.run(input, budget) {
            StageOutcome::Halted { value, steps } => {
                let stage = steps.max(value.saturating_add(1));
                (stage <= budget).then_some(Convergence { stage, value })
            }
            StageOutcome::Running => None,
        }
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ins in &self.code {
            writeln!(f, "{ins}")?;
        }
        Ok(())
    }
}

fn set_bits(n: &BigUint) -> impl Iterator<Item = u64> + '_ {
    n.iter_u64_digits().enumerate().flat_map(|(word_index, mut word)| {
        std::iter::from_fn(move || {
            if word == 0 {
                return None;
            }
            let bit = word.trailing_zeros() as u64;
            word &= word - 1;
            Some(word_index as u64 * 64 + bit)
        })
    })
}

/// Result of running a program for a bounded number of steps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StageOutcome {
    Halted { value: u64, steps: u64 },
    Running,
}

/// When (and with what value) a bounded computation first counts as defined.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Convergence {
    pub stage: Stage,
    pub value: u64,
}

/// `φ_{e,s}(i)`: defined iff the program halts within `s` steps with an
/// output below `s`.
pub fn phi_stage(program: &Program, input: u64, stage: Stage) -> Option<u64> {
    match program.run(input, stage) {
        StageOutcome::Halted { value, .. } if value < stage => Some(value),
        _ => None,
    }
}

/// `W_{e,s} = { i < s : φ_{e,s}(i) defined }`.
pub fn we_stage(program: &Program, stage: Stage) -> BTreeSet<u64> {
    (0..stage)
        .filter(|&i| phi_stage(program, i, stage).is_some())
        .collect()
}

/// Hand-assembled programs used in examples and tests.
pub mod library {
    use super::{Instruction::*, Program};

    /// `φ(x) = x`.
    pub fn identity() -> Program {
        Program::new(vec![Halt])
    }

    /// `φ(x) = x + 1`; index 2.
    pub fn successor() -> Program {
        Program::new(vec![Inc(0)])
    }

    /// `φ(x) = 2x`.
    pub fn doubling() -> Program {
        Program::new(vec![
            JzDec(0, 4),
            Inc(1),
            Inc(1),
            Jmp(0),
            JzDec(1, 7),
            Inc(0),
            Jmp(4),
            Halt,
        ])
    }

    /// `φ(x) = 0`.
    pub fn zero() -> Program {
        Program::new(vec![JzDec(0, 2), Jmp(0), Halt])
    }

    /// Halts (with output 0) exactly on even inputs; loops on odd ones.
    pub fn halt_on_even() -> Program {
        Program::new(vec![JzDec(0, 4), JzDec(0, 3), Jmp(0), Jmp(3), Halt])
    }

    /// `φ(x) = 2x + 1`.
    pub fn double_plus_one() -> Program {
        let mut code = doubling().code().to_vec();
        code.pop();
        code.push(Inc(0));
        Program::new(code)
    }

    /// Never halts.
    pub fn diverge() -> Program {
        Program::new(vec![Jmp(0)])
    }
}

#[cfg(test)]
mod tests {
    use super::library::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_indices() {
        assert_eq!(Program::from_index(0).code(), &[]);
        assert_eq!(Program::from_index(1).code(), &[Instruction::Halt]);
        assert_eq!(Program::from_index(2).code(), &[Instruction::Inc(0)]);
        assert_eq!(successor().index(), BigUint::from(2u32));
        assert_eq!(Program::from_index(0).index(), BigUint::zero());
    }

    #[test]
    fn instruction_codes_are_a_bijection() {
        for c in 0..5000u64 {
            assert_eq!(Instruction::from_code(c).code(), c);
        }
    }

    #[test]
    fn decode_then_encode_is_identity() {
        for e in 0..20_000u64 {
            assert_eq!(Program::from_index(e).index(), BigUint::from(e), "e = {e}");
        }
        let big = BigUint::parse_bytes(b"98765432109876543210987654321", 10).unwrap();
        assert_eq!(Program::decode(&big).index(), big);
    }

    #[test]
    fn identity_program_on_0_to_20() {
        let id = identity();
        let e = id.index();
        let p = Program::decode(&e);
        for i in 0..=20 {
            assert_eq!(p.run(i, 10), StageOutcome::Halted { value: i, steps: 1 });
        }
        // the empty program is the identity as well
        for i in 0..=20 {
            assert_eq!(phi_stage(&Program::from_index(0), i, i + 1), Some(i));
        }
    }

    #[test]
    fn hand_assembled_arithmetic() {
        for x in 0..30 {
            assert_eq!(doubling().convergence(x, 10_000).unwrap().value, 2 * x);
            assert_eq!(double_plus_one().convergence(x, 10_000).unwrap().value, 2 * x + 1);
            assert_eq!(zero().convergence(x, 10_000).unwrap().value, 0);
            assert_eq!(successor().convergence(x, 10_000).unwrap().value, x + 1);
            let even = halt_on_even().convergence(x, 10_000);
            assert_eq!(even.is_some(), x % 2 == 0);
        }
        assert_eq!(diverge().run(3, 1000), StageOutcome::Running);
    }

    #[test]
    fn phi_stage_at_zero_is_undefined() {
        for e in 0..200 {
            let p = Program::from_index(e);
            for i in 0..10 {
                assert_eq!(phi_stage(&p, i, 0), None);
            }
        }
    }

    #[test]
    fn phi_stage_identity_eventually_defined() {
        let id = identity();
        assert_eq!(phi_stage(&id, 5, 5), None);
        for s in 6..50 {
            assert_eq!(phi_stage(&id, 5, s), Some(5));
        }
    }

    #[test]
    fn stage_convention_and_monotonicity() {
        for e in 0..300u64 {
            let p = Program::from_index(e);
            for i in 0..12 {
                let mut seen = None;
                for s in 0..40 {
                    let v = phi_stage(&p, i, s);
                    if let Some(v) = v {
                        assert!(v < s);
                    }
                    if seen.is_some() {
                        assert_eq!(v, seen, "e={e} i={i} s={s}");
                    }
                    seen = v;
                    assert_eq!(v, phi_stage(&p, i, s));
                }
            }
        }
    }

    #[test]
    fn convergence_matches_phi_stage() {
        for e in 0..300u64 {
            let p = Program::from_index(e);
            for i in 0..10 {
                let c = p.convergence(i, 40);
                for s in 0..=40 {
                    let expected = c.filter(|c| c.stage <= s).map(|c| c.value);
                    assert_eq!(phi_stage(&p, i, s), expected);
                }
            }
        }
    }

    #[test]
    fn we_stage_behaviour() {
        assert!(we_stage(&identity(), 0).is_empty());
        let w = we_stage(&identity(), 30);
        assert_eq!(w, (0..30).collect());
        let evens = we_stage(&halt_on_even(), 40);
        assert!(evens.iter().all(|x| x % 2 == 0));
        assert!(evens.contains(&0) && evens.contains(&10));
        for e in 0..100 {
            let p = Program::from_index(e);
            for s in 0..25 {
                assert!(we_stage(&p, s).is_subset(&we_stage(&p, s + 1)));
            }
        }
    }

    #[test]
    fn padding_gives_new_indices_for_the_same_function() {
        for p in [identity(), doubling(), halt_on_even()] {
            let q = p.padded();
            assert_ne!(p.index(), q.index());
            for x in 0..25 {
                let a = p.convergence(x, 10_000).map(|c| c.value);
                let b = q.convergence(x, 10_000).map(|c| c.value);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn decode_is_total_on_a_sample() {
        for e in (0..1_000_000u64).step_by(997) {
            let p = Program::from_index(e);
            let _ = p.run(e % 17, 50);
        }
    }

    proptest! {
        #[test]
        fn round_trip_large_indices(bytes in proptest::collection::vec(any::<u8>(), 0..24)) {
            let e = BigUint::from_bytes_le(&bytes);
            prop_assert_eq!(Program::decode(&e).index(), e);
        }

        #[test]
        fn program_round_trip(code in proptest::collection::vec(0u64..200, 0..12)) {
            let p = Program::new(code.into_iter().map(Instruction::from_code).collect());
            prop_assert_eq!(Program::decode(&p.index()), p);
        }
    }
}
