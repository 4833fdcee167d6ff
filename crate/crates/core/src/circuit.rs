//! Gate-list circuits over the basis {NEG, OR, AND} with fan-in two.
//!
//! Gates are indexed from 1 in topological order; the last gate is the
//! output. NEG reads only its first wire; the second wire is structurally
//! present and fixed to the constant 0 so that every wire variable of the
//! generated formulas receives a value under restrictions.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::budget;
use crate::vars::{Assignment, VarCatalog, VarSym};

/// Source feeding a wire.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WireSource {
    Const(u8),
    Var(u32),
    Gate(u32),
}

impl WireSource {
    pub fn const_bit(b: bool) -> Self {
        WireSource::Const(b as u8)
    }
}

/// Gate operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateOp {
    Neg,
    Or,
    And,
}

/// A single gate; `in2` is ignored by NEG but always present.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Gate {
    pub op: GateOp,
    pub in1: WireSource,
    pub in2: WireSource,
}

/// Gate-list circuit. Gate `v` (1-based) may only read gates `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitIR {
    pub n_inputs: usize,
    pub gates: Vec<Gate>,
}

/// Errors from circuit construction.
#[derive(Debug, Clone, thiserror::Error)]
pub enum CircuitError {
    #[error("truth table over {0} inputs exceeds the compilation bound {1}")]
    InputTooLarge(usize, usize),
    #[error("threshold level {level} out of range for {n} inputs")]
    BadLevel { n: usize, level: usize },
    #[error("circuit is not a {level}-slice function (differs at input {alpha:#b})")]
    NotSliceFunction { level: usize, alpha: u32 },
    #[error("circuit of size {size} exceeds the gate budget {budget}")]
    BudgetExceeded { size: usize, budget: usize },
    #[error("malformed circuit: {0}")]
    Malformed(String),
    #[error(transparent)]
    Budget(#[from] budget::BudgetError),
}

/// Truth table of a Boolean function on `n` inputs.
///
/// Inputs are enumerated lexicographically as bit strings: the table index
/// of `alpha` is the integer with `alpha_1` as the most significant bit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthTable {
    pub n: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, bits: Vec<bool>) -> Self {
        assert_eq!(bits.len(), 1 << n, "table must have 2^n entries");
        TruthTable { n, bits }
    }

    pub fn constant(n: usize, b: bool) -> Self {
        TruthTable { n, bits: vec![b; 1 << n] }
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> bool) -> Self {
        TruthTable { n, bits: (0..1u32 << n).map(f).collect() }
    }

    pub fn get(&self, alpha: u32) -> bool {
        self.bits[alpha as usize]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// MSB-first hex string with the table read in index order.
    pub fn to_hex(&self) -> String {
        let mut out = String::new();
        let padded = (self.bits.len() + 3) / 4 * 4;
        let mut nibble = 0u8;
        for i in 0..padded {
            nibble <<= 1;
            if i < self.bits.len() && self.bits[i] {
                nibble |= 1;
            }
            if i % 4 == 3 {
                out.push(char::from_digit(nibble as u32, 16).unwrap());
                nibble = 0;
            }
        }
        out
    }

    pub fn from_hex(n: usize, hex: &str) -> Option<Self> {
        let len = 1usize << n;
        let mut bits = Vec::with_capacity(len);
        for c in hex.chars() {
            let nib = c.to_digit(16)? as u8;
            for j in (0..4).rev() {
                bits.push(nib >> j & 1 == 1);
            }
        }
        if bits.len() < len {
            return None;
        }
        bits.truncate(len);
        Some(TruthTable { n, bits })
    }

    /// Hamming weight of the input with table index `alpha`.
    pub fn weight(alpha: u32) -> u32 {
        alpha.count_ones()
    }
}

impl CircuitIR {
    pub fn size(&self) -> usize {
        self.gates.len()
    }

    /// Index (1-based) of the output gate.
    pub fn output(&self) -> u32 {
        self.gates.len() as u32
    }

    pub fn has_neg(&self) -> bool {
        self.gates.iter().any(|g| g.op == GateOp::Neg)
    }

    pub fn validate(&self) -> Result<(), CircuitError> {
        if self.gates.is_empty() {
            return Err(CircuitError::Malformed("circuit has no gates".into()));
        }
        for (idx, gate) in self.gates.iter().enumerate() {
            let v = idx as u32 + 1;
            for w in [gate.in1, gate.in2] {
                match w {
                    WireSource::Const(b) if b <= 1 => {}
                    WireSource::Const(b) => {
                        return Err(CircuitError::Malformed(format!("constant {b} on gate {v}")))
                    }
                    WireSource::Var(i) if i >= 1 && i as usize <= self.n_inputs => {}
                    WireSource::Var(i) => {
                        return Err(CircuitError::Malformed(format!("input x{i} on gate {v}")))
                    }
                    WireSource::Gate(u) if u >= 1 && u < v => {}
                    WireSource::Gate(u) => {
                        return Err(CircuitError::Malformed(format!(
                            "gate {v} reads gate {u}, violating topological order"
                        )))
                    }
                }
            }
        }
        Ok(())
    }

    fn wire_value(&self, w: WireSource, alpha: u32, outs: &[bool]) -> bool {
        match w {
            WireSource::Const(b) => b == 1,
            WireSource::Var(i) => alpha >> (self.n_inputs as u32 - i) & 1 == 1,
            WireSource::Gate(u) => outs[u as usize - 1],
        }
    }

    /// Evaluates every gate on input `alpha`; returns all gate outputs.
    pub fn eval_gates(&self, alpha: u32) -> Vec<bool> {
        let mut outs = Vec::with_capacity(self.gates.len());
        for gate in &self.gates {
            let a = self.wire_value(gate.in1, alpha, &outs);
            let out = match gate.op {
                GateOp::Neg => !a,
                GateOp::Or => a || self.wire_value(gate.in2, alpha, &outs),
                GateOp::And => a && self.wire_value(gate.in2, alpha, &outs),
            };
            outs.push(out);
        }
        outs
    }

    /// Output bit on input `alpha`.
    pub fn eval(&self, alpha: u32) -> bool {
        *self.eval_gates(alpha).last().expect("nonempty circuit")
    }

    /// Output bit on an explicit assignment slice (`alpha[0]` is `x_1`).
    pub fn eval_bits(&self, alpha: &[bool]) -> bool {
        assert_eq!(alpha.len(), self.n_inputs);
        let packed = alpha.iter().fold(0u32, |acc, &b| acc << 1 | b as u32);
        self.eval(packed)
    }

    /// Value carried by `w` on input `alpha`, given all gate outputs.
    pub fn wire_on(&self, w: WireSource, alpha: u32, outs: &[bool]) -> bool {
        self.wire_value(w, alpha, outs)
    }

    pub fn truth_table(&self) -> TruthTable {
        TruthTable::from_fn(self.n_inputs, |alpha| self.eval(alpha))
    }
}

/// Incremental circuit builder with gate deduplication.
pub struct CircuitBuilder {
    n_inputs: usize,
    gates: Vec<Gate>,
    dedup: HashMap<Gate, u32>,
}

impl CircuitBuilder {
    pub fn new(n_inputs: usize) -> Self {
        CircuitBuilder { n_inputs, gates: Vec::new(), dedup: HashMap::new() }
    }

    pub fn size(&self) -> usize {
        self.gates.len()
    }

    pub fn constant(&self, b: bool) -> WireSource {
        WireSource::const_bit(b)
    }

    pub fn input(&self, i: u32) -> WireSource {
        assert!(i >= 1 && i as usize <= self.n_inputs);
        WireSource::Var(i)
    }

    /// Appends a gate (or reuses an identical earlier one).
    pub fn gate(&mut self, op: GateOp, in1: WireSource, in2: WireSource) -> WireSource {
        let in2 = if op == GateOp::Neg { WireSource::Const(0) } else { in2 };
        let gate = Gate { op, in1, in2 };
        if let Some(&u) = self.dedup.get(&gate) {
            return WireSource::Gate(u);
        }
        self.gates.push(gate);
        let u = self.gates.len() as u32;
        self.dedup.insert(gate, u);
        WireSource::Gate(u)
    }

    /// Appends a gate without deduplication.
    pub fn fresh_gate(&mut self, op: GateOp, in1: WireSource, in2: WireSource) -> WireSource {
        let in2 = if op == GateOp::Neg { WireSource::Const(0) } else { in2 };
        self.gates.push(Gate { op, in1, in2 });
        WireSource::Gate(self.gates.len() as u32)
    }

    pub fn and(&mut self, a: WireSource, b: WireSource) -> WireSource {
        self.gate(GateOp::And, a, b)
    }

    pub fn or(&mut self, a: WireSource, b: WireSource) -> WireSource {
        self.gate(GateOp::Or, a, b)
    }

    pub fn neg(&mut self, a: WireSource) -> WireSource {
        self.gate(GateOp::Neg, a, WireSource::Const(0))
    }

    /// The four-gate XOR block: OR, AND, NEG, AND.
    pub fn xor(&mut self, a: WireSource, b: WireSource) -> WireSource {
        let either = self.fresh_gate(GateOp::Or, a, b);
        let both = self.fresh_gate(GateOp::And, a, b);
        let not_both = self.fresh_gate(GateOp::Neg, both, WireSource::Const(0));
        self.fresh_gate(GateOp::And, either, not_both)
    }

    /// Imports another circuit, remapping its inputs through `inputs` and
    /// returning the wire of its output.
    pub fn import(&mut self, other: &CircuitIR, inputs: &[WireSource]) -> WireSource {
        assert_eq!(inputs.len(), other.n_inputs);
        let mut map: Vec<WireSource> = Vec::with_capacity(other.gates.len());
        for gate in &other.gates {
            let remap = |w: WireSource, map: &[WireSource]| match w {
                WireSource::Const(b) => WireSource::Const(b),
                WireSource::Var(i) => inputs[i as usize - 1],
                WireSource::Gate(u) => map[u as usize - 1],
            };
            let in1 = remap(gate.in1, &map);
            let in2 = remap(gate.in2, &map);
            map.push(self.gate(gate.op, in1, in2));
        }
        *map.last().expect("nonempty circuit")
    }

    /// Finishes the circuit making `out` the final gate; wraps non-gate or
    /// interior outputs with an OR(w, w) buffer.
    pub fn finish(mut self, out: WireSource) -> CircuitIR {
        let needs_buffer = match out {
            WireSource::Gate(u) => u as usize != self.gates.len(),
            _ => true,
        };
        if needs_buffer {
            self.fresh_gate(GateOp::Or, out, out);
        }
        CircuitIR { n_inputs: self.n_inputs, gates: self.gates }
    }
}

/// Upper bound on `n` for truth-table compilation.
pub const COMPILE_MAX_INPUTS: usize = 12;

/// Compiles a truth table into a circuit by Shannon decomposition with
/// constant-leaf pruning; the result is verified exhaustively.
pub fn compile_function(table: &TruthTable) -> Result<CircuitIR, CircuitError> {
    if table.n > COMPILE_MAX_INPUTS {
        return Err(CircuitError::InputTooLarge(table.n, COMPILE_MAX_INPUTS));
    }
    let mut b = CircuitBuilder::new(table.n);
    let out = shannon(&mut b, table.bits(), 1);
    let circuit = b.finish(out);
    assert_eq!(circuit.truth_table(), *table, "compiled circuit must match its table");
    Ok(circuit)
}

/// Recursive Shannon step over `bits`, splitting on input `i`.
fn shannon(b: &mut CircuitBuilder, bits: &[bool], i: u32) -> WireSource {
    if bits.iter().all(|&x| x) {
        return WireSource::Const(1);
    }
    if bits.iter().all(|&x| !x) {
        return WireSource::Const(0);
    }
    let half = bits.len() / 2;
    let (lo, hi) = bits.split_at(half); // lo: x_i = 0, hi: x_i = 1
    if lo == hi {
        return shannon(b, lo, i + 1);
    }
    let xi = b.input(i);
    let f0 = shannon(b, lo, i + 1);
    let f1 = shannon(b, hi, i + 1);
    match (f0, f1) {
        (WireSource::Const(0), f1) => b.and(xi, f1),
        (f0, WireSource::Const(0)) => {
            let nx = b.neg(xi);
            b.and(nx, f0)
        }
        (WireSource::Const(1), f1) => {
            let nx = b.neg(xi);
            b.or(nx, f1)
        }
        (f0, WireSource::Const(1)) => b.or(xi, f0),
        (f0, f1) => {
            let nx = b.neg(xi);
            let left = b.and(nx, f0);
            let right = b.and(xi, f1);
            b.or(left, right)
        }
    }
}

/// Monotone threshold circuit `T_{>= level}` (or `T_{> level}` if
/// `strict`), built by the grid recurrence
/// `t_{i,j} = t_{i-1,j} OR (t_{i-1,j-1} AND x_i)`.
pub fn threshold_circuit(n: usize, level: usize, strict: bool) -> Result<CircuitIR, CircuitError> {
    if level > n {
        return Err(CircuitError::BadLevel { n, level });
    }
    let ell = if strict { level + 1 } else { level };
    let mut b = CircuitBuilder::new(n);
    let inputs: Vec<WireSource> = (1..=n as u32).map(WireSource::Var).collect();
    let out = threshold_wire(&mut b, &inputs, ell);
    Ok(b.finish(out))
}

/// Threshold `>= ell` over an explicit list of wires, inside a builder.
pub fn threshold_wire(b: &mut CircuitBuilder, inputs: &[WireSource], ell: usize) -> WireSource {
    if ell == 0 {
        return WireSource::Const(1);
    }
    if ell > inputs.len() {
        return WireSource::Const(0);
    }
    // row[j] = [at least j of the inputs seen so far are 1]
    let mut row: Vec<WireSource> = vec![WireSource::Const(0); ell + 1];
    row[0] = WireSource::Const(1);
    for &x in inputs {
        let mut next = row.clone();
        for j in 1..=ell {
            let carry = b.and(row[j - 1], x);
            next[j] = b.or(row[j], carry);
        }
        row = next;
    }
    row[ell]
}

/// `(C AND T_{>=level}) OR T_{>level}`: equals `C` on the level-slice, 0
/// below it and 1 above it.
pub fn clamp_to_slice(c: &CircuitIR, level: usize) -> Result<CircuitIR, CircuitError> {
    let n = c.n_inputs;
    if level > n {
        return Err(CircuitError::BadLevel { n, level });
    }
    let mut b = CircuitBuilder::new(n);
    let inputs: Vec<WireSource> = (1..=n as u32).map(WireSource::Var).collect();
    let core = b.import(c, &inputs);
    let at_least = threshold_wire(&mut b, &inputs, level);
    let above = threshold_wire(&mut b, &inputs, level + 1);
    let clamped = b.and(core, at_least);
    let out = b.or(clamped, above);
    Ok(b.finish(out))
}

/// Checks that a circuit computes a `level`-slice function.
pub fn slice_check(c: &CircuitIR, level: usize) -> Result<(), CircuitError> {
    budget::check(1u64 << c.n_inputs)?;
    for alpha in 0..1u32 << c.n_inputs {
        let w = alpha.count_ones() as usize;
        let out = c.eval(alpha);
        if (w < level && out) || (w > level && !out) {
            return Err(CircuitError::NotSliceFunction { level, alpha });
        }
    }
    Ok(())
}

/// Rewrites a slice-function circuit into a NEG-free circuit computing the
/// same function everywhere: negations are pushed to the inputs by De
/// Morgan, `NOT x_i` is replaced by the threshold `>= level` over the other
/// inputs, and the result is clamped back onto the slice.
pub fn monotonize_slice(c: &CircuitIR, level: usize) -> Result<CircuitIR, CircuitError> {
    slice_check(c, level)?;
    let n = c.n_inputs;
    let mut b = CircuitBuilder::new(n);
    let inputs: Vec<WireSource> = (1..=n as u32).map(WireSource::Var).collect();
    // Negated input rails: on the slice, NOT x_i = [sum of the others >= level].
    let neg_inputs: Vec<WireSource> = (0..n)
        .map(|i| {
            let others: Vec<WireSource> = inputs
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &w)| w)
                .collect();
            threshold_wire(&mut b, &others, level)
        })
        .collect();
    let (pos, _neg) = dual_rail_import(&mut b, c, &inputs, &neg_inputs);
    let at_least = threshold_wire(&mut b, &inputs, level);
    let above = threshold_wire(&mut b, &inputs, level + 1);
    let clamped = b.and(pos, at_least);
    let out = b.or(clamped, above);
    let result = b.finish(out);
    assert!(!result.has_neg());
    Ok(result)
}

/// Imports `c` in dual-rail form: for every gate both the positive and the
/// negative polarity are built NEG-free, given complementary input rails.
pub fn dual_rail_import(
    b: &mut CircuitBuilder,
    c: &CircuitIR,
    pos_inputs: &[WireSource],
    neg_inputs: &[WireSource],
) -> (WireSource, WireSource) {
    let mut pos: Vec<WireSource> = Vec::with_capacity(c.gates.len());
    let mut neg: Vec<WireSource> = Vec::with_capacity(c.gates.len());
    let rail = |w: WireSource, pos: &[WireSource], neg: &[WireSource]| match w {
        WireSource::Const(bit) => (WireSource::Const(bit), WireSource::Const(1 - bit)),
        WireSource::Var(i) => (pos_inputs[i as usize - 1], neg_inputs[i as usize - 1]),
        WireSource::Gate(u) => (pos[u as usize - 1], neg[u as usize - 1]),
    };
    for gate in &c.gates {
        let (p1, n1) = rail(gate.in1, &pos, &neg);
        let (p2, n2) = rail(gate.in2, &pos, &neg);
        let (p, n) = match gate.op {
            GateOp::Neg => (n1, p1),
            GateOp::Or => (b.or(p1, p2), b.and(n1, n2)),
            GateOp::And => (b.and(p1, p2), b.or(n1, n2)),
        };
        pos.push(p);
        neg.push(n);
    }
    (*pos.last().unwrap(), *neg.last().unwrap())
}

/// NEG-free XOR chain over complementary rails. Maintains both polarities:
/// `chi_i = (chi_{i-1} AND n_i) OR (nchi_{i-1} AND p_i)`.
///
/// Returns the positive and negative outputs; for a single rail the inputs
/// are returned unchanged.
pub fn dual_rail_xor_chain(
    b: &mut CircuitBuilder,
    rails: &[(WireSource, WireSource)],
) -> (WireSource, WireSource) {
    assert!(!rails.is_empty());
    let (mut chi, mut nchi) = rails[0];
    for &(p, n) in &rails[1..] {
        let keep = b.and(chi, n);
        let flip = b.and(nchi, p);
        let keep_n = b.and(chi, p);
        let flip_n = b.and(nchi, n);
        chi = b.or(keep, flip);
        nchi = b.or(keep_n, flip_n);
    }
    (chi, nchi)
}

/// Standalone circuit computing the XOR of `m` dual-rail pairs: inputs
/// `1..=m` are the positive rails, `m+1..=2m` the negative rails.
pub fn dual_rail_xor_circuit(m: usize) -> CircuitIR {
    let mut b = CircuitBuilder::new(2 * m);
    let rails: Vec<(WireSource, WireSource)> = (1..=m as u32)
        .map(|i| (WireSource::Var(i), WireSource::Var(i + m as u32)))
        .collect();
    let (pos, _) = dual_rail_xor_chain(&mut b, &rails);
    b.finish(pos)
}

/// The canonical inert padding gate.
pub fn padding_gate() -> Gate {
    Gate { op: GateOp::Or, in1: WireSource::Const(0), in2: WireSource::Const(0) }
}

/// Pads a circuit to exactly `s` gates with inert OR(0,0) gates inserted
/// before the output gate, keeping the output at index `s`.
pub fn pad_to_size(c: &CircuitIR, s: usize) -> Result<CircuitIR, CircuitError> {
    if c.size() > s {
        return Err(CircuitError::BudgetExceeded { size: c.size(), budget: s });
    }
    if c.size() == s {
        return Ok(c.clone());
    }
    let mut gates: Vec<Gate> = c.gates[..c.size() - 1].to_vec();
    gates.extend(std::iter::repeat(padding_gate()).take(s - c.size()));
    gates.push(c.gates[c.size() - 1]);
    // The relocated output gate keeps its wire references: padding was
    // inserted after every gate it can read.
    Ok(CircuitIR { n_inputs: c.n_inputs, gates })
}

/// Transcribes a circuit into an assignment of the structure variables of
/// the size-`s` formula: gates `1..=|C|` realize `C`, the rest are padded
/// with OR(0, 0). Unused choice variables get canonical inert defaults.
pub fn circuit_to_structure_assignment(
    c: &CircuitIR,
    s: usize,
    catalog: &VarCatalog,
) -> Result<Assignment, CircuitError> {
    if c.size() > s {
        return Err(CircuitError::BudgetExceeded { size: c.size(), budget: s });
    }
    c.validate()?;
    let n = catalog.n;
    assert_eq!(n, c.n_inputs, "catalog and circuit disagree on the arity");
    let mut asg = Assignment::new();
    for v in 1..=s as u32 {
        let gate = if (v as usize) <= c.size() { c.gates[v as usize - 1] } else { padding_gate() };
        asg.set(catalog.var(VarSym::IsNeg { v }), gate.op == GateOp::Neg);
        asg.set(catalog.var(VarSym::IsOr { v }), gate.op == GateOp::Or);
        asg.set(catalog.var(VarSym::IsAnd { v }), gate.op == GateOp::And);
        for (a, wire) in [(1u8, gate.in1), (2u8, gate.in2)] {
            let (from_const, from_var, from_gate) = match wire {
                WireSource::Const(_) => (true, false, false),
                WireSource::Var(_) => (false, true, false),
                WireSource::Gate(_) => (false, false, true),
            };
            asg.set(catalog.var(VarSym::IsFromConst { v, a }), from_const);
            asg.set(catalog.var(VarSym::IsFromVar { v, a }), from_var);
            asg.set(catalog.var(VarSym::IsFromGate { v, a }), from_gate);
            let const_val = matches!(wire, WireSource::Const(1));
            asg.set(catalog.var(VarSym::ConstVal { v, a }), const_val);
            let var_choice = if let WireSource::Var(i) = wire { i } else { 1 };
            for i in 1..=n as u32 {
                asg.set(catalog.var(VarSym::IsVar { v, a, i }), i == var_choice);
            }
            let gate_choice = if let WireSource::Gate(u) = wire { u } else { 1 };
            for u in 1..v {
                asg.set(catalog.var(VarSym::IsGate { v, a, u }), u == gate_choice);
            }
        }
    }
    Ok(asg)
}

/// Builds a full assignment (structure plus honest wire values) realizing
/// `c` inside the size-`s` formula. The circuit is padded so its output
/// lands on gate `s`, where the output axioms read it.
pub fn honest_evaluation_assignment(
    c: &CircuitIR,
    s: usize,
    catalog: &VarCatalog,
) -> Result<Assignment, CircuitError> {
    let padded = pad_to_size(c, s)?;
    let mut asg = circuit_to_structure_assignment(&padded, s, catalog)?;
    let n = catalog.n;
    for alpha in 0..1u32 << n {
        let outs = padded.eval_gates(alpha);
        for v in 1..=s as u32 {
            asg.set(catalog.var(VarSym::OutWire { v, alpha }), outs[v as usize - 1]);
            let gate = padded.gates[v as usize - 1];
            for (a, wire) in [(1u8, gate.in1), (2u8, gate.in2)] {
                let val = padded.wire_on(wire, alpha, &outs);
                asg.set(catalog.var(VarSym::InWire { v, a, alpha }), val);
            }
        }
    }
    Ok(asg)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor2() -> CircuitIR {
        let mut b = CircuitBuilder::new(2);
        let out = b.xor(WireSource::Var(1), WireSource::Var(2));
        b.finish(out)
    }

    #[test]
    fn eval_basic_gates() {
        let mut b = CircuitBuilder::new(2);
        let out = b.and(WireSource::Var(1), WireSource::Var(2));
        let c = b.finish(out);
        assert!(c.eval_bits(&[true, true]));
        assert!(!c.eval_bits(&[true, false]));

        let mut b = CircuitBuilder::new(1);
        let out = b.neg(WireSource::Const(0));
        let c = b.finish(out);
        assert!(c.eval_bits(&[false]) && c.eval_bits(&[true]));
    }

    #[test]
    fn four_gate_xor() {
        let c = xor2();
        assert_eq!(c.size(), 4);
        assert_eq!(
            c.gates.iter().map(|g| g.op).collect::<Vec<_>>(),
            vec![GateOp::Or, GateOp::And, GateOp::Neg, GateOp::And]
        );
        for alpha in 0..4u32 {
            assert_eq!(c.eval(alpha), (alpha & 1) ^ (alpha >> 1 & 1) == 1);
        }
    }

    #[test]
    fn compile_small_tables() {
        // Constant-0 on one input.
        let c = compile_function(&TruthTable::constant(1, false)).unwrap();
        assert!(!c.eval(0) && !c.eval(1));
        assert_eq!(c.size(), 1);

        // Projection x1 on two inputs.
        let t = TruthTable::from_fn(2, |alpha| alpha >> 1 & 1 == 1);
        let c = compile_function(&t).unwrap();
        assert_eq!(c.truth_table(), t);

        // XOR2 table.
        let t = xor2().truth_table();
        let c = compile_function(&t).unwrap();
        assert_eq!(c.truth_table(), t);
    }

    #[test]
    fn compile_exhaustive_small_n() {
        for n in 1..=3usize {
            for mask in 0..1u64 << (1 << n) {
                let t = TruthTable::from_fn(n, |alpha| mask >> alpha & 1 == 1);
                let c = compile_function(&t).unwrap();
                assert_eq!(c.truth_table(), t, "table {mask:#x} on {n} inputs");
                assert!(c.size() <= 2 << n);
            }
        }
    }

    #[test]
    fn thresholds() {
        let c = threshold_circuit(3, 0, false).unwrap();
        assert!((0..8).all(|a| c.eval(a)));

        let c = threshold_circuit(3, 2, false).unwrap();
        for alpha in 0..8u32 {
            assert_eq!(c.eval(alpha), alpha.count_ones() >= 2);
        }
        assert!(!c.has_neg());

        let c = threshold_circuit(3, 3, true).unwrap();
        assert!((0..8).all(|a| !c.eval(a)));
    }

    #[test]
    fn clamp_examples() {
        // NOT x1 on two inputs, level 1.
        let mut b = CircuitBuilder::new(2);
        let out = b.neg(WireSource::Var(1));
        let c = b.finish(out);
        let clamped = clamp_to_slice(&c, 1).unwrap();
        assert!(clamped.eval_bits(&[false, true]));
        assert!(!clamped.eval_bits(&[true, false]));
        assert!(!clamped.eval_bits(&[false, false]));
        assert!(clamped.eval_bits(&[true, true]));

        // Constant 1 at level 0 stays constant 1.
        let mut b = CircuitBuilder::new(2);
        let g = b.or(WireSource::Const(1), WireSource::Const(1));
        let c = b.finish(g);
        let clamped = clamp_to_slice(&c, 0).unwrap();
        assert!((0..4).all(|a| clamped.eval(a)));
    }

    #[test]
    fn monotonize_preserves_slice_circuits() {
        // Clamped NOT x1 is a 1-slice function on 2 inputs.
        let mut b = CircuitBuilder::new(2);
        let out = b.neg(WireSource::Var(1));
        let c = b.finish(out);
        let sliced = clamp_to_slice(&c, 1).unwrap();
        let mono = monotonize_slice(&sliced, 1).unwrap();
        assert!(!mono.has_neg());
        assert_eq!(mono.truth_table(), sliced.truth_table());

        // Already-monotone circuits survive for all n <= 4 and all levels.
        for n in 1..=4usize {
            let mut b = CircuitBuilder::new(n);
            let mut acc = WireSource::Var(1);
            for i in 2..=n as u32 {
                acc = b.or(acc, WireSource::Var(i));
            }
            let c = b.finish(acc);
            for level in 0..=n {
                let sliced = clamp_to_slice(&c, level).unwrap();
                let mono = monotonize_slice(&sliced, level).unwrap();
                assert!(!mono.has_neg());
                assert_eq!(mono.truth_table(), sliced.truth_table());
            }
        }
    }

    #[test]
    fn monotonize_rejects_non_slice() {
        let c = xor2();
        assert!(matches!(monotonize_slice(&c, 1), Err(CircuitError::NotSliceFunction { .. })));
    }

    #[test]
    fn dual_rail_xor_small() {
        // Single rail: identity.
        let c = dual_rail_xor_circuit(1);
        assert!(c.eval_bits(&[true, false]));
        assert!(!c.eval_bits(&[false, true]));

        // Two and three rails against real parity, rails complementary.
        for m in 2..=3usize {
            let c = dual_rail_xor_circuit(m);
            assert!(!c.has_neg());
            for mask in 0..1u32 << m {
                let mut inputs = vec![false; 2 * m];
                for i in 0..m {
                    let bit = mask >> i & 1 == 1;
                    inputs[i] = bit;
                    inputs[m + i] = !bit;
                }
                assert_eq!(c.eval_bits(&inputs), mask.count_ones() % 2 == 1);
            }
        }
    }

    #[test]
    fn structure_assignment_example() {
        let cat = VarCatalog::circuit(2, 1, false);
        let mut b = CircuitBuilder::new(2);
        let g = b.and(WireSource::Var(1), WireSource::Var(2));
        let c = b.finish(g);
        let asg = circuit_to_structure_assignment(&c, 1, &cat).unwrap();
        let val = |sym| asg.value(&cat, cat.var(sym)).unwrap();
        assert!(val(VarSym::IsAnd { v: 1 }));
        assert!(!val(VarSym::IsNeg { v: 1 }) && !val(VarSym::IsOr { v: 1 }));
        assert!(val(VarSym::IsFromVar { v: 1, a: 1 }) && val(VarSym::IsFromVar { v: 1, a: 2 }));
        assert!(val(VarSym::IsVar { v: 1, a: 1, i: 1 }));
        assert!(val(VarSym::IsVar { v: 1, a: 2, i: 2 }));
        assert!(!val(VarSym::IsVar { v: 1, a: 1, i: 2 }));
        assert!(!val(VarSym::IsVar { v: 1, a: 2, i: 1 }));
    }

    #[test]
    fn pad_keeps_function() {
        let c = xor2();
        let padded = pad_to_size(&c, 7).unwrap();
        assert_eq!(padded.size(), 7);
        padded.validate().unwrap();
        assert_eq!(padded.truth_table(), c.truth_table());
    }

    #[test]
    fn truth_table_hex() {
        let t = xor2().truth_table();
        assert_eq!(t.to_hex(), "6");
        assert_eq!(TruthTable::from_hex(2, "6").unwrap(), t);
        let t1 = TruthTable::constant(1, false);
        assert_eq!(t1.to_hex(), "0");
        assert_eq!(TruthTable::from_hex(1, "0").unwrap(), t1);
    }
}
