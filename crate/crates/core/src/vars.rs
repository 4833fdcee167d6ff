//! Variable catalogs: the named universes the formula generators work over.
//!
//! A catalog enumerates base variables in a documented order and pairs each
//! one with a bar partner. Ids are stable: base variable `i` gets id `i`,
//! its bar partner gets id `i + base_count`. Within the circuit catalog the
//! families are ordered structure, extension (CNF only), evaluation;
//! within a family entries are ordered lexicographically by
//! `(v, a, i/u/alpha)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::poly::VarId;

/// Symbol of a base variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarSym {
    /// Gate `v` is a negation.
    IsNeg { v: u32 },
    /// Gate `v` is a disjunction.
    IsOr { v: u32 },
    /// Gate `v` is a conjunction.
    IsAnd { v: u32 },
    /// Wire `a` of gate `v` reads a constant.
    IsFromConst { v: u32, a: u8 },
    /// Wire `a` of gate `v` reads an input variable.
    IsFromVar { v: u32, a: u8 },
    /// Wire `a` of gate `v` reads another gate.
    IsFromGate { v: u32, a: u8 },
    /// The constant carried by wire `a` of gate `v` (if it reads one).
    ConstVal { v: u32, a: u8 },
    /// Wire `a` of gate `v` reads input `i`.
    IsVar { v: u32, a: u8, i: u32 },
    /// Wire `a` of gate `v` reads gate `u < v`.
    IsGate { v: u32, a: u8, u: u32 },
    /// CNF extension: wire `a` of gate `v` reads one of inputs `1..=i`.
    IsVarLess { v: u32, a: u8, i: u32 },
    /// CNF extension: wire `a` of gate `v` reads one of gates `1..=u`.
    IsGateLess { v: u32, a: u8, u: u32 },
    /// Value computed at gate `v` on input `alpha`.
    OutWire { v: u32, alpha: u32 },
    /// Value carried on wire `a` of gate `v` on input `alpha`.
    InWire { v: u32, a: u8, alpha: u32 },
    /// Variable of an XOR constraint system.
    Y { i: u32 },
}

impl VarSym {
    pub fn is_structure(&self) -> bool {
        matches!(
            self,
            VarSym::IsNeg { .. }
                | VarSym::IsOr { .. }
                | VarSym::IsAnd { .. }
                | VarSym::IsFromConst { .. }
                | VarSym::IsFromVar { .. }
                | VarSym::IsFromGate { .. }
                | VarSym::ConstVal { .. }
                | VarSym::IsVar { .. }
                | VarSym::IsGate { .. }
        )
    }

    pub fn is_extension(&self) -> bool {
        matches!(self, VarSym::IsVarLess { .. } | VarSym::IsGateLess { .. })
    }

    pub fn is_evaluation(&self) -> bool {
        matches!(self, VarSym::OutWire { .. } | VarSym::InWire { .. })
    }
}

fn alpha_bits(alpha: u32, n: usize) -> String {
    (0..n)
        .map(|i| if alpha >> (n - 1 - i) & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Formats a symbol; `n` is the input arity used to print `alpha`.
fn sym_name(sym: &VarSym, n: usize) -> String {
    match *sym {
        VarSym::IsNeg { v } => format!("isneg({v})"),
        VarSym::IsOr { v } => format!("isor({v})"),
        VarSym::IsAnd { v } => format!("isand({v})"),
        VarSym::IsFromConst { v, a } => format!("isfromconst({v},{a})"),
        VarSym::IsFromVar { v, a } => format!("isfromvar({v},{a})"),
        VarSym::IsFromGate { v, a } => format!("isfromgate({v},{a})"),
        VarSym::ConstVal { v, a } => format!("constval({v},{a})"),
        VarSym::IsVar { v, a, i } => format!("isvar({v},{a},{i})"),
        VarSym::IsGate { v, a, u } => format!("isgate({v},{a},{u})"),
        VarSym::IsVarLess { v, a, i } => format!("isvarless({v},{a},{i})"),
        VarSym::IsGateLess { v, a, u } => format!("isgateless({v},{a},{u})"),
        VarSym::OutWire { v, alpha } => format!("outwire({v},{})", alpha_bits(alpha, n)),
        VarSym::InWire { v, a, alpha } => format!("inwire({v},{a},{})", alpha_bits(alpha, n)),
        VarSym::Y { i } => format!("y({i})"),
    }
}

/// An ordered universe of base variables plus their bar partners.
#[derive(Debug, Clone)]
pub struct VarCatalog {
    /// Circuit input arity (0 for plain XOR catalogs).
    pub n: usize,
    /// Gate budget (0 for plain XOR catalogs).
    pub s: usize,
    syms: Vec<VarSym>,
    index: HashMap<VarSym, u32>,
}

impl VarCatalog {
    fn from_syms(n: usize, s: usize, syms: Vec<VarSym>) -> Arc<Self> {
        let index = syms
            .iter()
            .enumerate()
            .map(|(i, sym)| (*sym, i as u32))
            .collect();
        Arc::new(VarCatalog { n, s, syms, index })
    }

    /// Catalog of the circuit-size formula for `s` gates over `n` inputs.
    pub fn circuit(n: usize, s: usize, with_extension: bool) -> Arc<Self> {
        let mut syms = Vec::new();
        let gates = 1..=s as u32;
        let wires = [1u8, 2u8];
        // Structure families.
        syms.extend(gates.clone().map(|v| VarSym::IsNeg { v }));
        syms.extend(gates.clone().map(|v| VarSym::IsOr { v }));
        syms.extend(gates.clone().map(|v| VarSym::IsAnd { v }));
        for v in gates.clone() {
            for a in wires {
                syms.push(VarSym::IsFromConst { v, a });
            }
        }
        for v in gates.clone() {
            for a in wires {
                syms.push(VarSym::IsFromVar { v, a });
            }
        }
        for v in gates.clone() {
            for a in wires {
                syms.push(VarSym::IsFromGate { v, a });
            }
        }
        for v in gates.clone() {
            for a in wires {
                syms.push(VarSym::ConstVal { v, a });
            }
        }
        for v in gates.clone() {
            for a in wires {
                for i in 1..=n as u32 {
                    syms.push(VarSym::IsVar { v, a, i });
                }
            }
        }
        for v in gates.clone() {
            for a in wires {
                for u in 1..v {
                    syms.push(VarSym::IsGate { v, a, u });
                }
            }
        }
        // Extension families (CNF encoding only).
        if with_extension {
            for v in gates.clone() {
                for a in wires {
                    for i in 1..=n as u32 {
                        syms.push(VarSym::IsVarLess { v, a, i });
                    }
                }
            }
            for v in gates.clone() {
                for a in wires {
                    for u in 1..v {
                        syms.push(VarSym::IsGateLess { v, a, u });
                    }
                }
            }
        }
        // Evaluation families.
        for v in gates.clone() {
            for alpha in 0..(1u32 << n) {
                syms.push(VarSym::OutWire { v, alpha });
            }
        }
        for v in gates {
            for a in wires {
                for alpha in 0..(1u32 << n) {
                    syms.push(VarSym::InWire { v, a, alpha });
                }
            }
        }
        Self::from_syms(n, s, syms)
    }

    /// Catalog of an XOR constraint system over `m` variables.
    pub fn xor(m: usize) -> Arc<Self> {
        Self::from_syms(0, 0, (1..=m as u32).map(|i| VarSym::Y { i }).collect())
    }

    pub fn base_count(&self) -> usize {
        self.syms.len()
    }

    pub fn total_count(&self) -> usize {
        2 * self.syms.len()
    }

    pub fn var(&self, sym: VarSym) -> VarId {
        VarId(*self.index.get(&sym).unwrap_or_else(|| panic!("symbol {sym:?} not in catalog")))
    }

    pub fn try_var(&self, sym: VarSym) -> Option<VarId> {
        self.index.get(&sym).map(|&i| VarId(i))
    }

    /// Bar partner of `id` (defined for every cataloged variable).
    pub fn bar(&self, id: VarId) -> VarId {
        let b = self.base_count() as u32;
        if id.0 < b {
            VarId(id.0 + b)
        } else {
            VarId(id.0 - b)
        }
    }

    pub fn is_bar(&self, id: VarId) -> bool {
        id.index() >= self.base_count()
    }

    /// Strips a bar, returning the base id.
    pub fn base(&self, id: VarId) -> VarId {
        if self.is_bar(id) {
            self.bar(id)
        } else {
            id
        }
    }

    /// Symbol of `id` together with whether `id` is the bar partner.
    pub fn sym(&self, id: VarId) -> (VarSym, bool) {
        let bar = self.is_bar(id);
        (self.syms[self.base(id).index()], bar)
    }

    pub fn name(&self, id: VarId) -> String {
        let (sym, bar) = self.sym(id);
        let base = sym_name(&sym, self.n);
        if bar {
            format!("~{base}")
        } else {
            base
        }
    }

    /// Resolves a printed name back to an id.
    pub fn resolve(&self, name: &str) -> Option<VarId> {
        let (bar, base) = match name.strip_prefix('~') {
            Some(rest) => (true, rest),
            None => (false, name),
        };
        let id = self
            .base_syms()
            .position(|sym| sym_name(&sym, self.n) == base)
            .map(|i| VarId(i as u32))?;
        Some(if bar { self.bar(id) } else { id })
    }

    pub fn base_syms(&self) -> impl Iterator<Item = VarSym> + '_ {
        self.syms.iter().copied()
    }

    /// All base ids in catalog order.
    pub fn base_ids(&self) -> impl Iterator<Item = VarId> {
        (0..self.base_count() as u32).map(VarId)
    }

    pub fn structure_ids(&self) -> impl Iterator<Item = VarId> + '_ {
        self.base_ids()
            .filter(|&id| self.syms[id.index()].is_structure())
    }

    pub fn evaluation_ids(&self) -> impl Iterator<Item = VarId> + '_ {
        self.base_ids()
            .filter(|&id| self.syms[id.index()].is_evaluation())
    }

    pub fn extension_ids(&self) -> impl Iterator<Item = VarId> + '_ {
        self.base_ids()
            .filter(|&id| self.syms[id.index()].is_extension())
    }
}

impl fmt::Display for VarCatalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "catalog(n={}, s={}, {} base vars)", self.n, self.s, self.base_count())
    }
}

/// Boolean assignment over base variables; bar values are derived.
#[derive(Debug, Clone, Default)]
pub struct Assignment {
    values: HashMap<VarId, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment { values: HashMap::new() }
    }

    pub fn set(&mut self, id: VarId, b: bool) {
        self.values.insert(id, b);
    }

    /// Value of `id`, complementing through the bar pairing.
    pub fn value(&self, catalog: &VarCatalog, id: VarId) -> Option<bool> {
        let base = catalog.base(id);
        let v = self.values.get(&base).copied()?;
        Some(if catalog.is_bar(id) { !v } else { v })
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, bool)> + '_ {
        self.values.iter().map(|(&v, &b)| (v, b))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn structure_count_matches_closed_form() {
        // 3s + 6s + 2s + 2sn + 2*C(s,2)
        for (n, s) in [(1usize, 1usize), (2, 3), (3, 4)] {
            let cat = VarCatalog::circuit(n, s, false);
            let expected = 11 * s + 2 * s * n + s * (s - 1);
            assert_eq!(cat.structure_ids().count(), expected);
            assert_eq!(cat.evaluation_ids().count(), 3 * s << n);
            assert_eq!(cat.extension_ids().count(), 0);
        }
    }

    #[test]
    fn bar_pairing_is_involution() {
        let cat = VarCatalog::circuit(2, 2, true);
        for id in cat.base_ids() {
            let b = cat.bar(id);
            assert_ne!(b, id);
            assert_eq!(cat.bar(b), id);
            assert!(cat.is_bar(b));
        }
    }

    #[test]
    fn names_resolve_back() {
        let cat = VarCatalog::circuit(2, 2, true);
        for id in cat.base_ids() {
            assert_eq!(cat.resolve(&cat.name(id)), Some(id));
            let bar = cat.bar(id);
            assert_eq!(cat.resolve(&cat.name(bar)), Some(bar));
        }
        assert_eq!(cat.name(cat.var(VarSym::OutWire { v: 2, alpha: 1 })), "outwire(2,01)");
    }

    #[test]
    fn assignment_respects_bars() {
        let cat = VarCatalog::xor(3);
        let y1 = cat.var(VarSym::Y { i: 1 });
        let mut a = Assignment::new();
        a.set(y1, true);
        assert_eq!(a.value(&cat, y1), Some(true));
        assert_eq!(a.value(&cat, cat.bar(y1)), Some(false));
        assert_eq!(a.value(&cat, cat.var(VarSym::Y { i: 2 })), None);
    }
}
