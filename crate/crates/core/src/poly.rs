//! Sparse multivariate polynomials over an exact scalar.
//!
//! Monomials carry explicit exponents: proof verification expands products
//! without reducing modulo the Boolean axioms, so `x^2` must be
//! representable and distinct from `x`. Multilinearity is a property, not a
//! type; [`Polynomial::multilinearize`] reduces exponents and returns the
//! Boolean-axiom witness of the reduction.
//!
//! Term order is graded lexicographic by variable index, which makes every
//! printed form and every iteration deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::scalar::{from_int, Scalar};

/// Identifier of a variable inside some catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Product of variable powers, sorted by variable index, exponents >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(VarId, u32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { factors: Vec::new() }
    }

    pub fn var(v: VarId) -> Self {
        Monomial { factors: vec![(v, 1)] }
    }

    /// Builds a multilinear monomial from a set of variables.
    pub fn from_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        let set: BTreeSet<VarId> = vars.into_iter().collect();
        Monomial { factors: set.into_iter().map(|v| (v, 1)).collect() }
    }

    pub fn from_factors(mut factors: Vec<(VarId, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(VarId, u32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((lv, le)) if *lv == v => *le += e,
                _ => merged.push((v, e)),
            }
        }
        Monomial { factors: merged }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.factors.iter().map(|&(_, e)| e).sum()
    }

    pub fn is_multilinear(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.factors
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        self.factors.iter().map(|&(v, _)| v)
    }

    pub fn exponent_of(&self, v: VarId) -> u32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.exponent_of(v) > 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(VarId, u32)> = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() && j < other.factors.len() {
            let (a, ea) = self.factors[i];
            let (b, eb) = other.factors[j];
            if a == b {
                out.push((a, ea + eb));
                i += 1;
                j += 1;
            } else if a < b {
                out.push((a, ea));
                i += 1;
            } else {
                out.push((b, eb));
                j += 1;
            }
        }
        out.extend_from_slice(&self.factors[i..]);
        out.extend_from_slice(&other.factors[j..]);
        Monomial { factors: out }
    }

    /// Removes one occurrence of each variable in `vars` (used when a
    /// divisor monomial is known to divide `self`).
    pub fn divide_by(&self, divisor: &Monomial) -> Option<Monomial> {
        let mut out = self.factors.clone();
        for &(v, e) in &divisor.factors {
            let i = out.binary_search_by_key(&v, |&(w, _)| w).ok()?;
            if out[i].1 < e {
                return None;
            }
            out[i].1 -= e;
        }
        out.retain(|&(_, e)| e > 0);
        Some(Monomial { factors: out })
    }

    pub fn divisible_by(&self, divisor: &Monomial) -> bool {
        divisor
            .factors
            .iter()
            .all(|&(v, e)| self.exponent_of(v) >= e)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    /// Graded order: total degree first, then lexicographic on the sorted
    /// factor list.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

/// Sparse polynomial: monomial -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C> Default for Polynomial<C> {
    fn default() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }
}

/// Errors from polynomial operations.
#[derive(Debug, Clone, thiserror::Error)]
pub enum PolyError {
    #[error("variable v{0} has no assigned value")]
    UnassignedVariable(u32),
    #[error("polynomial does not vanish on the Boolean cube (witness assignment sets {on:?} to 1)")]
    NotBooleanZero { on: Vec<u32> },
    #[error("substitution maps v{var} and its bar partner to non-complementary images")]
    BarInconsistency { var: u32 },
    #[error(transparent)]
    Budget(#[from] crate::budget::BudgetError),
    #[error("cannot parse polynomial: {0}")]
    Parse(String),
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_int(v: i64) -> Self {
        Self::constant(from_int(v))
    }

    pub fn var(v: VarId) -> Self {
        let mut p = Self::default();
        p.add_term(Monomial::var(v), C::one());
        p
    }

    /// `1 - x`.
    pub fn one_minus_var(v: VarId) -> Self {
        let mut p = Self::one();
        p.add_term(Monomial::var(v), -C::one());
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        let mut p = Self::default();
        p.add_term(m, C::one());
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(terms: I) -> Self {
        let mut p = Self::default();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_multilinear(&self) -> bool {
        self.terms.keys().all(|m| m.is_multilinear())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn support(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.vars()).collect()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> C {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(C::zero)
    }

    /// Adds `c * m` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut out = Self::default();
        for (m, k) in &self.terms {
            let v = k.clone() * c.clone();
            if !v.is_zero() {
                out.terms.insert(m.clone(), v);
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        let mut out = Self::default();
        for (mm, k) in &self.terms {
            out.add_term(mm.mul(m), k.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::default();
        self.mul_into(other, &mut out);
        out
    }

    /// Accumulates `self * other` into `acc`.
    pub fn mul_into(&self, other: &Self, acc: &mut Self) {
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        for (m, c) in &small.terms {
            for (mm, cc) in &large.terms {
                acc.add_term(m.mul(mm), c.clone() * cc.clone());
            }
        }
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Evaluates under a total assignment given by `value`.
    pub fn evaluate<F>(&self, value: F) -> Result<C, PolyError>
    where
        F: Fn(VarId) -> Option<C>,
    {
        let mut acc = C::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for &(v, e) in m.factors() {
                let val = value(v).ok_or(PolyError::UnassignedVariable(v.0))?;
                for _ in 0..e {
                    term = term * val.clone();
                }
            }
            acc = acc + term;
        }
        Ok(acc)
    }

    /// Evaluates under a Boolean assignment: a monomial survives iff all of
    /// its variables are set.
    pub fn eval_bool<F>(&self, truth: F) -> Result<C, PolyError>
    where
        F: Fn(VarId) -> Option<bool>,
    {
        let mut acc = C::zero();
        'terms: for (m, c) in &self.terms {
            for &(v, _) in m.factors() {
                match truth(v) {
                    Some(true) => {}
                    Some(false) => continue 'terms,
                    None => return Err(PolyError::UnassignedVariable(v.0)),
                }
            }
            acc = acc + c.clone();
        }
        Ok(acc)
    }

    /// Reduces all exponents to one using `x^2 = x + (x^2 - x)`.
    ///
    /// Returns the reduced polynomial together with the witness list
    /// `(q_i, x_i)` such that `self = reduced + sum q_i * (x_i^2 - x_i)`
    /// holds as a formal identity, each summand of degree at most
    /// `deg(self)`.
    pub fn multilinearize(&self) -> (Self, Vec<(Self, VarId)>) {
        let mut reduced = Self::default();
        let mut witness: BTreeMap<VarId, Self> = BTreeMap::new();
        let mut queue: Vec<(Monomial, C)> =
            self.terms.iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        while let Some((m, c)) = queue.pop() {
            match m.factors().iter().find(|&&(_, e)| e >= 2) {
                None => reduced.add_term(m, c),
                Some(&(v, _)) => {
                    // m = v^e * r with e >= 2:
                    //   m = v^(e-1) * r + v^(e-2) * r * (v^2 - v)
                    let rest = m.divide_by(&Monomial::var(v)).expect("factor present");
                    let wit_mono = rest.divide_by(&Monomial::var(v)).expect("exponent >= 2");
                    witness
                        .entry(v)
                        .or_insert_with(Self::zero)
                        .add_term(wit_mono, c.clone());
                    queue.push((rest, c));
                }
            }
        }
        let witness = witness
            .into_iter()
            .filter(|(_, q)| !q.is_zero())
            .map(|(v, q)| (q, v))
            .collect();
        (reduced, witness)
    }

    /// Writes a polynomial that vanishes on the whole Boolean cube as a
    /// combination `sum q_i * (x_i^2 - x_i)`.
    pub fn decompose_boolean_zero(&self) -> Result<Vec<(Self, VarId)>, PolyError> {
        let (reduced, witness) = self.multilinearize();
        if reduced.is_zero() {
            return Ok(witness);
        }
        // A nonzero multilinear polynomial is nonzero at the point that sets
        // exactly the variables of its minimal monomial: only that monomial
        // survives, by minimality of its degree.
        let min_mono = reduced.terms.keys().next().expect("nonzero").clone();
        Err(PolyError::NotBooleanZero {
            on: min_mono.vars().map(|v| v.0).collect(),
        })
    }

    /// Plain composition with a substitution: no reduction of any kind, so
    /// formal identities are preserved exactly.
    pub fn compose(&self, subst: &Substitution<C>) -> Self {
        let mut out = Self::default();
        'terms: for (m, c) in &self.terms {
            // Multiply images factor by factor, keeping constants folded.
            let mut acc = Self::constant(c.clone());
            for &(v, e) in m.factors() {
                for _ in 0..e {
                    match subst.image_of(v) {
                        None => acc = acc.mul_monomial(&Monomial::var(v), &C::one()),
                        Some(Image::Bit(false)) => continue 'terms,
                        Some(Image::Bit(true)) => {}
                        Some(Image::Var(w)) => {
                            acc = acc.mul_monomial(&Monomial::var(*w), &C::one())
                        }
                        Some(Image::Poly(p)) => acc = acc.mul(p),
                    }
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    /// Composition followed by multilinear reduction: the substitution
    /// operation on Boolean-valued polynomials.
    pub fn substitute(&self, subst: &Substitution<C>) -> Self {
        self.compose(subst).multilinearize().0
    }

    /// Renames variables through `map` (used to migrate a polynomial
    /// between catalogs over the same symbols).
    pub fn rename<F>(&self, map: F) -> Self
    where
        F: Fn(VarId) -> VarId,
    {
        let mut out = Self::default();
        for (m, c) in &self.terms {
            let factors = m.factors().iter().map(|&(v, e)| (map(v), e)).collect();
            out.add_term(Monomial::from_factors(factors), c.clone());
        }
        out
    }

    /// Canonical text form: terms in ascending graded-lex order joined by
    /// ` + `, each `coeff`, `coeff*x` or `coeff*x^e`.
    pub fn to_text<F>(&self, name: F) -> String
    where
        F: Fn(VarId) -> String,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}", c);
            for &(v, e) in m.factors() {
                if e == 1 {
                    let _ = write!(out, "*{}", name(v));
                } else {
                    let _ = write!(out, "*{}^{}", name(v), e);
                }
            }
        }
        out
    }
}

impl<C: Scalar + std::str::FromStr> Polynomial<C> {
    /// Parses the canonical text form back. `resolve` maps a variable name
    /// to its id.
    pub fn parse<F>(text: &str, resolve: F) -> Result<Self, PolyError>
    where
        F: Fn(&str) -> Option<VarId>,
    {
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for term in text.split(" + ") {
            let mut coeff: Option<C> = None;
            let mut factors: Vec<(VarId, u32)> = Vec::new();
            for (i, piece) in term.split('*').enumerate() {
                let piece = piece.trim();
                if i == 0 {
                    coeff = Some(
                        piece
                            .parse()
                            .map_err(|_| PolyError::Parse(format!("bad coefficient `{piece}`")))?,
                    );
                } else {
                    let (name, exp) = match piece.rsplit_once('^') {
                        Some((n, e)) if e.chars().all(|c| c.is_ascii_digit()) => (
                            n,
                            e.parse::<u32>()
                                .map_err(|_| PolyError::Parse(format!("bad exponent `{e}`")))?,
                        ),
                        _ => (piece, 1),
                    };
                    let v = resolve(name)
                        .ok_or_else(|| PolyError::Parse(format!("unknown variable `{name}`")))?;
                    factors.push((v, exp));
                }
            }
            out.add_term(
                Monomial::from_factors(factors),
                coeff.ok_or_else(|| PolyError::Parse("empty term".into()))?,
            );
        }
        Ok(out)
    }
}

/// Image of a variable under a substitution.
#[derive(Debug, Clone, PartialEq)]
pub enum Image<C> {
    Bit(bool),
    Var(VarId),
    Poly(Polynomial<C>),
}

impl<C: Scalar> Image<C> {
    pub fn to_poly(&self) -> Polynomial<C> {
        match self {
            Image::Bit(false) => Polynomial::zero(),
            Image::Bit(true) => Polynomial::one(),
            Image::Var(v) => Polynomial::var(*v),
            Image::Poly(p) => p.clone(),
        }
    }

    /// `1 - image`, the image a bar partner must receive.
    pub fn complement(&self, bar_of: impl Fn(VarId) -> Option<VarId>) -> Image<C> {
        match self {
            Image::Bit(b) => Image::Bit(!b),
            Image::Var(v) => match bar_of(*v) {
                Some(w) => Image::Var(w),
                None => Image::Poly(Polynomial::one_minus_var(*v)),
            },
            Image::Poly(p) => Image::Poly(Polynomial::one().sub(p)),
        }
    }
}

/// Map from variables to images. Bar consistency is the caller's contract,
/// checked through [`Substitution::validate_bars`].
#[derive(Debug, Clone, Default)]
pub struct Substitution<C> {
    map: BTreeMap<VarId, Image<C>>,
}

impl<C: Scalar> Substitution<C> {
    pub fn new() -> Self {
        Substitution { map: BTreeMap::new() }
    }

    pub fn set(&mut self, v: VarId, image: Image<C>) {
        self.map.insert(v, image);
    }

    pub fn set_bit(&mut self, v: VarId, b: bool) {
        self.set(v, Image::Bit(b));
    }

    pub fn image_of(&self, v: VarId) -> Option<&Image<C>> {
        self.map.get(&v)
    }

    pub fn domain(&self) -> impl Iterator<Item = VarId> + '_ {
        self.map.keys().copied()
    }

    pub fn entries(&self) -> impl Iterator<Item = (VarId, &Image<C>)> {
        self.map.iter().map(|(v, i)| (*v, i))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Sets `v` and its bar partner to complementary images, reporting a
    /// conflict if the partner already has a different image.
    pub fn set_paired(
        &mut self,
        v: VarId,
        bar: VarId,
        image: Image<C>,
        bar_of: impl Fn(VarId) -> Option<VarId>,
    ) -> Result<(), PolyError> {
        let comp = image.complement(&bar_of);
        if let Some(prev) = self.map.get(&v) {
            if *prev != image {
                return Err(PolyError::BarInconsistency { var: v.0 });
            }
        }
        if let Some(prev) = self.map.get(&bar) {
            if *prev != comp {
                return Err(PolyError::BarInconsistency { var: v.0 });
            }
        }
        self.map.insert(v, image);
        self.map.insert(bar, comp);
        Ok(())
    }

    /// Checks that whenever both `x` and its bar partner have images, the
    /// images are complementary (compared after full expansion).
    pub fn validate_bars(
        &self,
        bar_of: impl Fn(VarId) -> Option<VarId>,
    ) -> Result<(), PolyError> {
        for (&v, image) in &self.map {
            let Some(bar) = bar_of(v) else { continue };
            if let Some(bar_image) = self.map.get(&bar) {
                let sum = image.to_poly().add(&bar_image.to_poly());
                if sum != Polynomial::one() {
                    return Err(PolyError::BarInconsistency { var: v.0 });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{q, Coeff, Poly};
    use proptest::prelude::*;

    fn v(i: u32) -> VarId {
        VarId(i)
    }

    fn boolean_axiom(x: VarId) -> Poly {
        // x^2 - x
        Poly::from_terms([
            (Monomial::from_factors(vec![(x, 2)]), q(1)),
            (Monomial::var(x), q(-1)),
        ])
    }

    #[test]
    fn graded_lex_order() {
        let x1 = Monomial::var(v(1));
        let x2 = Monomial::var(v(2));
        let x1x2 = Monomial::from_vars([v(1), v(2)]);
        let x1sq = Monomial::from_factors(vec![(v(1), 2)]);
        assert!(Monomial::one() < x1);
        assert!(x1 < x2);
        assert!(x2 < x1sq);
        assert!(x1x2 < x1sq);
    }

    #[test]
    fn multilinearize_single_reduction() {
        // x^2 - x -> (0, [(1, x)])
        let p = boolean_axiom(v(1));
        let (red, wit) = p.multilinearize();
        assert!(red.is_zero());
        assert_eq!(wit.len(), 1);
        assert_eq!(wit[0].0, Poly::one());
        assert_eq!(wit[0].1, v(1));
    }

    #[test]
    fn multilinearize_xy_step() {
        // x^2 y - x y -> (0, [(y, x)])
        let p = Poly::from_terms([
            (Monomial::from_factors(vec![(v(1), 2), (v(2), 1)]), q(1)),
            (Monomial::from_vars([v(1), v(2)]), q(-1)),
        ]);
        let (red, wit) = p.multilinearize();
        assert!(red.is_zero());
        assert_eq!(wit, vec![(Poly::var(v(2)), v(1))]);
    }

    #[test]
    fn multilinearize_cube_witness_identity() {
        // x^3 -> (x, witness), verified by expanding the witness.
        let p = Poly::monomial(Monomial::from_factors(vec![(v(1), 3)]));
        let (red, wit) = p.multilinearize();
        assert_eq!(red, Poly::var(v(1)));
        let mut rebuilt = red.clone();
        for (qi, xi) in &wit {
            rebuilt.add_assign(&qi.mul(&boolean_axiom(*xi)));
            let bound = p.degree().unwrap();
            assert!(qi.degree().unwrap() + 2 <= bound);
        }
        assert_eq!(rebuilt, p);
    }

    #[test]
    fn decompose_boolean_zero_cases() {
        assert!(Poly::zero().decompose_boolean_zero().unwrap().is_empty());

        let p = boolean_axiom(v(1));
        let wit = p.decompose_boolean_zero().unwrap();
        assert_eq!(wit, vec![(Poly::one(), v(1))]);

        // x^2 y + x y^2 - 2xy vanishes on the cube; identity by expansion.
        let p = Poly::from_terms([
            (Monomial::from_factors(vec![(v(1), 2), (v(2), 1)]), q(1)),
            (Monomial::from_factors(vec![(v(1), 1), (v(2), 2)]), q(1)),
            (Monomial::from_vars([v(1), v(2)]), q(-2)),
        ]);
        let wit = p.decompose_boolean_zero().unwrap();
        let mut rebuilt = Poly::zero();
        for (qi, xi) in &wit {
            rebuilt.add_assign(&qi.mul(&boolean_axiom(*xi)));
        }
        assert_eq!(rebuilt, p);

        // x + 1 does not vanish.
        let p = Poly::var(v(1)).add(&Poly::one());
        assert!(p.decompose_boolean_zero().is_err());
    }

    #[test]
    fn substitute_bit_and_collapse() {
        // p = x + y with x -> 1 gives 1 + y.
        let p = Poly::var(v(1)).add(&Poly::var(v(2)));
        let mut s = Subst::new();
        s.set_bit(v(1), true);
        assert_eq!(p.substitute(&s), Poly::one().add(&Poly::var(v(2))));

        // p = x*y with x -> y collapses to y.
        let p = Poly::monomial(Monomial::from_vars([v(1), v(2)]));
        let mut s = Subst::new();
        s.set(v(1), Image::Var(v(2)));
        assert_eq!(p.substitute(&s), Poly::var(v(2)));
    }

    type Subst = Substitution<Coeff>;

    #[test]
    fn substitute_xor_polynomial() {
        // (1 - 2x) with x -> y1 + y2 - 2 y1 y2 equals (1 - 2y1)(1 - 2y2).
        let x = v(0);
        let (y1, y2) = (v(1), v(2));
        let xor = Poly::from_terms([
            (Monomial::var(y1), q(1)),
            (Monomial::var(y2), q(1)),
            (Monomial::from_vars([y1, y2]), q(-2)),
        ]);
        let p = Poly::one().sub(&Poly::var(x).scale(&q(2)));
        let mut s = Subst::new();
        s.set(x, Image::Poly(xor));
        let lhs = p.substitute(&s);
        let a = Poly::one().sub(&Poly::var(y1).scale(&q(2)));
        let b = Poly::one().sub(&Poly::var(y2).scale(&q(2)));
        assert_eq!(lhs, a.mul(&b));
    }

    #[test]
    fn evaluate_requires_total_assignment() {
        let p = Poly::var(v(1)).mul(&Poly::var(v(2)));
        let val = p.evaluate(|w| if w == v(1) { Some(q(1)) } else { None });
        assert!(matches!(val, Err(PolyError::UnassignedVariable(2))));
        let val = p
            .evaluate(|w| Some(if w == v(1) { q(1) } else { q(1) }))
            .unwrap();
        assert_eq!(val, q(1));
    }

    #[test]
    fn text_round_trip() {
        let p = Poly::from_terms([
            (Monomial::one(), q(1)),
            (Monomial::var(v(2)), -q(2)),
            (Monomial::from_factors(vec![(v(1), 2)]), q(1) / q(3)),
        ]);
        let name = |w: VarId| format!("v{}", w.0);
        let text = p.to_text(name);
        assert_eq!(text, "1 + -2*v2 + 1/3*v1^2");
        let back = Poly::parse(&text, |n| {
            n.strip_prefix('v').and_then(|i| i.parse().ok()).map(VarId)
        })
        .unwrap();
        assert_eq!(back, p);
    }

    fn arb_poly() -> impl Strategy<Value = Poly> {
        proptest::collection::vec(
            (
                proptest::collection::vec((0u32..5, 1u32..3), 0..3),
                -4i64..5,
            ),
            0..6,
        )
        .prop_map(|terms| {
            Poly::from_terms(terms.into_iter().map(|(factors, c)| {
                (
                    Monomial::from_factors(
                        factors.into_iter().map(|(i, e)| (VarId(i), e)).collect(),
                    ),
                    q(c),
                )
            }))
        })
    }

    proptest! {
        #[test]
        fn multilinearize_idempotent_and_boolean_equal(p in arb_poly()) {
            let (red, _) = p.multilinearize();
            let (red2, wit2) = red.multilinearize();
            prop_assert_eq!(&red2, &red);
            prop_assert!(wit2.is_empty());
            // Agreement with the original on every Boolean point.
            let vars: Vec<VarId> = p.support().into_iter().collect();
            prop_assert!(vars.len() <= 10);
            for mask in 0u32..(1 << vars.len()) {
                let value = |w: VarId| {
                    vars.iter().position(|&x| x == w).map(|i| {
                        if mask >> i & 1 == 1 { q(1) } else { q(0) }
                    })
                };
                prop_assert_eq!(p.evaluate(value).unwrap(), red.evaluate(value).unwrap());
            }
        }

        #[test]
        fn decompose_round_trips(p in arb_poly()) {
            // Force a cube-vanishing polynomial: p - ml(p).
            let (red, _) = p.multilinearize();
            let z = p.sub(&red);
            let wit = z.decompose_boolean_zero().unwrap();
            let mut rebuilt = Poly::zero();
            for (qi, xi) in &wit {
                let ax = Poly::from_terms([
                    (Monomial::from_factors(vec![(*xi, 2)]), q(1)),
                    (Monomial::var(*xi), q(-1)),
                ]);
                rebuilt.add_assign(&qi.mul(&ax));
            }
            prop_assert_eq!(rebuilt, z);
        }

        #[test]
        fn substitution_composes_on_boolean_points(p in arb_poly(), bits in proptest::collection::vec(any::<bool>(), 5)) {
            // rho: v0 -> v1, v2 -> 0; sigma: v1 -> v3.
            let mut rho = Subst::new();
            rho.set(VarId(0), Image::Var(VarId(1)));
            rho.set_bit(VarId(2), false);
            let mut sigma = Subst::new();
            sigma.set(VarId(1), Image::Var(VarId(3)));
            let two_step = p.substitute(&rho).substitute(&sigma);
            // sigma . rho as one map.
            let mut both = Subst::new();
            both.set(VarId(0), Image::Var(VarId(3)));
            both.set_bit(VarId(2), false);
            both.set(VarId(1), Image::Var(VarId(3)));
            let one_step = p.substitute(&both);
            let value = |w: VarId| bits.get(w.0 as usize).map(|&b| if b { q(1) } else { q(0) });
            prop_assert_eq!(
                two_step.evaluate(&value).unwrap(),
                one_step.evaluate(&value).unwrap()
            );
        }
    }
}
