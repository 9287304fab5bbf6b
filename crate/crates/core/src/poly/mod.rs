//! Sparse multivariate polynomials with exact coefficients over a fixed,
//! named variable set.
//!
//! A [`Ring`] declares the variable universe once; every polynomial carries a
//! handle to its ring and operations panic on mixed universes, so a typo can
//! never silently mint a new variable. Terms live in a `BTreeMap` keyed by
//! [`Monomial`], whose `Ord` is graded reverse lexicographic in the declared
//! variable order — equal polynomials therefore have identical term maps.
//!
//! [`MapSpec`] is a substitution homomorphism between two rings; its
//! [`MapSpec::pullback`] composes a polynomial on the target with the map and
//! fully expands the result.

mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::field::{FieldElement, PrimeField};
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable `{0}` is not assigned")]
    UnassignedVariable(String),
    #[error("variable `{0}` does not exist in ring {1}")]
    UnknownVariable(String, String),
    #[error("coefficient `{0}` has no image modulo {1}")]
    CoefficientNotReducible(String, u64),
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },
}

/// An ordered, named variable universe. Cheap to clone (shared).
#[derive(Debug, Clone)]
pub struct Ring {
    names: Arc<Vec<String>>,
}

impl Ring {
    /// Declares a ring with the given variables, in priority order.
    ///
    /// # Panics
    /// Panics on duplicate names.
    pub fn new<S: AsRef<str>>(names: &[S]) -> Ring {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, n) in names.iter().enumerate() {
            assert!(
                !names[..i].contains(n),
                "duplicate variable `{n}` in ring declaration"
            );
        }
        Ring {
            names: Arc::new(names),
        }
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, idx: usize) -> &str {
        &self.names[idx]
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.names.iter().map(|s| s.as_str())
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The variable `name` as a polynomial with coefficient ring `C`.
    pub fn var<C: Scalar>(&self, name: &str) -> MultiPoly<C> {
        let idx = self
            .index(name)
            .unwrap_or_else(|| panic!("variable `{name}` does not exist in ring {self}"));
        MultiPoly::from_term(self.clone(), Monomial::var(self.num_vars(), idx), C::one())
    }

    pub fn constant<C: Scalar>(&self, c: C) -> MultiPoly<C> {
        MultiPoly::from_term(self.clone(), Monomial::one(self.num_vars()), c)
    }

    pub fn zero<C: Scalar>(&self) -> MultiPoly<C> {
        MultiPoly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one<C: Scalar>(&self) -> MultiPoly<C> {
        self.constant(C::one())
    }

    fn same_universe(&self, other: &Ring) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.same_universe(other)
    }
}
impl Eq for Ring {}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z[{}]", self.names.join(","))
    }
}

/// Exponent vector over a ring's variables, compared in graded reverse
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Monomial {
        Monomial {
            exps: vec![0; num_vars],
        }
    }

    pub fn var(num_vars: usize, idx: usize) -> Monomial {
        let mut exps = vec![0; num_vars];
        exps[idx] = 1;
        Monomial { exps }
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial { exps }
    }

    #[inline]
    pub fn exponent(&self, idx: usize) -> u32 {
        self.exps[idx]
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// Degree counting only the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.exps[i]).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other
                .exps
                .iter()
                .zip(&self.exps)
                .map(|(b, a)| b - a)
                .collect(),
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        }
    }

    pub fn is_coprime_to(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Monomial {
    /// Grevlex: higher total degree wins; ties go to the vector whose
    /// rightmost nonzero exponent difference is negative.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        debug_assert_eq!(self.exps.len(), other.exps.len());
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.exps.iter().zip(&other.exps).rev() {
            match a.cmp(b) {
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
                Ordering::Equal => {}
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse polynomial: nonzero coefficients indexed by monomial.
///
/// The zero polynomial is the empty map; no zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiPoly<C: Scalar> {
    ring: Ring,
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> MultiPoly<C> {
    fn from_term(ring: Ring, m: Monomial, c: C) -> MultiPoly<C> {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { ring, terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending grevlex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&C> {
        self.terms.get(m)
    }

    pub fn constant_term(&self) -> C {
        self.terms
            .get(&Monomial::one(self.ring.num_vars()))
            .cloned()
            .unwrap_or_else(C::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::total_degree).max().unwrap_or(0)
    }

    /// Maximum degree counting only the listed variables.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(vars))
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(Monomial::total_degree);
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Largest term under grevlex (the map's last entry).
    pub fn leading_term_grevlex(&self) -> Option<(&Monomial, &C)> {
        self.terms.last_key_value()
    }

    fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    fn assert_same_ring(&self, other: &MultiPoly<C>) {
        assert!(
            self.ring.same_universe(&other.ring),
            "mixed variable universes: {} vs {}",
            self.ring,
            other.ring
        );
    }

    pub fn neg(&self) -> MultiPoly<C> {
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &MultiPoly<C>) -> MultiPoly<C> {
        self.assert_same_ring(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly<C>) -> MultiPoly<C> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MultiPoly<C>) -> MultiPoly<C> {
        self.assert_same_ring(other);
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.clone() * c2.clone());
            }
        }
        out
    }

    /// Multiply by a single term, shifting every monomial.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> MultiPoly<C> {
        if c.is_zero() {
            return self.ring.zero();
        }
        MultiPoly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &C) -> MultiPoly<C> {
        self.mul_term(&Monomial::one(self.ring.num_vars()), c)
    }

    pub fn pow(&self, n: u32) -> MultiPoly<C> {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Rebuild over a different scalar type.
    pub fn map_coefficients<D: Scalar>(&self, f: impl Fn(&C) -> D) -> MultiPoly<D> {
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }

    /// Value of the polynomial at a point of `F_p^n`, coefficients reduced
    /// mod `p`. The point assigns every ring variable by name; a missing
    /// variable that actually occurs (or a coefficient without an image in
    /// `F_p`) is an error.
    pub fn eval_mod_p(
        &self,
        field: PrimeField,
        point: &[(&str, FieldElement)],
    ) -> Result<FieldElement, PolyError> {
        let mut values: Vec<Option<u64>> = vec![None; self.ring.num_vars()];
        for (name, v) in point {
            match self.ring.index(name) {
                Some(i) => values[i] = Some(v.value()),
                None => {
                    return Err(PolyError::UnknownVariable(
                        name.to_string(),
                        self.ring.to_string(),
                    ))
                }
            }
        }
        let mut acc = 0u64;
        for (m, c) in &self.terms {
            let mut term = c
                .to_mod_p(field)
                .ok_or_else(|| PolyError::CoefficientNotReducible(c.to_string(), field.modulus()))?;
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = values[i].ok_or_else(|| {
                    PolyError::UnassignedVariable(self.ring.name(i).to_string())
                })?;
                term = field.mul(term, field.pow(v, e as u64));
            }
            acc = field.add(acc, term);
        }
        Ok(field.elt(acc))
    }
}

impl<C: Scalar> std::ops::Add for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn add(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::add(self, rhs)
    }
}
impl<C: Scalar> std::ops::Sub for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn sub(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::sub(self, rhs)
    }
}
impl<C: Scalar> std::ops::Mul for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn mul(self, rhs: Self) -> MultiPoly<C> {
        MultiPoly::mul(self, rhs)
    }
}
impl<C: Scalar> std::ops::Neg for &MultiPoly<C> {
    type Output = MultiPoly<C>;
    fn neg(self) -> MultiPoly<C> {
        MultiPoly::neg(self)
    }
}

/// A substitution homomorphism: each target-ring variable is assigned a
/// polynomial in the source ring.
#[derive(Debug, Clone)]
pub struct MapSpec<C: Scalar> {
    source: Ring,
    target: Ring,
    assignments: BTreeMap<usize, MultiPoly<C>>,
}

impl<C: Scalar> MapSpec<C> {
    pub fn new(source: Ring, target: Ring) -> MapSpec<C> {
        MapSpec {
            source,
            target,
            assignments: BTreeMap::new(),
        }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// Sets the image of a target variable; the image must live in the
    /// source ring.
    pub fn assign(&mut self, target_var: &str, image: MultiPoly<C>) -> Result<(), PolyError> {
        let idx = self.target.index(target_var).ok_or_else(|| {
            PolyError::UnknownVariable(target_var.to_string(), self.target.to_string())
        })?;
        assert!(
            image.ring().same_universe(&self.source),
            "assignment for `{target_var}` lives in {}, expected {}",
            image.ring(),
            self.source
        );
        self.assignments.insert(idx, image);
        Ok(())
    }

    pub fn assignment(&self, target_var: &str) -> Option<&MultiPoly<C>> {
        self.assignments.get(&self.target.index(target_var)?)
    }

    pub fn is_total(&self) -> bool {
        self.assignments.len() == self.target.num_vars()
    }

    /// Substitutes the assignments into `f`, producing the fully expanded
    /// composite in the source ring.
    pub fn pullback(&self, f: &MultiPoly<C>) -> Result<MultiPoly<C>, PolyError> {
        assert!(
            f.ring().same_universe(&self.target),
            "pullback input lives in {}, expected {}",
            f.ring(),
            self.target
        );
        let mut out = self.source.zero();
        for (m, c) in f.terms() {
            let mut term = self.source.constant(c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let image = self.assignments.get(&i).ok_or_else(|| {
                    PolyError::UnassignedVariable(self.target.name(i).to_string())
                })?;
                term = term.mul(&image.pow(e));
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// Image of a point under the map: evaluates every assignment.
    pub fn push_point(
        &self,
        field: PrimeField,
        point: &[(&str, FieldElement)],
    ) -> Result<Vec<FieldElement>, PolyError> {
        (0..self.target.num_vars())
            .map(|i| {
                let image = self.assignments.get(&i).ok_or_else(|| {
                    PolyError::UnassignedVariable(self.target.name(i).to_string())
                })?;
                image.eval_mod_p(field, point)
            })
            .collect()
    }
}

impl<C: Scalar> fmt::Display for MultiPoly<C> {
    /// Canonical text form: grevlex-descending terms, `-x1^3*y3 + 2` style.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            if pos == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                let mut lead = true;
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                    lead = false;
                }
                for (i, &e) in m.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    if !lead {
                        write!(f, "*")?;
                    }
                    lead = false;
                    write!(f, "{}", self.ring.name(i))?;
                    if e > 1 {
                        write!(f, "^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::IntPoly;
    use num_bigint::BigInt;

    fn ring() -> Ring {
        Ring::new(&["x", "y", "z"])
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let x: IntPoly = r.var("x");
        let one = r.one();
        let prod = &(&x + &one) * &(&x - &one);
        let expected = &(&x * &x) - &one;
        assert_eq!(prod, expected);
    }

    #[test]
    fn additive_identity() {
        let r = ring();
        let f: IntPoly = &r.var("x") + &r.constant(int(5));
        assert_eq!(f.add(&r.zero()), f);
    }

    #[test]
    fn binomial_cube() {
        let r = Ring::new(&["x1", "y1"]);
        let f: IntPoly = &r.var("x1") + &r.var("y1");
        let cube = f.pow(3);
        assert_eq!(cube.num_terms(), 4);
        let x13 = Monomial::from_exponents(vec![3, 0]);
        let x12y1 = Monomial::from_exponents(vec![2, 1]);
        assert_eq!(cube.coefficient(&x13), Some(&int(1)));
        assert_eq!(cube.coefficient(&x12y1), Some(&int(3)));
        assert_eq!(cube.to_string(), "x1^3 + 3*x1^2*y1 + 3*x1*y1^2 + y1^3");
    }

    #[test]
    fn cancellation_is_canonical() {
        let r = ring();
        let x: IntPoly = r.var("x");
        assert!(x.sub(&x).is_zero());
        assert_eq!(x.sub(&x), r.zero());
    }

    #[test]
    fn grevlex_ordering() {
        // In grevlex with x > y > z: x^2 > x*y > y^2 > x*z > y*z > z^2.
        let m = |e: [u32; 3]| Monomial::from_exponents(e.to_vec());
        let seq = [
            m([2, 0, 0]),
            m([1, 1, 0]),
            m([0, 2, 0]),
            m([1, 0, 1]),
            m([0, 1, 1]),
            m([0, 0, 2]),
        ];
        for w in seq.windows(2) {
            assert!(w[0] > w[1], "{:?} should exceed {:?}", w[0], w[1]);
        }
        assert!(m([1, 0, 0]) > m([0, 0, 0]), "1 is minimal");
    }

    #[test]
    fn eval_mod_p_examples() {
        let f7 = PrimeField::new(7).unwrap();
        let r = Ring::new(&["x1", "y1"]);
        let f: IntPoly =
            &(&r.var("x1").pow(3) + &r.var("y1").pow(3)) + &r.one();
        let v = f
            .eval_mod_p(f7, &[("x1", f7.elt(0)), ("y1", f7.elt(3))])
            .unwrap();
        assert_eq!(v.value(), 0);

        // All-zero point picks out the constant term.
        let g: IntPoly = &f + &r.constant(int(4));
        let v = g
            .eval_mod_p(f7, &[("x1", f7.elt(0)), ("y1", f7.elt(0))])
            .unwrap();
        assert_eq!(v.value(), 5);

        // Antisymmetric cancellation mod 5.
        let f5 = PrimeField::new(5).unwrap();
        let r4 = Ring::new(&["X0", "X1", "X2", "X3"]);
        let sum_cubes: IntPoly = ["X0", "X1", "X2", "X3"]
            .iter()
            .map(|v| r4.var::<BigInt>(v).pow(3))
            .fold(r4.zero(), |acc, t| acc.add(&t));
        let v = sum_cubes
            .eval_mod_p(
                f5,
                &[
                    ("X0", f5.elt(1)),
                    ("X1", f5.elt_signed(-1)),
                    ("X2", f5.elt(2)),
                    ("X3", f5.elt_signed(-2)),
                ],
            )
            .unwrap();
        assert_eq!(v.value(), 0);
    }

    #[test]
    fn eval_missing_variable_is_named() {
        let f7 = PrimeField::new(7).unwrap();
        let r = Ring::new(&["x", "y"]);
        let f: IntPoly = &r.var("x") + &r.var("y");
        let err = f.eval_mod_p(f7, &[("x", f7.elt(1))]).unwrap_err();
        assert_eq!(err, PolyError::UnassignedVariable("y".into()));
    }

    #[test]
    fn pullback_is_substitution() {
        let src = Ring::new(&["s", "t"]);
        let tgt = Ring::new(&["a", "b"]);
        let mut m: MapSpec<BigInt> = MapSpec::new(src.clone(), tgt.clone());
        m.assign("a", &src.var("s") * &src.var("t")).unwrap();
        m.assign("b", src.var::<BigInt>("t").pow(2)).unwrap();
        // a^2 + b  ↦  s^2 t^2 + t^2
        let f: IntPoly = &tgt.var::<BigInt>("a").pow(2) + &tgt.var("b");
        let pb = m.pullback(&f).unwrap();
        let expected: IntPoly = &(src.var::<BigInt>("s").pow(2).mul(&src.var::<BigInt>("t").pow(2)))
            + &src.var::<BigInt>("t").pow(2);
        assert_eq!(pb, expected);
    }

    #[test]
    fn pullback_missing_assignment() {
        let src = Ring::new(&["s"]);
        let tgt = Ring::new(&["a", "b"]);
        let mut m: MapSpec<BigInt> = MapSpec::new(src.clone(), tgt.clone());
        m.assign("a", src.var("s")).unwrap();
        assert!(!m.is_total());
        let err = m.pullback(&tgt.var("b")).unwrap_err();
        assert_eq!(err, PolyError::UnassignedVariable("b".into()));
        // A polynomial not mentioning `b` pulls back fine.
        assert!(m.pullback(&tgt.var("a")).is_ok());
    }

    #[test]
    #[should_panic(expected = "mixed variable universes")]
    fn mixed_universes_panic() {
        let r1 = Ring::new(&["x"]);
        let r2 = Ring::new(&["y"]);
        let _ = r1.var::<BigInt>("x").add(&r2.var("y"));
    }

    #[test]
    fn homogeneity_and_block_degrees() {
        let r = Ring::new(&["x1", "y1", "z1"]);
        let fermat: IntPoly = ["x1", "y1", "z1"]
            .iter()
            .map(|v| r.var::<BigInt>(v).pow(3))
            .fold(r.zero(), |acc, t| acc.add(&t));
        assert!(fermat.is_homogeneous());
        assert!(!fermat.add(&r.one()).is_homogeneous());
        assert_eq!(fermat.degree_in(&[0]), 3);
        assert_eq!(fermat.degree_in(&[0, 1]), 3);
    }
}
