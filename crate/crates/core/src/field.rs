//! Arithmetic in the prime field `F_p`, with cubic-residue structure.
//!
//! Besides the usual ring operations this module knows how the cubing map
//! behaves in each residue class of `p` mod 3:
//!
//! * `p ≡ 2 (mod 3)` — cubing is a bijection, every element has exactly one
//!   cube root;
//! * `p ≡ 1 (mod 3)` — the cubes form an index-3 subgroup of `F_p*`; a nonzero
//!   element has either three cube roots or none.
//!
//! That trichotomy is what makes the fibers of the degree-3 map countable.

use thiserror::Error;

/// Largest allowed modulus. Keeping `p < 2^31` lets every product of two
/// canonical residues fit in a `u64`.
pub const MAX_MODULUS: u64 = 1 << 31;

/// Exhaustive search is used for cube roots below this bound; above it a
/// Tonelli–Shanks-style discrete-log descent takes over.
const CUBE_ROOT_SEARCH_BOUND: u64 = 10_000;

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} exceeds the 2^31 bound")]
    TooLarge(u64),
}

/// The field `F_p` for a prime `p < 2^31`.
///
/// Construction runs a deterministic Miller–Rabin check. The struct is `Copy`
/// and every operation is pure, so values can be shared freely across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

/// A canonical residue in `[0, p)` tagged with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if p >= MAX_MODULUS {
            return Err(FieldError::TooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Residue class of the characteristic mod 3; drives the cube structure.
    #[inline]
    pub fn residue_mod_3(&self) -> u64 {
        self.p % 3
    }

    /// Wraps an arbitrary integer into a canonical element.
    #[inline]
    pub fn elt(&self, v: u64) -> FieldElement {
        FieldElement {
            value: v % self.p,
            p: self.p,
        }
    }

    /// Wraps a signed integer, mapping negatives to their canonical residue.
    #[inline]
    pub fn elt_signed(&self, v: i64) -> FieldElement {
        let m = self.p as i64;
        self.elt(v.rem_euclid(m) as u64)
    }

    // Raw operations on canonical residues. Callers must pass values < p;
    // the wrapper type upholds this, kernels are trusted.

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        // a, b < p < 2^31, so the product fits in 64 bits.
        (a * b) % self.p
    }

    /// Square-and-multiply; `pow(0, 0) = 1` by the empty-product convention.
    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        a %= self.p;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via Fermat.
    ///
    /// # Panics
    /// Panics on zero.
    #[inline]
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "division by zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    #[inline]
    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }

    /// Whether `a` has a cube root in `F_p`.
    ///
    /// Always true when cubing is a bijection (`p = 3` or `p ≡ 2 mod 3`);
    /// for `p ≡ 1 mod 3` decided by the cubic-residue criterion
    /// `a^((p-1)/3) = 1`.
    pub fn is_cube(&self, a: FieldElement) -> bool {
        self.check(a);
        if a.value == 0 || self.p % 3 != 1 {
            return true;
        }
        self.pow(a.value, (self.p - 1) / 3) == 1
    }

    /// The full solution set of `x^3 = a`, sorted by value.
    ///
    /// Sizes: `{0}` for `a = 0`; one root when cubing is bijective; three or
    /// zero roots when `p ≡ 1 (mod 3)`.
    pub fn cube_roots(&self, a: FieldElement) -> Vec<FieldElement> {
        self.check(a);
        if a.value == 0 {
            return vec![self.elt(0)];
        }
        if self.p == 3 {
            // x^3 = x in characteristic 3.
            return vec![a];
        }
        if self.p % 3 == 2 {
            // Inverse of cubing: exponent (2p-1)/3 satisfies 3e ≡ 1 (mod p-1).
            return vec![self.elt(self.pow(a.value, (2 * self.p - 1) / 3))];
        }
        if !self.is_cube(a) {
            return Vec::new();
        }
        let r = if self.p < CUBE_ROOT_SEARCH_BOUND {
            self.cube_root_by_search(a.value)
        } else {
            self.cube_root_descent(a.value)
        };
        debug_assert_eq!(self.pow(r, 3), a.value);
        let (w, w2) = self
            .primitive_cube_roots_of_unity()
            .expect("p ≡ 1 mod 3 has primitive cube roots of unity");
        let mut roots = vec![r, self.mul(r, w), self.mul(r, w2)];
        roots.sort_unstable();
        roots.into_iter().map(|v| self.elt(v)).collect()
    }

    /// The two primitive cube roots of unity, present iff `p ≡ 1 (mod 3)`.
    pub fn primitive_cube_roots_of_unity(&self) -> Option<(u64, u64)> {
        if self.p % 3 != 1 {
            return None;
        }
        let w = self.pow(self.non_cube(), (self.p - 1) / 3);
        debug_assert!(w != 1 && self.pow(w, 3) == 1);
        Some((w.min(self.mul(w, w)), w.max(self.mul(w, w))))
    }

    /// Smallest element that is not a cubic residue (`p ≡ 1 mod 3` only).
    fn non_cube(&self) -> u64 {
        let e = (self.p - 1) / 3;
        (2..self.p)
            .find(|&c| self.pow(c, e) != 1)
            .expect("F_p* is not all cubes when p ≡ 1 mod 3")
    }

    fn cube_root_by_search(&self, a: u64) -> u64 {
        (0..self.p)
            .find(|&x| self.pow(x, 3) == a)
            .expect("caller guarantees a is a cube")
    }

    /// Cube root of a known cubic residue by descent in the 3-Sylow subgroup
    /// (the r = 3 analogue of Tonelli–Shanks).
    fn cube_root_descent(&self, a: u64) -> u64 {
        // p - 1 = 3^s * t with 3 ∤ t; s ≥ 1 here.
        let mut t = self.p - 1;
        let mut s = 0u32;
        while t % 3 == 0 {
            t /= 3;
            s += 1;
        }
        let g = self.pow(self.non_cube(), t); // order exactly 3^s

        // Initial guess x = a^e with 3e ≡ 1 (mod t); then b = x^3 / a lies in
        // the subgroup of order 3^(s-1).
        let e = inverse_mod(3, t);
        let mut x = self.pow(a, e);
        let mut b = self.mul(self.pow(x, 3), self.inv(a));
        let w_g = self.pow(g, pow3(s - 1));

        while b != 1 {
            // Smallest m with b^(3^m) = 1.
            let mut m = 1u32;
            let mut z = self.pow(b, 3);
            while z != 1 {
                z = self.pow(z, 3);
                m += 1;
            }
            debug_assert!(m < s);
            let w_b = self.pow(b, pow3(m - 1));
            // Choose j with w_b * w_g^j = 1.
            let j = if w_b == w_g { 2 } else { 1 };
            let u = self.pow(g, j * pow3(s - 1 - m));
            x = self.mul(x, u);
            b = self.mul(b, self.pow(u, 3));
        }
        x
    }

    #[inline]
    fn check(&self, a: FieldElement) {
        assert_eq!(a.p, self.p, "element of F_{} used in F_{}", a.p, self.p);
    }
}

impl FieldElement {
    #[inline]
    pub fn value(&self) -> u64 {
        self.value
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn add(&self, rhs: FieldElement) -> FieldElement {
        self.lift(rhs, |f| f.add(self.value, rhs.value))
    }

    pub fn sub(&self, rhs: FieldElement) -> FieldElement {
        self.lift(rhs, |f| f.sub(self.value, rhs.value))
    }

    pub fn mul(&self, rhs: FieldElement) -> FieldElement {
        self.lift(rhs, |f| f.mul(self.value, rhs.value))
    }

    pub fn div(&self, rhs: FieldElement) -> FieldElement {
        self.lift(rhs, |f| f.div(self.value, rhs.value))
    }

    pub fn neg(&self) -> FieldElement {
        let f = self.field();
        f.elt(f.neg(self.value))
    }

    pub fn inv(&self) -> FieldElement {
        let f = self.field();
        f.elt(f.inv(self.value))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        let f = self.field();
        f.elt(f.pow(self.value, e))
    }

    fn lift(&self, rhs: FieldElement, op: impl Fn(PrimeField) -> u64) -> FieldElement {
        assert_eq!(self.p, rhs.p, "mixed moduli {} and {}", self.p, rhs.p);
        let f = self.field();
        f.elt(op(f))
    }
}

impl std::fmt::Display for FieldElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.value)
    }
}

fn pow3(e: u32) -> u64 {
    3u64.pow(e)
}

/// Inverse of `a` modulo `m` (extended Euclid); `m = 1` maps everything to 0.
fn inverse_mod(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut r0, mut r1) = (m as i64, (a % m) as i64);
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    assert_eq!(r0, 1, "{a} is not invertible mod {m}");
    s0.rem_euclid(m as i64) as u64
}

/// Deterministic primality test for `n < 2^31`.
///
/// Trial division by a few small primes, then Miller–Rabin with bases
/// 2, 3, 5, 7 — deterministic far beyond the 2^31 modulus bound.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let d = n - 1;
    let s = d.trailing_zeros();
    let d = d >> s;
    'witness: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    a %= m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}
