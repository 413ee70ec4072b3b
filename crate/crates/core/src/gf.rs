//! Binary finite fields GF(2^e), e <= 8, and the extension pair GF(q) ⊂ GF(q²).
//!
//! Elements are plain `u8` values whose bits are the coefficients of a
//! polynomial in `x` reduced modulo a fixed per-degree polynomial, so every
//! encoding is reproducible. All arithmetic goes through a [`Field`], which
//! carries precomputed multiplication and inversion tables.

use std::fmt;
use std::ops::{Add, Mul};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of some GF(2^e), interpreted through a [`Field`].
pub type Elem = u8;

pub const MAX_DEGREE: u32 = 8;

/// Conway polynomials over GF(2); bit `i` is the coefficient of `x^i`.
const REDUCTION_POLYNOMIALS: [u32; 9] = [
    0,
    0b11,
    0b111,
    0b1011,
    0b1_0011,
    0b10_0101,
    0b101_1011,
    0b1000_0011,
    0b1_0001_1101,
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FieldSpec {
    pub degree: u32,
    pub reduction_polynomial: u32,
}

impl FieldSpec {
    /// The table entry for GF(2^degree).
    pub fn for_degree(degree: u32) -> Result<Self> {
        if degree == 0 || degree > MAX_DEGREE {
            return Err(Error::Config(format!(
                "no reduction polynomial for GF(2^{degree}); supported degrees are 1..={MAX_DEGREE}"
            )));
        }
        Ok(FieldSpec {
            degree,
            reduction_polynomial: REDUCTION_POLYNOMIALS[degree as usize],
        })
    }

    /// The table entry for the field of order `q`.
    pub fn for_order(q: u32) -> Result<Self> {
        if q < 2 || !q.is_power_of_two() {
            return Err(Error::Config(format!("{q} is not an even prime power")));
        }
        Self::for_degree(q.trailing_zeros())
    }

    pub fn order(&self) -> u32 {
        1 << self.degree
    }
}

/// Carry-less product of two polynomials over GF(2).
fn clmul(a: u32, b: u32) -> u32 {
    let mut acc = 0;
    for i in 0..16 {
        if (b >> i) & 1 == 1 {
            acc ^= a << i;
        }
    }
    acc
}

fn poly_degree(p: u32) -> i32 {
    31 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u32, m: u32) -> u32 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

/// Irreducibility over GF(2) by trial division with every polynomial of
/// degree at most half of `p`'s degree.
pub fn is_irreducible(p: u32) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    for divisor in 2u32..(1 << (d / 2 + 1)) {
        if poly_degree(divisor) >= 1 && poly_degree(divisor) <= d / 2 && poly_rem(p, divisor) == 0 {
            return false;
        }
    }
    true
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Inv,
    Pow,
}

pub struct Field {
    spec: FieldSpec,
    mul: Vec<Elem>,
    inv: Vec<Elem>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec
    }
}

impl Eq for Field {}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        if !is_irreducible(spec.reduction_polynomial)
            || poly_degree(spec.reduction_polynomial) != spec.degree as i32
        {
            return Err(Error::Config(format!(
                "reduction polynomial {:#b} is not irreducible of degree {}",
                spec.reduction_polynomial, spec.degree
            )));
        }
        let size = spec.order() as usize;
        let mut mul = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                mul[a * size + b] =
                    poly_rem(clmul(a as u32, b as u32), spec.reduction_polynomial) as Elem;
            }
        }
        let mut inv = vec![0; size];
        for a in 1..size {
            inv[a] = (1..size)
                .find(|&b| mul[a * size + b] == 1)
                .expect("field element has an inverse") as Elem;
        }
        Ok(Field { spec, mul, inv })
    }

    /// GF(q) with the table polynomial.
    pub fn of_order(q: u32) -> Result<Arc<Self>> {
        Ok(Arc::new(Field::new(FieldSpec::for_order(q)?)?))
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn degree(&self) -> u32 {
        self.spec.degree
    }

    pub fn order(&self) -> u32 {
        self.spec.order()
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.order()).map(|v| v as Elem)
    }

    pub fn nonzero(&self) -> impl Iterator<Item = Elem> + Clone {
        (1..self.order()).map(|v| v as Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        a ^ b
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[((a as usize) << self.spec.degree) | b as usize]
    }

    /// Inverse of a nonzero element. Panics on zero; see [`Field::checked_inv`].
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(a != 0, "inverse of zero in {self:?}");
        self.inv[a as usize]
    }

    pub fn checked_inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            Err(Error::Domain(format!("inverse of zero in {self:?}")))
        } else {
            Ok(self.inv[a as usize])
        }
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, mut exp: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// `a ↦ a^q`. An automorphism whenever `q` is a power of two.
    pub fn frobenius(&self, a: Elem, q: u32) -> Elem {
        self.pow(a, q as u64)
    }

    /// The unique square root, `a^(2^(e-1))`.
    pub fn sqrt(&self, a: Elem) -> Elem {
        self.pow(a, 1u64 << (self.degree() - 1))
    }

    pub fn fourth_root(&self, a: Elem) -> Elem {
        self.sqrt(self.sqrt(a))
    }

    /// Trace to GF(2): `a + a² + ... + a^(2^(e-1))`.
    pub fn absolute_trace(&self, a: Elem) -> Elem {
        let mut acc = 0;
        let mut x = a;
        for _ in 0..self.degree() {
            acc ^= x;
            x = self.mul(x, x);
        }
        acc
    }

    /// `X² + X + c` has no root in this field iff the absolute trace of `c` is 1.
    pub fn is_quadratic_irreducible(&self, c: Elem) -> bool {
        self.absolute_trace(c) == 1
    }

    /// Checked binary operation. `Pow` reads `b` as the (integer) exponent.
    pub fn arith(&self, a: Elem, b: Elem, op: ArithOp) -> Result<Elem> {
        let size = self.order();
        if a as u32 >= size || (op != ArithOp::Pow && b as u32 >= size) {
            return Err(Error::Usage(format!("operand outside {self:?}")));
        }
        Ok(match op {
            ArithOp::Add => self.add(a, b),
            ArithOp::Mul => self.mul(a, b),
            ArithOp::Inv => self.checked_inv(a)?,
            ArithOp::Pow => self.pow(a, b as u64),
        })
    }

    pub fn element<'a>(&'a self, value: Elem) -> Result<FieldElement<'a>> {
        if value as u32 >= self.order() {
            return Err(Error::Usage(format!(
                "{value} is not an element of {self:?}"
            )));
        }
        Ok(FieldElement { value, field: self })
    }
}

/// An element bundled with its field, for call sites that want operator syntax
/// and a check that both operands live in the same field.
#[derive(Clone, Copy)]
pub struct FieldElement<'a> {
    value: Elem,
    field: &'a Field,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{:?}", self.value, self.field)
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl<'a> FieldElement<'a> {
    pub fn value(&self) -> Elem {
        self.value
    }

    pub fn field(&self) -> &'a Field {
        self.field
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Usage(format!(
                "mixed fields {:?} and {:?}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        self.same_field(&other)?;
        Ok(FieldElement {
            value: self.value ^ other.value,
            field: self.field,
        })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        self.same_field(&other)?;
        Ok(FieldElement {
            value: self.field.mul(self.value, other.value),
            field: self.field,
        })
    }

    pub fn inv(self) -> Result<Self> {
        Ok(FieldElement {
            value: self.field.checked_inv(self.value)?,
            field: self.field,
        })
    }

    pub fn pow(self, exp: u64) -> Self {
        FieldElement {
            value: self.field.pow(self.value, exp),
            field: self.field,
        }
    }
}

impl<'a> Add for FieldElement<'a> {
    type Output = FieldElement<'a>;

    fn add(self, rhs: Self) -> Self::Output {
        self.checked_add(rhs).expect("operands in the same field")
    }
}

impl<'a> Mul for FieldElement<'a> {
    type Output = FieldElement<'a>;

    fn mul(self, rhs: Self) -> Self::Output {
        self.checked_mul(rhs).expect("operands in the same field")
    }
}

/// GF(q) inside GF(q²), with GF(q²) built directly as GF(2^(2e)).
pub struct ExtensionPair {
    pub base: Arc<Field>,
    pub ext: Arc<Field>,
    embed: Vec<Elem>,
    project: Vec<Option<Elem>>,
}

impl fmt::Debug for ExtensionPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} ⊂ {:?}", self.base, self.ext)
    }
}

impl ExtensionPair {
    /// Builds GF(q) ⊂ GF(q²). The class of `x` in GF(q) is sent to the smallest
    /// root of the base reduction polynomial in GF(q²).
    pub fn new(q: u32) -> Result<Self> {
        let base = Field::of_order(q)?;
        let ext = Field::of_order(
            q.checked_mul(q)
                .ok_or_else(|| Error::Config(format!("q = {q} too large")))?,
        )?;
        let poly = base.spec().reduction_polynomial;
        let eval = |r: Elem| -> Elem {
            let mut acc = 0;
            let mut power = 1;
            for i in 0..=base.degree() {
                if (poly >> i) & 1 == 1 {
                    acc ^= power;
                }
                power = ext.mul(power, r);
            }
            acc
        };
        let root = ext.elements().find(|&r| eval(r) == 0).ok_or_else(|| {
            Error::Internal("base polynomial has no root in the extension".into())
        })?;
        let mut embed = vec![0; base.order() as usize];
        for a in base.elements() {
            let mut acc = 0;
            let mut power = 1;
            for i in 0..base.degree() {
                if (a >> i) & 1 == 1 {
                    acc ^= power;
                }
                power = ext.mul(power, root);
            }
            embed[a as usize] = acc;
        }
        let mut project = vec![None; ext.order() as usize];
        for a in base.elements() {
            project[embed[a as usize] as usize] = Some(a);
        }
        let pair = ExtensionPair {
            base,
            ext,
            embed,
            project,
        };
        for a in pair.base.elements() {
            for b in pair.base.elements() {
                if pair.embed(pair.base.mul(a, b)) != pair.ext.mul(pair.embed(a), pair.embed(b)) {
                    return Err(Error::Internal("embedding is not multiplicative".into()));
                }
            }
        }
        Ok(pair)
    }

    /// q, the order of the base field.
    pub fn q(&self) -> u32 {
        self.base.order()
    }

    pub fn embed(&self, a: Elem) -> Elem {
        self.embed[a as usize]
    }

    /// The base-field preimage, if `a` lies in the embedded copy of GF(q).
    pub fn project(&self, a: Elem) -> Option<Elem> {
        self.project[a as usize]
    }

    pub fn in_base(&self, a: Elem) -> bool {
        self.project(a).is_some()
    }

    /// `a ↦ a^q` on GF(q²).
    pub fn conj(&self, a: Elem) -> Elem {
        self.ext.frobenius(a, self.q())
    }

    /// `a + a^q`, as an element of GF(q).
    pub fn relative_trace(&self, a: Elem) -> Elem {
        self.project(a ^ self.conj(a))
            .expect("relative trace lies in the base field")
    }
}

/// The constants the two constructions depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Constants {
    /// In GF(q), with `X² + X + δ` irreducible over GF(q).
    pub delta: Elem,
    /// In GF(q²) \ GF(q), with `ω + ω^q = 1`.
    pub omega: Elem,
    /// In GF(q²), with `X² + X + γ` irreducible over GF(q²).
    pub gamma: Elem,
}

/// Smallest encoding satisfying each defining condition.
pub fn pick_constants(pair: &ExtensionPair) -> Result<Constants> {
    let delta = pair
        .base
        .elements()
        .find(|&d| pair.base.is_quadratic_irreducible(d))
        .ok_or_else(|| Error::Internal("no δ".into()))?;
    let omega = pair
        .ext
        .elements()
        .find(|&w| !pair.in_base(w) && (w ^ pair.conj(w)) == 1)
        .ok_or_else(|| Error::Internal("no ω".into()))?;
    let gamma = pair
        .ext
        .elements()
        .find(|&g| pair.ext.is_quadratic_irreducible(g))
        .ok_or_else(|| Error::Internal("no γ".into()))?;
    let constants = Constants {
        delta,
        omega,
        gamma,
    };
    check_constants(pair, &constants)?;
    Ok(constants)
}

pub fn check_constants(pair: &ExtensionPair, c: &Constants) -> Result<()> {
    if c.delta as u32 >= pair.q() || !pair.base.is_quadratic_irreducible(c.delta) {
        return Err(Error::Config(format!(
            "δ = {} does not make X²+X+δ irreducible over GF({})",
            c.delta,
            pair.q()
        )));
    }
    if c.omega as u32 >= pair.ext.order()
        || pair.in_base(c.omega)
        || c.omega ^ pair.conj(c.omega) != 1
    {
        return Err(Error::Config(format!(
            "ω = {} does not satisfy ω + ω^q = 1 outside GF(q)",
            c.omega
        )));
    }
    if c.gamma as u32 >= pair.ext.order() || !pair.ext.is_quadratic_irreducible(c.gamma) {
        return Err(Error::Config(format!(
            "γ = {} does not make X²+X+γ irreducible over GF(q²)",
            c.gamma
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_polynomials_are_irreducible() {
        for e in 1..=MAX_DEGREE {
            let spec = FieldSpec::for_degree(e).unwrap();
            assert!(is_irreducible(spec.reduction_polynomial), "degree {e}");
        }
        assert_eq!(
            FieldSpec::for_degree(2).unwrap().reduction_polynomial,
            0b111
        );
        assert_eq!(
            FieldSpec::for_degree(4).unwrap().reduction_polynomial,
            0b10011
        );
        assert!(!is_irreducible(0b101)); // x² + 1 = (x + 1)²
    }

    #[test]
    fn gf2_and_gf4_small_values() {
        let f2 = Field::of_order(2).unwrap();
        assert_eq!(f2.mul(1, 1), 1);
        assert_eq!(f2.sqrt(1), 1);

        let f4 = Field::of_order(4).unwrap();
        let w = 2;
        assert_eq!(f4.mul(w, w), 3);
        assert_eq!(f4.inv(w), 3);
        assert_eq!(f4.sqrt(w), 3);
        assert_eq!(f4.frobenius(w, 2), 3);
        assert_eq!(f4.absolute_trace(w), 1);
        assert_eq!(f4.absolute_trace(1), 0);
        assert_eq!(f2.absolute_trace(1), 1);
    }

    #[test]
    fn gf4_inverse_from_multiplication_table() {
        let f4 = Field::of_order(4).unwrap();
        // Independent: search the full table for the unique b with a·b = 1.
        for a in 1..4u8 {
            let by_table = (1..4u8)
                .find(|&b| poly_rem(clmul(a as u32, b as u32), 0b111) == 1)
                .unwrap();
            assert_eq!(f4.inv(a), by_table);
        }
    }

    #[test]
    fn inverse_of_zero_is_a_domain_error() {
        let f4 = Field::of_order(4).unwrap();
        assert!(matches!(f4.checked_inv(0), Err(Error::Domain(_))));
        assert!(matches!(
            f4.arith(0, 0, ArithOp::Inv),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let f4 = Field::of_order(4).unwrap();
        let f8 = Field::of_order(8).unwrap();
        let a = f4.element(2).unwrap();
        let b = f8.element(2).unwrap();
        assert!(matches!(a.checked_mul(b), Err(Error::Usage(_))));
        assert!((a * f4.element(3).unwrap()).value() == 1);
        assert!(f4.element(4).is_err());
    }

    #[test]
    fn unsupported_orders() {
        assert!(FieldSpec::for_order(6).is_err());
        assert!(FieldSpec::for_order(512).is_err());
        assert!(ExtensionPair::new(32).is_err());
    }

    #[test]
    fn q2_constants() {
        let pair = ExtensionPair::new(2).unwrap();
        let c = pick_constants(&pair).unwrap();
        assert_eq!(
            c,
            Constants {
                delta: 1,
                omega: 2,
                gamma: 2
            }
        );
        assert_eq!(pair.relative_trace(2), 1);
        assert_eq!(pick_constants(&pair).unwrap(), c);
    }

    #[test]
    fn embedding_hits_exactly_the_fixed_field() {
        for q in [2, 4, 8, 16] {
            let pair = ExtensionPair::new(q).unwrap();
            assert_eq!(pair.embed(0), 0);
            assert_eq!(pair.embed(1), 1);
            let fixed: Vec<Elem> = pair.ext.elements().filter(|&a| pair.conj(a) == a).collect();
            let mut image: Vec<Elem> = pair.base.elements().map(|a| pair.embed(a)).collect();
            image.sort_unstable();
            assert_eq!(fixed, image, "q = {q}");
        }
    }
}
