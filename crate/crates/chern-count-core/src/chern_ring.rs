//! Chern-class containers: degree-2 vectors, degree-4 bilinear classes,
//! and the flattened polynomial form used for display.
//!
//! # Conventions
//!
//! Every class lives in the polynomial ring generated by
//!
//! ```text
//! c1 = c1(L),    x1 = c1(T*X),    x2 = c2(T*X)
//! ```
//!
//! graded by the weighted degree `deg c1 = deg x1 = 1`, `deg x2 = 2`.  The
//! degree-2 monomials are ordered, once and for all, as
//!
//! ```text
//! (c1^2, c1 x1, x1^2, x2)
//! ```
//!
//! and a [`OnePointClass`] is the exact-rational coefficient vector in that
//! basis, so `(3, 2, 0, 1)` denotes `3 c1^2 + 2 c1 x1 + x2`.
//!
//! A [`TwoPointClass`] is a degree-4 class on the product of two copies of
//! the surface: a 4x4 rational matrix pairing a degree-2 monomial from each
//! factor, plus a degree-2 "diagonal" correction vector.  Evaluation on a
//! surface contracts both slots with the same Chern-number vector:
//!
//! ```text
//! value(g) = g^T . quad . g + lin . g .
//! ```
//!
//! Flattening a two-point class multiplies the basis monomials out into the
//! commutative ring, which **loses information**: distinct bilinear classes
//! can flatten to the same polynomial.  The canonical witness is
//!
//! ```text
//! (c1 x1) (x) (c1 x1)   versus   (c1^2) (x) (x1^2),
//! ```
//!
//! both flattening to `c1^2 x1^2`, yet evaluating differently on any
//! geometry with `(c1 x1)^2 != (c1^2)(x1^2)` — for instance
//! `g = (1, 0, 2, 0)` gives `0` for the first and `2` for the second.  All
//! computation therefore happens on the unflattened representation, and
//! [`TwoPointClass::flatten`] is display-only.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::array;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::Rational;

/// Exponent triple `(a, b, c)` of the monomial `c1^a x1^b x2^c`.
pub type Exponents = (u32, u32, u32);

fn rational(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// The four degree-2 monomials, in the fixed basis order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Monomial2 {
    /// `c1^2`
    C1Sq,
    /// `c1 x1`
    C1X1,
    /// `x1^2`
    X1Sq,
    /// `x2`
    X2,
}

impl Monomial2 {
    /// All four monomials in basis order `(c1^2, c1 x1, x1^2, x2)`.
    pub const ALL: [Monomial2; 4] = [Monomial2::C1Sq, Monomial2::C1X1, Monomial2::X1Sq, Monomial2::X2];

    /// Position in the fixed basis order.
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Exponents `(a, b, c)` of `c1^a x1^b x2^c`; always `a + b + 2c = 2`.
    pub const fn exponents(self) -> Exponents {
        match self {
            Monomial2::C1Sq => (2, 0, 0),
            Monomial2::C1X1 => (1, 1, 0),
            Monomial2::X1Sq => (0, 2, 0),
            Monomial2::X2 => (0, 0, 1),
        }
    }

    /// Inverse of [`Monomial2::exponents`]; `None` if the triple is not a
    /// degree-2 monomial.
    pub fn from_exponents(exps: Exponents) -> Option<Monomial2> {
        Monomial2::ALL.into_iter().find(|m| m.exponents() == exps)
    }
}

/// Weighted degree `a + b + 2c` of an exponent triple.
pub fn weighted_degree(exps: Exponents) -> u32 {
    exps.0 + exps.1 + 2 * exps.2
}

/// A degree-2 class: exact coefficients in the basis `(c1^2, c1 x1, x1^2, x2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OnePointClass {
    coeffs: [Rational; 4],
}

impl OnePointClass {
    /// The zero class.
    pub fn zero() -> Self {
        OnePointClass { coeffs: array::from_fn(|_| Rational::zero()) }
    }

    /// Class with the given integer coefficients, in basis order.
    pub fn from_integers(coeffs: [i64; 4]) -> Self {
        OnePointClass { coeffs: coeffs.map(rational) }
    }

    /// Class with the given rational coefficients, in basis order.
    pub fn from_coeffs(coeffs: [Rational; 4]) -> Self {
        OnePointClass { coeffs }
    }

    /// Coefficient of the given basis monomial.
    pub fn coeff(&self, m: Monomial2) -> &Rational {
        &self.coeffs[m.index()]
    }

    /// All four coefficients in basis order.
    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.coeffs
    }

    /// `true` iff every coefficient vanishes.
    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// `true` iff every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(Rational::is_integer)
    }

    /// The class scaled by an exact rational factor.
    pub fn scaled(&self, k: &Rational) -> Self {
        OnePointClass { coeffs: array::from_fn(|i| &self.coeffs[i] * k) }
    }

    /// One third of the class, provided the result is integral.
    ///
    /// This is the exact division demanded by the triple cover of the `D4`
    /// locus; `None` signals that the dividend was not divisible by 3.
    pub fn exact_third(&self) -> Option<Self> {
        let third = self.scaled(&Rational::new(1.into(), 3.into()));
        third.is_integral().then_some(third)
    }

    /// Pair the class with the Chern numbers of a concrete surface.
    pub fn evaluate(&self, g: &SurfaceGeometry) -> Rational {
        Monomial2::ALL
            .into_iter()
            .map(|m| self.coeff(m) * g.component(m))
            .fold(Rational::zero(), |acc, t| acc + t)
    }

    /// The class as a formal polynomial in `c1, x1, x2` (weighted degree 2).
    pub fn to_polynomial(&self) -> FormalPolynomial {
        let mut p = FormalPolynomial::zero();
        for m in Monomial2::ALL {
            p.add_term(m.exponents(), self.coeff(m).clone());
        }
        p
    }
}

impl Add for OnePointClass {
    type Output = OnePointClass;

    fn add(self, rhs: OnePointClass) -> OnePointClass {
        let mut coeffs = self.coeffs;
        for (c, r) in coeffs.iter_mut().zip(rhs.coeffs) {
            *c += r;
        }
        OnePointClass { coeffs }
    }
}

impl Sub for OnePointClass {
    type Output = OnePointClass;

    fn sub(self, rhs: OnePointClass) -> OnePointClass {
        let mut coeffs = self.coeffs;
        for (c, r) in coeffs.iter_mut().zip(rhs.coeffs) {
            *c -= r;
        }
        OnePointClass { coeffs }
    }
}

impl Neg for OnePointClass {
    type Output = OnePointClass;

    fn neg(self) -> OnePointClass {
        OnePointClass { coeffs: self.coeffs.map(Neg::neg) }
    }
}

/// A degree-4 bilinear class on the product of two marked copies of the
/// surface: quadratic part `quad[i][j]` pairing basis monomial `i` from the
/// first factor with monomial `j` from the second, plus a degree-2 diagonal
/// correction `lin`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoPointClass {
    quad: [[Rational; 4]; 4],
    lin: OnePointClass,
}

impl TwoPointClass {
    /// The zero class.
    pub fn zero() -> Self {
        TwoPointClass {
            quad: array::from_fn(|_| array::from_fn(|_| Rational::zero())),
            lin: OnePointClass::zero(),
        }
    }

    /// The pure tensor `u (x) v` (quadratic part only).
    pub fn tensor(u: &OnePointClass, v: &OnePointClass) -> Self {
        TwoPointClass {
            quad: array::from_fn(|i| array::from_fn(|j| &u.coeffs[i] * &v.coeffs[j])),
            lin: OnePointClass::zero(),
        }
    }

    /// A purely diagonal class (zero quadratic part).
    pub fn from_linear(lin: OnePointClass) -> Self {
        TwoPointClass { quad: TwoPointClass::zero().quad, lin }
    }

    /// Assemble from explicit parts.
    pub fn from_parts(quad: [[Rational; 4]; 4], lin: OnePointClass) -> Self {
        TwoPointClass { quad, lin }
    }

    /// The quadratic part, indexed by basis order in both slots.
    pub fn quad(&self) -> &[[Rational; 4]; 4] {
        &self.quad
    }

    /// The diagonal degree-2 correction.
    pub fn lin(&self) -> &OnePointClass {
        &self.lin
    }

    /// `true` iff both parts vanish.
    pub fn is_zero(&self) -> bool {
        self.lin.is_zero() && self.quad.iter().all(|row| row.iter().all(Zero::is_zero))
    }

    /// `true` iff every coefficient of both parts is an integer.
    pub fn is_integral(&self) -> bool {
        self.lin.is_integral() && self.quad.iter().all(|row| row.iter().all(Rational::is_integer))
    }

    /// The class scaled by an exact rational factor.
    pub fn scaled(&self, k: &Rational) -> Self {
        TwoPointClass {
            quad: array::from_fn(|i| array::from_fn(|j| &self.quad[i][j] * k)),
            lin: self.lin.scaled(k),
        }
    }

    /// One third of the class, provided the result is integral (both the
    /// quadratic and the diagonal part), as demanded by the triple cover of
    /// the `D4` locus in the two-point theory.
    pub fn exact_third(&self) -> Option<Self> {
        let third = self.scaled(&Rational::new(1.into(), 3.into()));
        third.is_integral().then_some(third)
    }

    /// Contract both slots with the Chern numbers of one surface:
    /// `g^T . quad . g + lin . g`.
    pub fn evaluate(&self, g: &SurfaceGeometry) -> Rational {
        let mut acc = self.lin.evaluate(g);
        for i in Monomial2::ALL {
            for j in Monomial2::ALL {
                acc += &self.quad[i.index()][j.index()] * g.component(i) * g.component(j);
            }
        }
        acc
    }

    /// If the quadratic part factors as `left (x) w` for some degree-2
    /// class `w`, return `w`; otherwise `None`.
    ///
    /// With `left = 0` this demands a vanishing quadratic part and returns
    /// the zero class.  Used to verify the structural fact that every
    /// two-point class produced by the recursion has a rank-at-most-1
    /// quadratic part whose left factor is the node class.
    pub fn factor_quad_through(&self, left: &OnePointClass) -> Option<OnePointClass> {
        let pivot = (0..4).find(|&i| !left.coeffs[i].is_zero());
        let w = match pivot {
            None => OnePointClass::zero(),
            Some(i0) => OnePointClass::from_coeffs(array::from_fn(|j| &self.quad[i0][j] / &left.coeffs[i0])),
        };
        let consistent = (0..4).all(|i| (0..4).all(|j| self.quad[i][j] == &left.coeffs[i] * &w.coeffs[j]));
        consistent.then_some(w)
    }

    /// Multiply everything out into the commutative ring, producing a mixed
    /// polynomial of weighted degrees 2 and 4.  Lossy — see the module
    /// documentation for a witness — and therefore display-only.
    pub fn flatten(&self) -> FormalPolynomial {
        let mut p = FormalPolynomial::zero();
        for i in Monomial2::ALL {
            let (a1, b1, c1) = i.exponents();
            for j in Monomial2::ALL {
                let (a2, b2, c2) = j.exponents();
                p.add_term((a1 + a2, b1 + b2, c1 + c2), self.quad[i.index()][j.index()].clone());
            }
        }
        for m in Monomial2::ALL {
            p.add_term(m.exponents(), self.lin.coeff(m).clone());
        }
        p
    }
}

impl Add for TwoPointClass {
    type Output = TwoPointClass;

    fn add(self, rhs: TwoPointClass) -> TwoPointClass {
        let mut quad = self.quad;
        for (row, rrow) in quad.iter_mut().zip(rhs.quad) {
            for (c, r) in row.iter_mut().zip(rrow) {
                *c += r;
            }
        }
        TwoPointClass { quad, lin: self.lin + rhs.lin }
    }
}

impl Sub for TwoPointClass {
    type Output = TwoPointClass;

    fn sub(self, rhs: TwoPointClass) -> TwoPointClass {
        self + (-rhs)
    }
}

impl Neg for TwoPointClass {
    type Output = TwoPointClass;

    fn neg(self) -> TwoPointClass {
        self.scaled(&rational(-1))
    }
}

/// Output flavor for [`FormalPolynomial::format`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormatStyle {
    /// Plain text: `3 c1^2 + 2 c1 x1 + x2`.
    Text,
    /// LaTeX source: `3 c_1^2 + 2 c_1 x_1 + x_2`.
    Latex,
}

/// A formal polynomial in `c1, x1, x2` with exact rational coefficients.
///
/// Only weighted degrees 2 and 4 occur (`a + b + 2c` for the monomial
/// `c1^a x1^b x2^c`); mixed-degree polynomials arise from flattening
/// two-point classes.  Terms with zero coefficient are never stored, so
/// equality is coefficient-wise equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FormalPolynomial {
    terms: BTreeMap<Exponents, Rational>,
}

impl FormalPolynomial {
    /// The zero polynomial.
    pub fn zero() -> Self {
        FormalPolynomial { terms: BTreeMap::new() }
    }

    /// Add `coefficient * c1^a x1^b x2^c` for `exps = (a, b, c)`.
    ///
    /// # Panics
    ///
    /// If the weighted degree `a + b + 2c` is neither 2 nor 4 — such terms
    /// cannot arise from any class in this theory, so the attempt indicates
    /// a programming error.
    pub fn add_term(&mut self, exps: Exponents, coefficient: Rational) {
        assert!(
            matches!(weighted_degree(exps), 2 | 4),
            "monomial c1^{} x1^{} x2^{} has weighted degree {}, expected 2 or 4",
            exps.0,
            exps.1,
            exps.2,
            weighted_degree(exps),
        );
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exps);
        }
    }

    /// `true` iff no term is present.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored (nonzero) terms.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of `c1^a x1^b x2^c` (zero if absent).
    pub fn coeff(&self, exps: Exponents) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    /// Terms in display order: descending lexicographic in `(a, b, c)`.
    pub fn terms(&self) -> impl Iterator<Item = (Exponents, &Rational)> + '_ {
        self.terms.iter().rev().map(|(&e, c)| (e, c))
    }

    /// Render the polynomial.
    ///
    /// The contract, fixed for machine consumption:
    ///
    /// ```text
    /// - terms in descending lexicographic order of (a, b, c);
    /// - factors space-separated, exponent 1 omitted: "2 c1 x1", "x2^2";
    /// - unit coefficients omitted: "x2", "- x2";
    /// - terms joined by " + " / " - "; a leading negative term as "-5 ...";
    /// - the zero polynomial renders as "0".
    /// ```
    ///
    /// Example: `(3, 2, 0, 1)` renders as `3 c1^2 + 2 c1 x1 + x2`.
    pub fn format(&self, style: FormatStyle) -> String {
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (first, (exps, coefficient)) in self.terms().enumerate().map(|(i, t)| (i == 0, t)) {
            let negative = coefficient.is_negative();
            out.push_str(match (first, negative) {
                (true, false) => "",
                (true, true) => "-",
                (false, false) => " + ",
                (false, true) => " - ",
            });
            let magnitude = coefficient.abs();
            let monomial = render_monomial(exps, style);
            if !magnitude.is_one() || monomial.is_empty() {
                out.push_str(&magnitude.to_string());
                if !monomial.is_empty() {
                    out.push(' ');
                }
            }
            out.push_str(&monomial);
        }
        out
    }
}

impl fmt::Display for FormalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(FormatStyle::Text))
    }
}

fn render_monomial(exps: Exponents, style: FormatStyle) -> String {
    let names: [&str; 3] = match style {
        FormatStyle::Text => ["c1", "x1", "x2"],
        FormatStyle::Latex => ["c_1", "x_1", "x_2"],
    };
    let mut parts: Vec<String> = Vec::new();
    for (name, power) in names.into_iter().zip([exps.0, exps.1, exps.2]) {
        match power {
            0 => {}
            1 => parts.push(name.to_string()),
            p => {
                let mut s = name.to_string();
                s.push('^');
                s.push_str(&p.to_string());
                parts.push(s);
            }
        }
    }
    parts.join(" ")
}

/// The four Chern numbers of a polarized surface `(X, L)`, in basis order:
/// `c1(L)^2`, `c1(L) . c1(T*X)`, `c1(T*X)^2`, `c2(T*X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceGeometry {
    /// `c1(L)^2`
    pub c1_sq: Rational,
    /// `c1(L) . c1(T*X)`
    pub c1_x1: Rational,
    /// `c1(T*X)^2`
    pub x1_sq: Rational,
    /// `c2(T*X)`
    pub x2: Rational,
}

impl SurfaceGeometry {
    /// Geometry with the given integer Chern numbers, in basis order.
    pub fn from_integers(c1_sq: i64, c1_x1: i64, x1_sq: i64, x2: i64) -> Self {
        SurfaceGeometry {
            c1_sq: rational(c1_sq),
            c1_x1: rational(c1_x1),
            x1_sq: rational(x1_sq),
            x2: rational(x2),
        }
    }

    /// The Chern number paired with the given basis monomial.
    pub fn component(&self, m: Monomial2) -> &Rational {
        match m {
            Monomial2::C1Sq => &self.c1_sq,
            Monomial2::C1X1 => &self.c1_x1,
            Monomial2::X1Sq => &self.x1_sq,
            Monomial2::X2 => &self.x2,
        }
    }
}
