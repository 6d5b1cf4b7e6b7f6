//! Exact arithmetic in the biquadratic field ℚ(√2, √3).
//!
//! Every root coordinate of the classical and exceptional root systems used
//! here lies in this field, so Weyl-orbit computations never round.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Rational numbers with 128-bit numerator and denominator.
pub type Rational = Ratio<i128>;

/// Builds the rational `p/q`.
pub fn rat(p: i128, q: i128) -> Rational {
    Rational::new(p, q)
}

/// Parses `"p"`, `"p/q"` or `"-p/q"` into a rational.
pub fn parse_rational(s: &str) -> Result<Rational, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty number".into());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| format!("bad numerator in {t:?}"))?;
        let q: i128 = q.trim().parse().map_err(|_| format!("bad denominator in {t:?}"))?;
        if q == 0 {
            return Err(format!("zero denominator in {t:?}"));
        }
        Ok(Rational::new(p, q))
    } else {
        Rational::from_str(t).map_err(|_| format!("not a rational number: {t:?}"))
    }
}

/// Formats a rational as `p/q`, or `p` when the denominator is one.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

/// Best rational approximation of `x` with denominator at most `max_den`,
/// accepted only if it reproduces `x` to within `tol`.
pub fn rationalize(x: f64, max_den: i128, tol: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    let sign = if x < 0.0 { -1 } else { 1 };
    let mut y = x.abs();
    let (mut p0, mut q0, mut p1, mut q1): (i128, i128, i128, i128) = (0, 1, 1, 0);
    for _ in 0..64 {
        let a = y.floor();
        if a > 1e30 {
            break;
        }
        let a = a as i128;
        let p2 = a.checked_mul(p1)?.checked_add(p0)?;
        let q2 = a.checked_mul(q1)?.checked_add(q0)?;
        if q2 > max_den {
            break;
        }
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        if ((p1 as f64) / (q1 as f64) - x.abs()).abs() <= tol {
            return Some(Rational::new(sign * p1, q1));
        }
        let frac = y - y.floor();
        if frac == 0.0 {
            break;
        }
        y = 1.0 / frac;
    }
    if q1 != 0 && ((p1 as f64) / (q1 as f64) - x.abs()).abs() <= tol {
        Some(Rational::new(sign * p1, q1))
    } else {
        None
    }
}

/// An element `a + b√2 + c√3 + d√6` of ℚ(√2, √3).
///
/// The representation is canonical, so structural equality and hashing are
/// field equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quad {
    c: [Rational; 4],
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of `p + q√3`.
fn sign_q3(p: &Rational, q: &Rational) -> i32 {
    let (sp, sq) = (sign_of(p), sign_of(q));
    if sq == 0 {
        return sp;
    }
    if sp == 0 || sp == sq {
        return sq;
    }
    let d = p * p - q * q * Rational::from_integer(3);
    match sign_of(&d) {
        1 => sp,
        -1 => sq,
        _ => 0,
    }
}

impl Quad {
    pub fn new(a: Rational, b: Rational, c: Rational, d: Rational) -> Self {
        Quad { c: [a, b, c, d] }
    }

    pub fn zero() -> Self {
        Quad::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Quad::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        Quad::new(r, Rational::zero(), Rational::zero(), Rational::zero())
    }

    pub fn from_int(n: i128) -> Self {
        Quad::from_rational(Rational::from_integer(n))
    }

    pub fn from_ratio(p: i128, q: i128) -> Self {
        Quad::from_rational(Rational::new(p, q))
    }

    /// `r·√2`.
    pub fn sqrt2(r: Rational) -> Self {
        Quad::new(Rational::zero(), r, Rational::zero(), Rational::zero())
    }

    /// `r·√3`.
    pub fn sqrt3(r: Rational) -> Self {
        Quad::new(Rational::zero(), Rational::zero(), r, Rational::zero())
    }

    /// Coefficients on the basis `1, √2, √3, √6`.
    pub fn coeffs(&self) -> &[Rational; 4] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(Zero::is_zero) {
            Some(self.c[0])
        } else {
            None
        }
    }

    /// Exact sign: -1, 0 or 1.
    pub fn signum(&self) -> i32 {
        let [a, b, c, d] = &self.c;
        let (sp, sq) = (sign_q3(a, c), sign_q3(b, d));
        if sq == 0 {
            return sp;
        }
        if sp == 0 || sp == sq {
            return sq;
        }
        // Compare P² with 2Q², both in ℚ(√3).
        let two = Rational::from_integer(2);
        let three = Rational::from_integer(3);
        let p2_r = a * a + c * c * three;
        let p2_s = a * c * two;
        let q2_r = (b * b + d * d * three) * two;
        let q2_s = b * d * two * two;
        match sign_q3(&(p2_r - q2_r), &(p2_s - q2_s)) {
            1 => sp,
            -1 => sq,
            _ => 0,
        }
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
        f(&self.c[0])
            + f(&self.c[1]) * std::f64::consts::SQRT_2
            + f(&self.c[2]) * 3f64.sqrt()
            + f(&self.c[3]) * 6f64.sqrt()
    }

    pub fn abs(&self) -> Quad {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    fn conj2(&self) -> Quad {
        let [a, b, c, d] = self.c;
        Quad::new(a, -b, c, -d)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Quad> {
        if self.is_zero() {
            return None;
        }
        let s = self.conj2();
        let y = self * &s; // lies in ℚ(√3)
        let (p, q) = (y.c[0], y.c[2]);
        let n = p * p - q * q * Rational::from_integer(3);
        let yinv = Quad::new(p / n, Rational::zero(), -q / n, Rational::zero());
        Some(&s * &yinv)
    }

    pub fn scale(&self, r: Rational) -> Quad {
        Quad { c: self.c.map(|x| x * r) }
    }
}

impl Default for Quad {
    fn default() -> Self {
        Quad::zero()
    }
}

impl From<Rational> for Quad {
    fn from(r: Rational) -> Self {
        Quad::from_rational(r)
    }
}

impl From<i128> for Quad {
    fn from(n: i128) -> Self {
        Quad::from_int(n)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const UNIT: [&str; 4] = ["", "√2", "√3", "√6"];
        let mut wrote = false;
        for (k, r) in self.c.iter().enumerate() {
            if r.is_zero() {
                continue;
            }
            let body = if k > 0 && r.abs() == Rational::one() {
                UNIT[k].to_string()
            } else {
                format!("{}{}", r.abs(), UNIT[k])
            };
            match (wrote, r.is_negative()) {
                (false, false) => write!(f, "{body}")?,
                (false, true) => write!(f, "-{body}")?,
                (true, false) => write!(f, "+{body}")?,
                (true, true) => write!(f, "-{body}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl PartialOrd for Quad {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Quad {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Quad> for Quad {
            type Output = Quad;
            fn $m(self, rhs: Quad) -> Quad {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Quad> for Quad {
            type Output = Quad;
            fn $m(self, rhs: &Quad) -> Quad {
                (&self).$m(rhs)
            }
        }
        impl $tr<Quad> for &Quad {
            type Output = Quad;
            fn $m(self, rhs: Quad) -> Quad {
                self.$m(&rhs)
            }
        }
    };
}

impl Add<&Quad> for &Quad {
    type Output = Quad;
    fn add(self, rhs: &Quad) -> Quad {
        Quad { c: std::array::from_fn(|k| self.c[k] + rhs.c[k]) }
    }
}

impl Sub<&Quad> for &Quad {
    type Output = Quad;
    fn sub(self, rhs: &Quad) -> Quad {
        Quad { c: std::array::from_fn(|k| self.c[k] - rhs.c[k]) }
    }
}

impl Mul<&Quad> for &Quad {
    type Output = Quad;
    fn mul(self, rhs: &Quad) -> Quad {
        let [a0, a1, a2, a3] = self.c;
        let [b0, b1, b2, b3] = rhs.c;
        let two = Rational::from_integer(2);
        let three = Rational::from_integer(3);
        let six = Rational::from_integer(6);
        Quad::new(
            a0 * b0 + two * a1 * b1 + three * a2 * b2 + six * a3 * b3,
            a0 * b1 + a1 * b0 + three * (a2 * b3 + a3 * b2),
            a0 * b2 + a2 * b0 + two * (a1 * b3 + a3 * b1),
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )
    }
}

impl Div<&Quad> for &Quad {
    type Output = Quad;
    /// Panics on division by zero.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Quad) -> Quad {
        self * &rhs.inverse().expect("division by zero in ℚ(√2,√3)")
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl Neg for &Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        Quad { c: self.c.map(|x| -x) }
    }
}

impl Neg for Quad {
    type Output = Quad;
    fn neg(self) -> Quad {
        -&self
    }
}

impl AddAssign<&Quad> for Quad {
    fn add_assign(&mut self, rhs: &Quad) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Quad> for Quad {
    fn sub_assign(&mut self, rhs: &Quad) {
        *self = &*self - rhs;
    }
}

/// A vector with entries in ℚ(√2, √3), ordered lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct QVec(pub Vec<Quad>);

impl QVec {
    pub fn zeros(n: usize) -> Self {
        QVec(vec![Quad::zero(); n])
    }

    pub fn from_rationals(v: &[Rational]) -> Self {
        QVec(v.iter().map(|r| Quad::from_rational(*r)).collect())
    }

    pub fn from_ints(v: &[i128]) -> Self {
        QVec(v.iter().map(|&n| Quad::from_int(n)).collect())
    }

    /// The standard basis vector `e_i` (zero based) in dimension `n`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = QVec::zeros(n);
        v.0[i] = Quad::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Quad::is_zero)
    }

    pub fn dot(&self, other: &QVec) -> Quad {
        let mut s = Quad::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            if !a.is_zero() && !b.is_zero() {
                s += &(a * b);
            }
        }
        s
    }

    pub fn norm2(&self) -> Quad {
        self.dot(self)
    }

    pub fn add(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &QVec) -> QVec {
        QVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, s: &Quad) -> QVec {
        QVec(self.0.iter().map(|a| a * s).collect())
    }

    pub fn neg(&self) -> QVec {
        QVec(self.0.iter().map(|a| -a).collect())
    }

    /// Reflection in the hyperplane orthogonal to `alpha`.
    pub fn reflect(&self, alpha: &QVec) -> QVec {
        let k = &(self.dot(alpha) * Quad::from_int(2)) / &alpha.norm2();
        if k.is_zero() {
            return self.clone();
        }
        self.sub(&alpha.scale(&k))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(Quad::to_f64).collect()
    }

    /// Entries as rationals, if they all are.
    pub fn as_rationals(&self) -> Option<Vec<Rational>> {
        self.0.iter().map(Quad::as_rational).collect()
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> Quad {
        self.0.iter().map(Quad::abs).max().unwrap_or_else(Quad::zero)
    }
}

impl fmt::Display for QVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A dense square matrix over ℚ(√2, √3).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMat {
    n: usize,
    rows: Vec<QVec>,
}

impl QMat {
    pub fn zeros(n: usize) -> Self {
        QMat { n, rows: vec![QVec::zeros(n); n] }
    }

    pub fn identity(n: usize) -> Self {
        QMat { n, rows: (0..n).map(|i| QVec::unit(n, i)).collect() }
    }

    pub fn from_rows(rows: Vec<QVec>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "QMat must be square");
        QMat { n, rows }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Quad {
        &self.rows[i].0[j]
    }

    pub fn row(&self, i: usize) -> &QVec {
        &self.rows[i]
    }

    pub fn apply(&self, v: &QVec) -> QVec {
        QVec(self.rows.iter().map(|r| r.dot(v)).collect())
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        let cols: Vec<QVec> =
            (0..self.n).map(|j| QVec((0..self.n).map(|i| other.get(i, j).clone()).collect())).collect();
        QMat::from_rows(self.rows.iter().map(|r| QVec(cols.iter().map(|c| r.dot(c)).collect())).collect())
    }

    pub fn sub(&self, other: &QMat) -> QMat {
        QMat::from_rows(self.rows.iter().zip(&other.rows).map(|(a, b)| a.sub(b)).collect())
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn trace(&self) -> Quad {
        let mut t = Quad::zero();
        for i in 0..self.n {
            t += self.get(i, i);
        }
        t
    }

    pub fn to_f64(&self) -> Vec<Vec<f64>> {
        self.rows.iter().map(QVec::to_f64).collect()
    }
}

/// Row-reduces a list of vectors and returns a basis of their span
/// (reduced row echelon form, so the result is canonical).
pub fn row_basis(vectors: &[QVec]) -> Vec<QVec> {
    let Some(n) = vectors.first().map(QVec::len) else {
        return Vec::new();
    };
    let mut rows: Vec<QVec> = vectors.to_vec();
    let mut pivot_row = 0;
    for col in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r].0[col].is_zero()) else {
            continue;
        };
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row].0[col].inverse().expect("nonzero pivot");
        rows[pivot_row] = rows[pivot_row].scale(&inv);
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r].0[col].is_zero() {
                let f = rows[r].0[col].clone();
                rows[r] = rows[r].sub(&rows[pivot_row].scale(&f));
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    rows.truncate(pivot_row);
    rows
}

/// Exact rank of a list of vectors.
pub fn rank(vectors: &[QVec]) -> usize {
    row_basis(vectors).len()
}

/// Orthogonal projector onto the span of `vectors` in dimension `n`.
pub fn projector(vectors: &[QVec], n: usize) -> QMat {
    let basis = row_basis(vectors);
    let k = basis.len();
    if k == 0 {
        return QMat::zeros(n);
    }
    // P = A (AᵀA)⁻¹ Aᵀ with the basis vectors as columns of A.
    let gram: Vec<QVec> = basis.iter().map(|a| QVec(basis.iter().map(|b| a.dot(b)).collect())).collect();
    let ginv = invert(&gram).expect("Gram matrix of a basis is invertible");
    let mut rows = Vec::with_capacity(n);
    for i in 0..n {
        // Row i of A·G⁻¹.
        let ai = QVec(basis.iter().map(|b| b.0[i].clone()).collect());
        let w = QVec((0..k).map(|c| ai.dot(&QVec(ginv.iter().map(|r| r.0[c].clone()).collect()))).collect());
        rows.push(QVec(
            (0..n)
                .map(|j| {
                    let aj = QVec(basis.iter().map(|b| b.0[j].clone()).collect());
                    w.dot(&aj)
                })
                .collect(),
        ));
    }
    QMat::from_rows(rows)
}

/// Inverse of a square matrix given by rows, `None` if singular.
pub fn invert(m: &[QVec]) -> Option<Vec<QVec>> {
    let k = m.len();
    let mut aug: Vec<QVec> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut v = r.0.clone();
            v.extend(QVec::unit(k, i).0);
            QVec(v)
        })
        .collect();
    for col in 0..k {
        let p = (col..k).find(|&r| !aug[r].0[col].is_zero())?;
        aug.swap(col, p);
        let inv = aug[col].0[col].inverse()?;
        aug[col] = aug[col].scale(&inv);
        for r in 0..k {
            if r != col && !aug[r].0[col].is_zero() {
                let f = aug[r].0[col].clone();
                aug[r] = aug[r].sub(&aug[col].scale(&f));
            }
        }
    }
    Some(aug.into_iter().map(|r| QVec(r.0[k..].to_vec())).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(a: i128, b: i128, c: i128, d: i128) -> Quad {
        Quad::new(a.into(), b.into(), c.into(), d.into())
    }

    #[test]
    fn surd_products() {
        let r2 = Quad::sqrt2(1.into());
        let r3 = Quad::sqrt3(1.into());
        assert_eq!(&r2 * &r2, Quad::from_int(2));
        assert_eq!(&r3 * &r3, Quad::from_int(3));
        assert_eq!(&(&r2 * &r3) * &(&r2 * &r3), Quad::from_int(6));
        assert_eq!(&r2 * &(&r2 * &r3), r3.scale(2.into()));
    }

    #[test]
    fn sign_of_near_cancellation() {
        // 1393² = 1940449 < 2·985², so 1393 - 985√2 < 0.
        assert_eq!(q(1393, -985, 0, 0).signum(), -1);
        assert_eq!(q(-1393, 985, 0, 0).signum(), 1);
        // 25 > 24 gives 5 - 2√6 > 0; √2 + √3 - √6 ≈ 0.697.
        assert_eq!(q(5, 0, 0, -2).signum(), 1);
        assert_eq!(q(0, 1, 1, -1).signum(), 1);
    }

    #[test]
    fn rationalize_small_denominators() {
        assert_eq!(rationalize(2.0 / 3.0, 1000, 1e-12), Some(rat(2, 3)));
        assert_eq!(rationalize(-0.125, 1000, 1e-12), Some(rat(-1, 8)));
        assert_eq!(rationalize(0.0, 1000, 1e-12), Some(rat(0, 1)));
        assert_eq!(rationalize(std::f64::consts::PI, 100, 1e-12), None);
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), rat(3, 1));
        assert_eq!(parse_rational("-2/6").unwrap(), rat(-1, 3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn projector_onto_line() {
        let p = projector(&[QVec::from_ints(&[1, 1, 1])], 3);
        assert_eq!(p.get(0, 1), &Quad::from_ratio(1, 3));
        assert_eq!(p.mul(&p), p);
        assert!(p.is_symmetric());
    }

    fn small_quad() -> impl Strategy<Value = Quad> {
        prop::array::uniform4((-20i128..20, 1i128..6))
            .prop_map(|a| Quad::new(rat(a[0].0, a[0].1), rat(a[1].0, a[1].1), rat(a[2].0, a[2].1), rat(a[3].0, a[3].1)))
    }

    proptest! {
        #[test]
        fn field_inverse(x in small_quad()) {
            prop_assume!(!x.is_zero());
            prop_assert_eq!(&x * &x.inverse().unwrap(), Quad::one());
        }

        #[test]
        fn sign_agrees_with_float(x in small_quad()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            }
        }

        #[test]
        fn distributive(x in small_quad(), y in small_quad(), z in small_quad()) {
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        }
    }
}
