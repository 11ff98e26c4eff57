//! Arithmetic for the prime field `F_p` and its extension `F_{p^n}`,
//! irreducibility testing, normal bases, and minimal polynomials.
//!
//! Extension elements are coefficient vectors of length `n` over `F_p`
//! (polynomials in `beta` modulo a monic irreducible `f` of degree `n`).
//! A normal basis `{alpha, alpha^p, ..., alpha^(p^(n-1))}` gives the second
//! coordinate system; the Frobenius map acts there as a cyclic rotation.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use rand::Rng;

use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    NotMonic,
    ZeroDegree,
    NotIrreducible,
    DivisionByZero,
    /// The conjugates of the element are not pairwise distinct, so its
    /// minimal polynomial has degree less than `n`.
    DegreeCollapse {
        period: usize,
    },
    /// A coefficient of the conjugate product failed to land in the base
    /// field; indicates an arithmetic bug upstream.
    CoefficientNotInBase {
        index: usize,
    },
    IterationCapExceeded {
        attempts: usize,
    },
    CoordinateLength {
        expected: usize,
        got: usize,
    },
    ValueOutOfRange {
        value: u64,
        p: u64,
    },
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::NotMonic => write!(f, "polynomial is not monic"),
            FieldError::ZeroDegree => write!(f, "polynomial must have degree at least 1"),
            FieldError::NotIrreducible => write!(f, "polynomial is not irreducible"),
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::DegreeCollapse { period } => {
                write!(
                    f,
                    "conjugates repeat with period {period}; degree collapses"
                )
            }
            FieldError::CoefficientNotInBase { index } => {
                write!(
                    f,
                    "coefficient {index} of the conjugate product is not in the base field"
                )
            }
            FieldError::IterationCapExceeded { attempts } => {
                write!(f, "random search failed after {attempts} attempts")
            }
            FieldError::CoordinateLength { expected, got } => {
                write!(f, "expected {expected} coordinates, got {got}")
            }
            FieldError::ValueOutOfRange { value, p } => {
                write!(f, "value {value} out of range for F_{p}")
            }
        }
    }
}

impl std::error::Error for FieldError {}

/// The prime field `F_p`. Also owns the dense polynomial arithmetic over it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

/// Dense polynomial over `F_p`: ascending coefficients, no trailing zeros,
/// the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly {
    coeffs: Vec<u64>,
}

impl Poly {
    pub fn from_coeffs(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![1] }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Poly { coeffs: vec![0, 1] }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0 via `is_zero` checks
    /// instead, so callers must not rely on this for zero.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&1)
    }

    /// Comma-separated coefficients, ascending degree.
    pub fn serialize(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl PrimeField {
    /// Creates `F_p`, checking primality by trial division.
    pub fn new(p: u64) -> Result<Self, FieldError> {
        if !is_prime_u64(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat's little theorem. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn poly_add(&self, a: &Poly, b: &Poly) -> Poly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..len).map(|i| self.add(a.coeff(i), b.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    pub fn poly_sub(&self, a: &Poly, b: &Poly) -> Poly {
        let len = a.coeffs.len().max(b.coeffs.len());
        let coeffs = (0..len).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect();
        Poly::from_coeffs(coeffs)
    }

    /// Schoolbook multiplication.
    pub fn poly_mul(&self, a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![0u64; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &ca) in a.coeffs.iter().enumerate() {
            if ca == 0 {
                continue;
            }
            for (j, &cb) in b.coeffs.iter().enumerate() {
                coeffs[i + j] = self.add(coeffs[i + j], self.mul(ca, cb));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// Euclidean division: returns `(quotient, remainder)` with
    /// `deg(remainder) < deg(divisor)`. Panics when dividing by zero.
    pub fn poly_divmod(&self, a: &Poly, b: &Poly) -> (Poly, Poly) {
        assert!(!b.is_zero(), "polynomial division by zero");
        if a.coeffs.len() < b.coeffs.len() {
            return (Poly::zero(), a.clone());
        }
        let mut rem = a.coeffs.clone();
        let db = b.degree();
        let lead_inv = self.inv(*b.coeffs.last().unwrap());
        let mut quot = vec![0u64; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let factor = self.mul(rem[i], lead_inv);
            if factor == 0 {
                continue;
            }
            quot[i - db] = factor;
            for (j, &cb) in b.coeffs.iter().enumerate() {
                rem[i - db + j] = self.sub(rem[i - db + j], self.mul(factor, cb));
            }
        }
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn poly_rem(&self, a: &Poly, b: &Poly) -> Poly {
        self.poly_divmod(a, b).1
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, a: &Poly, b: &Poly) -> Poly {
        let mut a = a.clone();
        let mut b = b.clone();
        while !b.is_zero() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let lead_inv = self.inv(*a.coeffs.last().unwrap());
        let coeffs = a.coeffs.iter().map(|&c| self.mul(c, lead_inv)).collect();
        Poly::from_coeffs(coeffs)
    }

    /// `base^exp mod modulus` by square-and-multiply.
    pub fn poly_powmod(&self, base: &Poly, mut exp: u64, modulus: &Poly) -> Poly {
        let mut acc = self.poly_rem(&Poly::one(), modulus);
        let mut base = self.poly_rem(base, modulus);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.poly_rem(&self.poly_mul(&acc, &base), modulus);
            }
            base = self.poly_rem(&self.poly_mul(&base, &base), modulus);
            exp >>= 1;
        }
        acc
    }

    pub fn poly_eval(&self, f: &Poly, x: u64) -> u64 {
        let mut acc = 0u64;
        for &c in f.coeffs.iter().rev() {
            acc = self.add(self.mul(acc, x), c);
        }
        acc
    }

    /// Rabin's irreducibility criterion for a monic `f` of degree `n >= 1`:
    /// `x^(p^n) = x (mod f)` and `gcd(x^(p^(n/r)) - x, f) = 1` for every
    /// prime `r` dividing `n`.
    pub fn is_irreducible(&self, f: &Poly) -> Result<bool, FieldError> {
        if f.is_zero() || !f.is_monic() {
            return Err(FieldError::NotMonic);
        }
        let n = f.degree();
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let checkpoints: Vec<usize> = prime_divisors(n).iter().map(|r| n / r).collect();
        let x = self.poly_rem(&Poly::x(), f);
        // iterated Frobenius: power[k] = x^(p^k) mod f
        let mut power = x.clone();
        for k in 1..=n {
            power = self.poly_powmod(&power, self.p, f);
            if checkpoints.contains(&k) {
                let g = self.poly_gcd(&self.poly_sub(&power, &x), f);
                if g != Poly::one() {
                    return Ok(false);
                }
            }
        }
        Ok(power == x)
    }

    /// Samples random monic polynomials of degree `n` until one passes the
    /// irreducibility test. Expected O(n) trials; a hard cap guards against
    /// a broken source of randomness.
    pub fn find_irreducible<R: Rng + ?Sized>(
        &self,
        n: usize,
        rng: &mut R,
    ) -> Result<Poly, FieldError> {
        if n == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let cap = 512 * n.max(8);
        for _ in 0..cap {
            let mut coeffs: Vec<u64> = (0..n).map(|_| rng.gen_range(0..self.p)).collect();
            coeffs.push(1);
            let f = Poly::from_coeffs(coeffs);
            if self.is_irreducible(&f)? {
                return Ok(f);
            }
        }
        Err(FieldError::IterationCapExceeded { attempts: cap })
    }
}

fn is_prime_u64(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// An element of `F_{p^n}` in polynomial-basis coordinates: the coefficient
/// vector of a polynomial in `beta` of degree below `n`, ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtElement {
    coords: Vec<u64>,
}

impl ExtElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// Comma-separated coordinates.
    pub fn serialize(&self) -> String {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        parts.join(",")
    }
}

/// The extension field `F_{p^n} = F_p[beta]/(f)` for a monic irreducible `f`
/// of degree `n`. Arithmetic methods are pure; the struct additionally keeps
/// an atomic counter of extension multiplications for delay-cost assertions.
#[derive(Debug)]
pub struct ExtField {
    base: PrimeField,
    n: usize,
    modulus: Poly,
    mul_count: AtomicU64,
}

impl Clone for ExtField {
    fn clone(&self) -> Self {
        ExtField {
            base: self.base.clone(),
            n: self.n,
            modulus: self.modulus.clone(),
            mul_count: AtomicU64::new(self.mul_count.load(Ordering::Relaxed)),
        }
    }
}

impl ExtField {
    pub fn new(base: PrimeField, modulus: Poly) -> Result<Self, FieldError> {
        if !base.is_irreducible(&modulus)? {
            return Err(FieldError::NotIrreducible);
        }
        let n = modulus.degree();
        Ok(ExtField {
            base,
            n,
            modulus,
            mul_count: AtomicU64::new(0),
        })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> &Poly {
        &self.modulus
    }

    /// Number of extension-field multiplications performed so far.
    pub fn mul_count(&self) -> u64 {
        self.mul_count.load(Ordering::Relaxed)
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement {
            coords: vec![0; self.n],
        }
    }

    pub fn one(&self) -> ExtElement {
        let mut coords = vec![0; self.n];
        coords[0] = 1;
        ExtElement { coords }
    }

    /// The residue class of `beta` itself (zero in the degenerate `n = 1`
    /// case, where the modulus is linear).
    pub fn beta(&self) -> ExtElement {
        if self.n == 1 {
            let root = self.base.neg(self.modulus.coeff(0));
            return ExtElement { coords: vec![root] };
        }
        let mut coords = vec![0; self.n];
        coords[1] = 1;
        ExtElement { coords }
    }

    pub fn from_coords(&self, coords: Vec<u64>) -> Result<ExtElement, FieldError> {
        if coords.len() != self.n {
            return Err(FieldError::CoordinateLength {
                expected: self.n,
                got: coords.len(),
            });
        }
        for &c in &coords {
            if c >= self.base.p() {
                return Err(FieldError::ValueOutOfRange {
                    value: c,
                    p: self.base.p(),
                });
            }
        }
        Ok(ExtElement { coords })
    }

    /// Reduces an arbitrary-degree polynomial in `beta` to coordinates.
    pub fn from_poly(&self, f: &Poly) -> ExtElement {
        let r = self.base.poly_rem(f, &self.modulus);
        let mut coords = vec![0; self.n];
        for (i, &c) in r.coeffs().iter().enumerate() {
            coords[i] = c;
        }
        ExtElement { coords }
    }

    fn to_poly(&self, a: &ExtElement) -> Poly {
        Poly::from_coeffs(a.coords.clone())
    }

    pub fn add(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| self.base.add(x, y))
            .collect();
        ExtElement { coords }
    }

    pub fn sub(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .map(|(&x, &y)| self.base.sub(x, y))
            .collect();
        ExtElement { coords }
    }

    pub fn neg(&self, a: &ExtElement) -> ExtElement {
        let coords = a.coords.iter().map(|&x| self.base.neg(x)).collect();
        ExtElement { coords }
    }

    pub fn scalar_mul(&self, c: u64, a: &ExtElement) -> ExtElement {
        let coords = a.coords.iter().map(|&x| self.base.mul(c, x)).collect();
        ExtElement { coords }
    }

    pub fn mul(&self, a: &ExtElement, b: &ExtElement) -> ExtElement {
        self.mul_count.fetch_add(1, Ordering::Relaxed);
        let prod = self.base.poly_mul(&self.to_poly(a), &self.to_poly(b));
        self.from_poly(&prod)
    }

    /// Inverse via the extended Euclidean algorithm.
    pub fn inv(&self, a: &ExtElement) -> Result<ExtElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let (mut r0, mut r1) = (self.modulus.clone(), self.to_poly(a));
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = self.base.poly_divmod(&r0, &r1);
            let t = self.base.poly_sub(&t0, &self.base.poly_mul(&q, &t1));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t;
        }
        // r0 is a nonzero constant gcd
        debug_assert_eq!(r0.degree(), 0);
        let scale = self.base.inv(r0.coeff(0));
        let coeffs = t0
            .coeffs()
            .iter()
            .map(|&c| self.base.mul(c, scale))
            .collect();
        Ok(self.from_poly(&Poly::from_coeffs(coeffs)))
    }

    pub fn pow(&self, a: &ExtElement, mut exp: u64) -> ExtElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// The Frobenius endomorphism `a -> a^p` in polynomial-basis coordinates.
    pub fn frobenius(&self, a: &ExtElement) -> ExtElement {
        self.pow(a, self.base.p())
    }

    /// Evaluates a polynomial with base-field coefficients at an extension
    /// element (Horner).
    pub fn eval_base_poly(&self, f: &Poly, at: &ExtElement) -> ExtElement {
        let mut acc = self.zero();
        for &c in f.coeffs().iter().rev() {
            acc = self.mul(&acc, at);
            acc.coords[0] = self.base.add(acc.coords[0], c);
        }
        acc
    }
}

/// Gauss-Jordan inversion of a square matrix over `F_p`. Returns `None` for
/// singular matrices.
fn invert_matrix(field: &PrimeField, mat: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let n = mat.len();
    let mut a: Vec<Vec<u64>> = mat.to_vec();
    let mut inv: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| a[r][col] != 0)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = field.inv(a[col][col]);
        for j in 0..n {
            a[col][j] = field.mul(a[col][j], scale);
            inv[col][j] = field.mul(inv[col][j], scale);
        }
        for row in 0..n {
            if row == col || a[row][col] == 0 {
                continue;
            }
            let factor = a[row][col];
            for j in 0..n {
                a[row][j] = field.sub(a[row][j], field.mul(factor, a[col][j]));
                inv[row][j] = field.sub(inv[row][j], field.mul(factor, inv[col][j]));
            }
        }
    }
    Some(inv)
}

/// A normal basis `{alpha, alpha^p, ..., alpha^(p^(n-1))}` of `F_{p^n}` over
/// `F_p`, with the change-of-basis matrices between normal and
/// polynomial-basis coordinates.
#[derive(Debug, Clone)]
pub struct NormalBasis {
    alpha: ExtElement,
    /// Column `k` holds the polynomial-basis coordinates of `alpha^(p^k)`.
    to_poly: Vec<Vec<u64>>,
    to_normal: Vec<Vec<u64>>,
}

impl NormalBasis {
    /// Accepts `alpha` iff its conjugates are linearly independent over
    /// `F_p` (checked by Gaussian elimination).
    pub fn try_new(ext: &ExtField, alpha: ExtElement) -> Result<Self, FieldError> {
        let n = ext.degree();
        let mut conj = alpha.clone();
        let mut cols: Vec<Vec<u64>> = Vec::with_capacity(n);
        for _ in 0..n {
            cols.push(conj.coords().to_vec());
            conj = ext.frobenius(&conj);
        }
        // row i, col k = coordinate i of alpha^(p^k)
        let to_poly: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|k| cols[k][i]).collect())
            .collect();
        let to_normal = invert_matrix(ext.base(), &to_poly).ok_or(FieldError::NotIrreducible)?;
        Ok(NormalBasis {
            alpha,
            to_poly,
            to_normal,
        })
    }

    /// Rejection-samples elements until one generates a normal basis. A
    /// constant fraction of elements do, so the cap of `64 n` trials is
    /// generous.
    pub fn find<R: Rng + ?Sized>(ext: &ExtField, rng: &mut R) -> Result<Self, FieldError> {
        let n = ext.degree();
        let p = ext.base().p();
        let cap = 64 * n.max(1);
        for _ in 0..cap {
            let coords: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
            let alpha = ExtElement { coords };
            if alpha.is_zero() {
                continue;
            }
            if let Ok(nb) = NormalBasis::try_new(ext, alpha) {
                return Ok(nb);
            }
        }
        Err(FieldError::IterationCapExceeded { attempts: cap })
    }

    pub fn alpha(&self) -> &ExtElement {
        &self.alpha
    }

    pub fn dimension(&self) -> usize {
        self.to_poly.len()
    }

    /// Column `k` of the change-of-basis matrix: `alpha^(p^k)` in
    /// polynomial-basis coordinates.
    pub fn conjugate_column(&self, k: usize) -> Vec<u64> {
        self.to_poly.iter().map(|row| row[k]).collect()
    }

    fn mat_vec(field: &PrimeField, mat: &[Vec<u64>], v: &[u64]) -> Vec<u64> {
        mat.iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&m, &x)| field.add(acc, field.mul(m, x)))
            })
            .collect()
    }

    /// Maps normal coordinates to a polynomial-basis element.
    pub fn to_poly_coords(&self, ext: &ExtField, normal: &[u64]) -> Result<ExtElement, FieldError> {
        if normal.len() != self.dimension() {
            return Err(FieldError::CoordinateLength {
                expected: self.dimension(),
                got: normal.len(),
            });
        }
        let coords = Self::mat_vec(ext.base(), &self.to_poly, normal);
        Ok(ExtElement { coords })
    }

    pub fn to_normal_coords(&self, ext: &ExtField, a: &ExtElement) -> Vec<u64> {
        Self::mat_vec(ext.base(), &self.to_normal, a.coords())
    }

    /// `gamma(lambda) = lambda_1 alpha + lambda_2 alpha^p + ... `: the word's
    /// symbols are its normal coordinates. Requires the word's alphabet size
    /// to equal `p`.
    pub fn gamma_from_word(&self, ext: &ExtField, lambda: &Word) -> Result<ExtElement, FieldError> {
        if u64::from(lambda.alphabet().size()) != ext.base().p() {
            return Err(FieldError::ValueOutOfRange {
                value: u64::from(lambda.alphabet().size()),
                p: ext.base().p(),
            });
        }
        let normal: Vec<u64> = lambda.symbols().iter().map(|&s| u64::from(s)).collect();
        self.to_poly_coords(ext, &normal)
    }
}

/// The action of the `k`-fold Frobenius `gamma -> gamma^(p^k)` on normal
/// coordinates: a cyclic rotation by `k` positions toward higher indices.
/// `k = n` (or 0) is the identity.
pub fn frobenius_normal(coords: &[u64], k: usize) -> Vec<u64> {
    let n = coords.len();
    let mut out = vec![0; n];
    for (i, &c) in coords.iter().enumerate() {
        out[(i + k) % n] = c;
    }
    out
}

/// The minimal polynomial of `gamma`, computed as the product of the linear
/// factors `(x - gamma^(p^k))` over the extension field. Requires the `n`
/// conjugates to be distinct; every coefficient of the product must embed in
/// the base field.
pub fn minimal_polynomial(ext: &ExtField, gamma: &ExtElement) -> Result<Poly, FieldError> {
    let n = ext.degree();
    let mut conjugates = Vec::with_capacity(n);
    let mut c = gamma.clone();
    for k in 0..n {
        if k > 0 && c == *gamma {
            return Err(FieldError::DegreeCollapse { period: k });
        }
        conjugates.push(c.clone());
        c = ext.frobenius(&c);
    }
    debug_assert_eq!(c, *gamma, "Frobenius orbit must close after n steps");

    // product of (x - c_k), coefficients over the extension field
    let mut coeffs: Vec<ExtElement> = vec![ext.one()];
    for conj in &conjugates {
        let neg = ext.neg(conj);
        let mut next: Vec<ExtElement> = vec![ext.zero(); coeffs.len() + 1];
        for (i, coeff) in coeffs.iter().enumerate() {
            next[i + 1] = ext.add(&next[i + 1], coeff);
            next[i] = ext.add(&next[i], &ext.mul(coeff, &neg));
        }
        coeffs = next;
    }

    let mut base_coeffs = Vec::with_capacity(coeffs.len());
    for (index, coeff) in coeffs.iter().enumerate() {
        if coeff.coords()[1..].iter().any(|&c| c != 0) {
            return Err(FieldError::CoefficientNotInBase { index });
        }
        base_coeffs.push(coeff.coords()[0]);
    }
    Ok(Poly::from_coeffs(base_coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Word};
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    fn poly(coeffs: &[u64]) -> Poly {
        Poly::from_coeffs(coeffs.to_vec())
    }

    /// x^6 + x + 1 over F_2.
    fn golden_modulus() -> Poly {
        poly(&[1, 1, 0, 0, 0, 0, 1])
    }

    fn golden_field() -> ExtField {
        ExtField::new(f2(), golden_modulus()).unwrap()
    }

    /// alpha = beta^5 + beta^2 + 1.
    fn golden_alpha(ext: &ExtField) -> ExtElement {
        ext.from_coords(vec![1, 0, 1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn prime_field_construction() {
        assert!(PrimeField::new(2).is_ok());
        assert!(PrimeField::new(97).is_ok());
        assert_eq!(PrimeField::new(1), Err(FieldError::NotPrime(1)));
        assert_eq!(PrimeField::new(91), Err(FieldError::NotPrime(91)));
    }

    #[test]
    fn poly_arith_examples() {
        let f = f2();
        let x_plus_1 = poly(&[1, 1]);
        assert_eq!(f.poly_mul(&x_plus_1, &x_plus_1), poly(&[1, 0, 1]));
        assert_eq!(f.poly_gcd(&poly(&[1, 0, 1]), &x_plus_1), x_plus_1);
        // x^(2^6) = x mod any irreducible of degree 6
        assert_eq!(
            f.poly_powmod(&Poly::x(), 1 << 6, &golden_modulus()),
            Poly::x()
        );
    }

    #[test]
    fn poly_divmod_invariant() {
        let f = PrimeField::new(5).unwrap();
        let a = poly(&[3, 1, 4, 1, 2]);
        let b = poly(&[2, 0, 1]);
        let (q, r) = f.poly_divmod(&a, &b);
        assert!(r.is_zero() || r.degree() < b.degree());
        assert_eq!(f.poly_add(&f.poly_mul(&q, &b), &r), a);
    }

    #[test]
    fn fermat_identity_for_all_irreducibles_up_to_degree_8() {
        let f = f2();
        for n in 1..=8usize {
            for mask in 0..(1u64 << n) {
                let mut coeffs: Vec<u64> = (0..n).map(|i| (mask >> i) & 1).collect();
                coeffs.push(1);
                let cand = Poly::from_coeffs(coeffs);
                if f.is_irreducible(&cand).unwrap() {
                    assert_eq!(
                        f.poly_powmod(&Poly::x(), 1u64 << n, &cand),
                        f.poly_rem(&Poly::x(), &cand),
                        "failed for {cand}"
                    );
                }
            }
        }
    }

    #[test]
    fn irreducibility_examples() {
        let f = f2();
        assert!(f.is_irreducible(&golden_modulus()).unwrap());
        // x^6 + x^5 + x^4 + x + 1
        assert!(f.is_irreducible(&poly(&[1, 1, 0, 0, 1, 1, 1])).unwrap());
        // x^2 + 1 = (x+1)^2
        assert!(!f.is_irreducible(&poly(&[1, 0, 1])).unwrap());
        // degree 1 is always irreducible
        assert!(f.is_irreducible(&poly(&[0, 1])).unwrap());
        // non-monic and constant inputs are rejected
        let f3 = PrimeField::new(3).unwrap();
        assert_eq!(f3.is_irreducible(&poly(&[1, 2])), Err(FieldError::NotMonic));
        assert_eq!(f.is_irreducible(&poly(&[1])), Err(FieldError::ZeroDegree));
    }

    #[test]
    fn count_of_degree_4_irreducibles_matches_lyndon_count() {
        let f = f2();
        let mut count = 0;
        for mask in 0..16u64 {
            let mut coeffs: Vec<u64> = (0..4).map(|i| (mask >> i) & 1).collect();
            coeffs.push(1);
            if f.is_irreducible(&Poly::from_coeffs(coeffs)).unwrap() {
                count += 1;
            }
        }
        assert_eq!(count, 3);
        assert_eq!(crate::lyndon::count_lyndon(4, 2).to_string(), "3");
    }

    #[test]
    fn find_irreducible_returns_valid_polynomials() {
        let mut rng = StdRng::seed_from_u64(7);
        for (p, n) in [(2u64, 6usize), (3, 4), (5, 3), (2, 1)] {
            let f = PrimeField::new(p).unwrap();
            let g = f.find_irreducible(n, &mut rng).unwrap();
            assert_eq!(g.degree(), n);
            assert!(g.is_monic());
            assert!(f.is_irreducible(&g).unwrap());
        }
    }

    #[test]
    fn ext_field_reduction() {
        let ext = golden_field();
        let beta = ext.beta();
        let beta5 = ext.pow(&beta, 5);
        // beta * beta^5 = beta^6 = beta + 1
        assert_eq!(
            ext.mul(&beta, &beta5),
            ext.from_coords(vec![1, 1, 0, 0, 0, 0]).unwrap()
        );
    }

    #[test]
    fn inverse_roundtrip() {
        let ext = golden_field();
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let coords: Vec<u64> = (0..6).map(|_| rng.gen_range(0..2)).collect();
            let a = ExtElement { coords };
            if a.is_zero() {
                assert_eq!(ext.inv(&a), Err(FieldError::DivisionByZero));
                continue;
            }
            let inv = ext.inv(&a).unwrap();
            assert_eq!(ext.mul(&a, &inv), ext.one());
        }
    }

    #[test]
    fn frobenius_has_order_n() {
        let ext = golden_field();
        let mut rng = StdRng::seed_from_u64(13);
        for _ in 0..20 {
            let coords: Vec<u64> = (0..6).map(|_| rng.gen_range(0..2)).collect();
            let a = ExtElement { coords };
            let mut b = a.clone();
            for _ in 0..6 {
                b = ext.frobenius(&b);
            }
            assert_eq!(a, b);
        }
    }

    #[test]
    fn normal_basis_examples() {
        let ext = golden_field();
        // the golden alpha is accepted
        assert!(NormalBasis::try_new(&ext, golden_alpha(&ext)).is_ok());
        // alpha = 1 is rejected for n >= 2: all conjugates are equal
        assert!(NormalBasis::try_new(&ext, ext.one()).is_err());

        // alpha = beta in F_4 = F_2[beta]/(beta^2+beta+1): conjugates
        // {beta, beta+1} are independent
        let f4 = ExtField::new(f2(), poly(&[1, 1, 1])).unwrap();
        let nb = NormalBasis::try_new(&f4, f4.beta()).unwrap();
        assert_eq!(nb.conjugate_column(0), vec![0, 1]);
        assert_eq!(nb.conjugate_column(1), vec![1, 1]);
    }

    #[test]
    fn change_of_basis_roundtrip() {
        let ext = golden_field();
        let nb = NormalBasis::try_new(&ext, golden_alpha(&ext)).unwrap();
        let mut rng = StdRng::seed_from_u64(17);
        for _ in 0..30 {
            let normal: Vec<u64> = (0..6).map(|_| rng.gen_range(0..2)).collect();
            let e = nb.to_poly_coords(&ext, &normal).unwrap();
            assert_eq!(nb.to_normal_coords(&ext, &e), normal);
        }
        // column k of to_poly holds alpha^(p^k)
        let mut conj = golden_alpha(&ext);
        for k in 0..6 {
            assert_eq!(nb.conjugate_column(k), conj.coords());
            conj = ext.frobenius(&conj);
        }
    }

    #[test]
    fn find_normal_basis_succeeds() {
        let mut rng = StdRng::seed_from_u64(23);
        for (p, modulus) in [
            (2u64, poly(&[1, 1, 0, 0, 0, 0, 1])),
            (3, poly(&[2, 2, 0, 1])),
        ] {
            let base = PrimeField::new(p).unwrap();
            let ext = ExtField::new(base, modulus).unwrap();
            let nb = NormalBasis::find(&ext, &mut rng).unwrap();
            assert!(!nb.alpha().is_zero());
        }
    }

    #[test]
    fn gamma_from_word_examples() {
        let ext = golden_field();
        let nb = NormalBasis::try_new(&ext, golden_alpha(&ext)).unwrap();
        let q = Alphabet::new(2);

        // lambda = 001011 -> alpha^4 + alpha^16 + alpha^32
        let lambda = Word::new(q, vec![0, 0, 1, 0, 1, 1]).unwrap();
        let gamma = nb.gamma_from_word(&ext, &lambda).unwrap();
        let alpha = golden_alpha(&ext);
        let expected = ext.add(
            &ext.pow(&alpha, 4),
            &ext.add(&ext.pow(&alpha, 16), &ext.pow(&alpha, 32)),
        );
        assert_eq!(gamma, expected);

        // zero word -> zero
        let zero = Word::new(q, vec![0; 6]).unwrap();
        assert!(nb.gamma_from_word(&ext, &zero).unwrap().is_zero());

        // unit vectors -> basis columns
        for k in 0..6 {
            let mut symbols = vec![0u32; 6];
            symbols[k] = 1;
            let e = Word::new(q, symbols).unwrap();
            assert_eq!(
                nb.gamma_from_word(&ext, &e).unwrap().coords(),
                nb.conjugate_column(k)
            );
        }
    }

    #[test]
    fn frobenius_acts_as_rotation_on_normal_coords() {
        let ext = golden_field();
        let nb = NormalBasis::try_new(&ext, golden_alpha(&ext)).unwrap();
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..50 {
            let normal: Vec<u64> = (0..6).map(|_| rng.gen_range(0..2)).collect();
            let gamma = nb.to_poly_coords(&ext, &normal).unwrap();
            // single Frobenius step rotates the coordinates one position
            let frob = ext.frobenius(&gamma);
            assert_eq!(
                nb.to_normal_coords(&ext, &frob),
                frobenius_normal(&normal, 1)
            );
            // k-fold steps match the k-rotation; k = n is the identity
            let mut acc = gamma.clone();
            for k in 1..=6usize {
                acc = ext.frobenius(&acc);
                assert_eq!(
                    nb.to_normal_coords(&ext, &acc),
                    frobenius_normal(&normal, k)
                );
            }
            assert_eq!(frobenius_normal(&normal, 6), normal);
        }
    }

    #[test]
    fn minimal_polynomial_golden_value() {
        let ext = golden_field();
        let nb = NormalBasis::try_new(&ext, golden_alpha(&ext)).unwrap();
        let lambda = Word::new(Alphabet::new(2), vec![0, 0, 1, 0, 1, 1]).unwrap();
        let gamma = nb.gamma_from_word(&ext, &lambda).unwrap();
        let g = minimal_polynomial(&ext, &gamma).unwrap();
        // x^6 + x^5 + x^4 + x + 1
        assert_eq!(g, poly(&[1, 1, 0, 0, 1, 1, 1]));
    }

    #[test]
    fn minimal_polynomial_of_beta_is_the_modulus() {
        let ext = golden_field();
        let g = minimal_polynomial(&ext, &ext.beta()).unwrap();
        assert_eq!(g, golden_modulus());
    }

    #[test]
    fn minimal_polynomial_rejects_periodic_words() {
        let ext = golden_field();
        let nb = NormalBasis::try_new(&ext, golden_alpha(&ext)).unwrap();
        let lambda = Word::new(Alphabet::new(2), vec![0, 1, 0, 1, 0, 1]).unwrap();
        let gamma = nb.gamma_from_word(&ext, &lambda).unwrap();
        assert_eq!(
            minimal_polynomial(&ext, &gamma),
            Err(FieldError::DegreeCollapse { period: 2 })
        );
    }

    #[test]
    fn minimal_polynomial_annihilates_all_conjugates() {
        let ext = golden_field();
        let nb = NormalBasis::try_new(&ext, golden_alpha(&ext)).unwrap();
        let lambda = Word::new(Alphabet::new(2), vec![0, 0, 1, 0, 1, 1]).unwrap();
        let gamma = nb.gamma_from_word(&ext, &lambda).unwrap();
        let g = minimal_polynomial(&ext, &gamma).unwrap();
        assert!(f2().is_irreducible(&g).unwrap());
        let mut c = gamma;
        for _ in 0..6 {
            assert!(ext.eval_base_poly(&g, &c).is_zero());
            c = ext.frobenius(&c);
        }
    }

    #[test]
    fn minimal_polynomial_invariant_under_rotation() {
        let ext = golden_field();
        let nb = NormalBasis::try_new(&ext, golden_alpha(&ext)).unwrap();
        let lambda = Word::new(Alphabet::new(2), vec![0, 0, 1, 0, 1, 1]).unwrap();
        let g0 = minimal_polynomial(&ext, &nb.gamma_from_word(&ext, &lambda).unwrap()).unwrap();
        for i in 2..=6 {
            let rotated = crate::words::rotate(&lambda, i);
            let gi =
                minimal_polynomial(&ext, &nb.gamma_from_word(&ext, &rotated).unwrap()).unwrap();
            assert_eq!(g0, gi);
        }
    }

    #[test]
    fn mul_counter_tracks_extension_multiplications() {
        let ext = golden_field();
        let before = ext.mul_count();
        let beta = ext.beta();
        let _ = ext.mul(&beta, &beta);
        assert_eq!(ext.mul_count(), before + 1);
    }
}
