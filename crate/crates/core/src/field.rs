//! Exact arithmetic in the tower `F_p ⊂ F_q ⊂ F_{q^m}`.
//!
//! `F_q = F_p[y]/(g)` with `deg g = e`, and `F_{q^m} = F_q[z]/(h)` with
//! `deg h = m`. An element of `F_{q^m}` is stored as the mixed-radix integer
//! of its coefficient vector: `sum_i b_i q^i` where `b_i ∈ F_q` is the
//! coefficient of `z^i`, itself stored as `sum_j c_j p^j` with `c_j` the
//! coefficient of `y^j`. Consequently `F_q` sits inside `F_{q^m}` as exactly
//! the elements with index `< q`, and index order on elements is the integer
//! value order of their coefficient vectors (highest degree most significant).
//!
//! Small towers (`q^m <= 256`) cache their operation tables; the polynomial
//! routines remain the reference and are checked against the tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{self, Coeffs, PrimeCoeffs};

const TABLE_LIMIT: u32 = 256;
const MAX_ORDER: u64 = 1 << 24;

/// An element of `F_{q^m}` (and, when its index is below `q`, of `F_q`).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElem(u32);

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem(0);
    pub const ONE: ExtElem = ExtElem(1);

    /// Wraps a raw index. Use [`FieldTower::check`] to validate it against a tower.
    pub const fn from_index(index: u32) -> Self {
        ExtElem(index)
    }

    pub const fn index(self) -> u32 {
        self.0
    }

    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Arithmetic of `F_q` on indices `0..q`.
#[derive(Debug)]
struct BaseField {
    p: u32,
    e: usize,
    q: u32,
    /// Monic, length `e + 1`, over `F_p`.
    modulus: Vec<u32>,
}

impl BaseField {
    fn digits(&self, mut a: u32) -> Vec<u32> {
        let mut d = vec![0; self.e];
        for c in d.iter_mut() {
            *c = a % self.p;
            a /= self.p;
        }
        d
    }

    fn pack(&self, d: &[u32]) -> u32 {
        d.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return (a + b) % self.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        self.pack(&s)
    }

    fn neg(&self, a: u32) -> u32 {
        if self.e == 1 {
            return (self.p - a) % self.p;
        }
        let s: Vec<u32> = self.digits(a).iter().map(|x| (self.p - x) % self.p).collect();
        self.pack(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let f = PrimeCoeffs(self.p);
        if self.e == 1 {
            return f.mul(a, b);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * self.e - 1];
        for (i, &x) in da.iter().enumerate() {
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = f.add(prod[i + j], f.mul(x, y));
            }
        }
        let mut r = poly::rem_monic(&f, &prod, &self.modulus);
        r.resize(self.e, 0);
        self.pack(&r)
    }
}

impl Coeffs for BaseField {
    fn size(&self) -> u32 {
        self.q
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        BaseField::add(self, a, b)
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        BaseField::add(self, a, self.neg(b))
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        BaseField::mul(self, a, b)
    }
}

#[derive(Debug)]
struct Tables {
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    frob: Vec<u16>,
}

#[derive(Debug)]
struct Inner {
    base: BaseField,
    m: usize,
    order: u32,
    /// Monic, length `m + 1`, entries are `F_q` indices.
    ext_modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// The chain `F_p ⊂ F_q ⊂ F_{q^m}` with explicit irreducible moduli.
///
/// Cloning is cheap; all clones share the same tables.
#[derive(Clone)]
pub struct FieldTower {
    inner: Arc<Inner>,
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldTower")
            .field("p", &self.p())
            .field("e", &self.e())
            .field("m", &self.m())
            .field("base_modulus", &self.inner.base.modulus)
            .field("ext_modulus", &self.inner.ext_modulus)
            .finish()
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base.p == other.inner.base.p
                && self.inner.base.modulus == other.inner.base.modulus
                && self.inner.ext_modulus == other.inner.ext_modulus)
    }
}

impl Eq for FieldTower {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= p as u64 {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldTower {
    /// Builds and validates a tower. Omitted moduli default to the smallest
    /// monic irreducible of the required degree (integer value order on the
    /// coefficient vector, constant term least significant).
    ///
    /// `base_modulus` has `e + 1` entries in `0..p`; `ext_modulus` has `m + 1`
    /// entries, each an `F_q` coefficient given as `e` integers. Both are
    /// constant term first and must be monic.
    pub fn new(
        p: u32,
        e: usize,
        m: usize,
        base_modulus: Option<&[u32]>,
        ext_modulus: Option<&[Vec<u32>]>,
    ) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroDegree(e));
        }
        if m == 0 {
            return Err(Error::ZeroDegree(m));
        }
        let order = (p as u64)
            .checked_pow((e * m) as u32)
            .filter(|&o| o <= MAX_ORDER)
            .ok_or(Error::FieldTooLarge { p, degree: e * m })?;
        let q = (p as u64).pow(e as u32) as u32;

        let prime = PrimeCoeffs(p);
        let base_mod = match base_modulus {
            Some(g) => {
                if g.len() != e + 1 {
                    return Err(Error::BadModulus(format!(
                        "base modulus needs {} coefficients, got {}",
                        e + 1,
                        g.len()
                    )));
                }
                if g.iter().any(|&c| c >= p) || g[e] != 1 {
                    return Err(Error::BadModulus(
                        "base modulus must be monic with coefficients in 0..p".into(),
                    ));
                }
                if !poly::is_irreducible(&prime, g) {
                    return Err(Error::ReducibleModulus { which: "base" });
                }
                g.to_vec()
            }
            None => poly::smallest_irreducible(&prime, e),
        };
        let base = BaseField {
            p,
            e,
            q,
            modulus: base_mod,
        };

        let ext_mod = match ext_modulus {
            Some(h) => {
                if h.len() != m + 1 {
                    return Err(Error::BadModulus(format!(
                        "extension modulus needs {} coefficients, got {}",
                        m + 1,
                        h.len()
                    )));
                }
                let mut packed = Vec::with_capacity(m + 1);
                for c in h {
                    if c.len() != e || c.iter().any(|&x| x >= p) {
                        return Err(Error::BadModulus(format!(
                            "extension modulus coefficient {c:?} is not an element of F_q"
                        )));
                    }
                    packed.push(base.pack(c));
                }
                if packed[m] != 1 {
                    return Err(Error::BadModulus("extension modulus must be monic".into()));
                }
                if !poly::is_irreducible(&base, &packed) {
                    return Err(Error::ReducibleModulus { which: "extension" });
                }
                packed
            }
            None => poly::smallest_irreducible(&base, m),
        };

        let mut inner = Inner {
            base,
            m,
            order: order as u32,
            ext_modulus: ext_mod,
            tables: None,
        };
        if inner.order <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        Ok(FieldTower {
            inner: Arc::new(inner),
        })
    }

    /// Tower with default moduli.
    pub fn with_defaults(p: u32, e: usize, m: usize) -> Result<Self> {
        Self::new(p, e, m, None, None)
    }

    pub fn p(&self) -> u32 {
        self.inner.base.p
    }

    pub fn e(&self) -> usize {
        self.inner.base.e
    }

    pub fn q(&self) -> u32 {
        self.inner.base.q
    }

    pub fn m(&self) -> usize {
        self.inner.m
    }

    /// `q^m`.
    pub fn order(&self) -> u32 {
        self.inner.order
    }

    pub fn base_modulus(&self) -> &[u32] {
        &self.inner.base.modulus
    }

    /// Extension modulus with each `F_q` coefficient expanded to `e` integers.
    pub fn ext_modulus(&self) -> Vec<Vec<u32>> {
        self.inner
            .ext_modulus
            .iter()
            .map(|&c| self.inner.base.digits(c))
            .collect()
    }

    pub fn contains(&self, a: ExtElem) -> bool {
        a.0 < self.inner.order
    }

    pub fn check(&self, a: ExtElem) -> Result<ExtElem> {
        if self.contains(a) {
            Ok(a)
        } else {
            Err(Error::ForeignElement(a.0))
        }
    }

    /// All elements of `F_{q^m}` in index order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElem> + Clone {
        (0..self.inner.order).map(ExtElem)
    }

    /// The `q` elements of `F_q` in index order.
    pub fn base_elements(&self) -> impl Iterator<Item = ExtElem> + Clone {
        (0..self.inner.base.q).map(ExtElem)
    }

    /// `z^i` for `i < m`, the `i`-th polynomial basis vector.
    pub fn z_pow(&self, i: usize) -> ExtElem {
        assert!(i < self.m(), "z^{i} is not a basis vector");
        ExtElem(self.q().pow(i as u32))
    }

    /// Coordinate of `a` on `z^i` in the polynomial basis, as an `F_q` element.
    pub fn digit(&self, a: ExtElem, i: usize) -> ExtElem {
        ExtElem((a.0 / self.q().pow(i as u32)) % self.q())
    }

    /// Coordinates of `a` over the polynomial basis `(1, z, …, z^{m-1})`.
    pub fn digits(&self, a: ExtElem) -> Vec<ExtElem> {
        let q = self.q();
        let mut v = a.0;
        (0..self.m())
            .map(|_| {
                let d = v % q;
                v /= q;
                ExtElem(d)
            })
            .collect()
    }

    pub fn from_digits(&self, d: &[ExtElem]) -> ExtElem {
        debug_assert_eq!(d.len(), self.m());
        ExtElem(d.iter().rev().fold(0, |acc, c| acc * self.q() + c.0))
    }

    /// Nested coefficient form: `m` arrays of `e` integers, constant term first.
    pub fn coeffs(&self, a: ExtElem) -> Vec<Vec<u32>> {
        self.digits(a)
            .into_iter()
            .map(|b| self.inner.base.digits(b.0))
            .collect()
    }

    pub fn from_coeffs(&self, c: &[Vec<u32>]) -> Result<ExtElem> {
        if c.len() != self.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: c.len(),
            });
        }
        let mut digits = Vec::with_capacity(self.m());
        for b in c {
            if b.len() != self.e() {
                return Err(Error::DimensionMismatch {
                    expected: self.e(),
                    got: b.len(),
                });
            }
            if let Some(&bad) = b.iter().find(|&&x| x >= self.p()) {
                return Err(Error::ForeignElement(bad));
            }
            digits.push(ExtElem(self.inner.base.pack(b)));
        }
        Ok(self.from_digits(&digits))
    }

    #[inline]
    pub fn add(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if let Some(t) = &self.inner.tables {
            return ExtElem(t.add[(a.0 * self.inner.order + b.0) as usize] as u32);
        }
        self.add_slow(a, b)
    }

    fn add_slow(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let p = self.p();
        if p == 2 {
            return ExtElem(a.0 ^ b.0);
        }
        let (mut x, mut y) = (a.0, b.0);
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place = place.wrapping_mul(p);
        }
        ExtElem(out)
    }

    #[inline]
    pub fn neg(&self, a: ExtElem) -> ExtElem {
        if let Some(t) = &self.inner.tables {
            return ExtElem(t.neg[a.0 as usize] as u32);
        }
        self.neg_slow(a)
    }

    fn neg_slow(&self, a: ExtElem) -> ExtElem {
        let p = self.p();
        if p == 2 {
            return a;
        }
        let mut x = a.0;
        let (mut out, mut place) = (0u32, 1u32);
        while x > 0 {
            out += ((p - x % p) % p) * place;
            x /= p;
            place = place.wrapping_mul(p);
        }
        ExtElem(out)
    }

    #[inline]
    pub fn sub(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        if let Some(t) = &self.inner.tables {
            return ExtElem(t.mul[(a.0 * self.inner.order + b.0) as usize] as u32);
        }
        self.mul_by_polynomials(a, b)
    }

    /// Schoolbook product in `F_q[z]` followed by reduction modulo the
    /// extension modulus; the reference every cached table is checked against.
    fn mul_by_polynomials(&self, a: ExtElem, b: ExtElem) -> ExtElem {
        let base = &self.inner.base;
        let m = self.m();
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u32; 2 * m - 1];
        for (i, x) in da.iter().enumerate() {
            if x.0 == 0 {
                continue;
            }
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = base.add(prod[i + j], base.mul(x.0, y.0));
            }
        }
        let mut r = poly::rem_monic(base, &prod, &self.inner.ext_modulus);
        r.resize(m, 0);
        let d: Vec<ExtElem> = r.into_iter().map(ExtElem).collect();
        self.from_digits(&d)
    }

    /// Checked product: both operands must belong to this tower.
    pub fn try_mul(&self, a: ExtElem, b: ExtElem) -> Result<ExtElem> {
        Ok(self.mul(self.check(a)?, self.check(b)?))
    }

    pub fn pow(&self, a: ExtElem, mut exp: u64) -> ExtElem {
        let mut base = a;
        let mut acc = ExtElem::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: ExtElem) -> Result<ExtElem> {
        self.check(a)?;
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(t) = &self.inner.tables {
            return Ok(ExtElem(t.inv[a.0 as usize] as u32));
        }
        Ok(self.inv_slow(a))
    }

    fn inv_slow(&self, a: ExtElem) -> ExtElem {
        // a^(q^m - 2)
        self.pow(a, self.inner.order as u64 - 2)
    }

    /// `a^(q^j)`, the `j`-th power of the relative Frobenius.
    pub fn frobenius(&self, a: ExtElem, j: usize) -> ExtElem {
        let j = j % self.m();
        if let Some(t) = &self.inner.tables {
            let mut x = a.0;
            for _ in 0..j {
                x = t.frob[x as usize] as u32;
            }
            return ExtElem(x);
        }
        self.frobenius_by_powering(a, j)
    }

    fn frobenius_by_powering(&self, a: ExtElem, j: usize) -> ExtElem {
        let exp = (self.q() as u64).pow((j % self.m()) as u32);
        self.pow(a, exp)
    }

    /// True iff `a ∈ F_q`.
    pub fn is_base_rational(&self, a: ExtElem) -> bool {
        a.0 < self.q()
    }
}

fn build_tables(inner: &Inner) -> Tables {
    // Temporary tower without tables so the reference routines run.
    let bare = FieldTower {
        inner: Arc::new(Inner {
            base: BaseField {
                p: inner.base.p,
                e: inner.base.e,
                q: inner.base.q,
                modulus: inner.base.modulus.clone(),
            },
            m: inner.m,
            order: inner.order,
            ext_modulus: inner.ext_modulus.clone(),
            tables: None,
        }),
    };
    let n = inner.order;
    let mut add = Vec::with_capacity((n * n) as usize);
    let mut mul = Vec::with_capacity((n * n) as usize);
    for a in 0..n {
        for b in 0..n {
            add.push(bare.add_slow(ExtElem(a), ExtElem(b)).0 as u16);
            mul.push(bare.mul_by_polynomials(ExtElem(a), ExtElem(b)).0 as u16);
        }
    }
    let neg = (0..n).map(|a| bare.neg_slow(ExtElem(a)).0 as u16).collect();
    let inv = (0..n)
        .map(|a| {
            if a == 0 {
                0
            } else {
                bare.inv_slow(ExtElem(a)).0 as u16
            }
        })
        .collect();
    let frob = (0..n)
        .map(|a| bare.frobenius_by_powering(ExtElem(a), 1).0 as u16)
        .collect();
    Tables {
        add,
        mul,
        neg,
        inv,
        frob,
    }
}
