//! Dense polynomials over small finite fields, used only to pick and validate
//! the moduli of a field tower.

/// Minimal arithmetic surface needed for polynomial division over a small
/// field whose elements are encoded as integers `0..size`.
pub(crate) trait Coeffs {
    fn size(&self) -> u32;
    fn add(&self, a: u32, b: u32) -> u32;
    fn sub(&self, a: u32, b: u32) -> u32;
    fn mul(&self, a: u32, b: u32) -> u32;
}

pub(crate) struct PrimeCoeffs(pub u32);

impl Coeffs for PrimeCoeffs {
    fn size(&self) -> u32 {
        self.0
    }
    fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }
    fn sub(&self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }
}

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// Remainder of `a` modulo the monic polynomial `b` (constant term first).
pub(crate) fn rem_monic<F: Coeffs>(field: &F, a: &[u32], b: &[u32]) -> Vec<u32> {
    let db = b.len() - 1;
    let mut r = trim(a.to_vec());
    while r.len() > db {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - db;
        for (i, &bi) in b.iter().enumerate() {
            let t = field.mul(lead, bi);
            r[shift + i] = field.sub(r[shift + i], t);
        }
        r = trim(r);
    }
    r
}

/// The monic polynomial of degree `deg` whose lower coefficients are the
/// base-`size` digits of `idx`, least significant digit = constant term.
pub(crate) fn monic_from_index(size: u32, deg: usize, mut idx: u64) -> Vec<u32> {
    let mut c = Vec::with_capacity(deg + 1);
    for _ in 0..deg {
        c.push((idx % size as u64) as u32);
        idx /= size as u64;
    }
    c.push(1);
    c
}

/// Trial division by every monic polynomial of degree `1..=deg/2`.
pub(crate) fn is_irreducible<F: Coeffs>(field: &F, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (field.size() as u64).pow(d as u32);
        for idx in 0..count {
            let g = monic_from_index(field.size(), d, idx);
            if rem_monic(field, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Smallest monic irreducible of degree `deg`, ordering candidates by the
/// integer `sum c_i * size^i` of their lower coefficients.
pub(crate) fn smallest_irreducible<F: Coeffs>(field: &F, deg: usize) -> Vec<u32> {
    let count = (field.size() as u64).pow(deg as u32);
    (0..count)
        .map(|idx| monic_from_index(field.size(), deg, idx))
        .find(|f| is_irreducible(field, f))
        .expect("irreducible polynomials exist in every degree")
}
