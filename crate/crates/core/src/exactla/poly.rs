//! Dense univariate polynomials over `F_p`, enough for pencil determinants.

/// Coefficients little-endian, no trailing zeros (the zero polynomial is empty).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpPoly {
    p: u32,
    c: Vec<u32>,
}

impl FpPoly {
    pub fn new(p: u32, mut c: Vec<u32>) -> FpPoly {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u32) -> FpPoly {
        FpPoly { p, c: Vec::new() }
    }

    pub fn constant(p: u32, a: u32) -> FpPoly {
        FpPoly::new(p, vec![a])
    }

    /// `a + b·t`
    pub fn linear(p: u32, a: u32, b: u32) -> FpPoly {
        FpPoly::new(p, vec![a, b])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn eval(&self, t: u32) -> u32 {
        let p = self.p as u64;
        self.c
            .iter()
            .rev()
            .fold(0u64, |acc, &a| (acc * t as u64 + a as u64) % p) as u32
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n)
            .map(|i| {
                let a = self.c.get(i).copied().unwrap_or(0) as u64;
                let b = o.c.get(i).copied().unwrap_or(0) as u64;
                ((a + b) % self.p as u64) as u32
            })
            .collect();
        FpPoly::new(self.p, c)
    }

    pub fn neg(&self) -> FpPoly {
        let c = self.c.iter().map(|&a| (self.p - a) % self.p).collect();
        FpPoly::new(self.p, c)
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let p = self.p as u64;
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + a as u64 * b as u64) % p;
            }
        }
        FpPoly::new(self.p, c.into_iter().map(|x| x as u32).collect())
    }

    /// Quotient and remainder.
    ///
    /// # Panics
    /// On division by zero.
    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p as u64;
        let dl = d.c.len();
        let lead_inv = inv_mod(*d.c.last().unwrap(), self.p) as u64;
        let mut r: Vec<u64> = self.c.iter().map(|&x| x as u64).collect();
        if r.len() < dl {
            return (FpPoly::zero(self.p), self.clone());
        }
        let mut q = vec![0u64; r.len() - dl + 1];
        for k in (0..q.len()).rev() {
            let coef = r[k + dl - 1] * lead_inv % p;
            q[k] = coef;
            if coef == 0 {
                continue;
            }
            for (j, &b) in d.c.iter().enumerate() {
                r[k + j] = (r[k + j] + p - coef * b as u64 % p) % p;
            }
        }
        (
            FpPoly::new(self.p, q.into_iter().map(|x| x as u32).collect()),
            FpPoly::new(self.p, r.into_iter().map(|x| x as u32).collect()),
        )
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// `det(A + t·B)` for square residue matrices, by fraction-free (Bareiss) elimination.
pub fn pencil_det(p: u32, n: usize, a: &[u32], b: &[u32]) -> FpPoly {
    assert_eq!(a.len(), n * n);
    assert_eq!(b.len(), n * n);
    if n == 0 {
        return FpPoly::constant(p, 1);
    }
    let mut m: Vec<FpPoly> = (0..n * n).map(|k| FpPoly::linear(p, a[k], b[k])).collect();
    let mut prev = FpPoly::constant(p, 1);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k * n + k].is_zero() {
            let Some(sw) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                return FpPoly::zero(p);
            };
            for j in 0..n {
                m.swap(k * n + j, sw * n + j);
            }
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[i * n + j]
                    .mul(&m[k * n + k])
                    .sub(&m[i * n + k].mul(&m[k * n + j]));
                let (q, r) = num.divrem(&prev);
                debug_assert!(r.is_zero(), "Bareiss division must be exact");
                m[i * n + j] = q;
            }
        }
        prev = m[k * n + k].clone();
    }
    let det = m[n * n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}
