//! Eigenvalues lying in the base field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Field, Mat, Scalar};

/// Above this size the rational-root search gives up.
const DIVISOR_LIMIT: u64 = 1_000_000_000_000;

/// Distinct eigenvalues of a square matrix that lie in its field, ascending.
///
/// Over `F_p` this is a scan of all `p` candidates. Over `Q` the characteristic
/// polynomial comes from Faddeev–LeVerrier and roots from the rational root
/// theorem; `None` when the coefficients are too large to factor by trial division.
pub fn eigenvalues_in_field(a: &Mat) -> Option<Vec<Scalar>> {
    assert!(a.is_square());
    let n = a.rows();
    let f = a.field();
    match f {
        Field::Prime(_) => Some(
            f.elements()
                .filter(|l| a.sub(&Mat::identity(f, n).scale(l)).rank() < n)
                .collect(),
        ),
        Field::Rationals => {
            let cp = char_poly_q(a);
            rational_roots(&cp).map(|rs| rs.into_iter().map(Scalar::Q).collect())
        }
    }
}

/// Coefficients `c_0..c_n` (ascending, monic) of `det(t·I − A)` over `Q`.
pub fn char_poly_q(a: &Mat) -> Vec<BigRational> {
    let n = a.rows();
    let f = Field::Rationals;
    let mut c = vec![BigRational::zero(); n + 1];
    c[n] = BigRational::one();
    let mut m = Mat::zeros(f, n, n);
    for k in 1..=n {
        let next = a.mul(&m).add(&Mat::identity(f, n).scale(&Scalar::Q(c[n - k + 1].clone())));
        m = next;
        let tr = match a.mul(&m).trace() {
            Scalar::Q(x) => x,
            Scalar::Fp(_) => unreachable!(),
        };
        c[n - k] = -tr / BigRational::from_integer(BigInt::from(k));
    }
    c
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > DIVISOR_LIMIT {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(BigInt::from(d));
            if d * d != n {
                out.push(BigInt::from(n / d));
            }
        }
        d += 1;
    }
    Some(out)
}

fn eval(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, a| acc * x + a)
}

/// Distinct rational roots of a polynomial given by ascending coefficients.
pub fn rational_roots(c: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut c: Vec<BigRational> = c.to_vec();
    while c.last().is_some_and(Zero::is_zero) {
        c.pop();
    }
    let mut roots = Vec::new();
    if c.len() <= 1 {
        return Some(roots);
    }
    if c[0].is_zero() {
        roots.push(BigRational::zero());
        while c.first().is_some_and(Zero::is_zero) {
            c.remove(0);
        }
    }
    if c.len() > 1 {
        let lcm = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = c.iter().map(|x| (x * &lcm).to_integer()).collect();
        let lead = divisors(ints.last().unwrap())?;
        let constant = divisors(&ints[0])?;
        for num in &constant {
            for den in &lead {
                for sign in [1, -1] {
                    let r = BigRational::new(num * sign, den.clone());
                    if !roots.contains(&r) && eval(&c, &r).is_zero() {
                        roots.push(r);
                    }
                }
            }
        }
    }
    roots.sort();
    Some(roots)
}
