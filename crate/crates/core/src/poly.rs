//! Dense univariate polynomials over the rationals, coefficients low to high.

use num_traits::{One, Zero};

use crate::exactmat::Rational;

pub type Poly = Vec<Rational>;

pub fn trim(mut p: Poly) -> Poly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

pub fn constant(c: Rational) -> Poly {
    trim(vec![c])
}

pub fn monomial(k: usize) -> Poly {
    let mut p = vec![Rational::zero(); k + 1];
    p[k] = Rational::one();
    p
}

pub fn add(a: &Poly, b: &Poly) -> Poly {
    let n = a.len().max(b.len());
    let z = Rational::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

pub fn scale(a: &Poly, c: &Rational) -> Poly {
    trim(a.iter().map(|x| x * c).collect())
}

pub fn sub(a: &Poly, b: &Poly) -> Poly {
    add(a, &scale(b, &-Rational::one()))
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

pub fn pow(a: &Poly, k: usize) -> Poly {
    (0..k).fold(constant(Rational::one()), |acc, _| mul(&acc, a))
}

/// Remainder modulo a monic polynomial.
pub fn rem(a: &Poly, m: &Poly) -> Poly {
    let dm = m.len() - 1;
    debug_assert!(m[dm].is_one());
    let mut r = a.clone();
    while r.len() > dm {
        let lead = r.pop().expect("nonempty");
        let shift = r.len() - dm;
        for (i, c) in m[..dm].iter().enumerate() {
            r[shift + i] -= &lead * c;
        }
        r = trim(r);
        if r.len() <= dm {
            break;
        }
    }
    trim(r)
}

/// Quotient and remainder by a monic polynomial.
pub fn div_rem(a: &Poly, m: &Poly) -> (Poly, Poly) {
    let dm = m.len() - 1;
    debug_assert!(m[dm].is_one());
    let mut r = trim(a.clone());
    let mut quot = vec![Rational::zero(); r.len().saturating_sub(dm)];
    while r.len() > dm {
        let lead = r.last().expect("nonempty").clone();
        let shift = r.len() - 1 - dm;
        quot[shift] = lead.clone();
        for (i, c) in m.iter().enumerate() {
            r[shift + i] -= &lead * c;
        }
        r = trim(r);
    }
    (trim(quot), r)
}

pub fn eval(a: &Poly, x: &Rational) -> Rational {
    a.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
}

/// `∏ (t - a_i)`.
pub fn from_roots(points: &[Rational]) -> Poly {
    points
        .iter()
        .fold(constant(Rational::one()), |acc, a| mul(&acc, &vec![-a.clone(), Rational::one()]))
}

/// Coefficients padded to length `n`.
pub fn padded(a: &Poly, n: usize) -> Vec<Rational> {
    let mut v = a.clone();
    v.resize(n.max(v.len()), Rational::zero());
    v
}

pub fn to_string(a: &Poly) -> String {
    if a.is_empty() {
        return "0".into();
    }
    let mut parts = Vec::new();
    for (k, c) in a.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{k}"),
        };
        let coef = if c.is_one() && k > 0 {
            String::new()
        } else if *c == -Rational::one() && k > 0 {
            "-".into()
        } else {
            c.to_string()
        };
        parts.push(format!("{coef}{mono}"));
    }
    parts.join(" + ").replace("+ -", "- ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::q;

    fn p(v: &[i64]) -> Poly {
        trim(v.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn arithmetic() {
        let f = from_roots(&[q(0), q(1)]);
        assert_eq!(f, p(&[0, -1, 1]));
        assert_eq!(rem(&p(&[0, 0, 1]), &f), p(&[0, 1]));
        assert_eq!(eval(&f, &q(3)), q(6));
        assert_eq!(pow(&f, 2), p(&[0, 0, 1, -2, 1]));
        assert_eq!(rem(&f, &f), Vec::<Rational>::new());
        let a = p(&[3, 0, -1, 2, 5]);
        let (qq, r) = div_rem(&a, &f);
        assert_eq!(add(&mul(&qq, &f), &r), a);
        assert!(r.len() < f.len());
        assert_eq!(to_string(&p(&[0, 0, 3, -2])), "-2t^3 + 3t^2");
    }
}
