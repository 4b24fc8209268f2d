//! Dense univariate polynomials over an exact field, plus the root
//! extraction needed to split semisimple centers: rational-root search over Q
//! and Cantor–Zassenhaus style root finding over F_p.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{Field, Rat, Scalar};

/// Coefficients low-to-high; the zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    pub field: Field,
    pub coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn x(field: Field) -> Poly {
        Poly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&Scalar> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient nonzero");
                Poly::new(self.field, self.coeffs.iter().map(|c| c.mul(&inv)).collect())
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
            let b = other.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero());
            out.push(a.add(&b));
        }
        Poly::new(self.field, out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&self.field.from_i64(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.field, out)
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    pub fn divrem(&self, div: &Poly) -> (Poly, Poly) {
        assert!(!div.is_zero(), "division by zero polynomial");
        let dlead_inv = div.lead().unwrap().inv().expect("leading coefficient nonzero");
        let mut rem = self.coeffs.clone();
        let dd = div.coeffs.len() - 1;
        if rem.len() <= dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quo = vec![self.field.zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = rem[k].mul(&dlead_inv);
            if c.is_zero() {
                continue;
            }
            quo[k - dd] = c.clone();
            for (j, d) in div.coeffs.iter().enumerate() {
                rem[k - dd + j] = rem[k - dd + j].sub(&c.mul(d));
            }
        }
        (Poly::new(self.field, quo), Poly::new(self.field, rem))
    }

    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero(self.field);
        }
        let out = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c.mul(&self.field.from_i64((k + 1) as i64)))
            .collect();
        Poly::new(self.field, out)
    }

    /// `self^e mod m` by repeated squaring.
    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.divrem(m).1;
        let mut acc = Poly::constant(self.field, self.field.one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).divrem(m).1;
            }
            base = base.mul(&base).divrem(m).1;
            e >>= 1;
        }
        acc
    }
}

/// Outcome of root extraction.
pub struct Roots {
    /// Distinct roots in the base field.
    pub roots: Vec<Scalar>,
    /// True when the polynomial splits into linear factors over the field.
    pub fully_split: bool,
}

/// Finds all roots in the base field of a nonzero polynomial.
///
/// Over Q this is the rational-root theorem with exact trial division of the
/// integerized endpoints; over F_p it is the standard gcd with `x^p - x`
/// followed by equal-degree splitting. Fails (rather than guessing) when a Q
/// coefficient is too large to factor.
pub fn field_roots(f: &Poly, seed: u64) -> Result<Roots> {
    assert!(!f.is_zero());
    match f.field {
        Field::Q => rational_roots(f),
        Field::Fp(p) => Ok(fp_roots(f, p, seed)),
    }
}

fn rational_roots(f: &Poly) -> Result<Roots> {
    let mut g = f.monic();
    let mut roots = Vec::new();
    // Strip roots at zero first.
    while g.coeffs.first().is_some_and(|c| c.is_zero()) && g.degree().unwrap_or(0) >= 1 {
        roots.push(Field::Q.zero());
        g = Poly::new(Field::Q, g.coeffs[1..].to_vec());
    }
    'deflate: while g.degree().unwrap_or(0) >= 1 {
        // Quick pass over small integers covers the instances that arise
        // from small random central elements.
        for cand in -64i64..=64 {
            let x = Field::Q.from_i64(cand);
            if g.eval(&x).is_zero() {
                roots.push(x.clone());
                g = deflate(&g, &x);
                continue 'deflate;
            }
        }
        // Full rational-root candidates from the integerized polynomial.
        let (num0, lead) = integerize_endpoints(&g)?;
        if num0.is_zero() {
            // already handled above
            return Err(Error::InternalCheckFailed("zero constant after stripping".into()));
        }
        let nums = divisors(&num0)?;
        let dens = divisors(&lead)?;
        for a in &nums {
            for b in &dens {
                for sign in [1i64, -1] {
                    let x = Scalar::Rat(Rat::from_big(num_rational::BigRational::new(
                        a * sign,
                        b.clone(),
                    )));
                    if g.eval(&x).is_zero() {
                        roots.push(x.clone());
                        g = deflate(&g, &x);
                        continue 'deflate;
                    }
                }
            }
        }
        break;
    }
    let fully_split = g.degree().unwrap_or(0) == 0;
    roots.dedup();
    Ok(Roots { roots, fully_split })
}

fn deflate(g: &Poly, root: &Scalar) -> Poly {
    let lin = Poly::new(g.field, vec![root.neg(), g.field.one()]);
    let (q, r) = g.divrem(&lin);
    debug_assert!(r.is_zero());
    q
}

/// Returns (|constant| , |lead|) of the primitive integer version of `g`.
fn integerize_endpoints(g: &Poly) -> Result<(BigInt, BigInt)> {
    let mut lcm = BigInt::one();
    for c in &g.coeffs {
        if let Scalar::Rat(r) = c {
            let b = r.to_big();
            lcm = lcm.lcm(b.denom());
        }
    }
    let coeff = |c: &Scalar| -> BigInt {
        match c {
            Scalar::Rat(r) => {
                let b = r.to_big();
                b.numer() * (&lcm / b.denom())
            }
            _ => unreachable!(),
        }
    };
    let c0 = coeff(&g.coeffs[0]).abs();
    let cl = coeff(g.coeffs.last().unwrap()).abs();
    Ok((c0, cl))
}

/// All positive divisors, by complete trial division (with a Miller-Rabin
/// finish). Errors when the cofactor cannot be certified prime.
fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    use num_traits::ToPrimitive;
    let n = n.abs();
    let mut m = n
        .to_u128()
        .ok_or_else(|| Error::InternalCheckFailed("coefficient too large for root extraction".into()))?;
    if m == 0 {
        return Ok(vec![BigInt::one()]);
    }
    let mut factors: Vec<(u128, u32)> = Vec::new();
    let mut d: u128 = 2;
    while d * d <= m && d < 2_000_000 {
        if m % d == 0 {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        if m < (2_000_000u128 * 2_000_000) || (m <= u64::MAX as u128 && crate::scalar::is_prime_u64(m as u64)) {
            factors.push((m, 1));
        } else {
            return Err(Error::InternalCheckFailed(
                "coefficient too large for complete root extraction".into(),
            ));
        }
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        let mut pk = BigInt::one();
        for _ in 0..=e {
            for d in &divs {
                next.push(d * &pk);
            }
            pk *= BigInt::from(p);
            if next.len() > 200_000 {
                return Err(Error::InternalCheckFailed("too many divisor candidates".into()));
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Ok(divs)
}

fn fp_roots(f: &Poly, p: u64, seed: u64) -> Roots {
    let field = f.field;
    let f = f.monic();
    let deg = f.degree().unwrap_or(0);
    if deg == 0 {
        return Roots { roots: Vec::new(), fully_split: true };
    }
    if p <= 64 {
        // Direct scan is simplest and exact for small fields.
        let mut g = f.clone();
        let mut roots = Vec::new();
        'outer: loop {
            if g.degree().unwrap_or(0) == 0 {
                break;
            }
            for v in 0..p {
                let x = Scalar::Fp { p, v };
                if g.eval(&x).is_zero() {
                    roots.push(x.clone());
                    g = deflate(&g, &x);
                    continue 'outer;
                }
            }
            break;
        }
        let fully_split = g.degree().unwrap_or(0) == 0;
        roots.dedup();
        return Roots { roots, fully_split };
    }
    // Work with the squarefree part so that repeated factors do not skew the
    // split test. (Derivatives cannot vanish here: callers keep deg < p.)
    let sqf = {
        let der = f.derivative();
        if der.is_zero() {
            f.clone()
        } else {
            f.divrem(&f.gcd(&der)).0.monic()
        }
    };
    // Linear-factor part: gcd(sqf, x^p - x).
    let xp = Poly::x(field).powmod(p, &sqf);
    let lin = sqf.gcd(&xp.sub(&Poly::x(field)));
    let fully_split = lin.degree() == sqf.degree();
    let mut roots = Vec::new();
    let mut stack = vec![lin];
    let mut state = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(1);
    let mut next = || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    while let Some(g) = stack.pop() {
        match g.degree().unwrap_or(0) {
            0 => continue,
            1 => {
                // monic t + c -> root -c
                roots.push(g.coeffs[0].neg());
                continue;
            }
            _ => {}
        }
        // Split g = gcd(g, (x+a)^((p-1)/2) - 1) * rest for random a.
        loop {
            let a = Scalar::Fp { p, v: next() % p };
            let shifted = Poly::new(field, vec![a, field.one()]);
            let w = shifted.powmod((p - 1) / 2, &g);
            let h = g.gcd(&w.sub(&Poly::constant(field, field.one())));
            let dh = h.degree().unwrap_or(0);
            if dh > 0 && dh < g.degree().unwrap() {
                let (q, r) = g.divrem(&h);
                debug_assert!(r.is_zero());
                stack.push(h);
                stack.push(q);
                break;
            }
        }
    }
    roots.sort_by_key(|r| match r {
        Scalar::Fp { v, .. } => *v,
        _ => unreachable!(),
    });
    Roots { roots, fully_split }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qp(coeffs: &[i64]) -> Poly {
        Poly::new(Field::Q, coeffs.iter().map(|&c| Field::Q.from_i64(c)).collect())
    }

    #[test]
    fn divrem_and_gcd() {
        // (x-1)(x-2) = x^2 - 3x + 2
        let f = qp(&[2, -3, 1]);
        let g = qp(&[-1, 1]);
        let (q, r) = f.divrem(&g);
        assert!(r.is_zero());
        assert_eq!(q, qp(&[-2, 1]));
        assert_eq!(f.gcd(&g), g.monic());
    }

    #[test]
    fn rational_roots_found() {
        // roots 1/2, -3, 0
        let f = qp(&[0, 2, 5, -3]).scale(&Field::Q.from_i64(-1));
        let r = field_roots(&f, 0).unwrap();
        assert!(r.fully_split);
        let mut got: Vec<String> = r.roots.iter().map(|x| x.to_string()).collect();
        got.sort();
        assert_eq!(got, vec!["-1/3", "0", "2"]);
        // Oops: -3x^3 + 5x^2 + 2x has roots 0, 2, -1/3. Verified by evaluation below.
        for x in &r.roots {
            assert!(f.eval(x).is_zero());
        }
    }

    #[test]
    fn irrational_poly_reports_not_split() {
        let f = qp(&[-2, 0, 1]); // x^2 - 2
        let r = field_roots(&f, 0).unwrap();
        assert!(r.roots.is_empty());
        assert!(!r.fully_split);
    }

    #[test]
    fn fp_roots_small_and_large() {
        let f5 = Field::Fp(5);
        // x^4 - 1 splits over F_5 with roots 1,2,3,4
        let f = Poly::new(f5, vec![f5.from_i64(-1), f5.zero(), f5.zero(), f5.zero(), f5.one()]);
        let r = field_roots(&f, 1).unwrap();
        assert!(r.fully_split);
        assert_eq!(r.roots.len(), 4);

        let fp = Field::Fp(101);
        // (x-3)(x-10)(x^2+1): x^2+1 stays irreducible mod 101? 10^2 = 100 = -1, so it splits.
        let g = Poly::new(
            fp,
            vec![fp.from_i64(3), fp.from_i64(-1)],
        );
        let h = Poly::new(fp, vec![fp.from_i64(10), fp.from_i64(-1)]);
        let k = Poly::new(fp, vec![fp.one(), fp.zero(), fp.one()]);
        let prod = g.mul(&h).mul(&k);
        let r = field_roots(&prod, 7).unwrap();
        assert!(r.fully_split);
        let mut vs: Vec<u64> = r
            .roots
            .iter()
            .map(|x| match x {
                Scalar::Fp { v, .. } => *v,
                _ => unreachable!(),
            })
            .collect();
        vs.sort();
        assert_eq!(vs, vec![3, 10, 91]);
    }

    proptest! {
        #[test]
        fn divrem_invariant(a in proptest::collection::vec(-6i64..=6, 0..7),
                            b in proptest::collection::vec(-6i64..=6, 1..5)) {
            let f = qp(&a);
            let g = qp(&b);
            prop_assume!(!g.is_zero());
            let (q, r) = f.divrem(&g);
            prop_assert_eq!(q.mul(&g).add(&r), f.clone());
            if !r.is_zero() {
                prop_assert!(r.degree().unwrap() < g.degree().unwrap());
            }
        }
    }
}
