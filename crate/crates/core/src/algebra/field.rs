use crate::error::{Error, Result};

/// Largest field order accepted by [`FiniteField::make`]; the exhaustive
/// irreducibility check is sized for this.
pub const MAX_FIELD_ORDER: usize = 10_000;

/// The finite field GF(p^r), elements stored as polynomials over Z_p of degree < r.
///
/// The flat index of an element is `sum_i c_i p^i` (constant term least
/// significant), which coincides with the index of the same coefficient tuple
/// in the additive group Z_p^r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: usize,
    r: usize,
    /// Coefficients of the monic modulus, constant term first, length r + 1.
    modulus: Vec<usize>,
    size: usize,
}

/// Polynomial coefficients, constant term first, length r.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement(Vec<usize>);

impl FieldElement {
    pub fn coeffs(&self) -> &[usize] {
        &self.0
    }
}

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2;
    while i * i <= n {
        if n % i == 0 {
            return false;
        }
        i += 1;
    }
    true
}

/// Splits `q` as `p^r` with `p` prime, if possible.
pub fn prime_power(q: usize) -> Option<(usize, usize)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut rest, mut r) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    (rest == 1).then_some((p, r))
}

/// Remainder of `num` divided by the monic polynomial `den` over Z_p.
fn poly_rem(num: &[usize], den: &[usize], p: usize) -> Vec<usize> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    while rem.len() > dd {
        let lead = rem.pop().unwrap_or(0);
        if lead != 0 {
            let shift = rem.len() - dd;
            for (i, &c) in den[..dd].iter().enumerate() {
                rem[shift + i] = (rem[shift + i] + (p - lead) * c) % p;
            }
        }
    }
    rem
}

/// Exhaustive check that the monic polynomial `poly` (constant term first)
/// has no monic factor of degree 1..=deg/2 over Z_p.
pub fn is_irreducible(poly: &[usize], p: usize) -> bool {
    let deg = poly.len().saturating_sub(1);
    if deg == 0 || poly[deg] != 1 {
        return false;
    }
    for k in 1..=deg / 2 {
        let count = p.pow(k as u32);
        for code in 0..count {
            let mut factor = Vec::with_capacity(k + 1);
            let mut c = code;
            for _ in 0..k {
                factor.push(c % p);
                c /= p;
            }
            factor.push(1);
            if poly_rem(poly, &factor, p).iter().all(|&x| x == 0) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Builds GF(p^r). For `r > 1` the modulus is the monic irreducible
    /// polynomial of degree r whose lower coefficients have the smallest
    /// encoding `sum_i c_i p^i`; this gives X^3+X+1 for GF(8).
    pub fn make(p: usize, r: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::arg(format!("{p} is not prime")));
        }
        if r == 0 {
            return Err(Error::arg("extension degree must be at least 1"));
        }
        let size = p
            .checked_pow(r as u32)
            .filter(|&s| s <= MAX_FIELD_ORDER)
            .ok_or_else(|| {
                Error::resource(format!("field order {p}^{r} exceeds {MAX_FIELD_ORDER}"))
            })?;
        let modulus = if r == 1 {
            vec![0, 1]
        } else {
            (0..size)
                .map(|code| {
                    let mut poly = Vec::with_capacity(r + 1);
                    let mut c = code;
                    for _ in 0..r {
                        poly.push(c % p);
                        c /= p;
                    }
                    poly.push(1);
                    poly
                })
                .find(|poly| is_irreducible(poly, p))
                .ok_or_else(|| Error::Internal(format!("no irreducible of degree {r}")))?
        };
        Ok(Self {
            p,
            r,
            modulus,
            size,
        })
    }

    /// Field of order `q`, which must be a prime power.
    pub fn of_order(q: usize) -> Result<Self> {
        let (p, r) =
            prime_power(q).ok_or_else(|| Error::arg(format!("{q} is not a prime power")))?;
        Self::make(p, r)
    }

    pub fn characteristic(&self) -> usize {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[usize] {
        &self.modulus
    }

    pub fn element(&self, coeffs: &[usize]) -> Result<FieldElement> {
        if coeffs.len() != self.r || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidElement(format!(
                "expected {} coefficients below {}, got {coeffs:?}",
                self.r, self.p
            )));
        }
        Ok(FieldElement(coeffs.to_vec()))
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(vec![0; self.r])
    }

    pub fn one(&self) -> FieldElement {
        let mut c = vec![0; self.r];
        c[0] = 1;
        FieldElement(c)
    }

    pub fn index_of(&self, a: &FieldElement) -> usize {
        a.0.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn element_at(&self, idx: usize) -> Result<FieldElement> {
        if idx >= self.size {
            return Err(Error::InvalidElement(format!(
                "index {idx} outside field of order {}",
                self.size
            )));
        }
        let mut c = idx;
        Ok(FieldElement(
            (0..self.r)
                .map(|_| {
                    let v = c % self.p;
                    c /= self.p;
                    v
                })
                .collect(),
        ))
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        self.element(&a.0).map(|_| ())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement(
            a.0.iter().zip(&b.0).map(|(x, y)| (x + y) % self.p).collect(),
        ))
    }

    pub fn neg(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        Ok(FieldElement(
            a.0.iter().map(|x| (self.p - x) % self.p).collect(),
        ))
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        let mut prod = vec![0usize; 2 * self.r - 1];
        for (i, &x) in a.0.iter().enumerate() {
            for (j, &y) in b.0.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        let mut rem = poly_rem(&prod, &self.modulus, self.p);
        rem.resize(self.r, 0);
        Ok(FieldElement(rem))
    }

    /// Multiplicative inverse by exhaustive search of the nonzero elements.
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if a.0.iter().all(|&c| c == 0) {
            return Err(Error::DivisionByZero);
        }
        let one = self.one();
        for idx in 1..self.size {
            let b = self.element_at(idx)?;
            if self.mul(a, &b)? == one {
                return Ok(b);
            }
        }
        Err(Error::Internal("nonzero element without inverse".into()))
    }

    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut stride = 1;
        for _ in 0..self.r {
            out += ((a % self.p + b % self.p) % self.p) * stride;
            a /= self.p;
            b /= self.p;
            stride *= self.p;
        }
        out
    }

    /// Product of two elements given by flat index.
    pub fn mul_index(&self, a: usize, b: usize) -> Result<usize> {
        let prod = self.mul(&self.element_at(a)?, &self.element_at(b)?)?;
        Ok(self.index_of(&prod))
    }

    /// Full multiplication table by flat index.
    pub fn mul_table(&self) -> Result<Vec<Vec<usize>>> {
        (0..self.size)
            .map(|a| (0..self.size).map(|b| self.mul_index(a, b)).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_powers() {
        assert!(is_prime(2) && is_prime(7) && !is_prime(9) && !is_prime(1));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn gf8_modulus_and_cube() {
        let f = FiniteField::make(2, 3).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 0, 1]);
        let x = f.element(&[0, 1, 0]).unwrap();
        let x3 = f.mul(&f.mul(&x, &x).unwrap(), &x).unwrap();
        assert_eq!(x3.coeffs(), &[1, 1, 0]);
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = FiniteField::make(5, 1).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                assert_eq!(f.mul_index(a, b).unwrap(), a * b % 5);
                assert_eq!(f.add_index(a, b), (a + b) % 5);
            }
        }
        assert_eq!(f.mul_index(3, 4).unwrap(), 2);
    }

    #[test]
    fn gf9_modulus_from_scan() {
        // Independent scan: the monic quadratics X^2 + bX + c over Z_3 with no
        // root, ordered by c + 3b.
        let mut first = None;
        'scan: for code in 0..9 {
            let (c, b) = (code % 3, code / 3);
            for t in 0..3 {
                if (t * t + b * t + c) % 3 == 0 {
                    continue 'scan;
                }
            }
            first = Some(vec![c, b, 1]);
            break;
        }
        let f = FiniteField::make(3, 2).unwrap();
        assert_eq!(Some(f.modulus().to_vec()), first);
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn gf4_table() {
        let f = FiniteField::make(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
        // X * X = X + 1, i.e. index 2 * 2 = 3.
        assert_eq!(f.mul_index(2, 2).unwrap(), 3);
    }

    #[test]
    fn unit_and_inverse() {
        let f = FiniteField::make(3, 2).unwrap();
        for idx in 0..f.size() {
            let a = f.element_at(idx).unwrap();
            assert_eq!(f.mul(&a, &f.one()).unwrap(), a);
            if idx > 0 {
                let inv = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &inv).unwrap(), f.one());
            }
        }
        assert_eq!(f.inv(&f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn errors() {
        assert!(matches!(FiniteField::make(4, 1), Err(Error::Argument(_))));
        assert!(matches!(FiniteField::make(2, 0), Err(Error::Argument(_))));
        assert!(matches!(FiniteField::make(2, 20), Err(Error::Resource(_))));
        let f = FiniteField::make(2, 3).unwrap();
        assert!(f.element(&[2, 0, 0]).is_err());
        assert!(f.element(&[1, 0]).is_err());
    }

    #[test]
    fn irreducibility_check() {
        assert!(is_irreducible(&[1, 1, 0, 1], 2));
        assert!(is_irreducible(&[1, 0, 1, 1], 2));
        // (X+1)^2 = X^2 + 1 over Z_2.
        assert!(!is_irreducible(&[1, 0, 1], 2));
        // X^4 + X^2 + 1 = (X^2+X+1)^2 has no roots but is reducible.
        assert!(!is_irreducible(&[1, 0, 1, 0, 1], 2));
    }

    #[test]
    fn field_axioms_exhaustive() {
        for (p, r) in [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (2, 5), (2, 6), (3, 4)] {
            let f = FiniteField::make(p, r).unwrap();
            let q = f.size();
            assert!(q <= 81);
            let mul = f.mul_table().unwrap();
            for a in 0..q {
                assert_eq!(mul[a][1], a);
                if a != 0 {
                    assert_eq!((1..q).filter(|&b| mul[a][b] == 1).count(), 1);
                }
                for b in 0..q {
                    assert_eq!(mul[a][b], mul[b][a]);
                    for c in 0..q {
                        let lhs = mul[a][f.add_index(b, c)];
                        let rhs = f.add_index(mul[a][b], mul[a][c]);
                        assert_eq!(lhs, rhs, "distributivity in GF({p}^{r})");
                        assert_eq!(mul[mul[a][b]][c], mul[a][mul[b][c]]);
                    }
                }
            }
        }
    }
}
