use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// A finite Abelian group written as a direct product Z_{d_1} x ... x Z_{d_r}.
///
/// Elements are addressed either as residue tuples ([`GroupElement`]) or by a
/// flat index `sum_j c_j * prod_{i<j} d_i` (little-endian mixed radix).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<usize>,
    size: usize,
    /// lcm of the orders; character phases are computed as integers mod this.
    exponent: usize,
}

/// A group element as a tuple of residues, one per cyclic factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<usize>);

/// The label `k` of a character `chi_k`. Shaped like a group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CharacterIndex(Vec<usize>);

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

impl CharacterIndex {
    pub fn coords(&self) -> &[usize] {
        &self.0
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl AbelianGroup {
    pub fn new(orders: Vec<usize>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::arg("a group needs at least one cyclic factor"));
        }
        if let Some(d) = orders.iter().find(|&&d| d < 2) {
            return Err(Error::arg(format!("cyclic factor order {d} is below 2")));
        }
        let mut size: usize = 1;
        let mut exponent: usize = 1;
        for &d in &orders {
            size = size
                .checked_mul(d)
                .ok_or_else(|| Error::resource("group order overflows"))?;
            exponent = exponent / gcd(exponent, d) * d;
        }
        Ok(Self {
            orders,
            size,
            exponent,
        })
    }

    /// The cyclic group Z_d.
    pub fn cyclic(d: usize) -> Result<Self> {
        Self::new(vec![d])
    }

    pub fn orders(&self) -> &[usize] {
        &self.orders
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Builds an element from residues, rejecting wrong length or out-of-range entries.
    pub fn element(&self, coords: &[usize]) -> Result<GroupElement> {
        self.check_coords(coords)?;
        Ok(GroupElement(coords.to_vec()))
    }

    pub fn character_index(&self, coords: &[usize]) -> Result<CharacterIndex> {
        self.check_coords(coords)?;
        Ok(CharacterIndex(coords.to_vec()))
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.orders.len() {
            return Err(Error::InvalidElement(format!(
                "expected {} coordinates, got {}",
                self.orders.len(),
                coords.len()
            )));
        }
        for (j, (&c, &d)) in coords.iter().zip(&self.orders).enumerate() {
            if c >= d {
                return Err(Error::InvalidElement(format!(
                    "coordinate {j} is {c}, not below {d}"
                )));
            }
        }
        Ok(())
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check_coords(&a.0)?;
        self.check_coords(&b.0)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), d)| (x + y) % d)
                .collect(),
        ))
    }

    pub fn neg(&self, a: &GroupElement) -> Result<GroupElement> {
        self.check_coords(&a.0)?;
        Ok(GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, d)| (d - x) % d)
                .collect(),
        ))
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.add(a, &self.neg(b)?)
    }

    /// Flat index of an element.
    pub fn index_of(&self, a: &GroupElement) -> usize {
        let mut idx = 0;
        let mut stride = 1;
        for (c, d) in a.0.iter().zip(&self.orders) {
            idx += c * stride;
            stride *= d;
        }
        idx
    }

    /// Element with the given flat index.
    pub fn element_at(&self, mut idx: usize) -> Result<GroupElement> {
        if idx >= self.size {
            return Err(Error::InvalidElement(format!(
                "index {idx} outside group of order {}",
                self.size
            )));
        }
        let mut coords = Vec::with_capacity(self.orders.len());
        for &d in &self.orders {
            coords.push(idx % d);
            idx /= d;
        }
        Ok(GroupElement(coords))
    }

    /// Sum of two elements given by flat index.
    pub fn add_index(&self, a: usize, b: usize) -> usize {
        let (mut a, mut b) = (a, b);
        let mut out = 0;
        let mut stride = 1;
        for &d in &self.orders {
            out += ((a % d + b % d) % d) * stride;
            a /= d;
            b /= d;
            stride *= d;
        }
        out
    }

    pub fn neg_index(&self, a: usize) -> usize {
        let mut a = a;
        let mut out = 0;
        let mut stride = 1;
        for &d in &self.orders {
            out += ((d - a % d) % d) * stride;
            a /= d;
            stride *= d;
        }
        out
    }

    pub fn sub_index(&self, a: usize, b: usize) -> usize {
        self.add_index(a, self.neg_index(b))
    }

    /// Numerator `t` of the phase `chi_k(a) = exp(2 pi i t / exponent)`, exact in integers.
    fn phase_numerator(&self, k: usize, a: usize) -> usize {
        let (mut k, mut a) = (k, a);
        let mut t = 0usize;
        for &d in &self.orders {
            let scale = self.exponent / d;
            t = (t + (k % d) * (a % d) % d * scale) % self.exponent;
            k /= d;
            a /= d;
        }
        t
    }

    /// `chi_k(a)` for flat indices `k` and `a`.
    pub fn character_at(&self, k: usize, a: usize) -> Complex64 {
        let t = self.phase_numerator(k, a);
        // Quarter turns are returned exactly.
        let e = self.exponent;
        if t == 0 {
            return Complex64::new(1.0, 0.0);
        } else if 2 * t == e {
            return Complex64::new(-1.0, 0.0);
        } else if 4 * t == e {
            return Complex64::new(0.0, 1.0);
        } else if 4 * t == 3 * e {
            return Complex64::new(0.0, -1.0);
        }
        Complex64::from_polar(1.0, 2.0 * PI * t as f64 / self.exponent as f64)
    }

    /// `chi_k(a) = prod_j exp(2 pi i k_j a_j / d_j)`.
    pub fn character(&self, k: &CharacterIndex, a: &GroupElement) -> Result<Complex64> {
        self.check_coords(&k.0)?;
        self.check_coords(&a.0)?;
        let ki = self.index_of(&GroupElement(k.0.clone()));
        Ok(self.character_at(ki, self.index_of(a)))
    }

    /// Full character table, row `k`, column `a`.
    pub fn character_table(&self) -> Vec<Vec<Complex64>> {
        (0..self.size)
            .map(|k| (0..self.size).map(|a| self.character_at(k, a)).collect())
            .collect()
    }

    /// `fhat(k) = sum_a conj(chi_k(a)) f(a)` over a table indexed by flat element index.
    pub fn fourier_forward(&self, f: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_table(f)?;
        Ok((0..self.size)
            .map(|k| {
                f.iter()
                    .enumerate()
                    .map(|(a, v)| self.character_at(k, a).conj() * v)
                    .sum()
            })
            .collect())
    }

    /// `f(a) = (1/|G|) sum_k chi_k(a) fhat(k)`.
    pub fn fourier_inverse(&self, fhat: &[Complex64]) -> Result<Vec<Complex64>> {
        self.check_table(fhat)?;
        let n = self.size as f64;
        Ok((0..self.size)
            .map(|a| {
                fhat.iter()
                    .enumerate()
                    .map(|(k, v)| self.character_at(k, a) * v)
                    .sum::<Complex64>()
                    / n
            })
            .collect())
    }

    fn check_table(&self, t: &[Complex64]) -> Result<()> {
        if t.len() != self.size {
            return Err(Error::Data(format!(
                "table has {} values, group has {} elements",
                t.len(),
                self.size
            )));
        }
        if t.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
            return Err(Error::Data("table contains non-finite values".into()));
        }
        Ok(())
    }

    /// Iterator over all elements in flat-index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.size).map(|i| self.element_at(i).expect("index in range"))
    }
}
