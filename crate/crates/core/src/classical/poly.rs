use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::dd::Dd;
use crate::error::{Error, Result};

/// Exponents `(x1, y1, z1, x2, y2, z2)`; the second triple is zero on one sphere.
pub type Monomial = [u16; 6];

/// Real polynomial in the coordinates of one or two unit spheres, kept in
/// the canonical form where every `z` exponent is at most 1.
///
/// Coefficients are stored in double-double precision: Lanczos vectors in
/// the monomial basis cancel heavily once the degree passes about 20.
#[derive(Clone, PartialEq)]
pub struct SpherePolynomial {
    spheres: u8,
    terms: BTreeMap<Monomial, Dd>,
}

impl fmt::Debug for SpherePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SpherePolynomial({} spheres, {} terms)", self.spheres, self.terms.len())
    }
}

fn add_term(map: &mut BTreeMap<Monomial, Dd>, m: Monomial, c: Dd) {
    if c.is_zero() {
        return;
    }
    let e = map.entry(m).or_insert(Dd::ZERO);
    *e = *e + c;
}

/// Adds `c * m` to `out` after rewriting `z^2 = 1 - x^2 - y^2` on every sphere.
fn reduce_into(out: &mut BTreeMap<Monomial, Dd>, m: Monomial, c: Dd) {
    for s in 0..2 {
        let zi = 3 * s + 2;
        if m[zi] >= 2 {
            let mut base = m;
            base[zi] -= 2;
            reduce_into(out, base, c);
            let mut mx = base;
            mx[3 * s] += 2;
            reduce_into(out, mx, -c);
            let mut my = base;
            my[3 * s + 1] += 2;
            reduce_into(out, my, -c);
            return;
        }
    }
    add_term(out, m, c);
}

impl SpherePolynomial {
    pub fn zero(spheres: u8) -> Self {
        assert!(spheres == 1 || spheres == 2, "one or two spheres");
        Self {
            spheres,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spheres: u8, c: f64) -> Self {
        Self::from_terms(spheres, [([0; 6], c)]).expect("constant is valid")
    }

    /// Builds and canonicalizes a polynomial from `(monomial, coefficient)` pairs.
    pub fn from_terms(spheres: u8, terms: impl IntoIterator<Item = (Monomial, f64)>) -> Result<Self> {
        if spheres != 1 && spheres != 2 {
            return Err(Error::InvalidArgument(format!("one or two spheres, got {spheres}")));
        }
        let mut map = BTreeMap::new();
        for (m, c) in terms {
            if spheres == 1 && m[3..].iter().any(|e| *e != 0) {
                return Err(Error::InvalidArgument("second-sphere exponent on a single sphere".into()));
            }
            if !c.is_finite() {
                return Err(Error::InvalidArgument("coefficients must be finite".into()));
            }
            reduce_into(&mut map, m, Dd::from_f64(c));
        }
        let mut p = Self { spheres, terms: map };
        p.prune();
        Ok(p)
    }

    /// Coordinate `axis` (0 = x, 1 = y, 2 = z) of sphere `sphere` (0 or 1).
    pub fn coordinate(spheres: u8, sphere: usize, axis: usize) -> Self {
        assert!(sphere < spheres as usize && axis < 3);
        let mut m = [0u16; 6];
        m[3 * sphere + axis] = 1;
        Self::from_terms(spheres, [(m, 1.0)]).expect("coordinate is valid")
    }

    fn prune(&mut self) {
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn spheres(&self) -> u8 {
        self.spheres
    }

    /// Canonical monomials with their coefficients rounded to `f64`.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, f64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, c.to_f64()))
    }

    /// Coefficient of a canonical monomial.
    pub fn coefficient(&self, m: &Monomial) -> f64 {
        self.terms.get(m).map_or(0.0, |c| c.to_f64())
    }

    pub(crate) fn dd_terms(&self) -> &BTreeMap<Monomial, Dd> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree of the canonical form.
    pub fn degree(&self) -> usize {
        self.terms
            .keys()
            .map(|m| m.iter().map(|e| *e as usize).sum())
            .max()
            .unwrap_or(0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.abs()).fold(0.0, f64::max)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.spheres != other.spheres {
            return Err(Error::DimensionMismatch {
                left: self.spheres as usize,
                right: other.spheres as usize,
            });
        }
        Ok(())
    }

    pub fn scale(&self, f: f64) -> Self {
        let mut p = Self {
            spheres: self.spheres,
            terms: self.terms.iter().map(|(m, c)| (*m, c.mul_f64(f))).collect(),
        };
        p.prune();
        p
    }

    pub(crate) fn divide(&self, f: f64) -> Self {
        Self {
            spheres: self.spheres,
            terms: self.terms.iter().map(|(m, c)| (*m, c.div_f64(f))).collect(),
        }
    }

    /// `self + f * other`.
    pub fn add_scaled(&self, other: &Self, f: f64) -> Result<Self> {
        self.add_scaled_dd(other, Dd::from_f64(f))
    }

    pub(crate) fn add_scaled_dd(&self, other: &Self, f: Dd) -> Result<Self> {
        self.check(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            add_term(&mut terms, *m, f * *c);
        }
        let mut p = Self {
            spheres: self.spheres,
            terms,
        };
        p.prune();
        Ok(p)
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.add_scaled(other, 1.0)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let mut m = *ma;
                for i in 0..6 {
                    m[i] += mb[i];
                }
                reduce_into(&mut out, m, *ca * *cb);
            }
        }
        let mut p = Self {
            spheres: self.spheres,
            terms: out,
        };
        p.prune();
        Ok(p)
    }

    /// Partial derivative along variable `var` (index into the monomial),
    /// returned as raw terms without canonical reduction.
    fn derivative(&self, var: usize) -> Vec<(Monomial, Dd)> {
        self.terms
            .iter()
            .filter(|(m, _)| m[var] > 0)
            .map(|(m, c)| {
                let mut d = *m;
                d[var] -= 1;
                (d, c.mul_f64(m[var] as f64))
            })
            .collect()
    }

    /// Value at a point `(x1, y1, z1[, x2, y2, z2])`.
    pub fn evaluate(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut v = c.to_f64();
                for (e, x) in m.iter().zip(point.iter().chain(std::iter::repeat(&0.0))) {
                    if *e > 0 {
                        v *= x.powi(*e as i32);
                    }
                }
                v
            })
            .sum()
    }
}

/// `{f, g} = sum_spheres sum eps_ijk x_k d_i f d_j g`, so `{x, y} = z`.
pub fn poisson_bracket(f: &SpherePolynomial, g: &SpherePolynomial) -> Result<SpherePolynomial> {
    f.check(g)?;
    let mut out = BTreeMap::new();
    for s in 0..f.spheres as usize {
        let df: Vec<Vec<(Monomial, Dd)>> = (0..3).map(|i| f.derivative(3 * s + i)).collect();
        let dg: Vec<Vec<(Monomial, Dd)>> = (0..3).map(|i| g.derivative(3 * s + i)).collect();
        // (i, j, k) cyclic: x_k (d_i f d_j g - d_j f d_i g)
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            for (neg, a, b) in [(false, &df[i], &dg[j]), (true, &df[j], &dg[i])] {
                for (ma, ca) in a {
                    for (mb, cb) in b {
                        let mut m = *ma;
                        for t in 0..6 {
                            m[t] += mb[t];
                        }
                        m[3 * s + k] += 1;
                        let c = *ca * *cb;
                        reduce_into(&mut out, m, if neg { -c } else { c });
                    }
                }
            }
        }
    }
    let mut p = SpherePolynomial {
        spheres: f.spheres,
        terms: out,
    };
    // Exact cancellations leave rounding residue; drop it relative to the
    // largest contribution.
    let scale = p.max_abs_coeff();
    p.terms.retain(|_, c| c.abs() > 1e-30 * scale);
    Ok(p)
}

fn average_dd(a: u16, b: u16, c: u16) -> Dd {
    if a % 2 == 1 || b % 2 == 1 || c % 2 == 1 {
        return Dd::ZERO;
    }
    // Peel two powers at a time: <x^(a+2) ...> = <x^a ...> (a+1)/(a+b+c+3).
    let mut v = Dd::from_f64(1.0);
    let (mut a, mut b, mut c) = (a as u32, b as u32, c as u32);
    while a >= 2 {
        a -= 2;
        v = v.mul_f64((a + 1) as f64).div_f64((a + b + c + 3) as f64);
    }
    while b >= 2 {
        b -= 2;
        v = v.mul_f64((b + 1) as f64).div_f64((b + c + 3) as f64);
    }
    while c >= 2 {
        c -= 2;
        v = v.mul_f64((c + 1) as f64).div_f64((c + 3) as f64);
    }
    v
}

/// Uniform average of `x^a y^b z^c` over the unit sphere.
pub fn monomial_average(a: u16, b: u16, c: u16) -> f64 {
    average_dd(a, b, c).to_f64()
}

/// Average over the uniform measure on the sphere(s).
pub fn sphere_average(p: &SpherePolynomial) -> f64 {
    let mut table = AverageTable::default();
    p.terms
        .iter()
        .fold(Dd::ZERO, |acc, (m, c)| acc + *c * table.get(m))
        .to_f64()
}

/// Parity pattern of a monomial; only equal patterns pair to a nonzero average.
fn parity(m: &Monomial) -> u8 {
    m.iter().enumerate().fold(0u8, |acc, (i, e)| acc | (((e & 1) as u8) << i))
}

fn sum_exponents(a: &Monomial, b: &Monomial) -> Monomial {
    let mut m = *a;
    for i in 0..6 {
        m[i] += b[i];
    }
    m
}

/// Memoized single-sphere monomial averages.
#[derive(Debug, Default)]
pub(crate) struct AverageTable {
    values: HashMap<(u16, u16, u16), Dd>,
}

impl AverageTable {
    fn single(&mut self, a: u16, b: u16, c: u16) -> Dd {
        *self
            .values
            .entry((a, b, c))
            .or_insert_with(|| average_dd(a, b, c))
    }

    pub(crate) fn get(&mut self, m: &Monomial) -> Dd {
        let first = self.single(m[0], m[1], m[2]);
        if m[3] | m[4] | m[5] == 0 {
            first
        } else {
            first * self.single(m[3], m[4], m[5])
        }
    }
}

/// The Gram matrix `<m_i m_j>` applied to a polynomial, evaluated on a set
/// of monomials. `(q|p) = sum_i q_i (G p)_i` for any `q` supported there.
#[derive(Debug, Clone, Default)]
pub(crate) struct GramImage {
    values: HashMap<Monomial, Dd>,
    /// `G |p|`: the size of the terms that cancel in each entry.
    magnitude: HashMap<Monomial, f64>,
}

impl GramImage {
    pub(crate) fn new<'a>(
        p: &SpherePolynomial,
        support: impl IntoIterator<Item = &'a Monomial>,
        table: &mut AverageTable,
    ) -> Self {
        let mut groups: HashMap<u8, Vec<(Monomial, Dd)>> = HashMap::new();
        for (m, c) in &p.terms {
            groups.entry(parity(m)).or_default().push((*m, *c));
        }
        let mut values = HashMap::new();
        let mut magnitude = HashMap::new();
        for m in support {
            let Some(group) = groups.get(&parity(m)) else {
                continue;
            };
            let mut acc = Dd::ZERO;
            let mut mag = 0.0;
            for (mp, c) in group {
                let avg = table.get(&sum_exponents(m, mp));
                acc = acc + *c * avg;
                mag += c.abs() * avg.hi;
            }
            values.insert(*m, acc);
            magnitude.insert(*m, mag);
        }
        Self { values, magnitude }
    }

    /// `(q|p)` and the cancellation scale `sum |q_i| (G |p|)_i`.
    pub(crate) fn inner(&self, q: &SpherePolynomial) -> (Dd, f64) {
        let mut acc = Dd::ZERO;
        let mut mag = 0.0;
        for (m, c) in &q.terms {
            if let Some(v) = self.values.get(m) {
                acc = acc + *c * *v;
                mag += c.abs() * self.magnitude[m];
            }
        }
        (acc, mag)
    }
}

/// Classical inner product `(f|g) = <f g>`.
pub fn sphere_inner(f: &SpherePolynomial, g: &SpherePolynomial) -> Result<f64> {
    f.check(g)?;
    let mut table = AverageTable::default();
    let image = GramImage::new(g, f.terms.keys(), &mut table);
    Ok(image.inner(f).0.to_f64())
}

/// `x + J z^2` on one sphere.
pub fn lmg_hamiltonian(j: f64) -> SpherePolynomial {
    SpherePolynomial::from_terms(1, [([1, 0, 0, 0, 0, 0], 1.0), ([0, 0, 2, 0, 0, 0], j)])
        .expect("valid polynomial")
}

/// `(1+c)(x1 + x2) + 4(1-c) z1 z2` on two spheres.
pub fn fp_hamiltonian(c: f64) -> SpherePolynomial {
    SpherePolynomial::from_terms(
        2,
        [
            ([1, 0, 0, 0, 0, 0], 1.0 + c),
            ([0, 0, 0, 1, 0, 0], 1.0 + c),
            ([0, 0, 1, 0, 0, 1], 4.0 * (1.0 - c)),
        ],
    )
    .expect("valid polynomial")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> SpherePolynomial {
        SpherePolynomial::coordinate(1, 0, 0)
    }
    fn y() -> SpherePolynomial {
        SpherePolynomial::coordinate(1, 0, 1)
    }
    fn z() -> SpherePolynomial {
        SpherePolynomial::coordinate(1, 0, 2)
    }

    #[test]
    fn base_brackets() {
        assert_eq!(poisson_bracket(&x(), &y()).unwrap(), z());
        assert_eq!(poisson_bracket(&y(), &z()).unwrap(), x());
        assert_eq!(poisson_bracket(&z(), &x()).unwrap(), y());
        assert!(poisson_bracket(&x(), &x()).unwrap().is_zero());
        let zdot = poisson_bracket(&z(), &lmg_hamiltonian(2.0)).unwrap();
        assert_eq!(zdot, y());
        let two = SpherePolynomial::coordinate(2, 1, 0);
        assert!(poisson_bracket(&x(), &two).is_err());
    }

    #[test]
    fn canonical_form() {
        let cas = SpherePolynomial::from_terms(
            1,
            [([2, 0, 0, 0, 0, 0], 1.0), ([0, 2, 0, 0, 0, 0], 1.0), ([0, 0, 2, 0, 0, 0], 1.0)],
        )
        .unwrap();
        assert_eq!(cas, SpherePolynomial::constant(1, 1.0));
        let z3 = SpherePolynomial::from_terms(1, [([0, 0, 3, 0, 0, 0], 1.0)]).unwrap();
        assert!(z3.terms().all(|(m, _)| m[2] <= 1));
        let pt = [0.48f64, -0.6, 0.64];
        assert!((z3.evaluate(&pt) - 0.64f64.powi(3)).abs() < 1e-15);
        assert_eq!(lmg_hamiltonian(2.0).degree(), 2);
    }

    #[test]
    fn averages() {
        assert_eq!(sphere_average(&SpherePolynomial::constant(1, 1.0)), 1.0);
        let z2 = z().try_mul(&z()).unwrap();
        assert!((sphere_average(&z2) - 1.0 / 3.0).abs() < 1e-15);
        let x2z2 = z2.try_mul(&x()).unwrap().try_mul(&x()).unwrap();
        assert!((sphere_average(&x2z2) - 1.0 / 15.0).abs() < 1e-15);
        assert!((monomial_average(4, 0, 0) - 0.2).abs() < 1e-15);
        assert!((monomial_average(2, 2, 2) - 1.0 / 105.0).abs() < 1e-15);
        assert_eq!(monomial_average(1, 2, 0), 0.0);
        let g = sphere_inner(&z(), &z()).unwrap();
        assert!((g - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn monte_carlo_average() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let n = 400_000;
        let mut acc = 0.0;
        for _ in 0..n {
            let zz: f64 = rng.gen_range(-1.0..1.0);
            let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
            let r = (1.0 - zz * zz).sqrt();
            let xx = r * phi.cos();
            acc += xx * xx * zz * zz;
        }
        assert!((acc / n as f64 - 1.0 / 15.0).abs() < 1e-3);
    }
}
