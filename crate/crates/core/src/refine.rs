//! Double-double refinement of real symmetric eigenpairs (Ogita-Aishima
//! iteration), for matrix elements whose size falls far below `f64` rounding
//! of the eigenvectors.

use nalgebra::{DMatrix, SymmetricEigen};

use crate::dd::{Dd, DdMatrix};

/// `A X` for column-major `X`.
fn apply(cols: &[Vec<(usize, Dd)>], x: &[Dd], n: usize) -> Vec<Dd> {
    let mut out = vec![Dd::ZERO; n * n];
    for j in 0..n {
        let xcol = &x[j * n..(j + 1) * n];
        let ocol = &mut out[j * n..(j + 1) * n];
        for (k, xk) in xcol.iter().enumerate() {
            if xk.is_zero() {
                continue;
            }
            for &(i, a) in &cols[k] {
                ocol[i] = ocol[i] + *xk * a;
            }
        }
    }
    out
}

fn dot(a: &[Dd], b: &[Dd]) -> Dd {
    a.iter().zip(b).fold(Dd::ZERO, |acc, (x, y)| acc + *x * *y)
}

/// `X^T Y` entries `(i, j)` for column-major inputs; only `i <= j` when `symmetric`.
fn gram(x: &[Dd], y: &[Dd], n: usize, symmetric: bool) -> Vec<Dd> {
    let mut out = vec![Dd::ZERO; n * n];
    for j in 0..n {
        let yj = &y[j * n..(j + 1) * n];
        let top = if symmetric { j + 1 } else { n };
        for i in 0..top {
            let v = dot(&x[i * n..(i + 1) * n], yj);
            out[j * n + i] = v;
            if symmetric {
                out[i * n + j] = v;
            }
        }
    }
    out
}

/// Sparse columns `(row, weight)` spanning an invariant subspace.
type Basis = Vec<Vec<(usize, Dd)>>;

fn invariant_under(a: &DdMatrix, p: &[usize], scale: f64) -> bool {
    let n = a.dim();
    (0..n).all(|j| (0..n).all(|i| (a.get(i, j) - a.get(p[i], p[j])).to_f64().abs() <= 1e-28 * scale))
}

/// Symmetry-adapted bases for the index involutions that leave `a` invariant:
/// reversal `k -> n-1-k` and, on a square dimension `d*d`, the exchange of
/// the two tensor factors. Exactly degenerate pairs split by these
/// symmetries then come out with definite quantum numbers instead of an
/// arbitrary mix, and each sector is solved on its own.
fn symmetry_sectors(a: &DdMatrix) -> Vec<Basis> {
    let n = a.dim();
    let scale = (0..n)
        .flat_map(|j| (0..n).map(move |i| (i, j)))
        .map(|(i, j)| a.get(i, j).abs())
        .fold(0.0, f64::max);
    let mut candidates: Vec<Vec<usize>> = vec![(0..n).rev().collect()];
    let d = (n as f64).sqrt().round() as usize;
    if d > 1 && d * d == n {
        candidates.push((0..n).map(|i| (i % d) * d + i / d).collect());
    }
    let mut gens: Vec<Vec<usize>> = Vec::new();
    for p in candidates {
        let commutes = gens.iter().all(|g| (0..n).all(|i| g[p[i]] == p[g[i]]));
        if commutes && invariant_under(a, &p, scale) {
            gens.push(p);
        }
    }
    // Group elements indexed by subsets of generators.
    let elements: Vec<Vec<usize>> = (0..1usize << gens.len())
        .map(|mask| {
            (0..n)
                .map(|i| {
                    gens.iter()
                        .enumerate()
                        .filter(|(k, _)| mask >> k & 1 == 1)
                        .fold(i, |x, (_, g)| g[x])
                })
                .collect()
        })
        .collect();
    let mut seen = vec![false; n];
    let mut orbits = Vec::new();
    for i in 0..n {
        if !seen[i] {
            elements.iter().for_each(|g| seen[g[i]] = true);
            orbits.push(i);
        }
    }
    (0..1usize << gens.len())
        .map(|chi| {
            orbits
                .iter()
                .filter_map(|&i| {
                    let mut coeff: Vec<(usize, f64)> = Vec::new();
                    for (mask, g) in elements.iter().enumerate() {
                        let sign = if (mask & chi).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                        match coeff.iter_mut().find(|(k, _)| *k == g[i]) {
                            Some(c) => c.1 += sign,
                            None => coeff.push((g[i], sign)),
                        }
                    }
                    coeff.retain(|(_, c)| *c != 0.0);
                    coeff.sort_by_key(|(k, _)| *k);
                    let norm = Dd::from_f64(coeff.iter().map(|(_, c)| c * c).sum()).sqrt();
                    (!coeff.is_empty()).then(|| {
                        coeff.into_iter().map(|(k, c)| (k, Dd::from_f64(c).div(norm))).collect()
                    })
                })
                .collect()
        })
        .filter(|b: &Basis| !b.is_empty())
        .collect()
}

/// Eigenpairs of a real symmetric matrix, ascending, with the first entry of
/// each eigenvector above `1e-8` of its largest entry made positive.
pub(crate) fn symmetric_eigen(a: &DdMatrix, iterations: usize) -> RefinedEigen {
    let n = a.dim();
    let mut sectors = Vec::new();
    let mut order: Vec<(Dd, usize, usize)> = Vec::with_capacity(n);
    for basis in symmetry_sectors(a) {
        let block = project(a, &basis, &basis);
        let start = SymmetricEigen::new(block.to_f64()).eigenvectors;
        let (values, mut vectors) = refine_block(&block, &start, iterations);
        let m = basis.len();
        for (k, value) in values.iter().enumerate() {
            let col = &mut vectors[k * m..(k + 1) * m];
            let full = expand(&basis, col, n);
            let big = full.iter().map(|x| x.abs()).fold(0.0, f64::max);
            if full.iter().find(|x| x.abs() > 1e-8 * big).is_some_and(|x| x.hi < 0.0) {
                col.iter_mut().for_each(|x| *x = -*x);
            }
            order.push((*value, sectors.len(), k));
        }
        sectors.push(Sector {
            basis,
            vectors,
            index: vec![0; m],
        });
    }
    order.sort_by(|x, y| (x.0 - y.0).hi.total_cmp(&0.0).then((x.1, x.2).cmp(&(y.1, y.2))));
    let mut values = Vec::with_capacity(n);
    for (g, (value, sector, k)) in order.into_iter().enumerate() {
        sectors[sector].index[k] = g;
        values.push(value);
    }
    RefinedEigen { n, values, sectors }
}

/// `Q_rows^T A Q_cols` for sparse bases.
fn project(a: &DdMatrix, rows: &Basis, cols: &Basis) -> DdMatrix {
    let n = a.dim();
    let a_cols = a.columns();
    let mut out = vec![Dd::ZERO; rows.len() * cols.len()];
    let mut w = vec![Dd::ZERO; n];
    for (l, q) in cols.iter().enumerate() {
        w.iter_mut().for_each(|x| *x = Dd::ZERO);
        for &(j, qj) in q {
            for &(i, aij) in &a_cols[j] {
                w[i] = w[i] + aij * qj;
            }
        }
        for (k, p) in rows.iter().enumerate() {
            out[l * rows.len() + k] = p.iter().fold(Dd::ZERO, |acc, &(i, pi)| acc + pi * w[i]);
        }
    }
    DdMatrix::from_column_major(rows.len(), cols.len(), out)
}

/// Full-space vector from sector coordinates.
fn expand(basis: &Basis, coords: &[Dd], n: usize) -> Vec<Dd> {
    let mut full = vec![Dd::ZERO; n];
    for (c, col) in coords.iter().zip(basis) {
        for &(i, q) in col {
            full[i] = full[i] + *c * q;
        }
    }
    full
}

/// Eigenvectors of one symmetry sector, in sector coordinates.
#[derive(Debug, Clone)]
struct Sector {
    basis: Basis,
    /// Column-major, one column per eigenvector.
    vectors: Vec<Dd>,
    /// Position of each column in the ascending global order.
    index: Vec<usize>,
}

/// Refined eigenpairs, stored per symmetry sector.
#[derive(Debug, Clone)]
pub(crate) struct RefinedEigen {
    n: usize,
    pub values: Vec<Dd>,
    sectors: Vec<Sector>,
}

/// Ogita-Aishima refinement of `f64` eigenvectors `x` of the symmetric
/// matrix `a`; returns ascending values and column-major vectors.
fn refine_block(a: &DdMatrix, x: &DMatrix<f64>, iterations: usize) -> (Vec<Dd>, Vec<Dd>) {
    let n = a.dim();
    let cols = a.columns();
    let a_norm = a.to_f64().norm();
    let mut v: Vec<Dd> = x.iter().map(|e| Dd::from_f64(*e)).collect();
    let mut values = vec![Dd::ZERO; n];
    for _ in 0..iterations {
        let av = apply(&cols, &v, n);
        let s = gram(&v, &av, n, true);
        let g = gram(&v, &v, n, true);
        for i in 0..n {
            values[i] = s[i * n + i].div(g[i * n + i]);
        }
        let mut off_s = 0.0;
        let mut r_norm = 0.0;
        for j in 0..n {
            for i in 0..n {
                let gij = g[j * n + i].to_f64() - if i == j { 1.0 } else { 0.0 };
                r_norm += gij * gij;
                if i != j {
                    off_s += s[j * n + i].to_f64().powi(2);
                }
            }
        }
        let delta = 2.0 * (off_s.sqrt() + a_norm * r_norm.sqrt());
        let lam: Vec<f64> = values.iter().map(|l| l.to_f64()).collect();
        let mut e = vec![0.0; n * n];
        for j in 0..n {
            for i in 0..n {
                let gij = g[j * n + i];
                e[j * n + i] = if i == j {
                    (Dd::from_f64(1.0) - gij).to_f64() / 2.0
                } else if (lam[j] - lam[i]).abs() > delta {
                    (s[j * n + i] - values[j] * gij).to_f64() / (lam[j] - lam[i])
                } else {
                    -gij.to_f64() / 2.0
                };
            }
        }
        let mut next = v.clone();
        for j in 0..n {
            for k in 0..n {
                let ekj = e[j * n + k];
                if ekj == 0.0 {
                    continue;
                }
                for i in 0..n {
                    next[j * n + i] = next[j * n + i] + v[k * n + i].mul_f64(ekj);
                }
            }
        }
        v = next;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| (values[i] - values[j]).hi.total_cmp(&0.0).then(i.cmp(&j)));
    let vectors = order.iter().flat_map(|&k| v[k * n..(k + 1) * n].iter().copied()).collect();
    let values = order.iter().map(|&k| values[k]).collect();
    (values, vectors)
}

/// `X^T B Y` with `X` (`p x r`), `B` (`p x q`) and `Y` (`q x c`), all column-major.
fn sandwich(x: &[Dd], b: &DdMatrix, y: &[Dd]) -> Vec<Dd> {
    let (p, q) = (b.nrows(), b.ncols());
    let (r, c) = (x.len() / p.max(1), y.len() / q.max(1));
    let b_cols = b.columns();
    let mut by = vec![Dd::ZERO; p * c];
    for l in 0..c {
        for (k, ykl) in y[l * q..(l + 1) * q].iter().enumerate() {
            if ykl.is_zero() {
                continue;
            }
            for &(i, bik) in &b_cols[k] {
                by[l * p + i] = by[l * p + i] + bik * *ykl;
            }
        }
    }
    let mut out = vec![Dd::ZERO; r * c];
    for l in 0..c {
        for k in 0..r {
            out[l * r + k] = dot(&x[k * p..(k + 1) * p], &by[l * p..(l + 1) * p]);
        }
    }
    out
}

impl RefinedEigen {
    /// Rounded eigenvectors as columns in ascending order.
    pub(crate) fn vectors_f64(&self) -> DMatrix<f64> {
        let mut out = DMatrix::zeros(self.n, self.n);
        for sector in &self.sectors {
            let m = sector.basis.len();
            for (k, &g) in sector.index.iter().enumerate() {
                let full = expand(&sector.basis, &sector.vectors[k * m..(k + 1) * m], self.n);
                for (i, v) in full.iter().enumerate() {
                    out[(i, g)] = v.to_f64();
                }
            }
        }
        out
    }

    #[cfg(test)]
    fn full_vectors(&self) -> Vec<Dd> {
        let mut out = vec![Dd::ZERO; self.n * self.n];
        for sector in &self.sectors {
            let m = sector.basis.len();
            for (k, &g) in sector.index.iter().enumerate() {
                let full = expand(&sector.basis, &sector.vectors[k * m..(k + 1) * m], self.n);
                out[g * self.n..(g + 1) * self.n].copy_from_slice(&full);
            }
        }
        out
    }

    /// `<m| A |n>` accumulated in double-double and rounded. Sector pairs
    /// that `A` does not connect are skipped.
    pub(crate) fn transform(&self, a: &DdMatrix) -> DMatrix<f64> {
        let scale = a.max_abs();
        let mut out = DMatrix::zeros(self.n, self.n);
        for row in &self.sectors {
            for col in &self.sectors {
                let b = project(a, &row.basis, &col.basis);
                if b.max_abs() <= 1e-28 * scale {
                    continue;
                }
                let m = sandwich(&row.vectors, &b, &col.vectors);
                let r = row.basis.len();
                for (l, &gl) in col.index.iter().enumerate() {
                    for (k, &gk) in row.index.iter().enumerate() {
                        out[(gk, gl)] = m[l * r + k].to_f64();
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn refines_to_double_double_accuracy() {
        // Tridiagonal matrix with a wide spread of eigenvalues.
        let n = 30;
        let a = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                (i as f64).powi(2) / 10.0
            } else if i.abs_diff(j) == 1 {
                ((i + j) as f64).sqrt()
            } else {
                0.0
            }
        });
        let eig = SymmetricEigen::new(a.clone());
        let a = DdMatrix::from_f64(&a);
        let (values, vectors) = refine_block(&a, &eig.eigenvectors, 2);
        let n2 = n * n;
        assert_eq!(vectors.len(), n2);
        // Residual and orthogonality in double-double.
        let cols = a.columns();
        let av = apply(&cols, &vectors, n);
        let mut worst: f64 = 0.0;
        for j in 0..n {
            for i in 0..n {
                let res = av[j * n + i] - vectors[j * n + i] * values[j];
                worst = worst.max(res.to_f64().abs());
            }
        }
        assert!(worst < 1e-28, "residual {worst:e}");
        let g = gram(&vectors, &vectors, n, true);
        for j in 0..n {
            for i in 0..n {
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((g[j * n + i] - Dd::from_f64(want)).to_f64().abs() < 1e-28);
            }
        }
    }

    #[test]
    fn mirror_symmetric_matrix_gives_definite_parity() {
        // Double well: an exactly symmetric pair of levels per well.
        let n = 9;
        let a = DdMatrix::from_fn(n, |i, j| {
            let c = i as f64 - 4.0;
            if i == j {
                Dd::from_f64(-(c * c - 9.0).powi(2) / 8.0)
            } else if i.abs_diff(j) == 1 {
                Dd::from_f64(0.5)
            } else {
                Dd::ZERO
            }
        });
        let r = symmetric_eigen(&a, 2);
        let vectors = r.full_vectors();
        for k in 0..n {
            let v = &vectors[k * n..(k + 1) * n];
            let even = (0..n).all(|i| (v[i] - v[n - 1 - i]).to_f64().abs() < 1e-30);
            let odd = (0..n).all(|i| (v[i] + v[n - 1 - i]).to_f64().abs() < 1e-30);
            assert!(even ^ odd, "column {k} mixes parities");
            let lead = v.iter().find(|x| x.abs() > 1e-8).unwrap();
            assert!(lead.hi > 0.0);
        }
        assert!(r.values.windows(2).all(|w| w[0].hi <= w[1].hi));
    }

    #[test]
    fn exchange_symmetric_matrix_splits_into_four_sectors() {
        // Two coupled three-level sites, symmetric under reversal and exchange.
        let d = 3;
        let site = |k: usize| k as f64 - 1.0;
        let a = DdMatrix::from_fn(d * d, |i, j| {
            let (i1, i2, j1, j2) = (i / d, i % d, j / d, j % d);
            let mut v = 0.0;
            if i == j {
                v += site(i1) * site(i2);
            }
            if i2 == j2 && i1.abs_diff(j1) == 1 {
                v += 0.7;
            }
            if i1 == j1 && i2.abs_diff(j2) == 1 {
                v += 0.7;
            }
            Dd::from_f64(v)
        });
        let sectors = symmetry_sectors(&a);
        assert_eq!(sectors.len(), 4);
        assert_eq!(sectors.iter().map(|b| b.len()).sum::<usize>(), d * d);
        let r = symmetric_eigen(&a, 2);
        let vectors = r.full_vectors();
        let cols = a.columns();
        let av = apply(&cols, &vectors, d * d);
        for k in 0..d * d {
            for i in 0..d * d {
                let res = av[k * d * d + i] - vectors[k * d * d + i] * r.values[k];
                assert!(res.to_f64().abs() < 1e-28);
            }
        }
        // Matrix elements of an operator that breaks the exchange symmetry.
        let b = DdMatrix::from_fn(d * d, |i, j| Dd::from_f64(if i == j { (i / d) as f64 } else { 0.0 }));
        let dense = r.transform(&b);
        let direct = gram(&vectors, &apply(&b.columns(), &vectors, d * d), d * d, false);
        for (x, y) in dense.iter().zip(&direct) {
            assert!((x - y.to_f64()).abs() < 1e-28);
        }
    }
}
