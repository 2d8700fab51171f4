//! Dense vectors, matrices and subspaces over a [`GaloisField`].

use crate::gfq::GaloisField;

pub type Vector = Vec<u32>;

/// Square or rectangular matrix, row-major. Acts on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn apply(&self, f: &GaloisField, v: &[u32]) -> Vector {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn mul(&self, f: &GaloisField, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j);
                    out.set(i, j, f.add(cur, f.mul(a, other.get(k, j))));
                }
            }
        }
        out
    }

    pub fn add(&self, f: &GaloisField, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn sub(&self, f: &GaloisField, other: &Matrix) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { data, ..*self }
    }

    pub fn scale(&self, f: &GaloisField, c: u32) -> Matrix {
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Matrix { data, ..*self }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Image of the matrix as a subspace of the target.
    pub fn image(&self, f: &GaloisField) -> Subspace {
        let mut s = Subspace::zero(self.rows);
        for j in 0..self.cols {
            s.insert(f, self.column(j));
        }
        s
    }
}

pub fn add_vectors(f: &GaloisField, a: &[u32], b: &[u32]) -> Vector {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn scale_vector(f: &GaloisField, c: u32, a: &[u32]) -> Vector {
    a.iter().map(|&x| f.mul(c, x)).collect()
}

pub fn is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// A subspace in reduced row echelon form. Two subspaces are equal exactly
/// when their echelon bases are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Self {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn whole(ambient: usize) -> Self {
        let mut s = Self::zero(ambient);
        for i in 0..ambient {
            let mut e = vec![0; ambient];
            e[i] = 1;
            s.rows.push(e);
            s.pivots.push(i);
        }
        s
    }

    pub fn span(f: &GaloisField, ambient: usize, vectors: impl IntoIterator<Item = Vector>) -> Self {
        let mut s = Self::zero(ambient);
        for v in vectors {
            s.insert(f, v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_whole(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Remainder of `v` after elimination against the basis.
    pub fn reduce(&self, f: &GaloisField, mut v: Vector) -> Vector {
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                for (vi, &ri) in v.iter_mut().zip(row) {
                    if ri != 0 {
                        *vi = f.sub(*vi, f.mul(x, ri));
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, f: &GaloisField, v: &[u32]) -> bool {
        is_zero(&self.reduce(f, v.to_vec()))
    }

    pub fn contains_subspace(&self, f: &GaloisField, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(f, v))
    }

    /// Adds `v`; returns the new normalized basis row if the dimension grew.
    pub fn insert(&mut self, f: &GaloisField, v: Vector) -> Option<Vector> {
        let mut r = self.reduce(f, v);
        let lead = r.iter().position(|&x| x != 0)?;
        let inv = f.inv(r[lead]).expect("leading entry is nonzero");
        for x in r.iter_mut() {
            *x = f.mul(*x, inv);
        }
        for row in self.rows.iter_mut() {
            let x = row[lead];
            if x != 0 {
                for (ri, &ni) in row.iter_mut().zip(&r) {
                    if ni != 0 {
                        *ri = f.sub(*ri, f.mul(x, ni));
                    }
                }
            }
        }
        let at = self.pivots.partition_point(|&c| c < lead);
        self.pivots.insert(at, lead);
        self.rows.insert(at, r.clone());
        Some(r)
    }

    pub fn sum(&self, f: &GaloisField, other: &Subspace) -> Subspace {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(f, v.clone());
        }
        s
    }

    /// Coordinates of a member in the echelon basis: its pivot entries.
    pub fn coordinates(&self, v: &[u32]) -> Vector {
        self.pivots.iter().map(|&c| v[c]).collect()
    }

    /// The member with the given coordinates.
    pub fn combine(&self, f: &GaloisField, coords: &[u32]) -> Vector {
        let mut out = vec![0; self.ambient];
        for (row, &c) in self.rows.iter().zip(coords) {
            if c != 0 {
                for (o, &r) in out.iter_mut().zip(row) {
                    *o = f.add(*o, f.mul(c, r));
                }
            }
        }
        out
    }
}

/// Basis of `{x : A x = 0}` for `A` given by its rows.
pub fn nullspace(f: &GaloisField, rows: &[Vector], n: usize) -> Vec<Vector> {
    let echelon = Subspace::span(f, n, rows.iter().cloned());
    let free: Vec<usize> = (0..n).filter(|c| !echelon.pivots.contains(c)).collect();
    free.iter()
        .map(|&j| {
            let mut x = vec![0u32; n];
            x[j] = 1;
            for (row, &c) in echelon.rows.iter().zip(&echelon.pivots) {
                x[c] = f.neg(row[j]);
            }
            x
        })
        .collect()
}

/// All vectors of `F^d` whose first nonzero entry is 1: one per line.
pub fn projective_points(order: u32, d: usize) -> impl Iterator<Item = Vector> {
    (0..d).flat_map(move |lead| {
        let tail = d - lead - 1;
        let count = (order as u64).pow(tail as u32);
        (0..count).map(move |mut code| {
            let mut v = vec![0u32; d];
            v[lead] = 1;
            for x in v.iter_mut().skip(lead + 1) {
                *x = (code % order as u64) as u32;
                code /= order as u64;
            }
            v
        })
    })
}
