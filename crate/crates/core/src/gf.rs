//! Linear algebra over the prime fields GF(2), GF(3), GF(5) and GF(7).

use crate::error::{Error, Result};

/// A supported prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Prime(u8);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        match p {
            2 | 3 | 5 | 7 => Ok(Prime(p as u8)),
            _ => Err(Error::domain(format!("unsupported field GF({p}); expected 2, 3, 5 or 7"))),
        }
    }

    pub fn get(self) -> u32 {
        self.0 as u32
    }

    fn p(self) -> u32 {
        self.0 as u32
    }

    pub fn add(self, a: u8, b: u8) -> u8 {
        ((a as u32 + b as u32) % self.p()) as u8
    }

    pub fn sub(self, a: u8, b: u8) -> u8 {
        ((a as u32 + self.p() - b as u32) % self.p()) as u8
    }

    pub fn mul(self, a: u8, b: u8) -> u8 {
        ((a as u32 * b as u32) % self.p()) as u8
    }

    pub fn inv(self, a: u8) -> u8 {
        debug_assert!(a != 0);
        (1..self.0).find(|&b| self.mul(a, b) == 1).expect("nonzero element of a prime field is invertible")
    }

    pub fn reduce(self, v: i64) -> u8 {
        v.rem_euclid(self.p() as i64) as u8
    }
}

/// Reduced row echelon form of the given rows; returns the nonzero rows and their pivot columns.
pub fn echelon(field: Prime, rows: &[Vec<u8>], width: usize) -> (Vec<Vec<u8>>, Vec<usize>) {
    let mut m: Vec<Vec<u8>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..width {
        let Some(pr) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, pr);
        let inv = field.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = field.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in 0..width {
                    let t = field.mul(f, m[r][j]);
                    m[i][j] = field.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    m.truncate(r);
    (m, pivots)
}

/// Rank of a family of vectors of length `dim`.
pub fn rank<'a, I: IntoIterator<Item = &'a [u8]>>(field: Prime, vectors: I, dim: usize) -> usize {
    let mut basis: Vec<(usize, Vec<u8>)> = Vec::new();
    for v in vectors {
        let mut v = v.to_vec();
        for (pc, b) in &basis {
            if v[*pc] != 0 {
                let f = v[*pc];
                for j in 0..dim {
                    v[j] = field.sub(v[j], field.mul(f, b[j]));
                }
            }
        }
        if let Some(pc) = (0..dim).find(|&j| v[j] != 0) {
            let inv = field.inv(v[pc]);
            for x in v.iter_mut() {
                *x = field.mul(*x, inv);
            }
            basis.push((pc, v));
            if basis.len() == dim {
                break;
            }
        }
    }
    basis.len()
}

/// A basis (in reduced echelon form) of the span of `vectors`.
pub fn span_basis(field: Prime, vectors: &[Vec<u8>], dim: usize) -> Vec<Vec<u8>> {
    echelon(field, vectors, dim).0
}

/// Basis of the null space of the matrix whose rows are `rows` (each of length `width`).
pub fn null_space(field: Prime, rows: &[Vec<u8>], width: usize) -> Vec<Vec<u8>> {
    let (m, pivots) = echelon(field, rows, width);
    let free: Vec<usize> = (0..width).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u8; width];
            v[f] = 1;
            for (row, &pc) in m.iter().zip(&pivots) {
                v[pc] = field.sub(0, row[f]);
            }
            v
        })
        .collect()
}

/// Basis of the intersection of the spans of two bases.
pub fn intersect(field: Prime, a: &[Vec<u8>], b: &[Vec<u8>], dim: usize) -> Vec<Vec<u8>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve sum x_i a_i - sum y_j b_j = 0; rows are coordinates.
    let width = a.len() + b.len();
    let rows: Vec<Vec<u8>> = (0..dim)
        .map(|c| {
            a.iter().map(|v| v[c]).chain(b.iter().map(|v| field.sub(0, v[c]))).collect()
        })
        .collect();
    let sols = null_space(field, &rows, width);
    let vecs: Vec<Vec<u8>> = sols
        .iter()
        .map(|s| {
            let mut v = vec![0u8; dim];
            for (i, ai) in a.iter().enumerate() {
                for c in 0..dim {
                    v[c] = field.add(v[c], field.mul(s[i], ai[c]));
                }
            }
            v
        })
        .collect();
    span_basis(field, &vecs, dim)
}

/// Scales a nonzero vector so that its first nonzero coordinate is 1.
pub fn normalize(field: Prime, v: &[u8]) -> Option<Vec<u8>> {
    let lead = v.iter().copied().find(|&x| x != 0)?;
    let inv = field.inv(lead);
    Some(v.iter().map(|&x| field.mul(x, inv)).collect())
}

/// All projective points (normalized nonzero vectors) of the span of `basis`, in a canonical order.
pub fn projective_points(field: Prime, basis: &[Vec<u8>], dim: usize) -> Vec<Vec<u8>> {
    let p = field.get() as usize;
    let k = basis.len();
    let mut out = Vec::new();
    let total = p.pow(k as u32);
    for code in 1..total {
        let mut c = code;
        let mut v = vec![0u8; dim];
        for b in basis {
            let coef = (c % p) as u8;
            c /= p;
            for j in 0..dim {
                v[j] = field.add(v[j], field.mul(coef, b[j]));
            }
        }
        if let Some(n) = normalize(field, &v) {
            if n == v {
                out.push(n);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}
