//! Word-sized arithmetic mod `p` for the enumeration hot loops.

use crate::exterior::PAIRS;
use crate::linalg::{HomPoly, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Zp {
    pub p: u32,
}

impl Zp {
    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    pub fn inv(self, a: u32) -> u32 {
        crate::linalg::field::inv_mod(a, self.p).expect("nonzero residue")
    }

    /// Rank of a row-major `rows x cols` matrix; destroys the input.
    pub fn rank(self, m: &mut [u32], rows: usize, cols: usize) -> usize {
        self.echelon(m, rows, cols).len()
    }

    /// Forward elimination to reduced echelon form; returns pivot columns.
    pub fn echelon(self, m: &mut [u32], rows: usize, cols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(k) = (r..rows).find(|&k| m[k * cols + c] != 0) else {
                continue;
            };
            if k != r {
                for j in 0..cols {
                    m.swap(r * cols + j, k * cols + j);
                }
            }
            let inv = self.inv(m[r * cols + c]);
            for j in c..cols {
                m[r * cols + j] = self.mul(m[r * cols + j], inv);
            }
            for k in 0..rows {
                if k == r {
                    continue;
                }
                let f = m[k * cols + c];
                if f == 0 {
                    continue;
                }
                for j in c..cols {
                    let x = self.mul(f, m[r * cols + j]);
                    m[k * cols + j] = self.sub(m[k * cols + j], x);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Right kernel basis of a row-major matrix.
    pub fn kernel(self, m: &mut [u32], rows: usize, cols: usize) -> Vec<Vec<u32>> {
        let pivots = self.echelon(m, rows, cols);
        let mut basis = Vec::new();
        for free in (0..cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![0; cols];
            v[free] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = self.sub(0, m[i * cols + free]);
            }
            basis.push(v);
        }
        basis
    }

    /// `x ^ y` in the 15 Plücker slots.
    #[inline]
    pub fn wedge(self, x: &[u32], y: &[u32]) -> [u32; 15] {
        let mut out = [0; 15];
        for (k, &(i, j)) in PAIRS.iter().enumerate() {
            out[k] = self.sub(self.mul(x[i], y[j]), self.mul(x[j], y[i]));
        }
        out
    }

    /// The fifteen 4x4 Pfaffians of `t`, i.e. `t ^ t / 2` up to sign.
    pub fn is_decomposable(self, t: &[u32; 15]) -> bool {
        let g = |i: usize, j: usize| t[crate::exterior::pair_index(i, j)];
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    for d in c + 1..6 {
                        let pf = self.add(
                            self.sub(self.mul(g(a, b), g(c, d)), self.mul(g(a, c), g(b, d))),
                            self.mul(g(a, d), g(b, c)),
                        );
                        if pf != 0 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

pub fn residues(v: &[Scalar]) -> Vec<u32> {
    v.iter()
        .map(|x| x.residue().expect("prime-field scalar"))
        .collect()
}

/// A polynomial with exponents expanded for repeated evaluation.
#[derive(Clone, Debug)]
pub struct FastPoly {
    zp: Zp,
    degree: u32,
    terms: Vec<(Vec<u32>, u32)>,
}

impl FastPoly {
    pub fn new(poly: &HomPoly) -> FastPoly {
        let p = poly.field().modulus().expect("prime field");
        assert!(poly.degree() < 8, "degree too large for the power table");
        let terms = poly
            .terms()
            .filter(|(_, c)| !c.is_zero())
            .map(|(m, c)| (m, c.residue().expect("residue")))
            .collect();
        FastPoly {
            zp: Zp { p },
            degree: poly.degree(),
            terms,
        }
    }

    pub fn eval(&self, x: &[u32]) -> u32 {
        let zp = self.zp;
        let d = self.degree as usize;
        // powers[i][e] = x_i^e
        let mut powers = vec![[1u32; 8]; x.len()];
        for (i, &xi) in x.iter().enumerate() {
            for e in 1..=d {
                powers[i][e] = zp.mul(powers[i][e - 1], xi);
            }
        }
        let mut acc = 0;
        for (m, c) in &self.terms {
            let mut t = *c;
            for (i, &e) in m.iter().enumerate() {
                if e > 0 {
                    t = zp.mul(t, powers[i][e as usize]);
                }
            }
            acc = zp.add(acc, t);
        }
        acc
    }
}
