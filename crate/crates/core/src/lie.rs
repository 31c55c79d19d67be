//! Cartan matrices and Dynkin diagram data for the simply-laced types
//! A_r, D_r (r >= 4) and E6, E7, E8, with Bourbaki node numbering.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

/// A simply-laced Dynkin type, e.g. `A2` or `E6`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DynkinType {
    family: Family,
    rank: usize,
}

impl DynkinType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
        };
        if ok {
            Ok(DynkinType { family, rank })
        } else {
            Err(Error::InvalidRank {
                family: family.letter(),
                rank,
            })
        }
    }

    /// Parse a type string such as `A1`, `D4` or `E8`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let family = match s.chars().next() {
            Some('A') | Some('a') => Family::A,
            Some('D') | Some('d') => Family::D,
            Some('E') | Some('e') => Family::E,
            _ => return Err(Error::Parse(format!("unknown Dynkin type `{s}`"))),
        };
        let rank: usize = s[1..]
            .parse()
            .map_err(|_| Error::Parse(format!("bad rank in Dynkin type `{s}`")))?;
        DynkinType::new(family, rank)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.rank)
    }
}

/// Cartan matrix, its exact rational inverse, and the diagram adjacency.
#[derive(Clone, Debug)]
pub struct CartanData {
    dynkin: DynkinType,
    c: Vec<Vec<i64>>,
    cinv: Vec<Vec<BigRational>>,
    adjacency: BTreeSet<(usize, usize)>,
}

/// Diagram edges (1-based node pairs) under Bourbaki numbering: A_r is the
/// path 1-2-..-r; D_r forks at node r-2 into nodes r-1 and r; E types are
/// the path 1-3-4-..-r with node 2 attached to node 4.
fn edges(dynkin: DynkinType) -> Vec<(usize, usize)> {
    let r = dynkin.rank();
    match dynkin.family() {
        Family::A => (1..r).map(|i| (i, i + 1)).collect(),
        Family::D => {
            let mut e: Vec<(usize, usize)> = (1..r - 2).map(|i| (i, i + 1)).collect();
            e.push((r - 2, r - 1));
            e.push((r - 2, r));
            e
        }
        Family::E => {
            let mut e = vec![(1, 3), (2, 4)];
            for i in 3..r {
                e.push((i, i + 1));
            }
            e
        }
    }
}

impl CartanData {
    pub fn new(dynkin: DynkinType) -> Self {
        let r = dynkin.rank();
        let mut c = vec![vec![0i64; r]; r];
        for (i, row) in c.iter_mut().enumerate() {
            row[i] = 2;
        }
        let mut adjacency = BTreeSet::new();
        for (a, b) in edges(dynkin) {
            c[a - 1][b - 1] = -1;
            c[b - 1][a - 1] = -1;
            adjacency.insert((a.min(b), a.max(b)));
        }
        let cinv = invert_rational(&c).expect("Cartan matrices are invertible");
        CartanData {
            dynkin,
            c,
            cinv,
            adjacency,
        }
    }

    pub fn dynkin(&self) -> DynkinType {
        self.dynkin
    }

    pub fn rank(&self) -> usize {
        self.dynkin.rank()
    }

    /// The Cartan matrix with C_aa = 2 and C_ab = -1 exactly on edges.
    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.c
    }

    /// Exact rational inverse of the Cartan matrix.
    pub fn inverse(&self) -> &[Vec<BigRational>] {
        &self.cinv
    }

    pub fn adjacency(&self) -> &BTreeSet<(usize, usize)> {
        &self.adjacency
    }

    fn check_node(&self, alpha: usize) -> Result<()> {
        if alpha >= 1 && alpha <= self.rank() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange(alpha, self.rank()))
        }
    }

    /// All nodes beta with C_{alpha,beta} = -1, ascending. Nodes are 1-based.
    pub fn neighbors(&self, alpha: usize) -> Result<Vec<usize>> {
        self.check_node(alpha)?;
        Ok((1..=self.rank())
            .filter(|&b| self.c[alpha - 1][b - 1] == -1)
            .collect())
    }

    /// Entry C_{alpha,beta} with 1-based node labels.
    pub fn entry(&self, alpha: usize, beta: usize) -> Result<i64> {
        self.check_node(alpha)?;
        self.check_node(beta)?;
        Ok(self.c[alpha - 1][beta - 1])
    }

    /// Row sums of the inverse Cartan matrix, one per node; these are the
    /// exponents (in units of i*pi) of the normalization signs.
    pub fn inverse_row_sums(&self) -> Vec<BigRational> {
        self.cinv
            .iter()
            .map(|row| row.iter().fold(BigRational::zero(), |acc, x| acc + x))
            .collect()
    }

    /// Leading principal minors of C, exact.
    pub fn principal_minors(&self) -> Vec<BigInt> {
        (1..=self.rank())
            .map(|k| {
                let sub: Vec<Vec<BigRational>> = self.c[..k]
                    .iter()
                    .map(|row| {
                        row[..k]
                            .iter()
                            .map(|&e| BigRational::from_integer(BigInt::from(e)))
                            .collect()
                    })
                    .collect();
                let det = determinant(&sub);
                debug_assert!(det.is_integer());
                det.to_integer()
            })
            .collect()
    }

    /// True when every leading principal minor is positive.
    pub fn is_positive_definite(&self) -> bool {
        self.principal_minors().iter().all(|d| d.is_positive())
    }
}

fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m.to_vec();
    let mut det = BigRational::one();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero());
        let pivot = match pivot {
            Some(p) => p,
            None => return BigRational::zero(),
        };
        if pivot != col {
            a.swap(pivot, col);
            det = -det;
        }
        let p = a[col][col].clone();
        det *= p.clone();
        for r in col + 1..n {
            let factor = &a[r][col] / &p;
            if factor.is_zero() {
                continue;
            }
            for c in col..n {
                let sub = &factor * &a[col][c];
                a[r][c] -= sub;
            }
        }
    }
    det
}

fn invert_rational(c: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = c.len();
    let mut a: Vec<Vec<BigRational>> = c
        .iter()
        .map(|row| {
            row.iter()
                .map(|&e| BigRational::from_integer(BigInt::from(e)))
                .collect()
        })
        .collect();
    let mut inv: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(pivot, col);
        inv.swap(pivot, col);
        let p = a[col][col].clone();
        for j in 0..n {
            a[col][j] /= p.clone();
            inv[col][j] /= p.clone();
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let s = &factor * &a[col][j];
                a[r][j] -= s;
                let s = &factor * &inv[col][j];
                inv[r][j] -= s;
            }
        }
    }
    Some(inv)
}

/// Every supported Dynkin type up to the given A/D rank cap, for sweeps.
pub fn supported_types(max_rank: usize) -> Vec<DynkinType> {
    let mut out = Vec::new();
    for r in 1..=max_rank {
        out.push(DynkinType::new(Family::A, r).unwrap());
    }
    for r in 4..=max_rank {
        out.push(DynkinType::new(Family::D, r).unwrap());
    }
    for r in 6..=8 {
        if r <= max_rank {
            out.push(DynkinType::new(Family::E, r).unwrap());
        }
    }
    out
}
