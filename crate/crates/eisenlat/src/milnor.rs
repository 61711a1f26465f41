//! Vanishing-cycle monodromy of one-variable power singularities and their
//! sums: the cyclic module of z^k = t with its shift monodromy, tensor
//! products of such modules, and the rank-two order-six system attached to
//! a three-fold node (exponents 2,2,2,3) whose monodromy is a primitive
//! sixth root of unity and whose cyclic symmetry realizes the Eisenstein
//! module structure.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::lattice::{Frame, HermGram, LatVec};
use crate::Error;

/// Small dense integer matrix, enough for tensor monodromy bookkeeping.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMat {
    pub n: usize,
    pub data: Vec<Vec<i64>>,
}

impl IntMat {
    pub fn identity(n: usize) -> IntMat {
        IntMat {
            n,
            data: (0..n)
                .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.data[i][k] == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i][j] += self.data[i][k] * other.data[k][j];
                }
            }
        }
        IntMat { n, data: out }
    }

    pub fn add(&self, other: &IntMat) -> IntMat {
        let n = self.n;
        IntMat {
            n,
            data: (0..n)
                .map(|i| (0..n).map(|j| self.data[i][j] + other.data[i][j]).collect())
                .collect(),
        }
    }

    pub fn neg(&self) -> IntMat {
        IntMat {
            n: self.n,
            data: self
                .data
                .iter()
                .map(|r| r.iter().map(|x| -x).collect())
                .collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == IntMat::identity(self.n)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|r| r.iter().all(|x| *x == 0))
    }

    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    pub fn kronecker(&self, other: &IntMat) -> IntMat {
        let n = self.n * other.n;
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.data[i][j] == 0 {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        out[i * other.n + k][j * other.n + l] =
                            self.data[i][j] * other.data[k][l];
                    }
                }
            }
        }
        IntMat { n, data: out }
    }

    /// Characteristic polynomial of the matrix, det(t I - A), coefficients
    /// low degree first; exact cofactor expansion over integer polynomials.
    pub fn char_poly(&self) -> Vec<i64> {
        let n = self.n;
        let entries: Vec<Vec<Vec<i64>>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| vec![-self.data[i][j], i64::from(i == j)])
                    .collect()
            })
            .collect();
        poly_det(&entries)
    }
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        out[i] += x;
    }
    out
}

fn poly_det(m: &[Vec<Vec<i64>>]) -> Vec<i64> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = vec![0i64];
    for j in 0..n {
        let minor: Vec<Vec<Vec<i64>>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&c| c != j)
                    .map(|c| m[i][c].clone())
                    .collect()
            })
            .collect();
        let term = poly_mul(&m[0][j], &poly_det(&minor));
        let term = if j % 2 == 0 {
            term
        } else {
            term.iter().map(|x| -x).collect()
        };
        acc = poly_add(&acc, &term);
    }
    acc
}

/// The vanishing-cycle module of z^k = t: rank k-1 on the root-difference
/// basis a_i - a_{i+1}, with monodromy the cyclic index shift.
#[derive(Clone, Debug)]
pub struct CyclicModule {
    pub k: u32,
    pub monodromy: IntMat,
}

/// Build the cyclic module for exponent k >= 2. The shift a_i -> a_{i+1}
/// acts on the difference basis by e_i -> e_{i+1} for i < k-2 and
/// e_{k-2} -> -(e_0 + ... + e_{k-2}).
pub fn vk(k: u32) -> Result<CyclicModule, Error> {
    if k < 2 {
        return Err(Error::Invalid("exponent must be at least 2".into()));
    }
    let n = (k - 1) as usize;
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        if i + 1 < n {
            m[i + 1][i] = 1; // column i is the image of e_i
        }
    }
    for row in m.iter_mut() {
        row[n - 1] = -1;
    }
    Ok(CyclicModule {
        k,
        monodromy: IntMat { n, data: m },
    })
}

/// Tensor product of cyclic modules with the product monodromy, plus the
/// cyclic symmetry acting on the last factor only (the branched-cover
/// symmetry when the last exponent is 3).
#[derive(Clone, Debug)]
pub struct TensorSystem {
    pub exponents: Vec<u32>,
    pub rank: usize,
    pub monodromy: IntMat,
    pub sigma_last: IntMat,
}

pub fn tensor_system(ks: &[u32]) -> Result<TensorSystem, Error> {
    if ks.is_empty() {
        return Err(Error::Invalid("need at least one exponent".into()));
    }
    let modules: Vec<CyclicModule> = ks.iter().map(|&k| vk(k)).collect::<Result<_, _>>()?;
    let mut psi = IntMat::identity(1);
    let mut sigma = IntMat::identity(1);
    for (i, m) in modules.iter().enumerate() {
        psi = psi.kronecker(&m.monodromy);
        let factor = if i + 1 == modules.len() {
            m.monodromy.clone()
        } else {
            IntMat::identity(m.monodromy.n)
        };
        sigma = sigma.kronecker(&factor);
    }
    let rank = psi.n;
    Ok(TensorSystem {
        exponents: ks.to_vec(),
        rank,
        monodromy: psi,
        sigma_last: sigma,
    })
}

/// The checks for the node system (2,2,2,3): rank two, monodromy of order
/// six with characteristic polynomial t^2 - t + 1, the cyclic symmetry of
/// order three with sigma^2 + sigma + 1 = 0, commuting with the monodromy,
/// and monodromy * sigma^{-1} = -1, which is the literal statement that the
/// monodromy is the scalar -w for the module structure where w acts as
/// sigma.
#[derive(Clone, Debug)]
pub struct NodeMonodromyReport {
    pub rank: usize,
    pub monodromy_order: Option<u64>,
    pub char_poly: Vec<i64>,
    pub sigma_order: Option<u64>,
    pub sigma_quadratic_zero: bool,
    pub commutes: bool,
    pub is_minus_omega_scalar: bool,
}

pub fn node_system_report() -> Result<NodeMonodromyReport, Error> {
    let sys = tensor_system(&[2, 2, 2, 3])?;
    let psi = &sys.monodromy;
    let sigma = &sys.sigma_last;
    let sigma_sq = sigma.mul(sigma);
    let quad = sigma_sq.add(sigma).add(&IntMat::identity(sys.rank));
    // psi sigma^{-1} with sigma^{-1} = sigma^2
    let psi_sigma_inv = psi.mul(&sigma_sq);
    Ok(NodeMonodromyReport {
        rank: sys.rank,
        monodromy_order: psi.order(12),
        char_poly: psi.char_poly(),
        sigma_order: sigma.order(6),
        sigma_quadratic_zero: quad.is_zero(),
        commutes: psi.mul(sigma) == sigma.mul(psi),
        is_minus_omega_scalar: psi_sigma_inv == IntMat::identity(sys.rank).neg(),
    })
}

/// The signature argument forcing vanishing-cycle generators to have norm
/// +1: the diag5 lattice holds four mutually orthogonal vectors of norm +1,
/// while any four mutually orthogonal norm -1 vectors would span a negative
/// definite rank-4 sublattice, impossible in signature (4,1).
#[derive(Clone, Debug)]
pub struct SignatureForcingReport {
    pub witnesses_ok: bool,
    pub negative_rank: usize,
    pub sampled_negative_definite_rank_bound_ok: bool,
}

pub fn signature_forcing_check() -> Result<SignatureForcingReport, Error> {
    let g = HermGram::diag5();
    // four orthogonal norm +1 witnesses
    let witnesses: Vec<LatVec> = (1..=4).map(|i| LatVec::basis(Frame::Diag5, 5, i)).collect();
    let mut witnesses_ok = true;
    for (i, a) in witnesses.iter().enumerate() {
        witnesses_ok &= g.norm(a)? == BigInt::one();
        for b in witnesses.iter().skip(i + 1) {
            witnesses_ok &= g.inner(a, b)?.is_zero();
        }
    }
    // exact signature by congruence diagonalization of the rational gram:
    // one negative entry means negative definite sublattices have rank <= 1
    let negative_rank = diag5_negative_rank();
    // sampled rank-4 sublattices are never negative definite
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(17);
    let mut sampled_ok = true;
    for _ in 0..50 {
        let basis: Vec<LatVec> = (0..4)
            .map(|_| {
                LatVec::new(
                    Frame::Diag5,
                    (0..5)
                        .map(|_| {
                            crate::eis::EisInt::new(rng.gen_range(-2..=2), rng.gen_range(-2..=2))
                        })
                        .collect(),
                )
            })
            .collect();
        let Ok(sub) = crate::linalg::Sublattice::new(g.clone(), basis) else {
            continue;
        };
        // negative definite would mean (-1)^j * leading minors all positive
        let gm = sub.gram().mat;
        let mut neg_def = true;
        for j in 1..=4usize {
            let minor = crate::mat::Mat::from_fn(j, j, |r, c| gm[(r, c)].clone());
            let d = minor.det();
            let sign_ok = if j % 2 == 0 {
                d.a.is_positive()
            } else {
                d.a.is_negative()
            };
            if !sign_ok {
                neg_def = false;
                break;
            }
        }
        if neg_def {
            sampled_ok = false;
        }
    }
    Ok(SignatureForcingReport {
        witnesses_ok,
        negative_rank,
        sampled_negative_definite_rank_bound_ok: sampled_ok,
    })
}

/// Number of negative entries in a rational congruence diagonalization of
/// the diag5 gram; exact, returns 1.
fn diag5_negative_rank() -> usize {
    use num_rational::BigRational;
    use num_traits::Zero;
    let g = HermGram::diag5();
    let n = g.dim();
    // the form is real diagonal already, but diagonalize anyway to keep the
    // check honest for any self-adjoint input
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let e = &g.mat[(i, j)];
                    debug_assert!(e.is_rational());
                    BigRational::from(e.a.clone())
                })
                .collect()
        })
        .collect();
    let mut negatives = 0usize;
    for i in 0..n {
        if m[i][i].is_zero() {
            // find a nonzero diagonal partner and mix it in
            if let Some(j) = (i + 1..n).find(|&j| !m[j][i].is_zero()) {
                for c in 0..n {
                    let add = m[j][c].clone();
                    m[i][c] += add;
                }
                for r in 0..n {
                    let add = m[r][j].clone();
                    m[r][i] += add;
                }
            }
        }
        if m[i][i].is_zero() {
            continue;
        }
        if m[i][i] < BigRational::zero() {
            negatives += 1;
        }
        for r in i + 1..n {
            let f = &m[r][i] / &m[i][i];
            for c in 0..n {
                let sub = &f * &m[i][c];
                m[r][c] -= sub;
            }
        }
        for c in i + 1..n {
            m[i][c] = BigRational::zero();
        }
    }
    negatives
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclic_modules() {
        // k = 2: rank one, monodromy -1
        let m = vk(2).unwrap();
        assert_eq!(m.monodromy.n, 1);
        assert_eq!(m.monodromy.data[0][0], -1);
        // k = 3: rank two, order three, char poly t^2 + t + 1
        let m = vk(3).unwrap();
        assert_eq!(m.monodromy.n, 2);
        assert_eq!(m.monodromy.order(5), Some(3));
        assert_eq!(m.monodromy.char_poly(), vec![1, 1, 1]);
        // k = 6: rank five, order six
        let m = vk(6).unwrap();
        assert_eq!(m.monodromy.n, 5);
        assert_eq!(m.monodromy.order(8), Some(6));
        assert!(vk(1).is_err());
    }

    #[test]
    fn two_squares_is_trivial() {
        // (-1) tensor (-1) = +1 on a rank-one module
        let sys = tensor_system(&[2, 2]).unwrap();
        assert_eq!(sys.rank, 1);
        assert!(sys.monodromy.is_identity());
    }

    #[test]
    fn node_system() {
        let r = node_system_report().unwrap();
        assert_eq!(r.rank, 2);
        assert_eq!(r.monodromy_order, Some(6));
        // t^2 - t + 1, low degree first
        assert_eq!(r.char_poly, vec![1, -1, 1]);
        assert_eq!(r.sigma_order, Some(3));
        assert!(r.sigma_quadratic_zero);
        assert!(r.commutes);
        assert!(r.is_minus_omega_scalar);
    }

    #[test]
    fn direction_flip_is_immaterial() {
        // reversing the shift direction replaces the monodromy by its
        // inverse; the order and characteristic polynomial claims survive
        let sys = tensor_system(&[2, 2, 2, 3]).unwrap();
        let psi = &sys.monodromy;
        let inv = psi.mul(psi).mul(psi).mul(psi).mul(psi); // order 6
        assert!(psi.mul(&inv).is_identity());
        assert_eq!(inv.order(12), Some(6));
        assert_eq!(inv.char_poly(), vec![1, -1, 1]);
    }

    #[test]
    fn signature_forcing() {
        let r = signature_forcing_check().unwrap();
        assert!(r.witnesses_ok);
        assert_eq!(r.negative_rank, 1);
        assert!(r.sampled_negative_definite_rank_bound_ok);
    }
}
