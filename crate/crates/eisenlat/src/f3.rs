//! The finite quadratic space V = Lambda / theta Lambda over the field with
//! three elements: its orthogonal group, reflection decompositions, spinor
//! norms, and the counting facts the arrangement combinatorics rests on
//! (72 norm-one vectors falling into 36 projective classes).
//!
//! Conjugation on Z[w] is trivial mod theta, so a hermitian gram matrix
//! reduces to an honest symmetric matrix and the hermitian form to a
//! quadratic form q. Reflections here are x |-> x - B(x,v)/q(v) v with B the
//! polarization of q; q(v) is 1 or 2, both invertible, so characteristic 3
//! causes no division trouble.

use std::collections::{HashSet, VecDeque};

use crate::eis::EisInt;
use crate::lattice::{HermGram, Isometry, LatVec};
use crate::Error;

pub const DIM: usize = 5;

/// A vector in F3^5, coordinates in {0, 1, 2}.
pub type F3Vec = [u8; DIM];

/// A 5x5 matrix over F3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct F3Mat(pub [[u8; DIM]; DIM]);

impl F3Mat {
    pub fn identity() -> F3Mat {
        let mut m = [[0u8; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        F3Mat(m)
    }

    pub fn mul(&self, other: &F3Mat) -> F3Mat {
        let mut out = [[0u8; DIM]; DIM];
        for i in 0..DIM {
            for k in 0..DIM {
                let a = self.0[i][k];
                if a == 0 {
                    continue;
                }
                for j in 0..DIM {
                    out[i][j] = (out[i][j] + a * other.0[k][j]) % 3;
                }
            }
        }
        F3Mat(out)
    }

    pub fn apply(&self, v: &F3Vec) -> F3Vec {
        let mut out = [0u8; DIM];
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0u8;
            for j in 0..DIM {
                acc = (acc + self.0[i][j] * v[j]) % 3;
            }
            *o = acc;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == F3Mat::identity()
    }

    pub fn neg(&self) -> F3Mat {
        let mut out = self.0;
        for row in out.iter_mut() {
            for e in row.iter_mut() {
                *e = (3 - *e) % 3;
            }
        }
        F3Mat(out)
    }

    fn key(&self) -> [u8; DIM * DIM] {
        let mut k = [0u8; DIM * DIM];
        for i in 0..DIM {
            for j in 0..DIM {
                k[i * DIM + j] = self.0[i][j];
            }
        }
        k
    }

    pub fn det(&self) -> u8 {
        // Gaussian elimination over F3
        let mut m = self.0;
        let mut det = 1u8;
        for c in 0..DIM {
            let Some(p) = (c..DIM).find(|&r| m[r][c] != 0) else {
                return 0;
            };
            if p != c {
                m.swap(p, c);
                det = (det * 2) % 3; // a swap flips the sign, and -1 = 2
            }
            det = (det * m[c][c]) % 3;
            let inv = m[c][c]; // 1 and 2 are self-inverse
            for r in c + 1..DIM {
                if m[r][c] != 0 {
                    let f = (m[r][c] * inv) % 3;
                    for j in c..DIM {
                        m[r][j] = (m[r][j] + (3 - f) * m[c][j] % 3) % 3;
                    }
                }
            }
        }
        det
    }
}

/// A quadratic form on F3^5, as a symmetric matrix.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct F3Quadratic {
    pub mat: F3Mat,
}

impl F3Quadratic {
    pub fn new(mat: F3Mat) -> Result<F3Quadratic, Error> {
        for i in 0..DIM {
            for j in 0..DIM {
                if mat.0[i][j] != mat.0[j][i] {
                    return Err(Error::Invalid("quadratic form matrix not symmetric".into()));
                }
            }
        }
        Ok(F3Quadratic { mat })
    }

    /// Reduce a hermitian gram matrix mod theta.
    pub fn from_gram(gram: &HermGram) -> Result<F3Quadratic, Error> {
        if gram.dim() != DIM {
            return Err(Error::DimensionMismatch);
        }
        let mut m = [[0u8; DIM]; DIM];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = gram.mat[(i, j)].mod_theta().0;
            }
        }
        F3Quadratic::new(F3Mat(m))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.mat.det() != 0
    }

    /// q(v) = v^T A v.
    pub fn q(&self, v: &F3Vec) -> u8 {
        let av = self.mat.apply(v);
        let mut acc = 0u8;
        for i in 0..DIM {
            acc = (acc + v[i] * av[i]) % 3;
        }
        acc
    }

    /// Polarization B(x, y) = q(x+y) - q(x) - q(y) = 2 x^T A y.
    pub fn bilin(&self, x: &F3Vec, y: &F3Vec) -> u8 {
        let ay = self.mat.apply(y);
        let mut acc = 0u8;
        for i in 0..DIM {
            acc = (acc + x[i] * ay[i]) % 3;
        }
        (2 * acc) % 3
    }

    /// Reflection in a nonisotropic vector.
    pub fn reflection(&self, v: &F3Vec) -> Result<F3Mat, Error> {
        let qv = self.q(v);
        if qv == 0 {
            return Err(Error::Invalid("reflection vector is isotropic".into()));
        }
        let qinv = qv; // both nonzero residues are self-inverse
        let mut m = F3Mat::identity().0;
        for j in 0..DIM {
            let mut e = [0u8; DIM];
            e[j] = 1;
            let c = (self.bilin(&e, v) * qinv) % 3;
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = (row[j] + 3 - (c * v[i]) % 3) % 3;
            }
        }
        Ok(F3Mat(m))
    }

    pub fn is_isometry(&self, g: &F3Mat) -> bool {
        // g^T A g = A entrywise
        let a = &self.mat;
        for i in 0..DIM {
            for j in 0..DIM {
                let mut acc = 0u8;
                for r in 0..DIM {
                    for s in 0..DIM {
                        acc = (acc + g.0[r][i] * a.0[r][s] % 3 * g.0[s][j]) % 3;
                    }
                }
                if acc != a.0[i][j] {
                    return false;
                }
            }
        }
        true
    }

    /// All 243 vectors.
    pub fn all_vectors() -> Vec<F3Vec> {
        let mut out = Vec::with_capacity(243);
        for n in 0..243u32 {
            let mut v = [0u8; DIM];
            let mut m = n;
            for e in v.iter_mut() {
                *e = (m % 3) as u8;
                m /= 3;
            }
            out.push(v);
        }
        out
    }

    pub fn nonisotropic_vectors(&self) -> Vec<F3Vec> {
        Self::all_vectors()
            .into_iter()
            .filter(|v| self.q(v) != 0)
            .collect()
    }

    /// (number of norm-1 vectors, number of projective classes among them).
    pub fn count_norm_one(&self) -> (usize, usize) {
        let n: usize = Self::all_vectors().iter().filter(|v| self.q(v) == 1).count();
        (n, n / 2)
    }

    /// Exhaustive census over all 243 vectors: (zero vector, isotropic
    /// nonzero, q = 1, q = 2).
    pub fn census(&self) -> (usize, usize, usize, usize) {
        let mut iso = 0;
        let mut one = 0;
        let mut two = 0;
        for v in Self::all_vectors() {
            if v == [0; DIM] {
                continue;
            }
            match self.q(&v) {
                0 => iso += 1,
                1 => one += 1,
                _ => two += 1,
            }
        }
        (1, iso, one, two)
    }
}

/// Reduce a lattice isometry mod theta and verify it preserves the reduced
/// form.
pub fn reduce_isometry(iso: &Isometry, q: &F3Quadratic) -> Result<F3Mat, Error> {
    if iso.mat.rows != DIM {
        return Err(Error::DimensionMismatch);
    }
    let mut m = [[0u8; DIM]; DIM];
    for (i, row) in m.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            *e = iso.mat[(i, j)].mod_theta().0;
        }
    }
    let g = F3Mat(m);
    if !q.is_isometry(&g) {
        return Err(Error::NotAnIsometry);
    }
    Ok(g)
}

/// Express an isometry as a product of reflections in nonisotropic vectors:
/// the returned list r satisfies g = R(r[0]) R(r[1]) ... R(r[k-1]).
///
/// The classical recursion fixes nonisotropic vectors one at a time. When
/// x - g(x) is isotropic, reflecting first in x + g(x) and then in x does the
/// job: from q(x - gx) = 0 one gets q(x + gx) = 4 q(x) != 0 and
/// R_{x+gx}(gx) = -x.
pub fn cartan_dieudonne(g: &F3Mat, q: &F3Quadratic) -> Result<Vec<F3Vec>, Error> {
    if !q.is_isometry(g) {
        return Err(Error::NotAnIsometry);
    }
    let mut refs: Vec<F3Vec> = Vec::new();
    let mut acc = *g;
    let mut fixed: Vec<F3Vec> = Vec::new(); // mutually orthogonal, nonisotropic
    let noniso = q.nonisotropic_vectors();
    loop {
        if acc.is_identity() {
            break;
        }
        let candidates: Vec<&F3Vec> = noniso
            .iter()
            .filter(|x| fixed.iter().all(|s| q.bilin(x, s) == 0))
            .collect();
        // vectors already fixed by acc shrink the working space for free
        if let Some(x) = candidates.iter().find(|x| acc.apply(x) == ***x) {
            fixed.push(**x);
            continue;
        }
        // a moved vector with anisotropic displacement
        if let Some((x, w)) = candidates.iter().find_map(|x| {
            let gx = acc.apply(x);
            let w = sub(x, &gx);
            (q.q(&w) != 0).then_some((**x, w))
        }) {
            let r = q.reflection(&w)?;
            acc = r.mul(&acc);
            refs.push(w);
            fixed.push(x);
            continue;
        }
        // isotropic displacement everywhere: two-reflection fallback
        let Some(x) = candidates.first().map(|x| **x) else {
            return Err(Error::Invalid(
                "no usable vector in the reflection recursion".into(),
            ));
        };
        let gx = acc.apply(&x);
        let w = add(&x, &gx);
        debug_assert!(q.q(&w) != 0);
        let rw = q.reflection(&w)?;
        let rx = q.reflection(&x)?;
        acc = rx.mul(&rw.mul(&acc));
        refs.push(w);
        refs.push(x);
        fixed.push(x);
    }
    // acc was multiplied on the left by involutions, so g is the product of
    // the recorded reflections in discovery order
    Ok(refs)
}

fn add(x: &F3Vec, y: &F3Vec) -> F3Vec {
    let mut out = [0u8; DIM];
    for i in 0..DIM {
        out[i] = (x[i] + y[i]) % 3;
    }
    out
}

fn sub(x: &F3Vec, y: &F3Vec) -> F3Vec {
    let mut out = [0u8; DIM];
    for i in 0..DIM {
        out[i] = (x[i] + 3 - y[i]) % 3;
    }
    out
}

/// Spinor norm: the square class of q(v1)...q(vk) over any reflection
/// decomposition; +1 or -1.
pub fn spinor_norm(g: &F3Mat, q: &F3Quadratic) -> Result<i8, Error> {
    let refs = cartan_dieudonne(g, q)?;
    let mut prod = 1u8;
    for r in &refs {
        prod = (prod * q.q(r)) % 3;
    }
    Ok(if prod == 1 { 1 } else { -1 })
}

/// Exhaustive closure of a generating set by breadth-first multiplication.
pub struct GroupClosure {
    elements: HashSet<[u8; DIM * DIM]>,
}

impl GroupClosure {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: &F3Mat) -> bool {
        self.elements.contains(&g.key())
    }

    /// Order of the image in the projective group (mod +-identity).
    pub fn projective_order(&self) -> usize {
        let mut seen: HashSet<[u8; DIM * DIM]> = HashSet::new();
        let mut count = 0usize;
        for k in &self.elements {
            if seen.contains(k) {
                continue;
            }
            let mut m = [[0u8; DIM]; DIM];
            for i in 0..DIM {
                for j in 0..DIM {
                    m[i][j] = k[i * DIM + j];
                }
            }
            let g = F3Mat(m);
            seen.insert(g.key());
            seen.insert(g.neg().key());
            count += 1;
        }
        count
    }
}

pub fn bfs_closure(gens: &[F3Mat]) -> GroupClosure {
    let mut elements: HashSet<[u8; DIM * DIM]> = HashSet::new();
    let id = F3Mat::identity();
    elements.insert(id.key());
    let mut frontier: VecDeque<F3Mat> = VecDeque::new();
    frontier.push_back(id);
    while let Some(g) = frontier.pop_front() {
        for h in gens {
            let gh = g.mul(h);
            if elements.insert(gh.key()) {
                frontier.push_back(gh);
            }
        }
    }
    GroupClosure { elements }
}

/// Lift a nonisotropic vector of V to a lattice vector of norm +-1 or +-2
/// congruent to it mod theta, searching lifts v0 + theta*w over a small box.
pub fn lift_nonisotropic(vbar: &F3Vec, gram: &HermGram, qf: &F3Quadratic) -> Option<LatVec> {
    let targets: [i64; 2] = match qf.q(vbar) {
        1 => [1, -2],
        2 => [-1, 2],
        _ => return None,
    };
    let base: Vec<EisInt> = vbar
        .iter()
        .map(|&c| EisInt::new(if c == 2 { -1 } else { c as i64 }, 0))
        .collect();
    let theta = EisInt::theta();
    let mut offsets: Vec<EisInt> = Vec::new();
    for a in -1i64..=1 {
        for b in -1i64..=1 {
            offsets.push(EisInt::new(a, b));
        }
    }
    let mut idx = [0usize; DIM];
    loop {
        let coords: Vec<EisInt> = (0..DIM)
            .map(|i| &base[i] + &(&offsets[idx[i]] * &theta))
            .collect();
        let v = LatVec::new(gram.frame, coords);
        let n = gram.norm(&v).unwrap();
        if targets.iter().any(|t| n == num_bigint::BigInt::from(*t)) {
            return Some(v);
        }
        let mut pos = 0;
        loop {
            if pos == DIM {
                return None;
            }
            idx[pos] += 1;
            if idx[pos] < offsets.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Projective normal form of a nonzero vector: the lexicographically least
/// of {v, 2v}.
pub fn projective_class_of(vbar: &F3Vec) -> F3Vec {
    let twice = {
        let mut out = [0u8; DIM];
        for i in 0..DIM {
            out[i] = (2 * vbar[i]) % 3;
        }
        out
    };
    if *vbar <= twice {
        *vbar
    } else {
        twice
    }
}

/// Reduce a lattice vector mod theta.
pub fn reduce_vector(v: &LatVec) -> Result<F3Vec, Error> {
    if v.coords.len() != DIM {
        return Err(Error::DimensionMismatch);
    }
    let mut out = [0u8; DIM];
    for (o, c) in out.iter_mut().zip(&v.coords) {
        *o = c.mod_theta().0;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Frame;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn qdiag() -> F3Quadratic {
        F3Quadratic::from_gram(&HermGram::diag5()).unwrap()
    }

    #[test]
    fn reduced_diag5_counts() {
        let q = qdiag();
        assert!(q.is_nondegenerate());
        let (vectors, classes) = q.count_norm_one();
        assert_eq!((vectors, classes), (72, 36));
        let (z, iso, one, two) = q.census();
        assert_eq!(z + iso + one + two, 243);
        assert_eq!(iso, 80);
        assert_eq!(two, 90);
    }

    #[test]
    fn sum_of_five_squares_differs() {
        // the unit form lies in the other discriminant class; its norm-one
        // count is the complementary 90 (recorded for regression)
        let q = F3Quadratic::new(F3Mat::identity()).unwrap();
        let (vectors, classes) = q.count_norm_one();
        assert_eq!((vectors, classes), (90, 45));
    }

    #[test]
    fn reflection_properties() {
        let q = qdiag();
        let e1 = [0, 1, 0, 0, 0];
        let r = q.reflection(&e1).unwrap();
        assert!(q.is_isometry(&r));
        assert!(r.mul(&r).is_identity());
        assert_eq!(r.apply(&e1), [0, 2, 0, 0, 0]);
        assert!(q.reflection(&[0; DIM]).is_err());
    }

    #[test]
    fn cartan_dieudonne_examples() {
        let q = qdiag();
        let e1 = [0, 1, 0, 0, 0];
        let r = q.reflection(&e1).unwrap();
        let d = cartan_dieudonne(&r, &q).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(q.reflection(&d[0]).unwrap(), r);
        // minus identity needs five orthogonal reflections
        let minus = F3Mat::identity().neg();
        let d = cartan_dieudonne(&minus, &q).unwrap();
        assert_eq!(d.len(), 5);
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    assert_eq!(q.bilin(&d[i], &d[j]), 0);
                }
            }
        }
        let mut prod = F3Mat::identity();
        for v in &d {
            prod = prod.mul(&q.reflection(v).unwrap());
        }
        assert_eq!(prod, minus);
        assert!(cartan_dieudonne(&F3Mat::identity(), &q).unwrap().is_empty());
    }

    #[test]
    fn cartan_dieudonne_random_products() {
        let q = qdiag();
        let noniso = q.nonisotropic_vectors();
        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let mut g = F3Mat::identity();
            let len = rng.gen_range(0..8);
            for _ in 0..len {
                let v = noniso[rng.gen_range(0..noniso.len())];
                g = g.mul(&q.reflection(&v).unwrap());
            }
            let d = cartan_dieudonne(&g, &q).unwrap();
            assert!(d.len() <= 6, "decomposition too long: {}", d.len());
            let mut prod = F3Mat::identity();
            for v in &d {
                prod = prod.mul(&q.reflection(v).unwrap());
            }
            assert_eq!(prod, g);
        }
    }

    #[test]
    fn spinor_norm_is_decomposition_independent() {
        // compare the direct decomposition of g against one obtained by
        // peeling off an arbitrary leading reflection
        let q = qdiag();
        let noniso = q.nonisotropic_vectors();
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..60 {
            let mut g = F3Mat::identity();
            for _ in 0..rng.gen_range(0..7) {
                let v = noniso[rng.gen_range(0..noniso.len())];
                g = g.mul(&q.reflection(&v).unwrap());
            }
            let direct = spinor_norm(&g, &q).unwrap();
            let u = noniso[rng.gen_range(0..noniso.len())];
            let ru = q.reflection(&u).unwrap();
            // g = R_u * (R_u g), so [u] ++ decomposition(R_u g) is a second
            // decomposition of g
            let rest = cartan_dieudonne(&ru.mul(&g), &q).unwrap();
            let mut prod = (q.q(&u) % 3) as i64;
            for r in &rest {
                prod = (prod * q.q(r) as i64) % 3;
            }
            let alt = if prod == 1 { 1 } else { -1 };
            assert_eq!(direct, alt);
        }
    }

    #[test]
    fn spinor_norm_basics() {
        let q = qdiag();
        let one = q
            .nonisotropic_vectors()
            .into_iter()
            .find(|v| q.q(v) == 1)
            .unwrap();
        let two = q
            .nonisotropic_vectors()
            .into_iter()
            .find(|v| q.q(v) == 2)
            .unwrap();
        assert_eq!(spinor_norm(&q.reflection(&one).unwrap(), &q).unwrap(), 1);
        assert_eq!(spinor_norm(&q.reflection(&two).unwrap(), &q).unwrap(), -1);
        // central involution has spinor norm -1
        assert_eq!(spinor_norm(&F3Mat::identity().neg(), &q).unwrap(), -1);
    }

    #[test]
    fn spinor_norm_is_multiplicative() {
        let q = qdiag();
        let noniso = q.nonisotropic_vectors();
        let mut rng = StdRng::seed_from_u64(5);
        let mut random_isometry = |rng: &mut StdRng| {
            let mut g = F3Mat::identity();
            for _ in 0..rng.gen_range(0..7) {
                let v = noniso[rng.gen_range(0..noniso.len())];
                g = g.mul(&q.reflection(&v).unwrap());
            }
            g
        };
        for _ in 0..100 {
            let g = random_isometry(&mut rng);
            let h = random_isometry(&mut rng);
            let lhs = spinor_norm(&g.mul(&h), &q).unwrap();
            let rhs = spinor_norm(&g, &q).unwrap() * spinor_norm(&h, &q).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn trivial_closure() {
        let c = bfs_closure(&[F3Mat::identity()]);
        assert_eq!(c.order(), 1);
    }

    #[test]
    fn lifts_exist_for_all_nonisotropic_vectors() {
        let gram = HermGram::diag5();
        let q = qdiag();
        for v in q.nonisotropic_vectors() {
            let lift = lift_nonisotropic(&v, &gram, &q).expect("lift exists");
            assert_eq!(reduce_vector(&lift).unwrap(), v);
            let n = gram.norm(&lift).unwrap();
            let n: i64 = n.try_into().unwrap();
            assert!(matches!(n, 1 | -1 | 2 | -2));
        }
    }

    #[test]
    fn reduce_isometry_scalar_omega() {
        // the scalar w reduces to the identity since w = 1 mod theta
        let gram = HermGram::diag5();
        let q = qdiag();
        let m = crate::mat::Mat::from_fn(5, 5, |i, j| {
            if i == j {
                EisInt::omega()
            } else {
                EisInt::zero()
            }
        });
        let iso = Isometry::new(&gram, m).unwrap();
        let g = reduce_isometry(&iso, &q).unwrap();
        assert!(g.is_identity());
    }

    #[test]
    fn hexflection_reduces_to_reflection() {
        let gram = HermGram::diag5();
        let q = qdiag();
        let r = LatVec::basis(Frame::Diag5, 5, 1);
        let hex = crate::lattice::hexflection(&r, &gram).unwrap();
        let g = reduce_isometry(&hex, &q).unwrap();
        // order 2 mod theta: -w = 2 mod theta
        assert!(g.mul(&g).is_identity());
        let rbar = reduce_vector(&r).unwrap();
        assert_eq!(g, q.reflection(&rbar).unwrap());
    }
}
