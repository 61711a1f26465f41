//! Hermitian lattices over the Eisenstein integers: gram matrices, inner
//! products, complex reflections, Heisenberg translations, heights, and the
//! dictionary between unimodular symplectic forms with an order-3 symmetry
//! and hermitian forms.
//!
//! Conventions: vectors are columns, the form is <v|w> = w* A v, linear in
//! the first slot and conjugate-linear in the second. Two distinguished
//! gram matrices of signature (4,1) are used throughout:
//!
//! * `diag5`: diag(-1, 1, 1, 1, 1), and
//! * `hyp5`: identity on the first three coordinates plus the hyperbolic
//!   cell [[0,1],[1,0]] on the last two.
//!
//! In the `hyp5` frame we write vectors as (l1, l2, l3; mu, nu), distinguish
//! the null vector rho = (0,0,0; 0,1), and call <v|rho> = mu the height of v.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::eis::EisInt;
use crate::mat::Mat;
use crate::Error;

/// Which coordinate system a vector or gram matrix lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Frame {
    /// diag(-1,1,1,1,1) coordinates.
    Diag5,
    /// Hyperbolic-cell coordinates (l1,l2,l3; mu,nu).
    Hyp5,
    /// An ad-hoc gram matrix of the given rank (sublattices, tensor models).
    Free(usize),
}

/// A hermitian gram matrix: equal to its own conjugate transpose.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HermGram {
    pub frame: Frame,
    pub mat: Mat,
}

impl HermGram {
    pub fn new(frame: Frame, mat: Mat) -> Result<HermGram, Error> {
        if mat.rows != mat.cols {
            return Err(Error::DimensionMismatch);
        }
        if mat.conj_transpose() != mat {
            return Err(Error::Invalid("gram matrix is not self-adjoint".into()));
        }
        Ok(HermGram { frame, mat })
    }

    pub fn dim(&self) -> usize {
        self.mat.rows
    }

    /// diag(-1,1,1,1,1).
    pub fn diag5() -> HermGram {
        let m = Mat::diag(&[
            EisInt::new(-1, 0),
            EisInt::one(),
            EisInt::one(),
            EisInt::one(),
            EisInt::one(),
        ]);
        HermGram {
            frame: Frame::Diag5,
            mat: m,
        }
    }

    /// Identity on three coordinates plus the hyperbolic cell [[0,1],[1,0]].
    pub fn hyp5() -> HermGram {
        let mut m = Mat::identity(5);
        m[(3, 3)] = EisInt::zero();
        m[(4, 4)] = EisInt::zero();
        m[(3, 4)] = EisInt::one();
        m[(4, 3)] = EisInt::one();
        HermGram {
            frame: Frame::Hyp5,
            mat: m,
        }
    }

    /// <v|w> = w* A v.
    pub fn inner(&self, v: &LatVec, w: &LatVec) -> Result<EisInt, Error> {
        if v.frame != self.frame || w.frame != self.frame {
            return Err(Error::FrameMismatch);
        }
        if v.coords.len() != self.dim() || w.coords.len() != self.dim() {
            return Err(Error::DimensionMismatch);
        }
        let av = self.mat.mul_vec(&v.coords);
        let mut acc = EisInt::zero();
        for (wi, avi) in w.coords.iter().zip(av.iter()) {
            acc += &(&wi.conj() * avi);
        }
        Ok(acc)
    }

    /// <v|v>, always a rational integer.
    pub fn norm(&self, v: &LatVec) -> Result<BigInt, Error> {
        let n = self.inner(v, v)?;
        debug_assert!(n.is_rational());
        Ok(n.a)
    }
}

/// A lattice vector: coordinates tagged with the frame they live in.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LatVec {
    pub frame: Frame,
    pub coords: Vec<EisInt>,
}

impl LatVec {
    pub fn new(frame: Frame, coords: Vec<EisInt>) -> LatVec {
        LatVec { frame, coords }
    }

    pub fn from_i64(frame: Frame, coords: &[(i64, i64)]) -> LatVec {
        LatVec {
            frame,
            coords: coords.iter().map(|&(a, b)| EisInt::new(a, b)).collect(),
        }
    }

    pub fn basis(frame: Frame, n: usize, i: usize) -> LatVec {
        let mut coords = vec![EisInt::zero(); n];
        coords[i] = EisInt::one();
        LatVec { frame, coords }
    }

    /// The distinguished null vector rho = (0,0,0; 0,1) of the hyp5 frame.
    pub fn rho() -> LatVec {
        LatVec::basis(Frame::Hyp5, 5, 4)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// gcd of the coordinates is a unit.
    pub fn is_primitive(&self) -> bool {
        let mut g = EisInt::zero();
        for c in &self.coords {
            g = g.gcd(c);
        }
        g.is_unit()
    }

    pub fn scale(&self, s: &EisInt) -> LatVec {
        LatVec {
            frame: self.frame,
            coords: self.coords.iter().map(|c| c * s).collect(),
        }
    }

    pub fn add(&self, other: &LatVec) -> LatVec {
        assert_eq!(self.frame, other.frame);
        LatVec {
            frame: self.frame,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &LatVec) -> LatVec {
        assert_eq!(self.frame, other.frame);
        LatVec {
            frame: self.frame,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn neg(&self) -> LatVec {
        self.scale(&EisInt::new(-1, 0))
    }

    /// Height in the hyp5 frame: <v|rho>, the second-to-last coordinate.
    pub fn height(&self) -> Result<EisInt, Error> {
        if self.frame != Frame::Hyp5 {
            return Err(Error::FrameMismatch);
        }
        Ok(self.coords[3].clone())
    }

    /// Lexicographically least among the six unit multiples; normal form
    /// for mirrors and roots-up-to-units.
    pub fn unit_normal_form(&self) -> LatVec {
        EisInt::units()
            .iter()
            .map(|u| self.scale(u))
            .min_by(|x, y| x.coords.cmp(&y.coords))
            .unwrap()
    }
}

/// A gram-preserving matrix: M* A M = A exactly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Isometry {
    pub frame: Frame,
    pub mat: Mat,
}

impl Isometry {
    pub fn new(gram: &HermGram, mat: Mat) -> Result<Isometry, Error> {
        if mat.rows != gram.dim() || mat.cols != gram.dim() {
            return Err(Error::DimensionMismatch);
        }
        if mat.conj_transpose().mul(&gram.mat).mul(&mat) != gram.mat {
            return Err(Error::NotAnIsometry);
        }
        Ok(Isometry {
            frame: gram.frame,
            mat,
        })
    }

    pub fn identity(gram: &HermGram) -> Isometry {
        Isometry {
            frame: gram.frame,
            mat: Mat::identity(gram.dim()),
        }
    }

    pub fn apply(&self, v: &LatVec) -> LatVec {
        assert_eq!(self.frame, v.frame);
        LatVec {
            frame: v.frame,
            coords: self.mat.mul_vec(&v.coords),
        }
    }

    pub fn compose(&self, other: &Isometry) -> Isometry {
        assert_eq!(self.frame, other.frame);
        Isometry {
            frame: self.frame,
            mat: self.mat.mul(&other.mat),
        }
    }

    pub fn inverse(&self) -> Isometry {
        Isometry {
            frame: self.frame,
            mat: self.mat.inverse_unimodular(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat.is_identity()
    }

    /// Multiplicative order, bailing out above `cap`.
    pub fn order(&self, cap: u64) -> Option<u64> {
        let mut acc = self.mat.clone();
        for k in 1..=cap {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(&self.mat);
        }
        None
    }
}

/// The zeta-reflection in v: x |-> x - (1 - zeta) <x|v>/<v|v> v.
///
/// Fixes the orthogonal complement of v pointwise and multiplies v by the
/// unit zeta; its order equals the order of zeta. Integrality can fail for
/// an illegal (norm, zeta) pair, e.g. a hexflection in a long root, and is
/// reported as an error.
pub fn zeta_reflection(v: &LatVec, zeta: &EisInt, gram: &HermGram) -> Result<Isometry, Error> {
    if !zeta.is_unit() {
        return Err(Error::Invalid("zeta must be a unit".into()));
    }
    let n = gram.inner(v, v)?;
    if n.is_zero() {
        return Err(Error::Invalid("reflection vector must have nonzero norm".into()));
    }
    let c = &EisInt::one() - zeta;
    let dim = gram.dim();
    // row vector v* A, so that <x|v> = (v* A) x
    let va: Vec<EisInt> = {
        let mut out = vec![EisInt::zero(); dim];
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = EisInt::zero();
            for i in 0..dim {
                acc += &(&v.coords[i].conj() * &gram.mat[(i, j)]);
            }
            *o = acc;
        }
        out
    };
    let mut m = Mat::identity(dim);
    for i in 0..dim {
        for j in 0..dim {
            let num = &(&c * &v.coords[i]) * &va[j];
            let q = num.div_exact(&n)?;
            let e = &mut m[(i, j)];
            *e -= &q;
        }
    }
    Isometry::new(gram, m)
}

/// Hexflection: the (-w)-reflection, order 6, legal in short roots.
pub fn hexflection(v: &LatVec, gram: &HermGram) -> Result<Isometry, Error> {
    zeta_reflection(v, &(-EisInt::omega()), gram)
}

/// Triflection: the w-reflection, order 3.
pub fn triflection(v: &LatVec, gram: &HermGram) -> Result<Isometry, Error> {
    zeta_reflection(v, &EisInt::omega(), gram)
}

/// Biflection: the (-1)-reflection, order 2, legal in short and long roots.
pub fn biflection(v: &LatVec, gram: &HermGram) -> Result<Isometry, Error> {
    zeta_reflection(v, &EisInt::new(-1, 0), gram)
}

/// Parameters of a Heisenberg translation T_{lambda, z} with z = k*theta/2.
///
/// The parity constraint k = <lambda|lambda> (mod 2) is exactly the
/// integrality condition z - lambda^2/2 in E.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TranslationParams {
    pub lambda: [EisInt; 3],
    pub k: BigInt,
}

impl TranslationParams {
    pub fn new(lambda: [EisInt; 3], k: impl Into<BigInt>) -> Result<TranslationParams, Error> {
        let k = k.into();
        let p = TranslationParams { lambda, k };
        if (&p.lambda_norm() - &p.k).is_even() {
            Ok(p)
        } else {
            Err(Error::TranslationParity)
        }
    }

    pub fn central(k: impl Into<BigInt>) -> Result<TranslationParams, Error> {
        TranslationParams::new([EisInt::zero(), EisInt::zero(), EisInt::zero()], k)
    }

    /// <lambda|lambda> = sum of coordinate norms.
    pub fn lambda_norm(&self) -> BigInt {
        self.lambda.iter().map(|l| l.norm()).sum()
    }

    /// <lambda|mu> = mu* lambda on the positive-definite 3-space.
    fn pair(lambda: &[EisInt; 3], mu: &[EisInt; 3]) -> EisInt {
        let mut acc = EisInt::zero();
        for i in 0..3 {
            acc += &(&mu[i].conj() * &lambda[i]);
        }
        acc
    }

    /// T_{l,z} T_{l',z'} = T_{l+l', z+z'+Im<l'|l>}.
    pub fn compose(&self, other: &TranslationParams) -> TranslationParams {
        let lambda = [
            &self.lambda[0] + &other.lambda[0],
            &self.lambda[1] + &other.lambda[1],
            &self.lambda[2] + &other.lambda[2],
        ];
        // matrix multiplication T_l T_l' picks up Im(l'* l) in the center;
        // Im x = (x - conj x)/2 = (b/2) theta for x = a + bw
        let cross = Self::pair(&self.lambda, &other.lambda);
        let k = &self.k + &other.k + cross.b;
        TranslationParams { lambda, k }
    }

    pub fn inverse(&self) -> TranslationParams {
        TranslationParams {
            lambda: [-&self.lambda[0], -&self.lambda[1], -&self.lambda[2]],
            k: -&self.k,
        }
    }

    /// [T, T'] = T T' T^{-1} T'^{-1}, always a central translation.
    pub fn commutator(&self, other: &TranslationParams) -> TranslationParams {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    pub fn is_central(&self) -> bool {
        self.lambda.iter().all(|l| l.is_zero())
    }

    /// The 5x5 matrix in the hyp5 frame:
    ///
    /// ```text
    ///   [ I3        lambda   0 ]
    ///   [ 0         1        0 ]
    ///   [ -lambda*  z-l^2/2  1 ]
    /// ```
    pub fn to_isometry(&self) -> Isometry {
        let gram = HermGram::hyp5();
        let mut m = Mat::identity(5);
        for i in 0..3 {
            m[(i, 3)] = self.lambda[i].clone();
            m[(4, i)] = -self.lambda[i].conj();
        }
        // z - lambda^2/2 = (k theta - l^2)/2 = (k - l^2)/2 + k w
        let ln = self.lambda_norm();
        let half = (&self.k - &ln).div_floor(&BigInt::from(2));
        m[(4, 3)] = EisInt::from_bigints(half, self.k.clone());
        Isometry::new(&gram, m).expect("translations preserve the hyperbolic form")
    }
}

/// A unimodular base change M with M* diag5 M = hyp5; columns are the hyp5
/// basis vectors written in diag5 coordinates. The hyperbolic cell is spanned
/// by f1 = e0 + e4 and f2 = w e0 - wbar e4.
pub fn base_change_hyp_to_diag() -> Mat {
    let w = EisInt::omega();
    let wb = EisInt::omega_bar();
    let z = EisInt::zero();
    let o = EisInt::one();
    Mat::from_rows(vec![
        vec![z.clone(), z.clone(), z.clone(), o.clone(), w],
        vec![o.clone(), z.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), o.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), o.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), z.clone(), o, -wb],
    ])
}

/// Transport a hyp5 vector into diag5 coordinates.
pub fn hyp_to_diag(v: &LatVec) -> Result<LatVec, Error> {
    if v.frame != Frame::Hyp5 {
        return Err(Error::FrameMismatch);
    }
    Ok(LatVec::new(
        Frame::Diag5,
        base_change_hyp_to_diag().mul_vec(&v.coords),
    ))
}

/// Transport a diag5 vector into hyp5 coordinates.
pub fn diag_to_hyp(v: &LatVec) -> Result<LatVec, Error> {
    if v.frame != Frame::Diag5 {
        return Err(Error::FrameMismatch);
    }
    Ok(LatVec::new(
        Frame::Hyp5,
        base_change_hyp_to_diag()
            .inverse_unimodular()
            .mul_vec(&v.coords),
    ))
}

/// An integer symplectic module with an order-3 symmetry: the raw data from
/// which a hermitian Eisenstein structure is built.
#[derive(Clone, Debug)]
pub struct SymplecticData {
    /// Antisymmetric unimodular integer matrix, Omega(x,y) = x^T O y.
    pub omega: Vec<Vec<BigInt>>,
    /// Integer matrix with sigma^2 + sigma + 1 = 0 preserving Omega.
    pub sigma: Vec<Vec<BigInt>>,
}

impl SymplecticData {
    pub fn new(omega: Vec<Vec<BigInt>>, sigma: Vec<Vec<BigInt>>) -> Result<SymplecticData, Error> {
        let n = omega.len();
        if n == 0 || n % 2 != 0 {
            return Err(Error::Invalid("symplectic rank must be even".into()));
        }
        for r in omega.iter().chain(sigma.iter()) {
            if r.len() != n {
                return Err(Error::DimensionMismatch);
            }
        }
        let d = SymplecticData { omega, sigma };
        for i in 0..n {
            for j in 0..n {
                if d.omega[i][j] != -&d.omega[j][i] {
                    return Err(Error::Invalid("omega is not antisymmetric".into()));
                }
            }
        }
        // sigma^2 + sigma + 1 = 0
        let s2 = int_mat_mul(&d.sigma, &d.sigma);
        for i in 0..n {
            for j in 0..n {
                let idij = if i == j { BigInt::one() } else { BigInt::zero() };
                if &s2[i][j] + &d.sigma[i][j] + idij != BigInt::zero() {
                    return Err(Error::Invalid("sigma^2 + sigma + 1 != 0".into()));
                }
            }
        }
        // sigma preserves omega: Omega(sx, sy) = Omega(x, y)
        let st = int_mat_transpose(&d.sigma);
        let check = int_mat_mul(&int_mat_mul(&st, &d.omega), &d.sigma);
        if check != d.omega {
            return Err(Error::Invalid("sigma does not preserve omega".into()));
        }
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        self.omega.len()
    }

    /// theta x = (sigma - sigma^{-1}) x, with sigma^{-1} = sigma^2.
    pub fn theta_vec(&self, x: &[BigInt]) -> Vec<BigInt> {
        let sx = int_mat_vec(&self.sigma, x);
        let ssx = int_mat_vec(&self.sigma, &sx);
        sx.iter().zip(ssx.iter()).map(|(a, b)| a - b).collect()
    }

    pub fn omega_pair(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let oy = int_mat_vec(&self.omega, y);
        x.iter().zip(oy.iter()).map(|(a, b)| a * b).sum()
    }

    /// h(x, y) = -(Omega(theta x, y) + theta Omega(x, y)) / 2, an Eisenstein
    /// integer; E-linear in x when w acts as sigma, conjugate-linear in y.
    pub fn hermitian_pair(&self, x: &[BigInt], y: &[BigInt]) -> EisInt {
        let tx = self.theta_vec(x);
        let re2 = -self.omega_pair(&tx, y); // 2 Re h
        let om = self.omega_pair(x, y);
        // h = re2/2 - (om/2) theta = (re2 - om)/2 - om*w
        let a = (&re2 - &om).div_floor(&BigInt::from(2));
        EisInt::from_bigints(a, -om)
    }

    /// Recover Omega(x,y) = (h(y,x) - h(x,y)) / theta.
    pub fn symplectic_from_hermitian(&self, x: &[BigInt], y: &[BigInt]) -> BigInt {
        let hxy = self.hermitian_pair(x, y);
        let hyx = self.hermitian_pair(y, x);
        let diff = &hyx - &hxy;
        let q = diff
            .div_exact(&EisInt::theta())
            .expect("h(y,x)-h(x,y) is a multiple of theta");
        debug_assert!(q.is_rational());
        q.a
    }

    /// An E-basis of Z^{2n} for the module structure w.x = sigma x, together
    /// with the gram matrix of h on that basis.
    pub fn eisenstein_structure(&self) -> Result<(Vec<Vec<BigInt>>, HermGram), Error> {
        let n2 = self.rank();
        let n = n2 / 2;
        // Greedy E-linearly-independent subset of the standard basis: b is
        // admissible when {b_k, sigma b_k} stay Q-independent.
        let mut chosen: Vec<Vec<BigInt>> = Vec::new();
        let mut span: Vec<Vec<BigRational>> = Vec::new(); // reduced row space
        for i in 0..n2 {
            if chosen.len() == n {
                break;
            }
            let mut e = vec![BigInt::zero(); n2];
            e[i] = BigInt::one();
            let se = int_mat_vec(&self.sigma, &e);
            let mut trial = span.clone();
            if rational_row_insert(&mut trial, &e) && rational_row_insert(&mut trial, &se) {
                span = trial;
                chosen.push(e);
            }
        }
        if chosen.len() != n {
            return Err(Error::Invalid("could not extract an E-basis".into()));
        }
        // P has columns b1, sigma b1, b2, sigma b2, ...; coordinates of v over
        // the E-span are read off from P^{-1} v in (a, b) pairs.
        let mut pcols: Vec<Vec<BigInt>> = Vec::new();
        for b in &chosen {
            pcols.push(b.clone());
            pcols.push(int_mat_vec(&self.sigma, b));
        }
        let coords_of = |v: &[BigInt]| -> Vec<BigRational> { rational_solve(&pcols, v) };
        // Express every standard generator in E-coordinates, clear the common
        // denominator, and column-reduce over E to get an honest E-basis of
        // the full module.
        let mut denom = BigInt::one();
        let mut gen_coords: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..n2 {
            let mut e = vec![BigInt::zero(); n2];
            e[i] = BigInt::one();
            let c = coords_of(&e);
            for x in &c {
                denom = denom.lcm(x.denom());
            }
            gen_coords.push(c);
        }
        // n x (2n) matrix over E: column per generator
        let gmat = Mat::from_fn(n, n2, |r, c| {
            let a = (&gen_coords[c][2 * r] * BigRational::from(denom.clone()))
                .to_integer();
            let b = (&gen_coords[c][2 * r + 1] * BigRational::from(denom.clone()))
                .to_integer();
            EisInt::from_bigints(a, b)
        });
        let h = crate::linalg::column_echelon(&gmat);
        // First n independent columns of the echelon form span the module.
        let mut basis_vecs: Vec<Vec<BigInt>> = Vec::new();
        for j in 0..h.cols {
            if (0..h.rows).all(|i| h[(i, j)].is_zero()) {
                continue;
            }
            // map E-coordinates (scaled by denom) back to an integer vector
            let mut v = vec![BigInt::zero(); n2];
            for (r, b) in chosen.iter().enumerate() {
                let coeff = &h[(r, j)];
                let sb = int_mat_vec(&self.sigma, b);
                for t in 0..n2 {
                    v[t] += &coeff.a * &b[t] + &coeff.b * &sb[t];
                }
            }
            for x in &mut v {
                let (q, r) = x.div_mod_floor(&denom);
                if !r.is_zero() {
                    return Err(Error::Invalid("basis extraction left denominators".into()));
                }
                *x = q;
            }
            basis_vecs.push(v);
            if basis_vecs.len() == n {
                break;
            }
        }
        if basis_vecs.len() != n {
            return Err(Error::Invalid("E-basis has wrong rank".into()));
        }
        // gram[i][j] = h(b_j, b_i) so that coordinate columns satisfy
        // <x|y> = y* G x
        let gram = Mat::from_fn(n, n, |i, j| {
            self.hermitian_pair(&basis_vecs[j], &basis_vecs[i])
        });
        let gram = HermGram::new(Frame::Free(n), gram)?;
        Ok((basis_vecs, gram))
    }
}

fn int_mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = b[0].len();
    let k = b.len();
    let mut out = vec![vec![BigInt::zero(); m]; n];
    for i in 0..n {
        for t in 0..k {
            if a[i][t].is_zero() {
                continue;
            }
            for j in 0..m {
                out[i][j] += &a[i][t] * &b[t][j];
            }
        }
    }
    out
}

fn int_mat_transpose(a: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let m = a[0].len();
    let mut out = vec![vec![BigInt::zero(); n]; m];
    for i in 0..n {
        for j in 0..m {
            out[j][i] = a[i][j].clone();
        }
    }
    out
}

fn int_mat_vec(a: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    a.iter()
        .map(|row| row.iter().zip(v.iter()).map(|(x, y)| x * y).sum())
        .collect()
}

/// Insert a vector into a reduced rational row space; false if dependent.
fn rational_row_insert(rows: &mut Vec<Vec<BigRational>>, v: &[BigInt]) -> bool {
    let mut w: Vec<BigRational> = v.iter().map(|x| BigRational::from(x.clone())).collect();
    for row in rows.iter() {
        if let Some(p) = row.iter().position(|x| !x.is_zero()) {
            if !w[p].is_zero() {
                let f = &w[p] / &row[p];
                for (wi, ri) in w.iter_mut().zip(row.iter()) {
                    *wi -= &f * ri;
                }
            }
        }
    }
    if w.iter().all(|x| x.is_zero()) {
        false
    } else {
        rows.push(w);
        true
    }
}

/// Solve the square system (columns) * x = v over the rationals.
fn rational_solve(cols: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigRational> {
    let n = v.len();
    assert_eq!(cols.len(), n);
    let mut aug: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = (0..n)
                .map(|j| BigRational::from(cols[j][i].clone()))
                .collect();
            row.push(BigRational::from(v[i].clone()));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !aug[r][c].is_zero())
            .expect("singular system in rational_solve");
        aug.swap(c, p);
        let piv = aug[c][c].clone();
        for x in aug[c].iter_mut() {
            *x /= &piv;
        }
        for r in 0..n {
            if r != c && !aug[r][c].is_zero() {
                let f = aug[r][c].clone();
                for j in 0..=n {
                    let t = &f * &aug[c][j];
                    aug[r][j] -= t;
                }
            }
        }
    }
    (0..n).map(|i| aug[i][n].clone()).collect()
}
