//! Locating the most symmetric points: negative-norm vectors of the diag5
//! lattice orthogonal to no short roots, their gluing profiles, the
//! structure of their orthogonal complements (the index-theta sublattice of
//! E^4 on the norm -3 side, a chain of long roots spanning a determinant-5
//! lattice on the norm -5 side), and the typing of order-two isometries as
//! reflections in vectors of norm +-1 or +-2.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::eis::EisInt;
use crate::f3::{self, F3Quadratic};
use crate::lattice::{biflection, Frame, HermGram, Isometry, LatVec};
use crate::linalg::{d4_theta, orthogonal_complement, DiscGroup, Sublattice};
use crate::mat::Mat;
use crate::Error;

/// The norm -5 representative (3,1,1,1,1).
pub fn diagonal_representative() -> LatVec {
    LatVec::from_i64(Frame::Diag5, &[(3, 0), (1, 0), (1, 0), (1, 0), (1, 0)])
}

/// The norm -3 representative (2 - wbar, 1, 1, 1, 1); the first coordinate
/// is 3 + w.
pub fn fermat_representative() -> LatVec {
    LatVec::new(
        Frame::Diag5,
        vec![
            EisInt::new(3, 1),
            EisInt::one(),
            EisInt::one(),
            EisInt::one(),
            EisInt::one(),
        ],
    )
}

/// The complete list of short roots orthogonal to a negative-norm vector;
/// finite because the complement is positive definite.
pub fn orthogonal_short_roots(v: &LatVec, gram: &HermGram) -> Result<Vec<LatVec>, Error> {
    if !gram.norm(v)?.is_negative() {
        return Err(Error::Invalid(
            "the vector must have negative norm for the root list to be finite".into(),
        ));
    }
    let comp = orthogonal_complement(v, gram)?;
    comp.enumerate_norm(&BigInt::one())
}

/// Discriminant groups of the complement and the span of a primitive
/// negative-norm vector, with the complementarity of their norms mod 1.
#[derive(Clone, Debug)]
pub struct GluingProfile {
    pub complement: DiscGroup,
    pub span: DiscGroup,
    pub orders_match: bool,
    pub norms_complementary: bool,
}

pub fn gluing_profile(v: &LatVec, gram: &HermGram) -> Result<GluingProfile, Error> {
    if !v.is_primitive() {
        return Err(Error::NotPrimitive);
    }
    if !gram.norm(v)?.is_negative() {
        return Err(Error::Invalid("expected a negative-norm vector".into()));
    }
    let comp = orthogonal_complement(v, gram)?;
    let span = Sublattice::new(gram.clone(), vec![v.clone()])?;
    let d1 = comp.disc_group()?;
    let d2 = span.disc_group()?;
    let orders_match = d1.order == d2.order;
    let norms_complementary = d1.norms_complementary(&d2);
    Ok(GluingProfile {
        complement: comp.disc_group()?,
        span: d2,
        orders_match,
        norms_complementary,
    })
}

/// An explicit isometry between two definite lattices of equal rank, found
/// by matching ordered tuples of minimal vectors with gram pruning. Returns
/// the paired bases, or None within the (deterministic, exhaustive) search.
pub fn find_isometry(
    src: &Sublattice,
    dst: &Sublattice,
    minimal_norm: &BigInt,
) -> Result<Option<(Vec<LatVec>, Vec<LatVec>)>, Error> {
    let k = src.rank();
    if dst.rank() != k {
        return Ok(None);
    }
    let src_min = src.enumerate_norm(minimal_norm)?;
    let dst_min = dst.enumerate_norm(minimal_norm)?;
    if src_min.len() != dst_min.len() {
        return Ok(None);
    }
    // a basis of src made of minimal vectors (backtracking on the index)
    let src_basis = match basis_from_vectors(src, &src_min) {
        Some(b) => b,
        None => return Ok(None),
    };
    let g = Mat::from_fn(k, k, |i, j| {
        src.ambient.inner(&src_basis[j], &src_basis[i]).unwrap()
    });
    // match the gram pattern inside dst's minimal vectors
    let mut chosen: Vec<LatVec> = Vec::new();
    if match_tuple(dst, &dst_min, &g, &mut chosen) {
        Ok(Some((src_basis, chosen)))
    } else {
        Ok(None)
    }
}

fn basis_from_vectors(lat: &Sublattice, pool: &[LatVec]) -> Option<Vec<LatVec>> {
    let k = lat.rank();
    let mut chosen: Vec<LatVec> = Vec::new();
    fn rec(lat: &Sublattice, pool: &[LatVec], chosen: &mut Vec<LatVec>, start: usize) -> bool {
        let k = lat.rank();
        if chosen.len() == k {
            let cand = Sublattice::new(lat.ambient.clone(), chosen.clone()).ok();
            if let Some(c) = cand {
                if c.index_in(lat) == Some(BigInt::one()) {
                    return true;
                }
            }
            return false;
        }
        for i in start..pool.len() {
            chosen.push(pool[i].clone());
            let independent =
                Sublattice::new(lat.ambient.clone(), chosen.clone()).is_ok();
            if independent && rec(lat, pool, chosen, i + 1) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    if rec(lat, pool, &mut chosen, 0) {
        debug_assert_eq!(chosen.len(), k);
        Some(chosen)
    } else {
        None
    }
}

fn match_tuple(dst: &Sublattice, pool: &[LatVec], g: &Mat, chosen: &mut Vec<LatVec>) -> bool {
    let k = g.rows;
    let t = chosen.len();
    if t == k {
        return true;
    }
    'outer: for cand in pool {
        // partial gram agreement
        for (i, prev) in chosen.iter().enumerate() {
            if dst.ambient.inner(cand, prev).unwrap() != g[(i, t)]
                || dst.ambient.inner(prev, cand).unwrap() != g[(t, i)]
            {
                continue 'outer;
            }
        }
        if dst.ambient.inner(cand, cand).unwrap() != g[(t, t)] {
            continue;
        }
        chosen.push(cand.clone());
        if match_tuple(dst, pool, g, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Checks that the complement of the norm -3 representative is a copy of
/// the index-theta sublattice of E^4: equal determinants, no short roots,
/// matching counts at norms two and three, and an explicit isometry.
#[derive(Clone, Debug)]
pub struct FermatComplementReport {
    pub vector_norm: BigInt,
    pub comp_determinant: BigInt,
    pub d4_determinant: BigInt,
    pub norm1_counts: (usize, usize),
    pub norm2_counts: (usize, usize),
    pub norm3_counts: (usize, usize),
    pub isometry_found: bool,
}

pub fn fermat_complement_check(v: &LatVec) -> Result<FermatComplementReport, Error> {
    let gram = HermGram::diag5();
    let n = gram.norm(v)?;
    if n != BigInt::from(-3) {
        return Err(Error::Invalid(format!("expected norm -3, got {n}")));
    }
    let comp = orthogonal_complement(v, &gram)?;
    let d4 = d4_theta();
    let c1 = comp.enumerate_norm(&BigInt::one())?.len();
    let d1 = d4.enumerate_norm(&BigInt::one())?.len();
    let c2 = comp.enumerate_norm(&BigInt::from(2))?.len();
    let d2 = d4.enumerate_norm(&BigInt::from(2))?.len();
    let c3 = comp.enumerate_norm(&BigInt::from(3))?.len();
    let d3 = d4.enumerate_norm(&BigInt::from(3))?.len();
    let iso = find_isometry(&d4, &comp, &BigInt::from(2))?;
    Ok(FermatComplementReport {
        vector_norm: n,
        comp_determinant: comp.gram_determinant(),
        d4_determinant: d4.gram_determinant(),
        norm1_counts: (c1, d1),
        norm2_counts: (c2, d2),
        norm3_counts: (c3, d3),
        isometry_found: iso.is_some(),
    })
}

/// Checks that the complement of the norm -5 representative contains a
/// four-long-root chain spanning it with determinant five.
#[derive(Clone, Debug)]
pub struct DiagonalComplementReport {
    pub vector_norm: BigInt,
    pub comp_determinant: BigInt,
    pub chain_found: bool,
    pub chain_determinant: Option<BigInt>,
    pub span_is_all_of_complement: bool,
}

pub fn diagonal_complement_check(v: &LatVec) -> Result<DiagonalComplementReport, Error> {
    let gram = HermGram::diag5();
    let n = gram.norm(v)?;
    if n != BigInt::from(-5) {
        return Err(Error::Invalid(format!("expected norm -5, got {n}")));
    }
    let comp = orthogonal_complement(v, &gram)?;
    let long_roots = comp.enumerate_norm(&BigInt::from(2))?;
    // chain gram: diagonal 2, adjacent inner products of norm one, zero
    // otherwise
    let mut chain: Vec<LatVec> = Vec::new();
    let found = chain_search(&gram, &long_roots, &mut chain, 4);
    let (chain_determinant, span_is_all) = if found {
        let span = Sublattice::new(gram.clone(), chain.clone())?;
        let det = span.gram_determinant();
        let idx = span.index_in(&comp);
        (Some(det), idx == Some(BigInt::one()))
    } else {
        (None, false)
    };
    Ok(DiagonalComplementReport {
        vector_norm: n,
        comp_determinant: comp.gram_determinant(),
        chain_found: found,
        chain_determinant,
        span_is_all_of_complement: span_is_all,
    })
}

fn chain_search(gram: &HermGram, pool: &[LatVec], chain: &mut Vec<LatVec>, k: usize) -> bool {
    if chain.len() == k {
        return true;
    }
    'outer: for cand in pool {
        for (i, prev) in chain.iter().enumerate() {
            let h = gram.inner(cand, prev).unwrap();
            let want_adjacent = i + 1 == chain.len();
            if want_adjacent {
                if h.norm() != BigInt::one() {
                    continue 'outer;
                }
            } else if !h.is_zero() {
                continue 'outer;
            }
        }
        chain.push(cand.clone());
        if chain_search(gram, pool, chain, k) {
            return true;
        }
        chain.pop();
    }
    false
}

/// Classification of an order-two isometry as a reflection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReflectionType {
    /// reflection in a norm 1 vector
    ShortRoot,
    /// reflection in a norm 2 vector (the only kind fixing no ball point
    /// isolatedly)
    LongRoot,
    /// reflection in a norm -1 vector
    NegativeUnit,
    /// reflection in a norm -2 vector
    NegativeLong,
}

/// Decide whether an involution is a reflection (fixed sublattice of rank
/// n-1) and produce the reflection vector with its norm class.
pub fn biflection_transform_type(
    iso: &Isometry,
    gram: &HermGram,
) -> Result<(ReflectionType, LatVec), Error> {
    if iso.mat.is_identity() || iso.mat == Mat::identity(gram.dim()).scale(&EisInt::new(-1, 0)) {
        return Err(Error::Invalid("the involution must not be central".into()));
    }
    if !iso.mat.mul(&iso.mat).is_identity() {
        return Err(Error::Invalid("not an involution".into()));
    }
    let n = gram.dim();
    let minus_one = |m: &Mat, sign: i64| {
        Mat::from_fn(n, n, |i, j| {
            if i == j {
                &m[(i, j)] - &EisInt::new(sign, 0)
            } else {
                m[(i, j)].clone()
            }
        })
    };
    let fixed = crate::linalg::kernel(&minus_one(&iso.mat, 1));
    if fixed.len() != n - 1 {
        return Err(Error::Invalid(format!(
            "fixed sublattice has rank {}, not a reflection",
            fixed.len()
        )));
    }
    let moved = crate::linalg::kernel(&minus_one(&iso.mat, -1));
    if moved.len() != 1 {
        return Err(Error::Invalid("(-1)-eigenlattice is not rank one".into()));
    }
    let r = LatVec::new(gram.frame, moved[0].clone());
    // the involution must literally be the biflection in r
    let b = biflection(&r, gram)?;
    if b.mat != iso.mat {
        return Err(Error::Invalid("involution is not the biflection in its axis".into()));
    }
    let nr = gram.norm(&r)?;
    let t = if nr == BigInt::one() {
        ReflectionType::ShortRoot
    } else if nr == BigInt::from(2) {
        ReflectionType::LongRoot
    } else if nr == BigInt::from(-1) {
        ReflectionType::NegativeUnit
    } else if nr == BigInt::from(-2) {
        ReflectionType::NegativeLong
    } else {
        return Err(Error::Invalid(format!(
            "reflection vector has norm {nr}, outside +-1, +-2"
        )));
    };
    Ok((t, r))
}

/// Full classification record for a negative-norm vector: the data the
/// command-line `classify` subcommand prints.
#[derive(Clone, Debug)]
pub struct Classification {
    pub norm: BigInt,
    pub primitive: bool,
    pub orthogonal_short_roots: usize,
    pub gluing: Option<GluingProfile>,
    pub name: Option<String>,
}

pub fn classify_vector(v: &LatVec) -> Result<Classification, Error> {
    let gram = HermGram::diag5();
    let n = gram.norm(v)?;
    if !n.is_negative() {
        return Err(Error::Invalid(format!(
            "classification needs a negative-norm vector, got norm {n}"
        )));
    }
    let roots = orthogonal_short_roots(v, &gram)?;
    let primitive = v.is_primitive();
    let gluing = if primitive {
        Some(gluing_profile(v, &gram)?)
    } else {
        None
    };
    let name = if roots.is_empty() && n == BigInt::from(-5) {
        Some("diagonal point".to_string())
    } else if roots.is_empty() && n == BigInt::from(-3) && primitive {
        Some("Fermat point".to_string())
    } else {
        None
    };
    Ok(Classification {
        norm: n,
        primitive,
        orthogonal_short_roots: roots.len(),
        gluing,
        name,
    })
}

/// Spinor norm (in the finite quotient) of the product of the central
/// involution with the biflection in a long root: the element exchanging a
/// negative-norm vector with its negative.
pub fn negated_biflection_spinor(r: &LatVec, gram: &HermGram) -> Result<i8, Error> {
    if gram.norm(r)? != BigInt::from(2) {
        return Err(Error::Invalid("expected a long root".into()));
    }
    let b = biflection(r, gram)?;
    let m = b.mat.scale(&EisInt::new(-1, 0));
    let iso = Isometry::new(gram, m)?;
    let q = F3Quadratic::from_gram(gram)?;
    let g = f3::reduce_isometry(&iso, &q)?;
    f3::spinor_norm(&g, &q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representative_norms_are_computed() {
        let g = HermGram::diag5();
        assert_eq!(g.norm(&diagonal_representative()).unwrap(), BigInt::from(-5));
        assert_eq!(g.norm(&fermat_representative()).unwrap(), BigInt::from(-3));
    }

    #[test]
    fn basis_vector_sees_24_roots() {
        let g = HermGram::diag5();
        let v = LatVec::basis(Frame::Diag5, 5, 0);
        assert_eq!(g.norm(&v).unwrap(), BigInt::from(-1));
        let roots = orthogonal_short_roots(&v, &g).unwrap();
        assert_eq!(roots.len(), 24);
        // positive-norm input is rejected
        let w = LatVec::basis(Frame::Diag5, 5, 1);
        assert!(orthogonal_short_roots(&w, &g).is_err());
    }

    #[test]
    fn representatives_are_orthogonal_to_no_short_roots() {
        let g = HermGram::diag5();
        assert!(orthogonal_short_roots(&diagonal_representative(), &g)
            .unwrap()
            .is_empty());
        assert!(orthogonal_short_roots(&fermat_representative(), &g)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn gluing_profiles() {
        let g = HermGram::diag5();
        let p = gluing_profile(&diagonal_representative(), &g).unwrap();
        assert!(p.orders_match);
        assert!(p.norms_complementary);
        assert_eq!(p.complement.order, BigInt::from(25));
        let p = gluing_profile(&fermat_representative(), &g).unwrap();
        assert!(p.orders_match);
        assert!(p.norms_complementary);
        assert_eq!(p.complement.order, BigInt::from(9));
        // norm -1 vector: unimodular complement, trivial groups
        let p = gluing_profile(&LatVec::basis(Frame::Diag5, 5, 0), &g).unwrap();
        assert_eq!(p.complement.order, BigInt::one());
        assert_eq!(p.span.order, BigInt::one());
        assert!(p.norms_complementary);
    }

    #[test]
    fn fermat_complement_matches_d4_theta() {
        let r = fermat_complement_check(&fermat_representative()).unwrap();
        assert_eq!(r.comp_determinant, BigInt::from(3));
        assert_eq!(r.d4_determinant, BigInt::from(3));
        assert_eq!(r.norm1_counts, (0, 0));
        assert_eq!(r.norm2_counts.0, r.norm2_counts.1);
        assert_eq!(r.norm3_counts.0, r.norm3_counts.1);
        assert!(r.isometry_found);
    }

    #[test]
    fn diagonal_complement_has_long_root_chain() {
        let r = diagonal_complement_check(&diagonal_representative()).unwrap();
        assert_eq!(r.comp_determinant, BigInt::from(5));
        assert!(r.chain_found);
        assert_eq!(r.chain_determinant, Some(BigInt::from(5)));
        assert!(r.span_is_all_of_complement);
    }

    #[test]
    fn biflection_types() {
        let g = HermGram::diag5();
        // long root inside the complement of the diagonal representative
        let long = LatVec::from_i64(Frame::Diag5, &[(0, 0), (0, 0), (0, 0), (1, 0), (-1, 0)]);
        let b = biflection(&long, &g).unwrap();
        let (t, r) = biflection_transform_type(&b, &g).unwrap();
        assert_eq!(t, ReflectionType::LongRoot);
        assert_eq!(g.norm(&r).unwrap(), BigInt::from(2));
        // norm -1 axis
        let e0 = LatVec::basis(Frame::Diag5, 5, 0);
        let b = biflection(&e0, &g).unwrap();
        let (t, _) = biflection_transform_type(&b, &g).unwrap();
        assert_eq!(t, ReflectionType::NegativeUnit);
        // the central involution is rejected
        let minus = Isometry::new(&g, Mat::identity(5).scale(&EisInt::new(-1, 0))).unwrap();
        assert!(biflection_transform_type(&minus, &g).is_err());
    }

    #[test]
    fn non_reflection_involutions_are_rejected() {
        // the product of two orthogonal biflections fixes a rank-3 lattice
        let g = HermGram::diag5();
        let a = LatVec::from_i64(Frame::Diag5, &[(0, 0), (1, 0), (-1, 0), (0, 0), (0, 0)]);
        let b = LatVec::from_i64(Frame::Diag5, &[(0, 0), (0, 0), (0, 0), (1, 0), (-1, 0)]);
        let prod = biflection(&a, &g).unwrap().compose(&biflection(&b, &g).unwrap());
        assert!(biflection_transform_type(&prod, &g).is_err());
    }

    #[test]
    fn negated_long_biflection_has_positive_spinor() {
        let g = HermGram::diag5();
        let long = LatVec::from_i64(Frame::Diag5, &[(0, 0), (0, 0), (0, 0), (1, 0), (-1, 0)]);
        assert_eq!(negated_biflection_spinor(&long, &g).unwrap(), 1);
    }

    #[test]
    fn classify_named_points() {
        let c = classify_vector(&diagonal_representative()).unwrap();
        assert_eq!(c.name.as_deref(), Some("diagonal point"));
        assert_eq!(c.orthogonal_short_roots, 0);
        let c = classify_vector(&fermat_representative()).unwrap();
        assert_eq!(c.name.as_deref(), Some("Fermat point"));
        let c = classify_vector(&LatVec::basis(Frame::Diag5, 5, 0)).unwrap();
        assert_eq!(c.name, None);
        assert_eq!(c.orthogonal_short_roots, 24);
    }
}
