//! Combinatorics of the mirror arrangement: mirrors are orthogonal
//! complements of short roots inside the ball of negative lines. Two facts
//! drive everything here, both verified by exact scans rather than assumed:
//! mirrors that meet do so at right angles, and the 36 families of mirrors
//! indexed by projective norm-one classes mod theta are each pairwise
//! disjoint.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::eis::EisInt;
use crate::f3::{self, F3Vec};
use crate::lattice::{triflection, Frame, HermGram, Isometry, LatVec};
use crate::linalg::Sublattice;
use crate::mat::Mat;
use crate::Error;

/// A mirror: the orthogonal complement of a short root, identified by the
/// lexicographically least unit multiple of the root.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mirror {
    pub root: LatVec,
}

impl Mirror {
    pub fn new(root: &LatVec, gram: &HermGram) -> Result<Mirror, Error> {
        if gram.norm(root)? != BigInt::one() {
            return Err(Error::Invalid("mirror roots must have norm one".into()));
        }
        Ok(Mirror {
            root: root.unit_normal_form(),
        })
    }
}

/// The two intersection tests for a pair of distinct mirrors, run
/// independently: positive definiteness of the 2x2 gram of the roots (the
/// geometric criterion for the mirrors to meet), and vanishing of the inner
/// product.
pub fn intersection_tests(
    m: &Mirror,
    m2: &Mirror,
    gram: &HermGram,
) -> Result<(bool, bool), Error> {
    if m == m2 {
        return Err(Error::Invalid("mirrors must be distinct".into()));
    }
    let h = gram.inner(&m.root, &m2.root)?;
    // [[1, h],[conj h, 1]] is positive definite iff 1 - norm(h) > 0
    let pd = (BigInt::one() - h.norm()).is_positive();
    Ok((pd, h.is_zero()))
}

/// True when the two mirrors meet inside the ball: for distinct short-root
/// mirrors in signature (4,1) this happens exactly when the roots span a
/// positive definite plane.
pub fn mirrors_intersect(m: &Mirror, m2: &Mirror, gram: &HermGram) -> Result<bool, Error> {
    Ok(intersection_tests(m, m2, gram)?.0)
}

/// The family label of a mirror: the projective class mod theta of its root.
pub fn family_of(m: &Mirror) -> Result<F3Vec, Error> {
    let r = f3::reduce_vector(&m.root)?;
    Ok(f3::projective_class_of(&r))
}

/// All short roots of the diag5 lattice whose negative coordinate has ring
/// norm at most `bound`: finitely many, since the positive part then has
/// norm 1 + norm(v0).
pub fn short_roots_with_bound(bound: i64) -> Result<Vec<LatVec>, Error> {
    let gram = HermGram::diag5();
    let e4 = Sublattice::full(HermGram::new(Frame::Free(4), Mat::identity(4))?);
    let mut out = Vec::new();
    let reach = 2 * (bound as f64).sqrt() as i64 + 2;
    // group the negative coordinates by norm, then enumerate the positive part
    let mut by_norm: BTreeMap<i64, Vec<EisInt>> = BTreeMap::new();
    for a in -reach..=reach {
        for b in -reach..=reach {
            let x = EisInt::new(a, b);
            if let Ok(n) = i64::try_from(x.norm()) {
                if n <= bound {
                    by_norm.entry(n).or_default().push(x);
                }
            }
        }
    }
    for (n, zeros) in by_norm {
        let target = BigInt::from(n + 1);
        let positives = e4.enumerate_norm(&target)?;
        for v0 in &zeros {
            for p in &positives {
                let mut coords = vec![v0.clone()];
                coords.extend(p.coords.iter().cloned());
                let v = LatVec::new(Frame::Diag5, coords);
                debug_assert_eq!(gram.norm(&v).unwrap(), BigInt::one());
                out.push(v);
            }
        }
    }
    out.sort_by(|a, b| a.coords.cmp(&b.coords));
    Ok(out)
}

/// Deduplicated mirrors from a root list.
pub fn mirrors_from_roots(roots: &[LatVec], gram: &HermGram) -> Result<Vec<Mirror>, Error> {
    let mut mirrors: Vec<Mirror> = roots
        .iter()
        .map(|r| Mirror::new(r, gram))
        .collect::<Result<_, _>>()?;
    mirrors.sort_by(|a, b| a.root.coords.cmp(&b.root.coords));
    mirrors.dedup();
    Ok(mirrors)
}

/// Result of the exhaustive pair scans up to a bound.
#[derive(Clone, Debug)]
pub struct ScanReport {
    pub bound: i64,
    pub roots: usize,
    pub mirrors: usize,
    pub pairs: usize,
    /// pairs where the two intersection tests disagree (meeting mirrors that
    /// are not orthogonal, or orthogonal mirrors that do not meet)
    pub orthogonality_violations: usize,
    /// same-family distinct pairs whose inner product vanishes mod theta
    pub family_violations: usize,
    /// up to eight concrete violating pairs, as coordinate strings
    pub violation_examples: Vec<(String, String)>,
    /// distinct family labels seen, with the count per label
    pub family_census: BTreeMap<String, usize>,
}

/// Scan every mirror pair within the bound: intersecting pairs must be
/// orthogonal, and same-family distinct pairs must have inner product
/// nonzero mod theta (hence be disjoint). Pairs run through a machine-word
/// fast path when the coordinates fit; the fast inner product matches the
/// exact one by construction of the multiplication formula and is spot
/// checked against it.
pub fn scan(bound: i64) -> Result<ScanReport, Error> {
    let gram = HermGram::diag5();
    let roots = short_roots_with_bound(bound)?;
    let mirrors = mirrors_from_roots(&roots, &gram)?;
    let labels: Vec<F3Vec> = mirrors.iter().map(family_of).collect::<Result<_, _>>()?;
    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    for l in &labels {
        *census.entry(label_string(l)).or_insert(0) += 1;
    }
    // machine-word coordinates; the bounded enumeration keeps them tiny
    let small: Option<Vec<[(i64, i64); 5]>> = mirrors
        .iter()
        .map(|m| {
            let mut out = [(0i64, 0i64); 5];
            for (slot, c) in out.iter_mut().zip(&m.root.coords) {
                let a = i64::try_from(c.a.clone()).ok()?;
                let b = i64::try_from(c.b.clone()).ok()?;
                if a.abs() > 1 << 20 || b.abs() > 1 << 20 {
                    return None;
                }
                *slot = (a, b);
            }
            Some(out)
        })
        .collect();
    let mut pairs = 0usize;
    let mut orthogonality_violations = 0usize;
    let mut family_violations = 0usize;
    let mut violation_examples: Vec<(String, String)> = Vec::new();
    let note = |a: &Mirror, b: &Mirror, examples: &mut Vec<(String, String)>| {
        if examples.len() < 8 {
            examples.push((format!("{:?}", a.root.coords), format!("{:?}", b.root.coords)));
        }
    };
    match small {
        Some(vs) => {
            // spot check the fast inner product against the exact one
            for i in 0..vs.len().min(40) {
                let j = (i * 7 + 1) % vs.len();
                if i == j {
                    continue;
                }
                let (a, b) = inner_i64(&vs[i], &vs[j]);
                let h = gram.inner(&mirrors[i].root, &mirrors[j].root)?;
                if h != EisInt::new(a, b) {
                    return Err(Error::Invalid("fast inner product mismatch".into()));
                }
            }
            for i in 0..vs.len() {
                for j in i + 1..vs.len() {
                    pairs += 1;
                    let (a, b) = inner_i64(&vs[i], &vs[j]);
                    let norm = a * a - a * b + b * b;
                    let pd = norm < 1;
                    let orth = a == 0 && b == 0;
                    if pd != orth {
                        orthogonality_violations += 1;
                        note(&mirrors[i], &mirrors[j], &mut violation_examples);
                    }
                    if labels[i] == labels[j] && (a + b).rem_euclid(3) == 0 {
                        family_violations += 1;
                        note(&mirrors[i], &mirrors[j], &mut violation_examples);
                    }
                }
            }
        }
        None => {
            for i in 0..mirrors.len() {
                for j in i + 1..mirrors.len() {
                    pairs += 1;
                    let h = gram.inner(&mirrors[i].root, &mirrors[j].root)?;
                    let pd = (BigInt::one() - h.norm()).is_positive();
                    let orth = h.is_zero();
                    if pd != orth {
                        orthogonality_violations += 1;
                        note(&mirrors[i], &mirrors[j], &mut violation_examples);
                    }
                    if labels[i] == labels[j] && h.mod_theta().is_zero() {
                        family_violations += 1;
                        note(&mirrors[i], &mirrors[j], &mut violation_examples);
                    }
                }
            }
        }
    }
    Ok(ScanReport {
        bound,
        roots: roots.len(),
        mirrors: mirrors.len(),
        pairs,
        orthogonality_violations,
        family_violations,
        violation_examples,
        family_census: census,
    })
}

/// h(v, w) = -v0 conj(w0) + sum v_i conj(w_i) over machine words, with
/// x conj(y) = (ac - ad + bd, bc - ad) for x = (a,b), y = (c,d).
fn inner_i64(v: &[(i64, i64); 5], w: &[(i64, i64); 5]) -> (i64, i64) {
    let mut re = 0i64;
    let mut im = 0i64;
    for i in 0..5 {
        let (a, b) = v[i];
        let (c, d) = w[i];
        let pr = a * c - a * d + b * d;
        let pi = b * c - a * d;
        if i == 0 {
            re -= pr;
            im -= pi;
        } else {
            re += pr;
            im += pi;
        }
    }
    (re, im)
}

pub fn label_string(l: &F3Vec) -> String {
    l.iter().map(|d| d.to_string()).collect()
}

/// The stabilizer of a point on a k-fold intersection stratum inside the
/// mod-theta congruence subgroup: the group generated by the k triflections
/// in the orthogonal short roots cutting the stratum.
#[derive(Clone, Debug)]
pub struct StabilizerReport {
    pub k: usize,
    pub order: usize,
    /// every element has order 1 or 3
    pub element_orders_ok: bool,
    /// every element reduces to the identity mod theta
    pub congruence_ok: bool,
}

pub fn stratum_stabilizer(roots: &[LatVec], gram: &HermGram) -> Result<StabilizerReport, Error> {
    if roots.len() > 4 {
        return Err(Error::Invalid("at most four orthogonal short roots".into()));
    }
    for (i, a) in roots.iter().enumerate() {
        if gram.norm(a)? != BigInt::one() {
            return Err(Error::Invalid("stratum roots must have norm one".into()));
        }
        for b in roots.iter().skip(i + 1) {
            if !gram.inner(a, b)?.is_zero() {
                return Err(Error::NotOrthogonal);
            }
        }
    }
    let tris: Vec<Isometry> = roots
        .iter()
        .map(|r| triflection(r, gram))
        .collect::<Result<_, _>>()?;
    let q = f3::F3Quadratic::from_gram(gram)?;
    // the group is abelian of exponent 3: enumerate exponent tuples
    let k = roots.len();
    let mut elements: Vec<Mat> = Vec::new();
    let mut exps = vec![0u8; k];
    loop {
        let mut m = Mat::identity(gram.dim());
        for (t, &e) in tris.iter().zip(exps.iter()) {
            for _ in 0..e {
                m = m.mul(&t.mat);
            }
        }
        elements.push(m);
        let mut pos = 0;
        loop {
            if pos == k {
                let total = elements.len();
                let mut distinct = elements.clone();
                distinct.sort_by(|a, b| format!("{a:?}").cmp(&format!("{b:?}")));
                distinct.dedup();
                let element_orders_ok = elements
                    .iter()
                    .all(|m| m.is_identity() || m.mul(m).mul(m).is_identity());
                let congruence_ok = elements.iter().all(|m| {
                    let iso = Isometry {
                        frame: gram.frame,
                        mat: m.clone(),
                    };
                    f3::reduce_isometry(&iso, &q)
                        .map(|g| g.is_identity())
                        .unwrap_or(false)
                });
                return Ok(StabilizerReport {
                    k,
                    order: distinct.len().min(total),
                    element_orders_ok,
                    congruence_ok,
                });
            }
            exps[pos] += 1;
            if exps[pos] < 3 {
                break;
            }
            exps[pos] = 0;
            pos += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mirror_normalization() {
        let g = HermGram::diag5();
        let e1 = LatVec::basis(Frame::Diag5, 5, 1);
        let m1 = Mirror::new(&e1, &g).unwrap();
        let m2 = Mirror::new(&e1.scale(&EisInt::omega()), &g).unwrap();
        assert_eq!(m1, m2);
        // long roots are rejected
        let long = LatVec::from_i64(Frame::Diag5, &[(0, 0), (1, 0), (-1, 0), (0, 0), (0, 0)]);
        assert!(Mirror::new(&long, &g).is_err());
    }

    #[test]
    fn orthogonal_basis_mirrors_intersect() {
        let g = HermGram::diag5();
        let m1 = Mirror::new(&LatVec::basis(Frame::Diag5, 5, 1), &g).unwrap();
        let m2 = Mirror::new(&LatVec::basis(Frame::Diag5, 5, 2), &g).unwrap();
        assert!(mirrors_intersect(&m1, &m2, &g).unwrap());
        assert!(matches!(
            mirrors_intersect(&m1, &m1, &g),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn inner_product_one_means_disjoint() {
        let g = HermGram::diag5();
        let v = LatVec::basis(Frame::Diag5, 5, 1);
        // (1,1,1,0,0) has norm -1+1+1 = 1 and h(e1, .) = 1
        let w = LatVec::from_i64(Frame::Diag5, &[(1, 0), (1, 0), (1, 0), (0, 0), (0, 0)]);
        assert_eq!(g.norm(&w).unwrap(), BigInt::one());
        let m1 = Mirror::new(&v, &g).unwrap();
        let m2 = Mirror::new(&w, &g).unwrap();
        let (pd, orth) = intersection_tests(&m1, &m2, &g).unwrap();
        assert!(!pd);
        assert!(!orth);
    }

    #[test]
    fn families_are_unit_and_theta_invariant() {
        let g = HermGram::diag5();
        let e1 = LatVec::basis(Frame::Diag5, 5, 1);
        let m = Mirror::new(&e1, &g).unwrap();
        let mu = Mirror::new(&e1.scale(&EisInt::omega()), &g).unwrap();
        assert_eq!(family_of(&m).unwrap(), family_of(&mu).unwrap());
        // e1 and e2 land in different families
        let m2 = Mirror::new(&LatVec::basis(Frame::Diag5, 5, 2), &g).unwrap();
        assert_ne!(family_of(&m).unwrap(), family_of(&m2).unwrap());
        // h(v, v + theta w) = 1 mod theta
        let shift = LatVec::from_i64(Frame::Diag5, &[(0, 0), (1, 2), (0, 0), (0, 0), (0, 0)]);
        let v2 = e1.add(&shift.scale(&EisInt::theta()));
        let h = g.inner(&e1, &v2).unwrap();
        assert_eq!(h.mod_theta().0, 1);
    }

    #[test]
    fn family_labels_are_group_equivariant() {
        // the label of g(v) is the reduced g applied to the label of v
        use crate::f3;
        use crate::gamma::{GenSet, Word};
        use crate::lattice::base_change_hyp_to_diag;
        let g = HermGram::diag5();
        let q = f3::F3Quadratic::from_gram(&g).unwrap();
        let gens = GenSet::standard();
        let m = base_change_hyp_to_diag();
        let minv = m.inverse_unimodular();
        let roots = short_roots_with_bound(0).unwrap();
        for name in 1..=7u8 {
            let word = Word::from_tokens(&[(name, 1)]);
            let gd = m.mul(&word.evaluate(&gens)).mul(&minv);
            let iso = crate::lattice::Isometry::new(&g, gd).unwrap();
            let reduced = f3::reduce_isometry(&iso, &q).unwrap();
            for r in roots.iter().take(12) {
                let mir = Mirror::new(r, &g).unwrap();
                let lhs = family_of(&Mirror::new(&iso.apply(r), &g).unwrap()).unwrap();
                let rhs =
                    f3::projective_class_of(&reduced.apply(&family_of(&mir).unwrap()));
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn bounded_enumeration_counts() {
        let roots = short_roots_with_bound(0).unwrap();
        // norm-one vectors of the positive-definite part: 4 slots x 6 units
        assert_eq!(roots.len(), 24);
        let roots = short_roots_with_bound(1).unwrap();
        assert_eq!(roots.len(), 24 + 6 * 216);
    }

    #[test]
    fn scan_small_bound_no_violations() {
        let report = scan(1).unwrap();
        assert!(report.roots >= 1000);
        assert_eq!(report.orthogonality_violations, 0);
        assert_eq!(report.family_violations, 0);
        // at this small bound only part of the 36 families is visible
        assert_eq!(report.family_census.len(), 28);
    }

    #[test]
    fn scan_default_bound_hits_all_families() {
        let report = scan(3).unwrap();
        assert!(report.roots >= 10_000);
        assert_eq!(report.orthogonality_violations, 0);
        assert_eq!(report.family_violations, 0);
        assert_eq!(report.family_census.len(), 36);
    }

    #[test]
    fn stabilizer_orders() {
        let g = HermGram::diag5();
        let roots: Vec<LatVec> = (1..=4).map(|i| LatVec::basis(Frame::Diag5, 5, i)).collect();
        for k in 0..=4usize {
            let r = stratum_stabilizer(&roots[..k], &g).unwrap();
            assert_eq!(r.order, 3usize.pow(k as u32));
            assert!(r.element_orders_ok);
            assert!(r.congruence_ok);
        }
    }

    #[test]
    fn stabilizer_rejects_non_orthogonal() {
        let g = HermGram::diag5();
        let a = LatVec::basis(Frame::Diag5, 5, 1);
        let b = LatVec::from_i64(Frame::Diag5, &[(1, 0), (1, 0), (1, 0), (0, 0), (0, 0)]);
        assert!(matches!(
            stratum_stabilizer(&[a, b], &g),
            Err(Error::NotOrthogonal)
        ));
    }
}
