//! Polytope symmetries `(T, P)` with `T·A = A·P`, and the finite groups they form.
//!
//! Permutations are stored 0-based as `perm[j] = k` meaning column `j` of `A·P` is `a_k`,
//! i.e. `P[k][j] = 1`.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use thiserror::Error;

use crate::configs::{vertex_columns, ConfigError, IntMatrix, PointConfiguration};

pub const MAX_SYMMETRY_COLUMNS: usize = 14;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetryError {
    #[error("symmetries belong to different configurations")]
    ConfigMismatch,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("configuration has {n} columns; the limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("configuration has repeated columns {0} and {1}")]
    RepeatedColumns(usize, usize),
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("group certification failed: {0}")]
    NotAGroup(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolytopeSymmetry {
    perm: Vec<usize>,
    t: IntMatrix,
    det: i64,
}

impl PolytopeSymmetry {
    pub fn identity(d: usize, n: usize) -> Self {
        PolytopeSymmetry { perm: (0..n).collect(), t: IntMatrix::identity(d), det: 1 }
    }

    pub fn t(&self) -> &IntMatrix {
        &self.t
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn perm_one_based(&self) -> Vec<usize> {
        self.perm.iter().map(|&k| k + 1).collect()
    }

    /// `det T ∈ {±1}`.
    pub fn det_sign(&self) -> i64 {
        self.det
    }

    pub fn d(&self) -> usize {
        self.t.nrows()
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    /// The permutation matrix `P` with `P[perm[j]][j] = 1`.
    pub fn permutation_matrix(&self) -> IntMatrix {
        IntMatrix::permutation(&self.perm)
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(j, &k)| j == k) && self.t == IntMatrix::identity(self.d())
    }

    /// Smallest `k ≥ 1` with `s^k = id`.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut power = self.clone();
        while !power.is_identity() {
            power = compose(self, &power).expect("same dimensions");
            k += 1;
        }
        k
    }
}

/// `T = (A·P)_B · A_B^{-1}` on the lexicographically first column basis `B`; `Some` iff
/// `T` is integral, unimodular and `T·A = A·P` on every column.
pub fn solve_t_for_permutation(config: &PointConfiguration, perm: &[usize]) -> Option<PolytopeSymmetry> {
    if !is_permutation(perm, config.n()) {
        return None;
    }
    let basis = config.column_basis();
    let images: Vec<usize> = basis.iter().map(|&b| perm[b]).collect();
    let t = solve_t_on_basis(config.matrix(), &basis, &images)?;
    let det = t.det();
    if det.abs() != 1 {
        return None;
    }
    let p = IntMatrix::permutation(perm);
    let ta = t.mul(config.matrix()).ok()?;
    let ap = config.matrix().mul(&p).ok()?;
    (ta == ap).then(|| PolytopeSymmetry { perm: perm.to_vec(), t, det })
}

/// Integer `T` with `T·a_{basis[k]} = a_{images[k]}`, if one exists.
fn solve_t_on_basis(a: &IntMatrix, basis: &[usize], images: &[usize]) -> Option<IntMatrix> {
    let ab = a.select_cols(basis);
    let det = ab.det();
    if det == 0 {
        return None;
    }
    let scaled = a.select_cols(images).mul(&ab.adjugate()).ok()?;
    let d = a.nrows();
    let mut t = IntMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            let x = scaled[(i, j)];
            if x % det != 0 {
                return None;
            }
            t[(i, j)] = x / det;
        }
    }
    Some(t)
}

fn is_permutation(perm: &[usize], n: usize) -> bool {
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    perm.iter().all(|&k| k < n && !std::mem::replace(&mut seen[k], true))
}

/// `(T₁T₂, π₁∘π₂)`: applying the composite to `(β, x)` equals applying `s2` and then `s1`.
pub fn compose(s1: &PolytopeSymmetry, s2: &PolytopeSymmetry) -> Result<PolytopeSymmetry, SymmetryError> {
    if s1.d() != s2.d() || s1.n() != s2.n() {
        return Err(SymmetryError::ConfigMismatch);
    }
    let t = s1.t.mul(&s2.t)?;
    let perm = s2.perm.iter().map(|&k| s1.perm[k]).collect();
    Ok(PolytopeSymmetry { perm, t, det: s1.det * s2.det })
}

pub fn inverse(s: &PolytopeSymmetry) -> PolytopeSymmetry {
    let t = s.t.unimodular_inverse().expect("symmetries are unimodular");
    let mut perm = vec![0; s.n()];
    for (j, &k) in s.perm.iter().enumerate() {
        perm[k] = j;
    }
    PolytopeSymmetry { perm, t, det: s.det }
}

/// Exact check of `T·A = A·P` and `|det T| = 1`. `P` must be a permutation matrix for a
/// `true` answer.
pub fn verify_symmetry(config: &PointConfiguration, t: &IntMatrix, p: &IntMatrix) -> Result<bool, SymmetryError> {
    let (d, n) = (config.d(), config.n());
    if t.nrows() != d || t.ncols() != d {
        return Err(SymmetryError::DimensionMismatch { expected: d, found: t.nrows().max(t.ncols()) });
    }
    if p.nrows() != n || p.ncols() != n {
        return Err(SymmetryError::DimensionMismatch { expected: n, found: p.nrows().max(p.ncols()) });
    }
    if permutation_from_matrix(p).is_none() || t.det().abs() != 1 {
        return Ok(false);
    }
    Ok(t.mul(config.matrix())? == config.matrix().mul(p)?)
}

/// Reads `perm` off a permutation matrix (`P[perm[j]][j] = 1`).
pub fn permutation_from_matrix(p: &IntMatrix) -> Option<Vec<usize>> {
    let n = p.ncols();
    if p.nrows() != n {
        return None;
    }
    let mut perm = Vec::with_capacity(n);
    for j in 0..n {
        let col = p.col(j);
        if col.iter().any(|&x| x != 0 && x != 1) || col.iter().sum::<i64>() != 1 {
            return None;
        }
        perm.push(col.iter().position(|&x| x == 1)?);
    }
    is_permutation(&perm, n).then_some(perm)
}

/// Builds a symmetry from an explicit pair, checking it.
pub fn symmetry_from_matrices(
    config: &PointConfiguration,
    t: &IntMatrix,
    p: &IntMatrix,
) -> Result<Option<PolytopeSymmetry>, SymmetryError> {
    if !verify_symmetry(config, t, p)? {
        return Ok(None);
    }
    let perm = permutation_from_matrix(p).expect("checked");
    Ok(Some(PolytopeSymmetry { perm, t: t.clone(), det: t.det() }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryGroup {
    elements: Vec<PolytopeSymmetry>,
    generators: Vec<PolytopeSymmetry>,
}

impl SymmetryGroup {
    /// Sorts the elements, picks generators greedily and certifies the group axioms.
    pub fn from_elements(mut elements: Vec<PolytopeSymmetry>) -> Result<Self, SymmetryError> {
        elements.sort();
        elements.dedup();
        let generators = greedy_generators(&elements);
        let group = SymmetryGroup { elements, generators };
        group.certify()?;
        Ok(group)
    }

    pub fn elements(&self) -> &[PolytopeSymmetry] {
        &self.elements
    }

    pub fn generators(&self) -> &[PolytopeSymmetry] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, s: &PolytopeSymmetry) -> bool {
        self.elements.binary_search(s).is_ok()
    }

    /// Identity, closure under composition, inverses; exact.
    pub fn certify(&self) -> Result<(), SymmetryError> {
        let Some(first) = self.elements.first() else {
            return Err(SymmetryError::NotAGroup("empty".into()));
        };
        if !self.contains(&PolytopeSymmetry::identity(first.d(), first.n())) {
            return Err(SymmetryError::NotAGroup("identity missing".into()));
        }
        for s in &self.elements {
            if !self.contains(&inverse(s)) {
                return Err(SymmetryError::NotAGroup(format!("inverse of {:?} missing", s.perm)));
            }
        }
        let closed = self
            .elements
            .par_iter()
            .all(|s1| self.elements.iter().all(|s2| compose(s1, s2).map(|c| self.contains(&c)).unwrap_or(false)));
        if !closed {
            return Err(SymmetryError::NotAGroup("not closed under composition".into()));
        }
        Ok(())
    }
}

/// All elements generated by `generators`, sorted.
pub fn generated_subgroup(generators: &[PolytopeSymmetry]) -> Vec<PolytopeSymmetry> {
    let Some(g0) = generators.first() else {
        return Vec::new();
    };
    let id = PolytopeSymmetry::identity(g0.d(), g0.n());
    let mut seen: BTreeSet<PolytopeSymmetry> = BTreeSet::from([id.clone()]);
    let mut frontier = vec![id];
    while let Some(s) = frontier.pop() {
        for g in generators {
            let next = compose(g, &s).expect("same dimensions");
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

fn greedy_generators(elements: &[PolytopeSymmetry]) -> Vec<PolytopeSymmetry> {
    let mut generators: Vec<PolytopeSymmetry> = Vec::new();
    let mut span: BTreeSet<PolytopeSymmetry> = BTreeSet::new();
    for s in elements {
        if s.is_identity() || span.contains(s) {
            continue;
        }
        generators.push(s.clone());
        span = generated_subgroup(&generators).into_iter().collect();
        if span.len() == elements.len() {
            break;
        }
    }
    generators
}

/// Complete enumeration of the symmetries of a configuration.
///
/// Backtracks over images of the column basis, keeping vertices on vertices, then solves
/// for `T` and reads the permutation off `T·A`.
pub fn find_symmetries(config: &PointConfiguration) -> Result<SymmetryGroup, SymmetryError> {
    let n = config.n();
    if n > MAX_SYMMETRY_COLUMNS {
        return Err(SymmetryError::TooLarge { n, limit: MAX_SYMMETRY_COLUMNS });
    }
    let a = config.matrix();
    let columns: Vec<Vec<i64>> = (0..n).map(|j| a.col(j)).collect();
    let mut index: HashMap<&[i64], usize> = HashMap::new();
    for (j, c) in columns.iter().enumerate() {
        if let Some(&k) = index.get(c.as_slice()) {
            return Err(SymmetryError::RepeatedColumns(k, j));
        }
        index.insert(c, j);
    }
    let vertex = vertex_columns(config)?;
    let basis = config.column_basis();

    let candidates = |b: usize| -> Vec<usize> { (0..n).filter(|&c| vertex[c] == vertex[b]).collect() };
    let first_level = candidates(basis[0]);
    let found: Vec<PolytopeSymmetry> = first_level
        .par_iter()
        .flat_map_iter(|&c0| {
            let mut out = Vec::new();
            let mut images = vec![c0];
            extend(config, &basis, &candidates, &index, &mut images, &mut out);
            out
        })
        .collect();
    SymmetryGroup::from_elements(found)
}

fn extend(
    config: &PointConfiguration,
    basis: &[usize],
    candidates: &dyn Fn(usize) -> Vec<usize>,
    index: &HashMap<&[i64], usize>,
    images: &mut Vec<usize>,
    out: &mut Vec<PolytopeSymmetry>,
) {
    if images.len() == basis.len() {
        if let Some(s) = complete(config, basis, images, index) {
            out.push(s);
        }
        return;
    }
    for c in candidates(basis[images.len()]) {
        if images.contains(&c) {
            continue;
        }
        images.push(c);
        extend(config, basis, candidates, index, images, out);
        images.pop();
    }
}

fn complete(
    config: &PointConfiguration,
    basis: &[usize],
    images: &[usize],
    index: &HashMap<&[i64], usize>,
) -> Option<PolytopeSymmetry> {
    let a = config.matrix();
    let t = solve_t_on_basis(a, basis, images)?;
    let det = t.det();
    if det.abs() != 1 {
        return None;
    }
    let ta = t.mul(a).ok()?;
    let perm = (0..config.n()).map(|j| index.get(ta.col(j).as_slice()).copied()).collect::<Option<Vec<_>>>()?;
    is_permutation(&perm, config.n()).then_some(PolytopeSymmetry { perm, t, det })
}

/// The two standard generator families for the Lauricella `F_C^{(m)}` configuration:
/// simultaneous permutations of the two simplices (adjacent transpositions suffice), and
/// the swap of the `k`-th vertex of one simplex with the `k`-th vertex of the other.
pub fn lauricella_fc_generators(m: usize) -> Vec<PolytopeSymmetry> {
    let d = m + 2;
    let n = 2 * m + 2;
    let mut gens = Vec::new();
    for i in 0..m.saturating_sub(1) {
        let mut t = IntMatrix::identity(d);
        t.swap_rows(2 + i, 3 + i);
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(1 + i, 2 + i);
        perm.swap(m + 2 + i, m + 3 + i);
        gens.push(PolytopeSymmetry { perm, det: t.det(), t });
    }
    for k in 0..m {
        let mut t = IntMatrix::identity(d);
        t[(1, 2 + k)] = -1;
        t[(2 + k, 2 + k)] = -1;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.swap(1 + k, m + 2 + k);
        gens.push(PolytopeSymmetry { perm, det: t.det(), t });
    }
    gens
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configs::{catalog, validate_configuration};

    fn square() -> PointConfiguration {
        catalog("square").unwrap().config
    }

    fn t1() -> IntMatrix {
        IntMatrix::from_rows(&[[1, 0, 0], [0, 0, 1], [0, 1, 0]]).unwrap()
    }

    fn t2() -> IntMatrix {
        IntMatrix::from_rows(&[[1, 0, 0], [1, -1, 0], [0, 0, 1]]).unwrap()
    }

    /// Oracle: every permutation of `0..n`, filtered through `solve_t_for_permutation`.
    fn brute_force(config: &PointConfiguration) -> Vec<PolytopeSymmetry> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let mut v: Vec<_> = perms(config.n()).iter().filter_map(|p| solve_t_for_permutation(config, p)).collect();
        v.sort();
        v
    }

    #[test]
    fn square_reference_pairs() {
        let c = square();
        let s1 = solve_t_for_permutation(&c, &[0, 2, 1, 3]).unwrap();
        assert_eq!(s1.t(), &t1());
        let s2 = solve_t_for_permutation(&c, &[2, 3, 0, 1]).unwrap();
        assert_eq!(s2.t(), &t2());
        assert_eq!(s2.det_sign(), -1);
        assert_eq!(
            s2.permutation_matrix().to_rows(),
            vec![vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![1, 0, 0, 0], vec![0, 1, 0, 0]]
        );
    }

    #[test]
    fn quadric_reversal() {
        let c = catalog("quadric").unwrap().config;
        let s = solve_t_for_permutation(&c, &[2, 1, 0]).unwrap();
        assert_eq!(s.t().to_rows(), vec![vec![1, 0], vec![2, -1]]);
        assert!(solve_t_for_permutation(&c, &[1, 0, 2]).is_none());
    }

    #[test]
    fn composition_orders() {
        let c = square();
        let s1 = solve_t_for_permutation(&c, &[0, 2, 1, 3]).unwrap();
        let s2 = solve_t_for_permutation(&c, &[2, 3, 0, 1]).unwrap();
        let id = PolytopeSymmetry::identity(3, 4);
        assert_eq!(compose(&s1, &id).unwrap(), s1);
        assert!(compose(&s2, &s2).unwrap().is_identity());
        assert_eq!(compose(&s1, &s2).unwrap().order(), 4);
        assert_eq!(inverse(&s2), s2);
        assert!(compose(&s1, &inverse(&s1)).unwrap().is_identity());
    }

    #[test]
    fn composite_matches_matrix_products() {
        let c = square();
        let s1 = solve_t_for_permutation(&c, &[0, 2, 1, 3]).unwrap();
        let s2 = solve_t_for_permutation(&c, &[2, 3, 0, 1]).unwrap();
        let s = compose(&s1, &s2).unwrap();
        let p = s1.permutation_matrix().mul(&s2.permutation_matrix()).unwrap();
        assert_eq!(s.permutation_matrix(), p);
        assert!(verify_symmetry(&c, s.t(), &p).unwrap());
    }

    #[test]
    fn square_group_matches_brute_force() {
        let c = square();
        let g = find_symmetries(&c).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.elements(), brute_force(&c).as_slice());
        assert_eq!(generated_subgroup(g.generators()), g.elements());
    }

    #[test]
    fn identity_configuration() {
        let c = validate_configuration(&IntMatrix::identity(3)).unwrap();
        let g = find_symmetries(&c).unwrap();
        assert_eq!(g.order(), 6);
        for s in g.elements() {
            assert_eq!(s.t(), &s.permutation_matrix());
        }
        assert_eq!(g.elements(), brute_force(&c).as_slice());
    }

    #[test]
    fn fc2_group_and_families() {
        let c = catalog("lauricella_fc(2)").unwrap().config;
        let g = find_symmetries(&c).unwrap();
        assert_eq!(g.elements(), brute_force(&c).as_slice());
        // conv(A) is an octahedron; every combinatorial symmetry is realized
        assert_eq!(g.order(), 48);
        let sub = generated_subgroup(&lauricella_fc_generators(2));
        assert_eq!(sub.len(), 8);
        assert!(sub.iter().all(|s| g.contains(s)));
    }

    #[test]
    fn fc3_contains_reference_families() {
        let c = catalog("lauricella_fc(3)").unwrap().config;
        let g = find_symmetries(&c).unwrap();
        let sub = generated_subgroup(&lauricella_fc_generators(3));
        assert_eq!(sub.len(), 48);
        assert!(sub.iter().all(|s| g.contains(s)));
        assert_eq!(g.order(), 384);
    }

    #[test]
    fn reference_f4_pair() {
        let c = catalog("appell_f4").unwrap().config;
        let t = IntMatrix::from_rows(&[[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [-1, 2, -1, -1]]).unwrap();
        let s = solve_t_for_permutation(&c, &[2, 1, 0, 5, 4, 3]).unwrap();
        assert_eq!(s.t(), &t);
        assert!(verify_symmetry(&c, &t, &s.permutation_matrix()).unwrap());
        assert_eq!(inverse(&s), s);
    }

    #[test]
    fn verify_rejects() {
        let c = catalog("quadric").unwrap().config;
        let swap = IntMatrix::permutation(&[1, 0, 2]);
        assert!(!verify_symmetry(&c, &IntMatrix::identity(2), &swap).unwrap());
        assert!(verify_symmetry(&c, &IntMatrix::identity(2), &IntMatrix::identity(3)).unwrap());
        assert!(verify_symmetry(&c, &IntMatrix::identity(3), &IntMatrix::identity(3)).is_err());
        let not_perm = IntMatrix::from_rows(&[[1, 1, 0], [0, 0, 0], [0, 0, 1]]).unwrap();
        assert!(!verify_symmetry(&c, &IntMatrix::identity(2), &not_perm).unwrap());
    }

    #[test]
    fn repeated_columns_rejected() {
        let c = validate_configuration(&IntMatrix::from_rows(&[[1, 1, 1], [0, 1, 1]]).unwrap()).unwrap();
        assert_eq!(find_symmetries(&c).unwrap_err(), SymmetryError::RepeatedColumns(1, 2));
    }
}
