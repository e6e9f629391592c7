//! Simplicial complexes, their degree-selected subcomplexes, and augmented
//! cochain complexes over the rationals.
//!
//! Faces are stored explicitly as bitsets; the intended working range is
//! small ambient dimension (the CLI guards sweeps at n <= 16). The complex
//! with no faces at all (VOID) is distinct from the irrelevant complex
//! `{{}}`: conflating them would silently shift every reduced cohomology
//! computation by one degree.

use std::collections::BTreeSet;
use std::fmt;

use crate::exponents::{position_sign, ExponentVector, IndexSet};
use crate::linalg::{rat, Rational, RationalMatrix};
use crate::{Error, Result};

/// A squarefree monomial ideal, stored by its minimal generators (supports
/// of squarefree monomials). No generators means the zero ideal; the single
/// generator `{}` means the unit ideal.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SquarefreeIdeal {
    n: usize,
    min_gens: Vec<IndexSet>,
}

impl SquarefreeIdeal {
    pub fn zero(n: usize) -> Self {
        SquarefreeIdeal {
            n,
            min_gens: Vec::new(),
        }
    }

    pub fn unit(n: usize) -> Self {
        SquarefreeIdeal {
            n,
            min_gens: vec![IndexSet::EMPTY],
        }
    }

    /// Builds the ideal generated by the given supports, keeping only the
    /// divisibility-minimal ones.
    pub fn from_generators<I: IntoIterator<Item = IndexSet>>(n: usize, gens: I) -> Self {
        let all: BTreeSet<IndexSet> = gens.into_iter().collect();
        let min_gens: Vec<IndexSet> = all
            .iter()
            .filter(|g| !all.iter().any(|h| h != *g && h.is_subset_of(**g)))
            .copied()
            .collect();
        SquarefreeIdeal { n, min_gens }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn min_gens(&self) -> &[IndexSet] {
        &self.min_gens
    }

    pub fn is_zero(&self) -> bool {
        self.min_gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.min_gens.first() == Some(&IndexSet::EMPTY)
    }

    /// Membership of the squarefree monomial with the given support; because
    /// the ideal is squarefree this also decides membership of any monomial
    /// with that support.
    pub fn contains(&self, support: IndexSet) -> bool {
        self.min_gens.iter().any(|g| g.is_subset_of(support))
    }

    /// Every squarefree monomial in the ideal, as supports, ascending.
    pub fn squarefree_members(&self) -> Vec<IndexSet> {
        IndexSet::full(self.n)
            .subsets()
            .into_iter()
            .filter(|s| self.contains(*s))
            .collect()
    }

    /// Ideal intersection via pairwise joins of generators.
    pub fn intersect(&self, other: &SquarefreeIdeal) -> SquarefreeIdeal {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        let gens = self
            .min_gens
            .iter()
            .flat_map(|a| other.min_gens.iter().map(move |b| a.union(*b)));
        SquarefreeIdeal::from_generators(self.n, gens)
    }
}

impl fmt::Display for SquarefreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.min_gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            if g.is_empty() {
                write!(f, "1")?;
            } else {
                for (j, t) in g.iter().enumerate() {
                    if j > 0 {
                        write!(f, "*")?;
                    }
                    write!(f, "x{t}")?;
                }
            }
        }
        write!(f, ")")
    }
}

/// The Stanley-Reisner complex of a squarefree ideal: faces are the supports
/// of squarefree monomials outside the ideal; the vertex set is all of `[n]`.
pub fn stanley_reisner(ideal: &SquarefreeIdeal) -> SimplicialComplex {
    let n = ideal.ambient_dim();
    let faces = IndexSet::full(n)
        .subsets()
        .into_iter()
        .filter(|s| !ideal.contains(*s));
    SimplicialComplex::from_faces_unchecked(IndexSet::full(n), faces)
}

/// A finite simplicial complex with an explicit vertex set (which may
/// contain vertices belonging to no face). An empty face family is the VOID
/// complex.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    vertex_set: IndexSet,
    faces: BTreeSet<IndexSet>,
}

impl SimplicialComplex {
    pub fn void(vertex_set: IndexSet) -> Self {
        SimplicialComplex {
            vertex_set,
            faces: BTreeSet::new(),
        }
    }

    /// The irrelevant complex `{{}}`.
    pub fn irrelevant(vertex_set: IndexSet) -> Self {
        SimplicialComplex {
            vertex_set,
            faces: [IndexSet::EMPTY].into(),
        }
    }

    pub fn full_simplex(vertex_set: IndexSet) -> Self {
        SimplicialComplex {
            vertex_set,
            faces: vertex_set.subsets().into_iter().collect(),
        }
    }

    /// Builds from faces known to be downward closed (internal).
    fn from_faces_unchecked<I: IntoIterator<Item = IndexSet>>(
        vertex_set: IndexSet,
        faces: I,
    ) -> Self {
        SimplicialComplex {
            vertex_set,
            faces: faces.into_iter().collect(),
        }
    }

    /// Builds from an arbitrary face family, validating downward closure and
    /// containment in the vertex set.
    pub fn from_faces<I: IntoIterator<Item = IndexSet>>(
        vertex_set: IndexSet,
        faces: I,
    ) -> Result<Self> {
        let faces: BTreeSet<IndexSet> = faces.into_iter().collect();
        for face in &faces {
            if !face.is_subset_of(vertex_set) {
                return Err(Error::Input(format!(
                    "face {face} is not within the vertex set {vertex_set}"
                )));
            }
            for t in face.iter() {
                if !faces.contains(&face.without(t)) {
                    return Err(Error::Input(format!(
                        "face family is not downward closed: {face} present but {} missing",
                        face.without(t)
                    )));
                }
            }
        }
        Ok(SimplicialComplex { vertex_set, faces })
    }

    /// Downward closure of the given facets.
    pub fn from_facets<I: IntoIterator<Item = IndexSet>>(vertex_set: IndexSet, facets: I) -> Self {
        let mut faces = BTreeSet::new();
        for facet in facets {
            assert!(facet.is_subset_of(vertex_set), "facet outside vertex set");
            for s in facet.subsets() {
                faces.insert(s);
            }
        }
        SimplicialComplex { vertex_set, faces }
    }

    pub fn is_void(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn vertex_set(&self) -> IndexSet {
        self.vertex_set
    }

    pub fn faces(&self) -> impl Iterator<Item = IndexSet> + '_ {
        self.faces.iter().copied()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn contains(&self, face: IndexSet) -> bool {
        self.faces.contains(&face)
    }

    /// Inclusion-maximal faces, ascending.
    pub fn facets(&self) -> Vec<IndexSet> {
        self.faces
            .iter()
            .filter(|f| !self.faces.iter().any(|g| g != *f && f.is_subset_of(*g)))
            .copied()
            .collect()
    }

    /// Cardinality of the largest face; `None` for VOID.
    pub fn max_face_size(&self) -> Option<usize> {
        self.faces.iter().map(|f| f.cardinality()).max()
    }

    /// The subcomplex selected by a degree `a`: VOID when `a` has a negative
    /// coordinate, otherwise the faces within `supp(a)` whose union with the
    /// support of `a - squarefree_part(a)` still lies in the complex.
    pub fn restrict_to_degree(&self, a: &ExponentVector) -> SimplicialComplex {
        if !a.is_nonnegative() {
            return SimplicialComplex::void(IndexSet::EMPTY);
        }
        let sigma = a.support();
        let doubled = a.sub(&a.squarefree_part()).support();
        let faces = sigma
            .subsets()
            .into_iter()
            .filter(|s| self.faces.contains(&s.union(doubled)));
        SimplicialComplex::from_faces_unchecked(sigma, faces)
    }

    /// The link-type selection driving local cohomology: faces disjoint from
    /// `supp(a-)` whose union with `supp(a)` lies in the complex. The vertex
    /// set is the ambient vertex set minus `supp(a-)`.
    pub fn link_type_complex(&self, a: &ExponentVector) -> SimplicialComplex {
        let neg = a.negative_part().support();
        let supp = a.support();
        let vertex_set = self.vertex_set.difference(neg);
        let faces = vertex_set
            .subsets()
            .into_iter()
            .filter(|t| self.faces.contains(&t.union(supp)));
        SimplicialComplex::from_faces_unchecked(vertex_set, faces)
    }

    /// Splits the vertices outside `face` into those extending it to a face
    /// and those that do not. Panics when `face` is not in the complex.
    pub fn partition_vertices(&self, face: IndexSet) -> (IndexSet, IndexSet) {
        assert!(self.contains(face), "{face} is not a face of the complex");
        let mut extending = IndexSet::EMPTY;
        let mut blocking = IndexSet::EMPTY;
        for t in self.vertex_set.difference(face).iter() {
            if self.contains(face.with(t)) {
                extending = extending.with(t);
            } else {
                blocking = blocking.with(t);
            }
        }
        (extending, blocking)
    }

    /// The augmented cochain complex, with the empty face in degree -1 and
    /// `d(tau*) = sum of sign(t, tau+t) (tau+t)*` over extending vertices.
    pub fn cochain_complex(&self) -> CochainComplex {
        if self.is_void() {
            return CochainComplex::zero();
        }
        let top = self.max_face_size().unwrap();
        let mut bases: Vec<Vec<BasisFace>> = Vec::with_capacity(top + 1);
        for size in 0..=top {
            bases.push(
                self.faces
                    .iter()
                    .filter(|f| f.cardinality() == size)
                    .map(|&face| BasisFace { summand: 0, face })
                    .collect(),
            );
        }
        let mut diffs = Vec::new();
        for k in 0..top {
            let source = &bases[k];
            let target = &bases[k + 1];
            let mut m = RationalMatrix::zeros(target.len(), source.len());
            for (c, b) in source.iter().enumerate() {
                let (extending, _) = self.partition_vertices(b.face);
                for t in extending.iter() {
                    let up = b.face.with(t);
                    let r = target
                        .iter()
                        .position(|x| x.face == up)
                        .expect("face closure");
                    m.set(r, c, rat(position_sign(t, up)));
                }
            }
            diffs.push(m);
        }
        CochainComplex::from_parts(-1, bases, diffs).expect("simplicial coboundary squares to zero")
    }

    /// Dimensions of the nonzero reduced cohomology groups by degree.
    pub fn reduced_cohomology_dims(&self) -> std::collections::BTreeMap<i64, usize> {
        self.cochain_complex().cohomology_dims()
    }
}

/// A cochain-complex basis element: a face tagged with the index of the
/// summand it came from (0 for plain single-complex cochains).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BasisFace {
    pub summand: usize,
    pub face: IndexSet,
}

/// A finite complex of rational vector spaces indexed by cohomological
/// degree, stored with an explicit offset so negative degrees are
/// first-class. Construction verifies that consecutive differentials
/// compose to zero.
#[derive(Clone, Debug)]
pub struct CochainComplex {
    min_degree: i64,
    bases: Vec<Vec<BasisFace>>,
    diffs: Vec<RationalMatrix>,
}

impl CochainComplex {
    /// The zero complex.
    pub fn zero() -> Self {
        CochainComplex {
            min_degree: 0,
            bases: Vec::new(),
            diffs: Vec::new(),
        }
    }

    pub fn from_parts(
        min_degree: i64,
        bases: Vec<Vec<BasisFace>>,
        diffs: Vec<RationalMatrix>,
    ) -> Result<Self> {
        if bases.is_empty() {
            return Ok(CochainComplex::zero());
        }
        if diffs.len() + 1 != bases.len() {
            return Err(Error::Internal(format!(
                "complex shape mismatch: {} spaces but {} differentials",
                bases.len(),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.cols() != bases[k].len() || d.rows() != bases[k + 1].len() {
                return Err(Error::Internal(format!(
                    "differential {k} has shape {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    bases[k + 1].len(),
                    bases[k].len()
                )));
            }
        }
        for k in 0..diffs.len().saturating_sub(1) {
            if !diffs[k + 1].mul(&diffs[k]).is_zero() {
                return Err(Error::Internal(format!(
                    "differential does not square to zero at degree {}",
                    min_degree + k as i64
                )));
            }
        }
        Ok(CochainComplex {
            min_degree,
            bases,
            diffs,
        })
    }

    pub fn is_zero_complex(&self) -> bool {
        self.bases.iter().all(Vec::is_empty)
    }

    pub fn degree_range(&self) -> Option<(i64, i64)> {
        if self.bases.is_empty() {
            None
        } else {
            Some((
                self.min_degree,
                self.min_degree + self.bases.len() as i64 - 1,
            ))
        }
    }

    fn offset(&self, degree: i64) -> Option<usize> {
        let k = degree.checked_sub(self.min_degree)?;
        if k < 0 || k as usize >= self.bases.len() {
            None
        } else {
            Some(k as usize)
        }
    }

    pub fn dim_at(&self, degree: i64) -> usize {
        self.offset(degree).map_or(0, |k| self.bases[k].len())
    }

    pub fn basis_at(&self, degree: i64) -> &[BasisFace] {
        self.offset(degree).map_or(&[], |k| &self.bases[k])
    }

    /// The matrix of the differential leaving the given degree, if nonzero
    /// spaces sit on both sides.
    pub fn differential(&self, degree: i64) -> Option<&RationalMatrix> {
        let k = self.offset(degree)?;
        self.diffs.get(k)
    }

    /// Nonzero space dimensions by degree.
    pub fn dims(&self) -> std::collections::BTreeMap<i64, usize> {
        let mut out = std::collections::BTreeMap::new();
        for (k, b) in self.bases.iter().enumerate() {
            if !b.is_empty() {
                out.insert(self.min_degree + k as i64, b.len());
            }
        }
        out
    }

    /// Nonzero cohomology dimensions by degree (kernel/image rank count).
    pub fn cohomology_dims(&self) -> std::collections::BTreeMap<i64, usize> {
        let mut out = std::collections::BTreeMap::new();
        let ranks: Vec<usize> = self.diffs.iter().map(crate::linalg::rank).collect();
        for (k, b) in self.bases.iter().enumerate() {
            let out_rank = ranks.get(k).copied().unwrap_or(0);
            let in_rank = if k == 0 {
                0
            } else {
                ranks.get(k - 1).copied().unwrap_or(0)
            };
            let dim = b.len() - out_rank - in_rank;
            if dim > 0 {
                out.insert(self.min_degree + k as i64, dim);
            }
        }
        out
    }

    /// Alternating sum of space dimensions.
    pub fn euler_characteristic_spaces(&self) -> i64 {
        self.bases
            .iter()
            .enumerate()
            .map(|(k, b)| {
                let t = self.min_degree + k as i64;
                let sign = if t.rem_euclid(2) == 0 { 1 } else { -1 };
                sign * b.len() as i64
            })
            .sum()
    }

    /// Alternating sum of cohomology dimensions.
    pub fn euler_characteristic_cohomology(&self) -> i64 {
        self.cohomology_dims()
            .iter()
            .map(|(&t, &d)| {
                if t.rem_euclid(2) == 0 {
                    d as i64
                } else {
                    -(d as i64)
                }
            })
            .sum()
    }

    /// Exact d-composed-with-d check over every consecutive pair; complexes
    /// built through `from_parts` always pass, this re-runs the product for
    /// verification harnesses.
    pub fn differentials_square_to_zero(&self) -> bool {
        (0..self.diffs.len().saturating_sub(1))
            .all(|k| self.diffs[k + 1].mul(&self.diffs[k]).is_zero())
    }
}

/// Assembles a direct-sum complex from labeled summands with prescribed
/// degree shifts and a block differential callback. Used by the Betti and
/// local-cohomology constructions, which share this layout: the summand `j`
/// face `tau` sits in assembled degree `|tau| - 1 + shift_j`, the diagonal
/// blocks restrict the summand coboundaries, and the callback supplies the
/// below-diagonal correction terms.
pub struct ComplexAssembler {
    pub summands: Vec<SimplicialComplex>,
    pub shifts: Vec<i64>,
}

impl ComplexAssembler {
    /// Builds the assembled complex. `block_terms(j, tau)` must return every
    /// differential term leaving basis element `(j, tau)` as
    /// `(target summand, target face, coefficient)` triples; targets must
    /// land one degree higher.
    pub fn assemble<F>(&self, mut block_terms: F) -> Result<CochainComplex>
    where
        F: FnMut(usize, IndexSet) -> Result<Vec<(usize, IndexSet, Rational)>>,
    {
        assert_eq!(self.summands.len(), self.shifts.len());
        let mut lo = i64::MAX;
        let mut hi = i64::MIN;
        for (cx, &shift) in self.summands.iter().zip(&self.shifts) {
            if cx.is_void() {
                continue;
            }
            lo = lo.min(-1 + shift);
            hi = hi.max(cx.max_face_size().unwrap() as i64 - 1 + shift);
        }
        if lo > hi {
            return Ok(CochainComplex::zero());
        }
        let width = (hi - lo + 1) as usize;
        let mut bases: Vec<Vec<BasisFace>> = vec![Vec::new(); width];
        for (j, (cx, &shift)) in self.summands.iter().zip(&self.shifts).enumerate() {
            for face in cx.faces() {
                let t = face.cardinality() as i64 - 1 + shift;
                bases[(t - lo) as usize].push(BasisFace {
                    summand: j + 1,
                    face,
                });
            }
        }
        let mut diffs = Vec::with_capacity(width.saturating_sub(1));
        for k in 0..width.saturating_sub(1) {
            let source = &bases[k];
            let target = &bases[k + 1];
            let mut m = RationalMatrix::zeros(target.len(), source.len());
            for (c, b) in source.iter().enumerate() {
                for (tj, tface, coeff) in block_terms(b.summand, b.face)? {
                    let r = target
                        .iter()
                        .position(|x| x.summand == tj && x.face == tface)
                        .ok_or_else(|| {
                            Error::Internal(format!(
                                "differential term from summand {} face {} targets summand {tj} face {tface} outside degree {}",
                                b.summand,
                                b.face,
                                lo + k as i64 + 1
                            ))
                        })?;
                    let v = m.get(r, c) + &coeff;
                    m.set(r, c, v);
                }
            }
            diffs.push(m);
        }
        CochainComplex::from_parts(lo, bases, diffs)
    }
}

/// Homological counterpart of `CochainComplex` for the oracle strands:
/// stage `p` maps down to stage `p-1`.
#[derive(Clone, Debug)]
pub struct ChainStages {
    pub dims: Vec<usize>,
    /// `boundaries[p]` maps stage `p+1` to stage `p`.
    pub boundaries: Vec<RationalMatrix>,
}

impl ChainStages {
    pub fn new(dims: Vec<usize>, boundaries: Vec<RationalMatrix>) -> Result<Self> {
        if !dims.is_empty() && boundaries.len() + 1 != dims.len() {
            return Err(Error::Internal(format!(
                "stage shape mismatch: {} stages, {} boundary maps",
                dims.len(),
                boundaries.len()
            )));
        }
        for (p, b) in boundaries.iter().enumerate() {
            if b.rows() != dims[p] || b.cols() != dims[p + 1] {
                return Err(Error::Internal(format!(
                    "boundary {p} has shape {}x{}, expected {}x{}",
                    b.rows(),
                    b.cols(),
                    dims[p],
                    dims[p + 1]
                )));
            }
        }
        for p in 0..boundaries.len().saturating_sub(1) {
            if !boundaries[p].mul(&boundaries[p + 1]).is_zero() {
                return Err(Error::Internal(format!(
                    "boundary does not square to zero at stage {}",
                    p + 1
                )));
            }
        }
        Ok(ChainStages { dims, boundaries })
    }

    /// Homology dimensions per stage.
    pub fn homology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.boundaries.iter().map(crate::linalg::rank).collect();
        (0..self.dims.len())
            .map(|p| {
                let incoming = ranks.get(p).copied().unwrap_or(0);
                let outgoing = if p == 0 {
                    0
                } else {
                    ranks.get(p - 1).copied().unwrap_or(0)
                };
                self.dims[p] - incoming - outgoing
            })
            .collect()
    }

    pub fn euler_characteristic_stages(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(p, &d)| if p % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

/// Cohomological stages indexed 0..=n for the Cech strand: stage `r` maps up
/// to stage `r+1`.
#[derive(Clone, Debug)]
pub struct CochainStages {
    pub dims: Vec<usize>,
    /// `maps[r]` sends stage `r` to stage `r+1`.
    pub maps: Vec<RationalMatrix>,
}

impl CochainStages {
    pub fn new(dims: Vec<usize>, maps: Vec<RationalMatrix>) -> Result<Self> {
        if !dims.is_empty() && maps.len() + 1 != dims.len() {
            return Err(Error::Internal(format!(
                "stage shape mismatch: {} stages, {} maps",
                dims.len(),
                maps.len()
            )));
        }
        for (r, m) in maps.iter().enumerate() {
            if m.cols() != dims[r] || m.rows() != dims[r + 1] {
                return Err(Error::Internal(format!(
                    "map {r} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dims[r + 1],
                    dims[r]
                )));
            }
        }
        for r in 0..maps.len().saturating_sub(1) {
            if !maps[r + 1].mul(&maps[r]).is_zero() {
                return Err(Error::Internal(format!(
                    "map does not square to zero at stage {r}"
                )));
            }
        }
        Ok(CochainStages { dims, maps })
    }

    pub fn cohomology_dims(&self) -> Vec<usize> {
        let ranks: Vec<usize> = self.maps.iter().map(crate::linalg::rank).collect();
        (0..self.dims.len())
            .map(|r| {
                let outgoing = ranks.get(r).copied().unwrap_or(0);
                let incoming = if r == 0 {
                    0
                } else {
                    ranks.get(r - 1).copied().unwrap_or(0)
                };
                self.dims[r] - outgoing - incoming
            })
            .collect()
    }

    pub fn euler_characteristic_stages(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(r, &d)| if r % 2 == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn iset(members: &[usize]) -> IndexSet {
        IndexSet::from_members(members.iter().copied())
    }

    #[test]
    fn stanley_reisner_of_principal_ideal() {
        let ideal = SquarefreeIdeal::from_generators(4, [iset(&[1, 2, 3])]);
        let cx = stanley_reisner(&ideal);
        assert_eq!(
            cx.facets(),
            vec![iset(&[1, 2, 4]), iset(&[1, 3, 4]), iset(&[2, 3, 4])]
        );
    }

    #[test]
    fn stanley_reisner_of_zero_ideal_is_full_simplex() {
        let cx = stanley_reisner(&SquarefreeIdeal::zero(3));
        assert_eq!(cx, SimplicialComplex::full_simplex(IndexSet::full(3)));
    }

    #[test]
    fn stanley_reisner_of_maximal_ideal_is_irrelevant() {
        let gens = (1..=3).map(IndexSet::singleton);
        let cx = stanley_reisner(&SquarefreeIdeal::from_generators(3, gens));
        assert_eq!(cx, SimplicialComplex::irrelevant(IndexSet::full(3)));
        assert!(!cx.is_void());
    }

    fn worked_delta1() -> SimplicialComplex {
        stanley_reisner(&SquarefreeIdeal::from_generators(4, [iset(&[1, 2, 3])]))
    }

    fn worked_delta2() -> SimplicialComplex {
        stanley_reisner(&SquarefreeIdeal::from_generators(
            4,
            [iset(&[2, 4]), iset(&[3, 4])],
        ))
    }

    #[test]
    fn restrict_to_degree_examples() {
        let d1 = worked_delta1();
        let seg = d1.restrict_to_degree(&ExponentVector::new(vec![1, 0, 1, 0]));
        assert_eq!(seg.facets(), vec![iset(&[1, 3])]);
        assert_eq!(seg.vertex_set(), iset(&[1, 3]));

        let d2 = worked_delta2();
        let pts = d2.restrict_to_degree(&ExponentVector::new(vec![0, 0, 1, 1]));
        assert_eq!(pts.facets(), vec![iset(&[3]), iset(&[4])]);

        let void = d1.restrict_to_degree(&ExponentVector::new(vec![1, -1, 0, 0]));
        assert!(void.is_void());
    }

    #[test]
    fn link_type_examples() {
        let d1 = worked_delta1();
        let only_empty = d1.link_type_complex(&ExponentVector::new(vec![0, -1, -1, -1]));
        assert_eq!(only_empty.facets(), vec![IndexSet::EMPTY]);
        assert!(!only_empty.is_void());

        let boundary = d1.link_type_complex(&ExponentVector::new(vec![0, 0, 0, -1]));
        assert_eq!(
            boundary.facets(),
            vec![iset(&[1, 2]), iset(&[1, 3]), iset(&[2, 3])]
        );
        assert_eq!(boundary.vertex_set(), iset(&[1, 2, 3]));

        let d2 = worked_delta2();
        let two = d2.link_type_complex(&ExponentVector::new(vec![-1, 0, 0, 0]));
        assert_eq!(two.facets(), vec![iset(&[2, 3]), iset(&[4])]);
    }

    #[test]
    fn partition_vertices_examples() {
        let d2 = worked_delta2();
        let lk = d2.link_type_complex(&ExponentVector::new(vec![-1, 0, 0, 0]));
        let (v1, v2) = lk.partition_vertices(iset(&[2]));
        assert_eq!(v1, iset(&[3]));
        assert_eq!(v2, iset(&[4]));

        let full = SimplicialComplex::full_simplex(IndexSet::full(3));
        let (_, blocking) = full.partition_vertices(iset(&[1]));
        assert!(blocking.is_empty());

        let d1 = worked_delta1();
        let facet = iset(&[1, 2, 4]);
        let (extending, _) = d1.partition_vertices(facet);
        assert!(extending.is_empty());
    }

    #[test]
    #[should_panic(expected = "not a face")]
    fn partition_vertices_rejects_non_face() {
        worked_delta1().partition_vertices(iset(&[1, 2, 3]));
    }

    #[test]
    fn cochain_complex_of_irrelevant() {
        let cx = SimplicialComplex::irrelevant(IndexSet::full(2)).cochain_complex();
        assert_eq!(cx.dims(), BTreeMap::from([(-1, 1)]));
        assert_eq!(cx.cohomology_dims(), BTreeMap::from([(-1, 1)]));
    }

    #[test]
    fn cochain_complex_of_full_simplex_is_acyclic() {
        for m in 1..=4 {
            let cx = SimplicialComplex::full_simplex(IndexSet::full(m));
            assert!(
                cx.reduced_cohomology_dims().is_empty(),
                "cone on {m} vertices"
            );
        }
    }

    #[test]
    fn cochain_complex_of_triangle_boundary() {
        let cx = SimplicialComplex::from_facets(
            IndexSet::full(3),
            [iset(&[1, 2]), iset(&[1, 3]), iset(&[2, 3])],
        );
        assert_eq!(cx.reduced_cohomology_dims(), BTreeMap::from([(1, 1)]));
    }

    #[test]
    fn void_cohomology_is_zero() {
        let cx = SimplicialComplex::void(IndexSet::full(3));
        assert!(cx.reduced_cohomology_dims().is_empty());
    }

    #[test]
    fn euler_characteristic_matches_cohomology() {
        let complexes = [
            worked_delta1(),
            worked_delta2(),
            SimplicialComplex::full_simplex(IndexSet::full(4)),
            SimplicialComplex::irrelevant(IndexSet::full(2)),
        ];
        for cx in complexes {
            let c = cx.cochain_complex();
            assert_eq!(
                c.euler_characteristic_spaces(),
                c.euler_characteristic_cohomology()
            );
        }
    }

    #[test]
    fn restriction_by_squarefree_degree_is_full_subcomplex() {
        let d1 = worked_delta1();
        let a = ExponentVector::new(vec![1, 1, 0, 1]);
        let restricted = d1.restrict_to_degree(&a);
        let sigma = a.support();
        for s in sigma.subsets() {
            assert_eq!(restricted.contains(s), d1.contains(s));
        }
    }

    #[test]
    fn doubled_coordinate_makes_restriction_a_cone() {
        // A vertex with exponent >= 2 extends every face, so all reduced
        // cohomology vanishes.
        for delta in [worked_delta1(), worked_delta2()] {
            for (coords, apex) in [
                (vec![2, 1, 1, 0], 1),
                (vec![1, 2, 0, 1], 2),
                (vec![0, 1, 3, 1], 3),
                (vec![2, 2, 1, 1], 1),
            ] {
                let a = ExponentVector::new(coords);
                let cx = delta.restrict_to_degree(&a);
                if cx.is_void() {
                    continue;
                }
                for face in cx.faces().collect::<Vec<_>>() {
                    assert!(
                        cx.contains(face.with(apex)),
                        "face {face} misses the apex {apex}"
                    );
                }
                assert!(cx.reduced_cohomology_dims().is_empty(), "degree {a}");
            }
        }
    }

    #[test]
    fn ideal_minimal_generators_filter_divisible() {
        let ideal =
            SquarefreeIdeal::from_generators(4, [iset(&[1, 2]), iset(&[1, 2, 3]), iset(&[4])]);
        assert_eq!(ideal.min_gens(), &[iset(&[1, 2]), iset(&[4])]);
    }

    #[test]
    fn ideal_intersection_via_joins() {
        let a = SquarefreeIdeal::from_generators(4, [iset(&[1, 2, 3])]);
        let b = SquarefreeIdeal::from_generators(4, [iset(&[2, 4]), iset(&[3, 4])]);
        let both = a.intersect(&b);
        assert_eq!(both.min_gens(), &[iset(&[1, 2, 3, 4])]);
    }

    #[test]
    fn from_faces_validates_closure() {
        let err = SimplicialComplex::from_faces(IndexSet::full(3), [iset(&[1, 2])]);
        assert!(err.is_err());
        let ok = SimplicialComplex::from_faces(
            IndexSet::full(3),
            [IndexSet::EMPTY, iset(&[1]), iset(&[2]), iset(&[1, 2])],
        );
        assert!(ok.is_ok());
    }
}
