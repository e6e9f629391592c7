//! Exponent vectors in `Z^n`, index subsets of `{1..n}`, and the
//! orientation signs used by every cochain differential in the crate.
//!
//! Variables are 1-indexed throughout. Index sets are bitmasks, so the
//! ambient dimension is capped at 64; parsing rejects anything larger
//! (sweeps are `2^n`-bounded, so far smaller `n` is the practical range).

use std::fmt;

/// A subset of `{1..n}` stored as a bitmask; bit `k-1` encodes member `k`.
///
/// `Ord` is the numeric order of the mask, i.e. colexicographic on the
/// member lists, which gives every face enumeration in the crate a fixed
/// deterministic order.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IndexSet(u64);

/// Largest ambient dimension representable by `IndexSet`.
pub const MAX_VARS: usize = 64;

impl IndexSet {
    pub const EMPTY: IndexSet = IndexSet(0);

    /// The full set `{1..n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VARS, "ambient dimension {n} exceeds {MAX_VARS}");
        if n == 0 {
            IndexSet(0)
        } else {
            IndexSet(u64::MAX >> (MAX_VARS - n))
        }
    }

    pub fn singleton(t: usize) -> Self {
        IndexSet::EMPTY.with(t)
    }

    pub fn from_members<I: IntoIterator<Item = usize>>(members: I) -> Self {
        members.into_iter().fold(IndexSet::EMPTY, |s, t| s.with(t))
    }

    fn bit(t: usize) -> u64 {
        assert!(
            (1..=MAX_VARS).contains(&t),
            "member {t} out of range 1..={MAX_VARS}"
        );
        1u64 << (t - 1)
    }

    pub fn contains(self, t: usize) -> bool {
        self.0 & Self::bit(t) != 0
    }

    pub fn with(self, t: usize) -> Self {
        IndexSet(self.0 | Self::bit(t))
    }

    pub fn without(self, t: usize) -> Self {
        IndexSet(self.0 & !Self::bit(t))
    }

    pub fn union(self, other: Self) -> Self {
        IndexSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        IndexSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        IndexSet(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint_from(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn cardinality(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Members in ascending order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let t = bits.trailing_zeros() as usize + 1;
                bits &= bits - 1;
                Some(t)
            }
        })
    }

    /// 1-based rank of `t` among the members, if present.
    pub fn position_of(self, t: usize) -> Option<usize> {
        if !self.contains(t) {
            return None;
        }
        Some((self.0 & (Self::bit(t) - 1)).count_ones() as usize + 1)
    }

    /// All subsets of `self`, ascending in the numeric (colex) order.
    pub fn subsets(self) -> Vec<IndexSet> {
        let mask = self.0;
        let mut out = Vec::with_capacity(1usize << mask.count_ones());
        let mut sub = 0u64;
        loop {
            out.push(IndexSet(sub));
            if sub == mask {
                break;
            }
            sub = (sub.wrapping_sub(mask)) & mask;
        }
        out
    }

    /// Subsets of `self` with exactly `k` members, ascending.
    pub fn subsets_of_size(self, k: usize) -> Vec<IndexSet> {
        self.subsets()
            .into_iter()
            .filter(|s| s.cardinality() == k)
            .collect()
    }

    /// Indicator vector in `N^n`.
    pub fn indicator(self, n: usize) -> ExponentVector {
        let mut coords = vec![0i64; n];
        for t in self.iter() {
            assert!(t <= n, "member {t} exceeds ambient dimension {n}");
            coords[t - 1] = 1;
        }
        ExponentVector::new(coords)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, t) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{t}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `(-1)^(r+1)` where `t` is the `r`-th smallest member of `set`.
///
/// Panics if `t` is not a member.
pub fn position_sign(t: usize, set: IndexSet) -> i64 {
    let r = set
        .position_of(t)
        .unwrap_or_else(|| panic!("{t} is not a member of {set}"));
    if r % 2 == 1 {
        1
    } else {
        -1
    }
}

/// Product of `position_sign(w, set)` over all `w` in `sub`.
///
/// Panics if `sub` is not a subset of `set`. The empty product is `+1`.
pub fn subset_sign(sub: IndexSet, set: IndexSet) -> i64 {
    assert!(sub.is_subset_of(set), "{sub} is not a subset of {set}");
    sub.iter().map(|w| position_sign(w, set)).product()
}

/// Parity sign of moving the members of `sigma` to the end of the sorted
/// list of `f` by adjacent transpositions: `+1` if an even number of
/// transpositions suffices, `-1` otherwise.
///
/// Panics if `sigma` is not a subset of `f`.
pub fn transposition_sign(sigma: IndexSet, f: IndexSet) -> i64 {
    assert!(sigma.is_subset_of(f), "{sigma} is not a subset of {f}");
    let rest = f.difference(sigma);
    let moves: usize = sigma
        .iter()
        .map(|x| rest.iter().filter(|&y| y > x).count())
        .sum();
    if moves % 2 == 0 {
        1
    } else {
        -1
    }
}

/// An exponent vector in `Z^n`. Coordinates are accessed 1-based.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVector {
    coords: Vec<i64>,
}

impl ExponentVector {
    pub fn new(coords: Vec<i64>) -> Self {
        ExponentVector { coords }
    }

    pub fn zero(n: usize) -> Self {
        ExponentVector { coords: vec![0; n] }
    }

    /// Ambient variable count `n`.
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// Coordinate of variable `i` (1-based).
    pub fn get(&self, i: usize) -> i64 {
        self.coords[i - 1]
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    /// Indices of the nonzero coordinates.
    pub fn support(&self) -> IndexSet {
        let mut s = IndexSet::EMPTY;
        for (k, &c) in self.coords.iter().enumerate() {
            if c != 0 {
                s = s.with(k + 1);
            }
        }
        s
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// True when every coordinate is 0 or 1.
    pub fn is_squarefree(&self) -> bool {
        self.coords.iter().all(|&c| c == 0 || c == 1)
    }

    /// The 0/1 vector with the same support. Panics on a negative coordinate.
    pub fn squarefree_part(&self) -> ExponentVector {
        assert!(
            self.is_nonnegative(),
            "squarefree part of {self} with a negative coordinate"
        );
        ExponentVector::new(self.coords.iter().map(|&c| i64::from(c != 0)).collect())
    }

    /// Componentwise maximum of a nonempty family. Panics on empty input or
    /// mismatched lengths.
    pub fn join<'a, I: IntoIterator<Item = &'a ExponentVector>>(items: I) -> ExponentVector {
        let mut it = items.into_iter();
        let first = it.next().expect("join of an empty family");
        let mut coords = first.coords.clone();
        for v in it {
            assert_eq!(
                v.len(),
                coords.len(),
                "join of vectors of different lengths"
            );
            for (c, &d) in coords.iter_mut().zip(&v.coords) {
                *c = (*c).max(d);
            }
        }
        ExponentVector::new(coords)
    }

    /// The positive part `a+` of the decomposition `a = a+ - a-`.
    pub fn positive_part(&self) -> ExponentVector {
        ExponentVector::new(self.coords.iter().map(|&c| c.max(0)).collect())
    }

    /// The negative part `a-` (componentwise nonnegative).
    pub fn negative_part(&self) -> ExponentVector {
        ExponentVector::new(self.coords.iter().map(|&c| (-c).max(0)).collect())
    }

    pub fn add(&self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), other.len());
        ExponentVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &ExponentVector) -> ExponentVector {
        assert_eq!(self.len(), other.len());
        ExponentVector::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn scale(&self, k: i64) -> ExponentVector {
        ExponentVector::new(self.coords.iter().map(|&c| k * c).collect())
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(coords: &[i64]) -> ExponentVector {
        ExponentVector::new(coords.to_vec())
    }

    #[test]
    fn support_examples() {
        assert_eq!(
            ev(&[1, 1, 0, 1]).support(),
            IndexSet::from_members([1, 2, 4])
        );
        assert_eq!(ev(&[0, 0, 0, 0]).support(), IndexSet::EMPTY);
        assert_eq!(
            ev(&[0, -1, -1, 0]).support(),
            IndexSet::from_members([2, 3])
        );
    }

    #[test]
    fn squarefree_part_examples() {
        assert_eq!(ev(&[2, 0, 3, 1]).squarefree_part(), ev(&[1, 0, 1, 1]));
        assert_eq!(ev(&[1, 1, 0, 1]).squarefree_part(), ev(&[1, 1, 0, 1]));
        assert_eq!(ev(&[0, 0, 0, 0]).squarefree_part(), ev(&[0, 0, 0, 0]));
    }

    #[test]
    #[should_panic(expected = "negative coordinate")]
    fn squarefree_part_rejects_negative() {
        ev(&[1, -1]).squarefree_part();
    }

    #[test]
    fn join_examples() {
        let a = ev(&[1, 1, 0, 0]);
        let b = ev(&[0, 1, 0, 1]);
        assert_eq!(ExponentVector::join([&a, &b]), ev(&[1, 1, 0, 1]));
        assert_eq!(ExponentVector::join([&a]), a);
        assert_eq!(
            ExponentVector::join([&ev(&[1, 0]), &ev(&[0, 1])]),
            ev(&[1, 1])
        );
    }

    #[test]
    #[should_panic(expected = "empty family")]
    fn join_rejects_empty() {
        ExponentVector::join([]);
    }

    #[test]
    fn position_sign_examples() {
        let l = IndexSet::from_members([1, 2, 3]);
        assert_eq!(position_sign(1, l), 1);
        assert_eq!(position_sign(2, l), -1);
        assert_eq!(position_sign(3, l), 1);
    }

    #[test]
    #[should_panic(expected = "not a member")]
    fn position_sign_rejects_non_member() {
        position_sign(4, IndexSet::from_members([1, 2, 3]));
    }

    #[test]
    fn subset_sign_examples() {
        let l = IndexSet::from_members([1, 2, 3]);
        assert_eq!(subset_sign(IndexSet::from_members([1, 3]), l), 1);
        assert_eq!(subset_sign(IndexSet::from_members([2]), l), -1);
        assert_eq!(subset_sign(IndexSet::EMPTY, l), 1);
    }

    #[test]
    fn transposition_sign_examples() {
        assert_eq!(
            transposition_sign(IndexSet::EMPTY, IndexSet::from_members([1, 4])),
            1
        );
        // A tail needs no moves.
        let f = IndexSet::from_members([1, 2, 5]);
        assert_eq!(transposition_sign(IndexSet::from_members([5]), f), 1);
        assert_eq!(transposition_sign(IndexSet::from_members([2, 5]), f), 1);
        assert_eq!(
            transposition_sign(IndexSet::from_members([1]), IndexSet::from_members([1, 2])),
            -1
        );
    }

    /// Moving `sigma` behind `f`, then inserting `h`, commutes with
    /// inserting `h` first; exhaustive for n <= 6.
    #[test]
    fn transposition_sign_insertion_identity() {
        let n = 6;
        for f in IndexSet::full(n).subsets() {
            for sigma in f.subsets() {
                for h in 1..=n {
                    if f.contains(h) {
                        continue;
                    }
                    let fh = f.with(h);
                    let lhs = transposition_sign(sigma, f) * position_sign(h, fh.difference(sigma));
                    let rhs = transposition_sign(sigma, fh) * position_sign(h, fh);
                    assert_eq!(lhs, rhs, "sigma={sigma} f={f} h={h}");
                }
            }
        }
    }

    /// Exchange identity between member signs of nested sets; exhaustive
    /// for n <= 6.
    #[test]
    fn sign_exchange_identity() {
        let n = 6;
        for sigma in IndexSet::full(n).subsets() {
            for rho in sigma.subsets() {
                let tau = sigma.difference(rho);
                for t in tau.iter() {
                    let lhs = position_sign(t, tau) * subset_sign(rho.with(t), sigma);
                    let rhs = position_sign(t, rho.with(t)) * subset_sign(rho, sigma);
                    assert_eq!(lhs, rhs, "rho={rho} sigma={sigma} t={t}");
                }
            }
        }
    }

    #[test]
    fn subsets_are_sorted_and_complete() {
        let s = IndexSet::from_members([1, 3, 4]);
        let subs = s.subsets();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|t| t.is_subset_of(s)));
    }

    #[test]
    fn indicator_round_trip() {
        let s = IndexSet::from_members([2, 5]);
        assert_eq!(s.indicator(6).support(), s);
    }

    #[test]
    fn parts_recompose() {
        let a = ev(&[2, -1, 0, 3, -4]);
        assert_eq!(a.positive_part().sub(&a.negative_part()), a);
        assert!(a
            .positive_part()
            .support()
            .is_disjoint_from(a.negative_part().support()));
    }
}
