//! Affine geometry over GF(2): subspaces, codimension of subsets,
//! intersectional codimension and affine preimages.
//!
//! A vector of `GF(2)^n` is a [`BitTuple`] and, internally, its truth-table
//! index, so vector addition is XOR of indices. Subsets are carried as their
//! characteristic functions.

use std::collections::HashSet;
use std::sync::OnceLock;

use rand::Rng;

use crate::error::{Error, Result};
use crate::function::BooleanFunction;
use crate::tuple::BitTuple;

/// Largest dimension for subspace enumeration and the codimension measures.
pub const GEOM_DIM_LIMIT: u32 = 6;

fn check_dim(n: u32, what: &str) -> Result<()> {
    if n == 0 || n > GEOM_DIM_LIMIT {
        return Err(Error::CapTooLarge { cap: n, limit: GEOM_DIM_LIMIT, what: what.to_string() });
    }
    Ok(())
}

/// Positions whose index has bit `k` clear, over a 64-entry table.
const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

/// `{ x + w : x in s }` for a membership mask over `GF(2)^n`, `n <= 6`.
fn translate(mut s: u64, w: u32) -> u64 {
    for (k, &low) in LOW_HALF.iter().enumerate() {
        if (w >> k) & 1 == 1 {
            let shift = 1u32 << k;
            s = ((s & low) << shift) | ((s >> shift) & low);
        }
    }
    s
}

fn full_mask(n: u32) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// `s + span(basis)`.
fn hull_mask(mut s: u64, basis: &[u32]) -> u64 {
    for &b in basis {
        s |= translate(s, b);
    }
    s
}

/// Reduced row echelon form, pivots on the highest index bit (component
/// `a_1` first), rows sorted by descending pivot.
fn echelon(vectors: impl IntoIterator<Item = u32>) -> Vec<u32> {
    let mut rows: Vec<u32> = Vec::new();
    for mut v in vectors {
        for &r in &rows {
            let pivot = 31 - r.leading_zeros();
            if (v >> pivot) & 1 == 1 {
                v ^= r;
            }
        }
        if v == 0 {
            continue;
        }
        let pivot = 31 - v.leading_zeros();
        for r in &mut rows {
            if (*r >> pivot) & 1 == 1 {
                *r ^= v;
            }
        }
        rows.push(v);
    }
    rows.sort_unstable_by(|a, b| b.cmp(a));
    rows
}

/// A linear subspace of `GF(2)^n` in canonical (reduced echelon) form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Subspace {
    n: u32,
    basis: Vec<u32>,
}

impl Gf2Subspace {
    /// The span of `vectors`, all of dimension `n`.
    pub fn span(n: u32, vectors: &[BitTuple]) -> Result<Self> {
        check_dim(n, "GF(2) dimension")?;
        for v in vectors {
            if v.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: v.arity() });
            }
        }
        Ok(Self { n, basis: echelon(vectors.iter().map(BitTuple::index)) })
    }

    pub fn zero(n: u32) -> Result<Self> {
        Self::span(n, &[])
    }

    pub fn whole(n: u32) -> Result<Self> {
        check_dim(n, "GF(2) dimension")?;
        Ok(Self { n, basis: echelon((0..n).map(|k| 1u32 << k)) })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn dim(&self) -> u32 {
        self.basis.len() as u32
    }

    pub fn codim(&self) -> u32 {
        self.n - self.dim()
    }

    pub fn basis(&self) -> Vec<BitTuple> {
        self.basis.iter().map(|&b| BitTuple::from_raw(self.n, b)).collect()
    }

    pub fn contains(&self, v: &BitTuple) -> bool {
        v.arity() == self.n && self.mask() >> v.index() & 1 == 1
    }

    fn mask(&self) -> u64 {
        hull_mask(1, &self.basis)
    }

    pub fn members(&self) -> Gf2Subset {
        Gf2Subset::from_mask_unchecked(self.n, self.mask())
    }

    /// The union of the cosets of this subspace that meet `s`.
    pub fn hull(&self, s: &Gf2Subset) -> Result<Gf2Subset> {
        let mask = s.mask(self.n)?;
        Ok(Gf2Subset::from_mask_unchecked(self.n, hull_mask(mask, &self.basis)))
    }

    /// Whether `s` is a union of cosets of this subspace.
    pub fn saturates(&self, s: &Gf2Subset) -> Result<bool> {
        let mask = s.mask(self.n)?;
        Ok(hull_mask(mask, &self.basis) == mask)
    }
}

/// Every subspace of `GF(2)^n`, ordered by dimension and then basis.
pub fn subspaces(n: u32) -> Result<&'static [Gf2Subspace]> {
    check_dim(n, "subspace enumeration")?;
    static CACHE: [OnceLock<Vec<Gf2Subspace>>; GEOM_DIM_LIMIT as usize] =
        [const { OnceLock::new() }; GEOM_DIM_LIMIT as usize];
    Ok(CACHE[n as usize - 1].get_or_init(|| enumerate_subspaces(n)))
}

fn enumerate_subspaces(n: u32) -> Vec<Gf2Subspace> {
    let size = 1u32 << n;
    let mut seen: HashSet<u64> = HashSet::from([1]);
    let mut frontier = vec![1u64];
    while let Some(mask) = frontier.pop() {
        for v in 1..size {
            if mask >> v & 1 == 0 {
                let bigger = mask | translate(mask, v);
                if seen.insert(bigger) {
                    frontier.push(bigger);
                }
            }
        }
    }
    let mut out: Vec<Gf2Subspace> = seen
        .into_iter()
        .map(|mask| Gf2Subspace {
            n,
            basis: echelon((0..size).filter(|&v| mask >> v & 1 == 1)),
        })
        .collect();
    out.sort_by(|a, b| (a.dim(), &a.basis).cmp(&(b.dim(), &b.basis)));
    out
}

/// A subset of `GF(2)^n`, stored as its characteristic function.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Subset {
    chi: BooleanFunction,
}

impl Gf2Subset {
    pub fn empty(n: u32) -> Result<Self> {
        Ok(Self { chi: BooleanFunction::constant(n, false)? })
    }

    pub fn full(n: u32) -> Result<Self> {
        Ok(Self { chi: BooleanFunction::constant(n, true)? })
    }

    pub fn from_points(n: u32, points: &[BitTuple]) -> Result<Self> {
        for p in points {
            if p.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: p.arity() });
            }
        }
        let indices: HashSet<u32> = points.iter().map(BitTuple::index).collect();
        Ok(Self { chi: BooleanFunction::from_index_fn(n, |i| indices.contains(&i))? })
    }

    /// Membership bits indexed like a truth table, for `n <= 6`.
    pub fn from_mask(n: u32, mask: u64) -> Result<Self> {
        Ok(Self { chi: BooleanFunction::from_small(n, mask)? })
    }

    fn from_mask_unchecked(n: u32, mask: u64) -> Self {
        Self { chi: BooleanFunction::from_small_unchecked(n, mask) }
    }

    pub fn n(&self) -> u32 {
        self.chi.arity()
    }

    fn mask(&self, n: u32) -> Result<u64> {
        if self.n() != n {
            return Err(Error::ArityMismatch { expected: n, found: self.n() });
        }
        self.chi
            .small_table()
            .ok_or_else(|| Error::CapTooLarge { cap: n, limit: GEOM_DIM_LIMIT, what: "subset mask".into() })
    }

    pub fn contains(&self, v: &BitTuple) -> bool {
        v.arity() == self.n() && self.chi.eval_index(v.index())
    }

    pub fn len(&self) -> u64 {
        self.chi.count_true()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn points(&self) -> Vec<BitTuple> {
        self.chi.true_points()
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        Ok(Self { chi: self.chi.meet(&other.chi)? })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        Ok(Self { chi: self.chi.join(&other.chi)? })
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        Ok(self.intersection(other)? == *self)
    }

    pub fn chi(&self) -> &BooleanFunction {
        &self.chi
    }

    /// `{ w : self + w = self }`, a subspace.
    pub fn stabilizer(&self) -> Result<Gf2Subspace> {
        let n = self.n();
        check_dim(n, "stabilizer")?;
        let s = self.mask(n)?;
        let fixing = (0..1u32 << n).filter(|&w| translate(s, w) == s);
        Ok(Gf2Subspace { n, basis: echelon(fixing) })
    }

    pub fn codim(&self) -> Result<u32> {
        codim_set(self)
    }

    pub fn icodim(&self) -> Result<u32> {
        icodim_set(self)
    }

    /// Empty, or a coset of a linear subspace.
    pub fn is_affine(&self) -> Result<bool> {
        let n = self.n();
        check_dim(n, "affine test")?;
        let s = self.mask(n)?;
        if s == 0 {
            return Ok(true);
        }
        let linear = translate(s, s.trailing_zeros());
        let basis = echelon((0..1u32 << n).filter(|&v| linear >> v & 1 == 1));
        Ok(hull_mask(1, &basis) == linear)
    }
}

/// Least codimension of a subspace `W` such that `s` is a union of
/// `W`-cosets. The largest such `W` is the stabilizer of `s`.
pub fn codim_set(s: &Gf2Subset) -> Result<u32> {
    Ok(s.stabilizer()?.codim())
}

/// Least `d` such that `s` is an intersection of sets of codimension at most
/// `d`.
///
/// Every set of codimension at most `d` containing `s` contains the hull of
/// `s` for some subspace of codimension at most `d`, and each such hull is
/// itself such a set, so it suffices to intersect the hulls.
pub fn icodim_set(s: &Gf2Subset) -> Result<u32> {
    let n = s.n();
    check_dim(n, "intersectional codimension")?;
    let mask = s.mask(n)?;
    let mut by_codim: Vec<Vec<&Gf2Subspace>> = vec![Vec::new(); n as usize + 1];
    for w in subspaces(n)? {
        by_codim[w.codim() as usize].push(w);
    }
    let mut meet = full_mask(n);
    for (d, layer) in by_codim.iter().enumerate() {
        for w in layer {
            meet &= hull_mask(mask, &w.basis);
        }
        if meet == mask {
            return Ok(d as u32);
        }
    }
    unreachable!("the zero subspace has codimension n and its hull is the set itself")
}

/// `x -> A x + b` from `GF(2)^m` to `GF(2)^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AffineMap {
    m: u32,
    /// Row `i` selects the source components feeding output component `i`,
    /// as a mask over source indices.
    rows: Vec<u32>,
    offset: BitTuple,
}

impl AffineMap {
    /// `rows[i][j]` is the matrix entry for output `i + 1`, input `j + 1`.
    pub fn new(m: u32, rows: &[Vec<bool>], offset: BitTuple) -> Result<Self> {
        let n = offset.arity();
        if rows.len() != n as usize {
            return Err(Error::WrongArgumentCount { expected: n as usize, found: rows.len() });
        }
        let mut packed = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != m as usize {
                return Err(Error::ArityMismatch { expected: m, found: row.len() as u32 });
            }
            packed.push(BitTuple::from_components(row)?.index());
        }
        Ok(Self { m, rows: packed, offset })
    }

    /// The map with `A e_j = columns[j]` and `A 0 + b = offset`.
    pub fn from_columns(columns: &[BitTuple], offset: BitTuple) -> Result<Self> {
        let m = columns.len() as u32;
        let n = offset.arity();
        BitTuple::zeros(m)?;
        let mut rows = vec![0u32; n as usize];
        for (j, col) in columns.iter().enumerate() {
            if col.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: col.arity() });
            }
            for (i, row) in rows.iter_mut().enumerate() {
                if col.index() >> (n - 1 - i as u32) & 1 == 1 {
                    *row |= 1 << (m - 1 - j as u32);
                }
            }
        }
        Ok(Self { m, rows, offset })
    }

    pub fn identity(n: u32) -> Result<Self> {
        Ok(Self {
            m: n,
            rows: (0..n).map(|i| 1u32 << (n - 1 - i)).collect(),
            offset: BitTuple::zeros(n)?,
        })
    }

    /// `x -> x + a`; over GF(2) this is also `x -> x - a`.
    pub fn translation(a: &BitTuple) -> Result<Self> {
        let mut map = Self::identity(a.arity())?;
        map.offset = *a;
        Ok(map)
    }

    pub fn random<R: Rng + ?Sized>(m: u32, n: u32, rng: &mut R) -> Result<Self> {
        // Rejects an unsupported source dimension.
        BitTuple::zeros(m)?;
        let offset = BitTuple::new(n, rng.random_range(0..1u32 << n))?;
        let rows = (0..n).map(|_| rng.random_range(0..1u32 << m)).collect();
        Ok(Self { m, rows, offset })
    }

    pub fn source_dim(&self) -> u32 {
        self.m
    }

    pub fn target_dim(&self) -> u32 {
        self.offset.arity()
    }

    pub fn apply(&self, x: &BitTuple) -> Result<BitTuple> {
        if x.arity() != self.m {
            return Err(Error::ArityMismatch { expected: self.m, found: x.arity() });
        }
        Ok(BitTuple::from_raw(self.target_dim(), self.apply_index(x.index())))
    }

    /// `self` after `first`.
    pub fn compose(&self, first: &AffineMap) -> Result<AffineMap> {
        if first.target_dim() != self.m {
            return Err(Error::ArityMismatch { expected: self.m, found: first.target_dim() });
        }
        let m = first.m;
        // Column j of the product is self applied linearly to column j of first.
        let columns: Vec<u32> = (0..m)
            .map(|j| {
                let e = BitTuple::from_raw(m, 1 << (m - 1 - j));
                first.apply(&e).map(|v| v.index() ^ first.offset.index())
            })
            .collect::<Result<_>>()?;
        let n = self.target_dim();
        let mut rows = vec![0u32; n as usize];
        for (j, &col) in columns.iter().enumerate() {
            let image = self.linear(col);
            for (i, row) in rows.iter_mut().enumerate() {
                if image >> (n - 1 - i as u32) & 1 == 1 {
                    *row |= 1 << (m - 1 - j as u32);
                }
            }
        }
        let offset = BitTuple::from_raw(n, self.linear(first.offset.index()) ^ self.offset.index());
        Ok(AffineMap { m, rows, offset })
    }

    /// `apply` on raw indices.
    pub(crate) fn apply_index(&self, x: u32) -> u32 {
        self.linear(x) ^ self.offset.index()
    }

    fn linear(&self, x: u32) -> u32 {
        self.rows.iter().fold(0u32, |acc, &r| (acc << 1) | ((r & x).count_ones() & 1))
    }

    /// The coordinate functions, each an `m`-ary member of `L`.
    pub fn coordinates(&self) -> Result<Vec<BooleanFunction>> {
        let m = self.m;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, &r)| {
                let c = self.offset.index() >> (self.target_dim() - 1 - i as u32) & 1 == 1;
                BooleanFunction::from_index_fn(m, |x| ((r & x).count_ones() & 1 == 1) != c)
            })
            .collect()
    }
}

/// `{ x : f(x) in s }`, computed as `chi_s` composed with the coordinates of `f`.
pub fn preimage(f: &AffineMap, s: &Gf2Subset) -> Result<Gf2Subset> {
    if f.target_dim() != s.n() {
        return Err(Error::ArityMismatch { expected: f.target_dim(), found: s.n() });
    }
    Ok(Gf2Subset { chi: s.chi.compose(&f.coordinates()?)? })
}

pub fn chi(s: &Gf2Subset) -> BooleanFunction {
    s.chi.clone()
}

pub fn support(f: &BooleanFunction) -> Gf2Subset {
    Gf2Subset { chi: f.clone() }
}

/// `icodim(f^{-1}(1)) <= d`.
pub fn in_icd(f: &BooleanFunction, d: u32) -> Result<bool> {
    Ok(icodim_set(&support(f))? <= d)
}

/// `f^{-1}(1)` is empty or an affine subspace.
pub fn in_aff(f: &BooleanFunction) -> Result<bool> {
    support(f).is_affine()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gaussian_binomial(n: u32, k: u32) -> u64 {
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num *= (1u64 << (n - i)) - 1;
            den *= (1u64 << (i + 1)) - 1;
        }
        num / den
    }

    fn all_subsets(n: u32) -> impl Iterator<Item = Gf2Subset> {
        (0..=full_mask(n)).map(move |m| Gf2Subset::from_mask(n, m).unwrap())
    }

    // Literal definitions, by search over every subspace or subset.
    fn codim_by_search(s: &Gf2Subset) -> u32 {
        subspaces(s.n())
            .unwrap()
            .iter()
            .filter(|w| w.saturates(s).unwrap())
            .map(Gf2Subspace::codim)
            .min()
            .unwrap()
    }

    fn icodim_by_search(s: &Gf2Subset) -> u32 {
        let n = s.n();
        let codims: Vec<(Gf2Subset, u32)> = all_subsets(n).map(|t| {
            let c = codim_by_search(&t);
            (t, c)
        }).collect();
        (0..=n)
            .find(|&d| {
                let mut meet = Gf2Subset::full(n).unwrap();
                for (t, c) in &codims {
                    if *c <= d && s.is_subset(t).unwrap() {
                        meet = meet.intersection(t).unwrap();
                    }
                }
                meet == *s
            })
            .unwrap()
    }

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        let expected = [2, 5, 16, 67, 374, 2825];
        for n in 1..=6 {
            let total: u64 = (0..=n).map(|k| gaussian_binomial(n, k)).sum();
            assert_eq!(total, expected[n as usize - 1]);
            let list = subspaces(n).unwrap();
            assert_eq!(list.len() as u64, total, "n = {n}");
            let distinct: HashSet<u64> = list.iter().map(Gf2Subspace::mask).collect();
            assert_eq!(distinct.len(), list.len());
            for k in 0..=n {
                let count = list.iter().filter(|w| w.dim() == k).count() as u64;
                assert_eq!(count, gaussian_binomial(n, k));
            }
        }
        assert!(subspaces(7).is_err());
        assert!(subspaces(0).is_err());
    }

    #[test]
    fn canonical_form_is_independent_of_spanning_set() {
        let v = |b| BitTuple::new(3, b).unwrap();
        let a = Gf2Subspace::span(3, &[v(0b110), v(0b011)]).unwrap();
        let b = Gf2Subspace::span(3, &[v(0b101), v(0b110), v(0b011)]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
        assert!(a.contains(&v(0b101)));
        assert!(!a.contains(&v(0b100)));
    }

    #[test]
    fn codim_examples() {
        for n in 1..=5 {
            assert_eq!(codim_set(&Gf2Subset::full(n).unwrap()).unwrap(), 0);
            assert_eq!(codim_set(&Gf2Subset::empty(n).unwrap()).unwrap(), 0);
            let a = BitTuple::new(n, 1).unwrap();
            assert_eq!(codim_set(&Gf2Subset::from_points(n, &[a]).unwrap()).unwrap(), n);
        }
        let vee3 = support(&BooleanFunction::vee_n(3).unwrap());
        assert_eq!(codim_set(&vee3).unwrap(), 3);
        assert_eq!(support(&BooleanFunction::beta(7).unwrap()).len(), 29);
    }

    #[test]
    fn codim_matches_search_exhaustively() {
        for n in 1..=3 {
            for s in all_subsets(n) {
                assert_eq!(codim_set(&s).unwrap(), codim_by_search(&s), "{:?}", s.points());
            }
        }
    }

    #[test]
    fn icodim_matches_literal_definition() {
        for n in 1..=3 {
            for s in all_subsets(n) {
                assert_eq!(icodim_set(&s).unwrap(), icodim_by_search(&s), "{:?}", s.points());
            }
        }
    }

    #[test]
    fn icodim_never_exceeds_codim_at_four() {
        for s in all_subsets(4) {
            assert!(icodim_set(&s).unwrap() <= codim_set(&s).unwrap());
        }
    }

    #[test]
    fn vee_has_full_icodim() {
        for n in 1..=5 {
            let vee = BooleanFunction::vee_n(n).unwrap();
            assert_eq!(icodim_set(&support(&vee)).unwrap(), n);
            assert_eq!(codim_set(&support(&vee)).unwrap(), n);
            assert!(in_icd(&vee, n).unwrap());
            assert!(!in_icd(&vee, n - 1).unwrap());
        }
    }

    #[test]
    fn affine_hyperplanes_and_small_icd_classes() {
        let xor = BooleanFunction::named("xor").unwrap();
        assert!(in_icd(&xor, 1).unwrap());
        assert!(in_aff(&xor).unwrap());
        assert!(in_aff(&BooleanFunction::constant(3, false).unwrap()).unwrap());
        for n in 1..=4 {
            for f in crate::function::all_functions(n).unwrap() {
                assert_eq!(in_icd(&f, 0).unwrap(), f.is_constant().is_some(), "{f}");
                assert_eq!(in_icd(&f, 1).unwrap(), in_aff(&f).unwrap(), "{f}");
            }
        }
    }

    #[test]
    fn intersection_of_hyperplanes_is_the_origin() {
        for n in 1..=5 {
            let mut meet = Gf2Subset::full(n).unwrap();
            for w in subspaces(n).unwrap().iter().filter(|w| w.codim() == 1) {
                meet = meet.intersection(&w.members()).unwrap();
            }
            assert_eq!(meet, Gf2Subspace::zero(n).unwrap().members());
            assert_eq!(codim_set(&meet).unwrap(), n);
        }
    }

    #[test]
    fn preimage_agrees_with_pointwise_definition() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let m = rng.random_range(1..=4);
            let n = rng.random_range(1..=4);
            let f = AffineMap::random(m, n, &mut rng).unwrap();
            let s = Gf2Subset::from_mask(n, rng.random::<u64>() & full_mask(n)).unwrap();
            let pre = preimage(&f, &s).unwrap();
            for x in BitTuple::all(m).unwrap() {
                assert_eq!(pre.contains(&x), s.contains(&f.apply(&x).unwrap()));
            }
        }
        let s = Gf2Subset::from_mask(3, 0b1011_0010).unwrap();
        assert_eq!(preimage(&AffineMap::identity(3).unwrap(), &s).unwrap(), s);
        let f = AffineMap::random(2, 3, &mut rng).unwrap();
        assert!(preimage(&f, &Gf2Subset::empty(3).unwrap()).unwrap().is_empty());
    }

    #[test]
    fn composition_of_affine_maps() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let (a, b, c) = (rng.random_range(1..=4), rng.random_range(1..=4), rng.random_range(1..=4));
            let f = AffineMap::random(a, b, &mut rng).unwrap();
            let g = AffineMap::random(b, c, &mut rng).unwrap();
            let gf = g.compose(&f).unwrap();
            for x in BitTuple::all(a).unwrap() {
                assert_eq!(gf.apply(&x).unwrap(), g.apply(&f.apply(&x).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn translation_moves_points() {
        let a = BitTuple::new(3, 0b101).unwrap();
        let t = AffineMap::translation(&a).unwrap();
        assert_eq!(t.apply(&a).unwrap(), BitTuple::zeros(3).unwrap());
        let rows = vec![vec![true, false], vec![true, true], vec![false, true]];
        let f = AffineMap::new(2, &rows, BitTuple::new(3, 0b001).unwrap()).unwrap();
        assert_eq!(f.apply(&BitTuple::new(2, 0b11).unwrap()).unwrap(), BitTuple::new(3, 0b100).unwrap());
        let cols = [BitTuple::new(3, 0b110).unwrap(), BitTuple::new(3, 0b011).unwrap()];
        assert_eq!(AffineMap::from_columns(&cols, BitTuple::new(3, 0b001).unwrap()).unwrap(), f);
    }
}
