//! The `sl_r` action, invariance checks and clasped subspaces.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use super::{add_to, bit, full, InvariantFunctional, TensorBasisIndex, TensorVector};
use crate::clasp::ClaspSequence;
use crate::error::{Error, Result};
use crate::words::Rank;

/// Chevalley generators, indexed from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Generator {
    E(u8),
    F(u8),
}

impl Generator {
    pub fn all(r: Rank) -> Vec<Generator> {
        (1..r.get()).flat_map(|k| [Generator::E(k), Generator::F(k)]).collect()
    }

    /// Image of one wedge basis vector. Swapping `k` and `k+1` when only one
    /// is present keeps the sorted position, so no sign appears.
    fn on_mask(self, m: u8) -> Option<u8> {
        let (from, to) = match self {
            Generator::E(k) => (k + 1, k),
            Generator::F(k) => (k, k + 1),
        };
        (m & bit(from) != 0 && m & bit(to) == 0).then(|| m ^ bit(from) ^ bit(to))
    }

    fn transpose(self) -> Generator {
        match self {
            Generator::E(k) => Generator::F(k),
            Generator::F(k) => Generator::E(k),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::E(k) => write!(f, "e_{k}"),
            Generator::F(k) => write!(f, "f_{k}"),
        }
    }
}

/// Leibniz action on a tensor.
pub fn chevalley_act(g: Generator, v: &TensorVector) -> TensorVector {
    let mut out = TensorVector::zero(v.r, v.ty.clone());
    for (idx, &c) in &v.coeffs {
        for j in 0..idx.0.len() {
            if let Some(m) = g.on_mask(idx.0[j]) {
                let mut k = idx.clone();
                k.0[j] = m;
                out.add(k, c);
            }
        }
    }
    out
}

/// `F ∘ g` for every generator vanishes. Since `(F∘e_k)(x) = F(e_k x)`,
/// the pulled back coefficient at `x` gathers `F` over the images of `x`,
/// which are found by applying the transposed generator to `F`'s support.
pub fn is_invariant(f: &InvariantFunctional) -> bool {
    Generator::all(f.r).into_iter().all(|g| {
        let mut pulled: BTreeMap<TensorBasisIndex, i64> = BTreeMap::new();
        for (y, &c) in &f.coeffs {
            for j in 0..y.0.len() {
                if let Some(m) = g.transpose().on_mask(y.0[j]) {
                    let mut x = y.clone();
                    x.0[j] = m;
                    add_to(&mut pulled, x, c);
                }
            }
        }
        pulled.is_empty()
    })
}

/// `dim V(λ)` for `λ = Σ ω_{a_j}`, by the Weyl formula.
pub fn weyl_dimension(r: Rank, ty: &[u8]) -> u128 {
    let r = r.usize();
    let lam: Vec<i64> = (1..=r as u8).map(|i| ty.iter().filter(|&&a| a >= i).count() as i64).collect();
    let (mut num, mut den) = (1u128, 1u128);
    for i in 0..r {
        for j in i + 1..r {
            num *= (lam[i] - lam[j] + (j - i) as i64) as u128;
            den *= (j - i) as u128;
        }
    }
    num / den
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Vectors of one weight space in echelon form: each is zero at the
/// pivots of the earlier ones.
#[derive(Default)]
struct Echelon {
    rows: Vec<(TensorBasisIndex, BTreeMap<TensorBasisIndex, i128>)>,
}

impl Echelon {
    fn insert(&mut self, mut v: BTreeMap<TensorBasisIndex, i128>) -> Option<BTreeMap<TensorBasisIndex, i128>> {
        for (p, w) in &self.rows {
            let Some(&a) = v.get(p) else { continue };
            let b = w[p];
            let mut next: BTreeMap<TensorBasisIndex, i128> = BTreeMap::new();
            for (k, &x) in &v {
                add_to(&mut next, k.clone(), x * b);
            }
            for (k, &y) in w {
                add_to(&mut next, k.clone(), -y * a);
            }
            v = next;
        }
        let g = v.values().fold(0, |g, &x| gcd(g, x));
        if g == 0 {
            return None;
        }
        v.values_mut().for_each(|x| *x /= g);
        let p = v.keys().next().expect("nonzero vector").clone();
        self.rows.push((p, v.clone()));
        Some(v)
    }
}

/// A basis of `V(Σ ω_{a_j})` inside `⊗ Λ^{a_j} V`: the highest weight
/// vector saturated under the lowering operators.
pub fn irreducible_basis(r: Rank, ty: &[u8], cap: usize) -> Result<Vec<TensorVector>> {
    let dim = weyl_dimension(r, ty);
    if dim > cap as u128 {
        return Err(Error::DimensionCap(cap));
    }
    let top = TensorBasisIndex(ty.iter().map(|&a| full(a as usize)).collect());
    let mut spaces: HashMap<Vec<u32>, Echelon> = HashMap::new();
    let mut basis = Vec::new();
    let hw = TensorVector::basis(r, ty.to_vec(), top.clone());
    spaces.entry(top.content(r.usize())).or_default().insert(hw.coeffs.clone());
    let mut queue = vec![hw];
    while let Some(v) = queue.pop() {
        for k in 1..r.get() {
            let w = chevalley_act(Generator::F(k), &v);
            let Some(first) = w.coeffs.keys().next() else { continue };
            let space = spaces.entry(first.content(r.usize())).or_default();
            if let Some(c) = space.insert(w.coeffs) {
                queue.push(TensorVector { r, ty: ty.to_vec(), coeffs: c });
            }
        }
        basis.push(v);
        if basis.len() as u128 > dim {
            return Err(Error::Saturation(format!("{ty:?} spans more than its Weyl dimension {dim}")));
        }
    }
    if basis.len() as u128 != dim {
        return Err(Error::Saturation(format!("{ty:?} spans {} of Weyl dimension {dim}", basis.len())));
    }
    Ok(basis)
}

/// `⊗ V(wt(c_i))` as one irreducible basis per clasp.
#[derive(Debug, Clone)]
pub struct ClaspedSubspace {
    pub r: Rank,
    pub clasps: ClaspSequence,
    pub factors: Vec<Arc<Vec<TensorVector>>>,
}

impl ClaspedSubspace {
    pub fn dim(&self) -> u128 {
        self.factors.iter().map(|f| f.len() as u128).product()
    }

    /// The product basis, expanded. Refuses above `cap` vectors.
    pub fn spanning_set(&self, cap: usize) -> Result<Vec<TensorVector>> {
        if self.dim() > cap as u128 {
            return Err(Error::DimensionCap(cap));
        }
        let ty = self.clasps.type_of().to_vec();
        let mut out = vec![TensorVector::basis(self.r, Vec::new(), TensorBasisIndex(Vec::new()))];
        for f in &self.factors {
            let mut next = Vec::with_capacity(out.len() * f.len());
            for a in &out {
                for b in f.iter() {
                    let mut v = TensorVector::zero(self.r, Vec::new());
                    for (ka, &ca) in &a.coeffs {
                        for (kb, &cb) in &b.coeffs {
                            let mut k = ka.0.clone();
                            k.extend(&kb.0);
                            v.coeffs.insert(TensorBasisIndex(k), ca * cb);
                        }
                    }
                    next.push(v);
                }
            }
            out = next;
        }
        out.iter_mut().for_each(|v| v.ty = ty.clone());
        Ok(out)
    }
}

/// Memo of irreducible bases keyed by rank and clasp type.
#[derive(Debug, Default)]
pub struct IrrepCache {
    map: HashMap<(u8, Vec<u8>), Arc<Vec<TensorVector>>>,
}

impl IrrepCache {
    pub fn get(&mut self, r: Rank, ty: &[u8], cap: usize) -> Result<Arc<Vec<TensorVector>>> {
        if let Some(b) = self.map.get(&(r.get(), ty.to_vec())) {
            return Ok(b.clone());
        }
        let b = Arc::new(irreducible_basis(r, ty, cap)?);
        self.map.insert((r.get(), ty.to_vec()), b.clone());
        Ok(b)
    }
}

pub const DEFAULT_CAP: usize = 100_000;

pub fn clasped_subspace(c: &ClaspSequence, r: Rank, cache: &mut IrrepCache) -> Result<ClaspedSubspace> {
    let factors = (0..c.len()).map(|i| cache.get(r, c.clasp(i), DEFAULT_CAP)).collect::<Result<_>>()?;
    Ok(ClaspedSubspace { r, clasps: c.clone(), factors })
}

/// Coordinates of `π_C(F)`: the value of `F` on each product basis vector,
/// keyed by the per-clasp basis positions. Clasps are contracted one at a
/// time so only weight-compatible partial indices are ever formed.
pub fn project(f: &InvariantFunctional, s: &ClaspedSubspace) -> Result<BTreeMap<Vec<u32>, i128>> {
    if f.ty != s.clasps.type_of() {
        return Err(Error::ClaspMismatch(format!("functional type {:?} vs clasps {:?}", f.ty, s.clasps.type_of())));
    }
    let mut state: HashMap<(Vec<u32>, Vec<u8>), i128> =
        f.coeffs.iter().map(|(k, &c)| ((Vec::new(), k.0.clone()), c as i128)).collect();
    for (i, basis) in s.factors.iter().enumerate() {
        let width = s.clasps.sizes()[i];
        let mut by_head: HashMap<&[u8], Vec<(u32, i128)>> = HashMap::new();
        for (pos, v) in basis.iter().enumerate() {
            for (k, &c) in &v.coeffs {
                by_head.entry(&k.0[..]).or_default().push((pos as u32, c));
            }
        }
        let mut next: HashMap<(Vec<u32>, Vec<u8>), i128> = HashMap::new();
        for ((done, rest), c) in state {
            let Some(hits) = by_head.get(&rest[..width]) else { continue };
            for &(pos, b) in hits {
                let mut d = done.clone();
                d.push(pos);
                *next.entry((d, rest[width..].to_vec())).or_default() += c * b;
            }
        }
        next.retain(|_, c| *c != 0);
        state = next;
    }
    Ok(state.into_iter().map(|((d, _), c)| (d, c)).collect())
}

/// `F` vanishes on `⊗ V(wt(c_i))`.
pub fn in_kernel(f: &InvariantFunctional, c: &ClaspSequence) -> Result<bool> {
    in_kernel_cached(f, c, &mut IrrepCache::default())
}

pub fn in_kernel_cached(f: &InvariantFunctional, c: &ClaspSequence, cache: &mut IrrepCache) -> Result<bool> {
    Ok(project(f, &clasped_subspace(c, f.r, cache)?)?.is_empty())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vec1(r: Rank, ty: &[u8], masks: &[u8]) -> TensorVector {
        TensorVector::basis(r, ty.to_vec(), TensorBasisIndex(masks.to_vec()))
    }

    #[test]
    fn defining_action() {
        let r = Rank::FOUR;
        assert_eq!(chevalley_act(Generator::F(1), &vec1(r, &[1], &[0b1])), vec1(r, &[1], &[0b10]));
        assert_eq!(chevalley_act(Generator::E(1), &vec1(r, &[1], &[0b10])), vec1(r, &[1], &[0b1]));
        assert!(chevalley_act(Generator::F(1), &vec1(r, &[2], &[0b11])).is_zero());
    }

    #[test]
    fn sl2_triples_on_weight_vectors() {
        let r = Rank::FOUR;
        let ty = [1, 2, 3];
        for a in 1..16u8 {
            for b in 1..16u8 {
                for c in 1..16u8 {
                    if a.count_ones() != 1 || b.count_ones() != 2 || c.count_ones() != 3 {
                        continue;
                    }
                    let v = vec1(r, &ty, &[a, b, c]);
                    let cont = v.coeffs.keys().next().unwrap().content(4);
                    for k in 1..4u8 {
                        let ef = chevalley_act(Generator::E(k), &chevalley_act(Generator::F(k), &v));
                        let fe = chevalley_act(Generator::F(k), &chevalley_act(Generator::E(k), &v));
                        let h = cont[k as usize - 1] as i128 - cont[k as usize] as i128;
                        let mut diff = ef.clone();
                        for (i, &x) in &fe.coeffs {
                            diff.add(i.clone(), -x);
                        }
                        let mut want = TensorVector::zero(r, ty.to_vec());
                        if h != 0 {
                            want.add(TensorBasisIndex(vec![a, b, c]), h);
                        }
                        assert_eq!(diff.coeffs, want.coeffs);
                    }
                }
            }
        }
    }

    #[test]
    fn weyl_dimensions() {
        assert_eq!(weyl_dimension(Rank::FOUR, &[1, 1]), 10);
        assert_eq!(weyl_dimension(Rank::FOUR, &[2]), 6);
        assert_eq!(weyl_dimension(Rank::FOUR, &[1, 3]), 15);
        assert_eq!(weyl_dimension(Rank::THREE, &[1, 1, 1]), 10);
    }

    #[test]
    fn symmetric_square() {
        let b = irreducible_basis(Rank::FOUR, &[1, 1], 100).unwrap();
        assert_eq!(b.len(), 10);
        assert!(matches!(irreducible_basis(Rank::FOUR, &[1, 1], 5), Err(Error::DimensionCap(5))));
    }

    #[test]
    fn coordinate_functional_is_not_invariant() {
        let mut f = InvariantFunctional::zero(Rank::FOUR, vec![1, 3]);
        assert!(is_invariant(&f));
        f.coeffs.insert(TensorBasisIndex(vec![0b1, 0b1110]), 1);
        assert!(!is_invariant(&f));
    }
}
