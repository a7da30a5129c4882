//! Exact sparse elimination over the scalar field: reduced row echelon
//! subspaces and kernels of linear maps given by images.

use std::collections::BTreeMap;

use crate::error::Result;
use crate::par;
use crate::pbw::PbwMonomial;
use crate::scalars::Scalar;
use crate::vector::ModuleVector;
use crate::verma::Reducer;

pub type SparseVec<K> = BTreeMap<K, Scalar>;

fn axpy<K: Ord + Clone>(dst: &mut SparseVec<K>, c: &Scalar, src: &SparseVec<K>) {
    if c.is_zero() {
        return;
    }
    for (k, x) in src {
        let p = c * x;
        match dst.get_mut(k) {
            Some(y) => {
                *y = &*y + &p;
                if y.is_zero() {
                    dst.remove(k);
                }
            }
            None => {
                if !p.is_zero() {
                    dst.insert(k.clone(), p);
                }
            }
        }
    }
}

fn scale<K: Ord + Clone>(v: &mut SparseVec<K>, c: &Scalar) {
    for x in v.values_mut() {
        *x = &*x * c;
    }
}

/// Reduced row echelon form. The pivot of a row is its largest key and the
/// pivot entry is 1; no row has a nonzero entry at another row's pivot.
/// Each row carries a record of how it was formed from the inserted vectors.
#[derive(Clone, Debug)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (SparseVec<K>, SparseVec<usize>)>,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl DoubleEndedIterator<Item = &K> {
        self.rows.keys()
    }

    pub fn rows(&self) -> impl DoubleEndedIterator<Item = (&K, &SparseVec<K>)> {
        self.rows.iter().map(|(k, (r, _))| (k, r))
    }

    fn reduce_tracked(&self, v: &mut SparseVec<K>, t: &mut SparseVec<usize>) {
        let hits: Vec<K> = v
            .keys()
            .filter(|k| self.rows.contains_key(*k))
            .cloned()
            .collect();
        for k in hits {
            let Some(c) = v.get(&k).cloned() else {
                continue;
            };
            let (row, tr) = &self.rows[&k];
            let neg = -&c;
            axpy(v, &neg, row);
            axpy(t, &neg, tr);
        }
    }

    pub fn reduce(&self, v: &SparseVec<K>) -> SparseVec<K> {
        let mut v = v.clone();
        let mut t = SparseVec::new();
        self.reduce_tracked(&mut v, &mut t);
        v
    }

    /// Inserts vector number `tag`. Returns the dependency relation among the
    /// inserted vectors when `v` is already in the span.
    pub fn insert(&mut self, v: SparseVec<K>, tag: usize) -> Option<SparseVec<usize>> {
        let mut v = v;
        let mut t = SparseVec::new();
        t.insert(tag, Scalar::one());
        self.reduce_tracked(&mut v, &mut t);
        let Some((pivot, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return Some(t);
        };
        let inv = c.inv().expect("pivot is nonzero");
        scale(&mut v, &inv);
        scale(&mut t, &inv);
        for (row, tr) in self.rows.values_mut() {
            if let Some(x) = row.get(&pivot).cloned() {
                let neg = -&x;
                axpy(row, &neg, &v);
                axpy(tr, &neg, &t);
            }
        }
        self.rows.insert(pivot, (v, t));
        None
    }
}

/// Relations `Σ c_j e_j` with `Σ c_j images[j] = 0`, a basis of the kernel.
pub fn kernel_relations<K: Ord + Clone>(images: Vec<SparseVec<K>>) -> Vec<SparseVec<usize>> {
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for (j, img) in images.into_iter().enumerate() {
        if let Some(rel) = ech.insert(img, j) {
            out.push(rel);
        }
    }
    out
}

fn to_sparse(v: &ModuleVector) -> SparseVec<PbwMonomial> {
    v.terms().map(|(m, c)| (m.clone(), c.clone())).collect()
}

fn from_sparse(level2: i32, v: SparseVec<PbwMonomial>) -> ModuleVector {
    ModuleVector::from_terms(level2, v).expect("same level")
}

/// A subspace of one level component in reduced echelon form.
#[derive(Clone, Debug)]
pub struct SubspaceBasis {
    level2: i32,
    ech: Echelon<PbwMonomial>,
    count: usize,
}

impl SubspaceBasis {
    pub fn new(level2: i32) -> Self {
        SubspaceBasis {
            level2,
            ech: Echelon::new(),
            count: 0,
        }
    }

    /// Echelon form of the span of `vs`.
    pub fn span(level2: i32, vs: &[ModuleVector]) -> Self {
        let mut b = SubspaceBasis::new(level2);
        for v in vs {
            b.insert(v);
        }
        b
    }

    pub fn level2(&self) -> i32 {
        self.level2
    }

    pub fn dim(&self) -> usize {
        self.ech.rank()
    }

    /// Adds `v`; returns true if the dimension grew.
    pub fn insert(&mut self, v: &ModuleVector) -> bool {
        debug_assert!(v.is_zero() || v.level2() == self.level2);
        self.count += 1;
        self.ech.insert(to_sparse(v), self.count).is_none()
    }

    pub fn reduce_vec(&self, v: &ModuleVector) -> ModuleVector {
        from_sparse(v.level2(), self.ech.reduce(&to_sparse(v)))
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.reduce_vec(v).is_zero()
    }

    /// Basis vectors, each normalized to 1 on its pivot, by decreasing pivot.
    pub fn basis(&self) -> Vec<ModuleVector> {
        self.ech
            .rows()
            .rev()
            .map(|(_, r)| from_sparse(self.level2, r.clone()))
            .collect()
    }

    pub fn pivots(&self) -> Vec<PbwMonomial> {
        self.ech.pivots().rev().cloned().collect()
    }

    pub fn is_pivot(&self, m: &PbwMonomial) -> bool {
        self.ech.rows.contains_key(m)
    }

    /// Same subspace test: equal dimension and mutual containment.
    pub fn same_span(&self, o: &SubspaceBasis) -> bool {
        self.dim() == o.dim() && o.basis().iter().all(|v| self.contains(v))
    }
}

impl Reducer for SubspaceBasis {
    fn reduce(&self, v: &ModuleVector) -> Result<ModuleVector> {
        Ok(self.reduce_vec(v))
    }
}

/// A linear stage: each domain vector is sent to a list of images.
pub type Stage<'a> = dyn Fn(&ModuleVector) -> Result<Vec<ModuleVector>> + Sync + Send + 'a;

/// Kernel of the combined map, computed stage by stage: each stage is
/// solved on the kernel of the previous ones. Returns the kernel in reduced
/// echelon form on the domain monomials.
pub fn kernel(
    level2: i32,
    domain: &[ModuleVector],
    stages: &[&Stage<'_>],
) -> Result<SubspaceBasis> {
    let mut cur: Vec<ModuleVector> = domain.to_vec();
    for stage in stages {
        if cur.is_empty() {
            break;
        }
        let imgs = par::try_map(&cur, |v| stage(v))?;
        let keyed: Vec<SparseVec<(usize, PbwMonomial)>> = imgs
            .into_iter()
            .map(|list| {
                let mut s = SparseVec::new();
                for (i, w) in list.iter().enumerate() {
                    for (m, c) in w.terms() {
                        s.insert((i, m.clone()), c.clone());
                    }
                }
                s
            })
            .collect();
        let rels = kernel_relations(keyed);
        cur = rels
            .into_iter()
            .map(|rel| {
                let mut v = ModuleVector::zero(level2);
                for (j, c) in rel {
                    v.axpy(&c, &cur[j]);
                }
                v
            })
            .collect();
    }
    Ok(SubspaceBasis::span(level2, &cur))
}
