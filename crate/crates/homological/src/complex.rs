//! Bounded cochain complexes and degree-zero maps between them.

use exact_linalg::{Field, SparseMatrix, SparseVec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::HomError;

/// Above this many stored entries `d∘d = 0` is checked on random vectors
/// instead of by forming the product.
const FULL_CHECK_NNZ: usize = 200_000;
const RANDOM_TRIALS: usize = 8;

/// A bounded cochain complex `C^lo → … → C^hi` (cohomological grading).
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<F: Field> {
    field: F,
    lo: i32,
    dims: Vec<usize>,
    /// `diffs[i] : C^{lo+i} → C^{lo+i+1}`; the last one has zero rows.
    diffs: Vec<SparseMatrix<F>>,
}

impl<F: Field> ChainComplex<F> {
    /// Builds a complex from its dimensions and the interior differentials
    /// `d^lo, …, d^{hi-1}` (one fewer than `dims`).
    pub fn new(field: F, lo: i32, dims: Vec<usize>, interior: Vec<SparseMatrix<F>>) -> Result<Self, HomError> {
        let c = Self::new_unchecked(field, lo, dims, interior)?;
        c.check_dd()?;
        Ok(c)
    }

    /// Like [`ChainComplex::new`] but only checks shapes.
    pub fn new_unchecked(field: F, lo: i32, dims: Vec<usize>, interior: Vec<SparseMatrix<F>>) -> Result<Self, HomError> {
        if dims.is_empty() {
            if !interior.is_empty() {
                return Err(HomError::Shape("differentials without spaces".into()));
            }
            return Ok(ChainComplex { field, lo: 0, dims, diffs: Vec::new() });
        }
        if interior.len() + 1 != dims.len() {
            return Err(HomError::Shape(format!("{} spaces need {} differentials, got {}", dims.len(), dims.len() - 1, interior.len())));
        }
        for (i, d) in interior.iter().enumerate() {
            if d.cols() != dims[i] || d.rows() != dims[i + 1] {
                return Err(HomError::Shape(format!(
                    "d^{} is {}x{}, expected {}x{}",
                    lo + i as i32,
                    d.rows(),
                    d.cols(),
                    dims[i + 1],
                    dims[i]
                )));
            }
        }
        let mut diffs = interior;
        diffs.push(SparseMatrix::zeros(field.clone(), 0, *dims.last().unwrap()));
        Ok(ChainComplex { field, lo, dims, diffs })
    }

    pub fn zero(field: F) -> Self {
        ChainComplex { field, lo: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    /// `K^dim` concentrated in one degree.
    pub fn concentrated(field: F, degree: i32, dim: usize) -> Self {
        Self::new_unchecked(field, degree, vec![dim], Vec::new()).expect("valid shape")
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// Lowest stored degree (0 for the empty complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest stored degree, inclusive; `lo - 1` when empty.
    pub fn hi(&self) -> i32 {
        self.lo + self.dims.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo()..=self.hi()
    }

    pub fn dim(&self, k: i32) -> usize {
        self.index(k).map_or(0, |i| self.dims[i])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn index(&self, k: i32) -> Option<usize> {
        if k < self.lo || k > self.hi() {
            None
        } else {
            Some((k - self.lo) as usize)
        }
    }

    /// The differential `d^k : C^k → C^{k+1}` (a zero matrix of the right shape outside the range).
    pub fn d(&self, k: i32) -> SparseMatrix<F> {
        match self.index(k) {
            Some(i) if k < self.hi() => self.diffs[i].clone(),
            _ => SparseMatrix::zeros(self.field.clone(), self.dim(k + 1), self.dim(k)),
        }
    }

    /// Borrowing variant of [`ChainComplex::d`] for stored interior degrees.
    pub fn d_ref(&self, k: i32) -> Option<&SparseMatrix<F>> {
        match self.index(k) {
            Some(i) if k < self.hi() => Some(&self.diffs[i]),
            _ => None,
        }
    }

    /// Applies `d^k` to a sparse vector of `C^k`.
    pub fn apply_d(&self, k: i32, v: &[(u32, F::Elem)]) -> SparseVec<F::Elem> {
        match self.d_ref(k) {
            Some(d) => d.mul_vec(v),
            None => Vec::new(),
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|k| if k.rem_euclid(2) == 0 { self.dim(k) as i64 } else { -(self.dim(k) as i64) }).sum()
    }

    /// Drops zero spaces at both ends.
    pub fn trimmed(&self) -> Self {
        let first = self.dims.iter().position(|&d| d > 0);
        let last = self.dims.iter().rposition(|&d| d > 0);
        match (first, last) {
            (Some(a), Some(b)) => ChainComplex {
                field: self.field.clone(),
                lo: self.lo + a as i32,
                dims: self.dims[a..=b].to_vec(),
                diffs: {
                    let mut v = self.diffs[a..b].to_vec();
                    v.push(SparseMatrix::zeros(self.field.clone(), 0, self.dims[b]));
                    v
                },
            },
            _ => Self::zero(self.field.clone()),
        }
    }

    /// Verifies `d^{k+1} ∘ d^k = 0` in every degree.
    pub fn check_dd(&self) -> Result<(), HomError> {
        let nnz: usize = self.diffs.iter().map(|d| d.nnz()).sum();
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for k in self.degrees() {
            let (Some(a), Some(b)) = (self.d_ref(k), self.d_ref(k + 1)) else { continue };
            if nnz <= FULL_CHECK_NNZ {
                if !b.mul(a).map_err(|e| HomError::Shape(e.to_string()))?.is_zero() {
                    return Err(HomError::NotAComplex(k));
                }
            } else {
                for _ in 0..RANDOM_TRIALS {
                    let v: SparseVec<F::Elem> = (0..a.cols())
                        .filter_map(|i| {
                            let x = self.field.from_i64(rng.gen_range(0..1 << 20));
                            (!self.field.is_zero(&x)).then_some((i as u32, x))
                        })
                        .collect();
                    if !b.mul_vec(&a.mul_vec(&v)).is_empty() {
                        return Err(HomError::NotAComplex(k));
                    }
                }
            }
        }
        Ok(())
    }

    /// `C[k]`: degree `i` holds `C^{i+k}`, differential times `(-1)^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.dims.is_empty() {
            return self.clone();
        }
        let diffs = if k.rem_euclid(2) == 0 {
            self.diffs.clone()
        } else {
            let m1 = self.field.from_i64(-1);
            self.diffs.iter().map(|d| d.scaled(&m1)).collect()
        };
        ChainComplex { field: self.field.clone(), lo: self.lo - k, dims: self.dims.clone(), diffs }
    }
}

/// A degree-zero cochain map `f : C → D`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexMap<F: Field> {
    pub source: ChainComplex<F>,
    pub target: ChainComplex<F>,
    /// `components[i] : C^{lo_C + i} → D^{lo_C + i}`.
    components: Vec<SparseMatrix<F>>,
}

impl<F: Field> ComplexMap<F> {
    /// Components are indexed by the source degrees `lo..=hi`; commutation is checked.
    pub fn new(source: ChainComplex<F>, target: ChainComplex<F>, components: Vec<SparseMatrix<F>>) -> Result<Self, HomError> {
        if components.len() != source.dims.len() {
            return Err(HomError::Shape("one component per source degree".into()));
        }
        for (i, c) in components.iter().enumerate() {
            let k = source.lo + i as i32;
            if c.cols() != source.dim(k) || c.rows() != target.dim(k) {
                return Err(HomError::Shape(format!("component in degree {k} has wrong shape")));
            }
        }
        let f = ComplexMap { source, target, components };
        for k in f.source.degrees() {
            let lhs = f.target.d(k).mul(&f.component(k)).map_err(|e| HomError::Shape(e.to_string()))?;
            let rhs = f.component(k + 1).mul(&f.source.d(k)).map_err(|e| HomError::Shape(e.to_string()))?;
            if lhs != rhs {
                return Err(HomError::NotAChainMap(k));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &ChainComplex<F>) -> Self {
        let comps = c.degrees().map(|k| SparseMatrix::identity(c.field.clone(), c.dim(k))).collect();
        ComplexMap { source: c.clone(), target: c.clone(), components: comps }
    }

    pub fn zero(source: &ChainComplex<F>, target: &ChainComplex<F>) -> Self {
        let comps = source
            .degrees()
            .map(|k| SparseMatrix::zeros(source.field.clone(), target.dim(k), source.dim(k)))
            .collect();
        ComplexMap { source: source.clone(), target: target.clone(), components: comps }
    }

    pub fn component(&self, k: i32) -> SparseMatrix<F> {
        match self.source.index(k) {
            Some(i) => self.components[i].clone(),
            None => SparseMatrix::zeros(self.source.field.clone(), self.target.dim(k), self.source.dim(k)),
        }
    }
}
