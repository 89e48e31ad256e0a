use std::sync::Arc;

use cell_complex::CellComplex;

/// A cell complex together with the closure of every cell, shared by all
/// sheaves living on it.
#[derive(Debug)]
pub struct CellSpace {
    complex: Arc<CellComplex>,
    closures: Vec<Vec<u32>>,
}

impl CellSpace {
    pub fn new(complex: Arc<CellComplex>) -> Arc<Self> {
        let mut closures: Vec<Vec<u32>> = vec![Vec::new(); complex.len()];
        for &c in complex.cells_by_dim() {
            let mut cl = vec![c];
            for &(f, _) in complex.facets(c as usize) {
                cl.extend_from_slice(&closures[f as usize]);
            }
            cl.sort_unstable();
            cl.dedup();
            closures[c as usize] = cl;
        }
        Arc::new(CellSpace { complex, closures })
    }

    pub fn complex(&self) -> &Arc<CellComplex> {
        &self.complex
    }

    /// Sorted closed cell.
    pub fn closure(&self, c: u32) -> &[u32] {
        &self.closures[c as usize]
    }

    pub fn is_face(&self, a: u32, b: u32) -> bool {
        self.closures[b as usize].binary_search(&a).is_ok()
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }
}
