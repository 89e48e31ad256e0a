use exact_linalg::*;
use proptest::prelude::*;
use std::collections::HashSet;

fn small_matrix(p: u32) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(0i64..p as i64, c), r)
    })
}

/// Independent rank oracle over F2: size of the column span by enumeration.
fn brute_rank_f2(rows: &[Vec<i64>]) -> usize {
    let r = rows.len();
    let c = rows[0].len();
    let cols: Vec<u32> = (0..c)
        .map(|j| (0..r).fold(0u32, |acc, i| acc | (((rows[i][j] & 1) as u32) << i)))
        .collect();
    let mut span = HashSet::new();
    for mask in 0u32..(1 << c) {
        let v = (0..c).filter(|j| mask >> j & 1 == 1).fold(0u32, |a, j| a ^ cols[j]);
        span.insert(v);
    }
    span.len().trailing_zeros() as usize
}

const SPARSE: LinalgConfig = LinalgConfig { dense_threshold: 0 };

proptest! {
    #[test]
    fn rank_matches_enumeration_oracle(rows in small_matrix(2)) {
        let m = SparseMatrix::from_i64_rows(PrimeField::F2, &rows).unwrap();
        let want = brute_rank_f2(&rows);
        prop_assert_eq!(rank(&m), want);
        prop_assert_eq!(rank_with(&m, &SPARSE), want);
        prop_assert_eq!(rank(&m.transpose()), want);
    }

    #[test]
    fn kernel_vectors_are_annihilated(rows in small_matrix(5)) {
        let f = PrimeField::new(5).unwrap();
        let m = SparseMatrix::from_i64_rows(f, &rows).unwrap();
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len() + rank(&m), m.cols());
        prop_assert_eq!(&k, &kernel_basis_with(&m, &SPARSE));
        for v in &k {
            prop_assert!(m.mul_dense(v).unwrap().iter().all(|x| *x == 0));
        }
        let km = SparseMatrix::from_dense(f, &k.to_vec());
        if let Ok(km) = km { prop_assert_eq!(rank(&km), k.len()); }
    }

    #[test]
    fn solve_reproduces_image(rows in small_matrix(3), seed in proptest::collection::vec(0i64..3, 6)) {
        let f = PrimeField::new(3).unwrap();
        let m = SparseMatrix::from_i64_rows(f, &rows).unwrap();
        let x0: Vec<u32> = (0..m.cols()).map(|i| f.from_i64(seed[i])).collect();
        let b = m.mul_dense(&x0).unwrap();
        let x = solve(&m, &b).unwrap();
        prop_assert_eq!(m.mul_dense(&x).unwrap(), b.clone());
        prop_assert_eq!(x, solve_with(&m, &b, &SPARSE).unwrap());
    }

    #[test]
    fn rational_dump_roundtrip(rows in small_matrix(7), den in 1i64..5) {
        let q = Rationals;
        let dense: Vec<Vec<_>> = rows.iter()
            .map(|r| r.iter().map(|&v| q.parse_elem(&format!("{}/{}", v - 3, den)).unwrap()).collect())
            .collect();
        let m = SparseMatrix::from_dense(q, &dense).unwrap();
        let text = write_matrix(&m);
        let back = read_matrix(q, &text).unwrap();
        prop_assert_eq!(write_matrix(&back), text);
        prop_assert_eq!(back, m);
    }
}
