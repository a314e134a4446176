//! Root-system data: Cartan matrix, weights in simple-root coordinates,
//! positive roots, and the reflection action on weights.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

/// Hard limit on how many weights the positive-root closure may visit before
/// we declare the root system non-finite (or too large for desk use).
pub const DEFAULT_ROOT_CAP: usize = 50_000;

#[derive(Debug, Error)]
pub enum CartanError {
    #[error("cartan matrix must be square and non-empty, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("cartan matrix diagonal entry a[{i}][{i}] must be 2, got {value}")]
    BadDiagonal { i: usize, value: i64 },
    #[error("cartan matrix off-diagonal a[{i}][{j}] must be <= 0, got {value}")]
    PositiveOffDiagonal { i: usize, j: usize, value: i64 },
    #[error("cartan matrix zeros must be symmetric: a[{i}][{j}] = 0 but a[{j}][{i}] != 0")]
    AsymmetricZero { i: usize, j: usize },
    #[error("root closure exceeded cap of {cap} weights; root system is not finite or too large")]
    CapExceeded { cap: usize },
    #[error("unknown root-system type `{0}` (expected A1..A9, B2.., C2.., D4.., G2, F4)")]
    UnknownType(String),
}

/// A weight written in the basis of simple roots. Coordinates are exact
/// integers; all weights appearing in this crate are sums of roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<i64>,
}

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight {
            coords: vec![0; rank],
        }
    }

    /// The simple root `alpha_i` (1-based index).
    pub fn simple(rank: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= rank, "simple-root index {i} out of range 1..={rank}");
        let mut coords = vec![0; rank];
        coords[i - 1] = 1;
        Weight { coords }
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    /// True when the first nonzero coordinate is positive. For a root this
    /// decides membership in `R^+` (roots are +/- a positive root, so all
    /// nonzero coordinates share one sign).
    pub fn is_positive(&self) -> bool {
        match self.coords.iter().find(|&&c| c != 0) {
            Some(&c) => c > 0,
            None => false,
        }
    }

    pub fn is_negative(&self) -> bool {
        match self.coords.iter().find(|&&c| c != 0) {
            Some(&c) => c < 0,
            None => false,
        }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        assert_eq!(self.rank(), rhs.rank(), "weight rank mismatch");
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&rhs.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, &c) in self.coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "a{}", j + 1)?;
            first = false;
        }
        Ok(())
    }
}

/// Compare coordinate vectors by reversed-coordinate lexicographic order.
/// This is the documented ordering of positive roots; on A2 it yields
/// `a1 < a2 < a1+a2`, on B2 it appends `2a1+a2` last.
pub fn colex(a: &[i64], b: &[i64]) -> Ordering {
    for (x, y) in a.iter().rev().zip(b.iter().rev()) {
        match x.cmp(y) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Root-system backbone: a validated Cartan matrix together with the
/// enumerated positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartanDatum {
    rank: usize,
    cartan: Vec<Vec<i64>>,
    positive_roots: Vec<Weight>,
    type_label: Option<String>,
}

impl CartanDatum {
    /// Validates the matrix and enumerates the positive roots (with the
    /// default closure cap).
    pub fn new(cartan: Vec<Vec<i64>>) -> Result<Self, CartanError> {
        Self::with_cap(cartan, DEFAULT_ROOT_CAP)
    }

    pub fn with_cap(cartan: Vec<Vec<i64>>, cap: usize) -> Result<Self, CartanError> {
        let rank = cartan.len();
        if rank == 0 || cartan.iter().any(|row| row.len() != rank) {
            return Err(CartanError::NotSquare {
                rows: rank,
                cols: cartan.first().map_or(0, |r| r.len()),
            });
        }
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return Err(CartanError::BadDiagonal {
                    i: i + 1,
                    value: cartan[i][i],
                });
            }
            for j in 0..rank {
                if i != j {
                    if cartan[i][j] > 0 {
                        return Err(CartanError::PositiveOffDiagonal {
                            i: i + 1,
                            j: j + 1,
                            value: cartan[i][j],
                        });
                    }
                    if (cartan[i][j] == 0) != (cartan[j][i] == 0) {
                        return Err(CartanError::AsymmetricZero { i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        let mut datum = CartanDatum {
            rank,
            cartan,
            positive_roots: Vec::new(),
            type_label: None,
        };
        datum.positive_roots = datum.close_positive_roots(cap)?;
        Ok(datum)
    }

    /// Built-in types: `A1..`, `B2..`, `C2..`, `D4..`, `G2`, `F4`.
    ///
    /// For `Bn` the first simple root is the short one (so B2 has
    /// `a[1][2] = -2`, `a[2][1] = -1`); `Cn` is the transpose convention.
    pub fn of_type(label: &str) -> Result<Self, CartanError> {
        let label = label.trim();
        let err = || CartanError::UnknownType(label.to_string());
        if label.len() < 2 {
            return Err(err());
        }
        let (letter, num) = label.split_at(1);
        let n: usize = num.parse().map_err(|_| err())?;
        let matrix = match (letter.to_ascii_uppercase().as_str(), n) {
            ("A", n) if n >= 1 => chain_matrix(n, &[]),
            ("B", n) if n >= 2 => chain_matrix(n, &[(0, 1, -2)]),
            ("C", n) if n >= 2 => chain_matrix(n, &[(1, 0, -2)]),
            ("D", n) if n >= 3 => {
                let mut m = chain_matrix(n, &[]);
                // fork: detach node n from the chain and hang it off node n-2
                m[n - 2][n - 1] = 0;
                m[n - 1][n - 2] = 0;
                m[n - 3][n - 1] = -1;
                m[n - 1][n - 3] = -1;
                m
            }
            ("G", 2) => vec![vec![2, -3], vec![-1, 2]],
            ("F", 4) => chain_matrix(4, &[(1, 2, -2)]),
            _ => return Err(err()),
        };
        let mut datum = Self::new(matrix)?;
        datum.type_label = Some(format!("{}{}", letter.to_ascii_uppercase(), n));
        Ok(datum)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn type_label(&self) -> Option<&str> {
        self.type_label.as_deref()
    }

    /// All positive roots, each exactly once, sorted by reversed-coordinate
    /// lexicographic order (simple roots first in index order).
    pub fn positive_roots(&self) -> &[Weight] {
        &self.positive_roots
    }

    /// `dim G/B`, the number of positive roots.
    pub fn dim_gb(&self) -> usize {
        self.positive_roots.len()
    }

    /// `s_i(lam) = lam - <lam, alpha_i^vee> alpha_i`, computed linearly from
    /// the Cartan matrix as `s_i(alpha_j) = alpha_j - a[i][j] alpha_i`.
    /// Panics when `i` is out of `1..=rank`.
    pub fn simple_reflection_on_weight(&self, i: usize, lam: &Weight) -> Weight {
        assert!(
            i >= 1 && i <= self.rank,
            "simple-root index {i} out of range 1..={}",
            self.rank
        );
        assert_eq!(lam.rank(), self.rank, "weight rank mismatch");
        let pairing: i64 = (0..self.rank)
            .map(|j| self.cartan[i - 1][j] * lam.coords[j])
            .sum();
        let mut coords = lam.coords.clone();
        coords[i - 1] -= pairing;
        Weight { coords }
    }

    fn close_positive_roots(&self, cap: usize) -> Result<Vec<Weight>, CartanError> {
        let mut seen: BTreeSet<Weight> = BTreeSet::new();
        let mut queue: Vec<Weight> = (1..=self.rank).map(|i| Weight::simple(self.rank, i)).collect();
        for w in &queue {
            seen.insert(w.clone());
        }
        while let Some(w) = queue.pop() {
            for i in 1..=self.rank {
                let r = self.simple_reflection_on_weight(i, &w);
                if r.is_positive() && seen.insert(r.clone()) {
                    if seen.len() > cap {
                        return Err(CartanError::CapExceeded { cap });
                    }
                    queue.push(r);
                }
            }
        }
        let mut roots: Vec<Weight> = seen.into_iter().collect();
        roots.sort_by(|a, b| colex(&a.coords, &b.coords));
        Ok(roots)
    }
}

/// Tridiagonal Cartan matrix for a chain diagram with -1 bonds, with the
/// listed `(i, j, value)` overrides applied (0-based).
fn chain_matrix(n: usize, overrides: &[(usize, usize, i64)]) -> Vec<Vec<i64>> {
    let mut m = vec![vec![0i64; n]; n];
    for i in 0..n {
        m[i][i] = 2;
        if i + 1 < n {
            m[i][i + 1] = -1;
            m[i + 1][i] = -1;
        }
    }
    for &(i, j, v) in overrides {
        m[i][j] = v;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wt(coords: &[i64]) -> Weight {
        Weight {
            coords: coords.to_vec(),
        }
    }

    #[test]
    fn a2_simple_reflections() {
        let a2 = CartanDatum::of_type("A2").unwrap();
        let a1 = Weight::simple(2, 1);
        let a2r = Weight::simple(2, 2);
        assert_eq!(a2.simple_reflection_on_weight(1, &a1), wt(&[-1, 0]));
        assert_eq!(a2.simple_reflection_on_weight(1, &a2r), wt(&[1, 1]));
    }

    #[test]
    fn b2_reflection_matches_matrix() {
        let b2 = CartanDatum::of_type("B2").unwrap();
        assert_eq!(b2.cartan_matrix()[0], vec![2, -2]);
        assert_eq!(b2.cartan_matrix()[1], vec![-1, 2]);
        let alpha2 = Weight::simple(2, 2);
        assert_eq!(b2.simple_reflection_on_weight(1, &alpha2), wt(&[2, 1]));
    }

    #[test]
    fn positive_roots_small_types() {
        let a1 = CartanDatum::of_type("A1").unwrap();
        assert_eq!(a1.positive_roots(), &[wt(&[1])]);

        let a2 = CartanDatum::of_type("A2").unwrap();
        assert_eq!(
            a2.positive_roots(),
            &[wt(&[1, 0]), wt(&[0, 1]), wt(&[1, 1])]
        );

        let b2 = CartanDatum::of_type("B2").unwrap();
        assert_eq!(
            b2.positive_roots(),
            &[wt(&[1, 0]), wt(&[0, 1]), wt(&[1, 1]), wt(&[2, 1])]
        );
    }

    #[test]
    fn root_counts() {
        for (label, count) in [("A2", 3), ("B2", 4), ("A3", 6), ("G2", 6), ("F4", 24), ("D4", 12)] {
            let datum = CartanDatum::of_type(label).unwrap();
            assert_eq!(datum.dim_gb(), count, "type {label}");
        }
    }

    #[test]
    fn reflections_are_involutive() {
        for label in ["A2", "B2", "G2", "A3"] {
            let datum = CartanDatum::of_type(label).unwrap();
            for i in 1..=datum.rank() {
                for root in datum.positive_roots() {
                    let once = datum.simple_reflection_on_weight(i, root);
                    let twice = datum.simple_reflection_on_weight(i, &once);
                    assert_eq!(&twice, root);
                }
            }
        }
    }

    #[test]
    fn simple_reflection_permutes_other_positive_roots() {
        for label in ["A2", "B2", "G2"] {
            let datum = CartanDatum::of_type(label).unwrap();
            for i in 1..=datum.rank() {
                let alpha_i = Weight::simple(datum.rank(), i);
                for root in datum.positive_roots() {
                    let image = datum.simple_reflection_on_weight(i, root);
                    if root == &alpha_i {
                        assert_eq!(image, -root);
                    } else {
                        assert!(image.is_positive(), "{label}: s_{i} broke {root}");
                        assert!(datum.positive_roots().contains(&image));
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_matrices_rejected() {
        assert!(matches!(
            CartanDatum::new(vec![vec![1]]),
            Err(CartanError::BadDiagonal { .. })
        ));
        assert!(matches!(
            CartanDatum::new(vec![vec![2, 1], vec![-1, 2]]),
            Err(CartanError::PositiveOffDiagonal { .. })
        ));
        assert!(matches!(
            CartanDatum::new(vec![vec![2, 0], vec![-1, 2]]),
            Err(CartanError::AsymmetricZero { .. })
        ));
        assert!(matches!(
            CartanDatum::new(vec![vec![2, -1, -1]]),
            Err(CartanError::NotSquare { .. })
        ));
    }

    #[test]
    fn affine_matrix_hits_cap() {
        // The affine A1 matrix generates an infinite root system.
        let result = CartanDatum::with_cap(vec![vec![2, -2], vec![-2, 2]], 500);
        assert!(matches!(result, Err(CartanError::CapExceeded { cap: 500 })));
    }

    #[test]
    #[should_panic(expected = "out of range")]
    fn reflection_index_out_of_range_panics() {
        let a2 = CartanDatum::of_type("A2").unwrap();
        let w = Weight::zero(2);
        let _ = a2.simple_reflection_on_weight(3, &w);
    }
}
