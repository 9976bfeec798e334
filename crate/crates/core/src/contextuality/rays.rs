use std::fmt;

use crate::error::{Error, Result};
use crate::tol;

/// Unit direction in real 3-space, identified with its antipode. Stored in
/// canonical form: the first nonzero component is positive.
#[derive(Clone, Copy, PartialEq)]
pub struct Ray3([f64; 3]);

impl Ray3 {
    /// Normalizes and canonicalizes `v`; rejects (near-)zero vectors.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if !n.is_finite() || n <= tol::EQ {
            return Err(Error::Domain(format!("cannot make a ray from {v:?}")));
        }
        let mut u = v.map(|x| x / n);
        let lead = u.iter().copied().find(|x| x.abs() > tol::ORTH).unwrap_or(0.0);
        if lead < 0.0 {
            u = u.map(|x| -x);
        }
        // clean signed zeros so equal rays compare equal
        Ok(Self(u.map(|x| if x.abs() <= tol::ORTH * 1e-3 { 0.0 } else { x })))
    }

    pub fn components(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &Ray3) -> f64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn is_canonical(&self) -> bool {
        let n2: f64 = self.0.iter().map(|x| x * x).sum();
        let lead = self.0.iter().copied().find(|x| x.abs() > tol::ORTH).unwrap_or(0.0);
        (n2 - 1.0).abs() <= tol::EQ && lead > 0.0
    }

    /// Same ray up to sign, within `tol` per component.
    pub fn same_as(&self, other: &Ray3, tol: f64) -> bool {
        let close = |s: f64| self.0.iter().zip(&other.0).all(|(a, b)| (a - s * b).abs() <= tol);
        close(1.0) || close(-1.0)
    }
}

impl fmt::Debug for Ray3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ray3({:.6}, {:.6}, {:.6})", self.0[0], self.0[1], self.0[2])
    }
}

/// Squared direction cosines of the four Peres families.
pub const PERES_SQUARED_FAMILIES: [[f64; 3]; 4] = [
    [0.0, 0.0, 1.0],
    [0.0, 0.5, 0.5],
    [0.0, 1.0 / 3.0, 2.0 / 3.0],
    [0.25, 0.25, 0.5],
];

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// Every ray whose squared components are a permutation of `squares`, with
/// all sign choices, canonicalized and deduplicated (first occurrence wins).
pub fn rays_from_squares(squares: [f64; 3]) -> Vec<Ray3> {
    let mut out: Vec<Ray3> = Vec::new();
    for perm in PERMUTATIONS {
        for signs in 0..8u8 {
            let v: [f64; 3] = std::array::from_fn(|i| {
                let s = if signs >> i & 1 == 1 { -1.0 } else { 1.0 };
                s * squares[perm[i]].sqrt()
            });
            let r = Ray3::new(v).expect("squares sum to one");
            if !out.iter().any(|o| o.same_as(&r, 1e-12)) {
                out.push(r);
            }
        }
    }
    out
}

/// The 33 Peres rays, family by family in the order of
/// [`PERES_SQUARED_FAMILIES`].
pub fn peres_rays() -> Vec<Ray3> {
    let mut out: Vec<Ray3> = Vec::new();
    for fam in PERES_SQUARED_FAMILIES {
        for r in rays_from_squares(fam) {
            if !out.iter().any(|o| o.same_as(&r, 1e-12)) {
                out.push(r);
            }
        }
    }
    out
}

/// Rays together with their orthogonal pairs and complete orthogonal triads.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityStructure {
    pub rays: Vec<Ray3>,
    /// `(i, j)` with `i < j`, lexicographic.
    pub pairs: Vec<(usize, usize)>,
    /// `(i, j, k)` with `i < j < k`, lexicographic.
    pub triads: Vec<[usize; 3]>,
}

impl OrthogonalityStructure {
    /// Adjacency lists of the orthogonality graph.
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.rays.len()];
        for &(i, j) in &self.pairs {
            adj[i].push(j);
            adj[j].push(i);
        }
        adj
    }

    /// For each ray, the indices of the triads that contain it.
    pub fn triads_of(&self) -> Vec<Vec<usize>> {
        let mut of = vec![Vec::new(); self.rays.len()];
        for (t, tri) in self.triads.iter().enumerate() {
            for &r in tri {
                of[r].push(t);
            }
        }
        of
    }

    /// Same structure without ray `index` (later indices shift down by one).
    pub fn without_ray(&self, index: usize, tol: f64) -> Self {
        let rays: Vec<Ray3> = self
            .rays
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != index)
            .map(|(_, r)| *r)
            .collect();
        orthogonality_structure(&rays, tol)
    }
}

/// All pairs with `|dot| <= tol` and all mutually orthogonal triples.
pub fn orthogonality_structure(rays: &[Ray3], tol: f64) -> OrthogonalityStructure {
    let n = rays.len();
    let mut orth = vec![vec![false; n]; n];
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rays[i].dot(&rays[j]).abs() <= tol {
                orth[i][j] = true;
                orth[j][i] = true;
                pairs.push((i, j));
            }
        }
    }
    let mut triads = Vec::new();
    for &(i, j) in &pairs {
        triads.extend((j + 1..n).filter(|&k| orth[i][k] && orth[j][k]).map(|k| [i, j, k]));
    }
    triads.sort_unstable();
    OrthogonalityStructure {
        rays: rays.to_vec(),
        pairs,
        triads,
    }
}
