use serde::{Deserialize, Serialize};

use super::{integer_smith, AbelianData, Presentation, PresentationError, Word};

/// A homomorphism from a free group to `Z^m`, given by generator images.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeMap {
    pub target_rank: usize,
    pub images: Vec<Vec<i64>>,
}

impl LatticeMap {
    pub fn new(target_rank: usize, images: Vec<Vec<i64>>) -> Result<Self, PresentationError> {
        if images.iter().any(|v| v.len() != target_rank) {
            return Err(PresentationError::ImageRankMismatch { expected: target_rank });
        }
        Ok(LatticeMap { target_rank, images })
    }

    pub fn from_abelian(ab: &AbelianData) -> Self {
        let n = ab.generator_count();
        let images = (0..n).map(|i| ab.projection.iter().map(|row| row[i]).collect()).collect();
        LatticeMap { target_rank: ab.torsion_free_rank, images }
    }

    pub fn generator_count(&self) -> usize {
        self.images.len()
    }

    pub fn image_of_exponents(&self, exps: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.target_rank];
        for (img, &e) in self.images.iter().zip(exps) {
            for (acc, x) in v.iter_mut().zip(img) {
                *acc += e * x;
            }
        }
        v
    }

    pub fn image_of(&self, w: &Word) -> Vec<i64> {
        let mut v = vec![0; self.target_rank];
        for l in w.letters() {
            for (acc, x) in v.iter_mut().zip(&self.images[l.gen]) {
                *acc += l.exp * x;
            }
        }
        v
    }

    /// Index of the first relator not sent to zero.
    pub fn first_unkilled(&self, p: &Presentation) -> Option<usize> {
        p.relators().iter().position(|r| self.image_of(r).iter().any(|&x| x != 0))
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(|v| v.iter().all(|&x| x == 0))
    }
}

/// A validated surjection `G -> Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EpimorphismToZm {
    map: LatticeMap,
}

impl EpimorphismToZm {
    /// Checks that `images` (one vector per generator) define a surjective,
    /// nontrivial homomorphism `G -> Z^m` that kills every relator.
    pub fn new(p: &Presentation, target_rank: usize, images: Vec<Vec<i64>>) -> Result<Self, PresentationError> {
        if images.len() != p.generator_count() {
            return Err(PresentationError::ImageCountMismatch { expected: p.generator_count(), got: images.len() });
        }
        let map = LatticeMap::new(target_rank, images)?;
        if let Some(j) = map.first_unkilled(p) {
            return Err(PresentationError::RelatorNotKilled(j));
        }
        if map.is_zero() || target_rank == 0 {
            return Err(PresentationError::ZeroMap);
        }
        let rc = recoordinatize(&map.images, target_rank);
        if rc.rank < target_rank || rc.index != Some(1) {
            return Err(PresentationError::NotSurjective { target_rank, index: rc.index });
        }
        Ok(EpimorphismToZm { map })
    }

    pub fn target_rank(&self) -> usize {
        self.map.target_rank
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.map.images
    }

    pub fn as_map(&self) -> &LatticeMap {
        &self.map
    }
}

/// The image lattice of a map and the map rewritten onto it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Recoordinatization {
    /// Rank of the image lattice.
    pub rank: usize,
    /// `m x rank`; columns form a basis of the image lattice.
    pub basis: Vec<Vec<i64>>,
    /// Generator images in the new basis; the resulting map onto `Z^rank`
    /// is surjective.
    pub images: Vec<Vec<i64>>,
    /// Index of the image in `Z^m` when it has full rank.
    pub index: Option<u64>,
}

/// Computes a basis of the subgroup spanned by `images` in `Z^m` and the
/// coordinates of each image in it.
pub fn recoordinatize(images: &[Vec<i64>], target_rank: usize) -> Recoordinatization {
    let n = images.len();
    // m x n, columns are images
    let mat: Vec<Vec<i64>> = (0..target_rank).map(|i| (0..n).map(|j| images[j][i]).collect()).collect();
    let snf = integer_smith(&mat, n);
    let rank = snf.rank;
    let basis = (0..target_rank).map(|i| (0..rank).map(|k| snf.p_inv[i][k] * snf.diagonal[k]).collect()).collect();
    let new_images = (0..n).map(|j| (0..rank).map(|k| snf.q_inv[k][j]).collect()).collect();
    let index = (rank == target_rank).then(|| snf.diagonal[..rank].iter().map(|d| d.unsigned_abs()).product());
    Recoordinatization { rank, basis, images: new_images, index }
}
