use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::build::simplex_face_name;
use super::{enumerate_maps, horn_inclusion, SMap, SSet, Simplex};
use crate::error::{Error, Result};
use crate::Verdict;

/// An inner horn `Λⁿ_k → X` without a filler.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HornWitness {
    pub n: usize,
    pub k: usize,
    pub map: SMap,
    /// Images of the faces `∂_i`, `i ≠ k`, in increasing `i`.
    pub faces: Vec<Simplex>,
}

/// The images of the horn's codimension-one faces under a horn map.
pub(crate) fn horn_face_images(h: &SSet, n: usize, k: usize, map: &SMap) -> Vec<Simplex> {
    (0..=n)
        .filter(|&i| i != k)
        .map(|i| {
            let c = h.find(n - 1, &simplex_face_name(n, i)).expect("horn face");
            map.cell_image(c)
        })
        .collect()
}

/// The first unfillable horn `Λⁿ_k → X` in order of `n`, `k` and map, if any.
pub fn inner_horn_witness(x: &SSet, n: usize, k: usize) -> Result<Option<HornWitness>> {
    let (h, _) = horn_inclusion(n, k)?;
    x.ensure_known(n)?;
    let mut fillable = BTreeSet::new();
    for s in x.simplices(n)? {
        let mut f = x.faces_of(s);
        f.remove(k);
        fillable.insert(f);
    }
    for map in enumerate_maps(&h, x)? {
        let faces = horn_face_images(&h, n, k, &map);
        if !fillable.contains(&faces) {
            return Ok(Some(HornWitness { n, k, map, faces }));
        }
    }
    Ok(None)
}

/// Inner horn filling for `2 ≤ n ≤ bound`.
pub fn is_quasicategory_upto(x: &SSet, bound: usize) -> Result<Verdict<HornWitness>> {
    if !x.knows(bound) {
        return Err(Error::DimensionBound {
            requested: bound,
            bound: x.dim_bound(),
        });
    }
    for n in 2..=bound {
        for k in 1..n {
            if let Some(w) = inner_horn_witness(x, n, k)? {
                return Ok(Verdict::Fails(w));
            }
        }
    }
    Ok(Verdict::Holds)
}
