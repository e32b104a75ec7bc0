use crate::align::LinearMap;
use crate::embed::EmbeddingSpace;
use crate::error::{Error, Result};
use crate::scalar::{cosine_of, Real};

fn check_map<T: Real>(map: &LinearMap<T>, src: &EmbeddingSpace<T>, dst: &EmbeddingSpace<T>) -> Result<()> {
    if map.source_dim() != src.dim() {
        return Err(Error::DimensionMismatch { expected: src.dim(), got: map.source_dim() });
    }
    if map.target_dim() != dst.dim() {
        return Err(Error::DimensionMismatch { expected: dst.dim(), got: map.target_dim() });
    }
    Ok(())
}

/// `cos(W01 v0(w), v1(w))`: how well the map carries `w` into the other space.
pub fn one_way_similarity<T: Real>(map01: &LinearMap<T>, s0: &EmbeddingSpace<T>, s1: &EmbeddingSpace<T>, word: &str) -> Result<T> {
    check_map(map01, s0, s1)?;
    let mapped = map01.apply(s0.vector(word)?)?;
    Ok(cosine_of(&mapped, s1.vector(word)?))
}

/// Mean of the two round-trip cosines `cos(W10 W01 v0, v0)` and
/// `cos(W01 W10 v1, v1)`.
pub fn round_trip_stability<T: Real>(
    map01: &LinearMap<T>,
    map10: &LinearMap<T>,
    s0: &EmbeddingSpace<T>,
    s1: &EmbeddingSpace<T>,
    word: &str,
) -> Result<T> {
    check_map(map01, s0, s1)?;
    check_map(map10, s1, s0)?;
    let v0 = s0.vector(word)?;
    let v1 = s1.vector(word)?;
    let there_back0 = map10.apply(&map01.apply(v0)?)?;
    let there_back1 = map01.apply(&map10.apply(v1)?)?;
    Ok((cosine_of(&there_back0, v0) + cosine_of(&there_back1, v1)) / T::of(2.0))
}
