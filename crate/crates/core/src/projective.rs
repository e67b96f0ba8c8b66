//! Normalized projective points and enumeration of `P(F_q^m)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::subspace::Subspace;

/// Default cap on the number of projective points any single enumeration may visit.
pub const DEFAULT_ENUM_BUDGET: u64 = 10_000_000;

/// A nonzero vector scaled so that its first nonzero coordinate is exactly 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    coords: Vec<Scalar>,
}

impl ProjectivePoint {
    /// Normalizes `coords`; fails when every coordinate is zero.
    pub fn new(coords: Vec<Scalar>) -> Result<ProjectivePoint> {
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .ok_or(Error::InvalidProjectivePoint)?;
        let field = lead.field();
        if let Some(bad) = coords.iter().find(|c| c.field() != field) {
            return Err(Error::field_mismatch(field, bad.field()));
        }
        let scale = lead.inv().expect("nonzero lead");
        let coords = if scale.is_one() {
            coords
        } else {
            coords.iter().map(|c| c * &scale).collect()
        };
        Ok(ProjectivePoint { coords })
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Result<ProjectivePoint> {
        ProjectivePoint::new(coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<Scalar> {
        self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn field(&self) -> Field {
        self.coords[0].field()
    }

    /// Index of the leading (normalized to 1) coordinate.
    pub fn lead(&self) -> usize {
        self.coords.iter().position(|c| !c.is_zero()).expect("nonzero point")
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(":"))
    }
}

/// `(q^m − 1)/(q − 1)`, saturating at `u128::MAX`.
pub fn projective_count(q: u64, m: usize) -> u128 {
    if m == 0 {
        return 0;
    }
    let q = u128::from(q);
    let mut total: u128 = 0;
    let mut power: u128 = 1;
    for _ in 0..m {
        total = total.saturating_add(power);
        power = power.saturating_mul(q);
    }
    total
}

/// The points of `P(F_p^m)` in lexicographic order, addressable by index.
#[derive(Clone, Debug)]
pub struct ProjectiveSpace {
    m: usize,
    field: Field,
    p: u64,
    count: u64,
    /// `offsets[k]`: index of the first point whose leading 1 sits at position `k`.
    offsets: Vec<u64>,
}

impl ProjectiveSpace {
    pub fn new(m: usize, field: Field, budget: u64) -> Result<ProjectiveSpace> {
        let p = field
            .order()
            .ok_or_else(|| Error::EnumerationUnsupported(field.to_string()))?;
        let count = projective_count(p, m);
        if count > u128::from(budget) {
            return Err(Error::EnumerationTooLarge { count, budget });
        }
        // Leading position m-1 is lexicographically smallest, position 0 largest.
        let mut offsets = vec![0u64; m];
        let mut acc = 0u64;
        for k in (0..m).rev() {
            offsets[k] = acc;
            acc += p.pow((m - 1 - k) as u32);
        }
        Ok(ProjectiveSpace {
            m,
            field,
            p,
            count: count as u64,
            offsets,
        })
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn point(&self, index: u64) -> ProjectivePoint {
        assert!(index < self.count);
        let lead = (0..self.m)
            .find(|&k| index >= self.offsets[k])
            .expect("index in range");
        let mut rest = index - self.offsets[lead];
        let mut coords = vec![self.field.zero(); self.m];
        coords[lead] = self.field.one();
        for pos in (lead + 1..self.m).rev() {
            coords[pos] = self.field.residue(rest % self.p);
            rest /= self.p;
        }
        ProjectivePoint { coords }
    }

    pub fn iter(&self) -> impl Iterator<Item = ProjectivePoint> + '_ {
        (0..self.count).map(move |i| self.point(i))
    }
}

/// All projective points of a subspace over a prime field, sorted.
pub fn subspace_points(space: &Subspace, budget: u64) -> Result<Vec<ProjectivePoint>> {
    let coeffs = ProjectiveSpace::new(space.dim(), space.field(), budget)?;
    let mut out: Vec<ProjectivePoint> = coeffs
        .iter()
        .map(|c| ProjectivePoint::new(space.combine(c.coords())).expect("independent basis"))
        .collect();
    out.sort();
    Ok(out)
}
