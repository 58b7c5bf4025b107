//! Intersection lattice of a blown-up plane and the surface-pair
//! configurations built on it.
//!
//! A divisor class is stored as its coefficient vector `[d, d1, ..., dn]`
//! in a geometric basis L, E₁, …, Eₙ of Pic(Σ), meaning the class
//! d·L − d₁E₁ − … − dₙEₙ.  The pairing is diagonal,
//!
//! ```text
//! ⟨a, b⟩ = a₀b₀ − a₁b₁ − … − aₙbₙ ,
//! ```
//!
//! the canonical class is K = −3L + E₁ + … + Eₙ, i.e. the vector
//! `(-3; -1, ..., -1)`, and the degree of the surface is K² = 9 − n.
//!
//! Coefficients are plain `i64` kept below 2²⁰ in absolute value.  Every
//! enumeration in this crate bounds its coefficients far below that, the
//! pairing accumulates in `i128`, and the constructor rejects anything
//! larger, so all arithmetic here is exact by construction.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Hard bound on |coefficient|; guards the exactness of the i64 arithmetic.
pub const COEFF_LIMIT: i64 = 1 << 20;

/// Largest supported lattice rank (number of exceptional basis classes).
pub const MAX_RANK: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("incompatible lattices: rank {left} vs rank {right}")]
    RankMismatch { left: usize, right: usize },
    #[error("invalid divisor class: {0}")]
    InvalidClass(String),
    #[error("coefficient {0} outside the supported range (|c| <= 2^20)")]
    CoefficientRange(i64),
    #[error("tangency count l={l} out of range for DE={de}")]
    LOutOfRange { l: i64, de: i64 },
    #[error("invalid surface pair: {0}")]
    InvalidSurface(String),
    #[error("exceptional-index {0} out of range for rank {1}")]
    IndexOutOfRange(usize, usize),
}

// ---------------------------------------------------------------------------
// DivisorClass
// ---------------------------------------------------------------------------

/// An integer divisor class `d·L − d₁E₁ − … − dₙEₙ`, stored as
/// `[d, d1, ..., dn]` with 1 ≤ n ≤ 8.
///
/// Classes are ordered lexicographically on their coefficient vectors, which
/// fixes a canonical order for every enumeration output in the crate.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DivisorClass {
    coeffs: Vec<i64>,
}

impl DivisorClass {
    /// Builds a class from its coefficient vector `[d, d1, ..., dn]`.
    pub fn new(coeffs: Vec<i64>) -> Result<Self, LatticeError> {
        if coeffs.len() < 2 || coeffs.len() > 1 + MAX_RANK {
            return Err(LatticeError::InvalidClass(format!(
                "coefficient vector must have length 1+n with 1 <= n <= {MAX_RANK}, got {}",
                coeffs.len()
            )));
        }
        for &c in &coeffs {
            if c.abs() > COEFF_LIMIT {
                return Err(LatticeError::CoefficientRange(c));
            }
        }
        Ok(DivisorClass { coeffs })
    }

    /// The zero class of the given rank.
    pub fn zero(rank: usize) -> Self {
        DivisorClass {
            coeffs: vec![0; rank + 1],
        }
    }

    /// The line class L.
    pub fn line(rank: usize) -> Self {
        let mut c = vec![0; rank + 1];
        c[0] = 1;
        DivisorClass { coeffs: c }
    }

    /// The exceptional basis class Eᵢ (1-based index).
    pub fn exceptional(rank: usize, i: usize) -> Result<Self, LatticeError> {
        if i == 0 || i > rank {
            return Err(LatticeError::IndexOutOfRange(i, rank));
        }
        let mut c = vec![0; rank + 1];
        c[i] = -1;
        Ok(DivisorClass { coeffs: c })
    }

    /// The canonical class K = −3L + E₁ + … + Eₙ, i.e. `(-3; -1, ..., -1)`.
    pub fn canonical(rank: usize) -> Self {
        let mut c = vec![-1; rank + 1];
        c[0] = -3;
        DivisorClass { coeffs: c }
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The line coefficient d.
    pub fn line_coeff(&self) -> i64 {
        self.coeffs[0]
    }

    /// Coefficient dᵢ for 1 ≤ i ≤ n, or d for i = 0.
    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    /// Intersection pairing ⟨a, b⟩ = a₀b₀ − Σᵢ aᵢbᵢ.
    pub fn intersect(&self, other: &DivisorClass) -> Result<i64, LatticeError> {
        if self.rank() != other.rank() {
            return Err(LatticeError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        let mut acc: i128 = i128::from(self.coeffs[0]) * i128::from(other.coeffs[0]);
        for i in 1..self.coeffs.len() {
            acc -= i128::from(self.coeffs[i]) * i128::from(other.coeffs[i]);
        }
        i64::try_from(acc).map_err(|_| LatticeError::CoefficientRange(i64::MAX))
    }

    /// Self-intersection D².
    pub fn self_intersection(&self) -> i64 {
        self.intersect(self).expect("same rank")
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// gcd of all coefficients; 0 for the zero class.
    pub fn content(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |g, &c| gcd(g, c.abs()))
    }

    /// True when the coefficient vector is not a proper multiple.
    pub fn is_primitive(&self) -> bool {
        self.content() == 1
    }

    pub fn try_add(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.zip_with(other, |a, b| a.checked_add(b))
    }

    pub fn try_sub(&self, other: &DivisorClass) -> Result<DivisorClass, LatticeError> {
        self.zip_with(other, |a, b| a.checked_sub(b))
    }

    pub fn scaled(&self, k: i64) -> Result<DivisorClass, LatticeError> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.checked_mul(k).ok_or(LatticeError::CoefficientRange(c)))
            .collect::<Result<Vec<_>, _>>()?;
        DivisorClass::new(coeffs)
    }

    /// Exact halving; `None` when some coefficient is odd.
    pub fn halved(&self) -> Option<DivisorClass> {
        if self.coeffs.iter().all(|&c| c % 2 == 0) {
            Some(DivisorClass {
                coeffs: self.coeffs.iter().map(|&c| c / 2).collect(),
            })
        } else {
            None
        }
    }

    /// Zero-pads the coefficient vector up to the given rank.
    ///
    /// This realizes the reduction of higher-degree pairs to rank 8: blowing
    /// up k−1 generic points away from E turns a degree-k pair into a
    /// degree-1 pair, and on lattices that is exactly extension by zeros.
    pub fn embedded_in_rank(&self, rank: usize) -> Result<DivisorClass, LatticeError> {
        if rank < self.rank() || rank > MAX_RANK {
            return Err(LatticeError::InvalidClass(format!(
                "cannot embed rank {} into rank {}",
                self.rank(),
                rank
            )));
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(rank + 1, 0);
        Ok(DivisorClass { coeffs })
    }

    fn zip_with(
        &self,
        other: &DivisorClass,
        f: impl Fn(i64, i64) -> Option<i64>,
    ) -> Result<DivisorClass, LatticeError> {
        if self.rank() != other.rank() {
            return Err(LatticeError::RankMismatch {
                left: self.rank(),
                right: other.rank(),
            });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(&a, &b)| f(a, b).ok_or(LatticeError::CoefficientRange(a)))
            .collect::<Result<Vec<_>, _>>()?;
        DivisorClass::new(coeffs)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

// The wire format is a bare JSON integer array `[d, d1, ..., dn]`.
impl Serialize for DivisorClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for DivisorClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<i64>::deserialize(deserializer)?;
        DivisorClass::new(coeffs).map_err(D::Error::custom)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// ---------------------------------------------------------------------------
// Sides, reality flags, phi tags
// ---------------------------------------------------------------------------

/// Which half F⁺ or F⁻ of the admissible component is selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Plus => write!(f, "plus"),
            Side::Minus => write!(f, "minus"),
        }
    }
}

/// Real-structure metadata of a pair.
///
/// These are configuration, never derived: whether E₀ is tangent to E,
/// whether ℝE or ℝE₀ meets the chosen component F, whether [ℝE] vanishes in
/// H₁(ℝΣ; ℤ/2), and whether ℝE is empty are geometric facts about the real
/// surface that the lattice model cannot see.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealityFlags {
    pub tangential: bool,
    pub re_meets_f: bool,
    pub re0_meets_f: bool,
    pub re_nullhomologous: bool,
    pub re_empty: bool,
}

impl Default for RealityFlags {
    fn default() -> Self {
        RealityFlags {
            tangential: false,
            re_meets_f: true,
            re0_meets_f: true,
            re_nullhomologous: false,
            re_empty: false,
        }
    }
}

/// Opaque tag for a conjugation-invariant class φ ∈ H₂(Σ∖F; ℤ/2).
///
/// The artifact never computes topological pairings from geometry; a tag
/// carries user-declared parities C_{1/2}∘φ for named cycles and nothing
/// else.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PhiTag {
    pub name: String,
    #[serde(default)]
    pub parity_pairing: BTreeMap<String, u8>,
}

impl PhiTag {
    pub fn new(name: impl Into<String>) -> Self {
        PhiTag {
            name: name.into(),
            parity_pairing: BTreeMap::new(),
        }
    }

    pub fn with_parity(mut self, cycle: impl Into<String>, bit: u8) -> Result<Self, LatticeError> {
        if bit > 1 {
            return Err(LatticeError::InvalidClass(format!(
                "phi parity must be a bit, got {bit}"
            )));
        }
        self.parity_pairing.insert(cycle.into(), bit);
        Ok(self)
    }

    /// Declared parity against a named cycle; absent cycles pair to 0.
    pub fn parity(&self, cycle: &str) -> u8 {
        *self.parity_pairing.get(cycle).unwrap_or(&0)
    }
}

// ---------------------------------------------------------------------------
// SurfacePair
// ---------------------------------------------------------------------------

/// A nodal del Pezzo pair (Σ, E) presented on the rank-n lattice: the
/// designated (-2)-class E, the derived canonical class and E₀ = −(K+E),
/// the degree K², and the real-structure flags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfacePair {
    rank: usize,
    e_class: DivisorClass,
    k_class: DivisorClass,
    e0_class: DivisorClass,
    degree: i64,
    pub flags: RealityFlags,
    pub side: Side,
}

impl SurfacePair {
    /// Builds a pair, checking E² = −2 and E·K = 0.
    pub fn new(
        rank: usize,
        e_class: DivisorClass,
        flags: RealityFlags,
        side: Side,
    ) -> Result<Self, LatticeError> {
        if rank < 1 || rank > MAX_RANK {
            return Err(LatticeError::InvalidSurface(format!(
                "rank must be between 1 and {MAX_RANK}, got {rank}"
            )));
        }
        if e_class.rank() != rank {
            return Err(LatticeError::RankMismatch {
                left: e_class.rank(),
                right: rank,
            });
        }
        let k_class = DivisorClass::canonical(rank);
        if e_class.self_intersection() != -2 {
            return Err(LatticeError::InvalidSurface(format!(
                "E^2 = {} but a (-2)-curve requires E^2 = -2",
                e_class.self_intersection()
            )));
        }
        if e_class.intersect(&k_class)? != 0 {
            return Err(LatticeError::InvalidSurface(format!(
                "E.K = {} but a (-2)-curve requires E.K = 0",
                e_class.intersect(&k_class)?
            )));
        }
        let e0_class = k_class.try_add(&e_class)?.scaled(-1)?;
        let degree = k_class.self_intersection();
        debug_assert_eq!(degree, 9 - rank as i64);
        if degree == 1 {
            debug_assert_eq!(e0_class.self_intersection(), -1);
            debug_assert_eq!(e0_class.intersect(&e_class)?, 2);
        }
        Ok(SurfacePair {
            rank,
            e_class,
            k_class,
            e0_class,
            degree,
            flags,
            side,
        })
    }

    /// The degree-1 pair in the standard geometric basis: E = 2L−E₁−…−E₆,
    /// so that −K−E = E₀ = L−E₇−E₈.
    pub fn deg1_standard() -> Self {
        let e = DivisorClass::new(vec![2, 1, 1, 1, 1, 1, 1, 0, 0]).expect("valid");
        SurfacePair::new(8, e, RealityFlags::default(), Side::Plus).expect("valid pair")
    }

    /// The degree-3 pair obtained by blowing up three conjugate pairs of
    /// points on a real conic: rank 6 with E = 2L−E₁−…−E₆.  The real locus
    /// of the surface splits along ℝE into a disc and a Möbius band, and
    /// [ℝE] is null-homologous.
    pub fn conic_p2_03() -> Self {
        let e = DivisorClass::new(vec![2, 1, 1, 1, 1, 1, 1]).expect("valid");
        let flags = RealityFlags {
            tangential: false,
            re_meets_f: true,
            re0_meets_f: false,
            re_nullhomologous: true,
            re_empty: false,
        };
        SurfacePair::new(6, e, flags, Side::Plus).expect("valid pair")
    }

    /// Same lattice data as [`SurfacePair::deg1_standard`] but with the
    /// tangential flag set (E₀ tangent to E).
    pub fn deg1_tangential() -> Self {
        let mut pair = SurfacePair::deg1_standard();
        pair.flags.tangential = true;
        pair
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn e_class(&self) -> &DivisorClass {
        &self.e_class
    }

    pub fn k_class(&self) -> &DivisorClass {
        &self.k_class
    }

    /// The class −(K+E).  It is the class of the unique (-1)-curve E₀ only
    /// in degree 1; see [`crate::exceptional::find_special_classes`].
    pub fn e0_class(&self) -> &DivisorClass {
        &self.e0_class
    }

    /// Degree K² = 9 − n.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    fn check_rank(&self, d: &DivisorClass) -> Result<(), LatticeError> {
        if d.rank() != self.rank {
            return Err(LatticeError::RankMismatch {
                left: d.rank(),
                right: self.rank,
            });
        }
        Ok(())
    }

    /// Arithmetic genus p_a(D) = (D² + D·K)/2 + 1.
    ///
    /// D² + D·K is even for every integer class, so the division is exact.
    pub fn arithmetic_genus(&self, d: &DivisorClass) -> Result<i64, LatticeError> {
        self.check_rank(d)?;
        let s = d.self_intersection() + d.intersect(&self.k_class)?;
        debug_assert_eq!(s % 2, 0, "adjunction parity");
        Ok(s / 2 + 1)
    }

    /// The dimension count r(Σ, D, l) = −D·K − 1 − l for a family with l
    /// prescribed double tangencies to E.
    pub fn r_dimension(&self, d: &DivisorClass, l: i64) -> Result<i64, LatticeError> {
        self.check_rank(d)?;
        let de = d.intersect(&self.e_class)?;
        if l < 0 || 2 * l > de {
            return Err(LatticeError::LOutOfRange { l, de });
        }
        Ok(-d.intersect(&self.k_class)? - 1 - l)
    }

    /// r at full tangency l = D·E/2; requires D·E even.
    pub fn r_default(&self, d: &DivisorClass) -> Result<i64, LatticeError> {
        let de = d.intersect(&self.e_class)?;
        if de % 2 != 0 {
            return Err(LatticeError::LOutOfRange { l: de / 2, de });
        }
        self.r_dimension(d, de / 2)
    }
}

/// Serialization mirror of [`SurfacePair`]: `{rank, e, flags, side}` with the
/// derived K, E₀ and degree recomputed on load.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SurfacePairConfig {
    pub rank: usize,
    pub e: DivisorClass,
    #[serde(default)]
    pub flags: RealityFlags,
    #[serde(default = "default_side")]
    pub side: Side,
}

fn default_side() -> Side {
    Side::Plus
}

impl SurfacePairConfig {
    pub fn build(self) -> Result<SurfacePair, LatticeError> {
        SurfacePair::new(self.rank, self.e, self.flags, self.side)
    }
}

impl From<&SurfacePair> for SurfacePairConfig {
    fn from(pair: &SurfacePair) -> Self {
        SurfacePairConfig {
            rank: pair.rank(),
            e: pair.e_class().clone(),
            flags: pair.flags,
            side: pair.side,
        }
    }
}
