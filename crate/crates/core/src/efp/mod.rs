//! The emptiness formation probability as an exact polynomial in α, with
//! two independent oracles for small lattices.

mod enumerate;
mod hankel;
mod multi_integral;

use num_traits::One;

use crate::error::{EfpError, Result};
use crate::exact::{rat, ExactRational};

pub use enumerate::{efp_enumerate, dwbc_weight_table, EfpValue, WeightTable, MAX_ENUMERATION_N};
pub use hankel::{efp_eval, efp_polynomial, hankel_det, hankel_matrix, hankel_prefactor};
pub use multi_integral::{efp_multi_integral, MAX_MULTI_INTEGRAL_S};

/// Lattice geometry of the EFP: an `s × (s+q)` frozen rectangle in the
/// corner of an `(r+s+q) × (r+s+q)` lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EfpParams {
    pub r: u32,
    pub s: u32,
    pub q: u32,
}

impl EfpParams {
    pub fn new(r: u32, s: u32, q: u32) -> Result<Self> {
        if r == 0 {
            return Err(EfpError::InvalidParams("r must be positive".into()));
        }
        Ok(EfpParams { r, s, q })
    }

    /// Side length `N = r + s + q` of the lattice.
    pub fn lattice_size(&self) -> u32 {
        self.r + self.s + self.q
    }

    /// `v = s/r`.
    pub fn v(&self) -> ExactRational {
        rat(self.s as i64, self.r as i64)
    }

    /// `β = ((1 − v)/(1 + v))²`, the value of α at the regime boundary.
    pub fn beta(&self) -> ExactRational {
        let v = self.v();
        let one = ExactRational::one();
        let b = (&one - &v) / (&one + &v);
        &b * &b
    }

    /// `F ≡ 0` when the rectangle does not fit.
    pub fn is_empty_set(&self) -> bool {
        self.s > self.r
    }

    /// `F ≡ 1` when there is nothing to freeze.
    pub fn is_trivial(&self) -> bool {
        self.s == 0
    }

    pub(crate) fn require_q_zero(&self, what: &'static str) -> Result<()> {
        if self.q != 0 {
            return Err(EfpError::Domain {
                what,
                detail: format!("requires q = 0, got q = {}", self.q),
            });
        }
        Ok(())
    }

    pub(crate) fn require_nonempty(&self, what: &'static str) -> Result<()> {
        if self.s == 0 || self.s > self.r {
            return Err(EfpError::Domain {
                what,
                detail: format!("requires 1 ≤ s ≤ r, got r = {}, s = {}", self.r, self.s),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for EfpParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.r, self.s, self.q)
    }
}
