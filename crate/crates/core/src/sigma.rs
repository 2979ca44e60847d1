//! The σ-form of Painlevé VI satisfied by the logarithmic derivative of the EFP.

use num_traits::One;

use crate::efp::EfpParams;
use crate::error::{EfpError, Result};
use crate::exact::{int, rat, ExactRational, Polynomial, RationalFunction};

type QPoly = Polynomial<ExactRational>;

/// Parameters of the σ-form together with the local monodromy exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PainleveNu {
    pub nu: [ExactRational; 4],
    pub theta_0: i64,
    pub theta_1: i64,
    pub theta_alpha: i64,
    pub theta_inf: i64,
}

impl PainleveNu {
    /// `ν₁ν₂ν₃ν₄`.
    pub fn product(&self) -> ExactRational {
        self.nu.iter().fold(ExactRational::one(), |acc, v| acc * v)
    }
}

pub fn nu_params(p: &EfpParams) -> PainleveNu {
    let (r, s, q) = (p.r as i64, p.s as i64, p.q as i64);
    let n13 = rat(-(r + q + s), 2);
    PainleveNu {
        nu: [n13.clone(), rat(-(r - q - s), 2), n13, rat(r + q - s, 2)],
        theta_0: s,
        theta_1: r + q,
        theta_alpha: -r,
        theta_inf: -(s + q),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SigmaData {
    pub sigma: RationalFunction,
    pub params: EfpParams,
    pub nu: PainleveNu,
}

/// `σ = α(α−1) F′/F − ((r+q+s)²/4) α + ((r+q+s)q + 2rs)/4`.
pub fn sigma_from_efp(f: &QPoly, p: &EfpParams) -> Result<SigmaData> {
    if f.is_zero() {
        return Err(EfpError::Domain {
            what: "sigma_from_efp",
            detail: "F is identically zero".into(),
        });
    }
    let (r, s, q) = (p.r as i64, p.s as i64, p.q as i64);
    let n = r + q + s;
    let alpha_alpha_minus_one = QPoly::new(vec![int(0), int(-1), int(1)]);
    let linear = QPoly::linear(rat(n * q + 2 * r * s, 4), rat(-n * n, 4));
    let num = &(&alpha_alpha_minus_one * &f.derivative()) + &(&linear * f);
    Ok(SigmaData {
        sigma: RationalFunction::new(num, f.clone())?,
        params: *p,
        nu: nu_params(p),
    })
}

/// LHS − RHS of the σ-form
/// `α²(α−1)²σ′(σ″)² + {(1−2α)(σ′)² + 2σσ′ + ν₁ν₂ν₃ν₄}² − ∏(σ′ + ν_k²)`.
///
/// With `σ = N/D` every term is brought over `D⁸` and only the numerator
/// polynomial is formed, followed by a single gcd reduction.
pub fn sigma_form_residual(sd: &SigmaData) -> RationalFunction {
    let n = sd.sigma.num();
    let d = sd.sigma.den();
    let d1 = d.derivative();
    // σ′ = N1/D², σ″ = N2/D³
    let n1 = &(&n.derivative() * d) - &(n * &d1);
    let n2 = &(&n1.derivative() * d) - &(&n1 * &d1).scale(&int(2));
    let d2 = d * d;
    let d4 = &d2 * &d2;

    let alpha_sq_alpha_minus_one_sq = QPoly::new(vec![int(0), int(-1), int(1)]).pow(2);
    let term1 = &(&alpha_sq_alpha_minus_one_sq * &n1) * &(&n2 * &n2);

    let one_minus_two_alpha = QPoly::linear(int(1), int(-2));
    let inner = &(&(&one_minus_two_alpha * &(&n1 * &n1)) + &(&(n * &n1) * d).scale(&int(2)))
        + &d4.scale(&sd.nu.product());
    let term2 = &inner * &inner;

    let term3 = sd.nu.nu.iter().fold(QPoly::one(), |acc, v| {
        &acc * &(&n1 + &d2.scale(&(v * v)))
    });

    let numerator = &(&term1 + &term2) - &term3;
    RationalFunction::new(numerator, &d4 * &d4).expect("D is nonzero")
}

/// σ-form residual for the EFP of `p`, computed from the exact polynomial.
pub fn sigma_residual_for(p: &EfpParams) -> Result<RationalFunction> {
    let f = crate::efp::efp_polynomial(p)?;
    Ok(sigma_form_residual(&sigma_from_efp(&f, p)?))
}

impl SigmaData {
    /// Adds a constant to σ; used as a negative control.
    pub fn shifted(&self, c: &ExactRational) -> SigmaData {
        let mut out = self.clone();
        out.sigma = &self.sigma + &RationalFunction::constant(c.clone());
        out
    }

    /// Replaces `ν_k` (0-indexed) by `ν_k + delta`.
    pub fn with_nu_shift(&self, k: usize, delta: &ExactRational) -> SigmaData {
        let mut out = self.clone();
        out.nu.nu[k] = &out.nu.nu[k] + delta;
        out
    }
}
