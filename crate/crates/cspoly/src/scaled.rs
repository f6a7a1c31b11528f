use crate::dd::Dd;

/// Sign plus base-2 exponent-tracked magnitude: `sign * mantissa * 2^exponent2`
/// with `mantissa` in `[1, 2)`, or the exact zero (`sign = 0`, `mantissa = 0`).
///
/// Carries values of order `exp(N t^2)` that overflow f64 long before the
/// degrees of interest are reached. Construction from a natural log is exact
/// enough that round-tripping through `(sign, log10)` preserves the value to
/// a few ulps of the stored logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScaledReal {
    sign: i8,
    exponent2: i64,
    mantissa: f64,
}

const LN_2: f64 = std::f64::consts::LN_2;
const LN_10: f64 = std::f64::consts::LN_10;
// double-double splits: the std constants are the high parts, the low parts
// carry the next 53 bits of log10(2) and ln(2)
const LOG10_2_HI: f64 = std::f64::consts::LOG10_2;
const LOG10_2_LO: f64 = -2.8037281277851704e-18;
const LN_2_HI: f64 = std::f64::consts::LN_2;
const LN_2_LO: f64 = 2.3190468138462996e-17;

/// Splits a positive finite f64 as `m * 2^e` with `m` in `[1, 2)`.
fn frexp1(x: f64) -> (f64, i64) {
    debug_assert!(x > 0.0 && x.is_finite());
    let bits = x.to_bits();
    let raw_exp = ((bits >> 52) & 0x7ff) as i64;
    if raw_exp == 0 {
        // subnormal: renormalize first
        let (m, e) = frexp1(x * (2f64).powi(120));
        (m, e - 120)
    } else {
        let m = f64::from_bits((bits & 0x000f_ffff_ffff_ffff) | (1023u64 << 52));
        (m, raw_exp - 1023)
    }
}

/// `2^k` applied safely for |k| beyond the f64 exponent range.
fn mul_pow2(x: f64, k: i64) -> f64 {
    if (-1000..=1000).contains(&k) {
        x * (2f64).powi(k as i32)
    } else if k > 0 {
        x * (2f64).powi(1000) * (2f64).powi((k - 1000).min(1000) as i32)
    } else {
        x * (2f64).powi(-1000) * (2f64).powi((k + 1000).max(-1000) as i32)
    }
}

impl ScaledReal {
    pub const ZERO: ScaledReal = ScaledReal {
        sign: 0,
        exponent2: 0,
        mantissa: 0.0,
    };

    pub fn from_f64(x: f64) -> ScaledReal {
        assert!(
            x.is_finite(),
            "ScaledReal::from_f64 requires a finite value"
        );
        if x == 0.0 {
            return ScaledReal::ZERO;
        }
        let (m, e) = frexp1(x.abs());
        ScaledReal {
            sign: if x > 0.0 { 1 } else { -1 },
            exponent2: e,
            mantissa: m,
        }
    }

    /// Value `mantissa_part * 2^extra_exp2` where `mantissa_part` is any
    /// finite f64. Used by the scaled recurrences.
    pub fn from_parts(mantissa_part: f64, extra_exp2: i64) -> ScaledReal {
        let mut v = ScaledReal::from_f64(mantissa_part);
        if v.sign != 0 {
            v.exponent2 += extra_exp2;
        }
        v
    }

    /// Builds `sign * exp(ln_abs)`. `ln_abs = -inf` yields zero.
    pub fn from_sign_ln(sign: i8, ln_abs: f64) -> ScaledReal {
        if sign == 0 || ln_abs == f64::NEG_INFINITY {
            return ScaledReal::ZERO;
        }
        debug_assert!(ln_abs.is_finite());
        let e = (ln_abs / LN_2).floor();
        // residual = ln_abs - e*ln2 in double-double so the mantissa carries
        // no reconstruction error beyond the rounding of ln_abs itself
        let r = Dd::from_f64(ln_abs)
            .sub(Dd::from_f64(e).mul(Dd::new(LN_2_HI, LN_2_LO)))
            .to_f64();
        let mut m = r.exp();
        let mut e = e as i64;
        // guard the [1,2) window against fp edge cases of floor/exp
        if m < 1.0 {
            m *= 2.0;
            e -= 1;
        } else if m >= 2.0 {
            m *= 0.5;
            e += 1;
        }
        ScaledReal {
            sign: if sign > 0 { 1 } else { -1 },
            exponent2: e,
            mantissa: m,
        }
    }

    pub fn from_sign_log10(sign: i8, log10_abs: f64) -> ScaledReal {
        if sign == 0 || log10_abs == f64::NEG_INFINITY {
            return ScaledReal::ZERO;
        }
        let e = (log10_abs / LOG10_2_HI).floor();
        let r = Dd::from_f64(log10_abs)
            .sub(Dd::from_f64(e).mul(Dd::new(LOG10_2_HI, LOG10_2_LO)))
            .to_f64();
        let mut m = (r * LN_10).exp();
        let mut e = e as i64;
        if m < 1.0 {
            m *= 2.0;
            e -= 1;
        } else if m >= 2.0 {
            m *= 0.5;
            e += 1;
        }
        ScaledReal {
            sign: if sign > 0 { 1 } else { -1 },
            exponent2: e,
            mantissa: m,
        }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }

    pub fn mantissa(&self) -> f64 {
        self.mantissa
    }

    pub fn exponent2(&self) -> i64 {
        self.exponent2
    }

    /// Natural log of |value|; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.sign == 0 {
            return f64::NEG_INFINITY;
        }
        Dd::from_f64(self.exponent2 as f64)
            .mul(Dd::new(LN_2_HI, LN_2_LO))
            .add(Dd::from_f64(self.mantissa.ln()))
            .to_f64()
    }

    /// log10 of |value|; `-inf` for zero.
    pub fn log10_abs(&self) -> f64 {
        if self.sign == 0 {
            return f64::NEG_INFINITY;
        }
        Dd::from_f64(self.exponent2 as f64)
            .mul(Dd::new(LOG10_2_HI, LOG10_2_LO))
            .add(Dd::from_f64(self.mantissa.log10()))
            .to_f64()
    }

    /// The represented value as f64, saturating to `±inf`/0 outside range.
    pub fn value(&self) -> f64 {
        if self.sign == 0 {
            return 0.0;
        }
        let v = mul_pow2(self.mantissa, self.exponent2);
        if self.sign > 0 {
            v
        } else {
            -v
        }
    }

    pub fn neg(&self) -> ScaledReal {
        ScaledReal {
            sign: -self.sign,
            ..*self
        }
    }

    pub fn mul(&self, other: &ScaledReal) -> ScaledReal {
        if self.sign == 0 || other.sign == 0 {
            return ScaledReal::ZERO;
        }
        let mut m = self.mantissa * other.mantissa; // in [1,4)
        let mut e = self.exponent2 + other.exponent2;
        if m >= 2.0 {
            m *= 0.5;
            e += 1;
        }
        ScaledReal {
            sign: self.sign * other.sign,
            exponent2: e,
            mantissa: m,
        }
    }

    /// Multiplies by `exp(ln_factor)`.
    pub fn scale_ln(&self, ln_factor: f64) -> ScaledReal {
        if self.sign == 0 {
            return ScaledReal::ZERO;
        }
        ScaledReal::from_sign_ln(self.sign, self.ln_abs() + ln_factor)
    }

    /// `self / other` as f64 (other must be nonzero); saturates to `±inf`
    /// when the quotient leaves f64 range.
    pub fn ratio(&self, other: &ScaledReal) -> f64 {
        assert!(other.sign != 0, "ratio denominator is zero");
        if self.sign == 0 {
            return 0.0;
        }
        let s = (self.sign * other.sign) as f64;
        let de = self.exponent2 - other.exponent2;
        s * mul_pow2(self.mantissa / other.mantissa, de)
    }

    /// `|self/reference - 1|`.
    pub fn rel_err(&self, reference: &ScaledReal) -> f64 {
        (self.ratio(reference) - 1.0).abs()
    }

    /// `|self - other| / envelope`, evaluated through ratios so the
    /// intermediate magnitudes stay in f64 range whenever both operands are
    /// O(envelope).
    pub fn diff_over(&self, other: &ScaledReal, envelope: &ScaledReal) -> f64 {
        let a = if self.sign == 0 {
            0.0
        } else {
            self.ratio(envelope)
        };
        let b = if other.sign == 0 {
            0.0
        } else {
            other.ratio(envelope)
        };
        (a - b).abs()
    }
}
