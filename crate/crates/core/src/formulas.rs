//! Exact closed forms: Fibonacci numbers, the Fibonacci-polynomial counting
//! formulas and the piecewise small-case counts.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Iterative Fibonacci with `F(0) = 0`, `F(1) = 1`.
pub fn fib(k: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FormulaFamily {
    Fib,
    CgT1,
    CgT2,
    CgvT1,
    CgvT2,
    CgvT3,
    CgvnT2,
    CgvnT3,
    CgvnT4,
    Cgd,
    CgdNt,
    Cgdn,
    Cgsvsp,
    CgsvspNt,
    Cgvsp,
    CgvspNt,
    Cgpsv,
    CgpsvNt,
}

impl FormulaFamily {
    pub const ALL: [FormulaFamily; 18] = [
        FormulaFamily::Fib,
        FormulaFamily::CgT1,
        FormulaFamily::CgT2,
        FormulaFamily::CgvT1,
        FormulaFamily::CgvT2,
        FormulaFamily::CgvT3,
        FormulaFamily::CgvnT2,
        FormulaFamily::CgvnT3,
        FormulaFamily::CgvnT4,
        FormulaFamily::Cgd,
        FormulaFamily::CgdNt,
        FormulaFamily::Cgdn,
        FormulaFamily::Cgsvsp,
        FormulaFamily::CgsvspNt,
        FormulaFamily::Cgvsp,
        FormulaFamily::CgvspNt,
        FormulaFamily::Cgpsv,
        FormulaFamily::CgpsvNt,
    ];

    pub fn name(self) -> &'static str {
        use FormulaFamily::*;
        match self {
            Fib => "fib",
            CgT1 => "cg_t1",
            CgT2 => "cg_t2",
            CgvT1 => "cgv_t1",
            CgvT2 => "cgv_t2",
            CgvT3 => "cgv_t3",
            CgvnT2 => "cgvn_t2",
            CgvnT3 => "cgvn_t3",
            CgvnT4 => "cgvn_t4",
            Cgd => "cgd",
            CgdNt => "cgd_nt",
            Cgdn => "cgdn",
            Cgsvsp => "cgsvsp",
            CgsvspNt => "cgsvsp_nt",
            Cgvsp => "cgvsp",
            CgvspNt => "cgvsp_nt",
            Cgpsv => "cgpsv",
            CgpsvNt => "cgpsv_nt",
        }
    }

    /// Smallest `n` accepted.
    pub fn min_n(self) -> u64 {
        use FormulaFamily::*;
        match self {
            Fib => 0,
            CgvT2 | CgvnT2 => 2,
            CgvT3 | CgvnT3 => 4,
            CgvnT4 => 5,
            _ => 1,
        }
    }

    /// Whether the family takes a type count `t` in addition to `n`.
    pub fn takes_t(self) -> bool {
        use FormulaFamily::*;
        matches!(self, CgdNt | CgsvspNt | CgvspNt | CgpsvNt | Cgdn)
    }

    pub fn requires_t(self) -> bool {
        self.takes_t() && self != FormulaFamily::Cgdn
    }

    /// Evaluates the family at `n`, with `t` for the per-type forms.
    pub fn evaluate(self, n: u64, t: Option<u64>) -> Result<BigInt> {
        use FormulaFamily::*;
        if n < self.min_n() {
            return Err(Error::Domain(format!(
                "{} requires n >= {}",
                self.name(),
                self.min_n()
            )));
        }
        if t.is_some() && !self.takes_t() {
            return Err(Error::Domain(format!("{} takes no t", self.name())));
        }
        let t = match (t, self.requires_t()) {
            (Some(t), _) => {
                if t == 0 {
                    return Err(Error::Domain(format!("{} requires t >= 1", self.name())));
                }
                Some(t)
            }
            (None, true) => {
                return Err(Error::Domain(format!("{} requires t", self.name())));
            }
            (None, false) => None,
        };
        let big = |v: u64| BigInt::from(v);
        let f = |k: u64| BigInt::from(fib(k));
        let indicator = |b: bool| BigInt::from(b as u8);
        let nb = big(n);
        Ok(match self {
            Fib => f(n),
            CgT1 => nb,
            CgvT1 => BigInt::one(),
            CgT2 => f(n + 6) - (&nb * &nb + 4u32 * &nb + 8u32),
            CgvT2 => &nb * (&nb - 1u32) / 2u32,
            CgvT3 => {
                let poly = &nb * &nb * &nb + 2u32 * &nb * &nb + 13u32 * &nb + 26u32;
                f(n + 7) - poly / 2u32
            }
            CgvnT2 => nb - 1u32,
            CgvnT3 => (&nb - 1u32) * (&nb - 2u32) * (&nb - 3u32) / 6u32,
            CgvnT4 => {
                let n2 = &nb * &nb;
                let poly = &n2 * &n2 - 2u32 * &n2 * &nb + 26u32 * &n2 + 47u32 * &nb + 132u32;
                f(n + 8) - poly / 6u32
            }
            Cgd => BigInt::one(),
            CgdNt => {
                let t = t.unwrap_or_default();
                indicator((t == 1 && n == 1) || (t == 2 && n >= 2))
            }
            Cgdn => match t {
                None => indicator(n >= 2),
                Some(t) => indicator(t == 2 && n >= 2),
            },
            Cgsvsp => match n {
                1 => big(0),
                3 => big(2),
                _ => big(1),
            },
            CgsvspNt => {
                let t = t.unwrap_or_default();
                indicator((t == 1 && n == 3) || (t == 2 && n >= 2))
            }
            Cgvsp | Cgpsv => match n {
                1 => big(0),
                2 => big(2),
                _ => big(1),
            },
            CgvspNt | CgpsvNt => {
                let t = t.unwrap_or_default();
                indicator((t == 1 && n == 2) || (t == 2 && n >= 2))
            }
        })
    }
}

impl fmt::Display for FormulaFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FormulaFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace('-', "_");
        FormulaFamily::ALL
            .into_iter()
            .find(|f| f.name() == key)
            .ok_or_else(|| {
                let names: Vec<_> = FormulaFamily::ALL.iter().map(|f| f.name()).collect();
                Error::Input(format!(
                    "unknown formula family {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

/// Target constant of a ratio comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GoldenTarget {
    Phi,
    PhiSquared,
}

/// Exact bounds on `|num(n)/den(n) − target|`.
#[derive(Clone, Debug, PartialEq)]
pub struct RatioGap {
    pub ratio: BigRational,
    pub target: GoldenTarget,
    /// The true gap lies in `[lower, upper]`.
    pub lower: BigRational,
    pub upper: BigRational,
}

impl RatioGap {
    /// Proven statement `gap < bound`.
    pub fn below(&self, bound: &BigRational) -> bool {
        &self.upper < bound
    }
}

/// An interval `[lo, hi]` containing φ, of width `1/(F(k)·F(k+1))`.
///
/// Consecutive Fibonacci quotients alternate around φ and
/// `|F(k+1)/F(k) − F(k+2)/F(k+1)| = 1/(F(k)F(k+1))` by Cassini's identity.
pub fn phi_enclosure(k: u64) -> (BigRational, BigRational) {
    let k = k.max(2);
    let (a, b, c) = (
        BigInt::from(fib(k)),
        BigInt::from(fib(k + 1)),
        BigInt::from(fib(k + 2)),
    );
    let q1 = BigRational::new(b.clone(), a);
    let q2 = BigRational::new(c, b);
    if q1 < q2 {
        (q1, q2)
    } else {
        (q2, q1)
    }
}

/// Exact-rational comparison of a formula quotient with φ (`CGV_t3 / CG_t2`)
/// or φ² (`CGVN_t4 / CG_t2`).
pub fn golden_ratio_gap(num: FormulaFamily, den: FormulaFamily, n: u64) -> Result<RatioGap> {
    let target = match (num, den) {
        (FormulaFamily::CgvT3, FormulaFamily::CgT2) => GoldenTarget::Phi,
        (FormulaFamily::CgvnT4, FormulaFamily::CgT2) => GoldenTarget::PhiSquared,
        _ => {
            return Err(Error::Domain(format!(
                "no golden-ratio limit is known for {num}/{den}"
            )))
        }
    };
    let a = num.evaluate(n, None)?;
    let b = den.evaluate(n, None)?;
    if b.is_zero() {
        return Err(Error::Domain(format!("{den} vanishes at n = {n}")));
    }
    let ratio = BigRational::new(a, b);
    let (lo, hi) = phi_enclosure(120);
    // φ² = φ + 1, so the enclosure shifts by one.
    let (lo, hi) = match target {
        GoldenTarget::Phi => (lo, hi),
        GoldenTarget::PhiSquared => (lo + BigInt::one(), hi + BigInt::one()),
    };
    let d_lo = &ratio - &lo;
    let d_hi = &ratio - &hi;
    let upper = d_lo.abs().max(d_hi.abs());
    let lower = if d_lo.is_negative() == d_hi.is_negative() {
        d_lo.abs().min(d_hi.abs())
    } else {
        BigRational::zero()
    };
    Ok(RatioGap {
        ratio,
        target,
        lower,
        upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use FormulaFamily::*;

    fn ev(f: FormulaFamily, n: u64) -> BigInt {
        f.evaluate(n, None).unwrap()
    }

    #[test]
    fn fibonacci() {
        assert_eq!(fib(0), BigUint::zero());
        assert_eq!(fib(1), BigUint::one());
        assert_eq!(fib(10), BigUint::from(55u32));
        assert_eq!(fib(93).to_string(), "12200160415121876738");
    }

    #[test]
    fn sequences() {
        let cgv3: Vec<_> = (4..=13).map(|n| ev(CgvT3, n)).collect();
        let want = [2, 11, 37, 98, 225, 470, 919, 1713, 3082, 5400];
        assert_eq!(cgv3, want.map(BigInt::from).to_vec());
        let cgvn4: Vec<_> = (5..=14).map(|n| ev(CgvnT4, n)).collect();
        let want = [1, 8, 35, 113, 303, 717, 1552, 3145, 6062, 11242];
        assert_eq!(cgvn4, want.map(BigInt::from).to_vec());
        assert_eq!(ev(CgT2, 2), BigInt::from(1));
        assert_eq!(ev(CgT2, 3), BigInt::from(5));
    }

    #[test]
    fn domains() {
        let err = CgvT3.evaluate(3, None).unwrap_err().to_string();
        assert!(err.contains("cgv_t3 requires n >= 4"), "{err}");
        assert!(CgdNt.evaluate(3, None).is_err());
        assert!(CgT2.evaluate(3, Some(2)).is_err());
        assert!(CgvnT4.evaluate(4, None).is_err());
    }

    #[test]
    fn piecewise() {
        assert_eq!(ev(Cgsvsp, 3), BigInt::from(2));
        assert_eq!(ev(Cgvsp, 2), BigInt::from(2));
        assert_eq!(ev(Cgpsv, 7), BigInt::from(1));
        assert_eq!(ev(Cgdn, 1), BigInt::from(0));
        assert_eq!(CgdNt.evaluate(1, Some(1)).unwrap(), BigInt::from(1));
        assert_eq!(CgsvspNt.evaluate(3, Some(1)).unwrap(), BigInt::from(1));
    }

    #[test]
    fn names_parse() {
        for f in FormulaFamily::ALL {
            assert_eq!(f.name().parse::<FormulaFamily>().unwrap(), f);
        }
        assert_eq!("CGVN_T4".parse::<FormulaFamily>().unwrap(), CgvnT4);
        assert!("cgx".parse::<FormulaFamily>().is_err());
    }

    #[test]
    fn enclosure_contains_phi() {
        // φ is the positive root of x² − x − 1: negative below, positive above.
        let (lo, hi) = phi_enclosure(30);
        let q = |x: &BigRational| x * x - x - BigRational::one();
        assert!(q(&lo).is_negative());
        assert!(q(&hi).is_positive());
    }

    #[test]
    fn golden_gaps() {
        let eps = BigRational::new(BigInt::one(), BigInt::from(10_000));
        let a = golden_ratio_gap(CgvT3, CgT2, 50).unwrap();
        assert!(a.below(&eps));
        let b = golden_ratio_gap(CgvnT4, CgT2, 50).unwrap();
        assert!(b.below(&eps));
        let early = golden_ratio_gap(CgvT3, CgT2, 10).unwrap();
        assert!(early.lower > a.upper);
        assert!(golden_ratio_gap(CgT2, CgvT3, 50).is_err());
    }
}
