//! The constant bundle steering the detection pipeline, in exact form.
//!
//! Two modes. `paper` derives every constant from (epsilon, k, m) by its
//! defining formula, carrying transcendental values as lazily refined
//! interval rationals. `scaled` takes small user-supplied rationals so the
//! pipeline can run on desk-scale instances; the true constants put every
//! threshold astronomically out of reach of any family that fits in memory.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::real::{factorial, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Paper,
    Scaled,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Mode::Paper => write!(f, "paper"),
            Mode::Scaled => write!(f, "scaled"),
        }
    }
}

/// Constant bundle. Field roles:
///
/// - `b`: divisor of the gamma-condition the input family is reduced to;
/// - `b_dag`: divisor in the error-sparsity test and the peeling loop guard;
/// - `b_star`: density divisor for cores and the rank thresholds (always
///   rational, so those comparisons are integer cross-multiplications);
/// - `beta`: intersection-size cutoff between non-error and error pairs;
/// - `gamma`: error-mass budget, `b_dag^(-beta)`;
/// - `assembly_threshold`: petal-purity fraction used by the assembly loop.
#[derive(Debug, Clone)]
pub struct Params {
    pub mode: Mode,
    pub epsilon: BigRational,
    pub k: u32,
    pub m: u32,
    pub c: Option<Real>,
    pub alpha: Option<Real>,
    pub b: Real,
    pub b_dag: Real,
    pub b_star: BigRational,
    pub beta: u32,
    pub gamma: Real,
    pub assembly_threshold: Real,
}

fn rat_int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn check_km(k: u32, m: u32) -> Result<()> {
    if k <= 2 {
        return Err(Error::domain(format!("k must exceed 2, got {k}")));
    }
    if m <= 2 {
        return Err(Error::domain(format!("m must exceed 2, got {m}")));
    }
    Ok(())
}

/// Derive the full bundle from its defining formulas.
pub fn derive_params(epsilon: &BigRational, k: u32, m: u32) -> Result<Params> {
    check_km(k, m)?;
    if !epsilon.is_positive() || *epsilon >= BigRational::one() {
        return Err(Error::domain(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    if m <= 15 {
        return Err(Error::domain(format!(
            "paper-mode constants need m >= 16 (alpha degenerates below), got {m}"
        )));
    }
    let k_real = Real::from(k as u64);
    let m_real = Real::from(m as u64);
    let c = Real::rational(epsilon.recip()).exp();
    let alpha = m_real.ln().div(&m_real.ln().ln());
    let b_dag = c.exp().mul(&k_real.powi(2));
    let b_star = BigRational::from_integer(BigInt::from(k) * BigInt::from(k) * BigInt::from(m).pow(4));
    let beta_real = m_real.div(&c.mul(&alpha));
    let beta_int = beta_real.ceil_int()?;
    let beta = beta_int
        .to_u32()
        .filter(|&b| b <= m)
        .ok_or_else(|| Error::domain(format!("derived beta {beta_int} outside [0, m={m}]")))?;
    let gamma = b_dag.powi(-(beta as i64));
    let b = k_real.powi(2).mul(&alpha).mul(&c.powi(2).exp());
    let assembly_threshold = Real::integer(1).sub(&Real::integer(1).div(&c.mul(&k_real)));
    Ok(Params {
        mode: Mode::Paper,
        epsilon: epsilon.clone(),
        k,
        m,
        c: Some(c),
        alpha: Some(alpha),
        b,
        b_dag,
        b_star,
        beta,
        gamma,
        assembly_threshold,
    })
}

/// Overrides for the scaled bundle; any field left `None` takes its
/// documented default.
#[derive(Debug, Clone, Default)]
pub struct ScaledOverrides {
    pub b: Option<BigRational>,
    pub b_dag: Option<BigRational>,
    pub b_star: Option<BigRational>,
    pub beta: Option<u32>,
    pub gamma: Option<BigRational>,
    pub assembly_threshold: Option<BigRational>,
}

/// Build a scaled bundle. Defaults: `b = k^2`, `b_dag = 2k^2`,
/// `b_star = k^2 m^2`, `beta = ceil(m/2)`, `gamma = b_dag^(-beta)`,
/// `assembly_threshold = 1/2`. `gamma` is recomputed when `b_dag` or
/// `beta` is overridden and `gamma` itself is not.
pub fn scaled_params(k: u32, m: u32, ov: &ScaledOverrides) -> Result<Params> {
    check_km(k, m)?;
    let k2 = rat_int((k as i64) * (k as i64));
    let b = ov.b.clone().unwrap_or_else(|| k2.clone());
    let b_dag = ov.b_dag.clone().unwrap_or_else(|| &k2 * rat_int(2));
    let b_star = ov
        .b_star
        .clone()
        .unwrap_or_else(|| &k2 * rat_int((m as i64) * (m as i64)));
    let beta = ov.beta.unwrap_or((m + 1) / 2);
    if beta > m {
        return Err(Error::domain(format!("beta={beta} must not exceed m={m}")));
    }
    for (name, v) in [("b", &b), ("b_dag", &b_dag), ("b_star", &b_star)] {
        if !v.is_positive() {
            return Err(Error::domain(format!("{name} must be positive, got {v}")));
        }
    }
    let gamma = match &ov.gamma {
        Some(g) => {
            if !g.is_positive() {
                return Err(Error::domain(format!("gamma must be positive, got {g}")));
            }
            g.clone()
        }
        None => Real::rational(b_dag.clone()).powi(-(beta as i64)).as_rational().unwrap().clone(),
    };
    if gamma > BigRational::one() {
        return Err(Error::domain(format!("gamma={gamma} must not exceed 1")));
    }
    let threshold = ov.assembly_threshold.clone().unwrap_or_else(|| BigRational::new(BigInt::one(), BigInt::from(2)));
    if !threshold.is_positive() || threshold >= BigRational::one() {
        return Err(Error::domain(format!(
            "assembly threshold must lie in (0,1), got {threshold}"
        )));
    }
    Ok(Params {
        mode: Mode::Scaled,
        epsilon: BigRational::new(BigInt::one(), BigInt::from(2)),
        k,
        m,
        c: None,
        alpha: None,
        b: Real::rational(b),
        b_dag: Real::rational(b_dag),
        b_star,
        beta,
        gamma: Real::rational(gamma),
        assembly_threshold: Real::rational(threshold),
    })
}

impl Params {
    /// Flat key=value block for run reports. Rational values render
    /// exactly; transcendental ones carry a `~` and 12 significant digits.
    pub fn to_kv_block(&self) -> String {
        fn real_kv(v: &Real) -> String {
            match v.as_rational() {
                Some(q) => q.to_string(),
                None => match v.decimal(12) {
                    Ok(s) => format!("~{s}"),
                    Err(_) => "~?".to_string(),
                },
            }
        }
        let mut out = String::new();
        out.push_str(&format!("mode={}\n", self.mode));
        out.push_str(&format!("epsilon={}\n", self.epsilon));
        out.push_str(&format!("k={}\n", self.k));
        out.push_str(&format!("m={}\n", self.m));
        if let Some(c) = &self.c {
            out.push_str(&format!("c={}\n", real_kv(c)));
        }
        if let Some(alpha) = &self.alpha {
            out.push_str(&format!("alpha={}\n", real_kv(alpha)));
        }
        out.push_str(&format!("beta={}\n", self.beta));
        out.push_str(&format!("b={}\n", real_kv(&self.b)));
        out.push_str(&format!("b_dag={}\n", real_kv(&self.b_dag)));
        out.push_str(&format!("b_star={}\n", self.b_star));
        out.push_str(&format!("gamma={}\n", real_kv(&self.gamma)));
        out.push_str(&format!("assembly_threshold={}\n", real_kv(&self.assembly_threshold)));
        out
    }
}

/// The three sunflower-threshold formulas. `prior` and `paper` are `None`
/// below m = 16 where their logarithmic forms degenerate.
#[derive(Debug, Clone)]
pub struct BoundValues {
    pub classic: num_bigint::BigUint,
    pub prior: Option<Real>,
    pub paper: Option<Real>,
}

/// classic = m!(k-1)^m; prior = (c ln m)^m; paper = (c k^2 ln m / ln ln m)^m,
/// with c = exp(1/epsilon).
pub fn bound_values(k: u32, m: u32, epsilon: &BigRational) -> Result<BoundValues> {
    if k < 2 {
        return Err(Error::domain(format!("k must be at least 2, got {k}")));
    }
    if m < 1 {
        return Err(Error::domain("m must be at least 1".to_string()));
    }
    if !epsilon.is_positive() || *epsilon >= BigRational::one() {
        return Err(Error::domain(format!("epsilon must lie in (0,1), got {epsilon}")));
    }
    let classic = factorial(m as u64) * num_bigint::BigUint::from((k - 1) as u64).pow(m);
    let (prior, paper) = if m >= 16 {
        let c = Real::rational(epsilon.recip()).exp();
        let m_real = Real::from(m as u64);
        let ln_m = m_real.ln();
        let prior = c.mul(&ln_m).powi(m as i64);
        let base = c.mul(&Real::from(k as u64).powi(2)).mul(&ln_m).div(&ln_m.ln());
        let paper = base.powi(m as i64);
        (Some(prior), Some(paper))
    } else {
        (None, None)
    };
    Ok(BoundValues { classic, prior, paper })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::parse_rational;

    fn half() -> BigRational {
        parse_rational("1/2").unwrap()
    }

    fn assert_close(v: &Real, frozen: &str) {
        // Frozen reference computed with an independent 60-digit evaluator.
        let f = parse_rational(frozen).unwrap();
        let tol = f.abs() * parse_rational("1/1000000000000").unwrap();
        let iv = v.enclosure(128).unwrap();
        assert!(
            iv.lo >= &f - &tol && iv.hi <= &f + &tol,
            "expected ~{frozen}, got [{}, {}]",
            iv.lo,
            iv.hi
        );
    }

    #[test]
    fn paper_bundle_at_eps_half_k3_m16() {
        let p = derive_params(&half(), 3, 16).unwrap();
        assert_eq!(p.mode, Mode::Paper);
        assert_close(p.c.as_ref().unwrap(), "7.389056098931");
        assert_close(p.alpha.as_ref().unwrap(), "2.718806807051");
        assert_eq!(p.beta, 1);
        assert_eq!(p.b_star, rat_int(589824));
        assert_close(&p.b_dag, "14563.60192721");
        assert_close(&p.gamma, "0.00006866433214790");
        assert_close(&p.assembly_threshold, "0.9548882389211");
        // b = k^2 alpha exp(c^2) ~ 1.2597841488e25
        assert_close(&p.b, "12597841488019692030000000");
    }

    #[test]
    fn paper_mode_rejects_small_m_and_bad_epsilon() {
        assert!(derive_params(&half(), 3, 15).is_err());
        assert!(derive_params(&half(), 2, 16).is_err());
        assert!(derive_params(&parse_rational("1").unwrap(), 3, 16).is_err());
        assert!(derive_params(&parse_rational("-1/2").unwrap(), 3, 16).is_err());
    }

    #[test]
    fn derive_is_deterministic() {
        let a = derive_params(&half(), 3, 16).unwrap();
        let b = derive_params(&half(), 3, 16).unwrap();
        let ia = a.b.enclosure(128).unwrap();
        let ib = b.b.enclosure(128).unwrap();
        assert_eq!(ia.lo, ib.lo);
        assert_eq!(ia.hi, ib.hi);
    }

    #[test]
    fn scaled_bundle_accepts_explicit_overrides() {
        let ov = ScaledOverrides {
            b: parse_rational("4"),
            b_dag: parse_rational("8"),
            b_star: parse_rational("16"),
            beta: Some(2),
            gamma: parse_rational("1/8"),
            ..Default::default()
        };
        let p = scaled_params(3, 4, &ov).unwrap();
        assert_eq!(p.mode, Mode::Scaled);
        assert_eq!(p.b.as_rational().unwrap(), &rat_int(4));
        assert_eq!(p.beta, 2);
        assert_eq!(p.gamma.as_rational().unwrap(), &parse_rational("1/8").unwrap());
    }

    #[test]
    fn scaled_bundle_rejects_beta_above_m() {
        let ov = ScaledOverrides { beta: Some(7), ..Default::default() };
        assert!(scaled_params(3, 4, &ov).is_err());
    }

    #[test]
    fn scaled_defaults_hold_invariants_over_grid() {
        for k in 3..=6u32 {
            for m in 3..=8u32 {
                let p = scaled_params(k, m, &ScaledOverrides::default()).unwrap();
                let k2 = rat_int((k * k) as i64);
                assert_eq!(p.b.as_rational().unwrap(), &k2);
                assert_eq!(p.b_dag.as_rational().unwrap(), &(&k2 * rat_int(2)));
                assert_eq!(p.b_star, &k2 * rat_int((m * m) as i64));
                assert_eq!(p.beta, (m + 1) / 2);
                assert!(p.beta <= m);
                let g = p.gamma.as_rational().unwrap();
                assert!(g.is_positive() && *g <= BigRational::one());
                let expect_gamma =
                    Real::rational(&k2 * rat_int(2)).powi(-(p.beta as i64));
                assert_eq!(g, expect_gamma.as_rational().unwrap());
            }
        }
    }

    #[test]
    fn gamma_recomputed_when_parts_overridden() {
        let ov = ScaledOverrides {
            b_dag: parse_rational("8"),
            beta: Some(2),
            ..Default::default()
        };
        let p = scaled_params(3, 4, &ov).unwrap();
        assert_eq!(p.gamma.as_rational().unwrap(), &parse_rational("1/64").unwrap());
    }

    #[test]
    fn classic_bound_formula() {
        assert_eq!(bound_values(3, 2, &half()).unwrap().classic.to_string(), "8");
        assert_eq!(bound_values(3, 3, &half()).unwrap().classic.to_string(), "48");
        assert_eq!(
            bound_values(6, 10, &half()).unwrap().classic.to_string(),
            "35437500000000"
        );
        assert!(bound_values(3, 2, &half()).unwrap().paper.is_none());
    }

    #[test]
    fn paper_bound_matches_independent_evaluation() {
        let b = bound_values(3, 16, &half()).unwrap();
        // 10 significant digits from an independent 60-digit evaluation.
        assert_eq!(b.paper.unwrap().decimal(10).unwrap(), "1.304238900e36");
        assert_eq!(b.prior.unwrap().decimal(10).unwrap(), "9.629210015e20");
    }

    #[test]
    fn paper_bound_monotone_in_k_and_m() {
        let vals: Vec<Real> = (16..=20)
            .map(|m| bound_values(3, m, &half()).unwrap().paper.unwrap())
            .collect();
        for w in vals.windows(2) {
            assert!(w[0].try_le(&w[1]).unwrap(), "not nondecreasing in m");
        }
        let valk: Vec<Real> = (3..=6)
            .map(|k| bound_values(k, 16, &half()).unwrap().paper.unwrap())
            .collect();
        for w in valk.windows(2) {
            assert!(w[0].try_le(&w[1]).unwrap(), "not nondecreasing in k");
        }
    }

    #[test]
    fn kv_block_round_trips_fields() {
        let p = scaled_params(3, 4, &ScaledOverrides::default()).unwrap();
        let kv = p.to_kv_block();
        assert!(kv.contains("mode=scaled"));
        assert!(kv.contains("b_star=144"));
        assert!(kv.contains("beta=2"));
        let pp = derive_params(&half(), 3, 16).unwrap();
        assert!(pp.to_kv_block().contains("mode=paper"));
        assert!(pp.to_kv_block().contains("c=~7.38905609893"));
    }
}
