//! Seeded random sampling of scalars, polynomials, algebra members and
//! module specs. Streams are reproducible: the same seed yields the same
//! sequence, so every verification report is a one-command reproduction.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::omega::{Family, ModuleSpec};
use crate::poly::{Exponent, Poly};
use crate::scalar::Scalar;
use crate::vfield::{basis_element, AlgebraTag, VectorField};
use crate::vlike::VLElement;
use crate::{Error, Result};

/// Configuration for the verification suites and the samplers they use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SuiteConfig {
    /// Dimension used by checks that run at a single rank.
    pub n: usize,
    /// Seed for all random streams.
    pub seed: u64,
    /// Exponent box bound for sampled and enumerated grades.
    #[serde(rename = "box")]
    pub box_bound: i64,
    /// Total-degree bound for sampled module elements.
    pub degree_bound: i64,
    /// Base sample count; checks with their own standard counts scale
    /// proportionally (the defaults reproduce the standard counts exactly).
    pub samples: usize,
    /// Families exercised by the per-family checks.
    pub families: Vec<Family>,
    /// Numerators of sampled rationals are drawn from `[-bound, bound]`.
    pub coeff_num_bound: i64,
    /// Denominators of sampled rationals are drawn from `[1, bound]`.
    pub coeff_den_bound: i64,
    /// Largest supported dimension.
    pub n_max: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n: 3,
            seed: 0x5eed_d1f0,
            box_bound: 4,
            degree_bound: 4,
            samples: 500,
            families: vec![Family::W, Family::Stilde, Family::Sbar],
            coeff_num_bound: 20,
            coeff_den_bound: 10,
            n_max: 6,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n > self.n_max {
            return Err(Error::InvalidConfig(format!(
                "n must be in 2..={}, got {}",
                self.n_max, self.n
            )));
        }
        if self.box_bound < 1 {
            return Err(Error::InvalidConfig("box must be >= 1".into()));
        }
        if self.degree_bound < 0 {
            return Err(Error::InvalidConfig("degree_bound must be >= 0".into()));
        }
        if self.samples == 0 {
            return Err(Error::InvalidConfig("samples must be >= 1".into()));
        }
        if self.families.is_empty() {
            return Err(Error::InvalidConfig("families must be nonempty".into()));
        }
        if self.coeff_num_bound < 1 || self.coeff_den_bound < 1 {
            return Err(Error::InvalidConfig(
                "coefficient bounds must be >= 1".into(),
            ));
        }
        Ok(())
    }

    /// Scales a check's standard sample count by `samples / 500`, keeping at
    /// least one sample.
    pub fn scaled(&self, standard: usize) -> usize {
        (standard * self.samples / 500).max(1)
    }
}

/// One reproducible sampler over a seeded stream.
pub struct Sampler<'a> {
    pub rng: ChaCha20Rng,
    cfg: &'a SuiteConfig,
}

impl<'a> Sampler<'a> {
    /// A sampler whose stream is derived from the config seed and a salt,
    /// so independent checks draw independent but reproducible streams.
    pub fn new(cfg: &'a SuiteConfig, salt: u64) -> Self {
        use rand::SeedableRng;
        Sampler {
            rng: ChaCha20Rng::seed_from_u64(cfg.seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ salt),
            cfg,
        }
    }

    pub fn rational(&mut self) -> BigRational {
        let num = self
            .rng
            .gen_range(-self.cfg.coeff_num_bound..=self.cfg.coeff_num_bound);
        let den = self.rng.gen_range(1..=self.cfg.coeff_den_bound);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A scalar, real three times out of four.
    pub fn scalar(&mut self) -> Scalar {
        let re = self.rational();
        let im = if self.rng.gen_range(0..4) == 0 {
            self.rational()
        } else {
            BigRational::new(BigInt::from(0), BigInt::from(1))
        };
        Scalar::new(re, im)
    }

    pub fn nonzero_scalar(&mut self) -> Scalar {
        loop {
            let s = self.scalar();
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn exponent(&mut self, n: usize, box_bound: i64) -> Exponent {
        Exponent(
            (0..n)
                .map(|_| self.rng.gen_range(-box_bound..=box_bound))
                .collect(),
        )
    }

    pub fn nonneg_exponent(&mut self, n: usize, degree: i64) -> Exponent {
        loop {
            let e: Vec<i64> = (0..n).map(|_| self.rng.gen_range(0..=degree)).collect();
            if e.iter().sum::<i64>() <= degree {
                return Exponent(e);
            }
        }
    }

    /// A sparse polynomial of total degree at most `degree` with up to
    /// `max_terms` monomials (possibly zero).
    pub fn poly(&mut self, n: usize, degree: i64, max_terms: usize) -> Poly {
        let mut p = Poly::zero(n);
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            p.add_term(self.nonneg_exponent(n, degree), self.scalar());
        }
        p
    }

    /// A nonzero sparse polynomial.
    pub fn nonzero_poly(&mut self, n: usize, degree: i64, max_terms: usize) -> Poly {
        loop {
            let p = self.poly(n, degree, max_terms);
            if !p.is_zero() {
                return p;
            }
        }
    }

    pub fn laurent(&mut self, n: usize, box_bound: i64, max_terms: usize) -> crate::LaurentPoly {
        let mut p = crate::LaurentPoly::zero(n);
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            p.add_term(self.exponent(n, box_bound), self.scalar());
        }
        p
    }

    fn distinct_axes(&mut self, n: usize) -> (usize, usize) {
        let i = self.rng.gen_range(1..=n);
        loop {
            let j = self.rng.gen_range(1..=n);
            if j != i {
                return (i, j);
            }
        }
    }

    /// One spanning element of the tagged algebra inside the box, by
    /// construction a member, resampling past excluded grades.
    pub fn basis_member(&mut self, tag: AlgebraTag, n: usize, box_bound: i64) -> VectorField {
        loop {
            let r = self.exponent(n, box_bound);
            let (i, j) = self.distinct_axes(n);
            let candidate = match tag {
                AlgebraTag::W => VectorField::term(n, r, i, Scalar::one()),
                AlgebraTag::CartanH => VectorField::d(n, i),
                _ => basis_element(tag, n, &r, i, j),
            };
            match candidate {
                Ok(v) if !v.is_zero() => return v,
                _ => continue,
            }
        }
    }

    /// A random member of the tagged algebra: a short combination of
    /// spanning elements, plus a Cartan term where the tag allows one.
    pub fn member(&mut self, tag: AlgebraTag, n: usize, box_bound: i64) -> VectorField {
        let mut v = VectorField::zero(n);
        let parts = self.rng.gen_range(1..=2);
        for _ in 0..parts {
            let b = self.basis_member(tag, n, box_bound);
            v = v
                .add(&b.scale(&self.nonzero_scalar()))
                .expect("same dimension");
        }
        let cartan_ok = matches!(
            tag,
            AlgebraTag::W | AlgebraTag::Stilde | AlgebraTag::Sbar | AlgebraTag::CartanH
        );
        if cartan_ok && self.rng.gen_range(0..2) == 0 {
            let i = self.rng.gen_range(1..=n);
            let d = VectorField::d(n, i).expect("axis in range");
            v = v
                .add(&d.scale(&self.nonzero_scalar()))
                .expect("same dimension");
        }
        v
    }

    pub fn vl_element(&mut self, box_bound: i64) -> VLElement {
        let mut e = VLElement::zero();
        for _ in 0..self.rng.gen_range(1..=3) {
            let i = self.rng.gen_range(-box_bound..=box_bound);
            let j = self.rng.gen_range(-box_bound..=box_bound);
            e.add_d(i, j, self.scalar());
        }
        if self.rng.gen_range(0..2) == 0 {
            e.add_h(self.rng.gen_range(1..=2), self.scalar());
        }
        e
    }

    pub fn spec(&mut self, family: Family, n: usize) -> ModuleSpec {
        let lambda: Vec<Scalar> = (0..n).map(|_| self.nonzero_scalar()).collect();
        match family {
            Family::W => ModuleSpec::w(lambda, self.scalar()),
            Family::Stilde => {
                let alpha: Vec<Scalar> = (0..n).map(|_| self.scalar()).collect();
                ModuleSpec::stilde(lambda, alpha)
            }
            Family::Sbar => ModuleSpec::sbar(lambda, self.scalar()),
        }
        .expect("sampled lambdas are nonzero")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let cfg = SuiteConfig::default();
        let draw = |salt: u64| {
            let mut s = Sampler::new(&cfg, salt);
            (0..20).map(|_| s.scalar()).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn members_pass_membership() {
        let cfg = SuiteConfig::default();
        let mut s = Sampler::new(&cfg, 1);
        for tag in [
            AlgebraTag::Stilde,
            AlgebraTag::StildePrime,
            AlgebraTag::Sbar,
            AlgebraTag::SbarPrime,
        ] {
            for _ in 0..30 {
                let v = s.member(tag, 3, 3);
                assert!(v.is_member(tag).ok, "sampled element left {tag:?}");
            }
        }
        // n = 2 samplers must avoid the excluded grades
        for _ in 0..50 {
            let v = s.member(AlgebraTag::SbarPrime, 2, 3);
            assert!(v.is_member(AlgebraTag::SbarPrime).ok);
        }
    }

    #[test]
    fn sampled_polys_respect_degree() {
        let cfg = SuiteConfig::default();
        let mut s = Sampler::new(&cfg, 2);
        for _ in 0..50 {
            let p = s.poly(3, 4, 5);
            assert!(p.total_degree() <= 4);
            for axis in 1..=3 {
                assert!(p.partial_degree(axis).unwrap() <= 4);
            }
        }
    }

    #[test]
    fn config_validation() {
        let mut cfg = SuiteConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.n = 1;
        assert!(cfg.validate().is_err());
        cfg.n = 9;
        assert!(cfg.validate().is_err());
        cfg = SuiteConfig {
            samples: 0,
            ..SuiteConfig::default()
        };
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn config_json_uses_box_key() {
        let cfg = SuiteConfig::default();
        let json = serde_json::to_value(&cfg).unwrap();
        assert!(json.get("box").is_some());
        let partial: SuiteConfig =
            serde_json::from_str(r#"{"n": 2, "seed": 42, "box": 3}"#).unwrap();
        assert_eq!(partial.n, 2);
        assert_eq!(partial.seed, 42);
        assert_eq!(partial.box_bound, 3);
        assert_eq!(partial.samples, SuiteConfig::default().samples);
    }
}
