//! Spectra of the distance-`k` graphs on `{0,1}^n` and spectral MAXCUT bounds.
//!
//! The eigenvalue of `Q_n^{=k}` attached to characters of weight `x` is the
//! Krawtchouk sum `Σ_t (−1)^t C(x,t) C(n−x,k−t)`, with multiplicity `C(n,x)`.

mod laplacian;

pub use laplacian::{laplacian_lambda_max, spectral_density_bound, LambdaMax, SpectralBound, MAX_LAPLACIAN_VERTICES};

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{generate, parity_lift, Family, VertexMap};
use crate::rational::{self, Rational};

const PASCAL_ROWS: usize = 256;
pub const MAX_SPECTRUM_N: usize = 64;
pub const MAX_BINOM_SCAN: usize = 200;
/// Largest `n + 1` for which [`theorem_value`] builds and checks the maps.
pub const MAX_THEOREM_MAP_N: usize = 12;

fn pascal() -> &'static [Vec<BigUint>] {
    static TABLE: OnceLock<Vec<Vec<BigUint>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut rows: Vec<Vec<BigUint>> = Vec::with_capacity(PASCAL_ROWS + 1);
        rows.push(vec![BigUint::one()]);
        for n in 1..=PASCAL_ROWS {
            let prev = &rows[n - 1];
            let mut row = Vec::with_capacity(n + 1);
            row.push(BigUint::one());
            for k in 1..n {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigUint::one());
            rows.push(row);
        }
        rows
    })
}

/// `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    if n as usize <= PASCAL_ROWS {
        return pascal()[n as usize][k as usize].clone();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn binom_ref(n: usize, k: usize) -> &'static BigUint {
    static ZERO: OnceLock<BigUint> = OnceLock::new();
    if k > n {
        ZERO.get_or_init(BigUint::zero)
    } else {
        &pascal()[n][k]
    }
}

/// `Σ_{t=0}^{k} (−1)^t C(x,t) C(n−x,k−t)`.
pub fn krawtchouk(n: usize, k: usize, x: usize) -> Result<BigInt> {
    if k > n || x > n {
        return Err(Error::InvalidParameters(format!("krawtchouk needs k, x <= n (n={n}, k={k}, x={x})")));
    }
    let mut sum = BigInt::zero();
    for t in 0..=k.min(x) {
        let term = BigInt::from(binomial(x as u64, t as u64) * binomial((n - x) as u64, (k - t) as u64));
        if t % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    Ok(sum)
}

mod serde_bigint {
    use num_bigint::BigInt;
    use serde::Serializer;

    pub fn one<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn many<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(|x| x.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralReport {
    pub n: usize,
    pub k: usize,
    /// Index `x` holds the eigenvalue for characters of weight `x`.
    #[serde(serialize_with = "serde_bigint::many")]
    pub eigenvalue_by_weight: Vec<BigInt>,
    #[serde(serialize_with = "serde_bigint::one")]
    pub theta_min: BigInt,
    /// `(r − Θ)/(2r)`, an upper bound on the bipartite density.
    #[serde(with = "rational::serde_str")]
    pub density_bound: Rational,
    /// `2r/(r − Θ)`, the reciprocal.
    #[serde(with = "rational::serde_str")]
    pub x_lower_bound: Rational,
}

impl SpectralReport {
    pub fn degree(&self) -> &BigInt {
        &self.eigenvalue_by_weight[0]
    }

    pub fn multiplicity(&self, x: usize) -> BigUint {
        binomial(self.n as u64, x as u64)
    }
}

pub fn spectrum_cube_layer(n: usize, k: usize) -> Result<SpectralReport> {
    if k == 0 || k > n || n > MAX_SPECTRUM_N {
        return Err(Error::InvalidParameters(format!(
            "cube-layer spectrum needs 1 <= k <= n <= {MAX_SPECTRUM_N} (n={n}, k={k})"
        )));
    }
    let eig: Vec<BigInt> = (0..=n).map(|x| krawtchouk(n, k, x)).collect::<Result<_>>()?;
    let theta = eig.iter().min().cloned().expect("n >= 1");
    let r = eig[0].clone();
    let gap = &r - &theta;
    let density_bound = Rational::new(gap.clone(), BigInt::from(2) * &r);
    let x_lower_bound = Rational::new(BigInt::from(2) * &r, gap);
    Ok(SpectralReport { n, k, eigenvalue_by_weight: eig, theta_min: theta, density_bound, x_lower_bound })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinomReport {
    pub n_max: usize,
    pub checked: u64,
    /// `(n, k, x)` with the odd-index sum exceeding `C(n−1, k−1)`.
    pub violations: Vec<(usize, usize, usize)>,
    /// Triples with equality; `x = 1` is always tight and only counted.
    pub tight_at_one: u64,
    pub tight_other: Vec<(usize, usize, usize)>,
}

impl BinomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Scans `Σ_{odd t} C(x,t) C(n−x,k−t) ≤ C(n−1,k−1)` over even `k`,
/// `k ≤ n < 2k`, `1 ≤ x ≤ n`, `n ≤ n_max`.
pub fn verify_binom_inequality(n_max: usize) -> Result<BinomReport> {
    if n_max > MAX_BINOM_SCAN {
        return Err(Error::SizeLimit { what: "binomial inequality scan", limit: MAX_BINOM_SCAN, actual: n_max });
    }
    let triples: Vec<(usize, usize)> = (2..=n_max)
        .flat_map(|n| (2..=n).filter(move |&k| k % 2 == 0 && n < 2 * k).map(move |k| (n, k)))
        .collect();
    let per: Vec<(u64, Vec<(usize, usize, usize)>, u64, Vec<(usize, usize, usize)>)> = triples
        .par_iter()
        .map(|&(n, k)| {
            let bound = binom_ref(n - 1, k - 1);
            let mut checked = 0;
            let mut bad = Vec::new();
            let mut at_one = 0;
            let mut tight = Vec::new();
            for x in 1..=n {
                let mut sum = BigUint::zero();
                let mut t = 1;
                while t <= k.min(x) {
                    sum += binom_ref(x, t) * binom_ref(n - x, k - t);
                    t += 2;
                }
                checked += 1;
                match sum.cmp(bound) {
                    std::cmp::Ordering::Greater => bad.push((n, k, x)),
                    std::cmp::Ordering::Equal if x == 1 => at_one += 1,
                    std::cmp::Ordering::Equal => tight.push((n, k, x)),
                    std::cmp::Ordering::Less => {}
                }
            }
            (checked, bad, at_one, tight)
        })
        .collect();
    let mut report = BinomReport { n_max, checked: 0, violations: Vec::new(), tight_at_one: 0, tight_other: Vec::new() };
    for (c, bad, one, tight) in per {
        report.checked += c;
        report.violations.extend(bad);
        report.tight_at_one += one;
        report.tight_other.extend(tight);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremValue {
    pub n: usize,
    pub k: usize,
    #[serde(with = "rational::serde_str")]
    pub value: Rational,
    /// Spectral lower bound on `x(Q_{n/k})`; for odd `k` it is taken from
    /// `Q_{(n+1)/(k+1)}` and transported along the coordinate projection.
    #[serde(with = "rational::serde_str")]
    pub spectral_lower_bound: Rational,
    /// Upper bound from the identity map (even `k`) or the parity lift into
    /// `Q_{(n+1)/(k+1)}` (odd `k`).
    #[serde(with = "rational::serde_str")]
    pub hom_upper_bound: Rational,
    /// Whether the homomorphisms behind both bounds were built and checked
    /// edge by edge; `false` above [`MAX_THEOREM_MAP_N`].
    pub maps_checked: bool,
}

impl TheoremValue {
    pub fn bounds_meet(&self) -> bool {
        self.spectral_lower_bound == self.value && self.hom_upper_bound == self.value
    }
}

/// The coordinate projection `{0,1}^{n+1} → {0,1}^n` dropping the last
/// letter, a homomorphism `Q_{(n+1)/(k+1)} → Q_{n/k}`.
fn projection(n: usize) -> VertexMap {
    VertexMap { image: (0..1usize << (n + 1)).map(|x| x >> 1).collect() }
}

/// Closed-form `x(Q_{n/k})` for `k ≤ n < 2k` with the bounds that prove it.
pub fn theorem_value(n: usize, k: usize) -> Result<TheoremValue> {
    if k == 0 || k > n || n >= 2 * k {
        return Err(Error::InvalidParameters(format!("theorem range is k <= n < 2k (n={n}, k={k})")));
    }
    let even = k.is_multiple_of(2);
    let (sn, sk) = if even { (n, k) } else { (n + 1, k + 1) };
    if sn > MAX_SPECTRUM_N {
        return Err(Error::SizeLimit { what: "theorem spectrum", limit: MAX_SPECTRUM_N, actual: sn });
    }
    let value = Rational::new(BigInt::from(sn), BigInt::from(sk));
    let spectral_lower_bound = spectrum_cube_layer(sn, sk)?.x_lower_bound;
    let maps_checked = if even {
        true
    } else if sn <= MAX_THEOREM_MAP_N {
        let small = generate(Family::CubePower(n, k))?;
        let big = generate(Family::CubePower(n + 1, k + 1))?;
        let lift = parity_lift(n, k)?;
        lift.is_homomorphism(&small, &big) && projection(n).is_homomorphism(&big, &small)
    } else {
        false
    };
    Ok(TheoremValue { n, k, hom_upper_bound: value.clone(), value, spectral_lower_bound, maps_checked })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::odd_girth;
    use crate::rational::rat;

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), BigUint::from(10u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        assert_eq!(binomial(300, 2), BigUint::from(44850u32));
        assert_eq!(binomial(300, 298), binomial(300, 2));
        let big = binomial(100, 50).to_string();
        assert_eq!(big, "100891344545564193334812497256");
    }

    #[test]
    fn krawtchouk_examples() {
        assert_eq!(krawtchouk(3, 2, 1).unwrap(), BigInt::from(-1));
        assert_eq!(krawtchouk(5, 4, 1).unwrap(), BigInt::from(-3));
        assert_eq!(krawtchouk(7, 3, 0).unwrap(), BigInt::from(35));
        assert!(krawtchouk(3, 4, 0).is_err());
        assert!(krawtchouk(3, 1, 4).is_err());
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_cube_layer(4, 2).unwrap();
        let vals: Vec<i64> = s.eigenvalue_by_weight.iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(vals, vec![6, 0, -2, 0, 6]);
        assert_eq!(s.theta_min, BigInt::from(-2));
        assert_eq!(s.density_bound, rat(2, 3));
        assert_eq!(s.x_lower_bound, rat(3, 2));

        let s = spectrum_cube_layer(3, 2).unwrap();
        assert_eq!(s.theta_min, BigInt::from(-1));
        assert_eq!(s.x_lower_bound, rat(3, 2));
        let s = spectrum_cube_layer(5, 4).unwrap();
        assert_eq!(s.theta_min, BigInt::from(-3));
        assert_eq!(s.x_lower_bound, rat(5, 4));
        assert_eq!(s.density_bound, rat(4, 5));
        assert!(spectrum_cube_layer(65, 3).is_err());
        assert!(spectrum_cube_layer(4, 0).is_err());
    }

    /// Closed walks: `Σ_x C(n,x) λ_x = 0` and `Σ_x C(n,x) λ_x² = 2^n C(n,k)`.
    #[test]
    fn trace_identities() {
        for n in 1..=16usize {
            for k in 1..=n {
                let s = spectrum_cube_layer(n, k).unwrap();
                let mut t1 = BigInt::zero();
                let mut t2 = BigInt::zero();
                for (x, l) in s.eigenvalue_by_weight.iter().enumerate() {
                    let m = BigInt::from(s.multiplicity(x));
                    t1 += &m * l;
                    t2 += &m * l * l;
                }
                assert_eq!(t1, BigInt::zero());
                assert_eq!(t2, BigInt::from(binomial(n as u64, k as u64)) << n);
            }
        }
    }

    /// Spectrum against direct eigen-decomposition of the adjacency matrix.
    #[test]
    fn spectrum_matches_dense_eigenvalues() {
        for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 3), (6, 4)] {
            let g = generate(Family::CubeLayer(n, k)).unwrap();
            let size = g.n();
            let mut a = nalgebra::DMatrix::<f64>::zeros(size, size);
            for &(u, v) in g.edges() {
                a[(u, v)] = 1.0;
                a[(v, u)] = 1.0;
            }
            let mut numeric: Vec<f64> = a.symmetric_eigen().eigenvalues.iter().copied().collect();
            numeric.sort_by(|x, y| x.partial_cmp(y).unwrap());
            let s = spectrum_cube_layer(n, k).unwrap();
            let mut exact = Vec::new();
            for (x, l) in s.eigenvalue_by_weight.iter().enumerate() {
                for _ in 0..binomial(n as u64, x as u64).to_u64_digits().first().copied().unwrap_or(0) {
                    exact.push(i64::try_from(l).unwrap() as f64);
                }
            }
            exact.sort_by(|x, y| x.partial_cmp(y).unwrap());
            assert_eq!(exact.len(), numeric.len());
            for (e, f) in exact.iter().zip(&numeric) {
                assert!((e - f).abs() < 1e-9, "({n},{k}): {e} vs {f}");
            }
        }
    }

    #[test]
    fn minimum_at_weight_one_for_even_k() {
        for n in 2..=40usize {
            for k in (2..=n).step_by(2).filter(|&k| n < 2 * k) {
                let s = spectrum_cube_layer(n, k).unwrap();
                assert_eq!(s.theta_min, s.eigenvalue_by_weight[1]);
                // C(n,k)(1 − 2k/n) in exact arithmetic
                let c = Rational::from_integer(BigInt::from(binomial(n as u64, k as u64)));
                let expect = &c * (Rational::one() - rat(2 * k as i64, n as i64));
                assert_eq!(Rational::from_integer(s.theta_min.clone()), expect);
                assert_eq!(s.x_lower_bound, rat(n as i64, k as i64));
            }
        }
    }

    #[test]
    fn odd_layers_are_bipartite() {
        for n in 1..=8 {
            for k in (1..=n).step_by(2) {
                let g = generate(Family::CubeLayer(n, k)).unwrap();
                assert_eq!(odd_girth(&g), None);
                assert_eq!(spectrum_cube_layer(n, k).unwrap().density_bound, Rational::one());
            }
        }
    }

    #[test]
    fn binom_examples() {
        let r = verify_binom_inequality(5).unwrap();
        assert!(r.passed());
        // n=5, k=4, x=2: odd sum 2 < C(4,3) = 4, so not tight
        assert!(!r.tight_other.contains(&(5, 4, 2)));
        let r = verify_binom_inequality(100).unwrap();
        assert!(r.passed());
        assert!(r.tight_at_one > 0);
        // n = k: every odd x gives C(n−1, k−1) = 1
        assert!(r.tight_other.contains(&(4, 4, 3)));
        assert!(verify_binom_inequality(201).is_err());
    }

    #[test]
    fn theorem_examples() {
        for (n, k, v) in [(3, 2, rat(3, 2)), (4, 3, rat(5, 4)), (5, 4, rat(5, 4)), (5, 3, rat(3, 2)), (7, 5, rat(4, 3))] {
            let t = theorem_value(n, k).unwrap();
            assert_eq!(t.value, v);
            assert!(t.bounds_meet());
            assert!(t.maps_checked);
        }
        assert!(theorem_value(4, 2).is_err());
        assert!(theorem_value(3, 0).is_err());
        let t = theorem_value(41, 21).unwrap();
        assert!(!t.maps_checked);
        assert!(t.bounds_meet());
    }

    #[test]
    fn report_json() {
        let s = spectrum_cube_layer(3, 2).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v["eigenvalue_by_weight"], serde_json::json!(["3", "-1", "-1", "3"]));
        assert_eq!(v["x_lower_bound"], "3/2");
    }
}
