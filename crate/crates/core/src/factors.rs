//! The factors `f_m` of `I(C_n, x)` for odd `n`, computed two ways, and a
//! numeric check of the closed-form roots.
//!
//! The transform route starts from cyclotomic polynomials: fold `Φ_2n` into
//! the minimal polynomial of `2cos(π/n)`, translate by `-2`, reverse with
//! alternating signs and normalise. The division route peels known factors
//! off `I(C_n, x)` over the divisor lattice. The two share only `IntPoly`.

use std::collections::{BTreeMap, HashMap};
use std::f64::consts::PI;
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{cycle_poly, IntPoly};

/// Relative residual accepted by [`check_roots`].
pub const ROOT_TOLERANCE: f64 = 1e-9;

pub fn euler_phi(m: u64) -> u64 {
    assert!(m >= 1, "totient of zero");
    let (mut rest, mut phi, mut p) = (m, m, 2);
    while p * p <= rest {
        if rest % p == 0 {
            while rest % p == 0 {
                rest /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if rest > 1 {
        phi -= phi / rest;
    }
    phi
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n.is_multiple_of(*d)).collect()
}

fn require_odd(n: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n must be odd and at least 3, got {n}")));
    }
    Ok(())
}

fn cyclotomic_memo() -> &'static RwLock<HashMap<u64, IntPoly>> {
    static MEMO: OnceLock<RwLock<HashMap<u64, IntPoly>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// `Φ_m = (x^m - 1) / ∏_{d | m, d < m} Φ_d`, memoised.
pub fn cyclotomic_poly(m: u64) -> IntPoly {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = cyclotomic_memo().read().expect("memo lock").get(&m) {
        return p.clone();
    }
    let numerator = &IntPoly::monomial(1, m as usize) - &IntPoly::one();
    let denominator: IntPoly = divisors(m).into_iter().filter(|&d| d < m).map(cyclotomic_poly).product();
    let phi =
        numerator.exact_div(&denominator).unwrap_or_else(|e| panic!("cyclotomic recursion broke at m = {m}: {e}"));
    cyclotomic_memo().write().expect("memo lock").entry(m).or_insert(phi).clone()
}

/// Minimal polynomial `ψ_m` of `2cos(2π/m)`, from `Φ_m(y) = y^d ψ_m(y + 1/y)`.
///
/// Works top-down: the leading remaining coefficient of the palindromic
/// `Φ_m` fixes the next coefficient of `ψ_m`, whose contribution
/// `y^(d-k) (y^2 + 1)^k` is then subtracted. Anything left over is a bug.
pub fn min_poly_2cos(m: u64) -> Result<IntPoly> {
    if m < 3 {
        return Err(Error::InvalidArgument(format!("min_poly_2cos needs m >= 3, got {m}")));
    }
    let phi = cyclotomic_poly(m);
    let two_d = phi.degree().expect("cyclotomic is nonzero");
    if !two_d.is_multiple_of(2) {
        return Err(Error::Invariant(format!("Φ_{m} has odd degree {two_d}")));
    }
    let d = two_d / 2;
    let y2_plus_1 = IntPoly::from_i64(&[1, 0, 1]);
    let mut rest = phi;
    let mut psi = vec![BigInt::from(0); d + 1];
    for k in (0..=d).rev() {
        let c = rest.coeff(d + k);
        if c == BigInt::from(0) {
            continue;
        }
        rest = &rest - &y2_plus_1.pow(k as u32).shift(d - k).scale(&c);
        psi[k] = c;
    }
    if !rest.is_zero() {
        return Err(Error::Invariant(format!("Φ_{m} is not a palindromic fold: remainder {rest}")));
    }
    Ok(IntPoly::new(psi))
}

/// `f_n` via `ψ_2n`: `h(x) = ψ_2n(x - 2) = Σ b_t x^t`, then
/// `f(x) = Σ b_t (-x)^(d-t)` scaled to coprime coefficients.
pub fn f_poly_by_transform(n: u64) -> Result<IntPoly> {
    require_odd(n)?;
    let g = min_poly_2cos(2 * n)?;
    let h = g.compose_shift(&BigInt::from(-2));
    let f = h.reversed().negate_x();
    let (_, f) = f.primitive_part()?;
    if !f.coeff(0).is_one() {
        return Err(Error::Invariant(format!("f_{n} normalised with constant term {}", f.coeff(0))));
    }
    Ok(f)
}

/// `f_n = I(C_n) / ∏_{m | n, 1 < m < n} f_m`, recursively.
pub fn f_poly_by_division(n: u64) -> Result<IntPoly> {
    require_odd(n)?;
    let mut memo = BTreeMap::new();
    division_rec(n, &mut memo)
}

fn division_rec(n: u64, memo: &mut BTreeMap<u64, IntPoly>) -> Result<IntPoly> {
    if let Some(f) = memo.get(&n) {
        return Ok(f.clone());
    }
    let mut known = IntPoly::one();
    for m in divisors(n).into_iter().filter(|&m| m > 1 && m < n) {
        known = &known * &division_rec(m, memo)?;
    }
    let f = cycle_poly(n)
        .exact_div(&known)
        .map_err(|e| Error::InexactDivision(format!("I(C_{n}) is not divisible by its proper factors: {e}")))?;
    memo.insert(n, f.clone());
    Ok(f)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Route {
    Division,
    Transform,
}

impl Route {
    pub fn f_poly(self, n: u64) -> Result<IntPoly> {
        match self {
            Route::Division => f_poly_by_division(n),
            Route::Transform => f_poly_by_transform(n),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSet {
    pub n: u64,
    pub factors: BTreeMap<u64, IntPoly>,
    pub route: Route,
}

impl FactorSet {
    pub fn product(&self) -> IntPoly {
        self.factors.values().product()
    }
}

/// Every `f_m` for `m | n`, `m ≥ 3`, with the product checked against `I(C_n)`.
pub fn factorize_cycle_poly(n: u64, route: Route) -> Result<FactorSet> {
    require_odd(n)?;
    let mut factors = BTreeMap::new();
    for m in divisors(n).into_iter().filter(|&m| m >= 3) {
        let f = route.f_poly(m)?;
        let expected_degree = (euler_phi(m) / 2) as usize;
        if f.degree() != Some(expected_degree) {
            return Err(Error::Invariant(format!("deg f_{m} = {:?}, expected {expected_degree}", f.degree())));
        }
        factors.insert(m, f);
    }
    let set = FactorSet { n, factors, route };
    if set.product() != cycle_poly(n) {
        return Err(Error::Invariant(format!("factors of I(C_{n}) do not multiply back")));
    }
    Ok(set)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Root {
    pub index: u64,
    pub value: f64,
    /// `gcd(2i - 1, n)`: the root belongs to `f_{n / gcd}`
    pub gcd: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSpec {
    pub n: u64,
    pub roots: Vec<Root>,
}

/// `c_i = -1 / (2 + 2cos((2i - 1)π / n))` for `i = 1..=⌊n/2⌋`.
pub fn root_values(n: u64) -> Result<RootSpec> {
    require_odd(n)?;
    let roots = (1..=n / 2)
        .map(|i| {
            let theta = (2 * i - 1) as f64 * PI / n as f64;
            Root { index: i, value: -1.0 / (2.0 + 2.0 * theta.cos()), gcd: (2 * i - 1).gcd(&n) }
        })
        .collect();
    Ok(RootSpec { n, roots })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootClass {
    /// roots with `gcd(2i - 1, n) = 1`, the roots of `f_n`
    Primitive,
    /// all roots, those of `I(C_n)`
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RootCheck {
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// `|f(c)|` relative to `max|coeff| · max(1, |c|)^deg`.
pub fn relative_residual(f: &IntPoly, c: f64) -> f64 {
    let deg = f.degree().unwrap_or(0) as i32;
    let scale = f.max_abs_coeff_f64() * c.abs().max(1.0).powi(deg);
    if scale == 0.0 {
        0.0
    } else {
        f.eval_f64(c).abs() / scale
    }
}

pub fn check_roots(f: &IntPoly, spec: &RootSpec, which: RootClass) -> RootCheck {
    let max_residual = spec
        .roots
        .iter()
        .filter(|r| which == RootClass::All || r.gcd == 1)
        .map(|r| relative_residual(f, r.value))
        .fold(0.0, f64::max);
    RootCheck { max_residual, tolerance: ROOT_TOLERANCE, pass: max_residual < ROOT_TOLERANCE }
}

/// Smallest gap between two closed-form roots.
pub fn min_root_gap(spec: &RootSpec) -> f64 {
    let mut values: Vec<f64> = spec.roots.iter().map(|r| r.value).collect();
    values.sort_by(f64::total_cmp);
    values.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min)
}

/// Factorisation plus root check of each factor against its own roots.
#[derive(Clone, Debug, Serialize)]
pub struct FactorReport {
    #[serde(flatten)]
    pub set: FactorSet,
    pub root_check: RootCheck,
}

pub fn factor_report(n: u64, route: Route) -> Result<FactorReport> {
    let set = factorize_cycle_poly(n, route)?;
    let mut max_residual: f64 = 0.0;
    for (&m, f) in &set.factors {
        let check = check_roots(f, &root_values(m)?, RootClass::Primitive);
        max_residual = max_residual.max(check.max_residual);
    }
    let all = check_roots(&set.product(), &root_values(n)?, RootClass::All);
    max_residual = max_residual.max(all.max_residual);
    let root_check = RootCheck { max_residual, tolerance: ROOT_TOLERANCE, pass: max_residual < ROOT_TOLERANCE };
    Ok(FactorReport { set, root_check })
}
