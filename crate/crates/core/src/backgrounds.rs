//! Catalog constructors for the solution families, the Cahen–Wallach Lie
//! algebra, moduli-space canonicalization, and the Killing basis of the
//! maximal pp-wave.

use crate::chart::Chart;
use crate::clifford::{lightcone_frame_metric, minkowski_frame_metric, FRAME_DIM};
use crate::geometry::{FormBasis, FormField, MetricField, VectorField};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::ring::RingElem;
use crate::scalar::{rat, rat_sqrt, Rat};
use crate::sugra::{Background, BackgroundMeta, FrKind, SugraError};
use num::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Arc;
use thiserror::Error;

pub type RatMat = Matrix<Rat>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BackgroundError {
    #[error("degenerate eigenvalue vector: a Cahen–Wallach space needs nondegenerate A")]
    DegenerateA,
    #[error("expected {expected} eigenvalues, got {got}")]
    BadEigenvalueCount { expected: usize, got: usize },
    #[error("flux magnitude √(6|s|) is irrational for this s")]
    IrrationalFlux,
    #[error("sign of s does not match the requested product kind")]
    WrongSign,
    #[error("some −λᵢ is not the square of a rational; no exact Killing basis")]
    IrrationalFrequency,
    #[error("eigenvalue vector is zero")]
    ZeroInput,
    #[error("background is not of Cahen–Wallach type")]
    NotCahenWallach,
    #[error(transparent)]
    Sugra(#[from] SugraError),
}

/// Eigenvalue data of a Cahen–Wallach space plus the flux magnitude.
#[derive(Clone, Debug, PartialEq)]
pub struct CWData {
    pub lambda: Vec<Rat>,
    pub mu: Rat,
}

impl CWData {
    pub fn new(lambda: Vec<Rat>, mu: Rat) -> Self {
        CWData { lambda, mu }
    }
}

fn unit_coframe(chart: &Arc<Chart>) -> Vec<Vec<RingElem>> {
    let n = chart.dim();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|i| {
                    if a == i {
                        RingElem::one(chart)
                    } else {
                        RingElem::zero(chart)
                    }
                })
                .collect()
        })
        .collect()
}

/// Flat space with zero flux.
pub fn minkowski11() -> Background {
    let ch = Chart::new((0..FRAME_DIM).map(|i| format!("x{i}")).collect()).shared();
    let metric = MetricField::new(&ch, unit_coframe(&ch), minkowski_frame_metric())
        .expect("unit coframe");
    let flux = FormField::zero(&ch, 4, FormBasis::Coordinate);
    Background::new(BackgroundMeta::Flat, metric, flux).expect("flat background")
}

/// Greatest rational g with every input an integer multiple of g.
fn rational_gcd(values: &[Rat]) -> Option<Rat> {
    let mut nums: Vec<BigInt> = Vec::new();
    let mut dens: Vec<BigInt> = Vec::new();
    for v in values {
        if v.is_zero() {
            continue;
        }
        nums.push(v.numer().abs());
        dens.push(v.denom().clone());
    }
    if nums.is_empty() {
        return None;
    }
    let gcd = nums
        .iter()
        .skip(1)
        .fold(nums[0].clone(), |a, b| num::Integer::gcd(&a, b));
    let lcm = dens
        .iter()
        .skip(1)
        .fold(dens[0].clone(), |a, b| num::Integer::lcm(&a, b));
    Some(Rat::new(gcd, lcm))
}

/// The pp-wave chart (x⁺, x⁻, x¹..x⁹) with a periodic x⁻ layer whenever
/// all frequencies √(−λᵢ) are rational.
fn cw_chart(lambda: &[Rat]) -> Arc<Chart> {
    let mut vars: Vec<String> = vec!["xp".into(), "xm".into()];
    for i in 1..=lambda.len() {
        vars.push(format!("x{i}"));
    }
    let chart = Chart::new(vars);
    let freqs: Option<Vec<Rat>> = lambda.iter().map(|l| rat_sqrt(&-l.clone())).collect();
    match freqs.and_then(|f| rational_gcd(&f)) {
        Some(base) => chart.with_periodic("xm", base).shared(),
        None => chart.shared(),
    }
}

/// Cahen–Wallach pp-wave: metric 2dx⁺dx⁻ + (Σλᵢ(xⁱ)²)(dx⁻)² + Σ(dxⁱ)²
/// with flux μ dx⁻∧dx¹∧dx²∧dx³.
pub fn cahen_wallach(data: &CWData) -> Result<Background, BackgroundError> {
    if data.lambda.len() != FRAME_DIM - 2 {
        return Err(BackgroundError::BadEigenvalueCount {
            expected: FRAME_DIM - 2,
            got: data.lambda.len(),
        });
    }
    if data.lambda.iter().any(|l| l.is_zero()) {
        return Err(BackgroundError::DegenerateA);
    }
    let ch = cw_chart(&data.lambda);
    let n = ch.dim();
    // H = Σ λᵢ (xⁱ)²
    let mut h = Poly::zero(n);
    for (i, l) in data.lambda.iter().enumerate() {
        let v = Poly::var(n, 2 + i);
        h = &h + &(&v * &v).scale(l);
    }
    let hp = RingElem::from_poly(&ch, h);
    let mut coframe = unit_coframe(&ch);
    coframe[0][1] = hp.scale(&rat(1, 2)); // ê⁺ = dx⁺ + ½H dx⁻
    let metric = MetricField::new(&ch, coframe, lightcone_frame_metric()).expect("triangular");
    let mut flux = FormField::zero(&ch, 4, FormBasis::Coordinate);
    flux.insert(vec![1, 2, 3, 4], RingElem::constant(&ch, data.mu.clone()));
    Ok(Background::new(
        BackgroundMeta::CahenWallach {
            lambda: data.lambda.clone(),
            mu: data.mu.clone(),
        },
        metric,
        flux,
    )?)
}

/// Eigenvalues of the unique maximally supersymmetric pp-wave point.
pub fn maximal_cw_lambda() -> Vec<Rat> {
    let mut v = vec![rat(-1, 1); 3];
    v.extend(vec![rat(-1, 4); 6]);
    v
}

/// The maximally supersymmetric pp-wave (μ = 3).
pub fn maximal_cw() -> Background {
    cahen_wallach(&CWData::new(maximal_cw_lambda(), rat(3, 1))).expect("maximal point data")
}

/// Freund–Rubin product backgrounds.
///
/// The AdS factor is realized on a Poincaré-type patch (registered
/// denominator z) and the sphere stereographically (registered
/// denominator 1+r²); requiring 6|s| to be a rational square keeps every
/// coefficient, including the flux magnitude, rational.
pub fn freund_rubin(kind: FrKind, s: &Rat) -> Result<Background, BackgroundError> {
    match kind {
        FrKind::Ads4XS7 => {
            if !s.is_negative() {
                return Err(BackgroundError::WrongSign);
            }
            let q = rat_sqrt(&(-s.clone() * rat(6, 1))).ok_or(BackgroundError::IrrationalFlux)?;
            // AdS₄ length L = 3/q (scalar 8s), sphere radius ρ = 2L (scalar −7s)
            build_fr(kind, s, &q, 4, &(rat(3, 1) / q.clone()), &(rat(6, 1) / q.clone()))
        }
        FrKind::Ads7XS4 => {
            if !s.is_positive() {
                return Err(BackgroundError::WrongSign);
            }
            let q = rat_sqrt(&(s.clone() * rat(6, 1))).ok_or(BackgroundError::IrrationalFlux)?;
            // AdS₇ length L = 6/q (scalar −7s), sphere radius ρ = L/2 (scalar 8s)
            build_fr(kind, s, &q, 7, &(rat(6, 1) / q.clone()), &(rat(3, 1) / q.clone()))
        }
    }
}

fn build_fr(
    kind: FrKind,
    s: &Rat,
    q: &Rat,
    ads_dim: usize,
    ads_l: &Rat,
    sphere_rho: &Rat,
) -> Result<Background, BackgroundError> {
    let sphere_dim = FRAME_DIM - ads_dim;
    let mut vars: Vec<String> = vec!["t".into()];
    for i in 1..(ads_dim - 1) {
        vars.push(format!("w{i}"));
    }
    vars.push("z".into());
    for i in 1..=sphere_dim {
        vars.push(format!("u{i}"));
    }
    let z_idx = ads_dim - 1;
    let nv = FRAME_DIM;
    let zpoly = Poly::var(nv, z_idx);
    let mut conf = Poly::one(nv);
    for i in 0..sphere_dim {
        let u = Poly::var(nv, ads_dim + i);
        conf = &conf + &(&u * &u);
    }
    let ch = Chart::new(vars)
        .with_denominator("z", zpoly.clone())
        .with_denominator("sphereconf", conf.clone())
        .shared();
    let inv_z = RingElem::one(&ch)
        .checked_div(&RingElem::from_poly(&ch, zpoly))
        .expect("z is registered");
    let inv_conf = RingElem::one(&ch)
        .checked_div(&RingElem::from_poly(&ch, conf))
        .expect("conformal factor is registered");
    let ads_coef = inv_z.scale(ads_l); // L/z
    let sphere_coef = inv_conf.scale(&(sphere_rho.clone() * rat(2, 1))); // 2ρ/(1+r²)
    let mut coframe = unit_coframe(&ch);
    for a in 0..ads_dim {
        coframe[a][a] = ads_coef.clone();
    }
    for a in ads_dim..FRAME_DIM {
        coframe[a][a] = sphere_coef.clone();
    }
    let metric = MetricField::new(&ch, coframe, minkowski_frame_metric())
        .map_err(SugraError::Geometry)?;
    // F = q · dvol(4-dimensional factor)
    let mut flux = FormField::zero(&ch, 4, FormBasis::Coordinate);
    match kind {
        FrKind::Ads4XS7 => {
            let coef = ads_coef.pow(4).scale(q);
            flux.insert(vec![0, 1, 2, 3], coef);
        }
        FrKind::Ads7XS4 => {
            let coef = sphere_coef.pow(4).scale(q);
            flux.insert(vec![7, 8, 9, 10], coef);
        }
    }
    Ok(Background::new(
        BackgroundMeta::FreundRubin {
            kind,
            s: s.clone(),
        },
        metric,
        flux,
    )?)
}

/// Scalar curvatures of the two factors of a Freund–Rubin product,
/// computed by restricting the Ricci contraction to each factor's
/// coordinate block.
pub fn fr_factor_scalars(bg: &Background) -> Option<(RingElem, RingElem)> {
    let BackgroundMeta::FreundRubin { kind, .. } = bg.meta() else {
        return None;
    };
    let ads_dim = match kind {
        FrKind::Ads4XS7 => 4,
        FrKind::Ads7XS4 => 7,
    };
    let (_, ricci, _) = crate::geometry::riemann_ricci_scalar(bg.metric());
    let ginv = bg.metric().ginv();
    let chart = bg.chart();
    let mut ads = RingElem::zero(chart);
    let mut sphere = RingElem::zero(chart);
    for i in 0..FRAME_DIM {
        for j in 0..FRAME_DIM {
            if ginv[i][j].is_zero() || ricci[i][j].is_zero() {
                continue;
            }
            let term = &ginv[i][j] * &ricci[i][j];
            if i < ads_dim && j < ads_dim {
                ads = &ads + &term;
            } else if i >= ads_dim && j >= ads_dim {
                sphere = &sphere + &term;
            }
        }
    }
    Some((ads, sphere))
}

/// Structure constants and bilinear data of the Cahen–Wallach Lie
/// algebra g_A on basis (e₊, e₋, v₁..v_m, v*₁..v*_m).
pub struct LieAlgebraTable {
    pub labels: Vec<String>,
    m: usize,
    brackets: HashMap<(usize, usize), Vec<(usize, Rat)>>,
    /// Indices spanning 𝔨_A = span{v*} (the isotropy part).
    pub k_indices: Vec<usize>,
    /// Indices spanning 𝔭_A = span{e₊, e₋, v} (the tangent part).
    pub p_indices: Vec<usize>,
    /// Invariant lorentzian form B on 𝔭_A in the order of `p_indices`.
    pub b_form: RatMat,
}

impl LieAlgebraTable {
    pub fn dim(&self) -> usize {
        2 * self.m + 2
    }

    /// [x_i, x_j] as a sparse combination of basis elements.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<(usize, Rat)> {
        if i == j {
            return Vec::new();
        }
        if i < j {
            self.brackets.get(&(i, j)).cloned().unwrap_or_default()
        } else {
            self.brackets
                .get(&(j, i))
                .cloned()
                .unwrap_or_default()
                .into_iter()
                .map(|(k, c)| (k, -c))
                .collect()
        }
    }

    fn bracket_vectors(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let d = self.dim();
        let mut out = vec![Rat::zero(); d];
        for i in 0..d {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if y[j].is_zero() {
                    continue;
                }
                for (k, c) in self.bracket(i, j) {
                    out[k] += x[i].clone() * y[j].clone() * c;
                }
            }
        }
        out
    }

    /// Exact Jacobi check over all basis triples.
    pub fn jacobi_holds(&self) -> bool {
        let d = self.dim();
        let basis = |i: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); d];
            v[i] = Rat::one();
            v
        };
        for i in 0..d {
            for j in (i + 1)..d {
                for k in (j + 1)..d {
                    let (x, y, z) = (basis(i), basis(j), basis(k));
                    let mut acc = self.bracket_vectors(&x, &self.bracket_vectors(&y, &z));
                    let t = self.bracket_vectors(&y, &self.bracket_vectors(&z, &x));
                    let u = self.bracket_vectors(&z, &self.bracket_vectors(&x, &y));
                    for a in 0..d {
                        acc[a] += t[a].clone() + u[a].clone();
                    }
                    if acc.iter().any(|c| !c.is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn in_span(&self, v: &[Rat], indices: &[usize]) -> bool {
        v.iter()
            .enumerate()
            .all(|(i, c)| c.is_zero() || indices.contains(&i))
    }

    /// [𝔨,𝔭] ⊆ 𝔭 and [𝔭,𝔭] ⊆ 𝔨 on basis elements.
    pub fn symmetric_split_holds(&self) -> bool {
        let d = self.dim();
        let basis = |i: usize| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); d];
            v[i] = Rat::one();
            v
        };
        for &i in &self.k_indices {
            for &j in &self.p_indices {
                let b = self.bracket_vectors(&basis(i), &basis(j));
                if !self.in_span(&b, &self.p_indices) {
                    return false;
                }
            }
        }
        for &i in &self.p_indices {
            for &j in &self.p_indices {
                let b = self.bracket_vectors(&basis(i), &basis(j));
                if !self.in_span(&b, &self.k_indices) {
                    return false;
                }
            }
        }
        true
    }

    /// Span of all brackets of the given subspace basis vectors.
    fn derived(&self, vectors: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
        let mut m = Matrix::zeros(0, self.dim());
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for x in vectors {
            for y in vectors {
                let b = self.bracket_vectors(x, y);
                if b.iter().any(|c| !c.is_zero()) {
                    rows.push(b);
                }
            }
        }
        if rows.is_empty() {
            return Vec::new();
        }
        m = Matrix::from_rows(rows);
        let pivots = m.rref();
        pivots
            .iter()
            .enumerate()
            .map(|(r, _)| (0..self.dim()).map(|c| m[(r, c)].clone()).collect())
            .collect()
    }

    /// The second derived ideal commutes with everything.
    pub fn second_derived_is_central(&self) -> bool {
        let d = self.dim();
        let basis: Vec<Vec<Rat>> = (0..d)
            .map(|i| {
                let mut v = vec![Rat::zero(); d];
                v[i] = Rat::one();
                v
            })
            .collect();
        let d1 = self.derived(&basis);
        let d2 = self.derived(&d1);
        for x in &d2 {
            for y in &basis {
                let b = self.bracket_vectors(x, y);
                if b.iter().any(|c| !c.is_zero()) {
                    return false;
                }
            }
        }
        true
    }
}

/// Structure constants of g_A: [e₋, vᵢ] = v*ᵢ, [e₋, v*ᵢ] = λᵢ vᵢ,
/// [v*ᵢ, vⱼ] = λᵢ δᵢⱼ e₊, all other brackets zero.
pub fn cw_lie_algebra(lambda: &[Rat]) -> LieAlgebraTable {
    let m = lambda.len();
    let e_plus = 0usize;
    let e_minus = 1usize;
    let v = |i: usize| 2 + i;
    let vstar = |i: usize| 2 + m + i;
    let mut labels = vec!["e+".to_string(), "e-".to_string()];
    for i in 1..=m {
        labels.push(format!("v{i}"));
    }
    for i in 1..=m {
        labels.push(format!("v*{i}"));
    }
    let mut brackets: HashMap<(usize, usize), Vec<(usize, Rat)>> = HashMap::new();
    let mut put = |i: usize, j: usize, k: usize, c: Rat| {
        if i < j {
            brackets.entry((i, j)).or_default().push((k, c));
        } else {
            brackets.entry((j, i)).or_default().push((k, -c));
        }
    };
    for i in 0..m {
        put(e_minus, v(i), vstar(i), Rat::one());
        put(e_minus, vstar(i), v(i), lambda[i].clone());
        put(vstar(i), v(i), e_plus, lambda[i].clone());
    }
    let p_indices: Vec<usize> = std::iter::once(e_plus)
        .chain(std::iter::once(e_minus))
        .chain((0..m).map(v))
        .collect();
    let k_indices: Vec<usize> = (0..m).map(vstar).collect();
    // B(e₊,e₋) = 1, B(vᵢ,vⱼ) = δᵢⱼ over the p basis order (e₊, e₋, v)
    let mut b = RatMat::zeros(m + 2, m + 2);
    b[(0, 1)] = Rat::one();
    b[(1, 0)] = Rat::one();
    for i in 0..m {
        b[(2 + i, 2 + i)] = Rat::one();
    }
    LieAlgebraTable {
        labels,
        m,
        brackets,
        k_indices,
        p_indices,
        b_form: b,
    }
}

/// Canonical representative of a CW eigenvalue vector under permutations
/// and positive rescaling: sort descending, then divide by the absolute
/// value of the first nonzero entry. Two CW spaces are isometric iff
/// their canonical vectors are equal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalModuli(pub Vec<Rat>);

pub fn moduli_canonicalize(lambda: &[Rat]) -> Result<CanonicalModuli, BackgroundError> {
    if lambda.iter().all(|l| l.is_zero()) {
        return Err(BackgroundError::ZeroInput);
    }
    let mut v = lambda.to_vec();
    v.sort_by(|a, b| b.cmp(a));
    let scale = v
        .iter()
        .find(|x| !x.is_zero())
        .map(|x| x.abs())
        .expect("nonzero vector");
    Ok(CanonicalModuli(
        v.into_iter().map(|x| x / scale.clone()).collect(),
    ))
}

/// The Killing basis of a Cahen–Wallach background whose frequencies
/// √(−λᵢ) are rational: ∂₊, ∂₋, two oscillator fields per transverse
/// direction, and the rotations of equal-eigenvalue blocks.
pub fn cw_killing_basis(bg: &Background) -> Result<Vec<VectorField>, BackgroundError> {
    let BackgroundMeta::CahenWallach { lambda, .. } = bg.meta() else {
        return Err(BackgroundError::NotCahenWallach);
    };
    let ch = bg.chart();
    let periodic = ch.periodic().ok_or(BackgroundError::IrrationalFrequency)?;
    let omegas: Vec<Rat> = lambda
        .iter()
        .map(|l| rat_sqrt(&-l.clone()).ok_or(BackgroundError::IrrationalFrequency))
        .collect::<Result<_, _>>()?;
    let mut fields = Vec::new();
    fields.push(VectorField::coordinate(ch, 0)); // ∂₊
    fields.push(VectorField::coordinate(ch, 1)); // ∂₋
    let zero = RingElem::zero(ch);
    for (i, omega) in omegas.iter().enumerate() {
        let k = {
            let ratio = omega.clone() / periodic.base_freq.clone();
            debug_assert!(ratio.is_integer());
            let n: i64 = ratio.to_integer().try_into().expect("small frequency");
            n as u32
        };
        let cos = RingElem::cos_k(ch, k).expect("periodic chart");
        let sin = RingElem::sin_k(ch, k).expect("periodic chart");
        let xi_var = RingElem::var(ch, 2 + i);
        // cos(ωx⁻)∂ᵢ + ω sin(ωx⁻) xⁱ ∂₊
        let mut comps = vec![zero.clone(); ch.dim()];
        comps[0] = (&sin * &xi_var).scale(omega);
        comps[2 + i] = cos.clone();
        fields.push(VectorField::new(ch, comps));
        // sin(ωx⁻)∂ᵢ − ω cos(ωx⁻) xⁱ ∂₊
        let mut comps = vec![zero.clone(); ch.dim()];
        comps[0] = -&(&cos * &xi_var).scale(omega);
        comps[2 + i] = sin;
        fields.push(VectorField::new(ch, comps));
    }
    // rotations within equal-eigenvalue blocks
    for i in 0..lambda.len() {
        for j in (i + 1)..lambda.len() {
            if lambda[i] != lambda[j] {
                continue;
            }
            let mut comps = vec![zero.clone(); ch.dim()];
            comps[2 + j] = RingElem::var(ch, 2 + i);
            comps[2 + i] = -&RingElem::var(ch, 2 + j);
            fields.push(VectorField::new(ch, comps));
        }
    }
    Ok(fields)
}

/// Exact rank of a family of vector fields over the constants, computed
/// by expanding every component in the monomial × trigonometric basis.
pub fn vector_fields_rank(fields: &[VectorField]) -> usize {
    let mut columns: HashMap<(usize, u32, bool, Vec<u16>), usize> = HashMap::new();
    let mut rows: Vec<HashMap<usize, Rat>> = Vec::new();
    for f in fields {
        let mut row: HashMap<usize, Rat> = HashMap::new();
        for (ci, comp) in f.comps().iter().enumerate() {
            assert!(
                comp.den_exponents().iter().all(|&e| e == 0),
                "rank expansion expects polynomial components"
            );
            for (k, cos, sin) in comp.waves_iter() {
                for (is_sin, poly) in [(false, cos), (true, sin)] {
                    for (exps, coeff) in poly.terms() {
                        let key = (ci, k, is_sin, exps.clone());
                        let next = columns.len();
                        let col = *columns.entry(key).or_insert(next);
                        row.insert(col, coeff.clone());
                    }
                }
            }
        }
        rows.push(row);
    }
    let ncols = columns.len();
    let dense: Vec<Vec<Rat>> = rows
        .into_iter()
        .map(|r| {
            (0..ncols)
                .map(|c| r.get(&c).cloned().unwrap_or_else(Rat::zero))
                .collect()
        })
        .collect();
    if dense.is_empty() || ncols == 0 {
        return 0;
    }
    Matrix::from_rows(dense).rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{killing_check, rank2_is_zero, riemann_ricci_scalar};
    use crate::sugra::{check_field_equations, stress_tensor, susy_count};

    #[test]
    fn minkowski_is_a_solution() {
        let bg = minkowski11();
        let rep = check_field_equations(&bg);
        assert!(rep.einstein_holds && rep.maxwell_holds && rep.flux_closed);
        assert!(rep.scalar_curvature.is_zero());
        let (maximal, bound) = susy_count(&bg, 1, 0).unwrap();
        assert!(maximal && bound == 32);
    }

    #[test]
    fn cw_stress_and_ricci_cancel() {
        let bg = maximal_cw();
        let ch = bg.chart();
        // T₋₋ = 9/2 and it is the only nonzero component
        let t = stress_tensor(&bg);
        assert_eq!(t[1][1], RingElem::constant(ch, rat(9, 2)));
        for i in 0..11 {
            for j in 0..11 {
                if (i, j) != (1, 1) {
                    assert!(t[i][j].is_zero(), "T[{i}][{j}]");
                }
            }
        }
        // Ric₋₋ = −tr A = 9/2; einstein residual identically zero
        let (_, ricci, scalar) = riemann_ricci_scalar(bg.metric());
        assert_eq!(ricci[1][1], RingElem::constant(ch, rat(9, 2)));
        assert!(scalar.is_zero());
        let rep = check_field_equations(&bg);
        assert!(rep.einstein_holds, "nonzero: {:?}", rep.einstein_nonzero);
        assert!(rep.maxwell_holds && rep.flux_closed);
    }

    #[test]
    fn cw_rejects_degenerate_data() {
        let mut lam = maximal_cw_lambda();
        lam[4] = Rat::zero();
        assert!(matches!(
            cahen_wallach(&CWData::new(lam, rat(3, 1))),
            Err(BackgroundError::DegenerateA)
        ));
    }

    #[test]
    fn freund_rubin_scalars() {
        // AdS₄×S⁷ at s = −6: factor scalars 8s = −48 and −7s = 42
        let bg = freund_rubin(FrKind::Ads4XS7, &rat(-6, 1)).unwrap();
        let ch = bg.chart();
        let (ads, sphere) = fr_factor_scalars(&bg).unwrap();
        assert_eq!(ads, RingElem::int(ch, -48));
        assert_eq!(sphere, RingElem::int(ch, 42));
        let (_, _, scalar) = riemann_ricci_scalar(bg.metric());
        assert_eq!(scalar, RingElem::int(ch, -6));

        let bg = freund_rubin(FrKind::Ads7XS4, &rat(6, 1)).unwrap();
        let ch = bg.chart();
        let (ads, sphere) = fr_factor_scalars(&bg).unwrap();
        assert_eq!(ads, RingElem::int(ch, -42));
        assert_eq!(sphere, RingElem::int(ch, 48));
        let (_, _, scalar) = riemann_ricci_scalar(bg.metric());
        assert_eq!(scalar, RingElem::int(ch, 6));
    }

    #[test]
    fn freund_rubin_rejects_bad_s() {
        assert!(matches!(
            freund_rubin(FrKind::Ads4XS7, &rat(-1, 8)),
            Err(BackgroundError::IrrationalFlux)
        ));
        assert!(matches!(
            freund_rubin(FrKind::Ads4XS7, &rat(6, 1)),
            Err(BackgroundError::WrongSign)
        ));
        assert!(matches!(
            freund_rubin(FrKind::Ads7XS4, &rat(-6, 1)),
            Err(BackgroundError::WrongSign)
        ));
    }

    #[test]
    fn lie_algebra_checks() {
        let table = cw_lie_algebra(&maximal_cw_lambda());
        assert_eq!(table.dim(), 20);
        assert!(table.jacobi_holds());
        assert!(table.symmetric_split_holds());
        assert!(table.second_derived_is_central());
        assert_eq!(table.b_form, table.b_form.transpose());
        assert_eq!(table.b_form[(0, 1)], Rat::one());
    }

    #[test]
    fn moduli_canonicalization() {
        // positive rescaling ×2 of A_* has the same canonical form
        let a_star = maximal_cw_lambda();
        let doubled: Vec<Rat> = a_star.iter().map(|l| l.clone() * rat(2, 1)).collect();
        assert_eq!(
            moduli_canonicalize(&a_star).unwrap(),
            moduli_canonicalize(&doubled).unwrap()
        );
        // permutations are quotiented out
        let mut swapped = a_star.clone();
        swapped.swap(0, 5);
        assert_eq!(
            moduli_canonicalize(&a_star).unwrap(),
            moduli_canonicalize(&swapped).unwrap()
        );
        // overall sign flip is NOT a positive scale
        let flipped: Vec<Rat> = a_star.iter().map(|l| -l.clone()).collect();
        assert_ne!(
            moduli_canonicalize(&a_star).unwrap(),
            moduli_canonicalize(&flipped).unwrap()
        );
        assert!(matches!(
            moduli_canonicalize(&[Rat::zero(), Rat::zero()]),
            Err(BackgroundError::ZeroInput)
        ));
    }

    #[test]
    fn killing_basis_of_the_maximal_wave() {
        let bg = maximal_cw();
        let fields = cw_killing_basis(&bg).unwrap();
        // 2 + 18 + 3 + 15 = 38
        assert_eq!(fields.len(), 38);
        for (i, f) in fields.iter().enumerate() {
            assert!(
                rank2_is_zero(&killing_check(f, bg.metric())),
                "field {i} is not Killing"
            );
        }
        assert_eq!(vector_fields_rank(&fields), 38);
    }

    #[test]
    fn killing_basis_requires_rational_frequencies() {
        let mut lam = maximal_cw_lambda();
        lam[0] = rat(-2, 1); // √2 irrational
        let bg = cahen_wallach(&CWData::new(lam, rat(3, 1))).unwrap();
        assert!(matches!(
            cw_killing_basis(&bg),
            Err(BackgroundError::IrrationalFrequency)
        ));
    }
}
