//! The supergravity layer: stress tensor, Einstein and Maxwell residuals,
//! the supercovariant connection, its curvature, Killing-spinor counting,
//! spinorial Lie derivative, dilatino residual, and the holonomy probe.

use crate::chart::Chart;
use crate::clifford::{
    build_gamma, build_symplectic, clifford_action_components, GammaRep, RatMat, SpinorMatrix,
    SymplecticForm, FRAME_DIM, SPINOR_DIM,
};
use crate::geometry::{
    exterior_derivative, form_inner, hodge_star, interior_components, killing_check, rank2_is_zero,
    riemann_ricci_scalar, spin_connection, wedge, FormBasis, FormField, MetricField, Rank2,
    VectorField,
};
use crate::ring::RingElem;
use crate::scalar::{rat, Rat};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::sync::Arc;
use thiserror::Error;

/// Sign conventions frozen by requiring the maximal Cahen–Wallach
/// background (μ = 3) to be exactly flat for the supercovariant
/// connection; see docs/conventions.md.
pub const OMEGA_SIGN: i64 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SugraError {
    #[error("flux must be a 4-form")]
    BadFluxDegree,
    #[error("metric and flux live on different charts")]
    ChartMismatch,
    #[error(transparent)]
    Clifford(#[from] crate::clifford::CliffordError),
    #[error(transparent)]
    Geometry(#[from] crate::geometry::GeomError),
    #[error("no admissible sample point found (registered denominators keep vanishing)")]
    NoAdmissiblePoint,
}

#[derive(Clone, Debug, PartialEq)]
pub enum FrKind {
    Ads4XS7,
    Ads7XS4,
}

impl FrKind {
    pub fn name(&self) -> &'static str {
        match self {
            FrKind::Ads4XS7 => "ads4xs7",
            FrKind::Ads7XS4 => "ads7xs4",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum BackgroundMeta {
    Flat,
    CahenWallach { lambda: Vec<Rat>, mu: Rat },
    FreundRubin { kind: FrKind, s: Rat },
    Custom { name: String },
}

impl BackgroundMeta {
    pub fn name(&self) -> String {
        match self {
            BackgroundMeta::Flat => "flat".into(),
            BackgroundMeta::CahenWallach { .. } => "cw".into(),
            BackgroundMeta::FreundRubin { kind, .. } => kind.name().into(),
            BackgroundMeta::Custom { name } => name.clone(),
        }
    }
}

/// An eleven-dimensional metric-and-flux candidate solution.
pub struct Background {
    meta: BackgroundMeta,
    chart: Arc<Chart>,
    metric: MetricField,
    flux: FormField,
    rep: Arc<GammaRep>,
    flux_closed: bool,
}

impl Background {
    pub fn new(
        meta: BackgroundMeta,
        metric: MetricField,
        flux: FormField,
    ) -> Result<Self, SugraError> {
        if flux.degree() != 4 {
            return Err(SugraError::BadFluxDegree);
        }
        if !metric.chart().same_as(flux.chart()) {
            return Err(SugraError::ChartMismatch);
        }
        let chart = metric.chart().clone();
        let flux = metric.to_coordinate(&flux);
        let rep = Arc::new(build_gamma(metric.frame_metric())?);
        let flux_closed = exterior_derivative(&flux)?.is_zero();
        Ok(Background {
            meta,
            chart,
            metric,
            flux,
            rep,
            flux_closed,
        })
    }

    pub fn meta(&self) -> &BackgroundMeta {
        &self.meta
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn metric(&self) -> &MetricField {
        &self.metric
    }

    /// The 4-form flux in the coordinate basis.
    pub fn flux(&self) -> &FormField {
        &self.flux
    }

    pub fn rep(&self) -> &Arc<GammaRep> {
        &self.rep
    }

    pub fn flux_closed(&self) -> bool {
        self.flux_closed
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }
}

fn frame_unit(chart: &Arc<Chart>, n: usize, a: usize) -> Vec<RingElem> {
    (0..n)
        .map(|i| {
            if i == a {
                RingElem::one(chart)
            } else {
                RingElem::zero(chart)
            }
        })
        .collect()
}

/// The energy-momentum tensor T_ij = ½⟨ι_i F, ι_j F⟩ − 1/6 g_ij |F|² in
/// coordinate indices.
pub fn stress_tensor(bg: &Background) -> Rank2 {
    let n = bg.dim();
    let chart = bg.chart();
    let g = bg.metric();
    let f_frame = g.to_frame(bg.flux());
    // frame contractions ι_{e_a} F and their pairwise inner products
    let contracted: Vec<FormField> = (0..n)
        .map(|a| interior_components(&frame_unit(chart, n, a), &f_frame))
        .collect();
    let zero = RingElem::zero(chart);
    let mut inner = vec![vec![zero.clone(); n]; n];
    for a in 0..n {
        for b in a..n {
            let v = form_inner(&contracted[a], &contracted[b], g).expect("equal degree");
            inner[a][b] = v.clone();
            inner[b][a] = v;
        }
    }
    let f2 = form_inner(&f_frame, &f_frame, g).expect("equal degree");
    let half = rat(1, 2);
    let minus_sixth = rat(-1, 6);
    let coframe = g.coframe();
    let mut t = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = zero.clone();
            for a in 0..n {
                if coframe[a][i].is_zero() {
                    continue;
                }
                for b in 0..n {
                    if coframe[b][j].is_zero() || inner[a][b].is_zero() {
                        continue;
                    }
                    acc = &acc + &(&(&coframe[a][i] * &coframe[b][j]) * &inner[a][b]);
                }
            }
            let mut v = acc.scale(&half);
            if !f2.is_zero() && !g.g()[i][j].is_zero() {
                v = &v + &(&g.g()[i][j] * &f2).scale(&minus_sixth);
            }
            t[i][j] = v.clone();
            t[j][i] = v;
        }
    }
    t
}

/// Ric_ij − T_ij; identically zero iff the Einstein equation holds.
pub fn einstein_residual(bg: &Background) -> Rank2 {
    let (_, ricci, _) = riemann_ricci_scalar(bg.metric());
    let t = stress_tensor(bg);
    let n = bg.dim();
    (0..n)
        .map(|i| (0..n).map(|j| &ricci[i][j] - &t[i][j]).collect())
        .collect()
}

/// (d⋆F − ½ F∧F, dF); the background solves the Maxwell sector iff both
/// are identically zero.
pub fn maxwell_residual(bg: &Background) -> (FormField, FormField) {
    let g = bg.metric();
    let f = bg.flux();
    let star_f = hodge_star(f, g);
    let d_star_f = exterior_derivative(&star_f).expect("coordinate basis");
    let ff = wedge(f, f).expect("same basis").scale_rat(&rat(1, 2));
    let first = d_star_f.sub(&ff).expect("same degree");
    let df = exterior_derivative(f).expect("coordinate basis");
    (first, df)
}

fn form_to_clifford_components(a: &FormField) -> Vec<(Vec<usize>, RingElem)> {
    a.components()
        .map(|(idx, c)| (idx.iter().map(|&x| x as usize).collect(), c.clone()))
        .collect()
}

/// Ω_{∂ᵢ}(F) = 1/12 c(X♭∧F) − 1/6 c(ι_X F) with X = ∂ᵢ.
pub fn omega(bg: &Background, direction: usize) -> SpinorMatrix {
    let g = bg.metric();
    let chart = bg.chart();
    let x = VectorField::coordinate(chart, direction);
    let xflat = g.lower(&x);
    let f_frame = g.to_frame(bg.flux());
    let xflat_frame = g.to_frame(&xflat);
    let wedge_part = wedge(&xflat_frame, &f_frame).expect("frame basis");
    let iota = crate::geometry::interior(&x, bg.flux()).expect("degree 4");
    let iota_frame = g.to_frame(&iota);
    let c_wedge = clifford_action_components(&form_to_clifford_components(&wedge_part), bg.rep(), chart)
        .expect("degree in range");
    let c_iota = clifford_action_components(&form_to_clifford_components(&iota_frame), bg.rep(), chart)
        .expect("degree in range");
    let sign = Rat::from_integer(OMEGA_SIGN.into());
    let twelfth = rat(1, 12) * sign.clone();
    let neg_sixth = rat(-1, 6) * sign;
    let a = c_wedge.scale_elem(&RingElem::constant(chart, twelfth));
    let b = c_iota.scale_elem(&RingElem::constant(chart, neg_sixth));
    &a + &b
}

/// The spin-connection part of the covariant derivative on spinors in
/// coordinate direction i: ¼ ω̂_{ab,i} Γ^a Γ^b (summed over all a, b).
pub fn spinor_connection(bg: &Background) -> Vec<SpinorMatrix> {
    let g = bg.metric();
    let chart = bg.chart();
    let n = bg.dim();
    let omega_coeffs = spin_connection(g);
    // Q_ab = ¼ (Γ^a Γ^b − Γ^b Γ^a) for a < b
    let rep = bg.rep();
    let quarter = rat(1, 4);
    let mut q: Vec<Vec<Option<RatMat>>> = vec![vec![None; n]; n];
    for a in 0..n {
        for b in (a + 1)..n {
            let ga = rep.gamma_upper(a);
            let gb = rep.gamma_upper(b);
            let m = (&(&ga * &gb) - &(&gb * &ga)).scale(&quarter);
            q[a][b] = Some(m);
        }
    }
    (0..n)
        .map(|i| {
            let mut acc = SpinorMatrix::zero(chart);
            for a in 0..n {
                for b in (a + 1)..n {
                    let w = &omega_coeffs[i][a][b];
                    if w.is_zero() {
                        continue;
                    }
                    let m = SpinorMatrix::from_rat_mat(chart, q[a][b].as_ref().unwrap());
                    acc = &acc + &m.scale_elem(w);
                }
            }
            acc
        })
        .collect()
}

/// Total supercovariant connection matrices 𝔄ᵢ with D_i = ∂_i + 𝔄ᵢ,
/// 𝔄ᵢ = (spin-connection term) − Ωᵢ.
pub fn supercovariant_connection(bg: &Background) -> Vec<SpinorMatrix> {
    let nabla = spinor_connection(bg);
    let n = bg.dim();
    (0..n)
        .into_par_iter()
        .map(|i| {
            let om = omega(bg, i);
            &nabla[i] - &om
        })
        .collect()
}

/// Curvature of the supercovariant connection for all coordinate pairs
/// i < j, in index order.
pub struct SuperCurvature {
    pub pairs: Vec<((usize, usize), SpinorMatrix)>,
}

impl SuperCurvature {
    pub fn is_flat(&self) -> bool {
        self.pairs.iter().all(|(_, m)| m.is_zero())
    }
}

pub fn supercurvature(bg: &Background) -> SuperCurvature {
    let conn = supercovariant_connection(bg);
    let n = bg.dim();
    let idx: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let pairs = idx
        .into_par_iter()
        .map(|(i, j)| {
            let d = &conn[j].derivative(i) - &conn[i].derivative(j);
            let m = &d + &conn[i].commutator(&conn[j]);
            ((i, j), m)
        })
        .collect();
    SuperCurvature { pairs }
}

/// Draw a random chart point with small rational coordinates at which no
/// registered denominator factor vanishes. Charts with a periodic
/// variable get 0 there so trigonometric layers stay exactly evaluable.
pub fn sample_point(chart: &Arc<Chart>, rng: &mut ChaCha8Rng) -> Result<Vec<Rat>, SugraError> {
    let n = chart.dim();
    'attempt: for _ in 0..200 {
        let mut pt: Vec<Rat> = (0..n)
            .map(|_| {
                let num = rng.gen_range(-24i64..=24);
                let den = *[1i64, 2, 3, 4].get(rng.gen_range(0..4)).unwrap();
                rat(num, den)
            })
            .collect();
        if let Some(p) = chart.periodic() {
            pt[p.var] = Rat::zero();
        }
        for (_, fpoly) in chart.denominators() {
            if fpoly.eval::<Rat>(&pt).is_zero() {
                continue 'attempt;
            }
        }
        return Ok(pt);
    }
    Err(SugraError::NoAdmissiblePoint)
}

/// Exact maximality plus a sampled upper bound for the Killing-spinor
/// space dimension.
///
/// `is_maximal` is true iff every supercurvature component is identically
/// zero. The upper bound stacks all curvature matrices evaluated at
/// `samples` admissible points into one linear system and takes the exact
/// kernel dimension (first-order integrability only).
pub fn susy_count(
    bg: &Background,
    samples: usize,
    seed: u64,
) -> Result<(bool, usize), SugraError> {
    let sc = supercurvature(bg);
    susy_count_from(&sc, bg, samples, seed)
}

/// Same as [`susy_count`] but reusing an already computed curvature.
pub fn susy_count_from(
    sc: &SuperCurvature,
    bg: &Background,
    samples: usize,
    seed: u64,
) -> Result<(bool, usize), SugraError> {
    assert!(samples >= 1);
    let is_maximal = sc.is_flat();
    if is_maximal {
        return Ok((true, SPINOR_DIM));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    for _ in 0..samples {
        let pt = sample_point(bg.chart(), &mut rng)?;
        for (_, m) in &sc.pairs {
            if m.is_zero() {
                continue;
            }
            let ev = m.eval_rat(&pt).map_err(|_| SugraError::NoAdmissiblePoint)?;
            for r in 0..SPINOR_DIM {
                let row: Vec<Rat> = (0..SPINOR_DIM).map(|c| ev[(r, c)].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return Ok((is_maximal, SPINOR_DIM));
    }
    let m = crate::linalg::Matrix::from_rows(rows);
    Ok((is_maximal, SPINOR_DIM - m.rank()))
}

/// Spinorial Lie derivative L_ξ ε = ∇_ξ ε + ¼ c(dξ♭) ε.
pub fn spin_lie_derivative(bg: &Background, xi: &VectorField, eps: &[RingElem]) -> Vec<RingElem> {
    let chart = bg.chart();
    let n = bg.dim();
    let nabla = spinor_connection(bg);
    let mut out = vec![RingElem::zero(chart); SPINOR_DIM];
    // ∇_ξ = Σ_i ξ^i (∂_i + spin term)
    for i in 0..n {
        let xc = xi.comp(i);
        if xc.is_zero() {
            continue;
        }
        let deriv: Vec<RingElem> = eps.iter().map(|e| e.derivative(i)).collect();
        let conn = nabla[i].apply(eps);
        for s in 0..SPINOR_DIM {
            let t = &deriv[s] + &conn[s];
            if !t.is_zero() {
                out[s] = &out[s] + &(xc * &t);
            }
        }
    }
    let alg = dilatino_residual(bg, xi, eps);
    for s in 0..SPINOR_DIM {
        out[s] = &out[s] + &alg[s];
    }
    out
}

/// The purely algebraic component ¼ c(dξ♭) ε of the IIA Killing spinor
/// condition.
pub fn dilatino_residual(bg: &Background, xi: &VectorField, eps: &[RingElem]) -> Vec<RingElem> {
    let chart = bg.chart();
    let g = bg.metric();
    let xflat = g.lower(xi);
    let dxflat = exterior_derivative(&xflat).expect("coordinate basis");
    let frame = g.to_frame(&dxflat);
    let c = clifford_action_components(&form_to_clifford_components(&frame), bg.rep(), chart)
        .expect("degree 2");
    let quarter = RingElem::constant(chart, rat(1, 4));
    c.scale_elem(&quarter).apply(eps)
}

mod modp {
    //! Row space bookkeeping modulo the Mersenne prime 2⁶¹ − 1, used only
    //! to certify lower bounds on span dimensions.
    use crate::scalar::Rat;
    use num::bigint::BigInt;

    pub const P: u64 = (1 << 61) - 1;

    pub fn mul(a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % P as u128) as u64
    }

    pub fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        acc
    }

    pub fn inv(a: u64) -> u64 {
        pow(a, P - 2)
    }

    pub fn from_rat(r: &Rat) -> u64 {
        let p = BigInt::from(P);
        let num = ((r.numer() % &p) + &p) % &p;
        let den = ((r.denom() % &p) + &p) % &p;
        let num: u64 = num.try_into().unwrap();
        let den: u64 = den.try_into().unwrap();
        mul(num, inv(den))
    }

    /// Incremental row-echelon basis of a span of vectors over 𝔽_p.
    pub struct Span {
        ncols: usize,
        rows: Vec<Vec<u64>>,
        pivots: Vec<usize>,
    }

    impl Span {
        pub fn new(ncols: usize) -> Self {
            Span {
                ncols,
                rows: Vec::new(),
                pivots: Vec::new(),
            }
        }

        pub fn dim(&self) -> usize {
            self.rows.len()
        }

        /// Reduce and insert; returns true if the vector was independent.
        pub fn insert(&mut self, mut v: Vec<u64>) -> bool {
            assert_eq!(v.len(), self.ncols);
            for (row, &pc) in self.rows.iter().zip(&self.pivots) {
                if v[pc] != 0 {
                    let f = v[pc];
                    for j in 0..self.ncols {
                        if row[j] != 0 {
                            v[j] = (v[j] + P - mul(f, row[j])) % P;
                        }
                    }
                }
            }
            let Some(pc) = v.iter().position(|&x| x != 0) else {
                return false;
            };
            let inv = inv(v[pc]);
            for x in v.iter_mut() {
                if *x != 0 {
                    *x = mul(*x, inv);
                }
            }
            self.rows.push(v);
            self.pivots.push(pc);
            true
        }
    }
}

/// Probe the holonomy algebra of the supercovariant connection.
///
/// Evaluates every curvature matrix at `samples` admissible points,
/// closes the span under commutators (at most `cap` closure rounds), and
/// reports a certified lower bound for the spanned matrix Lie algebra
/// dimension together with an exact check whether some evaluated
/// curvature fails to preserve the symplectic form.
pub fn holonomy_probe(
    bg: &Background,
    samples: usize,
    cap: usize,
    seed: u64,
) -> Result<(usize, bool), SugraError> {
    let sc = supercurvature(bg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mats: Vec<RatMat> = Vec::new();
    for _ in 0..samples {
        let pt = sample_point(bg.chart(), &mut rng)?;
        for (_, m) in &sc.pairs {
            if m.is_zero() {
                continue;
            }
            let ev = m.eval_rat(&pt).map_err(|_| SugraError::NoAdmissiblePoint)?;
            if !ev.is_zero() {
                mats.push(ev);
            }
        }
    }
    // exact symplectic check: Rᵀ C + C R = 0?
    let c = build_symplectic(bg.rep())?.c;
    let violation = mats.iter().any(|r| {
        let lhs = &(&r.transpose() * &c) + &(&c * r);
        !lhs.is_zero()
    });

    let to_residues = |m: &RatMat| -> Vec<u64> {
        let mut v = Vec::with_capacity(SPINOR_DIM * SPINOR_DIM);
        for i in 0..SPINOR_DIM {
            for j in 0..SPINOR_DIM {
                v.push(modp::from_rat(&m[(i, j)]));
            }
        }
        v
    };
    let mut span = modp::Span::new(SPINOR_DIM * SPINOR_DIM);
    let mut generation: Vec<RatMat> = Vec::new();
    for m in &mats {
        if span.insert(to_residues(m)) {
            generation.push(m.clone());
        }
    }
    let mut basis: Vec<RatMat> = generation.clone();
    for _round in 0..cap {
        let mut next: Vec<RatMat> = Vec::new();
        for x in &generation {
            for y in &basis {
                let comm = &(x * y) - &(y * x);
                if comm.is_zero() {
                    continue;
                }
                if span.insert(to_residues(&comm)) {
                    next.push(comm);
                }
            }
        }
        if next.is_empty() {
            break;
        }
        basis.extend(next.iter().cloned());
        generation = next;
    }
    Ok((span.dim(), violation))
}

/// Convenience bundle of the residual checks reported by the CLI.
pub struct FieldEquationReport {
    pub einstein_holds: bool,
    pub einstein_nonzero: Vec<(usize, usize)>,
    pub maxwell_holds: bool,
    pub flux_closed: bool,
    pub scalar_curvature: RingElem,
}

pub fn check_field_equations(bg: &Background) -> FieldEquationReport {
    let e = einstein_residual(bg);
    let n = bg.dim();
    let mut nonzero = Vec::new();
    for i in 0..n {
        for j in i..n {
            if !e[i][j].is_zero() {
                nonzero.push((i, j));
            }
        }
    }
    let (mx, df) = maxwell_residual(bg);
    let (_, _, scalar) = riemann_ricci_scalar(bg.metric());
    FieldEquationReport {
        einstein_holds: nonzero.is_empty(),
        einstein_nonzero: nonzero,
        maxwell_holds: mx.is_zero() && df.is_zero(),
        flux_closed: bg.flux_closed(),
        scalar_curvature: scalar,
    }
}

/// Verify a vector field is Killing for the background metric.
pub fn is_killing(bg: &Background, xi: &VectorField) -> bool {
    rank2_is_zero(&killing_check(xi, bg.metric()))
}

pub use crate::clifford::spinor_bilinear_vector;

/// The symplectic form of the background's representation.
pub fn symplectic(bg: &Background) -> Result<SymplecticForm, SugraError> {
    Ok(build_symplectic(bg.rep())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::Matrix;

    fn flat11() -> Background {
        let ch = Chart::new((0..FRAME_DIM).map(|i| format!("x{i}")).collect()).shared();
        let n = FRAME_DIM;
        let coframe: Vec<Vec<RingElem>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|i| {
                        if a == i {
                            RingElem::one(&ch)
                        } else {
                            RingElem::zero(&ch)
                        }
                    })
                    .collect()
            })
            .collect();
        let eta = crate::clifford::minkowski_frame_metric();
        let metric = MetricField::new(&ch, coframe, eta).unwrap();
        let flux = FormField::zero(&ch, 4, FormBasis::Coordinate);
        Background::new(BackgroundMeta::Flat, metric, flux).unwrap()
    }

    #[test]
    fn flat_solves_everything() {
        let bg = flat11();
        let rep = check_field_equations(&bg);
        assert!(rep.einstein_holds && rep.maxwell_holds && rep.flux_closed);
        assert!(rep.scalar_curvature.is_zero());
        let (maximal, bound) = susy_count(&bg, 1, 0).unwrap();
        assert!(maximal);
        assert_eq!(bound, 32);
        let (dim, viol) = holonomy_probe(&bg, 1, 4, 0).unwrap();
        assert_eq!(dim, 0);
        assert!(!viol);
    }

    #[test]
    fn flat_omega_with_test_flux() {
        // flat metric, F = dx1∧dx2∧dx3∧dx4, X = ∂5:
        // Ω = ±1/12 Γ^5 Γ^{1234} with no interior part
        let bg = flat11();
        let ch = bg.chart().clone();
        let mut f = FormField::zero(&ch, 4, FormBasis::Coordinate);
        f.insert(vec![1, 2, 3, 4], RingElem::one(&ch));
        let bg2 = Background::new(BackgroundMeta::Custom { name: "t".into() }, bg.metric.clone(), f)
            .unwrap();
        let om = omega(&bg2, 5);
        let rep = bg2.rep();
        let prod = &(&(&(&rep.gamma_upper(5) * &rep.gamma_upper(1)) * &rep.gamma_upper(2))
            * &rep.gamma_upper(3))
            * &rep.gamma_upper(4);
        let expect = SpinorMatrix::from_rat_mat(
            &bg2.chart,
            &prod.scale(&(rat(1, 12) * Rat::from_integer(OMEGA_SIGN.into()))),
        );
        assert_eq!(om, expect);
    }

    #[test]
    fn bilinear_of_constant_spinors_is_killing_on_flat() {
        let bg = flat11();
        let ch = bg.chart().clone();
        let c = symplectic(&bg).unwrap();
        let mut eps1 = vec![RingElem::zero(&ch); SPINOR_DIM];
        let mut eps2 = vec![RingElem::zero(&ch); SPINOR_DIM];
        eps1[3] = RingElem::one(&ch);
        eps2[17] = RingElem::int(&ch, 2);
        let vframe = spinor_bilinear_vector(&eps1, &eps2, bg.rep(), &c, &ch);
        assert!(vframe.iter().all(|e| e.as_rat().is_some()));
        let v = bg.metric().vector_from_frame(&vframe);
        assert!(is_killing(&bg, &v));
        // zero spinors give the zero vector
        let z = vec![RingElem::zero(&ch); SPINOR_DIM];
        let zero_v = spinor_bilinear_vector(&z, &z, bg.rep(), &c, &ch);
        assert!(zero_v.iter().all(|e| e.is_zero()));
    }

    #[test]
    fn dilatino_and_lie_derivative_on_flat() {
        let bg = flat11();
        let ch = bg.chart().clone();
        let mut eps = vec![RingElem::zero(&ch); SPINOR_DIM];
        eps[5] = RingElem::one(&ch);
        // translations act trivially
        let xi = VectorField::coordinate(&ch, 10);
        assert!(dilatino_residual(&bg, &xi, &eps).iter().all(|e| e.is_zero()));
        assert!(spin_lie_derivative(&bg, &xi, &eps).iter().all(|e| e.is_zero()));
        // rotation x1∂2 − x2∂1: dξ♭ = 2dx1∧dx2, residual ½ Γ¹Γ² ε
        let rot = VectorField::new(
            &ch,
            (0..FRAME_DIM)
                .map(|i| match i {
                    1 => -&RingElem::var(&ch, 2),
                    2 => RingElem::var(&ch, 1),
                    _ => RingElem::zero(&ch),
                })
                .collect(),
        );
        let res = dilatino_residual(&bg, &rot, &eps);
        let g12 = &(bg.rep().gamma_upper(1)) * &(bg.rep().gamma_upper(2));
        let expect = SpinorMatrix::from_rat_mat(&ch, &g12.scale(&rat(1, 2))).apply(&eps);
        assert_eq!(res, expect);
        assert!(res.iter().any(|e| !e.is_zero()));
        // linearity in ε over ring scalars
        let s = RingElem::var(&ch, 3);
        let eps_scaled: Vec<RingElem> = eps.iter().map(|e| e * &s).collect();
        let res_scaled = dilatino_residual(&bg, &rot, &eps_scaled);
        let expect_scaled: Vec<RingElem> = res.iter().map(|e| e * &s).collect();
        assert_eq!(res_scaled, expect_scaled);
    }

    #[test]
    fn modp_span_counts_dimension() {
        let mut span = modp::Span::new(4);
        assert!(span.insert(vec![1, 2, 3, 4]));
        assert!(span.insert(vec![0, 1, 0, 1]));
        assert!(!span.insert(vec![2, 5, 6, 9])); // sum of the two
        assert_eq!(span.dim(), 2);
        let _ = Matrix::<Rat>::identity(2);
    }
}
