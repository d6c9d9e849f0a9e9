//! Real 32×32 representation of the Clifford algebra in signature (1,10),
//! the Clifford action of exterior forms, and the spin-invariant
//! symplectic form.
//!
//! The generators are built from octonion left-multiplication matrices:
//! seven antisymmetric 8×8 square-minus-one matrices give Cl(0,7), a
//! doubling gives eight symmetric square-plus-one 16×16 generators of
//! Cl(8,0), their product is a ninth, and one more doubling lands on
//! eleven real 32×32 generators with squares (−1, +1, ..., +1). All
//! entries are 0 or ±1, so every generator is a signed permutation.

use crate::chart::Chart;
use crate::linalg::{sparse_kernel, Matrix, SparseRow};
use crate::ring::RingElem;
use crate::scalar::{rat, Rat};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, RwLock};
use thiserror::Error;

pub const SPINOR_DIM: usize = 32;
pub const FRAME_DIM: usize = 11;

pub type RatMat = Matrix<Rat>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliffordError {
    #[error("frame metric is not in the admissible signature-(1,10) family")]
    BadSignature,
    #[error("form degree out of range")]
    DegreeOutOfRange,
    #[error("symplectic system has no solution")]
    NoSolution,
    #[error("symplectic system has a solution space of dimension {0} (expected 1)")]
    NonUniqueSolution(usize),
}

/// Octonion basis product by Cayley–Dickson doubling:
/// `e_i · e_j = sign · e_k` in dimension `n` (a power of two).
fn cd_basis_mul(n: usize, i: usize, j: usize) -> (i8, usize) {
    if n == 1 {
        return (1, 0);
    }
    let h = n / 2;
    let conj = |k: usize| -> i8 {
        if k == 0 {
            1
        } else {
            -1
        }
    };
    match (i < h, j < h) {
        (true, true) => cd_basis_mul(h, i, j),
        // (a,0)(0,d) = (0, d·a)
        (true, false) => {
            let (s, k) = cd_basis_mul(h, j - h, i);
            (s, h + k)
        }
        // (0,b)(c,0) = (0, b·c̄)
        (false, true) => {
            let (s, k) = cd_basis_mul(h, i - h, j);
            (s * conj(j), h + k)
        }
        // (0,b)(0,d) = (−d̄·b, 0)
        (false, false) => {
            let (s, k) = cd_basis_mul(h, j - h, i - h);
            (-conj(j - h) * s, k)
        }
    }
}

/// Left multiplication by the imaginary octonion unit `e_i` on ℝ⁸.
fn octonion_left_mul(i: usize) -> RatMat {
    let mut m = RatMat::zeros(8, 8);
    for j in 0..8 {
        let (s, k) = cd_basis_mul(8, i, j);
        m[(k, j)] = Rat::from_integer(s.into());
    }
    m
}

fn pauli_sigma1() -> RatMat {
    RatMat::from_rows(vec![
        vec![Rat::zero(), Rat::one()],
        vec![Rat::one(), Rat::zero()],
    ])
}

fn pauli_sigma3() -> RatMat {
    RatMat::from_rows(vec![
        vec![Rat::one(), Rat::zero()],
        vec![Rat::zero(), -Rat::one()],
    ])
}

fn pauli_eps() -> RatMat {
    RatMat::from_rows(vec![
        vec![Rat::zero(), Rat::one()],
        vec![-Rat::one(), Rat::zero()],
    ])
}

/// Eleven generators for `diag(−1, +1, ..., +1)`, volume not yet fixed.
fn build_diag_generators() -> Vec<RatMat> {
    // Cl(8,0) on ℝ¹⁶
    let eps = pauli_eps();
    let s1 = pauli_sigma1();
    let s3 = pauli_sigma3();
    let id8 = RatMat::identity(8);
    let mut cl8: Vec<RatMat> = (1..8).map(|i| octonion_left_mul(i).kron(&eps)).collect();
    cl8.push(id8.kron(&s1));
    // ninth generator: the Cl(8,0) volume element
    let mut omega8 = RatMat::identity(16);
    for g in &cl8 {
        omega8 = &omega8 * g;
    }
    let mut nine = cl8;
    nine.push(omega8);

    // double to 32 dimensions
    let id16 = RatMat::identity(16);
    let mut gammas = Vec::with_capacity(FRAME_DIM);
    gammas.push(id16.kron(&eps)); // Γ₀, square −1
    for d in &nine {
        gammas.push(d.kron(&s3)); // Γ₁..Γ₉
    }
    gammas.push(id16.kron(&s1)); // Γ₁₀
    gammas
}

#[derive(Clone, Debug, PartialEq)]
enum FrameKind {
    Diagonal,
    /// 2×2 lightcone block in slots (0,1), euclidean elsewhere.
    Lightcone,
}

/// A concrete real spinor representation attached to a constant frame
/// metric η̂ of signature (1,10).
pub struct GammaRep {
    frame_metric: RatMat,
    frame_metric_inv: RatMat,
    gammas: Vec<RatMat>,
    /// Generators of the auxiliary orthonormal frame (η = diag(−1,1..1)).
    diag_gammas: Vec<RatMat>,
    /// Rows express each user coframe vector in the auxiliary diagonal
    /// coframe: ê_user^a = Σ_b to_diag[a][b] ê_diag^b.
    coframe_to_diag: RatMat,
    kind: FrameKind,
    product_cache: RwLock<HashMap<u16, Arc<RatMat>>>,
}

impl std::fmt::Debug for GammaRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GammaRep").field("kind", &self.kind).finish()
    }
}

fn classify_frame_metric(eta: &RatMat) -> Result<FrameKind, CliffordError> {
    if eta.nrows() != FRAME_DIM || eta.ncols() != FRAME_DIM {
        return Err(CliffordError::BadSignature);
    }
    let is = |v: &Rat, n: i64| *v == Rat::from_integer(n.into());
    let diag_ok = (0..FRAME_DIM).all(|i| {
        (0..FRAME_DIM).all(|j| {
            if i == j {
                is(&eta[(i, i)], if i == 0 { -1 } else { 1 })
            } else {
                eta[(i, j)].is_zero()
            }
        })
    });
    if diag_ok {
        return Ok(FrameKind::Diagonal);
    }
    let lc_ok = (0..FRAME_DIM).all(|i| {
        (0..FRAME_DIM).all(|j| {
            let want: i64 = match (i, j) {
                (0, 1) | (1, 0) => 1,
                (0, 0) | (1, 1) => 0,
                (a, b) if a == b => 1,
                _ => 0,
            };
            is(&eta[(i, j)], want)
        })
    });
    if lc_ok {
        return Ok(FrameKind::Lightcone);
    }
    Err(CliffordError::BadSignature)
}

/// Build a [`GammaRep`] for an admissible frame metric.
///
/// The diagonal representation is normalized so the volume element
/// Γ₀Γ₁···Γ₁₀ is +Identity; lightcone frames take Γ₊ = Γ₀+Γ₁ and
/// Γ₋ = ½(Γ₁−Γ₀) so all entries stay rational.
pub fn build_gamma(frame_metric: &RatMat) -> Result<GammaRep, CliffordError> {
    let kind = classify_frame_metric(frame_metric)?;
    let mut diag = build_diag_generators();
    let mut vol = RatMat::identity(SPINOR_DIM);
    for g in &diag {
        vol = &vol * g;
    }
    if vol == -&RatMat::identity(SPINOR_DIM) {
        let last = diag.last().unwrap().clone();
        *diag.last_mut().unwrap() = -&last;
    } else if vol != RatMat::identity(SPINOR_DIM) {
        return Err(CliffordError::NoSolution);
    }

    let (gammas, to_diag) = match kind {
        FrameKind::Diagonal => (diag.clone(), RatMat::identity(FRAME_DIM)),
        FrameKind::Lightcone => {
            let mut gs = diag.clone();
            let half = rat(1, 2);
            gs[0] = &diag[0] + &diag[1];
            gs[1] = (&diag[1] - &diag[0]).scale(&half);
            // ê⁺ = ½(ê⁰+ê¹), ê⁻ = ê¹−ê⁰
            let mut m = RatMat::identity(FRAME_DIM);
            m[(0, 0)] = half.clone();
            m[(0, 1)] = half;
            m[(1, 0)] = -Rat::one();
            m[(1, 1)] = Rat::one();
            (gs, m)
        }
    };
    let frame_metric_inv = frame_metric
        .inverse()
        .ok_or(CliffordError::BadSignature)?;
    Ok(GammaRep {
        frame_metric: frame_metric.clone(),
        frame_metric_inv,
        gammas,
        diag_gammas: diag,
        coframe_to_diag: to_diag,
        kind,
        product_cache: RwLock::new(HashMap::new()),
    })
}

impl GammaRep {
    pub fn frame_metric(&self) -> &RatMat {
        &self.frame_metric
    }

    pub fn frame_metric_inv(&self) -> &RatMat {
        &self.frame_metric_inv
    }

    /// Γ_a in the user frame.
    pub fn gamma(&self, a: usize) -> &RatMat {
        &self.gammas[a]
    }

    /// Γ^a = η̂^{ab} Γ_b in the user frame.
    pub fn gamma_upper(&self, a: usize) -> RatMat {
        let mut out = RatMat::zeros(SPINOR_DIM, SPINOR_DIM);
        for b in 0..FRAME_DIM {
            let c = &self.frame_metric_inv[(a, b)];
            if !c.is_zero() {
                out = &out + &self.gammas[b].scale(c);
            }
        }
        out
    }

    pub fn gammas(&self) -> &[RatMat] {
        &self.gammas
    }

    fn diag_volume_sign(a: usize) -> Rat {
        if a == 0 {
            -Rat::one()
        } else {
            Rat::one()
        }
    }

    /// Product Γ̃^{a₁}···Γ̃^{a_p} over the auxiliary diagonal frame for a
    /// strictly increasing index set, with all indices raised.
    fn diag_product_upper(&self, subset: &[usize]) -> Arc<RatMat> {
        let mask: u16 = subset.iter().fold(0, |m, &a| m | (1 << a));
        if let Some(hit) = self.product_cache.read().unwrap().get(&mask) {
            return hit.clone();
        }
        let mut m = RatMat::identity(SPINOR_DIM);
        let mut sign = Rat::one();
        for &a in subset {
            m = &m * &self.diag_gammas[a];
            sign = sign * Self::diag_volume_sign(a);
        }
        let out = Arc::new(m.scale(&sign));
        self.product_cache
            .write()
            .unwrap()
            .insert(mask, out.clone());
        out
    }

    /// Rows expressing user coframe vectors in the auxiliary diagonal
    /// coframe (identity for diagonal frames).
    pub(crate) fn coframe_to_diag(&self) -> &RatMat {
        &self.coframe_to_diag
    }
}

/// 32×32 matrix of exact scalar functions; houses Ω_X(F), supercurvature
/// values and Clifford actions of non-constant forms.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinorMatrix {
    chart: Arc<Chart>,
    entries: Vec<RingElem>,
}

impl SpinorMatrix {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        SpinorMatrix {
            chart: chart.clone(),
            entries: vec![RingElem::zero(chart); SPINOR_DIM * SPINOR_DIM],
        }
    }

    pub fn from_rat_mat(chart: &Arc<Chart>, m: &RatMat) -> Self {
        let mut out = Self::zero(chart);
        for i in 0..SPINOR_DIM {
            for j in 0..SPINOR_DIM {
                if !m[(i, j)].is_zero() {
                    out.entries[i * SPINOR_DIM + j] = RingElem::constant(chart, m[(i, j)].clone());
                }
            }
        }
        out
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn entry(&self, i: usize, j: usize) -> &RingElem {
        &self.entries[i * SPINOR_DIM + j]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut RingElem {
        &mut self.entries[i * SPINOR_DIM + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn scale_elem(&self, c: &RingElem) -> Self {
        if c.is_zero() {
            return Self::zero(&self.chart);
        }
        let entries = self
            .entries
            .iter()
            .map(|e| if e.is_zero() { e.clone() } else { e * c })
            .collect();
        SpinorMatrix {
            chart: self.chart.clone(),
            entries,
        }
    }

    pub fn derivative(&self, var: usize) -> Self {
        let entries = self.entries.iter().map(|e| e.derivative(var)).collect();
        SpinorMatrix {
            chart: self.chart.clone(),
            entries,
        }
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        &(self * rhs) - &(rhs * self)
    }

    /// Evaluate every entry at a rational point.
    pub fn eval_rat(&self, point: &[Rat]) -> Result<RatMat, crate::ring::RingError> {
        let mut m = RatMat::zeros(SPINOR_DIM, SPINOR_DIM);
        for i in 0..SPINOR_DIM {
            for j in 0..SPINOR_DIM {
                m[(i, j)] = self.entry(i, j).eval(point)?;
            }
        }
        Ok(m)
    }

    /// Apply to a spinor (32 scalar functions).
    pub fn apply(&self, v: &[RingElem]) -> Vec<RingElem> {
        assert_eq!(v.len(), SPINOR_DIM);
        (0..SPINOR_DIM)
            .map(|i| {
                let mut acc = RingElem::zero(&self.chart);
                for j in 0..SPINOR_DIM {
                    let e = self.entry(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc = &acc + &(e * &v[j]);
                    }
                }
                acc
            })
            .collect()
    }
}

impl Add for &SpinorMatrix {
    type Output = SpinorMatrix;
    fn add(self, rhs: Self) -> SpinorMatrix {
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| {
                if b.is_zero() {
                    a.clone()
                } else if a.is_zero() {
                    b.clone()
                } else {
                    a + b
                }
            })
            .collect();
        SpinorMatrix {
            chart: self.chart.clone(),
            entries,
        }
    }
}

impl Sub for &SpinorMatrix {
    type Output = SpinorMatrix;
    fn sub(self, rhs: Self) -> SpinorMatrix {
        self + &(-rhs)
    }
}

impl Neg for &SpinorMatrix {
    type Output = SpinorMatrix;
    fn neg(self) -> SpinorMatrix {
        let entries = self.entries.iter().map(|e| -e).collect();
        SpinorMatrix {
            chart: self.chart.clone(),
            entries,
        }
    }
}

impl Mul for &SpinorMatrix {
    type Output = SpinorMatrix;
    fn mul(self, rhs: Self) -> SpinorMatrix {
        let mut out = SpinorMatrix::zero(&self.chart);
        for i in 0..SPINOR_DIM {
            for k in 0..SPINOR_DIM {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..SPINOR_DIM {
                    let b = rhs.entry(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a * b;
                    let tgt = out.entry_mut(i, j);
                    *tgt = &*tgt + &prod;
                }
            }
        }
        out
    }
}

/// The spin-invariant symplectic form on the 32-dimensional spinor space.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticForm {
    pub c: RatMat,
}

/// Solve `{Cᵀ = −C, (CΓₐ)ᵀ = CΓₐ for all a}` by exact elimination over
/// the 496 antisymmetric unknowns. The solution line is normalized so the
/// first nonzero entry in row-major order is +1.
pub fn build_symplectic(rep: &GammaRep) -> Result<SymplecticForm, CliffordError> {
    let n = SPINOR_DIM;
    let nunk = n * (n - 1) / 2;
    let pair_idx = |i: usize, j: usize| -> (usize, Rat) {
        // C_{ij} in terms of unknowns c_{kl}, k<l
        if i < j {
            (i * n - i * (i + 1) / 2 + (j - i - 1), Rat::one())
        } else {
            (j * n - j * (j + 1) / 2 + (i - j - 1), -Rat::one())
        }
    };
    let mut rows: Vec<SparseRow<Rat>> = Vec::new();
    for g in rep.gammas() {
        for i in 0..n {
            for j in (i + 1)..n {
                // (CΓ)_{ij} − (CΓ)_{ji} = Σ_k C_{ik}Γ_{kj} − C_{jk}Γ_{ki}
                let mut row: HashMap<usize, Rat> = HashMap::new();
                for k in 0..n {
                    if k != i && !g[(k, j)].is_zero() {
                        let (u, s) = pair_idx(i, k);
                        let v = s * g[(k, j)].clone();
                        *row.entry(u).or_insert_with(Rat::zero) += v;
                    }
                    if k != j && !g[(k, i)].is_zero() {
                        let (u, s) = pair_idx(j, k);
                        let v = s * g[(k, i)].clone();
                        *row.entry(u).or_insert_with(Rat::zero) -= v;
                    }
                }
                let mut srow: SparseRow<Rat> =
                    row.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                if srow.is_empty() {
                    continue;
                }
                srow.sort_by_key(|&(c, _)| c);
                rows.push(srow);
            }
        }
    }
    let basis = sparse_kernel(rows, nunk);
    match basis.len() {
        0 => Err(CliffordError::NoSolution),
        1 => {
            let coeffs = &basis[0];
            let mut c = RatMat::zeros(n, n);
            for i in 0..n {
                for j in (i + 1)..n {
                    let (u, _) = pair_idx(i, j);
                    c[(i, j)] = coeffs[u].clone();
                    c[(j, i)] = -coeffs[u].clone();
                }
            }
            // normalize first nonzero entry (row-major) to +1
            let mut scale = None;
            'outer: for i in 0..n {
                for j in 0..n {
                    if !c[(i, j)].is_zero() {
                        scale = Some(Rat::one() / c[(i, j)].clone());
                        break 'outer;
                    }
                }
            }
            let c = c.scale(&scale.ok_or(CliffordError::NoSolution)?);
            Ok(SymplecticForm { c })
        }
        d => Err(CliffordError::NonUniqueSolution(d)),
    }
}

/// Clifford action of a frame-basis form component list.
///
/// `components` maps strictly increasing frame index tuples to exact
/// coefficients; the result is Σ c_A · c(ê^{A}). Lightcone frames are
/// first rewritten in the auxiliary orthonormal frame, where the Clifford
/// image of a basis monomial with distinct indices is the plain product
/// of raised generators.
pub fn clifford_action_components(
    components: &[(Vec<usize>, RingElem)],
    rep: &GammaRep,
    chart: &Arc<Chart>,
) -> Result<SpinorMatrix, CliffordError> {
    let mut out = SpinorMatrix::zero(chart);
    for (subset, coeff) in components {
        if subset.len() > FRAME_DIM {
            return Err(CliffordError::DegreeOutOfRange);
        }
        if coeff.is_zero() {
            continue;
        }
        match rep.kind {
            FrameKind::Diagonal => {
                let m = rep.diag_product_upper(subset);
                out = &out + &SpinorMatrix::from_rat_mat(chart, &m).scale_elem(coeff);
            }
            FrameKind::Lightcone => {
                // expand each ê_user^a into the diagonal coframe
                let rows = rep.coframe_to_diag();
                let mut expanded: Vec<(Vec<usize>, Rat)> = vec![(Vec::new(), Rat::one())];
                for &a in subset {
                    let mut next = Vec::new();
                    for (idxs, sign) in &expanded {
                        for b in 0..FRAME_DIM {
                            let c = &rows[(a, b)];
                            if c.is_zero() || idxs.contains(&b) {
                                continue;
                            }
                            // insertion sort sign
                            let pos = idxs.iter().filter(|&&x| x < b).count();
                            let swaps = idxs.len() - pos;
                            let mut v = idxs.clone();
                            v.insert(pos, b);
                            let s = if swaps % 2 == 0 {
                                sign.clone() * c.clone()
                            } else {
                                -(sign.clone() * c.clone())
                            };
                            next.push((v, s));
                        }
                    }
                    expanded = next;
                }
                let mut acc: HashMap<Vec<usize>, Rat> = HashMap::new();
                for (idxs, s) in expanded {
                    *acc.entry(idxs).or_insert_with(Rat::zero) += s;
                }
                for (idxs, s) in acc {
                    if s.is_zero() {
                        continue;
                    }
                    let m = rep.diag_product_upper(&idxs);
                    out = &out
                        + &SpinorMatrix::from_rat_mat(chart, &m.scale(&s)).scale_elem(coeff);
                }
            }
        }
    }
    Ok(out)
}

/// The frame vector `V` with `V^a = η̂^{ab} ε₁ᵀ C Γ_b ε₂` built from two
/// spinor fields; the vector-valued bilinear of the Killing-spinor
/// squaring map.
pub fn spinor_bilinear_vector(
    eps1: &[RingElem],
    eps2: &[RingElem],
    rep: &GammaRep,
    c: &SymplecticForm,
    chart: &Arc<Chart>,
) -> Vec<RingElem> {
    assert_eq!(eps1.len(), SPINOR_DIM);
    assert_eq!(eps2.len(), SPINOR_DIM);
    let mut lower = Vec::with_capacity(FRAME_DIM);
    for b in 0..FRAME_DIM {
        let m = &c.c * rep.gamma(b);
        let mut acc = RingElem::zero(chart);
        for i in 0..SPINOR_DIM {
            if eps1[i].is_zero() {
                continue;
            }
            for j in 0..SPINOR_DIM {
                if m[(i, j)].is_zero() || eps2[j].is_zero() {
                    continue;
                }
                let term = (&eps1[i] * &eps2[j]).scale(&m[(i, j)]);
                acc = &acc + &term;
            }
        }
        lower.push(acc);
    }
    // raise with η̂⁻¹
    (0..FRAME_DIM)
        .map(|a| {
            let mut acc = RingElem::zero(chart);
            for b in 0..FRAME_DIM {
                let c = &rep.frame_metric_inv()[(a, b)];
                if !c.is_zero() {
                    acc = &acc + &lower[b].scale(c);
                }
            }
            acc
        })
        .collect()
}

/// Frame metric `diag(−1, +1, ..., +1)`.
pub fn minkowski_frame_metric() -> RatMat {
    let mut m = RatMat::identity(FRAME_DIM);
    m[(0, 0)] = -Rat::one();
    m
}

/// Lightcone frame metric: `η̂₊₋ = 1` block in slots (0,1), euclidean
/// elsewhere.
pub fn lightcone_frame_metric() -> RatMat {
    let mut m = RatMat::identity(FRAME_DIM);
    m[(0, 0)] = Rat::zero();
    m[(1, 1)] = Rat::zero();
    m[(0, 1)] = Rat::one();
    m[(1, 0)] = Rat::one();
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ri(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn octonion_left_mul_clifford_relations() {
        for i in 1..8 {
            let li = octonion_left_mul(i);
            assert_eq!(li.transpose(), -&li, "L{i} not antisymmetric");
            for j in 1..8 {
                let lj = octonion_left_mul(j);
                let anti = &(&li * &lj) + &(&lj * &li);
                let expect = if i == j {
                    RatMat::identity(8).scale(&ri(-2))
                } else {
                    RatMat::zeros(8, 8)
                };
                assert_eq!(anti, expect, "L{i},L{j}");
            }
        }
    }

    #[test]
    fn diag_gammas_anticommute_and_square() {
        let rep = build_gamma(&minkowski_frame_metric()).unwrap();
        let eta = rep.frame_metric().clone();
        for a in 0..FRAME_DIM {
            for b in a..FRAME_DIM {
                let g = &(rep.gamma(a) * rep.gamma(b)) + &(rep.gamma(b) * rep.gamma(a));
                let expect = RatMat::identity(SPINOR_DIM).scale(&(eta[(a, b)].clone() * ri(2)));
                assert_eq!(g, expect, "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn volume_element_is_plus_identity() {
        let rep = build_gamma(&minkowski_frame_metric()).unwrap();
        let mut vol = RatMat::identity(SPINOR_DIM);
        for a in 0..FRAME_DIM {
            vol = &vol * rep.gamma(a);
        }
        assert_eq!(vol, RatMat::identity(SPINOR_DIM));
    }

    #[test]
    fn lightcone_relations() {
        let rep = build_gamma(&lightcone_frame_metric()).unwrap();
        let eta = rep.frame_metric().clone();
        for a in 0..FRAME_DIM {
            for b in a..FRAME_DIM {
                let g = &(rep.gamma(a) * rep.gamma(b)) + &(rep.gamma(b) * rep.gamma(a));
                let expect = RatMat::identity(SPINOR_DIM).scale(&(eta[(a, b)].clone() * ri(2)));
                assert_eq!(g, expect, "pair ({a},{b})");
            }
        }
    }

    #[test]
    fn bad_signature_rejected() {
        let m = RatMat::identity(FRAME_DIM);
        assert!(matches!(build_gamma(&m), Err(CliffordError::BadSignature)));
    }

    #[test]
    fn symplectic_form_properties() {
        let rep = build_gamma(&minkowski_frame_metric()).unwrap();
        let c = build_symplectic(&rep).unwrap().c;
        assert_eq!(c.transpose(), -&c);
        for a in 0..FRAME_DIM {
            let cg = &c * rep.gamma(a);
            assert_eq!(cg.transpose(), cg, "CΓ{a} not symmetric");
        }
        // spin invariance: C Γ_ab + Γ_abᵀ C = 0 for bivectors
        for a in 0..FRAME_DIM {
            for b in (a + 1)..FRAME_DIM {
                let gab = (&(rep.gamma(a) * rep.gamma(b)) - &(rep.gamma(b) * rep.gamma(a)))
                    .scale(&Rat::new(1.into(), 2.into()));
                let lhs = &(&c * &gab) + &(&gab.transpose() * &c);
                assert!(lhs.is_zero(), "spin invariance fails for ({a},{b})");
            }
        }
    }

    #[test]
    fn symplectic_same_for_lightcone() {
        let rep = build_gamma(&lightcone_frame_metric()).unwrap();
        let c = build_symplectic(&rep).unwrap().c;
        assert_eq!(c.transpose(), -&c);
        for a in 0..FRAME_DIM {
            let cg = &c * rep.gamma(a);
            assert_eq!(cg.transpose(), cg);
        }
    }

    #[test]
    fn clifford_action_basics() {
        let rep = build_gamma(&minkowski_frame_metric()).unwrap();
        let chart = Chart::new((0..11).map(|i| format!("y{i}")).collect()).shared();
        let one = RingElem::one(&chart);
        // c(1) = Identity
        let id = clifford_action_components(&[(vec![], one.clone())], &rep, &chart).unwrap();
        assert_eq!(
            id,
            SpinorMatrix::from_rat_mat(&chart, &RatMat::identity(SPINOR_DIM))
        );
        // c(ê¹∧ê²) = Γ¹Γ² (spatial indices raise trivially)
        let g12 = clifford_action_components(&[(vec![1, 2], one.clone())], &rep, &chart).unwrap();
        let expect = rep.gamma(1) * rep.gamma(2);
        assert_eq!(g12, SpinorMatrix::from_rat_mat(&chart, &expect));
        // c(frame volume form) = +Identity
        let vol =
            clifford_action_components(&[((0..11).collect(), one.clone())], &rep, &chart).unwrap();
        let mut prod = RatMat::identity(SPINOR_DIM);
        for a in 0..FRAME_DIM {
            prod = &prod * &rep.gamma_upper(a);
        }
        assert_eq!(vol, SpinorMatrix::from_rat_mat(&chart, &prod));
        // and with the raised time index the sign is the metric determinant
        let expect_vol = RatMat::identity(SPINOR_DIM).scale(&ri(-1));
        assert_eq!(prod, expect_vol);
    }
}
