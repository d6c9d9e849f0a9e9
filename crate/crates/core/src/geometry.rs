//! Dimension-generic exterior calculus and metric geometry on a single
//! chart: wedge, interior product, exterior derivative, Hodge star,
//! Christoffel symbols, curvature, the spin connection of a coframe, and
//! a Killing-equation checker.
//!
//! Everything is exact. Frames may be pseudo-orthonormal (lightcone
//! blocks), so the Cahen–Wallach coframe needs no square roots.

use crate::chart::Chart;
use crate::linalg::Matrix;
use crate::ring::RingElem;
use crate::scalar::Rat;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

pub type RatMat = Matrix<Rat>;
pub type Rank2 = Vec<Vec<RingElem>>;
pub type Rank3 = Vec<Vec<Vec<RingElem>>>;
pub type Rank4 = Vec<Vec<Vec<Vec<RingElem>>>>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeomError {
    #[error("form fields live in different bases")]
    BasisMismatch,
    #[error("cannot contract a degree-zero form")]
    DegreeZero,
    #[error("form degrees differ")]
    DegreeMismatch,
    #[error("exterior derivative requires the coordinate basis")]
    FrameBasis,
    #[error("coframe is not invertible over the chart ring")]
    SingularCoframe,
    #[error("operands belong to different charts")]
    ChartMismatch,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum FormBasis {
    Coordinate,
    Frame,
}

/// Exterior form of fixed degree with exact coefficients, stored on
/// strictly increasing index tuples.
#[derive(Clone, Debug)]
pub struct FormField {
    chart: Arc<Chart>,
    degree: usize,
    basis: FormBasis,
    comps: BTreeMap<Vec<u8>, RingElem>,
}

/// Sign of the permutation sorting `idx`, `None` if an index repeats.
fn sort_sign(idx: &[u8]) -> Option<(Vec<u8>, i8)> {
    let mut v = idx.to_vec();
    let mut sign = 1i8;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    for w in v.windows(2) {
        if w[0] == w[1] {
            return None;
        }
    }
    Some((v, sign))
}

/// Sign of the permutation taking the concatenation `a ++ b` to sorted
/// order, assuming `a` and `b` are each sorted and disjoint.
fn merge_sign(a: &[u8], b: &[u8]) -> i8 {
    let mut inversions = 0usize;
    for &x in a {
        inversions += b.iter().filter(|&&y| y < x).count();
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

impl FormField {
    pub fn zero(chart: &Arc<Chart>, degree: usize, basis: FormBasis) -> Self {
        FormField {
            chart: chart.clone(),
            degree,
            basis,
            comps: BTreeMap::new(),
        }
    }

    /// A scalar as a degree-0 form.
    pub fn scalar(f: RingElem, basis: FormBasis) -> Self {
        let chart = f.chart().clone();
        let mut out = Self::zero(&chart, 0, basis);
        out.insert(Vec::new(), f);
        out
    }

    pub fn from_components(
        chart: &Arc<Chart>,
        degree: usize,
        basis: FormBasis,
        comps: impl IntoIterator<Item = (Vec<u8>, RingElem)>,
    ) -> Self {
        let mut out = Self::zero(chart, degree, basis);
        for (idx, c) in comps {
            out.insert(idx, c);
        }
        out
    }

    /// Add `c · e^{idx}` with arbitrary index order (sorted with sign).
    pub fn insert(&mut self, idx: Vec<u8>, c: RingElem) {
        assert_eq!(idx.len(), self.degree, "index tuple length != degree");
        if c.is_zero() {
            return;
        }
        let Some((sorted, sign)) = sort_sign(&idx) else {
            return;
        };
        let c = if sign < 0 { -&c } else { c };
        match self.comps.entry(sorted) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = &*o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> FormBasis {
        self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn components(&self) -> impl Iterator<Item = (&Vec<u8>, &RingElem)> {
        self.comps.iter()
    }

    pub fn component(&self, idx: &[u8]) -> RingElem {
        self.comps
            .get(idx)
            .cloned()
            .unwrap_or_else(|| RingElem::zero(&self.chart))
    }

    pub fn scale(&self, c: &RingElem) -> Self {
        let mut out = Self::zero(&self.chart, self.degree, self.basis);
        for (idx, v) in &self.comps {
            out.insert(idx.clone(), v * c);
        }
        out
    }

    pub fn scale_rat(&self, c: &Rat) -> Self {
        let mut out = Self::zero(&self.chart, self.degree, self.basis);
        for (idx, v) in &self.comps {
            out.insert(idx.clone(), v.scale(c));
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, GeomError> {
        if self.basis != rhs.basis {
            return Err(GeomError::BasisMismatch);
        }
        if self.degree != rhs.degree {
            return Err(GeomError::DegreeMismatch);
        }
        let mut out = self.clone();
        for (idx, v) in &rhs.comps {
            out.insert(idx.clone(), v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, GeomError> {
        self.add(&rhs.scale_rat(&-Rat::from_integer(1.into())))
    }

    /// Rewrite in terms of a new basis, given each old basis one-form as a
    /// combination of new ones: `old^a = Σ_b rows[a][b] new^b`.
    pub fn change_basis(&self, rows: &[Vec<RingElem>], new_basis: FormBasis) -> Self {
        let mut out = Self::zero(&self.chart, self.degree, new_basis);
        for (idx, coeff) in &self.comps {
            // expand the basis monomial, skipping zero entries
            let mut expanded: Vec<(Vec<u8>, RingElem)> =
                vec![(Vec::new(), RingElem::one(&self.chart))];
            for &a in idx {
                let mut next = Vec::new();
                for (partial, pc) in &expanded {
                    for (b, entry) in rows[a as usize].iter().enumerate() {
                        if entry.is_zero() || partial.contains(&(b as u8)) {
                            continue;
                        }
                        let mut t = partial.clone();
                        t.push(b as u8);
                        next.push((t, pc * entry));
                    }
                }
                expanded = next;
            }
            for (t, pc) in expanded {
                out.insert(t, &pc * coeff);
            }
        }
        out
    }

    fn change_basis_rat(&self, rows: &RatMat, new_basis: FormBasis) -> Self {
        let n = self.chart.dim();
        let rows: Vec<Vec<RingElem>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| RingElem::constant(&self.chart, rows[(a, b)].clone()))
                    .collect()
            })
            .collect();
        self.change_basis(&rows, new_basis)
    }
}

impl PartialEq for FormField {
    fn eq(&self, other: &Self) -> bool {
        if self.degree != other.degree || self.basis != other.basis {
            return false;
        }
        match self.sub(other) {
            Ok(d) => d.is_zero(),
            Err(_) => false,
        }
    }
}

/// Vector field in coordinate components.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    chart: Arc<Chart>,
    comps: Vec<RingElem>,
}

impl VectorField {
    pub fn new(chart: &Arc<Chart>, comps: Vec<RingElem>) -> Self {
        assert_eq!(comps.len(), chart.dim());
        VectorField {
            chart: chart.clone(),
            comps,
        }
    }

    pub fn zero(chart: &Arc<Chart>) -> Self {
        Self::new(chart, vec![RingElem::zero(chart); chart.dim()])
    }

    /// The coordinate vector ∂_i.
    pub fn coordinate(chart: &Arc<Chart>, i: usize) -> Self {
        let mut v = Self::zero(chart);
        v.comps[i] = RingElem::one(chart);
        v
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn comps(&self) -> &[RingElem] {
        &self.comps
    }

    pub fn comp(&self, i: usize) -> &RingElem {
        &self.comps[i]
    }
}

/// Graded-commutative exact wedge product.
pub fn wedge(a: &FormField, b: &FormField) -> Result<FormField, GeomError> {
    if a.basis != b.basis {
        return Err(GeomError::BasisMismatch);
    }
    if !a.chart.same_as(&b.chart) {
        return Err(GeomError::ChartMismatch);
    }
    let degree = a.degree + b.degree;
    let mut out = FormField::zero(&a.chart, degree, a.basis);
    if degree > a.chart.dim() {
        return Ok(out);
    }
    for (ia, ca) in &a.comps {
        for (ib, cb) in &b.comps {
            if ia.iter().any(|x| ib.contains(x)) {
                continue;
            }
            let mut idx = ia.clone();
            idx.extend_from_slice(ib);
            out.insert(idx, ca * cb);
        }
    }
    Ok(out)
}

/// Contraction of a vector into the first slot of a coordinate-basis form.
pub fn interior(x: &VectorField, a: &FormField) -> Result<FormField, GeomError> {
    if a.degree == 0 {
        return Err(GeomError::DegreeZero);
    }
    if a.basis != FormBasis::Coordinate {
        return Err(GeomError::BasisMismatch);
    }
    Ok(interior_components(x.comps(), a))
}

/// Contraction with explicit components (used for frame vectors too;
/// the components must refer to the same basis the form is stored in).
pub fn interior_components(xcomps: &[RingElem], a: &FormField) -> FormField {
    let mut out = FormField::zero(&a.chart, a.degree.saturating_sub(1), a.basis);
    for (idx, c) in &a.comps {
        for (m, &im) in idx.iter().enumerate() {
            let xc = &xcomps[im as usize];
            if xc.is_zero() {
                continue;
            }
            let mut rest: Vec<u8> = idx.clone();
            rest.remove(m);
            let term = xc * c;
            let term = if m % 2 == 1 { -&term } else { term };
            out.insert(rest, term);
        }
    }
    out
}

/// Exact exterior derivative in the coordinate basis.
pub fn exterior_derivative(a: &FormField) -> Result<FormField, GeomError> {
    if a.basis != FormBasis::Coordinate {
        return Err(GeomError::FrameBasis);
    }
    let n = a.chart.dim();
    let mut out = FormField::zero(&a.chart, a.degree + 1, FormBasis::Coordinate);
    if a.degree + 1 > n {
        return Ok(out);
    }
    for (idx, c) in &a.comps {
        for i in 0..n {
            if idx.contains(&(i as u8)) {
                continue;
            }
            let dc = c.derivative(i);
            if dc.is_zero() {
                continue;
            }
            let mut t = vec![i as u8];
            t.extend_from_slice(idx);
            out.insert(t, dc);
        }
    }
    Ok(out)
}

/// Metric described by a coframe with constant frame metric.
///
/// `coframe[a][i]` is the dx^i coefficient of ê^a; the coframe must be
/// invertible over the chart ring (determinant a unit), which holds for
/// the triangular and diagonal coframes of the catalog.
#[derive(Clone, Debug)]
pub struct MetricField {
    chart: Arc<Chart>,
    coframe: Vec<Vec<RingElem>>,
    frame_metric: RatMat,
    inv_coframe: Vec<Vec<RingElem>>,
    g: Rank2,
    ginv: Rank2,
}

/// Invert a square RingElem matrix by Gauss elimination with unit pivots.
pub fn ring_mat_inverse(m: &[Vec<RingElem>], chart: &Arc<Chart>) -> Result<Vec<Vec<RingElem>>, GeomError> {
    let n = m.len();
    let mut a: Vec<Vec<RingElem>> = m.to_vec();
    let mut inv: Vec<Vec<RingElem>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        RingElem::one(chart)
                    } else {
                        RingElem::zero(chart)
                    }
                })
                .collect()
        })
        .collect();
    let mut done_rows = vec![false; n];
    for col in 0..n {
        let Some(p) = (0..n).find(|&r| !done_rows[r] && a[r][col].as_unit().is_ok()) else {
            return Err(GeomError::SingularCoframe);
        };
        let pinv = a[p][col].inv_unit().expect("checked unit");
        for j in 0..n {
            a[p][j] = &a[p][j] * &pinv;
            inv[p][j] = &inv[p][j] * &pinv;
        }
        for r in 0..n {
            if r == p || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for j in 0..n {
                let t = &a[p][j] * &f;
                a[r][j] = &a[r][j] - &t;
                let t = &inv[p][j] * &f;
                inv[r][j] = &inv[r][j] - &t;
            }
        }
        done_rows[p] = true;
        // record pivot position: move rows at the end
        if p != col {
            a.swap(p, col);
            inv.swap(p, col);
            done_rows.swap(p, col);
        }
    }
    Ok(inv)
}

impl MetricField {
    pub fn new(
        chart: &Arc<Chart>,
        coframe: Vec<Vec<RingElem>>,
        frame_metric: RatMat,
    ) -> Result<Self, GeomError> {
        let n = chart.dim();
        assert_eq!(coframe.len(), n);
        assert!(coframe.iter().all(|r| r.len() == n));
        assert_eq!(frame_metric.nrows(), n);
        assert_eq!(frame_metric, frame_metric.transpose(), "frame metric not symmetric");
        let inv_coframe = ring_mat_inverse(&coframe, chart)?;
        let eta_inv = frame_metric.inverse().ok_or(GeomError::SingularCoframe)?;
        let zero = RingElem::zero(chart);
        let mut g = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = zero.clone();
                for a in 0..n {
                    if coframe[a][i].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        let e = &frame_metric[(a, b)];
                        if e.is_zero() || coframe[b][j].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&coframe[a][i] * &coframe[b][j]).scale(e);
                    }
                }
                g[i][j] = acc.clone();
                g[j][i] = acc;
            }
        }
        // inv_coframe[i][a]: dx^i = Σ_a inv_coframe[i][a] ê^a
        let mut ginv = vec![vec![zero.clone(); n]; n];
        for i in 0..n {
            for j in i..n {
                let mut acc = zero.clone();
                for a in 0..n {
                    if inv_coframe[i][a].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        let e = &eta_inv[(a, b)];
                        if e.is_zero() || inv_coframe[j][b].is_zero() {
                            continue;
                        }
                        acc = &acc + &(&inv_coframe[i][a] * &inv_coframe[j][b]).scale(e);
                    }
                }
                ginv[i][j] = acc.clone();
                ginv[j][i] = acc;
            }
        }
        Ok(MetricField {
            chart: chart.clone(),
            coframe,
            frame_metric,
            inv_coframe,
            g,
            ginv,
        })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn dim(&self) -> usize {
        self.chart.dim()
    }

    pub fn coframe(&self) -> &[Vec<RingElem>] {
        &self.coframe
    }

    pub fn inv_coframe(&self) -> &[Vec<RingElem>] {
        &self.inv_coframe
    }

    pub fn frame_metric(&self) -> &RatMat {
        &self.frame_metric
    }

    pub fn g(&self) -> &Rank2 {
        &self.g
    }

    pub fn ginv(&self) -> &Rank2 {
        &self.ginv
    }

    /// Convert a form to the frame basis.
    pub fn to_frame(&self, a: &FormField) -> FormField {
        match a.basis {
            FormBasis::Frame => a.clone(),
            FormBasis::Coordinate => a.change_basis(&self.inv_coframe, FormBasis::Frame),
        }
    }

    /// Convert a form to the coordinate basis.
    pub fn to_coordinate(&self, a: &FormField) -> FormField {
        match a.basis {
            FormBasis::Coordinate => a.clone(),
            FormBasis::Frame => a.change_basis(&self.coframe, FormBasis::Coordinate),
        }
    }

    /// Frame components of a coordinate vector field: X = X^a e_a with
    /// X^a = ê^a_i X^i.
    pub fn vector_to_frame(&self, x: &VectorField) -> Vec<RingElem> {
        let n = self.dim();
        (0..n)
            .map(|a| {
                let mut acc = RingElem::zero(&self.chart);
                for i in 0..n {
                    if !self.coframe[a][i].is_zero() && !x.comps[i].is_zero() {
                        acc = &acc + &(&self.coframe[a][i] * &x.comps[i]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Coordinate components from frame components: X^i = e_a^i X^a.
    pub fn vector_from_frame(&self, xa: &[RingElem]) -> VectorField {
        let n = self.dim();
        let comps = (0..n)
            .map(|i| {
                let mut acc = RingElem::zero(&self.chart);
                for a in 0..n {
                    if !self.inv_coframe[i][a].is_zero() && !xa[a].is_zero() {
                        acc = &acc + &(&self.inv_coframe[i][a] * &xa[a]);
                    }
                }
                acc
            })
            .collect();
        VectorField::new(&self.chart, comps)
    }

    /// The one-form X♭ = g(X,·) in the coordinate basis.
    pub fn lower(&self, x: &VectorField) -> FormField {
        let n = self.dim();
        let mut out = FormField::zero(&self.chart, 1, FormBasis::Coordinate);
        for j in 0..n {
            let mut acc = RingElem::zero(&self.chart);
            for i in 0..n {
                if !x.comps[i].is_zero() && !self.g[i][j].is_zero() {
                    acc = &acc + &(&x.comps[i] * &self.g[i][j]);
                }
            }
            out.insert(vec![j as u8], acc);
        }
        out
    }
}

/// Hodge star; computed in the frame basis where the frame metric is
/// constant and the volume form is ê⁰∧…∧ê^{n−1}. The result is returned
/// in the basis of the input.
pub fn hodge_star(a: &FormField, g: &MetricField) -> FormField {
    let n = g.dim();
    let orig = a.basis;
    let af = g.to_frame(a);
    let eta_inv = g.frame_metric().inverse().expect("frame metric invertible");
    let raised = af.change_basis_rat(&eta_inv, FormBasis::Frame);
    let p = a.degree;
    let mut out = FormField::zero(&g.chart, n - p, FormBasis::Frame);
    for (idx, c) in raised.components() {
        let complement: Vec<u8> = (0..n as u8).filter(|x| !idx.contains(x)).collect();
        let sign = merge_sign(idx, &complement);
        let c = if sign < 0 { -c } else { c.clone() };
        out.insert(complement, c);
    }
    match orig {
        FormBasis::Frame => out,
        FormBasis::Coordinate => g.to_coordinate(&out),
    }
}

/// Scalar product of equal-degree forms: (1/p!) a_{i…} b^{i…}.
pub fn form_inner(a: &FormField, b: &FormField, g: &MetricField) -> Result<RingElem, GeomError> {
    if a.degree != b.degree {
        return Err(GeomError::DegreeMismatch);
    }
    let af = g.to_frame(a);
    let bf = g.to_frame(b);
    let eta_inv = g.frame_metric().inverse().expect("frame metric invertible");
    let raised = bf.change_basis_rat(&eta_inv, FormBasis::Frame);
    let mut acc = RingElem::zero(&g.chart);
    for (idx, c) in af.components() {
        let d = raised.component(idx);
        if !d.is_zero() {
            acc = &acc + &(c * &d);
        }
    }
    Ok(acc)
}

/// Christoffel symbols Γ^k_{ij} of the Levi-Civita connection.
pub fn christoffel(g: &MetricField) -> Rank3 {
    let n = g.dim();
    let zero = RingElem::zero(&g.chart);
    // dg[l][i][j] = ∂_l g_ij
    let mut dg = vec![vec![vec![zero.clone(); n]; n]; n];
    for l in 0..n {
        for i in 0..n {
            for j in i..n {
                let d = g.g[i][j].derivative(l);
                dg[l][i][j] = d.clone();
                dg[l][j][i] = d;
            }
        }
    }
    let half = Rat::new(1.into(), 2.into());
    let mut gamma = vec![vec![vec![zero.clone(); n]; n]; n];
    for k in 0..n {
        for i in 0..n {
            for j in i..n {
                let mut acc = zero.clone();
                for l in 0..n {
                    if g.ginv[k][l].is_zero() {
                        continue;
                    }
                    let s = &(&dg[i][j][l] + &dg[j][i][l]) - &dg[l][i][j];
                    if s.is_zero() {
                        continue;
                    }
                    acc = &acc + &(&g.ginv[k][l] * &s);
                }
                let acc = acc.scale(&half);
                gamma[k][i][j] = acc.clone();
                gamma[k][j][i] = acc;
            }
        }
    }
    gamma
}

/// Riemann tensor R^k_{lij}, Ricci tensor and scalar curvature.
///
/// Convention: R^k_{lij} = ∂_i Γ^k_{jl} − ∂_j Γ^k_{il} + Γ^k_{im}Γ^m_{jl}
/// − Γ^k_{jm}Γ^m_{il}, Ric_{lj} = R^k_{lkj}; the round sphere then has
/// positive scalar curvature.
pub fn riemann_ricci_scalar(g: &MetricField) -> (Rank4, Rank2, RingElem) {
    let n = g.dim();
    let gamma = christoffel(g);
    let zero = RingElem::zero(&g.chart);
    let mut riemann = vec![vec![vec![vec![zero.clone(); n]; n]; n]; n];
    for k in 0..n {
        for l in 0..n {
            for i in 0..n {
                for j in (i + 1)..n {
                    let mut acc = &gamma[k][j][l].derivative(i) - &gamma[k][i][l].derivative(j);
                    for m in 0..n {
                        if !gamma[k][i][m].is_zero() && !gamma[m][j][l].is_zero() {
                            acc = &acc + &(&gamma[k][i][m] * &gamma[m][j][l]);
                        }
                        if !gamma[k][j][m].is_zero() && !gamma[m][i][l].is_zero() {
                            acc = &acc - &(&gamma[k][j][m] * &gamma[m][i][l]);
                        }
                    }
                    riemann[k][l][i][j] = acc.clone();
                    riemann[k][l][j][i] = -&acc;
                }
            }
        }
    }
    let mut ricci = vec![vec![zero.clone(); n]; n];
    for l in 0..n {
        for j in 0..n {
            let mut acc = zero.clone();
            for k in 0..n {
                if !riemann[k][l][k][j].is_zero() {
                    acc = &acc + &riemann[k][l][k][j];
                }
            }
            ricci[l][j] = acc;
        }
    }
    let mut scalar = zero;
    for l in 0..n {
        for j in 0..n {
            if !g.ginv[l][j].is_zero() && !ricci[l][j].is_zero() {
                scalar = &scalar + &(&g.ginv[l][j] * &ricci[l][j]);
            }
        }
    }
    (riemann, ricci, scalar)
}

/// Spin connection coefficients from the first structure equation
/// dê^a + ω̂^a_b ∧ ê^b = 0 with ω̂_{ab} = −ω̂_{ba}.
///
/// Returns, per coordinate direction i, the antisymmetric matrix
/// ω̂_i[a][b] = ω̂_{ab,i} (frame indices both lowered with η̂).
pub fn spin_connection(g: &MetricField) -> Vec<Rank2> {
    let n = g.dim();
    let chart = &g.chart;
    let zero = RingElem::zero(chart);
    // anholonomy: dê^a = ½ K^a_{bc} ê^b ∧ ê^c
    let mut k_up = vec![vec![vec![zero.clone(); n]; n]; n];
    for a in 0..n {
        let one_form = FormField::from_components(
            chart,
            1,
            FormBasis::Coordinate,
            (0..n).map(|i| (vec![i as u8], g.coframe[a][i].clone())),
        );
        let d = exterior_derivative(&one_form).expect("coordinate basis");
        let d_frame = g.to_frame(&d);
        for (idx, c) in d_frame.components() {
            let (b, cc) = (idx[0] as usize, idx[1] as usize);
            k_up[a][b][cc] = c.clone();
            k_up[a][cc][b] = -c;
        }
    }
    // lower the first index with η̂
    let eta = g.frame_metric();
    let mut k = vec![vec![vec![zero.clone(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let mut acc = zero.clone();
                for d in 0..n {
                    if !eta[(a, d)].is_zero() && !k_up[d][b][c].is_zero() {
                        acc = &acc + &k_up[d][b][c].scale(&eta[(a, d)]);
                    }
                }
                k[a][b][c] = acc;
            }
        }
    }
    // ω̂_{ab,c} = ½ (K_{abc} + K_{bca} − K_{cab})
    let half = Rat::new(1.into(), 2.into());
    let mut w_frame = vec![vec![vec![zero.clone(); n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let s = &(&k[a][b][c] + &k[b][c][a]) - &k[c][a][b];
                w_frame[a][b][c] = s.scale(&half);
            }
        }
    }
    // coordinate components: ω̂_{ab,i} = ω̂_{ab,c} ê^c_i
    (0..n)
        .map(|i| {
            (0..n)
                .map(|a| {
                    (0..n)
                        .map(|b| {
                            let mut acc = zero.clone();
                            for c in 0..n {
                                if !w_frame[a][b][c].is_zero() && !g.coframe[c][i].is_zero() {
                                    acc = &acc + &(&w_frame[a][b][c] * &g.coframe[c][i]);
                                }
                            }
                            acc
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// Curvature two-form of the spin connection in coordinate-pair
/// components: R̂_{ab,ij} from dω̂ + ω̂ ∧ ω̂.
pub fn spin_curvature(g: &MetricField, omega: &[Rank2]) -> Rank4 {
    let n = g.dim();
    let zero = RingElem::zero(&g.chart);
    let eta_inv = g.frame_metric().inverse().expect("invertible");
    let mut out = vec![vec![vec![vec![zero.clone(); n]; n]; n]; n];
    for a in 0..n {
        for b in 0..n {
            for i in 0..n {
                for j in (i + 1)..n {
                    // dω̂ part
                    let mut acc = &omega[j][a][b].derivative(i) - &omega[i][a][b].derivative(j);
                    // (ω̂ ∧ ω̂)_{ab,ij} = ω̂_{ac,i} η̂^{cd} ω̂_{db,j} − (i↔j)
                    for c in 0..n {
                        for d in 0..n {
                            let e = &eta_inv[(c, d)];
                            if e.is_zero() {
                                continue;
                            }
                            if !omega[i][a][c].is_zero() && !omega[j][d][b].is_zero() {
                                acc = &acc + &(&omega[i][a][c] * &omega[j][d][b]).scale(e);
                            }
                            if !omega[j][a][c].is_zero() && !omega[i][d][b].is_zero() {
                                acc = &acc - &(&omega[j][a][c] * &omega[i][d][b]).scale(e);
                            }
                        }
                    }
                    out[a][b][i][j] = acc.clone();
                    out[a][b][j][i] = -&acc;
                }
            }
        }
    }
    out
}

/// Residual of the Killing equation: (L_ξ g)_{ij}; identically zero iff
/// ξ is a Killing vector.
pub fn killing_check(xi: &VectorField, g: &MetricField) -> Rank2 {
    let n = g.dim();
    let zero = RingElem::zero(&g.chart);
    let mut res = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for j in i..n {
            let mut acc = zero.clone();
            for k in 0..n {
                if !xi.comps[k].is_zero() {
                    let d = g.g[i][j].derivative(k);
                    if !d.is_zero() {
                        acc = &acc + &(&xi.comps[k] * &d);
                    }
                }
                if !g.g[k][j].is_zero() {
                    let d = xi.comps[k].derivative(i);
                    if !d.is_zero() {
                        acc = &acc + &(&g.g[k][j] * &d);
                    }
                }
                if !g.g[i][k].is_zero() {
                    let d = xi.comps[k].derivative(j);
                    if !d.is_zero() {
                        acc = &acc + &(&g.g[i][k] * &d);
                    }
                }
            }
            res[i][j] = acc.clone();
            res[j][i] = acc;
        }
    }
    res
}

pub fn rank2_is_zero(t: &Rank2) -> bool {
    t.iter().all(|r| r.iter().all(|e| e.is_zero()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;
    use crate::scalar::{rat, rat_int};

    fn flat_chart(n: usize) -> Arc<Chart> {
        Chart::new((0..n).map(|i| format!("x{i}")).collect()).shared()
    }

    fn flat_metric(n: usize) -> (Arc<Chart>, MetricField) {
        let ch = flat_chart(n);
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
        let mut eta = RatMat::identity(n);
        eta[(0, 0)] = -Rat::from_integer(1.into());
        let g = MetricField::new(&ch, coframe, eta).unwrap();
        (ch, g)
    }

    /// Unit round sphere S^d in stereographic coordinates:
    /// g = 4/(1+r²)² Σ du_i².
    fn sphere_metric(d: usize) -> (Arc<Chart>, MetricField) {
        let vars: Vec<String> = (0..d).map(|i| format!("u{i}")).collect();
        let mut r2 = Poly::one(d);
        for i in 0..d {
            r2 = &r2 + &(&Poly::var(d, i) * &Poly::var(d, i));
        }
        let ch = Chart::new(vars).with_denominator("conf", r2.clone()).shared();
        let conf = RingElem::int(&ch, 2)
            .checked_div(&RingElem::from_poly(&ch, r2))
            .unwrap();
        let coframe: Vec<Vec<RingElem>> = (0..d)
            .map(|a| {
                (0..d)
                    .map(|i| {
                        if a == i {
                            conf.clone()
                        } else {
                            RingElem::zero(&ch)
                        }
                    })
                    .collect()
            })
            .collect();
        let eta = RatMat::identity(d);
        let g = MetricField::new(&ch, coframe, eta).unwrap();
        (ch, g)
    }

    #[test]
    fn wedge_antisymmetry_and_nilpotency() {
        let (ch, _) = flat_metric(4);
        let dx = |i: usize| {
            FormField::from_components(
                &ch,
                1,
                FormBasis::Coordinate,
                [(vec![i as u8], RingElem::one(&ch))],
            )
        };
        let d01 = wedge(&dx(0), &dx(1)).unwrap();
        let d10 = wedge(&dx(1), &dx(0)).unwrap();
        assert_eq!(d01, d10.scale_rat(&rat_int(-1)));
        assert!(wedge(&dx(2), &dx(2)).unwrap().is_zero());
    }

    #[test]
    fn exterior_derivative_basics() {
        let (ch, _) = flat_metric(3);
        // d(x1 dx2) = dx1 ∧ dx2
        let a = FormField::from_components(
            &ch,
            1,
            FormBasis::Coordinate,
            [(vec![2u8], RingElem::var(&ch, 1))],
        );
        let da = exterior_derivative(&a).unwrap();
        let mut expect = FormField::zero(&ch, 2, FormBasis::Coordinate);
        expect.insert(vec![1, 2], RingElem::one(&ch));
        assert_eq!(da, expect);
        // d² = 0
        assert!(exterior_derivative(&da).unwrap().is_zero());
    }

    #[test]
    fn interior_basics() {
        let (ch, _) = flat_metric(5);
        // F = 3 dx0∧dx1∧dx2∧dx3 (stand-in for the pp-wave flux shape)
        let mut f = FormField::zero(&ch, 4, FormBasis::Coordinate);
        f.insert(vec![0, 1, 2, 3], RingElem::int(&ch, 3));
        let i0 = interior(&VectorField::coordinate(&ch, 0), &f).unwrap();
        let mut expect = FormField::zero(&ch, 3, FormBasis::Coordinate);
        expect.insert(vec![1, 2, 3], RingElem::int(&ch, 3));
        assert_eq!(i0, expect);
        assert!(interior(&VectorField::coordinate(&ch, 4), &f).unwrap().is_zero());
        // ι_X ι_X = 0
        let x = VectorField::new(
            &ch,
            vec![
                RingElem::var(&ch, 1),
                RingElem::int(&ch, 2),
                RingElem::var(&ch, 0),
                RingElem::zero(&ch),
                RingElem::one(&ch),
            ],
        );
        let once = interior(&x, &f).unwrap();
        assert!(interior(&x, &once).unwrap().is_zero());
    }

    #[test]
    fn hodge_star_flat() {
        let (ch, g) = flat_metric(11);
        let one = FormField::scalar(RingElem::one(&ch), FormBasis::Frame);
        let vol = hodge_star(&one, &g);
        let mut expect = FormField::zero(&ch, 11, FormBasis::Frame);
        expect.insert((0..11u8).collect(), RingElem::one(&ch));
        assert_eq!(vol, expect);
        // ⋆vol = −1 in lorentzian signature
        let back = hodge_star(&vol, &g);
        let minus_one = FormField::scalar(RingElem::int(&ch, -1), FormBasis::Frame);
        assert_eq!(back, minus_one);
        // ⋆⋆ = s(−1)^{p(n−p)} on a 2-form
        let mut a = FormField::zero(&ch, 2, FormBasis::Frame);
        a.insert(vec![0, 5], RingElem::var(&ch, 3));
        a.insert(vec![2, 7], RingElem::int(&ch, 4));
        let ss = hodge_star(&hodge_star(&a, &g), &g);
        // p(n−p) = 18 even, s = −1
        assert_eq!(ss, a.scale_rat(&rat_int(-1)));
    }

    #[test]
    fn form_inner_signature() {
        let (ch, g) = flat_metric(4);
        let dx = |i: usize| {
            FormField::from_components(
                &ch,
                1,
                FormBasis::Coordinate,
                [(vec![i as u8], RingElem::one(&ch))],
            )
        };
        assert_eq!(form_inner(&dx(1), &dx(1), &g).unwrap(), RingElem::one(&ch));
        assert_eq!(
            form_inner(&dx(0), &dx(0), &g).unwrap(),
            RingElem::int(&ch, -1)
        );
    }

    #[test]
    fn flat_geometry_is_trivial() {
        let (_, g) = flat_metric(4);
        let gamma = christoffel(&g);
        assert!(gamma
            .iter()
            .all(|m| m.iter().all(|r| r.iter().all(|e| e.is_zero()))));
        let (_, ricci, scalar) = riemann_ricci_scalar(&g);
        assert!(rank2_is_zero(&ricci));
        assert!(scalar.is_zero());
        let omega = spin_connection(&g);
        assert!(omega.iter().all(|m| rank2_is_zero(m)));
    }

    #[test]
    fn unit_spheres_have_expected_scalar_curvature() {
        // S²: n(n−1) = 2; S⁴: 12
        for (d, expect) in [(2usize, 2i64), (4, 12)] {
            let (ch, g) = sphere_metric(d);
            let (_, _, scalar) = riemann_ricci_scalar(&g);
            assert_eq!(scalar, RingElem::int(&ch, expect), "S^{d}");
        }
    }

    #[test]
    fn sphere_spin_curvature_matches_riemann() {
        let (_, g) = sphere_metric(2);
        let omega = spin_connection(&g);
        let rhat = spin_curvature(&g, &omega);
        let (riemann, _, _) = riemann_ricci_scalar(&g);
        let n = 2;
        // R̂_{ab,ij} = e_a^μ e_b^ν g_{μk} R^k_{νij}; here frame indices are
        // converted with the inverse coframe.
        for a in 0..n {
            for b in 0..n {
                for i in 0..n {
                    for j in 0..n {
                        let mut expect = RingElem::zero(g.chart());
                        for mu in 0..n {
                            for nu in 0..n {
                                for k in 0..n {
                                    let e1 = &g.inv_coframe()[mu][a];
                                    let e2 = &g.inv_coframe()[nu][b];
                                    if e1.is_zero() || e2.is_zero() {
                                        continue;
                                    }
                                    let gm = &g.g()[mu][k];
                                    if gm.is_zero() || riemann[k][nu][i][j].is_zero() {
                                        continue;
                                    }
                                    expect =
                                        &expect + &(&(&(e1 * e2) * gm) * &riemann[k][nu][i][j]);
                                }
                            }
                        }
                        assert_eq!(rhat[a][b][i][j], expect, "({a},{b},{i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn killing_residuals_on_flat_space() {
        let (ch, g) = flat_metric(3);
        // translation
        let t = VectorField::coordinate(&ch, 0);
        assert!(rank2_is_zero(&killing_check(&t, &g)));
        // rotation x1 ∂2 − x2 ∂1
        let rot = VectorField::new(
            &ch,
            vec![
                RingElem::zero(&ch),
                -&RingElem::var(&ch, 2),
                RingElem::var(&ch, 1),
            ],
        );
        assert!(rank2_is_zero(&killing_check(&rot, &g)));
        // dilation x1 ∂1 is not Killing: residual 2 in the (1,1) slot
        let dil = VectorField::new(
            &ch,
            vec![RingElem::zero(&ch), RingElem::var(&ch, 1), RingElem::zero(&ch)],
        );
        let res = killing_check(&dil, &g);
        assert_eq!(res[1][1], RingElem::int(&ch, 2));
        assert!(res[0][0].is_zero() && res[2][2].is_zero() && res[0][1].is_zero());
    }

    #[test]
    fn leibniz_rule_for_d() {
        let (ch, _) = flat_metric(4);
        let mut a = FormField::zero(&ch, 1, FormBasis::Coordinate);
        a.insert(vec![0], RingElem::var(&ch, 1));
        a.insert(vec![2], &RingElem::var(&ch, 0) * &RingElem::var(&ch, 3));
        let mut b = FormField::zero(&ch, 2, FormBasis::Coordinate);
        b.insert(vec![1, 3], RingElem::var(&ch, 0));
        b.insert(vec![0, 2], RingElem::var(&ch, 2));
        let lhs = exterior_derivative(&wedge(&a, &b).unwrap()).unwrap();
        let rhs = wedge(&exterior_derivative(&a).unwrap(), &b)
            .unwrap()
            .add(&wedge(&a, &exterior_derivative(&b).unwrap()).unwrap().scale_rat(&rat_int(-1)))
            .unwrap();
        assert_eq!(lhs, rhs);
        let _ = rat(1, 2);
    }
}
