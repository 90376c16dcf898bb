//! Construction of the reflection-group representations and isometry
//! classification.
//!
//! For `theta` in the moduli interval `[5pi/6, pi]` the four generators `I_k`
//! are order-two complex reflections in `U(3,1)` whose mirrors have the
//! prescribed Gram matrix; they satisfy `I_k^2 = (I1 I3)^2 = (I2 I4)^2 = id`
//! exactly as matrices, and `J I_k J^{-1} = I_{k+1}` for the order-four
//! symmetry `J = diag(-1, i, -i, 1)`. The ten words of the partial Dirichlet
//! domain and the orbit lifts `p_ij = I_i I_j (p0)` are derived from these.
//!
//! Both degenerations are available: deleting the second coordinate at
//! `theta = 5pi/6` gives the `U(2,1)` representation, and a real change of
//! basis at `theta = pi` gives the Klein-model matrices in `O(3,1)`.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::eigen;
use crate::error::{ChypError, Result};
use crate::herm::{c, cr, herm_inner, HVec, HermForm, C64, ONE, ZERO};

pub fn theta_lo() -> f64 {
    5.0 * PI / 6.0
}

pub fn theta_hi() -> f64 {
    PI
}

const THETA_EPS: f64 = 1e-12;

/// The re-normalized Gram matrix of the four mirror polar vectors: diagonal
/// 1, entries `e^(i theta)` on the cyclic super-diagonal, `e^(-i theta)` on
/// the sub-diagonal and the opposite corners, zeros at (1,3) and (2,4).
pub fn gram(theta: f64) -> Result<DMatrix<C64>> {
    if !(3.0 * PI / 4.0 - THETA_EPS..=PI + THETA_EPS).contains(&theta) {
        return Err(ChypError::ThetaOutOfRange { theta, lo: 3.0 * PI / 4.0, hi: PI });
    }
    let e = C64::from_polar(1.0, theta);
    let eb = e.conj();
    let g = DMatrix::from_row_slice(
        4,
        4,
        &[
            ONE, e, ZERO, eb, //
            eb, ONE, e, ZERO, //
            ZERO, eb, ONE, e, //
            e, ZERO, eb, ONE,
        ],
    );
    Ok(g)
}

/// `J = diag(-1, i, -i, 1)`, the order-four symmetry permuting the mirrors.
pub fn symmetry_j() -> DMatrix<C64> {
    DMatrix::from_diagonal(&DVector::from_column_slice(&[
        -ONE,
        c(0.0, 1.0),
        c(0.0, -1.0),
        ONE,
    ]))
}

fn checked_sqrt(radicand: f64, theta: f64) -> Result<f64> {
    if radicand < -1e-12 {
        return Err(ChypError::ThetaOutOfRange { theta, lo: theta_lo(), hi: theta_hi() });
    }
    // The radicands have simple analytic zeros at the interval endpoints;
    // rounding noise of order eps would otherwise surface as sqrt(eps).
    if radicand < 1e-13 {
        return Ok(0.0);
    }
    Ok(radicand.sqrt())
}

/// Polar vectors of the four mirrors:
/// `n1 = [sqrt(1-2cos), sqrt(1-2sin), sqrt(1+2sin), sqrt(-1-2cos)] / 2`
/// with nonnegative real roots, and `n_{k+1} = J n_k`. All radicands are
/// nonnegative precisely on the moduli interval.
pub fn polar_vectors(theta: f64) -> Result<[HVec; 4]> {
    if !(theta_lo() - THETA_EPS..=theta_hi() + THETA_EPS).contains(&theta) {
        return Err(ChypError::ThetaOutOfRange { theta, lo: theta_lo(), hi: theta_hi() });
    }
    let (s, co) = theta.sin_cos();
    let form = HermForm::standard(4);
    let n1 = HVec::from_real(
        &[
            checked_sqrt(1.0 - 2.0 * co, theta)? / 2.0,
            checked_sqrt(1.0 - 2.0 * s, theta)? / 2.0,
            checked_sqrt(1.0 + 2.0 * s, theta)? / 2.0,
            checked_sqrt(-1.0 - 2.0 * co, theta)? / 2.0,
        ],
        form,
    )?;
    let j = symmetry_j();
    let n2 = n1.apply(&j);
    let n3 = n2.apply(&j);
    let n4 = n3.apply(&j);
    Ok([n1, n2, n3, n4])
}

/// Matrix of the complex reflection `z -> -z + (1 - e^(i angle)) <z,n>/<n,n> n`
/// fixing the hyperplane polar to `n`. For `angle = pi` this is an involution
/// as a matrix.
pub fn reflection(n: &HVec, angle: f64) -> Result<DMatrix<C64>> {
    let norm = n.norm_h();
    if norm <= 1e-12 {
        return Err(ChypError::NotPositiveVector { norm });
    }
    let dim = n.dim();
    let h = n.form().matrix();
    let mu = (ONE - C64::from_polar(1.0, angle)) / cr(norm);
    let outer = n.coords() * (n.coords().adjoint() * h) * mu;
    Ok(-DMatrix::identity(dim, dim) + outer)
}

/// The ten words defining the partial Dirichlet domain:
/// `A_k = I_k I_{k+1}` and inverses, plus the order-two `A1 A2 = I1 I3` and
/// `A2 A3 = I2 I4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    A(u8),
    AInv(u8),
    A1A2,
    A2A3,
}

impl Word {
    pub fn all() -> [Word; 10] {
        [
            Word::A(1),
            Word::A(2),
            Word::A(3),
            Word::A(4),
            Word::AInv(1),
            Word::AInv(2),
            Word::AInv(3),
            Word::AInv(4),
            Word::A1A2,
            Word::A2A3,
        ]
    }

    /// Indices `(i,j)` of the orbit point `p_ij = word(p0)`, which also label
    /// the bisector `B_ij`.
    pub fn bisector(&self) -> (u8, u8) {
        match *self {
            Word::A(i) => (i, i % 4 + 1),
            Word::AInv(i) => (i % 4 + 1, i),
            Word::A1A2 => (1, 3),
            Word::A2A3 => (2, 4),
        }
    }

    /// The word conjugated by `J`, i.e. all generator indices shifted by one.
    pub fn rotate(&self) -> Word {
        match *self {
            Word::A(i) => Word::A(i % 4 + 1),
            Word::AInv(i) => Word::AInv(i % 4 + 1),
            // J (I1 I3) J^{-1} = I2 I4, and one more shift returns I1 I3
            // because I3 I1 = I1 I3.
            Word::A1A2 => Word::A2A3,
            Word::A2A3 => Word::A1A2,
        }
    }

    pub fn inverse(&self) -> Word {
        match *self {
            Word::A(i) => Word::AInv(i),
            Word::AInv(i) => Word::A(i),
            w => w,
        }
    }

    pub fn parse(s: &str) -> Option<Word> {
        let t = s.trim();
        match t {
            "A1A2" | "I1I3" | "B13" => return Some(Word::A1A2),
            "A2A3" | "I2I4" | "B24" => return Some(Word::A2A3),
            _ => {}
        }
        if let Some(rest) = t.strip_prefix('A') {
            if let Some(idx) = rest.strip_suffix("^-1").or_else(|| rest.strip_suffix("inv")) {
                let i: u8 = idx.parse().ok()?;
                if (1..=4).contains(&i) {
                    return Some(Word::AInv(i));
                }
            } else if let Ok(i) = rest.parse::<u8>() {
                if (1..=4).contains(&i) {
                    return Some(Word::A(i));
                }
            }
        }
        None
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Word::A(i) => write!(f, "A{i}"),
            Word::AInv(i) => write!(f, "A{i}^-1"),
            Word::A1A2 => write!(f, "A1A2"),
            Word::A2A3 => write!(f, "A2A3"),
        }
    }
}

/// Which model the group data lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Model {
    /// `U(3,1)` on `C^{3,1}`, any `theta` in the moduli interval.
    Ambient,
    /// The `U(2,1)` reduction at `theta = 5pi/6` (second coordinate deleted).
    Reduced2D,
    /// The real Klein-model matrices in `O(3,1)` at `theta = pi`.
    Klein,
}

/// The representation at a fixed `theta`: generators, symmetry, the ten
/// words' matrices and orbit lifts.
#[derive(Clone, Debug)]
pub struct GroupData {
    theta: f64,
    model: Model,
    form: Arc<HermForm>,
    gens: [DMatrix<C64>; 4],
    j: DMatrix<C64>,
    orbit: Vec<(Word, HVec)>,
    p0: HVec,
}

impl GroupData {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn model(&self) -> Model {
        self.model
    }

    pub fn form(&self) -> &Arc<HermForm> {
        &self.form
    }

    pub fn dim(&self) -> usize {
        self.form.dim()
    }

    pub fn generator(&self, i: u8) -> &DMatrix<C64> {
        &self.gens[(i - 1) as usize]
    }

    pub fn symmetry(&self) -> &DMatrix<C64> {
        &self.j
    }

    pub fn center(&self) -> &HVec {
        &self.p0
    }

    pub fn word_matrix(&self, w: Word) -> DMatrix<C64> {
        let g = |i: u8| &self.gens[(i - 1) as usize];
        match w {
            Word::A(i) => g(i) * g(i % 4 + 1),
            Word::AInv(i) => g(i % 4 + 1) * g(i),
            Word::A1A2 => g(1) * g(3),
            Word::A2A3 => g(2) * g(4),
        }
    }

    pub fn orbit(&self) -> &[(Word, HVec)] {
        &self.orbit
    }

    pub fn lift(&self, w: Word) -> &HVec {
        &self.orbit.iter().find(|(word, _)| *word == w).expect("word in orbit").1
    }

    /// Lift `p_ij` by bisector indices; `(3,1)` and `(4,2)` alias the
    /// order-two words.
    pub fn lift_ij(&self, i: u8, j: u8) -> Result<&HVec> {
        let w = match (i, j) {
            (1, 3) | (3, 1) => Word::A1A2,
            (2, 4) | (4, 2) => Word::A2A3,
            _ if j == i % 4 + 1 => Word::A(i),
            _ if i == j % 4 + 1 => Word::AInv(j),
            _ => {
                return Err(ChypError::InvalidConfig(format!("no orbit point p{i}{j}")));
            }
        };
        Ok(self.lift(w))
    }

    fn from_generators(
        theta: f64,
        model: Model,
        form: Arc<HermForm>,
        gens: [DMatrix<C64>; 4],
        j: DMatrix<C64>,
        p0: HVec,
    ) -> Result<GroupData> {
        let mut data = GroupData { theta, model, form, gens, j, orbit: Vec::new(), p0 };
        data.orbit = Word::all()
            .iter()
            .map(|&w| (w, data.p0.apply(&data.word_matrix(w))))
            .collect();
        data.validate()?;
        Ok(data)
    }

    /// Checks all structural invariants of the representation. Any failure is
    /// a construction bug, not a tolerance issue, so this errors rather than
    /// renormalizing.
    pub fn validate(&self) -> Result<()> {
        let h = self.form.matrix();
        let n = self.dim();
        let id = DMatrix::<C64>::identity(n, n);
        let iso = |m: &DMatrix<C64>| -> f64 { (m.adjoint() * h * m - h).camax() };
        for (k, g) in self.gens.iter().enumerate() {
            if iso(g) > 1e-10 {
                return Err(ChypError::GroupInvariant(format!(
                    "I{} does not preserve the form (residual {:.2e})",
                    k + 1,
                    iso(g)
                )));
            }
            if (g * g - &id).camax() > 1e-10 {
                return Err(ChypError::GroupInvariant(format!("I{}^2 != id", k + 1)));
            }
        }
        if iso(&self.j) > 1e-10 {
            return Err(ChypError::GroupInvariant("J does not preserve the form".into()));
        }
        let j_inv = self.j.clone().try_inverse().expect("J invertible");
        for k in 0..4 {
            let conj = &self.j * &self.gens[k] * &j_inv;
            if (&conj - &self.gens[(k + 1) % 4]).camax() > 1e-10 {
                return Err(ChypError::GroupInvariant(format!(
                    "J I{} J^-1 != I{}",
                    k + 1,
                    (k + 1) % 4 + 1
                )));
            }
        }
        for w in [Word::A1A2, Word::A2A3] {
            let m = self.word_matrix(w);
            if (&m * &m - &id).camax() > 1e-9 {
                return Err(ChypError::GroupInvariant(format!("({w})^2 != id")));
            }
        }
        let a_all = self.word_matrix(Word::A(1))
            * self.word_matrix(Word::A(2))
            * self.word_matrix(Word::A(3))
            * self.word_matrix(Word::A(4));
        if (a_all - &id).camax() > 1e-9 {
            return Err(ChypError::GroupInvariant("A1 A2 A3 A4 != id".into()));
        }
        if (self.p0.norm_h() + 1.0).abs() > 1e-10 {
            return Err(ChypError::GroupInvariant("<p0,p0> != -1".into()));
        }
        for (w, p) in &self.orbit {
            if (p.norm_h() + 1.0).abs() > 1e-10 {
                return Err(ChypError::GroupInvariant(format!("<p,p> != -1 for {w}")));
            }
            // J-equivariance: J p_w = p_rotate(w) exactly, since J fixes p0.
            let rotated = p.apply(&self.j);
            let target = self.lift(w.rotate());
            if (rotated.coords() - target.coords()).norm() > 1e-9 {
                return Err(ChypError::GroupInvariant(format!("J-equivariance fails for {w}")));
            }
        }
        if self.model == Model::Ambient {
            let ns = polar_vectors(self.theta)?;
            let g = gram(self.theta)?;
            for i in 0..4 {
                for j in 0..4 {
                    let val = herm_inner(&ns[i], &ns[j])?;
                    if (val - g[(i, j)]).norm() > 1e-10 {
                        return Err(ChypError::GroupInvariant("polar Gram mismatch".into()));
                    }
                }
            }
        }
        Ok(())
    }

    /// The `U(2,1)` reduction at `theta = 5pi/6`: every generator fixes the
    /// direction `e2`, so deleting the second row and column of each matrix
    /// gives the representation on a totally geodesic copy of complex
    /// hyperbolic 2-space.
    pub fn reduce_to_pu21(&self) -> Result<GroupData> {
        if (self.theta - theta_lo()).abs() > THETA_EPS || self.model != Model::Ambient {
            return Err(ChypError::ThetaOutOfRange {
                theta: self.theta,
                lo: theta_lo(),
                hi: theta_lo(),
            });
        }
        let delete2 = |m: &DMatrix<C64>| -> DMatrix<C64> { m.clone().remove_row(1).remove_column(1) };
        let form = HermForm::standard(3);
        let gens = [
            delete2(&self.gens[0]),
            delete2(&self.gens[1]),
            delete2(&self.gens[2]),
            delete2(&self.gens[3]),
        ];
        let j = delete2(&self.j);
        let p0 = HVec::from_slice(&[ZERO, ZERO, ONE], form.clone())?;
        GroupData::from_generators(self.theta, Model::Reduced2D, form, gens, j, p0)
    }

    /// The Klein-model matrices at `theta = pi`. The group preserves the real
    /// span of the polar vectors; in that basis the quadratic form is the
    /// integer matrix `H_L` with `det = -3`, and the fixed change of basis
    /// `C` (with `C H_L C^t = H`, `det C = 1/sqrt(3)`) carries everything to
    /// the standard Klein model of real hyperbolic 3-space.
    pub fn klein_model(&self) -> Result<GroupData> {
        if (self.theta - theta_hi()).abs() > THETA_EPS || self.model != Model::Ambient {
            return Err(ChypError::ThetaOutOfRange {
                theta: self.theta,
                lo: theta_hi(),
                hi: theta_hi(),
            });
        }
        let ns = polar_vectors(self.theta)?;
        let mut nmat = DMatrix::zeros(4, 4);
        for (k, nv) in ns.iter().enumerate() {
            nmat.set_column(k, nv.coords());
        }
        let n_inv = nmat.clone().try_inverse().ok_or(ChypError::DependentVectors { det: None })?;
        let in_basis = |m: &DMatrix<C64>| -> DMatrix<C64> { &n_inv * m * &nmat };
        let h_l = nmat.adjoint() * self.form.matrix() * &nmat;
        let det_hl = h_l.determinant();
        if (det_hl - cr(-3.0)).norm() > 1e-9 {
            return Err(ChypError::GroupInvariant(format!("det(H_L) = {det_hl} != -3")));
        }
        let s3 = 3.0f64.sqrt();
        let cmat = DMatrix::from_row_slice(
            4,
            4,
            &[
                cr(1.0), ZERO, ZERO, ZERO, //
                ZERO, ZERO, cr(1.0), ZERO, //
                cr(-1.0 / s3), cr(-2.0 / s3), cr(-1.0 / s3), cr(1.0 / s3), //
                cr(1.0), cr(1.0), cr(1.0), ZERO,
            ],
        );
        let det_c = cmat.determinant();
        if (det_c - cr(1.0 / s3)).norm() > 1e-12 {
            return Err(ChypError::GroupInvariant("det(C) != 1/sqrt(3)".into()));
        }
        let form = HermForm::standard(4);
        if (&cmat * &h_l * cmat.transpose() - form.matrix()).camax() > 1e-10 {
            return Err(ChypError::GroupInvariant("C H_L C^t != H".into()));
        }
        let ct_inv = cmat.transpose().try_inverse().expect("C invertible");
        let to_klein = |m: &DMatrix<C64>| -> Result<DMatrix<C64>> {
            let k = &ct_inv * in_basis(m) * cmat.transpose();
            let imag = k.iter().map(|z| z.im.abs()).fold(0.0f64, f64::max);
            if imag > 1e-10 {
                return Err(ChypError::GroupInvariant(format!(
                    "Klein matrix has imaginary part {imag:.2e}"
                )));
            }
            Ok(k.map(|z| cr(z.re)))
        };
        let gens = [
            to_klein(&self.gens[0])?,
            to_klein(&self.gens[1])?,
            to_klein(&self.gens[2])?,
            to_klein(&self.gens[3])?,
        ];
        let j = to_klein(&self.j)?;
        let p0 = HVec::new(
            &ct_inv * DVector::from_column_slice(&[cr(0.5), cr(0.5), cr(0.5), cr(0.5)]),
            form.clone(),
        )?;
        GroupData::from_generators(self.theta, Model::Klein, form, gens, j, p0)
    }
}

/// Builds the representation at `theta` in the ambient `U(3,1)` model.
pub fn build_group(theta: f64) -> Result<GroupData> {
    let ns = polar_vectors(theta)?;
    let i1 = reflection(&ns[0], PI)?;
    let j = symmetry_j();
    let j_inv = j.clone().try_inverse().expect("J invertible");
    let i2 = &j * &i1 * &j_inv;
    let i3 = &j * &i2 * &j_inv;
    let i4 = &j * &i3 * &j_inv;
    let form = HermForm::standard(4);
    let p0 = HVec::from_slice(&[ZERO, ZERO, ZERO, ONE], form.clone())?;
    GroupData::from_generators(theta, Model::Ambient, form, [i1, i2, i3, i4], j, p0)
}

/// Isometry type plus the refinements the verification needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsomKind {
    Elliptic,
    Parabolic,
    Loxodromic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IsometryClass {
    pub kind: IsomKind,
    /// All eigenvalues distinct.
    pub regular: bool,
    /// All eigenvalues equal after unit-determinant normalization.
    pub unipotent: bool,
}

impl IsometryClass {
    pub fn is_special_elliptic(&self) -> bool {
        self.kind == IsomKind::Elliptic && !self.regular
    }
}

fn unit_det_normalize(m: &DMatrix<C64>) -> DMatrix<C64> {
    let n = m.nrows();
    let det = m.determinant();
    let root = det.powf(1.0 / n as f64);
    m / root
}

/// Classifies an `H`-isometry as elliptic, parabolic or loxodromic.
///
/// Eigenvalues of defective matrices scatter by roughly `eps^(1/k)` around a
/// k-fold eigenvalue for any backward-stable solver, far above the 1e-8
/// scale, so unipotence is detected first by the nilpotency of
/// `M - (tr M / n) id` and repeated eigenvalues are merged by clustering
/// before the regularity and diagonalizability decisions.
pub fn classify(m: &DMatrix<C64>, form: &HermForm) -> Result<IsometryClass> {
    let h = form.matrix();
    let n = m.nrows();
    let scale = m.camax().max(1.0);
    let residual = (m.adjoint() * h * m - h).camax();
    if residual > 1e-8 * scale * scale * h.camax() {
        return Err(ChypError::NotIsometry { residual });
    }
    let mt = unit_det_normalize(m);
    let id = DMatrix::<C64>::identity(n, n);
    let mean = mt.trace() / cr(n as f64);

    let unipotent = if (mean.norm() - 1.0).abs() < 1e-6 {
        let d = &mt - &id * mean;
        let mut p = d.clone();
        for _ in 1..n {
            p = &p * &d;
        }
        p.camax() <= 1e-8 * (1.0 + mt.camax()).powi(n as i32)
    } else {
        false
    };
    let scalar = (&mt - &id * mean).camax() <= 1e-10 * (1.0 + mean.norm());

    // A k-fold characteristic root scatters by ~eps^(1/k) (5e-6 for k=3),
    // far above the decision thresholds: cluster the raw roots coarsely and
    // refine each cluster on the matrix, which determines semisimple
    // eigenvalues to machine precision.
    let eigs = eigen::eigenvalues(&mt);
    let radius = eigs.iter().map(|z| z.norm()).fold(0.0f64, f64::max);
    let raw_clusters = eigen::cluster_eigenvalues(&eigs, 1e-4 * radius.max(1.0));
    let clusters: Vec<(C64, usize, usize)> = raw_clusters
        .iter()
        .map(|&(mu0, mult)| {
            let (mu, geometric) = eigen::refine_cluster(&mt, mu0, mult);
            (mu, mult, geometric)
        })
        .collect();
    let mut min_gap = f64::INFINITY;
    for (a, &(ma, _, _)) in clusters.iter().enumerate() {
        for &(mb, _, _) in clusters.iter().skip(a + 1) {
            min_gap = min_gap.min((ma - mb).norm());
        }
    }
    let regular = clusters.len() == n && min_gap > 1e-8;

    if scalar {
        return Ok(IsometryClass { kind: IsomKind::Elliptic, regular: n == 1, unipotent: true });
    }
    if unipotent {
        return Ok(IsometryClass { kind: IsomKind::Parabolic, regular: false, unipotent: true });
    }
    if clusters.iter().any(|(z, _, _)| z.norm() > 1.0 + 1e-8) {
        return Ok(IsometryClass { kind: IsomKind::Loxodromic, regular, unipotent: false });
    }

    // Unit-modulus spectrum: elliptic iff diagonalizable with an eigenvector
    // of negative norm (a fixed point inside hyperbolic space).
    let mut diagonalizable = true;
    let mut has_negative = false;
    for &(mu, mult, geometric) in &clusters {
        if geometric < mult {
            diagonalizable = false;
            continue;
        }
        let shifted = &mt - &id * mu;
        let ns = eigen::nullspace(&shifted, 1e-7);
        let k = ns.len();
        let mut gram = DMatrix::zeros(k, k);
        for a in 0..k {
            for b in 0..k {
                gram[(a, b)] = (ns[a].adjoint() * h * &ns[b])[(0, 0)];
            }
        }
        let eigvals = eigen::hermitian_eigenvalues(&gram);
        if eigvals.iter().any(|&x| x < -1e-10) {
            has_negative = true;
        }
    }
    if diagonalizable && has_negative {
        return Ok(IsometryClass { kind: IsomKind::Elliptic, regular, unipotent: false });
    }
    Ok(IsometryClass { kind: IsomKind::Parabolic, regular: false, unipotent: false })
}

/// Boundary fixed point of a parabolic word: the null vector in the
/// eigenspace of the normalized matrix at its common eigenvalue.
pub fn boundary_fixed_point(m: &DMatrix<C64>, form: &Arc<HermForm>) -> Result<HVec> {
    let cls = classify(m, form)?;
    if cls.kind != IsomKind::Parabolic {
        return Err(ChypError::NotParabolic);
    }
    let mt = unit_det_normalize(m);
    let n = mt.nrows();
    let mean = mt.trace() / cr(n as f64);
    let shifted = &mt - DMatrix::<C64>::identity(n, n) * mean;
    let ns = eigen::nullspace(&shifted, 1e-7);
    if ns.is_empty() {
        return Err(ChypError::NotParabolic);
    }
    let h = form.matrix();
    if ns.len() == 1 {
        return HVec::new(ns[0].clone(), form.clone());
    }
    // Pick the isotropic direction of the restricted form on the eigenspace.
    let k = ns.len();
    let mut gram = DMatrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            gram[(a, b)] = (ns[a].adjoint() * h * &ns[b])[(0, 0)];
        }
    }
    let sym = nalgebra::SymmetricEigen::new(gram);
    let mut pos: Option<(f64, DVector<C64>)> = None;
    let mut neg: Option<(f64, DVector<C64>)> = None;
    for (idx, &lam) in sym.eigenvalues.iter().enumerate() {
        let mut w = DVector::zeros(n);
        for (a, basis_vec) in ns.iter().enumerate() {
            w += basis_vec * sym.eigenvectors[(a, idx)];
        }
        if lam.abs() < 1e-9 {
            return HVec::new(w, form.clone());
        }
        if lam > 0.0 {
            pos = Some((lam, w));
        } else {
            neg = Some((lam, w));
        }
    }
    let (lp, wp) = pos.ok_or(ChypError::NotParabolic)?;
    let (ln, wn) = neg.ok_or(ChypError::NotParabolic)?;
    HVec::new(wp / cr(lp.sqrt()) + wn / cr((-ln).sqrt()), form.clone())
}
