//! Eigen-decomposition of real symmetric 3x3 matrices.
//!
//! Eigenvalues come from the trigonometric solution of the characteristic
//! cubic. Eigenvectors are taken from cross products of the rows of
//! `A - lambda I`. When that leaves a residual above tolerance (clustered or
//! repeated eigenvalues), cyclic Jacobi rotations take over.

pub type Mat3 = [[f64; 3]; 3];

pub const TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEigen3 {
    /// Descending.
    pub values: [f64; 3],
    /// `vectors[k]` is the unit eigenvector of `values[k]`.
    pub vectors: [[f64; 3]; 3],
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn mul_vec(a: &Mat3, v: [f64; 3]) -> [f64; 3] {
    [dot(a[0], v), dot(a[1], v), dot(a[2], v)]
}

fn frobenius(a: &Mat3) -> f64 {
    a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
}

/// Eigenvalues by the closed-form cubic solution, descending.
pub fn eigenvalues_closed_form(a: &Mat3) -> [f64; 3] {
    let off = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
    if off == 0.0 {
        let mut d = [a[0][0], a[1][1], a[2][2]];
        d.sort_by(|x, y| y.total_cmp(x));
        return d;
    }
    let q = (a[0][0] + a[1][1] + a[2][2]) / 3.0;
    let p2 = (a[0][0] - q).powi(2) + (a[1][1] - q).powi(2) + (a[2][2] - q).powi(2) + 2.0 * off;
    let p = (p2 / 6.0).sqrt();
    let mut b = *a;
    for (i, row) in b.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            if i == j {
                *x -= q;
            }
            *x /= p;
        }
    }
    let det = b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1])
        - b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0])
        + b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    let r = (det / 2.0).clamp(-1.0, 1.0);
    let phi = r.acos() / 3.0;
    let e1 = q + 2.0 * p * phi.cos();
    let e3 = q + 2.0 * p * (phi + 2.0 * std::f64::consts::PI / 3.0).cos();
    let e2 = 3.0 * q - e1 - e3;
    [e1, e2, e3]
}

fn null_vector(a: &Mat3, lambda: f64) -> Option<[f64; 3]> {
    let rows = [
        [a[0][0] - lambda, a[0][1], a[0][2]],
        [a[1][0], a[1][1] - lambda, a[1][2]],
        [a[2][0], a[2][1], a[2][2] - lambda],
    ];
    let candidates = [
        cross(rows[0], rows[1]),
        cross(rows[0], rows[2]),
        cross(rows[1], rows[2]),
    ];
    let best = candidates
        .into_iter()
        .max_by(|x, y| dot(*x, *x).total_cmp(&dot(*y, *y)))?;
    let norm = dot(best, best).sqrt();
    (norm > 0.0).then(|| [best[0] / norm, best[1] / norm, best[2] / norm])
}

fn closed_form(a: &Mat3) -> Option<SymmetricEigen3> {
    let values = eigenvalues_closed_form(a);
    let scale = frobenius(a).max(1.0);
    let mut vectors = [[0.0; 3]; 3];
    for k in 0..3 {
        let v = null_vector(a, values[k])?;
        let av = mul_vec(a, v);
        let residual = (0..3)
            .map(|i| (av[i] - values[k] * v[i]).abs())
            .fold(0.0, f64::max);
        if residual > TOL * scale {
            return None;
        }
        vectors[k] = v;
    }
    for i in 0..3 {
        for j in 0..i {
            if dot(vectors[i], vectors[j]).abs() > 1e-9 {
                return None;
            }
        }
    }
    Some(SymmetricEigen3 { values, vectors })
}

/// Cyclic Jacobi on a copy of `a`.
pub fn jacobi(a: &Mat3) -> SymmetricEigen3 {
    let mut m = *a;
    let mut v = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let scale = frobenius(a).max(f64::MIN_POSITIVE);
    for _ in 0..64 {
        let off = (m[0][1].powi(2) + m[0][2].powi(2) + m[1][2].powi(2)).sqrt();
        if off <= 1e-15 * scale {
            break;
        }
        for (p, q) in [(0, 1), (0, 2), (1, 2)] {
            if m[p][q] == 0.0 {
                continue;
            }
            let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
            let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
            let t = if theta == 0.0 { 1.0 } else { t };
            let c = 1.0 / (t * t + 1.0).sqrt();
            let s = t * c;
            for row in m.iter_mut() {
                let (rp, rq) = (row[p], row[q]);
                row[p] = c * rp - s * rq;
                row[q] = s * rp + c * rq;
            }
            let (mp, mq) = (m[p], m[q]);
            for k in 0..3 {
                m[p][k] = c * mp[k] - s * mq[k];
                m[q][k] = s * mp[k] + c * mq[k];
            }
            for row in v.iter_mut() {
                let vp = row[p];
                let vq = row[q];
                row[p] = c * vp - s * vq;
                row[q] = s * vp + c * vq;
            }
        }
    }
    let mut order = [0usize, 1, 2];
    order.sort_by(|&i, &j| m[j][j].total_cmp(&m[i][i]));
    let values = order.map(|i| m[i][i]);
    let vectors = order.map(|i| [v[0][i], v[1][i], v[2][i]]);
    SymmetricEigen3 { values, vectors }
}

/// Eigen-decomposition of a symmetric matrix (only the upper triangle is read).
pub fn symmetric_eigen(a: &Mat3) -> SymmetricEigen3 {
    let mut s = *a;
    s[1][0] = s[0][1];
    s[2][0] = s[0][2];
    s[2][1] = s[1][2];
    if s.iter().flatten().any(|x| !x.is_finite()) {
        return SymmetricEigen3 {
            values: [f64::NAN; 3],
            vectors: [[f64::NAN; 3]; 3],
        };
    }
    closed_form(&s).unwrap_or_else(|| jacobi(&s))
}
