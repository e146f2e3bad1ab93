use crate::error::{domain, Error, Result};
use serde::{Deserialize, Serialize};

/// Components of a 1-form on a 3-dimensional chart, `(dx₁, dx₂, dx₃)`.
pub type Covector = [f64; 3];
/// Components of a 2-form on `(dx₂∧dx₃, dx₃∧dx₁, dx₁∧dx₂)`.
pub type TwoForm = [f64; 3];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `(x, y, θ)` on the universal cover of the Euclidean motion group.
    E2,
    /// `(x, y, θ)` with `y > 0` on `H² × R`.
    Sl2,
    /// Inverse stereographic projection from `(0,0,0,1)`.
    S3North,
    /// Inverse stereographic projection from `(0,0,0,−1)`.
    S3South,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub chart: Chart,
    pub coords: [f64; 3],
}

impl ChartPoint {
    pub fn e2(x: f64, y: f64, theta: f64) -> Self {
        ChartPoint { chart: Chart::E2, coords: [x, y, theta] }
    }

    pub fn sl2(x: f64, y: f64, theta: f64) -> Result<Self> {
        ChartPoint::new(Chart::Sl2, [x, y, theta])
    }

    pub fn new(chart: Chart, coords: [f64; 3]) -> Result<Self> {
        let p = ChartPoint { chart, coords };
        if !coords.iter().all(|c| c.is_finite()) {
            return domain("chart coordinates must be finite");
        }
        if chart == Chart::Sl2 && coords[1] <= 0.0 {
            return domain(format!("y = {} is not in the upper half-plane", coords[1]));
        }
        Ok(p)
    }

    /// Places a unit vector of R⁴ in the stereographic chart whose pole is farther away.
    pub fn s3(p: [f64; 4]) -> Result<Self> {
        let chart = if p[3] <= 0.0 { Chart::S3North } else { Chart::S3South };
        ChartPoint::s3_in(chart, p)
    }

    pub fn s3_in(chart: Chart, p: [f64; 4]) -> Result<Self> {
        let n2: f64 = p.iter().map(|x| x * x).sum();
        if (n2.sqrt() - 1.0).abs() > 1e-12 {
            return domain(format!("|p| = {} is not 1", n2.sqrt()));
        }
        let denom = match chart {
            Chart::S3North => 1.0 - p[3],
            Chart::S3South => 1.0 + p[3],
            _ => return Err(Error::InvalidInput("not an S³ chart".into())),
        };
        if denom <= 0.0 {
            return domain("point is the pole of the requested chart");
        }
        ChartPoint::new(chart, [p[0] / denom, p[1] / denom, p[2] / denom])
    }

    pub fn with_coords(&self, coords: [f64; 3]) -> Result<Self> {
        ChartPoint::new(self.chart, coords)
    }

    /// Ambient point of R⁴ for S³ charts.
    pub fn ambient(&self) -> Option<[f64; 4]> {
        let u = self.coords;
        let s = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
        let last = (s - 1.0) / (1.0 + s);
        let k = 2.0 / (1.0 + s);
        match self.chart {
            Chart::S3North => Some([k * u[0], k * u[1], k * u[2], last]),
            Chart::S3South => Some([k * u[0], k * u[1], k * u[2], -last]),
            _ => None,
        }
    }

    pub fn expect_chart(&self, chart: Chart) -> Result<()> {
        if self.chart != chart {
            return Err(Error::InvalidInput(format!("expected a {chart:?} chart point, got {:?}", self.chart)));
        }
        Ok(())
    }
}

/// Jacobian `∂p/∂u` (4 × 3) of an inverse stereographic chart.
pub fn s3_jacobian(chart: Chart, u: &[f64; 3]) -> Result<[[f64; 3]; 4]> {
    let sign = match chart {
        Chart::S3North => 1.0,
        Chart::S3South => -1.0,
        _ => return Err(Error::InvalidInput("not an S³ chart".into())),
    };
    let s = u[0] * u[0] + u[1] * u[1] + u[2] * u[2];
    let q = (1.0 + s) * (1.0 + s);
    let mut j = [[0.0; 3]; 4];
    for i in 0..3 {
        for k in 0..3 {
            let delta = if i == k { 2.0 * (1.0 + s) } else { 0.0 };
            j[i][k] = (delta - 4.0 * u[i] * u[k]) / q;
        }
    }
    for k in 0..3 {
        j[3][k] = sign * 4.0 * u[k] / q;
    }
    Ok(j)
}

pub fn wedge11(a: &Covector, b: &Covector) -> TwoForm {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Coefficient of `dx₁∧dx₂∧dx₃` in `a ∧ β`.
pub fn wedge12(a: &Covector, beta: &TwoForm) -> f64 {
    a[0] * beta[0] + a[1] * beta[1] + a[2] * beta[2]
}

pub fn det3(rows: &[Covector; 3]) -> f64 {
    wedge12(&rows[0], &wedge11(&rows[1], &rows[2]))
}

pub fn max_abs_diff(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    (0..3).map(|i| (a[i] - b[i]).abs()).fold(0.0, f64::max)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiffOptions {
    pub h: f64,
    pub richardson: bool,
}

impl Default for DiffOptions {
    fn default() -> Self {
        DiffOptions { h: 1e-5, richardson: false }
    }
}

fn central_curl<F>(form: &F, p: &ChartPoint, h: f64) -> Result<TwoForm>
where
    F: Fn(&ChartPoint) -> Result<Covector> + ?Sized,
{
    let mut jac = [[0.0; 3]; 3]; // jac[i][j] = ∂_j f_i
    for j in 0..3 {
        let mut plus = p.coords;
        let mut minus = p.coords;
        plus[j] += h;
        minus[j] -= h;
        if plus[j] == p.coords[j] || minus[j] == p.coords[j] {
            return Err(Error::Domain(format!("finite-difference step {h} underflows at coordinate {}", p.coords[j])));
        }
        let fp = form(&p.with_coords(plus)?)?;
        let fm = form(&p.with_coords(minus)?)?;
        for i in 0..3 {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    Ok([jac[2][1] - jac[1][2], jac[0][2] - jac[2][0], jac[1][0] - jac[0][1]])
}

/// Exterior derivative of a 1-form by central differences of its coefficients.
pub fn numeric_d<F>(form: &F, p: &ChartPoint, opts: DiffOptions) -> Result<TwoForm>
where
    F: Fn(&ChartPoint) -> Result<Covector> + ?Sized,
{
    if !(opts.h > 0.0 && opts.h.is_finite()) {
        return Err(Error::Domain(format!("step must be positive, got {}", opts.h)));
    }
    let coarse = central_curl(form, p, opts.h)?;
    if !opts.richardson {
        return Ok(coarse);
    }
    let fine = central_curl(form, p, 0.5 * opts.h)?;
    Ok([0, 1, 2].map(|i| (4.0 * fine[i] - coarse[i]) / 3.0))
}
