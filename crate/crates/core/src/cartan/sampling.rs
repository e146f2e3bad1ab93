use super::forms::{Chart, ChartPoint};
use crate::error::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Seeded sample points on compact boxes of each chart family:
/// `[−2,2]² × [−π,π]` for E2, `[−2,2] × [0.3,3] × [−π,π]` for `H² × R`,
/// and uniform points of S³ placed in their preferred stereographic chart.
pub fn sample_points(chart: Chart, count: usize, seed: u64) -> Result<Vec<ChartPoint>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| match chart {
            Chart::E2 => Ok(ChartPoint::e2(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(-PI..PI))),
            Chart::Sl2 => ChartPoint::sl2(rng.gen_range(-2.0..2.0), rng.gen_range(0.3..3.0), rng.gen_range(-PI..PI)),
            Chart::S3North | Chart::S3South => ChartPoint::s3(sample_s3(&mut rng)),
        })
        .collect()
}

/// Uniform point of S³ by rejection from the cube.
pub fn sample_s3<R: Rng>(rng: &mut R) -> [f64; 4] {
    loop {
        let v: [f64; 4] = [0; 4].map(|_| rng.gen_range(-1.0..1.0));
        let n2: f64 = v.iter().map(|x| x * x).sum();
        if n2 > 1e-4 && n2 <= 1.0 {
            let n = n2.sqrt();
            return v.map(|x| x / n);
        }
    }
}
