/// Stopping rules for [`nelder_mead`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimplexOptions {
    pub max_evals: usize,
    /// Stop when the spread of objective values falls below this.
    pub f_tol: f64,
    /// Stop when the simplex diameter falls below this.
    pub x_tol: f64,
    pub initial_step: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        Self { max_evals: 4000, f_tol: 1e-20, x_tol: 1e-12, initial_step: 0.1 }
    }
}

/// Two-dimensional Nelder-Mead minimisation from `start`. Returns the best
/// point and its value.
pub fn nelder_mead<F: FnMut([f64; 2]) -> f64>(mut f: F, start: [f64; 2], opts: &SimplexOptions) -> ([f64; 2], f64) {
    let h = opts.initial_step;
    let mut pts = [start, [start[0] + h, start[1]], [start[0], start[1] + h]];
    let mut vals = [f(pts[0]), f(pts[1]), f(pts[2])];
    let mut evals = 3;
    let lerp = |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    while evals < opts.max_evals {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];
        let diam = (1..3)
            .map(|i| libm::fabs(pts[i][0] - pts[0][0]).max(libm::fabs(pts[i][1] - pts[0][1])))
            .fold(0.0, f64::max);
        if (vals[2] - vals[0]).abs() <= opts.f_tol && diam <= opts.x_tol || diam <= opts.x_tol * 1e-3 {
            break;
        }
        let centroid = lerp(pts[0], pts[1], 0.5);
        let reflected = lerp(centroid, pts[2], -1.0);
        let fr = f(reflected);
        evals += 1;
        if fr < vals[0] {
            let expanded = lerp(centroid, pts[2], -2.0);
            let fe = f(expanded);
            evals += 1;
            if fe < fr {
                pts[2] = expanded;
                vals[2] = fe;
            } else {
                pts[2] = reflected;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = reflected;
            vals[2] = fr;
        } else {
            let (contracted, fc) = if fr < vals[2] {
                let p = lerp(centroid, reflected, 0.5);
                (p, f(p))
            } else {
                let p = lerp(centroid, pts[2], 0.5);
                (p, f(p))
            };
            evals += 1;
            if fc < vals[2].min(fr) {
                pts[2] = contracted;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    pts[i] = lerp(pts[0], pts[i], 0.5);
                    vals[i] = f(pts[i]);
                }
                evals += 2;
            }
        }
    }
    let best = (0..3).min_by(|&i, &j| vals[i].total_cmp(&vals[j])).expect("three points");
    (pts[best], vals[best])
}
