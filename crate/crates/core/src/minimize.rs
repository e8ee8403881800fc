//! Small derivative-free minimizers: Nelder–Mead for 2–5 parameters and golden
//! section for bracketed 1-D problems.

#[derive(Clone, Debug)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct NelderMead {
    pub max_iter: usize,
    /// Stop when the spread of simplex values falls below this.
    pub ftol: f64,
    /// ... and the simplex diameter falls below this.
    pub xtol: f64,
    pub restarts: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        NelderMead {
            max_iter: 4000,
            ftol: 1e-13,
            xtol: 1e-11,
            restarts: 1,
        }
    }
}

impl NelderMead {
    pub fn minimize<F>(&self, f: F, x0: &[f64], step: f64) -> Minimum
    where
        F: Fn(&[f64]) -> f64,
    {
        let mut best = self.run(&f, x0, step);
        let mut total = best.iterations;
        // Restart from the optimum with a fresh simplex; Nelder–Mead stalls on kinks.
        for _ in 0..self.restarts {
            let s = (step * 1e-2).max(1e-6);
            let again = self.run(&f, &best.x, s);
            total += again.iterations;
            let improved = again.value < best.value - 1e-15;
            if again.value <= best.value {
                best = Minimum { converged: again.converged, ..again };
            }
            if !improved {
                break;
            }
        }
        best.iterations = total;
        best
    }

    fn run<F>(&self, f: &F, x0: &[f64], step: f64) -> Minimum
    where
        F: Fn(&[f64]) -> f64,
    {
        let n = x0.len();
        assert!(n >= 1);
        let mut simplex: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
        simplex.push(x0.to_vec());
        for i in 0..n {
            let mut p = x0.to_vec();
            p[i] += step;
            simplex.push(p);
        }
        let mut values: Vec<f64> = simplex.iter().map(|p| sanitize(f(p))).collect();

        let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
        let mut iter = 0;
        let mut converged = false;
        while iter < self.max_iter {
            iter += 1;
            let mut order: Vec<usize> = (0..=n).collect();
            order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
            simplex = order.iter().map(|&i| simplex[i].clone()).collect();
            values = order.iter().map(|&i| values[i]).collect();

            let spread = values[n] - values[0];
            let diameter = simplex[1..]
                .iter()
                .map(|p| max_abs_diff(p, &simplex[0]))
                .fold(0.0, f64::max);
            if spread <= self.ftol && diameter <= self.xtol.max(1e-15 * norm_inf(&simplex[0])) {
                converged = true;
                break;
            }

            let mut centroid = vec![0.0; n];
            for p in &simplex[..n] {
                for (c, v) in centroid.iter_mut().zip(p) {
                    *c += v / n as f64;
                }
            }
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&simplex[n])
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let xr = along(alpha);
            let fr = sanitize(f(&xr));
            if fr < values[0] {
                let xe = along(gamma);
                let fe = sanitize(f(&xe));
                if fe < fr {
                    simplex[n] = xe;
                    values[n] = fe;
                } else {
                    simplex[n] = xr;
                    values[n] = fr;
                }
            } else if fr < values[n - 1] {
                simplex[n] = xr;
                values[n] = fr;
            } else {
                let (xc, fc) = if fr < values[n] {
                    let xc = along(rho);
                    let fc = sanitize(f(&xc));
                    (xc, fc)
                } else {
                    let xc = along(-rho);
                    let fc = sanitize(f(&xc));
                    (xc, fc)
                };
                if fc < values[n].min(fr) {
                    simplex[n] = xc;
                    values[n] = fc;
                } else {
                    for i in 1..=n {
                        let p: Vec<f64> = simplex[0]
                            .iter()
                            .zip(&simplex[i])
                            .map(|(b, x)| b + sigma * (x - b))
                            .collect();
                        values[i] = sanitize(f(&p));
                        simplex[i] = p;
                    }
                }
            }
        }
        let best = (0..=n).min_by(|&a, &b| values[a].total_cmp(&values[b])).unwrap();
        Minimum {
            x: simplex[best].clone(),
            value: values[best],
            iterations: iter,
            converged,
        }
    }
}

fn sanitize(v: f64) -> f64 {
    if v.is_nan() {
        f64::INFINITY
    } else {
        v
    }
}

fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn norm_inf(a: &[f64]) -> f64 {
    a.iter().map(|x| x.abs()).fold(0.0, f64::max)
}

/// Golden-section search on `[lo, hi]`; returns `(argmin, min)`.
pub fn golden_section<F>(f: F, mut lo: f64, mut hi: f64, xtol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = sanitize(f(c));
    let mut fd = sanitize(f(d));
    let mut guard = 0;
    while (hi - lo).abs() > xtol && guard < 300 {
        guard += 1;
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = sanitize(f(c));
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = sanitize(f(d));
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let m = NelderMead::default().minimize(f, &[-1.2, 1.0], 0.5);
        assert!(m.converged);
        assert!((m.x[0] - 1.0).abs() < 1e-5 && (m.x[1] - 1.0).abs() < 1e-5);
    }

    #[test]
    fn kinked_objective() {
        // Sum of norms, the shape of the group distance.
        let f = |x: &[f64]| (x[0] - 1.0).abs() + ((x[1] + 2.0).powi(2) + (x[2] - 0.5).powi(2)).sqrt();
        let m = NelderMead::default().minimize(f, &[0.0, 0.0, 0.0], 1.0);
        assert!(m.value < 1e-9, "{m:?}");
    }

    #[test]
    fn golden_abs() {
        let (x, v) = golden_section(|t| (t - 0.3).abs(), -1.0, 2.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-10 && v < 1e-10);
    }
}
