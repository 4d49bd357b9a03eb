//! Gauss–Legendre nodes/weights on [-1, 1] (Newton iteration on the
//! Legendre recurrence) with a process-wide cache, plus a composite
//! integrator for complex-valued functions of a real variable.

use num_complex::Complex64;
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// Legendre P_n(x) and its derivative by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0f64;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 1..n {
        let p2 = ((2 * k + 1) as f64 * x * p1 - k as f64 * p0) / (k + 1) as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

fn compute_nodes(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut xs = vec![0.0; n];
    let mut ws = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Chebyshev-based initial guess, then Newton
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_pair(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre_pair(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        // nodes come out in descending order for this guess; store symmetric pair
        xs[i] = -x;
        ws[i] = w;
        xs[n - 1 - i] = x;
        ws[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        // the middle node is exactly 0
        xs[n / 2] = 0.0;
        let (_, dp) = legendre_pair(n, 0.0);
        ws[n / 2] = 2.0 / (dp * dp);
    }
    (xs, ws)
}

type NodeCache = Mutex<HashMap<usize, Arc<(Vec<f64>, Vec<f64>)>>>;

/// Gauss–Legendre nodes and weights on [-1, 1], cached per order.
pub fn gauss_legendre(n: usize) -> Arc<(Vec<f64>, Vec<f64>)> {
    static CACHE: OnceLock<NodeCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut map = cache.lock().expect("gauss node cache poisoned");
    map.entry(n).or_insert_with(|| Arc::new(compute_nodes(n))).clone()
}

/// Composite Gauss–Legendre integral of a complex-valued function over
/// [a, b] split into `panels` equal pieces with `order` nodes each.
pub fn integrate_composite<F>(f: F, a: f64, b: f64, panels: usize, order: usize) -> Complex64
where
    F: Fn(f64) -> Complex64,
{
    let nodes = gauss_legendre(order);
    let (xs, ws) = (&nodes.0, &nodes.1);
    let h = (b - a) / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let half = 0.5 * h;
        let mut local = Complex64::new(0.0, 0.0);
        for (x, w) in xs.iter().zip(ws.iter()) {
            local += *w * f(mid + half * x);
        }
        acc += local * half;
    }
    acc
}
