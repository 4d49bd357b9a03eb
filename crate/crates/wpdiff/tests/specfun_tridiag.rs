use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wpdiff::specfun::solve_tridiagonal;
use wpdiff::specfun::tridiag::tridiagonal_residual;

fn random_complex(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

#[test]
fn random_systems_have_small_residual() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7419);
    for n in [1usize, 2, 5, 33, 400] {
        // diagonally dominant so the pivotless sweep is well-conditioned
        let lower: Vec<Complex64> = (0..n - 1).map(|_| random_complex(&mut rng)).collect();
        let upper: Vec<Complex64> = (0..n - 1).map(|_| random_complex(&mut rng)).collect();
        let diag: Vec<Complex64> = (0..n)
            .map(|_| random_complex(&mut rng) + Complex64::new(4.0, 0.0))
            .collect();
        let rhs: Vec<Complex64> = (0..n).map(|_| random_complex(&mut rng)).collect();
        let x = solve_tridiagonal(&lower, &diag, &upper, &rhs).unwrap();
        let r = tridiagonal_residual(&lower, &diag, &upper, &x, &rhs);
        let rhs_norm = rhs.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        assert!(r <= 1e-12 * rhs_norm.max(1.0), "n={n}: residual {r}");
    }
}

#[test]
fn shape_mismatch_is_rejected() {
    let d = vec![Complex64::new(1.0, 0.0); 3];
    let off = vec![Complex64::new(0.0, 0.0); 3]; // should be n-1 = 2
    let rhs = vec![Complex64::new(1.0, 0.0); 3];
    assert!(solve_tridiagonal(&off, &d, &off, &rhs).is_err());
}
