use latgreen::lattice::{lattice_kernel_adaptive, ThresholdContext};
use latgreen::quadrature::ExtrapolationLadder;
use latgreen::verify::{ray_limit_test, RayTarget};
use latgreen::{Complex, SeriesControl};
use std::f64::consts::PI;
use std::time::Instant;

fn main() {
    let ctl = SeriesControl { abs_tol: 1e-13, rel_tol: 1e-13, ..SeriesControl::default() };
    // Probe which N the worst rung needs.
    let ctx = ThresholdContext::new(3, 1).unwrap();
    for steps in [6usize, 8] {
        let ladder = ExtrapolationLadder::new(0.6, 0.8, steps).unwrap();
        let eps = *ladder.offsets().last().unwrap();
        let w = Complex::from_polar(eps, PI / 6.0);
        let z = w + ctx.threshold_value();
        let t0 = Instant::now();
        match lattice_kernel_adaptive(3, z, &[0, 0, 0], 1e-8, 32, 1024) {
            Ok(ks) => println!(
                "steps {steps}: eps_min {eps:.4} -> N-equivalent nodes {} est {:.2e} in {:?}",
                ks.quadrature_nodes, ks.error_estimate, t0.elapsed()
            ),
            Err(e) => println!("steps {steps}: eps_min {eps:.4} -> {e} in {:?}", t0.elapsed()),
        }
    }
    // Full (3,1) ray test at steps 6.
    let rays = [PI / 6.0, PI / 2.0, 5.0 * PI / 6.0];
    let ladder = ExtrapolationLadder::new(0.6, 0.8, 6).unwrap();
    let target = RayTarget::Lattice { ctx, n: vec![0, 0, 0] };
    let t0 = Instant::now();
    let gen = ray_limit_test(&target, &rays, &ladder, 1.0, &ctl).unwrap();
    let t1 = Instant::now();
    let ctr = ray_limit_test(&target, &rays, &ladder, 1.1, &ctl).unwrap();
    println!(
        "(3,1) steps6: spread {:.2e} rdiv {:.2e} | ctrl spread {:.2e} (x{:.0}) rdiv {:.2e} | gen {:?} ctrl {:?}",
        gen.cross_ray_spread,
        gen.remainder_divergence_indicator,
        ctr.cross_ray_spread,
        ctr.cross_ray_spread / gen.cross_ray_spread.max(1e-300),
        ctr.remainder_divergence_indicator,
        t1 - t0,
        t1.elapsed()
    );
}
