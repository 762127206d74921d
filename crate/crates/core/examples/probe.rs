use nalgebra::DVector;
use qrotor::rotor::{magnitude_jacobian, magnitude_residuals, polar_coefficients};
use qrotor::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct LmOut { cost: f64, theta: Vec<f64>, iters: usize, err: f64 }

fn component_err(theta: &[f64], mags: &[f64]) -> f64 {
    let c = polar_coefficients(theta).unwrap();
    c.iter().zip(mags.iter()).map(|(x, &m)| (x.norm() - m).abs()).fold(0.0, f64::max)
}

fn lm(mut theta: Vec<f64>, m2: &[f64], mags: &[f64], max_iter: usize) -> LmOut {
    let mut r = DVector::from_vec(magnitude_residuals(&theta, m2));
    let mut cost = r.norm_squared();
    let mut mu = 1e-4f64;
    let mut stagnant = 0;
    let mut iters = 0;
    for iter in 0..max_iter {
        iters = iter;
        let err = component_err(&theta, mags);
        if err <= 5e-10 { return LmOut { cost, theta, iters, err }; }
        let jac = magnitude_jacobian(&theta);
        let normal = jac.transpose() * &jac;
        let grad = jac.transpose() * &r;
        let mut stepped = false;
        for _ in 0..25 {
            let mut damped = normal.clone();
            for i in 0..damped.nrows() { damped[(i, i)] += mu; }
            if let Some(ch) = damped.cholesky() {
                let step = ch.solve(&(-&grad));
                let trial: Vec<f64> = theta.iter().zip(step.iter()).map(|(t, d)| t + d).collect();
                let tr = DVector::from_vec(magnitude_residuals(&trial, m2));
                let tc = tr.norm_squared();
                if tc < cost {
                    let rel = (cost - tc) / cost.max(f64::MIN_POSITIVE);
                    stagnant = if rel < 1e-14 { stagnant + 1 } else { 0 };
                    theta = trial; r = tr; cost = tc;
                    mu = (mu / 3.0).max(1e-15); stepped = true; break;
                }
            }
            mu *= 4.0;
            if mu > 1e15 { break; }
        }
        if !stepped || stagnant >= 8 { break; }
    }
    let err = component_err(&theta, mags);
    LmOut { cost, theta, iters, err }
}

fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

fn main() {
    let mut seeder = ChaCha8Rng::seed_from_u64(2024);
    for n in [5usize, 6] {
        let dim = 1usize << n;
        let trials = 100;
        let targets: Vec<Vec<f64>> = (0..trials).map(|_| {
            let coeffs: Vec<Complex64> = (0..dim).map(|_| Complex64::new(gaussian(&mut seeder), gaussian(&mut seeder))).collect();
            let norm = coeffs.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            coeffs.iter().map(|x| (x / norm).norm()).collect()
        }).collect();

        // (a) plain 33 starts
        let t0 = std::time::Instant::now();
        let mut fails_a = 0;
        for (t, mags) in targets.iter().enumerate() {
            let m2: Vec<f64> = mags.iter().map(|m| m * m).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(t as u64);
            let mut ok = false;
            for attempt in 0..33 {
                let s: Vec<f64> = if attempt == 0 {
                    (1..dim).map(|l| 2.0 * mags[l].clamp(0.0, 1.0).asin()).collect()
                } else {
                    (1..dim).map(|_| rng.gen_range(-3.1415_f64..3.1415)).collect()
                };
                if lm(s, &m2, mags, 250).err <= 5e-10 { ok = true; break; }
            }
            if !ok { fails_a += 1; }
        }
        println!("n={n} plain x33:        fails {fails_a}/{trials}  wall {:?}", t0.elapsed());

        // (b) chains: 33 chains of start + 4 hops, full budget
        let t1 = std::time::Instant::now();
        let mut fails_b = 0;
        for (t, mags) in targets.iter().enumerate() {
            let m2: Vec<f64> = mags.iter().map(|m| m * m).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(t as u64);
            let mut ok = false;
            'outer: for attempt in 0..33 {
                let s: Vec<f64> = if attempt == 0 {
                    (1..dim).map(|l| 2.0 * mags[l].clamp(0.0, 1.0).asin()).collect()
                } else {
                    (1..dim).map(|_| rng.gen_range(-3.1415_f64..3.1415)).collect()
                };
                let mut best = lm(s, &m2, mags, 250);
                if best.err <= 5e-10 { ok = true; break 'outer; }
                for _ in 0..4 {
                    let sigma = 0.2 + 0.8 * rng.gen_range(0.0f64..1.0);
                    let kicked: Vec<f64> = best.theta.iter().map(|x| x + sigma * gaussian(&mut rng)).collect();
                    let out = lm(kicked, &m2, mags, 250);
                    if out.err <= 5e-10 { ok = true; break 'outer; }
                    if out.cost < best.cost { best = out; }
                }
            }
            if !ok { fails_b += 1; }
        }
        println!("n={n} chains 33x(1+4):  fails {fails_b}/{trials}  wall {:?}", t1.elapsed());
    }
}
