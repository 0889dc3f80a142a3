use fracpde::fraccalc::FracOrder;
use fracpde::grid::*;
use fracpde::stieltjes::*;

fn weier(n: usize, lambda: f64, seed: u64, levels: usize) -> SampledPath {
    let mut s = seed.wrapping_mul(0x9e3779b97f4a7c15).wrapping_add(0x1234_5678);
    let phases: Vec<f64> = (0..levels).map(|_| {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (s >> 11) as f64 / (1u64 << 53) as f64 * std::f64::consts::TAU
    }).collect();
    SampledPath::from_fn(UniformGrid::unit(n).unwrap(), |t| {
        phases.iter().enumerate().map(|(j, &ph)| {
            let scale = (1u64 << j) as f64;
            (1.0/scale).powf(lambda) * (scale * 5.0 * t + ph).sin()
        }).sum()
    }).unwrap()
}

fn rs(f: &SampledPath, g: &SampledPath) -> f64 { riemann_stieltjes_left_sum(f, g, 1).unwrap() }

fn main() {
    // seed scan at L=9 for the Hölder-0.7 example
    for seed in 1u64..25 {
        let g14 = weier(1<<14, 0.7, seed, 9);
        let g12 = weier(1<<12, 0.7, seed, 9);
        let exact = 0.5*(g14.right_limit().powi(2) - g14.left_limit().powi(2));
        let v14 = forward_integral(&g14, &g14, &IntegralConfig::new(FracOrder::new(0.45).unwrap())).unwrap();
        if v14.abs() < 0.3 { continue; }
        let s12 = forward_integral_eta_sweep(&g12, &g12, &[0.25,0.35,0.45], true).unwrap();
        let s14 = forward_integral_eta_sweep(&g14, &g14, &[0.25,0.35,0.45], true).unwrap();
        // Richardson-extrapolated RS limit from n=2^12, 2^13, 2^14
        let r12 = rs(&weier(1<<12, 0.7, seed, 9), &weier(1<<12, 0.7, seed, 9));
        let r13 = rs(&weier(1<<13, 0.7, seed, 9), &weier(1<<13, 0.7, seed, 9));
        let r14 = rs(&g14, &g14);
        let p = ((r13 - r12).abs() / (r14 - r13).abs()).log2();
        let rstar = r14 + (r14 - r13) / (2f64.powf(p) - 1.0);
        println!("seed {seed}: v={v14:.3} ex={exact:.3} | sw12={:.2e} sw14={:.2e} | v-ex={:.2e} | v-rs*={:.2e} rs-p={p:.2}",
            s12.max_spread/s12.values[2].abs(), s14.max_spread/s14.values[2].abs(),
            (v14-exact).abs()/v14.abs(), (v14-rstar).abs()/v14.abs());
    }

    // smooth pairs
    let n = 4096;
    let grid = UniformGrid::unit(n).unwrap();
    let cands: Vec<(&str, Box<dyn Fn(f64)->f64>, Box<dyn Fn(f64)->f64>)> = vec![
        ("sin t/cos t", Box::new(|t: f64| t.sin()), Box::new(|t: f64| t.cos())),
        ("0.5sin2t/0.5cos t2", Box::new(|t: f64| 0.5*(2.0*t).sin()), Box::new(|t: f64| 0.5*(t*t).cos())),
        ("t/1+t", Box::new(|t: f64| t), Box::new(|t: f64| 1.0/(1.0+t))),
    ];
    for (name, ff, gg) in &cands {
        let f = SampledPath::from_fn(grid.clone(), ff).unwrap();
        let g = SampledPath::from_fn(grid.clone(), gg).unwrap();
        let sw = forward_integral_eta_sweep(&f, &g, &[0.2,0.4,0.6], true).unwrap();
        println!("smooth {name}: spread={:.3e}", sw.max_spread);
    }

    // indefinite candidates
    for (amp, om, eta) in [(0.5f64, std::f64::consts::PI, 0.5f64), (0.5, std::f64::consts::PI, 0.35), (1.0, 1.0, 0.5), (0.5, 2.0, 0.5)] {
        let g = SampledPath::from_fn(UniformGrid::unit(4096).unwrap(), |t| amp*(om*t).sin()).unwrap();
        let out = indefinite_forward_integral(&g, &g, &IntegralConfig::new(FracOrder::new(eta).unwrap())).unwrap();
        let mut max_err = 0.0f64;
        for (i,&t) in g.grid().nodes().iter().enumerate() {
            let exact = 0.5*((amp*(om*t).sin()).powi(2) - (amp*(om*0.0f64).sin()).powi(2));
            max_err = max_err.max((out.value(i)-exact).abs());
        }
        println!("indef amp={amp} om={om:.2} eta={eta}: max err {max_err:.3e}");
    }
}
