use shocklayer::*;
fn main() {
    let fs = FreestreamConditions::plane(4.0).unwrap();
    let shape = ShockShape::poly_in_f(&fs, 17.615, &[0.998, -0.045]).unwrap();
    for r in [8e-3, 4e-3, 2e-3, 1e-3, 5e-4, 2.5e-4] {
        let st = shape.station_by_radius(r).unwrap();
        let mut s = StationSolver::new(&fs, &shape, st).unwrap();
        let bp = s.body_point().unwrap();
        println!("r={:9.1e}  delta={:.9}  p_b={:.9}", r, bp.delta, bp.p_b);
    }
    let stag = axis_point(&fs, &shape).unwrap();
    println!("extrapolated: delta0={:.9} p_b={:.9}", stag.delta, stag.p_b);
    println!("P_hat(90) = {:.9}", post_shock_state(&fs, std::f64::consts::FRAC_PI_2).unwrap().p);
}
