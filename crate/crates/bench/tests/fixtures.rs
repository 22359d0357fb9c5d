use tsunami_bench::{bump, grid, open_sea, rays};
use tsunami_core::find_stationary_point;

#[test]
fn every_ray_has_a_stationary_point() {
    let nd = open_sea();
    let rays = rays(&nd, 64);
    assert!(rays.len() >= 63);
    for r in rays {
        assert!(find_stationary_point(r, &nd).unwrap().residual <= 1e-12);
    }
}

#[test]
fn workload_fits_the_grid() {
    let g = grid(1024);
    let reach = tsunami_core::evolve::required_half_width(&bump(), &open_sea(), 5.0, None);
    assert!(reach <= g.x_dom);
}
