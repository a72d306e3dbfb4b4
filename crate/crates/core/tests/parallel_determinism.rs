use wgm_plasmon::spectra::{sweep_spectrum, LinearSystemModel};
use wgm_plasmon::sweeps::{sweep_detuning, sweep_rm_d, SweepRange, SweepSpec};
use wgm_plasmon::SystemConfig;

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

fn bits(values: &[f64]) -> Vec<u64> {
    values.iter().map(|v| v.to_bits()).collect()
}

#[test]
fn rm_d_grid_is_independent_of_thread_count() {
    let spec = SweepSpec {
        r_m: SweepRange::new(2e-9, 30e-9, 15).unwrap(),
        d: SweepRange::new(1e-9, 20e-9, 11).unwrap(),
        ..SweepSpec::standard(SystemConfig::default())
    };
    let serial = in_pool(1, || sweep_rm_d(&spec).unwrap());
    let parallel = in_pool(8, || sweep_rm_d(&spec).unwrap());
    assert_eq!(bits(&serial.values), bits(&parallel.values));
    assert_eq!(serial.argmax, parallel.argmax);
}

#[test]
fn detuning_curves_are_independent_of_thread_count() {
    let spec = SweepSpec::standard(SystemConfig::default());
    let radii = [5e-9, 20e-9, 30e-9];
    let serial = in_pool(1, || sweep_detuning(&spec, &radii).unwrap());
    let parallel = in_pool(6, || sweep_detuning(&spec, &radii).unwrap());
    for (a, b) in serial.iter().zip(&parallel) {
        assert_eq!(bits(&a.values), bits(&b.values));
    }
}

#[test]
fn spectrum_is_independent_of_thread_count() {
    let model = LinearSystemModel::new(SystemConfig::default().derive().unwrap(), true, true);
    let grid = model.default_grid(2001);
    let serial = in_pool(1, || sweep_spectrum(&model, &grid).unwrap());
    let parallel = in_pool(7, || sweep_spectrum(&model, &grid).unwrap());
    assert_eq!(bits(&serial.transmission), bits(&parallel.transmission));
    assert_eq!(serial.dips, parallel.dips);
}
