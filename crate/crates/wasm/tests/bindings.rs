use erasure_wasm::{ensemble_curve_values, ensemble_sample_values, eraser_values, random_state_values};

#[test]
fn eraser_curve_layout() {
    let v = eraser_values(11, 0.4, 1.0, false).unwrap();
    assert_eq!(v.len(), 33);
    for row in v.chunks(3) {
        assert!((row[1] - row[0]).abs() <= 1e-12);
        assert!((row[2] - 1.0).abs() <= 1e-12);
    }
    assert_eq!(v[30], 1.0);
    let hidden = eraser_values(3, 0.0, 1.0, true).unwrap();
    assert_eq!(&hidden[..3], &[0.0, 0.0, 0.0]);
    assert!(eraser_values(1, 0.0, 1.0, false).is_err());
    assert!(eraser_values(5, 0.0, 2.0, false).is_err());
}

#[test]
fn ensemble_curve_layout() {
    let v = ensemble_curve_values(2).unwrap();
    let pi = std::f64::consts::PI;
    assert_eq!(v.len(), 8);
    assert_eq!(v[0], 1.0);
    assert!((v[1] - pi / 4.0).abs() < 1e-15);
    assert!((v[3] - 75.0 * pi / 256.0).abs() < 1e-15);
    assert!((v[6] - 31.0 * pi / 128.0).abs() < 1e-15);
    assert!(ensemble_curve_values(0).is_err());
    assert!(ensemble_curve_values(31).is_err());
}

#[test]
fn ensemble_sample_is_seeded() {
    let a = ensemble_sample_values(2, 1, 500, 1).unwrap();
    assert_eq!(a, ensemble_sample_values(2, 1, 500, 1).unwrap());
    assert_eq!(a[2], 9.0 * std::f64::consts::PI / 32.0);
    assert!(a[3].abs() < 5.0);
    assert!(ensemble_sample_values(4, 1, 500, 1).is_err());
}

#[test]
fn random_state_sandwich() {
    let v = random_state_values(2, 3, 12, 1000).unwrap();
    assert!(v[0] <= v[1] + 1e-9);
    assert!((v[2] - v[1]).abs() <= 1e-9);
    assert!(v[3] <= v[1] + 1e-9 && v[3] >= v[1] - 5e-3);
    let q = random_state_values(3, 2, 12, 1000).unwrap();
    assert!(q[2].is_nan());
    assert!(random_state_values(10, 16, 0, 10).is_err());
}
