use proptest::prelude::*;
use qadpa_core::circuit::solve_sparams;
use qadpa_core::rf::{linspace, Frequency};
use qadpa_core::wilkinson::{design, terminal_phase_difference, to_netlist};

fn f8() -> Frequency<f64> {
    Frequency::from_ghz(8.0).unwrap()
}

#[test]
fn equal_split_has_no_phase_difference() {
    let d = design(50.0, 1.0, f8()).unwrap();
    let freqs = linspace(Frequency::from_ghz(4.0).unwrap(), Frequency::from_ghz(12.0).unwrap(), 81).unwrap();
    for p in terminal_phase_difference(&d, &freqs).unwrap() {
        assert!(p.abs() < 1e-9);
    }
}

#[test]
fn unequal_phase_difference_grows_away_from_f0() {
    let d = design(50.0, 8.0 / 15.0, f8()).unwrap();
    let freqs = linspace(Frequency::from_ghz(7.6).unwrap(), Frequency::from_ghz(8.4).unwrap(), 81).unwrap();
    let dphi = terminal_phase_difference(&d, &freqs).unwrap();
    let mid = 40;
    assert!(dphi[mid].abs() <= 2.0);
    for i in mid..80 {
        assert!(dphi[i + 1].abs() >= dphi[i].abs());
    }
    for i in 1..=mid {
        assert!(dphi[i - 1].abs() >= dphi[i].abs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn any_ratio_is_matched_isolated_and_lossless(ratio in 0.1..10.0f64) {
        let d = design(50.0, ratio, f8()).unwrap();
        let s = solve_sparams(&to_netlist(&d).unwrap(), &[f8()]).unwrap().sparams.matrices()[0].clone();
        for (i, j) in [(0, 0), (1, 1), (2, 2), (1, 2)] {
            prop_assert!(s[(i, j)].norm() < 1e-6);
        }
        let split = s[(2, 0)].norm_sqr() / s[(1, 0)].norm_sqr();
        prop_assert!((split / d.k_squared - 1.0).abs() < 0.01);
        let col: f64 = (0..3).map(|i| s[(i, 0)].norm_sqr()).sum();
        prop_assert!((col - 1.0).abs() < 1e-6);
    }
}
