mod common;

use common::{probe_grid, scenario, KINDS, PHASES, SUBSYSTEMS, TIMES};
use ybqfi::qfi::{qfi_spectral, SpectralStencil};
use ybqfi::{qfi, QfiMethod, QfiSettings, Subsystem};

#[test]
fn pair_and_spectral_routes_agree_on_every_grid() {
    let settings = QfiSettings::default();
    let mut worst: f64 = 0.0;
    for kind in KINDS {
        for probe in probe_grid() {
            for sub in SUBSYSTEMS {
                let s = scenario(kind, probe, sub);
                for t in TIMES {
                    for phi in PHASES {
                        let a = qfi(&s, phi, t, QfiMethod::SldPair, &settings).unwrap().value;
                        let b = qfi(&s, phi, t, QfiMethod::Spectral, &settings).unwrap().value;
                        worst = worst.max((a - b).abs());
                        assert!((a - b).abs() <= 1e-6, "{s} phi={phi} t={t}: {a} vs {b}");
                    }
                }
            }
        }
    }
    println!("worst pair/spectral difference {worst:.3e}");
}

#[test]
fn generator_route_agrees_on_full_states() {
    let settings = QfiSettings::default();
    for kind in KINDS {
        for probe in probe_grid() {
            let s = scenario(kind, probe, Subsystem::Full);
            for t in TIMES {
                for phi in PHASES {
                    let a = qfi(&s, phi, t, QfiMethod::SldPair, &settings).unwrap().value;
                    let c = qfi(&s, phi, t, QfiMethod::Generator, &settings).unwrap().value;
                    assert!((a - c).abs() <= 1e-6, "{s} phi={phi} t={t}: {a} vs {c}");
                }
            }
        }
    }
}

#[test]
fn unitary_families_have_no_classical_term() {
    for kind in KINDS {
        for probe in probe_grid() {
            let s = scenario(kind, probe, Subsystem::Full);
            for t in TIMES {
                for phi in PHASES {
                    let stencil = SpectralStencil::build(&s, phi, t, 1e-5).unwrap();
                    let out = qfi_spectral(&stencil, 1e-10).unwrap();
                    assert!(out.classical <= 1e-8, "{s} phi={phi} t={t}: {}", out.classical);
                }
            }
        }
    }
}
