use twinfock_scan::presets::{find_preset, PresetParameters, PRESETS};
use twinfock_scan::spec::{ScanScenario, SweepVariable};

use ScanScenario::{External, Internal, Qfi};
use SweepVariable::{Eta, Phi, R, T1, T2};

/// Fixed values expected per preset.
struct Expected {
    name: &'static str,
    sweep: SweepVariable,
    scenarios: &'static [ScanScenario],
    n: &'static [u32],
    r: &'static [f64],
    phi: &'static [f64],
    transmissivity: &'static [f64],
    eta: &'static [f64],
    nbar: &'static [f64],
}

const ALL_N: &[u32] = &[0, 1, 2, 3];
const BOTH_T: &[f64] = &[0.95, 1.0];
const BOTH_ETA: &[f64] = &[0.8, 1.0];

#[rustfmt::skip]
const EXPECTED: &[Expected] = &[
    Expected { name: "fig3a", sweep: R, scenarios: &[External], n: ALL_N, r: &[], phi: &[0.001], transmissivity: BOTH_T, eta: &[], nbar: &[] },
    Expected { name: "fig3b", sweep: T1, scenarios: &[External], n: ALL_N, r: &[0.7], phi: &[0.05], transmissivity: &[], eta: &[], nbar: &[] },
    Expected { name: "fig4a", sweep: Phi, scenarios: &[External], n: ALL_N, r: &[0.7], phi: &[], transmissivity: BOTH_T, eta: &[], nbar: &[] },
    Expected { name: "fig4b", sweep: Phi, scenarios: &[External], n: ALL_N, r: &[], phi: &[], transmissivity: BOTH_T, eta: &[], nbar: &[8.0] },
    Expected { name: "fig5a", sweep: R, scenarios: &[Internal], n: ALL_N, r: &[], phi: &[0.001], transmissivity: BOTH_T, eta: &[], nbar: &[] },
    Expected { name: "fig5b", sweep: T2, scenarios: &[Internal], n: ALL_N, r: &[0.7], phi: &[0.05], transmissivity: &[], eta: &[], nbar: &[] },
    Expected { name: "fig6a", sweep: Phi, scenarios: &[Internal], n: ALL_N, r: &[0.7], phi: &[], transmissivity: BOTH_T, eta: &[], nbar: &[] },
    Expected { name: "fig6b", sweep: Phi, scenarios: &[Internal], n: ALL_N, r: &[], phi: &[], transmissivity: BOTH_T, eta: &[], nbar: &[8.0] },
    Expected { name: "fig7", sweep: T1, scenarios: &[External, Internal], n: ALL_N, r: &[0.7], phi: &[0.05], transmissivity: &[], eta: &[], nbar: &[] },
    Expected { name: "fig8a", sweep: R, scenarios: &[External, Internal], n: &[0], r: &[], phi: &[0.2], transmissivity: &[0.96], eta: &[], nbar: &[] },
    Expected { name: "fig8b", sweep: R, scenarios: &[External, Internal], n: &[1], r: &[], phi: &[0.15], transmissivity: &[0.95], eta: &[], nbar: &[] },
    Expected { name: "fig8c", sweep: R, scenarios: &[External, Internal], n: &[2], r: &[], phi: &[0.12], transmissivity: &[0.95], eta: &[], nbar: &[] },
    Expected { name: "fig8d", sweep: R, scenarios: &[External, Internal], n: &[3], r: &[], phi: &[0.1], transmissivity: &[0.95], eta: &[], nbar: &[] },
    Expected { name: "fig10", sweep: Eta, scenarios: &[Qfi], n: ALL_N, r: &[0.7], phi: &[], transmissivity: &[], eta: &[], nbar: &[] },
    Expected { name: "fig11a", sweep: R, scenarios: &[Qfi], n: ALL_N, r: &[], phi: &[], transmissivity: &[], eta: BOTH_ETA, nbar: &[] },
    Expected { name: "fig11b", sweep: R, scenarios: &[Qfi], n: ALL_N, r: &[], phi: &[], transmissivity: &[], eta: BOTH_ETA, nbar: &[] },
    Expected { name: "fig12a", sweep: R, scenarios: &[Qfi], n: &[0], r: &[], phi: &[], transmissivity: &[], eta: BOTH_ETA, nbar: &[] },
    Expected { name: "fig12b", sweep: R, scenarios: &[Qfi], n: &[1], r: &[], phi: &[], transmissivity: &[], eta: BOTH_ETA, nbar: &[] },
    Expected { name: "fig12c", sweep: R, scenarios: &[Qfi], n: &[2], r: &[], phi: &[], transmissivity: &[], eta: BOTH_ETA, nbar: &[] },
    Expected { name: "fig12d", sweep: R, scenarios: &[Qfi], n: &[3], r: &[], phi: &[], transmissivity: &[], eta: BOTH_ETA, nbar: &[] },
];

#[test]
fn preset_parameters_match_expected() {
    assert_eq!(EXPECTED.len(), PRESETS.len());
    for c in EXPECTED {
        let expected = PresetParameters {
            sweep: c.sweep,
            scenarios: c.scenarios.to_vec(),
            n: c.n.to_vec(),
            r: c.r.to_vec(),
            phi: c.phi.to_vec(),
            transmissivity: c.transmissivity.to_vec(),
            eta: c.eta.to_vec(),
            nbar: c.nbar.to_vec(),
        };
        assert_eq!(find_preset(c.name).unwrap().parameters(), expected, "{}", c.name);
    }
}

#[test]
fn fig7_pairs_internal_and_external_per_n() {
    let series = find_preset("fig7").unwrap().series();
    for n in 0..=3 {
        let ext = series.iter().find(|s| s.name == format!("external_n{n}")).unwrap();
        let int = series.iter().find(|s| s.name == format!("internal_n{n}")).unwrap();
        assert_eq!(ext.spec.sweep_variable, T1);
        assert_eq!(int.spec.sweep_variable, T2);
        assert_eq!(ext.spec.range, int.spec.range);
    }
}

#[test]
fn fig8_emits_fixed_and_optimised_phase() {
    for name in ["fig8a", "fig8b", "fig8c", "fig8d"] {
        for s in find_preset(name).unwrap().series() {
            let cols: Vec<_> = s.spec.outputs.iter().map(|c| c.name()).collect();
            for wanted in ["sensitivity", "sensitivity_opt", "phi_opt", "sql", "hl"] {
                assert!(cols.contains(&wanted), "{name}/{}: missing {wanted}", s.name);
            }
        }
    }
}
