use crate::drag::Scenario;

pub const VELOCITIES: [f64; 5] = [1.0, 2.5, 5.0, 7.5, 10.0];
/// Percent.
pub const INTENSITIES: [f64; 5] = [0.1, 2.0, 5.0, 10.0, 20.0];
pub const N_SCENARIOS: usize = VELOCITIES.len() * INTENSITIES.len();

/// Scenario whose optimum is design D1 (1 m/s, 0.1%).
pub const D1_SCENARIO: usize = 0;
/// Scenario whose optimum is design D2 (10 m/s, 20%).
pub const D2_SCENARIO: usize = N_SCENARIOS - 1;

/// The 25 operating points, row-major by velocity then intensity.
pub fn scenario_matrix() -> Vec<Scenario<f64>> {
    VELOCITIES
        .iter()
        .flat_map(|&u| INTENSITIES.iter().map(move |&i| Scenario::new(u, i)))
        .collect()
}

pub fn scenario_label(s: &Scenario<f64>) -> String {
    format!("U{}_I{}", s.velocity, s.turbulence_intensity)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matrix_layout() {
        let m = scenario_matrix();
        assert_eq!(m.len(), 25);
        assert_eq!(m[0], Scenario::new(1.0, 0.1));
        assert_eq!(m[1], Scenario::new(1.0, 2.0));
        assert_eq!(m[5], Scenario::new(2.5, 0.1));
        assert_eq!(m[24], Scenario::new(10.0, 20.0));
        for i in 0..m.len() {
            for j in 0..i {
                assert_ne!(m[i], m[j]);
            }
        }
        assert_eq!(scenario_label(&m[5]), "U2.5_I0.1");
    }
}
