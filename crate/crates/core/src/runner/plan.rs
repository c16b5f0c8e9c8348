use serde::{Deserialize, Serialize};

use super::{Modulation, RunConfig, RunError, Shaping};
use crate::shaping::{
    achievable_net_rate, required_entropy, solve_nu, PamConstellation, Polarity, ShapingError,
    DEFAULT_ENTROPY_TOL,
};

/// One row of the rate table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanRow {
    pub modulation: String,
    pub shaping: String,
    pub symbol_rate_gbd: f64,
    pub entropy: f64,
    pub ps_overhead: f64,
    pub net_rate_gbps: f64,
    pub nu_cap: f64,
    pub nu_cup: f64,
    /// Set when the format misses the requested net rate by more than 1 %.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

fn infeasible(e: ShapingError) -> RunError {
    RunError::Infeasible(e.to_string())
}

/// Rate bookkeeping for one format. Shaped formats derive their entropy
/// from the net-rate target unless `entropy` overrides it; uniform formats
/// carry their full label rate.
pub fn plan_row(
    modulation: Modulation,
    shaping: Shaping,
    symbol_rate_gbd: f64,
    net_rate_gbps: f64,
    fec_overhead: f64,
    entropy: Option<f64>,
) -> Result<PlanRow, RunError> {
    let m = modulation.bits_per_symbol();
    let h = match (shaping, entropy) {
        (_, Some(h)) => h,
        (Shaping::Uniform, None) => m,
        (_, None) => required_entropy(net_rate_gbps, symbol_rate_gbd, fec_overhead, m).map_err(infeasible)?,
    };
    let net = achievable_net_rate(h, symbol_rate_gbd, fec_overhead, m).map_err(infeasible)?;
    let (nu_cap, nu_cup) = if modulation == Modulation::Pam8 && h < m {
        let c = PamConstellation::new(8).expect("PAM-8");
        (
            solve_nu(&c, Polarity::Cap, h, DEFAULT_ENTROPY_TOL).map_err(infeasible)?,
            solve_nu(&c, Polarity::Cup, h, DEFAULT_ENTROPY_TOL).map_err(infeasible)?,
        )
    } else {
        (0.0, 0.0)
    };
    let note = ((net - net_rate_gbps).abs() > 0.01 * net_rate_gbps).then(|| {
        format!("carries {net:.2} Gbit/s net, not the {net_rate_gbps} Gbit/s target")
    });
    Ok(PlanRow {
        modulation: modulation.as_str().into(),
        shaping: shaping.as_str().into(),
        symbol_rate_gbd,
        entropy: h,
        ps_overhead: m - h,
        net_rate_gbps: net,
        nu_cap,
        nu_cup,
        note,
    })
}

/// Rate table for the configured format.
pub fn cmd_plan(cfg: &RunConfig) -> Result<PlanRow, RunError> {
    plan_row(cfg.modulation, cfg.shaping, cfg.symbol_rate_gbd, cfg.net_rate_gbps, cfg.fec_overhead, cfg.entropy)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shaped_matrix() {
        for (rs, h) in [(75.0, 2.8629), (80.0, 2.6963), (85.0, 2.5492), (90.0, 2.4185)] {
            let row = plan_row(Modulation::Pam8, Shaping::Cap, rs, 200.0, 0.07, None).unwrap();
            assert!((row.entropy - h).abs() < 5e-5);
            assert!((row.net_rate_gbps - 200.0).abs() < 1e-9);
            assert!(row.nu_cap > 0.0 && row.nu_cup > 0.0);
            assert!(row.note.is_none());
        }
        let row = plan_row(Modulation::Pam8, Shaping::Cup, 90.0, 200.0, 0.07, None).unwrap();
        assert!((row.ps_overhead - 0.5815).abs() < 5e-5);
    }

    #[test]
    fn uniform_rows() {
        let pam4 = plan_row(Modulation::Pam4, Shaping::Uniform, 107.0, 200.0, 0.07, None).unwrap();
        assert!((pam4.net_rate_gbps - 200.0).abs() < 0.01);
        assert!(pam4.note.is_none());
        let pam6 = plan_row(Modulation::Pam6, Shaping::Uniform, 83.0, 200.0, 0.07, None).unwrap();
        assert!((pam6.net_rate_gbps - 193.93).abs() < 0.01);
        assert!(pam6.note.is_some());
    }

    #[test]
    fn infeasible_plan() {
        let err = plan_row(Modulation::Pam8, Shaping::Cap, 60.0, 200.0, 0.07, None).unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
