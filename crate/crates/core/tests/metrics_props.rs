use proptest::prelude::*;

use pamlink::metrics::{sensitivity, BerCurve, SensitivityStatus, HD_FEC_THRESHOLD};

/// Waterfall with log10 BER falling from `start` by the given positive steps
/// over ROPs spaced 1 dB apart.
fn waterfall(start: f64, drops: &[f64]) -> Vec<(f64, f64)> {
    let mut lb = start;
    let mut pts = vec![(-20.0, 10f64.powf(lb))];
    for (i, d) in drops.iter().enumerate() {
        lb -= d;
        pts.push((-19.0 + i as f64, 10f64.powf(lb)));
    }
    pts
}

proptest! {
    #[test]
    fn improving_every_point_never_worsens_sensitivity(
        start in -1.5f64..-0.5,
        drops in proptest::collection::vec(0.05f64..1.0, 1..12),
    ) {
        let pts = waterfall(start, &drops);
        let better: Vec<(f64, f64)> = pts.iter().map(|&(r, b)| (r, b / 10.0)).collect();
        let a = sensitivity(&BerCurve::synthetic(&pts, 1_000_000).unwrap(), HD_FEC_THRESHOLD).unwrap();
        let b = sensitivity(&BerCurve::synthetic(&better, 1_000_000).unwrap(), HD_FEC_THRESHOLD).unwrap();
        match (a.status, b.status) {
            (SensitivityStatus::Reached, SensitivityStatus::Reached) => {
                prop_assert!(b.rop_at_threshold.unwrap() <= a.rop_at_threshold.unwrap() + 1e-12);
            }
            (SensitivityStatus::Reached, SensitivityStatus::BelowSweep) => {}
            (SensitivityStatus::NotReached, _) => {}
            (SensitivityStatus::BelowSweep, s) => prop_assert_eq!(s, SensitivityStatus::BelowSweep),
            (x, y) => prop_assert!(false, "unexpected transition {:?} -> {:?}", x, y),
        }
    }

    #[test]
    fn threshold_at_a_measured_point_returns_it(
        start in -1.5f64..-0.5,
        drops in proptest::collection::vec(0.05f64..1.0, 2..10),
        pick in 0usize..10,
    ) {
        let pts = waterfall(start, &drops);
        let (rop, ber) = pts[pick % pts.len()];
        let r = sensitivity(&BerCurve::synthetic(&pts, 1_000_000).unwrap(), ber).unwrap();
        prop_assert_eq!(r.rop_at_threshold, Some(rop));
    }

    #[test]
    fn reached_result_lies_inside_bracket(
        start in -1.5f64..-0.5,
        drops in proptest::collection::vec(0.05f64..1.0, 1..12),
    ) {
        let pts = waterfall(start, &drops);
        let r = sensitivity(&BerCurve::synthetic(&pts, 1_000_000).unwrap(), HD_FEC_THRESHOLD).unwrap();
        if let Some((a, b)) = r.bracket {
            let rop = r.rop_at_threshold.unwrap();
            prop_assert!(a.rop_dbm <= rop && rop <= b.rop_dbm);
            prop_assert!(a.ber > HD_FEC_THRESHOLD && b.ber < HD_FEC_THRESHOLD);
        }
    }
}
