use super::SParamBlock;
use crate::scalar::{db20, rad_to_deg, Real};

/// Derived quantities of a frequency sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepMetrics<T> {
    /// Widest contiguous region with |S11| at or below the threshold, as a
    /// percentage of its centre frequency. Zero when no point qualifies.
    pub fractional_bandwidth_pct: T,
    /// Edges of that region in hertz.
    pub band: Option<(T, T)>,
    /// −20·log10|S11| per point (positive for a passive match).
    pub return_loss_db: Vec<T>,
    /// Unwrapped ∠S21 in degrees; empty for one-port data.
    pub insertion_phase_deg: Vec<T>,
}

/// (f_hi − f_lo)/f_center × 100 with f_center the arithmetic mean of the edges.
pub fn fractional_bandwidth<T: Real>(f_lo: T, f_hi: T) -> T {
    let center = (f_lo + f_hi) / T::lit(2.0);
    (f_hi - f_lo) / center * T::lit(100.0)
}

/// Continuous phase unwrap in degrees.
///
/// Assumes the grid is fine enough that the true phase moves less than 180°
/// between neighbouring points.
pub fn unwrap_deg<T: Real>(phase: &[T]) -> Vec<T> {
    let full = T::lit(360.0);
    let half = T::lit(180.0);
    let mut out = Vec::with_capacity(phase.len());
    let mut offset = T::zero();
    for (i, &p) in phase.iter().enumerate() {
        if i > 0 {
            let prev = phase[i - 1];
            let d = p - prev;
            if d > half {
                offset -= full;
            } else if d < -half {
                offset += full;
            }
        }
        out.push(p + offset);
    }
    out
}

/// Return loss, unwrapped insertion phase and the widest band with
/// |S11| ≤ `threshold_db` (e.g. −20).
pub fn sweep_metrics<T: Real>(s: &SParamBlock<T>, threshold_db: T) -> SweepMetrics<T> {
    let s11_db: Vec<T> = s.matrices().iter().map(|m| db20(m[(0, 0)].norm())).collect();
    let return_loss_db = s11_db.iter().map(|&x| -x).collect();

    let insertion_phase_deg = if s.ports() >= 2 {
        let raw: Vec<T> = s.matrices().iter().map(|m| rad_to_deg(m[(1, 0)].arg())).collect();
        unwrap_deg(&raw)
    } else {
        Vec::new()
    };

    let freqs = s.freqs();
    let mut best: Option<(usize, usize)> = None;
    let mut start: Option<usize> = None;
    for i in 0..=s11_db.len() {
        let inside = i < s11_db.len() && s11_db[i] <= threshold_db;
        match (inside, start) {
            (true, None) => start = Some(i),
            (false, Some(a)) => {
                let b = i - 1;
                let wider = best.is_none_or(|(x, y)| freqs[b].hz() - freqs[a].hz() > freqs[y].hz() - freqs[x].hz());
                if wider {
                    best = Some((a, b));
                }
                start = None;
            }
            _ => {}
        }
    }
    let band = best.map(|(a, b)| (freqs[a].hz(), freqs[b].hz()));
    let fractional_bandwidth_pct = band.map_or(T::zero(), |(lo, hi)| fractional_bandwidth(lo, hi));

    SweepMetrics {
        fractional_bandwidth_pct,
        band,
        return_loss_db,
        insertion_phase_deg,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::CMatrix;
    use crate::rf::Frequency;
    use num_complex::Complex64;

    #[test]
    fn band_edges_give_ten_percent() {
        assert!((fractional_bandwidth(7.6e9, 8.4e9) - 10.0_f64).abs() < 1e-12);
    }

    #[test]
    fn unwrap_removes_jumps() {
        let raw = [170.0, -170.0, -150.0, 170.0, 10.0];
        let u = unwrap_deg(&raw);
        assert_eq!(u, vec![170.0, 190.0, 210.0, 170.0, 10.0]);
    }

    fn block(s11: &[f64]) -> SParamBlock<f64> {
        let freqs = (0..s11.len()).map(|i| Frequency::new(1e9 + i as f64 * 1e8).unwrap()).collect();
        let data = s11
            .iter()
            .map(|&g| CMatrix::from_rows(&[vec![Complex64::new(g, 0.0)]]))
            .collect();
        SParamBlock::new(freqs, data, vec![50.0]).unwrap()
    }

    #[test]
    fn no_point_below_threshold_is_zero_bandwidth() {
        let m = sweep_metrics(&block(&[0.5, 0.4, 0.3]), -20.0);
        assert_eq!(m.fractional_bandwidth_pct, 0.0);
        assert!(m.band.is_none());
        assert!(m.insertion_phase_deg.is_empty());
    }

    #[test]
    fn widest_region_wins() {
        // regions: [1] and [3..=5]
        let m = sweep_metrics(&block(&[0.5, 0.01, 0.5, 0.05, 0.02, 0.09, 0.5]), -20.0);
        let (lo, hi) = m.band.unwrap();
        assert_eq!((lo, hi), (1.3e9, 1.5e9));
        assert!((m.fractional_bandwidth_pct - 0.2 / 1.4 * 100.0).abs() < 1e-9);
    }
}
