//! Euler characteristics of ordered configuration spaces of graphs from
//! the valency generating function.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::dconf::dconf_complex_capped;
use crate::caps::Caps;
use crate::error::{ensure_cap, Result};
use crate::graph::Graph;

/// Sign of the vertex factor `1 + s(1 − μ(v))t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GalConvention {
    /// `s = −1`.
    Printed,
    /// `s = +1`, the sign that agrees with direct cell counts.
    Calibrated,
}

/// `χ(Conf_m(g))` for `m = 0..=m_max`, with the calibrated sign.
pub fn gal_euler_series(g: &Graph, m_max: usize) -> Result<Vec<BigInt>> {
    gal_euler_series_with(g, m_max, GalConvention::Calibrated, &Caps::default())
}

/// `m! · [t^m] Π_v (1 + s(1 − μ(v))t) / (1 − t)^{|E|}`.
pub fn gal_euler_series_with(
    g: &Graph,
    m_max: usize,
    convention: GalConvention,
    caps: &Caps,
) -> Result<Vec<BigInt>> {
    ensure_cap(
        "Euler series order",
        m_max as u64,
        caps.max_gal_order as u64,
    )?;
    let s: i64 = match convention {
        GalConvention::Printed => -1,
        GalConvention::Calibrated => 1,
    };
    let mut series = vec![BigInt::zero(); m_max + 1];
    series[0] = BigInt::one();
    for v in 0..g.vertex_count() {
        let a = BigInt::from(s * (1 - g.degree(v) as i64));
        for k in (1..=m_max).rev() {
            let t = &series[k - 1] * &a;
            series[k] += t;
        }
    }
    // Dividing by (1 − t) is a running prefix sum.
    for _ in 0..g.edge_count() {
        for k in 1..=m_max {
            let t = series[k - 1].clone();
            series[k] += t;
        }
    }
    let mut factorial = BigInt::one();
    for (k, c) in series.iter_mut().enumerate() {
        if k > 0 {
            factorial *= k;
        }
        *c *= &factorial;
    }
    Ok(series)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GalCheck {
    pub graph: String,
    pub m: usize,
    pub cellular: i64,
    #[serde(with = "crate::enumeration::decimal")]
    pub printed: BigInt,
    #[serde(with = "crate::enumeration::decimal")]
    pub calibrated: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GalCalibration {
    pub checks: Vec<GalCheck>,
    pub printed_matches: bool,
    pub calibrated_matches: bool,
}

/// Compares both sign conventions with `χ(DConf_m(G^{(m)}))` on the
/// interval, `K_{1,3}`, `K_3` and `K_4` for `m = 1..=3`.
pub fn calibrate_gal(caps: &Caps) -> Result<GalCalibration> {
    let graphs = [
        ("interval", Graph::path(2)),
        ("K_{1,3}", Graph::star(3)),
        ("K_3", Graph::complete(3)),
        ("K_4", Graph::complete(4)),
    ];
    let mut checks = Vec::new();
    for (name, g) in &graphs {
        let printed = gal_euler_series_with(g, 3, GalConvention::Printed, caps)?;
        let calibrated = gal_euler_series_with(g, 3, GalConvention::Calibrated, caps)?;
        for m in 1..=3 {
            let cellular = dconf_complex_capped(g, m, caps)?
                .complex
                .euler_characteristic();
            checks.push(GalCheck {
                graph: (*name).to_string(),
                m,
                cellular,
                printed: printed[m].clone(),
                calibrated: calibrated[m].clone(),
            });
        }
    }
    let printed_matches = checks.iter().all(|c| c.printed == BigInt::from(c.cellular));
    let calibrated_matches = checks
        .iter()
        .all(|c| c.calibrated == BigInt::from(c.cellular));
    Ok(GalCalibration {
        checks,
        printed_matches,
        calibrated_matches,
    })
}
