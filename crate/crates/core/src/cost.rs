//! Latency/energy constants for the counted cost model.

use serde::{Deserialize, Serialize};

/// Latency in nanoseconds, energy in picojoules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpCost {
    pub latency_ns: f64,
    pub energy_pj: f64,
}

impl OpCost {
    pub const ZERO: OpCost = OpCost { latency_ns: 0.0, energy_pj: 0.0 };

    pub fn scale(self, n: f64) -> OpCost {
        OpCost { latency_ns: self.latency_ns * n, energy_pj: self.energy_pj * n }
    }
}

impl core::ops::Add for OpCost {
    type Output = OpCost;
    fn add(self, rhs: OpCost) -> OpCost {
        OpCost {
            latency_ns: self.latency_ns + rhs.latency_ns,
            energy_pj: self.energy_pj + rhs.energy_pj,
        }
    }
}

impl core::ops::AddAssign for OpCost {
    fn add_assign(&mut self, rhs: OpCost) {
        *self = *self + rhs;
    }
}

/// Per-operation costs of the modeled circuit blocks. Defaults are the
/// 32nm single-level-cell ReRAM crossbar, SRAM buffer, and 8-bit ADC
/// numbers the simulator ships with; every field can be overridden from
/// the CLI or a JSON file.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct CostModel {
    pub read_bit: OpCost,
    pub write_bit: OpCost,
    pub sense_amp: OpCost,
    pub buffer_access: OpCost,
    pub adc_access: OpCost,
    pub data_width_bits: u32,
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            read_bit: OpCost { latency_ns: 1.3, energy_pj: 1.1 },
            write_bit: OpCost { latency_ns: 20.2, energy_pj: 4.9 },
            sense_amp: OpCost { latency_ns: 1.0, energy_pj: 1.0 },
            buffer_access: OpCost { latency_ns: 0.31, energy_pj: 29.0 },
            adc_access: OpCost { latency_ns: 1.0, energy_pj: 2.0 },
            data_width_bits: 8,
        }
    }
}

impl CostModel {
    pub fn validate(&self) -> crate::error::Result<()> {
        let fields = [
            self.read_bit,
            self.write_bit,
            self.sense_amp,
            self.buffer_access,
            self.adc_access,
        ];
        for f in fields {
            if !(f.latency_ns >= 0.0) || !(f.energy_pj >= 0.0) {
                return Err(crate::error::Error::Config(
                    "cost model latencies and energies must be nonnegative".into(),
                ));
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_valid() {
        let m = CostModel::default();
        m.validate().unwrap();
        assert_eq!(m.write_bit.latency_ns, 20.2);
        assert_eq!(m.write_bit.energy_pj, 4.9);
        assert_eq!(m.data_width_bits, 8);
    }

    #[test]
    fn rejects_negative() {
        let mut m = CostModel::default();
        m.read_bit.energy_pj = -1.0;
        assert!(m.validate().is_err());
    }
}
