//! Deterministic compensated summation.
//!
//! Every reduction that feeds a report or a conservation audit goes through
//! [`NeumaierSum`] in a fixed iteration order, so results do not depend on
//! thread count.

/// Neumaier (improved Kahan) accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Compensated sum of an iterator in its own order.
pub fn sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut acc = NeumaierSum::new();
    for v in values {
        acc.add(v);
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancellation() {
        // 1 + 1e100 - 1e100 loses the 1 under naive summation
        let v = sum([1.0, 1e100, -1e100]);
        assert_eq!(v, 1.0);
    }

    #[test]
    fn many_small_terms() {
        let n = 1_000_000;
        let v = sum((0..n).map(|_| 0.1));
        assert!((v - 0.1 * n as f64).abs() < 1e-7);
    }
}
