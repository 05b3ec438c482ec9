/// Neumaier-compensated accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if libm::fabs(self.sum) >= libm::fabs(x) {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn merge(&mut self, other: Compensated) {
        self.add(other.sum);
        self.add(other.carry);
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// Length of the blocks summed independently before merging.
pub(crate) const BLOCK: usize = 4096;

/// Sum in fixed-size blocks, merging block partials in order. The result
/// depends only on the input sequence, not on how blocks are scheduled.
pub(crate) fn blocked_sum<I: IntoIterator<Item = f64>>(values: I) -> f64 {
    let mut total = Compensated::default();
    let mut block = Compensated::default();
    let mut n = 0usize;
    for v in values {
        block.add(v);
        n += 1;
        if n == BLOCK {
            total.merge(block);
            block = Compensated::default();
            n = 0;
        }
    }
    total.merge(block);
    total.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_terms() {
        let xs = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(blocked_sum(xs), 2.0);
    }
}
