use std::fmt;

/// `log2(n)` for a positive integer `n`, kept symbolic for display and exact comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Log2(pub u64);

impl Log2 {
    pub fn value(&self) -> f64 {
        (self.0 as f64).log2()
    }

    /// The `Log2(n)` with `n ≤ 4096` whose value is within `tol` of `bits`.
    pub fn recognize(bits: f64, tol: f64) -> Option<Log2> {
        if !bits.is_finite() || bits < -tol || bits > 12.0 + tol {
            return None;
        }
        let n = bits.exp2().round().max(1.0) as u64;
        let cand = Log2(n);
        ((cand.value() - bits).abs() <= tol).then_some(cand)
    }

    /// `3` for powers of two, `log2(6)` otherwise.
    pub fn symbolic(&self) -> String {
        if self.0.is_power_of_two() {
            self.0.trailing_zeros().to_string()
        } else {
            format!("log2({})", self.0)
        }
    }
}

impl fmt::Display for Log2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.symbolic())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symbolic_forms() {
        assert_eq!(Log2(1).symbolic(), "0");
        assert_eq!(Log2(8).symbolic(), "3");
        assert_eq!(Log2(6).symbolic(), "log2(6)");
        assert_eq!(Log2::recognize(6f64.log2() + 1e-10, 1e-9), Some(Log2(6)));
        assert_eq!(Log2::recognize(2.5, 1e-9), None);
        assert_eq!(Log2::recognize(0.0, 1e-9), Some(Log2(1)));
    }
}
