use crate::weight::Scalar;

/// A finitely supported function on `N` with the Dirichlet convention
/// `phi(0) = 0`.
///
/// Stored densely over `1..=N`; evaluation outside that window is zero.
#[derive(Clone, Debug, PartialEq)]
pub struct CompactSequence<T = f64> {
    values: Vec<T>,
}

impl<T: Scalar> CompactSequence<T> {
    /// `values[i]` becomes `phi(i + 1)`.
    pub fn new(values: Vec<T>) -> Self {
        Self { values }
    }

    /// The zero sequence with support bound `N = 0`.
    pub fn empty() -> Self {
        Self { values: Vec::new() }
    }

    /// Unit mass at `n >= 1`.
    pub fn delta(n: u64) -> Self {
        assert!(n >= 1, "delta is defined on N");
        let mut values = vec![T::zero(); n as usize];
        values[n as usize - 1] = T::one();
        Self { values }
    }

    /// Samples `f` on `1..=support`.
    pub fn from_fn(support: u64, f: impl FnMut(u64) -> T) -> Self {
        Self {
            values: (1..=support).map(f).collect(),
        }
    }

    /// The support bound `N`.
    pub fn support(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn get(&self, n: u64) -> T {
        if n == 0 {
            return T::zero();
        }
        self.values
            .get((n - 1) as usize)
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Values on `1..=N`.
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn into_values(self) -> Vec<T> {
        self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// Pointwise map over `1..=N`.
    pub fn map(&self, mut f: impl FnMut(u64, &T) -> T) -> Self {
        Self {
            values: self
                .values
                .iter()
                .enumerate()
                .map(|(i, v)| f(i as u64 + 1, v))
                .collect(),
        }
    }

    /// Extends the support bound to at least `support` with zeros.
    pub fn padded(&self, support: u64) -> Self {
        let mut values = self.values.clone();
        if (support as usize) > values.len() {
            values.resize(support as usize, T::zero());
        }
        Self { values }
    }
}
