use num_complex::Complex64;

/// Multiset of complex values with tolerance-aware matching.
///
/// Values are kept in a canonical order (by real part, then imaginary
/// part) so that every operation is independent of insertion order.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    values: Vec<Complex64>,
}

impl Spectrum {
    pub fn new(mut values: Vec<Complex64>) -> Self {
        values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        Self { values }
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min_re(&self) -> Option<f64> {
        self.values
            .iter()
            .map(|v| v.re)
            .min_by(f64::total_cmp)
    }

    /// Removes the single value closest to `target` and returns it with
    /// the remaining multiset. Ties break toward the canonically first
    /// value, so the result does not depend on construction order.
    pub fn remove_closest(&self, target: Complex64) -> Option<(Complex64, Spectrum)> {
        let idx = self
            .values
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| (*a - target).norm().total_cmp(&(*b - target).norm()))
            .map(|(i, _)| i)?;
        let mut rest = self.values.clone();
        let removed = rest.remove(idx);
        Some((removed, Spectrum { values: rest }))
    }

    /// Greedy closest-pair matching distance against another multiset of
    /// the same size; `None` when the sizes differ.
    pub fn matching_distance(&self, other: &Spectrum) -> Option<f64> {
        if self.len() != other.len() {
            return None;
        }
        let mut left: Vec<Complex64> = self.values.clone();
        let mut right: Vec<Complex64> = other.values.clone();
        let mut worst = 0.0f64;
        while let Some((i, j, d)) = closest_pair(&left, &right) {
            worst = worst.max(d);
            left.remove(i);
            right.remove(j);
        }
        Some(worst)
    }

    /// True when the two multisets agree pairwise within `tol`.
    pub fn matches(&self, other: &Spectrum, tol: f64) -> bool {
        self.matching_distance(other).is_some_and(|d| d <= tol)
    }
}

fn closest_pair(left: &[Complex64], right: &[Complex64]) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            let d = (a - b).norm();
            if best.is_none_or(|(_, _, bd)| d < bd) {
                best = Some((i, j, d));
            }
        }
    }
    best
}

impl FromIterator<Complex64> for Spectrum {
    fn from_iter<T: IntoIterator<Item = Complex64>>(iter: T) -> Self {
        Self::new(iter.into_iter().collect())
    }
}
