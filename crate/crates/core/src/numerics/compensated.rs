use super::CNum;

/// Neumaier-compensated accumulator for complex values.
///
/// Real and imaginary parts carry independent compensation terms. The result
/// depends only on the order of `add` calls.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexSum {
    re: f64,
    re_c: f64,
    im: f64,
    im_c: f64,
}

#[inline]
fn neumaier(sum: &mut f64, comp: &mut f64, x: f64) {
    let t = *sum + x;
    if sum.abs() >= x.abs() {
        *comp += (*sum - t) + x;
    } else {
        *comp += (x - t) + *sum;
    }
    *sum = t;
}

impl ComplexSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: CNum) {
        neumaier(&mut self.re, &mut self.re_c, z.re);
        neumaier(&mut self.im, &mut self.im_c, z.im);
    }

    /// Folds another partial sum in, keeping both compensation terms.
    pub fn merge(&mut self, other: &ComplexSum) {
        neumaier(&mut self.re, &mut self.re_c, other.re);
        neumaier(&mut self.re, &mut self.re_c, other.re_c);
        neumaier(&mut self.im, &mut self.im_c, other.im);
        neumaier(&mut self.im, &mut self.im_c, other.im_c);
    }

    pub fn value(&self) -> CNum {
        CNum::new(self.re + self.re_c, self.im + self.im_c)
    }
}

impl Extend<CNum> for ComplexSum {
    fn extend<T: IntoIterator<Item = CNum>>(&mut self, iter: T) {
        for z in iter {
            self.add(z);
        }
    }
}

impl FromIterator<CNum> for ComplexSum {
    fn from_iter<T: IntoIterator<Item = CNum>>(iter: T) -> Self {
        let mut s = ComplexSum::new();
        s.extend(iter);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_cancelled_small_terms() {
        let terms = [1e16, 1.0, -1e16, 1.0];
        let s: ComplexSum = terms.iter().map(|&x| CNum::new(x, -x)).collect();
        assert_eq!(s.value(), CNum::new(2.0, -2.0));
    }

    #[test]
    fn merge_matches_single_pass_for_split_input() {
        let xs: Vec<CNum> = (0..1000)
            .map(|i| CNum::new(1.0 / (i as f64 + 1.0), (-1f64).powi(i) * 1e-3))
            .collect();
        let whole: ComplexSum = xs.iter().copied().collect();
        let mut left: ComplexSum = xs[..400].iter().copied().collect();
        let right: ComplexSum = xs[400..].iter().copied().collect();
        left.merge(&right);
        assert!((whole.value() - left.value()).norm() < 1e-15);
    }
}
