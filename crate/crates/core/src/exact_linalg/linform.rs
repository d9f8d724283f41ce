use std::collections::BTreeMap;

use num_traits::Zero;

use super::reduce::{RowReducer, SparseRow};
use super::scalar::{Field, GaussRational, Rational};

/// A complex-valued real-linear form `Σ c_v·x_v` in real unknowns `x_v`.
///
/// A complex unknown `z` is stored as two adjacent real unknowns
/// `(Re z, Im z)`; the `*_complex` helpers address it by its first index.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ComplexLinearForm {
    terms: BTreeMap<usize, GaussRational>,
}

impl ComplexLinearForm {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, var: usize, coef: &GaussRational) {
        if Field::is_zero(coef) {
            return;
        }
        let e = self.terms.entry(var).or_default();
        *e = &*e + coef;
    }

    pub fn add_real(&mut self, var: usize, coef: &Rational) {
        self.add(var, &GaussRational::real(coef.clone()));
    }

    /// Adds `coef·z` for the complex unknown `z` at `var`.
    pub fn add_complex(&mut self, var: usize, coef: &GaussRational) {
        self.add(var, coef);
        self.add(var + 1, &(coef * &GaussRational::i()));
    }

    /// Adds `coef·conj(z)` for the complex unknown `z` at `var`.
    pub fn add_conj(&mut self, var: usize, coef: &GaussRational) {
        self.add(var, coef);
        self.add(var + 1, &-&(coef * &GaussRational::i()));
    }

    pub fn add_form(&mut self, other: &ComplexLinearForm, scale: &GaussRational) {
        for (v, c) in &other.terms {
            self.add(*v, &(c * scale));
        }
    }

    fn part(&self, f: impl Fn(&GaussRational) -> &Rational) -> SparseRow<Rational> {
        self.terms
            .iter()
            .filter(|(_, c)| !Zero::is_zero(f(c)))
            .map(|(v, c)| (*v, f(c).clone()))
            .collect()
    }

    pub fn re_row(&self) -> SparseRow<Rational> {
        self.part(|c| &c.re)
    }

    pub fn im_row(&self) -> SparseRow<Rational> {
        self.part(|c| &c.im)
    }

    /// Imposes `form = 0` (both real and imaginary parts).
    pub fn impose(&self, red: &mut RowReducer<Rational>) {
        red.push(self.re_row());
        red.push(self.im_row());
    }

    /// Imposes `Re form = 0` only.
    pub fn impose_re(&self, red: &mut RowReducer<Rational>) {
        red.push(self.re_row());
    }

    /// Imposes `Im form = 0` only.
    pub fn impose_im(&self, red: &mut RowReducer<Rational>) {
        red.push(self.im_row());
    }

    pub fn eval(&self, x: &[Rational]) -> GaussRational {
        self.terms
            .iter()
            .fold(GaussRational::default(), |acc, (v, c)| &acc + &c.scale(&x[*v]))
    }
}
