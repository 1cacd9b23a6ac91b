//! Coefficient vectors for algebra elements and linear functionals.

use std::ops::{Add, Index, Neg, Sub};

use numeric_core::{c64, C64};

macro_rules! coefficient_vector {
    ($name:ident, $what:literal) => {
        #[doc = concat!("Coefficients of ", $what, ".")]
        #[derive(Clone, Debug, PartialEq)]
        pub struct $name(Vec<C64>);

        impl $name {
            /// Wrap a coefficient vector.
            pub fn new(coeffs: Vec<C64>) -> Self {
                Self(coeffs)
            }

            /// All-zero vector of length `n`.
            pub fn zeros(n: usize) -> Self {
                Self(vec![c64(0.0, 0.0); n])
            }

            /// The `i`-th basis vector of length `n`.
            pub fn basis(n: usize, i: usize) -> Self {
                let mut v = Self::zeros(n);
                v.0[i] = c64(1.0, 0.0);
                v
            }

            /// Build from real coefficients.
            pub fn from_real(coeffs: &[f64]) -> Self {
                Self(coeffs.iter().map(|&x| c64(x, 0.0)).collect())
            }

            /// Number of coefficients.
            pub fn len(&self) -> usize {
                self.0.len()
            }

            /// Whether the vector has no coefficients.
            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            /// Coefficient slice.
            pub fn coeffs(&self) -> &[C64] {
                &self.0
            }

            /// Consume into the coefficient vector.
            pub fn into_coeffs(self) -> Vec<C64> {
                self.0
            }

            /// Multiply by a complex scalar.
            pub fn scale(&self, s: C64) -> Self {
                Self(self.0.iter().map(|z| z * s).collect())
            }

            /// Multiply by a real scalar.
            pub fn scale_real(&self, s: f64) -> Self {
                self.scale(c64(s, 0.0))
            }

            /// Entrywise complex conjugate of the coefficients.
            pub fn conj(&self) -> Self {
                Self(self.0.iter().map(|z| z.conj()).collect())
            }

            /// In-place `self += s · other`.
            pub fn axpy(&mut self, s: C64, other: &Self) {
                assert_eq!(self.len(), other.len());
                for (a, b) in self.0.iter_mut().zip(&other.0) {
                    *a += s * b;
                }
            }

            /// Largest coefficient modulus.
            pub fn max_abs(&self) -> f64 {
                self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
            }

            /// Largest coefficient modulus of `self - other`.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                assert_eq!(self.len(), other.len());
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| (a - b).norm())
                    .fold(0.0, f64::max)
            }

            /// Sum of coefficient moduli.
            pub fn norm1(&self) -> f64 {
                self.0.iter().map(|z| z.norm()).sum()
            }
        }

        impl Index<usize> for $name {
            type Output = C64;
            fn index(&self, i: usize) -> &C64 {
                &self.0[i]
            }
        }

        impl Add for &$name {
            type Output = $name;
            fn add(self, rhs: &$name) -> $name {
                assert_eq!(self.len(), rhs.len());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
            }
        }

        impl Sub for &$name {
            type Output = $name;
            fn sub(self, rhs: &$name) -> $name {
                assert_eq!(self.len(), rhs.len());
                $name(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
            }
        }

        impl Neg for &$name {
            type Output = $name;
            fn neg(self) -> $name {
                self.scale_real(-1.0)
            }
        }
    };
}

coefficient_vector!(AlgebraElement, "an algebra element over the basis `e_i`");
coefficient_vector!(Functional, "a linear functional over the dual basis `e^i`");

impl Functional {
    /// Evaluate on an element: `Σ_i f_i x_i`.
    pub fn apply(&self, x: &AlgebraElement) -> C64 {
        assert_eq!(self.len(), x.len());
        self.0.iter().zip(x.coeffs()).map(|(f, c)| f * c).sum()
    }

    /// Reinterpret the coefficients as an element on the same index set.
    ///
    /// This is the identification used for elements of the dual algebra.
    pub fn to_element(&self) -> AlgebraElement {
        AlgebraElement::new(self.0.clone())
    }
}

impl AlgebraElement {
    /// Reinterpret the coefficients as a functional on the same index set.
    pub fn to_functional(&self) -> Functional {
        Functional::new(self.0.clone())
    }
}
