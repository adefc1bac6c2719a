//! Tits endomorphisms of K: field endomorphisms θ with θ² = Frobenius.

use super::poly::Gf2Poly;
use super::ratfn::RatFn;
use super::FieldError;

#[derive(Clone, Debug, PartialEq)]
enum Shape {
    /// α ↦ β², β ↦ α. Maps monomials to monomials and has image F₂(α, β²).
    Standard,
    /// Arbitrary images, applied by substitution.
    General,
}

/// A Tits endomorphism of K, given by the images of the two generators.
#[derive(Clone, Debug, PartialEq)]
pub struct TitsEndoK {
    image_alpha: RatFn,
    image_beta: RatFn,
    shape: Shape,
}

impl Default for TitsEndoK {
    fn default() -> Self {
        Self::standard()
    }
}

impl TitsEndoK {
    /// The endomorphism with β ↦ α, which forces α ↦ β².
    pub fn standard() -> Self {
        TitsEndoK {
            image_alpha: RatFn::monomial(0, 2),
            image_beta: RatFn::alpha(),
            shape: Shape::Standard,
        }
    }

    /// Validate generator images: applying the substitution twice must give
    /// α², β² on the generators.
    pub fn new(image_alpha: RatFn, image_beta: RatFn) -> Result<Self, FieldError> {
        let std = Self::standard();
        if image_alpha == std.image_alpha && image_beta == std.image_beta {
            return Ok(std);
        }
        let cand = TitsEndoK {
            image_alpha,
            image_beta,
            shape: Shape::General,
        };
        let a2 = cand.apply(&cand.image_alpha);
        let b2 = cand.apply(&cand.image_beta);
        if a2 != RatFn::monomial(2, 0) || b2 != RatFn::monomial(0, 2) {
            return Err(FieldError::NotTitsEndomorphism);
        }
        Ok(cand)
    }

    pub fn image_alpha(&self) -> &RatFn {
        &self.image_alpha
    }

    pub fn image_beta(&self) -> &RatFn {
        &self.image_beta
    }

    /// Whether this is the standard θ (β ↦ α, α ↦ β²).
    pub fn is_standard(&self) -> bool {
        self.shape == Shape::Standard
    }

    pub fn apply(&self, x: &RatFn) -> RatFn {
        if x.is_overflow() {
            return RatFn::overflow();
        }
        match self.shape {
            Shape::Standard => {
                // θ is injective with a coprimality-preserving image, so the
                // images of a reduced pair stay reduced
                RatFn::from_coprime(theta_std_poly(x.num()), theta_std_poly(x.den()))
            }
            Shape::General => &self.apply_poly(x.num()) / &self.apply_poly(x.den()),
        }
    }

    /// θ of a polynomial, as an element of K.
    pub fn apply_poly(&self, p: &Gf2Poly) -> RatFn {
        match self.shape {
            Shape::Standard => RatFn::from_poly(theta_std_poly(p)),
            Shape::General => {
                // Horner in α over rows evaluated in β
                let mut acc = RatFn::zero();
                let Some(deg) = p.degree_alpha() else {
                    return acc;
                };
                for i in (0..=deg).rev() {
                    acc = &acc * &self.image_alpha;
                    let mut row = RatFn::zero();
                    for j in p.rows()[i].exponents() {
                        row = &row + &self.image_beta.pow(j as u32);
                    }
                    acc = &acc + &row;
                }
                acc
            }
        }
    }

    /// Tits trace x^θ + x.
    pub fn trace(&self, x: &RatFn) -> RatFn {
        &self.apply(x) + x
    }

    /// θ⁻¹ on the image F = K^θ, available for the standard θ only.
    /// Returns `Ok(None)` when `x ∉ F`.
    pub fn preimage(&self, x: &RatFn) -> Result<Option<RatFn>, FieldError> {
        if !self.is_standard() {
            return Err(FieldError::Unsupported(
                "θ⁻¹ is only implemented for the standard θ",
            ));
        }
        let back = |p: &Gf2Poly| -> Option<Gf2Poly> {
            if p.terms().any(|(_, j)| j % 2 == 1) {
                return None;
            }
            // θ(α^i β^j) = α^j β^{2i}
            Some(p.map_monomials(|i, j| (j / 2, i)))
        };
        Ok(match (back(x.num()), back(x.den())) {
            (Some(n), Some(d)) => Some(RatFn::from_coprime(n, d)),
            _ => None,
        })
    }
}

fn theta_std_poly(p: &Gf2Poly) -> Gf2Poly {
    p.map_monomials(|i, j| (j, 2 * i))
}

/// The Frobenius x ↦ x².
pub fn frobenius(x: &RatFn) -> RatFn {
    x.square()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_images() {
        let t = TitsEndoK::standard();
        assert_eq!(t.apply(&RatFn::beta()), RatFn::alpha());
        assert_eq!(t.apply(&RatFn::alpha()), RatFn::monomial(0, 2));
    }

    #[test]
    fn general_path_agrees_with_standard_path() {
        let general = TitsEndoK {
            image_alpha: RatFn::monomial(0, 2),
            image_beta: RatFn::alpha(),
            shape: Shape::General,
        };
        let x = RatFn::new(
            Gf2Poly::from_terms([(2, 1), (0, 0), (1, 3)]),
            Gf2Poly::from_terms([(1, 0), (0, 1)]),
        )
        .unwrap();
        assert_eq!(general.apply(&x), TitsEndoK::standard().apply(&x));
    }

    #[test]
    fn rejects_non_tits_images() {
        assert_eq!(
            TitsEndoK::new(RatFn::beta(), RatFn::alpha()),
            Err(FieldError::NotTitsEndomorphism)
        );
        // the mirror-image endomorphism α ↦ β, β ↦ α² is accepted
        assert!(TitsEndoK::new(RatFn::beta(), RatFn::monomial(2, 0)).is_ok());
    }

    #[test]
    fn preimage_inverts_on_image() {
        let t = TitsEndoK::standard();
        let x = RatFn::new(
            Gf2Poly::from_terms([(1, 1), (0, 0)]),
            Gf2Poly::from_terms([(0, 3), (2, 0)]),
        )
        .unwrap();
        let y = t.apply(&x);
        assert_eq!(t.preimage(&y).unwrap(), Some(x));
        assert_eq!(t.preimage(&RatFn::beta()).unwrap(), None);
    }
}
