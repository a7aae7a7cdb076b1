#pragma once

#include <span>
#include <vector>

namespace pneumo {

// Polynomial c0 + c1 x + c2 x^2 + ...
struct Polynomial {
    std::vector<double> coeffs;

    double operator()(double x) const;
    int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

// Ordinary least squares with a free intercept, solved by Householder QR on
// the Vandermonde matrix. Throws FitError with fewer than degree + 1 points
// or a rank-deficient system, DomainError for a negative degree or
// mismatched lengths.
Polynomial fit_polynomial(std::span<const double> x, std::span<const double> y, int degree);

}  // namespace pneumo
