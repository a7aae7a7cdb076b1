#include "pneumo/least_squares.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pneumo/errors.hpp"

namespace pneumo {

double Polynomial::operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
}

Polynomial fit_polynomial(std::span<const double> x, std::span<const double> y, int degree) {
    if (degree < 0) throw DomainError("polynomial degree must be >= 0");
    if (x.size() != y.size()) throw DomainError("x and y must have the same length");
    const std::size_t m = x.size();
    const std::size_t n = static_cast<std::size_t>(degree) + 1;
    if (m < n) {
        throw FitError("degree " + std::to_string(degree) + " fit needs at least "
                       + std::to_string(n) + " points (got " + std::to_string(m) + ")");
    }

    // column-major Vandermonde, column norms kept for the rank test
    std::vector<double> a(m * n);
    std::vector<double> b(y.begin(), y.end());
    std::vector<double> col_norm(n, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
        double p = 1.0;
        for (std::size_t j = 0; j < n; ++j) {
            a[j * m + i] = p;
            col_norm[j] += p * p;
            p *= x[i];
        }
    }
    for (auto& c : col_norm) c = std::sqrt(c);

    std::vector<double> diag(n);
    for (std::size_t k = 0; k < n; ++k) {
        double* col = &a[k * m];
        double norm = 0.0;
        for (std::size_t i = k; i < m; ++i) norm += col[i] * col[i];
        norm = std::sqrt(norm);
        const double tol = 1e-12 * std::max(col_norm[k], std::numeric_limits<double>::min());
        if (!(norm > tol)) throw FitError("least-squares system is rank deficient");

        const double alpha = col[k] > 0.0 ? -norm : norm;
        col[k] -= alpha;
        double vnorm2 = 0.0;
        for (std::size_t i = k; i < m; ++i) vnorm2 += col[i] * col[i];

        for (std::size_t j = k + 1; j < n; ++j) {
            double* other = &a[j * m];
            double dot = 0.0;
            for (std::size_t i = k; i < m; ++i) dot += col[i] * other[i];
            const double s = 2.0 * dot / vnorm2;
            for (std::size_t i = k; i < m; ++i) other[i] -= s * col[i];
        }
        double dot = 0.0;
        for (std::size_t i = k; i < m; ++i) dot += col[i] * b[i];
        const double s = 2.0 * dot / vnorm2;
        for (std::size_t i = k; i < m; ++i) b[i] -= s * col[i];
        diag[k] = alpha;
    }

    Polynomial poly;
    poly.coeffs.assign(n, 0.0);
    for (std::size_t k = n; k-- > 0;) {
        double acc = b[k];
        for (std::size_t j = k + 1; j < n; ++j) acc -= a[j * m + k] * poly.coeffs[j];
        poly.coeffs[k] = acc / diag[k];
    }
    return poly;
}

}  // namespace pneumo
