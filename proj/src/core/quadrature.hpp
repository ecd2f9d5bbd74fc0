#pragma once

#include <functional>
#include <vector>

// Small quadrature toolkit used by the gauge machinery. Two pieces:
// fixed-order Gauss-Legendre panels for analytic integrands, and an
// adaptive bisection scheme for integrands with localized structure.
namespace qr::quad {

// n-point Gauss-Legendre rule on [-1, 1]. Nodes are roots of P_n found by
// Newton iteration from the Chebyshev initial guess; accurate to machine
// precision for the orders used here (n <= 64).
class GaussLegendre {
public:
    explicit GaussLegendre(int n);

    double integrate(const std::function<double(double)>& f, double a, double b) const;

    int order() const { return static_cast<int>(x_.size()); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& weights() const { return w_; }

private:
    std::vector<double> x_, w_; // nodes and weights on [-1, 1]
};

// Shared fixed-order rule (thread-safe after first use).
const GaussLegendre& gauss_legendre(int n);

// Adaptive bisection with a two-level Gauss estimate per interval: a panel is
// accepted when the 15-point result agrees with the sum over its halves to
// tol = max(abs_tol, rel_tol * |I_total|). Throws NumericError if the depth
// budget is exhausted before the tolerance is met.
double adaptive_gauss(const std::function<double(double)>& f, double a, double b,
                      double rel_tol, double abs_tol, int max_depth = 52);

} // namespace qr::quad
