#pragma once

#include <functional>

// Liouville transformations of the wave equation psi'' + F psi = 0: a smooth
// change of coordinate ztilde = f(z) together with the rescaling
// psitilde = sqrt(f'(z)) psi maps solutions onto solutions of
// psitilde'' + Ftilde psitilde = 0, with
//
//   Ftilde(ztilde) = (F(z) - {ztilde, z}/2) / f'(z)^2,
//   {f, z} = f'''/f' - (3/2) (f''/f')^2   (Schwarzian derivative).
//
// Scattering amplitudes computed before and after such a transformation are
// identical; the solver module checks this numerically.
namespace qr {

// Coordinate map carrying closed-form derivatives up to third order (the
// Schwarzian needs three). Maps used in transformations must be strictly
// increasing on their open domain (lo, hi); construction does not enforce
// this so that the Schwarzian of arbitrary smooth maps can be examined, but
// transform paths call require_increasing() first.
class LiouvilleMap {
public:
    using Fn = std::function<double(double)>;

    LiouvilleMap(Fn f, Fn f1, Fn f2, Fn f3, double lo, double hi, Fn inverse = {});

    double operator()(double z) const;
    double d1(double z) const;
    double d2(double z) const;
    double d3(double z) const;

    double lo() const { return lo_; }
    double hi() const { return hi_; }

    // Maps ztilde back to z: analytic inverse when one was supplied,
    // otherwise a bracketed Newton iteration. `hint` seeds the iteration
    // (callers marching along an axis pass the previous preimage).
    double inverse(double ztilde, double hint = 0) const;
    bool has_analytic_inverse() const { return static_cast<bool>(inv_); }

    // Samples f' on the domain interior; throws ConfigError if any sample
    // is non-positive.
    void require_increasing(int samples = 129) const;

    void check_in_domain(double z) const;

    static LiouvilleMap identity();
    static LiouvilleMap affine(double a, double b); // a z + b, a > 0
    // (a z + b)/(c z + d); domain restricted to one side of the pole.
    static LiouvilleMap mobius(double a, double b, double c, double d,
                               double lo, double hi);

private:
    Fn f_, f1_, f2_, f3_, inv_;
    double lo_, hi_;
};

// {f, z} at one point.
double schwarzian(const LiouvilleMap& map, double z);

// map_bc after map_ab; the range of map_ab must land inside the domain of
// map_bc. Derivatives compose by the chain rule; the composed Schwarzian
// then obeys the Cayley identity
//   {zhat, z} = (ztilde'(z))^2 {zhat, ztilde} + {ztilde, z}.
LiouvilleMap compose(const LiouvilleMap& map_ab, const LiouvilleMap& map_bc);

// Inverse map with derivatives from the inverse-function rule; the forward
// map must be strictly increasing.
LiouvilleMap inverse_map(const LiouvilleMap& map);

// Evaluator for Ftilde(ztilde). Holds the inverse-image search state to warm-
// start consecutive evaluations, so one instance must not be shared across
// threads; copies are cheap and independent.
class TransformedF {
public:
    TransformedF(std::function<double(double)> F, LiouvilleMap map);

    double operator()(double ztilde) const;

    // Same value computed through the inverse map's own derivatives:
    //   Ftilde(ztilde) = g'(ztilde)^2 F(g(ztilde)) + {g, ztilde}/2, g = f^{-1}.
    // Agreement with operator() is a consistency check on both routes.
    double eval_via_inverse(double ztilde) const;

    double lo() const { return map_lo_image_; }
    double hi() const { return map_hi_image_; }

private:
    std::function<double(double)> F_;
    LiouvilleMap map_;
    LiouvilleMap inv_map_;
    double map_lo_image_, map_hi_image_;
    mutable double hint_;
};

} // namespace qr
