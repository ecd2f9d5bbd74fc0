#include "core/liouville.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "core/error.hpp"

namespace qr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Interior probe points of an open interval that may extend to infinity,
// spread on a compactified scale. Used for sampled monotonicity and range
// checks; not a proof, but catches real configuration mistakes.
std::vector<double> probe_points(double lo, double hi, int n)
{
    std::vector<double> pts;
    pts.reserve(n);
    const bool lo_inf = std::isinf(lo);
    const bool hi_inf = std::isinf(hi);
    for (int i = 1; i <= n; ++i) {
        const double t = static_cast<double>(i) / (n + 1); // in (0, 1)
        double z;
        if (!lo_inf && !hi_inf)
            z = lo + t * (hi - lo);
        else if (lo_inf && hi_inf)
            z = std::tan((t - 0.5) * 3.0); // covers roughly [-14, 14]
        else if (lo_inf)
            z = hi - (1.0 - t) / t * std::max(1.0, std::abs(hi));
        else
            z = lo + t / (1.0 - t) * std::max(1.0, std::abs(lo));
        pts.push_back(z);
    }
    return pts;
}

// Image of a domain endpoint under a monotone increasing map. Divergent or
// undefined endpoint evaluations are treated as an unbounded image on that
// side, which is the correct limit for every map built here.
double image_bound(const std::function<double(double)>& f, double endpoint, bool is_lo)
{
    if (std::isinf(endpoint))
        return is_lo ? -kInf : kInf;
    try {
        const double y = f(endpoint);
        if (std::isfinite(y))
            return y;
    } catch (const std::exception&) {
    }
    return is_lo ? -kInf : kInf;
}

} // namespace

LiouvilleMap::LiouvilleMap(Fn f, Fn f1, Fn f2, Fn f3, double lo, double hi, Fn inverse)
    : f_(std::move(f)), f1_(std::move(f1)), f2_(std::move(f2)), f3_(std::move(f3)),
      inv_(std::move(inverse)), lo_(lo), hi_(hi)
{
    if (!f_ || !f1_ || !f2_ || !f3_)
        throw ConfigError("Liouville map needs f and three derivatives");
    if (!(lo_ < hi_))
        throw ConfigError("Liouville map domain is empty");
}

void LiouvilleMap::check_in_domain(double z) const
{
    if (!(z >= lo_) || !(z <= hi_))
        throw DomainError("Liouville map evaluated outside its domain");
}

double LiouvilleMap::operator()(double z) const
{
    check_in_domain(z);
    return f_(z);
}

double LiouvilleMap::d1(double z) const
{
    check_in_domain(z);
    return f1_(z);
}

double LiouvilleMap::d2(double z) const
{
    check_in_domain(z);
    return f2_(z);
}

double LiouvilleMap::d3(double z) const
{
    check_in_domain(z);
    return f3_(z);
}

void LiouvilleMap::require_increasing(int samples) const
{
    for (double z : probe_points(lo_, hi_, samples)) {
        if (!(f1_(z) > 0))
            throw ConfigError("Liouville map is not strictly increasing on its domain");
    }
}

double LiouvilleMap::inverse(double ztilde, double hint) const
{
    if (inv_)
        return inv_(ztilde);

    // Bracket the preimage around the hint, then run a safeguarded Newton
    // iteration (bisection fallback keeps the bracket shrinking). Expansion
    // steps follow the local derivative with a 25% overshoot so a warm hint
    // brackets the root in one or two probes; blind geometric steps stay as
    // the fallback near domain ends and where f' is unusable.
    double a = hint, b = hint;
    if (!std::isfinite(a) || a <= lo_ || a >= hi_) {
        const auto pts = probe_points(lo_, hi_, 3);
        a = b = pts[1];
    }
    double residual = f_(a) - ztilde;
    if (residual > 0) { // root below the seed; b stays an upper bound
        int guard = 0;
        while (residual > 0) {
            b = a;
            const double der = f1_(a);
            double proposed = (der > 0) ? a - 1.25 * residual / der
                                        : a - std::max(1.0, std::abs(a));
            if (proposed == a)
                return a; // step under one ulp: a is the preimage at this precision
            if (!std::isfinite(proposed) || !(proposed > lo_))
                proposed = std::isinf(lo_) ? a - std::max(1.0, std::abs(a))
                                           : lo_ + 0.5 * (a - lo_);
            a = proposed;
            residual = f_(a) - ztilde;
            if (++guard > 2000)
                throw NumericError("map inversion failed to bracket from below");
        }
    } else if (residual < 0) { // root above the seed; a stays a lower bound
        int guard = 0;
        while (residual < 0) {
            a = b;
            const double der = f1_(b);
            double proposed = (der > 0) ? b - 1.25 * residual / der
                                        : b + std::max(1.0, std::abs(b));
            if (proposed == b)
                return b; // step under one ulp: b is the preimage at this precision
            if (!std::isfinite(proposed) || !(proposed < hi_))
                proposed = std::isinf(hi_) ? b + std::max(1.0, std::abs(b))
                                           : hi_ - 0.5 * (hi_ - b);
            b = proposed;
            residual = f_(b) - ztilde;
            if (++guard > 2000)
                throw NumericError("map inversion failed to bracket from above");
        }
    } else {
        return a;
    }

    // Stops, in strength order: exact hit, residual stagnation at the
    // evaluation noise floor of f (quadrature-backed maps cannot resolve
    // tighter, and the floor is not known a priori), bracket collapsed to a
    // few ulps, Newton step below a few ulps. The stagnation stop only fires
    // once the best residual is already small on the ztilde scale, so a
    // transient plateau far from the root cannot end the search early.
    const double val_cap = 1e-9 * std::max(1.0, std::abs(ztilde));
    double z = (residual <= 0) ? a : b; // the expansion's last, closest probe
    double val = residual;
    double best_z = z, best_val = std::numeric_limits<double>::infinity();
    int stalled = 0;
    for (int it = 0; it < 200; ++it) {
        if (val == 0)
            return z;
        if (std::abs(val) < best_val) {
            best_val = std::abs(val);
            best_z = z;
            stalled = 0;
        } else if (++stalled >= 3 && best_val <= val_cap) {
            return best_z;
        }
        if (val > 0)
            b = z;
        else
            a = z;
        if (b - a <= 4e-16 * std::max({std::abs(a), std::abs(b), 1e-300}))
            return best_val <= val_cap ? best_z : 0.5 * (a + b);
        const double der = f1_(z);
        double znext = (der > 0) ? z - val / der : 0.5 * (a + b);
        if (!(znext > a) || !(znext < b))
            znext = 0.5 * (a + b);
        const double scale = std::max({std::abs(z), std::abs(znext), 1e-300});
        if (std::abs(znext - z) <= 4e-16 * scale)
            return znext;
        z = znext;
        val = f_(z) - ztilde;
    }
    if (std::abs(b - a) <= 1e-12 * std::max(1.0, std::abs(z)))
        return best_val <= val_cap ? best_z : z;
    throw NumericError("map inversion did not converge");
}

LiouvilleMap LiouvilleMap::identity()
{
    return LiouvilleMap(
        [](double z) { return z; }, [](double) { return 1.0; }, [](double) { return 0.0; },
        [](double) { return 0.0; }, -kInf, kInf, [](double zt) { return zt; });
}

LiouvilleMap LiouvilleMap::affine(double a, double b)
{
    if (!(a > 0))
        throw ConfigError("affine map needs positive slope");
    return LiouvilleMap([a, b](double z) { return a * z + b; }, [a](double) { return a; },
                        [](double) { return 0.0; }, [](double) { return 0.0; }, -kInf, kInf,
                        [a, b](double zt) { return (zt - b) / a; });
}

LiouvilleMap LiouvilleMap::mobius(double a, double b, double c, double d, double lo, double hi)
{
    const double det = a * d - b * c;
    if (det == 0)
        throw ConfigError("Mobius map is singular (ad - bc = 0)");
    if (c != 0) {
        const double pole = -d / c;
        if (pole > lo && pole < hi)
            throw ConfigError("Mobius map domain must not contain the pole");
    }
    auto den = [c, d](double z) { return c * z + d; };
    return LiouvilleMap(
        [a, b, den](double z) { return (a * z + b) / den(z); },
        [det, den](double z) {
            const double q = den(z);
            return det / (q * q);
        },
        [det, c, den](double z) {
            const double q = den(z);
            return -2.0 * c * det / (q * q * q);
        },
        [det, c, den](double z) {
            const double q = den(z);
            return 6.0 * c * c * det / (q * q * q * q);
        },
        lo, hi,
        [a, b, c, d](double zt) { return (d * zt - b) / (a - c * zt); });
}

double schwarzian(const LiouvilleMap& map, double z)
{
    const double f1 = map.d1(z);
    if (f1 == 0)
        throw DomainError("Schwarzian undefined where f' vanishes");
    const double r2 = map.d2(z) / f1;
    return map.d3(z) / f1 - 1.5 * r2 * r2;
}

LiouvilleMap compose(const LiouvilleMap& map_ab, const LiouvilleMap& map_bc)
{
    // Sampled range check: every probe image must land inside map_bc's domain.
    for (double z : probe_points(map_ab.lo(), map_ab.hi(), 33)) {
        const double zt = map_ab(z);
        if (!(zt >= map_bc.lo()) || !(zt <= map_bc.hi()))
            throw ConfigError("compose: range of the first map leaves the second map's domain");
    }

    auto f = [map_ab, map_bc](double z) { return map_bc(map_ab(z)); };
    auto f1 = [map_ab, map_bc](double z) { return map_bc.d1(map_ab(z)) * map_ab.d1(z); };
    auto f2 = [map_ab, map_bc](double z) {
        const double zt = map_ab(z);
        const double g1 = map_ab.d1(z);
        return map_bc.d2(zt) * g1 * g1 + map_bc.d1(zt) * map_ab.d2(z);
    };
    auto f3 = [map_ab, map_bc](double z) {
        const double zt = map_ab(z);
        const double g1 = map_ab.d1(z);
        const double g2 = map_ab.d2(z);
        return map_bc.d3(zt) * g1 * g1 * g1 + 3.0 * map_bc.d2(zt) * g1 * g2
             + map_bc.d1(zt) * map_ab.d3(z);
    };

    LiouvilleMap::Fn inv;
    if (map_ab.has_analytic_inverse() && map_bc.has_analytic_inverse()) {
        inv = [map_ab, map_bc](double zhat) { return map_ab.inverse(map_bc.inverse(zhat)); };
    }
    return LiouvilleMap(f, f1, f2, f3, map_ab.lo(), map_ab.hi(), inv);
}

LiouvilleMap inverse_map(const LiouvilleMap& map)
{
    map.require_increasing();
    const double img_lo = image_bound([&map](double z) { return map(z); }, map.lo(), true);
    const double img_hi = image_bound([&map](double z) { return map(z); }, map.hi(), false);

    auto pre = [map](double zt) { return map.inverse(zt); };
    auto g1 = [map, pre](double zt) { return 1.0 / map.d1(pre(zt)); };
    auto g2 = [map, pre](double zt) {
        const double z = pre(zt);
        const double d1 = map.d1(z);
        return -map.d2(z) / (d1 * d1 * d1);
    };
    auto g3 = [map, pre](double zt) {
        const double z = pre(zt);
        const double d1 = map.d1(z);
        const double d2 = map.d2(z);
        return (3.0 * d2 * d2 - d1 * map.d3(z)) / std::pow(d1, 5);
    };
    auto fwd = [map](double z) { return map(z); };
    return LiouvilleMap(pre, g1, g2, g3, img_lo, img_hi, fwd);
}

TransformedF::TransformedF(std::function<double(double)> F, LiouvilleMap map)
    : F_(std::move(F)), map_(std::move(map)), inv_map_(inverse_map(map_))
{
    map_lo_image_ = inv_map_.lo();
    map_hi_image_ = inv_map_.hi();
    hint_ = std::numeric_limits<double>::quiet_NaN();
}

double TransformedF::operator()(double ztilde) const
{
    if (!(ztilde >= map_lo_image_) || !(ztilde <= map_hi_image_))
        throw DomainError("transformed F evaluated outside the mapped domain");
    const double z = map_.inverse(ztilde, hint_);
    hint_ = z;
    const double d1 = map_.d1(z);
    return (F_(z) - 0.5 * schwarzian(map_, z)) / (d1 * d1);
}

double TransformedF::eval_via_inverse(double ztilde) const
{
    if (!(ztilde >= map_lo_image_) || !(ztilde <= map_hi_image_))
        throw DomainError("transformed F evaluated outside the mapped domain");
    const double z = inv_map_(ztilde);
    const double g1 = inv_map_.d1(ztilde);
    return g1 * g1 * F_(z) + 0.5 * schwarzian(inv_map_, ztilde);
}

} // namespace qr
