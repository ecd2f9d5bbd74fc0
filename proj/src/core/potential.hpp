#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

// Attractive surface potentials V(z) for an atom above a plane wall at z = 0.
// Atomic units throughout: z in a0, V in hartree. Models are immutable after
// construction and evaluation is pure, so instances may be shared freely
// across threads.
namespace qr {

class PotentialModel {
public:
    virtual ~PotentialModel() = default;

    // V(z) and its first two derivatives; z must lie in (0, inf).
    virtual double v(double z) const = 0;
    virtual double dv(double z) const = 0;
    virtual double d2v(double z) const = 0;

    // Tail coefficients: V -> -c3/z^3 as z -> 0 (c3 = 0 for a pure C4 tail)
    // and V -> -c4/z^4 as z -> infinity; c4 > 0 always.
    virtual double c3() const = 0;
    virtual double c4() const = 0;

    virtual std::string label() const = 0;
};

using PotentialPtr = std::shared_ptr<const PotentialModel>;

// V(z) = -C4 / z^4.
class PureC4Potential final : public PotentialModel {
public:
    explicit PureC4Potential(double c4);
    double v(double z) const override;
    double dv(double z) const override;
    double d2v(double z) const override;
    double c3() const override { return 0.0; }
    double c4() const override { return c4_; }
    std::string label() const override;

private:
    double c4_;
};

// V(z) = -C4 / (z^3 (z + lambda3)) with lambda3 = C4/C3: a -C3/z^3 cliff
// crossing over to a -C4/z^4 tail around z ~ lambda3.
class C3C4Potential final : public PotentialModel {
public:
    C3C4Potential(double c3, double c4);
    double v(double z) const override;
    double dv(double z) const override;
    double d2v(double z) const override;
    double c3() const override { return c3_; }
    double c4() const override { return c4_; }
    double lambda3() const { return lambda3_; }
    std::string label() const override;

private:
    double c3_, c4_, lambda3_;
};

// Cubic-spline interpolation of sampled V values, continued by -c3/z^3 below
// the table and -c4/z^4 above it. Each tail coefficient is rescaled so the
// tail joins the end sample continuously; rescaling beyond 5% of the declared
// coefficient is rejected as a validation error.
class TabulatedPotential final : public PotentialModel {
public:
    TabulatedPotential(std::vector<double> z, std::vector<double> v,
                       double c3_declared, double c4_declared);
    double v(double z) const override;
    double dv(double z) const override;
    double d2v(double z) const override;
    double c3() const override { return c3_eff_; }
    double c4() const override { return c4_eff_; }
    std::string label() const override;

    double z_min() const { return z_.front(); }
    double z_max() const { return z_.back(); }

private:
    std::size_t interval(double z) const;

    std::vector<double> z_, v_, m_; // samples and spline second derivatives
    double c3_eff_, c4_eff_;
};

PotentialPtr make_pure_c4(double c4);
PotentialPtr make_c3c4(double c3, double c4);

// Build from the length scale ell = sqrt(2 m C4)/hbar instead of C4 directly;
// ell in a0, mass in electron masses, so C4 = ell^2 / (2 m).
PotentialPtr make_pure_c4_from_ell(double ell, double mass);
PotentialPtr make_c3c4_from_ell(double ell, double lambda3, double mass);

double c4_from_ell(double ell, double mass);
double ell_from_c4(double c4, double mass);

// Reads a two-column CSV with header "z_a0,V_hartree", at least 50 rows,
// strictly increasing z, all V < 0.
PotentialPtr load_tabulated(const std::string& csv_path, double c3_declared, double c4_declared);

// Interaction-strength presets for atomic hydrogen above a silica wall with
// varying porosity: label -> ell in a0 (ell = sqrt(2 m C4)/hbar for the
// hydrogen mass).
double preset_ell(std::string_view label);
const std::vector<std::pair<std::string, double>>& preset_table();

} // namespace qr
