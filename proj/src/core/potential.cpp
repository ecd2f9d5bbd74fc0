#include "core/potential.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "core/error.hpp"

namespace qr {

namespace {

void require_positive_z(double z)
{
    if (!(z > 0))
        throw DomainError("potential evaluated at z <= 0");
}

} // namespace

// ---- PureC4Potential ----

PureC4Potential::PureC4Potential(double c4) : c4_(c4)
{
    if (!(c4 > 0))
        throw ConfigError("C4 must be positive");
}

double PureC4Potential::v(double z) const
{
    require_positive_z(z);
    const double z2 = z * z;
    return -c4_ / (z2 * z2);
}

double PureC4Potential::dv(double z) const
{
    require_positive_z(z);
    const double z2 = z * z;
    return 4.0 * c4_ / (z2 * z2 * z);
}

double PureC4Potential::d2v(double z) const
{
    require_positive_z(z);
    const double z2 = z * z;
    return -20.0 * c4_ / (z2 * z2 * z2);
}

std::string PureC4Potential::label() const
{
    return "c4";
}

// ---- C3C4Potential ----

C3C4Potential::C3C4Potential(double c3, double c4) : c3_(c3), c4_(c4)
{
    if (!(c3 > 0))
        throw ConfigError("C3 must be positive for the C3C4 model");
    if (!(c4 > 0))
        throw ConfigError("C4 must be positive");
    lambda3_ = c4 / c3;
}

double C3C4Potential::v(double z) const
{
    require_positive_z(z);
    return -c4_ / (z * z * z * (z + lambda3_));
}

double C3C4Potential::dv(double z) const
{
    require_positive_z(z);
    // V = -C4/g with g = z^4 + lambda3 z^3.
    const double z2 = z * z;
    const double g = z2 * z2 + lambda3_ * z2 * z;
    const double g1 = 4.0 * z2 * z + 3.0 * lambda3_ * z2;
    return c4_ * g1 / (g * g);
}

double C3C4Potential::d2v(double z) const
{
    require_positive_z(z);
    const double z2 = z * z;
    const double g = z2 * z2 + lambda3_ * z2 * z;
    const double g1 = 4.0 * z2 * z + 3.0 * lambda3_ * z2;
    const double g2 = 12.0 * z2 + 6.0 * lambda3_ * z;
    return c4_ * (g2 * g - 2.0 * g1 * g1) / (g * g * g);
}

std::string C3C4Potential::label() const
{
    return "c3c4";
}

// ---- TabulatedPotential ----

TabulatedPotential::TabulatedPotential(std::vector<double> z, std::vector<double> v,
                                       double c3_declared, double c4_declared)
    : z_(std::move(z)), v_(std::move(v))
{
    const std::size_t n = z_.size();
    if (n < 50 || v_.size() != n)
        throw ConfigError("tabulated potential needs at least 50 matching samples");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(z_[i] > 0))
            throw ConfigError("tabulated potential: z samples must be positive");
        if (i > 0 && !(z_[i] > z_[i - 1]))
            throw ConfigError("tabulated potential: z samples must be strictly increasing");
        if (!(v_[i] < 0))
            throw ConfigError("tabulated potential: V samples must be negative");
    }
    if (!(c3_declared > 0) || !(c4_declared > 0))
        throw ConfigError("tabulated potential: declared C3 and C4 must be positive");

    // Tail coefficients rescaled so V is continuous at the junctions. A
    // mismatch above 5% means the declared asymptotics do not describe the
    // table ends and the model is rejected.
    c3_eff_ = -v_.front() * z_.front() * z_.front() * z_.front();
    c4_eff_ = -v_.back() * z_.back() * z_.back() * z_.back() * z_.back();
    if (std::abs(c3_eff_ / c3_declared - 1.0) > 0.05)
        throw ConfigError("tabulated potential: inner sample off the declared -C3/z^3 tail by more than 5%");
    if (std::abs(c4_eff_ / c4_declared - 1.0) > 0.05)
        throw ConfigError("tabulated potential: outer sample off the declared -C4/z^4 tail by more than 5%");

    // Natural cubic spline: solve the tridiagonal system for the second
    // derivatives m_ (Thomas algorithm).
    m_.assign(n, 0.0);
    std::vector<double> diag(n, 0.0), rhs(n, 0.0), upper(n, 0.0);
    diag[0] = 1.0;
    diag[n - 1] = 1.0;
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double h0 = z_[i] - z_[i - 1];
        const double h1 = z_[i + 1] - z_[i];
        diag[i] = 2.0 * (h0 + h1);
        upper[i] = h1;
        rhs[i] = 6.0 * ((v_[i + 1] - v_[i]) / h1 - (v_[i] - v_[i - 1]) / h0);
    }
    // forward sweep (lower diagonal of row i is h0 = z_i - z_{i-1})
    for (std::size_t i = 2; i + 1 < n; ++i) {
        const double h0 = z_[i] - z_[i - 1];
        const double w = h0 / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    for (std::size_t i = n - 2; i >= 1; --i)
        m_[i] = (rhs[i] - upper[i] * m_[i + 1]) / diag[i];
}

std::size_t TabulatedPotential::interval(double z) const
{
    // index i with z_[i] <= z < z_[i+1]
    std::size_t lo = 0, hi = z_.size() - 1;
    while (hi - lo > 1) {
        const std::size_t mid = (lo + hi) / 2;
        if (z_[mid] <= z)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

double TabulatedPotential::v(double z) const
{
    require_positive_z(z);
    if (z < z_.front())
        return -c3_eff_ / (z * z * z);
    if (z > z_.back()) {
        const double z2 = z * z;
        return -c4_eff_ / (z2 * z2);
    }
    const std::size_t i = interval(z);
    const double h = z_[i + 1] - z_[i];
    const double a = (z_[i + 1] - z) / h;
    const double b = (z - z_[i]) / h;
    return a * v_[i] + b * v_[i + 1]
         + ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double TabulatedPotential::dv(double z) const
{
    require_positive_z(z);
    if (z < z_.front())
        return 3.0 * c3_eff_ / (z * z * z * z);
    if (z > z_.back()) {
        const double z2 = z * z;
        return 4.0 * c4_eff_ / (z2 * z2 * z);
    }
    const std::size_t i = interval(z);
    const double h = z_[i + 1] - z_[i];
    const double a = (z_[i + 1] - z) / h;
    const double b = (z - z_[i]) / h;
    return (v_[i + 1] - v_[i]) / h
         + ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h / 6.0;
}

double TabulatedPotential::d2v(double z) const
{
    require_positive_z(z);
    if (z < z_.front())
        return -12.0 * c3_eff_ / (z * z * z * z * z);
    if (z > z_.back()) {
        const double z2 = z * z;
        return -20.0 * c4_eff_ / (z2 * z2 * z2);
    }
    const std::size_t i = interval(z);
    const double h = z_[i + 1] - z_[i];
    const double a = (z_[i + 1] - z) / h;
    const double b = (z - z_[i]) / h;
    return a * m_[i] + b * m_[i + 1];
}

std::string TabulatedPotential::label() const
{
    return "table";
}

// ---- factories ----

PotentialPtr make_pure_c4(double c4)
{
    return std::make_shared<PureC4Potential>(c4);
}

PotentialPtr make_c3c4(double c3, double c4)
{
    return std::make_shared<C3C4Potential>(c3, c4);
}

double c4_from_ell(double ell, double mass)
{
    if (!(ell > 0))
        throw ConfigError("ell must be positive");
    if (!(mass > 0))
        throw ConfigError("particle mass must be positive");
    return ell * ell / (2.0 * mass);
}

double ell_from_c4(double c4, double mass)
{
    if (!(c4 > 0))
        throw ConfigError("C4 must be positive");
    if (!(mass > 0))
        throw ConfigError("particle mass must be positive");
    return std::sqrt(2.0 * mass * c4);
}

PotentialPtr make_pure_c4_from_ell(double ell, double mass)
{
    return make_pure_c4(c4_from_ell(ell, mass));
}

PotentialPtr make_c3c4_from_ell(double ell, double lambda3, double mass)
{
    if (!(lambda3 > 0))
        throw ConfigError("lambda3 must be positive");
    const double c4 = c4_from_ell(ell, mass);
    return make_c3c4(c4 / lambda3, c4);
}

PotentialPtr load_tabulated(const std::string& csv_path, double c3_declared, double c4_declared)
{
    std::ifstream in(csv_path);
    if (!in)
        throw IoError("cannot open potential table '" + csv_path + "'");
    std::string line;
    if (!std::getline(in, line))
        throw IoError("potential table '" + csv_path + "' is empty");
    // tolerate trailing CR from files written on other platforms
    if (!line.empty() && line.back() == '\r')
        line.pop_back();
    if (line != "z_a0,V_hartree")
        throw IoError("potential table '" + csv_path + "': first line must be 'z_a0,V_hartree'");

    std::vector<double> z, v;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b)) {
            throw IoError("potential table '" + csv_path + "': line "
                          + std::to_string(lineno) + " is not 'z,V'");
        }
        try {
            z.push_back(std::stod(a));
            v.push_back(std::stod(b));
        } catch (const std::exception&) {
            throw IoError("potential table '" + csv_path + "': line "
                          + std::to_string(lineno) + " has a malformed number");
        }
    }
    try {
        return std::make_shared<TabulatedPotential>(std::move(z), std::move(v),
                                                    c3_declared, c4_declared);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (file '" + csv_path + "')");
    }
}

const std::vector<std::pair<std::string, double>>& preset_table()
{
    static const std::vector<std::pair<std::string, double>> table = {
        {"0%", 321.3}, {"30%", 282.1}, {"50%", 244.7}, {"70%", 192.8}, {"90%", 111.8},
    };
    return table;
}

double preset_ell(std::string_view label)
{
    for (const auto& [name, ell] : preset_table())
        if (name == label)
            return ell;
    throw ConfigError("unknown preset '" + std::string(label)
                      + "' (expected one of 0%, 30%, 50%, 70%, 90%)");
}

} // namespace qr
