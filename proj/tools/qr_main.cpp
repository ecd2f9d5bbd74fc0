// qr: command-line front end over libqr. Emits CSV tables and small text
// reports; all numerics live behind the C API in qr/qr.h.
//
// Exit codes: 0 success, 1 numeric failure, 2 usage or config error.
//
// Output determinism: no timestamps or environment state is written, numbers
// use the shortest round-trip decimal form, and scans aggregate before
// writing, so re-running a command with the same configuration produces a
// byte-identical file.

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "qr/qr.h"

namespace {

struct CliError {
    int code;
    std::string message;
};

// Maps a C API failure onto the exit-code contract.
void check(qr_status s)
{
    if (s == QR_OK)
        return;
    throw CliError{s == QR_ERR_INVALID_ARGUMENT ? 2 : 1, qr_last_error()};
}

[[noreturn]] void usage_error(const std::string& message)
{
    throw CliError{2, message};
}

std::string fmt(double v)
{
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

using PotentialHandle = std::unique_ptr<qr_potential, decltype(&qr_potential_free)>;
using ProblemHandle = std::unique_ptr<qr_problem, decltype(&qr_problem_free)>;

// "0.01neV" or "2.5e-9hartree" -> (value, unit).
std::pair<double, std::string> parse_energy_token(const std::string& token)
{
    for (const char* unit : {"neV", "hartree"}) {
        const std::string u = unit;
        if (token.size() > u.size() && token.ends_with(u)) {
            const std::string num = token.substr(0, token.size() - u.size());
            double value = 0;
            const char* first = num.data();
            const char* last = num.data() + num.size();
            auto r = std::from_chars(first, last, value);
            if (r.ec == std::errc() && r.ptr == last)
                return {value, u};
        }
    }
    usage_error("bad energy '" + token + "' (expected <number>neV or <number>hartree)");
}

struct KappaGrid {
    double min = 0, max = 0; // kappa*ell, dimensionless
    int n = 0;
    bool log = true;
};

// "1e-4,10,50,log" -> grid spec.
KappaGrid parse_kappa_grid(const std::string& token)
{
    std::istringstream in(token);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(in, part, ','))
        parts.push_back(part);
    if (parts.size() != 4)
        usage_error("bad --kappa-grid '" + token + "' (expected min,max,n,log|lin)");
    KappaGrid g;
    try {
        g.min = std::stod(parts[0]);
        g.max = std::stod(parts[1]);
        g.n = std::stoi(parts[2]);
    } catch (const std::exception&) {
        usage_error("bad --kappa-grid numbers in '" + token + "'");
    }
    if (parts[3] == "log")
        g.log = true;
    else if (parts[3] == "lin")
        g.log = false;
    else
        usage_error("bad --kappa-grid scale '" + parts[3] + "' (log or lin)");
    if (!(g.min > 0) || !(g.max >= g.min) || g.n < 1)
        usage_error("--kappa-grid needs 0 < min <= max and n >= 1");
    return g;
}

std::vector<double> grid_values(const KappaGrid& g)
{
    std::vector<double> v;
    v.reserve(g.n);
    if (g.n == 1) {
        v.push_back(g.min);
        return v;
    }
    for (int i = 0; i < g.n; ++i) {
        const double t = static_cast<double>(i) / (g.n - 1);
        v.push_back(g.log ? g.min * std::pow(g.max / g.min, t)
                          : g.min + t * (g.max - g.min));
    }
    return v;
}

// Model selection shared by every subcommand that takes a potential.
struct PotentialOptions {
    std::string model = "c4";
    std::string preset;
    double ell = 0;
    double c4 = 0;
    double c3 = 0;
    double lambda3 = 0;
    std::string table_path;
    double mass_amu = 1.00782503; // atomic hydrogen

    void attach(CLI::App* cmd)
    {
        cmd->add_option("--potential", model, "Potential model: c4, c3c4 or table")
            ->check(CLI::IsMember({"c4", "c3c4", "table"}))
            ->capture_default_str();
        cmd->add_option("--preset", preset,
                        "Porosity preset (0%, 30%, 50%, 70%, 90%) supplying ell");
        cmd->add_option("--ell", ell, "Far-tail length ell = sqrt(2 m C4) in a0");
        cmd->add_option("--c4", c4, "Far-tail coefficient C4 in hartree a0^4");
        cmd->add_option("--c3", c3, "Cliff-side coefficient C3 in hartree a0^3");
        cmd->add_option("--lambda3", lambda3, "Crossover length C4/C3 in a0");
        cmd->add_option("--table", table_path, "CSV file for --potential table");
        cmd->add_option("--mass-amu", mass_amu, "Particle mass in u")
            ->capture_default_str();
    }

    double mass_me() const { return qr_amu_to_me(mass_amu); }

    PotentialHandle build(std::vector<std::pair<std::string, std::string>>& header) const
    {
        double ell_eff = ell;
        if (!preset.empty()) {
            if (ell > 0 || c4 > 0)
                usage_error("--preset conflicts with --ell/--c4");
            check(qr_preset_ell(preset.c_str(), &ell_eff));
        }

        qr_potential* raw = nullptr;
        if (model == "c4") {
            if (ell_eff > 0)
                check(qr_potential_c4_ell(ell_eff, mass_me(), &raw));
            else if (c4 > 0)
                check(qr_potential_c4(c4, &raw));
            else
                usage_error("--potential c4 needs --ell, --c4 or --preset");
        } else if (model == "c3c4") {
            if (!(c3 > 0) && !(lambda3 > 0))
                usage_error("--potential c3c4 needs --c3 or --lambda3");
            if (ell_eff > 0) {
                const double c4_eff = [&] {
                    qr_potential* probe = nullptr;
                    check(qr_potential_c4_ell(ell_eff, mass_me(), &probe));
                    PotentialHandle guard(probe, &qr_potential_free);
                    double v = 0;
                    check(qr_potential_tails(probe, nullptr, &v));
                    return v;
                }();
                const double l3 = lambda3 > 0 ? lambda3 : c4_eff / c3;
                check(qr_potential_c3c4_ell(ell_eff, l3, mass_me(), &raw));
            } else if (c4 > 0) {
                const double c3_eff = c3 > 0 ? c3 : c4 / lambda3;
                check(qr_potential_c3c4(c3_eff, c4, &raw));
            } else {
                usage_error("--potential c3c4 needs --ell, --c4 or --preset");
            }
        } else { // table
            if (table_path.empty() || !(c3 > 0) || !(c4 > 0))
                usage_error("--potential table needs --table, --c3 and --c4");
            check(qr_potential_table(table_path.c_str(), c3, c4, &raw));
        }
        PotentialHandle pot(raw, &qr_potential_free);

        double t3 = 0, t4 = 0;
        check(qr_potential_tails(pot.get(), &t3, &t4));
        double ell_out = 0;
        check(qr_potential_ell(pot.get(), mass_me(), &ell_out));
        header.emplace_back("potential", model);
        if (!preset.empty())
            header.emplace_back("preset", preset);
        header.emplace_back("c3_hartree_a0.3", fmt(t3));
        header.emplace_back("c4_hartree_a0.4", fmt(t4));
        header.emplace_back("ell_a0", fmt(ell_out));
        header.emplace_back("mass_amu", fmt(mass_amu));
        if (model == "table")
            header.emplace_back("table", table_path);
        return pot;
    }
};

void write_header(std::ostream& out, const std::string& command,
                  const std::vector<std::pair<std::string, std::string>>& fields)
{
    out << "# qr " << qr_version() << "\n";
    out << "# command: " << command << "\n";
    out << "# units: lengths a0, energies hartree unless suffixed, kappa 1/a0\n";
    for (const auto& [k, v] : fields)
        out << "# " << k << " = " << v << "\n";
}

// All output is staged in memory and written in one pass.
void emit(const std::string& path, const std::string& payload)
{
    if (path.empty() || path == "-") {
        std::cout << payload;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw CliError{1, "cannot open '" + path + "' for writing"};
    out << payload;
    if (!out.flush())
        throw CliError{1, "short write to '" + path + "'"};
}

// path.csv + tag -> path_tag.csv
std::string tagged_path(const std::string& path, const std::string& tag)
{
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot == std::string::npos || (slash != std::string::npos && dot < slash))
        return path + "_" + tag;
    return path.substr(0, dot) + "_" + tag + path.substr(dot);
}

qr_solver_config make_config(double rel_tol)
{
    qr_solver_config cfg;
    qr_solver_config_init(&cfg);
    if (rel_tol > 0)
        cfg.rel_tol = rel_tol;
    return cfg;
}

// ---------------- subcommands ----------------

int run_universal(double u_min, double u_max, int n, const std::string& out_path)
{
    if (n < 2)
        usage_error("universal needs --n >= 2");
    if (!(u_max > u_min))
        usage_error("universal needs --u-max > --u-min");
    std::vector<double> u(n);
    for (int i = 0; i < n; ++i)
        u[i] = u_min + (u_max - u_min) * static_cast<double>(i) / (n - 1);
    std::vector<double> zb(n), vb(n);
    check(qr_universal_curve(u.data(), n, zb.data(), vb.data()));

    std::ostringstream os;
    write_header(os, "universal",
                 {{"u_min", fmt(u_min)},
                  {"u_max", fmt(u_max)},
                  {"n", std::to_string(n)},
                  {"z_bold_peak", fmt(qr_universal_zbold0())}});
    os << "u,z_bold,V_bold\n";
    for (int i = 0; i < n; ++i)
        os << fmt(u[i]) << "," << fmt(zb[i]) << "," << fmt(vb[i]) << "\n";
    emit(out_path, os.str());
    return 0;
}

int run_gauge(const PotentialOptions& popt, const std::vector<std::string>& energies,
              const std::vector<double>& kappa_ells, double u_min, double u_max, int n,
              const std::string& out_path)
{
    if (n < 2)
        usage_error("gauge needs --n >= 2");
    if (energies.empty() && kappa_ells.empty())
        usage_error("gauge needs at least one --energy or --kappa-ell");
    const std::size_t runs = energies.size() + kappa_ells.size();
    if (runs > 1 && (out_path.empty() || out_path == "-"))
        usage_error("gauge with several energies needs --out");

    std::vector<std::pair<std::string, std::string>> base;
    auto pot = popt.build(base);

    std::size_t index = 0;
    auto run_one = [&](qr_problem* prob, const std::string& tag,
                       std::vector<std::pair<std::string, std::string>> fields) {
        ProblemHandle guard(prob, &qr_problem_free);
        double kappa = 0, ell = 0, energy = 0;
        check(qr_problem_info(prob, &kappa, &ell, &energy));
        const double z_peak = std::sqrt(ell / kappa);

        std::vector<double> z(n), zb(n), vb(n);
        for (int i = 0; i < n; ++i)
            z[i] = z_peak * std::exp(u_min + (u_max - u_min) * static_cast<double>(i) / (n - 1));
        double e_bold = 0;
        check(qr_gauge_profile(prob, z.data(), n, zb.data(), vb.data(), &e_bold));

        fields.insert(fields.end(), base.begin(), base.end());
        fields.emplace_back("energy_hartree", fmt(energy));
        fields.emplace_back("kappa_inv_a0", fmt(kappa));
        fields.emplace_back("E_bold", fmt(e_bold));
        fields.emplace_back("kappa_ell", fmt(kappa * ell));
        fields.emplace_back("u_min", fmt(u_min));
        fields.emplace_back("u_max", fmt(u_max));
        fields.emplace_back("n", std::to_string(n));

        std::ostringstream os;
        write_header(os, "gauge", fields);
        os << "z_a0,z_bold,V_bold\n";
        for (int i = 0; i < n; ++i)
            os << fmt(z[i]) << "," << fmt(zb[i]) << "," << fmt(vb[i]) << "\n";
        emit(runs > 1 ? tagged_path(out_path, tag) : out_path, os.str());
        ++index;
    };

    for (const auto& token : energies) {
        auto [value, unit] = parse_energy_token(token);
        qr_problem* prob = nullptr;
        check(qr_problem_create(pot.get(), popt.mass_me(), value, unit.c_str(), &prob));
        run_one(prob, token, {{"energy", token}});
    }
    for (double kl : kappa_ells) {
        double ell = 0;
        check(qr_potential_ell(pot.get(), popt.mass_me(), &ell));
        qr_problem* prob = nullptr;
        check(qr_problem_create_kappa(pot.get(), popt.mass_me(), kl / ell, &prob));
        run_one(prob, "kl" + fmt(kl), {{"kappa_ell_request", fmt(kl)}});
    }
    return 0;
}

int run_reflect(const PotentialOptions& popt, const std::string& grid_token,
                std::optional<double> b_given, bool fit_b, int threads, double rel_tol,
                const std::string& out_path)
{
    const KappaGrid grid = parse_kappa_grid(grid_token);
    std::vector<std::pair<std::string, std::string>> fields;
    auto pot = popt.build(fields);
    double ell = 0;
    check(qr_potential_ell(pot.get(), popt.mass_me(), &ell));

    const std::vector<double> kls = grid_values(grid);
    std::vector<double> kappas(kls.size());
    for (std::size_t i = 0; i < kls.size(); ++i)
        kappas[i] = kls[i] / ell;

    const qr_solver_config cfg = make_config(rel_tol);
    std::vector<qr_scan_row> rows(kappas.size());
    std::vector<std::string> row_errors(kappas.size());
    bool any_failed = false;
    if (qr_reflection_scan(pot.get(), popt.mass_me(), kappas.data(), kappas.size(), &cfg,
                           threads, rows.data()) != QR_OK) {
        // Parallel scans stop at the first failure; redo serially so good
        // rows are still emitted, with markers for the bad ones.
        any_failed = true;
        for (std::size_t i = 0; i < kappas.size(); ++i) {
            qr_problem* prob = nullptr;
            qr_amplitudes amp;
            qr_status s = qr_problem_create_kappa(pot.get(), popt.mass_me(), kappas[i], &prob);
            if (s == QR_OK) {
                ProblemHandle guard(prob, &qr_problem_free);
                s = qr_solve(prob, &cfg, &amp);
            }
            if (s == QR_OK) {
                rows[i] = {kappas[i], kappas[i] * ell,   amp.big_r,
                           amp.big_t, amp.unitarity_defect, amp.wronskian_drift};
            } else {
                row_errors[i] = qr_last_error();
            }
        }
    }

    // b for the kappa_b column: explicit flag, then fit, then the far-tail
    // length (exact for the pure C4 model).
    double b = ell;
    std::string b_source = "ell";
    if (b_given) {
        b = *b_given;
        b_source = "flag";
    } else if (fit_b) {
        qr_bfit fit;
        check(qr_extract_b(rows.data(), rows.size(), &fit));
        b = fit.b;
        b_source = "fit";
    }

    fields.emplace_back("kappa_grid", grid_token);
    fields.emplace_back("rel_tol", fmt(cfg.rel_tol));
    fields.emplace_back("b_a0", fmt(b));
    fields.emplace_back("b_source", b_source);

    std::ostringstream os;
    write_header(os, "reflect", fields);
    os << "kappa_inv_a0,kappa_b,R,T,unitarity_defect\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (!row_errors[i].empty()) {
            os << "# FAILED kappa_ell=" << fmt(kls[i]) << ": " << row_errors[i] << "\n";
            continue;
        }
        os << fmt(rows[i].kappa) << "," << fmt(rows[i].kappa * b) << "," << fmt(rows[i].big_r)
           << "," << fmt(rows[i].big_t) << "," << fmt(rows[i].unitarity_defect) << "\n";
    }
    emit(out_path, os.str());
    if (any_failed)
        throw CliError{1, "one or more scan rows failed (see output markers)"};
    return 0;
}

int run_fit_b(const PotentialOptions& popt, const std::string& grid_token, int threads,
              double rel_tol, const std::string& out_path)
{
    std::vector<std::pair<std::string, std::string>> fields;
    auto pot = popt.build(fields);
    double ell = 0;
    check(qr_potential_ell(pot.get(), popt.mass_me(), &ell));

    // Default window: kappa ell in [1e-3, 1e-2], safely inside the linear
    // low-energy regime for models with b <= ell.
    const KappaGrid grid = parse_kappa_grid(grid_token.empty() ? "1e-3,1e-2,8,log" : grid_token);
    const std::vector<double> kls = grid_values(grid);
    std::vector<double> kappas(kls.size());
    for (std::size_t i = 0; i < kls.size(); ++i)
        kappas[i] = kls[i] / ell;

    const qr_solver_config cfg = make_config(rel_tol);
    std::vector<qr_scan_row> rows(kappas.size());
    check(qr_reflection_scan(pot.get(), popt.mass_me(), kappas.data(), kappas.size(), &cfg,
                             threads, rows.data()));
    qr_bfit fit;
    check(qr_extract_b(rows.data(), rows.size(), &fit));

    std::ostringstream os;
    write_header(os, "fit-b", fields);
    os << "b_a0 = " << fmt(fit.b) << "\n";
    os << "b_over_ell = " << fmt(fit.b / ell) << "\n";
    os << "slope_a0.2 = " << fmt(fit.slope) << "\n";
    os << "residual_rel = " << fmt(fit.residual) << "\n";
    os << "points_used = " << fit.points_used << "\n";
    os << "kappa_window_inv_a0 = [" << fmt(fit.kappa_min) << ", " << fmt(fit.kappa_max) << "]\n";
    emit(out_path, os.str());
    return 0;
}

int run_check(const PotentialOptions& popt, const std::string& energy_token, double kappa_ell,
              const std::string& map_name, double affine_a, double affine_b, double rel_tol,
              const std::string& out_path)
{
    if (energy_token.empty() == (kappa_ell <= 0))
        usage_error("check needs exactly one of --energy or --kappa-ell");

    std::vector<std::pair<std::string, std::string>> fields;
    auto pot = popt.build(fields);

    qr_problem* raw = nullptr;
    if (!energy_token.empty()) {
        auto [value, unit] = parse_energy_token(energy_token);
        check(qr_problem_create(pot.get(), popt.mass_me(), value, unit.c_str(), &raw));
        fields.emplace_back("energy", energy_token);
    } else {
        double ell = 0;
        check(qr_potential_ell(pot.get(), popt.mass_me(), &ell));
        check(qr_problem_create_kappa(pot.get(), popt.mass_me(), kappa_ell / ell, &raw));
        fields.emplace_back("kappa_ell_request", fmt(kappa_ell));
    }
    ProblemHandle prob(raw, &qr_problem_free);

    qr_map_kind kind = QR_MAP_WKB;
    if (map_name == "identity")
        kind = QR_MAP_IDENTITY;
    else if (map_name == "affine")
        kind = QR_MAP_AFFINE;
    else if (map_name != "wkb")
        usage_error("--map must be identity, affine or wkb");

    const qr_solver_config cfg = make_config(rel_tol);
    qr_gauge_check gc;
    check(qr_check_gauge_invariance(prob.get(), kind, affine_a, affine_b, &cfg, &gc));

    const double big_r = gc.r_re * gc.r_re + gc.r_im * gc.r_im;
    const double big_t = gc.t_re * gc.t_re + gc.t_im * gc.t_im;
    const double big_rt = gc.rt_re * gc.rt_re + gc.rt_im * gc.rt_im;
    const double big_tt = gc.tt_re * gc.tt_re + gc.tt_im * gc.tt_im;

    double kappa = 0, ell = 0;
    check(qr_problem_info(prob.get(), &kappa, &ell, nullptr));
    fields.emplace_back("map", map_name);
    if (kind == QR_MAP_AFFINE) {
        fields.emplace_back("affine_a", fmt(affine_a));
        fields.emplace_back("affine_b", fmt(affine_b));
    }
    fields.emplace_back("rel_tol", fmt(cfg.rel_tol));

    std::ostringstream os;
    write_header(os, "check", fields);
    os << "kappa_ell = " << fmt(kappa * ell) << "\n";
    os << "R = " << fmt(big_r) << "\n";
    os << "T = " << fmt(big_t) << "\n";
    os << "amplitude_defect_r = " << fmt(gc.dr) << "\n";
    os << "amplitude_defect_t = " << fmt(gc.dt) << "\n";
    os << "unitarity_defect = " << fmt(std::abs(big_r + big_t - 1.0)) << "\n";
    os << "unitarity_defect_transformed = " << fmt(std::abs(big_rt + big_tt - 1.0)) << "\n";
    os << "z_matching_a0 = [" << fmt(gc.z_inner) << ", " << fmt(gc.z_outer) << "]\n";
    emit(out_path, os.str());
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quantum reflection on attractive surface potentials"};
    app.set_version_flag("--version", qr_version());
    app.set_config("--config", "", "INI config file; sections name subcommands");
    app.require_subcommand(1);
    // Lets the parent-level --config appear after the subcommand name.
    app.fallthrough();

    // universal
    auto* cmd_universal = app.add_subcommand(
        "universal", "Tabulate the energy-independent wall shape of the -C4/z^4 well");
    double u_min = -5, u_max = 5;
    int n = 1001;
    std::string out_universal = "-";
    cmd_universal->add_option("--u-min", u_min, "Lower log-distance bound")
        ->capture_default_str();
    cmd_universal->add_option("--u-max", u_max, "Upper log-distance bound")
        ->capture_default_str();
    cmd_universal->add_option("--n", n, "Number of samples")->capture_default_str();
    cmd_universal->add_option("--out", out_universal, "Output CSV path, - for stdout");

    // gauge
    auto* cmd_gauge =
        app.add_subcommand("gauge", "Transformed wall profile V_bold(z_bold) per energy");
    PotentialOptions pot_gauge;
    pot_gauge.attach(cmd_gauge);
    std::vector<std::string> energies;
    std::vector<double> gauge_kls;
    double gu_min = -5, gu_max = 5;
    int gn = 1001;
    std::string out_gauge = "-";
    cmd_gauge->add_option("--energy", energies, "Energy with unit, e.g. 0.01neV (repeatable)");
    cmd_gauge->add_option("--kappa-ell", gauge_kls, "Dimensionless kappa*ell (repeatable)");
    cmd_gauge->add_option("--u-min", gu_min, "Grid: lower ln(z/z_peak)")->capture_default_str();
    cmd_gauge->add_option("--u-max", gu_max, "Grid: upper ln(z/z_peak)")->capture_default_str();
    cmd_gauge->add_option("--n", gn, "Grid samples")->capture_default_str();
    cmd_gauge->add_option("--out", out_gauge, "Output CSV path, - for stdout");

    // reflect
    auto* cmd_reflect = app.add_subcommand("reflect", "Reflection scan over a kappa*ell grid");
    PotentialOptions pot_reflect;
    pot_reflect.attach(cmd_reflect);
    std::string reflect_grid;
    std::optional<double> b_given;
    bool fit_b_flag = false;
    int threads = 1;
    double rel_tol_reflect = 0;
    std::string out_reflect = "-";
    cmd_reflect
        ->add_option("--kappa-grid", reflect_grid,
                     "Grid min,max,n,log|lin in dimensionless kappa*ell")
        ->required();
    cmd_reflect->add_option("--b", b_given, "Scattering-length parameter b (a0) for kappa_b");
    cmd_reflect->add_flag("--fit-b", fit_b_flag, "Fit b from the scan's low-kappa rows");
    cmd_reflect->add_option("--threads", threads, "Worker threads")->capture_default_str();
    cmd_reflect->add_option("--rel-tol", rel_tol_reflect, "Solver relative tolerance");
    cmd_reflect->add_option("--out", out_reflect, "Output CSV path, - for stdout");

    // fit-b
    auto* cmd_fit = app.add_subcommand("fit-b", "Extract the low-energy parameter b");
    PotentialOptions pot_fit;
    pot_fit.attach(cmd_fit);
    std::string fit_grid;
    int fit_threads = 1;
    double rel_tol_fit = 0;
    std::string out_fit = "-";
    cmd_fit->add_option("--kappa-grid", fit_grid,
                        "Override scan grid min,max,n,log|lin in kappa*ell");
    cmd_fit->add_option("--threads", fit_threads, "Worker threads")->capture_default_str();
    cmd_fit->add_option("--rel-tol", rel_tol_fit, "Solver relative tolerance");
    cmd_fit->add_option("--out", out_fit, "Output path, - for stdout");

    // check
    auto* cmd_check =
        app.add_subcommand("check", "Gauge-invariance and unitarity report at one energy");
    PotentialOptions pot_check;
    pot_check.attach(cmd_check);
    std::string check_energy;
    double check_kl = 0;
    std::string map_name = "wkb";
    double affine_a = 2, affine_b = 1;
    double rel_tol_check = 0;
    std::string out_check = "-";
    cmd_check->add_option("--energy", check_energy, "Energy with unit, e.g. 0.01neV");
    cmd_check->add_option("--kappa-ell", check_kl, "Dimensionless kappa*ell");
    cmd_check->add_option("--map", map_name, "Coordinate map: identity, affine or wkb")
        ->capture_default_str();
    cmd_check->add_option("--affine-a", affine_a, "Affine map slope")->capture_default_str();
    cmd_check->add_option("--affine-b", affine_b, "Affine map offset")->capture_default_str();
    cmd_check->add_option("--rel-tol", rel_tol_check, "Solver relative tolerance");
    cmd_check->add_option("--out", out_check, "Output path, - for stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help / --version
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (cmd_universal->parsed())
            return run_universal(u_min, u_max, n, out_universal);
        if (cmd_gauge->parsed())
            return run_gauge(pot_gauge, energies, gauge_kls, gu_min, gu_max, gn, out_gauge);
        if (cmd_reflect->parsed())
            return run_reflect(pot_reflect, reflect_grid, b_given, fit_b_flag, threads,
                               rel_tol_reflect, out_reflect);
        if (cmd_fit->parsed())
            return run_fit_b(pot_fit, fit_grid, fit_threads, rel_tol_fit, out_fit);
        if (cmd_check->parsed())
            return run_check(pot_check, check_energy, check_kl, map_name, affine_a, affine_b,
                             rel_tol_check, out_check);
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
