// speclab — command-line laboratory for the complex-dilation spectral
// analysis of L_gamma = -d^2/dx^2 + x^2 + i*gamma/(1+|x|^kappa).
//
// Subcommands: spectrum, sweep, bound, semigroup, numrange, pseudo, ims.
// Every run writes run.json with the fully resolved configuration; running
// `<subcommand> --config run.json` reproduces the data files byte for byte.
// Exit codes: 0 ok, 2 usage, 3 numerical failure, 4 reliability failure.

#include <CLI11.hpp>

#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "speclab/bounds.hpp"
#include "speclab/errors.hpp"
#include "speclab/io.hpp"
#include "speclab/kernels.hpp"
#include "speclab/parallel.hpp"
#include "speclab/scaling_lab.hpp"
#include "speclab/semigroup.hpp"
#include "speclab/spectral_analysis.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace speclab;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<double> parse_gamma_range(const std::string& text) {
    // "lo:hi:Nlog" (log-spaced), "lo:hi:Nlin", or comma-separated values
    std::vector<double> out;
    if (text.find(':') == std::string::npos) {
        std::string tok;
        std::stringstream ss(text);
        while (std::getline(ss, tok, ',')) out.push_back(std::stod(tok));
        return out;
    }
    const auto c1 = text.find(':');
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw UsageError("range grammar is lo:hi:Nlog or lo:hi:Nlin");
    const double lo = std::stod(text.substr(0, c1));
    const double hi = std::stod(text.substr(c1 + 1, c2 - c1 - 1));
    std::string tail = text.substr(c2 + 1);
    bool logspace = true;
    if (tail.size() >= 3 && tail.substr(tail.size() - 3) == "log")
        tail = tail.substr(0, tail.size() - 3);
    else if (tail.size() >= 3 && tail.substr(tail.size() - 3) == "lin") {
        logspace = false;
        tail = tail.substr(0, tail.size() - 3);
    }
    const long n = std::stol(tail);
    if (n < 2 || lo <= 0.0 || hi <= lo) throw UsageError("bad range " + text);
    for (long i = 0; i < n; ++i) {
        const double f = static_cast<double>(i) / static_cast<double>(n - 1);
        out.push_back(logspace ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
    return out;
}

// Resolves option values with precedence: explicit flag > config file > default.
struct Params {
    json resolved;
    const json* config = nullptr;
    CLI::App* app = nullptr;

    template <typename T>
    T get(const std::string& name, const T& cli_value, const T& fallback) {
        T value = fallback;
        if (config && config->contains(name)) value = (*config)[name].get<T>();
        if (app->count("--" + name) > 0) value = cli_value;
        resolved[name] = value;
        return value;
    }

    template <typename T>
    T require(const std::string& name, const T& cli_value) {
        if (app->count("--" + name) == 0 && !(config && config->contains(name)))
            throw UsageError("missing required option --" + name);
        T value{};
        if (config && config->contains(name)) value = (*config)[name].get<T>();
        if (app->count("--" + name) > 0) value = cli_value;
        resolved[name] = value;
        return value;
    }
};

struct CommonFlags {
    std::string output_dir = ".";
    std::string config_path;
    std::uint64_t seed = 20240901;
    unsigned jobs = 0;

    void attach(CLI::App* cmd) {
        cmd->add_option("-o,--output-dir", output_dir, "directory for emitted files");
        cmd->add_option("--config", config_path, "re-run from an emitted run.json");
        cmd->add_option("--seed", seed, "seed for randomized checks");
        cmd->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    }
};

json load_config(const std::string& path, const std::string& subcommand) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config " + path);
    json j = json::parse(in);
    if (j.contains("subcommand") && j["subcommand"] != subcommand)
        throw UsageError("config was written by subcommand '" +
                         j["subcommand"].get<std::string>() + "'");
    return j.contains("params") ? j["params"] : j;
}

void write_run_json(const fs::path& dir, const std::string& subcommand,
                    std::uint64_t seed, unsigned jobs, const json& params) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["version"] = kVersion;
    j["subcommand"] = subcommand;
    j["seed"] = seed;
    j["jobs"] = jobs;
    j["params"] = params;
    io::write_text_atomic(dir / "run.json", j.dump(2) + "\n");
}

fs::path prepare_output_dir(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

Scheme parse_scheme(const std::string& s) {
    if (s == "hermite") return Scheme::HermiteSpectral;
    if (s == "fd") return Scheme::FiniteDifference;
    throw UsageError("scheme must be 'hermite' or 'fd'");
}

Discretization make_disc(const std::string& scheme, std::size_t n, double box,
                         std::size_t quad_order) {
    Discretization d;
    d.scheme = parse_scheme(scheme);
    d.n = n;
    d.box = box;
    d.quad_order = quad_order;
    return d;
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

// ---------------------------------------------------------------------------

struct SpectrumCmd {
    CommonFlags common;
    double gamma = 0.0, kappa = 0.0, theta = 0.0, u = 0.0, box = 12.0;
    std::size_t n = 300, k = 6, quad_order = 0, angles = 64;
    std::string scheme = "hermite";
    bool svg = false, no_reliability = false;

    void run(CLI::App* cmd) {
        json cfg;
        Params p;
        p.app = cmd;
        if (!common.config_path.empty()) {
            cfg = load_config(common.config_path, "spectrum");
            p.config = &cfg;
        }
        const double g = p.require("gamma", gamma);
        const double kap = p.require("kappa", kappa);
        const double th = p.get("theta", theta, 0.0);
        const double uu = p.get("u", u, 0.0);
        const std::string sch = p.get<std::string>("scheme", scheme, "hermite");
        const std::size_t nn = p.get<std::size_t>("n", n, 300);
        const std::size_t kk = p.get<std::size_t>("k", k, 6);
        const std::size_t qo = p.get<std::size_t>("quad-order", quad_order, 0);
        const double bx = p.get("box", box, 12.0);
        const bool want_svg = p.get("svg", svg, false);
        const bool norel = p.get("no-reliability", no_reliability, false);
        const std::size_t nang = p.get<std::size_t>("angles", angles, 64);

        OperatorSpec spec;
        spec.gamma = g;
        spec.kappa = kap;
        spec.w = cxd(uu, th);
        const Discretization disc = make_disc(sch, nn, bx, qo);

        SpectrumOptions opts;
        opts.assess_reliability = !norel;
        opts.jobs = common.jobs ? common.jobs : default_jobs();
        const Spectrum s = spectrum(spec, disc, std::min(kk, nn), opts);

        const fs::path dir = prepare_output_dir(common.output_dir);
        io::Csv csv("re,im,reliable");
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
            csv.row({io::fmt17(s.eigenvalues[i].real()), io::fmt17(s.eigenvalues[i].imag()),
                     csv_bool(!s.reliable.empty() && s.reliable[i])});
        io::write_text_atomic(dir / "spectrum.csv", csv.text);

        json out;
        out["schema_version"] = kSchemaVersion;
        out["abscissa"] = s.abscissa;
        out["reliable_count"] = s.reliable_count;
        out["solver_iterations"] = s.iterations;
        out["eigenvalues"] = json::array();
        for (std::size_t i = 0; i < s.eigenvalues.size(); ++i)
            out["eigenvalues"].push_back({{"re", s.eigenvalues[i].real()},
                                          {"im", s.eigenvalues[i].imag()},
                                          {"reliable", !s.reliable.empty() && s.reliable[i]}});
        io::write_text_atomic(dir / "spectrum.json", out.dump(2) + "\n");

        if (want_svg) {
            const DenseMatrix a = assemble_dilated(spec, disc);
            const NumericalRange r = numerical_range(a, nang, opts.jobs);
            io::SvgScatter plot;
            plot.points = s.eigenvalues;
            plot.polygon = r.boundary;
            io::write_text_atomic(dir / "spectrum.svg", plot.render());
        }
        write_run_json(dir, "spectrum", common.seed, common.jobs, p.resolved);
        if (!norel && s.reliable_count == 0)
            throw ReliabilityError("spectrum: no retained eigenvalue passed the reliability test");
    }
};

struct SweepCmd {
    CommonFlags common;
    double kappa = 0.0, theta = -1.0;
    std::string gammas = "1e2:1e5:8log";
    std::size_t n0 = 75, ncap = 1200, k = 4;
    bool no_certified = false, no_auto_scale = false;

    void run(CLI::App* cmd) {
        json cfg;
        Params p;
        p.app = cmd;
        if (!common.config_path.empty()) {
            cfg = load_config(common.config_path, "sweep");
            p.config = &cfg;
        }
        const double kap = p.require("kappa", kappa);
        const std::string grange = p.get<std::string>("gammas", gammas, "1e2:1e5:8log");
        SweepPolicy policy;
        policy.theta = p.get("theta", theta, -1.0);
        policy.n0 = p.get<std::size_t>("n0", n0, 75);
        policy.n_cap = p.get<std::size_t>("n-cap", ncap, 1200);
        policy.k = p.get<std::size_t>("k", k, 4);
        policy.with_certified = !p.get("no-certified", no_certified, false);
        policy.auto_scale = !p.get("no-auto-scale", no_auto_scale, false);
        policy.jobs = common.jobs ? common.jobs : default_jobs();

        const std::vector<double> gs = parse_gamma_range(grange);
        const std::vector<SweepRecord> recs = sweep(kap, gs, policy);

        const fs::path dir = prepare_output_dir(common.output_dir);
        io::Csv csv("kappa,gamma,abscissa,certified,n_used,reliable");
        for (const auto& r : recs)
            csv.row({io::fmt17(kap), io::fmt17(r.gamma), io::fmt17(r.abscissa),
                     io::fmt17(r.certified), std::to_string(r.n_used), csv_bool(r.reliable)});
        io::write_text_atomic(dir / "sweep.csv", csv.text);

        json out;
        out["schema_version"] = kSchemaVersion;
        out["kappa"] = kap;
        out["theta"] = recs.front().theta;
        out["theory_lower_exponent"] = 2.0 / (kap + 2.0);
        std::size_t reliable = 0;
        for (const auto& r : recs) reliable += r.reliable ? 1 : 0;
        out["records"] = recs.size();
        out["reliable_records"] = reliable;
        const std::pair<double, double> window{gs.front(), gs.back()};
        try {
            const ScalingFit fit = fit_exponent(recs, window, FitColumn::Abscissa);
            out["fit"] = {{"exponent", fit.exponent},
                          {"prefactor", fit.prefactor},
                          {"r_squared", fit.r_squared},
                          {"gamma_lo", fit.gamma_range.first},
                          {"gamma_hi", fit.gamma_range.second},
                          {"records_used", fit.records_used}};
            if (policy.with_certified) {
                const ScalingFit cfit = fit_exponent(recs, window, FitColumn::Certified);
                out["certified_fit"] = {{"exponent", cfit.exponent},
                                        {"prefactor", cfit.prefactor},
                                        {"r_squared", cfit.r_squared}};
            }
            io::write_text_atomic(dir / "fit.json", out.dump(2) + "\n");
        } catch (const ReliabilityError&) {
            out["fit"] = nullptr;
            io::write_text_atomic(dir / "fit.json", out.dump(2) + "\n");
            write_run_json(dir, "sweep", common.seed, common.jobs, p.resolved);
            throw;
        }
        write_run_json(dir, "sweep", common.seed, common.jobs, p.resolved);
    }
};

struct BoundCmd {
    CommonFlags common;
    double gamma = 0.0, kappa = 0.0, theta = -1.0;
    std::string gammas;

    void run(CLI::App* cmd) {
        json cfg;
        Params p;
        p.app = cmd;
        if (!common.config_path.empty()) {
            cfg = load_config(common.config_path, "bound");
            p.config = &cfg;
        }
        const double kap = p.require("kappa", kappa);
        double th = p.get("theta", theta, -1.0);
        if (th < 0.0) th = theta_max(kap) / 2.0;
        std::vector<double> gs;
        if (cmd->count("--gammas") > 0 || (p.config && p.config->contains("gammas") &&
                                           !(*p.config)["gammas"].get<std::string>().empty())) {
            gs = parse_gamma_range(p.get<std::string>("gammas", gammas, ""));
            p.resolved["gamma"] = nullptr;
        } else {
            gs = {p.require("gamma", gamma)};
            p.resolved["gammas"] = "";
        }

        const fs::path dir = prepare_output_dir(common.output_dir);
        io::Csv csv("gamma,kappa,theta,nu,alpha,lambda0_H,certified,predicted");
        json rows = json::array();
        for (double g : gs) {
            const BoundReport rep =
                certified_lower_bound(RealPartSpec::canonical(g, kap, th));
            csv.row({io::fmt17(rep.gamma), io::fmt17(rep.kappa), io::fmt17(rep.theta),
                     io::fmt17(rep.nu), io::fmt17(rep.alpha), io::fmt17(rep.lambda0_H),
                     io::fmt17(rep.certified), io::fmt17(rep.predicted)});
            rows.push_back({{"gamma", rep.gamma},
                            {"lambda0_H", rep.lambda0_H},
                            {"certified", rep.certified},
                            {"predicted", rep.predicted},
                            {"alpha", rep.alpha},
                            {"box_used", rep.box_used},
                            {"n_used", rep.n_used}});
        }
        io::write_text_atomic(dir / "bound.csv", csv.text);

        json out;
        out["schema_version"] = kSchemaVersion;
        out["kappa"] = kap;
        out["theta"] = th;
        out["nu"] = localization_nu(kap);
        out["leading_exponent"] = 2.0 / (2.0 + kap);
        out["correction_exponent"] = 1.0 / (1.0 + kap);
        out["rows"] = rows;
        io::write_text_atomic(dir / "bound.json", out.dump(2) + "\n");
        write_run_json(dir, "bound", common.seed, common.jobs, p.resolved);
    }
};

struct SemigroupCmd {
    CommonFlags common;
    double gamma = 0.0, kappa = 0.0, t_end = 4.0, dt = 1e-3, box = 10.0;
    double window_lo = -1.0, window_hi = -1.0;
    std::size_t n = 2000, mode = 0;
    std::string scheme = "fd", psi0 = "gaussian";

    void run(CLI::App* cmd) {
        json cfg;
        Params p;
        p.app = cmd;
        if (!common.config_path.empty()) {
            cfg = load_config(common.config_path, "semigroup");
            p.config = &cfg;
        }
        OperatorSpec spec;
        spec.gamma = p.require("gamma", gamma);
        spec.kappa = p.require("kappa", kappa);
        spec.w = 0.0;
        const std::string sch = p.get<std::string>("scheme", scheme, "fd");
        const std::size_t nn = p.get<std::size_t>("n", n, 2000);
        const double bx = p.get("box", box, 10.0);
        const double tend = p.get("t-end", t_end, 4.0);
        const double step = p.get("dt", dt, 1e-3);
        const std::string init = p.get<std::string>("psi0", psi0, "gaussian");
        const std::size_t mk = p.get<std::size_t>("mode", mode, 0);
        double wlo = p.get("window-lo", window_lo, -1.0);
        double whi = p.get("window-hi", window_hi, -1.0);
        if (wlo < 0.0) wlo = 0.5 * tend;  // late window: transients die first
        if (whi < 0.0) whi = tend;

        EvolveOptions opts;
        opts.psi0 = (init == "mode") ? InitialState::HermiteMode : InitialState::Gaussian;
        opts.mode_index = mk;
        const Discretization disc = make_disc(sch, nn, bx, 0);
        EvolutionRun run = evolve(spec, disc, tend, step, opts);
        run.fitted_rate = decay_rate(run, {wlo, whi});

        const fs::path dir = prepare_output_dir(common.output_dir);
        io::Csv csv("t,norm");
        for (std::size_t i = 0; i < run.t_grid.size(); ++i)
            csv.row({io::fmt17(run.t_grid[i]), io::fmt17(run.norms[i])});
        io::write_text_atomic(dir / "semigroup.csv", csv.text);

        json out;
        out["schema_version"] = kSchemaVersion;
        out["fitted_rate"] = run.fitted_rate;
        out["window"] = {wlo, whi};
        out["dt"] = step;
        out["contractivity_violations"] = run.contractivity_violations;
        io::write_text_atomic(dir / "semigroup.json", out.dump(2) + "\n");
        write_run_json(dir, "semigroup", common.seed, common.jobs, p.resolved);
    }
};

struct NumrangeCmd {
    CommonFlags common;
    double gamma = 0.0, kappa = 0.0, theta = 0.0, u = 0.0, box = 12.0;
    std::size_t n = 200, angles = 64, quad_order = 0;
    std::string scheme = "hermite";

    void run(CLI::App* cmd) {
        json cfg;
        Params p;
        p.app = cmd;
        if (!common.config_path.empty()) {
            cfg = load_config(common.config_path, "numrange");
            p.config = &cfg;
        }
        OperatorSpec spec;
        spec.gamma = p.require("gamma", gamma);
        spec.kappa = p.require("kappa", kappa);
        spec.w = cxd(p.get("u", u, 0.0), p.get("theta", theta, 0.0));
        const Discretization disc = make_disc(p.get<std::string>("scheme", scheme, "hermite"),
                                              p.get<std::size_t>("n", n, 200),
                                              p.get("box", box, 12.0),
                                              p.get<std::size_t>("quad-order", quad_order, 0));
        const std::size_t nang = p.get<std::size_t>("angles", angles, 64);

        const DenseMatrix a = assemble_dilated(spec, disc);
        const unsigned jobs = common.jobs ? common.jobs : default_jobs();
        const NumericalRange r = numerical_range(a, nang, jobs);

        const fs::path dir = prepare_output_dir(common.output_dir);
        io::Csv csv("angle,support,vertex_re,vertex_im");
        for (std::size_t j = 0; j < r.angles.size(); ++j)
            csv.row({io::fmt17(r.angles[j]), io::fmt17(r.support[j]),
                     io::fmt17(r.boundary[j].real()), io::fmt17(r.boundary[j].imag())});
        io::write_text_atomic(dir / "numrange.csv", csv.text);

        json out;
        out["schema_version"] = kSchemaVersion;
        out["angles"] = nang;
        out["convex"] = polygon_convex(r.boundary, 1e-9 * inf_norm(a) * inf_norm(a));
        io::write_text_atomic(dir / "numrange.json", out.dump(2) + "\n");
        write_run_json(dir, "numrange", common.seed, common.jobs, p.resolved);
    }
};

struct PseudoCmd {
    CommonFlags common;
    double gamma = 0.0, kappa = 0.0, theta = 0.0, box = 12.0;
    double re_lo = 0.0, re_hi = 0.0, im_lo = 0.0, im_hi = 0.0;
    std::size_t n = 120, res_re = 60, res_im = 40, quad_order = 0;
    std::string scheme = "hermite";

    void run(CLI::App* cmd) {
        json cfg;
        Params p;
        p.app = cmd;
        if (!common.config_path.empty()) {
            cfg = load_config(common.config_path, "pseudo");
            p.config = &cfg;
        }
        OperatorSpec spec;
        spec.gamma = p.require("gamma", gamma);
        spec.kappa = p.require("kappa", kappa);
        spec.w = cxd(0.0, p.get("theta", theta, 0.0));
        const Discretization disc = make_disc(p.get<std::string>("scheme", scheme, "hermite"),
                                              p.get<std::size_t>("n", n, 120),
                                              p.get("box", box, 12.0),
                                              p.get<std::size_t>("quad-order", quad_order, 0));
        const DenseMatrix a = assemble_dilated(spec, disc);

        double rlo = p.get("re-lo", re_lo, 0.0), rhi = p.get("re-hi", re_hi, 0.0);
        double ilo = p.get("im-lo", im_lo, 0.0), ihi = p.get("im-hi", im_hi, 0.0);
        if (rlo == rhi || ilo == ihi) {
            // default window framing the low end of the spectrum
            SpectrumOptions so;
            so.assess_reliability = false;
            const Spectrum s = spectrum(spec, disc, std::min<std::size_t>(6, disc.n), so);
            double imin = s.eigenvalues.front().imag(), imax = imin;
            double rmax = s.eigenvalues.front().real();
            for (const cxd& z : s.eigenvalues) {
                imin = std::min(imin, z.imag());
                imax = std::max(imax, z.imag());
                rmax = std::max(rmax, z.real());
            }
            const double pad = 0.25 * std::max(1.0, rmax - s.abscissa);
            rlo = s.abscissa - pad;
            rhi = rmax + pad;
            const double ipad = 0.25 * std::max(1.0, imax - imin);
            ilo = imin - ipad;
            ihi = imax + ipad;
            p.resolved["re-lo"] = rlo;
            p.resolved["re-hi"] = rhi;
            p.resolved["im-lo"] = ilo;
            p.resolved["im-hi"] = ihi;
        }
        const std::size_t nre = p.get<std::size_t>("res-re", res_re, 60);
        const std::size_t nim = p.get<std::size_t>("res-im", res_im, 40);
        const unsigned jobs = common.jobs ? common.jobs : default_jobs();
        const PseudospectrumGrid g =
            pseudospectrum_grid(a, {rlo, rhi}, {ilo, ihi}, {nre, nim}, jobs);

        const fs::path dir = prepare_output_dir(common.output_dir);
        std::string text = "im\\re";
        for (double re : g.re_axis) text += "," + io::fmt17(re);
        text += "\n";
        for (std::size_t i = 0; i < g.im_axis.size(); ++i) {
            text += io::fmt17(g.im_axis[i]);
            for (std::size_t j = 0; j < g.re_axis.size(); ++j)
                text += "," + io::fmt17(g.sigma[i * g.re_axis.size() + j]);
            text += "\n";
        }
        io::write_text_atomic(dir / "pseudo.csv", text);
        write_run_json(dir, "pseudo", common.seed, common.jobs, p.resolved);
    }
};

struct ImsCmd {
    CommonFlags common;
    double gamma = 0.0, kappa = 0.0, theta = -1.0, box = 8.0, nu = -1.0;
    std::size_t n = 4000, refine = 3;

    void run(CLI::App* cmd) {
        json cfg;
        Params p;
        p.app = cmd;
        if (!common.config_path.empty()) {
            cfg = load_config(common.config_path, "ims");
            p.config = &cfg;
        }
        const double g = p.require("gamma", gamma);
        const double kap = p.require("kappa", kappa);
        double th = p.get("theta", theta, -1.0);
        if (th < 0.0) th = theta_max(kap) / 2.0;
        double nuv = p.get("nu", nu, -1.0);
        if (nuv < 0.0) nuv = localization_nu(kap);
        const double bx = p.get("box", box, 8.0);
        const std::size_t n0 = p.get<std::size_t>("n", n, 4000);
        const std::size_t levels = p.get<std::size_t>("refine", refine, 3);

        const RealPartSpec spec = RealPartSpec::canonical(g, kap, th);
        const double alpha = effective_alpha(spec);

        const fs::path dir = prepare_output_dir(common.output_dir);
        io::Csv csv("level,n,h,residual,ratio");
        double prev = 0.0;
        for (std::size_t level = 0; level < levels; ++level) {
            const std::size_t nn = n0 << level;
            const Discretization disc = Discretization::fd(nn, bx);
            const SymTridiag H = assemble_real_part(spec, disc);
            const CutoffProfile cut = build_cutoffs(alpha, nuv, H.nodes);
            const double res = ims_identity_residual(spec, disc, cut);
            csv.row({std::to_string(level), std::to_string(nn), io::fmt17(H.h),
                     io::fmt17(res), level == 0 ? "" : io::fmt17(prev / res)});
            prev = res;
        }
        io::write_text_atomic(dir / "ims.csv", csv.text);
        write_run_json(dir, "ims", common.seed, common.jobs, p.resolved);
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral laboratory for 1D Schrodinger operators with a bounded "
                 "imaginary potential"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    SpectrumCmd sc;
    auto* c1 = app.add_subcommand("spectrum", "low eigenvalues with reliability tags");
    sc.common.attach(c1);
    c1->add_option("--gamma", sc.gamma, "imaginary coupling");
    c1->add_option("--kappa", sc.kappa, "potential exponent");
    c1->add_option("--theta", sc.theta, "dilation angle Im w");
    c1->add_option("--u", sc.u, "real dilation Re w");
    c1->add_option("--scheme", sc.scheme, "hermite | fd");
    c1->add_option("--n", sc.n, "basis/grid size");
    c1->add_option("--k", sc.k, "eigenvalues to keep");
    c1->add_option("--quad-order", sc.quad_order, "Hermite quadrature order (0 = auto)");
    c1->add_option("--box", sc.box, "FD half-width");
    c1->add_option("--angles", sc.angles, "angles for the --svg overlay");
    c1->add_flag("--svg", sc.svg, "emit spectrum.svg with the numerical-range polygon");
    c1->add_flag("--no-reliability", sc.no_reliability, "skip the reliability assessment");

    SweepCmd sw;
    auto* c2 = app.add_subcommand("sweep", "gamma sweep with power-law fit");
    sw.common.attach(c2);
    c2->add_option("--kappa", sw.kappa, "potential exponent");
    c2->add_option("--gammas", sw.gammas, "grid: lo:hi:Nlog, lo:hi:Nlin, or list");
    c2->add_option("--theta", sw.theta, "dilation angle (default theta_max/2)");
    c2->add_option("--n0", sw.n0, "initial Hermite resolution");
    c2->add_option("--n-cap", sw.ncap, "resolution cap");
    c2->add_option("--k", sw.k, "eigenvalues per spectrum");
    c2->add_flag("--no-certified", sw.no_certified, "skip the FD certified bounds");
    c2->add_flag("--no-auto-scale", sw.no_auto_scale, "disable the real-dilation rescaling");

    BoundCmd bc;
    auto* c3 = app.add_subcommand("bound", "certified lower bound via H_gamma(theta)");
    bc.common.attach(c3);
    c3->add_option("--gamma", bc.gamma, "single coupling");
    c3->add_option("--gammas", bc.gammas, "coupling grid (see sweep)");
    c3->add_option("--kappa", bc.kappa, "potential exponent");
    c3->add_option("--theta", bc.theta, "dilation angle (default theta_max/2)");

    SemigroupCmd sg;
    auto* c4 = app.add_subcommand("semigroup", "implicit-midpoint decay experiment");
    sg.common.attach(c4);
    c4->add_option("--gamma", sg.gamma, "imaginary coupling");
    c4->add_option("--kappa", sg.kappa, "potential exponent");
    c4->add_option("--scheme", sg.scheme, "fd | hermite");
    c4->add_option("--n", sg.n, "grid/basis size");
    c4->add_option("--box", sg.box, "FD half-width");
    c4->add_option("--t-end", sg.t_end, "final time");
    c4->add_option("--dt", sg.dt, "step size");
    c4->add_option("--psi0", sg.psi0, "gaussian | mode");
    c4->add_option("--mode", sg.mode, "mode index for --psi0 mode");
    c4->add_option("--window-lo", sg.window_lo, "fit window start (default t_end/2)");
    c4->add_option("--window-hi", sg.window_hi, "fit window end (default t_end)");

    NumrangeCmd nr;
    auto* c5 = app.add_subcommand("numrange", "numerical-range boundary polygon");
    nr.common.attach(c5);
    c5->add_option("--gamma", nr.gamma, "imaginary coupling");
    c5->add_option("--kappa", nr.kappa, "potential exponent");
    c5->add_option("--theta", nr.theta, "dilation angle");
    c5->add_option("--u", nr.u, "real dilation");
    c5->add_option("--scheme", nr.scheme, "hermite | fd");
    c5->add_option("--n", nr.n, "basis/grid size");
    c5->add_option("--box", nr.box, "FD half-width");
    c5->add_option("--quad-order", nr.quad_order, "quadrature order (0 = auto)");
    c5->add_option("--angles", nr.angles, "supporting directions");

    PseudoCmd ps;
    auto* c6 = app.add_subcommand("pseudo", "sigma_min field on a complex grid");
    ps.common.attach(c6);
    c6->add_option("--gamma", ps.gamma, "imaginary coupling");
    c6->add_option("--kappa", ps.kappa, "potential exponent");
    c6->add_option("--theta", ps.theta, "dilation angle");
    c6->add_option("--scheme", ps.scheme, "hermite | fd");
    c6->add_option("--n", ps.n, "basis/grid size");
    c6->add_option("--box", ps.box, "FD half-width");
    c6->add_option("--quad-order", ps.quad_order, "quadrature order (0 = auto)");
    c6->add_option("--re-lo", ps.re_lo, "grid window");
    c6->add_option("--re-hi", ps.re_hi, "grid window");
    c6->add_option("--im-lo", ps.im_lo, "grid window");
    c6->add_option("--im-hi", ps.im_hi, "grid window");
    c6->add_option("--res-re", ps.res_re, "grid resolution (<= 200)");
    c6->add_option("--res-im", ps.res_im, "grid resolution (<= 200)");

    ImsCmd im;
    auto* c7 = app.add_subcommand("ims", "IMS localization identity residual");
    im.common.attach(c7);
    c7->add_option("--gamma", im.gamma, "imaginary coupling");
    c7->add_option("--kappa", im.kappa, "potential exponent");
    c7->add_option("--theta", im.theta, "dilation angle (default theta_max/2)");
    c7->add_option("--nu", im.nu, "cutoff exponent (default 1/(2+2 kappa))");
    c7->add_option("--n", im.n, "base grid size");
    c7->add_option("--box", im.box, "FD half-width");
    c7->add_option("--refine", im.refine, "number of halving levels");

    try {
        app.parse(argc, argv);
        if (c1->parsed()) sc.run(c1);
        if (c2->parsed()) sw.run(c2);
        if (c3->parsed()) bc.run(c3);
        if (c4->parsed()) sg.run(c4);
        if (c5->parsed()) nr.run(c5);
        if (c6->parsed()) ps.run(c6);
        if (c7->parsed()) im.run(c7);
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_name() == "CallForHelp" || e.get_name() == "CallForVersion") {
            app.exit(e);
            return 0;
        }
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const ReliabilityError& e) {
        std::cerr << "reliability failure: " << e.what() << "\n";
        return 4;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}
