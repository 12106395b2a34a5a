#include "cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "logsum/curves.hpp"
#include "logsum/errors.hpp"
#include "logsum/irl1.hpp"
#include "logsum/matrix.hpp"
#include "logsum/matrix_io.hpp"
#include "logsum/scalar.hpp"
#include "logsum/vector.hpp"

namespace logsum::cli {

namespace {

using Json = nlohmann::ordered_json;

std::string num17(double v) { return fmt::format("{:.17g}", v); }
std::string num6(double v) { return fmt::format("{:.6g}", v); }

Json json_or_null(std::optional<double> v) { return v ? Json(*v) : Json(nullptr); }

// usage-level failures detected after parsing (bad sweep spec, file layout)
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const CLI::Validator positive_finite(
    [](std::string &s) -> std::string {
        double v = 0;
        try {
            std::size_t used = 0;
            v = std::stod(s, &used);
            if (used != s.size())
                return "expected a number, got '" + s + "'";
        } catch (const std::exception &) {
            return "expected a number, got '" + s + "'";
        }
        if (!(std::isfinite(v) && v > 0))
            return "must be a finite number > 0, got " + s;
        return {};
    },
    "POSITIVE");

struct Common {
    double lambda = 0;
    double eps = 0;
    std::string format;
    std::string output;
};

void add_params(CLI::App *cmd, Common &c) {
    cmd->add_option("--lambda", c.lambda, "prox index lambda > 0")->required()->check(positive_finite);
    cmd->add_option("--eps", c.eps, "penalty scale epsilon > 0")->required()->check(positive_finite);
}

void add_format(CLI::App *cmd, Common &c, const std::string &fallback,
                std::vector<std::string> choices = {"text", "csv", "json"}) {
    c.format = fallback;
    cmd->add_option("--format", c.format, "output format")
        ->check(CLI::IsMember(choices))
        ->capture_default_str();
    cmd->add_option("-o,--output", c.output, "write output to this file instead of stdout");
}

// Writes to --output when given, otherwise to the command's stdout stream.
class Sink {
public:
    Sink(const std::string &path, std::ostream &fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw UsageError("cannot open output file " + path);
            stream_ = file_.get();
        }
    }
    std::ostream &operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream *stream_;
};

struct SweepSpec {
    double from;
    double to;
    std::size_t points;
};

SweepSpec parse_sweep_spec(const std::string &s) {
    SweepSpec spec{};
    std::istringstream in(s);
    std::string a, b, n;
    if (!std::getline(in, a, ':') || !std::getline(in, b, ':') || !std::getline(in, n) )
        throw UsageError("--sweep expects a:b:n, got '" + s + "'");
    try {
        spec.from = std::stod(a);
        spec.to = std::stod(b);
        const long pts = std::stol(n);
        if (pts < 2)
            throw UsageError("--sweep needs n >= 2");
        spec.points = static_cast<std::size_t>(pts);
    } catch (const std::logic_error &) {
        throw UsageError("--sweep expects a:b:n, got '" + s + "'");
    }
    if (!(spec.from < spec.to))
        throw UsageError("--sweep needs a < b");
    return spec;
}

Json params_json(const ProxParams &p) {
    return Json{{"lambda", p.lambda()}, {"epsilon", p.epsilon()}};
}

// ---- prox -------------------------------------------------------------------

void cmd_prox(const Common &c, const std::vector<double> &zs, std::ostream &out) {
    const ProxParams p(c.lambda, c.eps);
    const VectorProxResult r = prox_vector(p, zs);
    std::vector<ProxResult> scalar;
    for (double z : zs)
        scalar.push_back(prox_scalar(p, z));

    Sink sink(c.output, out);
    std::ostream &os = *sink;
    if (c.format == "json") {
        Json alternatives = Json::array();
        for (double v : r.alternatives)
            alternatives.push_back(v);
        Json j;
        j["inputs"] = params_json(p);
        j["inputs"]["z"] = zs;
        j["values"] = r.canonical;
        j["kinds"] = Json::array();
        for (const auto &s : scalar)
            j["kinds"].push_back(to_string(s.kind()));
        j["regime"] = to_string(p.regime());
        j["z_star"] = json_or_null(p.jump_point());
        j["ambiguous_indices"] = r.ambiguous_indices;
        j["alternatives"] = alternatives;
        j["objective"] = r.objective_value;
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "z,prox,kind,alternative\n";
        for (std::size_t i = 0; i < zs.size(); ++i)
            os << num17(zs[i]) << ',' << num17(scalar[i].canonical()) << ',' << to_string(scalar[i].kind())
               << ',' << (scalar[i].is_singleton() ? std::string() : num17(scalar[i].nonzero())) << '\n';
    } else {
        os << "regime: " << to_string(p.regime()) << '\n';
        os << "z_star: " << (p.jump_point() ? num6(*p.jump_point()) : std::string("none")) << '\n';
        for (std::size_t i = 0; i < zs.size(); ++i) {
            os << "prox(" << num6(zs[i]) << ") = ";
            if (scalar[i].is_singleton())
                os << num6(scalar[i].canonical()) << '\n';
            else
                os << "{0, " << num6(scalar[i].nonzero()) << "}  ambiguous: |z| = z_star\n";
        }
        os << "objective: " << num6(r.objective_value) << '\n';
    }
}

// ---- zstar ------------------------------------------------------------------

int cmd_zstar(const Common &c, std::optional<double> tol, int max_iter, std::ostream &out,
              std::ostream &err) {
    const ProxParams p(c.lambda, c.eps);
    if (p.regime() == Regime::Convex) {
        err << "convex regime: no jump point (sqrt(lambda) <= epsilon)\n";
        return domain_error;
    }
    const ZStarResult r = z_star(p, tol.value_or(default_z_star_tolerance(p)), max_iter);
    Sink sink(c.output, out);
    std::ostream &os = *sink;
    if (c.format == "json") {
        Json j;
        j["inputs"] = params_json(p);
        j["z_star"] = r.z_star;
        j["bracket"] = {r.bracket.first, r.bracket.second};
        j["iterations"] = r.iterations;
        j["residual"] = r.residual;
        j["r2_at_z_star"] = r2(p, r.z_star);
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "z_star,bracket_lo,bracket_hi,iterations,residual\n";
        os << num17(r.z_star) << ',' << num17(r.bracket.first) << ',' << num17(r.bracket.second) << ','
           << r.iterations << ',' << num17(r.residual) << '\n';
    } else {
        os << "z_star: " << num6(r.z_star) << '\n'
           << "bracket: [" << num6(r.bracket.first) << ", " << num6(r.bracket.second) << "]\n"
           << "iterations: " << r.iterations << '\n'
           << "residual: " << num6(r.residual) << '\n'
           << "jump height r2(z_star): " << num6(r2(p, r.z_star)) << '\n';
    }
    return ok;
}

// ---- irl1 -------------------------------------------------------------------

struct IrlOptions {
    double z = 0;
    double x0 = 0;
    double tol = default_irl1_stop_tol;
    std::size_t max_iters = default_irl1_max_iters;
    std::string sweep;
};

void cmd_irl1_simulate(const Common &c, const IrlOptions &o, std::ostream &out) {
    const ProxParams p(c.lambda, c.eps);
    const IrlTrace t = irl1_simulate(p, o.z, o.x0, o.tol, o.max_iters);
    const double sign = o.z < 0 ? -1.0 : 1.0;
    Sink sink(c.output, out);
    std::ostream &os = *sink;
    if (c.format == "json") {
        Json j;
        j["inputs"] = params_json(p);
        j["inputs"]["z"] = o.z;
        j["inputs"]["x0"] = o.x0;
        Json iterates = Json::array();
        for (double x : t.iterates)
            iterates.push_back(sign * x);
        j["iterates"] = iterates;
        j["stop_reason"] = to_string(t.stop_reason);
        j["limit"] = t.limit_estimate;
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "iter,x\n";
        for (std::size_t k = 0; k < t.iterates.size(); ++k)
            os << k << ',' << num17(sign * t.iterates[k]) << '\n';
    } else {
        os << "iterations: " << t.iterates.size() - 1 << '\n'
           << "stop_reason: " << to_string(t.stop_reason) << '\n'
           << "limit: " << num6(t.limit_estimate) << '\n';
    }
}

void cmd_irl1_predict(const Common &c, const IrlOptions &o, std::ostream &out) {
    const ProxParams p(c.lambda, c.eps);
    const LimitPrediction pred = irl1_predict_limit(p, o.z, o.x0);
    const ProxResult prox = prox_scalar(p, o.z);
    const bool agree = irl1_agrees(prox, pred.limit);
    Sink sink(c.output, out);
    std::ostream &os = *sink;
    if (c.format == "json") {
        Json j;
        j["inputs"] = params_json(p);
        j["inputs"]["z"] = o.z;
        j["inputs"]["x0"] = o.x0;
        j["limit"] = pred.limit;
        j["classification"] = to_string(pred.classification);
        j["lemma"] = pred.justification;
        j["true_prox"] = prox.elements();
        j["agrees"] = agree;
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        os << "z,x0,limit,classification,lemma,true_prox,agrees\n";
        os << num17(o.z) << ',' << num17(o.x0) << ',' << num17(pred.limit) << ','
           << to_string(pred.classification) << ',' << pred.justification << ',' << num17(prox.canonical())
           << ',' << (agree ? "true" : "false") << '\n';
    } else {
        os << "limit: " << num6(pred.limit) << '\n'
           << "classification: " << to_string(pred.classification) << " (" << pred.justification << ")\n"
           << "true prox: ";
        if (prox.is_singleton())
            os << num6(prox.canonical()) << '\n';
        else
            os << "{0, " << num6(prox.nonzero()) << "}\n";
        os << (agree ? "IRL1 agrees with the true prox\n" : "IRL1 disagrees with the true prox\n");
    }
}

std::string interval_text(const Interval &iv) {
    if (iv.lo == iv.hi)
        return "{" + num6(iv.lo) + "}";
    return std::string(iv.lo_closed ? "[" : "(") + num6(iv.lo) + ", " + num6(iv.hi) + (iv.hi_closed ? "]" : ")");
}

void cmd_irl1_failures(const Common &c, const IrlOptions &o, std::ostream &out) {
    const ProxParams p(c.lambda, c.eps);
    const FailureReport rep = failure_intervals(p, o.x0);
    std::optional<SweepSpec> spec;
    if (!o.sweep.empty())
        spec = parse_sweep_spec(o.sweep);
    std::vector<FailureSweepRow> rows;
    if (spec)
        rows = failure_sweep(p, o.x0, spec->from, spec->to, spec->points);

    Sink sink(c.output, out);
    std::ostream &os = *sink;
    if (c.format == "json") {
        Json j;
        j["inputs"] = params_json(p);
        j["inputs"]["x0"] = o.x0;
        j["z_star"] = json_or_null(p.jump_point());
        j["case"] = to_string(rep.failure_case);
        j["intervals"] = Json::array();
        for (const auto &iv : rep.intervals)
            j["intervals"].push_back(
                {{"lo", iv.lo}, {"hi", iv.hi}, {"lo_closed", iv.lo_closed}, {"hi_closed", iv.hi_closed}});
        if (spec) {
            j["sweep"] = Json::array();
            for (const auto &r : rows)
                j["sweep"].push_back({{"z", r.z},
                                      {"irl1_limit", r.simulated_limit},
                                      {"predicted_limit", r.predicted_limit},
                                      {"true_prox", r.true_prox.canonical()},
                                      {"agree", r.agree},
                                      {"in_interval", r.in_reported_interval}});
        }
        os << j.dump(2) << '\n';
    } else if (c.format == "csv") {
        if (spec) {
            os << "z,irl1_limit,predicted_limit,true_prox,agree,in_interval\n";
            for (const auto &r : rows)
                os << num17(r.z) << ',' << num17(r.simulated_limit) << ',' << num17(r.predicted_limit) << ','
                   << num17(r.true_prox.canonical()) << ',' << (r.agree ? 1 : 0) << ','
                   << (r.in_reported_interval ? 1 : 0) << '\n';
        } else {
            os << "lo,hi,lo_closed,hi_closed\n";
            for (const auto &iv : rep.intervals)
                os << num17(iv.lo) << ',' << num17(iv.hi) << ',' << iv.lo_closed << ',' << iv.hi_closed << '\n';
        }
    } else {
        os << "regime: " << to_string(p.regime()) << '\n' << "case: " << to_string(rep.failure_case) << '\n';
        if (rep.intervals.empty()) {
            os << "IRL1 matches the true prox for every z\n";
        } else {
            os << "z_star: " << num6(rep.z_star) << '\n' << "IRL1 fails on:";
            for (std::size_t i = 0; i < rep.intervals.size(); ++i)
                os << (i ? " U " : " ") << interval_text(rep.intervals[i]);
            os << '\n';
        }
        if (spec) {
            std::size_t disagree = 0;
            for (const auto &r : rows)
                disagree += r.agree ? 0 : 1;
            os << "sweep: " << rows.size() << " points, " << disagree << " disagreements\n";
        }
    }
}

// ---- sweep ------------------------------------------------------------------

void cmd_sweep(const Common &c, double from, double to, std::size_t points, std::ostream &out) {
    const ProxParams p(c.lambda, c.eps);
    const std::vector<SweepRow> rows = prox_sweep(p, from, to, points);
    Sink sink(c.output, out);
    std::ostream &os = *sink;
    if (c.format == "json") {
        Json j;
        j["inputs"] = params_json(p);
        j["regime"] = to_string(p.regime());
        j["z_star"] = json_or_null(p.jump_point());
        j["rows"] = Json::array();
        for (const auto &r : rows)
            j["rows"].push_back({{"z", r.z}, {"prox", r.value}, {"branch", to_string(r.branch)}});
        os << j.dump(2) << '\n';
    } else if (c.format == "text") {
        for (const auto &r : rows)
            os << num6(r.z) << '\t' << num6(r.value) << (r.branch == SweepRow::Branch::Single ? "" : "\t*") << '\n';
    } else {
        os << "z,prox,branch\n";
        for (const auto &r : rows)
            os << num17(r.z) << ',' << num17(r.value) << ',' << to_string(r.branch) << '\n';
    }
}

// ---- matprox ----------------------------------------------------------------

struct MatOptions {
    std::string in;
    std::string out;
    std::string matrix_format;
    std::string random_shape;
    std::optional<std::uint64_t> seed;
};

Eigen::MatrixXd random_matrix(const std::string &shape, std::uint64_t seed) {
    const auto x = shape.find('x');
    long rows = 0, cols = 0;
    try {
        if (x == std::string::npos)
            throw std::invalid_argument(shape);
        rows = std::stol(shape.substr(0, x));
        cols = std::stol(shape.substr(x + 1));
    } catch (const std::logic_error &) {
        throw UsageError("--random expects RxC, got '" + shape + "'");
    }
    if (rows < 1 || cols < 1)
        throw UsageError("--random needs positive dimensions");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXd m(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c)
            m(r, c) = normal(gen);
    return m;
}

io::MatrixFormat matrix_format(const std::string &choice, const std::string &path) {
    if (choice == "csv")
        return io::MatrixFormat::Csv;
    if (choice == "bin")
        return io::MatrixFormat::Binary;
    return io::format_from_extension(path);
}

void cmd_matprox(const Common &c, const MatOptions &o, std::ostream &out) {
    const ProxParams p(c.lambda, c.eps);
    Eigen::MatrixXd z;
    if (!o.random_shape.empty())
        z = random_matrix(o.random_shape, o.seed.value_or(0));
    else
        z = io::read_matrix(o.in, matrix_format(o.matrix_format, o.in));

    const MatrixProxResult r = prox_matrix(p, z);
    if (!o.out.empty())
        io::write_matrix(o.out, r.x_star, matrix_format(o.matrix_format, o.out));

    const SvdFactorization fin = svd(z);
    const Eigen::Index rank_in = numerical_rank(fin.singular_values);
    const Eigen::Index rank_out = (r.d.array() > 0).count();

    std::ostream &os = out;
    std::vector<double> d(r.d.data(), r.d.data() + r.d.size());
    std::vector<double> sigma(fin.singular_values.data(), fin.singular_values.data() + fin.singular_values.size());
    if (c.format == "json") {
        Json j;
        j["inputs"] = params_json(p);
        j["inputs"]["rows"] = z.rows();
        j["inputs"]["cols"] = z.cols();
        j["singular_values"] = sigma;
        j["d"] = d;
        j["ambiguous_indices"] = r.ambiguous_indices;
        j["objective"] = r.objective_value;
        j["rank_in"] = rank_in;
        j["rank_out"] = rank_out;
        os << j.dump(2) << '\n';
    } else {
        os << "shape: " << z.rows() << "x" << z.cols() << '\n' << "singular values:";
        for (double s : sigma)
            os << ' ' << num6(s);
        os << "\nshrunk values:  ";
        for (double v : d)
            os << ' ' << num6(v);
        os << "\nambiguous indices:";
        if (r.ambiguous_indices.empty())
            os << " none";
        for (auto i : r.ambiguous_indices)
            os << ' ' << i;
        os << "\nobjective: " << num6(r.objective_value) << '\n'
           << "rank: " << rank_in << " -> " << rank_out << '\n';
        if (o.out.empty())
            io::write_csv(os, r.x_star);
    }
}

} // namespace

int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Exact proximity operator of the log-sum penalty", "logsum-prox"};
    app.require_subcommand(1);

    Common prox_c, zstar_c, sim_c, pred_c, fail_c, sweep_c, mat_c;

    auto *prox = app.add_subcommand("prox", "prox of the log-sum penalty at a scalar or vector z");
    std::vector<double> zs;
    add_params(prox, prox_c);
    prox->add_option("--z", zs, "input value(s), comma separated")->required()->delimiter(',');
    add_format(prox, prox_c, "text");

    auto *zstar = app.add_subcommand("zstar", "jump point z* of the nonconvex prox");
    std::optional<double> zs_tol;
    int zs_max_iter = default_z_star_max_iter;
    add_params(zstar, zstar_c);
    zstar->add_option("--tol", zs_tol, "bisection tolerance on the bracket width")->check(positive_finite);
    zstar->add_option("--max-iter", zs_max_iter, "bisection iteration cap")->check(CLI::PositiveNumber);
    add_format(zstar, zstar_c, "text");

    auto *irl1 = app.add_subcommand("irl1", "iteratively reweighted l1 analysis");
    irl1->require_subcommand(1);
    IrlOptions irl;
    auto *sim = irl1->add_subcommand("simulate", "run the reweighted iteration");
    auto *pred = irl1->add_subcommand("predict", "analytic limit of the iteration");
    auto *fail = irl1->add_subcommand("failures", "intervals where the iteration misses the prox");
    for (auto [cmd, c] : {std::pair{sim, &sim_c}, std::pair{pred, &pred_c}}) {
        add_params(cmd, *c);
        cmd->add_option("--z", irl.z, "input value")->required();
        cmd->add_option("--x0", irl.x0, "initial guess >= 0")->required()->check(CLI::NonNegativeNumber);
    }
    sim->add_option("--tol", irl.tol, "stop when successive iterates differ by at most this")
        ->check(positive_finite);
    sim->add_option("--max-iters", irl.max_iters, "iteration cap")->check(CLI::PositiveNumber);
    add_format(sim, sim_c, "csv");
    add_format(pred, pred_c, "text");
    add_params(fail, fail_c);
    fail->add_option("--x0", irl.x0, "initial guess >= 0")->required()->check(CLI::NonNegativeNumber);
    fail->add_option("--sweep", irl.sweep, "a:b:n grid of z for comparison columns");
    add_format(fail, fail_c, "text");

    auto *sweep = app.add_subcommand("sweep", "sample the prox graph");
    double from = 0, to = 0;
    std::size_t points = 0;
    add_params(sweep, sweep_c);
    sweep->add_option("--from", from, "first z")->required();
    sweep->add_option("--to", to, "last z")->required();
    sweep->add_option("--points", points, "number of samples >= 2")->required()->check(CLI::Range(2, 100'000'000));
    add_format(sweep, sweep_c, "csv");

    auto *matprox = app.add_subcommand("matprox", "prox of the log-sum penalty of singular values");
    MatOptions mat;
    add_params(matprox, mat_c);
    auto *in_opt = matprox->add_option("--in", mat.in, "input matrix file")->check(CLI::ExistingFile);
    auto *rand_opt = matprox->add_option("--random", mat.random_shape, "use a random RxC Gaussian matrix");
    in_opt->excludes(rand_opt);
    matprox->add_option("--seed", mat.seed, "seed for --random");
    matprox->add_option("--out", mat.out, "output matrix file");
    mat.matrix_format = "auto";
    matprox->add_option("--format", mat.matrix_format, "matrix file format")
        ->check(CLI::IsMember({"auto", "csv", "bin"}))
        ->capture_default_str();
    mat_c.format = "text";
    matprox->add_option("--report", mat_c.format, "report format")->check(CLI::IsMember({"text", "json"}));

    std::vector<const char *> argv;
    argv.reserve(args.size());
    for (const auto &a : args)
        argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp &e) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp &e) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError &e) {
        err << "error: " << e.what() << '\n';
        err << "run with --help for usage\n";
        return usage_error;
    }

    try {
        if (prox->parsed()) {
            cmd_prox(prox_c, zs, out);
        } else if (zstar->parsed()) {
            return cmd_zstar(zstar_c, zs_tol, zs_max_iter, out, err);
        } else if (sim->parsed()) {
            cmd_irl1_simulate(sim_c, irl, out);
        } else if (pred->parsed()) {
            cmd_irl1_predict(pred_c, irl, out);
        } else if (fail->parsed()) {
            cmd_irl1_failures(fail_c, irl, out);
        } else if (sweep->parsed()) {
            cmd_sweep(sweep_c, from, to, points, out);
        } else if (matprox->parsed()) {
            if (mat.in.empty() && mat.random_shape.empty()) {
                err << "error: matprox needs --in FILE or --random RxC\n";
                return usage_error;
            }
            cmd_matprox(mat_c, mat, out);
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << '\n';
        return usage_error;
    } catch (const io::MatrixFormatError &e) {
        err << "error: malformed matrix: " << e.what() << '\n';
        return usage_error;
    } catch (const RegimeError &e) {
        err << "error: " << e.what() << '\n';
        return domain_error;
    } catch (const DomainError &e) {
        err << "error: " << e.what() << '\n';
        return domain_error;
    } catch (const ConvergenceError &e) {
        err << "error: " << e.what() << '\n';
        return convergence_failure;
    }
    return ok;
}

} // namespace logsum::cli
