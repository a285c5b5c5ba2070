#include "egp/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "egp/egp.hpp"
#include "egp/error.hpp"
#include "egp/kernels.hpp"
#include "egp/report_io.hpp"
#include "egp/special_functions.hpp"
#include "egp/verify.hpp"

namespace egp {

namespace {

constexpr std::uint64_t kDefaultSeed = 42;

// Usage problems found after CLI11 has accepted the command line.
class UsageError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

double parse_number(const std::string& text, const std::string& what)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != text.size()) {
        throw UsageError(what + ": '" + text + "' is not a number");
    }
    return v;
}

std::vector<std::string> split(const std::string& text, char sep)
{
    std::vector<std::string> parts;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, sep)) {
        item.erase(0, item.find_first_not_of(" \t"));
        item.erase(item.find_last_not_of(" \t") + 1);
        parts.push_back(item);
    }
    return parts;
}

std::vector<double> parse_list(const std::string& text, const std::string& what)
{
    std::vector<double> out;
    for (const std::string& item : split(text, ',')) {
        out.push_back(parse_number(item, what));
    }
    if (out.empty()) {
        throw UsageError(what + ": empty list");
    }
    return out;
}

std::vector<ParameterPair> parse_pairs(const std::string& text)
{
    std::vector<ParameterPair> out;
    for (const std::string& item : split(text, ';')) {
        const std::vector<std::string> parts = split(item, ',');
        if (parts.size() != 2) {
            throw UsageError("--pairs: expected 's,t' entries separated by ';', got '" + item + "'");
        }
        out.emplace_back(parse_number(parts[0], "--pairs"), parse_number(parts[1], "--pairs"));
    }
    if (out.empty()) {
        throw UsageError("--pairs: empty list");
    }
    return out;
}

std::uint64_t parse_seed(const std::string& text, const std::string& what)
{
    const bool digits = !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::isdigit(c) != 0;
    });
    if (!digits) {
        throw UsageError(what + ": '" + text + "' is not a non-negative integer");
    }
    try {
        return std::stoull(text);
    } catch (const std::out_of_range&) {
        throw UsageError(what + ": '" + text + "' is out of range");
    }
}

void warn_near_unit(const ParameterPair& p, std::ostream& err)
{
    if (p.near_unit_gap()) {
        err << "warning: |t-s| = " << format_number(p.gap())
            << " is within 1e-9 of 1; signs near the excluded boundary are unreliable\n";
    }
}

double require(const std::optional<double>& v, const char* flag, const std::string& kind)
{
    if (!v) {
        throw UsageError(std::string("eval ") + kind + ": " + flag + " is required");
    }
    return *v;
}

void emit(const std::string& text, const std::string& path, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    file << text;
    if (!file) {
        throw UsageError("--output: cannot write '" + path + "'");
    }
}

// Ordered (name, value) fields rendered in the chosen format.
std::string render_fields(const std::vector<std::pair<std::string, double>>& fields,
                          const std::string& format)
{
    std::ostringstream out;
    if (format == "json") {
        out << "{";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i == 0 ? "" : ", ") << nlohmann::json(fields[i].first).dump() << ": "
                << format_number(fields[i].second);
        }
        out << "}\n";
    } else if (format == "csv") {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i == 0 ? "" : ",") << fields[i].first;
        }
        out << "\n";
        for (std::size_t i = 0; i < fields.size(); ++i) {
            out << (i == 0 ? "" : ",") << format_number(fields[i].second);
        }
        out << "\n";
    } else {
        for (const auto& [name, value] : fields) {
            out << name << ' ' << format_number(value) << "\n";
        }
    }
    return out.str();
}

struct EvalOptions
{
    std::string kind;
    std::optional<double> s, t, x, alpha, beta, u, lambda, r;
    bool integral = false;
    std::string format = "plain";
};

int run_eval(const EvalOptions& o, std::ostream& out, std::ostream& err)
{
    const std::string& k = o.kind;
    std::vector<std::pair<std::string, double>> fields;
    auto pair = [&] {
        ParameterPair p(require(o.s, "--s", k), require(o.t, "--t", k));
        warn_near_unit(p, err);
        return p;
    };
    if (o.integral && k != "zsecond") {
        throw UsageError("--integral applies to 'eval zsecond' only");
    }
    if (k == "z") {
        const ParameterPair p = pair();
        fields.emplace_back("value", z_value(p, require(o.x, "--x", k)));
    } else if (k == "zprime") {
        const ParameterPair p = pair();
        fields.emplace_back("value", z_prime(p, require(o.x, "--x", k)));
    } else if (k == "zsecond") {
        const ParameterPair p = pair();
        const double x = require(o.x, "--x", k);
        if (o.integral) {
            const QuadratureResult res = z_second_integral(p, x, QuadratureConfig{});
            fields.emplace_back("value", res.value);
            fields.emplace_back("err_estimate", res.err_estimate);
        } else {
            fields.emplace_back("value", z_second_direct(p, x));
        }
    } else if (k == "ratio") {
        const ParameterPair p = pair();
        fields.emplace_back("value", gamma_ratio(p, require(o.x, "--x", k)));
    } else if (k == "digamma") {
        fields.emplace_back("value", digamma(require(o.x, "--x", k)));
    } else if (k == "trigamma") {
        fields.emplace_back("value", trigamma(require(o.x, "--x", k)));
    } else if (k == "q") {
        const KernelParams p(require(o.alpha, "--alpha", k), require(o.beta, "--beta", k));
        fields.emplace_back("value", q_kernel(p, require(o.u, "--u", k)));
    } else {
        fields.emplace_back("value", big_q(require(o.s, "--s", k), require(o.t, "--t", k),
                                           require(o.lambda, "--lambda", k),
                                           require(o.r, "--r", k)));
    }
    out << render_fields(fields, o.format);
    return kExitOk;
}

struct BoundsOptions
{
    double s = 0.0, t = 0.0, x = 0.0, x_ref = 0.0;
    std::string format = "plain";
};

int run_bounds(const BoundsOptions& o, std::ostream& out, std::ostream& err)
{
    const ParameterPair p(o.s, o.t);
    warn_near_unit(p, err);
    const BoundPair b = ratio_bounds(p, o.x, o.x_ref);
    const double ratio = gamma_ratio(p, o.x);
    out << render_fields({{"lower", b.lower},
                          {"ratio", ratio},
                          {"upper", b.upper},
                          {"lower_margin", ratio - b.lower},
                          {"upper_margin", b.upper - ratio}},
                         o.format);
    return kExitOk;
}

struct VerifyOptions
{
    std::string check;
    std::optional<std::string> seed;
    std::size_t count = 200;
    std::optional<std::string> pairs, x, u;
    std::optional<double> tol;
    std::string format = "json";
    std::string output;
    bool no_timestamp = false;
};

int run_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err)
{
    std::uint64_t seed = kDefaultSeed;
    if (o.seed) {
        seed = parse_seed(*o.seed, "--seed");
    } else if (const char* env = std::getenv("EGP_SEED"); env != nullptr) {
        seed = parse_seed(env, "EGP_SEED");
    }

    ScanGrid grid = o.pairs ? ScanGrid{} : ScanGrid::generate(o.count, seed);
    grid.seed = seed;
    if (o.pairs) {
        grid.pairs = parse_pairs(*o.pairs);
    }
    std::vector<double> band_x = log_spaced(0.05, 1e4, 200);
    if (o.x) {
        grid.x_values = parse_list(*o.x, "--x");
        band_x = grid.x_values;
    }
    if (o.u) {
        grid.u_values = parse_list(*o.u, "--u");
    }
    if (o.tol && !(*o.tol >= 0.0)) {
        throw UsageError("--tol: tol >= 0 required");
    }
    grid.validate();
    for (const ParameterPair& p : grid.pairs) {
        warn_near_unit(p, err);
    }

    auto tol = [&](double fallback) { return o.tol.value_or(fallback); };
    using Check = std::function<VerificationReport()>;
    const std::vector<std::pair<std::string, Check>> checks = {
        {"theorem1", [&] { return verify_theorem1(grid, tol(kTheorem1Tol)); }},
        {"lemma3", [&] { return verify_lemma3_logconvexity(grid, tol(kLemma3Tol)); }},
        {"lemma3q", [&] { return verify_lemma3_Q(grid, tol(kLemma3Tol)); }},
        {"lemma4", [&] { return verify_lemma4(band_x, tol(kLemma4Tol)); }},
        {"identity", [&] { return verify_identity(grid, tol(kIdentityTol)); }},
        {"remark3", [&] { return verify_remark3(grid, tol(kRemark3Tol)); }},
        {"zlimit", [&] { return verify_zprime_limit(grid, tol(kZPrimeLimitTol)); }},
    };

    ReportDocument doc;
    for (const auto& [name, run] : checks) {
        if (o.check == "all" || o.check == name) {
            doc.reports.push_back(run());
        }
    }
    if (!o.no_timestamp) {
        doc.timestamp = utc_timestamp();
    }

    std::string text;
    if (o.format == "json") {
        text = to_json(doc);
    } else if (o.format == "csv") {
        text = to_csv(doc);
    } else {
        text = to_plain(doc);
    }
    emit(text, o.output, out);

    const bool all_passed = std::all_of(doc.reports.begin(), doc.reports.end(),
                                        [](const VerificationReport& r) { return r.passed; });
    return all_passed ? kExitOk : kExitViolation;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Gamma-ratio function evaluation, bounds and verification scans", "egp"};
    app.require_subcommand(1);
    const std::vector<std::string> formats = {"json", "csv", "plain"};

    EvalOptions eval;
    CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate one function value");
    eval_cmd->add_option("kind", eval.kind, "Function to evaluate")
        ->required()
        ->check(CLI::IsMember({"z", "zprime", "zsecond", "ratio", "digamma", "trigamma", "q", "Q"}));
    eval_cmd->add_option("--s", eval.s, "Parameter s");
    eval_cmd->add_option("--t", eval.t, "Parameter t");
    eval_cmd->add_option("--x", eval.x, "Argument x");
    eval_cmd->add_option("--alpha", eval.alpha, "Kernel alpha");
    eval_cmd->add_option("--beta", eval.beta, "Kernel beta");
    eval_cmd->add_option("--u", eval.u, "Kernel argument u");
    eval_cmd->add_option("--lambda", eval.lambda, "Q kernel shift");
    eval_cmd->add_option("--r", eval.r, "Q kernel argument");
    eval_cmd->add_flag("--integral", eval.integral, "zsecond via the integral representation");
    eval_cmd->add_option("--format", eval.format, "Output format")
        ->check(CLI::IsMember(formats));

    BoundsOptions bounds;
    CLI::App* bounds_cmd = app.add_subcommand("bounds", "Two-sided bounds on Gamma(x+t)/Gamma(x+s)");
    bounds_cmd->add_option("--s", bounds.s, "Parameter s")->required();
    bounds_cmd->add_option("--t", bounds.t, "Parameter t")->required();
    bounds_cmd->add_option("--x", bounds.x, "Argument x")->required();
    bounds_cmd->add_option("--x-ref", bounds.x_ref, "Reference point, x_ref <= x")->required();
    bounds_cmd->add_option("--format", bounds.format, "Output format")
        ->check(CLI::IsMember(formats));

    VerifyOptions verify;
    CLI::App* verify_cmd = app.add_subcommand("verify", "Run verification scans");
    verify_cmd->add_option("check", verify.check, "Check to run")
        ->required()
        ->check(CLI::IsMember(
            {"theorem1", "lemma3", "lemma3q", "lemma4", "identity", "remark3", "zlimit", "all"}));
    verify_cmd->add_option("--seed", verify.seed, "Grid seed (default: $EGP_SEED, else 42)");
    verify_cmd->add_option("--count", verify.count, "Number of generated (s,t) pairs");
    verify_cmd->add_option("--pairs", verify.pairs, "Explicit pairs \"s,t;s,t\"");
    verify_cmd->add_option("--x", verify.x, "Comma-separated x values");
    verify_cmd->add_option("--u", verify.u, "Comma-separated u values");
    verify_cmd->add_option("--tol", verify.tol, "Tolerance override for the selected checks");
    verify_cmd->add_option("--format", verify.format, "Output format")
        ->check(CLI::IsMember(formats));
    verify_cmd->add_option("--output", verify.output, "Write the report to a file");
    verify_cmd->add_flag("--no-timestamp", verify.no_timestamp, "Omit the timestamp field");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "egp: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (eval_cmd->parsed()) {
            return run_eval(eval, out, err);
        }
        if (bounds_cmd->parsed()) {
            return run_bounds(bounds, out, err);
        }
        return run_verify(verify, out, err);
    } catch (const DomainError& e) {
        err << "egp: domain error: " << e.what() << "\n";
    } catch (const QuadratureError& e) {
        err << "egp: " << e.what() << "\n";
    } catch (const std::exception& e) {
        err << "egp: " << e.what() << "\n";
    }
    return kExitUsage;
}

} // namespace egp
