#include "pbphase/cli.hpp"

#include <charconv>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "pbphase/phase_operators.hpp"
#include "pbphase/verification.hpp"

namespace pbphase::cli {
namespace {

constexpr std::size_t max_cli_dim = 4096;

struct io_failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << content;
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw io_failure("cannot open '" + path + "' for writing");
    }
    file << content;
    file.flush();
    if (!file) {
        throw io_failure("write to '" + path + "' failed");
    }
}

Operator build_named_operator(const std::string& name, std::size_t dim) {
    const HilbertDim h = HilbertDim::from_dim(dim);
    if (name == "number") return number_operator(h);
    if (name == "dft") return dft(h);
    if (name == "pb-spectral") return pb_phase_operator(h).spectral;
    if (name == "pb-closed") return pb_phase_operator(h).closed_form;
    if (name == "pb-paper-literal") return pb_phase_operator(h).paper_literal;
    if (name == "lsg") return lsg_shift_operator(h);
    if (name == "log-lsg") return log_shift_operator(h);
    throw usage_error("unknown operator '" + name + "'");
}

struct OperatorArgs {
    std::string name;
    std::size_t dim = 0;
    std::string out;
    std::string format = "json";
};

struct PropagateArgs {
    std::size_t sites = 0;
    double gamma = 1.0;
    std::size_t excite = 0;
    double z_max = 0.0;
    std::size_t samples = 2;
    std::string method = "spectral";
    std::string out;
    double ode_step = 0.0;
    bool parallel = false;
};

struct RevivalArgs {
    std::size_t sites = 0;
    double gamma = 1.0;
    std::size_t excite = 0;
    double z_max = 0.0;
    double tol = 1e-9;
};

struct SelftestArgs {
    std::size_t max_dim = 16;
    std::uint64_t seed = 7;
};

FieldState excitation(std::size_t sites, std::size_t excite) {
    if (excite >= sites) {
        throw usage_error("--excite must lie in [0, sites)");
    }
    return FieldState::basis(sites, excite);
}

int cmd_operator(const OperatorArgs& a, std::ostream& out) {
    if (a.format != "json") {
        throw usage_error("operators are written as json only");
    }
    write_output(a.out, operator_to_json(build_named_operator(a.name, a.dim)), out);
    return ok;
}

int cmd_propagate(const PropagateArgs& a, std::ostream& out) {
    const RingLattice lat(a.sites, a.gamma);
    PropagationPlan plan;
    plan.z_max = a.z_max;
    plan.samples = a.samples;
    plan.method = parse_method(a.method);
    plan.ode_step = a.ode_step;
    plan.parallel = a.parallel;
    const IntensityTrace trace = intensity_trace(lat, excitation(a.sites, a.excite), plan);
    write_output(a.out, trace_to_csv(trace), out);
    return ok;
}

int cmd_revivals(const RevivalArgs& a, std::ostream& out) {
    const RingLattice lat(a.sites, a.gamma);
    const auto revivals = revival_search(lat, excitation(a.sites, a.excite), a.z_max, a.tol);
    for (const Revival& r : revivals) {
        out << "z=" << format_double(r.z, 15) << " fidelity=" << format_double(r.fidelity, 15) << '\n';
    }
    out << "count=" << revivals.size() << '\n';
    return ok;
}

int cmd_selftest(const SelftestArgs& a, std::ostream& out) {
    const auto report = verification::run_selftest({a.max_dim, a.seed}, out);
    return report.all_passed() ? ok : verification_failed;
}

}  // namespace

std::string format_double(double v, int significant) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, significant);
    return std::string(buf, res.ptr);
}

std::string operator_to_json(const Operator& op) {
    const std::size_t n = op.dim();
    std::vector<std::vector<double>> re(n, std::vector<double>(n));
    std::vector<std::vector<double>> im(n, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            re[r][c] = op(r, c).real();
            im[r][c] = op(r, c).imag();
        }
    }
    nlohmann::ordered_json doc;
    doc["dim"] = n;
    doc["re"] = re;
    doc["im"] = im;
    return doc.dump() + "\n";
}

std::string trace_to_csv(const IntensityTrace& trace) {
    std::string text = "z";
    const std::size_t sites = trace.intensities.empty() ? 0 : trace.intensities.front().size();
    for (std::size_t s = 0; s < sites; ++s) {
        text += ",site" + std::to_string(s);
    }
    text += '\n';
    for (std::size_t i = 0; i < trace.samples(); ++i) {
        text += format_double(trace.z_values[i]);
        for (const double v : trace.intensities[i]) {
            text += ',';
            text += format_double(v);
        }
        text += '\n';
    }
    return text;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Finite-dimensional phase operators and circular waveguide propagation", "pbphase"};
    app.require_subcommand(1);

    OperatorArgs op;
    auto* operator_cmd = app.add_subcommand("operator", "Write an operator matrix as JSON");
    operator_cmd
        ->add_option("name", op.name, "Operator to build")
        ->required()
        ->check(CLI::IsMember({"number", "dft", "pb-spectral", "pb-closed", "pb-paper-literal", "lsg", "log-lsg"}));
    operator_cmd->add_option("--dim", op.dim, "Hilbert-space dimension s+1")->required()->check(CLI::Range(std::size_t{1}, max_cli_dim));
    operator_cmd->add_option("--out", op.out, "Output path (default stdout)");
    operator_cmd->add_option("--format", op.format, "Output format")->check(CLI::IsMember({"json", "csv"}));

    PropagateArgs prop;
    auto* propagate_cmd = app.add_subcommand("propagate", "Write a per-site intensity trace as CSV");
    propagate_cmd->add_option("--sites", prop.sites, "Number of guides in the ring")->required()->check(CLI::Range(std::size_t{2}, max_cli_dim));
    propagate_cmd->add_option("--gamma", prop.gamma, "Coupling constant")->required();
    propagate_cmd->add_option("--excite", prop.excite, "Initially excited guide")->required();
    propagate_cmd->add_option("--z-max", prop.z_max, "Propagation distance")->required();
    propagate_cmd->add_option("--samples", prop.samples, "Number of z samples including both ends")->required();
    propagate_cmd->add_option("--method", prop.method, "Propagator")->check(CLI::IsMember({"spectral", "bessel", "folded", "ode"}));
    propagate_cmd->add_option("--out", prop.out, "Output path (default stdout)");
    propagate_cmd->add_option("--ode-step", prop.ode_step, "RK4 step (default min(1e-3, 0.01/gamma))");
    propagate_cmd->add_flag("--parallel", prop.parallel, "Sample z points on several threads");

    RevivalArgs rev;
    auto* revivals_cmd = app.add_subcommand("revivals", "List self-imaging distances of a single-site excitation");
    revivals_cmd->add_option("--sites", rev.sites, "Number of guides in the ring")->required()->check(CLI::Range(std::size_t{2}, max_cli_dim));
    revivals_cmd->add_option("--gamma", rev.gamma, "Coupling constant")->required();
    revivals_cmd->add_option("--excite", rev.excite, "Initially excited guide")->required();
    revivals_cmd->add_option("--z-max", rev.z_max, "Search range (0, z-max)")->required();
    revivals_cmd->add_option("--tol", rev.tol, "Accept maxima with fidelity above 1 - tol");

    SelftestArgs self;
    auto* selftest_cmd = app.add_subcommand("selftest", "Run the invariant suite");
    selftest_cmd->add_option("--max-dim", self.max_dim, "Largest Hilbert-space dimension checked")->check(CLI::Range(std::size_t{2}, std::size_t{256}));
    selftest_cmd->add_option("--seed", self.seed, "Seed for randomised checks");

    std::vector<std::string> argv_storage{"pbphase"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& s : argv_storage) {
        argv.push_back(s.c_str());
    }

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return e.get_exit_code() == 0 ? ok : usage;
    }

    try {
        if (*operator_cmd) return cmd_operator(op, out);
        if (*propagate_cmd) return cmd_propagate(prop, out);
        if (*revivals_cmd) return cmd_revivals(rev, out);
        if (*selftest_cmd) return cmd_selftest(self, out);
    } catch (const usage_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    } catch (const io_failure& e) {
        err << "error: " << e.what() << '\n';
        return io;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << '\n';
        return usage;
    }
    return usage;
}

}  // namespace pbphase::cli
