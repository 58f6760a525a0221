// photon-adder: command-line front end for the conditional photon-addition
// library.  Each subcommand emits the data behind one family of plots as CSV
// (fixed 17-significant-digit scientific notation, byte-deterministic) or
// JSON; `verify` runs the formula-vs-oracle suite.
//
// Exit codes: 0 ok, 1 config error, 2 numeric failure, 3 verification failure.

#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <photonadder/added_coherent.hpp>
#include <photonadder/added_squeezed.hpp>
#include <photonadder/conditional.hpp>
#include <photonadder/fock.hpp>
#include <photonadder/mixtures.hpp>
#include <photonadder/phasespace.hpp>
#include <photonadder/serialize.hpp>
#include <photonadder/specfun.hpp>
#include <photonadder/verify.hpp>

namespace pa = photonadder;
using pa::conditional::BeamSplitter;
using pa::fock::FockVector;

namespace {

struct Opts {
    std::string input;
    double t2 = 0.8;
    double phi_t = 0.0;
    double phi_r = 0.0;
    std::vector<int> n0_list;
    int n0 = 1;
    std::string binomial = "N=5,p=0.8";
    std::string grid;
    std::string sweep;
    double phi = 0.0;
    double kappa_prime = std::numeric_limits<double>::quiet_NaN();
    std::string out;
    std::string format = "csv";
    std::string weights = "prior";
};

double parse_double(const std::string& s) {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("malformed number: '" + s + "'");
    return v;
}

int parse_int(const std::string& s) {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument("malformed integer: '" + s + "'");
    return v;
}

// "key1=v1,key2=v2" -> ordered pairs
std::vector<std::pair<std::string, std::string>> parse_kv_list(const std::string& s) {
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw std::invalid_argument("expected key=value, got '" + item + "'");
        out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
    }
    if (out.empty()) throw std::invalid_argument("empty key=value list: '" + s + "'");
    return out;
}

struct Axis {
    double lo = 0.0, hi = 0.0;
    int n = 0;
    std::vector<double> values() const {
        std::vector<double> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = (n == 1) ? lo : lo + (hi - lo) * i / (n - 1.0);
        return v;
    }
};

// "lo:hi:n"
Axis parse_axis(const std::string& s) {
    const auto c1 = s.find(':');
    const auto c2 = (c1 == std::string::npos) ? std::string::npos : s.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw std::invalid_argument("axis must be lo:hi:n, got '" + s + "'");
    Axis a;
    a.lo = parse_double(s.substr(0, c1));
    a.hi = parse_double(s.substr(c1 + 1, c2 - c1 - 1));
    a.n = parse_int(s.substr(c2 + 1));
    if (a.n < 1) throw std::invalid_argument("axis point count must be >= 1");
    if (a.n > 1 && !(a.hi > a.lo))
        throw std::invalid_argument("axis needs hi > lo for n > 1");
    return a;
}

// Merge "--grid name=lo:hi:n,..." into per-command axis defaults.
std::map<std::string, Axis> resolve_axes(const std::string& spec,
                                         std::map<std::string, Axis> defaults) {
    if (spec.empty()) return defaults;
    for (const auto& [key, val] : parse_kv_list(spec)) {
        if (defaults.find(key) == defaults.end())
            throw std::invalid_argument("unknown grid axis '" + key + "'");
        defaults[key] = parse_axis(val);
    }
    return defaults;
}

std::string family_of(const std::string& input_spec) {
    return input_spec.substr(0, input_spec.find(':'));
}

// "family:key=value" -> state
FockVector parse_input(const std::string& spec) {
    const auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument(
            "input must be family:key=value (coherent:beta=, squeezed:kappa=, "
            "fock:n=, custom:file=)");
    const std::string family = spec.substr(0, colon);
    const auto kvs = parse_kv_list(spec.substr(colon + 1));
    auto want = [&](const char* key) -> const std::string& {
        for (const auto& [k, v] : kvs)
            if (k == key) return v;
        throw std::invalid_argument("input family '" + family + "' needs " + key + "=");
    };
    if (family == "coherent") return pa::fock::coherent_state(parse_double(want("beta")));
    if (family == "squeezed") return pa::fock::squeezed_vacuum(parse_double(want("kappa")));
    if (family == "fock") return pa::fock::fock_state(parse_int(want("n")));
    if (family == "custom") return pa::serialize::load_fockvector(want("file"));
    throw std::invalid_argument("unknown input family '" + family + "'");
}

pa::mixtures::BinomialParams parse_binomial(const std::string& s) {
    pa::mixtures::BinomialParams bp{};
    bool have_n = false, have_p = false;
    for (const auto& [k, v] : parse_kv_list(s)) {
        if (k == "N") {
            bp.N = parse_int(v);
            have_n = true;
        } else if (k == "p") {
            bp.p = parse_double(v);
            have_p = true;
        } else {
            throw std::invalid_argument("binomial spec takes N= and p=, got '" + k + "'");
        }
    }
    if (!have_n || !have_p)
        throw std::invalid_argument("binomial spec must set both N= and p=");
    bp.validate();
    return bp;
}

BeamSplitter splitter_of(const Opts& o) {
    return BeamSplitter::from_transmittance(o.t2, o.phi_t, o.phi_r);
}

// Output sink: file when --out is set, stdout otherwise.
class Sink {
  public:
    explicit Sink(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw std::invalid_argument("cannot open output file '" + path + "'");
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

  private:
    std::ofstream file_;
};

void emit(const Opts& o, const std::string& command, const std::vector<std::string>& cols,
          const std::vector<std::vector<double>>& rows, const nlohmann::json& extra) {
    Sink sink(o.out);
    if (o.format == "csv") {
        pa::serialize::write_csv(sink.stream(), cols, rows);
    } else {
        nlohmann::json j;
        j["command"] = command;
        j["columns"] = cols;
        j["rows"] = rows;
        for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = it.value();
        sink.stream() << j.dump(2) << "\n";
    }
    sink.stream().flush();
}

bool closed_route(const Opts& o) { return !std::isnan(o.kappa_prime); }

// Conditioned state for one n0, either through the beam-splitter pipeline or
// directly from the down-tapered squeezing parameter kappa'.
FockVector state_for(const Opts& o, const std::string& default_input, int n0) {
    if (closed_route(o))
        return pa::added_squeezed::pasv_coefficients({o.kappa_prime, n0});
    const std::string spec = o.input.empty() ? default_input : o.input;
    return pa::conditional::conditional_zero_click(parse_input(spec), n0, splitter_of(o))
        .state;
}

std::vector<int> n0s_or(const Opts& o, std::vector<int> fallback) {
    return o.n0_list.empty() ? fallback : o.n0_list;
}

int cmd_probability(const Opts& o) {
    const std::string spec = o.input.empty() ? "coherent:beta=1.0" : o.input;
    const std::string family = family_of(spec);
    if (family != "coherent" && family != "squeezed")
        throw std::invalid_argument(
            "probability sweeps an amplitude; input family must be coherent or squeezed");
    const bool coherent = (family == "coherent");
    const Axis sweep =
        o.sweep.empty() ? (coherent ? Axis{0.0, 5.0, 201} : Axis{0.0, 0.95, 191})
                        : parse_axis(o.sweep);
    const auto bs = splitter_of(o);
    const auto n0s = n0s_or(o, {0, 1, 2, 3, 4});

    std::vector<std::vector<double>> rows;
    for (int n0 : n0s)
        for (double v : sweep.values()) {
            const double P = coherent ? pa::added_coherent::pacs_probability(v, bs, n0)
                                      : pa::added_squeezed::pasv_probability(v, bs, n0);
            rows.push_back({v, double(n0), P});
        }
    nlohmann::json extra;
    extra["family"] = family;
    extra["t2"] = o.t2;
    emit(o, "probability", {"param", "n0", "P"}, rows, extra);
    return 0;
}

int cmd_quadrature(const Opts& o) {
    const auto axes = resolve_axes(o.grid, {{"x", {-6.0, 6.0, 201}}, {"phi", {o.phi, o.phi, 1}}});
    const auto xs = axes.at("x").values();
    const auto phis = axes.at("phi").values();
    const auto n0s = n0s_or(o, {1, 4});

    std::vector<std::vector<double>> rows;
    nlohmann::json states;
    for (int n0 : n0s) {
        const auto s = state_for(o, "coherent:beta=1.0", n0);
        states[std::to_string(n0)] = pa::serialize::to_json(s);
        for (double phi : phis) {
            const auto vals = pa::phasespace::quadrature_distribution(s, phi, xs);
            for (std::size_t i = 0; i < xs.size(); ++i)
                rows.push_back({xs[i], phi, double(n0), vals[i]});
        }
    }
    nlohmann::json extra;
    extra["states"] = states;
    emit(o, "quadrature", {"x", "phi", "n0", "value"}, rows, extra);
    return 0;
}

int cmd_photon_dist(Opts o) {
    // default source: down-tapered squeezing kappa' = 0.6
    if (o.input.empty() && !closed_route(o)) o.kappa_prime = 0.6;
    const auto n0s = n0s_or(o, {1, 4});

    std::vector<std::vector<double>> rows;
    nlohmann::json states;
    for (int n0 : n0s) {
        std::vector<double> dist;
        if (closed_route(o)) {
            dist = pa::added_squeezed::pasv_photon_dist({o.kappa_prime, n0});
            states[std::to_string(n0)] = pa::serialize::to_json(
                pa::added_squeezed::pasv_coefficients({o.kappa_prime, n0}));
        } else {
            const auto s = state_for(o, "", n0);
            dist = pa::fock::photon_number_distribution(s);
            states[std::to_string(n0)] = pa::serialize::to_json(s);
        }
        for (std::size_t n = 0; n < dist.size(); ++n)
            rows.push_back({double(n), double(n0), dist[n]});
    }
    nlohmann::json extra;
    extra["states"] = states;
    emit(o, "photon-dist", {"n", "n0", "value"}, rows, extra);
    return 0;
}

int cmd_phase_space(Opts o, bool wigner) {
    if (o.input.empty() && !closed_route(o)) o.kappa_prime = 0.6;
    const auto axes =
        resolve_axes(o.grid, {{"x", {-6.0, 6.0, 201}}, {"p", {-6.0, 6.0, 201}}});
    const auto xs = axes.at("x").values();
    const auto ps = axes.at("p").values();

    std::vector<std::vector<double>> rows;
    rows.reserve(xs.size() * ps.size());
    nlohmann::json extra;
    if (closed_route(o)) {
        const pa::added_squeezed::PasvParams pp{o.kappa_prime, o.n0};
        for (double x : xs)
            for (double p : ps)
                rows.push_back({x, p, wigner ? pa::added_squeezed::pasv_wigner(x, p, pp)
                                             : pa::added_squeezed::pasv_husimi(x, p, pp)});
        extra["state"] =
            pa::serialize::to_json(pa::added_squeezed::pasv_coefficients(pp));
    } else {
        const auto s = state_for(o, "", o.n0);
        pa::phasespace::PhaseSpaceGrid grid{axes.at("x").lo, axes.at("x").hi,
                                            int(xs.size()), axes.at("p").lo,
                                            axes.at("p").hi, int(ps.size())};
        const auto field = wigner ? pa::phasespace::wigner(s, grid)
                                  : pa::phasespace::husimi(s, grid);
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < ps.size(); ++j)
                rows.push_back({xs[i], ps[j], field.values[i * ps.size() + j]});
        extra["state"] = pa::serialize::to_json(s);
    }
    emit(o, wigner ? "wigner" : "husimi", {"x", "p", "value"}, rows, extra);
    return 0;
}

int cmd_cat(Opts o) {
    if (!closed_route(o)) o.kappa_prime = 0.6;
    const pa::added_squeezed::PasvParams pp{o.kappa_prime, o.n0};
    const auto d = pa::added_squeezed::cat_components(pp);

    const auto axes =
        resolve_axes(o.grid, {{"x", {-2.0, 10.0, 201}}, {"p", {-4.0, 4.0, 161}}});
    const auto xs = axes.at("x").values();
    const auto ps = axes.at("p").values();

    std::vector<std::vector<double>> rows;
    rows.reserve(xs.size() * ps.size());
    for (double x : xs)
        for (double p : ps)
            rows.push_back({x, p,
                            pa::added_squeezed::component_husimi(x, p, pp, +1, d.norm_pm),
                            pa::added_squeezed::component_husimi(x, p, pp, -1, d.norm_pm)});

    // negativity witness: most-negative Wigner value of the (+) component
    pa::phasespace::PhaseSpaceGrid grid{axes.at("x").lo, axes.at("x").hi, int(xs.size()),
                                        axes.at("p").lo, axes.at("p").hi, int(ps.size())};
    const auto field = pa::phasespace::wigner(d.plus, grid);
    double wmin = field.values[0];
    std::size_t arg = 0;
    for (std::size_t k = 1; k < field.values.size(); ++k)
        if (field.values[k] < wmin) {
            wmin = field.values[k];
            arg = k;
        }
    const double wx = xs[arg / ps.size()], wp = ps[arg % ps.size()];

    using pa::serialize::fmt;
    std::cerr << "# component_amplitude = " << fmt(d.amplitude) << "\n"
              << "# component_norm = " << fmt(d.norm_pm) << "\n"
              << "# min_component_wigner = " << fmt(wmin) << " at x = " << fmt(wx)
              << ", p = " << fmt(wp) << "\n";

    nlohmann::json extra;
    extra["plus"] = pa::serialize::to_json(d.plus);
    extra["minus"] = pa::serialize::to_json(d.minus);
    extra["component_amplitude"] = d.amplitude;
    extra["component_norm"] = d.norm_pm;
    extra["min_component_wigner"] = {{"value", wmin}, {"x", wx}, {"p", wp}};
    emit(o, "cat", {"x", "p", "q_plus", "q_minus"}, rows, extra);
    return 0;
}

int cmd_mixed(const Opts& o) {
    const std::string spec = o.input.empty() ? "coherent:beta=1.0" : o.input;
    const auto in = parse_input(spec);
    const auto bp = parse_binomial(o.binomial);
    const auto bs = splitter_of(o);
    pa::mixtures::WeightMode mode;
    if (o.weights == "prior")
        mode = pa::mixtures::WeightMode::prior;
    else if (o.weights == "posterior")
        mode = pa::mixtures::WeightMode::posterior;
    else
        throw std::invalid_argument("--weights must be prior or posterior");

    const auto mix = pa::mixtures::mixed_conditional(in, bp, bs, mode);
    const auto axes = resolve_axes(o.grid, {{"x", {-6.0, 6.0, 201}}});
    const auto xs = axes.at("x").values();
    const auto vals = pa::mixtures::mixture_quadrature(mix, o.phi, xs);

    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < xs.size(); ++i) rows.push_back({xs[i], vals[i]});

    const auto diag = pa::fock::photon_number_distribution(in);
    const double p_prior =
        pa::mixtures::mixed_probability(diag, bp, bs, pa::mixtures::WeightMode::prior);
    const double p_post =
        pa::mixtures::mixed_probability(diag, bp, bs, pa::mixtures::WeightMode::posterior);

    using pa::serialize::fmt;
    std::cerr << "# weights_used = " << o.weights << "\n"
              << "# P_prior = " << fmt(p_prior) << "\n"
              << "# P_posterior = " << fmt(p_post) << "\n";
    nlohmann::json joint;
    for (int n0 = 0; n0 <= bp.N; ++n0) {
        const double j = pa::mixtures::joint_probability(diag, bp, bs, n0);
        std::cerr << "# joint[" << n0 << "] = " << fmt(j) << "\n";
        joint.push_back(j);
    }

    nlohmann::json extra;
    extra["weights_used"] = o.weights;
    extra["P_prior"] = p_prior;
    extra["P_posterior"] = p_post;
    extra["joint"] = joint;
    extra["mixture_weights"] = mix.weights;
    nlohmann::json members = nlohmann::json::array();
    for (const auto& m : mix.members) members.push_back(pa::serialize::to_json(m));
    extra["members"] = members;
    emit(o, "mixed", {"x", "value"}, rows, extra);
    return 0;
}

int cmd_verify() {
    const auto results = pa::verify::run_all();
    std::size_t passed = 0;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << r.name
                  << "  max_err = " << pa::serialize::fmt(r.max_err)
                  << "  tol = " << pa::serialize::fmt(r.tol) << "\n";
        if (r.pass) ++passed;
    }
    std::cout << "verify: " << passed << "/" << results.size() << " checks passed\n";
    return passed == results.size() ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conditional photon-added quantum state preparation toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a TOML file");

    Opts o;
    auto add_splitter = [&](CLI::App* s) {
        s->add_option("--t2", o.t2, "beam splitter transmittance |T|^2")
            ->check(CLI::Range(0.0, 1.0))
            ->capture_default_str();
        s->add_option("--phi-t", o.phi_t, "transmittance phase")->capture_default_str();
        s->add_option("--phi-r", o.phi_r, "reflectance phase")->capture_default_str();
    };
    auto add_output = [&](CLI::App* s) {
        s->add_option("--out", o.out, "output file (default: stdout)");
        s->add_option("--format", o.format, "output format")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };
    auto add_input = [&](CLI::App* s) {
        return s->add_option(
            "--input", o.input,
            "input state: coherent:beta=X | squeezed:kappa=X | fock:n=N | custom:file=F");
    };
    auto add_kappa_prime = [&](CLI::App* s, CLI::Option* input_opt) {
        s->add_option("--kappa-prime", o.kappa_prime,
                      "evaluate the squeezed family directly at effective squeezing "
                      "kappa' (bypasses the beam-splitter pipeline)")
            ->excludes(input_opt);
    };

    auto* prob = app.add_subcommand(
        "probability", "success probability of adding n0 photons vs input amplitude");
    add_input(prob);
    prob->add_option("--n0", o.n0_list, "photon numbers to add (default 0..4)")
        ->delimiter(',');
    prob->add_option("--sweep", o.sweep, "amplitude sweep lo:hi:n");
    add_splitter(prob);
    add_output(prob);

    auto* quad = app.add_subcommand("quadrature",
                                    "quadrature distribution of the conditioned state");
    auto* quad_in = add_input(quad);
    add_kappa_prime(quad, quad_in);
    quad->add_option("--n0", o.n0_list, "photon numbers to add (default 1,4)")
        ->delimiter(',');
    quad->add_option("--phi", o.phi, "quadrature angle")->capture_default_str();
    quad->add_option("--grid", o.grid, "axes x=lo:hi:n[,phi=lo:hi:n]");
    add_splitter(quad);
    add_output(quad);

    auto* pdist = app.add_subcommand("photon-dist",
                                     "photon-number distribution of the conditioned state");
    auto* pdist_in = add_input(pdist);
    add_kappa_prime(pdist, pdist_in);
    pdist->add_option("--n0", o.n0_list, "photon numbers to add (default 1,4)")
        ->delimiter(',');
    add_splitter(pdist);
    add_output(pdist);

    auto* wig = app.add_subcommand("wigner", "Wigner function on a phase-space grid");
    auto* wig_in = add_input(wig);
    add_kappa_prime(wig, wig_in);
    wig->add_option("--n0", o.n0, "photon number to add")->capture_default_str();
    wig->add_option("--grid", o.grid, "axes x=lo:hi:n,p=lo:hi:n");
    add_splitter(wig);
    add_output(wig);

    auto* hus = app.add_subcommand("husimi", "Husimi Q function on a phase-space grid");
    auto* hus_in = add_input(hus);
    add_kappa_prime(hus, hus_in);
    hus->add_option("--n0", o.n0, "photon number to add")->capture_default_str();
    hus->add_option("--grid", o.grid, "axes x=lo:hi:n,p=lo:hi:n");
    add_splitter(hus);
    add_output(hus);

    auto* cat = app.add_subcommand(
        "cat", "cat-like decomposition of the photon-added squeezed state: component "
               "Husimi functions plus a Wigner-negativity report");
    cat->add_option("--kappa-prime", o.kappa_prime, "effective squeezing kappa'");
    cat->add_option("--n0", o.n0, "photon number to add")->default_val(15);
    cat->add_option("--grid", o.grid, "axes x=lo:hi:n,p=lo:hi:n");
    add_output(cat);

    auto* mix = app.add_subcommand(
        "mixed", "quadrature distribution when n0 is binomially distributed");
    add_input(mix);
    mix->add_option("--binomial", o.binomial, "ancilla distribution N=..,p=..")
        ->capture_default_str();
    mix->add_option("--weights", o.weights, "mixture weighting: prior | posterior")
        ->capture_default_str();
    mix->add_option("--phi", o.phi, "quadrature angle")->capture_default_str();
    mix->add_option("--grid", o.grid, "axis x=lo:hi:n");
    add_splitter(mix);
    add_output(mix);

    auto* ver = app.add_subcommand("verify", "run the formula-vs-oracle check suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (prob->parsed()) return cmd_probability(o);
        if (quad->parsed()) return cmd_quadrature(o);
        if (pdist->parsed()) return cmd_photon_dist(o);
        if (wig->parsed()) return cmd_phase_space(o, true);
        if (hus->parsed()) return cmd_phase_space(o, false);
        if (cat->parsed()) return cmd_cat(o);
        if (mix->parsed()) return cmd_mixed(o);
        if (ver->parsed()) return cmd_verify();
    } catch (const std::domain_error& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    } catch (const std::logic_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numeric error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
