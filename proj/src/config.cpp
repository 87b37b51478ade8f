#include "fmd/config.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

namespace fmd {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::string fmt(double v)
{
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

std::string fmt_step(double h)
{
    int e = 0;
    const double m = std::frexp(h, &e);
    if (m == 0.5) return "2^" + std::to_string(e - 1);
    return fmt(h);
}

int parse_int(const std::string& key, const std::string& text)
{
    try {
        std::size_t pos = 0;
        const int v = std::stoi(text, &pos);
        if (pos != text.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected an integer, got '" + text + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes") return true;
    if (text == "false" || text == "0" || text == "no") return false;
    throw ConfigError(key, "expected true or false, got '" + text + "'");
}

std::vector<double> parse_reals(const std::string& key, const std::string& text)
{
    std::vector<double> out;
    for (const auto& item : split_list(text)) out.push_back(parse_real(key, item));
    return out;
}

template <class T>
std::string join(const std::vector<T>& v, std::string (*f)(T))
{
    std::string s;
    for (std::size_t k = 0; k < v.size(); ++k) s += (k ? "," : "") + f(v[k]);
    return s;
}

std::string initial_name(InitialKind k)
{
    switch (k) {
    case InitialKind::automatic: return "auto";
    case InitialKind::zero: return "zero";
    case InitialKind::delta: return "delta";
    }
    return "auto";
}

bool is_walk(SourceKind k)
{
    return k == SourceKind::wait_first || k == SourceKind::jump_first || k == SourceKind::standard_walk;
}

bool on_mesh(double x, double h)
{
    const double r = x / h;
    return std::abs(r - std::round(r)) <= 1e-9 * std::max(1.0, std::abs(r));
}

}  // namespace

double parse_real(const std::string& key, const std::string& text)
{
    const std::string t = trim(text);
    try {
        std::size_t pos = 0;
        if (t.rfind("2^", 0) == 0) {
            const std::string ex = t.substr(2);
            const double e = std::stod(ex, &pos);
            if (pos != ex.size()) throw std::invalid_argument("trailing");
            return std::exp2(e);
        }
        const double v = std::stod(t, &pos);
        if (pos != t.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw ConfigError(key, "expected a number, got '" + text + "'");
    }
}

void set_key(RunConfig& c, const std::string& key, const std::string& raw)
{
    const std::string v = trim(raw);
    auto wrap = [&](auto&& fn) {
        try {
            fn();
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(key, e.what());
        }
    };
    if (key == "alpha") c.alpha = parse_real(key, v);
    else if (key == "p") c.p = parse_real(key, v);
    else if (key == "h") c.h = parse_real(key, v);
    else if (key == "T") c.T = parse_real(key, v);
    else if (key == "x_min") c.x_min = v == "auto" ? std::nullopt : std::optional(parse_real(key, v));
    else if (key == "x_max") c.x_max = v == "auto" ? std::nullopt : std::optional(parse_real(key, v));
    else if (key == "padding") {
        if (v == "light_cone") c.padding = PaddingPolicy::light_cone;
        else if (v == "none") c.padding = PaddingPolicy::none;
        else throw ConfigError(key, "expected light_cone or none, got '" + v + "'");
    }
    else if (key == "variant") wrap([&] { c.variant = scheme_variant_from_string(v); });
    else if (key == "source.kind") wrap([&] { c.source_kind = source_kind_from_string(v); });
    else if (key == "source.mu") c.mu = parse_real(key, v);
    else if (key == "source.file") c.source_file = v;
    else if (key == "delta.K") c.delta.K = parse_int(key, v);
    else if (key == "delta.rescale") c.delta.rescale = parse_bool(key, v);
    else if (key == "initial") {
        if (v == "auto") c.initial = InitialKind::automatic;
        else if (v == "zero") c.initial = InitialKind::zero;
        else if (v == "delta") c.initial = InitialKind::delta;
        else throw ConfigError(key, "expected auto, zero or delta, got '" + v + "'");
    }
    else if (key == "output") c.output = v;
    else if (key == "output.sparse") c.output_sparse = v;
    else if (key == "times") c.times = parse_reals(key, v);
    else if (key == "store_every") c.store_every = parse_int(key, v);
    else if (key == "norms") {
        c.norms.clear();
        for (const auto& item : split_list(v)) wrap([&] { c.norms.push_back(norm_kind_from_string(item)); });
    }
    else if (key == "sweep.h") c.sweep_h = parse_reals(key, v);
    else if (key == "sweep.alpha") c.sweep_alpha = parse_reals(key, v);
    else if (key == "kernel.t") c.kernel_t = parse_real(key, v);
    else if (key == "kernel.x_max") c.kernel_x_max = parse_real(key, v);
    else if (key == "kernel.nx") c.kernel_nx = parse_int(key, v);
    else if (key == "kernel.window") c.kernel_window = parse_real(key, v);
    else throw ConfigError(key, "unknown key");
}

void apply_override(RunConfig& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(trim(assignment), "override must have the form key=value");
    set_key(cfg, trim(assignment.substr(0, eq)), assignment.substr(eq + 1));
}

RunConfig parse_config(std::istream& in)
{
    RunConfig cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(line, "line " + std::to_string(line_no) + " is not of the form key = value");
        set_key(cfg, trim(line.substr(0, eq)), line.substr(eq + 1));
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    return parse_config(in);
}

std::string serialize(const RunConfig& c)
{
    std::ostringstream os;
    os << "alpha = " << fmt(c.alpha) << "\n";
    os << "p = " << fmt(c.p) << "\n";
    os << "h = " << fmt_step(c.h) << "\n";
    os << "T = " << fmt(c.T) << "\n";
    os << "x_min = " << (c.x_min ? fmt(*c.x_min) : "auto") << "\n";
    os << "x_max = " << (c.x_max ? fmt(*c.x_max) : "auto") << "\n";
    os << "padding = " << (c.padding == PaddingPolicy::light_cone ? "light_cone" : "none") << "\n";
    os << "variant = " << to_string(c.variant) << "\n";
    os << "source.kind = " << to_string(c.source_kind) << "\n";
    os << "source.mu = " << fmt(c.mu) << "\n";
    if (!c.source_file.empty()) os << "source.file = " << c.source_file << "\n";
    os << "delta.K = " << c.delta.K << "\n";
    os << "delta.rescale = " << (c.delta.rescale ? "true" : "false") << "\n";
    os << "initial = " << initial_name(c.initial) << "\n";
    os << "output = " << c.output << "\n";
    if (!c.output_sparse.empty()) os << "output.sparse = " << c.output_sparse << "\n";
    os << "times = " << join<double>(c.times, fmt) << "\n";
    os << "store_every = " << c.store_every << "\n";
    os << "norms = " << join<NormKind>(c.norms, to_string) << "\n";
    os << "sweep.h = " << join<double>(c.sweep_h, fmt_step) << "\n";
    os << "sweep.alpha = " << join<double>(c.sweep_alpha, fmt) << "\n";
    os << "kernel.t = " << fmt(c.kernel_t) << "\n";
    os << "kernel.x_max = " << fmt(c.kernel_x_max) << "\n";
    os << "kernel.nx = " << c.kernel_nx << "\n";
    os << "kernel.window = " << fmt(c.kernel_window) << "\n";
    return os.str();
}

std::pair<double, double> domain_for(const RunConfig& cfg, double h)
{
    double reach = 0.0;
    switch (cfg.source_kind) {
    case SourceKind::monomial: reach = 2.0 * cfg.T; break;
    case SourceKind::jump_first: reach = 3.0 * cfg.T; break;
    default: reach = cfg.T + std::max(0.25 * cfg.T, (cfg.delta.K + 2) * h); break;
    }
    const double edge = std::ceil(reach / h - 1e-9) * h;
    return {cfg.x_min.value_or(-edge), cfg.x_max.value_or(edge)};
}

SolveConfig make_solve_config(const RunConfig& cfg, double alpha, double h)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha", "must satisfy 0 < alpha < 1");
    if (!(cfg.p >= 0.0 && cfg.p <= 1.0)) throw ConfigError("p", "must satisfy 0 <= p <= 1");
    if (!(h > 0.0) || !std::isfinite(h)) throw ConfigError("h", "must be positive");
    if (!(cfg.T > 0.0) || !std::isfinite(cfg.T)) throw ConfigError("T", "must be positive");
    if (std::round(cfg.T / h) < 1.0 || !on_mesh(cfg.T, h))
        throw ConfigError("T", "T = " + fmt(cfg.T) + " must be a mesh multiple of h = " + fmt(h) +
                                   " (n_time = T/h has to be an integer)");
    if (cfg.store_every < 1) throw ConfigError("store_every", "must be >= 1");
    if (cfg.delta.K < 1) throw ConfigError("delta.K", "must be >= 1");
    const auto [x0, x1] = domain_for(cfg, h);
    if (!on_mesh(x0, h)) throw ConfigError("x_min", fmt(x0) + " is not a multiple of h = " + fmt(h));
    if (!on_mesh(x1, h)) throw ConfigError("x_max", fmt(x1) + " is not a multiple of h = " + fmt(h));
    if (x1 <= x0) throw ConfigError("x_max", "must exceed x_min");
    const SolverParams params(alpha, cfg.p);
    std::optional<GridSpec> grid;
    try {
        grid.emplace(h, cfg.T, x0, x1, cfg.padding);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("x_min", e.what());
    }

    std::optional<SourceTerm> source;
    switch (cfg.source_kind) {
    case SourceKind::none: source = SourceTerm::none(params); break;
    case SourceKind::wait_first: source = SourceTerm::wait_first(params); break;
    case SourceKind::jump_first: source = SourceTerm::jump_first(params); break;
    case SourceKind::standard_walk: source = SourceTerm::standard_walk(params); break;
    case SourceKind::monomial:
        if (!(cfg.mu >= 0.0)) throw ConfigError("source.mu", "must be >= 0");
        source = SourceTerm::monomial(params, cfg.mu);
        break;
    case SourceKind::sampled:
        if (cfg.source_file.empty()) throw ConfigError("source.file", "required for a sampled source");
        try {
            source = SourceTerm::sampled(params, SampledSource::read_csv_file(cfg.source_file, *grid));
        } catch (const std::exception& e) {
            throw ConfigError("source.file", e.what());
        }
        break;
    }

    InitialKind init = cfg.initial;
    if (init == InitialKind::automatic) init = is_walk(cfg.source_kind) ? InitialKind::delta : InitialKind::zero;
    std::vector<double> initial(grid->n_space(), 0.0);
    if (init == InitialKind::delta) initial = delta_initial(*grid, cfg.delta);

    SolveConfig sc{params, *grid, *source, std::move(initial), cfg.variant, cfg.delta, cfg.store_every,
                   init == InitialKind::delta && cfg.variant == SchemeVariant::advanced_source};
    try {
        validate(sc);
    } catch (const std::invalid_argument& e) {
        throw ConfigError("x_min", e.what());
    }
    return sc;
}

SolveConfig make_solve_config(const RunConfig& cfg) { return make_solve_config(cfg, cfg.alpha, cfg.h); }

}  // namespace fmd
