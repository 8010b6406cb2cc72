#include "udw/config.hpp"

#include "udw/errors.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <variant>

namespace udw {

namespace {

// Accelerated delta grids must stay outside this band around zero, where the
// massless response diverges.
constexpr double ir_band = 1e-3;

struct keyval {
    int line;
    std::string value;
};

using section_map = std::map<std::string, keyval>;

const std::map<std::string, std::vector<std::string>>& allowed_keys() {
    static const std::map<std::string, std::vector<std::string>> k = {
        {"model",
         {"spacetime", "mass", "profile", "sigma", "lambda", "hermite_n",
          "hermite_m", "sigma_perp", "profile_norm", "trajectory",
          "acceleration", "state", "packet_center", "packet_width", "wedge",
          "delta", "tau", "rindler_norm_scale"}},
        {"sweep", {"axis", "start", "stop", "points"}},
        {"tolerances", {"quad_tol", "tail_tol"}},
        {"output", {"format", "path", "quantity"}},
    };
    return k;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

class issue_list {
public:
    void add(int line, const std::string& msg) {
        std::ostringstream os;
        if (line > 0) os << "line " << line << ": ";
        os << msg;
        items_.push_back(os.str());
    }
    void add(const std::string& msg) { items_.push_back(msg); }
    bool empty() const { return items_.empty(); }
    void raise_if_any(const std::string& head) const {
        if (!items_.empty()) throw config_error(head, items_);
    }

private:
    std::vector<std::string> items_;
};

std::optional<double> to_double(const std::string& raw) {
    std::string s = raw;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    double v = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc{} || r.ptr != last || !std::isfinite(v))
        return std::nullopt;
    return v;
}

std::optional<long> to_long(const std::string& raw) {
    std::string s = raw;
    if (!s.empty() && s.front() == '+') s.erase(0, 1);
    long v = 0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    const auto r = std::from_chars(first, last, v);
    if (r.ec != std::errc{} || r.ptr != last) return std::nullopt;
    return v;
}

std::string fmt(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, r.ptr);
}

// Pulls typed values out of one section, accumulating issues.
class section_reader {
public:
    section_reader(const section_map& sec, issue_list& issues)
        : sec_(sec), issues_(issues) {}

    bool has(const std::string& key) const { return sec_.count(key) != 0; }

    std::optional<std::string> str(const std::string& key) {
        const auto it = sec_.find(key);
        if (it == sec_.end()) return std::nullopt;
        return it->second.value;
    }

    std::optional<double> num(const std::string& key) {
        const auto it = sec_.find(key);
        if (it == sec_.end()) return std::nullopt;
        const auto v = to_double(it->second.value);
        if (!v)
            issues_.add(it->second.line, "key '" + key +
                                             "': not a finite number: '" +
                                             it->second.value + "'");
        return v;
    }

    std::optional<long> integer(const std::string& key) {
        const auto it = sec_.find(key);
        if (it == sec_.end()) return std::nullopt;
        const auto v = to_long(it->second.value);
        if (!v)
            issues_.add(it->second.line, "key '" + key +
                                             "': not an integer: '" +
                                             it->second.value + "'");
        return v;
    }

    int line_of(const std::string& key) const {
        const auto it = sec_.find(key);
        return it == sec_.end() ? 0 : it->second.line;
    }

    void forbid(const std::string& key, const std::string& why) {
        const auto it = sec_.find(key);
        if (it != sec_.end())
            issues_.add(it->second.line, "key '" + key + "' " + why);
    }

    void require(const std::string& key, const std::string& why) {
        if (!has(key)) issues_.add("missing key '" + key + "': " + why);
    }

private:
    const section_map& sec_;
    issue_list& issues_;
};

const std::map<std::string, quantity_kind>& quantity_names() {
    static const std::map<std::string, quantity_kind> m = {
        {"window", quantity_kind::window},
        {"profile", quantity_kind::profile},
        {"vacuum-rate", quantity_kind::vacuum_rate},
        {"particle-rate", quantity_kind::particle_rate},
        {"kms-check", quantity_kind::kms_check},
        {"hermite-fit", quantity_kind::hermite_fit},
    };
    return m;
}

spatial_profile build_profile(section_reader& model, const std::string& kind,
                              double acceleration, issue_list& issues) {
    const auto forbid_gaussian = [&](const std::string& why) {
        model.forbid("sigma", why);
        model.forbid("lambda", why);
        model.forbid("profile_norm", why);
        model.forbid("sigma_perp", why);
    };
    const auto forbid_hermite = [&](const std::string& why) {
        model.forbid("hermite_n", why);
        model.forbid("hermite_m", why);
    };
    try {
        if (kind == "point_like") {
            forbid_gaussian("does not apply to profile 'point_like'");
            forbid_hermite("does not apply to profile 'point_like'");
            return point_like{};
        }
        if (kind == "hermite_coupling") {
            forbid_gaussian("does not apply to profile 'hermite_coupling'");
            model.require("hermite_n", "hermite_coupling needs it");
            model.require("hermite_m", "hermite_coupling needs it");
            const auto n = model.integer("hermite_n");
            const auto m = model.integer("hermite_m");
            if (!n || !m) return point_like{};
            return make_hermite_coupling(static_cast<int>(*n),
                                         static_cast<int>(*m));
        }
        if (kind == "double_gaussian" || kind == "rindler_double_gaussian") {
            forbid_hermite("does not apply to profile '" + kind + "'");
            model.require("sigma", kind + " needs it");
            model.require("lambda", kind + " needs it");
            const auto sigma = model.num("sigma");
            const auto lambda = model.num("lambda");
            const auto norm = model.num("profile_norm");
            const auto sp = model.num("sigma_perp");
            if (norm && !(*norm > 0.0))
                issues.add(model.line_of("profile_norm"),
                           "profile_norm must be positive");
            if (sp && !(*sp > 0.0))
                issues.add(model.line_of("sigma_perp"),
                           "sigma_perp must be positive");
            if (!sigma || !lambda) return point_like{};
            if (kind == "double_gaussian")
                return make_double_gaussian(*sigma, *lambda,
                                            norm.value_or(-1.0),
                                            sp.value_or(-1.0));
            return make_rindler_double_gaussian(*sigma, *lambda, acceleration,
                                                norm.value_or(-1.0),
                                                sp.value_or(-1.0));
        }
        issues.add(model.line_of("profile"),
                   "unknown profile '" + kind +
                       "' (expected point_like, double_gaussian, "
                       "hermite_coupling, rindler_double_gaussian)");
    } catch (const model_error& e) {
        issues.add(std::string("profile: ") + e.what());
    }
    return point_like{};
}

} // namespace

std::vector<double> axis_values(const sweep_spec& s) {
    std::vector<double> v;
    if (s.points <= 0) return v;
    v.reserve(static_cast<std::size_t>(s.points));
    for (long i = 0; i < s.points; ++i) {
        // Endpoints are exact so grids can be compared across runs.
        if (i == 0) {
            v.push_back(s.start);
        } else if (i == s.points - 1) {
            v.push_back(s.stop);
        } else {
            v.push_back(s.start +
                        (s.stop - s.start) * static_cast<double>(i) /
                            static_cast<double>(s.points - 1));
        }
    }
    return v;
}

const char* quantity_name(quantity_kind q) {
    switch (q) {
    case quantity_kind::window: return "window";
    case quantity_kind::profile: return "profile";
    case quantity_kind::vacuum_rate: return "vacuum-rate";
    case quantity_kind::particle_rate: return "particle-rate";
    case quantity_kind::kms_check: return "kms-check";
    case quantity_kind::hermite_fit: return "hermite-fit";
    }
    return "?";
}

experiment_config parse_config(const std::string& text) {
    issue_list issues;
    std::map<std::string, section_map> sections;

    std::istringstream in(text);
    std::string raw;
    std::string current;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;
        if (s.front() == '[') {
            if (s.back() != ']') {
                issues.add(line, "malformed section header: '" + s + "'");
                continue;
            }
            current = trim(s.substr(1, s.size() - 2));
            if (!allowed_keys().count(current)) {
                issues.add(line, "unknown section '[" + current + "]'");
                current.clear();
            }
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos) {
            issues.add(line, "expected 'key = value': '" + s + "'");
            continue;
        }
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (current.empty()) {
            issues.add(line, "key '" + key + "' outside any section");
            continue;
        }
        const auto& allowed = allowed_keys().at(current);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            issues.add(line,
                       "unknown key '" + key + "' in [" + current + "]");
            continue;
        }
        if (key.empty() || value.empty()) {
            issues.add(line, "empty key or value");
            continue;
        }
        auto& sec = sections[current];
        if (sec.count(key)) {
            issues.add(line, "duplicate key '" + key + "' in [" + current +
                                 "]");
            continue;
        }
        sec[key] = keyval{line, value};
    }

    experiment_config cfg;
    static const section_map empty_section;
    const auto sec_or_empty = [&](const char* name) -> const section_map& {
        const auto it = sections.find(name);
        return it == sections.end() ? empty_section : it->second;
    };

    section_reader model(sec_or_empty("model"), issues);

    // Spacetime.
    const std::string st_name = model.str("spacetime").value_or("1p1_massless");
    if (st_name == "1p1_massless") {
        cfg.model.st.kind = spacetime_kind::dim1p1_massless;
        model.forbid("mass", "is invalid in the massless 1+1 sector");
    } else if (st_name == "3p1_massive") {
        cfg.model.st.kind = spacetime_kind::dim3p1_massive;
        cfg.model.st.mass = model.num("mass").value_or(0.0);
    } else {
        issues.add(model.line_of("spacetime"),
                   "unknown spacetime '" + st_name +
                       "' (expected 1p1_massless or 3p1_massive)");
    }

    // Trajectory.
    const std::string traj_name = model.str("trajectory").value_or("inertial");
    double acceleration = 1.0;
    if (traj_name == "inertial") {
        cfg.model.traj = inertial{};
        model.forbid("acceleration",
                     "does not apply to the inertial trajectory");
    } else if (traj_name == "accelerated") {
        model.require("acceleration", "the accelerated trajectory needs it");
        acceleration = model.num("acceleration").value_or(1.0);
        cfg.model.traj = uniformly_accelerated{acceleration};
    } else {
        issues.add(model.line_of("trajectory"),
                   "unknown trajectory '" + traj_name +
                       "' (expected inertial or accelerated)");
    }

    // Profile.
    const std::string prof_name = model.str("profile").value_or("point_like");
    cfg.model.profile = build_profile(model, prof_name, acceleration, issues);

    // State.
    const std::string state_name = model.str("state").value_or("vacuum");
    if (state_name == "vacuum") {
        cfg.model.state = vacuum_state{};
        model.forbid("packet_center", "does not apply to the vacuum state");
        model.forbid("packet_width", "does not apply to the vacuum state");
        model.forbid("wedge", "does not apply to the vacuum state");
    } else if (state_name == "minkowski_particle" ||
               state_name == "unruh_particle") {
        model.require("packet_center", "particle states need it");
        model.require("packet_width", "particle states need it");
        const double pc = model.num("packet_center").value_or(1.0);
        const double pw = model.num("packet_width").value_or(1.0);
        gaussian_packet phi{pc, pw, 1.0};
        try {
            phi = make_gaussian_packet(pc, pw);
        } catch (const model_error& e) {
            issues.add(std::string("packet: ") + e.what());
        }
        if (state_name == "minkowski_particle") {
            cfg.model.state = minkowski_particle{phi};
            model.forbid("wedge",
                         "does not apply to a minkowski particle state");
        } else {
            const std::string w = model.str("wedge").value_or("R");
            if (w != "R" && w != "L")
                issues.add(model.line_of("wedge"),
                           "wedge must be R or L, got '" + w + "'");
            cfg.model.state = unruh_particle{
                phi, w == "L" ? wedge::left : wedge::right};
        }
    } else {
        issues.add(model.line_of("state"),
                   "unknown state '" + state_name +
                       "' (expected vacuum, minkowski_particle, "
                       "unruh_particle)");
    }

    cfg.model.delta = model.num("delta").value_or(0.0);
    cfg.fixed_tau = model.num("tau").value_or(0.0);
    cfg.model.rindler_norm_scale =
        model.num("rindler_norm_scale").value_or(1.0);

    // Sweep.
    if (sections.count("sweep")) {
        cfg.has_sweep = true;
        section_reader sw(sections.at("sweep"), issues);
        sw.require("axis", "a sweep needs it");
        sw.require("start", "a sweep needs it");
        sw.require("stop", "a sweep needs it");
        sw.require("points", "a sweep needs it");
        const std::string ax = sw.str("axis").value_or("delta");
        if (ax == "delta") cfg.sweep.axis = sweep_axis::delta;
        else if (ax == "tau") cfg.sweep.axis = sweep_axis::tau;
        else if (ax == "k") cfg.sweep.axis = sweep_axis::k;
        else
            issues.add(sw.line_of("axis"),
                       "unknown axis '" + ax +
                           "' (expected delta, tau, or k)");
        cfg.sweep.start = sw.num("start").value_or(0.0);
        cfg.sweep.stop = sw.num("stop").value_or(1.0);
        cfg.sweep.points = sw.integer("points").value_or(2);
        if (cfg.sweep.points < 2)
            issues.add(sw.line_of("points"), "points must be >= 2");
        if (!(cfg.sweep.start < cfg.sweep.stop))
            issues.add(sw.line_of("start"), "sweep needs start < stop");
    }

    // Tolerances.
    {
        section_reader to(sec_or_empty("tolerances"), issues);
        cfg.tol.quad_tol = to.num("quad_tol").value_or(1e-8);
        cfg.tol.tail_tol = to.num("tail_tol").value_or(1e-10);
        if (!(cfg.tol.quad_tol > 0.0))
            issues.add(to.line_of("quad_tol"), "quad_tol must be positive");
        if (!(cfg.tol.tail_tol > 0.0))
            issues.add(to.line_of("tail_tol"), "tail_tol must be positive");
    }

    // Output.
    {
        section_reader out(sec_or_empty("output"), issues);
        const std::string f = out.str("format").value_or("csv");
        if (f == "csv") cfg.out.format = output_format::csv;
        else if (f == "json") cfg.out.format = output_format::json;
        else
            issues.add(out.line_of("format"),
                       "unknown format '" + f + "' (expected csv or json)");
        cfg.out.path = out.str("path").value_or("out.csv");
        if (const auto q = out.str("quantity")) {
            const auto it = quantity_names().find(*q);
            if (it == quantity_names().end())
                issues.add(out.line_of("quantity"),
                           "unknown quantity '" + *q + "'");
            else
                cfg.quantity = it->second;
        }
    }

    if (issues.empty()) {
        try {
            cfg.model = validate_model(cfg.model);
        } catch (const model_error& e) {
            issues.add(std::string("model: ") + e.what());
        }
    }
    if (issues.empty()) {
        try {
            validate_for_quantity(cfg, cfg.quantity);
        } catch (const config_error& e) {
            for (const auto& s : e.issues) issues.add(s);
        }
    }
    issues.raise_if_any("invalid config");
    return cfg;
}

experiment_config load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw config_error("cannot open config file",
                           {std::string("path: ") + path});
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_for_quantity(const experiment_config& cfg, quantity_kind q) {
    issue_list issues;
    const bool accelerated =
        std::holds_alternative<uniformly_accelerated>(cfg.model.traj);
    const bool vacuum = std::holds_alternative<vacuum_state>(cfg.model.state);

    const auto need_sweep = [&](sweep_axis axis, const char* name) {
        if (!cfg.has_sweep) {
            issues.add(std::string("quantity '") + quantity_name(q) +
                       "' needs a [sweep] section");
            return false;
        }
        if (cfg.sweep.axis != axis) {
            issues.add(std::string("quantity '") + quantity_name(q) +
                       "' sweeps over axis '" + name + "'");
            return false;
        }
        return true;
    };
    const auto check_ir_band = [&](bool signed_band) {
        for (const double v : axis_values(cfg.sweep)) {
            const bool bad = signed_band ? std::abs(v) < ir_band : v < ir_band;
            if (bad) {
                issues.add(
                    "accelerated delta grid enters the infrared band |delta| "
                    "< " +
                    fmt(ir_band));
                break;
            }
        }
    };

    switch (q) {
    case quantity_kind::window:
        if (need_sweep(sweep_axis::k, "k") && accelerated &&
            !(cfg.sweep.start > 0.0))
            issues.add("the accelerated window needs a positive k grid");
        break;
    case quantity_kind::profile:
        need_sweep(sweep_axis::k, "k");
        if (std::holds_alternative<point_like>(cfg.model.profile))
            issues.add("a point-like profile has no pointwise values");
        break;
    case quantity_kind::vacuum_rate:
        if (!vacuum) issues.add("vacuum-rate needs state = vacuum");
        if (need_sweep(sweep_axis::delta, "delta") && accelerated)
            check_ir_band(true);
        break;
    case quantity_kind::particle_rate: {
        if (vacuum) issues.add("particle-rate needs a particle state");
        if (!cfg.has_sweep) {
            issues.add("quantity 'particle-rate' needs a [sweep] section");
            break;
        }
        if (cfg.sweep.axis == sweep_axis::k) {
            issues.add("particle-rate sweeps over axis 'tau' or 'delta'");
            break;
        }
        if (cfg.sweep.axis == sweep_axis::delta && accelerated)
            check_ir_band(true);
        if (cfg.sweep.axis == sweep_axis::tau && accelerated &&
            std::abs(cfg.model.delta) < ir_band)
            issues.add("model delta sits inside the infrared band");
        break;
    }
    case quantity_kind::kms_check:
        if (!accelerated)
            issues.add("kms-check needs the accelerated trajectory");
        if (!vacuum) issues.add("kms-check needs state = vacuum");
        if (need_sweep(sweep_axis::delta, "delta")) check_ir_band(false);
        break;
    case quantity_kind::hermite_fit:
        if (!std::holds_alternative<hermite_coupling>(cfg.model.profile))
            issues.add("hermite-fit needs profile = hermite_coupling");
        break;
    }
    issues.raise_if_any("config rejected for quantity");
}

std::string to_config_text(const experiment_config& cfg) {
    std::ostringstream os;
    os << "[model]\n";
    const auto& m = cfg.model;
    if (m.st.kind == spacetime_kind::dim1p1_massless) {
        os << "spacetime = 1p1_massless\n";
    } else {
        os << "spacetime = 3p1_massive\n";
        os << "mass = " << fmt(m.st.mass) << "\n";
    }
    if (const auto* dg = std::get_if<double_gaussian>(&m.profile)) {
        os << "profile = double_gaussian\n";
        os << "sigma = " << fmt(dg->sigma) << "\n";
        os << "lambda = " << fmt(dg->lambda) << "\n";
        os << "profile_norm = " << fmt(dg->n_sigma) << "\n";
        os << "sigma_perp = " << fmt(dg->sigma_perp) << "\n";
    } else if (const auto* hc = std::get_if<hermite_coupling>(&m.profile)) {
        os << "profile = hermite_coupling\n";
        os << "hermite_n = " << hc->n << "\n";
        os << "hermite_m = " << hc->m << "\n";
    } else if (const auto* rg =
                   std::get_if<rindler_double_gaussian>(&m.profile)) {
        os << "profile = rindler_double_gaussian\n";
        os << "sigma = " << fmt(rg->sigma) << "\n";
        os << "lambda = " << fmt(rg->lambda_t) << "\n";
        os << "profile_norm = " << fmt(rg->norm) << "\n";
        os << "sigma_perp = " << fmt(rg->sigma_perp) << "\n";
    } else {
        os << "profile = point_like\n";
    }
    if (const auto* acc = std::get_if<uniformly_accelerated>(&m.traj)) {
        os << "trajectory = accelerated\n";
        os << "acceleration = " << fmt(acc->a) << "\n";
    } else {
        os << "trajectory = inertial\n";
    }
    if (const auto* mp = std::get_if<minkowski_particle>(&m.state)) {
        os << "state = minkowski_particle\n";
        os << "packet_center = " << fmt(mp->phi.center) << "\n";
        os << "packet_width = " << fmt(mp->phi.width) << "\n";
    } else if (const auto* up = std::get_if<unruh_particle>(&m.state)) {
        os << "state = unruh_particle\n";
        os << "packet_center = " << fmt(up->phi.center) << "\n";
        os << "packet_width = " << fmt(up->phi.width) << "\n";
        os << "wedge = " << (up->p == wedge::left ? "L" : "R") << "\n";
    } else {
        os << "state = vacuum\n";
    }
    os << "delta = " << fmt(m.delta) << "\n";
    os << "tau = " << fmt(cfg.fixed_tau) << "\n";
    os << "rindler_norm_scale = " << fmt(m.rindler_norm_scale) << "\n";

    if (cfg.has_sweep) {
        os << "\n[sweep]\n";
        const char* ax = cfg.sweep.axis == sweep_axis::delta ? "delta"
                         : cfg.sweep.axis == sweep_axis::tau ? "tau"
                                                             : "k";
        os << "axis = " << ax << "\n";
        os << "start = " << fmt(cfg.sweep.start) << "\n";
        os << "stop = " << fmt(cfg.sweep.stop) << "\n";
        os << "points = " << cfg.sweep.points << "\n";
    }

    os << "\n[tolerances]\n";
    os << "quad_tol = " << fmt(cfg.tol.quad_tol) << "\n";
    os << "tail_tol = " << fmt(cfg.tol.tail_tol) << "\n";

    os << "\n[output]\n";
    os << "format = "
       << (cfg.out.format == output_format::json ? "json" : "csv") << "\n";
    os << "path = " << cfg.out.path << "\n";
    os << "quantity = " << quantity_name(cfg.quantity) << "\n";
    return os.str();
}

} // namespace udw
